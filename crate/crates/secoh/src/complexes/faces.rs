//! The three face-map families, written independently of one another so the
//! degeneration tests compare genuinely distinct code paths.
//!
//! All of them send a degree-(n+1) tuple to a degree-n tuple, for
//! 0 <= k <= n+1. The a-part case split, with pairs (i, j) over
//! 0 <= i < j <= n-1 of the output:
//!
//!   b_ij = a_ij                        if j <  k-1
//!   b_ij = a_{i,k-1} + a_{i,k} - ...   if j == k-1   (the combining case)
//!   b_ij = a_{i,j+1}                   if i <= k-1 < j
//!   b_ij = a_{i+1,j+1}                 if k-1 < i
//!
//! For k = 0 the combining case is vacuous, and for k = n+1 every output
//! pair falls in the first case. In the twisted combining case the third
//! summand is acted on by the ordered product g_{i+1} ... g_{k-1} and a
//! kappa correction is added; the empty ordered product is the identity.

use crate::complexes::tuples::{pair_count, pair_position, AbIndexer, ActionIndexer};
use crate::group::FiniteGroup;

/// Plain face on the a-part alone: the combining case is
/// b_{i,k-1} = a_{i,k-1} + a_{i,k} - a_{k-1,k}.
pub fn face_plain(n: usize, k: usize, apart: &[usize], a: &AbIndexer) -> Vec<usize> {
    debug_assert!(k <= n + 1, "face index {k} out of range for degree {n}");
    debug_assert_eq!(apart.len(), pair_count(n + 1));
    let input_deg = n + 1;
    let at = |i: usize, j: usize| apart[pair_position(i, j, input_deg)];
    let mut out = Vec::with_capacity(pair_count(n));
    for i in 0..n {
        for j in i + 1..n {
            let v = if k >= 2 && j < k - 1 {
                at(i, j)
            } else if k >= 2 && j == k - 1 {
                let sum = a.add(at(i, k - 1), at(i, k));
                a.sub(sum, at(k - 1, k))
            } else if i + 1 <= k {
                // i <= k-1 < j
                at(i, j + 1)
            } else {
                at(i + 1, j + 1)
            };
            out.push(v);
        }
    }
    out
}

/// Shared context for the twisted face maps.
pub struct TwistedOps<'a> {
    pub group: &'a FiniteGroup,
    pub a: &'a AbIndexer,
    pub action_a: &'a ActionIndexer,
    /// dense |G|^3 table of kappa values as A-element indices, g-major
    pub kappa_idx: &'a [usize],
}

impl TwistedOps<'_> {
    #[inline]
    fn kappa(&self, g1: usize, g2: usize, g3: usize) -> usize {
        let n = self.group.order();
        self.kappa_idx[(g1 * n + g2) * n + g3]
    }
}

/// Twisted face on a (g-part, a-part) tuple. The g-part behaves like the bar
/// complex: h_i = g_i (i < k), g_i g_{i+1} (i = k), g_{i+1} (i > k), with
/// 1-based i as in the case split above. The combining a-case is
///   b_{i,k-1} = a_{i,k-1} + a_{i,k} - (g_{i+1}...g_{k-1}).a_{k-1,k}
///               + kappa(g_{i+1}...g_{k-1}, g_k, g_{k+1}).
pub fn face_twisted(
    n: usize,
    k: usize,
    gpart: &[usize],
    apart: &[usize],
    ops: &TwistedOps,
) -> (Vec<usize>, Vec<usize>) {
    debug_assert!(k <= n + 1, "face index {k} out of range for degree {n}");
    debug_assert_eq!(gpart.len(), n + 1);
    debug_assert_eq!(apart.len(), pair_count(n + 1));
    let g = ops.group;
    // gpart[t] holds g_{t+1}
    let mut hpart = Vec::with_capacity(n);
    for i in 1..=n {
        let h = if i < k {
            gpart[i - 1]
        } else if i == k {
            g.mul(gpart[i - 1], gpart[i])
        } else {
            gpart[i]
        };
        hpart.push(h);
    }
    let input_deg = n + 1;
    let at = |i: usize, j: usize| apart[pair_position(i, j, input_deg)];
    let mut bpart = Vec::with_capacity(pair_count(n));
    for i in 0..n {
        for j in i + 1..n {
            let v = if k >= 2 && j < k - 1 {
                at(i, j)
            } else if k >= 2 && j == k - 1 {
                // ordered product g_{i+1} ... g_{k-1}: 0-based slice [i..k-1]
                let prod = g.product(&gpart[i..k - 1]);
                let acted = ops.action_a.apply(prod, at(k - 1, k));
                let mut v = ops.a.add(at(i, k - 1), at(i, k));
                v = ops.a.sub(v, acted);
                ops.a.add(v, ops.kappa(prod, gpart[k - 1], gpart[k]))
            } else if i + 1 <= k {
                at(i, j + 1)
            } else {
                at(i + 1, j + 1)
            };
            bpart.push(v);
        }
    }
    (hpart, bpart)
}

/// Standard bar-complex face on the g-part: k = 0 drops g_1, k = n+1 drops
/// g_{n+1}, and 1 <= k <= n merges g_k g_{k+1}.
pub fn face_classical(n: usize, k: usize, gpart: &[usize], g: &FiniteGroup) -> Vec<usize> {
    debug_assert!(k <= n + 1, "face index {k} out of range for degree {n}");
    debug_assert_eq!(gpart.len(), n + 1);
    if k == 0 {
        gpart[1..].to_vec()
    } else if k == n + 1 {
        gpart[..n].to_vec()
    } else {
        let mut out = Vec::with_capacity(n);
        out.extend_from_slice(&gpart[..k - 1]);
        out.push(g.mul(gpart[k - 1], gpart[k]));
        out.extend_from_slice(&gpart[k + 1..]);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FgAbGroup;
    use crate::group::GAction;

    fn z4_indexer() -> AbIndexer {
        AbIndexer::new(&FgAbGroup::from_factors(&[4])).unwrap()
    }

    #[test]
    fn plain_faces_degree_two() {
        // inputs (a01, a02, a12) over Z4; outputs follow the printed
        // four-term expansion of the degree-2 coboundary
        let a = z4_indexer();
        let t = vec![1usize, 2, 3];
        assert_eq!(face_plain(1, 0, &t, &a), Vec::<usize>::new()); // degree 1 has no pairs
        let t2 = vec![1usize, 2, 3];
        // n = 2: output single pair (0,1)
        assert_eq!(face_plain(2, 0, &t2, &a), vec![3]); // a12
        assert_eq!(face_plain(2, 1, &t2, &a), vec![2]); // a02
        assert_eq!(face_plain(2, 2, &t2, &a), vec![(1 + 2 + 4 - 3) % 4]); // a01+a02-a12
        assert_eq!(face_plain(2, 3, &t2, &a), vec![1]); // a01
    }

    #[test]
    fn plain_face_degree_three_case() {
        // n = 3, k = 2 maps the six-entry input to
        // (a01 + a02 - a12, a03, a13)
        let a = z4_indexer();
        let t = vec![1usize, 2, 3, 1, 2, 3]; // (a01,a02,a03,a12,a13,a23)
        let out = face_plain(3, 2, &t, &a);
        assert_eq!(out, vec![(1 + 2 + 4 - 1) % 4, 3, 2]);
    }

    #[test]
    fn classical_faces() {
        let g = FiniteGroup::cyclic(5);
        assert_eq!(face_classical(1, 1, &[2, 4], &g), vec![1]);
        assert_eq!(face_classical(2, 0, &[1, 2, 3], &g), vec![2, 3]);
        assert_eq!(face_classical(2, 3, &[1, 2, 3], &g), vec![1, 2]);
        assert_eq!(face_classical(2, 2, &[1, 2, 3], &g), vec![1, 0]);
    }

    #[test]
    fn twisted_face_degree_two_matches_printed_case() {
        // G = Z2 acting on A = Z3 by negation, kappa = 0:
        // k = 2 gives h = (g1, g2 g3) and b01 = a01 + a02 - g1.a12
        let g = FiniteGroup::cyclic(2);
        let m = FgAbGroup::from_factors(&[3]);
        let action = GAction::new(
            g.clone(),
            m.clone(),
            vec![
                crate::abelian::IntMatrix::from_rows(&[vec![1]]),
                crate::abelian::IntMatrix::from_rows(&[vec![-1]]),
            ],
        )
        .unwrap();
        let a = AbIndexer::new(&m).unwrap();
        let act = ActionIndexer::new(&action).unwrap();
        let kappa_idx = vec![0usize; 8];
        let ops = TwistedOps {
            group: &g,
            a: &a,
            action_a: &act,
            kappa_idx: &kappa_idx,
        };
        let (h, b) = face_twisted(2, 2, &[1, 1, 1], &[1, 2, 2], &ops);
        assert_eq!(h, vec![1, 0]); // (g1, g2 g3)
        // a01 + a02 - g1.a12 = 1 + 2 - (-2) = 1 + 2 + 2 = 5 = 2 mod 3
        assert_eq!(b, vec![2]);
    }

    #[test]
    fn twisted_with_trivial_group_is_plain() {
        let g = FiniteGroup::trivial();
        let m = FgAbGroup::from_factors(&[4]);
        let action = GAction::trivial(g.clone(), m.clone());
        let a = AbIndexer::new(&m).unwrap();
        let act = ActionIndexer::new(&action).unwrap();
        let kappa_idx = vec![0usize];
        let ops = TwistedOps {
            group: &g,
            a: &a,
            action_a: &act,
            kappa_idx: &kappa_idx,
        };
        for n in 1..=4usize {
            let pairs = pair_count(n + 1);
            for t in 0..(4usize.pow(pairs as u32)).min(256) {
                let apart: Vec<usize> = (0..pairs).map(|p| (t >> (2 * p)) & 3).collect();
                let gpart = vec![0usize; n + 1];
                for k in 0..=n + 1 {
                    let (h, b) = face_twisted(n, k, &gpart, &apart, &ops);
                    assert_eq!(h, vec![0; n]);
                    assert_eq!(b, face_plain(n, k, &apart, &a));
                }
            }
        }
    }
}
