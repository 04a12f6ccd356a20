use num_traits::ToPrimitive;

use crate::abelian::{FgAbGroup, GroupElement};
use crate::error::{Error, Result};

/// Lexicographic rank of the pair (i, j), 0 <= i < j <= n-1, among the
/// n(n-1)/2 pairs of a degree-n tuple.
#[inline]
pub fn pair_position(i: usize, j: usize, n: usize) -> usize {
    assert!(i < j && j < n, "pair ({i}, {j}) out of range for degree {n}");
    // i*(n-1) - i*(i-1)/2 + (j-i-1), written to avoid usize underflow at i=0
    i * (n - 1) - (i * i - i) / 2 + (j - i - 1)
}

pub fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// The ordered pair index space of one degree.
#[derive(Clone, Debug)]
pub struct PairIndexSpace {
    pub n: usize,
}

impl PairIndexSpace {
    pub fn new(n: usize) -> Self {
        PairIndexSpace { n }
    }

    pub fn len(&self) -> usize {
        pair_count(self.n)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn position(&self, i: usize, j: usize) -> usize {
        pair_position(i, j, self.n)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
    }
}

/// Argument of a cochain: a g-part of group-element indices and an a-part of
/// module-element indices ordered by `PairIndexSpace`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TupleIndex {
    pub gpart: Vec<usize>,
    pub apart: Vec<usize>,
}

impl TupleIndex {
    pub fn degree_of(gpart_len: usize, apart_len: usize) -> Option<usize> {
        let n = gpart_len;
        (pair_count(n.max(1)) == apart_len || apart_len == pair_count(n)).then_some(n)
    }
}

/// Index arithmetic for a finite module: elements are mixed-radix integers
/// with coordinate 0 most significant, matching `FgAbGroup::element_at`.
#[derive(Clone, Debug)]
pub struct AbIndexer {
    dims: Vec<u64>,
    order: usize,
}

impl AbIndexer {
    pub fn new(module: &FgAbGroup) -> Result<Self> {
        if !module.is_finite() {
            return Err(Error::InfiniteModule(format!(
                "index arithmetic requires a finite module, invariants {:?}",
                module.invariants()
            )));
        }
        let dims: Vec<u64> = module
            .invariants()
            .iter()
            .map(|d| d.to_u64().ok_or_else(|| {
                Error::InfiniteModule("invariant factor does not fit in 64 bits".into())
            }))
            .collect::<Result<_>>()?;
        let order = module.order_usize().ok_or_else(|| {
            Error::ScaleCeiling {
                required: usize::MAX,
                ceiling: usize::MAX,
            }
        })?;
        Ok(AbIndexer { dims, order })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn decode(&self, idx: usize) -> Vec<u64> {
        let mut rem = idx as u64;
        let mut coords = vec![0u64; self.dims.len()];
        for t in (0..self.dims.len()).rev() {
            coords[t] = rem % self.dims[t];
            rem /= self.dims[t];
        }
        debug_assert_eq!(rem, 0, "index {idx} out of range");
        coords
    }

    pub fn encode(&self, coords: &[u64]) -> usize {
        let mut idx: u64 = 0;
        for (t, c) in coords.iter().enumerate() {
            idx = idx * self.dims[t] + c;
        }
        idx as usize
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        if self.dims.len() == 1 {
            return ((x as u64 + y as u64) % self.dims[0]) as usize;
        }
        let a = self.decode(x);
        let b = self.decode(y);
        let sum: Vec<u64> = a
            .iter()
            .zip(&b)
            .zip(&self.dims)
            .map(|((p, q), d)| (p + q) % d)
            .collect();
        self.encode(&sum)
    }

    #[inline]
    pub fn neg(&self, x: usize) -> usize {
        if self.dims.len() == 1 {
            let d = self.dims[0];
            return ((d - x as u64 % d) % d) as usize;
        }
        let a = self.decode(x);
        let n: Vec<u64> = a
            .iter()
            .zip(&self.dims)
            .map(|(p, d)| (d - p % d) % d)
            .collect();
        self.encode(&n)
    }

    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg(y))
    }

    pub fn index_of(&self, module: &FgAbGroup, e: &GroupElement) -> usize {
        module.index_of(e)
    }
}

/// Action on element indices through the action matrices, entries reduced
/// into 64-bit range at construction.
#[derive(Clone, Debug)]
pub struct ActionIndexer {
    rank: usize,
    mats: Vec<Vec<u64>>, // one flattened row-major rank x rank matrix per g
    indexer: AbIndexer,
}

impl ActionIndexer {
    pub fn new(action: &crate::group::GAction) -> Result<Self> {
        let indexer = AbIndexer::new(action.module())?;
        let rank = action.module().rank();
        let mats = (0..action.group().order())
            .map(|g| {
                let m = action.matrix(g);
                let mut flat = vec![0u64; rank * rank];
                for s in 0..rank {
                    for (t, v) in m.row(s) {
                        // canonical entries lie in [0, d_s)
                        flat[s * rank + t] = v.to_u64().ok_or_else(|| {
                            Error::InfiniteModule("action entry does not fit in 64 bits".into())
                        })?;
                    }
                }
                Ok(flat)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ActionIndexer {
            rank,
            mats,
            indexer,
        })
    }

    #[inline]
    pub fn apply(&self, g: usize, idx: usize) -> usize {
        if self.rank == 0 {
            return 0;
        }
        let coords = self.indexer.decode(idx);
        let m = &self.mats[g];
        let out: Vec<u64> = (0..self.rank)
            .map(|s| {
                let mut acc: u128 = 0;
                for (t, c) in coords.iter().enumerate() {
                    acc += m[s * self.rank + t] as u128 * *c as u128;
                }
                (acc % self.indexer.dims[s] as u128) as u64
            })
            .collect();
        self.indexer.encode(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_positions() {
        assert_eq!(pair_position(0, 1, 2), 0);
        // degree 3 pairs in order: (0,1), (0,2), (1,2)
        assert_eq!(pair_position(1, 2, 3), 2);
        // degree 4 pairs: (0,1), (0,2), (0,3), (1,2), (1,3), (2,3)
        assert_eq!(pair_position(1, 3, 4), 4);
        let space = PairIndexSpace::new(5);
        for (rank, (i, j)) in space.pairs().enumerate() {
            assert_eq!(space.position(i, j), rank);
        }
        assert_eq!(space.len(), 10);
    }

    #[test]
    fn indexer_matches_group_arithmetic() {
        let m = FgAbGroup::from_factors(&[2, 6]);
        let ix = AbIndexer::new(&m).unwrap();
        assert_eq!(ix.order(), 12);
        for x in 0..12 {
            for y in 0..12 {
                let ex = m.element_at(x);
                let ey = m.element_at(y);
                assert_eq!(ix.add(x, y), m.index_of(&m.add(&ex, &ey)));
            }
            assert_eq!(ix.neg(x), m.index_of(&m.neg(&m.element_at(x))));
        }
    }

    #[test]
    fn action_indexer_matches_apply() {
        use crate::abelian::IntMatrix;
        use crate::group::{FiniteGroup, GAction};
        let g = FiniteGroup::cyclic(2);
        let m = FgAbGroup::from_factors(&[3]);
        let a = GAction::new(
            g,
            m.clone(),
            vec![
                IntMatrix::from_rows(&[vec![1]]),
                IntMatrix::from_rows(&[vec![-1]]),
            ],
        )
        .unwrap();
        let ix = ActionIndexer::new(&a).unwrap();
        for gi in 0..2 {
            for x in 0..3 {
                let direct = m.index_of(&a.apply(gi, &m.element_at(x)));
                assert_eq!(ix.apply(gi, x), direct);
            }
        }
    }
}
