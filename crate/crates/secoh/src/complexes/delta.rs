//! Coboundary operators: pointwise evaluation as alternating sums over the
//! face maps, and assembly of the lifted integer matrix on free covers.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::abelian::{GroupElement, IntMatrix, PresentedGroup};
use crate::complexes::system::{ComplexSystem, Variant};
use crate::complexes::tuples::TupleIndex;
use crate::error::Result;

/// Dense cochain: one B-element per tuple of its degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cochain {
    pub degree: usize,
    pub values: Vec<GroupElement>,
}

impl ComplexSystem {
    pub fn zero_cochain(&self, degree: usize) -> Cochain {
        let count = self.tuple_count(degree).expect("tuple count overflow");
        Cochain {
            degree,
            values: vec![self.module_b().zero(); count],
        }
    }

    pub fn cochain_from_fn(
        &self,
        degree: usize,
        mut f: impl FnMut(&TupleIndex) -> GroupElement,
    ) -> Cochain {
        let count = self.tuple_count(degree).expect("tuple count overflow");
        let values = (0..count).map(|i| f(&self.decode(i, degree))).collect();
        Cochain { degree, values }
    }

    pub fn random_cochain<R: rand::Rng>(&self, degree: usize, rng: &mut R) -> Cochain {
        let count = self.tuple_count(degree).expect("tuple count overflow");
        let b = self.module_b();
        Cochain {
            degree,
            values: (0..count).map(|_| b.random_element(rng)).collect(),
        }
    }

    /// Deterministic pseudorandom cochain value for out-of-core sampling:
    /// large tuple spaces are probed without materializing tables.
    pub fn pseudorandom_value(&self, seed: u64, tuple_index: usize) -> GroupElement {
        let b = self.module_b();
        let mut h = splitmix64(seed ^ (tuple_index as u64).wrapping_mul(0x9e3779b97f4a7c15));
        let coeffs = b
            .invariants()
            .iter()
            .map(|d| {
                h = splitmix64(h);
                if d.is_zero() {
                    BigInt::from((h % 9) as i64 - 4)
                } else {
                    BigInt::from(h) % d
                }
            })
            .collect();
        b.element(coeffs)
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

/// Evaluate (delta_n f)(tau) for a degree-(n+1) tuple tau, with f given as a
/// function of encoded degree-n tuple indices. In the twisted and classical
/// variants the k = 0 term is acted on by g_1 through B's action.
pub fn eval_delta_fn(
    sys: &ComplexSystem,
    n: usize,
    f: &mut dyn FnMut(usize) -> GroupElement,
    tau: &TupleIndex,
) -> GroupElement {
    let b = sys.module_b();
    let mut acc = b.zero();
    for k in 0..=n + 1 {
        let sigma = sys.face(n, k, tau);
        let mut val = f(sys.encode(&sigma));
        if k == 0 && sys.variant() != Variant::Abelian {
            val = sys.action_b().apply(tau.gpart[0], &val);
        }
        acc = if k % 2 == 0 {
            b.add(&acc, &val)
        } else {
            b.sub(&acc, &val)
        };
    }
    acc
}

/// Evaluate (delta_n f)(tau) for a dense cochain f of degree n.
pub fn eval_delta(sys: &ComplexSystem, f: &Cochain, tau: &TupleIndex) -> GroupElement {
    debug_assert_eq!(
        f.values.len(),
        sys.tuple_count(f.degree).expect("tuple count overflow")
    );
    eval_delta_fn(sys, f.degree, &mut |i| f.values[i].clone(), tau)
}

/// The lifted matrix of delta_n together with the presentations of its
/// source and target cochain groups.
#[derive(Clone, Debug)]
pub struct DeltaAssembly {
    pub matrix: IntMatrix,
    pub source: PresentedGroup,
    pub target: PresentedGroup,
    pub source_tuples: usize,
    pub target_tuples: usize,
}

/// Assemble delta_n on free covers: for each target tuple tau and face k,
/// the block (-1)^k * (identity, or B's action matrix of g_1(tau) when
/// k = 0 in the twisted and classical variants) lands in the column block
/// of the source tuple d_n^k(tau). Relation matrices are block-diagonal
/// copies of B's relations.
pub fn assemble_delta(sys: &ComplexSystem, n: usize, ceiling: usize) -> Result<DeltaAssembly> {
    let source = sys.presentation(n, ceiling)?;
    let target = sys.presentation(n + 1, ceiling)?;
    let source_tuples = sys.tuple_count(n).unwrap();
    let target_tuples = sys.tuple_count(n + 1).unwrap();
    let r = sys.module_b().rank();
    let mut matrix = IntMatrix::zero(target.ambient_rank, source.ambient_rank);
    let one = BigInt::from(1);
    let minus_one = BigInt::from(-1);
    for t_idx in 0..target_tuples {
        let tau = sys.decode(t_idx, n + 1);
        for k in 0..=n + 1 {
            let sigma = sys.face(n, k, &tau);
            let s_idx = sys.encode(&sigma);
            let sign = if k % 2 == 0 { &one } else { &minus_one };
            if k == 0 && sys.variant() != Variant::Abelian {
                let act = sys.action_b().matrix(tau.gpart[0]);
                for row in 0..r {
                    for (col, v) in act.row(row) {
                        matrix.add_to(t_idx * r + row, s_idx * r + col, &(sign * v));
                    }
                }
            } else {
                for d in 0..r {
                    matrix.add_to(t_idx * r + d, s_idx * r + d, sign);
                }
            }
        }
    }
    Ok(DeltaAssembly {
        matrix,
        source,
        target,
        source_tuples,
        target_tuples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FgAbGroup;
    use rand::SeedableRng;

    #[test]
    fn delta1_of_a_constant_is_the_constant_function() {
        // A = Z2, B = Z: C^1 = B, C^2 = Map(A, B), and the three degree-1
        // faces all hit the unique point, so delta_1 is the all-ones 2x1
        // matrix
        let sys = ComplexSystem::abelian(
            &FgAbGroup::from_factors(&[2]),
            &FgAbGroup::free(1),
        )
        .unwrap();
        let asm = assemble_delta(&sys, 1, 1000).unwrap();
        assert_eq!((asm.matrix.rows(), asm.matrix.cols()), (2, 1));
        assert_eq!(asm.matrix, IntMatrix::from_rows(&[vec![1], vec![1]]));
    }

    #[test]
    fn delta0_is_zero_in_the_abelian_variant() {
        let sys = ComplexSystem::abelian(
            &FgAbGroup::from_factors(&[2]),
            &FgAbGroup::from_factors(&[2]),
        )
        .unwrap();
        let asm = assemble_delta(&sys, 0, 1000).unwrap();
        assert!(asm.matrix.is_zero());
    }

    #[test]
    fn assembled_matrix_matches_pointwise_evaluation() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let sys = ComplexSystem::abelian(
            &FgAbGroup::from_factors(&[2]),
            &FgAbGroup::from_factors(&[2]),
        )
        .unwrap();
        for n in 1..=3usize {
            let asm = assemble_delta(&sys, n, 10_000).unwrap();
            for _ in 0..5 {
                let f = sys.random_cochain(n, &mut rng);
                // coefficient vector of f in the free cover
                let coeffs: Vec<BigInt> = f
                    .values
                    .iter()
                    .flat_map(|v| v.coeffs().iter().cloned())
                    .collect();
                let image = asm.matrix.mul_vec(&coeffs);
                let b = sys.module_b();
                for t_idx in 0..sys.tuple_count(n + 1).unwrap() {
                    let tau = sys.decode(t_idx, n + 1);
                    let direct = eval_delta(&sys, &f, &tau);
                    let r = b.rank();
                    let lifted = b.element(image[t_idx * r..(t_idx + 1) * r].to_vec());
                    assert_eq!(direct, lifted);
                }
            }
        }
    }
}
