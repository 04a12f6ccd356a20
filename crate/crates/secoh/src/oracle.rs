//! Brute-force backend for tiny instances: exhaustive enumeration of whole
//! cochain groups, kernels and images, used to cross-check the matrix
//! pipeline. Hard-guarded; never a fallback for real computations.

use std::collections::HashSet;

use crate::complexes::{AbIndexer, ActionIndexer, ComplexSystem, TupleIndex, Variant};
use crate::error::{Error, Result};

/// Strictly more than this many cochains refuses to enumerate.
pub const ENUMERATION_GUARD: u64 = 1 << 16;

/// Cardinality and exponent summary from exhaustive enumeration: kernel and
/// boundary sizes at one degree and the quotient they induce.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BruteSummary {
    pub kernel_size: u64,
    pub boundary_size: u64,
    pub quotient_size: u64,
    pub exponent: u64,
}

/// Index-table arithmetic for B-valued cochains; requires finite B.
struct BruteOps {
    b_index: AbIndexer,
    b_action: ActionIndexer,
}

impl BruteOps {
    fn new(sys: &ComplexSystem) -> Result<Self> {
        Ok(BruteOps {
            b_index: AbIndexer::new(sys.module_b())?,
            b_action: ActionIndexer::new(sys.action_b())?,
        })
    }
}

fn cochain_count(sys: &ComplexSystem, degree: usize) -> Result<u64> {
    let b_order = sys
        .module_b()
        .order_usize()
        .ok_or_else(|| Error::InfiniteModule("enumeration requires finite B".into()))?
        as u64;
    let tuples = sys.tuple_count(degree).ok_or(Error::EnumerationGuard {
        required: u128::MAX,
        guard: ENUMERATION_GUARD,
    })? as u32;
    let count = (b_order as u128).checked_pow(tuples).ok_or(Error::EnumerationGuard {
        required: u128::MAX,
        guard: ENUMERATION_GUARD,
    })?;
    if count > ENUMERATION_GUARD as u128 {
        return Err(Error::EnumerationGuard {
            required: count,
            guard: ENUMERATION_GUARD,
        });
    }
    Ok(count as u64)
}

/// Every function from the degree-n tuple space to B, as tables of
/// B-element indices, each exactly once in mixed-radix order.
pub fn enumerate_cochains(
    sys: &ComplexSystem,
    degree: usize,
) -> Result<impl Iterator<Item = Vec<usize>> + '_> {
    let count = cochain_count(sys, degree)?;
    let b_order = sys.module_b().order_usize().unwrap();
    let tuples = sys.tuple_count(degree).unwrap();
    Ok((0..count).map(move |mut flat| {
        let mut table = vec![0usize; tuples];
        for slot in (0..tuples).rev() {
            table[slot] = (flat % b_order as u64) as usize;
            flat /= b_order as u64;
        }
        table
    }))
}

/// delta of an index-table cochain, evaluated at one degree-(n+1) tuple.
fn eval_delta_table(
    sys: &ComplexSystem,
    ops: &BruteOps,
    n: usize,
    table: &[usize],
    tau: &TupleIndex,
) -> usize {
    let mut acc = 0usize; // index of zero in B
    for k in 0..=n + 1 {
        let sigma = sys.face(n, k, tau);
        let mut val = table[sys.encode(&sigma)];
        if k == 0 && sys.variant() != Variant::Abelian {
            val = ops.b_action.apply(tau.gpart[0], val);
        }
        acc = if k % 2 == 0 {
            ops.b_index.add(acc, val)
        } else {
            ops.b_index.sub(acc, val)
        };
    }
    acc
}

fn delta_table(sys: &ComplexSystem, ops: &BruteOps, n: usize, table: &[usize]) -> Vec<usize> {
    let targets = sys.tuple_count(n + 1).expect("tuple count overflow");
    (0..targets)
        .map(|idx| eval_delta_table(sys, ops, n, table, &sys.decode(idx, n + 1)))
        .collect()
}

/// Exhaustive kernel/image/quotient summary at one degree. The kernel is
/// found by filtering pointwise delta evaluation, the boundaries by mapping
/// every cochain one degree down, the quotient by coset counting and the
/// exponent by order computation in the quotient.
pub fn brute_cohomology_summary(sys: &ComplexSystem, n: usize) -> Result<BruteSummary> {
    if n == 0 {
        return Err(Error::Degree("brute summary starts at degree 1".into()));
    }
    cochain_count(sys, n)?;
    cochain_count(sys, n - 1)?;
    let ops = BruteOps::new(sys)?;

    let kernel: Vec<Vec<usize>> = enumerate_cochains(sys, n)?
        .filter(|table| {
            let targets = sys.tuple_count(n + 1).expect("tuple count overflow");
            (0..targets)
                .all(|idx| eval_delta_table(sys, &ops, n, table, &sys.decode(idx, n + 1)) == 0)
        })
        .collect();

    let image: HashSet<Vec<usize>> = enumerate_cochains(sys, n - 1)?
        .map(|table| delta_table(sys, &ops, n - 1, &table))
        .collect();

    // boundaries are cocycles, so cosets partition the kernel evenly
    debug_assert!(image.iter().all(|b| kernel.contains(b)));
    let kernel_size = kernel.len() as u64;
    let boundary_size = image.len() as u64;
    let quotient_size = kernel_size / boundary_size;
    debug_assert_eq!(kernel_size % boundary_size, 0);

    let mut exponent = 1u64;
    for z in &kernel {
        let mut order = 1u64;
        loop {
            let scaled: Vec<usize> = z
                .iter()
                .map(|&v| {
                    let mut acc = 0usize;
                    for _ in 0..order {
                        acc = ops.b_index.add(acc, v);
                    }
                    acc
                })
                .collect();
            if image.contains(&scaled) {
                break;
            }
            order += 1;
        }
        exponent = lcm(exponent, order);
    }

    Ok(BruteSummary {
        kernel_size,
        boundary_size,
        quotient_size,
        exponent,
    })
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FgAbGroup;
    use crate::group::{Cocycle3, FiniteGroup, GAction};

    fn plain_z2_z2() -> ComplexSystem {
        ComplexSystem::abelian(
            &FgAbGroup::from_factors(&[2]),
            &FgAbGroup::from_factors(&[2]),
        )
        .unwrap()
    }

    #[test]
    fn enumeration_counts() {
        let sys = plain_z2_z2();
        assert_eq!(enumerate_cochains(&sys, 2).unwrap().count(), 4);
        assert_eq!(enumerate_cochains(&sys, 3).unwrap().count(), 256);

        let g = FiniteGroup::cyclic(2);
        let a = FgAbGroup::trivial();
        let b = FgAbGroup::from_factors(&[2]);
        let action_a = GAction::trivial(g.clone(), a);
        let action_b = GAction::trivial(g, b);
        let kappa = Cocycle3::zero(action_a.clone());
        let twisted = ComplexSystem::twisted(action_a, kappa, action_b).unwrap();
        assert_eq!(enumerate_cochains(&twisted, 2).unwrap().count(), 16);
    }

    #[test]
    fn guard_is_hard() {
        let sys = ComplexSystem::abelian(
            &FgAbGroup::from_factors(&[3]),
            &FgAbGroup::from_factors(&[3]),
        )
        .unwrap();
        // degree 3 has 27 tuples, so 3^27 cochains, far over the guard
        assert!(matches!(
            enumerate_cochains(&sys, 3).map(|_| ()),
            Err(Error::EnumerationGuard { .. })
        ));
    }

    #[test]
    fn summary_for_the_degree_two_example() {
        // |Z| = 4, |B| = 2, |H| = 2, exponent 2
        let sys = plain_z2_z2();
        let s = brute_cohomology_summary(&sys, 2).unwrap();
        assert_eq!(
            s,
            BruteSummary {
                kernel_size: 4,
                boundary_size: 2,
                quotient_size: 2,
                exponent: 2,
            }
        );
    }

    #[test]
    fn summary_vanishes_for_trivial_tuple_group() {
        let sys = ComplexSystem::abelian(
            &FgAbGroup::trivial(),
            &FgAbGroup::from_factors(&[2]),
        )
        .unwrap();
        let s = brute_cohomology_summary(&sys, 2).unwrap();
        assert_eq!(s.quotient_size, 1);
        assert_eq!(s.exponent, 1);
    }
}
