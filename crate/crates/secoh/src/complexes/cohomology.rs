use crate::abelian::{ComplexSlice, FgAbGroup, IntMatrix};
use crate::complexes::delta::assemble_delta;
use crate::complexes::system::ComplexSystem;
use crate::error::{Error, Result};
use crate::group::{Cocycle3, GAction};

/// Result of one cohomology evaluation, with the ambient ranks of the
/// source and target cochain groups of delta_n.
#[derive(Clone, Debug)]
pub struct CohomologyRun {
    pub group: FgAbGroup,
    pub source_rank: usize,
    pub target_rank: usize,
}

/// H^n of the complex: ker(delta_n) / im(delta_{n-1}), evaluated through
/// the presented-group homology engine.
pub fn cohomology(sys: &ComplexSystem, n: usize, ceiling: usize) -> Result<CohomologyRun> {
    let above = assemble_delta(sys, n, ceiling)?;
    let d_prev = if n == 0 {
        IntMatrix::zero(above.source.ambient_rank, 0)
    } else {
        assemble_delta(sys, n - 1, ceiling)?.matrix
    };
    let lower = if n == 0 {
        crate::abelian::PresentedGroup::free(0)
    } else {
        sys.presentation(n - 1, ceiling)?
    };
    let slice = ComplexSlice::new(
        lower,
        above.source.clone(),
        above.target.clone(),
        d_prev,
        above.matrix.clone(),
    )?;
    let group = slice.homology()?;
    Ok(CohomologyRun {
        group,
        source_rank: above.source.ambient_rank,
        target_rank: above.target.ambient_rank,
    })
}

/// Secondary cohomology of a finite abelian group A with coefficients in B.
pub fn secondary_cohomology_abelian(
    a: &FgAbGroup,
    b: &FgAbGroup,
    n: usize,
    ceiling: usize,
) -> Result<FgAbGroup> {
    if n == 0 {
        return Err(Error::Degree("secondary cohomology starts at degree 1".into()));
    }
    let sys = ComplexSystem::abelian(a, b)?;
    Ok(cohomology(&sys, n, ceiling)?.group)
}

/// Secondary cohomology of a triple (G, A, kappa) with coefficients in the
/// G-module B.
pub fn secondary_cohomology_triple(
    action_a: &GAction,
    kappa: &Cocycle3,
    action_b: &GAction,
    n: usize,
    ceiling: usize,
) -> Result<FgAbGroup> {
    if n == 0 {
        return Err(Error::Degree("secondary cohomology starts at degree 1".into()));
    }
    let sys = ComplexSystem::twisted(action_a.clone(), kappa.clone(), action_b.clone())?;
    Ok(cohomology(&sys, n, ceiling)?.group)
}

/// Classical group cohomology H^n(G, B) through the bar complex.
pub fn classical_cohomology(action_b: &GAction, n: usize, ceiling: usize) -> Result<FgAbGroup> {
    let sys = ComplexSystem::classical(action_b.clone())?;
    Ok(cohomology(&sys, n, ceiling)?.group)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use num_bigint::BigInt;

    const CEIL: usize = 1_000_000;

    fn invs(g: &FgAbGroup) -> Vec<i64> {
        g.invariants()
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn paper_example_degree_two() {
        let z2 = FgAbGroup::from_factors(&[2]);
        let z = FgAbGroup::free(1);
        assert_eq!(invs(&secondary_cohomology_abelian(&z2, &z, 2, CEIL).unwrap()), Vec::<i64>::new());
        assert_eq!(invs(&secondary_cohomology_abelian(&z2, &z2, 2, CEIL).unwrap()), vec![2]);
    }

    #[test]
    fn paper_example_degree_three() {
        let z2 = FgAbGroup::from_factors(&[2]);
        let z = FgAbGroup::free(1);
        let z4 = FgAbGroup::from_factors(&[4]);
        assert_eq!(invs(&secondary_cohomology_abelian(&z2, &z, 3, CEIL).unwrap()), vec![2]);
        assert_eq!(invs(&secondary_cohomology_abelian(&z2, &z2, 3, CEIL).unwrap()), vec![2]);
        // B/2B for B = Z4 is Z2
        assert_eq!(invs(&secondary_cohomology_abelian(&z2, &z4, 3, CEIL).unwrap()), vec![2]);
    }

    #[test]
    fn classical_h0_is_the_fixed_submodule() {
        // negation on Z has no nonzero fixed points
        let g = FiniteGroup::cyclic(2);
        let z = FgAbGroup::free(1);
        let action = GAction::new(
            g.clone(),
            z.clone(),
            vec![
                IntMatrix::from_rows(&[vec![1]]),
                IntMatrix::from_rows(&[vec![-1]]),
            ],
        )
        .unwrap();
        let h0 = classical_cohomology(&action, 0, CEIL).unwrap();
        assert!(h0.is_trivial());
        // trivial action fixes everything
        let trivial = GAction::trivial(g, z);
        let h0 = classical_cohomology(&trivial, 0, CEIL).unwrap();
        assert_eq!(h0.invariants(), &[BigInt::from(0)]);
    }

    #[test]
    fn classical_small_values() {
        let g = FiniteGroup::cyclic(2);
        let z2 = FgAbGroup::from_factors(&[2]);
        let z = FgAbGroup::free(1);
        let t2 = GAction::trivial(g.clone(), z2);
        let tz = GAction::trivial(g, z);
        assert_eq!(invs(&classical_cohomology(&t2, 1, CEIL).unwrap()), vec![2]);
        assert_eq!(invs(&classical_cohomology(&tz, 2, CEIL).unwrap()), vec![2]);
    }

    #[test]
    fn trivial_tuple_group_vanishes() {
        // degrees 1..4 of the one-point tuple spaces
        let one = FgAbGroup::trivial();
        let z2 = FgAbGroup::from_factors(&[2]);
        for n in 1..=4 {
            let h = secondary_cohomology_abelian(&one, &z2, n, CEIL).unwrap();
            assert!(h.is_trivial(), "degree {n}");
        }
    }
}
