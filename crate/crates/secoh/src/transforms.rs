//! Comparison maps between the complexes: the isomorphism translating
//! between cohomologous twisting cocycles, the inclusion of the bar complex
//! and the restriction to the abelian complex, plus the ternary identity
//! underlying the degree-4 cancellation.

use crate::complexes::{eval_delta, Cochain, ComplexSystem, Variant};
use crate::error::{Error, Result};
use crate::group::{coboundary2_classical, Cochain2, Cocycle3, FiniteGroup};

/// A pair of cohomologous cocycles kappa = kappa' + d2(u), validated
/// entrywise at construction so the comparison identities are meaningful.
#[derive(Clone, Debug)]
pub struct PhiContext {
    u: Cochain2,
    kappa: Cocycle3,
    kappa_prime: Cocycle3,
}

impl PhiContext {
    pub fn new(kappa: Cocycle3, kappa_prime: Cocycle3, u: Cochain2) -> Result<Self> {
        if u.action() != kappa.action() || kappa_prime.action() != kappa.action() {
            return Err(Error::VariantMismatch(
                "kappa, kappa' and u must share one module structure".into(),
            ));
        }
        let du = coboundary2_classical(&u);
        let a = u.action().module();
        let g = u.action().group();
        let n = g.order();
        for (idx, (k, kp)) in kappa.values().iter().zip(kappa_prime.values()).enumerate() {
            if a.sub(k, kp) != du[idx] {
                let g3 = idx % n;
                let g2 = (idx / n) % n;
                let g1 = idx / (n * n);
                return Err(Error::PhiRelationFails { g1, g2, g3 });
            }
        }
        Ok(PhiContext {
            u,
            kappa,
            kappa_prime,
        })
    }

    /// Build the context with kappa' := kappa - d2(u).
    pub fn from_u(kappa: Cocycle3, u: Cochain2) -> Result<Self> {
        let kappa_prime = kappa.sub_coboundary(&u)?;
        PhiContext::new(kappa, kappa_prime, u)
    }

    pub fn u(&self) -> &Cochain2 {
        &self.u
    }

    pub fn kappa(&self) -> &Cocycle3 {
        &self.kappa
    }

    pub fn kappa_prime(&self) -> &Cocycle3 {
        &self.kappa_prime
    }

    /// The context for the inverse map, from the kappa' side back to kappa.
    pub fn inverse(&self) -> PhiContext {
        PhiContext {
            u: self.u.neg(),
            kappa: self.kappa_prime.clone(),
            kappa_prime: self.kappa.clone(),
        }
    }
}

/// The comparison map on cochains, from the kappa complex to the kappa'
/// complex: (Phi_u f)((g); (a)) = f((g); (c)) with
///
///   c_{i,j} = a_{i,j} + u(g_{i+1} ... g_j, g_{j+1})
///
/// indexed by the triangle (i, j, j+1) carrying the pair, so the first
/// argument is the ordered product over the empty range (the identity) when
/// j = i+1... that is, u(g_{i+1}, g_{i+2}) for adjacent pairs. `sys` is the
/// system of the kappa side; the output is a cochain over the same tuple
/// spaces interpreted in the kappa' system.
pub fn phi_u(ctx: &PhiContext, sys: &ComplexSystem, f: &Cochain) -> Result<Cochain> {
    if sys.variant() != Variant::Twisted {
        return Err(Error::VariantMismatch(
            "the comparison map acts on twisted cochains".into(),
        ));
    }
    if sys.kappa() != ctx.kappa() {
        return Err(Error::VariantMismatch(
            "cochain system does not carry the context's kappa".into(),
        ));
    }
    let n = f.degree;
    let g = sys.group();
    let a_ix = sys.a_indexer();
    let a_mod = sys.module_a();
    let count = sys.tuple_count(n).expect("tuple count overflow");
    debug_assert_eq!(f.values.len(), count);
    let mut values = Vec::with_capacity(count);
    for idx in 0..count {
        let mut t = sys.decode(idx, n);
        let mut slot = 0;
        for i in 0..n {
            for j in i + 1..n {
                // u correction on the triangle (i, j, j+1): the 1-based
                // product g_{i+1}..g_j is the 0-based slice [i..j], and the
                // closing edge is g_{j+1} = gpart[j]
                let prod = g.product(&t.gpart[i..j]);
                let u_val = ctx.u.value(prod, t.gpart[j]);
                t.apart[slot] = a_ix.add(t.apart[slot], a_mod.index_of(u_val));
                slot += 1;
            }
        }
        values.push(f.values[sys.encode(&t)].clone());
    }
    Ok(Cochain { degree: n, values })
}

/// Inclusion of classical cochains: iota(f)((g); (a)) = f((g)), constant in
/// the a-part. Input is a cochain over the classical system on the same
/// group and coefficients; output lives in the twisted system `sys`.
pub fn iota(sys: &ComplexSystem, sys_classical: &ComplexSystem, f: &Cochain) -> Result<Cochain> {
    if sys.variant() != Variant::Twisted || sys_classical.variant() != Variant::Classical {
        return Err(Error::VariantMismatch(
            "iota maps classical cochains into a twisted system".into(),
        ));
    }
    if sys.group() != sys_classical.group() || sys.module_b() != sys_classical.module_b() {
        return Err(Error::VariantMismatch(
            "iota requires matching group and coefficients".into(),
        ));
    }
    let n = f.degree;
    let count = sys.tuple_count(n).expect("tuple count overflow");
    let values = (0..count)
        .map(|idx| {
            let t = sys.decode(idx, n);
            let classical = crate::complexes::TupleIndex {
                gpart: t.gpart,
                apart: vec![],
            };
            f.values[sys_classical.encode(&classical)].clone()
        })
        .collect();
    Ok(Cochain { degree: n, values })
}

/// Restriction to the abelian complex: rho(F)((a)) = F(e, ..., e; (a)).
/// The output is a cochain over the abelian system on (A, B).
pub fn rho(sys: &ComplexSystem, sys_abelian: &ComplexSystem, f: &Cochain) -> Result<Cochain> {
    if sys.variant() != Variant::Twisted || sys_abelian.variant() != Variant::Abelian {
        return Err(Error::VariantMismatch(
            "rho restricts twisted cochains to an abelian system".into(),
        ));
    }
    if sys.module_a() != sys_abelian.module_a() || sys.module_b() != sys_abelian.module_b() {
        return Err(Error::VariantMismatch(
            "rho requires matching tuple module and coefficients".into(),
        ));
    }
    let n = f.degree;
    let e = sys.group().identity();
    let count = sys_abelian.tuple_count(n).expect("tuple count overflow");
    let values = (0..count)
        .map(|idx| {
            let t = sys_abelian.decode(idx, n);
            let twisted = crate::complexes::TupleIndex {
                gpart: vec![e; n],
                apart: t.apart,
            };
            f.values[sys.encode(&twisted)].clone()
        })
        .collect();
    Ok(Cochain { degree: n, values })
}

/// Pointwise check that iota is a chain map at one tuple:
/// delta^kappa(iota f) = iota(delta_classical f).
pub fn iota_chain_map_defect(
    sys: &ComplexSystem,
    sys_classical: &ComplexSystem,
    f: &Cochain,
    tau: &crate::complexes::TupleIndex,
) -> Result<bool> {
    let lifted = iota(sys, sys_classical, f)?;
    let left = eval_delta(sys, &lifted, tau);
    let classical_tau = crate::complexes::TupleIndex {
        gpart: tau.gpart.clone(),
        apart: vec![],
    };
    let right = eval_delta(sys_classical, f, &classical_tau);
    Ok(left == right)
}

/// The ternary identity with f(a, b, c) = a * b * c^{-1}:
///   f(f(a01, a02, a12), a03, a13) = f(a01, f(a02, a03, a23), f(a12, a13, a23))
/// Returns the first violating 6-tuple (a01, a02, a03, a12, a13, a23), if
/// any. Holds for every abelian group; noncommutative groups give
/// counterexamples.
pub fn ternary_check_exhaustive(g: &FiniteGroup) -> Option<[usize; 6]> {
    let n = g.order();
    let f = |a: usize, b: usize, c: usize| g.mul(g.mul(a, b), g.inverse(c));
    let mut tuple = [0usize; 6];
    let total = n.checked_pow(6).expect("group too large for exhaustive check");
    for flat in 0..total {
        let mut rem = flat;
        for slot in (0..6).rev() {
            tuple[slot] = rem % n;
            rem /= n;
        }
        if !ternary_holds_at(g, &f, &tuple) {
            return Some(tuple);
        }
    }
    None
}

pub fn ternary_check_sampled<R: rand::Rng>(
    g: &FiniteGroup,
    samples: usize,
    rng: &mut R,
) -> Option<[usize; 6]> {
    let n = g.order();
    let f = |a: usize, b: usize, c: usize| g.mul(g.mul(a, b), g.inverse(c));
    for _ in 0..samples {
        let tuple = [
            rng.gen_range(0..n),
            rng.gen_range(0..n),
            rng.gen_range(0..n),
            rng.gen_range(0..n),
            rng.gen_range(0..n),
            rng.gen_range(0..n),
        ];
        if !ternary_holds_at(g, &f, &tuple) {
            return Some(tuple);
        }
    }
    None
}

fn ternary_holds_at(
    _g: &FiniteGroup,
    f: &impl Fn(usize, usize, usize) -> usize,
    t: &[usize; 6],
) -> bool {
    let [a01, a02, a03, a12, a13, a23] = *t;
    f(f(a01, a02, a12), a03, a13) == f(a01, f(a02, a03, a23), f(a12, a13, a23))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FgAbGroup;
    use crate::group::GAction;
    use rand::SeedableRng;

    fn z2_z2_system(kappa: Cocycle3) -> ComplexSystem {
        let g = FiniteGroup::cyclic(2);
        let b = FgAbGroup::from_factors(&[2]);
        let action_b = GAction::trivial(g, b);
        ComplexSystem::twisted(kappa.action().clone(), kappa, action_b).unwrap()
    }

    fn trivial_kappa_z2_z2() -> Cocycle3 {
        let g = FiniteGroup::cyclic(2);
        let a = FgAbGroup::from_factors(&[2]);
        Cocycle3::zero(GAction::trivial(g, a))
    }

    #[test]
    fn phi_with_zero_u_is_identity() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(19);
        let kappa = trivial_kappa_z2_z2();
        let sys = z2_z2_system(kappa.clone());
        let u = Cochain2::zero(kappa.action().clone());
        let ctx = PhiContext::from_u(kappa, u).unwrap();
        for n in 1..=3 {
            let f = sys.random_cochain(n, &mut rng);
            assert_eq!(phi_u(&ctx, &sys, &f).unwrap(), f);
        }
    }

    #[test]
    fn phi_is_inverted_by_phi_minus_u() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let kappa = trivial_kappa_z2_z2();
        let sys = z2_z2_system(kappa.clone());
        for _ in 0..5 {
            let u = Cochain2::random(kappa.action().clone(), &mut rng);
            let ctx = PhiContext::from_u(kappa.clone(), u).unwrap();
            let sys_prime = z2_z2_system(ctx.kappa_prime().clone());
            for n in 2..=3 {
                let f = sys.random_cochain(n, &mut rng);
                let there = phi_u(&ctx, &sys, &f).unwrap();
                let back = phi_u(&ctx.inverse(), &sys_prime, &there).unwrap();
                assert_eq!(back, f);
            }
        }
    }

    #[test]
    fn rho_after_iota_is_constant_in_a() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(29);
        let kappa = trivial_kappa_z2_z2();
        let sys = z2_z2_system(kappa.clone());
        let g = FiniteGroup::cyclic(2);
        let b = FgAbGroup::from_factors(&[2]);
        let sys_classical = ComplexSystem::classical(GAction::trivial(g, b)).unwrap();
        let sys_abelian =
            ComplexSystem::abelian(sys.module_a(), sys.module_b()).unwrap();
        let n = 2;
        let f = sys_classical.random_cochain(n, &mut rng);
        let lifted = iota(&sys, &sys_classical, &f).unwrap();
        let restricted = rho(&sys, &sys_abelian, &lifted).unwrap();
        let e_tuple = crate::complexes::TupleIndex {
            gpart: vec![0; n],
            apart: vec![],
        };
        let expected = &f.values[sys_classical.encode(&e_tuple)];
        assert!(restricted.values.iter().all(|v| v == expected));
    }

    #[test]
    fn ternary_holds_for_abelian_and_fails_for_s3() {
        for order in 1..=6 {
            let g = FiniteGroup::cyclic(order);
            assert_eq!(ternary_check_exhaustive(&g), None);
        }
        let v4 = FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2));
        assert_eq!(ternary_check_exhaustive(&v4), None);
        let s3 = s3_group();
        let witness = ternary_check_exhaustive(&s3).expect("S3 violates the identity");
        let f = |a: usize, b: usize, c: usize| s3.mul(s3.mul(a, b), s3.inverse(c));
        assert!(!super::ternary_holds_at(&s3, &f, &witness));
    }

    fn s3_group() -> FiniteGroup {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let rows: Vec<Vec<usize>> = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| {
                        let r = [p[q[0]], p[q[1]], p[q[2]]];
                        perms.iter().position(|x| *x == r).unwrap()
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(&rows).unwrap()
    }
}
