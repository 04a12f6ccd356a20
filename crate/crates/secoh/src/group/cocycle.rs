use crate::abelian::GroupElement;
use crate::error::{Error, Result};
use crate::group::GAction;

/// Witness for a failed 3-cocycle condition.
pub type CocycleWitness = (usize, usize, usize, usize);

/// Check the additive 3-cocycle condition
///   g1.k(g2,g3,g4) - k(g1 g2,g3,g4) + k(g1,g2 g3,g4)
///     - k(g1,g2,g3 g4) + k(g1,g2,g3) = 0
/// over every quadruple. Returns the first failing quadruple, if any.
pub fn check_cocycle3(action: &GAction, values: &[GroupElement]) -> Option<CocycleWitness> {
    let g = action.group();
    let a = action.module();
    let n = g.order();
    let at = |x: usize, y: usize, z: usize| &values[(x * n + y) * n + z];
    for g1 in 0..n {
        for g2 in 0..n {
            for g3 in 0..n {
                for g4 in 0..n {
                    let mut acc = action.apply(g1, at(g2, g3, g4));
                    acc = a.sub(&acc, at(g.mul(g1, g2), g3, g4));
                    acc = a.add(&acc, at(g1, g.mul(g2, g3), g4));
                    acc = a.sub(&acc, at(g1, g2, g.mul(g3, g4)));
                    acc = a.add(&acc, at(g1, g2, g3));
                    if !acc.is_zero() {
                        return Some((g1, g2, g3, g4));
                    }
                }
            }
        }
    }
    None
}

/// A 3-cocycle on G with values in a G-module; the cocycle condition is
/// verified at construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cocycle3 {
    action: GAction,
    values: Vec<GroupElement>, // dense G^3 table, g-major mixed radix
}

impl Cocycle3 {
    pub fn new(action: GAction, values: Vec<GroupElement>) -> Result<Self> {
        let n = action.group().order();
        if values.len() != n * n * n {
            return Err(Error::ValueTableLength {
                what: "kappa",
                got: values.len(),
                expected: n * n * n,
            });
        }
        if let Some((g1, g2, g3, g4)) = check_cocycle3(&action, &values) {
            return Err(Error::CocycleConditionFails { g1, g2, g3, g4 });
        }
        let k = Cocycle3 { action, values };
        // forced by the cocycle condition at (e, e, e, e)
        debug_assert!(k.value(k.action.group().identity(), k.action.group().identity(), k.action.group().identity()).is_zero());
        Ok(k)
    }

    pub fn zero(action: GAction) -> Self {
        let n = action.group().order();
        let zero = action.module().zero();
        Cocycle3 {
            values: vec![zero; n * n * n],
            action,
        }
    }

    /// The coboundary of a 2-cochain, always a valid cocycle.
    pub fn from_coboundary(u: &Cochain2) -> Self {
        let values = coboundary2_classical(u);
        Cocycle3::new(u.action().clone(), values).expect("coboundaries are cocycles")
    }

    /// kappa - d2(u), the cohomologous cocycle shifted by a 2-cochain.
    pub fn sub_coboundary(&self, u: &Cochain2) -> Result<Self> {
        if u.action() != &self.action {
            return Err(Error::VariantMismatch(
                "u is not a cochain over the same action as kappa".into(),
            ));
        }
        let du = coboundary2_classical(u);
        let a = self.action.module();
        let values = self
            .values
            .iter()
            .zip(&du)
            .map(|(k, d)| a.sub(k, d))
            .collect();
        Cocycle3::new(self.action.clone(), values)
    }

    pub fn action(&self) -> &GAction {
        &self.action
    }

    pub fn values(&self) -> &[GroupElement] {
        &self.values
    }

    #[inline]
    pub fn value(&self, g1: usize, g2: usize, g3: usize) -> &GroupElement {
        let n = self.action.group().order();
        &self.values[(g1 * n + g2) * n + g3]
    }
}

/// A 2-cochain G^2 -> A; no condition beyond well-formed values.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cochain2 {
    action: GAction,
    values: Vec<GroupElement>,
}

impl Cochain2 {
    pub fn new(action: GAction, values: Vec<GroupElement>) -> Result<Self> {
        let n = action.group().order();
        if values.len() != n * n {
            return Err(Error::ValueTableLength {
                what: "u",
                got: values.len(),
                expected: n * n,
            });
        }
        Ok(Cochain2 { action, values })
    }

    pub fn zero(action: GAction) -> Self {
        let n = action.group().order();
        let zero = action.module().zero();
        Cochain2 {
            values: vec![zero; n * n],
            action,
        }
    }

    pub fn random<R: rand::Rng>(action: GAction, rng: &mut R) -> Self {
        let n = action.group().order();
        let values = (0..n * n)
            .map(|_| action.module().random_element(rng))
            .collect();
        Cochain2 { action, values }
    }

    pub fn action(&self) -> &GAction {
        &self.action
    }

    #[inline]
    pub fn value(&self, g1: usize, g2: usize) -> &GroupElement {
        &self.values[g1 * self.action.group().order() + g2]
    }

    pub fn values(&self) -> &[GroupElement] {
        &self.values
    }

    pub fn add(&self, other: &Cochain2) -> Cochain2 {
        assert_eq!(self.action, other.action);
        let a = self.action.module();
        Cochain2 {
            action: self.action.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(x, y)| a.add(x, y))
                .collect(),
        }
    }

    pub fn neg(&self) -> Cochain2 {
        let a = self.action.module();
        Cochain2 {
            action: self.action.clone(),
            values: self.values.iter().map(|x| a.neg(x)).collect(),
        }
    }
}

/// Classical degree-2 coboundary:
///   (d2 u)(g1,g2,g3) = g1.u(g2,g3) - u(g1 g2,g3) + u(g1,g2 g3) - u(g1,g2)
pub fn coboundary2_classical(u: &Cochain2) -> Vec<GroupElement> {
    let action = u.action();
    let g = action.group();
    let a = action.module();
    let n = g.order();
    let mut out = Vec::with_capacity(n * n * n);
    for g1 in 0..n {
        for g2 in 0..n {
            for g3 in 0..n {
                let mut acc = action.apply(g1, u.value(g2, g3));
                acc = a.sub(&acc, u.value(g.mul(g1, g2), g3));
                acc = a.add(&acc, u.value(g1, g.mul(g2, g3)));
                acc = a.sub(&acc, u.value(g1, g2));
                out.push(acc);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FgAbGroup;
    use crate::group::FiniteGroup;
    use rand::SeedableRng;

    fn trivial_action_z2_z2() -> GAction {
        GAction::trivial(FiniteGroup::cyclic(2), FgAbGroup::from_factors(&[2]))
    }

    #[test]
    fn zero_cocycle_is_valid() {
        let k = Cocycle3::zero(trivial_action_z2_z2());
        assert!(check_cocycle3(k.action(), k.values()).is_none());
    }

    #[test]
    fn coboundaries_are_cocycles() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let u = Cochain2::random(trivial_action_z2_z2(), &mut rng);
            let _ = Cocycle3::from_coboundary(&u); // panics if invalid
        }
    }

    #[test]
    fn zero_cochain_has_zero_coboundary() {
        let u = Cochain2::zero(trivial_action_z2_z2());
        assert!(coboundary2_classical(&u).iter().all(GroupElement::is_zero));
    }

    #[test]
    fn product_cocycle_on_z2() {
        // kappa(g1,g2,g3) = g1*g2*g3 as indices mod 2: the classic
        // representative of the nontrivial degree-3 class; checked over all
        // 16 quadruples by the validator
        let action = trivial_action_z2_z2();
        let a = action.module().clone();
        let mut values = Vec::new();
        for g1 in 0..2i64 {
            for g2 in 0..2i64 {
                for g3 in 0..2i64 {
                    values.push(a.element_from_i64(&[g1 * g2 * g3]));
                }
            }
        }
        let k = Cocycle3::new(action, values).unwrap();
        assert!(!k.value(1, 1, 1).is_zero());
    }

    #[test]
    fn perturbed_cocycle_is_rejected_with_witness() {
        let action = trivial_action_z2_z2();
        let a = action.module().clone();
        let mut values = vec![a.zero(); 8];
        values[7] = a.element_from_i64(&[1]); // kappa(1,1,1) = 1 alone fails
        let err = Cocycle3::new(action, values);
        assert!(matches!(err, Err(Error::CocycleConditionFails { .. })));
    }

    #[test]
    fn coboundary_expansion_example() {
        // u(g,h) = g*h as indices mod 2, trivial action:
        // (d2 u)(1,1,1) = u(1,1) - u(0,1) + u(1,0) - u(1,1) = 0
        let action = trivial_action_z2_z2();
        let a = action.module().clone();
        let mut values = Vec::new();
        for g1 in 0..2i64 {
            for g2 in 0..2i64 {
                values.push(a.element_from_i64(&[g1 * g2]));
            }
        }
        let u = Cochain2::new(action, values).unwrap();
        let du = coboundary2_classical(&u);
        assert!(du[7].is_zero());
    }
}
