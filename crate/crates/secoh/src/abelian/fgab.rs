use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Finitely generated abelian group given by invariant factors
/// d1 | d2 | ... | dr. A zero entry is an infinite cyclic factor; factors
/// equal to 1 are forbidden and zeros come last.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FgAbGroup {
    invariants: Vec<BigInt>,
}

/// Element of an `FgAbGroup`, one coordinate per invariant factor, reduced
/// into [0, d) on torsion coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupElement {
    coeffs: Vec<BigInt>,
}

impl FgAbGroup {
    pub fn new(invariants: Vec<BigInt>) -> Result<Self> {
        let mut seen_zero = false;
        for (i, d) in invariants.iter().enumerate() {
            if d.is_negative() {
                return Err(Error::NonCanonicalInvariants(format!(
                    "factor {d} at position {i} is negative"
                )));
            }
            if *d == BigInt::from(1) {
                return Err(Error::NonCanonicalInvariants(format!(
                    "factor 1 at position {i} must be elided"
                )));
            }
            if d.is_zero() {
                seen_zero = true;
            } else {
                if seen_zero {
                    return Err(Error::NonCanonicalInvariants(format!(
                        "nonzero factor {d} at position {i} after a zero"
                    )));
                }
                if i > 0 && !invariants[i - 1].is_zero() && !(d % &invariants[i - 1]).is_zero() {
                    return Err(Error::NonCanonicalInvariants(format!(
                        "{} does not divide {}",
                        invariants[i - 1],
                        d
                    )));
                }
            }
        }
        Ok(FgAbGroup { invariants })
    }

    /// Canonicalize an arbitrary factor list: pairwise gcd/lcm until the
    /// divisibility chain holds, drop 1s, move zeros (free factors) last.
    pub fn canonicalize(factors: Vec<BigInt>) -> Self {
        let free = factors.iter().filter(|d| d.is_zero()).count();
        let mut tors: Vec<BigInt> = factors
            .into_iter()
            .map(|d| d.abs())
            .filter(|d| !d.is_zero() && *d != BigInt::from(1))
            .collect();
        loop {
            let mut changed = false;
            for i in 0..tors.len() {
                for j in i + 1..tors.len() {
                    if !(&tors[j] % &tors[i]).is_zero() {
                        let g = tors[i].gcd(&tors[j]);
                        let l = (&tors[i] * &tors[j]) / &g;
                        tors[i] = g;
                        tors[j] = l;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        tors.retain(|d| *d != BigInt::from(1));
        tors.sort();
        tors.extend(std::iter::repeat_n(BigInt::zero(), free));
        FgAbGroup { invariants: tors }
    }

    pub fn from_factors(factors: &[i64]) -> Self {
        Self::canonicalize(factors.iter().map(|&d| BigInt::from(d)).collect())
    }

    pub fn trivial() -> Self {
        FgAbGroup { invariants: vec![] }
    }

    pub fn cyclic(d: u64) -> Self {
        Self::from_factors(&[d as i64])
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup {
            invariants: vec![BigInt::zero(); rank],
        }
    }

    pub fn direct_sum(&self, other: &FgAbGroup) -> Self {
        let mut f = self.invariants.clone();
        f.extend_from_slice(&other.invariants);
        Self::canonicalize(f)
    }

    pub fn invariants(&self) -> &[BigInt] {
        &self.invariants
    }

    /// Number of generators (torsion plus free).
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    pub fn torsion_factors(&self) -> Vec<BigInt> {
        self.invariants.iter().filter(|d| !d.is_zero()).cloned().collect()
    }

    pub fn free_rank(&self) -> usize {
        self.invariants.iter().filter(|d| d.is_zero()).count()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank() == 0
    }

    pub fn order(&self) -> Option<BigInt> {
        if !self.is_finite() {
            return None;
        }
        let mut o = BigInt::from(1);
        for d in &self.invariants {
            o *= d;
        }
        Some(o)
    }

    pub fn order_usize(&self) -> Option<usize> {
        self.order().and_then(|o| o.to_usize())
    }

    /// Exponent of the torsion part (1 for free or trivial groups).
    pub fn exponent(&self) -> BigInt {
        self.invariants
            .iter()
            .filter(|d| !d.is_zero())
            .next_back()
            .cloned()
            .unwrap_or_else(|| BigInt::from(1))
    }

    /// Square diagonal relation matrix diag(d1, ..., dr); zero columns are
    /// kept so free groups flow through the same path.
    pub fn relation_matrix(&self) -> super::IntMatrix {
        super::IntMatrix::diagonal(&self.invariants)
    }

    fn reduce_coord(&self, t: usize, v: BigInt) -> BigInt {
        let d = &self.invariants[t];
        if d.is_zero() {
            v
        } else {
            v.mod_floor(d)
        }
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coeffs: vec![BigInt::zero(); self.rank()],
        }
    }

    /// Canonical element from arbitrary integer coordinates.
    pub fn element(&self, coeffs: Vec<BigInt>) -> GroupElement {
        assert_eq!(coeffs.len(), self.rank(), "coordinate count mismatch");
        GroupElement {
            coeffs: coeffs
                .into_iter()
                .enumerate()
                .map(|(t, v)| self.reduce_coord(t, v))
                .collect(),
        }
    }

    pub fn element_from_i64(&self, coeffs: &[i64]) -> GroupElement {
        self.element(coeffs.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.element(
            a.coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| x + y)
                .collect(),
        )
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        self.element(a.coeffs.iter().map(|x| -x).collect())
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.element(
            a.coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| x - y)
                .collect(),
        )
    }

    pub fn scalar_mul(&self, k: &BigInt, a: &GroupElement) -> GroupElement {
        self.element(a.coeffs.iter().map(|x| k * x).collect())
    }

    /// Mixed-radix index of an element, coordinate 0 most significant.
    /// Only valid for finite groups.
    pub fn index_of(&self, a: &GroupElement) -> usize {
        let mut idx = BigInt::zero();
        for (t, c) in a.coeffs.iter().enumerate() {
            debug_assert!(!self.invariants[t].is_zero(), "index_of on infinite group");
            idx = idx * &self.invariants[t] + c;
        }
        idx.to_usize().expect("group order fits usize")
    }

    pub fn element_at(&self, index: usize) -> GroupElement {
        let mut rem = BigInt::from(index);
        let mut coeffs = vec![BigInt::zero(); self.rank()];
        for t in (0..self.rank()).rev() {
            let d = &self.invariants[t];
            debug_assert!(!d.is_zero(), "element_at on infinite group");
            let (q, r) = rem.div_rem(d);
            coeffs[t] = r;
            rem = q;
        }
        debug_assert!(rem.is_zero(), "index out of range");
        GroupElement { coeffs }
    }

    pub fn iter_elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        let order = self.order_usize().expect("iter_elements on infinite group");
        (0..order).map(|i| self.element_at(i))
    }

    pub fn random_element<R: rand::Rng>(&self, rng: &mut R) -> GroupElement {
        let coeffs = self
            .invariants
            .iter()
            .map(|d| {
                if d.is_zero() {
                    BigInt::from(rng.gen_range(-4i64..=4))
                } else {
                    let n = d.to_u64().map_or_else(|| 1 << 32, |x| x);
                    BigInt::from(rng.gen_range(0..n))
                }
            })
            .collect();
        self.element(coeffs)
    }
}

impl GroupElement {
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl std::fmt::Display for GroupElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(BigInt::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_validation() {
        assert!(FgAbGroup::new(vec![2.into(), 4.into(), 0.into()]).is_ok());
        assert!(FgAbGroup::new(vec![1.into()]).is_err());
        assert!(FgAbGroup::new(vec![2.into(), 3.into()]).is_err());
        assert!(FgAbGroup::new(vec![0.into(), 2.into()]).is_err());
        assert!(FgAbGroup::new(vec![BigInt::from(-2)]).is_err());
    }

    #[test]
    fn canonicalize_factors() {
        // Z2 + Z3 = Z6
        assert_eq!(FgAbGroup::from_factors(&[2, 3]).invariants(), &[BigInt::from(6)]);
        // Z4 + Z6 = Z2 + Z12
        assert_eq!(
            FgAbGroup::from_factors(&[4, 6]).invariants(),
            &[BigInt::from(2), BigInt::from(12)]
        );
        // Z + Z2 keeps the free factor last
        assert_eq!(
            FgAbGroup::from_factors(&[0, 2]).invariants(),
            &[BigInt::from(2), BigInt::from(0)]
        );
        assert_eq!(FgAbGroup::from_factors(&[1, 1]).invariants(), &[] as &[BigInt]);
    }

    #[test]
    fn element_arithmetic() {
        let g = FgAbGroup::from_factors(&[4]);
        let a = g.element_from_i64(&[3]);
        let b = g.element_from_i64(&[2]);
        assert_eq!(g.add(&a, &b), g.element_from_i64(&[1]));
        assert_eq!(g.neg(&a), g.element_from_i64(&[1]));
        assert_eq!(g.sub(&b, &a), g.element_from_i64(&[3]));
    }

    #[test]
    fn enumeration_roundtrip() {
        let g = FgAbGroup::from_factors(&[2, 6]);
        assert_eq!(g.order_usize(), Some(12));
        for i in 0..12 {
            assert_eq!(g.index_of(&g.element_at(i)), i);
        }
    }

    #[test]
    fn infinite_group() {
        let g = FgAbGroup::from_factors(&[0, 2]);
        assert!(!g.is_finite());
        assert_eq!(g.order(), None);
        assert_eq!(g.exponent(), BigInt::from(2));
    }
}
