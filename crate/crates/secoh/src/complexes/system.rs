use crate::abelian::{FgAbGroup, IntMatrix, PresentedGroup};
use crate::complexes::faces::{face_classical, face_plain, face_twisted, TwistedOps};
use crate::complexes::tuples::{pair_count, AbIndexer, ActionIndexer, TupleIndex};
use crate::error::{Error, Result};
use crate::group::{Cocycle3, FiniteGroup, GAction};

pub const DEFAULT_AMBIENT_CEILING: usize = 1_000_000;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Variant {
    /// cochains on A^(n(n-1)/2) for an abelian group A
    Abelian,
    /// cochains on G^n x A^(n(n-1)/2) for a triple (G, A, kappa)
    Twisted,
    /// the bar complex, cochains on G^n
    Classical,
}

impl Variant {
    pub fn name(&self) -> &'static str {
        match self {
            Variant::Abelian => "abelian",
            Variant::Twisted => "triple",
            Variant::Classical => "classical",
        }
    }
}

/// Everything needed to evaluate and assemble the coboundary operators of
/// one cochain complex: the variant, the group data and the precomputed
/// index tables for the hot paths.
#[derive(Clone, Debug)]
pub struct ComplexSystem {
    variant: Variant,
    group: FiniteGroup,
    action_a: GAction,
    kappa: Cocycle3,
    action_b: GAction,
    a_index: AbIndexer,
    a_action_index: ActionIndexer,
    kappa_idx: Vec<usize>,
}

impl ComplexSystem {
    /// Complex of the abelian group A with coefficients in B; no group, no
    /// twist.
    pub fn abelian(a: &FgAbGroup, b: &FgAbGroup) -> Result<Self> {
        if !a.is_finite() {
            return Err(Error::InfiniteModule(format!(
                "the tuple group A must be finite, invariants {:?}",
                a.invariants()
            )));
        }
        let group = FiniteGroup::trivial();
        let action_a = GAction::trivial(group.clone(), a.clone());
        let action_b = GAction::trivial(group.clone(), b.clone());
        let kappa = Cocycle3::zero(action_a.clone());
        Self::build(Variant::Abelian, group, action_a, kappa, action_b)
    }

    /// Complex of a triple (G, A, kappa) with coefficients in the G-module B.
    pub fn twisted(action_a: GAction, kappa: Cocycle3, action_b: GAction) -> Result<Self> {
        if action_a.group() != action_b.group() {
            return Err(Error::VariantMismatch(
                "A and B must be modules over the same group".into(),
            ));
        }
        if kappa.action() != &action_a {
            return Err(Error::VariantMismatch(
                "kappa is not a cocycle over the action on A".into(),
            ));
        }
        if !action_a.module().is_finite() {
            return Err(Error::InfiniteModule(format!(
                "the tuple module A must be finite, invariants {:?}",
                action_a.module().invariants()
            )));
        }
        let group = action_a.group().clone();
        Self::build(Variant::Twisted, group, action_a, kappa, action_b)
    }

    /// The bar complex of G with coefficients in the G-module B.
    pub fn classical(action_b: GAction) -> Result<Self> {
        let group = action_b.group().clone();
        let action_a = GAction::trivial(group.clone(), FgAbGroup::trivial());
        let kappa = Cocycle3::zero(action_a.clone());
        Self::build(Variant::Classical, group, action_a, kappa, action_b)
    }

    fn build(
        variant: Variant,
        group: FiniteGroup,
        action_a: GAction,
        kappa: Cocycle3,
        action_b: GAction,
    ) -> Result<Self> {
        let a_index = AbIndexer::new(action_a.module())?;
        let a_action_index = ActionIndexer::new(&action_a)?;
        let a = action_a.module();
        let kappa_idx = kappa.values().iter().map(|v| a.index_of(v)).collect();
        Ok(ComplexSystem {
            variant,
            group,
            action_a,
            kappa,
            action_b,
            a_index,
            a_action_index,
            kappa_idx,
        })
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn module_a(&self) -> &FgAbGroup {
        self.action_a.module()
    }

    pub fn module_b(&self) -> &FgAbGroup {
        self.action_b.module()
    }

    pub fn action_a(&self) -> &GAction {
        &self.action_a
    }

    pub fn action_b(&self) -> &GAction {
        &self.action_b
    }

    pub fn kappa(&self) -> &Cocycle3 {
        &self.kappa
    }

    pub fn a_indexer(&self) -> &AbIndexer {
        &self.a_index
    }

    fn gpart_len(&self, degree: usize) -> usize {
        match self.variant {
            Variant::Abelian => 0,
            _ => degree,
        }
    }

    fn apart_len(&self, degree: usize) -> usize {
        match self.variant {
            Variant::Classical => 0,
            _ => pair_count(degree),
        }
    }

    /// Number of tuples at a degree, None on overflow.
    pub fn tuple_count(&self, degree: usize) -> Option<usize> {
        let g = self.group.order();
        let a = self.a_index.order();
        let mut count: usize = 1;
        for _ in 0..self.gpart_len(degree) {
            count = count.checked_mul(g)?;
        }
        for _ in 0..self.apart_len(degree) {
            count = count.checked_mul(a)?;
        }
        Some(count)
    }

    /// Ambient rank of the cochain group at a degree: tuple count times the
    /// generator rank of B.
    pub fn ambient_rank(&self, degree: usize) -> Option<usize> {
        self.tuple_count(degree)?.checked_mul(self.module_b().rank())
    }

    pub fn check_ceiling(&self, degree: usize, ceiling: usize) -> Result<()> {
        let required = self
            .ambient_rank(degree)
            .ok_or(Error::ScaleCeiling {
                required: usize::MAX,
                ceiling,
            })?;
        if required > ceiling {
            return Err(Error::ScaleCeiling { required, ceiling });
        }
        Ok(())
    }

    /// Mixed-radix tuple index: g-digits most significant (g_1 highest),
    /// then a-digits in lexicographic pair order.
    pub fn encode(&self, t: &TupleIndex) -> usize {
        let g = self.group.order();
        let a = self.a_index.order();
        let mut idx: usize = 0;
        for &gi in &t.gpart {
            idx = idx * g + gi;
        }
        for &ai in &t.apart {
            idx = idx * a + ai;
        }
        idx
    }

    pub fn decode(&self, mut idx: usize, degree: usize) -> TupleIndex {
        let g = self.group.order();
        let a = self.a_index.order();
        let gl = self.gpart_len(degree);
        let al = self.apart_len(degree);
        let mut apart = vec![0usize; al];
        for slot in (0..al).rev() {
            apart[slot] = idx % a;
            idx /= a;
        }
        let mut gpart = vec![0usize; gl];
        for slot in (0..gl).rev() {
            gpart[slot] = idx % g;
            idx /= g;
        }
        debug_assert_eq!(idx, 0, "tuple index out of range");
        TupleIndex { gpart, apart }
    }

    /// Face map d_n^k from degree n+1 tuples to degree n tuples, dispatched
    /// on the variant.
    pub fn face(&self, n: usize, k: usize, t: &TupleIndex) -> TupleIndex {
        match self.variant {
            Variant::Abelian => TupleIndex {
                gpart: vec![],
                apart: face_plain(n, k, &t.apart, &self.a_index),
            },
            Variant::Classical => TupleIndex {
                gpart: face_classical(n, k, &t.gpart, &self.group),
                apart: vec![],
            },
            Variant::Twisted => {
                let ops = TwistedOps {
                    group: &self.group,
                    a: &self.a_index,
                    action_a: &self.a_action_index,
                    kappa_idx: &self.kappa_idx,
                };
                let (gpart, apart) = face_twisted(n, k, &t.gpart, &t.apart, &ops);
                TupleIndex { gpart, apart }
            }
        }
    }

    /// Presentation of the degree-n cochain group as a free cover modulo
    /// block-diagonal copies of B's relations.
    pub fn presentation(&self, degree: usize, ceiling: usize) -> Result<PresentedGroup> {
        self.check_ceiling(degree, ceiling)?;
        let tuples = self.tuple_count(degree).unwrap();
        let relations =
            IntMatrix::block_diag_repeat(&self.module_b().relation_matrix(), tuples);
        PresentedGroup::new(tuples * self.module_b().rank(), relations)
    }
}
