//! The field lattice of an abelian extension, modeled through its Galois
//! group.
//!
//! A [`FieldNode`] stands for an intermediate field `K ⊆ L ⊆ H` and carries
//! nothing but its fixing subgroup `Gal(H/L) ⊆ G`; the Galois
//! correspondence makes this representation faithful for every question in
//! scope (degrees, inclusions, composita, intersections). [`ArtinIso`]
//! carries the identification of the class group `A` with `G`; the default
//! is the identity, and audits that claim canonicity re-run under random
//! isomorphisms.

use std::fmt;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::group::{
    cyclic_span, elem_order, intersect, join, span, GroupElement, GroupError, PGroupType, Subgroup,
};

/// An intermediate field of `H/K`, given by its fixing subgroup of `G`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldNode {
    fixing: Subgroup,
}

impl FieldNode {
    /// The field `H^U` fixed by a subgroup `U ⊆ G`.
    pub fn fixed_field(fixing: Subgroup) -> FieldNode {
        FieldNode { fixing }
    }

    /// `Gal(H/L)`, the exact inverse of [`FieldNode::fixed_field`].
    pub fn fixing_group(&self) -> &Subgroup {
        &self.fixing
    }

    pub fn into_fixing_group(self) -> Subgroup {
        self.fixing
    }

    pub fn galois_group(&self) -> &PGroupType {
        self.fixing.group()
    }

    /// Degree `[L : K] = |G| / |Gal(H/L)|`.
    pub fn degree(&self) -> u64 {
        self.fixing.index()
    }

    pub fn is_base(&self) -> bool {
        self.fixing.is_whole()
    }

    pub fn is_top(&self) -> bool {
        self.fixing.is_trivial()
    }

    /// Field inclusion `self ⊆ other`, i.e. reverse inclusion of fixers.
    pub fn is_subfield_of(&self, other: &FieldNode) -> Result<bool, GroupError> {
        self.fixing.contains_subgroup(&other.fixing)
    }

    /// Invariant factors of `Gal(L/K) = G / fixing`.
    pub fn galois_invariants(&self) -> PGroupType {
        self.fixing.quotient_invariants()
    }

    /// True when `Gal(L/K)` is cyclic.
    pub fn is_cyclic_over_base(&self) -> bool {
        self.galois_invariants().rank() <= 1
    }
}

impl fmt::Debug for FieldNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L[deg {}, fix {:?}]", self.degree(), self.fixing)
    }
}

impl fmt::Display for FieldNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `L1 ∩ L2`: the fixer is the join of the fixers.
pub fn field_meet(l1: &FieldNode, l2: &FieldNode) -> Result<FieldNode, GroupError> {
    Ok(FieldNode { fixing: join(&l1.fixing, &l2.fixing)? })
}

/// Compositum `L1 · L2`: the fixer is the intersection of the fixers.
pub fn field_join(l1: &FieldNode, l2: &FieldNode) -> Result<FieldNode, GroupError> {
    Ok(FieldNode { fixing: intersect(&l1.fixing, &l2.fixing)? })
}

/// Order of the restriction of `g` to `L`, i.e. of its image in
/// `G / Gal(H/L)`. `g` generates `Gal(L/K)` exactly when this equals
/// `[L:K]` and the quotient is cyclic.
pub fn restriction_order(g: &GroupElement, l: &FieldNode) -> u64 {
    let p = g.group().p();
    let full = elem_order(g);
    let mut q = 1u64;
    loop {
        if l.fixing.contains(&g.scale(q)).expect("same owner") {
            return q;
        }
        q *= p;
        debug_assert!(q <= full);
    }
}

/// True when `g` restricts to a generator of `Gal(L/K)`.
pub fn generates_over_base(g: &GroupElement, l: &FieldNode) -> bool {
    l.is_cyclic_over_base() && restriction_order(g, l) == l.degree()
}

/// A choice of isomorphism `A -> G` (the Artin identification).
///
/// Stored as a coordinate matrix: row `i` is the image of the i-th
/// standard generator of `A`. `source` and `target` always share the same
/// invariant factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArtinIso {
    source: PGroupType,
    target: PGroupType,
    matrix: Vec<u64>, // k x k, row-major
}

impl ArtinIso {
    /// The identity identification `A = G`.
    pub fn identity(ty: &PGroupType) -> ArtinIso {
        let k = ty.rank();
        let mut matrix = vec![0u64; k * k];
        for i in 0..k {
            matrix[i * k + i] = 1;
        }
        ArtinIso { source: ty.clone(), target: ty.clone(), matrix }
    }

    /// Builds an isomorphism from generator images; rejects matrices that
    /// are not well-defined homomorphisms or not bijective.
    pub fn from_matrix(ty: &PGroupType, matrix: Vec<u64>) -> Result<ArtinIso, GroupError> {
        let k = ty.rank();
        if matrix.len() != k * k {
            return Err(GroupError::BadCoordinateCount { got: matrix.len(), want: k * k });
        }
        let iso = ArtinIso { source: ty.clone(), target: ty.clone(), matrix };
        if !iso.is_well_defined() || !iso.is_bijective() {
            return Err(GroupError::BadSpec("matrix is not an automorphism".into()));
        }
        Ok(iso)
    }

    /// A seeded pseudorandom automorphism of `ty` (rejection sampling).
    pub fn random(ty: &PGroupType, seed: u64) -> ArtinIso {
        let k = ty.rank();
        if k == 0 {
            return ArtinIso::identity(ty);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let mut matrix = vec![0u64; k * k];
            for i in 0..k {
                for j in 0..k {
                    // hom condition: entry (i,j) divisible by p^{max(0, e_j - e_i)}
                    let ei = ty.exponents()[i];
                    let ej = ty.exponents()[j];
                    let step = ty.p().pow(ej.saturating_sub(ei));
                    let choices = ty.modulus(j) / step;
                    matrix[i * k + j] = rng.gen_range(0..choices) * step;
                }
            }
            let cand = ArtinIso { source: ty.clone(), target: ty.clone(), matrix };
            if cand.is_bijective() {
                return cand;
            }
        }
    }

    pub fn source(&self) -> &PGroupType {
        &self.source
    }

    pub fn target(&self) -> &PGroupType {
        &self.target
    }

    fn is_well_defined(&self) -> bool {
        let k = self.source.rank();
        for i in 0..k {
            for j in 0..k {
                let ei = self.source.exponents()[i];
                let ej = self.target.exponents()[j];
                let need = self.target.p().pow(ej.saturating_sub(ei));
                if self.matrix[i * k + j] % need != 0 {
                    return false;
                }
            }
        }
        true
    }

    fn is_bijective(&self) -> bool {
        let k = self.source.rank();
        let rows: Vec<GroupElement> = (0..k)
            .map(|i| {
                self.target
                    .element(&self.matrix[i * k..(i + 1) * k])
                    .expect("row has k coordinates")
            })
            .collect();
        match span(&self.target, &rows) {
            Ok(s) => s.is_whole(),
            Err(_) => false,
        }
    }

    /// Image of an element of `A` in `G`.
    pub fn apply(&self, a: &GroupElement) -> GroupElement {
        assert_eq!(*a.group(), self.source, "owner mismatch");
        let k = self.source.rank();
        let mut coords = vec![0u64; k];
        for j in 0..k {
            let m = self.target.modulus(j);
            let mut acc: u128 = 0;
            for i in 0..k {
                acc += a.coords()[i] as u128 * (self.matrix[i * k + j] % m) as u128;
            }
            coords[j] = (acc % m as u128) as u64;
        }
        self.target.element(&coords).expect("k coordinates")
    }

    /// Image of a subgroup of `A` in `G`.
    pub fn apply_subgroup(&self, s: &Subgroup) -> Subgroup {
        let images: Vec<GroupElement> = s.generators().iter().map(|g| self.apply(g)).collect();
        span(&self.target, &images).expect("images share the target owner")
    }

    /// The inverse isomorphism.
    pub fn inverse(&self) -> ArtinIso {
        let k = self.source.rank();
        let mut matrix = vec![0u64; k * k];
        for j in 0..k {
            // solve apply(x) = e_j by scanning the cyclic solve per basis
            let mut target = vec![0u64; k];
            target[j] = 1;
            let x = self
                .solve(&self.target.element(&target).expect("unit vector"))
                .expect("bijective by construction");
            matrix[j * k..(j + 1) * k].copy_from_slice(x.coords());
        }
        ArtinIso { source: self.target.clone(), target: self.source.clone(), matrix }
    }

    /// Preimage of `g`, by scan. Inversion only runs on audit-sized groups.
    fn solve(&self, g: &GroupElement) -> Option<GroupElement> {
        self.source.elements().into_iter().find(|cand| self.apply(cand) == *g)
    }
}

/// A deterministic cover relation test in the subgroup lattice, used by the
/// exporters: `a` is covered by `b` when `a ⊊ b` with index p and nothing
/// strictly between (automatic for index p).
pub fn covers(sub: &Subgroup, sup: &Subgroup) -> bool {
    sup.order() == sub.order() * sub.group().p()
        && sup.contains_subgroup(sub).unwrap_or(false)
}

/// Splitting-style helper: the field fixed by the cyclic span of one
/// Galois element.
pub fn fixed_by_element(g: &GroupElement) -> FieldNode {
    FieldNode::fixed_field(cyclic_span(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::enumerate_subgroups;

    fn ty(p: u64, e: &[u32]) -> PGroupType {
        PGroupType::new(p, e).unwrap()
    }

    fn el(t: &PGroupType, c: &[u64]) -> GroupElement {
        t.element(c).unwrap()
    }

    #[test]
    fn fixed_field_degrees() {
        let g = ty(3, &[1, 1]);
        assert_eq!(FieldNode::fixed_field(g.whole()).degree(), 1);
        assert_eq!(FieldNode::fixed_field(g.trivial_subgroup()).degree(), 9);
        assert_eq!(FieldNode::fixed_field(cyclic_span(&el(&g, &[1, 0]))).degree(), 3);
    }

    #[test]
    fn round_trip_exhaustive_on_klein() {
        let g = ty(2, &[1, 1]);
        let subs = enumerate_subgroups(&g).unwrap();
        assert_eq!(subs.len(), 5);
        for u in subs {
            let l = FieldNode::fixed_field(u.clone());
            assert_eq!(*l.fixing_group(), u);
            assert_eq!(l.degree() * u.order(), g.order());
        }
    }

    #[test]
    fn meet_join_examples() {
        let g = ty(3, &[1, 1]);
        let h = FieldNode::fixed_field(g.trivial_subgroup());
        let k = FieldNode::fixed_field(g.whole());
        let l = FieldNode::fixed_field(cyclic_span(&el(&g, &[1, 0])));
        assert_eq!(field_meet(&l, &h).unwrap(), l);
        assert_eq!(field_join(&l, &k).unwrap(), l);

        let l1 = FieldNode::fixed_field(cyclic_span(&el(&g, &[1, 0])));
        let l2 = FieldNode::fixed_field(cyclic_span(&el(&g, &[0, 1])));
        assert_eq!(field_join(&l1, &l2).unwrap(), h);
        assert_eq!(field_meet(&l1, &l2).unwrap(), k);
    }

    #[test]
    fn restriction_order_examples() {
        let g9 = ty(3, &[2]);
        let h = FieldNode::fixed_field(g9.trivial_subgroup());
        assert_eq!(restriction_order(&el(&g9, &[1]), &h), 9);
        assert!(generates_over_base(&el(&g9, &[1]), &h));
        assert_eq!(restriction_order(&el(&g9, &[3]), &h), 3);
        assert!(!generates_over_base(&el(&g9, &[3]), &h));

        let g = ty(3, &[1, 1]);
        let l = FieldNode::fixed_field(cyclic_span(&el(&g, &[0, 1])));
        assert_eq!(restriction_order(&el(&g, &[1, 1]), &l), 3);
        assert!(generates_over_base(&el(&g, &[1, 1]), &l));
    }

    #[test]
    fn product_formula_small() {
        let g = ty(2, &[2, 1]);
        let subs = enumerate_subgroups(&g).unwrap();
        for s in &subs {
            for t in &subs {
                let meet = crate::group::intersect(s, t).unwrap();
                let jn = crate::group::join(s, t).unwrap();
                assert_eq!(meet.order() * jn.order(), s.order() * t.order());
            }
        }
    }

    #[test]
    fn order_reversal_small() {
        let g = ty(3, &[2, 1]);
        let subs = enumerate_subgroups(&g).unwrap();
        for s in &subs {
            for t in &subs {
                let fields_reversed = FieldNode::fixed_field(t.clone())
                    .is_subfield_of(&FieldNode::fixed_field(s.clone()))
                    .unwrap();
                let groups_forward = t.contains_subgroup(s).unwrap();
                assert_eq!(fields_reversed, groups_forward);
            }
        }
    }

    #[test]
    fn random_artin_iso_preserves_structure() {
        let a = ty(3, &[2, 1]);
        for seed in 0..6 {
            let iso = ArtinIso::random(&a, seed);
            let subs = enumerate_subgroups(&a).unwrap();
            for s in &subs {
                let img = iso.apply_subgroup(s);
                assert_eq!(img.order(), s.order(), "seed {seed}");
            }
            for s in &subs {
                for t in &subs {
                    let inc = s.contains_subgroup(t).unwrap();
                    let inc_img =
                        iso.apply_subgroup(s).contains_subgroup(&iso.apply_subgroup(t)).unwrap();
                    assert_eq!(inc, inc_img, "seed {seed}");
                }
            }
        }
    }

    #[test]
    fn artin_iso_inverse_composes_to_identity() {
        let a = ty(2, &[2, 1, 1]);
        for seed in 0..4 {
            let iso = ArtinIso::random(&a, seed);
            let inv = iso.inverse();
            for g in a.elements() {
                assert_eq!(inv.apply(&iso.apply(&g)), g);
            }
        }
    }
}
