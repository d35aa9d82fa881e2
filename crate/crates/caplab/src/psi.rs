//! The canonical capitulation map: complements of maximal cyclic
//! subgroups, the associated fields `L_a` and `L'_a`, the lattice map
//! `psi` on cyclic and arbitrary subgroups, its inverse, and the
//! Hilbert-94 style witnesses.
//!
//! The construction promises more canonicity than a bare group-theoretic
//! model can deliver, so almost every operation here returns audit flags
//! instead of assuming its own postconditions: degree, generation,
//! independence of choices, and bijectivity are all measured per instance
//! and reported by the harness, never silently presumed.

use std::cell::RefCell;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::galois::{
    field_join, field_meet, fixed_by_element, generates_over_base, ArtinIso, FieldNode,
};
use crate::group::{
    cyclic_span, division_solutions, elem_order, enumerate_subgroups_bounded, intersect, join,
    p_height, span, GroupElement, GroupError, Height, PGroupType, Subgroup,
};
use crate::kummer::KummerPairing;

/// How the complement of a maximal cyclic subgroup is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Strategy {
    /// Kernel of the coordinate projection through the first unit
    /// coordinate of maximal modulus.
    AdaptedBasis,
    /// Right annihilator of the cyclic subgroup under the standard
    /// pairing; can fail the complement postcondition (e.g. isotropic
    /// elements for p = 2).
    PairingAnnihilator,
}

impl Strategy {
    pub const ALL: [Strategy; 2] = [Strategy::AdaptedBasis, Strategy::PairingAnnihilator];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::AdaptedBasis => "adapted-basis",
            Strategy::PairingAnnihilator => "pairing-annihilator",
        }
    }

    pub fn parse(s: &str) -> Option<Strategy> {
        match s {
            "adapted-basis" => Some(Strategy::AdaptedBasis),
            "pairing-annihilator" => Some(Strategy::PairingAnnihilator),
            _ => None,
        }
    }
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PsiError {
    #[error("the zero class has no splitting field in this construction")]
    ZeroElement,
    #[error("no guaranteed complement: element order {order} is below the group exponent {exponent}")]
    NotMaximalOrder { order: u64, exponent: u64 },
    #[error("pairing annihilator of {element} is not a complement (p = {p})")]
    ComplementPostcondition { element: String, p: u64 },
    #[error("{element} lies in no maximal cyclic subgroup (height {height}, order {order})")]
    NoMaximalAbove { element: String, height: u32, order: u64 },
    #[error("psi is not bijective at degree-{degree} field: {count} preimages")]
    NotBijectiveAt { degree: u64, count: usize, preimages: Vec<String> },
    #[error("Gal(L/K) is not cyclic or L = K")]
    NotCyclicExtension,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Complement of `⟨a⟩` in the ambient group, per the requested strategy.
///
/// Requires `ord(a) = exponent(A)`: the weaker hypothesis "a is
/// p-indivisible" does not guarantee a complement (see the CC1 audit for
/// the exhaustive witness), so it is rejected here rather than silently
/// producing a false postcondition.
pub fn canonical_complement(a: &GroupElement, strategy: Strategy) -> Result<Subgroup, PsiError> {
    let ty = a.group().clone();
    let order = elem_order(a);
    if order != ty.exponent() {
        return Err(PsiError::NotMaximalOrder { order, exponent: ty.exponent() });
    }
    if ty.rank() == 0 {
        return Ok(ty.trivial_subgroup());
    }
    match strategy {
        Strategy::AdaptedBasis => {
            let p = ty.p();
            let e1 = ty.exponents()[0];
            let pivot = (0..ty.rank())
                .find(|&i| ty.exponents()[i] == e1 && a.coords()[i] % p != 0)
                .expect("a maximal-order element has a unit coordinate of maximal modulus");
            let gens: Vec<GroupElement> = (0..ty.rank())
                .filter(|&l| l != pivot)
                .map(|l| {
                    let mut c = vec![0u64; ty.rank()];
                    c[l] = 1;
                    ty.element(&c).expect("unit vector")
                })
                .collect();
            Ok(span(&ty, &gens)?)
        }
        Strategy::PairingAnnihilator => {
            let pairing = KummerPairing::standard(&ty);
            let c = pairing.annihilator(&cyclic_span(a), crate::kummer::Side::Right);
            let ok = intersect(&cyclic_span(a), &c)?.is_trivial()
                && join(&cyclic_span(a), &c)?.is_whole();
            if !ok {
                return Err(PsiError::ComplementPostcondition {
                    element: a.to_string(),
                    p: ty.p(),
                });
            }
            Ok(c)
        }
    }
}

/// Complement of `⟨a⟩` inside a subgroup `S` in which `a` has maximal
/// order, via the adapted-basis rule applied to an internal direct-sum
/// decomposition of `S`. Used by the orthogonal-set construction when it
/// descends below elements that are maximal in the ambient group.
pub fn complement_within(s: &Subgroup, a: &GroupElement) -> Subgroup {
    let dec = s.decomposition();
    if dec.is_empty() {
        return s.clone();
    }
    let top = dec[0].1;
    debug_assert_eq!(elem_order(a), top, "a must have maximal order inside S");
    // coordinates of a in the decomposition, by odometer scan
    let coords = decomposition_coords(s, &dec, a);
    let p = s.group().p();
    let pivot = (0..dec.len())
        .find(|&i| dec[i].1 == top && coords[i] % p != 0)
        .expect("maximal order inside S gives a unit coordinate");
    let gens: Vec<GroupElement> =
        dec.iter().enumerate().filter(|&(i, _)| i != pivot).map(|(_, (g, _))| g.clone()).collect();
    span(s.group(), &gens).expect("same owner")
}

fn decomposition_coords(
    s: &Subgroup,
    dec: &[(GroupElement, u64)],
    a: &GroupElement,
) -> Vec<u64> {
    let r = dec.len();
    let mut c = vec![0u64; r];
    loop {
        let mut acc = s.group().zero();
        for i in 0..r {
            acc = acc.add(&dec[i].0.scale(c[i]));
        }
        if acc == *a {
            return c;
        }
        let mut i = r;
        loop {
            assert!(i > 0, "element not in subgroup");
            i -= 1;
            c[i] += 1;
            if c[i] < dec[i].1 {
                break;
            }
            c[i] = 0;
        }
    }
}

/// First subgroup (canonical order) that is a direct complement of
/// `target`, if any. Exhaustive certificate for the complement-hypothesis
/// audit.
pub fn find_complement_exhaustive<'a>(
    target: &Subgroup,
    candidates: &'a [Subgroup],
) -> Option<&'a Subgroup> {
    let whole_order = target.group().order();
    candidates.iter().find(|c| {
        c.order() * target.order() == whole_order
            && intersect(target, c).map(|m| m.is_trivial()).unwrap_or(false)
            && join(target, c).map(|j| j.is_whole()).unwrap_or(false)
    })
}

/// Outcome of `psi` on a maximal cyclic subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiMax {
    pub field: FieldNode,
    pub complement: Subgroup,
    /// `[L_a : K] = ord(a)`
    pub degree_ok: bool,
    /// the Artin image of `a` generates `Gal(L_a/K)`
    pub generates_ok: bool,
    /// `L_a` and `L'_a` are disjoint with compositum `H`
    pub disjoint_ok: bool,
}

/// Outcome of `psi` on one cyclic subgroup (any x != 0 below a maximal
/// element).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicPsi {
    pub field: FieldNode,
    /// the deterministically-first maximal element above x that was used
    pub chosen_root: GroupElement,
    /// whether every admissible root produced the same field
    pub all_agree: bool,
    /// the intersection over all admissible roots
    pub intersection: FieldNode,
}

/// Outcome of `psi` on an arbitrary subgroup, with audit flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiResult {
    pub input: Subgroup,
    pub field: FieldNode,
    pub strategy: Strategy,
    /// every cyclic subgroup of the input had a defined `psi`
    pub defined_on_all: bool,
    /// `[psi(A') : K] = |A'|`
    pub degree_ok: bool,
    /// root-choice independence held for every cyclic piece
    pub independence_ok: bool,
    /// generation flag for cyclic inputs with p-indivisible generator
    pub generates_ok: Option<bool>,
    /// cyclic pieces where `psi` was undefined
    pub undefined_at: Vec<GroupElement>,
}

/// Hilbert-94 style witness data for a cyclic subfield.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H94Witness {
    pub witness: Option<GroupElement>,
    pub order_matches: bool,
    /// the Artin image of the witness generates `Gal(L/K)`
    pub generates: bool,
    /// `L` is maximal cyclic in `H`
    pub maximal_cyclic: bool,
}

/// Evaluator for the `psi` family with per-instance caching.
///
/// All methods are deterministic; identical inputs yield byte-identical
/// outputs regardless of call order.
pub struct PsiEngine<'a> {
    artin: &'a ArtinIso,
    strategy: Strategy,
    cyclic_cache: RefCell<HashMap<Vec<u64>, Result<CyclicPsi, PsiError>>>,
    subgroup_cache: RefCell<Option<(u64, std::sync::Arc<Vec<Subgroup>>)>>,
    /// forward table for the inverse search: fixer of psi(S) -> preimages
    forward_cache: RefCell<Option<(u64, HashMap<Vec<u64>, Vec<usize>>)>>,
}

impl<'a> PsiEngine<'a> {
    pub fn new(artin: &'a ArtinIso, strategy: Strategy) -> Self {
        PsiEngine {
            artin,
            strategy,
            cyclic_cache: RefCell::new(HashMap::new()),
            subgroup_cache: RefCell::new(None),
            forward_cache: RefCell::new(None),
        }
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn group(&self) -> &PGroupType {
        self.artin.source()
    }

    /// `L'_a`, the field fixed by the cyclic span of the Artin image.
    pub fn splitting_field(&self, a: &GroupElement) -> Result<FieldNode, PsiError> {
        if a.is_zero() {
            return Err(PsiError::ZeroElement);
        }
        Ok(fixed_by_element(&self.artin.apply(a)))
    }

    /// `L_a` for a maximal-order element, with its audit flags.
    pub fn psi_max(&self, a: &GroupElement) -> Result<PsiMax, PsiError> {
        let complement = canonical_complement(a, self.strategy)?;
        let fixer = self.artin.apply_subgroup(&complement);
        let field = FieldNode::fixed_field(fixer);
        let phi_a = self.artin.apply(a);
        let degree_ok = field.degree() == elem_order(a);
        let generates_ok = generates_over_base(&phi_a, &field);
        let splitting = self.splitting_field(a)?;
        let top = FieldNode::fixed_field(self.group().trivial_subgroup());
        let base = FieldNode::fixed_field(self.group().whole());
        let disjoint_ok = field_join(&field, &splitting)? == top
            && field_meet(&field, &splitting)? == base;
        Ok(PsiMax { field, complement, degree_ok, generates_ok, disjoint_ok })
    }

    /// `psi` on the cyclic subgroup generated by `x`.
    pub fn psi_cyclic(&self, x: &GroupElement) -> Result<CyclicPsi, PsiError> {
        if x.is_zero() {
            return Err(PsiError::ZeroElement);
        }
        let key = cyclic_span(x).hnf().to_vec();
        if let Some(hit) = self.cyclic_cache.borrow().get(&key) {
            return hit.clone();
        }
        let out = self.psi_cyclic_uncached(x);
        self.cyclic_cache.borrow_mut().insert(key, out.clone());
        out
    }

    fn psi_cyclic_uncached(&self, x: &GroupElement) -> Result<CyclicPsi, PsiError> {
        let ty = x.group().clone();
        let Height::Finite(h) = p_height(x) else {
            return Err(PsiError::ZeroElement);
        };
        let q = elem_order(x);
        if ty.p().pow(h) * q != ty.exponent() {
            // x = p^h·y forces ord(y) = p^h·ord(x); when that falls short of
            // the exponent no maximal cyclic subgroup contains x
            return Err(PsiError::NoMaximalAbove {
                element: x.to_string(),
                height: h,
                order: q,
            });
        }
        let roots = division_solutions(x, h);
        debug_assert!(!roots.is_empty());
        let mut chosen: Option<FieldNode> = None;
        let mut intersection: Option<FieldNode> = None;
        let mut all_agree = true;
        for y in &roots {
            let complement = canonical_complement(y, self.strategy)?;
            let fixer = self.artin.apply_subgroup(&complement);
            // the unique degree-ord(x) subfield of L_y: adjoin q·phi(y)
            // to the fixer of L_y
            let sub_fixer = join(&fixer, &cyclic_span(&self.artin.apply(&y.scale(q))))?;
            let field = FieldNode::fixed_field(sub_fixer);
            match &chosen {
                None => {
                    intersection = Some(field.clone());
                    chosen = Some(field);
                }
                Some(first) => {
                    if *first != field {
                        all_agree = false;
                    }
                    intersection = Some(field_meet(intersection.as_ref().unwrap(), &field)?);
                }
            }
        }
        Ok(CyclicPsi {
            field: chosen.expect("at least one root"),
            chosen_root: roots.into_iter().next().expect("nonempty"),
            all_agree,
            intersection: intersection.expect("at least one root"),
        })
    }

    /// `psi` on an arbitrary subgroup: the compositum of the cyclic values
    /// over a generator transversal of the cyclic subgroups of `A'`. The
    /// element-by-element definition is kept as a test oracle.
    pub fn psi_subgroup(&self, s: &Subgroup) -> PsiResult {
        let ty = s.group().clone();
        let mut field = FieldNode::fixed_field(ty.whole()); // K
        let mut defined_on_all = true;
        let mut independence_ok = true;
        let mut undefined_at = Vec::new();
        for rep in cyclic_subgroup_reps(s) {
            match self.psi_cyclic(&rep) {
                Ok(cy) => {
                    if !cy.all_agree {
                        independence_ok = false;
                    }
                    field = field_join(&field, &cy.field).expect("same galois group");
                }
                Err(_) => {
                    defined_on_all = false;
                    undefined_at.push(rep);
                }
            }
        }
        let degree_ok = defined_on_all && field.degree() == s.order();
        let generates_ok = self.cyclic_generation_flag(s, &field);
        PsiResult {
            input: s.clone(),
            field,
            strategy: self.strategy,
            defined_on_all,
            degree_ok,
            independence_ok,
            generates_ok,
            undefined_at,
        }
    }

    fn cyclic_generation_flag(&self, s: &Subgroup, field: &FieldNode) -> Option<bool> {
        if s.is_trivial() || !s.is_cyclic() {
            return None;
        }
        let gen = s
            .elements()
            .into_iter()
            .find(|g| elem_order(g) == s.order())
            .expect("cyclic subgroup has a generator");
        if p_height(&gen) != Height::Finite(0) {
            return None;
        }
        Some(generates_over_base(&self.artin.apply(&gen), field))
    }

    fn subgroups(&self, bound: u64) -> Result<std::sync::Arc<Vec<Subgroup>>, PsiError> {
        {
            let cache = self.subgroup_cache.borrow();
            if let Some((b, subs)) = cache.as_ref() {
                if *b == bound {
                    return Ok(subs.clone());
                }
            }
        }
        let subs = std::sync::Arc::new(enumerate_subgroups_bounded(self.group(), bound)?);
        *self.subgroup_cache.borrow_mut() = Some((bound, subs.clone()));
        Ok(subs)
    }

    /// Exhaustive inverse: the unique `A'` with `psi(A') = L`, or a
    /// first-class non-bijectivity report listing every preimage found.
    /// The forward table is evaluated once per engine and bound.
    pub fn psi_inverse(&self, l: &FieldNode, bound: u64) -> Result<Subgroup, PsiError> {
        {
            let cache = self.forward_cache.borrow();
            if let Some((b, _)) = cache.as_ref() {
                if *b != bound {
                    drop(cache);
                    *self.forward_cache.borrow_mut() = None;
                }
            }
        }
        if self.forward_cache.borrow().is_none() {
            let subs = self.subgroups(bound)?;
            let mut table: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
            for (i, s) in subs.iter().enumerate() {
                let key = self.psi_subgroup(s).field.fixing_group().hnf().to_vec();
                table.entry(key).or_default().push(i);
            }
            *self.forward_cache.borrow_mut() = Some((bound, table));
        }
        let subs = self.subgroups(bound)?;
        let cache = self.forward_cache.borrow();
        let (_, table) = cache.as_ref().expect("just built");
        let preimages: Vec<&Subgroup> = table
            .get(&l.fixing_group().hnf().to_vec())
            .map(|v| v.iter().map(|&i| &subs[i]).collect())
            .unwrap_or_default();
        match preimages.as_slice() {
            [unique] => Ok((*unique).clone()),
            _ => Err(PsiError::NotBijectiveAt {
                degree: l.degree(),
                count: preimages.len(),
                preimages: preimages.iter().map(|s| format!("{s:?}")).collect(),
            }),
        }
    }

    /// Canonical-capitulation predicate: `x ∈ psi^{-1}(L)`.
    pub fn capitulates_canonically(
        &self,
        x: &GroupElement,
        l: &FieldNode,
        bound: u64,
    ) -> Result<bool, PsiError> {
        let inv = self.psi_inverse(l, bound)?;
        Ok(inv.contains(x)?)
    }

    /// Witness for the strengthened Hilbert 94 statement on a cyclic
    /// extension: a generator of `psi^{-1}(L)` of order `[L:K]`.
    pub fn hilbert94_witness(&self, l: &FieldNode, bound: u64) -> Result<H94Witness, PsiError> {
        if l.is_base() || !l.is_cyclic_over_base() {
            return Err(PsiError::NotCyclicExtension);
        }
        let inv = self.psi_inverse(l, bound)?;
        let degree = l.degree();
        let witness = inv.elements().into_iter().find(|g| elem_order(g) == degree);
        let order_matches = witness.is_some() && inv.order() == degree;
        let generates = witness
            .as_ref()
            .map(|w| generates_over_base(&self.artin.apply(w), l))
            .unwrap_or(false);
        let maximal_cyclic = self.is_maximal_cyclic(l, bound)?;
        Ok(H94Witness { witness, order_matches, generates, maximal_cyclic })
    }

    fn is_maximal_cyclic(&self, l: &FieldNode, bound: u64) -> Result<bool, PsiError> {
        let fix = l.fixing_group();
        for u in self.subgroups(bound)?.iter() {
            if u != fix
                && fix.contains_subgroup(u)?
                && FieldNode::fixed_field(u.clone()).is_cyclic_over_base()
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Test oracle: `psi(A')` evaluated over every nonzero element rather
    /// than a cyclic transversal.
    pub fn psi_subgroup_elementwise(&self, s: &Subgroup) -> PsiResult {
        let ty = s.group().clone();
        let mut field = FieldNode::fixed_field(ty.whole());
        let mut defined_on_all = true;
        let mut independence_ok = true;
        let mut undefined_at = Vec::new();
        for x in s.elements() {
            if x.is_zero() {
                continue;
            }
            match self.psi_cyclic(&x) {
                Ok(cy) => {
                    if !cy.all_agree {
                        independence_ok = false;
                    }
                    field = field_join(&field, &cy.field).expect("same galois group");
                }
                Err(_) => {
                    defined_on_all = false;
                    undefined_at.push(x);
                }
            }
        }
        let degree_ok = defined_on_all && field.degree() == s.order();
        let generates_ok = self.cyclic_generation_flag(s, &field);
        PsiResult {
            input: s.clone(),
            field,
            strategy: self.strategy,
            defined_on_all,
            degree_ok,
            independence_ok,
            generates_ok,
            undefined_at,
        }
    }
}

/// The lexicographically-first generator of every nonzero cyclic subgroup
/// of `S`, in first-occurrence order.
pub fn cyclic_subgroup_reps(s: &Subgroup) -> Vec<GroupElement> {
    let mut seen: HashMap<Vec<u64>, ()> = HashMap::new();
    let mut reps = Vec::new();
    for g in s.elements() {
        if g.is_zero() {
            continue;
        }
        let key = cyclic_span(&g).hnf().to_vec();
        if seen.insert(key, ()).is_none() {
            reps.push(g);
        }
    }
    reps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{enumerate_subgroups, member};

    fn ty(p: u64, e: &[u32]) -> PGroupType {
        PGroupType::new(p, e).unwrap()
    }

    fn el(t: &PGroupType, c: &[u64]) -> GroupElement {
        t.element(c).unwrap()
    }

    fn engine(artin: &ArtinIso, s: Strategy) -> PsiEngine<'_> {
        PsiEngine::new(artin, s)
    }

    #[test]
    fn splitting_field_examples() {
        let a9 = ty(3, &[2]);
        let id = ArtinIso::identity(&a9);
        let e = engine(&id, Strategy::AdaptedBasis);
        let l = e.splitting_field(&el(&a9, &[1])).unwrap();
        assert_eq!(l.degree(), 1); // L'_a = K

        let a = ty(3, &[1, 1]);
        let id = ArtinIso::identity(&a);
        let e = engine(&id, Strategy::AdaptedBasis);
        assert_eq!(e.splitting_field(&el(&a, &[1, 0])).unwrap().degree(), 3);

        let b = ty(3, &[3, 1]);
        let id = ArtinIso::identity(&b);
        let e = engine(&id, Strategy::AdaptedBasis);
        assert_eq!(e.splitting_field(&el(&b, &[1, 1])).unwrap().degree(), 3);
        assert_eq!(e.splitting_field(&b.zero()), Err(PsiError::ZeroElement));
    }

    #[test]
    fn adapted_complement_examples() {
        let a = ty(3, &[1, 1]);
        let c = canonical_complement(&el(&a, &[1, 0]), Strategy::AdaptedBasis).unwrap();
        assert_eq!(c, cyclic_span(&el(&a, &[0, 1])));

        let b = ty(3, &[3, 1]);
        let a11 = el(&b, &[1, 1]);
        let c = canonical_complement(&a11, Strategy::AdaptedBasis).unwrap();
        assert_eq!(c, cyclic_span(&el(&b, &[0, 1])));
        assert!(intersect(&cyclic_span(&a11), &c).unwrap().is_trivial());
        assert!(join(&cyclic_span(&a11), &c).unwrap().is_whole());
    }

    #[test]
    fn non_maximal_elements_are_rejected_and_genuinely_lack_complements() {
        let b = ty(3, &[3, 1]);
        let a = el(&b, &[3, 1]);
        assert_eq!(p_height(&a), Height::Finite(0)); // p-indivisible
        assert_eq!(elem_order(&a), 9); // but not of maximal order
        let err = canonical_complement(&a, Strategy::AdaptedBasis).unwrap_err();
        assert_eq!(err, PsiError::NotMaximalOrder { order: 9, exponent: 27 });
        // exhaustive certificate: no subgroup complements ⟨(3,1)⟩
        let subs = enumerate_subgroups(&b).unwrap();
        assert_eq!(find_complement_exhaustive(&cyclic_span(&a), &subs), None);
        // control: (0,1) is not maximal either, yet a complement exists
        let other = cyclic_span(&el(&b, &[0, 1]));
        assert!(find_complement_exhaustive(&other, &subs).is_some());
    }

    #[test]
    fn pairing_complement_examples() {
        let a = ty(3, &[1, 1]);
        let c = canonical_complement(&el(&a, &[1, 0]), Strategy::PairingAnnihilator).unwrap();
        assert_eq!(c, cyclic_span(&el(&a, &[0, 1])));
        // isotropic failure for p = 2
        let k4 = ty(2, &[1, 1]);
        let err = canonical_complement(&el(&k4, &[1, 1]), Strategy::PairingAnnihilator);
        assert!(matches!(err, Err(PsiError::ComplementPostcondition { .. })));
        // the adapted rule still succeeds there
        assert!(canonical_complement(&el(&k4, &[1, 1]), Strategy::AdaptedBasis).is_ok());
    }

    #[test]
    fn psi_max_examples() {
        let a9 = ty(3, &[2]);
        let id = ArtinIso::identity(&a9);
        let e = engine(&id, Strategy::AdaptedBasis);
        let m = e.psi_max(&el(&a9, &[1])).unwrap();
        assert_eq!(m.field.degree(), 9);
        assert!(m.degree_ok && m.generates_ok && m.disjoint_ok);

        let a = ty(3, &[1, 1]);
        let id = ArtinIso::identity(&a);
        let e = engine(&id, Strategy::AdaptedBasis);
        let m = e.psi_max(&el(&a, &[1, 0])).unwrap();
        assert_eq!(m.field.fixing_group(), &cyclic_span(&el(&a, &[0, 1])));
        assert_eq!(m.field.degree(), 3);

        let b = ty(3, &[3, 1]);
        let id = ArtinIso::identity(&b);
        let e = engine(&id, Strategy::AdaptedBasis);
        let m = e.psi_max(&el(&b, &[1, 1])).unwrap();
        assert_eq!(m.field.degree(), 27);
        assert_eq!(
            crate::galois::restriction_order(&el(&b, &[1, 1]), &m.field),
            27
        );
        assert!(m.degree_ok && m.generates_ok && m.disjoint_ok);
    }

    #[test]
    fn psi_cyclic_examples() {
        // cyclic tower
        let a9 = ty(3, &[2]);
        let id = ArtinIso::identity(&a9);
        let e = engine(&id, Strategy::AdaptedBasis);
        let cy = e.psi_cyclic(&el(&a9, &[3])).unwrap();
        assert_eq!(cy.field.degree(), 3);
        assert_eq!(cy.field.fixing_group(), &cyclic_span(&el(&a9, &[3])));
        assert!(cy.all_agree);

        // subfield of L_(1,0) in Z/9 x Z/3
        let a = ty(3, &[2, 1]);
        let id = ArtinIso::identity(&a);
        let e = engine(&id, Strategy::AdaptedBasis);
        let cy = e.psi_cyclic(&el(&a, &[3, 0])).unwrap();
        assert_eq!(cy.chosen_root, el(&a, &[1, 0]));
        let expect = span(&a, &[el(&a, &[0, 1]), el(&a, &[3, 0])]).unwrap();
        assert_eq!(cy.field.fixing_group(), &expect);

        // height-0 case reduces to psi_max
        let k = ty(3, &[1, 1]);
        let id = ArtinIso::identity(&k);
        let e = engine(&id, Strategy::AdaptedBasis);
        let cy = e.psi_cyclic(&el(&k, &[1, 0])).unwrap();
        let m = e.psi_max(&el(&k, &[1, 0])).unwrap();
        assert_eq!(cy.field, m.field);

        // undefined below no maximal element
        let b = ty(3, &[3, 1]);
        let id = ArtinIso::identity(&b);
        let e = engine(&id, Strategy::AdaptedBasis);
        assert!(matches!(
            e.psi_cyclic(&el(&b, &[0, 1])),
            Err(PsiError::NoMaximalAbove { .. })
        ));
    }

    #[test]
    fn psi_subgroup_examples() {
        let a = ty(3, &[1, 1]);
        let id = ArtinIso::identity(&a);
        let e = engine(&id, Strategy::AdaptedBasis);
        let r = e.psi_subgroup(&a.trivial_subgroup());
        assert!(r.field.is_base());
        assert!(r.degree_ok);

        let r = e.psi_subgroup(&cyclic_span(&el(&a, &[1, 0])));
        assert_eq!(r.field, e.psi_max(&el(&a, &[1, 0])).unwrap().field);

        // boundary case: whole group maps to H for cyclic A
        let a9 = ty(3, &[2]);
        let id9 = ArtinIso::identity(&a9);
        let e9 = engine(&id9, Strategy::AdaptedBasis);
        let r = e9.psi_subgroup(&a9.whole());
        assert!(r.field.is_top());
        assert!(r.degree_ok && r.defined_on_all);
    }

    #[test]
    fn transversal_matches_elementwise_oracle() {
        for spec in ["3:2", "2:3", "3:1,1", "2:2,1", "3:2,1", "5:1,1"] {
            let t = PGroupType::from_spec(spec).unwrap();
            let id = ArtinIso::identity(&t);
            for strat in Strategy::ALL {
                let e = engine(&id, strat);
                for s in enumerate_subgroups(&t).unwrap() {
                    let fast = e.psi_subgroup(&s);
                    let slow = e.psi_subgroup_elementwise(&s);
                    assert_eq!(fast.field, slow.field, "{spec} {strat} {s:?}");
                    assert_eq!(fast.defined_on_all, slow.defined_on_all);
                }
            }
        }
    }

    #[test]
    fn psi_inverse_examples() {
        let a9 = ty(3, &[2]);
        let id = ArtinIso::identity(&a9);
        let e = engine(&id, Strategy::AdaptedBasis);
        let k = FieldNode::fixed_field(a9.whole());
        assert_eq!(e.psi_inverse(&k, 729).unwrap(), a9.trivial_subgroup());
        let h = FieldNode::fixed_field(a9.trivial_subgroup());
        assert_eq!(e.psi_inverse(&h, 729).unwrap(), a9.whole());

        // the adapted rule is not injective on (Z/3)^2: three maximal cyclic
        // subgroups share a complement, so one field has three preimages and
        // two fields have none
        let a = ty(3, &[1, 1]);
        let id = ArtinIso::identity(&a);
        let e = engine(&id, Strategy::AdaptedBasis);
        let collided = FieldNode::fixed_field(cyclic_span(&el(&a, &[0, 1])));
        match e.psi_inverse(&collided, 729) {
            Err(PsiError::NotBijectiveAt { count, .. }) => assert_eq!(count, 3),
            other => panic!("expected three preimages, got {other:?}"),
        }
        let missed = FieldNode::fixed_field(cyclic_span(&el(&a, &[1, 1])));
        match e.psi_inverse(&missed, 729) {
            Err(PsiError::NotBijectiveAt { count, .. }) => assert_eq!(count, 0),
            other => panic!("expected no preimage, got {other:?}"),
        }

        // the pairing rule is bijective there
        let e = engine(&id, Strategy::PairingAnnihilator);
        for s in enumerate_subgroups(&a).unwrap() {
            let f = e.psi_subgroup(&s).field;
            assert_eq!(e.psi_inverse(&f, 729).unwrap(), s);
        }
    }

    #[test]
    fn capitulation_predicate_examples() {
        let a9 = ty(3, &[2]);
        let id = ArtinIso::identity(&a9);
        let e = engine(&id, Strategy::AdaptedBasis);
        let l3 = FieldNode::fixed_field(cyclic_span(&el(&a9, &[3])));
        assert!(e.capitulates_canonically(&a9.zero(), &l3, 729).unwrap());
        assert!(e.capitulates_canonically(&el(&a9, &[3]), &l3, 729).unwrap());
        assert!(!e.capitulates_canonically(&el(&a9, &[1]), &l3, 729).unwrap());
        // derived: psi^{-1}(L) is exactly ⟨3⟩
        assert_eq!(e.psi_inverse(&l3, 729).unwrap(), cyclic_span(&el(&a9, &[3])));
    }

    #[test]
    fn hilbert94_examples() {
        let a9 = ty(3, &[2]);
        let id = ArtinIso::identity(&a9);
        let e = engine(&id, Strategy::AdaptedBasis);
        let h = FieldNode::fixed_field(a9.trivial_subgroup());
        let w = e.hilbert94_witness(&h, 729).unwrap();
        assert_eq!(w.witness, Some(el(&a9, &[1])));
        assert!(w.order_matches && w.generates && w.maximal_cyclic);

        let l3 = FieldNode::fixed_field(cyclic_span(&el(&a9, &[3])));
        let w = e.hilbert94_witness(&l3, 729).unwrap();
        assert_eq!(w.witness, Some(el(&a9, &[3])));
        assert!(w.order_matches);
        assert!(!w.maximal_cyclic); // sits inside the full cyclic tower
        // the corollary's generation clause only binds maximal cyclic fields
        assert!(!w.maximal_cyclic || w.generates);

        // under the bijective strategy the planted witness comes back out
        let a = ty(3, &[1, 1]);
        let id = ArtinIso::identity(&a);
        let e = engine(&id, Strategy::PairingAnnihilator);
        let l = e.psi_max(&el(&a, &[1, 0])).unwrap().field;
        let w = e.hilbert94_witness(&l, 729).unwrap();
        assert_eq!(w.witness, Some(el(&a, &[1, 0])));
        assert!(w.order_matches && w.generates && w.maximal_cyclic);

        let k = FieldNode::fixed_field(a.whole());
        assert_eq!(e.hilbert94_witness(&k, 729), Err(PsiError::NotCyclicExtension));
    }

    #[test]
    fn member_and_complement_within_agree() {
        let t = ty(3, &[3, 1]);
        let subs = enumerate_subgroups(&t).unwrap();
        for s in &subs {
            let dec = s.decomposition();
            if dec.is_empty() {
                continue;
            }
            let top = dec[0].1;
            for a in s.elements() {
                if elem_order(&a) != top {
                    continue;
                }
                let c = complement_within(s, &a);
                assert!(intersect(&cyclic_span(&a), &c).unwrap().is_trivial());
                assert_eq!(join(&cyclic_span(&a), &c).unwrap(), *s);
                assert!(member(&a, s).unwrap());
            }
        }
    }

    #[test]
    fn determinism_across_engines() {
        let a = ty(2, &[2, 1]);
        let id = ArtinIso::identity(&a);
        for strat in Strategy::ALL {
            let e1 = engine(&id, strat);
            let e2 = engine(&id, strat);
            for s in enumerate_subgroups(&a).unwrap() {
                assert_eq!(e1.psi_subgroup(&s), e2.psi_subgroup(&s));
            }
        }
    }
}
