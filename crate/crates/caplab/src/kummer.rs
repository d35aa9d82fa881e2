//! Kummer duality between the Galois group `G` and the radical `B_c`,
//! the orthogonality relation it induces, and the generator-set
//! constructions built on top of it.
//!
//! Pairing values use the additive convention: `⟨g, b⟩` is the exponent of
//! the fixed root of unity, so "the pairing is 1" reads "the residue is 0"
//! and all arithmetic stays exact.

use std::fmt;

use thiserror::Error;

use crate::galois::{ArtinIso, FieldNode};
use crate::group::{
    cyclic_span, elem_order, intersect, p_height, span, GroupElement, GroupError, Height,
    PGroupType, Subgroup,
};
use crate::linalg::{hnf_in_place, left_kernel, Mat};
use crate::psi::{canonical_complement, complement_within, PsiEngine, PsiError, Strategy};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KummerError {
    #[error("pairing arguments belong to the wrong group types")]
    OwnerMismatch,
    #[error("matrix does not define a pairing: entry ({i},{j}) breaks well-definedness")]
    NotWellDefined { i: usize, j: usize },
    #[error("pairing is degenerate (a kernel is nontrivial)")]
    NotPerfect,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Which argument of the pairing an annihilator is taken against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// The abstract Kummer radical: a group of the same invariant type as `G`
/// with named basis classes `b_1, ..., b_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalGroup {
    ty: PGroupType,
}

impl RadicalGroup {
    pub fn new(ty: PGroupType) -> RadicalGroup {
        RadicalGroup { ty }
    }

    pub fn group(&self) -> &PGroupType {
        &self.ty
    }

    pub fn basis_label(&self, i: usize) -> String {
        format!("b{}", i + 1)
    }
}

/// A bilinear pairing `G x B -> Z/p^m` given by an exact matrix.
///
/// Perfectness (both kernels trivial) is checked at construction.
#[derive(Clone, PartialEq, Eq)]
pub struct KummerPairing {
    g_ty: PGroupType,
    radical: RadicalGroup,
    matrix: Vec<u64>, // k x k over Z/p^m
}

impl KummerPairing {
    /// The standard pairing `⟨e_i, b_j⟩ = δ_ij · p^{m - e_i}`.
    pub fn standard(ty: &PGroupType) -> KummerPairing {
        let k = ty.rank();
        let m = ty.exponent_log();
        let mut matrix = vec![0u64; k * k];
        for i in 0..k {
            matrix[i * k + i] = ty.p().pow(m - ty.exponents()[i]);
        }
        KummerPairing { g_ty: ty.clone(), radical: RadicalGroup::new(ty.clone()), matrix }
    }

    /// Builds a pairing from an explicit matrix, validating
    /// well-definedness and perfectness.
    pub fn from_matrix(ty: &PGroupType, matrix: Vec<u64>) -> Result<KummerPairing, KummerError> {
        let k = ty.rank();
        if matrix.len() != k * k {
            return Err(KummerError::OwnerMismatch);
        }
        let m = ty.exponent_log();
        let pm = ty.p().pow(m);
        for i in 0..k {
            for j in 0..k {
                let need = ty.p().pow(m - ty.exponents()[i].min(ty.exponents()[j]));
                if matrix[i * k + j] % pm % need != 0 {
                    return Err(KummerError::NotWellDefined { i, j });
                }
            }
        }
        let pairing = KummerPairing {
            g_ty: ty.clone(),
            radical: RadicalGroup::new(ty.clone()),
            matrix: matrix.iter().map(|&v| v % pm).collect(),
        };
        if !pairing.is_perfect() {
            return Err(KummerError::NotPerfect);
        }
        Ok(pairing)
    }

    /// A seeded random perfect pairing: the standard matrix conjugated by
    /// random automorphisms of both sides.
    pub fn random(ty: &PGroupType, seed: u64) -> KummerPairing {
        let left = ArtinIso::random(ty, seed.wrapping_mul(2).wrapping_add(1));
        let right = ArtinIso::random(ty, seed.wrapping_mul(2).wrapping_add(2));
        let std = KummerPairing::standard(ty);
        let k = ty.rank();
        let pm = ty.exponent();
        let mut matrix = vec![0u64; k * k];
        for i in 0..k {
            let gi = unit_vector(ty, i);
            for j in 0..k {
                let bj = unit_vector(ty, j);
                matrix[i * k + j] =
                    std.pair(&left.apply(&gi), &right.apply(&bj)).expect("same type") % pm;
            }
        }
        KummerPairing { g_ty: ty.clone(), radical: RadicalGroup::new(ty.clone()), matrix }
    }

    pub fn group(&self) -> &PGroupType {
        &self.g_ty
    }

    pub fn radical(&self) -> &RadicalGroup {
        &self.radical
    }

    pub fn modulus(&self) -> u64 {
        self.g_ty.exponent()
    }

    /// `⟨g, b⟩` as a residue mod `p^m`.
    pub fn pair(&self, g: &GroupElement, b: &GroupElement) -> Result<u64, KummerError> {
        if *g.group() != self.g_ty || *b.group() != self.radical.ty {
            return Err(KummerError::OwnerMismatch);
        }
        let k = self.g_ty.rank();
        let pm = self.modulus() as u128;
        let mut acc: u128 = 0;
        for i in 0..k {
            for j in 0..k {
                acc = (acc
                    + g.coords()[i] as u128 * self.matrix[i * k + j] as u128 % pm
                        * b.coords()[j] as u128)
                    % pm;
            }
        }
        Ok(acc as u64)
    }

    /// Both kernels trivial?
    pub fn is_perfect(&self) -> bool {
        self.kernel(Side::Left).is_trivial() && self.kernel(Side::Right).is_trivial()
    }

    fn kernel(&self, side: Side) -> Subgroup {
        let k = self.g_ty.rank();
        // conditions: for each unit vector on the other side, the value is 0
        let conditions: Vec<Vec<u64>> = (0..k)
            .map(|j| {
                (0..k)
                    .map(|i| match side {
                        Side::Left => self.matrix[i * k + j],
                        Side::Right => self.matrix[j * k + i],
                    })
                    .collect()
            })
            .collect();
        solve_congruences(&self.g_ty, &conditions, self.modulus())
    }

    /// Annihilator of a subgroup on the chosen side:
    /// `{ b : ⟨u, b⟩ = 0 for all u in S }` for `Side::Right`, symmetric for
    /// `Side::Left`. Satisfies `|S| · |ann(S)| = |G|` for perfect pairings.
    pub fn annihilator(&self, s: &Subgroup, side: Side) -> Subgroup {
        let k = self.g_ty.rank();
        let conditions: Vec<Vec<u64>> = s
            .generators()
            .iter()
            .map(|r| {
                (0..k)
                    .map(|x| {
                        let mut acc: u128 = 0;
                        let pm = self.modulus() as u128;
                        for i in 0..k {
                            let mij = match side {
                                // conditions on b: coefficient of b_x is (r·M)_x
                                Side::Right => self.matrix[i * k + x],
                                // conditions on g: coefficient of g_x is (M·r)_x
                                Side::Left => self.matrix[x * k + i],
                            };
                            acc = (acc + r.coords()[i] as u128 * mij as u128) % pm;
                        }
                        acc as u64
                    })
                    .collect()
            })
            .collect();
        solve_congruences(&self.g_ty, &conditions, self.modulus())
    }

    /// The Kummer radical of a field: the annihilator of its fixing group.
    pub fn radical_of_field(&self, l: &FieldNode) -> Subgroup {
        self.annihilator(l.fixing_group(), Side::Right)
    }

    /// `psi_k = radical_of_field ∘ psi` on a subgroup of `A`.
    pub fn psi_k(&self, engine: &PsiEngine<'_>, s: &Subgroup) -> Subgroup {
        self.radical_of_field(&engine.psi_subgroup(s).field)
    }
}

impl fmt::Debug for KummerPairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KummerPairing({}, {:?})", self.g_ty.spec_string(), self.matrix)
    }
}

fn unit_vector(ty: &PGroupType, i: usize) -> GroupElement {
    let mut c = vec![0u64; ty.rank()];
    c[i] = 1;
    ty.element(&c).expect("unit vector")
}

/// Solution subgroup of `C · x ≡ 0 (mod modulus)`, one congruence per
/// condition row.
pub(crate) fn solve_congruences(
    ty: &PGroupType,
    conditions: &[Vec<u64>],
    modulus: u64,
) -> Subgroup {
    let k = ty.rank();
    let r = conditions.len();
    if k == 0 || r == 0 {
        return ty.whole();
    }
    // kernel rows (u | v) of [C^T ; modulus·I]: u·C^T ≡ 0 (mod modulus)
    let mut rows: Vec<Vec<i128>> = Vec::with_capacity(k + r);
    for i in 0..k {
        rows.push((0..r).map(|j| conditions[j][i] as i128).collect());
    }
    for j in 0..r {
        let mut row = vec![0i128; r];
        row[j] = modulus as i128;
        rows.push(row);
    }
    let stacked = Mat::from_rows(&rows);
    let kernel = left_kernel(&stacked);
    let mut basis: Vec<Vec<i128>> = kernel.iter().map(|uv| uv[..k].to_vec()).collect();
    for i in 0..k {
        let mut d = vec![0i128; k];
        d[i] = ty.modulus(i) as i128;
        basis.push(d);
    }
    let mut m = Mat::from_rows(&basis);
    hnf_in_place(&mut m, None);
    let flat: Vec<u64> = (0..k * k).map(|i| m.data[i] as u64).collect();
    Subgroup::from_hnf(ty.clone(), flat)
}

/// The two orthogonality tests for a pair of maximal-order classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Orthogonality {
    /// `a' ∈ c(a)`: the Artin image of `a'` lies in the canonical lift.
    pub co: bool,
    /// `⟨φ(a), psi_k(a')⟩ = 0` for the whole radical of `psi(⟨a'⟩)`.
    pub co1: bool,
    /// whether the two characterizations agreed on this pair
    pub agree: bool,
}

/// Evaluates both orthogonality characterizations for maximal-order `a`,
/// `a'`. Errors when a required complement does not exist.
pub fn is_orthogonal(
    pairing: &KummerPairing,
    engine: &PsiEngine<'_>,
    artin: &ArtinIso,
    a: &GroupElement,
    a_prime: &GroupElement,
) -> Result<Orthogonality, PsiError> {
    let c_a = canonical_complement(a, engine.strategy())?;
    let co = c_a.contains(a_prime)?;
    let radical = pairing.psi_k(engine, &cyclic_span(a_prime));
    // psi had to be defined at ⟨a'⟩ for co1 to mean anything
    let psi_aprime = engine.psi_cyclic(a_prime)?;
    let _ = psi_aprime;
    let phi_a = artin.apply(a);
    let co1 = radical
        .generators()
        .iter()
        .all(|b| pairing.pair(&phi_a, b).expect("matching types") == 0);
    Ok(Orthogonality { co, co1, agree: co == co1 })
}

/// Per-pair record of the orthogonality property audit.
#[derive(Clone, Debug)]
pub struct OrthPair {
    pub a: GroupElement,
    pub a_prime: GroupElement,
    pub orth: Orthogonality,
    /// symmetry: the relation evaluated with the arguments swapped
    pub orth_swapped: Orthogonality,
    /// equivalent property: `L_a ⊆ L'_{a'}`
    pub field_containment: bool,
    /// `a ⊥ a' ⇒ a' ∉ ⟨a⟩`
    pub separation_ok: bool,
}

/// Exhaustive orthogonality sweep over ordered pairs of maximal-order
/// elements spanning distinct cyclic subgroups.
pub fn orthogonality_properties(
    pairing: &KummerPairing,
    engine: &PsiEngine<'_>,
    artin: &ArtinIso,
    ty: &PGroupType,
) -> Result<Vec<OrthPair>, PsiError> {
    let maximal: Vec<GroupElement> = ty
        .elements()
        .into_iter()
        .filter(|g| elem_order(g) == ty.exponent() && !g.is_zero())
        .collect();
    let mut out = Vec::new();
    for a in &maximal {
        let span_a = cyclic_span(a);
        let l_a = engine.psi_max(a)?.field;
        for b in &maximal {
            if cyclic_span(b) == span_a {
                continue;
            }
            let orth = is_orthogonal(pairing, engine, artin, a, b)?;
            let orth_swapped = is_orthogonal(pairing, engine, artin, b, a)?;
            let l_b_split = engine.splitting_field(b)?;
            let field_containment = l_a.is_subfield_of(&l_b_split)?;
            let separation_ok = !orth.co || !span_a.contains(b)?;
            out.push(OrthPair {
                a: a.clone(),
                a_prime: b.clone(),
                orth,
                orth_swapped,
                field_containment,
                separation_ok,
            });
        }
    }
    Ok(out)
}

/// Result of the greedy construction of a maximal mutually orthogonal set.
#[derive(Clone, Debug)]
pub struct OrthogonalSet {
    pub members: Vec<GroupElement>,
    /// all members are p-indivisible and together generate the group
    pub generates: bool,
    /// pairwise `co` where the complement was defined (row-major upper
    /// triangle, `None` when the relation was undefined for the pair)
    pub pairwise_co: Vec<Option<bool>>,
    /// pairwise `co1` where `psi` was defined at the second argument
    pub pairwise_co1: Vec<Option<bool>>,
}

/// Greedy maximal orthogonal set: repeatedly take the lexicographically
/// first element of maximal order inside the subgroup fixing the
/// compositum so far, then descend into its complement. Always yields
/// `p_rank(A)` members.
pub fn maximal_orthogonal_set(
    pairing: &KummerPairing,
    engine: &PsiEngine<'_>,
    artin: &ArtinIso,
    ty: &PGroupType,
) -> OrthogonalSet {
    let mut members: Vec<GroupElement> = Vec::new();
    let mut current = ty.whole();
    while !current.is_trivial() {
        let exponent = current
            .invariant_exponents()
            .first()
            .map(|&e| ty.p().pow(e))
            .unwrap_or(1);
        let a = current
            .elements()
            .into_iter()
            .find(|g| elem_order(g) == exponent)
            .expect("nontrivial subgroup has an element of maximal order");
        current = if exponent == ty.exponent() {
            // the lemma's own step: descend into the canonical complement
            let c = canonical_complement(&a, Strategy::AdaptedBasis)
                .expect("ambient-maximal element");
            intersect(&current, &c).expect("same owner")
        } else {
            complement_within(&current, &a)
        };
        members.push(a);
    }
    let generates = members.iter().all(|m| p_height(m) == Height::Finite(0))
        && span(ty, &members).map(|s| s.is_whole()).unwrap_or(false);
    let mut pairwise_co = Vec::new();
    let mut pairwise_co1 = Vec::new();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            let co = canonical_complement(&members[i], engine.strategy())
                .ok()
                .map(|c| c.contains(&members[j]).expect("same owner"));
            let co1 = engine.psi_cyclic(&members[j]).ok().map(|_| {
                let radical = pairing.psi_k(engine, &cyclic_span(&members[j]));
                let phi = artin.apply(&members[i]);
                radical
                    .generators()
                    .iter()
                    .all(|b| pairing.pair(&phi, b).expect("matching types") == 0)
            });
            pairwise_co.push(co);
            pairwise_co1.push(co1);
        }
    }
    OrthogonalSet { members, generates, pairwise_co, pairwise_co1 }
}

/// The generator-set counterexample on `(Z/p)^2`: with `a ⊥ a'` and
/// `b = a + a'`, the pair `{a, b}` is a minimal generating set although
/// `a` is not orthogonal to `b`.
#[derive(Clone, Debug)]
pub struct GensetCounterexample {
    pub group: PGroupType,
    pub a: GroupElement,
    pub a_prime: GroupElement,
    pub b: GroupElement,
    pub a_orth_aprime: Orthogonality,
    pub minimal_genset: bool,
    pub a_orth_b: Orthogonality,
}

/// Reproduces the counterexample for a given prime (adapted-basis
/// complements, standard pairing).
pub fn genset_counterexample(p: u64) -> Result<GensetCounterexample, PsiError> {
    let ty = PGroupType::new(p, &[1, 1])?;
    let artin = ArtinIso::identity(&ty);
    let engine = PsiEngine::new(&artin, Strategy::AdaptedBasis);
    let pairing = KummerPairing::standard(&ty);
    let a = ty.element(&[1, 0])?;
    let a_prime = ty.element(&[0, 1])?;
    let b = a.add(&a_prime);
    let a_orth_aprime = is_orthogonal(&pairing, &engine, &artin, &a, &a_prime)?;
    let a_orth_b = is_orthogonal(&pairing, &engine, &artin, &a, &b)?;
    let genset = span(&ty, &[a.clone(), b.clone()])?.is_whole();
    let minimal = genset && ty.rank() == 2; // two generators meet the rank bound
    Ok(GensetCounterexample {
        group: ty,
        a,
        a_prime,
        b,
        a_orth_aprime,
        minimal_genset: minimal,
        a_orth_b,
    })
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
    fn standard_pairing_values() {
        let t = ty(3, &[1, 1]);
        let p = KummerPairing::standard(&t);
        assert_eq!(p.pair(&el(&t, &[1, 0]), &el(&t, &[1, 0])).unwrap(), 1);
        assert_eq!(p.pair(&el(&t, &[1, 0]), &el(&t, &[0, 1])).unwrap(), 0);

        let t = ty(3, &[2, 1]);
        let p = KummerPairing::standard(&t);
        assert_eq!(p.pair(&el(&t, &[0, 1]), &el(&t, &[0, 1])).unwrap(), 3);
        assert_eq!(p.pair(&t.zero(), &el(&t, &[1, 1])).unwrap(), 0);
    }

    #[test]
    fn bilinearity_on_catalog_types() {
        for spec in ["2:2,1", "3:1,1", "3:2,1", "5:1,1"] {
            let t = PGroupType::from_spec(spec).unwrap();
            let p = KummerPairing::standard(&t);
            let elems = t.elements();
            for g1 in elems.iter().take(6) {
                for g2 in elems.iter().take(6) {
                    for b in elems.iter().take(6) {
                        let lhs = p.pair(&g1.add(g2), b).unwrap();
                        let rhs =
                            (p.pair(g1, b).unwrap() + p.pair(g2, b).unwrap()) % p.modulus();
                        assert_eq!(lhs, rhs, "{spec}");
                    }
                }
            }
        }
    }

    #[test]
    fn perfectness_examples() {
        let t = ty(3, &[1, 1]);
        assert!(KummerPairing::standard(&t).is_perfect());
        assert_eq!(
            KummerPairing::from_matrix(&t, vec![0, 0, 0, 0]),
            Err(KummerError::NotPerfect)
        );
        // degenerate diagonal: left kernel contains (1,0)
        assert_eq!(
            KummerPairing::from_matrix(&t, vec![0, 0, 0, 1]),
            Err(KummerError::NotPerfect)
        );
        for seed in 0..5 {
            assert!(KummerPairing::random(&t, seed).is_perfect());
            assert!(KummerPairing::random(&ty(2, &[2, 1]), seed).is_perfect());
        }
    }

    #[test]
    fn annihilator_examples() {
        let t = ty(3, &[1, 1]);
        let p = KummerPairing::standard(&t);
        assert!(p.annihilator(&t.whole(), Side::Right).is_trivial());
        assert!(p.annihilator(&t.trivial_subgroup(), Side::Right).is_whole());
        assert_eq!(
            p.annihilator(&cyclic_span(&el(&t, &[1, 0])), Side::Right),
            cyclic_span(&el(&t, &[0, 1]))
        );

        let t = ty(3, &[2, 1]);
        let p = KummerPairing::standard(&t);
        let ann = p.annihilator(&cyclic_span(&el(&t, &[3, 0])), Side::Right);
        let expect = span(&t, &[el(&t, &[3, 0]), el(&t, &[0, 1])]).unwrap();
        assert_eq!(ann, expect);
    }

    #[test]
    fn annihilator_size_and_duality() {
        for spec in ["2:2,1", "3:2,1", "2:1,1,1", "5:1,1"] {
            let t = PGroupType::from_spec(spec).unwrap();
            let p = KummerPairing::standard(&t);
            for s in enumerate_subgroups(&t).unwrap() {
                let ann = p.annihilator(&s, Side::Right);
                assert_eq!(s.order() * ann.order(), t.order(), "{spec}");
                let back = p.annihilator(&ann, Side::Left);
                assert_eq!(back, s, "double annihilator in {spec}");
            }
        }
    }

    #[test]
    fn radical_of_field_examples() {
        let t = ty(3, &[1, 1]);
        let p = KummerPairing::standard(&t);
        assert!(p.radical_of_field(&FieldNode::fixed_field(t.whole())).is_trivial());
        assert!(p.radical_of_field(&FieldNode::fixed_field(t.trivial_subgroup())).is_whole());
        let l = FieldNode::fixed_field(cyclic_span(&el(&t, &[0, 1])));
        assert_eq!(p.radical_of_field(&l), cyclic_span(&el(&t, &[1, 0])));
        assert_eq!(p.radical_of_field(&l).order(), l.degree());
    }

    #[test]
    fn psi_k_composes_radical_with_psi() {
        let t = ty(3, &[1, 1]);
        let artin = ArtinIso::identity(&t);
        let engine = PsiEngine::new(&artin, Strategy::AdaptedBasis);
        let pairing = KummerPairing::standard(&t);
        let s = cyclic_span(&el(&t, &[1, 0]));
        // psi_k(S) is the annihilator of the fixer of psi(S), here the
        // complement c((1,0)) = <(0,1)>
        let got = pairing.psi_k(&engine, &s);
        let expect = pairing.annihilator(
            &crate::psi::canonical_complement(&el(&t, &[1, 0]), Strategy::AdaptedBasis).unwrap(),
            Side::Right,
        );
        assert_eq!(got, expect);
        assert_eq!(got, cyclic_span(&el(&t, &[1, 0])));
        // and its size is the degree of the field
        assert_eq!(got.order(), engine.psi_subgroup(&s).field.degree());
    }

    #[test]
    fn orthogonality_examples() {
        let t = ty(3, &[1, 1]);
        let artin = ArtinIso::identity(&t);
        let engine = PsiEngine::new(&artin, Strategy::AdaptedBasis);
        let pairing = KummerPairing::standard(&t);
        let o =
            is_orthogonal(&pairing, &engine, &artin, &el(&t, &[1, 0]), &el(&t, &[0, 1])).unwrap();
        assert!(o.co && o.co1 && o.agree);
        let o =
            is_orthogonal(&pairing, &engine, &artin, &el(&t, &[1, 0]), &el(&t, &[1, 1])).unwrap();
        assert!(!o.co);
        // never orthogonal to itself
        let o =
            is_orthogonal(&pairing, &engine, &artin, &el(&t, &[1, 0]), &el(&t, &[1, 0])).unwrap();
        assert!(!o.co);
    }

    #[test]
    fn adapted_rule_breaks_symmetry_on_rank_two() {
        // the complement-membership relation is not symmetric for the
        // adapted rule: witness ((0,1),(2,1)) on (Z/3)^2
        let t = ty(3, &[1, 1]);
        let artin = ArtinIso::identity(&t);
        let engine = PsiEngine::new(&artin, Strategy::AdaptedBasis);
        let pairing = KummerPairing::standard(&t);
        let a = el(&t, &[0, 1]);
        let b = el(&t, &[2, 1]);
        let ab = is_orthogonal(&pairing, &engine, &artin, &a, &b).unwrap();
        let ba = is_orthogonal(&pairing, &engine, &artin, &b, &a).unwrap();
        assert!(!ab.co && ba.co, "expected the documented asymmetry");
        // while the pairing-annihilator rule is symmetric everywhere here
        let engine = PsiEngine::new(&artin, Strategy::PairingAnnihilator);
        for pair in orthogonality_properties(&pairing, &engine, &artin, &t).unwrap() {
            assert_eq!(pair.orth.co, pair.orth_swapped.co);
            assert!(pair.orth.agree);
            assert!(pair.separation_ok);
        }
    }

    #[test]
    fn maximal_orthogonal_set_sizes() {
        let artin_cases = [
            ("3:2", 1),
            ("3:1,1", 2),
            ("3:3,1", 2),
            ("2:2,1", 2),
            ("2:1,1,1", 3),
            ("3:3,1,1", 3),
            ("5:1,1", 2),
        ];
        for (spec, rank) in artin_cases {
            let t = PGroupType::from_spec(spec).unwrap();
            let artin = ArtinIso::identity(&t);
            let engine = PsiEngine::new(&artin, Strategy::AdaptedBasis);
            let pairing = KummerPairing::standard(&t);
            let set = maximal_orthogonal_set(&pairing, &engine, &artin, &t);
            assert_eq!(set.members.len(), rank, "{spec}");
            assert!(set.generates, "{spec}");
            for co in &set.pairwise_co {
                assert_ne!(*co, Some(false), "{spec}: defined co must hold");
            }
        }
    }

    #[test]
    fn orthogonal_set_on_mixed_group_matches_expectation() {
        let t = ty(3, &[3, 1]);
        let artin = ArtinIso::identity(&t);
        let engine = PsiEngine::new(&artin, Strategy::AdaptedBasis);
        let pairing = KummerPairing::standard(&t);
        let set = maximal_orthogonal_set(&pairing, &engine, &artin, &t);
        assert_eq!(set.members, vec![el(&t, &[1, 0]), el(&t, &[0, 1])]);
        assert!(set.generates);
    }

    #[test]
    fn genset_counterexample_reproduces() {
        for p in [2u64, 3, 5] {
            let c = genset_counterexample(p).unwrap();
            assert!(c.a_orth_aprime.co, "p={p}: a ⊥ a' must hold");
            assert!(c.minimal_genset, "p={p}");
            assert!(!c.a_orth_b.co1, "p={p}: a ⊥ b must fail");
            assert_eq!(c.b, el(&c.group, &[1, 1]));
        }
    }
}

#[cfg(test)]
mod prop_tests {
    use super::*;
    use proptest::prelude::*;

    const POOL: [&str; 5] = ["2:2,1", "3:1,1", "3:2,1", "2:1,1,1", "5:1,1"];

    proptest! {
        #[test]
        fn random_pairings_are_bilinear_and_perfect(
            idx in 0usize..POOL.len(),
            seed in 0u64..1000,
            ca in proptest::collection::vec(0u64..1000, 4),
            cb in proptest::collection::vec(0u64..1000, 4),
            cc in proptest::collection::vec(0u64..1000, 4),
        ) {
            let t = PGroupType::from_spec(POOL[idx]).unwrap();
            let pairing = KummerPairing::random(&t, seed);
            prop_assert!(pairing.is_perfect());
            let a = t.element(&ca[..t.rank()]).unwrap();
            let b = t.element(&cb[..t.rank()]).unwrap();
            let c = t.element(&cc[..t.rank()]).unwrap();
            let lhs = pairing.pair(&a.add(&b), &c).unwrap();
            let rhs = (pairing.pair(&a, &c).unwrap() + pairing.pair(&b, &c).unwrap())
                % pairing.modulus();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(pairing.pair(&t.zero(), &c).unwrap(), 0);
            prop_assert_eq!(pairing.pair(&a, &t.zero()).unwrap(), 0);
        }

        #[test]
        fn annihilator_duality_under_random_pairings(
            idx in 0usize..POOL.len(),
            seed in 0u64..1000,
            coords in proptest::collection::vec(0u64..1000, 4),
        ) {
            let t = PGroupType::from_spec(POOL[idx]).unwrap();
            let pairing = KummerPairing::random(&t, seed);
            let s = cyclic_span(&t.element(&coords[..t.rank()]).unwrap());
            let ann = pairing.annihilator(&s, Side::Right);
            prop_assert_eq!(s.order() * ann.order(), t.order());
            prop_assert_eq!(pairing.annihilator(&ann, Side::Left), s);
        }
    }
}
