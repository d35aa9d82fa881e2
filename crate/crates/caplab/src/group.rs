//! Finite abelian p-groups in invariant-factor coordinates.
//!
//! A group `A = Z/p^{e1} x ... x Z/p^{ek}` with `e1 >= e2 >= ... >= ek >= 1`
//! is described by a [`PGroupType`]. Subgroups are represented canonically:
//! a subgroup of `A` corresponds to an integer lattice `L` with
//! `diag(p^{e_i})·Z^k ⊆ L ⊆ Z^k`, and we store the Hermite normal form of
//! `L`. Two [`Subgroup`] values denote the same subgroup exactly when their
//! stored matrices are identical, so equality is cheap and every report is
//! deterministic.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{
    hnf_in_place, left_kernel, smith_with_transforms, solve_upper_triangular, Mat,
};

/// Default cap on `order(A)` for exhaustive subgroup enumeration.
pub const DEFAULT_ENUM_BOUND: u64 = 729;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("exponent list {0:?} is not non-increasing (or contains 0)")]
    NonMonotoneExponents(Vec<u32>),
    #[error("group order would overflow 64 bits")]
    OrderOverflow,
    #[error("elements belong to different group types")]
    OwnerMismatch,
    #[error("coordinate count {got} does not match rank {want}")]
    BadCoordinateCount { got: usize, want: usize },
    #[error("group order {order} exceeds the enumeration bound {bound}")]
    BoundExceeded { order: u64, bound: u64 },
    #[error("malformed group spec `{0}` (expected `p:e1,e2,...`)")]
    BadSpec(String),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The type of a finite abelian p-group in invariant-factor form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PGroupType {
    p: u64,
    exponents: Arc<[u32]>,
}

impl PGroupType {
    /// Builds a type from a prime and a non-increasing exponent list.
    /// An empty list is the trivial group.
    pub fn new(p: u64, exponents: &[u32]) -> Result<Self, GroupError> {
        if !is_prime(p) {
            return Err(GroupError::NotPrime(p));
        }
        if exponents.windows(2).any(|w| w[0] < w[1]) || exponents.iter().any(|&e| e == 0) {
            return Err(GroupError::NonMonotoneExponents(exponents.to_vec()));
        }
        let ty = PGroupType { p, exponents: exponents.into() };
        let bits: u64 = exponents.iter().map(|&e| u64::from(e)).sum::<u64>()
            * (64 - p.leading_zeros()) as u64;
        if bits >= 63 || ty.checked_order().is_none() {
            return Err(GroupError::OrderOverflow);
        }
        Ok(ty)
    }

    /// The trivial group for a given prime.
    pub fn trivial(p: u64) -> Result<Self, GroupError> {
        Self::new(p, &[])
    }

    /// Parses the catalog form `p:e1,e2,...` (e.g. `3:2,1` for Z/9 x Z/3).
    pub fn from_spec(spec: &str) -> Result<Self, GroupError> {
        let bad = || GroupError::BadSpec(spec.to_string());
        let (p_str, e_str) = spec.split_once(':').ok_or_else(bad)?;
        let p: u64 = p_str.trim().parse().map_err(|_| bad())?;
        let e_str = e_str.trim();
        let exps: Vec<u32> = if e_str.is_empty() {
            Vec::new()
        } else {
            e_str
                .split(',')
                .map(|t| t.trim().parse().map_err(|_| bad()))
                .collect::<Result<_, _>>()?
        };
        Self::new(p, &exps)
    }

    /// Renders the catalog form `p:e1,e2,...`.
    pub fn spec_string(&self) -> String {
        let exps: Vec<String> = self.exponents.iter().map(u32::to_string).collect();
        format!("{}:{}", self.p, exps.join(","))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// Number of invariant factors; the p-rank of the group.
    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    fn checked_order(&self) -> Option<u64> {
        let mut o: u64 = 1;
        for &e in self.exponents.iter() {
            for _ in 0..e {
                o = o.checked_mul(self.p)?;
            }
        }
        Some(o)
    }

    pub fn order(&self) -> u64 {
        self.checked_order().expect("validated at construction")
    }

    /// `p^{e1}`, the exponent of the group (1 for the trivial group).
    pub fn exponent(&self) -> u64 {
        self.exponents.first().map_or(1, |&e| self.p.pow(e))
    }

    /// `m` with `p^m` the exponent of the group.
    pub fn exponent_log(&self) -> u32 {
        self.exponents.first().copied().unwrap_or(0)
    }

    /// Modulus `p^{e_i}` of the i-th coordinate.
    pub fn modulus(&self, i: usize) -> u64 {
        self.p.pow(self.exponents[i])
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement { ty: self.clone(), coords: vec![0; self.rank()] }
    }

    /// Builds an element, reducing each coordinate modulo `p^{e_i}`.
    pub fn element(&self, coords: &[u64]) -> Result<GroupElement, GroupError> {
        if coords.len() != self.rank() {
            return Err(GroupError::BadCoordinateCount { got: coords.len(), want: self.rank() });
        }
        let coords = coords.iter().enumerate().map(|(i, &c)| c % self.modulus(i)).collect();
        Ok(GroupElement { ty: self.clone(), coords })
    }

    /// All elements in lexicographic coordinate order.
    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out = Vec::with_capacity(self.order() as usize);
        let mut coords = vec![0u64; self.rank()];
        loop {
            out.push(GroupElement { ty: self.clone(), coords: coords.clone() });
            // odometer, last coordinate fastest: yields lex order
            let mut i = self.rank();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                coords[i] += 1;
                if coords[i] < self.modulus(i) {
                    break;
                }
                coords[i] = 0;
            }
        }
    }

    /// The whole group as a subgroup.
    pub fn whole(&self) -> Subgroup {
        let k = self.rank();
        let mut flat = vec![0u64; k * k];
        for i in 0..k {
            flat[i * k + i] = 1;
        }
        Subgroup::from_hnf(self.clone(), flat)
    }

    /// The trivial subgroup.
    pub fn trivial_subgroup(&self) -> Subgroup {
        let k = self.rank();
        let mut flat = vec![0u64; k * k];
        for i in 0..k {
            flat[i * k + i] = self.modulus(i);
        }
        Subgroup::from_hnf(self.clone(), flat)
    }

    /// Dense index of an element (mixed radix), for bitset bookkeeping.
    pub fn element_index(&self, g: &GroupElement) -> usize {
        debug_assert_eq!(g.ty, *self);
        let mut idx = 0usize;
        for i in 0..self.rank() {
            idx = idx * self.modulus(i) as usize + g.coords[i] as usize;
        }
        idx
    }
}

impl fmt::Debug for PGroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PGroupType({})", self.spec_string())
    }
}

impl fmt::Display for PGroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rank() == 0 {
            return write!(f, "1");
        }
        let parts: Vec<String> =
            self.exponents.iter().map(|&e| format!("Z/{}", self.p.pow(e))).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Parses a multi-line group catalog: one `p:e1,e2,...` spec per line,
/// blank lines and `#` comments ignored.
pub fn parse_catalog(text: &str) -> Result<Vec<PGroupType>, GroupError> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(PGroupType::from_spec)
        .collect()
}

/// Height of an element: the largest `t` such that `p^t · y = g` is solvable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Height {
    Finite(u32),
    /// The zero element is divisible by every power of p.
    Infinite,
}

/// An element of a finite abelian p-group, coordinates stored reduced.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    ty: PGroupType,
    coords: Vec<u64>,
}

impl GroupElement {
    pub fn group(&self) -> &PGroupType {
        &self.ty
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &GroupElement) -> GroupElement {
        assert_eq!(self.ty, other.ty, "owner mismatch");
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .enumerate()
            .map(|(i, (&a, &b))| (a + b) % self.ty.modulus(i))
            .collect();
        GroupElement { ty: self.ty.clone(), coords }
    }

    pub fn neg(&self) -> GroupElement {
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(i, &a)| if a == 0 { 0 } else { self.ty.modulus(i) - a })
            .collect();
        GroupElement { ty: self.ty.clone(), coords }
    }

    pub fn scale(&self, n: u64) -> GroupElement {
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let m = self.ty.modulus(i);
                ((n % m) as u128 * a as u128 % m as u128) as u64
            })
            .collect();
        GroupElement { ty: self.ty.clone(), coords }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Least p-power `q` with `q · g = 0`.
pub fn elem_order(g: &GroupElement) -> u64 {
    let ty = g.group();
    let mut ord = 1u64;
    for (i, &c) in g.coords.iter().enumerate() {
        let m = ty.modulus(i);
        let coord_ord = m / gcd(c, m);
        ord = ord.max(coord_ord); // lcm of p-powers is the max
    }
    ord
}

/// Largest `t` with `p^t · y = g` solvable; `Infinite` for the zero element.
pub fn p_height(g: &GroupElement) -> Height {
    if g.is_zero() {
        return Height::Infinite;
    }
    let p = g.group().p();
    let mut h = u32::MAX;
    for &c in &g.coords {
        if c != 0 {
            let mut v = 0;
            let mut c = c;
            while c % p == 0 {
                c /= p;
                v += 1;
            }
            h = h.min(v);
        }
    }
    Height::Finite(h)
}

/// Number of invariant factors of the group type.
pub fn p_rank(ty: &PGroupType) -> usize {
    ty.rank()
}

fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// A subgroup in canonical form.
///
/// `hnf` is the row-major `k x k` Hermite normal form of the lattice
/// `L ⊆ Z^k` with `diag(p^{e_i}) ⊆ L`; the subgroup is `L / diag(p^{e_i})`.
/// The representation is unique, so `==` decides subgroup equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    ty: PGroupType,
    hnf: Vec<u64>,
    order: u64,
}

impl Subgroup {
    pub(crate) fn from_hnf(ty: PGroupType, hnf: Vec<u64>) -> Subgroup {
        let k = ty.rank();
        debug_assert_eq!(hnf.len(), k * k);
        let mut order = 1u64;
        for i in 0..k {
            order *= ty.modulus(i) / hnf[i * k + i];
        }
        Subgroup { ty, hnf, order }
    }

    pub fn group(&self) -> &PGroupType {
        &self.ty
    }

    /// The canonical basis matrix, row-major `k x k`.
    pub fn hnf(&self) -> &[u64] {
        &self.hnf
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Index `[A : S]`.
    pub fn index(&self) -> u64 {
        self.ty.order() / self.order
    }

    pub fn is_whole(&self) -> bool {
        self.order == self.ty.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    fn lattice_mat(&self) -> Mat {
        let k = self.ty.rank();
        Mat {
            rows: k,
            cols: k,
            data: self.hnf.iter().map(|&v| v as i128).collect(),
        }
    }

    /// Reduced, nonzero generators (HNF rows taken mod the coordinate
    /// moduli, zero rows dropped). These generate the subgroup.
    pub fn generators(&self) -> Vec<GroupElement> {
        let k = self.ty.rank();
        let mut out = Vec::new();
        for i in 0..k {
            let row: Vec<u64> = (0..k)
                .map(|j| self.hnf[i * k + j] % self.ty.modulus(j))
                .collect();
            if row.iter().any(|&v| v != 0) {
                out.push(GroupElement { ty: self.ty.clone(), coords: row });
            }
        }
        out
    }

    /// All elements, sorted lexicographically by coordinates.
    pub fn elements(&self) -> Vec<GroupElement> {
        let k = self.ty.rank();
        let counts: Vec<u64> = (0..k).map(|i| self.ty.modulus(i) / self.hnf[i * k + i]).collect();
        let mut out = Vec::with_capacity(self.order as usize);
        let mut c = vec![0u64; k];
        'outer: loop {
            let mut coords = vec![0u64; k];
            for i in 0..k {
                if c[i] != 0 {
                    for j in 0..k {
                        let m = self.ty.modulus(j);
                        coords[j] = (coords[j] + c[i] % m * (self.hnf[i * k + j] % m)) % m;
                    }
                }
            }
            out.push(GroupElement { ty: self.ty.clone(), coords });
            let mut i = k;
            loop {
                if i == 0 {
                    break 'outer;
                }
                i -= 1;
                c[i] += 1;
                if c[i] < counts[i] {
                    break;
                }
                c[i] = 0;
            }
        }
        out.sort_unstable();
        out
    }

    /// Membership test via forward substitution on the canonical form.
    pub fn contains(&self, g: &GroupElement) -> Result<bool, GroupError> {
        if g.ty != self.ty {
            return Err(GroupError::OwnerMismatch);
        }
        let v: Vec<i128> = g.coords.iter().map(|&c| c as i128).collect();
        Ok(solve_upper_triangular(&self.lattice_mat(), &v).is_some())
    }

    /// `T ⊆ S` test.
    pub fn contains_subgroup(&self, other: &Subgroup) -> Result<bool, GroupError> {
        if other.ty != self.ty {
            return Err(GroupError::OwnerMismatch);
        }
        let k = self.ty.rank();
        let mine = self.lattice_mat();
        for i in 0..k {
            let row: Vec<i128> = (0..k).map(|j| other.hnf[i * k + j] as i128).collect();
            if solve_upper_triangular(&mine, &row).is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Invariant-factor type of the quotient `A / S`.
    pub fn quotient_invariants(&self) -> PGroupType {
        let (diag, _, _) = smith_with_transforms(&self.lattice_mat());
        let p = self.ty.p();
        let mut exps: Vec<u32> = diag
            .iter()
            .filter(|&&d| d > 1)
            .map(|&d| {
                let mut d = d as u64;
                let mut e = 0;
                while d % p == 0 {
                    d /= p;
                    e += 1;
                }
                e
            })
            .collect();
        exps.sort_unstable_by(|a, b| b.cmp(a));
        PGroupType::new(p, &exps).expect("quotient of valid type is valid")
    }

    /// Invariant exponents of the subgroup itself, non-increasing.
    pub fn invariant_exponents(&self) -> Vec<u32> {
        self.decomposition().iter().map(|(_, ord)| log_p(self.ty.p(), *ord)).collect()
    }

    /// True when the subgroup is cyclic (possibly trivial).
    pub fn is_cyclic(&self) -> bool {
        self.invariant_exponents().len() <= 1
    }

    /// An internal direct-sum basis: elements `g_i` with
    /// `S = ⟨g_1⟩ ⊕ ... ⊕ ⟨g_r⟩` and non-increasing orders.
    pub fn decomposition(&self) -> Vec<(GroupElement, u64)> {
        let k = self.ty.rank();
        if k == 0 {
            return Vec::new();
        }
        let b = self.lattice_mat();
        // relation matrix: each diagonal generator p^{e_i}·e_i expressed in
        // the basis rows of the lattice
        let mut rel = Mat::zero(k, k);
        for i in 0..k {
            let mut target = vec![0i128; k];
            target[i] = self.ty.modulus(i) as i128;
            let coeffs = solve_upper_triangular(&b, &target)
                .expect("diagonal relations lie in every stored lattice");
            for j in 0..k {
                rel[(i, j)] = coeffs[j];
            }
        }
        let (diag, _, v) = smith_with_transforms(&rel);
        let v_inv = invert_unimodular(&v);
        // generator of the i-th cyclic factor: (e_i · V^{-1}) · B
        let mut out = Vec::new();
        for i in 0..k {
            let s = diag[i].unsigned_abs() as u64;
            if s <= 1 {
                continue;
            }
            let mut coords = vec![0u64; k];
            for j in 0..k {
                let mut acc: i128 = 0;
                for t in 0..k {
                    acc += v_inv[(i, t)] * b[(t, j)];
                }
                let m = self.ty.modulus(j) as i128;
                coords[j] = acc.rem_euclid(m) as u64;
            }
            out.push((GroupElement { ty: self.ty.clone(), coords }, s));
        }
        out.sort_by(|a, b| b.1.cmp(&a.1));
        out
    }
}

fn log_p(p: u64, mut q: u64) -> u32 {
    let mut e = 0;
    while q > 1 {
        q /= p;
        e += 1;
    }
    e
}

fn invert_unimodular(v: &Mat) -> Mat {
    let mut work = v.clone();
    let mut inv = Mat::identity(v.rows);
    hnf_in_place(&mut work, Some(&mut inv));
    debug_assert_eq!(work, Mat::identity(v.rows), "matrix is not unimodular");
    inv
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (i, g) in self.generators().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        fmt::Debug::fmt(self, f)
    }
}

/// Canonical subgroup generated by a set of elements.
pub fn span(ty: &PGroupType, gens: &[GroupElement]) -> Result<Subgroup, GroupError> {
    let k = ty.rank();
    for g in gens {
        if g.ty != *ty {
            return Err(GroupError::OwnerMismatch);
        }
    }
    let mut rows: Vec<Vec<i128>> = gens
        .iter()
        .map(|g| g.coords.iter().map(|&c| c as i128).collect())
        .collect();
    for i in 0..k {
        let mut d = vec![0i128; k];
        d[i] = ty.modulus(i) as i128;
        rows.push(d);
    }
    if k == 0 {
        return Ok(ty.trivial_subgroup());
    }
    let mut m = Mat::from_rows(&rows);
    hnf_in_place(&mut m, None);
    let flat: Vec<u64> = (0..k * k).map(|i| m.data[i] as u64).collect();
    Ok(Subgroup::from_hnf(ty.clone(), flat))
}

/// Cyclic subgroup generated by one element.
pub fn cyclic_span(g: &GroupElement) -> Subgroup {
    span(g.group(), std::slice::from_ref(g)).expect("same owner")
}

/// Membership of `g` in `S`.
pub fn member(g: &GroupElement, s: &Subgroup) -> Result<bool, GroupError> {
    s.contains(g)
}

/// Lattice meet `S ∩ T`.
pub fn intersect(s: &Subgroup, t: &Subgroup) -> Result<Subgroup, GroupError> {
    if s.ty != t.ty {
        return Err(GroupError::OwnerMismatch);
    }
    let k = s.ty.rank();
    if k == 0 {
        return Ok(s.clone());
    }
    // kernel of (u, v) -> u·B_S - v·B_T; the intersection is { u·B_S }
    let mut rows: Vec<Vec<i128>> = Vec::with_capacity(2 * k);
    for i in 0..k {
        rows.push((0..k).map(|j| s.hnf[i * k + j] as i128).collect());
    }
    for i in 0..k {
        rows.push((0..k).map(|j| -(t.hnf[i * k + j] as i128)).collect());
    }
    let stacked = Mat::from_rows(&rows);
    let kernel = left_kernel(&stacked);
    let mut basis: Vec<Vec<i128>> = kernel
        .iter()
        .map(|uv| {
            (0..k)
                .map(|j| {
                    let mut acc = 0i128;
                    for (i, &c) in uv[..k].iter().enumerate() {
                        acc += c * s.hnf[i * k + j] as i128;
                    }
                    acc
                })
                .collect()
        })
        .collect();
    for i in 0..k {
        let mut d = vec![0i128; k];
        d[i] = s.ty.modulus(i) as i128;
        basis.push(d);
    }
    let mut m = Mat::from_rows(&basis);
    hnf_in_place(&mut m, None);
    let flat: Vec<u64> = (0..k * k).map(|i| m.data[i] as u64).collect();
    Ok(Subgroup::from_hnf(s.ty.clone(), flat))
}

/// Lattice join `S · T` (the subgroup generated by the union).
pub fn join(s: &Subgroup, t: &Subgroup) -> Result<Subgroup, GroupError> {
    if s.ty != t.ty {
        return Err(GroupError::OwnerMismatch);
    }
    let k = s.ty.rank();
    if k == 0 {
        return Ok(s.clone());
    }
    let mut rows: Vec<Vec<i128>> = Vec::with_capacity(2 * k);
    for i in 0..k {
        rows.push((0..k).map(|j| s.hnf[i * k + j] as i128).collect());
    }
    for i in 0..k {
        rows.push((0..k).map(|j| t.hnf[i * k + j] as i128).collect());
    }
    let mut m = Mat::from_rows(&rows);
    hnf_in_place(&mut m, None);
    let flat: Vec<u64> = (0..k * k).map(|i| m.data[i] as u64).collect();
    Ok(Subgroup::from_hnf(s.ty.clone(), flat))
}

/// Solutions `y` of `p^h · y = x`, in lexicographic order.
pub fn division_solutions(x: &GroupElement, h: u32) -> Vec<GroupElement> {
    let ty = x.group().clone();
    let p = ty.p();
    let q = p.pow(h);
    let k = ty.rank();
    // per coordinate: q·y ≡ x (mod p^e) has p^min(h,e) solutions when
    // p^min(h,e) divides x, spaced p^e / p^min(h,e) apart
    let mut per_coord: Vec<Vec<u64>> = Vec::with_capacity(k);
    for i in 0..k {
        let m = ty.modulus(i);
        let g = gcd(q, m);
        if x.coords[i] % g != 0 {
            return Vec::new();
        }
        let step = m / g;
        let qq = q / g;
        let target = x.coords[i] / g;
        // solve (q/g)·y ≡ target (mod m/g); q/g is a unit mod m/g
        let y0 = if step == 1 { 0 } else { target % step * mod_inverse(qq % step, step) % step };
        per_coord.push((0..g).map(|t| y0 + t * step).collect());
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    'outer: loop {
        let coords: Vec<u64> = (0..k).map(|i| per_coord[i][idx[i]]).collect();
        out.push(GroupElement { ty: ty.clone(), coords });
        let mut i = k;
        loop {
            if i == 0 {
                break 'outer;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < per_coord[i].len() {
                break;
            }
            idx[i] = 0;
        }
    }
    out.sort_unstable();
    out
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    // extended euclid; a must be a unit mod m
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "not a unit");
    old_s.rem_euclid(m as i128) as u64
}

// ---------------------------------------------------------------------------
// exhaustive subgroup enumeration
// ---------------------------------------------------------------------------

/// One level of the suffix recursion: all subgroup HNFs of the group with
/// exponents `e[j..]`, stored as flat `dim x dim` matrices.
struct Level {
    dim: usize,
    mats: Vec<u32>,
    count: usize,
}

impl Level {
    fn empty() -> Level {
        Level { dim: 0, mats: Vec::new(), count: 1 }
    }

    fn mat(&self, idx: usize) -> &[u32] {
        let sz = self.dim * self.dim;
        &self.mats[idx * sz..(idx + 1) * sz]
    }
}

/// Is `v` in the lattice spanned by an upper-triangular u32 matrix?
fn in_lattice_u32(t: &[u32], dim: usize, v: &[i64]) -> bool {
    let mut rem: Vec<i64> = v.to_vec();
    for i in 0..dim {
        let d = t[i * dim + i] as i64;
        if rem[i].rem_euclid(d) != 0 {
            return false;
        }
        let c = rem[i].div_euclid(d);
        if c != 0 {
            for j in i..dim {
                rem[j] -= c * t[i * dim + j] as i64;
            }
        }
    }
    true
}

/// Reduce `v` modulo the rows of `t` into the canonical box
/// `[0, t[0][0]) x [0, t[1][1]) x ...`.
fn reduce_into_box(t: &[u32], dim: usize, v: &mut [i64]) {
    for i in 0..dim {
        let d = t[i * dim + i] as i64;
        let c = v[i].div_euclid(d);
        if c != 0 {
            for j in i..dim {
                v[j] -= c * t[i * dim + j] as i64;
            }
        }
    }
}

/// Lattice `{ x : q·x ∈ T }` for upper-triangular `T`, as an HNF matrix.
fn division_lattice(t: &[u32], dim: usize, q: i128) -> Vec<i64> {
    // (1/q)(T ∩ q·Z^dim): kernel construction on [T; -q·I]
    let mut rows: Vec<Vec<i128>> = Vec::with_capacity(2 * dim);
    for i in 0..dim {
        rows.push((0..dim).map(|j| t[i * dim + j] as i128).collect());
    }
    for i in 0..dim {
        let mut r = vec![0i128; dim];
        r[i] = -q;
        rows.push(r);
    }
    let stacked = Mat::from_rows(&rows);
    let kernel = left_kernel(&stacked);
    let mut basis: Vec<Vec<i128>> = kernel
        .iter()
        .map(|uv| {
            (0..dim)
                .map(|j| {
                    let mut acc = 0i128;
                    for (i, &c) in uv[..dim].iter().enumerate() {
                        acc += c * t[i * dim + j] as i128;
                    }
                    debug_assert_eq!(acc % q, 0);
                    acc / q
                })
                .collect()
        })
        .collect();
    // the division lattice always contains T itself
    for i in 0..dim {
        basis.push((0..dim).map(|j| t[i * dim + j] as i128).collect());
    }
    let mut m = Mat::from_rows(&basis);
    hnf_in_place(&mut m, None);
    (0..dim * dim).map(|i| m.data[i] as i64).collect()
}

/// Streams every subgroup of `ty` (each exactly once, canonical form) to
/// the visitor, in a deterministic order. Use [`enumerate_subgroups`] when
/// a sorted `Vec` is wanted.
pub fn for_each_subgroup<F>(
    ty: &PGroupType,
    bound: u64,
    mut visit: F,
) -> Result<(), GroupError>
where
    F: FnMut(Subgroup),
{
    let order = ty.order();
    if order > bound {
        return Err(GroupError::BoundExceeded { order, bound });
    }
    let k = ty.rank();
    if k == 0 {
        visit(ty.trivial_subgroup());
        return Ok(());
    }
    let p = ty.p();
    // build stored levels for suffixes e[j..] with j = k-1 down to 1
    let mut prev = Level::empty();
    for j in (1..k).rev() {
        prev = build_level(p, ty.exponents[j], &prev);
    }
    // stream the top level
    let e0 = ty.exponents[0];
    let dim = k - 1;
    emit_level_rows(p, e0, &prev, |d0, h, t| {
        let mut flat = vec![0u64; k * k];
        flat[0] = d0 as u64;
        for (c, &v) in h.iter().enumerate() {
            flat[1 + c] = v as u64;
        }
        for r in 0..dim {
            for c in 0..dim {
                flat[(r + 1) * k + (c + 1)] = t[r * dim + c] as u64;
            }
        }
        visit(Subgroup::from_hnf(ty.clone(), flat));
    });
    Ok(())
}

/// Shared row generator for one recursion level: for every stored trailing
/// subgroup `T` and every pivot divisor `d0 = p^f`, yields the valid
/// reduced first rows `(d0, h)`.
fn emit_level_rows<F>(p: u64, e: u32, prev: &Level, mut emit: F)
where
    F: FnMut(i64, &[i64], &[u32]),
{
    let dim = prev.dim;
    for t_idx in 0..prev.count {
        let t = prev.mat(t_idx);
        for f in 0..=e {
            let d0 = p.pow(f) as i64;
            let q = p.pow(e - f) as i64;
            if q == 1 {
                emit(d0, &vec![0i64; dim], t);
                continue;
            }
            // fast path: q·Z^dim ⊆ T, every box element is a valid row tail
            let mut fast = true;
            for l in 0..dim {
                let mut unit = vec![0i64; dim];
                unit[l] = q;
                if !in_lattice_u32(t, dim, &unit) {
                    fast = false;
                    break;
                }
            }
            if fast {
                let mut h = vec![0i64; dim];
                'box_odometer: loop {
                    emit(d0, &h, t);
                    let mut i = dim;
                    loop {
                        if i == 0 {
                            break 'box_odometer;
                        }
                        i -= 1;
                        h[i] += 1;
                        if h[i] < t[i * dim + i] as i64 {
                            break;
                        }
                        h[i] = 0;
                    }
                }
                continue;
            }
            // slow path: enumerate the q-torsion of Z^dim / T
            let m = division_lattice(t, dim, q as i128);
            let counts: Vec<i64> =
                (0..dim).map(|i| t[i * dim + i] as i64 / m[i * dim + i]).collect();
            let mut c = vec![0i64; dim];
            'coset_odometer: loop {
                let mut x = vec![0i64; dim];
                for i in 0..dim {
                    if c[i] != 0 {
                        for j in 0..dim {
                            x[j] += c[i] * m[i * dim + j];
                        }
                    }
                }
                reduce_into_box(t, dim, &mut x);
                emit(d0, &x, t);
                let mut i = dim;
                loop {
                    if i == 0 {
                        break 'coset_odometer;
                    }
                    i -= 1;
                    c[i] += 1;
                    if c[i] < counts[i] {
                        break;
                    }
                    c[i] = 0;
                }
            }
        }
    }
}

fn build_level(p: u64, e: u32, prev: &Level) -> Level {
    let dim = prev.dim + 1;
    let mut mats: Vec<u32> = Vec::new();
    let mut count = 0usize;
    emit_level_rows(p, e, prev, |d0, h, t| {
        let base = mats.len();
        mats.resize(base + dim * dim, 0);
        mats[base] = d0 as u32;
        for (c, &v) in h.iter().enumerate() {
            mats[base + 1 + c] = v as u32;
        }
        let prev_dim = dim - 1;
        for r in 0..prev_dim {
            for c in 0..prev_dim {
                mats[base + (r + 1) * dim + (c + 1)] = t[r * prev_dim + c];
            }
        }
        count += 1;
    });
    Level { dim, mats, count }
}

/// Every subgroup exactly once, sorted by `(order, canonical matrix)`.
pub fn enumerate_subgroups(ty: &PGroupType) -> Result<Vec<Subgroup>, GroupError> {
    enumerate_subgroups_bounded(ty, DEFAULT_ENUM_BOUND)
}

/// As [`enumerate_subgroups`] with an explicit order bound.
pub fn enumerate_subgroups_bounded(
    ty: &PGroupType,
    bound: u64,
) -> Result<Vec<Subgroup>, GroupError> {
    let mut out = Vec::new();
    for_each_subgroup(ty, bound, |s| out.push(s))?;
    out.sort_unstable_by(|a, b| (a.order, &a.hnf).cmp(&(b.order, &b.hnf)));
    Ok(out)
}


#[cfg(test)]
mod prop_tests {
    use super::*;
    use proptest::prelude::*;

    const POOL: [&str; 6] = ["2:2,1", "3:1,1", "3:2,1", "2:1,1,1", "5:1,1", "2:3,2"];

    fn pick(idx: usize) -> PGroupType {
        PGroupType::from_spec(POOL[idx % POOL.len()]).unwrap()
    }

    fn elems(t: &PGroupType, coords: &[Vec<u64>]) -> Vec<GroupElement> {
        coords.iter().map(|c| t.element(&c[..t.rank()]).unwrap()).collect()
    }

    proptest! {
        #[test]
        fn span_is_canonical_under_regeneration(
            idx in 0usize..POOL.len(),
            coords in proptest::collection::vec(proptest::collection::vec(0u64..1000, 4), 1..5),
            scale in 1u64..20,
        ) {
            let t = pick(idx);
            let gens = elems(&t, &coords);
            let s = span(&t, &gens).unwrap();
            // idempotent on its own basis
            prop_assert_eq!(span(&t, &s.generators()).unwrap(), s.clone());
            // order and duplication of generators are irrelevant
            let mut shuffled = gens.clone();
            shuffled.reverse();
            shuffled.extend(gens.iter().cloned());
            prop_assert_eq!(span(&t, &shuffled).unwrap(), s.clone());
            // adjoining a combination of the generators changes nothing
            let combo = gens.iter().fold(t.zero(), |acc, g| acc.add(&g.scale(scale)));
            let mut extended = gens.clone();
            extended.push(combo);
            prop_assert_eq!(span(&t, &extended).unwrap(), s.clone());
            for g in &gens {
                prop_assert!(s.contains(g).unwrap());
            }
            prop_assert_eq!(s.order() * s.index(), t.order());
        }

        #[test]
        fn lattice_laws_on_random_triples(
            idx in 0usize..POOL.len(),
            ca in proptest::collection::vec(0u64..1000, 4),
            cb in proptest::collection::vec(0u64..1000, 4),
            cc in proptest::collection::vec(0u64..1000, 4),
        ) {
            let t = pick(idx);
            let a = cyclic_span(&t.element(&ca[..t.rank()]).unwrap());
            let b = cyclic_span(&t.element(&cb[..t.rank()]).unwrap());
            let c = cyclic_span(&t.element(&cc[..t.rank()]).unwrap());
            // idempotent and commutative
            prop_assert_eq!(intersect(&a, &a).unwrap(), a.clone());
            prop_assert_eq!(join(&a, &a).unwrap(), a.clone());
            prop_assert_eq!(intersect(&a, &b).unwrap(), intersect(&b, &a).unwrap());
            prop_assert_eq!(join(&a, &b).unwrap(), join(&b, &a).unwrap());
            // associative
            prop_assert_eq!(
                intersect(&intersect(&a, &b).unwrap(), &c).unwrap(),
                intersect(&a, &intersect(&b, &c).unwrap()).unwrap()
            );
            prop_assert_eq!(
                join(&join(&a, &b).unwrap(), &c).unwrap(),
                join(&a, &join(&b, &c).unwrap()).unwrap()
            );
            // mutually absorbing
            prop_assert_eq!(join(&a, &intersect(&a, &b).unwrap()).unwrap(), a.clone());
            prop_assert_eq!(intersect(&a, &join(&a, &b).unwrap()).unwrap(), a.clone());
            // the order product formula
            let meet = intersect(&a, &b).unwrap();
            let jn = join(&a, &b).unwrap();
            prop_assert_eq!(meet.order() * jn.order(), a.order() * b.order());
        }

        #[test]
        fn height_matches_divisibility_search(
            idx in 0usize..POOL.len(),
            coords in proptest::collection::vec(0u64..1000, 4),
        ) {
            let t = pick(idx);
            let g = t.element(&coords[..t.rank()]).unwrap();
            match p_height(&g) {
                Height::Infinite => prop_assert!(g.is_zero()),
                Height::Finite(h) => {
                    prop_assert!(!division_solutions(&g, h).is_empty());
                    prop_assert!(division_solutions(&g, h + 1).is_empty());
                }
            }
        }
    }
}
