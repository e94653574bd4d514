//! Finite field arithmetic: prime fields, extensions, subfield towers,
//! traces, bases over a subfield, and primitive elements.
//!
//! Elements are stored in polynomial-basis coordinates over the prime
//! field, low degree first. The canonical scan order used everywhere a
//! deterministic choice is needed compares coordinate tuples
//! lexicographically with the low-degree coordinate most significant.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::arith::{checked_pow, gcd, is_prime, prime_factors};
use crate::error::{Error, Result};

// ---------------------------------------------------------------------------
// dense polynomials over F_p (internal)
// ---------------------------------------------------------------------------

fn poly_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_deg(v: &[u64]) -> Option<usize> {
    v.iter().rposition(|&c| c != 0)
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u128 + ai as u128 * bj as u128) % p as u128) as u64;
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of `a` by the monic polynomial `m`.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let md = poly_deg(m).expect("monic modulus");
    let mut r = a.to_vec();
    poly_trim(&mut r);
    while let Some(d) = poly_deg(&r) {
        if d < md {
            break;
        }
        let c = r[d];
        let shift = d - md;
        for j in 0..=md {
            let sub = (c as u128 * m[j] as u128) % p as u128;
            r[shift + j] = ((r[shift + j] as u128 + p as u128 - sub) % p as u128) as u64;
        }
        poly_trim(&mut r);
    }
    r
}

fn poly_divmod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let bd = poly_deg(b).expect("nonzero divisor");
    let lead_inv = inv_mod(b[bd], p);
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let mut q = vec![0u64; a.len()];
    while let Some(d) = poly_deg(&r) {
        if d < bd {
            break;
        }
        let c = (r[d] as u128 * lead_inv as u128 % p as u128) as u64;
        let shift = d - bd;
        q[shift] = c;
        for j in 0..=bd {
            let sub = (c as u128 * b[j] as u128) % p as u128;
            r[shift + j] = ((r[shift + j] as u128 + p as u128 - sub) % p as u128) as u64;
        }
        poly_trim(&mut r);
    }
    poly_trim(&mut q);
    (q, r)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    // normalize monic
    if let Some(d) = poly_deg(&x) {
        let inv = inv_mod(x[d], p);
        for c in &mut x {
            *c = (*c as u128 * inv as u128 % p as u128) as u64;
        }
    }
    x
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    poly_rem(&poly_mul(a, b, p), m, p)
}

fn poly_powmod(a: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut base = poly_rem(a, m, p);
    let mut acc = vec![1u64];
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &base, m, p);
        }
        base = poly_mulmod(&base, &base, m, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p prime, a != 0 mod p
    crate::arith::mod_pow(a, p - 2, p)
}

/// `x^(p^k) mod f` by iterated Frobenius.
fn poly_frob_power(k: usize, f: &[u64], p: u64) -> Vec<u64> {
    let mut h = vec![0u64, 1]; // x
    for _ in 0..k {
        h = poly_powmod(&h, p, f, p);
    }
    h
}

/// Rabin irreducibility test for a monic polynomial of degree >= 1.
fn poly_is_irreducible(f: &[u64], p: u64) -> bool {
    let m = poly_deg(f).unwrap();
    if m == 1 {
        return true;
    }
    // x^(p^m) == x mod f
    let mut h = poly_frob_power(m, f, p);
    // h - x
    if h.len() < 2 {
        h.resize(2, 0);
    }
    h[1] = (h[1] + p - 1) % p;
    poly_trim(&mut h);
    if !h.is_empty() {
        return false;
    }
    for r in prime_factors(m as u64) {
        let mut g = poly_frob_power(m / r as usize, f, p);
        if g.len() < 2 {
            g.resize(2, 0);
        }
        g[1] = (g[1] + p - 1) % p;
        poly_trim(&mut g);
        let d = poly_gcd(f, &g, p);
        if poly_deg(&d) != Some(0) {
            return false;
        }
    }
    true
}

/// Monic polynomials of degree `d`, in scan order (constant coefficient
/// most significant).
fn monic_polys(d: usize, p: u64) -> impl Iterator<Item = Vec<u64>> {
    let total = checked_pow(p, d as u32).expect("candidate space fits u64");
    (0..total).map(move |idx| {
        let mut coeffs = vec![0u64; d + 1];
        let mut k = idx;
        // low-degree coordinate most significant
        for i in (0..d).rev() {
            coeffs[i] = k % p;
            k /= p;
        }
        coeffs[d] = 1;
        coeffs
    })
}

fn format_poly(f: &[u64]) -> String {
    let mut parts = Vec::new();
    for (i, &c) in f.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let term = match (i, c) {
            (0, c) => format!("{c}"),
            (1, 1) => "x".to_string(),
            (1, c) => format!("{c}x"),
            (i, 1) => format!("x^{i}"),
            (i, c) => format!("{c}x^{i}"),
        };
        parts.push(term);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

/// Names the full factorization of a reducible monic polynomial when the
/// search space is small, e.g. "(x + 1)^2". Falls back to a partial name.
fn describe_factorization(f: &[u64], p: u64) -> String {
    const CAP: u64 = 1_000_000;
    let mut rest = f.to_vec();
    let mut factors: Vec<(Vec<u64>, u32)> = Vec::new();
    'outer: while poly_deg(&rest).unwrap_or(0) > 0 {
        let deg = poly_deg(&rest).unwrap();
        if poly_is_irreducible(&rest, p) {
            factors.push((rest.clone(), 1));
            break;
        }
        for d in 1..=deg / 2 {
            if checked_pow(p, d as u32).map_or(true, |n| n > CAP) {
                return format!("no factor of degree <= {} found within search cap", deg / 2);
            }
            for cand in monic_polys(d, p) {
                let (q, r) = poly_divmod(&rest, &cand, p);
                if r.is_empty() {
                    let mut mult = 1u32;
                    rest = q;
                    loop {
                        let (q2, r2) = poly_divmod(&rest, &cand, p);
                        if r2.is_empty() && poly_deg(&rest).is_some() {
                            mult += 1;
                            rest = q2;
                        } else {
                            break;
                        }
                    }
                    factors.push((cand, mult));
                    continue 'outer;
                }
            }
        }
        break;
    }
    factors
        .iter()
        .map(|(f, m)| {
            if *m == 1 {
                format!("({})", format_poly(f))
            } else {
                format!("({})^{}", format_poly(f), m)
            }
        })
        .collect::<Vec<_>>()
        .join("·")
}

// ---------------------------------------------------------------------------
// F_p linear solves (internal helper shared by embeddings and bases)
// ---------------------------------------------------------------------------

/// Precomputed Gaussian elimination for repeated solves of `A·c = y` over F_p.
#[derive(Clone, Debug)]
struct PrimeSolver {
    p: u64,
    cols: usize,
    /// Row-reduced `[A | E]` where `E` accumulates the row operations.
    reduced: Vec<Vec<u64>>,
    /// (row, col) pivot pairs.
    pivots: Vec<(usize, usize)>,
}

impl PrimeSolver {
    /// `columns[c]` is the c-th column of A, each of length `rows`.
    fn new(p: u64, rows: usize, columns: &[Vec<u64>]) -> Self {
        let cols = columns.len();
        let mut aug: Vec<Vec<u64>> = (0..rows)
            .map(|r| {
                let mut row: Vec<u64> = columns.iter().map(|c| c[r]).collect();
                row.extend((0..rows).map(|j| u64::from(j == r)));
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..cols {
            let Some(pr) = (row..rows).find(|&r| aug[r][col] != 0) else {
                continue;
            };
            aug.swap(row, pr);
            let inv = inv_mod(aug[row][col], p);
            for x in aug[row].iter_mut() {
                *x = (*x as u128 * inv as u128 % p as u128) as u64;
            }
            for r in 0..rows {
                if r != row && aug[r][col] != 0 {
                    let c = aug[r][col];
                    for j in 0..cols + rows {
                        let sub = c as u128 * aug[row][j] as u128 % p as u128;
                        aug[r][j] = ((aug[r][j] as u128 + p as u128 - sub) % p as u128) as u64;
                    }
                }
            }
            pivots.push((row, col));
            row += 1;
            if row == rows {
                break;
            }
        }
        PrimeSolver { p, cols, reduced: aug, pivots }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Solves `A·c = y`; `None` when inconsistent.
    fn solve(&self, y: &[u64]) -> Option<Vec<u64>> {
        let p = self.p as u128;
        let rows = self.reduced.len();
        // z = E·y
        let z: Vec<u64> = (0..rows)
            .map(|r| {
                let mut acc = 0u128;
                for (j, &yj) in y.iter().enumerate() {
                    acc = (acc + self.reduced[r][self.cols + j] as u128 * yj as u128) % p;
                }
                acc as u64
            })
            .collect();
        let mut c = vec![0u64; self.cols];
        for &(r, col) in &self.pivots {
            c[col] = z[r];
        }
        // consistency: rows past the last pivot must vanish
        for (r, &zr) in z.iter().enumerate() {
            if !self.pivots.iter().any(|&(pr, _)| pr == r) && zr != 0 {
                return None;
            }
        }
        Some(c)
    }
}

// ---------------------------------------------------------------------------
// Field
// ---------------------------------------------------------------------------

#[derive(Debug)]
struct FieldRepr {
    p: u64,
    m: usize,
    /// Monic irreducible modulus, low degree first, length m+1.
    modulus: Vec<u64>,
    order: u64,
    /// Distinct prime factors of order - 1.
    unit_factors: Vec<u64>,
}

/// A finite field F_{p^m}, cheaply clonable and shareable across threads.
#[derive(Clone, Debug)]
pub struct Field(Arc<FieldRepr>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }
}
impl Eq for Field {}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.order)
    }
}

impl Field {
    /// Builds F_{p^m} with the deterministic default modulus: the first
    /// monic irreducible degree-m polynomial in scan order.
    pub fn new(p: u64, m: usize) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        assert!(m >= 1, "degree must be positive");
        let order = checked_pow(p, m as u32)
            .ok_or(Error::FieldTooLarge((p as u128).pow(m as u32)))?;
        let modulus = monic_polys(m, p)
            .find(|f| poly_is_irreducible(f, p))
            .expect("irreducible polynomials exist in every degree");
        Ok(Self::build(p, m, modulus, order))
    }

    /// Builds F_{p^m} with a user-supplied monic irreducible modulus.
    pub fn with_modulus(p: u64, m: usize, modulus: Vec<u64>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        assert!(m >= 1, "degree must be positive");
        let order = checked_pow(p, m as u32)
            .ok_or(Error::FieldTooLarge((p as u128).pow(m as u32)))?;
        if modulus.len() != m + 1 || modulus[m] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::BadModulus);
        }
        if !poly_is_irreducible(&modulus, p) {
            return Err(Error::ReducibleModulus(describe_factorization(&modulus, p)));
        }
        Ok(Self::build(p, m, modulus, order))
    }

    fn build(p: u64, m: usize, modulus: Vec<u64>, order: u64) -> Field {
        let unit_factors = if order > 1 { prime_factors(order - 1) } else { vec![] };
        Field(Arc::new(FieldRepr { p, m, modulus, order, unit_factors }))
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.m
    }

    pub fn order(&self) -> u64 {
        self.0.order
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.clone(), coords: vec![0; self.0.m] }
    }

    pub fn one(&self) -> FieldElement {
        self.scalar(1)
    }

    /// The constant `c mod p`.
    pub fn scalar(&self, c: u64) -> FieldElement {
        let mut coords = vec![0; self.0.m];
        coords[0] = c % self.0.p;
        FieldElement { field: self.clone(), coords }
    }

    /// Element from polynomial-basis coordinates (validated).
    pub fn element(&self, coords: Vec<u64>) -> Result<FieldElement> {
        if coords.len() != self.0.m || coords.iter().any(|&c| c >= self.0.p) {
            return Err(Error::Parse(format!(
                "expected {} coordinates below {}",
                self.0.m, self.0.p
            )));
        }
        Ok(FieldElement { field: self.clone(), coords })
    }

    /// The polynomial-basis root `x` (zero in a prime field with modulus x).
    pub fn generator_root(&self) -> FieldElement {
        if self.0.m == 1 {
            // root of the linear modulus x + c0 is -c0
            let c = self.0.modulus[0];
            return self.scalar(if c == 0 { 0 } else { self.0.p - c });
        }
        let mut coords = vec![0; self.0.m];
        coords[1] = 1;
        FieldElement { field: self.clone(), coords }
    }

    /// Element at position `idx` in scan order (c0 the most significant digit).
    pub fn element_at(&self, idx: u64) -> FieldElement {
        debug_assert!(idx < self.0.order);
        let mut coords = vec![0u64; self.0.m];
        let mut k = idx;
        for i in (0..self.0.m).rev() {
            coords[i] = k % self.0.p;
            k /= self.0.p;
        }
        FieldElement { field: self.clone(), coords }
    }

    /// Scan-order position of an element; inverse of [`Field::element_at`].
    pub fn index_of(&self, x: &FieldElement) -> u64 {
        debug_assert!(x.field == *self);
        let mut idx = 0u64;
        for &c in &x.coords {
            idx = idx * self.0.p + c;
        }
        idx
    }

    /// All elements in scan order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.order).map(move |i| self.element_at(i))
    }

    /// First element in scan order whose multiplicative order is `order - 1`.
    pub fn primitive_element(&self) -> Result<FieldElement> {
        if self.0.order < 3 {
            return Err(Error::NoPrimitiveElement);
        }
        let target = self.0.order - 1;
        for x in self.elements().skip(1) {
            if x.is_zero() {
                continue;
            }
            if self.0.unit_factors.iter().all(|&r| !x.powu((target / r) as u128).is_one()) {
                return Ok(x);
            }
        }
        unreachable!("every finite field has a primitive element")
    }

    /// Parses "7", "(c0,c1,...)", "a^k", "a", "0" or "1"; symbolic forms are
    /// relative to the scan-first primitive element.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let s = s.trim();
        if let Some(body) = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
            let coords: Vec<u64> = body
                .split(',')
                .map(|t| t.trim().parse::<u64>().map_err(|e| Error::Parse(e.to_string())))
                .collect::<Result<_>>()?;
            return self.element(coords);
        }
        if s == "a" || s.starts_with("a^") {
            let k: u128 = if s == "a" {
                1
            } else {
                s[2..].parse().map_err(|e: std::num::ParseIntError| Error::Parse(e.to_string()))?
            };
            return Ok(self.primitive_element()?.powu(k));
        }
        if let Ok(v) = s.parse::<u64>() {
            if self.0.m == 1 {
                return Ok(self.scalar(v % self.0.p));
            }
            if v == 0 {
                return Ok(self.zero());
            }
            if v == 1 {
                return Ok(self.one());
            }
        }
        Err(Error::Parse(format!("cannot read {s:?} as an element of {self}")))
    }
}

// ---------------------------------------------------------------------------
// FieldElement
// ---------------------------------------------------------------------------

/// An element of a [`Field`], in polynomial-basis coordinates over F_p.
#[derive(Clone, Debug)]
pub struct FieldElement {
    field: Field,
    coords: Vec<u64>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coords == other.coords
    }
}
impl Eq for FieldElement {}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0] == 1 && self.coords[1..].iter().all(|&c| c == 0)
    }

    fn check_same(&self, rhs: &Self) -> Result<()> {
        if self.field == rhs.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check_same(rhs)?;
        let p = self.field.0.p;
        let coords = self
            .coords
            .iter()
            .zip(&rhs.coords)
            .map(|(&a, &b)| {
                let s = a as u128 + b as u128;
                (s % p as u128) as u64
            })
            .collect();
        Ok(FieldElement { field: self.field.clone(), coords })
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.check_same(rhs)?;
        let p = self.field.0.p;
        let coords = self
            .coords
            .iter()
            .zip(&rhs.coords)
            .map(|(&a, &b)| ((a as u128 + p as u128 - b as u128) % p as u128) as u64)
            .collect();
        Ok(FieldElement { field: self.field.clone(), coords })
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_same(rhs)?;
        let repr = &self.field.0;
        let prod = poly_mul(&self.coords, &rhs.coords, repr.p);
        let mut coords = poly_rem(&prod, &repr.modulus, repr.p);
        coords.resize(repr.m, 0);
        Ok(FieldElement { field: self.field.clone(), coords })
    }

    pub fn neg(&self) -> Self {
        let p = self.field.0.p;
        let coords = self.coords.iter().map(|&a| if a == 0 { 0 } else { p - a }).collect();
        FieldElement { field: self.field.clone(), coords }
    }

    /// Scalar multiple by an integer (reduced mod p).
    pub fn scale(&self, c: u64) -> Self {
        let p = self.field.0.p;
        let c = c % p;
        let coords = self.coords.iter().map(|&a| (a as u128 * c as u128 % p as u128) as u64).collect();
        FieldElement { field: self.field.clone(), coords }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInversion);
        }
        // x^(q-2)
        Ok(self.powu((self.field.0.order - 2) as u128))
    }

    /// Square-and-multiply power with a non-negative exponent; `0^0 = 1`.
    pub fn powu(&self, mut e: u128) -> Self {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&base).unwrap();
            }
            base = base.try_mul(&base).unwrap();
            e >>= 1;
        }
        acc
    }

    /// Power with a possibly negative exponent; negative exponents require a
    /// nonzero base.
    pub fn pow(&self, e: i128) -> Result<Self> {
        if e >= 0 {
            return Ok(self.powu(e as u128));
        }
        if self.is_zero() {
            return Err(Error::ZeroInversion);
        }
        let unit_order = (self.field.0.order - 1) as i128;
        let r = e.rem_euclid(unit_order) as u128;
        Ok(self.powu(r))
    }

    /// The map `x -> x^q0` where `q0 = p^j` with `j <= m`; an automorphism
    /// fixing F_{q0} pointwise.
    pub fn frobenius(&self, base_power: u64) -> Result<Self> {
        let p = self.field.0.p;
        let mut q0 = base_power;
        let mut j = 0usize;
        while q0 > 1 {
            if q0 % p != 0 {
                return Err(Error::NotCharPower(base_power));
            }
            q0 /= p;
            j += 1;
        }
        if base_power <= 1 || j > self.field.0.m {
            return Err(Error::NotCharPower(base_power));
        }
        Ok(self.powu(base_power as u128))
    }

    /// Exact multiplicative order; errors on zero.
    pub fn multiplicative_order(&self) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::ZeroInversion);
        }
        let mut ord = self.field.0.order - 1;
        for &r in &self.field.0.unit_factors {
            while ord % r == 0 && self.powu((ord / r) as u128).is_one() {
                ord /= r;
            }
        }
        Ok(ord)
    }

    /// Readable form: decimal for prime fields; for small extension fields a
    /// symbolic power of the scan-first primitive element; tuple otherwise.
    pub fn symbolic(&self) -> String {
        if self.field.0.m == 1 {
            return self.coords[0].to_string();
        }
        if self.is_zero() {
            return "0".into();
        }
        if self.is_one() {
            return "1".into();
        }
        if self.field.0.order <= 4096 {
            if let Ok(g) = self.field.primitive_element() {
                if let Some(k) = discrete_log(&g, self, self.field.0.order - 1) {
                    return if k == 1 { "a".into() } else { format!("a^{k}") };
                }
            }
        }
        format!("{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.0.m == 1 {
            write!(f, "{}", self.coords[0])
        } else {
            let inner: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
            write!(f, "({})", inner.join(","))
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $imp:ident) => {
        impl std::ops::$trait for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$imp(rhs).expect("mixed-field operands")
            }
        }
    };
}
binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}

/// Baby-step giant-step discrete log of `target` base `base`, where `base`
/// has the given multiplicative order. Table-based below 2^16.
pub fn discrete_log(base: &FieldElement, target: &FieldElement, order: u64) -> Option<u64> {
    if target.is_one() {
        return Some(0);
    }
    if order < (1 << 16) {
        let mut acc = base.field().one();
        for k in 0..order {
            if acc == *target {
                return Some(k);
            }
            acc = &acc * base;
        }
        return None;
    }
    let m = (order as f64).sqrt().ceil() as u64;
    let mut baby: HashMap<Vec<u64>, u64> = HashMap::with_capacity(m as usize);
    let mut acc = base.field().one();
    for j in 0..m {
        baby.entry(acc.coords.clone()).or_insert(j);
        acc = &acc * base;
    }
    let giant_step = base.powu(m as u128).inv().ok()?;
    let mut gamma = target.clone();
    for i in 0..=m {
        if let Some(&j) = baby.get(&gamma.coords) {
            return Some((i * m + j) % order);
        }
        gamma = &gamma * &giant_step;
    }
    None
}

// ---------------------------------------------------------------------------
// Subfield embeddings
// ---------------------------------------------------------------------------

/// A fixed ring embedding F_{p^a} -> F_{p^b} (a | b) with a linear section
/// for pulling elements back down.
#[derive(Clone, Debug)]
pub struct SubfieldEmbedding {
    sub: Field,
    sup: Field,
    /// Images of the subfield's polynomial basis 1, x, ..., x^{a-1}.
    powers: Vec<FieldElement>,
    solver: PrimeSolver,
}

impl SubfieldEmbedding {
    pub fn new(sub: &Field, sup: &Field) -> Result<SubfieldEmbedding> {
        if sub.0.p != sup.0.p || sup.0.m % sub.0.m != 0 {
            return Err(Error::NotSubfield { sub: sub.order(), sup: sup.order() });
        }
        let root_image = if sub.0.m == 1 {
            // root of x + c0 in F_p is -c0
            let c = sub.0.modulus[0];
            sup.scalar(if c == 0 { 0 } else { sub.0.p - c })
        } else if sub == sup {
            sup.generator_root()
        } else {
            Self::find_root_image(sub, sup)?
        };
        Self::from_root_image(sub, sup, root_image)
    }

    /// Maps a multiplicative generator g of the subfield to h^{s·(Q-1)/(q-1)}
    /// for the first s that makes the extension a ring homomorphism, i.e. the
    /// first candidate annihilating g's minimal polynomial.
    fn find_root_image(sub: &Field, sup: &Field) -> Result<FieldElement> {
        let g = sub.primitive_element()?;
        let mu = minimal_polynomial(&g);
        let h = sup.primitive_element()?;
        let step = (sup.0.order - 1) / (sub.0.order - 1);
        let ghat = h.powu(step as u128);
        let unit = sub.0.order - 1;
        let target = (1..unit)
            .filter(|&s| gcd(s, unit) == 1)
            .map(|s| ghat.powu(s as u128))
            .find(|cand| eval_prime_poly(&mu, cand).is_zero())
            .expect("the minimal polynomial splits in the extension");
        // carry the polynomial-basis root along the map g -> target
        let root = sub.generator_root();
        let t = discrete_log(&g, &root, unit).expect("generator reaches every unit");
        Ok(target.powu(t as u128))
    }

    fn from_root_image(sub: &Field, sup: &Field, root_image: FieldElement) -> Result<SubfieldEmbedding> {
        let mut powers = Vec::with_capacity(sub.0.m);
        let mut acc = sup.one();
        for _ in 0..sub.0.m {
            powers.push(acc.clone());
            acc = &acc * &root_image;
        }
        let columns: Vec<Vec<u64>> = powers.iter().map(|e| e.coords.clone()).collect();
        let solver = PrimeSolver::new(sub.0.p, sup.0.m, &columns);
        if solver.rank() != sub.0.m {
            return Err(Error::SingularBasis);
        }
        Ok(SubfieldEmbedding { sub: sub.clone(), sup: sup.clone(), powers, solver })
    }

    /// Composition `self: A -> B` with `next: B -> C`, giving `A -> C`.
    pub fn compose(&self, next: &SubfieldEmbedding) -> Result<SubfieldEmbedding> {
        assert!(self.sup == next.sub, "embedding chain mismatch");
        let root_image = if self.sub.0.m == 1 {
            let c = self.sub.0.modulus[0];
            next.sup.scalar(if c == 0 { 0 } else { self.sub.0.p - c })
        } else {
            next.embed(&self.powers[1])
        };
        Self::from_root_image(&self.sub, &next.sup, root_image)
    }

    pub fn subfield(&self) -> &Field {
        &self.sub
    }

    pub fn superfield(&self) -> &Field {
        &self.sup
    }

    pub fn embed(&self, x: &FieldElement) -> FieldElement {
        debug_assert!(*x.field() == self.sub);
        let mut acc = self.sup.zero();
        for (c, pw) in x.coords.iter().zip(&self.powers) {
            if *c != 0 {
                acc = &acc + &pw.scale(*c);
            }
        }
        acc
    }

    /// Pulls an element of the big field back into the subfield; errors when
    /// it does not lie in the image.
    pub fn section(&self, y: &FieldElement) -> Result<FieldElement> {
        debug_assert!(*y.field() == self.sup);
        let c = self.solver.solve(&y.coords).ok_or(Error::NotInSubfield)?;
        self.sub.element(c)
    }

    /// Trace down to the subfield: sum of x^{q^i} over the Galois group of
    /// the extension; the result always lies in the subfield.
    pub fn trace(&self, x: &FieldElement) -> Result<FieldElement> {
        debug_assert!(*x.field() == self.sup);
        let q = self.sub.0.order as u128;
        let steps = self.sup.0.m / self.sub.0.m;
        let mut acc = x.clone();
        let mut conj = x.clone();
        for _ in 1..steps {
            conj = conj.powu(q);
            acc = &acc + &conj;
        }
        self.section(&acc)
    }
}

/// Minimal polynomial over F_p of an element generating its field as an
/// F_p-algebra (degree = field degree), low degree first, monic.
fn minimal_polynomial(g: &FieldElement) -> Vec<u64> {
    let field = g.field();
    let a = field.0.m;
    let mut pw = field.one();
    let mut columns = Vec::with_capacity(a);
    for _ in 0..a {
        columns.push(pw.coords().to_vec());
        pw = &pw * g;
    }
    // pw = g^a; solve sum c_i g^i = g^a
    let solver = PrimeSolver::new(field.0.p, a, &columns);
    let c = solver.solve(pw.coords()).expect("powers of a generator span the field");
    let p = field.0.p;
    let mut mu: Vec<u64> = c.iter().map(|&ci| if ci == 0 { 0 } else { p - ci }).collect();
    mu.push(1);
    mu
}

fn eval_prime_poly(f: &[u64], x: &FieldElement) -> FieldElement {
    let mut acc = x.field().zero();
    for &c in f.iter().rev() {
        acc = &(&acc * x) + &x.field().scalar(c);
    }
    acc
}

// ---------------------------------------------------------------------------
// Bases of an extension over a subfield
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    Polynomial,
    Normal,
}

impl BasisKind {
    pub fn name(self) -> &'static str {
        match self {
            BasisKind::Polynomial => "polynomial",
            BasisKind::Normal => "normal",
        }
    }
}

/// A fixed basis of F_{q^l} over F_q together with coordinate machinery.
#[derive(Debug)]
pub struct ExtensionBasis {
    kind: BasisKind,
    embedding: SubfieldEmbedding,
    elements: Vec<FieldElement>,
    solver: PrimeSolver,
}

impl ExtensionBasis {
    /// Powers 1, y, ..., y^{l-1} of the extension's polynomial-basis root.
    pub fn polynomial(embedding: SubfieldEmbedding) -> Result<ExtensionBasis> {
        let l = embedding.sup.0.m / embedding.sub.0.m;
        let y = embedding.sup.generator_root();
        let mut elements = Vec::with_capacity(l);
        let mut acc = embedding.sup.one();
        for _ in 0..l {
            elements.push(acc.clone());
            acc = &acc * &y;
        }
        Self::build(BasisKind::Polynomial, embedding, elements)
    }

    /// First normal basis in scan order: elements b^{q^i} for the first b
    /// whose Frobenius orbit is linearly independent over F_q.
    pub fn normal(embedding: SubfieldEmbedding) -> Result<ExtensionBasis> {
        let sup = embedding.sup.clone();
        let l = sup.0.m / embedding.sub.0.m;
        let q = embedding.sub.0.order as u128;
        for b in sup.elements().skip(1) {
            let mut elements = Vec::with_capacity(l);
            let mut acc = b.clone();
            for _ in 0..l {
                elements.push(acc.clone());
                acc = acc.powu(q);
            }
            match Self::build(BasisKind::Normal, embedding.clone(), elements) {
                Ok(basis) => return Ok(basis),
                Err(Error::SingularBasis) => continue,
                Err(e) => return Err(e),
            }
        }
        unreachable!("a normal basis exists for every finite extension")
    }

    fn build(
        kind: BasisKind,
        embedding: SubfieldEmbedding,
        elements: Vec<FieldElement>,
    ) -> Result<ExtensionBasis> {
        let sub = &embedding.sub;
        let sup = &embedding.sup;
        let b = sup.0.m;
        // columns indexed by (basis element i, subfield basis power t)
        let mut columns = Vec::with_capacity(b);
        for beta in &elements {
            for t in 0..sub.0.m {
                columns.push((&embedding.powers[t] * beta).coords().to_vec());
            }
        }
        let solver = PrimeSolver::new(sub.0.p, b, &columns);
        if solver.rank() != b {
            return Err(Error::SingularBasis);
        }
        Ok(ExtensionBasis { kind, embedding, elements, solver })
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn elements(&self) -> &[FieldElement] {
        &self.elements
    }

    pub fn embedding(&self) -> &SubfieldEmbedding {
        &self.embedding
    }

    /// Coordinates of `x` over the subfield: x = sum c_i · basis_i.
    pub fn decompose(&self, x: &FieldElement) -> Result<Vec<FieldElement>> {
        debug_assert!(*x.field() == self.embedding.sup);
        let sub = &self.embedding.sub;
        let c = self.solver.solve(x.coords()).ok_or(Error::SingularBasis)?;
        let l = self.elements.len();
        let mut out = Vec::with_capacity(l);
        for i in 0..l {
            let coords = c[i * sub.0.m..(i + 1) * sub.0.m].to_vec();
            out.push(sub.element(coords)?);
        }
        Ok(out)
    }

    /// Inverse of [`ExtensionBasis::decompose`].
    pub fn recompose(&self, coords: &[FieldElement]) -> FieldElement {
        let mut acc = self.embedding.sup.zero();
        for (c, beta) in coords.iter().zip(&self.elements) {
            acc = &acc + &(&self.embedding.embed(c) * beta);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> Field {
        Field::new(2, 2).unwrap()
    }

    #[test]
    fn default_modulus_is_scan_first_irreducible() {
        // independent oracle: a quadratic over F_2 is reducible iff it has a
        // root; enumerate all four monic quadratics.
        let survivors: Vec<Vec<u64>> = monic_polys(2, 2)
            .filter(|f| (0..2u64).all(|r| (f[0] + f[1] * r + f[2] * r * r) % 2 != 0))
            .collect();
        assert_eq!(survivors, vec![vec![1, 1, 1]]);
        assert_eq!(f4().modulus(), &[1, 1, 1]);
        // prime field: modulus x
        assert_eq!(Field::new(5, 1).unwrap().modulus(), &[0, 1]);
    }

    #[test]
    fn reducible_modulus_is_rejected_with_a_factor() {
        let err = Field::with_modulus(2, 2, vec![1, 0, 1]).unwrap_err();
        match err {
            Error::ReducibleModulus(s) => assert_eq!(s, "(1 + x)^2"),
            other => panic!("unexpected error {other}"),
        }
        assert!(matches!(Field::new(6, 1), Err(Error::NotPrime(6))));
    }

    #[test]
    fn f4_arithmetic_matches_alpha_squared_is_one_plus_alpha() {
        let f = f4();
        let alpha = f.element(vec![0, 1]).unwrap();
        let asq = &alpha * &alpha;
        assert_eq!(asq, f.element(vec![1, 1]).unwrap());
        assert_eq!(f.one().inv().unwrap(), f.one());
        // alpha has multiplicative order 3: checked by repeated multiplication
        let mut acc = f.one();
        let mut seen = vec![];
        for _ in 0..3 {
            acc = &acc * &alpha;
            seen.push(acc.clone());
        }
        assert!(seen[..2].iter().all(|x| !x.is_one()) && seen[2].is_one());
        assert!(alpha.powu(3).is_one());
        assert_eq!(alpha.pow(-1).unwrap(), asq);
        assert!(matches!(f.zero().pow(-1), Err(Error::ZeroInversion)));
        assert!(matches!(f.zero().inv(), Err(Error::ZeroInversion)));
        let f5 = Field::new(5, 1).unwrap();
        assert!(matches!(f.one().try_mul(&f5.one()), Err(Error::MixedFields)));
    }

    #[test]
    fn frobenius_is_an_order_two_automorphism_of_f4() {
        let f = f4();
        let alpha = f.element(vec![0, 1]).unwrap();
        assert_eq!(alpha.frobenius(2).unwrap(), f.element(vec![1, 1]).unwrap());
        assert_eq!(f.one().frobenius(2).unwrap(), f.one());
        for x in f.elements() {
            assert_eq!(x.frobenius(2).unwrap().frobenius(2).unwrap(), x);
        }
        assert!(matches!(alpha.frobenius(3), Err(Error::NotCharPower(3))));
        // additivity on all pairs of fields of order <= 25
        for field in [f4(), Field::new(5, 2).unwrap(), Field::new(3, 2).unwrap()] {
            let q = field.characteristic();
            for x in field.elements() {
                for y in field.elements() {
                    let lhs = (&x + &y).frobenius(q).unwrap();
                    let rhs = &x.frobenius(q).unwrap() + &y.frobenius(q).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn trace_to_base_lands_in_the_subfield() {
        let f2 = Field::new(2, 1).unwrap();
        let f = f4();
        let emb = SubfieldEmbedding::new(&f2, &f).unwrap();
        let alpha = f.element(vec![0, 1]).unwrap();
        assert_eq!(emb.trace(&alpha).unwrap(), f2.one());
        assert_eq!(emb.trace(&f.one()).unwrap(), f2.zero());

        let f5 = Field::new(5, 1).unwrap();
        let f25 = Field::new(5, 2).unwrap();
        let emb = SubfieldEmbedding::new(&f5, &f25).unwrap();
        let mut image = std::collections::HashSet::new();
        for x in f25.elements() {
            let t = emb.trace(&x).unwrap();
            // result satisfies y^5 = y, i.e. lies in F_5
            let y = emb.embed(&t);
            assert_eq!(y.powu(5), y);
            image.insert(f5.index_of(&t));
        }
        // trace is onto F_5 and F_5-linear
        assert_eq!(image.len(), 5);
        for x in f25.elements() {
            for y in f25.elements() {
                let lhs = emb.trace(&(&x + &y)).unwrap();
                let rhs = &emb.trace(&x).unwrap() + &emb.trace(&y).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn decompose_round_trips_exhaustively() {
        let f2 = Field::new(2, 1).unwrap();
        let f = f4();
        let emb = SubfieldEmbedding::new(&f2, &f).unwrap();
        let basis = ExtensionBasis::polynomial(emb).unwrap();
        // basis is (1, alpha)
        let one_plus_alpha = f.element(vec![1, 1]).unwrap();
        let c = basis.decompose(&one_plus_alpha).unwrap();
        assert_eq!(c, vec![f2.one(), f2.one()]);
        assert_eq!(basis.decompose(&f.zero()).unwrap(), vec![f2.zero(), f2.zero()]);

        let f5 = Field::new(5, 1).unwrap();
        let f25 = Field::new(5, 2).unwrap();
        let basis = ExtensionBasis::polynomial(SubfieldEmbedding::new(&f5, &f25).unwrap()).unwrap();
        for x in f25.elements() {
            let c = basis.decompose(&x).unwrap();
            assert_eq!(basis.recompose(&c), x);
        }
    }

    #[test]
    fn primitive_elements_are_scan_first() {
        let f = f4();
        assert_eq!(f.primitive_element().unwrap(), f.element(vec![0, 1]).unwrap());
        let f5 = Field::new(5, 1).unwrap();
        assert_eq!(f5.primitive_element().unwrap(), f5.scalar(2));
        assert!(matches!(Field::new(2, 1).unwrap().primitive_element(), Err(Error::NoPrimitiveElement)));
    }

    #[test]
    fn normal_basis_is_a_frobenius_orbit() {
        let f2 = Field::new(2, 1).unwrap();
        let f = f4();
        let basis = ExtensionBasis::normal(SubfieldEmbedding::new(&f2, &f).unwrap()).unwrap();
        let els = basis.elements();
        assert_eq!(els.len(), 2);
        assert_eq!(els[1], els[0].powu(2));
        assert_eq!(els[0].powu(4), els[0]);
        for x in f.elements() {
            let c = basis.decompose(&x).unwrap();
            assert_eq!(basis.recompose(&c), x);
        }
    }

    #[test]
    fn embeddings_compose_and_section() {
        // tower F_4 -> F_16 through a nontrivial subfield map
        let f4 = f4();
        let f16 = Field::new(2, 4).unwrap();
        let emb = SubfieldEmbedding::new(&f4, &f16).unwrap();
        for x in f4.elements() {
            for y in f4.elements() {
                assert_eq!(emb.embed(&(&x * &y)), &emb.embed(&x) * &emb.embed(&y));
                assert_eq!(emb.embed(&(&x + &y)), &emb.embed(&x) + &emb.embed(&y));
            }
            assert_eq!(emb.section(&emb.embed(&x)).unwrap(), x);
        }
        // an element outside the image is rejected
        let outside = f16
            .elements()
            .find(|y| emb.section(y).is_err())
            .expect("F_16 is larger than F_4");
        assert!(matches!(emb.section(&outside), Err(Error::NotInSubfield)));
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for field in [Field::new(2, 2).unwrap(), Field::new(13, 1).unwrap(), Field::new(2, 4).unwrap()] {
            let els: Vec<_> = field.elements().collect();
            for x in &els {
                for y in &els {
                    assert_eq!(&(x * y), &(y * x));
                    assert_eq!(&(x + y), &(y + x));
                    for z in &els {
                        assert_eq!(&(&(x * y) * z), &(x * &(y * z)));
                        assert_eq!(&(x * &(y + z)), &(&(x * y) + &(x * z)));
                    }
                }
                assert_eq!(&(x + &x.neg()), &field.zero());
                if !x.is_zero() {
                    assert_eq!(&(x * &x.inv().unwrap()), &field.one());
                }
            }
        }
    }

    #[test]
    fn discrete_log_round_trip() {
        let f = Field::new(5, 3).unwrap();
        let g = f.primitive_element().unwrap();
        for k in [0u64, 1, 2, 17, 63, 123] {
            let t = g.powu(k as u128);
            assert_eq!(discrete_log(&g, &t, 124), Some(k % 124));
        }
    }

    #[test]
    fn element_parsing() {
        let f = f4();
        assert_eq!(f.parse_element("(1,1)").unwrap(), f.element(vec![1, 1]).unwrap());
        assert_eq!(f.parse_element("a^2").unwrap(), f.element(vec![1, 1]).unwrap());
        assert_eq!(f.parse_element("0").unwrap(), f.zero());
        let f5 = Field::new(5, 1).unwrap();
        assert_eq!(f5.parse_element("3").unwrap(), f5.scalar(3));
        assert_eq!(f5.scalar(3).symbolic(), "3");
        assert_eq!(f.element(vec![1, 1]).unwrap().symbolic(), "a^2");
    }
}
