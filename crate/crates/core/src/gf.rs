//! Finite fields `F_{p^e}` as residues of `F_p[w]` modulo a fixed irreducible.
//!
//! Elements are stored as a packed code `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`
//! of their coefficient vector, and every operation is a lookup into tables
//! built once per field. Tables make matrix work over small fields cheap
//! enough for exhaustive group enumeration.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::polyring::RingAut;
use crate::scalar::{Scalar, ScalarDomain};
use crate::text::{parse_sum, Factor};

/// Default bound on the field order `q`.
pub const DEFAULT_FIELD_CAP: u32 = 81;
/// Hard bound on `q`; the multiplication table has `q^2` entries.
pub const MAX_FIELD_ORDER: u32 = 1024;
/// Largest extension degree for which irreducibility is tested exhaustively.
pub const MAX_EXTENSION_DEGREE: u32 = 4;

/// Generator symbol used in the text form of field elements.
pub const GENERATOR_SYMBOL: &str = "w";

struct Tables {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    frob: Vec<u16>,
    /// position of each code in the lexicographic (constant term first) order
    rank: Vec<u16>,
    /// inverse of `rank`
    by_rank: Vec<u16>,
}

/// A finite field `F_q`, `q = p^e`, with its defining modulus.
///
/// Cloning is cheap; clones share the arithmetic tables.
#[derive(Clone)]
pub struct FqDescriptor(Arc<Tables>);

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn digits(code: u32, p: u32, e: u32) -> Vec<u32> {
    let mut c = code;
    (0..e)
        .map(|_| {
            let d = c % p;
            c /= p;
            d
        })
        .collect()
}

fn pack(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Remainder of `f` modulo monic `g` over `F_p` (little-endian coefficient vectors).
fn rem_mod_p(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for (i, &gc) in g.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - (lead * gc) % p) % p;
            }
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

/// Exhaustive irreducibility test for monic `f` of small degree over `F_p`.
fn irreducible_mod_p(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    for d in 1..=deg / 2 {
        for code in 0..p.pow(d as u32) {
            let mut g = digits(code, p, d as u32);
            g.push(1);
            if rem_mod_p(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Monic irreducible polynomials of degree `e` over `F_p`, in the
/// lexicographic order that compares coefficients from the constant term up.
fn least_irreducible(p: u32, e: u32) -> Vec<u32> {
    if e == 1 {
        // the prime field itself; by convention the modulus is recorded as `t`
        return vec![0, 1];
    }
    let count = p.pow(e);
    for idx in 0..count {
        // constant term is the most significant position of the lexicographic index
        let mut coeffs: Vec<u32> = digits(idx, p, e).into_iter().rev().collect();
        coeffs.push(1);
        if irreducible_mod_p(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over F_p")
}

impl Tables {
    fn build(p: u32, e: u32, modulus: Vec<u32>) -> Self {
        let q = p.pow(e);
        let qs = q as usize;
        let mut add = vec![0u16; qs * qs];
        let mut mul = vec![0u16; qs * qs];
        let all: Vec<Vec<u32>> = (0..q).map(|c| digits(c, p, e)).collect();
        for a in 0..qs {
            for b in 0..qs {
                let sum: Vec<u32> = (0..e as usize)
                    .map(|i| (all[a][i] + all[b][i]) % p)
                    .collect();
                add[a * qs + b] = pack(&sum, p) as u16;
                let mut prod = vec![0u32; 2 * e as usize];
                for i in 0..e as usize {
                    for j in 0..e as usize {
                        prod[i + j] = (prod[i + j] + all[a][i] * all[b][j]) % p;
                    }
                }
                let mut r = rem_mod_p(&prod, &modulus, p);
                r.resize(e as usize, 0);
                mul[a * qs + b] = pack(&r, p) as u16;
            }
        }
        let neg: Vec<u16> = (0..qs)
            .map(|a| (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as u16)
            .collect();
        let mut inv = vec![0u16; qs];
        for a in 1..qs {
            inv[a] = (1..qs).find(|&b| mul[a * qs + b] == 1).unwrap() as u16;
        }
        let frob: Vec<u16> = (0..qs)
            .map(|a| {
                let mut acc = 1usize;
                for _ in 0..p {
                    acc = mul[acc * qs + a] as usize;
                }
                acc as u16
            })
            .collect();
        let by_rank: Vec<u16> = (0..q)
            .map(|idx| {
                let lex: Vec<u32> = digits(idx, p, e).into_iter().rev().collect();
                pack(&lex, p) as u16
            })
            .collect();
        let mut rank = vec![0u16; qs];
        for (r, &code) in by_rank.iter().enumerate() {
            rank[code as usize] = r as u16;
        }
        Tables {
            p,
            e,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
            frob,
            rank,
            by_rank,
        }
    }
}

/// Build `F_{p^e}` with the default cap on `q`.
pub fn fq_make(p: u32, e: u32) -> Result<FqDescriptor> {
    FqDescriptor::with_cap(p, e, DEFAULT_FIELD_CAP)
}

impl FqDescriptor {
    /// Build `F_{p^e}` with modulus the lexicographically least monic
    /// irreducible of degree `e` (coefficients compared from the constant term up).
    pub fn with_cap(p: u32, e: u32, cap: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if e == 0 {
            return Err(Error::Unsupported(
                "extension degree must be at least 1".into(),
            ));
        }
        if e > MAX_EXTENSION_DEGREE {
            return Err(Error::Unsupported(format!(
                "extension degree {e} exceeds {MAX_EXTENSION_DEGREE}"
            )));
        }
        let q = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
        if q > cap.min(MAX_FIELD_ORDER) as u64 {
            return Err(Error::CapExceeded(format!(
                "field order {q} exceeds cap {}",
                cap.min(MAX_FIELD_ORDER)
            )));
        }
        let modulus = least_irreducible(p, e);
        Ok(FqDescriptor(Arc::new(Tables::build(p, e, modulus))))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn e(&self) -> u32 {
        self.0.e
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Defining modulus as little-endian coefficients over `F_p`.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// The modulus rendered in the variable `t`, e.g. `t^2+1`.
    pub fn modulus_text(&self) -> String {
        render_terms(
            self.0
                .modulus
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, &c)| c != 0)
                .map(|(k, &c)| (c.to_string(), k)),
            "t",
        )
    }

    pub(crate) fn add_codes(&self, a: u16, b: u16) -> u16 {
        self.0.add[a as usize * self.0.q as usize + b as usize]
    }

    pub(crate) fn mul_codes(&self, a: u16, b: u16) -> u16 {
        self.0.mul[a as usize * self.0.q as usize + b as usize]
    }

    pub(crate) fn neg_code(&self, a: u16) -> u16 {
        self.0.neg[a as usize]
    }

    pub(crate) fn sub_codes(&self, a: u16, b: u16) -> u16 {
        self.add_codes(a, self.neg_code(b))
    }

    /// Inverse code; `None` for zero.
    pub(crate) fn inv_code(&self, a: u16) -> Option<u16> {
        (a != 0).then(|| self.0.inv[a as usize])
    }

    pub(crate) fn frob_code(&self, a: u16, k: u32) -> u16 {
        let mut x = a;
        for _ in 0..(k % self.0.e) {
            x = self.0.frob[x as usize];
        }
        x
    }

    pub(crate) fn rank_of(&self, a: u16) -> u16 {
        self.0.rank[a as usize]
    }

    pub(crate) fn int_code(&self, n: i64) -> u16 {
        n.rem_euclid(self.0.p as i64) as u16
    }

    pub(crate) fn elem(&self, code: u16) -> FqElem {
        debug_assert!((code as u32) < self.0.q);
        FqElem {
            field: self.clone(),
            code,
        }
    }

    pub fn zero(&self) -> FqElem {
        self.elem(0)
    }

    pub fn one(&self) -> FqElem {
        self.elem(1)
    }

    /// The residue class of the generator `w` (equal to `0` when `e = 1`,
    /// since the modulus is then `t`).
    pub fn generator(&self) -> FqElem {
        if self.0.e == 1 {
            self.zero()
        } else {
            self.elem(self.0.p as u16)
        }
    }

    pub fn from_int(&self, n: i64) -> FqElem {
        self.elem(self.int_code(n))
    }

    /// Build an element from its coefficient vector (little-endian in `w`).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FqElem> {
        if coeffs.len() != self.0.e as usize || coeffs.iter().any(|&c| c >= self.0.p) {
            return Err(Error::Parse(format!(
                "need {} residues in [0, {})",
                self.0.e, self.0.p
            )));
        }
        Ok(self.elem(pack(coeffs, self.0.p) as u16))
    }

    /// All `q` elements in lexicographic order of their coefficient vectors.
    pub fn enumerate(&self) -> Vec<FqElem> {
        self.0.by_rank.iter().map(|&c| self.elem(c)).collect()
    }

    /// All nonzero elements, in enumeration order.
    pub fn nonzero(&self) -> Vec<FqElem> {
        self.enumerate()
            .into_iter()
            .filter(|x| !x.is_zero())
            .collect()
    }

    /// Least element (in enumeration order) generating the multiplicative group.
    pub fn primitive_element(&self) -> FqElem {
        let order = self.0.q - 1;
        self.nonzero()
            .into_iter()
            .find(|x| x.multiplicative_order() == order)
            .expect("multiplicative group of a finite field is cyclic")
    }

    /// Parse the text form (`2*w+1`, `w^2`, `0`, ...). Integers are reduced mod `p`.
    pub fn parse(&self, s: &str) -> Result<FqElem> {
        let mut acc = self.zero();
        for term in parse_sum(s)? {
            let mut prod = self.one();
            for factor in term.factors {
                let f = match factor {
                    Factor::Int(n) => self.from_int(n),
                    Factor::Var { name, exp } if name == GENERATOR_SYMBOL => {
                        self.generator().pow(exp as u64)
                    }
                    Factor::Var { name, .. } => {
                        return Err(Error::Parse(format!(
                            "unknown symbol `{name}` in field element"
                        )))
                    }
                    Factor::Group(inner) => self.parse(&inner)?,
                };
                prod = prod.mul(&f);
            }
            acc = if term.negative {
                acc.sub(&prod)
            } else {
                acc.add(&prod)
            };
        }
        Ok(acc)
    }
}

impl PartialEq for FqDescriptor {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.e == other.0.e && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FqDescriptor {}

impl Hash for FqDescriptor {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.e.hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Debug for FqDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "F_{}[w]/({})",
            self.0.q,
            self.modulus_text().replace('t', "w")
        )
    }
}

/// Join `(coefficient text, exponent)` pairs into `c*x^k+...` form.
pub(crate) fn render_terms(terms: impl Iterator<Item = (String, usize)>, var: &str) -> String {
    let mut out = String::new();
    for (coeff, k) in terms {
        if !out.is_empty() {
            out.push('+');
        }
        let monomial = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        if monomial.is_empty() {
            out.push_str(&coeff);
        } else if coeff == "1" {
            out.push_str(&monomial);
        } else if coeff.contains('+') {
            out.push_str(&format!("({coeff})*{monomial}"));
        } else {
            out.push_str(&format!("{coeff}*{monomial}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// An element of `F_q`.
#[derive(Clone)]
pub struct FqElem {
    field: FqDescriptor,
    code: u16,
}

/// Arithmetic selector for [`fq_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked field arithmetic.
pub fn fq_arith(x: &FqElem, y: &FqElem, op: FieldOp) -> Result<FqElem> {
    if x.field != y.field {
        return Err(Error::MixedFields);
    }
    Ok(match op {
        FieldOp::Add => x.add(y),
        FieldOp::Sub => x.sub(y),
        FieldOp::Mul => x.mul(y),
        FieldOp::Div => x.mul(&y.inv().ok_or(Error::DivideByZero)?),
    })
}

/// `x^{p^k}`.
pub fn frobenius(x: &FqElem, k: u32) -> FqElem {
    x.field.elem(x.field.frob_code(x.code, k))
}

pub fn fq_enumerate(field: &FqDescriptor) -> Vec<FqElem> {
    field.enumerate()
}

impl FqElem {
    pub fn field(&self) -> &FqDescriptor {
        &self.field
    }

    pub(crate) fn code(&self) -> u16 {
        self.code
    }

    /// Coefficients in the residue class of `w`, little-endian, `e` entries.
    pub fn coeffs(&self) -> Vec<u32> {
        digits(self.code as u32, self.field.p(), self.field.e())
    }

    pub fn pow(&self, mut k: u64) -> FqElem {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// Multiplicative order; `0` for the zero element.
    pub fn multiplicative_order(&self) -> u32 {
        if self.code == 0 {
            return 0;
        }
        let mut acc = self.clone();
        let mut k = 1;
        while !acc.is_one() {
            acc = acc.mul(self);
            k += 1;
        }
        k
    }

    /// Whether this element lies in the prime field.
    pub fn is_prime_field(&self) -> bool {
        (self.code as u32) < self.field.p()
    }
}

impl Scalar for FqElem {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }

    fn one_like(&self) -> Self {
        self.field.one()
    }

    fn is_zero(&self) -> bool {
        self.code == 0
    }

    fn is_one(&self) -> bool {
        self.code == 1
    }

    fn add(&self, rhs: &Self) -> Self {
        debug_assert!(self.field == rhs.field, "mixed fields");
        self.field.elem(self.field.add_codes(self.code, rhs.code))
    }

    fn sub(&self, rhs: &Self) -> Self {
        debug_assert!(self.field == rhs.field, "mixed fields");
        self.field.elem(self.field.sub_codes(self.code, rhs.code))
    }

    fn mul(&self, rhs: &Self) -> Self {
        debug_assert!(self.field == rhs.field, "mixed fields");
        self.field.elem(self.field.mul_codes(self.code, rhs.code))
    }

    fn neg(&self) -> Self {
        self.field.elem(self.field.neg_code(self.code))
    }

    fn inv(&self) -> Option<Self> {
        self.field.inv_code(self.code).map(|c| self.field.elem(c))
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        self.field
            .rank_of(self.code)
            .cmp(&other.field.rank_of(other.code))
    }

    fn from_int_like(&self, n: i64) -> Self {
        self.field.from_int(n)
    }
}

impl PartialEq for FqElem {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code && self.field == other.field
    }
}

impl Eq for FqElem {}

impl Hash for FqElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.code.hash(state);
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs = self.coeffs();
        let text = render_terms(
            coeffs
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, &c)| c != 0)
                .map(|(k, &c)| (c.to_string(), k)),
            GENERATOR_SYMBOL,
        );
        f.write_str(&text)
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl ScalarDomain for FqDescriptor {
    type Elem = FqElem;

    fn field(&self) -> &FqDescriptor {
        self
    }

    fn constant(&self, c: &FqElem) -> FqElem {
        c.clone()
    }

    fn contains(&self, x: &FqElem) -> bool {
        &x.field == self
    }

    fn is_unit(&self, x: &FqElem) -> bool {
        !x.is_zero()
    }

    fn elements(&self) -> Option<Vec<FqElem>> {
        Some(self.enumerate())
    }

    /// Only the Frobenius part of a ring automorphism acts on constants.
    fn stabilized_by(&self, rho: &RingAut) -> bool {
        rho.field() == self && rho.is_mobius_identity()
    }

    fn apply_ring_aut(&self, rho: &RingAut, x: &FqElem) -> Result<FqElem> {
        if !rho.is_mobius_identity() {
            return Err(Error::NotStabilizing(format!(
                "{rho} acts on t, not on F_{}",
                self.q()
            )));
        }
        Ok(rho.apply_constant(x))
    }

    fn parse_elem(&self, s: &str) -> Result<FqElem> {
        self.parse(s)
    }

    fn describe(&self) -> String {
        format!("F_{}", self.q())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_modulus_is_t() {
        let f3 = fq_make(3, 1).unwrap();
        assert_eq!(f3.modulus(), &[0, 1]);
        assert_eq!(f3.modulus_text(), "t");
    }

    #[test]
    fn f9_modulus_is_t2_plus_1() {
        // oracle: scan monic quadratics t^2 + a t + b in order of (b, a)
        let mut found = None;
        'outer: for b in 0..3u32 {
            for a in 0..3u32 {
                if (0..3u32).all(|x| (x * x + a * x + b) % 3 != 0) {
                    found = Some(vec![b, a, 1]);
                    break 'outer;
                }
            }
        }
        let f9 = fq_make(3, 2).unwrap();
        assert_eq!(Some(f9.modulus().to_vec()), found);
        assert_eq!(f9.modulus_text(), "t^2+1");
    }

    #[test]
    fn composite_characteristic_rejected() {
        assert_eq!(fq_make(4, 1).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(fq_make(3, 5), Err(Error::Unsupported(_))));
        assert!(matches!(fq_make(7, 3), Err(Error::CapExceeded(_))));
        assert!(FqDescriptor::with_cap(7, 3, 343).is_ok());
    }

    #[test]
    fn i_squared_is_minus_one() {
        let f9 = fq_make(3, 2).unwrap();
        let i = f9.generator();
        assert_eq!(fq_arith(&i, &i, FieldOp::Mul).unwrap(), f9.from_int(2));
        assert_eq!(frobenius(&i, 1), i.neg());
        for x in f9.nonzero() {
            assert_eq!(fq_arith(&x, &x, FieldOp::Div).unwrap(), f9.one());
            assert_eq!(fq_arith(&x, &f9.zero(), FieldOp::Add).unwrap(), x);
        }
        assert_eq!(
            fq_arith(&i, &f9.zero(), FieldOp::Div).unwrap_err(),
            Error::DivideByZero
        );
    }

    #[test]
    fn mixed_fields_detected() {
        let f3 = fq_make(3, 1).unwrap();
        let f5 = fq_make(5, 1).unwrap();
        assert_eq!(
            fq_arith(&f3.one(), &f5.one(), FieldOp::Add).unwrap_err(),
            Error::MixedFields
        );
    }

    #[test]
    fn enumeration_order_and_wilson_product() {
        let f3 = fq_make(3, 1).unwrap();
        let names: Vec<String> = f3.enumerate().iter().map(|x| x.to_string()).collect();
        assert_eq!(names, ["0", "1", "2"]);
        let prod = f3.nonzero().iter().fold(f3.one(), |acc, x| acc.mul(x));
        assert_eq!(prod, f3.from_int(2));

        let f9 = fq_make(3, 2).unwrap();
        let all = f9.enumerate();
        assert_eq!(all.len(), 9);
        let distinct: std::collections::HashSet<_> = all.iter().cloned().collect();
        assert_eq!(distinct.len(), 9);
        for pair in all.windows(2) {
            assert!(pair[0].coeffs() < pair[1].coeffs());
        }
    }

    #[test]
    fn fermat_little_theorem_exhaustive() {
        for (p, e) in [
            (3, 1),
            (5, 1),
            (7, 1),
            (3, 2),
            (5, 2),
            (7, 2),
            (3, 3),
            (3, 4),
        ] {
            let f = fq_make(p, e).unwrap();
            let q = f.q() as u64;
            for x in f.nonzero() {
                assert!(x.pow(q - 1).is_one(), "{x} in F_{q}");
            }
            for x in f.enumerate() {
                assert_eq!(frobenius(&x, e), x);
            }
        }
    }

    #[test]
    fn frobenius_is_a_homomorphism() {
        for (p, e) in [(3, 2), (3, 3), (5, 2)] {
            let f = fq_make(p, e).unwrap();
            let all = f.enumerate();
            for x in &all {
                for y in &all {
                    assert_eq!(
                        frobenius(&x.add(y), 1),
                        frobenius(x, 1).add(&frobenius(y, 1))
                    );
                    assert_eq!(
                        frobenius(&x.mul(y), 1),
                        frobenius(x, 1).mul(&frobenius(y, 1))
                    );
                }
            }
        }
        let f3 = fq_make(3, 1).unwrap();
        for x in f3.enumerate() {
            for k in 0..4 {
                assert_eq!(frobenius(&x, k), x);
            }
        }
    }

    #[test]
    fn deterministic_construction() {
        for (p, e) in [(3, 3), (5, 2), (3, 4)] {
            assert_eq!(
                fq_make(p, e).unwrap().modulus(),
                fq_make(p, e).unwrap().modulus()
            );
        }
    }

    #[test]
    fn text_round_trip() {
        let f9 = fq_make(3, 2).unwrap();
        for x in f9.enumerate() {
            assert_eq!(f9.parse(&x.to_string()).unwrap(), x);
        }
        assert_eq!(f9.parse("2*w+1").unwrap().to_string(), "2*w+1");
        assert_eq!(f9.parse("w^2").unwrap(), f9.from_int(2));
        assert_eq!(f9.parse("-1").unwrap(), f9.from_int(2));
        assert_eq!(f9.zero().to_string(), "0");
        assert!(f9.parse("t").is_err());
    }

    #[test]
    fn primitive_elements() {
        assert_eq!(fq_make(3, 1).unwrap().primitive_element().to_string(), "2");
        let f9 = fq_make(3, 2).unwrap();
        assert_eq!(f9.primitive_element().multiplicative_order(), 8);
    }
}
