use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::gf::{render_terms, FqDescriptor, FqElem};
use crate::scalar::Scalar;
use crate::text::{parse_sum, Factor};

/// Indeterminate symbol in the polynomial text form.
pub const POLY_SYMBOL: &str = "t";

/// A polynomial in `F_q[t]`, coefficients little-endian with no trailing zeros.
#[derive(Clone)]
pub struct Poly {
    field: FqDescriptor,
    coeffs: Vec<u16>,
}

impl Poly {
    pub(crate) fn from_codes(field: &FqDescriptor, mut coeffs: Vec<u16>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn new(field: &FqDescriptor, coeffs: &[FqElem]) -> Self {
        Self::from_codes(field, coeffs.iter().map(|c| c.code()).collect())
    }

    pub fn zero(field: &FqDescriptor) -> Self {
        Self::from_codes(field, Vec::new())
    }

    pub fn one(field: &FqDescriptor) -> Self {
        Self::constant(&field.one())
    }

    pub fn constant(c: &FqElem) -> Self {
        Self::from_codes(c.field(), vec![c.code()])
    }

    /// The indeterminate `t`.
    pub fn t(field: &FqDescriptor) -> Self {
        Self::from_codes(field, vec![0, 1])
    }

    /// `c * t^k`.
    pub fn monomial(c: &FqElem, k: usize) -> Self {
        let mut coeffs = vec![0u16; k + 1];
        coeffs[k] = c.code();
        Self::from_codes(c.field(), coeffs)
    }

    /// Build from integer coefficients reduced mod `p`, little-endian.
    pub fn from_ints(field: &FqDescriptor, coeffs: &[i64]) -> Self {
        Self::from_codes(
            field,
            coeffs.iter().map(|&c| field.from_int(c).code()).collect(),
        )
    }

    pub fn field(&self) -> &FqDescriptor {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn coeff(&self, k: usize) -> FqElem {
        self.field.elem(self.coeffs.get(k).copied().unwrap_or(0))
    }

    pub fn coeffs(&self) -> Vec<FqElem> {
        self.coeffs.iter().map(|&c| self.field.elem(c)).collect()
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lead(&self) -> FqElem {
        self.field.elem(self.coeffs.last().copied().unwrap_or(0))
    }

    pub fn scale(&self, c: &FqElem) -> Self {
        let f = &self.field;
        Self::from_codes(
            f,
            self.coeffs
                .iter()
                .map(|&a| f.mul_codes(a, c.code()))
                .collect(),
        )
    }

    /// Monic associate; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.lead().inv() {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, x: &FqElem) -> FqElem {
        self.coeffs.iter().rev().fold(self.field.zero(), |acc, &c| {
            acc.mul(x).add(&self.field.elem(c))
        })
    }

    /// Apply `x -> x^{p^k}` to every coefficient.
    pub fn frobenius_coeffs(&self, k: u32) -> Self {
        let f = &self.field;
        Self::from_codes(f, self.coeffs.iter().map(|&c| f.frob_code(c, k)).collect())
    }

    /// Euclidean division.
    pub fn divmod(&self, g: &Poly) -> Result<(Poly, Poly)> {
        let f = &self.field;
        let lead_inv = g.lead().inv().ok_or(Error::DivideByZero)?;
        let dg = g.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dg {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![0u16; rem.len() - dg];
        for shift in (0..quot.len()).rev() {
            let top = rem[shift + dg];
            if top == 0 {
                continue;
            }
            let c = f.mul_codes(top, lead_inv.code());
            quot[shift] = c;
            for (i, &gc) in g.coeffs.iter().enumerate() {
                let sub = f.mul_codes(c, gc);
                rem[shift + i] = f.sub_codes(rem[shift + i], sub);
            }
        }
        rem.truncate(dg);
        Ok((Poly::from_codes(f, quot), Poly::from_codes(f, rem)))
    }

    /// Exact quotient when `g` divides `self`.
    pub fn div_exact(&self, g: &Poly) -> Option<Poly> {
        match self.divmod(g) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    pub fn divides(&self, f: &Poly) -> bool {
        !self.is_zero() && f.divmod(self).map(|(_, r)| r.is_zero()).unwrap_or(false)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, g: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), g.clone());
        while !b.is_zero() {
            let r = a.divmod(&b).expect("b nonzero").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Total order: by degree, then coefficients from the constant term up.
    pub fn total_cmp(&self, other: &Poly) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| {
            for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
                let o = self.field.rank_of(*a).cmp(&self.field.rank_of(*b));
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
    }

    /// All monic polynomials of degree `d`, in lexicographic order of
    /// `(c_0, ..., c_{d-1})`.
    pub fn monics_of_degree(field: &FqDescriptor, d: usize) -> impl Iterator<Item = Poly> + '_ {
        let q = field.q() as u64;
        let count = q.pow(d as u32);
        let order = field.enumerate();
        (0..count).map(move |mut idx| {
            let mut digits = vec![0u16; d + 1];
            for k in (0..d).rev() {
                digits[k] = order[(idx % q) as usize].code();
                idx /= q;
            }
            digits[d] = 1;
            Poly::from_codes(field, digits)
        })
    }

    /// Parse `c_k*t^k+...+c_0`; coefficients may be integers, field
    /// generator powers or parenthesized field elements.
    pub fn parse(field: &FqDescriptor, s: &str) -> Result<Poly> {
        let mut acc = Poly::zero(field);
        for term in parse_sum(s)? {
            let mut prod = Poly::one(field);
            for factor in term.factors {
                let f = match factor {
                    Factor::Int(n) => Poly::constant(&field.from_int(n)),
                    Factor::Var { name, exp } if name == POLY_SYMBOL => {
                        Poly::monomial(&field.one(), exp as usize)
                    }
                    Factor::Var { name, exp } => {
                        Poly::constant(&field.parse(&format!("{name}^{exp}"))?)
                    }
                    Factor::Group(inner) => Poly::parse(field, &inner)?,
                };
                prod = &prod * &f;
            }
            acc = if term.negative {
                &acc - &prod
            } else {
                &acc + &prod
            };
        }
        Ok(acc)
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}

impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = render_terms(
            self.coeffs
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, &c)| c != 0)
                .map(|(k, &c)| (self.field.elem(c).to_string(), k)),
            POLY_SYMBOL,
        );
        f.write_str(&text)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        debug_assert!(self.field == rhs.field, "mixed fields");
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let codes = (0..n)
            .map(|i| {
                f.add_codes(
                    self.coeffs.get(i).copied().unwrap_or(0),
                    rhs.coeffs.get(i).copied().unwrap_or(0),
                )
            })
            .collect();
        Poly::from_codes(f, codes)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        Poly::from_codes(f, self.coeffs.iter().map(|&c| f.neg_code(c)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        debug_assert!(self.field == rhs.field, "mixed fields");
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![0u16; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = f.add_codes(out[i + j], f.mul_codes(a, b));
            }
        }
        Poly::from_codes(f, out)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

/// Selector for [`poly_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    DivMod,
    Gcd,
}

/// Result of [`poly_arith`]: a single polynomial, or quotient and remainder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyResult {
    Single(Poly),
    QuotRem(Poly, Poly),
}

pub fn poly_arith(f: &Poly, g: &Poly, op: PolyOp) -> Result<PolyResult> {
    if f.field != g.field {
        return Err(Error::MixedFields);
    }
    Ok(match op {
        PolyOp::Add => PolyResult::Single(f + g),
        PolyOp::Sub => PolyResult::Single(f - g),
        PolyOp::Mul => PolyResult::Single(f * g),
        PolyOp::Gcd => PolyResult::Single(f.gcd(g)),
        PolyOp::DivMod => {
            let (q, r) = f.divmod(g)?;
            PolyResult::QuotRem(q, r)
        }
    })
}
