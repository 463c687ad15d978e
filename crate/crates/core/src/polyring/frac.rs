use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::gf::{FqDescriptor, FqElem};
use crate::polyring::Poly;
use crate::scalar::Scalar;
use crate::text::split_top_level;

/// A reduced fraction in `F_q(t)`: monic denominator, coprime to the numerator.
#[derive(Clone)]
pub struct RatFrac {
    num: Poly,
    den: Poly,
}

impl RatFrac {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivideByZero);
        }
        if num.is_zero() {
            return Ok(Self::from_poly(num));
        }
        if den.is_one() {
            return Ok(RatFrac { num, den });
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let lead_inv = den.lead().inv().expect("den nonzero");
        if !lead_inv.is_one() {
            num = num.scale(&lead_inv);
            den = den.scale(&lead_inv);
        }
        Ok(RatFrac { num, den })
    }

    pub fn from_poly(num: Poly) -> Self {
        let den = Poly::one(num.field());
        RatFrac { num, den }
    }

    pub fn constant(c: &FqElem) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn t(field: &FqDescriptor) -> Self {
        Self::from_poly(Poly::t(field))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn field(&self) -> &FqDescriptor {
        self.num.field()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The constant value, when both parts are constant.
    pub fn as_constant(&self) -> Option<FqElem> {
        (self.num.is_constant() && self.den.is_one()).then(|| self.num.coeff(0))
    }

    pub fn pow(&self, k: u64) -> Self {
        RatFrac {
            num: self.num.pow(k),
            den: self.den.pow(k),
        }
    }

    /// Integer power; negative exponents invert. Panics on `0^{-k}`.
    pub fn powi(&self, k: i64) -> Self {
        if k >= 0 {
            self.pow(k as u64)
        } else {
            self.inv().expect("nonzero base").pow(k.unsigned_abs())
        }
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv().ok_or(Error::DivideByZero)?))
    }

    /// Parse `num / den` (or a bare polynomial).
    pub fn parse(field: &FqDescriptor, s: &str) -> Result<Self> {
        let parts = split_top_level(s, &['/'])?;
        match parts.as_slice() {
            [(_, num)] => Ok(Self::from_poly(Poly::parse(field, num)?)),
            [(_, num), (_, den)] => Self::new(Poly::parse(field, num)?, Poly::parse(field, den)?),
            _ => Err(Error::Parse(format!("more than one `/` in `{s}`"))),
        }
    }
}

impl Scalar for RatFrac {
    fn zero_like(&self) -> Self {
        Self::from_poly(Poly::zero(self.field()))
    }

    fn one_like(&self) -> Self {
        Self::from_poly(Poly::one(self.field()))
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return RatFrac::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        RatFrac::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .unwrap()
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(&self.num * &rhs.num);
        }
        RatFrac::new(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }

    fn neg(&self) -> Self {
        RatFrac {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        Some(RatFrac::new(self.den.clone(), self.num.clone()).unwrap())
    }

    /// `(deg den, deg num, numerator coefficients, denominator coefficients)`.
    fn total_cmp(&self, other: &Self) -> Ordering {
        let deg = |p: &Poly| p.degree().map(|d| d as i64).unwrap_or(-1);
        deg(&self.den)
            .cmp(&deg(&other.den))
            .then_with(|| deg(&self.num).cmp(&deg(&other.num)))
            .then_with(|| self.num.total_cmp(&other.num))
            .then_with(|| self.den.total_cmp(&other.den))
    }

    fn from_int_like(&self, n: i64) -> Self {
        Self::constant(&self.field().from_int(n))
    }
}

impl PartialEq for RatFrac {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}

impl Eq for RatFrac {}

impl Hash for RatFrac {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Display for RatFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{} / {}", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
