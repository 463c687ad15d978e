use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{FqDescriptor, FqElem};
use crate::polyring::{factorize, Poly, RatFrac, RingAut};
use crate::scalar::{Scalar, ScalarDomain};

/// The ring `R = F_q[t][1/d_1, ..., 1/d_k]` for a finite set of monic
/// irreducibles `d_i`; the empty set gives `F_q[t]`.
#[derive(Clone, PartialEq, Eq)]
pub struct RingDesc {
    field: FqDescriptor,
    denoms: Vec<Poly>,
}

impl RingDesc {
    pub fn new(field: &FqDescriptor, denoms: Vec<Poly>) -> Result<Self> {
        let mut denoms = denoms;
        for d in &denoms {
            if d.field() != field {
                return Err(Error::MixedFields);
            }
            if !d.is_monic() {
                return Err(Error::InvalidRing(format!("{d} is not monic")));
            }
            if !factorize(d)?.is_irreducible() {
                return Err(Error::InvalidRing(format!("{d} is not irreducible")));
            }
        }
        denoms.sort_by(|a, b| a.total_cmp(b));
        if denoms.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidRing("repeated denominator".into()));
        }
        Ok(RingDesc {
            field: field.clone(),
            denoms,
        })
    }

    /// `F_q[t]`.
    pub fn polynomial(field: &FqDescriptor) -> Self {
        RingDesc {
            field: field.clone(),
            denoms: Vec::new(),
        }
    }

    /// Parse a comma-separated list of denominators (`t,t^2+1`). Empty text
    /// gives `F_q[t]`; `*` (every irreducible, i.e. the whole fraction
    /// field) is rejected since `R` must be a proper subring of `F_q(t)`.
    pub fn parse(field: &FqDescriptor, denoms: &str) -> Result<Self> {
        let trimmed = denoms.trim();
        if trimmed == "*" || trimmed.eq_ignore_ascii_case("all") {
            return Err(Error::InvalidRing(
                "R must be a proper subring of F_q(t); cannot invert every irreducible".into(),
            ));
        }
        if trimmed.is_empty() {
            return Ok(Self::polynomial(field));
        }
        let polys = trimmed
            .split(',')
            .map(|s| Poly::parse(field, s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, polys)
    }

    pub fn field(&self) -> &FqDescriptor {
        &self.field
    }

    pub fn denoms(&self) -> &[Poly] {
        &self.denoms
    }

    /// Divide out every inverted irreducible; `R`-units among polynomials
    /// are exactly those that reduce to a nonzero constant.
    fn strip(&self, f: &Poly) -> Poly {
        let mut rest = f.clone();
        for d in &self.denoms {
            while let Some(q) = rest.div_exact(d) {
                rest = q;
            }
        }
        rest
    }

    pub fn contains(&self, x: &RatFrac) -> bool {
        x.field() == &self.field && self.strip(x.den()).is_constant()
    }

    /// Units of `R`: nonzero elements whose numerator factors are inverted.
    pub fn is_unit(&self, x: &RatFrac) -> Result<bool> {
        if !self.contains(x) {
            return Err(Error::NotInRing(x.to_string()));
        }
        Ok(!x.is_zero() && self.strip(x.num()).is_constant())
    }

    /// Unit test that answers `false` for fractions outside `R`.
    pub fn is_unit_fraction(&self, x: &RatFrac) -> bool {
        self.is_unit(x).unwrap_or(false)
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.denoms.is_empty()
    }
}

/// Unit test in `R`; errors when `x` is not an element of `R`.
pub fn is_unit(x: &RatFrac, ring: &RingDesc) -> Result<bool> {
    ring.is_unit(x)
}

impl fmt::Debug for RingDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}[t]", self.field.q())?;
        if !self.denoms.is_empty() {
            let list: Vec<String> = self.denoms.iter().map(|d| format!("1/({d})")).collect();
            write!(f, "[{}]", list.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Display for RingDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl ScalarDomain for RingDesc {
    type Elem = RatFrac;

    fn field(&self) -> &FqDescriptor {
        &self.field
    }

    fn constant(&self, c: &FqElem) -> RatFrac {
        RatFrac::constant(c)
    }

    fn contains(&self, x: &RatFrac) -> bool {
        RingDesc::contains(self, x)
    }

    fn is_unit(&self, x: &RatFrac) -> bool {
        self.is_unit_fraction(x)
    }

    fn elements(&self) -> Option<Vec<RatFrac>> {
        None
    }

    fn stabilized_by(&self, rho: &RingAut) -> bool {
        rho.stabilizes(self)
    }

    fn apply_ring_aut(&self, rho: &RingAut, x: &RatFrac) -> Result<RatFrac> {
        if !self.contains(x) {
            return Err(Error::NotInRing(x.to_string()));
        }
        rho.apply_frac(x)
    }

    fn parse_elem(&self, s: &str) -> Result<RatFrac> {
        let x = RatFrac::parse(&self.field, s)?;
        if !self.contains(&x) {
            return Err(Error::NotInRing(x.to_string()));
        }
        Ok(x)
    }

    fn describe(&self) -> String {
        format!("{self:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::fq_make;

    fn f3() -> FqDescriptor {
        fq_make(3, 1).unwrap()
    }

    #[test]
    fn units_of_laurent_ring() {
        let f = f3();
        let r = RingDesc::parse(&f, "t").unwrap();
        let t5 = RatFrac::parse(&f, "t^5").unwrap();
        assert!(is_unit(&t5, &r).unwrap());
        assert!(!is_unit(&RatFrac::parse(&f, "t+1").unwrap(), &r).unwrap());
        assert!(is_unit(&RatFrac::parse(&f, "2 / t^3").unwrap(), &r).unwrap());
        assert_eq!(
            is_unit(&RatFrac::parse(&f, "1 / t+1").unwrap(), &r).unwrap_err(),
            Error::NotInRing("1 / t+1".into())
        );
    }

    #[test]
    fn units_of_polynomial_ring() {
        let f = f3();
        let r = RingDesc::polynomial(&f);
        assert!(is_unit(&RatFrac::constant(&f.from_int(2)), &r).unwrap());
        assert!(!is_unit(&RatFrac::t(&f), &r).unwrap());
        assert!(!is_unit(&RatFrac::constant(&f.zero()), &r).unwrap());
    }

    #[test]
    fn validation() {
        let f = f3();
        assert!(matches!(
            RingDesc::parse(&f, "t^2-1"),
            Err(Error::InvalidRing(_))
        ));
        assert!(matches!(
            RingDesc::parse(&f, "2*t"),
            Err(Error::InvalidRing(_))
        ));
        assert!(matches!(
            RingDesc::parse(&f, "t,t"),
            Err(Error::InvalidRing(_))
        ));
        assert!(matches!(
            RingDesc::parse(&f, "*"),
            Err(Error::InvalidRing(_))
        ));
        let r = RingDesc::parse(&f, "t^2+1, t").unwrap();
        assert_eq!(r.denoms()[0].to_string(), "t");
        assert_eq!(r.to_string(), "F_3[t][1/(t), 1/(t^2+1)]");
    }
}
