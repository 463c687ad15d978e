use crate::error::{Error, Result};
use crate::gf::FqElem;
use crate::polyring::Poly;

/// Largest input degree accepted by [`factorize`].
pub const MAX_FACTOR_DEGREE: usize = 64;
/// Largest number of trial divisors tried at a single degree.
const TRIAL_BUDGET: u64 = 1 << 20;

/// `f = unit * prod(factor^mult)` with monic irreducible factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FqElem,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(&self.unit), |acc, (f, m)| {
                &acc * &f.pow(*m as u64)
            })
    }

    pub fn is_irreducible(&self) -> bool {
        matches!(self.factors.as_slice(), [(_, 1)])
    }
}

/// Factor by trial division with monic polynomials of increasing degree.
///
/// Once every factor of degree below `d` has been divided out, any monic
/// divisor of degree `d` is irreducible, so no separate irreducibility
/// sieve is needed.
pub fn factorize(f: &Poly) -> Result<Factorization> {
    let deg = f.degree().ok_or(Error::ZeroPolynomial)?;
    if deg > MAX_FACTOR_DEGREE {
        return Err(Error::Unsupported(format!(
            "factorization capped at degree {MAX_FACTOR_DEGREE}, got {deg}"
        )));
    }
    let field = f.field().clone();
    let unit = f.lead();
    let mut rest = f.monic();
    let mut factors = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        let trials = (field.q() as u64).checked_pow(d as u32).unwrap_or(u64::MAX);
        if trials > TRIAL_BUDGET {
            return Err(Error::Unsupported(format!(
                "trial division at degree {d} needs {trials} candidates"
            )));
        }
        for cand in Poly::monics_of_degree(&field, d) {
            let mut mult = 0;
            while let Some(q) = rest.div_exact(&cand) {
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                factors.push((cand, mult));
            }
            if rest.degree().unwrap_or(0) < 2 * d {
                break;
            }
        }
        d += 1;
    }
    if rest.degree().unwrap_or(0) > 0 {
        // what is left has no factor of degree <= deg/2
        match factors.iter_mut().find(|(g, _)| *g == rest) {
            Some((_, m)) => *m += 1,
            None => factors.push((rest, 1)),
        }
    }
    factors.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(Factorization { unit, factors })
}

pub fn is_irreducible(f: &Poly) -> Result<bool> {
    if f.is_constant() {
        return Ok(false);
    }
    Ok(factorize(f)?.is_irreducible())
}

/// Distinct monic irreducible factors, for callers that only need support.
pub fn irreducible_support(f: &Poly) -> Result<Vec<Poly>> {
    Ok(factorize(f)?.factors.into_iter().map(|(g, _)| g).collect())
}
