use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{frobenius, FqDescriptor, FqElem};
use crate::polyring::{Poly, RatFrac, RingDesc};
use crate::scalar::Scalar;

/// Default bound on `q` for enumerating `Aut(R)`.
pub const DEFAULT_AUT_CAP: u32 = 27;

/// A ring automorphism of `F_q(t)`: coefficients go through `x -> x^{p^r}`,
/// then `t -> (at+b)/(ct+d)`.
///
/// The Möbius part is stored as a normalized `PGL_2(F_q)` representative:
/// `c = 1`, or `c = 0` and `d = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingAut {
    field: FqDescriptor,
    frob: u32,
    mobius: [FqElem; 4],
}

impl RingAut {
    pub fn new(field: &FqDescriptor, frob: u32, mobius: [FqElem; 4]) -> Result<Self> {
        let [a, b, c, d] = &mobius;
        if a.mul(d).sub(&b.mul(c)).is_zero() {
            return Err(Error::Singular);
        }
        let scale = if c.is_zero() { d.inv() } else { c.inv() }.expect("nonzero");
        let mobius = [a.mul(&scale), b.mul(&scale), c.mul(&scale), d.mul(&scale)];
        Ok(RingAut {
            field: field.clone(),
            frob: frob % field.e(),
            mobius,
        })
    }

    pub fn identity(field: &FqDescriptor) -> Self {
        RingAut {
            field: field.clone(),
            frob: 0,
            mobius: [field.one(), field.zero(), field.zero(), field.one()],
        }
    }

    /// Coefficientwise Frobenius power with `t` fixed.
    pub fn frobenius(field: &FqDescriptor, r: u32) -> Self {
        RingAut {
            frob: r % field.e(),
            ..Self::identity(field)
        }
    }

    pub fn field(&self) -> &FqDescriptor {
        &self.field
    }

    pub fn frob_power(&self) -> u32 {
        self.frob
    }

    pub fn mobius(&self) -> &[FqElem; 4] {
        &self.mobius
    }

    pub fn is_mobius_identity(&self) -> bool {
        let [a, b, c, d] = &self.mobius;
        a.is_one() && b.is_zero() && c.is_zero() && d.is_one()
    }

    pub fn is_identity(&self) -> bool {
        self.frob == 0 && self.is_mobius_identity()
    }

    /// `rho(t) = (at+b)/(ct+d)`.
    pub fn image_of_t(&self) -> RatFrac {
        let [a, b, c, d] = &self.mobius;
        RatFrac::new(
            Poly::new(&self.field, &[b.clone(), a.clone()]),
            Poly::new(&self.field, &[d.clone(), c.clone()]),
        )
        .expect("ct+d is nonzero")
    }

    /// Action on a field constant.
    pub fn apply_constant(&self, x: &FqElem) -> FqElem {
        frobenius(x, self.frob)
    }

    pub fn apply_poly(&self, f: &Poly) -> RatFrac {
        let [a, b, c, d] = &self.mobius;
        let f = f.frobenius_coeffs(self.frob);
        let Some(deg) = f.degree() else {
            return RatFrac::from_poly(f);
        };
        let lin_num = Poly::new(&self.field, &[b.clone(), a.clone()]);
        if c.is_zero() && d.is_one() {
            // affine substitution: Horner in at+b
            let out = f
                .coeffs()
                .iter()
                .rev()
                .fold(Poly::zero(&self.field), |acc, co| {
                    &(&acc * &lin_num) + &Poly::constant(co)
                });
            return RatFrac::from_poly(out);
        }
        let lin_den = Poly::new(&self.field, &[d.clone(), c.clone()]);
        // sum_i c_i (at+b)^i (ct+d)^(deg-i) over (ct+d)^deg
        let mut num = Poly::zero(&self.field);
        let mut num_pow = Poly::one(&self.field);
        let den_pows: Vec<Poly> = (0..=deg).map(|k| lin_den.pow(k as u64)).collect();
        for (i, co) in f.coeffs().iter().enumerate() {
            let term = &(&num_pow * &den_pows[deg - i]) * &Poly::constant(co);
            num = &num + &term;
            num_pow = &num_pow * &lin_num;
        }
        RatFrac::new(num, den_pows[deg].clone()).expect("nonzero denominator")
    }

    pub fn apply_frac(&self, x: &RatFrac) -> Result<RatFrac> {
        let num = self.apply_poly(x.num());
        let den = self.apply_poly(x.den());
        num.div(&den)
    }

    /// `rho(R) ⊆ R`: `rho(t) ∈ R` and each inverted irreducible maps to a unit.
    ///
    /// Inside the finite group `Aut(F_q(t))` the stabilizer of `R` is a
    /// finite cancellative monoid, hence a group, so inclusion suffices.
    pub fn stabilizes(&self, ring: &RingDesc) -> bool {
        if ring.field() != &self.field || !ring.contains(&self.image_of_t()) {
            return false;
        }
        ring.denoms()
            .iter()
            .all(|d| ring.is_unit_fraction(&self.apply_poly(d)))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &RingAut) -> RingAut {
        let f = |x: &FqElem| frobenius(x, self.frob);
        let [a2, b2, c2, d2] = &other.mobius;
        let (a2, b2, c2, d2) = (f(a2), f(b2), f(c2), f(d2));
        let [a1, b1, c1, d1] = &self.mobius;
        let m = [
            a2.mul(a1).add(&b2.mul(c1)),
            a2.mul(b1).add(&b2.mul(d1)),
            c2.mul(a1).add(&d2.mul(c1)),
            c2.mul(b1).add(&d2.mul(d1)),
        ];
        RingAut::new(&self.field, self.frob + other.frob, m).expect("product of invertible maps")
    }

    pub fn inverse(&self) -> RingAut {
        let e = self.field.e();
        let back = (e - self.frob) % e;
        // solve self ∘ inv = id: F^r(M_inv) = M^{-1}, so M_inv = F^{-r}(adj M)
        let [a, b, c, d] = &self.mobius;
        let g = |x: &FqElem| frobenius(x, back);
        let m = [g(d), g(&b.neg()), g(&c.neg()), g(a)];
        RingAut::new(&self.field, back, m).expect("adjugate of invertible map")
    }

    /// Least `k >= 1` with `self^k = id`.
    pub fn order(&self) -> u32 {
        let mut acc = self.clone();
        let mut k = 1;
        while !acc.is_identity() {
            acc = acc.compose(self);
            k += 1;
        }
        k
    }
}

impl fmt::Display for RingAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.mobius;
        write!(f, "frob^{},mobius({a},{b},{c},{d})", self.frob)
    }
}

impl fmt::Debug for RingAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Build a ring automorphism and check that it stabilizes `ring`.
pub fn ring_aut_make(ring: &RingDesc, frob: u32, mobius: [FqElem; 4]) -> Result<RingAut> {
    let rho = RingAut::new(ring.field(), frob, mobius)?;
    if !rho.stabilizes(ring) {
        return Err(Error::NotStabilizing(format!("{rho} on {ring}")));
    }
    Ok(rho)
}

pub fn ring_aut_apply(rho: &RingAut, ring: &RingDesc, x: &RatFrac) -> Result<RatFrac> {
    if !ring.contains(x) {
        return Err(Error::NotInRing(x.to_string()));
    }
    rho.apply_frac(x)
}

pub fn aut_group_enumerate(ring: &RingDesc) -> Result<Vec<RingAut>> {
    aut_group_enumerate_capped(ring, DEFAULT_AUT_CAP)
}

/// Every automorphism of `F_q(t)` stabilizing `ring`, ordered by Frobenius
/// power, then `c ∈ {0, 1}`, then `(a, b, d)` lexicographically.
pub fn aut_group_enumerate_capped(ring: &RingDesc, cap: u32) -> Result<Vec<RingAut>> {
    let field = ring.field();
    if field.q() > cap {
        return Err(Error::CapExceeded(format!(
            "Aut(R) enumeration over F_{} exceeds cap {cap}",
            field.q()
        )));
    }
    let elems = field.enumerate();
    let (zero, one) = (field.zero(), field.one());
    let mut out = Vec::new();
    for frob in 0..field.e() {
        for c in [&zero, &one] {
            for a in &elems {
                for b in &elems {
                    let ds: &[FqElem] = if c.is_zero() {
                        std::slice::from_ref(&one)
                    } else {
                        &elems
                    };
                    for d in ds {
                        let Ok(rho) =
                            RingAut::new(field, frob, [a.clone(), b.clone(), c.clone(), d.clone()])
                        else {
                            continue;
                        };
                        if rho.stabilizes(ring) {
                            out.push(rho);
                        }
                    }
                }
            }
        }
    }
    let set: HashSet<&RingAut> = out.iter().collect();
    for x in &out {
        if !set.contains(&x.inverse()) {
            return Err(Error::Invariant(format!(
                "inverse of {x} missing from Aut(R)"
            )));
        }
        for y in &out {
            if !set.contains(&x.compose(y)) {
                return Err(Error::Invariant(format!("{x} ∘ {y} missing from Aut(R)")));
            }
        }
    }
    Ok(out)
}

/// `s = ∏_{σ ∈ Aut(R)} σ(f)`: fixed by every automorphism of `R`, and a
/// non-unit whenever `f` is.
pub fn fixed_element_s(f: &Poly, ring: &RingDesc) -> Result<RatFrac> {
    let as_frac = RatFrac::from_poly(f.clone());
    if f.is_zero() || ring.is_unit(&as_frac)? {
        return Err(Error::UnitInput(f.to_string()));
    }
    let auts = aut_group_enumerate(ring)?;
    let mut s = RatFrac::constant(&ring.field().one());
    for sigma in &auts {
        s = s.mul(&sigma.apply_poly(f));
    }
    if !ring.contains(&s) {
        return Err(Error::Invariant(format!("s = {s} left R")));
    }
    Ok(s)
}
