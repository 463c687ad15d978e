//! Witness families for infinitely many twisted classes, and the exact
//! certificates that separate them: trace degrees in type A and C, unit
//! obstructions for the unipotent elements `x_λ` in types B and D.

use std::fmt;
use std::io::Write;

use crate::auts::b_matrix;
use crate::error::{Error, Result};
use crate::gf::FqElem;
use crate::groups::{form_matrix, Family, GroupCtx, GroupKind, GrpElem};
use crate::matrix::Matrix;
use crate::polyring::{Poly, RatFrac, RingDesc};
use crate::scalar::{Scalar, ScalarDomain};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WitnessFamily {
    /// `x_m` in `SL_n`.
    AXm,
    /// `y_m` in `Sp_2n`.
    CYm,
    /// `x_λ` in `SO_2n+1`.
    BXLambda,
    /// `x_λ B` in `SO_2n`.
    DXLambdaB,
}

impl WitnessFamily {
    pub fn as_str(self) -> &'static str {
        match self {
            WitnessFamily::AXm => "A_xm",
            WitnessFamily::CYm => "C_ym",
            WitnessFamily::BXLambda => "B_xlambda",
            WitnessFamily::DXLambdaB => "D_xlambdaB",
        }
    }
}

impl fmt::Display for WitnessFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A ring `R`, a non-unit non-constant `s ∈ R`, a family and a rank.
#[derive(Debug, Clone)]
pub struct WitnessConfig {
    ring: RingDesc,
    s: RatFrac,
    family: WitnessFamily,
    n: usize,
}

impl WitnessConfig {
    pub fn new(ring: RingDesc, s: RatFrac, family: WitnessFamily, n: usize) -> Result<Self> {
        if ring.is_unit(&s)? {
            return Err(Error::PreconditionFailed(format!(
                "s = {s} is a unit of {ring}"
            )));
        }
        if s.as_constant().is_some() {
            return Err(Error::PreconditionFailed(format!("s = {s} is constant")));
        }
        let min = match family {
            WitnessFamily::AXm | WitnessFamily::CYm | WitnessFamily::BXLambda => 2,
            WitnessFamily::DXLambdaB => 3,
        };
        if n < min {
            return Err(Error::BadRank(n));
        }
        Ok(WitnessConfig { ring, s, family, n })
    }

    pub fn ring(&self) -> &RingDesc {
        &self.ring
    }

    pub fn s(&self) -> &RatFrac {
        &self.s
    }

    pub fn family(&self) -> WitnessFamily {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    fn group(&self, family: Family, n: usize) -> Result<GroupCtx<RingDesc>> {
        GroupCtx::new(GroupKind::new(family, n)?, self.ring.clone())
    }
}

fn elementary<S: Scalar>(dim: usize, i: usize, j: usize, a: &S) -> Matrix<S> {
    let mut m = Matrix::identity(dim, a);
    m.set(i, j, a.clone());
    m
}

/// `x_m = [[1 - s^2m, s^m], [-s^m, 1]] ⊕ I_{n-2}` in `SL_n(R)`.
pub fn xm(m: u32, cfg: &WitnessConfig, n: usize) -> Result<GrpElem<RingDesc>> {
    let ctx = cfg.group(Family::SL, n)?;
    let u = cfg.s.pow(m as u64);
    let mut x = Matrix::identity(n, &u);
    x.set(0, 0, u.one_like().sub(&u.mul(&u)));
    x.set(0, 1, u.clone());
    x.set(1, 0, u.neg());
    let product = elementary(n, 0, 1, &u).mul(&elementary(n, 1, 0, &u.neg()));
    if product != x {
        return Err(Error::CertificateMismatch(format!(
            "e12(u) e21(-u) != x_{m}"
        )));
    }
    ctx.element(x)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceCertificate {
    pub m: u32,
    pub r: u32,
    /// `tr(x_m^r)` of the `n x n` embedding.
    pub trace: RatFrac,
    pub deg_t: usize,
    pub expected_deg_t: usize,
    pub leading_coeff: FqElem,
    pub expected_leading_coeff: FqElem,
}

impl TraceCertificate {
    pub fn passed(&self) -> bool {
        self.trace.is_polynomial()
            && self.deg_t == self.expected_deg_t
            && self.leading_coeff == self.expected_leading_coeff
    }
}

/// `tr(x^r)` for `x = [[1-u^2, u], [-u, 1]]` as a polynomial in `u`, from
/// `tr(x^r) = (2 - u^2) tr(x^{r-1}) - tr(x^{r-2})`.
pub fn trace_recurrence(field: &crate::gf::FqDescriptor, r: u32) -> Poly {
    let a = Poly::from_ints(field, &[2, 0, -1]);
    let mut prev = Poly::from_ints(field, &[2]);
    let mut cur = a.clone();
    if r == 0 {
        return prev;
    }
    for _ in 1..r {
        let next = &(&a * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn substitute(p: &Poly, u: &RatFrac) -> RatFrac {
    p.coeffs().iter().rev().fold(u.zero_like(), |acc, c| {
        acc.mul(u).add(&RatFrac::constant(c))
    })
}

/// Degree and leading coefficient of `tr(x_m^r)`, computed both from the
/// recurrence in `u = s^m` and from the matrix power.
pub fn trace_certificate(m: u32, r: u32, cfg: &WitnessConfig) -> Result<TraceCertificate> {
    if m == 0 || r == 0 {
        return Err(Error::PreconditionFailed("m, r >= 1".into()));
    }
    if !cfg.s.is_polynomial() {
        return Err(Error::PreconditionFailed(format!(
            "trace degrees need a polynomial s, got {}",
            cfg.s
        )));
    }
    let field = cfg.ring.field();
    let rec = trace_recurrence(field, r);
    let sign = if r.is_multiple_of(2) {
        field.one()
    } else {
        field.one().neg()
    };
    if rec.degree() != Some(2 * r as usize) || rec.lead() != sign {
        return Err(Error::CertificateMismatch(format!(
            "recurrence for r = {r} gave {rec}"
        )));
    }
    let n = cfg.n;
    let u = cfg.s.pow(m as u64);
    let from_rec = substitute(&rec, &u).add(&RatFrac::constant(&field.from_int(n as i64 - 2)));
    let direct = xm(m, cfg, n)?.matrix().pow(r as u64).trace();
    if from_rec != direct {
        return Err(Error::CertificateMismatch(format!(
            "tr(x_{m}^{r}): recurrence {from_rec}, direct {direct}"
        )));
    }
    let s_poly = cfg.s.num();
    let s_deg = s_poly.degree().expect("s nonzero");
    let expected_deg_t = 2 * r as usize * m as usize * s_deg;
    let expected_leading_coeff = sign.mul(&s_poly.lead().pow(2 * r as u64 * m as u64));
    let num = direct.num();
    Ok(TraceCertificate {
        m,
        r,
        deg_t: num.degree().unwrap_or(0),
        leading_coeff: num.lead(),
        trace: direct,
        expected_deg_t,
        expected_leading_coeff,
    })
}

/// `y_m = diag(X, X^{-T})` in `Sp_2n(R)`, with `X` the embedding of `x_m`.
pub fn ym(m: u32, cfg: &WitnessConfig, n: usize) -> Result<GrpElem<RingDesc>> {
    let x = xm(m, cfg, n)?;
    let x_inv_t = x.inv().matrix().transpose();
    let ctx = cfg.group(Family::Sp, n)?;
    ctx.element(Matrix::block_diagonal(&[x.matrix().clone(), x_inv_t]))
}

/// `tr(y_m^r) = 2 tr(x_m^r)`.
pub fn trace_doubling_check(m: u32, r: u32, cfg: &WitnessConfig) -> Result<bool> {
    let n = cfg.n;
    let y = ym(m, cfg, n)?.matrix().pow(r as u64).trace();
    let x = xm(m, cfg, n)?.matrix().pow(r as u64).trace();
    Ok(y == x.add(&x))
}

fn lambda_matrix<D: ScalarDomain>(ctx: &GroupCtx<D>, lambda: &D::Elem) -> Result<Matrix<D::Elem>> {
    let family = ctx.kind().family().linear();
    if !matches!(family, Family::SOodd | Family::SOeven) {
        return Err(Error::IncompatibleKind(format!(
            "x_lambda lives in SO, not {}",
            ctx.kind()
        )));
    }
    let n = ctx.kind().rank();
    let mut x = Matrix::identity(ctx.dim(), lambda);
    x.set(0, n + 1, lambda.neg());
    x.set(1, n, lambda.clone());
    Ok(x)
}

/// The unipotent `x_λ = [[I, y_λ], [0, I]]` (with a corner `1` in odd
/// dimension), `y_λ` having `-λ` at `(1,2)` and `λ` at `(2,1)`.
pub fn xlambda<D: ScalarDomain>(lambda: &D::Elem, ctx: &GroupCtx<D>) -> Result<GrpElem<D>> {
    if lambda.is_zero() {
        return Err(Error::ZeroLambda);
    }
    ctx.element(lambda_matrix(ctx, lambda)?)
}

/// `x_λ^r = x_{rλ}` in odd dimension and `(x_λ B)^r = x_{rλ}` for even `r`
/// in even dimension. When `p | r` the right side is the identity.
pub fn power_identity_check<D: ScalarDomain>(
    lambda: &D::Elem,
    r: u32,
    ctx: &GroupCtx<D>,
) -> Result<bool> {
    let x = xlambda(lambda, ctx)?;
    let r_lambda = lambda.mul(&lambda.from_int_like(r as i64));
    let rhs = lambda_matrix(ctx, &r_lambda)?;
    let lhs = match ctx.kind().family().linear() {
        Family::SOodd => x.matrix().pow(r as u64),
        _ => {
            if r % 2 == 1 {
                return Err(Error::OddPower(r));
            }
            let b = b_matrix(ctx.kind().rank(), lambda)?;
            x.matrix().mul(&b).pow(r as u64)
        }
    };
    Ok(lhs == rhs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Separated,
    NotSeparated,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Separated => "Separated",
            Verdict::NotSeparated => "NotSeparated",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionReport {
    pub lambda: RatFrac,
    pub lambda_prime: RatFrac,
    /// `λ'^2 / λ^2`.
    pub ratio: RatFrac,
    pub ratio_is_unit: bool,
    pub inverse_is_unit: bool,
    pub verdict: Verdict,
}

/// Conjugate `x_λ^r`, `x_{λ'}^r` force `λ'^2 = λ^2 u` with `u ∈ R^×`; a ratio
/// that is not a unit (in either direction) separates the two classes.
pub fn obstruction_report(
    lambda: &RatFrac,
    lambda_prime: &RatFrac,
    ring: &RingDesc,
) -> Result<ObstructionReport> {
    for x in [lambda, lambda_prime] {
        if !ring.contains(x) {
            return Err(Error::NotInRing(x.to_string()));
        }
        if x.is_zero() {
            return Err(Error::ZeroLambda);
        }
    }
    let ratio = lambda_prime.pow(2).div(&lambda.pow(2))?;
    let ratio_is_unit = ring.is_unit_fraction(&ratio);
    let inverse_is_unit = ring.is_unit_fraction(&ratio.inv().expect("nonzero"));
    let verdict = if ratio_is_unit || inverse_is_unit {
        Verdict::NotSeparated
    } else {
        Verdict::Separated
    };
    Ok(ObstructionReport {
        lambda: lambda.clone(),
        lambda_prime: lambda_prime.clone(),
        ratio,
        ratio_is_unit,
        inverse_is_unit,
        verdict,
    })
}

/// `g = diag(c I_2 ⊕ I, c^{-1} I_2 ⊕ I [, 1])`, checked to satisfy
/// `g x_λ g^{-1} = x_{c^2 λ}`.
pub fn explicit_conjugator<D: ScalarDomain>(
    lambda: &D::Elem,
    c: &D::Elem,
    ctx: &GroupCtx<D>,
) -> Result<GrpElem<D>> {
    if !ctx.domain().is_unit(c) {
        return Err(Error::NotUnit(c.to_string()));
    }
    let n = ctx.kind().rank();
    let c_inv = c.inv().expect("unit");
    let mut diag = vec![c.one_like(); ctx.dim()];
    diag[0] = c.clone();
    diag[1] = c.clone();
    diag[n] = c_inv.clone();
    diag[n + 1] = c_inv;
    let g = ctx.element(Matrix::diagonal(&diag))?;
    let x = xlambda(lambda, ctx)?;
    let target = xlambda(&lambda.mul(&c.mul(c)), ctx)?;
    if x.conj_by(&g) != target {
        return Err(Error::CertificateMismatch(
            "g x_lambda g^-1 != x_{c^2 lambda}".into(),
        ));
    }
    Ok(g)
}

/// The blocks `g = [[K, L, a], [M, N, a], [b, b, a]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition<S: Scalar> {
    pub k: Matrix<S>,
    pub l: Matrix<S>,
    pub m: Matrix<S>,
    pub n: Matrix<S>,
    /// Last column and last row in odd dimension.
    pub corner: Option<(Vec<S>, Vec<S>)>,
}

impl<S: Scalar> BlockDecomposition<S> {
    pub fn of(g: &Matrix<S>, n: usize) -> Self {
        let corner = (g.rows() == 2 * n + 1).then(|| {
            let z = 2 * n;
            let a = (0..=z).map(|i| g.get(i, z).clone()).collect();
            let b = (0..=z).map(|j| g.get(z, j).clone()).collect();
            (a, b)
        });
        BlockDecomposition {
            k: g.block(0, 0, n, n),
            l: g.block(0, n, n, n),
            m: g.block(n, 0, n, n),
            n: g.block(n, n, n, n),
            corner,
        }
    }

    pub fn reassemble(&self) -> Matrix<S> {
        let n = self.k.rows();
        let dim = if self.corner.is_some() {
            2 * n + 1
        } else {
            2 * n
        };
        let mut g = Matrix::zero(dim, dim, self.k.like());
        g.set_block(0, 0, &self.k);
        g.set_block(0, n, &self.l);
        g.set_block(n, 0, &self.m);
        g.set_block(n, n, &self.n);
        if let Some((a, b)) = &self.corner {
            for (i, x) in a.iter().enumerate() {
                g.set(i, 2 * n, x.clone());
            }
            for (j, x) in b.iter().enumerate() {
                g.set(2 * n, j, x.clone());
            }
        }
        g
    }
}

/// For `g` with `x_λ g = g x_{λ'}`: the vanishing pattern of `M`, `K`, `N`
/// (and the corner for odd dimension), the four linear relations between
/// `N_1` and `K_1`, and `λ'^2 det(K_1) det(N_1) = λ^2 det(N_1)^2`.
pub fn block_constraint_check<D: ScalarDomain>(
    g: &GrpElem<D>,
    lambda: &D::Elem,
    lambda_prime: &D::Elem,
) -> Result<bool> {
    let ctx = g.ctx();
    let x = xlambda(lambda, ctx)?;
    let xp = xlambda(lambda_prime, ctx)?;
    if x.matrix().mul(g.matrix()) != g.matrix().mul(xp.matrix()) {
        return Err(Error::NotAConjugator);
    }
    Ok(block_relations(
        g.matrix(),
        ctx.kind().rank(),
        lambda,
        lambda_prime,
    ))
}

/// The same check when only `x_λ g = ± g x_{λ'}` holds, as in a projective
/// quotient: squaring removes the sign, so the relations are checked for
/// `x_{2λ} g = g x_{2λ'}`.
pub fn block_constraint_check_projective<D: ScalarDomain>(
    g: &GrpElem<D>,
    lambda: &D::Elem,
    lambda_prime: &D::Elem,
) -> Result<bool> {
    let ctx = g.ctx().linear()?;
    let lin = |l: &D::Elem| -> Result<Matrix<D::Elem>> { Ok(xlambda(l, &ctx)?.matrix().clone()) };
    let (x, xp) = (lin(lambda)?, lin(lambda_prime)?);
    let (lhs, rhs) = (x.mul(g.matrix()), g.matrix().mul(&xp));
    if lhs != rhs && lhs != rhs.neg() {
        return Err(Error::NotAConjugator);
    }
    let two = lambda.from_int_like(2);
    let (l2, lp2) = (lambda.mul(&two), lambda_prime.mul(&two));
    let (x2, xp2) = (lin(&l2)?, lin(&lp2)?);
    if x2.mul(g.matrix()) != g.matrix().mul(&xp2) {
        return Err(Error::Invariant("squared relation failed".into()));
    }
    Ok(block_relations(g.matrix(), ctx.kind().rank(), &l2, &lp2))
}

fn block_relations<S: Scalar>(g: &Matrix<S>, n: usize, lambda: &S, lambda_prime: &S) -> bool {
    let blocks = BlockDecomposition::of(g, n);
    let (k, m, nn) = (&blocks.k, &blocks.m, &blocks.n);
    let m_ok = (0..n).all(|i| (0..n).all(|j| (i >= 2 && j >= 2) || m.get(i, j).is_zero()));
    let kn_ok = (2..n).all(|r| {
        nn.get(0, r).is_zero()
            && nn.get(1, r).is_zero()
            && k.get(r, 0).is_zero()
            && k.get(r, 1).is_zero()
    });
    let (l, lp) = (lambda, lambda_prime);
    let relations = [
        (l.mul(nn.get(1, 0)).neg(), lp.mul(k.get(0, 1))),
        (l.mul(nn.get(1, 1)), lp.mul(k.get(0, 0))),
        (l.mul(nn.get(0, 0)), lp.mul(k.get(1, 1))),
        (l.mul(nn.get(0, 1)), lp.mul(k.get(1, 0)).neg()),
    ];
    let rel_ok = relations.iter().all(|(a, b)| a == b);
    let corner_ok = match &blocks.corner {
        None => true,
        Some((a, b)) => a[n].is_zero() && a[n + 1].is_zero() && b[0].is_zero() && b[1].is_zero(),
    };
    let det2 = |x: &Matrix<S>| {
        x.get(0, 0)
            .mul(x.get(1, 1))
            .sub(&x.get(0, 1).mul(x.get(1, 0)))
    };
    let (dk, dn) = (det2(k), det2(nn));
    let alpha = dk.mul(&dn);
    let unit_ok = lp.mul(lp).mul(&alpha) == l.mul(l).mul(&dn.mul(&dn));
    m_ok && kn_ok && rel_ok && corner_ok && unit_ok
}

/// Graph automorphisms of `D_4` that can be requested from the suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum D4Graph {
    Tau,
    Sigma,
    SigmaSquared,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct D4Report {
    pub b_involution: bool,
    pub b_preserves_form: bool,
    /// `(k, r, (x_{s^k} B)^r = x_{r s^k})`.
    pub power_identities: Vec<(u32, u32, bool)>,
    pub obstructions: Vec<(u32, u32, ObstructionReport)>,
}

impl D4Report {
    pub fn passed(&self) -> bool {
        self.b_involution
            && self.b_preserves_form
            && self.power_identities.iter().all(|p| p.2)
            && self
                .obstructions
                .iter()
                .all(|o| o.2.verdict == Verdict::Separated)
    }
}

/// The reflection case of `D_4`: `B` checks, `(x_{s^k} B)^r = x_{r s^k}` for
/// even `r`, and separation of the pairs `(s^k, s^{k'})` in `SO_8(R)`.
pub fn d4_tau_suite(
    cfg: &WitnessConfig,
    graph: D4Graph,
    k_max: u32,
    r_max: u32,
) -> Result<D4Report> {
    if graph != D4Graph::Tau {
        return Err(Error::TrialityUnsupported);
    }
    if cfg.n != 4 {
        return Err(Error::BadRank(cfg.n));
    }
    let ctx = cfg.group(Family::SOeven, 4)?;
    let one = cfg.ring.one();
    let b = b_matrix(4, &one)?;
    let a = form_matrix(ctx.kind(), &one)?;
    let mut power_identities = Vec::new();
    let mut obstructions = Vec::new();
    for k in 1..=k_max {
        let lambda = cfg.s.pow(k as u64);
        for r in (2..=r_max).step_by(2) {
            power_identities.push((k, r, power_identity_check(&lambda, r, &ctx)?));
        }
        for k2 in k + 1..=k_max {
            obstructions.push((
                k,
                k2,
                obstruction_report(&lambda, &cfg.s.pow(k2 as u64), &cfg.ring)?,
            ));
        }
    }
    Ok(D4Report {
        b_involution: b.mul(&b).is_identity(),
        b_preserves_form: b.transpose().mul(&a).mul(&b) == a,
        power_identities,
        obstructions,
    })
}

/// One row of a certificate table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateRow {
    pub family: String,
    /// `m` for trace families, `λ` (or a pair) for unipotent families.
    pub index: String,
    pub r: String,
    pub deg_t: String,
    pub expected_deg_t: String,
    pub leading_coeff: String,
    pub verdict: String,
}

impl CertificateRow {
    pub fn from_trace(family: WitnessFamily, cert: &TraceCertificate) -> Self {
        CertificateRow {
            family: family.to_string(),
            index: cert.m.to_string(),
            r: cert.r.to_string(),
            deg_t: cert.deg_t.to_string(),
            expected_deg_t: cert.expected_deg_t.to_string(),
            leading_coeff: cert.leading_coeff.to_string(),
            verdict: if cert.passed() { "pass" } else { "fail" }.into(),
        }
    }

    pub fn passed(&self) -> bool {
        matches!(self.verdict.as_str(), "pass" | "Separated")
    }
}

pub const CERTIFICATE_HEADER: [&str; 7] = [
    "family",
    "index",
    "r",
    "deg_t",
    "expected_deg_t",
    "leading_coeff",
    "verdict",
];

pub fn write_certificate_csv<W: Write>(rows: &[CertificateRow], out: W) -> Result<()> {
    let io = |e: csv::Error| Error::Invariant(format!("csv: {e}"));
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CERTIFICATE_HEADER).map_err(io)?;
    for row in rows {
        w.write_record([
            &row.family,
            &row.index,
            &row.r,
            &row.deg_t,
            &row.expected_deg_t,
            &row.leading_coeff,
            &row.verdict,
        ])
        .map_err(io)?;
    }
    w.flush()
        .map_err(|e| Error::Invariant(format!("csv: {e}")))?;
    Ok(())
}
