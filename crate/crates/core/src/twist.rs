//! Twisted conjugation `g . x = g x σ(g)^{-1}`: orbits, Reidemeister numbers
//! of finite groups and decision procedures for twisted conjugacy.

use std::collections::HashMap;
use std::fmt;
use std::io::Write;

use indexmap::IndexSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::auts::GroupAut;
use crate::error::{Error, Result};
use crate::groups::{GroupCtx, GrpElem, DEFAULT_ENUMERATION_CAP};
use crate::matrix::Matrix;
use crate::scalar::{Scalar, ScalarDomain};

/// Largest group handled by plain enumeration in the decision ladder.
pub const FULL_ENUMERATION_CAP: usize = 100_000;
/// Largest orbit explored by generator search.
pub const BFS_CAP: usize = 1_000_000;
/// Largest number of `(g, x)` pairs visited by the Burnside sum.
pub const BURNSIDE_PAIR_CAP: u64 = 10_000_000;
/// Largest commutant dimension enumerated exhaustively by the linear solver.
pub const LINEAR_SOLVE_MAX_DIM: usize = 8;
const LINEAR_SOLVE_BUDGET: f64 = 1e6;

fn same_ctx<D: ScalarDomain>(a: &GroupCtx<D>, b: &GroupCtx<D>) -> Result<()> {
    if a != b {
        return Err(Error::IncompatibleKind(format!("{a} vs {b}")));
    }
    Ok(())
}

/// `g x σ(g)^{-1}`.
pub fn twist_step<D: ScalarDomain>(
    g: &GrpElem<D>,
    x: &GrpElem<D>,
    sigma: &GroupAut<D>,
) -> Result<GrpElem<D>> {
    same_ctx(g.ctx(), x.ctx())?;
    same_ctx(g.ctx(), sigma.ctx())?;
    Ok(g.mul(x).mul(&sigma.apply(g)?.inv()))
}

/// Generators paired with `σ(gen)^{-1}`, so one action step costs two products.
struct Stepper<D: ScalarDomain> {
    gens: Vec<(GrpElem<D>, GrpElem<D>)>,
}

impl<D: ScalarDomain> Stepper<D> {
    fn new(sigma: &GroupAut<D>) -> Result<Self> {
        let gens = sigma
            .ctx()
            .generators()?
            .into_iter()
            .map(|g| {
                let back = sigma.apply(&g)?.inv();
                Ok((g, back))
            })
            .collect::<Result<_>>()?;
        Ok(Stepper { gens })
    }

    fn step(&self, i: usize, x: &GrpElem<D>) -> GrpElem<D> {
        let (g, back) = &self.gens[i];
        g.mul(x).mul(back)
    }
}

/// The twisted classes of a finite group.
pub struct TwistedOrbitReport<D: ScalarDomain> {
    pub aut: GroupAut<D>,
    pub representatives: Vec<GrpElem<D>>,
    pub sizes: Vec<usize>,
    pub truncated: bool,
}

impl<D: ScalarDomain> TwistedOrbitReport<D> {
    pub fn count(&self) -> usize {
        self.representatives.len()
    }
}

/// Partition the group into twisted classes; each representative is the
/// first member of its class in enumeration order.
pub fn twisted_orbits<D: ScalarDomain>(
    sigma: &GroupAut<D>,
    cap: usize,
) -> Result<TwistedOrbitReport<D>> {
    let elems: IndexSet<GrpElem<D>> = sigma.ctx().enumerate(cap)?.into_iter().collect();
    let stepper = Stepper::new(sigma)?;
    let mut seen = vec![false; elems.len()];
    let mut representatives = Vec::new();
    let mut sizes = Vec::new();
    for start in 0..elems.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = vec![start];
        let mut head = 0;
        while head < queue.len() {
            let cur = &elems[queue[head]];
            head += 1;
            for i in 0..stepper.gens.len() {
                let next = stepper.step(i, cur);
                let idx = elems.get_index_of(&next).ok_or_else(|| {
                    Error::Invariant(format!("{next} escaped the enumerated group"))
                })?;
                if !seen[idx] {
                    seen[idx] = true;
                    queue.push(idx);
                }
            }
        }
        representatives.push(elems[start].clone());
        sizes.push(queue.len());
    }
    Ok(TwistedOrbitReport {
        aut: sigma.clone(),
        representatives,
        sizes,
        truncated: false,
    })
}

/// `(1/|G|) Σ_g |{x : g x σ(g)^{-1} = x}|`, by a direct double loop.
pub fn burnside_count<D: ScalarDomain>(
    sigma: &GroupAut<D>,
    elems: &[GrpElem<D>],
) -> Result<Option<u64>> {
    let n = elems.len() as u64;
    if n.saturating_mul(n) > BURNSIDE_PAIR_CAP {
        return Ok(None);
    }
    let images = elems
        .iter()
        .map(|g| sigma.apply(g))
        .collect::<Result<Vec<_>>>()?;
    let mut fixed = 0u64;
    for (g, sg) in elems.iter().zip(&images) {
        for x in elems {
            if g.mul(x) == x.mul(sg) {
                fixed += 1;
            }
        }
    }
    if !fixed.is_multiple_of(n) {
        return Err(Error::Invariant(format!(
            "Burnside sum {fixed} not divisible by |G| = {n}"
        )));
    }
    Ok(Some(fixed / n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    OrbitPartition,
    Burnside,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::OrbitPartition => "orbit-partition",
            Method::Burnside => "burnside",
        })
    }
}

/// Number of classes, or a marker that the group was too large to count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Count {
    Finite(u64),
    ExceedsCap,
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Finite(n) => write!(f, "{n}"),
            Count::ExceedsCap => f.write_str("exceeds-cap"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReidemeisterResult {
    pub count: Count,
    /// Methods that ran; all of them produced `count`.
    pub methods: Vec<Method>,
    pub group_order: usize,
}

impl ReidemeisterResult {
    pub fn value(&self) -> Option<u64> {
        match self.count {
            Count::Finite(n) => Some(n),
            Count::ExceedsCap => None,
        }
    }

    pub fn method_label(&self) -> String {
        self.methods
            .iter()
            .map(Method::to_string)
            .collect::<Vec<_>>()
            .join("+")
    }
}

/// Reidemeister number of a finite group, by orbit partition and, when the
/// group is small enough, independently by Burnside's lemma.
pub fn reidemeister_count<D: ScalarDomain>(
    sigma: &GroupAut<D>,
    cap: usize,
) -> Result<ReidemeisterResult> {
    Ok(reidemeister_report(sigma, cap)?.1)
}

pub fn reidemeister_report<D: ScalarDomain>(
    sigma: &GroupAut<D>,
    cap: usize,
) -> Result<(TwistedOrbitReport<D>, ReidemeisterResult)> {
    let report = twisted_orbits(sigma, cap)?;
    let order: usize = report.sizes.iter().sum();
    let elems = sigma.ctx().enumerate(cap)?;
    if order != elems.len() {
        return Err(Error::Invariant(format!(
            "orbits cover {order} of {} elements",
            elems.len()
        )));
    }
    let partition = report.count() as u64;
    let mut methods = vec![Method::OrbitPartition];
    if let Some(b) = burnside_count(sigma, &elems)? {
        if b != partition {
            return Err(Error::Invariant(format!(
                "Burnside gives {b}, orbit partition {partition}"
            )));
        }
        methods.push(Method::Burnside);
    }
    let result = ReidemeisterResult {
        count: Count::Finite(partition),
        methods,
        group_order: order,
    };
    Ok((report, result))
}

/// Serialize the orbit rows and a summary row.
pub fn write_reidemeister_csv<D: ScalarDomain, W: Write>(
    report: &TwistedOrbitReport<D>,
    result: &ReidemeisterResult,
    out: W,
) -> Result<()> {
    let io = |e: csv::Error| Error::Invariant(format!("csv: {e}"));
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "record",
        "representative",
        "size",
        "count",
        "method",
        "group_order",
    ])
    .map_err(io)?;
    for (rep, size) in report.representatives.iter().zip(&report.sizes) {
        w.write_record(["orbit", &rep.to_string(), &size.to_string(), "", "", ""])
            .map_err(io)?;
    }
    w.write_record([
        "summary",
        "",
        "",
        &result.count.to_string(),
        &result.method_label(),
        &result.group_order.to_string(),
    ])
    .map_err(io)?;
    w.flush()
        .map_err(|e| Error::Invariant(format!("csv: {e}")))?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Enumeration, then generator search, then the linear solver.
    Auto,
    FullEnumeration,
    GeneratorBfs,
    /// Only for untwisted conjugacy: solve `g x = y g` linearly.
    LinearSolve,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision<D: ScalarDomain> {
    /// A verified `g` with `g x σ(g)^{-1} = y`.
    Conjugate(GrpElem<D>),
    NotConjugate,
    /// The strategy was incomplete and found nothing.
    Unknown,
}

impl<D: ScalarDomain> Decision<D> {
    pub fn is_conjugate(&self) -> bool {
        matches!(self, Decision::Conjugate(_))
    }

    pub fn witness(&self) -> Option<&GrpElem<D>> {
        match self {
            Decision::Conjugate(g) => Some(g),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct DecisionOptions {
    pub enumeration_cap: usize,
    pub bfs_cap: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for DecisionOptions {
    fn default() -> Self {
        DecisionOptions {
            enumeration_cap: FULL_ENUMERATION_CAP,
            bfs_cap: BFS_CAP,
            samples: 10_000,
            seed: 0,
        }
    }
}

pub fn are_twisted_conjugate<D: ScalarDomain>(
    x: &GrpElem<D>,
    y: &GrpElem<D>,
    sigma: &GroupAut<D>,
    strategy: Strategy,
) -> Result<Decision<D>> {
    are_twisted_conjugate_with(x, y, sigma, strategy, &DecisionOptions::default())
}

pub fn are_twisted_conjugate_with<D: ScalarDomain>(
    x: &GrpElem<D>,
    y: &GrpElem<D>,
    sigma: &GroupAut<D>,
    strategy: Strategy,
    opts: &DecisionOptions,
) -> Result<Decision<D>> {
    same_ctx(x.ctx(), y.ctx())?;
    same_ctx(x.ctx(), sigma.ctx())?;
    if x == y {
        return Ok(Decision::Conjugate(x.ctx().identity()));
    }
    let decision = match strategy {
        Strategy::FullEnumeration => by_enumeration(x, y, sigma, opts.enumeration_cap)?,
        Strategy::GeneratorBfs => by_bfs(x, y, sigma, opts.bfs_cap)?,
        Strategy::LinearSolve => by_linear_solve(x, y, sigma, opts)?,
        Strategy::Auto => match by_enumeration(x, y, sigma, opts.enumeration_cap) {
            Err(Error::CapExceeded(_)) => match by_bfs(x, y, sigma, opts.bfs_cap) {
                Err(Error::CapExceeded(msg)) if !sigma.is_identity() => {
                    return Err(Error::CapExceeded(msg))
                }
                Err(Error::CapExceeded(_)) => by_linear_solve(x, y, sigma, opts)?,
                other => other?,
            },
            other => other?,
        },
    };
    if let Decision::Conjugate(g) = &decision {
        if &twist_step(g, x, sigma)? != y {
            return Err(Error::Invariant(format!("witness {g} does not conjugate")));
        }
    }
    Ok(decision)
}

fn by_enumeration<D: ScalarDomain>(
    x: &GrpElem<D>,
    y: &GrpElem<D>,
    sigma: &GroupAut<D>,
    cap: usize,
) -> Result<Decision<D>> {
    for g in x.ctx().enumerate(cap)? {
        if &twist_step(&g, x, sigma)? == y {
            return Ok(Decision::Conjugate(g));
        }
    }
    Ok(Decision::NotConjugate)
}

/// Explore the orbit of `x` under generator steps, tracking a witness for
/// every element reached. A finite orbit closed under generators is the
/// whole twisted class.
fn by_bfs<D: ScalarDomain>(
    x: &GrpElem<D>,
    y: &GrpElem<D>,
    sigma: &GroupAut<D>,
    cap: usize,
) -> Result<Decision<D>> {
    let stepper = Stepper::new(sigma)?;
    let mut orbit: IndexSet<GrpElem<D>> = IndexSet::new();
    let mut witness: Vec<GrpElem<D>> = Vec::new();
    orbit.insert(x.clone());
    witness.push(x.ctx().identity());
    let mut head = 0;
    while head < orbit.len() {
        let cur = orbit[head].clone();
        for i in 0..stepper.gens.len() {
            let next = stepper.step(i, &cur);
            if orbit.contains(&next) {
                continue;
            }
            let w = stepper.gens[i].0.mul(&witness[head]);
            if &next == y {
                return Ok(Decision::Conjugate(w));
            }
            if orbit.len() >= cap {
                return Err(Error::CapExceeded(format!(
                    "twisted orbit larger than {cap}"
                )));
            }
            orbit.insert(next);
            witness.push(w);
        }
        head += 1;
    }
    Ok(Decision::NotConjugate)
}

/// For σ = id: every conjugator lies in the kernel of `X -> ζ y X - X x`
/// for some central scalar `ζ` (only `ζ = 1` in linear groups).
fn by_linear_solve<D: ScalarDomain>(
    x: &GrpElem<D>,
    y: &GrpElem<D>,
    sigma: &GroupAut<D>,
    opts: &DecisionOptions,
) -> Result<Decision<D>> {
    if !sigma.is_identity() {
        return Err(Error::Unsupported(
            "linear solve needs the identity automorphism".into(),
        ));
    }
    let ctx = x.ctx();
    let Some(consts) = ctx.domain().elements() else {
        return Err(Error::Unsupported(
            "linear solve needs finite scalars".into(),
        ));
    };
    let dim = ctx.dim();
    let zetas: Vec<D::Elem> = if ctx.is_projective() {
        ctx.central_scalars().to_vec()
    } else {
        vec![ctx.domain().one()]
    };
    let mut complete = true;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for zeta in &zetas {
        let zy = y.matrix().scale(zeta);
        let basis = commutant_basis(&zy, x.matrix());
        let d = basis.len();
        let total = (consts.len() as f64).powi(d as i32);
        let check = |coeffs: &[usize]| -> Result<Option<GrpElem<D>>> {
            let mut v = vec![ctx.domain().zero(); dim * dim];
            for (c, b) in coeffs.iter().zip(&basis) {
                for (slot, e) in v.iter_mut().zip(b) {
                    *slot = slot.add(&consts[*c].mul(e));
                }
            }
            let m = Matrix::new(dim, dim, v)?;
            ctx.membership(&m)?.then(|| ctx.element(m)).transpose()
        };
        if d <= LINEAR_SOLVE_MAX_DIM && total <= LINEAR_SOLVE_BUDGET {
            let mut digits = vec![0usize; d];
            loop {
                if let Some(g) = check(&digits)? {
                    return Ok(Decision::Conjugate(g));
                }
                let mut k = 0;
                while k < d {
                    digits[k] += 1;
                    if digits[k] < consts.len() {
                        break;
                    }
                    digits[k] = 0;
                    k += 1;
                }
                if k == d {
                    break;
                }
            }
        } else {
            complete = false;
            for _ in 0..opts.samples {
                let digits: Vec<usize> = (0..d).map(|_| rng.gen_range(0..consts.len())).collect();
                if let Some(g) = check(&digits)? {
                    return Ok(Decision::Conjugate(g));
                }
            }
        }
    }
    Ok(if complete {
        Decision::NotConjugate
    } else {
        Decision::Unknown
    })
}

/// Basis of `{X : a X = X b}`, flattened row-major.
fn commutant_basis<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> Vec<Vec<S>> {
    let n = a.rows();
    let zero = a.like().zero_like();
    let mut rows = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut row = vec![zero.clone(); n * n];
            for k in 0..n {
                row[k * n + j] = row[k * n + j].add(a.get(i, k));
                row[i * n + k] = row[i * n + k].sub(b.get(k, j));
            }
            rows.push(row);
        }
    }
    Matrix::from_rows(rows).expect("square system").kernel()
}

/// Outcome of the power reduction for a pair of `σ`-fixed elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PowerReduction<D: ScalarDomain> {
    /// `x^r` and `y^r` are conjugate, with a verified conjugator.
    Verified(GrpElem<D>),
    /// The decision procedure proved `x^r` and `y^r` are not conjugate.
    Refuted,
    Undecided,
}

impl<D: ScalarDomain> PowerReduction<D> {
    pub fn holds(&self) -> bool {
        !matches!(self, PowerReduction::Refuted)
    }
}

/// For `x`, `y` fixed by `σ` with `σ^r = id` and `x`, `y` twisted conjugate,
/// decide whether `x^r` and `y^r` are conjugate.
pub fn power_reduction_check<D: ScalarDomain>(
    x: &GrpElem<D>,
    y: &GrpElem<D>,
    sigma: &GroupAut<D>,
    r: u32,
) -> Result<PowerReduction<D>> {
    if &sigma.apply(x)? != x || &sigma.apply(y)? != y {
        return Err(Error::PreconditionFailed(
            "x and y must be fixed by the automorphism".into(),
        ));
    }
    let sigma_r = sigma.pow(r)?;
    for g in sigma.ctx().generators()? {
        if sigma_r.apply(&g)? != g {
            return Err(Error::PreconditionFailed(format!(
                "σ^{r} moves generator {g}"
            )));
        }
    }
    if !are_twisted_conjugate(x, y, sigma, Strategy::Auto)?.is_conjugate() {
        return Err(Error::PreconditionFailed(
            "x and y are not twisted conjugate".into(),
        ));
    }
    let id = GroupAut::identity(sigma.ctx());
    Ok(
        match are_twisted_conjugate(&x.pow(r as u64), &y.pow(r as u64), &id, Strategy::Auto)? {
            Decision::Conjugate(g) => PowerReduction::Verified(g),
            Decision::NotConjugate => PowerReduction::Refuted,
            Decision::Unknown => PowerReduction::Undecided,
        },
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientComparison {
    pub big: ReidemeisterResult,
    pub quotient: ReidemeisterResult,
    pub holds: bool,
}

/// Compare `R(σ)` on a linear group with `R(σ̄)` on its projective quotient.
pub fn quotient_count_comparison<D: ScalarDomain>(
    big: &GroupCtx<D>,
    quotient: &GroupCtx<D>,
    sigma: &GroupAut<D>,
) -> Result<QuotientComparison> {
    same_ctx(big, sigma.ctx())?;
    if !quotient.is_projective() || quotient.linear()? != *big {
        return Err(Error::PreconditionFailed(format!(
            "{quotient} is not the projective quotient of {big}"
        )));
    }
    let center: HashMap<GrpElem<D>, ()> = big
        .center(DEFAULT_ENUMERATION_CAP)?
        .into_iter()
        .map(|z| (z, ()))
        .collect();
    for z in center.keys() {
        if !center.contains_key(&sigma.apply(z)?) {
            return Err(Error::PreconditionFailed(
                "automorphism moves the center".into(),
            ));
        }
    }
    let bar = sigma.transfer(quotient)?;
    let big_count = reidemeister_count(sigma, DEFAULT_ENUMERATION_CAP)?;
    let quot_count = reidemeister_count(&bar, DEFAULT_ENUMERATION_CAP)?;
    let holds = match (big_count.value(), quot_count.value()) {
        (Some(a), Some(b)) => a >= b,
        _ => false,
    };
    Ok(QuotientComparison {
        big: big_count,
        quotient: quot_count,
        holds,
    })
}
