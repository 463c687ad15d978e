//! Acceptance run: one line per criterion, with its time budget.

use std::collections::{HashMap, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rinfty_core::auts::b_matrix;
use rinfty_core::groups::{form_matrix, DEFAULT_ENUMERATION_CAP};
use rinfty_core::polyring::{aut_group_enumerate, fixed_element_s};
use rinfty_core::twist::{
    power_reduction_check, quotient_count_comparison, reidemeister_count, PowerReduction,
};
use rinfty_core::witness::{
    block_constraint_check, explicit_conjugator, obstruction_report, power_identity_check,
    trace_certificate, trace_doubling_check, xlambda, ym, Verdict, WitnessConfig, WitnessFamily,
};
use rinfty_core::{
    fq_make, Family, FqDescriptor, GraphAut, GroupAut, GroupCtx, GroupKind, GrpElem, Matrix, Poly,
    RatFrac, RingAut, RingDesc, Scalar, ScalarDomain,
};

type Check = std::result::Result<(), String>;
type Criterion = (&'static str, fn() -> Check, u64);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn group<D: ScalarDomain>(family: Family, n: usize, dom: D) -> GroupCtx<D> {
    GroupCtx::new(GroupKind::new(family, n).unwrap(), dom).unwrap()
}

fn s_for(p: u32, f: &str, denoms: &str) -> (RingDesc, RatFrac) {
    let field = fq_make(p, 1).unwrap();
    let ring = RingDesc::parse(&field, denoms).unwrap();
    let s = fixed_element_s(&Poly::parse(&field, f).unwrap(), &ring).unwrap();
    (ring, s)
}

fn trace_law() -> Check {
    for p in [3, 5] {
        let (ring, s) = s_for(p, "t", "");
        let s_deg = s.num().degree().unwrap();
        let s_lead = s.num().lead();
        for n in [2, 3] {
            let cfg =
                WitnessConfig::new(ring.clone(), s.clone(), WitnessFamily::AXm, n).map_err(err)?;
            for r in 1..=6u32 {
                let mut degrees = HashSet::new();
                for m in 1..=4u32 {
                    let c = trace_certificate(m, r, &cfg).map_err(err)?;
                    let want_deg = 2 * r as usize * m as usize * s_deg;
                    let sign = if r % 2 == 0 {
                        s_lead.one_like()
                    } else {
                        s_lead.one_like().neg()
                    };
                    let want_lead = sign.mul(&s_lead.pow(2 * (r * m) as u64));
                    ensure!(
                        c.deg_t == want_deg,
                        "p={p} m={m} r={r}: degree {} != {want_deg}",
                        c.deg_t
                    );
                    ensure!(
                        c.leading_coeff == want_lead,
                        "p={p} m={m} r={r}: lead {}",
                        c.leading_coeff
                    );
                    ensure!(c.passed(), "p={p} m={m} r={r}: certificate failed");
                    degrees.insert(c.deg_t);
                }
                ensure!(degrees.len() == 4, "p={p} r={r}: degrees collide across m");
            }
        }
    }
    Ok(())
}

fn trace_doubling() -> Check {
    for p in [3, 5] {
        let (ring, s) = s_for(p, "t", "");
        for n in [2, 3] {
            let cfg =
                WitnessConfig::new(ring.clone(), s.clone(), WitnessFamily::CYm, n).map_err(err)?;
            for m in 1..=4 {
                ym(m, &cfg, n).map_err(err)?;
                for r in 1..=6 {
                    ensure!(
                        trace_doubling_check(m, r, &cfg).map_err(err)?,
                        "p={p} n={n} m={m} r={r}"
                    );
                }
            }
        }
    }
    Ok(())
}

fn power_identities() -> Check {
    let (ring, s) = s_for(3, "t", "");
    let field = ring.field().clone();
    let lambdas = [
        RatFrac::t(&field),
        RatFrac::parse(&field, "t^2+2").unwrap(),
        s,
    ];
    for (family, n, step) in [
        (Family::SOodd, 2, 1),
        (Family::SOodd, 3, 1),
        (Family::SOeven, 3, 2),
        (Family::SOeven, 4, 2),
    ] {
        let ctx = group(family, n, ring.clone());
        for lam in &lambdas {
            for r in (step..=8).step_by(step as usize) {
                ensure!(
                    power_identity_check(lam, r, &ctx).map_err(err)?,
                    "{family}{n} lambda={lam} r={r}"
                );
            }
        }
    }
    for n in [3, 4] {
        let one = field.one();
        let b = b_matrix(n, &one).map_err(err)?;
        let a = form_matrix(GroupKind::new(Family::SOeven, n).unwrap(), &one).map_err(err)?;
        ensure!(b.mul(&b).is_identity(), "B^2 != I for n={n}");
        ensure!(b.transpose().mul(&a).mul(&b) == a, "B^T A B != A for n={n}");
    }
    Ok(())
}

/// Twisted classes by brute force: the orbit of `x` is `{g x σ(g)^{-1}}`.
fn oracle_count<D: ScalarDomain>(sigma: &GroupAut<D>) -> usize {
    let elems = sigma.ctx().enumerate(DEFAULT_ENUMERATION_CAP).unwrap();
    let twisted: Vec<_> = elems
        .iter()
        .map(|g| (g.clone(), sigma.apply(g).unwrap().inv()))
        .collect();
    let mut seen: HashSet<GrpElem<D>> = HashSet::new();
    let mut classes = 0;
    for x in &elems {
        if seen.contains(x) {
            continue;
        }
        classes += 1;
        for (g, back) in &twisted {
            seen.insert(g.mul(x).mul(back));
        }
    }
    classes
}

fn reidemeister_counts() -> Check {
    let f3 = fq_make(3, 1).unwrap();
    let f9 = fq_make(3, 2).unwrap();
    let sl3 = group(Family::SL, 2, f3.clone());
    let psl3 = group(Family::PSL, 2, f3);
    let sl9 = group(Family::SL, 2, f9.clone());
    let psl9 = group(Family::PSL, 2, f9.clone());
    let frob9 = GroupAut::ring(&sl9, RingAut::frobenius(&f9, 1)).map_err(err)?;
    let cases: Vec<(&str, GroupAut<FqDescriptor>, Option<u64>)> = vec![
        ("SL2(F3) id", GroupAut::identity(&sl3), Some(7)),
        ("PSL2(F3) id", GroupAut::identity(&psl3), Some(4)),
        (
            "SL2(F3) tinv",
            GroupAut::graph(&sl3, GraphAut::TransposeInverse).map_err(err)?,
            None,
        ),
        ("SL2(F9) frob", frob9.clone(), None),
        (
            "SL2(F9) tinv.frob",
            GroupAut::graph(&sl9, GraphAut::TransposeInverse)
                .map_err(err)?
                .compose(&frob9)
                .map_err(err)?,
            None,
        ),
        ("PSL2(F9) frob", frob9.transfer(&psl9).map_err(err)?, None),
    ];
    for (name, sigma, expected) in cases {
        let oracle = oracle_count(&sigma) as u64;
        let result = reidemeister_count(&sigma, DEFAULT_ENUMERATION_CAP).map_err(err)?;
        ensure!(
            result.value() == Some(oracle),
            "{name}: count {:?}, oracle {oracle}",
            result.value()
        );
        ensure!(result.methods.len() == 2, "{name}: Burnside did not run");
        if let Some(e) = expected {
            ensure!(oracle == e, "{name}: oracle {oracle} != {e}");
        }
    }
    let q = quotient_count_comparison(&sl3, &psl3, &GroupAut::identity(&sl3)).map_err(err)?;
    ensure!(q.holds, "R(SL2(F3)) < R(PSL2(F3))");
    Ok(())
}

fn fixed_group_power_reduction() -> Check {
    let f9 = fq_make(3, 2).unwrap();
    let g = group(Family::SL, 2, f9.clone());
    let sigma = GroupAut::ring(&g, RingAut::frobenius(&f9, 1)).map_err(err)?;
    let elems = g.enumerate(DEFAULT_ENUMERATION_CAP).map_err(err)?;
    let fixed: Vec<_> = elems
        .iter()
        .filter(|x| sigma.apply(x).unwrap() == **x)
        .cloned()
        .collect();
    ensure!(
        fixed.len() == 24,
        "Fix(Frobenius) has {} elements",
        fixed.len()
    );
    let mut class: HashMap<GrpElem<FqDescriptor>, usize> = HashMap::new();
    for (i, x) in elems.iter().enumerate() {
        if class.contains_key(x) {
            continue;
        }
        for h in &elems {
            class
                .entry(h.mul(x).mul(&sigma.apply(h).unwrap().inv()))
                .or_insert(i);
        }
    }
    let mut pairs = 0;
    for x in &fixed {
        for y in &fixed {
            if class[x] != class[y] {
                continue;
            }
            pairs += 1;
            match power_reduction_check(x, y, &sigma, 2).map_err(err)? {
                PowerReduction::Verified(h) => {
                    ensure!(
                        x.pow(2).conj_by(&h) == y.pow(2),
                        "witness for ({x}, {y}) does not conjugate squares"
                    );
                }
                other => return Err(format!("({x}, {y}): {other:?}")),
            }
        }
    }
    ensure!(pairs > fixed.len(), "only {pairs} pairs tested");
    Ok(())
}

fn obstructions() -> Check {
    let (ring, s) = s_for(3, "t+1", "t");
    let field = ring.field().clone();
    for k in 1..=5u64 {
        for k2 in k + 1..=5 {
            let rep = obstruction_report(&s.pow(k), &s.pow(k2), &ring).map_err(err)?;
            ensure!(
                rep.verdict == Verdict::Separated,
                "s^{k} vs s^{k2} not separated"
            );
        }
    }
    let t = RatFrac::t(&field);
    let units = [t.clone(), t.pow(2).neg(), t.powi(-3)];
    for (family, n) in [
        (Family::SOodd, 2),
        (Family::SOodd, 3),
        (Family::SOeven, 3),
        (Family::SOeven, 4),
    ] {
        let ctx = group(family, n, ring.clone());
        for k in 1..=3u64 {
            let lam = s.pow(k);
            for c in &units {
                let g = explicit_conjugator(&lam, c, &ctx).map_err(err)?;
                let target = lam.mul(c).mul(c);
                let x = xlambda(&lam, &ctx).map_err(err)?;
                ensure!(
                    x.conj_by(&g) == xlambda(&target, &ctx).map_err(err)?,
                    "g x g^-1 != x_(c^2 lambda)"
                );
                ensure!(
                    block_constraint_check(&g, &target, &lam).map_err(err)?,
                    "block relations fail for c={c}"
                );
            }
        }
    }
    Ok(())
}

fn random_aut<D: ScalarDomain>(
    ctx: &GroupCtx<D>,
    gens: &[GrpElem<D>],
    rng: &mut ChaCha8Rng,
) -> GroupAut<D> {
    let field = ctx.domain().field();
    let ring = RingAut::frobenius(field, rng.gen_range(0..field.e()));
    let graph = match (ctx.kind().family(), rng.gen_bool(0.5)) {
        (Family::SL, true) => GraphAut::TransposeInverse,
        (Family::SOeven, true) => GraphAut::ConjByB,
        _ => GraphAut::None,
    };
    GroupAut::new(
        ctx,
        Some(ctx.random_element(gens, rng, 10)),
        Some(ring),
        graph,
    )
    .unwrap()
}

fn automorphism_algebra() -> Check {
    let f3 = fq_make(3, 1).unwrap();
    let f9 = fq_make(3, 2).unwrap();
    let ctxs = [
        group(Family::SL, 3, f3.clone()),
        group(Family::SOeven, 3, f3),
        group(Family::SL, 2, f9.clone()),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(20260);
    for ctx in &ctxs {
        let gens = ctx.generators().map_err(err)?;
        let eps_kind = match ctx.kind().family() {
            Family::SL => GraphAut::TransposeInverse,
            _ => GraphAut::ConjByB,
        };
        let eps = GroupAut::graph(ctx, eps_kind).map_err(err)?;
        ensure!(eps.compose(&eps).map_err(err)?.is_identity(), "eps^2 != id");
        let field = ctx.domain().field();
        for _ in 0..100 {
            let sigma = random_aut(ctx, &gens, &mut rng);
            let tau = random_aut(ctx, &gens, &mut rng);
            let x = ctx.random_element(&gens, &mut rng, 10);
            let g = ctx.random_element(&gens, &mut rng, 10);
            let composed = sigma.compose(&tau).map_err(err)?;
            let seq = sigma.apply(&tau.apply(&g).map_err(err)?).map_err(err)?;
            ensure!(
                composed.apply(&g).map_err(err)? == seq,
                "{}: composition differs",
                ctx.kind()
            );
            let lhs = sigma.compose(&GroupAut::inner(&x)).map_err(err)?;
            let rhs = GroupAut::inner(&sigma.apply(&x).map_err(err)?)
                .compose(&sigma)
                .map_err(err)?;
            ensure!(
                lhs.apply(&g).map_err(err)? == rhs.apply(&g).map_err(err)?,
                "sigma i_x != i_sigma(x) sigma"
            );
            let rho = GroupAut::ring(ctx, RingAut::frobenius(field, rng.gen_range(0..field.e())))
                .map_err(err)?;
            let er = eps.compose(&rho).map_err(err)?;
            let re = rho.compose(&eps).map_err(err)?;
            ensure!(
                er.apply(&g).map_err(err)? == re.apply(&g).map_err(err)?,
                "eps rho != rho eps"
            );
            ensure!(
                eps.apply(&eps.apply(&g).map_err(err)?).map_err(err)? == g,
                "eps^2 moves {g}"
            );
        }
    }
    Ok(())
}

fn centers() -> Check {
    let f3 = fq_make(3, 1).unwrap();
    let so5 = group(Family::SOodd, 2, f3.clone());
    let z = so5.center(DEFAULT_ENUMERATION_CAP).map_err(err)?;
    ensure!(
        z.len() == 1 && z[0].is_identity(),
        "center(SO5(F3)) has {} elements",
        z.len()
    );
    let sp4 = group(Family::Sp, 2, f3.clone());
    let z = sp4.center(DEFAULT_ENUMERATION_CAP).map_err(err)?;
    let minus = Matrix::scalar(4, &f3.one().neg());
    let got: HashSet<_> = z.iter().map(|g| g.matrix().clone()).collect();
    let want: HashSet<_> = [Matrix::identity(4, &f3.one()), minus.clone()]
        .into_iter()
        .collect();
    ensure!(got == want, "center(Sp4(F3)) = {z:?}");
    let psp4 = group(Family::PSp, 2, f3);
    ensure!(
        psp4.element(minus).map_err(err)?.is_identity(),
        "-I is not trivial in PSp4"
    );
    let gens = sp4.generators().map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..50 {
        let g = sp4.random_element(&gens, &mut rng, 12);
        let a = psp4.element(g.matrix().clone()).map_err(err)?;
        let b = psp4.element(g.matrix().neg()).map_err(err)?;
        ensure!(
            a == b && a.matrix() == b.matrix(),
            "g and -g differ in PSp4"
        );
    }
    Ok(())
}

fn fixed_element() -> Check {
    let (ring, s) = s_for(3, "t", "");
    ensure!(s.to_string() == "2*t^6+2*t^4+2*t^2", "s = {s}");
    let auts = aut_group_enumerate(&ring).map_err(err)?;
    ensure!(auts.len() == 6, "{} automorphisms", auts.len());
    for rho in &auts {
        ensure!(rho.apply_frac(&s).map_err(err)? == s, "{rho} moves s");
    }
    ensure!(!ring.is_unit(&s).map_err(err)?, "s is a unit");
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("trace law", trace_law, 5),
        ("trace doubling", trace_doubling, 5),
        ("power identities", power_identities, 5),
        ("Reidemeister counts", reidemeister_counts, 30),
        (
            "fixed-group power reduction",
            fixed_group_power_reduction,
            60,
        ),
        ("obstruction certificates", obstructions, 5),
        ("automorphism algebra", automorphism_algebra, 10),
        ("center triviality", centers, 60),
        ("fixed-element construction", fixed_element, 1),
    ];
    let mut failed = 0;
    for (i, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*budget);
        let status = match (&outcome, in_time) {
            (Ok(()), true) => "PASS".to_string(),
            (Ok(()), false) => format!("FAIL (over {budget} s budget)"),
            (Err(e), _) => format!("FAIL ({e})"),
        };
        if status != "PASS" {
            failed += 1;
        }
        println!(
            "criterion {}: {name}: {status} [{:.2} s / {budget} s]",
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    }
}
