use std::fs;

use anyhow::{anyhow, bail, Context, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rinfty_core::groups::DEFAULT_ENUMERATION_CAP;
use rinfty_core::polyring::{aut_group_enumerate, fixed_element_s};
use rinfty_core::twist::{reidemeister_report, write_reidemeister_csv};
use rinfty_core::witness::{
    block_constraint_check, d4_tau_suite, explicit_conjugator, obstruction_report,
    power_identity_check, trace_certificate, trace_doubling_check, xlambda, ym, CertificateRow,
    D4Graph, WitnessConfig, WitnessFamily, CERTIFICATE_HEADER,
};
use rinfty_core::{
    fq_make, Family, FqDescriptor, GraphAut, GroupAut, GroupCtx, GroupKind, Poly, RatFrac, RingAut,
    RingDesc, Scalar, ScalarDomain,
};

use crate::table::{markdown_from_csv, with_params, Table};
use crate::{Cli, Command, FieldArgs, Format};

/// Run a command, write its table and return the number of failed
/// certificates.
pub fn run(cli: &Cli) -> Result<usize> {
    let (csv, failures, stdout_extra) = match &cli.command {
        Command::Traces {
            field,
            f,
            n,
            m_max,
            r_max,
        } => {
            let t = traces(field, f, *n, *m_max, *r_max)?;
            (t.to_csv()?, t.failures, None)
        }
        Command::WitnessCheck {
            field,
            group,
            n,
            f,
            m_max,
            r_max,
            k_max,
            lambdas,
        } => {
            let t = witness_check(
                field,
                group,
                *n,
                f,
                *m_max,
                *r_max,
                *k_max,
                lambdas.as_deref(),
            )?;
            (t.to_csv()?, t.failures, None)
        }
        Command::Reidemeister {
            field,
            group,
            n,
            aut,
            expect,
        } => reidemeister(field, group, *n, aut, *expect)?,
        Command::AutCompose {
            field,
            group,
            n,
            seed,
            trials,
        } => {
            let t = aut_compose(field, group, *n, *seed, *trials)?;
            (t.to_csv()?, t.failures, None)
        }
        Command::FixedS { field, f } => {
            let (t, s) = fixed_s(field, f)?;
            (t.to_csv()?, t.failures, Some(s))
        }
        Command::D4 {
            field,
            f,
            graph,
            k_max,
            r_max,
        } => {
            let t = d4(field, f, graph, *k_max, *r_max)?;
            (t.to_csv()?, t.failures, None)
        }
    };
    let text = match cli.format {
        Format::Csv => csv,
        Format::Md => markdown_from_csv(&csv)?,
    };
    match (&cli.out, stdout_extra) {
        (Some(path), extra) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            if let Some(s) = extra {
                println!("{s}");
            }
        }
        (None, Some(s)) => println!("{s}"),
        (None, None) => print!("{text}"),
    }
    Ok(failures)
}

impl FieldArgs {
    fn resolve(&self) -> Result<(u32, u32)> {
        match (self.p, self.q) {
            (Some(p), None) => Ok((p, self.e)),
            (None, Some(q)) => {
                let p = (2..=q)
                    .find(|d| q % d == 0)
                    .ok_or_else(|| anyhow!("--q must be at least 2"))?;
                let mut e = 0;
                let mut r = q;
                while r % p == 0 {
                    r /= p;
                    e += 1;
                }
                if r != 1 {
                    bail!("--q {q} is not a prime power");
                }
                Ok((p, e))
            }
            (Some(p), Some(q)) if p.checked_pow(self.e) == Some(q) => Ok((p, self.e)),
            (Some(_), Some(_)) => bail!("--q disagrees with --p/--e"),
            (None, None) => bail!("one of --p or --q is required"),
        }
    }

    fn field(&self) -> Result<FqDescriptor> {
        let (p, e) = self.resolve()?;
        fq_make(p, e).context("field")
    }

    fn ring(&self) -> Result<RingDesc> {
        RingDesc::parse(&self.field()?, &self.denoms).context("ring")
    }

    fn params(&self) -> String {
        let (p, e) = self.resolve().unwrap_or((0, 0));
        format!("--p {p} --e {e} --denoms '{}'", self.denoms)
    }
}

fn config(field: &FieldArgs, f: &str, family: WitnessFamily, n: usize) -> Result<WitnessConfig> {
    let ring = field.ring()?;
    let f = Poly::parse(ring.field(), f).context("--f")?;
    let s = fixed_element_s(&f, &ring).context("fixed element")?;
    WitnessConfig::new(ring, s, family, n).context("witness configuration")
}

fn kind(group: &str, n: usize) -> Result<GroupKind> {
    let family: Family = group.parse().context("--group")?;
    GroupKind::new(family, n).context("--n")
}

fn traces(field: &FieldArgs, f: &str, n: usize, m_max: u32, r_max: u32) -> Result<Table> {
    let cfg = config(field, f, WitnessFamily::AXm, n)?;
    let params = format!(
        "rinfty traces {} --f {f} --n {n} --m-max {m_max} --r-max {r_max} s={}",
        field.params(),
        cfg.s()
    );
    let mut table = Table::new(params, &CERTIFICATE_HEADER);
    for m in 1..=m_max {
        for r in 1..=r_max {
            let cert = trace_certificate(m, r, &cfg).context("trace certificate")?;
            let row = CertificateRow::from_trace(WitnessFamily::AXm, &cert);
            let passed = row.passed();
            table.push(cells(row), passed);
        }
    }
    Ok(table)
}

fn cells(row: CertificateRow) -> Vec<String> {
    vec![
        row.family,
        row.index,
        row.r,
        row.deg_t,
        row.expected_deg_t,
        row.leading_coeff,
        row.verdict,
    ]
}

fn verdict(ok: bool) -> String {
    if ok { "pass" } else { "fail" }.to_string()
}

fn simple_row(family: WitnessFamily, index: String, r: String, ok: bool) -> (Vec<String>, bool) {
    let row = vec![
        family.to_string(),
        index,
        r,
        String::new(),
        String::new(),
        String::new(),
        verdict(ok),
    ];
    (row, ok)
}

#[allow(clippy::too_many_arguments)]
fn witness_check(
    field: &FieldArgs,
    group: &str,
    n: usize,
    f: &str,
    m_max: u32,
    r_max: u32,
    k_max: u32,
    lambdas: Option<&str>,
) -> Result<Table> {
    let kind = kind(group, n)?;
    let family = match kind.family().linear() {
        Family::SL => WitnessFamily::AXm,
        Family::Sp => WitnessFamily::CYm,
        Family::SOodd => WitnessFamily::BXLambda,
        Family::SOeven => WitnessFamily::DXLambdaB,
        _ => unreachable!("linear families"),
    };
    let cfg = config(field, f, family, n)?;
    let params = format!(
        "rinfty witness-check {} --group {} --n {n} --f {f} --m-max {m_max} --r-max {r_max} --k-max {k_max} --lambdas '{}' s={}",
        field.params(),
        kind.family(),
        lambdas.unwrap_or(""),
        cfg.s()
    );
    let mut table = Table::new(params, &CERTIFICATE_HEADER);
    match family {
        WitnessFamily::AXm => {
            for r in 1..=r_max {
                let mut degrees = Vec::new();
                for m in 1..=m_max {
                    let cert = trace_certificate(m, r, &cfg)?;
                    degrees.push(cert.deg_t);
                    let row = CertificateRow::from_trace(family, &cert);
                    let ok = row.passed();
                    table.push(cells(row), ok);
                }
                let distinct = degrees.windows(2).all(|w| w[0] < w[1]);
                let (row, ok) = simple_row(
                    family,
                    format!("distinct m<={m_max}"),
                    r.to_string(),
                    distinct,
                );
                table.push(row, ok);
            }
        }
        WitnessFamily::CYm => {
            for m in 1..=m_max {
                ym(m, &cfg, n).context("y_m membership")?;
                for r in 1..=r_max {
                    let ok = trace_doubling_check(m, r, &cfg)?;
                    let (row, ok) = simple_row(family, m.to_string(), r.to_string(), ok);
                    table.push(row, ok);
                }
            }
        }
        WitnessFamily::BXLambda | WitnessFamily::DXLambdaB => {
            let ring = cfg.ring().clone();
            let ctx = GroupCtx::new(kind.with_family(kind.family().linear())?, ring.clone())?;
            let lams: Vec<RatFrac> = match lambdas {
                Some(text) => text
                    .split(';')
                    .map(|l| RatFrac::parse(ring.field(), l.trim()))
                    .collect::<rinfty_core::Result<_>>()
                    .context("--lambdas")?,
                None => (1..=k_max).map(|k| cfg.s().pow(k as u64)).collect(),
            };
            let step = if family == WitnessFamily::DXLambdaB {
                2
            } else {
                1
            };
            for lam in &lams {
                xlambda(lam, &ctx).context("x_lambda")?;
                for r in (step..=r_max).step_by(step as usize) {
                    let ok = power_identity_check(lam, r, &ctx)?;
                    let (row, ok) = simple_row(family, lam.to_string(), r.to_string(), ok);
                    table.push(row, ok);
                }
            }
            for (i, a) in lams.iter().enumerate() {
                for b in &lams[i + 1..] {
                    let rep = obstruction_report(a, b, &ring)?;
                    let row = vec![
                        family.to_string(),
                        format!("{a}|{b}"),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        rep.verdict.to_string(),
                    ];
                    table.push(row, rep.verdict == rinfty_core::witness::Verdict::Separated);
                }
            }
            let t = RatFrac::t(ring.field());
            let c = if ring.is_unit(&t)? {
                t
            } else {
                RatFrac::constant(&ring.field().primitive_element())
            };
            for lam in &lams {
                let g = explicit_conjugator(lam, &c, &ctx)?;
                let ok = block_constraint_check(&g, &lam.mul(&c).mul(&c), lam)?;
                let (row, ok) = simple_row(family, format!("{lam};c={c}"), String::new(), ok);
                table.push(row, ok);
            }
        }
    }
    Ok(table)
}

fn reidemeister(
    field: &FieldArgs,
    group: &str,
    n: usize,
    aut: &str,
    expect: Option<u64>,
) -> Result<(String, usize, Option<String>)> {
    let fq = field.field()?;
    let kind = kind(group, n)?;
    let ctx = GroupCtx::new(kind, fq.clone())?;
    let sigma = GroupAut::parse(&ctx, aut).context("--aut")?;
    let (report, result) =
        reidemeister_report(&sigma, DEFAULT_ENUMERATION_CAP).context("reidemeister")?;
    let mut body = Vec::new();
    write_reidemeister_csv(&report, &result, &mut body)?;
    let params = format!(
        "rinfty reidemeister --p {} --e {} --group {} --n {n} --aut '{sigma}'{}",
        fq.p(),
        fq.e(),
        kind.family(),
        expect.map(|e| format!(" --expect {e}")).unwrap_or_default()
    );
    let failures = match expect {
        Some(e) if result.value() != Some(e) => 1,
        _ => 0,
    };
    Ok((with_params(&params, &String::from_utf8(body)?), failures, None))
}

fn random_aut<R: Rng, D: ScalarDomain>(
    ctx: &GroupCtx<D>,
    gens: &[rinfty_core::GrpElem<D>],
    rng: &mut R,
) -> Result<GroupAut<D>> {
    let inner = ctx.random_element(gens, rng, 12);
    let fieldq = ctx.domain().field();
    let ring = RingAut::frobenius(fieldq, rng.gen_range(0..fieldq.e()));
    let graphs: &[GraphAut] = match ctx.kind().family().linear() {
        Family::SL => &[GraphAut::None, GraphAut::TransposeInverse],
        Family::SOeven => &[GraphAut::None, GraphAut::ConjByB],
        _ => &[GraphAut::None],
    };
    let graph = graphs[rng.gen_range(0..graphs.len())];
    Ok(GroupAut::new(ctx, Some(inner), Some(ring), graph)?)
}

fn aut_compose(field: &FieldArgs, group: &str, n: usize, seed: u64, trials: u32) -> Result<Table> {
    let fq = field.field()?;
    let kind = kind(group, n)?;
    let ctx = GroupCtx::new(kind, fq.clone())?;
    let params = format!(
        "rinfty aut-compose --p {} --e {} --group {} --n {n} --seed {seed} --trials {trials}",
        fq.p(),
        fq.e(),
        kind.family()
    );
    let mut table = Table::new(
        params,
        &["trial", "sigma", "tau", "composite", "element", "verdict"],
    );
    let gens = ctx.generators()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let sigma = random_aut(&ctx, &gens, &mut rng)?;
        let tau = random_aut(&ctx, &gens, &mut rng)?;
        let g = ctx.random_element(&gens, &mut rng, 12);
        let composite = sigma.compose(&tau)?;
        let ok = composite.apply(&g)? == sigma.apply(&tau.apply(&g)?)?;
        table.push(
            vec![
                trial.to_string(),
                sigma.to_string(),
                tau.to_string(),
                composite.to_string(),
                g.to_string(),
                verdict(ok),
            ],
            ok,
        );
    }
    Ok(table)
}

fn fixed_s(field: &FieldArgs, f: &str) -> Result<(Table, String)> {
    let ring = field.ring()?;
    let fp = Poly::parse(ring.field(), f).context("--f")?;
    let s = fixed_element_s(&fp, &ring).context("fixed element")?;
    let auts = aut_group_enumerate(&ring)?;
    let params = format!("rinfty fixed-s {} --f {f}", field.params());
    let mut table = Table::new(params, &["automorphism", "image", "verdict"]);
    for rho in &auts {
        let image = rho.apply_frac(&s)?;
        let ok = image == s;
        table.push(vec![rho.to_string(), image.to_string(), verdict(ok)], ok);
    }
    let unit = ring.is_unit(&s)?;
    table.push(
        vec!["is_unit".into(), unit.to_string(), verdict(!unit)],
        !unit,
    );
    Ok((table, s.to_string()))
}

fn d4(field: &FieldArgs, f: &str, graph: &str, k_max: u32, r_max: u32) -> Result<Table> {
    let g = match graph {
        "tau" => D4Graph::Tau,
        "sigma" => D4Graph::Sigma,
        "sigma2" | "sigma^2" => D4Graph::SigmaSquared,
        other => bail!("unknown --graph `{other}`"),
    };
    let cfg = config(field, f, WitnessFamily::DXLambdaB, 4)?;
    let report = d4_tau_suite(&cfg, g, k_max, r_max).context("d4")?;
    let params = format!(
        "rinfty d4 {} --f {f} --graph {graph} --k-max {k_max} --r-max {r_max} s={}",
        field.params(),
        cfg.s()
    );
    let family = WitnessFamily::DXLambdaB;
    let mut table = Table::new(params, &CERTIFICATE_HEADER);
    for (name, ok) in [
        ("B^2=I", report.b_involution),
        ("B^T A B=A", report.b_preserves_form),
    ] {
        let (row, ok) = simple_row(family, name.into(), String::new(), ok);
        table.push(row, ok);
    }
    for (k, r, ok) in &report.power_identities {
        let (row, ok) = simple_row(family, format!("s^{k}"), r.to_string(), *ok);
        table.push(row, ok);
    }
    for (k, k2, rep) in &report.obstructions {
        let ok = rep.verdict == rinfty_core::witness::Verdict::Separated;
        let row = vec![
            family.to_string(),
            format!("s^{k}|s^{k2}"),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            rep.verdict.to_string(),
        ];
        table.push(row, ok);
    }
    Ok(table)
}
