use clap::{Args, ValueEnum};
use serde_json::{json, Map, Value};

use mixcache::caching::{default_file_bits, integer_split_order, verify_all_demands_with_fault, BitFlip};
use mixcache::finite_snr::{certify_random_boundary, certify_random_delay, inner_rate_region, outer_rate_region, RateRegion, SampledCertificate};
use mixcache::gdof_region::{
    beta_parameterized_region, build_region, eliminate_power_exponents, projection_matches_closed_form,
    symmetric_projection, ChannelStrengths,
};
use mixcache::gndt::{
    bottleneck_user, gdof_region_inner, gndt_joint_two_set, gndt_memory_sharing, gndt_ub, sample_curve,
    topological_hole_region, TradeoffQuery,
};
use mixcache::polytope::Polytope;
use mixcache::rational::{format_decimal, format_exact, format_f64, parse_rational};
use mixcache::{Error, Extended, Rational};

use crate::config::{Flags, Format, RunConfig};
use crate::table::{pretty, Table};
use crate::CliError;

pub const DIGITS: usize = 12;

/// Rendered output plus the reason for a verification failure, if any.
pub struct Report {
    pub body: String,
    pub failure: Option<String>,
}

impl Report {
    fn ok(body: String) -> Self {
        Report { body, failure: None }
    }
}

fn usage(e: Error) -> CliError {
    CliError::Usage(e.to_string())
}

fn dec(x: &Rational) -> String {
    format_decimal(x, DIGITS)
}

fn ext(x: &Extended) -> [String; 2] {
    [x.to_decimal(DIGITS), x.to_exact()]
}

fn vector(values: &[f64]) -> String {
    values.iter().map(|v| format_f64(*v, DIGITS)).collect::<Vec<_>>().join(";")
}

fn exact_vector(values: &[Rational]) -> String {
    values.iter().map(format_exact).collect::<Vec<_>>().join(";")
}

pub fn gndt(cfg: &RunConfig) -> Result<Report, CliError> {
    let system = cfg.system()?;
    let r = cfg.unicast()?;
    let mus = cfg.memory_points(None)?;
    let samples = sample_curve(&system, &r, &mus).map_err(usage)?;
    let mut table = Table::new(&[
        "mu", "mu_exact", "kmu_exact", "tau_ub", "tau_ub_exact", "tau_ms", "tau_ms_exact", "tau_lb", "tau_lb_exact",
    ]);
    for s in samples {
        let mut row = vec![dec(&s.mu), format_exact(&s.mu), format_exact(&s.kmu)];
        row.extend(ext(&s.ub));
        row.extend(ext(&s.memory_sharing));
        row.extend(ext(&s.lower_bound));
        table.push(row);
    }
    Ok(Report::ok(table.render(cfg.format)))
}

pub fn sweep_memory(cfg: &RunConfig) -> Result<Report, CliError> {
    let system = cfg.system()?;
    let r = cfg.unicast()?;
    let mus = cfg.memory_points(Some("0:1:1/100"))?;
    let mut table = Table::new(&[
        "mu", "mu_exact", "kmu_exact", "tau_ub", "tau_ub_exact", "tau_joint", "tau_joint_exact", "tau_ms",
        "tau_ms_exact", "joint_below_ms",
    ]);
    for mu in mus {
        let q = TradeoffQuery::new(system.with_mu(mu.clone()).map_err(usage)?, r.clone()).map_err(usage)?;
        let ub = gndt_ub(&q);
        let shared = gndt_memory_sharing(&q);
        let joint = gndt_joint_two_set(&q).ok();
        let mut row = vec![dec(&mu), format_exact(&mu), format_exact(&q.config.kmu())];
        row.extend(ext(&ub));
        match &joint {
            Some(j) => row.extend(ext(j)),
            None => row.extend([String::new(), String::new()]),
        }
        row.extend(ext(&shared));
        row.push(joint.map(|j| (j < shared).to_string()).unwrap_or_default());
        table.push(row);
    }
    Ok(Report::ok(table.render(cfg.format)))
}

fn rows_as_text(poly: &Polytope) -> Vec<String> {
    poly.to_string().lines().map(str::to_string).collect()
}

pub fn holes(cfg: &RunConfig) -> Result<Report, CliError> {
    let system = cfg.system()?;
    let k_star = bottleneck_user(&system).map_err(usage)?;
    let region = topological_hole_region(&system).map_err(usage)?;
    let base = gndt_ub(&TradeoffQuery::without_unicast(system.clone()));
    let mut failed = 0;
    let vertices: Vec<(Vec<Rational>, Extended, bool)> = region
        .vertices()
        .into_iter()
        .map(|v| {
            let tau = gndt_ub(&TradeoffQuery::new(system.clone(), v.clone()).expect("vertices are nonnegative"));
            let pass = tau == base;
            if !pass {
                failed += 1;
            }
            (v, tau, pass)
        })
        .collect();
    let body = match cfg.format {
        Format::Json => {
            let verts: Vec<Value> = vertices
                .iter()
                .map(|(v, tau, pass)| {
                    json!({
                        "r": v.iter().map(format_exact).collect::<Vec<_>>(),
                        "tau": tau.to_decimal(DIGITS),
                        "tau_exact": tau.to_exact(),
                        "pass": pass,
                    })
                })
                .collect();
            pretty(&json!({
                "k_star": k_star,
                "tau_zero": base.to_decimal(DIGITS),
                "tau_zero_exact": base.to_exact(),
                "inequalities": rows_as_text(&region),
                "region": region.to_json(),
                "vertices": verts,
            }))
        }
        Format::Csv => {
            let mut table = Table::new(&["record", "index", "value", "tau", "tau_exact", "pass"]);
            table.push(vec!["k_star".into(), String::new(), k_star.to_string(), String::new(), String::new(), String::new()]);
            let [d, e] = ext(&base);
            table.push(vec!["tau_zero".into(), String::new(), String::new(), d, e, String::new()]);
            for (i, line) in rows_as_text(&region).into_iter().enumerate() {
                table.push(vec!["inequality".into(), (i + 1).to_string(), line, String::new(), String::new(), String::new()]);
            }
            for (i, (v, tau, pass)) in vertices.iter().enumerate() {
                let [d, e] = ext(tau);
                table.push(vec!["vertex".into(), (i + 1).to_string(), exact_vector(v), d, e, pass.to_string()]);
            }
            table.to_csv()
        }
    };
    Ok(Report { body, failure: (failed > 0).then(|| format!("{failed} hole vertices change the delivery time")) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegionKind {
    /// Unicast plus one GDoF per multicast group
    Full,
    /// Unicast plus one shared multicast GDoF
    Symmetric,
    /// Full region extended by the power exponents
    Layered,
    /// Layered region with the power exponents eliminated
    Projected,
    /// Non-content GDoF achievable at a given delivery time
    Inner,
    /// Non-content GDoF that leave the delivery time unchanged
    Holes,
}

#[derive(Debug, Clone, Args)]
pub struct RegionArgs {
    #[command(flatten)]
    pub flags: Flags,
    #[arg(long, value_enum, default_value = "full")]
    pub kind: RegionKind,
    /// Multicast group size (defaults to K mu + 1, or 2)
    #[arg(long)]
    pub sigma: Option<usize>,
    /// Number of leading users served by the shared multicast GDoF (defaults to min(K, N))
    #[arg(long)]
    pub s: Option<usize>,
    /// Delivery time for the inner region (defaults to the value at r = 0)
    #[arg(long)]
    pub tau: Option<String>,
}

fn default_sigma(cfg: &RunConfig) -> Result<usize, CliError> {
    let k = cfg.users()?;
    Ok(match &cfg.mu {
        Some(mu) => match integer_split_order(k, mu) {
            Ok(kmu) if kmu + 1 >= 2 && kmu < k => kmu + 1,
            _ => 2,
        },
        None => 2,
    })
}

pub fn region(args: &RegionArgs) -> Result<Report, CliError> {
    let cfg = RunConfig::resolve(&args.flags)?;
    let k = cfg.users()?;
    let alpha = cfg.strengths()?;
    let sigma = match args.sigma {
        Some(s) => s,
        None => default_sigma(&cfg)?,
    };
    let mut params = Map::new();
    params.insert("K".into(), json!(k));
    let poly = match args.kind {
        RegionKind::Full | RegionKind::Layered | RegionKind::Projected => {
            params.insert("sigma".into(), json!(sigma));
            match args.kind {
                RegionKind::Full => build_region(sigma, &alpha),
                RegionKind::Layered => beta_parameterized_region(sigma, &alpha),
                _ => beta_parameterized_region(sigma, &alpha).and_then(|p| eliminate_power_exponents(&p, k)),
            }
            .map_err(usage)?
        }
        RegionKind::Symmetric => {
            let s = args.s.unwrap_or(k.min(cfg.files()?));
            params.insert("sigma".into(), json!(sigma));
            params.insert("s".into(), json!(s));
            symmetric_projection(sigma, &alpha, s).map_err(usage)?
        }
        RegionKind::Inner => {
            let system = cfg.system()?;
            let tau = match &args.tau {
                Some(t) => parse_rational(t).map_err(usage)?,
                None => match gndt_ub(&TradeoffQuery::without_unicast(system.clone())) {
                    Extended::Finite(t) => t,
                    Extended::Infinite => return Err(CliError::Usage("delivery time at r = 0 is infinite".into())),
                },
            };
            params.insert("mu".into(), json!(format_exact(&system.mu)));
            params.insert("N".into(), json!(system.n_files));
            params.insert("tau".into(), json!(format_exact(&tau)));
            gdof_region_inner(&tau, &system).map_err(usage)?
        }
        RegionKind::Holes => {
            let system = cfg.system()?;
            params.insert("mu".into(), json!(format_exact(&system.mu)));
            params.insert("N".into(), json!(system.n_files));
            params.insert("k_star".into(), json!(bottleneck_user(&system).map_err(usage)?));
            topological_hole_region(&system).map_err(usage)?
        }
    };
    params.insert("alpha".into(), json!(alpha.as_slice().iter().map(format_exact).collect::<Vec<_>>()));
    let kind = args.kind.to_possible_value().unwrap().get_name().to_string();
    let body = match cfg.format {
        Format::Json => {
            let Value::Object(dump) = poly.to_json() else { unreachable!() };
            let mut out = Map::new();
            out.insert("kind".into(), json!(kind));
            out.insert("parameters".into(), Value::Object(params));
            out.extend(dump);
            pretty(&Value::Object(out))
        }
        Format::Csv => {
            let mut columns: Vec<&str> = vec!["row"];
            columns.extend(poly.variables().iter().map(String::as_str));
            columns.push("rhs");
            let mut table = Table::new(&columns);
            for (i, row) in poly.rows().iter().enumerate() {
                let mut cells = vec![(i + 1).to_string()];
                cells.extend(row.coeffs.iter().map(format_exact));
                cells.push(format_exact(&row.rhs));
                table.push(cells);
            }
            table.to_csv()
        }
    };
    Ok(Report::ok(body))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Caching,
    Projection,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub flags: Flags,
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    /// Corrupt one delivered bit, PAYLOAD:BIT (both 0-based)
    #[arg(long = "flip-bit")]
    pub flip_bit: Option<String>,
    /// File size in bits (defaults to a multiple of every subfile count)
    #[arg(long = "file-bits")]
    pub file_bits: Option<usize>,
    /// Random strength vectors per (K, sigma) in the projection suite
    #[arg(long, default_value_t = 5)]
    pub alphas: usize,
}

fn parse_flip(text: &str) -> Result<BitFlip, CliError> {
    let bad = || CliError::Usage(format!("--flip-bit {text:?} is not PAYLOAD:BIT"));
    let (p, b) = text.split_once(':').ok_or_else(bad)?;
    Ok(BitFlip { payload: p.trim().parse().map_err(|_| bad())?, bit: b.trim().parse().map_err(|_| bad())? })
}

fn jsonl(value: &Value) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}

/// Emits one JSON line per checked case and a closing summary line.
pub fn verify(args: &VerifyArgs) -> Result<Report, CliError> {
    let cfg = RunConfig::resolve(&args.flags)?;
    let fault = args.flip_bit.as_deref().map(parse_flip).transpose()?;
    let pairs: Vec<(usize, usize)> = match cfg.k {
        Some(k) => vec![(k, cfg.files()?)],
        None => (1..=4).flat_map(|k| (1..=4).map(move |n| (k, n))).collect(),
    };
    let mut body = String::new();
    let (mut cache_total, mut cache_failed) = (0usize, 0usize);
    if args.suite != Suite::Projection {
        for &(k, n) in &pairs {
            let kmus: Vec<usize> = match &cfg.mu {
                Some(mu) => vec![integer_split_order(k, mu).map_err(usage)?],
                None => (0..=k).collect(),
            };
            let bits = args.file_bits.unwrap_or(default_file_bits(k) * 8);
            for kmu in kmus {
                let seed = cfg.seed.wrapping_mul(1_000_003) ^ ((k << 16) | (n << 8) | kmu) as u64;
                let records = verify_all_demands_with_fault(k, n, kmu, bits, seed, fault).map_err(usage)?;
                for rec in records {
                    cache_total += 1;
                    if !rec.pass {
                        cache_failed += 1;
                    }
                    let Value::Object(fields) = serde_json::to_value(&rec).expect("serializable") else { unreachable!() };
                    let mut line = Map::new();
                    line.insert("suite".into(), json!("caching"));
                    line.extend(fields);
                    body.push_str(&jsonl(&Value::Object(line)));
                }
            }
        }
    }
    let (mut proj_total, mut proj_failed) = (0usize, 0usize);
    if args.suite != Suite::Caching {
        let users: Vec<usize> = match cfg.k {
            Some(k) => vec![k],
            None => vec![2, 3, 4],
        };
        for k in users.into_iter().filter(|&k| k >= 2) {
            let alphas: Vec<ChannelStrengths> = if cfg.alpha.is_some() {
                vec![cfg.strengths()?]
            } else {
                (0..args.alphas)
                    .map(|i| ChannelStrengths::random_from_seed(k, 97, cfg.seed.wrapping_add((k * 1000 + i) as u64)))
                    .collect()
            };
            for sigma in 2..=k {
                for alpha in &alphas {
                    let pass = projection_matches_closed_form(sigma, alpha).map_err(usage)?;
                    proj_total += 1;
                    if !pass {
                        proj_failed += 1;
                    }
                    body.push_str(&jsonl(&json!({
                        "suite": "projection",
                        "k": k,
                        "sigma": sigma,
                        "alpha": alpha.as_slice().iter().map(format_exact).collect::<Vec<_>>(),
                        "pass": pass,
                    })));
                }
            }
        }
    }
    let pass = cache_failed == 0 && proj_failed == 0;
    body.push_str(&jsonl(&json!({
        "suite": "summary",
        "caching": {"total": cache_total, "failed": cache_failed},
        "projection": {"total": proj_total, "failed": proj_failed},
        "pass": pass,
    })));
    let failure = (!pass).then(|| format!("{cache_failed} caching and {proj_failed} projection checks failed"));
    Ok(Report { body, failure })
}

#[derive(Debug, Clone, Args)]
pub struct SnrArgs {
    #[command(flatten)]
    pub flags: Flags,
    /// Multicast group size (defaults to K mu + 1, or 2)
    #[arg(long)]
    pub sigma: Option<usize>,
    /// Random boundary tuples to certify
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
}

const SNR_COLUMNS: [&str; 8] = ["record", "index", "delay", "vector", "rhs", "tight_rows", "violated_rows", "passed"];

fn region_rows(table: &mut Table, name: &str, region: &RateRegion) {
    for (i, row) in region.rows.iter().enumerate() {
        table.push(vec![
            name.into(),
            (i + 1).to_string(),
            String::new(),
            vector(&row.coeffs),
            format_f64(row.rhs, DIGITS),
            String::new(),
            String::new(),
            String::new(),
        ]);
    }
}

fn index_list(rows: &[usize]) -> String {
    rows.iter().map(|r| (r + 1).to_string()).collect::<Vec<_>>().join(";")
}

fn certificate_rows(table: &mut Table, name: &str, samples: &[SampledCertificate]) -> usize {
    let mut failed = 0;
    for (i, s) in samples.iter().enumerate() {
        if !s.certificate.passed {
            failed += 1;
        }
        table.push(vec![
            name.into(),
            (i + 1).to_string(),
            s.delay.map(|d| format_f64(d, DIGITS)).unwrap_or_default(),
            vector(&s.rates),
            String::new(),
            index_list(&s.certificate.tight_rows),
            index_list(&s.certificate.violated_rows),
            s.certificate.passed.to_string(),
        ]);
    }
    failed
}

pub fn finite_snr(args: &SnrArgs) -> Result<Report, CliError> {
    let cfg = RunConfig::resolve(&args.flags)?;
    let alpha = cfg.strengths()?;
    let sigma = match args.sigma {
        Some(s) => s,
        None => default_sigma(&cfg)?,
    };
    let inner = inner_rate_region(sigma, &alpha, cfg.power).map_err(usage)?;
    let outer = outer_rate_region(sigma, &alpha, cfg.power).map_err(usage)?;
    let mut table = Table::new(&SNR_COLUMNS);
    let regime = if inner.degenerate { "degenerate" } else { "regular" };
    table.push(vec![
        "regime".into(),
        String::new(),
        String::new(),
        regime.into(),
        format_f64(cfg.power, DIGITS),
        String::new(),
        String::new(),
        String::new(),
    ]);
    region_rows(&mut table, "inner_row", &inner);
    region_rows(&mut table, "outer_row", &outer);
    let mut failed = 0;
    if !inner.degenerate {
        let samples = certify_random_boundary(sigma, &alpha, cfg.power, args.samples, cfg.seed).map_err(usage)?;
        failed += certificate_rows(&mut table, "rate_certificate", &samples);
        if cfg.mu.is_some() {
            let samples = certify_random_delay(&cfg.system()?, args.samples, cfg.seed).map_err(usage)?;
            failed += certificate_rows(&mut table, "delay_certificate", &samples);
        }
    }
    Ok(Report {
        body: table.render(cfg.format),
        failure: (failed > 0).then(|| format!("{failed} gap certificates failed")),
    })
}
