//! Command-line workbench for maximal curves covered by the Hermitian curve.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use serde::Serialize;
use serde_json::json;

use maxcurve::gf_tower::ExtField;
use maxcurve::plane_curves::{
    cubed_quotient_model, cyclic_model, degree3_quotient_model, envelope_model, family_model, hermitian_canonical,
    hermitian_fermat, CurveModel, Family,
};
use maxcurve::point_count::resolved_maximality_check;
use maxcurve::quotient::{divisor_admissibility, hurwitz_genus};
use maxcurve::semigroup::{
    dim_d, genus_lmm1, hermitian_point_semigroup, quotient_semigroup, star_relation, sv_degrees, Lmm1Kind,
    NumericalSemigroup, OrderKind, OrderSequence,
};
use maxcurve::workbench::{
    census, verify_paper, run_criterion, Cache, OutputFormat, RunConfig, Status, CENSUS_COLUMNS,
};
use maxcurve::{Error, Result, SqrtQ};

use output::Rendered;

#[derive(Parser)]
#[command(name = "maxcurve", version, about = "Maximal curves covered by the Hermitian curve")]
struct Cli {
    /// key=value configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Override one configuration key; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    overrides: Vec<String>,
    #[arg(long, global = true, value_parser = parse_format)]
    format: Option<OutputFormat>,
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

fn parse_format(s: &str) -> std::result::Result<OutputFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Describe F_{p^k}: modulus and size.
    Field {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Print a plane model as JSON.
    Construct(ModelArgs),
    /// Count points of a model over F_{q^k}, plane and nonsingular.
    Count {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// Compare a count with the Hasse–Weil upper bound.
    VerifyMaximal {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Genus of the nonsingular model; defaults to the model's own.
        #[arg(long)]
        genus: Option<u64>,
    },
    /// Burnside count of the quotient by the order-d subgroup.
    Quotient {
        #[arg(long)]
        sqrt_q: u64,
        #[arg(long)]
        d: u64,
    },
    /// One row per divisor d of q − √q + 1.
    Census {
        #[arg(long)]
        sqrt_q: u64,
    },
    /// Numerical semigroup data.
    Semigroup {
        #[command(flatten)]
        source: SemigroupArgs,
        /// With --hermitian: pass to the order-d quotient.
        #[arg(long, requires = "hermitian")]
        d: Option<u64>,
    },
    /// Dimension of |(√q+1)P₀| on the order-d quotient.
    DimD {
        #[arg(long)]
        sqrt_q: u64,
        #[arg(long)]
        d: u64,
    },
    /// Stöhr–Voloch divisor degrees and the point bound.
    Sv {
        #[arg(long)]
        g: u64,
        #[arg(long)]
        deg_d: u64,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        q: u64,
        /// ε₀, …, ε_r, comma separated.
        #[arg(long, value_delimiter = ',')]
        eps: Vec<u64>,
        /// ν₀, …, ν_{r−1}, comma separated.
        #[arg(long, value_delimiter = ',')]
        nu: Vec<u64>,
        /// Also evaluate the ε₂ relation for (q, g, ε₂).
        #[arg(long)]
        epsilon2: Option<u64>,
    },
    /// Run the acceptance checks.
    VerifyPaper {
        /// Run only this criterion.
        #[arg(long)]
        criterion: Option<u32>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelKind {
    Hermitian,
    HermitianFermat,
    Envelope,
    Cyclic,
    CubedQuotient,
    Quotient,
    AdditiveFibre,
    ArtinSchreier,
    Fermat,
    EvenChain,
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long, value_enum, required_unless_present = "model_file")]
    model: Option<ModelKind>,
    /// A model written by `construct`.
    #[arg(long, conflicts_with = "model")]
    model_file: Option<PathBuf>,
    #[arg(long)]
    sqrt_q: Option<u64>,
    #[arg(long)]
    t: Option<u64>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    r: Option<u32>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SemigroupArgs {
    /// Generators, comma separated.
    #[arg(long, value_delimiter = ',')]
    generators: Option<Vec<u64>>,
    /// Gaps, comma separated.
    #[arg(long, value_delimiter = ',')]
    gaps: Option<Vec<u64>>,
    /// ℓ,m for ⟨ℓ, m, m+1⟩, compared with the closed form.
    #[arg(long, value_delimiter = ',')]
    lmm1: Option<Vec<u64>>,
    /// √q for the semigroup at a fixed point of the cyclic automorphism.
    #[arg(long)]
    hermitian: Option<u64>,
}

fn need<T>(v: Option<T>, name: &str) -> Result<T> {
    v.ok_or_else(|| Error::InvalidArgument(format!("--{name} is required for this model")))
}

impl ModelArgs {
    fn build(&self) -> Result<CurveModel> {
        if let Some(path) = &self.model_file {
            return CurveModel::from_json(&std::fs::read_to_string(path)?);
        }
        let kind = need(self.model, "model")?;
        let sqrt_q = || need(self.sqrt_q, "sqrt-q").and_then(SqrtQ::new);
        let t = || need(self.t, "t");
        let with_field = |f: fn(SqrtQ, &ExtField) -> Result<CurveModel>| -> Result<CurveModel> {
            let s = sqrt_q()?;
            f(s, &s.field_q()?)
        };
        match kind {
            ModelKind::Hermitian => with_field(hermitian_canonical),
            ModelKind::HermitianFermat => with_field(hermitian_fermat),
            ModelKind::Envelope => with_field(envelope_model),
            ModelKind::Cyclic => with_field(cyclic_model),
            ModelKind::CubedQuotient => with_field(cubed_quotient_model),
            ModelKind::Quotient => Ok(degree3_quotient_model(sqrt_q()?)?.model),
            ModelKind::AdditiveFibre => family_model(Family::AdditiveFibre {
                p: need(self.p, "p")?,
                m: need(self.m, "m")?,
                r: need(self.r, "r")?,
            }),
            ModelKind::ArtinSchreier => family_model(Family::ArtinSchreier {
                sqrt_q: need(self.sqrt_q, "sqrt-q")?,
                t: t()?,
            }),
            ModelKind::Fermat => family_model(Family::Fermat {
                sqrt_q: need(self.sqrt_q, "sqrt-q")?,
                t: t()?,
            }),
            ModelKind::EvenChain => family_model(Family::EvenChain {
                sqrt_q: need(self.sqrt_q, "sqrt-q")?,
            }),
        }
    }
}

#[derive(Serialize)]
struct SemigroupReport {
    gaps: Vec<u64>,
    genus: u64,
    conductor: u64,
    frobenius_number: Option<u64>,
    minimal_generators: Vec<u64>,
}

impl From<&NumericalSemigroup> for SemigroupReport {
    fn from(s: &NumericalSemigroup) -> Self {
        SemigroupReport {
            gaps: s.gaps().to_vec(),
            genus: s.genus(),
            conductor: s.conductor(),
            frobenius_number: s.frobenius_number(),
            minimal_generators: s.minimal_generators(),
        }
    }
}

fn semigroup(a: &SemigroupArgs, d: Option<u64>) -> Result<(Rendered, bool)> {
    if let Some(lm) = &a.lmm1 {
        let &[l, m] = lm.as_slice() else {
            return Err(Error::InvalidArgument("--lmm1 takes ℓ,m".into()));
        };
        let s = NumericalSemigroup::from_generators(&[l, m, m + 1])?;
        let f = genus_lmm1(l, m)?;
        let oracle = s.genus() as i64;
        let ok = match (f.kind, f.value) {
            (Lmm1Kind::Exact, Some(v)) => v == oracle.into(),
            (Lmm1Kind::UpperBound, Some(v)) => v >= oracle.into(),
            _ => false,
        };
        let out = json!({"semigroup": SemigroupReport::from(&s), "formula": f, "consistent": ok});
        return Ok((Rendered::new(&out)?, ok));
    }
    let s = if let Some(g) = &a.generators {
        NumericalSemigroup::from_generators(g)?
    } else if let Some(g) = &a.gaps {
        NumericalSemigroup::from_gaps(g.iter().copied())?
    } else {
        let s = SqrtQ::new(need(a.hermitian, "hermitian")?)?;
        let st = hermitian_point_semigroup(s);
        match d {
            Some(d) => quotient_semigroup(&st, d)?,
            None => st,
        }
    };
    Ok((Rendered::new(&SemigroupReport::from(&s))?, true))
}

fn load_config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::from_file(p)?,
        None => RunConfig::default(),
    }
    .with_env_cache_dir();
    for o in &cli.overrides {
        cfg.apply(o)?;
    }
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    if let Some(d) = &cli.cache_dir {
        cfg.cache_dir = Some(d.clone());
    }
    if let Some(w) = cli.workers {
        cfg.workers = w;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Runs the command; the flag is whether every verdict passed.
fn run(cli: &Cli, cfg: &RunConfig) -> Result<(Rendered, bool)> {
    let cache = Cache::open(cfg.cache_dir.as_deref());
    match &cli.command {
        Command::Field { p, k } => {
            let f = ExtField::new(*p, *k)?;
            let out = json!({
                "p": p,
                "k": k,
                "size": f.size().to_string(),
                "modulus": f.descriptor().modulus,
                "display": f.to_string(),
            });
            Ok((Rendered::new(&out)?, true))
        }
        Command::Construct(m) => Ok((Rendered::new(&m.build()?)?, true)),
        Command::Count { model, k } => {
            let m = model.build()?;
            let c = cache.nonsingular(&m, *k, cfg.enumeration_cap)?;
            Ok((Rendered::new(&c)?, true))
        }
        Command::VerifyMaximal { model, k, genus } => {
            let m = model.build()?;
            let g = genus
                .or(m.expected_genus)
                .ok_or_else(|| Error::InvalidArgument("the model has no known genus; pass --genus".into()))?;
            let c = cache.nonsingular(&m, *k, cfg.enumeration_cap)?;
            let v = resolved_maximality_check(&c, g);
            let ok = v.verdict == maxcurve::point_count::Verdict::Maximal;
            Ok((Rendered::new(&json!({"count": c, "verdict": v}))?, ok))
        }
        Command::Quotient { sqrt_q, d } => {
            let s = SqrtQ::new(*sqrt_q)?;
            let r = cache.burnside(s, *d, cfg.lift_cap)?;
            let h = hurwitz_genus(s, *d)?;
            let a = divisor_admissibility(s, *d);
            let ok = r.matches_expected && h.consistent;
            Ok((Rendered::new(&json!({"burnside": r, "hurwitz": h, "admissibility": a}))?, ok))
        }
        Command::Census { sqrt_q } => {
            let rows = census(SqrtQ::new(*sqrt_q)?, cfg, &cache)?;
            let ok = rows.iter().all(|r| r.verdict != maxcurve::workbench::RowVerdict::Fail);
            let cells = rows.iter().map(|r| r.cells()).collect();
            Ok((Rendered::new(&rows)?.with_rows(&CENSUS_COLUMNS, cells), ok))
        }
        Command::Semigroup { source, d } => semigroup(source, *d),
        Command::DimD { sqrt_q, d } => {
            let dim = dim_d(SqrtQ::new(*sqrt_q)?, *d)?;
            Ok((Rendered::new(&json!({"sqrt_q": sqrt_q, "d": d, "dim": dim}))?, true))
        }
        Command::Sv {
            g,
            deg_d,
            r,
            q,
            eps,
            nu,
            epsilon2,
        } => {
            let eps = OrderSequence::new(OrderKind::Series, eps.clone())?;
            let nu = OrderSequence::new(OrderKind::Frobenius, nu.clone())?;
            let sv = sv_degrees(*g, *deg_d, *r, &eps, &nu, *q)?;
            let star = epsilon2.map(|e| star_relation(*q, *g, e)).transpose()?;
            let ok = sv.degrees_nonnegative && star.as_ref().is_none_or(|s| s.holds);
            Ok((Rendered::new(&json!({"sv": sv, "star": star}))?, ok))
        }
        Command::VerifyPaper { criterion } => {
            let report = match criterion {
                Some(id) => {
                    let c = run_criterion(*id, cfg, &cache)?;
                    let ok = c.status != Status::Fail;
                    return Ok((Rendered::new(&c)?.with_rows(&CRITERION_COLUMNS, vec![criterion_row(&c)]), ok));
                }
                None => verify_paper(cfg, &cache),
            };
            let rows = report.criteria.iter().map(criterion_row).collect();
            Ok((Rendered::new(&report)?.with_rows(&CRITERION_COLUMNS, rows), report.all_passed()))
        }
    }
}

const CRITERION_COLUMNS: [&str; 5] = ["id", "status", "millis", "title", "failing"];

fn criterion_row(c: &maxcurve::workbench::CriterionResult) -> Vec<String> {
    let failing: Vec<String> = c
        .checks
        .iter()
        .filter(|k| !k.pass)
        .map(|k| format!("{}: expected {}, got {}", k.name, k.expected, k.actual))
        .chain(c.note.clone())
        .collect();
    vec![
        c.id.to_string(),
        c.status.as_str().to_string(),
        c.millis.map_or(String::new(), |m| m.to_string()),
        c.title.clone(),
        failing.join("; "),
    ]
}

fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidArgument(_) | Error::Malformed(_) | Error::NotPrime(_) | Error::NotDivisor { .. } | Error::Io(_)
    )
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let cfg = match load_config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cfg.workers).build_global() {
        info!("worker pool already configured: {e}");
    }
    match run(&cli, &cfg).and_then(|(r, ok)| Ok((r.render(cfg.format)?, ok))) {
        Ok((text, ok)) => {
            print!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if is_usage_error(&e) { 2 } else { 1 })
        }
    }
}
