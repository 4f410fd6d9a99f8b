//! `carlitz`: zeta values, identity checks and Fitting ideals from the command line.

use std::process::ExitCode;

use carlitz_core::algebra::parse::parse_poly;
use carlitz_core::formulas::{
    check_theorem4, verify_deformed_k, verify_padic_k, verify_period_q2, verify_taelman_k, UnitBasis, VerificationReport,
};
use carlitz_core::modstruct::fitting_ideal;
use carlitz_core::rings::RingDescriptor;
use carlitz_core::suite::{class_formula_checks, run_criteria, Level};
use carlitz_core::zeta::{zeta_inf, zeta_padic, zeta_poly};
use carlitz_core::{Error, Poly};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "carlitz", version, about = "Carlitz module zeta values and class-formula checks")]
struct Cli {
    /// Worker threads for the ideal sums.
    #[arg(long, global = true, env = "CARLITZ_WORKERS")]
    workers: Option<usize>,
    /// Seed for the randomized factorization steps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute a zeta value.
    Zeta {
        #[arg(value_enum)]
        kind: ZetaKind,
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        /// Monic irreducible of `A`, e.g. `t^2+1`.
        #[arg(long = "P")]
        p: Option<String>,
        /// P-adic precision level: the value is correct modulo `P^(q^(s+1))`.
        #[arg(long)]
        s: Option<u32>,
        /// Digits of `1/t` for infinite-adic values.
        #[arg(long, default_value_t = 16)]
        prec: i64,
    },
    /// Check one identity, or run a whole suite.
    Verify {
        #[arg(value_enum)]
        which: Which,
        #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
        level: LevelArg,
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long = "P")]
        p: Option<String>,
        #[arg(long)]
        s: Option<u32>,
        #[arg(long)]
        prec: Option<i64>,
        #[arg(long, default_value_t = 5)]
        zmax: usize,
    },
    /// Fitting ideal of the Carlitz module at a prime.
    Fitting {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        prime: String,
        #[arg(long)]
        deformed: bool,
    },
}

#[derive(Args)]
struct RingArgs {
    /// Size of the constant field of `A`.
    #[arg(long)]
    q: Option<u64>,
    /// `A`, `A(q=3)`, `Fq^r[t](r=2)` or `Fq^r[t](q=3,r=2)`.
    #[arg(long, default_value = "A")]
    ring: String,
}

impl RingArgs {
    fn resolve(&self) -> Result<RingDescriptor, Error> {
        RingDescriptor::parse(&self.ring, self.q)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ZetaKind {
    Inf,
    Padic,
    Poly,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Taelman,
    Deformed,
    Padic,
    Period,
    Theorem4,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

enum Outcome {
    Value(Value),
    Verified(Value, bool),
}

fn require_prime(ring: &RingDescriptor, p: &Option<String>) -> Result<Poly, Error> {
    let p = p.as_deref().ok_or_else(|| Error::InvalidArgument("--P is required".into()))?;
    parse_poly(ring.base(), p)
}

fn with_header(mut v: Value, config: Value) -> Value {
    if let Some(o) = v.as_object_mut() {
        o.insert("version".into(), json!(VERSION));
        o.insert("config".into(), config);
    }
    v
}

fn single(report: VerificationReport) -> Outcome {
    let pass = report.pass;
    Outcome::Verified(report.to_json(), pass)
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let seed = cli.seed;
    match &cli.cmd {
        Cmd::Zeta { kind, ring, n, p, s, prec } => {
            let ring = ring.resolve()?;
            let z = match kind {
                ZetaKind::Poly => zeta_poly(&ring, *n)?,
                ZetaKind::Inf => zeta_inf(&ring, *n, *prec)?,
                ZetaKind::Padic => zeta_padic(&ring, *n, &require_prime(&ring, p)?, s.unwrap_or(0), seed)?,
            };
            Ok(Outcome::Value(with_header(z.to_json(), json!({"seed": seed}))))
        }
        Cmd::Verify { which, level, ring, p, s, prec, zmax } => {
            let q = ring.q.unwrap_or(2);
            let out = match which {
                Which::Taelman => single(verify_taelman_k(q, prec.unwrap_or(16))?),
                Which::Deformed => single(verify_deformed_k(q, *zmax, prec.unwrap_or(16))?),
                Which::Padic => {
                    let r = RingDescriptor::a(q)?;
                    single(verify_padic_k(q, &require_prime(&r, p)?, s.unwrap_or(1))?)
                }
                Which::Period => single(verify_period_q2(q, prec.unwrap_or(12))?),
                Which::Theorem4 => {
                    let r = ring.resolve()?;
                    let basis = UnitBasis::auto(&r)?;
                    single(check_theorem4(&r, &basis, &Poly::one(r.base()), &require_prime(&r, p)?, s.unwrap_or(1), seed)?)
                }
                Which::All => {
                    let level = match level {
                        LevelArg::Quick => Level::Quick,
                        LevelArg::Full => Level::Full,
                    };
                    let criteria = run_criteria(level)?;
                    let extra = class_formula_checks(level)?;
                    let pass = criteria.iter().all(|c| c.pass()) && extra.iter().all(|r| r.pass);
                    let v = json!({
                        "level": level.name(),
                        "criteria": criteria.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
                        "class_formula": extra.iter().map(VerificationReport::to_json).collect::<Vec<_>>(),
                        "pass": pass,
                    });
                    return Ok(Outcome::Verified(with_header(v, json!({"seed": seed, "level": level.name()})), pass));
                }
            };
            Ok(match out {
                Outcome::Verified(v, pass) => Outcome::Verified(with_header(v, json!({"seed": seed})), pass),
                other => other,
            })
        }
        Cmd::Fitting { ring, prime, deformed } => {
            let r = ring.resolve()?;
            let g = parse_poly(r.field_l(), prime)?;
            let rep = fitting_ideal(&r.ideal(&g)?, *deformed)?;
            let v = json!({
                "ring": r.to_string(),
                "prime": g.to_string(),
                "norm": rep.norm.to_string(),
                "deformed": rep.deformed,
                "fitting": rep.render(),
                "expected": rep.expected.render("t"),
                "cyclic": rep.factors.is_cyclic(),
                "matches": rep.matches(),
            });
            Ok(Outcome::Value(with_header(v, json!({"seed": seed}))))
        }
    }
}

fn text(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                if x.is_object() || x.is_array() {
                    out.push_str(&format!("{pad}{k}:\n"));
                    text(x, indent + 2, out);
                } else {
                    out.push_str(&format!("{pad}{k}: {}\n", scalar(x)));
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                out.push_str(&format!("{pad}-\n"));
                text(x, indent + 2, out);
            }
        }
        x => out.push_str(&format!("{pad}{}\n", scalar(x))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        x => x.to_string(),
    }
}

fn emit(v: &Value, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(v).expect("json")),
        Format::Text => {
            let mut s = String::new();
            text(v, 0, &mut s);
            print!("{s}");
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cli.workers {
        if w == 0 {
            eprintln!("--workers must be positive");
            return ExitCode::from(2);
        }
        pool = pool.num_threads(w);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(3);
        }
    };
    match pool.install(|| run(&cli)) {
        Ok(Outcome::Value(v)) => {
            emit(&v, cli.format);
            ExitCode::SUCCESS
        }
        Ok(Outcome::Verified(v, pass)) => {
            emit(&v, cli.format);
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let mut o = Map::new();
            o.insert("error".into(), json!(e.code()));
            o.insert("message".into(), json!(e.to_string()));
            emit(&Value::Object(o), cli.format);
            match e {
                Error::Parse(_) | Error::InvalidArgument(_) => ExitCode::from(2),
                _ => ExitCode::from(3),
            }
        }
    }
}
