use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use verlinde_core::cache::{self, Cache, Entry, Status};
use verlinde_core::checks::{self, Engine, Formula, Outcome, TableSeries, Target};
use verlinde_core::exact::{format_rat, parse_rat, Coeff, Rat};
use verlinde_core::instanton::{q_coefficient, ChiYGenus, Genus, HolomorphicGenus, InstantonRequest};
use verlinde_core::lattice::{parse_class, SurfaceLattice};
use verlinde_core::monopole::{self, MonopoleRequest};
use verlinde_core::series::TruncatedSeries;
use verlinde_core::Error;

#[derive(Parser)]
#[command(name = "verlinde", version, about = "Exact K-theoretic Donaldson and Vafa-Witten invariants of surfaces")]
struct Cli {
    /// Worker threads for fixed-point evaluation (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed of the equivariant specialization.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Compute everything in memory and leave the cache untouched.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Inst,
    Mono,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenusArg {
    Holomorphic,
    ChiY,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyTarget {
    Conj1,
    Conj2,
    Conj3,
    Thm2,
    ClosedForms,
    Limits,
    Blowup,
    Apps,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormulaArg {
    Conj1,
    Conj2,
    Conj3,
    Gn,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Localize the reference tuples and extract the universal series.
    Universal {
        kind: Kind,
        /// Number of q-coefficients.
        #[arg(long)]
        order: usize,
        /// Instanton s-window (default 4 * order).
        #[arg(long)]
        window: Option<i64>,
        #[arg(long, value_enum, default_value = "chi-y")]
        genus: GenusArg,
    },
    /// Compare localization against closed formulas.
    Verify {
        target: VerifyTarget,
        /// Shipped lattice name or path to a lattice TOML file.
        #[arg(long, default_value = "k3")]
        lattice: String,
        #[arg(long = "L", default_value = "0")]
        l: String,
        #[arg(long, default_value = "0")]
        c1: String,
        #[arg(long, default_value_t = 6)]
        max_vd: i64,
        /// Sum over every SW class and ignore the polarization.
        #[arg(long)]
        strong_form: bool,
    },
    /// Coefficients of a closed formula per virtual dimension.
    Table {
        #[arg(long)]
        lattice: String,
        #[arg(long = "L", default_value = "0")]
        l: String,
        #[arg(long, default_value = "0")]
        c1: String,
        #[arg(long, value_enum)]
        formula: FormulaArg,
        #[arg(long, default_value_t = 10)]
        max_vd: i64,
        /// Interpolation weight of the gn series.
        #[arg(long, default_value = "1")]
        lambda: String,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: thread pool: {}", e);
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", e);
            match e {
                Error::Config(_) | Error::Parse(_) | Error::Io(_) | Error::Json(_) | Error::InsufficientOrder(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn run(cli: &Cli) -> Result<bool, Error> {
    let cache = if cli.no_cache { None } else { Some(Cache::from_env()) };
    match &cli.command {
        Command::Universal { kind, order, window, genus } => {
            if *order == 0 {
                return Err(Error::Config("--order must be at least 1".into()));
            }
            match kind {
                Kind::Inst => {
                    let req = InstantonRequest { order: *order, s_window: window.unwrap_or(4 * *order as i64), seed: cli.seed };
                    match genus {
                        GenusArg::Holomorphic => universal_inst(cache.as_ref(), &HolomorphicGenus, &req),
                        GenusArg::ChiY => universal_inst(cache.as_ref(), &ChiYGenus, &req),
                    }
                }
                Kind::Mono => universal_mono(cache.as_ref(), &MonopoleRequest { order: *order, seed: cli.seed }),
            }
        }
        Command::Verify { target, lattice, l, c1, max_vd, strong_form } => {
            let t = target_from(lattice, l, c1, *max_vd, *strong_form)?;
            let engine = Engine { cache, seed: cli.seed };
            let outcomes = match target {
                VerifyTarget::Conj1 => checks::conj1(&t, &engine)?,
                VerifyTarget::Conj2 => checks::conj2(&t, &engine)?,
                VerifyTarget::Conj3 => checks::conj3(&t, &engine)?,
                VerifyTarget::Thm2 => checks::thm2(24)?,
                VerifyTarget::ClosedForms => checks::closed_forms(&t)?,
                VerifyTarget::Limits => checks::limits(30)?,
                VerifyTarget::Blowup => checks::blowup(&t, 20)?,
                VerifyTarget::Apps => checks::apps(&t)?,
            };
            Ok(report(&outcomes))
        }
        Command::Table { lattice, l, c1, formula, max_vd, lambda, format } => {
            let t = target_from(lattice, l, c1, *max_vd, false)?;
            let lambda = parse_rat(lambda).ok_or_else(|| Error::Config(format!("bad --lambda {:?}", lambda)))?;
            let f = match formula {
                FormulaArg::Conj1 => Formula::Conj1,
                FormulaArg::Conj2 => Formula::Conj2,
                FormulaArg::Conj3 => Formula::Conj3,
                FormulaArg::Gn => Formula::Gn,
            };
            let (series, rows) = checks::table(f, &t, &lambda)?;
            match format {
                Format::Table => {
                    println!("# {} on {}, L = {:?}, c1 = {:?}", formula_name(f), t.lattice.name, t.l, t.c1);
                    println!("{:>4}  value", "vd");
                    for (vd, v) in &rows {
                        println!("{:>4}  {}", vd, v);
                    }
                }
                Format::Json => {
                    let doc = table_json(f, &t, &lambda, &series, &rows);
                    println!("{}", serde_json::to_string_pretty(&doc)?);
                }
            }
            Ok(true)
        }
    }
}

fn target_from(lattice: &str, l: &str, c1: &str, max_vd: i64, strong_form: bool) -> Result<Target, Error> {
    let lat = SurfaceLattice::load(lattice)?;
    let r = lat.rank();
    let (l, c1) = (class_arg(l, r)?, class_arg(c1, r)?);
    lat.check_class(&l)?;
    lat.check_class(&c1)?;
    if max_vd < 0 {
        return Err(Error::Config("--max-vd must be nonnegative".into()));
    }
    Ok(Target { lattice: lat, l, c1, max_vd, strong_form })
}

/// A class given by its leading coordinates; the rest are zero.
fn class_arg(s: &str, rank: usize) -> Result<Vec<i64>, Error> {
    let mut v = parse_class(s, rank)?;
    if v.len() < rank {
        v.resize(rank, 0);
    }
    Ok(v)
}

fn report(outcomes: &[Outcome]) -> bool {
    for o in outcomes {
        println!("{}", o);
    }
    let failed = outcomes.iter().filter(|o| !o.passed()).count();
    println!("{} checks, {} failed", outcomes.len(), failed);
    failed == 0
}

fn status_line(status: Status, cache: Option<&Cache>) -> String {
    let s = match status {
        Status::Hit => "loaded from cache",
        Status::Computed => "computed",
        Status::Recomputed => "stale cache entry replaced",
    };
    match cache {
        Some(c) => format!("{} ({})", s, c.dir().display()),
        None => format!("{} (cache disabled)", s),
    }
}

fn show_series<C: Coeff + std::fmt::Display>(s: &TruncatedSeries<C>) -> String {
    let var = &s.vars()[0].name;
    let parts: Vec<String> = s
        .terms()
        .iter()
        .map(|(e, c)| match e[0] {
            0 => format!("({})", c),
            k => format!("({})*{}^{}", c, var, k),
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn universal_inst<G: Genus>(cache: Option<&Cache>, genus: &G, req: &InstantonRequest) -> Result<bool, Error>
where
    G::Out: std::fmt::Display,
{
    let (entry, status) = cache::universal_a(cache, genus, req)?;
    println!("universal instanton series, genus {}, q-order {}, s-window {}: {}", genus.name(), req.order, req.s_window, status_line(status, cache));
    let u = entry.universal();
    let mut ok = inputs_consistent(&entry);
    for j in 0..u.logs.len() {
        let a = u.series(j)?;
        let q0 = q_coefficient(&a, 0)?;
        ok &= q0.terms().len() == 1 && q0.coeff1(0) == G::Out::one();
        for k in 0..req.order as i64 {
            println!("A{} q^{}: {}", j + 1, k, show_series(&q_coefficient(&a, k)?));
        }
    }
    Ok(ok)
}

fn universal_mono(cache: Option<&Cache>, req: &MonopoleRequest) -> Result<bool, Error> {
    let (entry, status) = cache::universal_b(cache, req)?;
    println!("universal monopole series, q-order {}: {}", req.order, status_line(status, cache));
    let u = entry.universal();
    for (j, b) in monopole::b_series(&u)?.iter().enumerate() {
        println!("B{} = {}", j + 1, show_series(b));
    }
    for (j, c) in monopole::c_from_b(&u)?.iter().enumerate() {
        println!("C{} = {}", j + 1, show_series(c));
    }
    Ok(inputs_consistent(&entry))
}

/// The stored inputs are reproduced by the stored solution.
fn inputs_consistent<C: Coeff>(e: &Entry<C>) -> bool {
    let u = e.universal();
    e.vectors.iter().zip(&e.inputs).all(|(v, z)| u.eval_at(v).map(|s| &s == z).unwrap_or(false))
}

fn formula_name(f: Formula) -> &'static str {
    match f {
        Formula::Conj1 => "conj1",
        Formula::Conj2 => "conj2",
        Formula::Conj3 => "conj3",
        Formula::Gn => "gn",
    }
}

fn table_json(f: Formula, t: &Target, lambda: &Rat, series: &TableSeries, rows: &[(i64, String)]) -> Value {
    let class = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let series = match series {
        TableSeries::X(s) => s.to_json(),
        TableSeries::Y(s) => s.to_json(),
    };
    json!({
        "formula": formula_name(f),
        "lattice": t.lattice.name,
        "L": class(&t.l),
        "c1": class(&t.c1),
        "lambda": format_rat(lambda),
        "series": series,
        "rows": rows.iter().map(|(vd, v)| json!({ "vd": vd.to_string(), "value": v })).collect::<Vec<_>>(),
    })
}
