mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use artinsum::decompose::{check_split_by_names, decompose, h2_bound_check, structure_decompose};
use artinsum::graded::{associated_graded, classify, iarrobino, is_gls};
use artinsum::grobner::{GbConfig, IdealPresentation};
use artinsum::polycore::{parse_polynomial, parse_presentation};
use artinsum::quotient::{build_algebra, ArtinAlgebra};
use artinsum::resolution::{betti_numbers, mu_from_betti, verify_cs_series, DEFAULT_TRUNCATION};
use artinsum::sums::{apolar_algebra, connected_sum, fibre_product, ConnectedSumSpec, DualPolynomial};
use artinsum::{Error, Field, PolyRing, Polynomial, Scalar};

#[derive(Parser)]
#[command(name = "artinsum", version, about = "Connected sums and fibre products of Artinian local algebras")]
struct Cli {
    /// Emit JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants, associated graded ring and Hilbert-function shape.
    Analyze {
        /// Presentation files or directories of them.
        paths: Vec<PathBuf>,
        /// Worker threads for directories.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Connected sum of two Gorenstein algebras.
    Connect {
        r: PathBuf,
        s: PathBuf,
        #[arg(long)]
        unit: Option<String>,
        #[arg(long = "socle-r")]
        socle_r: Option<String>,
        #[arg(long = "socle-s")]
        socle_s: Option<String>,
        /// Also check the Poincaré series identity to this order.
        #[arg(long = "verify-series")]
        verify_series: Option<usize>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Split a Gorenstein algebra as a connected sum.
    Decompose {
        path: PathBuf,
        /// Variable partition such as "Y1,Y2|Z".
        #[arg(long)]
        partition: Option<String>,
        /// Run only the associated-graded route.
        #[arg(long)]
        structure: bool,
    },
    /// Apolar algebra of a dual polynomial.
    Apolar {
        #[arg(long)]
        poly: String,
        /// Dual variables, comma or space separated.
        #[arg(long = "dual-vars")]
        dual_vars: String,
        #[arg(long, default_value = "QQ")]
        field: String,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Betti numbers of the residue field.
    Betti {
        path: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
        max: usize,
    },
    /// Fibre product over the residue field.
    Fibre {
        r: PathBuf,
        s: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Syntax { .. } | Error::UnknownVariable { .. } | Error::NonPrimeModulus(_) => 2,
            Error::NotZeroDimensional | Error::UnitIdeal | Error::NotLocal(_) => 3,
            Error::NotGorenstein(_) => 4,
            Error::BadSocleElement(_) => 5,
            Error::DegreeGuard { .. } | Error::RankGuard { .. } | Error::ExponentOverflow => 7,
            _ => 6,
        };
        Failure { code, message: e.to_string() }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure { code: 1, message: format!("{}: {e}", path.display()) }
}

fn gb_config() -> Result<GbConfig, Failure> {
    match std::env::var("ARTINSUM_MAX_DEGREE") {
        Ok(v) => v
            .trim()
            .parse()
            .map(|max_degree| GbConfig { max_degree })
            .map_err(|_| Failure { code: 2, message: format!("ARTINSUM_MAX_DEGREE: `{v}` is not a degree") }),
        Err(_) => Ok(GbConfig::default()),
    }
}

struct Input {
    bytes: Vec<u8>,
    algebra: ArtinAlgebra,
}

fn load(path: &Path, cfg: GbConfig) -> Result<Input, Failure> {
    let bytes = fs::read(path).map_err(|e| io_failure(path, e))?;
    let text = String::from_utf8_lossy(&bytes);
    let pres = parse_presentation(&text)?;
    let algebra = build_algebra(&IdealPresentation::from_presentation(&pres).with_config(cfg))?;
    Ok(Input { bytes, algebra })
}

fn write_output(path: &Option<PathBuf>, a: &ArtinAlgebra) -> Result<(), Failure> {
    if let Some(p) = path {
        fs::write(p, a.to_presentation().to_string()).map_err(|e| io_failure(p, e))?;
    }
    Ok(())
}

fn analyze_one(path: &Path, cfg: GbConfig) -> Result<Map<String, Value>, Failure> {
    let input = load(path, cfg)?;
    let a = &input.algebra;
    let mut m = report::envelope("analyze", &report::digest(&[&input.bytes]));
    m.insert("presentation".into(), report::presentation(a));
    m.insert("invariants".into(), report::invariants(a));
    let g = associated_graded(a)?;
    m.insert("associated_graded".into(), report::presentation(g.algebra()));
    m.insert(
        "gls".into(),
        if g.loewy_length() >= 2 { json!(is_gls(&g)?.gls) } else { Value::Null },
    );
    if a.is_gorenstein() {
        let c = classify(a)?;
        m.insert("classification".into(), json!({ "short": c.short, "stretched": c.stretched, "compressed": c.compressed }));
        m.insert("iarrobino_q0_hilbert".into(), json!(iarrobino(a)?.q0.hilbert_function()));
    } else {
        m.insert("classification".into(), Value::Null);
        m.insert("iarrobino_q0_hilbert".into(), Value::Null);
    }
    Ok(m)
}

fn collect_files(paths: &[PathBuf]) -> Result<Vec<PathBuf>, Failure> {
    let mut files = Vec::new();
    for p in paths {
        if p.is_dir() {
            let mut inner: Vec<PathBuf> = fs::read_dir(p)
                .map_err(|e| io_failure(p, e))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|q| q.is_file())
                .collect();
            inner.sort();
            files.extend(inner);
        } else {
            files.push(p.clone());
        }
    }
    Ok(files)
}

fn analyze(paths: &[PathBuf], jobs: usize, cfg: GbConfig, directory_mode: bool) -> Result<(Value, u8), Failure> {
    let files = collect_files(paths)?;
    if !directory_mode {
        let [one] = files.as_slice() else {
            return Err(Failure { code: 2, message: "expected one presentation file".into() });
        };
        return Ok((Value::Object(analyze_one(one, cfg)?), 0));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Failure { code: 1, message: e.to_string() })?;
    let results: Vec<(PathBuf, Result<Map<String, Value>, Failure>)> =
        pool.install(|| files.par_iter().map(|f| (f.clone(), analyze_one(f, cfg))).collect());
    let mut code = 0;
    let mut items = Vec::new();
    for (path, r) in results {
        let mut entry = Map::new();
        entry.insert("path".into(), json!(path.display().to_string()));
        match r {
            Ok(m) => entry.extend(m),
            Err(f) => {
                if code == 0 {
                    code = f.code;
                }
                entry.insert("error".into(), json!(f.message));
                entry.insert("exit_code".into(), json!(f.code));
            }
        }
        items.push(Value::Object(entry));
    }
    let mut m = Map::new();
    m.insert("schema".into(), json!(report::SCHEMA));
    m.insert("command".into(), json!("analyze"));
    m.insert("results".into(), Value::Array(items));
    Ok((Value::Object(m), code))
}

fn parse_scalar(text: &str, ring: &std::sync::Arc<PolyRing>) -> Result<Scalar, Failure> {
    let p = parse_polynomial(text, ring)?;
    match p.terms() {
        [] => Ok(ring.field().zero()),
        [(m, c)] if m.is_one() => Ok(c.clone()),
        _ => Err(Failure { code: 2, message: format!("`{text}` is not a scalar") }),
    }
}

fn socle_expr(text: &str, a: &ArtinAlgebra) -> Result<Polynomial, Failure> {
    let ring = a.source().map_or(a.ring(), |(r, _)| r);
    parse_polynomial(text, ring).map_err(|e| Failure { code: 5, message: format!("bad socle expression: {e}") })
}

fn run(cli: &Cli) -> Result<(Value, u8), Failure> {
    let cfg = gb_config()?;
    match &cli.command {
        Command::Analyze { paths, jobs } => {
            let directory_mode = paths.len() != 1 || paths[0].is_dir();
            analyze(paths, *jobs, cfg, directory_mode)
        }
        Command::Connect { r, s, unit, socle_r, socle_s, verify_series, output } => {
            let (ri, si) = (load(r, cfg)?, load(s, cfg)?);
            let (ra, sa) = (&ri.algebra, &si.algebra);
            let mut spec = ConnectedSumSpec::new(ra.clone(), sa.clone())?;
            if let Some(u) = unit {
                spec = spec.with_unit(parse_scalar(u, ra.ring())?);
            }
            if let Some(e) = socle_r {
                spec.socle_left = socle_expr(e, ra)?;
            }
            if let Some(e) = socle_s {
                spec.socle_right = socle_expr(e, sa)?;
            }
            let sum = connected_sum(&spec)?;
            let q = &sum.algebra;
            write_output(output, q)?;
            let mut m = report::envelope("connect", &report::digest(&[&ri.bytes, &si.bytes]));
            m.insert("trivial".into(), json!(sum.trivial));
            m.insert("unit".into(), json!(spec.unit.to_string()));
            m.insert("presentation".into(), report::presentation(q));
            m.insert("invariants".into(), report::invariants(q));
            let mut ids = Map::new();
            if !sum.trivial {
                ids.insert("length".into(), json!(q.length() + 2 == ra.length() + sa.length()));
                ids.insert(
                    "embedding_dimension".into(),
                    json!(q.embedding_dimension() == ra.embedding_dimension() + sa.embedding_dimension()),
                );
            }
            ids.insert("h2_bound".into(), json!(h2_bound_check(ra, sa, q)));
            if let Some(n) = verify_series {
                let rep = verify_cs_series(ra, sa, q, *n)?;
                ids.insert("series".into(), json!(rep.holds));
                ids.insert("phi".into(), json!(rep.phi.to_string()));
            }
            m.insert("verified_identities".into(), Value::Object(ids));
            Ok((Value::Object(m), 0))
        }
        Command::Decompose { path, partition, structure } => {
            let input = load(path, cfg)?;
            let q = &input.algebra;
            let mut m = report::envelope("decompose", &report::digest(&[&input.bytes]));
            m.insert("presentation".into(), report::presentation(q));
            m.insert("invariants".into(), report::invariants(q));
            let body = if let Some(p) = partition {
                let Some((y, z)) = p.split_once('|') else {
                    return Err(Failure { code: 2, message: format!("partition `{p}` lacks `|`") });
                };
                let names = |s: &str| s.split(',').map(str::trim).filter(|x| !x.is_empty()).map(String::from).collect::<Vec<_>>();
                let (y, z) = (names(y), names(z));
                let y: Vec<&str> = y.iter().map(String::as_str).collect();
                let z: Vec<&str> = z.iter().map(String::as_str).collect();
                report::split(&check_split_by_names(q, &y, &z)?)
            } else if *structure {
                report::decomposition(&structure_decompose(q)?)
            } else {
                report::decomposition(&decompose(q)?)
            };
            m.insert("decomposition".into(), body);
            Ok((Value::Object(m), 0))
        }
        Command::Apolar { poly, dual_vars, field, output } => {
            let f = match field.trim() {
                "QQ" => Field::Rationals,
                other => {
                    let p = other
                        .strip_prefix("GF(")
                        .and_then(|s| s.strip_suffix(')'))
                        .and_then(|s| s.trim().parse().ok())
                        .ok_or_else(|| Failure { code: 2, message: format!("unknown field `{other}`") })?;
                    Field::prime(p)?
                }
            };
            let vars: Vec<String> = dual_vars
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(String::from)
                .collect();
            let ring = PolyRing::new(f, vars);
            let dual = DualPolynomial::new(parse_polynomial(poly, &ring)?)?;
            let a = apolar_algebra(&dual)?;
            write_output(output, &a)?;
            let key = format!("{field}\n{dual_vars}\n{poly}");
            let mut m = report::envelope("apolar", &report::digest(&[key.as_bytes()]));
            m.insert("dual_polynomial".into(), json!(dual.poly().to_string()));
            m.insert("presentation".into(), report::presentation(&a));
            m.insert("invariants".into(), report::invariants(&a));
            Ok((Value::Object(m), 0))
        }
        Command::Betti { path, max } => {
            let input = load(path, cfg)?;
            let a = &input.algebra;
            let b = betti_numbers(a, *max)?;
            let mut m = report::envelope("betti", &report::digest(&[&input.bytes]));
            m.insert("invariants".into(), report::invariants(a));
            m.insert("resolution".into(), report::betti(&b));
            m.insert(
                "mu".into(),
                json!({ "from_betti": mu_from_betti(a)?, "direct": artinsum::decompose::minimal_generator_count(a) }),
            );
            Ok((Value::Object(m), 0))
        }
        Command::Fibre { r, s, output } => {
            let (ri, si) = (load(r, cfg)?, load(s, cfg)?);
            let p = fibre_product(&ri.algebra, &si.algebra)?;
            write_output(output, &p.algebra)?;
            let mut m = report::envelope("fibre", &report::digest(&[&ri.bytes, &si.bytes]));
            m.insert("trivial".into(), json!(p.trivial));
            m.insert("presentation".into(), report::presentation(&p.algebra));
            m.insert("invariants".into(), report::invariants(&p.algebra));
            Ok((Value::Object(m), 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((value, code)) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
            } else if let Some(Value::Array(items)) = value.get("results") {
                for item in items {
                    let mut out = String::new();
                    report::table(item, 0, &mut out);
                    println!("{out}");
                }
            } else {
                let mut out = String::new();
                report::table(&value, 0, &mut out);
                print!("{out}");
            }
            ExitCode::from(code)
        }
        Err(f) => {
            if cli.json {
                let v = json!({ "schema": report::SCHEMA, "error": f.message, "exit_code": f.code });
                println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
            }
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
