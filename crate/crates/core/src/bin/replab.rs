use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use replab::braid::{self, BraidWord};
use replab::gf::Field;
use replab::homfly::{self, HomflyData};
use replab::knotlib::{self, KnotRecord};
use replab::matrix::FqMatrix;
use replab::pathsets;
use replab::repcount::{self, GradedVS, RepProblem, SearchMode, TargetSpec};
use replab::ruling::{self, Route};
use replab::satellite;
use replab::sqrtq::SqrtQ;
use replab::verify;

#[derive(Parser)]
#[command(name = "replab", about = "Representation and augmentation counts for Legendrian knots and satellites")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: REPLAB_THREADS, else all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum PathKind {
    Xz,
    Xy,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Satellite,
    Representation,
    Both,
}

#[derive(Subcommand)]
enum Cmd {
    /// Symbolic path matrix of a positive braid.
    PathMatrix {
        #[arg(long)]
        braid: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        mu: Option<Vec<i64>>,
        #[arg(long, value_enum, default_value = "xz")]
        kind: PathKind,
        #[arg(long)]
        inverse: bool,
    },
    /// Bruhat cell of an invertible matrix, or the full partition check.
    Bruhat {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        /// Row-major entries, comma separated.
        #[arg(long, value_delimiter = ',')]
        matrix: Option<Vec<u32>>,
    },
    /// Representation numbers of a knot on a graded vector space.
    CountReps {
        #[arg(long)]
        knot: String,
        /// Degrees of a basis of V (default: n copies of 0).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        degrees: Option<Vec<i64>>,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Differential on V, row-major, comma separated.
        #[arg(long, value_delimiter = ',')]
        d: Option<Vec<u32>>,
        #[arg(long, default_value_t = 0)]
        m: u32,
        #[arg(long)]
        q: u64,
        /// Restrict basepoint images to the path subset of this braid.
        #[arg(long)]
        path_subset: Option<String>,
        #[arg(long)]
        naive: bool,
        #[arg(long)]
        explain: bool,
    },
    /// Augmentation numbers of a knot or of one of its satellites.
    CountAugs {
        #[arg(long)]
        knot: String,
        #[arg(long)]
        satellite: Option<String>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        mu: Option<Vec<i64>>,
        #[arg(long, default_value_t = 0)]
        m: u32,
        #[arg(long)]
        q: u64,
    },
    /// The algebra of a satellite, in the text format.
    Satellite {
        #[arg(long)]
        knot: String,
        #[arg(long)]
        braid: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        mu: Option<Vec<i64>>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        m: u32,
    },
    /// Both sides of the satellite formula.
    TheoremA {
        #[arg(long)]
        knot: String,
        #[arg(long)]
        braid: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        mu: Option<Vec<i64>>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        m: u32,
        #[arg(long, value_delimiter = ',')]
        qs: Vec<u64>,
    },
    /// Ruling polynomial of a satellite from augmentation numbers.
    RulingInterp {
        #[arg(long)]
        knot: String,
        #[arg(long, default_value = "id")]
        braid: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        mu: Option<Vec<i64>>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        m: u32,
        /// `lo:hi`, inclusive.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long, value_delimiter = ',')]
        qs: Option<Vec<u64>>,
    },
    /// n-colored ruling polynomial at q.
    ColoredRuling {
        #[arg(long)]
        knot: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        m: u32,
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value = "both")]
        route: RouteArg,
    },
    /// Colored HOMFLY-PT data at a^-1 = 0 against representation counts.
    HomflyCompare {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        knot: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5")]
        qs: Vec<u64>,
        /// tb of the Legendrian, overriding the built-in metadata.
        #[arg(long, allow_hyphen_values = true)]
        tb: Option<i64>,
    },
    /// Acceptance checks.
    Verify {
        #[arg(long, default_value = "paper")]
        suite: String,
        #[arg(long)]
        criterion: Option<u32>,
    },
}

enum Failure {
    Usage(String),
    Mismatch(Value, String),
}

type Out = Result<(Value, String), Failure>;

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn load(name: &str) -> Result<KnotRecord, Failure> {
    knotlib::load(name).map_err(usage)
}

fn field(q: u64) -> Result<Field, Failure> {
    Field::new(q).map_err(usage)
}

fn parse_braid(text: &str, n: Option<usize>, mu: &Option<Vec<i64>>) -> Result<(BraidWord, Vec<i64>), Failure> {
    let t = text.trim();
    let max_letter = t
        .split(|c: char| !c.is_ascii_digit())
        .filter_map(|s| s.parse::<usize>().ok())
        .max()
        .unwrap_or(0);
    let n = n.or(mu.as_ref().map(|m| m.len())).unwrap_or(if t.starts_with("id") { max_letter.max(1) } else { max_letter + 1 });
    let b = if t.is_empty() || t.starts_with("id") { BraidWord::identity(n) } else { BraidWord::parse(n, t).map_err(usage)? };
    let mu = mu.clone().unwrap_or_else(|| vec![0; n]);
    if mu.len() != n {
        return Err(Failure::Usage(format!("--mu needs {n} values")));
    }
    Ok((b, mu))
}

fn square(n: usize, entries: &[u32], f: &Field) -> Result<FqMatrix, Failure> {
    if entries.len() != n * n {
        return Err(Failure::Usage(format!("expected {} matrix entries", n * n)));
    }
    if entries.iter().any(|&e| e >= f.q()) {
        return Err(Failure::Usage(format!("matrix entries must be below {}", f.q())));
    }
    Ok(FqMatrix::square(n, entries.iter().map(|&e| e as _).collect()))
}

fn sq(v: &SqrtQ) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn path_matrix(braid: &str, n: Option<usize>, mu: &Option<Vec<i64>>, kind: PathKind, inverse: bool) -> Out {
    let (b, mu) = parse_braid(braid, n, mu)?;
    let (dga, l) = braid::standalone_labels(&b, &mu);
    let m = match (kind, inverse) {
        (PathKind::Xz, false) => braid::path_matrix_xz(&b, &mu, &l),
        (PathKind::Xz, true) => braid::path_matrix_xz_inverse(&b, &mu, &l),
        (PathKind::Xy, false) => braid::path_matrix_xy(&b, &mu, &l),
        (PathKind::Xy, true) => braid::path_matrix_xy_inverse(&b, &mu, &l),
    }
    .map_err(usage)?;
    let rows: Vec<Vec<String>> = (0..m.n).map(|i| (0..m.n).map(|j| dga.format_poly(m.get(i, j))).collect()).collect();
    let width = rows.iter().flatten().map(|s| s.len()).max().unwrap_or(1);
    let text = rows
        .iter()
        .map(|r| r.iter().map(|s| format!("{s:>width$}")).collect::<Vec<_>>().join("  "))
        .collect::<Vec<_>>()
        .join("\n");
    let perm = braid::permutation_of(&b);
    Ok((
        json!({"braid": b.to_string(), "mu": mu, "permutation": braid::cycle_string(&perm), "reduced": braid::is_reduced(&b), "matrix": rows}),
        text,
    ))
}

fn bruhat(n: usize, q: u64, matrix: Option<Vec<u32>>) -> Out {
    let f = field(q)?;
    match matrix {
        Some(entries) => {
            let a = square(n, &entries, &f)?;
            let br = pathsets::bruhat_reduce(&f, &a).map_err(usage)?;
            let cell = braid::cycle_string(&br.perm);
            let word = braid::reduced_word(&br.perm).map_err(usage)?;
            Ok((
                json!({"cell": cell, "braid": word.to_string(), "d": br.d.to_rows(), "u": br.u.to_rows(), "s": br.s.to_rows()}),
                format!("cell {cell} (braid {word})\nD = {}\nU = {}\nS = {}", br.d.format(&f), br.u.format(&f), br.s.format(&f)),
            ))
        }
        None => {
            let report = pathsets::verify_bruhat_partition(&f, n);
            let text = report.cells.iter().map(|(c, k)| format!("{c:<12} {k}")).collect::<Vec<_>>().join("\n");
            let text = format!("{text}\ntotal {} of |GL({n},{q})| = {}", report.cells.iter().map(|c| c.1).sum::<usize>(), report.gl_order);
            let value = serde_json::to_value(&report).expect("serializable");
            if report.ok() {
                Ok((value, text))
            } else {
                Err(Failure::Mismatch(value, format!("{text}\npartition check failed")))
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn count_reps(
    knot: &str,
    degrees: Option<Vec<i64>>,
    n: usize,
    d: Option<Vec<u32>>,
    m: u32,
    q: u64,
    path_subset: Option<String>,
    naive: bool,
    explain: bool,
) -> Out {
    let rec = load(knot)?;
    let f = field(q)?;
    let degrees = degrees.unwrap_or_else(|| vec![0; n]);
    let dim = degrees.len();
    let v = GradedVS::new(degrees.clone());
    let d = match d {
        Some(e) => square(dim, &e, &f)?,
        None => FqMatrix::zeros(dim, dim),
    };
    let targets = match path_subset {
        Some(word) => {
            let (b, mu) = parse_braid(&word, Some(dim), &Some(degrees.clone()))?;
            vec![TargetSpec::PathSubset { braid: b, mu }; rec.dga.components.len()]
        }
        None => vec![TargetSpec::AllUnits; rec.dga.components.len()],
    };
    let problem = RepProblem::new(rec.dga.clone(), f, v, d, m, targets);
    let mode = if naive { SearchMode::Naive } else { SearchMode::Pruned };
    let count = repcount::count_reps_with(&problem, mode).map_err(usage)?;
    let report = repcount::rep_from_count(&problem, count).map_err(usage)?;
    let mut text = format!(
        "knot {}  V degrees {degrees:?}  m = {m}  q = {q}\ncount      {}\nRep        {}\nreduced    {}",
        rec.dga.name, report.count, report.rep_number, report.reduced
    );
    let mut value = serde_json::to_value(&report).expect("serializable");
    if let Some(c) = rec.citation() {
        text.push_str(&format!("\nsource     {c}"));
    }
    if explain {
        let (cost, steps) = repcount::explain(&problem).map_err(usage)?;
        text.push_str(&format!("\nplan (about q^{cost:.1} nodes):"));
        for s in &steps {
            text.push_str(&format!("\n  {:<10} {}", s.kind, s.vars.join(" ")));
        }
        value["plan"] = serde_json::to_value(&steps).expect("serializable");
    }
    Ok((value, text))
}

fn count_augs(knot: &str, sat: Option<String>, mu: Option<Vec<i64>>, m: u32, q: u64) -> Out {
    let rec = load(knot)?;
    let (count, value, name) = match sat {
        Some(word) => {
            let (b, mu) = parse_braid(&word, None, &mu)?;
            let (c, v) = ruling::satellite_aug(&rec.dga, &b, &mu, m, q).map_err(usage)?;
            (c, v, format!("S({}, {b})", rec.dga.name))
        }
        None => {
            let f = field(q)?;
            let c = repcount::count_reps(&RepProblem::augmentations(rec.dga.clone(), f, m)).map_err(usage)?;
            (c, repcount::aug_from_count(&rec.dga, m, q, c), rec.dga.name.clone())
        }
    };
    Ok((
        json!({"count": count, "aug_number": sq(&value)}),
        format!("{name}  m = {m}  q = {q}\ncount       {count}\naug number  {value}"),
    ))
}

fn satellite_cmd(knot: &str, word: &str, mu: Option<Vec<i64>>, n: Option<usize>, m: u32) -> Out {
    let rec = load(knot)?;
    let (b, mu) = parse_braid(word, n, &mu)?;
    let sat = satellite::build_satellite(&rec.dga, &b, &mu).map_err(usage)?;
    let decomposition = satellite::sigma_decomposition(&sat, m);
    let out = knotlib::serialize(&KnotRecord { dga: sat.dga.clone(), meta: Default::default() });
    let dist = sat.dga.degree_distribution();
    Ok((
        json!({"dga": out, "degrees": dist, "sigma": decomposition}),
        format!(
            "{out}# degrees {dist:?}\n# sigma_{m}: X_a {} + X_xy {} + X_p {} = {}",
            decomposition.x_a, decomposition.x_xy, decomposition.x_p, decomposition.total
        ),
    ))
}

fn theorem_a(knot: &str, word: &str, mu: Option<Vec<i64>>, n: Option<usize>, m: u32, qs: Vec<u64>) -> Out {
    let rec = load(knot)?;
    let (b, mu) = parse_braid(word, n, &mu)?;
    let qs = if qs.is_empty() { vec![2] } else { qs };
    let mut reports = Vec::new();
    let mut lines = Vec::new();
    for q in qs {
        let r = ruling::theorem_a_check(&rec.dga, &b, &mu, m, q).map_err(usage)?;
        lines.push(format!(
            "q = {q:<3} augmentations {:<10} {:<28} representations {:<10} {:<28} {}",
            r.aug_count,
            r.lhs.to_string(),
            r.rep_count,
            r.rhs.to_string(),
            if r.equal { "equal" } else { "DIFFERENT" }
        ));
        reports.push(r);
    }
    let ok = reports.iter().all(|r| r.equal);
    let value = serde_json::to_value(&reports).expect("serializable");
    let text = lines.join("\n");
    if ok {
        Ok((value, text))
    } else {
        Err(Failure::Mismatch(value, text))
    }
}

#[allow(clippy::too_many_arguments)]
fn ruling_interp(knot: &str, word: &str, mu: Option<Vec<i64>>, n: Option<usize>, m: u32, window: Option<String>, qs: Option<Vec<u64>>) -> Out {
    let rec = load(knot)?;
    let (b, mu) = parse_braid(word, n, &mu)?;
    let sat = satellite::build_satellite(&rec.dga, &b, &mu).map_err(usage)?;
    let chords = sat.dga.chords().len() as i64;
    let window = match window {
        Some(w) => {
            let (lo, hi) = w.split_once(':').ok_or_else(|| Failure::Usage("--window takes lo:hi".into()))?;
            (lo.trim().parse().map_err(usage)?, hi.trim().parse().map_err(usage)?)
        }
        None => (-2 * chords, 2 * chords),
    };
    let default_qs: &[u64] = if m % 2 == 1 { &[2, 4, 8, 16] } else { &[2, 3, 4, 5, 7, 8, 9, 11, 13] };
    let qs = qs.unwrap_or_else(|| default_qs.to_vec());
    let mut values = Vec::new();
    for &q in &qs {
        values.push((q, ruling::satellite_ruling_value(&rec.dga, &b, &mu, m, q).map_err(usage)?));
    }
    let poly = ruling::interpolate_ruling(&values, window)
        .map_err(|e| Failure::Usage(format!("{e} (window {}:{}); pass more --qs or a narrower --window", window.0, window.1)))?;
    let mut text: Vec<String> = values.iter().map(|(q, v)| format!("q = {q:<3} Aug = {v}")).collect();
    text.push(format!("R(z) = {poly}"));
    if !poly.is_integral() || !poly.single_parity() {
        text.push("note: coefficients are not integral or mix parities".into());
    }
    let vals: Vec<Value> = values.iter().map(|(q, v)| json!({"q": q, "value": sq(v)})).collect();
    Ok((json!({"window": [window.0, window.1], "values": vals, "polynomial": poly, "text": poly.to_string()}), text.join("\n")))
}

fn colored(knot: &str, n: usize, m: u32, q: u64, route: RouteArg) -> Out {
    let rec = load(knot)?;
    let route = match route {
        RouteArg::Satellite => Route::Satellite,
        RouteArg::Representation => Route::Representation,
        RouteArg::Both => Route::Both,
    };
    let v = ruling::colored_ruling(&rec.dga, n, m, q, route).map_err(usage)?;
    let mut lines: Vec<String> = v.breakdown.iter().map(|t| format!("  {:<14} l = {}  Aug = {}", t.braid, t.length, t.aug)).collect();
    if let Some(s) = &v.satellite {
        lines.push(format!("satellite route       {s}"));
    }
    if let Some(r) = &v.representation {
        lines.push(format!("representation route  {r}"));
    }
    let value = serde_json::to_value(&v).expect("serializable");
    match v.routes_agree() {
        Some(false) => Err(Failure::Mismatch(value, format!("{}\nroutes differ", lines.join("\n")))),
        _ => Ok((value, lines.join("\n"))),
    }
}

fn homfly_compare(path: &str, knot: &str, n: Option<usize>, qs: Vec<u64>, tb: Option<i64>) -> Out {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
    let data = HomflyData::parse(&text).map_err(usage)?;
    let rec = load(knot)?;
    let n = n.unwrap_or(data.n);
    let mut meta = rec.meta.clone();
    if tb.is_some() {
        meta.tb = tb;
    }
    let poly = data
        .legendrian(meta.tb)
        .ok_or_else(|| Failure::Usage("the data is not in the Legendrian framing; pass --tb".into()))?;
    let bounds = homfly::check_degree_bounds(&poly, &meta, n, Some(&rec.dga));
    let report = homfly::compare_with_rep(&poly, &rec.dga, n, &qs).map_err(usage)?;
    let mut lines = vec![format!("P|_(a^-1=0) = {}", report.specialization)];
    for r in &report.rows {
        lines.push(format!("q = {:<3} HOMFLY {:<24} Rep_2 {:<24} {}", r.q, r.homfly.to_string(), r.rep.to_string(), if r.equal { "equal" } else { "DIFFERENT" }));
    }
    lines.push(format!(
        "deg_a P = {}, bound -n|r| = {}, within bound: {}",
        bounds.deg_a.map_or("-inf".to_string(), |d| d.to_string()),
        bounds.bound, bounds.within_bound
    ));
    if let Some(s) = bounds.sharp {
        let witness = match bounds.witness_found {
            Some(true) => "found",
            Some(false) => "none",
            None => "not searched",
        };
        lines.push(format!("sharp: {s}; representation witness at q = 2: {witness}"));
    }
    let value = json!({"compare": report, "bounds": bounds});
    if report.all_equal {
        Ok((value, lines.join("\n")))
    } else {
        Err(Failure::Mismatch(value, lines.join("\n")))
    }
}

fn verify_cmd(suite: &str, criterion: Option<u32>) -> Out {
    if suite != "paper" {
        return Err(Failure::Usage(format!("unknown suite {suite}; the only suite is paper")));
    }
    let results = match criterion {
        Some(id) => vec![verify::run(id).ok_or_else(|| Failure::Usage(format!("criteria are numbered 1 to {}", verify::CRITERIA.len())))?],
        None => verify::run_all(),
    };
    let text = results
        .iter()
        .map(|r| format!("[{}] {:>2} {:<40} {}", if r.passed { "PASS" } else { "FAIL" }, r.id, r.title, r.detail))
        .collect::<Vec<_>>()
        .join("\n");
    let value = serde_json::to_value(&results).expect("serializable");
    if results.iter().all(|r| r.passed) {
        Ok((value, text))
    } else {
        Err(Failure::Mismatch(value, text))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads.or_else(|| std::env::var("REPLAB_THREADS").ok().and_then(|s| s.parse().ok()));
    if let Some(t) = threads {
        if rayon::ThreadPoolBuilder::new().num_threads(t).build_global().is_err() {
            eprintln!("could not configure {t} threads");
            return ExitCode::from(2);
        }
    }
    let out = match cli.cmd {
        Cmd::PathMatrix { braid, n, mu, kind, inverse } => path_matrix(&braid, n, &mu, kind, inverse),
        Cmd::Bruhat { n, q, matrix } => bruhat(n, q, matrix),
        Cmd::CountReps { knot, degrees, n, d, m, q, path_subset, naive, explain } => {
            count_reps(&knot, degrees, n, d, m, q, path_subset, naive, explain)
        }
        Cmd::CountAugs { knot, satellite, mu, m, q } => count_augs(&knot, satellite, mu, m, q),
        Cmd::Satellite { knot, braid, mu, n, m } => satellite_cmd(&knot, &braid, mu, n, m),
        Cmd::TheoremA { knot, braid, mu, n, m, qs } => theorem_a(&knot, &braid, mu, n, m, qs),
        Cmd::RulingInterp { knot, braid, mu, n, m, window, qs } => ruling_interp(&knot, &braid, mu, n, m, window, qs),
        Cmd::ColoredRuling { knot, n, m, q, route } => colored(&knot, n, m, q, route),
        Cmd::HomflyCompare { poly, knot, n, qs, tb } => homfly_compare(&poly, &knot, n, qs, tb),
        Cmd::Verify { suite, criterion } => verify_cmd(&suite, criterion),
    };
    let print = |value: &Value, text: &str| {
        let body = if cli.json { serde_json::to_string_pretty(value).expect("serializable") } else { text.to_string() };
        let _ = writeln!(std::io::stdout().lock(), "{body}");
    };
    match out {
        Ok((value, text)) => {
            print(&value, &text);
            ExitCode::SUCCESS
        }
        Err(Failure::Mismatch(value, text)) => {
            print(&value, &text);
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
