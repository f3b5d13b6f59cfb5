use clap::{Args, Parser, Subcommand, ValueEnum};
use grasscluster::confspace::DecoratedConfiguration;
use grasscluster::csp::{verify_csp_capped, weight_census, DEFAULT_CAP};
use grasscluster::exact::format_rational;
use grasscluster::planepartition::{enumerate, macmahon, PlanePartition};
use grasscluster::plabic::{standard_graph, standard_labels};
use grasscluster::quiver::{extended_quiver, frozen_rotation, rho_sequence, standard_quiver, Quiver, VertexId};
use grasscluster::tropical::{bijection, bijection_inverse, gz_from_x, x_from_gz, GZVector, TropicalPoint, TropicalRotation};
use grasscluster::{Error, Result};
use serde_json::{json, Value};
use std::io::Read;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "grasscluster", version, about = "Cluster coordinates, tropical rotation and cyclic sieving for plane partitions")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    format: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of random trials for randomized checks.
    #[arg(long, global = true, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Plane partitions.
    #[command(subcommand)]
    Pp(PpCmd),
    /// Cyclic sieving checks.
    #[command(subcommand)]
    Csp(CspCmd),
    /// Quivers Q_{a,n} and mutation.
    #[command(subcommand)]
    Quiver(QuiverCmd),
    /// Decorated configurations.
    #[command(subcommand)]
    Conf(ConfCmd),
    /// Tropical points.
    #[command(subcommand)]
    Trop(TropCmd),
    /// Plabic graphs.
    #[command(subcommand)]
    Plabic(PlabicCmd),
}

#[derive(Args, Debug, Clone, Copy)]
struct BoxArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    a: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    b: u64,
    #[arg(long)]
    c: u32,
}

impl BoxArgs {
    fn abc(self) -> (usize, usize, u32) {
        (self.a as usize, self.b as usize, self.c)
    }
}

#[derive(Args, Debug, Clone, Copy)]
struct AnArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    a: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    n: u64,
}

impl AnArgs {
    fn an(self) -> (usize, usize) {
        (self.a as usize, self.n as usize)
    }
}

#[derive(Subcommand, Debug)]
enum PpCmd {
    /// List P(a,b,c) in lexicographic order.
    Enumerate {
        #[command(flatten)]
        abc: BoxArgs,
        /// Stop after this many partitions.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Apply one toggle to a partition read from stdin.
    Toggle {
        #[arg(long)]
        c: u32,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
    },
    /// Apply η (or a power of it) to a partition read from stdin.
    Eta {
        #[arg(long)]
        c: u32,
        #[arg(long, default_value_t = 1)]
        power: usize,
        /// Also print every intermediate toggle.
        #[arg(long)]
        frames: bool,
    },
    /// MacMahon's polynomial as a coefficient list.
    Macmahon {
        #[command(flatten)]
        abc: BoxArgs,
    },
}

#[derive(Subcommand, Debug)]
enum CspCmd {
    /// Compare η^d fixed points with M(ζ^d) for every d.
    Verify {
        #[command(flatten)]
        abc: BoxArgs,
        /// Bound on |P(a,b,c)|·n.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u128,
        /// Also show M(ζ^d) evaluated in floating point.
        #[arg(long)]
        float: bool,
    },
    /// Census of GT weights over P(a,b,c).
    Census {
        #[command(flatten)]
        abc: BoxArgs,
    },
}

#[derive(Subcommand, Debug)]
enum QuiverCmd {
    /// Print Q_{a,n} (or its extension).
    Show {
        #[command(flatten)]
        an: AnArgs,
        #[arg(long)]
        extended: bool,
    },
    /// Mutate Q_{a,n} along a sequence of vertices such as "(1,1)".
    Mutate {
        #[command(flatten)]
        an: AnArgs,
        #[arg(long = "at", required = true)]
        at: Vec<VertexId>,
    },
    /// The sequence ρ and its frozen relabeling.
    Rho {
        #[command(flatten)]
        an: AnArgs,
        /// Verify that ρ(Q) is Q after the relabeling.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Subcommand, Debug)]
enum ConfCmd {
    /// A random generic decorated configuration.
    Sample {
        #[command(flatten)]
        an: AnArgs,
    },
    /// Run the identity suite on random configurations.
    Check {
        #[command(flatten)]
        an: AnArgs,
    },
}

#[derive(Subcommand, Debug)]
enum TropCmd {
    /// Rotate a tropical point read from stdin, cross-checking both implementations.
    Rotate {
        #[arg(long, default_value_t = 1)]
        times: usize,
    },
    /// Map a partition from stdin to its tropical point, or back with --inverse.
    Bijection {
        #[arg(long, required_unless_present = "inverse")]
        c: Option<u32>,
        #[arg(long)]
        inverse: bool,
    },
}

#[derive(Subcommand, Debug)]
enum PlabicCmd {
    /// The grid graph Γ_{a,n} with its dominating sets.
    Standard {
        #[command(flatten)]
        an: AnArgs,
        /// Emit Graphviz instead.
        #[arg(long)]
        dot: bool,
    },
    /// Square move on Γ_{a,n} at the face labelled by the given set, e.g. "3,5,6".
    Move {
        #[command(flatten)]
        an: AnArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        face: Vec<usize>,
    },
    /// Zig-zag strands of Γ_{a,n}.
    Strands {
        #[command(flatten)]
        an: AnArgs,
    },
}

/// Command output: JSON always, plus an optional human table.
struct Output {
    json: Value,
    table: Option<String>,
    ok: bool,
}

impl Output {
    fn new(json: Value) -> Self {
        Output { json, table: None, ok: true }
    }

    fn table(mut self, t: String) -> Self {
        self.table = Some(t);
        self
    }

    fn verdict(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }
}

fn read_stdin_json() -> Result<Value> {
    let mut s = String::new();
    std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(format!("stdin: {e}")))?;
    serde_json::from_str(&s).map_err(|e| Error::Parse(format!("stdin JSON: {e}")))
}

fn partition_from(v: Value) -> Result<PlanePartition> {
    if v.is_array() {
        let rows: Vec<Vec<u32>> = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
        PlanePartition::from_rows(&rows)
    } else {
        serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn rows_table(rows: &[Vec<u32>]) -> String {
    rows.iter().map(|r| r.iter().map(|x| format!("{x:>3}")).collect::<String>()).collect::<Vec<_>>().join("\n")
}

fn quiver_table(q: &Quiver) -> String {
    let mut s = format!("Q_{{{},{}}}: {} vertices, frozen: {}\n", q.a(), q.n(), q.len(),
        q.frozen_vertices().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "));
    for (u, v, m) in q.arrows() {
        let mult = if m > 1 { format!(" x{m}") } else { String::new() };
        s.push_str(&format!("{u} -> {v}{mult}\n"));
    }
    s
}

fn run_pp(cmd: PpCmd) -> Result<Output> {
    match cmd {
        PpCmd::Enumerate { abc, limit } => {
            let (a, b, c) = abc.abc();
            let all: Vec<PlanePartition> = enumerate(a, b, c).take(limit.unwrap_or(usize::MAX)).collect();
            let table = all.iter().map(|p| format!("{:?}", p.rows())).collect::<Vec<_>>().join("\n");
            let rows: Vec<Value> = all.iter().map(|p| json!({"entries": p.entries()})).collect();
            Ok(Output::new(json!({"a": a, "b": b, "c": c, "count": all.len(), "rows": rows}))
                .table(format!("{table}\ncount: {}", all.len())))
        }
        PpCmd::Toggle { c, i, j } => {
            let p = partition_from(read_stdin_json()?)?.toggle(i, j, c)?;
            Ok(Output::new(json!(p.rows())).table(rows_table(&p.rows())))
        }
        PpCmd::Eta { c, power, frames } => {
            let p = partition_from(read_stdin_json()?)?;
            if frames {
                let fr = p.eta_frames(c)?;
                let js: Vec<Value> = fr.iter().map(|((i, j), q)| json!({"toggle": [i, j], "entries": q.rows()})).collect();
                let t = fr.iter().map(|((i, j), q)| format!("tau({i},{j}):\n{}", rows_table(&q.rows()))).collect::<Vec<_>>().join("\n");
                return Ok(Output::new(json!({"rows": js})).table(t));
            }
            let q = p.eta_pow(c, power)?;
            Ok(Output::new(json!(q.rows())).table(rows_table(&q.rows())))
        }
        PpCmd::Macmahon { abc } => {
            let (a, b, c) = abc.abc();
            let m = macmahon(a, b, c)?;
            let coeffs: Vec<String> = m.coeffs().iter().map(|x| x.to_string()).collect();
            Ok(Output::new(json!({"a": a, "b": b, "c": c, "coefficients": coeffs}))
                .table(format!("M_{{{a},{b},{c}}}(q) coefficients: [{}]", coeffs.join(", "))))
        }
    }
}

fn float_value(counts: &[i64], n: usize, d: usize) -> (f64, f64) {
    counts.iter().enumerate().fold((0.0, 0.0), |(re, im), (r, &c)| {
        let t = 2.0 * std::f64::consts::PI * ((r * d) % n) as f64 / n as f64;
        (re + c as f64 * t.cos(), im + c as f64 * t.sin())
    })
}

fn run_csp(cmd: CspCmd) -> Result<Output> {
    match cmd {
        CspCmd::Verify { abc, cap, float } => {
            let (a, b, c) = abc.abc();
            let report = verify_csp_capped(a, b, c, cap)?;
            let mut json = serde_json::to_value(&report).map_err(|e| Error::Internal(e.to_string()))?;
            let mut table = report.table();
            if float {
                let n = a + b;
                let mut counts = vec![0i64; n];
                for p in enumerate(a, b, c) {
                    counts[(p.size() % n as u64) as usize] += 1;
                }
                let vals: Vec<Value> = (0..n)
                    .map(|d| {
                        let (re, im) = float_value(&counts, n, d);
                        json!({"d": d, "re": re, "im": im, "rounded": re.round(), "within_1e-6": (re - re.round()).abs() < 1e-6 && im.abs() < 1e-6})
                    })
                    .collect();
                table.push_str("floating point:\n");
                for v in &vals {
                    table.push_str(&format!("{:>3}  {:.6} + {:.6}i\n", v["d"], v["re"].as_f64().unwrap_or(0.0), v["im"].as_f64().unwrap_or(0.0)));
                }
                json["float"] = Value::Array(vals);
            }
            Ok(Output::new(json).table(table).verdict(report.all_equal))
        }
        CspCmd::Census { abc } => {
            let (a, b, c) = abc.abc();
            let census = weight_census(a, b, c);
            let rows: Vec<Value> = census.iter().map(|(w, k)| json!({"weight": w, "count": k})).collect();
            let table = census.iter().map(|(w, k)| format!("{w:?}  {k}")).collect::<Vec<_>>().join("\n");
            Ok(Output::new(json!({"a": a, "b": b, "c": c, "rows": rows})).table(table))
        }
    }
}

fn run_quiver(cmd: QuiverCmd) -> Result<Output> {
    match cmd {
        QuiverCmd::Show { an, extended } => {
            let (a, n) = an.an();
            let q = if extended { extended_quiver(a, n)? } else { standard_quiver(a, n)? };
            Ok(Output::new(serde_json::to_value(&q).map_err(|e| Error::Internal(e.to_string()))?).table(quiver_table(&q)))
        }
        QuiverCmd::Mutate { an, at } => {
            let (a, n) = an.an();
            let q = standard_quiver(a, n)?.mutate_sequence(&at)?;
            Ok(Output::new(serde_json::to_value(&q).map_err(|e| Error::Internal(e.to_string()))?).table(quiver_table(&q)))
        }
        QuiverCmd::Rho { an, check } => {
            let (a, n) = an.an();
            let rho = rho_sequence(a, n)?;
            let seq: Vec<String> = rho.iter().map(|v| v.to_string()).collect();
            let mut out = json!({"a": a, "n": n, "sequence": seq});
            let mut table = format!("rho: {}\n", seq.join(" "));
            let mut ok = true;
            if check {
                let perm = frozen_rotation(a, n)?;
                let mut pairs: Vec<(VertexId, VertexId)> = perm.iter().filter(|(u, v)| u != v && matches!(u, VertexId::Grid(..))).map(|(u, v)| (*u, *v)).collect();
                pairs.sort();
                let q = standard_quiver(a, n)?;
                let grid = pairs.iter().copied().collect();
                ok = q.mutate_sequence(&rho)?.relabel(&grid)?.same_as(&q);
                out["relabel"] = pairs.iter().map(|(u, v)| (u.to_string(), json!(v.to_string()))).collect::<serde_json::Map<_, _>>().into();
                out["isomorphic"] = json!(ok);
                for (u, v) in &pairs {
                    table.push_str(&format!("{u} -> {v}\n"));
                }
                table.push_str(&format!("rho(Q) relabeled equals Q: {ok}\n"));
            }
            Ok(Output::new(out).table(table).verdict(ok))
        }
    }
}

fn run_conf(cmd: ConfCmd, seed: u64, trials: u64) -> Result<Output> {
    match cmd {
        ConfCmd::Sample { an } => {
            let (a, n) = an.an();
            let c = DecoratedConfiguration::random(a, n, seed)?;
            let x = c.x_seed()?;
            let table = x.quiver().vertices().iter().zip(x.values()).map(|(v, val)| format!("X{v} = {}", format_rational(val))).collect::<Vec<_>>().join("\n");
            Ok(Output::new(serde_json::to_value(&c).map_err(|e| Error::Internal(e.to_string()))?).table(table))
        }
        ConfCmd::Check { an } => {
            let (a, n) = an.an();
            let perm = frozen_rotation(a, n)?;
            let rho = rho_sequence(a, n)?;
            let names = ["casimir", "potential", "rietsch_williams", "gz_product", "weights", "rotation"];
            let mut fails = [0u64; 6];
            for t in 0..trials {
                let c = DecoratedConfiguration::random(a, n, seed.wrapping_add(t))?;
                let x = c.x_seed()?;
                let w = c.potential()?;
                let checks = [
                    x.product_over(x.quiver().vertices())? == c.monodromy(),
                    c.potential_cluster()? == w && c.potential_gz()? == w,
                    c.rw_potential()? == w,
                    (1..=a).all(|i| (1..=n - a).all(|j| c.gz_value(i, j).ok() == c.gz_product_formula(i, j).ok())),
                    (1..=n).all(|k| c.weight(k).ok() == x.product_over(&grasscluster::confspace::f_set(a, n, k)).ok()),
                    {
                        let m = x.mutate_sequence(&rho)?;
                        let r = c.rotate();
                        m.quiver().vertices().iter().all(|v| r.x_value(perm[v]).ok().as_ref() == m.value(*v).ok())
                    },
                ];
                for (f, ok) in fails.iter_mut().zip(checks) {
                    *f += u64::from(!ok);
                }
            }
            let rows: Vec<Value> = names.iter().zip(&fails).map(|(nm, f)| json!({"identity": nm, "trials": trials, "failures": f})).collect();
            let table = names.iter().zip(&fails).map(|(nm, f)| format!("{nm:<18} {}/{trials} ok", trials - f)).collect::<Vec<_>>().join("\n");
            Ok(Output::new(json!({"a": a, "n": n, "rows": rows})).table(table).verdict(fails.iter().all(|&f| f == 0)))
        }
    }
}

fn run_trop(cmd: TropCmd) -> Result<Output> {
    let point_out = |pt: &TropicalPoint| -> Result<Output> {
        let js = serde_json::to_value(pt).map_err(|e| Error::Internal(e.to_string()))?;
        let table = pt.quiver().vertices().iter().zip(pt.values()).map(|(v, x)| format!("x{v} = {x}")).collect::<Vec<_>>().join("\n");
        Ok(Output::new(js).table(table))
    };
    match cmd {
        TropCmd::Rotate { times } => {
            let pt: TropicalPoint = serde_json::from_value(read_stdin_json()?).map_err(|e| Error::Parse(e.to_string()))?;
            let rot = TropicalRotation::new(pt.quiver().a(), pt.quiver().n())?;
            let mut p = pt;
            for _ in 0..times {
                p = rot.rotate(&p)?;
            }
            point_out(&p)
        }
        TropCmd::Bijection { c, inverse } => {
            let input = read_stdin_json()?;
            if inverse {
                let pt: TropicalPoint = serde_json::from_value(input).map_err(|e| Error::Parse(e.to_string()))?;
                let (p, c) = bijection_inverse(&gz_from_x(&pt)?)?;
                return Ok(Output::new(json!({"c": c, "entries": p.rows()})).table(format!("c = {c}\n{}", rows_table(&p.rows()))));
            }
            let c = c.ok_or_else(|| Error::Parameter("--c is required".into()))?;
            let l: GZVector = bijection(&partition_from(input)?, c)?;
            point_out(&x_from_gz(&l)?)
        }
    }
}

fn run_plabic(cmd: PlabicCmd) -> Result<Output> {
    let sets_out = |g: &grasscluster::plabic::PlabicGraph| -> Result<(Vec<Value>, String)> {
        let labels = standard_labels(g.a(), g.n())?;
        let mut rows = vec![];
        let mut table = String::new();
        for (_, s) in g.dominating_sets()? {
            let name = labels.get(&s).map(|v| v.to_string()).unwrap_or_else(|| "new".into());
            table.push_str(&format!("{name:<8} {s:?}\n"));
            rows.push(json!({"face": name, "set": s}));
        }
        Ok((rows, table))
    };
    match cmd {
        PlabicCmd::Standard { an, dot } => {
            let (a, n) = an.an();
            let g = standard_graph(a, n)?;
            let (rows, table) = sets_out(&g)?;
            let mut js = json!({"a": a, "n": n, "rows": rows});
            js["graph"] = serde_json::to_value(&g).map_err(|e| Error::Internal(e.to_string()))?;
            Ok(Output::new(js).table(if dot { g.to_dot() } else { table }))
        }
        PlabicCmd::Move { an, face } => {
            let (a, n) = an.an();
            let g = standard_graph(a, n)?.normalized_square_move(&face)?;
            g.check_reduced()?;
            let (rows, table) = sets_out(&g)?;
            Ok(Output::new(json!({"a": a, "n": n, "rows": rows})).table(table))
        }
        PlabicCmd::Strands { an } => {
            let (a, n) = an.an();
            let g = standard_graph(a, n)?;
            let st = g.strands()?;
            let rows: Vec<Value> = st.iter().map(|s| json!({"start": s.start, "end": s.end, "length": s.half_edges.len()})).collect();
            let table = st.iter().map(|s| format!("{} -> {}  ({} edges)", s.start, s.end, s.half_edges.len())).collect::<Vec<_>>().join("\n");
            let ok = st.iter().all(|s| s.end == (s.start + a - 1) % n + 1);
            Ok(Output::new(json!({"a": a, "n": n, "rows": rows})).table(table).verdict(ok))
        }
    }
}

fn csv_field(v: &Value) -> String {
    let s = match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

/// Flattens `rows` (or the value itself) into CSV.
fn to_csv(v: &Value) -> String {
    let rows: Vec<Value> = match v.get("rows").and_then(Value::as_array) {
        Some(r) => r.clone(),
        None => match v {
            Value::Array(r) => r.clone(),
            other => vec![other.clone()],
        },
    };
    let mut out = String::new();
    if let Some(Value::Object(first)) = rows.first() {
        let keys: Vec<&String> = first.keys().collect();
        out.push_str(&keys.iter().map(|k| k.as_str()).collect::<Vec<_>>().join(","));
        out.push('\n');
        for r in &rows {
            out.push_str(&keys.iter().map(|k| csv_field(r.get(k.as_str()).unwrap_or(&Value::Null))).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
    } else {
        for r in &rows {
            out.push_str(&csv_field(r));
            out.push('\n');
        }
    }
    out
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Resource { .. } => 3,
        Error::Parse(_) | Error::Parameter(_) | Error::Index(_) | Error::Dimension(_) | Error::MutationAtFrozen(_)
        | Error::MoveNotApplicable(_) | Error::NotInQ(_) | Error::Invariant(_) => 2,
        Error::Degenerate(_) | Error::NonGeneric(_) | Error::NotReduced(_) | Error::Internal(_) => 1,
    }
}

fn fail(msg: &str, code: u8) -> ExitCode {
    eprintln!("{}", json!({"error": msg}));
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("usage error");
            return fail(first.strip_prefix("error: ").unwrap_or(first), 2);
        }
    };
    if let Ok(t) = std::env::var("GRASSCLUSTER_THREADS") {
        match t.parse::<usize>() {
            Ok(k) if k > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
            }
            _ => return fail(&format!("GRASSCLUSTER_THREADS must be a positive integer, got {t:?}"), 2),
        }
    }
    let res = match cli.cmd {
        Cmd::Pp(c) => run_pp(c),
        Cmd::Csp(c) => run_csp(c),
        Cmd::Quiver(c) => run_quiver(c),
        Cmd::Conf(c) => run_conf(c, cli.seed, cli.trials),
        Cmd::Trop(c) => run_trop(c),
        Cmd::Plabic(c) => run_plabic(c),
    };
    match res {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", out.json),
                Format::Csv => print!("{}", to_csv(&out.json)),
                Format::Table => println!("{}", out.table.unwrap_or_else(|| out.json.to_string()).trim_end()),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => fail(&e.to_string(), exit_code(&e)),
    }
}
