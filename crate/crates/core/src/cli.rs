//! Command-line front end. `main` only forwards to [`run`].

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::algebra::{parse_rational, Rational, SigmaPoly, TruncatedSeries};
use crate::appell::{appell_residual, lift_counts, lp_recursion, parking_recursion, sp_recursion};
use crate::boundary::{Boundary, PathFamily, StepShape};
use crate::certifier::{find_annihilator, required_order};
use crate::closed_forms::{lp_arith_closed, sp11_closed_series, sp1b_closed, t_polynomial};
use crate::converter::{assemble_ogf, section_gfs, tennis_catalan_product, tennis_q0_product};
use crate::error::{Error, Result};
use crate::oracle::{self, count_rect_ab, count_rect_lattice, decomposition_check};

#[derive(Debug, Parser)]
#[command(name = "periodic-paths", version, about = "Exact path counts under ultimately periodic boundaries")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Also write a metadata sidecar (tool name and version) to this path.
    #[arg(long, global = true)]
    pub meta: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct BoundarySpec {
    /// Boundary as JSON, e.g. '{"prefix":[1],"period":[2,2]}'.
    #[arg(long)]
    pub boundary: Option<String>,
    /// Tennis-ball boundary `k,l`.
    #[arg(long)]
    pub tennis: Option<String>,
    /// Arithmetic boundary `c,d` (s_i = c + i·d).
    #[arg(long)]
    pub arith: Option<String>,
    /// Staircase boundary of slope `p/q` (s_i = ⌈i·q/p⌉ + 1).
    #[arg(long)]
    pub staircase: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct FamilySpec {
    /// Diagonal step `a,b`; plain lattice paths when absent.
    #[arg(long)]
    pub shape: Option<String>,
    /// Value of σ, or `symbolic`.
    #[arg(long, default_value = "symbolic")]
    pub sigma: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// LP_n (lattice), SP_n (with --shape) or P_n (with --parking) for n = 0..=N.
    Count {
        #[command(flatten)]
        boundary: BoundarySpec,
        #[command(flatten)]
        family: FamilySpec,
        #[arg(long = "n", visible_alias = "order")]
        n: usize,
        /// Count parking functions instead of paths.
        #[arg(long, conflicts_with = "shape")]
        parking: bool,
        /// Cross-check against the brute-force oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Paths in the rectangle to (x−1, n).
    Rect {
        #[arg(long)]
        shape: Option<String>,
        #[arg(long)]
        x: u64,
        #[arg(long = "n", visible_alias = "order")]
        n: u64,
        /// Cross-check against the closed binomial count.
        #[arg(long)]
        oracle: bool,
    },
    /// Verifies the Appell relation through t^N.
    AppellCheck {
        #[command(flatten)]
        boundary: BoundarySpec,
        #[command(flatten)]
        family: FamilySpec,
        #[arg(long = "n", visible_alias = "order", default_value_t = 20)]
        n: usize,
    },
    /// Section generating functions Q_j and the assembled OGF.
    Sections {
        #[command(flatten)]
        boundary: BoundarySpec,
        #[command(flatten)]
        family: FamilySpec,
        #[arg(long = "order", visible_alias = "n")]
        order: usize,
        #[arg(long)]
        oracle: bool,
    },
    /// Tennis-ball sections for the boundary 1, (l+1)×k, (2l+1)×k, …
    Tennis {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: u64,
        #[arg(long, default_value_t = 0)]
        section: usize,
        #[arg(long = "order", visible_alias = "n")]
        order: usize,
        #[arg(long, value_enum, default_value = "sections")]
        method: TennisMethod,
    },
    /// Explicit formulas for arithmetic boundaries c + i·d.
    ClosedForm {
        #[arg(long, value_enum)]
        kind: ClosedKind,
        #[arg(long, default_value_t = 1)]
        c: u64,
        #[arg(long, default_value_t = 1)]
        d: u64,
        #[arg(long, default_value_t = 1)]
        b: u64,
        #[arg(long = "n", visible_alias = "order")]
        n: u64,
        /// Second index of T_{n,m}.
        #[arg(long, default_value_t = 0)]
        m: i64,
    },
    /// Parking functions P_n for n = 0..=N.
    Parking {
        #[command(flatten)]
        boundary: BoundarySpec,
        #[arg(long = "n", visible_alias = "order")]
        n: usize,
        #[arg(long)]
        oracle: bool,
    },
    /// Searches for an annihilating polynomial P(z, y) of the OGF or a section.
    Certify {
        #[command(flatten)]
        boundary: BoundarySpec,
        #[command(flatten)]
        family: FamilySpec,
        /// Largest z-degree tried.
        #[arg(long, default_value_t = 6)]
        dz: usize,
        /// Largest y-degree tried.
        #[arg(long, default_value_t = 6)]
        dy: usize,
        /// Certify section Q_j instead of the full OGF.
        #[arg(long)]
        section: Option<usize>,
    },
    /// LP_n for the boundary 1,2,2,3,3,3,… (m repeated m times), with a
    /// search for an annihilating polynomial of its OGF.
    Triangular {
        #[arg(long = "n", visible_alias = "order")]
        n: usize,
        /// Largest z-degree tried; no search when both budgets are 0.
        #[arg(long, default_value_t = 0)]
        dz: usize,
        /// Largest y-degree tried.
        #[arg(long, default_value_t = 0)]
        dy: usize,
    },
    /// Checks the first-crossing decomposition of the (x, n) rectangle.
    DecomposeCheck {
        #[command(flatten)]
        boundary: BoundarySpec,
        #[command(flatten)]
        family: FamilySpec,
        #[arg(long)]
        x: u64,
        #[arg(long = "n", visible_alias = "order")]
        n: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TennisMethod {
    Sections,
    Product,
    Catalan,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClosedKind {
    Lp,
    Sp11,
    Sp1b,
    T,
}

/// Exit status and the text for each stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_PRECISION: i32 = 4;

pub fn exit_status(error: &Error) -> i32 {
    match error {
        Error::Parse(_) | Error::InvalidBoundary(_) => EXIT_PARSE,
        Error::PrecisionFault(_)
        | Error::NonRationalOutput(_)
        | Error::SingularWithinPrecision
        | Error::OracleMismatch(_)
        | Error::ResidualNonzero { .. }
        | Error::BranchResidualNonzero { .. } => EXIT_PRECISION,
        _ => EXIT_DOMAIN,
    }
}

fn error_kind(error: &Error) -> &'static str {
    match exit_status(error) {
        EXIT_PARSE => "parse",
        EXIT_PRECISION => "precision",
        _ => "domain",
    }
}

/// Parses arguments (including the program name) and executes them.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let status = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let text = e.to_string();
            if status == 0 {
                Outcome { status, stdout: text, stderr: String::new() }
            } else {
                let doc = json!({"error": "parse", "message": text.trim_end()});
                Outcome { status, stdout: String::new(), stderr: format!("{doc}\n") }
            }
        }
    }
}

/// Runs one validated request. Identical requests give identical output.
pub fn execute(cli: &Cli) -> Outcome {
    let result = dispatch(&cli.command).and_then(|report| {
        if let Some(path) = &cli.meta {
            let meta = json!({
                "tool": env!("CARGO_PKG_NAME"),
                "version": env!("CARGO_PKG_VERSION"),
                "command": report.command,
            });
            std::fs::write(path, format!("{meta:#}\n"))
                .map_err(|e| Error::PreconditionViolated(format!("cannot write {}: {e}", path.display())))?;
        }
        Ok(report)
    });
    match result {
        Ok(report) => Outcome {
            status: 0,
            stdout: match cli.format {
                Format::Json => format!("{}\n", report.json),
                Format::Csv => report.csv(),
            },
            stderr: String::new(),
        },
        Err(e) => {
            let doc = json!({"error": error_kind(&e), "message": e.to_string()});
            Outcome { status: exit_status(&e), stdout: String::new(), stderr: format!("{doc}\n") }
        }
    }
}

struct Report {
    command: &'static str,
    json: Value,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Report {
    fn csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

fn parse_pair(text: &str, what: &str) -> Result<(u64, u64)> {
    let bad = || Error::Parse(format!("{what} must look like `a,b`, got `{text}`"));
    let (a, b) = text.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

pub fn parse_boundary(given: &BoundarySpec) -> Result<Boundary> {
    if let Some(text) = &given.boundary {
        return serde_json::from_str(text).map_err(|e| Error::Parse(format!("boundary JSON: {e}")));
    }
    if let Some(text) = &given.tennis {
        let (k, l) = parse_pair(text, "--tennis")?;
        return Boundary::tennis(k as usize, l);
    }
    if let Some(text) = &given.arith {
        let (c, d) = parse_pair(text, "--arith")?;
        return Boundary::arithmetic(c, d);
    }
    if let Some(text) = &given.staircase {
        let bad = || Error::Parse(format!("--staircase must look like `p/q` or `p`, got `{text}`"));
        let (p, q) = match text.split_once('/') {
            Some((p, q)) => (p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?),
            None => (text.trim().parse().map_err(|_| bad())?, 1),
        };
        return Boundary::staircase(p, q);
    }
    Err(Error::Parse("no boundary given".into()))
}

fn parse_family(shape: Option<&str>) -> Result<PathFamily> {
    match shape {
        None => Ok(PathFamily::Lattice),
        Some(text) => {
            let (a, b) = parse_pair(text, "--shape")?;
            Ok(PathFamily::Diagonal(StepShape::new(a, b)))
        }
    }
}

/// `None` for symbolic σ.
fn parse_sigma(text: &str) -> Result<Option<Rational>> {
    if text.eq_ignore_ascii_case("symbolic") {
        return Ok(None);
    }
    parse_rational(text)
        .map(Some)
        .ok_or_else(|| Error::Parse(format!("--sigma must be a rational or `symbolic`, got `{text}`")))
}

fn numeric_sigma(family: PathFamily, sigma: Option<Rational>, command: &str) -> Result<Rational> {
    match (family, sigma) {
        (_, Some(s)) => Ok(s),
        (PathFamily::Lattice, None) => Ok(Rational::from_integer(0.into())),
        (PathFamily::Diagonal(_), None) => Err(Error::PreconditionViolated(format!(
            "{command} needs a numeric --sigma for diagonal steps"
        ))),
    }
}

fn rat_str(r: &Rational) -> String {
    r.to_string()
}

fn poly_json(p: &SigmaPoly) -> Value {
    if p.is_zero() {
        return json!(["0"]);
    }
    Value::Array(p.coeffs().iter().map(|c| Value::String(c.to_string())).collect())
}

fn poly_csv(p: &SigmaPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    p.coeffs().iter().map(BigInt::to_string).collect::<Vec<_>>().join(" ")
}

fn boundary_json(b: &Boundary) -> Value {
    serde_json::to_value(b).expect("boundary serializes")
}

fn family_json(f: PathFamily) -> Value {
    match f {
        PathFamily::Lattice => Value::Null,
        PathFamily::Diagonal(s) => json!([s.a, s.b]),
    }
}

fn int_report(command: &'static str, mut json: Value, values: &[BigInt]) -> Report {
    json["values"] = Value::Array(values.iter().map(|v| Value::String(v.to_string())).collect());
    Report {
        command,
        json,
        header: vec!["n", "value"],
        rows: values.iter().enumerate().map(|(n, v)| vec![n.to_string(), v.to_string()]).collect(),
    }
}

fn rational_report(command: &'static str, mut json: Value, values: &[Rational]) -> Report {
    json["values"] = Value::Array(values.iter().map(|v| Value::String(rat_str(v))).collect());
    Report {
        command,
        json,
        header: vec!["n", "value"],
        rows: values.iter().enumerate().map(|(n, v)| vec![n.to_string(), rat_str(v)]).collect(),
    }
}

fn poly_report(command: &'static str, mut json: Value, values: &[SigmaPoly], start: usize) -> Report {
    json["values"] = Value::Array(values.iter().map(poly_json).collect());
    Report {
        command,
        json,
        header: vec!["n", "coefficients"],
        rows: values
            .iter()
            .enumerate()
            .map(|(n, v)| vec![(n + start).to_string(), poly_csv(v)])
            .collect(),
    }
}

fn check_oracle<T: PartialEq>(fast: &[T], slow: &[T], what: &str) -> Result<()> {
    match fast.iter().zip(slow).position(|(a, b)| a != b) {
        None => Ok(()),
        Some(n) => Err(Error::OracleMismatch(format!("{what} differs at n = {n}"))),
    }
}

/// Counts `ℓ_0..ℓ_N` at a numeric σ.
fn numeric_counts(boundary: &Boundary, family: PathFamily, sigma: &Rational, n: usize) -> Result<Vec<Rational>> {
    Ok(match family {
        PathFamily::Lattice => lp_recursion(boundary, n).values.into_iter().map(Rational::from_integer).collect(),
        PathFamily::Diagonal(shape) => sp_recursion(boundary, shape, n)?.values.iter().map(|p| p.eval(sigma)).collect(),
    })
}

fn dispatch(command: &Command) -> Result<Report> {
    match command {
        Command::Count { boundary, family, n, parking, oracle } => {
            let b = parse_boundary(boundary)?;
            if *parking {
                let values = parking_recursion(&b, *n).values;
                if *oracle {
                    check_oracle(&values, &oracle::parking_table_bf(&b, *n)?.values, "P")?;
                }
                let head = json!({"command": "count", "kind": "parking", "boundary": boundary_json(&b)});
                return Ok(int_report("count", head, &values));
            }
            let fam = parse_family(family.shape.as_deref())?;
            let sigma = parse_sigma(&family.sigma)?;
            let head = json!({"command": "count", "boundary": boundary_json(&b), "shape": family_json(fam)});
            match fam {
                PathFamily::Lattice => {
                    let values = lp_recursion(&b, *n).values;
                    if *oracle {
                        check_oracle(&values, &oracle::lp_table_dp(&b, *n).values, "LP")?;
                    }
                    Ok(int_report("count", head, &values))
                }
                PathFamily::Diagonal(shape) => {
                    let values = sp_recursion(&b, shape, *n)?.values;
                    if *oracle {
                        check_oracle(&values, &oracle::sp_table_dp(&b, shape, *n)?.values, "SP")?;
                    }
                    match sigma {
                        None => Ok(poly_report("count", head, &values, 0)),
                        Some(s) => {
                            let mut head = head;
                            head["sigma"] = Value::String(rat_str(&s));
                            let vals: Vec<Rational> = values.iter().map(|p| p.eval(&s)).collect();
                            Ok(rational_report("count", head, &vals))
                        }
                    }
                }
            }
        }
        Command::Rect { shape, x, n, oracle } => {
            if *x == 0 {
                return Err(Error::PreconditionViolated("x must be positive".into()));
            }
            let fam = parse_family(shape.as_deref())?;
            let head = json!({"command": "rect", "x": x, "n": n, "shape": family_json(fam)});
            match fam {
                PathFamily::Lattice => {
                    let v = count_rect_lattice(*x, *n);
                    if *oracle && v != oracle::rect_lattice_formula(*x, *n) {
                        return Err(Error::OracleMismatch("rectangle count".into()));
                    }
                    let mut json = head;
                    json["value"] = Value::String(v.to_string());
                    Ok(Report { command: "rect", json, header: vec!["value"], rows: vec![vec![v.to_string()]] })
                }
                PathFamily::Diagonal(s) => {
                    let v = count_rect_ab(s, *x, *n)?;
                    if *oracle && v != oracle::rect_ab_formula(s, *x, *n)? {
                        return Err(Error::OracleMismatch("rectangle count".into()));
                    }
                    let mut json = head;
                    json["value"] = poly_json(&v);
                    Ok(Report { command: "rect", json, header: vec!["coefficients"], rows: vec![vec![poly_csv(&v)]] })
                }
            }
        }
        Command::AppellCheck { boundary, family, n } => {
            let b = parse_boundary(boundary)?;
            let fam = parse_family(family.shape.as_deref())?;
            let counts = match fam {
                PathFamily::Lattice => lift_counts(&lp_recursion(&b, *n).values),
                PathFamily::Diagonal(shape) => sp_recursion(&b, shape, *n)?.values,
            };
            let verified = appell_residual(&b, fam, &counts, *n)?;
            let json = json!({
                "command": "appell-check",
                "boundary": boundary_json(&b),
                "shape": family_json(fam),
                "verified_order": verified,
            });
            Ok(Report { command: "appell-check", json, header: vec!["verified_order"], rows: vec![vec![verified.to_string()]] })
        }
        Command::Sections { boundary, family, order, oracle } => {
            let b = parse_boundary(boundary)?;
            let fam = parse_family(family.shape.as_deref())?;
            let sigma = numeric_sigma(fam, parse_sigma(&family.sigma)?, "sections")?;
            let s = section_gfs(&b, fam, &sigma, *order)?;
            let ogf = assemble_ogf(&s);
            if *oracle {
                let slow: Vec<Rational> = match fam {
                    PathFamily::Lattice => oracle::lp_table_dp(&b, ogf.order())
                        .values
                        .into_iter()
                        .map(Rational::from_integer)
                        .collect(),
                    PathFamily::Diagonal(shape) => oracle::sp_table_dp(&b, shape, ogf.order())?
                        .values
                        .iter()
                        .map(|p| p.eval(&sigma))
                        .collect(),
                };
                check_oracle(ogf.coeffs(), &slow, "assembled OGF")?;
            }
            let series_json = |t: &TruncatedSeries<Rational>| -> Value {
                Value::Array(t.coeffs().iter().map(|c| Value::String(rat_str(c))).collect())
            };
            let json = json!({
                "command": "sections",
                "boundary": boundary_json(&b),
                "shape": family_json(fam),
                "sigma": rat_str(&sigma),
                "prefix_counts": s.prefix_counts.iter().map(rat_str).collect::<Vec<_>>(),
                "sections": s.sections.iter().map(series_json).collect::<Vec<_>>(),
                "ogf": series_json(&ogf),
            });
            let mut rows = Vec::new();
            for (j, sec) in s.sections.iter().enumerate() {
                for (q, c) in sec.coeffs().iter().enumerate() {
                    rows.push(vec![j.to_string(), q.to_string(), rat_str(c)]);
                }
            }
            Ok(Report { command: "sections", json, header: vec!["section", "q", "value"], rows })
        }
        Command::Tennis { k, l, section, order, method } => {
            let b = Boundary::tennis(*k, *l)?;
            let series = match method {
                TennisMethod::Sections => {
                    if *section >= b.height() {
                        return Err(Error::PreconditionViolated(format!(
                            "section {section} out of range for height {}",
                            b.height()
                        )));
                    }
                    section_gfs(&b, PathFamily::Lattice, &Rational::from_integer(0.into()), *order)?
                        .sections
                        .swap_remove(*section)
                }
                TennisMethod::Product | TennisMethod::Catalan if *section != 0 => {
                    return Err(Error::PreconditionViolated("product formulas give section 0 only".into()))
                }
                TennisMethod::Product => tennis_q0_product(*k, *l, *order)?,
                TennisMethod::Catalan => {
                    if *k as u64 != *l {
                        return Err(Error::PreconditionViolated("the Catalan product needs k = l".into()));
                    }
                    tennis_catalan_product(*k, *order)?
                }
            };
            let head = json!({"command": "tennis", "k": k, "l": l, "section": section});
            Ok(rational_report("tennis", head, series.coeffs()))
        }
        Command::ClosedForm { kind, c, d, b, n, m } => {
            let head = json!({"command": "closed-form", "c": c, "d": d});
            match kind {
                ClosedKind::Lp => {
                    let values = (0..=*n).map(|i| lp_arith_closed(*c, *d, i)).collect::<Result<Vec<_>>>()?;
                    Ok(int_report("closed-form", head, &values))
                }
                ClosedKind::Sp11 => {
                    let series = sp11_closed_series(*c, *n as usize)?;
                    Ok(poly_report("closed-form", head, series.coeffs(), 0))
                }
                ClosedKind::Sp1b => {
                    let values = (1..=*n).map(|i| sp1b_closed(*b, *c, *d, i)).collect::<Result<Vec<_>>>()?;
                    let mut head = head;
                    head["b"] = json!(b);
                    head["start"] = json!(1);
                    Ok(poly_report("closed-form", head, &values, 1))
                }
                ClosedKind::T => {
                    let p = t_polynomial(*b, *c, *d, *n, *m);
                    let mut json = head;
                    json["b"] = json!(b);
                    json["n"] = json!(n);
                    json["m"] = json!(m);
                    json["value"] = poly_json(&p);
                    Ok(Report { command: "closed-form", json, header: vec!["coefficients"], rows: vec![vec![poly_csv(&p)]] })
                }
            }
        }
        Command::Parking { boundary, n, oracle } => {
            let b = parse_boundary(boundary)?;
            let values = parking_recursion(&b, *n).values;
            if *oracle {
                check_oracle(&values, &oracle::parking_table_bf(&b, *n)?.values, "P")?;
            }
            let head = json!({"command": "parking", "boundary": boundary_json(&b)});
            Ok(int_report("parking", head, &values))
        }
        Command::Certify { boundary, family, dz, dy, section } => {
            let b = parse_boundary(boundary)?;
            let fam = parse_family(family.shape.as_deref())?;
            let sigma = numeric_sigma(fam, parse_sigma(&family.sigma)?, "certify")?;
            let need = required_order(*dz, *dy);
            let (k, r) = (b.height(), b.prefix_len());
            let series = match section {
                None => TruncatedSeries::new(numeric_counts(&b, fam, &sigma, need)?),
                Some(j) if *j < k => {
                    let counts = numeric_counts(&b, fam, &sigma, r + k * need + j)?;
                    TruncatedSeries::new((0..=need).map(|q| counts[r + q * k + j].clone()).collect())
                }
                Some(j) => {
                    return Err(Error::PreconditionViolated(format!("section {j} out of range for height {k}")))
                }
            };
            let found = find_annihilator(&series, *dz, *dy)?;
            let mut json = json!({
                "command": "certify",
                "boundary": boundary_json(&b),
                "shape": family_json(fam),
                "sigma": rat_str(&sigma),
                "section": section,
            });
            match found {
                Some(p) => {
                    json["certificate"] = serde_json::to_value(&p).expect("certificate serializes");
                    json["polynomial"] = Value::String(p.to_polynomial_string());
                    let rows = p
                        .coeffs
                        .iter()
                        .enumerate()
                        .flat_map(|(j, row)| {
                            row.iter().enumerate().map(move |(i, c)| vec![i.to_string(), j.to_string(), c.to_string()])
                        })
                        .collect();
                    Ok(Report { command: "certify", json, header: vec!["z_power", "y_power", "coefficient"], rows })
                }
                None => {
                    json["certificate"] = Value::Null;
                    Ok(Report { command: "certify", json, header: vec!["z_power", "y_power", "coefficient"], rows: vec![] })
                }
            }
        }
        Command::Triangular { n, dz, dy } => {
            let need = if *dz + *dy == 0 { 0 } else { required_order(*dz, *dy) };
            let len = (*n).max(need);
            let terms: Vec<u64> = (1u64..).flat_map(|m| std::iter::repeat_n(m, m as usize)).take(len).collect();
            let counts = oracle::lp_counts_for_terms(&terms);
            let mut json = json!({"command": "triangular"});
            if need > 0 {
                let series = TruncatedSeries::new(counts.iter().cloned().map(Rational::from_integer).collect());
                json["certificate"] = match find_annihilator(&series, *dz, *dy)? {
                    Some(p) => {
                        json["polynomial"] = Value::String(p.to_polynomial_string());
                        serde_json::to_value(&p).expect("certificate serializes")
                    }
                    None => Value::Null,
                };
            }
            Ok(int_report("triangular", json, &counts[..=*n]))
        }
        Command::DecomposeCheck { boundary, family, x, n } => {
            let b = parse_boundary(boundary)?;
            let fam = parse_family(family.shape.as_deref())?;
            if !decomposition_check(&b, fam, *x, *n)? {
                return Err(Error::OracleMismatch("rectangle decomposition".into()));
            }
            let json = json!({
                "command": "decompose-check",
                "boundary": boundary_json(&b),
                "shape": family_json(fam),
                "x": x,
                "n": n,
                "holds": true,
            });
            Ok(Report { command: "decompose-check", json, header: vec!["holds"], rows: vec![vec!["true".into()]] })
        }
    }
}
