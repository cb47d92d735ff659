//! The `valext` command line.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::arith::rational::{format_rational, parse_rational};
use crate::arith::{is_prime, Rational, Val};
use crate::error::Error;
use crate::extensions::{compute_extensions, ExtensionSet, ExtensionValuation, Position};
use crate::field::{NFElem, NumberField};
use crate::parse::{parse_element, parse_field};
use crate::theorems::{approx_element, check_fundamental, weak_approx};
use crate::trace::Trace;

#[derive(Parser, Debug)]
#[command(name = "valext", version, about = "Extensions of p-adic valuations to number fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Rational prime p.
    #[arg(long)]
    prime: u64,
    /// Monic integer defining polynomial in x, e.g. "x^3-x-1".
    #[arg(long)]
    poly: String,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    output: OutputFormat,
    /// Print the steps of the splitting, lifting and membership procedures.
    #[arg(long)]
    trace: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    trials: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List every extension with its e, f and prime.
    Extensions {
        #[command(flatten)]
        common: Common,
    },
    /// Value of an element at each extension.
    Value {
        #[command(flatten)]
        common: Common,
        /// Element in the generator a, e.g. "a+1".
        #[arg(long)]
        elem: String,
        /// Restrict to one extension (1-based).
        #[arg(long)]
        ext: Option<usize>,
    },
    /// Residue class of an element at each extension.
    Residue {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        elem: String,
        #[arg(long)]
        ext: Option<usize>,
    },
    /// An order element with prescribed residues, e.g. --targets "0;1".
    WeakApprox {
        #[command(flatten)]
        common: Common,
        /// One residue per extension, separated by ';', components by ','.
        #[arg(long)]
        targets: String,
    },
    /// An element of value gamma at one extension and larger value elsewhere.
    Approx {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        index: usize,
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
    },
    /// Randomized check of the fundamental identity.
    Verify {
        #[command(flatten)]
        common: Common,
    },
    /// The p-maximal order.
    Order {
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Extensions { common }
            | Command::Value { common, .. }
            | Command::Residue { common, .. }
            | Command::WeakApprox { common, .. }
            | Command::Approx { common, .. }
            | Command::Verify { common }
            | Command::Order { common } => common,
        }
    }
}

/// What the process should print and return.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Math(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::NotPrime(_) | Error::DimensionMismatch(_) => Failure::Usage(e.to_string()),
            other => Failure::Math(other),
        }
    }
}

/// Report produced by one command: JSON value plus text lines.
struct Report {
    json: Value,
    text: Vec<String>,
}

/// Runs the tool on `argv` (including the program name).
pub fn run<S: AsRef<str>>(argv: &[S]) -> Outcome {
    let args: Vec<&str> = argv.iter().map(|s| s.as_ref()).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: rendered }
            } else {
                Outcome { code: 0, stdout: rendered, stderr: String::new() }
            };
        }
    };
    let format = cli.command.common().output;
    match execute(&cli.command) {
        Ok(report) => Outcome { code: 0, stdout: render(report, format), stderr: String::new() },
        Err(Failure::Usage(msg)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(Failure::Math(e)) => {
            let stderr = format!("error: {e}\n");
            let stdout = match format {
                OutputFormat::Json => {
                    format!("{}\n", json!({"error": {"kind": e.kind(), "message": e.to_string()}}))
                }
                OutputFormat::Text => String::new(),
            };
            Outcome { code: 1, stdout, stderr }
        }
    }
}

fn render(report: Report, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => format!("{}\n", serde_json::to_string_pretty(&report.json).expect("json")),
        OutputFormat::Text => report.text.iter().map(|l| format!("{l}\n")).collect(),
    }
}

fn setup(common: &Common, trace: &mut Trace) -> Result<(NumberField, ExtensionSet), Failure> {
    if common.prime < 2 || !is_prime(common.prime) {
        return Err(Failure::Usage(format!("{} is not prime", common.prime)));
    }
    let field = parse_field(&common.poly)?;
    let set = compute_extensions(&field, common.prime, trace)?;
    Ok((field, set))
}

fn new_trace(common: &Common) -> Trace {
    if common.trace { Trace::enabled() } else { Trace::disabled() }
}

fn select(exts: &[ExtensionValuation], ext: Option<usize>) -> Result<Vec<&ExtensionValuation>, Failure> {
    match ext {
        None => Ok(exts.iter().collect()),
        Some(i) if (1..=exts.len()).contains(&i) => Ok(vec![&exts[i - 1]]),
        Some(i) => Err(Failure::Usage(format!("extension {i} out of range 1..={}", exts.len()))),
    }
}

fn val_str(v: &Val) -> String {
    v.to_string()
}

fn elem_json(x: &NFElem) -> Value {
    json!({
        "element": x.to_string(),
        "coords": x.coords().iter().map(format_rational).collect::<Vec<_>>(),
    })
}

fn header(field: &NumberField, p: u64) -> Value {
    json!({"prime": p, "poly": field.poly().to_string()})
}

fn with_trace(mut json: Value, text: &mut Vec<String>, trace: &Trace) -> Value {
    if trace.is_enabled() {
        let lines = trace.lines();
        json["trace"] = json!(lines);
        let mut all = lines;
        all.append(text);
        *text = all;
    }
    json
}

fn execute(command: &Command) -> Result<Report, Failure> {
    let common = command.common();
    let mut trace = new_trace(common);
    match command {
        Command::Extensions { .. } => {
            let (field, set) = setup(common, &mut trace)?;
            let mut json = header(&field, common.prime);
            json["extensions"] = json!(set.extensions.iter().map(|w| w.descriptor()).collect::<Vec<_>>());
            let mut text = vec![format!(
                "f = {}, p = {}: {} extension(s)",
                field.poly(),
                common.prime,
                set.extensions.len()
            )];
            for w in &set.extensions {
                let gens: Vec<String> =
                    w.prime().basis().iter().map(|g| NFElem::from_coords(g.clone()).to_string()).collect();
                text.push(format!("w_{}: e = {}, f = {}, prime = <{}>", w.index(), w.e(), w.f(), gens.join(", ")));
            }
            let json = with_trace(json, &mut text, &trace);
            Ok(Report { json, text })
        }
        Command::Value { elem, ext, .. } => {
            let (field, set) = setup(common, &mut Trace::disabled())?;
            let x = parse_element(&field, elem)?;
            let shown: String = elem.chars().filter(|c| !c.is_whitespace()).collect();
            let mut values = Vec::new();
            let mut text = Vec::new();
            for w in select(&set.extensions, *ext)? {
                let mut entry = json!({"index": w.index()});
                if trace.is_enabled() && !x.is_zero() {
                    let mut t = Trace::enabled();
                    let pos = w.decide_position_traced(&x, &mut t)?;
                    text.extend(t.lines());
                    text.push(format!("position at w_{}: {}", w.index(), pos.name()));
                    entry["position"] = json!(pos.name());
                    entry["trace"] = json!(t.lines());
                }
                let v = w.value(&x)?;
                text.push(format!("w_{}({shown}) = {}", w.index(), val_str(&v)));
                entry["value"] = json!(val_str(&v));
                values.push(entry);
            }
            let json = json!({"element": x.to_string(), "values": values});
            Ok(Report { json, text })
        }
        Command::Residue { elem, ext, .. } => {
            let (field, set) = setup(common, &mut Trace::disabled())?;
            let x = parse_element(&field, elem)?;
            let shown: String = elem.chars().filter(|c| !c.is_whitespace()).collect();
            let mut residues = Vec::new();
            let mut text = Vec::new();
            for w in select(&set.extensions, *ext)? {
                let mut entry = json!({"index": w.index()});
                if !x.is_zero() {
                    let mut t = new_trace(common);
                    let pos = w.decide_position_traced(&x, &mut t)?;
                    text.extend(t.lines());
                    entry["position"] = json!(pos.name());
                    if t.is_enabled() {
                        entry["trace"] = json!(t.lines());
                    }
                    if let Position::Outside(_) = pos {
                        return Err(Failure::Math(Error::NegativeValue));
                    }
                }
                let r = w.residue(&x)?;
                text.push(format!("res_{}({shown}) = {:?}", w.index(), r));
                entry["residue"] = json!(r);
                residues.push(entry);
            }
            let json = json!({"element": x.to_string(), "residues": residues});
            Ok(Report { json, text })
        }
        Command::WeakApprox { targets, .. } => {
            let (_, set) = setup(common, &mut trace)?;
            let parsed = parse_targets(targets, common.prime)?;
            let x = weak_approx(&set.extensions, &parsed)?;
            let mut json = elem_json(&x);
            json["residues"] = json!(parsed);
            let mut text = vec![format!("x = {x}")];
            for (w, t) in set.extensions.iter().zip(&parsed) {
                text.push(format!("res_{}(x) = {:?}", w.index(), t));
            }
            let json = with_trace(json, &mut text, &trace);
            Ok(Report { json, text })
        }
        Command::Approx { index, gamma, .. } => {
            let (_, set) = setup(common, &mut trace)?;
            let g: Rational = parse_rational(gamma)?;
            let target = select(&set.extensions, Some(*index))?[0].index() - 1;
            let x = approx_element(&set.extensions, target, &g)?;
            let mut json = elem_json(&x);
            json["index"] = json!(index);
            json["gamma"] = json!(format_rational(&g));
            let mut text = vec![format!("x = {x}")];
            let mut values = Vec::new();
            for w in &set.extensions {
                let v = w.value(&x)?;
                text.push(format!("w_{}(x) = {}", w.index(), val_str(&v)));
                values.push(json!({"index": w.index(), "value": val_str(&v)}));
            }
            json["values"] = json!(values);
            let json = with_trace(json, &mut text, &trace);
            Ok(Report { json, text })
        }
        Command::Verify { .. } => {
            let (_, set) = setup(common, &mut trace)?;
            let report = check_fundamental(&set.extensions, common.trials, common.seed)?;
            let mut text = vec![
                report.instance.clone(),
                format!("sum of e*f = {}, degree = {}, rank = {}", report.sum_ef, report.degree, report.rank),
                format!(
                    "trials: {} of {} satisfy the min formula",
                    report.trials.len() - report.failures(),
                    report.trials.len()
                ),
                format!("pass: {}", report.pass),
            ];
            let json = serde_json::to_value(&report).map_err(|e| Failure::Math(Error::Internal(e.to_string())))?;
            let json = with_trace(json, &mut text, &trace);
            Ok(Report { json, text })
        }
        Command::Order { .. } => {
            let (field, set) = setup(common, &mut trace)?;
            let order = &set.order;
            let mut json = header(&field, common.prime);
            json["index_exponent"] = json!(order.index_exponent());
            json["basis"] = json!(order
                .basis_rows()
                .iter()
                .map(|r| r.iter().map(format_rational).collect::<Vec<_>>())
                .collect::<Vec<_>>());
            let mut text = vec![format!(
                "p-maximal order at p = {} (index p^{} over Z[a]):",
                common.prime,
                order.index_exponent()
            )];
            text.extend(order.basis().iter().map(|b| format!("  {b}")));
            let json = with_trace(json, &mut text, &trace);
            Ok(Report { json, text })
        }
    }
}

fn parse_targets(s: &str, p: u64) -> Result<Vec<Vec<u64>>, Failure> {
    s.split(';')
        .map(|part| {
            part.split(',')
                .map(|c| {
                    let c = c.trim();
                    c.parse::<i64>()
                        .map(|v| v.rem_euclid(p as i64) as u64)
                        .map_err(|_| Failure::Usage(format!("bad residue component {c:?}")))
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Outcome {
        let mut v = vec!["valext"];
        v.extend_from_slice(args);
        run(&v)
    }

    #[test]
    fn value_text() {
        let o = go(&["value", "--prime", "2", "--poly", "x^2+1", "--elem", "a+1"]);
        assert_eq!((o.code, o.stdout.as_str()), (0, "w_1(a+1) = 1/2\n"));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(go(&["value", "--prime", "4", "--poly", "x^2+1", "--elem", "a"]).code, 2);
        assert_eq!(go(&["extensions", "--prime", "5", "--poly", "2x^2+1"]).code, 2);
        assert_eq!(go(&["frobnicate"]).code, 2);
        assert_eq!(go(&["--help"]).code, 0);
    }

    #[test]
    fn math_error_json() {
        let o = go(&["residue", "--prime", "5", "--poly", "x^2+1", "--elem", "1/5", "--output", "json"]);
        assert_eq!(o.code, 1);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["error"]["kind"], "NegativeValue");
    }
}
