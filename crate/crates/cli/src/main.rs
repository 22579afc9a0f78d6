use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use silting::algebra::Algebra;
use silting::indec::{catalog, IndSet};
use silting::io::{describe_complex, load_algebra, load_complex, load_module, module_to_json};
use silting::report::{recheck, Report};
use silting::repmod::{min_presentation, Module, Presentation};
use silting::torsion::{enumerate_silting_classes, hrs_report};
use silting::{seeded_rng, silting as sil, twoterm, verify, Error, DEFAULT_SEED};

#[derive(Parser)]
#[command(name = "silting", version, about = "Silting modules and two-term complexes over bound quiver algebras")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Clone)]
struct Common {
    /// Algebra file
    #[arg(short = 'A', long = "algebra")]
    algebra: Option<PathBuf>,
    /// Module file
    #[arg(short = 'M', long = "module")]
    module: Option<PathBuf>,
    /// Two-term complex (or presentation) file
    #[arg(short = 'C', long = "complex")]
    complex: Option<PathBuf>,
    /// Seed for randomized witness searches
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Draw the seed from the system clock instead
    #[arg(long)]
    wall_clock_seed: bool,
    /// Expected field characteristic; the algebra file must record the same one
    #[arg(short = 'p', long = "prime")]
    p: Option<u32>,
    /// Write the report here instead of standard output
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
    /// Re-verify every embedded claim before emitting the report
    #[arg(long)]
    recheck: bool,
}

#[derive(Copy, Clone, ValueEnum)]
enum Kind {
    Silting,
    Indecomposables,
    TwoSilting,
}

#[derive(Subcommand)]
enum Verb {
    CheckTauRigid(Common),
    CheckPartialSilting(Common),
    CheckSilting(Common),
    CheckTilting(Common),
    CheckQuasitilting(Common),
    /// Bongartz completion of a partial silting module
    Complete(Common),
    /// Left Add(T)-approximation of the regular module
    Approximate(Common),
    CheckPresilting(Common),
    #[command(name = "check-2silting")]
    CheckTwoSilting(Common),
    Enumerate {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "silting")]
        kind: Kind,
    },
    VerifyBijection(Common),
    HrsReport(Common),
    /// Run the whole invariant suite
    VerifyAll(Common),
    /// Re-verify the claims inside a saved report
    Recheck {
        file: PathBuf,
    },
}

/// What a verb produced: the report and whether its verdict counts as an
/// invariant failure (exit 3) rather than a plain "no" (exit 1).
struct Outcome {
    report: Value,
    verdict: bool,
    violation_on_false: bool,
    summary: String,
}

impl Outcome {
    fn verdict(r: Report, summary: String) -> Outcome {
        Outcome {
            verdict: r.verdict,
            report: r.to_json(),
            violation_on_false: false,
            summary,
        }
    }

    fn success(report: Value, summary: String) -> Outcome {
        Outcome {
            report,
            verdict: true,
            violation_on_false: false,
            summary,
        }
    }
}

struct Inputs {
    common: Common,
    seed: u64,
}

impl Inputs {
    fn new(common: Common) -> Inputs {
        let seed = if common.wall_clock_seed {
            std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_nanos() as u64)
                .unwrap_or(DEFAULT_SEED)
        } else {
            common.seed
        };
        Inputs { common, seed }
    }

    fn algebra(&self) -> Result<Arc<Algebra>, Error> {
        let a = match (&self.common.algebra, &self.common.module, &self.common.complex) {
            (Some(path), _, _) => load_algebra(path)?,
            (None, Some(path), _) => load_module(path, None)?.algebra().clone(),
            (None, None, Some(path)) => load_complex(path, None)?.algebra().clone(),
            _ => return Err(missing("-A", "an algebra file")),
        };
        if let Some(p) = self.common.p {
            if a.field().p() != p {
                let file = self.common.algebra.as_deref().map(display).unwrap_or_default();
                return Err(Error::Parse {
                    file,
                    field: "field.p".into(),
                    reason: format!("file records p = {}, command line asks for {p}", a.field().p()),
                });
            }
        }
        Ok(a)
    }

    fn module(&self, a: &Arc<Algebra>) -> Result<Module, Error> {
        let path = self.common.module.as_ref().ok_or_else(|| missing("-M", "a module file"))?;
        load_module(path, Some(a))
    }

    fn complex(&self, a: &Arc<Algebra>) -> Result<Presentation, Error> {
        let path = self.common.complex.as_ref().ok_or_else(|| missing("-C", "a complex file"))?;
        load_complex(path, Some(a))
    }

    fn optional_complex(&self, a: &Arc<Algebra>) -> Result<Option<Presentation>, Error> {
        self.common.complex.as_ref().map(|p| load_complex(p, Some(a))).transpose()
    }

    fn catalog(&self, a: &Arc<Algebra>) -> Result<IndSet, Error> {
        catalog(a, &mut seeded_rng(self.seed))
    }
}

fn display(p: &Path) -> String {
    p.display().to_string()
}

fn missing(flag: &str, what: &str) -> Error {
    Error::Parse {
        file: "<command line>".into(),
        field: flag.into(),
        reason: format!("this verb needs {what}"),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn run(verb: Verb) -> Result<(Outcome, Common), Error> {
    let (common, out) = match verb {
        Verb::Recheck { file } => {
            let text = std::fs::read_to_string(&file).map_err(|e| Error::Parse {
                file: display(&file),
                field: "<file>".into(),
                reason: e.to_string(),
            })?;
            let doc: Value = serde_json::from_str(&text).map_err(|e| Error::Parse {
                file: display(&file),
                field: "<document>".into(),
                reason: e.to_string(),
            })?;
            let r = recheck(&doc);
            let summary = format!("{} claims checked, {} failed", r.checked, r.failures.len());
            let out = Outcome {
                verdict: r.passed(),
                report: serde_json::to_value(&r).expect("recheck serializes"),
                violation_on_false: true,
                summary,
            };
            return Ok((out, common_default()));
        }
        Verb::CheckTauRigid(c) => {
            let i = Inputs::new(c);
            let a = i.algebra()?;
            let r = sil::is_tau_rigid(&i.module(&a)?);
            let s = format!("tau-rigid: {}", yes_no(r.verdict));
            (i.common, Outcome::verdict(r, s))
        }
        Verb::CheckPartialSilting(c) => {
            let i = Inputs::new(c);
            let a = i.algebra()?;
            let m = i.module(&a)?;
            let sigma = i.optional_complex(&a)?;
            let r = sil::is_partial_silting(&m, sigma.as_ref())?;
            let s = format!("partial silting: {}", yes_no(r.verdict));
            (i.common, Outcome::verdict(r, s))
        }
        Verb::CheckSilting(c) => {
            let i = Inputs::new(c);
            let a = i.algebra()?;
            let m = i.module(&a)?;
            let ind = i.catalog(&a)?;
            let r = match i.optional_complex(&a)? {
                Some(sigma) => sil::is_silting_wrt(&m, &sigma, &ind)?,
                None => sil::is_silting(&m, &ind)?,
            };
            let s = format!("silting: {}", yes_no(r.verdict));
            (i.common, Outcome::verdict(r, s))
        }
        Verb::CheckTilting(c) => {
            let i = Inputs::new(c);
            let a = i.algebra()?;
            let m = i.module(&a)?;
            let r = sil::is_tilting(&m, &i.catalog(&a)?)?;
            let s = format!("tilting: {}", yes_no(r.verdict));
            (i.common, Outcome::verdict(r, s))
        }
        Verb::CheckQuasitilting(c) => {
            let i = Inputs::new(c);
            let a = i.algebra()?;
            let m = i.module(&a)?;
            let r = sil::is_quasitilting(&m, &i.catalog(&a)?)?;
            let s = format!("quasitilting: {}", yes_no(r.verdict));
            (i.common, Outcome::verdict(r, s))
        }
        Verb::Complete(c) => {
            let i = Inputs::new(c);
            let a = i.algebra()?;
            let m = i.module(&a)?;
            let sigma = i.optional_complex(&a)?.unwrap_or_else(|| min_presentation(&m));
            let ind = i.catalog(&a)?;
            let done = sil::bongartz_complete(&m, &sigma, &ind)?;
            let algebra_ref = i.common.algebra.as_deref().map(display).unwrap_or_default();
            let report = done.report.clone().with_witness("t_bar_module", module_to_json(&done.t_bar, &algebra_ref));
            let s = format!("completion: {}", ind.describe(&done.t_bar_decomposition));
            (i.common, Outcome::success(report.to_json(), s))
        }
        Verb::Approximate(c) => {
            let i = Inputs::new(c);
            let a = i.algebra()?;
            let m = i.module(&a)?;
            let sigma = i.optional_complex(&a)?.unwrap_or_else(|| sil::sigma_tilde(&m));
            let ind = i.catalog(&a)?;
            let seq = sil::left_approximation(&m, &sigma, &ind)?;
            let s = format!(
                "A -> {} -> {} -> 0",
                ind.describe(&seq.t0_decomposition),
                ind.describe(&seq.t1_decomposition)
            );
            (i.common, Outcome::success(seq.to_report(&ind).to_json(), s))
        }
        Verb::CheckPresilting(c) => {
            let i = Inputs::new(c);
            let a = i.algebra()?;
            let r = twoterm::is_presilting(&i.complex(&a)?);
            let s = format!("presilting: {}", yes_no(r.verdict));
            (i.common, Outcome::verdict(r, s))
        }
        Verb::CheckTwoSilting(c) => {
            let i = Inputs::new(c);
            let a = i.algebra()?;
            let sigma = i.complex(&a)?;
            let ind = i.catalog(&a)?;
            let r = twoterm::is_two_silting(&sigma, &ind, &mut seeded_rng(i.seed))?;
            let pre = twoterm::is_presilting(&sigma).verdict;
            let s = format!("presilting: {}, 2-silting: {}", yes_no(pre), yes_no(r.verdict));
            (i.common, Outcome::verdict(r.with_witness("presilting", json!(pre)), s))
        }
        Verb::Enumerate { common, kind } => {
            let i = Inputs::new(common);
            let a = i.algebra()?;
            let ind = i.catalog(&a)?;
            let (items, label): (Vec<Value>, &str) = match kind {
                Kind::Silting => (
                    enumerate_silting_classes(&ind)?.iter().map(|c| c.to_json(&ind)).collect(),
                    "silting classes",
                ),
                Kind::Indecomposables => (
                    ind.modules
                        .iter()
                        .zip(&ind.names)
                        .map(|(m, n)| json!({ "name": n, "dims": m.dims() }))
                        .collect(),
                    "indecomposables",
                ),
                Kind::TwoSilting => (
                    twoterm::enumerate_two_silting(&ind, &mut seeded_rng(i.seed))?
                        .iter()
                        .map(describe_complex)
                        .collect(),
                    "2-silting classes",
                ),
            };
            let count = items.len();
            let report = Report::new(true).with_witness("items", Value::Array(items));
            let mut doc = report.to_json();
            doc["count"] = json!(count);
            (i.common, Outcome::success(doc, format!("{count} {label}")))
        }
        Verb::VerifyBijection(c) => {
            let i = Inputs::new(c);
            let a = i.algebra()?;
            let ind = i.catalog(&a)?;
            let r = twoterm::verify_h0_bijection(&ind, &mut seeded_rng(i.seed))?;
            let s = format!("H0 bijection holds on {} classes", r.witnesses["count"]);
            (i.common, Outcome::verdict(r, s))
        }
        Verb::HrsReport(c) => {
            let i = Inputs::new(c);
            let a = i.algebra()?;
            let m = i.module(&a)?;
            let r = hrs_report(&m, &i.catalog(&a)?)?;
            let s = format!("t-structure shadows consistent: {}", yes_no(r.verdict));
            (i.common, Outcome::verdict(r, s))
        }
        Verb::VerifyAll(c) => {
            let i = Inputs::new(c);
            let a = i.algebra()?;
            let r = verify::verify_all(&a, i.seed)?;
            let failed: Vec<&str> = r.routes.iter().filter(|x| !x.verdict).map(|x| x.name.as_str()).collect();
            let s = if failed.is_empty() {
                format!("all {} invariants hold", r.routes.len())
            } else {
                format!("{} of {} invariants fail: {}", failed.len(), r.routes.len(), failed.join("; "))
            };
            let mut out = Outcome::verdict(r, s);
            out.violation_on_false = true;
            (i.common, out)
        }
    };
    Ok((out, common))
}

fn common_default() -> Common {
    Common {
        algebra: None,
        module: None,
        complex: None,
        seed: DEFAULT_SEED,
        wall_clock_seed: false,
        p: None,
        output: None,
        recheck: false,
    }
}

fn error_report(e: &Error) -> Value {
    let mut body = json!({ "message": e.to_string(), "invariant_violation": e.is_invariant_violation() });
    if let Error::Parse { file, field, reason } = e {
        body["file"] = json!(file);
        body["field"] = json!(field);
        body["reason"] = json!(reason);
    }
    json!({ "error": body })
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        _ if e.is_invariant_violation() => 3,
        Error::NotSilting(_) | Error::NotPartialSilting => 1,
        _ => 2,
    }
}

fn emit(doc: &Value, output: Option<&Path>) -> Result<(), String> {
    let text = serde_json::to_string_pretty(doc).expect("json serializes");
    match output {
        Some(path) => std::fs::write(path, text + "\n").map_err(|e| format!("{}: {e}", path.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.verb) {
        Ok((out, common)) => {
            let mut code = match (out.verdict, out.violation_on_false) {
                (true, _) => 0,
                (false, false) => 1,
                (false, true) => 3,
            };
            eprintln!("{}", out.summary);
            if common.recheck {
                let r = recheck(&out.report);
                eprintln!("recheck: {} claims, {} failures", r.checked, r.failures.len());
                for f in &r.failures {
                    eprintln!("  {f}");
                }
                if !r.passed() {
                    code = 3;
                }
            }
            if let Err(e) = emit(&out.report, common.output.as_deref()) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            let _ = emit(&error_report(&e), None);
            ExitCode::from(exit_code_for(&e))
        }
    }
}
