//! Command-line front end. Exit codes: 0 true, valid or verified; 1 false,
//! countermodel or rejected; 2 usage or input error.

use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::conditions::{admissible, ConditionSet};
use crate::decision::{count_admissible, decide, filtration, Budget, SearchConfig};
use crate::logic::Logic;
use crate::proofs::{verify, Proof};
use crate::semantics::{ModelDocument, RelatingModel, Verdict};
use crate::syntax::{parse, subformula_closure, Formula};

#[derive(Parser)]
#[command(name = "bclkit", version, about = "Boolean connexive logics over relating semantics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse formulas and print them in canonical form.
    Parse {
        /// Formulas; `-` reads one per line from stdin.
        #[arg(required = true)]
        formulas: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate formulas in a model, optionally checking admissibility.
    Check {
        /// Model JSON, or a countermodel verdict emitted by `decide`. `-` is stdin.
        #[arg(long)]
        model: String,
        /// World to evaluate at. Defaults to a verdict's world, else every world.
        #[arg(long)]
        world: Option<String>,
        #[command(flatten)]
        logic: LogicArgs,
        formulas: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// List the conditions of a logic, or report a model's violations of them.
    Conditions {
        #[command(flatten)]
        logic: LogicArgs,
        #[arg(long)]
        model: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Search for a countermodel.
    Decide {
        formula: String,
        #[command(flatten)]
        logic: LogicArgs,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        json: bool,
    },
    /// Count admissible relations over the search carrier of the formulas.
    Count {
        #[arg(required = true)]
        formulas: Vec<String>,
        #[command(flatten)]
        logic: LogicArgs,
        #[arg(long)]
        no_pad: bool,
        #[arg(long)]
        json: bool,
    },
    /// Filtrate a model through the subformula closure of the formulas.
    Filtrate {
        #[arg(long)]
        model: String,
        #[arg(required = true)]
        formulas: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Verify a Hilbert-style proof file.
    Verify {
        /// Proof JSON; `-` is stdin.
        #[arg(long)]
        proof: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct LogicArgs {
    /// Registered logic such as `BCL`, `MBCL+K,T` or `MBCL+CUDL`.
    #[arg(long, conflicts_with = "conds")]
    logic: Option<String>,
    /// Explicit condition list such as `a1,b0,gcun:0,1,0,2,t`.
    #[arg(long)]
    conds: Option<String>,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, default_value_t = 2)]
    max_worlds: usize,
    /// Do not pad the carrier with negation prefixes for gcun.
    #[arg(long)]
    no_pad: bool,
    /// Report the enumeration-least countermodel.
    #[arg(long)]
    deterministic: bool,
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

/// Failure before any verdict, reported with exit code 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> InputError {
        InputError(e.to_string())
    }
}

type Outcome = Result<bool, InputError>;

struct Io<'a> {
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
}

impl Io<'_> {
    fn read(&mut self, path: &str) -> Result<String, InputError> {
        if path == "-" {
            let mut text = String::new();
            self.stdin.read_to_string(&mut text)?;
            Ok(text)
        } else {
            std::fs::read_to_string(path).map_err(|e| InputError(format!("{path}: {e}")))
        }
    }

    fn formulas(&mut self, args: &[String]) -> Result<Vec<Formula>, InputError> {
        let mut texts = Vec::new();
        for a in args {
            if a == "-" {
                let text = self.read("-")?;
                texts.extend(text.lines().filter(|l| !l.trim().is_empty()).map(str::to_string));
            } else {
                texts.push(a.clone());
            }
        }
        texts
            .iter()
            .map(|t| parse(t).map_err(|e| InputError(format!("`{t}`: {e}"))))
            .collect()
    }

    fn line(&mut self, text: impl AsRef<str>) -> Result<(), InputError> {
        writeln!(self.out, "{}", text.as_ref())?;
        Ok(())
    }

    fn json(&mut self, value: &impl serde::Serialize) -> Result<(), InputError> {
        let text = serde_json::to_string_pretty(value)?;
        self.line(text)
    }
}

impl LogicArgs {
    fn resolve(&self) -> Result<ConditionSet, InputError> {
        match (&self.logic, &self.conds) {
            (_, Some(c)) => Ok(ConditionSet::parse(c)?),
            (Some(l), None) => Ok(Logic::parse(l)?.conditions()),
            (None, None) => Ok(ConditionSet::bcl()),
        }
    }

    fn given(&self) -> bool {
        self.logic.is_some() || self.conds.is_some()
    }
}

/// Runs the command line `argv`, whose first element is the program name.
pub fn run<S: AsRef<str>>(
    argv: &[S],
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let cli = match Cli::try_parse_from(argv.iter().map(|a| a.as_ref())) {
        Ok(cli) => cli,
        Err(e) => {
            let shown = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{shown}");
                2
            } else {
                let _ = write!(stdout, "{shown}");
                0
            };
        }
    };
    let mut io = Io { stdin, out: stdout };
    match dispatch(cli.command, &mut io) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(InputError(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
    }
}

fn dispatch(command: Command, io: &mut Io) -> Outcome {
    match command {
        Command::Parse { formulas, json } => cmd_parse(io, &formulas, json),
        Command::Check {
            model,
            world,
            logic,
            formulas,
            json,
        } => cmd_check(io, &model, world, &logic, &formulas, json),
        Command::Conditions { logic, model, json } => cmd_conditions(io, &logic, model, json),
        Command::Decide {
            formula,
            logic,
            search,
            json,
        } => cmd_decide(io, &formula, &logic, &search, json),
        Command::Count {
            formulas,
            logic,
            no_pad,
            json,
        } => cmd_count(io, &formulas, &logic, !no_pad, json),
        Command::Filtrate { model, formulas, json } => cmd_filtrate(io, &model, &formulas, json),
        Command::Verify { proof, json } => cmd_verify(io, &proof, json),
    }
}

fn cmd_parse(io: &mut Io, args: &[String], json: bool) -> Outcome {
    let formulas = io.formulas(args)?;
    for f in &formulas {
        if json {
            let vars: Vec<String> = f.variables().iter().map(|v| v.to_string()).collect();
            io.json(&json!({
                "formula": f.to_string(),
                "size": f.size(),
                "modal_depth": f.modal_depth(),
                "variables": vars,
                "demodalized": f.demodalize().to_string(),
            }))?;
        } else {
            io.line(f.to_string())?;
        }
    }
    Ok(true)
}

/// A model document, or a `decide` verdict carrying one.
fn load_model(io: &mut Io, path: &str) -> Result<(RelatingModel, Option<String>), InputError> {
    let text = io.read(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    if value.get("verdict").is_some() {
        match serde_json::from_value::<Verdict>(value)? {
            Verdict::Countermodel { world, model } => {
                Ok((RelatingModel::from_document(&model)?, Some(world)))
            }
            _ => Err(InputError(format!("{path}: verdict carries no model"))),
        }
    } else {
        let doc: ModelDocument = serde_json::from_value(value)?;
        Ok((RelatingModel::from_document(&doc)?, None))
    }
}

fn cmd_check(
    io: &mut Io,
    path: &str,
    world: Option<String>,
    logic: &LogicArgs,
    args: &[String],
    json: bool,
) -> Outcome {
    let (model, recorded) = load_model(io, path)?;
    let formulas = io.formulas(args)?;
    let worlds: Vec<usize> = match world.or(recorded) {
        Some(w) => vec![model.world_index(&w)?],
        None => (0..model.worlds().len()).collect(),
    };
    let mut ok = true;
    let mut rows = Vec::new();
    for f in &formulas {
        for &w in &worlds {
            let value = model.eval_at(w, f);
            ok &= value;
            rows.push((f.to_string(), model.worlds()[w].clone(), value));
        }
    }
    let report = if logic.given() {
        Some(admissible(&model, &logic.resolve()?))
    } else {
        None
    };
    if let Some(r) = &report {
        ok &= r.admissible;
    }
    if json {
        let truth: Vec<_> = rows
            .iter()
            .map(|(f, w, v)| json!({"formula": f, "world": w, "value": v}))
            .collect();
        io.json(&json!({"truth": truth, "admissibility": report}))?;
    } else {
        for (f, w, v) in &rows {
            io.line(format!("{w} {} {f}", if *v { "|=" } else { "|/=" }))?;
        }
        if let Some(r) = &report {
            io.line(if r.admissible { "admissible" } else { "not admissible" })?;
            for v in &r.violations {
                let at = v.world.as_deref().map(|w| format!(" at {w}")).unwrap_or_default();
                io.line(format!("  {}{at}: {}", v.condition, v.reason))?;
            }
        }
    }
    Ok(ok)
}

fn cmd_conditions(io: &mut Io, logic: &LogicArgs, model: Option<String>, json: bool) -> Outcome {
    let conds = logic.resolve()?;
    let Some(path) = model else {
        let frames: Vec<&str> = conds.frame_requirements().iter().map(|p| p.name()).collect();
        if json {
            let names: Vec<String> = conds.iter().map(|c| c.to_string()).collect();
            io.json(&json!({"conditions": names, "frame": frames}))?;
        } else {
            io.line(conds.to_string())?;
            if !frames.is_empty() {
                io.line(format!("frame: {}", frames.join(", ")))?;
            }
        }
        return Ok(true);
    };
    let (model, _) = load_model(io, &path)?;
    let report = admissible(&model, &conds);
    if json {
        io.json(&report)?;
    } else if report.admissible {
        io.line("admissible")?;
    } else {
        for v in &report.violations {
            let at = v.world.as_deref().map(|w| format!(" at {w}")).unwrap_or_default();
            io.line(format!("{}{at}: {}", v.condition, v.reason))?;
        }
    }
    Ok(report.admissible)
}

fn cmd_decide(io: &mut Io, text: &str, logic: &LogicArgs, search: &SearchArgs, json: bool) -> Outcome {
    let f = parse(text).map_err(|e| InputError(format!("`{text}`: {e}")))?;
    let conds = logic.resolve()?;
    let cfg = SearchConfig {
        max_worlds: search.max_worlds,
        pad: !search.no_pad,
        deterministic: search.deterministic,
        jobs: search.jobs,
        budget: Budget::from_env()?,
    };
    let verdict = decide(&f, &conds, &cfg)?;
    if json {
        io.json(&verdict)?;
    } else {
        match &verdict {
            Verdict::Valid => io.line("valid")?,
            Verdict::BoundedValid { max_worlds, reason, .. } => {
                io.line(format!("no countermodel with up to {max_worlds} worlds ({reason})"))?
            }
            Verdict::Countermodel { world, model } => {
                io.line(format!("countermodel, refuted at {world}"))?;
                io.json(model)?;
            }
        }
    }
    Ok(!verdict.is_countermodel())
}

fn cmd_count(io: &mut Io, args: &[String], logic: &LogicArgs, pad: bool, json: bool) -> Outcome {
    let formulas = io.formulas(args)?;
    let conds = logic.resolve()?;
    let carrier = conds.search_carrier(&formulas, pad);
    let count = count_admissible(&carrier, &conds, &Budget::from_env()?)?;
    if json {
        let members: Vec<String> = carrier.iter().map(|f| f.to_string()).collect();
        io.json(&json!({"carrier": members, "count": count.to_string()}))?;
    } else {
        io.line(count.to_string())?;
    }
    Ok(true)
}

fn cmd_filtrate(io: &mut Io, path: &str, args: &[String], json: bool) -> Outcome {
    let (model, _) = load_model(io, path)?;
    let formulas = io.formulas(args)?;
    let gamma = subformula_closure(&formulas);
    let filt = filtration(&model, gamma.members())?;
    if json {
        let classes: serde_json::Map<String, serde_json::Value> = model
            .worlds()
            .iter()
            .zip(&filt.class_of)
            .map(|(w, &c)| (w.clone(), json!(filt.model.worlds()[c])))
            .collect();
        io.json(&json!({"model": filt.model.to_document(), "class_of": classes}))?;
    } else {
        io.line(filt.model.to_json())?;
    }
    Ok(true)
}

fn cmd_verify(io: &mut Io, path: &str, json: bool) -> Outcome {
    let text = io.read(path)?;
    let proof = Proof::from_json(&text)?;
    let result = verify(&proof);
    if json {
        match &result {
            Ok(()) => io.json(&json!({"verified": true, "steps": proof.steps.len()}))?,
            Err(r) => io.json(&json!({"verified": false, "rejection": r}))?,
        }
    } else {
        match &result {
            Ok(()) => io.line(format!("verified {} steps in {}", proof.steps.len(), proof.calculus.name()))?,
            Err(r) => io.line(format!("rejected at step {}: {}", r.step, r.reason))?,
        }
    }
    Ok(result.is_ok())
}
