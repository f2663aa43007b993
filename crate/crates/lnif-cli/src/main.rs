//! Batch command-line surface for the LNIF proof tools.
//!
//! Exit codes: 0 success, 1 input error, 2 search failure,
//! 3 no countermodel within bounds, 4 check failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use lnif_core::calculus::{check_derivation, Mode};
use lnif_core::prover::{prove, ProverError, SearchConfig};
use lnif_core::semantics::{find_countermodel, goedel_valid, GoedelVerdict};
use lnif_core::syntax::parse_formula_inferring;
use lnif_core::transform::{self, InvertLeft, InvertLeftResult};
use lnif_core::{serialize, Derivation, Formula, RuleTag, Sequent, Signature};

const EXIT_INPUT: u8 = 1;
const EXIT_SEARCH: u8 = 2;
const EXIT_NO_COUNTERMODEL: u8 = 3;
const EXIT_CHECK: u8 = 4;

#[derive(Parser)]
#[command(
    name = "lnif",
    version,
    about = "Prover, proof checker, and proof transformer for first-order Gödel logic with constant domains (linear nested sequents)"
)]
struct Cli {
    /// Emit machine-readable JSON instead of human output
    #[arg(long = "format", value_parser = ["json", "text"], default_value = "text", global = true)]
    format: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckMode {
    Official,
    Extended,
    WithCut,
}

impl From<CheckMode> for Mode {
    fn from(m: CheckMode) -> Mode {
        match m {
            CheckMode::Official => Mode::Official,
            CheckMode::Extended => Mode::Extended,
            CheckMode::WithCut => Mode::WithCut,
        }
    }
}

#[derive(Args)]
struct ProveOpts {
    /// Formulas to prove (each wrapped as `|- F`)
    #[arg(required = true)]
    formulas: Vec<String>,
    /// Search depth bound
    #[arg(long)]
    depth: Option<usize>,
    /// Per-formula witness cap for (forall-l)/(exists-r)
    #[arg(long)]
    witness_cap: Option<usize>,
    /// Enable or disable memoization (on/off)
    #[arg(long)]
    memo: Option<String>,
    /// Explore existential witnesses in parallel (on/off)
    #[arg(long)]
    parallel: Option<String>,
    /// key=value config file (depth, witness_cap, memo, parallel)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write the derivation (of the first input) to this file
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Worker threads for batch input
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Prove formulas by bounded backward search
    Prove(ProveOpts),
    /// Check a derivation file against the rule schemas
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "official")]
        mode: CheckMode,
    },
    /// Eliminate every cut from a derivation file
    Cutelim { input: PathBuf, output: PathBuf },
    /// Search for a finite linear countermodel
    Countermodel {
        formula: String,
        #[arg(long, default_value_t = 3)]
        worlds: usize,
        #[arg(long, default_value_t = 2)]
        domain: usize,
    },
    /// Render a derivation file as a compilable LaTeX proof tree
    Latex { file: PathBuf },
    /// Decide a propositional formula over the Goedel chain
    Oracle { formula: String },
    /// Apply a proof transformation to a derivation file
    Transform {
        #[command(subcommand)]
        op: TransformOp,
    },
}

#[derive(Subcommand)]
enum TransformOp {
    /// Remove a right bottom at a component
    Botr { file: PathBuf, pos: usize, #[arg(short, long)] output: Option<PathBuf> },
    /// Rename parameter a to b
    Sub { file: PathBuf, a: String, b: String, #[arg(short, long)] output: Option<PathBuf> },
    /// Weaken formulas into a component
    Iw {
        file: PathBuf,
        pos: usize,
        #[arg(long)]
        ant: Vec<String>,
        #[arg(long)]
        cons: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Insert an empty component
    Ew { file: PathBuf, pos: usize, #[arg(short, long)] output: Option<PathBuf> },
    /// Move a consequent formula one component later
    Lwr { file: PathBuf, pos: usize, formula: String, #[arg(short, long)] output: Option<PathBuf> },
    /// Contract a duplicated antecedent formula
    Icl { file: PathBuf, pos: usize, formula: String, #[arg(short, long)] output: Option<PathBuf> },
    /// Contract a duplicated consequent formula
    Icr { file: PathBuf, pos: usize, formula: String, #[arg(short, long)] output: Option<PathBuf> },
    /// Merge two adjacent components
    Mrg { file: PathBuf, pos: usize, #[arg(short, long)] output: Option<PathBuf> },
    /// Invert a left rule at tracked copies (m-invertibility)
    Invl {
        file: PathBuf,
        /// and | or | imp | forall | exists
        connective: String,
        formula: String,
        /// tracked copies per component, e.g. 1,0,2
        counts: String,
        /// witness (forall) or fresh parameter (exists)
        #[arg(long)]
        param: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Invert a right rule at an occurrence
    Invr {
        file: PathBuf,
        /// AndR | OrR | ExistsR | ImpR1 | ImpR2 | ForallR1 | ForallR2
        rule: String,
        pos: usize,
        formula: String,
        #[arg(long)]
        fresh: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.format == "json";
    match run(cli.command, json) {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, msg)) => {
            if !msg.is_empty() {
                eprintln!("{msg}");
            }
            ExitCode::from(code)
        }
    }
}

type CmdResult = Result<(), (u8, String)>;

fn input_err(e: impl std::fmt::Display) -> (u8, String) {
    (EXIT_INPUT, format!("error: {e}"))
}

fn read_file(path: &PathBuf) -> Result<String, (u8, String)> {
    std::fs::read_to_string(path).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

fn load_derivation(path: &PathBuf) -> Result<Derivation, (u8, String)> {
    serialize::derivation_from_json(&read_file(path)?).map_err(input_err)
}

fn parse_formula_arg(text: &str) -> Result<Formula, (u8, String)> {
    let mut sig = Signature::new();
    parse_formula_inferring(text, &mut sig).map_err(input_err)
}

fn write_derivation(d: &Derivation, output: &Option<PathBuf>) -> CmdResult {
    let text = serialize::derivation_to_json(d);
    match output {
        Some(path) => std::fs::write(path, &text)
            .map_err(|e| input_err(format!("{}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn run(command: Command, json: bool) -> CmdResult {
    match command {
        Command::Prove(opts) => cmd_prove(opts, json),
        Command::Check { file, mode } => {
            let d = load_derivation(&file)?;
            match check_derivation(&d, mode.into()) {
                Ok(()) => {
                    if json {
                        println!(
                            "{}",
                            json!({"status": "ok", "endSequent": d.conclusion.to_string(), "height": d.height()})
                        );
                    } else {
                        println!("ok: {} (height {})", d.conclusion, d.height());
                    }
                    Ok(())
                }
                Err(e) => {
                    let msg = if json {
                        json!({"status": "invalid", "error": e.to_string()}).to_string()
                    } else {
                        format!("check failed: {e}")
                    };
                    Err((EXIT_CHECK, msg))
                }
            }
        }
        Command::Cutelim { input, output } => {
            let d = load_derivation(&input)?;
            check_derivation(&d, Mode::WithCut)
                .map_err(|e| (EXIT_CHECK, format!("input does not check: {e}")))?;
            let out = transform::eliminate_cut(&d)
                .map_err(|e| (EXIT_CHECK, format!("cut elimination failed: {e}")))?;
            std::fs::write(&output, serialize::derivation_to_json(&out))
                .map_err(|e| input_err(format!("{}: {e}", output.display())))?;
            if json {
                println!(
                    "{}",
                    json!({"status": "ok", "endSequent": out.conclusion.to_string(), "cutFree": !out.contains_cut()})
                );
            } else {
                println!(
                    "cut-free derivation of {} written to {}",
                    out.conclusion,
                    output.display()
                );
            }
            Ok(())
        }
        Command::Countermodel { formula, worlds, domain } => {
            let f = parse_formula_arg(&formula)?;
            match find_countermodel(&f, worlds, domain) {
                Some((model, world)) => {
                    if json {
                        println!(
                            "{}",
                            json!({"status": "refuted", "model": model.to_string(), "world": world + 1})
                        );
                    } else {
                        println!("{model}");
                        println!("falsified at world {}", world + 1);
                    }
                    Ok(())
                }
                None => {
                    let msg = if json {
                        json!({"status": "none", "worlds": worlds, "domain": domain}).to_string()
                    } else {
                        format!(
                            "no countermodel within {worlds} worlds and {domain} domain elements"
                        )
                    };
                    Err((EXIT_NO_COUNTERMODEL, msg))
                }
            }
        }
        Command::Latex { file } => {
            let d = load_derivation(&file)?;
            print!("{}", lnif_core::latex::latex_document(&d));
            Ok(())
        }
        Command::Oracle { formula } => {
            let f = parse_formula_arg(&formula)?;
            match goedel_valid(&f).map_err(input_err)? {
                GoedelVerdict::Valid => {
                    if json {
                        println!("{}", json!({"status": "valid"}));
                    } else {
                        println!("valid on every Goedel chain");
                    }
                    Ok(())
                }
                GoedelVerdict::Invalid { assignment, denominator } => {
                    let witness: Vec<String> = assignment
                        .iter()
                        .map(|(v, n)| format!("{v} = {n}/{denominator}"))
                        .collect();
                    let msg = if json {
                        json!({"status": "invalid", "assignment": assignment, "denominator": denominator})
                            .to_string()
                    } else {
                        format!("invalid; falsified at {}", witness.join(", "))
                    };
                    Err((EXIT_SEARCH, msg))
                }
            }
        }
        Command::Transform { op } => cmd_transform(op),
    }
}

fn cmd_prove(opts: ProveOpts, json: bool) -> CmdResult {
    let mut cfg = match &opts.config {
        Some(path) => SearchConfig::parse(&read_file(path)?).map_err(input_err)?,
        None => SearchConfig::default(),
    };
    if let Some(d) = opts.depth {
        cfg.depth = d;
    }
    if let Some(w) = opts.witness_cap {
        cfg.witness_cap = w;
    }
    if let Some(m) = &opts.memo {
        cfg.memo = parse_on_off(m)?;
    }
    if let Some(p) = &opts.parallel {
        cfg.parallel = parse_on_off(p)?;
    }
    let mut goals = Vec::new();
    for text in &opts.formulas {
        goals.push((text.clone(), Sequent::goal(parse_formula_arg(text)?)));
    }
    let jobs = opts.jobs.max(1);
    let results: Vec<Result<Derivation, ProverError>> = if jobs > 1 && goals.len() > 1 {
        std::thread::scope(|scope| {
            let chunk_size = goals.len().div_ceil(jobs);
            let handles: Vec<_> = goals
                .chunks(chunk_size)
                .map(|chunk| {
                    let cfg = cfg.clone();
                    scope.spawn(move || {
                        chunk.iter().map(|(_, g)| prove(g, &cfg)).collect::<Vec<_>>()
                    })
                })
                .collect();
            handles.into_iter().flat_map(|h| h.join().expect("prove worker")).collect()
        })
    } else {
        goals.iter().map(|(_, g)| prove(g, &cfg)).collect()
    };
    let mut failed = false;
    for ((text, _), result) in goals.iter().zip(&results) {
        match result {
            Ok(d) => {
                if json {
                    println!(
                        "{}",
                        json!({"formula": text, "status": "proved", "height": d.height(), "size": d.size()})
                    );
                } else {
                    println!("proved: {text} (height {}, {} rules)", d.height(), d.size());
                }
            }
            Err(e) => {
                failed = true;
                if json {
                    println!(
                        "{}",
                        json!({"formula": text, "status": "failed", "reason": e.to_string()})
                    );
                } else {
                    println!("FAIL: {text} ({e})");
                }
            }
        }
    }
    if let (Some(_), Some(Ok(d))) = (&opts.output, results.first()) {
        write_derivation(d, &opts.output)?;
    }
    if failed {
        Err((EXIT_SEARCH, String::new()))
    } else {
        Ok(())
    }
}

fn parse_on_off(s: &str) -> Result<bool, (u8, String)> {
    match s {
        "on" | "true" | "1" => Ok(true),
        "off" | "false" | "0" => Ok(false),
        other => Err(input_err(format!("expected on/off, got `{other}`"))),
    }
}

fn cmd_transform(op: TransformOp) -> CmdResult {
    let terr = |e: transform::TransformError| (EXIT_CHECK, format!("transform failed: {e}"));
    match op {
        TransformOp::Botr { file, pos, output } => {
            let d = load_derivation(&file)?;
            let out = transform::admit_bot_r(&d, pos).map_err(terr)?;
            write_derivation(&out, &output)
        }
        TransformOp::Sub { file, a, b, output } => {
            let d = load_derivation(&file)?;
            let out = transform::rename_param(&d, &a, &b).map_err(terr)?;
            write_derivation(&out, &output)
        }
        TransformOp::Iw { file, pos, ant, cons, output } => {
            let d = load_derivation(&file)?;
            let ant = ant.iter().map(|t| parse_formula_arg(t)).collect::<Result<Vec<_>, _>>()?;
            let cons = cons.iter().map(|t| parse_formula_arg(t)).collect::<Result<Vec<_>, _>>()?;
            let out = transform::admit_iw(&d, pos, &ant, &cons).map_err(terr)?;
            write_derivation(&out, &output)
        }
        TransformOp::Ew { file, pos, output } => {
            let d = load_derivation(&file)?;
            let out = transform::admit_ew(&d, pos).map_err(terr)?;
            write_derivation(&out, &output)
        }
        TransformOp::Lwr { file, pos, formula, output } => {
            let d = load_derivation(&file)?;
            let f = parse_formula_arg(&formula)?;
            let out = transform::admit_lwr(&d, pos, &f).map_err(terr)?;
            write_derivation(&out, &output)
        }
        TransformOp::Icl { file, pos, formula, output } => {
            let d = load_derivation(&file)?;
            let f = parse_formula_arg(&formula)?;
            let out = transform::admit_contraction_left(&d, pos, &f).map_err(terr)?;
            write_derivation(&out, &output)
        }
        TransformOp::Icr { file, pos, formula, output } => {
            let d = load_derivation(&file)?;
            let f = parse_formula_arg(&formula)?;
            let out = transform::admit_contraction_right(&d, pos, &f).map_err(terr)?;
            write_derivation(&out, &output)
        }
        TransformOp::Mrg { file, pos, output } => {
            let d = load_derivation(&file)?;
            let out = transform::admit_merge(&d, pos).map_err(terr)?;
            write_derivation(&out, &output)
        }
        TransformOp::Invl { file, connective, formula, counts, param, output } => {
            let d = load_derivation(&file)?;
            let f = parse_formula_arg(&formula)?;
            let counts: Vec<usize> = counts
                .split(',')
                .map(|c| c.trim().parse().map_err(|_| input_err("counts must be integers")))
                .collect::<Result<_, _>>()?;
            let spec = match (connective.as_str(), &f) {
                ("and", Formula::And(a, b)) => {
                    InvertLeft::And { a: (**a).clone(), b: (**b).clone() }
                }
                ("or", Formula::Or(a, b)) => InvertLeft::Or { a: (**a).clone(), b: (**b).clone() },
                ("imp", Formula::Implies(a, b)) => {
                    InvertLeft::Imp { a: (**a).clone(), b: (**b).clone() }
                }
                ("forall", Formula::Forall(x, body)) => InvertLeft::Forall {
                    x: x.clone(),
                    body: (**body).clone(),
                    witness: param.clone().ok_or_else(|| input_err("forall needs --param"))?,
                },
                ("exists", Formula::Exists(x, body)) => InvertLeft::Exists {
                    x: x.clone(),
                    body: (**body).clone(),
                    fresh: param.clone().ok_or_else(|| input_err("exists needs --param"))?,
                },
                _ => return Err(input_err("connective does not match the formula shape")),
            };
            match transform::invert_left(&d, &spec, &counts).map_err(terr)? {
                InvertLeftResult::One(out) => write_derivation(&out, &output),
                InvertLeftResult::Two(first, second) => {
                    write_derivation(&first, &output)?;
                    let second_path = output.map(|p| {
                        let mut name = p.into_os_string();
                        name.push(".2");
                        PathBuf::from(name)
                    });
                    write_derivation(&second, &second_path)
                }
            }
        }
        TransformOp::Invr { file, rule, pos, formula, fresh, output } => {
            let d = load_derivation(&file)?;
            let f = parse_formula_arg(&formula)?;
            let tag = RuleTag::from_name(&rule)
                .filter(|t| {
                    matches!(
                        t,
                        RuleTag::AndR
                            | RuleTag::OrR
                            | RuleTag::ExistsR
                            | RuleTag::ImpR1
                            | RuleTag::ImpR2
                            | RuleTag::ForallR1
                            | RuleTag::ForallR2
                    )
                })
                .ok_or_else(|| input_err(format!("not an invertible right rule: {rule}")))?;
            let outs =
                transform::invert_right(&d, tag, pos, &f, fresh.as_deref()).map_err(terr)?;
            for (i, out) in outs.iter().enumerate() {
                let path = output.as_ref().map(|p| {
                    if i == 0 {
                        p.clone()
                    } else {
                        let mut name = p.clone().into_os_string();
                        name.push(format!(".{}", i + 1));
                        PathBuf::from(name)
                    }
                });
                write_derivation(out, &path)?;
            }
            Ok(())
        }
    }
}
