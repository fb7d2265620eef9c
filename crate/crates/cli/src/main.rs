//! `selfmate`: command-line front end for the solver, the gadget kit and the
//! G3 game.
//!
//! Exit status: 0 solved / pass, 1 not solved / fail, 2 usage or input error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use selfmate_core::g3::{G3Instance, G3Options, DEFAULT_VARIABLE_LIMIT};
use selfmate_core::gadget::{build_gadget, verify_gadget_at, GadgetKind, GadgetSpec};
use selfmate_core::solver::{solve_unbounded, SolveStatus, UnboundedVerdict};
use selfmate_core::{
    parse_xfen, serialize_xfen, solve, solve_g3_with, BoardSize, G3Solution, G3State, Position,
    SearchOptions, Square, Stipulation,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "selfmate",
    version,
    about = "Selfmate, reflexmate and G3 solver on F×R boards"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a stipulation in n moves.
    Solve(SolveArgs),
    /// Capped forced-win analysis with no move limit.
    SolveUnbounded(UnboundedArgs),
    /// Build, verify or export the reduction gadgets.
    #[command(subcommand)]
    Gadget(GadgetCommand),
    /// The formula game G3.
    #[command(subcommand)]
    G3(G3Command),
}

#[derive(Args)]
struct PositionInput {
    /// Position as xFEN (a plain FEN is read as 8x8).
    #[arg(long)]
    fen: Option<String>,
    /// File with one xFEN per line; blank lines and `#` comments are skipped.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    source: PositionInput,
    /// `#n`, `s#n`, `r#n` or `semi-r#n`.
    #[arg(long)]
    stip: String,
    #[arg(long, default_value_t = 50_000_000)]
    max_nodes: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Let worker threads split the search below the first move too.
    #[arg(long)]
    nondeterministic: bool,
    #[arg(long)]
    json: bool,
    /// Keep every winning continuation, not only the first.
    #[arg(long)]
    full_tree: bool,
    /// Print the variation tree of every key (default: the first key only).
    #[arg(long)]
    all_keys: bool,
}

#[derive(Args)]
struct UnboundedArgs {
    #[command(flatten)]
    source: PositionInput,
    /// Stipulation kind, e.g. `s#` (a move count, if given, is ignored).
    #[arg(long)]
    stip: String,
    /// Cap on explored states.
    #[arg(long, default_value_t = 1_000_000)]
    max_nodes: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum GadgetCommand {
    /// Placement of a gadget as JSON.
    Build(GadgetArgs),
    /// Run the verification battery; `all` runs every kind.
    Verify(GadgetArgs),
    /// xFEN of the harnessed gadget (with --json, gadget JSON plus xFEN).
    Export(GadgetArgs),
}

#[derive(Args)]
struct GadgetArgs {
    /// checkmate_white, checkmate_black, reflexmate_white, reflexmate_black,
    /// selfmate or semi_reflexmate.
    kind: String,
    /// Lower-left corner of the footprint.
    #[arg(long, default_value = "a1")]
    anchor: String,
    /// Board size `FxR` (default: the footprint itself).
    #[arg(long)]
    board: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum G3Command {
    /// Decide whether player I forces a win.
    Solve(G3Args),
}

#[derive(Args)]
struct G3Args {
    /// Instance JSON file: one instance or an array of instances.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Inline instance JSON.
    #[arg(long)]
    instance: Option<String>,
    /// Bound on the number of variables.
    #[arg(long, default_value_t = DEFAULT_VARIABLE_LIMIT)]
    limit: usize,
    /// Accept clauses wider than twelve literals.
    #[arg(long)]
    relaxed: bool,
    /// Print player I's strategy line and audit it.
    #[arg(long)]
    strategy: bool,
    #[arg(long)]
    json: bool,
}

/// Errors in the input are reported with exit status 2.
struct InputError(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for InputError {
    fn from(e: E) -> InputError {
        InputError(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::SolveUnbounded(a) => cmd_unbounded(a),
        Command::Gadget(c) => cmd_gadget(c),
        Command::G3(G3Command::Solve(a)) => cmd_g3(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(InputError(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_positions(src: &PositionInput) -> Result<Vec<Position>> {
    let lines: Vec<String> = match (&src.fen, &src.input) {
        (Some(_), Some(_)) => bail!("give either --fen or --input, not both"),
        (None, None) => bail!("a position is required: --fen or --input"),
        (Some(f), None) => vec![f.clone()],
        (None, Some(path)) => fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(String::from)
            .collect(),
    };
    if lines.is_empty() {
        bail!("no positions in input");
    }
    lines
        .iter()
        .enumerate()
        .map(|(i, l)| parse_xfen(l).with_context(|| format!("position {}", i + 1)))
        .collect()
}

fn emit_json(values: Vec<Value>) {
    let out = if values.len() == 1 {
        values.into_iter().next().unwrap()
    } else {
        Value::Array(values)
    };
    println!("{}", serde_json::to_string_pretty(&out).expect("json"));
}

fn cmd_solve(a: SolveArgs) -> Result<bool, InputError> {
    let positions = read_positions(&a.source)?;
    let stip: Stipulation = a.stip.parse()?;
    if a.workers == 0 {
        return Err(anyhow!("--workers must be at least 1").into());
    }
    let opts = SearchOptions {
        node_cap: a.max_nodes,
        deterministic: !a.nondeterministic,
        workers: a.workers,
        full_tree: a.full_tree,
        ..SearchOptions::default()
    };
    let mut all_solved = true;
    let mut values = Vec::new();
    for (i, p) in positions.iter().enumerate() {
        let s = stip.with_forcing_side(p.side_to_move());
        let mut tree = solve(p, &s, &opts).with_context(|| format!("position {}", i + 1))?;
        all_solved &= tree.status == SolveStatus::Solved;
        if !a.all_keys {
            tree.tree.truncate(1);
        }
        if a.json {
            let mut v = serde_json::to_value(tree.report()).expect("json");
            v["position"] = json!(serialize_xfen(p));
            values.push(v);
        } else {
            if positions.len() > 1 {
                println!("{}", serialize_xfen(p));
            }
            if !tree.keys.is_empty() {
                println!("keys: {}", tree.key_texts().join(" "));
            }
            print!("{}", tree.render_text());
        }
    }
    if a.json {
        emit_json(values);
    }
    Ok(all_solved)
}

fn cmd_unbounded(a: UnboundedArgs) -> Result<bool, InputError> {
    let positions = read_positions(&a.source)?;
    let text = a.stip.trim();
    let text = if text.ends_with('#') {
        format!("{text}1")
    } else {
        text.to_string()
    };
    let stip: Stipulation = text.parse()?;
    let opts = SearchOptions {
        node_cap: a.max_nodes,
        ..SearchOptions::default()
    };
    let mut all_won = true;
    let mut values = Vec::new();
    for p in &positions {
        let forcing = p.side_to_move();
        let r = solve_unbounded(p, stip.kind, forcing, &opts);
        let won = r.verdict == UnboundedVerdict::ForcingSideWins;
        all_won &= won;
        if a.json {
            let mut v = serde_json::to_value(&r).expect("json");
            v["position"] = json!(serialize_xfen(p));
            v["forcing_side"] = json!(forcing);
            v["kind"] = json!(stip.kind);
            values.push(v);
        } else {
            let verdict = if won {
                format!(
                    "{forcing} forces the goal in {} plies",
                    r.plies_to_win.unwrap_or(0)
                )
            } else if r.truncated {
                format!(
                    "{forcing} has no forced win within the {} explored states",
                    r.states
                )
            } else {
                format!(
                    "{forcing} has no forced win ({} states, graph complete)",
                    r.states
                )
            };
            println!("{verdict}");
        }
    }
    if a.json {
        emit_json(values);
    }
    Ok(all_won)
}

fn gadget_specs(a: &GadgetArgs) -> Result<Vec<GadgetSpec>> {
    let kinds: Vec<GadgetKind> = if a.kind == "all" {
        GadgetKind::ALL.to_vec()
    } else {
        vec![a.kind.parse()?]
    };
    let anchor: Square = a.anchor.parse().context("--anchor")?;
    kinds
        .into_iter()
        .map(|k| {
            let board = match &a.board {
                Some(b) => b.parse::<BoardSize>().context("--board")?,
                None => {
                    let (w, h) = k.dimensions();
                    BoardSize::new(w + anchor.file - 1, h + anchor.rank - 1).context("--anchor")?
                }
            };
            Ok(build_gadget(k, anchor, board)?)
        })
        .collect()
}

fn cmd_gadget(c: GadgetCommand) -> Result<bool, InputError> {
    match c {
        GadgetCommand::Build(a) => {
            let specs = gadget_specs(&a)?;
            emit_json(
                specs
                    .iter()
                    .map(|g| serde_json::to_value(g.to_json()).expect("json"))
                    .collect(),
            );
            Ok(true)
        }
        GadgetCommand::Export(a) => {
            let specs = gadget_specs(&a)?;
            let mut values = Vec::new();
            for g in &specs {
                let xfen = g.harness_xfen()?;
                if a.json {
                    let mut v = serde_json::to_value(g.to_json()).expect("json");
                    v["xfen"] = json!(xfen);
                    values.push(v);
                } else {
                    println!("{xfen}");
                }
            }
            if a.json {
                emit_json(values);
            }
            Ok(true)
        }
        GadgetCommand::Verify(a) => {
            let specs = gadget_specs(&a)?;
            let mut all_pass = true;
            let mut values = Vec::new();
            for g in &specs {
                let report = verify_gadget_at(g.kind, g.anchor, g.board)?;
                all_pass &= report.all_pass;
                if a.json {
                    values.push(serde_json::to_value(&report).expect("json"));
                } else {
                    print!("{}", report.render_text());
                }
            }
            if a.json {
                emit_json(values);
            }
            Ok(all_pass)
        }
    }
}

fn g3_json(sol: &G3Solution, strategy: bool) -> Value {
    let mut v = json!({
        "verdict": sol.verdict,
        "states": sol.states,
        "winning_states": sol.winning_states,
        "plies_to_win": sol.plies_to_win,
    });
    if strategy {
        let line: Vec<Value> = sol
            .principal_line()
            .iter()
            .map(|s| json!({"turn": s.turn.number(), "assignment": s.assignment}))
            .collect();
        let audit = sol.audit();
        v["strategy"] = json!({
            "line": line,
            "audit_ok": audit.is_ok(),
            "audited_states": audit.unwrap_or(0),
        });
    }
    v
}

fn cmd_g3(a: G3Args) -> Result<bool, InputError> {
    let text = match (&a.input, &a.instance) {
        (Some(_), Some(_)) => {
            return Err(anyhow!("give either --input or --instance, not both").into())
        }
        (None, None) => {
            return Err(anyhow!("an instance is required: --input or --instance").into())
        }
        (Some(path), None) => {
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
        }
        (None, Some(t)) => t.clone(),
    };
    let doc: Value = serde_json::from_str(&text).context("instance json")?;
    let batch = doc.is_array();
    let raw: Vec<Value> = match doc {
        Value::Array(items) => items,
        single => vec![single],
    };
    let opts = G3Options { limit: a.limit };
    let mut states = Vec::new();
    for (i, item) in raw.into_iter().enumerate() {
        let inst: G3Instance =
            serde_json::from_value(item).with_context(|| format!("instance {}", i + 1))?;
        let s: G3State = inst
            .into_state(!a.relaxed)
            .with_context(|| format!("instance {}", i + 1))?;
        states.push(s);
    }
    let mut values = Vec::new();
    let mut audits_ok = true;
    for (i, s) in states.iter().enumerate() {
        let sol = solve_g3_with(s, &opts).with_context(|| format!("instance {}", i + 1))?;
        if a.strategy {
            audits_ok &= sol.audit().is_ok();
        }
        if a.json {
            values.push(g3_json(&sol, a.strategy));
            continue;
        }
        let prefix = if batch {
            format!("{}: ", i + 1)
        } else {
            String::new()
        };
        println!("{prefix}{}", sol.verdict);
        if a.strategy {
            for st in sol.principal_line() {
                let bits: Vec<String> = st
                    .assignment
                    .iter()
                    .map(|(k, v)| format!("{k}={}", u8::from(*v)))
                    .collect();
                println!("  {} to move: {}", st.turn, bits.join(" "));
            }
            match sol.audit() {
                Ok(n) => println!("  strategy audit: ok ({n} winning states)"),
                Err(st) => println!("  strategy audit: FAILED at {:?}", st.assignment),
            }
        }
    }
    if a.json {
        let out = if batch {
            Value::Array(values)
        } else {
            values.pop().unwrap()
        };
        println!("{}", serde_json::to_string_pretty(&out).expect("json"));
    }
    Ok(audits_ok)
}
