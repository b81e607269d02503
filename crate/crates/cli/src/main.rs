use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use evade_core::dot::{graph_to_dot, pregraph_to_dot};
use evade_core::engine::{play_observed, Board, GameConfig, Hider, LargeFamily, Seeker, Transcript};
use evade_core::graph6;
use evade_core::omega::{play_omega, seeker_braided_w, seeker_scorpion, HiddenTemplate, Objective, OmegaConfig, OmegaSeeker};
use evade_core::solver::{solve_with, MemoMode, SolveResult, SolverConfig};
use evade_core::strategies::{
    hider_oblivious, seeker_bridge_last, seeker_human, seeker_lexicographic, seeker_random, HiderSpec, SeekerSpec,
};
use evade_core::verify::{self, SuiteReport, SUITES};
use evade_core::wfunc::{AllowedGraphKind, WFunction};
use evade_core::{FiniteGraph, Property};

#[derive(Parser)]
#[command(name = "evade", version, about = "Edge-probe (evasiveness) games on finite graphs and on ω")]
struct Cli {
    /// Machine-readable output: one JSON record per line.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve a finite game exactly.
    Solve {
        /// Allowed graph: g6:<graph6> | k:<n>.
        #[arg(long = "h")]
        allowed: AllowedGraphKind,
        #[arg(long)]
        property: Property,
        #[arg(long, default_value = "all")]
        family: LargeFamily,
        #[arg(long, value_enum, default_value = "canonical")]
        memo: Memo,
    },
    /// Play one game between a seeker and a hider.
    Play(GameArgs),
    /// Run a staged seeker on ω against a hidden template.
    Omega {
        /// komega | turan:<k> | cantor.
        #[arg(long = "h")]
        allowed: AllowedGraphKind,
        /// scorpion | braided-w:dmin:<n> | braided-w:cmin:<m>.
        #[arg(long)]
        seeker: String,
        /// Template, e.g. `complete`, `blocks:3`, `scorpion:3,4,7;add=0-9`.
        #[arg(long)]
        hidden: HiddenTemplate,
        #[arg(long)]
        family: Option<LargeFamily>,
        #[arg(long)]
        fuel: Option<usize>,
    },
    /// Run the built-in verification suites.
    Verify {
        /// Suite name or id, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Largest vertex count for cycle-equivalence (drops the random sample).
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Solve every graph of a graph6 file, one result per line, in input order.
    Enumerate {
        #[arg(long)]
        g6: PathBuf,
        #[arg(long)]
        property: Property,
        #[arg(long, default_value = "all")]
        family: LargeFamily,
    },
    /// Write an allowed graph, or the final board of a game, as DOT or graph6.
    Export {
        #[command(flatten)]
        game: ExportArgs,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
    },
}

#[derive(clap::Args)]
struct GameArgs {
    /// Allowed graph: g6:<graph6> | k:<n> | komega | turan:<k> | cantor.
    #[arg(long = "h")]
    allowed: AllowedGraphKind,
    /// lex | random:<seed> | bridge-last:<u>-<v> | human.
    #[arg(long)]
    seeker: SeekerSpec,
    /// cycle-forest | degree:<n> | connect | star:<n> | oblivious:<graph-or-template>.
    #[arg(long)]
    hider: HiderSpec,
    /// Defaults to the property the hider is built for.
    #[arg(long)]
    property: Option<Property>,
    #[arg(long, default_value = "all")]
    family: LargeFamily,
    #[arg(long, default_value_t = 10_000)]
    fuel: usize,
}

#[derive(clap::Args)]
struct ExportArgs {
    #[arg(long = "h")]
    allowed: AllowedGraphKind,
    /// Play a game first; export its final board.
    #[arg(long, requires = "hider")]
    seeker: Option<SeekerSpec>,
    #[arg(long, requires = "seeker")]
    hider: Option<HiderSpec>,
    #[arg(long)]
    property: Option<Property>,
    #[arg(long, default_value_t = 10_000)]
    fuel: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Memo {
    Canonical,
    Raw,
    Off,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    G6,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(false)` means the command ran but reported a failure.
fn run(cli: Cli) -> Result<bool> {
    let json = cli.json;
    match cli.cmd {
        Cmd::Solve { allowed, property, family, memo } => {
            let g = finite(&allowed, "--h")?;
            let config = SolverConfig { memo: memo.into(), ..SolverConfig::default() };
            let r = solve_with(&g, property, family, config)?;
            if json {
                println!("{}", solve_record(&graph6::encode(&g), property, family, &r));
            } else {
                println!("board             {allowed}");
                println!("property          {property}");
                println!("family            {family}");
                println!("winner            {:?}", r.winner);
                println!("value             {} of {} pairs", r.value, r.allowed_pairs);
                println!("strongly elusive  {}", r.strongly_elusive);
                let probes: Vec<String> = r.optimal_first_probes.iter().map(|p| p.to_string()).collect();
                println!("first probes      {}", probes.join(" "));
            }
            Ok(true)
        }
        Cmd::Play(args) => {
            let (t, _) = run_game(&args.allowed, &args.seeker, &args.hider, args.property, args.family, args.fuel, Some(json))?;
            if json {
                println!("{}", summary_record(&t));
            } else {
                println!("{:?} after {} probes; winner {:?}", t.terminal_reason, t.moves.len(), t.winner);
                println!("family {}: {}", t.family_report.family, t.family_report.detail);
            }
            Ok(true)
        }
        Cmd::Omega { allowed, seeker, hidden, family, fuel } => omega(json, allowed, &seeker, hidden, family, fuel),
        Cmd::Verify { suite, max_n } => verify_cmd(json, &suite, max_n),
        Cmd::Enumerate { g6, property, family } => enumerate(json, &g6, property, family),
        Cmd::Export { game, format } => {
            let out = match (&game.seeker, &game.hider) {
                (Some(s), Some(h)) => {
                    let (_, board) = run_game(&game.allowed, s, h, game.property, LargeFamily::AllPairs, game.fuel, None)?;
                    let Board::Finite(pg) = board else {
                        bail!("--h: export of a played game needs a finite board");
                    };
                    match format {
                        Format::Dot => pregraph_to_dot(&pg),
                        Format::G6 => graph6::encode(&pg.gmin()) + "\n",
                    }
                }
                _ => {
                    let g = finite(&game.allowed, "--h")?;
                    match format {
                        Format::Dot => graph_to_dot(&g),
                        Format::G6 => graph6::encode(&g) + "\n",
                    }
                }
            };
            print!("{out}");
            Ok(true)
        }
    }
}

impl From<Memo> for MemoMode {
    fn from(m: Memo) -> Self {
        match m {
            Memo::Canonical => MemoMode::Canonical,
            Memo::Raw => MemoMode::Raw,
            Memo::Off => MemoMode::Off,
        }
    }
}

fn finite(kind: &AllowedGraphKind, flag: &str) -> Result<FiniteGraph> {
    match kind {
        AllowedGraphKind::FiniteExplicit(g) => Ok(g.clone()),
        other => bail!("{flag}: `{other}` is infinite; expected g6:<graph6> or k:<n>"),
    }
}

fn solve_record(g6: &str, property: Property, family: LargeFamily, r: &SolveResult) -> Value {
    json!({
        "graph": g6,
        "property": property.to_string(),
        "family": family,
        "winner": r.winner,
        "value": r.value,
        "allowed_pairs": r.allowed_pairs,
        "strongly_elusive": r.strongly_elusive,
        "optimal_first_probes": r.optimal_first_probes,
    })
}

fn summary_record(t: &Transcript) -> Value {
    json!({
        "record": "summary",
        "terminal_reason": t.terminal_reason,
        "winner": t.winner,
        "determined_count": t.determined_count,
        "family_report": t.family_report,
    })
}

/// The property a hider is built against.
fn default_property(h: &HiderSpec) -> Result<Property> {
    Ok(match h {
        HiderSpec::CycleForest => Property::Cycle,
        HiderSpec::Degree(n) => Property::MinDegree(*n),
        HiderSpec::Connect => Property::Connected,
        HiderSpec::Star(n) => Property::ContainsStar(*n),
        HiderSpec::Oblivious(_) => bail!("--property is required with an oblivious hider"),
    })
}

fn build_hider(spec: &HiderSpec, allowed: &AllowedGraphKind) -> Result<Box<dyn Hider>> {
    let HiderSpec::Oblivious(g) = spec else {
        return Ok(spec.build_adaptive()?);
    };
    if allowed.is_infinite() {
        let t: HiddenTemplate = g.parse().with_context(|| format!("--hider: `{g}` as a hidden template"))?;
        Ok(Box::new(hider_oblivious(t)))
    } else {
        let kind: AllowedGraphKind = g.parse().with_context(|| format!("--hider: `{g}` as a graph"))?;
        Ok(Box::new(hider_oblivious(finite(&kind, "--hider")?)))
    }
}

fn build_seeker(spec: &SeekerSpec, allowed: &AllowedGraphKind) -> Result<Box<dyn Seeker>> {
    Ok(match spec {
        SeekerSpec::Lex => Box::new(seeker_lexicographic()),
        SeekerSpec::Random(seed) => Box::new(seeker_random(*seed)),
        SeekerSpec::BridgeLast(p) => Box::new(seeker_bridge_last(&finite(allowed, "--seeker bridge-last")?, *p)?),
        SeekerSpec::Human => Box::new(seeker_human(BufReader::new(io::stdin()), io::stderr())),
    })
}

/// Plays a game; with `stream = Some(json)` every move is printed as it
/// happens.
fn run_game(
    allowed: &AllowedGraphKind,
    seeker: &SeekerSpec,
    hider: &HiderSpec,
    property: Option<Property>,
    family: LargeFamily,
    fuel: usize,
    stream: Option<bool>,
) -> Result<(Transcript, Board)> {
    let property = match property {
        Some(p) => p,
        None => default_property(hider)?,
    };
    let mut s = build_seeker(seeker, allowed)?;
    let mut h = build_hider(hider, allowed)?;
    let config = GameConfig::new(allowed.clone(), property).with_family(family).with_fuel(fuel);
    let mut out = io::stdout().lock();
    let mut observer = |_: &Board, mv: &evade_core::engine::Move| {
        match stream {
            Some(true) => {
                let _ = writeln!(out, "{}", json!({"turn": mv.turn, "pair": mv.pair, "answer": mv.answer}));
            }
            Some(false) => {
                let _ = writeln!(out, "{:>6}  {}  {:?}", mv.turn, mv.pair, mv.answer);
            }
            None => {}
        }
        Ok(())
    };
    Ok(play_observed(s.as_mut(), h.as_mut(), &config, &mut observer)?)
}

fn omega(
    json: bool,
    allowed: AllowedGraphKind,
    seeker: &str,
    hidden: HiddenTemplate,
    family: Option<LargeFamily>,
    fuel: Option<usize>,
) -> Result<bool> {
    let (mut player, objective, default_family): (Box<dyn OmegaSeeker>, Objective, LargeFamily) =
        match seeker.split_once(':') {
            None if seeker == "scorpion" => (Box::new(seeker_scorpion()), Objective::Scorpion, LargeFamily::JN(5)),
            Some(("braided-w", wf)) => {
                let wf: WFunction = wf.parse().context("--seeker")?;
                (Box::new(seeker_braided_w(wf, &allowed)?), Objective::W(wf), LargeFamily::AllPairs)
            }
            _ => bail!("--seeker: `{seeker}`; expected scorpion | braided-w:dmin:<n> | braided-w:cmin:<m>"),
        };
    if !allowed.is_infinite() {
        bail!("--h: `{allowed}` is finite; expected komega | turan:<k> | cantor");
    }
    let mut config = OmegaConfig::new(allowed, hidden, objective).with_family(family.unwrap_or(default_family));
    if let Some(f) = fuel {
        config = config.with_fuel(f);
    }
    let t = play_omega(player.as_mut(), &config)?;
    if json {
        for b in &t.batches {
            let mut r = serde_json::to_value(b)?;
            r["record"] = json!("batch");
            println!("{r}");
        }
        let mut r = serde_json::to_value(&t)?;
        let obj = r.as_object_mut().ok_or_else(|| anyhow!("transcript is not a record"))?;
        obj.remove("batches");
        obj.insert("record".into(), json!("summary"));
        println!("{r}");
    } else {
        for b in &t.batches {
            let how = if b.symbolic { "symbolic".to_string() } else { format!("{} probes", b.concrete) };
            let cut = if b.interrupted { " (interrupted)" } else { "" };
            println!("{:<10} {:<40} {how}{cut}", b.stage, b.region);
        }
        println!("outcome           {:?}", t.outcome);
        println!("verdict / truth   {:?} / {:?}", t.verdict, t.ground_truth);
        println!("winner            {:?}", t.winner);
        if let Some(p) = t.unprobed_witness {
            println!("unprobed pair     {p}");
        }
        if let Some(v) = &t.infinite_degree {
            println!("infinite degree   {v:?}");
        }
        if let Some(n) = &t.note {
            println!("note              {n}");
        }
    }
    Ok(t.verdict.is_some())
}

fn verify_cmd(json: bool, suite: &str, max_n: Option<usize>) -> Result<bool> {
    let ids: Vec<u8> = if suite == "all" {
        SUITES.iter().map(|(id, _, _)| *id).collect()
    } else {
        let names: Vec<&str> = SUITES.iter().map(|(_, n, _)| *n).collect();
        vec![verify::suite_id(suite).ok_or_else(|| anyhow!("--suite: `{suite}`; expected all | {}", names.join(" | ")))?]
    };
    if max_n.is_some() && ids != [1] {
        bail!("--max-n only applies to --suite cycle-equivalence");
    }
    let mut ok = true;
    for id in ids {
        let r: SuiteReport = match max_n {
            Some(n) => verify::run_cycle_equivalence(n)?,
            None => verify::run_suite(id)?,
        };
        ok &= r.passed;
        if json {
            println!("{}", serde_json::to_string(&r)?);
        } else {
            let mark = if r.passed { "pass" } else { "FAIL" };
            println!("{mark}  {:>2} {:<20} {:>6} checks {:>7.1}s  {}", r.id, r.name, r.checked, r.seconds, r.detail);
        }
    }
    Ok(ok)
}

/// Lines per parallel chunk; output of a chunk is written before the next
/// one starts so memory stays bounded.
const CHUNK: usize = 256;

fn enumerate(json: bool, path: &PathBuf, property: Property, family: LargeFamily) -> Result<bool> {
    let file = File::open(path).with_context(|| format!("--g6: cannot open {}", path.display()))?;
    let mut lines = BufReader::new(file).lines().enumerate();
    let mut ok = true;
    let mut out = io::stdout().lock();
    loop {
        let chunk: Vec<(usize, String)> = lines
            .by_ref()
            .take(CHUNK)
            .map(|(i, l)| l.map(|l| (i + 1, l)))
            .collect::<io::Result<_>>()
            .context("--g6: read error")?;
        if chunk.is_empty() {
            break;
        }
        let results: Vec<(usize, String, Result<SolveResult>)> = chunk
            .into_par_iter()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| {
                let text = l.trim().to_string();
                let r = graph6::decode(&text)
                    .and_then(|g| solve_with(&g, property, family, SolverConfig::default()))
                    .map_err(anyhow::Error::from);
                (i, text, r)
            })
            .collect();
        for (line, text, r) in results {
            match r {
                Ok(r) if json => {
                    let mut rec = solve_record(&text, property, family, &r);
                    rec["line"] = json!(line);
                    writeln!(out, "{rec}")?;
                }
                Ok(r) => writeln!(out, "{line:>6}  {text:<16} {:?}  value {}/{}", r.winner, r.value, r.allowed_pairs)?,
                Err(e) => {
                    ok = false;
                    if json {
                        writeln!(out, "{}", json!({"line": line, "graph": text, "error": e.to_string()}))?;
                    } else {
                        writeln!(out, "{line:>6}  {text:<16} error: {e}")?;
                    }
                }
            }
        }
    }
    Ok(ok)
}
