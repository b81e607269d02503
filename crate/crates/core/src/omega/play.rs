//! Batch play on ω: a seeker issues regions of pairs; the referee answers
//! them against the hidden template and watches for termination.
//!
//! Row batches (pairs from finitely many centers) are probed one pair at a
//! time in increasing order of the far endpoint so an interrupt condition
//! can stop them; after a concrete prefix the rest is completed
//! symbolically. Termination is checked at batch boundaries, which can only
//! over-probe relative to pair-by-pair play: the unprobed set is smaller and
//! the set of infinite-degree vertices larger, so claims about either stay
//! valid for the exact game.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::Serialize;

use super::referee::{terminal_status, Objective};
use super::state::{Region, SymState, View};
use super::template::HiddenTemplate;
use super::vset::VSet;
use crate::engine::{FamilyReport, LargeFamily, Winner};
use crate::error::{Error, Result};
use crate::graph::{Pair, Vertex};
use crate::properties::TerminalStatus;
use crate::wfunc::AllowedGraphKind;

pub const DEFAULT_PREFIX: usize = 10_000;
/// Concrete probes a row batch may take when its interrupt only fires
/// beyond the prefix.
const ROW_HARD_CAP: usize = 1 << 20;

#[derive(Clone, Debug)]
pub struct OmegaConfig {
    pub allowed: AllowedGraphKind,
    pub hidden: HiddenTemplate,
    pub objective: Objective,
    pub family: LargeFamily,
    /// Concrete probes plus symbolic completions allowed.
    pub fuel: usize,
    pub prefix: usize,
}

impl OmegaConfig {
    pub fn new(allowed: AllowedGraphKind, hidden: HiddenTemplate, objective: Objective) -> Self {
        OmegaConfig {
            allowed,
            hidden,
            objective,
            family: LargeFamily::AllPairs,
            fuel: 100_000,
            prefix: DEFAULT_PREFIX,
        }
    }

    pub fn with_family(mut self, family: LargeFamily) -> Self {
        self.family = family;
        self
    }

    pub fn with_fuel(mut self, fuel: usize) -> Self {
        self.fuel = fuel;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BatchRecord {
    pub stage: String,
    pub region: String,
    /// Pairs probed one at a time.
    pub concrete: usize,
    /// Completed symbolically after the concrete prefix.
    pub symbolic: bool,
    pub interrupted: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OmegaOutcome {
    ForcedTrue,
    ForcedFalse,
    FuelExhausted,
    /// The seeker stopped (or the engine gave up) without the referee
    /// certifying termination.
    Unknown,
}

#[derive(Clone, Debug, Serialize)]
pub struct OmegaTranscript {
    pub allowed: AllowedGraphKind,
    pub hidden: String,
    pub objective: Objective,
    pub seeker: String,
    pub batches: Vec<BatchRecord>,
    pub outcome: OmegaOutcome,
    pub winner: Winner,
    /// Verdict of the property at termination.
    pub verdict: Option<bool>,
    pub ground_truth: Option<bool>,
    /// Vertices of infinite probed degree; `None` when infinitely many.
    pub infinite_degree: Option<Vec<Vertex>>,
    pub unprobed_witness: Option<Pair>,
    pub family_report: Option<FamilyReport>,
    pub concrete_probes: usize,
    pub note: Option<String>,
}

/// Result of a row batch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowOutcome {
    Interrupted,
    Completed,
    /// The game ended (terminal position or fuel).
    Over,
}

pub struct OmegaGame {
    state: SymState,
    objective: Objective,
    status: TerminalStatus,
    fuel_left: usize,
    prefix: usize,
    records: Vec<BatchRecord>,
    concrete: usize,
    out_of_fuel: bool,
}

impl OmegaGame {
    pub fn new(config: &OmegaConfig) -> Result<OmegaGame> {
        let mut state = SymState::new(config.allowed.clone(), config.hidden.clone())?;
        let status = terminal_status(&mut state, config.objective)?;
        Ok(OmegaGame {
            state,
            objective: config.objective,
            status,
            fuel_left: config.fuel,
            prefix: config.prefix,
            records: Vec::new(),
            concrete: 0,
            out_of_fuel: false,
        })
    }

    pub fn state(&self) -> &SymState {
        &self.state
    }

    /// Mutable access for classifications (which may refine the frame).
    pub fn state_mut(&mut self) -> &mut SymState {
        &mut self.state
    }

    pub fn status(&self) -> TerminalStatus {
        self.status
    }

    pub fn is_over(&self) -> bool {
        self.status.is_terminal() || self.out_of_fuel
    }

    pub fn records(&self) -> &[BatchRecord] {
        &self.records
    }

    fn spend(&mut self, n: usize) -> bool {
        if self.fuel_left < n {
            self.fuel_left = 0;
            self.out_of_fuel = true;
            false
        } else {
            self.fuel_left -= n;
            true
        }
    }

    fn referee(&mut self) -> Result<()> {
        self.state.compact();
        self.status = terminal_status(&mut self.state, self.objective)?;
        Ok(())
    }

    /// Probes every allowed unprobed pair of `region` at once.
    /// Returns whether the game continues.
    pub fn batch(&mut self, stage: &str, region: Region) -> Result<bool> {
        if self.is_over() {
            return Ok(false);
        }
        if !self.spend(1) {
            return Ok(false);
        }
        self.records.push(BatchRecord {
            stage: stage.into(),
            region: region.describe(),
            concrete: 0,
            symbolic: true,
            interrupted: false,
        });
        self.state.add_region(region);
        self.referee()?;
        Ok(!self.is_over())
    }

    /// Probes the allowed unprobed pairs `{f, u}` with `u` in the target of
    /// center `f`, in increasing order of `u`, stopping as soon as
    /// `interrupt` holds.
    pub fn rows(
        &mut self,
        stage: &str,
        rows: Vec<(Vertex, VSet)>,
        interrupt: &mut dyn FnMut(&SymState) -> Result<bool>,
    ) -> Result<RowOutcome> {
        if self.is_over() {
            return Ok(RowOutcome::Over);
        }
        let describe = rows
            .iter()
            .map(|(f, t)| Region::Rect(VSet::singleton(t.frame(), *f), t.clone()).describe())
            .collect::<Vec<_>>()
            .join(" + ");
        let targets: Vec<(Vertex, VSet)> = rows
            .into_iter()
            .map(|(f, t)| {
                let fresh = t.minus(&self.state.raw(f, View::Probed));
                (f, fresh)
            })
            .collect();
        let nbhds: Vec<_> = targets.iter().map(|(f, t)| self.state.restrict(*f, t.clone())).collect();
        let mut heap = BinaryHeap::new();
        for (i, n) in nbhds.iter().enumerate() {
            if let Some(&u) = n.first(1)?.first() {
                heap.push(Reverse((u, i)));
            }
        }
        let mut record = BatchRecord {
            stage: stage.into(),
            region: describe,
            concrete: 0,
            symbolic: false,
            interrupted: false,
        };
        let mut completed_symbolically = false;
        let outcome = loop {
            if record.concrete == self.prefix && !completed_symbolically {
                // try finishing the rest at once
                let before = self.state.probed().parts.len();
                for (f, t) in &targets {
                    self.state.add_region(Region::Rect(VSet::singleton(t.frame(), *f), t.clone()));
                }
                if !interrupt(&self.state)? {
                    if !self.spend(1) {
                        break RowOutcome::Over;
                    }
                    record.symbolic = true;
                    break RowOutcome::Completed;
                }
                // the interrupt fires later on: keep stepping
                self.state.truncate_regions(before);
                completed_symbolically = true;
            }
            let Some(Reverse((u, i))) = heap.pop() else {
                break RowOutcome::Completed;
            };
            if let Some(&next) = nbhds[i].first_from(u + 1, 1)?.first() {
                heap.push(Reverse((next, i)));
            }
            let p = Pair::of(targets[i].0, u);
            if self.state.is_probed(p) {
                continue;
            }
            if record.concrete >= ROW_HARD_CAP {
                self.records.push(record);
                return Err(Error::UnknownExhausted(format!(
                    "row batch at stage {stage} did not reach its interrupt within {ROW_HARD_CAP} probes"
                )));
            }
            if !self.spend(1) {
                break RowOutcome::Over;
            }
            self.state.add_pair(p);
            record.concrete += 1;
            self.concrete += 1;
            if interrupt(&self.state)? {
                record.interrupted = true;
                break RowOutcome::Interrupted;
            }
        };
        self.records.push(record);
        self.referee()?;
        Ok(if self.is_over() { RowOutcome::Over } else { outcome })
    }

    /// Final report; `note` explains an early stop.
    pub fn finish(mut self, config: &OmegaConfig, seeker: String, note: Option<String>) -> Result<OmegaTranscript> {
        let outcome = if self.out_of_fuel && !self.status.is_terminal() {
            OmegaOutcome::FuelExhausted
        } else {
            match self.status {
                TerminalStatus::ForcedTrue => OmegaOutcome::ForcedTrue,
                TerminalStatus::ForcedFalse => OmegaOutcome::ForcedFalse,
                TerminalStatus::Open => OmegaOutcome::Unknown,
            }
        };
        let verdict = match outcome {
            OmegaOutcome::ForcedTrue => Some(true),
            OmegaOutcome::ForcedFalse => Some(false),
            _ => None,
        };
        let infinite_degree = self.state.infinite_degree_vertices()?.finite_elements();
        let unprobed_witness = self.state.unprobed_witness()?;
        let family_report = if verdict.is_some() {
            Some(self.state.family_membership(config.family)?)
        } else {
            None
        };
        let winner = match family_report.as_ref().and_then(|r| r.member) {
            Some(true) => Winner::Bob,
            Some(false) => Winner::Alice,
            None => Winner::Undecided,
        };
        let ground_truth = config.objective.ground_truth(&config.allowed, &config.hidden).ok();
        let note = note.or_else(|| {
            (outcome == OmegaOutcome::Unknown).then(|| "unknown-exhausted: seeker stopped before termination".to_string())
        });
        Ok(OmegaTranscript {
            allowed: config.allowed.clone(),
            hidden: config.hidden.to_string(),
            objective: config.objective,
            seeker,
            batches: self.records,
            outcome,
            winner,
            verdict,
            ground_truth,
            infinite_degree,
            unprobed_witness,
            family_report,
            concrete_probes: self.concrete,
            note,
        })
    }
}

/// A seeker strategy for ω games.
pub trait OmegaSeeker {
    fn name(&self) -> String;
    /// Plays until the game is over or the strategy has nothing left.
    fn play(&mut self, game: &mut OmegaGame) -> Result<()>;
}

/// Runs a seeker to the end. Engine give-ups (`UnknownExhausted`) are
/// reported in the transcript rather than as errors.
pub fn play_omega(seeker: &mut dyn OmegaSeeker, config: &OmegaConfig) -> Result<OmegaTranscript> {
    let mut game = OmegaGame::new(config)?;
    let note = match seeker.play(&mut game) {
        Ok(()) => None,
        Err(Error::UnknownExhausted(msg)) => Some(format!("unknown-exhausted: {msg}")),
        Err(e) => return Err(e),
    };
    if note.is_some() {
        // the position is whatever was reached; do not claim a verdict
        game.status = TerminalStatus::Open;
        game.out_of_fuel = false;
    }
    game.finish(config, seeker.name(), note)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wfunc::WFunction;

    fn game(allowed: &str, hidden: &str, obj: &str) -> (OmegaConfig, OmegaGame) {
        let cfg = OmegaConfig::new(allowed.parse().unwrap(), hidden.parse().unwrap(), obj.parse().unwrap());
        let g = OmegaGame::new(&cfg).unwrap();
        (cfg, g)
    }

    #[test]
    fn full_row_against_complete() {
        let (_, mut g) = game("komega", "complete", "dmin:3");
        let f = g.state().frame().clone();
        assert!(g.batch("row", Region::Rect(VSet::singleton(&f, 0), VSet::all(&f))).unwrap());
        assert!(g.state().nbhd(0, View::Edges).is_infinite());
        let omega = g.state_mut().infinite_degree_vertices().unwrap();
        assert_eq!(omega.finite_elements(), Some(vec![0]));
    }

    #[test]
    fn interrupt_fires_on_second_probe() {
        let (_, mut g) = game("komega", "complete", "dmin:3");
        let f = g.state().frame().clone();
        let wf = WFunction::Degree(2);
        let out = g
            .rows("row", vec![(0, VSet::all(&f))], &mut |s| Ok(s.w_value(wf, 0, View::Edges)?.0 >= 2))
            .unwrap();
        assert_eq!(out, RowOutcome::Interrupted);
        assert_eq!(g.records()[0].concrete, 2);
    }

    #[test]
    fn completion_detects_forced_false() {
        let (cfg, mut g) = game("komega", "empty", "dmin:1");
        let f = g.state().frame().clone();
        let wf = WFunction::Degree(1);
        let out = g
            .rows("row", vec![(0, VSet::all(&f))], &mut |s| Ok(s.w_value(wf, 0, View::Edges)?.0 >= 1))
            .unwrap();
        assert_eq!(out, RowOutcome::Over);
        assert!(g.records()[0].symbolic);
        let t = g.finish(&cfg, "test".into(), None).unwrap();
        assert_eq!(t.outcome, OmegaOutcome::ForcedFalse);
        assert!(t.unprobed_witness.is_some());
        assert_eq!(t.winner, Winner::Alice);
        assert_eq!(t.ground_truth, Some(false));
    }

    #[test]
    fn interrupt_beyond_prefix() {
        let mut cfg = OmegaConfig::new(
            "komega".parse().unwrap(),
            "empty;add=0-50".parse().unwrap(),
            "dmin:1".parse().unwrap(),
        );
        cfg.prefix = 10;
        let mut g = OmegaGame::new(&cfg).unwrap();
        let f = g.state().frame().clone();
        let wf = WFunction::Degree(1);
        let out = g
            .rows("row", vec![(0, VSet::all(&f))], &mut |s| Ok(s.w_value(wf, 0, View::Edges)?.0 >= 1))
            .unwrap();
        assert_eq!(out, RowOutcome::Interrupted);
        assert_eq!(g.records()[0].concrete, 50);
    }
}
