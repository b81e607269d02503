//! The single-pair game loop: seeker probes, hider answers, the referee
//! checks for termination after every answer.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algo;
use crate::dot;
use crate::error::{Error, Result};
use crate::graph::{Answer, FiniteGraph, FinitePregraph, Pair, PairStatus, Vertex};
use crate::properties::{Property, TerminalStatus};
use crate::wfunc::AllowedGraphKind;

/// A game position on ω where only finitely many pairs are determined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseOmegaBoard {
    kind: AllowedGraphKind,
    edges: BTreeSet<Pair>,
    nonedges: BTreeSet<Pair>,
    e_adj: BTreeMap<Vertex, BTreeSet<Vertex>>,
    p_adj: BTreeMap<Vertex, BTreeSet<Vertex>>,
}

impl SparseOmegaBoard {
    pub fn new(kind: AllowedGraphKind) -> Result<Self> {
        if !kind.is_infinite() {
            return Err(Error::InvalidParameter(format!("{kind} is not an infinite board")));
        }
        Ok(SparseOmegaBoard {
            kind,
            edges: BTreeSet::new(),
            nonedges: BTreeSet::new(),
            e_adj: BTreeMap::new(),
            p_adj: BTreeMap::new(),
        })
    }

    pub fn kind(&self) -> &AllowedGraphKind {
        &self.kind
    }

    fn determine(&mut self, p: Pair, a: Answer) -> Result<()> {
        if !self.kind.contains(p) {
            return Err(Error::NotAllowed(p));
        }
        if self.edges.contains(&p) || self.nonedges.contains(&p) {
            return Err(Error::AlreadyDetermined(p));
        }
        if a.is_edge() {
            self.edges.insert(p);
            self.e_adj.entry(p.lo()).or_default().insert(p.hi());
            self.e_adj.entry(p.hi()).or_default().insert(p.lo());
        } else {
            self.nonedges.insert(p);
        }
        self.p_adj.entry(p.lo()).or_default().insert(p.hi());
        self.p_adj.entry(p.hi()).or_default().insert(p.lo());
        Ok(())
    }

    /// Largest vertex touched by a determined pair.
    pub fn max_touched(&self) -> Option<Vertex> {
        self.p_adj.keys().next_back().copied()
    }

    fn gmax_holds(&self, property: Property) -> bool {
        // Removing finitely many pairs from an infinite Turán / Cantor /
        // complete graph keeps every listed property except the ones the
        // base graph already lacks.
        match (&self.kind, property) {
            (AllowedGraphKind::Turan(k), Property::ContainsClique(c)) => c <= *k,
            (AllowedGraphKind::Turan(2), Property::NotBipartite) => false,
            _ => true,
        }
    }

    fn terminal_status(&self, property: Property) -> TerminalStatus {
        let gmin_holds = match property {
            // infinitely many vertices are isolated in gmin
            Property::MinDegree(_) | Property::MinComponentSize(_) | Property::Connected => false,
            Property::Scorpion => return TerminalStatus::Open,
            p => p.holds(&self.gmin_window()),
        };
        if gmin_holds {
            TerminalStatus::ForcedTrue
        } else if !self.gmax_holds(property) {
            TerminalStatus::ForcedFalse
        } else {
            TerminalStatus::Open
        }
    }

    /// gmin restricted to the touched window `0..=max_touched`.
    pub fn gmin_window(&self) -> FiniteGraph {
        let n = self.max_touched().map_or(0, |v| v as usize + 1);
        FiniteGraph::from_edges(n, self.edges.iter().copied()).expect("edges inside window")
    }
}

/// Any board the engine can referee.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Board {
    Finite(FinitePregraph),
    Sparse(SparseOmegaBoard),
}

static EMPTY: BTreeSet<Vertex> = BTreeSet::new();

impl Board {
    pub fn from_kind(kind: &AllowedGraphKind) -> Result<Board> {
        Ok(match kind {
            AllowedGraphKind::FiniteExplicit(g) => Board::Finite(FinitePregraph::new(g.clone())),
            k => Board::Sparse(SparseOmegaBoard::new(k.clone())?),
        })
    }

    /// Vertex count, `None` on ω.
    pub fn n(&self) -> Option<usize> {
        match self {
            Board::Finite(pg) => Some(pg.n()),
            Board::Sparse(_) => None,
        }
    }

    pub fn is_allowed(&self, p: Pair) -> bool {
        match self {
            Board::Finite(pg) => pg.allowed().has_edge(p),
            Board::Sparse(b) => b.kind.contains(p),
        }
    }

    pub fn status(&self, p: Pair) -> PairStatus {
        match self {
            Board::Finite(pg) => pg.status(p),
            Board::Sparse(b) => {
                if !b.kind.contains(p) {
                    PairStatus::Disallowed
                } else if b.edges.contains(&p) {
                    PairStatus::Edge
                } else if b.nonedges.contains(&p) {
                    PairStatus::Nonedge
                } else {
                    PairStatus::Undetermined
                }
            }
        }
    }

    pub fn is_undetermined(&self, p: Pair) -> bool {
        self.status(p) == PairStatus::Undetermined
    }

    pub fn edges(&self) -> &BTreeSet<Pair> {
        match self {
            Board::Finite(pg) => pg.edges(),
            Board::Sparse(b) => &b.edges,
        }
    }

    pub fn nonedges(&self) -> &BTreeSet<Pair> {
        match self {
            Board::Finite(pg) => pg.nonedges(),
            Board::Sparse(b) => &b.nonedges,
        }
    }

    pub fn determined_count(&self) -> usize {
        self.edges().len() + self.nonedges().len()
    }

    pub fn e_neighbors(&self, v: Vertex) -> BTreeSet<Vertex> {
        match self {
            Board::Finite(pg) => pg.edges().iter().filter_map(|p| p.other(v)).collect(),
            Board::Sparse(b) => b.e_adj.get(&v).unwrap_or(&EMPTY).clone(),
        }
    }

    pub fn degree_e(&self, v: Vertex) -> usize {
        match self {
            Board::Finite(pg) => pg.edges().iter().filter(|p| p.contains(v)).count(),
            Board::Sparse(b) => b.e_adj.get(&v).map_or(0, |s| s.len()),
        }
    }

    /// Number of undetermined allowed pairs `{i, j}` with `i < j`.
    pub fn undetermined_below(&self, j: Vertex) -> usize {
        match self {
            Board::Finite(_) => (0..j).filter(|&i| self.is_undetermined(Pair::of(i, j))).count(),
            Board::Sparse(b) => {
                let allowed = (0..j).filter(|&i| b.kind.contains(Pair::of(i, j))).count();
                let determined = b.p_adj.get(&j).map_or(0, |s| s.range(..j).count());
                allowed - determined
            }
        }
    }

    /// gmin on the whole finite board, or on the touched window of ω.
    pub fn gmin(&self) -> FiniteGraph {
        match self {
            Board::Finite(pg) => pg.gmin(),
            Board::Sparse(b) => b.gmin_window(),
        }
    }

    /// Connected component of `v` in gmin (always finite here).
    pub fn gmin_component(&self, v: Vertex) -> BTreeSet<Vertex> {
        let mut seen = BTreeSet::from([v]);
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            for y in self.e_neighbors(x) {
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen
    }

    pub fn has_undetermined(&self) -> bool {
        match self {
            Board::Finite(pg) => pg.undetermined_count() > 0,
            Board::Sparse(_) => true,
        }
    }

    pub fn terminal_status(&self, property: Property) -> Result<TerminalStatus> {
        match self {
            Board::Finite(pg) => property.terminal_status(pg),
            Board::Sparse(b) => Ok(b.terminal_status(property)),
        }
    }

    fn determine(&mut self, p: Pair, a: Answer) -> Result<()> {
        match self {
            Board::Finite(pg) => pg.determine(p, a),
            Board::Sparse(b) => b.determine(p, a),
        }
    }

    pub fn to_dot(&self) -> String {
        match self {
            Board::Finite(pg) => dot::pregraph_to_dot(pg),
            Board::Sparse(b) => {
                let n = b.max_touched().map_or(0, |v| v as usize + 1);
                let allowed =
                    FiniteGraph::from_edges(n, b.edges.iter().chain(&b.nonedges).copied()).expect("window");
                let pg = FinitePregraph::with(allowed, b.edges.iter().copied(), b.nonedges.iter().copied())
                    .expect("consistent");
                dot::pregraph_to_dot(&pg)
            }
        }
    }
}

// ---------------------------------------------------------------------------
// families of large pair sets

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LargeFamily {
    AllPairs,
    /// Contains all pairs of some infinite vertex set.
    InfiniteClique,
    /// At least `n` vertices of infinite probed degree.
    JN(usize),
    /// The unprobed pairs all lie inside some set of at most `n` vertices.
    SmallComplement(usize),
}

impl fmt::Display for LargeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LargeFamily::AllPairs => write!(f, "all"),
            LargeFamily::InfiniteClique => write!(f, "omega-clique"),
            LargeFamily::JN(n) => write!(f, "j:{n}"),
            LargeFamily::SmallComplement(n) => write!(f, "f:{n}"),
        }
    }
}

impl FromStr for LargeFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "family",
            input: s.to_string(),
            expected: "all | omega-clique | j:<n> | f:<n> (n >= 1)",
        };
        let num = |a: &str| match a.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(err()),
        };
        match s.split_once(':') {
            None if s == "all" => Ok(LargeFamily::AllPairs),
            None if s == "omega-clique" => Ok(LargeFamily::InfiniteClique),
            Some(("j", a)) => Ok(LargeFamily::JN(num(a)?)),
            Some(("f", a)) => Ok(LargeFamily::SmallComplement(num(a)?)),
            _ => Err(err()),
        }
    }
}

impl Serialize for LargeFamily {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub family: LargeFamily,
    /// `None` when membership cannot be decided from the data.
    pub member: Option<bool>,
    pub detail: String,
}

/// Membership of the probed set of `board` in `family`.
pub fn family_membership(board: &Board, family: LargeFamily) -> FamilyReport {
    let report = |member, detail: String| FamilyReport { family, member, detail };
    let probed = || board.edges().iter().chain(board.nonedges()).copied();
    match (family, board) {
        (LargeFamily::AllPairs, Board::Finite(pg)) => {
            report(Some(pg.is_complete()), format!("{}/{} pairs probed", pg.determined_count(), pg.allowed_count()))
        }
        (LargeFamily::AllPairs, Board::Sparse(_)) => report(Some(false), "finitely many pairs probed on ω".into()),
        (LargeFamily::InfiniteClique, _) => {
            let n = board.gmin().n().max(board.n().unwrap_or(0));
            let g = FiniteGraph::from_edges(n, probed()).expect("window");
            report(None, format!("largest probed clique has {} vertices", algo::max_clique_size(&g)))
        }
        (LargeFamily::JN(n), _) => {
            report(Some(false), format!("no vertex has infinite probed degree (need {n})"))
        }
        (LargeFamily::SmallComplement(n), Board::Finite(pg)) => {
            let b: BTreeSet<Vertex> = pg.undetermined().flat_map(|p| [p.lo(), p.hi()]).collect();
            report(Some(b.len() <= n), format!("unprobed pairs span {} vertices {b:?}", b.len()))
        }
        (LargeFamily::SmallComplement(_), Board::Sparse(_)) => {
            report(Some(false), "infinitely many unprobed pairs on ω".into())
        }
    }
}

// ---------------------------------------------------------------------------
// players

/// Bob: answers a probe given the current position.
pub trait Hider {
    fn answer(&mut self, board: &Board, probe: Pair) -> Result<Answer>;
    fn deterministic(&self) -> bool {
        true
    }
    fn name(&self) -> String;
}

/// Alice: picks the next pair, or `None` to resign.
pub trait Seeker {
    fn next(&mut self, board: &Board) -> Result<Option<Pair>>;
    fn name(&self) -> String;
}

// ---------------------------------------------------------------------------
// the game

#[derive(Clone, Debug)]
pub struct GameConfig {
    pub allowed: AllowedGraphKind,
    pub property: Property,
    pub family: LargeFamily,
    pub fuel: usize,
}

impl GameConfig {
    pub fn new(allowed: AllowedGraphKind, property: Property) -> Self {
        GameConfig {
            allowed,
            property,
            family: LargeFamily::AllPairs,
            fuel: 10_000,
        }
    }

    pub fn finite(allowed: FiniteGraph, property: Property) -> Self {
        Self::new(AllowedGraphKind::FiniteExplicit(allowed), property)
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

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Move {
    pub turn: usize,
    pub pair: Pair,
    pub answer: Answer,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TerminalReason {
    ForcedTrue,
    ForcedFalse,
    FuelExhausted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Winner {
    Alice,
    Bob,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transcript {
    pub moves: Vec<Move>,
    pub terminal_reason: TerminalReason,
    pub winner: Winner,
    pub determined_count: usize,
    pub family_report: FamilyReport,
}

fn check_terminal(board: &Board, property: Property) -> Result<Option<TerminalReason>> {
    Ok(match board.terminal_status(property)? {
        TerminalStatus::ForcedTrue => Some(TerminalReason::ForcedTrue),
        TerminalStatus::ForcedFalse => Some(TerminalReason::ForcedFalse),
        TerminalStatus::Open => None,
    })
}

/// Runs one game; `observer` sees the board after every answer.
pub fn play_observed(
    seeker: &mut dyn Seeker,
    hider: &mut dyn Hider,
    config: &GameConfig,
    observer: &mut dyn FnMut(&Board, &Move) -> Result<()>,
) -> Result<(Transcript, Board)> {
    if config.fuel == 0 {
        return Err(Error::InvalidParameter("fuel must be at least 1".into()));
    }
    config.property.validated()?;
    let mut board = Board::from_kind(&config.allowed)?;
    let mut moves = Vec::new();
    let mut reason = check_terminal(&board, config.property)?;
    while reason.is_none() && moves.len() < config.fuel {
        let turn = moves.len();
        let pair = seeker.next(&board)?.ok_or_else(|| Error::Protocol {
            turn,
            reason: "seeker resigned while the game is open".into(),
        })?;
        match board.status(pair) {
            PairStatus::Undetermined => {}
            PairStatus::Disallowed => {
                return Err(Error::Protocol {
                    turn,
                    reason: format!("probe {pair} is not an allowed pair"),
                })
            }
            _ => {
                return Err(Error::Protocol {
                    turn,
                    reason: format!("probe {pair} is already determined"),
                })
            }
        }
        let answer = hider.answer(&board, pair)?;
        board.determine(pair, answer)?;
        let mv = Move { turn, pair, answer };
        moves.push(mv);
        observer(&board, &mv)?;
        reason = check_terminal(&board, config.property)?;
    }
    let family_report = family_membership(&board, config.family);
    let (terminal_reason, winner) = match reason {
        Some(r) => (r, if family_report.member == Some(true) { Winner::Bob } else { Winner::Alice }),
        None => (TerminalReason::FuelExhausted, Winner::Undecided),
    };
    let transcript = Transcript {
        determined_count: board.determined_count(),
        moves,
        terminal_reason,
        winner,
        family_report,
    };
    Ok((transcript, board))
}

pub fn play(seeker: &mut dyn Seeker, hider: &mut dyn Hider, config: &GameConfig) -> Result<Transcript> {
    play_observed(seeker, hider, config, &mut |_, _| Ok(())).map(|(t, _)| t)
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Lex;
    impl Seeker for Lex {
        fn next(&mut self, board: &Board) -> Result<Option<Pair>> {
            let n = board.n().unwrap_or(64) as Vertex;
            Ok((0..n).flat_map(|u| (u + 1..n).map(move |v| Pair::of(u, v))).find(|p| board.is_undetermined(*p)))
        }
        fn name(&self) -> String {
            "lex".into()
        }
    }

    struct Always(Answer);
    impl Hider for Always {
        fn answer(&mut self, _: &Board, _: Pair) -> Result<Answer> {
            Ok(self.0)
        }
        fn name(&self) -> String {
            "always".into()
        }
    }

    struct Cheater;
    impl Seeker for Cheater {
        fn next(&mut self, _: &Board) -> Result<Option<Pair>> {
            Ok(Some(Pair::of(0, 1)))
        }
        fn name(&self) -> String {
            "cheater".into()
        }
    }

    #[test]
    fn min_degree_on_k2_ends_at_first_probe() {
        let cfg = GameConfig::finite(FiniteGraph::complete(2), Property::MinDegree(1));
        let t = play(&mut Lex, &mut Always(Answer::Edge), &cfg).unwrap();
        assert_eq!(t.moves.len(), 1);
        assert_eq!(t.terminal_reason, TerminalReason::ForcedTrue);
        assert_eq!(t.winner, Winner::Bob);
    }

    #[test]
    fn fuel_exhaustion_is_undecided() {
        let cfg = GameConfig::finite(FiniteGraph::complete(10), Property::Cycle).with_fuel(5);
        let t = play(&mut Lex, &mut Always(Answer::Nonedge), &cfg).unwrap();
        assert_eq!(t.terminal_reason, TerminalReason::FuelExhausted);
        assert_eq!(t.winner, Winner::Undecided);
        assert_eq!(t.moves.len(), 5);
    }

    #[test]
    fn repeated_probe_is_a_protocol_violation() {
        let cfg = GameConfig::finite(FiniteGraph::complete(4), Property::Cycle);
        let err = play(&mut Cheater, &mut Always(Answer::Edge), &cfg).unwrap_err();
        assert!(matches!(err, Error::Protocol { turn: 1, .. }));
    }

    #[test]
    fn family_examples() {
        let k4 = FiniteGraph::complete(4);
        let full = Board::Finite(FinitePregraph::with(k4.clone(), k4.edges(), []).unwrap());
        assert_eq!(family_membership(&full, LargeFamily::AllPairs).member, Some(true));
        // complement = triangle on {0,1,2}
        let k4p: Vec<Pair> = k4.edges().filter(|p| p.hi() == 3).collect();
        let b = Board::Finite(FinitePregraph::with(k4, k4p, []).unwrap());
        assert_eq!(family_membership(&b, LargeFamily::SmallComplement(3)).member, Some(true));
        assert_eq!(family_membership(&b, LargeFamily::SmallComplement(2)).member, Some(false));
        // complement = perfect matching on 6 vertices
        let k6 = FiniteGraph::complete(6);
        let m = [Pair::of(0, 1), Pair::of(2, 3), Pair::of(4, 5)];
        let b = Board::Finite(FinitePregraph::with(k6.clone(), k6.edges().filter(|p| !m.contains(p)), []).unwrap());
        assert_eq!(family_membership(&b, LargeFamily::SmallComplement(2)).member, Some(false));
        assert_eq!(family_membership(&b, LargeFamily::JN(1)).member, Some(false));
        assert_eq!(family_membership(&b, LargeFamily::InfiniteClique).member, None);
    }

    #[test]
    fn sparse_board_accounting() {
        let mut b = Board::from_kind(&AllowedGraphKind::CompleteOmega).unwrap();
        assert_eq!(b.undetermined_below(7), 7);
        b.determine(Pair::of(5, 7), Answer::Edge).unwrap();
        b.determine(Pair::of(2, 7), Answer::Nonedge).unwrap();
        b.determine(Pair::of(7, 9), Answer::Edge).unwrap();
        assert_eq!(b.undetermined_below(7), 5);
        assert_eq!(b.degree_e(7), 2);
        assert_eq!(b.terminal_status(Property::Cycle).unwrap(), TerminalStatus::Open);
        assert_eq!(b.terminal_status(Property::MinDegree(1)).unwrap(), TerminalStatus::Open);
        let t2 = Board::from_kind(&AllowedGraphKind::Turan(2)).unwrap();
        assert_eq!(t2.terminal_status(Property::ContainsClique(3)).unwrap(), TerminalStatus::ForcedFalse);
        assert_eq!(t2.undetermined_below(7), 4);
    }

    #[test]
    fn family_strings() {
        for s in ["all", "omega-clique", "j:2", "f:3"] {
            assert_eq!(s.parse::<LargeFamily>().unwrap().to_string(), s);
        }
        assert!("f:0".parse::<LargeFamily>().is_err());
    }
}
