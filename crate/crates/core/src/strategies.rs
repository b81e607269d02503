//! Hiders and seekers for single-pair play.

use std::collections::BTreeSet;
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algo::{self, UnionFind};
use crate::engine::{Board, Hider, Seeker};
use crate::error::{Error, Result};
use crate::graph::{Answer, FiniteGraph, Pair, Vertex};

// ---------------------------------------------------------------------------
// hiders

/// Says edge exactly when the probe keeps gmin acyclic.
#[derive(Clone, Debug, Default)]
pub struct CycleForestHider {
    uf: UnionFind,
    absorbed: BTreeSet<Pair>,
    /// Recompute from the board and compare with the accelerator.
    pub verify: bool,
}

pub fn hider_cycle_forest() -> CycleForestHider {
    CycleForestHider::default()
}

impl Hider for CycleForestHider {
    fn answer(&mut self, board: &Board, probe: Pair) -> Result<Answer> {
        if board.edges().len() < self.absorbed.len() {
            // a new game started with this instance
            *self = CycleForestHider { verify: self.verify, ..Default::default() };
        }
        for e in board.edges().difference(&self.absorbed.clone()) {
            self.uf.ensure(e.hi().max(e.lo()) as usize);
            self.uf.union(e.lo() as usize, e.hi() as usize);
            self.absorbed.insert(*e);
        }
        self.uf.ensure(probe.hi() as usize);
        let acyclic = !self.uf.same(probe.lo() as usize, probe.hi() as usize);
        if self.verify {
            let slow = !board.gmin_component(probe.lo()).contains(&probe.hi());
            assert_eq!(acyclic, slow, "union-find accelerator out of sync");
        }
        Ok(Answer::from_bool(acyclic))
    }
    fn name(&self) -> String {
        "cycle-forest".into()
    }
}

/// The degree adversary: rule (a) keeps the low vertices growing, rule (b)
/// says edge when a vertex would otherwise fall below `n` in gmax.
#[derive(Clone, Copy, Debug)]
pub struct DegreeHider {
    pub n: usize,
}

pub fn hider_degree(n: usize) -> DegreeHider {
    DegreeHider { n }
}

impl DegreeHider {
    pub fn rule_a(&self, board: &Board, p: Pair) -> bool {
        let (i, j) = (p.lo(), p.hi());
        (i as usize <= self.n && board.degree_e(i) < self.n) || (j as usize <= self.n && board.degree_e(j) < self.n)
    }

    pub fn rule_b(&self, board: &Board, p: Pair) -> bool {
        let j = p.hi();
        board.degree_e(j) + board.undetermined_below(j) == self.n
    }
}

impl Hider for DegreeHider {
    fn answer(&mut self, board: &Board, probe: Pair) -> Result<Answer> {
        Ok(Answer::from_bool(self.rule_a(board, probe) || self.rule_b(board, probe)))
    }
    fn name(&self) -> String {
        format!("degree:{}", self.n)
    }
}

/// Joins two finite gmin-components only once every allowed pair between
/// them has been settled, so components stay fully determined inside.
#[derive(Clone, Copy, Debug, Default)]
pub struct ConnectHider;

pub fn hider_connect() -> ConnectHider {
    ConnectHider
}

impl Hider for ConnectHider {
    fn answer(&mut self, board: &Board, probe: Pair) -> Result<Answer> {
        let a = board.gmin_component(probe.lo());
        if a.contains(&probe.hi()) {
            return Ok(Answer::Nonedge);
        }
        let b = board.gmin_component(probe.hi());
        let settled = a.iter().all(|&x| {
            b.iter().all(|&y| {
                let p = Pair::of(x, y);
                p == probe || !board.is_undetermined(p)
            })
        });
        Ok(Answer::from_bool(settled))
    }
    fn name(&self) -> String {
        "connect".into()
    }
}

/// Says edge iff both endpoints still have gmin-degree below `n - 1`.
#[derive(Clone, Copy, Debug)]
pub struct StarHider {
    pub n: usize,
}

pub fn hider_star(n: usize) -> Result<StarHider> {
    if n == 0 {
        return Err(Error::InvalidParameter("star hider needs n >= 1".into()));
    }
    Ok(StarHider { n })
}

impl Hider for StarHider {
    fn answer(&mut self, board: &Board, probe: Pair) -> Result<Answer> {
        let lim = self.n - 1;
        Ok(Answer::from_bool(board.degree_e(probe.lo()) < lim && board.degree_e(probe.hi()) < lim))
    }
    fn name(&self) -> String {
        format!("star:{}", self.n)
    }
}

/// A hidden graph fixed before play.
pub trait HiddenGraph {
    fn has_pair(&self, p: Pair) -> Result<bool>;
    fn describe(&self) -> String;
}

impl HiddenGraph for FiniteGraph {
    fn has_pair(&self, p: Pair) -> Result<bool> {
        if p.hi() as usize >= self.n() {
            return Err(Error::OutsideDomain(p));
        }
        Ok(self.has_edge(p))
    }
    fn describe(&self) -> String {
        format!("g6:{}", crate::graph6::encode(self))
    }
}

pub struct ObliviousHider<H: HiddenGraph> {
    pub hidden: H,
}

pub fn hider_oblivious<H: HiddenGraph>(hidden: H) -> ObliviousHider<H> {
    ObliviousHider { hidden }
}

impl<H: HiddenGraph> Hider for ObliviousHider<H> {
    fn answer(&mut self, _board: &Board, probe: Pair) -> Result<Answer> {
        self.hidden.has_pair(probe).map(Answer::from_bool)
    }
    fn name(&self) -> String {
        format!("oblivious:{}", self.hidden.describe())
    }
}

// ---------------------------------------------------------------------------
// seekers

/// Fixed probe order: lexicographic on finite boards, by larger endpoint
/// then smaller (`(0,1), (0,2), (1,2), (0,3), ...`) on ω.
#[derive(Clone, Debug, Default)]
pub struct LexSeeker {
    cursor: (Vertex, Vertex),
}

pub fn seeker_lexicographic() -> LexSeeker {
    LexSeeker::default()
}

impl Seeker for LexSeeker {
    fn next(&mut self, board: &Board) -> Result<Option<Pair>> {
        match board.n() {
            Some(n) => {
                let n = n as Vertex;
                Ok((0..n)
                    .flat_map(|u| (u + 1..n).map(move |v| Pair::of(u, v)))
                    .find(|p| board.is_undetermined(*p)))
            }
            None => {
                let (mut i, mut j) = if self.cursor.1 == 0 || board.determined_count() == 0 { (0, 1) } else { (self.cursor.0, self.cursor.1) };
                let start = (i, j);
                loop {
                    if board.is_undetermined(Pair::of(i, j)) {
                        self.cursor = (i, j);
                        return Ok(Some(Pair::of(i, j)));
                    }
                    i += 1;
                    if i == j {
                        j += 1;
                        i = 0;
                    }
                    if j > start.1 + (1 << 16) {
                        return Err(Error::UnknownExhausted("no undetermined pair in probe window".into()));
                    }
                }
            }
        }
    }
    fn name(&self) -> String {
        "lex".into()
    }
}

/// Uniform over undetermined pairs (finite) or over a vertex window that
/// doubles when saturated (ω).
#[derive(Clone, Debug)]
pub struct RandomSeeker {
    seed: u64,
    rng: ChaCha8Rng,
    pub window: Vertex,
}

pub fn seeker_random(seed: u64) -> RandomSeeker {
    RandomSeeker {
        seed,
        rng: ChaCha8Rng::seed_from_u64(seed),
        window: 64,
    }
}

impl RandomSeeker {
    pub fn with_window(mut self, window: Vertex) -> Self {
        self.window = window.max(2);
        self
    }
}

impl Seeker for RandomSeeker {
    fn next(&mut self, board: &Board) -> Result<Option<Pair>> {
        match board.n() {
            Some(n) => {
                let n = n as Vertex;
                let open: Vec<Pair> = (0..n)
                    .flat_map(|u| (u + 1..n).map(move |v| Pair::of(u, v)))
                    .filter(|p| board.is_undetermined(*p))
                    .collect();
                if open.is_empty() {
                    return Ok(None);
                }
                Ok(Some(open[self.rng.gen_range(0..open.len())]))
            }
            None => loop {
                for _ in 0..4096 {
                    let u = self.rng.gen_range(0..self.window);
                    let v = self.rng.gen_range(0..self.window);
                    if u != v && board.is_undetermined(Pair::of(u, v)) {
                        return Ok(Some(Pair::of(u, v)));
                    }
                }
                self.window = self.window.saturating_mul(2);
            },
        }
    }
    fn name(&self) -> String {
        format!("random:{}", self.seed)
    }
}

/// Probes every allowed pair lexicographically, saving the bridge for last.
#[derive(Clone, Debug)]
pub struct BridgeLastSeeker {
    bridge: Pair,
    order: Vec<Pair>,
}

pub fn seeker_bridge_last(allowed: &FiniteGraph, bridge: Pair) -> Result<BridgeLastSeeker> {
    if !algo::bridges(allowed).contains(&bridge) {
        return Err(Error::NotBridge(bridge));
    }
    let mut order: Vec<Pair> = allowed.edges().filter(|p| *p != bridge).collect();
    order.push(bridge);
    Ok(BridgeLastSeeker { bridge, order })
}

impl Seeker for BridgeLastSeeker {
    fn next(&mut self, board: &Board) -> Result<Option<Pair>> {
        Ok(self.order.iter().copied().find(|p| board.is_undetermined(*p)))
    }
    fn name(&self) -> String {
        format!("bridge-last:{}", self.bridge)
    }
}

/// Reads probes `u v` or `u-v` from a line source; prompts on `out`.
pub struct HumanSeeker<R: BufRead, W: Write> {
    input: R,
    out: W,
}

pub fn seeker_human<R: BufRead, W: Write>(input: R, out: W) -> HumanSeeker<R, W> {
    HumanSeeker { input, out }
}

pub fn parse_pair(s: &str) -> Result<Pair> {
    let err = || Error::Parse {
        what: "pair",
        input: s.to_string(),
        expected: "<u>-<v> or <u> <v> with distinct vertex ids",
    };
    let parts: Vec<&str> = s.trim().split(|c: char| c == '-' || c.is_whitespace() || c == ',').filter(|p| !p.is_empty()).collect();
    let [u, v] = parts.as_slice() else { return Err(err()) };
    Pair::new(u.parse().map_err(|_| err())?, v.parse().map_err(|_| err())?).map_err(|_| err())
}

impl<R: BufRead, W: Write> Seeker for HumanSeeker<R, W> {
    fn next(&mut self, board: &Board) -> Result<Option<Pair>> {
        loop {
            let _ = write!(self.out, "probe [{} determined] > ", board.determined_count());
            let _ = self.out.flush();
            let mut line = String::new();
            if self.input.read_line(&mut line).unwrap_or(0) == 0 || line.trim() == "quit" {
                return Ok(None);
            }
            match parse_pair(&line) {
                Ok(p) if board.is_undetermined(p) => return Ok(Some(p)),
                Ok(p) => {
                    let _ = writeln!(self.out, "{p} is not an undetermined allowed pair");
                }
                Err(e) => {
                    let _ = writeln!(self.out, "{e}");
                }
            }
        }
    }
    fn name(&self) -> String {
        "human".into()
    }
}

// ---------------------------------------------------------------------------
// spec strings

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HiderSpec {
    CycleForest,
    Degree(usize),
    Connect,
    Star(usize),
    /// Resolved by the caller: a finite graph spec or a hidden template.
    Oblivious(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeekerSpec {
    Lex,
    Random(u64),
    BridgeLast(Pair),
    Human,
}

impl FromStr for HiderSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "hider",
            input: s.to_string(),
            expected: "cycle-forest | degree:<n> | connect | star:<n> | oblivious:<graph-or-template>",
        };
        let num = |a: &str| a.parse::<usize>().map_err(|_| err());
        match s.split_once(':') {
            None if s == "cycle-forest" => Ok(HiderSpec::CycleForest),
            None if s == "connect" => Ok(HiderSpec::Connect),
            Some(("degree", a)) => Ok(HiderSpec::Degree(num(a)?)),
            Some(("star", a)) => match num(a)? {
                0 => Err(err()),
                n => Ok(HiderSpec::Star(n)),
            },
            Some(("oblivious", g)) if !g.is_empty() => Ok(HiderSpec::Oblivious(g.to_string())),
            _ => Err(err()),
        }
    }
}

impl FromStr for SeekerSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "seeker",
            input: s.to_string(),
            expected: "lex | random:<seed> | bridge-last:<u>-<v> | human",
        };
        match s.split_once(':') {
            None if s == "lex" => Ok(SeekerSpec::Lex),
            None if s == "human" => Ok(SeekerSpec::Human),
            Some(("random", a)) => Ok(SeekerSpec::Random(a.parse().map_err(|_| err())?)),
            Some(("bridge-last", p)) => Ok(SeekerSpec::BridgeLast(parse_pair(p).map_err(|_| err())?)),
            _ => Err(err()),
        }
    }
}

impl fmt::Display for HiderSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HiderSpec::CycleForest => write!(f, "cycle-forest"),
            HiderSpec::Degree(n) => write!(f, "degree:{n}"),
            HiderSpec::Connect => write!(f, "connect"),
            HiderSpec::Star(n) => write!(f, "star:{n}"),
            HiderSpec::Oblivious(g) => write!(f, "oblivious:{g}"),
        }
    }
}

impl HiderSpec {
    /// Builds the adaptive hiders; `Oblivious` needs the caller's resolver.
    pub fn build_adaptive(&self) -> Result<Box<dyn Hider>> {
        Ok(match self {
            HiderSpec::CycleForest => Box::new(hider_cycle_forest()),
            HiderSpec::Degree(n) => Box::new(hider_degree(*n)),
            HiderSpec::Connect => Box::new(hider_connect()),
            HiderSpec::Star(n) => Box::new(hider_star(*n)?),
            HiderSpec::Oblivious(g) => {
                return Err(Error::InvalidParameter(format!("oblivious hider {g} needs a resolved hidden graph")))
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{play, play_observed, GameConfig, TerminalReason, Winner};
    use crate::graph::FinitePregraph;
    use crate::properties::Property;
    use crate::wfunc::AllowedGraphKind;

    fn k(n: usize) -> Board {
        Board::Finite(FinitePregraph::new(FiniteGraph::complete(n)))
    }

    fn board_with(n: usize, e: &[(Vertex, Vertex)], ne: &[(Vertex, Vertex)]) -> Board {
        Board::Finite(
            FinitePregraph::with(
                FiniteGraph::complete(n),
                e.iter().map(|&(a, b)| Pair::of(a, b)),
                ne.iter().map(|&(a, b)| Pair::of(a, b)),
            )
            .unwrap(),
        )
    }

    #[test]
    fn cycle_forest_answers() {
        let mut h = hider_cycle_forest();
        h.verify = true;
        assert_eq!(h.answer(&k(3), Pair::of(0, 1)).unwrap(), Answer::Edge);
        let mut h = hider_cycle_forest();
        let b = board_with(3, &[(0, 1), (1, 2)], &[]);
        assert_eq!(h.answer(&b, Pair::of(0, 2)).unwrap(), Answer::Nonedge);
    }

    #[test]
    fn cycle_on_k3_lex_vs_forest_goes_the_distance() {
        let cfg = GameConfig::finite(FiniteGraph::complete(3), Property::Cycle);
        let t = play(&mut seeker_lexicographic(), &mut hider_cycle_forest(), &cfg).unwrap();
        let probes: Vec<Pair> = t.moves.iter().map(|m| m.pair).collect();
        assert_eq!(probes, vec![Pair::of(0, 1), Pair::of(0, 2), Pair::of(1, 2)]);
        assert_eq!(t.moves[2].answer, Answer::Nonedge);
        assert_eq!(t.winner, Winner::Bob);
    }

    #[test]
    fn forest_invariant_under_random_play() {
        for seed in 0..20 {
            let cfg = GameConfig::finite(FiniteGraph::complete(7), Property::Cycle);
            let mut h = hider_cycle_forest();
            h.verify = true;
            play_observed(&mut seeker_random(seed), &mut h, &cfg, &mut |b, _| {
                assert!(!algo::has_cycle(&b.gmin()));
                Ok(())
            })
            .unwrap();
        }
    }

    #[test]
    fn degree_rules() {
        let b = Board::from_kind(&AllowedGraphKind::CompleteOmega).unwrap();
        assert_eq!(hider_degree(1).answer(&b, Pair::of(0, 1)).unwrap(), Answer::Edge);
        // n = 2, deg_E(7) = 1 and exactly one undetermined {i<7, 7} remains
        let b = board_with(8, &[(0, 7)], &[(1, 7), (2, 7), (3, 7), (4, 7), (6, 7)]);
        assert_eq!(b.undetermined_below(7), 1);
        let h = hider_degree(2);
        assert!(!h.rule_a(&b, Pair::of(5, 7)));
        assert!(h.rule_b(&b, Pair::of(5, 7)));
        assert_eq!(hider_degree(2).answer(&b, Pair::of(5, 7)).unwrap(), Answer::Edge);
    }

    #[test]
    fn connect_answers() {
        let mut h = hider_connect();
        assert_eq!(h.answer(&k(4), Pair::of(0, 1)).unwrap(), Answer::Edge);
        let b = board_with(4, &[(0, 1), (1, 2)], &[]);
        assert_eq!(h.answer(&b, Pair::of(0, 2)).unwrap(), Answer::Nonedge);
        // {0,1} vs {2}: cross pair {1,2} still open, so {0,2} is refused
        let b = board_with(4, &[(0, 1)], &[]);
        assert_eq!(h.answer(&b, Pair::of(0, 2)).unwrap(), Answer::Nonedge);
    }

    #[test]
    fn star_two_answers_edge_once_per_vertex() {
        let cfg = GameConfig::finite(FiniteGraph::complete(3), Property::ContainsStar(2));
        let t = play(&mut seeker_lexicographic(), &mut hider_star(2).unwrap(), &cfg).unwrap();
        let answers: Vec<Answer> = t.moves.iter().map(|m| m.answer).collect();
        assert_eq!(answers, vec![Answer::Edge, Answer::Nonedge, Answer::Nonedge]);
        assert_eq!(hider_star(3).unwrap().answer(&k(3), Pair::of(0, 1)).unwrap(), Answer::Edge);
    }

    #[test]
    fn oblivious_answers_by_membership() {
        let mut h = hider_oblivious(FiniteGraph::complete(3));
        assert_eq!(h.answer(&k(3), Pair::of(0, 1)).unwrap(), Answer::Edge);
        let mut h = hider_oblivious(FiniteGraph::empty(3));
        assert_eq!(h.answer(&k(3), Pair::of(0, 2)).unwrap(), Answer::Nonedge);
        assert!(matches!(h.answer(&k(5), Pair::of(0, 4)), Err(Error::OutsideDomain(_))));
        // replay equals membership
        let hidden = FiniteGraph::from_pairs(5, &[(0, 1), (2, 3), (1, 4)]).unwrap();
        let cfg = GameConfig::finite(FiniteGraph::complete(5), Property::Cycle);
        let t = play(&mut seeker_random(4), &mut hider_oblivious(hidden.clone()), &cfg).unwrap();
        assert!(t.moves.iter().all(|m| m.answer.is_edge() == hidden.has_edge(m.pair)));
    }

    #[test]
    fn bridge_last_wins_for_alice() {
        // two triangles joined by the bridge {2,3}
        let h = FiniteGraph::from_pairs(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]).unwrap();
        assert!(seeker_bridge_last(&h, Pair::of(0, 1)).is_err());
        let cfg = GameConfig::finite(h.clone(), Property::Cycle);
        for hider in [&mut hider_cycle_forest() as &mut dyn Hider, &mut hider_connect(), &mut hider_star(2).unwrap()] {
            let mut s = seeker_bridge_last(&h, Pair::of(2, 3)).unwrap();
            let t = play(&mut s, hider, &cfg).unwrap();
            assert_ne!(t.terminal_reason, TerminalReason::FuelExhausted);
            assert!(t.moves.iter().all(|m| m.pair != Pair::of(2, 3)));
            assert_eq!(t.winner, Winner::Alice);
        }
        // every fixed answer pattern too
        for mask in 0u32..64 {
            let mut s = seeker_bridge_last(&h, Pair::of(2, 3)).unwrap();
            struct Pattern(u32, usize);
            impl Hider for Pattern {
                fn answer(&mut self, _: &Board, _: Pair) -> Result<Answer> {
                    self.1 += 1;
                    Ok(Answer::from_bool(self.0 >> (self.1 - 1) & 1 == 1))
                }
                fn name(&self) -> String {
                    "pattern".into()
                }
            }
            let t = play(&mut s, &mut Pattern(mask, 0), &cfg).unwrap();
            assert_eq!(t.winner, Winner::Alice);
        }
    }

    #[test]
    fn lex_and_random_orders() {
        let mut s = seeker_lexicographic();
        let b = k(3);
        assert_eq!(s.next(&b).unwrap(), Some(Pair::of(0, 1)));
        let omega = Board::from_kind(&AllowedGraphKind::CompleteOmega).unwrap();
        assert_eq!(seeker_lexicographic().next(&omega).unwrap(), Some(Pair::of(0, 1)));
        let a: Vec<_> = (0..5).map(|_| seeker_random(9).next(&k(6)).unwrap()).collect();
        assert!(a.windows(2).all(|w| w[0] == w[1]));
        let cfg = GameConfig::finite(FiniteGraph::complete(6), Property::Connected);
        let t1 = play(&mut seeker_random(3), &mut hider_connect(), &cfg).unwrap();
        let t2 = play(&mut seeker_random(3), &mut hider_connect(), &cfg).unwrap();
        assert_eq!(t1, t2);
    }

    #[test]
    fn human_reads_lines() {
        let input = b"7\n0-9\n1 2\n" as &[u8];
        let mut out = Vec::new();
        let mut s = seeker_human(input, &mut out);
        assert_eq!(s.next(&k(3)).unwrap(), Some(Pair::of(1, 2)));
    }

    #[test]
    fn spec_strings() {
        assert_eq!("degree:2".parse::<HiderSpec>().unwrap(), HiderSpec::Degree(2));
        assert_eq!("bridge-last:2-3".parse::<SeekerSpec>().unwrap(), SeekerSpec::BridgeLast(Pair::of(2, 3)));
        assert!("star:0".parse::<HiderSpec>().is_err());
        assert!("random:x".parse::<SeekerSpec>().is_err());
    }
}
