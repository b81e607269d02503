//! Exact minimax over finite boards.
//!
//! The payoff of a finished game is the number of determined pairs; the
//! seeker minimizes it and the hider maximizes it. One search yields both
//! the winner (under the all-pairs rule) and the decision-tree complexity.

use std::collections::HashMap;

use serde::Serialize;

use crate::canon::{canonical_from_colors, CanonicalKey};
use crate::engine::{Board, Hider, LargeFamily, Winner};
use crate::error::{Error, Result};
use crate::graph::{Answer, FiniteGraph, FinitePregraph, Pair};
use crate::properties::{Property, TerminalStatus};

pub const DEFAULT_PAIR_BOUND: usize = 15;
pub const MAX_COMPLETE_N: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MemoMode {
    /// Exact-state table plus a table keyed on canonical forms.
    Canonical,
    /// Exact-state table only.
    Raw,
    /// Plain game tree.
    Off,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveResult {
    pub winner: Winner,
    pub value: usize,
    pub allowed_pairs: usize,
    pub strongly_elusive: bool,
    pub optimal_first_probes: Vec<Pair>,
}

#[derive(Clone, Debug)]
pub struct SolverConfig {
    pub pair_bound: usize,
    pub memo: MemoMode,
    /// Cap on memo entries per table; reads `EVADE_MEMO_LIMIT` by default.
    pub memo_limit: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        let memo_limit = std::env::var("EVADE_MEMO_LIMIT")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(50_000_000);
        SolverConfig {
            pair_bound: DEFAULT_PAIR_BOUND,
            memo: MemoMode::Canonical,
            memo_limit,
        }
    }
}

type Masks = (u32, u32);

/// Property evaluation on adjacency bitmasks (at most 16 vertices).
fn holds_bits(property: Property, adj: &[u16]) -> bool {
    let n = adj.len();
    let deg = |v: usize| adj[v].count_ones() as usize;
    // (number of components, size of the smallest)
    let components = || {
        let mut seen = 0u16;
        let (mut count, mut smallest) = (0usize, usize::MAX);
        for s in 0..n {
            if seen >> s & 1 == 1 {
                continue;
            }
            let mut comp = 1u16 << s;
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = adj[v] & !comp;
                comp |= new;
                frontier |= new;
            }
            seen |= comp;
            count += 1;
            smallest = smallest.min(comp.count_ones() as usize);
        }
        (count, smallest)
    };
    match property {
        Property::Cycle => {
            let edges: usize = (0..n).map(deg).sum::<usize>() / 2;
            edges + components().0 > n
        }
        Property::MinDegree(k) => (0..n).all(|v| deg(v) >= k),
        Property::MinComponentSize(m) => components().1 >= m,
        Property::Connected => components().0 <= 1,
        Property::ContainsStar(s) => (0..n).any(|v| deg(v) >= s),
        Property::ContainsP3 => (0..n).any(|v| deg(v) >= 2),
        Property::ContainsClique(k) => {
            fn grow(adj: &[u16], cand: u16, need: usize) -> bool {
                if need == 0 {
                    return true;
                }
                if (cand.count_ones() as usize) < need {
                    return false;
                }
                let mut c = cand;
                while c != 0 {
                    let v = c.trailing_zeros() as usize;
                    c &= c - 1;
                    if grow(adj, c & adj[v], need - 1) {
                        return true;
                    }
                }
                false
            }
            grow(adj, if n == 16 { u16::MAX } else { (1u16 << n) - 1 }, k)
        }
        Property::NotBipartite => {
            let mut color = [u8::MAX; 16];
            let mut stack = [0usize; 16];
            for s in 0..n {
                if color[s] != u8::MAX {
                    continue;
                }
                color[s] = 0;
                stack[0] = s;
                let mut top = 1;
                while top > 0 {
                    top -= 1;
                    let v = stack[top];
                    let mut nb = adj[v];
                    while nb != 0 {
                        let w = nb.trailing_zeros() as usize;
                        nb &= nb - 1;
                        if color[w] == u8::MAX {
                            color[w] = 1 - color[v];
                            stack[top] = w;
                            top += 1;
                        } else if color[w] == color[v] {
                            return true;
                        }
                    }
                }
            }
            false
        }
        Property::Scorpion => unreachable!("scorpion is evaluated through pregraphs"),
    }
}

struct Solver<'a> {
    allowed: &'a FiniteGraph,
    pairs: Vec<Pair>,
    full: u32,
    property: Property,
    family: LargeFamily,
    config: SolverConfig,
    raw: HashMap<Masks, u8>,
    canon: HashMap<CanonicalKey, u8>,
    raw_win: HashMap<Masks, bool>,
    canon_win: HashMap<CanonicalKey, bool>,
}

impl<'a> Solver<'a> {
    fn new(allowed: &'a FiniteGraph, property: Property, family: LargeFamily, config: SolverConfig) -> Result<Self> {
        property.validated()?;
        let pairs: Vec<Pair> = allowed.edges().collect();
        let bound = config.pair_bound.min(31);
        if pairs.len() > bound {
            return Err(Error::UnsupportedSize {
                what: "allowed pairs for the solver",
                got: pairs.len(),
                bound,
            });
        }
        if allowed.n() > 16 {
            return Err(Error::UnsupportedSize {
                what: "vertices for the solver",
                got: allowed.n(),
                bound: 16,
            });
        }
        Ok(Solver {
            allowed,
            full: if pairs.len() == 32 { u32::MAX } else { (1u32 << pairs.len()) - 1 },
            pairs,
            property,
            family,
            config,
            raw: HashMap::new(),
            canon: HashMap::new(),
            raw_win: HashMap::new(),
            canon_win: HashMap::new(),
        })
    }

    fn adjacency(&self, mask: u32) -> [u16; 16] {
        let mut adj = [0u16; 16];
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            let p = self.pairs[i];
            adj[p.lo() as usize] |= 1 << p.hi();
            adj[p.hi() as usize] |= 1 << p.lo();
        }
        adj
    }

    fn pregraph(&self, (e, n): Masks) -> FinitePregraph {
        let sel = |m: u32| (0..self.pairs.len()).filter(move |i| m >> i & 1 == 1);
        FinitePregraph::with(
            self.allowed.clone(),
            sel(e).map(|i| self.pairs[i]).collect::<Vec<_>>(),
            sel(n).map(|i| self.pairs[i]).collect::<Vec<_>>(),
        )
        .expect("masks are disjoint and allowed")
    }

    fn status(&self, (e, n): Masks) -> Result<TerminalStatus> {
        if !self.property.is_monotone() {
            return self.property.terminal_status(&self.pregraph((e, n)));
        }
        Ok(if holds_bits(self.property, &self.adjacency(e)[..self.allowed.n()]) {
            TerminalStatus::ForcedTrue
        } else if !holds_bits(self.property, &self.adjacency(self.full & !n)[..self.allowed.n()]) {
            TerminalStatus::ForcedFalse
        } else {
            TerminalStatus::Open
        })
    }

    fn key(&self, (e, n): Masks) -> CanonicalKey {
        let size = self.allowed.n();
        let mut colors = vec![vec![0u8; size]; size];
        for (i, p) in self.pairs.iter().enumerate() {
            let c = if e >> i & 1 == 1 {
                2
            } else if n >> i & 1 == 1 {
                3
            } else {
                1
            };
            colors[p.lo() as usize][p.hi() as usize] = c;
            colors[p.hi() as usize][p.lo() as usize] = c;
        }
        canonical_from_colors(&colors).0
    }

    fn store<K: std::hash::Hash + Eq, V>(limit: usize, map: &mut HashMap<K, V>, k: K, v: V) {
        if map.len() < limit {
            map.insert(k, v);
        }
    }

    /// Value of a position: determined pairs at termination under optimal play.
    fn value(&mut self, s: Masks) -> Result<u8> {
        let memo = self.config.memo;
        if memo != MemoMode::Off {
            if let Some(&v) = self.raw.get(&s) {
                return Ok(v);
            }
        }
        let key = (memo == MemoMode::Canonical).then(|| self.key(s));
        if let Some(k) = &key {
            if let Some(&v) = self.canon.get(k) {
                Self::store(self.config.memo_limit, &mut self.raw, s, v);
                return Ok(v);
            }
        }
        let v = self.compute_value(s, u8::MAX)?;
        if memo != MemoMode::Off {
            Self::store(self.config.memo_limit, &mut self.raw, s, v);
        }
        if let Some(k) = key {
            Self::store(self.config.memo_limit, &mut self.canon, k, v);
        }
        Ok(v)
    }

    /// Exact value when it is below `cap`; otherwise some number in
    /// `cap..=value`. Only the unmemoized search passes a real cap.
    fn compute_value(&mut self, (e, n): Masks, cap: u8) -> Result<u8> {
        let determined = (e | n).count_ones() as u8;
        if self.status((e, n))?.is_terminal() {
            return Ok(determined);
        }
        let total = self.pairs.len() as u8;
        let mut best = cap;
        let mut open = self.full & !(e | n);
        while open != 0 {
            let bit = open & open.wrapping_neg();
            open &= open - 1;
            let v = self.probe_bounded((e, n), bit, total, best)?;
            best = best.min(v);
            if best == determined + 1 {
                break;
            }
        }
        Ok(best)
    }

    fn probe_value(&mut self, s: Masks, bit: u32, total: u8) -> Result<u8> {
        self.probe_bounded(s, bit, total, u8::MAX)
    }

    fn probe_bounded(&mut self, (e, n): Masks, bit: u32, total: u8, cap: u8) -> Result<u8> {
        let a = self.child_value((e | bit, n), cap)?;
        if a == total || a >= cap {
            return Ok(a);
        }
        Ok(a.max(self.child_value((e, n | bit), cap)?))
    }

    fn child_value(&mut self, s: Masks, cap: u8) -> Result<u8> {
        if self.config.memo == MemoMode::Off {
            self.compute_value(s, cap)
        } else {
            self.value(s)
        }
    }

    fn family_member(&self, probed: u32) -> bool {
        match self.family {
            LargeFamily::AllPairs => probed == self.full,
            LargeFamily::SmallComplement(k) => {
                let mut span = 0u32;
                for (i, p) in self.pairs.iter().enumerate() {
                    if probed >> i & 1 == 0 {
                        span |= 1 << p.lo() | 1 << p.hi();
                    }
                }
                span.count_ones() as usize <= k
            }
            // no vertex of a finite board has infinite degree, and an
            // infinite clique cannot be exhibited
            LargeFamily::JN(_) | LargeFamily::InfiniteClique => false,
        }
    }

    /// Whether the hider can force termination inside the family.
    fn bob_wins(&mut self, s: Masks) -> Result<bool> {
        if let Some(&w) = self.raw_win.get(&s) {
            return Ok(w);
        }
        let key = (self.config.memo == MemoMode::Canonical).then(|| self.key(s));
        if let Some(w) = key.as_ref().and_then(|k| self.canon_win.get(k)).copied() {
            return Ok(w);
        }
        let (e, n) = s;
        let w = if self.status(s)?.is_terminal() {
            self.family_member(e | n)
        } else {
            let mut all = true;
            let mut open = self.full & !(e | n);
            while open != 0 && all {
                let bit = open & open.wrapping_neg();
                open &= open - 1;
                all = self.bob_wins((e | bit, n))? || self.bob_wins((e, n | bit))?;
            }
            all
        };
        if self.config.memo != MemoMode::Off {
            Self::store(self.config.memo_limit, &mut self.raw_win, s, w);
        }
        if let Some(k) = key {
            Self::store(self.config.memo_limit, &mut self.canon_win, k, w);
        }
        Ok(w)
    }

    fn masks_of(&self, board: &FinitePregraph) -> Masks {
        let mut m = (0u32, 0u32);
        for (i, p) in self.pairs.iter().enumerate() {
            if board.edges().contains(p) {
                m.0 |= 1 << i;
            } else if board.nonedges().contains(p) {
                m.1 |= 1 << i;
            }
        }
        m
    }
}

pub fn solve(allowed: &FiniteGraph, property: Property, family: LargeFamily) -> Result<SolveResult> {
    solve_with(allowed, property, family, SolverConfig::default())
}

pub fn solve_with(
    allowed: &FiniteGraph,
    property: Property,
    family: LargeFamily,
    config: SolverConfig,
) -> Result<SolveResult> {
    let mut s = Solver::new(allowed, property, family, config)?;
    let total = s.pairs.len() as u8;
    let root = (0u32, 0u32);
    let value = s.value(root)?;
    let mut optimal_first_probes = Vec::new();
    if !s.status(root)?.is_terminal() {
        for i in 0..s.pairs.len() {
            if s.probe_bounded(root, 1 << i, total, value + 1)? == value {
                optimal_first_probes.push(s.pairs[i]);
            }
        }
        optimal_first_probes.sort();
    }
    let bob = match family {
        LargeFamily::AllPairs => value == total,
        _ => s.bob_wins(root)?,
    };
    Ok(SolveResult {
        winner: if bob { Winner::Bob } else { Winner::Alice },
        value: value as usize,
        allowed_pairs: total as usize,
        strongly_elusive: value == total,
        optimal_first_probes,
    })
}

/// Optimal worst-case number of probes to decide `property` on `K_n`.
pub fn decision_tree_complexity(property: Property, n: usize) -> Result<usize> {
    if n > MAX_COMPLETE_N {
        return Err(Error::UnsupportedSize {
            what: "n for decision-tree complexity",
            got: n,
            bound: MAX_COMPLETE_N,
        });
    }
    Ok(solve(&FiniteGraph::complete(n), property, LargeFamily::AllPairs)?.value)
}

/// Plays the extracted optimal seeker (lexicographically first optimal
/// probe) against the extracted optimal hider (value-maximizing answer,
/// edge on ties); returns the probes and final determined count.
pub fn optimal_play(allowed: &FiniteGraph, property: Property) -> Result<(Vec<(Pair, Answer)>, usize)> {
    let mut s = Solver::new(allowed, property, LargeFamily::AllPairs, SolverConfig::default())?;
    let total = s.pairs.len() as u8;
    let mut state = (0u32, 0u32);
    let mut moves = Vec::new();
    while !s.status(state)?.is_terminal() {
        let target = s.value(state)?;
        let mut chosen = None;
        for i in 0..s.pairs.len() {
            let bit = 1u32 << i;
            if (state.0 | state.1) & bit == 0 && s.probe_value(state, bit, total)? == target {
                chosen = Some(i);
                break;
            }
        }
        let i = chosen.expect("an optimal probe exists at open states");
        let bit = 1u32 << i;
        let edge = s.value((state.0 | bit, state.1))? >= s.value((state.0, state.1 | bit))?;
        state = if edge { (state.0 | bit, state.1) } else { (state.0, state.1 | bit) };
        moves.push((s.pairs[i], Answer::from_bool(edge)));
    }
    Ok((moves, (state.0 | state.1).count_ones() as usize))
}

/// The hider extracted from the solved game: answers so as to maximize the
/// number of pairs the seeker must still probe.
pub struct OptimalHider<'a> {
    solver: Solver<'a>,
}

pub fn optimal_hider(allowed: &FiniteGraph, property: Property) -> Result<OptimalHider<'_>> {
    Ok(OptimalHider {
        solver: Solver::new(allowed, property, LargeFamily::AllPairs, SolverConfig::default())?,
    })
}

impl Hider for OptimalHider<'_> {
    fn answer(&mut self, board: &Board, probe: Pair) -> Result<Answer> {
        let Board::Finite(pg) = board else {
            return Err(Error::InvalidParameter("the optimal hider plays finite boards only".into()));
        };
        let (e, n) = self.solver.masks_of(pg);
        let i = self.solver.pairs.iter().position(|p| *p == probe).ok_or(Error::NotAllowed(probe))?;
        let bit = 1u32 << i;
        let edge = self.solver.value((e | bit, n))? >= self.solver.value((e, n | bit))?;
        Ok(Answer::from_bool(edge))
    }
    fn name(&self) -> String {
        "optimal".into()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CycleEquivalenceReport {
    pub graphs_checked: usize,
    pub counterexamples: Vec<String>,
}

/// All graphs on exactly `n` vertices, one per isomorphism class.
pub fn graphs_up_to_iso(n: usize) -> Vec<FiniteGraph> {
    let pairs: Vec<Pair> = FiniteGraph::complete(n).edges().collect();
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let g = FiniteGraph::from_edges(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| *p))
            .expect("subgraph of K_n");
        if seen.insert(crate::canon::graph_key(&g)) {
            out.push(g);
        }
    }
    out
}

/// Bob wins Cycle on H iff every component of H is 2-edge-connected.
pub fn check_cycle_equivalence(graphs: &[FiniteGraph]) -> Result<CycleEquivalenceReport> {
    let mut counterexamples = Vec::new();
    for h in graphs {
        let bob = solve(h, Property::Cycle, LargeFamily::AllPairs)?.winner == Winner::Bob;
        let structural = crate::algo::all_components_two_edge_connected(h);
        if bob != structural {
            counterexamples.push(format!("{} (solver: {bob}, structure: {structural})", crate::graph6::encode(h)));
        }
    }
    Ok(CycleEquivalenceReport {
        graphs_checked: graphs.len(),
        counterexamples,
    })
}

pub fn verify_cycle_equivalence(max_n: usize) -> Result<CycleEquivalenceReport> {
    if max_n > MAX_COMPLETE_N {
        return Err(Error::UnsupportedSize {
            what: "max_n for cycle equivalence",
            got: max_n,
            bound: MAX_COMPLETE_N,
        });
    }
    let graphs: Vec<FiniteGraph> = (1..=max_n).flat_map(graphs_up_to_iso).collect();
    check_cycle_equivalence(&graphs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algo;

    fn all_graphs(n: usize) -> Vec<FiniteGraph> {
        let pairs: Vec<Pair> = FiniteGraph::complete(n).edges().collect();
        (0u64..1 << pairs.len())
            .map(|m| {
                FiniteGraph::from_edges(n, pairs.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, p)| *p))
                    .unwrap()
            })
            .collect()
    }

    #[test]
    fn bit_evaluator_matches_graph_predicates() {
        let props = [
            Property::Cycle,
            Property::MinDegree(1),
            Property::MinDegree(2),
            Property::MinComponentSize(3),
            Property::Connected,
            Property::ContainsStar(3),
            Property::ContainsClique(3),
            Property::ContainsClique(4),
            Property::ContainsP3,
            Property::NotBipartite,
        ];
        for n in 0..=5 {
            for g in all_graphs(n) {
                let mut adj = vec![0u16; n];
                for e in g.edges() {
                    adj[e.lo() as usize] |= 1 << e.hi();
                    adj[e.hi() as usize] |= 1 << e.lo();
                }
                for p in props {
                    assert_eq!(holds_bits(p, &adj), p.holds(&g), "{p} on {g:?}");
                }
            }
        }
    }

    #[test]
    fn cycle_on_k3() {
        let r = solve(&FiniteGraph::complete(3), Property::Cycle, LargeFamily::AllPairs).unwrap();
        assert_eq!(r.winner, Winner::Bob);
        assert_eq!(r.value, 3);
        assert!(r.strongly_elusive);
        assert_eq!(r.optimal_first_probes.len(), 3);
    }

    #[test]
    fn cycle_on_path_is_alice() {
        let p3 = FiniteGraph::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        let r = solve(&p3, Property::Cycle, LargeFamily::AllPairs).unwrap();
        assert_eq!(r.winner, Winner::Alice);
        // a forest board never has a cycle: decided before any probe
        assert_eq!(r.value, 0);
    }

    #[test]
    fn small_complexities() {
        assert_eq!(solve(&FiniteGraph::complete(3), Property::Connected, LargeFamily::AllPairs).unwrap().value, 3);
        assert_eq!(decision_tree_complexity(Property::Connected, 3).unwrap(), 3);
        assert_eq!(decision_tree_complexity(Property::MinDegree(1), 3).unwrap(), 3);
        assert_eq!(decision_tree_complexity(Property::Cycle, 1).unwrap(), 0);
        assert!(decision_tree_complexity(Property::Cycle, 7).is_err());
    }

    #[test]
    fn memo_modes_agree() {
        for g in (1..=4).flat_map(graphs_up_to_iso) {
            for p in [Property::Cycle, Property::Connected, Property::MinDegree(1), Property::ContainsP3] {
                let mk = |memo| SolverConfig { memo, ..SolverConfig::default() };
                let a = solve_with(&g, p, LargeFamily::AllPairs, mk(MemoMode::Canonical)).unwrap();
                let b = solve_with(&g, p, LargeFamily::AllPairs, mk(MemoMode::Raw)).unwrap();
                let c = solve_with(&g, p, LargeFamily::AllPairs, mk(MemoMode::Off)).unwrap();
                assert_eq!(a, b);
                assert_eq!(a, c);
            }
        }
    }

    #[test]
    fn extracted_strategies_realise_the_value() {
        for g in (3..=5).flat_map(graphs_up_to_iso).step_by(3) {
            let r = solve(&g, Property::Cycle, LargeFamily::AllPairs).unwrap();
            let (_, count) = optimal_play(&g, Property::Cycle).unwrap();
            assert_eq!(count, r.value);
        }
    }

    #[test]
    fn cycle_equivalence_small() {
        let r = verify_cycle_equivalence(4).unwrap();
        assert_eq!(r.graphs_checked, 1 + 2 + 4 + 11);
        assert!(r.counterexamples.is_empty(), "{:?}", r.counterexamples);
        let c4 = FiniteGraph::from_pairs(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(algo::all_components_two_edge_connected(&c4));
        assert_eq!(solve(&c4, Property::Cycle, LargeFamily::AllPairs).unwrap().winner, Winner::Bob);
        let edge = FiniteGraph::from_pairs(2, &[(0, 1)]).unwrap();
        assert_eq!(solve(&edge, Property::Cycle, LargeFamily::AllPairs).unwrap().winner, Winner::Alice);
    }

    #[test]
    fn size_bound() {
        let cfg = SolverConfig {
            pair_bound: 5,
            ..SolverConfig::default()
        };
        assert!(matches!(
            solve_with(&FiniteGraph::complete(4), Property::Cycle, LargeFamily::AllPairs, cfg),
            Err(Error::UnsupportedSize { .. })
        ));
    }

    #[test]
    fn small_complement_family() {
        // Bob can confine the unprobed pairs to few vertices by ending early
        let r = solve(&FiniteGraph::complete(4), Property::ContainsStar(2), LargeFamily::SmallComplement(4)).unwrap();
        assert_eq!(r.winner, Winner::Bob);
        let r = solve(&FiniteGraph::complete(4), Property::Cycle, LargeFamily::JN(1)).unwrap();
        assert_eq!(r.winner, Winner::Alice);
    }
}
