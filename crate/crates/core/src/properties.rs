//! Graph properties and the terminal evaluator that ends a game.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::algo;
use crate::error::{Error, Result};
use crate::graph::{FiniteGraph, FinitePregraph, Pair, Vertex};

pub const DEFAULT_EXTENSION_BOUND: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Property {
    Cycle,
    /// Every vertex has degree at least `n`.
    MinDegree(usize),
    /// Every connected component has at least `m` vertices.
    MinComponentSize(usize),
    Connected,
    Scorpion,
    /// Contains `K_{1,n}`.
    ContainsStar(usize),
    ContainsClique(usize),
    ContainsP3,
    NotBipartite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TerminalStatus {
    ForcedTrue,
    ForcedFalse,
    Open,
}

impl TerminalStatus {
    pub fn is_terminal(self) -> bool {
        self != TerminalStatus::Open
    }
}

impl Property {
    pub fn validated(self) -> Result<Self> {
        let bad = |msg: &str| Err(Error::InvalidParameter(format!("{self}: {msg}")));
        match self {
            Property::MinDegree(0) => bad("degree threshold must be at least 1"),
            Property::MinComponentSize(m) if m < 2 => bad("component size must be at least 2"),
            Property::ContainsStar(0) => bad("star size must be at least 1"),
            Property::ContainsClique(k) if k < 3 => bad("clique size must be at least 3"),
            p => Ok(p),
        }
    }

    pub fn is_monotone(self) -> bool {
        !matches!(self, Property::Scorpion)
    }

    pub fn holds(self, g: &FiniteGraph) -> bool {
        match self {
            Property::Cycle => algo::has_cycle(g),
            Property::MinDegree(n) => g.vertices().all(|v| g.degree(v) >= n),
            Property::MinComponentSize(m) => algo::components(g).iter().all(|c| c.len() >= m),
            Property::Connected => algo::is_connected(g),
            Property::Scorpion => algo::recognize_scorpion(g).is_some(),
            Property::ContainsStar(n) => g.max_degree() >= n,
            Property::ContainsClique(k) => algo::has_clique(g, k),
            Property::ContainsP3 => g.max_degree() >= 2,
            Property::NotBipartite => !algo::is_bipartite(g),
        }
    }

    pub fn terminal_status(self, pg: &FinitePregraph) -> Result<TerminalStatus> {
        self.terminal_status_bounded(pg, DEFAULT_EXTENSION_BOUND)
    }

    pub fn terminal_status_bounded(self, pg: &FinitePregraph, bound: usize) -> Result<TerminalStatus> {
        if self.is_monotone() {
            return Ok(if self.holds(&pg.gmin()) {
                TerminalStatus::ForcedTrue
            } else if !self.holds(&pg.gmax()) {
                TerminalStatus::ForcedFalse
            } else {
                TerminalStatus::Open
            });
        }
        scorpion_status(pg, bound)
    }
}

/// Whether some extension of `pg` is a scorpion with this ordered triple.
/// The incident pairs of the triple are forced; every other pair is free.
fn scorpion_triple_feasible(pg: &FinitePregraph, s: Vertex, t: Vertex, b: Vertex) -> bool {
    if s == t || t == b || s == b {
        return false;
    }
    let can_be_edge = |x: Vertex, y: Vertex| {
        let p = Pair::of(x, y);
        pg.allowed().has_edge(p) && !pg.nonedges().contains(&p)
    };
    let is_edge = |x: Vertex, y: Vertex| pg.edges().contains(&Pair::of(x, y));
    if !can_be_edge(s, t) || !can_be_edge(t, b) || is_edge(s, b) {
        return false;
    }
    let n = pg.n() as Vertex;
    (0..n).all(|v| {
        (v == s || v == t || v == b || !is_edge(s, v))
            && (v == s || v == t || v == b || !is_edge(t, v))
            && (v == s || v == b || can_be_edge(b, v))
    })
}

/// Certificate: all pairs at the triple are settled and `gmin`
/// is a scorpion on exactly that triple, so every extension is one.
fn scorpion_settled_triple(pg: &FinitePregraph) -> bool {
    let n = pg.n() as Vertex;
    let gmin = pg.gmin();
    let settled = |x: Vertex| {
        (0..n).all(|v| v == x || !pg.allowed().has_edge(Pair::of(x, v)) || pg.is_determined(Pair::of(x, v)))
    };
    let candidates: Vec<Vertex> = (0..n).filter(|&v| settled(v)).collect();
    candidates.iter().any(|&s| {
        candidates.iter().any(|&t| {
            candidates.iter().any(|&b| algo::is_scorpion_triple(&gmin, s, t, b))
        })
    })
}

fn scorpion_status(pg: &FinitePregraph, bound: usize) -> Result<TerminalStatus> {
    let n = pg.n() as Vertex;
    let feasible = (0..n).any(|s| (0..n).any(|t| (0..n).any(|b| scorpion_triple_feasible(pg, s, t, b))));
    if !feasible {
        return Ok(TerminalStatus::ForcedFalse);
    }
    if scorpion_settled_triple(pg) {
        return Ok(TerminalStatus::ForcedTrue);
    }
    let open: Vec<Pair> = pg.undetermined().collect();
    if open.len() > bound {
        return Err(Error::Undecidable {
            undetermined: open.len(),
            bound,
        });
    }
    let base = pg.gmin();
    let mut all = true;
    for mask in 0u64..1 << open.len() {
        let mut g = base.clone();
        for (i, p) in open.iter().enumerate() {
            if mask >> i & 1 == 1 {
                g.add_edge(*p)?;
            }
        }
        if !Property::Scorpion.holds(&g) {
            all = false;
            break;
        }
    }
    // some extension is a scorpion (feasible triple), so "none" is impossible here
    Ok(if all { TerminalStatus::ForcedTrue } else { TerminalStatus::Open })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotonicityReport {
    pub monotone: bool,
    pub samples: usize,
    /// A graph with the property and an added pair that destroys it.
    pub counterexample: Option<(FiniteGraph, Pair)>,
}

fn random_graph(rng: &mut impl Rng, n: usize, density: f64) -> FiniteGraph {
    let mut g = FiniteGraph::empty(n);
    for u in 0..n as Vertex {
        for v in u + 1..n as Vertex {
            if rng.gen_bool(density) {
                g.add_edge(Pair::of(u, v)).expect("in range");
            }
        }
    }
    g
}

/// A random scorpion on `n >= 4` vertices with sting 0, tail 1, body 2.
pub fn random_scorpion(rng: &mut impl Rng, n: usize, density: f64) -> FiniteGraph {
    let mut g = FiniteGraph::from_pairs(n, &[(0, 1), (1, 2)]).expect("n >= 3");
    for v in 3..n as Vertex {
        g.add_edge(Pair::of(2, v)).expect("in range");
        for w in v + 1..n as Vertex {
            if rng.gen_bool(density) {
                g.add_edge(Pair::of(v, w)).expect("in range");
            }
        }
    }
    g
}

/// Randomized check that adding edges never destroys the property.
pub fn monotonicity_check(property: Property, sample_budget: usize, seed: u64) -> MonotonicityReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = 0;
    for i in 0..sample_budget {
        let n = rng.gen_range(3..=8);
        let density = rng.gen_range(0.05..0.95);
        let g = if property == Property::Scorpion || i % 4 == 0 && n >= 4 {
            random_scorpion(&mut rng, n.max(4), density)
        } else {
            random_graph(&mut rng, n, density)
        };
        if !property.holds(&g) {
            continue;
        }
        samples += 1;
        let n = g.n() as Vertex;
        let missing: Vec<Pair> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| Pair::of(u, v)))
            .filter(|p| !g.has_edge(*p))
            .collect();
        for p in missing {
            let mut h = g.clone();
            h.add_edge(p).expect("in range");
            if !property.holds(&h) {
                return MonotonicityReport {
                    monotone: false,
                    samples,
                    counterexample: Some((g, p)),
                };
            }
        }
    }
    MonotonicityReport {
        monotone: true,
        samples,
        counterexample: None,
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Property::Cycle => write!(f, "cycle"),
            Property::MinDegree(n) => write!(f, "dmin:{n}"),
            Property::MinComponentSize(m) => write!(f, "cmin:{m}"),
            Property::Connected => write!(f, "connected"),
            Property::Scorpion => write!(f, "scorpion"),
            Property::ContainsStar(n) => write!(f, "star:{n}"),
            Property::ContainsClique(k) => write!(f, "clique:{k}"),
            Property::ContainsP3 => write!(f, "p3"),
            Property::NotBipartite => write!(f, "notbipartite"),
        }
    }
}

impl Serialize for Property {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

const PROPERTY_GRAMMAR: &str =
    "cycle | dmin:<n> | cmin:<m> | connected | scorpion | star:<n> | clique:<k> | p3 | notbipartite";

impl FromStr for Property {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "property",
            input: s.to_string(),
            expected: PROPERTY_GRAMMAR,
        };
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a.parse::<usize>().map_err(|_| err())?)),
            None => (s, None),
        };
        let p = match (head, arg) {
            ("cycle", None) => Property::Cycle,
            ("dmin", Some(n)) => Property::MinDegree(n),
            ("cmin", Some(m)) => Property::MinComponentSize(m),
            ("connected", None) => Property::Connected,
            ("scorpion", None) => Property::Scorpion,
            ("star", Some(n)) => Property::ContainsStar(n),
            ("clique", Some(k)) => Property::ContainsClique(k),
            ("p3", None) => Property::ContainsP3,
            ("notbipartite", None) => Property::NotBipartite,
            _ => return Err(err()),
        };
        p.validated()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algo::example_scorpion;

    fn all_graphs(n: usize) -> Vec<FiniteGraph> {
        let pairs: Vec<Pair> = FiniteGraph::complete(n).edges().collect();
        (0u64..1 << pairs.len())
            .map(|mask| {
                FiniteGraph::from_edges(
                    n,
                    pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| *p),
                )
                .unwrap()
            })
            .collect()
    }

    fn all_monotone_kinds() -> Vec<Property> {
        vec![
            Property::Cycle,
            Property::MinDegree(1),
            Property::MinDegree(2),
            Property::MinComponentSize(2),
            Property::MinComponentSize(3),
            Property::Connected,
            Property::ContainsStar(2),
            Property::ContainsStar(3),
            Property::ContainsClique(3),
            Property::ContainsP3,
            Property::NotBipartite,
        ]
    }

    #[test]
    fn holds_examples() {
        assert!(!Property::MinDegree(1).holds(&FiniteGraph::empty(3)));
        let matching = FiniteGraph::from_pairs(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(Property::MinComponentSize(2).holds(&matching));
        assert!(Property::Connected.holds(&FiniteGraph::empty(1)));
    }

    #[test]
    fn parse_round_trip_and_errors() {
        for p in all_monotone_kinds().into_iter().chain([Property::Scorpion]) {
            assert_eq!(p.to_string().parse::<Property>().unwrap(), p);
        }
        assert!("dmin:0".parse::<Property>().is_err());
        assert!("cmin:1".parse::<Property>().is_err());
        assert!("clique:2".parse::<Property>().is_err());
        assert!("bogus".parse::<Property>().is_err());
    }

    #[test]
    fn star_is_max_degree_threshold() {
        for g in all_graphs(5) {
            for n in 1..5 {
                assert_eq!(Property::ContainsStar(n).holds(&g), g.max_degree() >= n);
            }
        }
    }

    #[test]
    fn monotone_closure_under_single_edge_additions() {
        for n in 0..=5 {
            let graphs = all_graphs(n);
            for p in all_monotone_kinds() {
                for g in &graphs {
                    if !p.holds(g) {
                        continue;
                    }
                    for e in FiniteGraph::complete(n).edges().filter(|e| !g.has_edge(*e)) {
                        let mut h = g.clone();
                        h.add_edge(e).unwrap();
                        assert!(p.holds(&h), "{p} lost on {g:?} + {e:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn terminal_examples() {
        let k3 = FiniteGraph::complete(3);
        let tri = FinitePregraph::with(k3.clone(), k3.edges(), []).unwrap();
        assert_eq!(Property::Cycle.terminal_status(&tri).unwrap(), TerminalStatus::ForcedTrue);
        let two_non = FinitePregraph::with(k3, [], [Pair::of(0, 1), Pair::of(0, 2)]).unwrap();
        assert_eq!(Property::Cycle.terminal_status(&two_non).unwrap(), TerminalStatus::ForcedFalse);
    }

    /// Brute force over all extensions: ForcedTrue means all extensions hold,
    /// ForcedFalse means none does.
    fn brute_status(p: Property, pg: &FinitePregraph) -> (bool, bool) {
        let open: Vec<Pair> = pg.undetermined().collect();
        let (mut any, mut all) = (false, true);
        for mask in 0u64..1 << open.len() {
            let mut g = pg.gmin();
            for (i, e) in open.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    g.add_edge(*e).unwrap();
                }
            }
            let h = p.holds(&g);
            any |= h;
            all &= h;
        }
        (any, all)
    }

    #[test]
    fn terminal_status_agrees_with_extension_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.gen_range(3..=6);
            let kn = FiniteGraph::complete(n);
            let (mut e, mut ne) = (vec![], vec![]);
            for p in kn.edges() {
                match rng.gen_range(0..3) {
                    1 => e.push(p),
                    2 => ne.push(p),
                    _ => {}
                }
            }
            let pg = FinitePregraph::with(kn, e, ne).unwrap();
            for p in all_monotone_kinds().into_iter().chain([Property::Scorpion]) {
                let (any, all) = brute_status(p, &pg);
                let st = p.terminal_status(&pg).unwrap();
                match st {
                    TerminalStatus::ForcedTrue => assert!(all, "{p}"),
                    TerminalStatus::ForcedFalse => assert!(!any, "{p}"),
                    TerminalStatus::Open => assert!(any && !all, "{p} {pg:?}"),
                }
                if pg.is_complete() {
                    assert_ne!(st, TerminalStatus::Open);
                }
            }
        }
    }

    #[test]
    fn scorpion_settled_triple_forces_true() {
        // settle every pair at 0,1,2 of the figure graph, leave the row open
        let g = example_scorpion();
        let kn = FiniteGraph::complete(g.n());
        let (mut e, mut ne) = (vec![], vec![]);
        for p in kn.edges().filter(|p| p.lo() <= 2) {
            if g.has_edge(p) {
                e.push(p)
            } else {
                ne.push(p)
            }
        }
        let pg = FinitePregraph::with(kn, e, ne).unwrap();
        assert!(pg.undetermined_count() > 0);
        assert_eq!(Property::Scorpion.terminal_status(&pg).unwrap(), TerminalStatus::ForcedTrue);
        assert_eq!(brute_status(Property::Scorpion, &pg), (true, true));
    }

    #[test]
    fn scorpion_reports_undecidable_beyond_bound() {
        let pg = FinitePregraph::new(FiniteGraph::complete(8));
        assert!(matches!(
            Property::Scorpion.terminal_status_bounded(&pg, 10),
            Err(Error::Undecidable { .. })
        ));
    }

    #[test]
    fn monotonicity_sampler() {
        assert!(monotonicity_check(Property::Cycle, 300, 1).monotone);
        assert!(monotonicity_check(Property::MinDegree(2), 300, 2).monotone);
        let r = monotonicity_check(Property::Scorpion, 300, 3);
        assert!(!r.monotone);
        let (g, p) = r.counterexample.unwrap();
        assert!(Property::Scorpion.holds(&g));
        let mut h = g.clone();
        h.add_edge(p).unwrap();
        assert!(!Property::Scorpion.holds(&h));
    }
}
