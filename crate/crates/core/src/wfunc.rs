//! w-functions, their validator, and the allowed-graph kinds they run on.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{FiniteGraph, Pair, Vertex};
use crate::graph6;

/// The two instantiations: minimum degree and minimum component size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WFunction {
    /// `min(deg(a), m)`.
    Degree(usize),
    /// `min(|component(a)| - 1, n - 1)`.
    Component(usize),
}

pub fn w_degree(m: usize) -> Result<WFunction> {
    if m == 0 {
        return Err(Error::InvalidParameter("w_degree needs m >= 1".into()));
    }
    Ok(WFunction::Degree(m))
}

pub fn w_component(n: usize) -> Result<WFunction> {
    if n < 2 {
        return Err(Error::InvalidParameter("w_component needs n >= 2".into()));
    }
    Ok(WFunction::Component(n))
}

/// Interface the validator checks; `WFunction` is the production implementor.
pub trait WFn {
    /// Maximal level.
    fn level(&self) -> usize;
    /// Degree threshold.
    fn k(&self) -> usize;
    /// Bound on the witness set size.
    fn m(&self) -> usize;
    fn eval(&self, a: Vertex, g: &FiniteGraph) -> usize;
    fn witness(&self, a: Vertex, g: &FiniteGraph) -> BTreeSet<Vertex>;
}

impl WFunction {
    /// Evaluates against an arbitrary (possibly infinite) edge set, given a
    /// neighbor oracle returning at most `cap` neighbors of a vertex.
    /// Returns the value and the witness set.
    pub fn eval_local(
        self,
        a: Vertex,
        neighbors: &mut dyn FnMut(Vertex, usize) -> Vec<Vertex>,
    ) -> (usize, BTreeSet<Vertex>) {
        match self {
            WFunction::Degree(m) => {
                let d = neighbors(a, m).len().min(m);
                (d, BTreeSet::from([a]))
            }
            WFunction::Component(n) => {
                let mut seen = BTreeSet::from([a]);
                let mut queue = VecDeque::from([a]);
                while let Some(v) = queue.pop_front() {
                    if seen.len() >= n {
                        break;
                    }
                    for w in neighbors(v, n) {
                        if seen.insert(w) {
                            queue.push_back(w);
                            if seen.len() >= n {
                                break;
                            }
                        }
                    }
                }
                if seen.len() < n {
                    (seen.len() - 1, seen)
                } else {
                    (n - 1, BTreeSet::from([a]))
                }
            }
        }
    }

    fn finite(self, a: Vertex, g: &FiniteGraph) -> (usize, BTreeSet<Vertex>) {
        self.eval_local(a, &mut |v, cap| g.neighbors(v).iter().copied().take(cap).collect())
    }
}

impl WFn for WFunction {
    fn level(&self) -> usize {
        match *self {
            WFunction::Degree(m) => m,
            WFunction::Component(n) => n - 1,
        }
    }
    fn k(&self) -> usize {
        self.level()
    }
    fn m(&self) -> usize {
        match *self {
            WFunction::Degree(_) => 1,
            WFunction::Component(n) => n - 1,
        }
    }
    fn eval(&self, a: Vertex, g: &FiniteGraph) -> usize {
        self.finite(a, g).0
    }
    fn witness(&self, a: Vertex, g: &FiniteGraph) -> BTreeSet<Vertex> {
        self.finite(a, g).1
    }
}

impl fmt::Display for WFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WFunction::Degree(m) => write!(f, "dmin:{m}"),
            WFunction::Component(n) => write!(f, "cmin:{n}"),
        }
    }
}

impl FromStr for WFunction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "w-function",
            input: s.to_string(),
            expected: "dmin:<m> | cmin:<n>",
        };
        let (head, arg) = s.split_once(':').ok_or_else(err)?;
        let v: usize = arg.parse().map_err(|_| err())?;
        match head {
            "dmin" => w_degree(v),
            "cmin" => w_component(v),
            _ => Err(err()),
        }
    }
}

impl Serialize for WFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

// ---------------------------------------------------------------------------
// validator

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum ClauseStatus {
    Passed { checks: usize },
    Violated { counterexample: String },
    Skipped { reason: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct WReport {
    pub clauses: Vec<(String, ClauseStatus)>,
}

impl WReport {
    pub fn ok(&self) -> bool {
        self.clauses.iter().all(|(_, s)| !matches!(s, ClauseStatus::Violated { .. }))
    }

    pub fn first_violation(&self) -> Option<(&str, &str)> {
        self.clauses.iter().find_map(|(c, s)| match s {
            ClauseStatus::Violated { counterexample } => Some((c.as_str(), counterexample.as_str())),
            _ => None,
        })
    }

    pub fn status(&self, clause: &str) -> Option<&ClauseStatus> {
        self.clauses.iter().find(|(c, _)| c == clause).map(|(_, s)| s)
    }
}

#[derive(Default)]
struct Tally {
    checks: [usize; 7],
    violation: [Option<String>; 7],
}

impl Tally {
    fn check(&mut self, clause: usize, ok: bool, describe: impl FnOnce() -> String) {
        self.checks[clause] += 1;
        if !ok && self.violation[clause].is_none() {
            self.violation[clause] = Some(describe());
        }
    }
}

fn edges_str(g: &FiniteGraph) -> String {
    let v: Vec<String> = g.edges().map(|p| p.to_string()).collect();
    format!("n={} E={{{}}}", g.n(), v.join(","))
}

/// Clauses w1, w2, w4, w5, w7 on one configuration `g` inside `allowed`.
fn check_config<W: WFn>(wf: &W, allowed: &FiniteGraph, g: &FiniteGraph, t: &mut Tally) {
    let n = wf.level();
    let vals: Vec<usize> = g.vertices().map(|a| wf.eval(a, g)).collect();
    let wits: Vec<BTreeSet<Vertex>> = g.vertices().map(|a| wf.witness(a, g)).collect();
    for a in g.vertices() {
        let (ai, va) = (a as usize, vals[a as usize]);
        t.check(1, va <= n, || format!("value {va} > {n} at {a}, {}", edges_str(g)));
        if g.degree(a) >= wf.k() {
            t.check(1, va == n, || format!("deg {} >= K but value {va} at {a}, {}", g.degree(a), edges_str(g)));
        }
        let w = &wits[ai];
        t.check(3, w.contains(&a) && w.len() <= wf.m(), || {
            format!("witness {w:?} of {a} (M = {}), {}", wf.m(), edges_str(g))
        });
        for &b in w {
            let same = wits[b as usize] == *w && vals[b as usize] == va;
            t.check(3, same, || format!("{b} in W({a}) but W/w differ, {}", edges_str(g)));
        }
    }
    for e in allowed.edges().filter(|e| !g.has_edge(*e)) {
        let mut h = g.clone();
        h.add_edge(e).expect("within allowed");
        for a in g.vertices() {
            let (before, after) = (vals[a as usize], wf.eval(a, &h));
            t.check(4, after >= before, || format!("adding {e} lowers w({a}), {}", edges_str(g)));
            if after > before {
                let touches = wits[a as usize].contains(&e.lo()) || wits[a as usize].contains(&e.hi());
                t.check(3, touches, || format!("adding {e} raises w({a}) without touching W, {}", edges_str(g)));
            }
        }
        if vals[e.lo() as usize] == n && vals[e.hi() as usize] == n {
            for c in g.vertices() {
                t.check(6, wf.eval(c, &h) == vals[c as usize], || {
                    format!("adding saturated pair {e} changes w({c}), {}", edges_str(g))
                });
            }
        }
    }
}

/// w1 on the empty and full configurations; the full clause only where the
/// truncation leaves a vertex at least K allowed neighbors.
fn check_w1<W: WFn>(wf: &W, allowed: &FiniteGraph, t: &mut Tally) {
    let empty = FiniteGraph::empty(allowed.n());
    for a in allowed.vertices() {
        let v0 = wf.eval(a, &empty);
        t.check(0, v0 == 0, || format!("w({a}, {{}}) = {v0}"));
        if allowed.degree(a) >= wf.k() {
            let v1 = wf.eval(a, allowed);
            t.check(0, v1 == wf.level(), || format!("w({a}, E*) = {v1} on {}", edges_str(allowed)));
        }
    }
}

/// w3 on a finite chain: the value at the top is attained by a subset of at
/// most K*M edges (found by greedy deletion), and values along the chain are
/// dominated by the value at the top.
fn check_w3_chain<W: WFn>(wf: &W, chain: &[FiniteGraph], t: &mut Tally) {
    let Some(top) = chain.last() else { return };
    for a in top.vertices() {
        let target = wf.eval(a, top);
        for g in chain {
            t.check(2, wf.eval(a, g) <= target, || format!("chain value above limit at {a}"));
        }
        let mut small = top.clone();
        for e in top.edges() {
            small.remove_edge(e);
            if wf.eval(a, &small) != target {
                small.add_edge(e).expect("restoring");
            }
        }
        let bound = wf.k() * wf.m();
        t.check(2, small.edge_count() <= bound, || {
            format!("w({a}) = {target} needs {} edges > K*M = {bound}, {}", small.edge_count(), edges_str(top))
        });
    }
}

const CLAUSES: [&str; 7] = ["w1", "w2", "w3", "w4", "w5", "w6", "w7"];

fn finish(t: Tally) -> WReport {
    let clauses = CLAUSES
        .iter()
        .enumerate()
        .map(|(i, name)| {
            let status = if i == 5 {
                ClauseStatus::Skipped {
                    reason: "continuity over limit unions is not finitely testable".into(),
                }
            } else if let Some(c) = t.violation[i].clone() {
                ClauseStatus::Violated { counterexample: c }
            } else {
                ClauseStatus::Passed { checks: t.checks[i] }
            };
            (name.to_string(), status)
        })
        .collect();
    WReport { clauses }
}

fn random_subgraph(rng: &mut impl Rng, allowed: &FiniteGraph) -> FiniteGraph {
    let density = rng.gen_range(0.0..1.0);
    FiniteGraph::from_edges(allowed.n(), allowed.edges().filter(|_| rng.gen_bool(density))).expect("subgraph")
}

/// Sampled validation over `allowed` (a finite truncation).
pub fn validate_w<W: WFn>(wf: &W, allowed: &FiniteGraph, sample_budget: usize, seed: u64) -> WReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tally::default();
    check_w1(wf, allowed, &mut t);
    for _ in 0..sample_budget {
        let g = random_subgraph(&mut rng, allowed);
        check_config(wf, allowed, &g, &mut t);
        // random chain ending at g
        let mut order: Vec<Pair> = g.edges().collect();
        order.shuffle(&mut rng);
        let mut chain = vec![FiniteGraph::empty(allowed.n())];
        let step = (order.len() / 4).max(1);
        for chunk in order.chunks(step) {
            let mut next = chain.last().expect("nonempty").clone();
            for e in chunk {
                next.add_edge(*e).expect("subgraph");
            }
            chain.push(next);
        }
        check_w3_chain(wf, &chain, &mut t);
    }
    finish(t)
}

/// Exhaustive validation over every edge set of `K_n`.
pub fn validate_w_exhaustive<W: WFn>(wf: &W, n: usize) -> WReport {
    let allowed = FiniteGraph::complete(n);
    let pairs: Vec<Pair> = allowed.edges().collect();
    let mut t = Tally::default();
    check_w1(wf, &allowed, &mut t);
    for mask in 0u64..1 << pairs.len() {
        let g = FiniteGraph::from_edges(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| *p))
            .expect("subgraph");
        check_config(wf, &allowed, &g, &mut t);
        check_w3_chain(wf, std::slice::from_ref(&g), &mut t);
    }
    finish(t)
}

// ---------------------------------------------------------------------------
// allowed graphs

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AllowedGraphKind {
    CompleteOmega,
    /// Vertex `v` lies in class `v mod k`, column `v / k`.
    Turan(usize),
    /// Vertex ids enumerate binary strings breadth-first.
    Cantor,
    FiniteExplicit(FiniteGraph),
}

impl AllowedGraphKind {
    pub fn is_infinite(&self) -> bool {
        !matches!(self, AllowedGraphKind::FiniteExplicit(_))
    }

    pub fn contains(&self, p: Pair) -> bool {
        match self {
            AllowedGraphKind::CompleteOmega => true,
            AllowedGraphKind::Turan(k) => p.lo() as usize % k != p.hi() as usize % k,
            AllowedGraphKind::Cantor => cantor::comparable(p.lo(), p.hi()),
            AllowedGraphKind::FiniteExplicit(g) => g.has_edge(p),
        }
    }

    /// The induced subgraph on `0..n` (the whole graph for finite kinds).
    pub fn truncation(&self, n: usize) -> FiniteGraph {
        if let AllowedGraphKind::FiniteExplicit(g) = self {
            return g.clone();
        }
        let mut g = FiniteGraph::empty(n);
        for j in 1..n as Vertex {
            for i in 0..j {
                let p = Pair::of(i, j);
                if self.contains(p) {
                    g.add_edge(p).expect("in range");
                }
            }
        }
        g
    }
}

impl fmt::Display for AllowedGraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AllowedGraphKind::CompleteOmega => write!(f, "komega"),
            AllowedGraphKind::Turan(k) => write!(f, "turan:{k}"),
            AllowedGraphKind::Cantor => write!(f, "cantor"),
            AllowedGraphKind::FiniteExplicit(g) => write!(f, "g6:{}", graph6::encode(g)),
        }
    }
}

impl FromStr for AllowedGraphKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "allowed graph",
            input: s.to_string(),
            expected: "komega | turan:<k> (k >= 2) | cantor | g6:<graph6> | k:<n>",
        };
        match s.split_once(':') {
            None if s == "komega" => Ok(AllowedGraphKind::CompleteOmega),
            None if s == "cantor" => Ok(AllowedGraphKind::Cantor),
            Some(("turan", k)) => match k.parse::<usize>() {
                Ok(k) if k >= 2 => Ok(AllowedGraphKind::Turan(k)),
                _ => Err(err()),
            },
            Some(("g6", g)) => Ok(AllowedGraphKind::FiniteExplicit(graph6::decode(g)?)),
            Some(("k", n)) => Ok(AllowedGraphKind::FiniteExplicit(FiniteGraph::complete(
                n.parse().map_err(|_| err())?,
            ))),
            _ => Err(err()),
        }
    }
}

impl Serialize for AllowedGraphKind {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub mod cantor {
    //! Breadth-first codec for finite binary strings: "" = 0, "0" = 1,
    //! "1" = 2, "00" = 3, ...; the children of `r` are `2r+1` and `2r+2`.

    use crate::graph::Vertex;

    pub fn depth(v: Vertex) -> u32 {
        (v as u64 + 1).ilog2()
    }

    pub fn encode(bits: &str) -> Option<Vertex> {
        let mut v: u64 = 0;
        for c in bits.chars() {
            v = 2 * v
                + match c {
                    '0' => 1,
                    '1' => 2,
                    _ => return None,
                };
            if v > Vertex::MAX as u64 {
                return None;
            }
        }
        Some(v as Vertex)
    }

    pub fn decode(v: Vertex) -> String {
        let mut out = Vec::new();
        let mut x = v as u64;
        while x > 0 {
            out.push(if x % 2 == 1 { '0' } else { '1' });
            x = (x - 1) / 2;
        }
        out.iter().rev().collect()
    }

    /// `u` is a strict prefix of `v`.
    pub fn is_strict_ancestor(u: Vertex, v: Vertex) -> bool {
        let (du, dv) = (depth(u), depth(v));
        du < dv && ((v as u64 + 1) >> (dv - du)) == u as u64 + 1
    }

    pub fn comparable(u: Vertex, v: Vertex) -> bool {
        is_strict_ancestor(u, v) || is_strict_ancestor(v, u)
    }

    /// Ids of all strings of length `d`.
    pub fn level(d: u32) -> std::ops::RangeInclusive<u64> {
        ((1u64 << d) - 1)..=((1u64 << (d + 1)) - 2)
    }
}

/// A finite covering set avoiding `excluded`: every vertex outside it has an
/// allowed pair into it.
pub fn covering_set(kind: &AllowedGraphKind, excluded: &BTreeSet<Vertex>) -> Result<BTreeSet<Vertex>> {
    let top = excluded.iter().next_back().copied();
    match kind {
        AllowedGraphKind::CompleteOmega => Ok(BTreeSet::from([top.map_or(0, |v| v + 1)])),
        AllowedGraphKind::Turan(k) => {
            let k = *k as Vertex;
            let col = top.map_or(0, |v| v / k + 1);
            Ok((0..k).map(|c| col * k + c).collect())
        }
        AllowedGraphKind::Cantor => {
            let d = excluded.iter().map(|&v| cantor::depth(v) + 1).max().unwrap_or(0);
            Ok(cantor::level(d).map(|v| v as Vertex).collect())
        }
        AllowedGraphKind::FiniteExplicit(_) => Err(Error::NotBraided(
            "covering sets are only provided for komega, turan and cantor".into(),
        )),
    }
}

/// Checks that `l` avoids `excluded` and covers every vertex of the truncation.
pub fn is_covering_set(truncation: &FiniteGraph, excluded: &BTreeSet<Vertex>, l: &BTreeSet<Vertex>) -> bool {
    l.is_disjoint(excluded)
        && truncation
            .vertices()
            .all(|v| l.contains(&v) || truncation.neighbors(v).iter().any(|a| l.contains(a)))
}

fn covered_by(g: &FiniteGraph, l: &[Vertex]) -> bool {
    g.vertices()
        .all(|v| l.contains(&v) || g.neighbors(v).iter().any(|a| l.contains(a)))
}

/// Smallest-found covering set avoiding `excluded` with at most `bound`
/// vertices: greedy first, then exact search on small candidate pools.
fn find_covering(g: &FiniteGraph, excluded: &BTreeSet<Vertex>, bound: usize) -> Option<Vec<Vertex>> {
    let pool: Vec<Vertex> = g.vertices().filter(|v| !excluded.contains(v)).collect();
    let mut chosen: Vec<Vertex> = Vec::new();
    let mut covered = vec![false; g.n()];
    loop {
        if covered.iter().all(|&c| c) {
            break;
        }
        let gain = |v: Vertex| {
            (!covered[v as usize]) as usize + g.neighbors(v).iter().filter(|&&w| !covered[w as usize]).count()
        };
        let best = pool.iter().copied().filter(|v| !chosen.contains(v)).max_by_key(|&v| (gain(v), std::cmp::Reverse(v)))?;
        if gain(best) == 0 {
            return None;
        }
        chosen.push(best);
        covered[best as usize] = true;
        for &w in g.neighbors(best) {
            covered[w as usize] = true;
        }
    }
    if chosen.len() <= bound {
        return Some(chosen);
    }
    if pool.len() > 20 {
        return None;
    }
    fn subsets(pool: &[Vertex], size: usize, start: usize, cur: &mut Vec<Vertex>, g: &FiniteGraph) -> bool {
        if cur.len() == size {
            return covered_by(g, cur);
        }
        for i in start..pool.len() {
            cur.push(pool[i]);
            if subsets(pool, size, i + 1, cur, g) {
                return true;
            }
            cur.pop();
        }
        false
    }
    for size in 1..=bound {
        let mut cur = Vec::new();
        if subsets(&pool, size, 0, &mut cur, g) {
            return Some(cur);
        }
    }
    None
}

/// Finite sanity check of braidedness: for sampled exclusion sets drawn from
/// the low quarter of the vertex range, a covering set of at most half the
/// vertices must exist outside the excluded set.
pub fn braided_check(truncation: &FiniteGraph, trials: usize, seed: u64) -> bool {
    let n = truncation.n();
    if n == 0 {
        return true;
    }
    let quarter = (n / 4).max(1) as Vertex;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials.max(1)).all(|i| {
        let excluded: BTreeSet<Vertex> = if i == 0 {
            (0..quarter).collect()
        } else {
            (0..quarter).filter(|_| rng.gen_bool(0.5)).collect()
        };
        match find_covering(truncation, &excluded, n / 2) {
            Some(l) => is_covering_set(truncation, &excluded, &l.into_iter().collect()),
            None => false,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_examples() {
        let w = w_degree(2).unwrap();
        assert_eq!(w.eval(0, &FiniteGraph::empty(6)), 0);
        let star = FiniteGraph::from_pairs(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        assert_eq!(w.eval(0, &star), 2);
        assert_eq!((w.k(), w.m()), (2, 1));
    }

    #[test]
    fn component_examples() {
        let w = w_component(3).unwrap();
        let g = FiniteGraph::from_pairs(4, &[(0, 1)]).unwrap();
        assert_eq!(w.eval(3, &g), 0);
        assert_eq!(w.eval(0, &g), 1);
        assert_eq!(w.witness(0, &g), BTreeSet::from([0, 1]));
        let p = FiniteGraph::from_pairs(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(w.eval(0, &p), 2);
        assert_eq!(w.witness(0, &p), BTreeSet::from([0]));
    }

    #[test]
    fn parameters_are_checked() {
        assert!(w_degree(0).is_err());
        assert!(w_component(1).is_err());
        assert_eq!("cmin:3".parse::<WFunction>().unwrap(), WFunction::Component(3));
    }

    #[test]
    fn sampled_validation_passes() {
        let k8 = FiniteGraph::complete(8);
        let r = validate_w(&w_degree(2).unwrap(), &k8, 200, 1);
        assert!(r.ok(), "{r:?}");
        assert!(matches!(r.status("w6"), Some(ClauseStatus::Skipped { .. })));
        let t2 = AllowedGraphKind::Turan(2).truncation(8);
        let r = validate_w(&w_component(3).unwrap(), &t2, 200, 2);
        assert!(r.ok(), "{r:?}");
    }

    struct Broken;
    impl WFn for Broken {
        fn level(&self) -> usize {
            1
        }
        fn k(&self) -> usize {
            1
        }
        fn m(&self) -> usize {
            1
        }
        fn eval(&self, _a: Vertex, _g: &FiniteGraph) -> usize {
            1
        }
        fn witness(&self, a: Vertex, _g: &FiniteGraph) -> BTreeSet<Vertex> {
            BTreeSet::from([a])
        }
    }

    #[test]
    fn broken_w_reports_w1() {
        let r = validate_w(&Broken, &FiniteGraph::complete(4), 10, 3);
        assert_eq!(r.first_violation().map(|(c, _)| c), Some("w1"));
    }

    /// gmin has D_m / C_n iff the w-function is saturated everywhere.
    #[test]
    fn saturation_matches_degree_and_component_properties() {
        use crate::properties::Property;
        for n in 1..=5usize {
            let pairs: Vec<Pair> = FiniteGraph::complete(n).edges().collect();
            for mask in 0u64..1 << pairs.len() {
                let g = FiniteGraph::from_edges(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| *p))
                    .unwrap();
                for m in 1..=3 {
                    let w = w_degree(m).unwrap();
                    assert_eq!(Property::MinDegree(m).holds(&g), g.vertices().all(|a| w.eval(a, &g) == m));
                }
                for c in 2..=4 {
                    let w = w_component(c).unwrap();
                    assert_eq!(
                        Property::MinComponentSize(c).holds(&g),
                        g.vertices().all(|a| w.eval(a, &g) == c - 1)
                    );
                }
            }
        }
    }

    #[test]
    fn cantor_codec() {
        assert_eq!(cantor::encode(""), Some(0));
        assert_eq!(cantor::encode("0"), Some(1));
        assert_eq!(cantor::encode("1"), Some(2));
        assert_eq!(cantor::encode("00"), Some(3));
        for v in 0..500 {
            assert_eq!(cantor::encode(&cantor::decode(v)), Some(v));
        }
        // prefix relation against string oracle
        for u in 0..64 {
            for v in 0..64 {
                let (su, sv) = (cantor::decode(u), cantor::decode(v));
                assert_eq!(cantor::is_strict_ancestor(u, v), su.len() < sv.len() && sv.starts_with(&su));
            }
        }
    }

    #[test]
    fn covering_sets() {
        let ex: BTreeSet<Vertex> = (0..10).collect();
        assert_eq!(covering_set(&AllowedGraphKind::CompleteOmega, &ex).unwrap(), BTreeSet::from([10]));
        // excluded strings of length <= 2: ids 0..=6
        let ex: BTreeSet<Vertex> = (0..7).collect();
        let l = covering_set(&AllowedGraphKind::Cantor, &ex).unwrap();
        assert_eq!(l.len(), 8);
        assert!(l.iter().all(|&v| cantor::decode(v).len() == 3));
        let cantor_tr = AllowedGraphKind::Cantor.truncation(127);
        assert!(is_covering_set(&cantor_tr, &ex, &l));
        // Turán(3), excluded within columns < 5
        let ex: BTreeSet<Vertex> = [0, 4, 14].into();
        let l = covering_set(&AllowedGraphKind::Turan(3), &ex).unwrap();
        assert_eq!(l, BTreeSet::from([15, 16, 17]));
        let tr = AllowedGraphKind::Turan(3).truncation(60);
        assert!(is_covering_set(&tr, &ex, &l));
        assert!(covering_set(&AllowedGraphKind::FiniteExplicit(FiniteGraph::complete(3)), &ex).is_err());
    }

    #[test]
    fn braided_sanity() {
        assert!(braided_check(&FiniteGraph::complete(20), 10, 1));
        assert!(braided_check(&AllowedGraphKind::Cantor.truncation(63), 10, 2));
        let star = FiniteGraph::from_edges(16, (1..16).map(|v| Pair::of(0, v))).unwrap();
        assert!(!braided_check(&star, 10, 3));
    }

    #[test]
    fn spec_strings() {
        for s in ["komega", "turan:3", "cantor", "g6:B_"] {
            assert_eq!(s.parse::<AllowedGraphKind>().unwrap().to_string(), s);
        }
        assert!("turan:1".parse::<AllowedGraphKind>().is_err());
    }
}
