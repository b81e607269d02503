//! Finite graphs and pregraphs over dense vertex ids.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = u32;

/// An unordered pair of distinct vertices, stored with `lo < hi`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[Vertex; 2]", into = "[Vertex; 2]")]
pub struct Pair {
    lo: Vertex,
    hi: Vertex,
}

impl Pair {
    pub fn new(a: Vertex, b: Vertex) -> Result<Self> {
        if a == b {
            return Err(Error::SelfLoop(a));
        }
        Ok(Self {
            lo: a.min(b),
            hi: a.max(b),
        })
    }

    /// Like [`Pair::new`] for call sites where distinctness is already known.
    pub fn of(a: Vertex, b: Vertex) -> Self {
        Self::new(a, b).expect("pair endpoints must differ")
    }

    pub fn lo(self) -> Vertex {
        self.lo
    }

    pub fn hi(self) -> Vertex {
        self.hi
    }

    pub fn contains(self, v: Vertex) -> bool {
        self.lo == v || self.hi == v
    }

    pub fn other(self, v: Vertex) -> Option<Vertex> {
        if v == self.lo {
            Some(self.hi)
        } else if v == self.hi {
            Some(self.lo)
        } else {
            None
        }
    }

    /// Sort key of the canonical enumeration of pairs of ω: by larger
    /// endpoint, then by smaller. Every pair has finitely many predecessors.
    pub fn omega_key(self) -> (Vertex, Vertex) {
        (self.hi, self.lo)
    }
}

impl TryFrom<[Vertex; 2]> for Pair {
    type Error = Error;
    fn try_from(value: [Vertex; 2]) -> Result<Self> {
        Pair::new(value[0], value[1])
    }
}

impl From<Pair> for [Vertex; 2] {
    fn from(p: Pair) -> Self {
        [p.lo, p.hi]
    }
}

impl fmt::Debug for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.lo, self.hi)
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

/// Bob's reply to a probe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Edge,
    Nonedge,
}

impl Answer {
    pub fn from_bool(edge: bool) -> Self {
        if edge {
            Answer::Edge
        } else {
            Answer::Nonedge
        }
    }

    pub fn is_edge(self) -> bool {
        self == Answer::Edge
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FiniteGraph {
    n: usize,
    adj: Vec<BTreeSet<Vertex>>,
}

impl FiniteGraph {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            adj: vec![BTreeSet::new(); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n as Vertex {
            for v in u + 1..n as Vertex {
                g.insert(Pair::of(u, v));
            }
        }
        g
    }

    pub fn from_edges<I: IntoIterator<Item = Pair>>(n: usize, edges: I) -> Result<Self> {
        let mut g = Self::empty(n);
        for e in edges {
            g.add_edge(e)?;
        }
        Ok(g)
    }

    /// Convenience constructor from raw endpoint tuples.
    pub fn from_pairs(n: usize, pairs: &[(Vertex, Vertex)]) -> Result<Self> {
        let edges = pairs
            .iter()
            .map(|&(a, b)| Pair::new(a, b))
            .collect::<Result<Vec<_>>>()?;
        Self::from_edges(n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if (v as usize) < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub fn add_edge(&mut self, e: Pair) -> Result<bool> {
        self.check_vertex(e.hi())?;
        Ok(self.insert(e))
    }

    fn insert(&mut self, e: Pair) -> bool {
        let fresh = self.adj[e.lo() as usize].insert(e.hi());
        self.adj[e.hi() as usize].insert(e.lo());
        fresh
    }

    pub fn remove_edge(&mut self, e: Pair) -> bool {
        if (e.hi() as usize) >= self.n {
            return false;
        }
        let had = self.adj[e.lo() as usize].remove(&e.hi());
        self.adj[e.hi() as usize].remove(&e.lo());
        had
    }

    pub fn has_edge(&self, e: Pair) -> bool {
        (e.hi() as usize) < self.n && self.adj[e.lo() as usize].contains(&e.hi())
    }

    pub fn neighbors(&self, v: Vertex) -> &BTreeSet<Vertex> {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v as usize].len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.n as Vertex
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Pair> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, nb)| {
            nb.range(u as Vertex + 1..)
                .map(move |&v| Pair::of(u as Vertex, v))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn edge_set(&self) -> BTreeSet<Pair> {
        self.edges().collect()
    }

    pub fn is_subgraph_of(&self, other: &FiniteGraph) -> bool {
        self.n == other.n && self.edges().all(|e| other.has_edge(e))
    }

    /// Image under the vertex map `perm[v]`.
    pub fn permuted(&self, perm: &[Vertex]) -> FiniteGraph {
        let mut g = FiniteGraph::empty(self.n);
        for e in self.edges() {
            g.insert(Pair::of(perm[e.lo() as usize], perm[e.hi() as usize]));
        }
        g
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).max().unwrap_or(0)
    }
}

/// Status of a single allowed pair within a pregraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairStatus {
    Edge,
    Nonedge,
    Undetermined,
    Disallowed,
}

/// An `H`-pregraph: edges and nonedges are disjoint subsets of the allowed pairs.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FinitePregraph {
    allowed: FiniteGraph,
    edges: BTreeSet<Pair>,
    nonedges: BTreeSet<Pair>,
}

impl FinitePregraph {
    pub fn new(allowed: FiniteGraph) -> Self {
        Self {
            allowed,
            edges: BTreeSet::new(),
            nonedges: BTreeSet::new(),
        }
    }

    pub fn with(
        allowed: FiniteGraph,
        edges: impl IntoIterator<Item = Pair>,
        nonedges: impl IntoIterator<Item = Pair>,
    ) -> Result<Self> {
        let mut pg = Self::new(allowed);
        for e in edges {
            pg.determine(e, Answer::Edge)?;
        }
        for e in nonedges {
            pg.determine(e, Answer::Nonedge)?;
        }
        Ok(pg)
    }

    pub fn allowed(&self) -> &FiniteGraph {
        &self.allowed
    }

    pub fn n(&self) -> usize {
        self.allowed.n()
    }

    pub fn edges(&self) -> &BTreeSet<Pair> {
        &self.edges
    }

    pub fn nonedges(&self) -> &BTreeSet<Pair> {
        &self.nonedges
    }

    pub fn status(&self, p: Pair) -> PairStatus {
        if !self.allowed.has_edge(p) {
            PairStatus::Disallowed
        } else if self.edges.contains(&p) {
            PairStatus::Edge
        } else if self.nonedges.contains(&p) {
            PairStatus::Nonedge
        } else {
            PairStatus::Undetermined
        }
    }

    pub fn is_determined(&self, p: Pair) -> bool {
        self.edges.contains(&p) || self.nonedges.contains(&p)
    }

    pub fn determine(&mut self, p: Pair, answer: Answer) -> Result<()> {
        match self.status(p) {
            PairStatus::Disallowed => Err(Error::NotAllowed(p)),
            PairStatus::Edge | PairStatus::Nonedge => Err(Error::AlreadyDetermined(p)),
            PairStatus::Undetermined => {
                match answer {
                    Answer::Edge => self.edges.insert(p),
                    Answer::Nonedge => self.nonedges.insert(p),
                };
                Ok(())
            }
        }
    }

    pub fn determined_count(&self) -> usize {
        self.edges.len() + self.nonedges.len()
    }

    pub fn allowed_count(&self) -> usize {
        self.allowed.edge_count()
    }

    pub fn undetermined(&self) -> impl Iterator<Item = Pair> + '_ {
        self.allowed.edges().filter(|p| !self.is_determined(*p))
    }

    pub fn undetermined_count(&self) -> usize {
        self.allowed_count() - self.determined_count()
    }

    pub fn is_complete(&self) -> bool {
        self.undetermined_count() == 0
    }

    /// The pessimistic graph `<V, E>`.
    pub fn gmin(&self) -> FiniteGraph {
        FiniteGraph::from_edges(self.n(), self.edges.iter().copied())
            .expect("pregraph edges lie inside the allowed graph")
    }

    /// The optimistic graph `<V, E ∪ U>`.
    pub fn gmax(&self) -> FiniteGraph {
        let mut g = self.allowed.clone();
        for p in &self.nonedges {
            g.remove_edge(*p);
        }
        g
    }

    /// Image of `(E, N)` under a vertex map that fixes the allowed graph.
    pub fn permuted(&self, perm: &[Vertex]) -> Result<FinitePregraph> {
        let map = |p: &Pair| Pair::of(perm[p.lo() as usize], perm[p.hi() as usize]);
        FinitePregraph::with(
            self.allowed.clone(),
            self.edges.iter().map(map),
            self.nonedges.iter().map(map),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_normalizes() {
        assert_eq!(Pair::of(3, 1), Pair::of(1, 3));
        assert_eq!(Pair::of(3, 1).lo(), 1);
        assert!(Pair::new(2, 2).is_err());
        let p = Pair::of(4, 9);
        assert_eq!(Pair::of(p.lo(), p.hi()), p);
    }

    #[test]
    fn gmin_gmax_on_empty_k3() {
        let pg = FinitePregraph::new(FiniteGraph::complete(3));
        assert_eq!(pg.gmin().edge_count(), 0);
        assert_eq!(pg.gmax().edge_count(), 3);
    }

    #[test]
    fn gmin_equals_gmax_when_fully_determined() {
        let k3 = FiniteGraph::complete(3);
        let pg = FinitePregraph::with(k3, [Pair::of(0, 1), Pair::of(1, 2)], [Pair::of(0, 2)]).unwrap();
        assert_eq!(pg.gmin(), pg.gmax());
    }

    #[test]
    fn gmax_drops_only_nonedges() {
        let pg = FinitePregraph::with(FiniteGraph::complete(4), [Pair::of(0, 1)], [Pair::of(2, 3)]).unwrap();
        let mut expected = FiniteGraph::complete(4);
        expected.remove_edge(Pair::of(2, 3));
        assert_eq!(pg.gmax(), expected);
        assert!(pg.gmin().is_subgraph_of(&pg.gmax()));
    }

    #[test]
    fn determine_rejects_repeats_and_disallowed() {
        let mut pg = FinitePregraph::new(FiniteGraph::from_pairs(3, &[(0, 1)]).unwrap());
        assert_eq!(pg.determine(Pair::of(1, 2), Answer::Edge), Err(Error::NotAllowed(Pair::of(1, 2))));
        pg.determine(Pair::of(0, 1), Answer::Nonedge).unwrap();
        assert!(matches!(pg.determine(Pair::of(0, 1), Answer::Edge), Err(Error::AlreadyDetermined(_))));
    }
}
