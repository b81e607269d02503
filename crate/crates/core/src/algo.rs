//! Structural predicates on finite graphs.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::graph::{FiniteGraph, Pair, Vertex};

/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug, Default)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Grows the forest so that `x` is a valid element.
    pub fn ensure(&mut self, x: usize) {
        while self.parent.len() <= x {
            self.parent.push(self.parent.len());
            self.size.push(1);
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    pub fn set_size(&mut self, x: usize) -> usize {
        let r = self.find(x);
        self.size[r]
    }
}

pub fn has_cycle(g: &FiniteGraph) -> bool {
    let mut uf = UnionFind::new(g.n());
    g.edges().any(|e| !uf.union(e.lo() as usize, e.hi() as usize))
}

/// Connected components, each sorted, ordered by smallest member.
pub fn components(g: &FiniteGraph) -> Vec<Vec<Vertex>> {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for s in g.vertices() {
        if seen[s as usize] {
            continue;
        }
        seen[s as usize] = true;
        let mut comp = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in g.neighbors(x) {
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    comp.push(y);
                    queue.push_back(y);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// BFS from `v` that stops as soon as `m` vertices are reached.
pub fn component_size_at_least(g: &FiniteGraph, v: Vertex, m: usize) -> bool {
    if m <= 1 {
        return true;
    }
    let mut seen = BTreeSet::from([v]);
    let mut queue = VecDeque::from([v]);
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbors(x) {
            if seen.insert(y) {
                if seen.len() >= m {
                    return true;
                }
                queue.push_back(y);
            }
        }
    }
    false
}

pub fn is_connected(g: &FiniteGraph) -> bool {
    g.n() == 0 || component_size_at_least(g, 0, g.n())
}

/// Bridges via iterative low-link DFS.
pub fn bridges(g: &FiniteGraph) -> Vec<Pair> {
    let n = g.n();
    let mut order = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut out = Vec::new();
    let mut counter = 0;
    let adj: Vec<Vec<Vertex>> = g.vertices().map(|v| g.neighbors(v).iter().copied().collect()).collect();
    for root in 0..n {
        if order[root] != usize::MAX {
            continue;
        }
        // (vertex, parent, next neighbor index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        order[root] = counter;
        low[root] = counter;
        counter += 1;
        while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
            if *idx < adj[v].len() {
                let w = adj[v][*idx] as usize;
                *idx += 1;
                if w == parent {
                    continue;
                }
                if order[w] == usize::MAX {
                    order[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push((w, v, 0));
                } else {
                    low[v] = low[v].min(order[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > order[parent] {
                        out.push(Pair::of(parent as Vertex, v as Vertex));
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// True iff no component contains a bridge.
pub fn all_components_two_edge_connected(g: &FiniteGraph) -> bool {
    bridges(g).is_empty()
}

pub fn is_bipartite(g: &FiniteGraph) -> bool {
    let mut color = vec![u8::MAX; g.n()];
    for s in g.vertices() {
        if color[s as usize] != u8::MAX {
            continue;
        }
        color[s as usize] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in g.neighbors(x) {
                if color[y as usize] == u8::MAX {
                    color[y as usize] = 1 - color[x as usize];
                    queue.push_back(y);
                } else if color[y as usize] == color[x as usize] {
                    return false;
                }
            }
        }
    }
    true
}

/// Whether `g` contains a clique on `k` vertices.
pub fn has_clique(g: &FiniteGraph, k: usize) -> bool {
    fn extend(g: &FiniteGraph, chosen: &mut Vec<Vertex>, cands: Vec<Vertex>, k: usize) -> bool {
        if chosen.len() == k {
            return true;
        }
        if chosen.len() + cands.len() < k {
            return false;
        }
        for (i, &v) in cands.iter().enumerate() {
            let next: Vec<Vertex> = cands[i + 1..]
                .iter()
                .copied()
                .filter(|&w| g.has_edge(Pair::of(v, w)))
                .collect();
            chosen.push(v);
            if extend(g, chosen, next, k) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    if k == 0 {
        return true;
    }
    extend(g, &mut Vec::new(), g.vertices().collect(), k)
}

/// Largest clique contained in `g` (exhaustive; intended for small graphs).
pub fn max_clique_size(g: &FiniteGraph) -> usize {
    let mut k = 0;
    while has_clique(g, k + 1) {
        k += 1;
    }
    k
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ScorpionWitness {
    pub sting: Vertex,
    pub tail: Vertex,
    pub body: Vertex,
}

/// Checks the three scorpion clauses for a fixed ordered triple.
pub fn is_scorpion_triple(g: &FiniteGraph, s: Vertex, t: Vertex, b: Vertex) -> bool {
    if s == t || t == b || s == b {
        return false;
    }
    let n = g.n();
    let ns = g.neighbors(s);
    let nt = g.neighbors(t);
    let nb = g.neighbors(b);
    ns.len() == 1
        && ns.contains(&t)
        && nt.len() == 2
        && nt.contains(&s)
        && nt.contains(&b)
        && nb.len() + 2 == n
        && !nb.contains(&s)
}

/// Finds a sting/tail/body triple. Below five vertices the clauses are applied
/// literally, which may make the property vacuous.
pub fn recognize_scorpion(g: &FiniteGraph) -> Option<ScorpionWitness> {
    for s in g.vertices() {
        if g.degree(s) != 1 {
            continue;
        }
        let t = *g.neighbors(s).iter().next()?;
        if g.degree(t) != 2 {
            continue;
        }
        let b = *g.neighbors(t).iter().find(|&&x| x != s)?;
        if is_scorpion_triple(g, s, t, b) {
            return Some(ScorpionWitness { sting: s, tail: t, body: b });
        }
    }
    None
}

/// A small scorpion: sting 0, tail 1, body 2, row 3..=7 with two extra row edges.
pub fn example_scorpion() -> FiniteGraph {
    FiniteGraph::from_pairs(
        8,
        &[(0, 1), (1, 2), (2, 3), (2, 4), (2, 5), (2, 6), (2, 7), (3, 4), (5, 6)],
    )
    .expect("valid pairs")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_graphs(n: usize) -> impl Iterator<Item = FiniteGraph> {
        let pairs: Vec<Pair> = FiniteGraph::complete(n).edges().collect();
        (0u64..1 << pairs.len()).map(move |mask| {
            FiniteGraph::from_edges(
                n,
                pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| *p),
            )
            .unwrap()
        })
    }

    fn dfs_has_cycle(g: &FiniteGraph) -> bool {
        // back-edge search, independent of union-find
        let mut state = vec![0u8; g.n()];
        fn go(g: &FiniteGraph, v: Vertex, parent: Option<Vertex>, state: &mut [u8]) -> bool {
            state[v as usize] = 1;
            for &w in g.neighbors(v) {
                if Some(w) == parent {
                    continue;
                }
                if state[w as usize] == 1 || (state[w as usize] == 0 && go(g, w, Some(v), state)) {
                    return true;
                }
            }
            state[v as usize] = 2;
            false
        }
        (0..g.n() as Vertex).any(|v| state[v as usize] == 0 && go(g, v, None, &mut state))
    }

    fn brute_two_edge_connected(g: &FiniteGraph) -> bool {
        let comps = components(g);
        g.edges().all(|e| {
            let mut h = g.clone();
            h.remove_edge(e);
            let before = comps.len();
            components(&h).len() == before
        })
    }

    #[test]
    fn cycle_basics() {
        assert!(has_cycle(&FiniteGraph::complete(3)));
        assert!(!has_cycle(&FiniteGraph::from_pairs(4, &[(0, 1), (1, 2), (1, 3)]).unwrap()));
        let c4_plus = FiniteGraph::from_pairs(5, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(has_cycle(&c4_plus));
        assert!(dfs_has_cycle(&c4_plus));
    }

    #[test]
    fn cycle_agrees_with_dfs_up_to_five() {
        for n in 0..=5 {
            for g in all_graphs(n) {
                assert_eq!(has_cycle(&g), dfs_has_cycle(&g), "{g:?}");
            }
        }
    }

    #[test]
    fn components_examples() {
        assert_eq!(components(&FiniteGraph::empty(4)).len(), 4);
        let path = FiniteGraph::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(components(&path), vec![vec![0, 1, 2]]);
        let triangles = FiniteGraph::from_pairs(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        for v in 0..6 {
            assert!(component_size_at_least(&triangles, v, 3));
            assert!(!component_size_at_least(&triangles, v, 4));
        }
    }

    #[test]
    fn two_edge_connected_examples() {
        assert!(all_components_two_edge_connected(&FiniteGraph::complete(3)));
        let path = FiniteGraph::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(!all_components_two_edge_connected(&path));
        assert_eq!(bridges(&path), vec![Pair::of(0, 1), Pair::of(1, 2)]);
        let two_c4 = FiniteGraph::from_pairs(8, &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4)]).unwrap();
        assert!(all_components_two_edge_connected(&two_c4));
        assert!(!all_components_two_edge_connected(&FiniteGraph::from_pairs(2, &[(0, 1)]).unwrap()));
        assert!(all_components_two_edge_connected(&FiniteGraph::empty(3)));
    }

    #[test]
    fn two_edge_connected_matches_brute_force_up_to_six() {
        for n in 0..=6 {
            for g in all_graphs(n) {
                assert_eq!(all_components_two_edge_connected(&g), brute_two_edge_connected(&g), "{g:?}");
            }
        }
    }

    fn brute_scorpion(g: &FiniteGraph) -> bool {
        let n = g.n() as Vertex;
        (0..n).any(|s| (0..n).any(|t| (0..n).any(|b| is_scorpion_triple(g, s, t, b))))
    }

    #[test]
    fn scorpion_examples() {
        let g = example_scorpion();
        assert_eq!(recognize_scorpion(&g), Some(ScorpionWitness { sting: 0, tail: 1, body: 2 }));
        assert_eq!(recognize_scorpion(&FiniteGraph::complete(5)), None);
        let mut broken = g.clone();
        broken.add_edge(Pair::of(0, 2)).unwrap();
        assert_eq!(recognize_scorpion(&broken), None);
        assert!(!brute_scorpion(&broken));
    }

    #[test]
    fn scorpion_matches_triple_scan_up_to_six() {
        for n in 0..=6 {
            for g in all_graphs(n) {
                assert_eq!(recognize_scorpion(&g).is_some(), brute_scorpion(&g), "{g:?}");
            }
        }
    }

    #[test]
    fn cliques_and_bipartite() {
        assert!(has_clique(&FiniteGraph::complete(4), 4));
        assert!(!has_clique(&FiniteGraph::from_pairs(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap(), 3));
        assert!(is_bipartite(&FiniteGraph::from_pairs(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()));
        assert!(!is_bipartite(&FiniteGraph::complete(3)));
        assert_eq!(max_clique_size(&FiniteGraph::complete(5)), 5);
    }
}
