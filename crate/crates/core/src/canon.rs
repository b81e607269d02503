//! Exact canonical forms for small pair-colored vertex sets.
//!
//! A pregraph is viewed as a complete graph whose pairs carry one of four
//! colors (disallowed, undetermined, edge, nonedge). Canonical labeling is
//! partition refinement plus individualization; the key is the least color
//! string over all leaves of the search tree.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{FiniteGraph, FinitePregraph, Pair, Vertex};

pub const DEFAULT_CANON_BOUND: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

const DISALLOWED: u8 = 0;
const UNDETERMINED: u8 = 1;
const EDGE: u8 = 2;
const NONEDGE: u8 = 3;

pub fn pregraph_colors(pg: &FinitePregraph) -> Vec<Vec<u8>> {
    let n = pg.n();
    let mut m = vec![vec![DISALLOWED; n]; n];
    for p in pg.allowed().edges() {
        let c = if pg.edges().contains(&p) {
            EDGE
        } else if pg.nonedges().contains(&p) {
            NONEDGE
        } else {
            UNDETERMINED
        };
        m[p.lo() as usize][p.hi() as usize] = c;
        m[p.hi() as usize][p.lo() as usize] = c;
    }
    m
}

pub fn canonical_key(pg: &FinitePregraph) -> Result<CanonicalKey> {
    canonical_key_bounded(pg, DEFAULT_CANON_BOUND)
}

pub fn canonical_key_bounded(pg: &FinitePregraph, bound: usize) -> Result<CanonicalKey> {
    if pg.n() > bound {
        return Err(Error::UnsupportedSize {
            what: "vertex count for canonical_key",
            got: pg.n(),
            bound,
        });
    }
    Ok(canonical_from_colors(&pregraph_colors(pg)).0)
}

/// Isomorphism-class key of a plain graph (edge = 1, nonedge = 0).
pub fn graph_key(g: &FiniteGraph) -> CanonicalKey {
    let n = g.n();
    let mut m = vec![vec![0u8; n]; n];
    for e in g.edges() {
        m[e.lo() as usize][e.hi() as usize] = 1;
        m[e.hi() as usize][e.lo() as usize] = 1;
    }
    canonical_from_colors(&m).0
}

/// Canonical key of a color matrix plus one labeling that realises it
/// (`labeling[i]` is the vertex placed at position `i`).
pub fn canonical_from_colors(colors: &[Vec<u8>]) -> (CanonicalKey, Vec<Vertex>) {
    let n = colors.len();
    let mut best: Option<(Vec<u8>, Vec<usize>)> = None;
    let start = refine(colors, vec![(0..n).collect()]);
    search(colors, start, &mut best);
    let (mut code, lab) = best.unwrap_or_default();
    code.insert(0, n as u8);
    (CanonicalKey(code), lab.into_iter().map(|v| v as Vertex).collect())
}

fn refine(colors: &[Vec<u8>], mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let n = colors.len();
    let mut cell_of = vec![0usize; n];
    loop {
        for (i, c) in cells.iter().enumerate() {
            for &v in c {
                cell_of[v] = i;
            }
        }
        let mut next = Vec::with_capacity(cells.len());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut sigs: Vec<(Vec<(u8, usize)>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut s: Vec<(u8, usize)> =
                        (0..n).filter(|&w| w != v).map(|w| (colors[v][w], cell_of[w])).collect();
                    s.sort_unstable();
                    (s, v)
                })
                .collect();
            sigs.sort();
            let mut group = vec![sigs[0].1];
            for w in sigs.windows(2) {
                if w[0].0 == w[1].0 {
                    group.push(w[1].1);
                } else {
                    next.push(std::mem::take(&mut group));
                    group.push(w[1].1);
                }
            }
            next.push(group);
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

fn search(colors: &[Vec<u8>], cells: Vec<Vec<usize>>, best: &mut Option<(Vec<u8>, Vec<usize>)>) {
    let target = cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() > 1)
        .min_by_key(|(i, c)| (c.len(), *i))
        .map(|(i, _)| i);
    let Some(ti) = target else {
        let lab: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let n = lab.len();
        let mut code = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
        for i in 0..n {
            for j in i + 1..n {
                code.push(colors[lab[i]][lab[j]]);
            }
        }
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            *best = Some((code, lab));
        }
        return;
    };
    for &v in &cells[ti] {
        let mut split = Vec::with_capacity(cells.len() + 1);
        for (i, c) in cells.iter().enumerate() {
            if i == ti {
                split.push(vec![v]);
                split.push(c.iter().copied().filter(|&w| w != v).collect());
            } else {
                split.push(c.clone());
            }
        }
        search(colors, refine(colors, split), best);
    }
}

/// All vertex permutations mapping `g` onto itself, by backtracking with
/// refinement-cell pruning.
pub fn automorphisms(g: &FiniteGraph) -> Vec<Vec<Vertex>> {
    let n = g.n();
    let mut m = vec![vec![0u8; n]; n];
    for e in g.edges() {
        m[e.lo() as usize][e.hi() as usize] = 1;
        m[e.hi() as usize][e.lo() as usize] = 1;
    }
    let cells = refine(&m, vec![(0..n).collect()]);
    let mut cell_of = vec![0usize; n];
    for (i, c) in cells.iter().enumerate() {
        for &v in c {
            cell_of[v] = i;
        }
    }
    let mut out = Vec::new();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        v: usize,
        m: &[Vec<u8>],
        cell_of: &[usize],
        perm: &mut [usize],
        used: &mut [bool],
        out: &mut Vec<Vec<Vertex>>,
    ) {
        let n = m.len();
        if v == n {
            out.push(perm.iter().map(|&x| x as Vertex).collect());
            return;
        }
        for img in 0..n {
            if used[img] || cell_of[img] != cell_of[v] {
                continue;
            }
            if (0..v).any(|u| m[u][v] != m[perm[u]][img]) {
                continue;
            }
            perm[v] = img;
            used[img] = true;
            go(v + 1, m, cell_of, perm, used, out);
            used[img] = false;
        }
        perm[v] = usize::MAX;
    }
    go(0, &m, &cell_of, &mut perm, &mut used, &mut out);
    out
}

/// Applies a vertex permutation to a pair.
pub fn map_pair(perm: &[Vertex], p: Pair) -> Pair {
    Pair::of(perm[p.lo() as usize], perm[p.hi() as usize])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k3_with(e: &[(Vertex, Vertex)], ne: &[(Vertex, Vertex)]) -> FinitePregraph {
        FinitePregraph::with(
            FiniteGraph::complete(3),
            e.iter().map(|&(a, b)| Pair::of(a, b)),
            ne.iter().map(|&(a, b)| Pair::of(a, b)),
        )
        .unwrap()
    }

    #[test]
    fn symmetric_states_share_keys() {
        let a = canonical_key(&k3_with(&[(0, 1)], &[])).unwrap();
        let b = canonical_key(&k3_with(&[(1, 2)], &[])).unwrap();
        assert_eq!(a, b);
        let c = canonical_key(&k3_with(&[], &[(0, 1)])).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn size_bound_is_reported() {
        let pg = FinitePregraph::new(FiniteGraph::complete(9));
        assert!(matches!(canonical_key(&pg), Err(Error::UnsupportedSize { .. })));
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphisms(&FiniteGraph::complete(4)).len(), 24);
        let path = FiniteGraph::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(automorphisms(&path).len(), 2);
        let c5 = FiniteGraph::from_pairs(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(automorphisms(&c5).len(), 10);
    }

    fn permutations(n: usize) -> Vec<Vec<Vertex>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, (n - 1) as Vertex);
                out.push(q);
            }
        }
        out
    }

    /// Exhaustive: key equality coincides with existence of an allowed-graph
    /// automorphism mapping one state onto the other.
    #[test]
    fn key_is_exact_on_small_allowed_graphs() {
        let allowed = FiniteGraph::from_pairs(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let pairs: Vec<Pair> = allowed.edges().collect();
        let mut states = Vec::new();
        for code in 0..3usize.pow(pairs.len() as u32) {
            let mut c = code;
            let (mut e, mut ne) = (vec![], vec![]);
            for p in &pairs {
                match c % 3 {
                    1 => e.push(*p),
                    2 => ne.push(*p),
                    _ => {}
                }
                c /= 3;
            }
            states.push(FinitePregraph::with(allowed.clone(), e, ne).unwrap());
        }
        let autos = automorphisms(&allowed);
        for a in states.iter().step_by(7) {
            for b in states.iter().step_by(5) {
                let related = autos.iter().any(|p| a.permuted(p).unwrap() == *b);
                assert_eq!(canonical_key(a).unwrap() == canonical_key(b).unwrap(), related);
            }
        }
    }

    #[test]
    fn invariant_under_every_automorphism_up_to_five() {
        for n in 3..=5 {
            let kn = FiniteGraph::complete(n);
            let pairs: Vec<Pair> = kn.edges().collect();
            let pg = FinitePregraph::with(kn.clone(), pairs[..2].to_vec(), pairs[2..3].to_vec()).unwrap();
            let key = canonical_key(&pg).unwrap();
            for p in permutations(n) {
                assert_eq!(canonical_key(&pg.permuted(&p).unwrap()).unwrap(), key);
            }
        }
    }

    proptest! {
        #[test]
        fn random_state_matches_its_permuted_image(n in 3usize..=6, code in any::<u64>(), seed in any::<u64>()) {
            let kn = FiniteGraph::complete(n);
            let pairs: Vec<Pair> = kn.edges().collect();
            let (mut e, mut ne) = (vec![], vec![]);
            let mut c = code;
            for p in &pairs {
                match c % 3 { 1 => e.push(*p), 2 => ne.push(*p), _ => {} }
                c /= 3;
            }
            let pg = FinitePregraph::with(kn, e, ne).unwrap();
            let perms = permutations(n);
            let perm = &perms[(seed % perms.len() as u64) as usize];
            prop_assert_eq!(canonical_key(&pg).unwrap(), canonical_key(&pg.permuted(perm).unwrap()).unwrap());
        }
    }
}
