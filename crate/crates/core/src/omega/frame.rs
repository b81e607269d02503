//! Partitions of ω into a finite head and finitely many infinite cells.
//!
//! Periodic frames (complete and Turán boards) put `0..t` in the head and
//! split the rest by residue mod `l`. Tree frames (Cantor board) keep an
//! ancestor-closed head; every other vertex lies under exactly one root (a
//! non-head child of a head vertex) and cells split each root's subtree by
//! residue mod `l`. Symbolic sets are unions of cells plus finite edits.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::graph::Vertex;
use crate::wfunc::cantor;

static GENERATION: AtomicU64 = AtomicU64::new(1);

fn next_gen() -> u64 {
    GENERATION.fetch_add(1, Ordering::Relaxed)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Shape {
    Periodic {
        t: u64,
    },
    Tree {
        head: BTreeSet<Vertex>,
        sorted: Vec<Vertex>,
        /// Roots in depth-first order, so every head subtree owns a
        /// contiguous range of them.
        roots: Vec<Vertex>,
        /// For each head vertex, its range of root positions.
        spans: std::collections::BTreeMap<Vertex, (usize, usize)>,
    },
}

#[derive(Clone, Debug)]
pub struct Frame {
    gen: u64,
    l: u64,
    shape: Shape,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Loc {
    Head,
    Cell(usize),
}

fn round_up(x: u64, m: u64) -> u64 {
    x.div_ceil(m) * m
}

impl Frame {
    /// Head `0..t` with `t` a multiple of `l` covering `support` plus margin.
    pub fn periodic(l: u64, support: impl IntoIterator<Item = Vertex>) -> Frame {
        let l = l.max(1);
        let top = support.into_iter().map(|v| v as u64 + 1).max().unwrap_or(0);
        Frame {
            gen: next_gen(),
            l,
            shape: Shape::Periodic {
                t: round_up(top, l) + 2 * l,
            },
        }
    }

    /// Head = the first three levels plus ancestors of `support`.
    pub fn tree(l: u64, support: impl IntoIterator<Item = Vertex>) -> Frame {
        let mut head: BTreeSet<Vertex> = (0..7).collect();
        for v in support {
            add_with_ancestors(&mut head, v);
        }
        Frame::tree_from_head(l.max(1), head)
    }

    fn tree_from_head(l: u64, head: BTreeSet<Vertex>) -> Frame {
        let mut roots = Vec::new();
        let mut spans = std::collections::BTreeMap::new();
        // iterative DFS from 0 assigning root positions
        fn visit(
            v: Vertex,
            head: &BTreeSet<Vertex>,
            roots: &mut Vec<Vertex>,
            spans: &mut std::collections::BTreeMap<Vertex, (usize, usize)>,
        ) {
            let start = roots.len();
            for c in [2 * v as u64 + 1, 2 * v as u64 + 2] {
                if c > Vertex::MAX as u64 {
                    continue;
                }
                let c = c as Vertex;
                if head.contains(&c) {
                    visit(c, head, roots, spans);
                } else {
                    roots.push(c);
                }
            }
            spans.insert(v, (start, roots.len()));
        }
        visit(0, &head, &mut roots, &mut spans);
        Frame {
            gen: next_gen(),
            l,
            shape: Shape::Tree {
                sorted: head.iter().copied().collect(),
                head,
                roots,
                spans,
            },
        }
    }

    pub fn generation(&self) -> u64 {
        self.gen
    }

    pub fn modulus(&self) -> u64 {
        self.l
    }

    pub fn is_tree(&self) -> bool {
        matches!(self.shape, Shape::Tree { .. })
    }

    pub fn num_cells(&self) -> usize {
        match &self.shape {
            Shape::Periodic { .. } => self.l as usize,
            Shape::Tree { roots, .. } => roots.len() * self.l as usize,
        }
    }

    pub fn head_len(&self) -> usize {
        match &self.shape {
            Shape::Periodic { t } => *t as usize,
            Shape::Tree { head, .. } => head.len(),
        }
    }

    pub fn is_head(&self, v: Vertex) -> bool {
        match &self.shape {
            Shape::Periodic { t } => (v as u64) < *t,
            Shape::Tree { head, .. } => head.contains(&v),
        }
    }

    /// Position of a head vertex in ascending head order.
    pub fn head_index(&self, v: Vertex) -> Option<usize> {
        match &self.shape {
            Shape::Periodic { t } => ((v as u64) < *t).then_some(v as usize),
            Shape::Tree { sorted, .. } => sorted.binary_search(&v).ok(),
        }
    }

    pub fn head_vertex(&self, i: usize) -> Vertex {
        match &self.shape {
            Shape::Periodic { .. } => i as Vertex,
            Shape::Tree { sorted, .. } => sorted[i],
        }
    }

    pub fn head_vertices(&self) -> Vec<Vertex> {
        match &self.shape {
            Shape::Periodic { t } => (0..*t as Vertex).collect(),
            Shape::Tree { head, .. } => head.iter().copied().collect(),
        }
    }

    /// Root of the cell subtree containing a non-head vertex.
    fn tree_root(head: &BTreeSet<Vertex>, v: Vertex) -> Vertex {
        let mut x = v;
        loop {
            let parent = (x - 1) / 2;
            if head.contains(&parent) {
                return x;
            }
            x = parent;
        }
    }

    pub fn locate(&self, v: Vertex) -> Loc {
        match &self.shape {
            Shape::Periodic { t } => {
                if (v as u64) < *t {
                    Loc::Head
                } else {
                    Loc::Cell((v as u64 % self.l) as usize)
                }
            }
            Shape::Tree { head, roots, spans, .. } => {
                if head.contains(&v) {
                    return Loc::Head;
                }
                let r = Self::tree_root(head, v);
                let parent = (r - 1) / 2;
                let (lo, hi) = spans[&parent];
                let pos = (lo..hi).find(|&i| roots[i] == r).expect("root under its parent span");
                Loc::Cell(pos * self.l as usize + (v as u64 % self.l) as usize)
            }
        }
    }

    pub fn cell_residue(&self, c: usize) -> u64 {
        c as u64 % self.l
    }

    pub fn cell_root(&self, c: usize) -> Option<Vertex> {
        match &self.shape {
            Shape::Periodic { .. } => None,
            Shape::Tree { roots, .. } => Some(roots[c / self.l as usize]),
        }
    }

    /// Cells lying inside the strict subtree of head vertex `v`.
    pub fn cells_under_head(&self, v: Vertex) -> std::ops::Range<usize> {
        match &self.shape {
            Shape::Periodic { .. } => 0..0,
            Shape::Tree { spans, .. } => {
                let (lo, hi) = spans[&v];
                lo * self.l as usize..hi * self.l as usize
            }
        }
    }

    /// Head vertices in the strict subtree of head vertex `v`.
    pub fn head_under(&self, v: Vertex) -> Vec<Vertex> {
        let Shape::Tree { head, .. } = &self.shape else {
            return Vec::new();
        };
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            for c in [2 * x as u64 + 1, 2 * x as u64 + 2] {
                if c <= Vertex::MAX as u64 && head.contains(&(c as Vertex)) {
                    out.push(c as Vertex);
                    stack.push(c as Vertex);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Members of cell `c` used to test that a predicate is uniform on it.
    pub fn cell_reps(&self, c: usize) -> Vec<Vertex> {
        let rho = self.cell_residue(c);
        match &self.shape {
            Shape::Periodic { t } => {
                let v0 = t + (rho + self.l - t % self.l) % self.l;
                [0, 3, 17].iter().map(|k| (v0 + k * self.l) as Vertex).collect()
            }
            Shape::Tree { .. } => {
                let r = self.cell_root(c).expect("tree cell") as u64;
                let level = |j: u32| ((r + 1) << j) - 1..=((r + 1) << j) + (1u64 << j) - 2;
                let mut reps = Vec::new();
                // shallowest member
                for j in 0..64 {
                    if let Some(v) = level(j).find(|v| v % self.l == rho) {
                        reps.push(v);
                        break;
                    }
                }
                let j1 = 64 - (self.l.max(1) - 1).leading_zeros();
                if let Some(v) = level(j1 + 1).rev().find(|v| v % self.l == rho) {
                    reps.push(v);
                }
                let deep = level(j1 + 3);
                let mid = (deep.start() + deep.end()) / 2;
                if let Some(v) = (mid..=*deep.end()).find(|v| v % self.l == rho) {
                    reps.push(v);
                }
                reps.into_iter().filter(|&v| v <= Vertex::MAX as u64).map(|v| v as Vertex).collect()
            }
        }
    }

    /// A finer frame covering `support`, with modulus a multiple of `l`.
    /// Returns `None` when `self` already suffices.
    pub fn refined(&self, l: u64, support: &[Vertex]) -> Option<Frame> {
        let l2 = lcm(self.l, l.max(1));
        match &self.shape {
            Shape::Periodic { t } => {
                let top = support.iter().map(|&v| v as u64 + 1).max().unwrap_or(0);
                let need = if top > *t { round_up(top, l2) + 2 * l2 } else { 0 };
                let t2 = round_up((*t).max(need), l2);
                if t2 == *t && l2 == self.l {
                    return None;
                }
                Some(Frame {
                    gen: next_gen(),
                    l: l2,
                    shape: Shape::Periodic { t: t2 },
                })
            }
            Shape::Tree { head, .. } => {
                let mut h2 = head.clone();
                for &v in support {
                    add_with_ancestors(&mut h2, v);
                }
                if h2.len() == head.len() && l2 == self.l {
                    return None;
                }
                Some(Frame::tree_from_head(l2, h2))
            }
        }
    }

    /// A finer frame splitting the given cells further (used when sampled
    /// members of a cell disagree).
    pub fn split(&self, cells: &[usize], round: usize) -> Frame {
        match &self.shape {
            Shape::Periodic { t } => {
                let l2 = if round % 2 == 1 { self.l * 2 } else { self.l };
                Frame {
                    gen: next_gen(),
                    l: l2,
                    shape: Shape::Periodic {
                        t: round_up(t + 4 * self.l, l2),
                    },
                }
            }
            Shape::Tree { head, .. } => {
                let mut h2 = head.clone();
                for &c in cells {
                    let r = self.cell_root(c).expect("tree cell");
                    h2.insert(r);
                    if round > 0 {
                        for x in [2 * r as u64 + 1, 2 * r as u64 + 2] {
                            if x <= Vertex::MAX as u64 {
                                h2.insert(x as Vertex);
                            }
                        }
                    }
                }
                Frame::tree_from_head(self.l, h2)
            }
        }
    }
}

fn add_with_ancestors(head: &mut BTreeSet<Vertex>, v: Vertex) {
    let mut x = v;
    while head.insert(x) && x > 0 {
        x = (x - 1) / 2;
    }
}

/// Depth of a tree vertex, re-exported for callers that mix both shapes.
pub fn depth(v: Vertex) -> u32 {
    cantor::depth(v)
}
