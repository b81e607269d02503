//! Symbolic vertex sets: a union of frame cells with finite edits.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::frame::{Frame, Loc};
use crate::error::{Error, Result};
use crate::graph::Vertex;

/// Ids scanned before an ascending search on a tree frame gives up.
const SCAN_CAP: u64 = 1 << 24;

/// Fixed-length bitset.
#[derive(Clone, PartialEq, Eq)]
struct Bits {
    len: usize,
    words: Vec<u64>,
}

impl Bits {
    fn new(len: usize) -> Bits {
        Bits {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn set(&mut self, i: usize, on: bool) {
        if on {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    fn any(&self) -> bool {
        self.words.iter().any(|&w| w != 0)
    }

    fn any_in(&self, r: std::ops::Range<usize>) -> bool {
        r.into_iter().any(|i| self.get(i))
    }

    fn not(&self) -> Bits {
        let mut out = Bits {
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        if !self.len.is_multiple_of(64) {
            let last = out.words.len() - 1;
            out.words[last] &= (1u64 << (self.len % 64)) - 1;
        }
        out
    }

    fn zip(&self, other: &Bits, op: fn(u64, u64) -> u64) -> Bits {
        Bits {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| op(a, b)).collect(),
        }
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

#[derive(Clone)]
pub struct VSet {
    frame: Arc<Frame>,
    /// Members among head vertices, by head index.
    head: Bits,
    cells: Bits,
    /// Tail members whose cell is excluded.
    plus: BTreeSet<Vertex>,
    /// Tail non-members whose cell is included.
    minus: BTreeSet<Vertex>,
}

impl fmt::Debug for VSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head: Vec<Vertex> = self.head_members().collect();
        write!(
            f,
            "VSet{{head:{:?}, cells:{}/{}, +{:?}, -{:?}}}",
            head,
            self.cells.ones().count(),
            self.cells.len,
            self.plus,
            self.minus
        )
    }
}

impl VSet {
    pub fn empty(frame: &Arc<Frame>) -> VSet {
        VSet {
            frame: frame.clone(),
            head: Bits::new(frame.head_len()),
            cells: Bits::new(frame.num_cells()),
            plus: BTreeSet::new(),
            minus: BTreeSet::new(),
        }
    }

    /// Head members plus whole cells.
    pub fn from_parts(frame: &Arc<Frame>, head: impl IntoIterator<Item = Vertex>, cells: &[usize]) -> VSet {
        let mut s = VSet::finite(frame, head);
        for &c in cells {
            s.cells.set(c, true);
        }
        s
    }

    pub fn all(frame: &Arc<Frame>) -> VSet {
        VSet::empty(frame).complement()
    }

    pub fn finite(frame: &Arc<Frame>, vs: impl IntoIterator<Item = Vertex>) -> VSet {
        let mut s = VSet::empty(frame);
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn singleton(frame: &Arc<Frame>, v: Vertex) -> VSet {
        VSet::finite(frame, [v])
    }

    pub fn cofinite(frame: &Arc<Frame>, excluded: impl IntoIterator<Item = Vertex>) -> VSet {
        VSet::all(frame).without(excluded)
    }

    /// `{v : v ≡ r (mod k)}`; `k` must divide the frame modulus.
    pub fn residue(frame: &Arc<Frame>, k: u64, r: u64) -> VSet {
        assert!(frame.modulus().is_multiple_of(k), "modulus {k} not supported by the frame");
        let mut s = VSet::empty(frame);
        for i in 0..s.head.len {
            s.head.set(i, frame.head_vertex(i) as u64 % k == r);
        }
        for c in 0..s.cells.len {
            s.cells.set(c, frame.cell_residue(c) % k == r);
        }
        s
    }

    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    fn head_members(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.head.ones().map(|i| self.frame.head_vertex(i))
    }

    pub fn contains(&self, v: Vertex) -> bool {
        match self.frame.locate(v) {
            Loc::Head => self.head.get(self.frame.head_index(v).expect("head vertex")),
            Loc::Cell(c) => {
                if self.cells.get(c) {
                    !self.minus.contains(&v)
                } else {
                    self.plus.contains(&v)
                }
            }
        }
    }

    fn put(&mut self, v: Vertex, member: bool) {
        match self.frame.locate(v) {
            Loc::Head => self.head.set(self.frame.head_index(v).expect("head vertex"), member),
            Loc::Cell(c) => {
                let (inc, exc) = if self.cells.get(c) {
                    (&mut self.minus, member)
                } else {
                    (&mut self.plus, !member)
                };
                // `inc` holds the exceptions for this cell's default
                if exc {
                    inc.remove(&v);
                } else {
                    inc.insert(v);
                }
            }
        }
    }

    pub fn insert(&mut self, v: Vertex) {
        self.put(v, true);
    }

    pub fn remove(&mut self, v: Vertex) {
        self.put(v, false);
    }

    pub fn without(mut self, vs: impl IntoIterator<Item = Vertex>) -> VSet {
        for v in vs {
            self.remove(v);
        }
        self
    }

    pub fn with(mut self, vs: impl IntoIterator<Item = Vertex>) -> VSet {
        for v in vs {
            self.insert(v);
        }
        self
    }

    /// Every cell is infinite, so this is exact.
    pub fn is_infinite(&self) -> bool {
        self.cells.any()
    }

    pub fn is_empty(&self) -> bool {
        !self.is_infinite() && !self.head.any() && self.plus.is_empty()
    }

    /// Sorted members when finite.
    pub fn finite_elements(&self) -> Option<Vec<Vertex>> {
        if self.is_infinite() {
            return None;
        }
        let mut out: Vec<Vertex> = self.head_members().chain(self.plus.iter().copied()).collect();
        out.sort_unstable();
        Some(out)
    }

    /// `min(|self|, cap)`.
    pub fn len_capped(&self, cap: usize) -> Result<usize> {
        Ok(self.first_from(0, cap)?.len())
    }

    pub fn min(&self) -> Result<Option<Vertex>> {
        Ok(self.first_from(0, 1)?.first().copied())
    }

    /// Up to `n` smallest members that are `>= lo`.
    pub fn first_from(&self, lo: Vertex, n: usize) -> Result<Vec<Vertex>> {
        if n == 0 {
            return Ok(Vec::new());
        }
        if let Some(all) = self.finite_elements() {
            return Ok(all.into_iter().filter(|&v| v >= lo).take(n).collect());
        }
        let mut out = Vec::new();
        let mut v = lo as u64;
        if !self.frame.is_tree() {
            out.extend(self.head_members().filter(|&h| h >= lo).take(n));
            v = v.max(self.frame.head_len() as u64);
        }
        let start = v;
        while out.len() < n {
            if v > Vertex::MAX as u64 || v - start > SCAN_CAP {
                return Err(Error::UnknownExhausted(format!(
                    "ascending scan from {lo} found only {} members",
                    out.len()
                )));
            }
            if self.contains(v as Vertex) {
                out.push(v as Vertex);
            }
            v += 1;
        }
        Ok(out)
    }

    /// Head members, finite edits and a sampled member of each included
    /// cell: one vertex of every uniform class of the set.
    pub fn samples(&self) -> Vec<Vertex> {
        self.samples_per_cell(1)
    }

    /// Like [`VSet::samples`] with up to `k` members per included cell.
    pub fn samples_per_cell(&self, k: usize) -> Vec<Vertex> {
        let mut out: BTreeSet<Vertex> = self.head_members().chain(self.plus.iter().copied()).collect();
        for c in self.cells.ones() {
            out.extend(self.frame.cell_reps(c).into_iter().filter(|r| !self.minus.contains(r)).take(k));
        }
        out.into_iter().collect()
    }

    /// Whether any included cell lies inside the strict subtree of `v`
    /// (tree frames only).
    pub fn infinite_under(&self, v: Vertex) -> bool {
        match self.frame.locate(v) {
            Loc::Head => self.cells.any_in(self.frame.cells_under_head(v)),
            Loc::Cell(c) => {
                let l = self.frame.modulus() as usize;
                let base = c / l * l;
                self.cells.any_in(base..base + l)
            }
        }
    }

    /// Head members and finite edits (the part not covered by cells).
    pub fn explicit_members(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.head_members().chain(self.plus.iter().copied())
    }

    /// Finite edits outside the head.
    pub fn exceptions(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.plus.iter().chain(self.minus.iter()).copied()
    }

    pub fn to_frame(&self, frame: &Arc<Frame>) -> VSet {
        if self.frame.generation() == frame.generation() {
            return self.clone();
        }
        let mut out = VSet::empty(frame);
        for i in 0..out.head.len {
            out.head.set(i, self.contains(frame.head_vertex(i)));
        }
        for c in 0..out.cells.len {
            let rep = frame.cell_reps(c)[0];
            let inc = match self.frame.locate(rep) {
                Loc::Cell(oc) => self.cells.get(oc),
                Loc::Head => self.contains(rep),
            };
            out.cells.set(c, inc);
        }
        for x in self.exceptions() {
            if let Loc::Cell(c) = frame.locate(x) {
                let member = self.contains(x);
                if member && !out.cells.get(c) {
                    out.plus.insert(x);
                } else if !member && out.cells.get(c) {
                    out.minus.insert(x);
                }
            }
        }
        out
    }

    fn aligned(&self, other: &VSet) -> (VSet, VSet) {
        let (a, b) = (self.frame.generation(), other.frame.generation());
        if a == b {
            (self.clone(), other.clone())
        } else if a > b {
            (self.clone(), other.to_frame(&self.frame))
        } else {
            (self.to_frame(&other.frame), other.clone())
        }
    }

    /// Pointwise combination; `op(false, false)` must be false.
    fn combine(&self, other: &VSet, op: fn(bool, bool) -> bool, wop: fn(u64, u64) -> u64) -> VSet {
        let (a, b) = self.aligned(other);
        let mut out = VSet {
            frame: a.frame.clone(),
            head: a.head.zip(&b.head, wop),
            cells: a.cells.zip(&b.cells, wop),
            plus: BTreeSet::new(),
            minus: BTreeSet::new(),
        };
        for x in a.exceptions().chain(b.exceptions()) {
            if let Loc::Cell(c) = out.frame.locate(x) {
                let member = op(a.contains(x), b.contains(x));
                if member && !out.cells.get(c) {
                    out.plus.insert(x);
                } else if !member && out.cells.get(c) {
                    out.minus.insert(x);
                }
            }
        }
        out
    }

    pub fn union(&self, other: &VSet) -> VSet {
        self.combine(other, |x, y| x || y, |x, y| x | y)
    }

    pub fn intersect(&self, other: &VSet) -> VSet {
        self.combine(other, |x, y| x && y, |x, y| x & y)
    }

    pub fn minus(&self, other: &VSet) -> VSet {
        self.combine(other, |x, y| x && !y, |x, y| x & !y)
    }

    pub fn complement(&self) -> VSet {
        VSet {
            frame: self.frame.clone(),
            head: self.head.not(),
            cells: self.cells.not(),
            plus: self.minus.clone(),
            minus: self.plus.clone(),
        }
    }

    pub fn is_subset(&self, other: &VSet) -> bool {
        self.minus(other).is_empty()
    }

    pub fn same_members(&self, other: &VSet) -> bool {
        self.is_subset(other) && other.is_subset(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pf(l: u64, s: &[Vertex]) -> Arc<Frame> {
        Arc::new(Frame::periodic(l, s.iter().copied()))
    }

    #[test]
    fn basic_algebra() {
        let f = pf(2, &[5]);
        let evens = VSet::residue(&f, 2, 0);
        assert!(evens.contains(100) && !evens.contains(101) && evens.contains(4));
        let s = evens.without([100]).with([101]);
        assert!(!s.contains(100) && s.contains(101));
        let c = s.complement();
        assert!(c.contains(100) && !c.contains(101) && c.contains(7));
        assert!(s.union(&c).same_members(&VSet::all(&f)));
        assert!(s.intersect(&c).is_empty());
        assert_eq!(s.first_from(95, 4).unwrap(), vec![96, 98, 101, 102]);
        let fin = VSet::finite(&f, [3, 70]);
        assert_eq!(fin.finite_elements(), Some(vec![3, 70]));
        assert_eq!(fin.len_capped(5).unwrap(), 2);
    }

    #[test]
    fn reexpression_preserves_membership() {
        let f = pf(2, &[3]);
        let s = VSet::residue(&f, 2, 1).without([41]).with([40]);
        let g = Arc::new(f.refined(3, &[50]).unwrap());
        let t = s.to_frame(&g);
        for v in 0..300 {
            assert_eq!(s.contains(v), t.contains(v), "vertex {v}");
        }
        // mixed-frame operations align on the newer frame
        let u = VSet::residue(&g, 3, 0).intersect(&s);
        for v in 0..300 {
            assert_eq!(u.contains(v), v % 3 == 0 && s.contains(v));
        }
    }

    #[test]
    fn tree_frames() {
        let f = Arc::new(Frame::tree(2, [9u32]));
        let s = VSet::residue(&f, 2, 1).without([101]);
        for v in 0..500 {
            assert_eq!(s.contains(v), v % 2 == 1 && v != 101);
        }
        assert_eq!(s.first_from(99, 3).unwrap(), vec![99, 103, 105]);
        assert!(s.infinite_under(0) && s.infinite_under(200));
        let g = Arc::new(f.split(&[0, 1], 0));
        let t = s.to_frame(&g);
        for v in 0..500 {
            assert_eq!(s.contains(v), t.contains(v));
        }
        let fin = VSet::finite(&f, [1000]);
        assert!(!fin.infinite_under(0));
    }
}
