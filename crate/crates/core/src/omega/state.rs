//! Symbolic probed sets on ω and the derived neighborhoods.
//!
//! Against a fixed hidden template the answers are determined by the probed
//! set alone: `E = P ∩ hidden ∩ allowed` and `N = P ∩ allowed ∖ hidden`, so
//! only `P` is stored.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use super::frame::{lcm, Frame};
use super::template::HiddenTemplate;
use super::vset::VSet;
use crate::engine::{FamilyReport, LargeFamily};
use crate::error::{Error, Result};
use crate::graph::{Answer, Pair, Vertex};
use crate::wfunc::{cantor, AllowedGraphKind, WFunction};

/// Frame refinements attempted before a classification gives up.
const SPLIT_ROUNDS: usize = 6;
/// Ids scanned below a vertex before a subtree search gives up.
const LEVEL_SCAN_CAP: u64 = 1 << 22;

#[derive(Clone, Debug)]
pub enum Region {
    /// Pairs inside the blocks `{kb, ..., kb + b - 1}`.
    Blocks(u32),
    /// Pairs with one endpoint in each set.
    Rect(VSet, VSet),
    /// Pairs inside a set.
    Square(VSet),
    /// Every pair but finitely many.
    AllExcept(BTreeSet<Pair>),
}

impl Region {
    pub fn contains(&self, p: Pair) -> bool {
        let (u, v) = (p.lo(), p.hi());
        match self {
            Region::Blocks(b) => u / b == v / b,
            Region::Rect(x, y) => (x.contains(u) && y.contains(v)) || (x.contains(v) && y.contains(u)),
            Region::Square(a) => a.contains(u) && a.contains(v),
            Region::AllExcept(f) => !f.contains(&p),
        }
    }

    pub fn neighborhood(&self, frame: &Arc<Frame>, v: Vertex) -> VSet {
        let out = match self {
            Region::Blocks(b) => {
                let lo = v / b * b;
                VSet::finite(frame, lo..lo.saturating_add(*b))
            }
            Region::Rect(x, y) => {
                let mut s = VSet::empty(frame);
                if x.contains(v) {
                    s = s.union(y);
                }
                if y.contains(v) {
                    s = s.union(x);
                }
                s
            }
            Region::Square(a) => {
                if a.contains(v) {
                    a.to_frame(frame)
                } else {
                    VSet::empty(frame)
                }
            }
            Region::AllExcept(f) => VSet::all(frame).without(f.iter().filter_map(|p| p.other(v))),
        };
        out.without([v])
    }

    fn support(&self) -> Vec<Vertex> {
        match self {
            Region::Blocks(_) => Vec::new(),
            Region::Rect(x, y) => x.exceptions().chain(y.exceptions()).collect(),
            Region::Square(a) => a.exceptions().collect(),
            Region::AllExcept(f) => f.iter().flat_map(|p| [p.lo(), p.hi()]).collect(),
        }
    }

    fn reframe(&mut self, frame: &Arc<Frame>) {
        match self {
            Region::Rect(x, y) => {
                *x = x.to_frame(frame);
                *y = y.to_frame(frame);
            }
            Region::Square(a) => *a = a.to_frame(frame),
            _ => {}
        }
    }

    pub fn describe(&self) -> String {
        fn side(s: &VSet) -> String {
            match s.finite_elements() {
                Some(v) if v.len() <= 8 => format!("{v:?}"),
                Some(v) => format!("finite({})", v.len()),
                None => "infinite".into(),
            }
        }
        match self {
            Region::Blocks(b) => format!("blocks({b})"),
            Region::Rect(x, y) => format!("[{}, {}]", side(x), side(y)),
            Region::Square(a) => format!("[{}]^2", side(a)),
            Region::AllExcept(f) => format!("all except {:?}", f),
        }
    }
}

/// A union of regions with pair-level edits; removals take precedence.
/// Explicit pairs carry a tag (the hidden answer, in a game) so that tagged
/// neighborhoods stay cheap when many pairs were probed one at a time.
#[derive(Clone, Debug, Default)]
pub struct RegionSet {
    pub parts: Vec<Region>,
    plus: BTreeSet<Pair>,
    pub minus: BTreeSet<Pair>,
    /// `plus` indexed by endpoint, split by tag.
    adj: [BTreeMap<Vertex, BTreeSet<Vertex>>; 2],
}

impl RegionSet {
    pub fn contains(&self, p: Pair) -> bool {
        !self.minus.contains(&p) && (self.plus.contains(&p) || self.parts.iter().any(|r| r.contains(p)))
    }

    pub fn neighborhood(&self, frame: &Arc<Frame>, v: Vertex) -> VSet {
        let out = self.parts_neighborhood(frame, v).with(self.partners(v, false)).with(self.partners(v, true));
        self.drop_removed(out, v)
    }

    /// Partners of `v` through the regions alone.
    fn parts_neighborhood(&self, frame: &Arc<Frame>, v: Vertex) -> VSet {
        let mut out = VSet::empty(frame);
        for r in &self.parts {
            out = out.union(&r.neighborhood(frame, v));
        }
        out
    }

    /// Explicit partners of `v` carrying `tag`.
    fn partners(&self, v: Vertex, tag: bool) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[tag as usize].get(&v).into_iter().flatten().copied()
    }

    fn drop_removed(&self, mut out: VSet, v: Vertex) -> VSet {
        for p in &self.minus {
            if let Some(u) = p.other(v) {
                out.remove(u);
            }
        }
        out
    }

    /// Explicit pairs outside the regions.
    pub fn plus(&self) -> &BTreeSet<Pair> {
        &self.plus
    }

    pub fn insert_plus(&mut self, p: Pair, tag: bool) {
        if self.plus.insert(p) {
            let adj = &mut self.adj[tag as usize];
            adj.entry(p.lo()).or_default().insert(p.hi());
            adj.entry(p.hi()).or_default().insert(p.lo());
        }
    }

    pub fn retain_plus(&mut self, keep: impl Fn(Pair) -> bool) {
        let adj = &mut self.adj;
        self.plus.retain(|&p| {
            let k = keep(p);
            if !k {
                for side in adj.iter_mut() {
                    for (a, b) in [(p.lo(), p.hi()), (p.hi(), p.lo())] {
                        if let Some(ns) = side.get_mut(&a) {
                            ns.remove(&b);
                            if ns.is_empty() {
                                side.remove(&a);
                            }
                        }
                    }
                }
            }
            k
        });
    }

    fn support(&self) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self.parts.iter().flat_map(Region::support).collect();
        out.extend(self.plus.iter().chain(&self.minus).flat_map(|p| [p.lo(), p.hi()]));
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum View {
    Probed,
    /// The minimal graph.
    Edges,
    Nonedges,
    Unprobed,
    /// The maximal graph: edges plus unprobed pairs.
    Gmax,
}

/// An allowed neighborhood: a frame set, or on the Cantor board the
/// ancestors in a set plus the descendants in it.
#[derive(Clone, Debug)]
pub enum Nbhd {
    Set(VSet),
    Tree { v: Vertex, ancestors: Vec<Vertex>, below: VSet },
}

impl Nbhd {
    pub fn contains(&self, u: Vertex) -> bool {
        match self {
            Nbhd::Set(s) => s.contains(u),
            Nbhd::Tree { v, ancestors, below } => {
                ancestors.contains(&u) || (cantor::is_strict_ancestor(*v, u) && below.contains(u))
            }
        }
    }

    pub fn is_infinite(&self) -> bool {
        match self {
            Nbhd::Set(s) => s.is_infinite(),
            Nbhd::Tree { v, below, .. } => below.infinite_under(*v),
        }
    }

    /// Up to `k` smallest members.
    pub fn first(&self, k: usize) -> Result<Vec<Vertex>> {
        self.first_from(0, k)
    }

    /// Up to `k` smallest members that are `>= from`.
    pub fn first_from(&self, from: Vertex, k: usize) -> Result<Vec<Vertex>> {
        match self {
            Nbhd::Set(s) => s.first_from(from, k),
            Nbhd::Tree { v, ancestors, below } => {
                let mut out: Vec<Vertex> = ancestors.iter().copied().filter(|&a| a >= from).take(k).collect();
                if out.len() == k {
                    return Ok(out);
                }
                if !below.infinite_under(*v) {
                    let mut rest: Vec<Vertex> = below
                        .explicit_members()
                        .filter(|&u| u >= from && cantor::is_strict_ancestor(*v, u))
                        .collect();
                    rest.sort_unstable();
                    out.extend(rest.into_iter().take(k - out.len()));
                    return Ok(out);
                }
                let mut scanned = 0u64;
                let base = *v as u64 + 1;
                for j in 1..32u32 {
                    let lo = (base << j) - 1;
                    let hi = lo + (1u64 << j);
                    if hi <= from as u64 {
                        continue;
                    }
                    for u in lo.max(from as u64)..hi {
                        if u > Vertex::MAX as u64 {
                            break;
                        }
                        if below.contains(u as Vertex) {
                            out.push(u as Vertex);
                            if out.len() == k {
                                return Ok(out);
                            }
                        }
                        scanned += 1;
                        if scanned > LEVEL_SCAN_CAP {
                            return Err(Error::UnknownExhausted(format!("subtree scan below {v}")));
                        }
                    }
                }
                Err(Error::UnknownExhausted(format!("subtree scan below {v}")))
            }
        }
    }

    pub fn is_empty(&self) -> Result<bool> {
        Ok(self.first(1)?.is_empty())
    }

    /// `min(|self|, cap)`.
    pub fn len_capped(&self, cap: usize) -> Result<usize> {
        Ok(self.first(cap)?.len())
    }

    /// All members, when finite.
    pub fn finite(&self) -> Result<Option<Vec<Vertex>>> {
        if self.is_infinite() {
            return Ok(None);
        }
        self.first(usize::MAX).map(Some)
    }
}

/// The symbolic position of an ω game against a hidden template.
#[derive(Clone)]
pub struct SymState {
    allowed: AllowedGraphKind,
    hidden: HiddenTemplate,
    frame: Arc<Frame>,
    probed: RegionSet,
    /// Vertices the players refer to explicitly; kept in the frame head.
    noted: BTreeSet<Vertex>,
    modulus: u64,
}

impl fmt::Debug for SymState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymState")
            .field("allowed", &self.allowed.to_string())
            .field("hidden", &self.hidden.to_string())
            .field("regions", &self.probed.parts.iter().map(Region::describe).collect::<Vec<_>>())
            .field("pairs", &self.probed.plus.len())
            .finish()
    }
}

impl SymState {
    pub fn new(allowed: AllowedGraphKind, hidden: HiddenTemplate) -> Result<SymState> {
        let support = hidden.support();
        let (frame, modulus) = match &allowed {
            AllowedGraphKind::CompleteOmega => (Frame::periodic(hidden.modulus(), support), hidden.modulus()),
            AllowedGraphKind::Turan(k) => {
                let l = lcm(hidden.modulus(), *k as u64);
                (Frame::periodic(l, support), l)
            }
            AllowedGraphKind::Cantor => (Frame::tree(hidden.tree_modulus(), support), hidden.tree_modulus()),
            AllowedGraphKind::FiniteExplicit(_) => {
                return Err(Error::NotBraided("symbolic play needs an infinite allowed graph".into()))
            }
        };
        Ok(SymState {
            allowed,
            hidden,
            frame: Arc::new(frame),
            probed: RegionSet::default(),
            noted: BTreeSet::new(),
            modulus,
        })
    }

    pub fn allowed(&self) -> &AllowedGraphKind {
        &self.allowed
    }

    pub fn hidden(&self) -> &HiddenTemplate {
        &self.hidden
    }

    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub fn probed(&self) -> &RegionSet {
        &self.probed
    }

    pub fn is_allowed(&self, p: Pair) -> bool {
        self.allowed.contains(p)
    }

    pub fn is_probed(&self, p: Pair) -> bool {
        self.allowed.contains(p) && self.probed.contains(p)
    }

    /// The answer of a probed pair.
    pub fn answer(&self, p: Pair) -> Option<Answer> {
        self.is_probed(p).then(|| Answer::from_bool(self.hidden.contains(p)))
    }

    /// Keeps `vs` in the frame head so classifications treat them exactly.
    pub fn note(&mut self, vs: impl IntoIterator<Item = Vertex>) {
        self.noted.extend(vs);
    }

    pub fn add_region(&mut self, r: Region) {
        if let Region::Blocks(b) = r {
            self.modulus = lcm(self.modulus, b as u64);
        }
        self.probed.parts.push(r);
    }

    pub fn add_pair(&mut self, p: Pair) {
        self.probed.minus.remove(&p);
        let tag = self.hidden.contains(p);
        self.probed.insert_plus(p, tag);
    }

    /// Drops regions added after the first `n`.
    pub fn truncate_regions(&mut self, n: usize) {
        self.probed.parts.truncate(n);
    }

    /// Drops explicit pairs already covered by regions.
    pub fn compact(&mut self) {
        let parts = std::mem::take(&mut self.probed.parts);
        self.probed.retain_plus(|p| !parts.iter().any(|r| r.contains(p)));
        self.probed.parts = parts;
    }

    /// Brings the frame up to date with everything named explicitly.
    pub fn sync_frame(&mut self) {
        let mut support = self.probed.support();
        support.extend(self.noted.iter().copied());
        if let Some(f) = self.frame.refined(self.modulus, &support) {
            self.set_frame(Arc::new(f));
        }
    }

    fn set_frame(&mut self, f: Arc<Frame>) {
        for r in &mut self.probed.parts {
            r.reframe(&f);
        }
        self.frame = f;
    }

    /// Frame set of partners `u` with `{v,u}` in the view, before
    /// intersecting with the allowed graph.
    pub fn raw(&self, v: Vertex, view: View) -> VSet {
        let f = &self.frame;
        let rs = &self.probed;
        let base = rs.parts_neighborhood(f, v);
        let out = match view {
            View::Probed => rs.drop_removed(base.with(rs.partners(v, true)).with(rs.partners(v, false)), v),
            View::Edges => {
                let e = base.intersect(&self.hidden.neighborhood(f, v)).with(rs.partners(v, true));
                rs.drop_removed(e, v)
            }
            View::Nonedges => {
                let n = base.minus(&self.hidden.neighborhood(f, v)).with(rs.partners(v, false));
                rs.drop_removed(n, v)
            }
            View::Unprobed => rs
                .drop_removed(base.with(rs.partners(v, true)).with(rs.partners(v, false)), v)
                .complement(),
            // explicit edges lie inside the hidden graph anyway
            View::Gmax => rs
                .drop_removed(base.with(rs.partners(v, false)), v)
                .complement()
                .union(&self.hidden.neighborhood(f, v)),
        };
        out.without([v])
    }

    pub fn nbhd(&self, v: Vertex, view: View) -> Nbhd {
        self.restrict(v, self.raw(v, view))
    }

    /// Members of `s` joined to `v` in the allowed graph.
    pub fn restrict(&self, v: Vertex, s: VSet) -> Nbhd {
        let s = s.without([v]);
        match &self.allowed {
            AllowedGraphKind::CompleteOmega => Nbhd::Set(s),
            AllowedGraphKind::Turan(k) => {
                let k = *k as u64;
                Nbhd::Set(s.minus(&VSet::residue(&self.frame, k, v as u64 % k)))
            }
            _ => {
                let mut ancestors = Vec::new();
                let mut a = v;
                while a > 0 {
                    a = (a - 1) / 2;
                    if s.contains(a) {
                        ancestors.push(a);
                    }
                }
                ancestors.reverse();
                Nbhd::Tree { v, ancestors, below: s }
            }
        }
    }

    /// Value and witness of a w-function at `v` in the edge graph or the
    /// maximal graph.
    pub fn w_value(&self, wf: WFunction, v: Vertex, view: View) -> Result<(usize, BTreeSet<Vertex>)> {
        let mut err = None;
        let out = wf.eval_local(v, &mut |x, cap| match self.nbhd(x, view).first(cap) {
            Ok(ns) => ns,
            Err(e) => {
                err.get_or_insert(e);
                Vec::new()
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(out),
        }
    }

    /// The set of vertices satisfying `pred`, assuming it is constant on the
    /// cells of some refinement of the frame. Sampled members of each cell
    /// must agree; disagreement refines the frame and retries.
    pub fn vertices_where(&mut self, pred: &dyn Fn(&SymState, Vertex) -> Result<bool>) -> Result<VSet> {
        self.sync_frame();
        for round in 0..SPLIT_ROUNDS {
            let f = self.frame.clone();
            let mut head = Vec::new();
            for h in f.head_vertices() {
                if pred(self, h)? {
                    head.push(h);
                }
            }
            let mut mixed = Vec::new();
            let mut cells = Vec::new();
            for c in 0..f.num_cells() {
                let mut votes = f.cell_reps(c).into_iter().map(|r| pred(self, r));
                let first = votes.next().expect("cells have members")?;
                let mut uniform = true;
                for x in votes {
                    uniform &= x? == first;
                }
                if !uniform {
                    mixed.push(c);
                } else if first {
                    cells.push(c);
                }
            }
            if mixed.is_empty() {
                return Ok(VSet::from_parts(&f, head, &cells));
            }
            self.set_frame(Arc::new(f.split(&mixed, round)));
        }
        Err(Error::UnknownExhausted(
            "vertex classification did not stabilise under frame refinement".into(),
        ))
    }

    /// Vertices of infinite probed degree.
    pub fn infinite_degree_vertices(&mut self) -> Result<VSet> {
        self.vertices_where(&|s, v| Ok(s.nbhd(v, View::Probed).is_infinite()))
    }

    /// Some allowed unprobed pair whose smaller-indexed search vertex lies
    /// in a window starting at 64 and doubling up to 2^16.
    pub fn unprobed_witness(&self) -> Result<Option<Pair>> {
        let mut lo = 0;
        let mut hi = 64u32;
        while hi <= 1 << 16 {
            for v in lo..hi {
                if let Some(&u) = self.nbhd(v, View::Unprobed).first(1)?.first() {
                    return Ok(Some(Pair::of(u, v)));
                }
            }
            lo = hi;
            hi *= 2;
        }
        Ok(None)
    }

    /// Membership of the probed set in one of the large families.
    pub fn family_membership(&mut self, family: LargeFamily) -> Result<FamilyReport> {
        let report = |member: Option<bool>, detail: String| FamilyReport { family, member, detail };
        Ok(match family {
            LargeFamily::AllPairs => match self.unprobed_witness()? {
                Some(p) => report(Some(false), format!("unprobed pair {p}")),
                None => report(None, "no unprobed pair in the search window".into()),
            },
            LargeFamily::JN(n) => {
                let omega = self.infinite_degree_vertices()?;
                match omega.finite_elements() {
                    Some(vs) => report(Some(vs.len() >= n), format!("infinite-degree vertices {vs:?}")),
                    None => report(Some(true), "infinitely many infinite-degree vertices".into()),
                }
            }
            LargeFamily::SmallComplement(n) => {
                let touched = self.vertices_where(&|s, v| Ok(!s.nbhd(v, View::Unprobed).is_empty()?))?;
                match touched.finite_elements() {
                    Some(vs) => report(Some(vs.len() <= n), format!("unprobed pairs meet {vs:?}")),
                    None => report(Some(false), "unprobed pairs meet infinitely many vertices".into()),
                }
            }
            LargeFamily::InfiniteClique => {
                if !matches!(self.allowed, AllowedGraphKind::CompleteOmega) {
                    return Ok(report(None, "decided only on the complete board".into()));
                }
                let omega = self.infinite_degree_vertices()?;
                if !omega.is_infinite() {
                    return Ok(report(Some(false), "finitely many infinite-degree vertices".into()));
                }
                let wide = self.vertices_where(&|s, v| Ok(s.nbhd(v, View::Unprobed).is_infinite()))?;
                if wide.is_infinite() {
                    report(None, "infinitely many vertices with infinite unprobed degree".into())
                } else {
                    report(Some(true), "greedy clique among infinite-degree vertices".into())
                }
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state(allowed: &str, hidden: &str) -> SymState {
        SymState::new(allowed.parse().unwrap(), hidden.parse().unwrap()).unwrap()
    }

    fn row(s: &SymState, v: Vertex) -> Region {
        let f = s.frame();
        Region::Rect(VSet::singleton(f, v), VSet::all(f))
    }

    #[test]
    fn region_membership_and_edits() {
        let s = state("komega", "empty");
        let r = row(&s, 0);
        assert!(r.contains(Pair::of(0, 99)));
        assert!(!r.contains(Pair::of(1, 99)));
        let mut rs = RegionSet::default();
        rs.parts.push(r);
        rs.minus.insert(Pair::of(0, 1));
        assert!(!rs.contains(Pair::of(0, 1)));
        assert!(rs.contains(Pair::of(0, 2)));
        let f = s.frame();
        assert!(!rs.neighborhood(f, 0).contains(1));
        assert!(rs.neighborhood(f, 0).is_infinite());
    }

    #[test]
    fn degrees_and_infinite_degree_vertices() {
        let mut s = state("komega", "complete");
        s.add_region(row(&s, 0));
        s.add_region(row(&s, 3));
        assert!(s.nbhd(0, View::Edges).is_infinite());
        assert_eq!(s.nbhd(7, View::Edges).first(5).unwrap(), vec![0, 3]);
        assert_eq!(s.infinite_degree_vertices().unwrap().finite_elements(), Some(vec![0, 3]));
        let (w, _) = s.w_value(WFunction::Degree(2), 9, View::Edges).unwrap();
        assert_eq!(w, 2);
        let (w, _) = s.w_value(WFunction::Component(4), 9, View::Edges).unwrap();
        assert_eq!(w, 3);
    }

    #[test]
    fn classification_on_blocks() {
        let mut s = state("komega", "blocks:3");
        s.add_region(Region::Blocks(5));
        // E-degree inside the 5-blocks depends on how 3-blocks overlap them
        let low = s.vertices_where(&|s, v| Ok(s.nbhd(v, View::Edges).len_capped(3)? <= 1)).unwrap();
        for v in 0..200 {
            let g = v / 3;
            let b = v / 5;
            let deg = (0..300).filter(|&u| u != v && u / 3 == g && u / 5 == b).count();
            assert_eq!(low.contains(v), deg <= 1, "vertex {v}");
        }
    }

    #[test]
    fn families() {
        let mut s = state("komega", "empty");
        s.add_region(Region::AllExcept(BTreeSet::from([Pair::of(0, 1)])));
        assert_eq!(s.family_membership(LargeFamily::InfiniteClique).unwrap().member, Some(true));
        assert_eq!(s.family_membership(LargeFamily::SmallComplement(2)).unwrap().member, Some(true));
        assert_eq!(s.family_membership(LargeFamily::SmallComplement(1)).unwrap().member, Some(false));
        assert_eq!(s.family_membership(LargeFamily::JN(5)).unwrap().member, Some(true));
        assert_eq!(s.family_membership(LargeFamily::AllPairs).unwrap().member, Some(false));
        let mut t = state("komega", "empty");
        t.add_region(row(&t, 0));
        assert_eq!(t.family_membership(LargeFamily::JN(2)).unwrap().member, Some(false));
        assert_eq!(t.family_membership(LargeFamily::InfiniteClique).unwrap().member, Some(false));
    }

    #[test]
    fn turan_and_cantor_neighborhoods() {
        let mut s = state("turan:3", "complete");
        s.add_region(row(&s, 0));
        let n = s.nbhd(0, View::Edges);
        assert_eq!(n.first(4).unwrap(), vec![1, 2, 4, 5]);
        assert!(s.nbhd(3, View::Edges).is_empty().unwrap());

        let mut c = state("cantor", "complete");
        c.add_region(row(&c, 1));
        assert_eq!(c.nbhd(1, View::Edges).first(4).unwrap(), vec![0, 3, 4, 7]);
        assert_eq!(c.nbhd(1000, View::Edges).first(4).unwrap(), Vec::<Vertex>::new());
        assert_eq!(c.nbhd(15, View::Edges).first(4).unwrap(), vec![1]);
        assert!(c.nbhd(2, View::Unprobed).is_infinite());
        let omega = c.infinite_degree_vertices().unwrap();
        assert_eq!(omega.finite_elements(), Some(vec![1]));
        let w = c.unprobed_witness().unwrap().unwrap();
        assert!(!c.is_probed(w) && c.is_allowed(w));
    }
}
