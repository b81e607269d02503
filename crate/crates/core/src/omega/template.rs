//! Hidden graphs on ω given by a periodic pattern plus finite edits.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::frame::{lcm, Frame};
use super::vset::VSet;
use crate::algo::is_scorpion_triple;
use crate::error::{Error, Result};
use crate::graph::{FiniteGraph, Pair, Vertex};
use crate::strategies::HiddenGraph;
use crate::wfunc::{cantor, AllowedGraphKind, WFn, WFunction};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Base {
    Empty,
    Complete,
    /// Disjoint cliques on `{kb, ..., kb + b - 1}`.
    BlockCliques(u32),
    /// `{s,t}`, `{t,b}` and `b` joined to every vertex except `s`.
    ScorpionPattern { s: Vertex, t: Vertex, b: Vertex },
    /// Every pair meeting the center set.
    StarCenters(BTreeSet<Vertex>),
    /// Pairs whose endpoints differ mod `k`.
    ModClassDistinct(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HiddenTemplate {
    pub base: Base,
    pub add: BTreeSet<Pair>,
    /// Removals win over additions.
    pub del: BTreeSet<Pair>,
}

impl HiddenTemplate {
    pub fn new(base: Base) -> Result<Self> {
        match &base {
            Base::BlockCliques(0) | Base::ModClassDistinct(0) => {
                return Err(Error::InvalidParameter("template modulus must be positive".into()))
            }
            Base::ScorpionPattern { s, t, b } if s == t || t == b || s == b => {
                return Err(Error::InvalidParameter("scorpion pattern needs three distinct vertices".into()))
            }
            _ => {}
        }
        Ok(HiddenTemplate {
            base,
            add: BTreeSet::new(),
            del: BTreeSet::new(),
        })
    }

    pub fn with_edits(mut self, add: impl IntoIterator<Item = Pair>, del: impl IntoIterator<Item = Pair>) -> Self {
        self.add.extend(add);
        self.del.extend(del);
        self
    }

    fn base_has(&self, p: Pair) -> bool {
        let (u, v) = (p.lo(), p.hi());
        match &self.base {
            Base::Empty => false,
            Base::Complete => true,
            Base::BlockCliques(b) => u / b == v / b,
            Base::ScorpionPattern { s, t, b } => {
                p == Pair::of(*s, *t) || p == Pair::of(*t, *b) || (p.contains(*b) && !p.contains(*s) && !p.contains(*t))
            }
            Base::StarCenters(c) => c.contains(&u) || c.contains(&v),
            Base::ModClassDistinct(k) => u % k != v % k,
        }
    }

    pub fn contains(&self, p: Pair) -> bool {
        !self.del.contains(&p) && (self.add.contains(&p) || self.base_has(p))
    }

    /// Vertices named explicitly by the pattern or the edits.
    pub fn support(&self) -> BTreeSet<Vertex> {
        let mut out: BTreeSet<Vertex> = self.add.iter().chain(&self.del).flat_map(|p| [p.lo(), p.hi()]).collect();
        match &self.base {
            Base::ScorpionPattern { s, t, b } => out.extend([*s, *t, *b]),
            Base::StarCenters(c) => out.extend(c),
            _ => {}
        }
        out
    }

    /// Period of the pattern beyond its support.
    pub fn modulus(&self) -> u64 {
        match self.base {
            Base::BlockCliques(b) => b as u64,
            Base::ModClassDistinct(k) => k as u64,
            _ => 1,
        }
    }

    /// Residue modulus that matters on the Cantor board (blocks of
    /// consecutive ids never contain comparable vertices far from the root).
    pub fn tree_modulus(&self) -> u64 {
        match self.base {
            Base::ModClassDistinct(k) => k as u64,
            _ => 1,
        }
    }

    /// Neighbors of `v` (all of ω, ignoring the allowed graph).
    pub fn neighborhood(&self, frame: &Arc<Frame>, v: Vertex) -> VSet {
        let base = match &self.base {
            Base::Empty => VSet::empty(frame),
            Base::Complete => VSet::cofinite(frame, [v]),
            Base::BlockCliques(b) => {
                let lo = v / b * b;
                VSet::finite(frame, (lo..lo.saturating_add(*b)).filter(|&u| u != v))
            }
            Base::ScorpionPattern { s, t, b } => {
                if v == *s {
                    VSet::singleton(frame, *t)
                } else if v == *t {
                    VSet::finite(frame, [*s, *b])
                } else if v == *b {
                    VSet::cofinite(frame, [*b, *s])
                } else {
                    VSet::singleton(frame, *b)
                }
            }
            Base::StarCenters(c) => {
                if c.contains(&v) {
                    VSet::cofinite(frame, [v])
                } else {
                    VSet::finite(frame, c.iter().copied())
                }
            }
            Base::ModClassDistinct(k) => VSet::residue(frame, *k as u64, (v % k) as u64).complement(),
        };
        let mut out = base;
        for p in &self.add {
            if let Some(u) = p.other(v) {
                out.insert(u);
            }
        }
        for p in &self.del {
            if let Some(u) = p.other(v) {
                out.remove(u);
            }
        }
        out
    }

    /// Whether the template (on the complete board) is a scorpion graph.
    ///
    /// A sting and tail have finite degree, so any witness triple shows up in
    /// a window covering the support and a full period; each candidate found
    /// there is then checked against the whole of ω.
    pub fn is_scorpion(&self) -> bool {
        let support = self.support();
        let p = self.modulus().max(1);
        let top = support.iter().next_back().map_or(0, |&v| v as u64 + 1);
        let w = (top.div_ceil(p) * p + 3 * p + 8) as usize;
        let g = self.window(&AllowedGraphKind::CompleteOmega, w);
        let frame = Arc::new(Frame::periodic(p, support.iter().copied()));
        for s in g.vertices() {
            if g.degree(s) != 1 {
                continue;
            }
            let t = *g.neighbors(s).iter().next().expect("degree one");
            for &b in g.neighbors(t) {
                if b == s || !is_scorpion_triple(&g, s, t, b) {
                    continue;
                }
                let ns = self.neighborhood(&frame, s);
                let nt = self.neighborhood(&frame, t);
                let nb = self.neighborhood(&frame, b);
                if ns.same_members(&VSet::singleton(&frame, t))
                    && nt.same_members(&VSet::finite(&frame, [s, b]))
                    && nb.same_members(&VSet::cofinite(&frame, [b, s]))
                {
                    return true;
                }
            }
        }
        false
    }

    /// The template restricted to allowed pairs inside `0..n`.
    pub fn window(&self, allowed: &AllowedGraphKind, n: usize) -> FiniteGraph {
        let mut g = FiniteGraph::empty(n);
        let mut add = |p: Pair| {
            if allowed.contains(p) && self.contains(p) {
                g.add_edge(p).expect("in range");
            }
        };
        if matches!(allowed, AllowedGraphKind::Cantor) {
            for v in 1..n as Vertex {
                let mut a = v;
                while a > 0 {
                    a = (a - 1) / 2;
                    add(Pair::of(a, v));
                }
            }
        } else {
            for v in 1..n as Vertex {
                for u in 0..v {
                    add(Pair::of(u, v));
                }
            }
        }
        g
    }

    /// Whether every vertex reaches the top level of `wf` in the template
    /// restricted to the allowed graph, decided on a finite window: vertices
    /// up to one period past the support (or a few levels below it on the
    /// Cantor board) are evaluated inside a much larger window.
    pub fn satisfies_w(&self, allowed: &AllowedGraphKind, wf: WFunction) -> Result<bool> {
        let support = self.support();
        let level = wf.level();
        let (checked, window) = match allowed {
            AllowedGraphKind::CompleteOmega | AllowedGraphKind::Turan(_) => {
                let k = if let AllowedGraphKind::Turan(k) = allowed { *k as u64 } else { 1 };
                let p = lcm(self.modulus(), k);
                let top = support.iter().next_back().map_or(0, |&v| v as u64 + 1);
                let t0 = top.div_ceil(p) * p + p;
                (t0 + p, t0 + 12 * p + 8 * level as u64)
            }
            AllowedGraphKind::Cantor => {
                let d = support.iter().map(|&v| cantor::depth(v)).max().unwrap_or(0);
                let d0 = d + 2 + 64 - (self.tree_modulus().max(1) - 1).leading_zeros();
                (*cantor::level(d0).end() + 1, *cantor::level(d0 + 6).end() + 1)
            }
            AllowedGraphKind::FiniteExplicit(_) => {
                return Err(Error::NotBraided("templates live on infinite boards".into()))
            }
        };
        if window > 1 << 20 {
            return Err(Error::UnsupportedSize {
                what: "ground-truth window",
                got: window as usize,
                bound: 1 << 20,
            });
        }
        let g = self.window(allowed, window as usize);
        Ok((0..checked as Vertex).all(|v| wf.eval(v, &g) == level))
    }
}

impl HiddenGraph for HiddenTemplate {
    fn has_pair(&self, p: Pair) -> Result<bool> {
        Ok(self.contains(p))
    }
    fn describe(&self) -> String {
        self.to_string()
    }
}

fn join(vs: impl IntoIterator<Item = Vertex>) -> String {
    vs.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for HiddenTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.base {
            Base::Empty => write!(f, "empty")?,
            Base::Complete => write!(f, "complete")?,
            Base::BlockCliques(b) => write!(f, "blocks:{b}")?,
            Base::ScorpionPattern { s, t, b } => write!(f, "scorpion:{s},{t},{b}")?,
            Base::StarCenters(c) => write!(f, "stars:{}", join(c.iter().copied()))?,
            Base::ModClassDistinct(k) => write!(f, "modk:{k}")?,
        }
        let pairs = |ps: &BTreeSet<Pair>| ps.iter().map(|p| format!("{}-{}", p.lo(), p.hi())).collect::<Vec<_>>().join(",");
        if !self.add.is_empty() {
            write!(f, ";add={}", pairs(&self.add))?;
        }
        if !self.del.is_empty() {
            write!(f, ";del={}", pairs(&self.del))?;
        }
        Ok(())
    }
}

impl FromStr for HiddenTemplate {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "hidden template",
            input: s.to_string(),
            expected: "empty | complete | blocks:<b> | scorpion:<s>,<t>,<b> | stars:<v>,... | modk:<k>, \
                       optionally followed by ;add=<u>-<v>,... and ;del=<u>-<v>,...",
        };
        let num = |x: &str| x.trim().parse::<Vertex>().map_err(|_| err());
        let nums = |x: &str| x.split(',').map(num).collect::<Result<Vec<_>>>();
        let mut parts = s.split(';');
        let head = parts.next().unwrap_or("");
        let base = match head.split_once(':') {
            None if head == "empty" => Base::Empty,
            None if head == "complete" => Base::Complete,
            Some(("blocks", b)) => Base::BlockCliques(num(b)?),
            Some(("modk", k)) => Base::ModClassDistinct(num(k)?),
            Some(("stars", c)) => Base::StarCenters(nums(c)?.into_iter().collect()),
            Some(("scorpion", x)) => match nums(x)?[..] {
                [s, t, b] => Base::ScorpionPattern { s, t, b },
                _ => return Err(err()),
            },
            _ => return Err(err()),
        };
        let mut tpl = HiddenTemplate::new(base)?;
        for part in parts {
            let (key, list) = part.split_once('=').ok_or_else(err)?;
            let mut pairs = BTreeSet::new();
            for item in list.split(',').filter(|x| !x.is_empty()) {
                let (a, b) = item.split_once('-').ok_or_else(err)?;
                pairs.insert(Pair::new(num(a)?, num(b)?)?);
            }
            match key {
                "add" => tpl.add.extend(pairs),
                "del" => tpl.del.extend(pairs),
                _ => return Err(err()),
            }
        }
        Ok(tpl)
    }
}
