//! Seeker for "every vertex reaches the top level of w" on braided boards
//! (complete ω, Turán, Cantor). It always stops with an allowed pair left
//! unprobed.

use std::collections::BTreeSet;

use super::play::{OmegaGame, OmegaSeeker, RowOutcome};
use super::state::{Region, SymState, View};
use super::vset::VSet;
use crate::error::{Error, Result};
use crate::graph::{Pair, Vertex};
use crate::wfunc::{covering_set, AllowedGraphKind, WFn, WFunction};

#[derive(Clone, Debug)]
pub struct BraidedSeeker {
    wf: WFunction,
}

pub fn seeker_braided_w(wf: WFunction, allowed: &AllowedGraphKind) -> Result<BraidedSeeker> {
    if matches!(allowed, AllowedGraphKind::FiniteExplicit(_)) {
        return Err(Error::NotBraided("the braided seeker plays on komega, turan or cantor".into()));
    }
    Ok(BraidedSeeker { wf })
}

fn w(s: &SymState, wf: WFunction, v: Vertex) -> Result<usize> {
    Ok(s.w_value(wf, v, View::Edges)?.0)
}

fn give_up(msg: &str) -> Error {
    Error::UnknownExhausted(msg.into())
}

impl BraidedSeeker {
    fn top(&self, s: &SymState, v: Vertex) -> Result<bool> {
        Ok(w(s, self.wf, v)? >= self.wf.level())
    }

    /// Probes everything but `{a, b}`.
    fn all_but(game: &mut OmegaGame, stage: &str, a: Vertex, b: Vertex) -> Result<()> {
        game.batch(stage, Region::AllExcept(BTreeSet::from([Pair::of(a, b)])))?;
        Ok(())
    }

    /// Some `y` in `ys` at the top level together with an allowed partner in
    /// `l`; probing everything else settles the game.
    fn finish_at_top(&self, game: &mut OmegaGame, stage: &str, ys: &[Vertex], l: &BTreeSet<Vertex>) -> Result<bool> {
        for &y in ys {
            if !self.top(game.state(), y)? {
                continue;
            }
            if let Some(&a) = l.iter().find(|&&a| game.state().is_allowed(Pair::of(a, y))) {
                Self::all_but(game, stage, y, a)?;
                return Ok(true);
            }
        }
        Ok(false)
    }
}

impl OmegaSeeker for BraidedSeeker {
    fn name(&self) -> String {
        format!("braided-w:{}", self.wf)
    }

    fn play(&mut self, game: &mut OmegaGame) -> Result<()> {
        let wf = self.wf;
        let level = wf.level();
        let allowed = game.state().allowed().clone();
        let l = covering_set(&allowed, &BTreeSet::new())?;
        let lv: Vec<Vertex> = l.iter().copied().collect();
        game.state_mut().note(lv.iter().copied());

        // stage 1: raise the covering set to the top level one step at a
        // time, probing around the current witness sets
        for i in 0..level {
            let reached = |s: &SymState| -> Result<bool> {
                for &a in &lv {
                    if w(s, wf, a)? < i + 1 {
                        return Ok(false);
                    }
                }
                Ok(true)
            };
            if reached(game.state())? {
                continue;
            }
            let mut wit = BTreeSet::new();
            for &a in &lv {
                wit.extend(game.state().w_value(wf, a, View::Edges)?.1);
            }
            let f = game.state().frame().clone();
            let rows = wit.into_iter().map(|v| (v, VSet::all(&f))).collect();
            match game.rows(&format!("1.{i}"), rows, &mut |s| reached(s))? {
                RowOutcome::Over => return Ok(()),
                RowOutcome::Interrupted => {}
                RowOutcome::Completed => return Err(give_up("stage 1 ran out of pairs without a verdict")),
            }
        }

        // stage 2: fresh disjoint covering sets X, then everything inside
        // the rest A
        let mut excluded: BTreeSet<Vertex> = l.clone();
        for p in game.state().probed().plus() {
            excluded.extend([p.lo(), p.hi()]);
        }
        let n = wf.m() * (wf.k() + l.len()) + 1;
        let mut covers = Vec::with_capacity(n + 1);
        for _ in 0..=n {
            let c = covering_set(&allowed, &excluded)?;
            excluded.extend(c.iter().copied());
            covers.push(c);
        }
        let x_all: BTreeSet<Vertex> = covers.iter().flatten().copied().collect();
        game.state_mut().note(x_all.iter().copied());
        let f = game.state().frame().clone();
        if !game.batch("2", Region::Square(VSet::cofinite(&f, x_all.iter().copied())))? {
            return Ok(());
        }

        // stage 3: split A by whether w is already at the top
        let at_top = game.state_mut().vertices_where(&|s, v| Ok(w(s, wf, v)? >= level))?;
        let f = game.state().frame().clone();
        let b = at_top.to_frame(&f).without(x_all.iter().copied());
        let c = VSet::cofinite(&f, x_all.iter().copied()).minus(&b);
        let last = &covers[n];

        let x = if b.is_infinite() {
            // 3.1: x sees infinitely much of B
            let Some(&x) = last.iter().find(|&&x| game.state().restrict(x, b.clone()).is_infinite()) else {
                return Err(give_up("no vertex of the last covering set sees infinitely much of B"));
            };
            let y: Vec<Vertex> = x_all.iter().copied().filter(|&v| v != x).collect();
            let ys = VSet::finite(&f, y.iter().copied());
            if !game.batch("3.1.1", Region::Square(ys.clone()))? {
                return Ok(());
            }
            if !c.is_empty() && !game.batch("3.1.1", Region::Rect(c, ys.clone()))? {
                return Ok(());
            }
            if self.finish_at_top(game, "3.1.1", &y, &l)? {
                return Ok(());
            }

            // 3.1.2: pairs between B and Y, watching one vertex per
            // covering set
            let mut watch = Vec::with_capacity(n);
            for cover in &covers[..n] {
                let Some(&a) = cover.iter().find(|&&a| game.state().restrict(a, b.clone()).is_infinite()) else {
                    return Err(give_up("a covering set has no vertex seeing infinitely much of B"));
                };
                watch.push(a);
            }
            let rows = y.iter().map(|&v| (v, b.clone())).collect();
            let out = game.rows("3.1.2", rows, &mut |s| {
                for &a in &watch {
                    if w(s, wf, a)? >= level {
                        return Ok(true);
                    }
                }
                Ok(false)
            })?;
            match out {
                RowOutcome::Over => return Ok(()),
                RowOutcome::Interrupted => {
                    let st = game.state();
                    for &a in &watch {
                        if w(st, wf, a)? < level {
                            continue;
                        }
                        let open = b.minus(&st.raw(a, View::Probed));
                        if let Some(&partner) = st.restrict(a, open).first(1)?.first() {
                            return Self::all_but(game, "3.1.2", a, partner);
                        }
                    }
                    return Err(give_up("no unprobed pair left at the vertex that reached the top"));
                }
                RowOutcome::Completed => {}
            }
            x
        } else {
            // 3.2: B finite, so C is infinite
            let x = *last.iter().next().expect("covering sets are nonempty");
            let y: Vec<Vertex> = x_all.iter().copied().filter(|&v| v != x).collect();
            let ys = VSet::finite(&f, y.iter().copied());
            if !game.batch("3.2.1", Region::Square(ys.clone()))? {
                return Ok(());
            }
            if !game.batch("3.2.1", Region::Rect(c.clone(), ys.clone()))? {
                return Ok(());
            }
            let below = game.state_mut().vertices_where(&|s, v| Ok(w(s, wf, v)? < level))?;
            let c_low = below.intersect(&c.to_frame(game.state().frame()));
            if !c_low.is_infinite() {
                // some y gained infinite degree
                if self.finish_at_top(game, "3.2.1", &y, &l)? {
                    return Ok(());
                }
                return Err(give_up("no vertex of Y reached the top although few of C stayed below"));
            }
            if !b.is_empty() && !game.batch("3.2.2", Region::Rect(b, ys))? {
                return Ok(());
            }
            x
        };

        // stage 4: everything except one pair at x
        let Some(&a) = l.iter().find(|&&a| game.state().is_allowed(Pair::of(a, x))) else {
            return Err(give_up("x has no allowed partner in L"));
        };
        Self::all_but(game, "4", x, a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::omega::play::{play_omega, OmegaConfig, OmegaOutcome};
    use crate::omega::referee::Objective;

    fn check(allowed: &str, wf: &str, hidden: &str) {
        let allowed: AllowedGraphKind = allowed.parse().unwrap();
        let wf: WFunction = wf.parse().unwrap();
        let cfg = OmegaConfig::new(allowed.clone(), hidden.parse().unwrap(), Objective::W(wf));
        let mut seeker = seeker_braided_w(wf, &allowed).unwrap();
        let t = play_omega(&mut seeker, &cfg).unwrap();
        let tag = format!("{allowed} {wf} {hidden}");
        assert!(
            matches!(t.outcome, OmegaOutcome::ForcedTrue | OmegaOutcome::ForcedFalse),
            "{tag}: {:?} {:?} {:?}",
            t.outcome,
            t.note,
            t.batches
        );
        assert_eq!(t.verdict, t.ground_truth, "{tag}");
        assert!(t.unprobed_witness.is_some(), "{tag}");
    }

    #[test]
    fn complete_board() {
        for wf in ["dmin:1", "dmin:2", "cmin:2", "cmin:3"] {
            for h in ["complete", "empty", "blocks:2", "blocks:3", "empty;add=0-1"] {
                check("komega", wf, h);
            }
        }
    }

    #[test]
    fn turan_and_cantor() {
        for wf in ["dmin:1", "cmin:3"] {
            for h in ["complete", "empty", "blocks:4", "modk:2"] {
                check("turan:2", wf, h);
            }
            for h in ["complete", "empty"] {
                check("cantor", wf, h);
            }
        }
    }

    #[test]
    fn rejects_finite_boards() {
        let k: AllowedGraphKind = "g6:B_".parse().unwrap();
        assert!(seeker_braided_w(WFunction::Degree(1), &k).is_err());
    }
}
