//! Terminal detection on symbolic positions.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::state::{SymState, View};
use super::template::HiddenTemplate;
use super::vset::VSet;
use crate::error::{Error, Result};
use crate::graph::{Pair, Vertex};
use crate::properties::{Property, TerminalStatus};
use crate::wfunc::{AllowedGraphKind, WFn, WFunction};

/// Properties decidable on symbolic positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Objective {
    /// Every vertex reaches the top level of the w-function.
    W(WFunction),
    Scorpion,
}

impl Objective {
    pub fn from_property(p: Property) -> Result<Objective> {
        match p.validated()? {
            Property::MinDegree(n) => Ok(Objective::W(WFunction::Degree(n))),
            Property::MinComponentSize(m) => Ok(Objective::W(WFunction::Component(m))),
            Property::Scorpion => Ok(Objective::Scorpion),
            other => Err(Error::InvalidParameter(format!(
                "{other} is not supported on infinite boards (use dmin, cmin, scorpion or a w-function)"
            ))),
        }
    }

    /// Whether the hidden template itself has the property.
    pub fn ground_truth(self, allowed: &AllowedGraphKind, hidden: &HiddenTemplate) -> Result<bool> {
        match self {
            Objective::W(wf) => hidden.satisfies_w(allowed, wf),
            Objective::Scorpion => {
                require_complete(allowed)?;
                Ok(hidden.is_scorpion())
            }
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Objective::W(wf) => write!(f, "{wf}"),
            Objective::Scorpion => write!(f, "scorpion"),
        }
    }
}

impl FromStr for Objective {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if let Ok(wf) = s.parse::<WFunction>() {
            return Ok(Objective::W(wf));
        }
        Objective::from_property(s.parse()?)
    }
}

impl Serialize for Objective {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn require_complete(allowed: &AllowedGraphKind) -> Result<()> {
    if matches!(allowed, AllowedGraphKind::CompleteOmega) {
        Ok(())
    } else {
        Err(Error::InvalidParameter("the scorpion property is played on the complete board".into()))
    }
}

pub fn terminal_status(state: &mut SymState, objective: Objective) -> Result<TerminalStatus> {
    match objective {
        Objective::W(wf) => w_status(state, wf),
        Objective::Scorpion => scorpion_status(state),
    }
}

fn w_status(state: &mut SymState, wf: WFunction) -> Result<TerminalStatus> {
    let level = wf.level();
    let short = state.vertices_where(&|s, v| Ok(s.w_value(wf, v, View::Gmax)?.0 < level))?;
    if !short.is_empty() {
        return Ok(TerminalStatus::ForcedFalse);
    }
    let open = state.vertices_where(&|s, v| Ok(s.w_value(wf, v, View::Edges)?.0 < level))?;
    Ok(if open.is_empty() {
        TerminalStatus::ForcedTrue
    } else {
        TerminalStatus::Open
    })
}

fn subset_of(ns: &[Vertex], allowed: &[Vertex]) -> bool {
    ns.iter().all(|x| allowed.contains(x))
}

/// Some extension of the position is a scorpion graph with this sting,
/// tail and body.
pub fn scorpion_feasible(state: &SymState, s: Vertex, t: Vertex, b: Vertex) -> Result<bool> {
    if s == t || t == b || s == b {
        return Ok(false);
    }
    let is_n = |p: Pair| state.is_probed(p) && !state.hidden().contains(p);
    let is_e = |p: Pair| state.is_probed(p) && state.hidden().contains(p);
    if is_n(Pair::of(s, t)) || is_n(Pair::of(t, b)) || is_e(Pair::of(s, b)) {
        return Ok(false);
    }
    Ok(subset_of(&state.nbhd(s, View::Edges).first(2)?, &[t])
        && subset_of(&state.nbhd(t, View::Edges).first(3)?, &[s, b])
        && subset_of(&state.nbhd(b, View::Nonedges).first(2)?, &[s]))
}

/// Every extension is a scorpion graph with this triple: all pairs at the
/// three vertices are probed and already have the scorpion shape.
fn scorpion_settled(state: &SymState, s: Vertex, t: Vertex, b: Vertex) -> Result<bool> {
    for v in [s, t, b] {
        if !state.nbhd(v, View::Unprobed).is_empty()? {
            return Ok(false);
        }
    }
    Ok(state.nbhd(s, View::Edges).first(2)? == vec![t]
        && {
            let mut st = vec![s, b];
            st.sort_unstable();
            state.nbhd(t, View::Edges).first(3)? == st
        }
        && state.nbhd(b, View::Nonedges).first(2)? == vec![s])
}

/// Search over stings, tails and bodies. Infinite candidate sets are
/// represented by a few members of each uniform cell.
fn find_feasible(state: &mut SymState) -> Result<Option<(Vertex, Vertex, Vertex)>> {
    let stings = state.vertices_where(&|s, v| Ok(s.nbhd(v, View::Edges).len_capped(2)? <= 1))?;
    let tails = state.vertices_where(&|s, v| Ok(s.nbhd(v, View::Edges).len_capped(3)? <= 2))?;
    let bodies = state.vertices_where(&|s, v| Ok(s.nbhd(v, View::Nonedges).len_capped(2)? <= 1))?;
    if stings.is_empty() || tails.is_empty() || bodies.is_empty() {
        return Ok(None);
    }
    let state = &*state;
    let pick = |set: &VSet| set.samples_per_cell(3);
    // tails of a given sting
    let tails_for = |s: Vertex, excl: &[Vertex]| -> Result<Vec<Vertex>> {
        let es = state.nbhd(s, View::Edges).first(2)?;
        Ok(match es[..] {
            [t] => vec![t],
            [] => pick(&tails.minus(&state.raw(s, View::Nonedges)).without(excl.iter().copied().chain([s]))),
            _ => Vec::new(),
        })
    };
    if bodies.samples().len() <= stings.samples().len() {
        for b in pick(&bodies) {
            let nb = state.nbhd(b, View::Nonedges).first(2)?;
            let ss = match nb[..] {
                [s0] => vec![s0],
                [] => pick(&stings.minus(&state.raw(b, View::Edges)).without([b])),
                _ => continue,
            };
            for s in ss {
                for t in tails_for(s, &[b])? {
                    if scorpion_feasible(state, s, t, b)? {
                        return Ok(Some((s, t, b)));
                    }
                }
            }
        }
    } else {
        for s in pick(&stings) {
            for t in tails_for(s, &[])? {
                let et: Vec<Vertex> = state.nbhd(t, View::Edges).first(3)?.into_iter().filter(|&x| x != s).collect();
                let bs = match et[..] {
                    [b0] => vec![b0],
                    [] => pick(
                        &bodies
                            .minus(&state.raw(t, View::Nonedges))
                            .minus(&state.raw(s, View::Edges))
                            .without([s, t]),
                    ),
                    _ => continue,
                };
                for b in bs {
                    if scorpion_feasible(state, s, t, b)? {
                        return Ok(Some((s, t, b)));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn scorpion_status(state: &mut SymState) -> Result<TerminalStatus> {
    require_complete(state.allowed())?;
    if find_feasible(state)?.is_none() {
        return Ok(TerminalStatus::ForcedFalse);
    }
    let settled = state.vertices_where(&|s, v| s.nbhd(v, View::Unprobed).is_empty())?;
    for b in settled.samples_per_cell(3) {
        let nb = state.nbhd(b, View::Nonedges).first(2)?;
        let [s] = nb[..] else { continue };
        let es = state.nbhd(s, View::Edges).first(2)?;
        let [t] = es[..] else { continue };
        if scorpion_settled(state, s, t, b)? {
            return Ok(TerminalStatus::ForcedTrue);
        }
    }
    Ok(TerminalStatus::Open)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::omega::state::Region;
    use std::collections::BTreeSet;

    fn state(allowed: &str, hidden: &str) -> SymState {
        SymState::new(allowed.parse().unwrap(), hidden.parse().unwrap()).unwrap()
    }

    fn row(s: &SymState, v: Vertex) -> Region {
        let f = s.frame();
        Region::Rect(VSet::singleton(f, v), VSet::all(f))
    }

    #[test]
    fn w_terminals() {
        let d1 = Objective::W(WFunction::Degree(1));
        let mut s = state("komega", "empty");
        assert_eq!(terminal_status(&mut s, d1).unwrap(), TerminalStatus::Open);
        s.add_region(row(&s, 0));
        assert_eq!(terminal_status(&mut s, d1).unwrap(), TerminalStatus::ForcedFalse);

        let mut c = state("komega", "complete");
        c.add_region(row(&c, 0));
        assert_eq!(terminal_status(&mut c, d1).unwrap(), TerminalStatus::ForcedTrue);
        let c2 = Objective::W(WFunction::Degree(2));
        assert_eq!(terminal_status(&mut c, c2).unwrap(), TerminalStatus::Open);

        let mut t = state("cantor", "complete");
        t.add_region(row(&t, 0));
        assert_eq!(terminal_status(&mut t, d1).unwrap(), TerminalStatus::ForcedTrue);
    }

    #[test]
    fn scorpion_terminals() {
        let obj = Objective::Scorpion;
        let mut s = state("komega", "complete");
        assert_eq!(terminal_status(&mut s, obj).unwrap(), TerminalStatus::Open);
        s.add_region(Region::Blocks(5));
        assert_eq!(terminal_status(&mut s, obj).unwrap(), TerminalStatus::ForcedFalse);

        let mut sc = state("komega", "scorpion:3,4,7");
        sc.add_region(Region::Blocks(5));
        assert_eq!(terminal_status(&mut sc, obj).unwrap(), TerminalStatus::Open);
        for v in [3, 4, 7] {
            sc.add_region(row(&sc, v));
        }
        assert_eq!(terminal_status(&mut sc, obj).unwrap(), TerminalStatus::ForcedTrue);

        // the body misses one vertex: no scorpion extends
        let mut br = state("komega", "scorpion:3,4,7;del=7-30");
        for v in [3, 4, 7] {
            br.add_region(row(&br, v));
        }
        assert_eq!(terminal_status(&mut br, obj).unwrap(), TerminalStatus::ForcedFalse);

        let mut almost = state("komega", "scorpion:0,1,2");
        almost.add_region(Region::AllExcept(BTreeSet::from([Pair::of(2, 9)])));
        assert_eq!(terminal_status(&mut almost, obj).unwrap(), TerminalStatus::Open);
        assert!(scorpion_feasible(&almost, 0, 1, 2).unwrap());
    }

    #[test]
    fn ground_truths() {
        let k = AllowedGraphKind::CompleteOmega;
        assert!(Objective::Scorpion.ground_truth(&k, &"scorpion:0,1,2".parse().unwrap()).unwrap());
        assert!(Objective::Scorpion.ground_truth(&AllowedGraphKind::Cantor, &"empty".parse().unwrap()).is_err());
        assert_eq!("dmin:2".parse::<Objective>().unwrap(), Objective::W(WFunction::Degree(2)));
        assert!("cycle".parse::<Objective>().is_err());
    }
}
