//! Seeker for the scorpion property on the complete ω board. It ends every
//! game with at most four vertices of infinite probed degree.

use super::play::{OmegaGame, OmegaSeeker, RowOutcome};
use super::state::{Region, SymState, View};
use super::vset::VSet;
use crate::error::{Error, Result};
use crate::graph::Vertex;

/// Substages of the elimination stage before giving up.
pub const SUBSTAGE_BUDGET: usize = 256;

#[derive(Clone, Debug)]
pub struct ScorpionSeeker {
    pub substage_budget: usize,
}

pub fn seeker_scorpion() -> ScorpionSeeker {
    ScorpionSeeker { substage_budget: SUBSTAGE_BUDGET }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Role {
    Sting,
    Body,
}

fn edge_deg(s: &SymState, v: Vertex, cap: usize) -> Result<usize> {
    s.nbhd(v, View::Edges).len_capped(cap)
}

fn nonedge_deg(s: &SymState, v: Vertex, cap: usize) -> Result<usize> {
    s.nbhd(v, View::Nonedges).len_capped(cap)
}

fn still_in(s: &SymState, k: Vertex, role: Role) -> Result<bool> {
    Ok(match role {
        Role::Sting => edge_deg(s, k, 2)? <= 1,
        Role::Body => nonedge_deg(s, k, 2)? <= 1,
    })
}

/// The unique member of a neighborhood, if it has exactly one.
fn single(s: &SymState, v: Vertex, view: View) -> Result<Option<Vertex>> {
    let ns = s.nbhd(v, view).first(2)?;
    Ok(match ns[..] {
        [x] => Some(x),
        _ => None,
    })
}

impl ScorpionSeeker {
    /// Probes every remaining pair at `v`.
    fn full_row(game: &mut OmegaGame, stage: &str, v: Vertex) -> Result<bool> {
        let f = game.state().frame().clone();
        game.batch(stage, Region::Rect(VSet::singleton(&f, v), VSet::all(&f)))
    }

    /// The sting is known: settle sting, tail and body in turn.
    fn from_sting(game: &mut OmegaGame, s: Vertex) -> Result<()> {
        if !Self::full_row(game, "3:sting", s)? {
            return Ok(());
        }
        let Some(t) = single(game.state(), s, View::Edges)? else {
            return Ok(());
        };
        if !Self::full_row(game, "3:tail", t)? {
            return Ok(());
        }
        let rest: Vec<Vertex> = game.state().nbhd(t, View::Edges).first(3)?.into_iter().filter(|&x| x != s).collect();
        let [b] = rest[..] else { return Ok(()) };
        Self::full_row(game, "3:body", b)?;
        Ok(())
    }

    /// The body is known: settle body, sting and tail in turn.
    fn from_body(game: &mut OmegaGame, b: Vertex) -> Result<()> {
        if !Self::full_row(game, "3:body", b)? {
            return Ok(());
        }
        let Some(s) = single(game.state(), b, View::Nonedges)? else {
            return Ok(());
        };
        if !Self::full_row(game, "3:sting", s)? {
            return Ok(());
        }
        let Some(t) = single(game.state(), s, View::Edges)? else {
            return Ok(());
        };
        Self::full_row(game, "3:tail", t)?;
        Ok(())
    }
}

impl OmegaSeeker for ScorpionSeeker {
    fn name(&self) -> String {
        "scorpion".into()
    }

    fn play(&mut self, game: &mut OmegaGame) -> Result<()> {
        // every vertex gets probed degree four: no vertex can then be both
        // a body candidate and a tail candidate
        if !game.batch("1", Region::Blocks(5))? {
            return Ok(());
        }

        // elimination: pick the least candidate and probe it against the
        // other kind until it drops out
        let mut done = None;
        for _ in 0..self.substage_budget {
            let st = game.state_mut();
            let stings = st.vertices_where(&|s, v| Ok(edge_deg(s, v, 2)? <= 1))?;
            let bodies = st.vertices_where(&|s, v| Ok(nonedge_deg(s, v, 2)? <= 1))?;
            if stings.is_empty() || bodies.is_empty() {
                return Ok(());
            }
            let k = stings.union(&bodies).min()?.expect("nonempty");
            let (role, other) = if stings.contains(k) {
                (Role::Sting, bodies)
            } else {
                (Role::Body, stings)
            };
            let out = game.rows("2", vec![(k, other)], &mut |s| Ok(!still_in(s, k, role)?))?;
            match out {
                RowOutcome::Over => return Ok(()),
                RowOutcome::Interrupted => continue,
                RowOutcome::Completed => {
                    done = Some((k, role));
                    break;
                }
            }
        }
        let Some((k, role)) = done else {
            return Err(Error::UnknownExhausted(format!(
                "elimination did not settle within {} substages",
                self.substage_budget
            )));
        };

        match role {
            Role::Body => {
                // the sting is the unique non-neighbour of k
                match single(game.state(), k, View::Nonedges)? {
                    Some(s) => Self::from_sting(game, s),
                    None => Ok(()),
                }
            }
            Role::Sting => {
                let bodies = game.state_mut().vertices_where(&|s, v| Ok(nonedge_deg(s, v, 2)? <= 1))?;
                let linked: Vec<Vertex> = game
                    .state()
                    .nbhd(k, View::Edges)
                    .first(2)?
                    .into_iter()
                    .filter(|&b| bodies.contains(b))
                    .collect();
                match linked[..] {
                    [] => Self::from_sting(game, k),
                    [b] => Self::from_body(game, b),
                    _ => Ok(()),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::LargeFamily;
    use crate::omega::play::{play_omega, OmegaConfig, OmegaOutcome};

    fn run(hidden: &str) -> crate::omega::OmegaTranscript {
        let cfg = OmegaConfig::new("komega".parse().unwrap(), hidden.parse().unwrap(), "scorpion".parse().unwrap())
            .with_family(LargeFamily::JN(5));
        play_omega(&mut seeker_scorpion(), &cfg).unwrap()
    }

    fn check(hidden: &str) {
        let t = run(hidden);
        let verdict = t.verdict.unwrap_or_else(|| panic!("{hidden}: {:?} {:?}", t.outcome, t.note));
        assert_eq!(Some(verdict), t.ground_truth, "{hidden}");
        let omega = t.infinite_degree.clone().expect("finitely many");
        assert!(omega.len() <= 4, "{hidden}: {omega:?}");
        assert_ne!(t.outcome, OmegaOutcome::FuelExhausted);
    }

    #[test]
    fn scorpions_are_found() {
        check("scorpion:3,4,7");
        check("scorpion:0,1,2");
        check("scorpion:20,5,11");
    }

    #[test]
    fn non_scorpions_are_rejected() {
        check("complete");
        check("empty");
        check("blocks:2");
        check("blocks:3");
        check("scorpion:3,4,7;del=7-30");
        check("scorpion:3,4,7;add=3-9");
        check("stars:6");
    }
}
