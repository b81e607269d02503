use evade_core::engine::{play, GameConfig, LargeFamily, TerminalReason, Winner};
use evade_core::omega::{play_omega, seeker_scorpion, OmegaConfig, OmegaOutcome};
use evade_core::solver::{optimal_hider, optimal_play, solve};
use evade_core::strategies::{hider_oblivious, seeker_lexicographic, seeker_random};
use evade_core::{FiniteGraph, Property};

#[test]
fn optimal_play_takes_the_solved_value() {
    for (g, p) in [
        (FiniteGraph::complete(4), Property::Cycle),
        (FiniteGraph::from_pairs(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]).unwrap(), Property::Cycle),
        (FiniteGraph::complete(4), Property::MinDegree(2)),
    ] {
        let value = solve(&g, p, LargeFamily::AllPairs).unwrap().value;
        let (moves, determined) = optimal_play(&g, p).unwrap();
        assert_eq!(moves.len(), value);
        assert_eq!(determined, value);
    }
}

#[test]
fn optimal_hider_forces_every_pair_on_k4() {
    let g = FiniteGraph::complete(4);
    for seed in 0..20 {
        let mut hider = optimal_hider(&g, Property::Connected).unwrap();
        let cfg = GameConfig::finite(g.clone(), Property::Connected);
        let t = play(&mut seeker_random(seed), &mut hider, &cfg).unwrap();
        assert_eq!(t.determined_count, 6);
        assert_eq!(t.winner, Winner::Bob);
    }
}

#[test]
fn oblivious_hider_reveals_its_graph() {
    let hidden = FiniteGraph::from_pairs(4, &[(0, 1), (1, 2), (2, 0)]).unwrap();
    let cfg = GameConfig::finite(FiniteGraph::complete(4), Property::Cycle);
    let t = play(&mut seeker_lexicographic(), &mut hider_oblivious(hidden), &cfg).unwrap();
    assert_eq!(t.terminal_reason, TerminalReason::ForcedTrue);
    assert_eq!(t.determined_count, 4);
    assert_eq!(t.winner, Winner::Alice);
}

#[test]
fn scorpion_seeker_on_a_template() {
    let cfg = OmegaConfig::new("komega".parse().unwrap(), "scorpion:2,9,4;add=0-1".parse().unwrap(), "scorpion".parse().unwrap())
        .with_family(LargeFamily::JN(5));
    let t = play_omega(&mut seeker_scorpion(), &cfg).unwrap();
    assert_eq!(t.outcome, OmegaOutcome::ForcedTrue);
    assert_eq!(t.verdict, Some(true));
    assert!(t.infinite_degree.unwrap().len() <= 4);
}
