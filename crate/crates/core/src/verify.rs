//! Self-checks behind `evade verify`. Each suite reproduces one claim about
//! the games against an oracle that shares no code with the part checked.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algo;
use crate::canon;
use crate::engine::{play_observed, Board, GameConfig, Hider, LargeFamily, Move, Seeker, Winner};
use crate::error::{Error, Result};
use crate::graph::{Answer, FiniteGraph, FinitePregraph, Pair, Vertex};
use crate::graph6;
use crate::omega::{
    play_omega, seeker_braided_w, seeker_scorpion, Base, HiddenTemplate, Objective, OmegaConfig, OmegaOutcome,
};
use crate::properties::{Property, TerminalStatus};
use crate::solver::{self, graphs_up_to_iso, MemoMode, SolverConfig};
use crate::strategies::{hider_connect, hider_cycle_forest, hider_degree, hider_star, seeker_lexicographic, seeker_random, DegreeHider};
use crate::wfunc::{validate_w, validate_w_exhaustive, w_component, w_degree, AllowedGraphKind, ClauseStatus, WFunction};

const SEED: u64 = 0x5eed_0f0d;

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    /// Instances (graphs, games, states) examined.
    pub checked: usize,
    pub seconds: f64,
    pub detail: String,
}

/// Suite id, command-line name, description.
pub const SUITES: [(u8, &str, &str); 11] = [
    (1, "cycle-equivalence", "cycle winner equals 2-edge-connectivity"),
    (2, "cycle-forest", "cycle-forest hider never ends early on 2-edge-connected boards"),
    (3, "strong-elusiveness", "cycle and connectivity are strongly elusive on small K_n"),
    (4, "memo", "memo modes agree with an unmemoized determinacy oracle"),
    (5, "degree-hider", "degree hider invariants on ω"),
    (6, "connect-hider", "connect hider keeps components settled"),
    (7, "star-hider", "star hider leaves at most n endpoints unprobed"),
    (8, "scorpion", "scorpion seeker on ω"),
    (9, "braided", "braided w-seeker on ω"),
    (10, "w-validators", "w-function validators"),
    (11, "graph6", "graph6 round trip"),
];

/// Looks a suite up by id or command-line name.
pub fn suite_id(name: &str) -> Option<u8> {
    SUITES.iter().find(|(id, slug, _)| *slug == name || id.to_string() == name).map(|(id, _, _)| *id)
}

/// Outcome of one suite before timing is attached.
struct Tally {
    checked: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { checked: 0, failures: Vec::new(), notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

pub fn run_suite(id: u8) -> Result<SuiteReport> {
    let start = Instant::now();
    let t = match id {
        1 => cycle_equivalence(5, 200)?,
        2 => cycle_forest_hider()?,
        3 => strong_elusiveness()?,
        4 => memo_agreement()?,
        5 => degree_hider()?,
        6 => connect_hider()?,
        7 => star_hider()?,
        8 => scorpion_seeker()?,
        9 => braided_seeker()?,
        10 => w_validators()?,
        11 => graph6_round_trip()?,
        _ => return Err(Error::InvalidParameter(format!("no suite {id} (1..=11)"))),
    };
    Ok(finish(id, t, start))
}

/// The cycle equivalence over every graph up to `max_n` vertices (at most
/// 6), without the random sample.
pub fn run_cycle_equivalence(max_n: usize) -> Result<SuiteReport> {
    if max_n > solver::MAX_COMPLETE_N {
        return Err(Error::UnsupportedSize { what: "--max-n", got: max_n, bound: solver::MAX_COMPLETE_N });
    }
    let start = Instant::now();
    let t = cycle_equivalence(max_n, 0)?;
    Ok(finish(1, t, start))
}

fn finish(id: u8, t: Tally, start: Instant) -> SuiteReport {
    let name = SUITES.iter().find(|(i, _, _)| *i == id).map_or("", |(_, n, _)| *n);
    let mut detail = t.notes.join("; ");
    if !t.failures.is_empty() {
        let shown: Vec<&str> = t.failures.iter().take(5).map(String::as_str).collect();
        detail = format!("{} failures, e.g. {}; {detail}", t.failures.len(), shown.join(" | "));
    }
    SuiteReport {
        id,
        name,
        passed: t.failures.is_empty(),
        checked: t.checked,
        seconds: start.elapsed().as_secs_f64(),
        detail,
    }
}

pub fn run_all() -> Vec<Result<SuiteReport>> {
    SUITES.iter().map(|(id, _, _)| run_suite(*id)).collect()
}

fn random_graph(rng: &mut impl Rng, n: usize, density: f64) -> FiniteGraph {
    let pairs: Vec<Pair> = FiniteGraph::complete(n).edges().collect();
    FiniteGraph::from_edges(n, pairs.into_iter().filter(|_| rng.gen_bool(density))).expect("subgraph of K_n")
}

fn graph_of(n: usize, pairs: &[Pair], mask: u64) -> FiniteGraph {
    FiniteGraph::from_edges(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| *p))
        .expect("pairs inside the vertex set")
}

// ---------------------------------------------------------------------------
// 1

fn cycle_equivalence(max_n: usize, samples: usize) -> Result<Tally> {
    let mut t = Tally::new();
    let mut graphs: Vec<FiniteGraph> = (1..=max_n).flat_map(graphs_up_to_iso).collect();
    let classes = graphs.len();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..samples {
        let density = rng.gen_range(0.2..0.9);
        graphs.push(random_graph(&mut rng, 6, density));
    }
    let start = Instant::now();
    let report = solver::check_cycle_equivalence(&graphs)?;
    t.checked = report.graphs_checked;
    t.failures = report.counterexamples;
    let secs = start.elapsed().as_secs_f64();
    if secs > 300.0 {
        t.failures.push(format!("took {secs:.0}s, limit 300s"));
    }
    let mut note = format!("{classes} classes on ≤{max_n} vertices");
    if samples > 0 {
        note += &format!(" + {samples} random 6-vertex graphs");
    }
    t.notes.push(note);
    Ok(t)
}

// ---------------------------------------------------------------------------
// 2

/// Every seeker order against the cycle-forest hider, from every reachable
/// position; a game may only end once nothing is left unprobed.
fn cycle_forest_hider() -> Result<Tally> {
    let mut t = Tally::new();
    let mut boards = 0;
    let mut states = 0;
    for n in 1..=5 {
        for h in graphs_up_to_iso(n) {
            if !algo::all_components_two_edge_connected(&h) {
                continue;
            }
            boards += 1;
            let pairs: Vec<Pair> = h.edges().collect();
            let mut seen = HashSet::new();
            let mut stack = vec![(0u32, 0u32)];
            while let Some((e, ne)) = stack.pop() {
                if !seen.insert((e, ne)) {
                    continue;
                }
                states += 1;
                let mut pg = FinitePregraph::new(h.clone());
                for (i, p) in pairs.iter().enumerate() {
                    if e >> i & 1 == 1 {
                        pg.determine(*p, Answer::Edge)?;
                    } else if ne >> i & 1 == 1 {
                        pg.determine(*p, Answer::Nonedge)?;
                    }
                }
                let board = Board::Finite(pg);
                if board.terminal_status(Property::Cycle)?.is_terminal() {
                    t.check(!board.has_undetermined(), || {
                        format!("{}: ended with {} pairs open", graph6::encode(&h), pairs.len() - (e | ne).count_ones() as usize)
                    });
                    continue;
                }
                for (i, p) in pairs.iter().enumerate() {
                    let bit = 1 << i;
                    if (e | ne) & bit != 0 {
                        continue;
                    }
                    let a = hider_cycle_forest().answer(&board, *p)?;
                    stack.push(if a.is_edge() { (e | bit, ne) } else { (e, ne | bit) });
                }
            }
        }
    }
    t.notes.push(format!("{boards} boards, {states} reachable positions"));
    Ok(t)
}

// ---------------------------------------------------------------------------
// 3

/// Plain minimax over probe orders: the number of probes the seeker needs
/// against the worst hider. Terminal positions are read off gmin and gmax.
struct Minimax {
    n: usize,
    pairs: Vec<Pair>,
    property: Property,
    memo: HashMap<(u32, u32), usize>,
}

impl Minimax {
    fn new(allowed: &FiniteGraph, property: Property) -> Self {
        Minimax { n: allowed.n(), pairs: allowed.edges().collect(), property, memo: HashMap::new() }
    }

    fn full(&self) -> u32 {
        (1u32 << self.pairs.len()) - 1
    }

    fn settled(&self, e: u32, ne: u32) -> bool {
        let gmin = graph_of(self.n, &self.pairs, e as u64);
        let gmax = graph_of(self.n, &self.pairs, (self.full() & !ne) as u64);
        self.property.holds(&gmin) || !self.property.holds(&gmax)
    }

    fn value(&mut self, e: u32, ne: u32) -> usize {
        if let Some(&v) = self.memo.get(&(e, ne)) {
            return v;
        }
        let v = if self.settled(e, ne) {
            (e | ne).count_ones() as usize
        } else {
            let mut best = usize::MAX;
            for i in 0..self.pairs.len() {
                let bit = 1 << i;
                if (e | ne) & bit == 0 {
                    let worst = self.value(e | bit, ne).max(self.value(e, ne | bit));
                    best = best.min(worst);
                }
            }
            best
        };
        self.memo.insert((e, ne), v);
        v
    }

    /// Whether the hider can force every pair to be probed.
    fn bob_wins(&mut self, e: u32, ne: u32, family: LargeFamily, memo: &mut HashMap<(u32, u32), bool>) -> bool {
        if let Some(&b) = memo.get(&(e, ne)) {
            return b;
        }
        let b = if self.settled(e, ne) {
            self.member(e | ne, family)
        } else {
            (0..self.pairs.len()).filter(|i| (e | ne) >> i & 1 == 0).all(|i| {
                let bit = 1 << i;
                self.bob_wins(e | bit, ne, family, memo) || self.bob_wins(e, ne | bit, family, memo)
            })
        };
        memo.insert((e, ne), b);
        b
    }

    /// Whether the seeker can force a finish outside the family.
    fn alice_wins(&mut self, e: u32, ne: u32, family: LargeFamily, memo: &mut HashMap<(u32, u32), bool>) -> bool {
        if let Some(&a) = memo.get(&(e, ne)) {
            return a;
        }
        let a = if self.settled(e, ne) {
            !self.member(e | ne, family)
        } else {
            (0..self.pairs.len()).filter(|i| (e | ne) >> i & 1 == 0).any(|i| {
                let bit = 1 << i;
                self.alice_wins(e | bit, ne, family, memo) && self.alice_wins(e, ne | bit, family, memo)
            })
        };
        memo.insert((e, ne), a);
        a
    }

    fn member(&self, probed: u32, family: LargeFamily) -> bool {
        let open = self.full() & !probed;
        match family {
            LargeFamily::AllPairs => open == 0,
            LargeFamily::SmallComplement(k) => {
                let span: BTreeSet<Vertex> =
                    (0..self.pairs.len()).filter(|i| open >> i & 1 == 1).flat_map(|i| [self.pairs[i].lo(), self.pairs[i].hi()]).collect();
                span.len() <= k
            }
            _ => unreachable!("finite families only"),
        }
    }
}

fn strong_elusiveness() -> Result<Tally> {
    let mut t = Tally::new();
    for property in [Property::Cycle, Property::Connected] {
        for n in 3..=5 {
            let total = n * (n - 1) / 2;
            let oracle = Minimax::new(&FiniteGraph::complete(n), property).value(0, 0);
            let solved = solver::decision_tree_complexity(property, n)?;
            t.check(oracle == total && solved == total, || {
                format!("{property} on K_{n}: oracle {oracle}, solver {solved}, pairs {total}")
            });
        }
    }
    t.notes.push("plain minimax and solver both give C(n,2) for n = 3, 4, 5".into());
    Ok(t)
}

// ---------------------------------------------------------------------------
// 4

const MEMO_PROPERTIES: [Property; 8] = [
    Property::Cycle,
    Property::Connected,
    Property::MinDegree(1),
    Property::MinDegree(2),
    Property::MinComponentSize(3),
    Property::ContainsP3,
    Property::ContainsClique(3),
    Property::NotBipartite,
];

fn memo_agreement() -> Result<Tally> {
    let mut t = Tally::new();
    let graphs: Vec<FiniteGraph> = (2..=5).flat_map(graphs_up_to_iso).filter(|g| g.edge_count() >= 1).collect();
    for g in &graphs {
        for property in MEMO_PROPERTIES {
            for family in [LargeFamily::AllPairs, LargeFamily::SmallComplement(2)] {
                let mut results = Vec::new();
                for memo in [MemoMode::Canonical, MemoMode::Raw, MemoMode::Off] {
                    let cfg = SolverConfig { memo, ..SolverConfig::default() };
                    results.push(solver::solve_with(g, property, family, cfg)?);
                }
                let tag = || format!("{} {property} {family}", graph6::encode(g));
                let agree = results.windows(2).all(|w| w[0] == w[1]);
                t.check(agree, || format!("{}: memo modes disagree", tag()));

                let mut oracle = Minimax::new(g, property);
                let bob = oracle.bob_wins(0, 0, family, &mut HashMap::new());
                let alice = oracle.alice_wins(0, 0, family, &mut HashMap::new());
                t.check(bob != alice, || format!("{}: bob {bob}, alice {alice}", tag()));
                let solver_bob = results[0].winner == Winner::Bob;
                t.check(solver_bob == bob, || format!("{}: solver says bob={solver_bob}", tag()));
                if family == LargeFamily::AllPairs {
                    let v = oracle.value(0, 0);
                    t.check(v == results[0].value, || format!("{}: value {} vs oracle {v}", tag(), results[0].value));
                }
            }
        }
    }
    t.notes.push(format!("{} graphs with ≤10 pairs × {} properties × 2 families", graphs.len(), MEMO_PROPERTIES.len()));
    Ok(t)
}

// ---------------------------------------------------------------------------
// 10

fn w_validators() -> Result<Tally> {
    let mut t = Tally::new();
    let k12 = FiniteGraph::complete(12);
    let wfs = [w_degree(1)?, w_degree(2)?, w_degree(3)?, w_component(2)?, w_component(3)?, w_component(4)?];
    for wf in wfs {
        let mut runs: Vec<(String, _)> = (1..=5).map(|n| (format!("exhaustive K_{n}"), validate_w_exhaustive(&wf, n))).collect();
        runs.push(("sampled K_12".into(), validate_w(&wf, &k12, 1000, SEED)));
        for (how, report) in runs {
            t.check(report.ok(), || {
                let (c, ex) = report.first_violation().expect("a violation");
                format!("{wf} {how}: {c} fails on {ex}")
            });
            let skipped: Vec<&str> = report
                .clauses
                .iter()
                .filter(|(_, s)| matches!(s, ClauseStatus::Skipped { .. }))
                .map(|(c, _)| c.as_str())
                .collect();
            if !skipped.is_empty() && wf == wfs[0] && how == "exhaustive K_5" {
                t.notes.push(format!("skipped clauses: {}", skipped.join(", ")));
            }
        }
    }
    Ok(t)
}

// ---------------------------------------------------------------------------
// 11

fn graph6_round_trip() -> Result<Tally> {
    let mut t = Tally::new();
    for n in 0..=5 {
        let pairs: Vec<Pair> = FiniteGraph::complete(n).edges().collect();
        for mask in 0u64..1 << pairs.len() {
            let g = graph_of(n, &pairs, mask);
            let text = graph6::encode(&g);
            let back = graph6::decode(&text)?;
            t.check(back == g, || format!("{text} decodes to a different graph"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..10_000 {
        let n = rng.gen_range(0..=40);
        let density = rng.gen_range(0.0..1.0);
        let g = random_graph(&mut rng, n, density);
        let text = graph6::encode(&g);
        let back = graph6::decode(&text)?;
        t.check(back == g, || format!("{text} decodes to a different graph"));
    }
    t.notes.push("all labelled graphs on ≤5 vertices + 10000 random graphs on ≤40".into());
    Ok(t)
}

// ---------------------------------------------------------------------------
// 5, 6: hiders on ω against random seekers

const OMEGA_GAMES: u64 = 100;
const OMEGA_FUEL: usize = 500;

/// Remembers which edges rule (a) produced.
struct LoggedDegree {
    inner: DegreeHider,
    rule_a: Vec<Pair>,
}

impl Hider for LoggedDegree {
    fn answer(&mut self, board: &Board, probe: Pair) -> Result<Answer> {
        if self.inner.rule_a(board, probe) {
            self.rule_a.push(probe);
        }
        self.inner.answer(board, probe)
    }
    fn name(&self) -> String {
        self.inner.name()
    }
}

/// Seed 0 probes column by column; the others are random on a starting
/// window of 4 to 32 vertices.
fn omega_seeker(seed: u64) -> Box<dyn Seeker> {
    if seed == 0 {
        Box::new(seeker_lexicographic())
    } else {
        Box::new(seeker_random(seed).with_window(4 << (seed % 4)))
    }
}

fn probed_degree(board: &Board, v: Vertex) -> usize {
    board.edges().iter().chain(board.nonedges()).filter(|p| p.contains(v)).count()
}

/// Both invariants only change at the endpoints of the last probe, and hold
/// before the first one, so checking those endpoints after every move covers
/// every vertex at every turn.
fn degree_invariants(board: &Board, n: usize, mv: &Move) -> Option<String> {
    for v in [mv.pair.lo(), mv.pair.hi()] {
        let de = board.degree_e(v);
        if v as usize >= n {
            let below = board.undetermined_below(v);
            if de + below < n {
                return Some(format!("turn {}: vertex {v} has d_E {de} + open-below {below} < {n}", mv.turn));
            }
        } else {
            let dp = probed_degree(board, v);
            if de < n.min(dp) {
                return Some(format!("turn {}: low vertex {v} has d_E {de} < min({n}, {dp})", mv.turn));
            }
        }
    }
    None
}

/// Past the last rule-(a) edge, greedy colouring of the open pairs among
/// vertices with an earlier E-neighbour yields a fully probed class.
fn degree_clique_bound(board: &Board, n: usize, rule_a: &[Pair]) -> std::result::Result<(usize, usize), String> {
    let j0 = rule_a.iter().map(|p| p.hi()).max().unwrap_or(0).max(n as Vertex);
    let a: Vec<Vertex> = board
        .edges()
        .iter()
        .map(|p| p.hi())
        .filter(|&j| j > j0)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut colour: HashMap<Vertex, usize> = HashMap::new();
    for &j in &a {
        let earlier: Vec<Vertex> = a.iter().copied().take_while(|&i| i < j).filter(|&i| board.is_undetermined(Pair::of(i, j))).collect();
        if earlier.len() > n {
            return Err(format!("vertex {j} has {} earlier open partners in A", earlier.len()));
        }
        let used: BTreeSet<usize> = earlier.iter().map(|i| colour[i]).collect();
        let c = (0..=n).find(|c| !used.contains(c)).expect("n + 1 colours suffice");
        colour.insert(j, c);
    }
    let mut classes = vec![Vec::new(); n + 1];
    for &j in &a {
        classes[colour[&j]].push(j);
    }
    let best = classes.iter().max_by_key(|c| c.len()).expect("n + 1 classes");
    for (x, &u) in best.iter().enumerate() {
        for &v in &best[x + 1..] {
            if board.is_undetermined(Pair::of(u, v)) {
                return Err(format!("class member pair {u}-{v} is open"));
            }
        }
    }
    let need = a.len().div_ceil(n + 1);
    if best.len() < need {
        return Err(format!("largest class {} < ⌈{}/{}⌉", best.len(), a.len(), n + 1));
    }
    Ok((a.len(), best.len()))
}

fn degree_hider() -> Result<Tally> {
    let mut t = Tally::new();
    let mut biggest = 0;
    let mut witnessed = 0;
    for n in 1..=3 {
        // one column-by-column seeker, then random ones on windows of
        // varying width so that some regions get probed densely
        for seed in 0..=OMEGA_GAMES {
            let cfg = GameConfig::new(AllowedGraphKind::CompleteOmega, Property::MinDegree(n)).with_fuel(OMEGA_FUEL);
            let mut hider = LoggedDegree { inner: hider_degree(n), rule_a: Vec::new() };
            let mut seeker = omega_seeker(seed);
            let mut broken = None;
            let (tr, board) = play_observed(seeker.as_mut(), &mut hider, &cfg, &mut |b, mv| {
                if broken.is_none() {
                    broken = degree_invariants(b, n, mv);
                }
                Ok(())
            })?;
            t.check(broken.is_none(), || format!("n={n} seed={seed}: {}", broken.clone().unwrap_or_default()));
            t.check(tr.winner != Winner::Alice, || format!("n={n} seed={seed}: the seeker settled the game"));
            match degree_clique_bound(&board, n, &hider.rule_a) {
                Ok((a, b)) => {
                    biggest = biggest.max(b);
                    witnessed += usize::from(a > 0);
                }
                Err(e) => t.check(false, || format!("n={n} seed={seed}: {e}")),
            }
        }
    }
    t.check(witnessed > 0, || "no game produced rule-(b) edges past the rule-(a) region".into());
    t.notes.push(format!(
        "{} games of {OMEGA_FUEL} probes; gmax degree counted below each vertex, ω-tail aside; {witnessed} with rule-(b) edges past the rule-(a) region; largest probed class {biggest}",
        3 * (OMEGA_GAMES + 1)
    ));
    Ok(t)
}

fn connect_hider() -> Result<Tally> {
    let mut t = Tally::new();
    for seed in 0..=OMEGA_GAMES {
        let cfg = GameConfig::new(AllowedGraphKind::CompleteOmega, Property::Connected).with_fuel(OMEGA_FUEL);
        let mut seeker = omega_seeker(seed);
        let mut broken = None;
        let (tr, _) = play_observed(seeker.as_mut(), &mut hider_connect(), &cfg, &mut |b, mv| {
            // only the components at the probe changed
            for v in [mv.pair.lo(), mv.pair.hi()] {
                let comp: Vec<Vertex> = b.gmin_component(v).into_iter().collect();
                for (x, &u) in comp.iter().enumerate() {
                    for &w in &comp[x + 1..] {
                        if broken.is_none() && b.is_undetermined(Pair::of(u, w)) {
                            broken = Some(format!("turn {}: {u}-{w} open inside a component", mv.turn));
                        }
                    }
                }
            }
            Ok(())
        })?;
        t.check(broken.is_none(), || format!("seed={seed}: {}", broken.clone().unwrap_or_default()));
        t.check(tr.winner != Winner::Alice, || format!("seed={seed}: the seeker settled the game"));
    }
    t.notes.push(format!("{} games of {OMEGA_FUEL} probes", OMEGA_GAMES + 1));
    Ok(t)
}

// ---------------------------------------------------------------------------
// 7

/// Largest m whose whole game tree is searched.
pub const STAR_EXHAUSTIVE_M: usize = 7;

fn open_span(board: &Board) -> usize {
    let Board::Finite(pg) = board else { return usize::MAX };
    pg.undetermined().flat_map(|p| [p.lo(), p.hi()]).collect::<BTreeSet<_>>().len()
}

fn star_hider() -> Result<Tally> {
    let mut t = Tally::new();
    let mut positions = 0;
    for m in 6..=10 {
        for n in 2..=3 {
            let property = Property::ContainsStar(n);
            let cfg = GameConfig::finite(FiniteGraph::complete(m), property).with_family(LargeFamily::SmallComplement(n));
            for seed in 0..OMEGA_GAMES {
                let mut hider = hider_star(n)?;
                let (tr, board) = play_observed(&mut seeker_random(seed), &mut hider, &cfg, &mut |_, _| Ok(()))?;
                let span = open_span(&board);
                t.check(span <= n && tr.winner == Winner::Bob, || {
                    format!("K_{m} n={n} seed={seed}: open pairs span {span} vertices")
                });
            }
            if m <= STAR_EXHAUSTIVE_M {
                positions += star_exhaustive(m, n, &mut t)?;
            }
        }
    }
    t.notes.push(format!(
        "{OMEGA_GAMES} random seekers per (m, n); every seeker for m ≤ {STAR_EXHAUSTIVE_M} ({positions} positions up to isomorphism)"
    ));
    Ok(t)
}

/// Every seeker against the star hider. The hider and the terminal test only
/// look at degrees, so positions are merged up to isomorphism.
fn star_exhaustive(m: usize, n: usize, t: &mut Tally) -> Result<usize> {
    let property = Property::ContainsStar(n);
    let mut seen = HashSet::new();
    let mut stack = vec![FinitePregraph::new(FiniteGraph::complete(m))];
    while let Some(pg) = stack.pop() {
        if !seen.insert(canon::canonical_key(&pg)?) {
            continue;
        }
        let board = Board::Finite(pg);
        if board.terminal_status(property)? != TerminalStatus::Open {
            let span = open_span(&board);
            t.check(span <= n, || format!("K_{m} n={n}: a seeker leaves open pairs on {span} vertices"));
            continue;
        }
        let Board::Finite(pg) = &board else { unreachable!() };
        for p in pg.undetermined().collect::<Vec<_>>() {
            let a = hider_star(n)?.answer(&board, p)?;
            let mut next = pg.clone();
            next.determine(p, a)?;
            stack.push(next);
        }
    }
    Ok(seen.len())
}

// ---------------------------------------------------------------------------
// 8

/// Random pair among `0..bound` avoiding `skip`.
fn random_pair(rng: &mut impl Rng, bound: Vertex, skip: &[Vertex]) -> Pair {
    loop {
        let (u, v) = (rng.gen_range(0..bound), rng.gen_range(0..bound));
        if u != v && !skip.contains(&u) && !skip.contains(&v) {
            return Pair::of(u, v);
        }
    }
}

fn random_triple(rng: &mut impl Rng) -> (Vertex, Vertex, Vertex) {
    loop {
        let (s, t, b) = (rng.gen_range(0..16), rng.gen_range(0..16), rng.gen_range(0..16));
        if s != t && t != b && s != b {
            return (s, t, b);
        }
    }
}

/// 25 scorpions with random edits away from the pattern and 25 graphs that
/// are not, half of them one edit away from a scorpion.
pub fn scorpion_corpus(seed: u64) -> Result<Vec<HiddenTemplate>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..25 {
        let (s, t, b) = random_triple(&mut rng);
        let mut add = Vec::new();
        let mut del = Vec::new();
        for _ in 0..rng.gen_range(0..=5) {
            let p = random_pair(&mut rng, 24, &[s, t, b]);
            if rng.gen_bool(0.5) {
                add.push(p)
            } else {
                del.push(p)
            }
        }
        out.push(HiddenTemplate::new(Base::ScorpionPattern { s, t, b })?.with_edits(add, del));
    }
    for base in [
        Base::Complete,
        Base::Empty,
        Base::BlockCliques(2),
        Base::BlockCliques(3),
        Base::BlockCliques(5),
        Base::BlockCliques(10),
        Base::StarCenters(BTreeSet::from([0])),
        Base::StarCenters(BTreeSet::from([7])),
    ] {
        out.push(HiddenTemplate::new(base)?);
    }
    for i in 0..17 {
        let (s, t, b) = random_triple(&mut rng);
        let x = loop {
            let x = rng.gen_range(0..24);
            if ![s, t, b].contains(&x) {
                break x;
            }
        };
        let (add, del) = match i % 6 {
            0 => (vec![], vec![Pair::of(b, x)]),
            1 => (vec![Pair::of(s, x)], vec![]),
            2 => (vec![Pair::of(t, x)], vec![]),
            3 => (vec![], vec![Pair::of(s, t)]),
            4 => (vec![], vec![Pair::of(t, b)]),
            _ => (vec![Pair::of(s, b)], vec![]),
        };
        out.push(HiddenTemplate::new(Base::ScorpionPattern { s, t, b })?.with_edits(add, del));
    }
    Ok(out)
}

fn scorpion_seeker() -> Result<Tally> {
    let mut t = Tally::new();
    let start = Instant::now();
    let mut yes = 0;
    let mut widest = 0;
    for hidden in scorpion_corpus(SEED)? {
        let cfg = OmegaConfig::new(AllowedGraphKind::CompleteOmega, hidden.clone(), Objective::Scorpion)
            .with_family(LargeFamily::JN(5))
            .with_fuel(100_000);
        let tr = play_omega(&mut seeker_scorpion(), &cfg)?;
        if tr.ground_truth == Some(true) {
            yes += 1;
        }
        let omega = tr.infinite_degree.as_ref().map(Vec::len);
        if let Some(w) = omega {
            widest = widest.max(w);
        }
        t.check(tr.verdict.is_some() && tr.verdict == tr.ground_truth && omega.is_some_and(|w| w <= 4), || {
            format!("{hidden}: {:?} verdict {:?} truth {:?} ω {:?} {}", tr.outcome, tr.verdict, tr.ground_truth, omega, tr.note.clone().unwrap_or_default())
        });
    }
    t.check(yes == 25, || format!("corpus has {yes} scorpions, expected 25"));
    let secs = start.elapsed().as_secs_f64();
    t.check(secs <= 120.0, || format!("took {secs:.0}s, limit 120s"));
    t.notes.push(format!("{yes} scorpions / {} others; at most {widest} vertices of infinite degree", t.checked - 2 - yes));
    Ok(t)
}

// ---------------------------------------------------------------------------
// 9

pub const BRAIDED_CORPUS: [&str; 10] = [
    "complete",
    "empty",
    "blocks:2",
    "blocks:3",
    "blocks:5",
    "stars:0",
    "modk:2",
    "modk:3",
    "complete;del=0-1",
    "empty;add=0-1,1-2",
];

fn braided_seeker() -> Result<Tally> {
    let mut t = Tally::new();
    let boards = [AllowedGraphKind::CompleteOmega, AllowedGraphKind::Turan(2), AllowedGraphKind::Turan(3), AllowedGraphKind::Cantor];
    let wfs = [WFunction::Degree(1), WFunction::Degree(2), w_component(2)?, w_component(3)?];
    let mut truths = [0usize; 2];
    for allowed in &boards {
        for wf in wfs {
            for h in BRAIDED_CORPUS {
                let hidden: HiddenTemplate = h.parse()?;
                let cfg = OmegaConfig::new(allowed.clone(), hidden, Objective::W(wf));
                let tr = play_omega(&mut seeker_braided_w(wf, allowed)?, &cfg)?;
                if let Some(g) = tr.ground_truth {
                    truths[g as usize] += 1;
                }
                let settled = matches!(tr.outcome, OmegaOutcome::ForcedTrue | OmegaOutcome::ForcedFalse);
                t.check(settled && tr.verdict == tr.ground_truth && tr.unprobed_witness.is_some(), || {
                    format!("{allowed} {wf} {h}: {:?} verdict {:?} truth {:?} {}", tr.outcome, tr.verdict, tr.ground_truth, tr.note.clone().unwrap_or_default())
                });
            }
        }
    }
    t.notes.push(format!("{} games ({} true, {} false), each ended with an allowed pair unprobed", t.checked, truths[1], truths[0]));
    Ok(t)
}
