//! Seeded verification suites behind `coop verify`.
//!
//! Trial `t` of a run with seed `s` draws from `ChaCha8Rng::seed_from_u64(s + t)` on a stream
//! chosen per check, so `--seed s+t --trials 1` replays that trial alone.

use std::fmt::Write as _;

use clap::ValueEnum;
use coop_operad::classes::{
    is_balanced, is_capacity, is_k_alternating, is_k_monotone, is_monotone, is_nonnegative,
    is_normalized, is_simple,
};
use coop_operad::io::{allocation_to_value, game_to_value};
use coop_operad::operad::{
    bargaining, check_operad_axioms, coalition_compose, dictator, generator_span_rank, one,
    partial_compose_unanimity, partial_tensor, v_empty,
};
use coop_operad::random::*;
use coop_operad::solutions::{
    composite_banzhaf_rhs, composite_order, composite_shapley, core_contains, core_is_empty,
    core_point_minimizing, imputation_vertices, is_imputation, marginal_vector, shapley,
    shapley_by_permutations, split_tensor, BanzhafVariant,
};
use coop_operad::{
    partial_compose, partial_compose_nongrounded, Allocation, Coalition, Game, GameError,
    Permutation, PlayerSet, Rational,
};
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Axioms,
    Closure,
    Duality,
    Mobius,
    ShapleyComposite,
    BanzhafComposite,
    CoreTensor,
    Comtriass,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Closure => "closure",
            Suite::Duality => "duality",
            Suite::Mobius => "mobius",
            Suite::ShapleyComposite => "shapley-composite",
            Suite::BanzhafComposite => "banzhaf-composite",
            Suite::CoreTensor => "core-tensor",
            Suite::Comtriass => "comtriass",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GameClass {
    Normalized,
    SimpleMonotone,
    Capacity,
    Convex,
    KMonotone,
    KAlternating,
    Balanced,
    /// Every class above, with k-monotone at k = 3 and 4 and k-alternating at k = 3.
    All,
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub trials: usize,
    pub seed: u64,
    pub class: GameClass,
    pub k: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            trials: 100,
            seed: 0,
            class: GameClass::All,
            k: 3,
        }
    }
}

/// Tally of one identity over a batch of trials.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    /// Failures of a hard check are invariant violations; soft checks only report.
    pub hard: bool,
    pub trials: usize,
    pub passed: usize,
    pub skipped: usize,
    pub fixtures: Vec<Value>,
}

impl Check {
    pub fn failed(&self) -> usize {
        self.trials - self.passed - self.skipped
    }

    pub fn ok(&self) -> bool {
        self.failed() == 0
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub checks: Vec<Check>,
    /// Per-instance records kept by report-only suites.
    pub instances: Vec<Value>,
}

impl SuiteReport {
    pub fn violation(&self) -> bool {
        self.checks.iter().any(|c| c.hard && !c.ok())
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_value(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "hard": c.hard,
                    "trials": c.trials,
                    "passed": c.passed,
                    "skipped": c.skipped,
                    "failed": c.failed(),
                    "fixtures": c.fixtures,
                })
            })
            .collect();
        let mut out = json!({
            "suite": self.suite.name(),
            "seed": self.seed,
            "status": if self.violation() { "violation" } else { "pass" },
            "checks": checks,
        });
        if !self.instances.is_empty() {
            out["instances"] = Value::Array(self.instances.clone());
        }
        out
    }

    pub fn to_table(&self) -> String {
        let mut out = format!("suite {} (seed {})\n", self.suite.name(), self.seed);
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let status = match (c.ok(), c.hard) {
                (true, _) => "pass",
                (false, true) => "FAIL",
                (false, false) => "mismatch (report only)",
            };
            let _ = writeln!(
                out,
                "  {:<width$}  {:>4}/{:<4} skipped {:<4} {status}",
                c.name, c.passed, c.trials, c.skipped
            );
        }
        for fixture in self.checks.iter().flat_map(|c| &c.fixtures) {
            let _ = writeln!(out, "  fixture: {fixture}");
        }
        out
    }
}

/// Result of one trial.
pub enum Outcome {
    Pass,
    /// Preconditions of the identity were not met by the sample.
    Skip,
    Fail(Value),
}

type TrialResult = Result<Outcome, GameError>;

fn fail_unless(holds: bool, detail: impl FnOnce() -> Value) -> Outcome {
    if holds {
        Outcome::Pass
    } else {
        Outcome::Fail(detail())
    }
}

fn trial_rng(seed: u64, trial: usize, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(trial as u64));
    rng.set_stream(stream);
    rng
}

fn tally(
    suite: Suite,
    name: &str,
    hard: bool,
    seed: u64,
    outcomes: Vec<(usize, TrialResult)>,
) -> Check {
    let mut check = Check {
        name: name.to_string(),
        hard,
        trials: outcomes.len(),
        passed: 0,
        skipped: 0,
        fixtures: Vec::new(),
    };
    for (trial, outcome) in outcomes {
        let detail = match outcome {
            Ok(Outcome::Pass) => {
                check.passed += 1;
                continue;
            }
            Ok(Outcome::Skip) => {
                check.skipped += 1;
                continue;
            }
            Ok(Outcome::Fail(detail)) => detail,
            Err(e) => json!({ "error": e.to_string() }),
        };
        let replay_seed = seed.wrapping_add(trial as u64);
        check.fixtures.push(json!({
            "suite": suite.name(),
            "check": name,
            "seed": seed,
            "trial": trial,
            "replay": format!("coop verify {} --seed {replay_seed} --trials 1", suite.name()),
            "detail": detail,
        }));
    }
    check
}

/// Runs `body` on `trials` independent seeded generators in parallel; results keep trial order.
fn seeded<F>(
    suite: Suite,
    name: &str,
    hard: bool,
    config: &SuiteConfig,
    stream: u64,
    body: F,
) -> Check
where
    F: Fn(&mut ChaCha8Rng) -> TrialResult + Sync,
{
    let outcomes = (0..config.trials)
        .into_par_iter()
        .map(|t| (t, body(&mut trial_rng(config.seed, t, stream))))
        .collect();
    tally(suite, name, hard, config.seed, outcomes)
}

/// Deterministic cases, one per element of `cases`.
fn exhaustive<T, F>(suite: Suite, name: &str, cases: Vec<T>, body: F) -> Check
where
    T: Send,
    F: Fn(T) -> TrialResult + Sync,
{
    let outcomes = cases
        .into_par_iter()
        .enumerate()
        .map(|(t, case)| (t, body(case)))
        .collect();
    tally(suite, name, true, 0, outcomes)
}

fn shuffled(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    order
}

fn games_value(games: &[(&str, &Game)]) -> Value {
    Value::Object(
        games
            .iter()
            .map(|(k, g)| (k.to_string(), game_to_value(g)))
            .collect(),
    )
}

fn pair_detail(a: &Game, i: usize, b: &Game) -> Value {
    json!({ "host": game_to_value(a), "at": a.players().label(i), "guest": game_to_value(b) })
}

pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Result<SuiteReport, GameError> {
    if matches!(config.class, GameClass::KMonotone | GameClass::KAlternating) && config.k < 2 {
        return Err(GameError::BadK(config.k));
    }
    let (checks, instances) = match suite {
        Suite::Axioms => (axioms(config), Vec::new()),
        Suite::Closure => (closure(config), Vec::new()),
        Suite::Duality => (duality(config), Vec::new()),
        Suite::Mobius => (mobius(config), Vec::new()),
        Suite::ShapleyComposite => (shapley_composite(config), Vec::new()),
        Suite::BanzhafComposite => banzhaf_composite(config),
        Suite::CoreTensor => (core_tensor(config), Vec::new()),
        Suite::Comtriass => (comtriass(), Vec::new()),
    };
    Ok(SuiteReport {
        suite,
        seed: config.seed,
        checks,
        instances,
    })
}

fn axioms(config: &SuiteConfig) -> Vec<Check> {
    let suite = Suite::Axioms;
    let random = seeded(
        suite,
        "operad axioms on random triples",
        true,
        config,
        1,
        |rng| {
            let (p, q, r) = (
                rng.gen_range(1..=3),
                rng.gen_range(1..=3),
                rng.gen_range(0..=3),
            );
            let (lambda, mu, nu) = (
                random_game(rng, p),
                random_game(rng, q),
                random_game(rng, r),
            );
            let (i, j) = (rng.gen_range(0..p), rng.gen_range(0..q));
            let k = (i + 1 < p).then(|| rng.gen_range(i + 1..p));
            let (sigma, tau) = (
                Permutation::new(shuffled(rng, q))?,
                Permutation::new(shuffled(rng, p))?,
            );
            let report = check_operad_axioms(&lambda, &mu, &nu, i, j, k, &sigma, &tau)?;
            Ok(fail_unless(report.all_hold(), || {
                json!({
                    "games": games_value(&[("lambda", &lambda), ("mu", &mu), ("nu", &nu)]),
                    "i": i, "j": j, "k": k, "sigma": sigma.images(), "tau": tau.images(),
                    "failures": serde_json::to_value(report.failures().collect::<Vec<_>>()).unwrap_or(Value::Null),
                })
            }))
        },
    );
    let mut cases = Vec::new();
    for n in 1..=4usize {
        for m in 0..=4usize {
            for s in Coalition::all(n).skip(1) {
                for t in Coalition::all(m) {
                    for i in 0..n {
                        cases.push((n, m, s, t, i));
                    }
                }
            }
        }
    }
    let basis = exhaustive(
        suite,
        "unanimity games compose by coalition insertion",
        cases,
        |(n, m, s, t, i)| {
            let guest = PlayerSet::new((1..=m).map(|k| format!("b{k}")))?;
            let us = Game::unanimity(PlayerSet::numbered(n), s)?;
            let ut = unanimity_or_constant(guest, t)?;
            let composite = partial_compose(&us, i, &ut)?;
            let expected = unanimity_or_constant(
                composite.players().clone(),
                coalition_compose(s, n, i, t, m)?,
            )?;
            Ok(fail_unless(
                composite == expected,
                || json!({ "n": n, "m": m, "S": s.to_string(), "T": t.to_string(), "i": i + 1 }),
            ))
        },
    );
    vec![random, basis]
}

/// `u_∅` is the constant game 1, which is not grounded.
fn unanimity_or_constant(players: PlayerSet, s: Coalition) -> Result<Game, GameError> {
    if s.is_empty() {
        Game::from_fn(players, |_| Rational::from_integer(1.into()))
    } else {
        Game::unanimity(players, s)
    }
}

fn closure_check(
    config: &SuiteConfig,
    name: &str,
    stream: u64,
    generate: impl Fn(&mut ChaCha8Rng, usize) -> Game + Sync,
    member: impl Fn(&Game) -> Result<bool, GameError> + Sync,
) -> Check {
    seeded(Suite::Closure, name, true, config, stream, |rng| {
        let (n, m) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let (a, b) = (generate(rng, n), generate(rng, m));
        if !member(&a)? || !member(&b)? {
            return Ok(Outcome::Fail(
                json!({ "generator left the class": games_value(&[("host", &a), ("guest", &b)]) }),
            ));
        }
        let i = rng.gen_range(0..n);
        let composite = partial_compose(&a, i, &b)?;
        Ok(fail_unless(member(&composite)?, || pair_detail(&a, i, &b)))
    })
}

fn closure(config: &SuiteConfig) -> Vec<Check> {
    let mut checks = Vec::new();
    let wanted = |class: GameClass| config.class == GameClass::All || config.class == class;
    if wanted(GameClass::Normalized) {
        checks.push(closure_check(
            config,
            "normalized",
            1,
            random_normalized,
            |g| Ok(is_normalized(g)),
        ));
    }
    if wanted(GameClass::SimpleMonotone) {
        checks.push(closure_check(
            config,
            "simple monotone",
            2,
            random_simple_monotone,
            |g| Ok(is_simple(g) && is_monotone(g)),
        ));
    }
    if wanted(GameClass::Capacity) {
        checks.push(closure_check(config, "capacity", 3, random_capacity, |g| {
            Ok(is_capacity(g))
        }));
    }
    if wanted(GameClass::Convex) {
        checks.push(closure_check(
            config,
            "convex non-negative",
            4,
            random_convex,
            |g| Ok(is_k_monotone(g, 2)? && is_nonnegative(g)),
        ));
    }
    let monotone_ks: Vec<usize> = match config.class {
        GameClass::All => vec![3, 4],
        GameClass::KMonotone => vec![config.k],
        _ => Vec::new(),
    };
    for k in monotone_ks {
        checks.push(closure_check(
            config,
            &format!("{k}-monotone non-negative"),
            5 + k as u64,
            move |rng, n| random_k_monotone(rng, n, k),
            move |g| Ok(is_k_monotone(g, k)? && is_nonnegative(g)),
        ));
    }
    let alternating_ks: Vec<usize> = match config.class {
        GameClass::All => vec![3],
        GameClass::KAlternating => vec![config.k],
        _ => Vec::new(),
    };
    for k in alternating_ks {
        checks.push(closure_check(
            config,
            &format!("{k}-alternating non-negative monotone"),
            100 + k as u64,
            move |rng, n| random_k_alternating(rng, n, k),
            move |g| Ok(is_k_alternating(g, k)? && is_capacity(g)),
        ));
    }
    if wanted(GameClass::Balanced) {
        checks.push(closure_check(
            config,
            "balanced non-negative monotone",
            200,
            |rng, n| random_balanced(rng, n).0,
            |g| Ok(is_balanced(g)? && is_capacity(g)),
        ));
    }
    checks
}

fn duality(config: &SuiteConfig) -> Vec<Check> {
    let suite = Suite::Duality;
    let compose = seeded(
        suite,
        "dual of a composite is the composite of duals",
        true,
        config,
        1,
        |rng| {
            let (n, m) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            let (a, b, i) = (
                random_game(rng, n),
                random_game(rng, m),
                rng.gen_range(0..n),
            );
            let lhs = partial_compose(&a, i, &b)?.dual();
            let rhs = partial_compose(&a.dual(), i, &b.dual())?;
            Ok(fail_unless(lhs == rhs, || pair_detail(&a, i, &b)))
        },
    );
    let involution = seeded(
        suite,
        "dual is an involution on grounded games",
        true,
        config,
        2,
        |rng| {
            let n = rng.gen_range(0..=5);
            let g = random_game(rng, n);
            Ok(fail_unless(
                g.dual().dual() == g,
                || json!({ "game": game_to_value(&g) }),
            ))
        },
    );
    let exchange = seeded(
        suite,
        "k-alternating is k-monotone of the dual",
        true,
        config,
        3,
        |rng| {
            let n = rng.gen_range(2..=4);
            let k = rng.gen_range(2..=n);
            let g = match rng.gen_range(0..3) {
                0 => random_k_monotone(rng, n, k),
                1 => random_k_alternating(rng, n, k),
                _ => random_game(rng, n),
            };
            Ok(fail_unless(
                is_k_alternating(&g, k)? == is_k_monotone(&g.dual(), k)?,
                || json!({ "game": game_to_value(&g), "k": k }),
            ))
        },
    );
    vec![compose, involution, exchange]
}

fn mobius(config: &SuiteConfig) -> Vec<Check> {
    let suite = Suite::Mobius;
    let inverse = seeded(suite, "zeta inverts mobius", true, config, 1, |rng| {
        let n = rng.gen_range(0..=8);
        let g = random_ungrounded_game(rng, n);
        Ok(fail_unless(
            g.mobius().zeta() == g,
            || json!({ "game": game_to_value(&g) }),
        ))
    });
    let basis = seeded(
        suite,
        "mobius intertwines the two compositions",
        true,
        config,
        2,
        |rng| {
            let (n, m) = (rng.gen_range(1..=3), rng.gen_range(0..=3));
            let (a, b, i) = (
                random_ungrounded_game(rng, n),
                random_ungrounded_game(rng, m),
                rng.gen_range(0..n),
            );
            let lhs = partial_compose(&a, i, &b)?.mobius();
            let rhs = partial_compose_unanimity(&a.mobius(), i, &b.mobius())?;
            Ok(fail_unless(lhs == rhs, || pair_detail(&a, i, &b)))
        },
    );
    vec![inverse, basis]
}

fn shapley_composite(config: &SuiteConfig) -> Vec<Check> {
    let suite = Suite::ShapleyComposite;
    let composite = seeded(suite, "composite shapley formula", true, config, 1, |rng| {
        let (n, m) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let (a, b, i) = (
            random_normalized(rng, n),
            random_normalized(rng, m),
            rng.gen_range(0..n),
        );
        let direct = shapley(&partial_compose(&a, i, &b)?);
        Ok(fail_unless(composite_shapley(&a, i, &b)? == direct, || {
            pair_detail(&a, i, &b)
        }))
    });
    let oracle = seeded(
        suite,
        "mobius shapley equals the permutation average",
        true,
        config,
        2,
        |rng| {
            let n = rng.gen_range(0..=5);
            let g = random_game(rng, n);
            Ok(fail_unless(
                shapley(&g) == shapley_by_permutations(&g)?,
                || json!({ "game": game_to_value(&g) }),
            ))
        },
    );
    let marginal = seeded(suite, "marginal vectors compose", true, config, 3, |rng| {
        let (n, m) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let (a, b, i) = (
            random_game(rng, n),
            random_game(rng, m),
            rng.gen_range(0..n),
        );
        let (sigma, tau) = (shuffled(rng, n), shuffled(rng, m));
        let lhs = partial_tensor(
            &marginal_vector(&a, &sigma)?,
            i,
            &marginal_vector(&b, &tau)?,
        )?;
        let rhs = marginal_vector(
            &partial_compose(&a, i, &b)?,
            &composite_order(&sigma, i, &tau),
        )?;
        Ok(fail_unless(
            lhs == rhs,
            || json!({ "pair": pair_detail(&a, i, &b), "sigma": sigma, "tau": tau }),
        ))
    });
    vec![composite, oracle, marginal]
}

struct BanzhafInstance {
    regime: &'static str,
    trial: usize,
    host: Game,
    at: usize,
    guest: Game,
    lhs: Allocation,
    rhs: Allocation,
}

/// The d₁ ∘₁ B instance, where the three Banzhaf quantities all differ.
pub fn banzhaf_discrepancy_fixture() -> Result<Value, GameError> {
    let (d1, b) = (dictator(1)?, bargaining());
    let composite = partial_compose(&d1, 0, &b)?;
    Ok(json!({
        "host": game_to_value(&d1),
        "at": d1.players().label(0),
        "guest": game_to_value(&b),
        "composite": game_to_value(&composite),
        "banzhaf": allocation_to_value(&coop_operad::solutions::banzhaf(&composite)),
        "banzhaf_unanimity_scaled": allocation_to_value(&coop_operad::solutions::banzhaf_unanimity_scaled(&composite)),
        "rhs": allocation_to_value(&composite_banzhaf_rhs(&d1, 0, &b, BanzhafVariant::UnanimityScaled, true)?),
    }))
}

fn banzhaf_composite(config: &SuiteConfig) -> (Vec<Check>, Vec<Value>) {
    let suite = Suite::BanzhafComposite;
    let regimes: [(&'static str, u64, BanzhafVariant, bool); 4] = [
        (
            "additive guest, standard form, no divisor",
            1,
            BanzhafVariant::Standard,
            false,
        ),
        ("single-player guest", 2, BanzhafVariant::Standard, true),
        (
            "general, standard form with divisor",
            3,
            BanzhafVariant::Standard,
            true,
        ),
        (
            "general, unanimity-scaled form with divisor",
            4,
            BanzhafVariant::UnanimityScaled,
            true,
        ),
    ];
    let mut checks = Vec::new();
    let mut instances = Vec::new();
    for (regime, stream, variant, divide) in regimes {
        let draws: Vec<Result<BanzhafInstance, GameError>> = (0..config.trials)
            .into_par_iter()
            .map(|trial| {
                let mut rng = trial_rng(config.seed, trial, stream);
                let n = rng.gen_range(1..=3);
                let host = random_game(&mut rng, n);
                let m = if stream == 2 { 1 } else { rng.gen_range(1..=3) };
                let guest = if stream == 1 {
                    random_additive(&mut rng, m, true)
                } else {
                    random_game(&mut rng, m)
                };
                let at = rng.gen_range(0..n);
                let lhs = variant.evaluate(&partial_compose(&host, at, &guest)?);
                let rhs = composite_banzhaf_rhs(&host, at, &guest, variant, divide)?;
                Ok(BanzhafInstance {
                    regime,
                    trial,
                    host,
                    at,
                    guest,
                    lhs,
                    rhs,
                })
            })
            .collect();
        let mut outcomes = Vec::new();
        for (trial, draw) in draws.into_iter().enumerate() {
            let outcome = draw.map(|inst| {
                let matched = inst.lhs == inst.rhs;
                instances.push(json!({
                    "regime": inst.regime,
                    "trial": inst.trial,
                    "lhs": allocation_to_value(&inst.lhs),
                    "rhs": allocation_to_value(&inst.rhs),
                    "match": matched,
                }));
                fail_unless(matched, || {
                    json!({
                        "pair": pair_detail(&inst.host, inst.at, &inst.guest),
                        "lhs": allocation_to_value(&inst.lhs),
                        "rhs": allocation_to_value(&inst.rhs),
                    })
                })
            });
            outcomes.push((trial, outcome));
        }
        checks.push(tally(suite, regime, false, config.seed, outcomes));
    }
    let fixture = banzhaf_discrepancy_fixture().map(|detail| {
        let c = &detail;
        let differs = c["banzhaf"] != c["rhs"] && c["banzhaf_unanimity_scaled"] != c["rhs"];
        fail_unless(!differs, || detail.clone())
    });
    checks.push(tally(
        suite,
        "stated formula at d1 o1 B",
        false,
        config.seed,
        vec![(0, fixture)],
    ));
    (checks, instances)
}

fn zero_singletons(g: &Game, players: impl Fn(usize) -> bool) -> Result<Game, GameError> {
    Game::from_fn(g.players().clone(), |s| match s.members().next() {
        Some(k) if s.len() == 1 && players(k) => Rational::zero(),
        _ => g.value(s).clone(),
    })
}

fn core_tensor(config: &SuiteConfig) -> Vec<Check> {
    let suite = Suite::CoreTensor;
    let tensor = seeded(
        suite,
        "tensor of core points lies in the composite core",
        true,
        config,
        1,
        |rng| {
            let (n, m) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            let ((a, x), (b, y)) = (random_balanced(rng, n), random_balanced(rng, m));
            let i = rng.gen_range(0..n);
            let z = partial_tensor(&x, i, &y)?;
            Ok(fail_unless(
                core_contains(&partial_compose(&a, i, &b)?, &z)?,
                || json!({ "pair": pair_detail(&a, i, &b), "x": allocation_to_value(&x), "y": allocation_to_value(&y) }),
            ))
        },
    );
    let imputations = seeded(
        suite,
        "tensor of imputations is an imputation",
        true,
        config,
        2,
        |rng| {
            let (n, m) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            let (a, b, i) = (
                random_capacity(rng, n),
                random_capacity(rng, m),
                rng.gen_range(0..n),
            );
            let (sa, sb) = (imputation_vertices(&a)?, imputation_vertices(&b)?);
            let (Some(x), Some(y)) = (sa.vertices.choose(rng), sb.vertices.choose(rng)) else {
                return Ok(Outcome::Skip);
            };
            let z = partial_tensor(x, i, y)?;
            Ok(fail_unless(
                is_imputation(&partial_compose(&a, i, &b)?, &z)?,
                || pair_detail(&a, i, &b),
            ))
        },
    );
    let decompose = seeded(
        suite,
        "composite core points split",
        true,
        config,
        3,
        |rng| {
            let (n, m) = (rng.gen_range(1..=3), rng.gen_range(2..=3));
            let i = rng.gen_range(0..n);
            let a = zero_singletons(&random_balanced(rng, n).0, |k| k == i)?;
            let b = zero_singletons(&random_balanced(rng, m).0, |_| true)?;
            if !b.grand_value().is_positive() {
                return Ok(Outcome::Skip);
            }
            let composite = partial_compose(&a, i, &b)?;
            let objective: Vec<Rational> = (0..composite.n())
                .map(|_| small_rational(rng, 3, true))
                .collect();
            let Some(z) = core_point_minimizing(&composite, &objective)? else {
                return Ok(Outcome::Fail(
                    json!({ "empty composite core": pair_detail(&a, i, &b) }),
                ));
            };
            let fallback = imputation_vertices(&b)?.vertices[0].clone();
            let (x, y) = split_tensor(&z, a.players(), i, b.players(), b.grand_value(), &fallback)?;
            let holds =
                core_contains(&a, &x)? && is_imputation(&b, &y)? && partial_tensor(&x, i, &y)? == z;
            Ok(fail_unless(
                holds,
                || json!({ "pair": pair_detail(&a, i, &b), "z": allocation_to_value(&z) }),
            ))
        },
    );
    let propagate = seeded(
        suite,
        "empty host cores stay empty",
        true,
        config,
        4,
        |rng| {
            let (n, m) = (rng.gen_range(2..=3), rng.gen_range(2..=3));
            let i = rng.gen_range(0..n);
            let a = zero_singletons(&random_capacity(rng, n), |k| k == i)?;
            let b = zero_singletons(&random_capacity(rng, m), |_| true)?;
            if !core_is_empty(&a)? || !b.grand_value().is_positive() {
                return Ok(Outcome::Skip);
            }
            Ok(fail_unless(
                core_is_empty(&partial_compose(&a, i, &b)?)?,
                || pair_detail(&a, i, &b),
            ))
        },
    );
    vec![tensor, imputations, decompose, propagate]
}

fn swap() -> Permutation {
    Permutation::transposition(2, 0, 1)
}

/// The relations among bargaining and dictator images, and the generator span dimension.
pub fn comtriass() -> Vec<Check> {
    let suite = Suite::Comtriass;
    let relation =
        |name: &str, sides: fn() -> Result<(Game, Game), GameError>, expect_equal: bool| {
            let outcome = sides().map(|(lhs, rhs)| {
                fail_unless(lhs.same_values(&rhs) == expect_equal, || {
                    games_value(&[("lhs", &lhs), ("rhs", &rhs)])
                })
            });
            tally(suite, name, true, 0, vec![(0, outcome)])
        };
    let mut checks = vec![
        relation(
            "B o1 B = B o2 B",
            || {
                Ok((
                    partial_compose(&bargaining(), 0, &bargaining())?,
                    partial_compose(&bargaining(), 1, &bargaining())?,
                ))
            },
            true,
        ),
        relation(
            "d1 o1 d1 = d1 o2 d1",
            || {
                Ok((
                    partial_compose(&dictator(1)?, 0, &dictator(1)?)?,
                    partial_compose(&dictator(1)?, 1, &dictator(1)?)?,
                ))
            },
            true,
        ),
        relation(
            "d1 o2 d1 = d1 o2 (swap d1)",
            || {
                Ok((
                    partial_compose(&dictator(1)?, 1, &dictator(1)?)?,
                    partial_compose(&dictator(1)?, 1, &dictator(1)?.permute(&swap())?)?,
                ))
            },
            true,
        ),
        relation(
            "d1 o2 B = d1 o2 d1",
            || {
                Ok((
                    partial_compose(&dictator(1)?, 1, &bargaining())?,
                    partial_compose(&dictator(1)?, 1, &dictator(1)?)?,
                ))
            },
            true,
        ),
        relation(
            "d1 o1 B = B o2 d1",
            || {
                Ok((
                    partial_compose(&dictator(1)?, 0, &bargaining())?,
                    partial_compose(&bargaining(), 1, &dictator(1)?)?,
                ))
            },
            true,
        ),
        relation(
            "B o1 v_empty = 1",
            || {
                Ok((
                    partial_compose_nongrounded(&bargaining(), 0, &v_empty())?,
                    one(),
                ))
            },
            true,
        ),
        relation(
            "d1 o2 v_empty = 0",
            || {
                Ok((
                    partial_compose_nongrounded(&dictator(1)?, 1, &v_empty())?,
                    Game::zero(PlayerSet::numbered(1)),
                ))
            },
            true,
        ),
        relation(
            "d2 is not permutative",
            || {
                Ok((
                    partial_compose(&dictator(2)?, 1, &dictator(2)?)?,
                    partial_compose(&dictator(2)?, 1, &dictator(2)?.permute(&swap())?)?,
                ))
            },
            false,
        ),
    ];
    let ranks = exhaustive(
        suite,
        "generator span has dimension 2^n - 1",
        vec![2usize, 3, 4],
        |n| {
            let rank = generator_span_rank(n)?;
            Ok(fail_unless(
                rank == (1 << n) - 1,
                || json!({ "n": n, "rank": rank }),
            ))
        },
    );
    checks.push(ranks);
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(trials: usize) -> SuiteConfig {
        SuiteConfig {
            trials,
            seed: 7,
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn reports_are_reproducible() {
        let a = run_suite(Suite::Duality, &small(10)).unwrap().to_value();
        let b = run_suite(Suite::Duality, &small(10)).unwrap().to_value();
        assert_eq!(a, b);
    }

    #[test]
    fn comtriass_relations_hold() {
        let checks = comtriass();
        assert!(checks.iter().all(Check::ok), "{checks:?}");
    }

    #[test]
    fn failing_trials_become_fixtures() {
        let outcomes = vec![
            (0, Ok(Outcome::Pass)),
            (1, Ok(Outcome::Fail(json!({"x": 1})))),
            (2, Ok(Outcome::Skip)),
        ];
        let check = tally(Suite::Axioms, "demo", true, 40, outcomes);
        assert_eq!((check.passed, check.skipped, check.failed()), (1, 1, 1));
        assert_eq!(
            check.fixtures[0]["replay"],
            "coop verify axioms --seed 41 --trials 1"
        );
    }

    #[test]
    fn discrepancy_fixture_values() {
        let f = banzhaf_discrepancy_fixture().unwrap();
        let half = json!({"1.1": "1/2", "1.2": "1/2", "2": "0"});
        assert_eq!(f["banzhaf"], half);
        assert_eq!(
            f["banzhaf_unanimity_scaled"],
            json!({"1.1": "1/4", "1.2": "1/4", "2": "0"})
        );
        assert_eq!(f["rhs"], json!({"1.1": "1/8", "1.2": "1/8", "2": "0"}));
    }
}
