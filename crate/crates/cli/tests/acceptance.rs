//! Acceptance criteria, one PASS/FAIL line each. All comparisons are exact rational equality.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use coop_cli::suites::{comtriass, run_suite, Check, GameClass, Suite, SuiteConfig, SuiteReport};
use coop_operad::classes::{balance_certificate, is_balanced, BalanceCertificate};
use coop_operad::operad::partial_tensor;
use coop_operad::random::random_game;
use coop_operad::rational::{frac, int};
use coop_operad::solutions::{
    banzhaf, banzhaf_by_mobius, core_description, imputation_vertices, shapley,
};
use coop_operad::{partial_compose, Allocation, Coalition, Game, PlayerSet, Rational};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn gamma_a() -> Game {
    Game::new_game(
        ["a1", "a2"],
        [("a1", "1"), ("a2", "1"), ("a1,a2", "3")],
        true,
    )
    .unwrap()
}

fn gamma_b() -> Game {
    Game::new_game(
        ["b1", "b2"],
        [("b1", "0"), ("b2", "2"), ("b1,b2", "3")],
        true,
    )
    .unwrap()
}

fn alloc(players: &PlayerSet, coords: &[i64]) -> Allocation {
    Allocation::new(players.clone(), coords.iter().map(|&c| int(c)).collect()).unwrap()
}

fn same_set(found: &[Allocation], expected: &[Allocation]) -> bool {
    found.len() == expected.len() && expected.iter().all(|e| found.contains(e))
}

fn require_all(report: &SuiteReport) -> Result<(), String> {
    for check in &report.checks {
        ensure!(
            check.ok(),
            "{}: {} of {} failed, fixtures {:?}",
            check.name,
            check.failed(),
            check.trials,
            check.fixtures
        );
        ensure!(check.passed > 0, "{}: nothing verified", check.name);
    }
    Ok(())
}

fn passed_exactly(check: Option<&Check>, n: usize) -> Result<(), String> {
    let check = check.ok_or("missing check")?;
    ensure!(
        check.passed == n && check.trials == n,
        "{}: {}/{}",
        check.name,
        check.passed,
        check.trials
    );
    Ok(())
}

fn config(trials: usize, seed: u64) -> SuiteConfig {
    SuiteConfig {
        trials,
        seed,
        ..SuiteConfig::default()
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let elapsed = start.elapsed();
    ensure!(elapsed < limit, "took {elapsed:?}, limit {limit:?}");
    Ok(())
}

fn worked_example() -> Outcome {
    let start = Instant::now();
    let c = partial_compose(&gamma_a(), "a1", &gamma_b()).map_err(|e| e.to_string())?;
    let expected = [
        ("a2", 3),
        ("b1", 0),
        ("b2", 2),
        ("b1,b2", 3),
        ("b1,a2", 3),
        ("b1,b2,a2", 9),
        ("b2,a2", 7),
    ];
    for (coalition, value) in expected {
        let labels: Vec<&str> = coalition.split(',').collect();
        let found = c.value_of(&labels).map_err(|e| e.to_string())?;
        ensure!(
            found == &int(value),
            "γ({coalition}) = {found}, expected {value}"
        );
    }
    let simplex = imputation_vertices(&c).map_err(|e| e.to_string())?;
    let players = c.players();
    let vertices = [
        alloc(players, &[0, 2, 7]),
        alloc(players, &[0, 6, 3]),
        alloc(players, &[4, 2, 3]),
    ];
    ensure!(
        same_set(&simplex.vertices, &vertices),
        "imputation vertices {:?}",
        simplex.vertices
    );
    within(Duration::from_secs(1), start)?;
    Ok(format!(
        "composite values and imputation vertices exact in {:?}",
        start.elapsed()
    ))
}

fn negativity() -> Outcome {
    let alpha =
        Game::new_game(["1", "2"], [("1", "0"), ("2", "1000"), ("1,2", "0")], true).unwrap();
    let beta = Game::new_game(["a", "b"], [("a", "0"), ("b", "1"), ("a,b", "1/2")], true).unwrap();
    let c = partial_compose(&alpha, "1", &beta).map_err(|e| e.to_string())?;
    let value = c.value_of(&["b", "2"]).map_err(|e| e.to_string())?;
    ensure!(value == &int(-500), "value {value}");
    Ok("(α ∘₁ β)({b,2}) = -500".into())
}

fn axioms() -> Outcome {
    let start = Instant::now();
    let report = run_suite(Suite::Axioms, &config(200, 2024)).map_err(|e| e.to_string())?;
    require_all(&report)?;
    passed_exactly(report.check("operad axioms on random triples"), 200)?;
    let basis = report
        .check("unanimity games compose by coalition insertion")
        .ok_or("missing basis check")?;
    within(Duration::from_secs(30), start)?;
    Ok(format!(
        "200 triples and {} unanimity cases in {:?}",
        basis.passed,
        start.elapsed()
    ))
}

fn transforms() -> Outcome {
    let mobius = run_suite(Suite::Mobius, &config(100, 4)).map_err(|e| e.to_string())?;
    passed_exactly(mobius.check("zeta inverts mobius"), 100)?;
    passed_exactly(mobius.check("mobius intertwines the two compositions"), 100)?;
    let duality = run_suite(Suite::Duality, &config(100, 4)).map_err(|e| e.to_string())?;
    passed_exactly(
        duality.check("dual of a composite is the composite of duals"),
        100,
    )?;
    Ok("inversion, change of basis and duality on 100 samples each".into())
}

fn closure() -> Outcome {
    let start = Instant::now();
    let report = run_suite(
        Suite::Closure,
        &SuiteConfig {
            class: GameClass::All,
            ..config(100, 5)
        },
    )
    .map_err(|e| e.to_string())?;
    let classes = [
        "normalized",
        "simple monotone",
        "capacity",
        "convex non-negative",
        "3-monotone non-negative",
        "4-monotone non-negative",
        "3-alternating non-negative monotone",
        "balanced non-negative monotone",
    ];
    for class in classes {
        passed_exactly(report.check(class), 100)?;
    }
    within(Duration::from_secs(120), start)?;
    Ok(format!("8 classes x 100 pairs in {:?}", start.elapsed()))
}

fn relations() -> Outcome {
    let checks = comtriass();
    for check in &checks {
        ensure!(check.ok(), "{} failed: {:?}", check.name, check.fixtures);
    }
    passed_exactly(
        checks.iter().find(|c| c.name.starts_with("generator span")),
        3,
    )?;
    Ok(format!(
        "{} relation checks and span dimensions 3, 7, 15",
        checks.len() - 1
    ))
}

/// Average of marginal vectors over all orders, from the value table.
fn shapley_oracle(g: &Game) -> Vec<Rational> {
    fn orders(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for order in orders(n - 1) {
            for slot in 0..=order.len() {
                let mut o = order.clone();
                o.insert(slot, n - 1);
                out.push(o);
            }
        }
        out
    }
    let n = g.n();
    let all = orders(n);
    let mut phi = vec![Rational::zero(); n];
    for order in &all {
        let mut s = Coalition::EMPTY;
        for &k in order {
            phi[k] += g.value(s.with(k)) - g.value(s);
            s = s.with(k);
        }
    }
    let count = Rational::from_integer((all.len() as i64).into());
    phi.into_iter().map(|x| x / &count).collect()
}

fn banzhaf_oracle(g: &Game) -> Vec<Rational> {
    let n = g.n();
    (0..n)
        .map(|i| {
            let total: Rational = Coalition::all(n)
                .filter(|s| !s.contains(i))
                .map(|s| g.value(s.with(i)) - g.value(s))
                .sum();
            total / Rational::from_integer((1i64 << (n.max(1) - 1)).into())
        })
        .collect()
}

fn solutions() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let n = rng.gen_range(1..=5);
        let g = random_game(&mut rng, n);
        ensure!(
            shapley(&g).coords() == shapley_oracle(&g).as_slice(),
            "shapley mismatch on {g:?}"
        );
        let b = banzhaf(&g);
        ensure!(
            b.coords() == banzhaf_oracle(&g).as_slice() && b == banzhaf_by_mobius(&g),
            "banzhaf mismatch on {g:?}"
        );
    }
    let report = run_suite(Suite::ShapleyComposite, &config(50, 7)).map_err(|e| e.to_string())?;
    passed_exactly(report.check("composite shapley formula"), 50)?;
    passed_exactly(report.check("marginal vectors compose"), 50)?;
    let cores = run_suite(Suite::CoreTensor, &config(50, 7)).map_err(|e| e.to_string())?;
    passed_exactly(
        cores.check("tensor of core points lies in the composite core"),
        50,
    )?;

    let (a, b) = (gamma_a(), gamma_b());
    let core_a = core_description(&a)
        .map_err(|e| e.to_string())?
        .vertices
        .ok_or("no vertices for Γ_A")?;
    ensure!(
        same_set(
            &core_a,
            &[alloc(a.players(), &[2, 1]), alloc(a.players(), &[1, 2])]
        ),
        "core of Γ_A {core_a:?}"
    );
    let core_b = core_description(&b)
        .map_err(|e| e.to_string())?
        .vertices
        .ok_or("no vertices for Γ_B")?;
    let c = partial_compose(&a, "a1", &b).map_err(|e| e.to_string())?;
    let expected = [
        (2, 1, 0, 3, [0, 6, 3]),
        (2, 1, 1, 2, [2, 4, 3]),
        (1, 2, 0, 3, [0, 3, 6]),
        (1, 2, 1, 2, [1, 2, 6]),
    ];
    for (x1, x2, y1, y2, z) in expected {
        let (x, y) = (alloc(a.players(), &[x1, x2]), alloc(b.players(), &[y1, y2]));
        ensure!(
            core_a.contains(&x) && core_b.contains(&y),
            "({x1},{x2}) or ({y1},{y2}) is not a factor vertex"
        );
        let product = partial_tensor(&x, "a1", &y).map_err(|e| e.to_string())?;
        ensure!(product == alloc(c.players(), &z), "{x} ⊗ {y} = {product}");
        ensure!(
            coop_operad::solutions::core_contains(&c, &product).unwrap_or(false),
            "{product} outside the composite core"
        );
    }
    Ok(
        "oracles agree on 50 games; composite identities on 50 pairs; worked vertex lists exact"
            .into(),
    )
}

/// Solves the square system `rows · x = rhs` exactly, or `None` when singular.
#[allow(clippy::needless_range_loop)]
fn solve_square(mut rows: Vec<Vec<Rational>>, mut rhs: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = rows.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(col, pivot);
        rhs.swap(col, pivot);
        for r in 0..n {
            if r != col && !rows[r][col].is_zero() {
                let factor = &rows[r][col] / &rows[col][col];
                for c in col..n {
                    let delta = &factor * &rows[col][c];
                    rows[r][c] -= delta;
                }
                let delta = &factor * &rhs[col];
                rhs[r] -= delta;
            }
        }
    }
    Some((0..n).map(|k| &rhs[k] / &rows[k][k]).collect())
}

/// Core non-emptiness by enumerating basic solutions of the core polytope.
fn core_nonempty_by_vertices(g: &Game) -> bool {
    let n = g.n();
    let full = Coalition::full(n);
    let proper: Vec<Coalition> = Coalition::all(n).skip(1).filter(|&s| s != full).collect();
    let indicator = |s: Coalition| {
        (0..n)
            .map(|k| {
                if s.contains(k) {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect::<Vec<_>>()
    };
    let feasible = |x: &[Rational]| {
        let sum = |s: Coalition| s.members().map(|k| x[k].clone()).sum::<Rational>();
        sum(full) == *g.grand_value() && proper.iter().all(|&s| &sum(s) >= g.value(s))
    };
    let mut chosen = Vec::new();
    fn pick(
        from: usize,
        need: usize,
        proper: &[Coalition],
        chosen: &mut Vec<Coalition>,
        found: &mut dyn FnMut(&[Coalition]) -> bool,
    ) -> bool {
        if chosen.len() == need {
            return found(chosen);
        }
        for k in from..proper.len() {
            chosen.push(proper[k]);
            if pick(k + 1, need, proper, chosen, found) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut test = |tight: &[Coalition]| {
        let mut rows: Vec<Vec<Rational>> = tight.iter().map(|&s| indicator(s)).collect();
        let mut rhs: Vec<Rational> = tight.iter().map(|&s| g.value(s).clone()).collect();
        rows.push(indicator(full));
        rhs.push(g.grand_value().clone());
        solve_square(rows, rhs).is_some_and(|x| feasible(&x))
    };
    pick(0, n - 1, &proper, &mut chosen, &mut test)
}

fn grounded_simple_games(n: usize) -> Vec<Game> {
    let sets = (1usize << n) - 1;
    (0..1u64 << sets)
        .map(|bits| {
            let values = (0..1usize << n)
                .map(|s| {
                    if s == 0 {
                        int(0)
                    } else {
                        int((bits >> (s - 1) & 1) as i64)
                    }
                })
                .collect();
            Game::from_values(PlayerSet::numbered(n), values).unwrap()
        })
        .collect()
}

fn bondareva_shapley() -> Outcome {
    let majority = Game::weighted_majority(&[int(1), int(1), int(1)], &int(2)).unwrap();
    match balance_certificate(&majority).map_err(|e| e.to_string())? {
        BalanceCertificate::NotBalanced { lp_optimum, .. } => {
            ensure!(lp_optimum == frac(3, 2), "LP optimum {lp_optimum}")
        }
        other => return Err(format!("majority reported balanced: {other:?}")),
    }
    let mut counts = Vec::new();
    for n in [2, 3] {
        let games = grounded_simple_games(n);
        let mut balanced = 0;
        for g in &games {
            let by_lp = is_balanced(g).map_err(|e| e.to_string())?;
            ensure!(
                by_lp == core_nonempty_by_vertices(g),
                "disagreement on {g:?}"
            );
            balanced += by_lp as usize;
        }
        counts.push(format!("{}/{} balanced for n = {n}", balanced, games.len()));
    }
    Ok(format!(
        "majority optimum 3/2; vertex search agrees ({})",
        counts.join(", ")
    ))
}

fn banzhaf_report() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_coop"))
        .args([
            "verify",
            "banzhaf-composite",
            "--trials",
            "50",
            "--seed",
            "9",
        ])
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(
        out.status.code() == Some(0),
        "exit code {:?}",
        out.status.code()
    );
    let report: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let checks = report["checks"].as_array().ok_or("no checks")?;
    let find = |name: &str| {
        checks
            .iter()
            .find(|c| c["name"] == name)
            .cloned()
            .unwrap_or(Value::Null)
    };
    for regime in [
        "additive guest, standard form, no divisor",
        "single-player guest",
    ] {
        let c = find(regime);
        ensure!(c["passed"] == 50 && c["trials"] == 50, "{regime}: {c}");
    }
    let fixture = &find("stated formula at d1 o1 B")["fixtures"][0]["detail"];
    ensure!(
        fixture["banzhaf"] == json!({"1.1": "1/2", "1.2": "1/2", "2": "0"}),
        "banzhaf {}",
        fixture["banzhaf"]
    );
    ensure!(
        fixture["banzhaf_unanimity_scaled"] == json!({"1.1": "1/4", "1.2": "1/4", "2": "0"}),
        "scaled {}",
        fixture["banzhaf_unanimity_scaled"]
    );
    ensure!(
        fixture["rhs"] == json!({"1.1": "1/8", "1.2": "1/8", "2": "0"}),
        "rhs {}",
        fixture["rhs"]
    );
    let instances = report["instances"].as_array().map_or(0, Vec::len);
    ensure!(instances == 200, "{instances} per-instance records");
    Ok("both exact regimes 50/50; d1 o1 B fixture emitted; exit code 0".into())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("worked composition example", worked_example),
        ("non-negativity counterexample", negativity),
        ("operad axioms", axioms),
        ("transforms", transforms),
        ("closure under composition", closure),
        ("generator relations", relations),
        ("solution concepts", solutions),
        ("Bondareva-Shapley", bondareva_shapley),
        ("Banzhaf composite report", banzhaf_report),
    ];
    let mut failures = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", k + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {}: FAIL  {name}: {why}", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
