//! Random games drawn from each class, for property checks and verification suites.
//!
//! All games are on players `"1"..="n"` and grounded unless stated otherwise.

use num_traits::{Signed, Zero};
use rand::Rng;

use crate::allocation::Allocation;
use crate::classes::{is_k_monotone, is_nonnegative};
use crate::coalition::Coalition;
use crate::game::{Game, MobiusGame};
use crate::players::PlayerSet;
use crate::rational::{frac, Rational};

/// A rational `p/q` with `|p| ≤ bound` (non-negative when `signed` is false) and `q ∈ 1..=3`.
pub fn small_rational<R: Rng + ?Sized>(rng: &mut R, bound: i64, signed: bool) -> Rational {
    let lo = if signed { -bound } else { 0 };
    frac(rng.gen_range(lo..=bound), rng.gen_range(1..=3))
}

fn table<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    mut f: impl FnMut(&mut R, Coalition) -> Rational,
) -> Game {
    let values = Coalition::all(n).map(|s| f(rng, s)).collect();
    Game::from_values(PlayerSet::numbered(n), values).expect("small random game")
}

pub fn random_game<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Game {
    table(rng, n, |rng, s| {
        if s.is_empty() {
            Rational::zero()
        } else {
            small_rational(rng, 6, true)
        }
    })
}

/// Arbitrary values, including on the empty coalition.
pub fn random_ungrounded_game<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Game {
    table(rng, n, |rng, _| small_rational(rng, 6, true))
}

pub fn random_normalized<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Game {
    let full = Coalition::full(n);
    table(rng, n, |rng, s| match s {
        _ if s.is_empty() => Rational::zero(),
        _ if s == full => Rational::from_integer(1.into()),
        _ => small_rational(rng, 6, true),
    })
}

pub fn random_allocation<R: Rng + ?Sized>(rng: &mut R, n: usize, signed: bool) -> Allocation {
    Allocation::numbered((0..n).map(|_| small_rational(rng, 5, signed)).collect())
}

pub fn random_additive<R: Rng + ?Sized>(rng: &mut R, n: usize, signed: bool) -> Game {
    Game::additive_from_vector(&random_allocation(rng, n, signed)).expect("small random game")
}

/// Winning coalitions are the supersets of a few random nonempty sets; `N` always wins.
pub fn random_simple_monotone<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Game {
    let full = Coalition::full(n);
    let count = rng.gen_range(1..=3);
    let minimal: Vec<Coalition> = (0..count)
        .map(|_| Coalition::from_bits(rng.gen_range(1..=full.bits().max(1))).intersection(full))
        .filter(|s| !s.is_empty())
        .collect();
    table(rng, n, |_, s| {
        let wins = !s.is_empty() && (s == full || minimal.iter().any(|m| m.is_subset_of(s)));
        Rational::from_integer((wins as i64).into())
    })
}

/// Monotone sweep: each value is the largest value one player below plus a random increment.
pub fn random_capacity<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Game {
    let mut values = vec![Rational::zero(); 1 << n];
    for s in Coalition::all(n).skip(1) {
        let floor = s
            .members()
            .map(|k| values[s.without(k).index()].clone())
            .max()
            .unwrap_or_else(Rational::zero);
        let step = if rng.gen_bool(0.3) {
            Rational::zero()
        } else {
            small_rational(rng, 4, false)
        };
        values[s.index()] = floor + step;
    }
    Game::from_values(PlayerSet::numbered(n), values).expect("small random game")
}

/// Zeta transform of non-negative coefficients on nonempty coalitions.
pub fn random_totally_monotone<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Game {
    let coeffs = Coalition::all(n)
        .map(|s| {
            if s.is_empty() || rng.gen_bool(0.4) {
                Rational::zero()
            } else {
                small_rational(rng, 3, false)
            }
        })
        .collect();
    MobiusGame::new(PlayerSet::numbered(n), coeffs)
        .expect("small random game")
        .zeta()
}

/// Random non-negative weights on the players.
fn random_weights<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Rational> {
    (0..n).map(|_| small_rational(rng, 3, false)).collect()
}

/// Sums of `c · max(0, w(S) − t)` for non-negative modular `w`, plus a non-negative additive part.
/// Convex and non-negative, and generally not totally monotone.
pub fn random_convex<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Game {
    let additive = random_weights(rng, n);
    let hinges: Vec<(Rational, Vec<Rational>, Rational)> = (0..rng.gen_range(1..=3))
        .map(|_| {
            (
                small_rational(rng, 3, false),
                random_weights(rng, n),
                small_rational(rng, 4, false),
            )
        })
        .collect();
    table(rng, n, |_, s| {
        let sum = |w: &[Rational]| s.members().fold(Rational::zero(), |acc, k| acc + &w[k]);
        hinges.iter().fold(sum(&additive), |acc, (c, w, t)| {
            let excess = sum(w) - t;
            if excess.is_positive() {
                acc + c * excess
            } else {
                acc
            }
        })
    })
}

/// Non-negative and k-monotone: non-negative coefficients up to order `k`, signed ones above,
/// resampled until the predicate holds (falling back to dropping the negative coefficients).
pub fn random_k_monotone<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Game {
    let players = PlayerSet::numbered(n);
    let mut last = None;
    for _ in 0..64 {
        let coeffs: Vec<Rational> = Coalition::all(n)
            .map(|s| match s.len() {
                0 => Rational::zero(),
                size if size <= k => {
                    if rng.gen_bool(0.3) {
                        Rational::zero()
                    } else {
                        small_rational(rng, 3, false)
                    }
                }
                _ => small_rational(rng, 2, true),
            })
            .collect();
        let g = MobiusGame::new(players.clone(), coeffs.clone())
            .expect("small random game")
            .zeta();
        if is_nonnegative(&g) && is_k_monotone(&g, k.max(2)).unwrap_or(false) {
            return g;
        }
        last = Some(coeffs);
    }
    let coeffs = last
        .unwrap_or_default()
        .into_iter()
        .map(|c| if c.is_negative() { Rational::zero() } else { c })
        .collect();
    MobiusGame::new(players, coeffs)
        .expect("small random game")
        .zeta()
}

/// Non-negative, monotone and k-alternating: the dual of a non-negative k-monotone game.
pub fn random_k_alternating<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Game {
    random_k_monotone(rng, n, k).dual()
}

/// Non-negative monotone game whose core contains a random non-negative vector `x`:
/// `v(N) = x(N)` and each other value is drawn between its largest lower neighbour and `x(S)`.
pub fn random_balanced<R: Rng + ?Sized>(rng: &mut R, n: usize) -> (Game, Allocation) {
    let x = random_allocation(rng, n, false);
    let full = Coalition::full(n);
    let mut values = vec![Rational::zero(); 1 << n];
    for s in Coalition::all(n).skip(1) {
        let top = x.sum_over(s);
        values[s.index()] = if s == full {
            top
        } else {
            let floor = s
                .members()
                .map(|k| values[s.without(k).index()].clone())
                .max()
                .unwrap_or_else(Rational::zero);
            let t = frac(rng.gen_range(0..=4), 4);
            &floor + (top - &floor) * t
        };
    }
    (
        Game::from_values(PlayerSet::numbered(n), values).expect("small random game"),
        x,
    )
}
