//! Membership predicates for the game classes closed under composition.
//!
//! Each failing predicate can produce a [`Witness`] that [`Witness::is_valid_for`] re-checks
//! against the game by direct evaluation.

use num_traits::{One, Signed, Zero};

use crate::coalition::Coalition;
use crate::error::{GameError, Result};
use crate::game::Game;
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::rational::Rational;

/// Largest player count for which balancedness is decided by linear programming.
pub const MAX_LP_PLAYERS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// `v(∅) ≠ 0`.
    EmptyValue { value: Rational },
    /// `v(N) ≠ 1`.
    GrandValue { value: Rational },
    NegativeValue {
        coalition: Coalition,
        value: Rational,
    },
    NotBinary {
        coalition: Coalition,
        value: Rational,
    },
    /// `∂_i v(S) < 0` with `i ∉ S`.
    Decrease {
        coalition: Coalition,
        player: usize,
        derivative: Rational,
    },
    NonAdditive {
        coalition: Coalition,
        value: Rational,
        expected: Rational,
    },
    /// `sign · ∂_K v(S) < 0` with `S ∩ K = ∅`.
    Difference {
        set: Coalition,
        base: Coalition,
        value: Rational,
        sign: i8,
    },
    /// Balanced collection `Σ λ_S 1^S = 1^N` with `Σ λ_S v(S) > v(N)`.
    Unbalanced {
        weights: Vec<(Coalition, Rational)>,
        weighted_sum: Rational,
    },
}

impl Witness {
    /// Re-evaluates the witness on `g`.
    pub fn is_valid_for(&self, g: &Game) -> bool {
        let n = g.n();
        let inside = |s: &Coalition| s.is_subset_of(Coalition::full(n));
        match self {
            Witness::EmptyValue { value } => !value.is_zero() && g.value(Coalition::EMPTY) == value,
            Witness::GrandValue { value } => !value.is_one() && g.grand_value() == value,
            Witness::NegativeValue { coalition, value } => {
                inside(coalition) && value.is_negative() && g.value(*coalition) == value
            }
            Witness::NotBinary { coalition, value } => {
                inside(coalition)
                    && !value.is_zero()
                    && !value.is_one()
                    && g.value(*coalition) == value
            }
            Witness::Decrease {
                coalition,
                player,
                derivative,
            } => {
                *player < n
                    && inside(coalition)
                    && !coalition.contains(*player)
                    && derivative.is_negative()
                    && &(g.value(coalition.with(*player)) - g.value(*coalition)) == derivative
            }
            Witness::NonAdditive {
                coalition,
                value,
                expected,
            } => {
                inside(coalition)
                    && value != expected
                    && g.value(*coalition) == value
                    && &singleton_sum(g, *coalition) == expected
            }
            Witness::Difference {
                set,
                base,
                value,
                sign,
            } => {
                inside(set)
                    && inside(base)
                    && set.len() >= 2
                    && set.is_disjoint(*base)
                    && &g.difference_at(*set, *base) == value
                    && (Rational::from_integer((*sign).into()) * value).is_negative()
            }
            Witness::Unbalanced {
                weights,
                weighted_sum,
            } => {
                let covers = (0..n).all(|i| {
                    weights
                        .iter()
                        .filter(|(s, _)| s.contains(i))
                        .fold(Rational::zero(), |acc, (_, w)| acc + w)
                        .is_one()
                });
                let sum = weights
                    .iter()
                    .fold(Rational::zero(), |acc, (s, w)| acc + w * g.value(*s));
                weights
                    .iter()
                    .all(|(s, w)| inside(s) && !s.is_empty() && !w.is_negative())
                    && covers
                    && &sum == weighted_sum
                    && weighted_sum > g.grand_value()
            }
        }
    }
}

fn singleton_sum(g: &Game, s: Coalition) -> Rational {
    s.members().fold(Rational::zero(), |acc, k| {
        acc + g.value(Coalition::singleton(k))
    })
}

pub fn grounded_witness(g: &Game) -> Option<Witness> {
    let value = g.value(Coalition::EMPTY);
    (!value.is_zero()).then(|| Witness::EmptyValue {
        value: value.clone(),
    })
}

pub fn normalized_witness(g: &Game) -> Option<Witness> {
    let value = g.grand_value();
    (!value.is_one()).then(|| Witness::GrandValue {
        value: value.clone(),
    })
}

pub fn nonnegative_witness(g: &Game) -> Option<Witness> {
    Coalition::all(g.n())
        .find(|&s| g.value(s).is_negative())
        .map(|s| Witness::NegativeValue {
            coalition: s,
            value: g.value(s).clone(),
        })
}

pub fn simple_witness(g: &Game) -> Option<Witness> {
    Coalition::all(g.n())
        .find(|&s| {
            let v = g.value(s);
            !v.is_zero() && !v.is_one()
        })
        .map(|s| Witness::NotBinary {
            coalition: s,
            value: g.value(s).clone(),
        })
}

pub fn monotone_witness(g: &Game) -> Option<Witness> {
    for s in Coalition::all(g.n()) {
        for i in (0..g.n()).filter(|&i| !s.contains(i)) {
            let derivative = g.value(s.with(i)) - g.value(s);
            if derivative.is_negative() {
                return Some(Witness::Decrease {
                    coalition: s,
                    player: i,
                    derivative,
                });
            }
        }
    }
    None
}

pub fn additive_witness(g: &Game) -> Option<Witness> {
    Coalition::all(g.n()).find_map(|s| {
        let expected = singleton_sum(g, s);
        let value = g.value(s);
        (value != &expected).then(|| Witness::NonAdditive {
            coalition: s,
            value: value.clone(),
            expected,
        })
    })
}

fn check_k(k: usize) -> Result<()> {
    if k < 2 {
        Err(GameError::BadK(k))
    } else {
        Ok(())
    }
}

/// Scans `sign(|K|) · ∂_K v(S) ≥ 0` for `2 ≤ |K| ≤ min(k, n)` and `S ⊆ N ∖ K`.
fn difference_witness(g: &Game, k: usize, alternating: bool) -> Option<Witness> {
    let n = g.n();
    let top = k.min(n);
    for size in 2..=top {
        let sign: i8 = if alternating && size % 2 == 0 { -1 } else { 1 };
        for set in Coalition::all(n).filter(|s| s.len() == size) {
            for base in set.complement(n).subsets() {
                let value = g.difference_at(set, base);
                let violated = if sign > 0 {
                    value.is_negative()
                } else {
                    value.is_positive()
                };
                if violated {
                    return Some(Witness::Difference {
                        set,
                        base,
                        value,
                        sign,
                    });
                }
            }
        }
    }
    None
}

pub fn k_monotone_witness(g: &Game, k: usize) -> Result<Option<Witness>> {
    check_k(k)?;
    Ok(difference_witness(g, k, false))
}

/// Direct form: `(−1)^{|K|+1} ∂_K v ≥ 0` for `2 ≤ |K| ≤ k`.
pub fn k_alternating_witness(g: &Game, k: usize) -> Result<Option<Witness>> {
    check_k(k)?;
    Ok(difference_witness(g, k, true))
}

pub fn is_grounded(g: &Game) -> bool {
    g.is_grounded()
}

pub fn is_normalized(g: &Game) -> bool {
    g.grand_value().is_one()
}

pub fn is_nonnegative(g: &Game) -> bool {
    nonnegative_witness(g).is_none()
}

pub fn is_monotone(g: &Game) -> bool {
    monotone_witness(g).is_none()
}

pub fn is_capacity(g: &Game) -> bool {
    is_nonnegative(g) && is_monotone(g)
}

pub fn is_simple(g: &Game) -> bool {
    simple_witness(g).is_none()
}

pub fn is_additive(g: &Game) -> bool {
    additive_witness(g).is_none()
}

pub fn is_k_monotone(g: &Game, k: usize) -> Result<bool> {
    Ok(k_monotone_witness(g, k)?.is_none())
}

pub fn is_k_alternating(g: &Game, k: usize) -> Result<bool> {
    Ok(k_alternating_witness(g, k)?.is_none())
}

/// Supermodularity through second differences `∂_{ij} v ≥ 0`.
pub fn is_convex(g: &Game) -> bool {
    difference_witness(g, 2, false).is_none()
}

/// Supermodularity checked on every pair of coalitions: `v(S) + v(T) ≤ v(S∩T) + v(S∪T)`.
pub fn is_supermodular_by_pairs(g: &Game) -> bool {
    let n = g.n();
    Coalition::all(n).all(|s| {
        Coalition::all(n)
            .all(|t| g.value(s) + g.value(t) <= g.value(s.intersection(t)) + g.value(s.union(t)))
    })
}

pub fn is_totally_monotone(g: &Game) -> bool {
    difference_witness(g, g.n().max(2), false).is_none()
}

pub fn is_totally_alternating(g: &Game) -> bool {
    difference_witness(g, g.n().max(2), true).is_none()
}

/// `μ_T ≥ 0` for every `|T| ≥ 2`, which characterizes total monotonicity.
pub fn is_totally_monotone_by_mobius(g: &Game) -> bool {
    let m = g.mobius();
    Coalition::all(g.n())
        .filter(|t| t.len() >= 2)
        .all(|t| !m.coeff(t).is_negative())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BalanceCertificate {
    /// A payoff vector in the core.
    Balanced { core_point: Vec<Rational> },
    /// `lp_optimum = max Σ λ_S v(S)` over balanced collections exceeds `v(N)`.
    NotBalanced {
        witness: Witness,
        lp_optimum: Rational,
    },
}

impl BalanceCertificate {
    pub fn is_balanced(&self) -> bool {
        matches!(self, BalanceCertificate::Balanced { .. })
    }
}

/// Decides non-emptiness of the core by solving
/// `max Σ_S λ_S v(S)` subject to `Σ_{S∋i} λ_S = 1`, `λ ≥ 0`.
/// Its optimum equals `min x(N)` subject to `x(S) ≥ v(S)`; the multipliers give that minimizer.
pub fn balance_certificate(g: &Game) -> Result<BalanceCertificate> {
    let n = g.n();
    if n > MAX_LP_PLAYERS {
        return Err(GameError::SizeCap {
            n,
            cap: MAX_LP_PLAYERS,
        });
    }
    if n == 0 {
        let v = g.grand_value().clone();
        return Ok(if v.is_zero() {
            BalanceCertificate::Balanced {
                core_point: Vec::new(),
            }
        } else {
            BalanceCertificate::NotBalanced {
                witness: Witness::EmptyValue { value: v.clone() },
                lp_optimum: Rational::zero(),
            }
        });
    }
    let coalitions: Vec<Coalition> = Coalition::all(n).skip(1).collect();
    let mut lp = LinearProgram::new(coalitions.len());
    for i in 0..n {
        let row = coalitions
            .iter()
            .map(|s| {
                if s.contains(i) {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        lp.add_constraint(row, Relation::Eq, Rational::one())?;
    }
    lp.set_objective(coalitions.iter().map(|&s| -g.value(s)).collect())?;
    let solution = match lp.solve()? {
        LpOutcome::Optimal(s) => s,
        other => {
            return Err(GameError::MalformedProgram(format!(
                "balancing program ended {other:?}"
            )))
        }
    };
    let optimum = -&solution.value;
    if &optimum <= g.grand_value() {
        // The minimizer of x(N) may fall short of v(N); any coordinate can absorb the slack.
        let mut core_point: Vec<Rational> = solution.duals.iter().map(|y| -y).collect();
        core_point[0] += g.grand_value() - &optimum;
        let ok = Coalition::all(n).skip(1).all(|s| {
            let x: Rational = s
                .members()
                .fold(Rational::zero(), |acc, k| acc + &core_point[k]);
            &x >= g.value(s)
        }) && core_point.iter().fold(Rational::zero(), |acc, x| acc + x)
            == *g.grand_value();
        if !ok {
            return Err(GameError::MalformedProgram(
                "core point from multipliers failed verification".into(),
            ));
        }
        return Ok(BalanceCertificate::Balanced { core_point });
    }
    let weights: Vec<(Coalition, Rational)> = coalitions
        .iter()
        .zip(&solution.point)
        .filter(|(_, w)| !w.is_zero())
        .map(|(s, w)| (*s, w.clone()))
        .collect();
    let witness = Witness::Unbalanced {
        weights,
        weighted_sum: optimum.clone(),
    };
    debug_assert!(witness.is_valid_for(g));
    Ok(BalanceCertificate::NotBalanced {
        witness,
        lp_optimum: optimum,
    })
}

pub fn is_balanced(g: &Game) -> Result<bool> {
    Ok(balance_certificate(g)?.is_balanced())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Membership {
    fn from_witness(witness: Option<Witness>) -> Self {
        Membership {
            holds: witness.is_none(),
            witness,
        }
    }

    fn both(first: Option<Witness>, second: impl FnOnce() -> Option<Witness>) -> Self {
        Membership::from_witness(first.or_else(second))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassReport {
    pub k: usize,
    pub grounded: Membership,
    pub normalized: Membership,
    pub nonnegative: Membership,
    pub monotone: Membership,
    pub simple: Membership,
    pub additive: Membership,
    pub capacity: Membership,
    pub convex: Membership,
    pub k_monotone: Membership,
    pub k_alternating: Membership,
    pub totally_monotone: Membership,
    pub totally_alternating: Membership,
    /// `None` above [`MAX_LP_PLAYERS`].
    pub balanced: Option<BalanceCertificate>,
}

impl ClassReport {
    /// Every reported witness re-checks against the game.
    pub fn witnesses_valid_for(&self, g: &Game) -> bool {
        let memberships = [
            &self.grounded,
            &self.normalized,
            &self.nonnegative,
            &self.monotone,
            &self.simple,
            &self.additive,
            &self.capacity,
            &self.convex,
            &self.k_monotone,
            &self.k_alternating,
            &self.totally_monotone,
            &self.totally_alternating,
        ];
        let balanced_ok = match &self.balanced {
            Some(BalanceCertificate::NotBalanced { witness, .. }) => witness.is_valid_for(g),
            _ => true,
        };
        balanced_ok
            && memberships
                .iter()
                .all(|m| m.witness.as_ref().is_none_or(|w| w.is_valid_for(g)))
    }
}

pub fn analyze(g: &Game, k: usize) -> Result<ClassReport> {
    check_k(k)?;
    let n = g.n();
    let report = ClassReport {
        k,
        grounded: Membership::from_witness(grounded_witness(g)),
        normalized: Membership::from_witness(normalized_witness(g)),
        nonnegative: Membership::from_witness(nonnegative_witness(g)),
        monotone: Membership::from_witness(monotone_witness(g)),
        simple: Membership::from_witness(simple_witness(g)),
        additive: Membership::from_witness(additive_witness(g)),
        capacity: Membership::both(nonnegative_witness(g), || monotone_witness(g)),
        convex: Membership::from_witness(difference_witness(g, 2, false)),
        k_monotone: Membership::from_witness(difference_witness(g, k, false)),
        k_alternating: Membership::from_witness(difference_witness(g, k, true)),
        totally_monotone: Membership::from_witness(difference_witness(g, n.max(2), false)),
        totally_alternating: Membership::from_witness(difference_witness(g, n.max(2), true)),
        balanced: if n <= MAX_LP_PLAYERS {
            Some(balance_certificate(g)?)
        } else {
            None
        },
    };
    debug_assert!(report.witnesses_valid_for(g));
    Ok(report)
}
