//! Partial and total composition of games and the matching operations on coalitions,
//! unanimity coefficients and payoff vectors.
//!
//! Positions are 0-based. Composing `B` into player `i` of `A` orders the composite players as
//! the players of `A` before `i`, then the players of `B`, then the players of `A` after `i`.

mod axioms;
mod classical;
mod generators;
mod named;

pub use axioms::{check_operad_axioms, Axiom, AxiomCheck, AxiomReport};
pub use classical::{owen_tensor_composition, shapley_product, shapley_sum, simple_compound};
pub use generators::{
    build_unanimity_from_generators, generator_expressions, generator_span_rank, Generator,
    GeneratorExpr,
};
pub use named::{bargaining, dictator, dual_bargaining, one, v_empty};

use num_traits::Zero;

use crate::allocation::Allocation;
use crate::coalition::Coalition;
use crate::error::{GameError, Result};
use crate::game::{check_size, Game, MobiusGame, PlayerRef};
use crate::players::PlayerSet;
use crate::rational::Rational;

/// Bit bookkeeping for inserting a block of `m` players at position `i` of an `n`-player host.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Splice {
    i: usize,
    m: usize,
}

impl Splice {
    pub(crate) fn new(i: usize, m: usize) -> Self {
        Splice { i, m }
    }

    fn low(&self) -> u64 {
        (1u64 << self.i) - 1
    }

    /// Host coalition (never containing `i`) and guest coalition of a composite coalition.
    pub(crate) fn split(&self, s: Coalition) -> (Coalition, Coalition) {
        let bits = s.bits();
        let host = (bits & self.low()) | ((bits >> (self.i + self.m)) << (self.i + 1));
        let guest = (bits >> self.i) & ((1u64 << self.m) - 1);
        (Coalition::from_bits(host), Coalition::from_bits(guest))
    }

    /// Composite coalition from a host coalition (bit `i` ignored) and a guest coalition.
    pub(crate) fn join(&self, host: Coalition, guest: Coalition) -> Coalition {
        let h = host.bits();
        Coalition::from_bits(
            (h & self.low())
                | (guest.bits() << self.i)
                | ((h >> (self.i + 1)) << (self.i + self.m)),
        )
    }

    /// Composite position of host position `a != i`.
    pub(crate) fn host_position(&self, a: usize) -> usize {
        if a < self.i {
            a
        } else {
            a + self.m - 1
        }
    }
}

/// Player list of `a ∘_i b`. Guest labels that clash with the remaining host labels are
/// prefixed with the label of `i` and a dot.
pub fn composite_players(a: &PlayerSet, i: usize, b: &PlayerSet) -> Result<PlayerSet> {
    i.resolve(a)?;
    let host: Vec<&String> = a
        .labels()
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != i)
        .map(|(_, l)| l)
        .collect();
    let clashes = b.labels().iter().any(|l| host.contains(&l));
    let guest: Vec<String> = if clashes {
        b.labels()
            .iter()
            .map(|l| format!("{}.{}", a.label(i), l))
            .collect()
    } else {
        b.labels().to_vec()
    };
    if let Some(l) = guest.iter().find(|l| host.contains(l)) {
        return Err(GameError::LabelCollision(l.clone()));
    }
    let mut labels: Vec<String> = a.labels()[..i].to_vec();
    labels.extend(guest);
    labels.extend_from_slice(&a.labels()[i + 1..]);
    Ok(PlayerSet::from_labels_unchecked(labels))
}

/// `S ⋄_i T`: `(S ∖ {i}) ∪ T` if `i ∈ S`, otherwise `S`, re-indexed over the composite positions.
pub fn coalition_compose(
    s: Coalition,
    n: usize,
    i: usize,
    t: Coalition,
    m: usize,
) -> Result<Coalition> {
    if i >= n {
        return Err(GameError::IndexOutOfRange { index: i, arity: n });
    }
    let splice = Splice::new(i, m);
    Ok(if s.contains(i) {
        splice.join(s, t)
    } else {
        splice.join(s, Coalition::EMPTY)
    })
}

fn compose_with_scale<P: PlayerRef>(a: &Game, i: P, b: &Game, offset: bool) -> Result<Game> {
    let i = i.resolve(a.players())?;
    let players = composite_players(a.players(), i, b.players())?;
    check_size(players.len())?;
    let splice = Splice::new(i, b.n());
    let mut scale = b.grand_value().clone();
    if offset {
        scale -= b.value(Coalition::EMPTY);
    }
    Game::from_fn(players, |s| {
        let (sa, sb) = splice.split(s);
        let base = a.value(sa);
        let derivative = a.value(sa.with(i)) - base;
        &scale * base + derivative * b.value(sb)
    })
}

/// `γ(S) = β(B)·α(S_A) + ∂_iα(S_A)·β(S_B)`.
pub fn partial_compose<P: PlayerRef>(a: &Game, i: P, b: &Game) -> Result<Game> {
    compose_with_scale(a, i, b, false)
}

/// Composition for games that need not vanish on the empty coalition:
/// `γ(S) = (β(B) − β(∅))·α(S_A) + ∂_iα(S_A)·β(S_B)`.
///
/// Agrees with [`partial_compose`] whenever `b` is grounded, and `a ∘_i v_∅` is the derivative `∂_i a`.
pub fn partial_compose_nongrounded<P: PlayerRef>(a: &Game, i: P, b: &Game) -> Result<Game> {
    compose_with_scale(a, i, b, true)
}

/// `(((g0 ∘_1 c1) ∘ c2) … ∘ ck)`, each component inserted at the start of its own block.
pub fn total_compose(g0: &Game, comps: &[Game]) -> Result<Game> {
    if comps.len() != g0.n() {
        return Err(GameError::ArityMismatch {
            expected: g0.n(),
            found: comps.len(),
        });
    }
    let mut result = g0.clone();
    let mut position = 0;
    for c in comps {
        result = partial_compose(&result, position, c)?;
        position += c.n();
    }
    Ok(result)
}

/// Composition expressed directly on unanimity coefficients:
/// `(Σ_T ρ_T) Σ_{S∌i} λ_S u_S + Σ_{S∋i} Σ_T λ_S ρ_T u_{S⋄_iT}`.
pub fn partial_compose_unanimity<P: PlayerRef>(
    a: &MobiusGame,
    i: P,
    b: &MobiusGame,
) -> Result<MobiusGame> {
    let i = i.resolve(a.players())?;
    let players = composite_players(a.players(), i, b.players())?;
    check_size(players.len())?;
    let splice = Splice::new(i, b.n());
    let total = b.total();
    let mut coeffs = vec![Rational::zero(); 1 << players.len()];
    for s in Coalition::all(a.n()) {
        let lambda = a.coeff(s);
        if lambda.is_zero() {
            continue;
        }
        if s.contains(i) {
            for t in Coalition::all(b.n()) {
                let rho = b.coeff(t);
                if !rho.is_zero() {
                    coeffs[splice.join(s, t).index()] += lambda * rho;
                }
            }
        } else {
            coeffs[splice.join(s, Coalition::EMPTY).index()] += lambda * &total;
        }
    }
    MobiusGame::new(players, coeffs)
}

/// `x ⊗_i y = (η x_{<i}, x_i·y, η x_{>i})` with `η = Σ_k y_k`.
pub fn partial_tensor<P: PlayerRef>(x: &Allocation, i: P, y: &Allocation) -> Result<Allocation> {
    let i = i.resolve(x.players())?;
    let players = composite_players(x.players(), i, y.players())?;
    let eta = y.total();
    let xi = x.get(i);
    let mut coords: Vec<Rational> = x.coords()[..i].iter().map(|c| c * &eta).collect();
    coords.extend(y.coords().iter().map(|c| xi * c));
    coords.extend(x.coords()[i + 1..].iter().map(|c| c * &eta));
    Allocation::new(players, coords)
}
