//! Games as dense coalition tables, with transforms, derivatives, duality and the permutation action.

use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::allocation::Allocation;
use crate::coalition::Coalition;
use crate::error::{GameError, Result};
use crate::players::PlayerSet;
use crate::rational::{parse_rational, Rational};

/// Default maximum player count for dense tables.
pub const DEFAULT_MAX_PLAYERS: usize = 20;
/// Absolute ceiling regardless of `COOP_MAX_PLAYERS`.
pub const HARD_MAX_PLAYERS: usize = 26;

/// Current size cap: `COOP_MAX_PLAYERS` if set and sensible, otherwise the default.
pub fn max_players() -> usize {
    std::env::var("COOP_MAX_PLAYERS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .map(|v| v.min(HARD_MAX_PLAYERS))
        .unwrap_or(DEFAULT_MAX_PLAYERS)
}

pub(crate) fn check_size(n: usize) -> Result<()> {
    let cap = max_players();
    if n > cap {
        Err(GameError::SizeCap { n, cap })
    } else {
        Ok(())
    }
}

/// Resolves a player argument to a 0-based position: either a position or a label.
pub trait PlayerRef {
    fn resolve(&self, players: &PlayerSet) -> Result<usize>;
}

impl PlayerRef for usize {
    fn resolve(&self, players: &PlayerSet) -> Result<usize> {
        if *self < players.len() {
            Ok(*self)
        } else {
            Err(GameError::IndexOutOfRange {
                index: *self,
                arity: players.len(),
            })
        }
    }
}

impl PlayerRef for &str {
    fn resolve(&self, players: &PlayerSet) -> Result<usize> {
        players.require(self)
    }
}

impl PlayerRef for String {
    fn resolve(&self, players: &PlayerSet) -> Result<usize> {
        players.require(self)
    }
}

impl PlayerRef for &String {
    fn resolve(&self, players: &PlayerSet) -> Result<usize> {
        players.require(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Game {
    players: PlayerSet,
    values: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MobiusGame {
    players: PlayerSet,
    coeffs: Vec<Rational>,
}

/// A bijection of positions `0..n`; `images[k]` is where position `k` goes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &k in &images {
            if k >= n || seen[k] {
                return Err(GameError::NotAPermutation(n));
            }
            seen[k] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds from images written 1-based, as in one-line notation.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(GameError::NotAPermutation(images.len()));
        }
        Permutation::new(images.iter().map(|k| k - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Permutation { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, k: usize) -> usize {
        self.images[k]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&k| self.images[k]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (k, &j) in self.images.iter().enumerate() {
            images[j] = k;
        }
        Permutation { images }
    }

    pub fn apply_coalition(&self, s: Coalition) -> Coalition {
        Coalition::from_positions(s.members().map(|k| self.images[k]))
    }
}

/// Inserts the bits of a coalition over `t.len()` compressed positions at the members of `t`.
pub(crate) fn expand(compressed: u64, t: Coalition) -> Coalition {
    let mut out = 0u64;
    for (bit, k) in t.members().enumerate() {
        if compressed >> bit & 1 == 1 {
            out |= 1 << k;
        }
    }
    Coalition::from_bits(out)
}

fn subset_sums(values: &mut [Rational], n: usize, sign: bool) {
    for k in 0..n {
        let bit = 1usize << k;
        for mask in 0..values.len() {
            if mask & bit != 0 {
                let lower = values[mask ^ bit].clone();
                if sign {
                    values[mask] += lower;
                } else {
                    values[mask] -= lower;
                }
            }
        }
    }
}

impl Game {
    /// Builds a game from a full table of `2^n` values indexed by bitmask.
    pub fn from_values(players: PlayerSet, values: Vec<Rational>) -> Result<Self> {
        check_size(players.len())?;
        let expected = 1usize << players.len();
        if values.len() != expected {
            return Err(GameError::DimensionMismatch {
                expected,
                found: values.len(),
            });
        }
        Ok(Game { players, values })
    }

    /// Builds a game from labelled entries; coalitions not listed are 0.
    pub fn new_game<L, I, K, V>(labels: L, entries: I, grounded: bool) -> Result<Self>
    where
        L: IntoIterator,
        L::Item: Into<String>,
        I: IntoIterator<Item = (K, V)>,
        K: AsRef<str>,
        V: AsRef<str>,
    {
        let players = PlayerSet::new(labels)?;
        check_size(players.len())?;
        let mut values = vec![Rational::zero(); 1 << players.len()];
        for (key, value) in entries {
            let s = players.parse_coalition(key.as_ref())?;
            values[s.index()] = parse_rational(value.as_ref())?;
        }
        if grounded && !values[0].is_zero() {
            return Err(GameError::NonzeroEmptySetWhenGrounded(
                values[0].to_string(),
            ));
        }
        Ok(Game { players, values })
    }

    pub fn from_fn<F: FnMut(Coalition) -> Rational>(players: PlayerSet, mut f: F) -> Result<Self> {
        check_size(players.len())?;
        let values = Coalition::all(players.len()).map(&mut f).collect();
        Ok(Game { players, values })
    }

    pub fn zero(players: PlayerSet) -> Self {
        let values = vec![Rational::zero(); 1 << players.len()];
        Game { players, values }
    }

    /// Indicator of exactly `s`.
    pub fn dirac(players: PlayerSet, s: Coalition) -> Result<Self> {
        if s.is_empty() {
            return Err(GameError::EmptySupportForGroundedGame);
        }
        check_within(&players, s)?;
        Game::from_fn(players, |t| indicator(t == s))
    }

    /// Indicator of the supersets of `s`.
    pub fn unanimity(players: PlayerSet, s: Coalition) -> Result<Self> {
        if s.is_empty() {
            return Err(GameError::EmptySupport);
        }
        check_within(&players, s)?;
        Game::from_fn(players, |t| indicator(s.is_subset_of(t)))
    }

    pub fn additive_from_vector(x: &Allocation) -> Result<Self> {
        Game::from_fn(x.players().clone(), |s| x.sum_over(s))
    }

    /// Simple game on players `"1"..="n"` where `S` wins iff its weight reaches the quota.
    pub fn weighted_majority(weights: &[Rational], quota: &Rational) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| w.is_negative()) {
            return Err(GameError::NegativeWeight(w.to_string()));
        }
        Game::from_fn(PlayerSet::numbered(weights.len()), |s| {
            let weight = s
                .members()
                .fold(Rational::zero(), |acc, k| acc + &weights[k]);
            indicator(&weight >= quota)
        })
    }

    pub fn players(&self) -> &PlayerSet {
        &self.players
    }

    pub fn n(&self) -> usize {
        self.players.len()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, s: Coalition) -> &Rational {
        &self.values[s.index()]
    }

    pub fn value_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<&Rational> {
        Ok(self.value(self.players.coalition(labels)?))
    }

    pub fn grand(&self) -> Coalition {
        self.players.grand()
    }

    pub fn grand_value(&self) -> &Rational {
        self.value(self.grand())
    }

    pub fn is_grounded(&self) -> bool {
        self.values[0].is_zero()
    }

    /// Same table, possibly different labels.
    pub fn same_values(&self, other: &Game) -> bool {
        self.values == other.values
    }

    /// First coalition (in bitmask order) on which the two tables differ.
    pub fn first_difference(&self, other: &Game) -> Option<Coalition> {
        if self.n() != other.n() {
            return Some(Coalition::EMPTY);
        }
        self.values
            .iter()
            .zip(&other.values)
            .position(|(a, b)| a != b)
            .map(|k| Coalition::from_bits(k as u64))
    }

    pub fn with_players(&self, players: PlayerSet) -> Result<Game> {
        if players.len() != self.n() {
            return Err(GameError::DimensionMismatch {
                expected: self.n(),
                found: players.len(),
            });
        }
        Ok(Game {
            players,
            values: self.values.clone(),
        })
    }

    pub fn scaled(&self, c: &Rational) -> Game {
        Game {
            players: self.players.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn map_values<F: FnMut(&Rational) -> Rational>(&self, f: F) -> Game {
        Game {
            players: self.players.clone(),
            values: self.values.iter().map(f).collect(),
        }
    }

    pub fn mobius(&self) -> MobiusGame {
        let mut coeffs = self.values.clone();
        subset_sums(&mut coeffs, self.n(), false);
        MobiusGame {
            players: self.players.clone(),
            coeffs,
        }
    }

    /// `∂_i v(S) = v(S ∪ i) − v(S ∖ i)` as a game on the remaining players.
    pub fn derivative_player<P: PlayerRef>(&self, i: P) -> Result<Game> {
        let i = i.resolve(&self.players)?;
        self.derivative_coalition(Coalition::singleton(i))
    }

    /// `∂_T v(S) = Σ_{K ⊆ T} (−1)^{|T∖K|} v(S ∪ K)` on the players outside `T`.
    pub fn derivative_coalition(&self, t: Coalition) -> Result<Game> {
        if t.is_empty() {
            return Err(GameError::EmptyDerivativeSet);
        }
        check_within(&self.players, t)?;
        let rest = t.complement(self.n());
        let values = (0..1u64 << rest.len())
            .map(|compressed| {
                let s = expand(compressed, rest);
                self.difference_at(t, s)
            })
            .collect();
        Ok(Game {
            players: self.players.restrict(rest),
            values,
        })
    }

    /// Iterated difference `∂_T v` evaluated at `s` (which must avoid `t`).
    pub fn difference_at(&self, t: Coalition, s: Coalition) -> Rational {
        let size = t.len();
        t.subsets().fold(Rational::zero(), |acc, k| {
            let v = self.value(s.union(k));
            if (size - k.len()).is_multiple_of(2) {
                acc + v
            } else {
                acc - v
            }
        })
    }

    /// `v*(S) = v(N) − v(N ∖ S)`.
    pub fn dual(&self) -> Game {
        let n = self.n();
        let total = self.grand_value().clone();
        let values = Coalition::all(n)
            .map(|s| &total - self.value(s.complement(n)))
            .collect();
        Game {
            players: self.players.clone(),
            values,
        }
    }

    /// `σ ⋆ v(S) = v(σ⁻¹(S))`. Labels stay with their positions; the values move.
    pub fn permute(&self, sigma: &Permutation) -> Result<Game> {
        if sigma.len() != self.n() {
            return Err(GameError::NotAPermutation(self.n()));
        }
        let mut values = vec![Rational::zero(); self.values.len()];
        for s in Coalition::all(self.n()) {
            values[sigma.apply_coalition(s).index()] = self.value(s).clone();
        }
        Ok(Game {
            players: self.players.clone(),
            values,
        })
    }

    /// Subgame on the members of `t`.
    pub fn restrict(&self, t: Coalition) -> Result<Game> {
        check_within(&self.players, t)?;
        let values = (0..1u64 << t.len())
            .map(|c| self.value(expand(c, t)).clone())
            .collect();
        Ok(Game {
            players: self.players.restrict(t),
            values,
        })
    }

    pub fn restrict_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Game> {
        let t = self.players.coalition(labels).map_err(|e| match e {
            GameError::UnknownPlayerInCoalition(l) => GameError::UnknownPlayer(l),
            other => other,
        })?;
        self.restrict(t)
    }

    /// `v(N) − Σ_i v({i})`.
    pub fn cooperative_surplus(&self) -> Rational {
        (0..self.n()).fold(self.grand_value().clone(), |acc, k| {
            acc - self.value(Coalition::singleton(k))
        })
    }
}

fn indicator(b: bool) -> Rational {
    if b {
        Rational::one()
    } else {
        Rational::zero()
    }
}

pub(crate) fn check_within(players: &PlayerSet, s: Coalition) -> Result<()> {
    if s.is_subset_of(players.grand()) {
        Ok(())
    } else {
        let k = s.difference(players.grand()).members().next().unwrap_or(0);
        Err(GameError::IndexOutOfRange {
            index: k,
            arity: players.len(),
        })
    }
}

impl MobiusGame {
    pub fn new(players: PlayerSet, coeffs: Vec<Rational>) -> Result<Self> {
        check_size(players.len())?;
        let expected = 1usize << players.len();
        if coeffs.len() != expected {
            return Err(GameError::DimensionMismatch {
                expected,
                found: coeffs.len(),
            });
        }
        Ok(MobiusGame { players, coeffs })
    }

    pub fn zero(players: PlayerSet) -> Self {
        let coeffs = vec![Rational::zero(); 1 << players.len()];
        MobiusGame { players, coeffs }
    }

    pub fn players(&self) -> &PlayerSet {
        &self.players
    }

    pub fn n(&self) -> usize {
        self.players.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, s: Coalition) -> &Rational {
        &self.coeffs[s.index()]
    }

    pub fn zeta(&self) -> Game {
        let mut values = self.coeffs.clone();
        subset_sums(&mut values, self.n(), true);
        Game {
            players: self.players.clone(),
            values,
        }
    }

    /// Sum of all coefficients, which equals the value of the grand coalition.
    pub fn total(&self) -> Rational {
        self.coeffs.iter().fold(Rational::zero(), |acc, c| acc + c)
    }
}

fn check_same_shape(a: &Game, b: &Game) {
    assert_eq!(a.n(), b.n(), "games must have the same number of players");
}

impl Add for &Game {
    type Output = Game;

    fn add(self, rhs: &Game) -> Game {
        check_same_shape(self, rhs);
        Game {
            players: self.players.clone(),
            values: self
                .values
                .iter()
                .zip(&rhs.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Game {
    type Output = Game;

    fn sub(self, rhs: &Game) -> Game {
        check_same_shape(self, rhs);
        Game {
            players: self.players.clone(),
            values: self
                .values
                .iter()
                .zip(&rhs.values)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &Game {
    type Output = Game;

    fn neg(self) -> Game {
        self.map_values(|v| -v)
    }
}
