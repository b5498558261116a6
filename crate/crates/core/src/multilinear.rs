//! Multilinear extensions `f_v(x) = Σ_S μ_S Π_{i∈S} x_i` and their substitution.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::allocation::Allocation;
use crate::coalition::Coalition;
use crate::error::{GameError, Result};
use crate::game::{Game, MobiusGame, PlayerRef};
use crate::operad::{composite_players, Splice};
use crate::players::PlayerSet;
use crate::rational::Rational;

/// Sparse multilinear polynomial: monomial `x_S` for each coalition `S` of the variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultilinearPoly {
    vars: PlayerSet,
    coeffs: BTreeMap<Coalition, Rational>,
}

impl MultilinearPoly {
    pub fn new(
        vars: PlayerSet,
        terms: impl IntoIterator<Item = (Coalition, Rational)>,
    ) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for (s, c) in terms {
            crate::game::check_within(&vars, s)?;
            *coeffs.entry(s).or_insert_with(Rational::zero) += c;
        }
        coeffs.retain(|_, c: &mut Rational| !c.is_zero());
        Ok(MultilinearPoly { vars, coeffs })
    }

    pub fn zero(vars: PlayerSet) -> Self {
        MultilinearPoly {
            vars,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn vars(&self) -> &PlayerSet {
        &self.vars
    }

    pub fn coeff(&self, s: Coalition) -> Rational {
        self.coeffs.get(&s).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Coalition, &Rational)> {
        self.coeffs.iter().map(|(s, c)| (*s, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &[Rational]) -> Result<Rational> {
        if x.len() != self.vars.len() {
            return Err(GameError::DimensionMismatch {
                expected: self.vars.len(),
                found: x.len(),
            });
        }
        Ok(self.coeffs.iter().fold(Rational::zero(), |acc, (s, c)| {
            acc + s.members().fold(c.clone(), |prod, k| prod * &x[k])
        }))
    }

    pub fn eval_at(&self, x: &Allocation) -> Result<Rational> {
        self.eval(x.coords())
    }

    /// Replaces variable `i` by `g` and expands; `g`'s variables take the place of `i`.
    pub fn substitute<P: PlayerRef>(&self, i: P, g: &MultilinearPoly) -> Result<MultilinearPoly> {
        let i = i.resolve(&self.vars)?;
        let vars = composite_players(&self.vars, i, &g.vars).map_err(|e| match e {
            GameError::LabelCollision(l) => GameError::VariableCollision(l),
            other => other,
        })?;
        let splice = Splice::new(i, g.vars.len());
        let mut coeffs: BTreeMap<Coalition, Rational> = BTreeMap::new();
        for (s, c) in &self.coeffs {
            if s.contains(i) {
                for (t, d) in &g.coeffs {
                    *coeffs
                        .entry(splice.join(*s, *t))
                        .or_insert_with(Rational::zero) += c * d;
                }
            } else {
                *coeffs
                    .entry(splice.join(*s, Coalition::EMPTY))
                    .or_insert_with(Rational::zero) += c;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(MultilinearPoly { vars, coeffs })
    }

    /// Substitutes `gs[k]` for the `k`-th variable, for every variable.
    pub fn substitute_all(&self, gs: &[MultilinearPoly]) -> Result<MultilinearPoly> {
        if gs.len() != self.vars.len() {
            return Err(GameError::ArityMismatch {
                expected: self.vars.len(),
                found: gs.len(),
            });
        }
        let mut result = self.clone();
        let mut position = 0;
        for g in gs {
            result = result.substitute(position, g)?;
            position += g.vars.len();
        }
        Ok(result)
    }
}

/// The multilinear extension, with the Möbius coefficients of `g`.
pub fn extension(g: &Game) -> MultilinearPoly {
    let m = g.mobius();
    let terms = Coalition::all(g.n()).map(|s| (s, m.coeff(s).clone()));
    MultilinearPoly::new(g.players().clone(), terms).expect("coalitions within the player set")
}

/// `Σ_S v(S) Π_{i∈S} x_i Π_{i∉S} (1 − x_i)`.
pub fn eval_product_form(g: &Game, x: &[Rational]) -> Result<Rational> {
    if x.len() != g.n() {
        return Err(GameError::DimensionMismatch {
            expected: g.n(),
            found: x.len(),
        });
    }
    Ok(Coalition::all(g.n()).fold(Rational::zero(), |acc, s| {
        let weight = (0..g.n()).fold(Rational::one(), |w, k| {
            if s.contains(k) {
                w * &x[k]
            } else {
                w * (Rational::one() - &x[k])
            }
        });
        acc + weight * g.value(s)
    }))
}

pub fn poly_to_game(p: &MultilinearPoly) -> Result<Game> {
    let mut coeffs = vec![Rational::zero(); 1 << p.vars.len()];
    for (s, c) in &p.coeffs {
        coeffs[s.index()] = c.clone();
    }
    Ok(MobiusGame::new(p.vars.clone(), coeffs)?.zeta())
}

impl fmt::Display for MultilinearPoly {
    /// Terms by increasing degree, then by bitmask: `1/2*x{a1,a2} + x{b1}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(&Coalition, &Rational)> = self.coeffs.iter().collect();
        terms.sort_by_key(|(s, _)| (s.len(), s.bits()));
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (s, c)) in terms.into_iter().enumerate() {
            let negative = c < &Rational::zero();
            let magnitude = if negative { -c.clone() } else { c.clone() };
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let monomial = format!("x{{{}}}", self.vars.format_coalition(*s));
            if s.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{monomial}")?;
            } else {
                write!(f, "{magnitude}*{monomial}")?;
            }
        }
        Ok(())
    }
}
