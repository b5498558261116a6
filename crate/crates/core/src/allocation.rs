//! Payoff vectors indexed by a player set.

use num_traits::Zero;

use crate::error::{GameError, Result};
use crate::players::PlayerSet;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Allocation {
    players: PlayerSet,
    coords: Vec<Rational>,
}

impl Allocation {
    pub fn new(players: PlayerSet, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != players.len() {
            return Err(GameError::DimensionMismatch {
                expected: players.len(),
                found: coords.len(),
            });
        }
        Ok(Allocation { players, coords })
    }

    pub fn zero(players: PlayerSet) -> Self {
        let coords = vec![Rational::zero(); players.len()];
        Allocation { players, coords }
    }

    /// Allocation over players `"1"..="n"`.
    pub fn numbered(coords: Vec<Rational>) -> Self {
        Allocation {
            players: PlayerSet::numbered(coords.len()),
            coords,
        }
    }

    pub fn players(&self) -> &PlayerSet {
        &self.players
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn get(&self, position: usize) -> &Rational {
        &self.coords[position]
    }

    pub fn by_label(&self, label: &str) -> Option<&Rational> {
        self.players.position(label).map(|k| &self.coords[k])
    }

    pub fn total(&self) -> Rational {
        self.coords.iter().fold(Rational::zero(), |acc, c| acc + c)
    }

    /// Sum of the coordinates of the members of `s`.
    pub fn sum_over(&self, s: crate::Coalition) -> Rational {
        s.members()
            .fold(Rational::zero(), |acc, k| acc + &self.coords[k])
    }

    pub fn scaled(&self, c: &Rational) -> Allocation {
        Allocation {
            players: self.players.clone(),
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }
}

impl std::fmt::Display for Allocation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
