//! Classical compositions expressed through the operad.

use num_traits::{One, Zero};

use super::{bargaining, composite_players, dual_bargaining, total_compose};
use crate::classes::{is_monotone, is_nonnegative, is_normalized, is_simple};
use crate::coalition::Coalition;
use crate::error::{GameError, Result};
use crate::game::{check_size, Game};
use crate::players::PlayerSet;
use crate::rational::Rational;

/// `(B ∘_1 g1) ∘ g2`: for simple games, a coalition wins iff it wins in both blocks.
pub fn shapley_product(g1: &Game, g2: &Game) -> Result<Game> {
    total_compose(&bargaining(), &[g1.clone(), g2.clone()])
}

/// `(B* ∘_1 g1) ∘ g2`: for simple games, a coalition wins iff it wins in either block.
pub fn shapley_sum(g1: &Game, g2: &Game) -> Result<Game> {
    total_compose(&dual_bargaining(), &[g1.clone(), g2.clone()])
}

/// Player list and block coalitions of a total composition.
fn blocks(g0: &Game, comps: &[Game]) -> Result<(PlayerSet, Vec<Coalition>)> {
    if comps.len() != g0.n() {
        return Err(GameError::ArityMismatch {
            expected: g0.n(),
            found: comps.len(),
        });
    }
    let mut players = g0.players().clone();
    let mut position = 0;
    let mut blocks = Vec::with_capacity(comps.len());
    for c in comps {
        players = composite_players(&players, position, c.players())?;
        blocks.push(Coalition::from_positions(position..position + c.n()));
        position += c.n();
    }
    check_size(players.len())?;
    Ok((players, blocks))
}

/// Compressed restriction of `s` to the members of `block`.
fn compress(s: Coalition, block: Coalition) -> Coalition {
    let mut out = 0u64;
    for (bit, k) in block.members().enumerate() {
        if s.contains(k) {
            out |= 1 << bit;
        }
    }
    Coalition::from_bits(out)
}

/// Compound simple game: `S` wins iff the set of blocks it controls wins the quotient.
pub fn simple_compound(g0: &Game, comps: &[Game]) -> Result<Game> {
    if !is_simple(g0) || comps.iter().any(|c| !is_simple(c)) {
        return Err(GameError::NotSimple);
    }
    if !is_monotone(g0) {
        return Err(GameError::NotMonotone);
    }
    let (players, blocks) = blocks(g0, comps)?;
    Game::from_fn(players, |s| {
        let controlled = Coalition::from_positions(
            blocks
                .iter()
                .zip(comps)
                .enumerate()
                .filter(|(_, (block, c))| c.value(compress(s, **block)).is_one())
                .map(|(k, _)| k),
        );
        g0.value(controlled).clone()
    })
}

/// `v(S) = Σ_{T ⊆ N_0} Π_{i∈T} v_i(S_i) Π_{i∉T} (1 − v_i(S_i)) · v_0(T)`.
pub fn owen_tensor_composition(g0: &Game, comps: &[Game]) -> Result<Game> {
    if comps.iter().any(|c| !is_normalized(c)) {
        return Err(GameError::NotNormalized);
    }
    if comps.iter().any(|c| !is_nonnegative(c)) {
        return Err(GameError::NegativeGame);
    }
    let (players, blocks) = blocks(g0, comps)?;
    let k = g0.n();
    Game::from_fn(players, |s| {
        let p: Vec<&Rational> = blocks
            .iter()
            .zip(comps)
            .map(|(block, c)| c.value(compress(s, *block)))
            .collect();
        Coalition::all(k).fold(Rational::zero(), |acc, t| {
            let weight = (0..k).fold(Rational::one(), |w, j| {
                if t.contains(j) {
                    w * p[j]
                } else {
                    w * (Rational::one() - p[j])
                }
            });
            acc + weight * g0.value(t)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::{dictator, one, partial_compose};
    use crate::rational::{frac, int};

    fn majority3() -> Game {
        Game::weighted_majority(&[int(1), int(1), int(1)], &int(2)).unwrap()
    }

    #[test]
    fn product_and_sum_of_dictators() {
        let d1 = dictator(1).unwrap();
        let p = shapley_product(&d1, &d1).unwrap();
        let s = shapley_sum(&d1, &d1).unwrap();
        assert_eq!(p.n(), 4);
        for c in Coalition::all(4) {
            assert_eq!(p.value(c), &int((c.contains(0) && c.contains(2)) as i64));
            assert_eq!(s.value(c), &int((c.contains(0) || c.contains(2)) as i64));
        }
    }

    #[test]
    fn product_with_one_adds_a_veto_player() {
        let g = majority3();
        let p = shapley_product(&one(), &g).unwrap();
        for c in Coalition::all(4) {
            let inner = Coalition::from_bits(c.bits() >> 1);
            let wins = c.contains(0) && g.value(inner).is_one();
            assert_eq!(p.value(c), &int(wins as i64));
        }
    }

    #[test]
    fn two_tier_election_matches_total_composition() {
        let m = majority3();
        let comps = vec![m.clone(), m.clone(), m.clone()];
        let compound = simple_compound(&m, &comps).unwrap();
        assert_eq!(compound.n(), 9);
        assert_eq!(compound, total_compose(&m, &comps).unwrap());
        let first = Coalition::from_positions([0, 1, 3, 4]);
        assert_eq!(compound.value(first), &int(1));
        assert_eq!(
            compound.value(Coalition::from_positions([0, 1, 3, 6])),
            &int(0)
        );
    }

    #[test]
    fn compound_edge_cases() {
        let m = majority3();
        let units = vec![one(), one(), one()];
        assert!(simple_compound(&m, &units).unwrap().same_values(&m));
        let d1 = dictator(1).unwrap();
        let c = simple_compound(&d1, &[m.clone(), m.clone()]).unwrap();
        for s in Coalition::all(6) {
            let block1 = Coalition::from_bits(s.bits() & 0b111);
            assert_eq!(c.value(s), m.value(block1));
        }
        let half = majority3().scaled(&frac(1, 2));
        assert_eq!(
            simple_compound(&m, &[half, m.clone(), m.clone()]),
            Err(GameError::NotSimple)
        );
    }

    #[test]
    fn owen_composition_matches_operad() {
        let g0 =
            Game::new_game(["1", "2"], [("1", "1/3"), ("2", "-2"), ("1,2", "5")], true).unwrap();
        let c1 =
            Game::new_game(["a", "b"], [("a", "1/2"), ("b", "1/4"), ("a,b", "1")], true).unwrap();
        let c2 = Game::new_game(["c", "d"], [("c", "2"), ("d", "0"), ("c,d", "1")], true).unwrap();
        let comps = [c1, c2];
        assert_eq!(
            owen_tensor_composition(&g0, &comps).unwrap(),
            total_compose(&g0, &comps).unwrap()
        );
        let single = owen_tensor_composition(&one(), &[comps[0].clone()]).unwrap();
        assert_eq!(single, partial_compose(&one(), 0, &comps[0]).unwrap());
        assert_eq!(single, comps[0]);
        let bad = comps[0].scaled(&int(2));
        assert_eq!(
            owen_tensor_composition(&one(), &[bad]),
            Err(GameError::NotNormalized)
        );
    }
}
