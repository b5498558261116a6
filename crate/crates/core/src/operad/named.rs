use crate::coalition::Coalition;
use crate::error::{GameError, Result};
use crate::game::Game;
use crate::players::PlayerSet;
use crate::rational::int;

/// The 1-player game **1**, the unit for composition.
pub fn one() -> Game {
    Game::from_values(PlayerSet::numbered(1), vec![int(0), int(1)]).expect("1-player table")
}

/// The 0-player game equal to 1 on the empty coalition.
pub fn v_empty() -> Game {
    Game::from_values(PlayerSet::numbered(0), vec![int(1)]).expect("0-player table")
}

/// `B = u_{12}`.
pub fn bargaining() -> Game {
    Game::unanimity(PlayerSet::numbered(2), Coalition::full(2)).expect("nonempty support")
}

/// `d_k = u_{k}` on two players, `k ∈ {1, 2}`.
pub fn dictator(k: usize) -> Result<Game> {
    if !(1..=2).contains(&k) {
        return Err(GameError::IndexOutOfRange { index: k, arity: 2 });
    }
    Game::unanimity(PlayerSet::numbered(2), Coalition::singleton(k - 1))
}

/// `B* = d_1 + d_2 − B`.
pub fn dual_bargaining() -> Game {
    let d1 = dictator(1).expect("valid dictator");
    let d2 = dictator(2).expect("valid dictator");
    &(&d1 + &d2) - &bargaining()
}
