#![allow(dead_code)]

use coop_operad::rational::frac;
use coop_operad::{Game, PlayerSet, Rational};
use num_traits::Zero;
use proptest::collection::vec;
use proptest::prelude::*;

pub fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=3).prop_map(|(p, q)| frac(p, q))
}

fn table(n: usize, grounded: bool, prefix: &'static str) -> impl Strategy<Value = Game> {
    vec(rational(), 1 << n).prop_map(move |mut values| {
        if grounded {
            values[0] = Rational::zero();
        }
        let players = PlayerSet::new((1..=n).map(|k| format!("{prefix}{k}"))).unwrap();
        Game::from_values(players, values).unwrap()
    })
}

/// Grounded game with between `lo` and `hi` players labelled `{prefix}1..`.
pub fn grounded_game(lo: usize, hi: usize, prefix: &'static str) -> impl Strategy<Value = Game> {
    (lo..=hi).prop_flat_map(move |n| table(n, true, prefix))
}

pub fn any_game(lo: usize, hi: usize, prefix: &'static str) -> impl Strategy<Value = Game> {
    (lo..=hi).prop_flat_map(move |n| table(n, false, prefix))
}

/// Grounded game with `v(N) = 1`.
pub fn normalized_game(lo: usize, hi: usize, prefix: &'static str) -> impl Strategy<Value = Game> {
    grounded_game(lo.max(1), hi, prefix).prop_map(|g| {
        let full = g.grand();
        let values = g
            .values()
            .iter()
            .enumerate()
            .map(|(k, v)| {
                if k == full.index() {
                    frac(1, 1)
                } else {
                    v.clone()
                }
            })
            .collect();
        Game::from_values(g.players().clone(), values).unwrap()
    })
}

pub fn points(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    vec((-4i64..=4, 1i64..=4).prop_map(|(p, q)| frac(p, q)), n)
}
