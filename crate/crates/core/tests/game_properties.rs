mod common;

use common::*;
use coop_operad::rational::int;
use coop_operad::{Coalition, Game, Permutation, Rational};
use num_traits::Zero;
use proptest::prelude::*;
use proptest::sample::subsequence;

/// Alternating-sum definition, evaluated directly.
fn naive_mobius(g: &Game, s: Coalition) -> Rational {
    s.subsets().fold(Rational::zero(), |acc, t| {
        if (s.len() - t.len()).is_multiple_of(2) {
            acc + g.value(t)
        } else {
            acc - g.value(t)
        }
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

proptest! {
    #[test]
    fn zeta_and_mobius_are_inverse(g in any_game(0, 10, "p")) {
        let m = g.mobius();
        prop_assert_eq!(m.zeta(), g.clone());
        prop_assert_eq!(m.zeta().mobius(), m);
    }

    #[test]
    fn fast_mobius_matches_definition(g in any_game(0, 6, "p")) {
        let m = g.mobius();
        for s in Coalition::all(g.n()) {
            prop_assert_eq!(m.coeff(s), &naive_mobius(&g, s));
        }
    }

    #[test]
    fn coalition_derivative_is_iterated(g in any_game(2, 6, "p"), picks in subsequence((0..6).collect::<Vec<usize>>(), 1..=3)) {
        let t: Vec<usize> = picks.into_iter().filter(|&k| k < g.n()).collect();
        prop_assume!(!t.is_empty());
        let direct = g.derivative_coalition(Coalition::from_positions(t.iter().copied())).unwrap();
        for order in [t.clone(), t.iter().rev().copied().collect()] {
            let mut iterated = g.clone();
            for k in &order {
                let label = g.players().label(*k).to_string();
                iterated = iterated.derivative_player(label.as_str()).unwrap();
            }
            prop_assert_eq!(&iterated, &direct);
        }
    }

    #[test]
    fn dual_identities(g in grounded_game(1, 6, "p")) {
        let n = g.n();
        let d = g.dual();
        prop_assert_eq!(d.dual(), g.clone());
        let m = g.mobius();
        for s in Coalition::all(n) {
            let hitting = Coalition::all(n)
                .filter(|t| !t.is_disjoint(s))
                .fold(Rational::zero(), |acc, t| acc + m.coeff(t));
            prop_assert_eq!(d.value(s), &hitting);
        }
        for i in 0..n {
            let (di, gi) = (d.derivative_player(i).unwrap(), g.derivative_player(i).unwrap());
            for s in Coalition::all(n - 1) {
                prop_assert_eq!(di.value(s), gi.value(s.complement(n - 1)));
            }
        }
    }

    #[test]
    fn double_dual_removes_the_empty_value(g in any_game(0, 5, "p")) {
        let offset = g.value(Coalition::EMPTY).clone();
        prop_assert_eq!(g.dual().dual(), g.map_values(|v| v - &offset));
    }

    #[test]
    fn permutation_is_a_left_action(g in any_game(3, 3, "p"), s in permutation(3), t in permutation(3)) {
        let composed = g.permute(&s.compose(&t)).unwrap();
        prop_assert_eq!(&composed, &g.permute(&t).unwrap().permute(&s).unwrap());
        let (moved, m) = (g.permute(&s).unwrap().mobius(), g.mobius());
        for c in Coalition::all(3) {
            prop_assert_eq!(moved.coeff(s.apply_coalition(c)), m.coeff(c));
        }
    }

    #[test]
    fn restriction_restricts_mobius(g in any_game(4, 4, "p"), bits in 0u64..16) {
        let t = Coalition::from_bits(bits);
        let r = g.restrict(t).unwrap();
        let (mg, mr) = (g.mobius(), r.mobius());
        for compressed in Coalition::all(t.len()) {
            let s = Coalition::from_positions(t.members().enumerate().filter(|(b, _)| compressed.contains(*b)).map(|(_, k)| k));
            prop_assert_eq!(mr.coeff(compressed), mg.coeff(s));
        }
    }

    #[test]
    fn surplus_of_additive_vanishes(x in points(5)) {
        let g = Game::additive_from_vector(&coop_operad::Allocation::numbered(x)).unwrap();
        prop_assert_eq!(g.cooperative_surplus(), int(0));
        for i in 0..5 {
            let d = g.derivative_player(i).unwrap();
            prop_assert!(d.values().iter().all(|v| v == g.value(Coalition::singleton(i))));
        }
    }
}
