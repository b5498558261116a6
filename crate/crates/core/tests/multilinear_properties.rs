mod common;

use common::*;
use coop_operad::multilinear::*;
use coop_operad::operad::{owen_tensor_composition, total_compose};
use coop_operad::random::{random_capacity, random_normalized};
use coop_operad::rational::frac;
use coop_operad::{partial_compose, Coalition, Game, Rational};
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #[test]
    fn product_form_equals_monomial_form(g in any_game(0, 5, "p"), x in points(5)) {
        let x = &x[..g.n()];
        prop_assert_eq!(extension(&g).eval(x).unwrap(), eval_product_form(&g, x).unwrap());
    }

    #[test]
    fn extension_is_linear(g in any_game(3, 3, "p"), h in any_game(3, 3, "p"), c in rational()) {
        let sum = extension(&(&g + &h.scaled(&c)));
        let (eg, eh) = (extension(&g), extension(&h));
        for s in Coalition::all(3) {
            prop_assert_eq!(sum.coeff(s), eg.coeff(s) + &c * eh.coeff(s));
        }
    }

    #[test]
    fn extension_is_affine_in_each_coordinate(g in any_game(1, 4, "p"), x in points(4), i in 0usize..4) {
        let (n, i) = (g.n(), i % g.n());
        let f = extension(&g);
        let at = |t: i64| {
            let mut y = x[..n].to_vec();
            y[i] += Rational::from_integer(t.into());
            f.eval(&y).unwrap()
        };
        let (f0, f1, f2, f3) = (at(0), at(1), at(2), at(-3));
        prop_assert_eq!(&f2 - &f1, &f1 - &f0);
        prop_assert_eq!(&f0 - &f3, (&f1 - &f0) * frac(3, 1));
    }

    #[test]
    fn vertices_recover_values(g in any_game(0, 4, "p")) {
        let f = extension(&g);
        for s in Coalition::all(g.n()) {
            let e: Vec<Rational> = (0..g.n()).map(|k| frac(s.contains(k) as i64, 1)).collect();
            prop_assert_eq!(&f.eval(&e).unwrap(), g.value(s));
        }
        prop_assert_eq!(poly_to_game(&f).unwrap(), g);
    }

    #[test]
    fn normalized_composition_is_substitution(a in normalized_game(1, 3, "a"), b in normalized_game(1, 3, "b"), pick in 0usize..3) {
        let i = pick % a.n();
        let by_substitution = extension(&a).substitute(i, &extension(&b)).unwrap();
        prop_assert_eq!(by_substitution, extension(&partial_compose(&a, i, &b).unwrap()));
    }
}

fn normalized_capacity(rng: &mut ChaCha8Rng) -> Game {
    loop {
        let c = random_capacity(rng, 2);
        if !c.grand_value().is_zero() {
            return c.scaled(&(frac(1, 1) / c.grand_value()));
        }
    }
}

#[test]
fn full_substitution_is_tensor_composition() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..30 {
        let quotient = random_normalized(&mut rng, 2);
        let comps: Vec<_> = (0..2).map(|_| normalized_capacity(&mut rng)).collect();
        let total = total_compose(&quotient, &comps).unwrap();
        let polys: Vec<_> = comps.iter().map(extension).collect();
        assert_eq!(
            extension(&quotient).substitute_all(&polys).unwrap(),
            extension(&total)
        );
        assert_eq!(owen_tensor_composition(&quotient, &comps).unwrap(), total);
    }
}
