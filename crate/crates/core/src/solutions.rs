//! Imputations, the core, marginal vectors, and the Shapley and Banzhaf values.

use itertools::Itertools;
use num_traits::{Signed, Zero};

use crate::allocation::Allocation;
use crate::classes::{
    balance_certificate, is_convex, is_nonnegative, is_normalized, BalanceCertificate,
};
use crate::coalition::Coalition;
use crate::error::{GameError, Result};
use crate::game::{Game, PlayerRef};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::operad::{composite_players, partial_tensor, Splice};
use crate::players::PlayerSet;
use crate::rational::{int, pow2, Rational};

/// Largest player count for enumerating all orders of the players.
pub const MAX_ORDER_PLAYERS: usize = 8;
/// Largest player count for the permutation-average Shapley oracle.
pub const MAX_PERMUTATION_PLAYERS: usize = 10;

fn check_dimension(g: &Game, x: &Allocation) -> Result<()> {
    if x.len() == g.n() {
        Ok(())
    } else {
        Err(GameError::DimensionMismatch {
            expected: g.n(),
            found: x.len(),
        })
    }
}

/// `x(N) = v(N)`.
pub fn is_preimputation(g: &Game, x: &Allocation) -> Result<bool> {
    check_dimension(g, x)?;
    Ok(&x.total() == g.grand_value())
}

/// Preimputation with `x_i ≥ v({i})` for every player.
pub fn is_imputation(g: &Game, x: &Allocation) -> Result<bool> {
    Ok(is_preimputation(g, x)? && (0..g.n()).all(|i| x.get(i) >= g.value(Coalition::singleton(i))))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImputationSimplex {
    pub players: PlayerSet,
    /// `v^{(i)} = surplus·1^{i} + Σ_j v({j}) 1^{j}`, one per player (repeated when the surplus is 0).
    pub vertices: Vec<Allocation>,
    pub empty: bool,
}

pub fn imputation_vertices(g: &Game) -> Result<ImputationSimplex> {
    if !is_nonnegative(g) {
        return Err(GameError::NegativeGame);
    }
    let surplus = g.cooperative_surplus();
    let players = g.players().clone();
    if surplus.is_negative() {
        return Ok(ImputationSimplex {
            players,
            vertices: Vec::new(),
            empty: true,
        });
    }
    let singles: Vec<Rational> = (0..g.n())
        .map(|j| g.value(Coalition::singleton(j)).clone())
        .collect();
    let vertices = (0..g.n())
        .map(|i| {
            let mut coords = singles.clone();
            coords[i] += &surplus;
            Allocation::new(players.clone(), coords)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ImputationSimplex {
        players,
        vertices,
        empty: false,
    })
}

/// Marginal contributions along an arrival order given as 0-based positions.
pub fn marginal_vector(g: &Game, order: &[usize]) -> Result<Allocation> {
    let n = g.n();
    let mut seen = Coalition::EMPTY;
    for &k in order {
        if k >= n || seen.contains(k) {
            return Err(GameError::NotAPermutation(n));
        }
        seen = seen.with(k);
    }
    if order.len() != n {
        return Err(GameError::NotAPermutation(n));
    }
    let mut coords = vec![Rational::zero(); n];
    let mut before = Coalition::EMPTY;
    for &k in order {
        coords[k] = g.value(before.with(k)) - g.value(before);
        before = before.with(k);
    }
    Allocation::new(g.players().clone(), coords)
}

/// Arrival order by player labels.
pub fn marginal_vector_by_labels<S: AsRef<str>>(g: &Game, order: &[S]) -> Result<Allocation> {
    let positions = order
        .iter()
        .map(|l| g.players().require(l.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    marginal_vector(g, &positions)
}

/// Arrival order on `A ∘_i B` obtained from `sigma` on `A` by replacing `i` with `tau` on `B`.
pub fn composite_order(sigma: &[usize], i: usize, tau: &[usize]) -> Vec<usize> {
    let splice = Splice::new(i, tau.len());
    sigma
        .iter()
        .flat_map(|&a| {
            if a == i {
                tau.iter().map(|&t| i + t).collect::<Vec<_>>()
            } else {
                vec![splice.host_position(a)]
            }
        })
        .collect()
}

pub fn core_contains(g: &Game, x: &Allocation) -> Result<bool> {
    Ok(is_preimputation(g, x)?
        && Coalition::all(g.n())
            .skip(1)
            .all(|s| &x.sum_over(s) >= g.value(s)))
}

pub fn core_is_empty(g: &Game) -> Result<bool> {
    Ok(!balance_certificate(g)?.is_balanced())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreDescription {
    pub players: PlayerSet,
    /// `x(S) ≥ v(S)` for every nonempty `S`, together with `x(N) = v(N)`.
    pub constraints: Vec<(Coalition, Rational)>,
    pub grand_value: Rational,
    pub empty: bool,
    /// A point of the core when non-empty, or the unbalanced certificate otherwise.
    pub certificate: BalanceCertificate,
    /// Vertex list, known for convex non-negative games.
    pub vertices: Option<Vec<Allocation>>,
}

fn h_form(g: &Game) -> Vec<(Coalition, Rational)> {
    Coalition::all(g.n())
        .skip(1)
        .map(|s| (s, g.value(s).clone()))
        .collect()
}

/// H-form plus an LP emptiness decision; vertices are added for convex non-negative games.
pub fn core_description(g: &Game) -> Result<CoreDescription> {
    let certificate = balance_certificate(g)?;
    let vertices = if g.n() <= MAX_ORDER_PLAYERS && is_convex(g) && is_nonnegative(g) {
        Some(convex_vertices(g)?)
    } else {
        None
    };
    Ok(CoreDescription {
        players: g.players().clone(),
        constraints: h_form(g),
        grand_value: g.grand_value().clone(),
        empty: !certificate.is_balanced(),
        certificate,
        vertices,
    })
}

fn convex_vertices(g: &Game) -> Result<Vec<Allocation>> {
    let mut vertices: Vec<Allocation> = Vec::new();
    for order in (0..g.n()).permutations(g.n()) {
        let m = marginal_vector(g, &order)?;
        if !vertices.contains(&m) {
            vertices.push(m);
        }
    }
    for v in &vertices {
        if !core_contains(g, v)? {
            return Err(GameError::NotConvex);
        }
    }
    Ok(vertices)
}

/// Core of a convex non-negative game with its vertices, the distinct marginal vectors.
pub fn core_vertices_convex(g: &Game) -> Result<CoreDescription> {
    if g.n() > MAX_ORDER_PLAYERS {
        return Err(GameError::SizeCap {
            n: g.n(),
            cap: MAX_ORDER_PLAYERS,
        });
    }
    if !is_convex(g) {
        return Err(GameError::NotConvex);
    }
    if !is_nonnegative(g) {
        return Err(GameError::NegativeGame);
    }
    let vertices = convex_vertices(g)?;
    Ok(CoreDescription {
        players: g.players().clone(),
        constraints: h_form(g),
        grand_value: g.grand_value().clone(),
        empty: false,
        certificate: BalanceCertificate::Balanced {
            core_point: vertices[0].coords().to_vec(),
        },
        vertices: Some(vertices),
    })
}

/// Core point minimizing `objective · x`, or `None` when the core is empty.
pub fn core_point_minimizing(g: &Game, objective: &[Rational]) -> Result<Option<Allocation>> {
    let n = g.n();
    let mut lp = LinearProgram::new(n).all_free();
    for s in Coalition::all(n).skip(1) {
        let row = (0..n).map(|k| int(s.contains(k) as i64)).collect();
        let relation = if s == g.grand() {
            Relation::Eq
        } else {
            Relation::Ge
        };
        lp.add_constraint(row, relation, g.value(s).clone())?;
    }
    lp.set_objective(objective.to_vec())?;
    match lp.solve()? {
        LpOutcome::Optimal(s) => Ok(Some(Allocation::new(g.players().clone(), s.point)?)),
        LpOutcome::Infeasible => Ok(None),
        LpOutcome::Unbounded => Err(GameError::MalformedProgram("core is bounded".into())),
    }
}

/// Shapley value through the Möbius form `φ_i = Σ_{S∋i} μ_S / |S|`.
pub fn shapley(g: &Game) -> Allocation {
    let m = g.mobius();
    let mut coords = vec![Rational::zero(); g.n()];
    for s in Coalition::all(g.n()).skip(1) {
        let c = m.coeff(s);
        if c.is_zero() {
            continue;
        }
        let share = c / int(s.len() as i64);
        for k in s.members() {
            coords[k] += &share;
        }
    }
    Allocation::new(g.players().clone(), coords).expect("one coordinate per player")
}

/// Average of the marginal vectors over all orders.
pub fn shapley_by_permutations(g: &Game) -> Result<Allocation> {
    let n = g.n();
    if n > MAX_PERMUTATION_PLAYERS {
        return Err(GameError::SizeCap {
            n,
            cap: MAX_PERMUTATION_PLAYERS,
        });
    }
    let mut sum = vec![Rational::zero(); n];
    let mut count = 0i64;
    for order in (0..n).permutations(n) {
        let m = marginal_vector(g, &order)?;
        for (acc, c) in sum.iter_mut().zip(m.coords()) {
            *acc += c;
        }
        count += 1;
    }
    let count = int(count);
    Allocation::new(
        g.players().clone(),
        sum.into_iter().map(|s| s / &count).collect(),
    )
}

fn binomial(n: usize, k: usize) -> Rational {
    (0..k).fold(int(1), |acc, j| {
        acc * int((n - j) as i64) / int((j + 1) as i64)
    })
}

/// `φ_i = Σ_{S ⊆ N∖i} ∂_i v(S) / (n · C(n−1, |S|))`.
pub fn shapley_by_derivatives(g: &Game) -> Allocation {
    let n = g.n();
    let coords = (0..n)
        .map(|i| {
            Coalition::singleton(i)
                .complement(n)
                .subsets()
                .fold(Rational::zero(), |acc, s| {
                    let weight = binomial(n - 1, s.len()) * int(n as i64);
                    acc + (g.value(s.with(i)) - g.value(s)) / weight
                })
        })
        .collect();
    Allocation::new(g.players().clone(), coords).expect("one coordinate per player")
}

/// Shapley value of `a ∘_i b` from the Möbius coefficients of the two normalized factors.
pub fn composite_shapley<P: PlayerRef>(a: &Game, i: P, b: &Game) -> Result<Allocation> {
    if !is_normalized(a) || !is_normalized(b) {
        return Err(GameError::NotNormalized);
    }
    let i = i.resolve(a.players())?;
    let players = composite_players(a.players(), i, b.players())?;
    let (ma, mb) = (a.mobius(), b.mobius());
    let splice = Splice::new(i, b.n());
    let mut coords = vec![Rational::zero(); players.len()];

    let rest = Coalition::singleton(i).complement(a.n());
    let restricted = shapley(&a.restrict(rest)?);
    for (bit, j) in rest.members().enumerate() {
        coords[splice.host_position(j)] = restricted.get(bit).clone();
    }
    for s in Coalition::all(a.n()).filter(|s| s.contains(i)) {
        let lambda = ma.coeff(s);
        if lambda.is_zero() {
            continue;
        }
        for t in Coalition::all(b.n()).skip(1) {
            let rho = mb.coeff(t);
            if rho.is_zero() {
                continue;
            }
            let share = lambda * rho / int((s.len() - 1 + t.len()) as i64);
            for k in t.members() {
                coords[i + k] += &share;
            }
            for j in s.without(i).members() {
                coords[splice.host_position(j)] += &share;
            }
        }
    }
    Allocation::new(players, coords)
}

/// Banzhaf index by its derivative form `ψ_i = 2^{1−n} Σ_{S⊆N∖i} ∂_i v(S)`.
pub fn banzhaf(g: &Game) -> Allocation {
    let n = g.n();
    let scale = if n == 0 { int(1) } else { pow2(n - 1) };
    let coords = (0..n)
        .map(|i| {
            let total = Coalition::singleton(i)
                .complement(n)
                .subsets()
                .fold(Rational::zero(), |acc, s| {
                    acc + g.value(s.with(i)) - g.value(s)
                });
            total / &scale
        })
        .collect();
    Allocation::new(g.players().clone(), coords).expect("one coordinate per player")
}

fn mobius_weighted(g: &Game, weight: impl Fn(usize) -> Rational) -> Allocation {
    let m = g.mobius();
    let mut coords = vec![Rational::zero(); g.n()];
    for s in Coalition::all(g.n()).skip(1) {
        let share = m.coeff(s) * weight(s.len());
        for k in s.members() {
            coords[k] += &share;
        }
    }
    Allocation::new(g.players().clone(), coords).expect("one coordinate per player")
}

/// Banzhaf index through unanimity coefficients, `Σ_{T∋i} μ_T 2^{1−|T|}`.
pub fn banzhaf_by_mobius(g: &Game) -> Allocation {
    mobius_weighted(g, |t| int(1) / pow2(t - 1))
}

/// The linear map sending `u_S` to `2^{1−n} 1^S`.
pub fn banzhaf_unanimity_scaled(g: &Game) -> Allocation {
    let n = g.n();
    mobius_weighted(g, |_| int(1) / pow2(n.saturating_sub(1)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BanzhafVariant {
    /// Derivative form, [`banzhaf`].
    Standard,
    /// Unanimity-scaled map, [`banzhaf_unanimity_scaled`].
    UnanimityScaled,
}

impl BanzhafVariant {
    pub fn evaluate(self, g: &Game) -> Allocation {
        match self {
            BanzhafVariant::Standard => banzhaf(g),
            BanzhafVariant::UnanimityScaled => banzhaf_unanimity_scaled(g),
        }
    }
}

/// `ψ(a) ⊗_i φ(b)`, divided by `2^{|B|−1}` when `divide` is set.
pub fn composite_banzhaf_rhs<P: PlayerRef>(
    a: &Game,
    i: P,
    b: &Game,
    variant: BanzhafVariant,
    divide: bool,
) -> Result<Allocation> {
    let i = i.resolve(a.players())?;
    let product = partial_tensor(&variant.evaluate(a), i, &shapley(b))?;
    if divide && b.n() > 1 {
        Ok(product.scaled(&(int(1) / pow2(b.n() - 1))))
    } else {
        Ok(product)
    }
}

/// Splits `z` on `A ∘_i B` as `x ⊗_i y` with `Σ y = eta`.
///
/// `x_j = z_j / η` off the block, `x_i = z(B) / η`, and `y = z|_B / x_i`; when `x_i = 0` the
/// block of `z` vanishes and `fallback_y` is used.
pub fn split_tensor(
    z: &Allocation,
    a_players: &PlayerSet,
    i: usize,
    b_players: &PlayerSet,
    eta: &Rational,
    fallback_y: &Allocation,
) -> Result<(Allocation, Allocation)> {
    if eta.is_zero() {
        return Err(GameError::MalformedProgram(
            "block total must be nonzero".into(),
        ));
    }
    let (n, m) = (a_players.len(), b_players.len());
    if z.len() != n + m - 1 {
        return Err(GameError::DimensionMismatch {
            expected: n + m - 1,
            found: z.len(),
        });
    }
    let splice = Splice::new(i, m);
    let block: Vec<Rational> = (0..m).map(|t| z.get(i + t).clone()).collect();
    let xi = block.iter().fold(Rational::zero(), |acc, c| acc + c) / eta;
    let x: Vec<Rational> = (0..n)
        .map(|a| {
            if a == i {
                xi.clone()
            } else {
                z.get(splice.host_position(a)) / eta
            }
        })
        .collect();
    let y = if xi.is_zero() {
        fallback_y.coords().to_vec()
    } else {
        block.iter().map(|c| c / &xi).collect()
    };
    Ok((
        Allocation::new(a_players.clone(), x)?,
        Allocation::new(b_players.clone(), y)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::{bargaining, dictator, one, partial_compose};
    use crate::rational::frac;

    fn gamma_a() -> Game {
        Game::new_game(
            ["a1", "a2"],
            [("a1", "1"), ("a2", "1"), ("a1,a2", "3")],
            true,
        )
        .unwrap()
    }

    fn gamma_b() -> Game {
        Game::new_game(
            ["b1", "b2"],
            [("b1", "0"), ("b2", "2"), ("b1,b2", "3")],
            true,
        )
        .unwrap()
    }

    fn alloc(g: &Game, coords: &[i64]) -> Allocation {
        Allocation::new(
            g.players().clone(),
            coords.iter().map(|&c| int(c)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn imputation_checks() {
        let a = gamma_a();
        assert!(is_imputation(&a, &alloc(&a, &[2, 1])).unwrap());
        assert!(is_preimputation(&a, &alloc(&a, &[3, 0])).unwrap());
        assert!(!is_imputation(&a, &alloc(&a, &[3, 0])).unwrap());
        assert!(is_imputation(&a, &Allocation::numbered(vec![int(1)])).is_err());
    }

    #[test]
    fn imputation_simplex_of_composite() {
        let c = partial_compose(&gamma_a(), "a1", &gamma_b()).unwrap();
        let simplex = imputation_vertices(&c).unwrap();
        let got: Vec<Vec<Rational>> = simplex
            .vertices
            .iter()
            .map(|v| v.coords().to_vec())
            .collect();
        let want: Vec<Vec<Rational>> = [[4, 2, 3], [0, 6, 3], [0, 2, 7]]
            .iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect();
        assert_eq!(got, want);
        let b = imputation_vertices(&bargaining()).unwrap();
        assert_eq!(
            b.vertices,
            vec![alloc(&bargaining(), &[1, 0]), alloc(&bargaining(), &[0, 1])]
        );
        assert_eq!(
            imputation_vertices(&gamma_a().scaled(&int(-1))),
            Err(GameError::NegativeGame)
        );
    }

    #[test]
    fn marginal_vectors() {
        let c = partial_compose(&gamma_a(), "a1", &gamma_b()).unwrap();
        assert_eq!(
            marginal_vector_by_labels(&c, &["b1", "b2", "a2"]).unwrap(),
            alloc(&c, &[0, 3, 6])
        );
        assert_eq!(
            marginal_vector_by_labels(&c, &["a2", "b2", "b1"]).unwrap(),
            alloc(&c, &[2, 4, 3])
        );
        let a = gamma_a();
        assert_eq!(
            marginal_vector_by_labels(&a, &["a2", "a1"]).unwrap(),
            alloc(&a, &[2, 1])
        );
        assert_eq!(
            marginal_vector_by_labels(&a, &["a1", "a2"]).unwrap(),
            alloc(&a, &[1, 2])
        );
        assert_eq!(
            marginal_vector(&a, &[0, 0]),
            Err(GameError::NotAPermutation(2))
        );
        assert_eq!(
            marginal_vector(&a, &[0]),
            Err(GameError::NotAPermutation(2))
        );
    }

    #[test]
    fn core_examples() {
        let a = gamma_a();
        assert!(core_contains(&a, &alloc(&a, &[2, 1])).unwrap());
        let core = core_vertices_convex(&a).unwrap();
        assert_eq!(
            core.vertices.unwrap(),
            vec![alloc(&a, &[1, 2]), alloc(&a, &[2, 1])]
        );
        let majority = Game::weighted_majority(&[int(1), int(1), int(1)], &int(2)).unwrap();
        assert!(core_is_empty(&majority).unwrap());
        assert_eq!(
            core_vertices_convex(&majority).unwrap_err(),
            GameError::NotConvex
        );
        let x = Allocation::numbered(vec![int(2), int(5)]);
        let additive = Game::additive_from_vector(&x).unwrap();
        assert_eq!(
            core_vertices_convex(&additive).unwrap().vertices.unwrap(),
            vec![x]
        );
        let point = core_point_minimizing(&a, &[int(1), int(0)])
            .unwrap()
            .unwrap();
        assert_eq!(point, alloc(&a, &[1, 2]));
        assert_eq!(
            core_point_minimizing(&majority, &vec![int(0); 3]).unwrap(),
            None
        );
    }

    #[test]
    fn shapley_examples() {
        let players = PlayerSet::numbered(3);
        let u = Game::unanimity(players.clone(), Coalition::from_positions([0, 1])).unwrap();
        let want = vec![frac(1, 2), frac(1, 2), int(0)];
        assert_eq!(shapley(&u).coords(), want.as_slice());
        assert_eq!(
            shapley_by_permutations(&u).unwrap().coords(),
            want.as_slice()
        );
        assert_eq!(shapley_by_derivatives(&u).coords(), want.as_slice());
        let x = Allocation::numbered(vec![int(3), frac(-1, 2), int(0)]);
        assert_eq!(shapley(&Game::additive_from_vector(&x).unwrap()), x);
        assert_eq!(shapley(&bargaining()).coords(), &[frac(1, 2), frac(1, 2)]);
    }

    #[test]
    fn composite_shapley_examples() {
        let b = Game::unanimity(PlayerSet::new(["1", "2"]).unwrap(), Coalition::full(2)).unwrap();
        let d1 =
            Game::unanimity(PlayerSet::new(["a", "b"]).unwrap(), Coalition::singleton(0)).unwrap();
        let phi = composite_shapley(&b, 0, &d1).unwrap();
        assert_eq!(phi.players().labels(), &["a", "b", "2"]);
        assert_eq!(phi.coords(), &[frac(1, 2), int(0), frac(1, 2)]);
        assert_eq!(phi, shapley(&partial_compose(&b, 0, &d1).unwrap()));
        let unchanged = composite_shapley(&b, 1, &one()).unwrap();
        assert_eq!(unchanged.coords(), shapley(&b).coords());
        assert_eq!(
            composite_shapley(&gamma_a(), 0, &b),
            Err(GameError::NotNormalized)
        );
    }

    #[test]
    fn banzhaf_examples() {
        assert_eq!(banzhaf(&dictator(1).unwrap()).coords(), &[int(1), int(0)]);
        assert_eq!(banzhaf(&bargaining()).coords(), &[frac(1, 2), frac(1, 2)]);
        let u = Game::unanimity(
            PlayerSet::new(["a", "b", "2"]).unwrap(),
            Coalition::from_positions([0, 1]),
        )
        .unwrap();
        assert_eq!(banzhaf(&u).coords(), &[frac(1, 2), frac(1, 2), int(0)]);
        assert_eq!(banzhaf_by_mobius(&u), banzhaf(&u));
        assert_eq!(
            banzhaf_unanimity_scaled(&u).coords(),
            &[frac(1, 4), frac(1, 4), int(0)]
        );
        let full = Game::unanimity(PlayerSet::numbered(3), Coalition::full(3)).unwrap();
        assert_eq!(banzhaf_unanimity_scaled(&full), banzhaf(&full));
    }

    #[test]
    fn banzhaf_discrepancy_fixture() {
        let (d1, b) = (dictator(1).unwrap(), bargaining());
        let c = partial_compose(&d1, 0, &b).unwrap();
        assert_eq!(banzhaf(&c).coords(), &[frac(1, 2), frac(1, 2), int(0)]);
        assert_eq!(
            banzhaf_unanimity_scaled(&c).coords(),
            &[frac(1, 4), frac(1, 4), int(0)]
        );
        let rhs = composite_banzhaf_rhs(&d1, 0, &b, BanzhafVariant::UnanimityScaled, true).unwrap();
        assert_eq!(rhs.coords(), &[frac(1, 8), frac(1, 8), int(0)]);
    }

    #[test]
    fn tensor_vertices_and_splitting() {
        let (a, b) = (gamma_a(), gamma_b());
        let xs = core_vertices_convex(&a).unwrap().vertices.unwrap();
        let ys = core_vertices_convex(&b).unwrap().vertices.unwrap();
        let c = partial_compose(&a, 0, &b).unwrap();
        for x in &xs {
            for y in &ys {
                let z = partial_tensor(x, 0, y).unwrap();
                assert!(core_contains(&c, &z).unwrap());
                let (x2, y2) =
                    split_tensor(&z, a.players(), 0, b.players(), b.grand_value(), y).unwrap();
                assert_eq!((&x2, &y2), (x, y));
            }
        }
        let order = composite_order(&[1, 0], 0, &[1, 0]);
        assert_eq!(order, vec![2, 1, 0]);
    }
}
