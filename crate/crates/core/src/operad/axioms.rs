//! Exact checks of the operad axioms on concrete games.

use serde::Serialize;

use super::{one, partial_compose, Splice};
use crate::coalition::Coalition;
use crate::error::{GameError, Result};
use crate::game::{Game, Permutation};
use crate::players::PlayerSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Sequential,
    Parallel,
    RightUnit,
    LeftUnit,
    EquivarianceInner,
    EquivarianceOuter,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub holds: bool,
    /// First coalition (bitmask over composite positions) where the two sides differ.
    pub first_difference: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

fn compare(axiom: Axiom, lhs: &Game, rhs: &Game) -> AxiomCheck {
    let first_difference = lhs.first_difference(rhs).map(Coalition::bits);
    AxiomCheck {
        axiom,
        holds: first_difference.is_none(),
        first_difference,
    }
}

fn relabel(g: &Game, prefix: &str) -> Result<Game> {
    g.with_players(PlayerSet::new((1..=g.n()).map(|k| format!("{prefix}{k}")))?)
}

/// σ′ acting as `sigma` on the block `[i, i + q)` and fixing everything else.
fn inner_block_permutation(total: usize, i: usize, sigma: &Permutation) -> Permutation {
    let images = (0..total)
        .map(|c| {
            if c >= i && c < i + sigma.len() {
                i + sigma.apply(c - i)
            } else {
                c
            }
        })
        .collect();
    Permutation::new(images).expect("block permutation")
}

/// τ′ acting as `tau` on host positions and moving the block at `i` to the block at `τ(i)`.
fn outer_block_permutation(p: usize, q: usize, i: usize, tau: &Permutation) -> Permutation {
    let before = Splice::new(i, q);
    let after = Splice::new(tau.apply(i), q);
    let mut images = vec![0; p + q - 1];
    for a in (0..p).filter(|&a| a != i) {
        images[before.host_position(a)] = after.host_position(tau.apply(a));
    }
    for t in 0..q {
        images[i + t] = tau.apply(i) + t;
    }
    Permutation::new(images).expect("block permutation")
}

#[allow(clippy::too_many_arguments)]
/// Checks the sequential, parallel, unit and both equivariance axioms for `λ` (arity p),
/// `μ` (arity q) and `ν`, at 0-based positions `i` of λ, `j` of μ and `k` of λ (parallel, needs
/// `i < k`). `sigma` permutes μ's positions and `tau` permutes λ's positions.
pub fn check_operad_axioms(
    lambda: &Game,
    mu: &Game,
    nu: &Game,
    i: usize,
    j: usize,
    k: Option<usize>,
    sigma: &Permutation,
    tau: &Permutation,
) -> Result<AxiomReport> {
    let (p, q) = (lambda.n(), mu.n());
    if i >= p {
        return Err(GameError::IndexOutOfRange { index: i, arity: p });
    }
    if j >= q {
        return Err(GameError::IndexOutOfRange { index: j, arity: q });
    }
    if let Some(k) = k {
        if k >= p || k <= i {
            return Err(GameError::IndexOutOfRange { index: k, arity: p });
        }
    }
    if sigma.len() != q || tau.len() != p {
        return Err(GameError::NotAPermutation(if sigma.len() != q {
            q
        } else {
            p
        }));
    }
    let lambda = relabel(lambda, "l")?;
    let mu = relabel(mu, "m")?;
    let nu = relabel(nu, "n")?;
    let mut checks = Vec::new();

    let lhs = partial_compose(&partial_compose(&lambda, i, &mu)?, i + j, &nu)?;
    let rhs = partial_compose(&lambda, i, &partial_compose(&mu, j, &nu)?)?;
    checks.push(compare(Axiom::Sequential, &lhs, &rhs));

    if let Some(k) = k {
        let lhs = partial_compose(&partial_compose(&lambda, i, &mu)?, k + q - 1, &nu)?;
        let rhs = partial_compose(&partial_compose(&lambda, k, &nu)?, i, &mu)?;
        checks.push(compare(Axiom::Parallel, &lhs, &rhs));
    }

    let unit = relabel(&one(), "e")?;
    checks.push(compare(
        Axiom::RightUnit,
        &partial_compose(&lambda, i, &unit)?,
        &lambda,
    ));
    checks.push(compare(
        Axiom::LeftUnit,
        &partial_compose(&unit, 0, &lambda)?,
        &lambda,
    ));

    let composite = partial_compose(&lambda, i, &mu)?;
    let lhs = partial_compose(&lambda, i, &mu.permute(sigma)?)?;
    let rhs = composite.permute(&inner_block_permutation(p + q - 1, i, sigma))?;
    checks.push(compare(Axiom::EquivarianceInner, &lhs, &rhs));

    let lhs = partial_compose(&lambda.permute(tau)?, tau.apply(i), &mu)?;
    let rhs = composite.permute(&outer_block_permutation(p, q, i, tau))?;
    checks.push(compare(Axiom::EquivarianceOuter, &lhs, &rhs));

    Ok(AxiomReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::{bargaining, dictator};

    #[test]
    fn generators_satisfy_axioms() {
        let b = bargaining();
        let d1 = dictator(1).unwrap();
        let report = check_operad_axioms(
            &b,
            &d1,
            &b,
            0,
            1,
            Some(1),
            &Permutation::transposition(2, 0, 1),
            &Permutation::transposition(2, 0, 1),
        )
        .unwrap();
        assert!(report.all_hold(), "{report:?}");
        assert_eq!(report.checks.len(), 6);
    }

    #[test]
    fn parallel_needs_ordered_positions() {
        let b = bargaining();
        let id = Permutation::identity(2);
        assert!(check_operad_axioms(&b, &b, &b, 1, 0, Some(0), &id, &id).is_err());
        assert!(check_operad_axioms(&b, &b, &b, 2, 0, None, &id, &id).is_err());
    }

    #[test]
    fn outer_block_permutation_moves_the_block() {
        let tau = Permutation::new(vec![2, 0, 1]).unwrap();
        let t = outer_block_permutation(3, 2, 0, &tau);
        assert_eq!(t.images(), &[2, 3, 0, 1]);
    }
}
