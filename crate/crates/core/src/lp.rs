//! Exact rational linear programming: dense tableau, two phases, Bland's rule.

use num_traits::{Signed, Zero};

use crate::error::{GameError, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Ge,
    Le,
    Eq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    NonNegative,
    Free,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        let lhs = dot(&self.coeffs, x);
        match self.relation {
            Relation::Ge => lhs >= self.rhs,
            Relation::Le => lhs <= self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }
}

/// Minimize `objective · x` subject to the constraints and variable domains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    num_vars: usize,
    domains: Vec<Domain>,
    constraints: Vec<Constraint>,
    objective: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Rational,
    pub point: Vec<Rational>,
    /// One multiplier per constraint, in constraint order: non-negative for `≥` rows,
    /// non-positive for `≤` rows, free for `=` rows, with `rhs · duals = value`.
    pub duals: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn optimal(&self) -> Option<&LpSolution> {
        match self {
            LpOutcome::Optimal(s) => Some(s),
            _ => None,
        }
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

impl LinearProgram {
    /// Program over `num_vars` non-negative variables with a zero objective.
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            domains: vec![Domain::NonNegative; num_vars],
            constraints: Vec::new(),
            objective: vec![Rational::zero(); num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    pub fn set_domain(&mut self, var: usize, domain: Domain) -> Result<()> {
        let slot = self.domains.get_mut(var).ok_or_else(|| {
            GameError::MalformedProgram(format!(
                "variable {var} out of range for {} variables",
                self.num_vars
            ))
        })?;
        *slot = domain;
        Ok(())
    }

    pub fn all_free(mut self) -> Self {
        self.domains = vec![Domain::Free; self.num_vars];
        self
    }

    pub fn add_constraint(
        &mut self,
        coeffs: Vec<Rational>,
        relation: Relation,
        rhs: Rational,
    ) -> Result<()> {
        self.check_len(coeffs.len())?;
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        Ok(())
    }

    pub fn set_objective(&mut self, objective: Vec<Rational>) -> Result<()> {
        self.check_len(objective.len())?;
        self.objective = objective;
        Ok(())
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len == self.num_vars {
            Ok(())
        } else {
            Err(GameError::MalformedProgram(format!(
                "row of length {len}, expected {}",
                self.num_vars
            )))
        }
    }

    /// Whether `x` satisfies every constraint and domain exactly.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars
            && self
                .domains
                .iter()
                .zip(x)
                .all(|(d, v)| *d == Domain::Free || !v.is_negative())
            && self.constraints.iter().all(|c| c.is_satisfied_by(x))
    }

    pub fn solve(&self) -> Result<LpOutcome> {
        if self.domains.len() != self.num_vars
            || self.objective.len() != self.num_vars
            || self
                .constraints
                .iter()
                .any(|c| c.coeffs.len() != self.num_vars)
        {
            return Err(GameError::MalformedProgram(
                "inconsistent dimensions".into(),
            ));
        }
        Ok(Tableau::build(self).run(self))
    }
}

struct Tableau {
    /// `rows[r]` holds the constraint coefficients followed by the right-hand side.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    cols: usize,
    /// Column index of the split variables: `split[j] = (plus, Some(minus))` for free variables.
    split: Vec<(usize, Option<usize>)>,
    artificial_start: usize,
    /// Column whose initial tableau column is the unit vector of each row.
    unit_col: Vec<usize>,
    /// `-1` where the row was negated to make its right-hand side non-negative.
    flipped: Vec<bool>,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Tableau {
        let mut split = Vec::with_capacity(lp.num_vars);
        let mut next = 0;
        for d in &lp.domains {
            match d {
                Domain::NonNegative => {
                    split.push((next, None));
                    next += 1;
                }
                Domain::Free => {
                    split.push((next, Some(next + 1)));
                    next += 2;
                }
            }
        }
        let structural = next;
        let m = lp.constraints.len();
        let flipped: Vec<bool> = lp.constraints.iter().map(|c| c.rhs.is_negative()).collect();
        let relations: Vec<Relation> = lp
            .constraints
            .iter()
            .zip(&flipped)
            .map(|(c, &f)| match (c.relation, f) {
                (Relation::Ge, true) => Relation::Le,
                (Relation::Le, true) => Relation::Ge,
                (r, _) => r,
            })
            .collect();
        let slack_count = relations.iter().filter(|r| **r != Relation::Eq).count();
        let artificial_start = structural + slack_count;
        let artificial_count = relations.iter().filter(|r| **r != Relation::Le).count();
        let cols = artificial_start + artificial_count;
        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut unit_col = Vec::with_capacity(m);
        let (mut slack, mut artificial) = (structural, artificial_start);
        for ((c, &f), rel) in lp.constraints.iter().zip(&flipped).zip(&relations) {
            let mut row = vec![Rational::zero(); cols + 1];
            for (j, a) in c.coeffs.iter().enumerate() {
                let a = if f { -a } else { a.clone() };
                let (plus, minus) = split[j];
                if let Some(minus) = minus {
                    row[minus] = -a.clone();
                }
                row[plus] = a;
            }
            row[cols] = if f { -&c.rhs } else { c.rhs.clone() };
            match rel {
                Relation::Le => {
                    row[slack] = Rational::from_integer(1.into());
                    basis.push(slack);
                    unit_col.push(slack);
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = Rational::from_integer((-1).into());
                    slack += 1;
                    row[artificial] = Rational::from_integer(1.into());
                    basis.push(artificial);
                    unit_col.push(artificial);
                    artificial += 1;
                }
                Relation::Eq => {
                    row[artificial] = Rational::from_integer(1.into());
                    basis.push(artificial);
                    unit_col.push(artificial);
                    artificial += 1;
                }
            }
            rows.push(row);
        }
        Tableau {
            rows,
            basis,
            cols,
            split,
            artificial_start,
            unit_col,
            flipped,
        }
    }

    fn pivot(&mut self, objective: &mut [Rational], r: usize, col: usize) {
        let p = self.rows[r][col].clone();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x /= &p;
            }
        }
        let pivot_row = self.rows[r].clone();
        let eliminate = |row: &mut Vec<Rational>| {
            let factor = row[col].clone();
            if factor.is_zero() {
                return;
            }
            for (x, q) in row.iter_mut().zip(&pivot_row) {
                if !q.is_zero() {
                    *x -= &factor * q;
                }
            }
        };
        for (k, row) in self.rows.iter_mut().enumerate() {
            if k != r {
                eliminate(row);
            }
        }
        let mut obj = objective.to_vec();
        eliminate(&mut obj);
        objective.clone_from_slice(&obj);
        self.basis[r] = col;
    }

    /// Reduced-cost row for the given column costs, with `-z` in the last slot.
    fn objective_row(&self, costs: &[Rational]) -> Vec<Rational> {
        let mut obj: Vec<Rational> = costs.to_vec();
        obj.push(Rational::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for (o, x) in obj.iter_mut().zip(row) {
                *o -= cb * x;
            }
        }
        obj
    }

    /// Runs the simplex method; `false` means unbounded.
    fn optimize(&mut self, objective: &mut [Rational], allow: impl Fn(usize) -> bool) -> bool {
        loop {
            let Some(col) = (0..self.cols).find(|&j| allow(j) && objective[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = &row[self.cols] / &row[col];
                let better = match &best {
                    None => true,
                    Some((br, bv)) => {
                        ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br])
                    }
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(objective, r, col),
                None => return false,
            }
        }
    }

    fn run(mut self, lp: &LinearProgram) -> LpOutcome {
        let artificial_start = self.artificial_start;
        let phase_one_costs: Vec<Rational> = (0..self.cols)
            .map(|j| {
                if j >= artificial_start {
                    Rational::from_integer(1.into())
                } else {
                    Rational::zero()
                }
            })
            .collect();
        let mut objective = self.objective_row(&phase_one_costs);
        self.optimize(&mut objective, |_| true);
        if !objective[self.cols].is_zero() {
            return LpOutcome::Infeasible;
        }
        for r in 0..self.rows.len() {
            if self.basis[r] >= artificial_start {
                if let Some(col) = (0..artificial_start).find(|&j| !self.rows[r][j].is_zero()) {
                    self.pivot(&mut objective, r, col);
                }
            }
        }

        let mut costs = vec![Rational::zero(); self.cols];
        for (j, c) in lp.objective.iter().enumerate() {
            let (plus, minus) = self.split[j];
            costs[plus] = c.clone();
            if let Some(minus) = minus {
                costs[minus] = -c;
            }
        }
        let mut objective = self.objective_row(&costs);
        if !self.optimize(&mut objective, |j| j < artificial_start) {
            return LpOutcome::Unbounded;
        }

        let mut column_values = vec![Rational::zero(); self.cols];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            column_values[b] = row[self.cols].clone();
        }
        let point: Vec<Rational> = self
            .split
            .iter()
            .map(|&(plus, minus)| match minus {
                Some(minus) => &column_values[plus] - &column_values[minus],
                None => column_values[plus].clone(),
            })
            .collect();
        let duals = self
            .unit_col
            .iter()
            .zip(&self.flipped)
            .map(|(&col, &f)| {
                if f {
                    objective[col].clone()
                } else {
                    -&objective[col]
                }
            })
            .collect();
        let value = dot(&lp.objective, &point);
        LpOutcome::Optimal(LpSolution {
            value,
            point,
            duals,
        })
    }
}
