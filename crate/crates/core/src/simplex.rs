//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! Problems here have a handful of variables and constraints, so the
//! tableau is kept dense and pivots are exact. Bland's rule (lowest index
//! entering, lowest basic index on ratio ties) rules out cycling.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coefficients: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// `maximize objective·x` subject to the constraints and `x >= 0`.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, point: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram { num_vars, objective: vec![Rational::zero(); num_vars], constraints: Vec::new() }
    }

    pub fn constrain(&mut self, coefficients: Vec<Rational>, relation: Relation, rhs: Rational) {
        assert_eq!(coefficients.len(), self.num_vars);
        self.constraints.push(Constraint { coefficients, relation, rhs });
    }

    pub fn maximize(&self) -> LpOutcome {
        Tableau::build(self).solve(&self.objective)
    }
}

struct Tableau {
    // rows[i] = coefficients of row i followed by its rhs
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    num_vars: usize,
    // columns >= first_artificial are artificial
    first_artificial: usize,
    width: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Tableau {
        let m = lp.constraints.len();
        let slack_count = lp.constraints.iter().filter(|c| c.relation != Relation::Eq).count();
        let art_count = lp
            .constraints
            .iter()
            .filter(|c| {
                let flip = c.rhs.is_negative();
                match (c.relation, flip) {
                    (Relation::Eq, _) => true,
                    (Relation::Le, false) | (Relation::Ge, true) => false,
                    _ => true,
                }
            })
            .count();
        let first_artificial = lp.num_vars + slack_count;
        let width = first_artificial + art_count;
        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut slack = lp.num_vars;
        let mut art = first_artificial;
        for c in &lp.constraints {
            let mut row = vec![Rational::zero(); width + 1];
            let flip = c.rhs.is_negative();
            let sign = if flip { -Rational::one() } else { Rational::one() };
            for (j, a) in c.coefficients.iter().enumerate() {
                row[j] = a * &sign;
            }
            row[width] = &c.rhs * &sign;
            let rel = match (c.relation, flip) {
                (Relation::Le, true) => Relation::Ge,
                (Relation::Ge, true) => Relation::Le,
                (r, _) => r,
            };
            match rel {
                Relation::Le => {
                    row[slack] = Rational::one();
                    basis.push(slack);
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -Rational::one();
                    slack += 1;
                    row[art] = Rational::one();
                    basis.push(art);
                    art += 1;
                }
                Relation::Eq => {
                    row[art] = Rational::one();
                    basis.push(art);
                    art += 1;
                }
            }
            rows.push(row);
        }
        Tableau { rows, basis, num_vars: lp.num_vars, first_artificial, width }
    }

    // Reduced-cost row for maximizing `cost` over the live columns:
    // z_j = c_B·column_j - c_j, last entry is the objective value.
    fn price(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut z = vec![Rational::zero(); self.width + 1];
        for (j, zj) in z.iter_mut().enumerate().take(self.width) {
            *zj = -cost[j].clone();
        }
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (j, zj) in z.iter_mut().enumerate() {
                *zj += cb * &self.rows[i][j];
            }
        }
        z
    }

    fn pivot(&mut self, z: &mut [Rational], row: usize, col: usize) {
        let p = self.rows[row][col].clone();
        for v in self.rows[row].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.rows[row].clone();
        for (i, r) in self.rows.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for (v, pv) in r.iter_mut().zip(&pivot_row) {
                *v -= &f * pv;
            }
        }
        if !z[col].is_zero() {
            let f = z[col].clone();
            for (v, pv) in z.iter_mut().zip(&pivot_row) {
                *v -= &f * pv;
            }
        }
        self.basis[row] = col;
    }

    /// Runs simplex iterations over columns `< allowed`. Returns false if unbounded.
    fn iterate(&mut self, z: &mut [Rational], allowed: usize) -> bool {
        loop {
            let Some(col) = (0..allowed).find(|&j| z[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (i, r) in self.rows.iter().enumerate() {
                if !r[col].is_positive() {
                    continue;
                }
                let ratio = &r[self.width] / &r[col];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((row, _)) = best else {
                return false;
            };
            self.pivot(z, row, col);
        }
    }

    fn solve(mut self, objective: &[Rational]) -> LpOutcome {
        if self.first_artificial < self.width {
            let mut cost = vec![Rational::zero(); self.width];
            for c in cost.iter_mut().skip(self.first_artificial) {
                *c = -Rational::one();
            }
            let mut z = self.price(&cost);
            self.iterate(&mut z, self.width);
            if z[self.width].is_negative() {
                return LpOutcome::Infeasible;
            }
            // Drive zero-valued artificials out of the basis; drop rows that
            // turn out to be redundant.
            let mut i = 0;
            while i < self.rows.len() {
                if self.basis[i] >= self.first_artificial {
                    match (0..self.first_artificial).find(|&j| !self.rows[i][j].is_zero()) {
                        Some(col) => {
                            self.pivot(&mut z, i, col);
                            i += 1;
                        }
                        None => {
                            self.rows.remove(i);
                            self.basis.remove(i);
                        }
                    }
                } else {
                    i += 1;
                }
            }
        }
        let mut cost = vec![Rational::zero(); self.width];
        cost[..self.num_vars].clone_from_slice(objective);
        let mut z = self.price(&cost);
        if !self.iterate(&mut z, self.first_artificial) {
            return LpOutcome::Unbounded;
        }
        let mut point = vec![Rational::zero(); self.num_vars];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.num_vars {
                point[b] = self.rows[i][self.width].clone();
            }
        }
        LpOutcome::Optimal { value: z[self.width].clone(), point }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn textbook_maximum() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> 36 at (2, 6)
        let mut lp = LinearProgram::new(2);
        lp.objective = v(&[3, 5]);
        lp.constrain(v(&[1, 0]), Relation::Le, int(4));
        lp.constrain(v(&[0, 2]), Relation::Le, int(12));
        lp.constrain(v(&[3, 2]), Relation::Le, int(18));
        assert_eq!(lp.maximize(), LpOutcome::Optimal { value: int(36), point: v(&[2, 6]) });
    }

    #[test]
    fn equality_and_ge_rows() {
        // min x + y  s.t. x + 2y >= 3, x - y = 0  -> x = y = 1, value 2
        let mut lp = LinearProgram::new(2);
        lp.objective = v(&[-1, -1]);
        lp.constrain(v(&[1, 2]), Relation::Ge, int(3));
        lp.constrain(v(&[1, -1]), Relation::Eq, int(0));
        assert_eq!(lp.maximize(), LpOutcome::Optimal { value: int(-2), point: v(&[1, 1]) });
    }

    #[test]
    fn fractional_optimum() {
        // max x s.t. 3x <= 2
        let mut lp = LinearProgram::new(1);
        lp.objective = v(&[1]);
        lp.constrain(v(&[3]), Relation::Le, int(2));
        match lp.maximize() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, frac(2, 3)),
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(1);
        lp.constrain(v(&[1]), Relation::Ge, int(2));
        lp.constrain(v(&[1]), Relation::Le, int(1));
        assert_eq!(lp.maximize(), LpOutcome::Infeasible);

        let mut lp = LinearProgram::new(2);
        lp.objective = v(&[1, 0]);
        lp.constrain(v(&[1, -1]), Relation::Le, int(1));
        assert_eq!(lp.maximize(), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_equalities_are_dropped() {
        let mut lp = LinearProgram::new(2);
        lp.objective = v(&[1, 2]);
        lp.constrain(v(&[1, 1]), Relation::Eq, int(1));
        lp.constrain(v(&[2, 2]), Relation::Eq, int(2));
        match lp.maximize() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, int(2)),
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn negative_rhs_is_normalized() {
        // -x <= -2  (x >= 2), max -x -> -2
        let mut lp = LinearProgram::new(1);
        lp.objective = v(&[-1]);
        lp.constrain(v(&[-1]), Relation::Le, int(-2));
        match lp.maximize() {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, int(-2));
                assert_eq!(point, v(&[2]));
            }
            o => panic!("{o:?}"),
        }
    }
}
