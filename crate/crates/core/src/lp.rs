//! Exact rational simplex method.
//!
//! Dense tableau, two phases when needed. Pivoting uses the largest reduced
//! cost until a run of degenerate pivots appears, then switches to Bland's
//! rule for the rest of the phase, which guarantees termination.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// `maximize objective·x` subject to the constraints and `x ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, x: Vec<Rational> },
    Infeasible,
    Unbounded,
}

const DEGENERATE_RUN: usize = 50;

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize, obj: &mut [Rational], obj_val: &mut Rational) {
        let inv = self.rows[r][c].recip();
        if !inv.is_one() {
            for x in self.rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
            self.rhs[r] = &self.rhs[r] * &inv;
        }
        let nz: Vec<usize> = (0..self.width).filter(|&j| !self.rows[r][j].is_zero()).collect();
        let prow: Vec<Rational> = nz.iter().map(|&j| self.rows[r][j].clone()).collect();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (&j, p) in nz.iter().zip(&prow) {
                let v = &self.rows[i][j] - &(&f * p);
                self.rows[i][j] = v;
            }
            self.rhs[i] = &self.rhs[i] - &(&f * &prhs);
        }
        if !obj[c].is_zero() {
            let f = obj[c].clone();
            for (&j, p) in nz.iter().zip(&prow) {
                obj[j] = &obj[j] - &(&f * p);
            }
            *obj_val = &*obj_val + &(&f * &prhs);
        }
        self.basis[r] = c;
    }

    /// Maximizes with reduced costs `obj` (positive entries improve).
    /// Columns at or beyond `limit` may not enter. Returns false if unbounded.
    fn optimize(&mut self, obj: &mut [Rational], obj_val: &mut Rational, limit: usize) -> bool {
        let mut degenerate = 0usize;
        let mut bland = false;
        loop {
            let entering = if bland {
                (0..limit).find(|&j| obj[j].is_positive())
            } else {
                let mut best: Option<usize> = None;
                for j in 0..limit {
                    if obj[j].is_positive() && best.is_none_or(|b| obj[j] > obj[b]) {
                        best = Some(j);
                    }
                }
                best
            };
            let Some(c) = entering else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, ratio)) = leave else {
                return false;
            };
            if ratio.is_zero() {
                degenerate += 1;
                if degenerate > DEGENERATE_RUN {
                    bland = true;
                }
            } else {
                degenerate = 0;
            }
            self.pivot(r, c, obj, obj_val);
        }
    }
}

impl LinearProgram {
    pub fn solve(&self) -> LpOutcome {
        let n = self.num_vars;
        let m = self.constraints.len();
        // Normalize to nonnegative right-hand sides.
        let mut rows: Vec<(Vec<Rational>, Relation, Rational)> = Vec::with_capacity(m);
        for c in &self.constraints {
            assert_eq!(c.coeffs.len(), n, "constraint width");
            if c.rhs.is_negative() {
                let rel = match c.relation {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
                rows.push((c.coeffs.iter().map(|x| -x).collect(), rel, -&c.rhs));
            } else {
                rows.push((c.coeffs.clone(), c.relation, c.rhs.clone()));
            }
        }
        let slack_count = rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let art_count = rows.iter().filter(|r| r.1 != Relation::Le).count();
        let width = n + slack_count + art_count;
        let mut tab = Tableau {
            rows: Vec::with_capacity(m),
            rhs: Vec::with_capacity(m),
            basis: Vec::with_capacity(m),
            width,
        };
        let (mut s, mut a) = (n, n + slack_count);
        for (coeffs, rel, rhs) in rows {
            let mut row = coeffs;
            row.resize(width, Rational::zero());
            match rel {
                Relation::Le => {
                    row[s] = Rational::one();
                    tab.basis.push(s);
                    s += 1;
                }
                Relation::Ge => {
                    row[s] = Rational::from_i64(-1);
                    s += 1;
                    row[a] = Rational::one();
                    tab.basis.push(a);
                    a += 1;
                }
                Relation::Eq => {
                    row[a] = Rational::one();
                    tab.basis.push(a);
                    a += 1;
                }
            }
            tab.rows.push(row);
            tab.rhs.push(rhs);
        }
        let art_start = n + slack_count;
        if art_count > 0 {
            // Phase one: maximize −Σ artificials.
            let mut obj = vec![Rational::zero(); width];
            let mut val = Rational::zero();
            for i in 0..m {
                if tab.basis[i] >= art_start {
                    for j in 0..art_start {
                        obj[j] = &obj[j] + &tab.rows[i][j];
                    }
                    val = &val - &tab.rhs[i];
                }
            }
            tab.optimize(&mut obj, &mut val, art_start);
            if !val.is_zero() {
                return LpOutcome::Infeasible;
            }
            // Drive remaining (zero-valued) artificials out of the basis.
            let mut i = 0;
            while i < tab.rows.len() {
                if tab.basis[i] >= art_start {
                    if let Some(c) = (0..art_start).find(|&j| !tab.rows[i][j].is_zero()) {
                        let mut dummy = vec![Rational::zero(); width];
                        let mut dv = Rational::zero();
                        tab.pivot(i, c, &mut dummy, &mut dv);
                    } else {
                        tab.rows.remove(i);
                        tab.rhs.remove(i);
                        tab.basis.remove(i);
                        continue;
                    }
                }
                i += 1;
            }
        }
        // Phase two.
        let mut obj = vec![Rational::zero(); width];
        obj[..n].clone_from_slice(&self.objective);
        let mut val = Rational::zero();
        for i in 0..tab.rows.len() {
            let b = tab.basis[i];
            if !obj[b].is_zero() {
                let f = obj[b].clone();
                for j in 0..width {
                    if !tab.rows[i][j].is_zero() {
                        obj[j] = &obj[j] - &(&f * &tab.rows[i][j]);
                    }
                }
                val = &val + &(&f * &tab.rhs[i]);
            }
        }
        if !tab.optimize(&mut obj, &mut val, art_start) {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![Rational::zero(); n];
        for (i, &b) in tab.basis.iter().enumerate() {
            if b < n {
                x[b] = tab.rhs[i].clone();
            }
        }
        LpOutcome::Optimal { value: val, x }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    fn row(c: &[i64], rel: Relation, b: i64) -> Constraint {
        Constraint {
            coeffs: c.iter().map(|&v| r(v)).collect(),
            relation: rel,
            rhs: r(b),
        }
    }

    #[test]
    fn textbook_maximum() {
        // max 3x + 5y, x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18 → 36 at (2, 6)
        let lp = LinearProgram {
            num_vars: 2,
            objective: vec![r(3), r(5)],
            constraints: vec![
                row(&[1, 0], Relation::Le, 4),
                row(&[0, 2], Relation::Le, 12),
                row(&[3, 2], Relation::Le, 18),
            ],
        };
        assert_eq!(lp.solve(), LpOutcome::Optimal { value: r(36), x: vec![r(2), r(6)] });
    }

    #[test]
    fn infeasible_and_unbounded() {
        let lp = LinearProgram {
            num_vars: 1,
            objective: vec![r(1)],
            constraints: vec![row(&[1], Relation::Ge, 2), row(&[1], Relation::Le, 1)],
        };
        assert_eq!(lp.solve(), LpOutcome::Infeasible);
        let lp = LinearProgram {
            num_vars: 2,
            objective: vec![r(1), r(0)],
            constraints: vec![row(&[1, -1], Relation::Le, 1)],
        };
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn equality_constraints() {
        // max x + y with x + 2y = 4, x − y ≥ −2
        let lp = LinearProgram {
            num_vars: 2,
            objective: vec![r(1), r(1)],
            constraints: vec![row(&[1, 2], Relation::Eq, 4), row(&[1, -1], Relation::Ge, -2)],
        };
        assert_eq!(lp.solve(), LpOutcome::Optimal { value: r(4), x: vec![r(4), r(0)] });
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        /// Two-variable LPs against vertex enumeration.
        #[test]
        fn matches_vertex_enumeration(
            cons in proptest::collection::vec((-4i64..5, -4i64..5, 0i64..10), 1..5),
            cx in -3i64..4, cy in -3i64..4,
        ) {
            let mut constraints: Vec<Constraint> = cons.iter().map(|&(a, b, c)| row(&[a, b], Relation::Le, c)).collect();
            constraints.push(row(&[1, 0], Relation::Le, 20));
            constraints.push(row(&[0, 1], Relation::Le, 20));
            let lp = LinearProgram { num_vars: 2, objective: vec![r(cx), r(cy)], constraints: constraints.clone() };
            let LpOutcome::Optimal { value, x } = lp.solve() else { panic!("origin is feasible and box bounded") };
            let feasible = |p: &[Rational]| p.iter().all(|v| !v.is_negative()) && constraints.iter().all(|c| {
                &(&c.coeffs[0] * &p[0]) + &(&c.coeffs[1] * &p[1]) <= c.rhs
            });
            prop_assert!(feasible(&x));
            let mut lines: Vec<(Rational, Rational, Rational)> = constraints.iter().map(|c| (c.coeffs[0].clone(), c.coeffs[1].clone(), c.rhs.clone())).collect();
            lines.push((r(1), r(0), r(0)));
            lines.push((r(0), r(1), r(0)));
            let mut best: Option<Rational> = None;
            for i in 0..lines.len() {
                for j in i + 1..lines.len() {
                    let (a1, b1, c1) = &lines[i];
                    let (a2, b2, c2) = &lines[j];
                    let d = &(a1 * b2) - &(a2 * b1);
                    if d.is_zero() { continue; }
                    let px = &(&(c1 * b2) - &(c2 * b1)) / &d;
                    let py = &(&(a1 * c2) - &(a2 * c1)) / &d;
                    let p = [px, py];
                    if feasible(&p) {
                        let v = &(&r(cx) * &p[0]) + &(&r(cy) * &p[1]);
                        if best.as_ref().is_none_or(|b| v > *b) { best = Some(v); }
                    }
                }
            }
            prop_assert_eq!(Some(value), best);
        }
    }
}
