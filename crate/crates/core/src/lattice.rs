//! Weight lattices `N_G = Z^r + Σ_k Z·α_k/l_k` and their points.
//!
//! Points are stored as integer numerator vectors over the common
//! denominator `L = lcm(l_k)`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{gcd_i64, lcm_i64, Integer, Rational};
use crate::error::{Error, Result};
use crate::guard::Guards;
use crate::linalg::lattice_basis;

/// A point `num / den` of a weight lattice.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    num: Vec<i64>,
    den: i64,
}

impl LatticePoint {
    /// Raw constructor; membership is checked by [`WeightLattice::point`].
    pub fn from_parts(num: Vec<i64>, den: i64) -> Self {
        LatticePoint { num, den }
    }

    pub fn numerators(&self) -> &[i64] {
        &self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    pub fn dim(&self) -> usize {
        self.num.len()
    }

    pub fn coordinates(&self) -> Vec<Rational> {
        self.num.iter().map(|&n| Rational::ratio(n, self.den)).collect()
    }

    /// `Σ y_i`, the value of the junior functional.
    pub fn coordinate_sum(&self) -> Rational {
        Rational::ratio(self.num.iter().sum(), self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &LatticePoint) -> LatticePoint {
        debug_assert_eq!(self.den, other.den);
        LatticePoint {
            num: self.num.iter().zip(&other.num).map(|(a, b)| a + b).collect(),
            den: self.den,
        }
    }

    pub fn sub(&self, other: &LatticePoint) -> LatticePoint {
        debug_assert_eq!(self.den, other.den);
        LatticePoint {
            num: self.num.iter().zip(&other.num).map(|(a, b)| a - b).collect(),
            den: self.den,
        }
    }
}

impl fmt::Display for LatticePoint {
    /// `(5,1,6,6)/9`, or `(1,0,0)` when the point is integral.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.num.iter().fold(self.den, |acc, &x| gcd_i64(acc, x));
        let d = self.den / g;
        f.write_str("(")?;
        for (i, x) in self.num.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", x / g)?;
        }
        f.write_str(")")?;
        if d != 1 {
            write!(f, "/{d}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// One cyclic factor `Z/l · α/l` of the acting group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupFactor {
    pub order: i64,
    pub weights: Vec<i64>,
}

/// The lattice `N_G` of a finite abelian diagonal group action on `C^r`.
#[derive(Clone, PartialEq, Eq)]
pub struct WeightLattice {
    dim: usize,
    factors: Vec<GroupFactor>,
    denom: i64,
    residues: Vec<Vec<i64>>,
    residue_set: BTreeSet<Vec<i64>>,
    /// Hermite basis of `L·N_G` (rows), upper triangular.
    basis: Vec<Vec<i64>>,
}

impl fmt::Debug for WeightLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightLattice(r={}", self.dim)?;
        for fac in &self.factors {
            write!(f, ", 1/{}{:?}", fac.order, fac.weights)?;
        }
        f.write_str(")")
    }
}

impl WeightLattice {
    /// The standard lattice `Z^r` (trivial group).
    pub fn standard(dim: usize) -> Self {
        Self::build(dim, Vec::new(), &Guards::default()).expect("trivial group")
    }

    /// Lattice of the cyclic type `1/l(α_1,…,α_r)`; the group must be small.
    pub fn cyclic(l: i64, weights: &[i64]) -> Result<Self> {
        Self::cyclic_with(l, weights, &Guards::default())
    }

    pub fn cyclic_with(l: i64, weights: &[i64], guards: &Guards) -> Result<Self> {
        let lat = Self::build(
            weights.len(),
            vec![GroupFactor {
                order: l,
                weights: weights.to_vec(),
            }],
            guards,
        )?;
        for i in 0..weights.len() {
            let g = weights
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(l, |acc, (_, &a)| gcd_i64(acc, a));
            if g != 1 {
                return Err(Error::InvalidLattice(format!(
                    "group is not small: gcd of l and the weights other than #{} is {g}",
                    i + 1
                )));
            }
        }
        Ok(lat)
    }

    /// Lattice of a multi-factor abelian group; no smallness check.
    pub fn abelian(dim: usize, factors: Vec<GroupFactor>) -> Result<Self> {
        Self::build(dim, factors, &Guards::default())
    }

    pub fn abelian_with(dim: usize, factors: Vec<GroupFactor>, guards: &Guards) -> Result<Self> {
        Self::build(dim, factors, guards)
    }

    fn build(dim: usize, mut factors: Vec<GroupFactor>, guards: &Guards) -> Result<Self> {
        let mut bound: u64 = 1;
        for fac in factors.iter_mut() {
            if fac.order < 2 {
                return Err(Error::InvalidLattice(format!("group order {} < 2", fac.order)));
            }
            if fac.weights.len() != dim {
                return Err(Error::InvalidLattice(format!(
                    "factor has {} weights for dimension {dim}",
                    fac.weights.len()
                )));
            }
            for w in fac.weights.iter_mut() {
                *w = w.rem_euclid(fac.order);
            }
            bound = bound.saturating_mul(fac.order as u64);
        }
        Guards::check("group order", bound, guards.group_order)?;
        let denom = factors.iter().fold(1, |acc, f| lcm_i64(acc, f.order));
        let gens: Vec<Vec<i64>> = factors
            .iter()
            .map(|f| f.weights.iter().map(|w| w * (denom / f.order)).collect())
            .collect();
        // Residues: closure of the generators mod L.
        let mut residue_set: BTreeSet<Vec<i64>> = BTreeSet::new();
        residue_set.insert(vec![0; dim]);
        let mut frontier = vec![vec![0; dim]];
        while let Some(p) = frontier.pop() {
            for g in &gens {
                let q: Vec<i64> = p.iter().zip(g).map(|(a, b)| (a + b) % denom).collect();
                if residue_set.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        let residues: Vec<Vec<i64>> = residue_set.iter().cloned().collect();
        let mut rows: Vec<Vec<Integer>> = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| Integer::from_i64(if i == j { denom } else { 0 }))
                    .collect()
            })
            .collect();
        rows.extend(gens.iter().map(|g| g.iter().map(|&x| Integer::from_i64(x)).collect()));
        let basis = lattice_basis(&rows, dim)
            .into_iter()
            .map(|r| r.iter().map(|x| x.to_i64().expect("bounded by L")).collect())
            .collect();
        Ok(WeightLattice {
            dim,
            factors,
            denom,
            residues,
            residue_set,
            basis,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn factors(&self) -> &[GroupFactor] {
        &self.factors
    }

    /// Common denominator `L`.
    pub fn denominator(&self) -> i64 {
        self.denom
    }

    /// Group order `|G| = [N_G : Z^r]`.
    pub fn order(&self) -> usize {
        self.residues.len()
    }

    /// Numerators of `Par(σ0) ∩ N_G`, sorted, including zero.
    pub fn residue_numerators(&self) -> &[Vec<i64>] {
        &self.residues
    }

    /// Whether `num / L` lies in the lattice.
    pub fn contains_numerators(&self, num: &[i64]) -> bool {
        let r: Vec<i64> = num.iter().map(|x| x.rem_euclid(self.denom)).collect();
        self.residue_set.contains(&r)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        match self.numerators_of(v) {
            Some(num) => self.contains_numerators(&num),
            None => false,
        }
    }

    fn numerators_of(&self, v: &[Rational]) -> Option<Vec<i64>> {
        if v.len() != self.dim {
            return None;
        }
        let l = Rational::from_i64(self.denom);
        v.iter()
            .map(|x| (x * &l).to_integer().and_then(|i| i.to_i64()))
            .collect()
    }

    /// Checked point constructor from numerators over `L`.
    pub fn point(&self, num: Vec<i64>) -> Result<LatticePoint> {
        if num.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: num.len(),
            });
        }
        if !self.contains_numerators(&num) {
            return Err(Error::NotInLattice(format!("{}", LatticePoint::from_parts(num, self.denom))));
        }
        Ok(LatticePoint {
            num,
            den: self.denom,
        })
    }

    pub fn point_from_rationals(&self, v: &[Rational]) -> Result<LatticePoint> {
        let num = self.numerators_of(v).ok_or_else(|| {
            Error::NotInLattice(format!("{:?}", crate::linalg::RationalVector(v.to_vec())))
        })?;
        self.point(num)
    }

    /// The standard basis vector `e_i` (0-based).
    pub fn unit(&self, i: usize) -> LatticePoint {
        let mut num = vec![0; self.dim];
        num[i] = self.denom;
        LatticePoint {
            num,
            den: self.denom,
        }
    }

    pub fn units(&self) -> Vec<LatticePoint> {
        (0..self.dim).map(|i| self.unit(i)).collect()
    }

    pub fn origin(&self) -> LatticePoint {
        LatticePoint {
            num: vec![0; self.dim],
            den: self.denom,
        }
    }

    /// Integer coordinates of a lattice point in the Hermite basis of `N_G`.
    pub fn coords(&self, p: &LatticePoint) -> Vec<i64> {
        self.coords_of_numerators(&p.num)
    }

    pub fn coords_of_numerators(&self, num: &[i64]) -> Vec<i64> {
        let mut rest: Vec<i128> = num.iter().map(|&x| x as i128).collect();
        let mut out = Vec::with_capacity(self.dim);
        for (i, row) in self.basis.iter().enumerate() {
            let p = row[i] as i128;
            debug_assert!(rest[i] % p == 0, "point not in lattice");
            let q = rest[i] / p;
            for (x, &b) in rest.iter_mut().zip(row) {
                *x -= q * b as i128;
            }
            out.push(i64::try_from(q).expect("coordinate fits"));
        }
        out
    }

    /// Hermite basis of `N_G`, as numerator rows over `L`.
    pub fn basis_numerators(&self) -> &[Vec<i64>] {
        &self.basis
    }

    /// Values `⟨m, b_i⟩` of a functional on the basis of `N_G`: the
    /// coordinates of `m` in the dual basis of `M_G`.
    pub fn dual_coords(&self, m: &[Rational]) -> Vec<Rational> {
        let l = Rational::from_i64(self.denom);
        self.basis
            .iter()
            .map(|row| {
                let s: Rational = row
                    .iter()
                    .zip(m)
                    .map(|(&b, x)| x * &Rational::from_i64(b))
                    .sum();
                &s / &l
            })
            .collect()
    }

    /// Whether `m` lies in the dual lattice `M_G`.
    pub fn dual_contains(&self, m: &[Rational]) -> bool {
        self.dual_coords(m).iter().all(Rational::is_integer)
    }

    /// The first lattice point on the ray through `direction` (numerators
    /// over `L`, not all zero).
    pub fn primitive_on_ray(&self, direction: &[i64]) -> LatticePoint {
        let g = direction.iter().fold(0, |acc, &x| gcd_i64(acc, x));
        assert!(g != 0, "zero direction");
        let base: Vec<i64> = direction.iter().map(|x| x / g).collect();
        for t in 1..=self.denom {
            let cand: Vec<i64> = base.iter().map(|x| x * t).collect();
            if self.contains_numerators(&cand) {
                return LatticePoint {
                    num: cand,
                    den: self.denom,
                };
            }
        }
        unreachable!("L·base is integral")
    }

    /// The first lattice point on the ray through a rational direction.
    pub fn primitive_on_rational_ray(&self, direction: &[Rational]) -> LatticePoint {
        let d = direction
            .iter()
            .fold(Integer::one(), |acc, x| acc.lcm(x.denom()));
        let dr = Rational::from_integer(d);
        let ints: Vec<Integer> = direction
            .iter()
            .map(|x| (x * &dr).to_integer().expect("cleared"))
            .collect();
        let g = ints.iter().fold(Integer::zero(), |acc, x| acc.gcd(x));
        let num: Vec<i64> = ints
            .iter()
            .map(|x| (x / &g).to_i64().expect("direction fits i64"))
            .collect();
        self.primitive_on_ray(&num)
    }

    pub fn is_primitive(&self, p: &LatticePoint) -> bool {
        !p.is_zero() && self.primitive_on_ray(&p.num) == *p
    }

    /// Whether every residue has integral coordinate sum (`G ⊂ SL`).
    pub fn is_gorenstein(&self) -> bool {
        self.residues
            .iter()
            .all(|r| r.iter().sum::<i64>() % self.denom == 0)
    }

    pub fn describe(&self) -> String {
        format!("{self:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_residues_and_basis() {
        let lat = WeightLattice::cyclic(5, &[1, 4]).unwrap();
        assert_eq!(lat.order(), 5);
        assert!(lat.contains(&[Rational::ratio(1, 5), Rational::ratio(4, 5)]));
        assert!(!lat.contains(&[Rational::ratio(1, 5), Rational::ratio(1, 5)]));
        // det(N_G) = 1/l: the basis numerators have determinant L^r / l.
        let d = crate::linalg::det_i64(lat.basis_numerators());
        assert_eq!(d, Integer::from(5));
        let p = lat.point(vec![2, 3]).unwrap();
        let c = lat.coords(&p);
        let back: Vec<i64> = (0..2)
            .map(|j| (0..2).map(|i| c[i] * lat.basis_numerators()[i][j]).sum())
            .collect();
        assert_eq!(back, vec![2, 3]);
    }

    #[test]
    fn rejects_non_small() {
        assert!(WeightLattice::cyclic(4, &[2, 2, 0]).is_err());
        assert!(WeightLattice::cyclic(1, &[0, 0]).is_err());
        assert!(WeightLattice::cyclic(6, &[1, 1, 4]).is_ok());
    }

    #[test]
    fn primitive_points() {
        let lat = WeightLattice::cyclic(5, &[1, 4]).unwrap();
        assert_eq!(lat.primitive_on_ray(&[2, 8]), lat.point(vec![1, 4]).unwrap());
        assert_eq!(lat.primitive_on_ray(&[1, 1]), lat.point(vec![5, 5]).unwrap());
        assert!(lat.is_primitive(&lat.unit(0)));
        assert!(!lat.is_primitive(&lat.point(vec![10, 0]).unwrap()));
        assert_eq!(format!("{}", lat.point(vec![1, 4]).unwrap()), "(1,4)/5");
        assert_eq!(format!("{}", lat.unit(1)), "(0,1)");
    }

    #[test]
    fn multi_factor_group() {
        let lat = WeightLattice::abelian(
            3,
            vec![
                GroupFactor { order: 4, weights: vec![1, 3, 0] },
                GroupFactor { order: 4, weights: vec![0, 1, 3] },
            ],
        )
        .unwrap();
        assert_eq!(lat.order(), 16);
        assert!(lat.is_gorenstein());
        assert!(lat.dual_contains(&[Rational::from_i64(1), Rational::from_i64(1), Rational::from_i64(1)]));
        assert!(!lat.dual_contains(&[Rational::from_i64(1), Rational::from_i64(0), Rational::from_i64(0)]));
    }

    #[test]
    fn guard_on_group_order() {
        let g = Guards { group_order: 10, ..Guards::default() };
        assert!(matches!(WeightLattice::cyclic_with(11, &[1, 10], &g), Err(Error::GuardExceeded { .. })));
    }
}
