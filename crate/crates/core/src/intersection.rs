//! Intersection numbers of torus-invariant divisors on smooth toric
//! varieties, computed from the fan.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::arith::{Integer, Rational};
use crate::cone::{is_smooth_fan, Fan};
use crate::error::{Error, Result};
use crate::linalg::{solve_linear, RationalMatrix, RationalVector};

/// The rays and maximal cones of a smooth fan whose maximal cones all have
/// the same dimension `d`. The rays may live in a `d`-dimensional subspace
/// of a bigger ambient space.
#[derive(Debug, Clone)]
pub struct IntersectionRing {
    rays: Vec<Vec<Rational>>,
    cones: Vec<Vec<usize>>,
    dim: usize,
}

impl IntersectionRing {
    pub fn from_fan(f: &Fan) -> Result<Self> {
        if !is_smooth_fan(f)? {
            return Err(Error::NotSmooth);
        }
        let rays = f.rays();
        let index: BTreeMap<_, usize> = rays.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let cones = f
            .cones()
            .iter()
            .map(|c| {
                let mut v: Vec<usize> = c.gens().iter().map(|g| index[g]).collect();
                v.sort_unstable();
                v
            })
            .collect();
        Self::new(rays.iter().map(|p| p.coordinates()).collect(), cones)
    }

    /// Rays by coordinates and maximal cones by sorted ray indices. The
    /// cones must be unimodular for the lattice in question; this is not
    /// checked.
    pub fn new(rays: Vec<Vec<Rational>>, mut cones: Vec<Vec<usize>>) -> Result<Self> {
        let dim = cones.first().map_or(0, Vec::len);
        for c in cones.iter_mut() {
            c.sort_unstable();
            if c.len() != dim || c.iter().any(|&i| i >= rays.len()) {
                return Err(Error::InvalidFan(alloc::string::String::from(
                    "maximal cones of different dimensions",
                )));
            }
        }
        Ok(IntersectionRing { rays, cones, dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<Rational>] {
        &self.rays
    }

    pub fn cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    pub fn ray_index(&self, coords: &[Rational]) -> Option<usize> {
        self.rays.iter().position(|r| r.as_slice() == coords)
    }

    fn cone_containing(&self, rays: &[usize]) -> Option<usize> {
        self.cones
            .iter()
            .position(|c| rays.iter().all(|r| c.binary_search(r).is_ok()))
    }

    /// Coefficients of ray `v` in the basis given by `basis` (ray indices).
    fn coefficients(&self, basis: &[usize], v: usize) -> Result<Vec<Rational>> {
        let n = self.rays[v].len();
        let mut a = RationalMatrix::zero(n, basis.len());
        for (j, &b) in basis.iter().enumerate() {
            for (i, x) in self.rays[b].iter().enumerate() {
                a.set(i, j, x.clone());
            }
        }
        let x = solve_linear(&a, &RationalVector(self.rays[v].clone()))?
            .ok_or_else(|| Error::InvalidFan(alloc::string::String::from("ray outside the span of a cone")))?;
        Ok(x.0)
    }

    /// `(D_{ρ_1} ⋯ D_{ρ_d})` for a multiset of `d` rays, at least one of
    /// whose divisors is compact. A repeated divisor is replaced by a
    /// linearly equivalent combination of divisors not in a cone containing
    /// the distinct rays, which raises the number of distinct rays.
    pub fn number(&self, divisors: &[usize]) -> Result<Integer> {
        if divisors.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: divisors.len(),
            });
        }
        let mut counts: BTreeMap<usize, u32> = BTreeMap::new();
        for &d in divisors {
            if d >= self.rays.len() {
                return Err(Error::DimensionMismatch {
                    expected: self.rays.len(),
                    found: d,
                });
            }
            *counts.entry(d).or_insert(0) += 1;
        }
        self.eval(&counts)
    }

    fn eval(&self, counts: &BTreeMap<usize, u32>) -> Result<Integer> {
        let distinct: Vec<usize> = counts.keys().copied().collect();
        let Some(sigma) = self.cone_containing(&distinct) else {
            return Ok(Integer::zero());
        };
        let Some((&rho, _)) = counts.iter().find(|&(_, &c)| c > 1) else {
            return Ok(Integer::one());
        };
        let basis = self.cones[sigma].clone();
        let pos = basis.iter().position(|&b| b == rho).expect("rho in sigma");
        let mut total = Integer::zero();
        for other in 0..self.rays.len() {
            if basis.contains(&other) {
                continue;
            }
            let mut with = distinct.clone();
            with.push(other);
            if self.cone_containing(&with).is_none() {
                continue;
            }
            let a = &self.coefficients(&basis, other)?[pos];
            if a.is_zero() {
                continue;
            }
            let a = a.to_integer().ok_or(Error::NotSmooth)?;
            let mut next = counts.clone();
            *next.get_mut(&rho).expect("present") -= 1;
            *next.entry(other).or_insert(0) += 1;
            total -= &(&a * &self.eval(&next)?);
        }
        Ok(total)
    }

    /// Wall relation `n' + n'' + Σ κ_j n_j = 0` for a wall (ridge) between
    /// two maximal cones with apexes `n'`, `n''`. Returns the apexes and the
    /// `κ_j` in the order of `wall`.
    pub fn wall_relation(&self, wall: &[usize]) -> Result<(usize, usize, Vec<Integer>)> {
        let apexes: Vec<usize> = self
            .cones
            .iter()
            .filter(|c| wall.iter().all(|w| c.binary_search(w).is_ok()))
            .map(|c| *c.iter().find(|i| !wall.contains(i)).expect("apex"))
            .collect();
        if wall.len() + 1 != self.dim || apexes.len() != 2 {
            return Err(Error::InvalidFan(alloc::format!("{wall:?} is not an interior wall")));
        }
        let (p, q) = (apexes[0], apexes[1]);
        let cp = self.coefficients_with_apex(wall, p, q)?;
        Ok((p, q, cp))
    }

    fn coefficients_with_apex(&self, wall: &[usize], p: usize, q: usize) -> Result<Vec<Integer>> {
        // n_q = −n_p − Σ κ_j n_j in the basis wall ∪ {p}
        let mut basis = wall.to_vec();
        basis.push(p);
        let c = self.coefficients(&basis, q)?;
        if c[wall.len()] != -&Rational::one() {
            return Err(Error::NotSmooth);
        }
        c[..wall.len()]
            .iter()
            .map(|x| (-x).to_integer().ok_or(Error::NotSmooth))
            .collect()
    }

    /// `(D_j^2 · Π_{i≠j} D_i)` over a wall, read off the wall relation.
    pub fn wall_number(&self, wall: &[usize], doubled: usize) -> Result<Integer> {
        let (_, _, kappa) = self.wall_relation(wall)?;
        let pos = wall.iter().position(|&w| w == doubled).ok_or(Error::NotAFace)?;
        Ok(kappa[pos].clone())
    }

    /// Number of rays sharing a maximal cone with ray `i`.
    pub fn adjacent_rays(&self, i: usize) -> usize {
        let mut adj: Vec<usize> = self
            .cones
            .iter()
            .filter(|c| c.binary_search(&i).is_ok())
            .flat_map(|c| c.iter().copied())
            .filter(|&j| j != i)
            .collect();
        adj.sort_unstable();
        adj.dedup();
        adj.len()
    }

    /// Whether the divisor of ray `i` is compact: every ridge through `i` is
    /// interior.
    pub fn is_compact(&self, i: usize) -> bool {
        if self.dim == 1 {
            return self.cones.iter().any(|c| c[0] == i);
        }
        let mut ridges: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for c in self.cones.iter().filter(|c| c.binary_search(&i).is_ok()) {
            for skip in c {
                if *skip == i {
                    continue;
                }
                let ridge: Vec<usize> = c.iter().copied().filter(|x| x != skip).collect();
                *ridges.entry(ridge).or_insert(0) += 1;
            }
        }
        !ridges.is_empty() && ridges.values().all(|&n| n == 2)
    }
}
