//! Simplicial cones, fans and the subdivision primitives used by toric
//! blow-ups.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{Integer, Rational};
use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, WeightLattice};
use crate::linalg::{
    det_i64, integer_kernel, maximal_minor_gcd, rank, rank_i64, solve_linear, RationalMatrix,
    RationalVector,
};
use crate::lp::{Constraint, LinearProgram, LpOutcome, Relation};

/// A strongly convex simplicial cone, stored by its primitive generators in
/// sorted order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    gens: Vec<LatticePoint>,
}

impl Cone {
    /// Primitivizes and sorts the generators; they must be linearly
    /// independent.
    pub fn new(lat: &WeightLattice, gens: Vec<LatticePoint>) -> Result<Cone> {
        let mut prim: Vec<LatticePoint> = Vec::with_capacity(gens.len());
        for g in gens {
            if g.dim() != lat.dim() {
                return Err(Error::DimensionMismatch {
                    expected: lat.dim(),
                    found: g.dim(),
                });
            }
            if g.is_zero() {
                return Err(Error::NonSimplicial);
            }
            prim.push(lat.primitive_on_ray(g.numerators()));
        }
        prim.sort();
        prim.dedup();
        let rows: Vec<&[i64]> = prim.iter().map(LatticePoint::numerators).collect();
        if rank_i64(&rows) != prim.len() {
            return Err(Error::NonSimplicial);
        }
        Ok(Cone { gens: prim })
    }

    /// Generators already primitive, sorted and independent.
    pub(crate) fn from_sorted(gens: Vec<LatticePoint>) -> Cone {
        Cone { gens }
    }

    /// The cone `{0}`.
    pub fn zero() -> Cone {
        Cone { gens: Vec::new() }
    }

    pub fn gens(&self) -> &[LatticePoint] {
        &self.gens
    }

    pub fn dim(&self) -> usize {
        self.gens.len()
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        self.gens.iter().all(|g| other.gens.binary_search(g).is_ok())
    }

    /// Whether `p` is a nonnegative combination of the generators.
    pub fn contains(&self, p: &[Rational]) -> bool {
        if self.gens.is_empty() {
            return p.iter().all(Rational::is_zero);
        }
        let r = p.len();
        let k = self.gens.len();
        let mut a = RationalMatrix::zero(r, k);
        for (j, g) in self.gens.iter().enumerate() {
            for (i, c) in g.coordinates().into_iter().enumerate() {
                a.set(i, j, c);
            }
        }
        match solve_linear(&a, &RationalVector(p.to_vec())).expect("shapes agree") {
            Some(x) => x.0.iter().all(|v| !v.is_negative()),
            None => false,
        }
    }

    pub fn contains_point(&self, p: &LatticePoint) -> bool {
        self.contains(&p.coordinates())
    }
}

/// Whether two simplicial cones meet in their common face, decided by an
/// exact feasibility program.
pub fn meet_properly(a: &Cone, b: &Cone) -> bool {
    let common: BTreeSet<&LatticePoint> = a.gens.iter().filter(|g| b.gens.contains(g)).collect();
    if common.len() == a.gens.len() || common.len() == b.gens.len() {
        return true;
    }
    let r = a.gens.first().or(b.gens.first()).map_or(0, LatticePoint::dim);
    let n = a.gens.len() + b.gens.len();
    let mut constraints = Vec::with_capacity(r + 1);
    for i in 0..r {
        let mut coeffs = Vec::with_capacity(n);
        coeffs.extend(a.gens.iter().map(|g| Rational::from_i64(g.numerators()[i])));
        coeffs.extend(b.gens.iter().map(|g| Rational::from_i64(-g.numerators()[i])));
        constraints.push(Constraint {
            coeffs,
            relation: Relation::Eq,
            rhs: Rational::zero(),
        });
    }
    let mut norm = Vec::with_capacity(n);
    for g in a.gens.iter().chain(&b.gens) {
        norm.push(if common.contains(g) {
            Rational::zero()
        } else {
            Rational::one()
        });
    }
    constraints.push(Constraint {
        coeffs: norm,
        relation: Relation::Eq,
        rhs: Rational::one(),
    });
    let lp = LinearProgram {
        num_vars: n,
        objective: vec![Rational::zero(); n],
        constraints,
    };
    matches!(lp.solve(), LpOutcome::Infeasible)
}

/// A fan of simplicial cones, stored by its maximal cones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    lattice: Arc<WeightLattice>,
    cones: Vec<Cone>,
}

impl Fan {
    /// Validates the fan axioms eagerly: cones that are faces of other cones
    /// are dropped and every pair must meet in a common face.
    pub fn new(lattice: Arc<WeightLattice>, cones: Vec<Cone>) -> Result<Fan> {
        let fan = Fan::new_unchecked(lattice, cones);
        for (i, a) in fan.cones.iter().enumerate() {
            for b in &fan.cones[i + 1..] {
                if !meet_properly(a, b) {
                    return Err(Error::InvalidFan(format!(
                        "cones {:?} and {:?} overlap beyond a common face",
                        a.gens, b.gens
                    )));
                }
            }
        }
        Ok(fan)
    }

    /// Builds a fan whose validity follows from how the cones were produced.
    pub(crate) fn new_unchecked(lattice: Arc<WeightLattice>, mut cones: Vec<Cone>) -> Fan {
        cones.sort();
        cones.dedup();
        let maximal: Vec<Cone> = cones
            .iter()
            .filter(|c| !cones.iter().any(|d| d != *c && c.is_face_of(d)))
            .cloned()
            .collect();
        Fan {
            lattice,
            cones: maximal,
        }
    }

    pub fn lattice(&self) -> &WeightLattice {
        &self.lattice
    }

    pub fn lattice_arc(&self) -> &Arc<WeightLattice> {
        &self.lattice
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }

    /// Maximal cones in sorted order.
    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn rays(&self) -> Vec<LatticePoint> {
        let set: BTreeSet<&LatticePoint> = self.cones.iter().flat_map(|c| c.gens.iter()).collect();
        set.into_iter().cloned().collect()
    }

    /// Whether `tau` is a cone of the fan.
    pub fn contains_cone(&self, tau: &Cone) -> bool {
        self.cones.iter().any(|c| tau.is_face_of(c))
    }

    pub fn cones_containing<'a>(&'a self, tau: &'a Cone) -> impl Iterator<Item = &'a Cone> + 'a {
        self.cones.iter().filter(move |c| tau.is_face_of(c))
    }

    /// Every maximal cone is full dimensional.
    pub fn is_pure(&self) -> bool {
        self.cones.iter().all(|c| c.dim() == self.dim())
    }

    /// Codimension-one faces with the maximal cones containing them.
    pub fn ridges(&self) -> BTreeMap<Vec<LatticePoint>, Vec<usize>> {
        let mut map: BTreeMap<Vec<LatticePoint>, Vec<usize>> = BTreeMap::new();
        for (i, c) in self.cones.iter().enumerate() {
            for skip in 0..c.gens.len() {
                let ridge: Vec<LatticePoint> = c
                    .gens
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != skip)
                    .map(|(_, g)| g.clone())
                    .collect();
                map.entry(ridge).or_default().push(i);
            }
        }
        map
    }

    /// Support is the whole space: pure, and every ridge lies in exactly
    /// two maximal cones.
    pub fn is_complete(&self) -> bool {
        if self.dim() == 0 {
            return true;
        }
        self.is_pure() && !self.cones.is_empty() && self.ridges().values().all(|v| v.len() == 2)
    }

    /// Every cone of `self` lies inside some cone of `coarse`.
    pub fn refines(&self, coarse: &Fan) -> bool {
        self.cones.iter().all(|c| {
            coarse
                .cones
                .iter()
                .any(|d| c.gens.iter().all(|g| d.contains_point(g)))
        })
    }
}

/// `mult(σ; N)`: the index of the sublattice spanned by the generators in
/// `N_σ = lin(σ) ∩ N`.
pub fn multiplicity(lat: &WeightLattice, c: &Cone) -> Result<Integer> {
    if c.gens.is_empty() {
        return Ok(Integer::one());
    }
    let coords: Vec<Vec<i64>> = c.gens.iter().map(|g| lat.coords(g)).collect();
    if coords.len() == lat.dim() {
        let d = det_i64(&coords).abs();
        if d.is_zero() {
            return Err(Error::NonSimplicial);
        }
        return Ok(d);
    }
    let rows: Vec<Vec<Integer>> = coords
        .iter()
        .map(|r| r.iter().map(|&x| Integer::from_i64(x)).collect())
        .collect();
    let g = maximal_minor_gcd(&rows, lat.dim());
    if g.is_zero() {
        return Err(Error::NonSimplicial);
    }
    Ok(g)
}

pub fn is_smooth(lat: &WeightLattice, c: &Cone) -> Result<bool> {
    Ok(multiplicity(lat, c)?.is_one())
}

pub fn is_smooth_fan(f: &Fan) -> Result<bool> {
    for c in &f.cones {
        if !is_smooth(f.lattice(), c)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn generator_matrix(c: &Cone) -> RationalMatrix {
    let rows: Vec<Vec<Rational>> = c.gens.iter().map(LatticePoint::coordinates).collect();
    RationalMatrix::from_rows(&rows).expect("equal lengths")
}

/// Scales a functional to the primitive vector of `M_G` on its ray.
pub fn primitive_dual(lat: &WeightLattice, m: &[Rational]) -> RationalVector {
    let coords = lat.dual_coords(m);
    let den = coords.iter().fold(Integer::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<Integer> = coords
        .iter()
        .map(|x| (x * &Rational::from_integer(den.clone())).to_integer().expect("cleared"))
        .collect();
    let g = ints.iter().fold(Integer::zero(), |acc, x| acc.gcd(x));
    let factor = Rational::new(den, g);
    RationalVector(m.iter().map(|x| x * &factor).collect())
}

/// Inward facet normals of a full-dimensional simplicial cone, primitive in
/// `M_G`. The `i`-th normal vanishes on every generator except the `i`-th,
/// where it is positive.
pub fn dual_generators(lat: &WeightLattice, c: &Cone) -> Result<Vec<RationalVector>> {
    let r = lat.dim();
    if c.dim() != r {
        return Err(Error::NotFullDimensional);
    }
    let g = generator_matrix(c);
    let mut out = Vec::with_capacity(r);
    for i in 0..r {
        let mut e = vec![Rational::zero(); r];
        e[i] = Rational::one();
        let m = solve_linear(&g, &RationalVector(e))?.ok_or(Error::NonSimplicial)?;
        out.push(primitive_dual(lat, &m.0));
    }
    Ok(out)
}

/// The quotient lattice `N(τ) = N / N_τ`, identified with `Z^{r−k}` through
/// a basis of `τ^⊥ ∩ M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientLattice {
    /// Rank of the quotient.
    pub rank: usize,
    /// Projection functionals in `M_G` coordinates (one row per quotient
    /// coordinate). `None` for the star of `{0}`, whose fan is returned in
    /// the original coordinates.
    pub projection: Option<Vec<Vec<Integer>>>,
}

impl QuotientLattice {
    /// Image of a point of `N_G` in `Z^{rank}`.
    pub fn project(&self, lat: &WeightLattice, p: &LatticePoint) -> Vec<i64> {
        match &self.projection {
            None => lat.coords(p),
            Some(rows) => {
                let c = lat.coords(p);
                rows.iter()
                    .map(|row| {
                        let s: Integer = row
                            .iter()
                            .zip(&c)
                            .map(|(a, &b)| a * &Integer::from_i64(b))
                            .sum();
                        s.to_i64().expect("projection fits")
                    })
                    .collect()
            }
        }
    }
}

/// `Star(τ; Δ)`: the fan of images of the cones containing `τ`, in the
/// quotient lattice `N(τ)`.
pub fn star(f: &Fan, tau: &Cone) -> Result<(QuotientLattice, Fan)> {
    if !f.contains_cone(tau) {
        return Err(Error::NotAFace);
    }
    let lat = f.lattice();
    let r = lat.dim();
    if tau.dim() == 0 {
        return Ok((
            QuotientLattice {
                rank: r,
                projection: None,
            },
            f.clone(),
        ));
    }
    let t: Vec<Vec<Integer>> = tau
        .gens
        .iter()
        .map(|g| lat.coords(g).into_iter().map(Integer::from_i64).collect())
        .collect();
    let kernel = integer_kernel(&t, r);
    let q = QuotientLattice {
        rank: kernel.len(),
        projection: Some(kernel),
    };
    let target = Arc::new(WeightLattice::standard(q.rank));
    let mut cones = Vec::new();
    for c in f.cones_containing(tau) {
        let gens: Vec<LatticePoint> = c
            .gens
            .iter()
            .filter(|g| !tau.gens.contains(g))
            .map(|g| target.primitive_on_ray(&q.project(lat, g)))
            .collect();
        cones.push(if gens.is_empty() {
            Cone::zero()
        } else {
            Cone::new(&target, gens)?
        });
    }
    Ok((q.clone(), Fan::new(target, cones)?))
}

/// Stellar subdivision of `f` at the ray through the generator sum of `τ`.
pub fn starring_subdivision(f: &Fan, tau: &Cone) -> Result<Fan> {
    if tau.dim() == 0 || !f.contains_cone(tau) {
        return Err(Error::NotAFace);
    }
    if tau.dim() == 1 {
        return Ok(f.clone());
    }
    let lat = f.lattice();
    let sum = tau
        .gens
        .iter()
        .skip(1)
        .fold(tau.gens[0].clone(), |acc, g| acc.add(g));
    let n0 = lat.primitive_on_ray(sum.numerators());
    let mut cones = Vec::new();
    for c in &f.cones {
        if !tau.is_face_of(c) {
            cones.push(c.clone());
            continue;
        }
        let others: Vec<&LatticePoint> = c.gens.iter().filter(|g| !tau.gens.contains(g)).collect();
        for skip in &tau.gens {
            let mut gens: Vec<LatticePoint> = vec![n0.clone()];
            gens.extend(tau.gens.iter().filter(|g| *g != skip).cloned());
            gens.extend(others.iter().map(|g| (*g).clone()));
            cones.push(Cone::new(lat, gens)?);
        }
    }
    Fan::new(f.lattice_arc().clone(), cones)
}

fn integer_rows(rows: &[Vec<Rational>]) -> Vec<Vec<Integer>> {
    rows.iter()
        .map(|r| {
            let d = r.iter().fold(Integer::one(), |acc, x| acc.lcm(x.denom()));
            let dr = Rational::from_integer(d);
            r.iter().map(|x| (x * &dr).to_integer().expect("cleared")).collect()
        })
        .collect()
}

fn dot(a: &[Rational], b: &[Integer]) -> Rational {
    a.iter()
        .zip(b)
        .map(|(x, y)| x * &Rational::from_integer(y.clone()))
        .sum()
}

/// Extreme rays of `{y : ⟨c, y⟩ ≥ 0 for all c}`, as integer directions, by
/// trying every `(r−1)`-subset of constraints.
fn extreme_rays_exhaustive(constraints: &[Vec<Rational>], r: usize) -> Vec<Vec<Integer>> {
    let ints = integer_rows(constraints);
    let mut rays: BTreeSet<Vec<Integer>> = BTreeSet::new();
    let n = constraints.len();
    if r == 0 || n + 1 < r {
        return Vec::new();
    }
    let mut idx: Vec<usize> = (0..r - 1).collect();
    loop {
        let sub: Vec<Vec<Integer>> = idx.iter().map(|&i| ints[i].clone()).collect();
        let ker = integer_kernel(&sub, r);
        if ker.len() == 1 {
            let d = &ker[0];
            let vals: Vec<Rational> = constraints.iter().map(|c| dot(c, d)).collect();
            for sign in [1i64, -1] {
                if vals.iter().all(|v| v.signum() * sign as i32 >= 0) {
                    let dir: Vec<Integer> =
                        d.iter().map(|x| x * &Integer::from_i64(sign)).collect();
                    let g = dir.iter().fold(Integer::zero(), |acc, x| acc.gcd(x));
                    rays.insert(dir.iter().map(|x| x / &g).collect());
                }
            }
        }
        // next combination
        let mut i = r - 1;
        loop {
            if i == 0 {
                return rays.into_iter().collect();
            }
            i -= 1;
            if idx[i] != i + n - (r - 1) {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..r - 1 {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn dot_int(a: &[Integer], b: &[Integer]) -> Integer {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn primitive_int(v: Vec<Integer>) -> Vec<Integer> {
    let g = v.iter().fold(Integer::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        v
    } else {
        v.iter().map(|x| x / &g).collect()
    }
}

/// Extreme rays of `{y : ⟨c, y⟩ ≥ 0 for all c}` by double description:
/// start from the cone cut out by the first `r` constraints and add the
/// others one at a time, combining adjacent rays across each new
/// hyperplane. Falls back to the exhaustive search when the first `r`
/// constraints do not cut out a pointed full-dimensional cone.
fn extreme_rays(constraints: &[Vec<Rational>], r: usize) -> Vec<Vec<Integer>> {
    let ints = integer_rows(constraints);
    if r == 0 || ints.len() < r || rank(&constraints[..r]) < r {
        return extreme_rays_exhaustive(constraints, r);
    }
    let mut rays: Vec<Vec<Integer>> = extreme_rays_exhaustive(&constraints[..r], r);
    for k in r..ints.len() {
        let a = &ints[k];
        if a.iter().all(Integer::is_zero) {
            continue;
        }
        let vals: Vec<Integer> = rays.iter().map(|v| dot_int(a, v)).collect();
        let (pos, neg): (Vec<usize>, Vec<usize>) = {
            let p = (0..rays.len()).filter(|&i| vals[i].signum() > 0).collect();
            let n = (0..rays.len()).filter(|&i| vals[i].signum() < 0).collect();
            (p, n)
        };
        if neg.is_empty() {
            continue;
        }
        let processed = &ints[..k];
        let tight = |v: &Vec<Integer>| -> Vec<bool> { processed.iter().map(|c| dot_int(c, v).is_zero()).collect() };
        let tights: Vec<Vec<bool>> = rays.iter().map(tight).collect();
        let mut next: Vec<Vec<Integer>> = (0..rays.len()).filter(|&i| vals[i].signum() >= 0).map(|i| rays[i].clone()).collect();
        for &p in &pos {
            for &n in &neg {
                let common: Vec<Vec<Rational>> = (0..k)
                    .filter(|&c| tights[p][c] && tights[n][c])
                    .map(|c| constraints[c].clone())
                    .collect();
                if common.len() + 2 < r || rank(&common) != r - 2 {
                    continue;
                }
                // v = a(p)·n − a(n)·p lies on the new hyperplane
                let v: Vec<Integer> = rays[n]
                    .iter()
                    .zip(&rays[p])
                    .map(|(x, y)| &(&vals[p] * x) - &(&vals[n] * y))
                    .collect();
                next.push(primitive_int(v));
            }
        }
        next.sort();
        next.dedup();
        rays = next;
    }
    rays.sort();
    rays.dedup();
    rays
}

/// Subdivision of a full-dimensional cone into the maximal regions on which
/// one of the functionals is smallest: `σ_j = {y ∈ σ : ⟨m_i − m_j, y⟩ ≥ 0}`.
/// Lower-dimensional regions and duplicates are dropped.
pub fn envelope_subdivision(
    lat: &Arc<WeightLattice>,
    c: &Cone,
    functionals: &[RationalVector],
) -> Result<Fan> {
    let r = lat.dim();
    if functionals.is_empty() {
        return Err(Error::EmptyFunctionals);
    }
    if c.dim() != r {
        return Err(Error::NotFullDimensional);
    }
    let mut fs: Vec<RationalVector> = functionals.to_vec();
    fs.sort();
    fs.dedup();
    let facets = dual_generators(lat, c)?;
    let mut regions: BTreeSet<Cone> = BTreeSet::new();
    for (j, mj) in fs.iter().enumerate() {
        let mut cons: Vec<Vec<Rational>> = facets.iter().map(|f| f.0.clone()).collect();
        for (i, mi) in fs.iter().enumerate() {
            if i != j {
                cons.push(mi.0.iter().zip(&mj.0).map(|(a, b)| a - b).collect());
            }
        }
        let rays = extreme_rays(&cons, r);
        let as_rat: Vec<Vec<Rational>> = rays
            .iter()
            .map(|d| d.iter().cloned().map(Rational::from_integer).collect())
            .collect();
        if rank(&as_rat) < r {
            continue;
        }
        if rays.len() != r {
            return Err(Error::NonSimplicialRegion);
        }
        let gens: Vec<LatticePoint> = as_rat.iter().map(|d| lat.primitive_on_rational_ray(d)).collect();
        regions.insert(Cone::new(lat, gens)?);
    }
    Fan::new(lat.clone(), regions.into_iter().collect())
}

/// Number of full-dimensional cones.
pub fn euler_characteristic(f: &Fan) -> usize {
    f.cones.iter().filter(|c| c.dim() == f.dim()).count()
}

/// Discrepancy `⟨(1,…,1), n(ϱ)⟩ − 1` of every ray of a refinement of the
/// orthant fan.
pub fn discrepancies(f: &Fan) -> BTreeMap<LatticePoint, Rational> {
    f.rays()
        .into_iter()
        .map(|p| {
            let d = &p.coordinate_sum() - &Rational::one();
            (p, d)
        })
        .collect()
}

/// The orthant `σ0 = pos(e_1,…,e_r)` as a one-cone fan.
pub fn orthant_fan(lat: &Arc<WeightLattice>) -> Fan {
    Fan::new_unchecked(lat.clone(), vec![orthant(lat)])
}

pub fn orthant(lat: &WeightLattice) -> Cone {
    Cone::from_sorted({
        let mut u = lat.units();
        u.sort();
        u
    })
}
