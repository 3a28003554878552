//! Lattice triangulations of the junior simplex `s_G = conv(e_1,…,e_r)`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{Integer, Rational};
use crate::cone::{Cone, Fan};
use crate::error::{Error, Result};
use crate::guard::Guards;
use crate::lattice::{LatticePoint, WeightLattice};
use crate::linalg::{
    det_i64, maximal_minor_gcd, rank, solve_linear, RationalMatrix, RationalVector,
};
use crate::lp::{Constraint, LinearProgram, LpOutcome, Relation};
use crate::quotient::junior_points_of;

/// A triangulation of `s_G` whose vertices are taken from a configuration of
/// junior lattice points. Simplices are sorted index lists into `points`.
#[derive(Debug, Clone)]
pub struct LatticeTriangulation {
    lattice: Arc<WeightLattice>,
    points: Vec<LatticePoint>,
    simplices: Vec<Vec<usize>>,
}

impl PartialEq for LatticeTriangulation {
    fn eq(&self, other: &Self) -> bool {
        self.lattice == other.lattice && self.canonical() == other.canonical()
    }
}

impl Eq for LatticeTriangulation {}

/// Whether all points lie in a common facet `y_i = 0` of the orthant.
fn on_common_facet(rows: &[&[i64]]) -> bool {
    let r = rows.first().map_or(0, |p| p.len());
    (0..r).any(|i| rows.iter().all(|p| p[i] == 0))
}

fn sorted_simplex(s: &[usize]) -> Vec<usize> {
    let mut v = s.to_vec();
    v.sort_unstable();
    v
}

/// Orientation of `ridge ∪ {apex}` with the ridge in the given order.
fn side(points: &[LatticePoint], ridge: &[usize], apex: usize) -> i32 {
    let mut rows: Vec<&[i64]> = ridge.iter().map(|&i| points[i].numerators()).collect();
    rows.push(points[apex].numerators());
    det_i64(&rows).signum()
}

fn volume(points: &[LatticePoint], s: &[usize]) -> Integer {
    let rows: Vec<&[i64]> = s.iter().map(|&i| points[i].numerators()).collect();
    det_i64(&rows).abs()
}

/// Checks that `simplices` triangulate `s_G`: nondegenerate simplices whose
/// volumes add up to that of `s_G`, each boundary ridge in exactly one
/// simplex and each interior ridge in exactly two, on opposite sides.
pub fn validate(lat: &WeightLattice, points: &[LatticePoint], simplices: &[Vec<usize>]) -> Result<()> {
    let r = lat.dim();
    let l = lat.denominator();
    let bad = |m: String| Err(Error::InvalidTriangulation(m));
    let distinct: BTreeSet<&LatticePoint> = points.iter().collect();
    if distinct.len() != points.len() {
        return bad(String::from("repeated point in the configuration"));
    }
    for p in points {
        if p.dim() != r || p.denominator() != l || !lat.contains_numerators(p.numerators()) {
            return bad(format!("{p} is not a point of the lattice"));
        }
        if p.numerators().iter().any(|&x| x < 0) || p.numerators().iter().sum::<i64>() != l {
            return bad(format!("{p} is not on the junior simplex"));
        }
    }
    let total = Integer::from_i64(l).pow(r as u32);
    let mut sum = Integer::zero();
    let mut ridges: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for s in simplices {
        if s.len() != r || s.iter().any(|&i| i >= points.len()) {
            return bad(format!("simplex {s:?} does not have {r} valid vertices"));
        }
        let v = volume(points, s);
        if v.is_zero() {
            return Err(Error::DegenerateSimplex);
        }
        sum += &v;
        for skip in 0..r {
            let ridge: Vec<usize> = s.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &i)| i).collect();
            ridges.entry(ridge).or_default().push(s[skip]);
        }
    }
    if sum != total {
        return bad(format!("volumes add up to {sum}, expected {total}"));
    }
    for (ridge, apexes) in &ridges {
        let rows: Vec<&[i64]> = ridge.iter().map(|&i| points[i].numerators()).collect();
        if on_common_facet(&rows) {
            if apexes.len() != 1 {
                return bad(format!("boundary ridge {ridge:?} lies in {} simplices", apexes.len()));
            }
        } else if apexes.len() != 2 {
            return bad(format!("interior ridge {ridge:?} lies in {} simplices", apexes.len()));
        } else if side(points, ridge, apexes[0]) == side(points, ridge, apexes[1]) {
            return bad(format!("simplices on ridge {ridge:?} overlap"));
        }
    }
    Ok(())
}

impl LatticeTriangulation {
    pub fn new(lattice: Arc<WeightLattice>, points: Vec<LatticePoint>, simplices: Vec<Vec<usize>>) -> Result<Self> {
        let simplices: Vec<Vec<usize>> = simplices.iter().map(|s| sorted_simplex(s)).collect();
        validate(&lattice, &points, &simplices)?;
        Ok(Self::new_unchecked(lattice, points, simplices))
    }

    pub(crate) fn new_unchecked(lattice: Arc<WeightLattice>, points: Vec<LatticePoint>, simplices: Vec<Vec<usize>>) -> Self {
        let mut simplices: Vec<Vec<usize>> = simplices.iter().map(|s| sorted_simplex(s)).collect();
        simplices.sort();
        LatticeTriangulation {
            lattice,
            points,
            simplices,
        }
    }

    /// The one-simplex triangulation `{s_G}`.
    pub fn trivial(lattice: Arc<WeightLattice>) -> Self {
        let points = lattice.units();
        let r = points.len();
        Self::new_unchecked(lattice, points, vec![(0..r).collect()])
    }

    /// Builds a triangulation from simplices given by their vertices.
    pub fn from_point_simplices(lattice: Arc<WeightLattice>, simplices: &[Vec<LatticePoint>]) -> Result<Self> {
        let mut points: Vec<LatticePoint> = lattice.units();
        let mut index: BTreeMap<LatticePoint, usize> = points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut out = Vec::with_capacity(simplices.len());
        for s in simplices {
            let mut idx = Vec::with_capacity(s.len());
            for p in s {
                let i = *index.entry(p.clone()).or_insert_with(|| {
                    points.push(p.clone());
                    points.len() - 1
                });
                idx.push(i);
            }
            out.push(idx);
        }
        Self::new(lattice, points, out)
    }

    pub fn lattice(&self) -> &WeightLattice {
        &self.lattice
    }

    pub fn lattice_arc(&self) -> &Arc<WeightLattice> {
        &self.lattice
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    pub fn simplex_points(&self, i: usize) -> Vec<LatticePoint> {
        self.simplices[i].iter().map(|&j| self.points[j].clone()).collect()
    }

    /// Indices of points that are vertices of some simplex.
    pub fn used_points(&self) -> BTreeSet<usize> {
        self.simplices.iter().flatten().copied().collect()
    }

    /// The set of simplices as sorted point lists; equality of
    /// triangulations is equality of these sets.
    pub fn canonical(&self) -> BTreeSet<Vec<LatticePoint>> {
        self.simplices
            .iter()
            .map(|s| {
                let mut v: Vec<LatticePoint> = s.iter().map(|&i| self.points[i].clone()).collect();
                v.sort();
                v
            })
            .collect()
    }

    /// `mult(pos(s); N_G)` of every simplex.
    pub fn multiplicities(&self) -> Vec<Integer> {
        let l = Integer::from_i64(self.lattice.denominator());
        let r = self.lattice.dim() as u32;
        let order = Integer::from(self.lattice.order());
        let unit = &l.pow(r) / &order;
        self.simplices
            .iter()
            .map(|s| &volume(&self.points, s) / &unit)
            .collect()
    }

    /// Maps every simplex to its index.
    pub fn simplex_index(&self) -> BTreeMap<Vec<usize>, usize> {
        self.simplices.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect()
    }
}

/// Whether the junior point `w` lies in the junior simplex with vertex rows
/// `rows` (by Cramer signs).
pub(crate) fn junior_point_in_simplex(rows: &[&[i64]], w: &[i64]) -> bool {
    let d = det_i64(rows).signum();
    let mut tmp: Vec<&[i64]> = rows.to_vec();
    for i in 0..rows.len() {
        tmp[i] = w;
        let s = det_i64(&tmp).signum();
        tmp[i] = rows[i];
        if s != 0 && s != d {
            return false;
        }
    }
    true
}

fn check_simplex(lat: &WeightLattice, vertices: &[LatticePoint]) -> Result<Vec<Vec<Rational>>> {
    if vertices.is_empty() {
        return Err(Error::DegenerateSimplex);
    }
    for v in vertices {
        if v.dim() != lat.dim() {
            return Err(Error::DimensionMismatch {
                expected: lat.dim(),
                found: v.dim(),
            });
        }
    }
    let base = vertices[0].coordinates();
    let diffs: Vec<Vec<Rational>> = vertices[1..]
        .iter()
        .map(|v| v.coordinates().iter().zip(&base).map(|(a, b)| a - b).collect())
        .collect();
    if rank(&diffs) != diffs.len() {
        return Err(Error::DegenerateSimplex);
    }
    Ok(diffs)
}

/// A lattice simplex is elementary when its only lattice points are its
/// vertices. Lattice points of the bounding box are scanned residue class by
/// residue class and tested by barycentric coordinates.
pub fn is_elementary(lat: &WeightLattice, vertices: &[LatticePoint]) -> Result<bool> {
    let diffs = check_simplex(lat, vertices)?;
    let r = lat.dim();
    let l = lat.denominator();
    let k = diffs.len();
    let lo: Vec<i64> = (0..r).map(|i| vertices.iter().map(|v| v.numerators()[i]).min().unwrap()).collect();
    let hi: Vec<i64> = (0..r).map(|i| vertices.iter().map(|v| v.numerators()[i]).max().unwrap()).collect();
    let mut a = RationalMatrix::zero(r, k);
    for (j, d) in diffs.iter().enumerate() {
        for (i, x) in d.iter().enumerate() {
            a.set(i, j, x.clone());
        }
    }
    let base = vertices[0].coordinates();
    let vset: BTreeSet<&[i64]> = vertices.iter().map(LatticePoint::numerators).collect();
    'residues: for res in lat.residue_numerators() {
        // first representative ≥ lo in each coordinate
        let start: Vec<i64> = (0..r)
            .map(|i| lo[i] + (res[i] - lo[i]).rem_euclid(l))
            .collect();
        if (0..r).any(|i| start[i] > hi[i]) {
            continue;
        }
        let mut p = start.clone();
        loop {
            if !vset.contains(&p[..]) {
                let rhs: Vec<Rational> = p
                    .iter()
                    .zip(&base)
                    .map(|(&x, b)| &Rational::ratio(x, l) - b)
                    .collect();
                if let Some(lam) = solve_linear(&a, &RationalVector(rhs))? {
                    let total: Rational = lam.0.iter().cloned().sum();
                    if lam.0.iter().all(|x| !x.is_negative()) && total <= Rational::one() {
                        return Ok(false);
                    }
                }
            }
            let mut i = 0;
            loop {
                if i == r {
                    continue 'residues;
                }
                if p[i] + l <= hi[i] {
                    p[i] += l;
                    break;
                }
                p[i] = start[i];
                i += 1;
            }
        }
    }
    Ok(true)
}

/// A lattice simplex is basic when its edge vectors from one vertex form a
/// basis of the lattice points of its linear span.
pub fn is_basic(lat: &WeightLattice, vertices: &[LatticePoint]) -> Result<bool> {
    check_simplex(lat, vertices)?;
    let r = lat.dim();
    let base = &vertices[0];
    let rows: Vec<Vec<Integer>> = vertices[1..]
        .iter()
        .map(|v| lat.coords(&v.sub(base)).into_iter().map(Integer::from_i64).collect())
        .collect();
    if rows.is_empty() {
        return Ok(true);
    }
    Ok(maximal_minor_gcd(&rows, r).is_one())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub is_maximal: bool,
    pub is_basic: bool,
    pub is_crepant: bool,
}

/// Maximal: every simplex is elementary, i.e. contains no junior point of
/// the lattice besides its vertices. Basic: every simplex cone is smooth.
pub fn classify(t: &LatticeTriangulation) -> Result<Classification> {
    let lat = t.lattice();
    let junior = junior_points_of(lat)?;
    let all = junior.all();
    let mut maximal = true;
    for s in &t.simplices {
        let rows: Vec<&[i64]> = s.iter().map(|&i| t.points[i].numerators()).collect();
        let vset: BTreeSet<&[i64]> = rows.iter().copied().collect();
        if all
            .iter()
            .any(|w| !vset.contains(w.numerators()) && junior_point_in_simplex(&rows, w.numerators()))
        {
            maximal = false;
            break;
        }
    }
    let basic = t.multiplicities().iter().all(Integer::is_one);
    let one = Rational::one();
    let crepant = t.used_points().iter().all(|&i| t.points[i].coordinate_sum() == one);
    Ok(Classification {
        is_maximal: maximal,
        is_basic: basic,
        is_crepant: crepant,
    })
}

/// Heights of a strictly upper convex support function, one linear
/// functional per simplex, and the guaranteed slack.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportHeights {
    /// Height of every configuration point used by the triangulation; the
    /// vertices of `s_G` sit at zero. Unused points get `None`.
    pub heights: Vec<Option<Rational>>,
    /// `m_s` with `⟨m_s, v⟩ = height(v)` on the vertices of simplex `s`.
    pub functionals: Vec<RationalVector>,
    /// Optimal slack of the local convexity program, heights scaled into
    /// `[0, 1]`.
    pub epsilon: Rational,
    /// Smallest `⟨m_s, w⟩ − height(w)` over all simplices and used points
    /// `w ∉ s`, replayed after the fact.
    pub min_slack: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coherence {
    Coherent(SupportHeights),
    /// No strictly upper convex support function; the interior ridges
    /// (as sorted index lists) whose constraints are tight at the optimum.
    Incoherent { tight_ridges: Vec<Vec<usize>> },
}

impl Coherence {
    pub fn is_coherent(&self) -> bool {
        matches!(self, Coherence::Coherent(_))
    }
}

/// Decides coherence with an exact LP: maximize `ε` subject to one local
/// convexity constraint per interior ridge. Local convexity across every
/// interior ridge of a triangulated convex region implies global convexity;
/// the certificate is then replayed against every simplex and point.
pub fn coherence_certificate(t: &LatticeTriangulation) -> Result<Coherence> {
    let lat = t.lattice();
    let r = lat.dim();
    let l = lat.denominator();
    let used: Vec<usize> = t.used_points().into_iter().collect();
    // vertices of s_G are pinned at height zero
    let mut var: BTreeMap<usize, usize> = BTreeMap::new();
    for &i in &used {
        let p = t.points[i].numerators();
        let is_vertex = p.iter().filter(|&&x| x != 0).count() == 1;
        if !is_vertex {
            let n = var.len();
            var.insert(i, n);
        }
    }
    let nh = var.len();
    let eps = nh;
    let mut ridges: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for s in &t.simplices {
        for skip in 0..r {
            let ridge: Vec<usize> = s.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &i)| i).collect();
            ridges.entry(ridge).or_default().push(s[skip]);
        }
    }
    let mut constraints = Vec::new();
    let mut ridge_of_constraint = Vec::new();
    for (ridge, apexes) in &ridges {
        if apexes.len() != 2 {
            continue;
        }
        let (p, q) = (apexes[0], apexes[1]);
        // q = Σ β_v v + β_p p
        let mut cols: Vec<usize> = ridge.clone();
        cols.push(p);
        let mut a = RationalMatrix::zero(r, r);
        for (j, &c) in cols.iter().enumerate() {
            for (i, &x) in t.points[c].numerators().iter().enumerate() {
                a.set(i, j, Rational::ratio(x, l));
            }
        }
        let beta = solve_linear(&a, &RationalVector(t.points[q].coordinates()))?.ok_or(Error::DegenerateSimplex)?;
        // ε − (Σ β_v h(v) + β_p h(p) − h(q)) ≤ 0
        let mut coeffs = vec![Rational::zero(); nh + 1];
        for (b, &c) in beta.0.iter().zip(&cols) {
            if let Some(&k) = var.get(&c) {
                coeffs[k] = &coeffs[k] - b;
            }
        }
        if let Some(&k) = var.get(&q) {
            coeffs[k] = &coeffs[k] + &Rational::one();
        }
        coeffs[eps] = Rational::one();
        constraints.push(Constraint {
            coeffs,
            relation: Relation::Le,
            rhs: Rational::zero(),
        });
        ridge_of_constraint.push(ridge.clone());
    }
    let mut bound = vec![Rational::zero(); nh + 1];
    bound[eps] = Rational::one();
    constraints.push(Constraint {
        coeffs: bound,
        relation: Relation::Le,
        rhs: Rational::one(),
    });
    let mut objective = vec![Rational::zero(); nh + 1];
    objective[eps] = Rational::one();
    let lp = LinearProgram {
        num_vars: nh + 1,
        objective,
        constraints: constraints.clone(),
    };
    let x = match lp.solve() {
        LpOutcome::Optimal { x, .. } => x,
        // the origin is feasible and ε ≤ 1
        LpOutcome::Infeasible | LpOutcome::Unbounded => unreachable!("bounded feasible program"),
    };
    if !x[eps].is_positive() {
        let tight = constraints
            .iter()
            .zip(&ridge_of_constraint)
            .filter(|(c, _)| {
                let v: Rational = c.coeffs.iter().zip(&x).map(|(a, b)| a * b).sum();
                v.is_zero()
            })
            .map(|(_, ridge)| ridge.clone())
            .collect();
        return Ok(Coherence::Incoherent { tight_ridges: tight });
    }
    let max_h = x[..nh].iter().cloned().fold(Rational::one(), |a, b| if b > a { b } else { a });
    let scale = max_h.recip();
    let mut heights: Vec<Option<Rational>> = vec![None; t.points.len()];
    for &i in &used {
        heights[i] = Some(match var.get(&i) {
            Some(&k) => &x[k] * &scale,
            None => Rational::zero(),
        });
    }
    let epsilon = &x[eps] * &scale;
    let mut functionals = Vec::with_capacity(t.simplices.len());
    let mut min_slack: Option<Rational> = None;
    for s in &t.simplices {
        let mut a = RationalMatrix::zero(r, r);
        let mut hs = Vec::with_capacity(r);
        for (i, &v) in s.iter().enumerate() {
            for (j, &c) in t.points[v].numerators().iter().enumerate() {
                a.set(i, j, Rational::ratio(c, l));
            }
            hs.push(heights[v].clone().expect("vertex is used"));
        }
        let m = solve_linear(&a, &RationalVector(hs))?.ok_or(Error::DegenerateSimplex)?;
        for &w in &used {
            if s.contains(&w) {
                continue;
            }
            let ext: Rational = m.0.iter().zip(t.points[w].coordinates()).map(|(a, b)| a * &b).sum();
            let slack = &ext - heights[w].as_ref().expect("used");
            if min_slack.as_ref().is_none_or(|cur| &slack < cur) {
                min_slack = Some(slack);
            }
        }
        functionals.push(m);
    }
    Ok(Coherence::Coherent(SupportHeights {
        heights,
        functionals,
        epsilon,
        // a single simplex has nothing to compare
        min_slack: min_slack.unwrap_or_else(Rational::one),
    }))
}

/// The fan of cones `pos(s)` over the simplices.
pub fn fan_of(t: &LatticeTriangulation) -> Fan {
    let cones: Vec<Cone> = (0..t.simplices.len())
        .map(|i| {
            let mut v = t.simplex_points(i);
            v.sort();
            Cone::from_sorted(v)
        })
        .collect();
    Fan::new_unchecked(t.lattice.clone(), cones)
}

/// All maximal triangulations of a point configuration found by exhaustive
/// search, and whether the search stopped at `max_count`.
#[derive(Debug, Clone)]
pub struct Enumeration {
    pub triangulations: Vec<LatticeTriangulation>,
    pub truncated: bool,
}

struct Search<'a> {
    points: &'a [LatticePoint],
    total: Integer,
    candidates: Vec<Vec<usize>>,
    volumes: Vec<Integer>,
    by_ridge: BTreeMap<Vec<usize>, Vec<usize>>,
    boundary: BTreeSet<Vec<usize>>,
    compatible: BTreeMap<(usize, usize), bool>,
    found: BTreeSet<Vec<usize>>,
    max_count: usize,
}

fn ridges_of(s: &[usize]) -> impl Iterator<Item = (Vec<usize>, usize)> + '_ {
    (0..s.len()).map(move |skip| {
        (
            s.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &i)| i).collect(),
            s[skip],
        )
    })
}

impl Search<'_> {
    fn compatible(&mut self, a: usize, b: usize) -> bool {
        let key = (a.min(b), a.max(b));
        if let Some(&c) = self.compatible.get(&key) {
            return c;
        }
        let cone = |i: usize| {
            let mut v: Vec<LatticePoint> = self.candidates[i].iter().map(|&j| self.points[j].clone()).collect();
            v.sort();
            Cone::from_sorted(v)
        };
        let ok = crate::cone::meet_properly(&cone(a), &cone(b));
        self.compatible.insert(key, ok);
        ok
    }

    fn run(&mut self, chosen: &mut Vec<usize>, open: &mut BTreeMap<Vec<usize>, usize>, vol: &Integer) -> bool {
        if self.found.len() >= self.max_count {
            return false;
        }
        let Some((ridge, &apex)) = open.iter().next() else {
            if *vol == self.total {
                let mut key = chosen.clone();
                key.sort_unstable();
                self.found.insert(key);
            }
            return true;
        };
        let ridge = ridge.clone();
        let opts = self.by_ridge.get(&ridge).cloned().unwrap_or_default();
        let own = side(self.points, &ridge, apex);
        for c in opts {
            if chosen.contains(&c) {
                continue;
            }
            let other = self.candidates[c].iter().copied().find(|i| !ridge.contains(i)).expect("apex");
            if side(self.points, &ridge, other) == own {
                continue;
            }
            let nv = vol + &self.volumes[c];
            if nv > self.total {
                continue;
            }
            let mut ok = true;
            for k in 0..chosen.len() {
                if !self.compatible(chosen[k], c) {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            let mut changes: Vec<(Vec<usize>, Option<usize>)> = Vec::new();
            let mut clash = false;
            for (rd, ap) in ridges_of(&self.candidates[c].clone()) {
                if self.boundary.contains(&rd) {
                    continue;
                }
                match open.remove(&rd) {
                    Some(prev) => changes.push((rd, Some(prev))),
                    None => {
                        // a closed ridge cannot take a third simplex
                        if chosen.iter().any(|&k| self.candidates[k].iter().filter(|i| rd.contains(i)).count() == rd.len()) {
                            clash = true;
                        }
                        open.insert(rd.clone(), ap);
                        changes.push((rd, None));
                    }
                }
            }
            if !clash {
                chosen.push(c);
                let cont = self.run(chosen, open, &nv);
                chosen.pop();
                if !cont {
                    return false;
                }
            }
            for (rd, prev) in changes.into_iter().rev() {
                match prev {
                    Some(ap) => {
                        open.insert(rd, ap);
                    }
                    None => {
                        open.remove(&rd);
                    }
                }
            }
        }
        true
    }
}

/// Every triangulation of `s_G` using all of `points` (which must contain
/// the vertices `e_i`), up to `max_count`. Candidates are the nondegenerate
/// simplices containing no other configuration point; the search grows a
/// triangulation across its open interior ridges.
pub fn enumerate_maximal_triangulations(
    lattice: &Arc<WeightLattice>,
    points: &[LatticePoint],
    max_count: usize,
    guards: &Guards,
) -> Result<Enumeration> {
    Guards::check("enumeration points", points.len() as u64, guards.enumeration_points)?;
    let r = lattice.dim();
    let l = lattice.denominator();
    let total = Integer::from_i64(l).pow(r as u32);
    for p in points {
        if !lattice.contains_numerators(p.numerators()) || p.numerators().iter().sum::<i64>() != l || p.numerators().iter().any(|&x| x < 0) {
            return Err(Error::InvalidTriangulation(format!("{p} is not a junior lattice point")));
        }
    }
    let Some(start) = points.iter().position(|p| *p == lattice.unit(0)) else {
        return Err(Error::InvalidTriangulation(String::from("configuration lacks e_1")));
    };
    let n = points.len();
    let mut candidates = Vec::new();
    let mut idx: Vec<usize> = (0..r).collect();
    if n >= r {
        loop {
            let rows: Vec<&[i64]> = idx.iter().map(|&i| points[i].numerators()).collect();
            if !det_i64(&rows).is_zero() {
                let empty = (0..n).all(|w| idx.contains(&w) || !junior_point_in_simplex(&rows, points[w].numerators()));
                if empty {
                    candidates.push(idx.clone());
                }
            }
            let mut i = r;
            let mut done = true;
            while i > 0 {
                i -= 1;
                if idx[i] != i + n - r {
                    idx[i] += 1;
                    for j in i + 1..r {
                        idx[j] = idx[j - 1] + 1;
                    }
                    done = false;
                    break;
                }
            }
            if done {
                break;
            }
        }
    }
    let volumes: Vec<Integer> = candidates.iter().map(|s| volume(points, s)).collect();
    let mut by_ridge: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    let mut boundary = BTreeSet::new();
    for (c, s) in candidates.iter().enumerate() {
        for (rd, _) in ridges_of(s) {
            let rows: Vec<&[i64]> = rd.iter().map(|&i| points[i].numerators()).collect();
            if on_common_facet(&rows) {
                boundary.insert(rd.clone());
            }
            by_ridge.entry(rd).or_default().push(c);
        }
    }
    let mut search = Search {
        points,
        total,
        candidates,
        volumes,
        by_ridge,
        boundary,
        compatible: BTreeMap::new(),
        found: BTreeSet::new(),
        max_count,
    };
    let starts: Vec<usize> = (0..search.candidates.len()).filter(|&c| search.candidates[c].contains(&start)).collect();
    let mut truncated = false;
    for c in starts {
        let mut open = BTreeMap::new();
        for (rd, ap) in ridges_of(&search.candidates[c].clone()) {
            if !search.boundary.contains(&rd) {
                open.insert(rd, ap);
            }
        }
        let mut chosen = vec![c];
        let v = search.volumes[c].clone();
        if !search.run(&mut chosen, &mut open, &v) {
            truncated = true;
            break;
        }
    }
    let triangulations = search
        .found
        .iter()
        .map(|set| {
            let simplices: Vec<Vec<usize>> = set.iter().map(|&c| search.candidates[c].clone()).collect();
            LatticeTriangulation::new_unchecked(lattice.clone(), points.to_vec(), simplices)
        })
        .collect();
    Ok(Enumeration {
        triangulations,
        truncated,
    })
}
