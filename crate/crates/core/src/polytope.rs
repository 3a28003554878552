//! Lattice polytopes in low dimension: exact volumes, Minkowski sums, mixed
//! volumes and the anticanonical polytope of a complete simplicial fan.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{Integer, Rational};
use crate::cone::Fan;
use crate::error::{Error, Result};
use crate::guard::Guards;
use crate::linalg::{det, rank, solve_linear, RationalMatrix, RationalVector};
use crate::lp::{Constraint, LinearProgram, LpOutcome, Relation};

/// A polytope given by its vertices, which are kept sorted and are exactly
/// the extreme points of the hull. Coordinates are with respect to a basis
/// of the ambient lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolytope {
    vertices: Vec<Vec<Rational>>,
    dim: usize,
}

impl LatticePolytope {
    /// Hull of the given points; non-extreme points are dropped.
    pub fn new(points: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = points.first().map(Vec::len).ok_or(Error::DegeneratePolytope)?;
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: points.iter().map(Vec::len).find(|&n| n != dim).unwrap_or(dim),
            });
        }
        let distinct: Vec<Vec<Rational>> = points.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let vertices = extreme_points(&distinct);
        Ok(LatticePolytope { vertices, dim })
    }

    pub fn from_i64(points: &[&[i64]]) -> Result<Self> {
        Self::new(points.iter().map(|p| p.iter().map(|&x| Rational::from_i64(x)).collect()).collect())
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the affine hull.
    pub fn affine_dim(&self) -> usize {
        affine_rank(&self.vertices)
    }

    pub fn negate(&self) -> Self {
        let mut vertices: Vec<Vec<Rational>> =
            self.vertices.iter().map(|v| v.iter().map(|x| -x).collect()).collect();
        vertices.sort();
        LatticePolytope { vertices, dim: self.dim }
    }

    pub fn is_lattice_polytope(&self) -> bool {
        self.vertices.iter().all(|v| v.iter().all(Rational::is_integer))
    }
}

fn affine_rank(points: &[Vec<Rational>]) -> usize {
    if points.len() < 2 {
        return 0;
    }
    let diffs: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(a, b)| a - b).collect())
        .collect();
    rank(&diffs)
}

/// Whether `p` is a convex combination of `others`.
fn in_hull(p: &[Rational], others: &[&Vec<Rational>]) -> bool {
    if others.is_empty() {
        return false;
    }
    let n = others.len();
    let mut constraints: Vec<Constraint> = (0..p.len())
        .map(|i| Constraint {
            coeffs: others.iter().map(|q| q[i].clone()).collect(),
            relation: Relation::Eq,
            rhs: p[i].clone(),
        })
        .collect();
    constraints.push(Constraint {
        coeffs: vec![Rational::one(); n],
        relation: Relation::Eq,
        rhs: Rational::one(),
    });
    let lp = LinearProgram {
        num_vars: n,
        objective: vec![Rational::zero(); n],
        constraints,
    };
    !matches!(lp.solve(), LpOutcome::Infeasible)
}

fn extreme_points(points: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    if points.len() <= 2 {
        return points.to_vec();
    }
    (0..points.len())
        .filter(|&i| {
            let others: Vec<&Vec<Rational>> =
                points.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, q)| q).collect();
            !in_hull(&points[i], &others)
        })
        .map(|i| points[i].clone())
        .collect()
}

/// Coordinates `coords` on which the affine hull of `points` projects
/// isomorphically.
fn independent_coordinates(points: &[Vec<Rational>], k: usize) -> Vec<usize> {
    let diffs: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(a, b)| a - b).collect())
        .collect();
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    for c in 0..points[0].len() {
        let mut trial = chosen.clone();
        trial.push(c);
        let cols: Vec<Vec<Rational>> = diffs.iter().map(|d| trial.iter().map(|&j| d[j].clone()).collect()).collect();
        if rank(&cols) == trial.len() {
            chosen = trial;
            if chosen.len() == k {
                break;
            }
        }
    }
    chosen
}

fn k_subsets(n: usize, k: usize, out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, start: usize) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in start..n {
        if n - i < k - cur.len() {
            break;
        }
        cur.push(i);
        k_subsets(n, k, out, cur, i + 1);
        cur.pop();
    }
}

/// Normal of the hyperplane through `k` points of `Q^k` (generalized cross
/// product of the differences).
fn hyperplane_normal(pts: &[Vec<Rational>]) -> Result<Vec<Rational>> {
    let k = pts[0].len();
    if k == 1 {
        return Ok(vec![Rational::one()]);
    }
    let rows: Vec<Vec<Rational>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(&pts[0]).map(|(a, b)| a - b).collect())
        .collect();
    (0..k)
        .map(|j| {
            let minor: Vec<Vec<Rational>> =
                rows.iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect()).collect();
            let d = det(&RationalMatrix::from_rows(&minor)?)?;
            Ok(if j % 2 == 0 { d } else { -d })
        })
        .collect()
}

/// Pulling triangulation of the hull of `points` (which must span an affine
/// space of dimension `k`) from the lexicographically smallest point.
/// Returns index sets of `k + 1` points.
fn pulling_triangulation(points: &[Vec<Rational>], k: usize) -> Result<Vec<Vec<usize>>> {
    if points.len() == k + 1 {
        return Ok(vec![(0..=k).collect()]);
    }
    let coords = independent_coordinates(points, k);
    let proj: Vec<Vec<Rational>> = points.iter().map(|p| coords.iter().map(|&c| p[c].clone()).collect()).collect();
    let apex = (0..points.len()).min_by(|&a, &b| points[a].cmp(&points[b])).expect("nonempty");
    let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut subsets = Vec::new();
    k_subsets(points.len(), k, &mut subsets, &mut Vec::new(), 0);
    for sub in subsets {
        let chosen: Vec<Vec<Rational>> = sub.iter().map(|&i| proj[i].clone()).collect();
        if k > 1 && affine_rank(&chosen) != k - 1 {
            continue;
        }
        let normal = hyperplane_normal(&chosen)?;
        let dot = |p: &Vec<Rational>| -> Rational { p.iter().zip(&normal).map(|(a, b)| a * b).sum() };
        let level = dot(&chosen[0]);
        let (mut above, mut below) = (false, false);
        let mut on = Vec::new();
        for (i, p) in proj.iter().enumerate() {
            match dot(p).cmp(&level) {
                core::cmp::Ordering::Greater => above = true,
                core::cmp::Ordering::Less => below = true,
                core::cmp::Ordering::Equal => on.push(i),
            }
        }
        if !(above && below) && !on.contains(&apex) {
            facets.insert(on);
        }
    }
    let mut out = Vec::new();
    for facet in facets {
        let sub: Vec<Vec<Rational>> = facet.iter().map(|&i| points[i].clone()).collect();
        for simplex in pulling_triangulation(&sub, k - 1)? {
            let mut s: Vec<usize> = simplex.iter().map(|&i| facet[i]).collect();
            s.push(apex);
            out.push(s);
        }
    }
    Ok(out)
}

fn factorial(n: usize) -> Integer {
    (1..=n as i64).fold(Integer::one(), |a, b| &a * &Integer::from_i64(b))
}

/// Euclidean volume normalized so the unit cube has volume 1.
pub fn polytope_volume(p: &LatticePolytope, guards: &Guards) -> Result<Rational> {
    Guards::check("polytope dimension", p.dim as u64, guards.polytope_dim)?;
    if p.affine_dim() != p.dim || p.dim == 0 {
        return Err(Error::DegeneratePolytope);
    }
    let d = p.dim;
    let mut total = Rational::zero();
    for s in pulling_triangulation(&p.vertices, d)? {
        let rows: Vec<Vec<Rational>> = s[..d]
            .iter()
            .map(|&i| p.vertices[i].iter().zip(&p.vertices[s[d]]).map(|(a, b)| a - b).collect())
            .collect();
        total += &det(&RationalMatrix::from_rows(&rows)?)?.abs();
    }
    Ok(&total / &Rational::from_integer(factorial(d)))
}

fn volume_or_zero(p: &LatticePolytope, guards: &Guards) -> Result<Rational> {
    match polytope_volume(p, guards) {
        Err(Error::DegeneratePolytope) => Ok(Rational::zero()),
        other => other,
    }
}

/// `r! · Vol(P)` for `P` in dimension `r`.
pub fn self_intersection_via_volume(p: &LatticePolytope, guards: &Guards) -> Result<Rational> {
    let v = polytope_volume(p, guards)?;
    Ok(&v * &Rational::from_integer(factorial(p.dim)))
}

pub fn minkowski_sum(a: &LatticePolytope, b: &LatticePolytope) -> Result<LatticePolytope> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch { expected: a.dim, found: b.dim });
    }
    let mut pts = Vec::with_capacity(a.vertices.len() * b.vertices.len());
    for u in &a.vertices {
        for v in &b.vertices {
            pts.push(u.iter().zip(v).map(|(x, y)| x + y).collect());
        }
    }
    LatticePolytope::new(pts)
}

/// The intersection number `(D_1 ⋯ D_r)` of the divisors whose polytopes
/// are given, by polarization: `Σ_{∅≠S} (−1)^{r−|S|} Vol(Σ_{i∈S} P_i)`.
/// For `r` copies of one polytope this is `r! · Vol(P)`.
pub fn mixed_volume(polytopes: &[LatticePolytope], guards: &Guards) -> Result<Rational> {
    let r = polytopes.len();
    if r == 0 {
        return Err(Error::DegeneratePolytope);
    }
    Guards::check("mixed volume dimension", r as u64, guards.mixed_volume_dim)?;
    for p in polytopes {
        if p.dim != r {
            return Err(Error::DimensionMismatch { expected: r, found: p.dim });
        }
    }
    let mut total = Rational::zero();
    for mask in 1u32..(1 << r) {
        let mut sum: Option<LatticePolytope> = None;
        for (i, p) in polytopes.iter().enumerate() {
            if mask & (1 << i) != 0 {
                sum = Some(match sum {
                    None => p.clone(),
                    Some(s) => minkowski_sum(&s, p)?,
                });
            }
        }
        let vol = volume_or_zero(&sum.expect("nonempty subset"), guards)?;
        if (r - mask.count_ones() as usize) % 2 == 0 {
            total += &vol;
        } else {
            total -= &vol;
        }
    }
    Ok(total)
}

/// `P_{−K} = {m : ⟨m, n_ρ⟩ ≥ −1}` of a complete simplicial fan, in
/// coordinates of the dual lattice. Fails with `NotAmple` unless the
/// support function is strictly convex, in which case the vertices are the
/// `m_σ` with `⟨m_σ, n_ρ⟩ = −1` on the rays of each maximal cone.
pub fn anticanonical_polytope(f: &Fan) -> Result<LatticePolytope> {
    if !f.is_complete() {
        return Err(Error::NotComplete);
    }
    let r = f.dim();
    let rays = f.rays();
    let mut vertices = Vec::with_capacity(f.cones().len());
    for c in f.cones() {
        if c.gens().len() != r {
            return Err(Error::NonSimplicial);
        }
        let mut a = RationalMatrix::zero(r, r);
        for (i, g) in c.gens().iter().enumerate() {
            for (j, x) in g.coordinates().into_iter().enumerate() {
                a.set(i, j, x);
            }
        }
        let m = solve_linear(&a, &RationalVector(vec![-Rational::one(); r]))?.ok_or(Error::NonSimplicial)?;
        for ray in rays.iter().filter(|p| !c.gens().contains(p)) {
            let v: Rational = ray.coordinates().iter().zip(&m.0).map(|(x, y)| x * y).sum();
            if v <= -Rational::one() {
                return Err(Error::NotAmple);
            }
        }
        vertices.push(f.lattice().dual_coords(&m.0));
    }
    LatticePolytope::new(vertices)
}
