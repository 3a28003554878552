//! The series `1/l(1,…,1,l−r+1)`: its unique crepant triangulation, the
//! exceptional divisors with their intersection numbers, the residual
//! singularities of the non-basic members and two factorizations of the
//! resolution into blow-ups.
//!
//! The junior points besides the vertices of `s_G` are
//! `n(j) = (j,…,j, l − (r−1)j)/l` for `1 ≤ j ≤ ν = ⌊l/(r−1)⌋`; they all lie
//! on the segment from `e_r = n(0)` to the facet `y_r = 0`. For `r = 2` the
//! last of them is `e_1` itself, so there `ν = l − 1` and the type is
//! treated like the members with `l ≡ 1 mod (r−1)`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{gcd_i64, mod_floor_i64, Integer, Rational};
use crate::bundles::{classify_divisor_fan, formula1_with_base, DivisorKind, HkParams};
use crate::cone::{multiplicity, star, Cone, Fan};
use crate::error::{Error, Result};
use crate::guard::Guards;
use crate::intersection::IntersectionRing;
use crate::lattice::{LatticePoint, WeightLattice};
use crate::linalg::det_i64;
use crate::quotient::{cohomology_cyclic, CohomologyProfile, CyclicQuotientType};
use crate::triangulation::{fan_of, junior_point_in_simplex, validate, LatticeTriangulation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesType {
    l: i64,
    r: usize,
    lattice: Arc<WeightLattice>,
}

impl SeriesType {
    pub fn new(l: i64, r: usize) -> Result<Self> {
        if r < 2 || l < r as i64 {
            return Err(Error::InvalidParameters(alloc::format!("need l ≥ r ≥ 2, got l = {l}, r = {r}")));
        }
        let lattice = Arc::new(WeightLattice::cyclic(l, &Self::weights_for(l, r))?);
        Ok(SeriesType { l, r, lattice })
    }

    fn weights_for(l: i64, r: usize) -> Vec<i64> {
        let mut w = vec![1; r];
        w[r - 1] = l - (r as i64 - 1);
        w
    }

    pub fn order(&self) -> i64 {
        self.l
    }

    pub fn dim(&self) -> usize {
        self.r
    }

    pub fn weights(&self) -> Vec<i64> {
        Self::weights_for(self.l, self.r)
    }

    pub fn cyclic_type(&self) -> CyclicQuotientType {
        CyclicQuotientType::new(self.l, &self.weights()).expect("valid series type")
    }

    pub fn lattice(&self) -> &Arc<WeightLattice> {
        &self.lattice
    }

    /// Number of junior points off the vertices of `s_G`.
    pub fn nu(&self) -> i64 {
        if self.r == 2 {
            self.l - 1
        } else {
            self.l / (self.r as i64 - 1)
        }
    }

    /// `l mod (r−1)`, which is 0 for `r = 2`.
    pub fn remainder(&self) -> i64 {
        self.l % (self.r as i64 - 1)
    }

    /// Whether `n(ν)` lies in the interior of `s_G`, i.e. the case
    /// `l ≢ 0 mod (r−1)` and `r = 2`.
    fn last_point_interior(&self) -> bool {
        self.r == 2 || self.remainder() != 0
    }

    pub fn is_basic(&self) -> bool {
        self.remainder() <= 1
    }

    /// `n(j)` for `0 ≤ j ≤ ν`; `n(0) = e_r`.
    pub fn series_point(&self, j: i64) -> Result<LatticePoint> {
        if j < 0 || j > self.nu() {
            return Err(Error::InvalidParameters(alloc::format!("series index {j} out of range 0..={}", self.nu())));
        }
        let mut num = vec![j; self.r];
        num[self.r - 1] = self.l - (self.r as i64 - 1) * j;
        self.lattice.point(num)
    }

    fn unit(&self, i: usize) -> LatticePoint {
        self.lattice.unit(i)
    }

    /// The vertices of `s_G` followed by `n(1),…,n(ν)`.
    pub fn junior_points(&self) -> Vec<LatticePoint> {
        let mut pts = self.lattice.units();
        pts.extend((1..=self.nu()).map(|j| self.series_point(j).expect("in range")));
        pts
    }

    /// `conv(n(i), n(j), e_ξ)` for every `(r−2)`-subset `ξ` of the first
    /// `r−1` unit vectors, empty when `i = j`.
    fn block(&self, i: i64, j: i64) -> Vec<Vec<LatticePoint>> {
        if i == j {
            return Vec::new();
        }
        let (a, b) = (self.series_point(i).expect("in range"), self.series_point(j).expect("in range"));
        if self.r == 2 {
            return vec![vec![a, b]];
        }
        (0..self.r - 1)
            .map(|skip| {
                let mut s = vec![a.clone(), b.clone()];
                s.extend((0..self.r - 1).filter(|&k| k != skip).map(|k| self.unit(k)));
                s
            })
            .collect()
    }

    /// `conv(n(j), e_1,…,e_{r−1})`, when it is full dimensional.
    fn cap(&self, j: i64) -> Option<Vec<LatticePoint>> {
        if j == self.nu() && !self.last_point_interior() {
            return None;
        }
        let mut s = vec![self.series_point(j).expect("in range")];
        s.extend((0..self.r - 1).map(|k| self.unit(k)));
        Some(s)
    }

    fn triangulation_from(&self, simplices: Vec<Vec<LatticePoint>>) -> Result<LatticeTriangulation> {
        let points = self.junior_points();
        let index: BTreeMap<&LatticePoint, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let idx: Vec<Vec<usize>> = simplices.iter().map(|s| s.iter().map(|p| index[p]).collect()).collect();
        LatticeTriangulation::new(self.lattice.clone(), points.clone(), idx)
    }

    /// The triangulation made of the blocks between consecutive series
    /// points, closed off by the cap at `n(ν)` when that point is interior.
    pub fn build_triangulation(&self) -> Result<LatticeTriangulation> {
        let mut simplices: Vec<Vec<LatticePoint>> = (1..=self.nu()).flat_map(|j| self.block(j - 1, j)).collect();
        simplices.extend(self.cap(self.nu()));
        self.triangulation_from(simplices)
    }
}

/// Whether the closed segment `[p, q]` contains `w ∉ {p, q}`.
fn on_segment(p: &[i64], q: &[i64], w: &[i64]) -> bool {
    let Some(c) = (0..p.len()).find(|&i| q[i] != p[i]) else {
        return false;
    };
    let (dc, ec) = (q[c] - p[c], w[c] - p[c]);
    if (0..p.len()).any(|i| (w[i] - p[i]) * dc != (q[i] - p[i]) * ec) {
        return false;
    }
    // w = p + (ec / dc)(q − p) with 0 < ec / dc < 1
    let (num, den) = if dc < 0 { (-ec, -dc) } else { (ec, dc) };
    0 < num && num < den
}

/// Cliques of size `r` in the graph of empty edges, listed with
/// increasing vertex indices.
fn cliques(adj: &[Vec<bool>], r: usize, clique: &mut Vec<usize>, candidates: &[usize], out: &mut Vec<Vec<usize>>) {
    if clique.len() == r {
        out.push(clique.clone());
        return;
    }
    for (pos, &v) in candidates.iter().enumerate() {
        if candidates.len() - pos < r - clique.len() {
            break;
        }
        let next: Vec<usize> = candidates[pos + 1..].iter().copied().filter(|&w| adj[v][w]).collect();
        clique.push(v);
        cliques(adj, r, clique, &next, out);
        clique.pop();
    }
}

/// Every full-dimensional elementary simplex on the junior points belongs to
/// the triangulation, which is itself valid. Every triangulation by
/// elementary simplices is then this one.
pub fn verify_uniqueness(t: &SeriesType) -> Result<bool> {
    let tri = t.build_triangulation()?;
    let points = tri.points();
    let nums: Vec<&[i64]> = points.iter().map(LatticePoint::numerators).collect();
    let n = nums.len();
    // an elementary simplex has empty edges
    let mut adj = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let empty = !(0..n).any(|k| k != i && k != j && on_segment(nums[i], nums[j], nums[k]));
            adj[i][j] = empty;
            adj[j][i] = empty;
        }
    }
    let mut candidates = Vec::new();
    cliques(&adj, t.r, &mut Vec::new(), &(0..n).collect::<Vec<_>>(), &mut candidates);
    let mut all: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for c in candidates {
        let rows: Vec<&[i64]> = c.iter().map(|&i| nums[i]).collect();
        if det_i64(&rows).is_zero() {
            continue;
        }
        if (0..n).any(|k| !c.contains(&k) && junior_point_in_simplex(&rows, nums[k])) {
            continue;
        }
        all.insert(c.into_iter().collect());
    }
    let ours: BTreeSet<BTreeSet<usize>> = tri.simplices().iter().map(|s| s.iter().copied().collect()).collect();
    Ok(validate(tri.lattice(), points, tri.simplices()).is_ok() && all == ours)
}

/// `(1, ⌊l/(r−1)⌋, …, ⌊l/(r−1)⌋, ⌊(l−1)/(r−1)⌋)`, valid for the basic
/// members.
pub fn cohomology_closed_form(t: &SeriesType) -> Vec<u64> {
    let (l, q) = (t.l as u64, t.r as u64 - 1);
    let mut dims = vec![1u64];
    dims.extend(core::iter::repeat(l / q).take(t.r - 2));
    dims.push((l - 1) / q);
    dims
}

pub fn cohomology(t: &SeriesType) -> Result<CohomologyProfile> {
    cohomology_cyclic(&t.cyclic_type())
}

/// Number of maximal cones of the resolution: `l` when basic, otherwise
/// `l − [l]_{r−1} + 1`.
pub fn expected_euler(t: &SeriesType) -> i64 {
    if t.is_basic() {
        t.l
    } else {
        t.l - t.remainder() + 1
    }
}

/// Intersection numbers attached to `D_j`, the divisor of `n(j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorReport {
    pub index: i64,
    pub kind: DivisorKind,
    pub compact: bool,
    /// `(D_j^{r−1} · D_{j+1})`, for `j < ν`.
    pub with_next: Option<Integer>,
    /// `(D_j · D_{j+1}^{r−1})`, for `j < ν`.
    pub next_with: Option<Integer>,
    /// `D_j^r` for compact divisors; for the noncompact `D_ν` the
    /// self-intersection `D_ν^{r−1}` inside the facet `y_r = 0`.
    pub self_intersection: Integer,
    /// The same self-intersection with the exponent base `λ − r` in the
    /// canonical-class formula, for `j < ν`.
    pub self_intersection_uncorrected: Option<Integer>,
}

fn power(base: i64, e: usize) -> Integer {
    Integer::from_i64(base).pow(e as u32)
}

/// Closed forms for all exceptional divisors of a basic member.
pub fn divisor_reports(t: &SeriesType) -> Result<Vec<DivisorReport>> {
    if !t.is_basic() {
        return Err(Error::NotBasic);
    }
    let (l, r, nu) = (t.l, t.r, t.nu());
    let q = r as i64 - 1;
    let mut out = Vec::with_capacity(nu as usize);
    for j in 1..=nu {
        let report = if j < nu {
            let lambda = l - q * j;
            DivisorReport {
                index: j,
                kind: if r == 2 {
                    DivisorKind::ProjectiveSpace(1)
                } else {
                    DivisorKind::HkBundle(HkParams {
                        dim: r - 1,
                        twists: vec![lambda],
                    })
                },
                compact: true,
                with_next: Some(power(l - q * (j + 1), r - 2)),
                next_with: Some(power(q * j - l, r - 2)),
                self_intersection: formula1_with_base(q as u32, lambda, lambda - q),
                self_intersection_uncorrected: Some(formula1_with_base(q as u32, lambda, lambda - r as i64)),
            }
        } else if t.last_point_interior() {
            DivisorReport {
                index: j,
                kind: DivisorKind::ProjectiveSpace(r - 1),
                compact: true,
                with_next: None,
                next_with: None,
                self_intersection: power(-(r as i64), r - 1),
                self_intersection_uncorrected: None,
            }
        } else {
            DivisorReport {
                index: j,
                kind: DivisorKind::ProjectiveSpaceTimesLine(r - 2),
                compact: false,
                with_next: None,
                next_with: None,
                self_intersection: power(-q, r - 2),
                self_intersection_uncorrected: None,
            }
        };
        out.push(report);
    }
    Ok(out)
}

/// The resolution's intersection ring, with `ray_of[j]` the ray index of
/// `n(j)` for `1 ≤ j ≤ ν` (entry 0 unused).
pub struct SeriesRing {
    pub ring: IntersectionRing,
    pub ray_of: Vec<usize>,
    facet: Option<IntersectionRing>,
}

impl SeriesRing {
    pub fn new(t: &SeriesType) -> Result<Self> {
        let tri = t.build_triangulation()?;
        let fan = fan_of(&tri);
        let ring = IntersectionRing::from_fan(&fan)?;
        let mut ray_of = vec![0];
        for j in 1..=t.nu() {
            let p = t.series_point(j)?;
            ray_of.push(ring.ray_index(&p.coordinates()).ok_or(Error::NotAFace)?);
        }
        let facet = if t.last_point_interior() { None } else { Some(facet_ring(&tri)?) };
        Ok(SeriesRing { ring, ray_of, facet })
    }

    /// `(D_{j_1} ⋯ D_{j_r})` for series indices; the product `D_ν^r` of the
    /// noncompact last divisor is taken in the facet `y_r = 0` instead.
    pub fn number(&self, t: &SeriesType, js: &[i64]) -> Result<Integer> {
        let nu = t.nu();
        if let Some(f) = &self.facet {
            if js.iter().all(|&j| j == nu) {
                let p = t.series_point(nu)?;
                let i = f.ray_index(&p.coordinates()).ok_or(Error::NotAFace)?;
                return f.number(&vec![i; f.dim()]);
            }
        }
        let idx: Vec<usize> = js.iter().map(|&j| self.ray_of[j as usize]).collect();
        self.ring.number(&idx)
    }

    pub fn adjacent_rays(&self, j: i64) -> usize {
        self.ring.adjacent_rays(self.ray_of[j as usize])
    }

    pub fn is_compact(&self, j: i64) -> bool {
        self.ring.is_compact(self.ray_of[j as usize])
    }
}

/// The faces of the triangulation lying in the facet `y_r = 0`.
fn facet_ring(tri: &LatticeTriangulation) -> Result<IntersectionRing> {
    let r = tri.lattice().dim();
    let on_facet = |i: &usize| tri.points()[*i].numerators()[r - 1] == 0;
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    for s in tri.simplices() {
        let face: Vec<usize> = s.iter().copied().filter(on_facet).collect();
        if face.len() == r - 1 {
            faces.insert(face);
        }
    }
    let used: Vec<usize> = faces.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let pos: BTreeMap<usize, usize> = used.iter().enumerate().map(|(a, &b)| (b, a)).collect();
    let rays = used.iter().map(|&i| tri.points()[i].coordinates()).collect();
    let cones = faces.iter().map(|f| f.iter().map(|i| pos[i]).collect()).collect();
    IntersectionRing::new(rays, cones)
}

/// The same numbers as [`divisor_reports`], read off the fan.
pub fn divisor_reports_from_fan(t: &SeriesType, guards: &Guards) -> Result<Vec<DivisorReport>> {
    if !t.is_basic() {
        return Err(Error::NotBasic);
    }
    let sr = SeriesRing::new(t)?;
    let (r, nu) = (t.r, t.nu());
    let mut out = Vec::with_capacity(nu as usize);
    for j in 1..=nu {
        let (with_next, next_with) = if j < nu {
            let mut a = vec![j; r - 1];
            a.push(j + 1);
            let mut b = vec![j + 1; r - 1];
            b.push(j);
            (Some(sr.number(t, &a)?), Some(sr.number(t, &b)?))
        } else {
            (None, None)
        };
        out.push(DivisorReport {
            index: j,
            kind: divisor_kind(t, j, guards)?,
            compact: sr.is_compact(j),
            with_next,
            next_with,
            self_intersection: sr.number(t, &vec![j; r])?,
            self_intersection_uncorrected: None,
        });
    }
    Ok(out)
}

/// Kind of `D_j` read off the star of `n(j)` in the resolution fan.
pub fn divisor_kind(t: &SeriesType, j: i64, guards: &Guards) -> Result<DivisorKind> {
    let fan = fan_of(&t.build_triangulation()?);
    let ray = Cone::new(t.lattice(), vec![t.series_point(j)?])?;
    let (_, s) = star(&fan, &ray)?;
    classify_divisor_fan(&s, guards)
}

/// Whether the kind read off the star agrees with the closed form.
pub fn divisor_kind_check(t: &SeriesType, j: i64, guards: &Guards) -> Result<bool> {
    let reports = divisor_reports(t)?;
    let expected = &reports
        .get((j - 1) as usize)
        .ok_or_else(|| Error::InvalidParameters(alloc::format!("no exceptional divisor {j}")))?
        .kind;
    Ok(&divisor_kind(t, j, guards)? == expected)
}

/// `(D_i · D_j · D_k)` in dimension three by the closed-form table, for
/// `1 ≤ i, j, k ≤ ν`.
pub fn triple_table_closed_form(t: &SeriesType) -> Result<Vec<Vec<Vec<Integer>>>> {
    if t.r != 3 {
        return Err(Error::WrongDimension { expected: 3, found: t.r });
    }
    let (l, nu) = (t.l, t.nu());
    let n = nu as usize;
    let mut table = vec![vec![vec![Integer::zero(); n]; n]; n];
    for a in 1..=nu {
        for b in 1..=nu {
            for c in 1..=nu {
                let mut s = [a, b, c];
                s.sort_unstable();
                let [i, j, k] = s;
                let v = if i == j && j == k {
                    if i == nu && l % 2 == 1 {
                        9
                    } else if i == nu {
                        -2
                    } else {
                        8
                    }
                } else if i == j && k == j + 1 {
                    l - 2 * (i + 1)
                } else if j == k && j == i + 1 {
                    2 * i - l
                } else {
                    0
                };
                table[(a - 1) as usize][(b - 1) as usize][(c - 1) as usize] = Integer::from_i64(v);
            }
        }
    }
    Ok(table)
}

/// The same table from the fan by linear equivalence.
pub fn triple_table_from_fan(t: &SeriesType) -> Result<Vec<Vec<Vec<Integer>>>> {
    if t.r != 3 {
        return Err(Error::WrongDimension { expected: 3, found: t.r });
    }
    let sr = SeriesRing::new(t)?;
    let nu = t.nu();
    let n = nu as usize;
    let mut table = vec![vec![vec![Integer::zero(); n]; n]; n];
    for a in 1..=nu {
        for b in a..=nu {
            for c in b..=nu {
                let v = sr.number(t, &[a, b, c])?;
                for [x, y, z] in [[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]] {
                    table[(x - 1) as usize][(y - 1) as usize][(z - 1) as usize] = v.clone();
                }
            }
        }
    }
    Ok(table)
}

/// `D_j³ = 12 − (number of rays adjacent to n(j))` for compact divisors
/// of a smooth threefold.
pub fn d3_from_adjacency(t: &SeriesType, j: i64) -> Result<Option<Integer>> {
    if t.r != 3 {
        return Err(Error::WrongDimension { expected: 3, found: t.r });
    }
    let sr = SeriesRing::new(t)?;
    Ok(sr.is_compact(j).then(|| Integer::from_i64(12 - sr.adjacent_rays(j) as i64)))
}

/// The quotient singularity of a simplicial cone: the group `N / ⟨gens⟩`,
/// which must be cyclic, with weights read off the generator coordinates.
pub fn cone_quotient_type(lat: &WeightLattice, c: &Cone) -> Result<CyclicQuotientType> {
    let r = lat.dim();
    if c.dim() != r {
        return Err(Error::NotFullDimensional);
    }
    let order = multiplicity(lat, c)?.to_i64().ok_or(Error::NonSimplicial)?;
    let gens: Vec<Vec<Integer>> = c
        .gens()
        .iter()
        .map(|g| lat.coords(g).into_iter().map(Integer::from_i64).collect())
        .collect();
    // coordinates of each lattice basis vector in the generator basis,
    // scaled by the order: rows of order · gens^{-1}
    let m = crate::linalg::RationalMatrix::from_integer_rows(&gens, r);
    let unit = |i: usize| -> Vec<Rational> { (0..r).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect() };
    let mt = m.transpose();
    let mut elements: Vec<Vec<i64>> = Vec::with_capacity(r);
    for i in 0..r {
        let x = crate::linalg::solve_linear(&mt, &crate::linalg::RationalVector(unit(i)))?.ok_or(Error::NonSimplicial)?;
        let scaled: Vec<i64> = x
            .0
            .iter()
            .map(|v| {
                let s = v * &Rational::from_i64(order);
                mod_floor_i64(s.to_integer().expect("order kills the group").to_i64().expect("small"), order)
            })
            .collect();
        elements.push(scaled);
    }
    let mut group: BTreeSet<Vec<i64>> = BTreeSet::new();
    group.insert(vec![0; r]);
    let mut frontier = vec![vec![0i64; r]];
    while let Some(g) = frontier.pop() {
        for e in &elements {
            let h: Vec<i64> = g.iter().zip(e).map(|(a, b)| (a + b) % order).collect();
            if group.insert(h.clone()) {
                frontier.push(h);
            }
        }
    }
    let generator = group
        .iter()
        .find(|g| {
            let mut h = (*g).clone();
            let mut k = 1;
            while h.iter().any(|&x| x != 0) {
                h = h.iter().zip(g.iter()).map(|(a, b)| (a + b) % order).collect();
                k += 1;
            }
            k == order
        })
        .ok_or_else(|| Error::InvalidType(alloc::string::String::from("cone group is not cyclic")))?;
    CyclicQuotientType::new(order, generator)
}

/// Where the resolution of a non-basic member stays singular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualSingularity {
    /// The type predicted from `l` and `r` alone.
    pub predicted: CyclicQuotientType,
    /// The type of the cap cone `pos(n(ν), e_1,…,e_{r−1})`.
    pub observed: CyclicQuotientType,
    /// Isolated when `gcd(l, r−1) = 1`; otherwise a family along a curve.
    pub isolated: bool,
}

impl ResidualSingularity {
    pub fn agrees(&self) -> bool {
        self.predicted.equivalent(&self.observed)
    }
}

pub fn residual_singularities(t: &SeriesType) -> Result<ResidualSingularity> {
    if t.is_basic() {
        return Err(Error::NoResidue);
    }
    let (rem, q) = (t.remainder(), t.r as i64 - 1);
    let g = gcd_i64(t.l, q);
    let predicted = if g == 1 {
        let mut w = vec![1; t.r];
        w[t.r - 1] = mod_floor_i64(-q, rem);
        CyclicQuotientType::new(rem, &w)?
    } else {
        let mut w = vec![1; t.r];
        w[0] = 0;
        CyclicQuotientType::new(q / g, &w)?
    };
    let cap = t.cap(t.nu()).expect("non-basic members have an interior last point");
    let observed = cone_quotient_type(t.lattice(), &Cone::new(t.lattice(), cap)?)?;
    Ok(ResidualSingularity {
        predicted,
        observed,
        isolated: g == 1,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorizationMode {
    /// Blow up the closed point, then pairs of symmetric orbit closures.
    Speedy,
    /// One series point at a time.
    Stepwise,
}

#[derive(Debug, Clone)]
pub struct FactorizationStep {
    /// Generators of the cone whose orbit closure is the center.
    pub center: Vec<LatticePoint>,
    pub result: LatticeTriangulation,
}

#[derive(Debug, Clone)]
pub struct FactorizationPlan {
    pub mode: FactorizationMode,
    pub steps: Vec<FactorizationStep>,
}

impl FactorizationPlan {
    /// Each step refines the previous one, starting from the cone of the
    /// singularity, and the last is the resolution.
    pub fn is_consistent(&self, t: &SeriesType) -> Result<bool> {
        let mut prev: Fan = crate::cone::orthant_fan(t.lattice());
        for s in &self.steps {
            let f = fan_of(&s.result);
            if !f.refines(&prev) {
                return Ok(false);
            }
            prev = f;
        }
        Ok(self.steps.last().map(|s| &s.result) == Some(&t.build_triangulation()?))
    }
}

/// Number of speedy steps: `⌊(ν+1)/2⌋` when `n(ν)` is interior, else
/// `⌊ν/2⌋ + 1`.
pub fn speedy_step_count(t: &SeriesType) -> i64 {
    let nu = t.nu();
    if t.last_point_interior() {
        (nu + 1) / 2
    } else {
        nu / 2 + 1
    }
}

pub fn factorize(t: &SeriesType, mode: FactorizationMode) -> Result<FactorizationPlan> {
    if !t.is_basic() {
        return Err(Error::NotBasic);
    }
    let nu = t.nu();
    let pt = |j: i64| t.series_point(j).expect("in range");
    let facet_units = || -> Vec<LatticePoint> { (0..t.r - 1).map(|k| t.unit(k)).collect() };
    let mut steps = Vec::new();
    match mode {
        FactorizationMode::Stepwise => {
            for i in 1..=nu {
                let mut simplices: Vec<Vec<LatticePoint>> = (1..=i).flat_map(|j| t.block(j - 1, j)).collect();
                simplices.extend(t.cap(i));
                let mut center = vec![pt(i - 1)];
                center.extend(facet_units());
                steps.push(FactorizationStep {
                    center,
                    result: t.triangulation_from(simplices)?,
                });
            }
        }
        FactorizationMode::Speedy => {
            let kappa = speedy_step_count(t);
            let mut current: Vec<(i64, i64)>;
            let mut cap: Option<i64>;
            if t.last_point_interior() {
                current = vec![(0, 1), (1, nu)];
                cap = Some(nu);
            } else {
                current = vec![(0, 1), (1, nu - 1)];
                cap = Some(nu - 1);
            }
            let emit = |current: &[(i64, i64)], cap: Option<i64>| -> Result<LatticeTriangulation> {
                let mut simplices: Vec<Vec<LatticePoint>> = current.iter().flat_map(|&(a, b)| t.block(a, b)).collect();
                simplices.extend(cap.and_then(|c| t.cap(c)));
                t.triangulation_from(simplices)
            };
            steps.push(FactorizationStep {
                center: t.lattice().units(),
                result: emit(&current, cap)?,
            });
            let inner = if t.last_point_interior() { kappa - 1 } else { kappa - 2 };
            for i in 1..=inner {
                let far = if t.last_point_interior() { nu - i + 1 } else { nu - i };
                current.retain(|&p| p != (i, far));
                for p in [(i, i + 1), (i + 1, far - 1), (far - 1, far)] {
                    if p.0 != p.1 {
                        current.push(p);
                    }
                }
                steps.push(FactorizationStep {
                    center: vec![pt(i), pt(far)],
                    result: emit(&current, cap)?,
                });
            }
            if !t.last_point_interior() {
                current.push((nu - 1, nu));
                cap = None;
                steps.push(FactorizationStep {
                    center: facet_units(),
                    result: emit(&current, cap)?,
                });
            }
        }
    }
    Ok(FactorizationPlan { mode, steps })
}
