//! Hirzebruch–Kleinschmidt varieties `Y(r; λ_1,…,λ_k)`, the smooth complete
//! toric varieties of Picard number two.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{Integer, Rational};
use crate::cone::{is_smooth_fan, Cone, Fan};
use crate::error::{Error, Result};
use crate::guard::Guards;
use crate::lattice::{LatticePoint, WeightLattice};
use crate::linalg::{solve_linear, RationalMatrix, RationalVector};

/// The parameters `(r; λ_1,…,λ_k)` with twists sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HkParams {
    pub dim: usize,
    pub twists: Vec<i64>,
}

impl HkParams {
    pub fn k(&self) -> usize {
        self.twists.len()
    }

    pub fn s(&self) -> usize {
        self.dim - self.twists.len()
    }
}

#[derive(Debug, Clone)]
pub struct HkVariety {
    pub params: HkParams,
    pub fan: Fan,
    /// The collection summing to zero, then the twisted one.
    pub base_rays: Vec<LatticePoint>,
    pub fiber_rays: Vec<LatticePoint>,
}

/// Rays `n_i = e_i` (`i ≤ k`), `n_{k+1} = −Σ e_i`, `n'_j = e_{k+j}`
/// (`j ≤ s`), `n'_{s+1} = −Σ e_{k+j} + Σ λ_i e_i`; the maximal cones omit one
/// ray of each collection.
pub fn build_hk_fan(r: usize, twists: &[i64]) -> Result<HkVariety> {
    let k = twists.len();
    if k == 0 || k >= r {
        return Err(Error::InvalidParameters(alloc::format!(
            "need 1 ≤ k < r, got k = {k}, r = {r}"
        )));
    }
    if twists.iter().any(|&t| t < 0) {
        return Err(Error::InvalidParameters(String::from("twists must be nonnegative")));
    }
    let s = r - k;
    let lat = Arc::new(WeightLattice::standard(r));
    let unit = |i: usize| -> Vec<i64> { (0..r).map(|j| i64::from(i == j)).collect() };
    let mut base: Vec<Vec<i64>> = (0..k).map(unit).collect();
    base.push((0..r).map(|j| if j < k { -1 } else { 0 }).collect());
    let mut fiber: Vec<Vec<i64>> = (k..r).map(unit).collect();
    fiber.push((0..r).map(|j| if j < k { twists[j] } else { -1 }).collect());
    let pt = |v: &Vec<i64>| lat.point(v.clone()).expect("integral");
    let base_rays: Vec<LatticePoint> = base.iter().map(pt).collect();
    let fiber_rays: Vec<LatticePoint> = fiber.iter().map(pt).collect();
    let mut cones = Vec::with_capacity((k + 1) * (s + 1));
    for i in 0..=k {
        for j in 0..=s {
            let gens: Vec<LatticePoint> = base_rays
                .iter()
                .enumerate()
                .filter(|&(a, _)| a != i)
                .map(|(_, p)| p.clone())
                .chain(fiber_rays.iter().enumerate().filter(|&(b, _)| b != j).map(|(_, p)| p.clone()))
                .collect();
            cones.push(Cone::new(&lat, gens)?);
        }
    }
    let fan = Fan::new(lat, cones)?;
    let mut sorted = twists.to_vec();
    sorted.sort_unstable();
    Ok(HkVariety {
        params: HkParams { dim: r, twists: sorted },
        fan,
        base_rays,
        fiber_rays,
    })
}

fn in_some_cone(f: &Fan, set: &[&LatticePoint]) -> bool {
    f.cones().iter().any(|c| set.iter().all(|p| c.gens().binary_search(p).is_ok()))
}

/// Primitive collections: sets of rays not spanning a cone, every proper
/// subset of which does. Subset search over at most `collection_rays` rays.
pub fn primitive_collections(f: &Fan, guards: &Guards) -> Result<Vec<Vec<LatticePoint>>> {
    if !f.is_complete() {
        return Err(Error::NotComplete);
    }
    let rays = f.rays();
    Guards::check("fan rays", rays.len() as u64, guards.collection_rays)?;
    let n = rays.len();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << n) {
        let set: Vec<&LatticePoint> = (0..n).filter(|&i| mask & (1 << i) != 0).map(|i| &rays[i]).collect();
        if set.len() < 2 || in_some_cone(f, &set) {
            continue;
        }
        let minimal = (0..set.len()).all(|skip| {
            let sub: Vec<&LatticePoint> = set.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, p)| *p).collect();
            in_some_cone(f, &sub)
        });
        if minimal {
            out.push(set.into_iter().cloned().collect());
        }
    }
    out.sort();
    Ok(out)
}

fn sum_of(points: &[LatticePoint]) -> Vec<Rational> {
    let r = points[0].dim();
    let mut acc = vec![Rational::zero(); r];
    for p in points {
        for (a, c) in acc.iter_mut().zip(p.coordinates()) {
            *a = &*a + &c;
        }
    }
    acc
}

/// Recognizes `Y(r; λ)` from a smooth complete fan with two more rays than
/// its dimension and exactly two disjoint primitive collections, one of
/// which sums to zero. `None` when the fan is of another kind.
pub fn detect_hk(f: &Fan, guards: &Guards) -> Result<Option<HkParams>> {
    let r = f.dim();
    if !f.is_complete() || !is_smooth_fan(f)? || f.rays().len() != r + 2 {
        return Ok(None);
    }
    let pcs = primitive_collections(f, guards)?;
    if pcs.len() != 2 {
        return Ok(None);
    }
    let (a, b) = (&pcs[0], &pcs[1]);
    let union: BTreeSet<&LatticePoint> = a.iter().chain(b.iter()).collect();
    if union.len() != r + 2 {
        return Ok(None);
    }
    let zero_a = sum_of(a).iter().all(Rational::is_zero);
    let zero_b = sum_of(b).iter().all(Rational::is_zero);
    let (base, fiber) = match (zero_a, zero_b) {
        (true, true) => {
            let k = a.len().min(b.len()) - 1;
            return Ok(Some(HkParams { dim: r, twists: vec![0; k] }));
        }
        (true, false) => (a, b),
        (false, true) => (b, a),
        (false, false) => return Ok(None),
    };
    let k = base.len() - 1;
    let mut m = RationalMatrix::zero(r, k);
    for (j, p) in base[..k].iter().enumerate() {
        for (i, c) in p.coordinates().into_iter().enumerate() {
            m.set(i, j, c);
        }
    }
    let Some(c) = solve_linear(&m, &RationalVector(sum_of(fiber)))? else {
        return Ok(None);
    };
    let mut coeffs: Vec<Integer> = Vec::with_capacity(k + 1);
    for x in &c.0 {
        match x.to_integer() {
            Some(i) => coeffs.push(i),
            None => return Ok(None),
        }
    }
    coeffs.push(Integer::zero());
    let min = coeffs.iter().min().cloned().expect("nonempty");
    let mut shifted: Vec<i64> = coeffs
        .iter()
        .map(|x| (x - &min).to_i64().ok_or_else(|| Error::InvalidParameters(String::from("twist overflow"))))
        .collect::<Result<_>>()?;
    shifted.sort_unstable();
    shifted.remove(0);
    Ok(Some(HkParams { dim: r, twists: shifted }))
}

/// What a torus-invariant prime divisor looks like, read off its star fan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DivisorKind {
    HkBundle(HkParams),
    /// `P^d`.
    ProjectiveSpace(usize),
    /// `P^d × C`.
    ProjectiveSpaceTimesLine(usize),
    Other,
}

/// Classifies a smooth fan as `Y(d; λ)`, `P^d` or `P^{d−1} × C`.
pub fn classify_divisor_fan(f: &Fan, guards: &Guards) -> Result<DivisorKind> {
    let d = f.dim();
    let rays = f.rays();
    if !is_smooth_fan(f)? {
        return Ok(DivisorKind::Other);
    }
    if f.is_complete() {
        if rays.len() == d + 1 && sum_of(&rays).iter().all(Rational::is_zero) {
            return Ok(DivisorKind::ProjectiveSpace(d));
        }
        return Ok(match detect_hk(f, guards)? {
            Some(p) => DivisorKind::HkBundle(p),
            None => DivisorKind::Other,
        });
    }
    if d >= 1 && rays.len() == d + 1 && f.is_pure() && f.cones().len() == d {
        for n0 in &rays {
            if !f.cones().iter().all(|c| c.gens().contains(n0)) {
                continue;
            }
            let others: Vec<LatticePoint> = rays.iter().filter(|p| *p != n0).cloned().collect();
            if sum_of(&others).iter().all(Rational::is_zero) {
                return Ok(DivisorKind::ProjectiveSpaceTimesLine(d - 1));
            }
        }
    }
    Ok(DivisorKind::Other)
}

fn binomial(n: i64, k: i64) -> Integer {
    if k < 0 || k > n {
        return Integer::zero();
    }
    let mut acc = Integer::one();
    for i in 0..k {
        acc = &(&acc * &Integer::from_i64(n - i)) / &Integer::from_i64(i + 1);
    }
    acc
}

/// `Σ_{i=0}^{r−1} C(r,i) (−2)^{r−i} base^i λ^{r−i−1}`.
pub fn formula1_with_base(r: u32, lambda: i64, base: i64) -> Integer {
    let lam = Integer::from_i64(lambda);
    let b = Integer::from_i64(base);
    let m2 = Integer::from_i64(-2);
    (0..r)
        .map(|i| {
            &(&(&binomial(r as i64, i as i64) * &m2.pow(r - i)) * &b.pow(i)) * &lam.pow(r - i - 1)
        })
        .sum()
}

/// `K^r` of `Y(r; λ)` for `k = 1`.
pub fn canonical_self_intersection(r: u32, lambda: i64) -> Result<Integer> {
    if lambda == 0 {
        return Err(Error::InvalidParameters(String::from("λ must be nonzero")));
    }
    if r < 2 {
        return Err(Error::InvalidParameters(String::from("r must be at least 2")));
    }
    Ok(formula1_with_base(r, lambda, lambda - r as i64))
}

/// `E^r = λ^{r−1}` for the divisor of the ray `n_2` of `Y(r; λ)`.
pub fn e_divisor_self_intersection(r: u32, lambda: i64) -> Integer {
    Integer::from_i64(lambda).pow(r.saturating_sub(1))
}

/// `d = s + Σ C(λ_i + s + 1, s)` with `s = r − k`.
pub fn ews_embedding_dimension(r: usize, twists: &[i64]) -> Result<Integer> {
    let k = twists.len();
    if k == 0 || k >= r || twists.iter().any(|&t| t < 0) {
        return Err(Error::InvalidParameters(alloc::format!("invalid parameters ({r}; {twists:?})")));
    }
    let s = (r - k) as i64;
    Ok(twists
        .iter()
        .map(|&t| binomial(t + s + 1, s))
        .fold(Integer::from_i64(s), |a, b| &a + &b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intersection::IntersectionRing;
    use proptest::prelude::*;

    #[test]
    fn hirzebruch_surfaces() {
        for lam in 0..5 {
            let y = build_hk_fan(2, &[lam]).unwrap();
            assert_eq!(y.fan.cones().len(), 4);
            assert!(y.fan.is_complete());
            assert!(is_smooth_fan(&y.fan).unwrap());
            let pcs = primitive_collections(&y.fan, &Guards::default()).unwrap();
            assert_eq!(pcs.len(), 2);
            assert!(pcs[0].iter().all(|p| !pcs[1].contains(p)));
        }
        // P^1 × P^1: the two pairs of opposite rays
        let y = build_hk_fan(2, &[0]).unwrap();
        let pcs = primitive_collections(&y.fan, &Guards::default()).unwrap();
        for pc in &pcs {
            assert!(sum_of(pc).iter().all(Rational::is_zero));
        }
    }

    #[test]
    fn cone_counts() {
        assert_eq!(build_hk_fan(3, &[2]).unwrap().fan.cones().len(), 6);
        assert_eq!(build_hk_fan(4, &[1, 3]).unwrap().fan.cones().len(), 9);
        assert!(build_hk_fan(2, &[]).is_err());
        assert!(build_hk_fan(2, &[1, 1]).is_err());
        assert!(build_hk_fan(3, &[-1]).is_err());
    }

    #[test]
    fn projective_space_is_not_hk() {
        let lat = Arc::new(WeightLattice::standard(2));
        let p = |x: i64, y: i64| lat.point(vec![x, y]).unwrap();
        let f = Fan::new(lat.clone(), vec![
            Cone::new(&lat, vec![p(1, 0), p(0, 1)]).unwrap(),
            Cone::new(&lat, vec![p(0, 1), p(-1, -1)]).unwrap(),
            Cone::new(&lat, vec![p(-1, -1), p(1, 0)]).unwrap(),
        ])
        .unwrap();
        assert_eq!(detect_hk(&f, &Guards::default()).unwrap(), None);
        assert_eq!(classify_divisor_fan(&f, &Guards::default()).unwrap(), DivisorKind::ProjectiveSpace(2));
        assert_eq!(primitive_collections(&f, &Guards::default()).unwrap().len(), 1);
    }

    #[test]
    fn formula_values() {
        assert_eq!(canonical_self_intersection(3, 2).unwrap(), Integer::from_i64(-62));
        assert!(canonical_self_intersection(3, 0).is_err());
        let direct: i64 = (0..4)
            .map(|i: u32| {
                let c = [1, 4, 6, 4][i as usize];
                c * (-2i64).pow(4 - i) * (-3i64).pow(i)
            })
            .sum();
        assert_eq!(canonical_self_intersection(4, 1).unwrap(), Integer::from_i64(direct));
        assert_eq!(direct, 16 + 96 + 216 + 216);
        assert_eq!(e_divisor_self_intersection(3, 2), Integer::from_i64(4));
        assert_eq!(e_divisor_self_intersection(2, 1), Integer::from_i64(1));
        assert_eq!(e_divisor_self_intersection(5, 3), Integer::from_i64(81));
        assert_eq!(ews_embedding_dimension(3, &[2]).unwrap(), Integer::from_i64(12));
        assert_eq!(ews_embedding_dimension(2, &[1]).unwrap(), Integer::from_i64(4));
        assert_eq!(ews_embedding_dimension(5, &[0, 0]).unwrap(), Integer::from_i64(3 + 2 * 4));
    }

    #[test]
    fn canonical_class_from_fan() {
        // K = −Σ D_ρ; expand (−K)^r with the intersection ring.
        for (r, lam) in [(2usize, 1i64), (2, 3), (3, 1), (3, 2), (3, 4), (4, 1)] {
            let y = build_hk_fan(r, &[lam]).unwrap();
            let ring = IntersectionRing::from_fan(&y.fan).unwrap();
            let n = ring.rays().len();
            let mut total = Integer::zero();
            let mut idx = vec![0usize; r];
            loop {
                total += &ring.number(&idx).unwrap();
                let mut i = 0;
                while i < r {
                    idx[i] += 1;
                    if idx[i] < n {
                        break;
                    }
                    idx[i] = 0;
                    i += 1;
                }
                if i == r {
                    break;
                }
            }
            let k_r = if r % 2 == 0 { total } else { -total };
            assert_eq!(k_r, canonical_self_intersection(r as u32, lam).unwrap(), "Y({r};{lam})");
        }
    }

    #[test]
    fn e_divisor_from_fan() {
        for (r, lam) in [(2usize, 1i64), (3, 2), (4, 3)] {
            let y = build_hk_fan(r, &[lam]).unwrap();
            let ring = IntersectionRing::from_fan(&y.fan).unwrap();
            let n2 = ring.ray_index(&y.base_rays[1].coordinates()).unwrap();
            assert_eq!(ring.number(&vec![n2; r]).unwrap(), e_divisor_self_intersection(r as u32, lam));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn formula1_surface_is_eight(lam in 1i64..10_000) {
            prop_assert_eq!(canonical_self_intersection(2, lam).unwrap(), Integer::from_i64(8));
        }

        #[test]
        fn detect_inverts_build(r in 2usize..5, raw in proptest::collection::vec(0i64..5, 1..4)) {
            let k = raw.len().min(r - 1);
            let twists = &raw[..k];
            let y = build_hk_fan(r, twists).unwrap();
            let got = detect_hk(&y.fan, &Guards::default()).unwrap().unwrap();
            if twists.iter().all(|&t| t == 0) {
                prop_assert_eq!(got.twists, vec![0; k.min(r - k)]);
            } else {
                prop_assert_eq!(got, y.params.clone());
            }
            let pcs = primitive_collections(&y.fan, &Guards::default()).unwrap();
            let mut expected = vec![y.base_rays.clone(), y.fiber_rays.clone()];
            for e in expected.iter_mut() {
                e.sort();
            }
            expected.sort();
            prop_assert_eq!(pcs, expected);
        }
    }
}
