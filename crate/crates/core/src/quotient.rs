//! Cyclic quotient types `1/l(α_1,…,α_r)`: classification, junior points,
//! the Hilbert-basis criterion and cohomology counts.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{gcd_i64, mod_floor_i64, Rational};
use crate::error::{Error, Result};
use crate::guard::Guards;
use crate::hilbert::{dual_hilbert_basis_orthant, hilbert_basis_orthant};
use crate::lattice::{LatticePoint, WeightLattice};

/// The type `1/l(α_1,…,α_r)` of a cyclic diagonal action, weights reduced
/// into `[0, l)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicQuotientType {
    order: i64,
    weights: Vec<i64>,
}

impl CyclicQuotientType {
    /// Validates `l ≥ 2`, `r ≥ 2`, at least two nonzero weights and
    /// smallness.
    pub fn new(order: i64, weights: &[i64]) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidType(alloc::format!("order {order} is below 2")));
        }
        if weights.len() < 2 {
            return Err(Error::InvalidType(String::from("need at least two weights")));
        }
        let weights: Vec<i64> = weights.iter().map(|&a| mod_floor_i64(a, order)).collect();
        if weights.iter().filter(|&&a| a != 0).count() < 2 {
            return Err(Error::InvalidType(String::from(
                "at least two weights must be nonzero mod l",
            )));
        }
        for i in 0..weights.len() {
            let g = weights
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(order, |acc, (_, &a)| gcd_i64(acc, a));
            if g != 1 {
                return Err(Error::InvalidType(alloc::format!(
                    "not small: gcd of l with the weights other than #{} is {g}",
                    i + 1
                )));
            }
        }
        Ok(CyclicQuotientType { order, weights })
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn lattice(&self) -> Result<WeightLattice> {
        self.lattice_with(&Guards::default())
    }

    pub fn lattice_with(&self, guards: &Guards) -> Result<WeightLattice> {
        WeightLattice::cyclic_with(self.order, &self.weights, guards)
    }

    pub fn is_gorenstein(&self) -> bool {
        self.weights.iter().sum::<i64>() % self.order == 0
    }

    /// `r` minus the number of zero weights.
    pub fn splitting_codimension(&self) -> usize {
        self.weights.iter().filter(|&&a| a != 0).count()
    }

    pub fn is_isolated(&self) -> bool {
        self.weights.iter().all(|&a| gcd_i64(a, self.order) == 1)
    }

    /// Lexicographic minimum over units `λ` mod `l` of the sorted tuple
    /// `([λα_i]_l)`; sorting absorbs the permutations.
    pub fn normal_form(&self) -> CyclicQuotientType {
        let l = self.order;
        let best = (1..l)
            .filter(|&lam| gcd_i64(lam, l) == 1)
            .map(|lam| {
                let mut w: Vec<i64> = self.weights.iter().map(|&a| mod_floor_i64(lam * a, l)).collect();
                w.sort_unstable();
                w
            })
            .min()
            .expect("1 is a unit");
        CyclicQuotientType {
            order: l,
            weights: best,
        }
    }

    pub fn equivalent(&self, other: &CyclicQuotientType) -> bool {
        self.order == other.order
            && self.dim() == other.dim()
            && self.normal_form() == other.normal_form()
    }
}

impl fmt::Display for CyclicQuotientType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}(", self.order)?;
        for (i, a) in self.weights.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

/// Lattice points of the junior simplex `s_G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JuniorData {
    pub vertices: Vec<LatticePoint>,
    /// Junior points other than the vertices, sorted.
    pub points: Vec<LatticePoint>,
}

impl JuniorData {
    /// Vertices followed by the other junior points.
    pub fn all(&self) -> Vec<LatticePoint> {
        let mut v = self.vertices.clone();
        v.extend(self.points.iter().cloned());
        v
    }

    /// Non-vertex points on the relative boundary of `s_G`.
    pub fn boundary(&self) -> Vec<LatticePoint> {
        self.points
            .iter()
            .filter(|p| p.numerators().contains(&0))
            .cloned()
            .collect()
    }

    pub fn interior(&self) -> Vec<LatticePoint> {
        self.points
            .iter()
            .filter(|p| !p.numerators().contains(&0))
            .cloned()
            .collect()
    }

    pub fn len(&self) -> usize {
        self.vertices.len() + self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

pub fn junior_points_of(lat: &WeightLattice) -> Result<JuniorData> {
    if !lat.is_gorenstein() {
        return Err(Error::NotGorenstein);
    }
    let l = lat.denominator();
    let mut points: Vec<LatticePoint> = lat
        .residue_numerators()
        .iter()
        .filter(|n| n.iter().sum::<i64>() == l)
        .map(|n| LatticePoint::from_parts(n.clone(), l))
        .collect();
    points.sort();
    Ok(JuniorData {
        vertices: lat.units(),
        points,
    })
}

pub fn junior_points(t: &CyclicQuotientType) -> Result<JuniorData> {
    if !t.is_gorenstein() {
        return Err(Error::NotGorenstein);
    }
    junior_points_of(&t.lattice()?)
}

/// Outcome of the test `Hlb(σ0) = s_G ∩ N_G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionVerdict {
    pub passes: bool,
    /// Hilbert-basis elements off the junior hyperplane.
    pub violators: Vec<LatticePoint>,
}

pub fn necessary_criterion_of(lat: &WeightLattice) -> Result<CriterionVerdict> {
    if !lat.is_gorenstein() {
        return Err(Error::NotGorenstein);
    }
    let one = Rational::one();
    let violators: Vec<LatticePoint> = hilbert_basis_orthant(lat)
        .elements()
        .iter()
        .filter(|p| p.coordinate_sum() != one)
        .cloned()
        .collect();
    Ok(CriterionVerdict {
        passes: violators.is_empty(),
        violators,
    })
}

pub fn necessary_criterion(t: &CyclicQuotientType) -> Result<CriterionVerdict> {
    if !t.is_gorenstein() {
        return Err(Error::NotGorenstein);
    }
    necessary_criterion_of(&t.lattice()?)
}

/// Dimensions of `H^{2i}` for `i = 0..r−1` of a crepant resolution, and
/// their sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyProfile {
    pub dims: Vec<u64>,
    pub euler: u64,
}

impl CohomologyProfile {
    fn from_dims(dims: Vec<u64>) -> Self {
        let euler = dims.iter().sum();
        CohomologyProfile { dims, euler }
    }
}

/// Counts `λ ∈ [0, l)` by the age `Σ [λα_j]_l / l`.
pub fn cohomology_cyclic(t: &CyclicQuotientType) -> Result<CohomologyProfile> {
    if !t.is_gorenstein() {
        return Err(Error::NotGorenstein);
    }
    let l = t.order;
    let mut dims = vec![0u64; t.dim()];
    for lam in 0..l {
        let s: i64 = t.weights.iter().map(|&a| (lam * a) % l).sum();
        dims[(s / l) as usize] += 1;
    }
    Ok(CohomologyProfile::from_dims(dims))
}

/// Counts the residues of `Par(σ0) ∩ N_G` by coordinate sum.
pub fn cohomology_parallelotope(lat: &WeightLattice) -> Result<CohomologyProfile> {
    if !lat.is_gorenstein() {
        return Err(Error::NotGorenstein);
    }
    let l = lat.denominator();
    let mut dims = vec![0u64; lat.dim()];
    for n in lat.residue_numerators() {
        dims[(n.iter().sum::<i64>() / l) as usize] += 1;
    }
    Ok(CohomologyProfile::from_dims(dims))
}

/// Closed form in dimension three:
/// `(1, (l + Σ gcd(α_j, l))/2 − 2, (l − Σ gcd(α_j, l))/2 + 1)`.
pub fn cohomology_3d_closed_form(t: &CyclicQuotientType) -> Result<CohomologyProfile> {
    if t.dim() != 3 {
        return Err(Error::WrongDimension {
            expected: 3,
            found: t.dim(),
        });
    }
    if !t.is_gorenstein() {
        return Err(Error::NotGorenstein);
    }
    let l = t.order;
    let g: i64 = t.weights.iter().map(|&a| gcd_i64(a, l)).sum();
    let h2 = (l + g) / 2 - 2;
    let h4 = (l - g) / 2 + 1;
    Ok(CohomologyProfile::from_dims(vec![1, h2 as u64, h4 as u64]))
}

/// Flags of the Veronese type `1/l(1,…,1)` in dimension `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VeroneseFlags {
    pub terminal: bool,
    pub canonical: bool,
    pub gorenstein: bool,
}

pub fn veronese_classify(l: i64, r: i64) -> VeroneseFlags {
    VeroneseFlags {
        terminal: r > l,
        canonical: r >= l,
        gorenstein: r % l == 0,
    }
}

/// Number of minimal generators of the invariant ring, i.e. of the Hilbert
/// basis of the dual orthant w.r.t. `M_G`.
pub fn embedding_dimension(t: &CyclicQuotientType, guards: &Guards) -> Result<usize> {
    Ok(dual_hilbert_basis_orthant(&t.lattice_with(guards)?, guards)?.len())
}

/// The weights `(1, k, …, k^{r−1})` over `(k^r − 1)/(k − 1)`.
pub fn geometric_progression_type(r: u32, k: i64) -> Result<CyclicQuotientType> {
    let l = (0..r).map(|i| k.pow(i)).sum::<i64>();
    let w: Vec<i64> = (0..r).map(|i| k.pow(i)).collect();
    CyclicQuotientType::new(l, &w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn ty(l: i64, w: &[i64]) -> CyclicQuotientType {
        CyclicQuotientType::new(l, w).unwrap()
    }

    #[test]
    fn validation() {
        assert!(CyclicQuotientType::new(1, &[1, 1]).is_err());
        assert!(CyclicQuotientType::new(5, &[1]).is_err());
        assert!(CyclicQuotientType::new(5, &[5, 1]).is_err());
        assert!(CyclicQuotientType::new(6, &[2, 4, 3]).is_err());
        assert_eq!(ty(5, &[6, -1]).weights(), &[1, 4]);
        assert_eq!(ty(7, &[1, 2, 4]).to_string(), "1/7(1,2,4)");
    }

    #[test]
    fn gorenstein_examples() {
        assert!(ty(5, &[1, 4]).is_gorenstein());
        assert!(ty(7, &[1, 2, 4]).is_gorenstein());
        assert!(!ty(5, &[1, 1, 1]).is_gorenstein());
    }

    #[test]
    fn isolation_examples() {
        let t = ty(7, &[1, 2, 4]);
        assert_eq!(t.splitting_codimension(), 3);
        assert!(t.is_isolated());
        assert!(!ty(6, &[1, 1, 4]).is_isolated());
        for l in 4..30 {
            for r in 2..6i64 {
                if l < r {
                    continue;
                }
                let mut w = vec![1; r as usize - 1];
                w.push(l - (r - 1));
                let t = ty(l, &w);
                assert_eq!(t.is_isolated(), gcd_i64(l, r - 1) == 1, "{t}");
            }
        }
    }

    #[test]
    fn normal_form_examples() {
        assert!(ty(5, &[1, 2, 2]).equivalent(&ty(5, &[1, 1, 3])));
        let t = ty(11, &[1, 3, 7]);
        assert!(t.equivalent(&ty(11, &[10, 8, 4])));
        assert_eq!(ty(9, &[4, 4, 1]).normal_form(), ty(9, &[1, 1, 7]));
        assert_eq!(ty(8, &[3, 3, 3, 7]).normal_form(), ty(8, &[1, 1, 1, 5]));
    }

    #[test]
    fn junior_examples() {
        let lat = WeightLattice::cyclic(7, &[1, 1, 5]).unwrap();
        let j = junior_points(&ty(7, &[1, 1, 5])).unwrap();
        let expected: Vec<LatticePoint> = (1..=3).map(|k| lat.point(vec![k, k, 7 - 2 * k]).unwrap()).collect();
        let mut e = expected.clone();
        e.sort();
        assert_eq!(j.points, e);
        assert_eq!(j.interior().len(), 3);

        let lat = WeightLattice::cyclic(7, &[1, 2, 4]).unwrap();
        let j = junior_points(&ty(7, &[1, 2, 4])).unwrap();
        let mut e: Vec<LatticePoint> = [[1, 2, 4], [2, 4, 1], [4, 1, 2]]
            .iter()
            .map(|n| lat.point(n.to_vec()).unwrap())
            .collect();
        e.sort();
        assert_eq!(j.points, e);

        assert_eq!(junior_points(&ty(5, &[1, 1, 1])), Err(Error::NotGorenstein));
    }

    #[test]
    fn junior_count_for_series() {
        for r in 2..6i64 {
            for l in r..40 {
                let mut w = vec![1; r as usize - 1];
                w.push(l - (r - 1));
                let j = junior_points(&ty(l, &w)).unwrap();
                let nu = l / (r - 1);
                // for r = 2 the last series point is the vertex e_1
                let extra = i64::from(r == 2);
                assert_eq!(j.len() as i64, r + nu - extra, "l={l} r={r}");
            }
        }
    }

    #[test]
    fn criterion_examples() {
        let v = necessary_criterion(&ty(9, &[1, 2, 3, 3])).unwrap();
        assert!(!v.passes);
        let lat = WeightLattice::cyclic(9, &[1, 2, 3, 3]).unwrap();
        assert!(v.violators.contains(&lat.point(vec![5, 1, 6, 6]).unwrap()));

        assert!(necessary_criterion(&ty(39, &[1, 5, 8, 25])).unwrap().passes);

        let v = necessary_criterion(&ty(5, &[1, 1, 1, 2])).unwrap();
        assert!(!v.passes);
        let lat = WeightLattice::cyclic(5, &[1, 1, 1, 2]).unwrap();
        assert!(v.violators.contains(&lat.point(vec![3, 3, 3, 1]).unwrap()));

        for r in 2..=5 {
            let t = geometric_progression_type(r, 2).unwrap();
            assert!(necessary_criterion(&t).unwrap().passes, "{t}");
        }
    }

    #[test]
    fn cohomology_examples() {
        let p = cohomology_cyclic(&ty(7, &[1, 1, 5])).unwrap();
        assert_eq!(p.dims, vec![1, 3, 3]);
        assert_eq!(p.euler, 7);
        assert_eq!(cohomology_cyclic(&ty(9, &[1, 1, 1, 6])).unwrap().dims, vec![1, 3, 3, 2]);
        assert_eq!(cohomology_cyclic(&ty(2, &[1, 1])).unwrap().dims, vec![1, 1]);
        assert_eq!(cohomology_3d_closed_form(&ty(7, &[1, 1, 5])).unwrap().dims, vec![1, 3, 3]);
        assert_eq!(cohomology_3d_closed_form(&ty(6, &[1, 1, 4])).unwrap().dims, vec![1, 3, 2]);
        assert_eq!(cohomology_cyclic(&ty(6, &[1, 1, 4])).unwrap().dims, vec![1, 3, 2]);
        assert_eq!(cohomology_3d_closed_form(&ty(3, &[1, 1, 1])).unwrap().dims, vec![1, 1, 1]);
        assert!(cohomology_3d_closed_form(&ty(4, &[1, 1, 1, 1])).is_err());
        for l in (3..40).step_by(2) {
            let p = cohomology_cyclic(&ty(l, &[1, 1, l - 2])).unwrap();
            assert_eq!(p.dims[1] as i64, (l - 1) / 2);
        }
    }

    #[test]
    fn closed_form_agrees_in_dimension_three() {
        for l in 2..60 {
            for a in 0..l {
                for b in a..l {
                    let c = mod_floor_i64(-a - b, l);
                    if let Ok(t) = CyclicQuotientType::new(l, &[a, b, c]) {
                        assert_eq!(cohomology_3d_closed_form(&t).unwrap(), cohomology_cyclic(&t).unwrap(), "{t}");
                    }
                }
            }
        }
    }

    #[test]
    fn multi_factor_cohomology() {
        use crate::lattice::GroupFactor;
        let lat = WeightLattice::abelian(3, vec![
            GroupFactor { order: 4, weights: vec![1, 3, 0] },
            GroupFactor { order: 4, weights: vec![0, 1, 3] },
        ])
        .unwrap();
        assert_eq!(cohomology_parallelotope(&lat).unwrap().euler, 16);
    }

    #[test]
    fn veronese_examples() {
        let f = veronese_classify(4, 4);
        assert!(f.gorenstein && f.canonical && !f.terminal);
        let f = veronese_classify(2, 4);
        assert!(f.gorenstein && f.canonical && f.terminal);
        assert!(!veronese_classify(3, 2).gorenstein);
    }

    #[test]
    fn embedding_examples() {
        let g = Guards::default();
        assert_eq!(embedding_dimension(&ty(5, &[1, 4]), &g).unwrap(), 3);
        assert_eq!(embedding_dimension(&ty(2, &[1, 1]), &g).unwrap(), 3);
        // binom(2l−1, l) for l = r
        assert_eq!(embedding_dimension(&ty(3, &[1, 1, 1]), &g).unwrap(), 10);
        assert_eq!(embedding_dimension(&ty(4, &[1, 1, 1, 1]), &g).unwrap(), 35);
        // A_{l−1}: always three generators
        for l in 2..30 {
            assert_eq!(embedding_dimension(&ty(l, &[1, l - 1]), &g).unwrap(), 3);
        }
    }

    fn gorenstein_type() -> impl Strategy<Value = Option<CyclicQuotientType>> {
        (2i64..=60, 2usize..=5).prop_flat_map(|(l, r)| {
            proptest::collection::vec(0..l, r - 1).prop_map(move |mut w| {
                let s: i64 = w.iter().sum();
                w.push(mod_floor_i64(-s, l));
                CyclicQuotientType::new(l, &w).ok()
            })
        })
    }

    proptest! {
        #[test]
        fn cohomology_double_count(t in gorenstein_type()) {
            if let Some(t) = t {
                let a = cohomology_cyclic(&t).unwrap();
                prop_assert_eq!(&a, &cohomology_parallelotope(&t.lattice().unwrap()).unwrap());
                prop_assert_eq!(a.euler, t.order() as u64);
                prop_assert_eq!(a.dims[0], 1);
            }
        }

        #[test]
        fn normal_form_axioms(t in gorenstein_type(), lam in 1i64..60, perm in 0usize..24) {
            if let Some(t) = t {
                let nf = t.normal_form();
                prop_assert_eq!(nf.normal_form(), nf.clone());
                prop_assert!(t.equivalent(&t));
                let l = t.order();
                if gcd_i64(lam, l) == 1 {
                    let mut w: Vec<i64> = t.weights().iter().map(|&a| lam * a).collect();
                    let n = w.len();
                    w.rotate_left(perm % n);
                    let u = CyclicQuotientType::new(l, &w).unwrap();
                    prop_assert!(u.equivalent(&t));
                    prop_assert!(t.equivalent(&u));
                    prop_assert!(nf.equivalent(&u));
                }
            }
        }

        #[test]
        fn junior_points_are_in_hilbert_basis(t in gorenstein_type()) {
            if let Some(t) = t {
                let hb = hilbert_basis_orthant(&t.lattice().unwrap());
                for p in junior_points(&t).unwrap().all() {
                    prop_assert!(hb.contains(&p));
                }
            }
        }
    }
}
