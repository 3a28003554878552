//! Hilbert bases of the positive orthant with respect to a weight lattice
//! and of its dual cone with respect to the dual lattice.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{gcd_i64, mod_floor_i64};
use crate::error::Result;
use crate::guard::Guards;
use crate::lattice::{LatticePoint, WeightLattice};

/// A candidate that turned out reducible, with one decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub point: LatticePoint,
    pub summand: LatticePoint,
    pub remainder: LatticePoint,
}

/// The Hilbert basis of `σ0 ∩ N_G`, sorted, with the reductions that
/// eliminated the other candidates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertBasis {
    elements: Vec<LatticePoint>,
    reductions: Vec<Reduction>,
}

impl HilbertBasis {
    pub fn elements(&self) -> &[LatticePoint] {
        &self.elements
    }

    pub fn reductions(&self) -> &[Reduction] {
        &self.reductions
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.elements.binary_search(p).is_ok()
    }
}

/// The `|G|` points of `Par(σ0) ∩ N_G`, zero included.
pub fn group_residues(lat: &WeightLattice) -> Vec<LatticePoint> {
    let l = lat.denominator();
    let mut out: Vec<LatticePoint> = lat
        .residue_numerators()
        .iter()
        .map(|num| LatticePoint::from_parts(num.clone(), l))
        .collect();
    out.sort();
    out
}

fn dominates(big: &[i64], small: &[i64]) -> bool {
    big.iter().zip(small).all(|(a, b)| a >= b)
}

/// Keeps the elements not dominated by an earlier kept element. Candidates
/// are processed by increasing coordinate sum, so a reducible point always
/// meets an irreducible summand first. Returns kept indices and, for each
/// dropped index, the index of the dominating kept element.
fn minimal_elements(points: &[Vec<i64>]) -> (Vec<usize>, Vec<(usize, usize)>) {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by_key(|&i| (points[i].iter().sum::<i64>(), points[i].clone()));
    let mut kept: Vec<usize> = Vec::new();
    let mut dropped = Vec::new();
    for i in order {
        if points[i].iter().all(|&x| x == 0) {
            continue;
        }
        match kept.iter().find(|&&k| points[k] != points[i] && dominates(&points[i], &points[k])) {
            Some(&k) => dropped.push((i, k)),
            None => {
                if !kept.iter().any(|&k| points[k] == points[i]) {
                    kept.push(i);
                }
            }
        }
    }
    (kept, dropped)
}

/// Hilbert basis of the orthant w.r.t. `N_G`. Every irreducible element is
/// a generator `e_i` or lies in the half-open parallelotope, so the
/// candidates are the unit vectors and the nonzero residues. Differences of
/// lattice points stay in the lattice, so irreducibility reduces to the
/// coordinatewise order.
pub fn hilbert_basis_orthant(lat: &WeightLattice) -> HilbertBasis {
    let l = lat.denominator();
    let mut candidates: Vec<Vec<i64>> = lat.units().iter().map(|u| u.numerators().to_vec()).collect();
    candidates.extend(
        lat.residue_numerators()
            .iter()
            .filter(|n| n.iter().any(|&x| x != 0))
            .cloned(),
    );
    let (kept, dropped) = minimal_elements(&candidates);
    let point = |i: usize| LatticePoint::from_parts(candidates[i].clone(), l);
    let mut elements: Vec<LatticePoint> = kept.iter().map(|&i| point(i)).collect();
    elements.sort();
    let reductions = dropped
        .into_iter()
        .map(|(i, k)| {
            let p = point(i);
            let s = point(k);
            Reduction {
                remainder: p.sub(&s),
                point: p,
                summand: s,
            }
        })
        .collect();
    HilbertBasis {
        elements,
        reductions,
    }
}

/// Definitional oracle: all lattice points of the closed unit cube, reduced
/// pairwise. Exponential in `r`; meant for small audits.
pub fn hilbert_basis_exhaustive(lat: &WeightLattice) -> Vec<LatticePoint> {
    let l = lat.denominator();
    let r = lat.dim();
    let mut points: Vec<Vec<i64>> = Vec::new();
    for res in lat.residue_numerators() {
        // add any subset of unit vectors whose coordinate is still ≤ 1
        for mask in 0u32..(1 << r) {
            let mut p = res.clone();
            let mut ok = true;
            for (i, x) in p.iter_mut().enumerate() {
                if mask & (1 << i) != 0 {
                    *x += l;
                    if *x > l {
                        ok = false;
                    }
                }
            }
            if ok {
                points.push(p);
            }
        }
    }
    points.sort();
    points.dedup();
    let nonzero: Vec<&Vec<i64>> = points.iter().filter(|p| p.iter().any(|&x| x != 0)).collect();
    let mut out: Vec<LatticePoint> = nonzero
        .iter()
        .filter(|p| {
            !nonzero.iter().any(|a| {
                a != *p && dominates(p, a) && {
                    let b: Vec<i64> = p.iter().zip(a.iter()).map(|(x, y)| x - y).collect();
                    b.iter().any(|&x| x != 0) && lat.contains_numerators(&b)
                }
            })
        })
        .map(|p| LatticePoint::from_parts((*p).clone(), l))
        .collect();
    out.sort();
    out
}

/// Smallest positive `u_i` with `u_i e_i ∈ M_G`, for each `i`.
pub fn dual_ray_lengths(lat: &WeightLattice) -> Vec<i64> {
    let l = lat.denominator();
    (0..lat.dim())
        .map(|i| {
            let g = lat
                .basis_numerators()
                .iter()
                .fold(l, |acc, row| gcd_i64(acc, row[i]));
            l / g
        })
        .collect()
}

/// Hilbert basis of the dual orthant with respect to `M_G`, as integer
/// vectors in the standard dual coordinates.
pub fn dual_hilbert_basis_orthant(lat: &WeightLattice, guards: &Guards) -> Result<Vec<Vec<i64>>> {
    let r = lat.dim();
    let l = lat.denominator();
    let lengths = dual_ray_lengths(lat);
    let box_size = lengths
        .iter()
        .try_fold(1u64, |acc, &u| acc.checked_mul(u as u64 + 1))
        .unwrap_or(u64::MAX);
    Guards::check("dual lattice box", box_size, guards.dual_box)?;
    let basis = lat.basis_numerators();
    let mut points: Vec<Vec<i64>> = Vec::new();
    let mut m = vec![0i64; r];
    // running pairings ⟨m, b⟩ mod L for every basis row
    let mut pair = vec![0i64; basis.len()];
    loop {
        if pair.iter().all(|&p| p == 0) {
            points.push(m.clone());
        }
        let mut i = 0;
        loop {
            if i == r {
                let (kept, _) = minimal_elements(&points);
                let mut out: Vec<Vec<i64>> = kept.into_iter().map(|k| points[k].clone()).collect();
                out.sort();
                return Ok(out);
            }
            if m[i] < lengths[i] {
                m[i] += 1;
                for (p, row) in pair.iter_mut().zip(basis) {
                    *p = mod_floor_i64(*p + row[i], l);
                }
                break;
            }
            for (p, row) in pair.iter_mut().zip(basis) {
                *p = mod_floor_i64(*p - m[i] * row[i], l);
            }
            m[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(lat: &WeightLattice, num: &[i64]) -> LatticePoint {
        lat.point(num.to_vec()).unwrap()
    }

    #[test]
    fn residues_examples() {
        let lat = WeightLattice::cyclic(2, &[1, 1]).unwrap();
        assert_eq!(group_residues(&lat), vec![lp(&lat, &[0, 0]), lp(&lat, &[1, 1])]);
        let lat = WeightLattice::cyclic(5, &[1, 4]).unwrap();
        assert_eq!(group_residues(&lat).len(), 5);
        let lat = WeightLattice::cyclic(9, &[1, 2, 3, 3]).unwrap();
        let res = group_residues(&lat);
        assert_eq!(res.len(), 9);
        assert!(res.contains(&lp(&lat, &[5, 1, 6, 6])));
    }

    #[test]
    fn basis_examples() {
        let lat = WeightLattice::cyclic(2, &[1, 1]).unwrap();
        let hb = hilbert_basis_orthant(&lat);
        assert_eq!(hb.elements(), &[lp(&lat, &[0, 2]), lp(&lat, &[1, 1]), lp(&lat, &[2, 0])]);

        let lat = WeightLattice::cyclic(5, &[1, 4]).unwrap();
        let hb = hilbert_basis_orthant(&lat);
        assert_eq!(hb.len(), 6);
        for j in 1..5 {
            assert!(hb.contains(&lp(&lat, &[j, 5 - j])));
        }

        let lat = WeightLattice::cyclic(9, &[1, 2, 3, 3]).unwrap();
        let hb = hilbert_basis_orthant(&lat);
        assert!(hb.contains(&lp(&lat, &[5, 1, 6, 6])));
        for red in hb.reductions() {
            assert_eq!(red.summand.add(&red.remainder), red.point);
            assert!(!red.remainder.is_zero());
        }
    }

    #[test]
    fn smooth_orthant_has_units_only() {
        let lat = WeightLattice::standard(4);
        assert_eq!(hilbert_basis_orthant(&lat).len(), 4);
    }

    #[test]
    fn dual_basis_examples() {
        let g = Guards::default();
        let lat = WeightLattice::cyclic(5, &[1, 4]).unwrap();
        assert_eq!(
            dual_hilbert_basis_orthant(&lat, &g).unwrap(),
            vec![vec![0, 5], vec![1, 1], vec![5, 0]]
        );
        let lat = WeightLattice::cyclic(2, &[1, 1]).unwrap();
        assert_eq!(dual_hilbert_basis_orthant(&lat, &g).unwrap().len(), 3);
        // Veronese 1/l(1,…,1): all monomials of degree l.
        for (l, count) in [(3i64, 10usize), (4, 35)] {
            let lat = WeightLattice::cyclic(l, &vec![1; l as usize]).unwrap();
            assert_eq!(dual_hilbert_basis_orthant(&lat, &g).unwrap().len(), count);
        }
    }

    #[test]
    fn dual_box_guard() {
        let lat = WeightLattice::cyclic(5, &[1, 1, 1, 1, 1]).unwrap();
        let tight = Guards {
            dual_box: 10,
            ..Guards::default()
        };
        assert!(dual_hilbert_basis_orthant(&lat, &tight).is_err());
    }

    fn small_type() -> impl Strategy<Value = (i64, Vec<i64>)> {
        (2i64..=24, 2usize..=4).prop_flat_map(|(l, r)| (Just(l), proptest::collection::vec(0..l, r)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn matches_exhaustive_oracle((l, w) in small_type()) {
            if let Ok(lat) = WeightLattice::cyclic(l, &w) {
                let hb = hilbert_basis_orthant(&lat);
                prop_assert_eq!(hb.elements().to_vec(), hilbert_basis_exhaustive(&lat));
                prop_assert!(hb.len() >= w.len());
                prop_assert_eq!(hb.len() == w.len(), lat.order() == 1);
            }
        }

        #[test]
        fn candidate_order_is_irrelevant((l, w) in small_type(), seed in 0usize..100) {
            if let Ok(lat) = WeightLattice::cyclic(l, &w) {
                let mut cands: Vec<Vec<i64>> = lat.units().iter().map(|u| u.numerators().to_vec()).collect();
                cands.extend(lat.residue_numerators().iter().cloned());
                let n = cands.len();
                cands.rotate_left(seed % n);
                cands.reverse();
                let (kept, _) = minimal_elements(&cands);
                let mut a: Vec<LatticePoint> = kept.iter().map(|&i| LatticePoint::from_parts(cands[i].clone(), lat.denominator())).collect();
                a.sort();
                prop_assert_eq!(a, hilbert_basis_orthant(&lat).elements().to_vec());
            }
        }
    }
}
