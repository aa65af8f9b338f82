//! Random complexes and chain maps: long exact sequences of mapping cones,
//! Euler characteristics, and the connecting map.

use ezd_core::complex::{cone, les_from_ses, Complex, CxMap};
use ezd_core::{Mat, Rat};
use proptest::prelude::*;

/// A unitriangular-by-unitriangular invertible matrix from a seed list.
fn invertible(n: usize, entries: &[i64]) -> Mat {
    let mut lower = Mat::identity(n);
    let mut upper = Mat::identity(n);
    let mut it = entries.iter().cycle();
    for i in 0..n {
        for j in 0..i {
            lower[(i, j)] = Rat::from_int(*it.next().unwrap_or(&0));
            upper[(j, i)] = Rat::from_int(*it.next().unwrap_or(&0));
        }
    }
    lower.mul(&upper).unwrap()
}

/// Sum of `homology[n]` copies of `ℚ` in degree `n` and `pairs[n]` copies of
/// `ℚ → ℚ` from degree `n + 1` to `n`, conjugated by invertible matrices.
/// The last degree is zero, so homology is known through `homology.len() − 1`.
fn random_complex(homology: &[usize], pairs: &[usize], noise: &[i64]) -> Complex {
    let len = homology.len();
    // pairs[n] needs degree n + 1 ≤ len − 1
    let p = |n: usize| if n + 1 < len { pairs[n] } else { 0 };
    let h = |n: usize| homology.get(n).copied().unwrap_or(0);
    // layout in degree k: [homology | targets of pairs(k) | sources of pairs(k − 1)]
    let dims: Vec<usize> = (0..=len).map(|k| h(k) + p(k) + if k >= 1 { p(k - 1) } else { 0 }).collect();
    let change: Vec<Mat> = dims.iter().map(|&d| invertible(d, noise)).collect();
    let mut diffs = vec![Mat::zeros(0, dims[0])];
    for k in 1..=len {
        let mut d = Mat::zeros(dims[k - 1], dims[k]);
        let (tgt0, src0) = (h(k - 1), h(k) + p(k));
        for c in 0..p(k - 1) {
            d[(tgt0 + c, src0 + c)] = Rat::ONE;
        }
        let conj = change[k - 1].mul(&d).unwrap().mul(&change[k].inverse().unwrap()).unwrap();
        diffs.push(conj);
    }
    Complex::new(0, diffs).unwrap()
}

fn arb_complex() -> impl Strategy<Value = (Complex, Vec<usize>)> {
    (
        proptest::collection::vec(0usize..3, 4),
        proptest::collection::vec(0usize..3, 4),
        proptest::collection::vec(-2i64..3, 1..12),
    )
        .prop_map(|(h, p, noise)| {
            let c = random_complex(&h, &p, &noise);
            (c, h)
        })
}

/// `c·id + ∂h + h∂`, a chain map homotopic to `c·id`.
fn perturbed_scalar(x: &Complex, c: i64, noise: &[i64]) -> CxMap {
    let mut it = noise.iter().cycle();
    let hs: Vec<Mat> = (x.lo()..=x.top())
        .map(|n| {
            let (r, cols) = (x.dim_at(n + 1), x.dim_at(n));
            let mut m = Mat::zeros(r, cols);
            for i in 0..r {
                for j in 0..cols {
                    m[(i, j)] = Rat::from_int(*it.next().unwrap());
                }
            }
            m
        })
        .collect();
    let h = |n: i64| -> Mat {
        if n < x.lo() || n > x.top() {
            Mat::zeros(x.dim_at(n + 1), x.dim_at(n))
        } else {
            hs[(n - x.lo()) as usize].clone()
        }
    };
    let comps = (x.lo()..=x.top())
        .map(|n| {
            let id = Mat::identity(x.dim_at(n)).scale(&Rat::from_int(c));
            let dh = x.d(n + 1).mul(&h(n)).unwrap();
            let hd = h(n - 1).mul(&x.d(n)).unwrap();
            id.add(&dh).unwrap().add(&hd).unwrap()
        })
        .collect();
    CxMap::new(0, x.lo(), comps)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn constructed_complexes_have_prescribed_homology((c, h) in arb_complex()) {
        c.verify().unwrap();
        let dims = c.homology_dims(0, c.top() - 1).unwrap();
        prop_assert_eq!(&dims[..h.len()], &h[..]);
    }

    #[test]
    fn euler_characteristic_of_homology((c, _) in arb_complex()) {
        let dims = c.homology_dims(0, c.top() - 1).unwrap();
        let chi_h: i64 = dims.iter().enumerate().map(|(n, &d)| if n % 2 == 0 { d as i64 } else { -(d as i64) }).sum();
        prop_assert_eq!(c.euler_characteristic(0, c.top()), chi_h);
    }

    #[test]
    fn cone_sequences_are_exact(
        (x, _) in arb_complex(),
        scalar in -2i64..3,
        noise in proptest::collection::vec(-2i64..3, 1..10),
    ) {
        let phi = perturbed_scalar(&x, scalar, &noise);
        phi.verify(&x, &x, x.lo(), x.top()).unwrap();
        let cn = cone(&phi, &x, &x).unwrap();
        cn.complex.verify().unwrap();
        let les = les_from_ses(&x, &cn.complex, &cn.quotient.truncate_above(cn.complex.top()), &cn.inclusion, &cn.projection, i64::MAX).unwrap();
        prop_assert!(les.defects().unwrap().is_empty());
        // the connecting map of a cone sequence is −H(φ)
        let sq = cn.quotient.truncate_above(cn.complex.top());
        let shifted = CxMap::new(-1, x.lo() + 1, phi.comps.clone());
        for n in (les.lo + 1)..=les.hi {
            let hp = shifted.induced(n, &les.hc[&n], &les.ha[&(n - 1)], &sq, &x).unwrap();
            prop_assert_eq!(&les.connecting[&n], &hp.neg());
        }
        // an isomorphism has an acyclic cone
        if scalar != 0 {
            for n in les.lo..=les.hi {
                prop_assert_eq!(les.hb[&n].dim(), 0);
            }
        }
    }
}
