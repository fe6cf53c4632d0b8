use kfind_core::means::sigma_cost_bracket_check;
use kfind_core::{centered_one_means, outlier_centered_one_means, PointSet};
use proptest::prelude::*;

fn sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn brute_outlier(p: &PointSet, m: usize) -> f64 {
    let n = p.n();
    let mut best = f64::INFINITY;
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != m {
            continue;
        }
        let set: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        for &c in &set {
            let cost: f64 = set.iter().map(|&i| sq(p.row(i), p.row(c))).sum();
            best = best.min(cost);
        }
    }
    best
}

fn points(max_n: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    (1usize..=4, 2..=max_n).prop_flat_map(|(d, n)| {
        prop::collection::vec(prop::collection::vec(-10.0..10.0f64, d), n)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn cost_brackets_sigma(rows in points(25)) {
        let p = PointSet::from_rows(&rows).unwrap();
        prop_assert!(sigma_cost_bracket_check(&p, &p.all_indices()).unwrap());
    }

    #[test]
    fn outlier_variant_matches_enumeration(rows in points(10), frac in 0.1..1.0f64) {
        let p = PointSet::from_rows(&rows).unwrap();
        let m = ((p.n() as f64 * frac).ceil() as usize).clamp(1, p.n());
        let got = outlier_centered_one_means(&p, &p.all_indices(), m).unwrap();
        let want = brute_outlier(&p, m);
        prop_assert_eq!(got.selected.len(), m);
        prop_assert!((got.cost - want).abs() <= 1e-9 * (1.0 + want));
    }

    #[test]
    fn full_outlier_equals_plain(rows in points(12)) {
        let p = PointSet::from_rows(&rows).unwrap();
        let all = p.all_indices();
        let a = centered_one_means(&p, &all).unwrap();
        let b = outlier_centered_one_means(&p, &all, p.n()).unwrap();
        prop_assert_eq!(a.center_index, b.center_index);
        prop_assert!((a.cost - b.cost).abs() <= 1e-9 * (1.0 + a.cost));
    }
}

#[test]
fn outlier_drops_far_point() {
    let p = PointSet::from_values(&[0.0, 1.0, 2.0, 100.0]).unwrap();
    let r = outlier_centered_one_means(&p, &[0, 1, 2, 3], 3).unwrap();
    assert_eq!(r.selected, vec![0, 1, 2]);
    assert_eq!(r.center_index, 1);
    assert_eq!(r.cost, 2.0);
    assert!(outlier_centered_one_means(&p, &[0, 1], 3).is_err());
    assert!(outlier_centered_one_means(&p, &[0, 1], 0).is_err());
}
