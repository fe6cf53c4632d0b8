use kfind_core::baselines::{elbow_estimate, lloyd_kmeans, tightness_contrast};
use kfind_core::gadgets::{
    build_checkntsc_instance, check_ntsc_decision_bruteforce, exact_cover, yes_instance,
    ThreeCoverInstance,
};
use kfind_core::generators::{
    check_anti_concentration, check_sbm_separation, elbow_counterexample_spec,
    sample_gaussian_mixture, sample_sbm, MixtureSpec, SbmSpec,
};
use proptest::prelude::*;

fn spec() -> MixtureSpec {
    MixtureSpec::isotropic(vec![vec![0.0, 0.0, 0.0], vec![50.0, 0.0, 0.0]], 1.0).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn mixture_sampling_is_seeded(seed in any::<u64>(), n in 1usize..300) {
        let a = sample_gaussian_mixture(&spec(), n, seed).unwrap();
        let b = sample_gaussian_mixture(&spec(), n, seed).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.labels.len(), n);
        prop_assert!(a.labels.iter().all(|&l| l == 1 || l == 2));
        let c = sample_gaussian_mixture(&spec(), n, seed.wrapping_add(1)).unwrap();
        prop_assert_ne!(a.points, c.points);
    }

    #[test]
    fn prefix_is_stable_when_n_grows(seed in any::<u64>()) {
        let a = sample_gaussian_mixture(&spec(), 50, seed).unwrap();
        let b = sample_gaussian_mixture(&spec(), 80, seed).unwrap();
        prop_assert_eq!(a.points.as_flat(), &b.points.as_flat()[..150]);
    }

    #[test]
    fn sbm_adjacency_is_symmetric_binary(seed in any::<u64>()) {
        let s = SbmSpec::planted(2, 0.5, 0.05, 40).unwrap();
        let g = sample_sbm(&s, seed).unwrap();
        let n = g.points.n();
        for i in 0..n {
            prop_assert_eq!(g.points.row(i)[i], 0.0);
            for j in 0..n {
                let v = g.points.row(i)[j];
                prop_assert!(v == 0.0 || v == 1.0);
                prop_assert_eq!(v, g.points.row(j)[i]);
            }
        }
    }
}

#[test]
fn gaussian_moments_are_close() {
    let s = sample_gaussian_mixture(&spec(), 4000, 1).unwrap();
    let first: Vec<usize> = (0..4000).filter(|&i| s.labels[i] == 1).collect();
    let sg = kfind_core::sigma(&s.points, &first).unwrap();
    assert!((sg - 1.0).abs() < 0.1, "{sg}");
    assert!((first.len() as f64 / 4000.0 - 0.5).abs() < 0.05);
}

#[test]
fn analytic_checks() {
    let sbm = SbmSpec::planted(2, 0.5, 0.05, 400).unwrap();
    assert!(!check_sbm_separation(&sbm, 5.0, 0.5).unwrap().holds);
    assert!(check_anti_concentration(&spec(), 0, 20, 100, 3).unwrap().holds);
    assert!(MixtureSpec::isotropic(vec![], 1.0).is_err());
    assert_eq!(elbow_counterexample_spec(2, 4).unwrap().k(), 5);
}

#[test]
fn kmeans_and_elbow_on_separated_data() {
    let s = sample_gaussian_mixture(&MixtureSpec::isotropic(
        vec![vec![0.0, 0.0], vec![100.0, 0.0], vec![0.0, 100.0]], 1.0).unwrap(), 300, 4).unwrap();
    let km = lloyd_kmeans(&s.points, 3, 5, 0).unwrap();
    assert_eq!(km.clustering.k(), 3);
    assert!(km.trace.windows(2).all(|w| w[1] <= w[0] + 1e-9));
    let e = elbow_estimate(&s.points, 6, 3, 0).unwrap();
    assert_eq!(e.k_star, 3);
    assert!(e.deltas.windows(2).all(|w| w[1].1 <= w[0].1 * (1.0 + 1e-12)));
}

#[test]
fn tightness_contrast_is_reported() {
    let r = tightness_contrast(0, 50, 20.0, 400).unwrap();
    assert!(r.sigma_ratio > 1.0);
}

#[test]
fn gadget_yes_instance_reaches_unit_sigma() {
    let inst = yes_instance(6, 2).unwrap();
    assert!(exact_cover(&inst).is_some());
    let (x, h) = build_checkntsc_instance(&inst).unwrap();
    let d = check_ntsc_decision_bruteforce(&x, h).unwrap();
    assert!(d.holds);
    assert!(d.best_sigma <= 1.0 + 1e-9);
    let parsed = ThreeCoverInstance::parse(&inst.to_text()).unwrap();
    assert_eq!(parsed, inst);
}
