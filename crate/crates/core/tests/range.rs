//! Range embedding: threshold and dimension formulas, output scaling and
//! the behaviour of pairs outside the range.

use sinembed_core::range::{
    bennett_function, bennett_function_branch, dimension_bracket, output_divisor, required_dimension, select_threshold,
};
use sinembed_core::rng::Stream;
use sinembed_core::stable::{self, constant_q, constant_qa, cosine_moment};
use sinembed_core::{math, Method, Normalization, RangeEmbedding, RangeParams, StableLaw};

#[test]
fn reference_thresholds() {
    assert!((select_threshold(2.0, 1.0, 4.0, 0.25).unwrap() - 72.0).abs() < 1e-9);
    for (p, q) in [(2.0, 1.0), (1.5, 1.2), (1.0, 1.0), (2.0, 2.0)] {
        let mut last = 0.0;
        for i in 0..40 {
            let r = 1.1 * 1.2f64.powi(i);
            let s = select_threshold(p, q, r, 0.3).unwrap();
            assert!(s > r && s > last, "p={p} q={q} R={r}");
            last = s;
        }
    }
}

#[test]
fn dimension_grows_with_the_point_count() {
    for method in [Method::Hoeffding, Method::Min] {
        let small = required_dimension(1_000, 0.3, 40.0, 1.5, 1.0, method, 1.0).unwrap();
        let large = required_dimension(1_000_000, 0.3, 40.0, 1.5, 1.0, method, 1.0).unwrap();
        assert!(large >= small);
    }
}

#[test]
fn bennett_bracket_undercuts_hoeffding_for_large_thresholds() {
    for (p, q) in [(1.0, 1.0), (1.5, 1.0), (1.5, 1.5), (2.0, 1.5), (2.0, 2.0)] {
        for s in [2.0f64, 10.0, 100.0, 1e4] {
            let eps: f64 = 0.3;
            let head = s.powf(2.0 * q - p) / (2.0 * q - p);
            if head >= s.powf(2.0 * q) {
                continue;
            }
            let h = dimension_bracket(eps, s, p, q, Method::Hoeffding).unwrap();
            let b = dimension_bracket(eps, s, p, q, Method::Bennett).unwrap();
            let m = dimension_bracket(eps, s, p, q, Method::Min).unwrap();
            assert!(b <= h, "p={p} q={q} s={s}");
            assert_eq!(m, b.min(h));
        }
    }
}

#[test]
fn bennett_branches_stay_within_a_factor_two() {
    for i in 0..=60 {
        let u = 0.5 * 4f64.powf(i as f64 / 60.0);
        let ratio = bennett_function(u) / bennett_function_branch(u);
        assert!((0.5..=2.0).contains(&ratio), "u={u}: {ratio}");
    }
    assert_eq!(bennett_function_branch(1.0 - 1e-12).max(0.5), 0.5);
    assert!((bennett_function(1e-4) / (0.5e-8) - 1.0).abs() < 1e-3);
}

#[test]
fn moment_normalization_divides_by_the_stable_constants() {
    let law = StableLaw::new(1.5).unwrap();
    let mut params = RangeParams::new(1.5, 1.2, 4.0, 0.3, 100);
    params.normalization = Some(Normalization::Moment);
    let s = select_threshold(1.5, 1.2, 4.0, 0.3).unwrap();
    let d = output_divisor(&law, &params, s).unwrap();
    assert!((d - constant_q(1.5, 1.2).unwrap()).abs() < 1e-12 * d);
    let e = RangeEmbedding::new(RangeParams { k: Some(8), ..params }, 3, 1).unwrap();
    assert!((e.scale() - d.powf(-1.0 / 1.2)).abs() < 1e-12);

    let mut params = RangeParams::new(1.5, 1.5, 4.0, 0.3, 100);
    params.normalization = Some(Normalization::Moment);
    let s = select_threshold(1.5, 1.5, 4.0, 0.3).unwrap();
    let d = output_divisor(&law, &params, s).unwrap();
    let qa = constant_qa(1.5, 4.0 / s, 0.3).unwrap();
    assert!((d - 4.0 * qa).abs() < 1e-12 * d);
    assert_eq!(RangeParams::new(1.5, 1.5, 4.0, 0.3, 100).normalization(), Normalization::Centered);
}

/// Pairs along random directions at prescribed `ℓ_1` distances.
fn pairs_at(ts: &[f64], m: usize, seed: u64) -> Vec<(Vec<f64>, Vec<f64>, f64)> {
    let mut rng = Stream::new(seed);
    ts.iter()
        .map(|&t| {
            let base: Vec<f64> = (0..m).map(|_| rng.uniform_in(-20.0, 20.0)).collect();
            let dir: Vec<f64> = (0..m).map(|_| rng.uniform_in(-1.0, 1.0)).collect();
            let norm = math::lp_norm(&dir, 1.0);
            let other = base.iter().zip(&dir).map(|(b, d)| b + t * d / norm).collect();
            (base, other, t)
        })
        .collect()
}

#[test]
fn large_scale_pairs_are_floored_and_capped() {
    let (p, q, r, eps) = (1.0, 1.0, 4.0, 0.3);
    let mut params = RangeParams::new(p, q, r, eps, 100);
    params.c_dim = 1.0 / 16.0;
    let e = RangeEmbedding::new(params, 8, 3).unwrap();
    let ts: Vec<f64> = (0..200).map(|i| r * 1.02 * 100f64.powf(i as f64 / 199.0)).collect();
    let mut floored = 0;
    let mut worst: f64 = 0.0;
    for (v, w, t) in pairs_at(&ts, 8, 5) {
        let d = math::lp_dist_pow(&e.embed(&v).unwrap(), &e.embed(&w).unwrap(), q);
        floored += usize::from(d >= (1.0 - 0.35) * r.powf(q));
        worst = worst.max(d / t.powf(q));
        assert!(d <= e.pair_cap());
    }
    assert!(floored as f64 >= 0.95 * ts.len() as f64, "{floored}");
    // Fitted expansion constant for t > R.
    assert!(worst <= 2.0, "{worst}");
}

#[test]
fn scaled_cap_holds_for_adversarial_pairs() {
    let (p, q) = (2.0, 1.0);
    let mut params = RangeParams::new(p, q, 4.0, 0.3, 50);
    params.normalization = Some(Normalization::Moment);
    params.k = Some(64);
    let e = RangeEmbedding::new(params, 6, 9).unwrap();
    let cap = e.s().powf(q) / (cosine_moment(q).unwrap() * stable::constant_q(p, q).unwrap());
    assert!((e.pair_cap() - cap).abs() <= 1e-12 * cap);
    let mut rng = Stream::new(12);
    for i in 0..2_000 {
        let scale = if i % 2 == 0 { 1.0 } else { 1e6 };
        let v: Vec<f64> = (0..6).map(|_| scale * rng.uniform_in(-1.0, 1.0)).collect();
        let w: Vec<f64> = (0..6).map(|_| scale * rng.uniform_in(-1.0, 1.0)).collect();
        let d = math::lp_dist_pow(&e.embed(&v).unwrap(), &e.embed(&w).unwrap(), q);
        assert!(d <= cap, "{d} > {cap}");
    }
}
