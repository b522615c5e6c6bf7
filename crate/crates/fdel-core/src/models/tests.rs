use super::*;
use crate::spectral;
use crate::testutil::oracle_spectral_integral;
use alloc::vec;

#[test]
fn white_noise_flat_spectrum() {
    let m = SpectralModel::White { variance: 2.0 * PI };
    for &l in &[0.1, 1.0, PI] {
        assert!((m.density(l).unwrap() - 1.0).abs() < 1e-15);
    }
}

#[test]
fn ar1_density_hand_value() {
    // phi = 0.5, sigma2 = 2 pi, lambda = pi: 1/|1 + 0.5|^2 = 4/9.
    let m = SpectralModel::Ar1 { phi: 0.5, sigma2: 2.0 * PI };
    assert!((m.density(PI).unwrap() - 4.0 / 9.0).abs() < 1e-14);
}

#[test]
fn farima_density_hand_value() {
    // d = 0.25, sigma2 = 2 pi, lambda = pi: |1 - e^{i pi}|^{-0.5} = 2^{-1/2}.
    let m = SpectralModel::Farima { d: 0.25, ar: vec![], ma: vec![], sigma2: 2.0 * PI };
    assert!((m.density(PI).unwrap() - 0.5f64.sqrt()).abs() < 1e-14);
}

#[test]
fn lrd_pole_reported_at_zero() {
    let m = SpectralModel::Farima { d: 0.3, ar: vec![], ma: vec![], sigma2: 1.0 };
    assert!(matches!(m.density(0.0), Err(ModelError::PoleAtZero)));
    let m = SpectralModel::Fgn { hurst: 0.8, variance: 1.0 };
    assert!(matches!(m.density(0.0), Err(ModelError::PoleAtZero)));
    // Short-memory models are finite at zero.
    let m = SpectralModel::Ar1 { phi: 0.5, sigma2: 1.0 };
    assert!(m.density(0.0).is_ok());
}

#[test]
fn farima_low_frequency_power_law() {
    // f(l) l^{2d} must flatten as l -> 0: the ratio f(1e-3)/f(1e-4)
    // tracks (1e-3/1e-4)^{-2d} within 2%.
    for &d in &[0.15, 0.3, 0.45] {
        let m = SpectralModel::Farima { d, ar: vec![], ma: vec![], sigma2: 1.0 };
        let ratio = m.density(1e-3).unwrap() / m.density(1e-4).unwrap();
        let law = 10f64.powf(-2.0 * d);
        assert!(
            (ratio / law - 1.0).abs() < 0.02,
            "d={d}: ratio {ratio} vs law {law}"
        );
    }
    // Same law for fGn with alpha = 2H - 1.
    let m = SpectralModel::Fgn { hurst: 0.75, variance: 1.0 };
    let ratio = m.density(1e-3).unwrap() / m.density(1e-4).unwrap();
    let law = 10f64.powf(-(2.0 * 0.75 - 1.0));
    assert!((ratio / law - 1.0).abs() < 0.02);
}

#[test]
fn autocovariance_hand_values() {
    // White noise.
    let r = SpectralModel::White { variance: 3.0 }.autocovariance(4).unwrap();
    assert_eq!(r, vec![3.0, 0.0, 0.0, 0.0, 0.0]);

    // fGn H = 0.7: r(1) = (2^{1.4} - 2)/2.
    let r = SpectralModel::Fgn { hurst: 0.7, variance: 1.0 }.autocovariance(1).unwrap();
    let expect = (2f64.powf(1.4) - 2.0) / 2.0;
    assert!((r[1] - expect).abs() < 1e-14);
    assert!((expect - 0.31951).abs() < 5e-6);

    // FARIMA(0, 0.2, 0): rho(1) = d/(1-d) = 0.25.
    let r = SpectralModel::Farima { d: 0.2, ar: vec![], ma: vec![], sigma2: 1.0 }
        .autocovariance(1)
        .unwrap();
    assert!((r[1] / r[0] - 0.25).abs() < 1e-14);

    // AR(1): r(k) = sigma2 phi^k / (1 - phi^2).
    let r = SpectralModel::Ar1 { phi: 0.5, sigma2: 2.0 }.autocovariance(3).unwrap();
    for (k, rk) in r.iter().enumerate() {
        let expect = 2.0 * 0.5f64.powi(k as i32) / 0.75;
        assert!((rk - expect).abs() < 1e-12);
    }
}

#[test]
fn autocovariance_is_valid_sequence() {
    let models = [
        SpectralModel::Arma { ar: vec![0.5, -0.2], ma: vec![0.4], sigma2: 1.3 },
        SpectralModel::Farima { d: 0.3, ar: vec![0.4], ma: vec![], sigma2: 1.0 },
        SpectralModel::Fgn { hurst: 0.85, variance: 2.0 },
    ];
    for m in &models {
        let r = m.autocovariance(16).unwrap();
        assert!(r[0] > 0.0);
        for rk in &r[1..] {
            assert!(rk.abs() <= r[0] * (1.0 + 1e-12));
        }
    }
}

#[test]
fn density_integrates_to_variance() {
    // Quadrature oracle: int_{-pi}^{pi} f = 2 int_0^pi f = r(0), 1e-4 rel.
    let models = [
        SpectralModel::White { variance: 2.5 },
        SpectralModel::Ar1 { phi: 0.6, sigma2: 1.0 },
        SpectralModel::Arma { ar: vec![0.5, -0.2], ma: vec![0.4], sigma2: 1.3 },
        SpectralModel::Farima { d: 0.3, ar: vec![], ma: vec![], sigma2: 1.0 },
        SpectralModel::Farima { d: 0.25, ar: vec![0.4], ma: vec![0.2], sigma2: 0.8 },
        SpectralModel::Fgn { hurst: 0.7, variance: 1.0 },
        SpectralModel::Fgn { hurst: 0.9, variance: 3.0 },
    ];
    for m in &models {
        let integral = 2.0 * oracle_spectral_integral(m, |_| 1.0);
        let r0 = m.autocovariance(0).unwrap()[0];
        assert!(
            (integral / r0 - 1.0).abs() < 1e-4,
            "{m:?}: integral {integral} vs r(0) {r0}"
        );
    }
}

#[test]
fn density_cosine_transform_matches_autocovariance() {
    // r(k) = 2 int_0^pi cos(k l) f(l) dl to 1e-3 relative (of r(0) scale
    // for small entries), lags 0..5, all supported families.
    let models = [
        SpectralModel::White { variance: 1.0 },
        SpectralModel::Ar1 { phi: -0.7, sigma2: 2.0 },
        SpectralModel::Arma { ar: vec![0.3], ma: vec![-0.4], sigma2: 1.0 },
        SpectralModel::Farima { d: 0.35, ar: vec![], ma: vec![], sigma2: 1.0 },
        SpectralModel::Farima { d: 0.2, ar: vec![-0.3], ma: vec![0.25], sigma2: 1.5 },
        SpectralModel::Fgn { hurst: 0.8, variance: 1.0 },
    ];
    for m in &models {
        let r = m.autocovariance(5).unwrap();
        for k in 0..=5usize {
            let byquad = 2.0 * oracle_spectral_integral(m, |l| (k as f64 * l).cos());
            let denom = r[k].abs().max(1e-3 * r[0]);
            assert!(
                (byquad - r[k]).abs() / denom < 1e-3,
                "{m:?} lag {k}: quad {byquad} vs closed {r:?}"
            );
        }
    }
}

#[test]
fn spectral_distribution_endpoints() {
    let m = SpectralModel::White { variance: 2.0 * PI };
    // Flat f = 1: F(tau) = tau.
    assert!((m.spectral_distribution(PI / 2.0).unwrap() - PI / 2.0).abs() < 1e-9);
    assert!((m.spectral_distribution(PI).unwrap() - PI).abs() < 1e-9);
    assert!(m.spectral_distribution(0.0).unwrap().abs() < 1e-12);
    // LRD: F(pi) still equals r(0)/2 despite the pole.
    let m = SpectralModel::Farima { d: 0.4, ar: vec![], ma: vec![], sigma2: 1.0 };
    let r0 = m.autocovariance(0).unwrap()[0];
    assert!((m.spectral_distribution(PI).unwrap() / (r0 / 2.0) - 1.0).abs() < 1e-6);
}

#[test]
fn validation_rejects_bad_parameters() {
    assert!(SpectralModel::Ar1 { phi: 1.0, sigma2: 1.0 }.validate().is_err());
    assert!(SpectralModel::Ar1 { phi: 0.5, sigma2: 0.0 }.validate().is_err());
    assert!(SpectralModel::Farima { d: 0.5, ar: vec![], ma: vec![], sigma2: 1.0 }
        .validate()
        .is_err());
    assert!(SpectralModel::Fgn { hurst: 0.5, variance: 1.0 }.validate().is_err());
    assert!(SpectralModel::Fgn { hurst: 1.0, variance: 1.0 }.validate().is_err());
    // AR polynomial with root inside the unit circle.
    assert!(SpectralModel::Arma { ar: vec![1.2], ma: vec![], sigma2: 1.0 }
        .validate()
        .is_err());
    // Stable AR(2) inside the stationarity triangle.
    assert!(SpectralModel::Arma { ar: vec![0.5, -0.3], ma: vec![], sigma2: 1.0 }
        .validate()
        .is_ok());
    // MA root on the circle.
    assert!(SpectralModel::Arma { ar: vec![], ma: vec![1.0], sigma2: 1.0 }
        .validate()
        .is_err());
}

#[test]
fn grammar_round_trip() {
    let m = SpectralModel::parse("white(2.0)").unwrap();
    assert_eq!(m, SpectralModel::White { variance: 2.0 });

    let m = SpectralModel::parse("ar1(0.5,1.5)").unwrap();
    assert_eq!(m, SpectralModel::Ar1 { phi: 0.5, sigma2: 1.5 });

    let m = SpectralModel::parse("ar1:0.5,1.5").unwrap();
    assert_eq!(m, SpectralModel::Ar1 { phi: 0.5, sigma2: 1.5 });

    let m = SpectralModel::parse("white:1.0").unwrap();
    assert_eq!(m, SpectralModel::White { variance: 1.0 });

    let m = SpectralModel::parse("farima(0,0.3,0;var=1)").unwrap();
    assert_eq!(
        m,
        SpectralModel::Farima { d: 0.3, ar: vec![], ma: vec![], sigma2: 1.0 }
    );

    let m = SpectralModel::parse("farima(1,0.2,1;0.4;0.3;2.0)").unwrap();
    assert_eq!(
        m,
        SpectralModel::Farima { d: 0.2, ar: vec![0.4], ma: vec![0.3], sigma2: 2.0 }
    );

    let m = SpectralModel::parse("arma(2,1;0.5,-0.2;0.3;1.0)").unwrap();
    assert_eq!(
        m,
        SpectralModel::Arma { ar: vec![0.5, -0.2], ma: vec![0.3], sigma2: 1.0 }
    );

    let m = SpectralModel::parse("fgn(0.7,1)").unwrap();
    assert_eq!(m, SpectralModel::Fgn { hurst: 0.7, variance: 1.0 });

    assert!(SpectralModel::parse("garch(1,1)").is_err());
    assert!(SpectralModel::parse("ar1(0.5").is_err());
    assert!(SpectralModel::parse("ar1(nope)").is_err());
    assert!(SpectralModel::parse("arma(1,1;0.5;0.3,0.1;1)").is_err());
}

#[test]
fn simulate_white_noise_variance() {
    let m = SpectralModel::White { variance: 1.0 };
    let x = simulate_gaussian(&m, 4096, 11).unwrap();
    let mean = x.mean();
    let var: f64 =
        x.values().iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / x.len() as f64;
    assert!((0.92..=1.08).contains(&var), "sample variance {var}");
}

#[test]
fn simulate_ar1_lag1_autocorrelation() {
    let m = SpectralModel::Ar1 { phi: 0.5, sigma2: 1.0 };
    let x = simulate_gaussian(&m, 8192, 5).unwrap();
    let v = x.values();
    let mean = x.mean();
    let denom: f64 = v.iter().map(|a| (a - mean) * (a - mean)).sum();
    let num: f64 = v.windows(2).map(|w| (w[0] - mean) * (w[1] - mean)).sum();
    let rho1 = num / denom;
    assert!((0.45..=0.55).contains(&rho1), "lag-1 acf {rho1}");
}

#[test]
fn simulate_deterministic_in_seed() {
    let m = SpectralModel::Farima { d: 0.3, ar: vec![], ma: vec![], sigma2: 1.0 };
    let a = simulate_gaussian(&m, 256, 42).unwrap();
    let b = simulate_gaussian(&m, 256, 42).unwrap();
    assert_eq!(a.values(), b.values());
    let c = simulate_gaussian(&m, 256, 43).unwrap();
    assert_ne!(a.values(), c.values());
}

#[test]
fn simulated_autocovariance_matches_theory() {
    // 200 replicates of n = 2048; empirical r(k), k <= 3, within 3 Monte
    // Carlo standard errors of theory.
    let models = [
        SpectralModel::Ar1 { phi: 0.5, sigma2: 1.0 },
        SpectralModel::Farima { d: 0.3, ar: vec![], ma: vec![], sigma2: 1.0 },
        SpectralModel::Fgn { hurst: 0.75, variance: 1.0 },
    ];
    for model in &models {
        let theory = model.autocovariance(3).unwrap();
        let sampler = CirculantSampler::new(model, 2048).unwrap();
        let reps = 200usize;
        let mut per_rep = vec![[0.0f64; 4]; reps];
        for (i, row) in per_rep.iter_mut().enumerate() {
            let x = sampler.sample(1000 + i as u64);
            let v = x.values();
            let mean = x.mean();
            for (k, slot) in row.iter_mut().enumerate() {
                let mut acc = 0.0;
                for t in 0..v.len() - k {
                    acc += (v[t] - mean) * (v[t + k] - mean);
                }
                *slot = acc / v.len() as f64;
            }
        }
        for k in 0..=3usize {
            let mean_k: f64 = per_rep.iter().map(|r| r[k]).sum::<f64>() / reps as f64;
            let var_k: f64 = per_rep
                .iter()
                .map(|r| (r[k] - mean_k) * (r[k] - mean_k))
                .sum::<f64>()
                / (reps - 1) as f64;
            let se = (var_k / reps as f64).sqrt();
            assert!(
                (mean_k - theory[k]).abs() <= 3.0 * se.max(1e-9),
                "{model:?} lag {k}: mc {mean_k} vs theory {th} (se {se})",
                th = theory[k]
            );
        }
    }
}

#[test]
fn simulated_periodogram_mean_tracks_density() {
    // E I_n(lambda_j) ~= f(lambda_j) in the bulk; averaged over ordinates
    // and replicates the ratio should be close to 1.
    let model = SpectralModel::Ar1 { phi: 0.5, sigma2: 1.0 };
    let sampler = CirculantSampler::new(&model, 512).unwrap();
    let mut ratio_acc = 0.0f64;
    let mut count = 0usize;
    for rep in 0..40u64 {
        let x = sampler.sample(7000 + rep);
        let p = spectral::periodogram(&x);
        for (l, i) in p.frequencies().iter().zip(p.ordinates()) {
            ratio_acc += i / model.density(*l).unwrap();
            count += 1;
        }
    }
    let mean_ratio = ratio_acc / count as f64;
    assert!((mean_ratio - 1.0).abs() < 0.02, "mean I/f = {mean_ratio}");
}

#[test]
fn linear_simulator_contracts() {
    // b = (1): i.i.d. with the requested variance.
    let x = simulate_linear(&[1.0], Innovations::Gaussian { variance: 2.0 }, 16384, 3).unwrap();
    let mean = x.mean();
    let var: f64 =
        x.values().iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / x.len() as f64;
    assert!((var / 2.0 - 1.0).abs() < 0.05);

    // MA(1) with b1 = 0.5: r(0) = 1.25 within 5% at n = 16384.
    let x = simulate_linear(
        &[1.0, 0.5],
        Innovations::Gaussian { variance: 1.0 },
        16384,
        4,
    )
    .unwrap();
    let mean = x.mean();
    let var: f64 =
        x.values().iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / x.len() as f64;
    assert!((var / 1.25 - 1.0).abs() < 0.05, "MA(1) variance {var}");

    // Centered chi-square innovations: mean ~ 0, variance ~ 1, heavy tails.
    let x = simulate_linear(
        &[1.0],
        Innovations::CenteredChiSquare { variance: 1.0 },
        16384,
        5,
    )
    .unwrap();
    assert!(x.mean().abs() < 0.05);
    assert!(Innovations::CenteredChiSquare { variance: 1.0 }.kurtosis() == 12.0);
    assert!(Innovations::Gaussian { variance: 1.0 }.kurtosis() == 0.0);

    // b_0 != 1 rejected.
    assert!(simulate_linear(&[0.9], Innovations::Gaussian { variance: 1.0 }, 64, 1).is_err());

    // Determinism.
    let a = simulate_linear(&[1.0, 0.3], Innovations::Gaussian { variance: 1.0 }, 64, 9).unwrap();
    let b = simulate_linear(&[1.0, 0.3], Innovations::Gaussian { variance: 1.0 }, 64, 9).unwrap();
    assert_eq!(a.values(), b.values());
}

#[test]
fn embedding_size_doubles_until_nonnegative() {
    // All supported models embed successfully at modest sizes.
    for model in [
        SpectralModel::Ar1 { phi: 0.9, sigma2: 1.0 },
        SpectralModel::Farima { d: 0.45, ar: vec![], ma: vec![], sigma2: 1.0 },
        SpectralModel::Fgn { hurst: 0.95, variance: 1.0 },
    ] {
        assert!(CirculantSampler::new(&model, 300).is_ok(), "{model:?}");
    }
}
