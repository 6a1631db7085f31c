mod common;

use common::{fclt_oracle, karlin_cov_oracle, poisson_at_least, regular_variation_integral};
use urnlab::distributions::gamma;
use urnlab::theory::{
    fclt_covariance, karlin_covariance, karlin_variance_coefficient, simon_limit_fraction, simon_limit_tail,
    yule_simon_pmf, yule_simon_tail,
};

const THETAS: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];

#[test]
fn quadrature_reproduces_gamma_integral() {
    // θ ∫ (e^{-y} - e^{-2y}) y^{-θ-1} dy = Γ(1-θ)(2^θ - 1)
    for theta in THETAS {
        let q = regular_variation_integral(theta, 80.0, |y| -(-y).exp() * (-y).exp_m1());
        let exact = gamma(1.0 - theta).unwrap() * (theta.exp2() - 1.0);
        assert!((q - exact).abs() < 1e-10 * exact, "{theta}: {q} vs {exact}");
    }
}

#[test]
fn karlin_covariance_matches_quadrature() {
    for theta in THETAS {
        for ri in 1..=4 {
            for rj in 1..=4 {
                let got = karlin_covariance(theta, ri, rj).unwrap();
                let want = karlin_cov_oracle(theta, ri, rj);
                assert!((got - want).abs() < 1e-9 * want.abs().max(1e-3), "{theta} ({ri},{rj}): {got} vs {want}");
            }
        }
    }
}

#[test]
fn fclt_covariance_matches_quadrature() {
    let times = [(1.0, 1.0), (0.3, 1.0), (1.0, 0.3), (0.5, 0.7), (0.05, 0.9), (0.6, 0.6)];
    for theta in [0.2, 0.5, 0.8] {
        for i in 1..=3 {
            for j in 1..=3 {
                for &(tau, t) in &times {
                    let got = fclt_covariance(theta, i, j, tau, t).unwrap();
                    let want = fclt_oracle(theta, i, j, tau, t);
                    assert!(
                        (got - want).abs() < 1e-8 * want.abs().max(1e-2),
                        "θ={theta} i={i} j={j} τ={tau} t={t}: {got} vs {want}"
                    );
                }
            }
        }
    }
}

#[test]
fn fclt_symmetry_under_swapping_branches() {
    for theta in THETAS {
        for (i, j) in [(1, 2), (2, 1), (1, 3), (3, 2)] {
            for (tau, t) in [(0.2, 0.9), (0.5, 1.0), (1.0, 0.1)] {
                let a = fclt_covariance(theta, i, j, tau, t).unwrap();
                let b = fclt_covariance(theta, j, i, t, tau).unwrap();
                assert!((a - b).abs() < 1e-12 * a.abs().max(1.0));
            }
        }
    }
}

#[test]
fn fclt_at_unit_time_is_variance_coefficient() {
    for theta in THETAS {
        let c = fclt_covariance(theta, 1, 1, 1.0, 1.0).unwrap();
        let k = karlin_variance_coefficient(theta).unwrap();
        assert!((c - k).abs() < 1e-12 * k);
    }
}

#[test]
fn yule_simon_law_sums_to_one() {
    for p in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let head: f64 = (1..=2000).map(|i| yule_simon_pmf(p, i).unwrap()).sum();
        let total = head + yule_simon_tail(p, 2000).unwrap();
        assert!((total - 1.0).abs() < 1e-12, "{p}: {total}");
        let fractions: f64 = (1..=2000).map(|j| simon_limit_fraction(p, j).unwrap()).sum();
        let all = fractions + simon_limit_tail(p, 2000).unwrap();
        assert!((all - p).abs() < 1e-12, "{p}: {all}");
    }
}

#[test]
fn yule_simon_tail_is_a_survival_function() {
    // Independent oracle: the tail bound is a sum of many pmf terms.
    let p = 0.4;
    let direct: f64 = (31..=2_000_000).map(|i| yule_simon_pmf(p, i).unwrap()).sum();
    // Remaining mass beyond 2e6 decays like i^{-ρ}, ρ = 5/3: about 2e6^{-2/3}·const.
    let rest = yule_simon_tail(p, 2_000_000).unwrap();
    assert!(rest < 1e-3);
    let got = yule_simon_tail(p, 30).unwrap();
    assert!((got - direct - rest).abs() < 1e-10);
}

#[test]
fn poisson_oracle_sanity() {
    assert!((poisson_at_least(2.0, 1) - (1.0 - (-2.0f64).exp())).abs() < 1e-15);
    assert!((poisson_at_least(0.01, 2) - (1.0 - (-0.01f64).exp() * 1.01)).abs() < 1e-15);
}
