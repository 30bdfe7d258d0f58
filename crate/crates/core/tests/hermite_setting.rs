use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use riesz_core::hermite::{
    apply_delta, apply_delta_adjoint, apply_one_dim_riesz_hermite, apply_ou_multiplier,
    apply_riesz_hermite, apply_riesz_hermite_factored, joint_factor_hermite, quad_lp_norm,
    riesz_hermite_l2_norm,
};
use riesz_core::{CoeffTensor, HermiteTruncation, JointMultiplier, QuadratureRule, C64};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Adaptive Simpson quadrature, independent of the Gauss–Hermite machinery.
fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b))
    }
    fn recurse(f: &dyn Fn(f64) -> f64, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (left, right) = (simpson(f, a, m), simpson(f, m, b));
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            return left + right + (left + right - whole) / 15.0;
        }
        recurse(f, a, m, left, tol / 2.0, depth - 1) + recurse(f, m, b, right, tol / 2.0, depth - 1)
    }
    // split first so a lucky coarse estimate cannot end the recursion early
    let pieces = 64;
    let h = (b - a) / pieces as f64;
    (0..pieces)
        .map(|i| {
            let (lo, hi) = (a + i as f64 * h, a + (i + 1) as f64 * h);
            recurse(f, lo, hi, simpson(f, lo, hi), tol / pieces as f64, 40)
        })
        .sum()
}

#[test]
fn quadrature_rule_invariants() {
    for n in [1, 2, 5, 16, 33, 64, 128] {
        let rule = QuadratureRule::gauss_hermite(n).unwrap();
        assert!(rule.weights().iter().all(|&w| w > 0.0));
        let total: f64 = rule.weights().iter().sum();
        assert!((total - PI.sqrt()).abs() < 1e-12, "n={n}: {total}");
        for i in 0..n {
            assert!((rule.nodes()[i] + rule.nodes()[n - 1 - i]).abs() < 1e-14);
        }
        // ∫ x^{2m} e^{-x²} = Γ(m + 1/2) for 2m ≤ 2n − 1
        for (m, exact) in [
            (0, PI.sqrt()),
            (1, PI.sqrt() / 2.0),
            (2, 3.0 * PI.sqrt() / 4.0),
        ] {
            if 2 * m < 2 * n {
                let v = rule.integrate(|x| x.powi(2 * m as i32));
                assert!(
                    (v - exact).abs() < 1e-12 * exact.max(1.0),
                    "n={n} m={m}: {v}"
                );
            }
        }
    }
}

#[test]
fn quadrature_against_simpson_oracle() {
    let rule = QuadratureRule::gauss_hermite(40).unwrap();
    let g = |x: f64| (2.0 * x).cos() * (x / 3.0).exp();
    let gh = rule.integrate(g);
    let oracle = adaptive_simpson(&|x| g(x) * (-x * x).exp(), -12.0, 12.0, 1e-13);
    assert!((gh - oracle).abs() < 1e-10, "{gh} vs {oracle}");
    // ∫ cos(2x) e^{-x²} = √π e^{-1}
    let exact = PI.sqrt() * (-1f64).exp();
    assert!((rule.integrate(|x| (2.0 * x).cos()) - exact).abs() < 1e-13);
}

#[test]
fn quad_norm_of_basis_vectors() {
    let t = HermiteTruncation::new(2, 8).unwrap();
    let rule = QuadratureRule::gauss_hermite(32).unwrap();
    let b0 = CoeffTensor::basis(t, &[0, 0]).unwrap();
    assert!((quad_lp_norm(&b0, 2.0, &rule).unwrap() - 1.0).abs() < 1e-12);
    for k in [[1, 0], [0, 3], [5, 2], [8, 8], [7, 1]] {
        let b = CoeffTensor::basis(t, &k).unwrap();
        assert!(
            (quad_lp_norm(&b, 2.0, &rule).unwrap() - 1.0).abs() < 1e-10,
            "{k:?}"
        );
    }
}

#[test]
fn quad_norm_parseval_on_random_tensors() {
    let mut r = rng(1);
    for (d, n, nodes) in [(1, 12, 24), (2, 6, 12), (3, 4, 8)] {
        let t = HermiteTruncation::new(d, n).unwrap();
        let rule = QuadratureRule::gauss_hermite(nodes).unwrap();
        let coeffs = CoeffTensor::random(t, &mut r);
        let q = quad_lp_norm(&coeffs, 2.0, &rule).unwrap();
        assert!((q - coeffs.norm2()).abs() <= 1e-10 * coeffs.norm2());
    }
}

#[test]
fn quad_l4_norm_matches_integration_oracle() {
    let t = HermiteTruncation::new(1, 1).unwrap();
    let b1 = CoeffTensor::basis(t, &[1]).unwrap();
    let rule = QuadratureRule::gauss_hermite(8).unwrap();
    let q = quad_lp_norm(&b1, 4.0, &rule).unwrap();
    // H̃₁(x) = √2 x π^{-1/4}
    let h1 = |x: f64| 2f64.sqrt() * x * PI.powf(-0.25);
    let oracle =
        adaptive_simpson(&|x| h1(x).powi(4) * (-x * x).exp(), -12.0, 12.0, 1e-14).powf(0.25);
    assert!((q - oracle).abs() < 1e-10, "{q} vs {oracle}");
    assert!((q - (3.0 / PI.sqrt()).powf(0.25)).abs() < 1e-12);
}

#[test]
fn quad_norm_preconditions() {
    let t = HermiteTruncation::new(1, 6).unwrap();
    let b = CoeffTensor::basis(t, &[2]).unwrap();
    let rule = QuadratureRule::gauss_hermite(11).unwrap();
    assert!(quad_lp_norm(&b, 2.0, &rule).is_err());
    let rule = QuadratureRule::gauss_hermite(24).unwrap();
    assert!(quad_lp_norm(&b, 0.9, &rule).is_err());
    assert!(quad_lp_norm(&b, f64::INFINITY, &rule).unwrap() > 0.0);
}

#[test]
fn ou_multiplier_examples() {
    let t = HermiteTruncation::new(2, 4).unwrap();
    let x = CoeffTensor::random(t, &mut rng(2));
    let id = JointMultiplier::constant(c(1.0, 0.0));
    assert_eq!(apply_ou_multiplier(&id, &x), x);
    // default zero value 0 removes the constant term only
    let proj = apply_ou_multiplier(&JointMultiplier::new(|_| c(1.0, 0.0)), &x);
    assert_eq!(proj.get(&[0, 0]), c(0.0, 0.0));
    assert_eq!(proj.get(&[1, 0]), x.get(&[1, 0]));

    let t_heat = 0.3;
    let h = apply_ou_multiplier(&JointMultiplier::heat(t_heat), &x);
    for k in [[0, 0], [1, 0], [2, 3], [4, 4]] {
        let factor = (-2.0 * t_heat * (k[0] + k[1]) as f64).exp();
        assert!((h.get(&k) - x.get(&k) * factor).norm() < 1e-15);
    }

    let m = JointMultiplier::axis_ratio(0, 2, 0.5, 0.0).unwrap();
    let b = CoeffTensor::basis(t, &[1, 1]).unwrap();
    let out = apply_ou_multiplier(&m, &b);
    assert!((out.get(&[1, 1]) - c(0.5f64.sqrt(), 0.0)).norm() < 1e-15);
}

#[test]
fn delta_adjoint_pairing() {
    let mut r = rng(3);
    let t = HermiteTruncation::new(3, 5).unwrap();
    for _ in 0..10 {
        let a = CoeffTensor::random(t, &mut r);
        let b = CoeffTensor::random(t, &mut r);
        for axis in 0..3 {
            let lhs = apply_delta(&a, axis).unwrap().inner(&b);
            let rhs = a.inner(&apply_delta_adjoint(&b, axis).unwrap());
            assert!((lhs - rhs).norm() <= 1e-13 * lhs.norm().max(1.0));
        }
    }
}

#[test]
fn delta_star_delta_is_ou_operator() {
    let mut r = rng(4);
    for (d, n) in [(1, 10), (2, 6), (3, 4)] {
        let t = HermiteTruncation::new(d, n).unwrap();
        let x = CoeffTensor::random(t, &mut r);
        for axis in 0..d {
            let dd = apply_delta_adjoint(&apply_delta(&x, axis).unwrap(), axis).unwrap();
            let mut k = vec![0; d];
            for i in 0..t.size() {
                let mut rem = i;
                for s in (0..d).rev() {
                    k[s] = rem % (n + 1);
                    rem /= n + 1;
                }
                let expected = x.coeffs()[i] * (2 * k[axis]) as f64;
                assert!((dd.coeffs()[i] - expected).norm() <= 1e-13 * expected.norm().max(1.0));
            }
        }
    }
}

#[test]
fn riesz_hermite_examples() {
    let t = HermiteTruncation::new(2, 3).unwrap();
    let out = apply_riesz_hermite(&CoeffTensor::basis(t, &[1, 0]).unwrap(), 0).unwrap();
    assert!((out.get(&[0, 0]) - c(1.0, 0.0)).norm() < 1e-14);
    assert!((out.norm2() - 1.0).abs() < 1e-14);
    let out = apply_riesz_hermite(&CoeffTensor::basis(t, &[1, 1]).unwrap(), 0).unwrap();
    assert!((out.get(&[0, 1]) - c(0.5f64.sqrt(), 0.0)).norm() < 1e-14);
    assert!((out.norm2() - 0.5f64.sqrt()).abs() < 1e-14);
    let out = apply_riesz_hermite(&CoeffTensor::basis(t, &[0, 0]).unwrap(), 1).unwrap();
    assert_eq!(out.norm2(), 0.0);
}

#[test]
fn riesz_hermite_factorization() {
    let mut r = rng(5);
    for (d, n) in [(1, 12), (2, 8), (3, 5), (4, 3)] {
        let t = HermiteTruncation::new(d, n).unwrap();
        let x = CoeffTensor::random(t, &mut r);
        for axis in 0..d {
            let direct = apply_riesz_hermite(&x, axis).unwrap();
            let factored = apply_riesz_hermite_factored(&x, axis).unwrap();
            assert!(direct.distance2(&factored) <= 1e-13 * x.norm2());
        }
    }
}

#[test]
fn one_dim_riesz_hermite_is_a_unit_shift() {
    let t = HermiteTruncation::new(2, 4).unwrap();
    let x = CoeffTensor::random(t, &mut rng(6));
    let out = apply_one_dim_riesz_hermite(&x, 1).unwrap();
    assert!((out.get(&[2, 1]) - x.get(&[2, 2])).norm() < 1e-14);
    assert_eq!(out.get(&[3, 4]), c(0.0, 0.0));
}

#[test]
fn epsilon_regularized_factor_converges() {
    let t = HermiteTruncation::new(3, 4).unwrap();
    let x = CoeffTensor::random(t, &mut rng(7));
    for axis in 0..3 {
        let limit = joint_factor_hermite(&x, axis, 0.5, 0.0).unwrap();
        let mut prev = f64::INFINITY;
        for eps in [1.0, 0.1, 0.01, 0.001] {
            let dev = joint_factor_hermite(&x, axis, 0.5, eps)
                .unwrap()
                .distance2(&limit);
            assert!(dev < prev, "eps={eps}: {dev} !< {prev}");
            prev = dev;
        }
        assert!(prev < 1e-3 * x.norm2());
    }
}

#[test]
fn coefficient_space_riesz_norm_is_one() {
    for d in 1..=3 {
        for n in [1, 2, 5, 16, 32] {
            let t = HermiteTruncation::new(d, n).unwrap();
            for axis in 0..d {
                assert_eq!(riesz_hermite_l2_norm::<f64>(t, axis).unwrap(), 1.0);
            }
        }
    }
    // cross-check the weight formula against the operator on basis vectors
    let t = HermiteTruncation::new(2, 5).unwrap();
    let mut best: f64 = 0.0;
    for k0 in 0..=5 {
        for k1 in 0..=5 {
            let b = CoeffTensor::basis(t, &[k0, k1]).unwrap();
            best = best.max(apply_riesz_hermite(&b, 0).unwrap().norm2());
        }
    }
    assert!((best - 1.0).abs() < 1e-15);
}

#[test]
fn riesz_never_raises_degree() {
    let t = HermiteTruncation::new(2, 5).unwrap();
    let b = CoeffTensor::basis(t, &[3, 4]).unwrap();
    let mut x = b;
    for step in 1..=3 {
        x = apply_riesz_hermite(&x, 0).unwrap();
        let expected_k = [3 - step, 4];
        assert!((x.norm2() - x.get(&expected_k).norm()).abs() < 1e-15);
    }
    assert_eq!(apply_riesz_hermite(&x, 0).unwrap().norm2(), 0.0);
}
