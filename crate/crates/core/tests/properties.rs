use proptest::prelude::*;

use selzet::binomial_zeta::{log_gamma2, zeta_t_cont};
use selzet::completion::{fe_deriv_residual, lemfe_residual, p_poly_from_shift, p_poly_lift, CompletionPolynomial};
use selzet::complex_core::{gen_binom, hurwitz_zeta};
use selzet::geodesic::{read_eigen, read_spectrum, write_eigen, write_spectrum, EigenSpectrum, LengthSpectrum};
use selzet::products::{ladder_residual, log_z2, TruncationPolicy};
use selzet::spectral::{fhat, log_det_laplacian};
use selzet::{Complex, SeriesControl};

fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

fn ctrl() -> SeriesControl {
    SeriesControl::default()
}

fn spectrum() -> impl Strategy<Value = LengthSpectrum> {
    prop::collection::vec((1.5f64..80.0, 1u64..4), 1..5)
        .prop_map(|prims| LengthSpectrum::from_primitives(&prims, 2, f64::INFINITY).unwrap())
}

// the zero mode is simple, so at most one 0
fn eigenvalues() -> impl Strategy<Value = Vec<f64>> {
    (prop::collection::vec(0.01f64..6.0, 0..=4), any::<bool>()).prop_map(|(mut v, zero)| {
        if zero {
            v.push(0.0);
        }
        v
    })
}

fn near_integer(b: Complex) -> bool {
    b.im.abs() < 0.1 && (b.re - b.re.round()).abs() < 0.1
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gamma2_at_t_zero_is_reciprocal(re in 0.1f64..5.0, im in -3.0f64..3.0) {
        let s = c(re, im);
        let v = log_gamma2(s, c(0.0, 0.0), &ctrl()).unwrap().exp();
        prop_assert!((v * s - 1.0).norm() < 1e-12);
    }

    #[test]
    fn pascal_rule(re in -5.0f64..5.0, im in -1.0f64..1.0, k in 1usize..15) {
        let t = c(re, im);
        let lhs = gen_binom(t + 1.0, k) - gen_binom(t + 1.0, k - 1);
        let scale = gen_binom(t + 1.0, k).norm().max(gen_binom(t + 1.0, k - 1).norm()).max(1e-300);
        prop_assert!((lhs - gen_binom(t, k)).norm() <= 1e-13 * scale);
    }

    #[test]
    fn continued_t_one_is_hurwitz(z in -2.5f64..4.0, zi in -1.0f64..1.0, s in 0.2f64..3.0) {
        let z = c(z, zi);
        prop_assume!((z - 1.0).norm() > 0.1);
        let a = zeta_t_cont(z, c(s, 0.0), c(1.0, 0.0), &ctrl()).unwrap();
        let b = hurwitz_zeta(z, c(s, 0.0)).unwrap();
        prop_assert!((a - b).norm() <= 1e-10 * b.norm().max(1.0));
    }

    #[test]
    fn fhat_is_even(sr in 0.8f64..3.0, si in -1.0f64..1.0, t in -1.0f64..1.7, y in -3.0f64..3.0) {
        let (s, t, y) = (c(sr, si), c(t, 0.0), c(y, 0.0));
        prop_assert!((fhat(s, t, y).unwrap() - fhat(s, t, -y).unwrap()).norm() <= 1e-13 * fhat(s, t, y).unwrap().norm().max(1.0));
    }

    #[test]
    fn reflection_lemma(n in -2i64..=5, sr in -0.5f64..2.5, si in -1.0f64..1.0, y in 0.0f64..1.5) {
        let (s, y) = (c(sr, si), c(y, 0.0));
        let nn = c(n as f64, 0.0);
        let i = c(0.0, 1.0);
        let args = [s + i * y - 0.5, s - i * y - 0.5, nn - s + i * y - 0.5, nn - s - i * y - 0.5];
        prop_assume!(args.iter().all(|b| !near_integer(*b)));
        prop_assert!(lemfe_residual(n, s, y).unwrap() <= 1e-10);
    }

    #[test]
    fn derivative_functional_equation(n in -1i64..=1, m in 2u32..=3, sr in 0.2f64..1.8, si in 0.2f64..1.0, values in eigenvalues()) {
        let s = c(sr, si);
        let eig = EigenSpectrum::from_values(&values, 2).unwrap();
        let nn = c(n as f64, 0.0);
        let i = c(0.0, 1.0);
        for (r, _) in eig.spectral_params() {
            for x in [s, nn - s] {
                for b in [x + i * r - 0.5, x - i * r - 0.5] {
                    prop_assume!(!(near_integer(b) && b.re < 0.5));
                }
            }
        }
        prop_assert!(fe_deriv_residual(n, s, m, &eig, &ctrl()).unwrap() <= 1e-9);
    }

    #[test]
    fn product_ladder(spec in spectrum(), sr in 1.05f64..3.0, si in -1.0f64..1.0, t in -1.5f64..3.0) {
        let (res, _) = ladder_residual(c(sr, si), c(t, 0.0), &spec, &TruncationPolicy::default()).unwrap();
        prop_assert!(res <= 1e-12);
    }

    #[test]
    fn multiplicities_are_linear(spec in spectrum(), sr in 1.05f64..3.0, t in -1.0f64..2.5) {
        // a fixed tower, whatever its tail, is the same for both spectra
        let pol = TruncationPolicy { n_cutoff: Some(30), tail_tolerance: 1.0, ..Default::default() };
        let s = c(sr, 0.3);
        let a = log_z2(s, c(t, 0.0), &spec, &pol).unwrap().log_value;
        let b = log_z2(s, c(t, 0.0), &spec.scaled(3), &pol).unwrap().log_value;
        prop_assert!((b - 3.0 * a).norm() <= 1e-14 * a.norm().max(1.0));
    }

    #[test]
    fn laplacian_determinant_symmetric(values in eigenvalues(), sr in -1.0f64..2.0, si in -2.0f64..2.0) {
        let eig = EigenSpectrum::from_values(&values, 2).unwrap();
        let s = c(sr, si);
        let a = log_det_laplacian(s, &eig, true);
        let b = log_det_laplacian(1.0 - s, &eig, true);
        match (a, b) {
            (Ok(a), Ok(b)) => prop_assert!((a - b).norm() <= 1e-12 * a.norm().max(1.0)),
            (Err(_), Err(_)) => {}
            _ => prop_assert!(false, "only one side errored"),
        }
    }

    #[test]
    fn shift_and_lift_are_inverse(coeffs in prop::collection::vec(-3.0f64..3.0, 0..5), p0 in -2.0f64..2.0, x in -2.0f64..2.0) {
        let p = CompletionPolynomial::new(c(0.5, 0.0), coeffs);
        let q = p_poly_lift(&p, p0);
        let back = p_poly_from_shift(&q);
        let s = c(x, 0.0);
        prop_assert!((back.eval(s) - p.eval(s)).norm() <= 1e-11 * (1.0 + p.eval(s).norm()));
        prop_assert!((q.eval(s) - q.eval(s + 1.0) - p.eval(s)).norm() <= 1e-10 * (1.0 + q.eval(s).norm()));
    }

    #[test]
    fn spectrum_files_round_trip(spec in spectrum(), values in eigenvalues()) {
        let mut buf = Vec::new();
        write_spectrum(&spec, &mut buf).unwrap();
        prop_assert_eq!(read_spectrum(buf.as_slice()).unwrap(), spec);
        let eig = EigenSpectrum::from_values(&values, 3).unwrap();
        let mut buf = Vec::new();
        write_eigen(&eig, &mut buf).unwrap();
        prop_assert_eq!(read_eigen(buf.as_slice()).unwrap(), eig);
    }
}
