//! Frozen reference values from `tools/oracle.py` (mpmath, 30 digits).

use selzet::binomial_zeta::{log_gamma2, zeta_t_cont};
use selzet::complex_core::{hurwitz_zeta, hurwitz_zeta_zderiv, log_gamma, Complex, SeriesControl};

const fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

fn rel(a: Complex, b: Complex) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

// (z, s, t, ζ_t(z, s))
const ZETA_T: [(Complex, Complex, Complex, Complex); 5] = [
    (c(3.5, 0.0), c(1.3, 0.0), c(1.7, 0.0), c(0.5781450868028299, 1.3581193805176363e-33)),
    (c(-1.3, 0.0), c(0.8, 0.0), c(0.5, 0.0), c(0.2945357331824933, -4.069042897445707e-32)),
    (c(0.3, 0.4), c(1.1, -0.6), c(2.4, 0.0), c(-0.09761137553520854, 0.12448697185267894)),
    (c(-2.2, 0.0), c(2.0, 0.0), c(-0.6, 0.0), c(-3.9906908002118486, -1.680342647740096e-31)),
    (c(2.0, 1.0), c(0.5, 0.0), c(0.3, 0.2), c(3.2977828894443477, 2.5547073133107774)),
];

// (s, t, log Γ(s, t))
const LOG_GAMMA2: [(Complex, Complex, Complex); 5] = [
    (c(1.3, 0.0), c(0.7, 0.0), c(-4.149260484168956, -1.4676758724676928e-74)),
    (c(0.8, 0.0), c(2.5, 0.0), c(-0.1589609190289501, -4.098484043396458e-74)),
    (c(2.0, 0.5), c(1.5, 0.0), c(3.013653483186115, 2.011475333311652)),
    (c(1.5, 0.0), c(-0.5, 0.0), c(1.3467299627022402, -3.888804503405861e-76)),
    (c(0.6, 0.0), c(0.3, 0.4), c(-1.2731611626963788, 1.539818415857364)),
];

// (z, a, ζ(z, a))
const HURWITZ: [(Complex, Complex, Complex); 25] = [
    (c(-7.5, 0.0), c(0.5, 0.0), c(-0.0032509805097115266, 0.0)),
    (c(-7.5, 0.0), c(1.4, -0.5), c(-0.041098122916473405, 0.06527549255095953)),
    (c(-7.5, 0.0), c(2.3, 0.4), c(6.2286766479673155, -7.913848213456712)),
    (c(-7.5, 0.0), c(0.1, 0.0), c(0.004564702098217539, 0.0)),
    (c(-7.5, 0.0), c(3.0, 7.0), c(1566229.352515288, 2677442.815214057)),
    (c(-2.2, 1.0), c(0.5, 0.0), c(-0.021783781378620522, 0.010995234096756337)),
    (c(-2.2, 1.0), c(1.4, -0.5), c(-0.011315792922792008, 0.13980474775765606)),
    (c(-2.2, 1.0), c(2.3, 0.4), c(-2.2419022289063095, -1.1851444159807538)),
    (c(-2.2, 1.0), c(0.1, 0.0), c(0.013663729964893638, -0.0271985993016878)),
    (c(-2.2, 1.0), c(3.0, 7.0), c(382.6485489567336, -498.4103605813788)),
    (c(0.3, -4.0), c(0.5, 0.0), c(-1.2847199854659186, -0.02423489059684657)),
    (c(0.3, -4.0), c(1.4, -0.5), c(-0.870773599285465, 2.2828593324530955)),
    (c(0.3, -4.0), c(2.3, 0.4), c(-0.08299097733866315, -0.17185954975247447)),
    (c(0.3, -4.0), c(0.1, 0.0), c(-1.4365244537703676, -0.27507511435445364)),
    (c(0.3, -4.0), c(3.0, 7.0), c(-0.002677987884032578, -0.006800871036138629)),
    (c(2.5, 0.3), c(0.5, 0.0), c(6.099241367545732, 1.0335390991002475)),
    (c(2.5, 0.3), c(1.4, -0.5), c(0.4612174473685188, 0.21658505581692364)),
    (c(2.5, 0.3), c(2.3, 0.4), c(0.2034357701944795, -0.17305708381740284)),
    (c(2.5, 0.3), c(0.1, 0.0), c(244.80809629606577, 201.35078889747192)),
    (c(2.5, 0.3), c(3.0, 7.0), c(-0.040907517894267956, -0.02251957722446029)),
    (c(9.0, 0.0), c(0.5, 0.0), c(512.026288734128, 0.0)),
    (c(9.0, 0.0), c(1.4, -0.5), c(-0.028238294643476772, 0.001849298504217256)),
    (c(9.0, 0.0), c(2.3, 0.4), c(2.1234496376703467e-05, -0.0005049198068503543)),
    (c(9.0, 0.0), c(0.1, 0.0), c(1000000000.4253975, 0.0)),
    (c(9.0, 0.0), c(3.0, 7.0), c(-1.309076125908858e-08, 4.946101507100857e-09)),
];

#[test]
fn binomial_zeta_non_integer_t() {
    let ctrl = SeriesControl::default();
    for (z, s, t, expect) in ZETA_T {
        let v = zeta_t_cont(z, s, t, &ctrl).unwrap();
        assert!(rel(v, expect) < 1e-10, "z={z} s={s} t={t}: {v} vs {expect}");
    }
}

#[test]
fn two_variable_gamma_non_integer_t() {
    let ctrl = SeriesControl::default();
    for (s, t, expect) in LOG_GAMMA2 {
        let v = log_gamma2(s, t, &ctrl).unwrap();
        assert!((v - expect).norm() < 1e-10 * expect.norm().max(1.0), "s={s} t={t}: {v} vs {expect}");
    }
}

#[test]
fn hurwitz_grid() {
    for (z, a, expect) in HURWITZ {
        let v = hurwitz_zeta(z, a).unwrap();
        assert!(rel(v, expect) < 1e-10, "z={z} a={a}: {v} vs {expect}");
    }
}

#[test]
fn lerch_derivative_anchors() {
    let half_ln_2pi = 0.5 * (2.0 * std::f64::consts::PI).ln();
    let d1 = hurwitz_zeta_zderiv(c(0.0, 0.0), c(1.0, 0.0)).unwrap();
    let d2 = hurwitz_zeta_zderiv(c(0.0, 0.0), c(2.0, 0.0)).unwrap();
    let dh = hurwitz_zeta_zderiv(c(0.0, 0.0), c(0.5, 0.0)).unwrap();
    assert!((d1 + half_ln_2pi).norm() < 1e-13);
    assert!((d2 + half_ln_2pi).norm() < 1e-13);
    let expect = log_gamma(c(0.5, 0.0)).unwrap() - half_ln_2pi;
    assert!((dh - expect).norm() < 1e-13);
}
