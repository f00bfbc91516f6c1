use super::Complex;

/// Generalized binomial coefficient `binom(t+k-1, k) = prod_{i=1..k} (t+i-1)/i`.
///
/// Vanishes exactly when `t` is a nonpositive integer and `k >= 1 - t`,
/// because one factor of the product is an exact zero.
pub fn gen_binom(t: Complex, k: usize) -> Complex {
    let mut acc = Complex::new(1.0, 0.0);
    for i in 1..=k {
        acc *= (t + (i as f64 - 1.0)) / i as f64;
    }
    acc
}

/// Ordinary binomial coefficient `C(n, k)` as a float (0 when `k > n`).
pub fn binomial_real(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc.round()
}

/// Coefficients `c_0..c_{n-1}` with
/// `gen_binom(n, k) = sum_j c_j (k + s)^j` for every `k`, `n >= 1`.
///
/// Obtained by expanding `prod_{i=1}^{n-1} ((k+s) + (i - s)) / (n-1)!`.
pub fn shifted_binomial_poly(s: Complex, n: u32) -> Vec<Complex> {
    assert!(n >= 1, "polynomial form needs n >= 1");
    let mut coeffs = vec![Complex::new(1.0, 0.0)];
    let mut fact = 1.0;
    for i in 1..n {
        let shift = Complex::new(i as f64, 0.0) - s;
        let mut next = vec![Complex::new(0.0, 0.0); coeffs.len() + 1];
        for (j, c) in coeffs.iter().enumerate() {
            next[j + 1] += *c;
            next[j] += *c * shift;
        }
        coeffs = next;
        fact *= i as f64;
    }
    coeffs.iter().map(|c| c / fact).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex {
        Complex::new(re, 0.0)
    }

    #[test]
    fn anchors() {
        for k in 0..20 {
            assert_eq!(gen_binom(c(1.0), k), c(1.0));
        }
        assert_eq!(gen_binom(c(2.0), 3), c(4.0));
        // binom(-n, r) = (-1)^r binom(n+r-1, r)
        assert_eq!(gen_binom(c(-2.0), 1), c(-2.0));
        assert_eq!(gen_binom(c(-2.0), 2), c(1.0));
    }

    #[test]
    fn exact_zeros_for_nonpositive_integers() {
        for t in 0..5i32 {
            let t = -(t as f64);
            for k in (1 - t as i64) as usize..12 {
                assert_eq!(gen_binom(c(t), k), c(0.0), "t={t} k={k}");
            }
        }
    }

    #[test]
    fn binomial_table() {
        assert_eq!(binomial_real(5, 2), 10.0);
        assert_eq!(binomial_real(10, 0), 1.0);
        assert_eq!(binomial_real(3, 4), 0.0);
        assert_eq!(binomial_real(30, 15), 155117520.0);
    }

    #[test]
    fn polynomial_form_reproduces_coefficients() {
        let s = Complex::new(1.37, -0.4);
        for n in 1..6u32 {
            let poly = shifted_binomial_poly(s, n);
            for k in 0..8usize {
                let u = s + k as f64;
                let val: Complex = poly.iter().enumerate().map(|(j, cj)| cj * u.powi(j as i32)).sum();
                let expect = gen_binom(c(n as f64), k);
                assert!((val - expect).norm() < 1e-11 * expect.norm().max(1.0), "n={n} k={k}");
            }
        }
    }
}
