use crate::complex_core::{binomial_real, Complex};

/// `P(s) = Σ_l p_l s^l` attached to a parameter value `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompletionPolynomial {
    pub t_label: Complex,
    /// `p_0, p_1, ...`; trailing zeros are trimmed.
    pub coefficients: Vec<f64>,
}

impl CompletionPolynomial {
    pub fn new(t_label: Complex, coefficients: Vec<f64>) -> Self {
        let mut p = CompletionPolynomial {
            t_label,
            coefficients,
        };
        p.trim();
        p
    }

    pub fn zero(t_label: Complex) -> Self {
        CompletionPolynomial::new(t_label, Vec::new())
    }

    fn trim(&mut self) {
        while self.coefficients.last() == Some(&0.0) {
            self.coefficients.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn eval(&self, s: Complex) -> Complex {
        self.coefficients
            .iter()
            .rev()
            .fold(Complex::new(0.0, 0.0), |acc, &p| acc * s + p)
    }
}

/// Degree bound `max(2, floor(Re t) + 1)` used by the fitter; `None` when
/// `Re t < -1`, where the completion polynomial vanishes.
pub fn degree_bound(t: Complex) -> Option<usize> {
    if t.re < -1.0 {
        return None;
    }
    Some(((t.re.floor() + 1.0).max(2.0)) as usize)
}

/// `P(s, t) = P(s, t+1) - P(s+1, t+1)` from the polynomial at `t + 1`:
/// `p_l = -Σ_{m>l} C(m, l) p_m^{(t+1)}`.
pub fn p_poly_from_shift(next: &CompletionPolynomial) -> CompletionPolynomial {
    let c = &next.coefficients;
    let out = (0..c.len().saturating_sub(1))
        .map(|l| -(l + 1..c.len()).map(|m| binomial_real(m as u64, l as u64) * c[m]).sum::<f64>())
        .collect();
    CompletionPolynomial::new(next.t_label - 1.0, out)
}

/// The polynomial at `t + 1` whose shift difference is `p`, with constant
/// term `p0_next` (the difference equation leaves it free). Solved
/// top-down from `p_l = -Σ_{m>l} C(m,l) q_m`.
pub fn p_poly_lift(p: &CompletionPolynomial, p0_next: f64) -> CompletionPolynomial {
    let d = p.coefficients.len();
    let mut q = vec![0.0; d + 1];
    q[0] = p0_next;
    for l in (0..d).rev() {
        let known: f64 = (l + 2..=d).map(|m| binomial_real(m as u64, l as u64) * q[m]).sum();
        q[l + 1] = -(p.coefficients[l] + known) / (l as f64 + 1.0);
    }
    CompletionPolynomial::new(p.t_label + 1.0, q)
}

/// Predictions of `p_{l+1}^{(t+1)}`, `l = 0..=d`, from the coefficient
/// recursion as printed, read two ways: with `p_l^{(t)}` in the summand
/// exactly as displayed, and with `p_m^{(t)}` (the index the sum runs over).
pub fn recursion_predictions(p: &CompletionPolynomial) -> (Vec<f64>, Vec<f64>) {
    let c = &p.coefficients;
    let d = c.len();
    let sign = |k: usize| if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let literal = (0..d)
        .map(|l| (l..d).map(|m| sign(l + m + 1) * binomial_real(m as u64, l as u64) * c[l]).sum())
        .collect();
    let indexed = (0..d)
        .map(|l| (l..d).map(|m| sign(l + m + 1) * binomial_real(m as u64, l as u64) * c[m]).sum())
        .collect();
    (literal, indexed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(x: f64) -> Complex {
        Complex::new(x, 0.0)
    }

    #[test]
    fn shift_examples() {
        let sq = CompletionPolynomial::new(t(2.0), vec![0.0, 0.0, 1.0]);
        assert_eq!(p_poly_from_shift(&sq).coefficients, vec![-1.0, -2.0]);
        assert!(p_poly_from_shift(&CompletionPolynomial::zero(t(1.0))).is_zero());
        let cubic = CompletionPolynomial::new(t(3.0), vec![0.5, -1.0, 2.0, 3.0]);
        assert_eq!(p_poly_from_shift(&cubic).degree(), Some(2));
    }

    #[test]
    fn lift_inverts_shift() {
        let p = CompletionPolynomial::new(t(0.5), vec![0.3, -1.2, 0.7]);
        let q = p_poly_lift(&p, 2.5);
        assert_eq!(q.coefficients[0], 2.5);
        let back = p_poly_from_shift(&q);
        for (a, b) in back.coefficients.iter().zip(&p.coefficients) {
            assert!((a - b).abs() < 1e-14);
        }
        // P(s,t+1) - P(s+1,t+1) = P(s,t) pointwise
        let s = Complex::new(0.4, 1.1);
        assert!((q.eval(s) - q.eval(s + 1.0) - p.eval(s)).norm() < 1e-13);
    }

    #[test]
    fn degree_bounds() {
        assert_eq!(degree_bound(t(-1.5)), None);
        assert_eq!(degree_bound(t(-1.0)), Some(2));
        assert_eq!(degree_bound(t(1.0)), Some(2));
        assert_eq!(degree_bound(t(2.5)), Some(3));
    }

    #[test]
    fn recursion_readings_differ_from_exact_lift() {
        // P = p0 + p1 s lifts to -p1/2 s² + (p1/2 - p0) s + const
        let p = CompletionPolynomial::new(t(0.0), vec![1.0, 2.0]);
        let exact = p_poly_lift(&p, 0.0);
        assert_eq!(exact.coefficients, vec![0.0, 0.0, -1.0]);
        let (literal, indexed) = recursion_predictions(&p);
        // indexed reading for l = 0: -p0 + p1 = 1, exact is p1/2 - p0 = 0
        assert_eq!(indexed[0], 1.0);
        assert_eq!(literal[0], 0.0);
        assert_eq!(exact.coefficients[1], 0.0);
    }
}
