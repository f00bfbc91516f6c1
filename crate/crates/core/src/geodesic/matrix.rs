/// Real 2×2 matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Matrix2 {
    pub const IDENTITY: Matrix2 = Matrix2 {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
    };

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Matrix2 { a, b, c, d }
    }

    pub fn mul(&self, o: &Matrix2) -> Matrix2 {
        Matrix2 {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn inverse(&self) -> Matrix2 {
        let det = self.det();
        Matrix2 {
            a: self.d / det,
            b: -self.b / det,
            c: -self.c / det,
            d: self.a / det,
        }
    }

    pub fn pow(&self, k: u32) -> Matrix2 {
        (0..k).fold(Matrix2::IDENTITY, |acc, _| acc.mul(self))
    }

    /// Rescales by `1/sqrt(det)` when the determinant has drifted from 1 by
    /// more than the rounding error of `ad - bc` itself. For large entries
    /// that error dwarfs any real drift, and rescaling would inject it.
    pub fn renormalized(self) -> Matrix2 {
        let det = self.det();
        let floor = 16.0 * f64::EPSILON * ((self.a * self.d).abs() + (self.b * self.c).abs());
        if (det - 1.0).abs() <= floor.max(1e-14) || !(det > 0.0) {
            return self;
        }
        let f = det.sqrt().recip();
        Matrix2 {
            a: self.a * f,
            b: self.b * f,
            c: self.c * f,
            d: self.d * f,
        }
    }
}
