use std::ops::Mul;

/// Real 2×2 matrix `[[a, b], [c, d]]`.
///
/// As a transfer matrix its columns are `(φ₁, φ̇₁)` and `(φ₂, φ̇₂)`, the
/// solutions started from identity initial data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

pub type Vec2 = [f64; 2];

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2::new(1.0, 0.0, 0.0, 1.0);

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { a, b, c, d }
    }

    pub fn diag(x: f64, y: f64) -> Self {
        Self::new(x, 0.0, 0.0, y)
    }

    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self::new(c, -s, s, c)
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.a, self.c, self.b, self.d)
    }

    pub fn inverse(&self) -> Self {
        let det = self.det();
        Self::new(self.d / det, -self.b / det, -self.c / det, self.a / det)
    }

    pub fn apply(&self, v: Vec2) -> Vec2 {
        [self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1]]
    }

    pub fn frobenius_norm(&self) -> f64 {
        (self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d).sqrt()
    }

    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        [
            self.a - other.a,
            self.b - other.b,
            self.c - other.c,
            self.d - other.d,
        ]
        .iter()
        .fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.c.is_finite() && self.d.is_finite()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }

    /// Real eigenpairs, largest modulus first. `None` when the eigenvalues
    /// are complex.
    pub fn real_eigen(&self) -> Option<[(f64, Vec2); 2]> {
        let tr = self.trace();
        let disc = tr * tr / 4.0 - self.det();
        if disc < 0.0 {
            return None;
        }
        let root = disc.sqrt();
        // avoid cancellation: compute the large root first
        let big = tr / 2.0 + tr.signum() * root;
        let small = if big != 0.0 { self.det() / big } else { -root };
        let vec_for = |lambda: f64| -> Vec2 {
            let (x, y) = if (self.a - lambda).abs() + self.b.abs()
                >= (self.d - lambda).abs() + self.c.abs()
            {
                (self.b, lambda - self.a)
            } else {
                (lambda - self.d, self.c)
            };
            let n = x.hypot(y);
            if n == 0.0 {
                [1.0, 0.0]
            } else {
                [x / n, y / n]
            }
        };
        Some([(big, vec_for(big)), (small, vec_for(small))])
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, r: Mat2) -> Mat2 {
        Mat2::new(
            self.a * r.a + self.b * r.c,
            self.a * r.b + self.b * r.d,
            self.c * r.a + self.d * r.c,
            self.c * r.b + self.d * r.d,
        )
    }
}

pub fn dot(u: Vec2, v: Vec2) -> f64 {
    u[0] * v[0] + u[1] * v[1]
}

pub fn norm(v: Vec2) -> f64 {
    v[0].hypot(v[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_product() {
        let m = Mat2::new(2.0, 1.0, 3.0, 2.0);
        let p = m * m.inverse();
        assert!(p.max_abs_diff(&Mat2::IDENTITY) < 1e-15);
        assert_eq!(m.det(), 1.0);
        assert_eq!(m.trace(), 4.0);
    }

    #[test]
    fn eigenpairs_satisfy_definition() {
        let m = Mat2::new(2.0, 1.0, 3.0, 2.0);
        let eig = m.real_eigen().unwrap();
        for (lambda, v) in eig {
            let mv = m.apply(v);
            assert!((mv[0] - lambda * v[0]).abs() < 1e-12);
            assert!((mv[1] - lambda * v[1]).abs() < 1e-12);
        }
        assert!(eig[0].0.abs() >= eig[1].0.abs());
        assert!(Mat2::rotation(0.4).real_eigen().is_none());
    }

    #[test]
    fn eigenvectors_of_diagonal_and_negative_trace() {
        let m = Mat2::diag(-3.0, -1.0 / 3.0);
        let eig = m.real_eigen().unwrap();
        assert!((eig[0].0 + 3.0).abs() < 1e-15);
        assert!((eig[1].0 + 1.0 / 3.0).abs() < 1e-15);
        assert!((eig[0].1[0].abs() - 1.0).abs() < 1e-15);
        assert!((eig[1].1[1].abs() - 1.0).abs() < 1e-15);
    }
}
