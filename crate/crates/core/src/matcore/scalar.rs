use num_complex::Complex64;

pub type Cmplx = Complex64;

pub const ZERO: Cmplx = Cmplx::new(0.0, 0.0);
pub const ONE: Cmplx = Cmplx::new(1.0, 0.0);
pub const I: Cmplx = Cmplx::new(0.0, 1.0);

/// Principal square root; a negative real (with either signed zero imaginary part) maps to the
/// positive imaginary axis.
pub fn principal_sqrt(z: Cmplx) -> Cmplx {
    Cmplx::new(z.re, z.im + 0.0).sqrt()
}

/// Argument in (-pi, pi]; zero maps to 0.
pub fn principal_arg(z: Cmplx) -> f64 {
    if z.re == 0.0 && z.im == 0.0 {
        return 0.0;
    }
    (z.im + 0.0).atan2(z.re)
}

/// Unit-modulus phase of `z`, or 1 when `z` is zero.
pub fn phase(z: Cmplx) -> Cmplx {
    let r = z.norm();
    if r == 0.0 {
        ONE
    } else {
        z / r
    }
}

/// `e^{i theta}`.
pub fn cis(theta: f64) -> Cmplx {
    Cmplx::from_polar(1.0, theta)
}

/// Lexicographic order on (re, im), total for finite values.
pub fn lex_cmp(a: &Cmplx, b: &Cmplx) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_of_negative_real_is_on_positive_imaginary_axis() {
        assert_eq!(principal_sqrt(Cmplx::new(-4.0, 0.0)), Cmplx::new(0.0, 2.0));
        assert_eq!(principal_sqrt(Cmplx::new(-4.0, -0.0)), Cmplx::new(0.0, 2.0));
    }

    #[test]
    fn arg_of_negative_real_is_pi() {
        assert_eq!(principal_arg(Cmplx::new(-1.0, -0.0)), std::f64::consts::PI);
        assert_eq!(principal_arg(ZERO), 0.0);
    }

    #[test]
    fn sqrt_product_squares_back() {
        for &(a, b) in &[(1.0, 4.0), (-1.0, -1.0), (-2.0, 3.0)] {
            let (a, b) = (Cmplx::new(a, 0.3), Cmplx::new(b, -0.7));
            let s = principal_sqrt(a) * principal_sqrt(b);
            assert!((s * s - a * b).norm() < 1e-12);
        }
    }
}
