//! Free-wave building blocks `cos(kL)` and `sin(kL)/k` as entire functions of
//! `eps = k^2`, with their `eps`-derivatives.

use num_complex::Complex64;

/// Below this `|eps|` the removable singularity at `k = 0` is handled by
/// Taylor series.
pub const SERIES_EPS: f64 = 1e-6;

const SERIES_TERMS: usize = 6;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Wave {
    /// cos(k L)
    pub c: f64,
    /// sin(k L) / k
    pub s: f64,
    pub dc: f64,
    pub ds: f64,
    pub imag: f64,
}

impl Wave {
    pub fn new(epsilon: f64, length: f64) -> Self {
        if epsilon.abs() < SERIES_EPS {
            return Self::series(epsilon, length);
        }
        let k = Complex64::new(epsilon, 0.0).sqrt();
        let kl = k * length;
        let c = kl.cos();
        let s = kl.sin() / k;
        let imag = c.im.abs().max(s.im.abs());
        let (c, s) = (c.re, s.re);
        Wave { c, s, dc: -0.5 * length * s, ds: (length * c - s) / (2.0 * epsilon), imag }
    }

    // cos(kL)    = sum_n (-1)^n eps^n L^(2n)   / (2n)!
    // sin(kL)/k  = sum_n (-1)^n eps^n L^(2n+1) / (2n+1)!
    fn series(epsilon: f64, length: f64) -> Self {
        let l2 = length * length;
        let mut c = 0.0;
        let mut s = 0.0;
        let mut ds = 0.0;
        let mut c_coef = 1.0; // (-1)^n L^(2n) / (2n)!
        let mut s_coef = length; // (-1)^n L^(2n+1) / (2n+1)!
        let mut eps_pow = 1.0; // eps^n
        for n in 0..SERIES_TERMS {
            c += c_coef * eps_pow;
            s += s_coef * eps_pow;
            let m = (2 * n + 1) as f64;
            c_coef *= -l2 / (m * (m + 1.0));
            s_coef *= -l2 / ((m + 1.0) * (m + 2.0));
            // term n+1 of ds/deps: (n+1) * s_coef(n+1) * eps^n
            ds += (n + 1) as f64 * s_coef * eps_pow;
            eps_pow *= epsilon;
        }
        Wave { c, s, dc: -0.5 * length * s, ds, imag: 0.0 }
    }
}
