use crate::error::{Error, Result};

/// `J(ω) = J0 · ω^{1+μ} · exp(−ω/ω_c)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralDensity {
    j0: f64,
    mu: f64,
    omega_c: f64,
}

impl SpectralDensity {
    pub fn new(j0: f64, mu: f64, omega_c: f64) -> Result<Self> {
        if !mu.is_finite() || mu <= -1.0 {
            return Err(Error::InvalidExponent { mu });
        }
        if !(j0.is_finite() && j0 >= 0.0) {
            return Err(Error::InvalidParameter(format!("J0 must be finite and nonnegative, got {j0}")));
        }
        if !(omega_c.is_finite() && omega_c > 0.0) {
            return Err(Error::InvalidParameter(format!("omega_c must be positive, got {omega_c}")));
        }
        Ok(Self { j0, mu, omega_c })
    }

    /// The bath of the critical-slowing-down figure: `μ = −0.5`, `J0 = ω_c = 1`.
    pub fn figure1() -> Self {
        Self { j0: 1.0, mu: -0.5, omega_c: 1.0 }
    }

    pub fn j0(&self) -> f64 {
        self.j0
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn omega_c(&self) -> f64 {
        self.omega_c
    }

    pub fn eval(&self, omega: f64) -> f64 {
        if omega <= 0.0 {
            return 0.0;
        }
        self.j0 * omega.powf(1.0 + self.mu) * (-omega / self.omega_c).exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_divergent_exponent() {
        assert!(matches!(SpectralDensity::new(1.0, -1.0, 1.0), Err(Error::InvalidExponent { .. })));
        assert!(matches!(SpectralDensity::new(1.0, -2.5, 1.0), Err(Error::InvalidExponent { .. })));
        assert!(SpectralDensity::new(1.0, -0.999, 1.0).is_ok());
        assert!(SpectralDensity::new(-1.0, 0.0, 1.0).is_err());
        assert!(SpectralDensity::new(1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn values() {
        let j = SpectralDensity::new(2.0, 0.0, 1.0).unwrap();
        assert_eq!(j.eval(0.0), 0.0);
        assert!((j.eval(1.0) - 2.0 * (-1.0f64).exp()).abs() < 1e-15);
        let f = SpectralDensity::figure1();
        assert!((f.eval(4.0) - 2.0 * (-4.0f64).exp()).abs() < 1e-15);
    }
}
