//! Poincaré-disk kernel.
//!
//! Points live strictly inside the unit disk, boundary points on the unit
//! circle, orientation-preserving isometries are scale-factored SU(1,1)
//! pairs. Every operation here is a pure function of immutable values.

mod geodesic;
mod isometry;

pub use geodesic::{FermiCoords, Geodesic};
pub use isometry::Isometry;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Margin below 1 that a disk coordinate must keep clear of the boundary.
pub const BOUNDARY_TOL: f64 = 1e-15;
/// Angular coincidence tolerance for boundary points.
pub const ANGLE_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("point with |z| = {0} is not strictly inside the disk")]
    OutsideDisk(f64),
    #[error("numerical overflow: effective entries exceed the scaled representation's range")]
    NumericalOverflow,
    #[error("degenerate endpoints: angular separation {0:.3e} below tolerance")]
    DegenerateEndpoints(f64),
    #[error("isometry is not loxodromic (|trace| = {0})")]
    NotLoxodromic(f64),
    #[error("matrix [[a,b],[conj b, conj a]] must satisfy |a|^2 - |b|^2 > 0, got {0}")]
    NotAnIsometry(f64),
}

pub type GeomResult<T> = Result<T, GeomError>;

/// A point of the open unit disk, |z| < 1 strictly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiskPoint {
    z: Complex64,
}

impl DiskPoint {
    pub const ORIGIN: DiskPoint = DiskPoint {
        z: Complex64::new(0.0, 0.0),
    };

    pub fn new(z: Complex64) -> GeomResult<Self> {
        let n = z.norm();
        if n >= 1.0 - BOUNDARY_TOL {
            return Err(GeomError::OutsideDisk(n));
        }
        Ok(DiskPoint { z })
    }

    pub fn from_xy(x: f64, y: f64) -> GeomResult<Self> {
        Self::new(Complex64::new(x, y))
    }

    pub fn coord(&self) -> Complex64 {
        self.z
    }

    /// ln(1 - |z|^2), computed without cancellation for |z| close to 1.
    pub fn log_one_minus_sq(&self) -> f64 {
        (1.0 - self.z.norm_sqr()).ln()
    }
}

/// A point of the boundary circle, stored as an angle in [0, 2π).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPoint {
    theta: f64,
}

impl BoundaryPoint {
    pub fn new(theta: f64) -> Self {
        let tau = std::f64::consts::TAU;
        let mut t = theta % tau;
        if t < 0.0 {
            t += tau;
        }
        // -0.0 and exactly tau both normalize to 0
        if t >= tau {
            t = 0.0;
        }
        BoundaryPoint { theta: t }
    }

    pub fn angle(&self) -> f64 {
        self.theta
    }

    pub fn unit(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.theta)
    }

    /// Chordal separation |e^{iθ1} - e^{iθ2}|.
    pub fn chord_to(&self, other: &BoundaryPoint) -> f64 {
        (self.unit() - other.unit()).norm()
    }

    /// Shorter angular distance in [0, π].
    pub fn angular_gap(&self, other: &BoundaryPoint) -> f64 {
        let tau = std::f64::consts::TAU;
        let d = (self.theta - other.theta).rem_euclid(tau);
        d.min(tau - d)
    }
}

/// Hyperbolic distance between two interior points.
pub fn dist(p: DiskPoint, q: DiskPoint) -> f64 {
    let num = 2.0 * (p.z - q.z).norm_sqr();
    let den = (1.0 - p.z.norm_sqr()) * (1.0 - q.z.norm_sqr());
    (1.0 + num / den).acosh()
}

/// acosh(1 + 2u) evaluated from ln(u), stable for u from 0 to e^{10^8}.
pub(crate) fn acosh_one_plus_2exp(ln_u: f64) -> f64 {
    if ln_u < 30.0 {
        let u = ln_u.exp();
        (1.0 + 2.0 * u).acosh()
    } else {
        // acosh(1+2u) = ln u + ln(2 + 1/u + 2 sqrt(1 + 1/u))
        let inv = (-ln_u).exp();
        ln_u + (2.0 + inv + 2.0 * (1.0 + inv).sqrt()).ln()
    }
}

/// Hyperbolic distance between `p` and `iso · q`, stable for isometries of
/// arbitrary log-scale. Factors ln|den|^2 out of both the chordal gap and
/// 1 - |iso·q|^2 so the scale enters linearly.
pub fn dist_to_image(p: DiskPoint, iso: &Isometry, q: DiskPoint) -> f64 {
    // numerator of p - iso(q) over the common denominator (b̄ q + ā):
    //   p (b̄ q + ā) - (a q + b)
    let (a, b) = iso.pair();
    let den = b.conj() * q.z + a.conj();
    let num = p.z * den - (a * q.z + b);
    let ln_u = num.norm_sqr().ln() + 2.0 * iso.log_scale()
        - p.log_one_minus_sq()
        - q.log_one_minus_sq();
    acosh_one_plus_2exp(ln_u)
}

/// Busemann function B_ξ(p) with the convention B_ξ(base) = 0.
///
/// Computed by the Poisson-kernel closed form
/// B_ξ(p) = ln[(1-|p|^2)/|ξ-p|^2] - ln[(1-|base|^2)/|ξ-base|^2].
pub fn busemann(xi: BoundaryPoint, p: DiskPoint, base: DiskPoint) -> f64 {
    let u = xi.unit();
    let hp = p.log_one_minus_sq() - (u - p.z).norm_sqr().ln();
    let hb = base.log_one_minus_sq() - (u - base.z).norm_sqr().ln();
    hp - hb
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dist_identity_case() {
        assert_eq!(dist(DiskPoint::ORIGIN, DiskPoint::ORIGIN), 0.0);
    }

    #[test]
    fn dist_to_half_is_ln3() {
        let p = DiskPoint::from_xy(0.5, 0.0).unwrap();
        let d = dist(DiskPoint::ORIGIN, p);
        // closed form 2 artanh(0.5) = ln 3
        assert!((d - 3.0f64.ln()).abs() < 1e-12, "{d}");
        assert!((d - 2.0 * 0.5f64.atanh()).abs() < 1e-12);
    }

    #[test]
    fn boundary_point_normalizes() {
        let b = BoundaryPoint::new(-0.5);
        assert!(b.angle() >= 0.0 && b.angle() < std::f64::consts::TAU);
        let c = BoundaryPoint::new(7.0);
        assert!((c.angle() - (7.0 - std::f64::consts::TAU)).abs() < 1e-15);
    }

    #[test]
    fn disk_point_rejects_boundary() {
        assert!(DiskPoint::from_xy(1.0, 0.0).is_err());
        assert!(DiskPoint::from_xy(0.0, 1.0 - 1e-16).is_err());
        assert!(DiskPoint::from_xy(0.0, 1.0 - 1e-12).is_ok());
    }

    #[test]
    fn busemann_base_is_zero() {
        let base = DiskPoint::from_xy(0.3, -0.2).unwrap();
        let xi = BoundaryPoint::new(1.1);
        assert_eq!(busemann(xi, base, base), 0.0);
    }

    #[test]
    fn busemann_poisson_value() {
        // B along the real axis toward ξ = 1: B(0.5) = ln 3 from base 0
        let xi = BoundaryPoint::new(0.0);
        let p = DiskPoint::from_xy(0.5, 0.0).unwrap();
        let b = busemann(xi, p, DiskPoint::ORIGIN);
        assert!((b - 3.0f64.ln()).abs() < 1e-12);
        // finite-t limit cross-check: t - dist(p, β(t)) for β(t) = tanh(t/2)
        let t = 20.0;
        let beta_t = DiskPoint::from_xy((t / 2.0f64).tanh(), 0.0).unwrap();
        let lim = t - dist(p, beta_t);
        assert!((b - lim).abs() < 1e-7, "{b} vs {lim}");
    }
}
