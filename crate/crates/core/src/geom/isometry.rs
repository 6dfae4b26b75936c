//! Scale-factored orientation-preserving isometries of the disk.
//!
//! An isometry is stored as a pair (a, b) with the effective matrix
//! e^{log_scale} · [[a, b], [conj b, conj a]] of unit determinant. The pair is
//! kept at entry magnitude O(1); the identity |a|^2 - |b|^2 = e^{-2 log_scale}
//! is maintained algebraically, so products over 10^6-step orbits stay finite
//! and all determinant-dependent formulas use log_scale directly instead of
//! the (cancellation-prone) float determinant.

use super::{BoundaryPoint, DiskPoint, GeomError, GeomResult};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Entry magnitude beyond which the determinant of the stored pair can no
/// longer be trusted in doubles (|a|^2 eats ~|a|^2 · 1e-16 of noise).
const DET_TRUST_ENTRY: f64 = 1e3;
/// Entry magnitude band kept by the renormalization.
const CAP_HI: f64 = 1e4;
const CAP_LO: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Isometry {
    a: Complex64,
    b: Complex64,
    log_scale: f64,
}

impl Isometry {
    pub const IDENTITY: Isometry = Isometry {
        a: Complex64::new(1.0, 0.0),
        b: Complex64::new(0.0, 0.0),
        log_scale: 0.0,
    };

    /// Build from an SU(1,1)-shaped pair; requires |a|^2 - |b|^2 > 0.
    pub fn from_pair(a: Complex64, b: Complex64) -> GeomResult<Self> {
        let d = a.norm_sqr() - b.norm_sqr();
        if !(d > 0.0) || !d.is_finite() {
            return Err(GeomError::NotAnIsometry(d));
        }
        let s = d.sqrt();
        Ok(Isometry {
            a: a / s,
            b: b / s,
            log_scale: 0.0,
        })
    }

    /// Rotation by `phi` about the origin.
    pub fn rotation(phi: f64) -> Self {
        Isometry {
            a: Complex64::from_polar(1.0, phi / 2.0),
            b: Complex64::new(0.0, 0.0),
            log_scale: 0.0,
        }
    }

    /// Hyperbolic translation by distance `d` along the real diameter,
    /// oriented from boundary angle π toward boundary angle 0.
    pub fn real_translation(d: f64) -> Self {
        let h = d / 2.0;
        Isometry {
            a: Complex64::new(h.cosh(), 0.0),
            b: Complex64::new(h.sinh(), 0.0),
            log_scale: 0.0,
        }
        .renormalized()
    }

    /// Isometry sending `p` to the origin with zero rotation at p's image.
    pub fn translate_to_origin(p: DiskPoint) -> Self {
        let z = p.coord();
        let s = (1.0 - z.norm_sqr()).sqrt();
        Isometry {
            a: Complex64::new(1.0 / s, 0.0),
            b: -z / s,
            log_scale: 0.0,
        }
    }

    /// The unique orientation-preserving isometry mapping the ordered pair
    /// (p, q) onto (p2, q2). Requires dist(p,q) = dist(p2,q2); small
    /// mismatches are absorbed (the result maps p -> p2 exactly and sends the
    /// ray toward q onto the ray toward q2).
    pub fn mapping_pairs(p: DiskPoint, q: DiskPoint, p2: DiskPoint, q2: DiskPoint) -> Self {
        let m1 = Self::normal_frame(p, q);
        let m2 = Self::normal_frame(p2, q2);
        m2.inverse().compose(&m1)
    }

    /// Isometry sending p to 0 and q onto the positive real axis.
    fn normal_frame(p: DiskPoint, q: DiskPoint) -> Self {
        let t = Self::translate_to_origin(p);
        let w = t.apply_complex(q.coord());
        let r = Self::rotation(-w.arg());
        r.compose(&t)
    }

    pub fn pair(&self) -> (Complex64, Complex64) {
        (self.a, self.b)
    }

    pub fn log_scale(&self) -> f64 {
        self.log_scale
    }

    /// 2 ln |a_eff| proxy for how hyperbolic the element is; the translation
    /// length of a loxodromic element is 2 acosh(|Re a_eff|).
    pub fn log_magnitude(&self) -> f64 {
        self.log_scale + self.a.norm().ln()
    }

    fn renormalized(mut self) -> Self {
        let m = self.a.norm().max(self.b.norm());
        if m > CAP_HI || m < CAP_LO {
            self.a /= m;
            self.b /= m;
            self.log_scale += m.ln();
        }
        if self.a.norm() <= DET_TRUST_ENTRY {
            let d = self.a.norm_sqr() - self.b.norm_sqr();
            if d > 1e-10 {
                let s = d.sqrt();
                self.a /= s;
                self.b /= s;
                self.log_scale += s.ln();
            }
        }
        self
    }

    /// Group composition g∘h: (g.compose(h))(z) = g(h(z)).
    pub fn compose(&self, h: &Isometry) -> Isometry {
        let a = self.a * h.a + self.b * h.b.conj();
        let b = self.a * h.b + self.b * h.a.conj();
        Isometry {
            a,
            b,
            log_scale: self.log_scale + h.log_scale,
        }
        .renormalized()
    }

    pub fn inverse(&self) -> Isometry {
        Isometry {
            a: self.a.conj(),
            b: -self.b,
            log_scale: self.log_scale,
        }
    }

    /// Raw Möbius action on a complex coordinate (scale cancels).
    pub(crate) fn apply_complex(&self, z: Complex64) -> Complex64 {
        (self.a * z + self.b) / (self.b.conj() * z + self.a.conj())
    }

    /// Derivative of the Möbius action at z, equal to det / (b̄ z + ā)^2 with
    /// det = e^{-2 log_scale} for the stored pair.
    pub fn derivative(&self, z: Complex64) -> Complex64 {
        let den = self.b.conj() * z + self.a.conj();
        let d = (-2.0 * self.log_scale).exp();
        d / (den * den)
    }

    /// Apply to an interior point.
    pub fn apply(&self, p: DiskPoint) -> GeomResult<DiskPoint> {
        let w = self.apply_complex(p.coord());
        if !w.re.is_finite() || !w.im.is_finite() {
            return Err(GeomError::NumericalOverflow);
        }
        DiskPoint::new(w).map_err(|_| GeomError::NumericalOverflow)
    }

    /// Apply to a boundary point; the image modulus is exactly 1 for any
    /// stored pair, so only the argument is computed.
    pub fn apply_boundary(&self, xi: BoundaryPoint) -> BoundaryPoint {
        let z = xi.unit();
        let num = self.a * z + self.b;
        let den = self.b.conj() * z + self.a.conj();
        BoundaryPoint::new(num.arg() - den.arg())
    }

    /// Effective trace (real part; the trace of an SU(1,1) representative is
    /// 2 Re a_eff). Returns (|trace|, overflowed) where overflowed signals
    /// that e^{log_scale} exceeded the double range.
    pub fn abs_trace(&self) -> f64 {
        2.0 * self.log_scale.exp() * self.a.re.abs()
    }

    /// Hyperbolic distance d(0, g·0).
    pub fn displacement(&self) -> f64 {
        super::dist_to_image(DiskPoint::ORIGIN, self, DiskPoint::ORIGIN)
    }

    /// Max distance between images of a small probe set; used for
    /// proximity-deduplication of group elements.
    pub fn action_gap(&self, other: &Isometry) -> f64 {
        let probes = [
            Complex64::new(0.0, 0.0),
            Complex64::new(0.5, 0.0),
            Complex64::new(0.0, 0.5),
        ];
        probes
            .iter()
            .map(|&z| (self.apply_complex(z) - other.apply_complex(z)).norm())
            .fold(0.0, f64::max)
    }

    /// |a|^2 - |b|^2 of the stored pair re-expressed at unit scale; the
    /// SU(1,1) defect. Meaningful while entries are in the det-trust range.
    pub fn unit_det_defect(&self) -> f64 {
        let d = self.a.norm_sqr() - self.b.norm_sqr();
        d * (2.0 * self.log_scale).exp() - 1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::dist;

    #[test]
    fn identity_fixes_points() {
        let p = DiskPoint::from_xy(0.3, -0.4).unwrap();
        let q = Isometry::IDENTITY.apply(p).unwrap();
        assert!((p.coord() - q.coord()).norm() < 1e-15);
    }

    #[test]
    fn rotation_acts_on_boundary_by_shift() {
        let phi = 0.7;
        let r = Isometry::rotation(phi);
        let xi = BoundaryPoint::new(1.2);
        let img = r.apply_boundary(xi);
        assert!((img.angle() - (1.2 + phi)).abs() < 1e-14);
    }

    #[test]
    fn translation_moves_origin_by_tanh() {
        let d = 1.3;
        let g = Isometry::real_translation(d);
        let img = g.apply(DiskPoint::ORIGIN).unwrap();
        assert!((img.coord().re - (d / 2.0f64).tanh()).abs() < 1e-14);
        assert!(img.coord().im.abs() < 1e-15);
    }

    #[test]
    fn compose_with_inverse_is_identity() {
        let g = Isometry::real_translation(2.0).compose(&Isometry::rotation(0.9));
        let e = g.compose(&g.inverse());
        assert!(e.action_gap(&Isometry::IDENTITY) < 1e-12);
    }

    #[test]
    fn compose_preserves_distances() {
        let g = Isometry::rotation(0.3)
            .compose(&Isometry::real_translation(1.1))
            .compose(&Isometry::rotation(-1.9));
        let p = DiskPoint::from_xy(0.2, 0.1).unwrap();
        let q = DiskPoint::from_xy(-0.5, 0.3).unwrap();
        let gp = g.apply(p).unwrap();
        let gq = g.apply(q).unwrap();
        assert!((dist(p, q) - dist(gp, gq)).abs() < 1e-12);
    }

    #[test]
    fn long_products_stay_finite() {
        // d(0, g^n 0) for a translation: exactly n*d, far beyond naive range
        let g = Isometry::real_translation(0.5);
        let mut w = Isometry::IDENTITY;
        for _ in 0..1_000_000 {
            w = w.compose(&g);
        }
        let l = w.displacement();
        assert!(l.is_finite());
        assert!((l - 500_000.0).abs() / 500_000.0 < 1e-9, "{l}");
    }
}
