//! Oriented geodesics, Fermi coordinates, crossing angles, axes.

use super::{
    acosh_one_plus_2exp, dist, BoundaryPoint, DiskPoint, GeomError, GeomResult, Isometry,
    ANGLE_TOL,
};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Fermi coordinates relative to an oriented geodesic: `t` is arclength along
/// the geodesic from its origin, `r` the signed orthogonal distance, positive
/// on the left of increasing t.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FermiCoords {
    pub t: f64,
    pub r: f64,
}

/// An oriented geodesic with a marked origin (time-0 point of the unit-speed
/// parametrization from `alpha` toward `omega`).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Geodesic {
    alpha: BoundaryPoint,
    omega: BoundaryPoint,
    origin: DiskPoint,
    /// Isometry carrying the real diameter onto this geodesic:
    /// frame(-1) = alpha, frame(1) = omega, frame(0) = origin.
    frame: Isometry,
}

/// Either endpoint datum accepted by [`geodesic_of`].
#[derive(Debug, Clone, Copy)]
pub enum GeodesicEnd {
    Interior(DiskPoint),
    Infinite(BoundaryPoint),
}

impl From<DiskPoint> for GeodesicEnd {
    fn from(p: DiskPoint) -> Self {
        GeodesicEnd::Interior(p)
    }
}

impl From<BoundaryPoint> for GeodesicEnd {
    fn from(b: BoundaryPoint) -> Self {
        GeodesicEnd::Infinite(b)
    }
}

impl Geodesic {
    /// Unique geodesic through / toward the two inputs, oriented from `a`
    /// to `b`. The origin is the orthogonal projection of `origin_hint` when
    /// given, otherwise the Euclidean midpoint of the circular arc.
    pub fn of(
        a: impl Into<GeodesicEnd>,
        b: impl Into<GeodesicEnd>,
        origin_hint: Option<DiskPoint>,
    ) -> GeomResult<Geodesic> {
        let (alpha, omega) = resolve_endpoints(a.into(), b.into())?;
        Self::from_boundary(alpha, omega, origin_hint)
    }

    /// Geodesic with both endpoints on the boundary circle.
    pub fn from_boundary(
        alpha: BoundaryPoint,
        omega: BoundaryPoint,
        origin_hint: Option<DiskPoint>,
    ) -> GeomResult<Geodesic> {
        let gap = alpha.angular_gap(&omega);
        if gap < ANGLE_TOL {
            return Err(GeomError::DegenerateEndpoints(gap));
        }
        let m = arc_midpoint(alpha, omega);
        let origin0 = DiskPoint::new(m).expect("arc midpoint is interior");
        let frame = frame_for(alpha, omega, origin0);
        let g = Geodesic {
            alpha,
            omega,
            origin: origin0,
            frame,
        };
        match origin_hint {
            None => Ok(g),
            Some(h) => {
                let t = g.fermi_project(h).t;
                let origin = g.point_at(t)?;
                let frame = frame_for(alpha, omega, origin);
                Ok(Geodesic {
                    alpha,
                    omega,
                    origin,
                    frame,
                })
            }
        }
    }

    /// The geodesic through `p` with unit tangent direction `dir` (angle in
    /// disk coordinates), origin at `p`.
    pub fn through(p: DiskPoint, dir: f64) -> Geodesic {
        let t = Isometry::translate_to_origin(p);
        // tangent directions transform by the argument of the derivative
        let dphi = t.derivative(p.coord()).arg();
        let omega0 = BoundaryPoint::new(dir + dphi);
        let alpha0 = BoundaryPoint::new(dir + dphi + PI);
        let ti = t.inverse();
        let alpha = ti.apply_boundary(alpha0);
        let omega = ti.apply_boundary(omega0);
        let frame = ti.compose(&Isometry::rotation(omega0.angle()));
        Geodesic {
            alpha,
            omega,
            origin: p,
            frame,
        }
    }

    pub fn alpha(&self) -> BoundaryPoint {
        self.alpha
    }

    pub fn omega(&self) -> BoundaryPoint {
        self.omega
    }

    pub fn origin(&self) -> DiskPoint {
        self.origin
    }

    /// The normalizing frame: an isometry with frame(-1)=alpha, frame(1)=omega,
    /// frame(0)=origin.
    pub fn frame(&self) -> &Isometry {
        &self.frame
    }

    /// Point at arclength `t` from the origin (toward omega for t > 0).
    pub fn point_at(&self, t: f64) -> GeomResult<DiskPoint> {
        let w = Complex64::new((t / 2.0).tanh(), 0.0);
        let z = DiskPoint::new(w).map_err(|_| GeomError::NumericalOverflow)?;
        self.frame.apply(z)
    }

    /// Unit tangent direction (angle in disk coordinates) at arclength `t`.
    pub fn tangent_at(&self, t: f64) -> GeomResult<f64> {
        let w = Complex64::new((t / 2.0).tanh(), 0.0);
        if w.norm() >= 1.0 {
            return Err(GeomError::NumericalOverflow);
        }
        Ok(self.frame.derivative(w).arg())
    }

    /// Fermi coordinates of `p`: t along, r signed orthogonal (left positive).
    pub fn fermi_project(&self, p: DiskPoint) -> FermiCoords {
        let w = self.frame.inverse().apply_complex(p.coord());
        fermi_of_normalized(w)
    }

    /// Inverse of [`Self::fermi_project`].
    pub fn point_from_fermi(&self, f: FermiCoords) -> GeomResult<DiskPoint> {
        let u = Complex64::new(0.0, (f.r / 2.0).tanh());
        let shifted = Isometry::real_translation(f.t).apply_complex(u);
        let z = DiskPoint::new(shifted).map_err(|_| GeomError::NumericalOverflow)?;
        self.frame.apply(z)
    }

    /// Signed Fermi data of `iso · q` for isometries of arbitrary scale.
    /// Returns (t, r); stable as long as the image stays within float range
    /// of the geodesic's parametrization window (|t| ≲ 700).
    pub fn fermi_of_image(&self, iso: &Isometry, q: DiskPoint) -> FermiCoords {
        let rel = self.frame.inverse().compose(iso);
        let (a, b) = rel.pair();
        let zq = q.coord();
        let den = b.conj() * zq + a.conj();
        let num = a * zq + b;
        // ln|1 ∓ w|^2 over the common denominator: 1 - w = (den - num)/den
        let ln_den = den.norm_sqr().ln();
        let ln_1m = (den - num).norm_sqr().ln() - ln_den;
        let ln_1p = (den + num).norm_sqr().ln() - ln_den;
        let t = 0.5 * (ln_1p - ln_1m);
        // sinh r = 2 Im w / (1 - |w|^2); Im w = Im(num conj(den))/|den|^2 and
        // 1 - |w|^2 = (1-|q|^2) e^{-2s} / |den|^2, so |den|^2 cancels.
        let im_num = (num * den.conj()).im;
        let sinh_r =
            2.0 * im_num / (1.0 - zq.norm_sqr()) * (2.0 * rel.log_scale()).exp();
        FermiCoords {
            t,
            r: sinh_r.asinh(),
        }
    }

    /// Hyperbolic distance from `p` to the geodesic (|Fermi r|).
    pub fn dist_to(&self, p: DiskPoint) -> f64 {
        self.fermi_project(p).r.abs()
    }

    /// Whether the two geodesics have the same unoriented endpoint set within
    /// chordal tolerance `tol`.
    pub fn same_unoriented(&self, other: &Geodesic, tol: f64) -> bool {
        let fwd = self.alpha.chord_to(&other.alpha) < tol && self.omega.chord_to(&other.omega) < tol;
        let rev = self.alpha.chord_to(&other.omega) < tol && self.omega.chord_to(&other.alpha) < tol;
        fwd || rev
    }

    /// Image geodesic under an isometry (origin transported when it stays
    /// representable, else re-anchored at the arc midpoint).
    pub fn transported(&self, iso: &Isometry) -> GeomResult<Geodesic> {
        let alpha = iso.apply_boundary(self.alpha);
        let omega = iso.apply_boundary(self.omega);
        let hint = iso.apply(self.origin).ok();
        Geodesic::from_boundary(alpha, omega, hint)
    }
}

fn resolve_endpoints(a: GeodesicEnd, b: GeodesicEnd) -> GeomResult<(BoundaryPoint, BoundaryPoint)> {
    use GeodesicEnd::*;
    match (a, b) {
        (Infinite(u), Infinite(v)) => Ok((u, v)),
        (Interior(p), Interior(q)) => {
            let sep = (p.coord() - q.coord()).norm();
            if sep < ANGLE_TOL {
                return Err(GeomError::DegenerateEndpoints(sep));
            }
            let f = Isometry::mapping_pairs(p, q, DiskPoint::ORIGIN, q_on_axis(p, q));
            let fi = f.inverse();
            Ok((
                fi.apply_boundary(BoundaryPoint::new(PI)),
                fi.apply_boundary(BoundaryPoint::new(0.0)),
            ))
        }
        (Interior(p), Infinite(v)) => {
            let t = Isometry::translate_to_origin(p);
            let w = t.apply_boundary(v);
            let ti = t.inverse();
            Ok((ti.apply_boundary(BoundaryPoint::new(w.angle() + PI)), v))
        }
        (Infinite(u), Interior(q)) => {
            let t = Isometry::translate_to_origin(q);
            let w = t.apply_boundary(u);
            let ti = t.inverse();
            Ok((u, ti.apply_boundary(BoundaryPoint::new(w.angle() + PI))))
        }
    }
}

fn q_on_axis(p: DiskPoint, q: DiskPoint) -> DiskPoint {
    let d = dist(p, q);
    DiskPoint::new(Complex64::new((d / 2.0).tanh(), 0.0)).expect("tanh < 1")
}

/// Euclidean midpoint of the circular arc with boundary endpoints u, v (the
/// point of the geodesic closest to the disk center).
fn arc_midpoint(alpha: BoundaryPoint, omega: BoundaryPoint) -> Complex64 {
    let u = alpha.unit();
    let v = omega.unit();
    let s = 1.0 + (u * v.conj()).re;
    if s.abs() < 1e-14 {
        // diameter
        return Complex64::new(0.0, 0.0);
    }
    let c = (u + v) / s;
    let n = c.norm();
    if n <= 1.0 {
        return Complex64::new(0.0, 0.0);
    }
    let rho = (n * n - 1.0).sqrt();
    c * (1.0 - rho / n)
}

fn frame_for(alpha: BoundaryPoint, omega: BoundaryPoint, origin: DiskPoint) -> Isometry {
    let t = Isometry::translate_to_origin(origin);
    let w = t.apply_boundary(omega);
    let r = Isometry::rotation(-w.angle());
    r.compose(&t).inverse()
}

fn fermi_of_normalized(w: Complex64) -> FermiCoords {
    let one_m = 1.0 - w.norm_sqr();
    let t = 0.5 * (((1.0 + w).norm_sqr() / (1.0 - w).norm_sqr()).ln());
    let r = (2.0 * w.im / one_m).asinh();
    FermiCoords { t, r }
}

/// Invariant geodesic of a loxodromic isometry, oriented toward the
/// attracting fixed point, plus the translation length.
pub fn axis_of(g: &Isometry) -> GeomResult<(Geodesic, f64)> {
    let tr = g.abs_trace();
    let log_half_tr = g.log_scale() + g.pair().0.re.abs().ln();
    // |trace| > 2 with margin 1e-9, checked in log form for huge scales
    if !(log_half_tr > (1.0f64 + 0.5e-9).ln()) {
        return Err(GeomError::NotLoxodromic(if tr.is_finite() {
            tr
        } else {
            f64::INFINITY
        }));
    }
    let ell = if log_half_tr < 300.0 {
        2.0 * log_half_tr.exp().acosh()
    } else {
        2.0 * (log_half_tr + 2.0f64.ln())
    };
    let (a, b) = g.pair();
    // fixed points of (az+b)/(b̄z+ā): z = (i Im a ± sqrt(|b|^2 - (Im a)^2)) / b̄
    let disc = (b.norm_sqr() - a.im * a.im).max(0.0).sqrt();
    let zp = (Complex64::new(0.0, a.im) + disc) / b.conj();
    let zm = (Complex64::new(0.0, a.im) - disc) / b.conj();
    // attracting fixed point: |derivative| < 1, i.e. ln|b̄ z + ā| > -log_scale
    let attract_first = {
        let den = b.conj() * zp + a.conj();
        den.norm().ln() > -g.log_scale()
    };
    let (att, rep) = if attract_first { (zp, zm) } else { (zm, zp) };
    let geo = Geodesic::from_boundary(
        BoundaryPoint::new(rep.arg()),
        BoundaryPoint::new(att.arg()),
        None,
    )?;
    Ok((geo, ell))
}

/// Transverse intersection of two geodesics: `Some((point, angle))` iff the
/// endpoint pairs interleave on the circle; the angle is taken mod π in
/// (0, π). `None` signals disjoint or identical geodesics.
pub fn cross_angle(g1: &Geodesic, g2: &Geodesic) -> Option<(DiskPoint, f64)> {
    if g1.same_unoriented(g2, ANGLE_TOL) {
        return None;
    }
    let fi = g1.frame.inverse();
    let pa = fi.apply_boundary(g2.alpha);
    let po = fi.apply_boundary(g2.omega);
    let (sa, so) = (pa.angle().sin(), po.angle().sin());
    // interleaving with the real diameter = endpoints on strictly opposite sides
    if sa.abs() < ANGLE_TOL || so.abs() < ANGLE_TOL || sa * so > 0.0 {
        return None;
    }
    let u = pa.unit();
    let v = po.unit();
    let s = 1.0 + (u * v.conj()).re;
    let (x, tangent) = if s.abs() < 1e-14 {
        // g2 normalized to a diameter: crosses the real axis at 0
        (0.0, v)
    } else {
        let c = (u + v) / s;
        if c.re.abs() <= 1.0 {
            return None;
        }
        let x = c.re - c.re.signum() * (c.re * c.re - 1.0).sqrt();
        let tau = Complex64::new(0.0, 1.0) * (Complex64::new(x, 0.0) - c);
        (x, tau)
    };
    let mut ang = tangent.arg().rem_euclid(PI);
    if ang < 1e-14 {
        ang = PI; // tangential limit; excluded by the interleaving test anyway
    }
    let pt = g1
        .frame
        .apply(DiskPoint::new(Complex64::new(x, 0.0)).ok()?)
        .ok()?;
    Some((pt, ang))
}

/// Minimal distance between two geodesics; 0 when they cross.
pub fn geodesic_gap(g1: &Geodesic, g2: &Geodesic) -> f64 {
    if cross_angle(g1, g2).is_some() {
        return 0.0;
    }
    if g1.same_unoriented(g2, ANGLE_TOL) {
        return 0.0;
    }
    // distance from g2's points to g1 is convex in the arclength parameter;
    // bracket then ternary-search
    let f = |t: f64| -> f64 {
        match g2.point_at(t) {
            Ok(p) => g1.dist_to(p),
            Err(_) => f64::INFINITY,
        }
    };
    let (mut lo, mut hi) = (-30.0, 30.0);
    for _ in 0..200 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if f(m1) < f(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
        if hi - lo < 1e-12 {
            break;
        }
    }
    f(0.5 * (lo + hi))
}

/// Interior angle at vertex `v` of the wedge spanned by `p` and `q`, in [0, π].
pub fn angle_at(v: DiskPoint, p: DiskPoint, q: DiskPoint) -> f64 {
    let t = Isometry::translate_to_origin(v);
    let wp = t.apply_complex(p.coord());
    let wq = t.apply_complex(q.coord());
    let d = (wp.arg() - wq.arg()).rem_euclid(std::f64::consts::TAU);
    d.min(std::f64::consts::TAU - d)
}

/// Distance from `p` to `iso · q` (re-export of the stable routine for
/// callers that think of it as a geodesic-segment length).
pub fn dist_along(ln_u: f64) -> f64 {
    acosh_one_plus_2exp(ln_u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::dist;

    fn bp(theta: f64) -> BoundaryPoint {
        BoundaryPoint::new(theta)
    }

    #[test]
    fn real_diameter_from_boundary() {
        let g = Geodesic::of(bp(PI), bp(0.0), None).unwrap();
        assert!(g.origin().coord().norm() < 1e-15);
        let p = g.point_at(3.0f64.ln()).unwrap();
        assert!((p.coord().re - 0.5).abs() < 1e-12);
        assert!(p.coord().im.abs() < 1e-12);
    }

    #[test]
    fn degenerate_endpoints_rejected() {
        let e = Geodesic::of(bp(0.0), bp(0.0), None);
        assert!(matches!(e, Err(GeomError::DegenerateEndpoints(_))));
    }

    #[test]
    fn diameter_through_center_and_half_i() {
        let p = DiskPoint::ORIGIN;
        let q = DiskPoint::from_xy(0.0, 0.5).unwrap();
        let g = Geodesic::of(p, q, None).unwrap();
        assert!(g.omega().angular_gap(&bp(PI / 2.0)) < 1e-12);
        assert!(g.alpha().angular_gap(&bp(-PI / 2.0)) < 1e-12);
    }

    #[test]
    fn fermi_examples() {
        let g = Geodesic::of(bp(PI), bp(0.0), None).unwrap();
        let f = g.fermi_project(DiskPoint::from_xy(0.0, 0.3).unwrap());
        assert!(f.t.abs() < 1e-12);
        assert!((f.r - 2.0 * 0.3f64.atanh()).abs() < 1e-12, "r = {}", f.r);
        let f2 = g.fermi_project(DiskPoint::from_xy(0.5, 0.0).unwrap());
        assert!((f2.t - 3.0f64.ln()).abs() < 1e-12);
        assert!(f2.r.abs() < 1e-12);
        let on = g.point_at(2.5).unwrap();
        let f3 = g.fermi_project(on);
        assert!((f3.t - 2.5).abs() < 1e-9 && f3.r.abs() < 1e-9);
    }

    #[test]
    fn fermi_round_trip() {
        let g = Geodesic::of(bp(0.7), bp(2.9), None).unwrap();
        let f = FermiCoords { t: -1.2, r: 0.8 };
        let p = g.point_from_fermi(f).unwrap();
        let back = g.fermi_project(p);
        assert!((back.t - f.t).abs() < 1e-9 && (back.r - f.r).abs() < 1e-9);
    }

    #[test]
    fn fermi_pythagoras() {
        let g = Geodesic::of(bp(0.7), bp(2.9), None).unwrap();
        let f = FermiCoords { t: 1.4, r: -0.9 };
        let p = g.point_from_fermi(f).unwrap();
        let d = dist(g.origin(), p);
        let rhs = (f.t.cosh() * f.r.cosh()).acosh();
        assert!((d - rhs).abs() / rhs < 1e-9);
    }

    #[test]
    fn axis_of_translation_is_real_diameter() {
        let g = Isometry::real_translation(1.7);
        let (axis, ell) = axis_of(&g).unwrap();
        assert!((ell - 1.7).abs() < 1e-12);
        assert!(axis.omega().angular_gap(&bp(0.0)) < 1e-9);
        assert!(axis.alpha().angular_gap(&bp(PI)) < 1e-9);
    }

    #[test]
    fn axis_of_rotation_fails() {
        let e = axis_of(&Isometry::rotation(0.8));
        assert!(matches!(e, Err(GeomError::NotLoxodromic(_))));
    }

    #[test]
    fn cross_angle_diameters() {
        let g1 = Geodesic::of(bp(PI), bp(0.0), None).unwrap();
        let g2 = Geodesic::of(bp(-PI / 2.0), bp(PI / 2.0), None).unwrap();
        let (p, ang) = cross_angle(&g1, &g2).unwrap();
        assert!(p.coord().norm() < 1e-12);
        assert!((ang - PI / 2.0).abs() < 1e-12);
        assert!(cross_angle(&g1, &g1).is_none());
    }

    #[test]
    fn cross_angle_non_interleaved() {
        let g1 = Geodesic::of(bp(0.0), bp(PI), None).unwrap();
        let g2 = Geodesic::of(bp(PI / 4.0), bp(PI / 2.0), None).unwrap();
        assert!(cross_angle(&g1, &g2).is_none());
    }

    #[test]
    fn through_matches_tangent() {
        let p = DiskPoint::from_xy(0.2, -0.3).unwrap();
        let g = Geodesic::through(p, 1.1);
        assert!((g.origin().coord() - p.coord()).norm() < 1e-14);
        let dir = g.tangent_at(0.0).unwrap();
        assert!((dir - 1.1).abs() < 1e-10, "{dir}");
        // walking then projecting returns t = step
        let w = g.point_at(0.4).unwrap();
        let f = g.fermi_project(w);
        assert!((f.t - 0.4).abs() < 1e-10 && f.r.abs() < 1e-10);
    }
}
