//! Numerical laboratory for rotation theory of surface homeomorphisms on
//! closed hyperbolic surfaces.
//!
//! The crate is organised around the pipeline
//!
//! ```text
//! geom  ->  group  ->  dynamics  ->  estimators  ->  structure
//!                       torus (flat companion)
//! ```
//!
//! * [`geom`] — Poincaré-disk kernel: points, boundary points, scale-factored
//!   isometries, geodesics, Fermi coordinates, Busemann functions.
//! * [`group`] — genus-g Fuchsian surface groups with Dirichlet-domain
//!   reduction, deck cocycles, homology vectors and the intersection form.
//! * [`dynamics`] — equivariant point-push flows (time-1 maps) on the
//!   universal cover and the bundled example scenarios.
//! * [`torus`] — flat-torus companion: the analytic one-fixed-point field,
//!   rotation-vector estimation and cutting sequences.
//! * [`estimators`] — finite-time estimators over sampled orbits: rotation
//!   speed, boundary limits, tracking geodesics, homological rotation
//!   vectors, time cocycle, empirical equidistribution.
//! * [`structure`] — crossing analysis of tracked geodesics, class
//!   partitioning, shape report, and exact rotation polytopes of
//!   homology-labeled transition graphs.

pub mod dynamics;
pub mod estimators;
pub mod geom;
pub mod group;
pub mod structure;
pub mod torus;
