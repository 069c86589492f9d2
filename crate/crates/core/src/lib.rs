//! Curvature invariants of surfaces in isotropic 3-space, and the complete
//! family of linear Weingarten surfaces of revolution `K = m0 H + n0`.
//!
//! * [`iso`]: points, i-distance, the motion group, parabolic i-spheres.
//! * [`surface`]: charts, fundamental forms, `(K, H)`, the Weingarten Jacobian
//!   and a finite-difference oracle working from sampled positions.
//! * [`rotational`]: surfaces of revolution over a [`Profile`].
//! * [`lw`]: classification, closed-form profiles, residuals, RK4 integration.
//! * [`mesh`]: tessellation and OBJ / curvature CSV output.
//! * [`verify`]: the seeded property suites run by the command-line tool.
//!
//! Grid and sweep work runs on rayon when the `parallel` feature (on by
//! default) is enabled; results are identical either way.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(a < b)` deliberately rejects NaN

pub mod error;
pub mod iso;
pub mod lw;
pub mod mesh;
pub mod numeric;
pub mod par;
pub mod profile;
pub mod rotational;
pub mod surface;
pub mod verify;

pub use error::{Error, Result};
pub use iso::{apply_motion, compose_motions, i_distance, icircle_curvature, IsoMotion, ParabolicSphere, Point3};
pub use lw::{classify, Branch, CaseTag, LwCase, LwParams};
pub use mesh::{tessellate, write_curvature_csv, write_obj, Mesh};
pub use par::Execution;
pub use profile::{Interval, Profile, Provenance};
pub use rotational::{isometry_check, make_rotational, rotational_curvatures, Orientation, RotationalSurface};
pub use surface::{
    curvatures, fd_oracle_forms, fundamental_forms, parabolic_sphere_surface, weingarten_jacobian, CurvatureConvention,
    CurvatureSample, Domain, FundamentalForms, ParamSurface,
};
