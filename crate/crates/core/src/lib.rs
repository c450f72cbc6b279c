#![allow(clippy::needless_range_loop)]

//! Tensor algebra and symmetry analysis for 3D linear elasticity.
//!
//! The crate is organised around the symmetric 6×6 Kelvin matrix as the
//! canonical representation of an elasticity tensor:
//!
//! * [`tensor`] — fixed-size tensor algebra: Kelvin conversion, rotations,
//!   structured products, contractions, projectors, inversion and spectra;
//! * [`harmonic`] — the two explicit harmonic decompositions (deviatoric /
//!   spherical blocks and totally-symmetric / asymmetric split);
//! * [`covariants`] — covariant extraction and symmetry-class detection for
//!   second- and fourth-order harmonic tensors, pairs and full tensors;
//! * [`clips`] — the clips-product algebra on SO(3) symmetry classes and the
//!   enumeration of structure signatures above orthotropy;
//! * [`exotic`] — the structure catalog, material recognition (UTI, IDTI,
//!   IYTI), normal forms, directional Young's modulus and seeded sampling;
//! * [`projection`] — nearest-tensor projection onto a chosen structure by
//!   optimisation over orientations.
//!
//! ```
//! use exela::exotic::{normal_form, NormalFormKind};
//! use exela::{classify_material, decompose, Scheme};
//!
//! // a transversely isotropic tensor whose deviatoric block is isotropic
//! let c = normal_form(NormalFormKind::Idti, &[350.0, 200.0, 250.0])?;
//! let t = decompose(&c, Scheme::Cghd);
//! assert!(t.h_a.norm() < 1e-9 && t.h4.norm() < 1e-9);
//!
//! let report = classify_material(&c, exela::EPS_SYM)?;
//! assert_eq!(report.matched.unwrap().label(), "O(2)^e_5");
//! # Ok::<(), exela::Error>(())
//! ```

pub mod classes;
pub mod clips;
pub mod covariants;
mod eigen;
pub mod error;
pub mod exotic;
pub mod groups;
pub mod harmonic;
pub mod projection;
pub mod rotation;
mod simplex;
pub mod tensor;

pub use classes::{ClassLabel, ClassSet};
pub use clips::{
    clips_pair, derive_space_classes, enumerate_structures, restricted_clips, StructureSignature,
};
pub use covariants::{
    classify_h2, classify_h4, d2_covariant, geometric_structure, intersect_groups, is_cubic,
    ClassedGroup, GeometricStructure,
};
pub use error::Error;
pub use exotic::{
    catalog, classify_material, inversion_stability, normal_form, sample_random, young_modulus,
    young_surface, ExoticCatalogEntry, Material, MaterialReport, NormalFormKind,
};
pub use harmonic::{
    decompose, reconstruct, split_sym_anti, H2Tensor, H4Tensor, HarmonicTriplet, Scheme,
};
pub use projection::{nearest_in_structure, project_in_frame, ProjectionOptions, ProjectionResult};
pub use rotation::Rotation;
pub use tensor::{ElasticityTensor, FourthOrderTensor, ProductKind, SymTensor2};

/// Default numerical tolerance for equality tests (relative).
pub const EPS_NUM: f64 = 1e-9;

/// Default symmetry-detection tolerance (relative); looser than [`EPS_NUM`]
/// to absorb decomposition roundoff.
pub const EPS_SYM: f64 = 1e-7;
