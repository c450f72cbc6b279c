//! The structure catalog, material-level recognition, normal forms,
//! directional Young's modulus and seeded sampling.
//!
//! Three named materials attach to exotic transversely isotropic rows:
//!
//! * UTI — uncoupled transverse isotropy: the deviatoric/spherical coupling
//!   covariant of the stiffness vanishes (`h_b = 0` in the block scheme);
//! * IDTI — transverse isotropy with isotropic deviatoric elasticity
//!   (`h_a = H = 0` in the block scheme);
//! * IYTI — transverse isotropy with isotropic directional Young's modulus:
//!   the totally-symmetric-scheme covariants `h_b` and `H` of the
//!   *compliance* vanish.

use crate::classes::ClassLabel;
use crate::clips::{enumerate_structures, StructureSignature};
use crate::covariants::{d2_covariant, geometric_structure, GeometricStructure};
use crate::error::Error;
use crate::harmonic::{decompose, reconstruct, H2Tensor, H4Tensor, HarmonicTriplet, Scheme};
use crate::rotation::{cross3, normalize3, Rotation};
use crate::tensor::{ElasticityTensor, SymTensor2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::sync::OnceLock;

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

/// Named exotic materials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Material {
    Uti,
    Idti,
    Iyti,
}

impl std::fmt::Display for Material {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Material::Uti => write!(f, "UTI"),
            Material::Idti => write!(f, "IDTI"),
            Material::Iyti => write!(f, "IYTI"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryKind {
    Generic,
    Exotic(u8),
}

/// One catalog row: a structure signature with its label and, where one
/// exists, the attached material name.
#[derive(Clone, Copy, Debug)]
pub struct ExoticCatalogEntry {
    pub index: usize,
    pub signature: StructureSignature,
    pub kind: EntryKind,
    /// Material names are scheme-bound: UTI and IDTI read the block scheme
    /// of the stiffness, IYTI the totally-symmetric scheme of the compliance.
    pub material: Option<Material>,
    /// Number of degenerate slots relative to the generic row of the class.
    pub degeneracy: u8,
}

impl ExoticCatalogEntry {
    pub fn class(&self) -> ClassLabel {
        self.signature.class
    }

    pub fn is_generic(&self) -> bool {
        self.kind == EntryKind::Generic
    }

    /// Text label, e.g. `O(2)^g` or `D4^e_3`.
    pub fn label(&self) -> String {
        match self.kind {
            EntryKind::Generic => format!("{}^g", self.signature.class),
            EntryKind::Exotic(k) => format!("{}^e_{}", self.signature.class, k),
        }
    }
}

fn generic_low_signature(class: ClassLabel) -> StructureSignature {
    use ClassLabel::*;
    let d2 = Dihedral(2);
    match class {
        Dihedral(2) => StructureSignature {
            class,
            singles: [d2, d2, d2],
            pairs: [d2, d2, d2],
        },
        Cyclic(2) => StructureSignature {
            class,
            singles: [d2, d2, Cyclic(2)],
            pairs: [Cyclic(2), Cyclic(2), Cyclic(2)],
        },
        Triclinic => StructureSignature {
            class,
            singles: [d2, d2, Triclinic],
            pairs: [Triclinic, Triclinic, Triclinic],
        },
        _ => unreachable!(),
    }
}

/// The full catalog: the generic structure of each of the eight symmetry
/// classes plus the 18 exotic structures above orthotropy — 26 rows.
pub fn catalog() -> &'static [ExoticCatalogEntry] {
    static CATALOG: OnceLock<Vec<ExoticCatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        use ClassLabel::*;
        let mut rows = Vec::with_capacity(26);
        let mut push = |sig: StructureSignature, kind: EntryKind| {
            let degeneracy = match kind {
                EntryKind::Generic => 0,
                EntryKind::Exotic(_) => {
                    let gen = enumerate_structures(sig.class).unwrap()[0];
                    sig.entries()
                        .iter()
                        .zip(gen.entries().iter())
                        .filter(|(a, b)| a != b)
                        .count() as u8
                }
            };
            let material = match (sig.class, kind) {
                (O2, EntryKind::Exotic(2)) => Some(Material::Uti),
                (O2, EntryKind::Exotic(5)) => Some(Material::Idti),
                (O2, EntryKind::Exotic(6)) => Some(Material::Iyti),
                _ => None,
            };
            let index = rows.len();
            rows.push(ExoticCatalogEntry {
                index,
                signature: sig,
                kind,
                material,
                degeneracy,
            });
        };
        for class in [So3, Octahedral, O2, Dihedral(4), Dihedral(3)] {
            let sigs = enumerate_structures(class).unwrap();
            for (k, sig) in sigs.into_iter().enumerate() {
                let kind = if k == 0 {
                    EntryKind::Generic
                } else {
                    EntryKind::Exotic(k as u8)
                };
                push(sig, kind);
            }
        }
        for class in [Dihedral(2), Cyclic(2), Triclinic] {
            push(generic_low_signature(class), EntryKind::Generic);
        }
        rows
    })
}

/// Looks up the catalog row matching a detected geometric structure.
pub fn find_entry(structure: &GeometricStructure) -> Option<&'static ExoticCatalogEntry> {
    let singles = structure.singles();
    let pairs = structure.pairs();
    let class = structure.triplet();
    catalog().iter().find(|e| {
        e.signature.class == class && e.signature.singles == singles && e.signature.pairs == pairs
    })
}

/// Looks up a catalog row by its text label (`D4^e_3`, `O(2)^g`, ...) or by
/// material name (`UTI`, `IDTI`, `IYTI`).
pub fn entry_by_label(label: &str) -> Option<&'static ExoticCatalogEntry> {
    let t = label.trim();
    if let Ok(material) = t.to_ascii_uppercase().parse::<MaterialName>() {
        return catalog().iter().find(|e| e.material == Some(material.0));
    }
    catalog().iter().find(|e| e.label() == t)
}

struct MaterialName(Material);

impl std::str::FromStr for MaterialName {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "UTI" => Ok(MaterialName(Material::Uti)),
            "IDTI" => Ok(MaterialName(Material::Idti)),
            "IYTI" => Ok(MaterialName(Material::Iyti)),
            _ => Err(()),
        }
    }
}

// ---------------------------------------------------------------------------
// Material classification
// ---------------------------------------------------------------------------

/// Relative residual norms of the covariant-vanishing conditions.
#[derive(Clone, Copy, Debug)]
pub struct CovariantResiduals {
    pub cghd_h_a: f64,
    pub cghd_h_b: f64,
    pub swhd_h_a: f64,
    pub swhd_h_b: f64,
    pub h4: f64,
    /// `||dev d2|| / ||d2||` (1 when `d2 = 0`).
    pub d2_dev: f64,
    pub compliance_swhd_h_b: Option<f64>,
    pub compliance_h4: Option<f64>,
}

/// Outcome of material-level classification.
#[derive(Clone, Debug)]
pub struct MaterialReport {
    pub cghd: GeometricStructure,
    pub swhd: GeometricStructure,
    /// Most specific catalog row matched by either scheme.
    pub matched: Option<&'static ExoticCatalogEntry>,
    pub matched_scheme: Option<Scheme>,
    pub material: Option<Material>,
    pub residuals: CovariantResiduals,
    pub positive_definite: bool,
    /// False when the overall class is at or below orthotropy and the
    /// detected structure is outside the enumerated catalog.
    pub in_enumeration_scope: bool,
}

/// Classifies a tensor against the catalog under both schemes, evaluating
/// the covariant-vanishing conditions at the relative tolerance `tol`.
pub fn classify_material(c: &ElasticityTensor, tol: f64) -> Result<MaterialReport, Error> {
    let scale = c.norm().max(f64::MIN_POSITIVE);
    let cghd_t = decompose(c, Scheme::Cghd);
    let swhd_t = decompose(c, Scheme::Swhd);
    let (d2, d2dev) = d2_covariant(&cghd_t.h4);

    let cghd = geometric_structure(c, Scheme::Cghd, tol)?;
    let swhd = geometric_structure(c, Scheme::Swhd, tol)?;

    let inverse = c.invert().ok();
    let compliance_swhd_t = inverse.as_ref().map(|s| decompose(s, Scheme::Swhd));
    let compliance_structure = match &inverse {
        Some(s) => Some(geometric_structure(s, Scheme::Swhd, tol)?),
        None => None,
    };

    let residuals = CovariantResiduals {
        cghd_h_a: cghd_t.h_a.norm() / scale,
        cghd_h_b: cghd_t.h_b.norm() / scale,
        swhd_h_a: swhd_t.h_a.norm() / scale,
        swhd_h_b: swhd_t.h_b.norm() / scale,
        h4: cghd_t.h4.norm() / scale,
        d2_dev: if d2.norm() > 0.0 {
            d2dev.norm() / d2.norm()
        } else {
            1.0
        },
        compliance_swhd_h_b: compliance_swhd_t
            .as_ref()
            .map(|t| t.h_b.norm() * inverse.as_ref().map(|s| 1.0 / s.norm()).unwrap()),
        compliance_h4: compliance_swhd_t
            .as_ref()
            .map(|t| t.h4.norm() * inverse.as_ref().map(|s| 1.0 / s.norm()).unwrap()),
    };

    let m_cghd = find_entry(&cghd);
    let m_swhd = find_entry(&swhd);
    let (matched, matched_scheme) = match (m_cghd, m_swhd) {
        (Some(a), Some(b)) => {
            if b.degeneracy > a.degeneracy {
                (Some(b), Some(Scheme::Swhd))
            } else {
                (Some(a), Some(Scheme::Cghd))
            }
        }
        (Some(a), None) => (Some(a), Some(Scheme::Cghd)),
        (None, Some(b)) => (Some(b), Some(Scheme::Swhd)),
        (None, None) => (None, None),
    };

    // material names: UTI/IDTI on the stiffness block scheme, IYTI on the
    // compliance totally-symmetric scheme
    let mut material = m_cghd.and_then(|e| {
        e.material
            .filter(|m| matches!(m, Material::Uti | Material::Idti))
    });
    if material.is_none() {
        if let Some(cs) = &compliance_structure {
            if let Some(e) = find_entry(cs) {
                if e.material == Some(Material::Iyti) {
                    material = Some(Material::Iyti);
                }
            }
        }
    }

    let in_enumeration_scope = matched.is_some() || cghd.triplet().is_high();
    Ok(MaterialReport {
        cghd,
        swhd,
        matched,
        matched_scheme,
        material,
        residuals,
        positive_definite: c.is_positive_definite(crate::EPS_NUM),
        in_enumeration_scope,
    })
}

// ---------------------------------------------------------------------------
// Normal forms
// ---------------------------------------------------------------------------

/// Normal-form constructors. All parameters are Kelvin matrix entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormalFormKind {
    /// `(k11, k12, k13, k33, k44)`
    Ti,
    /// `(k11, k12, k13, k44)`; `k33 = k11 + k12 - k13`
    Uti,
    /// `(k11, k12, k13)`; `k33 = k11 - 2 k12 + 2 k13`, `k44 = k11 - k12`
    Idti,
    /// `(k11, k12, k13)` read as compliance; `k33 = k11`, `k44 = k11 - k13`
    Iyti,
    /// `(k11, k12, k44)`
    Cubic,
    /// `(k11, k12)`
    Isotropic,
}

impl NormalFormKind {
    pub fn parameter_count(&self) -> usize {
        match self {
            NormalFormKind::Ti => 5,
            NormalFormKind::Uti => 4,
            NormalFormKind::Idti | NormalFormKind::Iyti => 3,
            NormalFormKind::Cubic => 3,
            NormalFormKind::Isotropic => 2,
        }
    }
}

impl std::str::FromStr for NormalFormKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ti" => Ok(NormalFormKind::Ti),
            "uti" => Ok(NormalFormKind::Uti),
            "idti" => Ok(NormalFormKind::Idti),
            "iyti" => Ok(NormalFormKind::Iyti),
            "cubic" => Ok(NormalFormKind::Cubic),
            "isotropic" | "iso" => Ok(NormalFormKind::Isotropic),
            other => Err(Error::InvalidParameter(format!(
                "unknown normal form '{other}'"
            ))),
        }
    }
}

fn ti_like(k11: f64, k12: f64, k13: f64, k33: f64, k44: f64) -> ElasticityTensor {
    let mut k = [[0.0; 6]; 6];
    k[0][0] = k11;
    k[1][1] = k11;
    k[0][1] = k12;
    k[1][0] = k12;
    for (a, b) in [(0, 2), (2, 0), (1, 2), (2, 1)] {
        k[a][b] = k13;
    }
    k[2][2] = k33;
    k[3][3] = k44;
    k[4][4] = k44;
    k[5][5] = k11 - k12;
    ElasticityTensor::from_kelvin(k, 0.0).unwrap()
}

/// Builds the Kelvin normal form of the requested kind from its free
/// parameters. Definiteness is reported by callers, never enforced here.
pub fn normal_form(kind: NormalFormKind, params: &[f64]) -> Result<ElasticityTensor, Error> {
    if params.len() != kind.parameter_count() {
        return Err(Error::InvalidParameter(format!(
            "{kind:?} takes {} parameters, got {}",
            kind.parameter_count(),
            params.len()
        )));
    }
    if params.iter().any(|p| !p.is_finite()) {
        return Err(Error::InvalidParameter("non-finite parameter".into()));
    }
    Ok(match kind {
        NormalFormKind::Ti => ti_like(params[0], params[1], params[2], params[3], params[4]),
        NormalFormKind::Uti => {
            let (k11, k12, k13, k44) = (params[0], params[1], params[2], params[3]);
            ti_like(k11, k12, k13, k11 + k12 - k13, k44)
        }
        NormalFormKind::Idti => {
            let (k11, k12, k13) = (params[0], params[1], params[2]);
            ti_like(k11, k12, k13, k11 - 2.0 * k12 + 2.0 * k13, k11 - k12)
        }
        NormalFormKind::Iyti => {
            let (k11, k12, k13) = (params[0], params[1], params[2]);
            ti_like(k11, k12, k13, k11, k11 - k13)
        }
        NormalFormKind::Cubic => {
            let (k11, k12, k44) = (params[0], params[1], params[2]);
            let mut k = [[0.0; 6]; 6];
            for a in 0..3 {
                for b in 0..3 {
                    k[a][b] = if a == b { k11 } else { k12 };
                }
            }
            for a in 3..6 {
                k[a][a] = k44;
            }
            ElasticityTensor::from_kelvin(k, 0.0).unwrap()
        }
        NormalFormKind::Isotropic => {
            let (k11, k12) = (params[0], params[1]);
            ti_like(k11, k12, k12, k11, k11 - k12)
        }
    })
}

// ---------------------------------------------------------------------------
// Directional Young's modulus
// ---------------------------------------------------------------------------

/// Directional Young's modulus `E(n) = 1 / (S :: n⊗n⊗n⊗n)` of a compliance
/// tensor along the unit direction `n`.
///
/// ```
/// use exela::exotic::{normal_form, young_modulus, NormalFormKind};
///
/// // this compliance family has an isotropic directional modulus
/// let s = normal_form(NormalFormKind::Iyti, &[0.1, -0.02, -0.03])?;
/// let e = young_modulus(&s, &[0.6, 0.0, 0.8])?;
/// assert!((e - 10.0).abs() < 1e-12);
/// # Ok::<(), exela::Error>(())
/// ```
pub fn young_modulus(s: &ElasticityTensor, n: &[f64; 3]) -> Result<f64, Error> {
    let len = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    if (len - 1.0).abs() > 1e-9 {
        return Err(Error::NotUnit(len));
    }
    let q = s.quartic_form(n);
    if q <= 0.0 {
        return Err(Error::IndefiniteCompliance(q));
    }
    Ok(1.0 / q)
}

/// Samples `E` on an equiangular grid: `n_theta` polar values covering
/// `[0, π]` inclusive, `n_phi` azimuthal values covering `[0, 2π)`. Rows are
/// ordered θ-outer.
pub fn young_surface(
    s: &ElasticityTensor,
    n_theta: usize,
    n_phi: usize,
) -> Result<Vec<(f64, f64, f64)>, Error> {
    if n_theta < 2 || n_phi < 2 {
        return Err(Error::InvalidParameter(
            "surface grid needs at least 2 points per direction".into(),
        ));
    }
    let mut out = Vec::with_capacity(n_theta * n_phi);
    for i in 0..n_theta {
        let theta = PI * i as f64 / (n_theta - 1) as f64;
        for j in 0..n_phi {
            let phi = 2.0 * PI * j as f64 / n_phi as f64;
            let n = [
                theta.sin() * phi.cos(),
                theta.sin() * phi.sin(),
                theta.cos(),
            ];
            let n = normalize3(&n);
            out.push((theta, phi, young_modulus(s, &n)?));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Inversion stability
// ---------------------------------------------------------------------------

/// Report on whether a material condition survives tensor inversion.
#[derive(Clone, Debug)]
pub struct StabilityReport {
    pub material: Material,
    /// Condition residual on the input tensor.
    pub residual_before: f64,
    /// The same condition evaluated on the inverse.
    pub residual_after: f64,
    pub stable: bool,
    /// Full classification of the inverse.
    pub compliance: MaterialReport,
}

fn material_residual(c: &ElasticityTensor, material: Material) -> f64 {
    let scale = c.norm().max(f64::MIN_POSITIVE);
    match material {
        Material::Uti => decompose(c, Scheme::Cghd).h_b.norm() / scale,
        Material::Idti => {
            let t = decompose(c, Scheme::Cghd);
            t.h_a.norm().hypot(t.h4.norm()) / scale
        }
        Material::Iyti => {
            let t = decompose(c, Scheme::Swhd);
            t.h_b.norm().hypot(t.h4.norm()) / scale
        }
    }
}

/// Inverts the tensor, re-classifies it, and reports whether the material
/// condition survives.
pub fn inversion_stability(
    c: &ElasticityTensor,
    material: Material,
    tol: f64,
) -> Result<StabilityReport, Error> {
    let residual_before = material_residual(c, material);
    if residual_before > tol {
        return Err(Error::InvalidParameter(format!(
            "tensor does not satisfy the {material} condition (residual {residual_before:e})"
        )));
    }
    let inv = c.invert()?;
    let residual_after = material_residual(&inv, material);
    let compliance = classify_material(&inv, tol)?;
    Ok(StabilityReport {
        material,
        residual_before,
        residual_after,
        stable: residual_after <= tol,
        compliance,
    })
}

// ---------------------------------------------------------------------------
// Canonical fourth-order harmonic basis
// ---------------------------------------------------------------------------

/// Orthonormal basis of the 9-dimensional fourth-order harmonic space,
/// organised by azimuthal mode about e3: one axisymmetric vector and a
/// (cos, sin) pair per mode 1..4, with cos phases aligned to the half-turn
/// about e1. Also carries the cubic directions used by sampling and
/// projection.
pub(crate) struct H4Basis {
    /// m = 0 (axisymmetric about e3)
    pub ti: ElasticityTensor,
    /// (cos, sin) pair per mode m = 1..4, indexed m-1
    pub modes: [(ElasticityTensor, ElasticityTensor); 4],
    /// unit cubic tensor, 4-fold axes on the coordinate axes
    pub cubic: ElasticityTensor,
    /// components of `cubic` on (ti, modes[3].0)
    pub cubic_d4: (f64, f64),
    /// unit cubic tensor rotated so a 3-fold axis lies on e3 and a 2-fold
    /// axis on e1
    pub cubic_diag: ElasticityTensor,
    /// components of `cubic_diag` on (ti, modes[2].0)
    pub cubic_d3: (f64, f64),
}

/// The rotation carrying the standard cube into the frame with the (1,1,1)
/// 3-fold axis on e3 and the (1,-1,0) edge axis on e1.
pub(crate) fn diag_cube_rotation() -> Rotation {
    let diag = normalize3(&[1.0, 1.0, 1.0]);
    let edge = normalize3(&[1.0, -1.0, 0.0]);
    Rotation::from_frame(edge, cross3(&diag, &edge))
        .unwrap()
        .transpose()
}

fn qnorm(c: &ElasticityTensor) -> f64 {
    c.norm()
}

fn unit(c: ElasticityTensor) -> ElasticityTensor {
    let n = qnorm(&c);
    c * (1.0 / n)
}

pub(crate) fn h4_basis() -> &'static H4Basis {
    static BASIS: OnceLock<H4Basis> = OnceLock::new();
    BASIS.get_or_init(|| {
        // generic harmonic seed with content in every mode
        let mut k = [[0.0; 6]; 6];
        let mut v: f64 = 0.11;
        for a in 0..6 {
            for b in a..6 {
                v = (v * 73.0 + 0.19).rem_euclid(1.0) + 0.05;
                k[a][b] = v;
                k[b][a] = v;
            }
        }
        let seed = crate::harmonic::harmonic_projection(
            &ElasticityTensor::from_kelvin(k, f64::INFINITY).unwrap(),
        );

        let nz = 16;
        let rot = |ang: f64| Rotation::from_axis_angle([0.0, 0.0, 1.0], ang).unwrap();
        let flip = Rotation::from_axis_angle([1.0, 0.0, 0.0], PI).unwrap();

        // circular-harmonic extraction about e3
        let fourier = |m: u32| -> ElasticityTensor {
            let mut acc = ElasticityTensor::zero();
            for kk in 0..nz {
                let ang = 2.0 * PI * kk as f64 / nz as f64;
                let w = if m == 0 {
                    1.0 / nz as f64
                } else {
                    2.0 * (m as f64 * ang).cos() / nz as f64
                };
                acc = acc + seed.rotate(&rot(ang)) * w;
            }
            acc
        };

        let ti = unit(fourier(0));
        let mut modes: Vec<(ElasticityTensor, ElasticityTensor)> = Vec::new();
        for m in 1..=4u32 {
            let raw = fourier(m);
            // align the cos phase with the e1 half-turn
            let mut cos_candidate = raw + raw.rotate(&flip);
            if qnorm(&cos_candidate) < 0.5 * qnorm(&raw) {
                let shifted = raw.rotate(&rot(PI / (2.0 * m as f64)));
                cos_candidate = shifted + shifted.rotate(&flip);
            }
            let cosv = unit(cos_candidate);
            let sinv = unit(cosv.rotate(&rot(PI / (2.0 * m as f64))));
            debug_assert!(cosv.qddot(&sinv).abs() < 1e-10);
            debug_assert!((cosv.rotate(&flip) - cosv).norm() < 1e-10);
            modes.push((cosv, sinv));
        }

        let cubic_c = normal_form(NormalFormKind::Cubic, &[3.0, 1.0, 1.5]).unwrap();
        let cubic = unit(*decompose(&cubic_c, Scheme::Cghd).h4.tensor());
        let cubic_d4 = (cubic.qddot(&ti), cubic.qddot(&modes[3].0));

        let cubic_diag = cubic.rotate(&diag_cube_rotation());
        let cubic_d3 = (cubic_diag.qddot(&ti), cubic_diag.qddot(&modes[2].0));
        debug_assert!(
            (cubic_d3.0 * cubic_d3.0 + cubic_d3.1 * cubic_d3.1 - 1.0).abs() < 1e-9,
            "diagonal cube must lie in the (m0, m3c) plane"
        );

        H4Basis {
            ti,
            modes: [modes[0], modes[1], modes[2], modes[3]],
            cubic,
            cubic_d4,
            cubic_diag,
            cubic_d3,
        }
    })
}

// ---------------------------------------------------------------------------
// Seeded sampling
// ---------------------------------------------------------------------------

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

struct Draw<'r>(&'r mut ChaCha8Rng);

impl Draw<'_> {
    fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.0.gen_range(lo..hi)
    }
    /// Magnitude bounded away from zero, random sign: `±[0.2, 1.0]`.
    fn coeff(&mut self) -> f64 {
        let sign = if self.0.gen::<bool>() { 1.0 } else { -1.0 };
        sign * (0.2 + 0.8 * self.0.gen::<f64>())
    }
    fn rotation(&mut self) -> Rotation {
        loop {
            let q = [
                self.uniform(-1.0, 1.0),
                self.uniform(-1.0, 1.0),
                self.uniform(-1.0, 1.0),
                self.uniform(-1.0, 1.0),
            ];
            let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n > 0.1 {
                return Rotation::from_quaternion(q).unwrap();
            }
        }
    }
}

fn unit_ti_h2() -> SymTensor2 {
    // dev(e3 ⊗ e3), normalised
    let d = SymTensor2::diag(-1.0 / 3.0, -1.0 / 3.0, 2.0 / 3.0);
    d * (1.0 / d.norm())
}

/// Draws a traceless diagonal with well-separated eigenvalues.
fn draw_d2_h2(rng: &mut Draw) -> SymTensor2 {
    loop {
        let x = rng.coeff();
        let y = rng.coeff();
        let z = -x - y;
        let m = x.abs().max(y.abs()).max(z.abs());
        if (x - y).abs() > 0.15 * m && (y - z).abs() > 0.15 * m && (x - z).abs() > 0.15 * m {
            let t = SymTensor2::diag(x, y, z);
            return t * (1.0 / t.norm());
        }
    }
}

fn away_from_ray(c1: f64, c2: f64, ray: (f64, f64), margin: f64) -> bool {
    let n = (c1 * c1 + c2 * c2).sqrt();
    if n == 0.0 {
        return false;
    }
    let cosang = (c1 * ray.0 + c2 * ray.1) / n;
    cosang.abs() < (1.0 - margin)
}

/// Draws a fourth-order harmonic part of the requested class in the
/// canonical frame (principal axis e3, secondary axis e1; cubes aligned per
/// the overall class `g`).
fn draw_h4(rng: &mut Draw, class: ClassLabel, g: ClassLabel) -> H4Tensor {
    use ClassLabel::*;
    let basis = h4_basis();
    let t = match class {
        So3 => ElasticityTensor::zero(),
        O2 => basis.ti * rng.coeff(),
        Octahedral => {
            let cube = if g == Dihedral(3) {
                basis.cubic_diag
            } else {
                basis.cubic
            };
            cube * rng.coeff()
        }
        Dihedral(4) => loop {
            let c1 = rng.coeff();
            let c2 = rng.coeff();
            if away_from_ray(c1, c2, basis.cubic_d4, 0.02) {
                break basis.ti * c1 + basis.modes[3].0 * c2;
            }
        },
        Dihedral(3) => loop {
            let c1 = rng.coeff();
            let c2 = rng.coeff();
            if away_from_ray(c1, c2, basis.cubic_d3, 0.02) {
                break basis.ti * c1 + basis.modes[2].0 * c2;
            }
        },
        Dihedral(2) => {
            basis.ti * rng.coeff() + basis.modes[1].0 * rng.coeff() + basis.modes[3].0 * rng.coeff()
        }
        Cyclic(2) => {
            // even modes with deliberately mismatched phases so no in-plane
            // rotation aligns both to a common half-turn axis
            let psi = rng.uniform(0.0, PI);
            let delta = rng.uniform(0.4, PI - 0.4);
            let phi2 = 2.0 * psi;
            let phi4 = 4.0 * psi + delta;
            let m2 = basis.modes[1].0 * phi2.cos() + basis.modes[1].1 * phi2.sin();
            let m4 = basis.modes[3].0 * phi4.cos() + basis.modes[3].1 * phi4.sin();
            basis.ti * rng.coeff() + m2 * rng.coeff() + m4 * rng.coeff()
        }
        Triclinic => {
            let mut acc = basis.ti * rng.coeff();
            for (c, s) in &basis.modes {
                acc = acc + *c * rng.coeff() + *s * rng.coeff();
            }
            acc
        }
        other => panic!("no fourth-order sampler for class {other}"),
    };
    H4Tensor::new_scaled(t, 1.0).expect("basis combination is harmonic")
}

/// Draws a random tensor realising a catalog entry: free parameters from a
/// fixed box (invariants offset to +3 for definiteness, covariant
/// coefficients in ±[0.2, 1]), assembled in the canonical frame, rejected
/// until positive definite, then rotated by a seeded random orientation.
pub fn sample_random(entry: &ExoticCatalogEntry, seed: u64) -> Result<ElasticityTensor, Error> {
    use ClassLabel::*;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fnv1a(entry.label().as_bytes()));
    let mut draw = Draw(&mut rng);
    let [a_cls, b_cls, h_cls] = entry.signature.singles;
    let g = entry.signature.class;

    for _try in 0..1000 {
        let alpha = 3.0 + draw.uniform(-1.0, 1.0);
        let beta = 3.0 + draw.uniform(-1.0, 1.0);

        let h_a = match a_cls {
            So3 => SymTensor2::zero(),
            O2 => unit_ti_h2() * draw.coeff(),
            Dihedral(2) => draw_d2_h2(&mut draw),
            other => return Err(Error::UnsupportedClass(other)),
        };
        let h_b = match b_cls {
            So3 => SymTensor2::zero(),
            O2 => unit_ti_h2() * draw.coeff(),
            Dihedral(2) => {
                let base = draw_d2_h2(&mut draw);
                match g {
                    // orthotropic: shared eigenframe
                    Dihedral(2) => base,
                    // monoclinic: shared e3 eigenvector only
                    Cyclic(2) => {
                        let psi = draw.uniform(0.35, PI / 2.0 - 0.35);
                        base.rotate(&Rotation::from_axis_angle([0.0, 0.0, 1.0], psi).unwrap())
                    }
                    // triclinic: no shared eigenvector
                    Triclinic => {
                        let off =
                            Rotation::from_axis_angle([1.0, 0.6, 0.3], draw.uniform(0.5, 1.2))
                                .unwrap();
                        base.rotate(&off)
                    }
                    other => return Err(Error::UnsupportedClass(other)),
                }
            }
            other => return Err(Error::UnsupportedClass(other)),
        };
        let h4 = draw_h4(&mut draw, h_cls, g);

        let triplet = HarmonicTriplet::new(
            alpha,
            beta,
            H2Tensor::dev_of(&h_a),
            H2Tensor::dev_of(&h_b),
            h4,
            Scheme::Cghd,
        );
        let c = reconstruct(&triplet);
        if c.is_positive_definite(crate::EPS_NUM) {
            let orientation = draw.rotation();
            return Ok(c.rotate(&orientation));
        }
    }
    Err(Error::RejectionBudget { tries: 1000 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::ClassLabel::*;

    const TOL: f64 = 1e-7;

    fn approx(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn catalog_counts() {
        let cat = catalog();
        assert_eq!(cat.len(), 26);
        assert_eq!(cat.iter().filter(|e| e.is_generic()).count(), 8);
        assert_eq!(cat.iter().filter(|e| !e.is_generic()).count(), 18);
        for class in [Dihedral(3), Dihedral(4), O2] {
            assert_eq!(
                cat.iter()
                    .filter(|e| e.class() == class && !e.is_generic())
                    .count(),
                6
            );
        }
        for class in [Octahedral, So3] {
            assert_eq!(
                cat.iter()
                    .filter(|e| e.class() == class && !e.is_generic())
                    .count(),
                0
            );
        }
    }

    #[test]
    fn catalog_named_rows() {
        let uti = entry_by_label("UTI").unwrap();
        assert_eq!(uti.label(), "O(2)^e_2");
        assert_eq!(uti.signature.singles, [O2, So3, O2]);
        assert_eq!(uti.signature.pairs, [O2, O2, O2]);

        let idti = entry_by_label("IDTI").unwrap();
        assert_eq!(idti.label(), "O(2)^e_5");
        assert_eq!(idti.signature.singles, [So3, O2, So3]);

        let iyti = entry_by_label("IYTI").unwrap();
        assert_eq!(iyti.label(), "O(2)^e_6");

        let d3e5 = entry_by_label("D3^e_5").unwrap();
        assert_eq!(d3e5.signature.singles, [So3, O2, Octahedral]);
        assert_eq!(d3e5.signature.pairs, [O2, Octahedral, Dihedral(3)]);

        let so3g = entry_by_label("SO(3)^g").unwrap();
        assert_eq!(so3g.signature.entries(), [So3; 6]);
    }

    #[test]
    fn normal_form_shapes() {
        // IDTI(350, 200, 250): k33 = 450, shear diagonal 150
        let c = normal_form(NormalFormKind::Idti, &[350.0, 200.0, 250.0]).unwrap();
        let k = c.kelvin();
        approx(k[2][2], 450.0, 0.0);
        approx(k[3][3], 150.0, 0.0);
        approx(k[5][5], 150.0, 0.0);

        // IYTI(10, -2, -3): k33 = 10, k44 = 13, k66 = 12
        let s = normal_form(NormalFormKind::Iyti, &[10.0, -2.0, -3.0]).unwrap();
        let k = s.kelvin();
        approx(k[2][2], 10.0, 0.0);
        approx(k[3][3], 13.0, 0.0);
        approx(k[5][5], 12.0, 0.0);

        // UTI(350, 200, 250, 60): rows 1-5 of the uncoupled example, with
        // the in-plane shear entry forced to k11 - k12 = 150
        let u = normal_form(NormalFormKind::Uti, &[350.0, 200.0, 250.0, 60.0]).unwrap();
        let k = u.kelvin();
        approx(k[2][2], 300.0, 0.0);
        approx(k[3][3], 60.0, 0.0);
        approx(k[4][4], 60.0, 0.0);
        approx(k[5][5], 150.0, 0.0);

        assert!(normal_form(NormalFormKind::Uti, &[1.0, 2.0]).is_err());
        assert!(normal_form(NormalFormKind::Ti, &[1.0, 2.0, f64::NAN, 0.0, 1.0]).is_err());
    }

    #[test]
    fn uti_normal_form_checks() {
        let c = normal_form(NormalFormKind::Uti, &[350.0, 200.0, 250.0, 60.0]).unwrap();
        let t = decompose(&c, Scheme::Cghd);
        assert!(t.h_b.norm() < 1e-12);
        // C : 1 proportional to 1
        let c1 = c.apply(&SymTensor2::identity());
        assert!((c1 - SymTensor2::identity() * (c1.trace() / 3.0)).norm() < 1e-12);
    }

    #[test]
    fn idti_deviatoric_isotropy() {
        let c = normal_form(NormalFormKind::Idti, &[350.0, 200.0, 250.0]).unwrap();
        let (_, j, _) = crate::tensor::isotropic_projectors();
        let j4: crate::tensor::FourthOrderTensor = j.into();
        let cdd = j4.ddot(&c.into()).ddot(&j4);
        assert!((cdd - j4 * 150.0).norm() < 1e-12 * c.norm());
    }

    #[test]
    fn young_modulus_basics() {
        // isotropic compliance: E = 1 / S1111 in every direction
        let s = normal_form(NormalFormKind::Isotropic, &[0.01, -0.002]).unwrap();
        let e1 = young_modulus(&s, &[1.0, 0.0, 0.0]).unwrap();
        approx(e1, 100.0, 1e-9);
        let n = normalize3(&[0.3, -0.5, 0.81]);
        approx(young_modulus(&s, &n).unwrap(), e1, 1e-9);

        // TI compliance along e3: E = 1 / S3333
        let ti = normal_form(NormalFormKind::Ti, &[0.02, -0.004, -0.003, 0.015, 0.03]).unwrap();
        approx(
            young_modulus(&ti, &[0.0, 0.0, 1.0]).unwrap(),
            1.0 / 0.015,
            1e-9,
        );

        assert!(matches!(
            young_modulus(&s, &[1.0, 1.0, 0.0]),
            Err(Error::NotUnit(_))
        ));
        let bad = normal_form(NormalFormKind::Isotropic, &[-1.0, 0.0]).unwrap();
        assert!(matches!(
            young_modulus(&bad, &[1.0, 0.0, 0.0]),
            Err(Error::IndefiniteCompliance(_))
        ));
    }

    #[test]
    fn young_surface_shapes() {
        let s = normal_form(NormalFormKind::Isotropic, &[0.01, -0.002]).unwrap();
        let grid = young_surface(&s, 2, 2).unwrap();
        assert_eq!(grid.len(), 4);
        for (_, _, e) in &grid {
            approx(*e, 100.0, 1e-9);
        }
        // generic TI: axisymmetric, E(theta, phi1) = E(theta, phi2)
        let ti = normal_form(NormalFormKind::Ti, &[0.02, -0.004, -0.003, 0.015, 0.03]).unwrap();
        let grid = young_surface(&ti, 5, 8).unwrap();
        for row in grid.chunks(8) {
            for w in row.windows(2) {
                approx(w[0].2, w[1].2, 1e-9 * w[0].2.abs());
            }
        }
        assert!(young_surface(&s, 1, 4).is_err());
    }

    #[test]
    fn h4_basis_is_orthonormal_and_classified() {
        let b = h4_basis();
        let mut all = vec![b.ti];
        for (c, s) in &b.modes {
            all.push(*c);
            all.push(*s);
        }
        for (i, x) in all.iter().enumerate() {
            for (j, y) in all.iter().enumerate() {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((x.qddot(y) - expect).abs() < 1e-9, "({i},{j})");
            }
        }
        // cubic directions are unit and lie in the expected planes
        approx(b.cubic.norm(), 1.0, 1e-12);
        let (c1, c2) = b.cubic_d4;
        approx(c1 * c1 + c2 * c2, 1.0, 1e-9);
    }

    #[test]
    fn sample_deterministic() {
        let uti = entry_by_label("UTI").unwrap();
        let a = sample_random(uti, 42).unwrap();
        let b = sample_random(uti, 42).unwrap();
        assert_eq!(a.kelvin(), b.kelvin());
        let c = sample_random(uti, 43).unwrap();
        assert!((a - c).norm() > 1e-6);
    }

    #[test]
    fn sample_classify_loop_spot() {
        for label in [
            "O(2)^g", "UTI", "IDTI", "D4^e_3", "D3^e_5", "O^g", "D2^g", "1^g",
        ] {
            let entry = entry_by_label(label).unwrap();
            let c = sample_random(entry, 7).unwrap();
            assert!(c.is_positive_definite(1e-9), "{label}");
            let report = classify_material(&c, TOL).unwrap();
            let matched = report
                .matched
                .unwrap_or_else(|| panic!("{label}: no match"));
            assert_eq!(matched.label(), entry.label(), "{label}");
        }
    }

    #[test]
    fn classify_generic_random_is_triclinic() {
        let entry = entry_by_label("1^g").unwrap();
        let c = sample_random(entry, 3).unwrap();
        let report = classify_material(&c, TOL).unwrap();
        assert_eq!(report.cghd.triplet(), Triclinic);
        assert!(!report.cghd.triplet().is_high());
    }

    #[test]
    fn inversion_stability_of_the_three_materials() {
        // UTI: block-diagonal, stable
        let uti = normal_form(NormalFormKind::Uti, &[350.0, 200.0, 250.0, 60.0]).unwrap();
        let r = inversion_stability(&uti, Material::Uti, 1e-9).unwrap();
        assert!(r.stable, "residual after = {}", r.residual_after);

        // IDTI: not preserved; the compliance is TI but fails the condition
        let idti = normal_form(NormalFormKind::Idti, &[350.0, 200.0, 250.0]).unwrap();
        let r = inversion_stability(&idti, Material::Idti, 1e-9).unwrap();
        assert!(!r.stable);
        assert!(r.residual_after > 1e-6);
        assert_eq!(r.compliance.cghd.triplet(), O2);

        // isotropic stays isotropic under any condition set
        let iso = normal_form(NormalFormKind::Isotropic, &[350.0, 200.0]).unwrap();
        let r = inversion_stability(&iso, Material::Uti, 1e-9).unwrap();
        assert!(r.stable);
        assert_eq!(r.compliance.cghd.triplet(), So3);

        // mismatched precondition is rejected
        let ti = normal_form(NormalFormKind::Ti, &[350.0, 200.0, 250.0, 320.0, 100.0]).unwrap();
        assert!(inversion_stability(&ti, Material::Uti, 1e-9).is_err());
    }

    #[test]
    fn classify_material_names() {
        let uti_c = sample_random(entry_by_label("UTI").unwrap(), 11).unwrap();
        let report = classify_material(&uti_c, TOL).unwrap();
        assert_eq!(report.material, Some(Material::Uti));
        assert!(report.positive_definite);

        let idti_c = normal_form(NormalFormKind::Idti, &[350.0, 200.0, 250.0]).unwrap();
        let report = classify_material(&idti_c, TOL).unwrap();
        assert_eq!(report.material, Some(Material::Idti));
        assert!(report.residuals.cghd_h_a < 1e-12);
        assert!(report.residuals.h4 < 1e-12);

        // IYTI stiffness: its compliance satisfies the condition
        let iyti_s = normal_form(NormalFormKind::Iyti, &[0.02, -0.004, -0.006]).unwrap();
        let stiff = iyti_s.invert().unwrap();
        let report = classify_material(&stiff, TOL).unwrap();
        assert_eq!(report.material, Some(Material::Iyti));
    }
}
