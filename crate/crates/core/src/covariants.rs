//! Covariant extraction and symmetry-class detection.
//!
//! Detection works on the harmonic covariants: second-order harmonic tensors
//! classify through their eigenvalue pattern, the fourth-order covariant
//! through the second-order covariant `d₂ = tr₁₃(H : H)` followed by a small
//! number of explicit invariance tests. Detected groups carry a concrete
//! adapted frame so they can be intersected.
//!
//! Reliable labels for fourth-order harmonic tensors are exactly
//! `{1, Z2, D2, D3, D4, O(2), O, SO(3)}`; anything outside that list is
//! reported as an ambiguity error rather than guessed.

use crate::classes::ClassLabel;
use crate::error::Error;
use crate::groups::{finite_elements, identify_group};
use crate::harmonic::{decompose, H2Tensor, H4Tensor, Scheme};
use crate::rotation::{cross3, dot3, normalize3, Rotation, Vec3};
use crate::simplex::{nelder_mead, NmOptions};
use crate::tensor::{ElasticityTensor, FourthOrderTensor, SymTensor2};
use std::f64::consts::PI;

// ---------------------------------------------------------------------------
// Classed groups
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
enum GroupRep {
    /// The full rotation group.
    Full,
    /// SO(2) (`flips = false`) or O(2) (`flips = true`) about `axis`.
    Axial { axis: Vec3, flips: bool },
    /// Explicit element list (identity included).
    Finite(Vec<Rotation>),
}

/// A detected symmetry group: class label plus a concrete adapted frame.
/// For axial classes the principal axis is `frame · e3`.
#[derive(Clone, Debug)]
pub struct ClassedGroup {
    pub label: ClassLabel,
    pub frame: Rotation,
    rep: GroupRep,
}

impl ClassedGroup {
    /// Builds the group representation for a label in a given frame.
    pub fn new(label: ClassLabel, frame: Rotation) -> Self {
        let rep = match label {
            ClassLabel::So3 => GroupRep::Full,
            ClassLabel::So2 => GroupRep::Axial {
                axis: frame.column(2),
                flips: false,
            },
            ClassLabel::O2 => GroupRep::Axial {
                axis: frame.column(2),
                flips: true,
            },
            finite => {
                GroupRep::Finite(finite_elements(finite, &frame).expect("finite class label"))
            }
        };
        ClassedGroup { label, frame, rep }
    }

    fn isotropic() -> Self {
        ClassedGroup::new(ClassLabel::So3, Rotation::identity())
    }

    /// Element list for finite groups, for inspection.
    pub fn elements(&self) -> Option<&[Rotation]> {
        match &self.rep {
            GroupRep::Finite(els) => Some(els),
            _ => None,
        }
    }
}

// ---------------------------------------------------------------------------
// d2 covariant
// ---------------------------------------------------------------------------

/// The covariant `d₂ = tr₁₃(H : H)` together with its deviatoric part.
pub fn d2_covariant(h: &H4Tensor) -> (SymTensor2, H2Tensor) {
    let h4: FourthOrderTensor = (*h.tensor()).into();
    let hh = h4.ddot(&h4);
    let d2 = hh.tr13();
    (d2, H2Tensor::dev_of(&d2))
}

// ---------------------------------------------------------------------------
// Second-order classification
// ---------------------------------------------------------------------------

/// Classifies a symmetric second-order tensor by its eigenvalue pattern:
/// zero → SO(3); a double eigenvalue → O(2) about the simple eigenvector;
/// three distinct eigenvalues → D2 in the eigenvector frame. Eigenvalue
/// equality is tested at `tol * ||h||`.
pub fn classify_h2(h: &SymTensor2, tol: f64) -> ClassedGroup {
    let n = h.norm();
    if n == 0.0 {
        return ClassedGroup::isotropic();
    }
    let (vals, vecs) = h.eigen();
    let thresh = tol * n;
    let low = (vals[1] - vals[0]).abs() <= thresh;
    let high = (vals[2] - vals[1]).abs() <= thresh;
    if low && high {
        // a triple eigenvalue with zero trace is the zero tensor
        return ClassedGroup::isotropic();
    }
    let col = |k: usize| [vecs[0][k], vecs[1][k], vecs[2][k]];
    if low || high {
        let axis = if low { col(2) } else { col(0) };
        let frame = Rotation::aligning_e3_to(axis).expect("unit eigenvector");
        return ClassedGroup::new(ClassLabel::O2, frame);
    }
    let frame = Rotation::from_frame(col(0), col(1)).expect("orthonormal eigenvectors");
    ClassedGroup::new(ClassLabel::Dihedral(2), frame)
}

// ---------------------------------------------------------------------------
// Fourth-order classification
// ---------------------------------------------------------------------------

fn rel_residual(h: &ElasticityTensor, g: &Rotation, norm: f64) -> f64 {
    (h.rotate(g) - *h).norm() / norm
}

/// Classifies a fourth-order harmonic tensor.
///
/// Decision tree: a vanishing tensor is isotropic; a spherical `d₂` flags
/// the cubic class (frame recovered by maximising invariance under the
/// octahedral generators over orientations); a transversely isotropic `d₂`
/// fixes an axis that is probed with rotations (an irrational angle
/// certifies O(2), quarter and third turns certify D4 and D3); a fully
/// anisotropic `d₂` is settled by half-turn tests about its eigenvectors.
/// Configurations outside the tree produce an ambiguity error naming both
/// candidates.
pub fn classify_h4(h: &H4Tensor, tol: f64) -> Result<ClassedGroup, Error> {
    let norm = h.norm();
    if norm == 0.0 {
        return Ok(ClassedGroup::isotropic());
    }
    let ht = h.tensor();
    let (d2, d2dev) = d2_covariant(h);
    let d2n = d2.norm();
    if d2dev.norm() <= tol * d2n {
        let frame = cubic_frame(h, tol)?;
        return Ok(ClassedGroup::new(ClassLabel::Octahedral, frame));
    }

    let dev = *d2dev.tensor();
    let devn = dev.norm();
    let (vals, vecs) = dev.eigen();
    let thresh = tol.max(1e-12) * devn;
    let low = (vals[1] - vals[0]).abs() <= thresh;
    let high = (vals[2] - vals[1]).abs() <= thresh;
    let col = |k: usize| [vecs[0][k], vecs[1][k], vecs[2][k]];

    if low || high {
        // transversely isotropic d2: probe rotations about the simple axis
        let axis = if low { col(2) } else { col(0) };
        let probe = |angle: f64| {
            let g = Rotation::from_axis_angle(axis, angle).unwrap();
            rel_residual(ht, &g, norm) <= tol
        };
        let third = probe(2.0 * PI / 3.0);
        let quarter = probe(PI / 2.0);
        let fifth = probe(PI / 5.0);
        let irrational = probe(1.0);
        if third && quarter && fifth && irrational {
            let frame = Rotation::aligning_e3_to(axis).expect("unit axis");
            return Ok(ClassedGroup::new(ClassLabel::O2, frame));
        }
        if third && quarter {
            return Err(Error::AmbiguousClass {
                first: ClassLabel::O2,
                second: ClassLabel::Dihedral(4),
            });
        }
        if quarter {
            let frame = secondary_axis_frame(ht, norm, axis, 4, tol)?;
            return Ok(ClassedGroup::new(ClassLabel::Dihedral(4), frame));
        }
        if third {
            let frame = secondary_axis_frame(ht, norm, axis, 3, tol)?;
            return Ok(ClassedGroup::new(ClassLabel::Dihedral(3), frame));
        }
        // the in-plane eigenvectors are undetermined, so a half-turn in the
        // degenerate plane cannot be located reliably
        return Err(Error::AmbiguousClass {
            first: ClassLabel::Dihedral(2),
            second: ClassLabel::Cyclic(2),
        });
    }

    // generic d2: test half-turns about the three eigenvector axes
    let axes = [col(0), col(1), col(2)];
    let mut inv = [false; 3];
    for (k, ax) in axes.iter().enumerate() {
        let g = Rotation::from_axis_angle(*ax, PI).unwrap();
        inv[k] = rel_residual(ht, &g, norm) <= tol;
    }
    match inv.iter().filter(|&&b| b).count() {
        3 => {
            let frame = Rotation::from_frame(axes[0], axes[1]).expect("eigenframe");
            Ok(ClassedGroup::new(ClassLabel::Dihedral(2), frame))
        }
        1 => {
            let axis = axes[inv.iter().position(|&b| b).unwrap()];
            let frame = Rotation::aligning_e3_to(axis).expect("unit axis");
            Ok(ClassedGroup::new(ClassLabel::Cyclic(2), frame))
        }
        0 => {
            let frame = Rotation::from_frame(axes[0], axes[1]).expect("eigenframe");
            Ok(ClassedGroup::new(ClassLabel::Triclinic, frame))
        }
        _ => Err(Error::AmbiguousClass {
            first: ClassLabel::Dihedral(2),
            second: ClassLabel::Cyclic(2),
        }),
    }
}

fn quartic(h: &ElasticityTensor, v: &Vec3) -> f64 {
    h.quartic_form(v)
}

fn cubic_frame(h: &H4Tensor, tol: f64) -> Result<Rotation, Error> {
    let ht = h.tensor();
    let norm = h.norm();
    let frame = cubic_frame_estimate(h)?;
    let gens = [
        Rotation::from_axis_angle([0.0, 0.0, 1.0], PI / 2.0).unwrap(),
        Rotation::from_axis_angle([1.0, 1.0, 1.0], 2.0 * PI / 3.0).unwrap(),
    ];
    let rt = frame.transpose();
    let residual = gens
        .iter()
        .map(|g| rel_residual(ht, &(frame * *g * rt), norm))
        .fold(0.0f64, f64::max);
    if residual > tol {
        return Err(Error::AmbiguousClass {
            first: ClassLabel::Octahedral,
            second: ClassLabel::O2,
        });
    }
    Ok(frame)
}

/// Best-effort adapted frame of a (near-)cubic harmonic tensor.
///
/// The quartic form of a cubic tensor peaks (in magnitude) exactly on the
/// three 4-fold axes, so two axes are located by a scan-and-refine of
/// `|H::v⊗4|`; the frame is then polished by minimising the invariance
/// residual under the two octahedral generators over orientations. No
/// residual check is performed here.
pub(crate) fn cubic_frame_estimate(h: &H4Tensor) -> Result<Rotation, Error> {
    let ht = h.tensor();
    let norm = h.norm();

    // Fibonacci sphere scan for the strongest axis
    let m = 600;
    let golden = PI * (3.0 - 5.0_f64.sqrt());
    let mut best = ([0.0, 0.0, 1.0], f64::NEG_INFINITY);
    for i in 0..m {
        let z = 1.0 - 2.0 * (i as f64 + 0.5) / m as f64;
        let r = (1.0 - z * z).sqrt();
        let phi = golden * i as f64;
        let v = [r * phi.cos(), r * phi.sin(), z];
        let q = quartic(ht, &v).abs();
        if q > best.1 {
            best = (v, q);
        }
    }
    let u1 = refine_axis(ht, best.0);

    // strongest direction on the circle orthogonal to u1
    let p1 = normalize3(&cross3(&u1, &pick_orthogonal_seed(&u1)));
    let p2 = cross3(&u1, &p1);
    let mut best_phi = (0.0, f64::NEG_INFINITY);
    for k in 0..720 {
        let phi = PI * k as f64 / 720.0;
        let v = circ(&p1, &p2, phi);
        let q = quartic(ht, &v).abs();
        if q > best_phi.1 {
            best_phi = (phi, q);
        }
    }
    let r1 = nelder_mead(
        |x: &[f64; 1]| -quartic(ht, &circ(&p1, &p2, x[0])).abs(),
        [best_phi.0],
        0.002,
        &NmOptions::default(),
    );
    let u2 = circ(&p1, &p2, r1.x[0]);

    let frame0 = Rotation::from_frame(u1, u2)?;

    // polish the full frame against the octahedral generators
    let gens = [
        Rotation::from_axis_angle([0.0, 0.0, 1.0], PI / 2.0).unwrap(),
        Rotation::from_axis_angle([1.0, 1.0, 1.0], 2.0 * PI / 3.0).unwrap(),
    ];
    let objective = |q: &[f64; 4]| -> f64 {
        let r = match Rotation::from_quaternion(*q) {
            Ok(r) => r,
            Err(_) => return f64::MAX,
        };
        let rt = r.transpose();
        gens.iter()
            .map(|g| {
                let res = rel_residual(ht, &(r * *g * rt), norm);
                res * res
            })
            .sum()
    };
    let polished = nelder_mead(objective, frame0.quaternion(), 0.02, &NmOptions::default());
    Rotation::from_quaternion(polished.x)
}

fn pick_orthogonal_seed(u: &Vec3) -> Vec3 {
    if u[0].abs() <= u[1].abs() && u[0].abs() <= u[2].abs() {
        [1.0, 0.0, 0.0]
    } else if u[1].abs() <= u[2].abs() {
        [0.0, 1.0, 0.0]
    } else {
        [0.0, 0.0, 1.0]
    }
}

fn circ(p1: &Vec3, p2: &Vec3, phi: f64) -> Vec3 {
    let (s, c) = phi.sin_cos();
    normalize3(&[
        c * p1[0] + s * p2[0],
        c * p1[1] + s * p2[1],
        c * p1[2] + s * p2[2],
    ])
}

fn refine_axis(h: &ElasticityTensor, v0: Vec3) -> Vec3 {
    let seed = pick_orthogonal_seed(&v0);
    let t1 = normalize3(&cross3(&v0, &seed));
    let t2 = cross3(&v0, &t1);
    let f = |x: &[f64; 2]| {
        let v = normalize3(&[
            v0[0] + x[0] * t1[0] + x[1] * t2[0],
            v0[1] + x[0] * t1[1] + x[1] * t2[1],
            v0[2] + x[0] * t1[2] + x[1] * t2[2],
        ]);
        -quartic(h, &v).abs()
    };
    let r = nelder_mead(f, [0.0, 0.0], 0.05, &NmOptions::default());
    normalize3(&[
        v0[0] + r.x[0] * t1[0] + r.x[1] * t2[0],
        v0[1] + r.x[0] * t1[1] + r.x[1] * t2[1],
        v0[2] + r.x[0] * t1[2] + r.x[1] * t2[2],
    ])
}

/// Locates a secondary half-turn axis of a dihedral harmonic tensor in the
/// plane orthogonal to `axis` and assembles the adapted frame.
fn secondary_axis_frame(
    h: &ElasticityTensor,
    norm: f64,
    axis: Vec3,
    n: u32,
    tol: f64,
) -> Result<Rotation, Error> {
    let a = normalize3(&axis);
    let p1 = normalize3(&cross3(&a, &pick_orthogonal_seed(&a)));
    let p2 = cross3(&a, &p1);
    let objective = |phi: f64| {
        let b = circ(&p1, &p2, phi);
        let g = Rotation::from_axis_angle(b, PI).unwrap();
        rel_residual(h, &g, norm)
    };
    let samples = 256;
    let mut best = (0.0, f64::INFINITY);
    for k in 0..samples {
        let phi = PI * k as f64 / samples as f64;
        let r = objective(phi);
        if r < best.1 {
            best = (phi, r);
        }
    }
    let refined = nelder_mead(
        |x: &[f64; 1]| objective(x[0]),
        [best.0],
        0.5 * PI / samples as f64,
        &NmOptions::default(),
    );
    if refined.fx > tol {
        return Err(Error::AmbiguousClass {
            first: ClassLabel::dihedral(n),
            second: ClassLabel::cyclic(n),
        });
    }
    let b = circ(&p1, &p2, refined.x[0]);
    // columns: e1 = secondary axis, e3 = principal axis
    Rotation::from_frame(b, cross3(&a, &b))
}

// ---------------------------------------------------------------------------
// Group intersection
// ---------------------------------------------------------------------------

/// Conjugacy class of the intersection of two detected groups.
///
/// Continuous cases are resolved analytically from the axis geometry; finite
/// cases by matching element lists. The geometric matching tolerance is
/// `sqrt(tol)` (an angular slack still far below the separation of any two
/// distinct group elements).
pub fn intersect_groups(a: &ClassedGroup, b: &ClassedGroup, tol: f64) -> Result<ClassLabel, Error> {
    intersect_full(a, b, tol).map(|g| g.label)
}

pub(crate) fn intersect_full(
    a: &ClassedGroup,
    b: &ClassedGroup,
    tol: f64,
) -> Result<ClassedGroup, Error> {
    let tau = tol.max(1e-14).sqrt();
    match (&a.rep, &b.rep) {
        (GroupRep::Full, _) => Ok(b.clone()),
        (_, GroupRep::Full) => Ok(a.clone()),
        (
            GroupRep::Axial {
                axis: na,
                flips: fa,
            },
            GroupRep::Axial {
                axis: nb,
                flips: fb,
            },
        ) => Ok(intersect_axial(*na, *fa, *nb, *fb, tau)),
        (GroupRep::Axial { axis, flips }, GroupRep::Finite(els))
        | (GroupRep::Finite(els), GroupRep::Axial { axis, flips }) => {
            let common: Vec<Rotation> = els
                .iter()
                .copied()
                .filter(|e| in_axial(e, axis, *flips, tau))
                .collect();
            let (label, frame) = identify_group(&common, tau)?;
            Ok(ClassedGroup::new(label, frame))
        }
        (GroupRep::Finite(ea), GroupRep::Finite(eb)) => {
            let common: Vec<Rotation> = ea
                .iter()
                .copied()
                .filter(|x| eb.iter().any(|y| x.distance(y) < 2.0 * tau))
                .collect();
            let (label, frame) = identify_group(&common, tau)?;
            Ok(ClassedGroup::new(label, frame))
        }
    }
}

fn intersect_axial(na: Vec3, fa: bool, nb: Vec3, fb: bool, tau: f64) -> ClassedGroup {
    let c = dot3(&na, &nb).abs();
    if c > 1.0 - tau * tau / 2.0 {
        // parallel axes
        let label = if fa && fb {
            ClassLabel::O2
        } else {
            ClassLabel::So2
        };
        return ClassedGroup::new(label, Rotation::aligning_e3_to(na).unwrap());
    }
    if c < tau {
        // orthogonal axes
        return match (fa, fb) {
            (true, true) => {
                let frame = Rotation::from_frame(na, nb).unwrap();
                ClassedGroup::new(ClassLabel::Dihedral(2), frame)
            }
            (true, false) => {
                ClassedGroup::new(ClassLabel::Cyclic(2), Rotation::aligning_e3_to(nb).unwrap())
            }
            (false, true) => {
                ClassedGroup::new(ClassLabel::Cyclic(2), Rotation::aligning_e3_to(na).unwrap())
            }
            (false, false) => ClassedGroup::new(ClassLabel::Triclinic, Rotation::identity()),
        };
    }
    // generic relative orientation
    if fa && fb {
        let axis = normalize3(&cross3(&na, &nb));
        ClassedGroup::new(
            ClassLabel::Cyclic(2),
            Rotation::aligning_e3_to(axis).unwrap(),
        )
    } else {
        ClassedGroup::new(ClassLabel::Triclinic, Rotation::identity())
    }
}

fn in_axial(e: &Rotation, axis: &Vec3, flips: bool, tau: f64) -> bool {
    let ang = e.angle();
    if ang < tau {
        return true; // identity
    }
    let ax = match e.axis() {
        Some(a) => a,
        None => return true,
    };
    let c = dot3(&ax, axis).abs();
    if c > 1.0 - tau * tau / 2.0 {
        return true; // rotation about the axis
    }
    if flips && (ang - PI).abs() < tau && c < tau {
        return true; // half-turn about an orthogonal axis
    }
    false
}

// ---------------------------------------------------------------------------
// Geometric structure
// ---------------------------------------------------------------------------

/// The ordered list of symmetry classes attached to a tensor's covariants:
/// three singletons, three pairs, and the triplet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeometricStructure {
    /// `[G_ha], [G_hb], [G_H], [G_(ha,hb)], [G_(ha,H)], [G_(hb,H)], [G_(ha,hb,H)]`
    pub entries: [ClassLabel; 7],
}

impl GeometricStructure {
    pub fn singles(&self) -> [ClassLabel; 3] {
        [self.entries[0], self.entries[1], self.entries[2]]
    }

    pub fn pairs(&self) -> [ClassLabel; 3] {
        [self.entries[3], self.entries[4], self.entries[5]]
    }

    pub fn triplet(&self) -> ClassLabel {
        self.entries[6]
    }
}

impl std::fmt::Display for GeometricStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let e = &self.entries;
        write!(
            f,
            "({}, {}, {}; {}, {}, {}; {})",
            e[0], e[1], e[2], e[3], e[4], e[5], e[6]
        )
    }
}

/// Computes the geometric structure of an elasticity tensor under a scheme.
///
/// Covariants with norm below `tol * ||C||` are treated as vanishing; all
/// finer symmetry tests run at the relative tolerance `tol`.
pub fn geometric_structure(
    c: &ElasticityTensor,
    scheme: Scheme,
    tol: f64,
) -> Result<GeometricStructure, Error> {
    let scale = c.norm();
    if scale == 0.0 {
        return Ok(GeometricStructure {
            entries: [ClassLabel::So3; 7],
        });
    }
    let t = decompose(c, scheme);
    let zero = tol * scale;

    let g_ha = if t.h_a.norm() <= zero {
        ClassedGroup::isotropic()
    } else {
        classify_h2(t.h_a.tensor(), tol)
    };
    let g_hb = if t.h_b.norm() <= zero {
        ClassedGroup::isotropic()
    } else {
        classify_h2(t.h_b.tensor(), tol)
    };
    let g_h4 = if t.h4.norm() <= zero {
        ClassedGroup::isotropic()
    } else {
        classify_h4(&t.h4, tol)?
    };

    let p_ab = intersect_full(&g_ha, &g_hb, tol)?;
    let p_ah = intersect_full(&g_ha, &g_h4, tol)?;
    let p_bh = intersect_full(&g_hb, &g_h4, tol)?;
    let triple = intersect_full(&p_ab, &g_h4, tol)?;

    Ok(GeometricStructure {
        entries: [
            g_ha.label,
            g_hb.label,
            g_h4.label,
            p_ab.label,
            p_ah.label,
            p_bh.label,
            triple.label,
        ],
    })
}

/// Cubic test: both second-order covariants and the deviator of `d₂` vanish
/// while `d₂` itself does not.
pub fn is_cubic(c: &ElasticityTensor, scheme: Scheme, tol: f64) -> bool {
    let scale = c.norm();
    if scale == 0.0 {
        return false;
    }
    let t = decompose(c, scheme);
    if t.h_a.norm() > tol * scale || t.h_b.norm() > tol * scale {
        return false;
    }
    if t.h4.norm() <= tol * scale {
        return false; // isotropic: d2 vanishes
    }
    let (d2, d2dev) = d2_covariant(&t.h4);
    d2dev.norm() <= tol * d2.norm()
}
