//! Distance to a structure and nearest-tensor projection.
//!
//! For a fixed frame the tensors realising a catalog entry form a linear
//! subspace (designated covariants vanish, the fourth-order part is confined
//! to the invariant span of the entry's class); projection onto it is
//! orthogonal in the Kelvin inner product. The distance to the structure's
//! orbit closure is then minimised over orientations, parametrised by unit
//! quaternions, with a multistart simplex search.

use crate::classes::ClassLabel;
use crate::covariants::d2_covariant;
use crate::error::Error;
use crate::exotic::{h4_basis, ExoticCatalogEntry};
use crate::harmonic::{decompose, reconstruct, H2Tensor, H4Tensor, HarmonicTriplet, Scheme};
use crate::rotation::Rotation;
use crate::simplex::{nelder_mead, NmOptions};
use crate::tensor::{anti22, box_prod, dyad, sym4, ElasticityTensor, SymTensor2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;

/// Options for the orientation search.
#[derive(Clone, Copy, Debug)]
pub struct ProjectionOptions {
    /// Number of starts (half covariant-frame seeded, half random).
    pub starts: usize,
    /// Iteration budget per start.
    pub max_iters: usize,
    /// Simplex-diameter convergence threshold.
    pub tol: f64,
    /// Seed for the random starts.
    pub seed: u64,
}

impl Default for ProjectionOptions {
    fn default() -> Self {
        ProjectionOptions {
            starts: 16,
            max_iters: 2000,
            tol: 1e-10,
            seed: 0,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct StartDiagnostic {
    pub start: usize,
    pub iterations: usize,
    pub converged: bool,
    pub distance: f64,
}

/// Result of a nearest-tensor search.
#[derive(Clone, Debug)]
pub struct ProjectionResult {
    pub nearest: ElasticityTensor,
    pub rotation: Rotation,
    pub distance: f64,
    pub diagnostics: Vec<StartDiagnostic>,
}

// ---------------------------------------------------------------------------
// Fixed-frame projection
// ---------------------------------------------------------------------------

enum H2Proj {
    Zero,
    /// Axisymmetric part about e3.
    Axisym,
}

enum H4Proj {
    Zero,
    Span(&'static [ElasticityTensor]),
}

struct FrameProjector {
    h_a: H2Proj,
    h_b: H2Proj,
    h4: H4Proj,
}

fn unit_ti_h2() -> SymTensor2 {
    let d = SymTensor2::diag(-1.0, -1.0, 2.0);
    d * (1.0 / d.norm())
}

fn span_for(class: ClassLabel, overall: ClassLabel) -> Result<H4Proj, Error> {
    use ClassLabel::*;
    static TI: OnceLock<Vec<ElasticityTensor>> = OnceLock::new();
    static D4SPAN: OnceLock<Vec<ElasticityTensor>> = OnceLock::new();
    static D3SPAN: OnceLock<Vec<ElasticityTensor>> = OnceLock::new();
    static CUBIC: OnceLock<Vec<ElasticityTensor>> = OnceLock::new();
    static CUBIC_DIAG: OnceLock<Vec<ElasticityTensor>> = OnceLock::new();
    let b = h4_basis();
    Ok(match class {
        So3 => H4Proj::Zero,
        O2 => H4Proj::Span(TI.get_or_init(|| vec![b.ti])),
        Dihedral(4) => H4Proj::Span(D4SPAN.get_or_init(|| vec![b.ti, b.modes[3].0])),
        Dihedral(3) => H4Proj::Span(D3SPAN.get_or_init(|| vec![b.ti, b.modes[2].0])),
        Octahedral => {
            if overall == Dihedral(3) {
                H4Proj::Span(CUBIC_DIAG.get_or_init(|| vec![b.cubic_diag]))
            } else {
                H4Proj::Span(CUBIC.get_or_init(|| vec![b.cubic]))
            }
        }
        other => return Err(Error::UnsupportedClass(other)),
    })
}

fn projector_for(entry: &ExoticCatalogEntry) -> Result<FrameProjector, Error> {
    use ClassLabel::*;
    if !entry.signature.class.is_high() {
        return Err(Error::UnsupportedClass(entry.signature.class));
    }
    let h2 = |c: ClassLabel| -> Result<H2Proj, Error> {
        match c {
            So3 => Ok(H2Proj::Zero),
            O2 => Ok(H2Proj::Axisym),
            other => Err(Error::UnsupportedClass(other)),
        }
    };
    Ok(FrameProjector {
        h_a: h2(entry.signature.singles[0])?,
        h_b: h2(entry.signature.singles[1])?,
        h4: span_for(entry.signature.singles[2], entry.signature.class)?,
    })
}

fn project_h2(p: &H2Proj, h: &SymTensor2) -> SymTensor2 {
    match p {
        H2Proj::Zero => SymTensor2::zero(),
        H2Proj::Axisym => {
            let u = unit_ti_h2();
            u * h.ddot(&u)
        }
    }
}

fn project_h4(p: &H4Proj, h: &ElasticityTensor) -> ElasticityTensor {
    match p {
        H4Proj::Zero => ElasticityTensor::zero(),
        H4Proj::Span(basis) => {
            let mut acc = ElasticityTensor::zero();
            for u in basis.iter() {
                acc = acc + *u * h.qddot(u);
            }
            acc
        }
    }
}

/// Norms of the scheme's second-order embeddings (`||embed(u)||² / ||u||²`);
/// constant over the harmonic space by equivariance.
fn embed_norms(scheme: Scheme) -> (f64, f64) {
    static CGHD: OnceLock<(f64, f64)> = OnceLock::new();
    static SWHD: OnceLock<(f64, f64)> = OnceLock::new();
    let compute = |scheme: Scheme| {
        let u = unit_ti_h2();
        let one = SymTensor2::identity();
        match scheme {
            Scheme::Cghd => {
                let a = box_prod(&u, &one).norm();
                let b = ((dyad(&u, &one) + dyad(&one, &u)) * (1.0 / 3.0)).norm();
                (a * a, b * b)
            }
            Scheme::Swhd => {
                let a = anti22(&u, &one).norm();
                let b = sym4(&u, &one).norm();
                (a * a, b * b)
            }
        }
    };
    match scheme {
        Scheme::Cghd => *CGHD.get_or_init(|| compute(Scheme::Cghd)),
        Scheme::Swhd => *SWHD.get_or_init(|| compute(Scheme::Swhd)),
    }
}

/// Orthogonal projection (Kelvin inner product) onto the entry's linear
/// subspace in the current frame: designated covariants are zeroed and the
/// fourth-order part is restricted to the class's invariant span. Idempotent
/// and self-adjoint; supported for entries above orthotropy.
pub fn project_in_frame(
    c: &ElasticityTensor,
    entry: &ExoticCatalogEntry,
    scheme: Scheme,
) -> Result<ElasticityTensor, Error> {
    let p = projector_for(entry)?;
    let t = decompose(c, scheme);
    let h_a = project_h2(&p.h_a, t.h_a.tensor());
    let h_b = project_h2(&p.h_b, t.h_b.tensor());
    let h4 = project_h4(&p.h4, t.h4.tensor());
    let projected = HarmonicTriplet::new(
        t.alpha,
        t.beta,
        H2Tensor::dev_of(&h_a),
        H2Tensor::dev_of(&h_b),
        H4Tensor::new_scaled(h4, c.norm()).expect("span combination is harmonic"),
        scheme,
    );
    Ok(reconstruct(&projected))
}

/// Norm of the component removed by the fixed-frame projection, computed in
/// the embedded (Kelvin) metric without reconstructing the tensor.
fn removed_norm(c: &ElasticityTensor, p: &FrameProjector, scheme: Scheme) -> f64 {
    let (ca, cb) = embed_norms(scheme);
    let t = decompose(c, scheme);
    let da = (*t.h_a.tensor() - project_h2(&p.h_a, t.h_a.tensor())).norm();
    let db = (*t.h_b.tensor() - project_h2(&p.h_b, t.h_b.tensor())).norm();
    let dh = (*t.h4.tensor() - project_h4(&p.h4, t.h4.tensor())).norm();
    (ca * da * da + cb * db * db + dh * dh).sqrt()
}

// ---------------------------------------------------------------------------
// Orientation search
// ---------------------------------------------------------------------------

fn frame_permutations(frame: &Rotation) -> [Rotation; 3] {
    let c0 = frame.column(0);
    let c1 = frame.column(1);
    let c2 = frame.column(2);
    [
        *frame,
        Rotation::from_frame(c1, c2).unwrap_or(*frame),
        Rotation::from_frame(c2, c0).unwrap_or(*frame),
    ]
}

/// Start orientations for the search:
///
/// * eigenframes of the block-scheme covariants, with column permutations so
///   each candidate axis visits e3 and in-plane offsets so dihedral
///   secondary axes are reachable from at least one seed;
/// * for targets with a cubic fourth-order slot, the quartic-axis frame of
///   the covariant composed with every octahedral representative (the cube's
///   discrete frame ambiguity);
/// * seeded random quaternions.
fn starting_points(
    c: &ElasticityTensor,
    entry: &ExoticCatalogEntry,
    opts: &ProjectionOptions,
) -> Vec<[f64; 4]> {
    use std::f64::consts::PI;
    let t = decompose(c, Scheme::Cghd);
    let mut frames: Vec<Rotation> = vec![Rotation::identity()];
    let scale = c.norm().max(f64::MIN_POSITIVE);
    let azimuths = [0.0, PI / 6.0, PI / 3.0];

    let mut push_eigenframes = |m: &SymTensor2| {
        if m.norm() > 1e-12 * scale {
            let (_, vecs) = m.eigen();
            let col = |k: usize| [vecs[0][k], vecs[1][k], vecs[2][k]];
            if let Ok(f) = Rotation::from_frame(col(0), col(1)) {
                for p in frame_permutations(&f) {
                    for az in azimuths {
                        let spin = Rotation::from_axis_angle([0.0, 0.0, 1.0], az).unwrap();
                        frames.push(p * spin);
                    }
                }
            }
        }
    };
    push_eigenframes(t.h_a.tensor());
    push_eigenframes(t.h_b.tensor());
    let (d2, _) = d2_covariant(&t.h4);
    push_eigenframes(&d2.dev());

    if entry.signature.singles[2] == ClassLabel::Octahedral && t.h4.norm() > 1e-12 * scale {
        if let Ok(cube) = crate::covariants::cubic_frame_estimate(&t.h4) {
            let reference = if entry.signature.class == ClassLabel::Dihedral(3) {
                crate::exotic::diag_cube_rotation()
            } else {
                Rotation::identity()
            };
            let rt = reference.transpose();
            for o in crate::groups::octahedral_elements() {
                frames.push(cube * o * rt);
            }
        }
    }

    // dedup (quaternions up to sign)
    let mut starts: Vec<[f64; 4]> = Vec::new();
    for f in &frames {
        let q = f.quaternion();
        let close = |a: &[f64; 4], b: &[f64; 4]| {
            let dot: f64 = a.iter().zip(b.iter()).map(|(x, y)| x * y).sum();
            dot.abs() > 1.0 - 1e-6
        };
        if !starts.iter().any(|s| close(s, &q)) {
            starts.push(q);
        }
        if starts.len() >= 56 {
            break;
        }
    }

    let randoms = (opts.starts / 2).max(4);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..randoms {
        loop {
            let q = [
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            ];
            let n: f64 = q.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n > 0.1 {
                starts.push([q[0] / n, q[1] / n, q[2] / n, q[3] / n]);
                break;
            }
        }
    }
    starts
}

/// Minimises `||C − g ⋆ P(g⁻¹ ⋆ C)||` over orientations `g`.
///
/// Returns the global best over all starts (deterministic tie-break by start
/// index). Errors with the best distance found when no start converged
/// within its iteration budget.
pub fn nearest_in_structure(
    c: &ElasticityTensor,
    entry: &ExoticCatalogEntry,
    scheme: Scheme,
    opts: &ProjectionOptions,
) -> Result<ProjectionResult, Error> {
    let p = projector_for(entry)?;
    let objective = |q: &[f64; 4]| -> f64 {
        match Rotation::from_quaternion(*q) {
            Ok(g) => removed_norm(&c.rotate(&g.transpose()), &p, scheme),
            Err(_) => f64::MAX,
        }
    };

    let nm_opts = NmOptions {
        max_iters: opts.max_iters,
        diam_tol: opts.tol,
        stall_tol: 1e-14,
        stall_iters: 25,
    };

    let mut best: Option<(f64, [f64; 4])> = None;
    let mut diagnostics = Vec::with_capacity(opts.starts);
    let mut any_converged = false;
    for (idx, q0) in starting_points(c, entry, opts).into_iter().enumerate() {
        let r = nelder_mead(objective, q0, 0.1, &nm_opts);
        any_converged |= r.converged;
        diagnostics.push(StartDiagnostic {
            start: idx,
            iterations: r.iterations,
            converged: r.converged,
            distance: r.fx,
        });
        if best.is_none_or(|(f, _)| r.fx < f) {
            best = Some((r.fx, r.x));
        }
    }
    let (_, q) = best.expect("at least one start");
    if !any_converged {
        return Err(Error::NoConvergence {
            best: best.unwrap().0,
        });
    }

    let g = Rotation::from_quaternion(q)?;
    let nearest = project_in_frame(&c.rotate(&g.transpose()), entry, scheme)?.rotate(&g);
    let distance = (*c - nearest).norm();
    Ok(ProjectionResult {
        nearest,
        rotation: g,
        distance,
        diagnostics,
    })
}
