//! Explicit harmonic decompositions of elasticity tensors.
//!
//! Two equivariant parametrisations of the same harmonic structure are
//! provided. Both produce a pair of invariants `(α, β)`, two second-order
//! harmonic covariants `(h_a, h_b)` and a fourth-order harmonic covariant
//! `H`; they differ in how the two scalar and the two second-order slots are
//! carved out of the tensor:
//!
//! * [`Scheme::Cghd`] — organised by the deviatoric/spherical block structure
//!   of stress–strain space. `h_b` is the deviatoric/spherical coupling; `α`
//!   and `β` reduce to `2G` and `3K` on isotropic tensors.
//! * [`Scheme::Swhd`] — organised by the totally-symmetric/asymmetric split
//!   of the tensor itself. The Young's-modulus quartic form sees only the
//!   totally symmetric part, i.e. only `(β, h_b, H)`.
//!
//! The fourth-order covariant `H` is identical in both schemes.

use crate::error::Error;
use crate::rotation::Rotation;
use crate::tensor::{
    anti22, box_prod, dyad, isotropic_projectors, sym4, ElasticityTensor, FourthOrderTensor,
    SymTensor2,
};

/// Which explicit decomposition to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Clebsch–Gordan: deviatoric/spherical block parametrisation.
    Cghd,
    /// Schur–Weyl: totally-symmetric/asymmetric parametrisation.
    Swhd,
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scheme::Cghd => write!(f, "cghd"),
            Scheme::Swhd => write!(f, "swhd"),
        }
    }
}

/// Relative window inside which harmonic-invariant violations are treated as
/// roundoff and folded away.
const SCRUB_REL: f64 = 1e-12;

// ---------------------------------------------------------------------------
// Harmonic wrapper types
// ---------------------------------------------------------------------------

/// A second-order harmonic tensor: symmetric and traceless.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct H2Tensor(SymTensor2);

impl H2Tensor {
    pub fn zero() -> Self {
        H2Tensor(SymTensor2::zero())
    }

    /// Wraps a symmetric tensor, requiring `|trace| <= 1e-12 * ||t||`; the
    /// residual trace is folded away.
    pub fn new(t: SymTensor2) -> Result<Self, Error> {
        let tr = t.trace().abs();
        if tr > SCRUB_REL * t.norm().max(f64::MIN_POSITIVE) {
            return Err(Error::NotHarmonic {
                what: "H2 trace",
                residual: tr,
            });
        }
        Ok(H2Tensor(t.dev()))
    }

    /// Deviatoric part of an arbitrary symmetric tensor.
    pub fn dev_of(t: &SymTensor2) -> Self {
        H2Tensor(t.dev())
    }

    pub fn tensor(&self) -> &SymTensor2 {
        &self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn rotate(&self, g: &Rotation) -> Self {
        H2Tensor(self.0.rotate(g))
    }
}

/// A fourth-order harmonic tensor: totally symmetric with vanishing traces.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct H4Tensor(ElasticityTensor);

impl H4Tensor {
    pub fn zero() -> Self {
        H4Tensor(ElasticityTensor::zero())
    }

    /// Wraps a tensor as harmonic, folding in deviations below
    /// `1e-12 * max(||H||, scale)` and rejecting anything larger.
    pub fn new_scaled(t: ElasticityTensor, scale: f64) -> Result<Self, Error> {
        let clean = harmonic_projection(&t);
        let residual = (t - clean).norm();
        if residual > SCRUB_REL * clean.norm().max(scale).max(f64::MIN_POSITIVE) {
            return Err(Error::NotHarmonic {
                what: "H4 symmetry/trace",
                residual,
            });
        }
        Ok(H4Tensor(clean))
    }

    pub fn new(t: ElasticityTensor) -> Result<Self, Error> {
        let scale = t.norm();
        H4Tensor::new_scaled(t, scale)
    }

    pub fn tensor(&self) -> &ElasticityTensor {
        &self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn rotate(&self, g: &Rotation) -> Self {
        H4Tensor(self.0.rotate(g))
    }
}

/// Orthogonal projection of an elasticity tensor onto the harmonic subspace
/// (totally symmetric, traceless).
pub(crate) fn harmonic_projection(t: &ElasticityTensor) -> ElasticityTensor {
    let s = totally_symmetric_part(t);
    let one = SymTensor2::identity();
    let beta = s.tr2() / 5.0;
    let hb = s_tr12(&s).dev() * (6.0 / 7.0);
    let correction = sym4(&hb, &one) + sym4(&one, &one) * beta;
    (FourthOrderTensor::from(s) - correction).sym_major()
}

fn s_tr12(c: &ElasticityTensor) -> SymTensor2 {
    FourthOrderTensor::from(*c).tr12()
}

/// Totally symmetric (index symmetry) part:
/// `Cˢ_ijkl = (C_ijkl + C_ikjl + C_iljk) / 3`.
pub fn totally_symmetric_part(c: &ElasticityTensor) -> ElasticityTensor {
    let comps = c.components();
    FourthOrderTensor::from_fn(|i, j, k, l| {
        (comps[i][j][k][l] + comps[i][k][j][l] + comps[i][l][j][k]) / 3.0
    })
    .sym_major()
}

/// Splits a tensor into its totally symmetric and asymmetric parts
/// `C = Cˢ + Cᵃ`; the two live in orthogonal subspaces.
pub fn split_sym_anti(c: &ElasticityTensor) -> (ElasticityTensor, ElasticityTensor) {
    let cs = totally_symmetric_part(c);
    (cs, *c - cs)
}

// ---------------------------------------------------------------------------
// The triplet record
// ---------------------------------------------------------------------------

/// The result of an explicit harmonic decomposition: two invariants, two
/// second-order covariants, one fourth-order covariant, and the scheme tag.
#[derive(Clone, Copy, Debug)]
pub struct HarmonicTriplet {
    pub alpha: f64,
    pub beta: f64,
    pub h_a: H2Tensor,
    pub h_b: H2Tensor,
    pub h4: H4Tensor,
    scheme: Scheme,
}

impl HarmonicTriplet {
    pub fn new(
        alpha: f64,
        beta: f64,
        h_a: H2Tensor,
        h_b: H2Tensor,
        h4: H4Tensor,
        scheme: Scheme,
    ) -> Self {
        HarmonicTriplet {
            alpha,
            beta,
            h_a,
            h_b,
            h4,
            scheme,
        }
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn rotate(&self, g: &Rotation) -> Self {
        HarmonicTriplet {
            alpha: self.alpha,
            beta: self.beta,
            h_a: self.h_a.rotate(g),
            h_b: self.h_b.rotate(g),
            h4: self.h4.rotate(g),
            scheme: self.scheme,
        }
    }
}

// ---------------------------------------------------------------------------
// decompose / reconstruct
// ---------------------------------------------------------------------------

/// Decomposes an elasticity tensor under the chosen scheme.
pub fn decompose(c: &ElasticityTensor, scheme: Scheme) -> HarmonicTriplet {
    let scale = c.norm();
    match scheme {
        Scheme::Cghd => {
            let (_, j, _) = isotropic_projectors();
            let j4 = FourthOrderTensor::from(j);
            let cdd = j4.ddot(&(*c).into()).ddot(&j4);
            let alpha = cdd.qddot(&j.into()) / 5.0;
            let beta = c.tr2() / 3.0;
            let h_a = H2Tensor::dev_of(&cdd.tr13());
            let h_b = H2Tensor::dev_of(&c.apply(&SymTensor2::identity()));
            let one = SymTensor2::identity();
            let hmat = (cdd - box_prod(h_a.tensor(), &one) - FourthOrderTensor::from(j) * alpha)
                .sym_major();
            let h4 = H4Tensor::new_scaled(hmat, scale).expect("CGHD residual exceeds scrub window");
            HarmonicTriplet::new(alpha, beta, h_a, h_b, h4, scheme)
        }
        Scheme::Swhd => {
            let (cs, ca) = split_sym_anti(c);
            let alpha = ca.tr2() / 4.0;
            let beta = cs.tr2() / 5.0;
            let one = SymTensor2::identity();
            let h_a = H2Tensor::dev_of(&((s_tr12(&ca) - one * (4.0 / 3.0 * alpha)) * 3.0));
            let h_b = H2Tensor::dev_of(&((s_tr12(&cs) - one * (5.0 / 3.0 * beta)) * (6.0 / 7.0)));
            let hmat =
                (FourthOrderTensor::from(cs) - sym4(h_b.tensor(), &one) - sym4(&one, &one) * beta)
                    .sym_major();
            let h4 = H4Tensor::new_scaled(hmat, scale).expect("SWHD residual exceeds scrub window");
            HarmonicTriplet::new(alpha, beta, h_a, h_b, h4, scheme)
        }
    }
}

/// Reassembles the elasticity tensor from a triplet.
pub fn reconstruct(t: &HarmonicTriplet) -> ElasticityTensor {
    let one = SymTensor2::identity();
    match t.scheme {
        Scheme::Cghd => {
            let (_, j, k) = isotropic_projectors();
            let coupling = (dyad(t.h_b.tensor(), &one) + dyad(&one, t.h_b.tensor())) * (1.0 / 3.0);
            (FourthOrderTensor::from(j) * t.alpha
                + FourthOrderTensor::from(k) * t.beta
                + box_prod(t.h_a.tensor(), &one)
                + coupling
                + FourthOrderTensor::from(*t.h4.tensor()))
            .sym_major()
        }
        Scheme::Swhd => (anti22(&one, &one) * t.alpha
            + sym4(&one, &one) * t.beta
            + anti22(t.h_a.tensor(), &one)
            + sym4(t.h_b.tensor(), &one)
            + FourthOrderTensor::from(*t.h4.tensor()))
        .sym_major(),
    }
}

/// Re-expresses a triplet in the other scheme (decompose ∘ reconstruct).
pub fn convert(t: &HarmonicTriplet, scheme: Scheme) -> HarmonicTriplet {
    decompose(&reconstruct(t), scheme)
}
