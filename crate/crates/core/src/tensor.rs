//! Fixed-size tensor algebra in 3D.
//!
//! Symmetric second-order tensors are stored as full 3×3 matrices; fourth
//! order tensors with minor index symmetries are stored as 6×6 matrices in
//! the Kelvin convention with basis order (11, 22, 33, 23, 13, 12). Rows and
//! columns attached to shear pairs carry a factor √2 relative to index
//! components, which makes the Kelvin matrix an orthonormal representation:
//! inner products, norms, spectra and inverses of tensors coincide with the
//! plain matrix operations on their Kelvin images.

use crate::eigen::jacobi_eigen;
use crate::error::Error;
use crate::rotation::Rotation;

pub const SQRT_2: f64 = std::f64::consts::SQRT_2;

/// Kelvin basis order: the index pair carried by each of the 6 slots.
pub const KELVIN_PAIRS: [(usize, usize); 6] = [(0, 0), (1, 1), (2, 2), (1, 2), (0, 2), (0, 1)];

/// Slot of an (unordered) index pair in the Kelvin basis.
pub const PAIR_SLOT: [[usize; 3]; 3] = [[0, 5, 4], [5, 1, 3], [4, 3, 2]];

#[inline]
fn weight(a: usize) -> f64 {
    if a < 3 {
        1.0
    } else {
        SQRT_2
    }
}

/// Exact Kelvin weight product for an entry: 1, √2 or 2.
#[inline]
fn pair_weight(a: usize, b: usize) -> f64 {
    match (a < 3, b < 3) {
        (true, true) => 1.0,
        (false, false) => 2.0,
        _ => SQRT_2,
    }
}

// ---------------------------------------------------------------------------
// SymTensor2
// ---------------------------------------------------------------------------

/// A symmetric second-order tensor on R³.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymTensor2 {
    m: [[f64; 3]; 3],
}

impl SymTensor2 {
    /// Builds from the six independent components (t11, t22, t33, t23, t13, t12).
    pub fn new(t11: f64, t22: f64, t33: f64, t23: f64, t13: f64, t12: f64) -> Self {
        SymTensor2 {
            m: [[t11, t12, t13], [t12, t22, t23], [t13, t23, t33]],
        }
    }

    pub fn zero() -> Self {
        SymTensor2 { m: [[0.0; 3]; 3] }
    }

    pub fn identity() -> Self {
        SymTensor2::new(1.0, 1.0, 1.0, 0.0, 0.0, 0.0)
    }

    pub fn diag(a: f64, b: f64, c: f64) -> Self {
        SymTensor2::new(a, b, c, 0.0, 0.0, 0.0)
    }

    /// Symmetric part of an arbitrary 3×3 matrix.
    pub fn sym_part(m: &[[f64; 3]; 3]) -> Self {
        let mut s = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                s[i][j] = 0.5 * (m[i][j] + m[j][i]);
            }
        }
        SymTensor2 { m: s }
    }

    /// Outer product `n ⊗ n` of a vector with itself.
    pub fn outer(n: &[f64; 3]) -> Self {
        let mut m = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = n[i] * n[j];
            }
        }
        SymTensor2 { m }
    }

    pub fn component(&self, i: usize, j: usize) -> f64 {
        self.m[i][j]
    }

    pub fn matrix(&self) -> &[[f64; 3]; 3] {
        &self.m
    }

    /// Kelvin 6-vector (shear entries scaled by √2).
    pub fn kelvin_vector(&self) -> [f64; 6] {
        let mut v = [0.0; 6];
        for (a, &(i, j)) in KELVIN_PAIRS.iter().enumerate() {
            v[a] = weight(a) * self.m[i][j];
        }
        v
    }

    pub fn from_kelvin_vector(v: &[f64; 6]) -> Self {
        let mut m = [[0.0; 3]; 3];
        for (a, &(i, j)) in KELVIN_PAIRS.iter().enumerate() {
            let c = v[a] / weight(a);
            m[i][j] = c;
            m[j][i] = c;
        }
        SymTensor2 { m }
    }

    pub fn trace(&self) -> f64 {
        self.m[0][0] + self.m[1][1] + self.m[2][2]
    }

    /// Deviatoric part.
    pub fn dev(&self) -> Self {
        let t = self.trace() / 3.0;
        let mut m = self.m;
        for (i, row) in m.iter_mut().enumerate() {
            row[i] -= t;
        }
        SymTensor2 { m }
    }

    /// Double contraction `a : b = a_ij b_ij`.
    pub fn ddot(&self, other: &SymTensor2) -> f64 {
        let mut s = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                s += self.m[i][j] * other.m[i][j];
            }
        }
        s
    }

    pub fn norm(&self) -> f64 {
        self.ddot(self).sqrt()
    }

    /// Eigenvalues (ascending) and matching orthonormal eigenvectors as the
    /// columns of the returned matrix.
    pub fn eigen(&self) -> ([f64; 3], [[f64; 3]; 3]) {
        jacobi_eigen(&self.m)
    }

    pub fn rotate(&self, g: &Rotation) -> Self {
        let r = g.matrix();
        let mut gm = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    gm[i][j] += r[i][k] * self.m[k][j];
                }
            }
        }
        let mut out = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    out[i][j] += gm[i][k] * r[j][k];
                }
            }
        }
        SymTensor2::sym_part(&out)
    }
}

impl std::ops::Add for SymTensor2 {
    type Output = SymTensor2;
    fn add(self, rhs: SymTensor2) -> SymTensor2 {
        let mut m = self.m;
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] += rhs.m[i][j];
            }
        }
        SymTensor2 { m }
    }
}

impl std::ops::Sub for SymTensor2 {
    type Output = SymTensor2;
    fn sub(self, rhs: SymTensor2) -> SymTensor2 {
        let mut m = self.m;
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] -= rhs.m[i][j];
            }
        }
        SymTensor2 { m }
    }
}

impl std::ops::Mul<f64> for SymTensor2 {
    type Output = SymTensor2;
    fn mul(self, s: f64) -> SymTensor2 {
        let mut m = self.m;
        for row in &mut m {
            for x in row {
                *x *= s;
            }
        }
        SymTensor2 { m }
    }
}

impl std::ops::Neg for SymTensor2 {
    type Output = SymTensor2;
    fn neg(self) -> SymTensor2 {
        self * -1.0
    }
}

// ---------------------------------------------------------------------------
// FourthOrderTensor (minor symmetries only)
// ---------------------------------------------------------------------------

/// A fourth-order tensor with minor index symmetries, stored as a (possibly
/// non-symmetric) 6×6 Kelvin matrix. Intermediate products live here.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourthOrderTensor {
    k: [[f64; 6]; 6],
}

impl FourthOrderTensor {
    pub fn zero() -> Self {
        FourthOrderTensor { k: [[0.0; 6]; 6] }
    }

    pub fn from_kelvin(k: [[f64; 6]; 6]) -> Self {
        FourthOrderTensor { k }
    }

    /// Builds the Kelvin matrix from an index-component function. The
    /// function must already satisfy the minor symmetries.
    pub fn from_fn(f: impl Fn(usize, usize, usize, usize) -> f64) -> Self {
        let mut k = [[0.0; 6]; 6];
        for (a, &(i, j)) in KELVIN_PAIRS.iter().enumerate() {
            for (b, &(p, q)) in KELVIN_PAIRS.iter().enumerate() {
                k[a][b] = pair_weight(a, b) * f(i, j, p, q);
            }
        }
        FourthOrderTensor { k }
    }

    pub fn kelvin(&self) -> &[[f64; 6]; 6] {
        &self.k
    }

    pub fn component(&self, i: usize, j: usize, p: usize, q: usize) -> f64 {
        let a = PAIR_SLOT[i][j];
        let b = PAIR_SLOT[p][q];
        self.k[a][b] / pair_weight(a, b)
    }

    pub fn transpose(&self) -> Self {
        let mut k = [[0.0; 6]; 6];
        for a in 0..6 {
            for b in 0..6 {
                k[a][b] = self.k[b][a];
            }
        }
        FourthOrderTensor { k }
    }

    /// Double contraction `(A : B)_ijkl = A_ijpq B_pqkl` (Kelvin matrix product).
    pub fn ddot(&self, other: &FourthOrderTensor) -> FourthOrderTensor {
        FourthOrderTensor {
            k: mat6_mul(&self.k, &other.k),
        }
    }

    /// Quadruple contraction `A :: B` (Kelvin Frobenius inner product).
    pub fn qddot(&self, other: &FourthOrderTensor) -> f64 {
        let mut s = 0.0;
        for a in 0..6 {
            for b in 0..6 {
                s += self.k[a][b] * other.k[a][b];
            }
        }
        s
    }

    pub fn norm(&self) -> f64 {
        self.qddot(self).sqrt()
    }

    /// `A : t` (Kelvin matrix–vector product).
    pub fn apply(&self, t: &SymTensor2) -> SymTensor2 {
        let v = t.kelvin_vector();
        let mut out = [0.0; 6];
        for a in 0..6 {
            for b in 0..6 {
                out[a] += self.k[a][b] * v[b];
            }
        }
        SymTensor2::from_kelvin_vector(&out)
    }

    /// Contraction of the first two indices: `(tr₁₂ A)_kl = A_iikl`.
    pub fn tr12(&self) -> SymTensor2 {
        let mut m = [[0.0; 3]; 3];
        for k in 0..3 {
            for l in 0..=k {
                let mut s = 0.0;
                for i in 0..3 {
                    s += self.component(i, i, k, l);
                }
                m[k][l] = s;
                m[l][k] = s;
            }
        }
        SymTensor2 { m }
    }

    /// Contraction of the first and third indices, `(tr₁₃ A)_jl = A_ijil`,
    /// returned as its symmetric part (the contraction itself is symmetric
    /// whenever the source has the major symmetry).
    pub fn tr13(&self) -> SymTensor2 {
        let mut m = [[0.0; 3]; 3];
        for j in 0..3 {
            for l in 0..3 {
                let mut s = 0.0;
                for i in 0..3 {
                    s += self.component(i, j, i, l);
                }
                m[j][l] += s;
            }
        }
        SymTensor2::sym_part(&m)
    }

    /// Full trace `A_iijj`.
    pub fn tr2(&self) -> f64 {
        let mut s = 0.0;
        for a in 0..3 {
            for b in 0..3 {
                s += self.k[a][b];
            }
        }
        s
    }

    /// Major-symmetric part as an elasticity tensor.
    pub fn sym_major(&self) -> ElasticityTensor {
        let mut k = [[0.0; 6]; 6];
        for a in 0..6 {
            for b in 0..6 {
                k[a][b] = 0.5 * (self.k[a][b] + self.k[b][a]);
            }
        }
        ElasticityTensor { k }
    }

    /// Converts into an elasticity tensor, requiring the major symmetry to
    /// hold within `tol` (absolute, per entry).
    pub fn try_into_elasticity(&self, tol: f64) -> Result<ElasticityTensor, Error> {
        for a in 0..6 {
            for b in (a + 1)..6 {
                let delta = (self.k[a][b] - self.k[b][a]).abs();
                if delta > tol {
                    return Err(Error::AsymmetricKelvin {
                        row: a,
                        col: b,
                        delta,
                    });
                }
            }
        }
        Ok(self.sym_major())
    }

    pub fn rotate(&self, g: &Rotation) -> Self {
        let r = g.kelvin6();
        let tmp = mat6_mul(&r, &self.k);
        let mut out = [[0.0; 6]; 6];
        for a in 0..6 {
            for b in 0..6 {
                let mut s = 0.0;
                for c in 0..6 {
                    s += tmp[a][c] * r[b][c];
                }
                out[a][b] = s;
            }
        }
        FourthOrderTensor { k: out }
    }
}

impl std::ops::Add for FourthOrderTensor {
    type Output = FourthOrderTensor;
    fn add(self, rhs: FourthOrderTensor) -> FourthOrderTensor {
        let mut k = self.k;
        for a in 0..6 {
            for b in 0..6 {
                k[a][b] += rhs.k[a][b];
            }
        }
        FourthOrderTensor { k }
    }
}

impl std::ops::Sub for FourthOrderTensor {
    type Output = FourthOrderTensor;
    fn sub(self, rhs: FourthOrderTensor) -> FourthOrderTensor {
        let mut k = self.k;
        for a in 0..6 {
            for b in 0..6 {
                k[a][b] -= rhs.k[a][b];
            }
        }
        FourthOrderTensor { k }
    }
}

impl std::ops::Mul<f64> for FourthOrderTensor {
    type Output = FourthOrderTensor;
    fn mul(self, s: f64) -> FourthOrderTensor {
        let mut k = self.k;
        for row in &mut k {
            for x in row {
                *x *= s;
            }
        }
        FourthOrderTensor { k }
    }
}

impl From<ElasticityTensor> for FourthOrderTensor {
    fn from(c: ElasticityTensor) -> Self {
        FourthOrderTensor { k: c.k }
    }
}

// ---------------------------------------------------------------------------
// ElasticityTensor
// ---------------------------------------------------------------------------

/// A fourth-order tensor with minor and major index symmetries, canonically
/// stored as a symmetric 6×6 Kelvin matrix. Doubles as a compliance tensor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ElasticityTensor {
    k: [[f64; 6]; 6],
}

impl ElasticityTensor {
    pub fn zero() -> Self {
        ElasticityTensor { k: [[0.0; 6]; 6] }
    }

    /// Identity on symmetric second-order tensors.
    pub fn identity() -> Self {
        let mut k = [[0.0; 6]; 6];
        for (i, row) in k.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        ElasticityTensor { k }
    }

    /// Builds from a symmetric Kelvin matrix; asymmetry beyond `tol`
    /// (absolute) is rejected naming the worst entry pair, as are
    /// non-finite entries.
    pub fn from_kelvin(k: [[f64; 6]; 6], tol: f64) -> Result<Self, Error> {
        if k.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("non-finite matrix entry".into()));
        }
        let mut worst = (0usize, 0usize, 0.0f64);
        for a in 0..6 {
            for b in (a + 1)..6 {
                let delta = (k[a][b] - k[b][a]).abs();
                if delta > worst.2 {
                    worst = (a, b, delta);
                }
            }
        }
        if worst.2 > tol {
            return Err(Error::AsymmetricKelvin {
                row: worst.0,
                col: worst.1,
                delta: worst.2,
            });
        }
        let mut sym = k;
        for a in 0..6 {
            for b in (a + 1)..6 {
                let v = 0.5 * (k[a][b] + k[b][a]);
                sym[a][b] = v;
                sym[b][a] = v;
            }
        }
        Ok(ElasticityTensor { k: sym })
    }

    /// Builds from index components, verifying the minor and major index
    /// symmetries exactly; the first violated identity is named.
    pub fn from_components(c: &[[[[f64; 3]; 3]; 3]; 3]) -> Result<Self, Error> {
        if c.iter()
            .flatten()
            .flatten()
            .flatten()
            .any(|v| !v.is_finite())
        {
            return Err(Error::InvalidParameter("non-finite component".into()));
        }
        for i in 0..3 {
            for j in 0..3 {
                for p in 0..3 {
                    for q in 0..3 {
                        if c[i][j][p][q] != c[j][i][p][q] {
                            return Err(Error::AsymmetricComponents {
                                identity: format!(
                                    "C[{}][{}][{}][{}] != C[{}][{}][{}][{}] (minor symmetry, first pair)",
                                    i, j, p, q, j, i, p, q
                                ),
                            });
                        }
                        if c[i][j][p][q] != c[i][j][q][p] {
                            return Err(Error::AsymmetricComponents {
                                identity: format!(
                                    "C[{}][{}][{}][{}] != C[{}][{}][{}][{}] (minor symmetry, second pair)",
                                    i, j, p, q, i, j, q, p
                                ),
                            });
                        }
                        if c[i][j][p][q] != c[p][q][i][j] {
                            return Err(Error::AsymmetricComponents {
                                identity: format!(
                                    "C[{}][{}][{}][{}] != C[{}][{}][{}][{}] (major symmetry)",
                                    i, j, p, q, p, q, i, j
                                ),
                            });
                        }
                    }
                }
            }
        }
        let mut k = [[0.0; 6]; 6];
        for (a, &(i, j)) in KELVIN_PAIRS.iter().enumerate() {
            for (b, &(p, q)) in KELVIN_PAIRS.iter().enumerate() {
                k[a][b] = pair_weight(a, b) * c[i][j][p][q];
            }
        }
        Ok(ElasticityTensor { k })
    }

    pub fn kelvin(&self) -> &[[f64; 6]; 6] {
        &self.k
    }

    pub fn component(&self, i: usize, j: usize, p: usize, q: usize) -> f64 {
        let a = PAIR_SLOT[i][j];
        let b = PAIR_SLOT[p][q];
        self.k[a][b] / pair_weight(a, b)
    }

    /// All 81 index components.
    pub fn components(&self) -> [[[[f64; 3]; 3]; 3]; 3] {
        let mut c = [[[[0.0; 3]; 3]; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                for p in 0..3 {
                    for q in 0..3 {
                        c[i][j][p][q] = self.component(i, j, p, q);
                    }
                }
            }
        }
        c
    }

    /// `C : ε`.
    pub fn apply(&self, e: &SymTensor2) -> SymTensor2 {
        let v = e.kelvin_vector();
        let mut out = [0.0; 6];
        for a in 0..6 {
            for b in 0..6 {
                out[a] += self.k[a][b] * v[b];
            }
        }
        SymTensor2::from_kelvin_vector(&out)
    }

    /// Quadruple contraction `C :: D`.
    pub fn qddot(&self, other: &ElasticityTensor) -> f64 {
        let mut s = 0.0;
        for a in 0..6 {
            for b in 0..6 {
                s += self.k[a][b] * other.k[a][b];
            }
        }
        s
    }

    /// Frobenius norm (equals the tensor norm `sqrt(C :: C)`).
    pub fn norm(&self) -> f64 {
        self.qddot(self).sqrt()
    }

    /// Full trace `C_iijj = 1 : C : 1`.
    pub fn tr2(&self) -> f64 {
        let mut s = 0.0;
        for a in 0..3 {
            for b in 0..3 {
                s += self.k[a][b];
            }
        }
        s
    }

    /// Quartic form `C :: (v ⊗ v ⊗ v ⊗ v)`.
    pub fn quartic_form(&self, v: &[f64; 3]) -> f64 {
        let vv = SymTensor2::outer(v).kelvin_vector();
        let mut s = 0.0;
        for a in 0..6 {
            let mut row = 0.0;
            for b in 0..6 {
                row += self.k[a][b] * vv[b];
            }
            s += vv[a] * row;
        }
        s
    }

    pub fn rotate(&self, g: &Rotation) -> Self {
        let r = g.kelvin6();
        let tmp = mat6_mul(&r, &self.k);
        let mut out = [[0.0; 6]; 6];
        for a in 0..6 {
            for b in 0..=a {
                let mut s = 0.0;
                for c in 0..6 {
                    s += tmp[a][c] * r[b][c];
                }
                out[a][b] = s;
                out[b][a] = s;
            }
        }
        ElasticityTensor { k: out }
    }

    /// Eigenvalues of the Kelvin matrix, ascending.
    pub fn spectrum(&self) -> [f64; 6] {
        jacobi_eigen(&self.k).0
    }

    pub fn eigen(&self) -> ([f64; 6], [[f64; 6]; 6]) {
        jacobi_eigen(&self.k)
    }

    /// Positive definiteness: smallest eigenvalue above `tol * ||C||`.
    pub fn is_positive_definite(&self, tol: f64) -> bool {
        self.spectrum()[0] > tol * self.norm()
    }

    /// Inverse as a linear map on symmetric second-order tensors.
    ///
    /// Rejects matrices whose condition estimate (ratio of extreme singular
    /// values) exceeds 1e12, carrying the smallest singular value.
    pub fn invert(&self) -> Result<Self, Error> {
        let (vals, vecs) = jacobi_eigen(&self.k);
        let smallest = vals.iter().fold(f64::INFINITY, |m, v| m.min(v.abs()));
        let largest = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if smallest == 0.0 || largest / smallest > 1e12 {
            return Err(Error::Singular { smallest });
        }
        let mut k = [[0.0; 6]; 6];
        for a in 0..6 {
            for b in 0..=a {
                let mut s = 0.0;
                for c in 0..6 {
                    s += vecs[a][c] * vecs[b][c] / vals[c];
                }
                k[a][b] = s;
                k[b][a] = s;
            }
        }
        Ok(ElasticityTensor { k })
    }
}

impl std::ops::Add for ElasticityTensor {
    type Output = ElasticityTensor;
    fn add(self, rhs: ElasticityTensor) -> ElasticityTensor {
        let mut k = self.k;
        for a in 0..6 {
            for b in 0..6 {
                k[a][b] += rhs.k[a][b];
            }
        }
        ElasticityTensor { k }
    }
}

impl std::ops::Sub for ElasticityTensor {
    type Output = ElasticityTensor;
    fn sub(self, rhs: ElasticityTensor) -> ElasticityTensor {
        let mut k = self.k;
        for a in 0..6 {
            for b in 0..6 {
                k[a][b] -= rhs.k[a][b];
            }
        }
        ElasticityTensor { k }
    }
}

impl std::ops::Mul<f64> for ElasticityTensor {
    type Output = ElasticityTensor;
    fn mul(self, s: f64) -> ElasticityTensor {
        let mut k = self.k;
        for row in &mut k {
            for x in row {
                *x *= s;
            }
        }
        ElasticityTensor { k }
    }
}

fn mat6_mul(a: &[[f64; 6]; 6], b: &[[f64; 6]; 6]) -> [[f64; 6]; 6] {
    let mut out = [[0.0; 6]; 6];
    for i in 0..6 {
        for k in 0..6 {
            let aik = a[i][k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..6 {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Projectors and structured products
// ---------------------------------------------------------------------------

/// The isotropic projectors `(I, J, K)`: identity, deviatoric and spherical.
///
/// `K = (1/3) 1 ⊗ 1`, `J = I − K`; they satisfy `J + K = I`, `J : K = 0`,
/// `J :: J = 5` and `K :: K = 1`.
pub fn isotropic_projectors() -> (ElasticityTensor, ElasticityTensor, ElasticityTensor) {
    let i = ElasticityTensor::identity();
    let mut kk = [[0.0; 6]; 6];
    for a in 0..3 {
        for b in 0..3 {
            kk[a][b] = 1.0 / 3.0;
        }
    }
    let k = ElasticityTensor { k: kk };
    let j = i - k;
    (i, j, k)
}

/// Isotropic tensor `α J + β K`.
pub fn isotropic(alpha: f64, beta: f64) -> ElasticityTensor {
    let (_, j, k) = isotropic_projectors();
    j * alpha + k * beta
}

/// The structured products between symmetric second-order tensors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductKind {
    /// `(a ⊗ b)_ijkl = a_ij b_kl`
    Dyad,
    /// Totally symmetric product `a ⊗₍₄₎ b`
    Sym4,
    /// Complementary product `a ⊗₍₂,₂₎ b` with vanishing totally symmetric part
    Anti22,
    /// `a ⊠ b`, the harmonic-coupling product
    Box,
    /// `(a ⊗̄ b)_ijkl = (a_ik b_jl + a_il b_jk) / 2`
    KelvinBar,
}

pub fn structured_product(kind: ProductKind, a: &SymTensor2, b: &SymTensor2) -> FourthOrderTensor {
    match kind {
        ProductKind::Dyad => dyad(a, b),
        ProductKind::Sym4 => sym4(a, b),
        ProductKind::Anti22 => anti22(a, b),
        ProductKind::Box => box_prod(a, b),
        ProductKind::KelvinBar => bar_prod(a, b),
    }
}

/// `(a ⊗ b)_ijkl = a_ij b_kl` — outer product of Kelvin vectors.
pub fn dyad(a: &SymTensor2, b: &SymTensor2) -> FourthOrderTensor {
    let va = a.kelvin_vector();
    let vb = b.kelvin_vector();
    let mut k = [[0.0; 6]; 6];
    for p in 0..6 {
        for q in 0..6 {
            k[p][q] = va[p] * vb[q];
        }
    }
    FourthOrderTensor::from_kelvin(k)
}

/// `(a ⊗̄ b)_ijkl = (a_ik b_jl + a_il b_jk) / 2`.
pub fn bar_prod(a: &SymTensor2, b: &SymTensor2) -> FourthOrderTensor {
    let am = a.matrix();
    let bm = b.matrix();
    FourthOrderTensor::from_fn(|i, j, p, q| 0.5 * (am[i][p] * bm[j][q] + am[i][q] * bm[j][p]))
}

/// `a ⊠ b = (6 (a ⊗̄ b + b ⊗̄ a) − 4 (a ⊗ b + b ⊗ a)) / 7`.
pub fn box_prod(a: &SymTensor2, b: &SymTensor2) -> FourthOrderTensor {
    let s = bar_prod(a, b) + bar_prod(b, a);
    let d = dyad(a, b) + dyad(b, a);
    (s * 6.0 - d * 4.0) * (1.0 / 7.0)
}

/// Totally symmetric product
/// `a ⊗₍₄₎ b = (a ⊗ b + b ⊗ a + 2 a ⊗̄ b + 2 b ⊗̄ a) / 6`.
pub fn sym4(a: &SymTensor2, b: &SymTensor2) -> FourthOrderTensor {
    let d = dyad(a, b) + dyad(b, a);
    let s = bar_prod(a, b) + bar_prod(b, a);
    (d + s * 2.0) * (1.0 / 6.0)
}

/// `a ⊗₍₂,₂₎ b = (a ⊗ b + b ⊗ a − a ⊗̄ b − b ⊗̄ a) / 3`; its totally
/// symmetric part vanishes.
pub fn anti22(a: &SymTensor2, b: &SymTensor2) -> FourthOrderTensor {
    let d = dyad(a, b) + dyad(b, a);
    let s = bar_prod(a, b) + bar_prod(b, a);
    (d - s) * (1.0 / 3.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn kelvin_placement_examples() {
        // only C1111 = 1 -> Kelvin (1,1) = 1
        let mut c = [[[[0.0; 3]; 3]; 3]; 3];
        c[0][0][0][0] = 1.0;
        let t = ElasticityTensor::from_components(&c).unwrap();
        assert_eq!(t.kelvin()[0][0], 1.0);
        assert_eq!(t.norm(), 1.0);

        // only C2323 = 1 -> Kelvin (4,4) = 2
        let mut c = [[[[0.0; 3]; 3]; 3]; 3];
        for (i, j, p, q) in [(1, 2, 1, 2), (2, 1, 1, 2), (1, 2, 2, 1), (2, 1, 2, 1)] {
            c[i][j][p][q] = 1.0;
        }
        let t = ElasticityTensor::from_components(&c).unwrap();
        assert_eq!(t.kelvin()[3][3], 2.0);

        // only C1123 = 1 -> Kelvin (1,4) = (4,1) = sqrt(2); C::C matches the
        // squared Frobenius norm of the Kelvin matrix
        let mut c = [[[[0.0; 3]; 3]; 3]; 3];
        for (i, j, p, q) in [(0, 0, 1, 2), (0, 0, 2, 1), (1, 2, 0, 0), (2, 1, 0, 0)] {
            c[i][j][p][q] = 1.0;
        }
        let t = ElasticityTensor::from_components(&c).unwrap();
        approx(t.kelvin()[0][3], SQRT_2, 1e-15);
        approx(t.kelvin()[3][0], SQRT_2, 1e-15);
        let mut qc = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                for p in 0..3 {
                    for q in 0..3 {
                        qc += c[i][j][p][q] * c[i][j][p][q];
                    }
                }
            }
        }
        approx(t.qddot(&t), qc, 1e-14);
    }

    #[test]
    fn asymmetric_components_rejected_with_identity() {
        let mut c = [[[[0.0; 3]; 3]; 3]; 3];
        c[0][1][2][2] = 1.0; // missing the (1,0) partner
        let err = ElasticityTensor::from_components(&c).unwrap_err();
        match err {
            Error::AsymmetricComponents { identity } => {
                assert!(identity.contains("minor symmetry"), "{identity}");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn projector_algebra() {
        let (i, j, k) = isotropic_projectors();
        approx(j.qddot(&j), 5.0, 1e-14);
        approx(k.qddot(&k), 1.0, 1e-14);
        approx(j.qddot(&k), 0.0, 1e-14);
        let sum = j + k;
        approx((sum - i).norm(), 0.0, 1e-15);
        // J : K = 0 as a composition
        let jk = FourthOrderTensor::from(j).ddot(&k.into());
        approx(jk.norm(), 0.0, 1e-15);
    }

    #[test]
    fn one_colon_c_colon_one_for_isotropic() {
        // C = 3K K-proj + 2G J: 1:C:1 = 9K
        let c = isotropic(2.0 * 1.7, 3.0 * 0.9);
        approx(c.tr2(), 9.0 * 0.9, 1e-13);
    }

    #[test]
    fn tr13_of_identity_is_twice_one() {
        let i: FourthOrderTensor = ElasticityTensor::identity().into();
        let t = i.tr13();
        approx((t - SymTensor2::identity() * 2.0).norm(), 0.0, 1e-14);
    }

    #[test]
    fn anti22_identity_formula() {
        // 1 ox(2,2) 1 = (2/3)(1 x 1 - I)
        let one = SymTensor2::identity();
        let lhs = anti22(&one, &one);
        let rhs = (dyad(&one, &one) - ElasticityTensor::identity().into()) * (2.0 / 3.0);
        approx((lhs - rhs).norm(), 0.0, 1e-14);
    }

    #[test]
    fn sym4_unit_quartic_form() {
        let one = SymTensor2::identity();
        let s = sym4(&one, &one);
        for n in [[1.0, 0.0, 0.0], [0.6, 0.8, 0.0], [0.36, 0.48, 0.8]] {
            let nn = SymTensor2::outer(&n);
            let n4 = dyad(&nn, &nn);
            approx(s.qddot(&n4), 1.0, 1e-13);
        }
    }

    #[test]
    fn box_product_component_oracle() {
        // independent index-sum oracle over the definition
        let h = SymTensor2::diag(1.0, 1.0, -2.0);
        let one = SymTensor2::identity();
        let bx = box_prod(&h, &one);
        let hm = h.matrix();
        let om = one.matrix();
        let oracle = |i: usize, j: usize, p: usize, q: usize| -> f64 {
            let bar = |a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]| {
                0.5 * (a[i][p] * b[j][q] + a[i][q] * b[j][p])
            };
            let dy = |a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]| a[i][j] * b[p][q];
            (6.0 * (bar(hm, om) + bar(om, hm)) - 4.0 * (dy(hm, om) + dy(om, hm))) / 7.0
        };
        approx(bx.component(0, 0, 0, 0), 4.0 / 7.0, 1e-15);
        for i in 0..3 {
            for j in 0..3 {
                for p in 0..3 {
                    for q in 0..3 {
                        approx(bx.component(i, j, p, q), oracle(i, j, p, q), 1e-14);
                    }
                }
            }
        }
        // J : (h box 1) : J == h box 1
        let (_, j, _) = isotropic_projectors();
        let j4: FourthOrderTensor = j.into();
        let sandwich = j4.ddot(&bx).ddot(&j4);
        approx((sandwich - bx).norm(), 0.0, 1e-13);
    }

    #[test]
    fn rotate_isotropic_is_identity_map() {
        let c = isotropic(3.4, 5.1);
        let g = Rotation::from_axis_angle([0.3, -1.0, 0.7], 1.9).unwrap();
        approx((c.rotate(&g) - c).norm(), 0.0, 1e-13);
    }

    #[test]
    fn invert_isotropic_and_identity() {
        let c = isotropic(2.0, 5.0);
        let s = c.invert().unwrap();
        approx((s - isotropic(0.5, 0.2)).norm(), 0.0, 1e-13);
        let i = ElasticityTensor::identity();
        approx((i.invert().unwrap() - i).norm(), 0.0, 1e-14);
    }

    #[test]
    fn invert_rejects_singular() {
        let (_, _, k) = isotropic_projectors(); // rank 1
        match k.invert() {
            Err(Error::Singular { smallest }) => assert!(smallest < 1e-12),
            other => panic!("expected singular error, got {other:?}"),
        }
    }

    #[test]
    fn spectrum_of_identity() {
        assert_eq!(ElasticityTensor::identity().spectrum(), [1.0; 6]);
    }

    #[test]
    fn non_finite_entries_rejected() {
        let mut k = [[0.0; 6]; 6];
        k[2][2] = f64::NAN;
        assert!(ElasticityTensor::from_kelvin(k, 1.0).is_err());
        let mut c = [[[[0.0; 3]; 3]; 3]; 3];
        c[0][0][0][0] = f64::INFINITY;
        assert!(ElasticityTensor::from_components(&c).is_err());
    }
}
