//! Proper rotations of R³ and their action on Kelvin 6-vectors.

use crate::error::Error;

pub type Vec3 = [f64; 3];

pub fn dot3(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross3(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn norm3(a: &Vec3) -> f64 {
    dot3(a, a).sqrt()
}

pub fn normalize3(a: &Vec3) -> Vec3 {
    let n = norm3(a);
    [a[0] / n, a[1] / n, a[2] / n]
}

/// A 3×3 orthonormal matrix with determinant +1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rotation {
    m: [[f64; 3]; 3],
}

impl Rotation {
    pub fn identity() -> Self {
        Rotation {
            m: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
        }
    }

    /// Validates orthonormality (`g gᵀ = 1`) and `det g = 1` within `tol`.
    pub fn from_matrix(m: [[f64; 3]; 3], tol: f64) -> Result<Self, Error> {
        let mut worst = 0.0_f64;
        for i in 0..3 {
            for j in 0..3 {
                let mut s = 0.0;
                for k in 0..3 {
                    s += m[i][k] * m[j][k];
                }
                let expect = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((s - expect).abs());
            }
        }
        if worst > tol {
            return Err(Error::NotARotation {
                reason: format!("g g^T deviates from identity by {worst:e}"),
            });
        }
        let det = det3(&m);
        if (det - 1.0).abs() > tol {
            return Err(Error::NotARotation {
                reason: format!("det g = {det}"),
            });
        }
        Ok(Rotation { m })
    }

    /// Rotation by `angle` around `axis`. Axes with norm below 1e-12 are rejected.
    pub fn from_axis_angle(axis: Vec3, angle: f64) -> Result<Self, Error> {
        let n = norm3(&axis);
        if n < 1e-12 {
            return Err(Error::DegenerateAxis { norm: n });
        }
        let u = [axis[0] / n, axis[1] / n, axis[2] / n];
        let (s, c) = angle.sin_cos();
        let omc = 1.0 - c;
        let m = [
            [
                c + u[0] * u[0] * omc,
                u[0] * u[1] * omc - u[2] * s,
                u[0] * u[2] * omc + u[1] * s,
            ],
            [
                u[1] * u[0] * omc + u[2] * s,
                c + u[1] * u[1] * omc,
                u[1] * u[2] * omc - u[0] * s,
            ],
            [
                u[2] * u[0] * omc - u[1] * s,
                u[2] * u[1] * omc + u[0] * s,
                c + u[2] * u[2] * omc,
            ],
        ];
        Ok(Rotation { m })
    }

    /// Rotation from a (not necessarily unit) quaternion `[w, x, y, z]`.
    pub fn from_quaternion(q: [f64; 4]) -> Result<Self, Error> {
        let n = (q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]).sqrt();
        if n < 1e-12 {
            return Err(Error::DegenerateAxis { norm: n });
        }
        let (w, x, y, z) = (q[0] / n, q[1] / n, q[2] / n, q[3] / n);
        let m = [
            [
                1.0 - 2.0 * (y * y + z * z),
                2.0 * (x * y - w * z),
                2.0 * (x * z + w * y),
            ],
            [
                2.0 * (x * y + w * z),
                1.0 - 2.0 * (x * x + z * z),
                2.0 * (y * z - w * x),
            ],
            [
                2.0 * (x * z - w * y),
                2.0 * (y * z + w * x),
                1.0 - 2.0 * (x * x + y * y),
            ],
        ];
        Ok(Rotation { m })
    }

    /// Unit quaternion `[w, x, y, z]` with `w >= 0`.
    pub fn quaternion(&self) -> [f64; 4] {
        let m = &self.m;
        let tr = m[0][0] + m[1][1] + m[2][2];
        let mut q = if tr > 0.0 {
            let s = (tr + 1.0).sqrt() * 2.0;
            [
                0.25 * s,
                (m[2][1] - m[1][2]) / s,
                (m[0][2] - m[2][0]) / s,
                (m[1][0] - m[0][1]) / s,
            ]
        } else if m[0][0] >= m[1][1] && m[0][0] >= m[2][2] {
            let s = (1.0 + m[0][0] - m[1][1] - m[2][2]).sqrt() * 2.0;
            [
                (m[2][1] - m[1][2]) / s,
                0.25 * s,
                (m[0][1] + m[1][0]) / s,
                (m[0][2] + m[2][0]) / s,
            ]
        } else if m[1][1] >= m[2][2] {
            let s = (1.0 + m[1][1] - m[0][0] - m[2][2]).sqrt() * 2.0;
            [
                (m[0][2] - m[2][0]) / s,
                (m[0][1] + m[1][0]) / s,
                0.25 * s,
                (m[1][2] + m[2][1]) / s,
            ]
        } else {
            let s = (1.0 + m[2][2] - m[0][0] - m[1][1]).sqrt() * 2.0;
            [
                (m[1][0] - m[0][1]) / s,
                (m[0][2] + m[2][0]) / s,
                (m[1][2] + m[2][1]) / s,
                0.25 * s,
            ]
        };
        if q[0] < 0.0 {
            for c in &mut q {
                *c = -*c;
            }
        }
        let n = (q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]).sqrt();
        [q[0] / n, q[1] / n, q[2] / n, q[3] / n]
    }

    /// Builds a rotation whose columns are the given orthonormal frame.
    /// The third column is recomputed as `e1 × e2` so the result is proper.
    pub fn from_frame(e1: Vec3, e2: Vec3) -> Result<Self, Error> {
        let u = normalize3(&e1);
        let mut v = [
            e2[0] - dot3(&e2, &u) * u[0],
            e2[1] - dot3(&e2, &u) * u[1],
            e2[2] - dot3(&e2, &u) * u[2],
        ];
        let nv = norm3(&v);
        if nv < 1e-12 {
            return Err(Error::DegenerateAxis { norm: nv });
        }
        v = [v[0] / nv, v[1] / nv, v[2] / nv];
        let w = cross3(&u, &v);
        Ok(Rotation {
            m: [[u[0], v[0], w[0]], [u[1], v[1], w[1]], [u[2], v[2], w[2]]],
        })
    }

    /// A rotation mapping e3 to the given direction (any fixed choice of
    /// in-plane orientation).
    pub fn aligning_e3_to(dir: Vec3) -> Result<Self, Error> {
        let w = normalize3(&dir);
        // pick the seed axis least aligned with w
        let seed = if w[0].abs() <= w[1].abs() && w[0].abs() <= w[2].abs() {
            [1.0, 0.0, 0.0]
        } else if w[1].abs() <= w[2].abs() {
            [0.0, 1.0, 0.0]
        } else {
            [0.0, 0.0, 1.0]
        };
        let u = normalize3(&cross3(&seed, &w));
        let v = cross3(&w, &u);
        Ok(Rotation {
            m: [[u[0], v[0], w[0]], [u[1], v[1], w[1]], [u[2], v[2], w[2]]],
        })
    }

    pub fn matrix(&self) -> &[[f64; 3]; 3] {
        &self.m
    }

    pub fn transpose(&self) -> Self {
        let m = &self.m;
        Rotation {
            m: [
                [m[0][0], m[1][0], m[2][0]],
                [m[0][1], m[1][1], m[2][1]],
                [m[0][2], m[1][2], m[2][2]],
            ],
        }
    }

    /// Alias for [`Rotation::transpose`].
    pub fn inverse(&self) -> Self {
        self.transpose()
    }

    pub fn apply(&self, v: &Vec3) -> Vec3 {
        let m = &self.m;
        [
            m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
            m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
            m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
        ]
    }

    /// Column `i` of the matrix (image of the i-th basis vector).
    pub fn column(&self, i: usize) -> Vec3 {
        [self.m[0][i], self.m[1][i], self.m[2][i]]
    }

    /// Rotation angle in `[0, π]`.
    pub fn angle(&self) -> f64 {
        let tr = self.m[0][0] + self.m[1][1] + self.m[2][2];
        ((tr - 1.0) / 2.0).clamp(-1.0, 1.0).acos()
    }

    /// Rotation axis for non-identity rotations (sign convention: first
    /// nonzero coordinate positive).
    pub fn axis(&self) -> Option<Vec3> {
        let ang = self.angle();
        if ang < 1e-9 {
            return None;
        }
        let m = &self.m;
        let mut ax = if (std::f64::consts::PI - ang) > 1e-6 {
            [m[2][1] - m[1][2], m[0][2] - m[2][0], m[1][0] - m[0][1]]
        } else {
            // near π: use the dominant column of (g + 1)/2
            let b = [
                [(m[0][0] + 1.0) / 2.0, m[0][1] / 2.0, m[0][2] / 2.0],
                [m[1][0] / 2.0, (m[1][1] + 1.0) / 2.0, m[1][2] / 2.0],
                [m[2][0] / 2.0, m[2][1] / 2.0, (m[2][2] + 1.0) / 2.0],
            ];
            let diag = [b[0][0], b[1][1], b[2][2]];
            let k = if diag[0] >= diag[1] && diag[0] >= diag[2] {
                0
            } else if diag[1] >= diag[2] {
                1
            } else {
                2
            };
            [b[0][k], b[1][k], b[2][k]]
        };
        let n = norm3(&ax);
        if n < 1e-12 {
            return None;
        }
        ax = [ax[0] / n, ax[1] / n, ax[2] / n];
        for c in ax {
            if c.abs() > 1e-9 {
                if c < 0.0 {
                    ax = [-ax[0], -ax[1], -ax[2]];
                }
                break;
            }
        }
        Some(ax)
    }

    /// Frobenius distance to another rotation.
    pub fn distance(&self, other: &Rotation) -> f64 {
        let mut s = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let d = self.m[i][j] - other.m[i][j];
                s += d * d;
            }
        }
        s.sqrt()
    }

    /// The induced orthogonal 6×6 matrix acting on Kelvin vectors of
    /// symmetric second-order tensors.
    pub fn kelvin6(&self) -> [[f64; 6]; 6] {
        use crate::tensor::{KELVIN_PAIRS, SQRT_2};
        let g = &self.m;
        let mut r = [[0.0; 6]; 6];
        for (a, &(i, j)) in KELVIN_PAIRS.iter().enumerate() {
            let wa = if a < 3 { 1.0 } else { SQRT_2 };
            for (b, &(p, q)) in KELVIN_PAIRS.iter().enumerate() {
                r[a][b] = if b < 3 {
                    wa * g[i][p] * g[j][p]
                } else {
                    wa / SQRT_2 * (g[i][p] * g[j][q] + g[i][q] * g[j][p])
                };
            }
        }
        r
    }
}

impl std::ops::Mul for Rotation {
    type Output = Rotation;
    fn mul(self, rhs: Rotation) -> Rotation {
        let mut m = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    m[i][j] += self.m[i][k] * rhs.m[k][j];
                }
            }
        }
        Rotation { m }
    }
}

fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}
