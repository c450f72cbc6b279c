//! Cyclic Jacobi eigen-solver for small symmetric matrices.

/// Eigen-decomposition of a symmetric N×N matrix by cyclic Jacobi sweeps.
///
/// Returns eigenvalues in ascending order together with the matching
/// eigenvectors as columns of an orthogonal matrix. Convergence is declared
/// when the off-diagonal Frobenius norm drops below `1e-13 * ||M||`.
pub fn jacobi_eigen<const N: usize>(m: &[[f64; N]; N]) -> ([f64; N], [[f64; N]; N]) {
    let mut a = *m;
    let mut v = [[0.0; N]; N];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }

    let norm: f64 = m
        .iter()
        .flat_map(|r| r.iter())
        .map(|x| x * x)
        .sum::<f64>()
        .sqrt();
    if norm == 0.0 {
        return ([0.0; N], v);
    }
    let target = 1e-13 * norm;

    for _sweep in 0..64 {
        let off: f64 = {
            let mut s = 0.0;
            for p in 0..N {
                for q in (p + 1)..N {
                    s += a[p][q] * a[p][q];
                }
            }
            (2.0 * s).sqrt()
        };
        if off < target {
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                let apq = a[p][q];
                if apq.abs() < f64::MIN_POSITIVE {
                    continue;
                }
                // Rutishauser rotation
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);

                let app = a[p][p];
                let aqq = a[q][q];
                a[p][p] = app - t * apq;
                a[q][q] = aqq + t * apq;
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for k in 0..N {
                    if k != p && k != q {
                        let akp = a[k][p];
                        let akq = a[k][q];
                        a[k][p] = akp - s * (akq + tau * akp);
                        a[p][k] = a[k][p];
                        a[k][q] = akq + s * (akp - tau * akq);
                        a[q][k] = a[k][q];
                    }
                }
                for row in v.iter_mut() {
                    let vkp = row[p];
                    let vkq = row[q];
                    row[p] = vkp - s * (vkq + tau * vkp);
                    row[q] = vkq + s * (vkp - tau * vkq);
                }
            }
        }
    }

    let mut order: [usize; N] = [0; N];
    for (i, o) in order.iter_mut().enumerate() {
        *o = i;
    }
    order.sort_by(|&i, &j| a[i][i].partial_cmp(&a[j][j]).unwrap());

    let mut vals = [0.0; N];
    let mut vecs = [[0.0; N]; N];
    for (dst, &src) in order.iter().enumerate() {
        vals[dst] = a[src][src];
        for k in 0..N {
            vecs[k][dst] = v[k][src];
        }
    }
    (vals, vecs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_matrix_is_fixed_point() {
        let m = [[3.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 2.0]];
        let (vals, _) = jacobi_eigen(&m);
        assert_eq!(vals, [-1.0, 2.0, 3.0]);
    }

    #[test]
    fn reconstructs_matrix() {
        let m = [
            [4.0, 1.0, -2.0, 0.5],
            [1.0, 3.0, 0.0, 1.5],
            [-2.0, 0.0, 1.0, 0.25],
            [0.5, 1.5, 0.25, -2.0],
        ];
        let (vals, vecs) = jacobi_eigen(&m);
        // V diag(vals) V^T == m
        for i in 0..4 {
            for j in 0..4 {
                let mut s = 0.0;
                for k in 0..4 {
                    s += vecs[i][k] * vals[k] * vecs[j][k];
                }
                assert!((s - m[i][j]).abs() < 1e-12, "({i},{j}): {s}");
            }
        }
        // orthonormal columns
        for p in 0..4 {
            for q in 0..4 {
                let dot: f64 = (0..4).map(|k| vecs[k][p] * vecs[k][q]).sum();
                let expect = if p == q { 1.0 } else { 0.0 };
                assert!((dot - expect).abs() < 1e-13);
            }
        }
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn zero_matrix() {
        let (vals, vecs) = jacobi_eigen(&[[0.0; 6]; 6]);
        assert_eq!(vals, [0.0; 6]);
        assert_eq!(vecs[0][0], 1.0);
    }
}
