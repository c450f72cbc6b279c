#![allow(clippy::needless_range_loop)]

//! Property-style invariants of the tensor algebra and the clips product.

mod common;

use common::{random_rotation, random_tensor, rng};
use exela::tensor::{isotropic_projectors, ElasticityTensor, FourthOrderTensor, SymTensor2};
use exela::{ClassLabel, Rotation};
use proptest::prelude::*;
use rand::Rng;

#[test]
fn kelvin_roundtrip_is_bit_identical() {
    // component set -> kelvin -> components -> kelvin, bitwise stable
    const PAIRS: [(usize, usize); 6] = [(0, 0), (1, 1), (2, 2), (1, 2), (0, 2), (0, 1)];
    let mut r = rng(101);
    for _ in 0..1000 {
        let mut comps = [[[[0.0; 3]; 3]; 3]; 3];
        for (a, &(i, j)) in PAIRS.iter().enumerate() {
            for &(k, l) in PAIRS.iter().take(a + 1) {
                let v = r.gen_range(-1000.0..1000.0);
                for (p, q) in [(i, j), (j, i)] {
                    for (s, t) in [(k, l), (l, k)] {
                        comps[p][q][s][t] = v;
                        comps[s][t][p][q] = v;
                    }
                }
            }
        }
        let k1 = ElasticityTensor::from_components(&comps).unwrap();
        let k2 = ElasticityTensor::from_components(&k1.components()).unwrap();
        assert_eq!(k1.kelvin(), k2.kelvin());
        // and the extracted components are themselves stable from then on
        let k3 = ElasticityTensor::from_components(&k2.components()).unwrap();
        assert_eq!(k2.kelvin(), k3.kelvin());
    }
}

#[test]
fn rotation_is_isometry_and_action_composes() {
    let mut r = rng(202);
    for _ in 0..200 {
        let c = random_tensor(&mut r);
        let g1 = random_rotation(&mut r);
        let g2 = random_rotation(&mut r);
        let rotated = c.rotate(&g1);
        assert!((rotated.norm() - c.norm()).abs() <= 1e-12 * c.norm());
        let lhs = c.rotate(&g1).rotate(&g2);
        let rhs = c.rotate(&(g2 * g1));
        assert!((lhs - rhs).norm() <= 1e-12 * c.norm());
        assert!((c.rotate(&Rotation::identity()) - c).norm() <= 1e-15 * c.norm());
    }
}

#[test]
fn kelvin_inner_product_equals_quadruple_contraction() {
    let mut r = rng(303);
    for _ in 0..100 {
        let a = random_tensor(&mut r);
        let b = random_tensor(&mut r);
        // index-sum oracle
        let (ca, cb) = (a.components(), b.components());
        let mut oracle = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        oracle += ca[i][j][k][l] * cb[i][j][k][l];
                    }
                }
            }
        }
        assert!((a.qddot(&b) - oracle).abs() <= 1e-12 * a.norm() * b.norm());
    }
}

#[test]
fn rotate_matches_index_sum_oracle() {
    let mut r = rng(304);
    let c = random_tensor(&mut r);
    let g = random_rotation(&mut r);
    let m = g.matrix();
    let comps = c.components();
    let rotated = c.rotate(&g);
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    let mut s = 0.0;
                    for p in 0..3 {
                        for q in 0..3 {
                            for u in 0..3 {
                                for v in 0..3 {
                                    s += m[i][p] * m[j][q] * m[k][u] * m[l][v] * comps[p][q][u][v];
                                }
                            }
                        }
                    }
                    assert!((rotated.component(i, j, k, l) - s).abs() < 1e-12);
                }
            }
        }
    }
}

#[test]
fn invert_twice_is_identity() {
    let mut r = rng(404);
    for _ in 0..50 {
        let c = common::random_pd_tensor(&mut r);
        let back = c.invert().unwrap().invert().unwrap();
        assert!((back - c).norm() <= 1e-10 * c.norm());
        // Kelvin product C . S = identity
        let prod = FourthOrderTensor::from(c).ddot(&c.invert().unwrap().into());
        let eye: FourthOrderTensor = ElasticityTensor::identity().into();
        assert!((prod - eye).norm() <= 1e-10);
    }
}

#[test]
fn ti_rotated_about_e1_swaps_axes() {
    // TI about e3 rotated by a quarter turn about e1 becomes TI about e2,
    // with C'2222 = C3333 (index-sum oracle covered above)
    let mut k = [[0.0; 6]; 6];
    let (k11, k12, k13, k33, k44) = (3.1, 1.2, 0.9, 2.4, 1.6);
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
    let c = ElasticityTensor::from_kelvin(k, 0.0).unwrap();
    let g = Rotation::from_axis_angle([1.0, 0.0, 0.0], std::f64::consts::FRAC_PI_2).unwrap();
    let rotated = c.rotate(&g);
    assert!((rotated.component(1, 1, 1, 1) - k33).abs() < 1e-12);
    // rotating an isotropic tensor changes nothing
    let iso = exela::tensor::isotropic(2.2, 4.4);
    assert!((iso.rotate(&g) - iso).norm() < 1e-13);
}

#[test]
fn inverse_of_block_example() {
    // 6x6 inverse via block reduction: the (1,1) entry of the inverse of the
    // (10, -2, -3 / 13, 13, 12) matrix is 91/744
    let mut k = [[0.0; 6]; 6];
    for a in 0..3 {
        for b in 0..3 {
            k[a][b] = if a == b {
                10.0
            } else if a + b == 1 {
                -2.0
            } else {
                -3.0
            };
        }
    }
    k[0][1] = -2.0;
    k[1][0] = -2.0;
    for (a, b) in [(0, 2), (2, 0), (1, 2), (2, 1)] {
        k[a][b] = -3.0;
    }
    k[3][3] = 13.0;
    k[4][4] = 13.0;
    k[5][5] = 12.0;
    let s = ElasticityTensor::from_kelvin(k, 0.0).unwrap();
    let inv = s.invert().unwrap();
    assert!((inv.kelvin()[0][0] - 91.0 / 744.0).abs() < 1e-14);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn prop_kelvin_isometry(seed in 0u64..1_000_000) {
        let mut r = rng(seed);
        let c = random_tensor(&mut r);
        let g = random_rotation(&mut r);
        prop_assert!((c.rotate(&g).norm() - c.norm()).abs() <= 1e-12 * c.norm().max(1e-30));
    }

    #[test]
    fn prop_projector_decomposition(alpha in -5.0f64..5.0, beta in -5.0f64..5.0) {
        let (i, j, k) = isotropic_projectors();
        let c = j * alpha + k * beta;
        // J and K are complementary orthogonal projectors
        prop_assert!(((j + k) - i).norm() < 1e-14);
        prop_assert!((c.qddot(&j) - 5.0 * alpha).abs() < 1e-12);
        prop_assert!((c.qddot(&k) - beta).abs() < 1e-12);
    }

    #[test]
    fn prop_clips_commutes_and_neutral(a_idx in 0usize..29, b_idx in 0usize..29) {
        let mut dom = vec![
            ClassLabel::Triclinic,
            ClassLabel::Tetrahedral,
            ClassLabel::Octahedral,
            ClassLabel::Icosahedral,
            ClassLabel::So2,
            ClassLabel::O2,
            ClassLabel::So3,
        ];
        for n in 2..=12 {
            dom.push(ClassLabel::Cyclic(n));
            dom.push(ClassLabel::Dihedral(n));
        }
        let (a, b) = (dom[a_idx], dom[b_idx]);
        prop_assert_eq!(exela::clips_pair(a, b), exela::clips_pair(b, a));
        let with_so3 = exela::clips_pair(ClassLabel::So3, a);
        prop_assert!(with_so3.len() == 1 && with_so3.contains(&a));
        let with_one = exela::clips_pair(ClassLabel::Triclinic, a);
        prop_assert!(with_one.len() == 1 && with_one.contains(&ClassLabel::Triclinic));
    }

    #[test]
    fn prop_split_sym_anti_orthogonal(seed in 0u64..1_000_000) {
        let mut r = rng(seed);
        let c = random_tensor(&mut r);
        let (cs, ca) = exela::split_sym_anti(&c);
        prop_assert!(((cs + ca) - c).norm() < 1e-13);
        prop_assert!(cs.qddot(&ca).abs() < 1e-12);
    }

    #[test]
    fn prop_sym2_eigen_reconstructs(x in -3.0f64..3.0, y in -3.0f64..3.0, z in -3.0f64..3.0,
                                    a in -3.0f64..3.0, b in -3.0f64..3.0, c in -3.0f64..3.0) {
        let t = SymTensor2::new(x, y, z, a, b, c);
        let (vals, vecs) = t.eigen();
        for i in 0..3 {
            for j in 0..3 {
                let mut s = 0.0;
                for k in 0..3 {
                    s += vecs[i][k] * vals[k] * vecs[j][k];
                }
                prop_assert!((s - t.component(i, j)).abs() < 1e-11);
            }
        }
    }
}

#[test]
fn young_modulus_rotational_covariance() {
    let mut r = rng(505);
    for _ in 0..20 {
        let s = common::random_pd_tensor(&mut r);
        let g = random_rotation(&mut r);
        let n = {
            let v: [f64; 3] = [
                r.gen_range(-1.0..1.0),
                r.gen_range(-1.0..1.0),
                r.gen_range(-1.0..1.0),
            ];
            let len = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            [v[0] / len, v[1] / len, v[2] / len]
        };
        let e0 = exela::young_modulus(&s, &n).unwrap();
        let e1 = exela::young_modulus(&s.rotate(&g), &g.apply(&n)).unwrap();
        assert!((e0 - e1).abs() <= 1e-10 * e0.abs());
    }
}

#[test]
fn young_modulus_sees_only_totally_symmetric_part() {
    let mut r = rng(606);
    let s = common::random_pd_tensor(&mut r);
    let (sym, _) = exela::split_sym_anti(&s);
    for _ in 0..20 {
        let v: [f64; 3] = [
            r.gen_range(-1.0..1.0),
            r.gen_range(-1.0..1.0),
            r.gen_range(-1.0..1.0),
        ];
        let len = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        let n = [v[0] / len, v[1] / len, v[2] / len];
        let q_full = s.quartic_form(&n);
        let q_sym = sym.quartic_form(&n);
        assert!((q_full - q_sym).abs() <= 1e-12 * q_full.abs().max(1.0));
    }
}
