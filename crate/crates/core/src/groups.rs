//! Concrete rotation-group machinery: element lists for the finite closed
//! subgroups of SO(3), generation by closure, and identification of a group
//! from its element list.

use crate::classes::ClassLabel;
use crate::error::Error;
use crate::rotation::{cross3, dot3, normalize3, Rotation, Vec3};
use std::f64::consts::PI;

/// Multiplicative closure of a generator list, deduplicated by matrix
/// distance. `cap` bounds the group order (errors beyond it).
pub fn generate_group(gens: &[Rotation], cap: usize) -> Result<Vec<Rotation>, Error> {
    let mut els = vec![Rotation::identity()];
    let tol = 1e-8;
    let mut frontier: Vec<Rotation> = vec![Rotation::identity()];
    while let Some(g) = frontier.pop() {
        for gen in gens {
            let h = *gen * g;
            if !els.iter().any(|e| e.distance(&h) < tol) {
                if els.len() >= cap {
                    return Err(Error::InvalidParameter(format!(
                        "group closure exceeded cap {cap}"
                    )));
                }
                els.push(h);
                frontier.push(h);
            }
        }
    }
    Ok(els)
}

/// The n rotations of `Z_n` around `axis`.
pub fn cyclic_elements(n: u32, axis: Vec3) -> Vec<Rotation> {
    (0..n)
        .map(|k| Rotation::from_axis_angle(axis, 2.0 * PI * k as f64 / n as f64).unwrap())
        .collect()
}

/// The 2n rotations of `D_n`: n around `axis`, n half-turns around axes in
/// the orthogonal plane starting at `secondary`.
pub fn dihedral_elements(n: u32, axis: Vec3, secondary: Vec3) -> Vec<Rotation> {
    let mut els = cyclic_elements(n, axis);
    let a = normalize3(&axis);
    let s0 = {
        let mut s = normalize3(&secondary);
        let proj = dot3(&s, &a);
        s = normalize3(&[s[0] - proj * a[0], s[1] - proj * a[1], s[2] - proj * a[2]]);
        s
    };
    for k in 0..n {
        let half = Rotation::from_axis_angle(axis, PI * k as f64 / n as f64).unwrap();
        let ax = half.apply(&s0);
        els.push(Rotation::from_axis_angle(ax, PI).unwrap());
    }
    els
}

/// The 24 rotations of the octahedral group in the frame where the three
/// 4-fold axes are the coordinate axes.
pub fn octahedral_elements() -> Vec<Rotation> {
    let gens = [
        Rotation::from_axis_angle([0.0, 0.0, 1.0], PI / 2.0).unwrap(),
        Rotation::from_axis_angle([1.0, 1.0, 1.0], 2.0 * PI / 3.0).unwrap(),
    ];
    generate_group(&gens, 24).expect("octahedral closure")
}

/// The 12 rotations of the tetrahedral group (aligned with the octahedral frame).
pub fn tetrahedral_elements() -> Vec<Rotation> {
    let gens = [
        Rotation::from_axis_angle([0.0, 0.0, 1.0], PI).unwrap(),
        Rotation::from_axis_angle([1.0, 1.0, 1.0], 2.0 * PI / 3.0).unwrap(),
    ];
    generate_group(&gens, 12).expect("tetrahedral closure")
}

/// The 60 rotations of the icosahedral group (5-fold axis along e3).
pub fn icosahedral_elements() -> Vec<Rotation> {
    // a neighbouring vertex of the north pole of an icosahedron with its
    // 5-fold axis on e3 sits at polar angle atan(2)
    let theta = 2.0_f64.atan();
    let vertex = [theta.sin(), 0.0, theta.cos()];
    let edge_mid = normalize3(&[vertex[0] / 2.0, vertex[1] / 2.0, (1.0 + vertex[2]) / 2.0]);
    let gens = [
        Rotation::from_axis_angle([0.0, 0.0, 1.0], 2.0 * PI / 5.0).unwrap(),
        Rotation::from_axis_angle(edge_mid, PI).unwrap(),
    ];
    generate_group(&gens, 60).expect("icosahedral closure")
}

/// Element list of a finite class in a given frame (`frame * canonical`).
/// Continuous classes are rejected.
pub fn finite_elements(label: ClassLabel, frame: &Rotation) -> Result<Vec<Rotation>, Error> {
    let canonical = match label {
        ClassLabel::Triclinic => vec![Rotation::identity()],
        ClassLabel::Cyclic(n) => cyclic_elements(n, [0.0, 0.0, 1.0]),
        ClassLabel::Dihedral(n) => dihedral_elements(n, [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]),
        ClassLabel::Tetrahedral => tetrahedral_elements(),
        ClassLabel::Octahedral => octahedral_elements(),
        ClassLabel::Icosahedral => icosahedral_elements(),
        ClassLabel::So2 | ClassLabel::O2 | ClassLabel::So3 => {
            return Err(Error::UnsupportedClass(label))
        }
    };
    let ft = frame.transpose();
    Ok(canonical.into_iter().map(|g| *frame * g * ft).collect())
}

/// Identifies a finite rotation group from its element list, returning the
/// class label and an adapted frame (principal axis on e3, a secondary
/// half-turn axis on e1 where one exists).
pub fn identify_group(els: &[Rotation], tol: f64) -> Result<(ClassLabel, Rotation), Error> {
    let n = els.len();
    if n == 1 {
        return Ok((ClassLabel::Triclinic, Rotation::identity()));
    }

    // cluster rotation axes (identity excluded), tracking the maximal
    // per-axis order n from the smallest angle 2π/n seen on that axis
    let mut axes: Vec<(Vec3, u32)> = Vec::new();
    for g in els {
        let ang = g.angle();
        if ang < 1e-7 {
            continue;
        }
        let ax = g
            .axis()
            .ok_or(Error::InvalidParameter("element without axis".into()))?;
        let ord = order_from_angle(ang)?;
        match axes
            .iter_mut()
            .find(|(a, _)| dot3(a, &ax).abs() > 1.0 - tol.max(1e-7))
        {
            Some((_, o)) => *o = (*o).max(ord),
            None => axes.push((ax, ord)),
        }
    }

    let max_order = axes.iter().map(|&(_, o)| o).max().unwrap_or(1);
    let count_order = |k: u32| axes.iter().filter(|&&(_, o)| o == k).count();

    match n {
        12 if count_order(3) == 4 => {
            // tetrahedral: 2-fold axes are mutually orthogonal -> frame
            let two: Vec<Vec3> = axes
                .iter()
                .filter(|&&(_, o)| o == 2)
                .map(|&(a, _)| a)
                .collect();
            let frame = Rotation::from_frame(two[0], two[1])?;
            Ok((ClassLabel::Tetrahedral, frame))
        }
        24 if count_order(4) == 3 => {
            let four: Vec<Vec3> = axes
                .iter()
                .filter(|&&(_, o)| o == 4)
                .map(|&(a, _)| a)
                .collect();
            let frame = Rotation::from_frame(four[0], four[1])?;
            Ok((ClassLabel::Octahedral, frame))
        }
        60 => {
            let five = axes.iter().find(|&&(_, o)| o == 5).map(|&(a, _)| a).ok_or(
                Error::InvalidParameter("order-60 group without 5-fold axis".into()),
            )?;
            Ok((ClassLabel::Icosahedral, Rotation::aligning_e3_to(five)?))
        }
        _ => {
            if axes.len() == 1 {
                // single axis: cyclic
                let (a, _) = axes[0];
                return Ok((ClassLabel::cyclic(n as u32), Rotation::aligning_e3_to(a)?));
            }
            // dihedral: principal = the axis of maximal order (for D2 all
            // three are half-turn axes; any one works as principal)
            let m = (n / 2) as u32;
            let principal = axes
                .iter()
                .find(|&&(_, o)| o == max_order)
                .map(|&(a, _)| a)
                .unwrap();
            let secondary = axes
                .iter()
                .find(|&&(a, _)| dot3(&a, &principal).abs() < 0.5)
                .map(|&(a, _)| a)
                .ok_or(Error::InvalidParameter(
                    "dihedral candidate without secondary axis".into(),
                ))?;
            let frame = Rotation::from_frame(secondary, cross3(&principal, &secondary))?;
            // columns: e1 = secondary, e3 = principal
            Ok((ClassLabel::dihedral(m), frame))
        }
    }
}

fn order_from_angle(angle: f64) -> Result<u32, Error> {
    let ratio = 2.0 * PI / angle;
    let ord = ratio.round();
    if (ratio - ord).abs() > 0.05 || !(2.0..=64.0).contains(&ord) {
        // non-crystallographic angle inside a finite group list
        return Err(Error::InvalidParameter(format!(
            "rotation angle {angle} has no small integer order"
        )));
    }
    Ok(ord as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_orders() {
        assert_eq!(octahedral_elements().len(), 24);
        assert_eq!(tetrahedral_elements().len(), 12);
        assert_eq!(icosahedral_elements().len(), 60);
    }

    #[test]
    fn identify_round_trips() {
        let frame = Rotation::from_axis_angle([0.3, 1.0, -0.2], 0.9).unwrap();
        for label in [
            ClassLabel::Cyclic(2),
            ClassLabel::Cyclic(3),
            ClassLabel::Dihedral(2),
            ClassLabel::Dihedral(3),
            ClassLabel::Dihedral(4),
            ClassLabel::Tetrahedral,
            ClassLabel::Octahedral,
        ] {
            let els = finite_elements(label, &frame).unwrap();
            let (found, f2) = identify_group(&els, 1e-7).unwrap();
            assert_eq!(found, label);
            // the recovered frame regenerates the same element set
            let els2 = finite_elements(found, &f2).unwrap();
            for e in &els {
                assert!(
                    els2.iter().any(|x| x.distance(e) < 1e-7),
                    "{label}: element not regenerated"
                );
            }
        }
    }

    #[test]
    fn dihedral_contains_expected_elements() {
        let els = dihedral_elements(4, [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]);
        assert_eq!(els.len(), 8);
        // pi-rotation about the diagonal (1,1,0) is a secondary axis of D4
        let diag = Rotation::from_axis_angle([1.0, 1.0, 0.0], PI).unwrap();
        assert!(els.iter().any(|e| e.distance(&diag) < 1e-12));
    }
}
