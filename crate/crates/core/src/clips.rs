//! The clips-product algebra on SO(3) symmetry classes.
//!
//! `clips_pair(A, B)` returns every conjugacy class that can arise as the
//! intersection of a representative of `A` with a rotated representative of
//! `B`. The table is stored as verified data together with its gcd side
//! conditions rather than re-derived from group theory.
//!
//! In the `O(2) ⊙ D_n` cell the dihedral entry is `D_{gcd(n,2)}`: a `D_2`
//! intersection requires `D_2 ⊂ D_n` and hence an even `n`. Brute-force
//! intersection of conjugate pairs confirms the cell, and this is the form
//! under which the operation is associative.

use crate::classes::{ClassLabel, ClassSet};
use crate::error::Error;
use ClassLabel::*;

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The clips product of two symmetry classes.
///
/// ```
/// use exela::{clips_pair, ClassLabel};
///
/// let set = clips_pair(ClassLabel::O2, ClassLabel::O2);
/// assert_eq!(set.to_string(), "{Z2, D2, O(2)}");
/// ```
pub fn clips_pair(a: ClassLabel, b: ClassLabel) -> ClassSet {
    if a == Triclinic || b == Triclinic {
        return [Triclinic].into_iter().collect();
    }
    if a == So3 {
        return [b].into_iter().collect();
    }
    if b == So3 {
        return [a].into_iter().collect();
    }
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    let z = ClassLabel::cyclic;
    let d = ClassLabel::dihedral;
    let set: Vec<ClassLabel> = match (lo, hi) {
        (Cyclic(m), Cyclic(n)) => vec![Triclinic, z(gcd(m, n))],
        (Cyclic(n), Dihedral(m)) => vec![Triclinic, z(gcd(m, n)), z(gcd(n, 2))],
        (Dihedral(m), Dihedral(n)) => {
            let dd = gcd(m, n);
            let dz = if m % 2 == 0 && n % 2 == 0 { 2 } else { 1 };
            vec![Triclinic, z(2), z(dd), d(dz), d(dd)]
        }
        (Cyclic(n), Tetrahedral) => vec![Triclinic, z(gcd(n, 2)), z(gcd(n, 3))],
        (Dihedral(n), Tetrahedral) => vec![Triclinic, z(2), z(gcd(n, 3)), d(gcd(n, 2))],
        (Tetrahedral, Tetrahedral) => vec![Triclinic, z(2), z(3), d(2), Tetrahedral],
        (Cyclic(n), Octahedral) => {
            vec![Triclinic, z(gcd(n, 2)), z(gcd(n, 3)), z(d4_of(n))]
        }
        (Dihedral(n), Octahedral) => vec![
            Triclinic,
            z(2),
            z(gcd(n, 3)),
            z(d4_of(n)),
            d(gcd(n, 2)),
            d(gcd(n, 3)),
            d(d4_of(n)),
        ],
        (Tetrahedral, Octahedral) => vec![Triclinic, z(2), z(3), d(2), Tetrahedral],
        (Octahedral, Octahedral) => vec![Triclinic, z(2), z(3), z(4), d(2), d(3), d(4), Octahedral],
        (Cyclic(n), Icosahedral) => {
            vec![Triclinic, z(gcd(n, 2)), z(gcd(n, 3)), z(gcd(n, 5))]
        }
        (Dihedral(n), Icosahedral) => vec![
            Triclinic,
            z(2),
            z(gcd(n, 3)),
            z(gcd(n, 5)),
            d(gcd(n, 2)),
            d(gcd(n, 3)),
            d(gcd(n, 5)),
        ],
        (Tetrahedral, Icosahedral) => vec![Triclinic, z(2), z(3), Tetrahedral],
        (Octahedral, Icosahedral) => vec![Triclinic, z(2), z(3), d(3), Tetrahedral],
        (Icosahedral, Icosahedral) => vec![Triclinic, z(2), z(3), z(5), d(3), d(5), Icosahedral],
        (Cyclic(n), So2) => vec![Triclinic, z(n)],
        (Dihedral(n), So2) => vec![Triclinic, z(2), z(n)],
        (Tetrahedral, So2) => vec![Triclinic, z(2), z(3)],
        (Octahedral, So2) => vec![Triclinic, z(2), z(3), z(4)],
        (Icosahedral, So2) => vec![Triclinic, z(2), z(3), z(5)],
        (So2, So2) => vec![Triclinic, So2],
        (Cyclic(n), O2) => vec![Triclinic, z(gcd(n, 2)), z(n)],
        (Dihedral(n), O2) => vec![Triclinic, z(2), d(gcd(n, 2)), d(n)],
        (Tetrahedral, O2) => vec![Triclinic, z(2), z(3), d(2)],
        (Octahedral, O2) => vec![Triclinic, z(2), d(2), d(3), d(4)],
        (Icosahedral, O2) => vec![Triclinic, z(2), d(2), d(3), d(5)],
        (So2, O2) => vec![Triclinic, z(2), So2],
        (O2, O2) => vec![z(2), d(2), O2],
        _ => unreachable!("normalised pair ({lo:?}, {hi:?})"),
    };
    set.into_iter().collect()
}

fn d4_of(n: u32) -> u32 {
    if n.is_multiple_of(4) {
        4
    } else {
        1
    }
}

/// Clips of two families: union over all member pairs.
pub fn clips_families(f1: &ClassSet, f2: &ClassSet) -> ClassSet {
    let mut out = ClassSet::new();
    for a in f1.iter() {
        for b in f2.iter() {
            out.union(&clips_pair(*a, *b));
        }
    }
    out
}

/// Restricted clips: clips over the members of `f1`, `f2` strictly above `g`
/// in the elasticity poset, keeping only result members strictly above `g`.
pub fn restricted_clips(f1: &ClassSet, f2: &ClassSet, g: ClassLabel) -> Result<ClassSet, Error> {
    if !g.in_elasticity_poset() {
        return Err(Error::NotInPoset(g));
    }
    let mut out = ClassSet::new();
    for a in f1.iter() {
        if !a.ela_strictly_above(&g).unwrap_or(false) {
            continue;
        }
        for b in f2.iter() {
            if !b.ela_strictly_above(&g).unwrap_or(false) {
                continue;
            }
            for r in clips_pair(*a, *b).iter() {
                if r.ela_strictly_above(&g).unwrap_or(false) {
                    out.insert(*r);
                }
            }
        }
    }
    Ok(out)
}

/// Symmetry classes of the second-order harmonic space.
pub fn h2_classes() -> ClassSet {
    [Dihedral(2), O2, So3].into_iter().collect()
}

/// Symmetry classes of the fourth-order harmonic space.
pub fn h4_classes() -> ClassSet {
    [
        Triclinic,
        Cyclic(2),
        Dihedral(2),
        Dihedral(3),
        Dihedral(4),
        O2,
        Octahedral,
        So3,
    ]
    .into_iter()
    .collect()
}

/// Symmetry classes of a direct sum of harmonic spaces, given as
/// `(order, multiplicity)` pairs with orders in {0, 2, 4}. Scalar spaces
/// contribute the neutral `{SO(3)}`.
pub fn derive_space_classes(structure: &[(u32, u32)]) -> Result<ClassSet, Error> {
    let mut acc: ClassSet = [So3].into_iter().collect();
    for &(order, mult) in structure {
        let classes = match order {
            0 => [So3].into_iter().collect(),
            2 => h2_classes(),
            4 => h4_classes(),
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unsupported harmonic order {other}"
                )))
            }
        };
        for _ in 0..mult {
            acc = clips_families(&acc, &classes);
        }
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Structure signatures
// ---------------------------------------------------------------------------

/// The six class labels of a geometric structure (three singletons, three
/// pairs) together with the overall class they realise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StructureSignature {
    pub class: ClassLabel,
    /// `[G_ha]`, `[G_hb]`, `[G_H]`
    pub singles: [ClassLabel; 3],
    /// `[G_(ha,hb)]`, `[G_(ha,H)]`, `[G_(hb,H)]`
    pub pairs: [ClassLabel; 3],
}

impl StructureSignature {
    pub fn entries(&self) -> [ClassLabel; 6] {
        [
            self.singles[0],
            self.singles[1],
            self.singles[2],
            self.pairs[0],
            self.pairs[1],
            self.pairs[2],
        ]
    }
}

impl std::fmt::Display for StructureSignature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let e = self.entries();
        write!(
            f,
            "({}, {}, {}, {}, {}, {}) -> {}",
            e[0], e[1], e[2], e[3], e[4], e[5], self.class
        )
    }
}

/// Enumerates the admissible structure signatures realising the class `g`,
/// generic signature first, then the exotic ones ordered by their degeneracy
/// pattern (`h_a`, then `h_b`, then the fourth-order covariant).
///
/// Supported classes are those strictly above orthotropy; the degeneracy
/// mechanism there is purely type I, so pair entries are forced by the
/// singleton choices.
pub fn enumerate_structures(g: ClassLabel) -> Result<Vec<StructureSignature>, Error> {
    if !g.is_high() {
        return Err(Error::UnsupportedClass(g));
    }
    let h2_high: Vec<ClassLabel> = h2_classes()
        .iter()
        .copied()
        .filter(|c| c.is_high())
        .collect();
    let h4_high: Vec<ClassLabel> = h4_classes()
        .iter()
        .copied()
        .filter(|c| c.is_high())
        .collect();

    let generic_h4: ClassLabel = match g {
        O2 => O2,
        Dihedral(n) => Dihedral(n),
        Octahedral => Octahedral,
        So3 => So3,
        _ => unreachable!(),
    };

    let mut rows: Vec<(usize, StructureSignature)> = Vec::new();
    for &a in &h2_high {
        for &b in &h2_high {
            for &c in &h4_high {
                if !(a.contains(&g) && b.contains(&g) && c.contains(&g)) {
                    continue;
                }
                if !achievable(&[a, b, c], g) {
                    continue;
                }
                let pairs = [
                    forced_pair(a, b, g)?,
                    forced_pair(a, c, g)?,
                    forced_pair(b, c, g)?,
                ];
                let sig = StructureSignature {
                    class: g,
                    singles: [a, b, c],
                    pairs,
                };
                let key = pattern_key(a == So3, b == So3, c != generic_h4);
                rows.push((key, sig));
            }
        }
    }
    rows.sort_by_key(|&(k, _)| k);
    Ok(rows.into_iter().map(|(_, s)| s).collect())
}

/// Can the aligned intersection of the non-isotropic covariants realise
/// exactly `g`?
fn achievable(singles: &[ClassLabel; 3], g: ClassLabel) -> bool {
    let nz: Vec<ClassLabel> = singles.iter().copied().filter(|&c| c != So3).collect();
    match nz.len() {
        0 => g == So3,
        1 => g == nz[0],
        _ => {
            let mut acc: ClassSet = [nz[0]].into_iter().collect();
            for &x in &nz[1..] {
                let mut next = ClassSet::new();
                for r in clips_families(&acc, &[x].into_iter().collect()).iter() {
                    if r.is_high() {
                        next.insert(*r);
                    }
                }
                acc = next;
            }
            acc.contains(&g)
        }
    }
}

/// Pair class forced by two singleton classes under type-I-only degeneracy:
/// the unique poset-minimal member of their clips product containing `g`.
fn forced_pair(x: ClassLabel, y: ClassLabel, g: ClassLabel) -> Result<ClassLabel, Error> {
    if x == So3 {
        return Ok(y);
    }
    if y == So3 {
        return Ok(x);
    }
    let candidates: Vec<ClassLabel> = clips_pair(x, y)
        .iter()
        .copied()
        .filter(|c| c.contains(&g))
        .collect();
    let minimal: Vec<ClassLabel> = candidates
        .iter()
        .copied()
        .filter(|c| !candidates.iter().any(|o| o != c && c.contains(o)))
        .collect();
    match minimal.as_slice() {
        [one] => Ok(*one),
        [first, second, ..] => Err(Error::AmbiguousClass {
            first: *first,
            second: *second,
        }),
        [] => Err(Error::UnsupportedClass(g)),
    }
}

fn pattern_key(da: bool, db: bool, dh: bool) -> usize {
    match (da, db, dh) {
        (false, false, false) => 0,
        (true, false, false) => 1,
        (false, true, false) => 2,
        (false, false, true) => 3,
        (true, true, false) => 4,
        (true, false, true) => 5,
        (false, true, true) => 6,
        (true, true, true) => 7,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(labels: &[ClassLabel]) -> ClassSet {
        labels.iter().copied().collect()
    }

    #[test]
    fn neutral_elements() {
        for x in [Cyclic(5), Dihedral(4), Tetrahedral, O2] {
            assert_eq!(clips_pair(So3, x), set(&[x]));
            assert_eq!(clips_pair(x, So3), set(&[x]));
            assert_eq!(clips_pair(Triclinic, x), set(&[Triclinic]));
        }
        assert_eq!(clips_pair(So3, Dihedral(4)), set(&[Dihedral(4)]));
    }

    #[test]
    fn table_spot_checks() {
        assert_eq!(clips_pair(O2, O2), set(&[Cyclic(2), Dihedral(2), O2]));
        assert_eq!(
            clips_pair(Octahedral, Octahedral),
            set(&[
                Triclinic,
                Cyclic(2),
                Cyclic(3),
                Cyclic(4),
                Dihedral(2),
                Dihedral(3),
                Dihedral(4),
                Octahedral
            ])
        );
        assert_eq!(
            clips_pair(O2, Octahedral),
            set(&[Triclinic, Cyclic(2), Dihedral(2), Dihedral(3), Dihedral(4)])
        );
        // O(2) . D_n keeps D2 only for even n
        assert_eq!(
            clips_pair(O2, Dihedral(3)),
            set(&[Triclinic, Cyclic(2), Dihedral(3)])
        );
        assert_eq!(
            clips_pair(O2, Dihedral(4)),
            set(&[Triclinic, Cyclic(2), Dihedral(2), Dihedral(4)])
        );
    }

    #[test]
    fn commutative_and_associative_capped() {
        let mut dom = vec![
            Triclinic,
            Tetrahedral,
            Octahedral,
            Icosahedral,
            So2,
            O2,
            So3,
        ];
        for n in 2..=12 {
            dom.push(Cyclic(n));
            dom.push(Dihedral(n));
        }
        for &a in &dom {
            for &b in &dom {
                assert_eq!(clips_pair(a, b), clips_pair(b, a), "{a} {b}");
            }
        }
        for &a in &dom {
            for &b in &dom {
                let ab = clips_pair(a, b);
                for &c in &dom {
                    let lhs = clips_families(&ab, &set(&[c]));
                    let rhs = clips_families(&set(&[a]), &clips_pair(b, c));
                    assert_eq!(lhs, rhs, "assoc {a} {b} {c}");
                }
            }
        }
    }

    #[test]
    fn elasticity_space_classes() {
        let classes = derive_space_classes(&[(0, 2), (2, 2), (4, 1)]).unwrap();
        assert_eq!(classes, set(&ClassLabel::elasticity_classes()));
        assert_eq!(derive_space_classes(&[(2, 1)]).unwrap(), h2_classes());
        assert_eq!(derive_space_classes(&[(0, 2)]).unwrap(), set(&[So3]));
        assert!(derive_space_classes(&[(3, 1)]).is_err());
    }

    #[test]
    fn restricted_clips_examples() {
        let out =
            restricted_clips(&set(&[O2, So3]), &set(&[Octahedral, So3]), Dihedral(2)).unwrap();
        assert_eq!(out, set(&[Dihedral(3), Dihedral(4), O2, Octahedral, So3]));
        assert_eq!(
            restricted_clips(&ClassSet::new(), &set(&[O2]), Dihedral(2)).unwrap(),
            ClassSet::new()
        );
        assert_eq!(
            restricted_clips(&set(&[So3]), &set(&[So3]), Dihedral(2)).unwrap(),
            set(&[So3])
        );
        assert!(restricted_clips(&set(&[So3]), &set(&[So3]), Tetrahedral).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_structures(So3).unwrap().len(), 1);
        assert_eq!(enumerate_structures(Octahedral).unwrap().len(), 1);
        for g in [O2, Dihedral(3), Dihedral(4)] {
            assert_eq!(enumerate_structures(g).unwrap().len(), 7, "{g}");
        }
        assert!(enumerate_structures(Dihedral(2)).is_err());
        assert!(enumerate_structures(Cyclic(2)).is_err());
    }

    #[test]
    fn d4_exotic_rows() {
        let rows = enumerate_structures(Dihedral(4)).unwrap();
        // generic first
        assert_eq!(
            rows[0].entries(),
            [O2, O2, Dihedral(4), O2, Dihedral(4), Dihedral(4)]
        );
        // row 3: cubic fourth-order covariant
        assert_eq!(
            rows[3].entries(),
            [O2, O2, Octahedral, O2, Dihedral(4), Dihedral(4)]
        );
        // row 5: h_a isotropic + cubic H
        assert_eq!(
            rows[5].entries(),
            [So3, O2, Octahedral, O2, Octahedral, Dihedral(4)]
        );
    }
}
