//! Conjugacy classes of closed SO(3) subgroups and the elasticity poset.

use crate::error::Error;

/// A conjugacy class of closed subgroups of SO(3).
///
/// `Cyclic(1)` and `Dihedral(1)` never occur: constructors collapse them to
/// [`ClassLabel::Triclinic`] and `Cyclic(2)` respectively.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassLabel {
    /// Trivial group `1`.
    Triclinic,
    /// Cyclic group `Z_n`, n ≥ 2.
    Cyclic(u32),
    /// Dihedral group `D_n`, n ≥ 2.
    Dihedral(u32),
    /// Tetrahedral group (order 12).
    Tetrahedral,
    /// Octahedral group (order 24).
    Octahedral,
    /// Icosahedral group (order 60).
    Icosahedral,
    /// Planar rotations `SO(2)`.
    So2,
    /// Planar rotations and flips `O(2)`.
    O2,
    /// The full rotation group.
    So3,
}

pub use ClassLabel::*;

impl ClassLabel {
    /// `Z_n` with the convention `Z_1 = 1`.
    pub fn cyclic(n: u32) -> Self {
        if n <= 1 {
            Triclinic
        } else {
            Cyclic(n)
        }
    }

    /// `D_n` with the convention `D_1 ≅ Z_2`.
    pub fn dihedral(n: u32) -> Self {
        if n == 0 {
            Triclinic
        } else if n == 1 {
            Cyclic(2)
        } else {
            Dihedral(n)
        }
    }

    /// Group order; `None` for the continuous classes.
    pub fn order(&self) -> Option<u32> {
        match self {
            Triclinic => Some(1),
            Cyclic(n) => Some(*n),
            Dihedral(n) => Some(2 * n),
            Tetrahedral => Some(12),
            Octahedral => Some(24),
            Icosahedral => Some(60),
            So2 | O2 | So3 => None,
        }
    }

    fn family_rank(&self) -> (u8, u32) {
        match self {
            Triclinic => (0, 0),
            Cyclic(n) => (1, *n),
            Dihedral(n) => (2, *n),
            Tetrahedral => (3, 0),
            Octahedral => (4, 0),
            Icosahedral => (5, 0),
            So2 => (6, 0),
            O2 => (7, 0),
            So3 => (8, 0),
        }
    }

    /// Subgroup containment up to conjugacy: is `sub` conjugate to a
    /// subgroup of `self`?
    pub fn contains(&self, sub: &ClassLabel) -> bool {
        if self == sub || *sub == Triclinic || *self == So3 {
            return true;
        }
        if *self == Triclinic || *sub == So3 {
            return false;
        }
        match (*self, *sub) {
            (Cyclic(n), Cyclic(m)) => n % m == 0,
            (Dihedral(n), Cyclic(m)) => n % m == 0 || m == 2,
            (Dihedral(n), Dihedral(m)) => n % m == 0,
            (Tetrahedral, s) => matches!(s, Cyclic(2) | Cyclic(3) | Dihedral(2)),
            (Octahedral, s) => matches!(
                s,
                Cyclic(2)
                    | Cyclic(3)
                    | Cyclic(4)
                    | Dihedral(2)
                    | Dihedral(3)
                    | Dihedral(4)
                    | Tetrahedral
            ),
            (Icosahedral, s) => matches!(
                s,
                Cyclic(2)
                    | Cyclic(3)
                    | Cyclic(5)
                    | Dihedral(2)
                    | Dihedral(3)
                    | Dihedral(5)
                    | Tetrahedral
            ),
            (So2, Cyclic(_)) => true,
            (O2, Cyclic(_) | Dihedral(_) | So2) => true,
            _ => false,
        }
    }

    /// The eight symmetry classes realised by elasticity tensors.
    pub fn elasticity_classes() -> [ClassLabel; 8] {
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
    }

    /// Whether the label is one of the eight elasticity classes.
    pub fn in_elasticity_poset(&self) -> bool {
        ClassLabel::elasticity_classes().contains(self)
    }

    /// Rank in the elasticity poset; the covering edges are
    /// `1 → Z2 → D2 → {D3, D4} → {O(2), O} → SO(3)`.
    fn elasticity_level(&self) -> Option<u8> {
        match self {
            Triclinic => Some(0),
            Cyclic(2) => Some(1),
            Dihedral(2) => Some(2),
            Dihedral(3) | Dihedral(4) => Some(3),
            O2 | Octahedral => Some(4),
            So3 => Some(5),
            _ => None,
        }
    }

    /// Strict order in the elasticity poset (transitive closure of the edge
    /// data). Errors on labels outside the eight classes.
    pub fn ela_strictly_above(&self, other: &ClassLabel) -> Result<bool, Error> {
        let a = self.elasticity_level().ok_or(Error::NotInPoset(*self))?;
        let b = other.elasticity_level().ok_or(Error::NotInPoset(*other))?;
        if a <= b {
            return Ok(false);
        }
        // the diamond is totally ordered by level except for the two
        // incomparable pairs (D3, D4) and (O(2), O), which share a level
        Ok(true)
    }

    /// The classes "higher than orthotropy" in the elasticity poset.
    pub fn is_high(&self) -> bool {
        matches!(self, Dihedral(3) | Dihedral(4) | O2 | Octahedral | So3)
    }
}

impl PartialOrd for ClassLabel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ClassLabel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.family_rank().cmp(&other.family_rank())
    }
}

impl std::fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Triclinic => write!(f, "1"),
            Cyclic(n) => write!(f, "Z{n}"),
            Dihedral(n) => write!(f, "D{n}"),
            Tetrahedral => write!(f, "T"),
            Octahedral => write!(f, "O"),
            Icosahedral => write!(f, "I"),
            So2 => write!(f, "SO(2)"),
            O2 => write!(f, "O(2)"),
            So3 => write!(f, "SO(3)"),
        }
    }
}

impl std::str::FromStr for ClassLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let stripped = t
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .unwrap_or(t);
        match stripped {
            "1" => Ok(Triclinic),
            "T" => Ok(Tetrahedral),
            "O" => Ok(Octahedral),
            "I" => Ok(Icosahedral),
            "SO(2)" | "SO2" => Ok(So2),
            "O(2)" | "O2" => Ok(O2),
            "SO(3)" | "SO3" => Ok(So3),
            other => {
                let (family, digits) = other.split_at(1);
                let n: u32 = digits
                    .parse()
                    .map_err(|_| Error::InvalidParameter(format!("unknown class label '{s}'")))?;
                match family {
                    "Z" => Ok(ClassLabel::cyclic(n)),
                    "D" => Ok(ClassLabel::dihedral(n)),
                    _ => Err(Error::InvalidParameter(format!(
                        "unknown class label '{s}'"
                    ))),
                }
            }
        }
    }
}

/// A deduplicated, canonically ordered set of class labels.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ClassSet {
    labels: Vec<ClassLabel>,
}

impl ClassSet {
    pub fn new() -> Self {
        ClassSet { labels: Vec::new() }
    }

    pub fn insert(&mut self, label: ClassLabel) {
        if let Err(pos) = self.labels.binary_search(&label) {
            self.labels.insert(pos, label);
        }
    }

    pub fn union(&mut self, other: &ClassSet) {
        for l in &other.labels {
            self.insert(*l);
        }
    }

    pub fn contains(&self, label: &ClassLabel) -> bool {
        self.labels.binary_search(label).is_ok()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &ClassLabel> {
        self.labels.iter()
    }

    pub fn as_slice(&self) -> &[ClassLabel] {
        &self.labels
    }
}

impl FromIterator<ClassLabel> for ClassSet {
    fn from_iter<T: IntoIterator<Item = ClassLabel>>(iter: T) -> Self {
        let mut set = ClassSet::new();
        for l in iter {
            set.insert(l);
        }
        set
    }
}

impl std::fmt::Display for ClassSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.labels.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}
