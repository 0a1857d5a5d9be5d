use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::construct::length_ae;
use super::mesh::{Family, Label};
use crate::param::ParamT;

/// Unordered pair of point labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Segment(Label, Label);

impl Segment {
    pub fn new(a: Label, b: Label) -> Self {
        if a <= b {
            Self(a, b)
        } else {
            Self(b, a)
        }
    }

    pub fn ends(self) -> (Label, Label) {
        (self.0, self.1)
    }

    pub fn contains(self, l: Label) -> bool {
        self.0 == l || self.1 == l
    }

    pub fn name(self, family: Family) -> String {
        format!("{}{}", family.name(self.0), family.name(self.1))
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.0, self.1)
    }
}

use Label::{A, B, C, D, E, F};

/// Segments lying on both surfaces; their lengths are carried over from p to q.
pub const TRANSFERRED_SEGMENTS: [(Label, Label); 12] = [
    (A, B),
    (A, D),
    (A, E),
    (A, F),
    (B, E),
    (B, F),
    (D, E),
    (D, F),
    (B, C),
    (C, D),
    (C, E),
    (C, F),
];

/// Lengths of the surface segments of one bipyramid: its nine edges plus the
/// four segments from the marker `C` to the vertices around it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeTable {
    family: Family,
    lengths: BTreeMap<Segment, f64>,
}

impl EdgeTable {
    pub(crate) fn from_lengths(family: Family, lengths: BTreeMap<Segment, f64>) -> Self {
        Self { family, lengths }
    }

    /// Lengths prescribed for p(t) or q(t).
    pub fn prescribed(family: Family, t: ParamT) -> Self {
        let ae = length_ae(t);
        let mut lengths: BTreeMap<Segment, f64> = [
            ((A, B), 10.0),
            ((A, D), 10.0),
            ((B, E), 13.0),
            ((B, F), 13.0),
            ((D, E), 13.0),
            ((D, F), 13.0),
            ((A, E), ae),
            ((A, F), ae),
            ((B, C), 5.0),
            ((C, D), 5.0),
            ((C, E), 12.0),
            ((C, F), 12.0),
        ]
        .into_iter()
        .map(|((a, b), l)| (Segment::new(a, b), l))
        .collect();
        match family {
            Family::P => lengths.insert(Segment::new(E, F), 24.0),
            Family::Q => lengths.insert(Segment::new(B, D), 10.0),
        };
        Self { family, lengths }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn get(&self, a: Label, b: Label) -> Option<f64> {
        self.lengths.get(&Segment::new(a, b)).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Segment, f64)> + '_ {
        self.lengths.iter().map(|(s, l)| (*s, *l))
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    /// Largest relative difference over the segments both tables contain.
    pub fn max_relative_deviation(&self, other: &EdgeTable) -> (Option<Segment>, f64) {
        self.lengths
            .iter()
            .filter_map(|(s, l)| other.lengths.get(s).map(|m| (*s, ((l - m) / m).abs())))
            .fold(
                (None, 0.0),
                |acc, (s, d)| if d > acc.1 { (Some(s), d) } else { acc },
            )
    }

    /// Every length strictly positive and every face of the family satisfying
    /// the strict triangle inequality.
    pub fn is_realizable(&self) -> bool {
        let faces: &[[Label; 3]] = match self.family {
            Family::P => &[
                [A, B, E],
                [A, B, F],
                [A, D, E],
                [A, D, F],
                [B, E, F],
                [D, E, F],
            ],
            Family::Q => &[
                [A, B, E],
                [A, B, F],
                [A, D, E],
                [A, D, F],
                [B, D, E],
                [B, D, F],
            ],
        };
        self.lengths.values().all(|&l| l > 0.0)
            && faces.iter().all(|&[x, y, z]| {
                match (self.get(x, y), self.get(y, z), self.get(x, z)) {
                    (Some(a), Some(b), Some(c)) => a + b > c && b + c > a && a + c > b,
                    _ => false,
                }
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prescribed_tables_agree_on_transferred_segments() {
        let t = ParamT::new(0.3).unwrap();
        let p = EdgeTable::prescribed(Family::P, t);
        let q = EdgeTable::prescribed(Family::Q, t);
        assert_eq!(p.len(), 13);
        assert_eq!(q.len(), 13);
        for (a, b) in TRANSFERRED_SEGMENTS {
            assert_eq!(p.get(a, b), q.get(a, b), "{a}{b}");
        }
        assert_eq!(p.get(E, F), Some(24.0));
        assert_eq!(q.get(E, F), None);
        assert_eq!(q.get(D, B), Some(10.0));
    }

    #[test]
    fn realizable_on_grid() {
        for i in 1..1000 {
            let t = ParamT::new(crate::param::T_MAX * i as f64 / 1000.0).unwrap();
            assert!(EdgeTable::prescribed(Family::P, t).is_realizable());
            assert!(EdgeTable::prescribed(Family::Q, t).is_realizable());
        }
    }

    #[test]
    fn segment_is_unordered() {
        assert_eq!(Segment::new(F, C), Segment::new(C, F));
        assert_eq!(Segment::new(F, C).to_string(), "CF");
        assert_eq!(Segment::new(B, D).name(Family::Q), "B'D'");
    }
}
