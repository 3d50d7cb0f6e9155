//! The planar lotus and its continued-fraction toolkit.
//!
//! Starting from a lattice basis `(u, w)`, the lotus is generated by the two
//! child bases `(u, u + w)` (a right turn, [`Symbol::Delta`]) and
//! `(u + w, w)` (a left turn, [`Symbol::Gamma`]). Each basis spans a petal,
//! the lattice triangle `u, w, u + w`.

mod cf;
mod klein;
mod sheath;
mod zeroseq;

use core::fmt;

use alloc::vec::Vec;

use crate::arith::{LatticeVec, Overflow};

pub use cf::{cf_eval, cf_expand, symbols_to_cf, CfSeq, Flavor};
pub use klein::{klein_hull, Side};
pub use sheath::{sheath, SheathResult};
pub use zeroseq::{
    is_admissible, represents_zero, triangulated_polygon, triangulated_polygon_with,
    vector_realization, Triangulation,
};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LotusError {
    #[error("{0} is not primitive")]
    NotPrimitive(LatticeVec),
    #[error("{0} is not in the open first quadrant")]
    NotInterior(LatticeVec),
    #[error("box {size} does not contain {point}")]
    BoxTooSmall { point: LatticeVec, size: i64 },
    #[error("continued fraction has no terms")]
    EmptySequence,
    #[error("term {index} of a positive continued fraction must be positive, got {value}")]
    BadTerm { index: usize, value: i64 },
    #[error("{0} is not a positive rational")]
    NotPositive(crate::arith::Rational),
    #[error("sequence is not admissible: v{index} leaves the upper half-plane")]
    NotAdmissible { index: usize },
    #[error("ear reduction stalls with {remaining} vertices left")]
    Stalled { remaining: usize },
    #[error(transparent)]
    Overflow(#[from] Overflow),
}

/// A turn in the lotus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    /// Right turn, to `(u, u + w)`.
    Delta,
    /// Left turn, to `(u + w, w)`.
    Gamma,
}

impl Symbol {
    pub fn as_char(self) -> char {
        match self {
            Symbol::Delta => 'δ',
            Symbol::Gamma => 'γ',
        }
    }

    /// Accepts `δ`/`d` and `γ`/`g`.
    pub fn from_char(c: char) -> Option<Symbol> {
        match c {
            'δ' | 'd' | 'D' => Some(Symbol::Delta),
            'γ' | 'g' | 'G' => Some(Symbol::Gamma),
            _ => None,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// The petal of the basis `(u, w)`: the triangle `u, w, u + w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Petal {
    pub u: LatticeVec,
    pub w: LatticeVec,
}

impl Petal {
    pub const ROOT: Petal = Petal { u: LatticeVec::E1, w: LatticeVec::E2 };

    pub fn apex(self) -> LatticeVec {
        self.u + self.w
    }

    pub fn child(self, s: Symbol) -> Petal {
        match s {
            Symbol::Delta => Petal { u: self.u, w: self.apex() },
            Symbol::Gamma => Petal { u: self.apex(), w: self.w },
        }
    }

    pub fn is_unimodular(self) -> bool {
        self.u.det(self.w).abs() == 1
    }
}

/// A Stern-Brocot label `num/den`; `1/0` is allowed and labels `e₁`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Label {
    pub num: i64,
    pub den: i64,
}

impl Label {
    pub fn mediant(self, other: Label) -> Label {
        Label { num: self.num + other.num, den: self.den + other.den }
    }

    fn cmp_value(self, other: Label) -> core::cmp::Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Label of a lattice vector of the closed first quadrant.
pub fn label_of(v: LatticeVec) -> Label {
    Label { num: v.a, den: v.b }
}

/// Label of the star point `½v` together with the path of turns from the
/// root petal `(e₁, e₂)` to the petal whose apex is `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SternBrocot {
    pub label: Label,
    pub path: Vec<Symbol>,
}

/// Labels `½v` by descending the mediant tree from `1/0` and `0/1`.
pub fn stern_brocot_label(v: LatticeVec) -> Result<SternBrocot, LotusError> {
    if !v.is_interior() {
        return Err(LotusError::NotInterior(v));
    }
    if !v.is_primitive() {
        return Err(LotusError::NotPrimitive(v));
    }
    let target = label_of(v);
    let (mut right, mut left) = (Label { num: 1, den: 0 }, Label { num: 0, den: 1 });
    let mut path = Vec::new();
    loop {
        let m = right.mediant(left);
        match target.cmp_value(m) {
            core::cmp::Ordering::Equal => {
                debug_assert_eq!(m, target);
                return Ok(SternBrocot { label: m, path });
            }
            core::cmp::Ordering::Greater => {
                path.push(Symbol::Delta);
                left = m;
            }
            core::cmp::Ordering::Less => {
                path.push(Symbol::Gamma);
                right = m;
            }
        }
    }
}

/// Index `a` of the cone `σ((1−a)e₁ + a·e₂, −a·e₁ + (a+1)e₂)` of the grand
/// lotus containing `v`, for `v` in the open half-plane `x + y > 0`. A vector
/// on the ray shared by two cones gets the larger index.
pub fn grand_lotus_cone(v: LatticeVec) -> Option<i64> {
    let s = v.a + v.b;
    (s > 0).then(|| v.b.div_euclid(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn stern_brocot_examples() {
        let root = stern_brocot_label(LatticeVec::new(1, 1)).unwrap();
        assert_eq!(root.label, Label { num: 1, den: 1 });
        assert!(root.path.is_empty());
        let l = stern_brocot_label(LatticeVec::new(7, 5)).unwrap();
        assert_eq!(l.label.to_string(), "7/5");
        use Symbol::*;
        assert_eq!(l.path, [Delta, Gamma, Gamma, Delta]);
        let two = stern_brocot_label(LatticeVec::new(2, 1)).unwrap();
        assert_eq!(two.label, Label { num: 1, den: 1 }.mediant(Label { num: 1, den: 0 }));
        assert_eq!(stern_brocot_label(LatticeVec::new(4, 2)), Err(LotusError::NotPrimitive(LatticeVec::new(4, 2))));
    }

    #[test]
    fn petal_path_reaches_apex() {
        for a in 1..40 {
            for b in 1..40 {
                let v = LatticeVec::new(a, b);
                if !v.is_primitive() {
                    continue;
                }
                let sb = stern_brocot_label(v).unwrap();
                let petal = sb.path.iter().fold(Petal::ROOT, |p, &s| p.child(s));
                assert_eq!(petal.apex(), v);
                assert!(petal.is_unimodular());
                assert_eq!(label_of(petal.u).mediant(label_of(petal.w)), sb.label);
            }
        }
    }

    #[test]
    fn grand_lotus_cones() {
        assert_eq!(grand_lotus_cone(LatticeVec::new(3, 1)), Some(0));
        assert_eq!(grand_lotus_cone(LatticeVec::new(0, 1)), Some(1));
        assert_eq!(grand_lotus_cone(LatticeVec::new(-1, 3)), Some(1));
        assert_eq!(grand_lotus_cone(LatticeVec::new(3, -1)), Some(-1));
        assert_eq!(grand_lotus_cone(LatticeVec::new(-1, 1)), None);
        for a in -5..=5 {
            let first = LatticeVec::new(1 - a, a);
            let second = LatticeVec::new(-a, a + 1);
            assert_eq!(first.det(second), 1);
            assert_eq!(grand_lotus_cone(first + second), Some(a));
        }
    }
}
