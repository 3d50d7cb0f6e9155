//! The lotus in dimension `n`: growth bases, the sheath walk producing a
//! sequence of arrangements, and contact between two rays.
//!
//! Labels are `1..=n`. An arrangement `(i₁, …, i_n)` replaces the current
//! base by its partial sums `e_{i₁}, e_{i₁} + e_{i₂}, …`, the `k`-th sum
//! taking label `i_k`. For `n = 2` the arrangements `(1, 2)` and `(2, 1)` are
//! the turns `δ` and `γ` of the planar lotus.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::arith::Rational;
use crate::lotus2d::Symbol;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum NdError {
    #[error("vector has no coordinates")]
    Empty,
    #[error("coordinate {label} is {value}, not positive")]
    NotInterior { label: usize, value: i64 },
    #[error("vector is not primitive (gcd {0})")]
    NotPrimitive(i64),
    #[error("arrangement is not a permutation of the base labels")]
    NotAPermutation,
    #[error("base vectors do not form a lattice basis")]
    NotABasis,
    #[error("depth must be positive")]
    ZeroDepth,
}

/// An ordering of labels.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arrangement(Vec<usize>);

impl Arrangement {
    pub fn new(labels: Vec<usize>) -> Self {
        Arrangement(labels)
    }

    pub fn identity(n: usize) -> Self {
        Arrangement((1..=n).collect())
    }

    pub fn labels(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The planar turn: `(1, 2)` is `δ`, `(2, 1)` is `γ`.
    pub fn symbol(&self) -> Option<Symbol> {
        match self.0[..] {
            [1, 2] => Some(Symbol::Delta),
            [2, 1] => Some(Symbol::Gamma),
            _ => None,
        }
    }

    fn restricted_to(&self, keep: &[usize]) -> Arrangement {
        Arrangement(self.0.iter().copied().filter(|l| keep.contains(l)).collect())
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str(")")
    }
}

/// Labeled lattice vectors, in the order given at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseN {
    entries: Vec<(usize, Vec<i64>)>,
}

impl BaseN {
    /// `e₁, …, e_n` with labels `1..=n`.
    pub fn standard(n: usize) -> Self {
        let entries = (1..=n)
            .map(|l| {
                let mut v = vec![0; n];
                v[l - 1] = 1;
                (l, v)
            })
            .collect();
        BaseN { entries }
    }

    /// Checks distinct labels and, when there are as many vectors as
    /// coordinates, a determinant of `±1`.
    pub fn new(entries: Vec<(usize, Vec<i64>)>) -> Result<Self, NdError> {
        let labels: BTreeSet<usize> = entries.iter().map(|(l, _)| *l).collect();
        let dim = entries.first().map_or(0, |(_, v)| v.len());
        if labels.len() != entries.len() || entries.iter().any(|(_, v)| v.len() != dim) {
            return Err(NdError::NotABasis);
        }
        let base = BaseN { entries };
        if base.entries.len() == dim && base.determinant().abs() != 1 {
            return Err(NdError::NotABasis);
        }
        Ok(base)
    }

    pub fn entries(&self) -> &[(usize, Vec<i64>)] {
        &self.entries
    }

    pub fn vector(&self, label: usize) -> Option<&[i64]> {
        self.entries.iter().find(|(l, _)| *l == label).map(|(_, v)| v.as_slice())
    }

    pub fn labels(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|(l, _)| *l)
    }

    /// Determinant of the vectors taken in label order (Bareiss elimination).
    pub fn determinant(&self) -> i128 {
        let mut sorted: Vec<&(usize, Vec<i64>)> = self.entries.iter().collect();
        sorted.sort_by_key(|(l, _)| *l);
        let mut m: Vec<Vec<i128>> = sorted.iter().map(|(_, v)| v.iter().map(|&x| x as i128).collect()).collect();
        let n = m.len();
        if n == 0 {
            return 1;
        }
        let mut sign = 1;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if m[k][k] == 0 {
                let Some(swap) = (k + 1..n).find(|&r| m[r][k] != 0) else { return 0 };
                m.swap(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
                }
            }
            prev = m[k][k];
        }
        sign * m[n - 1][n - 1]
    }
}

/// Partial sums of `b` along `arr`; the `k`-th sum carries label `i_k`.
pub fn growth_base(b: &BaseN, arr: &Arrangement) -> Result<BaseN, NdError> {
    let mut seen = BTreeSet::new();
    if arr.len() != b.entries.len() || !arr.0.iter().all(|l| seen.insert(*l) && b.vector(*l).is_some()) {
        return Err(NdError::NotAPermutation);
    }
    let dim = b.entries.first().map_or(0, |(_, v)| v.len());
    let mut sum = vec![0i64; dim];
    let entries = arr
        .0
        .iter()
        .map(|&l| {
            for (s, x) in sum.iter_mut().zip(b.vector(l).expect("checked")) {
                *s += x;
            }
            (l, sum.clone())
        })
        .collect();
    Ok(BaseN { entries })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Terminal {
    /// All coordinates became equal in the full base.
    Apex,
    /// All coordinates became equal after at least one face-descent.
    FaceDescent,
    DepthLimit,
}

/// How ties in the descending sort are broken.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TieBreak {
    LabelAscending,
}

/// Labels whose coordinate vanished right after arrangement number `step`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionDrop {
    pub step: usize,
    pub labels: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NdSheathResult {
    pub arrangements: Vec<Arrangement>,
    pub dimension_drops: Vec<DimensionDrop>,
    pub terminal: Terminal,
    pub tie_break: TieBreak,
}

impl NdSheathResult {
    /// Number of petals crossed.
    pub fn petal_count(&self) -> usize {
        self.arrangements.len()
    }
}

/// The sheath walk as an iterator of arrangements.
#[derive(Clone, Debug)]
pub struct SheathWalk {
    /// `(label, coordinate, vector)` for the surviving labels.
    state: Vec<(usize, i64, Vec<i64>)>,
    previous: Option<Arrangement>,
    drops: Vec<DimensionDrop>,
    emitted: usize,
    finished: bool,
}

impl SheathWalk {
    pub fn new(w: &[i64]) -> Result<Self, NdError> {
        if w.is_empty() {
            return Err(NdError::Empty);
        }
        if let Some((i, &value)) = w.iter().enumerate().find(|(_, &x)| x <= 0) {
            return Err(NdError::NotInterior { label: i + 1, value });
        }
        let g = w.iter().fold(0i64, |g, x| g.gcd(x));
        if g != 1 {
            return Err(NdError::NotPrimitive(g));
        }
        let base = BaseN::standard(w.len());
        let state = base.entries.into_iter().zip(w).map(|((l, v), &c)| (l, c, v)).collect();
        Ok(SheathWalk { state, previous: None, drops: Vec::new(), emitted: 0, finished: false })
    }

    /// Face-descents so far.
    pub fn drops(&self) -> &[DimensionDrop] {
        &self.drops
    }

    pub fn is_finished(&self) -> bool {
        self.finished
    }

    /// Current coordinates, by surviving label.
    pub fn coordinates(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.state.iter().map(|(l, c, _)| (*l, *c))
    }

    /// Current base, restricted to the surviving labels.
    pub fn base(&self) -> BaseN {
        BaseN { entries: self.state.iter().map(|(l, _, v)| (*l, v.clone())).collect() }
    }
}

impl Iterator for SheathWalk {
    type Item = Arrangement;

    fn next(&mut self) -> Option<Arrangement> {
        if self.finished {
            return None;
        }
        let labels: Vec<usize> = self.state.iter().map(|(l, _, _)| *l).collect();
        let first = self.state[0].1;
        if self.state.iter().all(|(_, c, _)| *c == first) {
            self.finished = true;
            self.emitted += 1;
            let mut sorted = labels.clone();
            sorted.sort_unstable();
            return Some(match &self.previous {
                Some(p) => p.restricted_to(&labels),
                None => Arrangement(sorted),
            });
        }
        self.state.sort_by(|x, y| y.1.cmp(&x.1).then(x.0.cmp(&y.0)));
        let arr = Arrangement(self.state.iter().map(|(l, _, _)| *l).collect());
        let n = self.state.len();
        for k in 0..n - 1 {
            self.state[k].1 -= self.state[k + 1].1;
        }
        for k in 1..n {
            let prev = self.state[k - 1].2.clone();
            for (x, p) in self.state[k].2.iter_mut().zip(prev) {
                *x += p;
            }
        }
        let mut dropped: Vec<usize> = self.state.iter().filter(|(_, c, _)| *c == 0).map(|(l, _, _)| *l).collect();
        if !dropped.is_empty() {
            dropped.sort_unstable();
            self.state.retain(|(_, c, _)| *c != 0);
            self.drops.push(DimensionDrop { step: self.emitted, labels: dropped });
        }
        self.emitted += 1;
        self.previous = Some(arr.clone());
        Some(arr)
    }
}

/// At most `depth` arrangements of the sheath walk towards `w`.
pub fn nd_sheath(w: &[i64], depth: usize) -> Result<NdSheathResult, NdError> {
    if depth == 0 {
        return Err(NdError::ZeroDepth);
    }
    let mut walk = SheathWalk::new(w)?;
    let arrangements: Vec<Arrangement> = walk.by_ref().take(depth).collect();
    let terminal = if !walk.is_finished() {
        Terminal::DepthLimit
    } else if walk.drops().is_empty() {
        Terminal::Apex
    } else {
        Terminal::FaceDescent
    };
    Ok(NdSheathResult {
        arrangements,
        dimension_drops: walk.drops,
        terminal,
        tie_break: TieBreak::LabelAscending,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contact {
    pub common_arrangements: Vec<Arrangement>,
    pub order: usize,
}

/// Common initial part of the two sheaths, walking both in lockstep.
pub fn contact(w1: &[i64], w2: &[i64]) -> Result<Contact, NdError> {
    let a = SheathWalk::new(w1)?;
    let b = SheathWalk::new(w2)?;
    let common_arrangements: Vec<Arrangement> =
        a.zip(b).take_while(|(x, y)| x == y).map(|(x, _)| x).collect();
    Ok(Contact { order: common_arrangements.len(), common_arrangements })
}

/// Central projection of a positive vector onto the simplex `Σ xᵢ = 1`.
pub fn central_projection(v: &[i64]) -> Vec<Rational> {
    let s: i64 = v.iter().sum();
    v.iter().map(|&x| Rational::new(x, s)).collect()
}
