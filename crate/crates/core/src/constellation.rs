//! Finite constellations of infinitely near points ("astres") based at `O`.
//!
//! An astre is described by its direct predecessor `p_D` and, when it is a
//! satellite, by its indirect predecessor `p_I`. A [`Constellation`] is
//! always closed under `p_D` and acyclic; the finer geometric constraints are
//! reported by [`Constellation::validate`] as data.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Name of the base point.
pub const BASE: &str = "O";

/// Name of an astre. Non-empty, no whitespace, no `#`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AstreId(String);

impl AstreId {
    pub fn new(name: impl Into<String>) -> Result<Self, ConstellationError> {
        let name = name.into();
        if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == '#') {
            return Err(ConstellationError::BadName(name));
        }
        Ok(AstreId(name))
    }

    /// The base point `O`.
    pub fn base() -> Self {
        AstreId(BASE.to_string())
    }

    pub fn is_base(&self) -> bool {
        self.0 == BASE
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl FromStr for AstreId {
    type Err = ConstellationError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AstreId::new(s)
    }
}

impl fmt::Display for AstreId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AstreKind {
    Base,
    Free,
    Satellite,
}

impl fmt::Display for AstreKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AstreKind::Base => "base",
            AstreKind::Free => "free",
            AstreKind::Satellite => "satellite",
        })
    }
}

/// One astre with its predecessors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AstreRecord {
    pub id: AstreId,
    pub direct: AstreId,
    pub indirect: Option<AstreId>,
}

impl AstreRecord {
    pub fn free(id: AstreId, direct: AstreId) -> Self {
        AstreRecord { id, direct, indirect: None }
    }

    pub fn satellite(id: AstreId, direct: AstreId, indirect: AstreId) -> Self {
        AstreRecord { id, direct, indirect: Some(indirect) }
    }

    pub fn kind(&self) -> AstreKind {
        if self.id.is_base() {
            AstreKind::Base
        } else if self.indirect.is_some() {
            AstreKind::Satellite
        } else {
            AstreKind::Free
        }
    }
}

/// Structural errors: the record set does not describe a constellation at all.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ConstellationError {
    #[error("invalid astre name {0:?}")]
    BadName(String),
    #[error("the name O is reserved for the base point")]
    ReservedId,
    #[error("duplicate astre {0}")]
    DuplicateId(AstreId),
    #[error("astre {astre} refers to undeclared astre {reference}")]
    UnknownReference { astre: AstreId, reference: AstreId },
    #[error("direct predecessor chain of {0} never reaches O")]
    Cycle(AstreId),
    #[error("unknown astre {0}")]
    UnknownAstre(AstreId),
    #[error("satellite bias must lie in [0, 1]")]
    InvalidBias,
}

/// A geometric constraint broken by an otherwise well-formed constellation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    /// `p_D(A) = O` but `p_I(A)` is present.
    HeightOneSatellite { astre: AstreId },
    /// `p_I(A)` is neither `p_D(B)` nor `p_I(B)` for `B = p_D(A)`.
    IndirectNotAllowed { astre: AstreId, indirect: AstreId, allowed: Vec<AstreId> },
    /// Two satellites sit on the same intersection point.
    DuplicateSatellitePair { astre: AstreId, other: AstreId, direct: AstreId, indirect: AstreId },
}

impl Violation {
    pub fn astre(&self) -> &AstreId {
        match self {
            Violation::HeightOneSatellite { astre }
            | Violation::IndirectNotAllowed { astre, .. }
            | Violation::DuplicateSatellitePair { astre, .. } => astre,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::HeightOneSatellite { astre } => write!(f, "height-1 satellite: {astre}"),
            Violation::IndirectNotAllowed { astre, indirect, allowed } => {
                let allowed: Vec<&str> = allowed.iter().map(AstreId::as_str).collect();
                write!(
                    f,
                    "indirect predecessor not allowed: p_I({astre}) = {indirect}, expected one of {{{}}}",
                    allowed.join(", ")
                )
            }
            Violation::DuplicateSatellitePair { astre, other, direct, indirect } => write!(
                f,
                "duplicate satellite pair: {astre} and {other} both have (p_D, p_I) = ({direct}, {indirect})"
            ),
        }
    }
}

/// A finite constellation, stored in canonical `(height, name)` order with `O` first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constellation {
    records: Vec<AstreRecord>,
    heights: Vec<u32>,
    direct: Vec<usize>,
    indirect: Vec<Option<usize>>,
    index: BTreeMap<AstreId, usize>,
}

impl Default for Constellation {
    fn default() -> Self {
        Constellation::base_only()
    }
}

impl Constellation {
    /// The constellation `{O}`.
    pub fn base_only() -> Self {
        Constellation::from_records(Vec::new()).expect("empty record set is well formed")
    }

    /// Builds a constellation from records of the astres other than `O`.
    ///
    /// The records may come in any order; they are sorted by height, then by
    /// name. Only structural problems are errors here, see
    /// [`Constellation::validate`] for the rest.
    pub fn from_records(
        records: impl IntoIterator<Item = AstreRecord>,
    ) -> Result<Self, ConstellationError> {
        let mut by_id: BTreeMap<AstreId, AstreRecord> = BTreeMap::new();
        for rec in records {
            if rec.id.is_base() {
                return Err(ConstellationError::ReservedId);
            }
            if by_id.contains_key(&rec.id) {
                return Err(ConstellationError::DuplicateId(rec.id));
            }
            by_id.insert(rec.id.clone(), rec);
        }
        for rec in by_id.values() {
            for reference in core::iter::once(&rec.direct).chain(rec.indirect.as_ref()) {
                if !reference.is_base() && !by_id.contains_key(reference) {
                    return Err(ConstellationError::UnknownReference {
                        astre: rec.id.clone(),
                        reference: reference.clone(),
                    });
                }
            }
        }

        let mut height: BTreeMap<&AstreId, u32> = BTreeMap::new();
        for start in by_id.keys() {
            let mut chain = Vec::new();
            let mut cur = start;
            let base_height = loop {
                if cur.is_base() {
                    break 0;
                }
                if let Some(&h) = height.get(cur) {
                    break h;
                }
                if chain.contains(&cur) {
                    return Err(ConstellationError::Cycle(start.clone()));
                }
                chain.push(cur);
                cur = &by_id[cur].direct;
            };
            for (depth, id) in chain.iter().rev().enumerate() {
                height.insert(id, base_height + depth as u32 + 1);
            }
        }

        let mut order: Vec<(u32, AstreId)> =
            by_id.keys().map(|id| (height[id], id.clone())).collect();
        order.sort();

        let base = AstreRecord::free(AstreId::base(), AstreId::base());
        let mut records = vec![base];
        let mut heights = vec![0];
        for (h, id) in order {
            heights.push(h);
            records.push(by_id.remove(&id).expect("id taken from the map"));
        }
        let index: BTreeMap<AstreId, usize> =
            records.iter().enumerate().map(|(i, r)| (r.id.clone(), i)).collect();
        let direct = records.iter().map(|r| index[&r.direct]).collect();
        let indirect = records.iter().map(|r| r.indirect.as_ref().map(|p| index[p])).collect();
        Ok(Constellation { records, heights, direct, indirect, index })
    }

    /// Number of astres, `O` included.
    pub fn len(&self) -> usize {
        self.records.len()
    }

    /// Always false: `O` is present.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Records in canonical order, `O` first.
    pub fn records(&self) -> &[AstreRecord] {
        &self.records
    }

    /// Records of the astres other than `O`.
    pub fn non_base(&self) -> &[AstreRecord] {
        &self.records[1..]
    }

    pub fn ids(&self) -> impl Iterator<Item = &AstreId> {
        self.records.iter().map(|r| &r.id)
    }

    pub fn contains(&self, a: &AstreId) -> bool {
        self.index.contains_key(a)
    }

    pub fn get(&self, a: &AstreId) -> Option<&AstreRecord> {
        self.index.get(a).map(|&i| &self.records[i])
    }

    fn lookup(&self, a: &AstreId) -> Result<usize, ConstellationError> {
        self.index.get(a).copied().ok_or_else(|| ConstellationError::UnknownAstre(a.clone()))
    }

    /// Length of the `p_D` chain from `a` down to `O`.
    pub fn height(&self, a: &AstreId) -> Result<u32, ConstellationError> {
        self.lookup(a).map(|i| self.heights[i])
    }

    pub fn kind(&self, a: &AstreId) -> Result<AstreKind, ConstellationError> {
        self.lookup(a).map(|i| self.records[i].kind())
    }

    pub fn direct(&self, a: &AstreId) -> Result<&AstreId, ConstellationError> {
        self.lookup(a).map(|i| &self.records[i].direct)
    }

    pub fn indirect(&self, a: &AstreId) -> Result<Option<&AstreId>, ConstellationError> {
        self.lookup(a).map(|i| self.records[i].indirect.as_ref())
    }

    pub fn free_count(&self) -> usize {
        self.records.iter().filter(|r| r.kind() == AstreKind::Free).count()
    }

    pub fn satellite_count(&self) -> usize {
        self.records.iter().filter(|r| r.kind() == AstreKind::Satellite).count()
    }

    pub fn max_height(&self) -> u32 {
        self.heights.last().copied().unwrap_or(0)
    }

    pub(crate) fn index_of(&self, a: &AstreId) -> Option<usize> {
        self.index.get(a).copied()
    }

    /// Every broken geometric constraint, in canonical astre order.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut pairs: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (i, rec) in self.records.iter().enumerate().skip(1) {
            let Some(c) = self.indirect[i] else { continue };
            let b = self.direct[i];
            if b == 0 {
                out.push(Violation::HeightOneSatellite { astre: rec.id.clone() });
            } else {
                let mut allowed = vec![self.direct[b]];
                allowed.extend(self.indirect[b]);
                if !allowed.contains(&c) {
                    out.push(Violation::IndirectNotAllowed {
                        astre: rec.id.clone(),
                        indirect: self.records[c].id.clone(),
                        allowed: allowed.iter().map(|&k| self.records[k].id.clone()).collect(),
                    });
                }
            }
            if let Some(&first) = pairs.get(&(b, c)) {
                out.push(Violation::DuplicateSatellitePair {
                    astre: rec.id.clone(),
                    other: self.records[first].id.clone(),
                    direct: self.records[b].id.clone(),
                    indirect: self.records[c].id.clone(),
                });
            } else {
                pairs.insert((b, c), i);
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Legal indirect predecessors for a new satellite on top of `parent`,
    /// excluding pairs already used by an existing satellite.
    pub fn free_satellite_slots(&self, parent: &AstreId) -> Vec<AstreId> {
        let Some(b) = self.index_of(parent) else { return Vec::new() };
        slots(&self.direct, &self.indirect, b)
            .into_iter()
            .map(|c| self.records[c].id.clone())
            .collect()
    }
}

fn slots(direct: &[usize], indirect: &[Option<usize>], b: usize) -> Vec<usize> {
    if b == 0 {
        return Vec::new();
    }
    let used: BTreeSet<usize> = (1..direct.len())
        .filter(|&i| direct[i] == b)
        .filter_map(|i| indirect[i])
        .collect();
    core::iter::once(direct[b])
        .chain(indirect[b])
        .filter(|c| !used.contains(c))
        .collect()
}

fn generated_name(k: usize) -> AstreId {
    AstreId(format!("A{k}"))
}

/// Deterministic random constellation with `n` astres besides `O`, named
/// `A1..An` in creation order.
///
/// Each new astre picks its direct predecessor uniformly among the astres
/// already present, then becomes a satellite with probability
/// `satellite_bias` provided a legal unused `(p_D, p_I)` pair exists.
pub fn random_constellation(
    seed: u64,
    n: usize,
    satellite_bias: Ratio<u32>,
) -> Result<Constellation, ConstellationError> {
    let (num, den) = (*satellite_bias.numer(), *satellite_bias.denom());
    if num > den {
        return Err(ConstellationError::InvalidBias);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut direct = vec![0usize];
    let mut indirect: Vec<Option<usize>> = vec![None];
    for _ in 0..n {
        let parent = rng.gen_range(0..direct.len());
        let mut choice = None;
        if rng.gen_ratio(num, den) {
            choice = slots(&direct, &indirect, parent).choose(&mut rng).copied();
        }
        direct.push(parent);
        indirect.push(choice);
    }
    Ok(from_index_form(&direct, &indirect))
}

fn from_index_form(direct: &[usize], indirect: &[Option<usize>]) -> Constellation {
    let name = |i: usize| if i == 0 { AstreId::base() } else { generated_name(i) };
    let records = (1..direct.len()).map(|i| AstreRecord {
        id: name(i),
        direct: name(direct[i]),
        indirect: indirect[i].map(name),
    });
    Constellation::from_records(records).expect("generated records are well formed")
}

/// Every valid constellation with at most `max_new` astres besides `O`,
/// built in creation order with names `A1, A2, ...`.
///
/// Isomorphic constellations appear several times under different
/// labelings; every isomorphism class appears at least once.
pub fn all_constellations(max_new: usize) -> Vec<Constellation> {
    fn grow(
        direct: &mut Vec<usize>,
        indirect: &mut Vec<Option<usize>>,
        max_new: usize,
        out: &mut Vec<Constellation>,
    ) {
        out.push(from_index_form(direct, indirect));
        if direct.len() > max_new {
            return;
        }
        for parent in 0..direct.len() {
            let options: Vec<Option<usize>> = core::iter::once(None)
                .chain(slots(direct, indirect, parent).into_iter().map(Some))
                .collect();
            for choice in options {
                direct.push(parent);
                indirect.push(choice);
                grow(direct, indirect, max_new, out);
                direct.pop();
                indirect.pop();
            }
        }
    }
    let mut out = Vec::new();
    grow(&mut vec![0], &mut vec![None], max_new, &mut out);
    out
}


#[cfg(test)]
pub(crate) use tests::figure_one;
