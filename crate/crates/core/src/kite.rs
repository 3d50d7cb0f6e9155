//! Sails, cords and kites, with the integral affine chart of each complete sail.
//!
//! Every astre `A ≠ O` contributes one elementary sail `v(A)` and one cord.
//! A free astre glues a half sail at the full vertex `T(p_D(A))` and starts a
//! new complete sail; a satellite glues a simple sail along the lateral side
//! `{T(p_D(A)), T(p_I(A))}` of the kite built so far. Full vertices `T(A)`
//! and star points `I(A)` stand for the exceptional curve `E_A` and the
//! point `A` respectively.
//!
//! Each complete sail owns a chart in the lotus of `(e₁, e₂)`: its half sail
//! sits at `T(p_D) = e₁`, `T(A) = e₁ + e₂`, `I(A) = ½(e₁ + e₂)`, and each
//! simple sail puts its terminal vertex at the sum of its two base vertices.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{LatticeVec, Rational};
use crate::blowup::DualGraph;
use crate::constellation::{AstreId, AstreKind, Constellation, Violation};
use crate::enriques::{EdgeKind, EnriquesDiagram, EnriquesEdge};

/// A point of a chart with exact rational coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Point2Q {
    pub x: Rational,
    pub y: Rational,
}

impl Point2Q {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point2Q { x, y }
    }

    pub fn from_lattice(v: LatticeVec) -> Self {
        Point2Q::new(Rational::from_integer(v.a), Rational::from_integer(v.b))
    }

    pub fn midpoint(p: LatticeVec, q: LatticeVec) -> Self {
        Point2Q::new(Rational::new(p.a + q.a, 2), Rational::new(p.b + q.b, 2))
    }

    /// `½·v`.
    pub fn half(v: LatticeVec) -> Self {
        Point2Q::midpoint(v, LatticeVec::ZERO)
    }
}

impl fmt::Display for Point2Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// All points lie on one line.
pub fn collinear(points: &[Point2Q]) -> bool {
    let Some(first) = points.first() else { return true };
    let Some(other) = points.iter().find(|p| *p != first) else { return true };
    let (dx, dy) = (other.x - first.x, other.y - first.y);
    points.iter().all(|p| dx * (p.y - first.y) == dy * (p.x - first.x))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SailShape {
    /// Half sail glued at `T(base)`.
    Half { base: AstreId },
    /// Simple sail with base `T(first_base) T(second_base)`.
    Simple { first_base: AstreId, second_base: AstreId },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementarySail {
    pub astre: AstreId,
    pub shape: SailShape,
    /// Index of the owning complete sail in [`Kite::complete_sails`].
    pub complete_sail: usize,
    /// Star point `I(A)` in the chart of the owning complete sail.
    pub star: Point2Q,
}

impl ElementarySail {
    /// Full vertices; the terminal vertex `T(astre)` comes last.
    pub fn full_vertices(&self) -> Vec<&AstreId> {
        match &self.shape {
            SailShape::Half { base } => vec![base, &self.astre],
            SailShape::Simple { first_base, second_base } => {
                vec![first_base, second_base, &self.astre]
            }
        }
    }

    pub fn is_half(&self) -> bool {
        matches!(self.shape, SailShape::Half { .. })
    }

    fn lateral_sides(&self) -> Vec<(AstreId, AstreId)> {
        match &self.shape {
            SailShape::Half { base } => vec![side(base, &self.astre)],
            SailShape::Simple { first_base, second_base } => {
                vec![side(first_base, &self.astre), side(second_base, &self.astre)]
            }
        }
    }
}

fn side(a: &AstreId, b: &AstreId) -> (AstreId, AstreId) {
    if a <= b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    }
}

/// A maximal edge-connected block started by one half sail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompleteSail {
    root: AstreId,
    members: Vec<AstreId>,
    chart: BTreeMap<AstreId, LatticeVec>,
}

impl CompleteSail {
    /// The free astre whose half sail started this complete sail.
    pub fn root(&self) -> &AstreId {
        &self.root
    }

    /// Astres whose elementary sails make up this complete sail, root first.
    pub fn members(&self) -> &[AstreId] {
        &self.members
    }

    pub fn simple_count(&self) -> usize {
        self.members.len() - 1
    }

    /// Chart position of the full vertex `T(a)`, if `T(a)` lies in this sail.
    pub fn vertex(&self, a: &AstreId) -> Option<LatticeVec> {
        self.chart.get(a).copied()
    }

    pub fn chart(&self) -> &BTreeMap<AstreId, LatticeVec> {
        &self.chart
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CordKind {
    Libre,
    Satellite,
}

/// The cord `I(from) → I(astre)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cord {
    pub astre: AstreId,
    pub from: AstreId,
    pub kind: CordKind,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum KiteError {
    #[error("constellation is invalid ({} violation(s))", .0.len())]
    InvalidConstellation(Vec<Violation>),
    #[error("{astre}: no free lateral side between T({first}) and T({second})")]
    MissingLateralSide { astre: AstreId, first: AstreId, second: AstreId },
    #[error("{0} has no cord")]
    UnknownCord(AstreId),
    #[error("cord of {0} is not a satellite cord")]
    NotSatellite(AstreId),
    #[error("cord of {next} does not start where the cord of {prev} ends")]
    NotConsecutive { prev: AstreId, next: AstreId },
    #[error("cords of {first} and {second} lie in different complete sails")]
    DifferentSails { first: AstreId, second: AstreId },
}

/// The kite of a constellation: axis, elementary sails grouped into complete
/// sails with their charts, cords, and the lateral sides not yet glued over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kite {
    sails: Vec<CompleteSail>,
    elementary: BTreeMap<AstreId, ElementarySail>,
    cords: BTreeMap<AstreId, Cord>,
    lateral: BTreeMap<(AstreId, AstreId), AstreId>,
    order: Vec<AstreId>,
}

/// Builds the kite of a valid constellation.
pub fn build_kite(c: &Constellation) -> Result<Kite, KiteError> {
    let violations = c.validate();
    if !violations.is_empty() {
        return Err(KiteError::InvalidConstellation(violations));
    }
    assemble(c)
}

fn assemble(c: &Constellation) -> Result<Kite, KiteError> {
    let mut kite = Kite {
        sails: Vec::new(),
        elementary: BTreeMap::new(),
        cords: BTreeMap::new(),
        lateral: BTreeMap::new(),
        order: c.ids().cloned().collect(),
    };
    for rec in c.non_base() {
        let a = &rec.id;
        let b = &rec.direct;
        match &rec.indirect {
            None => {
                let index = kite.sails.len();
                let chart = BTreeMap::from([
                    (b.clone(), LatticeVec::E1),
                    (a.clone(), LatticeVec::E1 + LatticeVec::E2),
                ]);
                kite.sails.push(CompleteSail { root: a.clone(), members: vec![a.clone()], chart });
                let sail = ElementarySail {
                    astre: a.clone(),
                    shape: SailShape::Half { base: b.clone() },
                    complete_sail: index,
                    star: Point2Q::new(Rational::new(1, 2), Rational::new(1, 2)),
                };
                kite.add_sail(sail);
                kite.cords.insert(a.clone(), Cord { astre: a.clone(), from: b.clone(), kind: CordKind::Libre });
            }
            Some(cc) => {
                let owner = kite.lateral.remove(&side(b, cc)).ok_or_else(|| {
                    KiteError::MissingLateralSide { astre: a.clone(), first: cc.clone(), second: b.clone() }
                })?;
                let index = kite.elementary[&owner].complete_sail;
                let sail = &mut kite.sails[index];
                let tb = sail.chart[b];
                let tc = sail.chart[cc];
                sail.chart.insert(a.clone(), tb + tc);
                sail.members.push(a.clone());
                let sail = ElementarySail {
                    astre: a.clone(),
                    shape: SailShape::Simple { first_base: cc.clone(), second_base: b.clone() },
                    complete_sail: index,
                    star: Point2Q::midpoint(tc, tb),
                };
                kite.add_sail(sail);
                kite.cords.insert(a.clone(), Cord { astre: a.clone(), from: b.clone(), kind: CordKind::Satellite });
            }
        }
    }
    Ok(kite)
}

impl Kite {
    fn add_sail(&mut self, sail: ElementarySail) {
        for s in sail.lateral_sides() {
            self.lateral.insert(s, sail.astre.clone());
        }
        self.elementary.insert(sail.astre.clone(), sail);
    }

    pub fn complete_sails(&self) -> &[CompleteSail] {
        &self.sails
    }

    pub fn elementary_sail(&self, a: &AstreId) -> Option<&ElementarySail> {
        self.elementary.get(a)
    }

    /// Elementary sails in construction order.
    pub fn elementary_sails(&self) -> impl Iterator<Item = &ElementarySail> {
        self.order.iter().filter_map(|a| self.elementary.get(a))
    }

    /// Cords in construction order.
    pub fn cords(&self) -> impl Iterator<Item = &Cord> {
        self.order.iter().filter_map(|a| self.cords.get(a))
    }

    pub fn cord(&self, a: &AstreId) -> Option<&Cord> {
        self.cords.get(a)
    }

    /// Unconsumed lateral sides `{T(X), T(Y)}` with the astre owning each.
    pub fn lateral_sides(&self) -> impl Iterator<Item = (&(AstreId, AstreId), &AstreId)> {
        self.lateral.iter()
    }

    /// Astres in construction order, `O` first.
    pub fn astres(&self) -> &[AstreId] {
        &self.order
    }

    /// The complete sail containing `v(a)`.
    pub fn sail_of(&self, a: &AstreId) -> Option<&CompleteSail> {
        self.elementary.get(a).map(|s| &self.sails[s.complete_sail])
    }

    /// Chart position of `T(a)` in the complete sail owning `v(a)`.
    pub fn terminal(&self, a: &AstreId) -> Option<LatticeVec> {
        self.sail_of(a).and_then(|s| s.vertex(a))
    }

    /// Whether a chain of consecutive satellite cords inside one complete
    /// sail is a straight line in that sail's chart.
    pub fn is_geodesic(&self, cords: &[AstreId]) -> Result<bool, KiteError> {
        let mut sail_index = None;
        let mut points = Vec::with_capacity(cords.len() + 1);
        for (k, a) in cords.iter().enumerate() {
            let cord = self.cords.get(a).ok_or_else(|| KiteError::UnknownCord(a.clone()))?;
            if cord.kind != CordKind::Satellite {
                return Err(KiteError::NotSatellite(a.clone()));
            }
            if k > 0 && cord.from != cords[k - 1] {
                return Err(KiteError::NotConsecutive { prev: cords[k - 1].clone(), next: a.clone() });
            }
            let sail = &self.elementary[a];
            match sail_index {
                None => {
                    sail_index = Some(sail.complete_sail);
                    let start = self
                        .elementary
                        .get(&cord.from)
                        .filter(|s| s.complete_sail == sail.complete_sail)
                        .ok_or_else(|| KiteError::DifferentSails { first: cord.from.clone(), second: a.clone() })?;
                    points.push(start.star);
                }
                Some(i) if i != sail.complete_sail => {
                    return Err(KiteError::DifferentSails { first: cords[0].clone(), second: a.clone() });
                }
                Some(_) => {}
            }
            points.push(sail.star);
        }
        Ok(collinear(&points))
    }

    /// The cordage as an Enriques diagram: vertices `I(A)`, edges the cords,
    /// curved edges the free cords, and a straight pair aligned exactly when
    /// the two cords form a geodesic.
    pub fn enriques_diagram(&self) -> EnriquesDiagram {
        let edges = self.cords().map(|cord| {
            let kind = match cord.kind {
                CordKind::Libre => EdgeKind::Curved,
                CordKind::Satellite => EdgeKind::Straight,
            };
            let aligned = self.cords.get(&cord.from).map(|below| match (below.kind, cord.kind) {
                (_, CordKind::Libre) => false,
                (CordKind::Libre, CordKind::Satellite) => true,
                (CordKind::Satellite, CordKind::Satellite) => self
                    .is_geodesic(&[below.astre.clone(), cord.astre.clone()])
                    .expect("consecutive satellite cords share a complete sail"),
            });
            EnriquesEdge { from: cord.from.clone(), to: cord.astre.clone(), kind, aligned_with_incoming: aligned }
        });
        EnriquesDiagram::from_parts(self.order.iter().cloned(), edges)
            .expect("the cordage of a kite is a decorated tree")
    }

    /// The union of lateral sides as a weighted graph on the full vertices:
    /// `T(A)` weighs minus the number of elementary sails through it, the
    /// axis counting at `T(O)`.
    pub fn dual_graph(&self) -> DualGraph {
        let mut weights: BTreeMap<AstreId, i64> = self.order.iter().map(|a| (a.clone(), 0)).collect();
        *weights.get_mut(&AstreId::base()).expect("O is present") -= 1;
        for sail in self.elementary.values() {
            for v in sail.full_vertices() {
                *weights.get_mut(v).expect("sail vertices are astres") -= 1;
            }
        }
        DualGraph::new(weights, self.lateral.keys().cloned())
    }

    /// Number of complete sails, the axis excluded.
    pub fn complete_sail_count(&self) -> usize {
        self.sails.len()
    }

    pub fn simple_sail_count(&self) -> usize {
        self.elementary.values().filter(|s| !s.is_half()).count()
    }

    pub fn cord_count(&self) -> usize {
        self.cords.len()
    }
}

/// Enriques diagram read off the cordage.
pub fn enriques_from_kite(k: &Kite) -> EnriquesDiagram {
    k.enriques_diagram()
}

/// Dual graph read off the lateral sides of the voilure.
pub fn dual_from_voilure(k: &Kite) -> DualGraph {
    k.dual_graph()
}

/// The chart laws of a kite: `I(A) = ½·T(A)` with `T(A)` primitive for every
/// astre, and `T(A) = T(p_D(A)) + T(p_I(A))` for every satellite. Returns the
/// astres that break one of them.
pub fn chart_law_failures(k: &Kite, c: &Constellation) -> Vec<AstreId> {
    let mut bad = BTreeSet::new();
    for sail in k.elementary_sails() {
        let chart = &k.sails[sail.complete_sail];
        let t = chart.vertex(&sail.astre).expect("terminal vertex is charted");
        if !t.is_primitive() || Point2Q::half(t) != sail.star {
            bad.insert(sail.astre.clone());
        }
        if c.kind(&sail.astre) == Ok(AstreKind::Satellite) {
            let d = c.direct(&sail.astre).expect("astre of c");
            let i = c.indirect(&sail.astre).expect("astre of c").expect("satellite");
            match (chart.vertex(d), chart.vertex(i)) {
                (Some(td), Some(ti)) if td + ti == t => {}
                _ => {
                    bad.insert(sail.astre.clone());
                }
            }
        }
    }
    bad.into_iter().collect()
}
