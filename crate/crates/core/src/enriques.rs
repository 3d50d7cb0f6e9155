//! Decorated Enriques diagrams.
//!
//! The diagram is the `p_D` tree of a constellation. The edge into a free
//! astre is curved, the edge into a satellite is straight, and every pair of
//! consecutive edges `(X→B, B→A)` carries a boolean telling whether the pair
//! goes straight on or breaks. The decorations are stored combinatorially;
//! drawing is left to emitters.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::constellation::{
    AstreId, AstreKind, AstreRecord, Constellation, ConstellationError, Violation,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeKind {
    Curved,
    Straight,
}

impl fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeKind::Curved => "curved",
            EdgeKind::Straight => "straight",
        })
    }
}

/// The edge `from → to`, oriented away from the root.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct EnriquesEdge {
    pub from: AstreId,
    pub to: AstreId,
    pub kind: EdgeKind,
    /// Whether the incoming edge at `from` and this edge go straight on.
    /// `None` exactly when `from` is the root.
    pub aligned_with_incoming: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EnriquesError {
    #[error("constellation is invalid ({} violation(s))", .0.len())]
    InvalidConstellation(Vec<Violation>),
    #[error("diagram root must be O, got {0}")]
    BadRoot(AstreId),
    #[error("vertex {0} has no incoming edge")]
    Orphan(AstreId),
    #[error("vertex {0} has more than one incoming edge")]
    TwoParents(AstreId),
    #[error("edge {from}->{to} mentions a vertex outside the diagram")]
    DanglingEdge { from: AstreId, to: AstreId },
    #[error("edge into {0}: alignment flag must be present iff the edge does not start at the root")]
    AlignmentPresence(AstreId),
    #[error("edge into {0}: alignment flag contradicts the curved-edge conventions")]
    AlignmentConvention(AstreId),
    #[error("straight edge into {0} starts at the root")]
    StraightFromRoot(AstreId),
    #[error(transparent)]
    Structure(#[from] ConstellationError),
    #[error("decoded constellation is invalid ({} violation(s))", .0.len())]
    DecodedInvalid(Vec<Violation>),
}

/// A rooted tree with curved/straight edges and alignment flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnriquesDiagram {
    vertices: BTreeSet<AstreId>,
    /// Keyed by the upper end of each edge.
    edges: BTreeMap<AstreId, EnriquesEdge>,
}

impl EnriquesDiagram {
    /// Assembles a diagram and checks its syntactic invariants: a tree rooted
    /// at `O`, alignment flags present exactly on non-root edges, curved
    /// outgoing edges never aligned, straight edges after a curved one always
    /// aligned.
    pub fn from_parts(
        vertices: impl IntoIterator<Item = AstreId>,
        edges: impl IntoIterator<Item = EnriquesEdge>,
    ) -> Result<Self, EnriquesError> {
        let vertices: BTreeSet<AstreId> = vertices.into_iter().collect();
        let root = AstreId::base();
        if !vertices.contains(&root) {
            return Err(EnriquesError::BadRoot(
                vertices.iter().next().cloned().unwrap_or_else(AstreId::base),
            ));
        }
        let mut by_target = BTreeMap::new();
        for e in edges {
            if !vertices.contains(&e.from) || !vertices.contains(&e.to) {
                return Err(EnriquesError::DanglingEdge { from: e.from, to: e.to });
            }
            if e.to.is_base() {
                return Err(EnriquesError::BadRoot(e.to));
            }
            if by_target.contains_key(&e.to) {
                return Err(EnriquesError::TwoParents(e.to));
            }
            by_target.insert(e.to.clone(), e);
        }
        for v in vertices.iter().filter(|v| !v.is_base()) {
            if !by_target.contains_key(v) {
                return Err(EnriquesError::Orphan(v.clone()));
            }
        }
        // acyclicity: every vertex reaches the root
        for start in by_target.keys() {
            let mut cur = start;
            let mut steps = 0;
            while !cur.is_base() {
                cur = &by_target[cur].from;
                steps += 1;
                if steps > vertices.len() {
                    return Err(EnriquesError::Orphan(start.clone()));
                }
            }
        }
        for e in by_target.values() {
            let incoming = by_target.get(&e.from);
            match (incoming, e.aligned_with_incoming) {
                (None, None) => {
                    if e.kind == EdgeKind::Straight {
                        return Err(EnriquesError::StraightFromRoot(e.to.clone()));
                    }
                }
                (None, Some(_)) | (Some(_), None) => {
                    return Err(EnriquesError::AlignmentPresence(e.to.clone()))
                }
                (Some(inc), Some(aligned)) => {
                    let forced = match (inc.kind, e.kind) {
                        (_, EdgeKind::Curved) => Some(false),
                        (EdgeKind::Curved, EdgeKind::Straight) => Some(true),
                        (EdgeKind::Straight, EdgeKind::Straight) => None,
                    };
                    if forced.is_some_and(|f| f != aligned) {
                        return Err(EnriquesError::AlignmentConvention(e.to.clone()));
                    }
                }
            }
        }
        Ok(EnriquesDiagram { vertices, edges: by_target })
    }

    pub fn vertices(&self) -> impl Iterator<Item = &AstreId> {
        self.vertices.iter()
    }

    /// Edges ordered by their upper vertex.
    pub fn edges(&self) -> impl Iterator<Item = &EnriquesEdge> {
        self.edges.values()
    }

    pub fn edge_into(&self, a: &AstreId) -> Option<&EnriquesEdge> {
        self.edges.get(a)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Maximal runs of straight edges in which consecutive pairs are aligned,
    /// each listed from the bottom vertex up.
    pub fn straight_runs(&self) -> Vec<Vec<AstreId>> {
        let continues = |e: &EnriquesEdge| {
            e.kind == EdgeKind::Straight
                && e.aligned_with_incoming == Some(true)
                && self.edges.get(&e.from).is_some_and(|inc| inc.kind == EdgeKind::Straight)
        };
        let mut next: BTreeMap<&AstreId, &AstreId> = BTreeMap::new();
        for e in self.edges.values().filter(|e| continues(e)) {
            next.insert(&e.from, &e.to);
        }
        let mut runs = Vec::new();
        for e in self.edges.values() {
            if e.kind != EdgeKind::Straight || continues(e) {
                continue;
            }
            let mut run = alloc::vec![e.from.clone(), e.to.clone()];
            let mut cur = &e.to;
            while let Some(n) = next.get(cur) {
                run.push((*n).clone());
                cur = n;
            }
            runs.push(run);
        }
        runs.sort();
        runs
    }
}

/// Builds the decorated Enriques diagram of a valid constellation.
pub fn build_enriques(c: &Constellation) -> Result<EnriquesDiagram, EnriquesError> {
    let violations = c.validate();
    if !violations.is_empty() {
        return Err(EnriquesError::InvalidConstellation(violations));
    }
    let kind_of = |r: &AstreRecord| match r.kind() {
        AstreKind::Satellite => EdgeKind::Straight,
        _ => EdgeKind::Curved,
    };
    let edges = c.non_base().iter().map(|r| {
        let parent = c.get(&r.direct).expect("closed under p_D");
        let aligned = if parent.id.is_base() {
            None
        } else {
            Some(match (parent.kind(), r.kind()) {
                (_, AstreKind::Free) => false,
                (AstreKind::Free, _) => true,
                _ => parent.indirect == r.indirect,
            })
        };
        EnriquesEdge {
            from: r.direct.clone(),
            to: r.id.clone(),
            kind: kind_of(r),
            aligned_with_incoming: aligned,
        }
    });
    EnriquesDiagram::from_parts(c.ids().cloned(), edges)
}

/// Reads `p_D` and `p_I` back from a decorated diagram.
///
/// `p_D(A)` is the lower end of the edge into `A`. For a satellite `A`, walk
/// down the maximal run of pairwise aligned straight edges ending with the
/// edge into `A`; `p_I(A)` is the vertex just below the bottom of that run.
/// When the edge into `A` breaks with its predecessor the run is that single
/// edge and `p_I(A)` is the parent of `p_D(A)`.
pub fn decode_constellation(d: &EnriquesDiagram) -> Result<Constellation, EnriquesError> {
    let mut records = Vec::with_capacity(d.edges.len());
    for e in d.edges.values() {
        let indirect = match e.kind {
            EdgeKind::Curved => None,
            EdgeKind::Straight => {
                let mut upper = e;
                while let Some(below) = d.edges.get(&upper.from) {
                    if below.kind == EdgeKind::Straight && upper.aligned_with_incoming == Some(true)
                    {
                        upper = below;
                    } else {
                        break;
                    }
                }
                match d.edges.get(&upper.from) {
                    Some(below) => Some(below.from.clone()),
                    None => return Err(EnriquesError::StraightFromRoot(e.to.clone())),
                }
            }
        };
        records.push(AstreRecord { id: e.to.clone(), direct: e.from.clone(), indirect });
    }
    let c = Constellation::from_records(records)?;
    let violations = c.validate();
    if violations.is_empty() {
        Ok(c)
    } else {
        Err(EnriquesError::DecodedInvalid(violations))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constellation::{all_constellations, figure_one, random_constellation};
    use alloc::vec;
    use num_rational::Ratio;

    fn id(s: &str) -> AstreId {
        AstreId::new(s).unwrap()
    }

    #[test]
    fn figure_one_edge_kinds() {
        let d = build_enriques(&figure_one()).unwrap();
        assert_eq!(d.edge_count(), 14);
        let straight: BTreeSet<&str> = d
            .edges()
            .filter(|e| e.kind == EdgeKind::Straight)
            .map(|e| e.to.as_str())
            .collect();
        assert_eq!(straight, BTreeSet::from(["A3", "A6", "A8", "A9", "A10", "A11"]));
        assert_eq!(d.edge_into(&id("A10")).unwrap().aligned_with_incoming, Some(true));
        assert_eq!(d.edge_into(&id("A11")).unwrap().aligned_with_incoming, Some(false));
        assert_eq!(d.edge_into(&id("A3")).unwrap().aligned_with_incoming, Some(true));
        assert_eq!(d.straight_runs(), vec![
            vec![id("A1"), id("A3"), id("A10")],
            vec![id("A2"), id("A6")],
            vec![id("A3"), id("A9")],
            vec![id("A4"), id("A8")],
            vec![id("A6"), id("A11")],
        ]);
    }

    #[test]
    fn figure_one_decodes_to_the_tables() {
        let c = figure_one();
        let back = decode_constellation(&build_enriques(&c).unwrap()).unwrap();
        let expected =
            [("A3", "O"), ("A6", "O"), ("A8", "A1"), ("A9", "A1"), ("A10", "O"), ("A11", "A2")];
        for (a, pi) in expected {
            assert_eq!(back.indirect(&id(a)).unwrap(), Some(&id(pi)), "p_I({a})");
        }
        assert_eq!(back, c);
    }

    #[test]
    fn trivial_diagrams() {
        let d = build_enriques(&Constellation::base_only()).unwrap();
        assert_eq!((d.vertex_count(), d.edge_count()), (1, 0));
        let one = Constellation::from_records([AstreRecord::free(id("A1"), id("O"))]).unwrap();
        let d = build_enriques(&one).unwrap();
        assert_eq!(d.edge_into(&id("A1")).unwrap().kind, EdgeKind::Curved);
        assert_eq!(decode_constellation(&d).unwrap(), one);
    }

    #[test]
    fn straight_run_after_a_break() {
        // A2 sits on E_A1 ∩ E_O, A3 on E_A2 ∩ E_A1 (breaks), A4 on E_A3 ∩ E_A1
        // (goes straight on from A3): the run A2→A3→A4 has p_I = A1.
        let c = Constellation::from_records([
            AstreRecord::free(id("A1"), id("O")),
            AstreRecord::satellite(id("A2"), id("A1"), id("O")),
            AstreRecord::satellite(id("A3"), id("A2"), id("A1")),
            AstreRecord::satellite(id("A4"), id("A3"), id("A1")),
        ])
        .unwrap();
        assert!(c.is_valid());
        let d = build_enriques(&c).unwrap();
        assert_eq!(d.edge_into(&id("A3")).unwrap().aligned_with_incoming, Some(false));
        assert_eq!(d.edge_into(&id("A4")).unwrap().aligned_with_incoming, Some(true));
        assert_eq!(decode_constellation(&d).unwrap(), c);
    }

    #[test]
    fn round_trip_exhaustive_small() {
        for c in all_constellations(5) {
            let d = build_enriques(&c).unwrap();
            assert_eq!(decode_constellation(&d).unwrap(), c);
        }
    }

    #[test]
    fn round_trip_random() {
        for seed in 0..1000u64 {
            let n = (seed % 50) as usize + 1;
            let c = random_constellation(seed, n, Ratio::new(1, 2)).unwrap();
            let d = build_enriques(&c).unwrap();
            assert_eq!(d.edge_count(), d.vertex_count() - 1);
            let curved = d.edges().filter(|e| e.kind == EdgeKind::Curved).count();
            assert_eq!(curved, c.free_count());
            assert_eq!(d.edge_count() - curved, c.satellite_count());
            assert_eq!(decode_constellation(&d).unwrap(), c, "seed {seed}");
        }
    }

    #[test]
    fn alignment_matches_indirect_predecessors() {
        for seed in 0..200u64 {
            let c = random_constellation(seed, 30, Ratio::new(2, 3)).unwrap();
            let d = build_enriques(&c).unwrap();
            for e in d.edges() {
                let below = d.edge_into(&e.from);
                if let (Some(b), EdgeKind::Straight) = (below, e.kind) {
                    if b.kind == EdgeKind::Straight {
                        let same = c.indirect(&e.from).unwrap() == c.indirect(&e.to).unwrap();
                        assert_eq!(e.aligned_with_incoming, Some(same));
                    }
                }
            }
        }
    }

    #[test]
    fn syntactic_checks() {
        let o = id("O");
        let a = id("A1");
        let straight_root = EnriquesEdge {
            from: o.clone(),
            to: a.clone(),
            kind: EdgeKind::Straight,
            aligned_with_incoming: None,
        };
        assert_eq!(
            EnriquesDiagram::from_parts([o.clone(), a.clone()], [straight_root]),
            Err(EnriquesError::StraightFromRoot(a.clone()))
        );
        assert_eq!(
            EnriquesDiagram::from_parts([o.clone(), a.clone()], []),
            Err(EnriquesError::Orphan(a.clone()))
        );
        let b = id("B");
        let edges = [
            EnriquesEdge { from: o.clone(), to: a.clone(), kind: EdgeKind::Curved, aligned_with_incoming: None },
            EnriquesEdge { from: a.clone(), to: b.clone(), kind: EdgeKind::Curved, aligned_with_incoming: Some(true) },
        ];
        assert_eq!(
            EnriquesDiagram::from_parts([o, a, b.clone()], edges),
            Err(EnriquesError::AlignmentConvention(b))
        );
    }

    #[test]
    fn decode_rejects_invalid_result() {
        // a straight edge A1→X breaking with the curved O→A1 cannot be expressed
        // (syntax forbids it); a duplicate pair can.
        let o = id("O");
        let a1 = id("A1");
        let mk = |to: &str| EnriquesEdge {
            from: a1.clone(),
            to: id(to),
            kind: EdgeKind::Straight,
            aligned_with_incoming: Some(true),
        };
        let d = EnriquesDiagram::from_parts(
            [o.clone(), a1.clone(), id("S"), id("T")],
            [
                EnriquesEdge { from: o, to: a1.clone(), kind: EdgeKind::Curved, aligned_with_incoming: None },
                mk("S"),
                mk("T"),
            ],
        )
        .unwrap();
        assert!(matches!(decode_constellation(&d), Err(EnriquesError::DecodedInvalid(_))));
    }
}
