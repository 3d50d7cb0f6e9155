//! Blow-up simulation and the weighted dual graph of the exceptional divisor.
//!
//! Astres are blown up by increasing height. Each blow-up creates a curve
//! `E_A` of self-intersection −1 and lowers by one the self-intersection of
//! every curve through the centre. A free astre lies on one curve, a
//! satellite on the intersection point of two adjacent curves, whose edge in
//! the dual graph is replaced by two edges through `E_A`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::constellation::{AstreId, Constellation};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BlowupError {
    #[error("{astre}: curves E_{first} and E_{second} do not meet any more")]
    NoIntersection { astre: AstreId, first: AstreId, second: AstreId },
    #[error("{astre}: curve E_{missing} has not been created yet")]
    MissingCurve { astre: AstreId, missing: AstreId },
    #[error("blow-up order must list every astre once by non-decreasing height")]
    BadOrder,
}

/// Dual graph: one vertex `E_A` per astre, weighted by self-intersection.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DualGraph {
    weights: BTreeMap<AstreId, i64>,
    edges: BTreeSet<(AstreId, AstreId)>,
}

fn unordered(a: AstreId, b: AstreId) -> (AstreId, AstreId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl DualGraph {
    /// Edges are stored as sorted pairs, so `(a, b)` and `(b, a)` coincide.
    pub fn new(
        weights: impl IntoIterator<Item = (AstreId, i64)>,
        edges: impl IntoIterator<Item = (AstreId, AstreId)>,
    ) -> Self {
        DualGraph {
            weights: weights.into_iter().collect(),
            edges: edges.into_iter().map(|(a, b)| unordered(a, b)).collect(),
        }
    }

    pub fn weights(&self) -> &BTreeMap<AstreId, i64> {
        &self.weights
    }

    pub fn weight(&self, a: &AstreId) -> Option<i64> {
        self.weights.get(a).copied()
    }

    pub fn edges(&self) -> &BTreeSet<(AstreId, AstreId)> {
        &self.edges
    }

    pub fn has_edge(&self, a: &AstreId, b: &AstreId) -> bool {
        self.edges.contains(&unordered(a.clone(), b.clone()))
    }

    pub fn vertex_count(&self) -> usize {
        self.weights.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Connected with `#edges = #vertices − 1`.
    pub fn is_tree(&self) -> bool {
        if self.weights.is_empty() || self.edges.len() + 1 != self.weights.len() {
            return false;
        }
        let mut adj: BTreeMap<&AstreId, Vec<&AstreId>> = BTreeMap::new();
        for (a, b) in &self.edges {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        let start = self.weights.keys().next().expect("non-empty");
        let mut seen = BTreeSet::from([start]);
        let mut stack = alloc::vec![start];
        while let Some(v) = stack.pop() {
            for &n in adj.get(v).map(Vec::as_slice).unwrap_or(&[]) {
                if seen.insert(n) {
                    stack.push(n);
                }
            }
        }
        seen.len() == self.weights.len()
    }
}

struct Surface {
    weights: BTreeMap<AstreId, i64>,
    edges: BTreeSet<(AstreId, AstreId)>,
}

impl Surface {
    fn lower(&mut self, astre: &AstreId, curve: &AstreId) -> Result<(), BlowupError> {
        match self.weights.get_mut(curve) {
            Some(w) => {
                *w -= 1;
                Ok(())
            }
            None => Err(BlowupError::MissingCurve { astre: astre.clone(), missing: curve.clone() }),
        }
    }
}

/// Blows up the astres of `c` by height, names in order within a height.
pub fn simulate_blowups(c: &Constellation) -> Result<DualGraph, BlowupError> {
    let order: Vec<AstreId> = c.ids().cloned().collect();
    simulate_blowups_in_order(c, &order)
}

/// Same as [`simulate_blowups`] with an explicit order, which must list every
/// astre once with non-decreasing heights.
pub fn simulate_blowups_in_order(
    c: &Constellation,
    order: &[AstreId],
) -> Result<DualGraph, BlowupError> {
    if order.len() != c.len() {
        return Err(BlowupError::BadOrder);
    }
    let mut seen = BTreeSet::new();
    let mut last_height = 0;
    for a in order {
        let h = c.height(a).map_err(|_| BlowupError::BadOrder)?;
        if h < last_height || !seen.insert(a) {
            return Err(BlowupError::BadOrder);
        }
        last_height = h;
    }

    let mut s = Surface { weights: BTreeMap::new(), edges: BTreeSet::new() };
    for a in order {
        let rec = c.get(a).expect("checked above");
        if !a.is_base() {
            let b = &rec.direct;
            match &rec.indirect {
                None => {
                    s.lower(a, b)?;
                    s.edges.insert(unordered(a.clone(), b.clone()));
                }
                Some(cc) => {
                    if !s.edges.remove(&unordered(b.clone(), cc.clone())) {
                        return Err(BlowupError::NoIntersection {
                            astre: a.clone(),
                            first: b.clone(),
                            second: cc.clone(),
                        });
                    }
                    s.lower(a, b)?;
                    s.lower(a, cc)?;
                    s.edges.insert(unordered(a.clone(), b.clone()));
                    s.edges.insert(unordered(a.clone(), cc.clone()));
                }
            }
        }
        s.weights.insert(a.clone(), -1);
    }
    Ok(DualGraph { weights: s.weights, edges: s.edges })
}

/// `Σ|w| = 1 + 2·#free + 3·#satellite`.
pub fn check_weight_sum(g: &DualGraph, c: &Constellation) -> bool {
    let total: i64 = g.weights.values().map(|w| w.abs()).sum();
    total == 1 + 2 * c.free_count() as i64 + 3 * c.satellite_count() as i64
}
