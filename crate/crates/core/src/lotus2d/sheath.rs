//! Sheath of a rational ray: the petals whose interiors meet it.

use alloc::vec::Vec;

use super::{LotusError, Petal, Symbol};
use crate::arith::LatticeVec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheathResult {
    pub petals: Vec<Petal>,
    /// `symbols[k]` is the side of petal `k` the ray leaves through; the last
    /// petal repeats the previous symbol, and a single petal gets `δ`.
    pub symbols: Vec<Symbol>,
    /// Lengths of the maximal constant blocks of `symbols`.
    pub runs: Vec<usize>,
    pub endpoint: LatticeVec,
    /// Boundary polyline on the `e₁` side, corners only, ending at `endpoint`.
    pub p1: Vec<LatticeVec>,
    /// Boundary polyline on the `e₂` side.
    pub p2: Vec<LatticeVec>,
}

/// Walks the lotus of `(e₁, e₂)` towards the primitive interior vector `p`.
pub fn sheath(p: LatticeVec) -> Result<SheathResult, LotusError> {
    if !p.is_interior() {
        return Err(LotusError::NotInterior(p));
    }
    if !p.is_primitive() {
        return Err(LotusError::NotPrimitive(p));
    }
    let mut petal = Petal::ROOT;
    let (mut alpha, mut beta) = (p.a, p.b);
    let mut petals = Vec::new();
    let mut symbols = Vec::new();
    loop {
        petals.push(petal);
        let s = if alpha > beta {
            alpha -= beta;
            Symbol::Delta
        } else if beta > alpha {
            beta -= alpha;
            Symbol::Gamma
        } else {
            symbols.push(symbols.last().copied().unwrap_or(Symbol::Delta));
            break;
        };
        symbols.push(s);
        petal = petal.child(s);
    }
    debug_assert_eq!(petal.apex(), p);
    let runs = symbols.chunk_by(|a, b| a == b).map(<[Symbol]>::len).collect();
    let p1 = corners(petals.iter().map(|t| t.u).chain([p]));
    let p2 = corners(petals.iter().map(|t| t.w).chain([p]));
    Ok(SheathResult { petals, symbols, runs, endpoint: p, p1, p2 })
}

/// Drops repeated points and points in the middle of a straight stretch.
fn corners(points: impl Iterator<Item = LatticeVec>) -> Vec<LatticeVec> {
    let mut out: Vec<LatticeVec> = Vec::new();
    for v in points {
        if out.last() == Some(&v) {
            continue;
        }
        if let [.., a, b] = out[..] {
            if (b - a).det(v - b) == 0 {
                out.pop();
            }
        }
        out.push(v);
    }
    out
}
