//! Brute-force Klein hulls, used to cross-check sheath boundaries.

use alloc::vec::Vec;
use num_integer::Integer;

use super::LotusError;
use crate::arith::LatticeVec;

/// Which cone: between `ℝ₊e₁` and `ℝ₊p`, or between `ℝ₊e₂` and `ℝ₊p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    E1,
    E2,
}

impl Side {
    pub fn vector(self) -> LatticeVec {
        match self {
            Side::E1 => LatticeVec::E1,
            Side::E2 => LatticeVec::E2,
        }
    }
}

/// Compact boundary, from `e_side` to `p`, of the convex hull of the nonzero
/// lattice points of the closed cone `σ(e_side, p)` inside `[0, size]²`.
pub fn klein_hull(p: LatticeVec, side: Side, size: i64) -> Result<Vec<LatticeVec>, LotusError> {
    if !p.is_interior() {
        return Err(LotusError::NotInterior(p));
    }
    if !p.is_primitive() {
        return Err(LotusError::NotPrimitive(p));
    }
    if size < p.a.max(p.b) {
        return Err(LotusError::BoxTooSmall { point: p, size });
    }
    // Each row of the cone is an interval, so its ends carry the hull.
    let mut points = Vec::new();
    for y in 0..=size {
        let (lo, hi) = match side {
            // y·a ≤ x·b
            Side::E1 => (Integer::div_ceil(&(y * p.a), &p.b), size),
            // x·b ≤ y·a
            Side::E2 => (0, size.min((y * p.a).div_euclid(p.b))),
        };
        let lo = if y == 0 { lo.max(1) } else { lo };
        if lo <= hi {
            points.push(LatticeVec::new(lo, y));
            points.push(LatticeVec::new(hi, y));
        }
    }
    let hull = convex_hull(points);
    let n = hull.len();
    // Edges of the counter-clockwise hull that see the origin outside.
    let facing: Vec<usize> = (0..n)
        .filter(|&i| {
            let (a, b) = (hull[i], hull[(i + 1) % n]);
            (b - a).det(LatticeVec::ZERO - a) < 0
        })
        .collect();
    let start = facing
        .iter()
        .copied()
        .find(|&i| !facing.contains(&((i + n - 1) % n)))
        .expect("the cone's hull has a compact face");
    let mut chain: Vec<LatticeVec> = (0..=facing.len()).map(|k| hull[(start + k) % n]).collect();
    if chain.first() != Some(&side.vector()) {
        chain.reverse();
    }
    Ok(chain)
}

/// Andrew's monotone chain; counter-clockwise, without collinear points.
fn convex_hull(mut points: Vec<LatticeVec>) -> Vec<LatticeVec> {
    points.sort();
    points.dedup();
    if points.len() < 3 {
        return points;
    }
    let turn = |o: LatticeVec, a: LatticeVec, b: LatticeVec| (a - o).det(b - o);
    let mut hull: Vec<LatticeVec> = Vec::with_capacity(2 * points.len());
    for &pt in &points {
        while hull.len() >= 2 && turn(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= 0 {
            hull.pop();
        }
        hull.push(pt);
    }
    let lower = hull.len() + 1;
    for &pt in points.iter().rev().skip(1) {
        while hull.len() >= lower && turn(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= 0 {
            hull.pop();
        }
        hull.push(pt);
    }
    hull.pop();
    hull
}
