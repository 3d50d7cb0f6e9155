//! Admissible and zero-representing sequences, and their triangulated polygons.

use alloc::vec::Vec;

use super::cf::{eval_terms, Flavor};
use super::LotusError;
use crate::arith::{affine_step, LatticeVec, Overflow, Projective};

/// `a_k > 0` (or `a₁ ≥ 0` alone), the reversed proper prefixes
/// `[a_k, …, a₁]⁻` are positive and `[a_n, …, a₁]⁻ ≥ 0`. This is exactly the
/// condition for [`vector_realization`] to stay in the upper half-plane: the
/// reversed prefix is the ratio of the heights of `v_{k+1}` and `v_k`.
pub fn is_admissible(a: &[i64]) -> Result<bool, Overflow> {
    match a {
        [] => return Ok(false),
        [a1] => return Ok(*a1 >= 0),
        _ if a.iter().any(|&x| x <= 0) => return Ok(false),
        _ => {}
    }
    let mut value = Projective::Infinity;
    for (k, &x) in a.iter().enumerate() {
        value = minus_step(x, value)?;
        let ok = if k + 1 < a.len() { value.is_positive() } else { value.is_non_negative() };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `x − 1/value`.
fn minus_step(x: i64, value: Projective) -> Result<Projective, Overflow> {
    let (num, den) = match value {
        Projective::Infinity => (1, 0),
        Projective::Finite(r) => (*r.numer(), *r.denom()),
    };
    let (n, d) = affine_step(x, -1, num, den)?;
    Ok(Projective::from_pair(n, d))
}

/// Admissible with value `[a₁, …, a_n]⁻ = 0`.
pub fn represents_zero(a: &[i64]) -> Result<bool, Overflow> {
    Ok(is_admissible(a)? && eval_terms(Flavor::Minus, a)? == Projective::from_integer(0))
}

/// `v₀ = e₁`, `v₁ = e₂`, `v_{k+1} = a_k·v_k − v_{k−1}`; fails when a vector
/// leaves the closed upper half-plane.
pub fn vector_realization(a: &[i64]) -> Result<Vec<LatticeVec>, LotusError> {
    if a.is_empty() {
        return Err(LotusError::EmptySequence);
    }
    let mut v = Vec::with_capacity(a.len() + 2);
    v.push(LatticeVec::E1);
    v.push(LatticeVec::E2);
    for (k, &ak) in a.iter().enumerate() {
        let (prev, cur) = (v[k], v[k + 1]);
        let x = ak.checked_mul(cur.a).and_then(|t| t.checked_sub(prev.a)).ok_or(Overflow)?;
        let y = ak.checked_mul(cur.b).and_then(|t| t.checked_sub(prev.b)).ok_or(Overflow)?;
        let next = LatticeVec::new(x, y);
        debug_assert_eq!(cur.det(next), 1);
        if next.b < 0 {
            return Err(LotusError::NotAdmissible { index: k + 2 });
        }
        v.push(next);
    }
    Ok(v)
}

/// Petals of the polygon `v₀ v₁ … v_n`, as index triples `(left, middle, right)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    pub triangles: Vec<[usize; 3]>,
    /// `counts[k − 1]` is the number of triangles at `v_k`, for `k = 1..=n`.
    pub counts: Vec<i64>,
}

impl Triangulation {
    /// Every triangle has its middle vertex equal to the sum of the other two.
    pub fn satisfies_petal_identity(&self, vectors: &[LatticeVec]) -> bool {
        self.triangles.iter().all(|&[l, m, r]| {
            [l, m, r].iter().all(|&i| i < vectors.len()) && vectors[m] == vectors[l] + vectors[r]
        })
    }
}

/// Ear reduction taking the leftmost removable vertex.
pub fn triangulated_polygon(a: &[i64]) -> Result<Triangulation, LotusError> {
    triangulated_polygon_with(a, |_| 0)
}

/// Ear reduction where `choose` picks among the removable vertices, given
/// in left-to-right order as indices `k` of `v_k`.
pub fn triangulated_polygon_with(
    a: &[i64],
    mut choose: impl FnMut(&[usize]) -> usize,
) -> Result<Triangulation, LotusError> {
    if a.is_empty() {
        return Err(LotusError::EmptySequence);
    }
    let mut live: Vec<i64> = core::iter::once(0).chain(a.iter().copied()).collect();
    let mut polygon: Vec<usize> = (0..=a.len()).collect();
    let mut triangles = Vec::new();
    loop {
        let removable: Vec<usize> = (1..polygon.len() - 1).filter(|&i| live[polygon[i]] == 1).collect();
        if removable.is_empty() {
            break;
        }
        let labels: Vec<usize> = removable.iter().map(|&i| polygon[i]).collect();
        let i = removable[choose(&labels).min(removable.len() - 1)];
        let (l, m, r) = (polygon[i - 1], polygon[i], polygon[i + 1]);
        triangles.push([l, m, r]);
        live[m] = 0;
        for n in [l, r] {
            if n != 0 {
                live[n] -= 1;
            }
        }
        polygon.remove(i);
    }
    if polygon.len() != 2 || live[polygon[1]] != 0 {
        return Err(LotusError::Stalled { remaining: polygon.len() });
    }
    let mut counts = alloc::vec![0i64; a.len()];
    for t in &triangles {
        for &k in t.iter().filter(|&&k| k != 0) {
            counts[k - 1] += 1;
        }
    }
    Ok(Triangulation { triangles, counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;
    use rand::{Rng, SeedableRng};

    const FIG: [i64; 8] = [2, 1, 3, 4, 1, 3, 1, 3];

    #[test]
    fn admissibility_examples() {
        assert_eq!(is_admissible(&FIG), Ok(true));
        assert_eq!(represents_zero(&FIG), Ok(true));
        assert_eq!(represents_zero(&[1, 1]), Ok(true));
        assert_eq!(is_admissible(&[2, 2]), Ok(true));
        assert_eq!(represents_zero(&[2, 2]), Ok(false));
        assert_eq!(represents_zero(&[0]), Ok(true));
        assert_eq!(is_admissible(&[-1]), Ok(false));
        assert_eq!(is_admissible(&[0, 2]), Ok(false));
        assert_eq!(is_admissible(&[1, 1, 1]), Ok(false));
    }

    #[test]
    fn leading_prefixes_are_not_enough() {
        // every leading prefix [a₁, …, a_k]⁻ is positive and the total is
        // zero, yet the vectors leave the half-plane
        let a = [1, 3, 1, 1, 1, 1, 2];
        assert!((1..a.len()).all(|k| eval_terms(Flavor::Minus, &a[..k]).unwrap().is_positive()));
        assert_eq!(eval_terms(Flavor::Minus, &a), Ok(Projective::from_integer(0)));
        assert_eq!(represents_zero(&a), Ok(false));
        assert!(vector_realization(&a).is_err());
        assert!(triangulated_polygon(&a).is_err());
    }

    #[test]
    fn realizations() {
        let v = vector_realization(&FIG).unwrap();
        assert_eq!(v[9], -LatticeVec::E1);
        assert_eq!(v[4], LatticeVec::new(-2, 1));
        let v = vector_realization(&[1, 1]).unwrap();
        assert_eq!(v[2..], [LatticeVec::new(-1, 1), LatticeVec::new(-1, 0)]);
        assert_eq!(vector_realization(&[0]).unwrap()[2], -LatticeVec::E1);
        assert_eq!(vector_realization(&[1, 1, 1]), Err(LotusError::NotAdmissible { index: 4 }));
    }

    #[test]
    fn figure_triangulation() {
        let t = triangulated_polygon(&FIG).unwrap();
        let expected: BTreeSet<[usize; 3]> =
            [[1, 2, 3], [0, 1, 3], [0, 3, 4], [4, 5, 6], [6, 7, 8], [4, 6, 8], [0, 4, 8]].into();
        assert_eq!(t.triangles.iter().copied().collect::<BTreeSet<_>>(), expected);
        assert_eq!(t.triangles.len(), 7);
        assert_eq!(t.counts, FIG);
        assert!(t.satisfies_petal_identity(&vector_realization(&FIG).unwrap()));
    }

    #[test]
    fn small_triangulations() {
        let t = triangulated_polygon(&[1, 1]).unwrap();
        assert_eq!(t.triangles, [[0, 1, 2]]);
        assert_eq!(t.counts, [1, 1]);
        assert!(triangulated_polygon(&[0]).unwrap().triangles.is_empty());
        assert_eq!(triangulated_polygon(&[2, 2]), Err(LotusError::Stalled { remaining: 3 }));
        assert_eq!(triangulated_polygon(&[1, 2]), Err(LotusError::Stalled { remaining: 2 }));
    }

    /// Admissible sequences with terms in `1..=max_term`, built by extending
    /// admissible prefixes.
    fn admissible_up_to(max_len: usize, max_term: i64, out: &mut Vec<Vec<i64>>, prefix: &mut Vec<i64>) {
        if !prefix.is_empty() {
            out.push(prefix.clone());
        }
        if prefix.len() == max_len {
            return;
        }
        for t in 1..=max_term {
            prefix.push(t);
            if is_admissible(prefix).unwrap() {
                admissible_up_to(max_len, max_term, out, prefix);
            }
            prefix.pop();
        }
    }

    #[test]
    fn ear_reduction_is_confluent() {
        let mut all = Vec::new();
        admissible_up_to(8, 5, &mut all, &mut Vec::new());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for a in all.iter().filter(|a| represents_zero(a).unwrap()) {
            let reference: BTreeSet<_> = triangulated_polygon(a).unwrap().triangles.into_iter().collect();
            for _ in 0..3 {
                let t = triangulated_polygon_with(a, |c| rng.gen_range(0..c.len())).unwrap();
                assert_eq!(t.triangles.into_iter().collect::<BTreeSet<_>>(), reference);
            }
        }
    }

    #[test]
    fn numeric_and_geometric_admissibility_agree() {
        fn all_sequences(len: usize, lo: i64, hi: i64, f: &mut impl FnMut(&[i64]), buf: &mut Vec<i64>) {
            if buf.len() == len {
                f(buf);
                return;
            }
            for t in lo..=hi {
                buf.push(t);
                all_sequences(len, lo, hi, f, buf);
                buf.pop();
            }
        }
        for len in 1..=6 {
            all_sequences(len, -1, 4, &mut |a| {
                let numeric = is_admissible(a).unwrap();
                let geometric = vector_realization(a).is_ok();
                assert_eq!(numeric, geometric, "{a:?}");
                if numeric {
                    let v = vector_realization(a).unwrap();
                    assert_eq!(represents_zero(a).unwrap(), v[a.len() + 1] == -v[0], "{a:?}");
                }
                assert_eq!(represents_zero(a).unwrap(), triangulated_polygon(a).is_ok(), "{a:?}");
            }, &mut Vec::new());
        }
    }
}
