//! Continued fractions `[x₁, x₂, …]^±` over the projective line.

use core::fmt;

use alloc::vec::Vec;
use num_integer::Integer;

use super::{LotusError, Symbol};
use crate::arith::{affine_step, Overflow, Projective, Rational};

/// `Plus` is `x₁ + 1/(x₂ + …)`, `Minus` is `x₁ − 1/(x₂ − …)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    Plus,
    Minus,
}

impl Flavor {
    fn sign(self) -> i64 {
        match self {
            Flavor::Plus => 1,
            Flavor::Minus => -1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CfSeq {
    flavor: Flavor,
    terms: Vec<i64>,
}

impl CfSeq {
    /// Plus sequences need positive terms, except a leading 0.
    pub fn new(flavor: Flavor, terms: Vec<i64>) -> Result<Self, LotusError> {
        if terms.is_empty() {
            return Err(LotusError::EmptySequence);
        }
        if flavor == Flavor::Plus {
            for (index, &value) in terms.iter().enumerate() {
                if value < 0 || (value == 0 && index > 0) {
                    return Err(LotusError::BadTerm { index, value });
                }
            }
        }
        Ok(CfSeq { flavor, terms })
    }

    pub fn plus(terms: Vec<i64>) -> Result<Self, LotusError> {
        CfSeq::new(Flavor::Plus, terms)
    }

    pub fn minus(terms: Vec<i64>) -> Result<Self, LotusError> {
        CfSeq::new(Flavor::Minus, terms)
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn terms(&self) -> &[i64] {
        &self.terms
    }
}

impl fmt::Display for CfSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str(match self.flavor {
            Flavor::Plus => "]+",
            Flavor::Minus => "]-",
        })
    }
}

/// Right-to-left evaluation in homogeneous coordinates.
pub fn cf_eval(seq: &CfSeq) -> Result<Projective, Overflow> {
    eval_terms(seq.flavor, &seq.terms)
}

pub(crate) fn eval_terms(flavor: Flavor, terms: &[i64]) -> Result<Projective, Overflow> {
    let Some((&last, rest)) = terms.split_last() else {
        return Ok(Projective::Infinity);
    };
    let (mut num, mut den) = (last, 1i64);
    for &x in rest.iter().rev() {
        (num, den) = affine_step(x, flavor.sign(), num, den)?;
        let g = num.gcd(&den);
        if g > 1 {
            num /= g;
            den /= g;
        }
    }
    Ok(Projective::from_pair(num, den))
}

/// Euclidean (plus) or Hirzebruch-Jung (minus) expansion of `x > 0`.
pub fn cf_expand(x: Rational, flavor: Flavor) -> Result<CfSeq, LotusError> {
    if *x.numer() <= 0 {
        return Err(LotusError::NotPositive(x));
    }
    let (mut p, mut q) = (*x.numer(), *x.denom());
    let mut terms = Vec::new();
    match flavor {
        Flavor::Plus => loop {
            let (a, r) = p.div_rem(&q);
            terms.push(a);
            if r == 0 {
                break;
            }
            (p, q) = (q, r);
        },
        Flavor::Minus => loop {
            let a = Integer::div_ceil(&p, &q);
            terms.push(a);
            // a − p/q = (a·q − p)/q
            let r = a * q - p;
            if r == 0 {
                break;
            }
            (p, q) = (q, r);
        },
    }
    CfSeq::new(flavor, terms)
}

/// Packet lengths of a symbol word as a plus sequence; a word opening with
/// `γ` gets a leading 0.
pub fn symbols_to_cf(symbols: &[Symbol]) -> Result<CfSeq, LotusError> {
    let mut terms = Vec::new();
    if symbols.first() == Some(&Symbol::Gamma) {
        terms.push(0);
    }
    terms.extend(symbols.chunk_by(|a, b| a == b).map(|run| run.len() as i64));
    CfSeq::plus(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Projective {
        Projective::Finite(Rational::new(n, d))
    }

    #[test]
    fn evaluations() {
        assert_eq!(cf_eval(&CfSeq::plus(vec![1, 2, 2]).unwrap()), Ok(q(7, 5)));
        assert_eq!(cf_eval(&CfSeq::minus(vec![2, 1, 3, 4, 1, 3, 1, 3]).unwrap()), Ok(q(0, 1)));
        assert_eq!(cf_eval(&CfSeq::plus(vec![9]).unwrap()), Ok(q(9, 1)));
        assert_eq!(cf_eval(&CfSeq::minus(vec![2, 2, 3]).unwrap()), Ok(q(7, 5)));
        // 1 − 1/(1 − 1/1) = 1 − 1/0
        assert_eq!(cf_eval(&CfSeq::minus(vec![1, 1, 1]).unwrap()), Ok(Projective::Infinity));
        // 2 − 1/(1 − 1/(1 − 1/1)) = 2 − 1/∞
        assert_eq!(cf_eval(&CfSeq::minus(vec![2, 1, 1, 1]).unwrap()), Ok(q(2, 1)));
    }

    #[test]
    fn constructor_rules() {
        assert_eq!(CfSeq::plus(vec![]), Err(LotusError::EmptySequence));
        assert!(CfSeq::plus(vec![0, 3]).is_ok());
        assert_eq!(CfSeq::plus(vec![1, 0]), Err(LotusError::BadTerm { index: 1, value: 0 }));
        assert!(CfSeq::minus(vec![0, -3]).is_ok());
        assert_eq!(CfSeq::plus(vec![1, 2, 2]).unwrap().to_string(), "[1,2,2]+");
    }

    #[test]
    fn expansions() {
        let x = Rational::new(7, 5);
        assert_eq!(cf_expand(x, Flavor::Plus).unwrap().terms(), [1, 2, 2]);
        assert_eq!(cf_expand(x, Flavor::Minus).unwrap().terms(), [2, 2, 3]);
        assert_eq!(cf_expand(Rational::from_integer(3), Flavor::Plus).unwrap().terms(), [3]);
        assert_eq!(cf_expand(Rational::new(1, 2), Flavor::Plus).unwrap().terms(), [0, 2]);
        assert_eq!(cf_expand(Rational::new(1, 2), Flavor::Minus).unwrap().terms(), [1, 2]);
        assert!(matches!(cf_expand(Rational::from_integer(0), Flavor::Plus), Err(LotusError::NotPositive(_))));
    }

    #[test]
    fn symbol_runs() {
        use Symbol::*;
        assert_eq!(symbols_to_cf(&[Delta, Gamma, Gamma, Delta, Delta]).unwrap().terms(), [1, 2, 2]);
        assert_eq!(symbols_to_cf(&[Gamma, Gamma]).unwrap().terms(), [0, 2]);
        assert_eq!(symbols_to_cf(&[Delta]).unwrap().terms(), [1]);
    }

    #[test]
    fn flavor_bridge_exhaustive() {
        for p in 1..=200i64 {
            for d in 1..=200i64 {
                let x = Rational::new(p, d);
                for flavor in [Flavor::Plus, Flavor::Minus] {
                    let seq = cf_expand(x, flavor).unwrap();
                    assert_eq!(cf_eval(&seq), Ok(Projective::Finite(x)), "{x} {flavor:?}");
                }
                let plus = cf_expand(x, Flavor::Plus).unwrap();
                let t = plus.terms();
                assert!(t.len() == 1 || *t.last().unwrap() >= 2);
                let minus = cf_expand(x, Flavor::Minus).unwrap();
                if x > Rational::from_integer(1) {
                    assert!(minus.terms().iter().all(|&a| a >= 2));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn plus_expansion_is_canonical(terms in proptest::collection::vec(1i64..20, 1..8)) {
            let mut terms = terms;
            if terms.len() > 1 && *terms.last().unwrap() == 1 {
                *terms.last_mut().unwrap() = 2;
            }
            let seq = CfSeq::plus(terms).unwrap();
            let x = cf_eval(&seq).unwrap().finite().unwrap();
            prop_assert_eq!(cf_expand(x, Flavor::Plus).unwrap(), seq);
        }
    }
}
