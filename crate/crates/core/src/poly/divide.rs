//! Exact polynomial division with rational intermediate coefficients.
//!
//! Division runs over `Q[u, w, x1..x9]` by cancelling leading terms in
//! the canonical order. Divisibility over the integers is decided by a
//! zero remainder plus an integrality check on the quotient, and the
//! returned quotient always satisfies `divisor * quotient == dividend`.

use super::{CoeffDomain, MPoly, Mono, PolyError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Outcome of [`exact_divide`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DivResult {
    /// `divisor * quotient == dividend` exactly over the integers.
    Quotient(MPoly),
    /// Division over the rationals left a nonzero remainder; the
    /// witness is the remainder with denominators cleared by `scale`.
    Remainder { remainder: MPoly, scale: BigInt },
    /// The quotient exists over the rationals but is not integral;
    /// `scaled / denom` is the rational quotient.
    FractionalQuotient { scaled: MPoly, denom: BigInt },
}

impl DivResult {
    pub fn is_divisible(&self) -> bool {
        matches!(self, DivResult::Quotient(_))
    }

    pub fn quotient(self) -> Option<MPoly> {
        match self {
            DivResult::Quotient(q) => Some(q),
            _ => None,
        }
    }
}

type QTerms = BTreeMap<Mono, BigRational>;

fn lead(terms: &QTerms) -> Option<(Mono, BigRational)> {
    terms.iter().next_back().map(|(m, c)| (*m, c.clone()))
}

fn add_term(terms: &mut QTerms, m: Mono, c: BigRational) {
    if c.is_zero() {
        return;
    }
    let e = terms.entry(m).or_insert_with(BigRational::zero);
    *e += c;
    if e.is_zero() {
        terms.remove(&m);
    }
}

fn denominator_lcm(terms: &QTerms) -> BigInt {
    let mut l = BigInt::one();
    for c in terms.values() {
        l = num_integer::Integer::lcm(&l, c.denom());
    }
    l.abs()
}

fn clear_denominators(terms: &QTerms) -> (MPoly, BigInt) {
    let l = denominator_lcm(terms);
    let mut out = MPoly::zero(CoeffDomain::ExactInteger);
    for (m, c) in terms {
        let scaled = c * BigRational::from_integer(l.clone());
        debug_assert!(scaled.is_integer());
        out.add_term(*m, scaled.to_integer());
    }
    (out, l)
}

/// Divides `a` by `b` over the integer polynomial ring.
///
/// Only the exact-integer domain is supported; `Z/p^N` has zero
/// divisors and no meaningful notion of exact quotient witnesses here.
pub fn exact_divide(a: &MPoly, b: &MPoly) -> Result<DivResult, PolyError> {
    if a.domain() != CoeffDomain::ExactInteger || b.domain() != CoeffDomain::ExactInteger {
        return Err(PolyError::RequiresExactInteger("exact_divide"));
    }
    if b.is_zero() {
        return Err(PolyError::DivisionByZero);
    }

    let mut rem: QTerms = a
        .terms()
        .map(|(m, c)| (*m, BigRational::from_integer(c.clone())))
        .collect();
    let mut quo: QTerms = BTreeMap::new();
    let mut residue: QTerms = BTreeMap::new();

    let (bm, bc) = b.leading().expect("nonzero divisor");
    let bc = BigRational::from_integer(bc.clone());

    while let Some((m, c)) = lead(&rem) {
        match m.try_div(bm) {
            Some(qm) => {
                let qc = &c / &bc;
                add_term(&mut quo, qm, qc.clone());
                for (tm, tc) in b.terms() {
                    let prod = &qc * BigRational::from_integer(tc.clone());
                    add_term(&mut rem, tm.mul(&qm), -prod);
                }
            }
            None => {
                // Leading term cannot be cancelled; it is part of the
                // remainder for good, since all later leads are smaller.
                rem.remove(&m);
                add_term(&mut residue, m, c);
            }
        }
    }

    if !residue.is_empty() {
        let (remainder, scale) = clear_denominators(&residue);
        return Ok(DivResult::Remainder { remainder, scale });
    }
    if quo.values().all(|c| c.is_integer()) {
        let mut q = MPoly::zero(CoeffDomain::ExactInteger);
        for (m, c) in &quo {
            q.add_term(*m, c.to_integer());
        }
        debug_assert_eq!(&q * b, *a);
        return Ok(DivResult::Quotient(q));
    }
    let (scaled, denom) = clear_denominators(&quo);
    Ok(DivResult::FractionalQuotient { scaled, denom })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MPoly {
        s.parse().unwrap()
    }

    #[test]
    fn divide_v_times_u_by_v() {
        // v = (1+w)^3 - 1
        let v = &p("1+w").pow(3) - &p("1");
        let a = &v * &p("u");
        assert_eq!(exact_divide(&a, &v).unwrap(), DivResult::Quotient(p("u")));
    }

    #[test]
    fn geometric_series_quotient() {
        let a = &p("1+w").pow(9) - &p("1");
        let b = &p("1+w").pow(3) - &p("1");
        let q = exact_divide(&a, &b).unwrap().quotient().unwrap();
        let expected = &(&p("1") + &p("1+w").pow(3)) + &p("1+w").pow(6);
        assert_eq!(q, expected);
        assert_eq!(&q * &b, a);
    }

    #[test]
    fn non_divisible_has_remainder_witness() {
        let r = exact_divide(&p("u+1"), &p("u")).unwrap();
        match r {
            DivResult::Remainder { remainder, scale } => {
                assert_eq!(remainder, p("1"));
                assert_eq!(scale, BigInt::from(1));
            }
            other => panic!("expected remainder, got {other:?}"),
        }
    }

    #[test]
    fn fractional_quotient_flagged() {
        let r = exact_divide(&p("u"), &p("2*u")).unwrap();
        match r {
            DivResult::FractionalQuotient { scaled, denom } => {
                assert_eq!(scaled, p("1"));
                assert_eq!(denom, BigInt::from(2));
            }
            other => panic!("expected fractional quotient, got {other:?}"),
        }
    }

    #[test]
    fn zero_divisor_rejected() {
        let z = MPoly::zero(CoeffDomain::ExactInteger);
        assert!(matches!(exact_divide(&p("u"), &z), Err(PolyError::DivisionByZero)));
    }

    #[test]
    fn multivariate_remainder_is_exact_witness() {
        // u^2*w + u + w by u*w: quotient candidate u, then u + w left over
        let r = exact_divide(&p("u^2*w + u + w"), &p("u*w")).unwrap();
        match r {
            DivResult::Remainder { remainder, scale } => {
                assert_eq!(scale, BigInt::from(1));
                // a - q*b must equal the remainder: q = u here
                assert_eq!(&p("u^2*w + u + w") - &(&p("u") * &p("u*w")), remainder);
            }
            other => panic!("expected remainder, got {other:?}"),
        }
    }
}
