//! Sparse multivariate polynomials over big integers and `Z/p^N`.
//!
//! The variable set is fixed: `u`, `w` and nine auxiliary symbols
//! `x1..x9`. Terms are kept in a `BTreeMap` keyed by exponent vectors,
//! so every polynomial has one canonical form and iteration order is
//! deterministic (lexicographic with `u > w > x1 > ... > x9`).

mod divide;
mod text;

pub use divide::{exact_divide, DivResult};
pub use text::parse;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Number of variable slots: `u`, `w`, `x1..x9`.
pub const NVARS: usize = 11;

/// A variable of the polynomial ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    U,
    W,
    /// Auxiliary symbol `x1..x9`.
    X(u8),
}

impl Var {
    pub fn index(self) -> usize {
        match self {
            Var::U => 0,
            Var::W => 1,
            Var::X(k) => {
                assert!((1..=9).contains(&k), "auxiliary symbols are x1..x9");
                1 + k as usize
            }
        }
    }

    pub fn from_index(i: usize) -> Var {
        match i {
            0 => Var::U,
            1 => Var::W,
            k if (2..NVARS).contains(&k) => Var::X((k - 1) as u8),
            _ => panic!("variable index out of range: {i}"),
        }
    }

    pub fn name(self) -> String {
        match self {
            Var::U => "u".into(),
            Var::W => "w".into(),
            Var::X(k) => format!("x{k}"),
        }
    }
}

/// Exponent vector. Derived `Ord` compares the `u` slot first, so the
/// natural array order is the canonical term order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono(pub [u32; NVARS]);

impl Mono {
    pub const ONE: Mono = Mono([0; NVARS]);

    pub fn var(v: Var, e: u32) -> Mono {
        let mut m = [0u32; NVARS];
        m[v.index()] = e;
        Mono(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, rhs: &Mono) -> Mono {
        let mut out = [0u32; NVARS];
        for i in 0..NVARS {
            out[i] = self.0[i].checked_add(rhs.0[i]).expect("exponent overflow");
        }
        Mono(out)
    }

    /// Componentwise quotient, if `rhs` divides `self`.
    pub fn try_div(&self, rhs: &Mono) -> Option<Mono> {
        let mut out = [0u32; NVARS];
        for i in 0..NVARS {
            out[i] = self.0[i].checked_sub(rhs.0[i])?;
        }
        Some(Mono(out))
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }
}

/// Coefficient domain: exact integers or residues mod `p^N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum CoeffDomain {
    ExactInteger,
    ResidueMod { p: u64, n: u32 },
}

impl CoeffDomain {
    /// Residue domain constructor; rejects `p = 2`, non-primes and `n = 0`.
    pub fn residue(p: u64, n: u32) -> Result<CoeffDomain, PolyError> {
        check_odd_prime(p)?;
        if n == 0 {
            return Err(PolyError::InvalidPrecision(n));
        }
        Ok(CoeffDomain::ResidueMod { p, n })
    }

    pub fn modulus(&self) -> Option<BigInt> {
        match self {
            CoeffDomain::ExactInteger => None,
            CoeffDomain::ResidueMod { p, n } => Some(BigInt::from(*p).pow(*n)),
        }
    }
}

impl fmt::Display for CoeffDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffDomain::ExactInteger => write!(f, "Z"),
            CoeffDomain::ResidueMod { p, n } => write!(f, "Z/{p}^{n}"),
        }
    }
}

/// Returns `Ok(())` when `p` is an odd prime.
pub fn check_odd_prime(p: u64) -> Result<(), PolyError> {
    if p < 3 || p % 2 == 0 {
        return Err(PolyError::InvalidPrime(p));
    }
    let mut d = 3u64;
    while d * d <= p {
        if p % d == 0 {
            return Err(PolyError::InvalidPrime(p));
        }
        d += 2;
    }
    Ok(())
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("domain mismatch: {0} vs {1}")]
    DomainMismatch(CoeffDomain, CoeffDomain),
    #[error("p must be an odd prime, got {0}")]
    InvalidPrime(u64),
    #[error("precision must be positive, got {0}")]
    InvalidPrecision(u32),
    #[error("coefficient of {term} is not divisible by {p}^{k}")]
    NotDivisibleByP { p: u64, k: u32, term: String },
    #[error("cannot divide by p^{k}: only {n} digits of precision")]
    PrecisionExhausted { k: u32, n: u32 },
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("{0} is only supported over exact integers")]
    RequiresExactInteger(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Sparse multivariate polynomial. Stored coefficients are always
/// nonzero; in a residue domain they are canonical representatives in
/// `[0, p^N)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    domain: CoeffDomain,
    terms: BTreeMap<Mono, BigInt>,
}

impl MPoly {
    pub fn zero(domain: CoeffDomain) -> MPoly {
        MPoly { domain, terms: BTreeMap::new() }
    }

    pub fn constant<T: Into<BigInt>>(c: T, domain: CoeffDomain) -> MPoly {
        let mut p = MPoly::zero(domain);
        p.add_term(Mono::ONE, c.into());
        p
    }

    pub fn one(domain: CoeffDomain) -> MPoly {
        MPoly::constant(1, domain)
    }

    pub fn var(v: Var, domain: CoeffDomain) -> MPoly {
        MPoly::var_pow(v, 1, domain)
    }

    pub fn var_pow(v: Var, e: u32, domain: CoeffDomain) -> MPoly {
        let mut p = MPoly::zero(domain);
        p.add_term(Mono::var(v, e), BigInt::one());
        p
    }

    pub fn from_terms<I>(terms: I, domain: CoeffDomain) -> MPoly
    where
        I: IntoIterator<Item = (Mono, BigInt)>,
    {
        let mut p = MPoly::zero(domain);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn domain(&self) -> CoeffDomain {
        self.domain
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigInt)> {
        self.terms.iter()
    }

    /// Leading (largest) term in the canonical order.
    pub fn leading(&self) -> Option<(&Mono, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, m: &Mono) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Total degree in a single variable.
    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn vars_used(&self) -> Vec<Var> {
        let mut used = [false; NVARS];
        for m in self.terms.keys() {
            for i in 0..NVARS {
                if m.0[i] > 0 {
                    used[i] = true;
                }
            }
        }
        (0..NVARS).filter(|&i| used[i]).map(Var::from_index).collect()
    }

    fn canon_coeff(&self, c: BigInt) -> BigInt {
        match self.domain.modulus() {
            None => c,
            Some(m) => {
                let r = c % &m;
                if r.is_negative() {
                    r + m
                } else {
                    r
                }
            }
        }
    }

    /// Adds `c * m` in place, keeping the canonical form.
    pub fn add_term(&mut self, m: Mono, c: BigInt) {
        let c = self.canon_coeff(c);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(BigInt::zero);
        *entry += c;
        let canon = self.canon_coeff(std::mem::take(entry));
        if canon.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, canon);
        }
    }

    fn check_domain(&self, rhs: &MPoly) -> Result<(), PolyError> {
        if self.domain != rhs.domain {
            return Err(PolyError::DomainMismatch(self.domain, rhs.domain));
        }
        Ok(())
    }

    pub fn checked_add(&self, rhs: &MPoly) -> Result<MPoly, PolyError> {
        self.check_domain(rhs)?;
        let mut out = self.clone();
        for (m, c) in rhs.terms.iter() {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &MPoly) -> Result<MPoly, PolyError> {
        self.check_domain(rhs)?;
        let mut out = self.clone();
        for (m, c) in rhs.terms.iter() {
            out.add_term(*m, -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, rhs: &MPoly) -> Result<MPoly, PolyError> {
        self.check_domain(rhs)?;
        let mut out = MPoly::zero(self.domain);
        for (ma, ca) in self.terms.iter() {
            for (mb, cb) in rhs.terms.iter() {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> MPoly {
        let mut out = MPoly::zero(self.domain);
        for (m, c) in self.terms.iter() {
            out.add_term(*m, -c.clone());
        }
        out
    }

    /// Multiplication by an integer scalar.
    pub fn scale<T: Into<BigInt>>(&self, k: T) -> MPoly {
        let k = k.into();
        let mut out = MPoly::zero(self.domain);
        for (m, c) in self.terms.iter() {
            out.add_term(*m, c * &k);
        }
        out
    }

    /// Exponentiation by repeated squaring.
    pub fn pow(&self, k: u32) -> MPoly {
        let mut acc = MPoly::one(self.domain);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.checked_mul(&base).expect("same domain");
            }
            k >>= 1;
            if k > 0 {
                base = base.checked_mul(&base).expect("same domain");
            }
        }
        acc
    }

    /// Applies the ring homomorphism fixing coefficients and sending
    /// each bound variable to its image; unbound variables map to
    /// themselves.
    pub fn substitute(&self, bindings: &BTreeMap<Var, MPoly>) -> Result<MPoly, PolyError> {
        for b in bindings.values() {
            self.check_domain(b)?;
        }
        let mut power_cache: BTreeMap<(Var, u32), MPoly> = BTreeMap::new();
        let mut out = MPoly::zero(self.domain);
        for (m, c) in self.terms.iter() {
            let mut term = MPoly::constant(c.clone(), self.domain);
            for i in 0..NVARS {
                let e = m.0[i];
                if e == 0 {
                    continue;
                }
                let v = Var::from_index(i);
                match bindings.get(&v) {
                    None => term = term.checked_mul(&MPoly::var_pow(v, e, self.domain))?,
                    Some(img) => {
                        let p = power_cache
                            .entry((v, e))
                            .or_insert_with(|| img.pow(e))
                            .clone();
                        term = term.checked_mul(&p)?;
                    }
                }
            }
            out = out.checked_add(&term)?;
        }
        Ok(out)
    }

    /// Exact division by `p^k`.
    ///
    /// Over the integers every coefficient must be divisible by `p^k`.
    /// Over `Z/p^N` the quotient is only defined up to `p^{N-k}`, so the
    /// result lives in `Z/p^{N-k}` (precision drops by `k`).
    pub fn divide_by_p(&self, p: u64, k: u32) -> Result<MPoly, PolyError> {
        check_odd_prime(p)?;
        if k == 0 {
            return Ok(self.clone());
        }
        let pk = BigInt::from(p).pow(k);
        match self.domain {
            CoeffDomain::ExactInteger => {
                let mut out = MPoly::zero(self.domain);
                for (m, c) in self.terms.iter() {
                    let (q, r) = num_integer::Integer::div_rem(c, &pk);
                    if !r.is_zero() {
                        return Err(PolyError::NotDivisibleByP {
                            p,
                            k,
                            term: text::format_term(m, c),
                        });
                    }
                    out.add_term(*m, q);
                }
                Ok(out)
            }
            CoeffDomain::ResidueMod { p: dp, n } => {
                if dp != p {
                    return Err(PolyError::DomainMismatch(
                        self.domain,
                        CoeffDomain::ResidueMod { p, n: 1 },
                    ));
                }
                if k >= n {
                    return Err(PolyError::PrecisionExhausted { k, n });
                }
                let target = CoeffDomain::ResidueMod { p, n: n - k };
                let mut out = MPoly::zero(target);
                for (m, c) in self.terms.iter() {
                    let (q, r) = num_integer::Integer::div_rem(c, &pk);
                    if !r.is_zero() {
                        return Err(PolyError::NotDivisibleByP {
                            p,
                            k,
                            term: text::format_term(m, c),
                        });
                    }
                    out.add_term(*m, q);
                }
                Ok(out)
            }
        }
    }

    /// Minimum `u`-exponent over all terms; `None` for the zero
    /// polynomial (valuation `+inf`).
    pub fn u_valuation(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(Var::U)).min()
    }

    /// Reduces coefficients to canonical representatives mod `p^n`.
    ///
    /// Accepts integer input, or residue input with at least `n` digits
    /// of precision (further truncation).
    pub fn reduce_mod_pn(&self, p: u64, n: u32) -> Result<MPoly, PolyError> {
        let target = CoeffDomain::residue(p, n)?;
        if let CoeffDomain::ResidueMod { p: dp, n: dn } = self.domain {
            if dp != p {
                return Err(PolyError::DomainMismatch(self.domain, target));
            }
            if dn < n {
                return Err(PolyError::PrecisionExhausted { k: n, n: dn });
            }
        }
        let mut out = MPoly::zero(target);
        for (m, c) in self.terms.iter() {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    /// Forgets the modulus, lifting canonical representatives to `Z`.
    pub fn lift_to_int(&self) -> MPoly {
        let mut out = MPoly::zero(CoeffDomain::ExactInteger);
        for (m, c) in self.terms.iter() {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", text::format_poly(self))
    }
}

impl std::str::FromStr for MPoly {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<MPoly, PolyError> {
        text::parse(s)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait for &MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &MPoly) -> MPoly {
                self.$checked(rhs).expect("domain mismatch")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

#[cfg(test)]
mod tests {
    use super::*;

    const Z: CoeffDomain = CoeffDomain::ExactInteger;

    fn p(s: &str) -> MPoly {
        s.parse().unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let a = p("u+w");
        let b = p("u-w");
        assert_eq!(&a * &b, p("u^2 - w^2"));
    }

    #[test]
    fn binomial_cube() {
        assert_eq!(p("1+w").pow(3), p("1 + 3*w + 3*w^2 + w^3"));
    }

    #[test]
    fn product_mod_three() {
        // (u^3 - 3)(u^9 - 3) = u^12 - 3u^9 - 3u^3 + 9, which is u^12 mod 3
        let prod = (&p("u^3-3") * &p("u^9-3")).reduce_mod_pn(3, 1).unwrap();
        let expected = MPoly::var_pow(Var::U, 12, CoeffDomain::residue(3, 1).unwrap());
        assert_eq!(prod, expected);
    }

    #[test]
    fn domain_mismatch_is_an_error() {
        let a = p("u");
        let b = p("u").reduce_mod_pn(3, 1).unwrap();
        assert!(matches!(a.checked_add(&b), Err(PolyError::DomainMismatch(_, _))));
        assert!(matches!(a.checked_mul(&b), Err(PolyError::DomainMismatch(_, _))));
    }

    #[test]
    fn substitute_power() {
        let f = p("u^2");
        let mut b = BTreeMap::new();
        b.insert(Var::U, p("u^3"));
        assert_eq!(f.substitute(&b).unwrap(), p("u^6"));
    }

    #[test]
    fn substitute_affine() {
        // u + w with u -> (1+w)^3 * u
        let f = p("u+w");
        let mut b = BTreeMap::new();
        b.insert(Var::U, &p("1+w").pow(3) * &p("u"));
        let got = f.substitute(&b).unwrap();
        let expected = &(&p("1+w").pow(3) * &p("u")) + &p("w");
        assert_eq!(got, expected);
    }

    #[test]
    fn substitute_unbound_vars_fixed() {
        let f = p("u^2 + w + x1");
        let b = BTreeMap::new();
        assert_eq!(f.substitute(&b).unwrap(), f);
    }

    #[test]
    fn divide_by_p_exact() {
        assert_eq!(p("3*w + 3*w^2").divide_by_p(3, 1).unwrap(), p("w + w^2"));
        assert_eq!(p("3*u").divide_by_p(3, 1).unwrap(), p("u"));
        assert!(matches!(
            p("u+1").divide_by_p(3, 1),
            Err(PolyError::NotDivisibleByP { .. })
        ));
    }

    #[test]
    fn divide_by_p_residue_precision_drop() {
        let f = p("9*u + 3*w").reduce_mod_pn(3, 3).unwrap();
        let q = f.divide_by_p(3, 1).unwrap();
        assert_eq!(q.domain(), CoeffDomain::residue(3, 2).unwrap());
        assert_eq!(q, p("3*u + w").reduce_mod_pn(3, 2).unwrap());
        let g = p("u").reduce_mod_pn(3, 1).unwrap();
        assert!(matches!(
            g.divide_by_p(3, 1),
            Err(PolyError::PrecisionExhausted { .. })
        ));
    }

    #[test]
    fn u_valuation_examples() {
        assert_eq!(p("u^4 + u^7*w").u_valuation(), Some(4));
        assert_eq!(MPoly::zero(Z).u_valuation(), None);
        let f = (&p("u^3-3") * &p("u")).reduce_mod_pn(3, 1).unwrap();
        assert_eq!(f.u_valuation(), Some(4));
    }

    #[test]
    fn reduce_mod_pn_examples() {
        assert_eq!(
            p("u^3 - 3").reduce_mod_pn(3, 1).unwrap(),
            p("u^3").reduce_mod_pn(3, 1).unwrap()
        );
        assert_eq!(
            p("9*u + 3").reduce_mod_pn(3, 2).unwrap(),
            p("3").reduce_mod_pn(3, 2).unwrap()
        );
        let f = &(&p("u^6-3") * &p("u^18-3")) * &p("u");
        assert_eq!(
            f.reduce_mod_pn(3, 1).unwrap(),
            p("u^25").reduce_mod_pn(3, 1).unwrap()
        );
    }

    #[test]
    fn rejects_bad_primes() {
        assert!(CoeffDomain::residue(2, 1).is_err());
        assert!(CoeffDomain::residue(9, 1).is_err());
        assert!(CoeffDomain::residue(1, 1).is_err());
        assert!(CoeffDomain::residue(3, 0).is_err());
        assert!(CoeffDomain::residue(13, 2).is_ok());
    }
}
