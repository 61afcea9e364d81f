//! Hilbert symbols over Q, Hasse-Witt invariants of diagonal forms, and the
//! norm criterion for quadratic fields.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_prime::nt_funcs::{factors, is_prime};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::Rat;
use crate::error::NumberTheoryError;

/// A place of Q.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Prime(BigUint),
    Infinity,
}

impl Place {
    pub fn prime(p: u64) -> Place {
        Place::Prime(BigUint::from(p))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s == "inf" {
            return Ok(Place::Infinity);
        }
        s.parse::<BigUint>().map(Place::Prime).map_err(serde::de::Error::custom)
    }
}

/// Prime factorization of a positive integer.
pub fn factor_integer(n: &BigUint) -> Result<Vec<(BigUint, usize)>, NumberTheoryError> {
    if n.is_zero() {
        return Err(NumberTheoryError::Zero);
    }
    if n.is_one() {
        return Ok(vec![]);
    }
    let (map, rest) = factors(n.clone(), None);
    if rest.is_some_and(|r| !r.is_empty()) {
        return Err(NumberTheoryError::Factorization(n.to_string()));
    }
    Ok(map.into_iter().collect())
}

pub fn is_prime_number(p: &BigUint) -> bool {
    is_prime(p, None).probably()
}

/// Squarefree integer in the square class of a nonzero rational.
pub fn squarefree_class(r: &Rat) -> Result<BigInt, NumberTheoryError> {
    if r.is_zero() {
        return Err(NumberTheoryError::Zero);
    }
    let n = r.numer() * r.denom();
    let mut out = BigInt::one();
    for (p, e) in factor_integer(n.magnitude())? {
        if e % 2 == 1 {
            out *= BigInt::from(p);
        }
    }
    if n.is_negative() {
        out = -out;
    }
    Ok(out)
}

/// Primes dividing the numerator or denominator.
pub fn support_primes(r: &Rat) -> Result<BTreeSet<BigUint>, NumberTheoryError> {
    let mut out = BTreeSet::new();
    for n in [r.numer(), r.denom()] {
        if !n.is_zero() {
            for (p, _) in factor_integer(n.magnitude())? {
                out.insert(p);
            }
        }
    }
    Ok(out)
}

fn valuation(n: &BigInt, p: &BigInt) -> (u64, BigInt) {
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return (v, m);
        }
        m = q;
        v += 1;
    }
}

fn legendre(a: &BigInt, p: &BigInt) -> i8 {
    let e = (p - 1u32) / 2u32;
    let r = a.mod_floor(p).modpow(&e, p);
    if r.is_one() {
        1
    } else {
        -1
    }
}

/// (a, b)_v for nonzero rationals.
pub fn hilbert_symbol(a: &Rat, b: &Rat, place: &Place) -> Result<i8, NumberTheoryError> {
    if a.is_zero() || b.is_zero() {
        return Err(NumberTheoryError::Zero);
    }
    // Same square class, integral: n/d ~ n d.
    let a = a.numer() * a.denom();
    let b = b.numer() * b.denom();
    match place {
        Place::Infinity => Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 }),
        Place::Prime(p) => {
            if !is_prime_number(p) {
                return Err(NumberTheoryError::NotPrime(p.to_string()));
            }
            let pz = BigInt::from_biguint(Sign::Plus, p.clone());
            let (al, u) = valuation(&a, &pz);
            let (be, v) = valuation(&b, &pz);
            if p == &BigUint::from(2u32) {
                let m8 = |x: &BigInt| x.mod_floor(&BigInt::from(8)).to_u64().unwrap();
                let (u8_, v8) = (m8(&u), m8(&v));
                let eps = |x: u64| ((x - 1) / 2) % 2;
                let omega = |x: u64| ((x * x - 1) / 8) % 2;
                let e = eps(u8_) * eps(v8) + (al % 2) * omega(v8) + (be % 2) * omega(u8_);
                Ok(if e % 2 == 0 { 1 } else { -1 })
            } else {
                let mut s: i8 = 1;
                let half = ((p - 1u32) / 2u32) % 2u32;
                if (al % 2 == 1) && (be % 2 == 1) && half.is_one() {
                    s = -s;
                }
                if be % 2 == 1 {
                    s *= legendre(&u, &pz);
                }
                if al % 2 == 1 {
                    s *= legendre(&v, &pz);
                }
                Ok(s)
            }
        }
    }
}

/// Places where the Hasse-Witt invariant of <a_1, ..., a_m> is -1.
pub fn hasse_witt_over_q(diag: &[Rat]) -> Result<Vec<Place>, NumberTheoryError> {
    let mut primes: BTreeSet<BigUint> = BTreeSet::new();
    primes.insert(BigUint::from(2u32));
    for a in diag {
        primes.extend(support_primes(a)?);
    }
    let mut places: Vec<Place> = primes.into_iter().map(Place::Prime).collect();
    places.push(Place::Infinity);
    let mut bad = Vec::new();
    for v in &places {
        let mut c = 1;
        for i in 0..diag.len() {
            for j in i + 1..diag.len() {
                c *= hilbert_symbol(&diag[i], &diag[j], v)?;
            }
        }
        if c == -1 {
            bad.push(v.clone());
        }
    }
    assert!(bad.len() % 2 == 0, "Hilbert reciprocity failed for {diag:?}");
    Ok(bad)
}

/// Is d a norm from Q(sqrt m)? Decided by (d, m)_v = 1 at v | 2 d m and v = inf.
pub fn norm_class_test_quadratic(d: &Rat, m: &BigInt) -> Result<bool, NumberTheoryError> {
    if d.is_zero() || m.is_zero() {
        return Err(NumberTheoryError::Zero);
    }
    if !m.is_negative() && m.sqrt().pow(2) == *m {
        return Err(NumberTheoryError::Square(m.to_string()));
    }
    let mr = Rat::from_integer(m.clone());
    let mut primes = support_primes(d)?;
    primes.extend(support_primes(&mr)?);
    primes.insert(BigUint::from(2u32));
    for p in primes {
        if hilbert_symbol(d, &mr, &Place::Prime(p))? == -1 {
            return Ok(false);
        }
    }
    Ok(hilbert_symbol(d, &mr, &Place::Infinity)? == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn classical_values() {
        assert_eq!(hilbert_symbol(&rat(-1), &rat(-1), &Place::Infinity), Ok(-1));
        assert_eq!(hilbert_symbol(&rat(2), &rat(-3), &Place::prime(3)), Ok(-1));
        assert_eq!(hilbert_symbol(&rat(-1), &rat(-1), &Place::prime(2)), Ok(-1));
        assert_eq!(hilbert_symbol(&rat(1), &rat(7), &Place::prime(7)), Ok(1));
        assert!(hilbert_symbol(&rat(1), &rat(7), &Place::prime(9)).is_err());
    }

    #[test]
    fn hasse_examples() {
        assert!(hasse_witt_over_q(&[rat(1), rat(1)]).unwrap().is_empty());
        assert_eq!(hasse_witt_over_q(&[rat(-1), rat(-1)]).unwrap(), vec![Place::prime(2), Place::Infinity]);
    }

    #[test]
    fn norms() {
        let m3 = BigInt::from(-3);
        assert!(norm_class_test_quadratic(&rat(1), &m3).unwrap());
        assert!(!norm_class_test_quadratic(&rat(2), &m3).unwrap());
        assert!(norm_class_test_quadratic(&rat(4), &BigInt::from(5)).unwrap());
        assert!(norm_class_test_quadratic(&rat(3), &m3).unwrap());
        assert!(norm_class_test_quadratic(&rat(2), &BigInt::from(4)).is_err());
    }

    #[test]
    fn squarefree() {
        assert_eq!(squarefree_class(&Rat::new((-4).into(), 1.into())).unwrap(), BigInt::from(-1));
        assert_eq!(squarefree_class(&Rat::new(18.into(), 5.into())).unwrap(), BigInt::from(10));
    }
}
