//! Exact coefficients: arbitrary-precision rationals or a prime field F_p.
//!
//! A computation context fixes one field for all scalars flowing through it.
//! Rationals are kept in lowest terms with positive denominator (maintained by
//! `num::BigRational`); prime-field values are kept reduced to `[0, p)`.

use crate::error::Error;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// Which coefficient field a context works over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    /// Exact rationals.
    Q,
    /// The prime field with the given modulus.
    Fp(u64),
}

/// Default prime for prime-field runs.
pub const DEFAULT_PRIME: u64 = 1_000_003;

impl FieldSpec {
    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Q => Scalar::Q(BigRational::zero()),
            FieldSpec::Fp(p) => Scalar::Fp { v: 0, p: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Q => Scalar::Q(BigRational::one()),
            FieldSpec::Fp(p) => Scalar::Fp { v: 1, p: *p },
        }
    }

    pub fn integer(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Q => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Fp(p) => {
                let m = n.rem_euclid(*p as i64);
                Scalar::Fp { v: m as u64, p: *p }
            }
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            FieldSpec::Q => Scalar::Q(BigRational::from_integer(n.clone())),
            FieldSpec::Fp(p) => {
                let m = n.mod_floor_u64(*p);
                Scalar::Fp { v: m, p: *p }
            }
        }
    }
}

trait ModFloor {
    fn mod_floor_u64(&self, p: u64) -> u64;
}

impl ModFloor for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        use num::Integer;
        let m = self.mod_floor(&BigInt::from(p));
        let (_, digits) = m.to_u64_digits();
        *digits.first().unwrap_or(&0)
    }
}

/// An exact field element. All binary operations require both operands to
/// come from the same field; mixing them is a programming error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { v: u64, p: u64 },
}

fn fp_mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn fp_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = fp_mul(acc, base, p);
        }
        base = fp_mul(base, base, p);
        exp >>= 1;
    }
    acc
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Q(_) => FieldSpec::Q,
            Scalar::Fp { p, .. } => FieldSpec::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => {
                let s = a + b;
                Scalar::Fp { v: if s >= *p { s - p } else { s }, p: *p }
            }
            _ => panic!("scalar field mismatch in add"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { v, p } => Scalar::Fp { v: if *v == 0 { 0 } else { p - v }, p: *p },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => {
                Scalar::Fp { v: fp_mul(*a, *b, *p), p: *p }
            }
            _ => panic!("scalar field mismatch in mul"),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Q(a) => {
                assert!(!a.is_zero(), "inverse of zero");
                Scalar::Q(a.recip())
            }
            Scalar::Fp { v, p } => {
                assert!(*v != 0, "inverse of zero");
                Scalar::Fp { v: fp_pow(*v, p - 2, *p), p: *p }
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv())
    }

    /// Reduce a rational scalar mod `p`. Fails when the denominator is
    /// divisible by `p`; prime-field scalars must already have modulus `p`.
    pub fn to_fp(&self, p: u64) -> Result<Scalar, Error> {
        match self {
            Scalar::Fp { v, p: q } if *q == p => Ok(Scalar::Fp { v: *v, p }),
            Scalar::Fp { p: q, .. } => Err(Error::FieldMismatch(format!(
                "cannot move F_{q} value to F_{p}"
            ))),
            Scalar::Q(r) => {
                let den = r.denom().mod_floor_u64(p);
                if den == 0 {
                    return Err(Error::FieldMismatch(format!(
                        "denominator of {r} vanishes mod {p}"
                    )));
                }
                let num = r.numer().mod_floor_u64(p);
                Ok(Scalar::Fp { v: fp_mul(num, fp_pow(den, p - 2, p), p), p })
            }
        }
    }

    /// The rational value, if this scalar lives over Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(r) => Some(r),
            Scalar::Fp { .. } => None,
        }
    }
}

impl std::fmt::Display for Scalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scalar::Q(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

/// True when the rational is an integer (denominator one). Prime-field values
/// are always "integers" in this sense.
pub fn is_integral(s: &Scalar) -> bool {
    match s {
        Scalar::Q(r) => r.denom().is_one(),
        Scalar::Fp { .. } => true,
    }
}

/// Sign of a rational scalar (-1, 0, 1); prime-field values count as positive.
pub fn sign(s: &Scalar) -> i32 {
    match s {
        Scalar::Q(r) => {
            if r.is_zero() {
                0
            } else if r.is_positive() {
                1
            } else {
                -1
            }
        }
        Scalar::Fp { v, .. } => {
            if *v == 0 {
                0
            } else {
                1
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::Q(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    #[test]
    fn rational_normal_form() {
        // lowest terms, positive denominator
        let a = q(2, -4);
        match &a {
            Scalar::Q(r) => {
                assert_eq!(r.numer(), &BigInt::from(-1));
                assert_eq!(r.denom(), &BigInt::from(2));
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn fp_basics() {
        let f = FieldSpec::Fp(7);
        let a = f.integer(-3); // 4 mod 7
        assert_eq!(a, Scalar::Fp { v: 4, p: 7 });
        assert!(a.mul(&a.inv()).is_one());
    }

    #[test]
    fn rational_to_fp_agrees() {
        let p = 1_000_003;
        let a = q(3, 4);
        let b = q(-7, 5);
        let sum_fp = a.add(&b).to_fp(p).unwrap();
        let fp_sum = a.to_fp(p).unwrap().add(&b.to_fp(p).unwrap());
        assert_eq!(sum_fp, fp_sum);
    }

    proptest! {
        // field axioms on randomized triples, over Q and over F_p
        #[test]
        fn field_axioms_q(an in -50i64..50, ad in 1i64..20, bn in -50i64..50, bd in 1i64..20, cn in -50i64..50, cd in 1i64..20) {
            let (a, b, c) = (q(an, ad), q(bn, bd), q(cn, cd));
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b.add(&c)), a.add(&b).add(&c));
            prop_assert_eq!(a.mul(&b.mul(&c)), a.mul(&b).mul(&c));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert!(a.sub(&a).is_zero());
            if !a.is_zero() {
                prop_assert!(a.mul(&a.inv()).is_one());
            }
        }

        #[test]
        fn fp_matches_rational_mod_p(an in -50i64..50, ad in 1i64..20, bn in -50i64..50, bd in 1i64..20) {
            let p = 1_000_003u64;
            let (a, b) = (q(an, ad), q(bn, bd));
            for (x, y) in [(a.add(&b), a.to_fp(p).unwrap().add(&b.to_fp(p).unwrap())),
                           (a.mul(&b), a.to_fp(p).unwrap().mul(&b.to_fp(p).unwrap()))] {
                prop_assert_eq!(x.to_fp(p).unwrap(), y);
            }
        }
    }
}
