//! Exact field scalars: arbitrary-precision rationals and prime fields F_p.
//!
//! A [`Scalar`] always knows which field it lives in; mixing scalars from
//! different fields in arithmetic is a programming error and panics.
//! Public entry points (the parser, constructors taking a [`FieldSpec`])
//! validate at the boundary so panics never escape correct library use.
//!
//! Prime fields are restricted to p > 3 so that the Hessian-based flex
//! machinery and the tangency discriminants of the curve modules stay valid.

use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Which exact field computations run over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    /// F_p for a prime p > 3.
    PrimeField(u64),
}

impl FieldSpec {
    /// Validated prime-field constructor (p must be prime and > 3).
    pub fn prime_field(p: u64) -> Result<FieldSpec> {
        if p <= 3 {
            return Err(Error::InvalidParameters(format!(
                "prime field modulus must be > 3, got {p}"
            )));
        }
        if !is_prime_u64(p) {
            return Err(Error::InvalidParameters(format!("{p} is not prime")));
        }
        Ok(FieldSpec::PrimeField(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::PrimeField(p) => write!(f, "fp:{p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    Rat(BigRational),
    Fp { v: u64, p: u64 },
}

/// An exact element of ℚ or of F_p.
///
/// Rationals are kept in lowest terms with positive denominator
/// (num-rational's canonical form); prime-field elements as residues in [0, p).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    repr: Repr,
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Repr::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

impl Scalar {
    pub fn spec(&self) -> FieldSpec {
        match &self.repr {
            Repr::Rat(_) => FieldSpec::Rationals,
            Repr::Fp { p, .. } => FieldSpec::PrimeField(*p),
        }
    }

    pub fn zero(spec: FieldSpec) -> Scalar {
        Scalar::from_i64(spec, 0)
    }

    pub fn one(spec: FieldSpec) -> Scalar {
        Scalar::from_i64(spec, 1)
    }

    pub fn from_i64(spec: FieldSpec, n: i64) -> Scalar {
        match spec {
            FieldSpec::Rationals => Scalar {
                repr: Repr::Rat(BigRational::from_integer(BigInt::from(n))),
            },
            FieldSpec::PrimeField(p) => {
                let r = n.rem_euclid(p as i64 if p <= i64::MAX as u64 { p as i64 } else { i64::MAX });
                // p > 3 always fits i64 in practice; guard for pathological moduli.
                let v = (r as u64) % p;
                Scalar { repr: Repr::Fp { v, p } }
            }
        }
    }

    pub fn from_bigint(spec: FieldSpec, n: &BigInt) -> Scalar {
        match spec {
            FieldSpec::Rationals => Scalar {
                repr: Repr::Rat(BigRational::from_integer(n.clone())),
            },
            FieldSpec::PrimeField(p) => {
                let m = n.mod_floor(&BigInt::from(p));
                let v = m.to_u64().expect("residue fits u64");
                Scalar { repr: Repr::Fp { v, p } }
            }
        }
    }

    /// num/den as a field element; fails if den maps to 0 (BadField).
    pub fn from_fraction(spec: FieldSpec, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::BadField("zero denominator".into()));
        }
        match spec {
            FieldSpec::Rationals => Ok(Scalar {
                repr: Repr::Rat(BigRational::new(num.clone(), den.clone())),
            }),
            FieldSpec::PrimeField(_) => {
                let d = Scalar::from_bigint(spec, den);
                if d.is_zero() {
                    return Err(Error::BadField(format!(
                        "denominator {den} vanishes in {spec}"
                    )));
                }
                Ok(&Scalar::from_bigint(spec, num) * &d.inv().expect("nonzero"))
            }
        }
    }

    pub fn from_rational(q: BigRational) -> Scalar {
        Scalar { repr: Repr::Rat(q) }
    }

    pub fn fp(p: u64, v: u64) -> Scalar {
        Scalar {
            repr: Repr::Fp { v: v % p, p },
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rat(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_fp(&self) -> Option<(u64, u64)> {
        match &self.repr {
            Repr::Fp { v, p } => Some((*v, *p)),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rat(r) => r.is_zero(),
            Repr::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Rat(r) => r.is_one(),
            Repr::Fp { v, .. } => *v == 1,
        }
    }

    fn check_same(&self, other: &Scalar) {
        assert_eq!(
            self.spec(),
            other.spec(),
            "scalars from different fields combined"
        );
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::InvalidParameters("inverse of zero".into()));
        }
        Ok(match &self.repr {
            Repr::Rat(r) => Scalar {
                repr: Repr::Rat(r.recip()),
            },
            Repr::Fp { v, p } => Scalar {
                repr: Repr::Fp {
                    v: mod_inv(*v, *p),
                    p: *p,
                },
            },
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Scalar> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut acc = Scalar::one(self.spec());
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Deterministic square root: NotASquare when none exists in the field.
    ///
    /// Rationals use integer square roots of numerator and denominator
    /// (canonical root is the non-negative one); prime fields search
    /// exhaustively for p < 10^4 and use Tonelli–Shanks otherwise, with the
    /// smaller residue as the canonical root.
    pub fn sqrt(&self) -> Result<Scalar> {
        match &self.repr {
            Repr::Rat(r) => {
                if r.is_negative() {
                    return Err(Error::NotASquare);
                }
                let n = r.numer().magnitude();
                let d = r.denom().magnitude();
                let sn = n.sqrt();
                let sd = d.sqrt();
                if &(&sn * &sn) == n && &(&sd * &sd) == d {
                    Ok(Scalar {
                        repr: Repr::Rat(BigRational::new(
                            BigInt::from_biguint(Sign::Plus, sn),
                            BigInt::from_biguint(Sign::Plus, sd),
                        )),
                    })
                } else {
                    Err(Error::NotASquare)
                }
            }
            Repr::Fp { v, p } => {
                let r = fp_sqrt(*v, *p).ok_or(Error::NotASquare)?;
                let r = r.min(p - r);
                Ok(Scalar { repr: Repr::Fp { v: r, p: *p } })
            }
        }
    }

    /// Enumeration sequence 0, 1, -1, 2, -2, ... used for all deterministic
    /// free choices. Over F_p the sequence visits each residue once.
    pub fn enumerate(spec: FieldSpec) -> impl Iterator<Item = Scalar> {
        let mut k: u64 = 0;
        std::iter::from_fn(move || {
            let idx = k;
            k += 1;
            match spec {
                FieldSpec::Rationals => {
                    let n = (idx as i64 + 1) / 2;
                    let s = if idx % 2 == 0 { n } else { -n };
                    Some(Scalar::from_i64(spec, s))
                }
                FieldSpec::PrimeField(p) => {
                    if idx >= p {
                        return None;
                    }
                    let n = (idx + 1) / 2;
                    let v = if idx % 2 == 0 { n % p } else { p - n };
                    Some(Scalar::fp(p, v))
                }
            }
        })
    }
}

/// Deterministic total order used for canonical tie-breaks; rationals by
/// value, residues by magnitude.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.repr, &other.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => a.cmp(b),
            (Repr::Fp { v: a, p }, Repr::Fp { v: b, p: q }) => p.cmp(q).then(a.cmp(b)),
            (Repr::Rat(_), Repr::Fp { .. }) => Ordering::Less,
            (Repr::Fp { .. }, Repr::Rat(_)) => Ordering::Greater,
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl std::ops::$trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.check_same(rhs);
                match (&self.repr, &rhs.repr) {
                    (Repr::Rat(a), Repr::Rat(b)) => Scalar { repr: Repr::Rat(a $op b) },
                    (Repr::Fp { v: a, p }, Repr::Fp { v: b, .. }) => {
                        Scalar { repr: Repr::Fp { v: fp_binop(*a, *b, *p, stringify!($method)), p: *p } }
                    }
                    _ => unreachable!(),
                }
            }
        }
        impl std::ops::$trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar { (&self) $op (&rhs) }
        }
    };
}

fn fp_binop(a: u64, b: u64, p: u64, op: &str) -> u64 {
    let (a, b, p128) = (a as u128, b as u128, p as u128);
    let r = match op {
        "add" => (a + b) % p128,
        "sub" => (a + p128 - b) % p128,
        "mul" => (a * b) % p128,
        _ => unreachable!(),
    };
    r as u64
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.repr {
            Repr::Rat(a) => Scalar {
                repr: Repr::Rat(-a),
            },
            Repr::Fp { v, p } => Scalar {
                repr: Repr::Fp {
                    v: if *v == 0 { 0 } else { p - v },
                    p: *p,
                },
            },
        }
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -(&self)
    }
}

// ---------------------------------------------------------------------------
// u64 modular arithmetic helpers
// ---------------------------------------------------------------------------

pub(crate) fn mod_mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mod_mul(acc, b, p);
        }
        b = mod_mul(b, b, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn mod_inv(a: u64, p: u64) -> u64 {
    // extended Euclid on signed 128-bit intermediates
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        let r = r0 - q * r1;
        r0 = r1;
        r1 = r;
        let s = s0 - q * s1;
        s0 = s1;
        s1 = s;
    }
    assert_eq!(r0, 1, "not invertible mod p");
    s0.rem_euclid(p as i128) as u64
}

/// Deterministic Miller–Rabin, valid for all u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mod_mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Square root mod an odd prime p, or None when v is a non-residue.
fn fp_sqrt(v: u64, p: u64) -> Option<u64> {
    if v == 0 {
        return Some(0);
    }
    if p < 10_000 {
        return (1..p).find(|r| mod_mul(*r, *r, p) == v);
    }
    // Euler criterion
    if mod_pow(v, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(mod_pow(v, (p + 1) / 4, p));
    }
    // Tonelli–Shanks
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    // smallest non-residue as generator of the 2-Sylow part
    let z = (2..p).find(|z| mod_pow(*z, (p - 1) / 2, p) == p - 1)?;
    let mut m = s;
    let mut c = mod_pow(z, q, p);
    let mut t = mod_pow(v, q, p);
    let mut r = mod_pow(v, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mod_mul(t2, t2, p);
            i += 1;
            if i == m {
                return None;
            }
        }
        let b = mod_pow(c, 1u64 << (m - i - 1), p);
        m = i;
        c = mod_mul(b, b, p);
        t = mod_mul(t, c, p);
        r = mod_mul(r, b, p);
    }
    Some(r)
}

/// Integer square root check helper exposed for tests.
pub fn biguint_is_square(n: &BigUint) -> bool {
    let s = n.sqrt();
    &(&s * &s) == n
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_fraction(FieldSpec::Rationals, &BigInt::from(n), &BigInt::from(d)).unwrap()
    }

    #[test]
    fn rational_canonical_form() {
        let a = q(2, -4);
        assert_eq!(a.to_string(), "-1/2");
        assert_eq!(q(6, 3).to_string(), "2");
    }

    #[test]
    fn fp_arithmetic_and_inverse() {
        let spec = FieldSpec::prime_field(101).unwrap();
        let a = Scalar::from_i64(spec, -5);
        assert_eq!(a.to_string(), "96");
        let i = a.inv().unwrap();
        assert!((&a * &i).is_one());
    }

    #[test]
    fn rejects_small_or_composite_modulus() {
        assert!(FieldSpec::prime_field(3).is_err());
        assert!(FieldSpec::prime_field(91).is_err());
        assert!(FieldSpec::prime_field(5).is_ok());
    }

    #[test]
    fn sqrt_rational() {
        assert_eq!(q(9, 4).sqrt().unwrap(), q(3, 2));
        assert_eq!(q(2, 1).sqrt(), Err(Error::NotASquare));
        assert_eq!(q(-4, 1).sqrt(), Err(Error::NotASquare));
    }

    #[test]
    fn sqrt_fp_small_and_large() {
        // exhaustive oracle for 2 mod 7: 3^2 = 2, canonical root is min(3, 4) = 3
        let s = Scalar::fp(7, 2).sqrt().unwrap();
        assert_eq!(s, Scalar::fp(7, 3));
        // Tonelli–Shanks path
        let p = 1_000_003u64;
        let spec = FieldSpec::prime_field(p).unwrap();
        let x = Scalar::from_i64(spec, 123_456);
        let sq = &x * &x;
        let r = sq.sqrt().unwrap();
        assert_eq!(&r * &r, sq);
        // non-residue errors
        let mut seen_err = false;
        for c in 2..50u64 {
            let s = Scalar::fp(p, c);
            if s.sqrt().is_err() {
                seen_err = true;
                break;
            }
        }
        assert!(seen_err);
    }

    #[test]
    fn enumeration_order() {
        let vals: Vec<String> = Scalar::enumerate(FieldSpec::Rationals)
            .take(5)
            .map(|s| s.to_string())
            .collect();
        assert_eq!(vals, ["0", "1", "-1", "2", "-2"]);
        let vals: Vec<String> = Scalar::enumerate(FieldSpec::PrimeField(5))
            .map(|s| s.to_string())
            .collect();
        assert_eq!(vals, ["0", "1", "4", "2", "3"]);
    }

    #[test]
    fn pow_including_negative() {
        let a = q(2, 3);
        assert_eq!(a.pow(3).unwrap(), q(8, 27));
        assert_eq!(a.pow(-2).unwrap(), q(9, 4));
    }
}
