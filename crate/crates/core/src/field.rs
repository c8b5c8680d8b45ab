//! Exact coefficient fields: arbitrary-precision rationals and prime fields.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, AddAssign, Deref, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ParseError;

/// The prime field used for sampling unless told otherwise.
pub type Gf32003 = Zp<32003>;

/// Exact field arithmetic used by every polynomial routine in the crate.
pub trait Field:
    Clone
    + Eq
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    /// Short tag used in serialized output, e.g. `"Q"` or `"F32003"`.
    fn tag() -> String;

    /// 0 for the rationals, p for GF(p).
    fn characteristic() -> u64;

    fn inv(&self) -> Option<Self>;

    fn from_i64(v: i64) -> Self;

    /// Image of a rational number; `None` when the denominator vanishes in the field.
    fn from_rational(r: &Rational) -> Option<Self>;

    /// Multipliers `(alpha, beta)` with `alpha * a == beta * b` and `alpha != 0`.
    ///
    /// Reduction of `f` (leading coefficient `a`) by `g` (leading coefficient `b`)
    /// computes `alpha * f - beta * m * g`. Over the integers this avoids
    /// introducing denominators.
    fn cofactors(a: &Self, b: &Self) -> (Self, Self) {
        (Self::one(), a.clone() * &b.inv().expect("nonzero divisor"))
    }

    /// Factor that brings a coefficient vector into canonical form (primitive
    /// with positive lead over Q, monic over GF(p)). `None` means no change is needed.
    fn normalizer<'a, I>(coeffs: I) -> Option<Self>
    where
        I: IntoIterator<Item = &'a Self>,
        Self: 'a,
    {
        let lead = coeffs.into_iter().next()?;
        if lead.is_one() {
            None
        } else {
            lead.inv()
        }
    }

    /// Whether intermediate results benefit from periodic content removal.
    fn has_coefficient_growth() -> bool {
        false
    }

    fn parse_coeff(s: &str) -> Result<Self, ParseError> {
        let r = parse_rational(s)?;
        Self::from_rational(&r).ok_or_else(|| ParseError::Coefficient(s.to_string()))
    }
}

/// Parses `"-12"` or `"3/4"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, ParseError> {
    let s = s.trim();
    let bad = || ParseError::Coefficient(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Exact rational number, always stored in lowest terms with a positive denominator.
///
/// Integer operands skip the gcd normalization that `BigRational` performs on every
/// operation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    /// `num / den`, reduced. Panics when `den` is zero.
    pub fn new(num: BigInt, den: BigInt) -> Self {
        Rational(BigRational::new(num, den))
    }

    pub fn from_integer(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    pub fn into_inner(self) -> BigRational {
        self.0
    }

    fn both_integral(&self, other: &Self) -> bool {
        self.0.denom().is_one() && other.0.denom().is_one()
    }

    fn take(&mut self) -> BigRational {
        std::mem::replace(&mut self.0, BigRational::zero())
    }
}

impl Deref for Rational {
    type Target = BigRational;
    fn deref(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(&self.0, f)
    }
}

impl Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(&self.0, f)
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

macro_rules! rational_ops {
    ($($tr:ident $m:ident $atr:ident $am:ident $op:tt),*) => {$(
        impl<'a> $atr<&'a Rational> for Rational {
            fn $am(&mut self, rhs: &'a Rational) {
                if self.both_integral(rhs) {
                    let (n, d) = self.take().into_raw();
                    self.0 = BigRational::new_raw(n $op rhs.0.numer(), d);
                } else {
                    let lhs = self.take();
                    self.0 = lhs $op &rhs.0;
                }
            }
        }
        impl $atr for Rational {
            fn $am(&mut self, rhs: Rational) {
                $atr::$am(self, &rhs);
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $m(mut self, rhs: &'a Rational) -> Rational {
                $atr::$am(&mut self, rhs);
                self
            }
        }
        impl $tr for Rational {
            type Output = Rational;
            fn $m(mut self, rhs: Rational) -> Rational {
                $atr::$am(&mut self, &rhs);
                self
            }
        }
    )*};
}

rational_ops!(Add add AddAssign add_assign +, Sub sub SubAssign sub_assign -, Mul mul MulAssign mul_assign *);

/// Euclid's algorithm, using bignum division.
fn gcd_big(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut a, mut b) = (a.abs(), b.abs());
    while !b.is_zero() {
        if b.is_one() {
            return b;
        }
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

impl Field for Rational {
    fn tag() -> String {
        "Q".to_string()
    }

    fn characteristic() -> u64 {
        0
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_rational(r: &Rational) -> Option<Self> {
        Some(r.clone())
    }

    fn cofactors(a: &Self, b: &Self) -> (Self, Self) {
        if a.both_integral(b) {
            let g = gcd_big(a.numer(), b.numer());
            let mut alpha = b.numer() / &g;
            let mut beta = a.numer() / &g;
            if alpha.is_negative() {
                alpha = -alpha;
                beta = -beta;
            }
            (Rational::from_integer(alpha), Rational::from_integer(beta))
        } else {
            (Self::one(), Rational(&a.0 / &b.0))
        }
    }

    fn normalizer<'a, I>(coeffs: I) -> Option<Self>
    where
        I: IntoIterator<Item = &'a Self>,
    {
        let mut iter = coeffs.into_iter();
        let lead = iter.next()?;
        let mut num_gcd = lead.numer().abs();
        let mut den_lcm = lead.denom().clone();
        for c in iter {
            if !num_gcd.is_one() {
                num_gcd = gcd_big(&num_gcd, c.numer());
            }
            if !c.denom().is_one() {
                den_lcm = den_lcm.lcm(c.denom());
            }
        }
        let mut factor = Rational::new(den_lcm, num_gcd);
        if lead.is_negative() {
            factor = -factor;
        }
        if factor.is_one() {
            None
        } else {
            Some(factor)
        }
    }

    fn has_coefficient_growth() -> bool {
        true
    }
}

/// Residue class modulo the prime `P`, stored in `[0, P)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Zp<const P: u32>(u32);

impl<const P: u32> Zp<P> {
    pub const MODULUS: u32 = P;

    pub fn new(v: u64) -> Self {
        Zp((v % P as u64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0 as u64;
        let mut acc = 1u64;
        let p = P as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Zp(acc as u32)
    }
}

impl<const P: u32> Debug for Zp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Display for Zp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Zero for Zp<P> {
    fn zero() -> Self {
        Zp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u32> One for Zp<P> {
    fn one() -> Self {
        Zp(1 % P)
    }
    fn is_one(&self) -> bool {
        self.0 == 1
    }
}

impl<const P: u32> Neg for Zp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        if self.0 == 0 {
            self
        } else {
            Zp(P - self.0)
        }
    }
}

impl<const P: u32> Add for Zp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = self.0 as u64 + rhs.0 as u64;
        Zp(if s >= P as u64 { s - P as u64 } else { s } as u32)
    }
}

impl<const P: u32> Sub for Zp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        if self.0 >= rhs.0 {
            Zp(self.0 - rhs.0)
        } else {
            Zp(P - (rhs.0 - self.0))
        }
    }
}

impl<const P: u32> Mul for Zp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Zp((self.0 as u64 * rhs.0 as u64 % P as u64) as u32)
    }
}

macro_rules! zp_ref_ops {
    ($($tr:ident $m:ident $atr:ident $am:ident),*) => {$(
        impl<'a, const P: u32> $tr<&'a Zp<P>> for Zp<P> {
            type Output = Zp<P>;
            fn $m(self, rhs: &'a Zp<P>) -> Zp<P> {
                $tr::$m(self, *rhs)
            }
        }
        impl<const P: u32> $atr for Zp<P> {
            fn $am(&mut self, rhs: Zp<P>) {
                *self = $tr::$m(*self, rhs);
            }
        }
        impl<'a, const P: u32> $atr<&'a Zp<P>> for Zp<P> {
            fn $am(&mut self, rhs: &'a Zp<P>) {
                *self = $tr::$m(*self, *rhs);
            }
        }
    )*};
}

zp_ref_ops!(Add add AddAssign add_assign, Sub sub SubAssign sub_assign, Mul mul MulAssign mul_assign);

impl<const P: u32> Field for Zp<P> {
    fn tag() -> String {
        format!("F{P}")
    }

    fn characteristic() -> u64 {
        P as u64
    }

    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P as u64 - 2))
        }
    }

    fn from_i64(v: i64) -> Self {
        Zp(v.rem_euclid(P as i64) as u32)
    }

    fn from_rational(r: &Rational) -> Option<Self> {
        let p = BigInt::from(P);
        let num = r.numer().mod_floor(&p).to_u64()?;
        let den = r.denom().mod_floor(&p).to_u64()?;
        Zp::new(den).inv().map(|d| Zp::new(num) * d)
    }
}

/// Trial-division primality test; moduli here are small.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    type F7 = Zp<7>;

    #[test]
    fn zp_inverse_of_every_nonzero_element() {
        for v in 1..7u64 {
            let x = F7::new(v);
            assert_eq!(x * x.inv().unwrap(), F7::one());
        }
        assert!(F7::zero().inv().is_none());
    }

    #[test]
    fn zp_negative_integers_wrap() {
        assert_eq!(F7::from_i64(-1).value(), 6);
        assert_eq!(Gf32003::from_i64(-32002).value(), 1);
    }

    #[test]
    fn rationals_are_canonical() {
        let r = parse_rational("6/-4").unwrap();
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn rational_to_prime_field() {
        let r = parse_rational("1/2").unwrap();
        assert_eq!(F7::from_rational(&r).unwrap(), F7::new(4));
        let r = parse_rational("1/7").unwrap();
        assert!(F7::from_rational(&r).is_none());
    }

    #[test]
    fn cofactors_cancel_leads() {
        let a = Rational::from_i64(6);
        let b = Rational::from_i64(-4);
        let (alpha, beta) = Rational::cofactors(&a, &b);
        assert_eq!(alpha.clone() * &a, beta.clone() * &b);
        assert_eq!(alpha, Rational::from_i64(2));
        let a = F7::new(3);
        let b = F7::new(5);
        let (alpha, beta) = F7::cofactors(&a, &b);
        assert_eq!(alpha * a, beta * b);
    }

    #[test]
    fn rational_normalizer_makes_primitive() {
        let cs = [
            parse_rational("-2/3").unwrap(),
            parse_rational("4/9").unwrap(),
        ];
        let k = Rational::normalizer(cs.iter()).unwrap();
        let out: Vec<_> = cs.iter().map(|c| c.clone() * &k).collect();
        assert_eq!(out, vec![Rational::from_i64(3), Rational::from_i64(-2)]);
    }

    #[test]
    fn primality() {
        assert!(is_prime(32003));
        assert!(!is_prime(32001));
        assert!(!is_prime(1));
        assert!(is_prime(2));
    }
}
