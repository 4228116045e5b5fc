//! Exact scalars.
//!
//! [`Rational`] wraps an arbitrary-precision fraction that is always kept in
//! lowest terms with a positive denominator. [`GaussianRational`] is the field
//! `Q(i)` built on top of it; every coefficient in the crate lives there.
//!
//! Text form is `p/q` (or just `p` when the denominator is one) for rationals
//! and `a+b*i` for Gaussian rationals. JSON stores rationals as strings so no
//! precision is lost.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Result, Su21Error};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Su21Error::DegenerateInput(format!("{numer}/0")));
        }
        Ok(Rational(BigRational::new(numer.into(), denom.into())))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn from_bigints(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Su21Error::DegenerateInput(format!("{numer}/0")));
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Integer value when the denominator is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.0.is_integer().then(|| self.0.to_integer())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational> {
        if rhs.is_zero() {
            return Err(Su21Error::DegenerateInput(format!("division of {self} by zero")));
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Rational> {
        Rational::one().checked_div(self)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn normalize_minus(s: &str) -> String {
    s.trim().replace('\u{2212}', "-")
}

fn parse_bigint(s: &str) -> Result<BigInt> {
    let digits = s.strip_prefix('+').unwrap_or(s);
    digits.parse::<BigInt>().map_err(|_| Su21Error::Parse(format!("not an integer: {s:?}")))
}

impl FromStr for Rational {
    type Err = Su21Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = normalize_minus(s);
        if s.is_empty() {
            return Err(Su21Error::Parse("empty rational".into()));
        }
        match s.split_once('/') {
            Some((n, d)) => {
                let denom = parse_bigint(d)?;
                if denom.is_negative() {
                    return Err(Su21Error::Parse(format!("negative denominator in {s:?}")));
                }
                Rational::from_bigints(parse_bigint(n)?, denom)
            }
            None => Ok(Rational::from(parse_bigint(&s)?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($ty:ident, $trait:ident, $method:ident, $body:expr) => {
        impl<'a> $trait<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn $method(self, rhs: &'a $ty) -> $ty {
                let f: fn(&$ty, &$ty) -> $ty = $body;
                f(self, rhs)
            }
        }
        impl $trait<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a $ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &'a $ty) -> $ty {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<$ty> for &'a $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Rational, Add, add, |a, b| Rational(&a.0 + &b.0));
forward_binop!(Rational, Sub, sub, |a, b| Rational(&a.0 - &b.0));
forward_binop!(Rational, Mul, mul, |a, b| Rational(&a.0 * &b.0));

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

/// Sign classes used by the unitarity tests: a product must be a negative
/// real, zero marks a wall, anything else is an obstruction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignClass {
    NegativeReal,
    Zero,
    PositiveReal,
    Nonreal,
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational { re, im: Rational::zero() }
    }

    pub fn from_integer(n: i64) -> Self {
        GaussianRational::real(Rational::from_integer(n))
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Result<Self> {
        Ok(GaussianRational::real(Rational::new(numer, denom)?))
    }

    pub fn i() -> Self {
        GaussianRational { re: Rational::zero(), im: Rational::one() }
    }

    pub fn zero() -> Self {
        GaussianRational::default()
    }

    pub fn one() -> Self {
        GaussianRational::from_integer(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn as_real(&self) -> Option<&Rational> {
        self.is_real().then_some(&self.re)
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -&self.im }
    }

    /// `|x|^2 = x * conj(x)`, always a nonnegative rational.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, k: &Rational) -> Self {
        GaussianRational { re: &self.re * k, im: &self.im * k }
    }

    pub fn checked_div(&self, rhs: &GaussianRational) -> Result<Self> {
        let denom = rhs.norm_sqr();
        if denom.is_zero() {
            return Err(Su21Error::DegenerateInput(format!("division of {self} by zero")));
        }
        let num = self * &rhs.conj();
        Ok(GaussianRational { re: num.re.checked_div(&denom)?, im: num.im.checked_div(&denom)? })
    }

    pub fn recip(&self) -> Result<Self> {
        GaussianRational::one().checked_div(self)
    }

    pub fn sign_class(&self) -> SignClass {
        if !self.im.is_zero() {
            return SignClass::Nonreal;
        }
        match self.re.0.cmp(&BigRational::zero()) {
            Ordering::Less => SignClass::NegativeReal,
            Ordering::Equal => SignClass::Zero,
            Ordering::Greater => SignClass::PositiveReal,
        }
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        GaussianRational::real(r)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        GaussianRational::from_integer(n)
    }
}

forward_binop!(GaussianRational, Add, add, |a, b| GaussianRational { re: &a.re + &b.re, im: &a.im + &b.im });
forward_binop!(GaussianRational, Sub, sub, |a, b| GaussianRational { re: &a.re - &b.re, im: &a.im - &b.im });
forward_binop!(GaussianRational, Mul, mul, |a, b| GaussianRational {
    re: &a.re * &b.re - &a.im * &b.im,
    im: &a.re * &b.im + &a.im * &b.re,
});

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -&self.re, im: -&self.im }
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re.0 -= &rhs.re.0;
        self.im.0 -= &rhs.im.0;
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{}*i", self.im);
        }
        if self.im.is_negative() {
            write!(f, "{}-{}*i", self.re, self.im.abs())
        } else {
            write!(f, "{}+{}*i", self.re, self.im)
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_imaginary(s: &str) -> Result<Rational> {
    let body = s
        .strip_suffix("*i")
        .or_else(|| s.strip_suffix('i'))
        .ok_or_else(|| Su21Error::Parse(format!("imaginary part must end in i: {s:?}")))?;
    match body {
        "" | "+" => Ok(Rational::one()),
        "-" => Ok(-Rational::one()),
        _ => body.parse(),
    }
}

/// Accepts `a`, `b*i`, `a+b*i`, `a-b*i`, with `a`, `b` rationals `p/q`; a bare
/// `i` is shorthand for `1*i`.
impl FromStr for GaussianRational {
    type Err = Su21Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = normalize_minus(s);
        if s.is_empty() {
            return Err(Su21Error::Parse("empty scalar".into()));
        }
        if !s.ends_with('i') {
            return Ok(GaussianRational::real(s.parse()?));
        }
        let split = s.char_indices().skip(1).filter(|&(_, ch)| ch == '+' || ch == '-').map(|(idx, _)| idx).last();
        match split {
            Some(idx) => Ok(GaussianRational { re: s[..idx].parse()?, im: parse_imaginary(&s[idx..])? }),
            None => Ok(GaussianRational { re: Rational::zero(), im: parse_imaginary(&s)? }),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GaussianRationalRepr {
    re: Rational,
    im: Rational,
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        GaussianRationalRepr { re: self.re.clone(), im: self.im.clone() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = GaussianRationalRepr::deserialize(deserializer)?;
        Ok(GaussianRational { re: repr.re, im: repr.im })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn gr(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn field_examples() {
        let half = GaussianRational::real(q(1, 2));
        assert_eq!(&half + &half, GaussianRational::one());
        assert_eq!(gr("3*i").conj(), gr("-3*i"));
        assert_eq!(gr("1+i") * gr("1-i"), GaussianRational::from_integer(2));
    }

    #[test]
    fn division_by_zero_is_degenerate() {
        let err = GaussianRational::one().checked_div(&GaussianRational::zero()).unwrap_err();
        assert!(matches!(err, Su21Error::DegenerateInput(_)));
        assert!(Rational::new(1, 0).is_err());
        assert_eq!(gr("1+i").checked_div(&gr("1-i")).unwrap(), GaussianRational::i());
    }

    #[test]
    fn sign_classes() {
        assert_eq!(GaussianRational::real(q(-16, 5)).sign_class(), SignClass::NegativeReal);
        assert_eq!(GaussianRational::zero().sign_class(), SignClass::Zero);
        assert_eq!(gr("1+i").sign_class(), SignClass::Nonreal);
        assert_eq!(gr("7/3").sign_class(), SignClass::PositiveReal);
    }

    #[test]
    fn text_forms() {
        assert_eq!(q(6, -4).to_string(), "-3/2");
        assert_eq!(q(4, 2).to_string(), "2");
        assert_eq!(gr("-1/2+3/4*i").to_string(), "-1/2+3/4*i");
        assert_eq!(gr("−1/2").to_string(), "-1/2");
        assert_eq!(gr("2-i"), GaussianRational::new(q(2, 1), q(-1, 1)));
        assert_eq!(gr("-3/2*i").re, Rational::zero());
        assert!("1/-2".parse::<Rational>().is_err());
        assert!("abc".parse::<GaussianRational>().is_err());
        let json = serde_json::to_string(&gr("-16/5+1/3*i")).unwrap();
        assert_eq!(json, r#"{"re":"-16/5","im":"1/3"}"#);
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-1000i64..1000, 1i64..60).prop_map(|(n, d)| q(n, d))
    }

    fn arb_gr() -> impl Strategy<Value = GaussianRational> {
        (arb_rational(), arb_rational()).prop_map(|(re, im)| GaussianRational::new(re, im))
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(x in arb_gr()) {
            let back: GaussianRational = x.to_string().parse().unwrap();
            prop_assert_eq!(&back, &x);
            let json: GaussianRational = serde_json::from_str(&serde_json::to_string(&x).unwrap()).unwrap();
            prop_assert_eq!(json, x);
        }

        #[test]
        fn always_reduced(a in arb_gr(), b in arb_gr()) {
            use num_integer::Integer;
            for r in [(&a * &b).re, (&a + &b).im, (&a - &b).re] {
                prop_assert!(r.denom().is_positive());
                prop_assert!(r.numer().gcd(r.denom()) == BigInt::one());
            }
        }

        #[test]
        fn conjugation_laws(x in arb_gr()) {
            prop_assert_eq!(x.conj().conj(), x.clone());
            let n = &x * &x.conj();
            prop_assert!(n.is_real());
            prop_assert!(!n.re.is_negative());
        }

        #[test]
        fn division_inverts_multiplication(a in arb_gr(), b in arb_gr()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).checked_div(&b).unwrap(), a);
        }
    }
}
