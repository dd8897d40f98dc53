//! Exact arithmetic in the Gaussian rationals ℚ(i).
//!
//! Every structure constant, twist matrix and cochain coefficient in this
//! crate is a [`Scalar`]. Parameters are always instantiated to concrete
//! values, so all verifications reduce to exact equality tests.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always stored reduced with a positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("division by zero: {numerator} / 0")]
    DivisionByZero { numerator: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse scalar {text:?} at position {position}: {message}")]
pub struct ParseScalarError {
    pub text: String,
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// A Gaussian rational `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    re: Rational,
    im: Rational,
}

impl Scalar {
    pub fn new(re: Rational, im: Rational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar::new(Rational::zero(), Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::new(Rational::from_integer(n.into()), Rational::zero())
    }

    /// `n / d` as a real scalar. Panics if `d == 0`.
    pub fn from_ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "Scalar::from_ratio with zero denominator");
        Scalar::new(Rational::new(n.into(), d.into()), Rational::zero())
    }

    pub fn from_rational(r: Rational) -> Self {
        Scalar::new(r, Rational::zero())
    }

    /// `a + b·i` from integer parts.
    pub fn gaussian(a: i64, b: i64) -> Self {
        Scalar::new(Rational::from_integer(a.into()), Rational::from_integer(b.into()))
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Scalar {
        Scalar::new(self.re.clone(), -self.im.clone())
    }

    /// `re² + im²`.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Scalar::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar, FieldError> {
        match rhs.inv() {
            Some(inv) => Ok(self * &inv),
            None => Err(FieldError::DivisionByZero {
                numerator: self.to_string(),
            }),
        }
    }

    pub fn arith(x: &Scalar, y: &Scalar, op: ArithOp) -> Result<Scalar, FieldError> {
        Ok(match op {
            ArithOp::Add => x + y,
            ArithOp::Sub => x - y,
            ArithOp::Mul => x * y,
            ArithOp::Div => x.checked_div(y)?,
        })
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// A square root inside ℚ(i), if one exists. The root with positive real
    /// part (or positive imaginary part when the real part vanishes) is returned.
    pub fn sqrt(&self) -> Option<Scalar> {
        if self.im.is_zero() {
            return if self.re.is_negative() {
                rational_sqrt(&-self.re.clone()).map(|r| Scalar::new(Rational::zero(), r))
            } else {
                rational_sqrt(&self.re).map(Scalar::from_rational)
            };
        }
        // (x + yi)² = re + im·i with x² = (re + |z|)/2, y = im / 2x
        let modulus = rational_sqrt(&self.norm_sqr())?;
        let two = Rational::from_integer(2.into());
        let x = rational_sqrt(&((&self.re + modulus) / &two))?;
        let y = &self.im / (&two * &x);
        Some(Scalar::new(x, y))
    }
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = exact_isqrt(q.numer())?;
    let d = exact_isqrt(q.denom())?;
    Some(Rational::new(n, d))
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_scalar(self))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({})", format_scalar(self))
    }
}

impl FromStr for Scalar {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_scalar(s)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn format_imaginary(r: &Rational) -> String {
    if r.is_one() {
        "i".to_string()
    } else {
        format!("{}i", format_rational(r))
    }
}

/// Canonical text form, accepted back by [`parse_scalar`].
pub fn format_scalar(x: &Scalar) -> String {
    match (x.re.is_zero(), x.im.is_zero()) {
        (true, true) => "0".to_string(),
        (false, true) => format_rational(&x.re),
        (true, false) if x.im.is_negative() => format!("-{}", format_imaginary(&-x.im.clone())),
        (true, false) => format_imaginary(&x.im),
        (false, false) => {
            let sign = if x.im.is_negative() { '-' } else { '+' };
            format!(
                "{}{}{}",
                format_rational(&x.re),
                sign,
                format_imaginary(&x.im.abs())
            )
        }
    }
}

/// Parses `term (('+'|'-') term)?` where `term := rational 'i'? | 'i'` and
/// `rational := int ('/' posint)?`. Whitespace is ignored.
pub fn parse_scalar(text: &str) -> Result<Scalar, ParseScalarError> {
    // keep original positions so errors point into the caller's text
    let chars: Vec<(usize, char)> = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    let mut parser = ScalarParser {
        text,
        chars,
        pos: 0,
    };
    if parser.chars.is_empty() {
        return Err(parser.error("empty scalar"));
    }
    let mut value = parser.term(true)?;
    if parser.pos < parser.chars.len() {
        let negate = match parser.peek() {
            Some('+') => false,
            Some('-') => true,
            _ => return Err(parser.error("expected '+' or '-'")),
        };
        parser.pos += 1;
        let t = parser.term(false)?;
        value = if negate { value - t } else { value + t };
    }
    if parser.pos < parser.chars.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(value)
}

struct ScalarParser<'a> {
    text: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl ScalarParser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn error(&self, message: &str) -> ParseScalarError {
        let position = self
            .chars
            .get(self.pos)
            .map(|&(p, _)| p)
            .unwrap_or(self.text.len());
        ParseScalarError {
            text: self.text.to_string(),
            position,
            message: message.to_string(),
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        s.parse().ok()
    }

    fn term(&mut self, leading: bool) -> Result<Scalar, ParseScalarError> {
        let mut negative = false;
        if leading && matches!(self.peek(), Some('-') | Some('+')) {
            negative = self.peek() == Some('-');
            self.pos += 1;
        }
        if self.peek() == Some('i') {
            self.pos += 1;
            let v = Scalar::i();
            return Ok(if negative { -v } else { v });
        }
        let numer = self
            .digits()
            .ok_or_else(|| self.error("expected digits or 'i'"))?;
        let mut r = Rational::from_integer(numer);
        if self.peek() == Some('/') {
            self.pos += 1;
            let denom = self
                .digits()
                .ok_or_else(|| self.error("expected positive denominator"))?;
            if denom.is_zero() {
                self.pos -= 1;
                return Err(self.error("zero denominator"));
            }
            r /= Rational::from_integer(denom);
        }
        if negative {
            r = -r;
        }
        if self.peek() == Some('i') {
            self.pos += 1;
            Ok(Scalar::new(Rational::zero(), r))
        } else {
            Ok(Scalar::from_rational(r))
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                let f: fn(&Scalar, &Scalar) -> Scalar = $body;
                f(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| Scalar::new(&a.re + &b.re, &a.im + &b.im));
forward_binop!(Sub, sub, |a, b| Scalar::new(&a.re - &b.re, &a.im - &b.im));
forward_binop!(Mul, mul, |a, b| {
    if a.im.is_zero() && b.im.is_zero() {
        return Scalar::from_rational(&a.re * &b.re);
    }
    Scalar::new(
        &a.re * &b.re - &a.im * &b.im,
        &a.re * &b.im + &a.im * &b.re,
    )
});

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re, -self.im)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self += &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self -= &rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn arith_examples() {
        assert_eq!(s("1+i") * s("1-i"), Scalar::from_int(2));
        assert_eq!(s("1/2") + s("1/3"), Scalar::from_ratio(5, 6));
        assert_eq!(Scalar::i() * Scalar::i(), Scalar::from_int(-1));
        assert_eq!(
            Scalar::arith(&s("3"), &s("1/2"), ArithOp::Div).unwrap(),
            Scalar::from_int(6)
        );
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let err = Scalar::arith(&s("2+i"), &Scalar::zero(), ArithOp::Div).unwrap_err();
        assert_eq!(
            err,
            FieldError::DivisionByZero {
                numerator: "2+i".into()
            }
        );
    }

    #[test]
    fn parse_examples() {
        assert_eq!(s("2"), Scalar::from_int(2));
        assert_eq!(
            s("-1/2+3i"),
            Scalar::new(Rational::new((-1).into(), 2.into()), Rational::from_integer(3.into()))
        );
        assert_eq!(s("i"), Scalar::i());
        assert_eq!(s("-i"), -Scalar::i());
        assert_eq!(s(" 1 / 2 - i "), Scalar::from_ratio(1, 2) - Scalar::i());
        assert_eq!(s("1/2i"), Scalar::from_ratio(1, 2) * Scalar::i());
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = parse_scalar("1+x").unwrap_err();
        assert_eq!(err.position, 2);
        let err = parse_scalar("3/0").unwrap_err();
        assert_eq!(err.position, 2);
        assert!(parse_scalar("").is_err());
        assert!(parse_scalar("1+2+3").is_err());
        assert!(parse_scalar("1//2").is_err());
        assert_eq!(parse_scalar("1 + y").unwrap_err().position, 4);
    }

    #[test]
    fn format_canonical() {
        assert_eq!(format_scalar(&s("0")), "0");
        assert_eq!(format_scalar(&s("-1/2+3i")), "-1/2+3i");
        assert_eq!(format_scalar(&s("2-1/3i")), "2-1/3i");
        assert_eq!(format_scalar(&s("-i")), "-i");
        assert_eq!(format_scalar(&s("4/2")), "2");
    }

    #[test]
    fn square_roots() {
        assert_eq!(s("4").sqrt(), Some(s("2")));
        assert_eq!(s("-1").sqrt(), Some(s("i")));
        assert_eq!(s("9/4").sqrt(), Some(s("3/2")));
        assert_eq!(s("2").sqrt(), None);
        // (1+2i)² = -3+4i
        assert_eq!(s("-3+4i").sqrt(), Some(s("1+2i")));
        assert_eq!(s("2i").sqrt(), Some(s("1+i")));
        assert_eq!(s("i").sqrt(), None);
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        (-20i64..20, 1i64..7, -20i64..20, 1i64..7).prop_map(|(a, b, c, d)| {
            Scalar::new(Rational::new(a.into(), b.into()), Rational::new(c.into(), d.into()))
        })
    }

    proptest! {
        #[test]
        fn field_axioms(x in arb_scalar(), y in arb_scalar(), z in arb_scalar()) {
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x * &y, &y * &x);
            if let Some(inv) = x.inv() {
                prop_assert!((&x * &inv).is_one());
            } else {
                prop_assert!(x.is_zero());
            }
        }

        #[test]
        fn format_parse_round_trip(x in arb_scalar()) {
            prop_assert_eq!(parse_scalar(&format_scalar(&x)).unwrap(), x);
        }

        #[test]
        fn sqrt_of_square(x in arb_scalar()) {
            let sq = &x * &x;
            let r = sq.sqrt().expect("squares have roots");
            prop_assert_eq!(&r * &r, sq);
        }
    }
}
