//! Gaussian rationals: complex numbers `a + b·i` with `a, b ∈ ℚ`.
//!
//! Both parts are arbitrary-precision rationals kept in lowest terms with a
//! positive denominator, so two equal numbers always have identical
//! representations and `==` is structural.
//!
//! Literal grammar accepted by [`GaussianRational::from_str`]:
//!
//! ```text
//! scalar   := real (("+" | "-") imagpart)? | imagpart
//! imagpart := rat? "i"
//! real     := rat
//! rat      := "-"? digits ("/" digits)?
//! ```
//!
//! A bare `-i` is accepted as well, since that is how the canonical form
//! renders `0 - 1·i`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: &'static str },
    #[error("zero denominator at position {pos}")]
    ZeroDenominator { pos: usize },
}

/// An exact element of ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_integer(n: i64) -> Self {
        GaussianRational {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    /// `num / den`, real. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        GaussianRational {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    /// `re + im·i` from small integer pairs `(num, den)`.
    pub fn complex(re: (i64, i64), im: (i64, i64)) -> Self {
        GaussianRational {
            re: BigRational::new(BigInt::from(re.0), BigInt::from(re.1)),
            im: BigRational::new(BigInt::from(im.0), BigInt::from(im.1)),
        }
    }

    pub fn i() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn real_num(&self) -> &BigInt {
        self.re.numer()
    }

    pub fn real_den(&self) -> &BigInt {
        self.re.denom()
    }

    pub fn imag_num(&self) -> &BigInt {
        self.im.numer()
    }

    pub fn imag_den(&self) -> &BigInt {
        self.im.denom()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// `|z|²`, always a nonnegative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussianRational {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        GaussianRational::from_integer(n)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(re: BigRational) -> Self {
        GaussianRational {
            re,
            im: BigRational::zero(),
        }
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    /// Panics on division by zero, like the integer types.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        let inv = rhs.inv().expect("division by zero Gaussian rational");
        self * &inv
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
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
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

fn fmt_rat(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Writes the imaginary part with its own sign: `i`, `-i`, `3/2i`, `-2i`.
fn fmt_imag(im: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if im.is_one() {
        f.write_str("i")
    } else if (-im).is_one() {
        f.write_str("-i")
    } else {
        fmt_rat(im, f)?;
        f.write_str("i")
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => fmt_rat(&self.re, f),
            (true, false) => fmt_imag(&self.im, f),
            (false, false) => {
                fmt_rat(&self.re, f)?;
                if self.im.is_negative() {
                    f.write_str("-")?;
                } else {
                    f.write_str("+")?;
                }
                fmt_imag(&self.im.abs(), f)
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        // ASCII digits only, so both conversions are infallible.
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).ok()?;
        s.parse().ok()
    }

    /// `"-"? digits ("/" digits)?`, or `None` if no digits follow the sign.
    /// On `None` the cursor is restored.
    fn rat(&mut self) -> Result<Option<BigRational>, ScalarError> {
        let start = self.pos;
        let neg = self.eat(b'-');
        let Some(num) = self.digits() else {
            self.pos = start;
            return Ok(None);
        };
        let den = if self.eat(b'/') {
            let den_pos = self.pos;
            let den = self.digits().ok_or(ScalarError::Syntax {
                pos: self.pos,
                msg: "expected digits after '/'",
            })?;
            if den.is_zero() {
                return Err(ScalarError::ZeroDenominator { pos: den_pos });
            }
            den
        } else {
            BigInt::one()
        };
        let r = BigRational::new(num, den);
        Ok(Some(if neg { -r } else { r }))
    }
}

impl FromStr for GaussianRational {
    type Err = ScalarError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let lead = text.len() - text.trim_start().len();
        let mut cur = Cursor {
            bytes: text.trim().as_bytes(),
            pos: 0,
        };
        let shift = |e: ScalarError| match e {
            ScalarError::Syntax { pos, msg } => ScalarError::Syntax { pos: pos + lead, msg },
            ScalarError::ZeroDenominator { pos } => ScalarError::ZeroDenominator { pos: pos + lead },
        };

        let first = cur.rat().map_err(shift)?;
        let value = match first {
            None => {
                // Bare imaginary unit, optionally negated.
                let neg = cur.eat(b'-');
                if !cur.eat(b'i') {
                    return Err(shift(ScalarError::Syntax {
                        pos: cur.pos,
                        msg: "expected a rational or 'i'",
                    }));
                }
                let im = if neg { -BigRational::one() } else { BigRational::one() };
                GaussianRational::new(BigRational::zero(), im)
            }
            Some(r) if cur.eat(b'i') => GaussianRational::new(BigRational::zero(), r),
            Some(re) => {
                let sign = match cur.peek() {
                    Some(b'+') => Some(BigRational::one()),
                    Some(b'-') => Some(-BigRational::one()),
                    _ => None,
                };
                match sign {
                    None => GaussianRational::from(re),
                    Some(sign) => {
                        cur.pos += 1;
                        let coeff = cur.rat().map_err(shift)?.unwrap_or_else(BigRational::one);
                        if !cur.eat(b'i') {
                            return Err(shift(ScalarError::Syntax {
                                pos: cur.pos,
                                msg: "expected 'i' to close the imaginary part",
                            }));
                        }
                        GaussianRational::new(re, sign * coeff)
                    }
                }
            }
        };
        if cur.pos != cur.bytes.len() {
            return Err(shift(ScalarError::Syntax {
                pos: cur.pos,
                msg: "unexpected trailing input",
            }));
        }
        Ok(value)
    }
}

impl serde::Serialize for GaussianRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for GaussianRational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn parses_literals() {
        assert_eq!(p("1/2"), GaussianRational::ratio(1, 2));
        assert_eq!(p("-1"), GaussianRational::from(-1));
        assert_eq!(p("1/2-1/2i"), GaussianRational::complex((1, 2), (-1, 2)));
        assert_eq!(p("i"), GaussianRational::i());
        assert_eq!(p("-i"), -GaussianRational::i());
        assert_eq!(p("3/6i"), GaussianRational::complex((0, 1), (1, 2)));
        assert_eq!(p("2+i"), GaussianRational::complex((2, 1), (1, 1)));
        assert_eq!(p("0"), GaussianRational::zero());
    }

    #[test]
    fn canonical_rendering() {
        assert_eq!(p("2/4").to_string(), "1/2");
        assert_eq!(p("0/5").to_string(), "0");
        assert_eq!(p("0+0i").to_string(), "0");
        assert_eq!(p("0-1i").to_string(), "-i");
        assert_eq!(p("1/2-1/2i").to_string(), "1/2-1/2i");
        assert_eq!(p("-3/9i").to_string(), "-1/3i");
        assert_eq!(p("1+1i").to_string(), "1+i");
        assert_eq!(p("5+-2i").to_string(), "5-2i");
    }

    #[test]
    fn zero_parts_are_zero_over_one() {
        let z = p("0/7+0/3i");
        assert_eq!(z.real_num(), &BigInt::from(0));
        assert_eq!(z.real_den(), &BigInt::from(1));
        assert_eq!(z.imag_den(), &BigInt::from(1));
        let h = p("-2/4");
        assert_eq!(h.real_num(), &BigInt::from(-1));
        assert_eq!(h.real_den(), &BigInt::from(2));
    }

    #[test]
    fn rejects_bad_literals() {
        assert_eq!(
            "1/0".parse::<GaussianRational>(),
            Err(ScalarError::ZeroDenominator { pos: 2 })
        );
        assert!(matches!(
            "1+".parse::<GaussianRational>(),
            Err(ScalarError::Syntax { pos: 2, .. })
        ));
        assert!(matches!(
            "abc".parse::<GaussianRational>(),
            Err(ScalarError::Syntax { pos: 0, .. })
        ));
        assert!(matches!(
            "1 2".parse::<GaussianRational>(),
            Err(ScalarError::Syntax { pos: 1, .. })
        ));
        assert!(matches!(
            "1/".parse::<GaussianRational>(),
            Err(ScalarError::Syntax { pos: 2, .. })
        ));
    }

    #[test]
    fn inverse_of_i() {
        assert_eq!(GaussianRational::i().inv().unwrap(), -GaussianRational::i());
        assert!(GaussianRational::zero().inv().is_none());
    }

    fn small_rat() -> impl Strategy<Value = (i64, i64)> {
        (-20i64..=20, 1i64..=12)
    }

    pub(crate) fn gaussian() -> impl Strategy<Value = GaussianRational> {
        (small_rat(), small_rat()).prop_map(|(a, b)| GaussianRational::complex(a, b))
    }

    /// Literals in the grammar, built textually rather than from values.
    fn literal() -> impl Strategy<Value = String> {
        let rat = (any::<bool>(), 0u32..50, proptest::option::of(1u32..30)).prop_map(|(neg, n, d)| {
            let sign = if neg { "-" } else { "" };
            match d {
                Some(d) => format!("{sign}{n}/{d}"),
                None => format!("{sign}{n}"),
            }
        });
        let unsigned = (0u32..50, proptest::option::of(1u32..30)).prop_map(|(n, d)| match d {
            Some(d) => format!("{n}/{d}"),
            None => n.to_string(),
        });
        prop_oneof![
            rat.clone(),
            rat.clone().prop_map(|r| format!("{r}i")),
            Just("i".to_owned()),
            Just("-i".to_owned()),
            (rat, any::<bool>(), proptest::option::of(unsigned)).prop_map(|(r, plus, im)| format!(
                "{r}{}{}i",
                if plus { "+" } else { "-" },
                im.unwrap_or_default()
            )),
        ]
    }

    proptest! {
        #[test]
        fn format_parse_round_trip(lit in literal()) {
            let v = p(&lit);
            let canon = v.to_string();
            prop_assert_eq!(p(&canon).clone(), v);
            prop_assert_eq!(p(&canon).to_string(), canon);
        }

        #[test]
        fn field_laws(a in gaussian(), b in gaussian(), c in gaussian()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), GaussianRational::one());
            }
            prop_assert_eq!(&a - &a, GaussianRational::zero());
        }
    }
}
