//! Gaussian rationals: exact complex numbers `re + im·i` with rational parts.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ParseScalarError;

/// Exact rational number used for all real-linear computations.
pub type Rational = BigRational;

/// Build a rational from a numerator/denominator pair of machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Render a rational as `p` or `p/q`.
pub fn rat_to_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, ParseScalarError> {
    let t = s.trim().replace('\u{2212}', "-");
    let bad = || ParseScalarError(s.to_string());
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => {
            let p: BigInt = t.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(p))
        }
    }
}

/// An element of Q(i).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    pub re: Rational,
    pub im: Rational,
}

impl Scalar {
    pub fn new(re: Rational, im: Rational) -> Self {
        Scalar { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Scalar {
            re,
            im: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::real(Rational::from_integer(n.into()))
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Scalar::new(
            Rational::from_integer(re.into()),
            Rational::from_integer(im.into()),
        )
    }

    pub fn i() -> Self {
        Scalar::from_ints(0, 1)
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Scalar::from_int(1),
            1 => Scalar::i(),
            2 => Scalar::from_int(-1),
            _ => Scalar::from_ints(0, -1),
        }
    }

    pub fn conj(&self) -> Self {
        Scalar {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Multiply by `i`.
    pub fn mul_i(&self) -> Self {
        Scalar {
            re: -self.im.clone(),
            im: self.re.clone(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Scalar {
            re: &self.re * r,
            im: &self.im * r,
        }
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "division by zero scalar");
        Scalar {
            re: &self.re / &n,
            im: -(&self.im / &n),
        }
    }

    /// Exact-string encoding as a `[re, im]` pair.
    pub fn to_pair(&self) -> [String; 2] {
        [rat_to_string(&self.re), rat_to_string(&self.im)]
    }

    pub fn from_pair(pair: &[String]) -> Result<Self, ParseScalarError> {
        match pair {
            [re, im] => Ok(Scalar::new(parse_rational(re)?, parse_rational(im)?)),
            _ => Err(ParseScalarError(format!("{pair:?}"))),
        }
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar {
            re: Rational::zero(),
            im: Rational::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::from_int(1)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        Scalar {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        Scalar {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.im.is_zero() && o.im.is_zero() {
            return Scalar::real(&self.re * &o.re);
        }
        Scalar {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &Scalar) -> Scalar {
        self * &o.inv()
    }
}

macro_rules! by_value {
    ($tr:ident, $f:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $f(self, o: Scalar) -> Scalar {
                (&self).$f(&o)
            }
        }
    };
}
by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);
by_value!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::real(r)
    }
}

/// Formats as `p/q`, `p/q·i` or `(p/q + r/s·i)`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_part = |im: &Rational| -> String {
            if im.is_one() {
                "i".to_string()
            } else if (-im).is_one() {
                "\u{2212}i".to_string()
            } else {
                format!("{}·i", rat_to_string(im).replace('-', "\u{2212}"))
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", rat_to_string(&self.re).replace('-', "\u{2212}")),
            (true, false) => write!(f, "{}", im_part(&self.im)),
            (false, false) => {
                let re = rat_to_string(&self.re).replace('-', "\u{2212}");
                if self.im.is_negative() {
                    write!(f, "({} \u{2212} {})", re, im_part(&-self.im.clone()))
                } else {
                    write!(f, "({} + {})", re, im_part(&self.im))
                }
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = ParseScalarError;

    /// Inverse of `Display`. Accepts ASCII `-` as well as U+2212.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseScalarError(s.to_string());
        let t = s.trim().replace('\u{2212}', "-");
        let t = t
            .strip_prefix('(')
            .and_then(|u| u.strip_suffix(')'))
            .unwrap_or(&t)
            .trim();
        let parse_im = |u: &str| -> Result<Rational, ParseScalarError> {
            let u = u.trim();
            match u {
                "i" => Ok(Rational::one()),
                "-i" => Ok(-Rational::one()),
                _ => parse_rational(u.strip_suffix("·i").ok_or_else(bad)?),
            }
        };
        if let Some(pos) = t.rfind(" + ") {
            return Ok(Scalar::new(
                parse_rational(&t[..pos])?,
                parse_im(&t[pos + 3..])?,
            ));
        }
        if let Some(pos) = t.rfind(" - ") {
            return Ok(Scalar::new(
                parse_rational(&t[..pos])?,
                -parse_im(&t[pos + 3..])?,
            ));
        }
        if t.ends_with('i') {
            return Ok(Scalar::new(Rational::zero(), parse_im(t)?));
        }
        Ok(Scalar::real(parse_rational(t)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_arithmetic() {
        let a = Scalar::new(rat(1, 2), rat(-3, 4));
        let b = Scalar::from_ints(2, 5);
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(&a * &a.inv(), Scalar::one());
        assert_eq!(Scalar::i() * Scalar::i(), Scalar::from_int(-1));
        assert_eq!(a.mul_i(), &a * &Scalar::i());
        for k in -9..9 {
            assert_eq!(Scalar::i_pow(k) * Scalar::i_pow(-k), Scalar::one());
        }
    }

    #[test]
    fn display_round_trip() {
        let samples = [
            Scalar::zero(),
            Scalar::from_int(-7),
            Scalar::i(),
            Scalar::from_ints(0, -1),
            Scalar::new(rat(3, 5), rat(-1, 2)),
            Scalar::new(rat(-3, 5), rat(8, 3)),
            Scalar::new(Rational::zero(), rat(-2, 9)),
        ];
        for s in samples {
            let text = s.to_string();
            assert_eq!(text.parse::<Scalar>().unwrap(), s, "{text}");
            assert_eq!(Scalar::from_pair(&s.to_pair()).unwrap(), s);
        }
        assert_eq!(
            Scalar::new(rat(1, 2), rat(-1, 1)).to_string(),
            "(1/2 \u{2212} i)"
        );
    }

    #[test]
    fn rejects_garbage() {
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("abc".parse::<Scalar>().is_err());
        assert!(parse_rational("3/x").is_err());
    }
}
