//! Exact scalars over the rationals and the Gaussian rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// The base field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    /// The rationals.
    Q,
    /// The Gaussian rationals `Q(i)`.
    QI,
}

impl Field {
    /// The smallest field containing both.
    pub fn join(self, other: Field) -> Field {
        if self == Field::QI || other == Field::QI {
            Field::QI
        } else {
            Field::Q
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Q => f.write_str("Q"),
            Field::QI => f.write_str("QI"),
        }
    }
}

impl FromStr for Field {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Q" => Ok(Field::Q),
            "QI" => Ok(Field::QI),
            other => Err(format!("unknown field '{other}' (expected Q or QI)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed scalar '{text}': {reason}")]
pub struct ScalarParseError {
    pub text: String,
    pub reason: &'static str,
}

/// An exact field element. `BigRational` keeps every fraction in lowest
/// terms with a positive denominator.
///
/// Arithmetic between a `Q` and a `QI` value promotes to `QI`; matrices
/// reject mixed tags at construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    QI(BigRational, BigRational),
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Scalar {
    pub fn zero(field: Field) -> Scalar {
        Scalar::from_i64(field, 0)
    }

    pub fn one(field: Field) -> Scalar {
        Scalar::from_i64(field, 1)
    }

    pub fn from_i64(field: Field, n: i64) -> Scalar {
        Scalar::from_rational(field, rat(n))
    }

    pub fn from_ratio(field: Field, num: i64, den: i64) -> Scalar {
        Scalar::from_rational(field, BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_bigint(field: Field, n: BigInt) -> Scalar {
        Scalar::from_rational(field, BigRational::from_integer(n))
    }

    pub fn from_rational(field: Field, r: BigRational) -> Scalar {
        match field {
            Field::Q => Scalar::Q(r),
            Field::QI => Scalar::QI(r, BigRational::zero()),
        }
    }

    pub fn gaussian(re: BigRational, im: BigRational) -> Scalar {
        Scalar::QI(re, im)
    }

    /// The imaginary unit.
    pub fn i() -> Scalar {
        Scalar::QI(BigRational::zero(), BigRational::one())
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Q,
            Scalar::QI(..) => Field::QI,
        }
    }

    pub fn re(&self) -> &BigRational {
        match self {
            Scalar::Q(r) | Scalar::QI(r, _) => r,
        }
    }

    pub fn im(&self) -> BigRational {
        match self {
            Scalar::Q(_) => BigRational::zero(),
            Scalar::QI(_, i) => i.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::QI(a, b) => a.is_zero() && b.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::QI(a, b) => a.is_one() && b.is_zero(),
        }
    }

    /// True when the value lies in `Q` (imaginary part zero).
    pub fn is_real(&self) -> bool {
        match self {
            Scalar::Q(_) => true,
            Scalar::QI(_, b) => b.is_zero(),
        }
    }

    /// Re-tag into `field`. Fails only when moving a non-real value to `Q`.
    pub fn to_field(&self, field: Field) -> Option<Scalar> {
        match (self, field) {
            (Scalar::Q(r), Field::QI) => Some(Scalar::QI(r.clone(), BigRational::zero())),
            (Scalar::QI(a, b), Field::Q) => b.is_zero().then(|| Scalar::Q(a.clone())),
            _ => Some(self.clone()),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Q(r) => Scalar::Q(r.recip()),
            Scalar::QI(a, b) => {
                let norm = a * a + b * b;
                Scalar::QI(a / &norm, -(b / &norm))
            }
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Option<Scalar> {
        other.inv().map(|inv| self * &inv)
    }

    /// Parse the whitespace-free text format: `p`, `p/q`, `a/b+c/d*i`,
    /// `c/d*i`, `i`, `-i`. Text without an imaginary unit parses as `Q`;
    /// callers re-tag with [`Scalar::to_field`].
    pub fn parse(text: &str) -> Result<Scalar, ScalarParseError> {
        let err = |reason| ScalarParseError { text: text.to_string(), reason };
        if text.is_empty() {
            return Err(err("empty"));
        }
        if text.chars().any(char::is_whitespace) {
            return Err(err("whitespace is not allowed"));
        }
        let Some(body) = text.strip_suffix('i') else {
            return parse_rational(text).map(Scalar::Q).ok_or_else(|| err("not a rational"));
        };
        let (coeff_part, starred) = match body.strip_suffix('*') {
            Some(c) => (c, true),
            None => (body, false),
        };
        // Split at the last sign that is not the leading character.
        let split = coeff_part
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(idx, _)| idx)
            .last();
        let (re_text, im_text) = match split {
            Some(idx) => (&coeff_part[..idx], &coeff_part[idx..]),
            None => ("", coeff_part),
        };
        let re = if re_text.is_empty() {
            BigRational::zero()
        } else {
            parse_rational(re_text).ok_or_else(|| err("bad real part"))?
        };
        let im = match im_text {
            "" | "+" if !starred => BigRational::one(),
            "-" if !starred => -BigRational::one(),
            t if starred => {
                let t = t.strip_prefix('+').unwrap_or(t);
                parse_rational(t).ok_or_else(|| err("bad imaginary part"))?
            }
            _ => return Err(err("imaginary coefficient needs '*i'")),
        };
        Ok(Scalar::QI(re, im))
    }
}

fn parse_rational(text: &str) -> Option<BigRational> {
    let (sign, unsigned) = match text.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, text),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let (num, den) = match unsigned.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (unsigned, None),
    };
    if !digits(num) {
        return None;
    }
    let num = BigInt::from_str(num).ok()? * sign;
    let den = match den {
        Some(d) if digits(d) => BigInt::from_str(d).ok()?,
        Some(_) => return None,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => f.write_str(&fmt_rational(r)),
            Scalar::QI(a, b) => {
                if b.is_zero() {
                    return f.write_str(&fmt_rational(a));
                }
                let mut out = String::new();
                if !a.is_zero() {
                    out.push_str(&fmt_rational(a));
                    if b.is_positive() {
                        out.push('+');
                    }
                }
                if b.is_one() {
                    out.push('i');
                } else if (-b).is_one() {
                    out.push_str("-i");
                } else {
                    out.push_str(&fmt_rational(b));
                    out.push_str("*i");
                }
                f.write_str(&out)
            }
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            _ => Scalar::QI(self.re() + rhs.re(), self.im() + rhs.im()),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a - b),
            _ => Scalar::QI(self.re() - rhs.re(), self.im() - rhs.im()),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Q(a), Scalar::QI(c, d)) | (Scalar::QI(c, d), Scalar::Q(a)) => {
                Scalar::QI(a * c, a * d)
            }
            (Scalar::QI(a, b), Scalar::QI(c, d)) => Scalar::QI(a * c - b * d, a * d + b * c),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::QI(a, b) => Scalar::QI(-a, -b),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rationals() {
        assert_eq!(Scalar::parse("3").unwrap(), Scalar::from_i64(Field::Q, 3));
        assert_eq!(Scalar::parse("-6/4").unwrap(), Scalar::from_ratio(Field::Q, -3, 2));
        assert!(Scalar::parse("1/0").is_err());
        assert!(Scalar::parse("1 /2").is_err());
        assert!(Scalar::parse("1/-2").is_err());
        assert!(Scalar::parse("").is_err());
        assert!(Scalar::parse("x").is_err());
    }

    #[test]
    fn parse_gaussian() {
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(Scalar::parse("i").unwrap(), Scalar::i());
        assert_eq!(Scalar::parse("-i").unwrap(), -Scalar::i());
        assert_eq!(
            Scalar::parse("1/2+3/4*i").unwrap(),
            Scalar::QI(half.clone(), BigRational::new(3.into(), 4.into()))
        );
        assert_eq!(Scalar::parse("-1/2-i").unwrap(), Scalar::QI(-half.clone(), -BigRational::one()));
        assert_eq!(Scalar::parse("1/2*i").unwrap(), Scalar::QI(BigRational::zero(), half));
        assert!(Scalar::parse("2i").is_err());
        assert!(Scalar::parse("1+*i").is_err());
    }

    #[test]
    fn display_round_trips() {
        for text in ["0", "5", "-7/3", "i", "-i", "2+i", "1/2-3/5*i", "4*i"] {
            let s = Scalar::parse(text).unwrap();
            assert_eq!(s.to_string(), text);
            assert_eq!(Scalar::parse(&s.to_string()).unwrap(), s);
        }
    }

    #[test]
    fn gaussian_field_ops() {
        let i = Scalar::i();
        assert_eq!(&i * &i, Scalar::from_i64(Field::QI, -1));
        let z = Scalar::parse("1+2*i").unwrap();
        let w = z.inv().unwrap();
        assert!((&z * &w).is_one());
        assert_eq!(Scalar::zero(Field::QI).inv(), None);
    }

    #[test]
    fn mixed_tags_promote() {
        let q = Scalar::from_i64(Field::Q, 2);
        let g = Scalar::i();
        assert_eq!((&q + &g).field(), Field::QI);
        assert_eq!(q.to_field(Field::QI).unwrap().to_field(Field::Q).unwrap(), q);
        assert_eq!(g.to_field(Field::Q), None);
    }
}
