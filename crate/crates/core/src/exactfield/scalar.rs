use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::FieldError;

/// The field a scalar (or a whole vector/matrix) lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Rational,
    /// Q(sqrt(d)) with d square-free and > 1.
    Quadratic(u64),
}

impl Field {
    /// Smallest field containing both, if one exists among Q and Q(sqrt d).
    pub fn join(self, other: Field) -> Option<Field> {
        match (self, other) {
            (Field::Rational, f) | (f, Field::Rational) => Some(f),
            (Field::Quadratic(a), Field::Quadratic(b)) if a == b => Some(self),
            _ => None,
        }
    }

    pub fn join_all<I: IntoIterator<Item = Field>>(fields: I) -> Option<Field> {
        fields.into_iter().try_fold(Field::Rational, Field::join)
    }

    pub fn quadratic(d: u64) -> Result<Field, FieldError> {
        if d < 2 || !is_square_free(d) {
            return Err(FieldError::BadRadicand(d));
        }
        Ok(Field::Quadratic(d))
    }

    pub fn radicand(self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Quadratic(d) => Some(d),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Quadratic(d) => write!(f, "Q(sqrt({d}))"),
        }
    }
}

pub fn is_square_free(d: u64) -> bool {
    let mut p = 2u64;
    while p.saturating_mul(p) <= d {
        if d.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

/// Exact element of Q or of a real quadratic field Q(sqrt d).
///
/// A quadratic value with vanishing irrational part is always stored as
/// `Rational`, so structural equality is numeric equality. Arithmetic between
/// two different quadratic fields panics; callers keep data in one field
/// (see [`Field::join`]).
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Quadratic {
        a: BigRational,
        b: BigRational,
        d: u64,
    },
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar::Rational(BigRational::from_integer(n))
    }

    /// `a + b*sqrt(d)`; collapses to a rational when `b == 0`.
    pub fn quadratic(a: BigRational, b: BigRational, d: u64) -> Self {
        if b.is_zero() {
            Scalar::Rational(a)
        } else {
            Scalar::Quadratic { a, b, d }
        }
    }

    /// `sqrt(d)` itself.
    pub fn sqrt(d: u64) -> Self {
        Scalar::quadratic(BigRational::zero(), BigRational::one(), d)
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Quadratic { d, .. } => Field::Quadratic(*d),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_one())
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Quadratic { .. } => None,
        }
    }

    /// Rational and irrational coordinates `(a, b)` of `a + b*sqrt(d)`.
    pub fn parts(&self) -> (BigRational, BigRational) {
        match self {
            Scalar::Rational(r) => (r.clone(), BigRational::zero()),
            Scalar::Quadratic { a, b, .. } => (a.clone(), b.clone()),
        }
    }

    /// Galois conjugate, `sqrt(d) -> -sqrt(d)`.
    pub fn conjugate(&self) -> Self {
        match self {
            Scalar::Rational(_) => self.clone(),
            Scalar::Quadratic { a, b, d } => Scalar::Quadratic {
                a: a.clone(),
                b: -b.clone(),
                d: *d,
            },
        }
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self {
            Scalar::Rational(r) => sign_of(r),
            Scalar::Quadratic { a, b, d } => {
                let sa = sign_of(a);
                let sb = sign_of(b);
                if sa == 0 || sa == sb {
                    return sb;
                }
                // a and b of opposite signs: compare a^2 with d*b^2.
                let lhs = a * a;
                let rhs = b * b * BigRational::from_integer(BigInt::from(*d));
                match lhs.cmp(&rhs) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => unreachable!("d is not a perfect square"),
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    None
                } else {
                    Some(Scalar::Rational(r.recip()))
                }
            }
            Scalar::Quadratic { a, b, d } => {
                let norm = a * a - b * b * BigRational::from_integer(BigInt::from(*d));
                Some(Scalar::quadratic(a / &norm, -(b / &norm), *d))
            }
        }
    }

    /// Least common multiple of the denominators of both coordinates.
    pub fn denominator_lcm(&self) -> BigInt {
        match self {
            Scalar::Rational(r) => r.denom().clone(),
            Scalar::Quadratic { a, b, .. } => a.denom().lcm(b.denom()),
        }
    }

    fn check_fields(&self, other: &Scalar) -> Option<u64> {
        match (self, other) {
            (Scalar::Quadratic { d: d1, .. }, Scalar::Quadratic { d: d2, .. }) => {
                assert_eq!(d1, d2, "arithmetic across different quadratic fields");
                Some(*d1)
            }
            (Scalar::Quadratic { d, .. }, _) | (_, Scalar::Quadratic { d, .. }) => Some(*d),
            _ => None,
        }
    }
}

fn sign_of(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Rational(r)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            _ => {
                let d = self.check_fields(rhs).unwrap();
                let (a1, b1) = self.parts();
                let (a2, b2) = rhs.parts();
                Scalar::quadratic(a1 + a2, b1 + b2, d)
            }
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x - y),
            _ => {
                let d = self.check_fields(rhs).unwrap();
                let (a1, b1) = self.parts();
                let (a2, b2) = rhs.parts();
                Scalar::quadratic(a1 - a2, b1 - b2, d)
            }
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            (Scalar::Rational(x), Scalar::Quadratic { a, b, d })
            | (Scalar::Quadratic { a, b, d }, Scalar::Rational(x)) => {
                Scalar::quadratic(a * x, b * x, *d)
            }
            (Scalar::Quadratic { a: a1, b: b1, .. }, Scalar::Quadratic { a: a2, b: b2, .. }) => {
                let d = self.check_fields(rhs).unwrap();
                let dd = BigRational::from_integer(BigInt::from(d));
                Scalar::quadratic(a1 * a2 + b1 * b2 * dd, a1 * b2 + a2 * b1, d)
            }
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &'a Scalar) -> Scalar {
        let inv = rhs.inverse().expect("division by zero");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Quadratic { a, b, d } => Scalar::Quadratic {
                a: -a,
                b: -b,
                d: *d,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    /// Canonical exact form: `p`, `p/q`, `b*sqrt(d)` or `a+b*sqrt(d)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{}", fmt_rational(r)),
            Scalar::Quadratic { a, b, d } => {
                let radical = if b.is_one() {
                    format!("sqrt({d})")
                } else if (-b).is_one() {
                    format!("-sqrt({d})")
                } else {
                    format!("{}*sqrt({d})", fmt_rational(b))
                };
                if a.is_zero() {
                    write!(f, "{radical}")
                } else if b.is_positive() {
                    write!(f, "{}+{radical}", fmt_rational(a))
                } else {
                    write!(f, "{}{radical}", fmt_rational(a))
                }
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let valid = |t: &str| {
        let t = t.strip_prefix(['-', '+']).unwrap_or(t);
        !t.is_empty() && t.bytes().all(|c| c.is_ascii_digit())
    };
    match s.split_once('/') {
        Some((n, d)) => {
            if !valid(n) || !d.bytes().all(|c| c.is_ascii_digit()) || d.is_empty() {
                return None;
            }
            let n: BigInt = n.trim_start_matches('+').parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => {
            if !valid(s) {
                return None;
            }
            Some(BigRational::from_integer(
                s.trim_start_matches('+').parse().ok()?,
            ))
        }
    }
}

/// Parses the irrational term of a quadratic literal: `sqrt(d)`, `-sqrt(d)`
/// or `r/s*sqrt(d)`.
fn parse_radical_term(s: &str) -> Option<(BigRational, u64)> {
    let s = s.trim();
    let open = s.find("sqrt(")?;
    let inner = s[open + 5..].strip_suffix(')')?;
    let d: u64 = inner.trim().parse().ok()?;
    let coeff = s[..open].trim();
    let coeff = match coeff {
        "" | "+" => BigRational::one(),
        "-" => -BigRational::one(),
        c => parse_rational(c.strip_suffix('*')?)?,
    };
    Some((coeff, d))
}

impl FromStr for Scalar {
    type Err = FieldError;

    /// Accepts `p`, `p/q`, `r/s*sqrt(d)`, `p/q+r/s*sqrt(d)` and `p/q-r/s*sqrt(d)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FieldError::BadScalar(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if !t.contains("sqrt") {
            return parse_rational(&t).map(Scalar::Rational).ok_or_else(bad);
        }
        // Split at the sign that begins the radical term (not a leading sign).
        let pos = t.find("sqrt(").ok_or_else(bad)?;
        let split = t[..pos]
            .char_indices()
            .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i)
            .next_back();
        let (a, radical) = match split {
            Some(i) => (parse_rational(&t[..i]).ok_or_else(bad)?, &t[i..]),
            None => (BigRational::zero(), &t[..]),
        };
        let (b, d) = parse_radical_term(radical).ok_or_else(bad)?;
        Field::quadratic(d)?;
        Ok(Scalar::quadratic(a, b, d))
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn parse_and_display_roundtrip() {
        for lit in [
            "0",
            "7",
            "-3/4",
            "sqrt(2)",
            "-sqrt(2)",
            "1/2+3*sqrt(5)",
            "-1-2/3*sqrt(3)",
            "2/7*sqrt(2)",
        ] {
            assert_eq!(s(lit).to_string(), lit);
        }
        assert_eq!(s("4/6"), s("2/3"));
        assert_eq!(s("1+0*sqrt(2)"), Scalar::from_int(1));
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("sqrt(4)".parse::<Scalar>().is_err());
        assert!("abc".parse::<Scalar>().is_err());
        assert!("1/2*sqrt(2".parse::<Scalar>().is_err());
    }

    #[test]
    fn quadratic_arithmetic() {
        let r2 = Scalar::sqrt(2);
        assert_eq!(&r2 * &r2, Scalar::from_int(2));
        let x = s("1+sqrt(2)");
        let inv = x.inverse().unwrap();
        assert_eq!(inv, s("-1+sqrt(2)"));
        assert_eq!(&x * &inv, Scalar::one());
        assert_eq!(x.conjugate(), s("1-sqrt(2)"));
    }

    #[test]
    fn signs() {
        assert_eq!(s("3-2*sqrt(2)").signum(), 1); // 3 > 2.828
        assert_eq!(s("1-sqrt(2)").signum(), -1);
        assert_eq!(s("-3+2*sqrt(2)").signum(), -1);
        assert_eq!(s("-1+sqrt(2)").signum(), 1);
        assert!(s("sqrt(2)") < s("3/2"));
        assert!(s("sqrt(2)") > s("7/5"));
    }

    #[test]
    fn square_free() {
        assert!(is_square_free(2));
        assert!(is_square_free(30));
        assert!(!is_square_free(12));
        assert!(Field::quadratic(1).is_err());
        assert_eq!(
            Field::Rational.join(Field::Quadratic(3)),
            Some(Field::Quadratic(3))
        );
        assert_eq!(Field::Quadratic(2).join(Field::Quadratic(3)), None);
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        (-20i64..20, 1i64..6, -20i64..20, 1i64..6, any::<bool>()).prop_map(|(p, q, r, t, quad)| {
            let a = BigRational::new(p.into(), q.into());
            if quad {
                Scalar::quadratic(a, BigRational::new(r.into(), t.into()), 2)
            } else {
                Scalar::Rational(a)
            }
        })
    }

    proptest! {
        #[test]
        fn field_axioms(x in arb_scalar(), y in arb_scalar(), z in arb_scalar()) {
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x - &y) + &y, x.clone());
            if !y.is_zero() {
                prop_assert_eq!(&(&x / &y) * &y, x.clone());
            }
        }

        #[test]
        fn order_is_compatible_with_addition(x in arb_scalar(), y in arb_scalar(), z in arb_scalar()) {
            prop_assert_eq!(x.cmp(&y), (&x + &z).cmp(&(&y + &z)));
        }

        #[test]
        fn display_parse_roundtrip(x in arb_scalar()) {
            prop_assert_eq!(x.to_string().parse::<Scalar>().unwrap(), x);
        }
    }
}
