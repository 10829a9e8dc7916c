//! Exact scalars over the rationals and the Gaussian rationals.
//!
//! Every scalar carries the ground field it lives in, so that mixing
//! operands from different fields is caught instead of silently coerced.
//! Arithmetic is exact: big-integer fractions, always reduced.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use thiserror::Error;

/// The ground field: the rationals (modeling ℝ) or the Gaussian
/// rationals (modeling ℂ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Real,
    Complex,
}

impl Field {
    /// Common field of two operands.
    pub fn unify(self, other: Field) -> Result<Field, ScalarError> {
        if self == other {
            Ok(self)
        } else {
            Err(ScalarError::FieldMismatch)
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Real => write!(f, "rational"),
            Field::Complex => write!(f, "gaussian"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different ground fields")]
    FieldMismatch,
    #[error("invalid scalar literal `{0}`")]
    Parse(String),
}

/// An exact element of ℚ or ℚ(i). The imaginary part of a `Field::Real`
/// scalar is identically zero.
#[derive(Clone, PartialEq, Eq)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
    field: Field,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational, field: Field) -> Scalar {
        assert!(
            field == Field::Complex || im.is_zero(),
            "real scalars must have zero imaginary part"
        );
        Scalar { re, im, field }
    }

    pub fn zero(field: Field) -> Scalar {
        Scalar::new(BigRational::zero(), BigRational::zero(), field)
    }

    pub fn one(field: Field) -> Scalar {
        Scalar::from_int(1, field)
    }

    pub fn from_int(n: i64, field: Field) -> Scalar {
        Scalar::new(BigRational::from(BigInt::from(n)), BigRational::zero(), field)
    }

    /// `p/q` in the given field. Panics if `q == 0`.
    pub fn fraction(p: i64, q: i64, field: Field) -> Scalar {
        assert!(q != 0, "zero denominator");
        let re = BigRational::new(BigInt::from(p), BigInt::from(q));
        Scalar::new(re, BigRational::zero(), field)
    }

    /// `a/b + (c/d)i` in ℚ(i). Panics if `b == 0` or `d == 0`.
    pub fn gaussian(a: i64, b: i64, c: i64, d: i64) -> Scalar {
        assert!(b != 0 && d != 0, "zero denominator");
        Scalar::new(
            BigRational::new(BigInt::from(a), BigInt::from(b)),
            BigRational::new(BigInt::from(c), BigInt::from(d)),
            Field::Complex,
        )
    }

    pub fn i() -> Scalar {
        Scalar::new(
            BigRational::zero(),
            BigRational::from(BigInt::from(1)),
            Field::Complex,
        )
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Scalar {
        Scalar::new(self.re.clone(), -self.im.clone(), self.field)
    }

    /// `x · conj(x)`; always has zero imaginary part and nonnegative real part.
    pub fn abs_sq(&self) -> Scalar {
        Scalar::new(
            &self.re * &self.re + &self.im * &self.im,
            BigRational::zero(),
            self.field,
        )
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        // 1/(a+bi) = (a-bi)/(a²+b²)
        let denom = &self.re * &self.re + &self.im * &self.im;
        Ok(Scalar::new(
            &self.re / &denom,
            -&self.im / &denom,
            self.field,
        ))
    }

    pub fn try_div(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        self.field.unify(rhs.field)?;
        Ok(self * &rhs.inv()?)
    }

    /// Parses `"p/q"` or the integer shorthand `"n"` as an element of `field`.
    pub fn parse(text: &str, field: Field) -> Result<Scalar, ScalarError> {
        let t = text.trim();
        let bad = || ScalarError::Parse(text.to_string());
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (t, None),
        };
        let numer: BigInt = num.parse().map_err(|_| bad())?;
        let denom: BigInt = match den {
            Some(d) => d.parse().map_err(|_| bad())?,
            None => BigInt::from(1),
        };
        if denom.is_zero() {
            return Err(bad());
        }
        Ok(Scalar::new(
            BigRational::new(numer, denom),
            BigRational::zero(),
            field,
        ))
    }

    /// Real part as `"p/q"` (or `"p"` when the denominator is one).
    pub fn re_string(&self) -> String {
        self.re.to_string()
    }

    pub fn im_string(&self) -> String {
        self.im.to_string()
    }

    pub fn to_f64(&self) -> f64 {
        // Only meaningful for scalars with zero imaginary part.
        debug_assert!(self.im.is_zero());
        self.re.to_f64().expect("rational out of f64 range")
    }

    fn unified(&self, rhs: &Scalar) -> Field {
        self.field
            .unify(rhs.field)
            .expect("scalar arithmetic across different ground fields")
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let field = self.unified(rhs);
        // Our matrices are mostly sparse; short-circuit on zero operands.
        if self.is_zero() {
            return Scalar::new(rhs.re.clone(), rhs.im.clone(), field);
        }
        if rhs.is_zero() {
            return Scalar::new(self.re.clone(), self.im.clone(), field);
        }
        Scalar::new(&self.re + &rhs.re, &self.im + &rhs.im, field)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let field = self.unified(rhs);
        if rhs.is_zero() {
            return Scalar::new(self.re.clone(), self.im.clone(), field);
        }
        Scalar::new(&self.re - &rhs.re, &self.im - &rhs.im, field)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let field = self.unified(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero(field);
        }
        // (a+bi)(c+di) = (ac-bd) + (ad+bc)i
        Scalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
            field,
        )
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.try_div(rhs).expect("scalar division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re.clone(), -self.im.clone(), self.field)
    }
}

macro_rules! forward_owned_binop {
    ($($trait:ident, $method:ident);*) => {$(
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $trait::$method(&self, &rhs)
            }
        }
    )*};
}
forward_owned_binop!(Add, add; Sub, sub; Mul, mul; Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let sign = if self.im.is_negative() { "-" } else { "+" };
        let mag = self.im.abs();
        let im_part = if mag == BigRational::from(BigInt::from(1)) {
            "i".to_string()
        } else {
            format!("{}i", mag)
        };
        if self.re.is_zero() {
            if self.im.is_negative() {
                write!(f, "-{}", im_part)
            } else {
                write!(f, "{}", im_part)
            }
        } else {
            write!(f, "{} {} {}", self.re, sign, im_part)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(p: i64, q: i64) -> Scalar {
        Scalar::fraction(p, q, Field::Real)
    }

    #[test]
    fn fraction_arithmetic() {
        assert_eq!(&rat(1, 3) + &rat(1, 6), rat(1, 2));
        assert_eq!(&rat(1, 2) - &rat(1, 3), rat(1, 6));
        assert_eq!(&rat(2, 3) * &rat(3, 4), rat(1, 2));
        assert_eq!(&rat(1, 2) / &rat(3, 1), rat(1, 6));
    }

    #[test]
    fn conjugation() {
        let x = Scalar::gaussian(2, 5, 3, 7);
        assert_eq!(x.conj(), Scalar::gaussian(2, 5, -3, 7));
        assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn complex_multiplication() {
        // (1/2 + 1/2 i)(1/2 - 1/2 i), against the expanded product
        // (ac - bd) + (ad + bc)i computed by hand: 1/4 + 1/4 = 1/2, -1/4 + 1/4 = 0.
        let x = Scalar::gaussian(1, 2, 1, 2);
        let y = Scalar::gaussian(1, 2, -1, 2);
        assert_eq!(&x * &y, Scalar::fraction(1, 2, Field::Complex));
    }

    #[test]
    fn division_by_zero_is_reported() {
        let z = Scalar::zero(Field::Real);
        assert_eq!(rat(1, 1).try_div(&z), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn field_mismatch_is_reported() {
        let r = rat(1, 1);
        let c = Scalar::one(Field::Complex);
        assert_eq!(r.try_div(&c), Err(ScalarError::FieldMismatch));
        assert_eq!(Field::Real.unify(Field::Complex), Err(ScalarError::FieldMismatch));
    }

    #[test]
    fn parse_round_trip() {
        for text in ["3", "-4", "7/3", "-22/7", "0"] {
            let s = Scalar::parse(text, Field::Real).unwrap();
            assert_eq!(s.re_string(), text);
        }
        assert_eq!(Scalar::parse("6/4", Field::Real).unwrap(), rat(3, 2));
        assert!(Scalar::parse("1/0", Field::Real).is_err());
        assert!(Scalar::parse("x", Field::Real).is_err());
        assert!(Scalar::parse("", Field::Real).is_err());
    }

    #[test]
    fn display_forms() {
        assert_eq!(rat(3, 2).to_string(), "3/2");
        assert_eq!(rat(-4, 1).to_string(), "-4");
        assert_eq!(Scalar::i().to_string(), "i");
        assert_eq!((-Scalar::i()).to_string(), "-i");
        assert_eq!(Scalar::gaussian(2, 5, -3, 7).to_string(), "2/5 - 3/7i");
        assert_eq!(Scalar::gaussian(0, 1, 3, 4).to_string(), "3/4i");
    }

    fn arb_scalar(field: Field) -> impl Strategy<Value = Scalar> {
        let one_part = (-20i64..=20, 1i64..=6);
        (one_part.clone(), one_part).prop_map(move |((a, b), (c, d))| match field {
            Field::Real => Scalar::fraction(a, b, Field::Real),
            Field::Complex => Scalar::gaussian(a, b, c, d),
        })
    }

    proptest! {
        #[test]
        fn field_axioms_real(x in arb_scalar(Field::Real),
                             y in arb_scalar(Field::Real),
                             z in arb_scalar(Field::Real)) {
            field_axioms(x, y, z)?;
        }

        #[test]
        fn field_axioms_complex(x in arb_scalar(Field::Complex),
                                y in arb_scalar(Field::Complex),
                                z in arb_scalar(Field::Complex)) {
            field_axioms(x, y, z)?;
        }

        #[test]
        fn conj_is_multiplicative(x in arb_scalar(Field::Complex),
                                  y in arb_scalar(Field::Complex)) {
            prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        }

        #[test]
        fn norm_is_real_nonnegative(x in arb_scalar(Field::Complex)) {
            let n = &x * &x.conj();
            prop_assert!(n.im().is_zero());
            prop_assert!(!n.re().is_negative());
            prop_assert_eq!(n.is_zero(), x.is_zero());
            prop_assert_eq!(n, x.abs_sq());
        }
    }

    fn field_axioms(x: Scalar, y: Scalar, z: Scalar) -> Result<(), TestCaseError> {
        let field = x.field();
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &Scalar::zero(field), x.clone());
        prop_assert_eq!(&x * &Scalar::one(field), x.clone());
        prop_assert_eq!(&x + &(-&x), Scalar::zero(field));
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.inv().unwrap(), Scalar::one(field));
        }
        Ok(())
    }
}
