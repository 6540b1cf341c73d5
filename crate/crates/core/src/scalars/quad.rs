use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::{format_rational, parse_rational, Field, Rational};
use crate::error::{Error, Result};

/// An element `a + b·√D` of the quadratic field ℚ(√D).
///
/// `D` must be a square-free integer other than 0 and 1; this is checked when
/// values are constructed. Elements of different fields are different types,
/// so mixing fields is a compile error rather than a silent coercion.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadScalar<const D: i64> {
    a: Rational,
    b: Rational,
}

/// ℚ(√3), home of the su(3) hypercomplex computation.
pub type Sqrt3 = QuadScalar<3>;
/// ℚ(i), used for the matrix realisations of compact algebras.
pub type GaussRational = QuadScalar<-1>;

const fn square_free(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    let mut m = if d < 0 { -d } else { d };
    let mut p = 2;
    while p * p <= m {
        if m % (p * p) == 0 {
            return false;
        }
        while m % p == 0 {
            m /= p;
        }
        p += 1;
    }
    true
}

impl<const D: i64> QuadScalar<D> {
    const VALID: () = assert!(square_free(D), "D must be square-free and not 0 or 1");

    pub fn new(a: Rational, b: Rational) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::VALID;
        QuadScalar { a, b }
    }

    pub fn rational(a: Rational) -> Self {
        Self::new(a, Rational::zero())
    }

    /// The generator `√D`.
    pub fn root() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub const fn d() -> i64 {
        D
    }

    pub fn conj(&self) -> Self {
        Self::new(self.a.clone(), -self.b.clone())
    }

    /// Field norm `a² − D·b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(BigInt::from(D)) * &self.b * &self.b
    }

    pub fn to_json(&self) -> Value {
        json!({"a": format_rational(&self.a), "b": format_rational(&self.b), "d": D})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let field = |k: &str| -> Result<&str> {
            v.get(k)
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Schema(format!("/{k}"), "expected rational string".into()))
        };
        let d = v
            .get("d")
            .and_then(Value::as_i64)
            .ok_or_else(|| Error::Schema("/d".into(), "expected integer".into()))?;
        if d != D {
            return Err(Error::FieldMismatch { expected: D, found: d });
        }
        Ok(Self::new(parse_rational(field("a")?)?, parse_rational(field("b")?)?))
    }
}

impl<const D: i64> Zero for QuadScalar<D> {
    fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl<const D: i64> One for QuadScalar<D> {
    fn one() -> Self {
        Self::rational(Rational::one())
    }
}

impl<const D: i64> Add for QuadScalar<D> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl<const D: i64> Sub for QuadScalar<D> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl<const D: i64> Mul for QuadScalar<D> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let d = Rational::from_integer(BigInt::from(D));
        let a = &self.a * &rhs.a + d * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Self::new(a, b)
    }
}

impl<const D: i64> Neg for QuadScalar<D> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

impl<const D: i64> Field for QuadScalar<D> {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // D is not a square, so the norm vanishes only at zero.
        let n = self.norm();
        Some(Self::new(&self.a / &n, -(&self.b / &n)))
    }

    fn from_rational(r: &Rational) -> Self {
        Self::rational(r.clone())
    }

    fn to_rational(&self) -> Option<Rational> {
        self.b.is_zero().then(|| self.a.clone())
    }

    fn signum(&self) -> Option<i8> {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sb == 0 {
            return Some(sa);
        }
        if D < 0 {
            return None;
        }
        if sa == 0 || sa == sb {
            return Some(sb);
        }
        // Opposite signs: compare a² with D·b².
        let lhs = &self.a * &self.a;
        let rhs = Rational::from_integer(BigInt::from(D)) * &self.b * &self.b;
        Some(if lhs > rhs { sa } else { sb })
    }

    fn to_json_value(&self) -> Value {
        self.to_json()
    }

    fn from_json_value(v: &Value) -> Result<Self> {
        Self::from_json(v)
    }

    fn field_tag() -> Value {
        json!({"kind": "quadratic", "d": D})
    }
}

fn sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl<const D: i64> fmt::Display for QuadScalar<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = if D == -1 { "i".to_string() } else { format!("√{D}") };
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", format_rational(&self.a)),
            (true, false) => write!(f, "{}{}", format_rational(&self.b), root),
            (false, false) => {
                let (op, b) = if self.b.is_negative() { ('-', -self.b.clone()) } else { ('+', self.b.clone()) };
                write!(f, "{} {} {}{}", format_rational(&self.a), op, format_rational(&b), root)
            }
        }
    }
}

impl<const D: i64> fmt::Debug for QuadScalar<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadScalar<{D}>({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, rat};
    use proptest::prelude::*;

    fn q3(a: Rational, b: Rational) -> Sqrt3 {
        Sqrt3::new(a, b)
    }

    #[test]
    fn difference_of_squares() {
        let x = q3(int(1), int(1));
        let y = q3(int(1), int(-1));
        assert_eq!(x * y, Sqrt3::from_int(-2));
    }

    #[test]
    fn root_squares_to_d() {
        assert_eq!(Sqrt3::root() * Sqrt3::root(), Sqrt3::from_int(3));
        assert_eq!(GaussRational::root() * GaussRational::root(), GaussRational::from_int(-1));
    }

    #[test]
    fn canonical_form() {
        let x = q3(rat(2, 4), int(0));
        assert_eq!(x.a(), &rat(1, 2));
        assert_eq!(x.to_string(), "1/2");
        assert_eq!(q3(int(1), rat(-1, 2)).to_string(), "1 - 1/2√3");
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(matches!(Sqrt3::one().checked_div(&Sqrt3::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn json_round_trip_and_field_check() {
        let x = q3(rat(-3, 7), rat(5, 2));
        let v = x.to_json();
        assert_eq!(v, json!({"a": "-3/7", "b": "5/2", "d": 3}));
        assert_eq!(Sqrt3::from_json(&v).unwrap(), x);
        let err = GaussRational::from_json(&v).unwrap_err();
        assert!(matches!(err, Error::FieldMismatch { expected: -1, found: 3 }));
    }

    #[test]
    fn signs_under_real_embedding() {
        assert_eq!(q3(int(2), int(-1)).signum(), Some(1)); // 2 - 1.732
        assert_eq!(q3(int(1), int(-1)).signum(), Some(-1));
        assert_eq!(q3(int(-2), int(1)).signum(), Some(-1));
        assert_eq!(q3(int(0), rat(1, 3)).signum(), Some(1));
        assert_eq!(GaussRational::root().signum(), None);
    }

    fn small() -> impl Strategy<Value = Rational> {
        (-30i64..30, 1i64..12).prop_map(|(p, q)| rat(p, q))
    }

    fn quad() -> impl Strategy<Value = Sqrt3> {
        (small(), small()).prop_map(|(a, b)| Sqrt3::new(a, b))
    }

    proptest! {
        #[test]
        fn field_axioms(x in quad(), y in quad(), z in quad()) {
            prop_assert_eq!((x.clone() + y.clone()) + z.clone(), x.clone() + (y.clone() + z.clone()));
            prop_assert_eq!(x.clone() * (y.clone() + z.clone()), x.clone() * y.clone() + x.clone() * z.clone());
            prop_assert_eq!((x.clone() * y.clone()) * z.clone(), x.clone() * (y.clone() * z.clone()));
            if !x.is_zero() {
                prop_assert_eq!(x.clone() * x.inv().unwrap(), Sqrt3::one());
            }
        }

        #[test]
        fn rational_embedding_is_a_ring_map(a in small(), b in small()) {
            let ea = Sqrt3::from_rational(&a);
            let eb = Sqrt3::from_rational(&b);
            prop_assert_eq!(Sqrt3::from_rational(&(&a + &b)), ea.clone() + eb.clone());
            prop_assert_eq!(Sqrt3::from_rational(&(&a * &b)), ea * eb);
        }

        #[test]
        fn signum_matches_float(x in quad()) {
            let approx = rat_to_f64(x.a()) + rat_to_f64(x.b()) * 3f64.sqrt();
            if approx.abs() > 1e-9 {
                prop_assert_eq!(x.signum().unwrap(), if approx > 0.0 { 1 } else { -1 });
            }
        }
    }

    fn rat_to_f64(r: &Rational) -> f64 {
        r.numer().to_string().parse::<f64>().unwrap() / r.denom().to_string().parse::<f64>().unwrap()
    }
}
