use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use super::{ArithError, LaurentPoly, Rational, RationalFunction};

/// The coefficient field of every computation.
///
/// Pure rationals are mode-neutral and combine with either mode. Values that
/// depend on `q` are either exact elements of ℚ(q) or their value at a fixed
/// rational point `q0`; mixing the two, or two different points, is an error.
#[derive(Clone)]
pub enum Scalar {
    Num(Rational),
    /// A non-constant element of ℚ(q).
    Exact(RationalFunction),
    Special { value: Rational, at: Arc<Rational> },
}

/// Which arithmetic a computation runs in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum QMode {
    Exact,
    Specialized { q0: Arc<Rational>, generic: bool },
}

impl QMode {
    pub fn exact() -> Self {
        QMode::Exact
    }

    /// Specialization at a generic rational point. Rational roots of unity are
    /// exactly `±1`, so these and `0` are the only rejected points.
    pub fn specialized(q0: Rational) -> Result<Self, ArithError> {
        if q0.is_zero() || q0.abs().is_one() {
            return Err(ArithError::RootOfUnity(q0));
        }
        Ok(QMode::Specialized { q0: Arc::new(q0), generic: true })
    }

    /// `q0 = 1`, where a Hecke symmetry degenerates to an involutive one.
    pub fn classical() -> Self {
        QMode::Specialized { q0: Arc::new(Rational::ONE), generic: false }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, QMode::Exact)
    }

    /// False only at the classical point, where `q - q^-1` vanishes.
    pub fn is_generic(&self) -> bool {
        match self {
            QMode::Exact => true,
            QMode::Specialized { generic, .. } => *generic,
        }
    }

    pub fn point(&self) -> Option<&Rational> {
        match self {
            QMode::Exact => None,
            QMode::Specialized { q0, .. } => Some(q0),
        }
    }

    pub fn q(&self) -> Scalar {
        self.q_pow(1)
    }

    /// `q^k` in this mode.
    pub fn q_pow(&self, k: i32) -> Scalar {
        match self {
            QMode::Exact => Scalar::from_laurent(LaurentPoly::monomial(Rational::ONE, k)),
            QMode::Specialized { q0, .. } => Scalar::Special { value: q0.pow(k), at: q0.clone() },
        }
    }

    /// `q - q^-1`
    pub fn gap(&self) -> Scalar {
        &self.q_pow(1) - &self.q_pow(-1)
    }

    /// Embeds an exact Laurent polynomial into this mode.
    pub fn laurent(&self, p: &LaurentPoly) -> Scalar {
        match self {
            QMode::Exact => Scalar::from_laurent(p.clone()),
            QMode::Specialized { q0, .. } => Scalar::Special {
                value: p.eval(q0).expect("q0 is nonzero"),
                at: q0.clone(),
            },
        }
    }

    pub fn label(&self) -> String {
        match self {
            QMode::Exact => "exact".to_string(),
            QMode::Specialized { q0, .. } => format!("q0={q0}"),
        }
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Num(Rational::ZERO)
    }

    pub fn one() -> Self {
        Scalar::Num(Rational::ONE)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Num(Rational::from_int(n))
    }

    pub fn from_rational(r: Rational) -> Self {
        Scalar::Num(r)
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        Self::from_rf(RationalFunction::from_laurent(p))
    }

    /// Canonical constructor: constant functions become `Num`.
    pub fn from_rf(f: RationalFunction) -> Self {
        match f.as_constant() {
            Some(c) => Scalar::Num(c),
            None => Scalar::Exact(f),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Num(r) => r.is_zero(),
            Scalar::Exact(_) => false,
            Scalar::Special { value, .. } => value.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Num(r) => r.is_one(),
            Scalar::Exact(_) => false,
            Scalar::Special { value, .. } => value.is_one(),
        }
    }

    /// The value as an exact element of ℚ(q), if it is not specialized.
    pub fn as_rf(&self) -> Option<RationalFunction> {
        match self {
            Scalar::Num(r) => Some(RationalFunction::constant(r.clone())),
            Scalar::Exact(f) => Some(f.clone()),
            Scalar::Special { .. } => None,
        }
    }

    /// The rational value, for `Num` and specialized scalars.
    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Num(r) => Some(r),
            Scalar::Exact(_) => None,
            Scalar::Special { value, .. } => Some(value),
        }
    }

    /// Evaluates an exact scalar at `q0`; specialized scalars must already sit at `q0`.
    pub fn specialize(&self, q0: &Rational) -> Result<Scalar, ArithError> {
        match self {
            Scalar::Num(_) => Ok(self.clone()),
            Scalar::Exact(f) => Ok(Scalar::Num(f.specialize(q0)?)),
            Scalar::Special { value, at } => {
                if **at == *q0 {
                    Ok(Scalar::Num(value.clone()))
                } else {
                    Err(ArithError::ModeMismatch)
                }
            }
        }
    }

    fn binop(
        &self,
        other: &Scalar,
        rat: impl Fn(&Rational, &Rational) -> Rational,
        rf: impl Fn(&RationalFunction, &RationalFunction) -> RationalFunction,
    ) -> Result<Scalar, ArithError> {
        use Scalar::*;
        Ok(match (self, other) {
            (Num(a), Num(b)) => Num(rat(a, b)),
            (Special { value: a, at }, Num(b)) => Special { value: rat(a, b), at: at.clone() },
            (Num(a), Special { value: b, at }) => Special { value: rat(a, b), at: at.clone() },
            (Special { value: a, at: p }, Special { value: b, at: r }) => {
                if !Arc::ptr_eq(p, r) && p != r {
                    return Err(ArithError::ModeMismatch);
                }
                Special { value: rat(a, b), at: p.clone() }
            }
            (Exact(f), Num(b)) => Scalar::from_rf(rf(f, &RationalFunction::constant(b.clone()))),
            (Num(a), Exact(g)) => Scalar::from_rf(rf(&RationalFunction::constant(a.clone()), g)),
            (Exact(f), Exact(g)) => Scalar::from_rf(rf(f, g)),
            _ => return Err(ArithError::ModeMismatch),
        })
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, ArithError> {
        if other.is_zero() && !matches!(other, Scalar::Special { .. }) {
            return Ok(self.clone());
        }
        if self.is_zero() && !matches!(self, Scalar::Special { .. }) {
            return Ok(other.clone());
        }
        self.binop(other, |a, b| a + b, |f, g| f.add(g))
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, ArithError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, ArithError> {
        if let Scalar::Num(r) = other {
            if r.is_one() {
                return Ok(self.clone());
            }
        }
        if let Scalar::Num(r) = self {
            if r.is_one() {
                return Ok(other.clone());
            }
        }
        self.binop(other, |a, b| a * b, |f, g| f.mul(g))
    }

    pub fn inv(&self) -> Result<Scalar, ArithError> {
        match self {
            Scalar::Num(r) => r.recip().map(Scalar::Num).ok_or(ArithError::DivisionByZero),
            Scalar::Exact(f) => Ok(Scalar::from_rf(f.inv()?)),
            Scalar::Special { value, at } => value
                .recip()
                .map(|v| Scalar::Special { value: v, at: at.clone() })
                .ok_or(ArithError::DivisionByZero),
        }
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, ArithError> {
        self.try_mul(&other.inv()?)
    }

    pub fn pow(&self, e: i32) -> Scalar {
        let base = if e < 0 { self.inv().expect("zero to a negative power") } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        use Scalar::*;
        match (self, other) {
            (Num(a), Num(b)) => a == b,
            (Exact(f), Exact(g)) => f == g,
            (Special { value: a, at: p }, Special { value: b, at: r }) => a == b && p == r,
            (Num(a), Special { value: b, .. }) | (Special { value: b, .. }, Num(a)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.try_add(rhs).expect("scalar arithmetic across q-modes")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.try_sub(rhs).expect("scalar arithmetic across q-modes")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.try_mul(rhs).expect("scalar arithmetic across q-modes")
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

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Num(r) => Scalar::Num(-r),
            Scalar::Exact(f) => Scalar::Exact(f.neg()),
            Scalar::Special { value, at } => Scalar::Special { value: -value, at: at.clone() },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Num(r)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Num(r) => write!(f, "{r}"),
            Scalar::Exact(rf) => write!(f, "{rf}"),
            Scalar::Special { value, .. } => write!(f, "{value}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Special { value, at } => write!(f, "{value}@q={at}"),
            _ => fmt::Display::fmt(self, f),
        }
    }
}
