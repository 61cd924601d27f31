use std::fmt;

use super::laurent::poly;
use super::{ArithError, LaurentPoly, Rational};

/// Element of ℚ(q) in canonical form.
///
/// `num / den` with the gcd removed, `den` an ordinary polynomial with nonzero
/// constant term and leading coefficient 1. Monomial denominators never
/// survive normalization: they are absorbed into negative exponents of `num`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    pub fn q() -> Self {
        Self::from_laurent(LaurentPoly::q())
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        RationalFunction { num: p, den: LaurentPoly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_laurent(LaurentPoly::constant(c))
    }

    /// Reduces `num / den` to canonical form.
    pub fn normalize(num: LaurentPoly, den: LaurentPoly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        if den.is_monomial() {
            let c = den.leading_coeff().recip().unwrap();
            return Ok(Self::from_laurent(num.scale(&c).shift(-den.low_exp())));
        }
        let shift = num.low_exp() - den.low_exp();
        let n = poly::from_laurent(&num);
        let d = poly::from_laurent(&den);
        let g = poly::gcd(&n, &d);
        let (n, d) = if g.len() > 1 {
            (poly::div_rem(&n, &g).0, poly::div_rem(&d, &g).0)
        } else {
            (n, d)
        };
        let lc_inv = d.last().unwrap().recip().unwrap();
        let num = LaurentPoly::from_dense(shift, n.iter().map(|c| c * &lc_inv).collect());
        let den = LaurentPoly::from_dense(0, d.iter().map(|c| c * &lc_inv).collect());
        if den.is_one() {
            return Ok(Self::from_laurent(num));
        }
        Ok(RationalFunction { num, den })
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// `Some(c)` when the function is the constant `c`.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_one() && (self.num.is_zero() || (self.num.is_monomial() && self.num.low_exp() == 0)) {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    /// Exact value at `q0`.
    pub fn specialize(&self, q0: &Rational) -> Result<Rational, ArithError> {
        let d = self.den.eval(q0).ok_or_else(|| ArithError::Pole(q0.clone()))?;
        if d.is_zero() {
            return Err(ArithError::Pole(q0.clone()));
        }
        let n = self.num.eval(q0).ok_or_else(|| ArithError::Pole(q0.clone()))?;
        Ok(&n / &d)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_laurent(&self.num + &other.num);
        }
        if self.den == other.den {
            return Self::normalize(&self.num + &other.num, self.den.clone()).unwrap();
        }
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        Self::normalize(num, &self.den * &other.den).unwrap()
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_laurent(&self.num * &other.num);
        }
        Self::normalize(&self.num * &other.num, &self.den * &other.den).unwrap()
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        Self::normalize(self.den.clone(), self.num.clone())
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &LaurentPoly| {
            if p.terms().count() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn lp(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, r(c))))
    }

    #[test]
    fn normalize_cancels_common_factor() {
        // (q^2 - 1)/(q - 1) = q + 1
        let f = RationalFunction::normalize(lp(&[(2, 1), (0, -1)]), lp(&[(1, 1), (0, -1)])).unwrap();
        assert!(f.is_laurent());
        assert_eq!(f.numerator(), &lp(&[(1, 1), (0, 1)]));
    }

    #[test]
    fn normalize_zero_numerator() {
        let f = RationalFunction::normalize(LaurentPoly::zero(), lp(&[(3, 1)])).unwrap();
        assert!(f.is_zero());
        assert!(f.denominator().is_one());
    }

    #[test]
    fn normalize_rejects_zero_denominator() {
        assert_eq!(
            RationalFunction::normalize(lp(&[(0, 1)]), LaurentPoly::zero()),
            Err(ArithError::DivisionByZero)
        );
    }

    #[test]
    fn gap_over_sum_at_two() {
        // (q - q^-1)/(q + q^-1) at q = 2 is (3/2)/(5/2) = 3/5
        let f = RationalFunction::normalize(lp(&[(1, 1), (-1, -1)]), lp(&[(1, 1), (-1, 1)])).unwrap();
        assert_eq!(f.specialize(&r(2)).unwrap(), Rational::new(3, 5));
        assert_eq!(f.denominator(), &lp(&[(2, 1), (0, 1)]));
    }

    #[test]
    fn q_integer_classical_limit() {
        // (q^3 - q^-3)/(q - q^-1) → 3 at q = 1
        let f = RationalFunction::normalize(lp(&[(3, 1), (-3, -1)]), lp(&[(1, 1), (-1, -1)])).unwrap();
        assert!(f.is_laurent());
        assert_eq!(f.specialize(&r(1)).unwrap(), r(3));
    }

    #[test]
    fn pole_is_reported() {
        let f = RationalFunction::normalize(lp(&[(0, 1)]), lp(&[(1, 1), (0, -1)])).unwrap();
        assert_eq!(f.specialize(&r(1)), Err(ArithError::Pole(r(1))));
    }

    #[test]
    fn canonical_form_is_unique_under_common_factors() {
        let a = lp(&[(2, 3), (0, 1)]);
        let b = lp(&[(1, 1), (-1, 2), (-2, 5)]);
        let c = lp(&[(3, -2), (1, 7), (0, 1)]);
        let f = RationalFunction::normalize(a.clone(), b.clone()).unwrap();
        let g = RationalFunction::normalize(&a * &c, &b * &c).unwrap();
        assert_eq!(f, g);
        let h = RationalFunction::normalize(f.numerator().clone(), f.denominator().clone()).unwrap();
        assert_eq!(f, h);
    }
}
