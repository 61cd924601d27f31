use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Rational;

/// Laurent polynomial in `q` with rational coefficients.
///
/// Stored densely from the lowest exponent: `Σ coeffs[i] q^(low + i)`.
/// The first and last coefficients are nonzero; the zero polynomial has no
/// coefficients and `low == 0`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i32,
    coeffs: Vec<Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::ONE)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c · q^exp`
    pub fn monomial(c: Rational, exp: i32) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: exp, coeffs: vec![c] }
    }

    /// `q`
    pub fn q() -> Self {
        Self::monomial(Rational::ONE, 1)
    }

    /// Builds from an exponent → coefficient list; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i32, Rational)>>(terms: I) -> Self {
        let terms: Vec<(i32, Rational)> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let low = terms.iter().map(|t| t.0).min().unwrap();
        let high = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![Rational::ZERO; (high - low + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - low) as usize] += &c;
        }
        Self::from_dense(low, coeffs)
    }

    pub(crate) fn from_dense(low: i32, mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead_zeros);
        LaurentPoly { low: low + lead_zeros as i32, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Single term `c q^k`.
    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn low_exp(&self) -> i32 {
        self.low
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn high_exp(&self) -> i32 {
        self.low + self.coeffs.len() as i32 - 1
    }

    /// Coefficient of the highest power.
    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or(Rational::ZERO)
    }

    pub fn coeff(&self, exp: i32) -> Rational {
        let idx = exp - self.low;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            Rational::ZERO
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// `(exponent, coefficient)` pairs with nonzero coefficient, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i32, c))
    }

    pub(crate) fn dense_coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() || self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Exact evaluation; `None` if `q0 = 0` and a negative power is present.
    pub fn eval(&self, q0: &Rational) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::ZERO);
        }
        if q0.is_zero() {
            if self.low < 0 {
                return None;
            }
            return Some(self.coeff(0));
        }
        // Horner on the dense part, then multiply by q0^low.
        let mut acc = Rational::ZERO;
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q0) + c;
        }
        Some(&acc * &q0.pow(self.low))
    }

    /// Substitutes `q → q^-1`.
    pub fn invert_variable(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let coeffs: Vec<Rational> = self.coeffs.iter().rev().cloned().collect();
        LaurentPoly { low: -self.high_exp(), coeffs }
    }

    fn add_impl(&self, other: &Self, negate_other: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate_other { -other } else { other.clone() };
        }
        let low = self.low.min(other.low);
        let high = self.high_exp().max(other.high_exp());
        let mut coeffs = vec![Rational::ZERO; (high - low + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + i] = c.clone();
        }
        let off = (other.low - low) as usize;
        for (i, c) in other.coeffs.iter().enumerate() {
            if negate_other {
                coeffs[off + i] -= c;
            } else {
                coeffs[off + i] += c;
            }
        }
        Self::from_dense(low, coeffs)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.is_monomial() {
            return self.scale(&other.coeffs[0]).shift(other.low);
        }
        if self.is_monomial() {
            return other.scale(&self.coeffs[0]).shift(self.low);
        }
        let mut coeffs = vec![Rational::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += &(a * b);
                }
            }
        }
        Self::from_dense(self.low + other.low, coeffs)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Polynomial division of `self` by `divisor` treating both as ordinary
    /// polynomials after shifting out their lowest powers. Returns the Laurent
    /// quotient when the division is exact.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let a = poly::from_laurent(self);
        let b = poly::from_laurent(divisor);
        let (quo, rem) = poly::div_rem(&a, &b);
        if !rem.iter().all(|c| c.is_zero()) {
            return None;
        }
        Some(Self::from_dense(self.low - divisor.low, quo))
    }
}

/// Ordinary dense univariate polynomial helpers (index = exponent).
pub(crate) mod poly {
    use super::{LaurentPoly, Rational};

    pub fn from_laurent(p: &LaurentPoly) -> Vec<Rational> {
        p.dense_coeffs().to_vec()
    }

    fn trim(v: &mut Vec<Rational>) {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    }

    pub fn div_rem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut rem = a.to_vec();
        trim(&mut rem);
        let mut b = b.to_vec();
        trim(&mut b);
        assert!(!b.is_empty());
        if rem.len() < b.len() {
            return (vec![], rem);
        }
        let lc_inv = b.last().unwrap().recip().unwrap();
        let mut quo = vec![Rational::ZERO; rem.len() - b.len() + 1];
        while rem.len() >= b.len() && !rem.is_empty() {
            let shift = rem.len() - b.len();
            let factor = rem.last().unwrap() * &lc_inv;
            for (i, c) in b.iter().enumerate() {
                if !c.is_zero() {
                    rem[shift + i] -= &(&factor * c);
                }
            }
            quo[shift] = factor;
            rem.pop();
            trim(&mut rem);
        }
        (quo, rem)
    }

    /// Monic gcd of two ordinary polynomials (not both zero).
    pub fn gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let (_, r) = div_rem(&x, &y);
            x = y;
            y = r;
            // Keep coefficients small: make the running remainder monic.
            if let Some(lc) = y.last().cloned() {
                let inv = lc.recip().unwrap();
                for c in y.iter_mut() {
                    *c = &*c * &inv;
                }
            }
        }
        let lc_inv = x.last().expect("gcd of two zero polynomials").recip().unwrap();
        x.iter().map(|c| c * &lc_inv).collect()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.add_impl(rhs, false)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.add_impl(rhs, true)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.mul_impl(rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || e == 0;
            if show_coeff {
                if mag.is_integer() || e == 0 {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
                if e != 0 {
                    write!(f, "*")?;
                }
            }
            match e {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
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

    #[test]
    fn arithmetic_and_display() {
        let q = LaurentPoly::q();
        let qi = LaurentPoly::monomial(r(1), -1);
        let gap = &q - &qi;
        assert_eq!(gap.to_string(), "q - q^-1");
        let sq = &gap * &gap;
        assert_eq!(sq, LaurentPoly::from_terms([(2, r(1)), (0, r(-2)), (-2, r(1))]));
        assert!((&gap - &gap).is_zero());
    }

    #[test]
    fn exact_division() {
        // (q^2 - 1) / (q - 1) = q + 1
        let a = LaurentPoly::from_terms([(2, r(1)), (0, r(-1))]);
        let b = LaurentPoly::from_terms([(1, r(1)), (0, r(-1))]);
        assert_eq!(a.exact_div(&b).unwrap(), LaurentPoly::from_terms([(1, r(1)), (0, r(1))]));
        assert!(b.exact_div(&a).is_none());
        // Laurent shift is carried through: (q - q^-1)/(q^-1) = q^2 - 1
        let gap = LaurentPoly::from_terms([(1, r(1)), (-1, r(-1))]);
        let qi = LaurentPoly::monomial(r(1), -1);
        assert_eq!(gap.exact_div(&qi).unwrap(), LaurentPoly::from_terms([(2, r(1)), (0, r(-1))]));
    }

    #[test]
    fn evaluation_handles_negative_powers() {
        let p = LaurentPoly::from_terms([(1, r(1)), (-1, r(1))]);
        assert_eq!(p.eval(&r(2)).unwrap(), Rational::new(5, 2));
        assert!(p.eval(&r(0)).is_none());
    }

    #[test]
    fn gcd_is_monic() {
        let a = poly::from_laurent(&LaurentPoly::from_terms([(2, r(2)), (0, r(-2))]));
        let b = poly::from_laurent(&LaurentPoly::from_terms([(1, r(3)), (0, r(3))]));
        assert_eq!(poly::gcd(&a, &b), vec![r(1), r(1)]);
    }
}
