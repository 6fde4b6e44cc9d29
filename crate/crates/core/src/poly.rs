//! Dense univariate polynomials in `p` over an integer-like coefficient type.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{CheckedAdd, CheckedMul, Num, Signed};

use crate::error::{Error, Result};

/// Coefficient `i` multiplies `p^i`. No trailing zeros; the zero polynomial
/// has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Num + Clone> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `coeff · p^degree`.
    pub fn monomial(coeff: T, degree: usize) -> Self {
        let mut coeffs = vec![T::zero(); degree + 1];
        coeffs[degree] = coeff;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn scale(&self, k: T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    /// Multiplies by `p^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    /// Exact quotient `self / divisor`; errors if the division leaves a
    /// remainder or needs non-integral coefficients.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let d_deg = divisor
            .degree()
            .ok_or_else(|| Error::InvalidArgument("division by the zero polynomial".into()))?;
        let lead = divisor.coeffs[d_deg].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d_deg {
            return if self.is_zero() {
                Ok(Self::zero())
            } else {
                Err(Error::Invariant("polynomial division leaves a remainder".into()))
            };
        }
        let mut quot = vec![T::zero(); rem.len() - d_deg];
        for i in (0..quot.len()).rev() {
            let top = rem[i + d_deg].clone();
            if !(top.clone() % lead.clone()).is_zero() {
                return Err(Error::Invariant("non-integral polynomial quotient".into()));
            }
            let q = top / lead.clone();
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].clone() - q.clone() * dc.clone();
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::Invariant("polynomial division leaves a remainder".into()));
        }
        Ok(Self::new(quot))
    }
}

impl<T: Num + Clone + CheckedAdd + CheckedMul> Polynomial<T> {
    /// Horner evaluation at `p`; `None` on overflow.
    pub fn eval(&self, p: T) -> Option<T> {
        self.coeffs.iter().rev().try_fold(T::zero(), |acc, c| acc.checked_mul(&p)?.checked_add(c))
    }
}

impl<T: Num + Clone> Add for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn add(self, rhs: Self) -> Polynomial<T> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Num + Clone> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn sub(self, rhs: Self) -> Polynomial<T> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Num + Clone> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn mul(self, rhs: Self) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<T: Num + Clone + Neg<Output = T>> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn neg(self) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().cloned().map(Neg::neg).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<T: Num + Clone> $tr for Polynomial<T> {
            type Output = Polynomial<T>;

            fn $method(self, rhs: Self) -> Polynomial<T> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Num + Clone> std::iter::Sum for Polynomial<T> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Polynomial::zero(), |acc, x| &acc + &x)
    }
}

/// Ascending-power text form, e.g. `4+2 p+2 p^2`.
impl<T: Num + Clone + Signed + fmt::Display> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if c.is_negative() {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag} ")?;
                    }
                    if i == 1 {
                        write!(f, "p")?;
                    } else {
                        write!(f, "p^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Parses the ascending text form. Accepts the `p^{10}` brace style and
/// arbitrary whitespace; terms may appear in any order.
impl<T: Num + Clone + FromStr> FromStr for Polynomial<T> {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("cannot parse polynomial {text:?}"));
        let cleaned: String =
            text.chars().filter(|c| !c.is_whitespace() && *c != '{' && *c != '}' && *c != '*').collect();
        if cleaned.is_empty() {
            return Err(bad());
        }
        let mut coeffs: Vec<T> = Vec::new();
        let mut rest = cleaned.as_str();
        while !rest.is_empty() {
            let negative = rest.starts_with('-');
            if rest.starts_with('+') || rest.starts_with('-') {
                rest = &rest[1..];
            }
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let term = &rest[..end];
            rest = &rest[end..];
            let (coeff_text, degree) = match term.find('p') {
                None => (term, 0usize),
                Some(idx) => {
                    let power = &term[idx + 1..];
                    let degree = if power.is_empty() {
                        1
                    } else {
                        power.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?
                    };
                    (&term[..idx], degree)
                }
            };
            let mut coeff = if coeff_text.is_empty() {
                if degree == 0 {
                    return Err(bad());
                }
                T::one()
            } else {
                coeff_text.parse::<T>().map_err(|_| bad())?
            };
            if negative {
                coeff = T::zero() - coeff;
            }
            if coeffs.len() <= degree {
                coeffs.resize(degree + 1, T::zero());
            }
            coeffs[degree] = coeffs[degree].clone() + coeff;
        }
        Ok(Polynomial::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type P = Polynomial<i128>;

    #[test]
    fn examples() {
        let s1: P = "4+2 p+2 p^2".parse().unwrap();
        assert_eq!(s1.eval(2), Some(16));
        assert_eq!(P::zero().eval(7), Some(0));
        let a = P::new(vec![1, 1]);
        let b = P::new(vec![-1, 1]);
        assert_eq!(&a * &b, P::new(vec![-1, 0, 1]));
        assert_eq!((&a * &b).to_string(), "-1+p^2");
        assert_eq!(P::new(vec![0, 0, 0]), P::zero());
        assert_eq!(P::zero().degree(), None);
    }

    #[test]
    fn text_forms() {
        let p: P = "28+ 26 p + 50p^2 +56 p^13".parse().unwrap();
        assert_eq!(p.coeff(13), 56);
        assert_eq!(p.coeff(2), 50);
        let q: P = "31 + 29p + 11p^{20}".parse().unwrap();
        assert_eq!(q.degree(), Some(20));
        assert_eq!(P::new(vec![1, 1, 1]).to_string(), "1+p+p^2");
        assert_eq!(P::zero().to_string(), "0");
        assert!("".parse::<P>().is_err());
        assert!("3 q".parse::<P>().is_err());
    }

    #[test]
    fn overflow_detected() {
        let p = P::monomial(1, 40);
        assert_eq!(p.eval(1i128 << 4), None);
    }

    #[test]
    fn exact_division() {
        let num = P::new(vec![-1, 0, 0, 1]);
        let den = P::new(vec![-1, 1]);
        assert_eq!(num.div_exact(&den).unwrap(), P::new(vec![1, 1, 1]));
        assert!(P::new(vec![1, 0, 1]).div_exact(&den).is_err());
        assert!(num.div_exact(&P::zero()).is_err());
    }

    fn poly() -> impl Strategy<Value = P> {
        prop::collection::vec(-50i128..50, 0..8).prop_map(P::new)
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(a in poly()) {
            let back: P = a.to_string().parse().unwrap();
            prop_assert_eq!(back, a);
        }

        #[test]
        fn ring_ops_commute_with_eval(a in poly(), b in poly(), x in -6i128..6) {
            let (ea, eb) = (a.eval(x).unwrap(), b.eval(x).unwrap());
            prop_assert_eq!((&a + &b).eval(x).unwrap(), ea + eb);
            prop_assert_eq!((&a - &b).eval(x).unwrap(), ea - eb);
            prop_assert_eq!((&a * &b).eval(x).unwrap(), ea * eb);
        }

        #[test]
        fn product_divides_back(a in poly(), lower in prop::collection::vec(-50i128..50, 0..6)) {
            let mut coeffs = lower;
            coeffs.push(1);
            let b = P::new(coeffs);
            prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
        }
    }
}
