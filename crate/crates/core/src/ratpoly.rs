//! Dense univariate polynomials over exact rationals.
//!
//! Coefficients are stored lowest power first. The zero polynomial is the
//! empty coefficient list; every constructor and operation trims trailing
//! zeros so that a nonzero polynomial always has a nonzero leading term.
//! Scalars are [`BigRational`], which keeps every value in lowest terms with
//! a positive denominator.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `numer / denom` as a reduced rational.
pub fn rat(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Integer as a rational.
pub fn int(value: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(value))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `c * a^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// The indeterminate itself.
    pub fn x() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `a^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Floating-point Horner evaluation, for diagnostics and plotting.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Result<Self> {
        let lead = self.leading().ok_or(Error::ZeroPolynomial)?;
        let inv = lead.recip();
        Ok(self.scale(&inv))
    }

    /// Divide out the largest power of the indeterminate, returning the
    /// quotient and the removed multiplicity of the root at zero.
    pub fn strip_zero_root(&self) -> (Self, usize) {
        let m = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (Self::new(self.coeffs[m..].to_vec()), m)
    }

    /// Substitute `a -> c * a`.
    pub fn rescale_arg(&self, c: &BigRational) -> Self {
        let mut pow = BigRational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for coeff in &self.coeffs {
            out.push(coeff * &pow);
            pow *= c;
        }
        Self::new(out)
    }

    /// Euclidean division; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dlead = divisor.leading().ok_or(Error::ZeroPolynomial)?;
        let ddeg = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= ddeg {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigRational::zero(); rem.len() - ddeg];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + ddeg] / dlead;
            if !q.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &q * d;
                }
            }
            quot[k] = q;
        }
        rem.truncate(ddeg);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// `1 + max|c_k| / |c_lead|`: every complex root is strictly inside.
    pub fn cauchy_bound(&self) -> Result<BigRational> {
        let lead = self.leading().ok_or(Error::ZeroPolynomial)?.abs();
        let max = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigRational::zero);
        Ok(BigRational::one() + max / lead)
    }
}

impl From<BigRational> for Poly {
    fn from(c: BigRational) -> Self {
        Self::constant(c)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (j, q) in rhs.coeffs.iter().enumerate() {
                out[i + j] += p * q;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Poly {
    /// Highest power first, e.g. `1/3*a^2 + -1/3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*a")?,
                _ => write!(f, "{c}*a^{k}")?,
            }
        }
        Ok(())
    }
}

/// Free-function forms of the core operations.
pub fn poly_mul(p: &Poly, q: &Poly) -> Poly {
    p * q
}

pub fn poly_derivative(p: &Poly) -> Poly {
    p.derivative()
}

pub fn poly_eval(p: &Poly, x: &BigRational) -> BigRational {
    p.eval(x)
}

pub fn poly_normalize(p: &Poly) -> Result<Poly> {
    p.monic()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_is_empty() {
        assert!(Poly::from_ints(&[0, 0, 0]).is_zero());
        assert_eq!(Poly::from_ints(&[0]), Poly::zero());
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::from_ints(&[1, 0, 2, 0]).degree(), Some(2));
    }

    #[test]
    fn monomial_square() {
        assert_eq!(
            poly_mul(&Poly::x(), &Poly::x()),
            Poly::from_ints(&[0, 0, 1])
        );
    }

    #[test]
    fn square_of_first_coefficient() {
        let f1 = Poly::new(vec![rat(-1, 3), int(0), rat(1, 3)]);
        let expect = Poly::new(vec![rat(1, 9), int(0), rat(-2, 9), int(0), rat(1, 9)]);
        assert_eq!(&f1 * &f1, expect);
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(
            Poly::from_ints(&[0, 0, 1]).derivative(),
            Poly::from_ints(&[0, 2])
        );
        assert!(Poly::from_ints(&[5]).derivative().is_zero());
        assert_eq!(
            Poly::from_ints(&[0, -1, 0, 1]).derivative(),
            Poly::from_ints(&[-1, 0, 3])
        );
    }

    #[test]
    fn eval_examples() {
        let cubic = Poly::new(vec![rat(-3, 2), int(-1), int(0), int(1)]);
        assert_eq!(cubic.eval(&rat(3, 2)), rat(3, 8));
        let p = Poly::from_ints(&[-6, -1, 0, 1]);
        assert_eq!(p.eval(&int(2)), int(0));
        let q = Poly::from_ints(&[7, 3, 9]);
        assert_eq!(q.eval(&int(0)), int(7));
    }

    #[test]
    fn normalize_examples() {
        // 31a^5 - 50a^3 - 39g a^2 + 19a + 21g with g = 2/7
        let g = rat(2, 7);
        let p = Poly::new(vec![
            int(21) * &g,
            int(19),
            int(-39) * &g,
            int(-50),
            int(0),
            int(31),
        ]);
        let m = poly_normalize(&p).unwrap();
        assert_eq!(m.coeff(5), int(1));
        assert_eq!(m.coeff(3), rat(-50, 31));
        assert_eq!(m.coeff(2), rat(-39, 31) * &g);
        assert_eq!(m.coeff(1), rat(19, 31));
        assert_eq!(m.coeff(0), rat(21, 31) * &g);

        let g = int(1);
        let p = Poly::new(vec![int(5), int(-18) * &g, int(-22), int(0), int(17)]);
        let m = p.monic().unwrap();
        assert_eq!(
            m.coeffs(),
            &[rat(5, 17), rat(-18, 17), rat(-22, 17), int(0), int(1)]
        );

        assert_eq!(Poly::from_ints(&[0, 2]).monic().unwrap(), Poly::x());
        assert_eq!(Poly::zero().monic(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn div_rem_reconstructs() {
        let p = Poly::from_ints(&[-6, -1, 0, 1]);
        let d = Poly::from_ints(&[-2, 1]);
        let (q, r) = p.div_rem(&d).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, Poly::from_ints(&[3, 2, 1]));
    }

    #[test]
    fn display() {
        let f1 = Poly::new(vec![rat(-1, 3), int(0), rat(1, 3)]);
        assert_eq!(f1.to_string(), "1/3*a^2 + -1/3");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn strip_zero_root() {
        let (q, m) = Poly::from_ints(&[0, 0, -1, 1]).strip_zero_root();
        assert_eq!(m, 2);
        assert_eq!(q, Poly::from_ints(&[-1, 1]));
    }
}
