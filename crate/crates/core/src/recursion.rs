//! Perturbation coefficients `f_N(a)` of the superpotential correction
//! `ΔW = Σ f_N x^(2N+1)`, the order-N constraint on the scale parameter `a`,
//! and the Riccati residual diagnostic.
//!
//! With `W` the harmonic superpotential of scale `a` (so `W² − W′ = a²x² − ε`),
//! the perturbation to absorb is `ΔV = (1 − a²)x² + g x⁴`. Matching powers of
//! `x` in `ΔW² + 2WΔW − ΔW′ = ΔV − Δε` gives, for the coefficient of `x^(2m)`,
//!
//! ```text
//! Σ_{k=0}^{m-1} f_k f_{m-1-k} − δ_{m1} − g δ_{m2} − (2m + 2n + α_n) f_m
//! ```
//!
//! with `f_0 = a`. The recursion zeroes these for `m ≤ N`, the constant term
//! forces `Δε = 0`, and the `x^(2N+2)` coefficient is the constraint
//! polynomial whose root fixes `a`. The energy is therefore `E = 2a(n + ½)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::ratpoly::Poly;

/// `α_0 = 1`, `α_n = (n − 1) + α_(n−1)`.
pub fn alpha(n: u32) -> u64 {
    (1..=u64::from(n)).fold(1, |acc, k| acc + (k - 1))
}

/// The first `len` terms of the α sequence.
pub fn alpha_sequence(len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for n in 0..len {
        let next = match out.last() {
            None => 1,
            Some(prev) => (n as u64 - 1) + prev,
        };
        out.push(next);
    }
    out
}

/// Divisor `2N + 2n + α_n` of the order-N coefficient.
pub fn divisor(n: u32, order: usize) -> u64 {
    2 * order as u64 + 2 * u64::from(n) + alpha(n)
}

/// Append-only table `[f_0, f_1, ..., f_Nmax]` for one `(n, g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientTable {
    n: u32,
    g: BigRational,
    coeffs: Vec<Poly>,
}

impl CoefficientTable {
    /// Table holding only `f_0 = a`.
    pub fn new(n: u32, g: BigRational) -> Self {
        Self {
            n,
            g,
            coeffs: vec![Poly::x()],
        }
    }

    pub fn build(n: u32, g: BigRational, max_order: usize) -> Self {
        let mut table = Self::new(n, g);
        table.extend_to(max_order);
        table
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn g(&self) -> &BigRational {
        &self.g
    }

    pub fn max_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// `f_order`; panics if the table has not been extended that far.
    pub fn f(&self, order: usize) -> &Poly {
        &self.coeffs[order]
    }

    pub fn extend_to(&mut self, max_order: usize) {
        for order in self.coeffs.len()..=max_order {
            let mut sum = convolve(&self.coeffs, order - 1);
            if order == 1 {
                sum = &sum - &Poly::constant(BigRational::one());
            }
            if order == 2 {
                sum = &sum - &Poly::constant(self.g.clone());
            }
            let inv = BigRational::new(BigInt::one(), BigInt::from(divisor(self.n, order)));
            self.coeffs.push(sum.scale(&inv));
        }
    }

    /// `P_N(a) = Σ_{k=0}^{N} f_k f_{N−k} − g δ_{N1}`, extending the table
    /// as needed.
    pub fn constraint(&mut self, order: usize) -> Poly {
        self.extend_to(order);
        self.constraint_at(order)
    }

    /// As [`constraint`](Self::constraint) for an already-extended table.
    pub fn constraint_at(&self, order: usize) -> Poly {
        assert!(order >= 1 && order <= self.max_order());
        let sum = convolve(&self.coeffs, order);
        if order == 1 {
            &sum - &Poly::constant(self.g.clone())
        } else {
            sum
        }
    }

    /// `f_1(x), ..., f_order(x)` at an exact point.
    pub fn eval_at(&self, order: usize, a: &BigRational) -> Vec<BigRational> {
        self.coeffs[1..=order].iter().map(|f| f.eval(a)).collect()
    }
}

/// `Σ_{k=0}^{m} f_k f_{m−k}`, folding symmetric pairs.
fn convolve(f: &[Poly], m: usize) -> Poly {
    let mut sum = Poly::zero();
    for k in 0..=m / 2 {
        let prod = &f[k] * &f[m - k];
        sum = if 2 * k == m {
            &sum + &prod
        } else {
            &(&sum + &prod) + &prod
        };
    }
    sum
}

pub fn coefficient_table(n: u32, g: BigRational, max_order: usize) -> CoefficientTable {
    CoefficientTable::build(n, g, max_order)
}

pub fn constraint(n: u32, g: BigRational, order: usize) -> Poly {
    CoefficientTable::build(n, g, order).constraint_at(order)
}

/// Residual `ΔW² + 2WΔW − ΔW′ − ΔV` as a polynomial in `x` whose
/// coefficients are polynomials in `a`; entry `k` is the coefficient of `x^k`.
///
/// Built directly from the superpotentials rather than from the recursion,
/// so the vanishing of low-order entries is a genuine check.
pub fn riccati_residual_symbolic(n: u32, g: &BigRational, order: usize) -> Result<Vec<Poly>> {
    if n > 1 {
        return Err(Error::UnsupportedState(n));
    }
    let table = CoefficientTable::build(n, g.clone(), order);
    let len = 4 * order + 3;
    let mut dw = vec![Poly::zero(); len];
    for k in 1..=order {
        dw[2 * k + 1] = table.f(k).clone();
    }
    let a = Poly::x();
    let two = Poly::constant(BigRational::from_integer(2.into()));
    let mut res = vec![Poly::zero(); len];

    // ΔW²
    for i in 0..len {
        if dw[i].is_zero() {
            continue;
        }
        for j in 0..len - i {
            if !dw[j].is_zero() {
                res[i + j] = &res[i + j] + &(&dw[i] * &dw[j]);
            }
        }
    }
    // 2WΔW with W = a x (− 1/x for n = 1)
    for k in 0..len - 1 {
        if dw[k].is_zero() {
            continue;
        }
        res[k + 1] = &res[k + 1] + &(&(&two * &a) * &dw[k]);
        if n == 1 {
            res[k - 1] = &res[k - 1] - &(&two * &dw[k]);
        }
    }
    // −ΔW′
    for k in 1..len {
        if !dw[k].is_zero() {
            let c = BigRational::from_integer(BigInt::from(k));
            res[k - 1] = &res[k - 1] - &dw[k].scale(&c);
        }
    }
    // −ΔV
    let one = Poly::constant(BigRational::one());
    res[2] = &res[2] - &(&one - &(&a * &a));
    res[4] = &res[4] - &Poly::constant(g.clone());
    Ok(res)
}

/// The residual evaluated at `a = a_star`, as a polynomial in `x`.
pub fn riccati_residual(
    n: u32,
    g: &BigRational,
    order: usize,
    a_star: &BigRational,
) -> Result<Poly> {
    if !a_star.is_positive() {
        return Err(Error::InvalidProblem(format!(
            "a_star must be positive, got {a_star}"
        )));
    }
    let sym = riccati_residual_symbolic(n, g, order)?;
    Ok(Poly::new(sym.iter().map(|c| c.eval(a_star)).collect()))
}

/// True if every entry of the symbolic residual below `x^(2N+2)` is zero.
pub fn residual_low_orders_vanish(residual: &[Poly], order: usize) -> bool {
    residual.iter().take(2 * order + 2).all(Poly::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{int, rat};
    use num_traits::Zero;

    fn is_even_only(p: &Poly) -> bool {
        p.coeffs()
            .iter()
            .enumerate()
            .all(|(k, c)| k % 2 == 0 || c.is_zero())
    }

    #[test]
    fn alpha_values() {
        assert_eq!(alpha(0), 1);
        assert_eq!(alpha(1), 1);
        assert_eq!(alpha(3), 4);
        assert_eq!(divisor(3, 1), 12);
        for (n, a) in alpha_sequence(40).into_iter().enumerate() {
            assert_eq!(a, alpha(n as u32));
            assert_eq!(a, (n as u64) * (n as u64).saturating_sub(1) / 2 + 1);
        }
    }

    #[test]
    fn low_order_reduces_to_ground_and_first_excited_divisor() {
        for n in 0..=1 {
            for order in 1..10 {
                assert_eq!(divisor(n, order), 2 * order as u64 + 2 * u64::from(n) + 1);
            }
        }
    }

    #[test]
    fn first_coefficients() {
        let t = coefficient_table(0, int(1), 3);
        assert_eq!(t.f(0), &Poly::x());
        assert_eq!(t.f(1), &Poly::new(vec![rat(-1, 3), int(0), rat(1, 3)]));
        let t2 = coefficient_table(2, int(5), 1);
        assert_eq!(t2.f(1), &Poly::new(vec![rat(-1, 8), int(0), rat(1, 8)]));
        // f_3 = (17a^4 - 22a^2 - 18a + 5) / 315 at g = 1
        let f3 = Poly::from_ints(&[5, -18, -22, 0, 17]).scale(&rat(1, 315));
        assert_eq!(t.f(3), &f3);
    }

    #[test]
    fn append_only() {
        let mut t = coefficient_table(1, rat(1, 10), 4);
        let before = t.coeffs().to_vec();
        t.extend_to(9);
        assert_eq!(&t.coeffs()[..5], &before[..]);
    }

    #[test]
    fn degree_law() {
        for n in 0..=5 {
            let mut t = coefficient_table(n, rat(3, 7), 24);
            for order in 0..=24 {
                assert_eq!(t.f(order).degree(), Some(order + 1));
            }
            for order in 1..=24 {
                assert_eq!(
                    t.constraint(order).degree(),
                    Some(order + 2),
                    "n={n} N={order}"
                );
            }
        }
    }

    #[test]
    fn constraint_first_order() {
        let g = rat(7, 3);
        let p = constraint(0, g.clone(), 1).monic().unwrap();
        assert_eq!(p.coeffs(), &[-rat(3, 2) * &g, int(-1), int(0), int(1)]);
        let p = constraint(1, g.clone(), 1).monic().unwrap();
        assert_eq!(p.coeffs(), &[-rat(5, 2) * &g, int(-1), int(0), int(1)]);
    }

    #[test]
    fn riccati_rejects_bad_input() {
        assert_eq!(
            riccati_residual_symbolic(2, &int(1), 2),
            Err(Error::UnsupportedState(2))
        );
        assert!(riccati_residual(0, &int(1), 2, &int(0)).is_err());
    }

    #[test]
    fn riccati_unperturbed_is_zero() {
        let r = riccati_residual(0, &int(0), 1, &int(1)).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn riccati_first_order_shape() {
        let g = int(1);
        let sym = riccati_residual_symbolic(0, &g, 1).unwrap();
        assert!(sym[2].is_zero());
        let t = coefficient_table(0, g.clone(), 1);
        assert_eq!(sym[4], constraint(0, g, 1));
        assert_eq!(sym[6], t.f(1) * t.f(1));
        for (k, c) in sym.iter().enumerate() {
            if k % 2 == 1 {
                assert!(c.is_zero());
            }
        }
        let at = riccati_residual(0, &int(1), 1, &rat(143, 100)).unwrap();
        assert!(is_even_only(&at));
        assert_eq!(at.degree(), Some(6));
    }
}
