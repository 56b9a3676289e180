//! Certified real-root isolation by Sturm sequences and exact bisection.
//!
//! All sign decisions are made on primitive integer polynomials evaluated
//! exactly at rational points, so every bracket and refined root carries a
//! proof rather than a floating-point estimate.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ratpoly::Poly;

/// Polynomial with integer coefficients, lowest power first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct IntPoly(pub(crate) Vec<BigInt>);

impl IntPoly {
    /// Positive multiple of `p` with coprime integer coefficients.
    pub(crate) fn primitive_of(p: &Poly) -> Self {
        let lcm = p
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = p
            .coeffs()
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        Self::primitive(ints)
    }

    fn primitive(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        let g = c.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if !g.is_zero() && !g.is_one() {
            for x in &mut c {
                *x /= &g;
            }
        }
        IntPoly(c)
    }

    pub(crate) fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn derivative(&self) -> Self {
        Self::primitive(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Sign of `p(x)` for rational `x`, computed as the sign of
    /// `q^deg · p(num/q)` with `q > 0`.
    pub(crate) fn sign_at(&self, x: &BigRational) -> i8 {
        if self.0.is_empty() {
            return 0;
        }
        let (num, den) = (x.numer(), x.denom());
        let mut acc = self.0.last().unwrap().clone();
        let mut den_pow = den.clone();
        for c in self.0.iter().rev().skip(1) {
            acc = acc * num + c * &den_pow;
            den_pow *= den;
        }
        sign_of(&acc)
    }

    /// Sign as `x → +∞` (or `−∞` when `neg_inf`).
    fn sign_at_infinity(&self, neg_inf: bool) -> i8 {
        let lead = sign_of(self.0.last().unwrap());
        if neg_inf && self.degree() % 2 == 1 {
            -lead
        } else {
            lead
        }
    }

    /// Positive multiple of `−rem(self, divisor)`.
    fn neg_rem(&self, divisor: &Self) -> Self {
        let dlead = divisor.0.last().unwrap();
        let ddeg = divisor.degree();
        let mut r = self.0.clone();
        let mut multiplier_sign = 1i8;
        while r.len() > ddeg && !r.is_empty() {
            let top = r.len() - 1;
            let lead = r[top].clone();
            // r <- dlead * r - lead * x^(top-ddeg) * divisor
            for x in r.iter_mut() {
                *x *= dlead;
            }
            let shift = top - ddeg;
            for (j, d) in divisor.0.iter().enumerate() {
                r[shift + j] -= &lead * d;
            }
            if dlead.is_negative() {
                multiplier_sign = -multiplier_sign;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        let flip = multiplier_sign > 0;
        let out: Vec<BigInt> = r.into_iter().map(|x| if flip { -x } else { x }).collect();
        Self::primitive(out)
    }
}

fn sign_of(x: &BigInt) -> i8 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Sturm chain `p, p′, −rem(p, p′), ...` up to the last nonzero remainder.
#[derive(Debug, Clone)]
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &Poly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let p0 = IntPoly::primitive_of(p);
        let mut chain = vec![p0.clone()];
        if p0.degree() == 0 {
            return Ok(Self { chain });
        }
        chain.push(p0.derivative());
        loop {
            let n = chain.len();
            if chain[n - 1].degree() == 0 {
                break;
            }
            let r = chain[n - 2].neg_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r);
        }
        Ok(Self { chain })
    }

    fn variations(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn variations_at(&self, x: &BigRational) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &BigRational, hi: &BigRational) -> Result<usize> {
        for end in [lo, hi] {
            if self.chain[0].sign_at(end) == 0 {
                return Err(Error::EndpointRoot(end.to_string()));
            }
        }
        Ok(self
            .variations_at(lo)
            .saturating_sub(self.variations_at(hi)))
    }

    /// Distinct real roots on the whole line.
    pub fn count_all(&self) -> usize {
        let at = |neg| Self::variations(self.chain.iter().map(|p| p.sign_at_infinity(neg)));
        at(true).saturating_sub(at(false))
    }

    /// True if the polynomial has a repeated root.
    pub fn has_repeated_root(&self) -> bool {
        self.chain.last().is_some_and(|g| g.degree() > 0) && self.chain.len() > 1
    }

    /// Squarefree part `p / gcd(p, p′)` (the chain's last element is the gcd).
    fn squarefree_part(&self, p: &Poly) -> Result<Poly> {
        if !self.has_repeated_root() {
            return Ok(p.clone());
        }
        let gcd = Poly::new(
            self.chain
                .last()
                .unwrap()
                .0
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        );
        Ok(p.div_rem(&gcd)?.0)
    }
}

pub fn sturm_count(p: &Poly, lo: &BigRational, hi: &BigRational) -> Result<usize> {
    SturmChain::new(p)?.count(lo, hi)
}

/// Interval `(lo, hi)` holding exactly one root, with a sign change.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootBracket {
    pub lo: BigRational,
    pub hi: BigRational,
    pub sign_lo: i8,
    pub sign_hi: i8,
}

/// A root known to lie in `[value − half_width, value + half_width]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinedRoot {
    pub value: BigRational,
    pub half_width: BigRational,
    pub requested_digits: u32,
}

impl RefinedRoot {
    pub fn exact(value: BigRational, requested_digits: u32) -> Self {
        Self {
            value,
            half_width: BigRational::zero(),
            requested_digits,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.half_width.is_zero()
    }

    pub fn lo(&self) -> BigRational {
        &self.value - &self.half_width
    }

    pub fn hi(&self) -> BigRational {
        &self.value + &self.half_width
    }
}

/// `10^(−digits)`.
pub fn tolerance(digits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u32).pow(digits))
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// Brackets for every distinct positive real root, in increasing order.
///
/// A root at zero is divided out first. Polynomials with repeated roots are
/// isolated through their squarefree part, so every bracket has a strict
/// sign change of that part.
pub fn isolate_positive_roots(p: &Poly) -> Result<Vec<RootBracket>> {
    let (p, _) = p.strip_zero_root();
    let chain = SturmChain::new(&p)?;
    let sqf = chain.squarefree_part(&p)?;
    let sqf_int = IntPoly::primitive_of(&sqf);
    let lo = BigRational::zero();
    let hi = p.cauchy_bound()?;
    let mut out = Vec::new();
    let mut stack = vec![(lo, hi)];
    while let Some((lo, hi)) = stack.pop() {
        match chain.count(&lo, &hi)? {
            0 => {}
            1 => out.push(RootBracket {
                sign_lo: sqf_int.sign_at(&lo),
                sign_hi: sqf_int.sign_at(&hi),
                lo,
                hi,
            }),
            _ => {
                let mid = split_point(&chain.chain[0], &lo, &hi);
                // Push the upper half first so the lower half pops first.
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}

/// Midpoint of `(lo, hi)`, nudged off any exact root.
fn split_point(p: &IntPoly, lo: &BigRational, hi: &BigRational) -> BigRational {
    let width = hi - lo;
    let mut mid = (lo + hi) * half();
    let mut step = &width / BigRational::from_integer(BigInt::from(1024));
    while p.sign_at(&mid) == 0 {
        mid += &step;
        step *= half();
    }
    mid
}

/// Bisect `b` until its half-width is at most `10^(−digits)`.
///
/// When the bracket closes in on a rational root, the simplest rational in
/// the final bracket is tested and returned exactly if it is the root.
pub fn refine(p: &Poly, b: &RootBracket, digits: u32) -> RefinedRoot {
    let ip = IntPoly::primitive_of(p);
    let tol = tolerance(digits);
    let (mut lo, mut hi) = (b.lo.clone(), b.hi.clone());
    let sign_lo = b.sign_lo;
    if let Some(exact) = exact_root_in(&ip, &lo, &hi) {
        return RefinedRoot::exact(exact, digits);
    }
    while (&hi - &lo) * half() > tol {
        let mid = (&lo + &hi) * half();
        match ip.sign_at(&mid) {
            0 => return RefinedRoot::exact(mid, digits),
            s if s == sign_lo => lo = mid,
            _ => hi = mid,
        }
    }
    if let Some(exact) = exact_root_in(&ip, &lo, &hi) {
        return RefinedRoot::exact(exact, digits);
    }
    RefinedRoot {
        value: (&lo + &hi) * half(),
        half_width: (&hi - &lo) * half(),
        requested_digits: digits,
    }
}

fn exact_root_in(p: &IntPoly, lo: &BigRational, hi: &BigRational) -> Option<BigRational> {
    // Brackets are open: an endpoint root belongs to a neighbouring bracket.
    let q = simplest_rational_between(lo, hi);
    (q > *lo && q < *hi && p.sign_at(&q) == 0).then_some(q)
}

/// Rational with the smallest denominator in `[lo, hi]` (Stern–Brocot
/// descent via continued fractions). Requires `lo ≤ hi`.
pub fn simplest_rational_between(lo: &BigRational, hi: &BigRational) -> BigRational {
    debug_assert!(lo <= hi);
    if lo.is_negative() && hi.is_positive() || lo.is_zero() || hi.is_zero() {
        return BigRational::zero();
    }
    if hi.is_negative() {
        return -simplest_rational_between(&-hi, &-lo);
    }
    let fl = lo.floor();
    if fl == *lo {
        return fl;
    }
    if fl.clone() + BigRational::one() <= *hi {
        return fl + BigRational::one();
    }
    // Both in (fl, fl + 1): recurse on reciprocals of fractional parts.
    let inner = simplest_rational_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

/// Largest positive real root, refined to `digits`.
pub fn largest_positive_root(p: &Poly, digits: u32) -> Result<RefinedRoot> {
    let brackets = isolate_positive_roots(p)?;
    let top = brackets
        .last()
        .ok_or(Error::NoPositiveRoot { n: 0, order: 0 })?;
    Ok(refine(&squarefree_or_self(p)?, top, digits))
}

/// Every positive real root, refined, in increasing order.
pub fn positive_roots(p: &Poly, digits: u32) -> Result<Vec<RefinedRoot>> {
    let brackets = isolate_positive_roots(p)?;
    let sqf = squarefree_or_self(p)?;
    Ok(brackets.iter().map(|b| refine(&sqf, b, digits)).collect())
}

pub(crate) fn squarefree_or_self(p: &Poly) -> Result<Poly> {
    let (p, _) = p.strip_zero_root();
    SturmChain::new(&p)?.squarefree_part(&p)
}

/// Check that `p` changes sign across the certified interval of `root`
/// (or vanishes exactly at an exact root).
pub fn certify(p: &Poly, root: &RefinedRoot) -> bool {
    let sqf = match squarefree_or_self(p) {
        Ok(s) => s,
        Err(_) => return false,
    };
    let ip = IntPoly::primitive_of(&sqf);
    if root.is_exact() {
        return ip.sign_at(&root.value) == 0;
    }
    let (lo, hi) = (ip.sign_at(&root.lo()), ip.sign_at(&root.hi()));
    lo != 0 && hi != 0 && lo != hi
}

/// Compare a refined root against a rational, `None` if the interval
/// straddles it.
pub fn compare_interval(root: &RefinedRoot, x: &BigRational) -> Option<Ordering> {
    if root.hi() < *x {
        Some(Ordering::Less)
    } else if root.lo() > *x {
        Some(Ordering::Greater)
    } else if root.is_exact() {
        Some(Ordering::Equal)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{int, rat};

    fn cubic(c0: BigRational) -> Poly {
        Poly::new(vec![c0, int(-1), int(0), int(1)])
    }

    #[test]
    fn sturm_examples() {
        assert_eq!(
            sturm_count(&cubic(rat(-3, 2)), &int(0), &int(2)).unwrap(),
            1
        );
        assert_eq!(sturm_count(&cubic(int(0)), &rat(1, 2), &int(2)).unwrap(), 1);
        assert_eq!(
            sturm_count(&Poly::from_ints(&[1, 0, 1]), &int(-10), &int(10)).unwrap(),
            0
        );
        assert_eq!(SturmChain::new(&cubic(int(0))).unwrap().count_all(), 3);
    }

    #[test]
    fn endpoint_root_is_an_error() {
        let err = sturm_count(&cubic(int(0)), &int(1), &int(2)).unwrap_err();
        assert!(matches!(err, Error::EndpointRoot(_)));
    }

    #[test]
    fn isolates_integer_root() {
        let p = Poly::from_ints(&[-6, -1, 0, 1]);
        let b = isolate_positive_roots(&p).unwrap();
        assert_eq!(b.len(), 1);
        assert!(b[0].lo < int(2) && int(2) < b[0].hi);
        let r = refine(&p, &b[0], 30);
        assert!(r.is_exact());
        assert_eq!(r.value, int(2));
    }

    #[test]
    fn zero_root_is_skipped() {
        let b = isolate_positive_roots(&cubic(int(0))).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(
            largest_positive_root(&cubic(int(0)), 12).unwrap().value,
            int(1)
        );
    }

    #[test]
    fn two_positive_roots_of_second_order_ground_state() {
        let p = Poly::from_ints(&[5, -18, -22, 0, 17]);
        let b = isolate_positive_roots(&p).unwrap();
        assert_eq!(b.len(), 2);
        let r = largest_positive_root(&p, 8).unwrap();
        assert!((r.value.clone() - rat(138082, 100000)).abs() < rat(1, 100000));
        let small = refine(&p, &b[0], 6);
        assert!((small.value - rat(220557, 1000000)).abs() < rat(1, 1000000));
    }

    #[test]
    fn refine_tables() {
        let r = refine(
            &cubic(rat(-3, 2)),
            &isolate_positive_roots(&cubic(rat(-3, 2))).unwrap()[0],
            6,
        );
        assert!((r.value.clone() - rat(143113, 100000)).abs() < rat(1, 100000));
        assert!(r.half_width <= tolerance(6));
        assert!(certify(&cubic(rat(-3, 2)), &r));

        let p = cubic(rat(-5, 2));
        let r = largest_positive_root(&p, 6).unwrap();
        let e = r.value * int(3);
        assert!((e - rat(480180, 100000)).abs() < rat(1, 100000));
    }

    #[test]
    fn no_positive_root() {
        assert!(matches!(
            largest_positive_root(&Poly::from_ints(&[1, 0, 1]), 6),
            Err(Error::NoPositiveRoot { .. })
        ));
    }

    #[test]
    fn repeated_root_is_isolated_once() {
        // (a - 1)^2 (a - 3)
        let p =
            &(&Poly::from_ints(&[-1, 1]) * &Poly::from_ints(&[-1, 1])) * &Poly::from_ints(&[-3, 1]);
        let roots = positive_roots(&p, 10).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].value, int(1));
        assert_eq!(roots[1].value, int(3));
    }

    #[test]
    fn simplest_rational() {
        assert_eq!(
            simplest_rational_between(&rat(19, 10), &rat(21, 10)),
            int(2)
        );
        assert_eq!(
            simplest_rational_between(&rat(3, 10), &rat(4, 10)),
            rat(1, 3)
        );
        assert_eq!(
            simplest_rational_between(&rat(-4, 10), &rat(-3, 10)),
            rat(-1, 3)
        );
        assert_eq!(simplest_rational_between(&rat(-1, 10), &rat(1, 10)), int(0));
    }
}
