//! Certified enclosures of all complex roots of a rational polynomial.
//!
//! Approximations come from an Aberth–Ehrlich iteration in `f64`. Each one
//! is then polished with Newton steps carried out exactly on a dyadic grid
//! `(X + iY) / 2^k` with Gaussian-integer arithmetic, and enclosed in the disk
//! `|ζ − z| ≤ deg · |p(z)| / |p′(z)|`, which always contains a root. When the
//! `deg` disks are pairwise disjoint each holds exactly one root.
//!
//! Real roots are recognised by the Sturm count: that many approximations
//! are snapped onto the real axis, and since a real-centred disk is closed
//! under conjugation its unique root is real.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ratpoly::Poly;
use crate::rootfind::{IntPoly, SturmChain};

/// One root `ζ` with `|ζ − (re + i·im)| ≤ radius`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDisk {
    pub re: BigRational,
    pub im: BigRational,
    pub radius: BigRational,
    pub is_real: bool,
}

impl RootDisk {
    pub fn re_lo(&self) -> BigRational {
        &self.re - &self.radius
    }

    pub fn re_hi(&self) -> BigRational {
        &self.re + &self.radius
    }
}

/// Gaussian integer.
#[derive(Debug, Clone, PartialEq, Eq)]
struct GInt {
    re: BigInt,
    im: BigInt,
}

impl GInt {
    fn mul(&self, o: &GInt) -> GInt {
        GInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn norm_sqr(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }
}

/// Round `num / den` to the nearest integer (`den > 0`).
fn round_div(num: &BigInt, den: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    let shifted = num * &two + den;
    let denom2 = den * &two;
    num_integer::Integer::div_floor(&shifted, &denom2)
}

/// `D^deg · p(Z / D)` for `D = 2^bits`.
fn eval_scaled(coeffs: &[BigInt], z: &GInt, d_pows: &[BigInt]) -> GInt {
    let deg = coeffs.len() - 1;
    let mut acc = GInt {
        re: coeffs[deg].clone(),
        im: BigInt::zero(),
    };
    for j in (0..deg).rev() {
        acc = acc.mul(z);
        acc.re += &coeffs[j] * &d_pows[deg - j];
    }
    acc
}

struct Approx {
    z: GInt,
    real: bool,
}

/// Upper bound on `sqrt(num / den)` on a `2^-bits` grid.
fn sqrt_upper(num: &BigInt, den: &BigInt, bits: u32) -> BigRational {
    let scale = BigInt::one() << (2 * bits as usize);
    let q = num * &scale;
    let mut s = num_integer::Integer::div_ceil(&q, den);
    let mut root = s.sqrt();
    if &root * &root < s {
        root += 1;
    }
    s = BigInt::one() << bits as usize;
    BigRational::new(root, s)
}

fn aberth_f64(coeffs: &[f64]) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    let lead = coeffs[deg];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    // Fujiwara-style radius for the starting circle.
    let radius = (0..deg)
        .map(|k| monic[k].abs().powf(1.0 / (deg - k) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (deg as f64) + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();
    let eval = |x: Complex64| {
        let mut p = Complex64::new(monic[deg], 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for c in monic[..deg].iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    };
    for _ in 0..2000 {
        let mut max_step = 0.0f64;
        for i in 0..deg {
            let (p, dp) = eval(z[i]);
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..deg)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    z
}

/// Certified disks around every root of `p` (multiplicity forbids
/// certification and is reported as an error), each with radius at most
/// `10^(−digits)`.
pub fn enclose_roots(p: &Poly, digits: u32) -> Result<Vec<RootDisk>> {
    let deg = p.degree().ok_or(Error::ZeroPolynomial)?;
    if deg == 0 {
        return Ok(Vec::new());
    }
    let chain = SturmChain::new(p)?;
    if chain.has_repeated_root() {
        return Err(Error::Certification(
            "polynomial has a repeated root".into(),
        ));
    }
    let real_count = chain.count_all();
    let ip = IntPoly::primitive_of(p);
    let coeffs = ip.0.clone();
    let fcoeffs: Vec<f64> = p
        .monic()?
        .coeffs()
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::NAN))
        .collect();
    let mut seeds = aberth_f64(&fcoeffs);
    seeds.sort_by(|a, b| a.im.abs().total_cmp(&b.im.abs()));

    let target = crate::rootfind::tolerance(digits);
    let mut bits = (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + 48;
    for _attempt in 0..6 {
        match certify_at(&coeffs, &seeds, real_count, bits, &target) {
            Ok(disks) => return Ok(disks),
            Err(_) if bits < 4096 => bits *= 2,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Certification("root disks did not separate".into()))
}

fn certify_at(
    coeffs: &[BigInt],
    seeds: &[Complex64],
    real_count: usize,
    bits: u32,
    target: &BigRational,
) -> Result<Vec<RootDisk>> {
    let deg = coeffs.len() - 1;
    let dcoeffs: Vec<BigInt> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigInt::from(k))
        .collect();
    let d = BigInt::one() << bits as usize;
    let mut d_pows = vec![BigInt::one()];
    for _ in 0..deg {
        let next = d_pows.last().unwrap() * &d;
        d_pows.push(next);
    }
    let to_grid = |x: f64| -> BigInt {
        let scaled = BigRational::from_float(x).unwrap_or_else(BigRational::zero)
            * BigRational::from_integer(d.clone());
        scaled.round().to_integer()
    };
    let pair_count = (deg - real_count) / 2;
    let upper: Vec<&Complex64> = seeds[real_count..].iter().filter(|s| s.im > 0.0).collect();
    if upper.len() != pair_count {
        return Err(Error::Certification(
            "approximations are not conjugate-paired".into(),
        ));
    }
    let mut approx: Vec<Approx> = seeds[..real_count]
        .iter()
        .map(|s| Approx {
            z: GInt {
                re: to_grid(s.re),
                im: BigInt::zero(),
            },
            real: true,
        })
        .chain(upper.iter().map(|s| Approx {
            z: GInt {
                re: to_grid(s.re),
                im: to_grid(s.im),
            },
            real: false,
        }))
        .collect();

    let degree = BigInt::from(deg);
    let denom = BigRational::from_integer(d.clone());
    let mut disks = Vec::with_capacity(deg);
    for a in &mut approx {
        let mut iterations = 0;
        let radius = loop {
            let pv = eval_scaled(coeffs, &a.z, &d_pows);
            let dv = eval_scaled(&dcoeffs, &a.z, &d_pows);
            let dn = dv.norm_sqr();
            if dn.is_zero() {
                return Err(Error::Certification(
                    "derivative vanishes at an approximation".into(),
                ));
            }
            // r² = deg² |P|² / (|P'|² D²), with P = D^deg p, P' = D^(deg-1) p'.
            let num = &degree * &degree * pv.norm_sqr();
            let den = &dn * &d * &d;
            let r = sqrt_upper(&num, &den, bits + 8);
            let step = GInt {
                re: round_div(&(&pv.re * &dv.re + &pv.im * &dv.im), &dn),
                im: round_div(&(&pv.im * &dv.re - &pv.re * &dv.im), &dn),
            };
            let stalled = step.re.is_zero() && (a.real || step.im.is_zero());
            if r <= *target || stalled || iterations == 64 {
                break r;
            }
            a.z.re -= step.re;
            if !a.real {
                a.z.im -= step.im;
            }
            iterations += 1;
        };
        if radius > *target {
            return Err(Error::Certification("radius above tolerance".into()));
        }
        let re = BigRational::from_integer(a.z.re.clone()) / &denom;
        let im = BigRational::from_integer(a.z.im.clone()) / &denom;
        if !a.real {
            disks.push(RootDisk {
                re: re.clone(),
                im: -im.clone(),
                radius: radius.clone(),
                is_real: false,
            });
        }
        disks.push(RootDisk {
            re,
            im,
            radius,
            is_real: a.real,
        });
    }
    for i in 0..disks.len() {
        for j in i + 1..disks.len() {
            let dr = &disks[i].re - &disks[j].re;
            let di = &disks[i].im - &disks[j].im;
            let sep = &dr * &dr + &di * &di;
            let rr = &disks[i].radius + &disks[j].radius;
            if sep <= &rr * &rr {
                return Err(Error::Certification(format!("disks {i} and {j} overlap")));
            }
        }
    }
    // Non-real disks must not touch the axis, so each holds a genuinely
    // non-real root and the conjugate pairing is well defined.
    for disk in disks.iter().filter(|d| !d.is_real) {
        if disk.im.abs() <= disk.radius {
            return Err(Error::Certification(
                "complex disk touches the real axis".into(),
            ));
        }
    }
    disks.sort_by(|a, b| b.re.cmp(&a.re).then(b.im.cmp(&a.im)));
    Ok(disks)
}

/// The root of largest real part among those with positive real part.
/// Conjugate pairs are represented by their upper member.
pub fn largest_real_part(disks: &[RootDisk]) -> Result<Option<&RootDisk>> {
    let mut candidates = disks
        .iter()
        .filter(|d| d.re.is_positive() && !d.im.is_negative());
    let Some(best) = candidates.next() else {
        return Ok(None);
    };
    // Every other root, except the mirrored conjugate, must sit strictly
    // to the left.
    for other in disks.iter().filter(|d| !std::ptr::eq(*d, best)) {
        if other.re == best.re && other.im == -&best.im {
            continue;
        }
        if other.re_hi() >= best.re_lo() {
            return Err(Error::Certification(
                "real parts of the two leading roots are not separated".into(),
            ));
        }
    }
    Ok(Some(best))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{int, rat};

    #[test]
    fn encloses_mixed_roots() {
        // (a - 2)(a^2 + 1)
        let p = Poly::from_ints(&[-2, 1, -2, 1]);
        let disks = enclose_roots(&p, 20).unwrap();
        assert_eq!(disks.len(), 3);
        let real: Vec<_> = disks.iter().filter(|d| d.is_real).collect();
        assert_eq!(real.len(), 1);
        assert!((real[0].re.clone() - int(2)).abs() <= real[0].radius);
        let best = largest_real_part(&disks).unwrap().unwrap();
        assert!(best.is_real);
    }

    #[test]
    fn complex_pair_beats_real_root() {
        // (a - 1)((a - 3)^2 + 1/100)
        let q = Poly::new(vec![int(9) + rat(1, 100), int(-6), int(1)]);
        let p = &Poly::from_ints(&[-1, 1]) * &q;
        let disks = enclose_roots(&p, 15).unwrap();
        let best = largest_real_part(&disks).unwrap().unwrap();
        assert!(!best.is_real);
        assert!((best.re.clone() - int(3)).abs() <= best.radius);
        assert!((best.im.clone() - rat(1, 10)).abs() <= best.radius);
    }

    #[test]
    fn repeated_roots_are_rejected() {
        let p = Poly::from_ints(&[1, -2, 1]);
        assert!(matches!(
            enclose_roots(&p, 10),
            Err(Error::Certification(_))
        ));
    }

    #[test]
    fn no_positive_real_part() {
        let p = Poly::from_ints(&[2, 3, 1]);
        let disks = enclose_roots(&p, 10).unwrap();
        assert!(largest_real_part(&disks).unwrap().is_none());
    }
}
