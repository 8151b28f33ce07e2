//! Dense univariate polynomials over the rationals, coefficients stored from
//! the constant term upwards.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Poly = Vec<BigRational>;

pub fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn degree(p: &[BigRational]) -> usize {
    p.len().saturating_sub(1)
}

pub fn eval(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

pub fn derivative(p: &[BigRational]) -> Poly {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(i.into())).collect())
}

fn sub(a: &[BigRational], b: &[BigRational]) -> Poly {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

pub fn divrem(a: &[BigRational], b: &[BigRational]) -> (Poly, Poly) {
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead = b.last().unwrap().clone();
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &c * bc;
        }
        q[shift] = c;
        r.pop();
        r = trim(r);
    }
    (trim(q), r)
}

fn monic(p: Poly) -> Poly {
    match p.last().cloned() {
        Some(l) => p.into_iter().map(|c| c / &l).collect(),
        None => p,
    }
}

pub fn gcd(a: &[BigRational], b: &[BigRational]) -> Poly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let (_, r) = divrem(&a, &b);
        a = b;
        b = r;
    }
    monic(a)
}

/// Yun's square-free decomposition: factors `g_i` with `p = c * Π g_i^i`.
pub fn squarefree(p: &[BigRational]) -> Vec<(Poly, u32)> {
    let p = trim(p.to_vec());
    if degree(&p) == 0 {
        return Vec::new();
    }
    let dp = derivative(&p);
    let a = gcd(&p, &dp);
    let mut b = divrem(&p, &a).0;
    let c = divrem(&dp, &a).0;
    let mut d = sub(&c, &derivative(&b));
    let mut out = Vec::new();
    let mut i = 1;
    while degree(&b) > 0 {
        let a = gcd(&b, &d);
        let nb = divrem(&b, &a).0;
        let c = divrem(&d, &a).0;
        d = sub(&c, &derivative(&nb));
        if degree(&a) > 0 {
            out.push((a, i));
        }
        b = nb;
        i += 1;
    }
    out
}

/// Primitive integer multiple of `p`.
pub fn to_integer(p: &[BigRational]) -> Vec<BigInt> {
    let l = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

fn to_f64(c: &BigRational) -> f64 {
    c.to_f64().unwrap_or(f64::NAN)
}

/// All complex roots by Durand-Kerner iteration; meant for square-free input.
pub fn complex_roots(p: &[BigRational]) -> Vec<Complex64> {
    let p = trim(p.to_vec());
    let n = degree(&p);
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![Complex64::new(to_f64(&(-&p[0] / &p[1])), 0.0)];
    }
    let lead = p[n].clone();
    let a: Vec<Complex64> = p.iter().map(|c| Complex64::new(to_f64(&(c / &lead)), 0.0)).collect();
    let f = |z: Complex64| a.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c);
    let radius = 1.0 + a[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * radius.min(2.0)).collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            let step = f(z[i]) / den;
            z[i] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Bracket of a simple real root of `p` near `approx`, or `None` if no sign
/// change is found nearby.
pub fn bracket(p: &[BigRational], approx: f64) -> Option<(BigRational, BigRational)> {
    let x = BigRational::from_float(approx)?;
    let mut delta = (approx.abs() * 1e-9).max(1e-12);
    while delta < approx.abs().max(1.0) {
        let d = BigRational::from_float(delta)?;
        let (lo, hi) = (&x - &d, &x + &d);
        let (a, b) = (eval(p, &lo), eval(p, &hi));
        if a.is_zero() {
            return Some((lo.clone(), lo));
        }
        if b.is_zero() {
            return Some((hi.clone(), hi));
        }
        if a.signum() != b.signum() {
            return Some((lo, hi));
        }
        delta *= 16.0;
    }
    None
}

/// Halves `[lo, hi]` until `done(lo, hi)` holds or the midpoint is a root.
pub fn bisect(p: &[BigRational], mut lo: BigRational, mut hi: BigRational, done: impl Fn(&BigRational, &BigRational) -> bool) -> (BigRational, BigRational) {
    let two = BigRational::from_integer(2.into());
    let sign_lo = eval(p, &lo).signum();
    while lo != hi && !done(&lo, &hi) {
        let mid = (&lo + &hi) / &two;
        let v = eval(p, &mid);
        if v.is_zero() {
            return (mid.clone(), mid);
        }
        if v.signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}

/// The rational root of `p` inside `[lo, hi]`, if any, by the rational root
/// theorem. `None` also when the leading coefficient is too large to factor.
pub fn rational_root_in(p: &[BigRational], lo: &BigRational, hi: &BigRational) -> Option<BigRational> {
    let ints = to_integer(p);
    let lead = ints.last()?.abs().to_u64().filter(|&l| l <= 1_000_000_000_000)?;
    for q in divisors(lead) {
        let qr = BigRational::from_integer(q.into());
        let from = (lo * &qr).ceil().to_integer();
        let to = (hi * &qr).floor().to_integer();
        let mut num = from;
        while num <= to {
            let r = BigRational::new(num.clone(), q.into());
            if eval(p, &r).is_zero() {
                return Some(r);
            }
            num += 1;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Poly {
        v.iter().map(|&c| BigRational::from_integer(c.into())).collect()
    }

    #[test]
    fn squarefree_splits_repeated_factors() {
        // (1 - t)^2 (1 - 2t)
        let p = q(&[1, -4, 5, -2]);
        let f = squarefree(&p);
        assert_eq!(f.len(), 2);
        assert_eq!(f[0].1, 1);
        assert_eq!(f[1].1, 2);
        assert_eq!(f[1].0, q(&[-1, 1]));
    }

    #[test]
    fn roots_of_quadratic() {
        let p = q(&[-1, -1, 1]);
        let mut r: Vec<f64> = complex_roots(&p).iter().map(|z| z.re).collect();
        r.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((r[1] - 1.618033988749895).abs() < 1e-12);
        let (lo, hi) = bracket(&p, r[1]).unwrap();
        assert!(rational_root_in(&p, &lo, &hi).is_none());
        let half = q(&[-1, 2]);
        let (lo, hi) = bracket(&half, 0.5).unwrap();
        assert_eq!(rational_root_in(&half, &lo, &hi), Some(BigRational::new(1.into(), 2.into())));
    }
}
