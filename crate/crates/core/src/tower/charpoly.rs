//! Characteristic polynomials and their unit part.
//!
//! For an injective endomorphism `A` of `Z^r`, the subgroup `⋂ A^k Z^r` has
//! rank equal to the degree of the largest monic divisor `g` of `χ_A` with
//! `g(0) = ±1` (the product of the irreducible factors whose roots are
//! algebraic units). Candidate divisors are proposed from numerically
//! computed roots and accepted only after exact integer division.

use itertools::Itertools;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::abelian::IntegerMatrix;

/// Largest degree for which the unit part is searched.
pub const MAX_UNIT_SEARCH_DEGREE: usize = 18;

/// Coefficients of `det(xI - A)`, constant term first.
pub fn characteristic_polynomial(a: &IntegerMatrix) -> Vec<BigInt> {
    assert!(a.is_square(), "characteristic polynomial of a non-square matrix");
    let n = a.rows();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = IntegerMatrix::zeros(n, n);
    for k in 1..=n {
        // Faddeev–LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = a.mul(&m);
        for i in 0..n {
            next[(i, i)] += &coeffs[n - k + 1];
        }
        let am = a.mul(&next);
        let trace: BigInt = (0..n).map(|i| am[(i, i)].clone()).sum();
        let (q, r) = trace.div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero(), "trace divisible by k for integer matrices");
        coeffs[n - k] = -q;
        m = next;
    }
    coeffs
}

/// Remainder of `p` modulo the monic polynomial `g` (both constant term first).
fn rem_monic(p: &[BigInt], g: &[BigInt]) -> Vec<BigInt> {
    let mut r = p.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = r.pop().expect("nonempty");
        if lead.is_zero() {
            continue;
        }
        let shift = r.len() - dg;
        for (i, gi) in g.iter().take(dg).enumerate() {
            r[shift + i] -= &lead * gi;
        }
    }
    r
}

fn roots(p: &[BigInt]) -> Vec<Complex64> {
    let n = p.len() - 1;
    let c: Vec<f64> = p.iter().map(|x| x.to_f64().unwrap_or(f64::MAX)).collect();
    let eval = |z: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|i| seed.powu(i as u32 + 1)).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let denom = (0..n)
                .filter(|&j| j != i)
                .fold(Complex64::new(1.0, 0.0), |acc, j| acc * (z[i] - z[j]));
            if denom.norm() == 0.0 {
                z[i] += Complex64::new(1e-9, 1e-9);
                continue;
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-14 {
            break;
        }
    }
    z
}

fn candidate_from_roots(roots: &[Complex64]) -> Option<Vec<BigInt>> {
    let mut poly = vec![Complex64::new(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); poly.len() + 1];
        for (i, &c) in poly.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * r;
        }
        poly = next;
    }
    poly.iter()
        .map(|c| {
            let re = c.re.round();
            ((c.re - re).abs() < 0.25 && c.im.abs() < 0.25 && re.is_finite())
                .then(|| BigInt::from(re as i128))
        })
        .collect()
}

/// Degree of the unit part of a monic integer polynomial. `None` when the
/// degree exceeds [`MAX_UNIT_SEARCH_DEGREE`].
pub fn unit_part_degree(p: &[BigInt]) -> Option<usize> {
    // factors of x are never units
    let zeros = p.iter().take_while(|c| c.is_zero()).count();
    let p = &p[zeros..];
    let deg = p.len() - 1;
    if deg == 0 || p[0].abs().is_one() {
        return Some(deg);
    }
    if deg > MAX_UNIT_SEARCH_DEGREE {
        return None;
    }
    let rs = roots(p);
    for size in (1..deg).rev() {
        for subset in (0..deg).combinations(size) {
            let chosen: Vec<Complex64> = subset.iter().map(|&i| rs[i]).collect();
            let Some(g) = candidate_from_roots(&chosen) else {
                continue;
            };
            if !g[0].abs().is_one() {
                continue;
            }
            if rem_monic(p, &g).iter().all(Zero::is_zero) {
                return Some(size);
            }
        }
    }
    Some(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn charpoly_of_small_matrices() {
        let a = IntegerMatrix::from_rows(2, &[[1, 2], [3, 4]]);
        // x^2 - 5x - 2
        assert_eq!(characteristic_polynomial(&a), ints(&[-2, -5, 1]));
        let id = IntegerMatrix::identity(3);
        assert_eq!(characteristic_polynomial(&id), ints(&[-1, 3, -3, 1]));
    }

    #[test]
    fn unit_parts() {
        // x - 2: no unit roots
        assert_eq!(unit_part_degree(&ints(&[-2, 1])), Some(0));
        // (x - 1)(x - 2)
        assert_eq!(unit_part_degree(&ints(&[2, -3, 1])), Some(1));
        // x^2 - 2 is irreducible with non-unit roots
        assert_eq!(unit_part_degree(&ints(&[-2, 0, 1])), Some(0));
        // x^2 + x + 2 has a root 0 mod 2 and one that is not; still no unit roots
        assert_eq!(unit_part_degree(&ints(&[2, 1, 1])), Some(0));
        // (x^2 - 3x + 1)(x - 3): golden-ratio-like units
        assert_eq!(unit_part_degree(&ints(&[-3, 10, -6, 1])), Some(2));
        // (x - 1)^2 (x - 2)
        assert_eq!(unit_part_degree(&ints(&[-2, 5, -4, 1])), Some(2));
    }
}
