//! Chebyshev polynomials and the `psi_n` factors over the integers.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::ff::FieldSpec;
use crate::fpoly::Poly;

/// Dense integer polynomial, constant term first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64s(&[1])
    }

    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        (0..e).fold(IntPoly::one(), |acc, _| &acc * self)
    }

    pub fn compose(&self, inner: &IntPoly) -> IntPoly {
        self.coeffs.iter().rev().fold(IntPoly::zero(), |acc, c| &(&acc * inner) + &IntPoly::new(vec![c.clone()]))
    }

    /// Exact division by a monic divisor; `None` when the remainder is nonzero.
    pub fn div_exact_monic(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let dd = divisor.degree()?;
        assert!(divisor.coeffs[dd].is_one(), "divisor must be monic");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return rem.iter().all(Zero::is_zero).then(IntPoly::zero);
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].clone();
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        rem.iter().all(Zero::is_zero).then(|| IntPoly::new(quot))
    }

    /// Reduction modulo the characteristic of `field`.
    pub fn reduce(&self, field: &FieldSpec) -> Poly {
        let p = BigInt::from(field.p());
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let r = c.mod_floor(&p);
                field.from_u64(r.try_into().expect("reduced below p"))
            })
            .collect();
        Poly::new(field, coeffs)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.coeffs.iter().map(|c| c.to_string().into()).collect())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).cloned().unwrap_or_default()
                        + rhs.coeffs.get(i).cloned().unwrap_or_default()
                })
                .collect(),
        )
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &rhs.scale(&BigInt::from(-1))
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

/// `T_0 = 1`, `T_1 = x`, `T_{n+1} = 2x T_n - T_{n-1}`.
pub fn chebyshev(d: usize) -> IntPoly {
    let two_x = IntPoly::from_i64s(&[0, 2]);
    let (mut prev, mut cur) = (IntPoly::one(), IntPoly::x());
    if d == 0 {
        return prev;
    }
    for _ in 1..d {
        let next = &(&two_x * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// The monic normalization `2 T_d(x/2)`, the unique polynomial with
/// `T~_d(x + 1/x) = x^d + x^(-d)`.
pub fn tilde_chebyshev(d: usize) -> IntPoly {
    let t = chebyshev(d);
    let coeffs = t
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let scaled = c * BigInt::from(2);
            let (quot, rem) = scaled.div_rem(&(BigInt::one() << k));
            debug_assert!(rem.is_zero());
            quot
        })
        .collect();
    IntPoly::new(coeffs)
}

/// `Phi_n`, by dividing `x^n - 1` by `Phi_m` for every proper divisor `m`.
pub fn cyclotomic(n: usize) -> IntPoly {
    assert!(n >= 1);
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[0] = BigInt::from(-1);
    coeffs[n] = BigInt::one();
    let mut out = IntPoly::new(coeffs);
    for m in (1..n).filter(|m| n % m == 0) {
        out = out.div_exact_monic(&cyclotomic(m)).expect("Phi_m divides x^n - 1");
    }
    out
}

/// `psi_1 = x - 2`, `psi_2 = x + 2`, and for `n > 2` the polynomial with
/// `Phi_n(x) = x^(phi(n)/2) psi_n(x + 1/x)`.
pub fn psi(n: usize) -> IntPoly {
    match n {
        0 => panic!("psi is defined for n >= 1"),
        1 => return IntPoly::from_i64s(&[-2, 1]),
        2 => return IntPoly::from_i64s(&[2, 1]),
        _ => {}
    }
    let phi = cyclotomic(n);
    let big_d = phi.degree().expect("nonzero") / 2;
    let mut rem = phi.coeffs().to_vec();
    let mut c = vec![BigInt::zero(); big_d + 1];
    // x^D (x + 1/x)^k = x^(D-k) (x^2 + 1)^k has top term x^(D+k)
    let x2_plus_1 = IntPoly::from_i64s(&[1, 0, 1]);
    for k in (0..=big_d).rev() {
        let ck = rem[big_d + k].clone();
        if !ck.is_zero() {
            let term = x2_plus_1.pow(k as u32);
            for (j, t) in term.coeffs().iter().enumerate() {
                rem[big_d - k + j] -= &ck * t;
            }
        }
        c[k] = ck;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    IntPoly::new(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(chebyshev(2), IntPoly::from_i64s(&[-1, 0, 2]));
        assert_eq!(chebyshev(1), IntPoly::x());
        assert_eq!(chebyshev(0), IntPoly::one());
        assert_eq!(tilde_chebyshev(2), IntPoly::from_i64s(&[-2, 0, 1]));
        assert_eq!(tilde_chebyshev(3), IntPoly::from_i64s(&[0, -3, 0, 1]));
        assert_eq!(psi(3), IntPoly::from_i64s(&[1, 1]));
        assert_eq!(psi(4), IntPoly::x());
        assert_eq!(psi(6), IntPoly::from_i64s(&[-1, 1]));
        assert_eq!(cyclotomic(12), IntPoly::from_i64s(&[1, 0, -1, 0, 1]));
        assert_eq!(chebyshev(3).to_string(), "0,-3,0,4");
    }

    #[test]
    fn tilde_is_monic_and_integral() {
        for d in 1..30 {
            let t = tilde_chebyshev(d);
            assert_eq!(t.degree(), Some(d));
            assert!(t.coeffs()[d].is_one());
            // 2 T_d(x/2) scaled back up recovers T_d
            let back: Vec<BigInt> = t
                .coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| c << k)
                .collect();
            assert_eq!(IntPoly::new(back), chebyshev(d).scale(&BigInt::from(2)));
        }
    }

    #[test]
    fn composition_and_psi_degree() {
        for n in 0..=20 {
            assert_eq!(chebyshev(2).compose(&chebyshev(n)), chebyshev(2 * n));
        }
        for n in 3..40 {
            let phi_n = cyclotomic(n).degree().unwrap();
            assert_eq!(psi(n).degree(), Some(phi_n / 2));
        }
    }
}
