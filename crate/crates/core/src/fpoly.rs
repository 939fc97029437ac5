//! Dense univariate polynomials over a [`FieldSpec`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ff::{FieldElement, FieldSpec};

/// Default cap on the degree of materialized iterates.
pub const DEFAULT_DEGREE_BUDGET: u64 = 4096;

/// Coefficients are stored constant term first with no trailing zeros, so
/// the zero polynomial has an empty coefficient list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<FieldElement>,
}

/// Degree first, then the coefficient vector (constant term first) in
/// enumeration order.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .id()
            .cmp(&other.field.id())
            .then(self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Poly {
    pub fn new(field: &FieldSpec, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &FieldSpec) -> Self {
        Poly::new(field, Vec::new())
    }

    pub fn one(field: &FieldSpec) -> Self {
        Poly::constant(field, field.one())
    }

    /// The identity map `x`.
    pub fn x(field: &FieldSpec) -> Self {
        Poly::new(field, vec![field.zero(), field.one()])
    }

    pub fn constant(field: &FieldSpec, c: FieldElement) -> Self {
        Poly::new(field, vec![c])
    }

    pub fn monomial(field: &FieldSpec, c: FieldElement, degree: usize) -> Self {
        let mut coeffs = vec![field.zero(); degree + 1];
        coeffs[degree] = c;
        Poly::new(field, coeffs)
    }

    /// `x - a`
    pub fn linear(field: &FieldSpec, a: FieldElement) -> Self {
        Poly::new(field, vec![field.neg(a), field.one()])
    }

    pub fn from_ints(field: &FieldSpec, coeffs: &[i64]) -> Self {
        Poly::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    /// Parses the comma-separated, constant-first text form, e.g. `1,0,1`.
    pub fn parse(field: &FieldSpec, text: &str) -> Result<Self> {
        let coeffs = text
            .split(',')
            .map(|tok| field.parse_element(tok))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(field, coeffs))
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or_else(|| self.field.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == self.field.one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn leading(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == self.field.one()
    }

    fn same_field(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    fn assert_same_field(&self, other: &Poly) {
        assert!(self.field == other.field, "polynomials over different fields");
    }

    pub fn scale(&self, c: FieldElement) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    fn add_poly(&self, other: &Poly) -> Poly {
        self.assert_same_field(other);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Poly::new(f, coeffs)
    }

    fn neg_poly(&self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.neg(a)).collect())
    }

    fn mul_poly(&self, other: &Poly) -> Poly {
        self.assert_same_field(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }

    /// Quotient and remainder with `deg(rem) < deg(divisor)`.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.same_field(divisor)?;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let inv_lead = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![f.zero(); rem.len() - dd];
        for shift in (0..quot.len()).rev() {
            let c = f.mul(rem[shift + dd], inv_lead);
            if c.is_zero() {
                continue;
            }
            quot[shift] = c;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] = f.sub(rem[shift + j], f.mul(c, b));
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.divmod(divisor).expect("nonzero divisor").1
    }

    /// Exact division; panics in debug builds if `divisor` does not divide.
    pub fn exact_div(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.divmod(divisor).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    pub fn evaluate(&self, a: FieldElement) -> FieldElement {
        let f = &self.field;
        self.coeffs.iter().rev().fold(f.zero(), |acc, &c| f.add(f.mul(acc, a), c))
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &Poly) -> Poly {
        self.assert_same_field(inner);
        let mut acc = Poly::zero(&self.field);
        for &c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Poly::constant(&self.field, c);
        }
        acc
    }

    /// The `n`-fold self-composition, `f^0 = x`.
    pub fn iterate(&self, n: u32, budget: u64) -> Result<Poly> {
        check_budget(self.degree().unwrap_or(0), n, budget)?;
        let mut acc = Poly::x(&self.field);
        for _ in 0..n {
            acc = self.compose(&acc);
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(f.from_u64(i as u64), c))
            .collect();
        Poly::new(f, coeffs)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, e: &BigUint, modulus: &Poly) -> Poly {
        let mut acc = Poly::one(&self.field).rem(modulus);
        let base = self.rem(modulus);
        for i in (0..e.bits()).rev() {
            acc = (&acc * &acc).rem(modulus);
            if e.bit(i) {
                acc = (&acc * &base).rem(modulus);
            }
        }
        acc
    }

    /// Rabin's test.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else { return false };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let m = self.monic();
        let x = Poly::x(&self.field);
        let q = BigUint::from(self.field.q());
        let mut frob = vec![x.clone()];
        for j in 1..=n {
            frob.push(frob[j - 1].pow_mod(&q, &m));
        }
        if frob[n] != x.rem(&m) {
            return false;
        }
        prime_factors(n as u64).into_iter().all(|r| {
            let h = &frob[n / r as usize] - &x;
            gcd(&h, &m).map(|g| g.is_one()).unwrap_or(false)
        })
    }

    /// Inverse Frobenius applied to a polynomial in `x^p`.
    fn pth_root(&self) -> Poly {
        let f = &self.field;
        let p = f.p() as usize;
        let inv_frob = f.q() / f.p();
        let coeffs = self
            .coeffs
            .iter()
            .step_by(p)
            .map(|&c| f.pow(c, inv_frob))
            .collect();
        debug_assert!(self.coeffs.iter().enumerate().all(|(i, c)| i % p == 0 || c.is_zero()));
        Poly::new(f, coeffs)
    }

    /// Square-free decomposition of a nonconstant polynomial: monic
    /// square-free, pairwise coprime parts with their multiplicities.
    pub fn squarefree_decomposition(&self) -> Vec<(Poly, u32)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        sff_into(&self.monic(), 1, &mut out);
        out.sort();
        out
    }

    /// Complete factorization into monic irreducibles. Equal-degree splitting
    /// draws from a generator seeded with `seed`; the result does not depend
    /// on the seed.
    pub fn factor(&self, seed: u64) -> Result<Factorization> {
        if self.is_constant() {
            return Err(Error::ConstantInput);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut factors = Vec::new();
        for (part, mult) in self.squarefree_decomposition() {
            for (chunk, d) in distinct_degree(&part) {
                let mut pieces = Vec::new();
                equal_degree(&chunk, d, &mut rng, &mut pieces);
                factors.extend(pieces.into_iter().map(|g| (g, mult)));
            }
        }
        factors.sort();
        Ok(Factorization { unit: self.leading(), factors })
    }

    /// `Some((c, h))` with `self = c * h^2`, `h` monic, exactly when every
    /// irreducible factor has even multiplicity.
    pub fn constant_times_square(&self) -> Option<SquareForm> {
        if self.is_zero() {
            return None;
        }
        let c = self.leading();
        let mut root = Poly::one(&self.field);
        for (part, mult) in self.squarefree_decomposition() {
            if mult % 2 == 1 {
                return None;
            }
            root = &root * &part.pow(u64::from(mult / 2));
        }
        Some(SquareForm { constant: c, constant_is_square: self.field.chi(c) == 1, root })
    }

    /// Square of a polynomial in `F_q[x]` (the leading constant is a square too).
    pub fn is_perfect_square(&self) -> bool {
        self.constant_times_square().is_some_and(|s| s.constant_is_square)
    }

    /// Human-readable form such as `5x^2 + 4x`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = &self.field;
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut coef = f.format(c);
            if f.k() > 1 && coef.contains('+') {
                coef = format!("({coef})");
            }
            let body = match (i, coef.as_str()) {
                (0, _) => coef,
                (1, "1") => "x".into(),
                (1, _) => format!("{coef}x"),
                (_, "1") => format!("x^{i}"),
                _ => format!("{coef}x^{i}"),
            };
            terms.push(body);
        }
        terms.join(" + ")
    }
}

fn sff_into(f: &Poly, scale: u32, out: &mut Vec<(Poly, u32)>) {
    let p = f.field.p() as u32;
    let fp = f.derivative();
    if fp.is_zero() {
        if !f.is_constant() {
            sff_into(&f.pth_root(), scale * p, out);
        }
        return;
    }
    let mut c = gcd(f, &fp).expect("f is nonzero");
    let mut w = f.exact_div(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = gcd(&w, &c).expect("w is nonzero");
        let fac = w.exact_div(&y);
        if !fac.is_one() {
            out.push((fac, i * scale));
        }
        c = c.exact_div(&y);
        w = y;
        i += 1;
    }
    if !c.is_one() {
        sff_into(&c.pth_root(), scale * p, out);
    }
}

fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let field = &f.field;
    let x = Poly::x(field);
    let q = BigUint::from(field.q());
    let mut out = Vec::new();
    let mut h = f.clone();
    let mut xq = x.clone();
    let mut d = 0;
    while h.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        xq = xq.pow_mod(&q, &h);
        let g = gcd(&h, &(&xq - &x)).expect("h is nonzero");
        if !g.is_one() {
            h = h.exact_div(&g);
            xq = xq.rem(&h);
            out.push((g, d));
        }
    }
    if let Some(n) = h.degree().filter(|&n| n > 0) {
        out.push((h, n));
    }
    out
}

fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
    let n = f.degree().expect("nonzero");
    if n == d {
        out.push(f.monic());
        return;
    }
    let field = &f.field;
    let exponent = (BigUint::from(field.q()).pow(d as u32) - 1u32) / 2u32;
    loop {
        let coeffs = (0..n).map(|_| field.element(rng.gen_range(0..field.q())).unwrap()).collect();
        let a = Poly::new(field, coeffs);
        if a.is_constant() {
            continue;
        }
        let mut g = gcd(&a, f).expect("f is nonzero");
        if g.is_one() {
            let b = &a.pow_mod(&exponent, f) - &Poly::one(field);
            if b.is_zero() {
                continue;
            }
            g = gcd(&b, f).expect("f is nonzero");
        }
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            equal_degree(&g, d, rng, out);
            equal_degree(&f.exact_div(&g), d, rng, out);
            return;
        }
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `base^n`, saturating at `u64::MAX`.
pub fn saturating_degree(base: usize, n: u32) -> u64 {
    (base as u64).checked_pow(n).unwrap_or(u64::MAX)
}

pub(crate) fn check_budget(degree: usize, n: u32, budget: u64) -> Result<()> {
    let total = saturating_degree(degree, n);
    if total > budget {
        return Err(Error::DegreeBudgetExceeded { degree: total, budget });
    }
    Ok(())
}

/// Monic greatest common divisor.
pub fn gcd(f: &Poly, g: &Poly) -> Result<Poly> {
    f.same_field(g)?;
    if f.is_zero() && g.is_zero() {
        return Err(Error::BothZero);
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_zero() {
        let r = a.rem(&b);
        a = b;
        b = r;
    }
    Ok(a.monic())
}

/// A factorization `unit * prod(g^m)` with distinct monic irreducible `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElement,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn expand(&self, field: &FieldSpec) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(field, self.unit), |acc, (g, m)| &acc * &g.pow(u64::from(*m)))
    }

    pub fn multiplicity(&self, g: &Poly) -> Option<u32> {
        self.factors.iter().find(|(h, _)| h == g).map(|&(_, m)| m)
    }

    /// Sum of `deg(g) * m` over the factors.
    pub fn total_degree(&self) -> usize {
        self.factors.iter().map(|(g, m)| g.degree().unwrap_or(0) * *m as usize).sum()
    }
}

/// Result of [`Poly::constant_times_square`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareForm {
    pub constant: FieldElement,
    pub root: Poly,
    /// Whether `constant` is itself a nonzero square, i.e. the polynomial is
    /// a perfect square in `F_q[x]`.
    pub constant_is_square: bool,
}

/// Ring operations accepted by [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    DivMod,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyArith {
    Poly(Poly),
    DivMod(Poly, Poly),
}

/// Checked ring operation that reports mixed fields instead of panicking.
pub fn poly_arith(f: &Poly, g: &Poly, op: PolyOp) -> Result<PolyArith> {
    f.same_field(g)?;
    Ok(match op {
        PolyOp::Add => PolyArith::Poly(f + g),
        PolyOp::Sub => PolyArith::Poly(f - g),
        PolyOp::Mul => PolyArith::Poly(f * g),
        PolyOp::DivMod => {
            let (q, r) = f.divmod(g)?;
            PolyArith::DivMod(q, r)
        }
    })
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.add_poly(rhs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.add_poly(&rhs.neg_poly())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.mul_poly(rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.neg_poly()
    }
}

/// The comma-separated text form, constant term first.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|&c| self.field.format(c)).collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.field, self.pretty())
    }
}
