//! Arithmetic in `F_{p^k}` for odd primes `p`.
//!
//! A [`FieldSpec`] fixes the prime, the extension degree and a monic
//! irreducible modulus; elements are stored as their coordinate vector in the
//! power basis `1, t, ..., t^(k-1)`, packed into a single integer whose order
//! is the lexicographic order of `(c_0, ..., c_{k-1})`. Enumeration order,
//! canonical square roots and every tie-break in the crate use that order.
//!
//! Specs are interned: building the same field twice yields handles that
//! compare equal, and elements carry the id of their field so that mixing
//! fields is detected.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::fpoly::Poly;

const MAX_K: usize = 20;

static REGISTRY: Mutex<Vec<Arc<FieldInner>>> = Mutex::new(Vec::new());

/// An element of some [`FieldSpec`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement {
    field: u32,
    idx: u32,
}

impl FieldElement {
    /// Position in enumeration order; `0` is the zero element.
    pub fn index(self) -> u64 {
        u64::from(self.idx)
    }

    pub fn is_zero(self) -> bool {
        self.idx == 0
    }

    pub fn field_id(self) -> u32 {
        self.field
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.idx)
    }
}

struct FieldInner {
    p: u64,
    k: usize,
    q: u64,
    modulus: Vec<u64>,
    default_modulus: bool,
    id: u32,
    nonresidue: OnceLock<FieldElement>,
}

/// A concrete model of `F_q`, `q = p^k`. Cheap to clone.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<FieldInner>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.inner.id == other.inner.id
    }
}

impl Eq for FieldSpec {}

impl Hash for FieldSpec {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.inner.id.hash(state);
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec({})", self.describe())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner = &self.inner;
        if inner.k == 1 {
            write!(f, "{}", inner.p)
        } else if inner.default_modulus {
            write!(f, "{}^{}", inner.p, inner.k)
        } else {
            f.write_str(&self.describe())
        }
    }
}

/// Field operations accepted by [`arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Builds `F_{p^k}`. Without an explicit modulus the lexicographically
/// smallest monic irreducible `(c_0, ..., c_{k-1})` is used.
pub fn make_field(p: u64, k: usize, modulus: Option<&[u64]>) -> Result<FieldSpec> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if k == 0 {
        return Err(Error::ZeroExtensionDegree);
    }
    let q = checked_order(p, k).ok_or(Error::FieldTooLarge { p, k })?;
    if k == 1 {
        if let Some(m) = modulus {
            if m.len() != 2 || m[1] % p != 1 {
                return Err(Error::ModulusShape { expected: 1 });
            }
        }
        return Ok(intern(p, 1, q, vec![0, 1], true));
    }
    let default = default_modulus(p, k)?;
    let chosen = match modulus {
        None => default.clone(),
        Some(m) => {
            if m.len() != k + 1 || m[k] % p != 1 {
                return Err(Error::ModulusShape { expected: k });
            }
            let m: Vec<u64> = m.iter().map(|c| c % p).collect();
            if !modulus_is_irreducible(p, &m)? {
                return Err(Error::ReducibleModulus(p));
            }
            m
        }
    };
    let is_default = chosen == default;
    Ok(intern(p, k, q, chosen, is_default))
}

fn checked_order(p: u64, k: usize) -> Option<u64> {
    if k > MAX_K {
        return None;
    }
    let q = p.checked_pow(u32::try_from(k).ok()?)?;
    (q <= u64::from(u32::MAX)).then_some(q)
}

fn intern(p: u64, k: usize, q: u64, modulus: Vec<u64>, default_modulus: bool) -> FieldSpec {
    let mut reg = REGISTRY.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(existing) = reg.iter().find(|f| f.p == p && f.modulus == modulus) {
        return FieldSpec { inner: Arc::clone(existing) };
    }
    let inner = Arc::new(FieldInner {
        p,
        k,
        q,
        modulus,
        default_modulus,
        id: u32::try_from(reg.len()).expect("field registry overflow"),
        nonresidue: OnceLock::new(),
    });
    reg.push(Arc::clone(&inner));
    FieldSpec { inner }
}

fn modulus_is_irreducible(p: u64, modulus: &[u64]) -> Result<bool> {
    let base = make_field(p, 1, None)?;
    let coeffs = modulus.iter().map(|&c| base.from_u64(c)).collect();
    Ok(Poly::new(&base, coeffs).is_irreducible())
}

fn default_modulus(p: u64, k: usize) -> Result<Vec<u64>> {
    let base = make_field(p, 1, None)?;
    let count = p.pow(k as u32);
    // c_0 = 0 means x divides the candidate, so start at p^(k-1).
    for code in p.pow(k as u32 - 1)..count {
        let mut coeffs = vec![0u64; k + 1];
        let mut v = code;
        for slot in coeffs[..k].iter_mut().rev() {
            *slot = v % p;
            v /= p;
        }
        coeffs[k] = 1;
        let poly = Poly::new(&base, coeffs.iter().map(|&c| base.from_u64(c)).collect());
        if poly.is_irreducible() {
            return Ok(coeffs);
        }
    }
    unreachable!("irreducible polynomials of every degree exist over F_p")
}

type Digits = [u64; MAX_K];

impl FieldSpec {
    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn k(&self) -> usize {
        self.inner.k
    }

    pub fn q(&self) -> u64 {
        self.inner.q
    }

    /// Modulus coefficients, constant term first, monic.
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    pub fn id(&self) -> u32 {
        self.inner.id
    }

    /// Text form that pins the modulus, e.g. `3^2/(1,0,1)`.
    pub fn describe(&self) -> String {
        let m: Vec<String> = self.inner.modulus.iter().map(u64::to_string).collect();
        format!("{}^{}/({})", self.inner.p, self.inner.k, m.join(","))
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_u64(1)
    }

    /// The image of an integer under `Z -> F_p -> F_q`.
    pub fn from_i64(&self, v: i64) -> FieldElement {
        let p = self.inner.p as i64;
        self.from_u64(v.rem_euclid(p) as u64)
    }

    pub fn from_u64(&self, v: u64) -> FieldElement {
        let c0 = v % self.inner.p;
        let place = self.inner.q / self.inner.p;
        self.wrap(c0 * place)
    }

    /// The generator `t` of the power basis (equals `0` in a prime field).
    pub fn generator(&self) -> FieldElement {
        if self.inner.k == 1 {
            return self.zero();
        }
        let mut d = [0u64; MAX_K];
        d[1] = 1;
        self.pack(&d)
    }

    /// The element at position `idx` in enumeration order.
    pub fn element(&self, idx: u64) -> Option<FieldElement> {
        (idx < self.inner.q).then(|| self.wrap(idx))
    }

    pub fn from_coords(&self, coords: &[u64]) -> Result<FieldElement> {
        let k = self.inner.k;
        if coords.len() > k {
            return Err(Error::Parse(format!("expected at most {k} coordinates")));
        }
        let mut d = [0u64; MAX_K];
        for (slot, &c) in d.iter_mut().zip(coords) {
            *slot = c % self.inner.p;
        }
        Ok(self.pack(&d))
    }

    /// Coordinate vector `(c_0, ..., c_{k-1})`.
    pub fn coords(&self, x: FieldElement) -> Vec<u64> {
        self.digits(x)[..self.inner.k].to_vec()
    }

    /// Every element exactly once, in coordinate-lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.inner.q).map(move |i| self.wrap(i))
    }

    pub fn contains(&self, x: FieldElement) -> bool {
        x.field == self.inner.id
    }

    fn wrap(&self, idx: u64) -> FieldElement {
        debug_assert!(idx < self.inner.q);
        FieldElement { field: self.inner.id, idx: idx as u32 }
    }

    fn digits(&self, x: FieldElement) -> Digits {
        debug_assert!(self.contains(x), "element from a different field");
        let p = self.inner.p;
        let mut d = [0u64; MAX_K];
        let mut v = u64::from(x.idx);
        for slot in d[..self.inner.k].iter_mut().rev() {
            *slot = v % p;
            v /= p;
        }
        d
    }

    fn pack(&self, d: &Digits) -> FieldElement {
        let p = self.inner.p;
        let v = d[..self.inner.k].iter().fold(0u64, |acc, &c| acc * p + c);
        self.wrap(v)
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let p = self.inner.p;
        if self.inner.k == 1 {
            return self.wrap((u64::from(x.idx) + u64::from(y.idx)) % p);
        }
        let (a, b) = (self.digits(x), self.digits(y));
        let mut d = [0u64; MAX_K];
        for i in 0..self.inner.k {
            d[i] = (a[i] + b[i]) % p;
        }
        self.pack(&d)
    }

    pub fn neg(&self, x: FieldElement) -> FieldElement {
        let p = self.inner.p;
        if self.inner.k == 1 {
            return self.wrap((p - u64::from(x.idx)) % p);
        }
        let a = self.digits(x);
        let mut d = [0u64; MAX_K];
        for i in 0..self.inner.k {
            d[i] = (p - a[i]) % p;
        }
        self.pack(&d)
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let p = self.inner.p;
        let k = self.inner.k;
        if k == 1 {
            return self.wrap(u64::from(x.idx) * u64::from(y.idx) % p);
        }
        let (a, b) = (self.digits(x), self.digits(y));
        let mut conv = [0u64; 2 * MAX_K];
        for i in 0..k {
            if a[i] == 0 {
                continue;
            }
            for j in 0..k {
                conv[i + j] = (conv[i + j] + a[i] * b[j] % p) % p;
            }
        }
        let m = &self.inner.modulus;
        for deg in (k..2 * k - 1).rev() {
            let c = conv[deg];
            if c == 0 {
                continue;
            }
            conv[deg] = 0;
            for j in 0..k {
                let sub = c * m[j] % p;
                conv[deg - k + j] = (conv[deg - k + j] + p - sub) % p;
            }
        }
        let mut d = [0u64; MAX_K];
        d[..k].copy_from_slice(&conv[..k]);
        self.pack(&d)
    }

    pub fn pow(&self, x: FieldElement, mut e: u64) -> FieldElement {
        let mut base = x;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(x, self.inner.q - 2))
    }

    pub fn div(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// Quadratic character: `0`, `+1` on nonzero squares, `-1` otherwise.
    pub fn chi(&self, x: FieldElement) -> i8 {
        if x.is_zero() {
            return 0;
        }
        if self.pow(x, (self.inner.q - 1) / 2) == self.one() {
            1
        } else {
            -1
        }
    }

    pub fn is_square(&self, x: FieldElement) -> bool {
        self.chi(x) >= 0
    }

    /// The first non-square in enumeration order.
    pub fn nonresidue(&self) -> FieldElement {
        *self.inner.nonresidue.get_or_init(|| {
            self.elements()
                .find(|&x| self.chi(x) == -1)
                .expect("odd fields contain non-squares")
        })
    }

    /// Square root with the lexicographically smaller coordinate vector.
    pub fn sqrt(&self, x: FieldElement) -> Result<FieldElement> {
        match self.chi(x) {
            0 => return Ok(self.zero()),
            -1 => return Err(Error::NonSquare),
            _ => {}
        }
        let q = self.inner.q;
        let r = if q % 4 == 3 {
            self.pow(x, (q + 1) / 4)
        } else {
            self.tonelli_shanks(x)
        };
        debug_assert_eq!(self.mul(r, r), x);
        Ok(r.min(self.neg(r)))
    }

    fn tonelli_shanks(&self, x: FieldElement) -> FieldElement {
        let q = self.inner.q;
        let s = (q - 1).trailing_zeros();
        let t = (q - 1) >> s;
        let one = self.one();
        let mut m = s;
        let mut c = self.pow(self.nonresidue(), t);
        let mut r = self.pow(x, (t + 1) / 2);
        let mut tt = self.pow(x, t);
        while tt != one {
            let mut i = 0;
            let mut probe = tt;
            while probe != one {
                probe = self.mul(probe, probe);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = self.mul(b, b);
            }
            r = self.mul(r, b);
            c = self.mul(b, b);
            tt = self.mul(tt, c);
            m = i;
        }
        r
    }

    /// Renders an element: an integer in prime fields, otherwise a
    /// constant-first expression in the generator `t` such as `1+2t^2`.
    pub fn format(&self, x: FieldElement) -> String {
        let d = self.digits(x);
        if self.inner.k == 1 {
            return d[0].to_string();
        }
        let mut terms = Vec::new();
        for (i, &c) in d[..self.inner.k].iter().enumerate() {
            if c == 0 {
                continue;
            }
            let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            terms.push(match i {
                0 => coef,
                1 => format!("{coef}t"),
                _ => format!("{coef}t^{i}"),
            });
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }

    /// Parses an integer (reduced mod p), a `t`-expression such as `2+t^2`,
    /// or `#n` for the n-th element in enumeration order.
    pub fn parse_element(&self, text: &str) -> Result<FieldElement> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty field element".into()));
        }
        if let Some(rest) = s.strip_prefix('#') {
            let idx: u64 = rest.parse().map_err(|_| Error::Parse(format!("bad index {s:?}")))?;
            return self
                .element(idx)
                .ok_or_else(|| Error::Parse(format!("index {idx} out of range")));
        }
        let mut acc = self.zero();
        for term in s.replace('-', "+-").split('+').filter(|t| !t.is_empty()) {
            acc = self.add(acc, self.parse_term(term)?);
        }
        Ok(acc)
    }

    fn parse_term(&self, term: &str) -> Result<FieldElement> {
        let bad = || Error::Parse(format!("bad field element term {term:?}"));
        let (neg, body) = match term.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, term),
        };
        let (coef, power) = match body.find('t') {
            None => (body, 0usize),
            Some(pos) => {
                let coef = body[..pos].trim_end_matches('*');
                let tail = &body[pos + 1..];
                let power = if tail.is_empty() {
                    1
                } else {
                    tail.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?
                };
                (coef, power)
            }
        };
        let c: i64 = if coef.is_empty() { 1 } else { coef.parse().map_err(|_| bad())? };
        let t_pow = self.pow(self.generator_or_one(power), power as u64);
        let v = self.mul(self.from_i64(c), t_pow);
        Ok(if neg { self.neg(v) } else { v })
    }

    fn generator_or_one(&self, power: usize) -> FieldElement {
        if power == 0 {
            self.one()
        } else {
            self.generator()
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `p`, `p^k` or `p^k/(c_0,...,c_{k-1},1)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad field spec {s:?}"));
        let (head, modulus) = match s.split_once('/') {
            None => (s, None),
            Some((h, m)) => {
                let m = m.trim().strip_prefix('(').and_then(|m| m.strip_suffix(')')).ok_or_else(bad)?;
                let coeffs = m
                    .split(',')
                    .map(|c| c.trim().parse::<u64>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()?;
                (h, Some(coeffs))
            }
        };
        let (p, k) = match head.split_once('^') {
            None => (head.trim().parse().map_err(|_| bad())?, 1),
            Some((p, k)) => (p.trim().parse().map_err(|_| bad())?, k.trim().parse().map_err(|_| bad())?),
        };
        make_field(p, k, modulus.as_deref())
    }
}

/// Checked binary operation.
pub fn arith(field: &FieldSpec, x: FieldElement, y: FieldElement, op: ArithOp) -> Result<FieldElement> {
    if !field.contains(x) || !field.contains(y) {
        return Err(Error::MixedFields);
    }
    Ok(match op {
        ArithOp::Add => field.add(x, y),
        ArithOp::Sub => field.sub(x, y),
        ArithOp::Mul => field.mul(x, y),
        ArithOp::Div => field.div(x, y)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64, k: usize) -> FieldSpec {
        make_field(p, k, None).unwrap()
    }

    #[test]
    fn construction_errors() {
        assert_eq!(make_field(9, 1, None).unwrap_err(), Error::NotPrime(9));
        assert_eq!(make_field(2, 1, None).unwrap_err(), Error::EvenCharacteristic);
        assert_eq!(make_field(5, 1, Some(&[1, 0, 1])).unwrap_err(), Error::ModulusShape { expected: 1 });
        // x^2 + 1 = (x + 2)(x + 3) over F_5
        assert_eq!(make_field(5, 2, Some(&[1, 0, 1])).unwrap_err(), Error::ReducibleModulus(5));
    }

    #[test]
    fn default_modulus_for_f9() {
        // Enumerate monic quadratics over F_3 in (c_0, c_1) order and keep
        // the first one without a root.
        let mut first = None;
        'outer: for c0 in 0..3u64 {
            for c1 in 0..3u64 {
                if (0..3u64).all(|x| (x * x + c1 * x + c0) % 3 != 0) {
                    first = Some(vec![c0, c1, 1]);
                    break 'outer;
                }
            }
        }
        let f9 = f(3, 2);
        assert_eq!(f9.q(), 9);
        assert_eq!(Some(f9.modulus().to_vec()), first);
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        assert_eq!(f9.to_string(), "3^2");
    }

    #[test]
    fn interning_makes_specs_equal() {
        assert_eq!(f(7, 1), "7".parse::<FieldSpec>().unwrap());
        assert_eq!(f(3, 2), "3^2/(1,0,1)".parse::<FieldSpec>().unwrap());
        let other: FieldSpec = "3^2/(2,1,1)".parse().unwrap();
        assert_ne!(other, f(3, 2));
        assert_eq!(other.to_string(), "3^2/(2,1,1)");
    }

    #[test]
    fn prime_field_examples() {
        let f7 = f(7, 1);
        let e = |v| f7.from_i64(v);
        assert_eq!(f7.mul(e(3), e(5)), e(1));
        assert_eq!(f7.pow(e(3), 6), e(1));
        assert_eq!(f7.pow(e(3), 3), e(6));
        assert_eq!(f7.pow(e(0), 0), e(1));
        assert_eq!(arith(&f7, e(1), e(0), ArithOp::Div), Err(Error::DivisionByZero));
        assert_eq!(f7.chi(e(0)), 0);
        assert_eq!(f7.chi(e(3)), -1);
        assert_eq!(f7.sqrt(e(0)), Ok(e(0)));
        assert_eq!(f7.sqrt(e(2)), Ok(e(3)));
        assert_eq!(f7.sqrt(e(3)), Err(Error::NonSquare));
    }

    #[test]
    fn extension_field_examples() {
        let f9 = f(3, 2);
        let t = f9.generator();
        assert_eq!(f9.mul(t, t), f9.from_i64(2));
        assert_eq!(f9.chi(t), 1);
        let elems: Vec<_> = f9.elements().collect();
        assert_eq!(elems.len(), 9);
        assert!(elems[0].is_zero());
        let f3: Vec<_> = f(3, 1).elements().map(|x| x.index()).collect();
        assert_eq!(f3, vec![0, 1, 2]);
    }

    #[test]
    fn mixed_fields_rejected() {
        let (f7, f5) = (f(7, 1), f(5, 1));
        assert_eq!(arith(&f7, f7.one(), f5.one(), ArithOp::Add), Err(Error::MixedFields));
    }

    #[test]
    fn element_text_round_trip() {
        let f9 = f(3, 2);
        for x in f9.elements() {
            assert_eq!(f9.parse_element(&f9.format(x)).unwrap(), x);
        }
        assert_eq!(f9.parse_element("-t").unwrap(), f9.parse_element("2t").unwrap());
        assert_eq!(f9.parse_element("#4").unwrap().index(), 4);
        let f27 = f(3, 3);
        assert_eq!(f27.parse_element("1 + 2*t^2").unwrap(), f27.from_coords(&[1, 0, 2]).unwrap());
    }

    fn small_fields() -> Vec<FieldSpec> {
        [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2), (3, 3), (13, 1), (7, 2)]
            .into_iter()
            .map(|(p, k)| f(p, k))
            .collect()
    }

    #[test]
    fn character_is_multiplicative_and_balanced() {
        for field in small_fields() {
            let elems: Vec<_> = field.elements().collect();
            for &x in &elems {
                for &y in &elems {
                    assert_eq!(field.chi(x) * field.chi(y), field.chi(field.mul(x, y)));
                }
            }
            let plus = elems.iter().filter(|&&x| field.chi(x) == 1).count() as u64;
            let minus = elems.iter().filter(|&&x| field.chi(x) == -1).count() as u64;
            assert_eq!(plus, (field.q() - 1) / 2);
            assert_eq!(minus, (field.q() - 1) / 2);
        }
    }

    #[test]
    fn square_roots_and_frobenius() {
        for field in small_fields() {
            let p = field.p();
            for x in field.elements() {
                if field.chi(x) >= 0 {
                    let r = field.sqrt(x).unwrap();
                    assert_eq!(field.mul(r, r), x);
                    assert!(r <= field.neg(r));
                    assert_eq!(field.sqrt(x).unwrap(), r);
                }
                if !x.is_zero() {
                    assert_eq!(field.pow(x, field.q() - 1), field.one());
                    assert_eq!(field.mul(x, field.inv(x).unwrap()), field.one());
                }
                for y in field.elements().step_by(3) {
                    let lhs = field.pow(field.add(x, y), p);
                    assert_eq!(lhs, field.add(field.pow(x, p), field.pow(y, p)));
                }
            }
        }
    }
}
