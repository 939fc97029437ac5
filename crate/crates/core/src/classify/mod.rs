//! Recognition of the polynomials that fail to be dynamically ordinary or
//! dynamically 2-ordinary over a finite field of odd characteristic.

mod chebyshev;
mod conjugacy;
mod family;
mod oracle;

pub use chebyshev::{chebyshev, cyclotomic, psi, tilde_chebyshev, IntPoly};
pub use conjugacy::{are_conjugate, chebyshev_conjugacy, ChebyshevMatch, Conjugator};
pub use family::{generate_family, Family, FamilyParams, Sign};
pub use oracle::{default_depth, oracle_2_ordinary, oracle_ordinary, OracleVerdict};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ff::{FieldElement, FieldSpec};
use crate::fpoly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Form {
    A,
    B,
    C,
    D,
    E,
}

impl Form {
    pub fn letter(self) -> char {
        match self {
            Form::A => 'a',
            Form::B => 'b',
            Form::C => 'c',
            Form::D => 'd',
            Form::E => 'e',
        }
    }
}

/// Parameters that reproduce `f` in one of the exceptional forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormWitness {
    /// `A (x - B)^(p^e)`
    A { a: FieldElement, b: FieldElement, e: u32 },
    /// `A g^2`
    B { a: FieldElement, g: Poly },
    /// `A x g^2`
    C { a: FieldElement, g: Poly },
    /// `A h^2 + B` with `h` satisfying the even-degree recurrence
    D { a: FieldElement, b: FieldElement, h: Poly },
    /// `A (x - B) g^2` with `g` satisfying the odd-degree recurrence
    E { a: FieldElement, b: FieldElement, g: Poly },
}

impl FormWitness {
    pub fn form(&self) -> Form {
        match self {
            FormWitness::A { .. } => Form::A,
            FormWitness::B { .. } => Form::B,
            FormWitness::C { .. } => Form::C,
            FormWitness::D { .. } => Form::D,
            FormWitness::E { .. } => Form::E,
        }
    }

    /// Substitutes the witness back into its form.
    pub fn reconstruct(&self, field: &FieldSpec) -> Poly {
        let x = Poly::x(field);
        match self {
            FormWitness::A { a, b, e } => {
                Poly::linear(field, *b).pow(field.p().pow(*e)).scale(*a)
            }
            FormWitness::B { a, g } => (g * g).scale(*a),
            FormWitness::C { a, g } => (&x * &(g * g)).scale(*a),
            FormWitness::D { a, b, h } => &(h * h).scale(*a) + &Poly::constant(field, *b),
            FormWitness::E { a, b, g } => (&Poly::linear(field, *b) * &(g * g)).scale(*a),
        }
    }

    pub fn to_json(&self, field: &FieldSpec) -> Value {
        let fe = |x: &FieldElement| field.format(*x);
        match self {
            FormWitness::A { a, b, e } => json!({"form": "a", "A": fe(a), "B": fe(b), "e": e}),
            FormWitness::B { a, g } => json!({"form": "b", "A": fe(a), "g": g.to_string()}),
            FormWitness::C { a, g } => json!({"form": "c", "A": fe(a), "g": g.to_string()}),
            FormWitness::D { a, b, h } => {
                json!({"form": "d", "A": fe(a), "B": fe(b), "h": h.to_string()})
            }
            FormWitness::E { a, b, g } => {
                json!({"form": "e", "A": fe(a), "B": fe(b), "g": g.to_string()})
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    TwoOrdinary,
    NotTwoOrdinary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrdinaryVerdict {
    Ordinary,
    /// `f = A (x - B)^(p^e)`
    NotOrdinary { a: FieldElement, b: FieldElement, e: u32 },
}

impl OrdinaryVerdict {
    pub fn is_ordinary(&self) -> bool {
        matches!(self, OrdinaryVerdict::Ordinary)
    }

    pub fn to_json(&self, field: &FieldSpec) -> Value {
        match self {
            OrdinaryVerdict::Ordinary => json!({"verdict": "Ordinary"}),
            OrdinaryVerdict::NotOrdinary { a, b, e } => json!({
                "verdict": "NotOrdinary",
                "A": field.format(*a),
                "B": field.format(*b),
                "e": e,
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub poly: Poly,
    pub verdict: Verdict,
    pub matched_forms: Vec<FormWitness>,
    pub ordinary: OrdinaryVerdict,
}

impl ClassificationReport {
    pub fn matches(&self, form: Form) -> bool {
        self.matched_forms.iter().any(|w| w.form() == form)
    }

    pub fn forms(&self) -> String {
        self.matched_forms.iter().map(|w| w.form().letter()).collect()
    }

    pub fn to_json(&self) -> Value {
        let field = self.poly.field();
        json!({
            "field": field.to_string(),
            "poly": self.poly.to_string(),
            "pretty": self.poly.pretty(),
            "verdict": match self.verdict {
                Verdict::TwoOrdinary => "TwoOrdinary",
                Verdict::NotTwoOrdinary => "NotTwoOrdinary",
            },
            "forms": self.matched_forms.iter().map(|w| w.to_json(field)).collect::<Vec<_>>(),
            "ordinary": self.ordinary.to_json(field),
        })
    }
}

fn degree_at_least_two(f: &Poly) -> Result<usize> {
    match f.degree() {
        Some(d) if d >= 2 => Ok(d),
        d => Err(Error::DegreeTooSmall(d.unwrap_or(0))),
    }
}

/// Inverse of `x -> x^(p^e)` on `F_q`.
fn frobenius_root(field: &FieldSpec, y: FieldElement, e: u32) -> FieldElement {
    (0..e).fold(y, |acc, _| field.pow(acc, field.q() / field.p()))
}

/// `e` with `d = p^e`, if any.
fn p_power_exponent(p: u64, d: usize) -> Option<u32> {
    let mut e = 0;
    let mut m = d as u64;
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    (m == 1 && e > 0).then_some(e)
}

fn form_a(f: &Poly, d: usize) -> Option<FormWitness> {
    let field = f.field();
    let e = p_power_exponent(field.p(), d)?;
    if f.coeffs()[1..d].iter().any(|c| !c.is_zero()) {
        return None;
    }
    // (x - B)^(p^e) = x^(p^e) - B^(p^e)
    let a = f.leading();
    let target = field.neg(field.div(f.coeff(0), a).expect("leading coefficient is nonzero"));
    Some(FormWitness::A { a, b: frobenius_root(field, target, e), e })
}

/// The unique monic `h` of degree `deg(f)/2` whose square agrees with
/// `f / lc(f)` in the top half of the coefficients. `f` is a constant times
/// a square exactly when `f = lc(f) h^2` for this `h`.
fn square_root_candidate(f: &Poly) -> Option<Poly> {
    let field = f.field();
    let d = f.degree()?;
    if d % 2 == 1 {
        return None;
    }
    let n = d / 2;
    let m = f.monic();
    let half = field.inv(field.from_i64(2)).expect("odd characteristic");
    let mut b = vec![field.zero(); n + 1];
    b[n] = field.one();
    for k in 1..=n {
        let mut s = field.zero();
        for i in n - k + 1..n {
            s = field.add(s, field.mul(b[i], b[2 * n - k - i]));
        }
        b[n - k] = field.mul(field.sub(m.coeff(2 * n - k), s), half);
    }
    Some(Poly::new(field, b))
}

/// `Some((c, h))` with `f = c h^2` and `h` monic.
fn split_square(f: &Poly) -> Option<(FieldElement, Poly)> {
    let h = square_root_candidate(f)?;
    let c = f.leading();
    ((&h * &h).scale(c) == *f).then_some((c, h))
}

fn form_b(f: &Poly) -> Option<FormWitness> {
    split_square(f).map(|(a, g)| FormWitness::B { a, g })
}

fn form_c(f: &Poly) -> Option<FormWitness> {
    if !f.coeff(0).is_zero() {
        return None;
    }
    let field = f.field();
    let cofactor = Poly::new(field, f.coeffs()[1..].to_vec());
    split_square(&cofactor).map(|(a, g)| FormWitness::C { a, g })
}

/// Checks `i(2i-1) B a_i = -2 u(i) a_{i-1}` for `i = 1..=n`.
fn satisfies_recurrence(
    field: &FieldSpec,
    coeffs: &Poly,
    n: usize,
    b: FieldElement,
    numerator: impl Fn(i64, i64) -> i64,
) -> bool {
    (1..=n).all(|i| {
        let i64_ = i as i64;
        let lhs = field.mul(field.mul(field.from_i64(i64_ * (2 * i64_ - 1)), b), coeffs.coeff(i));
        let rhs = field.mul(field.from_i64(-2 * numerator(n as i64, i64_)), coeffs.coeff(i - 1));
        lhs == rhs
    })
}

pub(crate) fn numerator_d(n: i64, i: i64) -> i64 {
    (n + i - 1) * (n - i + 1)
}

pub(crate) fn numerator_e(n: i64, i: i64) -> i64 {
    (n - i + 1) * (n + i)
}

/// Picks `±root` so that its constant term is the canonical square root of
/// `target`; `None` if `root(0)^2 != target`.
fn orient(root: &Poly, target: FieldElement) -> Option<Poly> {
    let field = root.field();
    let r0 = root.coeff(0);
    if field.mul(r0, r0) != target {
        return None;
    }
    let canonical = field.sqrt(target).ok()?;
    Some(if r0 == canonical { root.clone() } else { root.scale(field.neg(field.one())) })
}

fn form_d(f: &Poly, d: usize) -> Option<FormWitness> {
    // A a_0^2 = -B forces f(0) = 0, and B = 0 is form (b).
    if d % 2 == 1 || !f.coeff(0).is_zero() {
        return None;
    }
    let field = f.field();
    let a = f.leading();
    let hm = square_root_candidate(f)?;
    let rest = f - &(&hm * &hm).scale(a);
    if !rest.is_constant() || rest.is_zero() {
        return None;
    }
    let b = rest.coeff(0);
    let target = field.div(field.neg(b), a).ok()?;
    let h = orient(&hm, target)?;
    satisfies_recurrence(field, &h, d / 2, b, numerator_d).then_some(FormWitness::D { a, b, h })
}

fn form_e(f: &Poly, d: usize) -> Option<FormWitness> {
    // f(0) = -A B g(0)^2 = B, and B = 0 is form (c).
    let field = f.field();
    let b = f.coeff(0);
    if d % 2 == 0 || b.is_zero() || !f.evaluate(b).is_zero() {
        return None;
    }
    let cofactor = f.exact_div(&Poly::linear(field, b));
    let (a, gm) = split_square(&cofactor)?;
    let target = field.div(field.neg(field.one()), a).ok()?;
    let g = orient(&gm, target)?;
    satisfies_recurrence(field, &g, (d - 1) / 2, b, numerator_e).then_some(FormWitness::E { a, b, g })
}

/// Decides dynamical 2-ordinarity by matching the exceptional forms.
pub fn classify_2_ordinary(f: &Poly) -> Result<ClassificationReport> {
    let d = degree_at_least_two(f)?;
    let a = form_a(f, d);
    let ordinary = match &a {
        Some(FormWitness::A { a, b, e }) => OrdinaryVerdict::NotOrdinary { a: *a, b: *b, e: *e },
        _ => OrdinaryVerdict::Ordinary,
    };
    let matched_forms: Vec<FormWitness> = [a, form_b(f), form_c(f), form_d(f, d), form_e(f, d)]
        .into_iter()
        .flatten()
        .collect();
    let verdict = if matched_forms.is_empty() { Verdict::TwoOrdinary } else { Verdict::NotTwoOrdinary };
    Ok(ClassificationReport { poly: f.clone(), verdict, matched_forms, ordinary })
}

/// Decides dynamical ordinarity: only `A (x - B)^(p^e)` fails.
pub fn classify_ordinary(f: &Poly) -> Result<OrdinaryVerdict> {
    let d = degree_at_least_two(f)?;
    Ok(match form_a(f, d) {
        Some(FormWitness::A { a, b, e }) => OrdinaryVerdict::NotOrdinary { a, b, e },
        _ => OrdinaryVerdict::Ordinary,
    })
}

/// `H_n = W_n / Z_n` with `Z_0 = A`, `W_0 = -B`, `Z_n = A Z_{n-1}^d`,
/// `W_n = A W_{n-1}^d - B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnSequence {
    pub values: Vec<FieldElement>,
    /// First `(i, j)`, `i < j`, with `H_i = H_j`.
    pub repeat: Option<(usize, usize)>,
}

pub fn hn_sequence(
    field: &FieldSpec,
    a: FieldElement,
    b: FieldElement,
    d: u64,
    max_n: usize,
) -> Result<HnSequence> {
    if a.is_zero() {
        return Err(Error::ZeroA);
    }
    let mut seen = std::collections::HashMap::new();
    let mut values = Vec::new();
    let (mut z, mut w) = (a, field.neg(b));
    for n in 0..=max_n {
        let h = field.div(w, z)?;
        values.push(h);
        if let Some(&i) = seen.get(&h) {
            return Ok(HnSequence { values, repeat: Some((i, n)) });
        }
        seen.insert(h, n);
        z = field.mul(a, field.pow(z, d));
        w = field.sub(field.mul(a, field.pow(w, d)), b);
    }
    Ok(HnSequence { values, repeat: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_field;
    use crate::fpoly::DEFAULT_DEGREE_BUDGET;

    fn field(p: u64, k: usize) -> FieldSpec {
        make_field(p, k, None).unwrap()
    }

    fn witness(report: &ClassificationReport, form: Form) -> &FormWitness {
        report.matched_forms.iter().find(|w| w.form() == form).unwrap()
    }

    #[test]
    fn worked_examples() {
        let f3 = field(3, 1);
        let f7 = field(7, 1);
        let r = classify_2_ordinary(&Poly::from_ints(&f3, &[-1, 3, -3, 1])).unwrap();
        assert_eq!(r.verdict, Verdict::NotTwoOrdinary);
        assert_eq!(
            witness(&r, Form::A),
            &FormWitness::A { a: f3.one(), b: f3.one(), e: 1 }
        );

        let r = classify_2_ordinary(&Poly::from_ints(&f7, &[0, 0, 1])).unwrap();
        assert_eq!(witness(&r, Form::B), &FormWitness::B { a: f7.one(), g: Poly::x(&f7) });

        let r = classify_2_ordinary(&Poly::from_ints(&f7, &[0, 4, 5])).unwrap();
        assert_eq!(r.forms(), "d");
        assert_eq!(
            witness(&r, Form::D),
            &FormWitness::D { a: f7.from_i64(5), b: f7.from_i64(2), h: Poly::from_ints(&f7, &[1, 6]) }
        );

        let r = classify_2_ordinary(&Poly::from_ints(&f7, &[1, 0, 1])).unwrap();
        assert_eq!(r.verdict, Verdict::TwoOrdinary);
        assert!(r.matched_forms.is_empty());

        let r = classify_2_ordinary(&Poly::from_ints(&f3, &[1, 0, 0, 1])).unwrap();
        assert!(r.matches(Form::A));

        assert_eq!(
            classify_2_ordinary(&Poly::from_ints(&f7, &[1, 1])),
            Err(Error::DegreeTooSmall(1))
        );
    }

    #[test]
    fn ordinary_examples() {
        let f3 = field(3, 1);
        let f = Poly::linear(&f3, f3.from_i64(3)).pow(9).scale(f3.from_i64(2));
        assert_eq!(
            classify_ordinary(&f).unwrap(),
            OrdinaryVerdict::NotOrdinary { a: f3.from_i64(2), b: f3.zero(), e: 2 }
        );
        let f7 = field(7, 1);
        assert!(classify_ordinary(&Poly::from_ints(&f7, &[0, 0, 0, 1])).unwrap().is_ordinary());
        assert!(classify_ordinary(&Poly::from_ints(&f3, &[1, 0, 1])).unwrap().is_ordinary());

        let f9 = field(3, 2);
        let b = f9.parse_element("1+t").unwrap();
        let a = f9.parse_element("2t").unwrap();
        let f = Poly::linear(&f9, b).pow(3).scale(a);
        assert_eq!(classify_ordinary(&f).unwrap(), OrdinaryVerdict::NotOrdinary { a, b, e: 1 });
    }

    #[test]
    fn hn_examples() {
        let f3 = field(3, 1);
        let s = hn_sequence(&f3, f3.one(), f3.one(), 3, 10).unwrap();
        assert_eq!(s.values, vec![f3.from_i64(2), f3.one(), f3.zero(), f3.from_i64(2)]);
        assert_eq!(s.repeat, Some((0, 3)));
        let s = hn_sequence(&f3, f3.from_i64(2), f3.zero(), 2, 10).unwrap();
        assert_eq!(s.repeat, Some((0, 1)));
        assert_eq!(hn_sequence(&f3, f3.zero(), f3.one(), 2, 10), Err(Error::ZeroA));
        let f9 = field(3, 2);
        for a in f9.elements().skip(1) {
            for b in f9.elements() {
                let s = hn_sequence(&f9, a, b, 2, 20).unwrap();
                let (i, j) = s.repeat.unwrap();
                assert!(i < j && j <= 9);
            }
        }
    }

    /// Literal scan over every `B`, with square detection through
    /// factorization, used to cross-check the direct extraction.
    fn form_d_by_scan(f: &Poly, d: usize) -> Option<FieldElement> {
        if d % 2 == 1 {
            return None;
        }
        let field = f.field();
        field.elements().skip(1).find(|&b| {
            let Some(sq) = (f - &Poly::constant(field, b)).constant_times_square() else {
                return false;
            };
            // f - B = a hm^2 = (a / l^2)(l hm)^2 for every l != 0; the
            // a_0 condition reduces to a hm(0)^2 = -B and the recurrence is
            // homogeneous in h.
            let h0 = sq.root.coeff(0);
            field.mul(sq.constant, field.mul(h0, h0)) == field.neg(b)
                && satisfies_recurrence(field, &sq.root, d / 2, b, numerator_d)
        })
    }

    fn form_e_by_scan(f: &Poly, d: usize) -> Option<FieldElement> {
        if d % 2 == 0 {
            return None;
        }
        let field = f.field();
        field.elements().skip(1).find(|&b| {
            let lin = Poly::linear(field, b);
            if !lin.divides(f) {
                return false;
            }
            let Some(sq) = f.exact_div(&lin).constant_times_square() else {
                return false;
            };
            let g0 = sq.root.coeff(0);
            field.mul(sq.constant, field.mul(g0, g0)) == field.neg(field.one())
                && satisfies_recurrence(field, &sq.root, (d - 1) / 2, b, numerator_e)
        })
    }

    fn all_polys(field: &FieldSpec, d: usize, monic: bool) -> Vec<Poly> {
        let q = field.q();
        let slots = if monic { d } else { d + 1 };
        let total = q.pow(slots as u32);
        (0..total)
            .filter_map(|mut n| {
                let mut c = Vec::new();
                for _ in 0..slots {
                    c.push(field.element(n % q).unwrap());
                    n /= q;
                }
                if monic {
                    c.push(field.one());
                }
                let f = Poly::new(field, c);
                (f.degree() == Some(d)).then_some(f)
            })
            .collect()
    }

    #[test]
    fn direct_extraction_matches_b_scan_and_factoring() {
        for (p, k, d) in [(3, 1, 2), (3, 1, 3), (3, 1, 4), (5, 1, 2), (5, 1, 3), (7, 1, 2), (7, 1, 3), (3, 2, 2), (5, 1, 4)] {
            let fld = field(p, k);
            for f in all_polys(&fld, d, false) {
                let r = classify_2_ordinary(&f).unwrap();
                for w in &r.matched_forms {
                    assert_eq!(w.reconstruct(&fld), f, "{w:?}");
                }
                let by_factor = f.constant_times_square().is_some();
                assert_eq!(r.matches(Form::B), by_factor, "{f}");
                let by_scan = form_d_by_scan(&f, d);
                assert_eq!(r.matches(Form::D), by_scan.is_some(), "{f}");
                if let Some(b) = by_scan {
                    assert!(matches!(witness(&r, Form::D), FormWitness::D { b: wb, .. } if *wb == b));
                }
                assert_eq!(r.matches(Form::E), form_e_by_scan(&f, d).is_some(), "{f}");
            }
        }
    }

    #[test]
    fn monic_quadratic_form_d_is_x2_plus_4x() {
        for (p, k) in [(3, 1), (5, 1), (7, 1), (3, 2), (11, 1)] {
            let fld = field(p, k);
            let hits: Vec<Poly> = all_polys(&fld, 2, true)
                .into_iter()
                .filter(|f| classify_2_ordinary(f).unwrap().matches(Form::D))
                .collect();
            assert_eq!(hits, vec![Poly::from_ints(&fld, &[0, 4, 1])]);
        }
    }

    #[test]
    fn exceptional_forms_are_certified_by_the_oracle() {
        for (p, d) in [(3, 2), (5, 2), (7, 2), (3, 3), (5, 3)] {
            let fld = field(p, 1);
            for f in all_polys(&fld, d, true) {
                let r = classify_2_ordinary(&f).unwrap();
                let depth = if d == 2 { 6 } else { 4 };
                let o = oracle_2_ordinary(&f, depth, DEFAULT_DEGREE_BUDGET, 0).unwrap();
                assert_eq!(
                    r.verdict == Verdict::NotTwoOrdinary,
                    matches!(o, OracleVerdict::CertifiedNot(_)),
                    "{f}: {r:?} vs {o:?}"
                );
            }
        }
    }
}
