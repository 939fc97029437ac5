//! Character sums and the exact inequalities behind the orbit-size and
//! run-length estimates.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::classify::{classify_2_ordinary, Verdict};
use crate::dynamics::{forward_orbit, longest_run_in, OrbitSummary, SignSequence};
use crate::error::{Error, Result};
use crate::ff::FieldElement;
use crate::fpoly::{check_budget, Poly};

fn int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

/// `lhs <= rational + coeff * sqrt(radicand)`, decided without floating
/// point. `coeff` and `radicand` are nonnegative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub lhs: BigRational,
    pub rational: BigRational,
    pub coeff: BigRational,
    pub radicand: BigInt,
}

impl Inequality {
    pub fn rational(lhs: BigRational, rhs: BigRational) -> Self {
        Inequality { lhs, rational: rhs, coeff: BigRational::zero(), radicand: BigInt::zero() }
    }

    pub fn holds(&self) -> bool {
        let gap = &self.lhs - &self.rational;
        if !gap.is_positive() {
            return true;
        }
        &gap * &gap <= &self.coeff * &self.coeff * int(self.radicand.clone())
    }

    pub fn lhs_f64(&self) -> f64 {
        self.lhs.to_f64().unwrap_or(f64::NAN)
    }

    pub fn rhs_f64(&self) -> f64 {
        let r = self.rational.to_f64().unwrap_or(f64::NAN);
        if self.coeff.is_zero() {
            return r;
        }
        r + self.coeff.to_f64().unwrap_or(f64::NAN) * self.radicand.to_f64().unwrap_or(f64::NAN).sqrt()
    }

    /// Exact right-hand side as text, e.g. `7/2 + 4*sqrt(7)`.
    pub fn rhs_text(&self) -> String {
        if self.coeff.is_zero() {
            self.rational.to_string()
        } else {
            format!("{} + {}*sqrt({})", self.rational, self.coeff, self.radicand)
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "lhs": self.lhs.to_string(),
            "rhs": self.rhs_text(),
            "lhs_approx": self.lhs_f64(),
            "rhs_approx": self.rhs_f64(),
            "pass": self.holds(),
        })
    }
}

/// `sum over x of chi(f(x))`
pub fn char_sum(f: &Poly) -> i64 {
    let field = f.field();
    field.elements().map(|x| i64::from(field.chi(f.evaluate(x)))).sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeilCheck {
    /// `|S|^2 <= (d - 1)^2 q`
    Applies { sum: i64, degree: usize, q: u64, pass: bool },
    NotApplicable(&'static str),
}

impl WeilCheck {
    pub fn passes(&self) -> Option<bool> {
        match self {
            WeilCheck::Applies { pass, .. } => Some(*pass),
            WeilCheck::NotApplicable(_) => None,
        }
    }

    /// `(d - 1)^2 q - S^2`
    pub fn margin(&self) -> Option<i128> {
        match self {
            WeilCheck::Applies { sum, degree, q, .. } => {
                let dm1 = *degree as i128 - 1;
                Some(dm1 * dm1 * *q as i128 - (*sum as i128) * (*sum as i128))
            }
            WeilCheck::NotApplicable(_) => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            WeilCheck::Applies { sum, degree, q, pass } => json!({
                "applies": true, "sum": sum, "d": degree, "q": q, "pass": pass,
                "margin": self.margin().map(|m| m.to_string()),
            }),
            WeilCheck::NotApplicable(reason) => json!({"applies": false, "reason": reason}),
        }
    }
}

pub fn weil_check(f: &Poly) -> WeilCheck {
    if f.is_zero() {
        return WeilCheck::NotApplicable("zero polynomial");
    }
    if f.constant_times_square().is_some() {
        return WeilCheck::NotApplicable("constant-times-square");
    }
    let degree = f.degree().expect("nonzero");
    let q = f.field().q();
    let sum = char_sum(f);
    let dm1 = degree as i128 - 1;
    let pass = (sum as i128) * (sum as i128) <= dm1 * dm1 * q as i128;
    WeilCheck::Applies { sum, degree, q, pass }
}

/// `chi(f^l(x))` for every `x` and `l = 1..=L`, evaluated pointwise.
pub struct CharTable {
    window: usize,
    points: usize,
    rows: Vec<i8>,
}

impl CharTable {
    pub fn new(f: &Poly, window: usize) -> Self {
        let field = f.field();
        let mut rows = Vec::with_capacity(field.q() as usize * window);
        for x in field.elements() {
            let mut y = x;
            for _ in 0..window {
                y = f.evaluate(y);
                rows.push(field.chi(y));
            }
        }
        CharTable { window, points: field.q() as usize, rows }
    }

    pub fn window(&self) -> usize {
        self.window
    }

    fn row(&self, x: usize) -> &[i8] {
        &self.rows[x * self.window..(x + 1) * self.window]
    }

    /// `2^L B` for the signs `s(1), ..., s(L)`.
    pub fn scaled_b(&self, signs: &[i8]) -> u128 {
        let len = signs.len();
        assert!(len <= self.window);
        let mut total = 0u128;
        for x in 0..self.points {
            let row = self.row(x);
            let mut prod = 1u128;
            for l in 0..len {
                prod *= (1 + i32::from(signs[l]) * i32::from(row[l])) as u128;
                if prod == 0 {
                    break;
                }
            }
            total += prod;
        }
        total
    }

    /// `|T(L)|` for `target = 1`, and the non-square analogue for `-1`.
    pub fn t_set_size(&self, len: usize, target: i8) -> usize {
        assert!(len <= self.window);
        (0..self.points).filter(|&x| self.row(x)[..len].iter().all(|&c| c == target)).count()
    }
}

fn eval_budget(f: &Poly, window: usize, budget: u64) -> Result<()> {
    check_budget(f.degree().unwrap_or(0), window as u32, budget)
}

/// `B_i = sum_x prod_{l=1..L} (1 + s_a(l + i) chi(f^l(x))) / 2`.
pub fn compute_b(f: &Poly, a: FieldElement, i: usize, window: usize, budget: u64) -> Result<BigRational> {
    eval_budget(f, window, budget)?;
    let signs = SignSequence::from_orbit(f.field(), &forward_orbit(f, a));
    if !signs.purely_periodic && i + 1 < signs.sign_tail {
        return Err(Error::NotPurelyPeriodic);
    }
    let table = CharTable::new(f, window);
    Ok(b_from_table(&table, &signs, i, window))
}

fn b_from_table(table: &CharTable, signs: &SignSequence, i: usize, window: usize) -> BigRational {
    let s: Vec<i8> = (1..=window).map(|l| signs.at(l + i)).collect();
    BigRational::new(BigInt::from(table.scaled_b(&s)), BigInt::from(1u8) << window)
}

/// One or more inequalities about a single `(f, a)`.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub kind: &'static str,
    pub f: Poly,
    pub a: Option<FieldElement>,
    pub window: usize,
    pub sign_period: usize,
    pub b_values: Vec<BigRational>,
    pub orbit_size: usize,
    pub checks: Vec<(String, Inequality)>,
    pub notes: Vec<String>,
}

impl BoundReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|(_, c)| c.holds())
    }

    pub fn max_b(&self) -> Option<&BigRational> {
        self.b_values.iter().max()
    }

    pub fn to_json(&self) -> Value {
        let field = self.f.field();
        json!({
            "kind": self.kind,
            "q": field.q(),
            "field": field.to_string(),
            "d": self.f.degree(),
            "f": self.f.to_string(),
            "a": self.a.map(|a| field.format(a)),
            "L": self.window,
            "m": self.sign_period,
            "B": self.b_values.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
            "orbit": self.orbit_size,
            "checks": self.checks.iter().map(|(name, c)| {
                let mut v = c.to_json();
                v["name"] = json!(name);
                v
            }).collect::<Vec<_>>(),
            "notes": self.notes,
            "pass": self.pass(),
        })
    }
}

/// `|O_f(a)| <= 2L + 1 + sum_{i<m} B_i` and `|O_f(a)| <= 2L + 1 + m max B_i`.
pub fn orbit_bound_check(f: &Poly, a: FieldElement, window: usize, budget: u64) -> Result<BoundReport> {
    eval_budget(f, window, budget)?;
    let table = CharTable::new(f, window);
    let orbit = forward_orbit(f, a);
    orbit_bound_with(&table, f, &orbit)
}

/// [`orbit_bound_check`] reusing a precomputed table for `f`.
pub fn orbit_bound_with(table: &CharTable, f: &Poly, orbit: &OrbitSummary) -> Result<BoundReport> {
    let window = table.window();
    let signs = SignSequence::from_orbit(f.field(), orbit);
    if !signs.purely_periodic {
        return Err(Error::NotPurelyPeriodic);
    }
    let m = signs.sign_period;
    let b_values: Vec<BigRational> = (0..m).map(|i| b_from_table(table, &signs, i, window)).collect();
    let base = int(2 * window as u64 + 1);
    let sum: BigRational = b_values.iter().fold(BigRational::zero(), |acc, b| acc + b);
    let max = b_values.iter().max().cloned().unwrap_or_else(BigRational::zero);
    let size = int(orbit.size() as u64);
    let checks = vec![
        ("orbit_sum".to_string(), Inequality::rational(size.clone(), &base + sum)),
        ("orbit_uniform".to_string(), Inequality::rational(size, &base + max * int(m as u64))),
    ];
    Ok(BoundReport {
        kind: "orbit",
        f: f.clone(),
        a: Some(orbit.start),
        window,
        sign_period: m,
        b_values,
        orbit_size: orbit.size(),
        checks,
        notes: Vec::new(),
    })
}

/// `q / 2^L + d^(L+1) sqrt(q)`
pub fn envelope(q: u64, d: usize, window: usize, value: BigRational) -> Inequality {
    Inequality {
        lhs: value,
        rational: BigRational::new(BigInt::from(q), BigInt::from(1u8) << window),
        coeff: int(BigInt::from(d).pow(window as u32 + 1)),
        radicand: BigInt::from(q),
    }
}

/// `B_i <= q / 2^L + d^(L+1) sqrt(q)` for a 2-ordinary `f`.
pub fn envelope_check(f: &Poly, a: FieldElement, i: usize, window: usize, budget: u64) -> Result<Inequality> {
    if classify_2_ordinary(f)?.verdict != Verdict::TwoOrdinary {
        return Err(Error::NotTwoOrdinary);
    }
    eval_budget(f, window, budget)?;
    let signs = SignSequence::from_orbit(f.field(), &forward_orbit(f, a));
    if !signs.purely_periodic {
        return Err(Error::NotPurelyPeriodic);
    }
    let table = CharTable::new(f, window);
    let b = b_from_table(&table, &signs, i, window);
    Ok(envelope(f.field().q(), f.degree().expect("classified"), window, b))
}

/// `|T(L)|`: points whose first `L` iterates are all nonzero squares
/// (`target = 1`) or all non-squares (`target = -1`). `|T(0)| = q`.
pub fn t_set_size(f: &Poly, window: usize, target: i8, budget: u64) -> Result<usize> {
    eval_budget(f, window, budget)?;
    Ok(CharTable::new(f, window).t_set_size(window, target))
}

/// `S = floor((R - 1) / 4)` for the longest run `R` of squares (and of
/// non-squares), and `S <= |T(L)|` for every `L <= S`.
pub fn run_bound_check(f: &Poly, a: FieldElement, budget: u64) -> Result<BoundReport> {
    let orbit = forward_orbit(f, a);
    let signs = SignSequence::from_orbit(f.field(), &orbit);
    let runs = [(1i8, longest_run_in(&orbit, &signs, 1)), (-1, longest_run_in(&orbit, &signs, -1))];
    let max_s = runs
        .iter()
        .filter(|(_, r)| !r.cycle_constant)
        .map(|(_, r)| r.length.saturating_sub(1) / 4)
        .max()
        .unwrap_or(0);
    eval_budget(f, max_s, budget)?;
    let table = CharTable::new(f, max_s);
    let mut checks = Vec::new();
    let mut notes = Vec::new();
    for (target, run) in runs {
        let label = if target == 1 { "square" } else { "nonsquare" };
        if run.cycle_constant {
            notes.push(format!("{label} run covers the whole cycle (R = {}); excluded", run.length));
            continue;
        }
        let s = run.length.saturating_sub(1) / 4;
        notes.push(format!("{label}: R = {}, S = {s}", run.length));
        for l in 0..=s {
            let size = table.t_set_size(l, target);
            checks.push((format!("{label}_T{l}"), Inequality::rational(int(s as u64), int(size as u64))));
        }
    }
    Ok(BoundReport {
        kind: "run",
        f: f.clone(),
        a: Some(a),
        window: max_s,
        sign_period: signs.sign_period,
        b_values: Vec::new(),
        orbit_size: orbit.size(),
        checks,
        notes,
    })
}

/// Largest `L` with `4^L d^(2L) d^2 <= q`, at least 1.
pub fn choose_l(q: u64, d: usize) -> usize {
    let (q, d) = (BigInt::from(q), BigInt::from(d));
    let step = BigInt::from(4) * &d * &d;
    let mut lhs = &step * &d * &d;
    let mut l = 0;
    while lhs <= q {
        l += 1;
        lhs *= &step;
    }
    l.max(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{make_field, FieldSpec};
    use crate::fpoly::DEFAULT_DEGREE_BUDGET;
    use proptest::prelude::*;

    const BUDGET: u64 = DEFAULT_DEGREE_BUDGET;

    fn f7() -> FieldSpec {
        make_field(7, 1, None).unwrap()
    }

    #[test]
    fn char_sum_examples() {
        for (p, k) in [(3, 1), (7, 1), (3, 2), (5, 2)] {
            let field = make_field(p, k, None).unwrap();
            assert_eq!(char_sum(&Poly::x(&field)), 0);
        }
        let f = f7();
        assert_eq!(char_sum(&Poly::from_ints(&f, &[1, 0, 1])), -1);
        assert_eq!(char_sum(&Poly::from_ints(&f, &[0, 0, 1])), 6);
    }

    #[test]
    fn weil_examples() {
        let f = f7();
        let w = weil_check(&Poly::from_ints(&f, &[1, 0, 1]));
        assert_eq!(w, WeilCheck::Applies { sum: -1, degree: 2, q: 7, pass: true });
        assert_eq!(w.margin(), Some(6));
        assert_eq!(
            weil_check(&Poly::from_ints(&f, &[0, 0, 3])),
            WeilCheck::NotApplicable("constant-times-square")
        );
        let f9 = make_field(3, 2, None).unwrap();
        assert_eq!(weil_check(&Poly::x(&f9)).margin(), Some(0));
    }

    #[test]
    fn b_examples() {
        let f = f7();
        let sq = Poly::from_ints(&f, &[0, 0, 1]);
        // six nonzero x contribute 1 each and x = 0 contributes 1/4
        let quarter = BigRational::new(1.into(), 4.into());
        assert_eq!(compute_b(&sq, f.from_i64(2), 0, 2, BUDGET).unwrap(), int(6) + &quarter);
        let r = orbit_bound_check(&sq, f.from_i64(2), 2, BUDGET).unwrap();
        assert_eq!(r.orbit_size, 2);
        assert_eq!(r.checks[0].1.rational, int(11) + quarter);
        assert!(r.pass());

        // L = 1 and s = +1: #{chi(f(x)) = 1} + #{f(x) = 0} / 2
        let g = Poly::from_ints(&f, &[-2, 0, 1]);
        let a = f.one();
        let signs = SignSequence::from_orbit(&f, &forward_orbit(&g, a));
        let plus = (1..7).find(|&i| signs.at(1 + i) == 1);
        if let Some(i) = plus {
            let b = compute_b(&g, a, i, 1, BUDGET).unwrap();
            let sq_count = f.elements().filter(|&x| f.chi(g.evaluate(x)) == 1).count() as i64;
            let zeros = f.elements().filter(|&x| g.evaluate(x).is_zero()).count() as i64;
            assert_eq!(b, int(sq_count) + BigRational::new(zeros.into(), 2.into()));
        }
        let fixed = forward_orbit(&sq, f.one());
        assert_eq!(fixed.size(), 1);
        assert!(orbit_bound_check(&sq, f.one(), 3, BUDGET).unwrap().pass());
        assert_eq!(orbit_bound_check(&sq, f.from_i64(3), 1, BUDGET).unwrap_err(), Error::NotPurelyPeriodic);
    }

    #[test]
    fn envelope_examples() {
        let f = f7();
        let g = Poly::from_ints(&f, &[1, 0, 1]);
        for a in f.elements() {
            match envelope_check(&g, a, 0, 1, BUDGET) {
                Ok(ineq) => assert!(ineq.holds()),
                Err(e) => assert_eq!(e, Error::NotPurelyPeriodic),
            }
        }
        assert_eq!(
            envelope_check(&Poly::from_ints(&f, &[0, 0, 1]), f.one(), 0, 1, BUDGET),
            Err(Error::NotTwoOrdinary)
        );
        let e = envelope(7, 2, 1, int(7));
        assert!(e.holds());
        assert!((e.rhs_f64() - (3.5 + 4.0 * 7f64.sqrt())).abs() < 1e-9);
        // (B - q/2^L)^2 versus d^(2L+2) q at the edge
        let tight = Inequality { lhs: int(5), rational: int(1), coeff: int(2), radicand: BigInt::from(4) };
        assert!(tight.holds());
        let over = Inequality { lhs: int(6), rational: int(1), coeff: int(2), radicand: BigInt::from(4) };
        assert!(!over.holds());
    }

    #[test]
    fn t_set_examples() {
        let f = f7();
        let sq = Poly::from_ints(&f, &[0, 0, 1]);
        assert_eq!(t_set_size(&sq, 0, 1, BUDGET).unwrap(), 7);
        assert_eq!(t_set_size(&sq, 1, 1, BUDGET).unwrap(), 6);
        let g = Poly::from_ints(&f, &[1, 0, 1]);
        let brute = f
            .elements()
            .filter(|&x| {
                let y1 = g.evaluate(x);
                let y2 = g.evaluate(y1);
                f.chi(y1) == 1 && f.chi(y2) == 1
            })
            .count();
        assert_eq!(t_set_size(&g, 2, 1, BUDGET).unwrap(), brute);
    }

    #[test]
    fn run_bound_examples() {
        let f = f7();
        let g = Poly::from_ints(&f, &[1, 0, 1]);
        for a in f.elements() {
            let r = run_bound_check(&g, a, BUDGET).unwrap();
            assert!(r.pass());
        }
        let sq = Poly::from_ints(&f, &[0, 0, 1]);
        let r = run_bound_check(&sq, f.from_i64(2), BUDGET).unwrap();
        assert!(r.notes[0].contains("excluded"));
    }

    #[test]
    fn choose_l_examples() {
        assert_eq!(choose_l(1_000_000, 2), 4);
        assert_eq!(choose_l(9, 2), 1);
        // 4^L d^(2L) d^2 = q exactly at the boundary
        for d in [2usize, 3] {
            for l in 1..5u32 {
                let q = (4 * d * d).pow(l) as u64 * (d * d) as u64;
                assert_eq!(choose_l(q, d), l as usize);
                assert_eq!(choose_l(q - 1, d), (l as usize - 1).max(1));
            }
        }
    }

    /// `2^L B_i = q + sum over nonempty T of prod s(t+i) sum_x chi(prod f^t(x))`
    #[test]
    fn b_expansion_identity() {
        for (p, k) in [(3, 1), (5, 1), (7, 1), (3, 2)] {
            let field = make_field(p, k, None).unwrap();
            let q = field.q() as i64;
            for (c0, c1) in [(1, 0), (2, 1), (1, 1), (0, 2)] {
                let f = Poly::from_ints(&field, &[c0, c1, 1]);
                for a in field.elements() {
                    let signs = SignSequence::from_orbit(&field, &forward_orbit(&f, a));
                    if !signs.purely_periodic {
                        continue;
                    }
                    for l in 1..=3usize {
                        let table = CharTable::new(&f, l);
                        for i in 0..signs.sign_period {
                            let b = b_from_table(&table, &signs, i, l);
                            let mut total = q;
                            for mask in 1u32..(1 << l) {
                                let sign: i64 = (0..l)
                                    .filter(|t| mask & (1 << t) != 0)
                                    .map(|t| i64::from(signs.at(t + 1 + i)))
                                    .product();
                                let inner: i64 = field
                                    .elements()
                                    .map(|x| {
                                        let mut y = x;
                                        let mut prod = field.one();
                                        for t in 0..l {
                                            y = f.evaluate(y);
                                            if mask & (1 << t) != 0 {
                                                prod = field.mul(prod, y);
                                            }
                                        }
                                        i64::from(field.chi(prod))
                                    })
                                    .sum();
                                total += sign * inner;
                            }
                            assert_eq!(b * int(1i64 << l), int(total));
                        }
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn t_sets_shrink_and_sums_are_translation_invariant(
            coeffs in prop::collection::vec(0i64..13, 2..5),
            lead in 1i64..13,
            a in 1i64..13,
            b in 0i64..13,
        ) {
            let field = make_field(13, 1, None).unwrap();
            let mut c = coeffs;
            c.push(lead);
            let f = Poly::from_ints(&field, &c);
            let table = CharTable::new(&f, 4);
            for l in 1..4 {
                prop_assert!(table.t_set_size(l + 1, 1) <= table.t_set_size(l, 1));
                prop_assert!(table.t_set_size(l + 1, -1) <= table.t_set_size(l, -1));
            }
            let sub = f.compose(&Poly::from_ints(&field, &[b, a]));
            prop_assert_eq!(char_sum(&sub), char_sum(&f));
            if let WeilCheck::Applies { pass, .. } = weil_check(&f) {
                prop_assert!(pass);
            }
        }
    }
}
