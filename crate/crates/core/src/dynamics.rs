//! Orbits of points under a polynomial map and the quadratic-character
//! pattern along them.

use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ext::Extension;
use crate::ff::{FieldElement, FieldSpec};
use crate::fpoly::{check_budget, Factorization, Poly};

/// Tail/cycle decomposition of the forward orbit of one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitSummary {
    pub start: FieldElement,
    pub tail: usize,
    pub period: usize,
    /// `f^0(a), ..., f^(tail + period - 1)(a)`, all distinct.
    pub elements: Vec<FieldElement>,
    pub contains_zero_at: Option<usize>,
}

impl OrbitSummary {
    fn from_walk(elements: Vec<FieldElement>, tail: usize) -> Self {
        let period = elements.len() - tail;
        let contains_zero_at = elements.iter().position(|x| x.is_zero());
        OrbitSummary { start: elements[0], tail, period, elements, contains_zero_at }
    }

    /// `|O_f(a)|`
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn is_periodic(&self) -> bool {
        self.tail == 0
    }

    /// `f^n(a)` for any `n`.
    pub fn at(&self, n: usize) -> FieldElement {
        self.elements[wrap_index(n, self.tail, self.period)]
    }

    pub fn to_json(&self, field: &FieldSpec) -> Value {
        json!({
            "start": field.format(self.start),
            "tail": self.tail,
            "period": self.period,
            "elements": self.elements.iter().map(|&x| field.format(x)).collect::<Vec<_>>(),
            "contains_zero_at": self.contains_zero_at,
        })
    }
}

fn wrap_index(n: usize, tail: usize, period: usize) -> usize {
    if n < tail + period {
        n
    } else {
        tail + (n - tail) % period
    }
}

/// Walks `a, f(a), f^2(a), ...` until a point repeats.
pub fn forward_orbit(f: &Poly, a: FieldElement) -> OrbitSummary {
    let mut seen = HashMap::new();
    let mut elements = Vec::new();
    let mut x = a;
    let tail = loop {
        if let Some(&i) = seen.get(&x) {
            break i;
        }
        seen.insert(x, elements.len());
        elements.push(x);
        x = f.evaluate(x);
    };
    OrbitSummary::from_walk(elements, tail)
}

/// The map `x -> f(x)` tabulated on all of `F_q`, for scanning many
/// starting points of the same polynomial.
pub struct FunctionalGraph {
    field: FieldSpec,
    succ: Vec<u32>,
}

impl FunctionalGraph {
    pub fn new(f: &Poly) -> Self {
        let field = f.field().clone();
        let succ = field.elements().map(|x| f.evaluate(x).index() as u32).collect();
        FunctionalGraph { field, succ }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn image(&self, x: FieldElement) -> FieldElement {
        self.field.element(u64::from(self.succ[x.index() as usize])).expect("in range")
    }

    pub fn orbit(&self, a: FieldElement) -> OrbitSummary {
        let mut idx = a.index() as u32;
        let mut order = Vec::new();
        let tail = if self.succ.len() <= DENSE_LIMIT {
            let mut pos = vec![u32::MAX; self.succ.len()];
            loop {
                let p = pos[idx as usize];
                if p != u32::MAX {
                    break p as usize;
                }
                pos[idx as usize] = order.len() as u32;
                order.push(idx);
                idx = self.succ[idx as usize];
            }
        } else {
            let mut seen = HashMap::new();
            loop {
                if let Some(&i) = seen.get(&idx) {
                    break i;
                }
                seen.insert(idx, order.len());
                order.push(idx);
                idx = self.succ[idx as usize];
            }
        };
        let elements = order
            .into_iter()
            .map(|i| self.field.element(u64::from(i)).expect("in range"))
            .collect();
        OrbitSummary::from_walk(elements, tail)
    }
}

const DENSE_LIMIT: usize = 1 << 16;

/// The sequence `chi(f^l(a))` for `l >= 0` with its eventual period.
///
/// `at(l)` is indexed from `l = 0`; the sequence written `s_a(l)`, `l >= 1`,
/// in the bound computations is the same function restricted to `l >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignSequence {
    /// One value per orbit element, so the infinite sequence is determined
    /// by wrapping around the orbit's cycle.
    pub signs: Vec<i8>,
    orbit_tail: usize,
    orbit_period: usize,
    pub sign_tail: usize,
    pub sign_period: usize,
    pub purely_periodic: bool,
}

impl SignSequence {
    pub fn from_orbit(field: &FieldSpec, orbit: &OrbitSummary) -> Self {
        let signs: Vec<i8> = orbit.elements.iter().map(|&x| field.chi(x)).collect();
        let (tail, period) = (orbit.tail, orbit.period);
        let cycle = &signs[tail..];
        let sign_period = (1..=period)
            .filter(|m| period % m == 0)
            .find(|&m| (0..period).all(|i| cycle[i] == cycle[(i + m) % period]))
            .expect("the full period always works");
        let mut seq = SignSequence {
            signs,
            orbit_tail: tail,
            orbit_period: period,
            sign_tail: tail,
            sign_period,
            purely_periodic: false,
        };
        let mut t = tail;
        while t > 0 && seq.at(t - 1) == seq.at(t - 1 + sign_period) {
            t -= 1;
        }
        seq.sign_tail = t;
        seq.purely_periodic = t == 0;
        seq
    }

    /// `chi(f^l(a))`
    pub fn at(&self, l: usize) -> i8 {
        self.signs[wrap_index(l, self.orbit_tail, self.orbit_period)]
    }

    pub fn to_json(&self) -> Value {
        json!({
            "signs": self.signs,
            "sign_tail": self.sign_tail,
            "sign_period": self.sign_period,
            "purely_periodic": self.purely_periodic,
        })
    }
}

pub fn sign_sequence(f: &Poly, a: FieldElement) -> SignSequence {
    SignSequence::from_orbit(f.field(), &forward_orbit(f, a))
}

/// Longest block of consecutive iterates with a fixed character value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunInfo {
    /// Number of distinct orbit elements in the run.
    pub length: usize,
    /// Index of the first iterate of the run.
    pub start: usize,
    /// The run covers the entire cycle, so as a sequence of iterates it
    /// never ends; `length` then counts distinct elements.
    pub cycle_constant: bool,
}

pub fn longest_run(f: &Poly, a: FieldElement, target: i8) -> RunInfo {
    let orbit = forward_orbit(f, a);
    let signs = SignSequence::from_orbit(f.field(), &orbit);
    longest_run_in(&orbit, &signs, target)
}

/// [`longest_run`] for an orbit that is already computed.
pub fn longest_run_in(orbit: &OrbitSummary, signs: &SignSequence, target: i8) -> RunInfo {
    let (tail, period) = (orbit.tail, orbit.period);
    if signs.signs[tail..].iter().all(|&s| s == target) {
        let lead = signs.signs[..tail].iter().rev().take_while(|&&s| s == target).count();
        return RunInfo { length: period + lead, start: tail - lead, cycle_constant: true };
    }
    let mut best = RunInfo { length: 0, start: 0, cycle_constant: false };
    let mut current = 0;
    for i in 0..tail + 2 * period {
        if signs.at(i) == target {
            current += 1;
            if current > best.length {
                best = RunInfo { length: current, start: i + 1 - current, cycle_constant: false };
            }
        } else {
            current = 0;
        }
    }
    best
}

/// Irreducible factorizations of `f^n - alpha` for `n = 0, 1, 2, ...`.
///
/// Level `n` is obtained from level `n - 1` by factoring each `g(f(x))`
/// separately, using `f^n - alpha = (f^(n-1) - alpha) o f`. Yields an error
/// (and then stops) once `deg(f)^n` exceeds the budget.
pub struct LevelFactorizations {
    f: Poly,
    budget: u64,
    seed: u64,
    level: u32,
    current: Option<Factorization>,
    failed: bool,
}

impl LevelFactorizations {
    pub fn new(f: &Poly, alpha: FieldElement, budget: u64, seed: u64) -> Self {
        let field = f.field();
        let level0 = Factorization { unit: field.one(), factors: vec![(Poly::linear(field, alpha), 1)] };
        LevelFactorizations { f: f.clone(), budget, seed, level: 0, current: Some(level0), failed: false }
    }

    fn advance(&self, prev: &Factorization) -> Result<Factorization> {
        let field = self.f.field();
        check_budget(self.f.degree().unwrap_or(0), self.level, self.budget)?;
        let mut unit = prev.unit;
        let mut factors = Vec::new();
        for (g, m) in &prev.factors {
            let composed = g.compose(&self.f);
            let fac = composed.factor(self.seed)?;
            unit = field.mul(unit, field.pow(fac.unit, u64::from(*m)));
            factors.extend(fac.factors.into_iter().map(|(h, k)| (h, k * m)));
        }
        factors.sort();
        Ok(Factorization { unit, factors })
    }
}

impl Iterator for LevelFactorizations {
    type Item = Result<(u32, Factorization)>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        let fac = match self.current.take() {
            Some(fac) => fac,
            None => {
                return None;
            }
        };
        let level = self.level;
        self.level += 1;
        match self.advance(&fac) {
            Ok(next) => self.current = Some(next),
            Err(Error::DegreeBudgetExceeded { .. }) => self.current = None,
            Err(e) => {
                self.failed = true;
                return Some(Err(e));
            }
        }
        Some(Ok((level, fac)))
    }
}

/// Factorizations of `f^n - alpha` for `n = 0..=depth`.
pub fn level_factorizations(
    f: &Poly,
    alpha: FieldElement,
    depth: u32,
    budget: u64,
    seed: u64,
) -> Result<Vec<Factorization>> {
    check_budget(f.degree().unwrap_or(0), depth, budget)?;
    LevelFactorizations::new(f, alpha, budget, seed)
        .take(depth as usize + 1)
        .map(|r| r.map(|(_, fac)| fac))
        .collect()
}

/// Roots of `f^n - alpha` over a fixed extension of the base field.
#[derive(Clone, Debug)]
pub struct ExtensionPoints {
    pub degree: usize,
    pub field: FieldSpec,
    pub points: Vec<FieldElement>,
}

/// The level `R_{n,alpha}` of the preimage tree of `alpha`.
#[derive(Clone, Debug)]
pub struct PreimageLevel {
    pub level: u32,
    pub base: FieldElement,
    /// Points in `F_q`.
    pub rational: Vec<FieldElement>,
    /// Points whose minimal polynomial has degree `2..=max_ext`.
    pub extension: Vec<ExtensionPoints>,
    /// `(degree, count)` of irreducible factors beyond the extension cap.
    pub uncounted: Vec<(usize, usize)>,
    pub factorization: Factorization,
}

impl PreimageLevel {
    /// Sum of root multiplicities over the algebraic closure.
    pub fn total_multiplicity(&self) -> usize {
        self.factorization.total_degree()
    }
}

pub fn preimages(
    f: &Poly,
    alpha: FieldElement,
    n: u32,
    max_ext: usize,
    budget: u64,
    seed: u64,
) -> Result<PreimageLevel> {
    let field = f.field();
    let factorization = level_factorizations(f, alpha, n, budget, seed)?.pop().expect("depth + 1 levels");
    let mut rational = Vec::new();
    let mut by_degree: BTreeMap<usize, Vec<&Poly>> = BTreeMap::new();
    for (g, _) in &factorization.factors {
        let d = g.degree().expect("nonconstant");
        if d == 1 {
            rational.push(field.neg(g.coeff(0)));
        } else {
            by_degree.entry(d).or_default().push(g);
        }
    }
    rational.sort();
    let mut extension = Vec::new();
    let mut uncounted = Vec::new();
    for (d, gs) in by_degree {
        let ext = if d <= max_ext { Extension::new(field, d).ok() } else { None };
        match ext {
            Some(ext) => {
                let mut points = Vec::new();
                for g in gs {
                    points.extend(ext.roots(g)?);
                }
                points.sort();
                extension.push(ExtensionPoints { degree: d, field: ext.field().clone(), points });
            }
            None => uncounted.push((d, gs.len())),
        }
    }
    Ok(PreimageLevel { level: n, base: alpha, rational, extension, uncounted, factorization })
}

/// A point lying on two different levels of a preimage tree.
#[derive(Clone, Debug)]
pub struct RepeatWitness {
    pub levels: (u32, u32),
    /// Minimal polynomial of the point over `F_q`.
    pub min_poly: Poly,
    /// The point itself, in `F_q` or in the extension of matching degree.
    pub point: FieldElement,
    pub point_field: FieldSpec,
}

/// Looks for `R_{n,alpha} ∩ R_{m,alpha} != ∅` with `n < m <= depth`, using
/// only points of degree at most `max_ext`. `None` means no repetition was
/// found up to `depth`, not that the tree is non-repeating.
pub fn tree_is_repeating(
    f: &Poly,
    alpha: FieldElement,
    depth: u32,
    max_ext: usize,
    budget: u64,
    seed: u64,
) -> Result<Option<RepeatWitness>> {
    let levels = level_factorizations(f, alpha, depth, budget, seed)?;
    let mut first_seen: HashMap<Poly, u32> = HashMap::new();
    for (m, fac) in levels.iter().enumerate() {
        let m = m as u32;
        for (g, _) in &fac.factors {
            let d = g.degree().expect("nonconstant");
            if d > max_ext {
                continue;
            }
            if let Some(&n) = first_seen.get(g) {
                let (point, point_field) = if d == 1 {
                    (f.field().neg(g.coeff(0)), f.field().clone())
                } else {
                    let ext = Extension::new(f.field(), d)?;
                    (ext.roots(g)?[0], ext.field().clone())
                };
                return Ok(Some(RepeatWitness { levels: (n, m), min_poly: g.clone(), point, point_field }));
            }
            first_seen.insert(g.clone(), m);
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_field;
    use crate::fpoly::DEFAULT_DEGREE_BUDGET;
    use proptest::prelude::*;

    fn f7() -> FieldSpec {
        make_field(7, 1, None).unwrap()
    }

    fn naive_orbit(f: &Poly, a: FieldElement) -> (usize, usize, Vec<FieldElement>) {
        let mut list = vec![a];
        loop {
            let next = f.evaluate(*list.last().unwrap());
            if let Some(i) = list.iter().position(|&y| y == next) {
                return (i, list.len() - i, list);
            }
            list.push(next);
        }
    }

    #[test]
    fn orbit_examples() {
        let f = f7();
        let sq = Poly::from_ints(&f, &[0, 0, 1]);
        let o = forward_orbit(&sq, f.from_i64(3));
        assert_eq!((o.tail, o.period), (1, 2));
        assert_eq!(o.elements, vec![f.from_i64(3), f.from_i64(2), f.from_i64(4)]);
        let id = Poly::x(&f);
        let o = forward_orbit(&id, f.from_i64(5));
        assert_eq!((o.tail, o.period), (0, 1));
        let f3 = make_field(3, 1, None).unwrap();
        let g = Poly::from_ints(&f3, &[1, 0, 1]);
        let o = forward_orbit(&g, f3.zero());
        assert_eq!((o.tail, o.period), (2, 1));
        assert_eq!(o.contains_zero_at, Some(0));
    }

    #[test]
    fn sign_sequence_examples() {
        let f = f7();
        let sq = Poly::from_ints(&f, &[0, 0, 1]);
        let s = sign_sequence(&sq, f.from_i64(3));
        assert_eq!(&s.signs, &[-1, 1, 1]);
        assert_eq!((s.sign_tail, s.sign_period, s.purely_periodic), (1, 1, false));
        let s = sign_sequence(&sq, f.from_i64(1));
        assert_eq!((s.at(0), s.sign_period, s.purely_periodic), (1, 1, true));
        let s = sign_sequence(&sq, f.zero());
        assert_eq!((s.at(5), s.sign_period), (0, 1));
    }

    #[test]
    fn run_examples() {
        let f = f7();
        let sq = Poly::from_ints(&f, &[0, 0, 1]);
        let run = longest_run(&sq, f.from_i64(3), 1);
        assert_eq!(run, RunInfo { length: 2, start: 1, cycle_constant: true });
        // x -> x + 1 from 0 on F_7: signs 0 + + - + - -
        let shift = Poly::from_ints(&f, &[1, 1]);
        let run = longest_run(&shift, f.zero(), 1);
        assert!(!run.cycle_constant);
        assert_eq!(run.length, 2);
        let run = longest_run(&shift, f.zero(), -1);
        assert_eq!(run.length, 2);
    }

    #[test]
    fn zero_breaks_runs() {
        // orbit 1 -> 0 -> 2 -> 2 over F_7 with signs +, 0, +
        let f = f7();
        let orbit = OrbitSummary::from_walk(vec![f.one(), f.zero(), f.from_i64(2)], 2);
        let signs = SignSequence::from_orbit(&f, &orbit);
        assert_eq!(&signs.signs, &[1, 0, 1]);
        let run = longest_run_in(&orbit, &signs, 1);
        assert_eq!((run.length, run.cycle_constant), (1, true));
    }

    #[test]
    fn preimage_examples() {
        let f = f7();
        let sq = Poly::from_ints(&f, &[0, 0, 1]);
        let lvl = preimages(&sq, f.from_i64(4), 0, 1, DEFAULT_DEGREE_BUDGET, 0).unwrap();
        assert_eq!(lvl.rational, vec![f.from_i64(4)]);
        let lvl = preimages(&sq, f.from_i64(4), 1, 1, DEFAULT_DEGREE_BUDGET, 0).unwrap();
        assert_eq!(lvl.rational, vec![f.from_i64(2), f.from_i64(5)]);
        let lvl = preimages(&sq, f.from_i64(3), 1, 1, DEFAULT_DEGREE_BUDGET, 0).unwrap();
        assert!(lvl.rational.is_empty());
        assert_eq!(lvl.uncounted, vec![(2, 1)]);
        let lvl = preimages(&sq, f.from_i64(3), 1, 2, DEFAULT_DEGREE_BUDGET, 0).unwrap();
        assert_eq!(lvl.extension.len(), 1);
        let ext = &lvl.extension[0];
        for &b in &ext.points {
            assert_eq!(ext.field.mul(b, b), ext.field.from_i64(3));
        }
        assert!(matches!(
            preimages(&sq, f.one(), 13, 1, DEFAULT_DEGREE_BUDGET, 0),
            Err(Error::DegreeBudgetExceeded { .. })
        ));
    }

    #[test]
    fn preimage_points_map_to_base() {
        let f9 = make_field(3, 2, None).unwrap();
        let g = Poly::parse(&f9, "t,1,1").unwrap();
        let alpha = f9.parse_element("1+t").unwrap();
        for n in 0..4 {
            let lvl = preimages(&g, alpha, n, 3, DEFAULT_DEGREE_BUDGET, 3).unwrap();
            assert_eq!(lvl.total_multiplicity(), 2usize.pow(n));
            let gn = g.iterate(n, DEFAULT_DEGREE_BUDGET).unwrap();
            for &b in &lvl.rational {
                assert_eq!(gn.evaluate(b), alpha);
            }
            for pts in &lvl.extension {
                let ext = Extension::new(&f9, pts.degree).unwrap();
                let gn_big = ext.embed_poly(&gn);
                for &b in &pts.points {
                    assert_eq!(gn_big.evaluate(b), ext.embed(alpha));
                }
            }
        }
    }

    #[test]
    fn repeating_tree_examples() {
        let f = f7();
        let sq = Poly::from_ints(&f, &[0, 0, 1]);
        let w = tree_is_repeating(&sq, f.one(), 3, 1, DEFAULT_DEGREE_BUDGET, 0).unwrap().unwrap();
        assert_eq!((w.levels, w.point), ((0, 1), f.one()));

        // 0 is not periodic under x^2 + 1 over F_7 and -1 is not a square,
        // so no level beyond the root has a rational point.
        let g = Poly::from_ints(&f, &[1, 0, 1]);
        assert!(tree_is_repeating(&g, f.zero(), 5, 1, DEFAULT_DEGREE_BUDGET, 0).unwrap().is_none());

        // x^2 - 1: 0 and -1 form a 2-cycle, so T_{f(0)} repeats and
        // contains 0.
        let h = Poly::from_ints(&f, &[-1, 0, 1]);
        let alpha = h.evaluate(f.zero());
        assert_eq!(forward_orbit(&h, f.zero()).period, 2);
        let w = tree_is_repeating(&h, alpha, 4, 1, DEFAULT_DEGREE_BUDGET, 0).unwrap().unwrap();
        assert_eq!(w.levels, (0, 2));
        assert_eq!(w.point, alpha);
        let lvl = preimages(&h, alpha, 1, 1, DEFAULT_DEGREE_BUDGET, 0).unwrap();
        assert_eq!(lvl.rational, vec![f.zero()]);
    }

    fn arb_case() -> impl Strategy<Value = (FieldSpec, Poly, FieldElement)> {
        prop::sample::select(vec![(3u64, 1usize), (5, 1), (7, 1), (3, 2), (11, 1), (5, 2), (3, 3)])
            .prop_flat_map(|(p, k)| {
                let field = make_field(p, k, None).unwrap();
                let q = field.q();
                (Just(field), prop::collection::vec(0..q, 2..=5), 1..q, 0..q)
            })
            .prop_map(|(field, mut idx, lead, a)| {
                idx.push(lead);
                let f = Poly::new(&field, idx.into_iter().map(|i| field.element(i).unwrap()).collect());
                let a = field.element(a).unwrap();
                (field, f, a)
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn orbit_matches_naive_simulation((field, f, a) in arb_case()) {
            let o = forward_orbit(&f, a);
            let (tail, period, list) = naive_orbit(&f, a);
            prop_assert_eq!((o.tail, o.period), (tail, period));
            prop_assert_eq!(&o.elements, &list);
            prop_assert_eq!(f.evaluate(*o.elements.last().unwrap()), o.elements[o.tail]);
            prop_assert_eq!(FunctionalGraph::new(&f).orbit(a), o.clone());

            let s = SignSequence::from_orbit(&field, &o);
            prop_assert_eq!(o.period % s.sign_period, 0);
            prop_assert!(s.sign_tail <= o.tail);
            if o.is_periodic() {
                prop_assert!(s.purely_periodic);
            }
            for i in s.sign_tail..s.sign_tail + 3 * o.size() {
                prop_assert_eq!(s.at(i), s.at(i + s.sign_period));
            }
            if s.sign_tail > 0 {
                prop_assert_ne!(s.at(s.sign_tail - 1), s.at(s.sign_tail - 1 + s.sign_period));
            }
            for m in 1..s.sign_period {
                prop_assert!((s.sign_tail..s.sign_tail + o.size()).any(|i| s.at(i) != s.at(i + m)));
            }
            let mut x = a;
            for l in 0..=10u32 {
                let fl = f.iterate(l, u64::MAX).unwrap();
                prop_assert_eq!(s.at(l as usize), field.chi(fl.evaluate(a)));
                prop_assert_eq!(fl.evaluate(a), x);
                x = f.evaluate(x);
                if f.degree().unwrap().pow(l + 1) > 256 { break; }
            }
        }

        #[test]
        fn level_degrees_sum_to_d_power((_field, f, a) in arb_case()) {
            let d = f.degree().unwrap();
            let depth = if d <= 3 { 3 } else { 2 };
            let levels = level_factorizations(&f, a, depth, DEFAULT_DEGREE_BUDGET, 1).unwrap();
            for (n, fac) in levels.iter().enumerate() {
                prop_assert_eq!(fac.total_degree(), d.pow(n as u32));
                let direct = &f.iterate(n as u32, DEFAULT_DEGREE_BUDGET).unwrap() - &Poly::constant(f.field(), a);
                prop_assert_eq!(fac.expand(f.field()), direct);
            }
        }
    }
}
