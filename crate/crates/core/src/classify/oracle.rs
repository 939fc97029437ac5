//! Finite-depth checks of the definitions by factoring the iterates.

use std::collections::HashSet;

use serde_json::{json, Value};

use crate::dynamics::LevelFactorizations;
use crate::error::{Error, Result};
use crate::fpoly::{saturating_degree, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleVerdict {
    /// No admissible new factor at this level: the definition fails.
    CertifiedNot(u32),
    /// Every level up to this one has a new factor. Not a proof.
    ConsistentUpTo(u32),
}

impl OracleVerdict {
    pub fn to_json(&self) -> Value {
        match self {
            OracleVerdict::CertifiedNot(n) => json!({"oracle": "CertifiedNot", "level": n}),
            OracleVerdict::ConsistentUpTo(n) => json!({"oracle": "ConsistentUpTo", "level": n}),
        }
    }
}

/// Largest `n` with `d^n <= budget`.
pub fn default_depth(d: usize, budget: u64) -> u32 {
    let mut n = 0;
    while n < 64 && saturating_degree(d, n + 1) <= budget {
        n += 1;
    }
    n
}

fn run(f: &Poly, depth: u32, budget: u64, seed: u64, odd_only: bool) -> Result<OracleVerdict> {
    let d = match f.degree() {
        Some(d) if d >= 2 => d,
        d => return Err(Error::DegreeTooSmall(d.unwrap_or(0))),
    };
    let field = f.field();
    let mut earlier: HashSet<Poly> = HashSet::new();
    let mut levels = LevelFactorizations::new(f, field.zero(), budget, seed);
    for n in 0..=depth {
        let Some(item) = levels.next() else {
            return Err(Error::DegreeBudgetExceeded { degree: saturating_degree(d, n), budget });
        };
        let (_, fac) = item?;
        if n > 0 {
            let fresh = fac
                .factors
                .iter()
                .any(|(g, m)| (!odd_only || m % 2 == 1) && !earlier.contains(g));
            if !fresh {
                return Ok(OracleVerdict::CertifiedNot(n));
            }
        }
        earlier.extend(fac.factors.into_iter().map(|(g, _)| g));
    }
    Ok(OracleVerdict::ConsistentUpTo(depth))
}

/// Looks for a level `n <= depth` at which `f^n` has no irreducible factor
/// of odd multiplicity that is absent from `f^0, ..., f^(n-1)`.
///
/// Levels are factored one at a time, so a certificate found early is
/// returned even when `d^depth` is over the budget.
pub fn oracle_2_ordinary(f: &Poly, depth: u32, budget: u64, seed: u64) -> Result<OracleVerdict> {
    run(f, depth, budget, seed, true)
}

/// As [`oracle_2_ordinary`] without the multiplicity condition.
pub fn oracle_ordinary(f: &Poly, depth: u32, budget: u64, seed: u64) -> Result<OracleVerdict> {
    run(f, depth, budget, seed, false)
}
