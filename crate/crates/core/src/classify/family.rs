//! Members of the two recurrence families.

use crate::error::{Error, Result};
use crate::ff::{FieldElement, FieldSpec};
use crate::fpoly::Poly;

use super::{numerator_d, numerator_e};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `A h^2 + B`, even degree.
    D,
    /// `A (x - B) g^2`, odd degree.
    E,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    pub family: Family,
    pub field: FieldSpec,
    pub a: FieldElement,
    pub b: FieldElement,
    pub sign: Sign,
}

/// Builds the degree-`d` member of the family from `a_0` and the
/// coefficient recurrence.
pub fn generate_family(params: &FamilyParams, d: usize) -> Result<Poly> {
    let FamilyParams { family, field, a, b, sign } = params;
    let (a, b) = (*a, *b);
    if d < 2 {
        return Err(Error::DegreeTooSmall(d));
    }
    let (letter, want_even) = match family {
        Family::D => ('d', true),
        Family::E => ('e', false),
    };
    if (d % 2 == 0) != want_even {
        return Err(Error::ParityMismatch { family: letter, degree: d });
    }
    if a.is_zero() {
        return Err(Error::ZeroA);
    }
    if b.is_zero() {
        return Err(Error::DegenerateParams);
    }
    let n = d / 2;
    let mut divisors = Vec::with_capacity(n);
    for i in 1..=n {
        let i = i as i64;
        let div = field.mul(field.from_i64(i * (2 * i - 1)), b);
        if div.is_zero() {
            return Err(Error::RecurrenceDivisorVanishes(i as usize));
        }
        divisors.push(div);
    }
    let radicand = match family {
        Family::D => field.div(field.neg(b), a)?,
        Family::E => field.div(field.neg(field.one()), a)?,
    };
    let root = field.sqrt(radicand).map_err(|_| Error::SqrtDoesNotExist)?;
    let a0 = match sign {
        Sign::Plus => root,
        Sign::Minus => field.neg(root),
    };
    let numerator = match family {
        Family::D => numerator_d,
        Family::E => numerator_e,
    };
    let mut coeffs = vec![a0];
    for (i, div) in (1..=n).zip(divisors) {
        let num = field.from_i64(-2 * numerator(n as i64, i as i64));
        coeffs.push(field.div(field.mul(num, coeffs[i - 1]), div)?);
    }
    let root_poly = Poly::new(field, coeffs);
    let f = match family {
        Family::D => &(&root_poly * &root_poly).scale(a) + &Poly::constant(field, b),
        Family::E => (&Poly::linear(field, b) * &(&root_poly * &root_poly)).scale(a),
    };
    debug_assert_eq!(f.degree(), Some(d));
    Ok(f)
}
