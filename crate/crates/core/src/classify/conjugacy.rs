//! Affine conjugacy over `F_q`.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ff::{FieldElement, FieldSpec};
use crate::fpoly::Poly;

use super::chebyshev::chebyshev;

/// `phi(x) = a x + b` with `a != 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Conjugator {
    pub a: FieldElement,
    pub b: FieldElement,
}

impl Conjugator {
    pub fn as_poly(&self, field: &FieldSpec) -> Poly {
        Poly::new(field, vec![self.b, self.a])
    }

    pub fn apply(&self, field: &FieldSpec, x: FieldElement) -> FieldElement {
        field.add(field.mul(self.a, x), self.b)
    }

    pub fn to_json(&self, field: &FieldSpec) -> Value {
        json!({"a": field.format(self.a), "b": field.format(self.b)})
    }
}

/// First `phi` in `(a, b)` enumeration order with `phi o f o phi^-1 = g`.
pub fn are_conjugate(f: &Poly, g: &Poly) -> Result<Option<Conjugator>> {
    if f.field() != g.field() {
        return Err(Error::MixedFields);
    }
    if f.degree() != g.degree() {
        return Err(Error::DegreeMismatch);
    }
    let field = f.field();
    let Some(d) = f.degree() else {
        return Ok((f == g).then_some(Conjugator { a: field.one(), b: field.zero() }));
    };
    // phi o f = g o phi; leading terms give a lc(f) = lc(g) a^d
    let ratio = field.div(f.leading(), g.leading())?;
    for a in field.elements().skip(1) {
        if d >= 1 && field.pow(a, d as u64 - 1) != ratio {
            continue;
        }
        for b in field.elements() {
            let phi = Conjugator { a, b };
            let lhs = &f.scale(a) + &Poly::constant(field, b);
            if lhs == g.compose(&phi.as_poly(field)) {
                return Ok(Some(phi));
            }
        }
    }
    Ok(None)
}

/// Conjugacy of `f` to `+T_d` and to `-T_d` reduced into `F_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChebyshevMatch {
    pub plus: Option<Conjugator>,
    pub minus: Option<Conjugator>,
}

impl ChebyshevMatch {
    /// `"+"`, `"-"`, `"+-"` or `""`.
    pub fn signs(&self) -> String {
        let mut s = String::new();
        if self.plus.is_some() {
            s.push('+');
        }
        if self.minus.is_some() {
            s.push('-');
        }
        s
    }

    pub fn to_json(&self, field: &FieldSpec) -> Value {
        json!({
            "plus_T": self.plus.map(|c| c.to_json(field)),
            "minus_T": self.minus.map(|c| c.to_json(field)),
            "signs": self.signs(),
        })
    }
}

pub fn chebyshev_conjugacy(f: &Poly) -> Result<ChebyshevMatch> {
    let field = f.field();
    let d = f.degree().ok_or(Error::DegreeTooSmall(0))?;
    let t = chebyshev(d).reduce(field);
    if t.degree() != Some(d) {
        // 2^(d-1) vanishes only in characteristic 2
        return Ok(ChebyshevMatch { plus: None, minus: None });
    }
    let neg_t = t.scale(field.neg(field.one()));
    Ok(ChebyshevMatch { plus: are_conjugate(f, &t)?, minus: are_conjugate(f, &neg_t)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::forward_orbit;
    use crate::ff::make_field;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let f7 = make_field(7, 1, None).unwrap();
        let f = Poly::from_ints(&f7, &[0, 4, 5]);
        assert_eq!(are_conjugate(&f, &f).unwrap(), Some(Conjugator { a: f7.one(), b: f7.zero() }));
        let g = Poly::from_ints(&f7, &[1, 0, 5]);
        let phi = are_conjugate(&f, &g).unwrap().unwrap();
        assert_eq!(phi, Conjugator { a: f7.one(), b: f7.from_i64(6) });
        let m = chebyshev_conjugacy(&f).unwrap();
        assert!(m.minus.is_some());

        let f3 = make_field(3, 1, None).unwrap();
        assert_eq!(
            are_conjugate(&Poly::from_ints(&f3, &[0, 0, 1]), &Poly::from_ints(&f3, &[1, 0, 1])).unwrap(),
            None
        );
        assert_eq!(
            are_conjugate(&Poly::from_ints(&f3, &[0, 0, 1]), &Poly::from_ints(&f3, &[1, 0, 0, 1])),
            Err(Error::DegreeMismatch)
        );
        let f5 = make_field(5, 1, None).unwrap();
        assert_eq!(
            are_conjugate(&Poly::from_ints(&f3, &[0, 0, 1]), &Poly::from_ints(&f5, &[0, 0, 1])),
            Err(Error::MixedFields)
        );
    }

    proptest! {
        #[test]
        fn conjugation_preserves_orbit_shape(
            coeffs in prop::collection::vec(0i64..11, 3..6),
            lead in 1i64..11,
            a in 1i64..11,
            b in 0i64..11,
            start in 0i64..11,
        ) {
            let field = make_field(11, 1, None).unwrap();
            let mut c = coeffs;
            c.push(lead);
            let f = Poly::from_ints(&field, &c);
            let phi = Conjugator { a: field.from_i64(a), b: field.from_i64(b) };
            let inv = Conjugator {
                a: field.inv(phi.a).unwrap(),
                b: field.neg(field.div(phi.b, phi.a).unwrap()),
            };
            let g = phi.as_poly(&field).compose(&f.compose(&inv.as_poly(&field)));
            let found = are_conjugate(&f, &g).unwrap();
            prop_assert!(found.is_some());
            let x = field.from_i64(start);
            let o1 = forward_orbit(&f, x);
            let o2 = forward_orbit(&g, phi.apply(&field, x));
            prop_assert_eq!((o1.tail, o1.period), (o2.tail, o2.period));
        }
    }
}
