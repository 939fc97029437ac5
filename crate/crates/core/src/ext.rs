//! Embedding of `F_q` into `F_{q^e}`.

use crate::error::Result;
use crate::ff::{make_field, FieldElement, FieldSpec};
use crate::fpoly::Poly;

/// `F_q` inside `F_{q^e}`, where the larger field uses its default modulus
/// and `t` is sent to the smallest root of the base modulus.
#[derive(Clone, Debug)]
pub struct Extension {
    base: FieldSpec,
    big: FieldSpec,
    degree: usize,
    image_of_t: FieldElement,
}

impl Extension {
    pub fn new(base: &FieldSpec, degree: usize) -> Result<Self> {
        let big = make_field(base.p(), base.k() * degree, None)?;
        let image_of_t = if base.k() == 1 {
            big.zero()
        } else {
            let m = Poly::new(&big, base.modulus().iter().map(|&c| big.from_u64(c)).collect());
            m.factor(0)?
                .factors
                .iter()
                .filter(|(g, _)| g.degree() == Some(1))
                .map(|(g, _)| big.neg(g.coeff(0)))
                .min()
                .expect("the base modulus splits in the extension")
        };
        Ok(Extension { base: base.clone(), big, degree, image_of_t })
    }

    pub fn base(&self) -> &FieldSpec {
        &self.base
    }

    pub fn field(&self) -> &FieldSpec {
        &self.big
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn embed(&self, x: FieldElement) -> FieldElement {
        let big = &self.big;
        let coords = self.base.coords(x);
        if self.base.k() == 1 {
            return big.from_u64(coords[0]);
        }
        coords
            .iter()
            .rev()
            .fold(big.zero(), |acc, &c| big.add(big.mul(acc, self.image_of_t), big.from_u64(c)))
    }

    pub fn embed_poly(&self, f: &Poly) -> Poly {
        Poly::new(&self.big, f.coeffs().iter().map(|&c| self.embed(c)).collect())
    }

    /// Roots in the extension, sorted, without multiplicity.
    pub fn roots(&self, f: &Poly) -> Result<Vec<FieldElement>> {
        let g = self.embed_poly(f);
        if g.is_constant() {
            return Ok(Vec::new());
        }
        let mut roots: Vec<_> = g
            .factor(0)?
            .factors
            .iter()
            .filter(|(h, _)| h.degree() == Some(1))
            .map(|(h, _)| self.big.neg(h.coeff(0)))
            .collect();
        roots.sort();
        Ok(roots)
    }
}
