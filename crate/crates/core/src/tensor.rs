//! Tensor powers of a presented algebra.
//!
//! A [`TensorElem`] is a sparse combination of tuples of normal-form words.
//! Since normal-form word tuples form a basis of the tensor power, equality
//! and the zero test are decided by comparing term maps.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::freealg::{fmt_scalar, NCPoly, Scalar, Word};
use crate::rewrite::Algebra;

/// Tensor arities supported by slot maps: 0 (scalars) through 3.
pub const MAX_ARITY: usize = 3;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TensorElem {
    arity: usize,
    carrier: u64,
    terms: BTreeMap<Vec<Word>, Scalar>,
}

impl TensorElem {
    pub fn zero(arity: usize, carrier: u64) -> Self {
        TensorElem {
            arity,
            carrier,
            terms: BTreeMap::new(),
        }
    }

    /// `c` times the unit `1 ⊗ ... ⊗ 1`.
    pub fn unit(arity: usize, carrier: u64, c: Scalar) -> Self {
        let mut t = Self::zero(arity, carrier);
        t.add_term(vec![Word::one(); arity], c);
        t
    }

    /// Tensor product of elements, one per slot (slots are assumed normal).
    pub fn pure(alg: &dyn Algebra, slots: &[NCPoly]) -> Self {
        let mut acc: Vec<(Vec<Word>, Scalar)> = vec![(Vec::new(), Scalar::one())];
        for p in slots {
            let p = alg.normal_form(p);
            let mut next = Vec::new();
            for (ws, c) in &acc {
                for (w, d) in p.terms() {
                    let mut v = ws.clone();
                    v.push(w.clone());
                    next.push((v, c * d));
                }
            }
            acc = next;
        }
        let mut t = Self::zero(slots.len(), alg.tag());
        for (ws, c) in acc {
            t.add_term(ws, c);
        }
        t
    }

    /// Builds a tensor from raw terms, reducing every slot to normal form.
    pub fn from_raw(
        alg: &dyn Algebra,
        arity: usize,
        raw: impl IntoIterator<Item = (Vec<Word>, Scalar)>,
    ) -> Self {
        let mut t = Self::zero(arity, alg.tag());
        for (ws, c) in raw {
            let slots: Vec<NCPoly> = ws.into_iter().map(NCPoly::word).collect();
            t.add_assign(&Self::pure(alg, &slots).scale(&c));
        }
        t
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn carrier(&self) -> u64 {
        self.carrier
    }

    pub fn with_carrier(mut self, carrier: u64) -> Self {
        self.carrier = carrier;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, words: &[Word]) -> Scalar {
        self.terms.get(words).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, words: Vec<Word>, c: Scalar) {
        debug_assert_eq!(words.len(), self.arity);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(words) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &TensorElem) {
        self.add_scaled(other, &Scalar::one());
    }

    pub fn add_scaled(&mut self, other: &TensorElem, c: &Scalar) {
        debug_assert_eq!(self.arity, other.arity);
        for (ws, d) in &other.terms {
            self.add_term(ws.clone(), d * c);
        }
    }

    pub fn add(&self, other: &TensorElem) -> Result<TensorElem> {
        self.compatible(other)?;
        let mut out = self.clone();
        out.add_assign(other);
        Ok(out)
    }

    pub fn sub(&self, other: &TensorElem) -> Result<TensorElem> {
        self.compatible(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &-Scalar::one());
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> TensorElem {
        let mut out = Self::zero(self.arity, self.carrier);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        out
    }

    pub fn neg(&self) -> TensorElem {
        self.scale(&-Scalar::one())
    }

    fn compatible(&self, other: &TensorElem) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: other.arity,
            });
        }
        if self.carrier != other.carrier {
            return Err(Error::CarrierMismatch);
        }
        Ok(())
    }

    /// Scalar value of an arity-0 tensor.
    pub fn as_scalar(&self) -> Option<Scalar> {
        (self.arity == 0).then(|| self.coeff(&[]))
    }

    /// The element of an arity-1 tensor.
    pub fn as_poly(&self) -> Option<NCPoly> {
        (self.arity == 1)
            .then(|| NCPoly::from_terms(self.terms.iter().map(|(k, v)| (k[0].clone(), v.clone()))))
    }

    /// Swaps the two slots of an arity-2 tensor.
    pub fn flip(&self) -> TensorElem {
        let mut out = Self::zero(self.arity, self.carrier);
        for (k, v) in &self.terms {
            let mut k = k.clone();
            k.reverse();
            out.add_term(k, v.clone());
        }
        out
    }

    /// Replaces every basis tuple by a linear combination of tuples of a
    /// (possibly different) arity. `f` receives the slot index and word and
    /// returns the per-slot expansion.
    pub fn map_slots<F>(&self, out_arity: usize, carrier: u64, mut f: F) -> TensorElem
    where
        F: FnMut(usize, &Word) -> Vec<(Vec<Word>, Scalar)>,
    {
        let mut out = Self::zero(out_arity, carrier);
        for (ws, c) in &self.terms {
            let mut acc: Vec<(Vec<Word>, Scalar)> = vec![(Vec::new(), c.clone())];
            for (i, w) in ws.iter().enumerate() {
                let images = f(i, w);
                let mut next = Vec::with_capacity(acc.len() * images.len());
                for (prefix, a) in &acc {
                    for (frag, b) in &images {
                        let mut v = prefix.clone();
                        v.extend(frag.iter().cloned());
                        next.push((v, a * b));
                    }
                }
                acc = next;
                if acc.is_empty() {
                    break;
                }
            }
            for (v, a) in acc {
                out.add_term(v, a);
            }
        }
        out
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (ws, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let slots: Vec<String> = ws.iter().map(|w| w.fmt_with(names)).collect();
            let body = slots.join(" ox ");
            if abs.is_one() {
                s.push_str(&body);
            } else if ws.first().map_or(true, Word::is_one) {
                // coefficient replaces a leading unit slot
                let rest = slots.iter().skip(1).cloned().collect::<Vec<_>>();
                s.push_str(&fmt_scalar(&abs));
                for r in rest {
                    s.push_str(" ox ");
                    s.push_str(&r);
                }
            } else {
                s.push_str(&fmt_scalar(&abs));
                s.push('*');
                s.push_str(&body);
            }
        }
        s
    }
}

impl std::fmt::Debug for TensorElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(k, v)| (k, fmt_scalar(v))))
            .finish()
    }
}

/// Slotwise product `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`, reduced slot by slot.
pub fn t_mul(alg: &dyn Algebra, u: &TensorElem, v: &TensorElem) -> Result<TensorElem> {
    u.compatible(v)?;
    if u.carrier != alg.tag() {
        return Err(Error::CarrierMismatch);
    }
    let mut out = TensorElem::zero(u.arity, u.carrier);
    let mut cache: BTreeMap<(Word, Word), NCPoly> = BTreeMap::new();
    for (a, c) in &u.terms {
        for (b, d) in &v.terms {
            let cd = c * d;
            let mut acc: Vec<(Vec<Word>, Scalar)> = vec![(Vec::new(), cd)];
            for (x, y) in a.iter().zip(b) {
                let prod = cache
                    .entry((x.clone(), y.clone()))
                    .or_insert_with(|| alg.normal_form(&NCPoly::word(x.concat(y))));
                let mut next = Vec::with_capacity(acc.len() * prod.len());
                for (prefix, e) in &acc {
                    for (w, f) in prod.terms() {
                        let mut p = prefix.clone();
                        p.push(w.clone());
                        next.push((p, e * f));
                    }
                }
                acc = next;
            }
            for (k, e) in acc {
                out.add_term(k, e);
            }
        }
    }
    Ok(out)
}

/// Tensor product `a ⊗ b`, concatenating slots.
pub fn t_tensor(a: &TensorElem, b: &TensorElem) -> Result<TensorElem> {
    if a.carrier != b.carrier {
        return Err(Error::CarrierMismatch);
    }
    let arity = a.arity + b.arity;
    if arity > MAX_ARITY {
        return Err(Error::ArityOutOfRange(arity));
    }
    let mut out = TensorElem::zero(arity, a.carrier);
    for (x, c) in &a.terms {
        for (y, d) in &b.terms {
            let mut k = x.clone();
            k.extend(y.iter().cloned());
            out.add_term(k, c * d);
        }
    }
    Ok(out)
}

/// Multiplies slots `i` and `i + 1` together.
pub fn merge_slots(alg: &dyn Algebra, t: &TensorElem, i: usize) -> Result<TensorElem> {
    if i + 1 >= t.arity {
        return Err(Error::ArityOutOfRange(t.arity.saturating_sub(1)));
    }
    let mut out = TensorElem::zero(t.arity - 1, t.carrier);
    for (ws, c) in &t.terms {
        let prod = alg.normal_form(&NCPoly::word(ws[i].concat(&ws[i + 1])));
        for (w, d) in prod.terms() {
            let mut k = ws[..i].to_vec();
            k.push(w.clone());
            k.extend(ws[i + 2..].iter().cloned());
            out.add_term(k, c * d);
        }
    }
    Ok(out)
}

/// Total multiplication of all slots, left to right.
pub fn t_flatten(alg: &dyn Algebra, t: &TensorElem) -> NCPoly {
    let mut out = NCPoly::zero();
    for (ws, c) in &t.terms {
        let w = ws.iter().fold(Word::one(), |acc, w| acc.concat(w));
        out.add_term(w, c.clone());
    }
    alg.normal_form(&out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::scalar;
    use crate::rewrite::{Generator, Presentation};

    fn kyz() -> Presentation {
        Presentation::new(
            "k[y,z]",
            vec![Generator::plain("y"), Generator::plain("z")],
            &[(
                NCPoly::word(Word(vec![1, 0])),
                NCPoly::word(Word(vec![0, 1])),
            )],
        )
        .unwrap()
    }

    fn laurent() -> Presentation {
        Presentation::new(
            "laurent",
            vec![
                Generator {
                    name: "g".into(),
                    inverse: Some(1),
                    is_inverse: false,
                },
                Generator {
                    name: "G".into(),
                    inverse: Some(0),
                    is_inverse: true,
                },
            ],
            &[],
        )
        .unwrap()
    }

    #[test]
    fn slotwise_square() {
        let r = kyz();
        let yz = TensorElem::pure(&r, &[NCPoly::gen(0), NCPoly::gen(1)]);
        let sq = t_mul(&r, &yz, &yz).unwrap();
        let expected = TensorElem::pure(
            &r,
            &[
                NCPoly::word(Word(vec![0, 0])),
                NCPoly::word(Word(vec![1, 1])),
            ],
        );
        assert_eq!(sq, expected);
    }

    #[test]
    fn inverse_cancels_in_slot() {
        let r = laurent();
        let gg = TensorElem::pure(&r, &[NCPoly::gen(0), NCPoly::gen(0)]);
        let g_inv = TensorElem::pure(&r, &[NCPoly::gen(1), NCPoly::one()]);
        let p = t_mul(&r, &gg, &g_inv).unwrap();
        assert_eq!(p, TensorElem::pure(&r, &[NCPoly::one(), NCPoly::gen(0)]));
    }

    #[test]
    fn commutative_slots_normalise() {
        let r = kyz();
        let yz = TensorElem::pure(&r, &[NCPoly::gen(0), NCPoly::gen(1)]);
        let zy = TensorElem::pure(&r, &[NCPoly::gen(1), NCPoly::gen(0)]);
        let p = t_mul(&r, &yz, &zy).unwrap();
        let yzw = NCPoly::word(Word(vec![0, 1]));
        assert_eq!(p, TensorElem::pure(&r, &[yzw.clone(), yzw]));
    }

    #[test]
    fn flatten_multiplies_slots() {
        let r = laurent();
        let t = TensorElem::pure(&r, &[NCPoly::gen(0), NCPoly::gen(1)]);
        assert_eq!(t_flatten(&r, &t), NCPoly::one());
        let r = kyz();
        let t = TensorElem::pure(&r, &[NCPoly::gen(0), NCPoly::gen(1)]);
        assert_eq!(t_flatten(&r, &t), NCPoly::word(Word(vec![0, 1])));
    }

    #[test]
    fn mismatches_are_errors() {
        let r = kyz();
        let a = TensorElem::unit(2, r.tag(), scalar(1));
        let b = TensorElem::unit(3, r.tag(), scalar(1));
        assert!(matches!(
            t_mul(&r, &a, &b),
            Err(Error::ArityMismatch { .. })
        ));
        let c = TensorElem::unit(2, laurent().tag(), scalar(1));
        assert!(matches!(t_mul(&r, &a, &c), Err(Error::CarrierMismatch)));
    }

    #[test]
    fn formatting_round_trips_coefficients() {
        let r = kyz();
        let mut t = TensorElem::pure(&r, &[NCPoly::gen(0), NCPoly::gen(1)]);
        t.add_assign(&TensorElem::unit(2, r.tag(), scalar(-2)));
        assert_eq!(t.fmt_with(r.names()), "-2 ox 1 + y ox z");
    }
}
