//! Hopf structures on presented algebras.
//!
//! Structure maps are given on generators ([`GenMap`]) and extended
//! multiplicatively (or antimultiplicatively) to the whole algebra. A map is
//! only meaningful when it sends every defining relation to an identity in
//! the target; [`check_well_defined`] decides that exactly.

use std::collections::HashMap;

use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::freealg::{fmt_scalar, NCPoly, Scalar, Word};
use crate::report::Report;
use crate::rewrite::{Algebra, Relation};
use crate::tensor::{t_flatten, t_mul, TensorElem, MAX_ARITY};

/// Number of random monomials sampled by the axiom suite.
pub const SAMPLE_MONOMIALS: usize = 30;
/// Degree bound of the sampled monomials.
pub const SAMPLE_DEGREE: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Hom,
    Antihom,
}

/// Targets of generator maps.
pub trait Ring {
    type Elem: Clone;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, c: &Scalar, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn fmt(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.scale(&-Scalar::one(), b))
    }
}

pub struct Rationals;

impl Ring for Rationals {
    type Elem = Scalar;

    fn zero(&self) -> Scalar {
        Scalar::zero()
    }
    fn one(&self) -> Scalar {
        Scalar::one()
    }
    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a + b
    }
    fn scale(&self, c: &Scalar, a: &Scalar) -> Scalar {
        c * a
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a * b
    }
    fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }
    fn fmt(&self, a: &Scalar) -> String {
        fmt_scalar(a)
    }
}

/// The algebra itself as a target; products are reduced to normal form.
pub struct AlgRing<'a>(pub &'a dyn Algebra);

impl Ring for AlgRing<'_> {
    type Elem = NCPoly;

    fn zero(&self) -> NCPoly {
        NCPoly::zero()
    }
    fn one(&self) -> NCPoly {
        NCPoly::one()
    }
    fn add(&self, a: &NCPoly, b: &NCPoly) -> NCPoly {
        a + b
    }
    fn scale(&self, c: &Scalar, a: &NCPoly) -> NCPoly {
        a.scale(c)
    }
    fn mul(&self, a: &NCPoly, b: &NCPoly) -> NCPoly {
        self.0.mul(a, b)
    }
    fn is_zero(&self, a: &NCPoly) -> bool {
        self.0.normal_form(a).is_zero()
    }
    fn fmt(&self, a: &NCPoly) -> String {
        self.0.fmt(a)
    }
}

/// A tensor power of an algebra as a target.
pub struct TensorRing<'a> {
    pub alg: &'a dyn Algebra,
    pub arity: usize,
}

impl Ring for TensorRing<'_> {
    type Elem = TensorElem;

    fn zero(&self) -> TensorElem {
        TensorElem::zero(self.arity, self.alg.tag())
    }
    fn one(&self) -> TensorElem {
        TensorElem::unit(self.arity, self.alg.tag(), Scalar::one())
    }
    fn add(&self, a: &TensorElem, b: &TensorElem) -> TensorElem {
        let mut out = a.clone();
        out.add_assign(b);
        out
    }
    fn scale(&self, c: &Scalar, a: &TensorElem) -> TensorElem {
        a.scale(c)
    }
    fn mul(&self, a: &TensorElem, b: &TensorElem) -> TensorElem {
        t_mul(self.alg, a, b).expect("generator images were validated against the carrier")
    }
    fn is_zero(&self, a: &TensorElem) -> bool {
        a.is_zero()
    }
    fn fmt(&self, a: &TensorElem) -> String {
        a.fmt_with(self.alg.names())
    }
}

/// A map given by its values on generators.
#[derive(Clone, Debug, PartialEq)]
pub struct GenMap<E> {
    pub images: Vec<E>,
    pub variant: Variant,
}

impl<E> GenMap<E> {
    pub fn hom(images: Vec<E>) -> Self {
        GenMap {
            images,
            variant: Variant::Hom,
        }
    }

    pub fn antihom(images: Vec<E>) -> Self {
        GenMap {
            images,
            variant: Variant::Antihom,
        }
    }
}

pub fn eval_word<R: Ring>(ring: &R, map: &GenMap<R::Elem>, w: &Word) -> R::Elem {
    let mut acc = ring.one();
    let letters: Vec<usize> = w.letters().collect();
    let order: Box<dyn Iterator<Item = &usize>> = match map.variant {
        Variant::Hom => Box::new(letters.iter()),
        Variant::Antihom => Box::new(letters.iter().rev()),
    };
    for &g in order {
        acc = ring.mul(&acc, &map.images[g]);
    }
    acc
}

/// Linear, (anti)multiplicative extension of a generator map.
pub fn extend<R: Ring>(ring: &R, map: &GenMap<R::Elem>, p: &NCPoly) -> R::Elem {
    let mut out = ring.zero();
    for (w, c) in p.terms() {
        out = ring.add(&out, &ring.scale(c, &eval_word(ring, map, w)));
    }
    out
}

/// Checks that `map` respects every relation.
pub fn check_well_defined<R: Ring>(
    ring: &R,
    map: &GenMap<R::Elem>,
    map_name: &str,
    relations: &[Relation],
) -> Result<()> {
    for rel in relations {
        let l = extend(ring, map, &rel.lhs);
        let r = extend(ring, map, &rel.rhs);
        if !ring.is_zero(&ring.sub(&l, &r)) {
            return Err(Error::WellDefinedness {
                map: map_name.to_string(),
                relation: rel.label.clone(),
                lhs: ring.fmt(&l),
                rhs: ring.fmt(&r),
            });
        }
    }
    Ok(())
}

/// Per-slot operation for [`HopfAlg::slot_map`].
pub enum SlotOp<'a> {
    Id,
    Delta,
    Counit,
    Antipode,
    /// A linear map into the same algebra, given on basis words.
    Linear(&'a dyn Fn(&Word) -> NCPoly),
    /// A linear functional, given on basis words.
    Functional(&'a dyn Fn(&Word) -> Scalar),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug)]
pub struct HopfAlg<A> {
    pub alg: A,
    pub delta: GenMap<TensorElem>,
    pub counit: GenMap<Scalar>,
    pub antipode: GenMap<NCPoly>,
    /// Degree bound of the sampled monomials when the axiom suite passed.
    pub verified_degree: Option<usize>,
}

impl<A: Algebra> HopfAlg<A> {
    /// Assembles structure data without running the axiom suite.
    ///
    /// Images are brought to normal form; their count, arity and carrier are
    /// checked against the algebra.
    pub fn new(
        alg: A,
        delta: Vec<TensorElem>,
        counit: Vec<Scalar>,
        antipode: Vec<NCPoly>,
    ) -> Result<Self> {
        let n = alg.ngens();
        if delta.len() != n || counit.len() != n || antipode.len() != n {
            return Err(Error::Invalid(format!(
                "structure maps need one image per generator ({n})"
            )));
        }
        for (i, d) in delta.iter().enumerate() {
            if d.arity() != 2 {
                return Err(Error::ArityMismatch {
                    left: 2,
                    right: d.arity(),
                });
            }
            if d.carrier() != alg.tag() {
                return Err(Error::Invalid(format!(
                    "coproduct image of `{}` lives over another algebra",
                    alg.names()[i]
                )));
            }
        }
        let antipode = antipode.iter().map(|p| alg.normal_form(p)).collect();
        Ok(HopfAlg {
            alg,
            delta: GenMap::hom(delta),
            counit: GenMap::hom(counit),
            antipode: GenMap::antihom(antipode),
            verified_degree: None,
        })
    }

    pub fn algebra(&self) -> &dyn Algebra {
        &self.alg
    }

    pub fn names(&self) -> &[String] {
        self.alg.names()
    }

    pub fn tensor_ring(&self, arity: usize) -> TensorRing<'_> {
        TensorRing {
            alg: &self.alg,
            arity,
        }
    }

    pub fn coproduct(&self, p: &NCPoly) -> TensorElem {
        extend(&self.tensor_ring(2), &self.delta, p)
    }

    pub fn counit_of(&self, p: &NCPoly) -> Scalar {
        extend(&Rationals, &self.counit, p)
    }

    pub fn antipode_of(&self, p: &NCPoly) -> NCPoly {
        extend(&AlgRing(&self.alg), &self.antipode, p)
    }

    pub fn fmt(&self, p: &NCPoly) -> String {
        self.alg.fmt(p)
    }

    pub fn fmt_t(&self, t: &TensorElem) -> String {
        t.fmt_with(self.alg.names())
    }

    /// Applies one operation per slot and recombines multilinearly.
    pub fn slot_map(&self, t: &TensorElem, ops: &[SlotOp<'_>]) -> Result<TensorElem> {
        if ops.len() != t.arity() {
            return Err(Error::ArityMismatch {
                left: t.arity(),
                right: ops.len(),
            });
        }
        let out_arity: usize = ops
            .iter()
            .map(|op| match op {
                SlotOp::Delta => 2,
                SlotOp::Counit | SlotOp::Functional(_) => 0,
                _ => 1,
            })
            .sum();
        if out_arity > MAX_ARITY {
            return Err(Error::ArityOutOfRange(out_arity));
        }
        let mut delta_cache: HashMap<Word, TensorElem> = HashMap::new();
        let out = t.map_slots(out_arity, self.alg.tag(), |i, w| match &ops[i] {
            SlotOp::Id => vec![(vec![w.clone()], Scalar::one())],
            SlotOp::Delta => {
                let d = delta_cache
                    .entry(w.clone())
                    .or_insert_with(|| self.coproduct(&NCPoly::word(w.clone())));
                d.terms().map(|(k, c)| (k.clone(), c.clone())).collect()
            }
            SlotOp::Counit => {
                let c = self.counit_of(&NCPoly::word(w.clone()));
                scalar_frag(c)
            }
            SlotOp::Functional(f) => scalar_frag(f(w)),
            SlotOp::Antipode => poly_frag(&self.antipode_of(&NCPoly::word(w.clone()))),
            SlotOp::Linear(f) => poly_frag(&self.alg.normal_form(&f(w))),
        });
        Ok(out)
    }

    fn counit_functional(&self) -> impl Fn(&Word) -> Scalar + '_ {
        move |w: &Word| self.counit_of(&NCPoly::word(w.clone()))
    }

    /// Well-definedness of Δ, ε and S on the defining relations.
    pub fn well_definedness(&self) -> Report {
        let rels = self.alg.defining_relations();
        let mut report = Report::new();
        let res = [
            check_well_defined(&self.tensor_ring(2), &self.delta, "coproduct", &rels),
            check_well_defined(&Rationals, &self.counit, "counit", &rels),
            check_well_defined(&AlgRing(&self.alg), &self.antipode, "antipode", &rels),
        ];
        for (name, r) in [
            "well-defined coproduct",
            "well-defined counit",
            "well-defined antipode",
        ]
        .iter()
        .zip(res)
        {
            report.record(*name, r.err().map(|e| e.to_string()));
        }
        report
    }

    /// Coassociativity, counit and antipode identities on one element.
    pub fn axioms_on(&self, r: &NCPoly) -> Vec<(&'static str, Option<String>)> {
        let r = self.alg.normal_form(r);
        let d = self.coproduct(&r);
        let mut out = Vec::new();

        let left = self.slot_map(&d, &[SlotOp::Delta, SlotOp::Id]);
        let right = self.slot_map(&d, &[SlotOp::Id, SlotOp::Delta]);
        out.push((
            "coassociativity",
            match (left, right) {
                (Ok(l), Ok(rr)) => {
                    let diff = l.sub(&rr).expect("same arity");
                    (!diff.is_zero()).then(|| format!("(Δ⊗I)Δ - (I⊗Δ)Δ = {}", self.fmt_t(&diff)))
                }
                (Err(e), _) | (_, Err(e)) => Some(e.to_string()),
            },
        ));

        let mut counit_witness = None;
        for (label, ops) in [
            ("(ε⊗I)Δ", [SlotOp::Counit, SlotOp::Id]),
            ("(I⊗ε)Δ", [SlotOp::Id, SlotOp::Counit]),
        ] {
            let v = self
                .slot_map(&d, &ops)
                .ok()
                .and_then(|t| t.as_poly())
                .unwrap_or_default();
            if v != r && counit_witness.is_none() {
                counit_witness = Some(format!(
                    "{label} gives {} instead of {}",
                    self.fmt(&v),
                    self.fmt(&r)
                ));
            }
        }
        out.push(("counit", counit_witness));

        let eps = NCPoly::constant(self.counit_of(&r));
        let mut antipode_witness = None;
        for (label, ops) in [
            ("m(S⊗I)Δ", [SlotOp::Antipode, SlotOp::Id]),
            ("m(I⊗S)Δ", [SlotOp::Id, SlotOp::Antipode]),
        ] {
            let v = self
                .slot_map(&d, &ops)
                .map(|t| t_flatten(&self.alg, &t))
                .unwrap_or_default();
            if v != eps && antipode_witness.is_none() {
                antipode_witness = Some(format!(
                    "{label} gives {} but ε·1 = {}",
                    self.fmt(&v),
                    self.fmt(&eps)
                ));
            }
        }
        out.push(("antipode", antipode_witness));
        out
    }

    /// The Hopf axiom suite: well-definedness, then each axiom on every
    /// generator, then a fixed-seed sample of random monomials.
    pub fn hopf_axiom_suite(&self) -> Report {
        let mut report = self.well_definedness();
        if !report.passed() {
            return report;
        }
        for (g, name) in self.names().iter().enumerate() {
            for (axiom, witness) in self.axioms_on(&NCPoly::gen(g)) {
                report.record(format!("{axiom}({name})"), witness);
            }
        }
        let mut rng = StdRng::seed_from_u64(0x5eed);
        let mut sampled: HashMap<&'static str, Option<String>> = HashMap::new();
        for _ in 0..SAMPLE_MONOMIALS {
            let len = rng.gen_range(1..=SAMPLE_DEGREE);
            let w = Word(
                (0..len)
                    .map(|_| rng.gen_range(0..self.alg.ngens()) as u16)
                    .collect(),
            );
            let nf = self.alg.normal_form(&NCPoly::word(w));
            let Some((lead, _)) = nf.leading() else {
                continue;
            };
            let m = NCPoly::word(lead.clone());
            for (axiom, witness) in self.axioms_on(&m) {
                let slot = sampled.entry(axiom).or_insert(None);
                if slot.is_none() {
                    *slot = witness.map(|w| format!("on {}: {w}", self.fmt(&m)));
                }
            }
        }
        for axiom in ["coassociativity", "counit", "antipode"] {
            report.record(
                format!("{axiom}(sampled monomials)"),
                sampled.get(axiom).cloned().flatten(),
            );
        }
        report
    }

    /// Runs the axiom suite and records the verified degree on success.
    pub fn verify(mut self) -> std::result::Result<Self, Report> {
        let report = self.hopf_axiom_suite();
        if report.passed() {
            self.verified_degree = Some(SAMPLE_DEGREE);
            Ok(self)
        } else {
            Err(report)
        }
    }

    pub fn is_grouplike(&self, r: &NCPoly) -> bool {
        let r = self.alg.normal_form(r);
        if r.is_zero() {
            return false;
        }
        let rr = TensorElem::pure(&self.alg, &[r.clone(), r.clone()]);
        self.coproduct(&r) == rr && self.counit_of(&r).is_one()
    }

    /// True iff Δ(r) = a⊗r + r⊗b.
    pub fn is_skew_primitive(&self, r: &NCPoly, a: &NCPoly, b: &NCPoly) -> bool {
        let mut expected = TensorElem::pure(&self.alg, &[a.clone(), r.clone()]);
        expected.add_assign(&TensorElem::pure(&self.alg, &[r.clone(), b.clone()]));
        self.coproduct(r) == expected
    }

    /// Δ agrees with its flip on every generator.
    pub fn is_cocommutative(&self) -> bool {
        self.delta.images.iter().all(|d| *d == d.flip())
    }

    /// Inverse of a grouplike element, which is its antipode.
    pub fn grouplike_inverse(&self, beta: &NCPoly) -> Result<NCPoly> {
        if !self.is_grouplike(beta) {
            return Err(Error::NotAUnit {
                element: self.fmt(beta),
                reason: "not grouplike".into(),
            });
        }
        let inv = self.antipode_of(beta);
        let one = NCPoly::one();
        if self.alg.mul(beta, &inv) != one || self.alg.mul(&inv, beta) != one {
            return Err(Error::NotAUnit {
                element: self.fmt(beta),
                reason: format!(
                    "S({}) = {} is not a two-sided inverse",
                    self.fmt(beta),
                    self.fmt(&inv)
                ),
            });
        }
        Ok(inv)
    }

    pub fn eval_character(&self, chi: &GenMap<Scalar>, p: &NCPoly) -> Scalar {
        extend(&Rationals, chi, p)
    }

    pub fn check_character(&self, chi: &GenMap<Scalar>) -> Result<()> {
        if chi.images.len() != self.alg.ngens() {
            return Err(Error::Invalid(
                "character needs one value per generator".into(),
            ));
        }
        check_well_defined(&Rationals, chi, "character", &self.alg.defining_relations())
    }

    /// Left winding τ^l_χ(r) = Σ χ(r₁) r₂, or right winding Σ r₁ χ(r₂).
    pub fn winding(&self, chi: &GenMap<Scalar>, side: Side) -> Result<GenMap<NCPoly>> {
        self.check_character(chi)?;
        let f = |w: &Word| self.eval_character(chi, &NCPoly::word(w.clone()));
        let images = self
            .delta
            .images
            .iter()
            .map(|d| {
                let ops = match side {
                    Side::Left => [SlotOp::Functional(&f), SlotOp::Id],
                    Side::Right => [SlotOp::Id, SlotOp::Functional(&f)],
                };
                self.slot_map(d, &ops)
                    .map(|t| t.as_poly().unwrap_or_default())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GenMap::hom(images))
    }

    /// ad(β⁻¹)∘τ^r_χ : r ↦ β⁻¹ τ^r_χ(r) β for a grouplike β.
    pub fn conjugated_right_winding(
        &self,
        chi: &GenMap<Scalar>,
        beta: &NCPoly,
    ) -> Result<GenMap<NCPoly>> {
        let beta_inv = self.grouplike_inverse(beta)?;
        let right = self.winding(chi, Side::Right)?;
        let images = right
            .images
            .iter()
            .map(|img| self.alg.mul(&self.alg.mul(&beta_inv, img), beta))
            .collect();
        Ok(GenMap::hom(images))
    }

    /// χ∘S, the convolution inverse of a character.
    pub fn character_inverse(&self, chi: &GenMap<Scalar>) -> GenMap<Scalar> {
        GenMap::hom(
            self.antipode
                .images
                .iter()
                .map(|s| self.eval_character(chi, s))
                .collect(),
        )
    }

    /// Applies a generator map into the same algebra.
    pub fn apply(&self, map: &GenMap<NCPoly>, p: &NCPoly) -> NCPoly {
        extend(&AlgRing(&self.alg), map, p)
    }

    /// Counit as a slot functional.
    pub fn counit_slot(&self) -> impl Fn(&Word) -> Scalar + '_ {
        self.counit_functional()
    }
}

fn scalar_frag(c: Scalar) -> Vec<(Vec<Word>, Scalar)> {
    if c.is_zero() {
        Vec::new()
    } else {
        vec![(Vec::new(), c)]
    }
}

fn poly_frag(p: &NCPoly) -> Vec<(Vec<Word>, Scalar)> {
    p.terms()
        .map(|(w, c)| (vec![w.clone()], c.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{ratio, scalar};
    use crate::rewrite::{Generator, Presentation};

    fn kyz() -> HopfAlg<Presentation> {
        let r = Presentation::new(
            "k[y,z]",
            vec![Generator::plain("y"), Generator::plain("z")],
            &[(
                NCPoly::word(Word(vec![1, 0])),
                NCPoly::word(Word(vec![0, 1])),
            )],
        )
        .unwrap()
        .certify(8)
        .unwrap();
        let prim = |i| {
            let mut t = TensorElem::pure(&r, &[NCPoly::gen(i), NCPoly::one()]);
            t.add_assign(&TensorElem::pure(&r, &[NCPoly::one(), NCPoly::gen(i)]));
            t
        };
        let delta = vec![prim(0), prim(1)];
        HopfAlg::new(
            r,
            delta,
            vec![scalar(0), scalar(0)],
            vec![-&NCPoly::gen(0), -&NCPoly::gen(1)],
        )
        .unwrap()
    }

    fn laurent() -> HopfAlg<Presentation> {
        let r = Presentation::new(
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
        .unwrap();
        let gl = |i| TensorElem::pure(&r, &[NCPoly::gen(i), NCPoly::gen(i)]);
        let delta = vec![gl(0), gl(1)];
        HopfAlg::new(
            r,
            delta,
            vec![scalar(1), scalar(1)],
            vec![NCPoly::gen(1), NCPoly::gen(0)],
        )
        .unwrap()
    }

    fn y2() -> NCPoly {
        NCPoly::word(Word(vec![0, 0]))
    }

    #[test]
    fn coproduct_of_square() {
        let h = kyz();
        let d = h.coproduct(&y2());
        let r = &h.alg;
        let mut expected = TensorElem::pure(r, &[y2(), NCPoly::one()]);
        expected
            .add_assign(&TensorElem::pure(r, &[NCPoly::gen(0), NCPoly::gen(0)]).scale(&scalar(2)));
        expected.add_assign(&TensorElem::pure(r, &[NCPoly::one(), y2()]));
        assert_eq!(d, expected);
    }

    #[test]
    fn antipode_reverses_products() {
        let h = kyz();
        let yz = NCPoly::word(Word(vec![0, 1]));
        assert_eq!(h.antipode_of(&yz), yz);
    }

    #[test]
    fn ill_defined_character_has_witness() {
        // gh = 2hg on generators h < g
        let r = Presentation::new(
            "q",
            vec![Generator::plain("h"), Generator::plain("g")],
            &[(
                NCPoly::word(Word(vec![1, 0])),
                NCPoly::word(Word(vec![0, 1])).scale(&scalar(2)),
            )],
        )
        .unwrap();
        let chi = GenMap::hom(vec![scalar(3), scalar(2)]);
        let err =
            check_well_defined(&Rationals, &chi, "character", &r.defining_relations()).unwrap_err();
        match err {
            Error::WellDefinedness { lhs, rhs, .. } => {
                assert_eq!(lhs, "6");
                assert_eq!(rhs, "12");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn axiom_suite_passes_on_polynomial_and_laurent() {
        let rep = kyz().hopf_axiom_suite();
        assert!(rep.passed(), "{rep:?}");
        let rep = laurent().hopf_axiom_suite();
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn sabotaged_antipode_fails_on_y() {
        let mut h = kyz();
        h.antipode.images[0] = NCPoly::gen(0);
        let rep = h.hopf_axiom_suite();
        let c = rep.find("antipode(y)").unwrap();
        assert!(!c.passed);
        assert!(c.witness.as_ref().unwrap().contains("2*y"));
    }

    #[test]
    fn grouplike_and_primitive_membership() {
        let l = laurent();
        assert!(l.is_grouplike(&NCPoly::gen(0)));
        assert!(l.is_grouplike(&NCPoly::one()));
        let h = kyz();
        assert!(!h.is_grouplike(&NCPoly::gen(0)));
        assert!(h.is_skew_primitive(&NCPoly::gen(0), &NCPoly::one(), &NCPoly::one()));
        for a in [NCPoly::one(), NCPoly::gen(0), NCPoly::gen(1)] {
            for b in [NCPoly::one(), NCPoly::gen(0), NCPoly::gen(1)] {
                assert!(!l.is_skew_primitive(&NCPoly::gen(0), &a, &b) || a.is_zero());
            }
        }
    }

    #[test]
    fn windings_on_grouplike_and_primitive() {
        let l = laurent();
        let chi = GenMap::hom(vec![scalar(2), ratio(1, 2)]);
        let left = l.winding(&chi, Side::Left).unwrap();
        let right = l.winding(&chi, Side::Right).unwrap();
        assert_eq!(left.images[0], NCPoly::gen(0).scale(&scalar(2)));
        assert_eq!(left, right);

        // k[h] with χ(h) = 1: τ^l(h) = h + 1
        let r = Presentation::new("k[h]", vec![Generator::plain("h")], &[]).unwrap();
        let mut d = TensorElem::pure(&r, &[NCPoly::gen(0), NCPoly::one()]);
        d.add_assign(&TensorElem::pure(&r, &[NCPoly::one(), NCPoly::gen(0)]));
        let kh = HopfAlg::new(r, vec![d], vec![scalar(0)], vec![-&NCPoly::gen(0)]).unwrap();
        let tau = kh
            .winding(&GenMap::hom(vec![scalar(1)]), Side::Left)
            .unwrap();
        assert_eq!(tau.images[0], &NCPoly::gen(0) + &NCPoly::one());
    }

    #[test]
    fn slot_map_examples() {
        let h = kyz();
        let r = &h.alg;
        let yz = TensorElem::pure(r, &[NCPoly::gen(0), NCPoly::gen(1)]);
        let d = h.slot_map(&yz, &[SlotOp::Delta, SlotOp::Id]).unwrap();
        let mut expected = TensorElem::pure(r, &[NCPoly::gen(0), NCPoly::one(), NCPoly::gen(1)]);
        expected.add_assign(&TensorElem::pure(
            r,
            &[NCPoly::one(), NCPoly::gen(0), NCPoly::gen(1)],
        ));
        assert_eq!(d, expected);
        let s = h.slot_map(&yz, &[SlotOp::Antipode, SlotOp::Id]).unwrap();
        assert_eq!(s, yz.neg());
        assert!(matches!(
            h.slot_map(&yz, &[SlotOp::Delta, SlotOp::Delta]),
            Err(Error::ArityOutOfRange(4))
        ));

        let l = laurent();
        let gg = TensorElem::pure(&l.alg, &[NCPoly::gen(0), NCPoly::gen(0)]);
        let v = l.slot_map(&gg, &[SlotOp::Id, SlotOp::Counit]).unwrap();
        assert_eq!(v.as_poly().unwrap(), NCPoly::gen(0));
    }

    #[test]
    fn antipode_identity_for_primitive_vanishes() {
        let h = kyz();
        let d = h.coproduct(&NCPoly::gen(0));
        let t = h.slot_map(&d, &[SlotOp::Antipode, SlotOp::Id]).unwrap();
        assert!(t_flatten(&h.alg, &t).is_zero());
    }
}
