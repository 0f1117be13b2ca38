//! Ore extensions `T = R[x; σ, δ]` of a presented Hopf algebra.
//!
//! Elements of `T` are polynomials over the generators of `R` plus the
//! variable `x` (the last generator index). The normal form is the left
//! `R`-basis expansion `Σ rᵢ xⁱ` with every `rᵢ` in `R`-normal form, obtained
//! by repeatedly rewriting `x·r` to `σ(r)·x + δ(r)`.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::Mutex;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::freealg::{fmt_scalar, NCPoly, Scalar, Word};
use crate::hopf::{check_well_defined, extend, AlgRing, GenMap, HopfAlg};
use crate::report::Report;
use crate::rewrite::{Algebra, Presentation, Relation};
use crate::tensor::TensorElem;

/// Left coefficients of `x⁰, x¹, ...`; the top coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct OreElem {
    pub coeffs: Vec<NCPoly>,
}

impl OreElem {
    pub fn zero() -> Self {
        OreElem::default()
    }

    pub fn from_base(r: NCPoly) -> Self {
        let mut e = OreElem { coeffs: vec![r] };
        e.trim();
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `x`, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> NCPoly {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(NCPoly::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn add_assign(&mut self, other: &OreElem) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), NCPoly::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a = &*a + b;
        }
        self.trim();
    }

    pub fn scale(&self, c: &Scalar) -> OreElem {
        let mut e = OreElem {
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        };
        e.trim();
        e
    }

    /// Right multiplication by `x`.
    pub fn times_x(&self) -> OreElem {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(NCPoly::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        OreElem { coeffs }
    }

    /// Left multiplication by an element of `R`.
    pub fn left_mul(&self, r: &NCPoly, base: &dyn Algebra) -> OreElem {
        let mut e = OreElem {
            coeffs: self.coeffs.iter().map(|c| base.mul(r, c)).collect(),
        };
        e.trim();
        e
    }

    /// Flattens to a polynomial over the generators of `T`.
    pub fn to_poly(&self, x: usize) -> NCPoly {
        let mut out = NCPoly::zero();
        for (i, r) in self.coeffs.iter().enumerate() {
            for (w, c) in r.terms() {
                let mut v = w.0.clone();
                v.extend(std::iter::repeat(x as u16).take(i));
                out.add_term(Word(v), c.clone());
            }
        }
        out
    }

    /// Reads coefficients off a polynomial already in `T`-normal form.
    pub fn from_normal_poly(p: &NCPoly, x: usize) -> OreElem {
        let mut e = OreElem::zero();
        for (w, c) in p.terms() {
            let split =
                w.0.iter()
                    .position(|&l| l as usize == x)
                    .unwrap_or(w.0.len());
            let i = w.0.len() - split;
            if e.coeffs.len() <= i {
                e.coeffs.resize(i + 1, NCPoly::zero());
            }
            e.coeffs[i].add_term(Word(w.0[..split].to_vec()), c.clone());
        }
        e.trim();
        e
    }
}

/// The Ore extension; implements [`Algebra`] with `x` as the last generator.
pub struct OreExt {
    pub base: HopfAlg<Presentation>,
    pub sigma: GenMap<NCPoly>,
    pub sigma_inv: GenMap<NCPoly>,
    pub delta: GenMap<NCPoly>,
    pub x_name: String,
    names: Vec<String>,
    tag: u64,
    word_cache: Mutex<HashMap<Word, NCPoly>>,
    xpow_cache: Mutex<HashMap<(usize, Word), OreElem>>,
}

impl Clone for OreExt {
    fn clone(&self) -> Self {
        OreExt::assemble(
            self.base.clone(),
            self.sigma.clone(),
            self.sigma_inv.clone(),
            self.delta.clone(),
            self.x_name.clone(),
        )
    }
}

impl std::fmt::Debug for OreExt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let r = &self.base.alg;
        let show = |m: &GenMap<NCPoly>| -> Vec<String> {
            m.images.iter().map(|p| Algebra::fmt(r, p)).collect()
        };
        f.debug_struct("OreExt")
            .field("base", &r.name)
            .field("x", &self.x_name)
            .field("sigma", &show(&self.sigma))
            .field("sigma_inv", &show(&self.sigma_inv))
            .field("delta", &show(&self.delta))
            .finish()
    }
}

/// A change of the variable `x`.
#[derive(Clone, Debug, PartialEq)]
pub enum VarChange {
    /// `x' = x - c`.
    Shift(Scalar),
    /// `x' = u x`, with the inverse of `u` supplied.
    LeftUnit { u: NCPoly, u_inv: NCPoly },
    /// `x' = x u`, with the inverse of `u` supplied.
    RightUnit { u: NCPoly, u_inv: NCPoly },
}

/// The result of [`OreExt::change_var`].
#[derive(Clone, Debug)]
pub struct Substitution {
    pub ext: OreExt,
    /// The new variable written in the old extension.
    pub new_x_in_old: NCPoly,
    /// The old variable written in the new extension.
    pub old_x_in_new: NCPoly,
    pub label: String,
}

/// Extends δ from generators to `R` by the σ-Leibniz rule
/// `δ(a₁⋯aₙ) = Σ σ(a₁⋯aᵢ₋₁) δ(aᵢ) aᵢ₊₁⋯aₙ`.
pub fn leibniz(
    r: &dyn Algebra,
    sigma: &GenMap<NCPoly>,
    delta: &GenMap<NCPoly>,
    p: &NCPoly,
) -> NCPoly {
    let mut out = NCPoly::zero();
    for (w, c) in p.terms() {
        let mut prefix = NCPoly::one();
        for (i, a) in w.letters().enumerate() {
            if !delta.images[a].is_zero() {
                let suffix = NCPoly::word(Word(w.0[i + 1..].to_vec()));
                let term = r.mul(&r.mul(&prefix, &delta.images[a]), &suffix);
                out.add_scaled(&term, c);
            }
            prefix = r.mul(&prefix, &sigma.images[a]);
            if prefix.is_zero() {
                break;
            }
        }
    }
    r.normal_form(&out)
}

/// Checks the Ore data: σ and σ⁻¹ well-defined and mutually inverse, δ
/// compatible with every relation.
pub fn validate_ore(
    base: &HopfAlg<Presentation>,
    sigma: &GenMap<NCPoly>,
    sigma_inv: &GenMap<NCPoly>,
    delta: &GenMap<NCPoly>,
) -> Report {
    let r = &base.alg;
    let mut report = Report::new();
    let n = r.ngens();
    if sigma.images.len() != n || sigma_inv.images.len() != n || delta.images.len() != n {
        report.fail(
            "ore data shape",
            format!("σ, σ⁻¹ and δ need {n} images each"),
        );
        return report;
    }
    let rels = r.defining_relations();
    let ring = AlgRing(r);
    let s_ok = check_well_defined(&ring, sigma, "sigma", &rels);
    let si_ok = check_well_defined(&ring, sigma_inv, "sigma inverse", &rels);
    let maps_ok = s_ok.is_ok() && si_ok.is_ok();
    report.record("sigma well-defined", s_ok.err().map(|e| e.to_string()));
    report.record(
        "sigma inverse well-defined",
        si_ok.err().map(|e| e.to_string()),
    );
    if !maps_ok {
        return report;
    }

    for (name, outer, inner) in [
        ("sigma ∘ sigma⁻¹ = id", sigma, sigma_inv),
        ("sigma⁻¹ ∘ sigma = id", sigma_inv, sigma),
    ] {
        let mut witness = None;
        for g in 0..n {
            let v = extend(&ring, outer, &inner.images[g]);
            if v != NCPoly::gen(g) {
                witness = Some(format!("on {} gives {}", r.names()[g], r.fmt(&v)));
                break;
            }
        }
        report.record(name, witness);
    }

    let mut witness = None;
    for rel in &rels {
        let l = leibniz(r, sigma, delta, &rel.lhs);
        let rr = leibniz(r, sigma, delta, &rel.rhs);
        if l != rr {
            witness = Some(format!(
                "on `{}`: δ(lhs) = {}, δ(rhs) = {}",
                rel.label,
                r.fmt(&l),
                r.fmt(&rr)
            ));
            break;
        }
    }
    report.record("delta respects relations", witness);
    report
}

impl OreExt {
    /// Builds the extension after validating the Ore data.
    pub fn new(
        base: HopfAlg<Presentation>,
        sigma: GenMap<NCPoly>,
        sigma_inv: GenMap<NCPoly>,
        delta: GenMap<NCPoly>,
        x_name: impl Into<String>,
    ) -> Result<Self> {
        let x_name = x_name.into();
        if base.names().contains(&x_name) {
            return Err(Error::Invalid(format!(
                "`{x_name}` is already a generator of the base"
            )));
        }
        let report = validate_ore(&base, &sigma, &sigma_inv, &delta);
        if let Some(c) = report.failures().next() {
            return Err(Error::PremiseFailed {
                name: c.name.clone(),
                witness: c.witness.clone().unwrap_or_default(),
            });
        }
        Ok(Self::assemble(base, sigma, sigma_inv, delta, x_name))
    }

    fn assemble(
        base: HopfAlg<Presentation>,
        sigma: GenMap<NCPoly>,
        sigma_inv: GenMap<NCPoly>,
        delta: GenMap<NCPoly>,
        x_name: String,
    ) -> Self {
        let r = &base.alg;
        let sigma = GenMap {
            images: sigma.images.iter().map(|p| r.normal_form(p)).collect(),
            variant: sigma.variant,
        };
        let sigma_inv = GenMap {
            images: sigma_inv.images.iter().map(|p| r.normal_form(p)).collect(),
            variant: sigma_inv.variant,
        };
        let delta = GenMap {
            images: delta.images.iter().map(|p| r.normal_form(p)).collect(),
            variant: delta.variant,
        };
        let mut names = r.names().to_vec();
        names.push(x_name.clone());
        let mut h = DefaultHasher::new();
        r.tag().hash(&mut h);
        x_name.hash(&mut h);
        for m in [&sigma, &delta] {
            for p in &m.images {
                for (w, c) in p.terms() {
                    w.hash(&mut h);
                    fmt_scalar(c).hash(&mut h);
                }
                0xffu8.hash(&mut h);
            }
        }
        OreExt {
            base,
            sigma,
            sigma_inv,
            delta,
            x_name,
            names,
            tag: h.finish(),
            word_cache: Mutex::new(HashMap::new()),
            xpow_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn r(&self) -> &Presentation {
        &self.base.alg
    }

    /// Generator index of `x`.
    pub fn x(&self) -> usize {
        self.names.len() - 1
    }

    pub fn x_poly(&self) -> NCPoly {
        NCPoly::gen(self.x())
    }

    pub fn sigma_of(&self, p: &NCPoly) -> NCPoly {
        extend(&AlgRing(self.r()), &self.sigma, p)
    }

    pub fn sigma_inv_of(&self, p: &NCPoly) -> NCPoly {
        extend(&AlgRing(self.r()), &self.sigma_inv, p)
    }

    /// δ on an element of `R`.
    pub fn derivation(&self, p: &NCPoly) -> NCPoly {
        leibniz(self.r(), &self.sigma, &self.delta, p)
    }

    /// `xⁱ · w` for an `R`-normal word `w`.
    fn xpow_times(&self, i: usize, w: &Word) -> OreElem {
        if i == 0 {
            return OreElem::from_base(NCPoly::word(w.clone()));
        }
        let key = (i, w.clone());
        if let Some(e) = self.xpow_cache.lock().expect("cache lock").get(&key) {
            return e.clone();
        }
        // xⁱ w = (xⁱ⁻¹ σ(w)) x + xⁱ⁻¹ δ(w)
        let wp = NCPoly::word(w.clone());
        let mut out = self.xpow_times_poly(i - 1, &self.sigma_of(&wp)).times_x();
        out.add_assign(&self.xpow_times_poly(i - 1, &self.derivation(&wp)));
        self.xpow_cache
            .lock()
            .expect("cache lock")
            .insert(key, out.clone());
        out
    }

    fn xpow_times_poly(&self, i: usize, p: &NCPoly) -> OreElem {
        let mut out = OreElem::zero();
        for (w, c) in p.terms() {
            out.add_assign(&self.xpow_times(i, w).scale(c));
        }
        out
    }

    fn nf_word(&self, w: &Word) -> NCPoly {
        if let Some(p) = self.word_cache.lock().expect("cache lock").get(w) {
            return p.clone();
        }
        let x = self.x();
        let r = self.r();
        let mut acc = OreElem::from_base(NCPoly::one());
        for a in w.letters() {
            if acc.is_zero() {
                break;
            }
            if a == x {
                acc = acc.times_x();
                continue;
            }
            let letter = Word::gen(a);
            let mut next = OreElem::zero();
            for (i, ri) in acc.coeffs.iter().enumerate() {
                if ri.is_zero() {
                    continue;
                }
                next.add_assign(&self.xpow_times(i, &letter).left_mul(ri, r));
            }
            acc = next;
        }
        let p = acc.to_poly(x);
        self.word_cache
            .lock()
            .expect("cache lock")
            .insert(w.clone(), p.clone());
        p
    }

    /// The normal form as coefficients of `xⁱ`.
    pub fn ore_normal_form(&self, p: &NCPoly) -> OreElem {
        OreElem::from_normal_poly(&self.normal_form(p), self.x())
    }

    /// Lifts a tensor over `R` to the same tensor over `T`.
    pub fn lift(&self, t: &TensorElem) -> TensorElem {
        t.clone().with_carrier(self.tag)
    }

    /// Reads a tensor over `T` with no `x` in any slot back as a tensor over `R`.
    pub fn lower(&self, t: &TensorElem) -> Option<TensorElem> {
        let x = self.x() as u16;
        t.terms()
            .all(|(ws, _)| ws.iter().all(|w| !w.0.contains(&x)))
            .then(|| t.clone().with_carrier(self.r().tag()))
    }

    /// Rewrites the extension in terms of a new variable. The closed-form
    /// σ′, δ′ are confirmed against direct rewriting of `x′·a` in the old
    /// extension, and the new data is re-validated.
    pub fn change_var(&self, change: &VarChange) -> Result<Substitution> {
        let r = self.r();
        let n = r.ngens();
        let x = self.x_poly();
        let gens: Vec<NCPoly> = (0..n).map(NCPoly::gen).collect();
        let check_unit = |u: &NCPoly, u_inv: &NCPoly| -> Result<()> {
            let one = NCPoly::one();
            if r.mul(u, u_inv) != one || r.mul(u_inv, u) != one {
                return Err(Error::NotAUnit {
                    element: r.fmt(u),
                    reason: format!("{} is not a two-sided inverse", r.fmt(u_inv)),
                });
            }
            Ok(())
        };
        let (sigma, sigma_inv, delta, new_x_in_old, old_x_in_new, label) = match change {
            VarChange::Shift(c) => {
                let delta = gens
                    .iter()
                    .enumerate()
                    .map(|(g, a)| {
                        let mut d = self.delta.images[g].clone();
                        d.add_scaled(&self.sigma.images[g], c);
                        d.add_scaled(a, &-c);
                        d
                    })
                    .collect();
                let cst = NCPoly::constant(c.clone());
                (
                    self.sigma.images.clone(),
                    self.sigma_inv.images.clone(),
                    delta,
                    &x - &cst,
                    &x + &cst,
                    format!("shift({})", fmt_scalar(c)),
                )
            }
            VarChange::LeftUnit { u, u_inv } => {
                check_unit(u, u_inv)?;
                let sigma = self
                    .sigma
                    .images
                    .iter()
                    .map(|s| r.mul(&r.mul(u, s), u_inv))
                    .collect();
                let sigma_inv = gens
                    .iter()
                    .map(|a| self.sigma_inv_of(&r.mul(&r.mul(u_inv, a), u)))
                    .collect();
                let delta = self.delta.images.iter().map(|d| r.mul(u, d)).collect();
                (
                    sigma,
                    sigma_inv,
                    delta,
                    &u.clone() * &x,
                    &u_inv.clone() * &x,
                    format!("left_unit({})", r.fmt(u)),
                )
            }
            VarChange::RightUnit { u, u_inv } => {
                check_unit(u, u_inv)?;
                let conj: Vec<NCPoly> = gens.iter().map(|a| r.mul(&r.mul(u, a), u_inv)).collect();
                let sigma = conj.iter().map(|c| self.sigma_of(c)).collect();
                let sigma_inv = gens
                    .iter()
                    .map(|a| r.mul(&r.mul(u_inv, &self.sigma_inv_of(a)), u))
                    .collect();
                let delta = conj.iter().map(|c| r.mul(&self.derivation(c), u)).collect();
                (
                    sigma,
                    sigma_inv,
                    delta,
                    &x * &u.clone(),
                    &x * &u_inv.clone(),
                    format!("right_unit({})", r.fmt(u)),
                )
            }
        };
        let sigma = GenMap::hom(sigma);
        let sigma_inv = GenMap::hom(sigma_inv);
        let delta = GenMap::hom(delta);

        // x′a computed in the old extension must equal σ′(a)x′ + δ′(a)
        let new_x = self.normal_form(&new_x_in_old);
        for (g, a) in gens.iter().enumerate() {
            let direct = self.mul(&new_x, a);
            let closed = self.normal_form(&(&(&sigma.images[g] * &new_x) + &delta.images[g]));
            if direct != closed {
                return Err(Error::Invalid(format!(
                    "{label}: closed form disagrees with direct rewriting on {}: {} vs {}",
                    r.names()[g],
                    self.fmt(&direct),
                    self.fmt(&closed)
                )));
            }
        }
        let ext = OreExt::new(
            self.base.clone(),
            sigma,
            sigma_inv,
            delta,
            self.x_name.clone(),
        )
        .map_err(|e| Error::Invalid(format!("{label}: re-validation failed: {e}")))?;
        let old_x_in_new = ext.normal_form(&old_x_in_new);
        Ok(Substitution {
            ext,
            new_x_in_old: new_x,
            old_x_in_new,
            label,
        })
    }

    /// Hopf structure data on `T` extending that of `R`. Nothing is verified.
    pub fn hopf(
        &self,
        delta_x: &TensorElem,
        counit_x: Scalar,
        antipode_x: NCPoly,
    ) -> Result<HopfAlg<OreExt>> {
        let mut delta: Vec<TensorElem> = self
            .base
            .delta
            .images
            .iter()
            .map(|d| self.lift(d))
            .collect();
        delta.push(delta_x.clone());
        let mut counit = self.base.counit.images.clone();
        counit.push(counit_x);
        let mut antipode = self.base.antipode.images.clone();
        antipode.push(antipode_x);
        HopfAlg::new(self.clone(), delta, counit, antipode)
    }
}

impl Algebra for OreExt {
    fn names(&self) -> &[String] {
        &self.names
    }

    fn normal_form(&self, p: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in p.terms() {
            out.add_scaled(&self.nf_word(w), c);
        }
        out
    }

    fn defining_relations(&self) -> Vec<Relation> {
        let r = self.r();
        let mut rels = r.defining_relations();
        let x = self.x_poly();
        for g in 0..r.ngens() {
            let a = NCPoly::gen(g);
            let lhs = &x * &a;
            let rhs = &(&self.sigma.images[g] * &x) + &self.delta.images[g];
            rels.push(Relation {
                label: format!("{} = {}", self.fmt(&lhs), self.fmt(&rhs)),
                lhs,
                rhs,
            });
        }
        rels
    }

    fn tag(&self) -> u64 {
        self.tag
    }
}

/// Transports `Δ(x_old)` to the coproduct of the new variable, written over
/// the new extension.
pub fn transport_coproduct(old: &HopfAlg<OreExt>, sub: &Substitution) -> TensorElem {
    let d = old.coproduct(&sub.new_x_in_old);
    let phi = to_new(&sub.ext, &old.alg, &sub.old_x_in_new);
    d.map_slots(2, sub.ext.tag(), |_, w| {
        extend(&AlgRing(&sub.ext), &phi, &NCPoly::word(w.clone()))
            .terms()
            .map(|(v, c)| (vec![v.clone()], c.clone()))
            .collect()
    })
}

/// Rewrites an element of the old extension in the new one.
pub fn rewrite_in(new: &OreExt, old: &OreExt, old_x_in_new: &NCPoly, p: &NCPoly) -> NCPoly {
    let phi = to_new(new, old, old_x_in_new);
    extend(&AlgRing(new), &phi, p)
}

fn to_new(new: &OreExt, old: &OreExt, old_x_in_new: &NCPoly) -> GenMap<NCPoly> {
    let mut images: Vec<NCPoly> = (0..old.r().ngens()).map(NCPoly::gen).collect();
    images.push(new.normal_form(old_x_in_new));
    GenMap::hom(images)
}

/// The identity automorphism, as Ore data.
pub fn identity_map(n: usize) -> GenMap<NCPoly> {
    GenMap::hom((0..n).map(NCPoly::gen).collect())
}

/// The zero derivation.
pub fn zero_map(n: usize) -> GenMap<NCPoly> {
    GenMap::hom(vec![NCPoly::zero(); n])
}

/// True when `p` is a nonzero scalar multiple of `1`.
pub fn is_unit_scalar(p: &NCPoly) -> bool {
    p.as_scalar().is_some_and(|c| !c.is_zero())
}
