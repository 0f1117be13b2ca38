//! Turns a parsed source into algebra objects.
//!
//! Missing structure data is an input error. Omitted Ore maps default to
//! the identity automorphism and the zero derivation.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::freealg::{NCPoly, Scalar};
use crate::hoe::{induced_character, HOEData, SignVariant};
use crate::hopf::{GenMap, HopfAlg};
use crate::ore::OreExt;
use crate::rewrite::{Algebra, Presentation};
use crate::tensor::TensorElem;

use super::parser::{OreSection, SourceFile};

fn reduce(alg: &dyn Algebra, raw: &TensorElem) -> TensorElem {
    TensorElem::from_raw(
        alg,
        raw.arity(),
        raw.terms().map(|(k, c)| (k.clone(), c.clone())),
    )
}

impl SourceFile {
    pub fn presentation(&self) -> Result<Presentation> {
        Presentation::new(self.name.clone(), self.gens.clone(), &self.rels)
    }

    pub fn declares_hopf(&self) -> bool {
        !(self.delta.is_empty() && self.counit.is_empty() && self.antipode.is_empty())
    }

    pub fn hopf(&self, pres: Presentation) -> Result<HopfAlg<Presentation>> {
        let names = self.names();
        let missing =
            |what: &str, g: usize| Error::Invalid(format!("missing `{what} {}` line", names[g]));
        let n = names.len();
        let mut delta = Vec::with_capacity(n);
        let mut counit = Vec::with_capacity(n);
        let mut antipode = Vec::with_capacity(n);
        for g in 0..n {
            delta.push(reduce(
                &pres,
                self.delta.get(&g).ok_or_else(|| missing("delta", g))?,
            ));
            counit.push(
                self.counit
                    .get(&g)
                    .cloned()
                    .ok_or_else(|| missing("counit", g))?,
            );
            antipode.push(
                self.antipode
                    .get(&g)
                    .cloned()
                    .ok_or_else(|| missing("antipode", g))?,
            );
        }
        HopfAlg::new(pres, delta, counit, antipode)
    }

    pub fn ore_section(&self) -> Result<&OreSection> {
        self.ore.as_ref().ok_or_else(|| {
            Error::Invalid("no `ore` line: the input is not an Ore extension".into())
        })
    }

    /// `(σ, σ⁻¹, δ)` on the generators of the base.
    pub fn ore_maps(
        &self,
        r: &Presentation,
    ) -> Result<(GenMap<NCPoly>, GenMap<NCPoly>, GenMap<NCPoly>)> {
        let o = self.ore_section()?;
        let n = self.gens.len();
        let image = |m: &std::collections::BTreeMap<usize, NCPoly>, g: usize, default: NCPoly| {
            r.normal_form(m.get(&g).unwrap_or(&default))
        };
        let sigma = (0..n).map(|g| image(&o.sigma, g, NCPoly::gen(g))).collect();
        let sigma_inv = (0..n)
            .map(|g| image(&o.sigma_inv, g, NCPoly::gen(g)))
            .collect();
        let der = (0..n).map(|g| image(&o.der, g, NCPoly::zero())).collect();
        Ok((GenMap::hom(sigma), GenMap::hom(sigma_inv), GenMap::hom(der)))
    }

    pub fn ore_ext(&self, h: HopfAlg<Presentation>) -> Result<OreExt> {
        let (s, si, d) = self.ore_maps(&h.alg)?;
        OreExt::new(h, s, si, d, self.ore_section()?.x.clone())
    }

    pub fn delta_x(&self, ext: &OreExt) -> Result<TensorElem> {
        let raw = self
            .ore_section()?
            .delta_x
            .as_ref()
            .ok_or_else(|| Error::Invalid("missing `deltaX` line".into()))?;
        Ok(reduce(ext, raw))
    }

    pub fn counit_x(&self) -> Scalar {
        self.ore
            .as_ref()
            .and_then(|o| o.counit_x.clone())
            .unwrap_or_else(Scalar::zero)
    }

    /// The declared `hoe beta`, reduced over the base.
    pub fn declared_beta(&self, r: &Presentation) -> Option<NCPoly> {
        self.ore.as_ref()?.beta.as_ref().map(|b| r.normal_form(b))
    }

    pub fn declared_w(&self, r: &Presentation) -> Option<TensorElem> {
        self.ore.as_ref()?.w.as_ref().map(|w| reduce(r, w))
    }

    /// Candidate data with the declared character, or `ε∘σ` when none is given.
    pub fn hoe_data(
        &self,
        ext: &OreExt,
        beta: NCPoly,
        w: TensorElem,
        variant: SignVariant,
    ) -> Result<HOEData> {
        let o = self.ore_section()?;
        let chi = if o.chi.is_empty() {
            induced_character(ext)
        } else {
            let n = self.gens.len();
            GenMap::hom(
                (0..n)
                    .map(|g| {
                        o.chi.get(&g).cloned().ok_or_else(|| {
                            Error::Invalid(format!("missing `hoe chi {}` line", self.gens[g].name))
                        })
                    })
                    .collect::<Result<_>>()?,
            )
        };
        Ok(HOEData {
            beta,
            w,
            chi,
            sign_variant: variant,
        })
    }
}
