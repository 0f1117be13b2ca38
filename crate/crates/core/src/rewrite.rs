//! Oriented word rewriting and finitely presented algebras.
//!
//! Relations are oriented by degree-lex order on words, so every rewrite step
//! strictly decreases the rewritten word and reduction terminates. Local
//! confluence is certified by resolving every overlap ambiguity between rule
//! left-hand sides up to a degree bound.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use num_traits::One;

use crate::error::{Error, Result};
use crate::freealg::{NCPoly, Scalar, Word};

/// Default degree to which presentations are certified.
pub const DEFAULT_CONFLUENCE_DEGREE: usize = 8;

/// An algebra whose elements have canonical representatives.
///
/// Elements are [`NCPoly`]s over the algebra's generators; `normal_form`
/// maps any such polynomial to its canonical representative.
pub trait Algebra: Send + Sync {
    fn names(&self) -> &[String];

    fn normal_form(&self, p: &NCPoly) -> NCPoly;

    /// Defining relations `lhs = rhs`, used for well-definedness checks.
    fn defining_relations(&self) -> Vec<Relation>;

    /// Identifies the algebra for carrier checks on tensors.
    fn tag(&self) -> u64;

    fn ngens(&self) -> usize {
        self.names().len()
    }

    fn mul(&self, a: &NCPoly, b: &NCPoly) -> NCPoly {
        self.normal_form(&(a * b))
    }

    fn fmt(&self, p: &NCPoly) -> String {
        p.fmt_with(self.names())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub label: String,
    pub lhs: NCPoly,
    pub rhs: NCPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    /// Index of the designated inverse generator, if any.
    pub inverse: Option<usize>,
    /// True for the second member of an inverse pair (`G` in `gen g inv G`).
    pub is_inverse: bool,
}

impl Generator {
    pub fn plain(name: impl Into<String>) -> Self {
        Generator {
            name: name.into(),
            inverse: None,
            is_inverse: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RewriteRule {
    pub lhs: Word,
    pub rhs: NCPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divergence {
    pub word: Word,
    pub left: NCPoly,
    pub right: NCPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfluenceReport {
    pub degree: usize,
    pub ambiguities: usize,
    /// True when every possible overlap had degree at most `degree`, so the
    /// certificate covers all degrees.
    pub exhaustive: bool,
    pub divergence: Option<Divergence>,
}

impl ConfluenceReport {
    pub fn is_confluent(&self) -> bool {
        self.divergence.is_none()
    }
}

/// A finitely presented algebra: generators plus oriented rewrite rules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub name: String,
    generators: Vec<Generator>,
    names: Vec<String>,
    rules: Vec<RewriteRule>,
    /// rules indexed by the first letter of their left-hand side
    by_first: Vec<Vec<usize>>,
    confluence_degree: Option<usize>,
    exhaustive: bool,
    tag: u64,
}

impl Presentation {
    /// Builds a presentation from generators and relations `lhs = rhs`.
    ///
    /// Inverse pairs contribute the rules `gG -> 1` and `Gg -> 1`. Each
    /// relation is oriented so that its degree-lex leading word becomes the
    /// rule's left-hand side; right-hand sides are then inter-reduced.
    pub fn new(
        name: impl Into<String>,
        generators: Vec<Generator>,
        relations: &[(NCPoly, NCPoly)],
    ) -> Result<Self> {
        let names: Vec<String> = generators.iter().map(|g| g.name.clone()).collect();
        let mut rules = Vec::new();
        for (i, g) in generators.iter().enumerate() {
            if let Some(j) = g.inverse {
                if j >= generators.len() || generators[j].inverse != Some(i) {
                    return Err(Error::Invalid(format!(
                        "inverse pairing of generator `{}` is not symmetric",
                        g.name
                    )));
                }
                rules.push(RewriteRule {
                    lhs: Word(vec![i as u16, j as u16]),
                    rhs: NCPoly::one(),
                });
            }
        }
        for (lhs, rhs) in relations {
            for p in [lhs, rhs] {
                if let Some(g) = p.max_letter() {
                    if g >= names.len() {
                        return Err(Error::GeneratorMismatch {
                            index: g,
                            count: names.len(),
                        });
                    }
                }
            }
            rules.push(orient(lhs, rhs, &names)?);
        }
        let mut pres = Presentation {
            name: name.into(),
            generators,
            names,
            rules,
            by_first: Vec::new(),
            confluence_degree: None,
            exhaustive: false,
            tag: 0,
        };
        pres.reindex();
        let reduced: Vec<NCPoly> = pres
            .rules
            .iter()
            .map(|r| pres.normal_form(&r.rhs))
            .collect();
        for (r, rhs) in pres.rules.iter_mut().zip(reduced) {
            r.rhs = rhs;
        }
        pres.reindex();
        Ok(pres)
    }

    fn reindex(&mut self) {
        let mut by_first = vec![Vec::new(); self.names.len()];
        for (i, r) in self.rules.iter().enumerate() {
            by_first[r.lhs.0[0] as usize].push(i);
        }
        self.by_first = by_first;
        let mut h = DefaultHasher::new();
        self.names.hash(&mut h);
        self.rules.hash(&mut h);
        self.tag = h.finish();
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn confluence_degree(&self) -> Option<usize> {
        self.confluence_degree
    }

    pub fn max_rule_degree(&self) -> usize {
        self.rules.iter().map(|r| r.lhs.degree()).max().unwrap_or(0)
    }

    /// Refuses inputs whose degree is not covered by the confluence certificate.
    pub fn require_certified(&self, degree: usize) -> Result<()> {
        match self.confluence_degree {
            _ if self.exhaustive => Ok(()),
            Some(d) if degree <= d => Ok(()),
            certified => Err(Error::DegreeExceedsCertificate {
                degree,
                certified: certified.unwrap_or(0),
            }),
        }
    }

    /// Position and rule index of the leftmost reducible occurrence.
    fn find_redex(&self, w: &Word) -> Option<(usize, usize)> {
        for pos in 0..w.0.len() {
            for &ri in &self.by_first[w.0[pos] as usize] {
                let lhs = &self.rules[ri].lhs.0;
                if w.0.len() - pos >= lhs.len() && &w.0[pos..pos + lhs.len()] == lhs.as_slice() {
                    return Some((pos, ri));
                }
            }
        }
        None
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        self.find_redex(w).is_none()
    }

    /// Replaces the occurrence of rule `ri` at `pos` once.
    fn rewrite_at(&self, w: &Word, pos: usize, ri: usize) -> NCPoly {
        let rule = &self.rules[ri];
        let prefix = Word(w.0[..pos].to_vec());
        let suffix = Word(w.0[pos + rule.lhs.degree()..].to_vec());
        let mut out = NCPoly::zero();
        for (m, c) in rule.rhs.terms() {
            out.add_term(prefix.concat(m).concat(&suffix), c.clone());
        }
        out
    }

    /// Checks every overlap ambiguity of degree at most `degree`.
    pub fn check_confluence(&self, degree: usize) -> ConfluenceReport {
        let mut ambiguities = 0;
        let mut max_overlap = 0;
        for (i, ri) in self.rules.iter().enumerate() {
            for (j, rj) in self.rules.iter().enumerate() {
                let a = &ri.lhs.0;
                let b = &rj.lhs.0;
                let mut candidates: Vec<(Word, usize)> = Vec::new();
                // proper overlaps: a suffix of a equals a prefix of b
                for k in 1..a.len().min(b.len()) {
                    if a[a.len() - k..] == b[..k] {
                        let mut w = a.clone();
                        w.extend_from_slice(&b[k..]);
                        candidates.push((Word(w), a.len() - k));
                    }
                }
                // inclusions: b occurs inside a
                if i != j {
                    let mut from = 0;
                    while let Some(p) = ri.lhs.find(b, from) {
                        candidates.push((ri.lhs.clone(), p));
                        from = p + 1;
                    }
                }
                for (word, pos_j) in candidates {
                    max_overlap = max_overlap.max(word.degree());
                    if word.degree() > degree {
                        continue;
                    }
                    ambiguities += 1;
                    let left = self.normal_form(&self.rewrite_at(&word, 0, i));
                    let right = self.normal_form(&self.rewrite_at(&word, pos_j, j));
                    if left != right {
                        return ConfluenceReport {
                            degree,
                            ambiguities,
                            exhaustive: false,
                            divergence: Some(Divergence { word, left, right }),
                        };
                    }
                }
            }
        }
        ConfluenceReport {
            degree,
            ambiguities,
            exhaustive: max_overlap <= degree,
            divergence: None,
        }
    }

    /// Runs [`check_confluence`](Self::check_confluence) and records the
    /// certified degree on success.
    pub fn certify(mut self, degree: usize) -> Result<Self> {
        let report = self.check_confluence(degree);
        if let Some(d) = report.divergence {
            return Err(Error::NotConfluent {
                word: d.word.fmt_with(&self.names),
                left: self.fmt(&d.left),
                right: self.fmt(&d.right),
            });
        }
        self.confluence_degree = Some(degree);
        self.exhaustive = report.exhaustive;
        Ok(self)
    }

    /// All irreducible words of degree at most `max_degree`, in degree-lex order.
    pub fn normal_words(&self, max_degree: usize) -> Vec<Word> {
        let mut out = vec![Word::one()];
        let mut frontier = vec![Word::one()];
        for _ in 0..max_degree {
            let mut next = Vec::new();
            for w in &frontier {
                for g in 0..self.names.len() {
                    let mut v = w.0.clone();
                    v.push(g as u16);
                    let cand = Word(v);
                    // prefixes are irreducible, so only suffixes can match
                    let reducible = self.rules.iter().any(|r| {
                        let l = &r.lhs.0;
                        cand.0.len() >= l.len() && cand.0.ends_with(l)
                    });
                    if !reducible {
                        next.push(cand);
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out.sort();
        out
    }
}

impl Algebra for Presentation {
    fn names(&self) -> &[String] {
        &self.names
    }

    fn normal_form(&self, p: &NCPoly) -> NCPoly {
        // Every rewrite produces strictly smaller words, so taking the largest
        // pending word first means a finished word is never touched again.
        let mut pending = p.clone();
        let mut done = NCPoly::zero();
        while let Some((w, c)) = pending.pop_leading() {
            match self.find_redex(&w) {
                None => done.add_term(w, c),
                Some((pos, ri)) => {
                    let rhs = &self.rules[ri].rhs;
                    let len = self.rules[ri].lhs.degree();
                    for (m, d) in rhs.terms() {
                        let mut v = Vec::with_capacity(w.degree() - len + m.degree());
                        v.extend_from_slice(&w.0[..pos]);
                        v.extend_from_slice(&m.0);
                        v.extend_from_slice(&w.0[pos + len..]);
                        pending.add_term(Word(v), d * &c);
                    }
                }
            }
        }
        done
    }

    fn defining_relations(&self) -> Vec<Relation> {
        self.rules
            .iter()
            .map(|r| {
                let lhs = NCPoly::word(r.lhs.clone());
                Relation {
                    label: format!("{} = {}", self.fmt(&lhs), self.fmt(&r.rhs)),
                    lhs,
                    rhs: r.rhs.clone(),
                }
            })
            .collect()
    }

    fn tag(&self) -> u64 {
        self.tag
    }
}

/// Orients `lhs = rhs` into a rule whose left side is the degree-lex leading word.
pub fn orient(lhs: &NCPoly, rhs: &NCPoly, names: &[String]) -> Result<RewriteRule> {
    let label = || format!("{} = {}", lhs.fmt_with(names), rhs.fmt_with(names));
    if let (Some((a, _)), Some((b, _))) = (lhs.leading(), rhs.leading()) {
        if a == b {
            return Err(Error::Unorientable { relation: label() });
        }
    }
    let mut diff = lhs - rhs;
    let (lead, c) = diff
        .pop_leading()
        .ok_or_else(|| Error::Unorientable { relation: label() })?;
    if lead.is_one() {
        return Err(Error::Invalid(format!(
            "relation `{}` identifies a nonzero scalar with zero",
            label()
        )));
    }
    let inv = -(Scalar::one() / c);
    Ok(RewriteRule {
        lhs: lead,
        rhs: diff.scale(&inv),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{ratio, scalar};

    fn gens(names: &[&str]) -> Vec<Generator> {
        names.iter().map(|n| Generator::plain(*n)).collect()
    }

    fn w(v: &[u16]) -> NCPoly {
        NCPoly::word(Word(v.to_vec()))
    }

    fn commutative_yz() -> Presentation {
        Presentation::new("k[y,z]", gens(&["y", "z"]), &[(w(&[1, 0]), w(&[0, 1]))]).unwrap()
    }

    fn laurent() -> Presentation {
        let g = vec![
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
        ];
        Presentation::new("laurent", g, &[]).unwrap()
    }

    #[test]
    fn commuting_rule_rewrites() {
        let p = commutative_yz();
        assert_eq!(p.normal_form(&w(&[1, 0])), w(&[0, 1]));
        assert_eq!(p.normal_form(&w(&[1, 1, 0, 0])), w(&[0, 0, 1, 1]));
    }

    #[test]
    fn scaled_commutation_orients_by_deglex() {
        // gh = 2hg with g < h: the leading word is hg, so hg -> 1/2 gh
        let p = Presentation::new(
            "q",
            gens(&["g", "h"]),
            &[(w(&[0, 1]), w(&[1, 0]).scale(&scalar(2)))],
        )
        .unwrap();
        assert_eq!(p.rules().len(), 1);
        assert_eq!(p.rules()[0].lhs, Word(vec![1, 0]));
        assert_eq!(p.normal_form(&w(&[1, 0])), w(&[0, 1]).scale(&ratio(1, 2)));
    }

    #[test]
    fn laurent_pair_cancels() {
        let p = laurent();
        assert_eq!(p.normal_form(&w(&[0, 1])), NCPoly::one());
        assert_eq!(p.normal_form(&w(&[0, 0, 1, 1, 1])), w(&[1]));
    }

    #[test]
    fn commutative_system_is_confluent() {
        let r = commutative_yz().check_confluence(6);
        assert!(r.is_confluent());
        assert!(r.exhaustive);
    }

    #[test]
    fn laurent_system_is_confluent() {
        let p = laurent();
        let r = p.check_confluence(6);
        assert!(r.is_confluent());
        // gGg and GgG
        assert_eq!(r.ambiguities, 2);
    }

    #[test]
    fn non_confluent_witness() {
        let p = Presentation::new(
            "abc",
            gens(&["a", "b", "c"]),
            &[(w(&[0, 1]), NCPoly::one()), (w(&[1, 2]), NCPoly::one())],
        )
        .unwrap();
        let r = p.check_confluence(3);
        let d = r.divergence.expect("must diverge");
        assert_eq!(d.word, Word(vec![0, 1, 2]));
        let forms = [d.left.clone(), d.right.clone()];
        assert!(forms.contains(&w(&[0])) && forms.contains(&w(&[2])));
        assert!(matches!(p.certify(3), Err(Error::NotConfluent { .. })));
    }

    #[test]
    fn unorientable_relation_rejected() {
        let err = Presentation::new(
            "bad",
            gens(&["y"]),
            &[(w(&[0, 0]), w(&[0, 0]).scale(&scalar(2)))],
        )
        .unwrap_err();
        assert!(matches!(err, Error::Unorientable { .. }));
    }

    #[test]
    fn certificate_bounds_degree() {
        let p = Presentation::new("abc", gens(&["a", "b"]), &[(w(&[1, 0, 1]), w(&[0]))])
            .unwrap()
            .certify(4)
            .unwrap();
        // self-overlap bab|ab has degree 5 > 4, so the certificate is partial
        assert!(p.require_certified(4).is_ok());
        assert!(matches!(
            p.require_certified(5),
            Err(Error::DegreeExceedsCertificate { .. })
        ));
    }

    #[test]
    fn normal_words_are_irreducible() {
        let p = laurent();
        let ws = p.normal_words(3);
        // 1, g, G, gg, GG, ggg, GGG
        assert_eq!(ws.len(), 7);
        assert!(ws.iter().all(|x| p.is_irreducible(x)));
    }
}
