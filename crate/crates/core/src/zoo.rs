//! Built-in example algebras and constructors for enveloping algebras, group
//! algebras and smash products `U(L)#kG`, plus bounded domain evidence.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::freealg::{fmt_scalar, NCPoly, Scalar, Word};
use crate::hopf::{check_well_defined, extend, AlgRing, GenMap, HopfAlg};
use crate::report::Report;
use crate::rewrite::{Algebra, Generator, Presentation, DEFAULT_CONFLUENCE_DEGREE};
use crate::tensor::TensorElem;

/// Shipped sources, addressable as `zoo:NAME`.
pub const ENTRIES: &[(&str, &str)] = &[
    ("heisenberg", include_str!("../zoo/heisenberg.hopf")),
    ("laurent-q2", include_str!("../zoo/laurent-q2.hopf")),
    (
        "laurent-twisted",
        include_str!("../zoo/laurent-twisted.hopf"),
    ),
    ("poly-shift", include_str!("../zoo/poly-shift.hopf")),
    ("smash-z-scale", include_str!("../zoo/smash-z-scale.hopf")),
    ("z2-group", include_str!("../zoo/z2-group.hopf")),
    ("dual-numbers", include_str!("../zoo/dual-numbers.hopf")),
];

pub fn names() -> Vec<&'static str> {
    ENTRIES.iter().map(|(n, _)| *n).collect()
}

pub fn source(name: &str) -> Option<&'static str> {
    let name = match name {
        "heisenberg-coordinate" => "heisenberg",
        other => other,
    };
    ENTRIES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// A finite-dimensional Lie algebra by structure constants:
/// `[xᵢ, xⱼ] = Σₖ c[i][j][k] xₖ`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieData {
    pub names: Vec<String>,
    pub c: Vec<Vec<Vec<Scalar>>>,
}

impl LieData {
    pub fn abelian(names: &[&str]) -> Self {
        let n = names.len();
        LieData {
            names: names.iter().map(|s| s.to_string()).collect(),
            c: vec![vec![vec![Scalar::zero(); n]; n]; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    /// Sets `[xᵢ, xⱼ]` and `[xⱼ, xᵢ]` from the given vector.
    pub fn set_bracket(&mut self, i: usize, j: usize, v: Vec<Scalar>) {
        self.c[j][i] = v.iter().map(|x| -x).collect();
        self.c[i][j] = v;
    }

    fn bracket(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for i in 0..n {
            for j in 0..n {
                let ab = &a[i] * &b[j];
                if ab.is_zero() {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o += &ab * &self.c[i][j][k];
                }
            }
        }
        out
    }

    fn basis(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[i] = Scalar::one();
        v
    }

    /// Antisymmetry and the Jacobi identity, exactly.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        if self.c.len() != n
            || self
                .c
                .iter()
                .any(|r| r.len() != n || r.iter().any(|v| v.len() != n))
        {
            return Err(Error::Invalid("structure constants must be n×n×n".into()));
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.c[i][j][k] != -&self.c[j][i][k] {
                        return Err(Error::Invalid(format!(
                            "antisymmetry fails for [{}, {}]",
                            self.names[i], self.names[j]
                        )));
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (a, b, c) = (self.basis(i), self.basis(j), self.basis(k));
                    let t1 = self.bracket(&a, &self.bracket(&b, &c));
                    let t2 = self.bracket(&b, &self.bracket(&c, &a));
                    let t3 = self.bracket(&c, &self.bracket(&a, &b));
                    if (0..n).any(|m| !(&t1[m] + &t2[m] + &t3[m]).is_zero()) {
                        return Err(Error::Invalid(format!(
                            "Jacobi identity fails for ({}, {}, {})",
                            self.names[i], self.names[j], self.names[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn vec_poly(&self, v: &[Scalar], offset: usize) -> NCPoly {
        NCPoly::from_terms(
            v.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (Word::gen(k + offset), c.clone())),
        )
    }

    /// PBW relations `xⱼxᵢ = xᵢxⱼ − Σ c[i][j][k] xₖ` for `j > i`.
    fn pbw_relations(&self) -> Vec<(NCPoly, NCPoly)> {
        let n = self.dim();
        let mut rels = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = NCPoly::word(Word(vec![j as u16, i as u16]));
                let rhs = &NCPoly::word(Word(vec![i as u16, j as u16]))
                    - &self.vec_poly(&self.c[i][j], 0);
                rels.push((lhs, rhs));
            }
        }
        rels
    }
}

fn primitive(alg: &dyn Algebra, g: usize) -> TensorElem {
    let mut t = TensorElem::pure(alg, &[NCPoly::gen(g), NCPoly::one()]);
    t.add_assign(&TensorElem::pure(alg, &[NCPoly::one(), NCPoly::gen(g)]));
    t
}

fn grouplike(alg: &dyn Algebra, g: usize) -> TensorElem {
    TensorElem::pure(alg, &[NCPoly::gen(g), NCPoly::gen(g)])
}

fn verified(h: HopfAlg<Presentation>) -> Result<HopfAlg<Presentation>> {
    h.verify().map_err(|rep| {
        let c = rep.failures().next().cloned();
        Error::IdentityFailed {
            name: c.as_ref().map_or("hopf axioms".into(), |c| c.name.clone()),
            witness: c.and_then(|c| c.witness).unwrap_or_default(),
        }
    })
}

/// `U(L)` with primitive generators, certified confluent.
pub fn build_enveloping(l: &LieData) -> Result<HopfAlg<Presentation>> {
    l.validate()?;
    let gens = l.names.iter().map(Generator::plain).collect();
    let pres = Presentation::new(
        format!("U({})", l.names.join(",")),
        gens,
        &l.pbw_relations(),
    )?
    .certify(DEFAULT_CONFLUENCE_DEGREE)?;
    let n = l.dim();
    let delta = (0..n).map(|g| primitive(&pres, g)).collect();
    let antipode = (0..n).map(|g| -&NCPoly::gen(g)).collect();
    verified(HopfAlg::new(
        pres,
        delta,
        vec![Scalar::zero(); n],
        antipode,
    )?)
}

/// A group generator and how its inverse is given.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupGen {
    pub name: String,
    pub inverse: InverseDecl,
}

#[derive(Clone, Debug, PartialEq)]
pub enum InverseDecl {
    /// A new generator forming an inverse pair.
    Named(String),
    /// A word in the other generators (by name).
    Word(Vec<String>),
}

fn lookup(names: &[String], n: &str) -> Result<usize> {
    names
        .iter()
        .position(|m| m == n)
        .ok_or_else(|| Error::Invalid(format!("undeclared generator `{n}`")))
}

fn word_of(names: &[String], w: &[String]) -> Result<NCPoly> {
    let idx = w
        .iter()
        .map(|n| lookup(names, n).map(|i| i as u16))
        .collect::<Result<Vec<_>>>()?;
    Ok(NCPoly::word(Word(idx)))
}

fn group_generators(gens: &[GroupGen]) -> Vec<Generator> {
    let mut out = Vec::new();
    for g in gens {
        match &g.inverse {
            InverseDecl::Named(inv) => {
                let i = out.len();
                out.push(Generator {
                    name: g.name.clone(),
                    inverse: Some(i + 1),
                    is_inverse: false,
                });
                out.push(Generator {
                    name: inv.clone(),
                    inverse: Some(i),
                    is_inverse: true,
                });
            }
            InverseDecl::Word(_) => out.push(Generator::plain(g.name.clone())),
        }
    }
    out
}

/// `kG` for a finitely presented group; every generator is grouplike.
pub fn build_group_algebra(
    name: &str,
    gens: &[GroupGen],
    relations: &[(Vec<String>, Vec<String>)],
) -> Result<HopfAlg<Presentation>> {
    let generators = group_generators(gens);
    let names: Vec<String> = generators.iter().map(|g| g.name.clone()).collect();
    let rels = relations
        .iter()
        .map(|(l, r)| Ok((word_of(&names, l)?, word_of(&names, r)?)))
        .collect::<Result<Vec<_>>>()?;
    let pres =
        Presentation::new(name, generators.clone(), &rels)?.certify(DEFAULT_CONFLUENCE_DEGREE)?;
    let mut antipode = Vec::new();
    for (i, g) in generators.iter().enumerate() {
        let inv = match g.inverse {
            Some(j) => NCPoly::gen(j),
            None => {
                let decl = gens.iter().find(|s| s.name == g.name).expect("declared");
                match &decl.inverse {
                    InverseDecl::Word(w) => word_of(&names, w)?,
                    InverseDecl::Named(_) => unreachable!("named inverses form pairs"),
                }
            }
        };
        let one = NCPoly::one();
        let gi = NCPoly::gen(i);
        if pres.mul(&gi, &inv) != one || pres.mul(&inv, &gi) != one {
            return Err(Error::NotAUnit {
                element: g.name.clone(),
                reason: format!("{} is not its inverse", pres.fmt(&inv)),
            });
        }
        antipode.push(inv);
    }
    let n = generators.len();
    let delta = (0..n).map(|g| grouplike(&pres, g)).collect();
    verified(HopfAlg::new(pres, delta, vec![Scalar::one(); n], antipode)?)
}

/// A group acting on a Lie algebra by automorphisms. Every generator has a
/// named inverse; `action[g][i]` is the coordinate vector of `g·xᵢ`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupActionData {
    pub gens: Vec<(String, String)>,
    pub relations: Vec<(Vec<String>, Vec<String>)>,
    pub action: Vec<Vec<Vec<Scalar>>>,
}

type Matrix = Vec<Vec<Scalar>>;

/// Matrix whose column `i` is `v[i]`.
fn columns(v: &[Vec<Scalar>]) -> Matrix {
    let n = v.len();
    (0..n)
        .map(|r| (0..n).map(|c| v[c][r].clone()).collect())
        .collect()
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| (0..n).fold(Scalar::zero(), |acc, k| acc + &a[r][k] * &b[k][c]))
                .collect()
        })
        .collect()
}

fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    if r == c {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn invert(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut a: Vec<Vec<Scalar>> = m
        .iter()
        .zip(identity(n))
        .map(|(r, e)| r.iter().cloned().chain(e).collect())
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// `U(L)#kG`: Lie generators first, then each group generator and its
/// inverse, with cross relations `g·xᵢ = (g▷xᵢ)·g`.
pub fn build_smash(name: &str, l: &LieData, a: &GroupActionData) -> Result<HopfAlg<Presentation>> {
    l.validate()?;
    let n = l.dim();
    if a.action.len() != a.gens.len() {
        return Err(Error::Invalid("one action per group generator".into()));
    }
    let mut mats: Vec<Matrix> = Vec::new();
    for (gi, act) in a.action.iter().enumerate() {
        if act.len() != n || act.iter().any(|v| v.len() != n) {
            return Err(Error::Invalid(
                "action vectors must match the Lie dimension".into(),
            ));
        }
        let m = columns(act);
        let inv = invert(&m).ok_or_else(|| Error::NotAUnit {
            element: a.gens[gi].0.clone(),
            reason: "action is not invertible".into(),
        })?;
        // g▷[xᵢ, xⱼ] = [g▷xᵢ, g▷xⱼ]
        for i in 0..n {
            for j in 0..n {
                let lhs = l.bracket(&act[i], &act[j]);
                let rhs: Vec<Scalar> = (0..n)
                    .map(|r| (0..n).fold(Scalar::zero(), |acc, k| acc + &m[r][k] * &l.c[i][j][k]))
                    .collect();
                if lhs != rhs {
                    return Err(Error::Invalid(format!(
                        "action of `{}` does not preserve [{}, {}]",
                        a.gens[gi].0, l.names[i], l.names[j]
                    )));
                }
            }
        }
        mats.push(m);
        mats.push(inv);
    }

    let mut gens: Vec<Generator> = l.names.iter().map(Generator::plain).collect();
    for (g, inv) in &a.gens {
        let i = gens.len();
        gens.push(Generator {
            name: g.clone(),
            inverse: Some(i + 1),
            is_inverse: false,
        });
        gens.push(Generator {
            name: inv.clone(),
            inverse: Some(i),
            is_inverse: true,
        });
    }
    let names: Vec<String> = gens.iter().map(|g| g.name.clone()).collect();

    // group relations must hold for the action
    let group_names = &names[n..];
    for (lw, rw) in &a.relations {
        let prod = |w: &[String]| -> Result<Matrix> {
            w.iter().try_fold(identity(n), |acc, s| {
                let k = lookup(group_names, s)?;
                Ok(mat_mul(&acc, &mats[k]))
            })
        };
        if prod(lw)? != prod(rw)? {
            return Err(Error::Invalid(format!(
                "action is inconsistent with the relation {} = {}",
                lw.join("*"),
                rw.join("*")
            )));
        }
    }

    let mut rels = l.pbw_relations();
    for (k, m) in mats.iter().enumerate() {
        let g = (n + k) as u16;
        for i in 0..n {
            let image: Vec<Scalar> = (0..n).map(|r| m[r][i].clone()).collect();
            let lhs = NCPoly::word(Word(vec![g, i as u16]));
            let rhs = &l.vec_poly(&image, 0) * &NCPoly::word(Word(vec![g]));
            rels.push((lhs, rhs));
        }
    }
    for (lw, rw) in &a.relations {
        rels.push((word_of(&names, lw)?, word_of(&names, rw)?));
    }
    let pres = Presentation::new(name, gens.clone(), &rels)?.certify(DEFAULT_CONFLUENCE_DEGREE)?;
    let total = gens.len();
    let mut delta = Vec::new();
    let mut counit = Vec::new();
    let mut antipode = Vec::new();
    for (g, gen) in gens.iter().enumerate() {
        if g < n {
            delta.push(primitive(&pres, g));
            counit.push(Scalar::zero());
            antipode.push(-&NCPoly::gen(g));
        } else {
            delta.push(grouplike(&pres, g));
            counit.push(Scalar::one());
            antipode.push(NCPoly::gen(gen.inverse.expect("paired")));
        }
    }
    debug_assert_eq!(delta.len(), total);
    verified(HopfAlg::new(pres, delta, counit, antipode)?)
}

fn suffixed(names: &[String], k: usize) -> Vec<String> {
    names.iter().map(|n| format!("{n}_{k}")).collect()
}

/// `H ⊗ H` with generators `a_1` (first copy) and `a_2` (second copy); the
/// copies commute and the structure maps act copywise.
pub fn tensor_square(h: &HopfAlg<Presentation>) -> Result<HopfAlg<Presentation>> {
    let r = &h.alg;
    let n = r.ngens();
    let shift = |p: &NCPoly, k: usize| {
        p.map_words(|w| NCPoly::word(Word(w.0.iter().map(|&l| l + (k * n) as u16).collect())))
    };
    let mut gens = Vec::new();
    for k in 0..2 {
        for (g, name) in r.generators().iter().zip(suffixed(r.names(), k + 1)) {
            gens.push(Generator {
                name,
                inverse: g.inverse.map(|j| j + k * n),
                is_inverse: g.is_inverse,
            });
        }
    }
    let mut rels = Vec::new();
    for k in 0..2 {
        for rule in r.rules() {
            if rule.lhs.degree() == 2 && {
                let (a, b) = (rule.lhs.0[0] as usize, rule.lhs.0[1] as usize);
                r.generators()[a].inverse == Some(b) && rule.rhs == NCPoly::one()
            } {
                continue;
            }
            rels.push((
                shift(&NCPoly::word(rule.lhs.clone()), k),
                shift(&rule.rhs, k),
            ));
        }
    }
    for a in 0..n {
        for b in 0..n {
            let b2 = (b + n) as u16;
            rels.push((
                NCPoly::word(Word(vec![b2, a as u16])),
                NCPoly::word(Word(vec![a as u16, b2])),
            ));
        }
    }
    let pres = Presentation::new(format!("{}⊗{}", r.name, r.name), gens, &rels)?
        .certify(DEFAULT_CONFLUENCE_DEGREE)?;
    let mut delta = Vec::new();
    let mut counit = Vec::new();
    let mut antipode = Vec::new();
    for k in 0..2 {
        for g in 0..n {
            let d = h.delta.images[g].map_slots(2, pres.tag(), |_, w| {
                vec![(
                    vec![Word(w.0.iter().map(|&l| l + (k * n) as u16).collect())],
                    Scalar::one(),
                )]
            });
            delta.push(d);
            counit.push(h.counit.images[g].clone());
            antipode.push(shift(&h.antipode.images[g], k));
        }
    }
    verified(HopfAlg::new(pres, delta, counit, antipode)?)
}

/// Checks that matching generators by name defines mutually inverse
/// algebra maps that intertwine Δ, ε and S.
pub fn same_by_name(a: &HopfAlg<Presentation>, b: &HopfAlg<Presentation>) -> Report {
    let mut report = Report::new();
    let (an, bn) = (a.names(), b.names());
    let mut sorted_a = an.to_vec();
    let mut sorted_b = bn.to_vec();
    sorted_a.sort();
    sorted_b.sort();
    if sorted_a != sorted_b {
        report.fail("same generator names", format!("{an:?} vs {bn:?}"));
        return report;
    }
    let to = |from: &[String], to: &[String]| -> GenMap<NCPoly> {
        GenMap::hom(
            from.iter()
                .map(|n| NCPoly::gen(to.iter().position(|m| m == n).expect("same names")))
                .collect(),
        )
    };
    let ab = to(an, bn);
    let ba = to(bn, an);
    report.record(
        "relations of the first hold in the second",
        check_well_defined(
            &AlgRing(&b.alg),
            &ab,
            "renaming",
            &a.alg.defining_relations(),
        )
        .err()
        .map(|e| e.to_string()),
    );
    report.record(
        "relations of the second hold in the first",
        check_well_defined(
            &AlgRing(&a.alg),
            &ba,
            "renaming",
            &b.alg.defining_relations(),
        )
        .err()
        .map(|e| e.to_string()),
    );
    let mut witness = None;
    for (g, name) in an.iter().enumerate() {
        let j = bn.iter().position(|m| m == name).expect("same names");
        let rename = |p: &NCPoly| extend(&AlgRing(&b.alg), &ab, p);
        let da = a.delta.images[g].map_slots(2, b.alg.tag(), |_, w| {
            rename(&NCPoly::word(w.clone()))
                .terms()
                .map(|(v, c)| (vec![v.clone()], c.clone()))
                .collect()
        });
        if da != b.delta.images[j]
            || a.counit.images[g] != b.counit.images[j]
            || rename(&a.antipode.images[g]) != b.antipode.images[j]
        {
            witness = Some(format!("structure maps differ on {name}"));
            break;
        }
    }
    report.record("structure maps agree", witness);
    report
}

/// Ordering key for leading terms: degree in generators without designated
/// inverses, then the exponent vector of inverse pairs, then degree-lex.
fn key(alg: &Presentation, w: &Word) -> (usize, Vec<i64>, Word) {
    let gens = alg.generators();
    let mut deg = 0;
    let mut exps = Vec::new();
    let mut pair_of = vec![None; gens.len()];
    for (i, g) in gens.iter().enumerate() {
        if let Some(j) = g.inverse {
            if !g.is_inverse {
                pair_of[i] = Some((exps.len(), 1));
                pair_of[j] = Some((exps.len(), -1));
                exps.push(0);
            }
        }
    }
    for l in w.letters() {
        match pair_of[l] {
            Some((p, s)) => exps[p] += s,
            None => deg += 1,
        }
    }
    (deg, exps, w.clone())
}

fn lead_key(alg: &Presentation, p: &NCPoly) -> Option<(usize, Vec<i64>, Word)> {
    p.terms().map(|(w, _)| key(alg, w)).max()
}

/// Bounded evidence that the algebra has no zero divisors: for all normal
/// words `u, v` of degree at most `d`, `uv ≠ 0` and the leading term of `uv`
/// is strictly monotone in each argument. Failures come with an explicit
/// zero-divisor pair when one exists among small combinations.
pub fn domain_evidence(alg: &Presentation, d: usize) -> Report {
    let mut report = Report::new();
    let conf = alg.check_confluence(2 * d);
    if let Some(div) = &conf.divergence {
        report.fail(
            format!("confluent to degree {}", 2 * d),
            format!(
                "{} reduces to {} and {}",
                div.word.fmt_with(alg.names()),
                alg.fmt(&div.left),
                alg.fmt(&div.right)
            ),
        );
        return report;
    }
    report.pass(format!("confluent to degree {}", 2 * d));

    let mut words = alg.normal_words(d);
    words.sort_by_key(|w| key(alg, w));
    let m = words.len();
    let mut leads: Vec<Vec<Option<(usize, Vec<i64>, Word)>>> = vec![vec![None; m]; m];
    let mut zero = None;
    for (i, u) in words.iter().enumerate() {
        for (j, v) in words.iter().enumerate() {
            let p = alg.normal_form(&NCPoly::word(u.concat(v)));
            if p.is_zero() && zero.is_none() {
                zero = Some(format!(
                    "{}*{} = 0",
                    u.fmt_with(alg.names()),
                    v.fmt_with(alg.names())
                ));
            }
            leads[i][j] = lead_key(alg, &p);
        }
    }
    report.record(
        format!("products of normal words of degree <= {d} are nonzero"),
        zero,
    );

    let mut violation = None;
    'outer: for i in 0..m {
        for j in 0..m {
            let checks = [
                (i + 1 < m).then(|| (&leads[i][j], &leads[i + 1][j], &words[i + 1], &words[j])),
                (j + 1 < m).then(|| (&leads[i][j], &leads[i][j + 1], &words[i], &words[j + 1])),
            ];
            for (a, b, u, v) in checks.into_iter().flatten() {
                if a.cmp(b) != Ordering::Less {
                    violation = Some(format!(
                        "leading term of {}*{} does not increase",
                        u.fmt_with(alg.names()),
                        v.fmt_with(alg.names())
                    ));
                    break 'outer;
                }
            }
        }
    }
    let name = format!(
        "no zero divisors among elements supported in degree <= {d} (leading-term evidence)"
    );
    match violation {
        None => report.pass(name),
        Some(v) => {
            report.fail(name, v);
            let found = find_zero_divisor(alg, &words, 4);
            report.record(
                "explicit zero divisor search",
                Some(found.unwrap_or_else(|| "no small zero-divisor pair found".into())),
            );
        }
    }
    report
}

/// Searches `{±1}`-combinations of the first `k` words, smallest supports first.
fn find_zero_divisor(alg: &Presentation, words: &[Word], k: usize) -> Option<String> {
    let basis: Vec<&Word> = words.iter().take(k).collect();
    let k = basis.len();
    let mut by_size: Vec<Vec<NCPoly>> = vec![Vec::new(); k + 1];
    for mask in 1u32..(1 << k) {
        let support: Vec<usize> = (0..k).filter(|b| mask & (1 << b) != 0).collect();
        let free = support.len() - 1;
        for signs in 0u32..(1 << free) {
            let mut p = NCPoly::zero();
            for (pos, &b) in support.iter().enumerate() {
                let c = if pos > 0 && signs & (1 << (pos - 1)) == 0 {
                    -Scalar::one()
                } else {
                    Scalar::one()
                };
                p.add_term(basis[b].clone(), c);
            }
            by_size[support.len()].push(p);
        }
    }
    let show = |p: &NCPoly| {
        let s = alg.fmt(p);
        if p.len() > 1 {
            format!("({s})")
        } else {
            s
        }
    };
    for total in 2..=2 * k {
        for sa in 1..=k {
            let sb = total.saturating_sub(sa);
            if sb == 0 || sb > k {
                continue;
            }
            for a in &by_size[sa] {
                for b in &by_size[sb] {
                    if alg.mul(a, b).is_zero() {
                        return Some(format!("{}*{} = 0", show(a), show(b)));
                    }
                }
            }
        }
    }
    None
}

pub fn scalar_list(v: &[Scalar]) -> String {
    v.iter().map(fmt_scalar).collect::<Vec<_>>().join(", ")
}
