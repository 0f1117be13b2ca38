//! Exact rational arithmetic in the free associative algebra.
//!
//! A [`Word`] is a finite sequence of generator indices (the empty word is
//! the unit) and an [`NCPoly`] is a sparse linear combination of words with
//! [`Scalar`] coefficients. Words are ordered degree-lexicographically by
//! generator index, which is the monomial order used by the rewriting layer.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficients live in the rationals. `BigRational` keeps numerator and
/// denominator reduced with a positive denominator.
pub type Scalar = BigRational;

pub fn scalar(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn fmt_scalar(c: &Scalar) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// A word in the generators. `Ord` is degree-lexicographic.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<u16>);

impl Word {
    pub fn one() -> Self {
        Word(Vec::new())
    }

    pub fn gen(i: usize) -> Self {
        Word(vec![i as u16])
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&g| g as usize)
    }

    /// Position of the first occurrence of `pat` at or after `from`.
    pub fn find(&self, pat: &[u16], from: usize) -> Option<usize> {
        if pat.is_empty() || pat.len() > self.0.len() {
            return None;
        }
        (from..=self.0.len() - pat.len()).find(|&i| &self.0[i..i + pat.len()] == pat)
    }

    /// Formats the word with generator names, collapsing runs to powers.
    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let g = self.0[i];
            let mut j = i + 1;
            while j < self.0.len() && self.0[j] == g {
                j += 1;
            }
            let name = names
                .get(g as usize)
                .cloned()
                .unwrap_or_else(|| format!("?{g}"));
            if j - i > 1 {
                parts.push(format!("{name}^{}", j - i));
            } else {
                parts.push(name);
            }
            i = j;
        }
        parts.join("*")
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Sparse noncommutative polynomial with exact coefficients.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct NCPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::term(Word::one(), c)
    }

    pub fn gen(i: usize) -> Self {
        Self::word(Word::gen(i))
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, Scalar::one())
    }

    pub fn term(w: Word, c: Scalar) -> Self {
        let mut p = NCPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Scalar)>>(it: I) -> Self {
        let mut p = NCPoly::zero();
        for (w, c) in it {
            p.add_term(w, c);
        }
        p
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Word, Scalar> {
        self.terms
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::degree).max().unwrap_or(0)
    }

    /// The degree-lex largest word, if any.
    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Returns the scalar value if the polynomial is a constant.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Word::one()).cloned(),
            _ => None,
        }
    }

    pub fn max_letter(&self) -> Option<usize> {
        self.terms.keys().flat_map(|w| w.letters()).max()
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &NCPoly, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (w, d) in &other.terms {
            self.add_term(w.clone(), d * c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero();
        }
        NCPoly {
            terms: self.terms.iter().map(|(w, d)| (w.clone(), d * c)).collect(),
        }
    }

    /// Removes and returns the largest term.
    pub fn pop_leading(&mut self) -> Option<(Word, Scalar)> {
        self.terms.pop_last()
    }

    /// Applies `f` to every word and recombines linearly.
    pub fn map_words<F: FnMut(&Word) -> NCPoly>(&self, mut f: F) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            out.add_scaled(&f(w), c);
        }
        out
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if w.is_one() {
                s.push_str(&fmt_scalar(&abs));
            } else if abs.is_one() {
                s.push_str(&w.fmt_with(names));
            } else {
                s.push_str(&fmt_scalar(&abs));
                s.push('*');
                s.push_str(&w.fmt_with(names));
            }
        }
        s
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(w, c)| (w, fmt_scalar(c))))
            .finish()
    }
}

impl<'a> Add<&'a NCPoly> for &'a NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl<'a> Sub<&'a NCPoly> for &'a NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Scalar::one());
        out
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        self.scale(&-Scalar::one())
    }
}

impl<'a> Mul<&'a NCPoly> for &'a NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (a, c) in &self.terms {
            for (b, d) in &rhs.terms {
                out.add_term(a.concat(b), c * d);
            }
        }
        out
    }
}

/// Operations accepted by [`FreeAlgebra::arith`].
#[derive(Clone, Debug)]
pub enum ArithOp {
    Add(NCPoly),
    Mul(NCPoly),
    ScalarMul(Scalar),
    Negate,
}

/// The free algebra on a fixed, named generator set. Arithmetic through this
/// context checks that operands only use declared generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeAlgebra {
    pub names: Vec<String>,
}

impl FreeAlgebra {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        FreeAlgebra {
            names: names.into_iter().map(Into::into).collect(),
        }
    }

    pub fn check(&self, p: &NCPoly) -> Result<()> {
        match p.max_letter() {
            Some(g) if g >= self.names.len() => Err(Error::GeneratorMismatch {
                index: g,
                count: self.names.len(),
            }),
            _ => Ok(()),
        }
    }

    pub fn arith(&self, p: &NCPoly, op: &ArithOp) -> Result<NCPoly> {
        self.check(p)?;
        Ok(match op {
            ArithOp::Add(q) => {
                self.check(q)?;
                p + q
            }
            ArithOp::Mul(q) => {
                self.check(q)?;
                p * q
            }
            ArithOp::ScalarMul(c) => p.scale(c),
            ArithOp::Negate => -p,
        })
    }
}
