//! Line-oriented presentation language.
//!
//! ```text
//! algebra heisenberg
//! gen y z
//! gen g inv G
//! rel z*y = y*z
//! delta y = y ox 1 + 1 ox y
//! counit y = 0
//! antipode y = -y
//! ore x
//! auto sigma y = y
//! autoinv sigma y = y
//! der delta y = 0
//! deltaX = 1 ox x + x ox 1 + y ox z
//! hoe beta = 1
//! hoe chi y = 0
//! assert domain
//! ```
//!
//! `#` starts a comment. `ox` separates tensor slots and binds tighter than
//! `+` and `-`. Products need an explicit `*`; `/` divides by a scalar.
//! Optional extras: `counit x = c` after `ore x`, and `hoe w = ...` for the
//! inhomogeneous part over the base.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::freealg::{NCPoly, Scalar, Word};
use crate::rewrite::{orient, Generator};
use crate::tensor::TensorElem;

/// Tensors in a source file are kept unreduced over the free algebra on the
/// declared symbols; this carrier marks them.
pub const RAW_CARRIER: u64 = 0;

const MAX_EXPONENT: u32 = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct SourceFile {
    pub name: String,
    pub gens: Vec<Generator>,
    pub rels: Vec<(NCPoly, NCPoly)>,
    pub delta: BTreeMap<usize, TensorElem>,
    pub counit: BTreeMap<usize, Scalar>,
    pub antipode: BTreeMap<usize, NCPoly>,
    pub ore: Option<OreSection>,
    pub assertions: Vec<String>,
}

/// Everything after `ore x`. Words may use `x`, which has index `gens.len()`.
#[derive(Clone, Debug, PartialEq)]
pub struct OreSection {
    pub x: String,
    pub sigma_name: Option<String>,
    pub delta_name: Option<String>,
    pub sigma: BTreeMap<usize, NCPoly>,
    pub sigma_inv: BTreeMap<usize, NCPoly>,
    pub der: BTreeMap<usize, NCPoly>,
    pub counit_x: Option<Scalar>,
    pub delta_x: Option<TensorElem>,
    pub beta: Option<NCPoly>,
    pub chi: BTreeMap<usize, Scalar>,
    pub w: Option<TensorElem>,
}

impl OreSection {
    fn new(x: String) -> Self {
        OreSection {
            x,
            sigma_name: None,
            delta_name: None,
            sigma: BTreeMap::new(),
            sigma_inv: BTreeMap::new(),
            der: BTreeMap::new(),
            counit_x: None,
            delta_x: None,
            beta: None,
            chi: BTreeMap::new(),
            w: None,
        }
    }
}

impl SourceFile {
    pub fn names(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.name.clone()).collect()
    }

    /// Base generator names followed by the Ore variable, if any.
    pub fn all_names(&self) -> Vec<String> {
        let mut n = self.names();
        if let Some(o) = &self.ore {
            n.push(o.x.clone());
        }
        n
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(BigInt),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    col: usize,
}

fn tokenize(line: &str, lineno: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                col,
            });
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token {
                tok: Tok::Num(s.parse().expect("digits")),
                col,
            });
        } else if "+-*/^()=".contains(c) {
            out.push(Token {
                tok: Tok::Sym(c),
                col,
            });
            i += 1;
        } else {
            return Err(Error::Syntax {
                line: lineno,
                col,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

/// One tensor term: a coefficient-free list of slots (the sign lives in the
/// first slot).
type Terms = Vec<Vec<NCPoly>>;

struct Expr<'a> {
    toks: &'a [Token],
    pos: usize,
    line: usize,
    end_col: usize,
    symbols: &'a [String],
}

impl Expr<'_> {
    fn err(&self, col: usize, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.line,
            col,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.col)
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Sym(c))
    }

    fn is_ox(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == "ox")
    }

    fn sum(&mut self) -> Result<Terms> {
        let mut out = Vec::new();
        let mut negate = false;
        if self.is_sym('+') || self.is_sym('-') {
            negate = self.is_sym('-');
            self.pos += 1;
        }
        loop {
            let mut term = self.tensor_term()?;
            if negate {
                term[0] = -&term[0];
            }
            out.push(term);
            if self.is_sym('+') || self.is_sym('-') {
                negate = self.is_sym('-');
                self.pos += 1;
            } else {
                return Ok(out);
            }
        }
    }

    fn tensor_term(&mut self) -> Result<Vec<NCPoly>> {
        let mut slots = vec![self.product("an expression")?];
        while self.is_ox() {
            self.pos += 1;
            slots.push(self.product("a factor after `ox`")?);
        }
        Ok(slots)
    }

    fn product(&mut self, what: &str) -> Result<NCPoly> {
        let mut acc = self.factor(what)?;
        loop {
            if self.is_sym('*') {
                self.pos += 1;
                let f = self.factor("a factor after `*`")?;
                acc = &acc * &f;
            } else if self.is_sym('/') {
                self.pos += 1;
                let col = self.col();
                let f = self.factor("a divisor after `/`")?;
                let c = f
                    .as_scalar()
                    .ok_or_else(|| self.err(col, "can only divide by a scalar"))?;
                if c.is_zero() {
                    return Err(self.err(col, "division by zero"));
                }
                acc = acc.scale(&c.recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self, what: &str) -> Result<NCPoly> {
        let base = self.atom(what)?;
        if !self.is_sym('^') {
            return Ok(base);
        }
        self.pos += 1;
        let col = self.col();
        let n = match self.peek() {
            Some(Tok::Num(n)) => n.to_u32().filter(|&n| n <= MAX_EXPONENT),
            _ => return Err(self.err(col, "expected an exponent after `^`")),
        }
        .ok_or_else(|| self.err(col, format!("exponent larger than {MAX_EXPONENT}")))?;
        self.pos += 1;
        let mut acc = NCPoly::one();
        for _ in 0..n {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    fn atom(&mut self, what: &str) -> Result<NCPoly> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(NCPoly::constant(Scalar::from_integer(n)))
            }
            Some(Tok::Ident(s)) if s != "ox" => {
                self.pos += 1;
                match self.symbols.iter().position(|m| *m == s) {
                    Some(i) => Ok(NCPoly::gen(i)),
                    None => Err(Error::UndeclaredSymbol {
                        name: s,
                        line: self.line,
                        col,
                    }),
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.sum()?;
                if !self.is_sym(')') {
                    return Err(self.err(self.col(), "expected `)`"));
                }
                self.pos += 1;
                let mut p = NCPoly::zero();
                for t in inner {
                    if t.len() != 1 {
                        return Err(self.err(col, "tensors cannot be nested inside parentheses"));
                    }
                    p = &p + &t[0];
                }
                Ok(p)
            }
            _ => Err(self.err(col, format!("expected {what}"))),
        }
    }
}

fn parse_terms(
    toks: &[Token],
    line: usize,
    end_col: usize,
    symbols: &[String],
) -> Result<(Terms, usize)> {
    let first_col = toks.first().map_or(end_col, |t| t.col);
    let mut e = Expr {
        toks,
        pos: 0,
        line,
        end_col,
        symbols,
    };
    let terms = e.sum()?;
    if e.pos < toks.len() {
        return Err(e.err(e.col(), "unexpected token"));
    }
    Ok((terms, first_col))
}

fn terms_to_poly(terms: Terms, line: usize, col: usize) -> Result<NCPoly> {
    let mut p = NCPoly::zero();
    for t in terms {
        if t.len() != 1 {
            return Err(Error::Syntax {
                line,
                col,
                message: "expected a polynomial, found a tensor".into(),
            });
        }
        p = &p + &t[0];
    }
    Ok(p)
}

fn terms_to_tensor(terms: Terms, arity: usize, line: usize, col: usize) -> Result<TensorElem> {
    let mut out = TensorElem::zero(arity, RAW_CARRIER);
    for t in terms {
        if t.iter().any(NCPoly::is_zero) {
            continue;
        }
        if t.len() != arity {
            return Err(Error::Syntax {
                line,
                col,
                message: format!("expected a tensor with {arity} slots, found {}", t.len()),
            });
        }
        let mut acc: Vec<(Vec<Word>, Scalar)> = vec![(Vec::new(), Scalar::one())];
        for slot in &t {
            let mut next = Vec::new();
            for (ws, c) in &acc {
                for (w, d) in slot.terms() {
                    let mut v = ws.clone();
                    v.push(w.clone());
                    next.push((v, c * d));
                }
            }
            acc = next;
        }
        for (ws, c) in acc {
            out.add_term(ws, c);
        }
    }
    Ok(out)
}

fn terms_to_scalar(terms: Terms, line: usize, col: usize) -> Result<Scalar> {
    terms_to_poly(terms, line, col)?
        .as_scalar()
        .ok_or(Error::Syntax {
            line,
            col,
            message: "expected a scalar".into(),
        })
}

const KEYWORDS: &[&str] = &["ox", "inv"];

struct Line<'a> {
    no: usize,
    toks: &'a [Token],
    end_col: usize,
}

impl<'a> Line<'a> {
    fn err(&self, col: usize, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.no,
            col,
            message: message.into(),
        }
    }

    fn col(&self, i: usize) -> usize {
        self.toks.get(i).map_or(self.end_col, |t| t.col)
    }

    fn ident(&self, i: usize, what: &str) -> Result<&'a str> {
        match self.toks.get(i).map(|t| &t.tok) {
            Some(Tok::Ident(s)) => Ok(s),
            _ => Err(self.err(self.col(i), format!("expected {what}"))),
        }
    }

    fn symbol(&self, i: usize, names: &[String]) -> Result<usize> {
        let s = self.ident(i, "a symbol")?;
        names
            .iter()
            .position(|n| n == s)
            .ok_or(Error::UndeclaredSymbol {
                name: s.to_string(),
                line: self.no,
                col: self.col(i),
            })
    }

    fn expect_eq(&self, i: usize) -> Result<()> {
        match self.toks.get(i).map(|t| &t.tok) {
            Some(Tok::Sym('=')) => Ok(()),
            _ => Err(self.err(self.col(i), "expected `=`")),
        }
    }

    /// The expression after position `i`.
    fn rhs(&self, i: usize, symbols: &[String]) -> Result<(Terms, usize)> {
        parse_terms(
            &self.toks[i.min(self.toks.len())..],
            self.no,
            self.end_col,
            symbols,
        )
    }

    fn poly(&self, i: usize, symbols: &[String]) -> Result<NCPoly> {
        let (t, col) = self.rhs(i, symbols)?;
        terms_to_poly(t, self.no, col)
    }

    fn scalar(&self, i: usize) -> Result<Scalar> {
        let (t, col) = self.rhs(i, &[])?;
        terms_to_scalar(t, self.no, col)
    }

    fn tensor(&self, i: usize, symbols: &[String]) -> Result<TensorElem> {
        let (t, col) = self.rhs(i, symbols)?;
        terms_to_tensor(t, 2, self.no, col)
    }
}

fn insert_once<V>(
    map: &mut BTreeMap<usize, V>,
    k: usize,
    v: V,
    line: &Line,
    what: &str,
) -> Result<()> {
    if map.insert(k, v).is_some() {
        return Err(line.err(line.col(0), format!("duplicate {what}")));
    }
    Ok(())
}

fn set_once<V>(slot: &mut Option<V>, v: V, line: &Line, what: &str) -> Result<()> {
    if slot.replace(v).is_some() {
        return Err(line.err(line.col(0), format!("duplicate {what}")));
    }
    Ok(())
}

fn check_map_name(slot: &mut Option<String>, name: &str, line: &Line) -> Result<()> {
    match slot {
        Some(existing) if existing != name => Err(line.err(
            line.col(1),
            format!("map is called `{existing}` elsewhere, not `{name}`"),
        )),
        _ => {
            *slot = Some(name.to_string());
            Ok(())
        }
    }
}

pub fn parse(text: &str) -> Result<SourceFile> {
    let mut src = SourceFile {
        name: String::new(),
        gens: Vec::new(),
        rels: Vec::new(),
        delta: BTreeMap::new(),
        counit: BTreeMap::new(),
        antipode: BTreeMap::new(),
        ore: None,
        assertions: Vec::new(),
    };
    let mut named = false;
    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokenize(content, no)?;
        if toks.is_empty() {
            continue;
        }
        let line = Line {
            no,
            toks: &toks,
            end_col: content.chars().count() + 1,
        };
        let names = src.names();
        let all = src.all_names();
        match line.ident(0, "a directive")? {
            "algebra" => {
                if named {
                    return Err(line.err(line.col(0), "duplicate algebra line"));
                }
                let start = line.col(1);
                let name: String = content
                    .chars()
                    .skip(start - 1)
                    .collect::<String>()
                    .trim()
                    .to_string();
                if toks.len() < 2 || name.is_empty() {
                    return Err(line.err(start, "expected an algebra name"));
                }
                src.name = name;
                named = true;
            }
            "gen" => {
                if src.ore.is_some() {
                    return Err(line.err(line.col(0), "generators must be declared before `ore`"));
                }
                let mut k = 1;
                if toks.len() < 2 {
                    return Err(line.err(line.col(1), "expected a generator name"));
                }
                while k < toks.len() {
                    let declare = |src: &SourceFile, k: usize| -> Result<String> {
                        let name = line.ident(k, "a generator name")?;
                        if KEYWORDS.contains(&name) || src.gens.iter().any(|g| g.name == name) {
                            return Err(
                                line.err(line.col(k), format!("`{name}` cannot be declared here"))
                            );
                        }
                        Ok(name.to_string())
                    };
                    let name = declare(&src, k)?;
                    if matches!(toks.get(k + 1).map(|t| &t.tok), Some(Tok::Ident(s)) if s == "inv")
                    {
                        let inv = declare(&src, k + 2)?;
                        if inv == name {
                            return Err(line.err(
                                line.col(k + 2),
                                "a generator cannot be its own designated inverse",
                            ));
                        }
                        let j = src.gens.len();
                        src.gens.push(Generator {
                            name,
                            inverse: Some(j + 1),
                            is_inverse: false,
                        });
                        src.gens.push(Generator {
                            name: inv,
                            inverse: Some(j),
                            is_inverse: true,
                        });
                        k += 3;
                    } else {
                        src.gens.push(Generator::plain(name));
                        k += 1;
                    }
                }
            }
            "rel" => {
                let eq = toks
                    .iter()
                    .position(|t| t.tok == Tok::Sym('='))
                    .ok_or_else(|| line.err(line.end_col, "expected `=`"))?;
                let (lt, lcol) = parse_terms(&toks[1..eq], no, toks[eq].col, &names)?;
                let lhs = terms_to_poly(lt, no, lcol)?;
                let rhs = line.poly(eq + 1, &names)?;
                orient(&lhs, &rhs, &names).map_err(|e| Error::Located {
                    line: no,
                    col: lcol,
                    inner: Box::new(e),
                })?;
                src.rels.push((lhs, rhs));
            }
            "delta" => {
                let g = line.symbol(1, &names)?;
                line.expect_eq(2)?;
                let t = line.tensor(3, &names)?;
                insert_once(&mut src.delta, g, t, &line, "delta line")?;
            }
            "counit" => {
                let g = line.symbol(1, &all)?;
                line.expect_eq(2)?;
                let c = line.scalar(3)?;
                if g == names.len() {
                    let ore = src.ore.as_mut().expect("x is declared");
                    set_once(&mut ore.counit_x, c, &line, "counit line")?;
                } else {
                    insert_once(&mut src.counit, g, c, &line, "counit line")?;
                }
            }
            "antipode" => {
                let g = line.symbol(1, &names)?;
                line.expect_eq(2)?;
                let p = line.poly(3, &names)?;
                insert_once(&mut src.antipode, g, p, &line, "antipode line")?;
            }
            "ore" => {
                if src.ore.is_some() {
                    return Err(line.err(line.col(0), "duplicate ore line"));
                }
                let x = line.ident(1, "the name of the adjoined variable")?;
                if KEYWORDS.contains(&x) || names.iter().any(|n| n == x) {
                    return Err(line.err(line.col(1), format!("`{x}` cannot be declared here")));
                }
                if toks.len() > 2 {
                    return Err(line.err(line.col(2), "unexpected token"));
                }
                src.ore = Some(OreSection::new(x.to_string()));
            }
            kw @ ("auto" | "autoinv" | "der") => {
                let ore = src.ore.as_mut().ok_or_else(|| {
                    line.err(
                        line.col(0),
                        format!("`{kw}` requires a preceding `ore` line"),
                    )
                })?;
                let map = line.ident(1, "a map name")?;
                let g = line.symbol(2, &names)?;
                line.expect_eq(3)?;
                let p = line.poly(4, &names)?;
                match kw {
                    "auto" => {
                        check_map_name(&mut ore.sigma_name, map, &line)?;
                        insert_once(&mut ore.sigma, g, p, &line, "auto line")?;
                    }
                    "autoinv" => {
                        check_map_name(&mut ore.sigma_name, map, &line)?;
                        insert_once(&mut ore.sigma_inv, g, p, &line, "autoinv line")?;
                    }
                    _ => {
                        check_map_name(&mut ore.delta_name, map, &line)?;
                        insert_once(&mut ore.der, g, p, &line, "der line")?;
                    }
                }
            }
            "deltaX" => {
                let ore = src.ore.as_mut().ok_or_else(|| {
                    line.err(line.col(0), "`deltaX` requires a preceding `ore` line")
                })?;
                line.expect_eq(1)?;
                let t = line.tensor(2, &all)?;
                set_once(&mut ore.delta_x, t, &line, "deltaX line")?;
            }
            "hoe" => {
                let ore = src.ore.as_mut().ok_or_else(|| {
                    line.err(line.col(0), "`hoe` requires a preceding `ore` line")
                })?;
                match line.ident(1, "`beta`, `chi` or `w`")? {
                    "beta" => {
                        line.expect_eq(2)?;
                        let p = line.poly(3, &names)?;
                        set_once(&mut ore.beta, p, &line, "hoe beta line")?;
                    }
                    "w" => {
                        line.expect_eq(2)?;
                        let t = line.tensor(3, &names)?;
                        set_once(&mut ore.w, t, &line, "hoe w line")?;
                    }
                    "chi" => {
                        let g = line.symbol(2, &names)?;
                        line.expect_eq(3)?;
                        let c = line.scalar(4)?;
                        insert_once(&mut ore.chi, g, c, &line, "hoe chi line")?;
                    }
                    _ => return Err(line.err(line.col(1), "expected `beta`, `chi` or `w`")),
                }
            }
            "assert" => {
                let words: Vec<String> = toks
                    .iter()
                    .skip(1)
                    .map(|t| match &t.tok {
                        Tok::Ident(s) => Ok(s.clone()),
                        _ => Err(line.err(t.col, "assertions are plain words")),
                    })
                    .collect::<Result<_>>()?;
                if words.is_empty() {
                    return Err(line.err(line.end_col, "expected an assertion"));
                }
                src.assertions.push(words.join(" "));
            }
            other => return Err(line.err(line.col(0), format!("unknown directive `{other}`"))),
        }
    }
    if src.gens.is_empty() {
        return Err(Error::Syntax {
            line: text.lines().count().max(1),
            col: 1,
            message: "no generators declared".into(),
        });
    }
    if !named {
        src.name = "unnamed".into();
    }
    Ok(src)
}
