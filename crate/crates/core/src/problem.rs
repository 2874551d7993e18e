//! Line-oriented problem files.
//!
//! ```text
//! # the node K[x1,x2]/(x1*x2)
//! ring d=2 char=32003
//! quotient: x1*x2
//! module M: targets [0]; relations [[x1]]
//! module N: targets [1]; relations [[x2]]
//! ideal I: x1
//! run imax=3 nmax=4 cap=8 degcap=40
//! candidates: I
//! ```
//!
//! Each inner list of `relations` is one relation column, with one entry per
//! target. Ideals accept `unit` for the whole ring and `0` for the zero
//! ideal. Variables are `x1..xd` in either case; coefficients may be
//! fractions `a/b`.

use std::fmt::Write as _;

use num::BigInt;

use crate::error::{Error, Result};
use crate::groebner::DEFAULT_DEGREE_CAP;
use crate::module::{BaseRing, GradedFreeModule, ModulePresentation, Vector};
use crate::poly::{GradedPoly, Monomial, Ring};
use crate::rees::IdealData;
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedModule {
    pub name: String,
    pub targets: Vec<i64>,
    pub relations: Vec<Vector>,
}

impl NamedModule {
    pub fn from_presentation(name: &str, m: &ModulePresentation) -> Self {
        NamedModule {
            name: name.to_string(),
            targets: m.generators().twists().to_vec(),
            relations: m.relations(),
        }
    }

    /// The `module` line of a problem file.
    pub fn to_line(&self) -> String {
        let t: Vec<String> = self.targets.iter().map(|a| a.to_string()).collect();
        let r: Vec<String> = self
            .relations
            .iter()
            .map(|c| format!("[{}]", c.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        format!("module {}: targets [{}]; relations [{}]", self.name, t.join(", "), r.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealSpec {
    Unit,
    Generators(Vec<GradedPoly>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedIdeal {
    pub name: String,
    pub spec: IdealSpec,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunParams {
    pub imax: usize,
    pub nmax: usize,
    /// Homological length for resolutions over `A`.
    pub cap: usize,
    pub degcap: i64,
}

impl Default for RunParams {
    fn default() -> Self {
        RunParams {
            imax: 3,
            nmax: 3,
            cap: 8,
            degcap: DEFAULT_DEGREE_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProblemFile {
    ring: Ring,
    pub modules: Vec<NamedModule>,
    pub ideals: Vec<NamedIdeal>,
    pub run: RunParams,
    pub candidates: Vec<String>,
}

impl ProblemFile {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// `f = min deg z_j`, absent when `A = Q`.
    pub fn f(&self) -> Option<i64> {
        self.ring.min_quotient_degree()
    }

    pub fn module(&self, name: &str) -> Result<ModulePresentation> {
        let m = self
            .modules
            .iter()
            .find(|m| m.name == name)
            .ok_or_else(|| Error::Semantic {
                line: 0,
                message: format!("no module named {name}"),
            })?;
        ModulePresentation::from_relations(GradedFreeModule::new(m.targets.clone(), BaseRing::Quotient), &m.relations)
    }

    pub fn ideal(&self, name: &str) -> Result<IdealData> {
        let i = self
            .ideals
            .iter()
            .find(|i| i.name == name)
            .ok_or_else(|| Error::Semantic {
                line: 0,
                message: format!("no ideal named {name}"),
            })?;
        match &i.spec {
            IdealSpec::Unit => Ok(IdealData::unit(&self.ring)),
            IdealSpec::Generators(g) if g.is_empty() => Ok(IdealData::zero()),
            IdealSpec::Generators(g) => IdealData::new(&self.ring, g.clone()),
        }
    }

    pub fn candidate_ideals(&self) -> Result<Vec<IdealData>> {
        self.candidates.iter().map(|c| self.ideal(c)).collect()
    }

    /// Normalized text; parsing it gives back an equal problem.
    pub fn pretty(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "ring d={} char={}",
            self.ring.nvars(),
            self.ring.field().characteristic()
        );
        if !self.ring.quotient().is_empty() {
            let z: Vec<String> = self.ring.quotient().iter().map(|p| p.to_string()).collect();
            let _ = writeln!(s, "quotient: {}", z.join("; "));
        }
        for m in &self.modules {
            let _ = writeln!(s, "{}", m.to_line());
        }
        for i in &self.ideals {
            let body = match &i.spec {
                IdealSpec::Unit => "unit".to_string(),
                IdealSpec::Generators(g) if g.is_empty() => "0".to_string(),
                IdealSpec::Generators(g) => g.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "),
            };
            let _ = writeln!(s, "ideal {}: {}", i.name, body);
        }
        let r = &self.run;
        let _ = writeln!(s, "run imax={} nmax={} cap={} degcap={}", r.imax, r.nmax, r.cap, r.degcap);
        if !self.candidates.is_empty() {
            let _ = writeln!(s, "candidates: {}", self.candidates.join(", "));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Punct(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
}

impl Lexer {
    fn new(text: &str, line: usize) -> Result<Self> {
        let chars: Vec<char> = text.chars().collect();
        let mut toks = Vec::new();
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
                toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                toks.push((Tok::Int(s.parse().expect("digits")), col));
            } else if "=:;,[]+-*^/".contains(c) {
                toks.push((Tok::Punct(c), col));
                i += 1;
            } else {
                return Err(Error::Syntax {
                    line,
                    column: col,
                    expected: "a name, number or one of = : ; , [ ] + - * ^ /".into(),
                });
            }
        }
        toks.push((Tok::End, chars.len() + 1));
        Ok(Lexer { toks, pos: 0, line })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, expected: &str) -> Result<T> {
        Err(Error::Syntax {
            line: self.line,
            column: self.col(),
            expected: expected.into(),
        })
    }

    fn semantic<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Semantic {
            line: self.line,
            message: message.into(),
        })
    }

    fn is_punct(&self, c: char) -> bool {
        *self.peek() == Tok::Punct(c)
    }

    fn expect_punct(&mut self, c: char) -> Result<()> {
        if self.is_punct(c) {
            self.next();
            Ok(())
        } else {
            self.err(&format!("'{c}'"))
        }
    }

    fn expect_word(&mut self, w: &str) -> Result<()> {
        match self.peek() {
            Tok::Ident(s) if s.eq_ignore_ascii_case(w) => {
                self.next();
                Ok(())
            }
            _ => self.err(&format!("'{w}'")),
        }
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.next();
                Ok(s)
            }
            _ => self.err(what),
        }
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = if self.is_punct('-') {
            self.next();
            true
        } else {
            false
        };
        match self.peek().clone() {
            Tok::Int(v) => {
                let v: i64 = match i64::try_from(v) {
                    Ok(v) => v,
                    Err(_) => return self.semantic("integer out of range"),
                };
                self.next();
                Ok(if neg { -v } else { v })
            }
            _ => self.err("an integer"),
        }
    }

    fn at_end(&self) -> Result<()> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            self.err("end of line")
        }
    }
}

fn parse_var(name: &str, nvars: usize) -> Option<usize> {
    let rest = name.strip_prefix('x').or_else(|| name.strip_prefix('X'))?;
    let k: usize = rest.parse().ok()?;
    (1..=nvars).contains(&k).then(|| k - 1)
}

fn parse_poly(lx: &mut Lexer, ring: &Ring) -> Result<GradedPoly> {
    let field = ring.field();
    let d = ring.nvars();
    let mut terms: Vec<(Monomial, Scalar)> = Vec::new();
    let mut first = true;
    loop {
        let mut sign = field.one();
        if lx.is_punct('+') || lx.is_punct('-') {
            if lx.next() == Tok::Punct('-') {
                sign = -sign;
            }
        } else if !first {
            break;
        }
        first = false;
        let mut coeff = sign;
        let mut mono = Monomial::one(d);
        loop {
            match lx.peek().clone() {
                Tok::Int(num) => {
                    lx.next();
                    let den = if lx.is_punct('/') {
                        lx.next();
                        match lx.next() {
                            Tok::Int(v) => v,
                            _ => return lx.err("a denominator"),
                        }
                    } else {
                        BigInt::from(1)
                    };
                    let c = field.from_fraction(&num, &den).map_err(|e| Error::Semantic {
                        line: lx.line,
                        message: e.to_string(),
                    })?;
                    coeff = &coeff * &c;
                }
                Tok::Ident(name) => {
                    let Some(v) = parse_var(&name, d) else {
                        return lx.semantic(format!("unknown variable {name} (expected x1..x{d})"));
                    };
                    lx.next();
                    let mut e = 1u16;
                    if lx.is_punct('^') {
                        lx.next();
                        match lx.next() {
                            Tok::Int(v) => match u16::try_from(v) {
                                Ok(v) => e = v,
                                Err(_) => return lx.semantic("exponent out of range"),
                            },
                            _ => return lx.err("an exponent"),
                        }
                    }
                    let mut exps = vec![0u16; d];
                    exps[v] = e;
                    mono = mono.mul(&Monomial::from_exponents(&exps));
                }
                _ => return lx.err("a coefficient or variable"),
            }
            if lx.is_punct('*') {
                lx.next();
            } else {
                break;
            }
        }
        if !coeff.is_zero() {
            terms.push((mono, coeff));
        }
    }
    ring.poly(terms).map_err(|e| Error::Semantic {
        line: lx.line,
        message: e.to_string(),
    })
}

fn poly_list(lx: &mut Lexer, ring: &Ring, sep: char) -> Result<Vec<GradedPoly>> {
    let mut out = vec![parse_poly(lx, ring)?];
    while lx.is_punct(sep) {
        lx.next();
        out.push(parse_poly(lx, ring)?);
    }
    Ok(out)
}

/// Parses a problem file, checking homogeneity and names.
pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    let mut ring: Option<Ring> = None;
    let mut quotient: Option<Vec<GradedPoly>> = None;
    let mut modules: Vec<NamedModule> = Vec::new();
    let mut ideals: Vec<NamedIdeal> = Vec::new();
    let mut run = RunParams::default();
    let mut candidates: Vec<(String, usize)> = Vec::new();
    let mut names: Vec<String> = Vec::new();
    let need_ring = |ring: &Option<Ring>, line: usize| -> Result<Ring> {
        ring.clone().ok_or(Error::Semantic {
            line,
            message: "the ring line must come first".into(),
        })
    };
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let mut lx = Lexer::new(body, line)?;
        let kw = lx.ident("a statement keyword (ring, quotient, module, ideal, run, candidates)")?;
        match kw.to_ascii_lowercase().as_str() {
            "ring" => {
                if ring.is_some() {
                    return lx.semantic("duplicate ring line");
                }
                let (mut d, mut ch) = (None, None);
                while *lx.peek() != Tok::End {
                    let key = lx.ident("'d' or 'char'")?;
                    lx.expect_punct('=')?;
                    let v = lx.signed_int()?;
                    match key.as_str() {
                        "d" => d = Some(v),
                        "char" => ch = Some(v),
                        _ => return lx.semantic(format!("unknown ring key {key}")),
                    }
                }
                let Some(d) = d.filter(|&d| d >= 1) else {
                    return lx.semantic("the ring needs d >= 1");
                };
                let ch = ch.unwrap_or(32003);
                let field = u32::try_from(ch)
                    .map_err(|_| Error::Semantic {
                        line,
                        message: "bad characteristic".into(),
                    })
                    .and_then(|c| {
                        Field::from_characteristic(c).map_err(|e| Error::Semantic {
                            line,
                            message: e.to_string(),
                        })
                    })?;
                ring = Some(Ring::polynomial(d as usize, field));
            }
            "quotient" => {
                let r = need_ring(&ring, line)?;
                if quotient.is_some() {
                    return lx.semantic("duplicate quotient line");
                }
                lx.expect_punct(':')?;
                let z = if *lx.peek() == Tok::End {
                    Vec::new()
                } else {
                    poly_list(&mut lx, &r, ';')?
                };
                lx.at_end()?;
                if z.iter().any(|p| p.degree().is_none_or(|d| d <= 0)) {
                    return lx.semantic("quotient generators must have positive degree");
                }
                quotient = Some(z);
            }
            "module" => {
                let r = need_ring(&ring, line)?;
                let name = lx.ident("a module name")?;
                lx.expect_punct(':')?;
                lx.expect_word("targets")?;
                lx.expect_punct('[')?;
                let mut targets = Vec::new();
                if !lx.is_punct(']') {
                    targets.push(lx.signed_int()?);
                    while lx.is_punct(',') {
                        lx.next();
                        targets.push(lx.signed_int()?);
                    }
                }
                lx.expect_punct(']')?;
                lx.expect_punct(';')?;
                lx.expect_word("relations")?;
                lx.expect_punct('[')?;
                let mut relations = Vec::new();
                while lx.is_punct('[') {
                    lx.next();
                    let col = poly_list(&mut lx, &r, ',')?;
                    lx.expect_punct(']')?;
                    if col.len() != targets.len() {
                        return lx.semantic(format!(
                            "relation {} has {} entries for {} targets",
                            relations.len() + 1,
                            col.len(),
                            targets.len()
                        ));
                    }
                    let degs: Vec<i64> = col
                        .iter()
                        .zip(&targets)
                        .filter_map(|(p, a)| p.degree().map(|d| d + a))
                        .collect();
                    if degs.windows(2).any(|w| w[0] != w[1]) {
                        return lx.semantic(format!("relation {} is not homogeneous", relations.len() + 1));
                    }
                    relations.push(col);
                    if lx.is_punct(',') {
                        lx.next();
                    } else {
                        break;
                    }
                }
                lx.expect_punct(']')?;
                lx.at_end()?;
                if names.contains(&name) {
                    return lx.semantic(format!("duplicate name {name}"));
                }
                names.push(name.clone());
                modules.push(NamedModule {
                    name,
                    targets,
                    relations,
                });
            }
            "ideal" => {
                let r = need_ring(&ring, line)?;
                let name = lx.ident("an ideal name")?;
                lx.expect_punct(':')?;
                let spec = match lx.peek() {
                    Tok::Ident(s) if s.eq_ignore_ascii_case("unit") => {
                        lx.next();
                        IdealSpec::Unit
                    }
                    _ => {
                        let g: Vec<GradedPoly> = poly_list(&mut lx, &r, ',')?.into_iter().filter(|p| !p.is_zero()).collect();
                        IdealSpec::Generators(g)
                    }
                };
                lx.at_end()?;
                if names.contains(&name) {
                    return lx.semantic(format!("duplicate name {name}"));
                }
                names.push(name.clone());
                ideals.push(NamedIdeal { name, spec });
            }
            "run" => {
                while *lx.peek() != Tok::End {
                    let key = lx.ident("one of imax, nmax, cap, degcap")?;
                    lx.expect_punct('=')?;
                    let v = lx.signed_int()?;
                    if v < 0 {
                        return lx.semantic(format!("{key} must be nonnegative"));
                    }
                    match key.as_str() {
                        "imax" => run.imax = v as usize,
                        "nmax" => run.nmax = v as usize,
                        "cap" => run.cap = v as usize,
                        "degcap" => run.degcap = v,
                        _ => return lx.semantic(format!("unknown run key {key}")),
                    }
                }
            }
            "candidates" => {
                lx.expect_punct(':')?;
                if *lx.peek() != Tok::End {
                    candidates.push((lx.ident("an ideal name")?, line));
                    while lx.is_punct(',') {
                        lx.next();
                        candidates.push((lx.ident("an ideal name")?, line));
                    }
                }
                lx.at_end()?;
            }
            _ => {
                return Err(Error::Syntax {
                    line,
                    column: 1,
                    expected: "a statement keyword (ring, quotient, module, ideal, run, candidates)".into(),
                })
            }
        }
    }
    let Some(base) = ring else {
        return Err(Error::Semantic {
            line: 0,
            message: "missing ring line".into(),
        });
    };
    for (c, line) in &candidates {
        if !ideals.iter().any(|i| &i.name == c) {
            return Err(Error::Semantic {
                line: *line,
                message: format!("unknown candidate ideal {c}"),
            });
        }
    }
    let mut ring = base.with_degree_cap(run.degcap);
    if let Some(z) = quotient.filter(|z| !z.is_empty()) {
        ring = ring.with_quotient(z)?;
    }
    Ok(ProblemFile {
        ring,
        modules,
        ideals,
        run,
        candidates: candidates.into_iter().map(|(c, _)| c).collect(),
    })
}
