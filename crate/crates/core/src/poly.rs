//! Monomials, homogeneous polynomials and the ambient graded ring.
//!
//! All variables have degree 1. A [`Ring`] describes either the polynomial
//! ring `Q = K[x1..xd]` or a complete intersection `A = Q/(z1..zc)`; elements
//! of `A` are always represented by polynomials of `Q`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// Exponent vector of a monomial, with its total degree cached.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[u16; 6]>,
    deg: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            deg: 0,
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial {
            exps: SmallVec::from_slice(exps),
            deg: exps.iter().map(|&e| e as u32).sum(),
        }
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn degree(&self) -> i64 {
        self.deg as i64
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            deg: self.deg + other.deg,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
            deg: other.deg - self.deg,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[u16; 6]> = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, deg }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// All monomials of total degree `deg` in `nvars` variables, in
    /// descending lexicographic order of exponent vectors.
    pub fn all_of_degree(nvars: usize, deg: i64) -> Vec<Monomial> {
        let mut out = Vec::new();
        if deg < 0 {
            return out;
        }
        if nvars == 0 {
            if deg == 0 {
                out.push(Monomial::one(0));
            }
            return out;
        }
        let mut exps = vec![0u16; nvars];
        fn rec(i: usize, left: u16, exps: &mut Vec<u16>, out: &mut Vec<Monomial>) {
            if i + 1 == exps.len() {
                exps[i] = left;
                out.push(Monomial::from_exponents(exps));
                return;
            }
            for e in (0..=left).rev() {
                exps[i] = e;
                rec(i + 1, left - e, exps, out);
            }
        }
        rec(0, deg as u16, &mut exps, &mut out);
        out
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.deg == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// Monomial order of a ring, fixed at construction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    #[default]
    DegRevLex,
    Lex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => a.deg.cmp(&b.deg).then_with(|| {
                for (x, y) in a.exps.iter().zip(&b.exps).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
        }
    }
}

/// A homogeneous polynomial: terms sorted by descending monomial order,
/// no zero coefficients. The zero polynomial has no degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GradedPoly {
    terms: Vec<(Monomial, Scalar)>,
}

impl GradedPoly {
    pub fn zero() -> Self {
        GradedPoly { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<i64> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn leading(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    /// True if this is a nonzero constant, i.e. a unit of the graded ring.
    pub fn is_unit(&self) -> bool {
        self.degree() == Some(0)
    }

    pub fn constant_term(&self) -> Option<&Scalar> {
        match self.terms.as_slice() {
            [(m, c)] if m.degree() == 0 => Some(c),
            _ => None,
        }
    }

    pub(crate) fn from_sorted_unchecked(terms: Vec<(Monomial, Scalar)>) -> Self {
        GradedPoly { terms }
    }

    pub fn into_terms(self) -> Vec<(Monomial, Scalar)> {
        self.terms
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative_display();
            let abs = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let abs_str = abs.to_string();
            if m.degree() == 0 {
                write!(f, "{abs_str}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs_str}*{m}")?;
            }
        }
        Ok(())
    }
}

/// The graded base ring: `Q = K[x1..xd]`, optionally modulo a homogeneous
/// regular sequence `z1..zc` (the complete intersection `A`).
#[derive(Debug)]
pub struct Ring {
    nvars: usize,
    field: Field,
    order: MonomialOrder,
    quotient: Vec<GradedPoly>,
    quotient_gb: OnceLock<crate::groebner::GBasis>,
    degree_cap: i64,
}

impl Clone for Ring {
    fn clone(&self) -> Self {
        Ring {
            nvars: self.nvars,
            field: self.field,
            order: self.order,
            quotient: self.quotient.clone(),
            quotient_gb: OnceLock::new(),
            degree_cap: self.degree_cap,
        }
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars
            && self.field == other.field
            && self.order == other.order
            && self.quotient == other.quotient
    }
}

impl Ring {
    /// The polynomial ring in `nvars` variables with degrevlex order.
    pub fn polynomial(nvars: usize, field: Field) -> Self {
        Ring {
            nvars,
            field,
            order: MonomialOrder::DegRevLex,
            quotient: Vec::new(),
            quotient_gb: OnceLock::new(),
            degree_cap: crate::groebner::DEFAULT_DEGREE_CAP,
        }
    }

    /// Bound on the degree of S-pairs in every Gröbner computation.
    pub fn with_degree_cap(mut self, cap: i64) -> Self {
        self.degree_cap = cap;
        self.quotient_gb = OnceLock::new();
        self
    }

    pub fn degree_cap(&self) -> i64 {
        self.degree_cap
    }

    pub fn with_order(mut self, order: MonomialOrder) -> Self {
        self.order = order;
        self.quotient = self.quotient.iter().map(|p| self.normalize(p)).collect();
        self.quotient_gb = OnceLock::new();
        self
    }

    /// Passes to `A = Q/(z)`. Each `z_j` must be homogeneous of positive degree.
    pub fn with_quotient(mut self, z: Vec<GradedPoly>) -> Result<Self> {
        for p in &z {
            match p.degree() {
                Some(d) if d > 0 => {}
                Some(_) => return Err(Error::Precondition("quotient relation of degree 0".into())),
                None => return Err(Error::Precondition("zero quotient relation".into())),
            }
        }
        self.quotient = z.iter().map(|p| self.normalize(p)).collect();
        self.quotient_gb = OnceLock::new();
        Ok(self)
    }

    /// The polynomial ring `Q` underlying this ring.
    pub fn ambient(&self) -> Ring {
        Ring::polynomial(self.nvars, self.field)
            .with_order(self.order)
            .with_degree_cap(self.degree_cap)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn quotient(&self) -> &[GradedPoly] {
        &self.quotient
    }

    pub fn is_polynomial(&self) -> bool {
        self.quotient.is_empty()
    }

    /// Degrees `f_j = deg z_j` in input order.
    pub fn quotient_degrees(&self) -> Vec<i64> {
        self.quotient.iter().map(|p| p.degree().unwrap_or(0)).collect()
    }

    /// `f = min deg z_j`, or `None` when `A = Q`.
    pub fn min_quotient_degree(&self) -> Option<i64> {
        self.quotient_degrees().into_iter().min()
    }

    /// Gröbner basis of the ideal `(z)` in `Q`.
    pub fn quotient_basis(&self) -> &crate::groebner::GBasis {
        self.quotient_gb.get_or_init(|| {
            let q = self.ambient();
            let ambient = crate::module::GradedFreeModule::new(vec![0], crate::module::BaseRing::Polynomial);
            let gens: Vec<Vec<GradedPoly>> = self.quotient.iter().map(|p| vec![p.clone()]).collect();
            crate::groebner::buchberger(&q, &gens, &ambient, self.degree_cap)
                .expect("Gröbner basis of a homogeneous quotient ideal")
        })
    }

    /// Canonical representative modulo `(z)`.
    pub fn reduce(&self, p: &GradedPoly) -> GradedPoly {
        if self.quotient.is_empty() || p.is_zero() {
            return p.clone();
        }
        let gb = self.quotient_basis();
        crate::groebner::normal_form(&self.ambient(), std::slice::from_ref(p), gb)
            .into_iter()
            .next()
            .unwrap_or_default()
    }

    pub fn zero(&self) -> GradedPoly {
        GradedPoly::zero()
    }

    pub fn constant(&self, c: Scalar) -> GradedPoly {
        self.term(Monomial::one(self.nvars), c)
    }

    pub fn one(&self) -> GradedPoly {
        self.constant(self.field.one())
    }

    pub fn from_i64(&self, c: i64) -> GradedPoly {
        self.constant(self.field.from_i64(c))
    }

    pub fn term(&self, m: Monomial, c: Scalar) -> GradedPoly {
        if c.is_zero() {
            GradedPoly::zero()
        } else {
            GradedPoly { terms: vec![(m, c)] }
        }
    }

    /// The variable `x_{i+1}`.
    pub fn var(&self, i: usize) -> GradedPoly {
        self.term(Monomial::var(self.nvars, i), self.field.one())
    }

    /// Builds a polynomial from arbitrary terms; fails if not homogeneous.
    pub fn poly(&self, terms: Vec<(Monomial, Scalar)>) -> Result<GradedPoly> {
        let mut terms: Vec<_> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Scalar)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if m.nvars() != self.nvars {
                return Err(Error::Dimension(format!("monomial in {} variables, ring has {}", m.nvars(), self.nvars)));
            }
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = &*lc + &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        if let Some((m0, _)) = out.first() {
            let d = m0.degree();
            if out.iter().any(|(m, _)| m.degree() != d) {
                return Err(Error::Homogeneity("polynomial mixes degrees".into()));
            }
        }
        Ok(GradedPoly { terms: out })
    }

    /// Re-sorts a polynomial built in a ring with another order.
    pub fn normalize(&self, p: &GradedPoly) -> GradedPoly {
        self.poly(p.terms.clone()).expect("homogeneous input stays homogeneous")
    }

    pub fn add(&self, p: &GradedPoly, q: &GradedPoly) -> Result<GradedPoly> {
        match (p.degree(), q.degree()) {
            (Some(a), Some(b)) if a != b => Err(Error::Homogeneity(format!("adding degrees {a} and {b}"))),
            _ => Ok(self.merge(p, q, false)),
        }
    }

    pub fn sub(&self, p: &GradedPoly, q: &GradedPoly) -> Result<GradedPoly> {
        match (p.degree(), q.degree()) {
            (Some(a), Some(b)) if a != b => Err(Error::Homogeneity(format!("subtracting degrees {a} and {b}"))),
            _ => Ok(self.merge(p, q, true)),
        }
    }

    fn merge(&self, p: &GradedPoly, q: &GradedPoly, negate_q: bool) -> GradedPoly {
        let mut out = Vec::with_capacity(p.terms.len() + q.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < p.terms.len() || j < q.terms.len() {
            let ord = if i == p.terms.len() {
                Ordering::Less
            } else if j == q.terms.len() {
                Ordering::Greater
            } else {
                self.order.cmp(&p.terms[i].0, &q.terms[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(p.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (m, c) = &q.terms[j];
                    out.push((m.clone(), if negate_q { -c } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_q {
                        &p.terms[i].1 - &q.terms[j].1
                    } else {
                        &p.terms[i].1 + &q.terms[j].1
                    };
                    if !c.is_zero() {
                        out.push((p.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        GradedPoly { terms: out }
    }

    pub fn neg(&self, p: &GradedPoly) -> GradedPoly {
        GradedPoly {
            terms: p.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, p: &GradedPoly, c: &Scalar) -> GradedPoly {
        if c.is_zero() {
            return GradedPoly::zero();
        }
        GradedPoly {
            terms: p.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// `c * m * p`; monomial multiplication preserves the order.
    pub fn mul_term(&self, p: &GradedPoly, m: &Monomial, c: &Scalar) -> GradedPoly {
        if c.is_zero() {
            return GradedPoly::zero();
        }
        GradedPoly {
            terms: p.terms.iter().map(|(pm, a)| (pm.mul(m), a * c)).collect(),
        }
    }

    pub fn mul(&self, p: &GradedPoly, q: &GradedPoly) -> GradedPoly {
        let mut acc = GradedPoly::zero();
        for (m, c) in &q.terms {
            acc = self.merge(&acc, &self.mul_term(p, m, c), false);
        }
        acc
    }

    pub fn pow(&self, p: &GradedPoly, e: u32) -> GradedPoly {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, p);
        }
        acc
    }
}
