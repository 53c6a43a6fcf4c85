//! Sparse multivariate polynomials over the rationals.
//!
//! A [`Poly`] carries its ring (variable list plus monomial order) and keeps
//! its terms strictly descending in that order with no zero coefficients, so
//! structural equality is mathematical equality.

mod order;
mod parse;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::BigRat;

pub use order::{MonOrder, Monomial};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("parse error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("negative exponent at position {pos}")]
    NegativeExponent { pos: usize },
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("invalid variable list: {0}")]
    BadVariables(String),
    #[error("variable `{0}` cannot be dropped from this polynomial")]
    VariableInUse(String),
}

/// Variable names in precedence order plus the active monomial order.
/// Coefficients are always rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingSpec {
    pub vars: Vec<String>,
    #[serde(default)]
    pub order: MonOrder,
}

impl RingSpec {
    pub fn new<S: AsRef<str>>(vars: &[S], order: MonOrder) -> Result<Arc<RingSpec>, PolyError> {
        let spec = RingSpec {
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            order,
        };
        spec.validate()?;
        Ok(Arc::new(spec))
    }

    pub fn validate(&self) -> Result<(), PolyError> {
        for (i, v) in self.vars.iter().enumerate() {
            let mut chars = v.chars();
            let ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
                && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(PolyError::BadVariables(format!("`{v}` is not an identifier")));
            }
            if self.vars[..i].contains(v) {
                return Err(PolyError::BadVariables(format!("`{v}` appears twice")));
            }
        }
        if let MonOrder::Elim(k) = self.order {
            if k > self.vars.len() {
                return Err(PolyError::BadVariables("elimination block too large".into()));
            }
        }
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same variables, different order.
    pub fn with_order(&self, order: MonOrder) -> Arc<RingSpec> {
        Arc::new(RingSpec {
            vars: self.vars.clone(),
            order,
        })
    }

    /// A variable name not already in use, derived from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        while self.index_of(&name).is_some() {
            name.push('_');
        }
        name
    }
}

pub fn same_ring(a: &Arc<RingSpec>, b: &Arc<RingSpec>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: BigRat,
    pub mon: Monomial,
}

#[derive(Clone)]
pub struct Poly {
    ring: Arc<RingSpec>,
    terms: Vec<Term>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Poly {
    pub fn zero(ring: &Arc<RingSpec>) -> Poly {
        Poly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<RingSpec>, c: BigRat) -> Poly {
        Poly::monomial(ring, c, Monomial::one(ring.nvars()))
    }

    pub fn one(ring: &Arc<RingSpec>) -> Poly {
        Poly::constant(ring, BigRat::one())
    }

    pub fn monomial(ring: &Arc<RingSpec>, c: BigRat, mon: Monomial) -> Poly {
        assert_eq!(mon.nvars(), ring.nvars());
        let terms = if c.is_zero() {
            vec![]
        } else {
            vec![Term { coeff: c, mon }]
        };
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &Arc<RingSpec>, name: &str) -> Result<Poly, PolyError> {
        let i = ring.index_of(name).ok_or_else(|| PolyError::UnknownVariable {
            name: name.to_string(),
            pos: 0,
        })?;
        Ok(Poly::monomial(
            ring,
            BigRat::one(),
            Monomial::var(ring.nvars(), i),
        ))
    }

    /// Canonicalizes an arbitrary bag of terms: merges duplicates, drops
    /// zeros, sorts descending.
    pub fn from_terms<I>(ring: &Arc<RingSpec>, terms: I) -> Poly
    where
        I: IntoIterator<Item = (BigRat, Monomial)>,
    {
        let mut acc: HashMap<Monomial, BigRat> = HashMap::new();
        for (c, m) in terms {
            assert_eq!(m.nvars(), ring.nvars());
            let slot = acc.entry(m).or_insert_with(BigRat::zero);
            *slot = &*slot + &c;
        }
        let mut terms: Vec<Term> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(mon, coeff)| Term { coeff, mon })
            .collect();
        let ord = ring.order;
        terms.sort_by(|a, b| ord.compare(&b.mon, &a.mon));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn parse(text: &str, ring: &Arc<RingSpec>) -> Result<Poly, PolyError> {
        parse::parse_poly(text, ring)
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Number of terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.mon.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].mon.is_one() && self.terms[0].coeff.is_one()
    }

    pub fn leading(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Leading monomial. Panics on zero.
    pub fn lm(&self) -> &Monomial {
        &self.terms[0].mon
    }

    /// Leading coefficient. Panics on zero.
    pub fn lc(&self) -> &BigRat {
        &self.terms[0].coeff
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mon.degree()).max()
    }

    fn check(&self, other: &Poly) -> Result<(), PolyError> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    fn merge(&self, other: &Poly, negate_other: bool) -> Poly {
        let ord = self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let other_coeff = |c: &BigRat| if negate_other { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match ord.compare(&a[i].mon, &b[j].mon) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(Term {
                        coeff: other_coeff(&b[j].coeff),
                        mon: b[j].mon.clone(),
                    });
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate_other {
                        &a[i].coeff - &b[j].coeff
                    } else {
                        &a[i].coeff + &b[j].coeff
                    };
                    if !c.is_zero() {
                        out.push(Term {
                            coeff: c,
                            mon: a[i].mon.clone(),
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|t| Term {
            coeff: other_coeff(&t.coeff),
            mon: t.mon.clone(),
        }));
        Poly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.ring));
        }
        if self.terms.len() == 1 {
            let t = &self.terms[0];
            return Ok(other.mul_term(&t.coeff, &t.mon));
        }
        if other.terms.len() == 1 {
            let t = &other.terms[0];
            return Ok(self.mul_term(&t.coeff, &t.mon));
        }
        let products = self.terms.iter().flat_map(|s| {
            other
                .terms
                .iter()
                .map(move |o| (&s.coeff * &o.coeff, s.mon.mul(&o.mon)))
        });
        Ok(Poly::from_terms(&self.ring, products))
    }

    /// `c * m * self`; multiplication by a monomial preserves term order.
    pub fn mul_term(&self, c: &BigRat, m: &Monomial) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: &t.coeff * c,
                    mon: t.mon.mul(m),
                })
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigRat) -> Poly {
        self.mul_term(c, &Monomial::one(self.ring.nvars()))
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => self.clone(),
            Some(t) if t.coeff.is_one() => self.clone(),
            Some(t) => self.scale(&t.coeff.recip().expect("nonzero leading coefficient")),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(&self.ring);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Re-sorts the terms under a different order on the same variables.
    pub fn with_order(&self, order: MonOrder) -> Poly {
        self.to_ring(&self.ring.with_order(order))
    }

    /// Moves to a ring with the same variable list (possibly another order).
    pub fn to_ring(&self, ring: &Arc<RingSpec>) -> Poly {
        assert_eq!(ring.vars, self.ring.vars, "to_ring requires identical variables");
        let mut terms = self.terms.clone();
        let ord = ring.order;
        terms.sort_by(|a, b| ord.compare(&b.mon, &a.mon));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Maps variable `i` of the current ring to variable `map[i]` of `target`.
    /// Variables mapped to `None` must not occur.
    pub fn remap(&self, target: &Arc<RingSpec>, map: &[Option<usize>]) -> Result<Poly, PolyError> {
        assert_eq!(map.len(), self.ring.nvars());
        let n = target.nvars();
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let mut e = vec![0u32; n];
            for (i, &x) in t.mon.exponents().iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => e[j] += x,
                    None => return Err(PolyError::VariableInUse(self.ring.vars[i].clone())),
                }
            }
            terms.push((t.coeff.clone(), Monomial::from_exponents(e)));
        }
        Ok(Poly::from_terms(target, terms))
    }

    /// Returns `self / g` when `g` divides `self` exactly.
    pub fn exact_div(&self, g: &Poly) -> Option<Poly> {
        if g.is_zero() {
            return None;
        }
        let mut rest = self.clone();
        let mut quot = Vec::new();
        let lc_inv = g.lc().recip().ok()?;
        while let Some(t) = rest.leading() {
            let m = t.mon.div(g.lm())?;
            let c = &t.coeff * &lc_inv;
            rest = &rest - &g.mul_term(&c, &m);
            quot.push((c, m));
        }
        Some(Poly::from_terms(&self.ring, quot))
    }

    /// Variables occurring in this polynomial.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.ring.nvars())
            .filter(|&i| self.terms.iter().any(|t| t.mon.exponents()[i] > 0))
            .collect()
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("ring mismatch in addition")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("ring mismatch in subtraction")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("ring mismatch in multiplication")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&BigRat::from_i64(-1))
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, ring: &RingSpec, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(&ring.vars[i])?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let c = t.coeff.abs();
            if t.mon.is_one() {
                write!(f, "{c}")?;
            } else {
                if !c.is_one() {
                    write!(f, "{c}*")?;
                }
                write_monomial(f, &self.ring, &t.mon)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
