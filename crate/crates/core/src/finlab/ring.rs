//! Finite commutative rings given by full addition and multiplication
//! tables. Elements are indices `0..size` with `0` the zero element.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::set::{bits, Set};

/// Hard limit coming from the 64-bit subset representation.
pub const MAX_SIZE: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FinRingSpec {
    /// `Z/n`
    Zn { n: u32 },
    /// `left × right`
    Product {
        left: Box<FinRingSpec>,
        right: Box<FinRingSpec>,
    },
    /// `Z/n[x]/(f)` with `f` monic, coefficients listed from the constant
    /// term upwards (the last one must be 1).
    PolyQuot { n: u32, modulus: Vec<u32> },
}

impl FinRingSpec {
    pub fn zn(n: u32) -> FinRingSpec {
        FinRingSpec::Zn { n }
    }

    pub fn product(left: FinRingSpec, right: FinRingSpec) -> FinRingSpec {
        FinRingSpec::Product {
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    pub fn poly_quot(n: u32, modulus: &[u32]) -> FinRingSpec {
        FinRingSpec::PolyQuot {
            n,
            modulus: modulus.to_vec(),
        }
    }

    /// Number of elements, or `None` on overflow.
    pub fn size(&self) -> Option<u128> {
        match self {
            FinRingSpec::Zn { n } => Some(*n as u128),
            FinRingSpec::Product { left, right } => left.size()?.checked_mul(right.size()?),
            FinRingSpec::PolyQuot { n, modulus } => {
                let d = modulus.len().checked_sub(1)?;
                (*n as u128).checked_pow(u32::try_from(d).ok()?)
            }
        }
    }
}

fn poly_text(coeffs: &[u32]) -> String {
    let mut parts = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mon = match i {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{i}"),
        };
        parts.push(match (c, i) {
            (_, 0) => c.to_string(),
            (1, _) => mon,
            _ => format!("{c}{mon}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

impl fmt::Display for FinRingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FinRingSpec::Zn { n } => write!(f, "Z/{n}"),
            FinRingSpec::Product { left, right } => {
                let wrap = |s: &FinRingSpec| match s {
                    FinRingSpec::Product { .. } => format!("({s})"),
                    _ => s.to_string(),
                };
                write!(f, "{} x {}", wrap(left), wrap(right))
            }
            FinRingSpec::PolyQuot { n, modulus } => write!(f, "Z/{n}[x]/({})", poly_text(modulus)),
        }
    }
}

/// Parses the notation produced by `Display`: `Z/n`, `Z/n[x]/(f)` and
/// products `A x B`, with parentheses for grouping.
impl std::str::FromStr for FinRingSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<FinRingSpec, String> {
        let s = s.trim();
        let factors = split_product(s);
        if factors.len() > 1 {
            let mut it = factors.into_iter().map(str::parse::<FinRingSpec>);
            let first = it.next().expect("nonempty")?;
            return it.try_fold(first, |acc, f| Ok(FinRingSpec::product(acc, f?)));
        }
        if let Some(inner) = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
            return inner.parse();
        }
        let bad = || format!("cannot parse ring `{s}`");
        let rest = s.strip_prefix("Z/").ok_or_else(bad)?;
        match rest.split_once("[x]/(") {
            None => Ok(FinRingSpec::zn(rest.trim().parse().map_err(|_| bad())?)),
            Some((n, f)) => {
                let n: u32 = n.trim().parse().map_err(|_| bad())?;
                let f = f.strip_suffix(')').ok_or_else(bad)?;
                Ok(FinRingSpec::PolyQuot {
                    n,
                    modulus: parse_coeffs(f).ok_or_else(bad)?,
                })
            }
        }
    }
}

/// Splits at ` x ` separators outside brackets.
fn split_product(s: &str) -> Vec<&str> {
    let bytes = s.as_bytes();
    let mut depth = 0i32;
    let mut parts = Vec::new();
    let mut start = 0;
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' | b'[' => depth += 1,
            b')' | b']' => depth -= 1,
            b' ' if depth == 0 && s[i..].starts_with(" x ") => {
                parts.push(s[start..i].trim());
                start = i + 3;
                i += 2;
            }
            _ => {}
        }
        i += 1;
    }
    parts.push(s[start..].trim());
    parts
}

/// Coefficients (constant term first) of a sum like `x^2+3x+1`.
fn parse_coeffs(f: &str) -> Option<Vec<u32>> {
    let mut coeffs: Vec<u32> = Vec::new();
    for term in f.split('+').map(str::trim) {
        let (c, deg) = match term.find('x') {
            None => (term.parse().ok()?, 0usize),
            Some(pos) => {
                let c = term[..pos].trim_end_matches('*');
                let c = if c.is_empty() { 1 } else { c.parse().ok()? };
                let deg = match term[pos + 1..].strip_prefix('^') {
                    Some(k) => k.parse().ok()?,
                    None if pos + 1 == term.len() => 1,
                    None => return None,
                };
                (c, deg)
            }
        };
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, 0);
        }
        coeffs[deg] += c;
    }
    Some(coeffs)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FinError {
    #[error("{spec} has {size} elements, above the size bound {bound}")]
    SizeBound { spec: String, size: u128, bound: usize },
    #[error("modulus of {0} is not monic of positive degree")]
    NotMonic(String),
    #[error("Z/0 is not a finite ring")]
    ZeroModulus,
    #[error("ring axiom fails: {0}")]
    Axiom(String),
    #[error("module axiom fails: {0}")]
    ModuleAxiom(String),
    #[error("ideal is not prime")]
    NotPrime,
    #[error("not a submodule")]
    NotSubmodule,
}

#[derive(Clone)]
pub struct FinRing {
    spec: FinRingSpec,
    n: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    one: u8,
    labels: Vec<String>,
}

impl fmt::Debug for FinRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinRing({})", self.spec)
    }
}

struct Raw {
    n: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    one: u8,
    labels: Vec<String>,
}

fn table(n: usize, f: impl Fn(usize, usize) -> usize) -> Vec<u8> {
    let mut t = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            t.push(f(a, b) as u8);
        }
    }
    t
}

fn raw(spec: &FinRingSpec) -> Result<Raw, FinError> {
    match spec {
        FinRingSpec::Zn { n } => {
            let n = *n as usize;
            if n == 0 {
                return Err(FinError::ZeroModulus);
            }
            Ok(Raw {
                n,
                add: table(n, |a, b| (a + b) % n),
                mul: table(n, |a, b| (a * b) % n),
                one: (1 % n) as u8,
                labels: (0..n).map(|a| a.to_string()).collect(),
            })
        }
        FinRingSpec::Product { left, right } => {
            let l = raw(left)?;
            let r = raw(right)?;
            let n = l.n * r.n;
            let split = |x: usize| (x / r.n, x % r.n);
            let join = |a: usize, b: usize| a * r.n + b;
            let lift = |tl: &[u8], tr: &[u8]| {
                table(n, |x, y| {
                    let ((a1, b1), (a2, b2)) = (split(x), split(y));
                    join(tl[a1 * l.n + a2] as usize, tr[b1 * r.n + b2] as usize)
                })
            };
            Ok(Raw {
                n,
                add: lift(&l.add, &r.add),
                mul: lift(&l.mul, &r.mul),
                one: join(l.one as usize, r.one as usize) as u8,
                labels: (0..n)
                    .map(|x| {
                        let (a, b) = split(x);
                        format!("({},{})", l.labels[a], r.labels[b])
                    })
                    .collect(),
            })
        }
        FinRingSpec::PolyQuot { n, modulus } => {
            if *n == 0 {
                return Err(FinError::ZeroModulus);
            }
            let q = *n as usize;
            let d = modulus.len().saturating_sub(1);
            if d == 0 || modulus[d] % *n != 1 % *n {
                return Err(FinError::NotMonic(spec.to_string()));
            }
            let f: Vec<usize> = modulus.iter().map(|&c| c as usize % q).collect();
            let size = q.pow(d as u32);
            let digits = |x: usize| -> Vec<usize> {
                let mut v = Vec::with_capacity(d);
                let mut x = x;
                for _ in 0..d {
                    v.push(x % q);
                    x /= q;
                }
                v
            };
            let number = |v: &[usize]| v.iter().rev().fold(0, |acc, &c| acc * q + c);
            let mul = |x: usize, y: usize| {
                let (a, b) = (digits(x), digits(y));
                let mut prod = vec![0usize; 2 * d];
                for (i, &ai) in a.iter().enumerate() {
                    for (j, &bj) in b.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + ai * bj) % q;
                    }
                }
                // x^d = -(f_0 + ... + f_{d-1} x^{d-1})
                for k in (d..2 * d).rev() {
                    let c = prod[k];
                    if c != 0 {
                        prod[k] = 0;
                        for (i, &fi) in f.iter().take(d).enumerate() {
                            prod[k - d + i] = (prod[k - d + i] + q * q - c * fi % q) % q;
                        }
                    }
                }
                number(&prod[..d])
            };
            let add = |x: usize, y: usize| {
                let s: Vec<usize> = digits(x)
                    .iter()
                    .zip(digits(y))
                    .map(|(a, b)| (a + b) % q)
                    .collect();
                number(&s)
            };
            let one = if q == 1 { 0 } else { 1 };
            Ok(Raw {
                n: size,
                add: table(size, add),
                mul: table(size, mul),
                one,
                labels: (0..size)
                    .map(|x| poly_text(&digits(x).iter().map(|&c| c as u32).collect::<Vec<_>>()))
                    .collect(),
            })
        }
    }
}

/// Builds the tables of `spec` and checks the commutative ring axioms on
/// all triples.
pub fn build_ring(spec: &FinRingSpec, max_size: usize) -> Result<FinRing, FinError> {
    let bound = max_size.min(MAX_SIZE);
    let size = spec.size().unwrap_or(u128::MAX);
    if size > bound as u128 {
        return Err(FinError::SizeBound {
            spec: spec.to_string(),
            size,
            bound,
        });
    }
    let r = raw(spec)?;
    let n = r.n;
    let neg: Vec<u8> = (0..n)
        .map(|a| (0..n).find(|&b| r.add[a * n + b] == 0).unwrap_or(0) as u8)
        .collect();
    let ring = FinRing {
        spec: spec.clone(),
        n,
        add: r.add,
        mul: r.mul,
        neg,
        one: r.one,
        labels: r.labels,
    };
    ring.check_axioms()?;
    Ok(ring)
}

impl FinRing {
    pub fn spec(&self) -> &FinRingSpec {
        &self.spec
    }

    pub fn name(&self) -> String {
        self.spec.to_string()
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> std::ops::Range<u8> {
        0..self.n as u8
    }

    pub fn all(&self) -> Set {
        super::set::full(self.n)
    }

    pub fn zero(&self) -> u8 {
        0
    }

    pub fn one(&self) -> u8 {
        self.one
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    pub fn label(&self, a: u8) -> &str {
        &self.labels[a as usize]
    }

    pub fn is_unit(&self, a: u8) -> bool {
        self.elements().any(|b| self.mul(a, b) == self.one)
    }

    fn check_axioms(&self) -> Result<(), FinError> {
        let fail = |what: &str, xs: &[u8]| {
            let labels: Vec<&str> = xs.iter().map(|&x| self.label(x)).collect();
            Err(FinError::Axiom(format!("{what} at ({})", labels.join(", "))))
        };
        for a in self.elements() {
            if self.add(a, 0) != a {
                return fail("additive identity", &[a]);
            }
            if self.mul(a, self.one) != a {
                return fail("multiplicative identity", &[a]);
            }
            if self.add(a, self.neg(a)) != 0 {
                return fail("additive inverse", &[a]);
            }
            for b in self.elements() {
                if self.add(a, b) != self.add(b, a) {
                    return fail("additive commutativity", &[a, b]);
                }
                if self.mul(a, b) != self.mul(b, a) {
                    return fail("commutativity", &[a, b]);
                }
                for c in self.elements() {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return fail("additive associativity", &[a, b, c]);
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return fail("associativity", &[a, b, c]);
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return fail("distributivity", &[a, b, c]);
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether `set` is an ideal.
    pub fn is_ideal(&self, set: Set) -> bool {
        set & 1 == 1
            && bits(set).all(|a| {
                bits(set).all(|b| super::set::has(set, self.add(a, b)))
                    && self.elements().all(|r| super::set::has(set, self.mul(r, a)))
            })
    }

    /// Exhaustive pair test: proper, and `ab ∈ p` forces `a ∈ p` or `b ∈ p`.
    pub fn is_prime(&self, p: Set) -> bool {
        if super::set::has(p, self.one) {
            return false;
        }
        self.elements().all(|a| {
            super::set::has(p, a)
                || self
                    .elements()
                    .all(|b| super::set::has(p, b) || !super::set::has(p, self.mul(a, b)))
        })
    }

    /// `J1 · J2`
    pub fn ideal_product(&self, a: Set, b: Set) -> Set {
        let mut gens = 0;
        for x in bits(a) {
            for y in bits(b) {
                gens |= super::set::single(self.mul(x, y));
            }
        }
        super::module::FinModule::regular(self).span(gens)
    }

    /// `(0 :_R J)`
    pub fn annihilator(&self, j: Set) -> Set {
        self.elements()
            .filter(|&r| bits(j).all(|x| self.mul(r, x) == 0))
            .fold(0, |s, r| s | super::set::single(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(spec: FinRingSpec) -> FinRing {
        build_ring(&spec, MAX_SIZE).unwrap()
    }

    #[test]
    fn notation_round_trips() {
        for spec in [
            FinRingSpec::zn(12),
            FinRingSpec::poly_quot(3, &[2, 0, 1]),
            FinRingSpec::product(FinRingSpec::zn(2), FinRingSpec::poly_quot(2, &[1, 1, 1])),
            FinRingSpec::product(
                FinRingSpec::product(FinRingSpec::zn(2), FinRingSpec::zn(2)),
                FinRingSpec::zn(3),
            ),
        ] {
            assert_eq!(spec.to_string().parse::<FinRingSpec>(), Ok(spec));
        }
        assert_eq!(
            "Z/4[x]/(x^2 + 2*x)".parse(),
            Ok(FinRingSpec::poly_quot(4, &[0, 2, 1]))
        );
        assert!("Q".parse::<FinRingSpec>().is_err());
        assert!("Z/2[x]/(y)".parse::<FinRingSpec>().is_err());
    }

    #[test]
    fn small_rings() {
        let z4 = ring(FinRingSpec::zn(4));
        assert_eq!(z4.size(), 4);
        assert_eq!(z4.mul(2, 2), 0);
        let d = ring(FinRingSpec::poly_quot(2, &[0, 0, 1]));
        assert_eq!(d.size(), 4);
        assert_eq!(d.name(), "Z/2[x]/(x^2)");
        let x = d.elements().find(|&e| d.label(e) == "x").unwrap();
        assert_eq!(d.mul(x, x), 0);
        assert_eq!(d.label(d.one()), "1");
        let f4 = ring(FinRingSpec::poly_quot(2, &[1, 1, 1]));
        assert!(f4.elements().filter(|&a| a != 0).all(|a| f4.is_unit(a)));
    }

    #[test]
    fn product_matches_crt() {
        let p = ring(FinRingSpec::product(FinRingSpec::zn(2), FinRingSpec::zn(3)));
        let z6 = ring(FinRingSpec::zn(6));
        assert_eq!(p.name(), "Z/2 x Z/3");
        // the CRT map k ↦ (k mod 2, k mod 3)
        let crt = |k: u8| {
            p.elements()
                .find(|&e| p.label(e) == format!("({},{})", k % 2, k % 3))
                .unwrap()
        };
        for a in z6.elements() {
            for b in z6.elements() {
                assert_eq!(crt(z6.add(a, b)), p.add(crt(a), crt(b)));
                assert_eq!(crt(z6.mul(a, b)), p.mul(crt(a), crt(b)));
            }
        }
        assert_eq!(crt(1), p.one());
    }

    #[test]
    fn product_is_isomorphic_by_search() {
        let p = ring(FinRingSpec::product(FinRingSpec::zn(2), FinRingSpec::zn(3)));
        let z6 = ring(FinRingSpec::zn(6));
        // bijections sending 0 ↦ 0 and 1 ↦ one, checked against both tables
        let rest: Vec<u8> = p.elements().filter(|&e| e != 0 && e != p.one()).collect();
        let mut found = 0;
        let mut perm = rest.clone();
        permutations(&mut perm, 0, &mut |img| {
            let map = |k: u8| match k {
                0 => 0,
                1 => p.one(),
                k => img[k as usize - 2],
            };
            let hom = z6.elements().all(|a| {
                z6.elements().all(|b| {
                    map(z6.add(a, b)) == p.add(map(a), map(b)) && map(z6.mul(a, b)) == p.mul(map(a), map(b))
                })
            });
            found += hom as usize;
        });
        // Aut(Z/6) is trivial, so exactly one isomorphism
        assert_eq!(found, 1);
    }

    fn permutations(v: &mut Vec<u8>, k: usize, f: &mut impl FnMut(&[u8])) {
        if k == v.len() {
            f(v);
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permutations(v, k + 1, f);
            v.swap(k, i);
        }
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            build_ring(&FinRingSpec::zn(65), MAX_SIZE),
            Err(FinError::SizeBound { size: 65, .. })
        ));
        assert!(matches!(
            build_ring(&FinRingSpec::zn(12), 10),
            Err(FinError::SizeBound { bound: 10, .. })
        ));
        assert_eq!(
            build_ring(&FinRingSpec::poly_quot(2, &[1, 1, 0]), MAX_SIZE).unwrap_err(),
            FinError::NotMonic("Z/2[x]/(x+1)".into())
        );
        assert_eq!(
            build_ring(&FinRingSpec::zn(0), MAX_SIZE).unwrap_err(),
            FinError::ZeroModulus
        );
        let big = FinRingSpec::product(FinRingSpec::zn(1 << 30), FinRingSpec::zn(1 << 30));
        assert!(matches!(
            build_ring(&big, MAX_SIZE),
            Err(FinError::SizeBound { .. })
        ));
    }

    #[test]
    fn primes_of_z12() {
        let z = ring(FinRingSpec::zn(12));
        let m = super::super::module::FinModule::regular(&z);
        let primes: Vec<Set> = m.submodules().into_iter().filter(|&p| z.is_prime(p)).collect();
        let mut gens: Vec<u8> = primes.iter().map(|&p| bits(p).nth(1).unwrap()).collect();
        gens.sort();
        assert_eq!(gens, vec![2, 3]);
    }
}
