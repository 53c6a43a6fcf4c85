//! Reference implementations used as oracles by the integration tests.
//! They share no code with the engine beyond rational arithmetic and the
//! polynomial parser used to read inputs.
#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wlab::arith::BigRat;
use wlab::example26::{Example26, I_GENS};
use wlab::groebner::{ideal_equal, ideal_intersect, ideal_product, ideal_quotient, ideal_sum, IdealGB};
use wlab::poly::{MonOrder, Monomial, Poly, RingSpec};

/// Sparse polynomial: exponent vector to nonzero coefficient.
pub type P = BTreeMap<Vec<u32>, BigRat>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ord2 {
    Lex,
    Grevlex,
}

pub fn cmp_mon(ord: Ord2, a: &[u32], b: &[u32]) -> Ordering {
    match ord {
        Ord2::Lex => a.cmp(b),
        Ord2::Grevlex => {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| {
                for i in (0..a.len()).rev() {
                    if a[i] != b[i] {
                        return b[i].cmp(&a[i]);
                    }
                }
                Ordering::Equal
            })
        }
    }
}

pub fn from_poly(p: &Poly) -> P {
    p.terms()
        .iter()
        .map(|t| (t.mon.exponents().to_vec(), t.coeff.clone()))
        .collect()
}

pub fn to_poly(p: &P, ring: &Arc<RingSpec>) -> Poly {
    Poly::from_terms(
        ring,
        p.iter()
            .map(|(e, c)| (c.clone(), Monomial::from_exponents(e.clone()))),
    )
}

pub fn parse(s: &str, ring: &Arc<RingSpec>) -> P {
    from_poly(&Poly::parse(s, ring).unwrap())
}

pub fn add_term(p: &mut P, e: Vec<u32>, c: &BigRat) {
    let slot = p.entry(e).or_insert_with(BigRat::zero);
    *slot = &*slot + c;
    if slot.is_zero() {
        p.retain(|_, v| !v.is_zero());
    }
}

pub fn add(a: &P, b: &P) -> P {
    let mut out = a.clone();
    for (e, c) in b {
        add_term(&mut out, e.clone(), c);
    }
    out
}

pub fn scale_shift(p: &P, c: &BigRat, shift: &[u32]) -> P {
    p.iter()
        .map(|(e, d)| (e.iter().zip(shift).map(|(x, y)| x + y).collect(), d * c))
        .collect()
}

pub fn mul(a: &P, b: &P) -> P {
    let mut out = P::new();
    for (e, c) in a {
        for (k, v) in scale_shift(b, c, e) {
            add_term(&mut out, k, &v);
        }
    }
    out
}

pub fn lead(p: &P, ord: Ord2) -> (&Vec<u32>, &BigRat) {
    p.iter()
        .max_by(|x, y| cmp_mon(ord, x.0, y.0))
        .expect("nonzero polynomial")
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn monic(p: &P, ord: Ord2) -> P {
    let lc = lead(p, ord).1.clone();
    let inv = lc.recip().unwrap();
    p.iter().map(|(e, c)| (e.clone(), c * &inv)).collect()
}

/// Full reduction by `gs`: no term of the result is divisible by a leading
/// monomial of `gs`.
pub fn reduce(p: &P, gs: &[P], ord: Ord2) -> P {
    let mut p = p.clone();
    let mut rem = P::new();
    let leads: Vec<(Vec<u32>, BigRat)> = gs
        .iter()
        .map(|g| {
            let (e, c) = lead(g, ord);
            (e.clone(), c.clone())
        })
        .collect();
    while !p.is_empty() {
        let (e, c) = {
            let (e, c) = lead(&p, ord);
            (e.clone(), c.clone())
        };
        match leads.iter().position(|(l, _)| divides(l, &e)) {
            Some(i) => {
                let shift: Vec<u32> = e.iter().zip(&leads[i].0).map(|(x, y)| x - y).collect();
                let factor = -&(&c / &leads[i].1);
                p = add(&p, &scale_shift(&gs[i], &factor, &shift));
            }
            None => {
                p.remove(&e);
                rem.insert(e, c);
            }
        }
    }
    rem
}

fn s_poly(f: &P, g: &P, ord: Ord2) -> P {
    let (ef, cf) = lead(f, ord);
    let (eg, cg) = lead(g, ord);
    let l: Vec<u32> = ef.iter().zip(eg).map(|(a, b)| *a.max(b)).collect();
    let sf: Vec<u32> = l.iter().zip(ef).map(|(a, b)| a - b).collect();
    let sg: Vec<u32> = l.iter().zip(eg).map(|(a, b)| a - b).collect();
    add(
        &scale_shift(f, &cf.recip().unwrap(), &sf),
        &scale_shift(g, &(-&cg.recip().unwrap()), &sg),
    )
}

/// Textbook Buchberger: every pair is reduced, no criteria, then the basis
/// is minimized, interreduced and made monic.
pub fn naive_buchberger(gens: &[P], ord: Ord2) -> Vec<P> {
    let mut g: Vec<P> = gens.iter().filter(|p| !p.is_empty()).cloned().collect();
    let mut pairs: Vec<(usize, usize)> = (0..g.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while let Some((i, j)) = pairs.pop() {
        let h = reduce(&s_poly(&g[i], &g[j], ord), &g, ord);
        if !h.is_empty() {
            let k = g.len();
            g.push(h);
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    // minimal: drop elements whose leading monomial is divisible by another's
    let mut keep: Vec<P> = Vec::new();
    for (i, p) in g.iter().enumerate() {
        let lp = lead(p, ord).0;
        let redundant = g.iter().enumerate().any(|(j, q)| {
            let lq = lead(q, ord).0;
            j != i && divides(lq, lp) && (lq != lp || j < i)
        });
        if !redundant {
            keep.push(monic(p, ord));
        }
    }
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<P> = keep
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, q)| q.clone())
            .collect();
        let (e, c) = lead(&keep[i], ord);
        let mut tail = keep[i].clone();
        tail.remove(e);
        let mut r = reduce(&tail, &others, ord);
        r.insert(e.clone(), c.clone());
        out.push(monic(&r, ord));
    }
    out.sort();
    out
}

pub fn sorted(mut ps: Vec<P>) -> Vec<P> {
    ps.sort();
    ps
}

/// Exact membership for homogeneous ideals: a homogeneous `f` of degree `k`
/// lies in the ideal iff it lies in the span of `m * g` over generators `g`
/// and monomials `m` of degree `k - deg g`.
pub struct Macaulay {
    nvars: usize,
    gens: Vec<(u32, P)>,
    /// Per degree, rows in echelon form keyed by their largest monomial.
    echelon: HashMap<u32, BTreeMap<Vec<u32>, P>>,
}

pub fn homogeneous_degree(p: &P) -> Option<u32> {
    let mut degs = p.keys().map(|e| e.iter().sum::<u32>());
    let d = degs.next()?;
    degs.all(|x| x == d).then_some(d)
}

pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    if nvars == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials_of_degree(nvars - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn echelon_reduce(rows: &BTreeMap<Vec<u32>, P>, mut v: P) -> P {
    loop {
        let top = match v.iter().rev().find(|(e, _)| rows.contains_key(*e)) {
            Some((e, c)) => (e.clone(), c.clone()),
            None => return v,
        };
        let row = &rows[&top.0];
        let pivot = &row[&top.0];
        let factor = -&(&top.1 / pivot);
        for (e, c) in row {
            add_term(&mut v, e.clone(), &(c * &factor));
        }
    }
}

impl Macaulay {
    pub fn new(nvars: usize, gens: &[P]) -> Macaulay {
        let gens = gens
            .iter()
            .filter(|g| !g.is_empty())
            .map(|g| (homogeneous_degree(g).expect("homogeneous generator"), g.clone()))
            .collect();
        Macaulay {
            nvars,
            gens,
            echelon: HashMap::new(),
        }
    }

    fn rows(&mut self, k: u32) -> &BTreeMap<Vec<u32>, P> {
        if !self.echelon.contains_key(&k) {
            let mut rows: BTreeMap<Vec<u32>, P> = BTreeMap::new();
            for (d, g) in &self.gens {
                if *d > k {
                    continue;
                }
                for m in monomials_of_degree(self.nvars, k - d) {
                    let v = echelon_reduce(&rows, scale_shift(g, &BigRat::one(), &m));
                    if let Some((e, _)) = v.iter().next_back() {
                        let e = e.clone();
                        rows.insert(e, v);
                    }
                }
            }
            self.echelon.insert(k, rows);
        }
        &self.echelon[&k]
    }

    pub fn contains(&mut self, f: &P) -> bool {
        let mut parts: BTreeMap<u32, P> = BTreeMap::new();
        for (e, c) in f {
            parts
                .entry(e.iter().sum())
                .or_default()
                .insert(e.clone(), c.clone());
        }
        parts
            .into_iter()
            .all(|(k, part)| echelon_reduce(self.rows(k), part).is_empty())
    }
}

/// Replaces variable `var` by `by` everywhere and drops it from the
/// exponent vectors.
pub fn substitute(p: &P, var: usize, by: &P) -> P {
    let mut out = P::new();
    for (e, c) in p {
        let mut rest = e.clone();
        let k = rest.remove(var);
        let mut term = P::new();
        term.insert(rest, c.clone());
        for _ in 0..k {
            term = mul(&term, by);
        }
        out = add(&out, &term);
    }
    out
}

/// Random polynomial with `terms` terms of total degree at most `deg` and
/// coefficients in `-3..=3`.
pub fn random_poly<R: Rng>(rng: &mut R, nvars: usize, deg: u32, terms: usize) -> P {
    let mut p = P::new();
    for _ in 0..terms {
        let mut e = vec![0u32; nvars];
        let total = rng.gen_range(0..=deg);
        for _ in 0..total {
            e[rng.gen_range(0..nvars)] += 1;
        }
        let c = rng.gen_range(-3i64..=3);
        if c != 0 {
            add_term(&mut p, e, &BigRat::from_i64(c));
        }
    }
    p
}

pub fn total_degree(p: &P) -> u32 {
    p.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
}

// ---------------------------------------------------------------- example

/// Index of `d` among the example's variables; it occurs linearly in one
/// generator, and eliminating it leaves a homogeneous ideal.
pub const D: usize = 6;

pub fn drop_var(p: &P, var: usize) -> P {
    p.iter()
        .map(|(e, c)| {
            let mut e = e.clone();
            assert_eq!(e.remove(var), 0);
            (e, c.clone())
        })
        .collect()
}

pub struct MembershipOracle {
    by: P,
    i: Macaulay,
    k: Macaulay,
}

impl MembershipOracle {
    pub fn new(ex: &Example26) -> MembershipOracle {
        let by = drop_var(&parse("x2*c - x1*b", &ex.ring), D);
        let i_gens: Vec<P> = I_GENS
            .iter()
            .map(|g| substitute(&parse(g, &ex.ring), D, &by))
            .collect();
        let mut k_gens = i_gens.clone();
        k_gens.push(drop_var(&parse("x1", &ex.ring), D));
        MembershipOracle {
            i: Macaulay::new(6, &i_gens),
            k: Macaulay::new(6, &k_gens),
            by,
        }
    }

    pub fn in_i(&mut self, f: &P) -> bool {
        let g = substitute(f, D, &self.by);
        self.i.contains(&g)
    }

    pub fn in_k(&mut self, f: &P) -> bool {
        let g = substitute(f, D, &self.by);
        self.k.contains(&g)
    }
}

/// Randomized polynomials of total degree at most 4 in the example ring:
/// combinations of the generators of `I`, such combinations plus random
/// terms, and purely random polynomials, in equal parts.
pub fn membership_cases(ex: &Example26, seed: u64, n: usize) -> Vec<P> {
    let gens: Vec<P> = I_GENS.iter().map(|g| parse(g, &ex.ring)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::with_capacity(n);
    for round in 0..n {
        let mut f = P::new();
        if round % 3 != 2 {
            for g in &gens {
                if rng.gen_bool(0.5) {
                    f = add(&f, &mul(&random_poly(&mut rng, 7, 2, 2), g));
                }
            }
        }
        if round % 3 != 0 {
            f = add(&f, &random_poly(&mut rng, 7, 4, 1 + round % 3));
        }
        cases.push(f);
    }
    cases
}

// ---------------------------------------------------------------- laws

pub fn random_ideal(rng: &mut ChaCha8Rng, ring: &Arc<RingSpec>) -> IdealGB {
    let n = rng.gen_range(1..=2);
    let gens = (0..n)
        .map(|_| {
            let terms = rng.gen_range(1..=3);
            let mut p = random_poly(rng, ring.nvars(), 2, terms);
            while p.is_empty() {
                p = random_poly(rng, ring.nvars(), 2, terms);
            }
            to_poly(&p, ring)
        })
        .collect();
    IdealGB::new(ring, gens)
}

/// Ideals built from a shared pool of small factors, so that colons are
/// often neither `I` nor `(1)`.
pub fn factored_ideals(rng: &mut ChaCha8Rng, ring: &Arc<RingSpec>) -> [IdealGB; 3] {
    let pool: Vec<_> = (0..3)
        .map(|_| {
            let mut p = random_poly(rng, ring.nvars(), 1, 2);
            while total_degree(&p) == 0 {
                p = random_poly(rng, ring.nvars(), 1, 2);
            }
            to_poly(&p, ring)
        })
        .collect();
    let pick = |rng: &mut ChaCha8Rng| pool[rng.gen_range(0..pool.len())].clone();
    let (a, b, c) = (pick(rng), pick(rng), pick(rng));
    let i = IdealGB::new(ring, vec![&a * &b, &(&b * &c) * &c]);
    let j = IdealGB::new(ring, vec![pick(rng)]);
    let k = IdealGB::new(ring, vec![pick(rng), &a * &c]);
    [i, j, k]
}

/// `n` triples `(I, J, K)` in `Q[x,y,z]`, alternating factored and dense
/// random ideals.
pub fn law_cases(seed: u64, n: usize) -> Vec<[IdealGB; 3]> {
    let ring = RingSpec::new(&["x", "y", "z"], MonOrder::Grevlex).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|case| {
            if case % 2 == 0 {
                factored_ideals(&mut rng, &ring)
            } else {
                [0; 3].map(|_| random_ideal(&mut rng, &ring))
            }
        })
        .collect()
}

/// `I ⊆ (I:J)`, `J(I:J) ⊆ I`, `((I:J):K) = (I:JK)`, `I∩J ⊆ I, J`,
/// `IJ ⊆ I∩J` and `(I : J+K) = (I:J) ∩ (I:K)`.
pub fn check_laws(i: &IdealGB, j: &IdealGB, k: &IdealGB) -> Result<(), &'static str> {
    let ij = ideal_quotient(i, j);
    ensure(ij.contains_ideal(i), "I ⊆ (I:J)")?;
    ensure(i.contains_ideal(&ideal_product(j, &ij)), "J(I:J) ⊆ I")?;
    let lhs = ideal_quotient(&ij, k);
    let rhs = ideal_quotient(i, &ideal_product(j, k));
    ensure(ideal_equal(&lhs, &rhs), "((I:J):K) = (I:JK)")?;
    let cap = ideal_intersect(i, j);
    ensure(i.contains_ideal(&cap) && j.contains_ideal(&cap), "I∩J ⊆ I, J")?;
    ensure(cap.contains_ideal(&ideal_product(i, j)), "IJ ⊆ I∩J")?;
    let by_sum = ideal_quotient(i, &ideal_sum(j, k));
    let meet = ideal_intersect(&ij, &ideal_quotient(i, k));
    ensure(ideal_equal(&by_sum, &meet), "(I : J+K) = (I:J) ∩ (I:K)")?;
    Ok(())
}

fn ensure(ok: bool, law: &'static str) -> Result<(), &'static str> {
    if ok {
        Ok(())
    } else {
        Err(law)
    }
}
