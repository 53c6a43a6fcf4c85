use std::cmp::Ordering;
use std::sync::Arc;

use crate::arith::BigRat;
use crate::poly::{MonOrder, Monomial, Poly, RingSpec, Term};

/// Leading-term cancelling step: `p - c*m*g` where `c*m*lt(g)` equals `lt(p)`.
/// Both leading terms are dropped without being computed.
fn sub_mul_cancel(p: &[Term], c: &BigRat, m: &Monomial, g: &[Term], ord: MonOrder) -> Vec<Term> {
    let a = &p[1..];
    let b = &g[1..];
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    // shifted terms of g are produced lazily
    let next_b = |j: usize| Term {
        coeff: -(&b[j].coeff * c),
        mon: b[j].mon.mul(m),
    };
    let mut pending = if b.is_empty() { None } else { Some(next_b(0)) };
    while i < a.len() {
        let Some(bt) = pending.take() else { break };
        match ord.compare(&a[i].mon, &bt.mon) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
                pending = Some(bt);
            }
            Ordering::Less => {
                out.push(bt);
                j += 1;
                pending = (j < b.len()).then(|| next_b(j));
            }
            Ordering::Equal => {
                let s = &a[i].coeff + &bt.coeff;
                if !s.is_zero() {
                    out.push(Term {
                        coeff: s,
                        mon: bt.mon,
                    });
                }
                i += 1;
                j += 1;
                pending = (j < b.len()).then(|| next_b(j));
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    if let Some(bt) = pending {
        out.push(bt);
        j += 1;
        while j < b.len() {
            out.push(next_b(j));
            j += 1;
        }
    }
    out
}

/// Full reduction of `f` modulo `reducers`, optionally recording quotients.
/// Every reducer must be nonzero.
pub(crate) fn reduce_full(
    f: &Poly,
    reducers: &[&Poly],
    mut quotients: Option<&mut Vec<Vec<(BigRat, Monomial)>>>,
) -> Poly {
    let ring = f.ring().clone();
    let ord = ring.order;
    let mut rest: Vec<Term> = f.terms().to_vec();
    let mut rem: Vec<Term> = Vec::new();
    while let Some(lead) = rest.first() {
        let hit = reducers
            .iter()
            .enumerate()
            .find(|(_, g)| g.lm().divides(&lead.mon));
        match hit {
            Some((k, g)) => {
                let m = lead.mon.div(g.lm()).expect("divisible");
                let c = lead
                    .coeff
                    .checked_div(g.lc())
                    .expect("reducers have nonzero leading coefficients");
                rest = sub_mul_cancel(&rest, &c, &m, g.terms(), ord);
                if let Some(q) = quotients.as_deref_mut() {
                    q[k].push((c, m));
                }
            }
            None => {
                // terms of `rest` are strictly below everything already in `rem`
                rem.push(rest.remove(0));
            }
        }
    }
    Poly::from_terms(&ring, rem.into_iter().map(|t| (t.coeff, t.mon)))
}

pub(crate) fn s_polynomial(f: &Poly, g: &Poly) -> Poly {
    let l = f.lm().lcm(g.lm());
    let mf = l.div(f.lm()).unwrap();
    let mg = l.div(g.lm()).unwrap();
    let cf = f.lc().recip().unwrap();
    let cg = g.lc().recip().unwrap();
    &f.mul_term(&cf, &mf) - &g.mul_term(&cg, &mg)
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct State {
    ord: MonOrder,
    polys: Vec<Poly>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl State {
    /// Gebauer-Moeller installation of a new basis element `h`.
    fn update(&mut self, h: usize) {
        let lh = self.polys[h].lm().clone();
        let mut cands: Vec<(usize, Monomial)> = self
            .active
            .iter()
            .map(|&g| (g, lh.lcm(self.polys[g].lm())))
            .collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        while let Some((g1, l1)) = cands.pop() {
            let coprime = lh.is_coprime(self.polys[g1].lm());
            let covered = cands.iter().chain(kept.iter()).any(|(_, l2)| l2.divides(&l1));
            if coprime || !covered {
                kept.push((g1, l1));
            }
        }
        let fresh: Vec<Pair> = kept
            .into_iter()
            .filter(|(g, _)| !lh.is_coprime(self.polys[*g].lm()))
            .map(|(g, l)| Pair { i: g, j: h, lcm: l })
            .collect();

        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(lh.divides(&p.lcm) && lh.lcm(polys[p.i].lm()) != p.lcm && lh.lcm(polys[p.j].lm()) != p.lcm)
        });
        self.pairs.extend(fresh);
        self.active.retain(|&g| !lh.divides(polys[g].lm()));
        self.active.push(h);
    }

    /// Normal strategy: smallest lcm first, ties broken by index.
    fn next_pair(&mut self) -> Option<Pair> {
        let ord = self.ord;
        let best = (0..self.pairs.len()).min_by(|&x, &y| {
            let (p, q) = (&self.pairs[x], &self.pairs[y]);
            p.lcm
                .degree()
                .cmp(&q.lcm.degree())
                .then_with(|| ord.compare(&p.lcm, &q.lcm))
                .then_with(|| (p.j, p.i).cmp(&(q.j, q.i)))
        })?;
        Some(self.pairs.swap_remove(best))
    }

    fn insert(&mut self, f: &Poly) -> bool {
        let reducers: Vec<&Poly> = self.polys.iter().collect();
        let h = reduce_full(f, &reducers, None);
        if h.is_zero() {
            return false;
        }
        self.polys.push(h.monic());
        self.update(self.polys.len() - 1);
        true
    }
}

/// Deterministic canonical ordering of input generators.
pub(crate) fn canonical_sort(polys: &mut Vec<Poly>) {
    polys.retain(|p| !p.is_zero());
    for p in polys.iter_mut() {
        *p = p.monic();
    }
    polys.sort_by(|a, b| {
        let ord = a.ring().order;
        ord.compare(a.lm(), b.lm())
            .then_with(|| a.len().cmp(&b.len()))
            .then_with(|| a.to_string().cmp(&b.to_string()))
    });
    polys.dedup();
}

/// Turns a minimal Gröbner basis into the reduced one, sorted by
/// descending leading monomial.
pub(crate) fn interreduce(ring: &Arc<RingSpec>, mut basis: Vec<Poly>) -> Vec<Poly> {
    let ord = ring.order;
    basis.retain(|p| !p.is_zero());
    // drop elements whose leading monomial is divisible by another one
    basis.sort_by(|a, b| ord.compare(a.lm(), b.lm()));
    let mut minimal: Vec<Poly> = Vec::new();
    for p in basis {
        if !minimal.iter().any(|q| q.lm().divides(p.lm())) {
            minimal.push(p);
        }
    }
    let mut out: Vec<Poly> = (0..minimal.len())
        .map(|k| {
            let others: Vec<&Poly> = minimal
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != k)
                .map(|(_, p)| p)
                .collect();
            reduce_full(&minimal[k], &others, None).monic()
        })
        .collect();
    out.sort_by(|a, b| ord.compare(b.lm(), a.lm()));
    out
}

/// Reduced Gröbner basis of the ideal generated by `gens` in `ring`.
pub(crate) fn groebner_basis(ring: &Arc<RingSpec>, gens: &[Poly]) -> Vec<Poly> {
    let mut input: Vec<Poly> = gens.to_vec();
    canonical_sort(&mut input);
    if input.iter().any(|p| p.is_constant()) {
        return vec![Poly::one(ring)];
    }
    let mut st = State {
        ord: ring.order,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for f in &input {
        st.insert(f);
        if st.polys.last().is_some_and(|p| p.is_constant()) {
            return vec![Poly::one(ring)];
        }
    }
    while let Some(pair) = st.next_pair() {
        let s = s_polynomial(&st.polys[pair.i], &st.polys[pair.j]);
        if st.insert(&s) && st.polys.last().unwrap().is_constant() {
            return vec![Poly::one(ring)];
        }
    }
    let active: Vec<Poly> = st.active.iter().map(|&i| st.polys[i].clone()).collect();
    interreduce(ring, active)
}
