//! Ideals of polynomial rings over the rationals, represented by their
//! reduced Gröbner basis, and the ideal calculus built on top of it.

mod buchberger;
mod calculus;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::poly::{same_ring, MonOrder, Poly, PolyError, RingSpec};

pub(crate) use buchberger::{reduce_full, s_polynomial};
pub use calculus::{eliminate, ideal_intersect, ideal_quotient, quotient_by_element};

/// An ideal given by generators together with its reduced Gröbner basis for
/// the order recorded in its ring.
#[derive(Clone)]
pub struct IdealGB {
    ring: Arc<RingSpec>,
    generators: Vec<Poly>,
    basis: Vec<Poly>,
}

impl IdealGB {
    /// Runs Buchberger's algorithm on `generators`. All of them must live in `ring`.
    pub fn new(ring: &Arc<RingSpec>, generators: Vec<Poly>) -> IdealGB {
        for g in &generators {
            assert!(same_ring(g.ring(), ring), "generator from a different ring");
        }
        let basis = buchberger::groebner_basis(ring, &generators);
        IdealGB {
            ring: ring.clone(),
            generators,
            basis,
        }
    }

    /// Like [`IdealGB::new`] but computes the basis from `seed`, which must
    /// generate the same ideal as `generators`.
    pub(crate) fn with_seed(ring: &Arc<RingSpec>, generators: Vec<Poly>, seed: &[Poly]) -> IdealGB {
        let basis = buchberger::groebner_basis(ring, seed);
        IdealGB {
            ring: ring.clone(),
            generators,
            basis,
        }
    }

    /// Accepts a previously computed basis without running Buchberger's
    /// algorithm. The basis must pass the S-polynomial criterion, be reduced,
    /// and every generator must reduce to zero modulo it.
    pub fn from_recorded(
        ring: &Arc<RingSpec>,
        generators: Vec<Poly>,
        mut basis: Vec<Poly>,
    ) -> Result<IdealGB, String> {
        for p in generators.iter().chain(&basis) {
            if !same_ring(p.ring(), ring) {
                return Err("polynomial from a different ring".into());
            }
        }
        if !is_reduced(&basis) {
            return Err("basis is not reduced".into());
        }
        if !is_groebner_basis(&basis) {
            return Err("basis fails the S-polynomial criterion".into());
        }
        let ord = ring.order;
        basis.sort_by(|a, b| ord.compare(b.lm(), a.lm()));
        let refs: Vec<&Poly> = basis.iter().collect();
        if let Some(g) = generators.iter().find(|g| !reduce_full(g, &refs, None).is_zero()) {
            return Err(format!("generator `{g}` does not reduce to zero"));
        }
        Ok(IdealGB {
            ring: ring.clone(),
            generators,
            basis,
        })
    }

    pub fn parse<S: AsRef<str>>(ring: &Arc<RingSpec>, gens: &[S]) -> Result<IdealGB, PolyError> {
        let polys = gens
            .iter()
            .map(|s| Poly::parse(s.as_ref(), ring))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IdealGB::new(ring, polys))
    }

    pub fn zero(ring: &Arc<RingSpec>) -> IdealGB {
        IdealGB::new(ring, vec![])
    }

    pub fn unit(ring: &Arc<RingSpec>) -> IdealGB {
        IdealGB::new(ring, vec![Poly::one(ring)])
    }

    pub fn principal(f: &Poly) -> IdealGB {
        IdealGB::new(f.ring(), vec![f.clone()])
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn order(&self) -> MonOrder {
        self.ring.order
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        normal_form(f, self).remainder
    }

    pub fn contains(&self, f: &Poly) -> bool {
        ideal_member(f, self)
    }

    /// `other ⊆ self`
    pub fn contains_ideal(&self, other: &IdealGB) -> bool {
        other.basis.iter().all(|g| self.contains(g))
    }

    /// The same ideal under another monomial order.
    pub fn with_order(&self, order: MonOrder) -> IdealGB {
        let ring = self.ring.with_order(order);
        let gens: Vec<Poly> = self.generators.iter().map(|g| g.to_ring(&ring)).collect();
        let seed: Vec<Poly> = self.basis.iter().map(|g| g.to_ring(&ring)).collect();
        IdealGB::with_seed(&ring, gens, &seed)
    }

    /// Basis elements as canonical strings.
    pub fn basis_strings(&self) -> Vec<String> {
        self.basis.iter().map(|p| p.to_string()).collect()
    }
}

impl fmt::Debug for IdealGB {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IdealGB{:?}", self.basis_strings())
    }
}

impl fmt::Display for IdealGB {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.basis_strings().join(", "))
    }
}

/// Reduced Gröbner basis of `gens` for `order` (the ring of the generators is
/// re-sorted if its order differs).
pub fn buchberger(ring: &Arc<RingSpec>, gens: &[Poly], order: MonOrder) -> IdealGB {
    let target = if ring.order == order {
        ring.clone()
    } else {
        ring.with_order(order)
    };
    let gens: Vec<Poly> = gens.iter().map(|g| g.to_ring(&target)).collect();
    IdealGB::new(&target, gens)
}

#[derive(Debug, Clone)]
pub struct NormalFormResult {
    pub remainder: Poly,
    /// `f = Σ cofactors[i] * basis[i] + remainder` when requested.
    pub cofactors: Option<Vec<Poly>>,
}

pub fn normal_form(f: &Poly, ideal: &IdealGB) -> NormalFormResult {
    assert!(
        same_ring(f.ring(), &ideal.ring),
        "polynomial from a different ring"
    );
    let reducers: Vec<&Poly> = ideal.basis.iter().collect();
    NormalFormResult {
        remainder: reduce_full(f, &reducers, None),
        cofactors: None,
    }
}

pub fn normal_form_with_cofactors(f: &Poly, ideal: &IdealGB) -> NormalFormResult {
    assert!(
        same_ring(f.ring(), &ideal.ring),
        "polynomial from a different ring"
    );
    let reducers: Vec<&Poly> = ideal.basis.iter().collect();
    let mut q = vec![Vec::new(); reducers.len()];
    let remainder = reduce_full(f, &reducers, Some(&mut q));
    let cofactors = q
        .into_iter()
        .map(|terms| Poly::from_terms(&ideal.ring, terms))
        .collect();
    NormalFormResult {
        remainder,
        cofactors: Some(cofactors),
    }
}

pub fn ideal_member(f: &Poly, ideal: &IdealGB) -> bool {
    normal_form(f, ideal).remainder.is_zero()
}

/// Equality of ideals: same ring and order, identical reduced bases.
pub fn ideal_equal(a: &IdealGB, b: &IdealGB) -> bool {
    same_ring(&a.ring, &b.ring) && a.basis == b.basis
}

impl PartialEq for IdealGB {
    fn eq(&self, other: &Self) -> bool {
        ideal_equal(self, other)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CombineOp {
    Sum,
    Product,
}

pub fn ideal_combine(a: &IdealGB, b: &IdealGB, op: CombineOp) -> IdealGB {
    assert!(same_ring(&a.ring, &b.ring), "ideals from different rings");
    match op {
        CombineOp::Sum => {
            let gens: Vec<Poly> = a.generators.iter().chain(&b.generators).cloned().collect();
            let seed: Vec<Poly> = a.basis.iter().chain(&b.basis).cloned().collect();
            IdealGB::with_seed(&a.ring, gens, &seed)
        }
        CombineOp::Product => {
            let pairwise = |x: &[Poly], y: &[Poly]| -> Vec<Poly> {
                x.iter().flat_map(|f| y.iter().map(move |g| f * g)).collect()
            };
            let gens = pairwise(&a.generators, &b.generators);
            let seed = pairwise(&a.basis, &b.basis);
            IdealGB::with_seed(&a.ring, gens, &seed)
        }
    }
}

pub fn ideal_sum(a: &IdealGB, b: &IdealGB) -> IdealGB {
    ideal_combine(a, b, CombineOp::Sum)
}

pub fn ideal_product(a: &IdealGB, b: &IdealGB) -> IdealGB {
    ideal_combine(a, b, CombineOp::Product)
}

/// `I + (f1, ..., fk)`
pub fn extend_ideal(ideal: &IdealGB, extra: &[Poly]) -> IdealGB {
    let gens: Vec<Poly> = ideal.generators.iter().chain(extra).cloned().collect();
    let seed: Vec<Poly> = ideal.basis.iter().chain(extra).cloned().collect();
    IdealGB::with_seed(&ideal.ring, gens, &seed)
}

/// Checks Buchberger's criterion on an arbitrary list of polynomials: every
/// S-polynomial reduces to zero modulo the list.
pub fn is_groebner_basis(basis: &[Poly]) -> bool {
    let nonzero: Vec<&Poly> = basis.iter().filter(|p| !p.is_zero()).collect();
    for i in 0..nonzero.len() {
        for j in i + 1..nonzero.len() {
            let s = s_polynomial(nonzero[i], nonzero[j]);
            if !reduce_full(&s, &nonzero, None).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Reduced-basis shape: monic, and no term of any element divisible by the
/// leading monomial of another.
pub fn is_reduced(basis: &[Poly]) -> bool {
    basis.iter().enumerate().all(|(i, g)| {
        !g.is_zero()
            && g.lc().is_one()
            && basis
                .iter()
                .enumerate()
                .all(|(j, h)| i == j || g.terms().iter().all(|t| !h.lm().divides(&t.mon)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(vars: &[&str]) -> Arc<RingSpec> {
        RingSpec::new(vars, MonOrder::Grevlex).unwrap()
    }

    fn ex_ring() -> Arc<RingSpec> {
        ring(&["x1", "x2", "r", "a", "b", "c", "d"])
    }

    const I_GENS: [&str; 7] = [
        "c*r-x1*a",
        "x2*c-d-x1*b",
        "d*r",
        "x2*a-b*r",
        "c*a-x1*r",
        "r^2-a^2",
        "x2*r-a*b",
    ];

    #[test]
    fn monomial_generators_are_their_own_basis() {
        let r = ex_ring();
        let i = IdealGB::parse(&r, &["x1", "x2"]).unwrap();
        assert_eq!(i.basis_strings(), vec!["x1", "x2"]);
    }

    #[test]
    fn principal_ideal_is_monic_generator() {
        let r = ex_ring();
        let i = IdealGB::parse(&r, &["2*x1*r - 4*a"]).unwrap();
        assert_eq!(i.basis_strings(), vec!["x1*r - 2*a"]);
    }

    #[test]
    fn empty_and_unit() {
        let r = ex_ring();
        assert!(IdealGB::zero(&r).is_zero());
        assert!(IdealGB::parse(&r, &["x1", "3"]).unwrap().is_unit());
        assert!(IdealGB::zero(&r).contains(&Poly::zero(&r)));
    }

    #[test]
    fn example_ideal_basis_is_reduced_and_groebner() {
        let r = ex_ring();
        let i = IdealGB::parse(&r, &I_GENS).unwrap();
        assert!(is_groebner_basis(i.basis()));
        assert!(is_reduced(i.basis()));
        for g in i.generators() {
            assert!(i.contains(g));
        }
        assert!(i.contains(&Poly::parse("a*d", &r).unwrap()));
        assert!(!i.contains(&Poly::parse("d", &r).unwrap()));
    }

    #[test]
    fn normal_form_properties() {
        let r = ex_ring();
        let i = IdealGB::parse(&r, &I_GENS).unwrap();
        for b in i.basis() {
            assert!(i.normal_form(b).is_zero());
        }
        let f = Poly::parse("x1*r - a*c", &r).unwrap();
        assert!(i.normal_form(&f).is_zero());
        let g = Poly::parse("x1^3*c + r*a*b - 7*d + 1/2", &r).unwrap();
        let nf = normal_form_with_cofactors(&g, &i);
        let rem = nf.remainder.clone();
        for t in rem.terms() {
            assert!(i.basis().iter().all(|b| !b.lm().divides(&t.mon)));
        }
        let mut recon = rem;
        for (c, b) in nf.cofactors.unwrap().iter().zip(i.basis()) {
            recon = &recon + &(c * b);
        }
        assert_eq!(recon, g);
    }

    #[test]
    fn sum_and_product_identities() {
        let r = ex_ring();
        let i = IdealGB::parse(&r, &I_GENS).unwrap();
        assert_eq!(ideal_sum(&i, &IdealGB::zero(&r)), i);
        assert_eq!(ideal_product(&i, &IdealGB::unit(&r)), i);
        assert!(ideal_equal(&i, &i));
    }

    #[test]
    fn order_change_keeps_membership() {
        let r = ex_ring();
        let i = IdealGB::parse(&r, &I_GENS).unwrap();
        let lex = i.with_order(MonOrder::Lex);
        assert!(is_groebner_basis(lex.basis()));
        let f = Poly::parse("a*d", &r).unwrap().with_order(MonOrder::Lex);
        assert!(lex.contains(&f));
    }
}
