//! Elimination, intersection and colon ideals.

use std::sync::Arc;

use super::IdealGB;
use crate::poly::{same_ring, MonOrder, Poly, PolyError, RingSpec};

/// Order used on an extended ring whose first `k` variables are to be
/// eliminated: lex is already an elimination order, everything else gets a
/// lex block on top of grevlex.
fn elimination_order(base: MonOrder, k: usize) -> MonOrder {
    match base {
        MonOrder::Lex => MonOrder::Lex,
        _ => MonOrder::Elim(k),
    }
}

/// `I ∩ Q[kept variables]`, expressed in the ring without `drop_vars`.
/// The result ring keeps the original order on the remaining variables.
pub fn eliminate(ideal: &IdealGB, drop_vars: &[&str]) -> Result<IdealGB, PolyError> {
    let ring = ideal.ring();
    let mut dropped = Vec::new();
    for name in drop_vars {
        let i = ring.index_of(name).ok_or_else(|| PolyError::UnknownVariable {
            name: name.to_string(),
            pos: 0,
        })?;
        if !dropped.contains(&i) {
            dropped.push(i);
        }
    }
    dropped.sort_unstable();
    let kept: Vec<usize> = (0..ring.nvars()).filter(|i| !dropped.contains(i)).collect();
    let kept_ring = RingSpec::new(
        &kept.iter().map(|&i| ring.vars[i].as_str()).collect::<Vec<_>>(),
        match ring.order {
            MonOrder::Elim(_) => MonOrder::Grevlex,
            o => o,
        },
    )?;
    if dropped.is_empty() {
        let map: Vec<Option<usize>> = (0..ring.nvars()).map(Some).collect();
        let gens = remap_all(ideal.generators(), &kept_ring, &map);
        let seed = remap_all(ideal.basis(), &kept_ring, &map);
        return Ok(IdealGB::with_seed(&kept_ring, gens, &seed));
    }

    let k = dropped.len();
    let ext_vars: Vec<&str> = dropped
        .iter()
        .chain(kept.iter())
        .map(|&i| ring.vars[i].as_str())
        .collect();
    let ext_ring = RingSpec::new(&ext_vars, elimination_order(ring.order, k))?;
    let mut to_ext = vec![None; ring.nvars()];
    for (pos, &i) in dropped.iter().chain(kept.iter()).enumerate() {
        to_ext[i] = Some(pos);
    }
    let ext_basis = remap_all(ideal.basis(), &ext_ring, &to_ext);
    let big = IdealGB::new(&ext_ring, ext_basis);

    let from_ext: Vec<Option<usize>> = (0..ext_ring.nvars())
        .map(|p| if p < k { None } else { Some(p - k) })
        .collect();
    let survivors: Vec<Poly> = big
        .basis()
        .iter()
        .filter_map(|g| g.remap(&kept_ring, &from_ext).ok())
        .collect();
    Ok(IdealGB::new(&kept_ring, survivors))
}

fn remap_all(polys: &[Poly], target: &Arc<RingSpec>, map: &[Option<usize>]) -> Vec<Poly> {
    polys
        .iter()
        .map(|p| p.remap(target, map).expect("total variable map"))
        .collect()
}

/// `I1 ∩ I2` by eliminating a tag variable `t` from `t·I1 + (1 - t)·I2`.
pub fn ideal_intersect(a: &IdealGB, b: &IdealGB) -> IdealGB {
    assert!(same_ring(a.ring(), b.ring()), "ideals from different rings");
    let ring = a.ring();
    if a.is_unit() {
        return b.clone();
    }
    if b.is_unit() {
        return a.clone();
    }
    if a.is_zero() || b.is_zero() {
        return IdealGB::zero(ring);
    }

    let tag = ring.fresh_name("t");
    let mut ext_vars = vec![tag.as_str()];
    ext_vars.extend(ring.vars.iter().map(String::as_str));
    let ext_ring = RingSpec::new(&ext_vars, elimination_order(ring.order, 1)).expect("fresh tag variable");
    let shift: Vec<Option<usize>> = (0..ring.nvars()).map(|i| Some(i + 1)).collect();
    let t = Poly::var(&ext_ring, &tag).expect("tag variable");
    let one_minus_t = &Poly::one(&ext_ring) - &t;

    let mut gens = Vec::new();
    for f in a.basis() {
        gens.push(&t * &f.remap(&ext_ring, &shift).unwrap());
    }
    for g in b.basis() {
        gens.push(&one_minus_t * &g.remap(&ext_ring, &shift).unwrap());
    }
    let big = IdealGB::new(&ext_ring, gens);

    let unshift: Vec<Option<usize>> = (0..ext_ring.nvars())
        .map(|p| if p == 0 { None } else { Some(p - 1) })
        .collect();
    let survivors: Vec<Poly> = big
        .basis()
        .iter()
        .filter_map(|g| g.remap(ring, &unshift).ok())
        .collect();
    IdealGB::new(ring, survivors)
}

/// `(I : g)`, from `I ∩ (g)` divided by `g`.
pub fn quotient_by_element(ideal: &IdealGB, g: &Poly) -> IdealGB {
    let ring = ideal.ring();
    if g.is_zero() || ideal.contains(g) {
        return IdealGB::unit(ring);
    }
    let meet = ideal_intersect(ideal, &IdealGB::principal(g));
    let gens: Vec<Poly> = meet
        .basis()
        .iter()
        .map(|h| h.exact_div(g).expect("elements of (g) are divisible by g"))
        .collect();
    IdealGB::new(ring, gens)
}

/// `(I : J) = ∩_{g ∈ basis(J)} (I : g)`
pub fn ideal_quotient(ideal: &IdealGB, by: &IdealGB) -> IdealGB {
    assert!(same_ring(ideal.ring(), by.ring()), "ideals from different rings");
    let mut acc = IdealGB::unit(ideal.ring());
    for g in by.basis() {
        let q = quotient_by_element(ideal, g);
        acc = ideal_intersect(&acc, &q);
    }
    acc
}
