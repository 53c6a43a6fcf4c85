//! GV-ideals, w-closures and the checks built on them, all by exhaustive
//! evaluation over ring and module tables.

use std::sync::Arc;

use serde::Serialize;

use super::module::FinModule;
use super::ring::{FinError, FinRing};
use super::set::{bits, count, has, single, subset, Set};

/// Counts `R`-linear maps `J → T` for an ideal `J`, stopping once the count
/// exceeds `cap`.
///
/// A map is fixed by the images of a greedy generating set `g_1, ..., g_k`
/// of `J`. An image `t` for `g_{i+1}` extends a map `φ` defined on
/// `(g_1, ..., g_i)` exactly when `r·t = φ(r·g_{i+1})` for every `r` with
/// `r·g_{i+1}` in that span.
pub fn count_homs(ring: &Arc<FinRing>, ideal: Set, target: &FinModule, cap: usize) -> usize {
    let regular = FinModule::regular_arc(ring);
    let gens = regular.generators(ideal);
    let mut phi = vec![u8::MAX; ring.size()];
    phi[0] = 0;
    let mut total = 0;
    extend_hom(ring, target, &gens, 1, &phi, cap, &mut total);
    total
}

fn extend_hom(
    ring: &FinRing,
    target: &FinModule,
    gens: &[u8],
    dom: Set,
    phi: &[u8],
    cap: usize,
    total: &mut usize,
) {
    if *total > cap {
        return;
    }
    let Some((&g, rest)) = gens.split_first() else {
        *total += 1;
        return;
    };
    'image: for t in target.elements() {
        for r in ring.elements() {
            let x = ring.mul(r, g);
            if has(dom, x) && target.act(r, t) != phi[x as usize] {
                continue 'image;
            }
        }
        let mut next = phi.to_vec();
        let mut next_dom = dom;
        for a in bits(dom) {
            for r in ring.elements() {
                let x = ring.add(a, ring.mul(r, g));
                let v = target.add(phi[a as usize], target.act(r, t));
                if has(next_dom, x) {
                    debug_assert_eq!(next[x as usize], v, "extension is well defined");
                } else {
                    next_dom |= single(x);
                    next[x as usize] = v;
                }
            }
        }
        extend_hom(ring, target, rest, next_dom, &next, cap, total);
        if *total > cap {
            return;
        }
    }
}

/// `J` is GV when `R → Hom_R(J, R)`, `r ↦ (x ↦ rx)`, is bijective. The map
/// is injective iff `(0 :_R J) = 0`, and then bijective iff both sides have
/// `|R|` elements.
pub fn is_gv_ideal(ring: &Arc<FinRing>, ideal: Set) -> bool {
    ring.annihilator(ideal) == 1
        && count_homs(ring, ideal, &FinModule::regular_arc(ring), ring.size()) == ring.size()
}

/// The GV-ideals of a ring among its full ideal list.
#[derive(Debug, Clone)]
pub struct GVSet {
    pub ring: Arc<FinRing>,
    pub regular: FinModule,
    pub ideals: Vec<Set>,
    pub gv: Vec<Set>,
}

impl GVSet {
    pub fn compute(ring: &Arc<FinRing>) -> GVSet {
        let regular = FinModule::regular_arc(ring);
        let ideals = regular.submodules();
        let gv = ideals.iter().copied().filter(|&j| is_gv_ideal(ring, j)).collect();
        GVSet {
            ring: ring.clone(),
            regular,
            ideals,
            gv,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.gv == vec![self.ring.all()]
    }

    pub fn describe(&self) -> Vec<String> {
        self.gv.iter().map(|&j| self.regular.describe(j)).collect()
    }

    pub fn primes(&self) -> Vec<Set> {
        self.ideals
            .iter()
            .copied()
            .filter(|&p| self.ring.is_prime(p))
            .collect()
    }

    /// First pair `(J1, J2)` of GV-ideals whose product is not GV.
    pub fn multiplicative_violation(&self) -> Option<(Set, Set)> {
        for &a in &self.gv {
            for &b in &self.gv {
                if !self.gv.contains(&self.ring.ideal_product(a, b)) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// `{x ∈ M | Jx ⊆ N for some GV-ideal J}`
    pub fn w_closure_in(&self, m: &FinModule, n: Set) -> Set {
        m.elements()
            .filter(|&x| self.gv.iter().any(|&j| bits(j).all(|r| has(n, m.act(r, x)))))
            .fold(0, |s, x| s | single(x))
    }

    pub fn gv_torsion(&self, m: &FinModule) -> Set {
        self.w_closure_in(m, 1)
    }

    pub fn is_w_closed(&self, m: &FinModule, n: Set) -> bool {
        self.w_closure_in(m, n) == n
    }

    /// Restriction `Hom(R, M) → Hom(J, M)` is onto, i.e. every map is
    /// multiplication by an element; its image has `|M| / |(0 :_M J)|`
    /// elements.
    pub fn ext1_vanishes(&self, j: Set, m: &FinModule) -> bool {
        let image = m.size() / count(m.annihilated_by(j));
        count_homs(&self.ring, j, m, image) == image
    }

    pub fn is_w_module(&self, m: &FinModule, submodules: &[Set]) -> WModuleCheck {
        WModuleCheck {
            torsion_free: self.gv_torsion(m) == 1,
            ext_vanishes: self.gv.iter().all(|&j| self.ext1_vanishes(j, m)),
            closed_submodules: submodules.iter().all(|&n| self.is_w_closed(m, n)),
        }
    }

    /// `(0 :_R N)` is closed in the regular module.
    pub fn is_w_ideal(&self, ideal: Set) -> bool {
        self.is_w_closed(&self.regular, ideal)
    }
}

/// Two readings of "w-module" for a finite module: the Ext-based one
/// (GV-torsion-free and `Ext^1(R/J, M) = 0` for all GV `J`), and the
/// closure-based one (every submodule is its own closure inside `M`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WModuleCheck {
    pub torsion_free: bool,
    pub ext_vanishes: bool,
    pub closed_submodules: bool,
}

impl WModuleCheck {
    pub fn holds(&self) -> bool {
        self.torsion_free && self.ext_vanishes && self.closed_submodules
    }
}

/// Closure laws of `N ↦ w_closure_in(M, N)` on the submodule lattice;
/// returns a description of the first violation.
pub fn closure_law_violation(gv: &GVSet, m: &FinModule, subs: &[Set]) -> Option<String> {
    let cl: Vec<Set> = subs.iter().map(|&n| gv.w_closure_in(m, n)).collect();
    for (i, &n) in subs.iter().enumerate() {
        if !m.is_submodule(cl[i]) {
            return Some(format!("closure of {} is not a submodule", m.describe(n)));
        }
        if !subset(n, cl[i]) {
            return Some(format!("{} is not contained in its closure", m.describe(n)));
        }
        if gv.w_closure_in(m, cl[i]) != cl[i] {
            return Some(format!("closure of {} is not idempotent", m.describe(n)));
        }
        for (k, &n2) in subs.iter().enumerate() {
            if subset(n, n2) && !subset(cl[i], cl[k]) {
                return Some(format!(
                    "{} ⊆ {} but closures are not nested",
                    m.describe(n),
                    m.describe(n2)
                ));
            }
        }
    }
    None
}

#[derive(Debug, Clone, Serialize)]
pub struct Lemma21Report {
    pub module: String,
    pub w_module: WModuleCheck,
    pub ideals_checked: usize,
    /// Ideals `I` whose annihilator `(0 :_M I)` is not w-closed.
    pub violations: Vec<String>,
}

impl Lemma21Report {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For every ideal `I`, `(0 :_M I)` is w-closed in `M`.
pub fn check_lemma_2_1(gv: &GVSet, m: &FinModule, subs: &[Set]) -> Lemma21Report {
    let violations = gv
        .ideals
        .iter()
        .filter(|&&i| !gv.is_w_closed(m, m.annihilated_by(i)))
        .map(|&i| gv.regular.describe(i))
        .collect();
    Lemma21Report {
        module: m.name().to_string(),
        w_module: gv.is_w_module(m, subs),
        ideals_checked: gv.ideals.len(),
        violations,
    }
}

/// `M[p] = ∩_{s ∉ p} s·(0 :_M p)`
pub fn m_bracket_p(m: &FinModule, p: Set) -> Result<Set, FinError> {
    let ring = m.ring();
    if !ring.is_ideal(p) || !ring.is_prime(p) {
        return Err(FinError::NotPrime);
    }
    let base = m.annihilated_by(p);
    Ok(ring
        .elements()
        .filter(|&s| !has(p, s))
        .fold(m.all(), |acc, s| acc & m.scale(s, base)))
}

/// Families of w-submodules examined by the cofinite-generation checks:
/// every nonempty subfamily when there are at most 12 members, otherwise
/// all subfamilies of size at most 3 plus the whole family.
pub fn families(w: &[Set]) -> Vec<Vec<Set>> {
    let n = w.len();
    let mut out = Vec::new();
    if n <= 12 {
        for mask in 1u32..(1 << n) {
            out.push((0..n).filter(|&i| mask >> i & 1 == 1).map(|i| w[i]).collect());
        }
        return out;
    }
    for i in 0..n {
        out.push(vec![w[i]]);
        for j in i + 1..n {
            out.push(vec![w[i], w[j]]);
            for k in j + 1..n {
                out.push(vec![w[i], w[j], w[k]]);
            }
        }
    }
    out.push(w.to_vec());
    out
}

/// Whether the family enumeration covers every subfamily.
pub fn families_exhaustive(w: &[Set]) -> bool {
    w.len() <= 12
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CofgReport {
    /// Every family with zero intersection has a finite subfamily with zero
    /// intersection (found greedily).
    pub finite_subfamily: bool,
    /// Every inverse system of nonzero w-submodules is bounded below by a
    /// nonzero w-submodule.
    pub inverse_system: bool,
    pub families: usize,
    pub exhaustive: bool,
}

impl CofgReport {
    pub fn agree(&self) -> bool {
        self.finite_subfamily == self.inverse_system
    }
}

fn greedy_zero_subfamily(family: &[Set]) -> Option<Vec<Set>> {
    let mut cur = u64::MAX;
    let mut chosen = Vec::new();
    while cur != 1 {
        let &best = family.iter().min_by_key(|&&f| count(cur & f))?;
        if cur & best == cur {
            return None;
        }
        cur &= best;
        chosen.push(best);
    }
    Some(chosen)
}

fn is_inverse_system(family: &[Set]) -> bool {
    family
        .iter()
        .all(|&a| family.iter().all(|&b| family.iter().any(|&c| subset(c, a & b))))
}

/// `w` lists the w-closed submodules of the module.
pub fn is_w_cofinitely_generated(w: &[Set]) -> CofgReport {
    let fams = families(w);
    let mut finite_subfamily = true;
    let mut inverse_system = true;
    for fam in &fams {
        let meet = fam.iter().fold(u64::MAX, |a, &b| a & b);
        if meet == 1 && greedy_zero_subfamily(fam).is_none() {
            finite_subfamily = false;
        }
        if fam.iter().all(|&f| f != 1) && is_inverse_system(fam) {
            let bounded = w.iter().any(|&n| n != 1 && subset(n, meet));
            inverse_system &= bounded;
        }
    }
    CofgReport {
        finite_subfamily,
        inverse_system,
        families: fams.len(),
        exhaustive: families_exhaustive(w),
    }
}

/// `X_w` for a finite module, taken as `X / tor_GV(X)`. For rings whose only
/// GV-ideal is `R` this is `X` itself.
pub fn w_envelope(gv: &GVSet, x: &FinModule) -> Result<FinModule, FinError> {
    let t = gv.gv_torsion(x);
    if t == 1 {
        Ok(x.clone())
    } else {
        x.quotient(t, &format!("({})_w", x.name()))
    }
}

fn w_lattice(gv: &GVSet, m: &FinModule) -> Vec<Set> {
    m.submodules()
        .into_iter()
        .filter(|&n| gv.is_w_closed(m, n))
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct PrimeWitness {
    pub prime: String,
    pub annihilator: String,
    pub m_bracket: String,
    pub candidates: usize,
    /// The exhibited `N^p`, preferring `(0 :_M p)` when it qualifies.
    pub chosen: Option<String>,
    pub chosen_is_annihilator: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Theorem25Report {
    pub module: String,
    pub w_module: WModuleCheck,
    /// Descending chain condition on w-submodules; always true for finite
    /// modules. `longest_chain` is the evidence.
    pub side1: bool,
    pub longest_chain: usize,
    pub cofinitely_generated: CofgReport,
    pub primes: Vec<PrimeWitness>,
    pub side2: bool,
    pub equivalent: bool,
}

fn longest_descending_chain(w: &[Set]) -> usize {
    // w is sorted by size, so strict subsets come first
    let mut best = vec![1usize; w.len()];
    for i in 0..w.len() {
        for k in 0..i {
            if w[k] != w[i] && subset(w[k], w[i]) {
                best[i] = best[i].max(best[k] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

/// Evaluates both sides of the Cohen-type equivalence on `(R, M)`.
pub fn theorem_2_5_consistency(gv: &GVSet, m: &FinModule) -> Result<Theorem25Report, FinError> {
    let subs = m.submodules();
    let w: Vec<Set> = subs.iter().copied().filter(|&n| gv.is_w_closed(m, n)).collect();
    let longest_chain = longest_descending_chain(&w);
    let side1 = longest_chain <= w.len();
    let cofg = is_w_cofinitely_generated(&w);
    let ann_m = m.annihilator(m.all());
    let mut primes = Vec::new();
    let mut side2 = cofg.finite_subfamily;
    for p in gv.primes() {
        if !gv.is_w_ideal(p) || !subset(ann_m, p) {
            continue;
        }
        let ann = m.annihilated_by(p);
        let bracket = m_bracket_p(m, p)?;
        let lower = gv.w_closure_in(m, bracket);
        let mut ok: Vec<Set> = Vec::new();
        for &n in &w {
            if !(subset(lower, n) && subset(n, ann)) {
                continue;
            }
            let q = w_envelope(gv, &m.quotient(n, "M/N")?)?;
            if is_w_cofinitely_generated(&w_lattice(gv, &q)).finite_subfamily {
                ok.push(n);
            }
        }
        let chosen = if ok.contains(&ann) {
            Some(ann)
        } else {
            ok.first().copied()
        };
        side2 &= chosen.is_some();
        primes.push(PrimeWitness {
            prime: gv.regular.describe(p),
            annihilator: m.describe(ann),
            m_bracket: m.describe(bracket),
            candidates: ok.len(),
            chosen: chosen.map(|n| m.describe(n)),
            chosen_is_annihilator: chosen == Some(ann),
        });
    }
    Ok(Theorem25Report {
        module: m.name().to_string(),
        w_module: gv.is_w_module(m, &subs),
        side1,
        longest_chain,
        cofinitely_generated: cofg,
        primes,
        side2,
        equivalent: side1 == side2,
    })
}

#[cfg(test)]
mod tests {
    use super::super::ring::{build_ring, FinRingSpec, MAX_SIZE};
    use super::*;

    fn ring(spec: FinRingSpec) -> Arc<FinRing> {
        Arc::new(build_ring(&spec, MAX_SIZE).unwrap())
    }

    /// All additive, `R`-linear maps `J → R`, by enumerating every function.
    fn brute_force_homs(r: &FinRing, j: Set) -> usize {
        let dom: Vec<u8> = bits(j).collect();
        let n = r.size();
        let total = n.pow(dom.len() as u32);
        let mut found = 0;
        for code in 0..total {
            let mut img = vec![0u8; n];
            let mut c = code;
            for &x in &dom {
                img[x as usize] = (c % n) as u8;
                c /= n;
            }
            let linear = dom.iter().all(|&x| {
                dom.iter()
                    .all(|&y| img[r.add(x, y) as usize] == r.add(img[x as usize], img[y as usize]))
                    && r.elements()
                        .all(|s| img[r.mul(s, x) as usize] == r.mul(s, img[x as usize]))
            });
            found += linear as usize;
        }
        found
    }

    #[test]
    fn hom_count_matches_brute_force() {
        for spec in [
            FinRingSpec::zn(4),
            FinRingSpec::zn(6),
            FinRingSpec::zn(8),
            FinRingSpec::poly_quot(2, &[0, 0, 1]),
            FinRingSpec::product(FinRingSpec::zn(2), FinRingSpec::zn(2)),
            FinRingSpec::product(FinRingSpec::zn(2), FinRingSpec::zn(4)),
        ] {
            let r = ring(spec);
            let reg = FinModule::regular_arc(&r);
            for j in reg.submodules() {
                assert_eq!(
                    count_homs(&r, j, &reg, usize::MAX - 1),
                    brute_force_homs(&r, j),
                    "{} {}",
                    r.name(),
                    reg.describe(j)
                );
            }
        }
    }

    #[test]
    fn gv_examples() {
        let z4 = ring(FinRingSpec::zn(4));
        let gv = GVSet::compute(&z4);
        assert_eq!(gv.describe(), vec!["(1)"]);
        let two = gv.regular.span(single(2));
        assert!(!is_gv_ideal(&z4, two));
        assert_eq!(z4.annihilator(two), two);
        assert!(!is_gv_ideal(&z4, 1));
        assert!(is_gv_ideal(&z4, z4.all()));
        assert!(gv.is_trivial());
        assert!(gv.multiplicative_violation().is_none());
    }

    #[test]
    fn closure_and_torsion() {
        let z4 = ring(FinRingSpec::zn(4));
        let gv = GVSet::compute(&z4);
        let m = gv.regular.clone();
        assert_eq!(gv.gv_torsion(&m), 1);
        for n in m.submodules() {
            assert_eq!(gv.w_closure_in(&m, n), n);
        }
        assert_eq!(gv.w_closure_in(&m, m.all()), m.all());
        assert!(closure_law_violation(&gv, &m, &m.submodules()).is_none());
        let zero = m.quotient(m.all(), "0").unwrap();
        assert_eq!(gv.gv_torsion(&zero), 1);
    }

    /// A made-up filter `{R, J}` with `J = J^2` exercises the closure map
    /// beyond the identity.
    #[test]
    fn closure_with_idempotent_filter() {
        let r = ring(FinRingSpec::product(FinRingSpec::zn(2), FinRingSpec::zn(2)));
        let mut gv = GVSet::compute(&r);
        let e = r.elements().find(|&x| r.label(x) == "(0,1)").unwrap();
        let j = gv.regular.span(single(e));
        assert_eq!(r.ideal_product(j, j), j);
        gv.gv.push(j);
        let m = gv.regular.clone();
        let tor = gv.gv_torsion(&m);
        assert_eq!(m.describe(tor), "((1,0))");
        assert_eq!(gv.w_closure_in(&m, 1), tor);
        assert!(gv.multiplicative_violation().is_none());
        assert!(closure_law_violation(&gv, &m, &m.submodules()).is_none());
        assert!(!gv.is_w_module(&m, &m.submodules()).holds());
    }

    #[test]
    fn m_bracket_examples() {
        let z4 = ring(FinRingSpec::zn(4));
        let m = FinModule::regular_arc(&z4);
        let two = m.span(single(2));
        assert_eq!(m_bracket_p(&m, two).unwrap(), two);
        assert_eq!(m_bracket_p(&m, 1), Err(FinError::NotPrime));
        assert_eq!(m_bracket_p(&m, m.all()), Err(FinError::NotPrime));
        let zero = m.quotient(m.all(), "0").unwrap();
        assert_eq!(m_bracket_p(&zero, two).unwrap(), 1);
        // p = (3) in Z/6 acting on R/(2): (0 :_M p) = 0
        let z6 = ring(FinRingSpec::zn(6));
        let r6 = FinModule::regular_arc(&z6);
        let q = r6.quotient(r6.span(single(2)), "R/(2)").unwrap();
        let three = r6.span(single(3));
        assert_eq!(q.annihilated_by(three), 1);
        assert_eq!(m_bracket_p(&q, three).unwrap(), 1);
    }

    #[test]
    fn lemma_2_1_on_z4() {
        let z4 = ring(FinRingSpec::zn(4));
        let gv = GVSet::compute(&z4);
        let m = gv.regular.clone();
        let rep = check_lemma_2_1(&gv, &m, &m.submodules());
        assert!(rep.pass());
        assert_eq!(rep.ideals_checked, 3);
        assert!(rep.w_module.holds());
        assert_eq!(m.annihilated_by(1), m.all());
        assert_eq!(m.annihilated_by(m.all()), 1);
    }

    #[test]
    fn cofinite_generation() {
        let z12 = ring(FinRingSpec::zn(12));
        let gv = GVSet::compute(&z12);
        let m = gv.regular.clone();
        let w = w_lattice(&gv, &m);
        let rep = is_w_cofinitely_generated(&w);
        assert!(rep.finite_subfamily && rep.inverse_system && rep.exhaustive);
        assert_eq!(rep.families, (1 << 6) - 1);
        assert_eq!(is_w_cofinitely_generated(&[1]).families, 1);
        assert!(is_w_cofinitely_generated(&[1]).agree());
        // large families fall back to bounded subfamilies
        let many: Vec<Set> = (0..14).map(|i| 1 | single(i + 1)).collect();
        let fams = families(&many);
        assert_eq!(fams.len(), 14 + 91 + 364 + 1);
        assert!(!families_exhaustive(&many));
    }

    #[test]
    fn theorem_2_5_on_z12() {
        let z12 = ring(FinRingSpec::zn(12));
        let gv = GVSet::compute(&z12);
        let rep = theorem_2_5_consistency(&gv, &gv.regular).unwrap();
        assert!(rep.side1 && rep.side2 && rep.equivalent);
        let mut primes: Vec<&str> = rep.primes.iter().map(|p| p.prime.as_str()).collect();
        primes.sort();
        assert_eq!(primes, vec!["(2)", "(3)"]);
        assert!(rep.primes.iter().all(|p| p.chosen_is_annihilator));
    }
}
