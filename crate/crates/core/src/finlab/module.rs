//! Finite modules over a [`FinRing`], with submodules as bit masks.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use super::ring::{FinError, FinRing, MAX_SIZE};
use super::set::{bits, has, single, Set};

#[derive(Clone)]
pub struct FinModule {
    ring: Arc<FinRing>,
    name: String,
    n: usize,
    add: Vec<u8>,
    neg: Vec<u8>,
    /// `act[r * n + m] = r·m`
    act: Vec<u8>,
    labels: Vec<String>,
}

impl fmt::Debug for FinModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinModule({} over {})", self.name, self.ring.name())
    }
}

impl FinModule {
    fn from_tables(
        ring: &Arc<FinRing>,
        name: String,
        n: usize,
        add: Vec<u8>,
        act: Vec<u8>,
        labels: Vec<String>,
    ) -> Result<FinModule, FinError> {
        let neg = (0..n)
            .map(|a| (0..n).find(|&b| add[a * n + b] == 0).unwrap_or(0) as u8)
            .collect();
        let m = FinModule {
            ring: ring.clone(),
            name,
            n,
            add,
            neg,
            act,
            labels,
        };
        m.check_axioms()?;
        Ok(m)
    }

    /// `R` as a module over itself.
    pub fn regular(ring: &FinRing) -> FinModule {
        let ring = Arc::new(ring.clone());
        Self::regular_arc(&ring)
    }

    pub fn regular_arc(ring: &Arc<FinRing>) -> FinModule {
        let n = ring.size();
        let mut add = Vec::with_capacity(n * n);
        let mut act = Vec::with_capacity(n * n);
        for a in ring.elements() {
            for b in ring.elements() {
                add.push(ring.add(a, b));
                act.push(ring.mul(a, b));
            }
        }
        FinModule {
            ring: ring.clone(),
            name: "R".into(),
            n,
            add,
            neg: ring.elements().map(|a| ring.neg(a)).collect(),
            act,
            labels: ring.elements().map(|a| ring.label(a).to_string()).collect(),
        }
    }

    /// `M / N` for a submodule `N`; cosets are labelled by their smallest
    /// representative.
    pub fn quotient(&self, sub: Set, name: &str) -> Result<FinModule, FinError> {
        if !self.is_submodule(sub) {
            return Err(FinError::NotSubmodule);
        }
        let mut class = vec![u8::MAX; self.n];
        let mut reps: Vec<u8> = Vec::new();
        for m in self.elements() {
            if class[m as usize] != u8::MAX {
                continue;
            }
            let idx = reps.len() as u8;
            reps.push(m);
            for s in bits(sub) {
                class[self.add(m, s) as usize] = idx;
            }
        }
        let k = reps.len();
        let mut add = Vec::with_capacity(k * k);
        for &a in &reps {
            for &b in &reps {
                add.push(class[self.add(a, b) as usize]);
            }
        }
        let mut act = Vec::with_capacity(self.ring.size() * k);
        for r in self.ring.elements() {
            for &a in &reps {
                act.push(class[self.act(r, a) as usize]);
            }
        }
        let labels = reps.iter().map(|&a| format!("[{}]", self.label(a))).collect();
        Self::from_tables(&self.ring, name.to_string(), k, add, act, labels)
    }

    /// `R / I`
    pub fn ring_quotient(ring: &Arc<FinRing>, ideal: Set, name: &str) -> Result<FinModule, FinError> {
        Self::regular_arc(ring).quotient(ideal, name)
    }

    pub fn direct_sum(&self, other: &FinModule) -> Result<FinModule, FinError> {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring),
            "modules over different rings"
        );
        let n = self.n * other.n;
        if n > MAX_SIZE {
            return Err(FinError::SizeBound {
                spec: format!("{} + {}", self.name, other.name),
                size: n as u128,
                bound: MAX_SIZE,
            });
        }
        let split = |x: usize| (x / other.n, x % other.n);
        let join = |a: u8, b: u8| (a as usize * other.n + b as usize) as u8;
        let mut add = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let ((a1, b1), (a2, b2)) = (split(x), split(y));
                add.push(join(self.add(a1 as u8, a2 as u8), other.add(b1 as u8, b2 as u8)));
            }
        }
        let mut act = Vec::with_capacity(self.ring.size() * n);
        for r in self.ring.elements() {
            for x in 0..n {
                let (a, b) = split(x);
                act.push(join(self.act(r, a as u8), other.act(r, b as u8)));
            }
        }
        let labels = (0..n)
            .map(|x| {
                let (a, b) = split(x);
                format!("({},{})", self.labels[a], other.labels[b])
            })
            .collect();
        Self::from_tables(
            &self.ring,
            format!("{} + {}", self.name, other.name),
            n,
            add,
            act,
            labels,
        )
    }

    pub fn ring(&self) -> &Arc<FinRing> {
        &self.ring
    }

    pub fn name(&self) -> &str {
        &self.name
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

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn act(&self, r: u8, m: u8) -> u8 {
        self.act[r as usize * self.n + m as usize]
    }

    pub fn label(&self, m: u8) -> &str {
        &self.labels[m as usize]
    }

    fn check_axioms(&self) -> Result<(), FinError> {
        let r = &self.ring;
        let fail = |what: &str| Err(FinError::ModuleAxiom(format!("{what} in {}", self.name)));
        for a in self.elements() {
            if self.act(r.one(), a) != a {
                return fail("unitality");
            }
            if self.add(a, 0) != a || self.add(a, self.neg(a)) != 0 {
                return fail("additive identity");
            }
            for b in self.elements() {
                if self.add(a, b) != self.add(b, a) {
                    return fail("additive commutativity");
                }
                for c in self.elements() {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return fail("additive associativity");
                    }
                }
                for s in r.elements() {
                    if self.act(s, self.add(a, b)) != self.add(self.act(s, a), self.act(s, b)) {
                        return fail("distributivity over module addition");
                    }
                }
            }
            for s in r.elements() {
                for t in r.elements() {
                    if self.act(r.add(s, t), a) != self.add(self.act(s, a), self.act(t, a)) {
                        return fail("distributivity over ring addition");
                    }
                    if self.act(r.mul(s, t), a) != self.act(s, self.act(t, a)) {
                        return fail("associativity of the action");
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_submodule(&self, s: Set) -> bool {
        has(s, 0)
            && bits(s).all(|a| {
                bits(s).all(|b| has(s, self.add(a, b)))
                    && self.ring.elements().all(|r| has(s, self.act(r, a)))
            })
    }

    /// Smallest submodule containing `gens`.
    pub fn span(&self, gens: Set) -> Set {
        let mut set: Set = 1;
        let mut members: Vec<u8> = vec![0];
        let mut stack: Vec<u8> = Vec::new();
        for g in bits(gens) {
            for r in self.ring.elements() {
                let x = self.act(r, g);
                if !has(set, x) {
                    set |= single(x);
                    members.push(x);
                    stack.push(x);
                }
            }
        }
        while let Some(x) = stack.pop() {
            let mut k = 0;
            while k < members.len() {
                let z = self.add(x, members[k]);
                if !has(set, z) {
                    set |= single(z);
                    members.push(z);
                    stack.push(z);
                }
                k += 1;
            }
        }
        set
    }

    /// All submodules, sorted by size and then by mask.
    pub fn submodules(&self) -> Vec<Set> {
        let mut seen: HashSet<Set> = HashSet::new();
        let mut queue: VecDeque<Set> = VecDeque::new();
        seen.insert(1);
        queue.push_back(1);
        while let Some(s) = queue.pop_front() {
            for m in self.elements() {
                if has(s, m) {
                    continue;
                }
                let t = self.span(s | single(m));
                if seen.insert(t) {
                    queue.push_back(t);
                }
            }
        }
        let mut out: Vec<Set> = seen.into_iter().collect();
        out.sort_by_key(|&s| (s.count_ones(), s));
        out
    }

    /// Greedy generating set: each element lies outside the span of the
    /// earlier ones.
    pub fn generators(&self, sub: Set) -> Vec<u8> {
        let mut gens = Vec::new();
        let mut cur: Set = 1;
        for m in bits(sub) {
            if !has(cur, m) {
                gens.push(m);
                cur = self.span(cur | single(m));
            }
        }
        gens
    }

    /// Text like `(2)` or `(x, x+1)`; the zero submodule is `(0)`. A single
    /// generator is used whenever the submodule is cyclic.
    pub fn describe(&self, sub: Set) -> String {
        let gens = match bits(sub).find(|&m| self.span(single(m)) == sub) {
            Some(g) if sub != 1 => vec![g],
            _ => self.generators(sub),
        };
        if gens.is_empty() {
            return format!("({})", self.label(0));
        }
        let labels: Vec<&str> = gens.iter().map(|&g| self.label(g)).collect();
        format!("({})", labels.join(", "))
    }

    /// `(0 :_M I)`
    pub fn annihilated_by(&self, ideal: Set) -> Set {
        self.elements()
            .filter(|&m| bits(ideal).all(|r| self.act(r, m) == 0))
            .fold(0, |s, m| s | single(m))
    }

    /// `(0 :_R N)`
    pub fn annihilator(&self, sub: Set) -> Set {
        self.ring
            .elements()
            .filter(|&r| bits(sub).all(|m| self.act(r, m) == 0))
            .fold(0, |s, r| s | single(r))
    }

    /// `s·N`
    pub fn scale(&self, s: u8, sub: Set) -> Set {
        bits(sub).fold(0, |acc, m| acc | single(self.act(s, m)))
    }
}

#[cfg(test)]
mod tests {
    use super::super::ring::{build_ring, FinRingSpec};
    use super::*;

    fn ring(spec: FinRingSpec) -> Arc<FinRing> {
        Arc::new(build_ring(&spec, MAX_SIZE).unwrap())
    }

    #[test]
    fn ideal_counts() {
        let count = |spec| FinModule::regular_arc(&ring(spec)).submodules().len();
        assert_eq!(count(FinRingSpec::zn(4)), 3);
        assert_eq!(count(FinRingSpec::zn(12)), 6);
        assert_eq!(count(FinRingSpec::zn(7)), 2);
        assert_eq!(
            count(FinRingSpec::product(FinRingSpec::zn(2), FinRingSpec::zn(2))),
            4
        );
    }

    #[test]
    fn dual_numbers_ideals() {
        let r = ring(FinRingSpec::poly_quot(2, &[0, 0, 1]));
        let m = FinModule::regular_arc(&r);
        let names: Vec<String> = m.submodules().iter().map(|&s| m.describe(s)).collect();
        assert_eq!(names, vec!["(0)", "(x)", "(1)"]);
    }

    #[test]
    fn submodules_of_z12_are_divisor_ideals() {
        let r = ring(FinRingSpec::zn(12));
        let m = FinModule::regular_arc(&r);
        for s in m.submodules() {
            let d = (1..=12u8)
                .find(|&d| 12 % d == 0 && m.span(single(d % 12)) == s)
                .unwrap();
            assert_eq!(s.count_ones() as u8, 12 / d);
        }
    }

    #[test]
    fn quotients_and_sums() {
        let r = ring(FinRingSpec::zn(4));
        let m = FinModule::regular_arc(&r);
        let two = m.span(single(2));
        let q = m.quotient(two, "R/(2)").unwrap();
        assert_eq!(q.size(), 2);
        assert_eq!(q.submodules().len(), 2);
        let s = m.direct_sum(&q).unwrap();
        assert_eq!(s.size(), 8);
        assert!(s.submodules().iter().all(|&n| s.is_submodule(n)));
        assert_eq!(m.annihilated_by(two), two);
        assert_eq!(m.annihilator(m.all()), 1);
        assert!(m.quotient(single(0) | single(1), "bad").is_err());
        let zero = m.quotient(m.all(), "0").unwrap();
        assert_eq!(zero.size(), 1);
        assert_eq!(zero.submodules(), vec![1]);
    }

    #[test]
    fn span_is_smallest_submodule() {
        let r = ring(FinRingSpec::product(FinRingSpec::zn(4), FinRingSpec::zn(2)));
        let m = FinModule::regular_arc(&r);
        let subs = m.submodules();
        for g in m.elements() {
            let s = m.span(single(g));
            let smallest = subs
                .iter()
                .filter(|&&t| has(t, g))
                .min_by_key(|t| t.count_ones())
                .unwrap();
            assert_eq!(s, *smallest);
            assert!(subs
                .iter()
                .filter(|&&t| has(t, g))
                .all(|&t| super::super::set::subset(s, t)));
        }
    }
}
