//! The built-in seven-variable dataset: a Noetherian ring in which the
//! principal ideal generated by `r` is not a w-ideal, together with the
//! membership and colon assertions checked against it.

use std::sync::Arc;

use crate::groebner::{extend_ideal, ideal_quotient, ideal_sum, IdealGB};
use crate::poly::{MonOrder, Poly, RingSpec};
use crate::wcert::{
    w_failure_certificate, CertError, CertificateDoc, Derivation, DocBuilder, FactKind, QuotRing,
    WFailureCert, DEFINING_NAME,
};

pub const VARS: [&str; 7] = ["x1", "x2", "r", "a", "b", "c", "d"];

pub const I_GENS: [&str; 7] = [
    "c*r - x1*a",
    "x2*c - d - x1*b",
    "d*r",
    "x2*a - b*r",
    "c*a - x1*r",
    "r^2 - a^2",
    "x2*r - a*b",
];

/// Members of `I`.
pub const A_POLYS: [(&str, &str); 8] = [
    ("A1", "x1*r - a*c"),
    ("A2", "x2*r - a*b"),
    ("A3", "r^2 - a^2"),
    ("A4", "x1*a - r*c"),
    ("A5", "x2*a - r*b"),
    ("A6", "x1*b - x2*c + d"),
    ("A7", "r*d"),
    ("A8", "a*d"),
];

/// Members of `K = (x1) + I`.
pub const B_POLYS: [(&str, &str); 9] = [
    ("B1", "x2*r - a*b"),
    ("B2", "r^2 - a^2"),
    ("B3", "x2*a - r*b"),
    ("B4", "x2*c - d"),
    ("B5", "r*c"),
    ("B6", "a*c"),
    ("B7", "r*d"),
    ("B8", "a*d"),
    ("B9", "x1"),
];

/// Added to the generator selected by `--mutate-gen`.
pub const MUTATION_TERM: &str = "x1*x2";

pub const PRINCIPAL: &str = "r";
pub const GV_GENS: [&str; 2] = ["x1", "x2"];
pub const WITNESS: &str = "c";

/// Names accepted by [`Example26::ideal_named`].
pub const IDEAL_NAMES: [&str; 5] = ["I", "J", "K", "L", "T"];

#[derive(Debug, Clone)]
pub struct Example26 {
    pub ring: Arc<RingSpec>,
    pub i: IdealGB,
    /// `(x1, x2) + I`
    pub j: IdealGB,
    /// `(x1) + I`
    pub k: IdealGB,
    /// `(x2) + I`
    pub l: IdealGB,
    /// `(r) + I`
    pub t: IdealGB,
    pub quot: QuotRing,
    /// 1-based index of the generator perturbed by [`MUTATION_TERM`].
    pub mutated: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assertion {
    pub name: String,
    pub statement: String,
    pub expected: bool,
    pub actual: bool,
}

impl Assertion {
    pub fn pass(&self) -> bool {
        self.expected == self.actual
    }
}

#[derive(Debug, Clone)]
pub struct Example26Run {
    /// A1-A8, B1-B9, S1-S4 in order.
    pub assertions: Vec<Assertion>,
    /// The three conjunctions `A1 and ... and A8`, `B1 and ... and B9`,
    /// `S1 and ... and S4`.
    pub conjunctions: Vec<Assertion>,
    /// Every ideal and fact behind the assertions.
    pub document: CertificateDoc,
    pub certificate: Result<WFailureCert, CertError>,
    pub colon_i_k: IdealGB,
    pub colon_k_l: IdealGB,
}

impl Example26Run {
    pub fn all_pass(&self) -> bool {
        self.assertions
            .iter()
            .chain(&self.conjunctions)
            .all(Assertion::pass)
            && self.certificate.is_ok()
    }
}

impl Example26 {
    /// # Panics
    /// If `mutate` is out of range; see [`Example26::try_build`].
    pub fn build(order: MonOrder, mutate: Option<usize>) -> Example26 {
        Example26::try_build(order, mutate).expect("valid mutation index")
    }

    pub fn try_build(order: MonOrder, mutate: Option<usize>) -> Result<Example26, String> {
        if let Some(m) = mutate {
            if m == 0 || m > I_GENS.len() {
                return Err(format!("generator index {m} outside 1..={}", I_GENS.len()));
            }
        }
        let ring = RingSpec::new(&VARS, order).expect("fixed variable names");
        let p = |s: &str| Poly::parse(s, &ring).expect("fixed polynomial");
        let extra = p(MUTATION_TERM);
        let gens: Vec<Poly> = I_GENS
            .iter()
            .enumerate()
            .map(|(n, g)| {
                let g = p(g);
                if mutate == Some(n + 1) {
                    &g + &extra
                } else {
                    g
                }
            })
            .collect();
        let i = IdealGB::new(&ring, gens);
        let j = extend_ideal(&i, &[p("x1"), p("x2")]);
        let k = extend_ideal(&i, &[p("x1")]);
        let l = extend_ideal(&i, &[p("x2")]);
        let t = extend_ideal(&i, &[p(PRINCIPAL)]);
        Ok(Example26 {
            quot: QuotRing::new(i.clone()),
            ring,
            i,
            j,
            k,
            l,
            t,
            mutated: mutate,
        })
    }

    pub fn poly(&self, s: &str) -> Poly {
        Poly::parse(s, &self.ring).expect("polynomial over the example ring")
    }

    pub fn ideal_named(&self, name: &str) -> Option<&IdealGB> {
        match name {
            "I" => Some(&self.i),
            "J" => Some(&self.j),
            "K" => Some(&self.k),
            "L" => Some(&self.l),
            "T" => Some(&self.t),
            _ => None,
        }
    }

    pub fn run(&self) -> Example26Run {
        let mut b = DocBuilder::new(&self.ring);
        b.ideal(DEFINING_NAME, &self.i, Derivation::Given);
        for (name, ideal, polys) in [
            ("J", &self.j, vec!["x1", "x2"]),
            ("K", &self.k, vec!["x1"]),
            ("L", &self.l, vec!["x2"]),
            ("T", &self.t, vec![PRINCIPAL]),
        ] {
            b.ideal(
                name,
                ideal,
                Derivation::Extend {
                    base: DEFINING_NAME.into(),
                    polys: polys.into_iter().map(String::from).collect(),
                },
            );
        }
        let colon = |b: &mut DocBuilder, base: &str, by: &str, ideal: &IdealGB, by_ideal: &IdealGB| {
            b.ideal(
                &format!("({base} : {by})"),
                ideal,
                Derivation::Colon {
                    base: base.into(),
                    polys: by_ideal.basis_strings(),
                },
            )
        };
        let colon_i_k = ideal_quotient(&self.i, &self.k);
        let colon_k_l = ideal_quotient(&self.k, &self.l);
        let colon_k_j = ideal_quotient(&self.k, &self.j);
        let colon_i_t = ideal_quotient(&self.i, &self.t);
        let ik = colon(&mut b, "I", "K", &colon_i_k, &self.k);
        colon(&mut b, "K", "L", &colon_k_l, &self.l);
        let kj = colon(&mut b, "K", "J", &colon_k_j, &self.j);
        let it = colon(&mut b, "I", "T", &colon_i_t, &self.t);
        let sum_name = format!("{it} + K");
        b.ideal(
            &sum_name,
            &ideal_sum(&colon_i_t, &self.k),
            Derivation::Sum {
                parts: vec![it.clone(), "K".into()],
            },
        );

        let mut assertions = Vec::new();
        let mut check = |b: &mut DocBuilder, name: &str, kind: FactKind, lhs: &str, rhs: &str| {
            let actual = b.fact_labeled(name, kind, lhs, rhs);
            let statement = match kind {
                FactKind::Member => format!("{lhs} in {rhs}"),
                FactKind::NotMember => format!("{lhs} notin {rhs}"),
                FactKind::IdealEqual => format!("{lhs} eq {rhs}"),
            };
            assertions.push(Assertion {
                name: name.into(),
                statement,
                expected: true,
                actual,
            });
        };
        for (name, f) in A_POLYS {
            check(&mut b, name, FactKind::Member, &self.poly(f).to_string(), "I");
        }
        for (name, f) in B_POLYS {
            check(&mut b, name, FactKind::Member, &self.poly(f).to_string(), "K");
        }
        check(&mut b, "S1", FactKind::IdealEqual, &ik, "I");
        check(&mut b, "S2", FactKind::IdealEqual, &kj, "K");
        check(&mut b, "S3", FactKind::NotMember, WITNESS, &sum_name);
        let x2c = self.poly("x2*c").to_string();
        check(&mut b, "S4", FactKind::Member, &x2c, &sum_name);

        let conj = |prefix: &str, n: usize| {
            let parts: Vec<&Assertion> = assertions.iter().filter(|a| a.name.starts_with(prefix)).collect();
            debug_assert_eq!(parts.len(), n);
            Assertion {
                name: format!("{prefix}1..{prefix}{n}"),
                statement: parts
                    .iter()
                    .map(|a| a.name.as_str())
                    .collect::<Vec<_>>()
                    .join(" and "),
                expected: true,
                actual: parts.iter().all(|a| a.actual),
            }
        };
        let conjunctions = vec![conj("A", 8), conj("B", 9), conj("S", 4)];

        let gv: Vec<Poly> = GV_GENS.iter().map(|g| self.poly(g)).collect();
        let certificate = w_failure_certificate(&self.quot, &self.poly(PRINCIPAL), &gv, &self.poly(WITNESS));
        Example26Run {
            assertions,
            conjunctions,
            document: b.finish(""),
            certificate,
            colon_i_k,
            colon_k_l,
        }
    }
}
