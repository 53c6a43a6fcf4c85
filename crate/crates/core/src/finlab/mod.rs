//! Exhaustive laboratory for the w-operation on finite commutative rings:
//! GV-ideals by Hom counting, w-closures inside a module, annihilator
//! submodules, `M[p]`, and both sides of the Cohen-type characterization of
//! w-Artinian modules.
//!
//! Every ring and module has at most 64 elements, so subsets are `u64`
//! masks ([`Set`]).

pub mod lab;
pub mod module;
pub mod ring;
pub mod set;
pub mod wops;

pub use lab::{default_catalog, run_catalog, run_ring, LabReport, RingReport, Suite};
pub use module::FinModule;
pub use ring::{build_ring, FinError, FinRing, FinRingSpec, MAX_SIZE};
pub use set::Set;
pub use wops::{
    check_lemma_2_1, count_homs, is_gv_ideal, is_w_cofinitely_generated, m_bracket_p,
    theorem_2_5_consistency, GVSet,
};

use std::sync::Arc;

/// An ideal of a finite ring.
#[derive(Debug, Clone)]
pub struct FinIdeal {
    pub ring: Arc<FinRing>,
    pub members: Set,
}

impl FinIdeal {
    pub fn describe(&self) -> String {
        FinModule::regular_arc(&self.ring).describe(self.members)
    }
}

/// Every ideal of `ring`, ordered by size.
pub fn enumerate_ideals(ring: &Arc<FinRing>) -> Vec<FinIdeal> {
    FinModule::regular_arc(ring)
        .submodules()
        .into_iter()
        .map(|members| FinIdeal {
            ring: ring.clone(),
            members,
        })
        .collect()
}
