//! Shared fixtures for the benchmarks.

use mplus_core::{ChainElement, CliffordModel};

pub fn model() -> CliffordModel {
    CliffordModel::build().expect("model builds")
}

pub fn alpha(m: &CliffordModel) -> ChainElement {
    m.build_alpha()
}
