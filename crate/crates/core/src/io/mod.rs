//! Case files, presets and exported renderings.

pub mod case;
pub mod export;

pub use case::{parse_case, preset, standard_presets, CaseFile};
pub use export::{emit_dot, emit_table, AtlasDocument};
