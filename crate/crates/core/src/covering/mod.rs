//! Regular coverings from voltage assignments and the identities relating a
//! covering's zeta determinant, complexity and Kirchhoff index to the base graph.

pub mod group;
pub mod repr;
pub mod verify;
pub mod voltage;

pub use group::FiniteGroup;
pub use repr::{builtin_group, IrrepSet, Representation};
pub use verify::{
    twisted_matrix_exact, twisted_matrix_numeric, verify_cover, CoverContext, CoverOptions,
    CoverReport, FormulaValue, PathMode,
};
pub use voltage::{derived_graph, parse_voltage_file, resolve_voltages, VoltageAssignment, VoltageFile};
