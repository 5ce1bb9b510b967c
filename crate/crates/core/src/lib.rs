//! η(G), the number of conjugacy classes of maximal cyclic subgroups, for
//! metacyclic p-groups in King's parametrization.
//!
//! Two independent routes are provided: closed-form case formulas
//! ([`formulas`]) and brute-force enumeration over explicit group
//! arithmetic ([`engine`], [`oracle`]). [`verify`] compares them over
//! parameter sweeps.

pub mod cli;
pub mod engine;
pub mod formulas;
pub mod oracle;
pub mod params;
pub mod verify;

pub use engine::{Element, FiniteGroupView};
pub use formulas::{eta_formula, CaseTag, EtaFormulaResult};
pub use params::{classify, validate, GroupParams, Sign};
