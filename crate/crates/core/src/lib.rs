//! Block designs and exact satisfiability of regular linear CNF formulas.
//!
//! One 0/1 incidence matrix is read either as a monotone CNF formula (rows are
//! clauses, columns variables) or as a block design (rows are points, columns
//! blocks). Under that reading an XSAT solution of the formula is exactly a
//! parallel class of the design, and a partition of all variables into
//! disjoint XSAT solutions is a resolution.
//!
//! ```
//! use xsat_design::{generators, solver, FormulaView, SearchConfig};
//!
//! let f = FormulaView::new(generators::catalog("ag2_3").unwrap());
//! let (solutions, _) = solver::enumerate_xsat(&f, &SearchConfig::default());
//! assert_eq!(solutions.len(), 4);
//! ```

pub mod correspondence;
pub mod error;
pub mod generators;
pub mod io;
pub mod params;
pub mod solver;
pub mod structure;

pub use correspondence::{classify, StructureClass};
pub use error::{Error, Result};
pub use params::{AdmissibilityReport, DesignParams};
pub use solver::{SearchConfig, SearchStats};
pub use structure::{DesignView, FormulaView, IncidenceStructure, Simplicity};
