//! Verification harness: explicit constants, individual checks and the
//! seeded suites behind `biharm verify`.

pub mod checks;
pub mod constants;
pub mod report;
pub mod suites;

pub use checks::{
    check_cy, check_growth, check_growth_pointwise, check_interp1, check_interp2, check_lm1, check_main3,
    check_theorem1_region, uniqueness_experiment, CyVariant,
};
pub use constants::{assemble_constants, ConstantsTable};
pub use report::{reports_to_json, write_reports_csv, CheckReport, REPORT_SCHEMA};
pub use suites::{run_suite, Suite};
