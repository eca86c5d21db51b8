//! Report machinery and verification suites for the `nilherm` command-line
//! tool. The binary in `main.rs` only parses arguments; everything
//! observable lives here so the suites can be driven from tests.

pub mod anomaly;
pub mod checks;
pub mod config;
pub mod report;

pub use anomaly::{run_anomaly, InstantonChoice, ProfileChoice};
pub use checks::{run_checks, run_classify, wp_table, CHECK_IDS};
pub use config::{FamilyChoice, RunConfig};
pub use report::{CheckResult, Kind, Report, Residual, Status, SCHEMA_VERSION};
