//! Run configuration, the content-addressed results cache, quotient
//! censuses and the acceptance report.

mod cache;
mod census;
mod config;
mod verify;

pub use cache::Cache;
pub use census::{
    census, divisors, render_table, write_census_csv, CensusRow, Method, RowVerdict, CENSUS_COLUMNS, FACTOR_CAP,
};
pub use config::{OutputFormat, RunConfig, CACHE_DIR_ENV};
pub use verify::{
    run_criterion, verify_paper, Check, CriterionResult, PaperReport, Status, CRITERIA, PROPERTY_CASES,
    REPORT_SCHEMA_VERSION,
};
