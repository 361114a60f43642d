//! Data files, run configuration, and result export.

pub mod config;
mod data;
mod export;

pub use config::{load_config, reference, validate_config, ConfigError, RunConfig};
pub use data::{load_dataset, DataSpec, LoadError};
pub use export::{
    columns, export_hall_of_fame, load_expressions, sorted_members, write_listing, write_table,
    ExportError, ResumeError, HALL_OF_FAME_CSV, HALL_OF_FAME_TXT,
};
