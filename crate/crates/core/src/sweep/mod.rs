//! Density sweeps, spectrum tables and their CSV output.

pub mod config;
pub mod run;

pub use config::{parse_config, parse_flag_list, ConfigOverrides, ModelKind, SweepConfig};
pub use run::{
    emit_csv, format_number, monotonicity_warnings, rates_at, run_density_sweep,
    run_spectrum_command, steady_state_at, write_csv, SpectrumTable, SweepRow, CSV_HEADER,
};
