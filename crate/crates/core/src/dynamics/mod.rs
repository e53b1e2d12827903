//! Master-equation generators, time evolution and steady states.

mod generator;
mod integrate;
mod steady;

pub use generator::{
    assemble, assemble_five_level, assemble_reduced, assemble_v_subsystem, Generator,
    GeneratorMatrix, Variant,
};
pub use integrate::{evolve, evolve_with_step_limit, IntegrationStats, Trajectory, MAX_STEPS};
pub use steady::{relaxation_gap, steady_state};
