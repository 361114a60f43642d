//! The generational loop: instantiation, Pareto and tournament selection,
//! and islands connected in a ring.

mod hall_of_fame;
mod individual;
mod island;
mod run;
mod selection;

pub use hall_of_fame::HallOfFame;
pub use individual::{instantiate_individual, Attribute, Individual, Rejection, UnknownAttribute};
pub use island::{migrate, Island, MigrationEvent};
pub use run::{run, run_with_observer, Progress, RunError, RunResult, StopReason};
pub use selection::{
    crowding_distance, dominates, non_dominated_sort, rank_and_crowding, select_next_generation,
    tournament_select, SelectionConfig,
};
