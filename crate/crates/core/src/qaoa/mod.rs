//! Ramp schedules, the alternating evolution and the overlap metric.

mod evolve;
mod overlap;
mod schedule;

pub use evolve::{continuous_limit, equivalent_time, qaoa_evolve, EvolveOptions, Evolver, QaoaRun};
pub use overlap::squared_overlap;
pub use schedule::{
    schedule_angles, AngleSequence, Schedule, ScheduleJson, ScheduleKind, Warp, DEFAULT_TANGENT_C,
};
