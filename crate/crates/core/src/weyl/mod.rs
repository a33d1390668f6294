//! Root systems, subsystems, the complement group `C`, and the counting
//! polynomials for conjugates of maximal-rank subgroups.

mod counting;
mod roots;

pub use counting::{
    build_root_datum, complement_group, count_split, count_twisted, subsystem, Complement, Counting, CountingReport,
    RootDatum, SubsystemData, SubsystemSpec, TwistData, TwistSummary, TWIST_CONVENTION,
};
pub use roots::{CartanType, Family, RootSystem};
