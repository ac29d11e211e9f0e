//! Pareto optimal matchings in many-to-many allocation markets with ties.

pub mod coalition;
pub mod envy;
pub mod fixtures;
pub mod format;
pub mod gsdt;
pub mod generate;
pub mod instance;
pub mod matching;
pub mod oracle;

pub use coalition::{satisfy_coalition, CoalitionKind, Element, ImprovingCoalition};
pub use format::{parse_instance, parse_matching, parse_ordering, write_instance, write_matching, write_ordering};
pub use generate::{generate_random_instance, GeneratorParams};
pub use instance::{ApplicantId, CourseId, Instance, InstanceBuilder, InstanceError, PreferenceList, PriorityOrdering};
pub use matching::{compare_sets, is_feasible, pareto_dominates, CharacteristicVector, Matching, SetPreference};
pub use envy::{build_envy_graph, find_negative_cycle, is_pareto_optimal, ParetoVerdict};
pub use gsdt::{derive_ordering, run_gsdt, GsdtPolicy, GsdtTrace};
