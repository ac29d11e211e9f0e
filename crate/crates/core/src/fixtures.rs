//! Instances shipped in the repository's `fixtures/` directory.

use crate::format::parse_instance;
use crate::generate::{generate_random_instance, GeneratorParams};
use crate::instance::Instance;

pub const TABLE1: &str = include_str!("../../../fixtures/table1.inst");
pub const EXAMPLE1: &str = include_str!("../../../fixtures/example1.inst");
pub const IMPOSSIBILITY: [&str; 4] = [
    include_str!("../../../fixtures/impossibility_i1.inst"),
    include_str!("../../../fixtures/impossibility_i2.inst"),
    include_str!("../../../fixtures/impossibility_i3.inst"),
    include_str!("../../../fixtures/impossibility_i4.inst"),
];
pub const SINGLE_PAIR: &str = include_str!("../../../fixtures/single_pair.inst");

fn load(text: &str) -> Instance {
    parse_instance(text).expect("bundled fixture parses")
}

/// Three applicants with quotas (2,3,2) over courses with quotas (2,1,1).
pub fn table1() -> Instance {
    load(TABLE1)
}

/// Two applicants, two unit-quota courses; `a1` has quota 2 and ranks
/// `c2` over `c1`, `a2` accepts only `c1`.
pub fn example1() -> Instance {
    load(EXAMPLE1)
}

/// The four 2x2 instances used by the impossibility analysis, `index` in
/// `0..4`.
pub fn impossibility(index: usize) -> Instance {
    load(IMPOSSIBILITY[index])
}

pub fn single_pair() -> Instance {
    load(SINGLE_PAIR)
}

/// Every named fixture, with a label.
pub fn named() -> Vec<(&'static str, Instance)> {
    vec![
        ("table1", table1()),
        ("example1", example1()),
        ("impossibility_i1", impossibility(0)),
        ("impossibility_i2", impossibility(1)),
        ("impossibility_i3", impossibility(2)),
        ("impossibility_i4", impossibility(3)),
        ("single_pair", single_pair()),
        ("empty", Instance::empty()),
    ]
}

/// Number of instances in [`small_set`].
pub const SMALL_SET_SIZE: usize = 50;

/// Fifty instances with at most six stages: the named fixtures that fit,
/// then seeded random instances with up to three applicants and courses
/// and quotas up to two.
pub fn small_set() -> Vec<(String, Instance)> {
    let mut out: Vec<(String, Instance)> = named()
        .into_iter()
        .filter(|(_, inst)| inst.total_applicant_quota() <= 6)
        .map(|(name, inst)| (name.to_string(), inst))
        .collect();
    let mut seed = 0u64;
    while out.len() < SMALL_SET_SIZE {
        let params = GeneratorParams {
            applicants: 1 + (seed % 3) as usize,
            courses: 1 + (seed / 3 % 3) as usize,
            max_applicant_quota: 2,
            max_course_quota: 2,
            tie_density: 0.5,
        };
        let inst = generate_random_instance(params, seed);
        if inst.total_applicant_quota() <= 6 {
            out.push((format!("random_{seed}"), inst));
        }
        seed += 1;
    }
    out
}
