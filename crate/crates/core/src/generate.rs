//! Seeded random instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::instance::{Applicant, Course, CourseId, Instance, PreferenceList};

/// Parameters for [`generate_random_instance`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneratorParams {
    pub applicants: usize,
    pub courses: usize,
    pub max_applicant_quota: u32,
    pub max_course_quota: u32,
    /// Probability that the next course in a shuffled list joins the
    /// current tie instead of opening a new one.
    pub tie_density: f64,
}

/// Applicants are named `a1..`, courses `c1..`. Quotas are uniform in
/// `1..=max`. Each course is acceptable with probability 1/2; the
/// acceptable set is shuffled and cut into ties. Deterministic per seed.
pub fn generate_random_instance(params: GeneratorParams, seed: u64) -> Instance {
    assert!(params.max_applicant_quota >= 1 && params.max_course_quota >= 1);
    assert!((0.0..=1.0).contains(&params.tie_density));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let courses: Vec<Course> = (0..params.courses)
        .map(|j| Course {
            name: format!("c{}", j + 1),
            quota: rng.gen_range(1..=params.max_course_quota),
        })
        .collect();

    let mut applicants = Vec::with_capacity(params.applicants);
    for i in 0..params.applicants {
        let quota = rng.gen_range(1..=params.max_applicant_quota);
        let mut acceptable: Vec<CourseId> = (0..params.courses as u32)
            .map(CourseId)
            .filter(|_| rng.gen_bool(0.5))
            .collect();
        acceptable.shuffle(&mut rng);
        let mut ties: Vec<Vec<CourseId>> = Vec::new();
        for c in acceptable {
            match ties.last_mut() {
                Some(tie) if rng.gen_bool(params.tie_density) => tie.push(c),
                _ => ties.push(vec![c]),
            }
        }
        applicants.push(Applicant {
            name: format!("a{}", i + 1),
            quota,
            prefs: PreferenceList::new(ties),
        });
    }
    Instance::new(courses, applicants).expect("generator output is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::write_instance;

    fn params(n1: usize, n2: usize, density: f64) -> GeneratorParams {
        GeneratorParams {
            applicants: n1,
            courses: n2,
            max_applicant_quota: 2,
            max_course_quota: 2,
            tie_density: density,
        }
    }

    #[test]
    fn zero_density_gives_strict_lists() {
        let inst = generate_random_instance(params(3, 3, 0.0), 1);
        for a in inst.applicants() {
            assert!(inst.prefs(a).ties().iter().all(|t| t.len() == 1));
        }
    }

    #[test]
    fn no_applicants() {
        let inst = generate_random_instance(params(0, 5, 0.5), 99);
        assert_eq!(inst.applicant_count(), 0);
        assert_eq!(inst.course_count(), 5);
    }

    #[test]
    fn seed_is_deterministic() {
        let a = generate_random_instance(params(3, 3, 0.5), 7);
        let b = generate_random_instance(params(3, 3, 0.5), 7);
        assert_eq!(a, b);
    }

    #[test]
    fn golden_seed_7() {
        let inst = generate_random_instance(params(3, 3, 0.5), 7);
        assert_eq!(write_instance(&inst), GOLDEN_SEED_7);
    }

    const GOLDEN_SEED_7: &str = "courses: c1=1 c2=1 c3=1
applicant a1 quota=1 prefs:
applicant a2 quota=1 prefs: ( c1 c3 ) ( c2 )
applicant a3 quota=1 prefs:
";
}
