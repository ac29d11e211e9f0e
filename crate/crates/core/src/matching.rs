//! Matchings, generalized characteristic vectors and lexicographic set
//! preferences.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use thiserror::Error;

use crate::instance::{ApplicantId, CourseId, Instance};

/// A set of applicant-course pairs, kept sorted by (applicant, course).
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matching {
    pairs: BTreeSet<(ApplicantId, CourseId)>,
}

impl Matching {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, a: ApplicantId, c: CourseId) -> bool {
        self.pairs.contains(&(a, c))
    }

    /// Returns false if the pair was already present.
    pub fn insert(&mut self, a: ApplicantId, c: CourseId) -> bool {
        self.pairs.insert((a, c))
    }

    pub fn remove(&mut self, a: ApplicantId, c: CourseId) -> bool {
        self.pairs.remove(&(a, c))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (ApplicantId, CourseId)> + '_ {
        self.pairs.iter().copied()
    }

    /// `μ(a)`, in course-id order.
    pub fn courses_of(&self, a: ApplicantId) -> impl Iterator<Item = CourseId> + '_ {
        self.pairs
            .range((a, CourseId(0))..=(a, CourseId(u32::MAX)))
            .map(|&(_, c)| c)
    }

    /// `μ(c)`.
    pub fn applicants_of(&self, c: CourseId) -> impl Iterator<Item = ApplicantId> + '_ {
        self.pairs.iter().filter(move |p| p.1 == c).map(|p| p.0)
    }

    pub fn applicant_load(&self, a: ApplicantId) -> usize {
        self.courses_of(a).count()
    }

    /// Per-course occupancy, indexed by course id.
    pub fn course_loads(&self, course_count: usize) -> Vec<u32> {
        let mut loads = vec![0u32; course_count];
        for &(_, c) in &self.pairs {
            loads[c.index()] += 1;
        }
        loads
    }
}

impl FromIterator<(ApplicantId, CourseId)> for Matching {
    fn from_iter<T: IntoIterator<Item = (ApplicantId, CourseId)>>(iter: T) -> Self {
        Matching {
            pairs: iter.into_iter().collect(),
        }
    }
}

/// The first broken matching constraint.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("pair refers to an applicant or course outside the instance")]
    OutOfRange,
    #[error("applicant `{applicant}` does not find course `{course}` acceptable")]
    Unacceptable { applicant: String, course: String },
    #[error("applicant `{applicant}` holds {held} courses, quota is {quota}")]
    ApplicantOverQuota {
        applicant: String,
        held: usize,
        quota: u32,
    },
    #[error("course `{course}` holds {held} applicants, quota is {quota}")]
    CourseOverQuota {
        course: String,
        held: usize,
        quota: u32,
    },
}

/// Checks individual rationality and both quota families.
pub fn is_feasible(instance: &Instance, matching: &Matching) -> Result<(), Violation> {
    let n1 = instance.applicant_count();
    let n2 = instance.course_count();
    let mut app_load = vec![0usize; n1];
    let mut course_load = vec![0usize; n2];
    for (a, c) in matching.pairs() {
        if a.index() >= n1 || c.index() >= n2 {
            return Err(Violation::OutOfRange);
        }
        if !instance.is_acceptable(a, c) {
            return Err(Violation::Unacceptable {
                applicant: instance.applicant_name(a).to_string(),
                course: instance.course_name(c).to_string(),
            });
        }
        app_load[a.index()] += 1;
        course_load[c.index()] += 1;
    }
    for a in instance.applicants() {
        let quota = instance.applicant_quota(a);
        if app_load[a.index()] > quota as usize {
            return Err(Violation::ApplicantOverQuota {
                applicant: instance.applicant_name(a).to_string(),
                held: app_load[a.index()],
                quota,
            });
        }
    }
    for c in instance.courses() {
        let quota = instance.course_quota(c);
        if course_load[c.index()] > quota as usize {
            return Err(Violation::CourseOverQuota {
                course: instance.course_name(c).to_string(),
                held: course_load[c.index()],
                quota,
            });
        }
    }
    Ok(())
}

/// `χ_a(S)`: entry `t` counts the courses of `S` in tie `t`. Compares
/// lexicographically, which is exactly the set preference of `a`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CharacteristicVector(pub Vec<u32>);

impl CharacteristicVector {
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("course `{course}` is not acceptable to applicant `{applicant}`")]
pub struct UnacceptableCourse {
    pub applicant: String,
    pub course: String,
}

pub fn characteristic_vector(
    instance: &Instance,
    a: ApplicantId,
    courses: impl IntoIterator<Item = CourseId>,
) -> Result<CharacteristicVector, UnacceptableCourse> {
    let mut counts = vec![0u32; instance.prefs(a).tie_count()];
    for c in courses {
        match instance.tie_of(a, c) {
            Some(t) => counts[t] += 1,
            None => {
                return Err(UnacceptableCourse {
                    applicant: instance.applicant_name(a).to_string(),
                    course: instance.course_name(c).to_string(),
                })
            }
        }
    }
    Ok(CharacteristicVector(counts))
}

/// Outcome of comparing two course sets from one applicant's viewpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetPreference {
    Prefers,
    Indifferent,
    Dispreferred,
}

impl From<Ordering> for SetPreference {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Greater => SetPreference::Prefers,
            Ordering::Equal => SetPreference::Indifferent,
            Ordering::Less => SetPreference::Dispreferred,
        }
    }
}

/// How `a` ranks `s` against `u`. Both must be subsets of `P(a)`.
pub fn compare_sets(
    instance: &Instance,
    a: ApplicantId,
    s: impl IntoIterator<Item = CourseId>,
    u: impl IntoIterator<Item = CourseId>,
) -> Result<SetPreference, UnacceptableCourse> {
    let xs = characteristic_vector(instance, a, s)?;
    let xu = characteristic_vector(instance, a, u)?;
    Ok(xs.cmp(&xu).into())
}

/// Course-level comparison: `Greater` when `a` strictly prefers `c` to `d`.
/// Both courses must be acceptable to `a`.
pub fn compare_courses(instance: &Instance, a: ApplicantId, c: CourseId, d: CourseId) -> Ordering {
    let tc = instance.tie_of(a, c).expect("course acceptable");
    let td = instance.tie_of(a, d).expect("course acceptable");
    td.cmp(&tc)
}

/// `χ_a(μ(a))` for every applicant.
pub fn profile_vectors(instance: &Instance, matching: &Matching) -> Vec<CharacteristicVector> {
    instance
        .applicants()
        .map(|a| {
            characteristic_vector(instance, a, matching.courses_of(a))
                .expect("matching is individually rational")
        })
        .collect()
}

/// True iff `better` Pareto dominates `base`.
pub fn pareto_dominates(instance: &Instance, better: &Matching, base: &Matching) -> Result<bool, Violation> {
    is_feasible(instance, better)?;
    is_feasible(instance, base)?;
    let mut strict = false;
    for a in instance.applicants() {
        let x = characteristic_vector(instance, a, better.courses_of(a)).expect("feasible");
        let y = characteristic_vector(instance, a, base.courses_of(a)).expect("feasible");
        match x.cmp(&y) {
            Ordering::Less => return Ok(false),
            Ordering::Greater => strict = true,
            Ordering::Equal => {}
        }
    }
    Ok(strict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn ids(inst: &Instance, names: &[&str]) -> Vec<CourseId> {
        names.iter().map(|n| inst.find_course(n).unwrap()).collect()
    }

    fn m(inst: &Instance, pairs: &[(&str, &str)]) -> Matching {
        pairs
            .iter()
            .map(|(a, c)| (inst.find_applicant(a).unwrap(), inst.find_course(c).unwrap()))
            .collect()
    }

    #[test]
    fn characteristic_vectors_on_table1() {
        let inst = fixtures::table1();
        let a1 = inst.find_applicant("a1").unwrap();
        let a2 = inst.find_applicant("a2").unwrap();
        let v = characteristic_vector(&inst, a1, ids(&inst, &["c1", "c2"])).unwrap();
        assert_eq!(v.0, vec![2, 0]);
        assert_eq!(characteristic_vector(&inst, a1, []).unwrap().0, vec![0, 0]);
        let v = characteristic_vector(&inst, a2, ids(&inst, &["c2", "c3"])).unwrap();
        assert_eq!(v.0, vec![1, 1]);
    }

    #[test]
    fn compare_sets_examples() {
        let inst = fixtures::table1();
        let a1 = inst.find_applicant("a1").unwrap();
        let s = ids(&inst, &["c1", "c2"]);
        let u = ids(&inst, &["c1", "c3"]);
        assert_eq!(compare_sets(&inst, a1, s.clone(), u.clone()), Ok(SetPreference::Prefers));
        assert_eq!(compare_sets(&inst, a1, u, s.clone()), Ok(SetPreference::Dispreferred));
        assert_eq!(compare_sets(&inst, a1, s.clone(), s), Ok(SetPreference::Indifferent));

        let ex = fixtures::example1();
        let a1 = ex.find_applicant("a1").unwrap();
        assert_eq!(
            compare_sets(&ex, a1, ids(&ex, &["c1", "c2"]), ids(&ex, &["c2"])),
            Ok(SetPreference::Prefers)
        );
    }

    #[test]
    fn comparing_unacceptable_course_is_an_error() {
        let ex = fixtures::example1();
        let a2 = ex.find_applicant("a2").unwrap();
        let err = compare_sets(&ex, a2, ids(&ex, &["c2"]), []).unwrap_err();
        assert_eq!(err.course, "c2");
    }

    #[test]
    fn feasibility_examples() {
        let inst = fixtures::table1();
        assert_eq!(is_feasible(&inst, &m(&inst, &[("a1", "c1"), ("a1", "c2"), ("a2", "c3")])), Ok(()));
        assert_eq!(
            is_feasible(&inst, &m(&inst, &[("a2", "c2"), ("a3", "c2")])),
            Err(Violation::CourseOverQuota {
                course: "c2".into(),
                held: 2,
                quota: 1
            })
        );
        assert_eq!(is_feasible(&inst, &Matching::new()), Ok(()));

        let ex = fixtures::example1();
        assert!(matches!(
            is_feasible(&ex, &m(&ex, &[("a2", "c2")])),
            Err(Violation::Unacceptable { .. })
        ));
        let over = fixtures::single_pair().with_applicant_quotas(&[0]);
        assert!(matches!(
            is_feasible(&over, &m(&over, &[("a1", "c1")])),
            Err(Violation::ApplicantOverQuota { .. })
        ));
    }

    #[test]
    fn dominance_examples() {
        let ex = fixtures::example1();
        let mu1 = m(&ex, &[("a1", "c2"), ("a2", "c1")]);
        let mu2 = m(&ex, &[("a1", "c1"), ("a1", "c2")]);
        assert_eq!(pareto_dominates(&ex, &mu2, &mu1), Ok(false));
        assert_eq!(pareto_dominates(&ex, &mu1, &mu2), Ok(false));
        assert_eq!(pareto_dominates(&ex, &mu1, &mu1), Ok(false));

        let inst = fixtures::table1();
        let better = m(&inst, &[("a1", "c1"), ("a1", "c2")]);
        let base = m(&inst, &[("a1", "c1")]);
        assert_eq!(pareto_dominates(&inst, &better, &base), Ok(true));
        assert_eq!(pareto_dominates(&inst, &base, &better), Ok(false));
    }

    #[test]
    fn courses_of_uses_range() {
        let inst = fixtures::table1();
        let mu = m(&inst, &[("a1", "c1"), ("a2", "c3"), ("a1", "c3"), ("a3", "c2")]);
        let a1 = inst.find_applicant("a1").unwrap();
        assert_eq!(mu.courses_of(a1).collect::<Vec<_>>(), ids(&inst, &["c1", "c3"]));
        assert_eq!(mu.course_loads(3), vec![1, 1, 2]);
    }
}
