//! Course Allocation instances: applicants with quotas and tied preference
//! lists over courses, courses with quotas, and priority orderings.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Index of an applicant within its [`Instance`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ApplicantId(pub u32);

/// Index of a course within its [`Instance`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CourseId(pub u32);

impl ApplicantId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl CourseId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Ordered indifference classes. Ties are nonempty and pairwise disjoint;
/// courses inside a tie are kept sorted by id.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PreferenceList {
    ties: Vec<Vec<CourseId>>,
}

impl PreferenceList {
    /// Builds a list from ties, most preferred first. Empty ties are dropped
    /// and each tie is sorted; disjointness is checked by [`Instance`]
    /// validation.
    pub fn new(ties: Vec<Vec<CourseId>>) -> Self {
        let ties = ties
            .into_iter()
            .filter(|t| !t.is_empty())
            .map(|mut t| {
                t.sort_unstable();
                t
            })
            .collect();
        PreferenceList { ties }
    }

    pub fn ties(&self) -> &[Vec<CourseId>] {
        &self.ties
    }

    pub fn tie_count(&self) -> usize {
        self.ties.len()
    }

    /// Number of acceptable courses.
    pub fn len(&self) -> usize {
        self.ties.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.ties.is_empty()
    }

    pub fn courses(&self) -> impl Iterator<Item = CourseId> + '_ {
        self.ties.iter().flatten().copied()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Applicant {
    pub name: String,
    pub quota: u32,
    pub prefs: PreferenceList,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Course {
    pub name: String,
    pub quota: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("duplicate applicant id `{0}`")]
    DuplicateApplicant(String),
    #[error("duplicate course id `{0}`")]
    DuplicateCourse(String),
    #[error("applicant `{applicant}` lists unknown course `{course}`")]
    UnknownCourse { applicant: String, course: String },
    #[error("{kind} `{name}` has quota 0; quotas must be positive")]
    ZeroQuota { kind: &'static str, name: String },
    #[error("applicant `{applicant}` lists course `{course}` more than once")]
    DuplicateCourseInPrefs { applicant: String, course: String },
    #[error("applicant `{applicant}` has an empty tie")]
    EmptyTie { applicant: String },
    #[error("id `{0}` is not a valid token")]
    BadId(String),
}

/// An instance `(A, C, P, b, q)` of the Course Allocation problem.
///
/// Immutable once built. Besides the raw data it caches, per applicant, the
/// tie index of every course (`None` when unacceptable).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    applicants: Vec<Applicant>,
    courses: Vec<Course>,
    rank: Vec<Vec<Option<u32>>>,
}

impl Instance {
    /// Validates and assembles an instance.
    pub fn new(courses: Vec<Course>, applicants: Vec<Applicant>) -> Result<Self, InstanceError> {
        let mut seen = HashMap::new();
        for c in &courses {
            check_token(&c.name)?;
            if c.quota == 0 {
                return Err(InstanceError::ZeroQuota {
                    kind: "course",
                    name: c.name.clone(),
                });
            }
            if seen.insert(c.name.as_str(), ()).is_some() {
                return Err(InstanceError::DuplicateCourse(c.name.clone()));
            }
        }
        let mut seen = HashMap::new();
        for a in &applicants {
            check_token(&a.name)?;
            if a.quota == 0 {
                return Err(InstanceError::ZeroQuota {
                    kind: "applicant",
                    name: a.name.clone(),
                });
            }
            if seen.insert(a.name.as_str(), ()).is_some() {
                return Err(InstanceError::DuplicateApplicant(a.name.clone()));
            }
        }
        Self::assemble(courses, applicants)
    }

    fn assemble(courses: Vec<Course>, applicants: Vec<Applicant>) -> Result<Self, InstanceError> {
        let n2 = courses.len();
        let mut rank = Vec::with_capacity(applicants.len());
        for a in &applicants {
            let mut row = vec![None; n2];
            for (t, tie) in a.prefs.ties.iter().enumerate() {
                if tie.is_empty() {
                    return Err(InstanceError::EmptyTie {
                        applicant: a.name.clone(),
                    });
                }
                for &c in tie {
                    let slot = row.get_mut(c.index()).ok_or_else(|| InstanceError::UnknownCourse {
                        applicant: a.name.clone(),
                        course: format!("#{}", c.0),
                    })?;
                    if slot.is_some() {
                        return Err(InstanceError::DuplicateCourseInPrefs {
                            applicant: a.name.clone(),
                            course: courses[c.index()].name.clone(),
                        });
                    }
                    *slot = Some(t as u32);
                }
            }
            rank.push(row);
        }
        Ok(Instance {
            applicants,
            courses,
            rank,
        })
    }

    /// The instance with no applicants and no courses.
    pub fn empty() -> Self {
        Instance {
            applicants: Vec::new(),
            courses: Vec::new(),
            rank: Vec::new(),
        }
    }

    pub fn applicant_count(&self) -> usize {
        self.applicants.len()
    }

    pub fn course_count(&self) -> usize {
        self.courses.len()
    }

    pub fn applicants(&self) -> impl ExactSizeIterator<Item = ApplicantId> {
        (0..self.applicants.len() as u32).map(ApplicantId)
    }

    pub fn courses(&self) -> impl ExactSizeIterator<Item = CourseId> {
        (0..self.courses.len() as u32).map(CourseId)
    }

    pub fn applicant(&self, a: ApplicantId) -> &Applicant {
        &self.applicants[a.index()]
    }

    pub fn course(&self, c: CourseId) -> &Course {
        &self.courses[c.index()]
    }

    pub fn applicant_name(&self, a: ApplicantId) -> &str {
        &self.applicants[a.index()].name
    }

    pub fn course_name(&self, c: CourseId) -> &str {
        &self.courses[c.index()].name
    }

    pub fn applicant_quota(&self, a: ApplicantId) -> u32 {
        self.applicants[a.index()].quota
    }

    pub fn course_quota(&self, c: CourseId) -> u32 {
        self.courses[c.index()].quota
    }

    pub fn prefs(&self, a: ApplicantId) -> &PreferenceList {
        &self.applicants[a.index()].prefs
    }

    /// Zero-based tie index of `c` in `a`'s list, or `None` if unacceptable.
    pub fn tie_of(&self, a: ApplicantId, c: CourseId) -> Option<usize> {
        self.rank[a.index()][c.index()].map(|t| t as usize)
    }

    pub fn is_acceptable(&self, a: ApplicantId, c: CourseId) -> bool {
        self.rank[a.index()][c.index()].is_some()
    }

    pub fn find_applicant(&self, name: &str) -> Option<ApplicantId> {
        self.applicants
            .iter()
            .position(|a| a.name == name)
            .map(|i| ApplicantId(i as u32))
    }

    pub fn find_course(&self, name: &str) -> Option<CourseId> {
        self.courses
            .iter()
            .position(|c| c.name == name)
            .map(|i| CourseId(i as u32))
    }

    /// `B`, the sum of applicant quotas.
    pub fn total_applicant_quota(&self) -> u64 {
        self.applicants.iter().map(|a| a.quota as u64).sum()
    }

    /// `L`, the total length of all preference lists.
    pub fn profile_length(&self) -> usize {
        self.applicants.iter().map(|a| a.prefs.len()).sum()
    }

    pub fn total_tie_count(&self) -> usize {
        self.applicants.iter().map(|a| a.prefs.tie_count()).sum()
    }

    /// Same instance with applicant quotas replaced. Zero quotas are
    /// allowed here: the staged sub-instances of GSDT start from all zeros.
    pub fn with_applicant_quotas(&self, quotas: &[u32]) -> Instance {
        assert_eq!(quotas.len(), self.applicants.len());
        let mut out = self.clone();
        for (a, &b) in out.applicants.iter_mut().zip(quotas) {
            a.quota = b;
        }
        out
    }

    /// Same instance with one applicant's preference list replaced.
    pub fn with_preferences(
        &self,
        a: ApplicantId,
        prefs: PreferenceList,
    ) -> Result<Instance, InstanceError> {
        let mut applicants = self.applicants.clone();
        applicants[a.index()].prefs = prefs;
        Self::assemble(self.courses.clone(), applicants)
    }
}

fn check_token(s: &str) -> Result<(), InstanceError> {
    if s.is_empty() || s.chars().any(|ch| ch.is_whitespace() || "()=#".contains(ch)) {
        return Err(InstanceError::BadId(s.to_string()));
    }
    Ok(())
}

/// Name-based construction, mostly for tests and fixtures.
#[derive(Default)]
pub struct InstanceBuilder {
    courses: Vec<(String, u32)>,
    applicants: Vec<(String, u32, Vec<Vec<String>>)>,
}

impl InstanceBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn course(mut self, name: &str, quota: u32) -> Self {
        self.courses.push((name.to_string(), quota));
        self
    }

    pub fn applicant(mut self, name: &str, quota: u32, ties: &[&[&str]]) -> Self {
        let ties = ties
            .iter()
            .map(|t| t.iter().map(|s| s.to_string()).collect())
            .collect();
        self.applicants.push((name.to_string(), quota, ties));
        self
    }

    pub fn build(self) -> Result<Instance, InstanceError> {
        let courses: Vec<Course> = self
            .courses
            .into_iter()
            .map(|(name, quota)| Course { name, quota })
            .collect();
        let lookup: HashMap<&str, CourseId> = courses
            .iter()
            .enumerate()
            .map(|(i, c)| (c.name.as_str(), CourseId(i as u32)))
            .collect();
        let mut applicants = Vec::new();
        for (name, quota, ties) in self.applicants {
            let mut resolved = Vec::new();
            for tie in ties {
                if tie.is_empty() {
                    return Err(InstanceError::EmptyTie { applicant: name });
                }
                let mut ids = Vec::new();
                for c in tie {
                    match lookup.get(c.as_str()) {
                        Some(&id) => ids.push(id),
                        None => {
                            return Err(InstanceError::UnknownCourse {
                                applicant: name,
                                course: c,
                            })
                        }
                    }
                }
                resolved.push(ids);
            }
            applicants.push(Applicant {
                name,
                quota,
                prefs: PreferenceList::new(resolved),
            });
        }
        Instance::new(courses, applicants)
    }
}

/// A priority multisequence: each applicant `a` appears `b(a)` times.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PriorityOrdering(pub Vec<ApplicantId>);

impl PriorityOrdering {
    pub fn as_slice(&self) -> &[ApplicantId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True if all copies of every applicant are adjacent.
    pub fn is_consecutive(&self) -> bool {
        let mut finished = std::collections::HashSet::new();
        let mut prev: Option<ApplicantId> = None;
        for &a in &self.0 {
            if prev != Some(a) {
                if let Some(p) = prev {
                    finished.insert(p);
                }
                if finished.contains(&a) {
                    return false;
                }
            }
            prev = Some(a);
        }
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderingError {
    #[error("applicant `{name}` appears {found} time(s), needs {expected}")]
    Multiplicity {
        name: String,
        found: usize,
        expected: u32,
    },
    #[error("ordering refers to unknown applicant index {0}")]
    UnknownApplicant(u32),
}

/// Checks that every applicant occurs exactly `b(a)` times.
pub fn validate_ordering(instance: &Instance, ordering: &PriorityOrdering) -> Result<(), OrderingError> {
    let mut counts = vec![0usize; instance.applicant_count()];
    for &a in ordering.as_slice() {
        match counts.get_mut(a.index()) {
            Some(n) => *n += 1,
            None => return Err(OrderingError::UnknownApplicant(a.0)),
        }
    }
    for a in instance.applicants() {
        let expected = instance.applicant_quota(a);
        if counts[a.index()] != expected as usize {
            return Err(OrderingError::Multiplicity {
                name: instance.applicant_name(a).to_string(),
                found: counts[a.index()],
                expected,
            });
        }
    }
    Ok(())
}

impl fmt::Display for ApplicantId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "applicant#{}", self.0)
    }
}

impl fmt::Display for CourseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "course#{}", self.0)
    }
}
