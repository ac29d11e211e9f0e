//! Mechanical check that no truthful deterministic selector of Pareto
//! optimal matchings can pick `{a1 c1, a2 c2}` on the first of the four
//! bundled 2x2 instances.

use std::fmt::Write as _;

use super::{enumerate_poms, matching_text, DEFAULT_LIMIT};
use crate::fixtures;
use crate::format::parse_matching;
use crate::instance::{ApplicantId, CourseId, Instance};
use crate::matching::{compare_sets, Matching, SetPreference};

/// Applicant `applicant` has the list of instance `truth` and reports the
/// list of instance `lie`; the selector picks `truthful_choice` and
/// `lying_choice` respectively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deviation {
    pub truth: usize,
    pub lie: usize,
    pub applicant: ApplicantId,
    pub truthful_choice: Matching,
    pub lying_choice: Matching,
    pub improves: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImpossibilityReport {
    pub instances: Vec<Instance>,
    /// The three named matchings, as used in every instance.
    pub named: [Matching; 3],
    pub poms: Vec<Vec<Matching>>,
    /// Catalogs equal {m1,m2,m3}, {m2,m3}, {m2,m3}, {m2,m3}.
    pub catalogs_as_expected: bool,
    /// The four deviations that rule out the alternatives.
    pub deviations: Vec<Deviation>,
    /// Choices left on instances 2, 3 and 4 once instance 1 is fixed to
    /// the first named matching and truthfulness is propagated.
    pub forced: Vec<Vec<Matching>>,
    /// Every selector (one POM per instance) with no profitable unilateral
    /// deviation.
    pub truthful_selectors: Vec<Vec<Matching>>,
}

impl ImpossibilityReport {
    /// True when no truthful selector picks the first named matching on the
    /// first instance.
    pub fn impossible(&self) -> bool {
        !self.truthful_selectors.iter().any(|s| s[0] == self.named[0])
    }

    fn name(&self, m: &Matching) -> String {
        match self.named.iter().position(|n| n == m) {
            Some(i) => format!("m{}", i + 1),
            None => matching_text(&self.instances[0], m),
        }
    }

    fn names(&self, ms: &[Matching]) -> String {
        let v: Vec<String> = ms.iter().map(|m| self.name(m)).collect();
        format!("{{{}}}", v.join(","))
    }

    pub fn to_text(&self) -> String {
        let inst = &self.instances[0];
        let mut out = String::new();
        for (i, m) in self.named.iter().enumerate() {
            writeln!(out, "m{} = {}", i + 1, matching_text(inst, m)).unwrap();
        }
        for (i, p) in self.poms.iter().enumerate() {
            writeln!(out, "I{} poms={}", i + 1, self.names(p)).unwrap();
        }
        for d in &self.deviations {
            writeln!(
                out,
                "deviation truth=I{} lie=I{} applicant={} truthful={} lying={} improves={}",
                d.truth + 1,
                d.lie + 1,
                inst.applicant_name(d.applicant),
                self.name(&d.truthful_choice),
                self.name(&d.lying_choice),
                d.improves
            )
            .unwrap();
        }
        for (k, f) in self.forced.iter().enumerate() {
            writeln!(out, "given I1=m1: I{} choices={}", k + 2, self.names(f)).unwrap();
        }
        writeln!(out, "truthful selectors={}", self.truthful_selectors.len()).unwrap();
        for s in &self.truthful_selectors {
            writeln!(out, "selector {}", self.names(s)).unwrap();
        }
        writeln!(
            out,
            "conclusion: {}",
            if self.impossible() {
                "no truthful selector returns m1 on I1, so none produces every POM"
            } else {
                "a truthful selector returning m1 on I1 exists"
            }
        )
        .unwrap();
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("truth,lie,applicant,truthful,lying,improves\n");
        for d in &self.deviations {
            writeln!(
                out,
                "I{},I{},{},{},{},{}",
                d.truth + 1,
                d.lie + 1,
                self.instances[0].applicant_name(d.applicant),
                self.name(&d.truthful_choice),
                self.name(&d.lying_choice),
                d.improves
            )
            .unwrap();
        }
        out
    }
}

/// The single applicant whose list differs between two instances.
fn unilateral(x: &Instance, y: &Instance) -> Option<ApplicantId> {
    let differ: Vec<ApplicantId> = x.applicants().filter(|&a| x.prefs(a) != y.prefs(a)).collect();
    (differ.len() == 1).then(|| differ[0])
}

/// Whether `a`, with the list of `truth`, gains by receiving `lying`
/// instead of `truthful`. Courses she does not accept count for nothing.
fn gains(truth: &Instance, a: ApplicantId, lying: &Matching, truthful: &Matching) -> bool {
    let got: Vec<CourseId> = lying.courses_of(a).filter(|&c| truth.is_acceptable(a, c)).collect();
    let had: Vec<CourseId> = truthful.courses_of(a).filter(|&c| truth.is_acceptable(a, c)).collect();
    compare_sets(truth, a, got, had).expect("filtered to acceptable courses") == SetPreference::Prefers
}

fn consistent(instances: &[Instance], i: usize, mi: &Matching, j: usize, mj: &Matching) -> bool {
    match unilateral(&instances[i], &instances[j]) {
        Some(a) => !gains(&instances[i], a, mj, mi) && !gains(&instances[j], a, mi, mj),
        None => true,
    }
}

pub fn verify_impossibility_scenario() -> ImpossibilityReport {
    let instances: Vec<Instance> = (0..4).map(fixtures::impossibility).collect();
    let i1 = &instances[0];
    let m = |text: &str| parse_matching(i1, text).expect("named matching");
    let named = [m("a1 c1\na2 c2\n"), m("a1 c1\na1 c2\n"), m("a1 c2\na2 c1\n")];
    let poms: Vec<Vec<Matching>> = instances
        .iter()
        .map(|inst| enumerate_poms(inst, DEFAULT_LIMIT).expect("2x2 instances are tiny").poms)
        .collect();

    let sorted = |v: &[&Matching]| {
        let mut v: Vec<Matching> = v.iter().map(|m| (*m).clone()).collect();
        v.sort();
        v
    };
    let [m1, m2, m3] = &named;
    let catalogs_as_expected = poms[0] == sorted(&[m1, m2, m3])
        && poms[1] == sorted(&[m2, m3])
        && poms[2] == sorted(&[m2, m3])
        && poms[3] == sorted(&[m2, m3]);

    let a1 = i1.find_applicant("a1").expect("a1");
    let a2 = i1.find_applicant("a2").expect("a2");
    let deviation = |truth: usize, lie: usize, applicant, truthful: &Matching, lying: &Matching| Deviation {
        truth,
        lie,
        applicant,
        truthful_choice: truthful.clone(),
        lying_choice: lying.clone(),
        improves: gains(&instances[truth], applicant, lying, truthful),
    };
    let deviations = vec![
        deviation(0, 1, a2, m1, m3),
        deviation(2, 1, a1, m3, m2),
        deviation(0, 3, a1, m1, m2),
        deviation(2, 3, a2, m2, m3),
    ];

    // Propagate from I1 = m1 along unilateral links: I2 against I1, I3
    // against the survivors on I2, I4 against I1 and the survivors on I3.
    let keep = |j: usize, against: &[(usize, Vec<Matching>)]| -> Vec<Matching> {
        poms[j]
            .iter()
            .filter(|mj| {
                against
                    .iter()
                    .all(|(i, opts)| opts.iter().any(|mi| consistent(&instances, *i, mi, j, mj)))
            })
            .cloned()
            .collect()
    };
    let on1 = vec![m1.clone()];
    let on2 = keep(1, &[(0, on1.clone())]);
    let on3 = keep(2, &[(1, on2.clone())]);
    let on4 = keep(3, &[(0, on1), (2, on3.clone())]);
    let forced = vec![on2, on3, on4];

    let mut truthful_selectors = Vec::new();
    for s0 in &poms[0] {
        for s1 in &poms[1] {
            for s2 in &poms[2] {
                for s3 in &poms[3] {
                    let s = [s0, s1, s2, s3];
                    let ok = (0..4).all(|i| (0..4).all(|j| i == j || consistent(&instances, i, s[i], j, s[j])));
                    if ok {
                        truthful_selectors.push(s.iter().map(|m| (*m).clone()).collect());
                    }
                }
            }
        }
    }

    ImpossibilityReport {
        instances,
        named,
        poms,
        catalogs_as_expected,
        deviations,
        forced,
        truthful_selectors,
    }
}
