//! Checks that every Pareto optimal matching is an output of the
//! mechanism for some priority ordering.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::{enumerate_poms, matching_text, OracleError, PomCatalog};
use crate::format::write_ordering;
use crate::gsdt::{derive_ordering, run_gsdt, GsdtPolicy};
use crate::instance::{ApplicantId, Instance, PriorityOrdering};
use crate::matching::{profile_vectors, Matching};

/// Orderings are swept exhaustively only up to this many stages.
pub const SWEEP_MAX_STAGES: u64 = 8;

/// Every distinct ordering with `b(a)` copies of each applicant, in
/// lexicographic order of applicant ids.
pub fn all_orderings(instance: &Instance) -> Vec<PriorityOrdering> {
    let mut seq: Vec<ApplicantId> = instance
        .applicants()
        .flat_map(|a| std::iter::repeat_n(a, instance.applicant_quota(a) as usize))
        .collect();
    let mut out = vec![PriorityOrdering(seq.clone())];
    while next_permutation(&mut seq) {
        out.push(PriorityOrdering(seq.clone()));
    }
    out
}

/// Orderings in which each applicant's copies are adjacent: one per
/// permutation of the applicants.
pub fn consecutive_orderings(instance: &Instance) -> Vec<PriorityOrdering> {
    let mut perm: Vec<ApplicantId> = instance
        .applicants()
        .filter(|&a| instance.applicant_quota(a) > 0)
        .collect();
    let expand = |perm: &[ApplicantId]| {
        PriorityOrdering(
            perm.iter()
                .flat_map(|&a| std::iter::repeat_n(a, instance.applicant_quota(a) as usize))
                .collect(),
        )
    };
    let mut out = vec![expand(&perm)];
    while next_permutation(&mut perm) {
        out.push(expand(&perm));
    }
    out
}

/// Advances to the next lexicographic permutation; false after the last.
fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v.iter().rposition(|x| *x > v[i]).expect("pivot has a successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// How the canonical mechanism's output on the derived ordering relates to
/// the target.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CanonicalRelation {
    Equal,
    /// Different pairs, same per-tie counts for every applicant.
    Indifferent,
    Different,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachEntry {
    pub pom: Matching,
    pub ordering: PriorityOrdering,
    pub guided: Matching,
    pub canonical: Matching,
    pub canonical_relation: CanonicalRelation,
}

impl ReachEntry {
    pub fn reproduced(&self) -> bool {
        self.guided == self.pom
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub orderings: usize,
    /// Distinct canonical outputs, sorted.
    pub outputs: Vec<Matching>,
    /// Outputs missing from the catalog.
    pub non_poms: Vec<Matching>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachabilityReport {
    pub catalog: PomCatalog,
    pub entries: Vec<ReachEntry>,
    /// Present when the instance has at most [`SWEEP_MAX_STAGES`] stages.
    pub sweep: Option<SweepReport>,
}

impl ReachabilityReport {
    pub fn all_reproduced(&self) -> bool {
        self.entries.iter().all(ReachEntry::reproduced)
    }

    pub fn to_text(&self, instance: &Instance) -> String {
        let mut out = String::new();
        writeln!(out, "poms={} feasible={}", self.catalog.poms.len(), self.catalog.feasible_count).unwrap();
        for e in &self.entries {
            writeln!(
                out,
                "pom={} ordering={} guided={} canonical={:?}",
                matching_text(instance, &e.pom),
                write_ordering(instance, &e.ordering).trim_end(),
                if e.reproduced() { "reproduced" } else { "MISSED" },
                e.canonical_relation,
            )
            .unwrap();
        }
        match &self.sweep {
            Some(s) => {
                writeln!(
                    out,
                    "sweep orderings={} distinct_outputs={} non_pom_outputs={}",
                    s.orderings,
                    s.outputs.len(),
                    s.non_poms.len()
                )
                .unwrap();
                for m in &s.non_poms {
                    writeln!(out, "non_pom={}", matching_text(instance, m)).unwrap();
                }
            }
            None => writeln!(out, "sweep skipped (more than {SWEEP_MAX_STAGES} stages)").unwrap(),
        }
        out
    }

    pub fn to_csv(&self, instance: &Instance) -> String {
        let mut out = String::from("pom,ordering,guided_reproduced,canonical\n");
        for e in &self.entries {
            writeln!(
                out,
                "\"{}\",{},{},{:?}",
                matching_text(instance, &e.pom),
                write_ordering(instance, &e.ordering).trim_end(),
                e.reproduced(),
                e.canonical_relation
            )
            .unwrap();
        }
        out
    }
}

pub fn check_reachability(instance: &Instance, limit: u64) -> Result<ReachabilityReport, OracleError> {
    let catalog = enumerate_poms(instance, limit)?;
    let mut entries = Vec::new();
    for pom in &catalog.poms {
        let ordering = derive_ordering(instance, pom).expect("catalog entries are Pareto optimal");
        let (guided, _) = run_gsdt(instance, &ordering, &GsdtPolicy::GuidedToward(pom.clone()))
            .expect("derived orderings are valid");
        let (canonical, _) =
            run_gsdt(instance, &ordering, &GsdtPolicy::BreadthFirstCanonical).expect("derived orderings are valid");
        let canonical_relation = if canonical == *pom {
            CanonicalRelation::Equal
        } else if profile_vectors(instance, &canonical) == profile_vectors(instance, pom) {
            CanonicalRelation::Indifferent
        } else {
            CanonicalRelation::Different
        };
        entries.push(ReachEntry { pom: pom.clone(), ordering, guided, canonical, canonical_relation });
    }

    let sweep = (instance.total_applicant_quota() <= SWEEP_MAX_STAGES).then(|| {
        let orderings = all_orderings(instance);
        let mut outputs = BTreeSet::new();
        for o in &orderings {
            let (m, _) = run_gsdt(instance, o, &GsdtPolicy::BreadthFirstCanonical).expect("valid ordering");
            outputs.insert(m);
        }
        let non_poms = outputs.iter().filter(|m| !catalog.contains(m)).cloned().collect();
        SweepReport { orderings: orderings.len(), outputs: outputs.into_iter().collect(), non_poms }
    });

    Ok(ReachabilityReport { catalog, entries, sweep })
}
