//! Brute-force ground truth for small instances: every feasible matching,
//! every Pareto optimal one, and exhaustive checks built on top of them.

mod impossibility;
mod misreport;
mod reachability;

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use thiserror::Error;

pub use impossibility::{verify_impossibility_scenario, Deviation, ImpossibilityReport};
pub use misreport::{
    count_misreports, find_beneficial_misreport, for_each_misreport, MisreportFinding, MisreportOutcome,
    MISREPORT_SPACE,
};
pub use reachability::{
    all_orderings, check_reachability, consecutive_orderings, CanonicalRelation, ReachEntry, ReachabilityReport,
    SweepReport, SWEEP_MAX_STAGES,
};

use crate::format::write_instance;
use crate::instance::{ApplicantId, CourseId, Instance};
use crate::matching::{profile_vectors, CharacteristicVector, Matching};

pub const DEFAULT_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("search space of {needed} candidates exceeds the limit of {limit}")]
    LimitExceeded { needed: u128, limit: u64 },
}

/// Subsets of `items` with at most `max` elements, smallest first.
fn bounded_subsets(items: &[CourseId], max: usize) -> Vec<Vec<CourseId>> {
    let mut out = vec![Vec::new()];
    for &c in items {
        let grown: Vec<Vec<CourseId>> = out
            .iter()
            .filter(|s| s.len() < max)
            .map(|s| {
                let mut s = s.clone();
                s.push(c);
                s
            })
            .collect();
        out.extend(grown);
    }
    out
}

/// Every feasible matching, in canonical order. Candidates are products of
/// per-applicant course subsets within quota; their number must not exceed
/// `limit`.
pub fn enumerate_feasible_matchings(instance: &Instance, limit: u64) -> Result<Vec<Matching>, OracleError> {
    let choices: Vec<Vec<Vec<CourseId>>> = instance
        .applicants()
        .map(|a| {
            let courses: Vec<CourseId> = instance.prefs(a).courses().collect();
            bounded_subsets(&courses, instance.applicant_quota(a) as usize)
        })
        .collect();
    let needed = choices
        .iter()
        .fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128));
    if needed > limit as u128 {
        return Err(OracleError::LimitExceeded { needed, limit });
    }

    let mut loads = vec![0u32; instance.course_count()];
    let mut current: Vec<(ApplicantId, CourseId)> = Vec::new();
    let mut out = Vec::new();
    extend(instance, &choices, 0, &mut loads, &mut current, &mut out);
    out.sort();
    Ok(out)
}

fn extend(
    instance: &Instance,
    choices: &[Vec<Vec<CourseId>>],
    i: usize,
    loads: &mut [u32],
    current: &mut Vec<(ApplicantId, CourseId)>,
    out: &mut Vec<Matching>,
) {
    if i == choices.len() {
        out.push(current.iter().copied().collect());
        return;
    }
    let a = ApplicantId(i as u32);
    'next: for subset in &choices[i] {
        for &c in subset {
            if loads[c.index()] >= instance.course_quota(c) {
                continue 'next;
            }
        }
        for &c in subset {
            loads[c.index()] += 1;
            current.push((a, c));
        }
        extend(instance, choices, i + 1, loads, current, out);
        for &c in subset {
            loads[c.index()] -= 1;
            current.pop();
        }
    }
}

/// All Pareto optimal matchings of an instance, found by pairwise
/// dominance over the feasible set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PomCatalog {
    /// Hash of the canonical instance text; stable within one build.
    pub fingerprint: u64,
    pub poms: Vec<Matching>,
    pub feasible_count: usize,
}

impl PomCatalog {
    pub fn contains(&self, m: &Matching) -> bool {
        self.poms.binary_search(m).is_ok()
    }
}

pub fn instance_fingerprint(instance: &Instance) -> u64 {
    let mut h = DefaultHasher::new();
    write_instance(instance).hash(&mut h);
    h.finish()
}

fn dominates(better: &[CharacteristicVector], base: &[CharacteristicVector]) -> bool {
    let mut strict = false;
    for (x, y) in better.iter().zip(base) {
        match x.cmp(y) {
            std::cmp::Ordering::Less => return false,
            std::cmp::Ordering::Greater => strict = true,
            std::cmp::Ordering::Equal => {}
        }
    }
    strict
}

/// Indices of the undominated entries among `feasible`.
pub fn undominated(instance: &Instance, feasible: &[Matching]) -> Vec<usize> {
    let profiles: Vec<Vec<CharacteristicVector>> = feasible.iter().map(|m| profile_vectors(instance, m)).collect();
    (0..feasible.len())
        .filter(|&i| !profiles.iter().any(|p| dominates(p, &profiles[i])))
        .collect()
}

pub fn enumerate_poms(instance: &Instance, limit: u64) -> Result<PomCatalog, OracleError> {
    let feasible = enumerate_feasible_matchings(instance, limit)?;
    let poms = undominated(instance, &feasible)
        .into_iter()
        .map(|i| feasible[i].clone())
        .collect();
    Ok(PomCatalog {
        fingerprint: instance_fingerprint(instance),
        poms,
        feasible_count: feasible.len(),
    })
}

/// Catalogs keyed by applicant quota vector, for checking the stage
/// instances of one run.
#[derive(Default)]
pub struct StageCatalogs {
    cache: std::collections::HashMap<Vec<u32>, PomCatalog>,
}

impl StageCatalogs {
    pub fn get(&mut self, instance: &Instance, quotas: &[u32], limit: u64) -> Result<&PomCatalog, OracleError> {
        if !self.cache.contains_key(quotas) {
            let stage = instance.with_applicant_quotas(quotas);
            let cat = enumerate_poms(&stage, limit)?;
            self.cache.insert(quotas.to_vec(), cat);
        }
        Ok(&self.cache[quotas])
    }
}

/// Comma-separated catalog: one row per pair of each POM.
pub fn catalog_csv(instance: &Instance, catalog: &PomCatalog) -> String {
    let mut out = String::from("pom,applicant,course\n");
    for (i, m) in catalog.poms.iter().enumerate() {
        if m.is_empty() {
            out.push_str(&format!("{},,\n", i + 1));
        }
        for (a, c) in m.pairs() {
            out.push_str(&format!("{},{},{}\n", i + 1, instance.applicant_name(a), instance.course_name(c)));
        }
    }
    out
}

/// `{a1 c2, a2 c1}` style rendering.
pub fn matching_text(instance: &Instance, m: &Matching) -> String {
    let pairs: Vec<String> = m
        .pairs()
        .map(|(a, c)| format!("{} {}", instance.applicant_name(a), instance.course_name(c)))
        .collect();
    format!("{{{}}}", pairs.join(", "))
}
