//! Exhaustive search for profitable misreports under the canonical
//! mechanism.

use std::ops::ControlFlow;

use crate::gsdt::{run_gsdt, GsdtPolicy};
use crate::instance::{ApplicantId, CourseId, Instance, PreferenceList, PriorityOrdering};
use crate::matching::{compare_sets, Matching, SetPreference};

/// Header line for reports: what a misreport may be.
pub const MISREPORT_SPACE: &str =
    "misreports range over every ordered partition of every subset of the true acceptable set";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MisreportFinding {
    pub applicant: ApplicantId,
    pub true_list: PreferenceList,
    pub fabricated: PreferenceList,
    pub ordering: PriorityOrdering,
    pub truthful_outcome: Matching,
    pub lying_outcome: Matching,
    /// The lying outcome is strictly better for the applicant under her
    /// true preferences.
    pub improves: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MisreportOutcome {
    Found(Box<MisreportFinding>),
    /// Every misreport was tried; none helps.
    None { examined: u64 },
    /// The limit stopped the search before the space was exhausted.
    Inconclusive { examined: u64, space: u128 },
}

/// Number of ordered partitions over all subsets of `k` courses.
pub fn count_misreports(k: usize) -> u128 {
    // Ordered set partitions of a j-set (Fubini numbers).
    let mut binom = vec![vec![0u128; k + 1]; k + 1];
    for n in 0..=k {
        binom[n][0] = 1;
        for r in 1..=n {
            binom[n][r] = binom[n - 1][r - 1] + if r < n { binom[n - 1][r] } else { 0 };
        }
    }
    let mut fubini = vec![0u128; k + 1];
    fubini[0] = 1;
    for n in 1..=k {
        fubini[n] = (1..=n).map(|r| binom[n][r] * fubini[n - r]).sum();
    }
    (0..=k).map(|j| binom[k][j] * fubini[j]).sum()
}

/// Calls `f` on every list built from a subset of `courses`, cut into
/// ordered ties. Subsets are visited in bitmask order; within one, each
/// course in turn joins an existing tie or opens a new tie at some rank.
pub fn for_each_misreport<F>(courses: &[CourseId], mut f: F)
where
    F: FnMut(PreferenceList) -> ControlFlow<()>,
{
    assert!(courses.len() < 64, "too many acceptable courses to enumerate");
    for mask in 0u64..(1u64 << courses.len()) {
        let subset: Vec<CourseId> = (0..courses.len())
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| courses[i])
            .collect();
        let mut blocks: Vec<Vec<CourseId>> = Vec::new();
        if place(&subset, &mut blocks, &mut f).is_break() {
            return;
        }
    }
}

fn place<F>(rest: &[CourseId], blocks: &mut Vec<Vec<CourseId>>, f: &mut F) -> ControlFlow<()>
where
    F: FnMut(PreferenceList) -> ControlFlow<()>,
{
    let Some((&c, rest)) = rest.split_first() else {
        return f(PreferenceList::new(blocks.clone()));
    };
    for i in 0..blocks.len() {
        blocks[i].push(c);
        let flow = place(rest, blocks, f);
        blocks[i].pop();
        flow?;
    }
    for pos in 0..=blocks.len() {
        blocks.insert(pos, vec![c]);
        let flow = place(rest, blocks, f);
        blocks.remove(pos);
        flow?;
    }
    ControlFlow::Continue(())
}

/// Tries misreports of `applicant` in enumeration order and returns the
/// first whose canonical outcome she strictly prefers under her true list.
/// At most `limit` misreports are run.
pub fn find_beneficial_misreport(
    instance: &Instance,
    ordering: &PriorityOrdering,
    applicant: ApplicantId,
    limit: u64,
) -> Result<MisreportOutcome, crate::instance::OrderingError> {
    let policy = GsdtPolicy::BreadthFirstCanonical;
    let (truthful, _) = run_gsdt(instance, ordering, &policy)?;
    let truthful_set: Vec<CourseId> = truthful.courses_of(applicant).collect();
    let true_list = instance.prefs(applicant).clone();
    let courses: Vec<CourseId> = true_list.courses().collect();
    let space = count_misreports(courses.len());

    let mut examined = 0u64;
    let mut found = None;
    let mut capped = false;
    for_each_misreport(&courses, |lie| {
        if examined >= limit {
            capped = true;
            return ControlFlow::Break(());
        }
        examined += 1;
        let lying_instance = instance
            .with_preferences(applicant, lie.clone())
            .expect("misreports only use acceptable courses");
        let (outcome, _) = run_gsdt(&lying_instance, ordering, &policy).expect("ordering already validated");
        let got: Vec<CourseId> = outcome.courses_of(applicant).collect();
        let pref = compare_sets(instance, applicant, got, truthful_set.iter().copied())
            .expect("outcomes use acceptable courses only");
        if pref == SetPreference::Prefers {
            found = Some(MisreportFinding {
                applicant,
                true_list: true_list.clone(),
                fabricated: lie,
                ordering: ordering.clone(),
                truthful_outcome: truthful.clone(),
                lying_outcome: outcome,
                improves: true,
            });
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });

    Ok(match found {
        Some(f) => MisreportOutcome::Found(Box::new(f)),
        None if capped => MisreportOutcome::Inconclusive { examined, space },
        None => MisreportOutcome::None { examined },
    })
}
