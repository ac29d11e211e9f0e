//! Serial dictatorship generalized to many-to-many markets with ties.
//!
//! Applicants are served one copy at a time in priority order. Each copy
//! raises its applicant's capacity by one and tries her ties from the
//! current active tie downward, looking for an augmenting path in the flow
//! network that routes one more unit through that tie.

mod network;
mod ordering;

use std::collections::VecDeque;
use std::fmt::Write as _;

pub use network::{node_name, AugmentingPath, FlowError, FlowNetwork, NetNode, Pairs};
pub use ordering::{derive_ordering, linearize, strongly_connected_components, DeriveError};

use crate::instance::{validate_ordering, ApplicantId, CourseId, Instance, OrderingError, PriorityOrdering};
use crate::matching::Matching;

/// How an augmenting path is picked when several exist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GsdtPolicy {
    /// Shortest path, least node-id sequence among the shortest.
    BreadthFirstCanonical,
    /// Prefer the direct path to the next course of the target matching
    /// assigned to the served applicant; otherwise fall back to the
    /// canonical search.
    GuidedToward(Matching),
}

/// One augmenting-path search during a stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Probe {
    /// 0-based stored tie index.
    pub tie: usize,
    pub path: Option<AugmentingPath>,
    pub arc_visits: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageRecord {
    /// 1-based.
    pub stage: usize,
    pub applicant: ApplicantId,
    pub probes: Vec<Probe>,
    pub added: Vec<(ApplicantId, CourseId)>,
    pub removed: Vec<(ApplicantId, CourseId)>,
    /// Active tie of the served applicant after the stage.
    pub curr_after: usize,
}

impl StageRecord {
    /// The pair gained by the served applicant, if the stage augmented.
    pub fn gained(&self) -> Option<(ApplicantId, CourseId)> {
        self.added.iter().copied().find(|&(a, _)| a == self.applicant)
    }

    pub fn augmented_tie(&self) -> Option<usize> {
        self.probes.iter().find(|p| p.path.is_some()).map(|p| p.tie)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GsdtStats {
    pub searches: usize,
    pub total_arc_visits: usize,
    pub max_arc_visits: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GsdtTrace {
    pub stages: Vec<StageRecord>,
    pub stats: GsdtStats,
}

impl GsdtTrace {
    /// Applicant capacities before the first stage and after each stage.
    pub fn capacity_evolution(&self, instance: &Instance) -> Vec<Vec<u32>> {
        let mut caps = vec![0u32; instance.applicant_count()];
        let mut out = vec![caps.clone()];
        for s in &self.stages {
            caps[s.applicant.index()] += 1;
            out.push(caps.clone());
        }
        out
    }

    /// The matching after each stage, starting from the empty matching.
    pub fn matchings(&self) -> Vec<Matching> {
        let mut m = Matching::new();
        let mut out = vec![m.clone()];
        for s in &self.stages {
            for &(a, c) in &s.removed {
                m.remove(a, c);
            }
            for &(a, c) in &s.added {
                m.insert(a, c);
            }
            out.push(m.clone());
        }
        out
    }

    /// Line-oriented rendering: one line per search (or one `tie=-` line
    /// for a stage with nothing left to try), then the capacity vectors.
    pub fn to_text(&self, instance: &Instance) -> String {
        let mut out = String::new();
        for s in &self.stages {
            let who = instance.applicant_name(s.applicant);
            if s.probes.is_empty() {
                writeln!(out, "stage={} applicant={} tie=- path=FAIL added=none", s.stage, who).unwrap();
            }
            for p in &s.probes {
                let path = p
                    .path
                    .as_ref()
                    .map_or_else(|| "FAIL".to_string(), |p| p.display(instance).to_string());
                let added = match (&p.path, s.gained()) {
                    (Some(_), Some((a, c))) => {
                        format!("{},{}", instance.applicant_name(a), instance.course_name(c))
                    }
                    _ => "none".to_string(),
                };
                writeln!(out, "stage={} applicant={} tie={} path={} added={}", s.stage, who, p.tie + 1, path, added)
                    .unwrap();
            }
        }
        let caps: Vec<String> = self
            .capacity_evolution(instance)
            .iter()
            .map(|v| format!("({})", v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        writeln!(out, "capacities={}", caps.join(" ")).unwrap();
        out
    }
}

/// Per-applicant queues of target courses for the guided policy.
struct Guide {
    queues: Vec<VecDeque<CourseId>>,
}

impl Guide {
    fn new(instance: &Instance, target: &Matching) -> Self {
        let mut queues = vec![VecDeque::new(); instance.applicant_count()];
        // The same linearization the ordering is derived from. For a target
        // that is not Pareto optimal fall back to best tie first.
        match linearize(instance, target) {
            Ok(order) => {
                for (a, c) in order {
                    queues[a.index()].push_back(c);
                }
            }
            Err(_) => {
                for a in instance.applicants() {
                    let mut cs: Vec<CourseId> = target
                        .courses_of(a)
                        .filter(|&c| instance.is_acceptable(a, c))
                        .collect();
                    cs.sort_by_key(|&c| (instance.tie_of(a, c), c));
                    queues[a.index()].extend(cs);
                }
            }
        }
        Guide { queues }
    }
}

/// Searches for an augmenting path through tie `tie` of `applicant`. The
/// capacities of her source and tie arcs must already have been raised.
pub fn find_augmenting_path(
    network: &FlowNetwork<'_>,
    applicant: ApplicantId,
    tie: usize,
    policy: &GsdtPolicy,
) -> (Option<AugmentingPath>, usize) {
    find_path(network, applicant, tie, policy, None)
}

fn find_path(
    network: &FlowNetwork<'_>,
    applicant: ApplicantId,
    tie: usize,
    policy: &GsdtPolicy,
    guide: Option<&Guide>,
) -> (Option<AugmentingPath>, usize) {
    if let GsdtPolicy::GuidedToward(target) = policy {
        let head = match guide {
            Some(g) => g.queues[applicant.index()].front().copied(),
            None => target
                .courses_of(applicant)
                .filter(|&c| !network.matching().contains(applicant, c))
                .find(|&c| network.instance().tie_of(applicant, c) == Some(tie)),
        };
        if let Some(c) = head {
            if let Some(p) = network.direct_path(applicant, tie, c) {
                return (Some(p), 4);
            }
        }
    }
    network.shortest_augmenting_path(applicant, tie)
}

/// Runs the mechanism over every stage of `ordering` and returns the final
/// matching with a per-stage trace.
pub fn run_gsdt(
    instance: &Instance,
    ordering: &PriorityOrdering,
    policy: &GsdtPolicy,
) -> Result<(Matching, GsdtTrace), OrderingError> {
    validate_ordering(instance, ordering)?;
    let mut net = FlowNetwork::new(instance);
    let mut curr = vec![0usize; instance.applicant_count()];
    let mut guide = match policy {
        GsdtPolicy::GuidedToward(target) => Some(Guide::new(instance, target)),
        GsdtPolicy::BreadthFirstCanonical => None,
    };
    let mut stages = Vec::with_capacity(ordering.len());
    let mut stats = GsdtStats::default();

    for (i, &a) in ordering.as_slice().iter().enumerate() {
        net.raise_source(a);
        let ties = instance.prefs(a).tie_count();
        let mut probes = Vec::new();
        let mut found = None;
        while found.is_none() && curr[a.index()] < ties {
            let t = curr[a.index()];
            net.raise_tie(a, t);
            let (path, visits) = find_path(&net, a, t, policy, guide.as_ref());
            stats.searches += 1;
            stats.total_arc_visits += visits;
            stats.max_arc_visits = stats.max_arc_visits.max(visits);
            probes.push(Probe { tie: t, path: path.clone(), arc_visits: visits });
            match path {
                Some(p) => found = Some(p),
                None => {
                    net.lower_tie(a, t);
                    curr[a.index()] += 1;
                }
            }
        }
        let (added, removed) = match &found {
            Some(p) => net.augment(p),
            None => (Vec::new(), Vec::new()),
        };
        if let (Some(g), Some(&(_, c))) = (guide.as_mut(), added.iter().find(|&&(x, _)| x == a)) {
            let q = &mut g.queues[a.index()];
            if q.front() == Some(&c) {
                q.pop_front();
            } else if let Some(pos) = q.iter().position(|&d| d == c) {
                q.remove(pos);
            }
        }
        stages.push(StageRecord {
            stage: i + 1,
            applicant: a,
            probes,
            added,
            removed,
            curr_after: curr[a.index()],
        });
    }
    Ok((net.matching().clone(), GsdtTrace { stages, stats }))
}
