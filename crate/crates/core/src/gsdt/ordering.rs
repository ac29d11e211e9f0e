//! Priority orderings under which the mechanism reproduces a given Pareto
//! optimal matching.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::envy::{is_pareto_optimal, ParetoVerdict};
use crate::instance::{ApplicantId, CourseId, Instance, PriorityOrdering};
use crate::matching::{compare_courses, Matching, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeriveError {
    #[error("matching is infeasible: {0}")]
    Infeasible(#[from] Violation),
    #[error("matching is not Pareto optimal")]
    NotParetoOptimal,
}

/// Strongly connected components of a digraph given as adjacency lists.
/// Returns the component index of each node; components are numbered in
/// the order Tarjan's algorithm closes them.
pub fn strongly_connected_components(adj: &[Vec<usize>]) -> Vec<usize> {
    const UNSEEN: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;
    // Explicit call stack of (node, next neighbour position).
    let mut calls: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        calls.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = calls.last_mut() {
            if let Some(&w) = adj[v].get(*pos) {
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    calls.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            calls.pop();
            if let Some(&(parent, _)) = calls.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("component members are on the stack");
                    on_stack[w] = false;
                    comp[w] = next_comp;
                    if w == v {
                        break;
                    }
                }
                next_comp += 1;
            }
        }
    }
    comp
}

/// Orders the pairs of a Pareto optimal matching so that every pair comes
/// after everything it envies or weakly covets.
///
/// Pairs are nodes; `ac -> a'c'` when `a != a'`, `c'` is not held by `a`
/// and `a` likes `c'` at least as much as `c`. Each applicant's pairs are
/// also chained from worse ties to better ones, so her better courses are
/// placed first. Components of the condensation are emitted sinks first,
/// smallest member pair first among available sinks; pairs inside one
/// component follow matching order.
pub fn linearize(instance: &Instance, pom: &Matching) -> Result<Vec<(ApplicantId, CourseId)>, DeriveError> {
    if let ParetoVerdict::Dominated { .. } = is_pareto_optimal(instance, pom)? {
        return Err(DeriveError::NotParetoOptimal);
    }
    let pairs: Vec<(ApplicantId, CourseId)> = pom.pairs().collect();
    let n = pairs.len();
    let mut adj = vec![Vec::new(); n];
    for (p, &(a, c)) in pairs.iter().enumerate() {
        for (q, &(a2, c2)) in pairs.iter().enumerate() {
            let arc = if a != a2 {
                !pom.contains(a, c2)
                    && instance.is_acceptable(a, c2)
                    && compare_courses(instance, a, c2, c) != std::cmp::Ordering::Less
            } else {
                compare_courses(instance, a, c2, c) == std::cmp::Ordering::Greater
            };
            if arc {
                adj[p].push(q);
            }
        }
    }

    let comp = strongly_connected_components(&adj);
    let comps = comp.iter().copied().max().map_or(0, |m| m + 1);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); comps];
    for (p, &k) in comp.iter().enumerate() {
        members[k].push(p);
    }
    let mut out_deg = vec![0usize; comps];
    let mut preds: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); comps];
    for (p, targets) in adj.iter().enumerate() {
        for &q in targets {
            let (kp, kq) = (comp[p], comp[q]);
            if kp != kq && preds[kq].insert(kp) {
                out_deg[kp] += 1;
            }
        }
    }

    // Available sinks keyed by their smallest pair id.
    let mut ready: BTreeSet<(usize, usize)> = (0..comps)
        .filter(|&k| out_deg[k] == 0)
        .map(|k| (members[k][0], k))
        .collect();
    let mut order = Vec::with_capacity(n);
    while let Some((_, k)) = ready.pop_first() {
        order.extend(members[k].iter().map(|&p| pairs[p]));
        for &j in &preds[k] {
            out_deg[j] -= 1;
            if out_deg[j] == 0 {
                ready.insert((members[j][0], j));
            }
        }
    }
    debug_assert_eq!(order.len(), n);
    Ok(order)
}

/// A priority ordering for which the guided mechanism returns `pom`: the
/// applicants of [`linearize`], followed by each applicant's remaining
/// copies in applicant order.
pub fn derive_ordering(instance: &Instance, pom: &Matching) -> Result<PriorityOrdering, DeriveError> {
    let order = linearize(instance, pom)?;
    let mut seq: Vec<ApplicantId> = order.iter().map(|&(a, _)| a).collect();
    for a in instance.applicants() {
        let used = pom.applicant_load(a) as u32;
        for _ in used..instance.applicant_quota(a) {
            seq.push(a);
        }
    }
    Ok(PriorityOrdering(seq))
}
