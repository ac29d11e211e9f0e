//! Extended envy graph of a matching. A matching is Pareto optimal exactly
//! when this graph has no negative-cost cycle, and any such cycle unrolls
//! into an improving coalition.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::coalition::{check_sequence, satisfy_coalition, CoalitionError, DisplaySeq, Element, ImprovingCoalition};
use crate::instance::{ApplicantId, CourseId, Instance};
use crate::matching::{compare_courses, is_feasible, Matching, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EnvyNode {
    Applicant(ApplicantId),
    Course(CourseId),
    /// A matched pair `(a, c)`.
    Pair(ApplicantId, CourseId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnvyArc {
    pub from: usize,
    pub to: usize,
    /// 0 or -1.
    pub weight: i8,
}

/// Node ids: applicants first, then courses, then matched pairs in
/// matching order. Arcs are sorted by `(from, to)`.
#[derive(Clone, Debug)]
pub struct EnvyGraph {
    nodes: Vec<EnvyNode>,
    index: HashMap<EnvyNode, usize>,
    arcs: Vec<EnvyArc>,
}

impl EnvyGraph {
    pub fn nodes(&self) -> &[EnvyNode] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn arcs(&self) -> &[EnvyArc] {
        &self.arcs
    }

    pub fn node_id(&self, node: EnvyNode) -> Option<usize> {
        self.index.get(&node).copied()
    }

    pub fn arc_weight(&self, from: EnvyNode, to: EnvyNode) -> Option<i8> {
        let (f, t) = (self.node_id(from)?, self.node_id(to)?);
        self.arcs
            .binary_search_by(|arc| (arc.from, arc.to).cmp(&(f, t)))
            .ok()
            .map(|i| self.arcs[i].weight)
    }
}

pub fn build_envy_graph(instance: &Instance, matching: &Matching) -> Result<EnvyGraph, Violation> {
    is_feasible(instance, matching)?;
    let n1 = instance.applicant_count();
    let n2 = instance.course_count();

    let mut nodes: Vec<EnvyNode> = instance.applicants().map(EnvyNode::Applicant).collect();
    nodes.extend(instance.courses().map(EnvyNode::Course));
    nodes.extend(matching.pairs().map(|(a, c)| EnvyNode::Pair(a, c)));
    let index: HashMap<EnvyNode, usize> = nodes.iter().enumerate().map(|(i, n)| (*n, i)).collect();
    let pair_ids = n1 + n2..nodes.len();

    let loads = matching.course_loads(n2);
    let course_exposed = |c: CourseId| loads[c.index()] < instance.course_quota(c);
    let applicant_exposed = |a: ApplicantId| (matching.applicant_load(a) as u32) < instance.applicant_quota(a);
    let course_node = |c: CourseId| n1 + c.index();

    let mut arcs = Vec::new();
    for c in instance.courses().filter(|&c| course_exposed(c)) {
        for target in (0..n1).chain(pair_ids.clone()) {
            arcs.push(EnvyArc { from: course_node(c), to: target, weight: 0 });
        }
    }

    // Targets whose course is `c'`: the course node and every pair holding it.
    let targets_of = |c: CourseId| -> Vec<usize> {
        std::iter::once(course_node(c))
            .chain(matching.applicants_of(c).map(|a2| index[&EnvyNode::Pair(a2, c)]))
            .collect()
    };

    for a in instance.applicants().filter(|&a| applicant_exposed(a)) {
        for c in instance.prefs(a).courses().filter(|&c| !matching.contains(a, c)) {
            for t in targets_of(c) {
                arcs.push(EnvyArc { from: a.index(), to: t, weight: -1 });
            }
        }
    }

    for (a, c) in matching.pairs() {
        let from = index[&EnvyNode::Pair(a, c)];
        for c2 in instance.prefs(a).courses().filter(|&c2| !matching.contains(a, c2)) {
            let weight = match compare_courses(instance, a, c2, c) {
                std::cmp::Ordering::Less => continue,
                std::cmp::Ordering::Equal => 0,
                std::cmp::Ordering::Greater => -1,
            };
            for t in targets_of(c2) {
                arcs.push(EnvyArc { from, to: t, weight });
            }
        }
    }

    arcs.sort_by_key(|arc| (arc.from, arc.to));
    Ok(EnvyGraph { nodes, index, arcs })
}

/// A simple cycle of the envy graph with negative total weight, listed in
/// arc direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleWitness {
    pub nodes: Vec<EnvyNode>,
    pub weight: i64,
}

/// Label-correcting search seeded from a virtual source at distance 0 to
/// every node. Returns the first cycle recovered from the predecessor
/// arcs, or `None` when labels settle.
pub fn find_negative_cycle(graph: &EnvyGraph) -> Option<CycleWitness> {
    let n = graph.node_count();
    let mut dist = vec![0i64; n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    let mut last_updated = None;
    for _ in 0..n {
        last_updated = None;
        for arc in &graph.arcs {
            let d = dist[arc.from] + arc.weight as i64;
            if d < dist[arc.to] {
                dist[arc.to] = d;
                pred[arc.to] = Some(arc.from);
                last_updated = Some(arc.to);
            }
        }
        last_updated?;
    }
    let mut v = last_updated?;
    for _ in 0..n {
        v = pred[v].expect("updated nodes have predecessors");
    }
    let mut cycle = vec![v];
    let mut u = pred[v].expect("on cycle");
    while u != v {
        cycle.push(u);
        u = pred[u].expect("on cycle");
    }
    cycle.reverse();
    let weight = cycle_weight(graph, &cycle).expect("predecessor arcs exist");
    debug_assert!(weight < 0);
    Some(CycleWitness {
        nodes: cycle.iter().map(|&i| graph.nodes[i]).collect(),
        weight,
    })
}

fn cycle_weight(graph: &EnvyGraph, ids: &[usize]) -> Option<i64> {
    let mut total = 0i64;
    for (i, &f) in ids.iter().enumerate() {
        let t = ids[(i + 1) % ids.len()];
        total += graph.arc_weight(graph.nodes[f], graph.nodes[t])? as i64;
    }
    Some(total)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error("matching is infeasible: {0}")]
    Infeasible(#[from] Violation),
    #[error("witness is not a cycle of the envy graph")]
    NotACycle,
    #[error("witness cycle has non-negative weight")]
    NotNegative,
    #[error("witness cycle repeats a node")]
    NotSimple,
    #[error("sequence is not a pseudocoalition: {0}")]
    NotPseudocoalition(#[from] CoalitionError),
}

/// Repairs repeated elements of a pseudocoalition until it is a genuine
/// improving coalition. Each pass fixes the earliest position whose
/// element already occurred, and strictly shortens the sequence.
pub fn reduce_pseudocoalition(
    instance: &Instance,
    matching: &Matching,
    sequence: &[Element],
) -> Result<ImprovingCoalition, ExtractError> {
    check_sequence(instance, matching, sequence, true)?;
    let mut seq = sequence.to_vec();
    while let Some((x, y)) = first_repeat(&seq) {
        seq = repair(instance, &seq, x, y);
        debug_assert!(check_sequence(instance, matching, &seq, true).is_ok());
    }
    Ok(ImprovingCoalition::new(instance, matching, seq)?)
}

fn first_repeat(seq: &[Element]) -> Option<(usize, usize)> {
    let mut seen = HashMap::new();
    for (y, e) in seq.iter().enumerate() {
        if let Some(&x) = seen.get(e) {
            return Some((x, y));
        }
        seen.insert(*e, y);
    }
    None
}

fn course_at(seq: &[Element], i: usize) -> CourseId {
    match seq[i] {
        Element::Course(c) => c,
        Element::Applicant(_) => unreachable!("course position"),
    }
}

/// One repair step for a repeat at positions `x < y`.
fn repair(instance: &Instance, seq: &[Element], x: usize, y: usize) -> Vec<Element> {
    match seq[x] {
        Element::Course(_) => {
            if x > 0 {
                // Whoever moved into the first copy moves straight to the
                // second; the detour in between is dropped.
                [&seq[..x], &seq[y..]].concat()
            } else {
                // The head course comes round again: close a cycle there.
                seq[..y].to_vec()
            }
        }
        Element::Applicant(a) => {
            if x == 0 {
                // Head of an augmenting path: jump to her later target.
                return [&seq[..1], &seq[y + 1..]].concat();
            }
            // She takes `seq[x+1]` at x and gives up `seq[y-1]` at y.
            let gained = course_at(seq, x + 1);
            let released = course_at(seq, y - 1);
            if compare_courses(instance, a, gained, released) == std::cmp::Ordering::Greater {
                // Trade the course released later for the one gained
                // earlier, closing the loop in between.
                let mut out = vec![seq[y - 1]];
                out.extend_from_slice(&seq[x..y - 1]);
                out
            } else if y + 1 < seq.len() {
                [&seq[..=x], &seq[y + 1..]].concat()
            } else {
                // Last element of a cyclic sequence: her target wraps to
                // the head course.
                seq[..=x].to_vec()
            }
        }
    }
}

/// Unrolls a negative cycle of `build_envy_graph(instance, matching)` into
/// an improving coalition.
pub fn extract_improving_coalition(
    instance: &Instance,
    matching: &Matching,
    witness: &CycleWitness,
) -> Result<ImprovingCoalition, ExtractError> {
    let graph = build_envy_graph(instance, matching)?;
    let ids: Vec<usize> = witness
        .nodes
        .iter()
        .map(|n| graph.node_id(*n).ok_or(ExtractError::NotACycle))
        .collect::<Result<_, _>>()?;
    if ids.is_empty() {
        return Err(ExtractError::NotACycle);
    }
    let mut sorted = ids.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != ids.len() {
        return Err(ExtractError::NotSimple);
    }
    let weight = cycle_weight(&graph, &ids).ok_or(ExtractError::NotACycle)?;
    if weight >= 0 {
        return Err(ExtractError::NotNegative);
    }

    let k = &witness.nodes;
    let len = k.len();
    let w = |i: usize| graph.arc_weight(k[i % len], k[(i + 1) % len]).expect("checked above");
    let start = (0..len).find(|&i| w(i) < 0).expect("negative cycle has a -1 arc");
    let rotated: Vec<EnvyNode> = (0..len).map(|i| k[(start + i) % len]).collect();

    let mut seq = Vec::new();
    let push_pair = |seq: &mut Vec<Element>, n: EnvyNode| {
        if let EnvyNode::Pair(a, c) = n {
            seq.push(Element::Course(c));
            seq.push(Element::Applicant(a));
        }
    };
    match rotated.iter().position(|n| matches!(n, EnvyNode::Course(_))) {
        None => {
            for &n in &rotated {
                push_pair(&mut seq, n);
            }
        }
        Some(end) => {
            // The exposed course reaches the arc's source directly, so the
            // stretch from the -1 arc to the first course node is a cycle
            // too. Only pair nodes lie strictly between them.
            let EnvyNode::Course(last) = rotated[end] else { unreachable!() };
            match rotated[0] {
                EnvyNode::Applicant(a) => seq.push(Element::Applicant(a)),
                EnvyNode::Pair(a, c) => {
                    let full = matching.applicant_load(a) as u32 >= instance.applicant_quota(a);
                    if full {
                        seq.push(Element::Course(c));
                    }
                    seq.push(Element::Applicant(a));
                }
                EnvyNode::Course(_) => unreachable!("-1 arcs never leave courses"),
            }
            for &n in &rotated[1..end] {
                push_pair(&mut seq, n);
            }
            seq.push(Element::Course(last));
        }
    }
    reduce_pseudocoalition(instance, matching, &seq)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParetoVerdict {
    Optimal,
    Dominated {
        coalition: ImprovingCoalition,
        /// The input with the coalition satisfied.
        dominating: Matching,
    },
}

impl ParetoVerdict {
    pub fn is_optimal(&self) -> bool {
        matches!(self, ParetoVerdict::Optimal)
    }
}

pub fn is_pareto_optimal(instance: &Instance, matching: &Matching) -> Result<ParetoVerdict, Violation> {
    let graph = build_envy_graph(instance, matching)?;
    let Some(witness) = find_negative_cycle(&graph) else {
        return Ok(ParetoVerdict::Optimal);
    };
    let coalition = extract_improving_coalition(instance, matching, &witness)
        .expect("a negative cycle always yields an improving coalition");
    let dominating = satisfy_coalition(instance, matching, &coalition).expect("coalition was just validated");
    Ok(ParetoVerdict::Dominated { coalition, dominating })
}

impl CycleWitness {
    pub fn display<'a>(&'a self, instance: &'a Instance) -> impl fmt::Display + 'a {
        DisplayCycle { cycle: self, instance }
    }
}

struct DisplayCycle<'a> {
    cycle: &'a CycleWitness,
    instance: &'a Instance,
}

impl fmt::Display for DisplayCycle<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self
            .cycle
            .nodes
            .iter()
            .map(|n| match *n {
                EnvyNode::Applicant(a) => self.instance.applicant_name(a).to_string(),
                EnvyNode::Course(c) => self.instance.course_name(c).to_string(),
                EnvyNode::Pair(a, c) => {
                    format!("{}/{}", self.instance.applicant_name(a), self.instance.course_name(c))
                }
            })
            .collect();
        write!(f, "{} (weight {})", names.join(" -> "), self.cycle.weight)
    }
}

/// Formats a raw element sequence, for diagnostics on pseudocoalitions.
pub fn display_sequence<'a>(instance: &'a Instance, elements: &'a [Element]) -> impl fmt::Display + 'a {
    DisplaySeq { kind: None, elements, instance }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalition::CoalitionKind;
    use crate::fixtures;
    use crate::instance::InstanceBuilder;
    use crate::matching::pareto_dominates;

    fn m(inst: &Instance, pairs: &[(&str, &str)]) -> Matching {
        pairs
            .iter()
            .map(|(x, y)| (inst.find_applicant(x).unwrap(), inst.find_course(y).unwrap()))
            .collect()
    }
    fn ap(inst: &Instance, n: &str) -> ApplicantId {
        inst.find_applicant(n).unwrap()
    }
    fn co(inst: &Instance, n: &str) -> CourseId {
        inst.find_course(n).unwrap()
    }

    #[test]
    fn empty_matching_on_table1() {
        let t = fixtures::table1();
        let g = build_envy_graph(&t, &Matching::new()).unwrap();
        assert_eq!(g.node_count(), 6);
        // Every course reaches every applicant, every applicant reaches
        // each course on her list.
        let e1 = g.arcs().iter().filter(|a| a.weight == 0).count();
        let e2 = g.arcs().iter().filter(|a| a.weight == -1).count();
        assert_eq!(e1, 9);
        assert_eq!(e2, t.profile_length());
    }

    #[test]
    fn example1_full_matching_graph() {
        let ex = fixtures::example1();
        let mu2 = m(&ex, &[("a1", "c1"), ("a1", "c2")]);
        let g = build_envy_graph(&ex, &mu2).unwrap();
        assert_eq!(g.node_count(), 2 + 2 + 2);
        assert!(g.arcs().iter().all(|arc| !matches!(g.nodes()[arc.from], EnvyNode::Course(_))));
        assert!(g
            .arcs()
            .iter()
            .all(|arc| g.nodes()[arc.from] != EnvyNode::Applicant(ap(&ex, "a1"))));
        let a2 = EnvyNode::Applicant(ap(&ex, "a2"));
        assert_eq!(g.arc_weight(a2, EnvyNode::Pair(ap(&ex, "a1"), co(&ex, "c1"))), Some(-1));
        assert_eq!(g.arc_weight(a2, EnvyNode::Course(co(&ex, "c1"))), Some(-1));
        assert!(find_negative_cycle(&g).is_none());
    }

    #[test]
    fn single_pair_has_no_cycle() {
        let s = fixtures::single_pair();
        let mu: Matching = [(ApplicantId(0), CourseId(0))].into_iter().collect();
        let g = build_envy_graph(&s, &mu).unwrap();
        let pair = g.node_id(EnvyNode::Pair(ApplicantId(0), CourseId(0))).unwrap();
        assert!(g.arcs().iter().all(|a| a.from != pair));
        assert!(find_negative_cycle(&g).is_none());
    }

    #[test]
    fn verdicts_on_fixtures() {
        let ex = fixtures::example1();
        let mu1 = m(&ex, &[("a1", "c2"), ("a2", "c1")]);
        assert!(is_pareto_optimal(&ex, &mu1).unwrap().is_optimal());

        let dominated = m(&ex, &[("a2", "c1")]);
        match is_pareto_optimal(&ex, &dominated).unwrap() {
            ParetoVerdict::Dominated { dominating, .. } => {
                assert!(dominating.contains(ap(&ex, "a1"), co(&ex, "c2")));
                assert_eq!(pareto_dominates(&ex, &dominating, &dominated), Ok(true));
            }
            ParetoVerdict::Optimal => panic!("expected a dominating matching"),
        }

        let t = fixtures::table1();
        let mu = m(&t, &[("a1", "c3")]);
        let g = build_envy_graph(&t, &mu).unwrap();
        assert!(find_negative_cycle(&g).unwrap().weight < 0);

        assert!(is_pareto_optimal(&Instance::empty(), &Matching::new()).unwrap().is_optimal());
    }

    #[test]
    fn infeasible_input_is_rejected() {
        let t = fixtures::table1();
        let bad = m(&t, &[("a2", "c2"), ("a3", "c2")]);
        assert!(build_envy_graph(&t, &bad).is_err());
        assert!(is_pareto_optimal(&t, &bad).is_err());
    }

    #[test]
    fn reduction_base_case() {
        let ex = fixtures::example1();
        let mu = m(&ex, &[("a2", "c1")]);
        let seq = [Element::Applicant(ap(&ex, "a1")), Element::Course(co(&ex, "c2"))];
        let coal = reduce_pseudocoalition(&ex, &mu, &seq).unwrap();
        assert_eq!(coal.kind(), CoalitionKind::AugmentingPath);
        assert_eq!(coal.elements(), &seq);
    }

    /// Three applicants, three unit courses. a1 holds c1 and wants c2;
    /// a2 holds c2 and is indifferent over {c2, c3}; a3 holds c3 and is
    /// indifferent over {c3, c2}; c4 is exposed.
    fn repeat_instance() -> (Instance, Matching) {
        let inst = InstanceBuilder::new()
            .course("c1", 1)
            .course("c2", 1)
            .course("c3", 1)
            .course("c4", 1)
            .applicant("a1", 1, &[&["c2"], &["c1"]])
            .applicant("a2", 1, &[&["c2", "c3", "c4"]])
            .applicant("a3", 1, &[&["c3", "c2"]])
            .build()
            .unwrap();
        let mu = m(&inst, &[("a1", "c1"), ("a2", "c2"), ("a3", "c3")]);
        (inst, mu)
    }

    #[test]
    fn reduction_repeated_course() {
        let (inst, mu) = repeat_instance();
        let e = |n: &str| {
            if n.starts_with('a') {
                Element::Applicant(ap(&inst, n))
            } else {
                Element::Course(co(&inst, n))
            }
        };
        // c1 a1 c2 a2 c3 a3 c2 a2 c4: c2 and a2 come round twice.
        let seq: Vec<Element> = ["c1", "a1", "c2", "a2", "c3", "a3", "c2", "a2", "c4"]
            .iter()
            .map(|n| e(n))
            .collect();
        assert!(check_sequence(&inst, &mu, &seq, true).is_ok());
        assert!(check_sequence(&inst, &mu, &seq, false).is_err());
        let coal = reduce_pseudocoalition(&inst, &mu, &seq).unwrap();
        assert_eq!(coal.kind(), CoalitionKind::AlternatingPath);
        let expect: Vec<Element> = ["c1", "a1", "c2", "a2", "c4"].iter().map(|n| e(n)).collect();
        assert_eq!(coal.elements(), &expect[..]);
        let out = satisfy_coalition(&inst, &mu, &coal).unwrap();
        assert_eq!(pareto_dominates(&inst, &out, &mu), Ok(true));
    }

    #[test]
    fn reduction_closes_cycle_at_head_course() {
        let inst = InstanceBuilder::new()
            .course("c1", 1)
            .course("c2", 1)
            .course("c3", 1)
            .applicant("a1", 1, &[&["c2"], &["c1"]])
            .applicant("a2", 1, &[&["c1", "c2", "c3"]])
            .build()
            .unwrap();
        let mu = m(&inst, &[("a1", "c1"), ("a2", "c2")]);
        let seq = vec![
            Element::Course(co(&inst, "c1")),
            Element::Applicant(ap(&inst, "a1")),
            Element::Course(co(&inst, "c2")),
            Element::Applicant(ap(&inst, "a2")),
            Element::Course(co(&inst, "c1")),
            Element::Applicant(ap(&inst, "a1")),
            Element::Course(co(&inst, "c2")),
            Element::Applicant(ap(&inst, "a2")),
            Element::Course(co(&inst, "c3")),
        ];
        let coal = reduce_pseudocoalition(&inst, &mu, &seq).unwrap();
        assert_eq!(coal.kind(), CoalitionKind::Cyclic);
        assert_eq!(coal.size(), 2);
    }

    #[test]
    fn reduction_rejects_non_pseudocoalitions() {
        let ex = fixtures::example1();
        let seq = [Element::Applicant(ap(&ex, "a1")), Element::Course(co(&ex, "c2"))];
        let mu = m(&ex, &[("a1", "c2")]);
        assert!(reduce_pseudocoalition(&ex, &mu, &seq).is_err());
    }

    #[test]
    fn cyclic_extraction() {
        let inst = InstanceBuilder::new()
            .course("c1", 1)
            .course("c2", 1)
            .applicant("a1", 1, &[&["c2"], &["c1"]])
            .applicant("a2", 1, &[&["c1", "c2"]])
            .build()
            .unwrap();
        let mu = m(&inst, &[("a1", "c1"), ("a2", "c2")]);
        let witness = find_negative_cycle(&build_envy_graph(&inst, &mu).unwrap()).unwrap();
        assert!(witness.nodes.iter().all(|n| matches!(n, EnvyNode::Pair(..))));
        let coal = extract_improving_coalition(&inst, &mu, &witness).unwrap();
        assert_eq!(coal.kind(), CoalitionKind::Cyclic);
    }

    #[test]
    fn alternating_extraction() {
        // a1 is full with c2 and her second-tie c3 while c1 has room.
        let t = fixtures::table1();
        let mu = m(&t, &[("a1", "c2"), ("a1", "c3"), ("a2", "c1")]);
        let witness = find_negative_cycle(&build_envy_graph(&t, &mu).unwrap()).unwrap();
        let coal = extract_improving_coalition(&t, &mu, &witness).unwrap();
        let out = satisfy_coalition(&t, &mu, &coal).unwrap();
        assert_eq!(pareto_dominates(&t, &out, &mu), Ok(true));

        // Pin the alternating case with a hand-built cycle: a1/c3 -> c1 -> a1/c3.
        let w = CycleWitness {
            nodes: vec![EnvyNode::Pair(ap(&t, "a1"), co(&t, "c3")), EnvyNode::Course(co(&t, "c1"))],
            weight: -1,
        };
        let coal = extract_improving_coalition(&t, &mu, &w).unwrap();
        assert_eq!(coal.kind(), CoalitionKind::AlternatingPath);
    }

    #[test]
    fn augmenting_extraction() {
        let ex = fixtures::example1();
        let mu = m(&ex, &[("a2", "c1")]);
        let w = CycleWitness {
            nodes: vec![EnvyNode::Applicant(ap(&ex, "a1")), EnvyNode::Course(co(&ex, "c2"))],
            weight: -1,
        };
        let coal = extract_improving_coalition(&ex, &mu, &w).unwrap();
        assert_eq!(coal.kind(), CoalitionKind::AugmentingPath);
    }

    #[test]
    fn bogus_witnesses_are_rejected() {
        let ex = fixtures::example1();
        let mu = m(&ex, &[("a2", "c1")]);
        let a1 = EnvyNode::Applicant(ap(&ex, "a1"));
        let c1 = EnvyNode::Course(co(&ex, "c1"));
        let c2 = EnvyNode::Course(co(&ex, "c2"));
        let not_cycle = CycleWitness { nodes: vec![a1, c1], weight: -1 };
        assert_eq!(extract_improving_coalition(&ex, &mu, &not_cycle), Err(ExtractError::NotACycle));
        let repeat = CycleWitness { nodes: vec![a1, c2, a1, c2], weight: -2 };
        assert_eq!(extract_improving_coalition(&ex, &mu, &repeat), Err(ExtractError::NotSimple));
    }
}
