//! The staged flow network: source, applicants, one node per nonempty tie
//! of each applicant, courses, sink.

use std::collections::VecDeque;
use std::fmt;

use crate::instance::{ApplicantId, CourseId, Instance};
use crate::matching::Matching;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NetNode {
    Source,
    Applicant(ApplicantId),
    /// Tie `t` (0-based, over stored ties) of an applicant.
    Tie(ApplicantId, usize),
    Course(CourseId),
    Sink,
}

/// An augmenting path from source to sink in the residual network.
/// Pairs added to or dropped from the matching by one augmentation.
pub type Pairs = Vec<(ApplicantId, CourseId)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentingPath {
    pub nodes: Vec<NetNode>,
}

impl AugmentingPath {
    pub fn display<'a>(&'a self, instance: &'a Instance) -> impl fmt::Display + 'a {
        DisplayPath { path: self, instance }
    }
}

struct DisplayPath<'a> {
    path: &'a AugmentingPath,
    instance: &'a Instance,
}

impl fmt::Display for DisplayPath<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.path.nodes.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", node_name(self.instance, *n))?;
        }
        Ok(())
    }
}

/// `src`, `snk`, applicant and course names, and `<applicant>/<tie>` with
/// a 1-based tie number.
pub fn node_name(instance: &Instance, node: NetNode) -> String {
    match node {
        NetNode::Source => "src".to_string(),
        NetNode::Sink => "snk".to_string(),
        NetNode::Applicant(a) => instance.applicant_name(a).to_string(),
        NetNode::Tie(a, t) => format!("{}/{}", instance.applicant_name(a), t + 1),
        NetNode::Course(c) => instance.course_name(c).to_string(),
    }
}

/// Flow network with variable capacities on source and tie arcs. The
/// flow on tie-to-course arcs is kept as the current matching.
#[derive(Clone, Debug)]
pub struct FlowNetwork<'a> {
    instance: &'a Instance,
    tie_offset: Vec<usize>,
    tie_total: usize,
    source_cap: Vec<u32>,
    source_flow: Vec<u32>,
    tie_cap: Vec<Vec<u32>>,
    tie_flow: Vec<Vec<u32>>,
    assigned: Matching,
    sink_flow: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlowError {
    OverCapacity(NetNode, NetNode),
    Conservation(NetNode),
}

impl<'a> FlowNetwork<'a> {
    pub fn new(instance: &'a Instance) -> Self {
        let mut tie_offset = Vec::with_capacity(instance.applicant_count());
        let mut total = 0;
        for a in instance.applicants() {
            tie_offset.push(total);
            total += instance.prefs(a).tie_count();
        }
        let ties = |a: ApplicantId| vec![0u32; instance.prefs(a).tie_count()];
        FlowNetwork {
            instance,
            tie_offset,
            tie_total: total,
            source_cap: vec![0; instance.applicant_count()],
            source_flow: vec![0; instance.applicant_count()],
            tie_cap: instance.applicants().map(ties).collect(),
            tie_flow: instance.applicants().map(ties).collect(),
            assigned: Matching::new(),
            sink_flow: vec![0; instance.course_count()],
        }
    }

    pub fn instance(&self) -> &'a Instance {
        self.instance
    }

    pub fn node_count(&self) -> usize {
        self.instance.applicant_count() + self.tie_total + self.instance.course_count() + 2
    }

    /// Source 0, applicants, tie nodes grouped by applicant, courses, sink.
    pub fn node_id(&self, node: NetNode) -> usize {
        let n1 = self.instance.applicant_count();
        match node {
            NetNode::Source => 0,
            NetNode::Applicant(a) => 1 + a.index(),
            NetNode::Tie(a, t) => 1 + n1 + self.tie_offset[a.index()] + t,
            NetNode::Course(c) => 1 + n1 + self.tie_total + c.index(),
            NetNode::Sink => 1 + n1 + self.tie_total + self.instance.course_count(),
        }
    }

    pub fn node(&self, id: usize) -> NetNode {
        let n1 = self.instance.applicant_count();
        let n2 = self.instance.course_count();
        if id == 0 {
            NetNode::Source
        } else if id <= n1 {
            NetNode::Applicant(ApplicantId((id - 1) as u32))
        } else if id <= n1 + self.tie_total {
            let k = id - 1 - n1;
            let a = self.tie_offset.partition_point(|&off| off <= k) - 1;
            NetNode::Tie(ApplicantId(a as u32), k - self.tie_offset[a])
        } else if id <= n1 + self.tie_total + n2 {
            NetNode::Course(CourseId((id - 1 - n1 - self.tie_total) as u32))
        } else {
            NetNode::Sink
        }
    }

    pub fn matching(&self) -> &Matching {
        &self.assigned
    }

    pub fn flow_value(&self) -> u32 {
        self.source_flow.iter().sum()
    }

    pub fn source_capacity(&self, a: ApplicantId) -> u32 {
        self.source_cap[a.index()]
    }

    pub fn tie_capacity(&self, a: ApplicantId, t: usize) -> u32 {
        self.tie_cap[a.index()][t]
    }

    pub fn tie_flow(&self, a: ApplicantId, t: usize) -> u32 {
        self.tie_flow[a.index()][t]
    }

    pub fn raise_source(&mut self, a: ApplicantId) {
        self.source_cap[a.index()] += 1;
    }

    pub fn raise_tie(&mut self, a: ApplicantId, t: usize) {
        self.tie_cap[a.index()][t] += 1;
    }

    pub fn lower_tie(&mut self, a: ApplicantId, t: usize) {
        let cap = &mut self.tie_cap[a.index()][t];
        assert!(*cap > self.tie_flow[a.index()][t], "cannot drop capacity below flow");
        *cap -= 1;
    }

    fn course_has_room(&self, c: CourseId) -> bool {
        self.sink_flow[c.index()] < self.instance.course_quota(c)
    }

    /// Every arc with positive residual capacity, as node-id pairs.
    pub fn residual_arcs(&self) -> Vec<(usize, usize)> {
        let inst = self.instance;
        let id = |n| self.node_id(n);
        let mut out = Vec::new();
        for a in inst.applicants() {
            let i = a.index();
            if self.source_flow[i] < self.source_cap[i] {
                out.push((id(NetNode::Source), id(NetNode::Applicant(a))));
            }
            if self.source_flow[i] > 0 {
                out.push((id(NetNode::Applicant(a)), id(NetNode::Source)));
            }
            for (t, tie) in inst.prefs(a).ties().iter().enumerate() {
                let tn = NetNode::Tie(a, t);
                if self.tie_flow[i][t] < self.tie_cap[i][t] {
                    out.push((id(NetNode::Applicant(a)), id(tn)));
                }
                if self.tie_flow[i][t] > 0 {
                    out.push((id(tn), id(NetNode::Applicant(a))));
                }
                for &c in tie {
                    if self.assigned.contains(a, c) {
                        out.push((id(NetNode::Course(c)), id(tn)));
                    } else {
                        out.push((id(tn), id(NetNode::Course(c))));
                    }
                }
            }
        }
        for c in inst.courses() {
            if self.course_has_room(c) {
                out.push((id(NetNode::Course(c)), id(NetNode::Sink)));
            }
            if self.sink_flow[c.index()] > 0 {
                out.push((id(NetNode::Sink), id(NetNode::Course(c))));
            }
        }
        out.sort_unstable();
        out
    }

    /// Shortest source-to-sink residual path through `Tie(a, t)`, least in
    /// node-id order among the shortest. Returns the path (if any) and the
    /// number of arcs examined.
    ///
    /// The path is forced to start `Source, a, Tie(a, t)` because every
    /// other tie arc is saturated. Past that, only tie and course nodes can
    /// lead anywhere: an applicant node is entered only backwards from one
    /// of her tie nodes, and from there every forward tie arc is full.
    pub fn shortest_augmenting_path(&self, a: ApplicantId, t: usize) -> (Option<AugmentingPath>, usize) {
        let i = a.index();
        assert!(self.source_flow[i] < self.source_cap[i], "source arc has no residual capacity");
        assert!(self.tie_flow[i][t] < self.tie_cap[i][t], "tie arc has no residual capacity");
        let inst = self.instance;
        let n = self.node_count();
        let mut parent: Vec<Option<usize>> = vec![None; n];
        let mut seen = vec![false; n];
        let start = self.node_id(NetNode::Tie(a, t));
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut visits = 2;

        while let Some(u) = queue.pop_front() {
            match self.node(u) {
                NetNode::Tie(b, s) => {
                    for &c in &inst.prefs(b).ties()[s] {
                        visits += 1;
                        if self.assigned.contains(b, c) {
                            continue;
                        }
                        let v = self.node_id(NetNode::Course(c));
                        if !seen[v] {
                            seen[v] = true;
                            parent[v] = Some(u);
                            queue.push_back(v);
                        }
                    }
                }
                NetNode::Course(c) => {
                    visits += 1;
                    if self.course_has_room(c) {
                        let mut nodes = vec![NetNode::Sink, NetNode::Course(c)];
                        let mut w = u;
                        while let Some(p) = parent[w] {
                            nodes.push(self.node(p));
                            w = p;
                        }
                        nodes.push(NetNode::Applicant(a));
                        nodes.push(NetNode::Source);
                        nodes.reverse();
                        return (Some(AugmentingPath { nodes }), visits);
                    }
                    for holder in self.assigned.applicants_of(c) {
                        visits += 1;
                        let s = inst.tie_of(holder, c).expect("assigned courses are acceptable");
                        let v = self.node_id(NetNode::Tie(holder, s));
                        if !seen[v] {
                            seen[v] = true;
                            parent[v] = Some(u);
                            queue.push_back(v);
                        }
                    }
                }
                _ => unreachable!("only tie and course nodes are queued"),
            }
        }
        (None, visits)
    }

    /// `Source, a, Tie(a, t), c, Sink` when every arc on it has residual
    /// capacity.
    pub fn direct_path(&self, a: ApplicantId, t: usize, c: CourseId) -> Option<AugmentingPath> {
        let i = a.index();
        let ok = self.source_flow[i] < self.source_cap[i]
            && self.tie_flow[i][t] < self.tie_cap[i][t]
            && self.instance.tie_of(a, c) == Some(t)
            && !self.assigned.contains(a, c)
            && self.course_has_room(c);
        ok.then(|| AugmentingPath {
            nodes: vec![
                NetNode::Source,
                NetNode::Applicant(a),
                NetNode::Tie(a, t),
                NetNode::Course(c),
                NetNode::Sink,
            ],
        })
    }

    /// Pushes one unit along `path`. Returns the pairs added to and removed
    /// from the matching.
    pub fn augment(&mut self, path: &AugmentingPath) -> (Pairs, Pairs) {
        let mut added = Vec::new();
        let mut removed = Vec::new();
        for w in path.nodes.windows(2) {
            match (w[0], w[1]) {
                (NetNode::Source, NetNode::Applicant(a)) => self.source_flow[a.index()] += 1,
                (NetNode::Applicant(a), NetNode::Source) => self.source_flow[a.index()] -= 1,
                (NetNode::Applicant(a), NetNode::Tie(b, t)) if a == b => self.tie_flow[a.index()][t] += 1,
                (NetNode::Tie(b, t), NetNode::Applicant(a)) if a == b => self.tie_flow[a.index()][t] -= 1,
                (NetNode::Tie(a, _), NetNode::Course(c)) => {
                    self.assigned.insert(a, c);
                    added.push((a, c));
                }
                (NetNode::Course(c), NetNode::Tie(a, _)) => {
                    self.assigned.remove(a, c);
                    removed.push((a, c));
                }
                (NetNode::Course(c), NetNode::Sink) => self.sink_flow[c.index()] += 1,
                (NetNode::Sink, NetNode::Course(c)) => self.sink_flow[c.index()] -= 1,
                (u, v) => panic!("not an arc of the network: {u:?} -> {v:?}"),
            }
        }
        (added, removed)
    }

    /// Capacity bounds and conservation at every internal node.
    pub fn check_flow(&self) -> Result<(), FlowError> {
        let inst = self.instance;
        for a in inst.applicants() {
            let i = a.index();
            if self.source_flow[i] > self.source_cap[i] {
                return Err(FlowError::OverCapacity(NetNode::Source, NetNode::Applicant(a)));
            }
            let mut out = 0;
            for (t, tie) in inst.prefs(a).ties().iter().enumerate() {
                if self.tie_flow[i][t] > self.tie_cap[i][t] {
                    return Err(FlowError::OverCapacity(NetNode::Applicant(a), NetNode::Tie(a, t)));
                }
                let used = tie.iter().filter(|&&c| self.assigned.contains(a, c)).count() as u32;
                if used != self.tie_flow[i][t] {
                    return Err(FlowError::Conservation(NetNode::Tie(a, t)));
                }
                out += self.tie_flow[i][t];
            }
            if out != self.source_flow[i] {
                return Err(FlowError::Conservation(NetNode::Applicant(a)));
            }
        }
        for (a, c) in self.assigned.pairs() {
            if inst.tie_of(a, c).is_none() {
                return Err(FlowError::OverCapacity(NetNode::Applicant(a), NetNode::Course(c)));
            }
        }
        for c in inst.courses() {
            let load = self.assigned.applicants_of(c).count() as u32;
            if load != self.sink_flow[c.index()] {
                return Err(FlowError::Conservation(NetNode::Course(c)));
            }
            if load > inst.course_quota(c) {
                return Err(FlowError::OverCapacity(NetNode::Course(c), NetNode::Sink));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn node_ids_round_trip() {
        let t = fixtures::table1();
        let net = FlowNetwork::new(&t);
        // 3 applicants, 7 ties, 3 courses, source and sink.
        assert_eq!(net.node_count(), 15);
        for id in 0..net.node_count() {
            assert_eq!(net.node_id(net.node(id)), id);
        }
        assert_eq!(net.node(net.node_count() - 1), NetNode::Sink);
    }

    #[test]
    fn first_stage_takes_direct_path() {
        let t = fixtures::table1();
        let a1 = t.find_applicant("a1").unwrap();
        let mut net = FlowNetwork::new(&t);
        net.raise_source(a1);
        net.raise_tie(a1, 0);
        let (path, visits) = net.shortest_augmenting_path(a1, 0);
        let path = path.unwrap();
        assert_eq!(path.nodes.len(), 5);
        assert_eq!(path.display(&t).to_string(), "src,a1,a1/1,c1,snk");
        assert!(visits <= 2 + 3 * t.profile_length());
        net.augment(&path);
        assert_eq!(net.check_flow(), Ok(()));
        assert_eq!(net.flow_value(), 1);
    }

    #[test]
    fn full_course_is_freed_by_rerouting() {
        use crate::matching::characteristic_vector;
        let t = fixtures::table1();
        let a1 = t.find_applicant("a1").unwrap();
        let a2 = t.find_applicant("a2").unwrap();
        let c = |n| t.find_course(n).unwrap();
        let mut net = FlowNetwork::new(&t);
        net.raise_source(a1);
        net.raise_tie(a1, 0);
        let direct = net.direct_path(a1, 0, c("c2")).unwrap();
        net.augment(&direct);
        let before = net.matching().clone();

        // c2 is full; a1 can swap it for c1, which sits in the same tie.
        net.raise_source(a2);
        net.raise_tie(a2, 0);
        let path = net.shortest_augmenting_path(a2, 0).0.unwrap();
        assert_eq!(path.display(&t).to_string(), "src,a2,a2/1,c2,a1/1,c1,snk");
        let (added, removed) = net.augment(&path);
        assert_eq!(added, vec![(a2, c("c2")), (a1, c("c1"))]);
        assert_eq!(removed, vec![(a1, c("c2"))]);
        assert_eq!(net.check_flow(), Ok(()));

        let after = net.matching();
        let chi = |m: &Matching, a| characteristic_vector(&t, a, m.courses_of(a)).unwrap();
        assert_eq!(chi(after, a1), chi(&before, a1));
        assert_eq!(chi(after, a2).0, vec![1, 0]);
    }

    #[test]
    fn exhausted_tie_has_no_path() {
        let s = fixtures::example1();
        let a1 = s.find_applicant("a1").unwrap();
        let a2 = s.find_applicant("a2").unwrap();
        let mut net = FlowNetwork::new(&s);
        net.raise_source(a2);
        net.raise_tie(a2, 0);
        let (p, _) = net.shortest_augmenting_path(a2, 0);
        net.augment(&p.unwrap());
        // a2 holds c1; a1's second tie is {c1} and nobody can move a2.
        net.raise_source(a1);
        net.raise_tie(a1, 1);
        assert_eq!(net.shortest_augmenting_path(a1, 1).0, None);
        net.lower_tie(a1, 1);
        assert_eq!(net.check_flow(), Ok(()));
    }
}
