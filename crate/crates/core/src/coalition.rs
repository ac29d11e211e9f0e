//! Improving coalitions: alternating-path, augmenting-path and cyclic
//! sequences of applicants and courses whose satisfaction makes some
//! applicant strictly better off and nobody worse off.
//!
//! A sequence is stored flat, as the alternating list of its elements.
//! Indexing follows the usual convention:
//!
//! * alternating path `c0 a0 c1 a1 ... a(r-1) cr`
//! * augmenting path `a0 c1 a1 ... a(r-1) cr`
//! * cyclic `c0 a0 c1 a1 ... c(r-1) a(r-1)`, with `cr = c0`
//!
//! where `ck` is held by `ak` and `ak` moves from `ck` to `c(k+1)`.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::instance::{ApplicantId, CourseId, Instance};
use crate::matching::{compare_courses, Matching};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Element {
    Applicant(ApplicantId),
    Course(CourseId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoalitionKind {
    AlternatingPath,
    AugmentingPath,
    Cyclic,
}

impl fmt::Display for CoalitionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoalitionKind::AlternatingPath => "alternating-path",
            CoalitionKind::AugmentingPath => "augmenting-path",
            CoalitionKind::Cyclic => "cyclic",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoalitionError {
    #[error("sequence does not have the shape of any coalition kind")]
    BadShape,
    #[error("element at position {0} repeats an earlier element")]
    Repeated(usize),
    #[error("course at position {0} is not held by the applicant that follows it")]
    NotHeld(usize),
    #[error("course at position {0} is already held by the applicant before it")]
    AlreadyHeld(usize),
    #[error("course at position {0} is not acceptable to the applicant before it")]
    Unacceptable(usize),
    #[error("first applicant does not strictly prefer her new course")]
    NoStrictGain,
    #[error("applicant at position {0} would move to a less preferred course")]
    Worsens(usize),
    #[error("first applicant of an alternating path must be full")]
    ApplicantNotFull,
    #[error("first applicant of an augmenting path must be exposed")]
    ApplicantNotExposed,
    #[error("last course of a path coalition must be exposed")]
    CourseNotExposed,
}

/// Decoded view of a sequence: `moves[k] = (a_k, from, to)` where `from` is
/// `c_k` (absent for the head of an augmenting path) and `to` is `c_{k+1}`.
struct Moves {
    kind: CoalitionKind,
    moves: Vec<(ApplicantId, Option<CourseId>, CourseId)>,
    /// Position in the flat sequence of each `to` course.
    to_pos: Vec<usize>,
}

fn decode(seq: &[Element]) -> Result<Moves, CoalitionError> {
    for w in seq.windows(2) {
        match (w[0], w[1]) {
            (Element::Applicant(_), Element::Course(_)) | (Element::Course(_), Element::Applicant(_)) => {}
            _ => return Err(CoalitionError::BadShape),
        }
    }
    let app = |i: usize| match seq[i] {
        Element::Applicant(a) => a,
        Element::Course(_) => unreachable!(),
    };
    let course = |i: usize| match seq[i] {
        Element::Course(c) => c,
        Element::Applicant(_) => unreachable!(),
    };
    let n = seq.len();
    let kind = match (seq.first(), seq.last()) {
        (Some(Element::Applicant(_)), Some(Element::Course(_))) if n >= 2 => CoalitionKind::AugmentingPath,
        (Some(Element::Course(_)), Some(Element::Course(_))) if n >= 3 => CoalitionKind::AlternatingPath,
        (Some(Element::Course(_)), Some(Element::Applicant(_))) if n >= 4 => CoalitionKind::Cyclic,
        _ => return Err(CoalitionError::BadShape),
    };
    let mut moves = Vec::new();
    let mut to_pos = Vec::new();
    match kind {
        CoalitionKind::AugmentingPath => {
            // a0 c1 a1 c2 ... : applicants at even positions.
            for i in (0..n).step_by(2) {
                let from = if i == 0 { None } else { Some(course(i - 1)) };
                moves.push((app(i), from, course(i + 1)));
                to_pos.push(i + 1);
            }
        }
        CoalitionKind::AlternatingPath => {
            for i in (1..n).step_by(2) {
                moves.push((app(i), Some(course(i - 1)), course(i + 1)));
                to_pos.push(i + 1);
            }
        }
        CoalitionKind::Cyclic => {
            for i in (1..n).step_by(2) {
                let to = if i + 1 < n { i + 1 } else { 0 };
                moves.push((app(i), Some(course(i - 1)), course(to)));
                to_pos.push(to);
            }
        }
    }
    Ok(Moves { kind, moves, to_pos })
}

/// Checks every coalition condition against `matching`. With
/// `allow_repeats` the no-repetition rule is skipped, which is the
/// definition of a pseudocoalition.
pub fn check_sequence(
    instance: &Instance,
    matching: &Matching,
    seq: &[Element],
    allow_repeats: bool,
) -> Result<CoalitionKind, CoalitionError> {
    let Moves { kind, moves, to_pos } = decode(seq)?;

    if !allow_repeats {
        let mut seen = HashSet::new();
        for (i, e) in seq.iter().enumerate() {
            if !seen.insert(*e) {
                return Err(CoalitionError::Repeated(i));
            }
        }
    }

    for (k, &(a, from, to)) in moves.iter().enumerate() {
        let app_pos = if kind == CoalitionKind::AugmentingPath { 2 * k } else { 2 * k + 1 };
        if let Some(c) = from {
            if !matching.contains(a, c) {
                return Err(CoalitionError::NotHeld(app_pos - 1));
            }
        }
        if matching.contains(a, to) {
            return Err(CoalitionError::AlreadyHeld(to_pos[k]));
        }
        if !instance.is_acceptable(a, to) {
            return Err(CoalitionError::Unacceptable(to_pos[k]));
        }
        if let Some(c) = from {
            let cmp = compare_courses(instance, a, to, c);
            if k == 0 {
                if cmp != Ordering::Greater {
                    return Err(CoalitionError::NoStrictGain);
                }
            } else if cmp == Ordering::Less {
                return Err(CoalitionError::Worsens(app_pos));
            }
        }
    }

    let (a0, _, _) = moves[0];
    let a0_load = matching.applicant_load(a0) as u32;
    match kind {
        CoalitionKind::AlternatingPath if a0_load < instance.applicant_quota(a0) => {
            return Err(CoalitionError::ApplicantNotFull)
        }
        CoalitionKind::AugmentingPath if a0_load >= instance.applicant_quota(a0) => {
            return Err(CoalitionError::ApplicantNotExposed)
        }
        _ => {}
    }
    if kind != CoalitionKind::Cyclic {
        let (_, _, last) = *moves.last().expect("nonempty");
        let load = matching.applicants_of(last).count() as u32;
        if load >= instance.course_quota(last) {
            return Err(CoalitionError::CourseNotExposed);
        }
    }
    Ok(kind)
}

/// A validated improving coalition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImprovingCoalition {
    kind: CoalitionKind,
    elements: Vec<Element>,
}

impl ImprovingCoalition {
    pub fn new(instance: &Instance, matching: &Matching, elements: Vec<Element>) -> Result<Self, CoalitionError> {
        let kind = check_sequence(instance, matching, &elements, false)?;
        Ok(ImprovingCoalition { kind, elements })
    }

    pub fn kind(&self) -> CoalitionKind {
        self.kind
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    /// Number of applicants taking part (`r`).
    pub fn size(&self) -> usize {
        self.elements
            .iter()
            .filter(|e| matches!(e, Element::Applicant(_)))
            .count()
    }

    pub fn display<'a>(&'a self, instance: &'a Instance) -> impl fmt::Display + 'a {
        DisplaySeq {
            kind: Some(self.kind),
            elements: &self.elements,
            instance,
        }
    }
}

pub(crate) struct DisplaySeq<'a> {
    pub kind: Option<CoalitionKind>,
    pub elements: &'a [Element],
    pub instance: &'a Instance,
}

impl fmt::Display for DisplaySeq<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(kind) = self.kind {
            write!(f, "{kind}:")?;
        }
        for e in self.elements {
            match *e {
                Element::Applicant(a) => write!(f, " {}", self.instance.applicant_name(a))?,
                Element::Course(c) => write!(f, " {}", self.instance.course_name(c))?,
            }
        }
        Ok(())
    }
}

/// The matching obtained by letting every member of the coalition move
/// from the course she gives up to the next course in the sequence. The
/// head of an augmenting path gives up nothing.
pub fn satisfy_coalition(
    instance: &Instance,
    matching: &Matching,
    coalition: &ImprovingCoalition,
) -> Result<Matching, CoalitionError> {
    check_sequence(instance, matching, coalition.elements(), false)?;
    let Moves { moves, .. } = decode(coalition.elements())?;
    let mut out = matching.clone();
    for &(a, from, _) in &moves {
        if let Some(c) = from {
            out.remove(a, c);
        }
    }
    for &(a, _, to) in &moves {
        out.insert(a, to);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::instance::InstanceBuilder;
    use crate::matching::{is_feasible, pareto_dominates};

    fn a(inst: &Instance, n: &str) -> Element {
        Element::Applicant(inst.find_applicant(n).unwrap())
    }
    fn c(inst: &Instance, n: &str) -> Element {
        Element::Course(inst.find_course(n).unwrap())
    }
    fn m(inst: &Instance, pairs: &[(&str, &str)]) -> Matching {
        pairs
            .iter()
            .map(|(x, y)| (inst.find_applicant(x).unwrap(), inst.find_course(y).unwrap()))
            .collect()
    }

    #[test]
    fn augmenting_path_adds_one_pair() {
        let ex = fixtures::example1();
        let mu = m(&ex, &[("a2", "c1")]);
        let coal = ImprovingCoalition::new(&ex, &mu, vec![a(&ex, "a1"), c(&ex, "c2")]).unwrap();
        assert_eq!(coal.kind(), CoalitionKind::AugmentingPath);
        let out = satisfy_coalition(&ex, &mu, &coal).unwrap();
        assert_eq!(out, m(&ex, &[("a2", "c1"), ("a1", "c2")]));
    }

    #[test]
    fn alternating_path_trades_into_slack() {
        // a1 (quota 1) holds c1 but prefers the exposed c2.
        let inst = InstanceBuilder::new()
            .course("c1", 1)
            .course("c2", 1)
            .applicant("a1", 1, &[&["c2"], &["c1"]])
            .build()
            .unwrap();
        let mu = m(&inst, &[("a1", "c1")]);
        let seq = vec![c(&inst, "c1"), a(&inst, "a1"), c(&inst, "c2")];
        let coal = ImprovingCoalition::new(&inst, &mu, seq).unwrap();
        assert_eq!(coal.kind(), CoalitionKind::AlternatingPath);
        let out = satisfy_coalition(&inst, &mu, &coal).unwrap();
        assert_eq!(out, m(&inst, &[("a1", "c2")]));
        assert_eq!(pareto_dominates(&inst, &out, &mu), Ok(true));
    }

    #[test]
    fn longer_alternating_path_on_example1() {
        // a2 is indifferent between c2 and c3, so she can make room for a1.
        let inst = InstanceBuilder::new()
            .course("c1", 1)
            .course("c2", 1)
            .course("c3", 1)
            .applicant("a1", 1, &[&["c2"], &["c1"]])
            .applicant("a2", 1, &[&["c2", "c3"]])
            .build()
            .unwrap();
        let mu = m(&inst, &[("a1", "c1"), ("a2", "c2")]);
        let seq = vec![
            c(&inst, "c1"),
            a(&inst, "a1"),
            c(&inst, "c2"),
            a(&inst, "a2"),
            c(&inst, "c3"),
        ];
        let coal = ImprovingCoalition::new(&inst, &mu, seq).unwrap();
        let out = satisfy_coalition(&inst, &mu, &coal).unwrap();
        assert_eq!(out, m(&inst, &[("a1", "c2"), ("a2", "c3")]));
        assert_eq!(is_feasible(&inst, &out), Ok(()));
        assert_eq!(pareto_dominates(&inst, &out, &mu), Ok(true));
    }

    #[test]
    fn cyclic_swap() {
        let inst = InstanceBuilder::new()
            .course("c1", 1)
            .course("c2", 1)
            .applicant("a1", 1, &[&["c2"], &["c1"]])
            .applicant("a2", 1, &[&["c1"], &["c2"]])
            .build()
            .unwrap();
        let mu = m(&inst, &[("a1", "c1"), ("a2", "c2")]);
        let seq = vec![c(&inst, "c1"), a(&inst, "a1"), c(&inst, "c2"), a(&inst, "a2")];
        let coal = ImprovingCoalition::new(&inst, &mu, seq).unwrap();
        assert_eq!(coal.kind(), CoalitionKind::Cyclic);
        assert_eq!(coal.size(), 2);
        let out = satisfy_coalition(&inst, &mu, &coal).unwrap();
        assert_eq!(out, m(&inst, &[("a1", "c2"), ("a2", "c1")]));
    }

    #[test]
    fn rejects_invalid_sequences() {
        let ex = fixtures::example1();
        let mu1 = m(&ex, &[("a1", "c2"), ("a2", "c1")]);
        // a1 exposed, but c1 is full.
        assert_eq!(
            ImprovingCoalition::new(&ex, &mu1, vec![a(&ex, "a1"), c(&ex, "c1")]),
            Err(CoalitionError::CourseNotExposed)
        );
        // c2 is not on a2's list.
        assert_eq!(
            ImprovingCoalition::new(&ex, &mu1, vec![a(&ex, "a2"), c(&ex, "c2")]),
            Err(CoalitionError::Unacceptable(1))
        );
        // a1 holds c2 already.
        assert_eq!(
            ImprovingCoalition::new(&ex, &mu1, vec![a(&ex, "a1"), c(&ex, "c2")]),
            Err(CoalitionError::AlreadyHeld(1))
        );
        assert_eq!(
            ImprovingCoalition::new(&ex, &mu1, vec![a(&ex, "a1")]),
            Err(CoalitionError::BadShape)
        );
        assert_eq!(
            ImprovingCoalition::new(&ex, &mu1, vec![c(&ex, "c1"), c(&ex, "c2")]),
            Err(CoalitionError::BadShape)
        );
        // Cyclic with a repeated applicant is only a pseudocoalition.
        let mu = m(&ex, &[("a1", "c2")]);
        let seq = vec![c(&ex, "c2"), a(&ex, "a1"), c(&ex, "c2"), a(&ex, "a1")];
        assert!(matches!(
            check_sequence(&ex, &mu, &seq, false),
            Err(CoalitionError::Repeated(_))
        ));
    }

    #[test]
    fn strictness_of_the_head() {
        let inst = InstanceBuilder::new()
            .course("c1", 1)
            .course("c2", 1)
            .applicant("a1", 1, &[&["c1", "c2"]])
            .build()
            .unwrap();
        let mu = m(&inst, &[("a1", "c1")]);
        let seq = vec![c(&inst, "c1"), a(&inst, "a1"), c(&inst, "c2")];
        assert_eq!(check_sequence(&inst, &mu, &seq, false), Err(CoalitionError::NoStrictGain));
    }
}
