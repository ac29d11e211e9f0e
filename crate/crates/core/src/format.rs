//! Line-oriented text formats for instances, priority orderings and
//! matchings. `#` starts a comment running to the end of the line.
//!
//! ```text
//! courses: c1=2 c2=1 c3=1
//! applicant a1 quota=2 prefs: ( c1 c2 ) ( c3 )
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::instance::{
    Applicant, ApplicantId, Course, CourseId, Instance, InstanceError, PreferenceList, PriorityOrdering,
};
use crate::matching::Matching;

#[derive(Debug, Clone, PartialEq, Eq)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Splits on whitespace and makes `(` and `)` tokens of their own.
fn tokenize(line: &str, line_no: usize) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    let column = |byte: usize| line[..byte].chars().count() + 1;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() || ch == '(' || ch == ')' {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &line[s..i],
                    line: line_no,
                    column: column(s),
                });
            }
            if ch == '(' || ch == ')' {
                out.push(Token {
                    text: &line[i..i + 1],
                    line: line_no,
                    column: column(i),
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            line: line_no,
            column: column(s),
        });
    }
    out
}

fn syntax(tok: &Token<'_>, message: impl Into<String>) -> InstanceError {
    InstanceError::Syntax {
        line: tok.line,
        column: tok.column,
        message: message.into(),
    }
}

fn parse_quota(tok: &Token<'_>, digits: &str) -> Result<u32, InstanceError> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax(tok, format!("expected a positive integer quota, found `{digits}`")));
    }
    digits
        .parse::<u32>()
        .map_err(|_| syntax(tok, format!("quota `{digits}` exceeds the 32-bit range")))
}

fn check_id<'a>(tok: &Token<'a>) -> Result<&'a str, InstanceError> {
    if tok.text == "(" || tok.text == ")" || tok.text.contains('=') || tok.text.ends_with(':') {
        return Err(syntax(tok, format!("expected an id, found `{}`", tok.text)));
    }
    Ok(tok.text)
}

/// Parses and validates an instance.
pub fn parse_instance(text: &str) -> Result<Instance, InstanceError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| tokenize(strip_comment(l), i + 1))
        .filter(|toks| !toks.is_empty());

    let header = lines.next().ok_or(InstanceError::Syntax {
        line: 1,
        column: 1,
        message: "missing `courses:` line".into(),
    })?;
    if header[0].text != "courses:" {
        return Err(syntax(&header[0], "expected `courses:`"));
    }
    let mut courses = Vec::new();
    let mut course_ids: HashMap<&str, CourseId> = HashMap::new();
    for tok in &header[1..] {
        let (name, quota) = tok
            .text
            .split_once('=')
            .ok_or_else(|| syntax(tok, format!("expected `<id>=<quota>`, found `{}`", tok.text)))?;
        if name.is_empty() || name == "(" || name == ")" {
            return Err(syntax(tok, "empty course id"));
        }
        let quota = parse_quota(tok, quota)?;
        if course_ids.insert(name, CourseId(courses.len() as u32)).is_some() {
            return Err(InstanceError::DuplicateCourse(name.to_string()));
        }
        courses.push(Course {
            name: name.to_string(),
            quota,
        });
    }

    let mut applicants = Vec::new();
    for toks in lines {
        let mut it = toks.iter();
        let kw = it.next().expect("nonempty");
        if kw.text != "applicant" {
            return Err(syntax(kw, format!("expected `applicant`, found `{}`", kw.text)));
        }
        let name_tok = it.next().ok_or_else(|| syntax(kw, "missing applicant id"))?;
        let name = check_id(name_tok)?;
        let quota_tok = it.next().ok_or_else(|| syntax(name_tok, "missing `quota=<b>`"))?;
        let quota = match quota_tok.text.strip_prefix("quota=") {
            Some(digits) => parse_quota(quota_tok, digits)?,
            None => return Err(syntax(quota_tok, "expected `quota=<b>`")),
        };
        let prefs_tok = it.next().ok_or_else(|| syntax(quota_tok, "missing `prefs:`"))?;
        if prefs_tok.text != "prefs:" {
            return Err(syntax(prefs_tok, "expected `prefs:`"));
        }

        let mut ties: Vec<Vec<CourseId>> = Vec::new();
        let mut open: Option<(&Token<'_>, Vec<CourseId>)> = None;
        for tok in it {
            match (tok.text, open.as_mut()) {
                ("(", None) => open = Some((tok, Vec::new())),
                ("(", Some(_)) => return Err(syntax(tok, "nested `(`")),
                (")", None) => return Err(syntax(tok, "unmatched `)`")),
                (")", Some(_)) => {
                    let (_, tie) = open.take().expect("open group");
                    if tie.is_empty() {
                        return Err(InstanceError::EmptyTie {
                            applicant: name.to_string(),
                        });
                    }
                    ties.push(tie);
                }
                (_, None) => return Err(syntax(tok, "course id outside a `( ... )` group")),
                (_, Some((_, tie))) => {
                    let course = check_id(tok)?;
                    let id = *course_ids.get(course).ok_or_else(|| InstanceError::UnknownCourse {
                        applicant: name.to_string(),
                        course: course.to_string(),
                    })?;
                    tie.push(id);
                }
            }
        }
        if let Some((tok, _)) = open {
            return Err(syntax(tok, "unclosed `(`"));
        }
        applicants.push(Applicant {
            name: name.to_string(),
            quota,
            prefs: PreferenceList::new(ties),
        });
    }
    Instance::new(courses, applicants)
}

/// Canonical text form; course ids inside a tie are sorted by name.
pub fn write_instance(instance: &Instance) -> String {
    let mut out = String::from("courses:");
    for c in instance.courses() {
        let _ = write!(out, " {}={}", instance.course_name(c), instance.course_quota(c));
    }
    out.push('\n');
    for a in instance.applicants() {
        let _ = write!(
            out,
            "applicant {} quota={} prefs:",
            instance.applicant_name(a),
            instance.applicant_quota(a)
        );
        for tie in instance.prefs(a).ties() {
            let mut names: Vec<&str> = tie.iter().map(|&c| instance.course_name(c)).collect();
            names.sort_unstable();
            out.push_str(" (");
            for n in names {
                out.push(' ');
                out.push_str(n);
            }
            out.push_str(" )");
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReferenceError {
    #[error("line {line}: unknown applicant `{name}`")]
    UnknownApplicant { line: usize, name: String },
    #[error("line {line}: unknown course `{name}`")]
    UnknownCourse { line: usize, name: String },
    #[error("line {line}: expected `<applicant-id> <course-id>`")]
    Malformed { line: usize },
    #[error("line {line}: pair `{applicant} {course}` listed twice")]
    DuplicatePair {
        line: usize,
        applicant: String,
        course: String,
    },
}

/// Whitespace-separated applicant ids. Multiplicities are not checked here;
/// see [`crate::instance::validate_ordering`].
pub fn parse_ordering(instance: &Instance, text: &str) -> Result<PriorityOrdering, ReferenceError> {
    let mut seq = Vec::new();
    for (i, line) in text.lines().enumerate() {
        for name in strip_comment(line).split_whitespace() {
            let a = instance
                .find_applicant(name)
                .ok_or_else(|| ReferenceError::UnknownApplicant {
                    line: i + 1,
                    name: name.to_string(),
                })?;
            seq.push(a);
        }
    }
    Ok(PriorityOrdering(seq))
}

pub fn write_ordering(instance: &Instance, ordering: &PriorityOrdering) -> String {
    let names: Vec<&str> = ordering
        .as_slice()
        .iter()
        .map(|&a| instance.applicant_name(a))
        .collect();
    let mut out = names.join(" ");
    out.push('\n');
    out
}

/// One `<applicant-id> <course-id>` pair per line. Feasibility is not
/// checked here.
pub fn parse_matching(instance: &Instance, text: &str) -> Result<Matching, ReferenceError> {
    let mut m = Matching::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let words: Vec<&str> = strip_comment(line).split_whitespace().collect();
        match words.as_slice() {
            [] => continue,
            [a, c] => {
                let aid: ApplicantId = instance
                    .find_applicant(a)
                    .ok_or_else(|| ReferenceError::UnknownApplicant {
                        line: line_no,
                        name: a.to_string(),
                    })?;
                let cid = instance
                    .find_course(c)
                    .ok_or_else(|| ReferenceError::UnknownCourse {
                        line: line_no,
                        name: c.to_string(),
                    })?;
                if !m.insert(aid, cid) {
                    return Err(ReferenceError::DuplicatePair {
                        line: line_no,
                        applicant: a.to_string(),
                        course: c.to_string(),
                    });
                }
            }
            _ => return Err(ReferenceError::Malformed { line: line_no }),
        }
    }
    Ok(m)
}

/// Canonical form: pairs sorted by (applicant index, course index).
pub fn write_matching(instance: &Instance, matching: &Matching) -> String {
    let mut out = String::new();
    for (a, c) in matching.pairs() {
        let _ = writeln!(out, "{} {}", instance.applicant_name(a), instance.course_name(c));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn parses_table1() {
        let inst = fixtures::table1();
        assert_eq!(inst.applicant_count(), 3);
        assert_eq!(inst.course_count(), 3);
        let quotas: Vec<u32> = inst.applicants().map(|a| inst.applicant_quota(a)).collect();
        assert_eq!(quotas, vec![2, 3, 2]);
        let cq: Vec<u32> = inst.courses().map(|c| inst.course_quota(c)).collect();
        assert_eq!(cq, vec![2, 1, 1]);
        let a1 = inst.find_applicant("a1").unwrap();
        let c = |n| inst.find_course(n).unwrap();
        assert_eq!(inst.prefs(a1).ties(), &[vec![c("c1"), c("c2")], vec![c("c3")]]);
    }

    #[test]
    fn minimal_instance() {
        let inst = parse_instance("courses: x=1\napplicant y quota=1 prefs: ( x )\n").unwrap();
        assert_eq!(inst.applicant_count(), 1);
        assert_eq!(inst.profile_length(), 1);
    }

    #[test]
    fn attached_parens_and_duplicates_in_tie() {
        let err = parse_instance("courses: c1=1\napplicant a quota=1 prefs: (c1 c1)\n").unwrap_err();
        assert_eq!(
            err,
            InstanceError::DuplicateCourseInPrefs {
                applicant: "a".into(),
                course: "c1".into()
            }
        );
        let ok = parse_instance("courses: c1=1 c2=1\napplicant a quota=1 prefs: (c1)(c2)\n").unwrap();
        assert_eq!(ok.prefs(ApplicantId(0)).tie_count(), 2);
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_instance("courses: c1=1\napplicant a quota=x prefs:\n").unwrap_err();
        assert!(matches!(err, InstanceError::Syntax { line: 2, column: 13, .. }), "{err:?}");
        let err = parse_instance("# nothing\n\n").unwrap_err();
        assert!(matches!(err, InstanceError::Syntax { .. }));
        let err = parse_instance("courses: c1=1\napplicant a quota=1 prefs: ( c1\n").unwrap_err();
        assert!(matches!(err, InstanceError::Syntax { line: 2, column: 28, .. }), "{err:?}");
        let err = parse_instance("courses: c1\n").unwrap_err();
        assert!(matches!(err, InstanceError::Syntax { line: 1, column: 10, .. }), "{err:?}");
    }

    #[test]
    fn semantic_errors() {
        assert!(matches!(
            parse_instance("courses: c1=0\n"),
            Err(InstanceError::ZeroQuota { .. })
        ));
        assert!(matches!(
            parse_instance("courses: c1=4294967296\n"),
            Err(InstanceError::Syntax { .. })
        ));
        assert!(matches!(
            parse_instance("courses: c1=1 c1=2\n"),
            Err(InstanceError::DuplicateCourse(_))
        ));
        assert!(matches!(
            parse_instance("courses: c1=1\napplicant a quota=1 prefs:\napplicant a quota=1 prefs:\n"),
            Err(InstanceError::DuplicateApplicant(_))
        ));
        assert!(matches!(
            parse_instance("courses: c1=1\napplicant a quota=1 prefs: ( c2 )\n"),
            Err(InstanceError::UnknownCourse { .. })
        ));
        assert!(matches!(
            parse_instance("courses: c1=1\napplicant a quota=1 prefs: ( )\n"),
            Err(InstanceError::EmptyTie { .. })
        ));
        assert!(matches!(
            parse_instance("courses: c1=1 c2=1\napplicant a quota=1 prefs: ( c1 ) ( c2 c1 )\n"),
            Err(InstanceError::DuplicateCourseInPrefs { .. })
        ));
    }

    #[test]
    fn empty_preference_list_is_legal() {
        let inst = parse_instance("courses: c1=1\napplicant a quota=2 prefs: # nothing\n").unwrap();
        assert!(inst.prefs(ApplicantId(0)).is_empty());
        assert_eq!(parse_instance(&write_instance(&inst)).unwrap(), inst);
    }

    #[test]
    fn canonical_output_sorts_within_ties() {
        let inst = parse_instance("courses: z=1 b=1\napplicant a quota=1 prefs: ( z b )\n").unwrap();
        assert_eq!(
            write_instance(&inst),
            "courses: z=1 b=1\napplicant a quota=1 prefs: ( b z )\n"
        );
    }

    #[test]
    fn matching_and_ordering_files() {
        let ex = fixtures::example1();
        let m = parse_matching(&ex, "a2 c1 # comment\n\na1 c2\n").unwrap();
        assert_eq!(write_matching(&ex, &m), "a1 c2\na2 c1\n");
        assert!(matches!(
            parse_matching(&ex, "a1 c2\na1 c2\n"),
            Err(ReferenceError::DuplicatePair { line: 2, .. })
        ));
        assert!(matches!(parse_matching(&ex, "a1\n"), Err(ReferenceError::Malformed { line: 1 })));
        assert!(matches!(
            parse_matching(&ex, "a9 c1\n"),
            Err(ReferenceError::UnknownApplicant { .. })
        ));
        let o = parse_ordering(&ex, "a1 a2 a1\n").unwrap();
        assert_eq!(write_ordering(&ex, &o), "a1 a2 a1\n");
    }
}
