use std::fs;
use std::path::PathBuf;

use pomkit::envy::is_pareto_optimal;
use pomkit::format::{parse_instance, parse_matching, parse_ordering, write_instance};
use pomkit::instance::validate_ordering;
use pomkit::matching::is_feasible;

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn read(name: &str) -> String {
    fs::read_to_string(dir().join(name)).unwrap()
}

#[test]
fn every_instance_file_parses_and_round_trips() {
    let mut seen = 0;
    for entry in fs::read_dir(dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("inst") {
            continue;
        }
        let inst = parse_instance(&fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(parse_instance(&write_instance(&inst)).unwrap(), inst, "{}", path.display());
        seen += 1;
    }
    assert_eq!(seen, 8);
}

#[test]
fn orderings_and_matchings_fit_their_instances() {
    for (inst, ord) in [("table1.inst", "table1.ord"), ("example1.inst", "example1.ord")] {
        let inst = parse_instance(&read(inst)).unwrap();
        validate_ordering(&inst, &parse_ordering(&inst, &read(ord)).unwrap()).unwrap();
    }
    let ex = parse_instance(&read("example1.inst")).unwrap();
    for (name, optimal) in [("example1_mu1.match", true), ("example1_mu2.match", true), ("example1_dominated.match", false)] {
        let m = parse_matching(&ex, &read(name)).unwrap();
        is_feasible(&ex, &m).unwrap();
        assert_eq!(is_pareto_optimal(&ex, &m).unwrap().is_optimal(), optimal, "{name}");
    }
}
