//! The shipped polytope files parse, round-trip byte-identically as
//! structures, and agree with the built-in instance catalog.

use std::path::PathBuf;

use ehrhart::corpus::{self, PolytopeFile};
use ehrhart::exactgeom::LatticePolytope;
use ehrhart::Int;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

#[test]
fn every_instance_has_a_file_and_round_trips() {
    for inst in corpus::named_instances() {
        let path = corpus_dir().join(format!("{}.json", inst.name));
        let text = std::fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let file: PolytopeFile = serde_json::from_str(&text).unwrap();
        assert_eq!(file.name, inst.name);

        let reserialized = serde_json::to_string(&file).unwrap();
        let reparsed: PolytopeFile = serde_json::from_str(&reserialized).unwrap();
        assert_eq!(file, reparsed);

        let pts: Vec<Vec<Int>> = file
            .vertices
            .iter()
            .map(|v| v.iter().map(|&x| Int::from(x)).collect())
            .collect();
        let p = LatticePolytope::from_points(&pts).unwrap();
        assert_eq!(p.dim, file.dim);
        assert_eq!(p.vertices, inst.polytope.vertices, "{}", inst.name);
        assert_eq!(p.facets, inst.polytope.facets, "{}", inst.name);
    }
}

#[test]
fn no_stray_files_in_corpus_dir() {
    let names: Vec<String> = corpus::named_instances()
        .into_iter()
        .map(|i| format!("{}.json", i.name))
        .collect();
    for entry in std::fs::read_dir(corpus_dir()).unwrap() {
        let file_name = entry.unwrap().file_name().into_string().unwrap();
        assert!(names.contains(&file_name), "unexpected file {file_name}");
    }
}
