//! The built-in example racks and maps.

use std::path::Path;

use crate::hom::RackHom;
use crate::io::{parse_group, parse_hom, parse_rack};
use crate::rack::FiniteRack;

pub const QABS_JSON: &str = include_str!("../data/qabs.json");
pub const RACK6_JSON: &str = include_str!("../data/rack6.json");
pub const R3_JSON: &str = include_str!("../data/r3.json");
pub const S3_JSON: &str = include_str!("../data/s3.json");
pub const T1_JSON: &str = include_str!("../data/t1.json");
pub const T2_JSON: &str = include_str!("../data/t2.json");

/// Directory holding the JSON files, for tools that want paths.
pub fn data_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/data"))
}

/// Three-element involutive quandle with `a`, `b` swapped by `s`.
pub fn qabs() -> FiniteRack {
    parse_rack(QABS_JSON, false).expect("bundled rack")
}

/// Six-element involutive rack whose letters act alike.
pub fn rack6() -> FiniteRack {
    parse_rack(RACK6_JSON, false).expect("bundled rack")
}

/// Dihedral quandle of order 3.
pub fn r3() -> FiniteRack {
    parse_rack(R3_JSON, false).expect("bundled rack")
}

pub fn conj_s3() -> FiniteRack {
    let (labels, _, cayley) = parse_group(S3_JSON).expect("bundled group");
    FiniteRack::conj_of_group(&cayley, labels).expect("bundled group")
}

fn t(json: &str) -> FiniteRack {
    parse_rack(json, false).expect("bundled rack")
}

/// `qabs → π₀(qabs)`, sending `a, b` to `x` and `s` to `s`.
pub fn eta_qabs() -> RackHom {
    RackHom::new(qabs(), t(T2_JSON), vec![0, 0, 1]).expect("bundled map")
}

/// Letters to `x`, numbers to `s`.
pub fn rack6_to_t2() -> RackHom {
    RackHom::new(rack6(), t(T2_JSON), vec![0, 0, 0, 0, 1, 1]).expect("bundled map")
}

pub fn r3_to_point() -> RackHom {
    RackHom::to_terminal(&r3())
}

/// Every bundled rack, by name.
pub fn racks() -> Vec<(&'static str, FiniteRack)> {
    vec![
        ("qabs", qabs()),
        ("rack6", rack6()),
        ("r3", r3()),
        ("s3", conj_s3()),
        ("t1", t(T1_JSON)),
        ("t2", t(T2_JSON)),
    ]
}

/// Loads a bundled hom file by name, resolving its rack references.
pub fn hom(name: &str) -> Option<RackHom> {
    let text = match name {
        "eta_qabs" => include_str!("../data/hom_eta_qabs.json"),
        "r3_to_1" => include_str!("../data/hom_r3_to_1.json"),
        "rack6_to_2" => include_str!("../data/hom_rack6_to_2.json"),
        _ => return None,
    };
    parse_hom(text, data_dir()).ok()
}
