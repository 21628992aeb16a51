//! Rack, hom and group arguments: a file path or `@name` for a bundled
//! example.

use std::path::Path;

use qcover_core::corpus;
use qcover_core::io::{load_group, load_hom, load_rack, parse_group};
use qcover_core::{Error, FiniteRack, RackHom, Result};

pub type Group = (Vec<String>, Vec<Vec<usize>>);

fn unknown(kind: &str, name: &str, known: &[&str]) -> Error {
    Error::Io(format!("no bundled {kind} @{name} (known: {})", known.join(", ")))
}

pub fn rack(arg: &str, row_acts: bool) -> Result<FiniteRack> {
    match arg.strip_prefix('@') {
        Some(name) => {
            let racks = corpus::racks();
            let known: Vec<&str> = racks.iter().map(|(n, _)| *n).collect();
            racks
                .iter()
                .find(|(n, _)| *n == name)
                .map(|(_, r)| r.clone())
                .ok_or_else(|| unknown("rack", name, &known))
        }
        None => load_rack(Path::new(arg), row_acts),
    }
}

pub fn hom(arg: &str) -> Result<RackHom> {
    match arg.strip_prefix('@') {
        Some(name) => corpus::hom(name).ok_or_else(|| unknown("map", name, &["eta_qabs", "r3_to_1", "rack6_to_2"])),
        None => load_hom(Path::new(arg)),
    }
}

pub fn group(arg: &str) -> Result<Group> {
    let (labels, _, cayley) = match arg {
        "@s3" => parse_group(corpus::S3_JSON)?,
        _ if arg.starts_with('@') => return Err(unknown("group", &arg[1..], &["s3"])),
        _ => load_group(Path::new(arg))?,
    };
    Ok((labels, cayley))
}

/// An element given by label, or by index when no label matches.
pub fn element(rack: &FiniteRack, arg: &str) -> Result<usize> {
    rack.index_of(arg)
        .or_else(|| arg.parse().ok().filter(|&i| i < rack.order()))
        .ok_or_else(|| Error::Parse(format!("no element {arg:?}")))
}
