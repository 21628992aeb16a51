//! JSON formats for racks, homomorphisms and groups.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hom::RackHom;
use crate::rack::{CayleyGroup, FiniteRack};

/// `{"name", "elements", "table"}` with `table[i][j]` the index of
/// `elements[i] ◁ elements[j]`. With `row_acts` the table is read
/// transposed: `table[j][i]` is `elements[i] ◁ elements[j]`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RackFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub elements: Vec<String>,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub row_acts: bool,
}

impl RackFile {
    pub fn from_rack(name: Option<&str>, rack: &FiniteRack) -> Self {
        RackFile {
            name: name.map(str::to_string),
            elements: rack.labels().to_vec(),
            table: rack.table(),
            row_acts: false,
        }
    }

    /// Validates the table. `force_row_acts` overrides the file's own flag.
    pub fn into_rack(self, force_row_acts: bool) -> Result<FiniteRack> {
        if self.row_acts || force_row_acts {
            FiniteRack::validate_row_acts(&self.table, self.elements)
        } else {
            FiniteRack::validate(&self.table, self.elements)
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RackRef {
    Path(String),
    Inline(RackFile),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HomFile {
    pub dom: RackRef,
    pub cod: RackRef,
    pub map: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupFile {
    pub elements: Vec<String>,
    pub cayley: Vec<Vec<usize>>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

pub fn parse_rack(text: &str, row_acts: bool) -> Result<FiniteRack> {
    parse::<RackFile>(text, "rack")?.into_rack(row_acts)
}

pub fn load_rack(path: &Path, row_acts: bool) -> Result<FiniteRack> {
    parse_rack(&read(path)?, row_acts)
        .map_err(|e| match e {
            Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
            other => other,
        })
}

fn resolve(r: RackRef, base: &Path) -> Result<FiniteRack> {
    match r {
        RackRef::Inline(f) => f.into_rack(false),
        RackRef::Path(p) => {
            let p = PathBuf::from(p);
            load_rack(&if p.is_absolute() { p } else { base.join(p) }, false)
        }
    }
}

/// Parses a homomorphism; relative rack paths resolve against `base`.
pub fn parse_hom(text: &str, base: &Path) -> Result<RackHom> {
    let f: HomFile = parse(text, "hom")?;
    let dom = resolve(f.dom, base)?;
    let cod = resolve(f.cod, base)?;
    RackHom::new(dom, cod, f.map)
}

pub fn load_hom(path: &Path) -> Result<RackHom> {
    let base = path.parent().unwrap_or(Path::new("."));
    parse_hom(&read(path)?, base)
}

pub fn parse_group(text: &str) -> Result<(Vec<String>, CayleyGroup, Vec<Vec<usize>>)> {
    let g: GroupFile = parse(text, "group")?;
    if g.elements.len() != g.cayley.len() {
        return Err(Error::Shape(format!(
            "{} elements for a Cayley table of order {}",
            g.elements.len(),
            g.cayley.len()
        )));
    }
    let group = CayleyGroup::new(&g.cayley)?;
    Ok((g.elements, group, g.cayley))
}

pub fn load_group(path: &Path) -> Result<(Vec<String>, CayleyGroup, Vec<Vec<usize>>)> {
    parse_group(&read(path)?)
}

pub fn rack_to_json(name: Option<&str>, rack: &FiniteRack) -> String {
    serde_json::to_string_pretty(&RackFile::from_rack(name, rack)).expect("rack serializes")
}
