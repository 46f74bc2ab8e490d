//! The kolam file format and string parsers shared by the CLI, the service
//! and the fuzz targets.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::enumeration::Kolam;
use crate::error::{Error, Result};
use crate::feasibility::{PartialPlacement, TileMultiset};
use crate::template::TemplateShape;

pub const FORMAT_VERSION: u32 = 1;

/// `{"version":1,"template":{"variant","k","l"},"crossings":"0101..."}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KolamFile {
    pub version: u32,
    pub template: TemplateShape,
    pub crossings: String,
}

impl KolamFile {
    pub fn from_kolam(kolam: &Kolam) -> KolamFile {
        KolamFile { version: FORMAT_VERSION, template: kolam.template().shape(), crossings: kolam.crossing_string() }
    }

    pub fn to_kolam(&self) -> Result<Kolam> {
        if self.version != FORMAT_VERSION {
            return Err(Error::Parse(format!("unsupported version {}", self.version)));
        }
        let t = Arc::new(self.template.build()?);
        let crossings = parse_crossings(&self.crossings)?;
        Kolam::new(t, crossings)
    }
}

/// Parses a `0`/`1` string.
pub fn parse_crossings(s: &str) -> Result<Vec<bool>> {
    s.bytes()
        .map(|b| match b {
            b'0' => Ok(false),
            b'1' => Ok(true),
            _ => Err(Error::Parse(format!("crossing string contains {:?}", b as char))),
        })
        .collect()
}

pub fn parse_kolam(s: &str) -> Result<Kolam> {
    serde_json::from_str::<KolamFile>(s)?.to_kolam()
}

pub fn serialize_kolam(kolam: &Kolam) -> String {
    serde_json::to_string(&KolamFile::from_kolam(kolam)).expect("kolam files always serialize")
}

pub fn parse_multiset(s: &str) -> Result<TileMultiset> {
    Ok(serde_json::from_str(s)?)
}

pub fn parse_partial(s: &str) -> Result<PartialPlacement> {
    Ok(serde_json::from_str(s)?)
}
