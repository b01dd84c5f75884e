//! Versioned JSON problem files.

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RectFile {
    pub schema: u32,
    pub dims: usize,
    pub chamber_counts: Vec<u32>,
    pub cost_coeffs: Vec<f64>,
    pub budget: f64,
}

/// A side count, or the string `"circle"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SidesField {
    Count(u32),
    Named(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolygonFile {
    pub schema: u32,
    pub pens: u64,
    #[serde(default)]
    pub sides: Option<SidesField>,
    #[serde(default)]
    pub perimeter: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpiralFile {
    pub schema: u32,
    pub pens: u64,
    #[serde(default)]
    pub sides: Option<u32>,
    #[serde(default)]
    pub perimeter: Option<f64>,
}

/// A face count, or the string `"sphere"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FacesField {
    Count(u32),
    Named(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlatonicFile {
    pub schema: u32,
    pub pens: u64,
    #[serde(default)]
    pub faces: Option<FacesField>,
    #[serde(default)]
    pub surface: Option<f64>,
}

trait Versioned {
    fn schema(&self) -> u32;
}

macro_rules! versioned {
    ($($t:ty),*) => {$(
        impl Versioned for $t {
            fn schema(&self) -> u32 {
                self.schema
            }
        }
    )*};
}

versioned!(RectFile, PolygonFile, SpiralFile, PlatonicFile);

fn parse<T: DeserializeOwned + Versioned>(text: &str) -> Result<T> {
    let value: T = serde_json::from_str(text)?;
    if value.schema() != SCHEMA_VERSION {
        bail!("unsupported schema version {} (expected {SCHEMA_VERSION})", value.schema());
    }
    Ok(value)
}

pub fn parse_rect(text: &str) -> Result<RectFile> {
    let f: RectFile = parse(text)?;
    if f.dims != f.chamber_counts.len() || f.dims != f.cost_coeffs.len() {
        bail!(
            "dims is {} but chamber_counts has {} entries and cost_coeffs has {}",
            f.dims,
            f.chamber_counts.len(),
            f.cost_coeffs.len()
        );
    }
    Ok(f)
}

pub fn parse_polygon(text: &str) -> Result<PolygonFile> {
    parse(text)
}

pub fn parse_spiral(text: &str) -> Result<SpiralFile> {
    parse(text)
}

pub fn parse_platonic(text: &str) -> Result<PlatonicFile> {
    parse(text)
}

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading spec file {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rect_file() {
        let f =
            parse_rect(r#"{"schema":1,"dims":3,"chamber_counts":[1,1,2],"cost_coeffs":[6,2,9],"budget":81}"#).unwrap();
        assert_eq!(f.cost_coeffs, vec![6.0, 2.0, 9.0]);
        let back = parse_rect(&serde_json::to_string(&f).unwrap()).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn rejects_unknown_fields_and_versions() {
        assert!(
            parse_rect(r#"{"schema":1,"dims":1,"chamber_counts":[1],"cost_coeffs":[1],"budget":1,"extra":0}"#).is_err()
        );
        assert!(parse_rect(r#"{"schema":2,"dims":1,"chamber_counts":[1],"cost_coeffs":[1],"budget":1}"#).is_err());
        assert!(parse_rect(r#"{"dims":1,"chamber_counts":[1],"cost_coeffs":[1],"budget":1}"#).is_err());
        assert!(parse_rect(r#"{"schema":1,"dims":2,"chamber_counts":[1],"cost_coeffs":[1],"budget":1}"#).is_err());
        assert!(parse_polygon(r#"{"schema":1,"pens":2,"colour":"red"}"#).is_err());
    }

    #[test]
    fn named_shapes() {
        let p = parse_polygon(r#"{"schema":1,"pens":3,"sides":"circle","perimeter":2.5}"#).unwrap();
        assert_eq!(p.sides, Some(SidesField::Named("circle".into())));
        let s = parse_platonic(r#"{"schema":1,"pens":3,"faces":12}"#).unwrap();
        assert_eq!(s.faces, Some(FacesField::Count(12)));
        assert_eq!(s.surface, None);
    }
}
