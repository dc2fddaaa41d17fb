//! The on-disk form of a system: point names, open sets and the map, all by
//! name.

use std::collections::HashMap;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;
use topodyn::{DynSystem, FiniteTopology, MapError, SelfMap, SubsetMask, TopologyError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDocument {
    pub points: Vec<String>,
    #[serde(default)]
    pub opens: Vec<Vec<String>>,
    pub map: IndexMap<String, String>,
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("cannot parse system document: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("the document lists no points")]
    NoPoints,
    #[error("point `{0}` is listed twice")]
    DuplicatePoint(String),
    #[error("{place} mentions `{name}`, which is not a listed point")]
    UnknownPoint { place: String, name: String },
    #[error("map has no image for `{0}`")]
    MapNotTotal(String),
    #[error("{0}")]
    Topology(String),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// A parsed document together with what was filled in on the way.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub system: DynSystem,
    pub inserted_empty: bool,
    pub inserted_full: bool,
}

impl SystemDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_system(sys: &DynSystem) -> Self {
        let t = sys.topology();
        let names_of = |s: SubsetMask| s.iter().map(|x| t.name(x).to_string()).collect();
        SystemDocument {
            points: t.names().to_vec(),
            opens: t.opens().iter().map(|&u| names_of(u)).collect(),
            map: (0..t.n())
                .map(|x| {
                    (
                        t.name(x).to_string(),
                        t.name(sys.map().apply(x)).to_string(),
                    )
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents always serialize")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    pub fn load(&self) -> Result<Loaded, DocumentError> {
        if self.points.is_empty() {
            return Err(DocumentError::NoPoints);
        }
        let mut index = HashMap::new();
        for (i, p) in self.points.iter().enumerate() {
            if index.insert(p.as_str(), i).is_some() {
                return Err(DocumentError::DuplicatePoint(p.clone()));
            }
        }
        let lookup = |place: &str, name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| DocumentError::UnknownPoint {
                    place: place.to_string(),
                    name: name.to_string(),
                })
        };

        let n = self.points.len();
        if n > topodyn::MAX_POINTS {
            return Err(DocumentError::Topology(
                TopologyError::TooManyPoints(n).to_string(),
            ));
        }
        let mut family = Vec::with_capacity(self.opens.len());
        for (k, open) in self.opens.iter().enumerate() {
            let mut u = SubsetMask::EMPTY;
            for name in open {
                u.insert(lookup(&format!("open set #{}", k + 1), name)?);
            }
            family.push(u);
        }
        let full = SubsetMask::full(n);
        let inserted_empty = !family.contains(&SubsetMask::EMPTY);
        let inserted_full = !family.contains(&full);

        let mut image = vec![None; n];
        for (from, to) in &self.map {
            let x = lookup("map", from)?;
            let y = lookup("map", to)?;
            image[x] = Some(y);
        }
        let image = image
            .into_iter()
            .enumerate()
            .map(|(x, y)| y.ok_or_else(|| DocumentError::MapNotTotal(self.points[x].clone())))
            .collect::<Result<Vec<_>, _>>()?;

        let names = self.points.clone();
        let topology = FiniteTopology::new(n, &family)
            .map_err(|e| DocumentError::Topology(describe_topology_error(&names, &e)))?
            .with_names(names)
            .expect("one name per point");
        let system = DynSystem::new(topology, SelfMap::new(image)?)?;
        Ok(Loaded {
            system,
            inserted_empty,
            inserted_full,
        })
    }
}

fn format_names(names: &[String], s: SubsetMask) -> String {
    let inner: Vec<&str> = s.iter().map(|x| names[x].as_str()).collect();
    format!("{{{}}}", inner.join(","))
}

/// Renders a topology error with point names instead of bit masks.
pub fn describe_topology_error(names: &[String], e: &TopologyError) -> String {
    match *e {
        TopologyError::NotUnionClosed(u, v) => format!(
            "NotUnionClosed: {} ∪ {} = {} is not open",
            format_names(names, u),
            format_names(names, v),
            format_names(names, u | v)
        ),
        TopologyError::NotIntersectionClosed(u, v) => format!(
            "NotIntersectionClosed: {} ∩ {} = {} is not open",
            format_names(names, u),
            format_names(names, v),
            format_names(names, u & v)
        ),
        ref other => other.to_string(),
    }
}

pub fn parse_system(text: &str) -> Result<Loaded, DocumentError> {
    SystemDocument::parse(text)?.load()
}
