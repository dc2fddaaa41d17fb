//! Text, CSV and JSON renderings of profiles and atlas rows.

use std::io::{self, Write};

use indexmap::IndexMap;
use serde_json::{json, Value};
use topodyn::zoo::AtlasRecord;
use topodyn::{DynSystem, FiniteTopology, Property, PropertyProfile, SubsetMask, Witness};

use crate::document::SystemDocument;

pub fn witness_text(t: &FiniteTopology, w: &Witness) -> String {
    match *w {
        Witness::Point(x) => t.name(x).to_string(),
        Witness::PointPair(x, y) => format!("({}, {})", t.name(x), t.name(y)),
        Witness::OpenSet(u) | Witness::ClosedSet(u) => t.format_set(u),
        Witness::OpenPair(u, v) => format!("({}, {})", t.format_set(u), t.format_set(v)),
        Witness::Bound(s) => format!("s={s}"),
    }
}

fn names(t: &FiniteTopology, s: SubsetMask) -> Vec<&str> {
    s.iter().map(|x| t.name(x)).collect()
}

pub fn profile_json(sys: &DynSystem, profile: &PropertyProfile) -> Value {
    let t = sys.topology();
    let properties: IndexMap<&str, Value> = profile
        .iter()
        .map(|(p, v)| {
            let witness = v.witness.as_ref().map(|w| witness_text(t, w));
            (p.name(), json!({ "holds": v.holds, "witness": witness }))
        })
        .collect();
    json!({
        "points": t.names(),
        "properties": properties,
        "hypercyclic_points": names(t, topodyn::hypercyclic_points(sys)),
    })
}

pub fn write_profile_csv<W: Write>(
    out: W,
    sys: &DynSystem,
    profile: &PropertyProfile,
) -> io::Result<()> {
    let t = sys.topology();
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["property", "holds", "witness"])?;
    for (p, v) in profile.iter() {
        let witness = v
            .witness
            .as_ref()
            .map(|w| witness_text(t, w))
            .unwrap_or_default();
        w.write_record([p.name(), bit(v.holds), &witness])?;
    }
    w.flush()
}

pub fn write_profile_text<W: Write>(
    mut out: W,
    sys: &DynSystem,
    profile: &PropertyProfile,
) -> io::Result<()> {
    let t = sys.topology();
    writeln!(out, "system: {sys}")?;
    let width = Property::ALL
        .iter()
        .map(|p| p.name().len())
        .max()
        .unwrap_or(0);
    for (p, v) in profile.iter() {
        let answer = if v.holds { "yes" } else { "no" };
        match &v.witness {
            Some(w) => writeln!(
                out,
                "{:width$}  {answer:3}  {}",
                p.name(),
                witness_text(t, w)
            )?,
            None => writeln!(out, "{:width$}  {answer}", p.name())?,
        }
    }
    writeln!(
        out,
        "hypercyclic points: {}",
        t.format_set(topodyn::hypercyclic_points(sys))
    )
}

fn bit(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

/// `{};{a,b};{a,b,c}`
pub fn opens_cell(t: &FiniteTopology) -> String {
    t.opens()
        .iter()
        .map(|&u| t.format_set(u))
        .collect::<Vec<_>>()
        .join(";")
}

/// `a>c,b>c,c>c`
pub fn map_cell(sys: &DynSystem) -> String {
    let t = sys.topology();
    (0..t.n())
        .map(|x| format!("{}>{}", t.name(x), t.name(sys.map().apply(x))))
        .collect::<Vec<_>>()
        .join(",")
}

/// Column order of atlas files. Profile bits follow `Property::ALL`.
pub fn atlas_header() -> Vec<&'static str> {
    let mut h = vec!["index", "topology", "map", "key"];
    h.extend(Property::ALL.iter().map(|p| p.name()));
    h
}

pub fn atlas_csv_row(rec: &AtlasRecord) -> Vec<String> {
    let mut row = vec![
        rec.index.to_string(),
        opens_cell(rec.system.topology()),
        map_cell(&rec.system),
        rec.key.to_string(),
    ];
    row.extend(rec.profile.bits().iter().map(|&b| bit(b).to_string()));
    row
}

pub fn atlas_json_row(rec: &AtlasRecord) -> Value {
    let doc = SystemDocument::from_system(&rec.system);
    let profile: IndexMap<&str, bool> = rec
        .profile
        .iter()
        .map(|(p, v)| (p.name(), v.holds))
        .collect();
    json!({
        "index": rec.index,
        "key": rec.key.to_string(),
        "points": doc.points,
        "opens": doc.opens,
        "map": doc.map,
        "profile": profile,
    })
}
