//! Line-oriented model format: parsing with line-numbered errors and the
//! canonical serialization it round-trips with.
//!
//! ```text
//! manifold genus=<n> vminus=[g1,g2,...] wminus=[...]
//! disk id=<id> side=<V|W> kind=nonsep
//! disk id=<id> side=<V|W> kind=sep ga=<gA> gb=<gB> minusa=[ids] minusb=[ids]
//! disjoint <id> <id>
//! locate <sepid> <otherid> <A|B>
//! unionsep <vid> <wid> <no | yes:g1,g2>
//! ```
//!
//! `#` starts a comment. Boundary components are listed as genera and get the
//! ids b1, b2, ... assigned in order, V side first. Declarations must precede
//! their uses; unknown keys, duplicate ids, and dangling references are
//! errors.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use thiserror::Error;

use crate::model::{
    BoundaryComponent, CompressionBodyDescriptor, DiskKind, DiskModel, PieceLabel, RelationTable,
    Side, SplittingModel, UnionSep,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

fn parse_u32(line: usize, token: &str, what: &str) -> Result<u32, ParseError> {
    token.parse::<u32>().map_err(|_| ParseError {
        line,
        message: format!("malformed {what}: {token:?}"),
    })
}

fn parse_list(line: usize, token: &str, what: &str) -> Result<Vec<String>, ParseError> {
    let inner = token
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or(ParseError {
            line,
            message: format!("{what} must be a [..] list, got {token:?}"),
        })?;
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    Ok(inner.split(',').map(str::to_string).collect())
}

fn valid_id(id: &str) -> bool {
    !id.is_empty() && id.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// key=value fields of a declaration line, rejecting unknown or repeated keys.
struct Fields<'a> {
    line: usize,
    map: BTreeMap<&'a str, &'a str>,
}

impl<'a> Fields<'a> {
    fn new(line: usize, tokens: &[&'a str], allowed: &[&str]) -> Result<Self, ParseError> {
        let mut map = BTreeMap::new();
        for tok in tokens {
            let Some((k, v)) = tok.split_once('=') else {
                return err(line, format!("expected key=value, got {tok:?}"));
            };
            if !allowed.contains(&k) {
                return err(line, format!("unknown key {k:?}"));
            }
            if map.insert(k, v).is_some() {
                return err(line, format!("repeated key {k:?}"));
            }
        }
        Ok(Fields { line, map })
    }

    fn get(&self, key: &str) -> Result<&'a str, ParseError> {
        self.map.get(key).copied().ok_or(ParseError {
            line: self.line,
            message: format!("missing key {key:?}"),
        })
    }
}

/// Parse a model from text. The result is structurally well formed; rule
/// violations are left to `SplittingModel::validate`.
pub fn parse_model(text: &str) -> Result<SplittingModel, ParseError> {
    let mut genus: Option<u32> = None;
    let mut v_minus: Vec<BoundaryComponent> = Vec::new();
    let mut w_minus: Vec<BoundaryComponent> = Vec::new();
    let mut manifold_line = 0usize;
    let mut disks: Vec<DiskModel> = Vec::new();
    let mut disk_lines: BTreeMap<String, usize> = BTreeMap::new();
    let mut relations = RelationTable::default();
    let mut disjoint_lines: BTreeMap<(String, String), usize> = BTreeMap::new();
    let mut locate_lines: BTreeMap<(String, String), usize> = BTreeMap::new();
    let mut unionsep_lines: BTreeMap<(String, String), usize> = BTreeMap::new();

    let disk_by_id = |disks: &[DiskModel], id: &str| -> Option<DiskModel> {
        disks.iter().find(|d| d.id == id).cloned()
    };

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_ascii_whitespace().collect();
        match tokens[0] {
            "manifold" => {
                if genus.is_some() {
                    return err(
                        line,
                        format!("duplicate manifold line (first at line {manifold_line})"),
                    );
                }
                let f = Fields::new(line, &tokens[1..], &["genus", "vminus", "wminus"])?;
                let n = parse_u32(line, f.get("genus")?, "genus")?;
                let mut next = 1usize;
                for (list_key, out) in [("vminus", &mut v_minus), ("wminus", &mut w_minus)] {
                    for g in parse_list(line, f.get(list_key)?, list_key)? {
                        out.push(BoundaryComponent {
                            id: format!("b{next}"),
                            genus: parse_u32(line, &g, "boundary genus")?,
                        });
                        next += 1;
                    }
                }
                genus = Some(n);
                manifold_line = line;
            }
            "disk" => {
                if genus.is_none() {
                    return err(line, "disk before manifold line");
                }
                let f = Fields::new(
                    line,
                    &tokens[1..],
                    &["id", "side", "kind", "ga", "gb", "minusa", "minusb"],
                )?;
                let id = f.get("id")?.to_string();
                if !valid_id(&id) {
                    return err(line, format!("bad disk id {id:?}"));
                }
                if let Some(first) = disk_lines.get(&id) {
                    return err(
                        line,
                        format!("duplicate disk id {id} (first declared at line {first})"),
                    );
                }
                let side = match f.get("side")? {
                    "V" => Side::V,
                    "W" => Side::W,
                    s => return err(line, format!("side must be V or W, got {s:?}")),
                };
                let kind = match f.get("kind")? {
                    "nonsep" => {
                        for k in ["ga", "gb", "minusa", "minusb"] {
                            if f.map.contains_key(k) {
                                return err(line, format!("key {k:?} is only for sep disks"));
                            }
                        }
                        DiskKind::Nonsep
                    }
                    "sep" => {
                        let genus_a = parse_u32(line, f.get("ga")?, "ga")?;
                        let genus_b = parse_u32(line, f.get("gb")?, "gb")?;
                        let side_minus = if side == Side::V { &v_minus } else { &w_minus };
                        let read_minus = |key: &str| -> Result<BTreeSet<String>, ParseError> {
                            let mut set = BTreeSet::new();
                            for bid in parse_list(line, f.get(key)?, key)? {
                                if !side_minus.iter().any(|b| b.id == bid) {
                                    return err(
                                        line,
                                        format!("{key} references unknown boundary {bid:?}"),
                                    );
                                }
                                if !set.insert(bid.clone()) {
                                    return err(line, format!("{key} repeats {bid:?}"));
                                }
                            }
                            Ok(set)
                        };
                        let minus_a = read_minus("minusa")?;
                        let minus_b = read_minus("minusb")?;
                        check_split(
                            line,
                            &id,
                            genus.unwrap(),
                            genus_a,
                            &minus_a,
                            genus_b,
                            &minus_b,
                            side_minus,
                        )?;
                        DiskKind::Sep {
                            genus_a,
                            minus_a,
                            genus_b,
                            minus_b,
                        }
                    }
                    k => return err(line, format!("kind must be nonsep or sep, got {k:?}")),
                };
                disk_lines.insert(id.clone(), line);
                disks.push(DiskModel { id, side, kind });
            }
            "disjoint" => {
                if tokens.len() != 3 {
                    return err(line, "usage: disjoint <id> <id>");
                }
                let (a, b) = (tokens[1], tokens[2]);
                for id in [a, b] {
                    if !disk_lines.contains_key(id) {
                        return err(line, format!("disjoint references unknown disk {id:?}"));
                    }
                }
                if a == b {
                    return err(line, format!("disk {a} cannot be disjoint from itself"));
                }
                let key = if a <= b {
                    (a.to_string(), b.to_string())
                } else {
                    (b.to_string(), a.to_string())
                };
                if let Some(first) = disjoint_lines.get(&key) {
                    return err(line, format!("duplicate disjoint (first at line {first})"));
                }
                disjoint_lines.insert(key, line);
                relations.add_disjoint(a, b);
            }
            "locate" => {
                if tokens.len() != 4 {
                    return err(line, "usage: locate <sepid> <otherid> <A|B>");
                }
                let (d, e) = (tokens[1], tokens[2]);
                let Some(disk) = disk_by_id(&disks, d) else {
                    return err(line, format!("locate references unknown disk {d:?}"));
                };
                if !disk_lines.contains_key(e) {
                    return err(line, format!("locate references unknown disk {e:?}"));
                }
                if !disk.kind.is_sep() {
                    return err(line, format!("locate requires sep disk, {d} is nonsep"));
                }
                if !relations.is_disjoint(d, e) {
                    return err(
                        line,
                        format!("locate {d} {e} without a disjoint declaration"),
                    );
                }
                let label = match tokens[3] {
                    "A" => PieceLabel::A,
                    "B" => PieceLabel::B,
                    t => return err(line, format!("piece label must be A or B, got {t:?}")),
                };
                let key = (d.to_string(), e.to_string());
                if let Some(first) = locate_lines.get(&key) {
                    return err(line, format!("duplicate locate (first at line {first})"));
                }
                locate_lines.insert(key.clone(), line);
                relations.locate.insert(key, label);
            }
            "unionsep" => {
                if tokens.len() != 4 {
                    return err(line, "usage: unionsep <vid> <wid> <no | yes:g1,g2>");
                }
                let (v, w) = (tokens[1], tokens[2]);
                let (Some(dv), Some(dw)) = (disk_by_id(&disks, v), disk_by_id(&disks, w)) else {
                    return err(line, "unionsep references an unknown disk");
                };
                if dv.side != Side::V || dw.side != Side::W {
                    return err(
                        line,
                        format!("unionsep {v} {w} must pair a V disk with a W disk"),
                    );
                }
                if dv.kind.is_sep() || dw.kind.is_sep() {
                    return err(line, format!("unionsep {v} {w} requires two nonsep disks"));
                }
                if !relations.is_disjoint(v, w) {
                    return err(
                        line,
                        format!("unionsep {v} {w} without a disjoint declaration"),
                    );
                }
                let value = match tokens[3] {
                    "no" => UnionSep::NotSeparating,
                    t => {
                        let Some(parts) = t.strip_prefix("yes:") else {
                            return err(line, format!("expected no or yes:g1,g2, got {t:?}"));
                        };
                        let Some((g1, g2)) = parts.split_once(',') else {
                            return err(line, format!("expected yes:g1,g2, got {t:?}"));
                        };
                        UnionSep::Separating(parse_u32(line, g1, "g1")?, parse_u32(line, g2, "g2")?)
                    }
                };
                let key = (v.to_string(), w.to_string());
                if let Some(first) = unionsep_lines.get(&key) {
                    return err(line, format!("duplicate unionsep (first at line {first})"));
                }
                unionsep_lines.insert(key.clone(), line);
                relations.unionsep.insert(key, value);
            }
            other => return err(line, format!("unknown declaration {other:?}")),
        }
    }

    let Some(genus) = genus else {
        return err(0, "missing manifold line");
    };

    // completeness, anchored at the disjoint declaration
    for ((a, b), &line) in &disjoint_lines {
        let da = disk_by_id(&disks, a).expect("declared");
        let db = disk_by_id(&disks, b).expect("declared");
        for (x, y) in [(&da, &db), (&db, &da)] {
            if x.kind.is_sep() && !relations.locate.contains_key(&(x.id.clone(), y.id.clone())) {
                return err(line, format!("missing locate {} {}", x.id, y.id));
            }
        }
        if da.side != db.side && !da.kind.is_sep() && !db.kind.is_sep() {
            let (v, w) = if da.side == Side::V { (a, b) } else { (b, a) };
            if !relations.unionsep.contains_key(&(v.clone(), w.clone())) {
                return err(line, format!("missing unionsep {v} {w}"));
            }
        }
    }

    SplittingModel::new(
        genus,
        CompressionBodyDescriptor::new(genus, v_minus),
        CompressionBodyDescriptor::new(genus, w_minus),
        disks,
        relations,
    )
    .map_err(|message| ParseError {
        line: manifold_line,
        message,
    })
}

#[allow(clippy::too_many_arguments)]
fn check_split(
    line: usize,
    id: &str,
    genus: u32,
    genus_a: u32,
    minus_a: &BTreeSet<String>,
    genus_b: u32,
    minus_b: &BTreeSet<String>,
    side_minus: &[BoundaryComponent],
) -> Result<(), ParseError> {
    if genus_a + genus_b != genus {
        return err(
            line,
            format!("disk {id}: split {genus_a}+{genus_b} != genus {genus}"),
        );
    }
    if genus_a < 1 || genus_b < 1 {
        return err(
            line,
            format!("disk {id}: split pieces must have genus >= 1"),
        );
    }
    let declared: BTreeSet<&String> = minus_a.iter().chain(minus_b.iter()).collect();
    if declared.len() != minus_a.len() + minus_b.len() || declared.len() != side_minus.len() {
        return err(
            line,
            format!("disk {id}: minusa/minusb must partition the side's negative boundary"),
        );
    }
    let total = |ids: &BTreeSet<String>| -> u32 {
        side_minus
            .iter()
            .filter(|b| ids.contains(&b.id))
            .map(|b| b.genus)
            .sum()
    };
    if genus_a < total(minus_a) || genus_b < total(minus_b) {
        return err(
            line,
            format!("disk {id}: a piece's genus is below its negative boundary total"),
        );
    }
    Ok(())
}

/// Canonical text form: manifold line, disks sorted by id, then relations in
/// sorted order. `parse_model(serialize(m))` reconstructs `m` exactly.
pub fn serialize(model: &SplittingModel) -> String {
    let mut out = String::new();
    let genera = |side: Side| -> String {
        model
            .body(side)
            .minus
            .iter()
            .map(|b| b.genus.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    out.push_str(&format!(
        "manifold genus={} vminus=[{}] wminus=[{}]\n",
        model.genus(),
        genera(Side::V),
        genera(Side::W)
    ));
    for d in model.disks() {
        match &d.kind {
            DiskKind::Nonsep => {
                out.push_str(&format!("disk id={} side={} kind=nonsep\n", d.id, d.side));
            }
            DiskKind::Sep {
                genus_a,
                minus_a,
                genus_b,
                minus_b,
            } => {
                let list = |s: &BTreeSet<String>| s.iter().cloned().collect::<Vec<_>>().join(",");
                out.push_str(&format!(
                    "disk id={} side={} kind=sep ga={} gb={} minusa=[{}] minusb=[{}]\n",
                    d.id,
                    d.side,
                    genus_a,
                    genus_b,
                    list(minus_a),
                    list(minus_b)
                ));
            }
        }
    }
    for (a, b) in &model.relations().disjoint {
        out.push_str(&format!("disjoint {a} {b}\n"));
    }
    for ((d, e), label) in &model.relations().locate {
        out.push_str(&format!("locate {d} {e} {label}\n"));
    }
    for ((v, w), u) in &model.relations().unionsep {
        match u {
            UnionSep::NotSeparating => out.push_str(&format!("unionsep {v} {w} no\n")),
            UnionSep::Separating(g1, g2) => {
                out.push_str(&format!("unionsep {v} {w} yes:{g1},{g2}\n"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const GX3: &str = crate::model::tests::GX3;

    #[test]
    fn parses_gx3() {
        let m = parse_model(GX3).unwrap();
        assert_eq!(m.genus(), 3);
        assert_eq!(m.disk_count(), 3);
        assert_eq!(
            m.weak_reducing_pairs(),
            vec![
                ("V1".to_string(), "W1".to_string()),
                ("V2".to_string(), "W1".to_string())
            ]
        );
    }

    #[test]
    fn duplicate_disk_id_reports_both_lines() {
        let text = "\
manifold genus=3 vminus=[] wminus=[]
disk id=V1 side=V kind=nonsep
disk id=V1 side=V kind=nonsep
";
        let e = parse_model(text).unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("line 2"), "{}", e.message);
    }

    #[test]
    fn locate_on_nonsep_disk_is_an_error() {
        let text = "\
manifold genus=3 vminus=[] wminus=[]
disk id=V1 side=V kind=nonsep
disk id=W1 side=W kind=nonsep
disjoint V1 W1
locate V1 W1 A
";
        let e = parse_model(text).unwrap_err();
        assert_eq!(e.line, 5);
        assert!(e.message.contains("locate requires sep disk"));
    }

    #[test]
    fn missing_unionsep_is_anchored_at_the_disjoint_line() {
        let text = "\
manifold genus=3 vminus=[] wminus=[]
disk id=V1 side=V kind=nonsep
disk id=W1 side=W kind=nonsep
disjoint V1 W1
";
        let e = parse_model(text).unwrap_err();
        assert_eq!(e.line, 4);
        assert!(e.message.contains("missing unionsep"));
    }

    #[test]
    fn unknown_keys_and_declarations_are_rejected() {
        assert!(parse_model("manifold genus=3 vminus=[] wminus=[] color=red").is_err());
        assert!(parse_model("manifold genus=3 vminus=[] wminus=[]\nfrobnicate x y").is_err());
    }

    #[test]
    fn round_trips_fixtures() {
        for text in [GX3, crate::model::tests::GB4, crate::model::tests::GD4] {
            let m = parse_model(text).unwrap();
            let s = serialize(&m);
            let m2 = parse_model(&s).unwrap();
            assert_eq!(m2, m);
            assert_eq!(serialize(&m2), s);
        }
    }
}
