//! Declarative model of a weakly reducible, unstabilized Heegaard splitting.
//!
//! A model declares the ambient genus, the negative boundary of each
//! compression body, a finite set of annotated compressing disks, and the
//! relations between them (disjointness, piece location for separating disks,
//! union separation for cross nonseparating pairs). The validator enforces the
//! consistency axioms R1-R7; it does not certify geometric realizability
//! beyond them.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Which compression body a disk lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    V,
    W,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::V => Side::W,
            Side::W => Side::V,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::V => write!(f, "V"),
            Side::W => write!(f, "W"),
        }
    }
}

/// Label of one piece of F cut along a separating disk's boundary.
/// A is always the first declared split component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PieceLabel {
    A,
    B,
}

impl PieceLabel {
    pub fn other(self) -> PieceLabel {
        match self {
            PieceLabel::A => PieceLabel::B,
            PieceLabel::B => PieceLabel::A,
        }
    }
}

impl fmt::Display for PieceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PieceLabel::A => write!(f, "A"),
            PieceLabel::B => write!(f, "B"),
        }
    }
}

/// One component of a compression body's negative boundary.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoundaryComponent {
    pub id: String,
    pub genus: u32,
}

/// Compression body described by its positive-boundary genus and negative
/// boundary components. Empty `minus` means a handlebody.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompressionBodyDescriptor {
    pub plus_genus: u32,
    pub minus: Vec<BoundaryComponent>,
}

impl CompressionBodyDescriptor {
    pub fn new(plus_genus: u32, minus: impl IntoIterator<Item = BoundaryComponent>) -> Self {
        let mut minus: Vec<BoundaryComponent> = minus.into_iter().collect();
        minus.sort();
        CompressionBodyDescriptor { plus_genus, minus }
    }

    pub fn handlebody(plus_genus: u32) -> Self {
        CompressionBodyDescriptor::new(plus_genus, [])
    }

    pub fn minus_total(&self) -> u32 {
        self.minus.iter().map(|b| b.genus).sum()
    }

    pub fn is_handlebody(&self) -> bool {
        self.minus.is_empty()
    }

    /// Trivial (a product) exactly when the negative boundary is a single
    /// component of the same genus as the positive boundary.
    pub fn is_trivial(&self) -> bool {
        self.minus.len() == 1 && self.minus[0].genus == self.plus_genus
    }
}

impl fmt::Display for CompressionBodyDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "plus:{} minus:[", self.plus_genus)?;
        for (i, b) in self.minus.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}:g{}", b.id, b.genus)?;
        }
        write!(f, "]")
    }
}

/// Annotation of a compressing disk: nonseparating, or separating with the
/// declared genus split and the partition of the side's negative boundary
/// between the two pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiskKind {
    Nonsep,
    Sep {
        genus_a: u32,
        minus_a: BTreeSet<String>,
        genus_b: u32,
        minus_b: BTreeSet<String>,
    },
}

impl DiskKind {
    pub fn is_sep(&self) -> bool {
        matches!(self, DiskKind::Sep { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiskModel {
    pub id: String,
    pub side: Side,
    pub kind: DiskKind,
}

impl DiskModel {
    /// Genus and negative-boundary ids of the given piece; separating disks only.
    pub fn piece(&self, label: PieceLabel) -> Option<(u32, &BTreeSet<String>)> {
        match &self.kind {
            DiskKind::Nonsep => None,
            DiskKind::Sep {
                genus_a,
                minus_a,
                genus_b,
                minus_b,
            } => Some(match label {
                PieceLabel::A => (*genus_a, minus_a),
                PieceLabel::B => (*genus_b, minus_b),
            }),
        }
    }

    /// The piece that is a solid torus: genus one and no negative boundary.
    pub fn solid_torus_piece(&self) -> Option<PieceLabel> {
        for label in [PieceLabel::A, PieceLabel::B] {
            if let Some((1, minus)) = self.piece(label) {
                if minus.is_empty() {
                    return Some(label);
                }
            }
        }
        None
    }
}

/// Declared union separation of the boundaries of a cross-side
/// nonseparating/nonseparating pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnionSep {
    NotSeparating,
    Separating(u32, u32),
}

/// Declared relations between disks. Keys use disk ids; disjointness is
/// stored with the lexicographically smaller id first, unionsep with the
/// V-side disk first, locate with the separating disk first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationTable {
    pub disjoint: BTreeSet<(String, String)>,
    pub locate: BTreeMap<(String, String), PieceLabel>,
    pub unionsep: BTreeMap<(String, String), UnionSep>,
}

fn norm_pair(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

impl RelationTable {
    pub fn add_disjoint(&mut self, a: &str, b: &str) {
        self.disjoint.insert(norm_pair(a, b));
    }

    pub fn is_disjoint(&self, a: &str, b: &str) -> bool {
        a != b && self.disjoint.contains(&norm_pair(a, b))
    }
}

/// Cutoff shape of a disk relative to a weak reducing partner: the piece of
/// the compression body on the far side of the disk from the partner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CutoffCategory {
    Nonsep,
    Torus,
    Hbody,
    Cbody,
}

impl fmt::Display for CutoffCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CutoffCategory::Nonsep => write!(f, "NONSEP"),
            CutoffCategory::Torus => write!(f, "TORUS"),
            CutoffCategory::Hbody => write!(f, "HBODY"),
            CutoffCategory::Cbody => write!(f, "CBODY"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("NotAWeakReducingPair: ({0},{1}) is not a disjoint cross-side pair")]
    NotAWeakReducingPair(String, String),
    #[error("no disk with id {0}")]
    NoSuchDisk(String),
    #[error("missing locate({0},{1}) entry")]
    MissingLocate(String, String),
}

/// Validator rule identifiers; see `SplittingModel::validate`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Rule {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub rule: Rule,
    pub disks: Vec<String>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}] {}",
            self.rule,
            self.disks.join(","),
            self.detail
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingModel {
    genus: u32,
    v_body: CompressionBodyDescriptor,
    w_body: CompressionBodyDescriptor,
    disks: BTreeMap<String, DiskModel>,
    relations: RelationTable,
}

impl SplittingModel {
    /// Build a model, rejecting structurally ill-formed input (bad references,
    /// bad split arithmetic, incomplete or excess relation entries). Rule
    /// violations R1-R7 are *not* checked here; see `validate`.
    pub fn new(
        genus: u32,
        v_body: CompressionBodyDescriptor,
        w_body: CompressionBodyDescriptor,
        disks: impl IntoIterator<Item = DiskModel>,
        relations: RelationTable,
    ) -> Result<Self, String> {
        let mut disk_map = BTreeMap::new();
        for d in disks {
            if disk_map.insert(d.id.clone(), d.clone()).is_some() {
                return Err(format!("duplicate disk id {}", d.id));
            }
        }
        let model = SplittingModel {
            genus,
            v_body,
            w_body,
            disks: disk_map,
            relations,
        };
        model.check_well_formed()?;
        Ok(model)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn body(&self, side: Side) -> &CompressionBodyDescriptor {
        match side {
            Side::V => &self.v_body,
            Side::W => &self.w_body,
        }
    }

    pub fn disks(&self) -> impl Iterator<Item = &DiskModel> {
        self.disks.values()
    }

    pub fn disk_ids(&self) -> impl Iterator<Item = &str> {
        self.disks.keys().map(String::as_str)
    }

    pub fn disk_count(&self) -> usize {
        self.disks.len()
    }

    pub fn disk(&self, id: &str) -> Result<&DiskModel, ModelError> {
        self.disks
            .get(id)
            .ok_or_else(|| ModelError::NoSuchDisk(id.to_string()))
    }

    pub fn relations(&self) -> &RelationTable {
        &self.relations
    }

    pub fn is_disjoint(&self, a: &str, b: &str) -> bool {
        self.relations.is_disjoint(a, b)
    }

    pub fn locate(&self, sep_id: &str, other_id: &str) -> Option<PieceLabel> {
        self.relations
            .locate
            .get(&(sep_id.to_string(), other_id.to_string()))
            .copied()
    }

    pub fn unionsep(&self, a: &str, b: &str) -> Option<UnionSep> {
        let da = self.disks.get(a)?;
        let key = if da.side == Side::V {
            (a.to_string(), b.to_string())
        } else {
            (b.to_string(), a.to_string())
        };
        self.relations.unionsep.get(&key).copied()
    }

    /// All weak reducing pairs, V-side disk first, sorted.
    pub fn weak_reducing_pairs(&self) -> Vec<(String, String)> {
        let mut pairs = Vec::new();
        for (a, b) in &self.relations.disjoint {
            let (Ok(da), Ok(db)) = (self.disk(a), self.disk(b)) else {
                continue;
            };
            match (da.side, db.side) {
                (Side::V, Side::W) => pairs.push((a.clone(), b.clone())),
                (Side::W, Side::V) => pairs.push((b.clone(), a.clone())),
                _ => {}
            }
        }
        pairs.sort();
        pairs
    }

    pub fn is_weak_reducing_pair(&self, a: &str, b: &str) -> bool {
        match (self.disks.get(a), self.disks.get(b)) {
            (Some(da), Some(db)) => da.side != db.side && self.is_disjoint(a, b),
            _ => false,
        }
    }

    /// Shape of the piece the disk cuts off away from its partner.
    pub fn cutoff_category(
        &self,
        disk_id: &str,
        partner_id: &str,
    ) -> Result<CutoffCategory, ModelError> {
        let disk = self.disk(disk_id)?;
        let partner = self.disk(partner_id)?;
        if disk.side == partner.side || !self.is_disjoint(disk_id, partner_id) {
            return Err(ModelError::NotAWeakReducingPair(
                disk_id.to_string(),
                partner_id.to_string(),
            ));
        }
        if !disk.kind.is_sep() {
            return Ok(CutoffCategory::Nonsep);
        }
        let located = self.locate(disk_id, partner_id).ok_or_else(|| {
            ModelError::MissingLocate(disk_id.to_string(), partner_id.to_string())
        })?;
        let (genus, minus) = disk
            .piece(located.other())
            .expect("sep disk has both pieces");
        Ok(if !minus.is_empty() {
            CutoffCategory::Cbody
        } else if genus == 1 {
            CutoffCategory::Torus
        } else {
            CutoffCategory::Hbody
        })
    }

    /// The declared meridian of a separating disk with a solid-torus piece:
    /// the same-side nonseparating disk located in that piece, if any.
    pub fn meridian_of(&self, sep_id: &str) -> Option<String> {
        let disk = self.disks.get(sep_id)?;
        let torus = disk.solid_torus_piece()?;
        self.disks
            .values()
            .filter(|e| {
                e.side == disk.side
                    && !e.kind.is_sep()
                    && self.is_disjoint(sep_id, &e.id)
                    && self.locate(sep_id, &e.id) == Some(torus)
            })
            .map(|e| e.id.clone())
            .next()
    }

    fn check_well_formed(&self) -> Result<(), String> {
        if self.genus < 3 {
            return Err(format!("ambient genus {} < 3", self.genus));
        }
        for (side, body) in [(Side::V, &self.v_body), (Side::W, &self.w_body)] {
            if body.plus_genus != self.genus {
                return Err(format!("{side}-body plus genus != ambient genus"));
            }
            for b in &body.minus {
                if b.genus < 1 {
                    return Err(format!("boundary component {} has genus 0", b.id));
                }
            }
            if body.plus_genus < body.minus_total() {
                return Err(format!(
                    "{side}-body genus below its negative boundary total"
                ));
            }
        }
        let minus_ids = |side: Side| -> BTreeSet<&str> {
            self.body(side)
                .minus
                .iter()
                .map(|b| b.id.as_str())
                .collect()
        };
        for d in self.disks.values() {
            if let DiskKind::Sep {
                genus_a,
                minus_a,
                genus_b,
                minus_b,
            } = &d.kind
            {
                if genus_a + genus_b != self.genus {
                    return Err(format!(
                        "disk {}: split {genus_a}+{genus_b} != ambient genus {}",
                        d.id, self.genus
                    ));
                }
                if *genus_a < 1 || *genus_b < 1 {
                    return Err(format!("disk {}: split pieces must have genus >= 1", d.id));
                }
                let side_minus = minus_ids(d.side);
                let declared: BTreeSet<&str> = minus_a
                    .iter()
                    .chain(minus_b.iter())
                    .map(String::as_str)
                    .collect();
                if declared.len() != minus_a.len() + minus_b.len() || declared != side_minus {
                    return Err(format!(
                        "disk {}: split must partition the {}-side negative boundary",
                        d.id, d.side
                    ));
                }
                let total = |ids: &BTreeSet<String>| -> u32 {
                    self.body(d.side)
                        .minus
                        .iter()
                        .filter(|b| ids.contains(&b.id))
                        .map(|b| b.genus)
                        .sum()
                };
                if *genus_a < total(minus_a) || *genus_b < total(minus_b) {
                    return Err(format!(
                        "disk {}: a piece's genus is below its negative boundary total",
                        d.id
                    ));
                }
            }
        }
        for (a, b) in &self.relations.disjoint {
            if a == b {
                return Err(format!("disk {a} declared disjoint from itself"));
            }
            if !self.disks.contains_key(a) || !self.disks.contains_key(b) {
                return Err(format!("disjoint {a} {b} references an unknown disk"));
            }
        }
        for (d, e) in self.relations.locate.keys() {
            let disk = self
                .disks
                .get(d)
                .ok_or_else(|| format!("locate references unknown disk {d}"))?;
            if !self.disks.contains_key(e) {
                return Err(format!("locate references unknown disk {e}"));
            }
            if !disk.kind.is_sep() {
                return Err(format!("locate requires sep disk, {d} is nonsep"));
            }
            if !self.relations.is_disjoint(d, e) {
                return Err(format!("locate {d} {e} without a disjoint declaration"));
            }
        }
        for (v, w) in self.relations.unionsep.keys() {
            let (dv, dw) = match (self.disks.get(v), self.disks.get(w)) {
                (Some(dv), Some(dw)) => (dv, dw),
                _ => return Err(format!("unionsep {v} {w} references an unknown disk")),
            };
            if dv.side != Side::V || dw.side != Side::W {
                return Err(format!("unionsep {v} {w} must pair a V disk with a W disk"));
            }
            if dv.kind.is_sep() || dw.kind.is_sep() {
                return Err(format!("unionsep {v} {w} requires two nonsep disks"));
            }
            if !self.relations.is_disjoint(v, w) {
                return Err(format!("unionsep {v} {w} without a disjoint declaration"));
            }
        }
        // completeness: locate exactly where the first member separates,
        // unionsep exactly on cross nonsep/nonsep pairs
        for (a, b) in &self.relations.disjoint {
            let (da, db) = (&self.disks[a], &self.disks[b]);
            for (x, y) in [(da, db), (db, da)] {
                if x.kind.is_sep() && self.locate(&x.id, &y.id).is_none() {
                    return Err(format!("missing locate {} {}", x.id, y.id));
                }
            }
            if da.side != db.side && !da.kind.is_sep() && !db.kind.is_sep() {
                let (v, w) = if da.side == Side::V { (a, b) } else { (b, a) };
                if !self
                    .relations
                    .unionsep
                    .contains_key(&(v.clone(), w.clone()))
                {
                    return Err(format!("missing unionsep {v} {w}"));
                }
            }
        }
        Ok(())
    }

    /// Check rules R1-R7. An empty result means the model is valid; the rules
    /// are necessary conditions from the source geometry, so a valid model is
    /// consistent but not certified realizable.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut push = |rule: Rule, disks: Vec<&str>, detail: String| {
            out.push(Violation {
                rule,
                disks: disks.into_iter().map(str::to_string).collect(),
                detail,
            });
        };

        for (v_id, w_id) in self.weak_reducing_pairs() {
            let dv = &self.disks[&v_id];
            let dw = &self.disks[&w_id];
            for (d, e) in [(dv, dw), (dw, dv)] {
                if !d.kind.is_sep() {
                    continue;
                }
                let label = self.locate(&d.id, &e.id).expect("well-formed");
                let (genus, _) = d.piece(label).expect("sep");
                // R1: the piece holding the partner boundary has genus >= 2
                if genus < 2 {
                    push(
                        Rule::R1,
                        vec![&d.id, &e.id],
                        format!("partner located in a genus-{genus} piece"),
                    );
                }
                // R2: a solid-torus piece misses every cross-side boundary
                if let Some(torus) = d.solid_torus_piece() {
                    if label == torus {
                        push(
                            Rule::R2,
                            vec![&d.id, &e.id],
                            "cross-side disk located in the solid-torus piece".into(),
                        );
                    }
                }
            }
            // R3: both separating -> the inner thin level has genus >= 1
            if dv.kind.is_sep() && dw.kind.is_sep() {
                let mv = self
                    .locate(&v_id, &w_id)
                    .and_then(|l| dv.piece(l))
                    .map(|(g, _)| g)
                    .unwrap_or(0);
                let mw = self
                    .locate(&w_id, &v_id)
                    .and_then(|l| dw.piece(l))
                    .map(|(g, _)| g)
                    .unwrap_or(0);
                if mv + mw < self.genus + 1 {
                    push(
                        Rule::R3,
                        vec![&v_id, &w_id],
                        format!("located genera {mv}+{mw} < {}", self.genus + 1),
                    );
                }
            }
            // R4: a separating union must split the remaining genus n-2 into
            // two positive parts
            if !dv.kind.is_sep() && !dw.kind.is_sep() {
                if let Some(UnionSep::Separating(g1, g2)) = self.unionsep(&v_id, &w_id) {
                    if g1 < 1 || g2 < 1 || g1 + g2 != self.genus - 2 {
                        push(
                            Rule::R4,
                            vec![&v_id, &w_id],
                            format!(
                                "separating union ({g1},{g2}) needs parts >= 1 summing to {}",
                                self.genus - 2
                            ),
                        );
                    }
                }
            }
        }

        // R5: inside a solid-torus piece there is room for exactly one disk,
        // its meridian
        for d in self.disks.values() {
            let Some(torus) = d.solid_torus_piece() else {
                continue;
            };
            let mut meridians = Vec::new();
            for e in self.disks.values() {
                if e.side != d.side
                    || e.id == d.id
                    || !self.is_disjoint(&d.id, &e.id)
                    || self.locate(&d.id, &e.id) != Some(torus)
                {
                    continue;
                }
                if e.kind.is_sep() {
                    push(
                        Rule::R5,
                        vec![&d.id, &e.id],
                        "sep disk inside a solid-torus piece is isotopic to the cutting disk"
                            .into(),
                    );
                } else {
                    meridians.push(e.id.clone());
                }
            }
            if meridians.len() > 1 {
                push(
                    Rule::R5,
                    std::iter::once(d.id.as_str())
                        .chain(meridians.iter().map(String::as_str))
                        .collect(),
                    "several nonsep disks in one solid-torus piece are a single meridian".into(),
                );
            }
        }

        // R6: a side whose negative boundary exactly fills the genus in two
        // components admits only the one separating disk splitting them apart
        for side in [Side::V, Side::W] {
            let body = self.body(side);
            if body.minus.len() != 2 || body.minus_total() != self.genus {
                continue;
            }
            let side_disks: Vec<&DiskModel> =
                self.disks.values().filter(|d| d.side == side).collect();
            if side_disks.len() > 1 {
                push(
                    Rule::R6,
                    side_disks.iter().map(|d| d.id.as_str()).collect(),
                    format!("{side} side admits a single compressing disk"),
                );
            }
            for d in &side_disks {
                let ok = match &d.kind {
                    DiskKind::Sep { .. } => [PieceLabel::A, PieceLabel::B].iter().all(|&l| {
                        let (g, minus) = d.piece(l).expect("sep");
                        minus.len() == 1
                            && body
                                .minus
                                .iter()
                                .any(|b| minus.contains(&b.id) && b.genus == g)
                    }),
                    DiskKind::Nonsep => false,
                };
                if !ok {
                    push(
                        Rule::R6,
                        vec![&d.id],
                        "the unique disk must separate the two negative boundary components".into(),
                    );
                }
            }
        }

        // R7: at genus three every face is a solid-torus disk plus its meridian
        if self.genus == 3 {
            for (a, b) in &self.relations.disjoint {
                let (da, db) = (&self.disks[a], &self.disks[b]);
                if da.side != db.side {
                    continue;
                }
                let shares_partner = self.disks.values().any(|e| {
                    e.side != da.side && self.is_disjoint(a, &e.id) && self.is_disjoint(b, &e.id)
                });
                if !shares_partner {
                    continue;
                }
                let is_meridian_pair = |sep: &DiskModel, non: &DiskModel| {
                    sep.kind.is_sep()
                        && !non.kind.is_sep()
                        && sep
                            .solid_torus_piece()
                            .is_some_and(|t| self.locate(&sep.id, &non.id) == Some(t))
                };
                if !(is_meridian_pair(da, db) || is_meridian_pair(db, da)) {
                    push(
                        Rule::R7,
                        vec![a, b],
                        "genus-3 face requires a solid-torus disk and its meridian".into(),
                    );
                }
            }
        }

        out.sort();
        out.dedup();
        out
    }

    /// Add the missing meridian for every separating disk with a solid-torus
    /// piece. The new disk is declared disjoint from its defining disk and
    /// from everything located on the far side of the torus, including
    /// meridians added by earlier steps (for a later step they are disks
    /// disjoint from its defining disk like any other). Idempotent.
    pub fn synthesize_meridians(&self) -> SplittingModel {
        let mut out = self.clone();
        let needing: Vec<(String, PieceLabel)> = self
            .disks
            .values()
            .filter_map(|d| {
                let torus = d.solid_torus_piece()?;
                if self.meridian_of(&d.id).is_none() {
                    Some((d.id.clone(), torus))
                } else {
                    None
                }
            })
            .collect();
        for (sep_id, torus) in needing {
            let mut mid = format!("{sep_id}_m");
            let mut k = 1;
            while out.disks.contains_key(&mid) {
                k += 1;
                mid = format!("{sep_id}_m{k}");
            }
            let side = out.disks[&sep_id].side;
            out.disks.insert(
                mid.clone(),
                DiskModel {
                    id: mid.clone(),
                    side,
                    kind: DiskKind::Nonsep,
                },
            );
            out.relations.add_disjoint(&sep_id, &mid);
            out.relations
                .locate
                .insert((sep_id.clone(), mid.clone()), torus);
            let candidates: Vec<String> = out.disks.keys().cloned().collect();
            for e_id in &candidates {
                if *e_id == sep_id
                    || *e_id == mid
                    || !out.is_disjoint(&sep_id, e_id)
                    || out.locate(&sep_id, e_id) != Some(torus.other())
                {
                    continue;
                }
                let e = &out.disks[e_id];
                let e_side = e.side;
                let e_sep = e.kind.is_sep();
                out.relations.add_disjoint(&mid, e_id);
                if e_sep {
                    let label = out.locate(e_id, &sep_id).expect("well-formed");
                    out.relations
                        .locate
                        .insert((e_id.clone(), mid.clone()), label);
                } else if e_side != side {
                    let key = if side == Side::V {
                        (mid.clone(), e_id.clone())
                    } else {
                        (e_id.clone(), mid.clone())
                    };
                    out.relations.unionsep.insert(key, UnionSep::NotSeparating);
                }
            }
        }
        out
    }
}
