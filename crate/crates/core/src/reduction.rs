//! Weak reduction of the modeled splitting along a weak reducing pair:
//! the raw thick/thin levels, cleaning, compression-body descriptors, and the
//! five- and ten-type classification of the resulting generalized splitting.

use std::fmt;

use crate::model::{
    BoundaryComponent, CompressionBodyDescriptor, CutoffCategory, DiskKind, DiskModel, ModelError,
    Side, SplittingModel, UnionSep,
};
use crate::surface::{ScarTag, Surface, SurfacePiece};

/// Thick and thin levels right after preweak reduction, before cleaning.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawGhs {
    pub thick: Surface,
    pub thin: Surface,
}

/// The cleaned generalized splitting: one thick level per side, the inner
/// thin level, and the four compression bodies the levels cut out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GhsResult {
    pub thick_v: SurfacePiece,
    pub thick_w: SurfacePiece,
    pub thin: Surface,
    pub body_v1: CompressionBodyDescriptor,
    pub body_v2: CompressionBodyDescriptor,
    pub body_w1: CompressionBodyDescriptor,
    pub body_w2: CompressionBodyDescriptor,
    pub v2_minus_connected: bool,
    pub w1_minus_connected: bool,
    pub v2_extra_minus: Vec<BoundaryComponent>,
    pub w1_extra_minus: Vec<BoundaryComponent>,
}

/// Coarse classification by connectivity of the two inner compression bodies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FiveType {
    A,
    BW,
    BV,
    C,
    D,
}

impl fmt::Display for FiveType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiveType::A => write!(f, "A"),
            FiveType::BW => write!(f, "B_W"),
            FiveType::BV => write!(f, "B_V"),
            FiveType::C => write!(f, "C"),
            FiveType::D => write!(f, "D"),
        }
    }
}

/// Fine classification by the cutoff shapes of the two disks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TenType {
    AI,
    AIIW,
    AIIV,
    AIII,
    BWI,
    BWII,
    BVI,
    BVII,
    C,
    D,
}

impl TenType {
    pub fn coarsen(self) -> FiveType {
        match self {
            TenType::AI | TenType::AIIW | TenType::AIIV | TenType::AIII => FiveType::A,
            TenType::BWI | TenType::BWII => FiveType::BW,
            TenType::BVI | TenType::BVII => FiveType::BV,
            TenType::C => FiveType::C,
            TenType::D => FiveType::D,
        }
    }

    pub const ALL: [TenType; 10] = [
        TenType::AI,
        TenType::AIIW,
        TenType::AIIV,
        TenType::AIII,
        TenType::BWI,
        TenType::BWII,
        TenType::BVI,
        TenType::BVII,
        TenType::C,
        TenType::D,
    ];
}

impl fmt::Display for TenType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TenType::AI => "A_I",
            TenType::AIIW => "A_II_W",
            TenType::AIIV => "A_II_V",
            TenType::AIII => "A_III",
            TenType::BWI => "B_W_I",
            TenType::BWII => "B_W_II",
            TenType::BVI => "B_V_I",
            TenType::BVII => "B_V_II",
            TenType::C => "C",
            TenType::D => "D",
        };
        write!(f, "{s}")
    }
}

fn require_pair<'m>(
    model: &'m SplittingModel,
    v_id: &str,
    w_id: &str,
) -> Result<(&'m DiskModel, &'m DiskModel), ModelError> {
    let dv = model.disk(v_id)?;
    let dw = model.disk(w_id)?;
    if dv.side != Side::V || dw.side != Side::W || !model.is_disjoint(v_id, w_id) {
        return Err(ModelError::NotAWeakReducingPair(
            v_id.to_string(),
            w_id.to_string(),
        ));
    }
    Ok((dv, dw))
}

/// Genus of the piece of the separating disk holding the partner's boundary.
fn located_genus(model: &SplittingModel, sep: &DiskModel, partner: &str) -> u32 {
    let label = model.locate(&sep.id, partner).expect("well-formed model");
    sep.piece(label).expect("sep disk").0
}

/// Compress the ambient surface along both disks of a weak reducing pair.
/// `thick` collects the compressions along each single disk, `thin` the
/// compression along both, all driven by the declared annotations.
pub fn preweak_reduce(
    model: &SplittingModel,
    v_id: &str,
    w_id: &str,
) -> Result<RawGhs, ModelError> {
    let (dv, dw) = require_pair(model, v_id, w_id)?;
    let ambient = Surface::new([SurfacePiece::closed(model.genus())]);

    let compress_single = |d: &DiskModel| -> Surface {
        let tag = ScarTag::new(&d.id);
        match &d.kind {
            DiskKind::Nonsep => ambient.compress_nonsep(0, tag).expect("genus >= 3"),
            DiskKind::Sep {
                genus_a, genus_b, ..
            } => ambient
                .compress_sep(0, tag, *genus_a, [], *genus_b, [])
                .expect("split checked at construction"),
        }
    };
    let f_v = compress_single(dv);
    let f_w = compress_single(dw);
    let thick = f_v.disjoint_union(&f_w);

    let v_tag = ScarTag::new(v_id);
    let w_tag = ScarTag::new(w_id);
    let n = model.genus();
    let thin = match (&dv.kind, &dw.kind) {
        (DiskKind::Nonsep, DiskKind::Nonsep) => {
            match model.unionsep(v_id, w_id).expect("well-formed model") {
                UnionSep::NotSeparating => ambient
                    .compress_nonsep(0, v_tag.clone())
                    .expect("genus")
                    .compress_nonsep(0, w_tag)
                    .expect("genus"),
                // declared split passes through untouched; the engine never
                // guesses the two genera
                UnionSep::Separating(g1, g2) => Surface::new([
                    SurfacePiece::new(g1, [v_tag.clone(), w_tag.clone()]),
                    SurfacePiece::new(g2, [v_tag, w_tag]),
                ]),
            }
        }
        (DiskKind::Sep { .. }, DiskKind::Nonsep) => {
            let m = located_genus(model, dv, w_id);
            let once = f_v.clone();
            let idx = piece_index(&once, m, &v_tag);
            once.compress_nonsep(idx, w_tag)
                .expect("R1 keeps genus >= 2")
        }
        (DiskKind::Nonsep, DiskKind::Sep { .. }) => {
            let m = located_genus(model, dw, v_id);
            let once = ambient.compress_nonsep(0, v_tag.clone()).expect("genus");
            once.compress_sep(0, w_tag, m - 1, [v_tag.clone(), v_tag], n - m, [])
                .expect("split")
        }
        (DiskKind::Sep { .. }, DiskKind::Sep { .. }) => {
            let mv = located_genus(model, dv, w_id);
            let mw = located_genus(model, dw, v_id);
            let shared = (mv + mw)
                .checked_sub(n)
                .expect("R3: the doubly scarred piece has genus >= 1");
            let idx = piece_index(&f_v, mv, &v_tag);
            f_v.compress_sep(idx, w_tag, shared, [v_tag], n - mw, [])
                .expect("declared split")
        }
    };
    Ok(RawGhs { thick, thin })
}

fn piece_index(surface: &Surface, genus: u32, tag: &ScarTag) -> usize {
    surface
        .pieces()
        .iter()
        .position(|p| p.genus == genus && p.scars() == std::slice::from_ref(tag))
        .expect("located piece present")
}

fn scar_sides(model: &SplittingModel, piece: &SurfacePiece) -> (bool, bool) {
    let mut has = (false, false);
    for scar in piece.scars() {
        match model.disk(scar.disk_id()).map(|d| d.side) {
            Ok(Side::V) => has.0 = true,
            Ok(Side::W) => has.1 = true,
            Err(_) => {}
        }
    }
    has
}

/// Closed-form cleaning: the thick level on each side is the component of the
/// once-compressed surface holding the partner's boundary, and the inner thin
/// level keeps exactly the pieces scarred by both sides.
pub fn clean(
    raw: &RawGhs,
    model: &SplittingModel,
    v_id: &str,
    w_id: &str,
) -> Result<GhsResult, ModelError> {
    let (dv, dw) = require_pair(model, v_id, w_id)?;
    let n = model.genus();

    let thick_of = |d: &DiskModel, partner: &str| -> SurfacePiece {
        let tag = ScarTag::new(&d.id);
        match &d.kind {
            DiskKind::Nonsep => SurfacePiece::new(n - 1, [tag.clone(), tag]),
            DiskKind::Sep { .. } => SurfacePiece::new(located_genus(model, d, partner), [tag]),
        }
    };
    let thick_v = thick_of(dv, w_id);
    let thick_w = thick_of(dw, v_id);

    let thin = Surface::new(
        raw.thin
            .pieces()
            .iter()
            .filter(|p| {
                let (v, w) = scar_sides(model, p);
                v && w
            })
            .cloned(),
    );

    // negative boundary carried past the thin level by a separating disk's
    // far piece
    let cutoff_minus = |d: &DiskModel, partner: &str| -> Vec<BoundaryComponent> {
        match &d.kind {
            DiskKind::Nonsep => Vec::new(),
            DiskKind::Sep { .. } => {
                let label = model.locate(&d.id, partner).expect("well-formed");
                let (_, ids) = d.piece(label.other()).expect("sep");
                model
                    .body(d.side)
                    .minus
                    .iter()
                    .filter(|b| ids.contains(&b.id))
                    .cloned()
                    .collect()
            }
        }
    };
    let located_minus = |d: &DiskModel, partner: &str| -> Vec<BoundaryComponent> {
        match &d.kind {
            DiskKind::Nonsep => model.body(d.side).minus.clone(),
            DiskKind::Sep { .. } => {
                let label = model.locate(&d.id, partner).expect("well-formed");
                let (_, ids) = d.piece(label).expect("sep");
                model
                    .body(d.side)
                    .minus
                    .iter()
                    .filter(|b| ids.contains(&b.id))
                    .cloned()
                    .collect()
            }
        }
    };

    let inner: Vec<BoundaryComponent> = thin
        .pieces()
        .iter()
        .enumerate()
        .map(|(i, p)| BoundaryComponent {
            id: format!("inner{i}"),
            genus: p.genus,
        })
        .collect();
    let v2_extra_minus = cutoff_minus(dw, v_id);
    let w1_extra_minus = cutoff_minus(dv, w_id);

    let body_v2 = CompressionBodyDescriptor::new(
        thick_v.genus,
        inner.iter().chain(v2_extra_minus.iter()).cloned(),
    );
    let body_w1 = CompressionBodyDescriptor::new(
        thick_w.genus,
        inner.iter().chain(w1_extra_minus.iter()).cloned(),
    );
    let body_v1 = CompressionBodyDescriptor::new(thick_v.genus, located_minus(dv, w_id));
    let body_w2 = CompressionBodyDescriptor::new(thick_w.genus, located_minus(dw, v_id));

    let v2_minus_connected = body_v2.minus.len() == 1;
    let w1_minus_connected = body_w1.minus.len() == 1;

    Ok(GhsResult {
        thick_v,
        thick_w,
        thin,
        body_v1,
        body_v2,
        body_w1,
        body_w2,
        v2_minus_connected,
        w1_minus_connected,
        v2_extra_minus,
        w1_extra_minus,
    })
}

/// Generic cleaning over the raw levels: repeatedly delete a thick/thin pair
/// of identical pieces where the thin piece is scarred by a single side (such
/// a pair cobounds a product region). Specified only for raw levels produced
/// by `preweak_reduce`; must agree with the closed form.
pub fn clean_generic(raw: &RawGhs, model: &SplittingModel) -> RawGhs {
    let mut thick: Vec<SurfacePiece> = raw.thick.pieces().to_vec();
    let mut thin: Vec<SurfacePiece> = raw.thin.pieces().to_vec();
    loop {
        let candidate = thin.iter().position(|p| {
            let (v, w) = scar_sides(model, p);
            (v ^ w) && thick.contains(p)
        });
        match candidate {
            Some(i) => {
                let piece = thin.remove(i);
                let j = thick.iter().position(|q| *q == piece).expect("matched");
                thick.remove(j);
            }
            None => break,
        }
    }
    RawGhs {
        thick: Surface::new(thick),
        thin: Surface::new(thin),
    }
}

/// Preweak reduction followed by cleaning.
pub fn weak_reduce(
    model: &SplittingModel,
    v_id: &str,
    w_id: &str,
) -> Result<GhsResult, ModelError> {
    let raw = preweak_reduce(model, v_id, w_id)?;
    clean(&raw, model, v_id, w_id)
}

/// Coarse type from connectivity: two thin pieces mean type D, otherwise the
/// two connectivity flags decide.
pub fn classify_five(g: &GhsResult) -> FiveType {
    if g.thin.len() == 2 {
        return FiveType::D;
    }
    match (g.v2_minus_connected, g.w1_minus_connected) {
        (true, true) => FiveType::A,
        (true, false) => FiveType::BW,
        (false, true) => FiveType::BV,
        (false, false) => FiveType::C,
    }
}

/// Fine type from the cutoff categories of the two disks.
pub fn classify_ten(model: &SplittingModel, v_id: &str, w_id: &str) -> Result<TenType, ModelError> {
    require_pair(model, v_id, w_id)?;
    let cv = model.cutoff_category(v_id, w_id)?;
    let cw = model.cutoff_category(w_id, v_id)?;
    let small = |c: CutoffCategory| matches!(c, CutoffCategory::Nonsep | CutoffCategory::Torus);
    if cv == CutoffCategory::Nonsep
        && cw == CutoffCategory::Nonsep
        && matches!(model.unionsep(v_id, w_id), Some(UnionSep::Separating(..)))
    {
        return Ok(TenType::D);
    }
    Ok(match (cv, cw) {
        (a, b) if small(a) && small(b) => TenType::AI,
        (CutoffCategory::Hbody, b) if small(b) => TenType::AIIW,
        (a, CutoffCategory::Hbody) if small(a) => TenType::AIIV,
        (CutoffCategory::Hbody, CutoffCategory::Hbody) => TenType::AIII,
        (CutoffCategory::Cbody, b) if small(b) => TenType::BWI,
        (CutoffCategory::Cbody, CutoffCategory::Hbody) => TenType::BWII,
        (a, CutoffCategory::Cbody) if small(a) => TenType::BVI,
        (CutoffCategory::Hbody, CutoffCategory::Cbody) => TenType::BVII,
        (CutoffCategory::Cbody, CutoffCategory::Cbody) => TenType::C,
        _ => unreachable!("categories exhausted"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::tests::{GB4, GD4, GX3};
    use crate::parse::parse_model;

    fn piece(genus: u32, scars: &[&str]) -> SurfacePiece {
        SurfacePiece::new(genus, scars.iter().map(|s| ScarTag::new(*s)))
    }

    #[test]
    fn preweak_on_gx3_nonsep_pair() {
        let m = parse_model(GX3).unwrap();
        let raw = preweak_reduce(&m, "V1", "W1").unwrap();
        assert_eq!(
            raw.thick,
            Surface::new([piece(2, &["V1", "V1"]), piece(2, &["W1", "W1"])])
        );
        assert_eq!(
            raw.thin,
            Surface::new([piece(1, &["V1", "V1", "W1", "W1"])])
        );
    }

    #[test]
    fn preweak_on_gx3_sep_pair() {
        let m = parse_model(GX3).unwrap();
        let raw = preweak_reduce(&m, "V2", "W1").unwrap();
        assert_eq!(
            raw.thick,
            Surface::new([
                piece(1, &["V2"]),
                piece(2, &["V2"]),
                piece(2, &["W1", "W1"])
            ])
        );
        assert_eq!(
            raw.thin,
            Surface::new([piece(1, &["V2"]), piece(1, &["V2", "W1", "W1"])])
        );
    }

    #[test]
    fn preweak_on_gd4_uses_declared_split() {
        let m = parse_model(GD4).unwrap();
        let raw = preweak_reduce(&m, "V1", "W1").unwrap();
        assert_eq!(
            raw.thin,
            Surface::new([piece(1, &["V1", "W1"]), piece(1, &["V1", "W1"])])
        );
    }

    #[test]
    fn preweak_rejects_non_pairs() {
        let m = parse_model(GX3).unwrap();
        assert!(matches!(
            preweak_reduce(&m, "V1", "V2"),
            Err(ModelError::NotAWeakReducingPair(..))
        ));
    }

    #[test]
    fn cleaning_drops_single_sided_thin_pieces() {
        let m = parse_model(GX3).unwrap();
        let raw = preweak_reduce(&m, "V2", "W1").unwrap();
        let g = clean(&raw, &m, "V2", "W1").unwrap();
        assert_eq!(g.thick_v, piece(2, &["V2"]));
        assert_eq!(g.thin, Surface::new([piece(1, &["V2", "W1", "W1"])]));
    }

    #[test]
    fn cleaning_keeps_everything_for_nonsep_pairs() {
        let m = parse_model(GX3).unwrap();
        let raw = preweak_reduce(&m, "V1", "W1").unwrap();
        let g = clean(&raw, &m, "V1", "W1").unwrap();
        assert_eq!(g.thin, raw.thin);
        assert_eq!(
            Surface::new([g.thick_v.clone(), g.thick_w.clone()]),
            raw.thick
        );
    }

    const GC6: &str = "\
manifold genus=6 vminus=[1] wminus=[1]
disk id=V side=V kind=sep ga=1 gb=5 minusa=[b1] minusb=[]
disk id=W side=W kind=sep ga=1 gb=5 minusa=[b2] minusb=[]
disjoint V W
locate V W B
locate W V B
";

    #[test]
    fn gc6_thin_level_has_the_formula_genus() {
        let m = parse_model(GC6).unwrap();
        assert_eq!(m.validate(), vec![]);
        let g = weak_reduce(&m, "V", "W").unwrap();
        assert_eq!(g.thin, Surface::new([piece(4, &["V", "W"])]));
        assert_eq!(classify_ten(&m, "V", "W").unwrap(), TenType::C);
    }

    #[test]
    fn generic_cleaner_agrees_with_closed_form() {
        for (text, pairs) in [
            (GX3, vec![("V1", "W1"), ("V2", "W1")]),
            (GB4, vec![("V2", "W1")]),
            (GD4, vec![("V1", "W1")]),
            (GC6, vec![("V", "W")]),
        ] {
            let m = parse_model(text).unwrap();
            for (v, w) in pairs {
                let raw = preweak_reduce(&m, v, w).unwrap();
                let generic = clean_generic(&raw, &m);
                let g = clean(&raw, &m, v, w).unwrap();
                assert_eq!(
                    generic.thick,
                    Surface::new([g.thick_v.clone(), g.thick_w.clone()]),
                    "{v},{w}"
                );
                assert_eq!(generic.thin, g.thin, "{v},{w}");
            }
        }
    }

    #[test]
    fn descriptors_on_gb4() {
        let m = parse_model(GB4).unwrap();
        let g = weak_reduce(&m, "V2", "W1").unwrap();
        assert!(!g.w1_minus_connected);
        assert_eq!(
            g.w1_extra_minus,
            vec![BoundaryComponent {
                id: "b1".into(),
                genus: 2
            }]
        );
        assert_eq!(classify_five(&g), FiveType::BW);
        assert_eq!(classify_ten(&m, "V2", "W1").unwrap(), TenType::BWI);
    }

    #[test]
    fn descriptors_on_gx3() {
        let m = parse_model(GX3).unwrap();
        let g = weak_reduce(&m, "V1", "W1").unwrap();
        assert!(g.v2_minus_connected && g.w1_minus_connected);
        assert_eq!(
            g.body_v2,
            CompressionBodyDescriptor::new(
                2,
                [BoundaryComponent {
                    id: "inner0".into(),
                    genus: 1
                }]
            )
        );
        assert_eq!(classify_five(&g), FiveType::A);
        assert_eq!(classify_ten(&m, "V1", "W1").unwrap(), TenType::AI);
        assert_eq!(classify_ten(&m, "V2", "W1").unwrap(), TenType::AI);
    }

    #[test]
    fn descriptors_on_gd4() {
        let m = parse_model(GD4).unwrap();
        let g = weak_reduce(&m, "V1", "W1").unwrap();
        assert!(!g.v2_minus_connected && !g.w1_minus_connected);
        assert_eq!(g.body_v2.minus, g.body_w1.minus);
        assert_eq!(g.body_v2.minus.len(), 2);
        assert_eq!(classify_five(&g), FiveType::D);
        assert_eq!(classify_ten(&m, "V1", "W1").unwrap(), TenType::D);
    }

    #[test]
    fn euler_bookkeeping_on_fixtures() {
        // every pair except a declared-Separating one compresses twice
        for text in [GX3, GB4, GC6] {
            let m = parse_model(text).unwrap();
            let chi_f = 2 - 2 * i64::from(m.genus());
            for (v, w) in m.weak_reducing_pairs() {
                let raw = preweak_reduce(&m, &v, &w).unwrap();
                assert_eq!(raw.thin.euler_char(), chi_f + 4);
            }
        }
    }
}
