//! The equivalence relation on weak reductions, decided through centers:
//! a disk with a solid-torus cutoff is interchangeable with the meridian of
//! that torus, and two pairs give equivalent splittings exactly when they
//! canonicalize to the same center.

use std::fmt;

use thiserror::Error;

use crate::model::{CutoffCategory, ModelError, Side, SplittingModel};
use crate::reduction::GhsResult;

/// A 2-simplex with two disks on one side and one on the other.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FaceRef {
    /// The two same-side disks, sorted.
    pub pair: [String; 2],
    /// The cross-side disk.
    pub cross: String,
    /// Side holding two disks: V for a V-face, W for a W-face.
    pub orientation: Side,
}

impl fmt::Display for FaceRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{{},{},{}}}:{}-face",
            self.pair[0], self.pair[1], self.cross, self.orientation
        )
    }
}

/// A weak reducing pair in canonical position: no member cuts off a solid
/// torus away from its partner.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CenterPair {
    pub v_id: String,
    pub w_id: String,
}

impl fmt::Display for CenterPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.v_id, self.w_id)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EquivError {
    #[error("NotAFace: {0}")]
    NotAFace(String),
    #[error("MissingMeridian: separating disk {0} has no declared meridian")]
    MissingMeridian(String),
    #[error("NotACenter: {0}")]
    NotACenter(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

impl FaceRef {
    /// Classify three disk ids as a V- or W-face; they must be pairwise
    /// disjoint with exactly two on one side.
    pub fn new(model: &SplittingModel, ids: [&str; 3]) -> Result<FaceRef, EquivError> {
        let disks: Vec<_> = ids
            .iter()
            .map(|id| model.disk(id))
            .collect::<Result<_, _>>()?;
        for i in 0..3 {
            for j in i + 1..3 {
                if ids[i] == ids[j] {
                    return Err(EquivError::NotAFace(format!("repeated disk {}", ids[i])));
                }
                if !model.is_disjoint(ids[i], ids[j]) {
                    return Err(EquivError::NotAFace(format!(
                        "{} and {} are not disjoint",
                        ids[i], ids[j]
                    )));
                }
            }
        }
        let v_count = disks.iter().filter(|d| d.side == Side::V).count();
        let orientation = match v_count {
            2 => Side::V,
            1 => Side::W,
            _ => {
                return Err(EquivError::NotAFace(
                    "a face needs disks from both sides".into(),
                ))
            }
        };
        let mut pair: Vec<String> = disks
            .iter()
            .filter(|d| d.side == orientation)
            .map(|d| d.id.clone())
            .collect();
        pair.sort();
        let cross = disks
            .iter()
            .find(|d| d.side != orientation)
            .map(|d| d.id.clone())
            .expect("one cross disk");
        Ok(FaceRef {
            pair: [pair[0].clone(), pair[1].clone()],
            cross,
            orientation,
        })
    }

    pub fn ids(&self) -> [&str; 3] {
        [&self.pair[0], &self.pair[1], &self.cross]
    }

    /// The two weak reducing pairs of the face, as (v, w) id pairs.
    pub fn reducing_pairs(&self) -> [(String, String); 2] {
        let mk = |same: &str| match self.orientation {
            Side::V => (same.to_string(), self.cross.clone()),
            Side::W => (self.cross.clone(), same.to_string()),
        };
        [mk(&self.pair[0]), mk(&self.pair[1])]
    }
}

/// Meridian criterion: the face's two weak reductions are equivalent exactly
/// when one same-side disk cuts off a solid torus away from the cross disk
/// and the other is the nonseparating disk inside that torus.
pub fn face_one_class(model: &SplittingModel, face: &FaceRef) -> Result<bool, EquivError> {
    let [d1, d2] = [&face.pair[0], &face.pair[1]];
    for (sep_id, other_id) in [(d1, d2), (d2, d1)] {
        let sep = model.disk(sep_id)?;
        let other = model.disk(other_id)?;
        if !sep.kind.is_sep() || other.kind.is_sep() {
            continue;
        }
        if model.cutoff_category(sep_id, &face.cross)? != CutoffCategory::Torus {
            continue;
        }
        let torus = sep.solid_torus_piece().expect("torus cutoff");
        if model.locate(sep_id, other_id) == Some(torus) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Canonicalize a weak reducing pair: each member with a solid-torus cutoff is
/// replaced by the meridian of its torus. With `synthesize` the meridians are
/// materialized first; otherwise a missing one is an error.
pub fn center_of(
    model: &SplittingModel,
    v_id: &str,
    w_id: &str,
    synthesize: bool,
) -> Result<CenterPair, EquivError> {
    let closed;
    let m = if synthesize {
        closed = model.synthesize_meridians();
        &closed
    } else {
        model
    };
    let resolve = |id: &str, partner: &str| -> Result<String, EquivError> {
        if m.cutoff_category(id, partner)? == CutoffCategory::Torus {
            m.meridian_of(id)
                .ok_or_else(|| EquivError::MissingMeridian(id.to_string()))
        } else {
            Ok(id.to_string())
        }
    };
    Ok(CenterPair {
        v_id: resolve(v_id, w_id)?,
        w_id: resolve(w_id, v_id)?,
    })
}

/// Whether a pair already satisfies the center condition.
pub fn is_center(model: &SplittingModel, v_id: &str, w_id: &str) -> Result<bool, EquivError> {
    Ok(model.cutoff_category(v_id, w_id)? != CutoffCategory::Torus
        && model.cutoff_category(w_id, v_id)? != CutoffCategory::Torus)
}

/// Model-level decision procedure for the equivalence of two weak reductions:
/// equal centers.
pub fn ghs_equal_exact(
    model: &SplittingModel,
    pair1: (&str, &str),
    pair2: (&str, &str),
    synthesize: bool,
) -> Result<bool, EquivError> {
    let c1 = center_of(model, pair1.0, pair1.1, synthesize)?;
    let c2 = center_of(model, pair2.0, pair2.1, synthesize)?;
    Ok(c1 == c2)
}

/// Structural key of a cleaned splitting. Equal keys are necessary for the
/// splittings to be isotopic; they do not decide equivalence.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DescriptorKey {
    pub thick_v_genus: u32,
    pub thick_w_genus: u32,
    pub thin_genera: Vec<u32>,
    pub v2_extra: Vec<String>,
    pub w1_extra: Vec<String>,
}

impl fmt::Display for DescriptorKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let genera: Vec<String> = self.thin_genera.iter().map(u32::to_string).collect();
        write!(
            f,
            "({},{},{{{}}},[{}],[{}])",
            self.thick_v_genus,
            self.thick_w_genus,
            genera.join(","),
            self.v2_extra.join(","),
            self.w1_extra.join(",")
        )
    }
}

pub fn ghs_descriptor(g: &GhsResult) -> DescriptorKey {
    let mut thin_genera: Vec<u32> = g.thin.pieces().iter().map(|p| p.genus).collect();
    thin_genera.sort();
    let ids = |bs: &[crate::model::BoundaryComponent]| -> Vec<String> {
        let mut v: Vec<String> = bs.iter().map(|b| b.id.clone()).collect();
        v.sort();
        v
    };
    DescriptorKey {
        thick_v_genus: g.thick_v.genus,
        thick_w_genus: g.thick_w.genus,
        thin_genera,
        v2_extra: ids(&g.v2_extra_minus),
        w1_extra: ids(&g.w1_extra_minus),
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::model::tests::{GB4, GX3};
    use crate::parse::parse_model;
    use crate::reduction::weak_reduce;

    #[test]
    fn gx3_face_has_one_class() {
        let m = parse_model(GX3).unwrap();
        let f = FaceRef::new(&m, ["V2", "V1", "W1"]).unwrap();
        assert_eq!(f.orientation, Side::V);
        assert!(face_one_class(&m, &f).unwrap());
    }

    pub(crate) const HBODY4: &str = "\
manifold genus=4 vminus=[] wminus=[]
disk id=V1 side=V kind=sep ga=2 gb=2 minusa=[] minusb=[]
disk id=V2 side=V kind=nonsep
disk id=W1 side=W kind=nonsep
disjoint V1 V2
disjoint V1 W1
disjoint V2 W1
locate V1 V2 B
locate V1 W1 B
unionsep V2 W1 no
";

    #[test]
    fn hbody_face_fails_the_criterion() {
        let m = parse_model(HBODY4).unwrap();
        assert_eq!(m.validate(), vec![]);
        let f = FaceRef::new(&m, ["V1", "V2", "W1"]).unwrap();
        assert!(!face_one_class(&m, &f).unwrap());
    }

    #[test]
    fn two_nonsep_disks_fail_the_criterion() {
        let text = "\
manifold genus=4 vminus=[] wminus=[]
disk id=V1 side=V kind=nonsep
disk id=V1b side=V kind=nonsep
disk id=W side=W kind=nonsep
disjoint V1 V1b
disjoint V1 W
disjoint V1b W
unionsep V1 W no
unionsep V1b W no
";
        let m = parse_model(text).unwrap();
        let f = FaceRef::new(&m, ["V1", "V1b", "W"]).unwrap();
        assert!(!face_one_class(&m, &f).unwrap());
    }

    #[test]
    fn malformed_faces_are_rejected() {
        let m = parse_model(GX3).unwrap();
        assert!(matches!(
            FaceRef::new(&m, ["V1", "V2", "V1"]),
            Err(EquivError::NotAFace(_))
        ));
        // V1, V2, and a second W disk would be fine, but all-V is not a face
        let err = FaceRef::new(&m, ["V1", "V2", "W1"]).map(|_| ());
        assert!(err.is_ok());
    }

    #[test]
    fn centers_on_fixtures() {
        let m = parse_model(GX3).unwrap();
        assert_eq!(
            center_of(&m, "V2", "W1", false).unwrap(),
            CenterPair {
                v_id: "V1".into(),
                w_id: "W1".into()
            }
        );
        assert_eq!(
            center_of(&m, "V1", "W1", false).unwrap(),
            CenterPair {
                v_id: "V1".into(),
                w_id: "W1".into()
            }
        );
        let gb4 = parse_model(GB4).unwrap();
        assert_eq!(
            center_of(&gb4, "V2", "W1", false).unwrap(),
            CenterPair {
                v_id: "V2".into(),
                w_id: "W1".into()
            }
        );
    }

    // GX3 plus a second solid-torus disk sharing the meridian V1
    pub(crate) const GX3_V3: &str = "\
manifold genus=3 vminus=[] wminus=[]
disk id=V1 side=V kind=nonsep
disk id=V2 side=V kind=sep ga=1 gb=2 minusa=[] minusb=[]
disk id=V3 side=V kind=sep ga=1 gb=2 minusa=[] minusb=[]
disk id=W1 side=W kind=nonsep
disjoint V1 V2
disjoint V1 V3
disjoint V1 W1
disjoint V2 W1
disjoint V3 W1
locate V2 V1 A
locate V2 W1 B
locate V3 V1 A
locate V3 W1 B
unionsep V1 W1 no
";

    #[test]
    fn shared_centers_decide_equivalence() {
        let m = parse_model(GX3_V3).unwrap();
        assert_eq!(m.validate(), vec![]);
        assert!(ghs_equal_exact(&m, ("V2", "W1"), ("V1", "W1"), false).unwrap());
        assert!(ghs_equal_exact(&m, ("V3", "W1"), ("V2", "W1"), false).unwrap());
    }

    pub(crate) const TWO_ISLAND: &str = "\
manifold genus=3 vminus=[] wminus=[]
disk id=V1 side=V kind=nonsep
disk id=V2 side=V kind=sep ga=1 gb=2 minusa=[] minusb=[]
disk id=V3 side=V kind=nonsep
disk id=W1 side=W kind=nonsep
disk id=W2 side=W kind=nonsep
disjoint V1 V2
disjoint V1 W1
disjoint V2 W1
disjoint V3 W2
locate V2 V1 A
locate V2 W1 B
unionsep V1 W1 no
unionsep V3 W2 no
";

    #[test]
    fn distinct_centers_are_not_equivalent() {
        let m = parse_model(TWO_ISLAND).unwrap();
        assert_eq!(m.validate(), vec![]);
        assert!(!ghs_equal_exact(&m, ("V1", "W1"), ("V3", "W2"), false).unwrap());
    }

    #[test]
    fn missing_meridian_errors_unless_synthesized() {
        let text = "\
manifold genus=3 vminus=[] wminus=[]
disk id=V2 side=V kind=sep ga=1 gb=2 minusa=[] minusb=[]
disk id=W1 side=W kind=nonsep
disjoint V2 W1
locate V2 W1 B
";
        let m = parse_model(text).unwrap();
        assert_eq!(
            center_of(&m, "V2", "W1", false),
            Err(EquivError::MissingMeridian("V2".into()))
        );
        let c = center_of(&m, "V2", "W1", true).unwrap();
        assert_eq!(c.v_id, "V2_m");
        assert_eq!(c.w_id, "W1");
    }

    #[test]
    fn descriptor_keys_on_fixtures() {
        let m = parse_model(GX3).unwrap();
        let k1 = ghs_descriptor(&weak_reduce(&m, "V1", "W1").unwrap());
        assert_eq!(k1.to_string(), "(2,2,{1},[],[])");
        let k2 = ghs_descriptor(&weak_reduce(&m, "V2", "W1").unwrap());
        assert_eq!(k2, k1);

        let gb4 = parse_model(GB4).unwrap();
        let k = ghs_descriptor(&weak_reduce(&gb4, "V2", "W1").unwrap());
        assert_eq!(k.to_string(), "(2,3,{1},[],[b1])");
    }
}
