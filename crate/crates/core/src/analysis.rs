//! Criticality analysis over a decomposed model, and the genus-3 bijection
//! between components of the side-crossing subset and equivalent clusters.
//!
//! Every verdict here is model-level: the declared disk set is a finite
//! fragment of the real disk complex, so conclusions are conditional on the
//! model capturing all relevant disks.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::complex::{faces, ClusterSet, ComplexError};
use crate::equivalence::{face_one_class, ghs_descriptor, CenterPair, DescriptorKey, FaceRef};
use crate::model::SplittingModel;
use crate::reduction::{weak_reduce, TenType};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    CriticalIndexTwoWitness,
    NotTopologicallyMinimalModelLevel,
    HasNonequivalentFace,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::CriticalIndexTwoWitness => "CRITICAL_INDEX_TWO_WITNESS",
            Verdict::NotTopologicallyMinimalModelLevel => "NOT_TOPOLOGICALLY_MINIMAL_MODEL_LEVEL",
            Verdict::HasNonequivalentFace => "HAS_NONEQUIVALENT_FACE",
            Verdict::Inconclusive => "INCONCLUSIVE",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalityReport {
    pub verdict: Verdict,
    /// Disk partition witnessing criticality: no weak reducing pair crosses it.
    pub partition: Option<(Vec<String>, Vec<String>)>,
    pub witness_face: Option<FaceRef>,
    pub notes: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("Genus3Only: this analysis requires ambient genus 3, got {0}")]
    Genus3Only(u32),
    #[error("component is not a single cluster: {0}")]
    ComponentNotCluster(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Criticality verdict from the face criterion and component count.
pub fn analyze_criticality(
    model: &SplittingModel,
    cs: &ClusterSet,
) -> Result<CriticalityReport, ComplexError> {
    if model.weak_reducing_pairs().is_empty() {
        return Ok(CriticalityReport {
            verdict: Verdict::Inconclusive,
            partition: None,
            witness_face: None,
            notes: "no weak reducing pairs declared".into(),
        });
    }
    for face in faces(model, &cs.complex) {
        if !face_one_class(model, &face)? {
            return Ok(CriticalityReport {
                verdict: Verdict::HasNonequivalentFace,
                partition: None,
                witness_face: Some(face),
                notes: "a face carries two equivalence classes".into(),
            });
        }
    }
    if cs.dvw.components.len() >= 2 {
        let c0: Vec<String> = cs.dvw.components[0].iter().cloned().collect();
        let c1: Vec<String> = model
            .disk_ids()
            .filter(|id| !cs.dvw.components[0].contains(*id))
            .map(str::to_string)
            .collect();
        Ok(CriticalityReport {
            verdict: Verdict::CriticalIndexTwoWitness,
            partition: Some((c0, c1)),
            witness_face: None,
            notes: "model-level witness: the partition admits no crossing weak reducing pair"
                .into(),
        })
    } else {
        Ok(CriticalityReport {
            verdict: Verdict::NotTopologicallyMinimalModelLevel,
            partition: None,
            witness_face: None,
            notes: "model-level: the single declared component is one contractible cluster".into(),
        })
    }
}

/// First face, in deterministic order, whose two weak reductions are not
/// equivalent.
pub fn find_nonequivalent_face(model: &SplittingModel) -> Result<Option<FaceRef>, ComplexError> {
    let complex = crate::complex::build_complex(model)?;
    for face in faces(model, &complex) {
        if !face_one_class(model, &face)? {
            return Ok(Some(face));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiRow {
    pub component: usize,
    pub center: CenterPair,
    pub ten_type: TenType,
    pub descriptor: DescriptorKey,
}

/// Genus-3 table: one row per component of the side-crossing subset, which is
/// then exactly one cluster, plus the grouping of components by descriptor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiTable {
    pub rows: Vec<PhiRow>,
    pub omega_groups: BTreeMap<DescriptorKey, Vec<usize>>,
}

pub fn phi_omega(model: &SplittingModel, cs: &ClusterSet) -> Result<PhiTable, AnalysisError> {
    if model.genus() != 3 {
        return Err(AnalysisError::Genus3Only(model.genus()));
    }
    let mut rows = Vec::new();
    for (i, component) in cs.dvw.components.iter().enumerate() {
        let matching: Vec<&crate::complex::EquivCluster> = cs
            .clusters
            .iter()
            .filter(|c| c.vertex_set.iter().all(|v| component.contains(v)))
            .collect();
        let [cluster] = matching.as_slice() else {
            return Err(AnalysisError::ComponentNotCluster(format!(
                "component {i} holds {} clusters",
                matching.len()
            )));
        };
        if &cluster.vertex_set != component {
            return Err(AnalysisError::ComponentNotCluster(format!(
                "component {i} is larger than the cluster of {}",
                cluster.center
            )));
        }
        let g = weak_reduce(model, &cluster.center.v_id, &cluster.center.w_id)
            .map_err(ComplexError::from)?;
        rows.push(PhiRow {
            component: i,
            center: cluster.center.clone(),
            ten_type: cluster.cluster_type,
            descriptor: ghs_descriptor(&g),
        });
    }
    // model-level injectivity of the row map
    for (i, a) in rows.iter().enumerate() {
        for b in rows.iter().skip(i + 1) {
            if a.center == b.center {
                return Err(AnalysisError::ComponentNotCluster(format!(
                    "components {} and {} share the center {}",
                    a.component, b.component, a.center
                )));
            }
        }
    }
    let mut omega_groups: BTreeMap<DescriptorKey, Vec<usize>> = BTreeMap::new();
    for row in &rows {
        omega_groups
            .entry(row.descriptor.clone())
            .or_default()
            .push(row.component);
    }
    Ok(PhiTable { rows, omega_groups })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductCutoffCheck {
    MustBeEqual,
    NotApplicable,
}

impl std::fmt::Display for ProductCutoffCheck {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ProductCutoffCheck::MustBeEqual => write!(f, "MUST_BE_EQUAL"),
            ProductCutoffCheck::NotApplicable => write!(f, "NOT_APPLICABLE"),
        }
    }
}

/// Consistency alarm for two clusters with equal descriptors: when every
/// separating center member cuts off a trivial product (piece genus equal to
/// its negative boundary total), isotopic thick levels force equal centers,
/// so a consistent model must already have one cluster.
pub fn product_cutoff_check(
    model: &SplittingModel,
    c1: &CenterPair,
    c2: &CenterPair,
) -> Result<ProductCutoffCheck, ComplexError> {
    let d1 = ghs_descriptor(&weak_reduce(model, &c1.v_id, &c1.w_id)?);
    let d2 = ghs_descriptor(&weak_reduce(model, &c2.v_id, &c2.w_id)?);
    if d1 != d2 {
        return Ok(ProductCutoffCheck::NotApplicable);
    }
    for center in [c1, c2] {
        for (id, partner) in [(&center.v_id, &center.w_id), (&center.w_id, &center.v_id)] {
            let disk = model.disk(id)?;
            if !disk.kind.is_sep() {
                continue;
            }
            let label = model.locate(id, partner).ok_or_else(|| {
                crate::model::ModelError::MissingLocate(id.clone(), partner.clone())
            })?;
            let (genus, minus_ids) = disk.piece(label.other()).expect("sep disk");
            let minus_total: u32 = model
                .body(disk.side)
                .minus
                .iter()
                .filter(|b| minus_ids.contains(&b.id))
                .map(|b| b.genus)
                .sum();
            if genus != minus_total {
                return Ok(ProductCutoffCheck::NotApplicable);
            }
        }
    }
    Ok(ProductCutoffCheck::MustBeEqual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::cluster_decomposition;
    use crate::equivalence::tests::{HBODY4, TWO_ISLAND};
    use crate::model::tests::{GB4, GX3};
    use crate::parse::parse_model;

    #[test]
    fn two_islands_witness_criticality() {
        let m = parse_model(TWO_ISLAND).unwrap();
        let cs = cluster_decomposition(&m).unwrap();
        let r = analyze_criticality(&m, &cs).unwrap();
        assert_eq!(r.verdict, Verdict::CriticalIndexTwoWitness);
        let (c0, c1) = r.partition.expect("partition");
        // no weak reducing pair crosses the partition
        for a in &c0 {
            for b in &c1 {
                assert!(!m.is_weak_reducing_pair(a, b), "{a},{b}");
            }
        }
        assert_eq!(c0.len() + c1.len(), m.disk_count());
    }

    #[test]
    fn gx3_is_single_cluster_not_minimal_at_model_level() {
        let m = parse_model(GX3).unwrap();
        let cs = cluster_decomposition(&m).unwrap();
        let r = analyze_criticality(&m, &cs).unwrap();
        assert_eq!(r.verdict, Verdict::NotTopologicallyMinimalModelLevel);
    }

    #[test]
    fn hbody_face_is_the_witness() {
        let m = parse_model(HBODY4).unwrap();
        let cs = cluster_decomposition(&m).unwrap();
        let r = analyze_criticality(&m, &cs).unwrap();
        assert_eq!(r.verdict, Verdict::HasNonequivalentFace);
        let w = r.witness_face.expect("witness");
        assert_eq!(w.ids(), ["V1", "V2", "W1"]);
        assert_eq!(find_nonequivalent_face(&m).unwrap(), Some(w));
    }

    #[test]
    fn no_pairs_is_inconclusive() {
        let text = "\
manifold genus=3 vminus=[] wminus=[]
disk id=V1 side=V kind=nonsep
disk id=W1 side=W kind=nonsep
";
        let m = parse_model(text).unwrap();
        let cs = cluster_decomposition(&m).unwrap();
        let r = analyze_criticality(&m, &cs).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert_eq!(find_nonequivalent_face(&m).unwrap(), None);
    }

    #[test]
    fn gx3_has_no_nonequivalent_face() {
        let m = parse_model(GX3).unwrap();
        assert_eq!(find_nonequivalent_face(&m).unwrap(), None);
    }

    #[test]
    fn phi_on_gx3() {
        let m = parse_model(GX3).unwrap();
        let cs = cluster_decomposition(&m).unwrap();
        let t = phi_omega(&m, &cs).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.omega_groups.len(), 1);
        assert_eq!(t.omega_groups.values().next().unwrap().len(), 1);
    }

    #[test]
    fn phi_groups_equal_descriptors_into_one_omega_class() {
        let m = parse_model(TWO_ISLAND).unwrap();
        let cs = cluster_decomposition(&m).unwrap();
        let t = phi_omega(&m, &cs).unwrap();
        assert_eq!(t.rows.len(), 2);
        assert_ne!(t.rows[0].center, t.rows[1].center);
        assert_eq!(t.omega_groups.len(), 1);
        assert_eq!(t.omega_groups.values().next().unwrap(), &vec![0, 1]);
    }

    #[test]
    fn phi_requires_genus_three() {
        let m = parse_model(GB4).unwrap();
        let cs = cluster_decomposition(&m).unwrap();
        assert_eq!(phi_omega(&m, &cs), Err(AnalysisError::Genus3Only(4)));
    }

    #[test]
    fn product_cutoff_alarm_on_nonsep_centers() {
        let m = parse_model(TWO_ISLAND).unwrap();
        let cs = cluster_decomposition(&m).unwrap();
        let out = product_cutoff_check(&m, &cs.clusters[0].center, &cs.clusters[1].center).unwrap();
        assert_eq!(out, ProductCutoffCheck::MustBeEqual);
    }

    #[test]
    fn product_cutoff_alarm_on_genus3_product_cutoffs() {
        // two islands whose separating centers cut off (torus) x I
        let text = "\
manifold genus=3 vminus=[1] wminus=[]
disk id=V1 side=V kind=sep ga=1 gb=2 minusa=[b1] minusb=[]
disk id=V2 side=V kind=sep ga=1 gb=2 minusa=[b1] minusb=[]
disk id=W1 side=W kind=nonsep
disk id=W2 side=W kind=nonsep
disjoint V1 W1
disjoint V2 W2
locate V1 W1 B
locate V2 W2 B
";
        let m = parse_model(text).unwrap();
        assert_eq!(m.validate(), vec![]);
        let cs = cluster_decomposition(&m).unwrap();
        assert_eq!(cs.clusters.len(), 2);
        let out = product_cutoff_check(&m, &cs.clusters[0].center, &cs.clusters[1].center).unwrap();
        assert_eq!(out, ProductCutoffCheck::MustBeEqual);
    }

    #[test]
    fn product_cutoff_not_applicable_without_products() {
        // genus 5: the cutoff piece has genus 2 over a genus-1 boundary
        let text = "\
manifold genus=5 vminus=[1] wminus=[]
disk id=V1 side=V kind=sep ga=2 gb=3 minusa=[b1] minusb=[]
disk id=V2 side=V kind=sep ga=2 gb=3 minusa=[b1] minusb=[]
disk id=W1 side=W kind=nonsep
disk id=W2 side=W kind=nonsep
disjoint V1 W1
disjoint V2 W2
locate V1 W1 B
locate V2 W2 B
";
        let m = parse_model(text).unwrap();
        assert_eq!(m.validate(), vec![]);
        let cs = cluster_decomposition(&m).unwrap();
        let out = product_cutoff_check(&m, &cs.clusters[0].center, &cs.clusters[1].center).unwrap();
        assert_eq!(out, ProductCutoffCheck::NotApplicable);
    }

    #[test]
    fn product_cutoff_not_applicable_across_descriptors() {
        let m = parse_model(HBODY4).unwrap();
        let cs = cluster_decomposition(&m).unwrap();
        let out = product_cutoff_check(&m, &cs.clusters[0].center, &cs.clusters[1].center).unwrap();
        assert_eq!(out, ProductCutoffCheck::NotApplicable);
    }
}
