//! The disk complex of a model as a flag complex over the declared
//! disjointness relation, its side-crossing subset, and the decomposition of
//! that subset into center-keyed equivalent clusters plus nonequivalent
//! simplices.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::equivalence::{center_of, face_one_class, CenterPair, EquivError, FaceRef};
use crate::model::{CutoffCategory, ModelError, Side, SplittingModel};
use crate::reduction::{classify_ten, TenType};

/// A simplex is its sorted vertex set.
pub type Simplex = Vec<String>;

pub fn simplex_label(s: &Simplex) -> String {
    format!("{{{}}}", s.join(","))
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("clique guard: {0}")]
    Guard(String),
    #[error(transparent)]
    Equiv(#[from] EquivError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Flag complex over the disjointness relation: every set of pairwise
/// disjoint disks is a simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiskComplex {
    pub vertices: Vec<String>,
    pub simplices: Vec<Simplex>,
}

impl DiskComplex {
    pub fn max_dimension(&self) -> Option<usize> {
        self.simplices.iter().map(|s| s.len() - 1).max()
    }
}

/// Enumerate every clique of the graph on `vertices` in deterministic order
/// (lexicographic by vertex list). `bound` aborts runaway enumeration.
fn enumerate_cliques(
    vertices: &[String],
    adjacent: &dyn Fn(&str, &str) -> bool,
    bound: usize,
) -> Result<Vec<Simplex>, ComplexError> {
    let mut out: Vec<Simplex> = Vec::new();
    let mut stack: Vec<(Simplex, usize)> = Vec::new();
    for (i, v) in vertices.iter().enumerate() {
        stack.push((vec![v.clone()], i));
    }
    // depth-first, children visited in sorted order
    stack.reverse();
    while let Some((clique, last)) = stack.pop() {
        if clique.len() > bound {
            return Err(ComplexError::Guard(format!(
                "clique {} exceeds the declared disk count {}",
                simplex_label(&clique),
                bound
            )));
        }
        out.push(clique.clone());
        let mut children = Vec::new();
        for j in (last + 1..vertices.len()).rev() {
            let v = &vertices[j];
            if clique.iter().all(|u| adjacent(u, v)) {
                let mut next = clique.clone();
                next.push(v.clone());
                children.push((next, j));
            }
        }
        stack.extend(children);
    }
    Ok(out)
}

/// Build the full disk complex of the model.
pub fn build_complex(model: &SplittingModel) -> Result<DiskComplex, ComplexError> {
    let vertices: Vec<String> = model.disk_ids().map(str::to_string).collect();
    let simplices = enumerate_cliques(
        &vertices,
        &|a, b| model.is_disjoint(a, b),
        model.disk_count().max(1),
    )?;
    Ok(DiskComplex {
        vertices,
        simplices,
    })
}

/// The subset of the complex supported on side-crossing simplices, with its
/// connected components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DvwSubset {
    pub simplices: Vec<Simplex>,
    /// Vertex sets of the connected components, each sorted, sorted by their
    /// smallest vertex.
    pub components: Vec<BTreeSet<String>>,
}

fn crosses(model: &SplittingModel, s: &Simplex) -> bool {
    let mut seen = (false, false);
    for id in s {
        match model.disk(id).map(|d| d.side) {
            Ok(Side::V) => seen.0 = true,
            Ok(Side::W) => seen.1 = true,
            Err(_) => {}
        }
    }
    seen.0 && seen.1
}

/// Restrict to simplices contained in some side-crossing simplex.
pub fn dvw(model: &SplittingModel, complex: &DiskComplex) -> DvwSubset {
    let simplices: Vec<Simplex> = complex
        .simplices
        .iter()
        .filter(|s| {
            if crosses(model, s) {
                return true;
            }
            let side = model
                .disk(&s[0])
                .map(|d| d.side)
                .expect("complex vertices are disks");
            complex.vertices.iter().any(|u| {
                model.disk(u).map(|d| d.side) == Ok(side.other())
                    && s.iter().all(|x| model.is_disjoint(x, u))
            })
        })
        .cloned()
        .collect();

    // components of the 1-skeleton via union-find
    let verts: Vec<&String> = {
        let set: BTreeSet<&String> = simplices.iter().flatten().collect();
        set.into_iter().collect()
    };
    let index: BTreeMap<&String, usize> = verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut parent: Vec<usize> = (0..verts.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for s in simplices.iter().filter(|s| s.len() == 2) {
        let (a, b) = (index[&s[0]], index[&s[1]]);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut groups: BTreeMap<usize, BTreeSet<String>> = BTreeMap::new();
    for (i, v) in verts.iter().enumerate() {
        groups
            .entry(find(&mut parent, i))
            .or_default()
            .insert((*v).clone());
    }
    DvwSubset {
        simplices,
        components: groups.into_values().collect(),
    }
}

/// All V- and W-faces of the model, sorted.
pub fn faces(model: &SplittingModel, complex: &DiskComplex) -> Vec<FaceRef> {
    let mut out: Vec<FaceRef> = complex
        .simplices
        .iter()
        .filter(|s| s.len() == 3)
        .filter_map(|s| FaceRef::new(model, [&s[0], &s[1], &s[2]]).ok())
        .collect();
    out.sort();
    out
}

/// Star description of a cluster's intersection with one side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Star {
    pub hub: String,
    pub leaves: BTreeSet<String>,
}

/// Model-restricted equivalent cluster: the center, the solid-torus disks
/// whose meridian sits in the center, and the flag subcomplex they induce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivCluster {
    pub center: CenterPair,
    pub cluster_type: TenType,
    pub vertex_set: BTreeSet<String>,
    pub simplex_set: Vec<Simplex>,
    pub v_star: Star,
    pub w_star: Star,
}

/// The cluster types that consist of the bare center edge.
fn bare_type(t: TenType) -> bool {
    matches!(
        t,
        TenType::AIII | TenType::BWII | TenType::BVII | TenType::C | TenType::D
    )
}

/// Build the equivalent cluster keyed by a center pair.
pub fn equivalent_cluster(
    model: &SplittingModel,
    center: &CenterPair,
) -> Result<EquivCluster, ComplexError> {
    if !model.is_weak_reducing_pair(&center.v_id, &center.w_id) {
        return Err(EquivError::NotACenter(format!(
            "({},{}) is not a weak reducing pair",
            center.v_id, center.w_id
        ))
        .into());
    }
    if model.cutoff_category(&center.v_id, &center.w_id)? == CutoffCategory::Torus
        || model.cutoff_category(&center.w_id, &center.v_id)? == CutoffCategory::Torus
    {
        return Err(EquivError::NotACenter(format!(
            "({},{}) has a solid-torus member",
            center.v_id, center.w_id
        ))
        .into());
    }
    let cluster_type = classify_ten(model, &center.v_id, &center.w_id)?;

    let mut v_leaves = BTreeSet::new();
    let mut w_leaves = BTreeSet::new();
    if !bare_type(cluster_type) {
        let collect =
            |side: Side, hub: &str, cross: &str| -> Result<BTreeSet<String>, ComplexError> {
                let mut leaves = BTreeSet::new();
                if model.disk(hub)?.kind.is_sep() {
                    return Ok(leaves); // leaves attach to nonseparating hubs only
                }
                for d in model.disks() {
                    if d.side != side
                        || !d.kind.is_sep()
                        || !model.is_disjoint(&d.id, hub)
                        || !model.is_disjoint(&d.id, cross)
                    {
                        continue;
                    }
                    let Some(torus) = d.solid_torus_piece() else {
                        continue;
                    };
                    if model.cutoff_category(&d.id, cross)? == CutoffCategory::Torus
                        && model.locate(&d.id, hub) == Some(torus)
                    {
                        leaves.insert(d.id.clone());
                    }
                }
                Ok(leaves)
            };
        v_leaves = collect(Side::V, &center.v_id, &center.w_id)?;
        w_leaves = collect(Side::W, &center.w_id, &center.v_id)?;
    }

    let mut vertex_set: BTreeSet<String> = v_leaves.union(&w_leaves).cloned().collect();
    vertex_set.insert(center.v_id.clone());
    vertex_set.insert(center.w_id.clone());
    let vertices: Vec<String> = vertex_set.iter().cloned().collect();
    let simplex_set = enumerate_cliques(
        &vertices,
        &|a, b| model.is_disjoint(a, b),
        model.disk_count().max(1),
    )?;

    Ok(EquivCluster {
        center: center.clone(),
        cluster_type,
        vertex_set,
        simplex_set,
        v_star: Star {
            hub: center.v_id.clone(),
            leaves: v_leaves,
        },
        w_star: Star {
            hub: center.w_id.clone(),
            leaves: w_leaves,
        },
    })
}

/// Decomposition of the side-crossing subset into clusters and leftovers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterSet {
    pub clusters: Vec<EquivCluster>,
    /// weak reducing pair (v, w) -> index into `clusters`
    pub membership: BTreeMap<(String, String), usize>,
    /// simplices whose weak reducing pairs have two or more distinct centers
    pub nonequivalent: Vec<Simplex>,
    /// crossing simplices with a single center that still escape its cluster
    /// (possible only with undeclared meridians)
    pub unassigned: Vec<Simplex>,
    pub complex: DiskComplex,
    pub dvw: DvwSubset,
}

/// Compute the full decomposition. Meridian synthesis, when wanted, must be
/// applied to the model beforehand.
pub fn cluster_decomposition(model: &SplittingModel) -> Result<ClusterSet, ComplexError> {
    let complex = build_complex(model)?;
    let subset = dvw(model, &complex);

    let pairs = model.weak_reducing_pairs();
    let mut center_by_pair: BTreeMap<(String, String), CenterPair> = BTreeMap::new();
    let mut centers: BTreeSet<CenterPair> = BTreeSet::new();
    for (v, w) in &pairs {
        let c = center_of(model, v, w, false)?;
        centers.insert(c.clone());
        center_by_pair.insert((v.clone(), w.clone()), c);
    }
    let clusters: Vec<EquivCluster> = centers
        .iter()
        .map(|c| equivalent_cluster(model, c))
        .collect::<Result<_, _>>()?;
    let index_of: BTreeMap<&CenterPair, usize> = clusters
        .iter()
        .enumerate()
        .map(|(i, c)| (&c.center, i))
        .collect();
    let membership: BTreeMap<(String, String), usize> = center_by_pair
        .iter()
        .map(|(pair, c)| (pair.clone(), index_of[c]))
        .collect();

    let mut nonequivalent = Vec::new();
    let mut unassigned = Vec::new();
    for s in &subset.simplices {
        let simplex_centers: BTreeSet<&CenterPair> = pairs_in_simplex(model, s)
            .iter()
            .map(|p| &center_by_pair[p])
            .collect();
        match simplex_centers.len() {
            0 | 1 if !crosses(model, s) => {}
            0 => {}
            1 => {
                let c = simplex_centers.into_iter().next().expect("one center");
                let cluster = &clusters[index_of[c]];
                if !s.iter().all(|id| cluster.vertex_set.contains(id)) {
                    unassigned.push(s.clone());
                }
            }
            _ => nonequivalent.push(s.clone()),
        }
    }

    Ok(ClusterSet {
        clusters,
        membership,
        nonequivalent,
        unassigned,
        complex,
        dvw: subset,
    })
}

/// The weak reducing pairs spanned by a simplex, as (v, w) id pairs.
pub fn pairs_in_simplex(model: &SplittingModel, s: &Simplex) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for a in s {
        for b in s {
            if a < b && model.is_weak_reducing_pair(a, b) {
                let (da, _) = (model.disk(a).expect("disk"), ());
                if da.side == Side::V {
                    out.push((a.clone(), b.clone()));
                } else {
                    out.push((b.clone(), a.clone()));
                }
            }
        }
    }
    out.sort();
    out
}

/// Structural law identifiers; see `check_structure`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum StructureRule {
    S1,
    S2,
    S3,
    S4,
    S5,
}

impl std::fmt::Display for StructureRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct StructureViolation {
    pub rule: StructureRule,
    pub detail: String,
}

impl std::fmt::Display for StructureViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {}", self.rule, self.detail)
    }
}

/// Verify the structural laws of a decomposition:
/// S1 equivalent simplices have dimension <= 3 and the 3-dimensional ones are
///    two solid-torus disks with their meridians;
/// S2 every weak reducing pair lies in exactly one cluster;
/// S3 intersecting clusters share center disks, side by side;
/// S4 equivalent 3-simplices lie inside clusters whose center members are
///    both nonseparating;
/// S5 each cluster meets each side in a star with the center disk as hub, and
///    bare cluster types are single edges.
pub fn check_structure(
    model: &SplittingModel,
    cs: &ClusterSet,
) -> Result<Vec<StructureViolation>, ComplexError> {
    let mut out: Vec<StructureViolation> = Vec::new();
    let mut push = |rule: StructureRule, detail: String| {
        out.push(StructureViolation { rule, detail });
    };

    // centers per pair, reused by S1/S4
    let mut center_by_pair: BTreeMap<(String, String), CenterPair> = BTreeMap::new();
    for (v, w) in model.weak_reducing_pairs() {
        center_by_pair.insert((v.clone(), w.clone()), center_of(model, &v, &w, false)?);
    }

    let torus_with_meridian = |sep: &str, meridian: &str, cross: &str| -> bool {
        model
            .disk(sep)
            .ok()
            .and_then(|d| d.solid_torus_piece())
            .is_some_and(|t| {
                model.locate(sep, meridian) == Some(t)
                    && model.cutoff_category(sep, cross) == Ok(CutoffCategory::Torus)
            })
    };

    for s in &cs.dvw.simplices {
        let pairs = pairs_in_simplex(model, s);
        if pairs.is_empty() {
            continue;
        }
        let centers: BTreeSet<&CenterPair> = pairs.iter().map(|p| &center_by_pair[p]).collect();
        if centers.len() != 1 {
            continue; // nonequivalent simplex
        }
        let dim = s.len() - 1;
        if dim >= 4 {
            push(
                StructureRule::S1,
                format!(
                    "equivalent simplex {} has dimension {dim}",
                    simplex_label(s)
                ),
            );
            continue;
        }
        if dim == 3 {
            let center = centers.into_iter().next().expect("one center");
            let (vs, ws): (Vec<&String>, Vec<&String>) = s
                .iter()
                .partition(|id| model.disk(id).map(|d| d.side) == Ok(Side::V));
            let well_formed = vs.len() == 2 && ws.len() == 2 && {
                let v_sep = vs.iter().find(|id| *id != &&center.v_id);
                let w_sep = ws.iter().find(|id| *id != &&center.w_id);
                match (v_sep, w_sep) {
                    (Some(vsep), Some(wsep)) => {
                        torus_with_meridian(vsep, &center.v_id, &center.w_id)
                            && torus_with_meridian(wsep, &center.w_id, &center.v_id)
                    }
                    _ => false,
                }
            };
            if !well_formed {
                push(
                    StructureRule::S1,
                    format!(
                        "equivalent 3-simplex {} is not two solid-torus disks with meridians",
                        simplex_label(s)
                    ),
                );
            }
            let inside_ai = cs.clusters.iter().any(|c| {
                c.cluster_type == TenType::AI && s.iter().all(|id| c.vertex_set.contains(id))
            });
            if !inside_ai {
                push(
                    StructureRule::S4,
                    format!(
                        "equivalent 3-simplex {} lies in no type A_I cluster",
                        simplex_label(s)
                    ),
                );
            }
        }
    }

    // S2: membership is total, single-valued, and consistent
    for (pair, center) in &center_by_pair {
        match cs.membership.get(pair) {
            None => push(
                StructureRule::S2,
                format!("pair ({},{}) has no cluster", pair.0, pair.1),
            ),
            Some(&i) => {
                let cluster = &cs.clusters[i];
                if cluster.center != *center
                    || !cluster.vertex_set.contains(&pair.0)
                    || !cluster.vertex_set.contains(&pair.1)
                {
                    push(
                        StructureRule::S2,
                        format!(
                            "pair ({},{}) is assigned to the cluster of {}",
                            pair.0, pair.1, cluster.center
                        ),
                    );
                }
            }
        }
    }
    for (i, c) in cs.clusters.iter().enumerate() {
        for s in c.simplex_set.iter().filter(|s| s.len() == 2) {
            if model.is_weak_reducing_pair(&s[0], &s[1]) {
                let pair = if model.disk(&s[0]).expect("disk").side == Side::V {
                    (s[0].clone(), s[1].clone())
                } else {
                    (s[1].clone(), s[0].clone())
                };
                if cs.membership.get(&pair) != Some(&i) {
                    push(
                        StructureRule::S2,
                        format!(
                            "pair ({},{}) lies in the cluster of {} but is assigned elsewhere",
                            pair.0, pair.1, c.center
                        ),
                    );
                }
            }
        }
    }

    // S3: intersection law
    for (i, a) in cs.clusters.iter().enumerate() {
        for b in cs.clusters.iter().skip(i + 1) {
            let common: Vec<&String> = a.vertex_set.intersection(&b.vertex_set).collect();
            if common.is_empty() {
                continue;
            }
            let shares = a.center.v_id == b.center.v_id || a.center.w_id == b.center.w_id;
            if !shares {
                push(
                    StructureRule::S3,
                    format!(
                        "clusters of {} and {} intersect but share no center disk",
                        a.center, b.center
                    ),
                );
            }
            let v_common = common
                .iter()
                .any(|id| model.disk(id).map(|d| d.side) == Ok(Side::V));
            let w_common = common
                .iter()
                .any(|id| model.disk(id).map(|d| d.side) == Ok(Side::W));
            if v_common && a.center.v_id != b.center.v_id {
                push(
                    StructureRule::S3,
                    format!(
                        "V-side intersection of {} and {} without equal V center disks",
                        a.center, b.center
                    ),
                );
            }
            if w_common && a.center.w_id != b.center.w_id {
                push(
                    StructureRule::S3,
                    format!(
                        "W-side intersection of {} and {} without equal W center disks",
                        a.center, b.center
                    ),
                );
            }
        }
    }

    // S5: star shape per cluster
    for c in &cs.clusters {
        if bare_type(c.cluster_type) && c.vertex_set.len() != 2 {
            push(
                StructureRule::S5,
                format!("bare cluster of {} has extra vertices", c.center),
            );
        }
        for s in &c.simplex_set {
            let (vs, ws): (Vec<&String>, Vec<&String>) = s
                .iter()
                .partition(|id| model.disk(id).map(|d| d.side) == Ok(Side::V));
            for (side_ids, hub) in [(&vs, &c.v_star.hub), (&ws, &c.w_star.hub)] {
                if side_ids.len() >= 3 {
                    push(
                        StructureRule::S5,
                        format!(
                            "cluster of {} meets one side in dimension >= 2 at {}",
                            c.center,
                            simplex_label(s)
                        ),
                    );
                }
                if s.len() == 2 && side_ids.len() == 2 && !s.contains(hub) {
                    push(
                        StructureRule::S5,
                        format!(
                            "leaf-leaf edge {} in the cluster of {}",
                            simplex_label(s),
                            c.center
                        ),
                    );
                }
            }
        }
    }

    out.sort();
    out.dedup();
    Ok(out)
}

/// Plain-text node/edge/face export of the complex.
pub fn export_graph(model: &SplittingModel) -> Result<String, ComplexError> {
    let complex = build_complex(model)?;
    let mut out = String::new();
    for d in model.disks() {
        let kind = if d.kind.is_sep() { "sep" } else { "nonsep" };
        writeln!(out, "node {} side={} kind={kind}", d.id, d.side).expect("string write");
    }
    for s in complex.simplices.iter().filter(|s| s.len() == 2) {
        writeln!(out, "edge {} {}", s[0], s[1]).expect("string write");
    }
    for f in faces(model, &complex) {
        let one = face_one_class(model, &f)?;
        writeln!(
            out,
            "face {} {} {} oneclass={one}",
            f.pair[0], f.pair[1], f.cross
        )
        .expect("string write");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivalence::tests::{GX3_V3, HBODY4, TWO_ISLAND};
    use crate::model::tests::{GB4, GD4, GX3};
    use crate::parse::parse_model;

    fn sx(ids: &[&str]) -> Simplex {
        ids.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn gx3_complex_is_the_full_triangle() {
        let m = parse_model(GX3).unwrap();
        let c = build_complex(&m).unwrap();
        assert!(c.simplices.contains(&sx(&["V1", "V2", "W1"])));
        assert!(c.simplices.contains(&sx(&["V1", "V2"])));
        assert_eq!(c.max_dimension(), Some(2));
        assert_eq!(c.simplices.len(), 3 + 3 + 1);
    }

    #[test]
    fn gd4_complex_is_one_edge() {
        let m = parse_model(GD4).unwrap();
        let c = build_complex(&m).unwrap();
        assert_eq!(c.max_dimension(), Some(1));
        assert!(c.simplices.contains(&sx(&["V1", "W1"])));
    }

    #[test]
    fn no_disjointness_gives_a_point_cloud() {
        let text = "\
manifold genus=3 vminus=[] wminus=[]
disk id=V1 side=V kind=nonsep
disk id=W1 side=W kind=nonsep
";
        let m = parse_model(text).unwrap();
        let c = build_complex(&m).unwrap();
        assert_eq!(c.max_dimension(), Some(0));
        // and nothing crosses, so the restricted subset is empty
        let s = dvw(&m, &c);
        assert!(s.simplices.is_empty());
        assert!(s.components.is_empty());
    }

    #[test]
    fn dvw_on_gx3_keeps_everything() {
        let m = parse_model(GX3).unwrap();
        let c = build_complex(&m).unwrap();
        let s = dvw(&m, &c);
        assert_eq!(s.simplices.len(), c.simplices.len());
        assert_eq!(s.components.len(), 1);
    }

    #[test]
    fn dvw_excludes_isolated_disks() {
        let text = "\
manifold genus=3 vminus=[] wminus=[]
disk id=V1 side=V kind=nonsep
disk id=V9 side=V kind=nonsep
disk id=W1 side=W kind=nonsep
disjoint V1 W1
unionsep V1 W1 no
";
        let m = parse_model(text).unwrap();
        let c = build_complex(&m).unwrap();
        let s = dvw(&m, &c);
        assert!(!s.simplices.contains(&sx(&["V9"])));
        assert_eq!(s.components.len(), 1);
    }

    #[test]
    fn two_island_fixture_has_two_components() {
        let m = parse_model(TWO_ISLAND).unwrap();
        let c = build_complex(&m).unwrap();
        let s = dvw(&m, &c);
        assert_eq!(s.components.len(), 2);
    }

    #[test]
    fn gx3_cluster_is_the_whole_triangle() {
        let m = parse_model(GX3).unwrap();
        let center = CenterPair {
            v_id: "V1".into(),
            w_id: "W1".into(),
        };
        let c = equivalent_cluster(&m, &center).unwrap();
        assert_eq!(c.cluster_type, TenType::AI);
        assert_eq!(
            c.vertex_set,
            ["V1", "V2", "W1"].iter().map(|s| s.to_string()).collect()
        );
        assert!(c.simplex_set.contains(&sx(&["V1", "V2", "W1"])));
        assert_eq!(c.v_star.leaves.len(), 1);
        assert!(c.w_star.leaves.is_empty());
    }

    #[test]
    fn bare_clusters_are_single_edges() {
        let gb4 = parse_model(GB4).unwrap();
        let c = equivalent_cluster(
            &gb4,
            &CenterPair {
                v_id: "V2".into(),
                w_id: "W1".into(),
            },
        )
        .unwrap();
        assert_eq!(c.cluster_type, TenType::BWI);
        assert_eq!(c.vertex_set.len(), 2);

        let gd4 = parse_model(GD4).unwrap();
        let c = equivalent_cluster(
            &gd4,
            &CenterPair {
                v_id: "V1".into(),
                w_id: "W1".into(),
            },
        )
        .unwrap();
        assert_eq!(c.cluster_type, TenType::D);
        assert_eq!(c.vertex_set.len(), 2);
    }

    #[test]
    fn torus_members_are_not_centers() {
        let m = parse_model(GX3).unwrap();
        let err = equivalent_cluster(
            &m,
            &CenterPair {
                v_id: "V2".into(),
                w_id: "W1".into(),
            },
        );
        assert!(matches!(
            err,
            Err(ComplexError::Equiv(EquivError::NotACenter(_)))
        ));
    }

    #[test]
    fn gx3_decomposes_into_one_clean_cluster() {
        let m = parse_model(GX3).unwrap();
        let cs = cluster_decomposition(&m).unwrap();
        assert_eq!(cs.clusters.len(), 1);
        assert!(cs.nonequivalent.is_empty());
        assert!(cs.unassigned.is_empty());
        assert!(check_structure(&m, &cs).unwrap().is_empty());
    }

    #[test]
    fn two_islands_decompose_into_two_clusters() {
        let m = parse_model(TWO_ISLAND).unwrap();
        let cs = cluster_decomposition(&m).unwrap();
        assert_eq!(cs.clusters.len(), 2);
        assert!(cs.nonequivalent.is_empty());
        assert!(check_structure(&m, &cs).unwrap().is_empty());
    }

    #[test]
    fn hbody_face_is_a_nonequivalent_simplex() {
        let m = parse_model(HBODY4).unwrap();
        let cs = cluster_decomposition(&m).unwrap();
        assert_eq!(cs.nonequivalent, vec![sx(&["V1", "V2", "W1"])]);
        assert_eq!(cs.clusters.len(), 2);
        assert!(check_structure(&m, &cs).unwrap().is_empty());
    }

    #[test]
    fn clusters_meeting_in_a_vertex_pass_s3() {
        let m = parse_model(GX3_V3).unwrap();
        let cs = cluster_decomposition(&m).unwrap();
        assert_eq!(cs.clusters.len(), 1);
        assert!(check_structure(&m, &cs).unwrap().is_empty());
    }

    #[test]
    fn corrupted_membership_trips_s2() {
        let m = parse_model(TWO_ISLAND).unwrap();
        let mut cs = cluster_decomposition(&m).unwrap();
        let key = ("V1".to_string(), "W1".to_string());
        let wrong = (cs.membership[&key] + 1) % cs.clusters.len();
        cs.membership.insert(key, wrong);
        let violations = check_structure(&m, &cs).unwrap();
        assert!(violations.iter().any(|v| v.rule == StructureRule::S2));
    }

    #[test]
    fn coverage_of_dvw_by_clusters_and_leftovers() {
        for text in [GX3, GB4, GD4, TWO_ISLAND, HBODY4, GX3_V3] {
            let m = parse_model(text).unwrap();
            let cs = cluster_decomposition(&m).unwrap();
            for s in &cs.dvw.simplices {
                let in_cluster = cs
                    .clusters
                    .iter()
                    .any(|c| s.iter().all(|id| c.vertex_set.contains(id)));
                let in_leftover = cs
                    .nonequivalent
                    .iter()
                    .chain(cs.unassigned.iter())
                    .any(|n| s.iter().all(|id| n.contains(id)));
                assert!(in_cluster || in_leftover, "{} uncovered", simplex_label(s));
            }
        }
    }

    #[test]
    fn export_graph_format() {
        let m = parse_model(GX3).unwrap();
        let text = export_graph(&m).unwrap();
        assert!(text.contains("node V1 side=V kind=nonsep"));
        assert!(text.contains("node V2 side=V kind=sep"));
        assert!(text.contains("edge V1 V2"));
        assert!(text.contains("face V1 V2 W1 oneclass=true"));
    }
}
