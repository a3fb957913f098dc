//! Independent oracle for the cluster decomposition.
//!
//! Clusters are recomputed from scratch as connected components of the graph
//! whose nodes are weak reducing pairs and whose edges join the two pairs of
//! a face with one equivalence class, refined by pairwise equivalence. The
//! thin-level genera are recomputed from the closed formulas. Mismatches
//! against the canonical center-keyed decomposition are failures.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crate::complex::{faces, ClusterSet, ComplexError};
use crate::equivalence::{face_one_class, ghs_equal_exact};
use crate::model::{DiskKind, SplittingModel, UnionSep};
use crate::reduction::weak_reduce;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub pass: bool,
    pub pair_count: usize,
    pub oracle_cluster_count: usize,
    pub mismatches: Vec<String>,
}

type Pair = (String, String);

/// Partition the weak reducing pairs by one-class-face closure intersected
/// with pairwise equivalence.
pub fn closure_clusters(model: &SplittingModel) -> Result<Vec<BTreeSet<Pair>>, ComplexError> {
    let pairs = model.weak_reducing_pairs();
    let index: BTreeMap<&Pair, usize> = pairs.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut parent: Vec<usize> = (0..pairs.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let complex = crate::complex::build_complex(model)?;
    for face in faces(model, &complex) {
        if !face_one_class(model, &face)? {
            continue;
        }
        let [p, q] = face.reducing_pairs();
        let (a, b) = (index[&p], index[&q]);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut groups: BTreeMap<usize, BTreeSet<Pair>> = BTreeMap::new();
    for (i, p) in pairs.iter().enumerate() {
        groups
            .entry(find(&mut parent, i))
            .or_default()
            .insert(p.clone());
    }
    // refine by the equivalence decision itself; a split here would mean a
    // one-class chain joined inequivalent pairs
    let mut refined: Vec<BTreeSet<Pair>> = Vec::new();
    for group in groups.into_values() {
        let mut cells: Vec<BTreeSet<Pair>> = Vec::new();
        'pairs: for p in group {
            for cell in cells.iter_mut() {
                let q = cell.iter().next().expect("nonempty cell");
                if ghs_equal_exact(model, (&p.0, &p.1), (&q.0, &q.1), false)? {
                    cell.insert(p);
                    continue 'pairs;
                }
            }
            cells.push(BTreeSet::from([p]));
        }
        refined.extend(cells);
    }
    refined.sort();
    Ok(refined)
}

/// Closed-form genera of the inner thin level, straight from the relation
/// table.
pub fn thin_genera_formula(
    model: &SplittingModel,
    v_id: &str,
    w_id: &str,
) -> Result<Vec<u32>, ComplexError> {
    let dv = model.disk(v_id)?;
    let dw = model.disk(w_id)?;
    let n = model.genus();
    let located = |sep: &str, other: &str| -> u32 {
        let label = model.locate(sep, other).expect("well-formed");
        model.disk(sep).expect("disk").piece(label).expect("sep").0
    };
    Ok(match (&dv.kind, &dw.kind) {
        (DiskKind::Nonsep, DiskKind::Nonsep) => match model.unionsep(v_id, w_id) {
            Some(UnionSep::Separating(g1, g2)) => {
                let mut v = vec![g1, g2];
                v.sort();
                v
            }
            _ => vec![n - 2],
        },
        (DiskKind::Sep { .. }, DiskKind::Nonsep) => vec![located(v_id, w_id) - 1],
        (DiskKind::Nonsep, DiskKind::Sep { .. }) => vec![located(w_id, v_id) - 1],
        (DiskKind::Sep { .. }, DiskKind::Sep { .. }) => {
            vec![located(v_id, w_id) + located(w_id, v_id) - n]
        }
    })
}

/// Recompute clusters and thin genera independently and compare them against
/// a canonical decomposition.
pub fn oracle_check(model: &SplittingModel, cs: &ClusterSet) -> Result<OracleReport, ComplexError> {
    let mut mismatches = Vec::new();

    let oracle: Vec<BTreeSet<Pair>> = closure_clusters(model)?;
    let mut canonical_groups: BTreeMap<usize, BTreeSet<Pair>> = BTreeMap::new();
    for (pair, &i) in &cs.membership {
        canonical_groups.entry(i).or_default().insert(pair.clone());
    }
    let mut canonical: Vec<BTreeSet<Pair>> = canonical_groups.into_values().collect();
    canonical.sort();
    if oracle != canonical {
        mismatches.push(format!(
            "cluster partitions differ: oracle {} vs canonical {}",
            render_partition(&oracle),
            render_partition(&canonical)
        ));
    }

    for (v, w) in model.weak_reducing_pairs() {
        let g = weak_reduce(model, &v, &w)?;
        let mut surface_route: Vec<u32> = g.thin.pieces().iter().map(|p| p.genus).collect();
        surface_route.sort();
        let formula = thin_genera_formula(model, &v, &w)?;
        if surface_route != formula {
            mismatches.push(format!(
                "thin genera of ({v},{w}) differ: surfaces {surface_route:?} vs formula {formula:?}"
            ));
        }
    }

    Ok(OracleReport {
        pass: mismatches.is_empty(),
        pair_count: model.weak_reducing_pairs().len(),
        oracle_cluster_count: oracle.len(),
        mismatches,
    })
}

fn render_partition(partition: &[BTreeSet<Pair>]) -> String {
    let cells: Vec<String> = partition
        .iter()
        .map(|cell| {
            let pairs: Vec<String> = cell.iter().map(|(v, w)| format!("({v},{w})")).collect();
            format!("{{{}}}", pairs.join(" "))
        })
        .collect();
    format!("[{}]", cells.join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::cluster_decomposition;
    use crate::equivalence::tests::{GX3_V3, HBODY4, TWO_ISLAND};
    use crate::model::tests::{GB4, GD4, GX3};
    use crate::parse::parse_model;

    #[test]
    fn fixtures_pass_the_oracle() {
        for text in [GX3, GB4, GD4, TWO_ISLAND, HBODY4, GX3_V3] {
            let m = parse_model(text).unwrap();
            let cs = cluster_decomposition(&m).unwrap();
            let r = oracle_check(&m, &cs).unwrap();
            assert!(r.pass, "{:?}", r.mismatches);
        }
    }

    #[test]
    fn corrupted_membership_fails_the_oracle() {
        let m = parse_model(TWO_ISLAND).unwrap();
        let mut cs = cluster_decomposition(&m).unwrap();
        let key = ("V1".to_string(), "W1".to_string());
        let wrong = (cs.membership[&key] + 1) % cs.clusters.len();
        cs.membership.insert(key, wrong);
        let r = oracle_check(&m, &cs).unwrap();
        assert!(!r.pass);
    }

    #[test]
    fn face_criterion_matches_pair_equivalence() {
        for text in [GX3, TWO_ISLAND, HBODY4, GX3_V3] {
            let m = parse_model(text).unwrap();
            let complex = crate::complex::build_complex(&m).unwrap();
            for face in faces(&m, &complex) {
                let [p, q] = face.reducing_pairs();
                let one = face_one_class(&m, &face).unwrap();
                let equal = ghs_equal_exact(&m, (&p.0, &p.1), (&q.0, &q.1), false).unwrap();
                assert_eq!(one, equal, "face {face}");
            }
        }
    }
}
