//! Report builders shared by the CLI and the C API: each analysis renders to
//! sorted key=value lines plus an exit/status code (0 pass, 1 violations or
//! analysis errors).

use crate::analysis::{analyze_criticality, phi_omega, product_cutoff_check, AnalysisError};
use crate::complex::{build_complex, check_structure, cluster_decomposition, dvw, simplex_label};
use crate::equivalence::ghs_descriptor;
use crate::model::{BoundaryComponent, SplittingModel};
use crate::oracle::oracle_check;
use crate::reduction::{classify_five, classify_ten, preweak_reduce, weak_reduce};
use crate::report::{idx, Report};

fn minus_ids(bs: &[BoundaryComponent]) -> Vec<String> {
    bs.iter().map(|b| b.id.clone()).collect()
}

pub fn validate_report(model: &SplittingModel) -> (u8, Report) {
    let violations = model.validate();
    let mut r = Report::new();
    r.set(
        "status",
        if violations.is_empty() {
            "valid"
        } else {
            "invalid"
        },
    );
    r.set("violations", violations.len());
    for (i, v) in violations.iter().enumerate() {
        r.set(format!("violation.{}", idx(i)), v);
    }
    (u8::from(!violations.is_empty()), r)
}

pub fn reduce_report(
    model: &SplittingModel,
    v: &str,
    w: &str,
    raw: bool,
) -> Result<(u8, Report), String> {
    let mut r = Report::new();
    r.set("pair", format!("{v},{w}"));
    if raw {
        let rg = preweak_reduce(model, v, w).map_err(|e| e.to_string())?;
        r.set("thick", &rg.thick);
        r.set("thin", &rg.thin);
    } else {
        let g = weak_reduce(model, v, w).map_err(|e| e.to_string())?;
        r.set("thick_v", &g.thick_v);
        r.set("thick_w", &g.thick_w);
        r.set("thin", &g.thin);
        r.set("body_v1", &g.body_v1);
        r.set("body_v2", &g.body_v2);
        r.set("body_w1", &g.body_w1);
        r.set("body_w2", &g.body_w2);
        r.set("v2_minus_connected", g.v2_minus_connected);
        r.set("w1_minus_connected", g.w1_minus_connected);
        r.set_list("v2_extra_minus", &minus_ids(&g.v2_extra_minus));
        r.set_list("w1_extra_minus", &minus_ids(&g.w1_extra_minus));
        r.set("five", classify_five(&g));
        r.set("ten", classify_ten(model, v, w).map_err(|e| e.to_string())?);
    }
    Ok((0, r))
}

pub fn classify_pair_report(
    model: &SplittingModel,
    v: &str,
    w: &str,
) -> Result<(u8, Report), String> {
    let mut r = Report::new();
    r.set(
        "type",
        classify_ten(model, v, w).map_err(|e| e.to_string())?,
    );
    Ok((0, r))
}

pub fn classify_all_report(model: &SplittingModel) -> Result<(u8, Report), String> {
    let mut r = Report::new();
    for (v, w) in model.weak_reducing_pairs() {
        let t = classify_ten(model, &v, &w).map_err(|e| e.to_string())?;
        r.set(format!("type.{v},{w}"), t);
    }
    Ok((0, r))
}

pub fn clusters_report(model: &SplittingModel) -> Result<(u8, Report), String> {
    let mut r = Report::new();
    let cs = match cluster_decomposition(model) {
        Ok(cs) => cs,
        Err(e) => {
            r.set("error", e);
            return Ok((1, r));
        }
    };
    r.set("clusters", cs.clusters.len());
    for (i, c) in cs.clusters.iter().enumerate() {
        let key = format!("cluster.{}", idx(i));
        r.set(format!("{key}.center"), &c.center);
        r.set(format!("{key}.type"), c.cluster_type);
        r.set_list(
            format!("{key}.vertices"),
            &c.vertex_set.iter().cloned().collect::<Vec<_>>(),
        );
        r.set(format!("{key}.simplices"), c.simplex_set.len());
        r.set_list(
            format!("{key}.v_leaves"),
            &c.v_star.leaves.iter().cloned().collect::<Vec<_>>(),
        );
        r.set_list(
            format!("{key}.w_leaves"),
            &c.w_star.leaves.iter().cloned().collect::<Vec<_>>(),
        );
    }
    r.set("nonequivalent", cs.nonequivalent.len());
    for (i, s) in cs.nonequivalent.iter().enumerate() {
        r.set(format!("nonequivalent.{}", idx(i)), simplex_label(s));
    }
    r.set("unassigned", cs.unassigned.len());
    for (i, s) in cs.unassigned.iter().enumerate() {
        r.set(format!("unassigned.{}", idx(i)), simplex_label(s));
    }
    // distinct clusters with equal descriptors cannot be separated further at
    // model level: potentially equivalent, undecided
    let mut undecided = Vec::new();
    for (i, a) in cs.clusters.iter().enumerate() {
        for (j, b) in cs.clusters.iter().enumerate().skip(i + 1) {
            let ka = ghs_descriptor(
                &weak_reduce(model, &a.center.v_id, &a.center.w_id).map_err(|e| e.to_string())?,
            );
            let kb = ghs_descriptor(
                &weak_reduce(model, &b.center.v_id, &b.center.w_id).map_err(|e| e.to_string())?,
            );
            if ka != kb {
                continue;
            }
            let alarm =
                product_cutoff_check(model, &a.center, &b.center).map_err(|e| e.to_string())?;
            undecided.push(format!(
                "clusters {},{} share descriptor {ka}: potentially equivalent, undecided \
                 (product_cutoff_check={alarm})",
                idx(i),
                idx(j)
            ));
        }
    }
    r.set("undecided", undecided.len());
    for (i, u) in undecided.iter().enumerate() {
        r.set(format!("undecided.{}", idx(i)), u);
    }
    let violations = check_structure(model, &cs).map_err(|e| e.to_string())?;
    r.set("structure_violations", violations.len());
    for (i, v) in violations.iter().enumerate() {
        r.set(format!("structure.{}", idx(i)), v);
    }
    Ok((u8::from(!violations.is_empty()), r))
}

pub fn components_report(model: &SplittingModel) -> Result<(u8, Report), String> {
    let complex = build_complex(model).map_err(|e| e.to_string())?;
    let subset = dvw(model, &complex);
    let mut r = Report::new();
    r.set("components", subset.components.len());
    for (i, c) in subset.components.iter().enumerate() {
        r.set_list(
            format!("component.{}", idx(i)),
            &c.iter().cloned().collect::<Vec<_>>(),
        );
    }
    Ok((0, r))
}

pub fn criticality_report(model: &SplittingModel) -> Result<(u8, Report), String> {
    let mut r = Report::new();
    let cs = match cluster_decomposition(model) {
        Ok(cs) => cs,
        Err(e) => {
            r.set("error", e);
            return Ok((1, r));
        }
    };
    let report = analyze_criticality(model, &cs).map_err(|e| e.to_string())?;
    r.set("verdict", report.verdict);
    r.set("notes", &report.notes);
    if let Some((c0, c1)) = &report.partition {
        r.set_list("c0", c0);
        r.set_list("c1", c1);
    }
    if let Some(face) = &report.witness_face {
        let ids: Vec<String> = face.ids().iter().map(|s| s.to_string()).collect();
        r.set("witness_face", simplex_label(&ids));
        r.set("witness_orientation", face.orientation);
    }
    Ok((0, r))
}

pub fn phi_report(model: &SplittingModel) -> Result<(u8, Report), String> {
    let mut r = Report::new();
    let cs = match cluster_decomposition(model) {
        Ok(cs) => cs,
        Err(e) => {
            r.set("error", e);
            return Ok((1, r));
        }
    };
    let table = match phi_omega(model, &cs) {
        Ok(t) => t,
        Err(AnalysisError::Genus3Only(_)) => {
            r.set("error", "Genus3Only");
            return Ok((1, r));
        }
        Err(e) => {
            r.set("error", e);
            return Ok((1, r));
        }
    };
    r.set("rows", table.rows.len());
    for row in &table.rows {
        let key = format!("component.{}", idx(row.component));
        r.set(format!("{key}.center"), &row.center);
        r.set(format!("{key}.type"), row.ten_type);
        r.set(format!("{key}.descriptor"), &row.descriptor);
    }
    for (desc, comps) in &table.omega_groups {
        r.set_list(format!("omega.{desc}.components"), comps);
        r.set(format!("omega.{desc}.size"), comps.len());
    }
    r.set(
        "omega.caveat",
        "descriptor keys over-approximate isotopy; sizes are model-level embedding counts",
    );
    Ok((0, r))
}

pub fn oracle_report(model: &SplittingModel) -> Result<(u8, Report), String> {
    let mut r = Report::new();
    let cs = match cluster_decomposition(model) {
        Ok(cs) => cs,
        Err(e) => {
            r.set("error", e);
            return Ok((1, r));
        }
    };
    let report = oracle_check(model, &cs).map_err(|e| e.to_string())?;
    r.set("result", if report.pass { "pass" } else { "fail" });
    r.set("pairs", report.pair_count);
    r.set("oracle_clusters", report.oracle_cluster_count);
    for (i, mm) in report.mismatches.iter().enumerate() {
        r.set(format!("mismatch.{}", idx(i)), mm);
    }
    Ok((u8::from(!report.pass), r))
}
