//! Verb dispatch shared by the command-line front end and the fixture suite.
//!
//! Every verb maps an [`InputDoc`] to a [`Report`]: a JSON value with sorted
//! keys plus a text rendering. Nothing here reads clocks or the environment
//! beyond size limits, so output bytes depend only on the input.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::brauer::{
    br_nr_flag, br_nr_grassmannian, br_nr_linear, br_nr_projective, br_nr_toric, br_stack_fixed_point,
    bogomolov_multiplier_with, Action, BrauerOptions, BrauerReport,
};
use crate::cohomology::{h1, h2, CohomologyGroup, GModule, ModuleKind};
use crate::error::{Error, Result};
use crate::groups::{abelian_structure, bicyclic_subgroups, FiniteGroup};
use crate::io::InputDoc;

/// Verbs that take an input document.
pub const VERBS: &[&str] = &["group-info", "h1", "h2", "b0", "brnr", "stack"];

/// Action kinds accepted by `brnr`.
pub const BRNR_KINDS: &[&str] = &["linear", "projective", "grassmannian", "flag", "toric"];

/// Options shared by the computational verbs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Export cocycle tables for the reported classes.
    pub witness: bool,
    /// Include per-subgroup diagnostics in Brauer reports.
    pub diagnostics: bool,
    pub all_subgroups: bool,
    /// Overrides the document's `r`.
    pub r: Option<usize>,
    /// Overrides the document's `flag_type`.
    pub flag_type: Option<Vec<usize>>,
}

/// A rendered result.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub json: Value,
    pub text: String,
}

impl Report {
    /// Pretty JSON with a trailing newline.
    pub fn json_bytes(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.json).expect("values serialize");
        s.push('\n');
        s
    }
}

/// Checks that the options make sense for the verb before any work is done.
pub fn check_options(verb: &str, kind: Option<&str>, opts: &RunOptions) -> Result<()> {
    if !VERBS.contains(&verb) {
        return Err(Error::Parse(format!("unknown verb {verb:?}")));
    }
    match (verb, kind) {
        ("brnr", None) => {
            return Err(Error::Parse(format!("brnr needs an action kind: {}", BRNR_KINDS.join(" | "))))
        }
        ("brnr", Some(k)) if !BRNR_KINDS.contains(&k) => {
            return Err(Error::Parse(format!("unknown brnr kind {k:?}")))
        }
        ("brnr", _) => {}
        (_, Some(k)) => return Err(Error::Parse(format!("{verb} takes no action kind (got {k:?})"))),
        _ => {}
    }
    let brauer = matches!(verb, "b0" | "brnr" | "stack");
    if (opts.all_subgroups || opts.diagnostics) && !brauer {
        return Err(Error::Parse(format!("{verb} does not use bicyclic subgroups")));
    }
    if opts.witness && verb == "group-info" {
        return Err(Error::Parse("group-info has no witnesses".into()));
    }
    let grass = verb == "stack" || kind == Some("grassmannian");
    if opts.r.is_some() && !grass {
        return Err(Error::Parse("--r applies to brnr grassmannian and stack only".into()));
    }
    let flag = verb == "stack" || kind == Some("flag");
    if opts.flag_type.is_some() && !flag {
        return Err(Error::Parse("--flag-type applies to brnr flag and stack only".into()));
    }
    Ok(())
}

/// Runs one verb on a parsed document.
pub fn run(verb: &str, kind: Option<&str>, doc: &InputDoc, opts: &RunOptions) -> Result<Report> {
    check_options(verb, kind, opts)?;
    let g = doc.build_group()?;
    match verb {
        "group-info" => group_info(&g),
        "h1" | "h2" => cohomology_report(verb, &g, &doc.build_module(&g)?, opts),
        "b0" => {
            let rep = bogomolov_multiplier_with(&g, brauer_opts(opts))?;
            brauer_output(&g, rep, opts)
        }
        "brnr" => {
            let rep = brnr(&g, kind.unwrap_or_default(), doc, opts)?;
            brauer_output(&g, rep, opts)
        }
        "stack" => stack(&g, doc, opts),
        _ => unreachable!("checked above"),
    }
}

fn brauer_opts(opts: &RunOptions) -> BrauerOptions {
    BrauerOptions {
        all_subgroups: opts.all_subgroups,
    }
}

fn need_action(g: &FiniteGroup, doc: &InputDoc) -> Result<Action> {
    doc.build_action(g)?
        .ok_or_else(|| Error::Validation("document has no projective action".into()))
}

fn brnr(g: &FiniteGroup, kind: &str, doc: &InputDoc, opts: &RunOptions) -> Result<BrauerReport> {
    let bo = brauer_opts(opts);
    match kind {
        "linear" => br_nr_linear(g, bo),
        "projective" => match need_action(g, doc)? {
            Action::Projective(p) => br_nr_projective(g, &p, bo),
            Action::Correlation(_) => Err(Error::Validation(
                "correlations act on Grassmannians and flags, not on projective space".into(),
            )),
        },
        "grassmannian" => {
            let r = opts
                .r
                .or(doc.r)
                .ok_or_else(|| Error::Validation("grassmannian needs r".into()))?;
            br_nr_grassmannian(g, &need_action(g, doc)?, r, bo)
        }
        "flag" => {
            let t = opts
                .flag_type
                .clone()
                .or_else(|| doc.flag_type.clone())
                .ok_or_else(|| Error::Validation("flag needs flag_type".into()))?;
            br_nr_flag(g, &need_action(g, doc)?, &t, bo)
        }
        "toric" => {
            let t = doc
                .build_toric(g)?
                .ok_or_else(|| Error::Validation("document has no toric action".into()))?;
            br_nr_toric(g, &t, bo)
        }
        other => Err(Error::Parse(format!("unknown brnr kind {other:?}"))),
    }
}

/// Which `brnr` formula a document describes, for `stack`.
fn implied_kind(doc: &InputDoc, opts: &RunOptions) -> &'static str {
    if doc.toric.is_some() {
        "toric"
    } else if opts.flag_type.is_some() || doc.flag_type.is_some() {
        "flag"
    } else if opts.r.is_some() || doc.r.is_some() {
        "grassmannian"
    } else if doc.projective.is_some() {
        "projective"
    } else {
        "linear"
    }
}

fn stack(g: &FiniteGroup, doc: &InputDoc, opts: &RunOptions) -> Result<Report> {
    if let Some(fp) = doc.flags.fixed_point {
        let pic = doc.build_pic(g)?;
        let s = br_stack_fixed_point(g, &pic, fp)?;
        let h2_part = crate::cohomology::h2_qz(g)?;
        let h1_part = h1(g, &pic)?;
        let json = json!({
            "kind": "fixed_point",
            "group_order": g.order(),
            "h2": h2_part.invariant_factors(),
            "h1_pic": h1_part.invariant_factors(),
            "pic_rank": pic.rank(),
            "stack_group": {
                "invariant_factors": s.invariant_factors(),
                "witnesses": s.witnesses(),
            },
        });
        let mut text = String::new();
        let _ = writeln!(text, "kind: fixed_point");
        let _ = writeln!(text, "group order: {}", g.order());
        let _ = writeln!(text, "H2(G, Q/Z): {:?}", h2_part.invariant_factors());
        let _ = writeln!(text, "H1(G, Pic): {:?} (Pic of rank {})", h1_part.invariant_factors(), pic.rank());
        let _ = writeln!(text, "stack group: {:?}", s.invariant_factors());
        return Ok(Report { json, text });
    }
    let kind = implied_kind(doc, opts);
    let rep = brnr(g, kind, doc, opts)?;
    let json = json!({
        "kind": kind,
        "group_order": g.order(),
        "h2": rep.h2_factors,
        "am_generators": rep.am_generators,
        "am_descriptions": rep.am_descriptions,
        "stack_group": {
            "invariant_factors": rep.stack_group.invariant_factors(),
            "witnesses": rep.stack_group.witnesses(),
        },
    });
    let mut text = String::new();
    let _ = writeln!(text, "kind: {kind}");
    let _ = writeln!(text, "group order: {}", g.order());
    let _ = writeln!(text, "H2(G, Q/Z): {:?}", rep.h2_factors);
    for (v, d) in rep.am_generators.iter().zip(&rep.am_descriptions) {
        let _ = writeln!(text, "Amitsur generator {v:?} ({d})");
    }
    let _ = writeln!(text, "stack group: {:?}", rep.stack_factors());
    Ok(Report { json, text })
}

fn brauer_output(g: &FiniteGroup, rep: BrauerReport, opts: &RunOptions) -> Result<Report> {
    let mut json = rep.to_json(opts.diagnostics);
    let mut text = rep.to_text();
    if opts.witness {
        let h = crate::cohomology::h2_qz(g)?;
        let factors = h.invariant_factors().to_vec();
        let tables: Vec<Value> = rep
            .unramified_group
            .witnesses()
            .iter()
            .map(|w| {
                let coords: Vec<u64> = w
                    .iter()
                    .zip(&factors)
                    .map(|(&x, &d)| x.rem_euclid(d as i64) as u64)
                    .collect();
                Ok(cochain_json(&h.cochain(&coords)?, g.order()))
            })
            .collect::<Result<_>>()?;
        let _ = writeln!(text, "witness cocycles: {} (values a/N with N = {})", tables.len(), rep.modulus);
        json["witness_cocycles"] = Value::Array(tables);
    }
    Ok(Report { json, text })
}

fn cochain_json(c: &crate::cohomology::Cochain, order: usize) -> Value {
    let rows: Vec<Value> = match c.degree {
        1 => (0..order).map(|x| json!(c.value1(x))).collect(),
        _ => (0..order)
            .map(|x| Value::Array((0..order).map(|y| json!(c.value2(x, y))).collect()))
            .collect(),
    };
    json!({ "degree": c.degree, "modulus": c.modulus, "values": rows })
}

fn module_json(m: &GModule) -> Value {
    match m.kind() {
        ModuleKind::TrivialQZ => json!({ "kind": "trivial_qz" }),
        ModuleKind::Finite(f) => json!({ "kind": "finite", "factors": f, "trivial_action": m.is_trivial_action() }),
        ModuleKind::Lattice(d) => json!({ "kind": "lattice", "rank": d, "trivial_action": m.is_trivial_action() }),
    }
}

fn cohomology_report(verb: &str, g: &FiniteGroup, m: &GModule, opts: &RunOptions) -> Result<Report> {
    let h: CohomologyGroup = if verb == "h1" { h1(g, m)? } else { h2(g, m)? };
    let mut json = json!({
        "degree": h.degree(),
        "group_order": g.order(),
        "module": module_json(m),
        "modulus": h.modulus(),
        "invariant_factors": h.invariant_factors(),
        "order": h.order().to_string(),
    });
    let mut text = String::new();
    let _ = writeln!(text, "H{}(G, M) for |G| = {}", h.degree(), g.order());
    let _ = writeln!(text, "module: {}", module_json(m));
    let _ = writeln!(text, "invariant factors: {:?}", h.invariant_factors());
    let _ = writeln!(text, "order: {}", h.order());
    if opts.witness {
        let reps: Vec<Value> = h.representatives().iter().map(|c| cochain_json(c, g.order())).collect();
        let _ = writeln!(text, "representative cocycles: {}", reps.len());
        json["cocycles"] = Value::Array(reps);
    }
    Ok(Report { json, text })
}

fn group_info(g: &FiniteGroup) -> Result<Report> {
    let mut census: BTreeMap<usize, usize> = BTreeMap::new();
    for x in 0..g.order() {
        *census.entry(g.element_order(x)).or_default() += 1;
    }
    let center = g.center();
    let derived = g.derived_subgroup();
    let (quot, _) = g.quotient(&derived)?;
    let ab = abelian_structure(&quot, &quot.whole())?;
    let bicyclic = bicyclic_subgroups(g, true).len();
    let bicyclic_all = bicyclic_subgroups(g, false).len();
    let gens: Vec<Value> = g
        .generators()
        .iter()
        .map(|&x| json!({ "index": x, "label": g.label(x), "order": g.element_order(x) }))
        .collect();
    let json = json!({
        "order": g.order(),
        "abelian": g.is_abelian(),
        "exponent": g.exponent(),
        "generators": gens,
        "center_order": center.order(),
        "derived_order": derived.order(),
        "abelianization": ab.invariant_factors,
        "element_orders": census.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
        "bicyclic_classes": bicyclic,
        "bicyclic_subgroups": bicyclic_all,
    });
    let mut text = String::new();
    let _ = writeln!(text, "order: {}", g.order());
    let _ = writeln!(text, "abelian: {}", g.is_abelian());
    let _ = writeln!(text, "exponent: {}", g.exponent());
    let labels: Vec<String> = g.generators().iter().map(|&x| g.label(x)).collect();
    let _ = writeln!(text, "generators: {}", labels.join(", "));
    let _ = writeln!(text, "center order: {}", center.order());
    let _ = writeln!(text, "derived subgroup order: {}", derived.order());
    let _ = writeln!(text, "abelianization: {:?}", ab.invariant_factors);
    let census_text: Vec<String> = census.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    let _ = writeln!(text, "element orders: {}", census_text.join(" "));
    let _ = writeln!(text, "bicyclic subgroups: {bicyclic_all} ({bicyclic} up to conjugacy)");
    Ok(Report { json, text })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(s: &str) -> InputDoc {
        InputDoc::parse(s).unwrap()
    }

    #[test]
    fn option_compatibility() {
        let o = RunOptions { r: Some(2), ..Default::default() };
        assert!(check_options("h2", None, &o).is_err());
        assert!(check_options("brnr", Some("grassmannian"), &o).is_ok());
        assert!(check_options("brnr", None, &RunOptions::default()).is_err());
        assert!(check_options("brnr", Some("cubic"), &RunOptions::default()).is_err());
        assert!(check_options("h2", Some("toric"), &RunOptions::default()).is_err());
        assert!(check_options("frobnicate", None, &RunOptions::default()).is_err());
        let o = RunOptions { all_subgroups: true, ..Default::default() };
        assert!(check_options("h1", None, &o).is_err());
    }

    #[test]
    fn a4_h2_and_klein_b0() {
        let a4 = doc(r#"{"kind":"permutation","degree":4,"generators":[[1,2,0,3],[1,0,3,2]]}"#);
        let r = run("h2", None, &a4, &RunOptions::default()).unwrap();
        assert_eq!(r.json["invariant_factors"], json!([2]));
        let k4 = doc(r#"{"kind":"abelian","factors":[2,2]}"#);
        let r = run("b0", None, &k4, &RunOptions { witness: true, ..Default::default() }).unwrap();
        assert_eq!(r.json["unramified_group"]["invariant_factors"], json!([]));
        assert_eq!(r.json["witness_cocycles"], json!([]));
        let info = run("group-info", None, &a4, &RunOptions::default()).unwrap();
        assert_eq!(info.json["abelianization"], json!([3]));
        assert_eq!(info.json["center_order"], json!(1));
    }

    #[test]
    fn toric_bad_matrix_names_generator() {
        let d = doc(r#"{"group":{"kind":"cyclic","n":2},"toric":{"rank":2,"matrices":{"g0":[[2,0],[0,1]]}}}"#);
        let e = run("brnr", Some("toric"), &d, &RunOptions::default()).unwrap_err();
        assert!(e.to_string().contains("generator"), "{e}");
    }
}
