use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Value};

use super::subgroup_invariants;
use crate::error::Result;
use crate::groups::{FiniteGroup, Subgroup};
use crate::linalg::abelian::AbelianStructure;

/// What happened on one bicyclic subgroup.
#[derive(Clone, Debug)]
pub struct SubgroupDiagnostic {
    pub order: usize,
    /// Invariant factors of the subgroup itself.
    pub invariants: Vec<u64>,
    /// Elements realizing those factors.
    pub generators: Vec<usize>,
    pub labels: Vec<String>,
    /// Invariant factors of `H^2(A)` (or of the target block sum).
    pub h2: Vec<u64>,
    /// Restriction matrix: one row per target coordinate, one column per
    /// domain coordinate.
    pub restriction: Vec<Vec<i64>>,
    /// For each stack witness, whether its restriction vanishes here.
    pub surviving: Vec<bool>,
}

impl SubgroupDiagnostic {
    pub(crate) fn new(g: &FiniteGroup, a: &Subgroup, h2: Vec<u64>) -> Result<Self> {
        let (invariants, generators) = subgroup_invariants(g, a)?;
        Ok(SubgroupDiagnostic {
            order: a.order(),
            labels: generators.iter().map(|&x| g.label(x)).collect(),
            invariants,
            generators,
            h2,
            restriction: Vec::new(),
            surviving: Vec::new(),
        })
    }

    fn to_json(&self) -> Value {
        json!({
            "order": self.order,
            "invariants": self.invariants,
            "generators": self.generators,
            "labels": self.labels,
            "h2": self.h2,
            "restriction": self.restriction,
            "surviving": self.surviving,
        })
    }
}

/// Result of a Brauer computation.
///
/// `stack_group` is `H^2(G) / Am` and `unramified_group` the kernel of the
/// restriction map on it; both have witnesses in `H^2(G)` class
/// coordinates. `unramified_in_stack` writes the unramified witnesses in the
/// stack group's own coordinates, exhibiting the inclusion.
#[derive(Clone, Debug)]
pub struct BrauerReport {
    pub kind: String,
    pub group_order: usize,
    pub modulus: u64,
    pub h2_factors: Vec<u64>,
    pub am_generators: Vec<Vec<i64>>,
    pub am_descriptions: Vec<String>,
    pub stack_group: AbelianStructure,
    pub unramified_group: AbelianStructure,
    pub unramified_in_stack: Vec<Vec<u64>>,
    pub diagnostics: Vec<SubgroupDiagnostic>,
    /// `(stack witness, first diagnostic index where it restricts nontrivially)`.
    pub killed: Vec<(usize, usize)>,
    pub flags: BTreeMap<String, Value>,
}

fn structure_json(s: &AbelianStructure) -> Value {
    json!({
        "invariant_factors": s.invariant_factors(),
        "witnesses": s.witnesses(),
    })
}

impl BrauerReport {
    pub fn stack_factors(&self) -> &[u64] {
        self.stack_group.invariant_factors()
    }

    pub fn unramified_factors(&self) -> &[u64] {
        self.unramified_group.invariant_factors()
    }

    pub fn with_flag(mut self, key: &str, value: Value) -> Self {
        self.flags.insert(key.to_string(), value);
        self
    }

    /// Structured form. Keys are sorted, so serialization is deterministic.
    pub fn to_json(&self, diagnostics: bool) -> Value {
        let mut v = json!({
            "kind": self.kind,
            "group_order": self.group_order,
            "modulus": self.modulus,
            "h2": self.h2_factors,
            "am_generators": self.am_generators,
            "am_descriptions": self.am_descriptions,
            "stack_group": structure_json(&self.stack_group),
            "unramified_group": structure_json(&self.unramified_group),
            "unramified_in_stack": self.unramified_in_stack,
            "subgroups_checked": self.diagnostics.len(),
            "killed": self.killed.iter().map(|&(w, s)| json!({"witness": w, "subgroup": s})).collect::<Vec<_>>(),
            "flags": self.flags,
        });
        if diagnostics {
            v["diagnostics"] = Value::Array(self.diagnostics.iter().map(SubgroupDiagnostic::to_json).collect());
        }
        v
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "kind: {}", self.kind);
        let _ = writeln!(s, "group order: {}", self.group_order);
        let _ = writeln!(s, "H2(G, Q/Z): {:?}", self.h2_factors);
        if !self.am_generators.is_empty() {
            let _ = writeln!(s, "Amitsur generators:");
            for (v, d) in self.am_generators.iter().zip(&self.am_descriptions) {
                let _ = writeln!(s, "  {v:?}  ({d})");
            }
        }
        let _ = writeln!(s, "stack group: {:?}", self.stack_group.invariant_factors());
        let _ = writeln!(s, "unramified group: {:?}", self.unramified_group.invariant_factors());
        for (i, w) in self.unramified_group.witnesses().iter().enumerate() {
            let _ = writeln!(s, "  witness {i}: {w:?}");
        }
        let _ = writeln!(s, "bicyclic subgroups checked: {}", self.diagnostics.len());
        for &(w, si) in &self.killed {
            let d = &self.diagnostics[si];
            let _ = writeln!(
                s,
                "  stack witness {w} restricts nontrivially to {:?} generated by {}",
                d.invariants,
                d.labels.join(", ")
            );
        }
        for (k, v) in &self.flags {
            let _ = writeln!(s, "flag {k}: {v}");
        }
        s
    }
}
