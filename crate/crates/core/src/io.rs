//! JSON input documents: groups, modules, and actions.
//!
//! Action keys in `"action"`/`"matrices"` maps are element indices (`"3"`)
//! or generator slots (`"g0"` is the first listed generator of the group).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::brauer::{gamma_from_projective_action, Action, CorrelationAction, ToricAction};
use crate::cohomology::GModule;
use crate::cyclotomic::CycloMatrix;
use crate::error::{Error, Result};
use crate::groups::{
    central_extension_from_cocycle, cyclic, direct_product, from_cayley_table,
    from_permutation_generators, semidirect_product, FiniteGroup,
};

/// A group description.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Permutation {
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
    Cayley {
        table: Vec<Vec<usize>>,
    },
    Cyclic {
        n: usize,
    },
    /// Order `2n`.
    Dihedral {
        n: usize,
    },
    /// `<a, b | a^2n, b^2 = a^n, b a b^-1 = a^-1>`, order `4n`.
    Dicyclic {
        n: usize,
    },
    /// `Z/n_1 x Z/n_2 x ...`
    Abelian {
        factors: Vec<usize>,
    },
    DirectProduct {
        factors: Vec<GroupSpec>,
    },
    /// `normal ⋊ acting`; `action[i]` lists the images of the generators of
    /// `normal` under the `i`-th generator of `acting`.
    Semidirect {
        normal: Box<GroupSpec>,
        acting: Box<GroupSpec>,
        action: Vec<Vec<usize>>,
    },
    /// `1 -> Z/n -> E -> base -> 1` from a normalized cocycle table.
    CentralExtension {
        base: Box<GroupSpec>,
        n: usize,
        cocycle: Vec<Vec<u64>>,
    },
    /// Iterated central extension of `V = (Z/p)^rank` by one `Z/p` per form,
    /// with cocycle `c_i(x, y) = x^T A_i y`.
    BilinearExtension {
        p: usize,
        rank: usize,
        forms: Vec<Vec<Vec<u64>>>,
    },
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Permutation { degree, generators } => from_permutation_generators(*degree, generators),
            GroupSpec::Cayley { table } => from_cayley_table(table),
            GroupSpec::Cyclic { n } => cyclic(*n),
            GroupSpec::Dihedral { n } => {
                match *n {
                    0 => Err(Error::Validation("dihedral group needs n >= 1".into())),
                    1 => cyclic(2),
                    n => semidirect_product(&cyclic(n)?, &cyclic(2)?, &[vec![n - 1]]),
                }
            }
            GroupSpec::Dicyclic { n } => dicyclic(*n),
            GroupSpec::BilinearExtension { p, rank, forms } => bilinear_extension(*p, *rank, forms),
            GroupSpec::Abelian { factors } => {
                let mut g = cyclic(1)?;
                for &n in factors {
                    g = direct_product(&g, &cyclic(n)?)?;
                }
                Ok(g)
            }
            GroupSpec::DirectProduct { factors } => {
                let mut g = cyclic(1)?;
                for f in factors {
                    g = direct_product(&g, &f.build()?)?;
                }
                Ok(g)
            }
            GroupSpec::Semidirect { normal, acting, action } => {
                semidirect_product(&normal.build()?, &acting.build()?, action)
            }
            GroupSpec::CentralExtension { base, n, cocycle } => {
                central_extension_from_cocycle(&base.build()?, *n, cocycle)
            }
        }
    }
}

fn dicyclic(n: usize) -> Result<FiniteGroup> {
    if n < 1 {
        return Err(Error::Validation("dicyclic group needs n >= 1".into()));
    }
    // a^i b^j at index 2i + j; b a = a^-1 b, b^2 = a^n
    let m = 2 * n;
    let mut table = vec![vec![0usize; 2 * m]; 2 * m];
    for i1 in 0..m {
        for j1 in 0..2 {
            for i2 in 0..m {
                for j2 in 0..2 {
                    let i2s = if j1 == 1 { (m - i2) % m } else { i2 };
                    let mut i = i1 + i2s;
                    if j1 == 1 && j2 == 1 {
                        i += n;
                    }
                    table[2 * i1 + j1][2 * i2 + j2] = 2 * (i % m) + (j1 ^ j2);
                }
            }
        }
    }
    from_cayley_table(&table)
}

fn bilinear_extension(p: usize, rank: usize, forms: &[Vec<Vec<u64>>]) -> Result<FiniteGroup> {
    if p < 2 {
        return Err(Error::Validation("bilinear extension needs p >= 2".into()));
    }
    let mut v = cyclic(1)?;
    for _ in 0..rank {
        v = direct_product(&v, &cyclic(p)?)?;
    }
    let nv = v.order();
    // base-p digits, most significant first
    let coords = |x: usize| -> Vec<u64> {
        let mut d = vec![0u64; rank];
        let mut x = x;
        for i in (0..rank).rev() {
            d[i] = (x % p) as u64;
            x /= p;
        }
        d
    };
    let mut g = v;
    for (idx, a) in forms.iter().enumerate() {
        if a.len() != rank || a.iter().any(|r| r.len() != rank) {
            return Err(Error::BadGenerator {
                generator: idx,
                reason: format!("form must be {rank}x{rank}"),
            });
        }
        let n = g.order();
        let c: Vec<Vec<u64>> = (0..n)
            .map(|x| {
                let cx = coords(x % nv);
                (0..n)
                    .map(|y| {
                        let cy = coords(y % nv);
                        let mut s = 0u64;
                        for i in 0..rank {
                            for j in 0..rank {
                                s += cx[i] * a[i][j] % p as u64 * cy[j];
                            }
                        }
                        s % p as u64
                    })
                    .collect()
            })
            .collect();
        g = central_extension_from_cocycle(&g, p, &c)?;
    }
    Ok(g)
}

/// A coefficient module description.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModuleSpec {
    TrivialQz,
    Finite {
        factors: Vec<u64>,
        #[serde(default)]
        action: BTreeMap<String, Vec<Vec<i64>>>,
    },
    Lattice {
        rank: usize,
        #[serde(default)]
        action: BTreeMap<String, Vec<Vec<i64>>>,
    },
}

impl ModuleSpec {
    pub fn build(&self, g: &FiniteGroup) -> Result<GModule> {
        match self {
            ModuleSpec::TrivialQz => Ok(GModule::trivial_qz(g)),
            ModuleSpec::Finite { factors, action } => GModule::finite(g, factors, &keyed(g, action)?),
            ModuleSpec::Lattice { rank, action } => GModule::lattice(g, *rank, &keyed(g, action)?),
        }
    }
}

/// Resolves `"5"` or `"g1"` to an element index.
pub fn element_key(g: &FiniteGroup, key: &str) -> Result<usize> {
    let e = if let Some(slot) = key.strip_prefix('g') {
        let i: usize = slot
            .parse()
            .map_err(|_| Error::Parse(format!("bad generator key {key:?}")))?;
        *g.generators()
            .get(i)
            .ok_or_else(|| Error::Parse(format!("group has no generator {i}")))?
    } else {
        key.parse()
            .map_err(|_| Error::Parse(format!("bad element key {key:?}")))?
    };
    if e >= g.order() {
        return Err(Error::Validation(format!("element {e} out of range")));
    }
    Ok(e)
}

fn keyed<T: Clone>(g: &FiniteGroup, map: &BTreeMap<String, T>) -> Result<Vec<(usize, T)>> {
    let mut out: Vec<(usize, T)> = map
        .iter()
        .map(|(k, v)| Ok((element_key(g, k)?, v.clone())))
        .collect::<Result<_>>()?;
    out.sort_by_key(|(e, _)| *e);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectiveSpec {
    pub dimension: usize,
    pub matrices: BTreeMap<String, Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorrelationSpec {
    pub phi: Value,
    pub coset_witness: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToricSpec {
    pub rank: usize,
    pub matrices: BTreeMap<String, Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Flags {
    #[serde(default)]
    pub fixed_point: Option<bool>,
}

/// A full input document. A bare group description is also accepted.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDoc {
    pub group: GroupSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projective: Option<ProjectiveSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub correlation: Option<CorrelationSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub toric: Option<ToricSpec>,
    /// Picard lattice for the fixed-point stack formula.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pic: Option<ModuleSpec>,
    #[serde(default)]
    pub flags: Flags,
    /// Grassmannian `r`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    /// Flag type `r_1 < ... < r_m`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flag_type: Option<Vec<usize>>,
}

impl InputDoc {
    pub fn parse(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_value(v)
    }

    pub fn from_value(v: Value) -> Result<Self> {
        let v = if v.get("kind").is_some() && v.get("group").is_none() {
            serde_json::json!({ "group": v })
        } else {
            v
        };
        serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn build_group(&self) -> Result<FiniteGroup> {
        self.group.build()
    }

    /// The module, defaulting to trivial `Q/Z`.
    pub fn build_module(&self, g: &FiniteGroup) -> Result<GModule> {
        self.module.as_ref().unwrap_or(&ModuleSpec::TrivialQz).build(g)
    }

    pub fn build_pic(&self, g: &FiniteGroup) -> Result<GModule> {
        match &self.pic {
            Some(p) => p.build(g),
            None => GModule::trivial_lattice(g, 1),
        }
    }

    /// The projective (or correlation) action, if present.
    pub fn build_action(&self, g: &FiniteGroup) -> Result<Option<Action>> {
        let Some(p) = &self.projective else {
            if self.correlation.is_some() {
                return Err(Error::Parse("correlation given without collineations".into()));
            }
            return Ok(None);
        };
        let mats: Vec<(usize, CycloMatrix)> = keyed(g, &p.matrices)?
            .into_iter()
            .map(|(e, v)| Ok((e, CycloMatrix::from_json(&v)?)))
            .collect::<Result<_>>()?;
        match &self.correlation {
            None => Ok(Some(Action::Projective(gamma_from_projective_action(g, p.dimension, &mats)?))),
            Some(c) => {
                let phi = CycloMatrix::from_json(&c.phi)?;
                let w = match &c.coset_witness {
                    Value::Number(n) => n
                        .as_u64()
                        .ok_or_else(|| Error::Parse("coset_witness must be an element".into()))?
                        as usize,
                    Value::String(s) => element_key(g, s)?,
                    other => return Err(Error::Parse(format!("bad coset_witness {other}"))),
                };
                Ok(Some(Action::Correlation(CorrelationAction::new(g, p.dimension, &mats, phi, w)?)))
            }
        }
    }

    pub fn build_toric(&self, g: &FiniteGroup) -> Result<Option<ToricAction>> {
        let Some(t) = &self.toric else { return Ok(None) };
        let m = GModule::lattice(g, t.rank, &keyed(g, &t.matrices)?)?;
        Ok(Some(ToricAction::new(g, m)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bare_group_and_keys() {
        let d = InputDoc::parse(r#"{"kind":"permutation","degree":3,"generators":[[1,0,2],[1,2,0]]}"#).unwrap();
        let g = d.build_group().unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(element_key(&g, "g1").unwrap(), g.generators()[1]);
        assert!(element_key(&g, "9").is_err());
        assert!(matches!(element_key(&g, "x"), Err(Error::Parse(_))));
    }

    #[test]
    fn nested_constructions() {
        let s = r#"{"group":{"kind":"semidirect","normal":{"kind":"cyclic","n":3},
            "acting":{"kind":"cyclic","n":2},"action":[[2]]}}"#;
        assert_eq!(InputDoc::parse(s).unwrap().build_group().unwrap().order(), 6);
        let s = r#"{"kind":"abelian","factors":[2,4]}"#;
        assert_eq!(InputDoc::parse(s).unwrap().build_group().unwrap().order(), 8);
        assert!(matches!(InputDoc::parse("{"), Err(Error::Parse(_))));
        assert!(matches!(InputDoc::parse(r#"{"kind":"nope"}"#), Err(Error::Parse(_))));
    }

    #[test]
    fn pauli_document() {
        let s = r#"{"group":{"kind":"abelian","factors":[2,2]},
            "projective":{"dimension":2,"matrices":{"g0":[[0,1],[1,0]],"g1":[[1,0],[0,-1]]}}}"#;
        let d = InputDoc::parse(s).unwrap();
        let g = d.build_group().unwrap();
        assert!(matches!(d.build_action(&g).unwrap(), Some(Action::Projective(_))));
    }
}
