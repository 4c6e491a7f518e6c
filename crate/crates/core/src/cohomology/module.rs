use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, Subgroup};
use crate::linalg::int::{smith_normal_form, IntMatrix};

/// Coefficient kinds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleKind {
    /// `Q/Z` with trivial action.
    TrivialQZ,
    /// `Z/d_1 + ... + Z/d_k`; action matrices act as `y_i ↦ Σ_j A_ij y_j mod d_i`,
    /// which requires `d_i | A_ij d_j`.
    Finite(Vec<u64>),
    /// `Z^d`.
    Lattice(usize),
}

/// A coefficient module with one action matrix per group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GModule {
    kind: ModuleKind,
    group_order: usize,
    group_fingerprint: u64,
    action: Vec<Vec<Vec<i64>>>,
}

fn identity(k: usize) -> Vec<Vec<i64>> {
    (0..k)
        .map(|i| (0..k).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub(crate) fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let k = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..k)
                .map(|j| row.iter().zip(b).map(|(&x, r)| x * r[j]).sum())
                .collect()
        })
        .collect()
}

impl GModule {
    pub fn trivial_qz(g: &FiniteGroup) -> Self {
        GModule {
            kind: ModuleKind::TrivialQZ,
            group_order: g.order(),
            group_fingerprint: g.fingerprint(),
            action: vec![identity(1); g.order()],
        }
    }

    /// Trivial action on `Z/d_1 + ... + Z/d_k`.
    pub fn trivial_finite(g: &FiniteGroup, factors: &[u64]) -> Result<Self> {
        Self::finite(g, factors, &[])
    }

    /// Trivial action on `Z^rank`.
    pub fn trivial_lattice(g: &FiniteGroup, rank: usize) -> Result<Self> {
        Self::lattice(g, rank, &[])
    }

    /// Finite module from matrices on a generating set `(element, matrix)`.
    /// An empty list means the trivial action.
    pub fn finite(g: &FiniteGroup, factors: &[u64], gen_action: &[(usize, Vec<Vec<i64>>)]) -> Result<Self> {
        if factors.iter().any(|&d| d < 1) {
            return Err(Error::Validation("module factors must be positive".into()));
        }
        let k = factors.len();
        for (idx, (_, a)) in gen_action.iter().enumerate() {
            check_shape(a, k, idx)?;
            for i in 0..k {
                for j in 0..k {
                    let lhs = (a[i][j] as i128) * (factors[j] as i128);
                    if lhs.rem_euclid(factors[i] as i128) != 0 {
                        return Err(Error::BadGenerator {
                            generator: idx,
                            reason: format!(
                                "entry ({i},{j}) does not give a well-defined map Z/{} -> Z/{}",
                                factors[j], factors[i]
                            ),
                        });
                    }
                }
            }
        }
        let reduce = |m: Vec<Vec<i64>>| -> Vec<Vec<i64>> {
            m.into_iter()
                .enumerate()
                .map(|(i, row)| {
                    let d = factors[i] as i64;
                    row.into_iter().map(|x| x.rem_euclid(d)).collect()
                })
                .collect()
        };
        let action = extend_action(g, k, gen_action, |a, b| reduce(mat_mul(a, b)))?;
        Ok(GModule {
            kind: ModuleKind::Finite(factors.to_vec()),
            group_order: g.order(),
            group_fingerprint: g.fingerprint(),
            action,
        })
    }

    /// Lattice `Z^rank` from integer matrices on a generating set. The rank
    /// limit applies to `H^2`, not to construction.
    pub fn lattice(g: &FiniteGroup, rank: usize, gen_action: &[(usize, Vec<Vec<i64>>)]) -> Result<Self> {
        for (idx, (_, a)) in gen_action.iter().enumerate() {
            check_shape(a, rank, idx)?;
            let snf = smith_normal_form(&IntMatrix::from_i64(a)?);
            let diag = snf.diagonal();
            if diag.len() < rank || diag.iter().any(|d| *d != 1.into()) {
                return Err(Error::BadGenerator {
                    generator: idx,
                    reason: "matrix is not invertible over Z".into(),
                });
            }
        }
        let action = extend_action(g, rank, gen_action, mat_mul)?;
        if action.iter().flatten().flatten().any(|x| x.unsigned_abs() > 1 << 40) {
            return Err(Error::Validation("action entries too large".into()));
        }
        Ok(GModule {
            kind: ModuleKind::Lattice(rank),
            group_order: g.order(),
            group_fingerprint: g.fingerprint(),
            action,
        })
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn kind(&self) -> &ModuleKind {
        &self.kind
    }

    /// Number of coordinates.
    pub fn rank(&self) -> usize {
        match &self.kind {
            ModuleKind::TrivialQZ => 1,
            ModuleKind::Finite(f) => f.len(),
            ModuleKind::Lattice(d) => *d,
        }
    }

    pub fn action(&self, g: usize) -> &[Vec<i64>] {
        &self.action[g]
    }

    pub fn is_trivial_action(&self) -> bool {
        let id = identity(self.rank());
        self.action.iter().all(|a| *a == id)
    }

    /// True when only the identity acts trivially.
    pub fn is_faithful(&self) -> bool {
        let id = identity(self.rank());
        self.action[1..].iter().all(|a| *a != id)
    }

    pub(crate) fn check_group(&self, g: &FiniteGroup) -> Result<()> {
        if self.group_order != g.order() || self.group_fingerprint != g.fingerprint() {
            return Err(Error::Validation("module belongs to a different group".into()));
        }
        Ok(())
    }

    /// The module restricted to a subgroup, numbered as in
    /// [`Subgroup::to_group`].
    pub fn restrict(&self, g: &FiniteGroup, sub: &Subgroup) -> Result<(FiniteGroup, GModule)> {
        self.check_group(g)?;
        let (h, inc) = sub.to_group(g)?;
        let action = inc.images.iter().map(|&x| self.action[x].clone()).collect();
        Ok((
            h.clone(),
            GModule {
                kind: self.kind.clone(),
                group_order: h.order(),
                group_fingerprint: h.fingerprint(),
                action,
            },
        ))
    }
}

fn check_shape(a: &[Vec<i64>], k: usize, idx: usize) -> Result<()> {
    if a.len() != k || a.iter().any(|r| r.len() != k) {
        return Err(Error::BadGenerator {
            generator: idx,
            reason: format!("action matrix must be {k}x{k}"),
        });
    }
    Ok(())
}

/// Extends generator matrices to every element along a spanning tree and
/// checks the homomorphism property on every edge.
fn extend_action(
    g: &FiniteGroup,
    k: usize,
    gen_action: &[(usize, Vec<Vec<i64>>)],
    mul: impl Fn(&[Vec<i64>], &[Vec<i64>]) -> Vec<Vec<i64>>,
) -> Result<Vec<Vec<Vec<i64>>>> {
    if gen_action.is_empty() {
        return Ok(vec![identity(k); g.order()]);
    }
    let gens: Vec<usize> = gen_action.iter().map(|(e, _)| *e).collect();
    if let Some(&bad) = gens.iter().find(|&&e| e >= g.order()) {
        return Err(Error::Validation(format!("element {bad} out of range")));
    }
    if g.closure(&gens).len() != g.order() {
        return Err(Error::Validation(
            "action is given on elements that do not generate the group".into(),
        ));
    }
    let tree = g.spanning_tree(&gens);
    let mut act: Vec<Vec<Vec<i64>>> = vec![Vec::new(); g.order()];
    act[0] = identity(k);
    for &y in &tree.order[1..] {
        act[y] = mul(&act[tree.parent[y]], &gen_action[tree.via[y]].1);
    }
    for x in 0..g.order() {
        for (idx, (s, m)) in gen_action.iter().enumerate() {
            if act[g.mul(x, *s)] != mul(&act[x], m) {
                return Err(Error::BadGenerator {
                    generator: idx,
                    reason: format!(
                        "matrices do not define a homomorphism (fails at element {x} times element {s})"
                    ),
                });
            }
        }
    }
    Ok(act)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::cyclic;

    #[test]
    fn negation_on_z() {
        let g = cyclic(2).unwrap();
        let m = GModule::lattice(&g, 1, &[(1, vec![vec![-1]])]).unwrap();
        assert_eq!(m.action(1), &[vec![-1]]);
        assert!(m.is_faithful());
    }

    #[test]
    fn non_homomorphism_is_rejected() {
        let g = cyclic(3).unwrap();
        let err = GModule::lattice(&g, 1, &[(1, vec![vec![-1]])]).unwrap_err();
        assert!(matches!(err, Error::BadGenerator { generator: 0, .. }));
    }

    #[test]
    fn singular_lattice_matrix_is_rejected() {
        let g = cyclic(2).unwrap();
        let err = GModule::lattice(&g, 2, &[(1, vec![vec![1, 0], vec![0, 2]])]).unwrap_err();
        assert!(matches!(err, Error::BadGenerator { generator: 0, .. }));
    }

    #[test]
    fn ill_defined_finite_action_is_rejected() {
        let g = cyclic(2).unwrap();
        // Z/2 -> Z/4 by 1 is not well defined
        let err = GModule::finite(&g, &[4, 2], &[(1, vec![vec![1, 1], vec![0, 1]])]).unwrap_err();
        assert!(matches!(err, Error::BadGenerator { .. }));
    }
}
