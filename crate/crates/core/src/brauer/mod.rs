//! Unramified Brauer groups of quotient stacks and their coarse spaces.
//!
//! Every computation here works on class coordinates of `H^2(G, Q/Z)`
//! (realized at modulus `|G|`). The stack group is `H^2(G) / Am`, and the
//! unramified part is the kernel of
//! `H^2(G) / Am -> ⊕_A H^2(A) / res_A(Am)` over bicyclic subgroups `A`.

pub mod projective;
mod report;

use num_integer::Integer;
use rayon::prelude::*;

pub use projective::{
    annihilator, gamma_from_projective_action, plucker_vector, proportional, CorrelationAction,
    ProjectiveAction,
};
pub use report::{BrauerReport, SubgroupDiagnostic};

use crate::cohomology::{corestrict, h1, h2, h2_qz, h2_qz_at, restrict, CohomologyGroup, GModule, ModuleKind};
use crate::error::{Error, Result};
use crate::groups::{abelian_structure, bicyclic_subgroups, FiniteGroup, Subgroup};
use crate::linalg::abelian::{restriction_kernel, AbelianStructure, KernelTarget};

/// A group acting on `P(U)` by collineations, or on `Gr(r, 2r)` with
/// correlations on the complement of an index-2 subgroup.
#[derive(Clone, Debug)]
pub enum Action {
    Projective(ProjectiveAction),
    Correlation(CorrelationAction),
}

impl Action {
    pub fn dimension(&self) -> usize {
        match self {
            Action::Projective(a) => a.dimension(),
            Action::Correlation(c) => c.dimension(),
        }
    }
}

/// A faithful action of `G` on a lattice `M`, the character lattice of a
/// torus.
#[derive(Clone, Debug)]
pub struct ToricAction {
    lattice: GModule,
}

impl ToricAction {
    pub fn new(g: &FiniteGroup, lattice: GModule) -> Result<Self> {
        lattice.check_group(g)?;
        if !matches!(lattice.kind(), ModuleKind::Lattice(_)) {
            return Err(Error::Validation("toric action needs a lattice module".into()));
        }
        if !lattice.is_faithful() {
            return Err(Error::Validation("toric action is not faithful".into()));
        }
        Ok(ToricAction { lattice })
    }

    pub fn lattice(&self) -> &GModule {
        &self.lattice
    }
}

/// Which bicyclic subgroups enter the kernel computation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BrauerOptions {
    /// Use every bicyclic subgroup rather than one per conjugacy class.
    pub all_subgroups: bool,
}

/// Class coordinates in `h` of a `Q/Z` cocycle of any denominator.
pub fn class_of(h: &CohomologyGroup, g: &FiniteGroup, c: &crate::cohomology::Cochain) -> Result<Vec<i64>> {
    Ok(h.reduce_qz(g, c)?.into_iter().map(|a| a as i64).collect())
}

fn scale_coords(v: &[i64], q: i64, factors: &[u64]) -> Vec<i64> {
    v.iter()
        .zip(factors)
        .map(|(&a, &d)| (a * q).rem_euclid(d as i64))
        .collect()
}

/// The Plücker class `β` for `Gr(r, n)`, computed from the actual matrices
/// on `∧^r`: `∧^r M` for collineations, `⋆ ∧^r φ` for correlations.
pub fn plucker_beta(g: &FiniteGroup, action: &Action, r: usize) -> Result<crate::cohomology::Cochain> {
    let n = action.dimension();
    if r == 0 || r >= n {
        return Err(Error::Dimension(format!("need 1 <= r <= {}, got {r}", n.saturating_sub(1))));
    }
    match action {
        Action::Projective(a) => Ok(a.exterior_power(g, r)?.cocycle().clone()),
        Action::Correlation(c) => {
            if 2 * r != n {
                return Err(Error::Dimension(format!(
                    "correlations act on Gr(r, 2r); got r = {r}, n = {n}"
                )));
            }
            Ok(c.plucker_action(g)?.cocycle().clone())
        }
    }
}

/// `H^2(G) / ⟨am_generators⟩` with witnesses in `H^2(G)` coordinates.
pub fn br_stack_quotient(h: &CohomologyGroup, am_generators: &[Vec<i64>]) -> Result<AbelianStructure> {
    restriction_kernel(h.invariant_factors(), am_generators, &[])
}

/// `Br([V/G]) = H^2(G) ⊕ H^1(G, Pic V)` when `V` has a `G`-fixed point.
pub fn br_stack_fixed_point(g: &FiniteGroup, pic: &GModule, has_fixed_point: bool) -> Result<AbelianStructure> {
    if !has_fixed_point {
        return Err(Error::Unsupported(
            "stack Brauer group without a fixed point (non-split case)".into(),
        ));
    }
    if !matches!(pic.kind(), ModuleKind::Lattice(_)) {
        return Err(Error::Validation("Picard module must be a lattice".into()));
    }
    let mut orders = h2_qz(g)?.invariant_factors().to_vec();
    orders.extend_from_slice(h1(g, pic)?.invariant_factors());
    AbelianStructure::from_cyclic_orders(&orders)
}

/// `B_0(G)`: classes restricting to zero on every bicyclic subgroup.
pub fn bogomolov_multiplier(g: &FiniteGroup) -> Result<BrauerReport> {
    bogomolov_multiplier_with(g, BrauerOptions::default())
}

pub fn bogomolov_multiplier_with(g: &FiniteGroup, opts: BrauerOptions) -> Result<BrauerReport> {
    let h = h2_qz(g)?;
    kernel_report(g, "bogomolov", &h, Vec::new(), Vec::new(), opts)
}

/// Linear actions: `Br_nr(V/G) = B_0(G)`.
pub fn br_nr_linear(g: &FiniteGroup, opts: BrauerOptions) -> Result<BrauerReport> {
    let h = h2_qz(g)?;
    kernel_report(g, "linear", &h, Vec::new(), Vec::new(), opts)
}

/// `P(U)` with `Am = ⟨γ⟩`.
pub fn br_nr_projective(g: &FiniteGroup, action: &ProjectiveAction, opts: BrauerOptions) -> Result<BrauerReport> {
    let h = h2_qz(g)?;
    let gamma = class_of(&h, g, action.cocycle())?;
    kernel_report(
        g,
        "projective",
        &h,
        vec![gamma],
        vec![format!("gamma of the {}-dimensional projective action", action.dimension())],
        opts,
    )
}

/// `Gr(r, n)` with `Am = ⟨β⟩`: `β = rγ` for collineations, the Plücker
/// class when correlations are present.
pub fn br_nr_grassmannian(g: &FiniteGroup, action: &Action, r: usize, opts: BrauerOptions) -> Result<BrauerReport> {
    let n = action.dimension();
    if r == 0 || r >= n {
        return Err(Error::Dimension(format!("need 1 <= r <= {}, got {r}", n.saturating_sub(1))));
    }
    let h = h2_qz(g)?;
    let (beta, desc) = match action {
        Action::Projective(a) => {
            let gamma = class_of(&h, g, a.cocycle())?;
            (scale_coords(&gamma, r as i64, h.invariant_factors()), format!("{r} * gamma"))
        }
        Action::Correlation(_) => (
            class_of(&h, g, &plucker_beta(g, action, r)?)?,
            "beta of the Pluecker action with correlations".to_string(),
        ),
    };
    kernel_report(g, "grassmannian", &h, vec![beta], vec![desc], opts)
}

/// Flags of type `r_1 < ... < r_m` in `k^n`.
///
/// Collineations: `Am = ⟨qγ⟩` with `q = gcd(r_i)`. Correlations (which need
/// `r_i + r_{m+1-i} = n`): `Am = ⟨β, cores(qγ')⟩` with `q` the gcd of the
/// first `⌊m/2⌋` entries, `β` present only for odd `m`, and `γ'` the class of
/// the collineation subgroup.
pub fn br_nr_flag(g: &FiniteGroup, action: &Action, r_list: &[usize], opts: BrauerOptions) -> Result<BrauerReport> {
    let n = action.dimension();
    if r_list.is_empty() {
        return Err(Error::Dimension("flag type must be nonempty".into()));
    }
    if r_list.windows(2).any(|w| w[0] >= w[1]) || r_list[0] == 0 || *r_list.last().unwrap() >= n {
        return Err(Error::Dimension(format!(
            "flag type {r_list:?} must be strictly increasing in [1, {}]",
            n.saturating_sub(1)
        )));
    }
    let m = r_list.len();
    if m == 1 {
        let mut rep = br_nr_grassmannian(g, action, r_list[0], opts)?;
        rep.kind = "flag".into();
        return Ok(rep);
    }
    let h = h2_qz(g)?;
    let factors = h.invariant_factors();
    match action {
        Action::Projective(a) => {
            let q = r_list.iter().fold(0usize, |acc, &r| acc.gcd(&r));
            let gamma = class_of(&h, g, a.cocycle())?;
            kernel_report(
                g,
                "flag",
                &h,
                vec![scale_coords(&gamma, q as i64, factors)],
                vec![format!("{q} * gamma")],
                opts,
            )
        }
        Action::Correlation(c) => {
            if (0..m).any(|i| r_list[i] + r_list[m - 1 - i] != n) {
                return Err(Error::Dimension(format!(
                    "flag type {r_list:?} is not self-dual in dimension {n}"
                )));
            }
            let q = r_list[..m / 2].iter().fold(0usize, |acc, &r| acc.gcd(&r));
            let mut am = Vec::new();
            let mut desc = Vec::new();
            if m % 2 == 1 {
                let beta = c.plucker_action(g)?;
                am.push(class_of(&h, g, beta.cocycle())?);
                desc.push("beta of the middle Grassmannian".to_string());
            }
            let scaled = c.base().cocycle().scale(q as i64);
            let cores = corestrict(&scaled, g, c.subgroup())?;
            am.push(class_of(&h, g, &cores)?);
            desc.push(format!("cores from G' of {q} * gamma'"));
            kernel_report(g, "flag", &h, am, desc, opts)
        }
    }
}

/// Tori: the kernel of `H^2(G, Q/Z ⊕ M) -> ⊕_A H^2(A, Q/Z ⊕ M)`.
pub fn br_nr_toric(g: &FiniteGroup, action: &ToricAction, opts: BrauerOptions) -> Result<BrauerReport> {
    let hq = h2_qz(g)?;
    let hm = h2(g, action.lattice())?;
    let kq = hq.invariant_factors().len();
    let km = hm.invariant_factors().len();
    let n = g.order() as u64;
    let subs = bicyclic_subgroups(g, !opts.all_subgroups);
    let per: Vec<(KernelTarget, SubgroupDiagnostic)> = subs
        .par_iter()
        .map(|a| {
            let (ag, _) = a.to_group(g)?;
            let haq = h2_qz_at(&ag, n)?;
            let (_, ma) = action.lattice().restrict(g, a)?;
            let ham = h2(&ag, &ma)?;
            let fq = haq.invariant_factors().len();
            let fm = ham.invariant_factors().len();
            let mut matrix = vec![vec![0i64; kq + km]; fq + fm];
            for (j, rep) in hq.representatives().iter().enumerate() {
                for (i, v) in haq.reduce(&restrict(rep, g, a)?)?.into_iter().enumerate() {
                    matrix[i][j] = v as i64;
                }
            }
            for (j, rep) in hm.representatives().iter().enumerate() {
                for (i, v) in ham.reduce(&restrict(rep, g, a)?)?.into_iter().enumerate() {
                    matrix[fq + i][kq + j] = v as i64;
                }
            }
            let mut tf = haq.invariant_factors().to_vec();
            tf.extend_from_slice(ham.invariant_factors());
            let target = KernelTarget {
                factors: tf.clone(),
                matrix,
                relations: Vec::new(),
            };
            Ok((target, SubgroupDiagnostic::new(g, a, tf)?))
        })
        .collect::<Result<_>>()?;
    let mut domain = hq.invariant_factors().to_vec();
    domain.extend_from_slice(hm.invariant_factors());
    assemble(g, "toric", n, domain, Vec::new(), Vec::new(), per)
}

fn restriction_target(
    g: &FiniteGroup,
    h: &CohomologyGroup,
    a: &Subgroup,
    am: &[Vec<i64>],
) -> Result<(KernelTarget, SubgroupDiagnostic)> {
    let n = h.modulus().unwrap_or(g.order() as u64);
    let (ag, _) = a.to_group(g)?;
    let ha = h2_qz_at(&ag, n)?;
    let f = ha.invariant_factors().to_vec();
    let k = h.invariant_factors().len();
    let mut matrix = vec![vec![0i64; k]; f.len()];
    for (j, rep) in h.representatives().iter().enumerate() {
        for (i, v) in ha.reduce(&restrict(rep, g, a)?)?.into_iter().enumerate() {
            matrix[i][j] = v as i64;
        }
    }
    let relations: Vec<Vec<i64>> = am
        .iter()
        .map(|x| {
            matrix
                .iter()
                .zip(&f)
                .map(|(row, &e)| {
                    let s: i128 = row.iter().zip(x).map(|(&p, &q)| p as i128 * q as i128).sum();
                    s.rem_euclid(e as i128) as i64
                })
                .collect()
        })
        .collect();
    let target = KernelTarget {
        factors: f.clone(),
        matrix,
        relations,
    };
    Ok((target, SubgroupDiagnostic::new(g, a, f)?))
}

fn kernel_report(
    g: &FiniteGroup,
    kind: &str,
    h: &CohomologyGroup,
    am: Vec<Vec<i64>>,
    descriptions: Vec<String>,
    opts: BrauerOptions,
) -> Result<BrauerReport> {
    let am_nonzero: Vec<Vec<i64>> = am.iter().filter(|v| v.iter().any(|&x| x != 0)).cloned().collect();
    let subs = bicyclic_subgroups(g, !opts.all_subgroups);
    let per: Vec<(KernelTarget, SubgroupDiagnostic)> = subs
        .par_iter()
        .map(|a| restriction_target(g, h, a, &am_nonzero))
        .collect::<Result<_>>()?;
    let n = h.modulus().unwrap_or(g.order() as u64);
    assemble(g, kind, n, h.invariant_factors().to_vec(), am, descriptions, per)
}

fn assemble(
    g: &FiniteGroup,
    kind: &str,
    modulus: u64,
    domain: Vec<u64>,
    am: Vec<Vec<i64>>,
    descriptions: Vec<String>,
    per: Vec<(KernelTarget, SubgroupDiagnostic)>,
) -> Result<BrauerReport> {
    let am_nonzero: Vec<Vec<i64>> = am.iter().filter(|v| v.iter().any(|&x| x != 0)).cloned().collect();
    let stack = restriction_kernel(&domain, &am_nonzero, &[])?;
    let (targets, mut diagnostics): (Vec<KernelTarget>, Vec<SubgroupDiagnostic>) = per.into_iter().unzip();
    let unramified = restriction_kernel(&domain, &am_nonzero, &targets)?;
    let mut killed = Vec::new();
    for (t, d) in targets.iter().zip(diagnostics.iter_mut()) {
        d.restriction = t.matrix.clone();
        d.surviving = stack
            .witnesses()
            .iter()
            .map(|w| t.kills(w))
            .collect::<Result<_>>()?;
    }
    for (wi, _) in stack.witnesses().iter().enumerate() {
        if let Some(si) = diagnostics.iter().position(|d| !d.surviving[wi]) {
            killed.push((wi, si));
        }
    }
    let unramified_in_stack = unramified
        .witnesses()
        .iter()
        .map(|w| stack.class_map(w))
        .collect::<Result<Vec<_>>>()?;
    Ok(BrauerReport {
        kind: kind.to_string(),
        group_order: g.order(),
        modulus,
        h2_factors: domain,
        am_generators: am,
        am_descriptions: descriptions,
        stack_group: stack,
        unramified_group: unramified,
        unramified_in_stack,
        diagnostics,
        killed,
        flags: Default::default(),
    })
}

/// Direct re-check of a `B_0` computation: every witness restricts to zero
/// on every bicyclic subgroup, conjugates included.
pub fn recheck_bogomolov(g: &FiniteGroup, report: &BrauerReport) -> Result<bool> {
    let h = h2_qz(g)?;
    let n = h.modulus().unwrap_or(1);
    for a in bicyclic_subgroups(g, false) {
        let (ag, _) = a.to_group(g)?;
        let ha = h2_qz_at(&ag, n)?;
        for w in report.unramified_group.witnesses() {
            let coords: Vec<u64> = w
                .iter()
                .zip(h.invariant_factors())
                .map(|(&x, &d)| x.rem_euclid(d as i64) as u64)
                .collect();
            let c = h.cochain(&coords)?;
            if ha.reduce(&restrict(&c, g, &a)?)?.iter().any(|&x| x != 0) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub(crate) fn subgroup_invariants(g: &FiniteGroup, a: &Subgroup) -> Result<(Vec<u64>, Vec<usize>)> {
    let d = abelian_structure(g, a)?;
    Ok((d.invariant_factors, d.generators))
}

#[cfg(test)]
mod tests;
