//! Projective actions, their scalar cocycles, and Plücker/correlation data.

use num_integer::Integer;

use crate::cohomology::Cochain;
use crate::cyclotomic::{hodge_star, r_subsets, CycloMatrix, CycloNumber};
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, Subgroup};

/// Matrices on a generating set, lifted along a spanning tree, with the
/// scalar 2-cocycle `M_g M_h = c(g, h) M_gh` stored at modulus
/// `lcm(2, conductor)` (value `a` stands for `ζ^a`, i.e. `a/L` in `Q/Z`).
#[derive(Clone, Debug)]
pub struct ProjectiveAction {
    group_order: usize,
    group_fingerprint: u64,
    dimension: usize,
    conductor: u64,
    generators: Vec<(usize, CycloMatrix)>,
    lifts: Vec<CycloMatrix>,
    cocycle: Cochain,
}

impl ProjectiveAction {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Conductor of the field generated by the matrix entries.
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn generators(&self) -> &[(usize, CycloMatrix)] {
        &self.generators
    }

    /// The chosen lift `M_g`.
    pub fn lift(&self, g: usize) -> &CycloMatrix {
        &self.lifts[g]
    }

    /// The scalar cocycle as a `Q/Z` cochain.
    pub fn cocycle(&self) -> &Cochain {
        &self.cocycle
    }

    fn check_group(&self, g: &FiniteGroup) -> Result<()> {
        if g.order() != self.group_order || g.fingerprint() != self.group_fingerprint {
            return Err(Error::Validation("action belongs to a different group".into()));
        }
        Ok(())
    }

    /// Kronecker product of two actions of the same group.
    pub fn tensor(&self, other: &ProjectiveAction, g: &FiniteGroup) -> Result<ProjectiveAction> {
        self.check_group(g)?;
        other.check_group(g)?;
        let mats = g
            .reduced_generators()
            .into_iter()
            .map(|s| Ok((s, kronecker(&self.lifts[s], &other.lifts[s])?)))
            .collect::<Result<Vec<_>>>()?;
        gamma_from_projective_action(g, self.dimension * other.dimension, &mats)
    }

    /// The action on `∧^r`.
    pub fn exterior_power(&self, g: &FiniteGroup, r: usize) -> Result<ProjectiveAction> {
        self.check_group(g)?;
        if r == 0 || r >= self.dimension {
            return Err(Error::Dimension(format!(
                "exterior power {r} needs 1 <= r <= {}",
                self.dimension.saturating_sub(1)
            )));
        }
        let mats = self
            .generators
            .iter()
            .map(|(s, m)| Ok((*s, m.exterior_power(r)?)))
            .collect::<Result<Vec<_>>>()?;
        gamma_from_projective_action(g, binomial(self.dimension, r), &mats)
    }

    /// The action restricted to a subgroup, numbered as in
    /// [`Subgroup::to_group`].
    pub fn restrict(&self, g: &FiniteGroup, sub: &Subgroup) -> Result<(FiniteGroup, ProjectiveAction)> {
        self.check_group(g)?;
        let (h, inc) = sub.to_group(g)?;
        let mats: Vec<(usize, CycloMatrix)> = h
            .generators()
            .iter()
            .map(|&s| (s, self.lifts[inc.images[s]].clone()))
            .collect();
        let act = gamma_from_projective_action(&h, self.dimension, &mats)?;
        Ok((h, act))
    }
}

pub(crate) fn binomial(n: usize, r: usize) -> usize {
    (0..r).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn kronecker(a: &CycloMatrix, b: &CycloMatrix) -> Result<CycloMatrix> {
    let m = a.conductor().lcm(&b.conductor());
    let (a, b) = (a.promote(m)?, b.promote(m)?);
    let (ra, ca, rb, cb) = (a.rows(), a.cols(), b.rows(), b.cols());
    let mut out = CycloMatrix::zeros(m, ra * rb, ca * cb);
    for i in 0..ra {
        for j in 0..ca {
            for k in 0..rb {
                for l in 0..cb {
                    out.set(i * rb + k, j * cb + l, a.get(i, j).mul(b.get(k, l))?)?;
                }
            }
        }
    }
    Ok(out)
}

/// Exponent `a` with `x = ζ_l^a`, if `x` is a root of unity of order
/// dividing `l`.
fn root_log(x: &CycloNumber, l: u64) -> Option<u64> {
    let t = x.is_root_of_unity()?;
    if !l.is_multiple_of(t) {
        return None;
    }
    let x = x.promote(l.lcm(&x.conductor())).ok()?;
    let step = l / t;
    (0..t)
        .filter(|j| j.gcd(&t) == 1)
        .map(|j| j * step)
        .find(|&a| {
            CycloNumber::zeta(l, a as i64)
                .promote(x.conductor())
                .is_ok_and(|z| z == x)
        })
}

/// Lifts generator matrices to every element and extracts the scalar
/// cocycle. Only the defects `c(g, s)` with `s` a generator are computed;
/// they determine the normalized cocycle.
pub fn gamma_from_projective_action(
    g: &FiniteGroup,
    dimension: usize,
    matrices: &[(usize, CycloMatrix)],
) -> Result<ProjectiveAction> {
    let mut conductor = 1u64;
    for (idx, (e, m)) in matrices.iter().enumerate() {
        if *e >= g.order() {
            return Err(Error::Validation(format!("element {e} out of range")));
        }
        if m.rows() != dimension || m.cols() != dimension {
            return Err(Error::Dimension(format!(
                "matrix for generator {idx} is {}x{}, expected {dimension}x{dimension}",
                m.rows(),
                m.cols()
            )));
        }
        if m.det()?.is_zero() {
            return Err(Error::BadGenerator {
                generator: idx,
                reason: "matrix is singular".into(),
            });
        }
        conductor = conductor.lcm(&m.conductor());
    }
    let mut seen = std::collections::BTreeSet::new();
    for (idx, (e, m)) in matrices.iter().enumerate() {
        if !seen.insert(*e) {
            return Err(Error::Validation(format!("element {e} given twice")));
        }
        if *e == 0 && m.as_scalar().is_none() {
            return Err(Error::BadGenerator {
                generator: idx,
                reason: "identity must act by a scalar".into(),
            });
        }
    }
    let matrices: Vec<&(usize, CycloMatrix)> = matrices.iter().filter(|(e, _)| *e != 0).collect();
    let keys: Vec<usize> = matrices.iter().map(|(e, _)| *e).collect();
    if g.closure(&keys).len() != g.order() {
        return Err(Error::Validation(
            "matrices are given on elements that do not generate the group".into(),
        ));
    }
    let l = conductor.lcm(&2);
    let gens: Vec<CycloMatrix> = matrices
        .iter()
        .map(|(_, m)| m.promote(conductor))
        .collect::<Result<_>>()?;
    let tree = g.spanning_tree(&keys);
    let order = g.order();
    let mut lifts: Vec<Option<CycloMatrix>> = vec![None; order];
    lifts[0] = Some(CycloMatrix::identity(conductor, dimension));
    for &y in &tree.order[1..] {
        let x = tree.parent[y];
        let m = lifts[x].as_ref().expect("parent visited first").mul(&gens[tree.via[y]])?;
        lifts[y] = Some(m);
    }
    let lifts: Vec<CycloMatrix> = lifts.into_iter().map(|m| m.expect("tree spans")).collect();
    // defects on (x, s); the tree edges have defect 1
    let mut params: Vec<Vec<u64>> = vec![vec![0; keys.len()]; order];
    for x in 0..order {
        for (si, &s) in keys.iter().enumerate() {
            let y = g.mul(x, s);
            if y != 0 && tree.parent[y] == x && tree.via[y] == si {
                continue;
            }
            let prod = lifts[x].mul(&gens[si])?;
            let ratio = prod
                .scalar_ratio(&lifts[y])?
                .ok_or(Error::NotProjective { g: x, h: s })?;
            params[x][si] = root_log(&ratio, l).ok_or(Error::NotTorsion {
                g: x,
                h: s,
                conductor: l,
            })?;
        }
    }
    // c(x, ys) = c(x, y) + c(xy, s) - c(y, s) with trivial action
    let mut values = vec![0i64; order * order];
    let li = l as i64;
    for x in 1..order {
        for &y in &tree.order[1..] {
            let (p, si) = (tree.parent[y], tree.via[y]);
            let xp = g.mul(x, p);
            let v = values[x * order + p] + params[xp][si] as i64 - params[p][si] as i64;
            values[x * order + y] = v.rem_euclid(li);
        }
    }
    let cocycle = Cochain {
        degree: 2,
        order,
        k: 1,
        modulus: Some(l),
        values,
    };
    Ok(ProjectiveAction {
        group_order: order,
        group_fingerprint: g.fingerprint(),
        dimension,
        conductor,
        generators: matrices
            .iter()
            .zip(gens)
            .map(|((e, _), m)| (*e, m))
            .collect(),
        lifts,
        cocycle,
    })
}

/// A group `G` acting on `Gr(r, 2r)` by collineations of an index-2
/// subgroup `G'` and correlations elsewhere. The element `coset_witness`
/// acts by the correlation `Σ ↦ ann(φ Σ)`.
#[derive(Clone, Debug)]
pub struct CorrelationAction {
    group_order: usize,
    group_fingerprint: u64,
    dimension: usize,
    subgroup: Subgroup,
    base_group: FiniteGroup,
    base: ProjectiveAction,
    phi: CycloMatrix,
    coset_witness: usize,
    commutes: bool,
}

impl CorrelationAction {
    /// `collineations` are `(element of G, matrix)` pairs generating `G'`.
    pub fn new(
        g: &FiniteGroup,
        dimension: usize,
        collineations: &[(usize, CycloMatrix)],
        phi: CycloMatrix,
        coset_witness: usize,
    ) -> Result<Self> {
        if !dimension.is_multiple_of(2) {
            return Err(Error::Dimension(format!(
                "correlations need even dimension, got {dimension}"
            )));
        }
        if phi.rows() != dimension || phi.cols() != dimension {
            return Err(Error::Dimension("phi has the wrong size".into()));
        }
        if phi.det()?.is_zero() {
            return Err(Error::Validation("phi is singular".into()));
        }
        let keys: Vec<usize> = collineations.iter().map(|(e, _)| *e).collect();
        if keys.iter().any(|&e| e >= g.order()) || coset_witness >= g.order() {
            return Err(Error::Validation("element out of range".into()));
        }
        let sub = g.subgroup_generated(&keys);
        if sub.order() * 2 != g.order() || sub.contains(coset_witness) {
            return Err(Error::Validation(
                "collineations must generate an index-2 subgroup not containing the coset witness"
                    .into(),
            ));
        }
        let (h, _) = sub.to_group(g)?;
        let local: Vec<(usize, CycloMatrix)> = collineations
            .iter()
            .map(|(e, m)| (sub.index_of(*e).expect("generator lies in G'"), m.clone()))
            .collect();
        let base = gamma_from_projective_action(&h, dimension, &local)?;
        // diagnostic: ψ^T φ ψ ∝ φ for all collineation generators
        let mut commutes = true;
        for (_, psi) in &local {
            let lhs = psi.transpose().mul(&phi)?.mul(psi)?;
            if lhs.scalar_ratio(&phi)?.is_none() {
                commutes = false;
            }
        }
        Ok(CorrelationAction {
            group_order: g.order(),
            group_fingerprint: g.fingerprint(),
            dimension,
            subgroup: sub,
            base_group: h,
            base,
            phi,
            coset_witness,
            commutes,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// The collineation subgroup `G'`.
    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    /// `G'` as a group in its own right.
    pub fn base_group(&self) -> &FiniteGroup {
        &self.base_group
    }

    /// The projective action of `G'`.
    pub fn base(&self) -> &ProjectiveAction {
        &self.base
    }

    pub fn phi(&self) -> &CycloMatrix {
        &self.phi
    }

    pub fn coset_witness(&self) -> usize {
        self.coset_witness
    }

    /// Whether every collineation generator satisfies `ψ^T φ ψ ∝ φ`, i.e.
    /// commutes projectively with the correlation.
    pub fn commutes_with_collineations(&self) -> bool {
        self.commutes
    }

    fn check_group(&self, g: &FiniteGroup) -> Result<()> {
        if g.order() != self.group_order || g.fingerprint() != self.group_fingerprint {
            return Err(Error::Validation("action belongs to a different group".into()));
        }
        Ok(())
    }

    /// The map `F_g: U -> U^∨` with `g Σ = ann(F_g Σ)` for `g ∉ G'`.
    pub fn correlation_matrix(&self, g: &FiniteGroup, x: usize) -> Result<CycloMatrix> {
        self.check_group(g)?;
        let h = g.mul(g.inv(self.coset_witness), x);
        let idx = self
            .subgroup
            .index_of(h)
            .ok_or_else(|| Error::Validation(format!("element {x} is a collineation")))?;
        self.phi.mul(self.base.lift(idx))
    }

    /// The action on Plücker coordinates of `Gr(r, 2r)`.
    pub fn plucker_action(&self, g: &FiniteGroup) -> Result<ProjectiveAction> {
        self.check_group(g)?;
        let r = self.dimension / 2;
        let m = self.phi.conductor().lcm(&self.base.conductor());
        let star = CycloMatrix::from_int_rows(m, &hodge_star(self.dimension, r)?)?;
        let mut mats: Vec<(usize, CycloMatrix)> = self
            .base
            .generators()
            .iter()
            .map(|(s, psi)| Ok((self.subgroup.elements()[*s], psi.exterior_power(r)?)))
            .collect::<Result<_>>()?;
        let corr = star.mul(&self.phi.promote(m)?.exterior_power(r)?)?;
        mats.push((self.coset_witness, corr));
        gamma_from_projective_action(g, binomial(self.dimension, r), &mats)
    }
}

/// Plücker vector (lexicographic `r x r` row minors) of the column span of
/// an `n x r` matrix.
pub fn plucker_vector(span: &CycloMatrix) -> Result<Vec<CycloNumber>> {
    let (n, r) = (span.rows(), span.cols());
    r_subsets(n, r)
        .into_iter()
        .map(|rows| {
            let minor: Vec<Vec<CycloNumber>> = rows
                .iter()
                .map(|&i| (0..r).map(|j| span.get(i, j).clone()).collect())
                .collect();
            CycloMatrix::from_rows(minor)?.det()
        })
        .collect()
}

/// Basis (as columns) of `{u : w^T u = 0}` by Gaussian elimination.
pub fn annihilator(w: &CycloMatrix) -> Result<CycloMatrix> {
    let (n, r) = (w.rows(), w.cols());
    let m = w.conductor();
    // rows of w^T
    let mut a: Vec<Vec<CycloNumber>> = (0..r).map(|j| (0..n).map(|i| w.get(i, j).clone()).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..r).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(row, p);
        let inv = a[row][col].inv()?;
        for x in a[row].iter_mut() {
            *x = x.mul(&inv)?;
        }
        for i in 0..r {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                let prow = a[row].clone();
                for (x, y) in a[i].iter_mut().zip(&prow) {
                    *x = x.sub(&f.mul(y)?)?;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == r {
            break;
        }
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut out = CycloMatrix::zeros(m, n, free.len());
    for (k, &f) in free.iter().enumerate() {
        out.set(f, k, CycloNumber::one(m))?;
        for (i, &p) in pivots.iter().enumerate() {
            out.set(p, k, a[i][f].neg())?;
        }
    }
    Ok(out)
}

/// Whether `u = λ v` for some `λ ≠ 0`.
pub fn proportional(u: &[CycloNumber], v: &[CycloNumber]) -> Result<bool> {
    if u.len() != v.len() {
        return Ok(false);
    }
    let Some(pos) = v.iter().position(|x| !x.is_zero()) else {
        return Ok(false);
    };
    if u[pos].is_zero() {
        return Ok(false);
    }
    let lambda = u[pos].div(&v[pos])?;
    for (a, b) in u.iter().zip(v) {
        if a.sub(&lambda.mul(b)?)?.is_zero() {
            continue;
        }
        return Ok(false);
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{cyclic, direct_product};

    fn k4() -> FiniteGroup {
        direct_product(&cyclic(2).unwrap(), &cyclic(2).unwrap()).unwrap()
    }

    fn int(rows: &[Vec<i64>]) -> CycloMatrix {
        CycloMatrix::from_int_rows(1, rows).unwrap()
    }

    #[test]
    fn pauli_cocycle_is_nontrivial() {
        let g = k4();
        let (a, b) = (g.generators()[0], g.generators()[1]);
        let x = int(&[vec![0, 1], vec![1, 0]]);
        let z = int(&[vec![1, 0], vec![0, -1]]);
        let act = gamma_from_projective_action(&g, 2, &[(a, x), (b, z)]).unwrap();
        assert_eq!(act.cocycle().modulus, Some(2));
        let h = crate::cohomology::h2_qz(&g).unwrap();
        act.cocycle().check_cocycle(&g, &crate::cohomology::GModule::trivial_qz(&g)).unwrap();
        assert_eq!(h.reduce_qz(&g, act.cocycle()).unwrap(), vec![1]);
    }

    #[test]
    fn non_projective_and_singular_inputs() {
        let g = cyclic(2).unwrap();
        let bad = int(&[vec![1, 1], vec![0, 1]]);
        assert!(matches!(
            gamma_from_projective_action(&g, 2, &[(1, bad)]),
            Err(Error::NotProjective { .. })
        ));
        let twice = int(&[vec![2, 0], vec![0, 2]]);
        assert!(matches!(
            gamma_from_projective_action(&g, 2, &[(1, twice)]),
            Err(Error::NotTorsion { .. })
        ));
        let sing = int(&[vec![1, 0], vec![0, 0]]);
        assert!(matches!(
            gamma_from_projective_action(&g, 2, &[(1, sing)]),
            Err(Error::BadGenerator { generator: 0, .. })
        ));
    }

    #[test]
    fn annihilator_is_orthogonal() {
        let w = int(&[vec![1, 0], vec![2, 1], vec![0, 3], vec![1, 1]]);
        let ann = annihilator(&w).unwrap();
        assert_eq!(ann.cols(), 2);
        let prod = w.transpose().mul(&ann).unwrap();
        assert!((0..2).all(|i| (0..2).all(|j| prod.get(i, j).is_zero())));
    }

    #[test]
    fn correlation_by_identity_on_gr24() {
        let g = cyclic(2).unwrap();
        let phi = CycloMatrix::identity(1, 4);
        let corr = CorrelationAction::new(&g, 4, &[], phi.clone(), 1).unwrap();
        let p = corr.plucker_action(&g).unwrap();
        let sigma = int(&[vec![1, 0], vec![0, 1], vec![2, 3], vec![5, 7]]);
        let image = p.lift(1).mul_vec(&plucker_vector(&sigma).unwrap()).unwrap();
        let ann = annihilator(&phi.mul(&sigma).unwrap()).unwrap();
        assert!(proportional(&image, &plucker_vector(&ann).unwrap()).unwrap());
    }
}
