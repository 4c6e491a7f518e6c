//! Group cohomology in degrees 1 and 2.
//!
//! `H^2(G, Q/Z)` is computed as `H^2(G, Z/N) / delta(Hom(G, Z/N))` for a
//! multiple `N` of `|G|`. Lattice `H^2` uses the embedding
//! `H^2(G, M) = delta(H^1(G, M/N)) ⊂ H^2(G, M/N)` with `N = |G|`.

mod bar;
mod cochain;
mod module;
mod small;

pub use cochain::{Cochain, Cochain2};
pub use module::{GModule, ModuleKind};
pub use small::small_complex_h;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, Subgroup};
use crate::limits::Limits;
use crate::linalg::abelian::{
    modular_subquotient, subquotient_structure, AbelianStructure, Ambient,
};
use crate::linalg::int::{self, IntMatrix};
use crate::linalg::modular::{kernel_of_howell, kernel_rows, lcm, solve, ModMatrix};
use bar::{Bar, Coeffs};

/// A computed cohomology group with cocycle representatives of its
/// generators and a map from cocycles to class coordinates.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    degree: usize,
    group_order: usize,
    group_fingerprint: u64,
    gens: Vec<usize>,
    module: GModule,
    modulus: Option<u64>,
    structure: AbelianStructure,
    representatives: Vec<Cochain>,
    /// Howell basis of normalized 2-cocycles (parameter form), kept for
    /// `Q/Z` groups so cocycles with other denominators can be converted.
    cocycle_basis: Option<Vec<Vec<u64>>>,
}

impl CohomologyGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn invariant_factors(&self) -> &[u64] {
        self.structure.invariant_factors()
    }

    pub fn structure(&self) -> &AbelianStructure {
        &self.structure
    }

    /// One cocycle per invariant factor.
    pub fn representatives(&self) -> &[Cochain] {
        &self.representatives
    }

    /// Denominator of `Q/Z` values, or the modulus of finite coefficients.
    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn module(&self) -> &GModule {
        &self.module
    }

    pub fn order(&self) -> u128 {
        self.structure.order()
    }

    /// Class coordinates of a cocycle. Degree-2 inputs need not be
    /// normalized; `Q/Z` inputs may use any modulus dividing ours.
    pub fn reduce(&self, c: &Cochain) -> Result<Vec<u64>> {
        if c.degree != self.degree || c.order != self.group_order || c.k != self.module.rank() {
            return Err(Error::Dimension("cochain does not match this cohomology group".into()));
        }
        let c = match (self.module.kind(), self.modulus, c.modulus) {
            (ModuleKind::Lattice(_), _, None) => c.clone(),
            (ModuleKind::TrivialQZ, Some(n), Some(m)) if n != m => c.with_modulus(n)?,
            (ModuleKind::TrivialQZ | ModuleKind::Finite(_), Some(n), Some(m)) if n == m => c.clone(),
            _ => return Err(Error::Validation("cochain coefficients do not match".into())),
        };
        let params = self.params_of(&c);
        self.structure.class_map(&params)
    }

    /// Normalized parameters `c(g, s)` (degree 2) or `f(s)` (degree 1).
    fn params_of(&self, c: &Cochain) -> Vec<i64> {
        let k = c.k;
        if self.degree == 1 {
            let mut out = vec![0i64; self.gens.len() * k];
            for (s, &gs) in self.gens.iter().enumerate() {
                out[s * k..(s + 1) * k].copy_from_slice(c.value1(gs));
            }
            out
        } else {
            let order = self.group_order;
            let ee = c.value2(0, 0).to_vec();
            let mut out = vec![0i64; (order - 1) * self.gens.len() * k];
            for x in 1..order {
                // normalize: c'(x, y) = c(x, y) - x.c(e, e)
                let rho = self.module.action(x);
                for (s, &gs) in self.gens.iter().enumerate() {
                    let v = c.value2(x, gs);
                    for i in 0..k {
                        let shift: i128 = (0..k).map(|j| rho[i][j] as i128 * ee[j] as i128).sum();
                        let val = v[i] as i128 - shift;
                        let val = match self.modulus {
                            Some(n) => val.rem_euclid(n as i128),
                            None => val,
                        };
                        out[((x - 1) * self.gens.len() + s) * k + i] = val as i64;
                    }
                }
            }
            out
        }
    }

    /// Class coordinates of a `Q/Z` 2-cocycle with any denominator `m`.
    ///
    /// When `m` does not divide our modulus `N`, the cocycle is written over
    /// `Z/N'` with `N' = lcm(N, m)` as `ι(z) + b` with `z` an `N`-cocycle and
    /// `b` in the Bockstein-plus-coboundary image at `N'`; the class of `z`
    /// is the answer.
    pub fn reduce_qz(&self, g: &FiniteGroup, c: &Cochain) -> Result<Vec<u64>> {
        let (Some(n), Some(m), Some(basis)) = (self.modulus, c.modulus, &self.cocycle_basis) else {
            return self.reduce(c);
        };
        if n % m == 0 {
            return self.reduce(c);
        }
        if g.fingerprint() != self.group_fingerprint || c.degree != 2 || c.order != g.order() {
            return Err(Error::Validation("cochain does not match this cohomology group".into()));
        }
        let big = lcm(n, m);
        if big > crate::linalg::modular::MAX_MODULUS {
            return Err(Error::Validation(format!("working modulus {big} too large")));
        }
        let bar = Bar::new(g);
        let coeffs = Coeffs::new(&GModule::trivial_qz(g), big);
        let lifted = c.with_modulus(big)?;
        let target: Vec<u64> = bar
            .table_to_params2(1, &normalize_qz(&lifted))
            .iter()
            .map(|&a| a.rem_euclid(big as i64) as u64)
            .collect();
        let up = big / n;
        let mut cols: Vec<Vec<u64>> = basis.iter().map(|r| r.iter().map(|&a| a * up % big).collect()).collect();
        let kb = cols.len();
        cols.extend(qz_image(&bar, &coeffs));
        let p = target.len();
        let rows: Vec<Vec<i64>> = (0..p).map(|r| cols.iter().map(|v| v[r] as i64).collect()).collect();
        let mat = ModMatrix::from_rows(big, cols.len(), &rows)?;
        let x = solve(&mat, &target)?
            .ok_or_else(|| Error::Validation("cochain is not a cocycle".into()))?;
        let mut z = vec![0i64; p];
        for (coef, row) in x[..kb].iter().zip(basis) {
            for (zi, &v) in z.iter_mut().zip(row) {
                *zi = ((*zi as u64 + coef % n * v) % n) as i64;
            }
        }
        self.structure.class_map(&z)
    }

    /// The cocycle `Σ coords_i rep_i`.
    pub fn cochain(&self, coords: &[u64]) -> Result<Cochain> {
        if coords.len() != self.representatives.len() {
            return Err(Error::Dimension("wrong number of class coordinates".into()));
        }
        let mut acc = Cochain::zero(self.degree, self.group_order, self.module.rank(), self.modulus);
        for (&a, r) in coords.iter().zip(&self.representatives) {
            acc = acc.add(&r.scale(a as i64))?;
        }
        Ok(acc)
    }
}

fn check_h2_limit(g: &FiniteGroup, m: &GModule) -> Result<()> {
    let l = Limits::from_env();
    match m.kind() {
        ModuleKind::Lattice(d) => {
            Limits::check("lattice rank", *d, l.lattice_rank)?;
            Limits::check("group order for lattice H2", g.order(), l.h2_lattice_order)
        }
        _ => Limits::check("group order for H2", g.order(), l.h2_finite_order),
    }
}

fn factors_modulus(f: &[u64]) -> u64 {
    f.iter().fold(1, |acc, &d| lcm(acc, d))
}

/// `H^1(G, M)`.
pub fn h1(g: &FiniteGroup, m: &GModule) -> Result<CohomologyGroup> {
    m.check_group(g)?;
    let bar = Bar::new(g);
    let k = m.rank();
    let p = bar.p1(k);
    let (modulus, structure, representatives) = match m.kind() {
        ModuleKind::Lattice(_) => {
            let (structure, reps) = h1_lattice(&bar, m)?;
            (None, structure, reps)
        }
        kind => {
            let n = match kind {
                ModuleKind::Finite(f) => factors_modulus(f),
                _ => g.order() as u64,
            };
            let c = Coeffs::new(m, n);
            let kernel = kernel_rows(&bar.h1_rows(&c), p, n);
            let mut image = bar.coboundaries1(&c);
            image.extend(bar.zero_relations(&c, p));
            let structure = modular_subquotient(p, n, kernel, image)?;
            let reps = structure
                .witnesses()
                .iter()
                .map(|w| {
                    let params: Vec<u64> = w.iter().map(|&a| a.rem_euclid(n as i64) as u64).collect();
                    let t = bar.params_to_table1(&c, &params);
                    Cochain {
                        degree: 1,
                        order: g.order(),
                        k,
                        modulus: Some(n),
                        values: reduce_table(&t, &c),
                    }
                })
                .collect();
            (Some(n), structure, reps)
        }
    };
    Ok(CohomologyGroup {
        degree: 1,
        group_order: g.order(),
        group_fingerprint: g.fingerprint(),
        gens: bar.gens.clone(),
        module: m.clone(),
        modulus,
        structure,
        representatives,
        cocycle_basis: None,
    })
}

fn reduce_table(t: &[u64], c: &Coeffs) -> Vec<i64> {
    t.iter()
        .enumerate()
        .map(|(at, &a)| (a % c.d[at % c.k]) as i64)
        .collect()
}

/// Integral `H^1` of a lattice: kernel over `Z`, quotient by principal cocycles.
fn h1_lattice(bar: &Bar, m: &GModule) -> Result<(AbelianStructure, Vec<Cochain>)> {
    let g = bar.g;
    let k = m.rank();
    let p = bar.p1(k);
    let order = g.order();
    // F(x): k x p integer forms
    let mut forms: Vec<Vec<i64>> = vec![Vec::new(); order];
    forms[0] = vec![0; k * p];
    let add = |v: &mut Vec<i64>, x: usize, s: usize| {
        let rho = m.action(x);
        for i in 0..k {
            for j in 0..k {
                v[i * p + s * k + j] += rho[i][j];
            }
        }
    };
    for &y in &bar.tree.order[1..] {
        let (x, s) = (bar.tree.parent[y], bar.tree.via[y]);
        let mut v = forms[x].clone();
        add(&mut v, x, s);
        forms[y] = v;
    }
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for x in 0..order {
        for (s, &gs) in bar.gens.iter().enumerate() {
            let y = g.mul(x, gs);
            if y != 0 && bar.tree.parent[y] == x && bar.tree.via[y] == s {
                continue;
            }
            let mut v = forms[x].clone();
            add(&mut v, x, s);
            for i in 0..k {
                let row: Vec<i64> = (0..p).map(|c| forms[y][i * p + c] - v[i * p + c]).collect();
                if row.iter().any(|&a| a != 0) && !rows.contains(&row) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel: Vec<Vec<i64>> = if rows.is_empty() {
        (0..p).map(|i| (0..p).map(|j| i64::from(i == j)).collect()).collect()
    } else {
        let mat = IntMatrix::from_rows(p, &rows)?;
        int::kernel(&mat)
            .into_iter()
            .map(|r| r.iter().map(|x| x.to_i64().ok_or(Error::Validation("overflow".into()))).collect())
            .collect::<Result<_>>()?
    };
    let mut image = Vec::new();
    for i in 0..k {
        let mut v = vec![0i64; p];
        for (s, &gs) in bar.gens.iter().enumerate() {
            let rho = m.action(gs);
            for j in 0..k {
                v[s * k + j] = rho[j][i] - i64::from(i == j);
            }
        }
        image.push(v);
    }
    let structure = subquotient_structure(p, Ambient::Free, &kernel, &image)?;
    let reps = structure
        .witnesses()
        .iter()
        .map(|w| {
            let mut t = vec![0i64; order * k];
            for &y in &bar.tree.order[1..] {
                let (x, s) = (bar.tree.parent[y], bar.tree.via[y]);
                let rho = m.action(x);
                for i in 0..k {
                    let a: i64 = (0..k).map(|j| rho[i][j] * w[s * k + j]).sum();
                    t[y * k + i] = t[x * k + i] + a;
                }
            }
            Cochain {
                degree: 1,
                order,
                k,
                modulus: None,
                values: t,
            }
        })
        .collect();
    Ok((structure, reps))
}

/// `H^2(G, M)` for any supported module. `Q/Z` uses modulus `|G|`.
pub fn h2(g: &FiniteGroup, m: &GModule) -> Result<CohomologyGroup> {
    m.check_group(g)?;
    check_h2_limit(g, m)?;
    match m.kind() {
        ModuleKind::TrivialQZ => h2_qz_at(g, g.order() as u64),
        ModuleKind::Finite(f) => h2_finite(g, m, factors_modulus(f)),
        ModuleKind::Lattice(_) => h2_lattice(g, m),
    }
}

/// `H^2(G, Q/Z)`, the Schur multiplier, realized with denominator `|G|`.
pub fn h2_qz(g: &FiniteGroup) -> Result<CohomologyGroup> {
    h2(g, &GModule::trivial_qz(g))
}

/// `H^2(G, Q/Z)` with cocycle values `a/n`; `n` must be a multiple of `|G|`.
pub fn h2_qz_at(g: &FiniteGroup, n: u64) -> Result<CohomologyGroup> {
    let m = GModule::trivial_qz(g);
    check_h2_limit(g, &m)?;
    if n == 0 || !n.is_multiple_of(g.order() as u64) {
        return Err(Error::Validation(format!(
            "modulus {n} is not a multiple of the group order {}",
            g.order()
        )));
    }
    let bar = Bar::new(g);
    let c = Coeffs::new(&m, n);
    let p = bar.p2(1);
    let basis = bar.h2_constraint_basis(&c);
    let kernel = kernel_of_howell(&basis, p, n);
    let image = qz_image(&bar, &c);
    let mut h = finish_modular(g, bar, m, n, &c, kernel.clone(), image)?;
    h.cocycle_basis = Some(kernel);
    Ok(h)
}

/// `c(g, h) - c(e, e)` for a trivial-coefficient 2-cochain.
fn normalize_qz(c: &Cochain) -> Vec<i64> {
    let ee = c.values[0];
    c.values.iter().map(|&v| v - ee).collect()
}

/// Coboundaries and Bocksteins of `Hom(G, Z/n)` in parameter form.
fn qz_image(bar: &Bar, c: &Coeffs) -> Vec<Vec<u64>> {
    let n = c.n;
    let mut image = bar.coboundaries2(c);
    let homs = kernel_rows(&bar.h1_rows(c), bar.p1(1), n);
    for f in homs {
        let chi = bar.params_to_table1(c, &f);
        let b = bockstein_table(bar.g, &chi, n);
        image.push(bar.table_to_params2(1, &b).into_iter().map(|a| a as u64).collect());
    }
    image
}

fn bockstein_table(g: &FiniteGroup, chi: &[u64], n: u64) -> Vec<i64> {
    let order = g.order();
    let mut t = vec![0i64; order * order];
    for a in 0..order {
        for b in 0..order {
            let s = chi[a] + chi[b] - chi[g.mul(a, b)];
            t[a * order + b] = (s / n) as i64;
        }
    }
    t
}

fn finish_modular(
    g: &FiniteGroup,
    bar: Bar,
    m: GModule,
    n: u64,
    c: &Coeffs,
    kernel: Vec<Vec<u64>>,
    image: Vec<Vec<u64>>,
) -> Result<CohomologyGroup> {
    let p = bar.p2(c.k);
    let structure = modular_subquotient(p, n, kernel, image)?;
    let representatives = structure
        .witnesses()
        .iter()
        .map(|w| {
            let params: Vec<u64> = w.iter().map(|&a| a as u64 % n).collect();
            Cochain {
                degree: 2,
                order: g.order(),
                k: c.k,
                modulus: Some(n),
                values: reduce_table(&bar.params_to_table2(c, &params), c),
            }
        })
        .collect();
    Ok(CohomologyGroup {
        degree: 2,
        group_order: g.order(),
        group_fingerprint: g.fingerprint(),
        gens: bar.gens.clone(),
        module: m,
        modulus: Some(n),
        structure,
        representatives,
        cocycle_basis: None,
    })
}

fn h2_finite(g: &FiniteGroup, m: &GModule, n: u64) -> Result<CohomologyGroup> {
    let bar = Bar::new(g);
    let c = Coeffs::new(m, n);
    let p = bar.p2(c.k);
    let basis = bar.h2_constraint_basis(&c);
    let kernel = kernel_of_howell(&basis, p, n);
    let mut image = bar.coboundaries2(&c);
    image.extend(bar.zero_relations(&c, p));
    finish_modular(g, bar, m.clone(), n, &c, kernel, image)
}

/// Lattice `H^2` through connecting maps of `0 -> M -> M -> M/N -> 0`.
fn h2_lattice(g: &FiniteGroup, m: &GModule) -> Result<CohomologyGroup> {
    let bar = Bar::new(g);
    let order = g.order();
    let n = order as u64;
    let k = m.rank();
    let c = Coeffs::new(m, n);
    let p = bar.p2(k);
    let z1 = kernel_rows(&bar.h1_rows(&c), bar.p1(k), n);
    // integral connecting cocycles delta(f~)/N
    let mut betas: Vec<Vec<i64>> = Vec::new();
    for f in &z1 {
        let t = bar.params_to_table1(&c, f);
        let ft: Vec<i64> = t.iter().map(|&a| a as i64).collect();
        let mut b = vec![0i64; order * order * k];
        for x in 0..order {
            let rho = m.action(x);
            for y in 0..order {
                let xy = g.mul(x, y);
                for i in 0..k {
                    let act: i64 = (0..k).map(|j| rho[i][j] * ft[y * k + j]).sum();
                    let v = act - ft[xy * k + i] + ft[x * k + i];
                    if v % n as i64 != 0 {
                        return Err(Error::Validation("connecting cocycle not divisible".into()));
                    }
                    b[(x * order + y) * k + i] = v / n as i64;
                }
            }
        }
        betas.push(b);
    }
    let beta_params: Vec<Vec<u64>> = betas
        .iter()
        .map(|b| {
            bar.table_to_params2(k, b)
                .iter()
                .map(|&a| a.rem_euclid(n as i64) as u64)
                .collect()
        })
        .collect();
    let cob = bar.coboundaries2(&c);
    let mut span = beta_params.clone();
    span.extend(cob.iter().cloned());
    let structure = modular_subquotient(p, n, span, cob.clone())?;
    // integral representatives: solve w = Σ a_j beta_j + coboundary
    let cols = beta_params.len() + cob.len();
    let rows: Vec<Vec<i64>> = (0..p)
        .map(|r| {
            beta_params
                .iter()
                .chain(&cob)
                .map(|v| v[r] as i64)
                .collect()
        })
        .collect();
    let mut representatives = Vec::new();
    if !structure.is_trivial() {
        let mat = ModMatrix::from_rows(n, cols, &rows)?;
        for w in structure.witnesses() {
            let target: Vec<u64> = w.iter().map(|&a| a.rem_euclid(n as i64) as u64).collect();
            let sol = solve(&mat, &target)?
                .ok_or_else(|| Error::Validation("witness outside connecting image".into()))?;
            let mut rep = vec![0i64; order * order * k];
            for (a, b) in sol.iter().zip(&betas) {
                for (r, &v) in rep.iter_mut().zip(b) {
                    *r += *a as i64 * v;
                }
            }
            representatives.push(Cochain {
                degree: 2,
                order,
                k,
                modulus: None,
                values: rep,
            });
        }
    }
    Ok(CohomologyGroup {
        degree: 2,
        group_order: order,
        group_fingerprint: g.fingerprint(),
        gens: bar.gens.clone(),
        module: m.clone(),
        modulus: None,
        structure,
        representatives,
        cocycle_basis: None,
    })
}

/// The connecting cocycle `(χ(g) + χ(h) - χ(gh)) / n` of a homomorphism
/// `χ: G -> Z/n` (values in `[0, n)`), as a `Q/Z` cocycle with modulus `n`.
pub fn connecting_bockstein(g: &FiniteGroup, chi: &[u64], n: u64) -> Result<Cochain> {
    if chi.len() != g.order() {
        return Err(Error::Dimension("character table has wrong length".into()));
    }
    let chi: Vec<u64> = chi.iter().map(|&a| a % n).collect();
    for a in 0..g.order() {
        for &s in g.generators() {
            if (chi[a] + chi[s]) % n != chi[g.mul(a, s)] {
                return Err(Error::Validation("character is not a homomorphism".into()));
            }
        }
    }
    Ok(Cochain {
        degree: 2,
        order: g.order(),
        k: 1,
        modulus: Some(n),
        values: bockstein_table(g, &chi, n),
    })
}

/// Restriction of a cochain to a subgroup, numbered as in
/// [`Subgroup::to_group`].
pub fn restrict(c: &Cochain, g: &FiniteGroup, sub: &Subgroup) -> Result<Cochain> {
    g.check_subgroup(sub)?;
    if c.order != g.order() {
        return Err(Error::Dimension("cochain belongs to a different group".into()));
    }
    let el = sub.elements();
    let k = c.k;
    let values = match c.degree {
        1 => el.iter().flat_map(|&a| c.value1(a).to_vec()).collect(),
        _ => el
            .iter()
            .flat_map(|&a| el.iter().flat_map(move |&b| c.value2(a, b).to_vec()))
            .collect(),
    };
    Ok(Cochain {
        degree: c.degree,
        order: el.len(),
        k,
        modulus: c.modulus,
        values,
    })
}

/// Class coordinates of the restriction of a class.
pub fn restrict_class(
    hg: &CohomologyGroup,
    coords: &[u64],
    g: &FiniteGroup,
    sub: &Subgroup,
    ha: &CohomologyGroup,
) -> Result<Vec<u64>> {
    if hg.group_fingerprint != g.fingerprint() {
        return Err(Error::Validation("cohomology group belongs to a different group".into()));
    }
    let c = restrict(&hg.cochain(coords)?, g, sub)?;
    if let ModuleKind::TrivialQZ = ha.module.kind() {
        // the restricted values have denominator |G|, finer than |A|
        let (ag, _) = sub.to_group(g)?;
        return ha.reduce_qz(&ag, &c);
    }
    ha.reduce(&c)
}

/// Corestriction of a 2-cochain with trivial coefficients from a subgroup
/// (numbered as in [`Subgroup::to_group`]) to `G`.
pub fn corestrict(c: &Cochain, g: &FiniteGroup, sub: &Subgroup) -> Result<Cochain> {
    g.check_subgroup(sub)?;
    if c.degree != 2 || c.order != sub.order() {
        return Err(Error::Dimension("cochain does not live on the subgroup".into()));
    }
    let order = g.order();
    // rep(x) = smallest element of the right coset Hx
    let rep: Vec<usize> = (0..order)
        .map(|x| sub.elements().iter().map(|&h| g.mul(h, x)).min().unwrap_or(x))
        .collect();
    let mut reps: Vec<usize> = rep.clone();
    reps.sort_unstable();
    reps.dedup();
    let h_of = |t: usize, x: usize| -> Result<usize> {
        let tx = g.mul(t, x);
        let hx = g.mul(tx, g.inv(rep[tx]));
        sub.index_of(hx)
            .ok_or_else(|| Error::Validation("coset decomposition failed".into()))
    };
    let k = c.k;
    let mut out = Cochain::zero(2, order, k, c.modulus);
    for a in 0..order {
        for b in 0..order {
            let mut acc = vec![0i64; k];
            for &t in &reps {
                let h1 = h_of(t, a)?;
                let h2 = h_of(rep[g.mul(t, a)], b)?;
                for (x, &v) in acc.iter_mut().zip(c.value2(h1, h2)) {
                    *x += v;
                }
            }
            for (i, v) in acc.into_iter().enumerate() {
                out.values[(a * order + b) * k + i] = match c.modulus {
                    Some(n) => v.rem_euclid(n as i64),
                    None => v,
                };
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
