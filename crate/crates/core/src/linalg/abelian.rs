//! Finite abelian groups presented as subquotients, with witnesses and a
//! coordinate map.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::int::{self, IntMatrix};
use super::modular::{self, gcd, lcm, mod_snf, reduce_by_howell, MAX_MODULUS};
use crate::error::{Error, Result};

/// The ambient group that kernel and image generators live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ambient {
    /// `(Z/N)^k`
    Modulus(u64),
    /// `Z^k`
    Free,
}

/// A finite abelian group `Z/d_1 + ... + Z/d_k` with `d_1 | d_2 | ...`,
/// each `d_i >= 2`, realized inside some ambient group.
#[derive(Clone, Debug)]
pub struct AbelianStructure {
    invariant_factors: Vec<u64>,
    witnesses: Vec<Vec<i64>>,
    ambient_dim: usize,
    map: ClassMap,
}

#[derive(Clone, Debug)]
enum ClassMap {
    Modular {
        n: u64,
        basis: Vec<Vec<u64>>,
        v: Vec<Vec<u64>>,
        slots: Vec<usize>,
    },
    Integral {
        basis: Vec<Vec<BigInt>>,
        v: IntMatrix,
        slots: Vec<usize>,
    },
    Sum {
        parts: Vec<AbelianStructure>,
        outer: Box<AbelianStructure>,
    },
}

impl AbelianStructure {
    /// The trivial group inside an ambient of the given dimension.
    pub fn trivial(ambient_dim: usize) -> Self {
        AbelianStructure {
            invariant_factors: Vec::new(),
            witnesses: Vec::new(),
            ambient_dim,
            map: ClassMap::Modular {
                n: 1,
                basis: Vec::new(),
                v: Vec::new(),
                slots: Vec::new(),
            },
        }
    }

    /// `Z/d_1 + ... + Z/d_k` in its own coordinates (factors in any order,
    /// ones allowed). Witnesses and class map are in canonical form.
    pub fn from_cyclic_orders(orders: &[u64]) -> Result<Self> {
        let k = orders.len();
        if orders.contains(&0) {
            return Err(Error::InfiniteQuotient);
        }
        let n = orders.iter().fold(1, |acc, &d| lcm(acc, d));
        let ident: Vec<Vec<i64>> = (0..k).map(|i| unit_vec(k, i)).collect();
        let rels: Vec<Vec<i64>> = orders
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let mut r = vec![0; k];
                r[i] = d as i64;
                r
            })
            .collect();
        subquotient_structure(k, Ambient::Modulus(n), &ident, &rels)
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    /// One ambient vector per invariant factor.
    pub fn witnesses(&self) -> &[Vec<i64>] {
        &self.witnesses
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Group order as a product of invariant factors.
    pub fn order(&self) -> u128 {
        self.invariant_factors.iter().map(|&d| d as u128).product()
    }

    /// Largest invariant factor (1 for the trivial group).
    pub fn exponent(&self) -> u64 {
        self.invariant_factors.last().copied().unwrap_or(1)
    }

    /// Coordinates of an ambient kernel vector, entry `i` reduced mod `d_i`.
    pub fn class_map(&self, x: &[i64]) -> Result<Vec<u64>> {
        if x.len() != self.ambient_dim {
            return Err(Error::Dimension(format!(
                "class_map got a vector of length {}, ambient dimension is {}",
                x.len(),
                self.ambient_dim
            )));
        }
        let f = &self.invariant_factors;
        match &self.map {
            ClassMap::Modular { n, basis, v, slots } => {
                let n = *n;
                let xr: Vec<u64> = x.iter().map(|&a| a.rem_euclid(n as i64) as u64).collect();
                let (c, rem) = reduce_by_howell(basis, &xr, n);
                if rem.iter().any(|&a| a != 0) {
                    return Err(Error::Containment {
                        witness: x.to_vec(),
                    });
                }
                Ok(slots
                    .iter()
                    .zip(f)
                    .map(|(&s, &d)| {
                        let z = c
                            .iter()
                            .zip(v)
                            .fold(0u64, |acc, (&ci, row)| (acc + ci * row[s] % n) % n);
                        z % d
                    })
                    .collect())
            }
            ClassMap::Integral { basis, v, slots } => {
                let xb = int::to_big(x);
                let (c, rem) = int::reduce_by_hermite(basis, &xb);
                if rem.iter().any(|a| !a.is_zero()) {
                    return Err(Error::Containment {
                        witness: x.to_vec(),
                    });
                }
                Ok(slots
                    .iter()
                    .zip(f)
                    .map(|(&s, &d)| {
                        let z: BigInt = c.iter().enumerate().map(|(i, ci)| ci * v.get(i, s)).sum();
                        let d = BigInt::from(d);
                        ((z % &d + &d) % &d).to_u64().unwrap_or(0)
                    })
                    .collect())
            }
            ClassMap::Sum { parts, outer } => {
                let mut coords = Vec::new();
                let mut off = 0;
                for p in parts {
                    let c = p.class_map(&x[off..off + p.ambient_dim])?;
                    coords.extend(c.into_iter().map(|a| a as i64));
                    off += p.ambient_dim;
                }
                outer.class_map(&coords)
            }
        }
    }

    /// True when `x` represents the zero class.
    pub fn is_zero_class(&self, x: &[i64]) -> Result<bool> {
        Ok(self.class_map(x)?.iter().all(|&a| a == 0))
    }

    /// Ambient representative of the class with the given coordinates.
    pub fn element(&self, coords: &[u64]) -> Vec<i64> {
        let mut out = vec![0i64; self.ambient_dim];
        for (c, w) in coords.iter().zip(&self.witnesses) {
            for (o, &wi) in out.iter_mut().zip(w) {
                *o += *c as i64 * wi;
            }
        }
        if let ClassMap::Modular { n, .. } = &self.map {
            for o in &mut out {
                *o = o.rem_euclid(*n as i64);
            }
        }
        out
    }

    /// Order of the class with the given coordinates.
    pub fn class_order(&self, coords: &[u64]) -> u64 {
        coords
            .iter()
            .zip(&self.invariant_factors)
            .fold(1, |acc, (&c, &d)| lcm(acc, d / gcd(c % d, d)))
    }

    /// Direct sum; the ambient is the concatenation of both ambients.
    pub fn direct_sum(parts: Vec<AbelianStructure>) -> Result<Self> {
        let orders: Vec<u64> = parts
            .iter()
            .flat_map(|p| p.invariant_factors.iter().copied())
            .collect();
        let outer = Self::from_cyclic_orders(&orders)?;
        let ambient_dim = parts.iter().map(|p| p.ambient_dim).sum();
        let witnesses = outer
            .witnesses
            .iter()
            .map(|w| {
                let mut out = Vec::with_capacity(ambient_dim);
                let mut k = 0;
                for p in &parts {
                    let coords: Vec<u64> = p
                        .invariant_factors
                        .iter()
                        .map(|&d| {
                            let c = w[k].rem_euclid(d as i64) as u64;
                            k += 1;
                            c
                        })
                        .collect();
                    out.extend(p.element(&coords));
                }
                out
            })
            .collect();
        Ok(AbelianStructure {
            invariant_factors: outer.invariant_factors.clone(),
            witnesses,
            ambient_dim,
            map: ClassMap::Sum {
                parts,
                outer: Box::new(outer),
            },
        })
    }
}

fn unit_vec(k: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; k];
    v[i] = 1;
    v
}

/// Invariant factors of `Z/n_1 + ... + Z/n_k` (ones dropped).
pub fn canonical_factors(orders: &[u64]) -> Vec<u64> {
    let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &n in orders {
        for (p, e) in factorize(n) {
            by_prime.entry(p).or_default().push(p.pow(e));
        }
    }
    let width = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![1u64; width];
    for powers in by_prime.values_mut() {
        powers.sort_unstable();
        let off = width - powers.len();
        for (i, q) in powers.iter().enumerate() {
            out[off + i] *= q;
        }
    }
    out.retain(|&d| d > 1);
    out
}

/// Prime factorization by trial division.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Structure of `span(kernel_gens) / span(image_gens)`.
///
/// Fails with a containment error if some image generator is outside the
/// kernel span, and with [`Error::InfiniteQuotient`] for free ambients whose
/// quotient has positive rank.
pub fn subquotient_structure(
    ambient_dim: usize,
    ambient: Ambient,
    kernel_gens: &[Vec<i64>],
    image_gens: &[Vec<i64>],
) -> Result<AbelianStructure> {
    for g in kernel_gens.iter().chain(image_gens) {
        if g.len() != ambient_dim {
            return Err(Error::Dimension(format!(
                "generator of length {} in ambient of dimension {ambient_dim}",
                g.len()
            )));
        }
    }
    match ambient {
        Ambient::Modulus(n) => {
            if n == 0 || n > MAX_MODULUS {
                return Err(Error::Validation(format!("modulus {n} out of range")));
            }
            let red = |v: &Vec<i64>| -> Vec<u64> {
                v.iter().map(|&a| a.rem_euclid(n as i64) as u64).collect()
            };
            let k: Vec<Vec<u64>> = kernel_gens.iter().map(red).collect();
            let i: Vec<Vec<u64>> = image_gens.iter().map(red).collect();
            modular_subquotient(ambient_dim, n, k, i)
        }
        Ambient::Free => {
            let k: Vec<Vec<BigInt>> = kernel_gens.iter().map(|v| int::to_big(v)).collect();
            let i: Vec<Vec<BigInt>> = image_gens.iter().map(|v| int::to_big(v)).collect();
            integral_subquotient(ambient_dim, &k, &i)
        }
    }
}

/// Modular subquotient from residue vectors. Kernel generators need not be
/// in any normal form.
pub(crate) fn modular_subquotient(
    dim: usize,
    n: u64,
    kernel_gens: Vec<Vec<u64>>,
    image_gens: Vec<Vec<u64>>,
) -> Result<AbelianStructure> {
    let basis = modular::howell_rows(kernel_gens, dim, n);
    modular_subquotient_from_basis(dim, n, basis, image_gens)
}

/// Same as [`modular_subquotient`] with the kernel already in Howell form.
pub(crate) fn modular_subquotient_from_basis(
    dim: usize,
    n: u64,
    basis: Vec<Vec<u64>>,
    image_gens: Vec<Vec<u64>>,
) -> Result<AbelianStructure> {
    for g in &image_gens {
        let (_, rem) = reduce_by_howell(&basis, g, n);
        if rem.iter().any(|&a| a != 0) {
            return Err(Error::Containment {
                witness: g.iter().map(|&a| a as i64).collect(),
            });
        }
    }
    let m = basis.len();
    if m == 0 {
        return Ok(AbelianStructure::trivial(dim));
    }
    // relations among kernel coordinates: c with c*K in span(image)
    let mut aug: Vec<Vec<u64>> = basis
        .iter()
        .enumerate()
        .map(|(i, k)| {
            let mut r = k.clone();
            r.extend((0..m).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    aug.extend(image_gens.into_iter().map(|mut g| {
        g.extend(std::iter::repeat_n(0, m));
        g
    }));
    let h = modular::howell_rows(aug, dim + m, n);
    let rel: Vec<Vec<u64>> = h
        .into_iter()
        .filter(|r| r[..dim].iter().all(|&a| a == 0))
        .map(|r| r[dim..].to_vec())
        .collect();
    let snf = mod_snf(rel, m, n);
    let mut factors = Vec::new();
    let mut slots = Vec::new();
    let mut witnesses = Vec::new();
    for (s, &d) in snf.diag.iter().enumerate() {
        let d = gcd(d, n);
        if d <= 1 {
            continue;
        }
        factors.push(d);
        slots.push(s);
        let mut w = vec![0u64; dim];
        for (coef, krow) in snf.v_inv[s].iter().zip(&basis) {
            if *coef == 0 {
                continue;
            }
            for (wi, &kv) in w.iter_mut().zip(krow) {
                *wi = (*wi + coef * kv % n) % n;
            }
        }
        witnesses.push(w.into_iter().map(|a| a as i64).collect());
    }
    Ok(AbelianStructure {
        invariant_factors: factors,
        witnesses,
        ambient_dim: dim,
        map: ClassMap::Modular {
            n,
            basis,
            v: snf.v,
            slots,
        },
    })
}

fn integral_subquotient(
    dim: usize,
    kernel_gens: &[Vec<BigInt>],
    image_gens: &[Vec<BigInt>],
) -> Result<AbelianStructure> {
    let basis = int::hermite_rows(kernel_gens, dim);
    let m = basis.len();
    let mut rel = Vec::with_capacity(image_gens.len());
    for g in image_gens {
        let (c, rem) = int::reduce_by_hermite(&basis, g);
        if rem.iter().any(|a| !a.is_zero()) {
            return Err(Error::Containment {
                witness: g.iter().map(|a| a.to_i64().unwrap_or(i64::MAX)).collect(),
            });
        }
        rel.push(c);
    }
    if m == 0 {
        return Ok(AbelianStructure::trivial(dim));
    }
    let r = IntMatrix::from_rows(m, &rel)?;
    let snf = int::smith_normal_form(&r);
    let diag = snf.diagonal();
    if diag.len() < m {
        return Err(Error::InfiniteQuotient);
    }
    let v_inv = inverse_unimodular(&snf.v)?;
    let mut factors = Vec::new();
    let mut slots = Vec::new();
    let mut witnesses = Vec::new();
    for (s, d) in diag.iter().enumerate() {
        let d = d
            .to_u64()
            .ok_or_else(|| Error::Unsupported(format!("invariant factor {d} exceeds u64")))?;
        if d <= 1 {
            continue;
        }
        factors.push(d);
        slots.push(s);
        let mut w = vec![BigInt::zero(); dim];
        for (coef, krow) in v_inv.row(s).iter().zip(&basis) {
            for (wi, kv) in w.iter_mut().zip(krow) {
                *wi += coef * kv;
            }
        }
        let w: Vec<i64> = w
            .iter()
            .map(|a| {
                a.to_i64()
                    .ok_or_else(|| Error::Unsupported(format!("witness entry {a} exceeds i64")))
            })
            .collect::<Result<_>>()?;
        witnesses.push(w);
    }
    Ok(AbelianStructure {
        invariant_factors: factors,
        witnesses,
        ambient_dim: dim,
        map: ClassMap::Integral {
            basis,
            v: snf.v,
            slots,
        },
    })
}

/// Inverse of a unimodular integer matrix.
pub fn inverse_unimodular(v: &IntMatrix) -> Result<IntMatrix> {
    let n = v.rows();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<BigInt> = (0..n).map(|i| BigInt::from(u8::from(i == j))).collect();
        let x = int::solve(v, &e)?.ok_or(Error::Singular)?;
        cols.push(x);
    }
    Ok(IntMatrix::from_rows(n, &cols)?.transpose())
}

/// One summand of a restriction-kernel computation: a homomorphism from the
/// domain coordinates into `Z/e_1 + ... + Z/e_r`, followed by the quotient
/// by `relations`.
#[derive(Clone, Debug)]
pub struct KernelTarget {
    pub factors: Vec<u64>,
    /// `factors.len()` rows, one column per domain coordinate.
    pub matrix: Vec<Vec<i64>>,
    /// Extra relations in target coordinates.
    pub relations: Vec<Vec<i64>>,
}

impl KernelTarget {
    /// Image of a domain vector in target coordinates.
    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        self.matrix
            .iter()
            .zip(&self.factors)
            .map(|(row, &e)| {
                let s: i128 = row.iter().zip(x).map(|(&a, &b)| a as i128 * b as i128).sum();
                s.rem_euclid(e as i128) as i64
            })
            .collect()
    }

    /// True when the image of `x` vanishes modulo the relations.
    pub fn kills(&self, x: &[i64]) -> Result<bool> {
        if self.factors.is_empty() {
            return Ok(true);
        }
        let n = self.factors.iter().fold(1, |acc, &e| lcm(acc, e));
        let k = self.factors.len();
        let scale: Vec<u64> = self.factors.iter().map(|&e| n / e).collect();
        let emb = |v: &[i64]| -> Vec<u64> {
            v.iter()
                .zip(&scale)
                .map(|(&a, &s)| ((a.rem_euclid(n as i64) as u64) * s) % n)
                .collect()
        };
        let rels: Vec<Vec<u64>> = self.relations.iter().map(|r| emb(r)).collect();
        let basis = modular::howell_rows(rels, k, n);
        let (_, rem) = reduce_by_howell(&basis, &emb(&self.apply(x)), n);
        Ok(rem.iter().all(|&a| a == 0))
    }
}

/// Kernel of `D/R -> prod_A T_A/S_A` where `D = Z/d_1 + ... + Z/d_k`, `R` is
/// spanned by `domain_relations`, and each target is given by a
/// [`KernelTarget`]. The result lives in domain coordinates.
pub fn restriction_kernel(
    domain_factors: &[u64],
    domain_relations: &[Vec<i64>],
    targets: &[KernelTarget],
) -> Result<AbelianStructure> {
    let k = domain_factors.len();
    let mut n = domain_factors.iter().fold(1, |acc, &d| lcm(acc, d));
    for t in targets {
        n = t.factors.iter().fold(n, |acc, &e| lcm(acc, e));
    }
    if n > MAX_MODULUS {
        return Err(Error::Validation(format!("working modulus {n} too large")));
    }
    let lam: usize = targets.iter().map(|t| t.relations.len()).sum();
    let width = k + lam;
    let mut constraints: Vec<Vec<u64>> = Vec::new();
    let mut off = k;
    for t in targets {
        if t.matrix.len() != t.factors.len() || t.matrix.iter().any(|r| r.len() != k) {
            return Err(Error::Dimension("restriction matrix shape".into()));
        }
        for (j, (&e, row)) in t.factors.iter().zip(&t.matrix).enumerate() {
            let s = n / e;
            let mut c = vec![0u64; width];
            for (i, &a) in row.iter().enumerate() {
                c[i] = (a.rem_euclid(n as i64) as u64) * s % n;
            }
            for (l, rel) in t.relations.iter().enumerate() {
                let a = rel[j].rem_euclid(n as i64) as u64 * s % n;
                c[off + l] = (n - a) % n;
            }
            constraints.push(c);
        }
        off += t.relations.len();
    }
    let ker = modular::kernel_rows(&constraints, width, n);
    let mut gens: Vec<Vec<u64>> = ker.into_iter().map(|r| r[..k].to_vec()).collect();
    let red = |v: &Vec<i64>| -> Vec<u64> { v.iter().map(|&a| a.rem_euclid(n as i64) as u64).collect() };
    let mut image: Vec<Vec<u64>> = domain_factors
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            let mut r = vec![0u64; k];
            r[i] = d % n;
            r
        })
        .collect();
    image.extend(domain_relations.iter().map(red));
    gens.extend(image.iter().cloned());
    modular_subquotient(k, n, gens, image)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_equals_image() {
        let s = subquotient_structure(2, Ambient::Free, &[vec![1, 0]], &[vec![1, 0]]).unwrap();
        assert!(s.is_trivial());
    }

    #[test]
    fn z2_mod_2z2() {
        let k = vec![vec![1, 0], vec![0, 1]];
        let i = vec![vec![2, 0], vec![0, 2]];
        let s = subquotient_structure(2, Ambient::Free, &k, &i).unwrap();
        assert_eq!(s.invariant_factors(), &[2, 2]);
        for (idx, w) in s.witnesses().iter().enumerate() {
            let c = s.class_map(w).unwrap();
            assert_eq!(c, (0..2).map(|j| u64::from(j == idx)).collect::<Vec<_>>());
        }
    }

    #[test]
    fn free_quotient_is_rejected() {
        let s = subquotient_structure(2, Ambient::Free, &[vec![1, 0], vec![0, 1]], &[vec![2, 0]]);
        assert_eq!(s.unwrap_err(), Error::InfiniteQuotient);
    }

    #[test]
    fn containment_is_checked() {
        let s = subquotient_structure(2, Ambient::Modulus(4), &[vec![2, 0]], &[vec![1, 0]]);
        assert!(matches!(s, Err(Error::Containment { .. })));
    }

    #[test]
    fn modular_witnesses_round_trip() {
        let s = AbelianStructure::from_cyclic_orders(&[4, 6, 1, 3]).unwrap();
        assert_eq!(s.invariant_factors(), &[6, 12]);
        for (idx, w) in s.witnesses().iter().enumerate() {
            let c = s.class_map(w).unwrap();
            for (j, &cj) in c.iter().enumerate() {
                assert_eq!(cj, u64::from(j == idx));
            }
        }
    }

    #[test]
    fn canonical_factor_examples() {
        assert_eq!(canonical_factors(&[4, 6, 3]), vec![6, 12]);
        assert_eq!(canonical_factors(&[2, 2, 2]), vec![2, 2, 2]);
        assert_eq!(canonical_factors(&[1, 1]), Vec::<u64>::new());
        assert_eq!(canonical_factors(&[6, 10]), vec![2, 30]);
    }

    #[test]
    fn restriction_kernel_simple() {
        // Z/2 + Z/2 -> Z/2 by the first coordinate: kernel Z/2
        let t = KernelTarget {
            factors: vec![2],
            matrix: vec![vec![1, 0]],
            relations: vec![],
        };
        let s = restriction_kernel(&[2, 2], &[], std::slice::from_ref(&t)).unwrap();
        assert_eq!(s.invariant_factors(), &[2]);
        assert!(t.kills(&s.witnesses()[0]).unwrap());
        // quotienting the target by everything kills nothing in the domain
        let t2 = KernelTarget {
            relations: vec![vec![1]],
            ..t
        };
        let s2 = restriction_kernel(&[2, 2], &[], &[t2]).unwrap();
        assert_eq!(s2.invariant_factors(), &[2, 2]);
    }

    #[test]
    fn direct_sum_maps_blocks() {
        let a = AbelianStructure::from_cyclic_orders(&[2]).unwrap();
        let b = AbelianStructure::from_cyclic_orders(&[3]).unwrap();
        let s = AbelianStructure::direct_sum(vec![a, b]).unwrap();
        assert_eq!(s.invariant_factors(), &[6]);
        assert_eq!(s.class_map(&s.witnesses()[0]).unwrap(), vec![1]);
        assert_eq!(s.class_map(&[1, 0]).unwrap(), vec![3]);
    }
}
