//! Subgroup enumeration and abelian decomposition.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::{FiniteGroup, Subgroup};
use crate::error::{Error, Result};
use crate::linalg::abelian::inverse_unimodular;
use crate::linalg::int::{smith_normal_form, IntMatrix};

/// Subgroups generated by commuting pairs, deduplicated and sorted by
/// `(order, elements)`. With `up_to_conjugacy`, only the smallest member of
/// each conjugacy class is kept.
pub fn bicyclic_subgroups(g: &FiniteGroup, up_to_conjugacy: bool) -> Vec<Subgroup> {
    let n = g.order();
    // distinct cyclic subgroups, each with one generator
    let mut cyclic: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    for x in 0..n {
        let c = g.closure(&[x]);
        if seen.insert(c.clone()) {
            cyclic.push((x, c));
        }
    }
    let found: Vec<Vec<Vec<usize>>> = (0..cyclic.len())
        .into_par_iter()
        .map(|i| {
            let (a, _) = &cyclic[i];
            (i..cyclic.len())
                .filter(|&j| g.commute(*a, cyclic[j].0))
                .map(|j| g.closure(&[*a, cyclic[j].0]))
                .collect()
        })
        .collect();
    let mut all: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
    for list in found {
        for s in list {
            all.insert((s.len(), s));
        }
    }
    let mut out: Vec<Subgroup> = Vec::new();
    if up_to_conjugacy {
        let mut taken: HashSet<Vec<usize>> = HashSet::new();
        for (_, s) in &all {
            if taken.contains(s) {
                continue;
            }
            // `all` is sorted, so the first member met is the smallest
            for x in 0..n {
                let mut c: Vec<usize> = s.iter().map(|&h| g.conjugate(x, h)).collect();
                c.sort_unstable();
                taken.insert(c);
            }
            out.push(Subgroup::new_unchecked(g, s.clone()));
        }
    } else {
        out = all
            .into_iter()
            .map(|(_, s)| Subgroup::new_unchecked(g, s))
            .collect();
    }
    out
}

/// Invariant factors of an abelian subgroup with elements realizing them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianDecomposition {
    pub invariant_factors: Vec<u64>,
    /// `generators[i]` has order `invariant_factors[i]`, and the subgroup
    /// is the internal direct product of the cyclic groups they generate.
    pub generators: Vec<usize>,
}

/// Decomposes an abelian subgroup into cyclic factors `d_1 | d_2 | ...`.
pub fn abelian_structure(g: &FiniteGroup, s: &Subgroup) -> Result<AbelianDecomposition> {
    g.check_subgroup(s)?;
    let el = s.elements();
    for (i, &a) in el.iter().enumerate() {
        for &b in &el[i + 1..] {
            if !g.commute(a, b) {
                return Err(Error::NonCommuting { a, b });
            }
        }
    }
    // greedy generators with discrete logs in the span so far
    let mut gens: Vec<usize> = Vec::new();
    let mut logs: HashMap<usize, Vec<i64>> = HashMap::from([(0usize, Vec::new())]);
    let mut relations: Vec<Vec<i64>> = Vec::new();
    for &x in el {
        if logs.contains_key(&x) {
            continue;
        }
        let k = gens.len();
        // smallest m with x^m in the current span
        let mut m = 1i64;
        let mut p = x;
        while !logs.contains_key(&p) {
            p = g.mul(p, x);
            m += 1;
        }
        let mut rel: Vec<i64> = logs[&p].iter().map(|&c| -c).collect();
        rel.resize(k, 0);
        rel.push(m);
        relations.push(rel);
        gens.push(x);
        // extend logs by multiples of the new generator
        let old: Vec<(usize, Vec<i64>)> = logs.iter().map(|(a, b)| (*a, b.clone())).collect();
        let mut power = 0usize;
        for e in 0..m {
            for (y, l) in &old {
                let z = g.mul(*y, power);
                let mut lz = l.clone();
                lz.resize(k, 0);
                lz.push(e);
                logs.entry(z).or_insert(lz);
            }
            power = g.mul(power, x);
        }
    }
    let k = gens.len();
    if k == 0 {
        return Ok(AbelianDecomposition {
            invariant_factors: Vec::new(),
            generators: Vec::new(),
        });
    }
    let rows: Vec<Vec<i64>> = relations
        .into_iter()
        .map(|mut r| {
            r.resize(k, 0);
            r
        })
        .collect();
    let r = IntMatrix::from_rows(k, &rows)?;
    let snf = smith_normal_form(&r);
    let v_inv = inverse_unimodular(&snf.v)?;
    let mut factors = Vec::new();
    let mut out_gens = Vec::new();
    for (i, d) in snf.diagonal().iter().enumerate() {
        let d = d.to_u64().unwrap_or(0);
        if d <= 1 {
            continue;
        }
        let mut elt = 0usize;
        for (j, &gj) in gens.iter().enumerate() {
            let o = BigInt::from(g.element_order(gj));
            let e = ((v_inv.get(i, j) % &o) + &o) % &o;
            elt = g.mul(elt, g.pow(gj, e.to_u64().unwrap_or(0)));
        }
        factors.push(d);
        out_gens.push(elt);
    }
    Ok(AbelianDecomposition {
        invariant_factors: factors,
        generators: out_gens,
    })
}

/// All subgroups of index at most `k` (`k <= 4`), sorted by
/// `(order descending, elements)`.
///
/// Each such subgroup is a point stabilizer of a transitive action on at
/// most `k` points, so homomorphisms into `S_j` are enumerated by generator
/// images.
pub fn subgroups_of_index_at_most(g: &FiniteGroup, k: usize) -> Result<Vec<Subgroup>> {
    if k > 4 {
        return Err(Error::Unsupported(format!("index bound {k} above 4")));
    }
    let gens = g.reduced_generators();
    let tree = g.spanning_tree(&gens);
    let mut found: BTreeSet<(std::cmp::Reverse<usize>, Vec<usize>)> = BTreeSet::new();
    found.insert((std::cmp::Reverse(g.order()), (0..g.order()).collect()));
    for j in 2..=k.max(1) {
        if !g.order().is_multiple_of(j) {
            continue;
        }
        let perms = all_perms(j);
        let total = perms.len().pow(gens.len() as u32);
        let subs: Vec<Vec<usize>> = (0..total)
            .into_par_iter()
            .filter_map(|code| {
                let mut c = code;
                let images: Vec<&Vec<usize>> = (0..gens.len())
                    .map(|_| {
                        let p = &perms[c % perms.len()];
                        c /= perms.len();
                        p
                    })
                    .collect();
                stabilizer_if_transitive(g, &gens, &tree, &images, j)
            })
            .collect();
        for s in subs {
            found.insert((std::cmp::Reverse(s.len()), s));
        }
    }
    Ok(found
        .into_iter()
        .map(|(_, s)| Subgroup::new_unchecked(g, s))
        .collect())
}

fn stabilizer_if_transitive(
    g: &FiniteGroup,
    gens: &[usize],
    tree: &super::SpanningTree,
    images: &[&Vec<usize>],
    j: usize,
) -> Option<Vec<usize>> {
    // transitivity of the generated permutation group on j points
    let mut orbit = vec![false; j];
    orbit[0] = true;
    let mut stack = vec![0];
    while let Some(p) = stack.pop() {
        for im in images {
            let q = im[p];
            if !orbit[q] {
                orbit[q] = true;
                stack.push(q);
            }
        }
    }
    if orbit.iter().any(|&b| !b) {
        return None;
    }
    // rho(x s) = rho(x) ∘ rho(s): permutations act on the left
    let n = g.order();
    let mut rho: Vec<Vec<usize>> = vec![Vec::new(); n];
    rho[0] = (0..j).collect();
    for &y in &tree.order[1..] {
        let (x, s) = (tree.parent[y], tree.via[y]);
        rho[y] = (0..j).map(|p| rho[x][images[s][p]]).collect();
    }
    for x in 0..n {
        for (s, &gs) in gens.iter().enumerate() {
            let y = g.mul(x, gs);
            if (0..j).any(|p| rho[y][p] != rho[x][images[s][p]]) {
                return None;
            }
        }
    }
    Some((0..n).filter(|&x| rho[x][0] == 0).collect())
}

fn all_perms(j: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..j).collect();
    permute(&mut cur, 0, &mut out);
    out.sort();
    out
}

fn permute(cur: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == cur.len() {
        out.push(cur.clone());
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        permute(cur, k + 1, out);
        cur.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::super::{cyclic, direct_product, from_permutation_generators};
    use super::*;

    fn q8() -> FiniteGroup {
        // quaternion group as permutations of {±1, ±i, ±j, ±k}
        // order: 1, -1, i, -i, j, -j, k, -k
        let i = vec![2, 3, 1, 0, 6, 7, 5, 4];
        let j = vec![4, 5, 7, 6, 1, 0, 2, 3];
        from_permutation_generators(8, &[i, j]).unwrap()
    }

    #[test]
    fn bicyclic_counts() {
        let z4 = cyclic(4).unwrap();
        assert_eq!(bicyclic_subgroups(&z4, false).len(), 3);
        let k4 = direct_product(&cyclic(2).unwrap(), &cyclic(2).unwrap()).unwrap();
        let subs = bicyclic_subgroups(&k4, false);
        assert_eq!(subs.len(), 5);
        assert_eq!(subs.last().unwrap().order(), 4);
        let q = q8();
        assert_eq!(q.order(), 8);
        let subs = bicyclic_subgroups(&q, false);
        let orders: Vec<usize> = subs.iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 2, 4, 4, 4]);
    }

    #[test]
    fn conjugacy_reduction_in_s3() {
        let s3 = from_permutation_generators(3, &[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        assert_eq!(bicyclic_subgroups(&s3, false).len(), 5);
        assert_eq!(bicyclic_subgroups(&s3, true).len(), 3);
    }

    #[test]
    fn abelian_structures() {
        let z6 = cyclic(6).unwrap();
        let d = abelian_structure(&z6, &z6.whole()).unwrap();
        assert_eq!(d.invariant_factors, vec![6]);
        assert_eq!(z6.element_order(d.generators[0]), 6);
        let triv = abelian_structure(&z6, &z6.subgroup_generated(&[])).unwrap();
        assert!(triv.invariant_factors.is_empty());
        let g = direct_product(&cyclic(2).unwrap(), &cyclic(4).unwrap()).unwrap();
        let d = abelian_structure(&g, &g.whole()).unwrap();
        assert_eq!(d.invariant_factors, vec![2, 4]);
        let span = g.closure(&d.generators);
        assert_eq!(span.len(), 8);
    }

    #[test]
    fn non_abelian_structure_fails() {
        let s3 = from_permutation_generators(3, &[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        assert!(matches!(
            abelian_structure(&s3, &s3.whole()),
            Err(Error::NonCommuting { .. })
        ));
    }

    #[test]
    fn small_index_subgroups_of_s3() {
        let s3 = from_permutation_generators(3, &[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        let subs = subgroups_of_index_at_most(&s3, 4).unwrap();
        // S3, A3, three subgroups of order 2
        let orders: Vec<usize> = subs.iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![6, 3, 2, 2, 2]);
    }
}
