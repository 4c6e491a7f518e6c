//! Group constructors: permutation closure, Cayley tables, products and
//! central extensions.

use std::collections::HashMap;

use super::{closure_in_table, FiniteGroup};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Closure of permutations of `{0..degree-1}` under composition, with the
/// default order limit from the environment.
pub fn from_permutation_generators(degree: usize, perms: &[Vec<usize>]) -> Result<FiniteGroup> {
    from_permutation_generators_with_limit(degree, perms, Limits::from_env().max_group_order)
}

/// Elements are ordered breadth-first: layer by layer under right
/// multiplication by the generators, each new layer sorted lexicographically
/// by permutation image.
pub fn from_permutation_generators_with_limit(
    degree: usize,
    perms: &[Vec<usize>],
    max_order: usize,
) -> Result<FiniteGroup> {
    if degree == 0 {
        return Err(Error::Validation("degree must be positive".into()));
    }
    for (i, p) in perms.iter().enumerate() {
        let mut seen = vec![false; degree];
        let ok = p.len() == degree
            && p.iter().all(|&x| x < degree && !std::mem::replace(&mut seen[x], true));
        if !ok {
            return Err(Error::BadGenerator {
                generator: i,
                reason: format!("not a permutation of 0..{degree}"),
            });
        }
    }
    let compose = |g: &[usize], h: &[usize]| -> Vec<usize> { h.iter().map(|&x| g[x]).collect() };
    let id: Vec<usize> = (0..degree).collect();
    let mut elements: Vec<Vec<usize>> = vec![id.clone()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
    let mut layer = vec![0usize];
    while !layer.is_empty() {
        let mut fresh: Vec<Vec<usize>> = Vec::new();
        for &x in &layer {
            for p in perms {
                let y = compose(&elements[x], p);
                if !index.contains_key(&y) {
                    index.insert(y.clone(), usize::MAX);
                    fresh.push(y);
                }
            }
        }
        fresh.sort();
        layer.clear();
        for y in fresh {
            let k = elements.len();
            if k >= max_order {
                return Err(Error::SizeLimit {
                    what: "group order".into(),
                    actual: k + 1,
                    limit: max_order,
                });
            }
            index.insert(y.clone(), k);
            elements.push(y);
            layer.push(k);
        }
    }
    let n = elements.len();
    let mut mul = Vec::with_capacity(n * n);
    for a in &elements {
        for b in &elements {
            mul.push(index[&compose(a, b)] as u32);
        }
    }
    let generators: Vec<usize> = perms.iter().map(|p| index[p]).collect();
    let labels = elements.iter().map(|p| cycle_notation(p)).collect();
    FiniteGroup::from_parts(n, mul, generators, Some(labels))
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cyc = vec![start];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cyc.push(x);
            x = p[x];
        }
        let parts: Vec<String> = cyc.iter().map(|c| c.to_string()).collect();
        out.push('(');
        out.push_str(&parts.join(","));
        out.push(')');
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

/// Validates a Cayley table. Element 0 must be the identity.
///
/// Associativity is checked with Light's test against a generating set
/// (exhaustive in effect: the elements `z` with `(xy)z = x(yz)` for all
/// `x, y` form a closed set).
pub fn from_cayley_table(table: &[Vec<usize>]) -> Result<FiniteGroup> {
    let n = table.len();
    if n == 0 {
        return Err(Error::Validation("empty table".into()));
    }
    Limits::check("group order", n, Limits::from_env().max_group_order)?;
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Validation(format!("row {i} has length {}", row.len())));
        }
        if let Some(&x) = row.iter().find(|&&x| x >= n) {
            return Err(Error::Validation(format!("entry {x} in row {i} out of range")));
        }
    }
    let identity = (0..n).find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x));
    match identity {
        None => return Err(Error::Validation("table has no identity element".into())),
        Some(e) if e != 0 => {
            return Err(Error::Validation(format!(
                "identity is element {e}; element 0 must be the identity"
            )))
        }
        _ => {}
    }
    for a in 0..n {
        let right = (0..n).find(|&b| table[a][b] == 0);
        match right {
            Some(b) if table[b][a] == 0 => {}
            _ => return Err(Error::Validation(format!("element {a} has no two-sided inverse"))),
        }
    }
    for i in 0..n {
        let mut seen = vec![false; n];
        for j in 0..n {
            if std::mem::replace(&mut seen[table[i][j]], true) {
                return Err(Error::Validation(format!("row {i} repeats an entry")));
            }
        }
    }
    let mul: Vec<u32> = table.iter().flatten().map(|&x| x as u32).collect();
    // product-generating set, greedily in index order
    let mut gens = Vec::new();
    let mut reached = vec![0usize];
    for g in 1..n {
        if reached.binary_search(&g).is_ok() {
            continue;
        }
        gens.push(g);
        reached = closure_in_table(&mul, n, &gens);
        if reached.len() == n {
            break;
        }
    }
    for &s in &gens {
        for x in 0..n {
            for y in 0..n {
                if table[table[x][y]][s] != table[x][table[y][s]] {
                    return Err(Error::NotAssociative { a: x, b: y, c: s });
                }
            }
        }
    }
    FiniteGroup::from_parts(n, mul, gens, None)
}

/// Cyclic group `Z/n` with element `k` the residue `k`.
pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::Validation("cyclic group of order 0".into()));
    }
    let mul = (0..n)
        .flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u32))
        .collect();
    let gens = if n > 1 { vec![1] } else { vec![] };
    FiniteGroup::from_parts(n, mul, gens, None)
}

/// `A x B` with element `(a, b)` at index `a * |B| + b`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
    let action = vec![a.generators().to_vec(); b.generators().len()];
    semidirect_product(a, b, &action)
}

/// `A ⋊ B` where generator `i` of `B` acts on `A` by the automorphism
/// sending `A`'s generators to `action[i]`.
///
/// Elements are pairs `(a, b)` at index `a * |B| + b`, multiplied as
/// `(a1, b1)(a2, b2) = (a1 φ_{b1}(a2), b1 b2)`.
pub fn semidirect_product(
    a: &FiniteGroup,
    b: &FiniteGroup,
    action: &[Vec<usize>],
) -> Result<FiniteGroup> {
    let (na, nb) = (a.order(), b.order());
    Limits::check("group order", na * nb, Limits::from_env().max_group_order)?;
    if action.len() != b.generators().len() {
        return Err(Error::Dimension(format!(
            "{} automorphisms for {} acting generators",
            action.len(),
            b.generators().len()
        )));
    }
    let mut gen_auts = Vec::with_capacity(action.len());
    for (i, imgs) in action.iter().enumerate() {
        gen_auts.push(extend_to_automorphism(a, imgs).map_err(|e| Error::BadGenerator {
            generator: i,
            reason: e.to_string(),
        })?);
    }
    // φ_{x s} = φ_x ∘ φ_s along a spanning tree, then checked on every edge
    let tree = b.spanning_tree(b.generators());
    let mut phi: Vec<Vec<usize>> = vec![Vec::new(); nb];
    phi[0] = (0..na).collect();
    for &y in &tree.order[1..] {
        let (x, k) = (tree.parent[y], tree.via[y]);
        phi[y] = (0..na).map(|v| phi[x][gen_auts[k][v]]).collect();
    }
    for x in 0..nb {
        for (k, &s) in b.generators().iter().enumerate() {
            let y = b.mul(x, s);
            if (0..na).any(|v| phi[y][v] != phi[x][gen_auts[k][v]]) {
                return Err(Error::Validation(format!(
                    "action is not a homomorphism from the acting group (at element {x}, generator {k})"
                )));
            }
        }
    }
    let mut mul = Vec::with_capacity(na * nb * na * nb);
    for a1 in 0..na {
        for b1 in 0..nb {
            for a2 in 0..na {
                for b2 in 0..nb {
                    let aa = a.mul(a1, phi[b1][a2]);
                    mul.push((aa * nb + b.mul(b1, b2)) as u32);
                }
            }
        }
    }
    let mut gens: Vec<usize> = a.generators().iter().map(|&g| g * nb).collect();
    gens.extend(b.generators().iter().copied());
    let labels = match (a.labels(), b.labels()) {
        (None, None) => None,
        _ => Some(
            (0..na * nb)
                .map(|i| format!("({},{})", a.label(i / nb), b.label(i % nb)))
                .collect(),
        ),
    };
    FiniteGroup::from_parts(na * nb, mul, gens, labels)
}

/// Extends generator images to an automorphism of `a`, as a permutation of
/// its elements.
fn extend_to_automorphism(a: &FiniteGroup, images: &[usize]) -> Result<Vec<usize>> {
    let gens = a.generators();
    if images.len() != gens.len() {
        return Err(Error::Dimension(format!(
            "{} images for {} generators",
            images.len(),
            gens.len()
        )));
    }
    if let Some(&bad) = images.iter().find(|&&x| x >= a.order()) {
        return Err(Error::Validation(format!("image {bad} out of range")));
    }
    let tree = a.spanning_tree(gens);
    let mut f = vec![0usize; a.order()];
    for &y in &tree.order[1..] {
        f[y] = a.mul(f[tree.parent[y]], images[tree.via[y]]);
    }
    for x in 0..a.order() {
        for (k, &s) in gens.iter().enumerate() {
            if f[a.mul(x, s)] != a.mul(f[x], images[k]) {
                return Err(Error::Validation("images do not define a homomorphism".into()));
            }
        }
    }
    let mut seen = vec![false; a.order()];
    for &y in &f {
        if std::mem::replace(&mut seen[y], true) {
            return Err(Error::Validation("images do not define a bijection".into()));
        }
    }
    Ok(f)
}

/// Central extension `1 -> Z/n -> E -> G -> 1` twisted by a normalized
/// `Z/n`-valued 2-cocycle `c` (a full `|G| x |G|` table).
///
/// Element `(z, g)` sits at index `z * |G| + g` and
/// `(z1, g1)(z2, g2) = (z1 + z2 + c(g1, g2), g1 g2)`.
pub fn central_extension_from_cocycle(
    g: &FiniteGroup,
    n: usize,
    c: &[Vec<u64>],
) -> Result<FiniteGroup> {
    let m = g.order();
    if n == 0 {
        return Err(Error::Validation("extension by Z/0".into()));
    }
    Limits::check("group order", n * m, Limits::from_env().max_group_order)?;
    if c.len() != m || c.iter().any(|r| r.len() != m) {
        return Err(Error::Dimension(format!("cocycle table must be {m}x{m}")));
    }
    let nn = n as u64;
    for x in 0..m {
        if !c[0][x].is_multiple_of(nn) || !c[x][0].is_multiple_of(nn) {
            return Err(Error::Validation(format!(
                "cocycle is not normalized at element {x}"
            )));
        }
    }
    for a in 0..m {
        for b in 0..m {
            let ab = g.mul(a, b);
            for d in 0..m {
                let lhs = (c[a][b] + c[ab][d]) % nn;
                let rhs = (c[b][d] + c[a][g.mul(b, d)]) % nn;
                if lhs != rhs {
                    return Err(Error::CocycleIdentity { g: a, h: b, k: d });
                }
            }
        }
    }
    let total = n * m;
    let mut mul = Vec::with_capacity(total * total);
    for z1 in 0..n {
        for g1 in 0..m {
            for z2 in 0..n {
                for g2 in 0..m {
                    let z = (z1 as u64 + z2 as u64 + c[g1][g2]) % nn;
                    mul.push((z as usize * m + g.mul(g1, g2)) as u32);
                }
            }
        }
    }
    let mut gens: Vec<usize> = g.generators().to_vec();
    if n > 1 {
        gens.push(m);
    }
    FiniteGroup::from_parts(total, mul, gens, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_from_permutations() {
        let g = from_permutation_generators(3, &[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.label(0), "()");
    }

    #[test]
    fn klein_from_permutations() {
        let g = from_permutation_generators(4, &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]]).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.is_abelian());
    }

    #[test]
    fn nonstandard_a4_in_s6() {
        let g = from_permutation_generators(
            6,
            &[vec![2, 3, 4, 5, 0, 1], vec![1, 0, 3, 2, 4, 5], vec![1, 0, 2, 3, 5, 4]],
        )
        .unwrap();
        assert_eq!(g.order(), 12);
    }

    #[test]
    fn closure_respects_limit() {
        let err = from_permutation_generators_with_limit(
            5,
            &[vec![1, 0, 2, 3, 4], vec![1, 2, 3, 4, 0]],
            100,
        )
        .unwrap_err();
        assert!(err.is_size_limit());
    }

    #[test]
    fn rejects_non_permutation() {
        let err = from_permutation_generators(3, &[vec![0, 0, 1]]).unwrap_err();
        assert!(matches!(err, Error::BadGenerator { generator: 0, .. }));
    }

    #[test]
    fn cayley_tables() {
        assert_eq!(from_cayley_table(&[vec![0]]).unwrap().order(), 1);
        let z3 = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        assert_eq!(from_cayley_table(&z3).unwrap().order(), 3);
    }

    #[test]
    fn non_associative_table_names_a_triple() {
        // a Latin square with identity that is not a group (order-5 loop)
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        match from_cayley_table(&t) {
            Err(Error::NotAssociative { a, b, c }) => {
                assert_ne!(t[t[a][b]][c], t[a][t[b][c]]);
            }
            other => panic!("expected associativity failure, got {other:?}"),
        }
    }

    #[test]
    fn dihedral_of_order_six_has_three_involutions() {
        let z3 = cyclic(3).unwrap();
        let z2 = cyclic(2).unwrap();
        let g = semidirect_product(&z3, &z2, &[vec![2]]).unwrap();
        assert_eq!(g.order(), 6);
        let inv = (0..6).filter(|&x| g.element_order(x) == 2).count();
        assert_eq!(inv, 3);
    }

    #[test]
    fn z5_by_z4_has_trivial_center() {
        let g = semidirect_product(&cyclic(5).unwrap(), &cyclic(4).unwrap(), &[vec![2]]).unwrap();
        assert_eq!(g.order(), 20);
        assert_eq!(g.center().order(), 1);
    }

    #[test]
    fn bad_action_is_rejected() {
        // x -> 2x is not an automorphism of Z/4
        let err = semidirect_product(&cyclic(4).unwrap(), &cyclic(2).unwrap(), &[vec![2]]);
        assert!(err.is_err());
        // inversion on Z/3 by a generator of Z/3 is not a homomorphism Z/3 -> Aut
        let err = semidirect_product(&cyclic(3).unwrap(), &cyclic(3).unwrap(), &[vec![2]]);
        assert!(err.is_err());
    }

    #[test]
    fn central_extensions_of_klein() {
        let k4 = direct_product(&cyclic(2).unwrap(), &cyclic(2).unwrap()).unwrap();
        let zero = vec![vec![0u64; 4]; 4];
        let e = central_extension_from_cocycle(&k4, 2, &zero).unwrap();
        assert_eq!(e.order(), 8);
        assert!(e.is_abelian());
        assert_eq!(e.exponent(), 2);
        let one = central_extension_from_cocycle(&k4, 1, &zero).unwrap();
        assert_eq!(one.table(), k4.table());
    }
}
