//! Finite groups as Cayley tables.
//!
//! Element 0 is always the identity. Products follow `mul(g, h) = g * h`;
//! for permutation groups this is composition `g ∘ h`, i.e. `h` acts first.

mod construct;
mod subgroups;

pub use construct::{
    central_extension_from_cocycle, cyclic, direct_product, from_cayley_table,
    from_permutation_generators, from_permutation_generators_with_limit, semidirect_product,
};
pub use subgroups::{
    abelian_structure, bicyclic_subgroups, subgroups_of_index_at_most, AbelianDecomposition,
};

use std::collections::VecDeque;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    generators: Vec<usize>,
    labels: Option<Vec<String>>,
    fingerprint: u64,
}

impl FiniteGroup {
    /// Assembles a group from a validated table. Callers guarantee the group
    /// axioms; generators are checked to generate.
    pub(crate) fn from_parts(
        order: usize,
        mul: Vec<u32>,
        generators: Vec<usize>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let mut inv = vec![0u32; order];
        for a in 0..order {
            let row = &mul[a * order..(a + 1) * order];
            let b = row
                .iter()
                .position(|&x| x == 0)
                .ok_or_else(|| Error::Validation(format!("element {a} has no inverse")))?;
            inv[a] = b as u32;
        }
        let fingerprint = fnv(&mul);
        let g = FiniteGroup {
            order,
            mul,
            inv,
            generators,
            labels,
            fingerprint,
        };
        if g.closure(&g.generators).len() != order {
            return Err(Error::Validation("generators do not generate the group".into()));
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of an element, or its index.
    pub fn label(&self, g: usize) -> String {
        self.labels
            .as_ref()
            .and_then(|l| l.get(g).cloned())
            .unwrap_or_else(|| g.to_string())
    }

    /// Identifies the Cayley table; subgroups remember it.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    pub fn pow(&self, g: usize, k: u64) -> usize {
        let (mut acc, mut base, mut k) = (0, g, k);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order).fold(1, |acc, g| {
            let o = self.element_order(g);
            acc / num_integer::gcd(acc, o) * o
        })
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// First non-commuting pair of generators, if any.
    pub fn non_commuting_pair(&self) -> Option<(usize, usize)> {
        let gens = &self.generators;
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[i + 1..] {
                if !self.commute(a, b) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_abelian(&self) -> bool {
        self.non_commuting_pair().is_none()
    }

    /// `g h g^-1`
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn center(&self) -> Subgroup {
        let elements = (0..self.order)
            .filter(|&z| self.generators.iter().all(|&g| self.commute(z, g)))
            .collect();
        Subgroup::new_unchecked(self, elements)
    }

    /// Closure of a set of elements under multiplication (sorted).
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        let mut out = vec![0usize];
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup {
        Subgroup::new_unchecked(self, self.closure(gens))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::new_unchecked(self, (0..self.order).collect())
    }

    /// A generating set without redundant entries: the given generators,
    /// each kept only if it enlarges the subgroup generated so far.
    pub fn reduced_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut size = 1;
        for &g in &self.generators {
            if g == 0 || gens.contains(&g) {
                continue;
            }
            let mut trial = gens.clone();
            trial.push(g);
            let s = self.closure(&trial).len();
            if s > size {
                gens = trial;
                size = s;
            }
        }
        gens
    }

    /// Breadth-first spanning tree of right multiplication by `gens`:
    /// for each element `h != e`, the pair `(parent, generator slot)` with
    /// `h = parent * gens[slot]`, plus the visit order.
    pub fn spanning_tree(&self, gens: &[usize]) -> SpanningTree {
        let n = self.order;
        let mut parent = vec![usize::MAX; n];
        let mut via = vec![usize::MAX; n];
        let mut order = vec![0usize];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for (k, &s) in gens.iter().enumerate() {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = x;
                    via[y] = k;
                    order.push(y);
                }
            }
        }
        SpanningTree { parent, via, order }
    }

    /// Quotient by a normal subgroup, with the projection. Cosets are
    /// numbered by their smallest element.
    pub fn quotient(&self, normal: &Subgroup) -> Result<(FiniteGroup, Vec<usize>)> {
        self.check_subgroup(normal)?;
        for &g in &self.generators {
            for &h in &normal.elements {
                if !normal.contains(self.conjugate(g, h)) {
                    return Err(Error::Validation(format!(
                        "subgroup is not normal: conjugating {h} by {g} leaves it"
                    )));
                }
            }
        }
        let mut proj = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if proj[g] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(g);
            for &h in &normal.elements {
                proj[self.mul(g, h)] = idx;
            }
        }
        let q = reps.len();
        let mut mul = Vec::with_capacity(q * q);
        for &a in &reps {
            for &b in &reps {
                mul.push(proj[self.mul(a, b)] as u32);
            }
        }
        let mut gens: Vec<usize> = self.generators.iter().map(|&g| proj[g]).collect();
        gens.dedup();
        let group = FiniteGroup::from_parts(q, mul, gens, None)?;
        Ok((group, proj))
    }

    /// Derived subgroup `[G, G]`.
    pub fn derived_subgroup(&self) -> Subgroup {
        let mut comms = Vec::new();
        for a in 0..self.order {
            for &b in &self.generators {
                let c = self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)));
                if c != 0 {
                    comms.push(c);
                }
            }
        }
        comms.sort_unstable();
        comms.dedup();
        // normal closure: the closure of a conjugation-stable set is normal
        let mut set = comms.clone();
        loop {
            let mut grew = false;
            let cur = self.closure(&set);
            for &h in &cur {
                for &g in &self.generators {
                    let c = self.conjugate(g, h);
                    if cur.binary_search(&c).is_err() {
                        set.push(c);
                        grew = true;
                    }
                }
            }
            if !grew {
                return Subgroup::new_unchecked(self, cur);
            }
        }
    }

    pub(crate) fn check_subgroup(&self, s: &Subgroup) -> Result<()> {
        if s.parent_fingerprint != self.fingerprint || s.parent_order != self.order {
            return Err(Error::Validation(
                "subgroup belongs to a different parent group".into(),
            ));
        }
        Ok(())
    }
}

/// See [`FiniteGroup::spanning_tree`].
#[derive(Clone, Debug)]
pub struct SpanningTree {
    pub parent: Vec<usize>,
    pub via: Vec<usize>,
    pub order: Vec<usize>,
}

fn fnv(data: &[u32]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &x in data {
        for b in x.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    h
}

/// A subgroup, stored as the sorted list of its elements in the parent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
    parent_order: usize,
    parent_fingerprint: u64,
}

impl Subgroup {
    fn new_unchecked(parent: &FiniteGroup, elements: Vec<usize>) -> Self {
        Subgroup {
            elements,
            parent_order: parent.order,
            parent_fingerprint: parent.fingerprint,
        }
    }

    /// Validates closure and builds the subgroup from any element list.
    pub fn new(parent: &FiniteGroup, elements: &[usize]) -> Result<Self> {
        let mut el: Vec<usize> = elements.to_vec();
        el.sort_unstable();
        el.dedup();
        if el.first() != Some(&0) {
            return Err(Error::Validation("subgroup must contain the identity".into()));
        }
        if let Some(&bad) = el.iter().find(|&&x| x >= parent.order) {
            return Err(Error::Validation(format!("element {bad} out of range")));
        }
        for &a in &el {
            if el.binary_search(&parent.inv(a)).is_err() {
                return Err(Error::Validation(format!("not closed under inverse at {a}")));
            }
            for &b in &el {
                if el.binary_search(&parent.mul(a, b)).is_err() {
                    return Err(Error::Validation(format!(
                        "not closed under multiplication at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(Self::new_unchecked(parent, el))
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    /// Position of a parent element in the subgroup's own numbering.
    pub fn index_of(&self, g: usize) -> Option<usize> {
        self.elements.binary_search(&g).ok()
    }

    pub fn is_abelian(&self, parent: &FiniteGroup) -> bool {
        self.elements
            .iter()
            .all(|&a| self.elements.iter().all(|&b| parent.commute(a, b)))
    }

    /// The subgroup as a group in its own right (element `i` is
    /// `elements[i]`), with the inclusion into the parent.
    pub fn to_group(&self, parent: &FiniteGroup) -> Result<(FiniteGroup, GroupHom)> {
        parent.check_subgroup(self)?;
        let n = self.elements.len();
        let mut mul = Vec::with_capacity(n * n);
        for &a in &self.elements {
            for &b in &self.elements {
                let idx = self.index_of(parent.mul(a, b)).ok_or_else(|| {
                    Error::Validation("element list is not a subgroup".into())
                })?;
                mul.push(idx as u32);
            }
        }
        // greedy generating set in increasing element order
        let mut gens = Vec::new();
        let mut reached = vec![0usize];
        for i in 1..n {
            if reached.binary_search(&i).is_ok() {
                continue;
            }
            gens.push(i);
            reached = closure_in_table(&mul, n, &gens);
            if reached.len() == n {
                break;
            }
        }
        let labels = parent
            .labels
            .as_ref()
            .map(|l| self.elements.iter().map(|&g| l[g].clone()).collect());
        let group = FiniteGroup::from_parts(n, mul, gens, labels)?;
        let hom = GroupHom {
            images: self.elements.clone(),
        };
        Ok((group, hom))
    }
}

pub(crate) fn closure_in_table(mul: &[u32], n: usize, gens: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut out = vec![0usize];
    let mut head = 0;
    while head < out.len() {
        let x = out[head];
        head += 1;
        for &s in gens {
            let y = mul[x * n + s] as usize;
            if !seen[y] {
                seen[y] = true;
                out.push(y);
            }
        }
    }
    out.sort_unstable();
    out
}

/// A homomorphism given by the image of every source element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub images: Vec<usize>,
}

impl GroupHom {
    /// Checks that the images respect multiplication.
    pub fn validate(&self, source: &FiniteGroup, target: &FiniteGroup) -> Result<()> {
        if self.images.len() != source.order() {
            return Err(Error::Dimension(format!(
                "{} images for a group of order {}",
                self.images.len(),
                source.order()
            )));
        }
        if self.images.iter().any(|&x| x >= target.order()) || self.images[0] != 0 {
            return Err(Error::Validation("images out of range or identity not fixed".into()));
        }
        for a in 0..source.order() {
            for &s in source.generators() {
                let lhs = self.images[source.mul(a, s)];
                let rhs = target.mul(self.images[a], self.images[s]);
                if lhs != rhs {
                    return Err(Error::Validation(format!(
                        "not a homomorphism at ({a}, {s})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, g: usize) -> usize {
        self.images[g]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_of_z4_by_z2() {
        let g = cyclic(4).unwrap();
        let h = g.subgroup_generated(&[2]);
        let (q, proj) = g.quotient(&h).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(proj[1], proj[3]);
    }

    #[test]
    fn derived_subgroup_of_s3() {
        let g = from_permutation_generators(3, &[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        assert_eq!(g.derived_subgroup().order(), 3);
        assert_eq!(g.center().order(), 1);
    }

    #[test]
    fn subgroup_to_group_round_trip() {
        let g = from_permutation_generators(4, &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]]).unwrap();
        let s = g.whole();
        let (h, inc) = s.to_group(&g).unwrap();
        assert_eq!(h.order(), 4);
        inc.validate(&h, &g).unwrap();
    }
}
