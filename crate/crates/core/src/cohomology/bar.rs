//! Normalized bar cochains in parameter form.
//!
//! A normalized 2-cocycle is determined by its values `c(g, s)` for `g != e`
//! and `s` in a reduced generating set `S`: the identity
//! `c(g, hs) = c(g, h) + c(gh, s) - g.c(h, s)` extends them along a spanning
//! tree, and the same identity on non-tree edges cuts out the cocycles.
//! A 1-cocycle is determined by `f(s)` for `s` in `S`.
//!
//! Coefficients are handled modulo `n` in coordinates `y_i mod d_i` with
//! `d_i | n`; an equation in coordinate `i` is scaled by `n / d_i`.

use rayon::prelude::*;

use super::module::{GModule, ModuleKind};
use crate::groups::{FiniteGroup, SpanningTree};
use crate::linalg::modular::{mulmod, SpanBuilder};

/// Coefficients reduced modulo `n`.
#[derive(Clone, Debug)]
pub(crate) struct Coeffs {
    pub n: u64,
    pub k: usize,
    pub d: Vec<u64>,
    /// Row-major `k x k` action matrix of every element, reduced mod `n`.
    pub act: Vec<Vec<u64>>,
}

impl Coeffs {
    /// `Q/Z` is realized as `(1/n)Z/Z`; a lattice becomes `M/nM`.
    pub fn new(m: &GModule, n: u64) -> Self {
        let k = m.rank();
        let d = match m.kind() {
            ModuleKind::TrivialQZ => vec![n],
            ModuleKind::Finite(f) => f.clone(),
            ModuleKind::Lattice(_) => vec![n; k],
        };
        let order = m.group_order();
        let act = (0..order)
            .map(|g| {
                m.action(g)
                    .iter()
                    .flatten()
                    .map(|&x| x.rem_euclid(n as i64) as u64)
                    .collect()
            })
            .collect();
        Coeffs { n, k, d, act }
    }

    #[inline]
    pub fn rho(&self, g: usize, i: usize, j: usize) -> u64 {
        self.act[g][i * self.k + j]
    }

    /// `n / d_i`.
    pub fn scale(&self, i: usize) -> u64 {
        self.n / self.d[i]
    }

    pub fn apply(&self, g: usize, v: &[u64]) -> Vec<u64> {
        (0..self.k)
            .map(|i| {
                (0..self.k).fold(0, |acc, j| (acc + mulmod(self.rho(g, i, j), v[j], self.n)) % self.n)
            })
            .collect()
    }
}

/// Generating set, spanning tree and parameter indexing for one group.
#[derive(Clone, Debug)]
pub(crate) struct Bar<'a> {
    pub g: &'a FiniteGroup,
    pub gens: Vec<usize>,
    pub tree: SpanningTree,
}

impl<'a> Bar<'a> {
    pub fn new(g: &'a FiniteGroup) -> Self {
        let gens = g.reduced_generators();
        let tree = g.spanning_tree(&gens);
        Bar { g, gens, tree }
    }

    pub fn order(&self) -> usize {
        self.g.order()
    }

    /// Number of 2-cochain parameters with `k` coordinates.
    pub fn p2(&self, k: usize) -> usize {
        (self.order() - 1) * self.gens.len() * k
    }

    pub fn p1(&self, k: usize) -> usize {
        self.gens.len() * k
    }

    #[inline]
    pub fn idx2(&self, x: usize, s: usize, i: usize, k: usize) -> usize {
        ((x - 1) * self.gens.len() + s) * k + i
    }

    fn is_tree_edge(&self, x: usize, s: usize) -> bool {
        let y = self.g.mul(x, self.gens[s]);
        y != 0 && self.tree.parent[y] == x && self.tree.via[y] == s
    }

    /// `v += E(gx, s) - rho(g) E(x, s)` on a `k x P` form.
    fn step2(&self, c: &Coeffs, v: &mut [u64], g: usize, x: usize, s: usize) {
        let (k, n) = (c.k, c.n);
        let p = self.p2(k);
        let gx = self.g.mul(g, x);
        if gx != 0 {
            for i in 0..k {
                let at = i * p + self.idx2(gx, s, i, k);
                v[at] = (v[at] + 1) % n;
            }
        }
        if x != 0 {
            for i in 0..k {
                for j in 0..k {
                    let r = c.rho(g, i, j);
                    if r != 0 {
                        let at = i * p + self.idx2(x, s, j, k);
                        v[at] = (v[at] + n - r) % n;
                    }
                }
            }
        }
    }

    /// Constraint rows cutting out normalized 2-cocycles among parameters.
    fn h2_rows_for(&self, c: &Coeffs, g: usize) -> Vec<Vec<u64>> {
        let (k, n) = (c.k, c.n);
        let p = self.p2(k);
        let order = self.order();
        let mut forms: Vec<Vec<u64>> = vec![Vec::new(); order];
        forms[0] = vec![0; k * p];
        for &y in &self.tree.order[1..] {
            let (x, s) = (self.tree.parent[y], self.tree.via[y]);
            let mut v = forms[x].clone();
            self.step2(c, &mut v, g, x, s);
            forms[y] = v;
        }
        let mut rows = Vec::new();
        for x in 0..order {
            for s in 0..self.gens.len() {
                if self.is_tree_edge(x, s) {
                    continue;
                }
                let y = self.g.mul(x, self.gens[s]);
                let mut v = forms[x].clone();
                self.step2(c, &mut v, g, x, s);
                for i in 0..k {
                    let sc = c.scale(i);
                    let row: Vec<u64> = (0..p)
                        .map(|col| {
                            let a = (forms[y][i * p + col] + n - v[i * p + col]) % n;
                            mulmod(a, sc, n)
                        })
                        .collect();
                    if row.iter().any(|&a| a != 0) {
                        rows.push(row);
                    }
                }
            }
        }
        rows
    }

    /// Howell basis of the constraint span for 2-cocycles.
    pub fn h2_constraint_basis(&self, c: &Coeffs) -> Vec<Vec<u64>> {
        let p = self.p2(c.k);
        let parts: Vec<Vec<Vec<u64>>> = (1..self.order())
            .into_par_iter()
            .map(|g| {
                let mut sb = SpanBuilder::new(c.n, p);
                for r in self.h2_rows_for(c, g) {
                    sb.push(r);
                }
                sb.finish()
            })
            .collect();
        let mut sb = SpanBuilder::new(c.n, p);
        for part in parts {
            for r in part {
                sb.push(r);
            }
        }
        sb.finish()
    }

    /// Parameter vectors of the coboundaries `delta(t -> e_i)`.
    pub fn coboundaries2(&self, c: &Coeffs) -> Vec<Vec<u64>> {
        let (k, n) = (c.k, c.n);
        let p = self.p2(k);
        let mut out = Vec::new();
        for t in 1..self.order() {
            for i in 0..k {
                let mut v = vec![0u64; p];
                for x in 1..self.order() {
                    for (s, &gs) in self.gens.iter().enumerate() {
                        if gs == t {
                            for j in 0..k {
                                let at = self.idx2(x, s, j, k);
                                v[at] = (v[at] + c.rho(x, j, i)) % n;
                            }
                        }
                        if self.g.mul(x, gs) == t {
                            let at = self.idx2(x, s, i, k);
                            v[at] = (v[at] + n - 1) % n;
                        }
                        if x == t {
                            let at = self.idx2(x, s, i, k);
                            v[at] = (v[at] + 1) % n;
                        }
                    }
                }
                reduce_coords(&mut v, c, k);
                if v.iter().any(|&a| a != 0) {
                    out.push(v);
                }
            }
        }
        out
    }

    /// Vectors `d_i e_j` that vanish in `Z/d_i` coordinates.
    pub fn zero_relations(&self, c: &Coeffs, params: usize) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        for at in 0..params {
            let i = at % c.k;
            if !c.d[i].is_multiple_of(c.n) {
                let mut v = vec![0u64; params];
                v[at] = c.d[i];
                out.push(v);
            }
        }
        out
    }

    /// Full table `c(x, y)` (flattened `(x * order + y) * k + i`) from
    /// parameters, values reduced mod `n`.
    pub fn params_to_table2(&self, c: &Coeffs, params: &[u64]) -> Vec<u64> {
        let (k, n) = (c.k, c.n);
        let order = self.order();
        let mut t = vec![0u64; order * order * k];
        let val = |x: usize, s: usize, i: usize| -> u64 {
            if x == 0 {
                0
            } else {
                params[self.idx2(x, s, i, k)]
            }
        };
        for g in 1..order {
            for &y in &self.tree.order[1..] {
                let (x, s) = (self.tree.parent[y], self.tree.via[y]);
                let gx = self.g.mul(g, x);
                let cx: Vec<u64> = (0..k).map(|j| val(x, s, j)).collect();
                let act = c.apply(g, &cx);
                for i in 0..k {
                    let prev = t[(g * order + x) * k + i];
                    let v = (prev + val(gx, s, i) + n - act[i]) % n;
                    t[(g * order + y) * k + i] = v;
                }
            }
        }
        t
    }

    /// Parameters of a full 2-cochain table.
    pub fn table_to_params2(&self, k: usize, table: &[i64]) -> Vec<i64> {
        let order = self.order();
        let mut out = vec![0i64; self.p2(k)];
        for x in 1..order {
            for (s, &gs) in self.gens.iter().enumerate() {
                for i in 0..k {
                    out[self.idx2(x, s, i, k)] = table[(x * order + gs) * k + i];
                }
            }
        }
        out
    }

    // ---- degree one ----

    /// Linear forms `F(x)` (`k x P1`, row-major) with `f(x) = F(x) params`.
    fn forms1(&self, c: &Coeffs) -> Vec<Vec<u64>> {
        let (k, n) = (c.k, c.n);
        let p = self.p1(k);
        let mut forms: Vec<Vec<u64>> = vec![Vec::new(); self.order()];
        forms[0] = vec![0; k * p];
        for &y in &self.tree.order[1..] {
            let (x, s) = (self.tree.parent[y], self.tree.via[y]);
            let mut v = forms[x].clone();
            add_rho_block(c, &mut v, x, s, p, n);
            forms[y] = v;
        }
        forms
    }

    /// Constraint rows for 1-cocycles: `f(xs) = f(x) + x.f(s)`.
    pub fn h1_rows(&self, c: &Coeffs) -> Vec<Vec<u64>> {
        let (k, n) = (c.k, c.n);
        let p = self.p1(k);
        let forms = self.forms1(c);
        let mut rows = Vec::new();
        for x in 0..self.order() {
            for s in 0..self.gens.len() {
                if self.is_tree_edge(x, s) {
                    continue;
                }
                let y = self.g.mul(x, self.gens[s]);
                let mut v = forms[x].clone();
                add_rho_block(c, &mut v, x, s, p, n);
                for i in 0..k {
                    let sc = c.scale(i);
                    let row: Vec<u64> = (0..p)
                        .map(|col| mulmod((forms[y][i * p + col] + n - v[i * p + col]) % n, sc, n))
                        .collect();
                    if row.iter().any(|&a| a != 0) {
                        rows.push(row);
                    }
                }
            }
        }
        rows
    }

    /// Principal cocycles `s -> (rho(s) - 1) e_i`.
    pub fn coboundaries1(&self, c: &Coeffs) -> Vec<Vec<u64>> {
        let (k, n) = (c.k, c.n);
        let p = self.p1(k);
        let mut out = Vec::new();
        for i in 0..k {
            let mut v = vec![0u64; p];
            for (s, &gs) in self.gens.iter().enumerate() {
                for j in 0..k {
                    let diag = u64::from(i == j);
                    v[s * k + j] = (c.rho(gs, j, i) + n - diag) % n;
                }
            }
            reduce_coords(&mut v, c, k);
            if v.iter().any(|&a| a != 0) {
                out.push(v);
            }
        }
        out
    }

    /// Full table `f(x)` (flattened `x * k + i`) from parameters, mod `n`.
    pub fn params_to_table1(&self, c: &Coeffs, params: &[u64]) -> Vec<u64> {
        let (k, n) = (c.k, c.n);
        let mut t = vec![0u64; self.order() * k];
        for &y in &self.tree.order[1..] {
            let (x, s) = (self.tree.parent[y], self.tree.via[y]);
            let fs = &params[s * k..(s + 1) * k];
            let a = c.apply(x, fs);
            for i in 0..k {
                t[y * k + i] = (t[x * k + i] + a[i]) % n;
            }
        }
        t
    }
}

/// `v += rho(x) E(s)` on a `k x P1` form.
fn add_rho_block(c: &Coeffs, v: &mut [u64], x: usize, s: usize, p: usize, n: u64) {
    let k = c.k;
    for i in 0..k {
        for j in 0..k {
            let r = c.rho(x, i, j);
            if r != 0 {
                let at = i * p + s * k + j;
                v[at] = (v[at] + r) % n;
            }
        }
    }
}

fn reduce_coords(v: &mut [u64], c: &Coeffs, k: usize) {
    for (at, a) in v.iter_mut().enumerate() {
        *a %= c.d[at % k];
    }
}
