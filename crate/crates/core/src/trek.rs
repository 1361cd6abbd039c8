//! Treks, restricted trek systems and their signed monomial sums.
//!
//! A trek from `a` to `b` is a left directed path from its top down to `a`
//! together with a right directed path from its top down to `b`; the top is
//! either one vertex shared by both paths or a bidirected edge joining the
//! first vertices of the two paths. Sides are vertex sets, so a trek may
//! visit a vertex once on each side.

use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::graph::MixedGraph;
use crate::poly::{Monomial, Polynomial, Variable};

/// Vertex sets are packed into `u64` masks during enumeration.
pub const TREK_VERTEX_LIMIT: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TopKind {
    /// `i_1 = j_1`.
    Common,
    /// `i_1 ↔ j_1`.
    Bidirected,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Trek {
    /// Sink to top: `i_ℓ, …, i_1`.
    pub left: Vec<usize>,
    /// Top to sink: `j_1, …, j_r`.
    pub right: Vec<usize>,
    pub top: TopKind,
}

impl Trek {
    pub fn source(&self) -> usize {
        self.left[0]
    }

    pub fn target(&self) -> usize {
        *self.right.last().expect("nonempty right side")
    }

    pub fn left_side(&self) -> Vec<usize> {
        sorted(&self.left)
    }

    pub fn right_side(&self) -> Vec<usize> {
        sorted(&self.right)
    }

    /// `ω_top · Π λ` over the edges of both sides.
    pub fn monomial(&self) -> Monomial {
        let i1 = *self.left.last().expect("nonempty left side");
        let j1 = self.right[0];
        let mut factors = vec![(Variable::omega(i1, j1), 1)];
        for w in self.left.windows(2) {
            factors.push((Variable::lambda(w[1], w[0]), 1));
        }
        for w in self.right.windows(2) {
            factors.push((Variable::lambda(w[0], w[1]), 1));
        }
        Monomial::from_factors(factors)
    }

    pub fn is_restricted(&self, p: &[usize], q: &[usize]) -> bool {
        self.left.iter().all(|v| p.contains(v)) && self.right.iter().all(|v| q.contains(v))
    }

    /// Checks the structural invariants against `g`.
    pub fn is_valid(&self, g: &MixedGraph) -> bool {
        if self.left.is_empty() || self.right.is_empty() {
            return false;
        }
        let i1 = *self.left.last().unwrap();
        let j1 = self.right[0];
        let top_ok = match self.top {
            TopKind::Common => i1 == j1,
            TopKind::Bidirected => g.has_bidirected(i1, j1),
        };
        top_ok
            && self.left.windows(2).all(|w| g.has_directed(w[1], w[0]))
            && self.right.windows(2).all(|w| g.has_directed(w[0], w[1]))
    }

    pub fn render(&self, g: &MixedGraph) -> String {
        let l: Vec<&str> = self.left.iter().map(|&v| g.label(v)).collect();
        let r: Vec<&str> = self.right.iter().map(|&v| g.label(v)).collect();
        match self.top {
            TopKind::Common => {
                let mut s = l.join(" <- ");
                for v in &r[1..] {
                    s.push_str(" -> ");
                    s.push_str(v);
                }
                s
            }
            TopKind::Bidirected => format!("{} <-> {}", l.join(" <- "), r.join(" -> ")),
        }
    }
}

fn sorted(v: &[usize]) -> Vec<usize> {
    let mut s = v.to_vec();
    s.sort_unstable();
    s.dedup();
    s
}

/// Treks pairing `sources[k]` with `targets[perm[k]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrekSystem {
    pub treks: Vec<Trek>,
    pub sources: Vec<usize>,
    pub targets: Vec<usize>,
    pub perm: Vec<usize>,
}

impl TrekSystem {
    /// Sign of the induced bijection `sources → targets`.
    pub fn sign(&self) -> i32 {
        permutation_sign(&self.perm)
    }

    /// Recomputed from the treks on every call.
    pub fn has_sided_intersection(&self) -> bool {
        for (x, s) in self.treks.iter().enumerate() {
            for t in &self.treks[x + 1..] {
                if s.left.iter().any(|v| t.left.contains(v)) || s.right.iter().any(|v| t.right.contains(v)) {
                    return true;
                }
            }
        }
        false
    }

    pub fn monomial(&self) -> Monomial {
        self.treks.iter().fold(Monomial::one(), |m, t| m.mul(&t.monomial()))
    }
}

pub fn permutation_sign(perm: &[usize]) -> i32 {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn mask_of(set: &[usize]) -> u64 {
    set.iter().fold(0u64, |m, &v| m | (1u64 << v))
}

fn check_size(g: &MixedGraph) -> Result<()> {
    if g.len() > TREK_VERTEX_LIMIT {
        return Err(Error::TooLarge {
            what: "trek enumeration",
            size: g.len(),
            limit: TREK_VERTEX_LIMIT,
        });
    }
    Ok(())
}

/// All directed paths starting at `start` whose vertices lie in `allowed`.
fn paths_from(g: &MixedGraph, start: usize, allowed: u64) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if allowed & (1 << start) == 0 {
        return out;
    }
    let mut path = vec![start];
    fn rec(g: &MixedGraph, allowed: u64, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(path.clone());
        let last = *path.last().unwrap();
        for &c in g.children(last) {
            if allowed & (1 << c) != 0 && !path.contains(&c) {
                path.push(c);
                rec(g, allowed, path, out);
                path.pop();
            }
        }
    }
    rec(g, allowed, &mut path, &mut out);
    out
}

/// Every `(P, Q)`-restricted trek of an acyclic graph, keyed by `(source, target)`.
pub fn restricted_treks(g: &MixedGraph, p: &[usize], q: &[usize]) -> Result<BTreeMap<(usize, usize), Vec<Trek>>> {
    g.require_acyclic()?;
    check_size(g)?;
    let (pm, qm) = (mask_of(p), mask_of(q));
    let left_paths: Vec<Vec<Vec<usize>>> = (0..g.len()).map(|v| paths_from(g, v, pm)).collect();
    let right_paths: Vec<Vec<Vec<usize>>> = (0..g.len()).map(|v| paths_from(g, v, qm)).collect();
    let mut tops: Vec<(usize, usize, TopKind)> = (0..g.len()).map(|v| (v, v, TopKind::Common)).collect();
    for (i, j) in g.bidirected_edges() {
        tops.push((i, j, TopKind::Bidirected));
        tops.push((j, i, TopKind::Bidirected));
    }
    let mut out: BTreeMap<(usize, usize), Vec<Trek>> = BTreeMap::new();
    for (i1, j1, kind) in tops {
        for lp in &left_paths[i1] {
            for rp in &right_paths[j1] {
                let mut left = lp.clone();
                left.reverse();
                let t = Trek {
                    left,
                    right: rp.clone(),
                    top: kind,
                };
                out.entry((t.source(), t.target())).or_default().push(t);
            }
        }
    }
    for v in out.values_mut() {
        v.sort();
    }
    Ok(out)
}

/// All `(P, Q)`-restricted treks from `a` to `b`.
pub fn treks_between(g: &MixedGraph, a: usize, b: usize, p: &[usize], q: &[usize]) -> Result<Vec<Trek>> {
    Ok(restricted_treks(g, p, q)?.remove(&(a, b)).unwrap_or_default())
}

/// All systems of `(P, Q)`-restricted treks from `A` to `B` without sided
/// intersection. `A` and `B` are taken in the given order, which fixes signs.
pub fn enumerate_trek_systems(
    g: &MixedGraph,
    a: &[usize],
    b: &[usize],
    p: &[usize],
    q: &[usize],
) -> Result<Vec<TrekSystem>> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch(format!("|A| = {} but |B| = {}", a.len(), b.len())));
    }
    let all = restricted_treks(g, p, q)?;
    let mut out = Vec::new();
    let mut chosen: Vec<Trek> = Vec::new();
    let mut perm: Vec<usize> = Vec::new();
    fn rec(
        all: &BTreeMap<(usize, usize), Vec<Trek>>,
        a: &[usize],
        b: &[usize],
        chosen: &mut Vec<Trek>,
        perm: &mut Vec<usize>,
        out: &mut Vec<TrekSystem>,
    ) {
        let k = chosen.len();
        if k == a.len() {
            out.push(TrekSystem {
                treks: chosen.clone(),
                sources: a.to_vec(),
                targets: b.to_vec(),
                perm: perm.clone(),
            });
            return;
        }
        for c in 0..b.len() {
            if perm.contains(&c) {
                continue;
            }
            let Some(ts) = all.get(&(a[k], b[c])) else { continue };
            for t in ts {
                let clash = chosen
                    .iter()
                    .any(|s| s.left.iter().any(|v| t.left.contains(v)) || s.right.iter().any(|v| t.right.contains(v)));
                if clash {
                    continue;
                }
                chosen.push(t.clone());
                perm.push(c);
                rec(all, a, b, chosen, perm, out);
                chosen.pop();
                perm.pop();
            }
        }
    }
    rec(&all, a, b, &mut chosen, &mut perm, &mut out);
    Ok(out)
}

/// `Σ ± Π σ(τ)` over restricted trek systems from `A` to `B` without sided intersection.
pub fn trek_polynomial(g: &MixedGraph, a: &[usize], b: &[usize], p: &[usize], q: &[usize]) -> Result<Polynomial> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch(format!("|A| = {} but |B| = {}", a.len(), b.len())));
    }
    Ok(TrekTable::new(g, p, q)?.system_polynomial(a, b))
}

#[derive(Debug, Clone)]
struct PackedTrek {
    left: u64,
    right: u64,
    monomial: Monomial,
}

/// Restricted treks of one `(G, P, Q)` packed for repeated system sums.
#[derive(Debug, Clone)]
pub struct TrekTable {
    n: usize,
    treks: Vec<Vec<PackedTrek>>,
}

impl TrekTable {
    pub fn new(g: &MixedGraph, p: &[usize], q: &[usize]) -> Result<Self> {
        let n = g.len();
        let mut treks = vec![Vec::new(); n * n];
        for ((a, b), ts) in restricted_treks(g, p, q)? {
            treks[a * n + b] = ts
                .iter()
                .map(|t| PackedTrek {
                    left: mask_of(&t.left),
                    right: mask_of(&t.right),
                    monomial: t.monomial(),
                })
                .collect();
        }
        Ok(TrekTable { n, treks })
    }

    /// Number of restricted treks from `a` to `b`.
    pub fn count(&self, a: usize, b: usize) -> usize {
        self.treks[a * self.n + b].len()
    }

    pub fn system_polynomial(&self, a: &[usize], b: &[usize]) -> Polynomial {
        let mut acc: BTreeMap<Monomial, i64> = BTreeMap::new();
        let mut used = vec![false; b.len()];
        let mut perm = Vec::with_capacity(a.len());
        self.rec(a, b, 0, 0, 0, Monomial::one(), &mut used, &mut perm, &mut acc);
        let mut out = Polynomial::zero();
        for (m, c) in acc {
            out.add_term(m, BigRational::from_integer(c.into()));
        }
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn rec(
        &self,
        a: &[usize],
        b: &[usize],
        k: usize,
        left: u64,
        right: u64,
        mono: Monomial,
        used: &mut [bool],
        perm: &mut Vec<usize>,
        acc: &mut BTreeMap<Monomial, i64>,
    ) {
        if k == a.len() {
            *acc.entry(mono).or_default() += permutation_sign(perm) as i64;
            return;
        }
        if a[k] >= self.n {
            return;
        }
        for c in 0..b.len() {
            if used[c] || b[c] >= self.n {
                continue;
            }
            for t in &self.treks[a[k] * self.n + b[c]] {
                if t.left & left != 0 || t.right & right != 0 {
                    continue;
                }
                used[c] = true;
                perm.push(c);
                self.rec(
                    a,
                    b,
                    k + 1,
                    left | t.left,
                    right | t.right,
                    mono.mul(&t.monomial),
                    used,
                    perm,
                    acc,
                );
                perm.pop();
                used[c] = false;
            }
        }
    }
}
