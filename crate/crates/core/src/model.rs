//! The covariance parametrization `Σ = (I − Λ)^{-T} Ω (I − Λ)^{-1}`,
//! symbolically over `λ, ω` and numerically over exact rationals.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::MixedGraph;
use crate::matrix::{RationalMatrix, SymbolicMatrix};
use crate::poly::{Assignment, Polynomial, VarKind, Variable};

/// `[(I − Λ)_{S,S}]^{-1}` as a polynomial matrix indexed by positions in `set`.
///
/// Entry `(a, b)` sums the `λ`-monomials of directed paths from `set[a]` to
/// `set[b]` staying inside `set`; the graph must be acyclic.
pub fn path_matrix(g: &MixedGraph, set: &[usize]) -> Result<Vec<Vec<Polynomial>>> {
    let order = g.topological_order()?;
    let pos: BTreeMap<usize, usize> = set.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let n = set.len();
    let mut m = vec![vec![Polynomial::zero(); n]; n];
    for &b in order.iter().filter(|v| pos.contains_key(v)) {
        let kb = pos[&b];
        m[kb][kb] = Polynomial::one();
        for &c in g.parents(b) {
            let Some(&kc) = pos.get(&c) else { continue };
            let l = Polynomial::lambda(c, b);
            for row in m.iter_mut() {
                if !row[kc].is_zero() {
                    let t = &row[kc] * &l;
                    row[kb] += t;
                }
            }
        }
    }
    Ok(m)
}

fn omega_entry(g: &MixedGraph, x: usize, y: usize) -> Option<Polynomial> {
    if x == y || g.has_bidirected(x, y) {
        Some(Polynomial::omega(x, y))
    } else {
        None
    }
}

fn normalize_set(g: &MixedGraph, set: &[usize], name: &str) -> Result<Vec<usize>> {
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.is_empty() {
        return Err(Error::InvalidArgument(format!("{name} must be nonempty")));
    }
    if let Some(&v) = s.iter().find(|&&v| v >= g.len()) {
        return Err(Error::UnknownVertex(format!("#{v}")));
    }
    Ok(s)
}

/// `Σ^{(P,Q)} = [(I−Λ)_{P,P}]^{-T} Ω_{P,Q} [(I−Λ)_{Q,Q}]^{-1}` with rows `P`, columns `Q`.
pub fn restricted_covariance(g: &MixedGraph, p: &[usize], q: &[usize]) -> Result<SymbolicMatrix> {
    let p = normalize_set(g, p, "P")?;
    let q = normalize_set(g, q, "Q")?;
    let mp = path_matrix(g, &p)?;
    let mq = path_matrix(g, &q)?;
    // Ω_{P,Q} M_Q first: rows x ∈ P, columns b ∈ Q.
    let mut right = vec![vec![Polynomial::zero(); q.len()]; p.len()];
    for (kx, &x) in p.iter().enumerate() {
        for (ky, &y) in q.iter().enumerate() {
            let Some(w) = omega_entry(g, x, y) else { continue };
            for kb in 0..q.len() {
                if !mq[ky][kb].is_zero() {
                    right[kx][kb] += &w * &mq[ky][kb];
                }
            }
        }
    }
    let mut entries = vec![vec![Polynomial::zero(); q.len()]; p.len()];
    for ka in 0..p.len() {
        for kx in 0..p.len() {
            if mp[kx][ka].is_zero() {
                continue;
            }
            for kb in 0..q.len() {
                if !right[kx][kb].is_zero() {
                    entries[ka][kb] += &mp[kx][ka] * &right[kx][kb];
                }
            }
        }
    }
    SymbolicMatrix::new(p, q, entries)
}

/// Model covariance matrix of an acyclic mixed graph, rows and columns in vertex order.
pub fn symbolic_covariance(g: &MixedGraph) -> Result<SymbolicMatrix> {
    g.require_acyclic()?;
    if g.is_empty() {
        return SymbolicMatrix::new(vec![], vec![], vec![]);
    }
    let all = g.all_vertices();
    restricted_covariance(g, &all, &all)
}

/// Image of `f` under `σ_ij ↦ Σ_ij`; other variables are left alone.
pub fn substitute_sigma(f: &Polynomial, sigma: &SymbolicMatrix) -> Result<Polynomial> {
    f.substitute(|v| {
        if v.kind != VarKind::Sigma {
            return Ok(None);
        }
        sigma
            .entry(v.i, v.j)
            .or_else(|| sigma.entry(v.j, v.i))
            .cloned()
            .map(Some)
            .ok_or_else(|| Error::MissingEntry(format!("s{}{}", v.i + 1, v.j + 1)))
    })
}

/// `σ_ij` values of a numeric covariance matrix, for evaluating σ-polynomials.
pub fn sigma_values(sigma: &RationalMatrix) -> BTreeMap<Variable, BigRational> {
    let mut vals = BTreeMap::new();
    for i in 0..sigma.nrows() {
        for j in i..sigma.ncols() {
            vals.insert(Variable::sigma(i, j), sigma[(i, j)].clone());
        }
    }
    vals
}

/// Numeric parameters `(Λ, Ω)` of a mixed graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parameters {
    pub lambda: RationalMatrix,
    pub omega: RationalMatrix,
}

impl Parameters {
    /// Checks that `Λ` is supported on the directed edges and `Ω` on the
    /// bidirected edges plus the diagonal, and that `Ω` is symmetric.
    pub fn check_support(&self, g: &MixedGraph) -> Result<()> {
        let n = g.len();
        for m in [&self.lambda, &self.omega] {
            if m.nrows() != n || m.ncols() != n {
                return Err(Error::SizeMismatch(format!(
                    "parameter matrix is {}x{}, graph has {n} vertices",
                    m.nrows(),
                    m.ncols()
                )));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !self.lambda[(i, j)].is_zero() && !g.has_directed(i, j) {
                    return Err(Error::InvalidArgument(format!(
                        "Λ has an entry off the directed edges at ({}, {})",
                        g.label(i),
                        g.label(j)
                    )));
                }
                if i != j && !self.omega[(i, j)].is_zero() && !g.has_bidirected(i, j) {
                    return Err(Error::InvalidArgument(format!(
                        "Ω has an entry off the bidirected edges at ({}, {})",
                        g.label(i),
                        g.label(j)
                    )));
                }
            }
        }
        if !self.omega.is_symmetric() {
            return Err(Error::InvalidArgument("Ω is not symmetric".into()));
        }
        Ok(())
    }

    /// `(I − Λ)^{-T} Ω (I − Λ)^{-1}`; fails when `I − Λ` is singular.
    pub fn covariance(&self) -> Result<RationalMatrix> {
        let n = self.lambda.nrows();
        let inv = RationalMatrix::identity(n).sub(&self.lambda)?.inverse()?;
        inv.transpose().mul(&self.omega)?.mul(&inv)
    }

    /// `[(I−Λ)_{P,P}]^{-T} Ω_{P,Q} [(I−Λ)_{Q,Q}]^{-1}`.
    pub fn restricted_covariance(&self, p: &[usize], q: &[usize]) -> Result<RationalMatrix> {
        let n = self.lambda.nrows();
        let i_minus = RationalMatrix::identity(n).sub(&self.lambda)?;
        let ip = i_minus.submatrix(p, p).inverse()?;
        let iq = i_minus.submatrix(q, q).inverse()?;
        ip.transpose().mul(&self.omega.submatrix(p, q))?.mul(&iq)
    }

    /// Values of the `λ` and `ω` variables of `g`.
    pub fn assignment(&self, g: &MixedGraph) -> Assignment {
        Assignment::rational(self.values(g))
    }

    pub fn values(&self, g: &MixedGraph) -> BTreeMap<Variable, BigRational> {
        let mut vals = BTreeMap::new();
        for (i, j) in g.directed_edges() {
            vals.insert(Variable::lambda(i, j), self.lambda[(i, j)].clone());
        }
        for i in 0..g.len() {
            vals.insert(Variable::omega(i, i), self.omega[(i, i)].clone());
        }
        for (i, j) in g.bidirected_edges() {
            vals.insert(Variable::omega(i, j), self.omega[(i, j)].clone());
        }
        vals
    }

    /// `Λ = 0`, `Ω = I`.
    pub fn trivial(n: usize) -> Self {
        Parameters {
            lambda: RationalMatrix::zeros(n, n),
            omega: RationalMatrix::identity(n),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;

    fn verma() -> MixedGraph {
        MixedGraph::parse("vertices: 1 2 3 4\n1 -> 2\n2 -> 3\n3 -> 4\n1 -> 3\n2 <-> 4\n").unwrap()
    }

    fn labels(g: &MixedGraph) -> Vec<String> {
        g.labels().to_vec()
    }

    #[test]
    fn two_vertex_chain() {
        let g = MixedGraph::parse("vertices: 1 2\n1 -> 2\n").unwrap();
        let s = symbolic_covariance(&g).unwrap();
        let ls = labels(&g);
        assert_eq!(s.get(0, 0).render(&ls), "w11");
        assert_eq!(s.get(0, 1).render(&ls), "l12*w11");
        assert_eq!(s.get(1, 1).render(&ls), "l12^2*w11 + w22");
    }

    #[test]
    fn edgeless_graph_is_diagonal() {
        let g = MixedGraph::parse("vertices: 1 2 3").unwrap();
        let s = symbolic_covariance(&g).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let e = s.get(i, j);
                if i == j {
                    assert_eq!(e, &Polynomial::omega(i, i));
                } else {
                    assert!(e.is_zero());
                }
            }
        }
    }

    #[test]
    fn verma_restricted_entry() {
        let g = verma();
        let ls = labels(&g);
        let r = restricted_covariance(&g, &[1, 3], &[1, 2, 3]).unwrap();
        assert_eq!(r.entry(1, 3).unwrap().render(&ls), "l23*l34*w22 + w24");
        // 2x3 matrix of the rank-one example.
        assert_eq!(r.entry(3, 1).unwrap().render(&ls), "w24");
        assert_eq!(r.entry(3, 2).unwrap().render(&ls), "l23*w24");
        assert_eq!(r.entry(1, 1).unwrap().render(&ls), "w22");
        assert_eq!(r.entry(1, 2).unwrap().render(&ls), "l23*w22");
    }

    #[test]
    fn sigma13_substitution() {
        let g = verma();
        let ls = labels(&g);
        let s = symbolic_covariance(&g).unwrap();
        let img = substitute_sigma(&Polynomial::sigma(0, 2), &s).unwrap();
        assert_eq!(img.render(&ls), "l12*l23*w11 + l13*w11");
        assert_eq!(substitute_sigma(&Polynomial::one(), &s).unwrap(), Polynomial::one());
        let small = restricted_covariance(&g, &[0], &[0]).unwrap();
        assert!(matches!(
            substitute_sigma(&Polynomial::sigma(0, 2), &small),
            Err(Error::MissingEntry(_))
        ));
    }

    #[test]
    fn full_restriction_is_covariance_and_symmetric() {
        let g = verma();
        let s = symbolic_covariance(&g).unwrap();
        assert_eq!(restricted_covariance(&g, &[0, 1, 2, 3], &[3, 2, 1, 0]).unwrap(), s);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(s.get(i, j), s.get(j, i));
            }
        }
        let lone = MixedGraph::parse("vertices: 1 2\n").unwrap();
        let r = restricted_covariance(&lone, &[1], &[1]).unwrap();
        assert_eq!(r.entries, vec![vec![Polynomial::omega(1, 1)]]);
        assert!(symbolic_covariance(&MixedGraph::parse("vertices: 1 2\n1 -> 2\n2 -> 1\n").unwrap()).is_err());
    }

    #[test]
    fn numeric_matches_symbolic() {
        let g = verma();
        let mut lambda = RationalMatrix::zeros(4, 4);
        let mut omega = RationalMatrix::identity(4);
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        for (k, (i, j)) in g.directed_edges().enumerate() {
            lambda[(i, j)] = r(k as i64 + 2, 7);
        }
        omega[(1, 3)] = r(1, 3);
        omega[(3, 1)] = r(1, 3);
        omega[(2, 2)] = r(5, 2);
        let params = Parameters { lambda, omega };
        params.check_support(&g).unwrap();
        let num = params.covariance().unwrap();
        let sym = symbolic_covariance(&g).unwrap();
        let vals = params.values(&g);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(sym.get(i, j).evaluate_rational(&vals).unwrap(), num[(i, j)]);
            }
        }
        let rp = params.restricted_covariance(&[1, 3], &[1, 2, 3]).unwrap();
        let rs = restricted_covariance(&g, &[1, 3], &[1, 2, 3]).unwrap();
        for a in 0..2 {
            for b in 0..3 {
                assert_eq!(rs.get(a, b).evaluate_rational(&vals).unwrap(), rp[(a, b)]);
            }
        }
    }
}
