//! Vanishing tests for σ-polynomials on the model of a graph, exact
//! covariance sampling, model membership with parameter recovery, and
//! factorization checks through restricted trek systems.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::constraints::{check_theorem_hypotheses, theorem_constraint_set};
use crate::error::{Error, Result};
use crate::graph::MixedGraph;
use crate::matrix::RationalMatrix;
use crate::model::{sigma_values, substitute_sigma, symbolic_covariance, Parameters};
use crate::poly::{rational_mod, rational_string, Assignment, Fp, Polynomial, Scalar, VarKind, Variable};
use crate::trek::{enumerate_trek_systems, trek_polynomial, TrekSystem};

/// Default number of sampled points for randomized checks.
pub const DEFAULT_TRIALS: usize = 8;
/// Redraws allowed when a cyclic draw makes `I − Λ` singular.
pub const CYCLIC_RETRIES: usize = 16;
/// Attempts at finding a nonzero evaluation of a nonzero polynomial.
const WITNESS_ATTEMPTS: usize = 64;

/// Hex SHA-256 of the canonical text form of `g`.
pub fn graph_sha256(g: &MixedGraph) -> String {
    Sha256::digest(g.to_text().as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    VanishesIdentically,
    NonzeroWitness,
    /// Zero at every one of `trials` random points; `modulus` is set when
    /// evaluation happened in a prime field.
    VanishesProbably {
        trials: usize,
        modulus: Option<u64>,
    },
}

/// Point where the checked polynomial is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// `λ, ω` values for symbolic checks, `σ` values for numeric ones.
    pub assignment: Assignment,
    pub value: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub witness: Option<Witness>,
    /// Total degree of the checked polynomial in `σ`.
    pub degree: Option<u32>,
    /// Upper bound on the degree after substituting the parametrization;
    /// only known for acyclic graphs.
    pub parameter_degree: Option<u32>,
    pub seed: u64,
}

impl Verdict {
    pub fn vanishes(&self) -> bool {
        !matches!(self.status, Status::NonzeroWitness)
    }

    pub fn to_json(&self, labels: &[String]) -> Value {
        let (status, trials, modulus) = match &self.status {
            Status::VanishesIdentically => ("vanishes_identically", None, None),
            Status::NonzeroWitness => ("nonzero_witness", None, None),
            Status::VanishesProbably { trials, modulus } => ("vanishes_probably", Some(*trials), *modulus),
        };
        let witness = self.witness.as_ref().map(|w| {
            let assignment: serde_json::Map<String, Value> = w
                .assignment
                .values
                .iter()
                .map(|(v, s)| (v.render(labels), Value::String(s.render())))
                .collect();
            json!({"assignment": assignment, "value": w.value.render()})
        });
        json!({
            "status": status,
            "trials": trials,
            "modulus": modulus,
            "degree": self.degree,
            "parameter_degree": self.parameter_degree,
            "seed": self.seed,
            "witness": witness,
        })
    }
}

/// How `Ω` is built from the draw; diagonal dominance makes it positive definite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OmegaStyle {
    #[default]
    DiagonalDominant,
}

/// Seeded recipe for drawing exact model parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleSpec {
    pub seed: u64,
    /// Edge weights are drawn uniformly from `{k / grid}` within these bounds.
    pub lambda_range: (BigRational, BigRational),
    pub grid: u32,
    pub omega_style: OmegaStyle,
    /// Vertices kept in the returned covariance, in this order.
    pub observed: Option<Vec<usize>>,
}

impl SampleSpec {
    pub fn new(seed: u64) -> Self {
        SampleSpec {
            seed,
            lambda_range: (
                BigRational::new((-9).into(), 10.into()),
                BigRational::new(9.into(), 10.into()),
            ),
            grid: 10,
            omega_style: OmegaStyle::DiagonalDominant,
            observed: None,
        }
    }

    pub fn observed(mut self, observed: Vec<usize>) -> Self {
        self.observed = Some(observed);
        self
    }

    fn grid_bounds(&self) -> Result<(i64, i64)> {
        let grid = BigRational::from_integer(BigInt::from(self.grid));
        let lo = (&self.lambda_range.0 * &grid).ceil().to_integer();
        let hi = (&self.lambda_range.1 * &grid).floor().to_integer();
        let (lo, hi) = (to_i64(&lo)?, to_i64(&hi)?);
        if self.grid == 0 || lo > hi {
            return Err(Error::InvalidArgument("empty lambda range".into()));
        }
        Ok((lo, hi))
    }
}

fn to_i64(x: &BigInt) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::InvalidArgument("lambda range too wide".into()))
}

/// A draw of parameters and the covariance they induce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sample {
    pub parameters: Parameters,
    /// Full covariance over all vertices.
    pub covariance: RationalMatrix,
}

impl Sample {
    /// Principal submatrix on `observed`, or the full covariance.
    pub fn observed(&self, observed: Option<&[usize]>) -> RationalMatrix {
        match observed {
            Some(o) => self.covariance.submatrix(o, o),
            None => self.covariance.clone(),
        }
    }
}

/// Draws parameters with a caller-owned generator, so that successive
/// draws of one seeded run are independent.
pub fn draw_sample(spec: &SampleSpec, g: &MixedGraph, rng: &mut ChaCha8Rng) -> Result<Sample> {
    let n = g.len();
    let (lo, hi) = spec.grid_bounds()?;
    let grid = BigInt::from(spec.grid);
    let tenth = |k: i64| BigRational::new(BigInt::from(k), BigInt::from(10));
    for _ in 0..=CYCLIC_RETRIES {
        let mut lambda = RationalMatrix::zeros(n, n);
        for (i, j) in g.directed_edges() {
            lambda[(i, j)] = BigRational::new(BigInt::from(rng.gen_range(lo..=hi)), grid.clone());
        }
        let mut omega = RationalMatrix::zeros(n, n);
        for (i, j) in g.bidirected_edges() {
            let w = tenth(rng.gen_range(-9..=9));
            omega[(i, j)] = w.clone();
            omega[(j, i)] = w;
        }
        // Strict diagonal dominance with a positive diagonal gives Ω ≻ 0.
        for i in 0..n {
            let off = (0..n)
                .filter(|&j| j != i)
                .fold(BigRational::zero(), |acc, j| acc + omega[(i, j)].abs());
            omega[(i, i)] = off + tenth(rng.gen_range(5..=15));
        }
        let parameters = Parameters { lambda, omega };
        match parameters.covariance() {
            Ok(covariance) => return Ok(Sample { parameters, covariance }),
            Err(Error::Singular) if !g.is_acyclic() => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Sampling(format!(
        "I - Λ stayed singular after {CYCLIC_RETRIES} redraws"
    )))
}

/// Exact covariance `(I−Λ)^{-T} Ω (I−Λ)^{-1}` of a seeded draw, restricted to
/// the observed vertices when given.
pub fn sample_covariance(spec: &SampleSpec, g: &MixedGraph) -> Result<RationalMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let s = draw_sample(spec, g, &mut rng)?;
    Ok(s.observed(spec.observed.as_deref()))
}

/// Longest directed path length, used to bound entry degrees of `Σ`.
fn longest_path(g: &MixedGraph) -> Option<u32> {
    let order = g.topological_order().ok()?;
    let mut depth = vec![0u32; g.len()];
    for &v in &order {
        for &c in g.children(v) {
            depth[c] = depth[c].max(depth[v] + 1);
        }
    }
    depth.into_iter().max()
}

fn parameter_degree(g: &MixedGraph, f: &Polynomial) -> Option<u32> {
    let d = f.degree()?;
    Some(d * (2 * longest_path(g)? + 1))
}

fn check_sigma_only(f: &Polynomial) -> Result<()> {
    match f.variables().into_iter().find(|v| v.kind != VarKind::Sigma) {
        Some(v) => Err(Error::InvalidArgument(format!(
            "expected a polynomial in σ only, found `{}`",
            v.render(&[])
        ))),
        None => Ok(()),
    }
}

/// Decides `f ∈ I(G)` by substituting the symbolic covariance.
pub fn vanishes_symbolically(g: &MixedGraph, f: &Polynomial, seed: u64) -> Result<Verdict> {
    check_sigma_only(f)?;
    let sigma = symbolic_covariance(g)?;
    let image = substitute_sigma(f, &sigma)?;
    let mut verdict = Verdict {
        status: Status::VanishesIdentically,
        witness: None,
        degree: f.degree(),
        parameter_degree: parameter_degree(g, f),
        seed,
    };
    if image.is_zero() {
        return Ok(verdict);
    }
    let spec = SampleSpec::new(seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..WITNESS_ATTEMPTS {
        let s = draw_sample(&spec, g, &mut rng)?;
        let assignment = s.parameters.assignment(g);
        let value = image.evaluate(&assignment)?;
        if !value.is_zero() {
            verdict.status = Status::NonzeroWitness;
            verdict.witness = Some(Witness { assignment, value });
            return Ok(verdict);
        }
    }
    Err(Error::Sampling(format!(
        "nonzero image vanished at {WITNESS_ATTEMPTS} sampled points"
    )))
}

/// Options for [`vanishes_numerically_with`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericCheck {
    pub trials: usize,
    pub seed: u64,
    /// Evaluate in `Z/pZ` after drawing exact rational points.
    pub modulus: Option<u64>,
    /// `σ` indices of `f` refer to positions in this list.
    pub observed: Option<Vec<usize>>,
}

impl NumericCheck {
    pub fn new(trials: usize, seed: u64) -> Self {
        NumericCheck {
            trials,
            seed,
            modulus: None,
            observed: None,
        }
    }
}

/// Evaluates `f` at `trials` exact covariance draws; works for cyclic graphs.
pub fn vanishes_numerically(g: &MixedGraph, f: &Polynomial, trials: usize, seed: u64) -> Result<Verdict> {
    vanishes_numerically_with(g, f, &NumericCheck::new(trials, seed))
}

pub fn vanishes_numerically_with(g: &MixedGraph, f: &Polynomial, opts: &NumericCheck) -> Result<Verdict> {
    if opts.trials == 0 {
        return Err(Error::InvalidArgument("trials must be positive".into()));
    }
    check_sigma_only(f)?;
    let spec = SampleSpec::new(opts.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut verdict = Verdict {
        status: Status::VanishesProbably {
            trials: opts.trials,
            modulus: opts.modulus,
        },
        witness: None,
        degree: f.degree(),
        parameter_degree: parameter_degree(g, f),
        seed: opts.seed,
    };
    for _ in 0..opts.trials {
        let sigma = draw_sample(&spec, g, &mut rng)?.observed(opts.observed.as_deref());
        let vals = sigma_values(&sigma);
        let (assignment, value) = match opts.modulus {
            None => {
                let value = f.evaluate_rational(&vals)?;
                (Assignment::rational(vals), Scalar::Rational(value))
            }
            Some(p) => {
                let reduced = vals
                    .iter()
                    .map(|(v, q)| Ok((*v, rational_mod(q, p)?)))
                    .collect::<Result<BTreeMap<Variable, u64>>>()?;
                let value = f.evaluate_mod(&reduced, p)?;
                (Assignment::prime(p, reduced), Scalar::Prime(Fp { value, modulus: p }))
            }
        };
        if !value.is_zero() {
            verdict.status = Status::NonzeroWitness;
            verdict.witness = Some(Witness { assignment, value });
            return Ok(verdict);
        }
    }
    Ok(verdict)
}

fn require_pd(g: &MixedGraph, sigma: &RationalMatrix) -> Result<()> {
    if sigma.nrows() != g.len() || sigma.ncols() != g.len() {
        return Err(Error::SizeMismatch(format!(
            "covariance is {}x{}, graph has {} vertices",
            sigma.nrows(),
            sigma.ncols(),
            g.len()
        )));
    }
    if !sigma.is_symmetric() || !sigma.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    Ok(())
}

/// Whether a positive definite `Σ` lies on the model, decided by the
/// constraint set of a globally identifiable graph.
pub fn membership_check(g: &MixedGraph, sigma: &RationalMatrix) -> Result<bool> {
    check_theorem_hypotheses(g)?;
    require_pd(g, sigma)?;
    let vals = sigma_values(sigma);
    for c in theorem_constraint_set(g)? {
        if !c.expanded.evaluate_rational(&vals)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Parameters recovered from a covariance matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelWitness {
    pub lambda: RationalMatrix,
    /// `(I−Λ)^T Σ (I−Λ)` with entries outside the bidirected support zeroed.
    pub omega: RationalMatrix,
    /// `(I−Λ)^T Σ (I−Λ)` equals `omega` exactly and `omega` is positive definite.
    pub reproduces: bool,
}

impl ModelWitness {
    pub fn parameters(&self) -> Parameters {
        Parameters {
            lambda: self.lambda.clone(),
            omega: self.omega.clone(),
        }
    }

    pub fn to_json(&self, g: &MixedGraph) -> Value {
        let entries = |m: &RationalMatrix, pairs: Vec<(usize, usize)>| -> serde_json::Map<String, Value> {
            pairs
                .into_iter()
                .map(|(i, j)| {
                    (
                        format!("{},{}", g.label(i), g.label(j)),
                        Value::String(rational_string(&m[(i, j)])),
                    )
                })
                .collect()
        };
        let mut omega_support: Vec<(usize, usize)> = (0..g.len()).map(|i| (i, i)).collect();
        omega_support.extend(g.bidirected_edges());
        json!({
            "lambda": entries(&self.lambda, g.directed_edges().collect()),
            "omega": entries(&self.omega, omega_support),
            "reproduces": self.reproduces,
        })
    }
}

/// Recovers `(Λ, Ω)` from `Σ`: regressions on parents for every vertex but
/// the last, then a kernel vector of the parental system for the last.
pub fn fit_parameters(g: &MixedGraph, sigma: &RationalMatrix) -> Result<ModelWitness> {
    check_theorem_hypotheses(g)?;
    require_pd(g, sigma)?;
    let n = g.len();
    let mut lambda = RationalMatrix::zeros(n, n);
    if n == 0 {
        return Ok(ModelWitness {
            lambda: lambda.clone(),
            omega: lambda,
            reproduces: true,
        });
    }
    for j in 0..n - 1 {
        let pa = g.parents(j);
        if pa.is_empty() {
            continue;
        }
        let rhs: Vec<BigRational> = pa.iter().map(|&k| sigma[(k, j)].clone()).collect();
        let coef = sigma.submatrix(pa, pa).solve(&rhs)?;
        for (&k, c) in pa.iter().zip(coef) {
            lambda[(k, j)] = c;
        }
    }
    let p = n - 1;
    let pa = g.parents(p);
    if !pa.is_empty() {
        let mut cols = pa.to_vec();
        cols.push(p);
        let rows: Vec<usize> = (0..p).filter(|r| !g.siblings(p).contains(r)).collect();
        // Entry (r, c) of [(I − Λ')^T Σ]_{rows, pa(p) ∪ {p}}.
        let mut m = RationalMatrix::zeros(rows.len(), cols.len());
        for (a, &r) in rows.iter().enumerate() {
            for (b, &c) in cols.iter().enumerate() {
                let mut e = sigma[(r, c)].clone();
                for &k in g.parents(r) {
                    e -= &lambda[(k, r)] * &sigma[(k, c)];
                }
                m[(a, b)] = e;
            }
        }
        let last = cols.len() - 1;
        let (_, pivots) = m.rref();
        if pivots.contains(&last) {
            return Err(Error::NoKernelVector);
        }
        // The kernel vector of the last free column has last coordinate 1.
        let x = m
            .kernel()
            .into_iter()
            .find(|x| x[last].is_one())
            .ok_or(Error::NoKernelVector)?;
        for (b, &k) in pa.iter().enumerate() {
            lambda[(k, p)] = -x[b].clone();
        }
    }
    let i_minus = RationalMatrix::identity(n).sub(&lambda)?;
    let full = i_minus.transpose().mul(sigma)?.mul(&i_minus)?;
    let mut omega = full.clone();
    for i in 0..n {
        for j in 0..n {
            if i != j && !g.has_bidirected(i, j) {
                omega[(i, j)] = BigRational::zero();
            }
        }
    }
    let reproduces = omega == full && omega.is_positive_definite();
    Ok(ModelWitness {
        lambda,
        omega,
        reproduces,
    })
}

/// One factor `(A_i, B_i, C_i, D_i)` of a block factorization: the restricted
/// trek polynomial from `A_i` to `B_i` with left sides in `C_i` and right
/// sides in `D_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorBlock {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
    pub d: Vec<usize>,
}

impl FactorBlock {
    pub fn new(a: Vec<usize>, b: Vec<usize>, c: Vec<usize>, d: Vec<usize>) -> Self {
        FactorBlock { a, b, c, d }
    }

    /// Unrestricted block over all vertices of `g`.
    pub fn full(g: &MixedGraph, a: Vec<usize>, b: Vec<usize>) -> Self {
        FactorBlock::new(a, b, g.all_vertices(), g.all_vertices())
    }
}

/// Product of the restricted trek polynomials of `blocks`, in `λ, ω`.
pub fn block_product(g: &MixedGraph, blocks: &[FactorBlock]) -> Result<Polynomial> {
    let mut acc = Polynomial::one();
    for blk in blocks {
        acc = &acc * &trek_polynomial(g, &blk.a, &blk.b, &blk.c, &blk.d)?;
    }
    Ok(acc)
}

/// Checks `|Σ_{A_1⊎…⊎A_k, B_1⊎…⊎B_k}| = Π P_{A_i,B_i,(C_i,D_i)}`, with rows
/// and columns concatenated in block order.
pub fn verify_factorization(g: &MixedGraph, blocks: &[FactorBlock]) -> Result<bool> {
    g.require_acyclic()?;
    let mut rows = Vec::new();
    let mut cols = Vec::new();
    for blk in blocks {
        if blk.a.len() != blk.b.len() {
            return Err(Error::SizeMismatch(format!(
                "block has |A| = {} but |B| = {}",
                blk.a.len(),
                blk.b.len()
            )));
        }
        rows.extend_from_slice(&blk.a);
        cols.extend_from_slice(&blk.b);
    }
    let lhs = symbolic_covariance(g)?.submatrix(&rows, &cols)?.determinant()?;
    Ok(lhs == block_product(g, blocks)?)
}

/// Checks that the image of the σ-polynomial `f` equals the product of the
/// block trek polynomials.
pub fn verify_polynomial_factorization(g: &MixedGraph, f: &Polynomial, blocks: &[FactorBlock]) -> Result<bool> {
    check_sigma_only(f)?;
    let lhs = substitute_sigma(f, &symbolic_covariance(g)?)?;
    Ok(lhs == block_product(g, blocks)?)
}

/// Brute-force check of the swapping property for blocks `(A_i, B_i)` over
/// all trek systems without sided intersection.
pub fn check_swapping(g: &MixedGraph, blocks: &[(Vec<usize>, Vec<usize>)]) -> Result<bool> {
    g.require_acyclic()?;
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut block_of_row = Vec::new();
    let mut block_of_col = Vec::new();
    for (k, (ai, bi)) in blocks.iter().enumerate() {
        if ai.len() != bi.len() {
            return Err(Error::SizeMismatch(format!(
                "block has |A| = {} but |B| = {}",
                ai.len(),
                bi.len()
            )));
        }
        a.extend_from_slice(ai);
        b.extend_from_slice(bi);
        block_of_row.extend(std::iter::repeat_n(k, ai.len()));
        block_of_col.extend(std::iter::repeat_n(k, bi.len()));
    }
    let all = g.all_vertices();
    let systems = enumerate_trek_systems(g, &a, &b, &all, &all)?;
    let blockwise = |s: &TrekSystem| (0..a.len()).all(|r| block_of_row[r] == block_of_col[s.perm[r]]);
    if !systems.iter().all(blockwise) {
        return Ok(false);
    }
    for s1 in &systems {
        for s2 in &systems {
            for k in 0..blocks.len() {
                let mut swapped = s1.clone();
                for r in (0..a.len()).filter(|&r| block_of_row[r] == k) {
                    swapped.treks[r] = s2.treks[r].clone();
                    swapped.perm[r] = s2.perm[r];
                }
                if swapped.has_sided_intersection() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraints::f_ij;
    use crate::gallery::{self, graph, nested, polynomial};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn verma_and_vom_vanish_symbolically() {
        let verma = graph(gallery::VERMA);
        let v = vanishes_symbolically(&verma, &polynomial(gallery::F_VERMA, 4), 1).unwrap();
        assert_eq!(v.status, Status::VanishesIdentically);
        assert_eq!(v.degree, Some(4));
        let vom = graph(gallery::VOM);
        let v = vanishes_symbolically(&vom, &polynomial(gallery::F_VOM, 4), 1).unwrap();
        assert_eq!(v.status, Status::VanishesIdentically);
    }

    #[test]
    fn sigma13_has_witness() {
        let g = graph(gallery::VERMA);
        let v = vanishes_symbolically(&g, &Polynomial::sigma(0, 2), 3).unwrap();
        assert_eq!(v.status, Status::NonzeroWitness);
        let w = v.witness.unwrap();
        let image = substitute_sigma(&Polynomial::sigma(0, 2), &symbolic_covariance(&g).unwrap()).unwrap();
        assert_eq!(image.evaluate(&w.assignment).unwrap(), w.value);
        assert!(!w.value.is_zero());
    }

    #[test]
    fn numeric_checks() {
        let g = graph(gallery::VERMA);
        let f = polynomial(gallery::F_VERMA, 4);
        let v = vanishes_numerically(&g, &f, 8, 11).unwrap();
        assert_eq!(
            v.status,
            Status::VanishesProbably {
                trials: 8,
                modulus: None
            }
        );
        let v = vanishes_numerically(&g, &Polynomial::sigma(0, 0), 8, 11).unwrap();
        assert_eq!(v.status, Status::NonzeroWitness);
        let mut opts = NumericCheck::new(4, 5);
        opts.modulus = Some(crate::poly::DEFAULT_PRIME);
        assert!(vanishes_numerically_with(&g, &f, &opts).unwrap().vanishes());
        assert!(vanishes_numerically(&g, &f, 0, 1).is_err());
    }

    #[test]
    fn cyclic_nested_determinant_vanishes() {
        let g = graph(gallery::CYCLIC);
        let f = nested(gallery::CYCLIC_NESTED, &g).expand().unwrap();
        assert_eq!(f.degree(), Some(6));
        let v = vanishes_numerically(&g, &f, 8, 9).unwrap();
        assert!(matches!(v.status, Status::VanishesProbably { .. }));
        assert!(vanishes_symbolically(&g, &f, 0).is_err());
    }

    #[test]
    fn pentad_vanishes_on_factor_model() {
        let g = graph(gallery::PENTAD);
        let f = polynomial(gallery::F_PENTAD, 5);
        let mut opts = NumericCheck::new(8, 2);
        opts.observed = Some(g.vertex_set(&gallery::PENTAD_OBSERVED).unwrap());
        assert!(vanishes_numerically_with(&g, &f, &opts).unwrap().vanishes());
    }

    #[test]
    fn samples_are_deterministic_and_pd() {
        let g = graph(gallery::VERMA);
        let a = sample_covariance(&SampleSpec::new(4), &g).unwrap();
        let b = sample_covariance(&SampleSpec::new(4), &g).unwrap();
        assert_eq!(a, b);
        assert!(a.is_positive_definite());
        assert!(polynomial(gallery::F_VERMA, 4)
            .evaluate_rational(&sigma_values(&a))
            .unwrap()
            .is_zero());
        let empty = MixedGraph::parse("vertices: 1 2 3\n").unwrap();
        let s = sample_covariance(&SampleSpec::new(1), &empty).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(s[(i, j)].is_zero(), i != j);
            }
        }
    }

    #[test]
    fn membership_and_fit_round_trip() {
        let g = graph(gallery::VERMA);
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let s = draw_sample(&SampleSpec::new(21), &g, &mut rng).unwrap();
        assert!(membership_check(&g, &s.covariance).unwrap());
        let w = fit_parameters(&g, &s.covariance).unwrap();
        assert!(w.reproduces);
        assert_eq!(w.parameters(), s.parameters);

        let id = RationalMatrix::identity(4);
        assert!(membership_check(&g, &id).unwrap());
        let w = fit_parameters(&g, &id).unwrap();
        assert_eq!(w.parameters(), Parameters::trivial(4));

        let mut bad = s.covariance.clone();
        bad[(0, 3)] += q(1, 7);
        bad[(3, 0)] += q(1, 7);
        assert!(!membership_check(&g, &bad).unwrap());
        match fit_parameters(&g, &bad) {
            Ok(w) => assert!(!w.reproduces),
            Err(e) => assert!(matches!(e, Error::NoKernelVector), "{e}"),
        }
    }

    #[test]
    fn membership_rejects_non_pd() {
        let g = graph(gallery::VERMA);
        let z = RationalMatrix::zeros(4, 4);
        assert!(matches!(membership_check(&g, &z), Err(Error::NotPositiveDefinite)));
    }

    #[test]
    fn verma_factorizations() {
        let g = graph(gallery::VERMA);
        let s = |l: &[&str]| g.vertex_set(l).unwrap();
        let v = g.all_vertices();
        let r234 = s(&["2", "3", "4"]);
        let r24 = s(&["2", "4"]);
        let p11 = FactorBlock::full(&g, s(&["1"]), s(&["1"]));
        let p13 = FactorBlock::full(&g, s(&["1"]), s(&["3"]));
        let cases = [
            vec![
                p11.clone(),
                FactorBlock::new(s(&["2"]), s(&["2"]), r234.clone(), r234.clone()),
            ],
            vec![
                p13.clone(),
                FactorBlock::new(s(&["2"]), s(&["4"]), r234.clone(), r24.clone()),
            ],
            vec![
                p11.clone(),
                FactorBlock::new(s(&["3"]), s(&["2"]), r234.clone(), r234.clone()),
            ],
            vec![
                p13.clone(),
                FactorBlock::new(s(&["3"]), s(&["4"]), r234.clone(), r24.clone()),
            ],
        ];
        for blocks in &cases {
            assert!(verify_factorization(&g, blocks).unwrap());
        }
        let final_blocks = [p11, p13, FactorBlock::new(s(&["2", "3"]), s(&["2", "4"]), r234, r24)];
        assert!(verify_polynomial_factorization(&g, &polynomial(gallery::F_VERMA, 4), &final_blocks).unwrap());
        let single = [FactorBlock::new(s(&["1", "2"]), s(&["3", "4"]), v.clone(), v)];
        assert!(verify_factorization(&g, &single).unwrap());
    }

    #[test]
    fn repeated_rows_factor_to_zero() {
        let g = graph(gallery::VERMA);
        let blocks = [
            FactorBlock::full(&g, vec![0], vec![0]),
            FactorBlock::new(vec![0], vec![1], vec![], vec![]),
        ];
        assert!(verify_factorization(&g, &blocks).unwrap());
        let bad = [FactorBlock::new(vec![0, 1], vec![0], vec![], vec![])];
        assert!(verify_factorization(&g, &bad).is_err());
    }

    #[test]
    fn swapping_examples() {
        let g = graph(gallery::VERMA);
        assert!(check_swapping(&g, &[(vec![0], vec![0]), (vec![1], vec![1])]).unwrap());
        assert!(check_swapping(&g, &[(vec![0, 1], vec![2, 3])]).unwrap());
        let g7 = graph(gallery::ANCESTRAL_FOUR);
        assert!(check_swapping(&g7, &[(vec![1], vec![1]), (vec![3], vec![0])]).unwrap());
        let v = g7.all_vertices();
        let blocks = [
            FactorBlock::full(&g7, vec![1], vec![1]),
            FactorBlock::new(vec![3], vec![0], vec![0, 2, 3], v),
        ];
        assert!(verify_factorization(&g7, &blocks).unwrap());
        // The system 1 - 1, 2 - 2 does not connect block A_1 = {1} to B_1 = {2}.
        assert!(!check_swapping(&g, &[(vec![0], vec![1]), (vec![1], vec![0])]).unwrap());
    }

    #[test]
    fn ci_dag_f31_vanishes() {
        let g = graph(gallery::CI_DAG);
        let f = f_ij(&g, 2, 0).unwrap();
        assert_eq!(
            vanishes_symbolically(&g, &f, 0).unwrap().status,
            Status::VanishesIdentically
        );
    }

    #[test]
    fn verdict_json() {
        let g = graph(gallery::VERMA);
        let v = vanishes_numerically(&g, &Polynomial::sigma(0, 0), 2, 7).unwrap();
        let j = v.to_json(g.labels());
        assert_eq!(j["status"], "nonzero_witness");
        assert_eq!(j["seed"], 7);
        assert!(j["witness"]["assignment"]["s11"].is_string());
        assert_eq!(graph_sha256(&g).len(), 64);
    }
}
