//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Variables are `σ_ij`, `λ_ij` and `ω_ij` over vertex indices. Monomials
//! are ordered graded-lexicographically where an earlier variable counts
//! as larger; polynomials print their terms from largest to smallest.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The Mersenne prime `2^61 - 1`.
pub const DEFAULT_PRIME: u64 = (1 << 61) - 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarKind {
    Sigma,
    Lambda,
    Omega,
}

impl VarKind {
    fn prefix(self) -> char {
        match self {
            VarKind::Sigma => 's',
            VarKind::Lambda => 'l',
            VarKind::Omega => 'w',
        }
    }
}

/// `σ` and `ω` keep `i <= j`; `λ` keeps the edge orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable {
    pub kind: VarKind,
    pub i: usize,
    pub j: usize,
}

impl Variable {
    pub fn sigma(i: usize, j: usize) -> Self {
        Variable {
            kind: VarKind::Sigma,
            i: i.min(j),
            j: i.max(j),
        }
    }

    pub fn lambda(i: usize, j: usize) -> Self {
        Variable {
            kind: VarKind::Lambda,
            i,
            j,
        }
    }

    pub fn omega(i: usize, j: usize) -> Self {
        Variable {
            kind: VarKind::Omega,
            i: i.min(j),
            j: i.max(j),
        }
    }

    pub fn render(&self, labels: &[String]) -> String {
        let name = |v: usize| labels.get(v).cloned().unwrap_or_else(|| format!("#{v}"));
        let (a, b) = (name(self.i), name(self.j));
        if labels.iter().any(|l| l.len() > 1) {
            format!("{}{a}_{b}", self.kind.prefix())
        } else {
            format!("{}{a}{b}", self.kind.prefix())
        }
    }
}

/// Sorted `(variable, exponent)` pairs with positive exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Variable, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Variable) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (Variable, u32)>) -> Self {
        let mut map: BTreeMap<Variable, u32> = BTreeMap::new();
        for (v, e) in factors {
            *map.entry(v).or_default() += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn factors(&self) -> &[(Variable, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: Variable) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|k| self.0[k].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut x, mut y) = (0, 0);
        while x < a.len() && y < b.len() {
            match a[x].0.cmp(&b[y].0) {
                Ordering::Less => {
                    out.push(a[x]);
                    x += 1;
                }
                Ordering::Greater => {
                    out.push(b[y]);
                    y += 1;
                }
                Ordering::Equal => {
                    out.push((a[x].0, a[x].1 + b[y].1));
                    x += 1;
                    y += 1;
                }
            }
        }
        out.extend_from_slice(&a[x..]);
        out.extend_from_slice(&b[y..]);
        Monomial(out)
    }

    pub fn render(&self, labels: &[String]) -> String {
        self.0
            .iter()
            .map(|&(v, e)| {
                if e == 1 {
                    v.render(labels)
                } else {
                    format!("{}^{e}", v.render(labels))
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let by_degree = self.degree().cmp(&other.degree());
        if by_degree != Ordering::Equal {
            return by_degree;
        }
        for (&(va, ea), &(vb, eb)) in self.0.iter().zip(&other.0) {
            match va.cmp(&vb) {
                // The monomial containing the earlier variable is larger.
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => match ea.cmp(&eb) {
                    Ordering::Equal => {}
                    o => return o,
                },
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical form: no zero coefficients, terms keyed by monomial.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn integer(c: i64) -> Self {
        Polynomial::constant(BigRational::from_integer(c.into()))
    }

    pub fn var(v: Variable) -> Self {
        Polynomial::monomial(Monomial::var(v), BigRational::one())
    }

    pub fn sigma(i: usize, j: usize) -> Self {
        Polynomial::var(Variable::sigma(i, j))
    }

    pub fn lambda(i: usize, j: usize) -> Self {
        Polynomial::var(Variable::lambda(i, j))
    }

    pub fn omega(i: usize, j: usize) -> Self {
        Polynomial::var(Variable::omega(i, j))
    }

    pub fn monomial(m: Monomial, c: BigRational) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms from largest to smallest monomial.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn variables(&self) -> Vec<Variable> {
        let mut vs: Vec<Variable> = self.terms.keys().flat_map(|m| m.0.iter().map(|&(v, _)| v)).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Replaces each variable by the polynomial `f(v)`; `None` keeps `v`.
    pub fn substitute<F>(&self, mut f: F) -> Result<Polynomial>
    where
        F: FnMut(Variable) -> Result<Option<Polynomial>>,
    {
        let mut images: HashMap<Variable, Polynomial> = HashMap::new();
        let mut powers: HashMap<(Variable, u32), Polynomial> = HashMap::new();
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(c.clone());
            for &(v, e) in &m.0 {
                if let std::collections::hash_map::Entry::Vacant(slot) = images.entry(v) {
                    slot.insert(f(v)?.unwrap_or_else(|| Polynomial::var(v)));
                }
                let p = powers.entry((v, e)).or_insert_with(|| images[&v].pow(e)).clone();
                term = &term * &p;
            }
            out += term;
        }
        Ok(out)
    }

    pub fn evaluate(&self, a: &Assignment) -> Result<Scalar> {
        match a.domain()? {
            None => self.evaluate_rational(&BTreeMap::new()).map(Scalar::Rational),
            Some(Domain::Rational) => {
                let vals: BTreeMap<Variable, BigRational> = a
                    .values
                    .iter()
                    .map(|(v, s)| match s {
                        Scalar::Rational(q) => (*v, q.clone()),
                        Scalar::Prime(_) => unreachable!("domain checked"),
                    })
                    .collect();
                self.evaluate_rational(&vals).map(Scalar::Rational)
            }
            Some(Domain::Prime(p)) => {
                let vals: BTreeMap<Variable, u64> = a
                    .values
                    .iter()
                    .map(|(v, s)| match s {
                        Scalar::Prime(x) => (*v, x.value),
                        Scalar::Rational(_) => unreachable!("domain checked"),
                    })
                    .collect();
                self.evaluate_mod(&vals, p)
                    .map(|value| Scalar::Prime(Fp { value, modulus: p }))
            }
        }
    }

    pub fn evaluate_rational(&self, vals: &BTreeMap<Variable, BigRational>) -> Result<BigRational> {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in &m.0 {
                let x = vals.get(&v).ok_or_else(|| Error::MissingVariable(format!("{v:?}")))?;
                t *= num_traits::pow(x.clone(), e as usize);
            }
            total += t;
        }
        Ok(total)
    }

    pub fn evaluate_mod(&self, vals: &BTreeMap<Variable, u64>, p: u64) -> Result<u64> {
        let mut total = 0u64;
        for (m, c) in &self.terms {
            let mut t = rational_mod(c, p)?;
            for &(v, e) in &m.0 {
                let x = *vals.get(&v).ok_or_else(|| Error::MissingVariable(format!("{v:?}")))?;
                t = mul_mod(t, pow_mod(x % p, e as u64, p), p);
            }
            total = add_mod(total, t, p);
        }
        Ok(total)
    }

    /// Canonical string form, largest term first.
    pub fn render(&self, labels: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coeff = if abs.is_integer() {
                abs.numer().to_string()
            } else {
                format!("{}/{}", abs.numer(), abs.denom())
            };
            if m.is_one() {
                out.push_str(&coeff);
            } else {
                if !abs.is_one() {
                    out.push_str(&coeff);
                    out.push('*');
                }
                out.push_str(&m.render(labels));
            }
        }
        out
    }

    /// Parses the canonical string form. Accepts any term order, `^`
    /// powers, integer or `p/q` coefficients and repeated monomials.
    pub fn parse(text: &str, labels: &[String]) -> Result<Polynomial> {
        Parser::new(text, labels).parse()
    }
}

impl fmt::Display for Polynomial {
    /// Renders with vertex indices counted from one.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.variables().iter().map(|v| v.i.max(v.j) + 1).max().unwrap_or(0);
        let labels: Vec<String> = (1..=n).map(|k| k.to_string()).collect();
        f.write_str(&self.render(&labels))
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += rhs;
        self
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl AddAssign for Polynomial {
    fn add_assign(&mut self, rhs: Polynomial) {
        if self.terms.len() < rhs.terms.len() {
            let lhs = std::mem::replace(self, rhs);
            for (m, c) in lhs.terms {
                self.add_term(m, c);
            }
        } else {
            for (m, c) in rhs.terms {
                self.add_term(m, c);
            }
        }
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        self -= &rhs;
        self
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

/// Element of `Z/pZ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp {
    pub value: u64,
    pub modulus: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Rational(BigRational),
    Prime(Fp),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Prime(x) => x.value == 0,
        }
    }

    /// `p/q` for rationals, `v mod m` for field elements.
    pub fn render(&self) -> String {
        match self {
            Scalar::Rational(q) => rational_string(q),
            Scalar::Prime(x) => format!("{} mod {}", x.value, x.modulus),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Rational,
    Prime(u64),
}

/// Values for variables, all rational or all in one prime field.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment {
    pub values: BTreeMap<Variable, Scalar>,
}

impl Assignment {
    pub fn rational(values: impl IntoIterator<Item = (Variable, BigRational)>) -> Self {
        Assignment {
            values: values.into_iter().map(|(v, q)| (v, Scalar::Rational(q))).collect(),
        }
    }

    pub fn prime(modulus: u64, values: impl IntoIterator<Item = (Variable, u64)>) -> Self {
        Assignment {
            values: values
                .into_iter()
                .map(|(v, x)| {
                    (
                        v,
                        Scalar::Prime(Fp {
                            value: x % modulus,
                            modulus,
                        }),
                    )
                })
                .collect(),
        }
    }

    /// Common domain of the values; `None` when empty.
    pub fn domain(&self) -> Result<Option<Domain>> {
        let mut dom: Option<Domain> = None;
        for s in self.values.values() {
            let d = match s {
                Scalar::Rational(_) => Domain::Rational,
                Scalar::Prime(x) => Domain::Prime(x.modulus),
            };
            match dom {
                None => dom = Some(d),
                Some(prev) if prev != d => {
                    let m = |d: Domain| match d {
                        Domain::Rational => 0,
                        Domain::Prime(p) => p,
                    };
                    return Err(Error::ModulusMismatch {
                        expected: m(prev),
                        found: m(d),
                    });
                }
                _ => {}
            }
        }
        Ok(dom)
    }
}

pub fn rational_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::InvalidArgument(format!("not a rational number: `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Image of a rational in `Z/pZ`; `p` must be prime and not divide the denominator.
pub fn rational_mod(q: &BigRational, p: u64) -> Result<u64> {
    let pm = BigInt::from(p);
    let n = q.numer().mod_floor(&pm).to_u64().expect("reduced below p");
    let d = q.denom().mod_floor(&pm).to_u64().expect("reduced below p");
    if d == 0 {
        return Err(Error::InvalidArgument(format!(
            "denominator of {} vanishes modulo {p}",
            rational_string(q)
        )));
    }
    Ok(mul_mod(n, pow_mod(d, p - 2, p), p))
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    labels: &'a [String],
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, labels: &'a [String]) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            labels,
            text,
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::PolySyntax(format!("{what} at offset {} in `{}`", self.pos, self.text.trim()))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<Polynomial> {
        let mut out = Polynomial::zero();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                None if !first => break,
                None => return Err(self.err("empty polynomial")),
                Some('+') => {
                    self.pos += 1;
                    BigRational::one()
                }
                Some('-') => {
                    self.pos += 1;
                    -BigRational::one()
                }
                Some(_) if first => BigRational::one(),
                Some(_) => return Err(self.err("expected `+` or `-`")),
            };
            first = false;
            let (m, c) = self.term()?;
            out.add_term(m, c * sign);
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Monomial, BigRational)> {
        let mut coeff = BigRational::one();
        let mut factors = Vec::new();
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => coeff *= self.number()?,
                Some('s') | Some('l') | Some('w') => {
                    let v = self.variable()?;
                    let e = if self.peek() == Some('^') {
                        self.pos += 1;
                        self.skip_ws();
                        self.integer()?.to_u32().ok_or_else(|| self.err("exponent too large"))?
                    } else {
                        1
                    };
                    factors.push((v, e));
                }
                _ => return Err(self.err("expected a number or variable")),
            }
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((Monomial::from_factors(factors), coeff))
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits"))
    }

    fn number(&mut self) -> Result<BigRational> {
        let n = self.integer()?;
        if self.peek() == Some('/') {
            self.pos += 1;
            self.skip_ws();
            let d = self.integer()?;
            if d.is_zero() {
                return Err(self.err("zero denominator"));
            }
            Ok(BigRational::new(n, d))
        } else {
            Ok(BigRational::from_integer(n))
        }
    }

    fn variable(&mut self) -> Result<Variable> {
        let kind = match self.chars[self.pos] {
            's' => VarKind::Sigma,
            'l' => VarKind::Lambda,
            _ => VarKind::Omega,
        };
        self.pos += 1;
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_')
        {
            self.pos += 1;
        }
        let body: String = self.chars[start..self.pos].iter().collect();
        let find = |s: &str| self.labels.iter().position(|l| l == s);
        let (i, j) = if let Some((a, b)) = body.split_once('_') {
            match (find(a), find(b)) {
                (Some(i), Some(j)) => (i, j),
                _ => return Err(self.err(&format!("unknown vertex in variable `{body}`"))),
            }
        } else {
            let splits: Vec<(usize, usize)> = body
                .char_indices()
                .skip(1)
                .filter_map(|(k, _)| Some((find(&body[..k])?, find(&body[k..])?)))
                .collect();
            match splits.as_slice() {
                [one] => *one,
                [] => return Err(self.err(&format!("cannot split variable `{body}` into two vertices"))),
                _ => return Err(self.err(&format!("ambiguous variable `{body}`; use `_`"))),
            }
        };
        Ok(match kind {
            VarKind::Sigma => Variable::sigma(i, j),
            VarKind::Lambda => Variable::lambda(i, j),
            VarKind::Omega => Variable::omega(i, j),
        })
    }
}
