//! Sparse multivariate polynomials with exact rational coefficients over the
//! three variable families this toolkit works in:
//!
//! * `a_i`   — vertex parameters of the shortest-path monomial map,
//! * `k_ij`  — concentration-matrix entries (`k_ii` diagonal, `k_ij` edges),
//! * `s_ij`  — covariance coordinates σ_ij, `i <= j`.
//!
//! Term orders are weight functions refined by graded reverse lexicographic
//! comparison on the fixed variable sequence `a_1 < a_2 < ... < k_11 < k_12
//! < ... < s_11 < ...`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// Exact integer as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Exact fraction `n/d`.
pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// A variable. The derived order is the canonical sequence: all `a_i` first,
/// then `k_ij` lexicographically, then `s_ij` lexicographically.
///
/// Symmetric indices are always stored with `i <= j`; use [`Var::k`] and
/// [`Var::s`] rather than the raw constructors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    A(u32),
    K(u32, u32),
    S(u32, u32),
}

impl Var {
    pub fn a(i: usize) -> Var {
        Var::A(i as u32)
    }

    pub fn k(i: usize, j: usize) -> Var {
        let (i, j) = (i.min(j) as u32, i.max(j) as u32);
        Var::K(i, j)
    }

    pub fn s(i: usize, j: usize) -> Var {
        let (i, j) = (i.min(j) as u32, i.max(j) as u32);
        Var::S(i, j)
    }

    /// True for `k_ii`.
    pub fn is_diagonal_k(&self) -> bool {
        matches!(self, Var::K(i, j) if i == j)
    }

    /// JSON form: `["a", 1]`, `["k", 1, 2]`, `["s", 3, 3]`.
    pub fn to_json(&self) -> serde_json::Value {
        match *self {
            Var::A(i) => serde_json::json!(["a", i]),
            Var::K(i, j) => serde_json::json!(["k", i, j]),
            Var::S(i, j) => serde_json::json!(["s", i, j]),
        }
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Var> {
        let arr = v.as_array().ok_or_else(|| Error::Parse(format!("variable {v} not a list")))?;
        let fam = arr.first().and_then(|f| f.as_str());
        let idx = |k: usize| -> Result<usize> {
            arr.get(k)
                .and_then(|x| x.as_u64())
                .map(|x| x as usize)
                .ok_or_else(|| Error::Parse(format!("bad variable index in {v}")))
        };
        match (fam, arr.len()) {
            (Some("a"), 2) => Ok(Var::a(idx(1)?)),
            (Some("k"), 3) => Ok(Var::k(idx(1)?, idx(2)?)),
            (Some("s"), 3) => Ok(Var::s(idx(1)?, idx(2)?)),
            _ => Err(Error::Parse(format!("unrecognized variable {v}"))),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Var::A(i) => write!(f, "a{i}"),
            Var::K(i, j) | Var::S(i, j) => {
                let c = if matches!(self, Var::K(..)) { 'k' } else { 's' };
                if j <= 9 {
                    write!(f, "{c}{i}{j}")
                } else {
                    write!(f, "{c}{i}_{j}")
                }
            }
        }
    }
}

impl FromStr for Var {
    type Err = Error;

    /// Accepts `a3`, `k12`, `s34`, and the underscore form `k3_14` required
    /// once an index passes 9.
    fn from_str(s: &str) -> Result<Var> {
        let bad = || Error::Parse(format!("bad variable name {s:?}"));
        let mut chars = s.chars();
        let fam = chars.next().ok_or_else(bad)?;
        let rest = chars.as_str();
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        match fam {
            'a' => Ok(Var::a(num(rest)?)),
            'k' | 's' => {
                let (i, j) = if let Some((l, r)) = rest.split_once('_') {
                    (num(l)?, num(r)?)
                } else if rest.len() == 2 {
                    (num(&rest[..1])?, num(&rest[1..])?)
                } else {
                    return Err(bad());
                };
                if i == 0 || j == 0 {
                    return Err(bad());
                }
                Ok(if fam == 'k' { Var::k(i, j) } else { Var::s(i, j) })
            }
            _ => Err(bad()),
        }
    }
}

/// A monomial: sorted `(variable, exponent)` pairs, every exponent positive.
/// The derived `Ord` is only a storage order — monomial *term* comparison
/// lives in [`TermOrder`] and [`grevlex_cmp`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Monomial {
        Monomial(vec![(v, 1)])
    }

    /// Normalizes arbitrary pairs: sorts, merges repeats, drops zeros.
    pub fn from_pairs<I: IntoIterator<Item = (Var, u32)>>(pairs: I) -> Monomial {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        Monomial(map.into_iter().collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .binary_search_by_key(&v, |&(w, _)| w)
            .map_or(0, |idx| self.0[idx].1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.0.iter().copied()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().map(|&(v, _)| v)
    }

    /// Total exponent carried by diagonal `k_ii` variables.
    pub fn diagonal_k_degree(&self) -> u32 {
        self.0.iter().filter(|(v, _)| v.is_diagonal_k()).map(|&(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut x, mut y) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (x.peek(), y.peek()) {
                (Some(&&(vx, ex)), Some(&&(vy, ey))) => match vx.cmp(&vy) {
                    Ordering::Less => {
                        out.push((vx, ex));
                        x.next();
                    }
                    Ordering::Greater => {
                        out.push((vy, ey));
                        y.next();
                    }
                    Ordering::Equal => {
                        out.push((vx, ex + ey));
                        x.next();
                        y.next();
                    }
                },
                (Some(&&p), None) => {
                    out.push(p);
                    x.next();
                }
                (None, Some(&&p)) => {
                    out.push(p);
                    y.next();
                }
                (None, None) => return Monomial(out),
            }
        }
    }

    pub fn pow(&self, e: u32) -> Monomial {
        Monomial(self.0.iter().map(|&(v, x)| (v, x * e)).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|&(v, e)| other.exponent(v) >= e)
    }

    /// `other / self` when `self` divides it.
    pub fn try_div_into(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(
            other
                .0
                .iter()
                .filter_map(|&(v, e)| {
                    let r = e - self.exponent(v);
                    (r > 0).then_some((v, r))
                })
                .collect(),
        ))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let vars: BTreeSet<Var> = self.vars().chain(other.vars()).collect();
        Monomial(
            vars.into_iter()
                .map(|v| (v, self.exponent(v).max(other.exponent(v))))
                .collect(),
        )
    }

    pub fn is_coprime_with(&self, other: &Monomial) -> bool {
        self.vars().all(|v| other.exponent(v) == 0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (idx, (v, e)) in self.0.iter().enumerate() {
            if idx > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Graded reverse lexicographic comparison on the canonical variable
/// sequence: higher total degree wins; on a degree tie the exponent vectors
/// are scanned from the *largest* variable downward, and at the first
/// difference the monomial with the *smaller* exponent is the greater one.
pub fn grevlex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    match a.degree().cmp(&b.degree()) {
        Ordering::Equal => {}
        ord => return ord,
    }
    let (mut ia, mut ib) = (a.0.len(), b.0.len());
    loop {
        let (ea, eb) = match (ia.checked_sub(1).map(|k| a.0[k]), ib.checked_sub(1).map(|k| b.0[k]))
        {
            (None, None) => return Ordering::Equal,
            (Some((va, ea)), Some((vb, _))) if va > vb => {
                ia -= 1;
                (ea, 0)
            }
            (Some((va, _)), Some((vb, eb))) if vb > va => {
                ib -= 1;
                (0, eb)
            }
            (Some((_, ea)), Some((_, eb))) => {
                ia -= 1;
                ib -= 1;
                (ea, eb)
            }
            (Some((_, ea)), None) => {
                ia -= 1;
                (ea, 0)
            }
            (None, Some((_, eb))) => {
                ib -= 1;
                (0, eb)
            }
        };
        if ea != eb {
            return if ea < eb { Ordering::Greater } else { Ordering::Less };
        }
    }
}

/// A term order: an integer weight per variable (default 0), ties broken by
/// grevlex. With no weights at all this *is* grevlex.
#[derive(Debug, Clone, Default)]
pub struct TermOrder {
    weights: BTreeMap<Var, i64>,
}

impl TermOrder {
    pub fn grevlex() -> TermOrder {
        TermOrder::default()
    }

    pub fn with_weights<I: IntoIterator<Item = (Var, i64)>>(weights: I) -> TermOrder {
        TermOrder { weights: weights.into_iter().collect() }
    }

    /// Weight 1 on every diagonal `k_ii`, `i <= n`: the order that makes a
    /// diagonally-dominant term lead.
    pub fn diagonal(n: usize) -> TermOrder {
        TermOrder::with_weights((1..=n).map(|i| (Var::k(i, i), 1)))
    }

    pub fn weight_of(&self, v: Var) -> i64 {
        self.weights.get(&v).copied().unwrap_or(0)
    }

    pub fn weight(&self, m: &Monomial) -> i64 {
        m.iter().map(|(v, e)| self.weight_of(v) * i64::from(e)).sum()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        if self.weights.is_empty() {
            return grevlex_cmp(a, b);
        }
        self.weight(a).cmp(&self.weight(b)).then_with(|| grevlex_cmp(a, b))
    }
}

/// Sparse polynomial: monomial → nonzero rational coefficient.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rat>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial::default()
    }

    pub fn one() -> Polynomial {
        Polynomial::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Polynomial {
        Polynomial::from_term(Monomial::one(), c)
    }

    pub fn var(v: Var) -> Polynomial {
        Polynomial::from_term(Monomial::var(v), Rat::one())
    }

    pub fn from_term(m: Monomial, c: Rat) -> Polynomial {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rat)>>(iter: I) -> Polynomial {
        let mut p = Polynomial::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    /// Terms sorted leading-first under `ord`.
    pub fn terms_sorted(&self, ord: &TermOrder) -> Vec<(&Monomial, &Rat)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(ma, _), (mb, _)| ord.cmp(mb, ma));
        v
    }

    pub fn support(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scalar_mul(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    pub fn monomial_mul(&self, m: &Monomial, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(t, k)| (t.mul(m), k * c)).collect() }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            for (t, k) in &other.terms {
                out.add_term(m.mul(t), c * k);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Leading term under `ord`; the zero polynomial has none.
    pub fn leading_term(&self, ord: &TermOrder) -> Result<(Monomial, Rat)> {
        self.terms
            .iter()
            .max_by(|(ma, _), (mb, _)| ord.cmp(ma, mb))
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or(Error::ZeroPolynomial)
    }

    /// Canonical representative of `{p, -p}`: grevlex-leading coefficient
    /// positive. Zero stays zero.
    pub fn sign_normalized(&self) -> Polynomial {
        match self.leading_term(&TermOrder::grevlex()) {
            Ok((_, c)) if c.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }

    /// Exact evaluation. Every variable in the support must be assigned.
    pub fn evaluate(&self, point: &BTreeMap<Var, Rat>) -> Result<Rat> {
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut val = c.clone();
            for (v, e) in m.iter() {
                let x = point.get(&v).ok_or_else(|| Error::MissingVariable(v.to_string()))?;
                for _ in 0..e {
                    val *= x;
                }
            }
            total += val;
        }
        Ok(total)
    }

    /// Polynomial substitution. Every variable in the support must be mapped.
    pub fn substitute(&self, images: &BTreeMap<Var, Polynomial>) -> Result<Polynomial> {
        let mut total = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut val = Polynomial::constant(c.clone());
            for (v, e) in m.iter() {
                let img =
                    images.get(&v).ok_or_else(|| Error::MissingVariable(v.to_string()))?;
                val = val.mul(&img.pow(e));
            }
            total = total.add(&val);
        }
        Ok(total)
    }

    /// Text form, e.g. `-1*k11*k22*k34 + 1*k12^2*k34`: terms grevlex-descending,
    /// explicit coefficients, factors in variable order.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// JSON form: a list of `{"coeff": "p/q", "vars": [["s",1,3], ...]}`
    /// objects, terms grevlex-descending, one entry per unit of exponent.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms_sorted(&TermOrder::grevlex())
            .into_iter()
            .map(|(m, c)| {
                let vars: Vec<serde_json::Value> = m
                    .iter()
                    .flat_map(|(v, e)| std::iter::repeat(v.to_json()).take(e as usize))
                    .collect();
                serde_json::json!({ "coeff": c.to_string(), "vars": vars })
            })
            .collect();
        serde_json::Value::Array(terms)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Polynomial> {
        let arr =
            v.as_array().ok_or_else(|| Error::Parse("polynomial JSON must be a list".into()))?;
        let mut p = Polynomial::zero();
        for term in arr {
            let coeff = term
                .get("coeff")
                .and_then(|c| c.as_str())
                .ok_or_else(|| Error::Parse(format!("term {term} lacks a coeff string")))?;
            let coeff = Rat::from_str(coeff)
                .map_err(|e| Error::Parse(format!("bad coefficient {coeff:?}: {e}")))?;
            let vars = term
                .get("vars")
                .and_then(|x| x.as_array())
                .ok_or_else(|| Error::Parse(format!("term {term} lacks a vars list")))?;
            let mono = Monomial::from_pairs(
                vars.iter()
                    .map(|x| Var::from_json(x).map(|v| (v, 1)))
                    .collect::<Result<Vec<_>>>()?,
            );
            p.add_term(mono, coeff);
        }
        Ok(p)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms_sorted(&TermOrder::grevlex()).into_iter().enumerate() {
            let (sep, shown) = if idx == 0 {
                ("", c.clone())
            } else if c.is_negative() {
                (" - ", -c)
            } else {
                (" + ", c.clone())
            };
            if m.is_one() {
                write!(f, "{sep}{shown}")?;
            } else {
                write!(f, "{sep}{shown}*{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    /// Parses the text form: signed terms of `coeff*factor*...` with `^`
    /// exponents; bare monomials (no written coefficient) and bare rational
    /// constants are fine. Example: `-k12*k33*k44 + 1/2*k12*k34^2 + 3`.
    fn from_str(s: &str) -> Result<Polynomial> {
        let mut p = Polynomial::zero();
        let mut chars = s.chars().peekable();
        let mut sign = Rat::one();
        let mut started = false;
        loop {
            // One term per iteration; `sign` carries the +/- seen before it.
            while chars.peek().is_some_and(|c| c.is_whitespace()) {
                chars.next();
            }
            let Some(&first) = chars.peek() else {
                if !started {
                    return Err(Error::Parse("empty polynomial".into()));
                }
                return Ok(p);
            };
            if first == '+' || first == '-' {
                chars.next();
                if first == '-' {
                    sign = -sign;
                }
                continue;
            }
            started = true;
            let mut coeff = sign.clone();
            sign = Rat::one();
            let mut mono = Monomial::one();
            // factor (*factor)*
            loop {
                while chars.peek().is_some_and(|c| c.is_whitespace()) {
                    chars.next();
                }
                let Some(&c) = chars.peek() else { break };
                if c.is_ascii_digit() {
                    let mut num = String::new();
                    while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                        num.push(chars.next().unwrap());
                    }
                    let mut val = Rat::from_str(&num)
                        .map_err(|e| Error::Parse(format!("bad number {num:?}: {e}")))?;
                    if chars.peek() == Some(&'/') {
                        chars.next();
                        let mut den = String::new();
                        while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                            den.push(chars.next().unwrap());
                        }
                        let den = Rat::from_str(&den)
                            .map_err(|e| Error::Parse(format!("bad denominator {den:?}: {e}")))?;
                        if den.is_zero() {
                            return Err(Error::Parse("division by zero".into()));
                        }
                        val /= den;
                    }
                    coeff *= val;
                } else if c.is_ascii_alphabetic() {
                    let mut name = String::from(chars.next().unwrap());
                    while chars.peek().is_some_and(|c| c.is_ascii_digit() || *c == '_') {
                        name.push(chars.next().unwrap());
                    }
                    let var: Var = name.parse()?;
                    let mut exp = 1u32;
                    if chars.peek() == Some(&'^') {
                        chars.next();
                        let mut e = String::new();
                        while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                            e.push(chars.next().unwrap());
                        }
                        exp = e
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad exponent after {name}^")))?;
                    }
                    mono = mono.mul(&Monomial::from_pairs([(var, exp)]));
                } else {
                    return Err(Error::Parse(format!("unexpected character {c:?}")));
                }
                while chars.peek().is_some_and(|c| c.is_whitespace()) {
                    chars.next();
                }
                if chars.peek() == Some(&'*') {
                    chars.next();
                } else {
                    break;
                }
            }
            p.add_term(mono, coeff);
        }
    }
}

/// The σ variables of an `n`-vertex model: `s_ij` for `1 <= i <= j <= n`,
/// lexicographic. This is the column order of every exponent matrix.
pub fn sigma_vars(n: usize) -> Vec<Var> {
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for i in 1..=n {
        for j in i..=n {
            out.push(Var::s(i, j));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn var_normalization_and_order() {
        assert_eq!(Var::k(4, 2), Var::k(2, 4));
        assert_eq!(Var::s(3, 3), Var::S(3, 3));
        assert!(Var::a(9) < Var::k(1, 1));
        assert!(Var::k(12, 12) < Var::s(1, 1));
        assert!(Var::k(1, 3) < Var::k(2, 3));
        assert!(Var::s(1, 1) < Var::s(1, 2));
    }

    #[test]
    fn var_names_round_trip() {
        for v in [Var::a(7), Var::a(12), Var::k(3, 4), Var::k(3, 14), Var::s(11, 12)] {
            assert_eq!(v.to_string().parse::<Var>().unwrap(), v);
        }
        assert_eq!("k3_14".parse::<Var>().unwrap(), Var::k(3, 14));
        assert!("k123".parse::<Var>().is_err());
        assert!("b2".parse::<Var>().is_err());
        assert!("k0_2".parse::<Var>().is_err());
    }

    #[test]
    fn monomial_arithmetic() {
        let m = Monomial::from_pairs([(Var::k(1, 2), 2), (Var::k(3, 4), 1)]);
        assert_eq!(m.degree(), 3);
        assert_eq!(m.exponent(Var::k(1, 2)), 2);
        assert_eq!(m.exponent(Var::k(9, 9)), 0);
        assert_eq!(m.to_string(), "k12^2*k34");

        let d = Monomial::var(Var::k(1, 2));
        assert_eq!(d.try_div_into(&m).unwrap().to_string(), "k12*k34");
        assert!(m.try_div_into(&d).is_none());
        assert_eq!(
            Monomial::var(Var::s(1, 1)).lcm(&Monomial::var(Var::s(2, 2))).to_string(),
            "s11*s22"
        );
        assert!(Monomial::var(Var::s(1, 1)).is_coprime_with(&Monomial::var(Var::s(2, 2))));
        assert!(!m.is_coprime_with(&d));
        assert_eq!(m.diagonal_k_degree(), 0);
        assert_eq!(Monomial::from_pairs([(Var::k(2, 2), 3)]).diagonal_k_degree(), 3);
    }

    #[test]
    fn grevlex_basics() {
        let x1 = Monomial::var(Var::s(1, 1));
        let x2 = Monomial::var(Var::s(1, 2));
        // Degree dominates.
        assert_eq!(grevlex_cmp(&x1.mul(&x1), &x2), Ordering::Greater);
        // Classic: x1^2 > x1*x2 > x2^2.
        assert_eq!(grevlex_cmp(&x1.pow(2), &x1.mul(&x2)), Ordering::Greater);
        assert_eq!(grevlex_cmp(&x1.mul(&x2), &x2.pow(2)), Ordering::Greater);
        // s13*s34 vs s14*s33: the larger variable s34 appears only on the
        // left, so the left is smaller.
        let l = Monomial::var(Var::s(1, 3)).mul(&Monomial::var(Var::s(3, 4)));
        let r = Monomial::var(Var::s(1, 4)).mul(&Monomial::var(Var::s(3, 3)));
        assert_eq!(grevlex_cmp(&l, &r), Ordering::Less);
    }

    #[test]
    fn weighted_order_refines_grevlex() {
        let ord = TermOrder::diagonal(4);
        let f44 = p("k11*k22*k33 - k11*k23^2 - k12^2*k33 + 2*k12*k13*k23 - k13^2*k22");
        let (lead, c) = f44.leading_term(&ord).unwrap();
        assert_eq!(lead.to_string(), "k11*k22*k33");
        assert_eq!(c, rat(1));
        // Without weights the same polynomial leads elsewhere.
        let (lead, _) = f44.leading_term(&TermOrder::grevlex()).unwrap();
        assert_ne!(lead.to_string(), "k11*k22*k33");
        assert!(Polynomial::zero().leading_term(&ord).is_err());
    }

    #[test]
    fn ring_identities() {
        let f = p("s13*s34 - s14*s33");
        let g = p("s14*s33");
        assert_eq!(f.add(&g), p("s13*s34"));
        assert_eq!(f.sub(&f), Polynomial::zero());
        assert_eq!(f.mul(&Polynomial::zero()), Polynomial::zero());
        assert_eq!(f.mul(&Polynomial::one()), f);
        let h = p("s11 + 2*s12");
        assert_eq!(f.mul(&h), h.mul(&f));
        assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
        assert_eq!(h.pow(2), p("s11^2 + 4*s11*s12 + 4*s12^2"));
        assert_eq!(f.scalar_mul(&rat_frac(1, 2)), p("1/2*s13*s34 - 1/2*s14*s33"));
    }

    #[test]
    fn display_and_parse_round_trip() {
        let f = p("-1*k34*k11*k22 + 1*k34*k12^2");
        assert_eq!(f.to_string(), "1*k12^2*k34 - 1*k11*k22*k34");
        assert_eq!(p(&f.to_string()), f);
        // Coefficient-free monomials and fractions parse too.
        assert_eq!(p("k12*k12 - 1/3"), p("-1/3 + k12^2"));
        assert_eq!(p("0*s11"), Polynomial::zero());
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert!("".parse::<Polynomial>().is_err());
        assert!("s11 +".parse::<Polynomial>().is_ok_and(|q| q == p("s11")));
        assert!("x11".parse::<Polynomial>().is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = p("-1*s13*s24 + s14*s23 + 5/3*s11^2");
        let v = f.to_json();
        assert_eq!(Polynomial::from_json(&v).unwrap(), f);
        let text = serde_json::to_string(&v).unwrap();
        let back: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(Polynomial::from_json(&back).unwrap(), f);
        // Spot-check the shape of the first (leading) term.
        let first = &v.as_array().unwrap()[0];
        assert_eq!(first["coeff"], "5/3");
        assert_eq!(first["vars"], serde_json::json!([["s", 1, 1], ["s", 1, 1]]));
    }

    #[test]
    fn evaluation_and_substitution() {
        let f = p("s13*s34 - s14*s33");
        let point: BTreeMap<Var, Rat> = [
            (Var::s(1, 3), rat(2)),
            (Var::s(3, 4), rat(5)),
            (Var::s(1, 4), rat(3)),
            (Var::s(3, 3), rat(4)),
        ]
        .into_iter()
        .collect();
        assert_eq!(f.evaluate(&point).unwrap(), rat(-2));
        let missing: BTreeMap<Var, Rat> = BTreeMap::new();
        assert!(matches!(f.evaluate(&missing), Err(Error::MissingVariable(_))));

        let images: BTreeMap<Var, Polynomial> = [
            (Var::s(1, 3), p("k11")),
            (Var::s(3, 4), p("k22")),
            (Var::s(1, 4), p("k11")),
            (Var::s(3, 3), p("k22")),
        ]
        .into_iter()
        .collect();
        assert_eq!(f.substitute(&images).unwrap(), Polynomial::zero());
    }

    #[test]
    fn sign_normalization() {
        let f = p("s13*s24 - s14*s23");
        assert_eq!(f.sign_normalized(), f.neg().sign_normalized());
        assert_eq!(Polynomial::zero().sign_normalized(), Polynomial::zero());
    }

    #[test]
    fn sigma_variable_grid() {
        assert_eq!(
            sigma_vars(3),
            vec![
                Var::s(1, 1),
                Var::s(1, 2),
                Var::s(1, 3),
                Var::s(2, 2),
                Var::s(2, 3),
                Var::s(3, 3)
            ]
        );
        assert_eq!(sigma_vars(7).len(), 28);
    }
}
