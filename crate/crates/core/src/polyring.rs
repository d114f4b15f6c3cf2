//! Sparse multivariate polynomials over GF(p) in grevlex order.
//!
//! A [`Ring`] fixes the variable count, the field and which quotient by the
//! field equations is in force. The graded quotient sets `x_i^q = 0`, the
//! affine quotient sets `x_i^q = x_i`; the two are never mixed.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::FieldSpec;

/// Exponent vector with one byte per variable and its cached total degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[u8]>,
    degree: u32,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial {
            exps: vec![0; n].into_boxed_slice(),
            degree: 0,
        }
    }

    pub fn new(exps: Vec<u8>) -> Self {
        let degree = exps.iter().map(|&e| u32::from(e)).sum();
        Monomial {
            exps: exps.into_boxed_slice(),
            degree,
        }
    }

    /// The variable `x_{i+1}` (zero-based index `i`).
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial::new(e)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    #[inline]
    pub fn exps(&self) -> &[u8] {
        &self.exps
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u8 {
        self.exps[i]
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.n(), other.n());
        let exps: Vec<u8> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        Monomial {
            exps: exps.into_boxed_slice(),
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial::new(
            other.exps.iter().zip(self.exps.iter()).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        parts.join("*")
    }
}

/// Standard graded reverse lexicographic comparison with `x1 > x2 > ... > xn`.
pub fn grevlex_compare(a: &Monomial, b: &Monomial) -> Result<Ordering> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch(format!(
            "monomials in {} and {} variables",
            a.n(),
            b.n()
        )));
    }
    Ok(grevlex(a, b))
}

#[inline]
fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    match a.degree.cmp(&b.degree) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.exps.iter().zip(b.exps.iter()).rev() {
        match x.cmp(y) {
            Ordering::Equal => {}
            // smaller exponent in the last differing variable is larger
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex(self, other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&default_names(self.n())))
    }
}

/// The only supported term order.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TermOrder {
    #[default]
    Grevlex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quotient {
    /// The full polynomial ring.
    None,
    /// `x_i^q = 0`.
    Graded,
    /// `x_i^q = x_i`.
    Affine,
}

/// Variable count, coefficient field and quotient regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ring {
    pub n: usize,
    pub field: FieldSpec,
    pub quotient: Quotient,
}

impl Ring {
    /// The regime follows from the field flag and homogeneity: field
    /// equations act as `x^q = 0` on homogeneous systems and `x^q = x` otherwise.
    pub fn new(n: usize, field: FieldSpec, homogeneous: bool) -> Self {
        let quotient = match (field.field_equations(), homogeneous) {
            (false, _) => Quotient::None,
            (true, true) => Quotient::Graded,
            (true, false) => Quotient::Affine,
        };
        Ring { n, field, quotient }
    }

    pub fn free(n: usize, field: FieldSpec) -> Self {
        Ring {
            n,
            field: field.with_field_equations(false).expect("disabling is always valid"),
            quotient: Quotient::None,
        }
    }

    pub fn with_quotient(self, quotient: Quotient) -> Self {
        Ring { quotient, ..self }
    }

    /// Largest exponent a reduced monomial may carry.
    pub fn max_exp(&self) -> Option<u8> {
        match self.quotient {
            Quotient::None => None,
            _ => Some(u8::try_from(self.field.p() - 1).unwrap_or(u8::MAX)),
        }
    }

    /// Reduce a monomial into the quotient; `None` when it vanishes.
    pub fn reduce_monomial(&self, m: Monomial) -> Option<Monomial> {
        let q = u64::from(self.field.p());
        match self.quotient {
            Quotient::None => Some(m),
            Quotient::Graded => {
                if m.exps.iter().any(|&e| u64::from(e) >= q) {
                    None
                } else {
                    Some(m)
                }
            }
            Quotient::Affine => {
                if m.exps.iter().all(|&e| u64::from(e) < q) {
                    return Some(m);
                }
                let exps = m
                    .exps
                    .iter()
                    .map(|&e| {
                        let e = u64::from(e);
                        if e < q {
                            e as u8
                        } else {
                            ((e - 1) % (q - 1) + 1) as u8
                        }
                    })
                    .collect();
                Some(Monomial::new(exps))
            }
        }
    }

    pub fn graded_component_dim(&self, d: usize) -> u64 {
        component_dim(self.n, d, self.max_exp())
    }

    pub fn monomials_of_degree(&self, d: usize, restrict_to: Option<&[usize]>) -> Vec<Monomial> {
        enumerate_monomials(self.n, d, self.max_exp(), restrict_to)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial {
            ring: *self,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> Polynomial {
        self.constant(1)
    }

    pub fn constant(&self, c: i64) -> Polynomial {
        self.term(c, Monomial::one(self.n))
    }

    pub fn var(&self, i: usize) -> Polynomial {
        self.term(1, Monomial::var(self.n, i))
    }

    pub fn term(&self, c: i64, m: Monomial) -> Polynomial {
        let mut p = self.zero();
        p.add_term(m, self.field.reduce(c));
        p
    }

    /// Build from `(coefficient, exponent vector)` pairs.
    pub fn poly(&self, terms: &[(i64, &[u8])]) -> Polynomial {
        let mut p = self.zero();
        for (c, e) in terms {
            assert_eq!(e.len(), self.n, "exponent vector length");
            p.add_term(Monomial::new(e.to_vec()), self.field.reduce(*c));
        }
        p
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        parse_polynomial(self, text)
    }
}

pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    u64::try_from(acc).unwrap_or(u64::MAX)
}

fn component_dim(n: usize, d: usize, max_exp: Option<u8>) -> u64 {
    match max_exp {
        None => {
            if n == 0 {
                return u64::from(d == 0);
            }
            binomial((n + d - 1) as u64, d as u64)
        }
        Some(cap) => {
            let cap = usize::from(cap);
            // coefficient of t^d in (1 + t + ... + t^cap)^n
            let mut counts = vec![0u128; d + 1];
            counts[0] = 1;
            for _ in 0..n {
                let mut next = vec![0u128; d + 1];
                for (j, &c) in counts.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for e in 0..=cap.min(d - j) {
                        next[j + e] = next[j + e].saturating_add(c);
                    }
                }
                counts = next;
            }
            u64::try_from(counts[d]).unwrap_or(u64::MAX)
        }
    }
}

/// Number of degree-`d` monomials of the ambient ring: `binom(n+d-1, d)`
/// without field equations, the `t^d` coefficient of `(1+...+t^(q-1))^n` with them.
pub fn graded_component_dim(n: usize, d: usize, field: &FieldSpec) -> u64 {
    let cap = field
        .field_equations()
        .then(|| u8::try_from(field.p() - 1).unwrap_or(u8::MAX));
    component_dim(n, d, cap)
}

/// All degree-`d` monomials, grevlex descending. `restrict_to` limits the
/// variables that may appear.
pub fn monomials_of_degree(
    n: usize,
    d: usize,
    field: &FieldSpec,
    restrict_to: Option<&[usize]>,
) -> Vec<Monomial> {
    let cap = field
        .field_equations()
        .then(|| u8::try_from(field.p() - 1).unwrap_or(u8::MAX));
    enumerate_monomials(n, d, cap, restrict_to)
}

fn enumerate_monomials(
    n: usize,
    d: usize,
    cap: Option<u8>,
    restrict_to: Option<&[usize]>,
) -> Vec<Monomial> {
    let allowed: Vec<usize> = match restrict_to {
        Some(vars) => {
            let mut v = vars.to_vec();
            v.sort_unstable();
            v.dedup();
            v
        }
        None => (0..n).collect(),
    };
    let cap = cap.map_or(d, usize::from);
    let mut out = Vec::new();
    let mut exps = vec![0u8; n];
    fn go(
        k: usize,
        left: usize,
        allowed: &[usize],
        cap: usize,
        exps: &mut Vec<u8>,
        out: &mut Vec<Monomial>,
    ) {
        if k == allowed.len() {
            if left == 0 {
                out.push(Monomial::new(exps.clone()));
            }
            return;
        }
        let remaining_vars = allowed.len() - k - 1;
        for e in (0..=left.min(cap)).rev() {
            if left - e > remaining_vars * cap {
                continue;
            }
            exps[allowed[k]] = e as u8;
            go(k + 1, left - e, allowed, cap, exps, out);
        }
        exps[allowed[k]] = 0;
    }
    go(0, d, &allowed, cap, &mut exps, &mut out);
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    terms: BTreeMap<Monomial, u32>,
}

impl Polynomial {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn field(&self) -> &FieldSpec {
        &self.ring.field
    }

    pub fn n(&self) -> usize {
        self.ring.n
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

    /// Terms in grevlex-descending order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u32)> + '_ {
        self.terms.iter().rev().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> + '_ {
        self.terms.keys().rev()
    }

    /// Adds `c * m`, reducing `m` into the quotient first.
    pub fn add_term(&mut self, m: Monomial, c: u32) {
        let c = c % self.ring.field.p();
        if c == 0 {
            return;
        }
        let Some(m) = self.ring.reduce_monomial(m) else {
            return;
        };
        let f = self.ring.field;
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = f.add(*e.get(), c);
                if s == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn degree(&self) -> Result<usize> {
        self.terms
            .keys()
            .map(Monomial::degree)
            .max()
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn leading_coeff(&self) -> Option<u32> {
        self.terms.values().next_back().copied()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<()> {
        if self.ring.n != other.ring.n || self.ring.field.p() != other.ring.field.p() {
            return Err(Error::DimensionMismatch(format!(
                "GF({})[{} vars] vs GF({})[{} vars]",
                self.ring.field.p(),
                self.ring.n,
                other.ring.field.p(),
                other.ring.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(self.ring.field.neg(1))
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let f = self.ring.field;
        let c = c % f.p();
        if c == 0 {
            return self.ring.zero();
        }
        Polynomial {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, &v)| (m.clone(), f.mul(v, c))).collect(),
        }
    }

    /// Multiply by a monomial, reducing in the quotient.
    pub fn mul_monomial(&self, mu: &Monomial) -> Polynomial {
        let mut out = self.ring.zero();
        for (m, &c) in &self.terms {
            out.add_term(m.mul(mu), c);
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let f = self.ring.field;
        let mut out = self.ring.zero();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                out.add_term(a.mul(b), f.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: usize) -> Polynomial {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Homogeneous component of top degree.
    pub fn top_part(&self) -> Result<Polynomial> {
        let d = self.degree()?;
        Ok(self.homogeneous_component(d))
    }

    pub fn homogeneous_component(&self, d: usize) -> Polynomial {
        Polynomial {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, &c)| (m.clone(), c))
                .collect(),
        }
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) => self.scale(self.ring.field.inv(c).expect("nonzero")),
        }
    }

    /// Same terms, read in another ring with the same variable count.
    pub fn with_ring(&self, ring: Ring) -> Polynomial {
        let mut out = ring.zero();
        for (m, &c) in &self.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    /// Substitute zero for the listed variables.
    pub fn set_zero(&self, vars: &[usize]) -> Polynomial {
        Polynomial {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| vars.iter().all(|&v| m.exp(v) == 0))
                .map(|(m, &c)| (m.clone(), c))
                .collect(),
        }
    }

    /// Relabel variables: variable `i` becomes `map[i]` in a ring of `n` variables.
    pub fn remap(&self, ring: Ring, map: &[usize]) -> Polynomial {
        let mut out = ring.zero();
        for (m, &c) in &self.terms {
            let mut e = vec![0u8; ring.n];
            for (i, &x) in m.exps().iter().enumerate() {
                if x > 0 {
                    e[map[i]] += x;
                }
            }
            out.add_term(Monomial::new(e), c);
        }
        out
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms()
            .map(|(m, c)| match (c, m.is_one()) {
                (_, true) => c.to_string(),
                (1, false) => m.display_with(names),
                _ => format!("{}*{}", c, m.display_with(names)),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&default_names(self.ring.n)))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub fn poly_mul(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    f.mul(g)
}

pub fn top_part(f: &Polynomial) -> Result<Polynomial> {
    f.top_part()
}

fn parse_polynomial(ring: &Ring, text: &str) -> Result<Polynomial> {
    let err = |msg: String| Error::Parse { line: 0, msg };
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(err("empty polynomial".into()));
    }
    let mut out = ring.zero();
    if cleaned == "0" {
        return Ok(out);
    }
    // split into signed terms
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut negative = false;
    let mut cur = String::new();
    for ch in cleaned.chars() {
        match ch {
            '+' | '-' => {
                if cur.is_empty() {
                    if !terms.is_empty() || ch == '+' && negative {
                        return Err(err(format!("dangling '{ch}' in {text:?}")));
                    }
                    negative ^= ch == '-';
                    continue;
                }
                terms.push((negative, std::mem::take(&mut cur)));
                negative = ch == '-';
            }
            _ => cur.push(ch),
        }
    }
    if cur.is_empty() {
        return Err(err(format!("trailing operator in {text:?}")));
    }
    terms.push((negative, cur));

    let f = ring.field;
    for (neg, term) in terms {
        let mut coeff: u32 = 1;
        let mut exps = vec![0u8; ring.n];
        for factor in term.split('*') {
            if factor.is_empty() {
                return Err(err(format!("empty factor in {term:?}")));
            }
            if factor.chars().all(|c| c.is_ascii_digit()) {
                let v: u128 = factor
                    .parse()
                    .map_err(|_| err(format!("bad coefficient {factor:?}")))?;
                coeff = f.mul(coeff, (v % u128::from(f.p())) as u32);
                continue;
            }
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => (
                    b,
                    e.parse::<u8>()
                        .map_err(|_| err(format!("bad exponent in {factor:?}")))?,
                ),
                None => (factor, 1),
            };
            let idx = base
                .strip_prefix('x')
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|&i| i >= 1 && i <= ring.n)
                .ok_or_else(|| err(format!("unknown variable {base:?}")))?;
            exps[idx - 1] = exps[idx - 1]
                .checked_add(exp)
                .ok_or_else(|| err(format!("exponent overflow in {term:?}")))?;
        }
        if neg {
            coeff = f.neg(coeff);
        }
        out.add_term(Monomial::new(exps), coeff);
    }
    Ok(out)
}
