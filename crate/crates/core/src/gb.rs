//! Gröbner-basis machinery.
//!
//! Two independent pieces live here:
//!
//! * [`homogeneous_gb`] computes a degree-truncated Gröbner basis of a
//!   homogeneous ideal degree by degree (sparse linear algebra in the style
//!   of F4, Gebauer–Möller pair updates). It works in the free ring or in the
//!   graded quotient `x_i^q = 0` and yields the Hilbert function as a count
//!   of standard monomials. This is how large Hilbert series are obtained
//!   without materialising dense Macaulay matrices.
//! * [`groebner_check`] is a plain Buchberger criterion check (coprime
//!   leading-term skip only) on an explicit list of polynomials.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::ffield::FieldSpec;
use crate::polyring::{Monomial, Polynomial, Quotient, Ring};

/// Monic polynomial as grevlex-descending terms.
#[derive(Debug, Clone)]
struct GbPoly {
    terms: Vec<(Monomial, u32)>,
}

impl GbPoly {
    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Outcome of a truncated homogeneous Gröbner-basis run.
#[derive(Debug, Clone)]
pub struct TruncatedGb {
    /// `H(d)` for `d = 0..=D`.
    pub hilbert: Vec<u64>,
    /// `dim I_d` for `d = 0..=D`.
    pub ideal_dims: Vec<u64>,
    /// Leading monomials of the basis, including `x_i^q` in the graded quotient.
    pub leading: Vec<Monomial>,
    /// Basis polynomials (without the virtual `x_i^q` generators).
    pub basis: Vec<Polynomial>,
    /// True when no S-pair or generator is left above the truncation degree,
    /// so the basis is a full Gröbner basis.
    pub complete: bool,
}

struct Engine {
    n: usize,
    field: FieldSpec,
    cap: Option<u8>,
    g: Vec<GbPoly>,
    /// Elements that are virtual `x_i^q` generators.
    virtual_gen: Vec<bool>,
    lm_index: HashMap<Monomial, usize>,
    /// Memoised "some basis leading monomial divides this monomial".
    divisor_memo: HashMap<Monomial, Option<usize>>,
    pairs: Vec<Pair>,
}

impl Engine {
    fn new(n: usize, field: FieldSpec, cap: Option<u8>) -> Self {
        Engine {
            n,
            field,
            cap,
            g: Vec::new(),
            virtual_gen: Vec::new(),
            lm_index: HashMap::new(),
            divisor_memo: HashMap::new(),
            pairs: Vec::new(),
        }
    }

    fn in_ring(&self, m: &Monomial) -> bool {
        match self.cap {
            None => true,
            Some(c) => m.exps().iter().all(|&e| e <= c),
        }
    }

    /// `mult * g`, dropping monomials that vanish in the quotient.
    fn times(&self, mult: &Monomial, g: &GbPoly) -> Vec<(Monomial, u32)> {
        g.terms
            .iter()
            .map(|(m, c)| (m.mul(mult), *c))
            .filter(|(m, _)| self.in_ring(m))
            .collect()
    }

    /// Index of a basis element whose leading monomial divides `u`.
    fn divisor(&mut self, u: &Monomial) -> Option<usize> {
        if let Some(&i) = self.lm_index.get(u) {
            return Some(i);
        }
        if let Some(&r) = self.divisor_memo.get(u) {
            return r;
        }
        let mut found = None;
        for j in 0..self.n {
            if u.exp(j) == 0 {
                continue;
            }
            let mut e = u.exps().to_vec();
            e[j] -= 1;
            let down = Monomial::new(e);
            if let Some(i) = self.divisor(&down) {
                found = Some(i);
                break;
            }
        }
        self.divisor_memo.insert(u.clone(), found);
        found
    }

    fn add_element(&mut self, p: GbPoly, is_virtual: bool) {
        let h = self.g.len();
        let lm_h = p.lm().clone();
        // Memoised answers stay valid: they only exist for degrees up to the
        // current one, and a new leading monomial of that degree can only
        // divide itself, which `lm_index` answers first.
        self.lm_index.insert(lm_h.clone(), h);
        self.g.push(p);
        self.virtual_gen.push(is_virtual);
        self.update_pairs(h, &lm_h);
    }

    /// Gebauer–Möller update for a new element `h`.
    fn update_pairs(&mut self, h: usize, lm_h: &Monomial) {
        let mut cand: Vec<(usize, Monomial, bool)> = (0..h)
            .map(|g| {
                let lm_g = self.g[g].lm();
                (g, lm_h.lcm(lm_g), lm_h.is_coprime(lm_g))
            })
            .collect();
        // both virtual: x_i^q and x_j^q are coprime, nothing to do
        // criterion M: drop (h,g) if some (h,g') has lcm strictly dividing it
        let mut keep = vec![true; cand.len()];
        for a in 0..cand.len() {
            for b in 0..cand.len() {
                if a == b || !keep[b] {
                    continue;
                }
                if cand[b].1.divides(&cand[a].1) && cand[b].1 != cand[a].1 {
                    keep[a] = false;
                    break;
                }
            }
        }
        // criterion F: among equal lcms keep one, preferring a coprime one
        let mut by_lcm: HashMap<Monomial, usize> = HashMap::new();
        for a in 0..cand.len() {
            if !keep[a] {
                continue;
            }
            match by_lcm.get(&cand[a].1) {
                None => {
                    by_lcm.insert(cand[a].1.clone(), a);
                }
                Some(&b) => {
                    if cand[a].2 && !cand[b].2 {
                        keep[b] = false;
                        by_lcm.insert(cand[a].1.clone(), a);
                    } else {
                        keep[a] = false;
                    }
                }
            }
        }
        // chain criterion on old pairs
        self.pairs.retain(|p| {
            !(lm_h.divides(&p.lcm)
                && lm_h.lcm(self.g[p.i].lm()) != p.lcm
                && lm_h.lcm(self.g[p.j].lm()) != p.lcm)
        });
        for (a, (g, lcm, coprime)) in cand.drain(..).enumerate() {
            // criterion B: coprime leading monomials reduce to zero
            if keep[a] && !coprime {
                self.pairs.push(Pair { i: g, j: h, lcm });
            }
        }
    }

    /// One degree step: reduce S-pairs of degree `d` together with the
    /// degree-`d` generators; returns the number of new basis elements.
    fn step(&mut self, d: usize, gens: &[GbPoly]) -> usize {
        let (now, later): (Vec<Pair>, Vec<Pair>) =
            self.pairs.drain(..).partition(|p| p.lcm.degree() == d);
        self.pairs = later;
        let mut todo: Vec<Vec<(Monomial, u32)>> = Vec::new();
        for p in &now {
            let gi = &self.g[p.i];
            let gj = &self.g[p.j];
            let mi = gi.lm().quotient_of(&p.lcm).expect("lcm");
            let mj = gj.lm().quotient_of(&p.lcm).expect("lcm");
            let a = self.times(&mi, gi);
            let b = self.times(&mj, gj);
            let s = sub_sorted(&a, &b, &self.field);
            if !s.is_empty() {
                todo.push(s);
            }
        }
        for g in gens {
            let t: Vec<(Monomial, u32)> = g.terms.iter().filter(|(m, _)| self.in_ring(m)).cloned().collect();
            if !t.is_empty() {
                todo.push(t);
            }
        }
        if todo.is_empty() {
            return 0;
        }

        // symbolic preprocessing
        let mut seen: HashSet<Monomial> = HashSet::new();
        let mut queue: Vec<Monomial> = Vec::new();
        for row in &todo {
            for (m, _) in row {
                if seen.insert(m.clone()) {
                    queue.push(m.clone());
                }
            }
        }
        let mut reducers: Vec<Vec<(Monomial, u32)>> = Vec::new();
        while let Some(u) = queue.pop() {
            let Some(gi) = self.divisor(&u) else { continue };
            let mult = self.g[gi].lm().quotient_of(&u).expect("divisor");
            let row = self.times(&mult, &self.g[gi]);
            debug_assert_eq!(row[0].0, u);
            for (m, _) in &row {
                if seen.insert(m.clone()) {
                    queue.push(m.clone());
                }
            }
            reducers.push(row);
        }

        // columns in grevlex-descending order
        let mut cols: Vec<Monomial> = seen.into_iter().collect();
        cols.sort_unstable_by(|a, b| b.cmp(a));
        let col_of: HashMap<&Monomial, u32> = cols.iter().enumerate().map(|(i, m)| (m, i as u32)).collect();
        let to_sparse = |row: &[(Monomial, u32)]| -> SparseRow {
            let mut r: Vec<(u32, u32)> = row.iter().map(|(m, c)| (col_of[m], *c)).collect();
            r.sort_unstable_by_key(|&(c, _)| c);
            r
        };
        let ncols = cols.len();
        let mut pivots: Vec<Option<SparseRow>> = vec![None; ncols];
        for r in &reducers {
            let s = to_sparse(r);
            let c = s[0].0 as usize;
            pivots[c] = Some(s);
        }
        let mut fresh: Vec<usize> = Vec::new();
        let mut acc = vec![0u64; ncols];
        let p = u64::from(self.field.p());
        for row in &todo {
            let s = to_sparse(row);
            let start = s[0].0 as usize;
            for &(c, v) in &s {
                acc[c as usize] = u64::from(v);
            }
            let mut new_pivot = None;
            for c in start..ncols {
                let v = acc[c] % p;
                if v == 0 {
                    acc[c] = 0;
                    continue;
                }
                match &pivots[c] {
                    Some(prow) => {
                        let f = p - v;
                        for &(cc, pv) in prow {
                            let cc = cc as usize;
                            acc[cc] = (acc[cc] + f * u64::from(pv)) % p;
                        }
                        acc[c] = 0;
                    }
                    None => {
                        let inv = u64::from(self.field.inv(v as u32).expect("nonzero"));
                        let mut out: SparseRow = Vec::new();
                        for (cc, slot) in acc.iter_mut().enumerate().skip(c) {
                            let x = *slot % p;
                            *slot = 0;
                            if x != 0 {
                                out.push((cc as u32, ((x * inv) % p) as u32));
                            }
                        }
                        new_pivot = Some((c, out));
                        break;
                    }
                }
            }
            if let Some((c, out)) = new_pivot {
                pivots[c] = Some(out);
                fresh.push(c);
            }
        }
        let count = fresh.len();
        for c in fresh {
            let row = pivots[c].as_ref().expect("fresh pivot");
            let poly = GbPoly {
                terms: row.iter().map(|&(cc, v)| (cols[cc as usize].clone(), v)).collect(),
            };
            self.add_element(poly, false);
        }
        count
    }
}

type SparseRow = Vec<(u32, u32)>;

/// `a - b` for grevlex-descending term lists.
fn sub_sorted(a: &[(Monomial, u32)], b: &[(Monomial, u32)], f: &FieldSpec) -> Vec<(Monomial, u32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ord = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => x.0.cmp(&y.0),
            (Some(_), None) => std::cmp::Ordering::Greater,
            (None, _) => std::cmp::Ordering::Less,
        };
        match ord {
            std::cmp::Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Less => {
                out.push((b[j].0.clone(), f.neg(b[j].1)));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = f.sub(a[i].1, b[j].1);
                if c != 0 {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn monic_terms(f: &Polynomial) -> GbPoly {
    let g = f.monic();
    GbPoly {
        terms: g.terms().map(|(m, c)| (m.clone(), c)).collect(),
    }
}

/// Standard monomials of degree `d` from those of degree `d-1`: `u` is
/// standard iff it is not a leading monomial and all its degree-`d-1`
/// divisors are standard.
fn next_standard(prev: &HashSet<Monomial>, leading_d: &HashSet<Monomial>, n: usize) -> HashSet<Monomial> {
    let mut out = HashSet::new();
    for s in prev {
        let last = s.exps().iter().rposition(|&e| e > 0).unwrap_or(0);
        for i in last..n {
            let u = s.mul(&Monomial::var(n, i));
            if leading_d.contains(&u) {
                continue;
            }
            let ok = (0..n).filter(|&j| j != i && u.exp(j) > 0).all(|j| {
                let mut e = u.exps().to_vec();
                e[j] -= 1;
                prev.contains(&Monomial::new(e))
            });
            if ok {
                out.insert(u);
            }
        }
    }
    out
}

/// Truncated Gröbner basis of a homogeneous ideal up to degree `dmax`.
///
/// The ring must be the free ring or the graded quotient; in the latter the
/// relations `x_i^q = 0` enter as virtual generators.
pub fn homogeneous_gb(polys: &[Polynomial], ring: &Ring, dmax: usize) -> Result<TruncatedGb> {
    if ring.quotient == Quotient::Affine {
        return Err(Error::Precondition(
            "the truncated basis engine needs a graded ring".into(),
        ));
    }
    let n = ring.n;
    let cap = match ring.quotient {
        Quotient::Graded => ring.max_exp(),
        _ => None,
    };
    let mut by_degree: Vec<Vec<GbPoly>> = vec![Vec::new(); dmax + 1];
    let mut beyond = false;
    for f in polys {
        if f.is_zero() {
            continue;
        }
        if !f.is_homogeneous() {
            return Err(Error::Precondition("generators must be homogeneous".into()));
        }
        let d = f.degree()?;
        if d <= dmax {
            by_degree[d].push(monic_terms(&f.with_ring(*ring)));
        } else {
            beyond = true;
        }
    }
    let mut eng = Engine::new(n, ring.field, cap);
    let q_deg = cap.map(|c| usize::from(c) + 1);
    let mut hilbert = Vec::with_capacity(dmax + 1);
    let mut ideal_dims = Vec::with_capacity(dmax + 1);
    let mut standard: HashSet<Monomial> = HashSet::new();
    for d in 0..=dmax {
        let mut gens = std::mem::take(&mut by_degree[d]);
        if q_deg == Some(d) {
            for i in 0..n {
                let mut e = vec![0u8; n];
                e[i] = d as u8;
                let lm = Monomial::new(e);
                match eng.divisor(&lm) {
                    None => eng.add_element(GbPoly { terms: vec![(lm, 1)] }, true),
                    // x_i^q minus a multiple of that element: the quotient
                    // drops x_i^q, what remains is an ideal element to reduce
                    Some(gi) => {
                        let mult = eng.g[gi].lm().quotient_of(&lm).expect("divisor");
                        let rest = eng.times(&mult, &eng.g[gi]);
                        if !rest.is_empty() {
                            gens.push(GbPoly { terms: rest });
                        }
                    }
                }
            }
        }
        eng.step(d, &gens);
        let leading_d: HashSet<Monomial> = eng
            .g
            .iter()
            .map(GbPoly::lm)
            .filter(|m| m.degree() == d)
            .cloned()
            .collect();
        standard = if d == 0 {
            if leading_d.is_empty() {
                std::iter::once(Monomial::one(n)).collect()
            } else {
                HashSet::new()
            }
        } else {
            next_standard(&standard, &leading_d, n)
        };
        let h = standard.len() as u64;
        hilbert.push(h);
        ideal_dims.push(ring.graded_component_dim(d) - h);
    }
    let complete = !beyond
        && eng.pairs.is_empty()
        && q_deg.map_or(true, |q| q <= dmax || n == 0);
    let leading = eng.g.iter().map(|g| g.lm().clone()).collect();
    let basis = eng
        .g
        .iter()
        .zip(&eng.virtual_gen)
        .filter(|(_, &v)| !v)
        .map(|(g, _)| {
            let mut p = ring.zero();
            for (m, c) in &g.terms {
                p.add_term(m.clone(), *c);
            }
            p
        })
        .collect();
    Ok(TruncatedGb {
        hilbert,
        ideal_dims,
        leading,
        basis,
        complete,
    })
}

/// Dimension of `K[x]/(monomials)`: the largest set of variables that
/// contains the support of no leading monomial.
pub fn dimension_from_leading(n: usize, leading: &[Monomial]) -> usize {
    let supports: Vec<u64> = leading
        .iter()
        .map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i)))
        .collect();
    if supports.iter().any(|&s| s == 0) {
        // a unit in the ideal
        return 0;
    }
    let mut best = 0;
    fn go(i: usize, n: usize, chosen: u64, size: usize, supports: &[u64], best: &mut usize) {
        if size + (n - i) <= *best {
            return;
        }
        if i == n {
            *best = size;
            return;
        }
        let with = chosen | (1 << i);
        if supports.iter().all(|&s| s & !with != 0) {
            go(i + 1, n, with, size + 1, supports, best);
        }
        go(i + 1, n, chosen, size, supports, best);
    }
    go(0, n, 0, 0, &supports, &mut best);
    best
}

/// Result of a Buchberger criterion check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerCheckResult {
    pub is_basis: bool,
    /// First pair (in order of increasing lcm) whose S-polynomial does not
    /// reduce to zero, as indices into the checked list.
    pub failing_pair: Option<(usize, usize)>,
    pub remainder: Option<Polynomial>,
}

/// Remainder of `f` on division by `divisors` (leading-term reduction, the
/// first divisor in list order wins, non-divisible terms move to the remainder).
pub fn normal_form(f: &Polynomial, divisors: &[Polynomial]) -> Polynomial {
    let ring = *f.ring();
    let field = ring.field;
    let lead: Vec<(Monomial, u32)> = divisors
        .iter()
        .map(|g| {
            let lm = g.leading_monomial().expect("nonzero divisor").clone();
            (lm, field.inv(g.leading_coeff().expect("nonzero")).expect("unit"))
        })
        .collect();
    let mut rest = f.clone();
    let mut rem = ring.zero();
    while let Some(lm) = rest.leading_monomial().cloned() {
        let lc = rest.leading_coeff().expect("nonzero");
        match lead.iter().position(|(m, _)| m.divides(&lm)) {
            Some(k) => {
                let mult = lead[k].0.quotient_of(&lm).expect("divides");
                let scale = field.mul(lc, lead[k].1);
                let sub = divisors[k].mul_monomial(&mult).scale(scale);
                rest = rest.sub(&sub).expect("same ring");
            }
            None => {
                let mut t = ring.zero();
                t.add_term(lm.clone(), lc);
                rem = rem.add(&t).expect("same ring");
                rest = rest.sub(&t).expect("same ring");
            }
        }
    }
    rem
}

/// S-polynomial of two nonzero polynomials.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let field = *f.field();
    let (lf, lg) = (f.leading_monomial().expect("nonzero"), g.leading_monomial().expect("nonzero"));
    let l = lf.lcm(lg);
    let a = f
        .mul_monomial(&lf.quotient_of(&l).expect("lcm"))
        .scale(field.inv(f.leading_coeff().expect("nonzero")).expect("unit"));
    let b = g
        .mul_monomial(&lg.quotient_of(&l).expect("lcm"))
        .scale(field.inv(g.leading_coeff().expect("nonzero")).expect("unit"));
    a.sub(&b).expect("same ring")
}

/// Buchberger criterion with the coprime leading-term skip only. Pairs are
/// examined by increasing lcm (ties by index), so the reported witness is a
/// lowest-degree one.
pub fn groebner_check(polys: &[Polynomial]) -> GroebnerCheckResult {
    let polys: Vec<&Polynomial> = polys.iter().filter(|f| !f.is_zero()).collect();
    let owned: Vec<Polynomial> = polys.iter().map(|&f| f.clone()).collect();
    let mut pairs: Vec<(Monomial, usize, usize)> = Vec::new();
    for i in 0..owned.len() {
        for j in i + 1..owned.len() {
            let (a, b) = (owned[i].leading_monomial().expect("nonzero"), owned[j].leading_monomial().expect("nonzero"));
            if a.is_coprime(b) {
                continue;
            }
            pairs.push((a.lcm(b), i, j));
        }
    }
    pairs.sort();
    for (_, i, j) in pairs {
        let s = s_polynomial(&owned[i], &owned[j]);
        let r = normal_form(&s, &owned);
        if !r.is_zero() {
            return GroebnerCheckResult {
                is_basis: false,
                failing_pair: Some((i, j)),
                remainder: Some(r),
            };
        }
    }
    GroebnerCheckResult {
        is_basis: true,
        failing_pair: None,
        remainder: None,
    }
}

/// `x_i^q - x_i` for every variable, in the free ring.
pub fn field_equations(ring: &Ring) -> Vec<Polynomial> {
    let free = ring.with_quotient(Quotient::None);
    let q = ring.field.p();
    (0..ring.n)
        .map(|i| {
            let mut e = vec![0u8; ring.n];
            e[i] = q as u8;
            let mut f = free.zero();
            f.add_term(Monomial::new(e), 1);
            f.add_term(Monomial::var(ring.n, i), ring.field.neg(1));
            f
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sysgen::{gen_full, gen_ov};

    fn ring(n: usize, field: FieldSpec) -> Ring {
        Ring::new(n, field, true)
    }

    #[test]
    fn monomial_ideal_series() {
        // K[x,y,z]/(x^2, xy): 1, 3, 4, 5
        let r = ring(3, FieldSpec::default_proxy());
        let polys = vec![r.parse("x1^2").unwrap(), r.parse("x1*x2").unwrap()];
        let gb = homogeneous_gb(&polys, &r, 3).unwrap();
        assert_eq!(gb.hilbert, vec![1, 3, 4, 5]);
        assert!(gb.complete);
        assert_eq!(dimension_from_leading(3, &gb.leading), 2);
    }

    #[test]
    fn single_quadric_over_gf2_quotient() {
        // seeds whose alternating form has full rank; f^2 = 0 keeps H(6) = 1
        for seed in [2, 3, 7] {
            let s = gen_full(8, 1, FieldSpec::gf2(true), true, seed).unwrap();
            let gb = homogeneous_gb(s.polys(), s.ring(), 8).unwrap();
            assert_eq!(gb.hilbert, vec![1, 8, 27, 48, 43, 8, 1, 0, 0]);
            assert!(gb.complete);
        }
    }

    #[test]
    fn power_already_in_the_leading_ideal() {
        // GF(3), f = 2x^2 + 2xy + y^2: x^3 reduces by x*f to a new element
        let r = ring(2, FieldSpec::new(3, true).unwrap());
        let f = r.parse("2*x1^2 + 2*x1*x2 + x2^2").unwrap();
        let gb = homogeneous_gb(&[f], &r, 5).unwrap();
        assert_eq!(gb.hilbert, vec![1, 2, 2, 0, 0, 0]);
    }

    #[test]
    fn zero_ideal_is_ambient() {
        let r = ring(4, FieldSpec::new(3, true).unwrap());
        let gb = homogeneous_gb(&[], &r, 9).unwrap();
        let want: Vec<u64> = (0..=9).map(|d| r.graded_component_dim(d)).collect();
        assert_eq!(gb.hilbert, want);
        assert_eq!(gb.leading.len(), 4);
        assert_eq!(dimension_from_leading(4, &gb.leading), 0);
    }

    #[test]
    fn regular_sequence_char0() {
        // m <= n generic quadrics: (1 - t^2)^m / (1 - t)^n
        let s = gen_full(5, 3, FieldSpec::default_proxy(), true, 2).unwrap();
        let gb = homogeneous_gb(s.polys(), s.ring(), 7).unwrap();
        let want = crate::series::expand(&crate::series::predict_semiregular_char0(5, &[2, 2, 2]), 7).unwrap();
        assert_eq!(gb.hilbert.iter().map(|&h| h as i64).collect::<Vec<_>>(), want.to_i64_vec().unwrap());
        assert!(gb.complete);
        assert_eq!(dimension_from_leading(5, &gb.leading), 2);
    }

    #[test]
    fn ov_system_dimension_bound() {
        let s = gen_ov(6, 2, 8, FieldSpec::default_proxy(), true, 1).unwrap();
        let gb = homogeneous_gb(s.polys(), s.ring(), 8).unwrap();
        assert!(gb.complete);
        assert_eq!(dimension_from_leading(6, &gb.leading), 4);
    }

    #[test]
    fn buchberger_small_cases() {
        let r = Ring::new(3, FieldSpec::gf2(false), false);
        let lin = vec![r.parse("x1 + 1").unwrap(), r.parse("x2").unwrap(), r.parse("x3 + 1").unwrap()];
        assert!(groebner_check(&lin).is_basis);
        let mono = vec![r.parse("x1^2").unwrap(), r.parse("x1*x2").unwrap(), r.parse("x2^2").unwrap()];
        assert!(groebner_check(&mono).is_basis);
        let bad = vec![r.parse("x2*x3 + x3 + 1").unwrap(), r.parse("x2").unwrap()];
        let res = groebner_check(&bad);
        assert!(!res.is_basis);
        assert_eq!(res.failing_pair, Some((0, 1)));
        assert_eq!(res.remainder.unwrap(), r.parse("x3 + 1").unwrap());
    }

    #[test]
    fn dimension_cases() {
        assert_eq!(dimension_from_leading(4, &[]), 4);
        assert_eq!(dimension_from_leading(3, &[Monomial::one(3)]), 0);
        let m = |e: &[u8]| Monomial::new(e.to_vec());
        // (x1 x2, x3): largest free set {x1} or {x2} -> 1
        assert_eq!(dimension_from_leading(3, &[m(&[1, 1, 0]), m(&[0, 0, 1])]), 1);
    }
}
