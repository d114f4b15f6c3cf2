//! Derived invariants: trivial-relation counts, the determinant relations of
//! oil-and-vinegar subsets, the vinegar/oil splittings of Hilbert series,
//! degrees and index of regularity, Krull dimension and the consistency
//! checks between them.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::FieldSpec;
use crate::gb::{dimension_from_leading, homogeneous_gb};
use crate::macaulay::{
    empirical_hilbert, first_fall_degree, ideal_membership, kernel_dim_at_degree, ranks_with_basis,
    rows_at_degree, solving_basis, solving_degree, Backend, DEFAULT_BUDGET,
};
use crate::polyring::{graded_component_dim, Monomial, Polynomial, Ring};
use crate::series::{
    binom, bracket, expand, predict_oil_ring, predict_ov_semiregular, predict_semiregular,
    predict_semiregular_fq, OvBranch, TruncatedSeries,
};
use crate::sysgen::{is_ov, is_ov_with, PolySystem, SystemKind};

/// Predicted number of trivial relations among the rows of `M_d` for `m`
/// quadratics in `n` variables.
///
/// Without field equations this is the Koszul count
/// `sum (-1)^{i-1} binom(n+δ-1, δ) binom(m, i+1)`; over GF(2) with field
/// equations it is `sum (-1)^{i-1} binom(n, δ) binom(m+i, i+1)`, with
/// `δ = d-2-2i`. For GF(q), q ≥ 3, with field equations the count is the
/// number of rows minus the rank a semiregular system would have:
/// `m dim R_{d-2} - dim R_d + h_d`, `h` the unbracketed semiregular series.
pub fn triv_count(n: usize, m: usize, d: usize, field: &FieldSpec) -> i128 {
    if d < 4 {
        return 0;
    }
    let b = |a: usize, k: usize| -> i128 { binom(a, k).try_into().expect("fits in i128") };
    let sign = |i: usize| if i % 2 == 1 { 1 } else { -1 };
    let top = (d - 2) / 2;
    match (field.field_equations(), field.p()) {
        (false, _) => {
            let free = field.with_field_equations(false).expect("disabling is always valid");
            (1..=top)
                .map(|i| {
                    let delta = d - 2 - 2 * i;
                    sign(i) * i128::from(graded_component_dim(n, delta, &free)) * b(m, i + 1)
                })
                .sum()
        }
        (true, 2) => (1..=top)
            .map(|i| {
                let delta = d - 2 - 2 * i;
                sign(i) * b(n, delta) * b(m + i, i + 1)
            })
            .sum(),
        (true, q) => {
            let h = expand(&predict_semiregular_fq(n, q as usize, &vec![2; m]), d).expect("unit denominator");
            let h_d: i128 = h.coeffs()[d].clone().try_into().expect("fits in i128");
            let dim = |k: usize| i128::from(graded_component_dim(n, k, field));
            m as i128 * dim(d - 2) - dim(d) + h_d
        }
    }
}

/// Determinant relation of a `v`-subset of an OV system: `f_i = sum_j x_j A[i][j]`
/// with linear `A[i][j]`, and `delta = det A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaRelation {
    pub subset: Vec<usize>,
    pub delta: Polynomial,
    pub matrix: Vec<Vec<Polynomial>>,
}

/// Split a homogeneous OV quadratic as `sum_{j<v} x_j c_j`, sending each
/// monomial to the column of its smallest variable.
pub fn ov_columns(f: &Polynomial, v: usize) -> Result<Vec<Polynomial>> {
    let ring = *f.ring();
    let mut cols = vec![ring.zero(); v];
    for (m, c) in f.terms() {
        if m.degree() != 2 {
            return Err(Error::Precondition("OV decomposition needs homogeneous quadratics".into()));
        }
        let a = m.support().next().expect("degree 2");
        if a >= v {
            return Err(Error::NotOv(format!("monomial with no vinegar variable in {f}")));
        }
        let rest = Monomial::var(ring.n, a).quotient_of(m).expect("x_a divides");
        cols[a].add_term(rest, c);
    }
    Ok(cols)
}

fn determinant(a: &[Vec<Polynomial>], ring: &Ring) -> Polynomial {
    match a.len() {
        0 => ring.one(),
        1 => a[0][0].clone(),
        k => {
            let mut acc = ring.zero();
            for j in 0..k {
                if a[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial>> = a[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, p)| p.clone()).collect())
                    .collect();
                let term = a[0][j].mul(&determinant(&minor, ring)).expect("same ring");
                acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) }.expect("same ring");
            }
            acc
        }
    }
}

fn ov_vinegar(s: &PolySystem) -> Result<usize> {
    let v = match s.kind() {
        SystemKind::Ov { v } => v,
        SystemKind::Mixed { .. } => return Err(Error::NotOv("system is mixed".into())),
        SystemKind::Full => is_ov(s).ok_or_else(|| Error::NotOv("no proper vinegar prefix".into()))?,
    };
    if !is_ov_with(s, &(0..v).collect::<Vec<_>>()) {
        return Err(Error::NotOv(format!("an oil-oil monomial is present with v = {v}")));
    }
    Ok(v)
}

fn require_homogeneous(s: &PolySystem) -> Result<()> {
    if s.homogeneous() {
        Ok(())
    } else {
        Err(Error::Precondition("a homogeneous system is required".into()))
    }
}

/// `delta = det A` for the given `v` equations; zero means the subset is not regular.
pub fn delta_relation(s: &PolySystem, subset: &[usize]) -> Result<DeltaRelation> {
    require_homogeneous(s)?;
    let v = ov_vinegar(s)?;
    if v == 0 || subset.len() != v || subset.iter().any(|&i| i >= s.m()) {
        return Err(Error::BadParameters(format!("need {v} distinct equation indices below {}", s.m())));
    }
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != v {
        return Err(Error::BadParameters("repeated equation index".into()));
    }
    let matrix = subset
        .iter()
        .map(|&i| ov_columns(&s.polys()[i], v))
        .collect::<Result<Vec<_>>>()?;
    let delta = determinant(&matrix, s.ring());
    if delta.is_zero() {
        return Err(Error::SingularSubset(subset.to_vec()));
    }
    Ok(DeltaRelation {
        subset: subset.to_vec(),
        delta,
        matrix,
    })
}

/// Whether `delta * g` lies in the ideal of the subset at degree `v + 2`.
pub fn verify_delta(s: &PolySystem, rel: &DeltaRelation, g: &Polynomial) -> Result<bool> {
    let v = rel.subset.len();
    let vinegar_in_every_term = g.monomials().all(|m| m.support().next().is_some_and(|i| i < v));
    if g.is_zero() || !g.is_homogeneous() || g.degree()? != 2 || !vinegar_in_every_term {
        return Err(Error::Precondition(
            "g must be a quadratic form whose every monomial has a vinegar variable".into(),
        ));
    }
    let sub = s.subsystem(&rel.subset);
    ideal_membership(&sub, &rel.delta.mul(&g.with_ring(*s.ring()))?)
}

/// Whether `x_i * delta` lies in the subset ideal for every vinegar `x_i`.
pub fn delta_annihilates_vinegar(s: &PolySystem, rel: &DeltaRelation) -> Result<bool> {
    let sub = s.subsystem(&rel.subset);
    for i in 0..rel.subset.len() {
        let f = rel.delta.mul_monomial(&Monomial::var(s.n(), i));
        if !ideal_membership(&sub, &f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn series_i128(v: &[i128]) -> TruncatedSeries {
    TruncatedSeries::new(v.iter().map(|&x| BigInt::from(x)).collect())
}

fn coeff(s: &TruncatedSeries, d: usize) -> i128 {
    s.coeffs()[d].clone().try_into().expect("fits in i128")
}

/// The three series of the vinegar/oil splitting of an OV system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OvDecomposition {
    pub v: usize,
    /// `H_{R/F}` from the Gröbner-basis engine.
    pub h_rf: TruncatedSeries,
    /// Hilbert series of the oil ring.
    pub h_ko: TruncatedSeries,
    /// `dim V_d - rank M_d`.
    pub h_vf: TruncatedSeries,
    /// How `rank M_d` was obtained at each degree.
    pub rank_backends: Vec<Backend>,
    /// Degrees where `H_{R/F} != H_{K_o} + H_{V/F}`.
    pub mismatches: Vec<usize>,
}

impl OvDecomposition {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Split `H_{R/F}` into the oil-ring series and `H_{V/F}`, with the ranks of
/// `M_d` taken from dense Macaulay matrices whenever they are small enough.
pub fn ov_decomposition(s: &PolySystem, dmax: usize) -> Result<OvDecomposition> {
    require_homogeneous(s)?;
    let v = ov_vinegar(s)?;
    let n = s.n();
    let field = *s.field();
    let (ranks, rank_backends, gb) = ranks_with_basis(s, dmax, DEFAULT_BUDGET)?;
    let h_rf = TruncatedSeries::from_u64(&gb.hilbert);
    let h_ko = expand(&predict_oil_ring(n, v, &field), dmax)?;
    let ring = s.ring();
    let h_vf: Vec<i128> = (0..=dmax)
        .map(|d| {
            let dim_v = i128::from(ring.graded_component_dim(d)) - i128::from(graded_component_dim(n - v, d, &field));
            dim_v - i128::from(ranks[d])
        })
        .collect();
    let mismatches = (0..=dmax)
        .filter(|&d| coeff(&h_rf, d) != coeff(&h_ko, d) + h_vf[d])
        .collect();
    Ok(OvDecomposition {
        v,
        h_rf,
        h_ko,
        h_vf: series_i128(&h_vf),
        rank_backends,
        mismatches,
    })
}

/// First positive degree where `h` vanishes; failing that, where `h` becomes
/// polynomial (the index of regularity of the smallest-dimensional fit).
pub fn regularity_degree(h: &TruncatedSeries, n: usize, dmax: usize) -> Result<usize> {
    if let Some(d) = (1..=dmax).find(|&d| h.coeffs()[d].is_zero()) {
        return Ok(d);
    }
    (1..=n)
        .find_map(|dim| index_of_regularity(h, dim, dmax).ok())
        .ok_or(Error::NotFoundWithin(dmax))
}

/// Degree of regularity of a homogeneous OV system: the first degree with
/// `F_d = V_d`, or the index of regularity of `H_{V/F}` when that never happens.
pub fn ov_dreg(s: &PolySystem, dmax: usize) -> Result<usize> {
    let dec = ov_decomposition(s, dmax)?;
    regularity_degree(&dec.h_vf, s.n(), dmax)
}

/// The series of the splitting of a mixed system `P = F ∪ Q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixedDecomposition {
    pub v: usize,
    pub h_rp: TruncatedSeries,
    /// `H_{(V+Q)/P}`.
    pub h_vqp: TruncatedSeries,
    /// `H_{K_o/Q_o}`.
    pub h_koqo: TruncatedSeries,
    pub h_rf: TruncatedSeries,
    pub h_rq: TruncatedSeries,
    /// `H_{Q/(F∩Q)} = H_{R/F} - H_{R/P}`.
    pub h_q_fq: TruncatedSeries,
    /// `H_{F/(F∩Q)} = H_{R/Q} - H_{R/P}`.
    pub h_f_fq: TruncatedSeries,
    pub mismatches: Vec<usize>,
    /// Both derived differences are coefficientwise non-negative.
    pub differences_nonnegative: bool,
}

impl MixedDecomposition {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty() && self.differences_nonnegative
    }
}

/// The oil parts of the given polynomials (vinegar variables set to zero) as
/// a system in the `n - v` oil variables.
pub fn oil_projection(s: &PolySystem, indices: &[usize], v: usize) -> Result<PolySystem> {
    let n = s.n();
    let oil_ring = Ring::new(n - v, *s.field(), true);
    let vinegar: Vec<usize> = (0..v).collect();
    let map: Vec<usize> = (0..n).map(|i| i.saturating_sub(v)).collect();
    let polys = indices
        .iter()
        .map(|&i| s.polys()[i].set_zero(&vinegar).remap(oil_ring, &map))
        .filter(|f| !f.is_zero())
        .collect();
    PolySystem::new(oil_ring, polys, true, SystemKind::Full)
}

fn mixed_shape(s: &PolySystem) -> Result<(usize, usize, usize)> {
    let SystemKind::Mixed { v, e, u } = s.kind() else {
        return Err(Error::NotMixed(format!("kind is {:?}", s.kind())));
    };
    if e + u != s.m() {
        return Err(Error::NotMixed(format!("e + u = {} but m = {}", e + u, s.m())));
    }
    let ov = s.subsystem(&(0..e).collect::<Vec<_>>());
    if !is_ov_with(&ov, &(0..v).collect::<Vec<_>>()) {
        return Err(Error::NotMixed("the first e equations are not OV".into()));
    }
    Ok((v, e, u))
}

pub fn mixed_decomposition(s: &PolySystem, dmax: usize) -> Result<MixedDecomposition> {
    require_homogeneous(s)?;
    let (v, e, u) = mixed_shape(s)?;
    let ring = s.ring();
    let q_idx: Vec<usize> = (e..e + u).collect();
    let oil = oil_projection(s, &q_idx, v)?;
    let h_koqo = empirical_hilbert(&oil, dmax)?;
    let (ranks, _, gb) = ranks_with_basis(s, dmax, DEFAULT_BUDGET)?;
    let h_vqp: Vec<i128> = (0..=dmax)
        .map(|d| i128::from(ring.graded_component_dim(d)) - coeff(&h_koqo, d) - i128::from(ranks[d]))
        .collect();
    let h_rp = TruncatedSeries::from_u64(&gb.hilbert);
    let h_rf = empirical_hilbert(&s.subsystem(&(0..e).collect::<Vec<_>>()), dmax)?;
    let h_rq = empirical_hilbert(&s.subsystem(&q_idx), dmax)?;
    let h_q_fq = h_rf.sub(&h_rp);
    let h_f_fq = h_rq.sub(&h_rp);
    let differences_nonnegative = h_q_fq.coeffs().iter().chain(h_f_fq.coeffs()).all(|c| !c.is_negative());
    let mismatches = (0..=dmax)
        .filter(|&d| coeff(&h_rp, d) != h_vqp[d] + coeff(&h_koqo, d))
        .collect();
    Ok(MixedDecomposition {
        v,
        h_rp,
        h_vqp: series_i128(&h_vqp),
        h_koqo,
        h_rf,
        h_rq,
        h_q_fq,
        h_f_fq,
        mismatches,
        differences_nonnegative,
    })
}

/// First degree with `P_d = (V + Q_o)_d`, or the index of regularity of
/// `H_{(V+Q)/P}` when that never happens.
pub fn mixed_dreg(s: &PolySystem, dmax: usize) -> Result<usize> {
    let dec = mixed_decomposition(s, dmax)?;
    regularity_degree(&dec.h_vqp, s.n(), dmax)
}

/// Krull dimension of `R/F` from the leading monomials of a Gröbner basis
/// computed within `d_max`.
pub fn krull_dimension(s: &PolySystem, d_max: usize) -> Result<usize> {
    if s.homogeneous() {
        let gb = homogeneous_gb(s.polys(), s.ring(), d_max)?;
        if !gb.complete {
            return Err(Error::NotFoundWithin(d_max));
        }
        Ok(dimension_from_leading(s.n(), &gb.leading))
    } else {
        let (_, basis) = solving_basis(s, d_max)?;
        let leading: Vec<Monomial> = basis.iter().filter_map(|f| f.leading_monomial().cloned()).collect();
        Ok(dimension_from_leading(s.n(), &leading))
    }
}

/// Least `d` from which `h` agrees with a polynomial of degree `dim - 1`
/// (with `h = 0` for `dim = 0`) on every sampled degree up to `dmax`.
///
/// Agreement with the interpolating polynomial through `dim` consecutive
/// values is tested exactly through vanishing `dim`-th finite differences.
/// At least `dim + 2` samples from the candidate on are required.
pub fn index_of_regularity(h: &TruncatedSeries, dim: usize, dmax: usize) -> Result<usize> {
    let dmax = dmax.min(h.degree_bound());
    let mut diffs: Vec<BigInt> = h.coeffs()[..=dmax].to_vec();
    for _ in 0..dim {
        if diffs.len() < 2 {
            return Err(Error::InsufficientHeadroom { have: dmax, need: dim + 1 });
        }
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    let d = diffs.iter().rposition(|x| !x.is_zero()).map_or(0, |i| i + 1);
    if dmax + 1 < d + dim + 2 {
        return Err(Error::InsufficientHeadroom { have: dmax, need: d + dim + 1 });
    }
    Ok(d)
}

/// Both sides of the degree-`v+2` excess identity for an OV system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrV2Report {
    pub v: usize,
    pub m: usize,
    pub degree: usize,
    pub computed: BigInt,
    /// Unbracketed semiregular coefficient at `v + 2`.
    pub semiregular: BigInt,
    pub excess: BigInt,
    /// `binom(m, v + 1)`.
    pub expected: BigInt,
    pub holds: bool,
}

/// All `k`-subsets of `0..m` in lexicographic order.
pub fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, k, &mut Vec::new(), &mut out);
    out
}

/// `H_{R/F}(v+2)` exceeds the semiregular coefficient by `binom(m, v+1)`
/// when `v < m < n` and every `v`-subset is regular.
pub fn tr_v2_check(s: &PolySystem, dmax: usize) -> Result<TrV2Report> {
    require_homogeneous(s)?;
    let v = ov_vinegar(s)?;
    let (n, m) = (s.n(), s.m());
    if !(v < m && m < n) {
        return Err(Error::Precondition(format!("need v < m < n, got v = {v}, m = {m}, n = {n}")));
    }
    let degree = v + 2;
    if dmax < degree {
        return Err(Error::InsufficientHeadroom { have: dmax, need: degree });
    }
    for subset in combinations(m, v) {
        delta_relation(s, &subset)?;
    }
    let h = empirical_hilbert(s, degree)?;
    let raw = expand(&predict_semiregular(n, m, s.field()), degree)?;
    let computed = h.coeffs()[degree].clone();
    let semiregular = raw.coeffs()[degree].clone();
    let excess = &computed - &semiregular;
    let expected = binom(m, v + 1);
    Ok(TrV2Report {
        v,
        m,
        degree,
        holds: excess == expected,
        computed,
        semiregular,
        excess,
        expected,
    })
}

/// Degree of regularity of `F^⊤`: the index of regularity of its Hilbert series.
pub fn dreg_top(s: &PolySystem, dmax: usize) -> Result<usize> {
    let top = if s.homogeneous() { s.clone() } else { s.top_system() };
    let h = empirical_hilbert(&top, dmax)?;
    if let Some(d) = (0..=dmax).find(|&d| h.coeffs()[d].is_zero()) {
        return Ok(d);
    }
    let dim = krull_dimension(&top, dmax)?;
    index_of_regularity(&h, dim, dmax)
}

/// `d_fall <= d_reg + 1` and `d_reg <= solv.deg` for a quadratic system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub d_fall: usize,
    pub d_reg: usize,
    pub solv_deg: usize,
    pub fall_ok: bool,
    pub reg_ok: bool,
}

impl ChainReport {
    pub fn holds(&self) -> bool {
        self.fall_ok && self.reg_ok
    }
}

pub fn inequality_chain(s: &PolySystem, d_max: usize) -> Result<ChainReport> {
    let d_fall = first_fall_degree(s, d_max)?;
    let d_reg = dreg_top(s, d_max + 2)?;
    let solv_deg = solving_degree(s, d_max)?;
    Ok(ChainReport {
        d_fall,
        d_reg,
        solv_deg,
        fall_ok: d_fall <= d_reg + 1,
        reg_ok: d_reg <= solv_deg,
    })
}

/// `H_{R/F'}(d) = sum_{i<q} H_{R/F}(d - i δ)` with `F'` the system without
/// its last generator of degree `δ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HfqReport {
    pub q: u32,
    pub delta: usize,
    /// `H_{R/F'}`.
    pub h_prefix: TruncatedSeries,
    /// `H_{R/F}`.
    pub h_full: TruncatedSeries,
    /// `sum_{i<q} H_{R/F}(d - i δ)`.
    pub rhs: TruncatedSeries,
    pub mismatches: Vec<usize>,
    /// First zero of `H_{R/F}`; semi-regularity constrains only lower degrees.
    pub regularity_index: Option<usize>,
    /// No mismatch below `regularity_index`.
    pub holds_below_regularity: bool,
    /// `H_{R/F}` equals the bracketed semiregular prediction.
    pub semiregular: bool,
}

pub fn hfq_decomposition_check(s: &PolySystem, dmax: usize) -> Result<HfqReport> {
    let field = *s.field();
    if !field.field_equations() {
        return Err(Error::Precondition("the decomposition lives in the field-equation quotient".into()));
    }
    let s = if s.homogeneous() { s.clone() } else { s.top_system() };
    let q = field.p();
    let h_full = empirical_hilbert(&s, dmax)?;
    if s.m() == 0 {
        return Ok(HfqReport {
            q,
            delta: 0,
            h_prefix: h_full.clone(),
            rhs: h_full.clone(),
            h_full,
            mismatches: Vec::new(),
            regularity_index: None,
            holds_below_regularity: true,
            semiregular: true,
        });
    }
    let delta = s.polys()[s.m() - 1].degree()?;
    let h_prefix = empirical_hilbert(&s.prefix(s.m() - 1), dmax)?;
    let rhs: Vec<BigInt> = (0..=dmax)
        .map(|d| {
            (0..q as usize)
                .filter_map(|i| d.checked_sub(i * delta))
                .map(|e| h_full.coeffs()[e].clone())
                .sum()
        })
        .collect();
    let rhs = TruncatedSeries::new(rhs);
    let mismatches: Vec<usize> = (0..=dmax).filter(|&d| h_prefix.coeffs()[d] != rhs.coeffs()[d]).collect();
    let regularity_index = h_full.first_zero();
    let bound = regularity_index.unwrap_or(dmax + 1);
    let degs = s.polys().iter().map(Polynomial::degree).collect::<Result<Vec<_>>>()?;
    let predicted = bracket(&expand(&predict_semiregular_fq(s.n(), q as usize, &degs), dmax)?);
    Ok(HfqReport {
        q,
        delta,
        holds_below_regularity: mismatches.iter().all(|&d| d >= bound),
        semiregular: predicted == h_full,
        h_prefix,
        h_full,
        rhs,
        mismatches,
        regularity_index,
    })
}

/// One line of the trivial-relation table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrivRow {
    pub degree: usize,
    pub rows: u64,
    pub kernel: u64,
    pub triv: i128,
}

/// Aggregated invariants of one system. Absent values could not be
/// determined within the requested degrees; `notes` says why.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub summary: String,
    pub kind: SystemKind,
    pub max_degree: usize,
    pub empirical: TruncatedSeries,
    pub predicted: TruncatedSeries,
    pub branch: Option<OvBranch>,
    /// `H_{V/F}` (OV) or `H_{(V+Q)/P}` (mixed).
    pub h_vinegar: Option<TruncatedSeries>,
    /// `H_{K_o}` (OV) or `H_{K_o/Q_o}` (mixed).
    pub h_oil: Option<TruncatedSeries>,
    pub d_reg: Option<usize>,
    pub i_reg: Option<usize>,
    pub d_fall: Option<usize>,
    pub solv_deg: Option<usize>,
    pub dim: Option<usize>,
    pub triv: Vec<TrivRow>,
    pub semiregular_match: bool,
    pub decomposition_verified: Option<bool>,
    pub notes: Vec<String>,
}

fn keep<T>(r: Result<T>, what: &str, notes: &mut Vec<String>) -> Option<T> {
    match r {
        Ok(x) => Some(x),
        Err(e) => {
            notes.push(format!("{what}: {e}"));
            None
        }
    }
}

/// Compute everything that is defined for the system: series up to `dmax`,
/// degree searches up to `d_max`.
pub fn invariant_report(s: &PolySystem, dmax: usize, d_max: usize) -> Result<InvariantReport> {
    let mut notes = Vec::new();
    let field = *s.field();
    if field.is_char0_proxy() {
        notes.push(format!("characteristic-0 statements evaluated over the proxy prime {}", field.p()));
    }
    let top = if s.homogeneous() { s.clone() } else { s.top_system() };
    let empirical = empirical_hilbert(&top, dmax)?;
    let (n, m) = (s.n(), top.m());
    let quadratic = top.polys().iter().all(|f| f.degree().ok() == Some(2));

    let mut branch = None;
    let mut h_vinegar = None;
    let mut h_oil = None;
    let mut decomposition_verified = None;
    let mut d_reg = None;
    let predicted = match s.kind() {
        SystemKind::Ov { v } if !field.field_equations() && quadratic => {
            let p = predict_ov_semiregular(n, v, m, dmax);
            branch = Some(p.branch);
            p.series
        }
        _ => bracket(&expand(&predict_semiregular(n, m, &field), dmax)?),
    };
    match s.kind() {
        SystemKind::Ov { .. } if s.homogeneous() => {
            if let Some(dec) = keep(ov_decomposition(s, dmax), "OV decomposition", &mut notes) {
                d_reg = keep(regularity_degree(&dec.h_vf, n, dmax), "d_reg", &mut notes);
                decomposition_verified = Some(dec.holds());
                h_vinegar = Some(dec.h_vf);
                h_oil = Some(dec.h_ko);
            }
        }
        SystemKind::Mixed { .. } if s.homogeneous() => {
            if let Some(dec) = keep(mixed_decomposition(s, dmax), "mixed decomposition", &mut notes) {
                d_reg = keep(regularity_degree(&dec.h_vqp, n, dmax), "d_reg", &mut notes);
                decomposition_verified = Some(dec.holds());
                h_vinegar = Some(dec.h_vqp);
                h_oil = Some(dec.h_koqo);
            }
        }
        _ => {}
    }
    let dim = keep(krull_dimension(s, d_max.max(dmax)), "dimension", &mut notes);
    let i_reg = match (empirical.first_zero(), keep(krull_dimension(&top, dmax), "dimension of F^T", &mut notes)) {
        (Some(z), _) => Some(z),
        (None, Some(k)) => keep(index_of_regularity(&empirical, k, dmax), "i_reg", &mut notes),
        (None, None) => None,
    };
    if d_reg.is_none() && matches!(s.kind(), SystemKind::Full) {
        d_reg = i_reg;
    }
    let mut triv = Vec::new();
    let mut d_fall = None;
    if quadratic && m > 0 {
        for d in 2..=d_max.min(dmax) {
            let (Some(rows), Some(kernel)) = (
                keep(rows_at_degree(&top, d), "rows", &mut notes),
                keep(kernel_dim_at_degree(&top, d), "kernel", &mut notes),
            ) else {
                break;
            };
            triv.push(TrivRow {
                degree: d,
                rows,
                kernel: kernel as u64,
                triv: triv_count(n, m, d, &field),
            });
        }
        d_fall = keep(first_fall_degree(s, d_max), "d_fall", &mut notes);
    }
    let solv_deg = keep(solving_degree(s, d_max), "solving degree", &mut notes);
    Ok(InvariantReport {
        summary: s.summary(),
        kind: s.kind(),
        max_degree: dmax,
        semiregular_match: empirical == predicted,
        empirical,
        predicted,
        branch,
        h_vinegar,
        h_oil,
        d_reg,
        i_reg,
        d_fall,
        solv_deg,
        dim,
        triv,
        decomposition_verified,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sysgen::{gen_full, gen_mixed, gen_ov};

    #[test]
    fn triv_counts_from_the_formulas() {
        let gf2 = FieldSpec::gf2(true);
        assert_eq!(triv_count(8, 1, 6, &gf2), 27);
        assert_eq!(triv_count(8, 1, 4, &gf2), 1);
        assert_eq!(triv_count(8, 1, 5, &gf2), 8);
        assert_eq!(triv_count(10, 13, 4, &gf2), 91);
        let k = FieldSpec::default_proxy();
        for (n, m) in [(3, 4), (8, 10), (10, 2)] {
            assert_eq!(triv_count(n, m, 4, &k), (m * (m - 1) / 2) as i128);
            assert_eq!(triv_count(n, m, 3, &k), 0);
        }
        // d = 6: n·binom(m,2) ... binom(n+1,2)·binom(m,2) - binom(m,3)
        assert_eq!(triv_count(3, 4, 6, &k), 6 * 6 - 4);
    }

    #[test]
    fn rank_identity_reproduces_the_gf2_formula() {
        // rows - dim + raw semiregular coefficient, evaluated for q = 2
        let gf2 = FieldSpec::gf2(true);
        for (n, m) in [(8, 1), (10, 13), (6, 4), (9, 3)] {
            let h = expand(&predict_semiregular_fq(n, 2, &vec![2; m]), 12).unwrap();
            for d in 4..=12 {
                let dim = |k: usize| i128::from(graded_component_dim(n, k, &gf2));
                let via_identity = m as i128 * dim(d - 2) - dim(d) + coeff(&h, d);
                assert_eq!(via_identity, triv_count(n, m, d, &gf2), "n={n} m={m} d={d}");
            }
        }
    }

    #[test]
    fn rank_identity_reproduces_the_koszul_formula() {
        let k = FieldSpec::default_proxy();
        for (n, m) in [(5, 3), (8, 10), (4, 7)] {
            let h = expand(&crate::series::predict_semiregular_char0(n, &vec![2; m]), 12).unwrap();
            for d in 4..=12 {
                let dim = |k: usize| i128::from(graded_component_dim(n, k, &FieldSpec::default_proxy()));
                let via_identity = m as i128 * dim(d - 2) - dim(d) + coeff(&h, d);
                assert_eq!(via_identity, triv_count(n, m, d, &k), "n={n} m={m} d={d}");
            }
        }
    }

    #[test]
    fn generic_kernel_is_trivial_below_the_fall() {
        // wherever the unbracketed semiregular coefficient is still positive
        for (n, m) in [(8, 4), (9, 6)] {
            let raw = expand(&predict_semiregular_fq(n, 2, &vec![2; m]), 8).unwrap();
            for seed in 0..3 {
                let s = gen_full(n, m, FieldSpec::gf2(true), true, seed).unwrap();
                for d in (2..=8).take_while(|&d| coeff(&raw, d) > 0) {
                    let k = kernel_dim_at_degree(&s, d).unwrap() as i128;
                    assert_eq!(k, triv_count(n, m, d, s.field()), "n {n} m {m} seed {seed} d {d}");
                }
            }
        }
    }

    #[test]
    fn overdetermined_kernel_exceeds_the_formal_count() {
        // 585 rows against 210 columns: the rank is capped by the columns
        let s = gen_full(10, 13, FieldSpec::gf2(true), true, 1).unwrap();
        assert_eq!(rows_at_degree(&s, 4).unwrap(), 585);
        assert_eq!(crate::macaulay::rank_at_degree(&s, 4).unwrap(), 210);
        assert_eq!(kernel_dim_at_degree(&s, 4).unwrap(), 375);
        assert_eq!(triv_count(10, 13, 4, s.field()), 91);
    }

    #[test]
    fn delta_small_cases() {
        let k = FieldSpec::default_proxy();
        // v = 1: f = x1 * l
        let s = PolySystem::parse_polys(3, k, true, SystemKind::Ov { v: 1 }, &["x1^2 + 2*x1*x2 + 3*x1*x3"]).unwrap();
        let rel = delta_relation(&s, &[0]).unwrap();
        assert_eq!(rel.delta, s.ring().parse("x1 + 2*x2 + 3*x3").unwrap());
        assert!(verify_delta(&s, &rel, &s.ring().parse("x1^2").unwrap()).unwrap());
        let bad = s.ring().parse("x2*x3").unwrap();
        assert!(matches!(verify_delta(&s, &rel, &bad), Err(Error::Precondition(_))));
        // v = 2: det of the 2x2 linear-form matrix
        let s = PolySystem::parse_polys(
            4,
            k,
            true,
            SystemKind::Ov { v: 2 },
            &["x1*x3 + x2*x4", "x1*x4 + x2*x3 + x2^2"],
        )
        .unwrap();
        let rel = delta_relation(&s, &[0, 1]).unwrap();
        // A = [[x3, x4], [x4, x2 + x3]]
        assert_eq!(rel.delta, s.ring().parse("x2*x3 + x3^2 - x4^2").unwrap());
        for (i, f) in s.polys().iter().enumerate() {
            let mut acc = s.ring().zero();
            for (j, a) in rel.matrix[i].iter().enumerate() {
                acc = acc.add(&a.mul(&s.ring().var(j)).unwrap()).unwrap();
            }
            assert_eq!(&acc, f);
        }
        let sing = PolySystem::parse_polys(3, k, true, SystemKind::Ov { v: 2 }, &["x1*x3", "2*x1*x3"]).unwrap();
        assert!(matches!(delta_relation(&sing, &[0, 1]), Err(Error::SingularSubset(_))));
    }

    #[test]
    fn delta_membership_on_seeded_systems() {
        let s = gen_ov(6, 2, 3, FieldSpec::default_proxy(), true, 4).unwrap();
        let rel = delta_relation(&s, &[0, 1]).unwrap();
        assert_eq!(rel.delta.degree().unwrap(), 2);
        assert!(delta_annihilates_vinegar(&s, &rel).unwrap());
        assert!(verify_delta(&s, &rel, &s.ring().parse("x1*x2").unwrap()).unwrap());
        let s = gen_ov(7, 3, 3, FieldSpec::default_proxy(), true, 5).unwrap();
        let rel = delta_relation(&s, &[0, 1, 2]).unwrap();
        assert!(verify_delta(&s, &rel, &s.ring().parse("x1*x2").unwrap()).unwrap());
    }

    #[test]
    fn ov_splitting_is_additive() {
        for (s, d) in [
            (gen_ov(7, 2, 6, FieldSpec::default_proxy(), true, 1).unwrap(), 6),
            (gen_ov(6, 3, 4, FieldSpec::gf2(true), true, 2).unwrap(), 7),
        ] {
            let dec = ov_decomposition(&s, d).unwrap();
            assert!(dec.holds(), "{:?}", dec.mismatches);
            assert!(dec.rank_backends.iter().all(|b| *b == Backend::Macaulay));
        }
    }

    #[test]
    fn dreg_at_most_v_plus_one_when_overdetermined() {
        for seed in 0..3 {
            let s = gen_ov(6, 2, 6, FieldSpec::default_proxy(), true, seed).unwrap();
            let d = ov_dreg(&s, 8).unwrap();
            assert_eq!(d, 3);
            let dec = ov_decomposition(&s, 8).unwrap();
            assert_eq!(coeff(&dec.h_vf, 2), binom(5, 1).try_into().unwrap());
        }
    }

    #[test]
    fn index_of_regularity_cases() {
        let lin = TruncatedSeries::from_i64(&[1, 4, 6, 7, 8, 9, 10, 11, 12]);
        assert_eq!(index_of_regularity(&lin, 2, 8).unwrap(), 2);
        let vf = TruncatedSeries::from_i64(&[0, 3, 12, 1, 0, 0, 0]);
        assert_eq!(index_of_regularity(&vf, 0, 6).unwrap(), 4);
        let amb: Vec<i64> = (0..10).map(|d| ((d + 1) * (d + 2) / 2) as i64).collect();
        assert_eq!(index_of_regularity(&TruncatedSeries::from_i64(&amb), 3, 9).unwrap(), 0);
        assert!(matches!(
            index_of_regularity(&vf, 0, 4),
            Err(Error::InsufficientHeadroom { .. })
        ));
        // a tail of ones has index where the ones start
        let ones = TruncatedSeries::from_i64(&[0, 3, 12, 1, 1, 1, 1, 1]);
        assert_eq!(regularity_degree(&ones, 9, 7).unwrap(), 3);
    }

    #[test]
    fn krull_dimension_cases() {
        let k = FieldSpec::default_proxy();
        let zero = PolySystem::parse_polys(4, k, true, SystemKind::Full, &[]).unwrap();
        assert_eq!(krull_dimension(&zero, 4).unwrap(), 4);
        // regular OV sequence with m <= v: n - m
        let s = gen_ov(6, 3, 2, k, true, 7).unwrap();
        assert_eq!(krull_dimension(&s, 8).unwrap(), 4);
    }

    #[test]
    fn mixed_splitting_is_additive_and_reduces_to_ov() {
        let s = gen_mixed(7, 2, 4, 2, FieldSpec::default_proxy(), true, 3).unwrap();
        let dec = mixed_decomposition(&s, 7).unwrap();
        assert!(dec.holds(), "{:?}", dec);
        let ov = gen_ov(7, 2, 4, FieldSpec::default_proxy(), true, 3).unwrap();
        assert!(matches!(mixed_decomposition(&ov, 5), Err(Error::NotMixed(_))));
    }

    #[test]
    fn excess_at_v_plus_two() {
        let s = gen_ov(8, 2, 5, FieldSpec::default_proxy(), true, 1).unwrap();
        let r = tr_v2_check(&s, 4).unwrap();
        assert_eq!(r.expected, BigInt::from(10));
        assert!(r.holds, "{r:?}");
    }

    #[test]
    fn hfq_identity_for_a_single_quadric() {
        let s = gen_full(5, 1, FieldSpec::gf2(true), true, 1).unwrap();
        let r = hfq_decomposition_check(&s, 6).unwrap();
        assert!(r.holds_below_regularity, "{r:?}");
        let s = gen_full(4, 1, FieldSpec::new(3, true).unwrap(), true, 2).unwrap();
        let r = hfq_decomposition_check(&s, 6).unwrap();
        assert!(r.holds_below_regularity, "{r:?}");
    }

    #[test]
    fn report_serialises() {
        let s = gen_ov(6, 2, 6, FieldSpec::default_proxy(), true, 2).unwrap();
        let r = invariant_report(&s, 6, 5).unwrap();
        assert_eq!(r.d_reg, Some(3));
        assert_eq!(r.decomposition_verified, Some(true));
        let json = serde_json::to_string(&r).unwrap();
        let back: InvariantReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}
