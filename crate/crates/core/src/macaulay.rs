//! Macaulay matrices and the invariants read off them: empirical Hilbert
//! series by rank, solving degree and first fall degree.

use std::collections::HashMap;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::{rank, row_reduce, FieldSpec, Matrix, Rref};
use crate::gb::{field_equations, groebner_check, homogeneous_gb, GroebnerCheckResult, TruncatedGb};
use crate::invariants::triv_count;
use crate::polyring::{default_names, Monomial, Polynomial, Quotient, Ring};
use crate::series::TruncatedSeries;
use crate::sysgen::PolySystem;

/// Default cap on `rows * columns` for a dense matrix.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Above this many entries per degree, [`Backend::Auto`] switches from dense
/// Macaulay ranks to the truncated Gröbner-basis engine.
pub const AUTO_DENSE_LIMIT: u64 = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MacaulayMode {
    /// `M_d`: multiples of exact degree `d`.
    Homogeneous,
    /// `M_{<=d}`: all multiples of degree at most `d`.
    Affine,
}

/// How ranks of homogeneous Macaulay matrices are obtained.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    /// Dense Gaussian elimination of `M_d`.
    Macaulay,
    /// Standard-monomial count of a truncated Gröbner basis.
    Groebner,
    /// Dense when every matrix is small, the basis engine otherwise.
    #[default]
    Auto,
}

/// Labelled coefficient matrix of a system at (or up to) a degree.
#[derive(Debug, Clone)]
pub struct MacaulayMatrix {
    pub mode: MacaulayMode,
    pub degree: usize,
    /// Grevlex-descending column monomials.
    pub columns: Vec<Monomial>,
    /// `(multiplier, equation index)` per row.
    pub rows: Vec<(Monomial, usize)>,
    pub entries: Matrix,
    pub ring: Ring,
}

impl MacaulayMatrix {
    pub fn field(&self) -> &FieldSpec {
        &self.ring.field
    }

    pub fn rank(&self) -> usize {
        rank(&self.entries, &self.ring.field)
    }

    /// Rows minus rank: every linear relation among the rows.
    pub fn kernel_dim(&self) -> usize {
        self.rows.len() - self.rank()
    }

    pub fn rref(&self) -> Rref {
        row_reduce(&self.entries, &self.ring.field)
    }

    /// Nonzero rows of the reduced echelon form as polynomials, ordered
    /// grevlex-descending by leading monomial.
    pub fn rref_polynomials(&self) -> Vec<Polynomial> {
        let r = self.rref();
        (0..r.rank)
            .map(|i| self.row_polynomial(r.matrix.row(i)))
            .collect()
    }

    /// Read a coefficient vector over the columns as a polynomial.
    pub fn row_polynomial(&self, row: &[u32]) -> Polynomial {
        let mut p = self.ring.zero();
        for (m, &c) in self.columns.iter().zip(row) {
            if c != 0 {
                p.add_term(m.clone(), c);
            }
        }
        p
    }

    /// Row labels in the `<multiplier>*f<i>` convention (1-based equations).
    pub fn row_labels(&self) -> Vec<String> {
        let names = default_names(self.ring.n);
        self.rows
            .iter()
            .map(|(mu, i)| format!("{}*f{}", mu.display_with(&names), i + 1))
            .collect()
    }

    pub fn column_labels(&self) -> Vec<String> {
        let names = default_names(self.ring.n);
        self.columns.iter().map(|m| m.display_with(&names)).collect()
    }

    /// CSV with a header of column monomials and one labelled line per row.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let mut header = vec![String::new()];
        header.extend(self.column_labels());
        out.write_record(&header).map_err(csv_err)?;
        for (r, label) in self.row_labels().into_iter().enumerate() {
            let mut rec = vec![label];
            rec.extend(self.entries.row(r).iter().map(u32::to_string));
            out.write_record(&rec).map_err(csv_err)?;
        }
        out.flush()?;
        Ok(())
    }

    /// Inverse of [`MacaulayMatrix::write_csv`]; the ring, mode and degree are
    /// not part of the CSV and must be supplied.
    pub fn read_csv<R: std::io::Read>(
        r: R,
        ring: Ring,
        mode: MacaulayMode,
        degree: usize,
    ) -> Result<MacaulayMatrix> {
        let mut rd = csv::ReaderBuilder::new().has_headers(true).from_reader(r);
        let header = rd.headers().map_err(csv_err)?.clone();
        let columns = header
            .iter()
            .skip(1)
            .map(|label| parse_monomial(&ring, label))
            .collect::<Result<Vec<_>>>()?;
        let mut rows = Vec::new();
        let mut data = Vec::new();
        for (line, rec) in rd.records().enumerate() {
            let rec = rec.map_err(csv_err)?;
            let label = rec.get(0).unwrap_or_default();
            let (mu, eq) = label.rsplit_once("*f").ok_or_else(|| Error::Parse {
                line: line + 2,
                msg: format!("bad row label {label:?}"),
            })?;
            let eq: usize = eq.parse().map_err(|_| Error::Parse {
                line: line + 2,
                msg: format!("bad equation index in {label:?}"),
            })?;
            if eq == 0 {
                return Err(Error::Parse { line: line + 2, msg: "equations are 1-based".into() });
            }
            rows.push((parse_monomial(&ring, mu)?, eq - 1));
            let vals = rec
                .iter()
                .skip(1)
                .map(|v| {
                    v.parse::<u64>()
                        .map(|x| ring.field.reduce((x % u64::from(ring.field.p())) as i64))
                        .map_err(|_| Error::Parse { line: line + 2, msg: format!("bad entry {v:?}") })
                })
                .collect::<Result<Vec<u32>>>()?;
            if vals.len() != columns.len() {
                return Err(Error::Parse { line: line + 2, msg: "row width differs from header".into() });
            }
            data.push(vals);
        }
        let entries = if data.is_empty() {
            Matrix::zeros(0, columns.len())
        } else {
            Matrix::from_rows(&data)?
        };
        Ok(MacaulayMatrix { mode, degree, columns, rows, entries, ring })
    }
}

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Parse { line: 0, msg: format!("{other:?}") },
    }
}

fn parse_monomial(ring: &Ring, text: &str) -> Result<Monomial> {
    let p = ring.with_quotient(Quotient::None).parse(text)?;
    let single = match (p.len(), p.terms().next()) {
        (1, Some((m, 1))) => Some(m.clone()),
        _ => None,
    };
    single.ok_or_else(|| Error::Parse { line: 0, msg: format!("{text:?} is not a monomial") })
}

fn check_budget(rows: u64, cols: u64, budget: u64) -> Result<()> {
    if rows.saturating_mul(cols) > budget {
        return Err(Error::BudgetExceeded {
            rows: rows as usize,
            cols: cols as usize,
            budget,
        });
    }
    Ok(())
}

fn degrees(s: &PolySystem) -> Result<Vec<usize>> {
    s.polys().iter().map(Polynomial::degree).collect()
}

/// Build `M_d` (homogeneous mode) or `M_{<=d}` (affine mode) with the default budget.
pub fn build_macaulay(s: &PolySystem, d: usize, mode: MacaulayMode) -> Result<MacaulayMatrix> {
    build_macaulay_budgeted(s, d, mode, DEFAULT_BUDGET)
}

/// Rows of homogeneous mode: equations in system order, multipliers
/// grevlex-descending. Rows of affine mode follow the customary display:
/// by multiplier degree ascending, then equation, then multiplier ascending.
/// Columns are grevlex-descending (degree blocks descending in affine mode).
pub fn build_macaulay_budgeted(
    s: &PolySystem,
    d: usize,
    mode: MacaulayMode,
    budget: u64,
) -> Result<MacaulayMatrix> {
    let min = s.max_degree();
    if d < min {
        return Err(Error::DegreeTooSmall { d, min });
    }
    build_unchecked(s, d, mode, budget)
}

/// Like [`build_macaulay_budgeted`] but generators above `d` are skipped.
fn build_unchecked(s: &PolySystem, d: usize, mode: MacaulayMode, budget: u64) -> Result<MacaulayMatrix> {
    let ring = *s.ring();
    let degs = degrees(s)?;
    let columns: Vec<Monomial> = match mode {
        MacaulayMode::Homogeneous => ring.monomials_of_degree(d, None),
        MacaulayMode::Affine => (0..=d).rev().flat_map(|k| ring.monomials_of_degree(k, None)).collect(),
    };
    let mut rows: Vec<(Monomial, usize)> = Vec::new();
    match mode {
        MacaulayMode::Homogeneous => {
            let count: u64 = degs
                .iter()
                .filter(|&&e| e <= d)
                .map(|&e| ring.graded_component_dim(d - e))
                .sum();
            check_budget(count, columns.len() as u64, budget)?;
            for (i, &e) in degs.iter().enumerate() {
                if e <= d {
                    rows.extend(ring.monomials_of_degree(d - e, None).into_iter().map(|mu| (mu, i)));
                }
            }
        }
        MacaulayMode::Affine => {
            let count: u64 = degs
                .iter()
                .filter(|&&e| e <= d)
                .map(|&e| (0..=d - e).map(|k| ring.graded_component_dim(k)).sum::<u64>())
                .sum();
            check_budget(count, columns.len() as u64, budget)?;
            for k in 0..=d {
                let mults = ring.monomials_of_degree(k, None);
                for (i, &e) in degs.iter().enumerate() {
                    if e + k <= d {
                        rows.extend(mults.iter().rev().map(|mu| (mu.clone(), i)));
                    }
                }
            }
        }
    }
    let index: HashMap<&Monomial, usize> = columns.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let polys = s.polys();
    let sparse: Vec<Vec<(usize, u32)>> = rows
        .par_iter()
        .map(|(mu, i)| {
            polys[*i]
                .mul_monomial(mu)
                .terms()
                .map(|(m, c)| (index[m], c))
                .collect()
        })
        .collect();
    let mut entries = Matrix::zeros(rows.len(), columns.len());
    for (r, row) in sparse.into_iter().enumerate() {
        for (c, v) in row {
            entries.set(r, c, v);
        }
    }
    Ok(MacaulayMatrix { mode, degree: d, columns, rows, entries, ring })
}

fn homogeneous_view(s: &PolySystem) -> PolySystem {
    if s.homogeneous() {
        s.clone()
    } else {
        s.top_system()
    }
}

fn dense_fits_at(s: &PolySystem, degs: &[usize], d: usize, limit: u64) -> bool {
    let ring = s.ring();
    let rows: u64 = degs
        .iter()
        .filter(|&&e| e <= d)
        .map(|&e| ring.graded_component_dim(d - e))
        .sum();
    rows.saturating_mul(ring.graded_component_dim(d)) <= limit
}

/// The concrete backend [`Backend::Auto`] picks for degrees up to `dmax`:
/// dense only when every `M_d` fits.
pub fn resolve_backend(s: &PolySystem, dmax: usize, backend: Backend) -> Result<Backend> {
    let degs = degrees(s)?;
    Ok(match backend {
        Backend::Auto if (0..=dmax).all(|d| dense_fits_at(s, &degs, d, AUTO_DENSE_LIMIT)) => Backend::Macaulay,
        Backend::Auto => Backend::Groebner,
        b => b,
    })
}

/// The backend used for `rank M_d` at each degree. [`Backend::Auto`] goes
/// dense wherever `M_d` fits and falls back to the Gröbner engine elsewhere.
pub fn backends_by_degree(s: &PolySystem, dmax: usize, backend: Backend) -> Result<Vec<Backend>> {
    let degs = degrees(s)?;
    Ok((0..=dmax)
        .map(|d| match backend {
            Backend::Auto if dense_fits_at(s, &degs, d, AUTO_DENSE_LIMIT) => Backend::Macaulay,
            Backend::Auto => Backend::Groebner,
            b => b,
        })
        .collect())
}

/// `H(d) = dim R_d - rank M_d` for `d = 0..=dmax`. Non-homogeneous systems
/// are replaced by their top-degree parts.
pub fn empirical_hilbert(s: &PolySystem, dmax: usize) -> Result<TruncatedSeries> {
    empirical_hilbert_with(s, dmax, Backend::Auto, DEFAULT_BUDGET)
}

pub fn empirical_hilbert_with(
    s: &PolySystem,
    dmax: usize,
    backend: Backend,
    budget: u64,
) -> Result<TruncatedSeries> {
    let h = homogeneous_view(s);
    let ranks = ranks_by_degree(&h, dmax, backend, budget)?;
    let ring = h.ring();
    let coeffs: Vec<u64> = (0..=dmax).map(|d| ring.graded_component_dim(d) - ranks[d]).collect();
    Ok(TruncatedSeries::from_u64(&coeffs))
}

/// `rank M_d` (equivalently `dim I_d`) for `d = 0..=dmax` of a homogeneous
/// system; generators above `d` simply do not contribute.
pub fn ranks_by_degree(s: &PolySystem, dmax: usize, backend: Backend, budget: u64) -> Result<Vec<u64>> {
    require_homogeneous(s)?;
    let backends = backends_by_degree(s, dmax, backend)?;
    let gb = if backends.contains(&Backend::Groebner) {
        Some(homogeneous_gb(s.polys(), s.ring(), dmax)?)
    } else {
        None
    };
    ranks_from(s, &backends, gb.as_ref(), budget)
}

/// `rank M_d` under [`Backend::Auto`] together with the truncated Gröbner
/// basis, which is computed once and reused for the degrees too large for
/// dense elimination.
pub fn ranks_with_basis(s: &PolySystem, dmax: usize, budget: u64) -> Result<(Vec<u64>, Vec<Backend>, TruncatedGb)> {
    require_homogeneous(s)?;
    let backends = backends_by_degree(s, dmax, Backend::Auto)?;
    let gb = homogeneous_gb(s.polys(), s.ring(), dmax)?;
    let ranks = ranks_from(s, &backends, Some(&gb), budget)?;
    Ok((ranks, backends, gb))
}

fn ranks_from(s: &PolySystem, backends: &[Backend], gb: Option<&TruncatedGb>, budget: u64) -> Result<Vec<u64>> {
    backends
        .iter()
        .enumerate()
        .map(|(d, b)| match (b, gb) {
            (Backend::Groebner, Some(gb)) => Ok(gb.ideal_dims[d]),
            _ => Ok(build_unchecked(s, d, MacaulayMode::Homogeneous, budget)?.rank() as u64),
        })
        .collect()
}

fn require_homogeneous(s: &PolySystem) -> Result<()> {
    if s.homogeneous() {
        Ok(())
    } else {
        Err(Error::Precondition("homogeneous system required; use its top system".into()))
    }
}

/// Number of rows of `M_d`.
pub fn rows_at_degree(s: &PolySystem, d: usize) -> Result<u64> {
    let ring = s.ring();
    Ok(degrees(s)?
        .iter()
        .filter(|&&e| e <= d)
        .map(|&e| ring.graded_component_dim(d - e))
        .sum())
}

pub fn rank_at_degree(s: &PolySystem, d: usize) -> Result<usize> {
    rank_at_degree_with(s, d, Backend::Auto)
}

pub fn rank_at_degree_with(s: &PolySystem, d: usize, backend: Backend) -> Result<usize> {
    require_homogeneous(s)?;
    let min = s.max_degree();
    if d < min {
        return Err(Error::DegreeTooSmall { d, min });
    }
    let rows = rows_at_degree(s, d)?;
    let cols = s.ring().graded_component_dim(d);
    let backend = match backend {
        Backend::Auto if rows.saturating_mul(cols) <= AUTO_DENSE_LIMIT => Backend::Macaulay,
        Backend::Auto => Backend::Groebner,
        b => b,
    };
    Ok(match backend {
        Backend::Groebner => homogeneous_gb(s.polys(), s.ring(), d)?.ideal_dims[d] as usize,
        _ => build_macaulay(s, d, MacaulayMode::Homogeneous)?.rank(),
    })
}

/// `rows(M_d) - rank(M_d)`: trivial relations plus degree falls.
pub fn kernel_dim_at_degree(s: &PolySystem, d: usize) -> Result<usize> {
    kernel_dim_at_degree_with(s, d, Backend::Auto)
}

pub fn kernel_dim_at_degree_with(s: &PolySystem, d: usize, backend: Backend) -> Result<usize> {
    let r = rank_at_degree_with(s, d, backend)?;
    Ok(rows_at_degree(s, d)? as usize - r)
}

/// Whether a homogeneous `f` of degree `d` lies in the span of the rows of
/// `M_d`: appending it as a row must not raise the rank.
pub fn ideal_membership(s: &PolySystem, f: &Polynomial) -> Result<bool> {
    require_homogeneous(s)?;
    if f.is_zero() {
        return Ok(true);
    }
    if !f.is_homogeneous() {
        return Err(Error::Precondition("membership is tested degree by degree".into()));
    }
    let d = f.degree()?;
    let m = build_unchecked(s, d, MacaulayMode::Homogeneous, DEFAULT_BUDGET)?;
    let before = m.rank();
    let g = f.with_ring(m.ring);
    let index: HashMap<&Monomial, usize> = m.columns.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut row = vec![0u32; m.columns.len()];
    for (mono, c) in g.terms() {
        row[index[mono]] = c;
    }
    let mut entries = m.entries.clone();
    entries.push_row(&row)?;
    Ok(rank(&entries, &m.ring.field) == before)
}

/// Nonzero rows of `rref(M_{<=d})` as polynomials.
pub fn affine_rref_polynomials(s: &PolySystem, d: usize) -> Result<Vec<Polynomial>> {
    Ok(build_macaulay(s, d, MacaulayMode::Affine)?.rref_polynomials())
}

/// Basis candidates at degree `d`: the rref rows of `M_{<=d}`, read in the
/// free ring together with the relations of the quotient (`x_i^q - x_i` or
/// `x_i^q`) when there is one.
fn solving_candidates(s: &PolySystem, d: usize) -> Result<Vec<Polynomial>> {
    let ring = *s.ring();
    let mut polys = affine_rref_polynomials(s, d)?;
    if ring.quotient != Quotient::None {
        let free = ring.with_quotient(Quotient::None);
        polys = polys.iter().map(|f| f.with_ring(free)).collect();
        match ring.quotient {
            Quotient::Affine => polys.extend(field_equations(&ring)),
            _ => polys.extend((0..ring.n).map(|i| {
                let mut e = vec![0u8; ring.n];
                e[i] = ring.field.p() as u8;
                free.term(1, Monomial::new(e))
            })),
        }
    }
    Ok(polys)
}

/// Buchberger check of the candidate set at degree `d`.
pub fn check_at_degree(s: &PolySystem, d: usize) -> Result<GroebnerCheckResult> {
    Ok(groebner_check(&solving_candidates(s, d)?))
}

/// Least `d <= d_max` such that the rows of `rref(M_{<=d})` form a Gröbner basis.
pub fn solving_degree(s: &PolySystem, d_max: usize) -> Result<usize> {
    Ok(solving_basis(s, d_max)?.0)
}

/// The solving degree together with the basis found there (in the free ring
/// when the system lives in a quotient).
pub fn solving_basis(s: &PolySystem, d_max: usize) -> Result<(usize, Vec<Polynomial>)> {
    for d in s.max_degree()..=d_max {
        let polys = solving_candidates(s, d)?;
        if groebner_check(&polys).is_basis {
            return Ok((d, polys));
        }
    }
    Err(Error::NotFoundWithin(d_max))
}

/// Rows of `rref(M_{<=d})` of degree below `d` that are not already in the
/// row space of `M_{<=d-1}`: the affine degree falls at `d`.
pub fn affine_degree_falls(s: &PolySystem, d: usize) -> Result<Vec<Polynomial>> {
    let here = affine_rref_polynomials(s, d)?;
    let below: std::collections::HashSet<Monomial> = if d > s.max_degree() {
        affine_rref_polynomials(s, d - 1)?
            .iter()
            .filter_map(|f| f.leading_monomial().cloned())
            .collect()
    } else {
        Default::default()
    };
    Ok(here
        .into_iter()
        .filter(|f| f.degree().map_or(false, |e| e < d))
        .filter(|f| !below.contains(f.leading_monomial().expect("nonzero")))
        .collect())
}

/// Least `d <= d_max` where the kernel of `M_d` of the top system exceeds the
/// predicted number of trivial relations.
pub fn first_fall_degree(s: &PolySystem, d_max: usize) -> Result<usize> {
    let top = homogeneous_view(s);
    if top.polys().iter().any(|f| f.degree().ok() != Some(2)) {
        return Err(Error::Precondition("first fall degree needs a quadratic system".into()));
    }
    for d in 2..=d_max {
        let kernel = kernel_dim_at_degree(&top, d)? as i128;
        if kernel > triv_count(top.n(), top.m(), d, top.field()) {
            return Ok(d);
        }
    }
    Err(Error::NotFoundWithin(d_max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sysgen::{gen_full, gen_ov, SystemKind};

    fn exa() -> PolySystem {
        PolySystem::parse_polys(
            3,
            FieldSpec::gf2(false),
            false,
            SystemKind::Full,
            &[
                "x1^2 + x1*x2 + x2^2 + x1*x3 + x1 + x2 + x3",
                "x1^2 + x2^2 + x2*x3 + x3^2 + x1 + 1",
                "x1^2 + x2^2 + x1*x3 + x1 + x2 + 1",
                "x1^2 + x2^2 + x3^2 + x1 + x2 + x3",
            ],
        )
        .unwrap()
    }

    #[test]
    fn shapes_and_row_counts() {
        let s = exa();
        let m = build_macaulay(&s, 3, MacaulayMode::Affine).unwrap();
        assert_eq!((m.rows.len(), m.columns.len()), (16, 20));
        assert!(matches!(
            build_macaulay(&s, 1, MacaulayMode::Affine),
            Err(Error::DegreeTooSmall { d: 1, min: 2 })
        ));
        let g = gen_full(8, 1, FieldSpec::gf2(true), true, 2).unwrap();
        let m4 = build_macaulay(&g, 4, MacaulayMode::Homogeneous).unwrap();
        assert_eq!((m4.rows.len(), m4.columns.len()), (28, 70));
        assert_eq!(m4.rank(), 27);
        assert_eq!(rows_at_degree(&g, 4).unwrap(), 28);
    }

    #[test]
    fn single_polynomial_at_its_degree() {
        let g = gen_full(4, 1, FieldSpec::new(5, false).unwrap(), true, 9).unwrap();
        let m = build_macaulay(&g, 2, MacaulayMode::Homogeneous).unwrap();
        assert_eq!(m.rows.len(), 1);
        assert_eq!(m.row_polynomial(m.entries.row(0)), g.polys()[0]);
        assert_eq!(kernel_dim_at_degree(&g, 2).unwrap(), 0);
    }

    #[test]
    fn budget_guard() {
        let g = gen_full(8, 4, FieldSpec::default_proxy(), true, 1).unwrap();
        assert!(matches!(
            build_macaulay_budgeted(&g, 4, MacaulayMode::Homogeneous, 1000),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn backends_agree() {
        for (s, dmax) in [
            (gen_full(6, 4, FieldSpec::default_proxy(), true, 3).unwrap(), 6),
            (gen_ov(7, 2, 5, FieldSpec::gf2(true), true, 4).unwrap(), 7),
            (gen_full(5, 3, FieldSpec::new(3, true).unwrap(), true, 5).unwrap(), 8),
        ] {
            let a = empirical_hilbert_with(&s, dmax, Backend::Macaulay, DEFAULT_BUDGET).unwrap();
            let b = empirical_hilbert_with(&s, dmax, Backend::Groebner, DEFAULT_BUDGET).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn monomial_ideal_and_zero_system() {
        let s = PolySystem::parse_polys(3, FieldSpec::default_proxy(), true, SystemKind::Full, &["x1^2", "x1*x2"])
            .unwrap();
        let h = empirical_hilbert(&s, 3).unwrap();
        assert_eq!(h.to_i64_vec().unwrap(), vec![1, 3, 4, 5]);
        let z = PolySystem::parse_polys(4, FieldSpec::gf2(true), true, SystemKind::Full, &[]).unwrap();
        let h = empirical_hilbert(&z, 4).unwrap();
        assert_eq!(h.to_i64_vec().unwrap(), vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn exa_witness_and_degrees() {
        let s = exa();
        let polys = affine_rref_polynomials(&s, 3).unwrap();
        assert_eq!(polys.len(), 16);
        let res = groebner_check(&polys);
        let (i, j) = res.failing_pair.unwrap();
        let r = *s.ring();
        assert_eq!(polys[i], r.parse("x2*x3 + x3 + 1").unwrap());
        assert_eq!(polys[j], r.parse("x2").unwrap());
        assert_eq!(res.remainder.unwrap(), r.parse("x3 + 1").unwrap());
        assert_eq!(solving_degree(&s, 6).unwrap(), 4);
        assert_eq!(first_fall_degree(&s, 6).unwrap(), 3);
        let four = affine_rref_polynomials(&s, 4).unwrap();
        for lin in ["x1 + 1", "x2", "x3 + 1"] {
            assert!(four.contains(&r.parse(lin).unwrap()), "{lin}");
        }
    }

    #[test]
    fn linear_system_solves_at_one() {
        let s = PolySystem::parse_polys(2, FieldSpec::gf2(false), false, SystemKind::Full, &["x1 + 1", "x2"]).unwrap();
        assert_eq!(solving_degree(&s, 4).unwrap(), 1);
    }

    #[test]
    fn solving_degree_is_stable_in_d_max() {
        let s = exa();
        assert!(matches!(solving_degree(&s, 3), Err(Error::NotFoundWithin(3))));
        assert_eq!(solving_degree(&s, 4).unwrap(), 4);
        assert_eq!(solving_degree(&s, 7).unwrap(), 4);
    }

    #[test]
    fn csv_round_trip() {
        let s = exa();
        let m = build_macaulay(&s, 3, MacaulayMode::Affine).unwrap();
        let mut buf = Vec::new();
        m.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.lines().nth(1).unwrap().starts_with("1*f1,"));
        assert!(text.lines().nth(5).unwrap().starts_with("x3*f1,"));
        let back = MacaulayMatrix::read_csv(buf.as_slice(), *s.ring(), MacaulayMode::Affine, 3).unwrap();
        assert_eq!(back.columns, m.columns);
        assert_eq!(back.rows, m.rows);
        assert_eq!(back.entries, m.entries);
    }

    #[test]
    fn affine_falls_of_the_example() {
        let falls = affine_degree_falls(&exa(), 3).unwrap();
        assert!(!falls.is_empty());
        assert!(falls.iter().all(|f| f.degree().unwrap() < 3));
    }
}
