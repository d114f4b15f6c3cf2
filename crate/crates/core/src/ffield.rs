//! Prime-field arithmetic and dense Gaussian elimination.
//!
//! Two matrix representations share one contract: [`Matrix`] stores residues
//! modulo `p` row-major, [`BitMatrix`] packs GF(2) rows 64 columns per word.
//! [`row_reduce`] dispatches on the characteristic and always pivots on the
//! leftmost column with the topmost candidate row, so the reduced row echelon
//! form is reproducible bit for bit.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest modulus accepted for characteristic-zero proxy computations.
pub const MIN_PROXY_PRIME: u32 = 1 << 20;

/// Three fixed large primes used when a char-0 claim is re-run for agreement.
pub const DEFAULT_PROXY_PRIMES: [u32; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];

/// Below this many entries elimination stays on one thread.
const PAR_THRESHOLD: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldMode {
    /// Arithmetic in GF(p) is the object of study.
    Exact,
    /// GF(p) with a large `p` stands in for a characteristic-zero field.
    Char0Proxy,
}

/// A prime field GF(p), whether the ambient ring carries the field equations,
/// and whether the field is a proxy for characteristic zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    p: u32,
    mode: FieldMode,
    field_equations: bool,
}

impl FieldSpec {
    /// GF(p) in exact mode.
    pub fn new(p: u32, field_equations: bool) -> Result<Self> {
        if p < 2 || p >= 1 << 31 || !is_prime(u64::from(p)) {
            return Err(Error::NotPrime(u64::from(p)));
        }
        Ok(FieldSpec {
            p,
            mode: FieldMode::Exact,
            field_equations,
        })
    }

    /// GF(p) standing in for characteristic zero. Field equations are never
    /// imposed in this mode.
    pub fn char0_proxy(p: u32) -> Result<Self> {
        if p < MIN_PROXY_PRIME {
            return Err(Error::ProxyPrimeTooSmall(p));
        }
        let mut f = FieldSpec::new(p, false)?;
        f.mode = FieldMode::Char0Proxy;
        Ok(f)
    }

    /// The first of [`DEFAULT_PROXY_PRIMES`].
    pub fn default_proxy() -> Self {
        FieldSpec::char0_proxy(DEFAULT_PROXY_PRIMES[0]).expect("default proxy prime")
    }

    /// A random proxy prime in `[2^20, 2^31)`.
    pub fn random_proxy<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let candidate = rng.gen_range(MIN_PROXY_PRIME..(1u32 << 31)) | 1;
            if is_prime(u64::from(candidate)) {
                return FieldSpec::char0_proxy(candidate).expect("prime in range");
            }
        }
    }

    pub fn gf2(field_equations: bool) -> Self {
        FieldSpec::new(2, field_equations).expect("2 is prime")
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn mode(&self) -> FieldMode {
        self.mode
    }

    #[inline]
    pub fn field_equations(&self) -> bool {
        self.field_equations
    }

    pub fn is_char0_proxy(&self) -> bool {
        self.mode == FieldMode::Char0Proxy
    }

    /// Same field with the field-equation flag replaced.
    pub fn with_field_equations(self, on: bool) -> Result<Self> {
        if on && self.is_char0_proxy() {
            return Err(Error::BadParameters(
                "field equations are not available in char-0 proxy mode".into(),
            ));
        }
        Ok(FieldSpec {
            field_equations: on,
            ..self
        })
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = u64::from(a) + u64::from(b);
        let p = u64::from(self.p);
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (u64::from(a) + u64::from(self.p) - u64::from(b)) as u32
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((u64::from(a) * u64::from(b)) % u64::from(self.p)) as u32
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat's little theorem.
    pub fn inv(&self, a: u32) -> Result<u32> {
        let a = a % self.p;
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, u64::from(self.p) - 2))
    }

    /// Reduce a signed integer into `[0, p)`.
    pub fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(i64::from(self.p)) as u32
    }

    pub fn element(&self, v: i64) -> FieldElement {
        FieldElement(self.reduce(v))
    }
}

/// A residue in `[0, p)`. The field it belongs to travels separately.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub fn value(self) -> u32 {
        self.0
    }
}

pub fn fe_inv(a: FieldElement, field: &FieldSpec) -> Result<FieldElement> {
    field.inv(a.0).map(FieldElement)
}

/// Deterministic Miller-Rabin, exact for every `n < 3_317_044_064_679_887_385_961_981`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % small == 0 {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((u128::from(a) * u128::from(b)) % u128::from(n)) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Dense row-major matrix of residues.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    /// Build from nested rows; every row must have the same length.
    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(
                "matrix rows have different lengths".into(),
            ));
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [u32] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Append a row, growing the matrix.
    pub fn push_row(&mut self, row: &[u32]) -> Result<()> {
        if self.rows > 0 && row.len() != self.cols {
            return Err(Error::DimensionMismatch("row length".into()));
        }
        if self.rows == 0 {
            self.cols = row.len();
        }
        self.data.extend_from_slice(row);
        self.rows += 1;
        Ok(())
    }

    pub fn is_zero_row(&self, r: usize) -> bool {
        self.row(r).iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }
}

/// Result of [`row_reduce`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    /// Same shape as the input; nonzero rows first, zero rows after.
    pub matrix: Matrix,
    pub rank: usize,
    pub pivot_columns: Vec<usize>,
}

/// Reduced row echelon form.
pub fn row_reduce(m: &Matrix, field: &FieldSpec) -> Rref {
    if field.p() == 2 {
        let mut b = BitMatrix::from_matrix(m);
        let (rank, pivots) = b.rref();
        return Rref {
            matrix: b.to_matrix(),
            rank,
            pivot_columns: pivots,
        };
    }
    let mut a = m.clone();
    let (rank, pivots) = eliminate(&mut a, field, true);
    Rref {
        matrix: a,
        rank,
        pivot_columns: pivots,
    }
}

/// Rank only; skips back substitution.
pub fn rank(m: &Matrix, field: &FieldSpec) -> usize {
    if field.p() == 2 {
        return BitMatrix::from_matrix(m).rank();
    }
    let mut a = m.clone();
    eliminate(&mut a, field, false).0
}

fn eliminate(a: &mut Matrix, field: &FieldSpec, full: bool) -> (usize, Vec<usize>) {
    let (rows, cols) = (a.rows, a.cols);
    let p = u64::from(field.p());
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..cols {
        if pr == rows {
            break;
        }
        let Some(found) = (pr..rows).find(|&r| a.get(r, c) != 0) else {
            continue;
        };
        if found != pr {
            for k in c..cols {
                a.data.swap(found * cols + k, pr * cols + k);
            }
        }
        let inv = field.inv(a.get(pr, c)).expect("nonzero pivot");
        for v in &mut a.row_mut(pr)[c..] {
            *v = field.mul(*v, inv);
        }
        let pivot_row: Vec<u32> = a.row(pr)[c..].to_vec();
        let update = |(r, row): (usize, &mut [u32])| {
            if r == pr || (!full && r < pr) {
                return;
            }
            let f = row[c];
            if f == 0 {
                return;
            }
            let neg = p - u64::from(f);
            for (x, &y) in row[c..].iter_mut().zip(&pivot_row) {
                if y != 0 {
                    *x = ((u64::from(*x) + neg * u64::from(y)) % p) as u32;
                }
            }
        };
        if rows * (cols - c) >= PAR_THRESHOLD {
            a.data.par_chunks_mut(cols).enumerate().for_each(update);
        } else {
            a.data.chunks_mut(cols).enumerate().for_each(update);
        }
        pivots.push(c);
        pr += 1;
    }
    (pr, pivots)
}

/// GF(2) matrix with rows packed into 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        BitMatrix {
            rows,
            cols,
            words,
            data: vec![0; rows * words],
        }
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        let mut b = BitMatrix::zeros(m.rows, m.cols);
        for r in 0..m.rows {
            for c in 0..m.cols {
                if m.get(r, c) & 1 == 1 {
                    b.set(r, c, true);
                }
            }
        }
        b
    }

    pub fn to_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    m.set(r, c, 1);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        (self.data[r * self.words + c / 64] >> (c % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let w = &mut self.data[r * self.words + c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.words {
            self.data.swap(a * self.words + k, b * self.words + k);
        }
    }

    fn reduce(&mut self, full: bool) -> (usize, Vec<usize>) {
        let words = self.words;
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..self.cols {
            if pr == self.rows {
                break;
            }
            let Some(found) = (pr..self.rows).find(|&r| self.get(r, c)) else {
                continue;
            };
            self.swap_rows(found, pr);
            let w0 = c / 64;
            let pivot: Vec<u64> = self.data[pr * words + w0..(pr + 1) * words].to_vec();
            let bit = 1u64 << (c % 64);
            let update = |(r, row): (usize, &mut [u64])| {
                if r == pr || (!full && r < pr) || row[w0] & bit == 0 {
                    return;
                }
                for (x, y) in row[w0..].iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            };
            if self.rows * (words - w0) * 64 >= PAR_THRESHOLD {
                self.data.par_chunks_mut(words).enumerate().for_each(update);
            } else {
                self.data.chunks_mut(words).enumerate().for_each(update);
            }
            pivots.push(c);
            pr += 1;
        }
        (pr, pivots)
    }

    pub fn rref(&mut self) -> (usize, Vec<usize>) {
        self.reduce(true)
    }

    pub fn rank(mut self) -> usize {
        self.reduce(false).0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u32) -> FieldSpec {
        FieldSpec::new(p, false).unwrap()
    }

    #[test]
    fn inverses_small_fields() {
        let f7 = gf(7);
        assert_eq!(fe_inv(FieldElement(1), &f7).unwrap(), FieldElement(1));
        assert_eq!(fe_inv(FieldElement(3), &f7).unwrap(), FieldElement(5));
        assert_eq!(fe_inv(FieldElement(1), &gf(2)).unwrap(), FieldElement(1));
        assert!(matches!(
            fe_inv(FieldElement(0), &f7),
            Err(Error::ZeroInverse)
        ));
        // exhaustive: every unit of GF(7)
        for a in 1..7 {
            assert_eq!(f7.mul(a, f7.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn construction_rejects_bad_moduli() {
        assert!(FieldSpec::new(1, false).is_err());
        assert!(FieldSpec::new(9, false).is_err());
        assert!(FieldSpec::char0_proxy(65_537).is_err());
        for p in DEFAULT_PROXY_PRIMES {
            assert!(FieldSpec::char0_proxy(p).is_ok(), "{p}");
        }
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = FieldSpec::random_proxy(&mut rng);
        assert!(f.p() >= MIN_PROXY_PRIME && is_prime(u64::from(f.p())));
    }

    #[test]
    fn primality_against_trial_division() {
        let trial = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..5000 {
            assert_eq!(is_prime(n), trial(n), "{n}");
        }
    }

    #[test]
    fn identity_gf2() {
        let r = row_reduce(&Matrix::identity(3), &gf(2));
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivot_columns, vec![0, 1, 2]);
    }

    #[test]
    fn empty_matrix_has_rank_zero() {
        let m = Matrix::zeros(0, 0);
        assert_eq!(row_reduce(&m, &gf(5)).rank, 0);
        assert_eq!(rank(&Matrix::zeros(3, 4), &gf(2)), 0);
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(Matrix::from_rows(&[vec![1, 2], vec![3]]).is_err());
    }

    // Independent oracle: rank = size of the largest nonsingular square minor,
    // with determinants by permutation expansion.
    fn det_by_permutations(m: &[Vec<u32>], p: u32) -> u32 {
        let n = m.len();
        let mut idx: Vec<usize> = (0..n).collect();
        let mut total: i64 = 0;
        permute(&mut idx, 0, &mut |perm| {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| perm[i] > perm[j])
                .count();
            let mut prod: i64 = 1;
            for (r, &c) in perm.iter().enumerate() {
                prod = prod * i64::from(m[r][c]) % i64::from(p);
            }
            total += if inversions % 2 == 0 { prod } else { -prod };
        });
        total.rem_euclid(i64::from(p)) as u32
    }

    fn permute(idx: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
        if k == idx.len() {
            f(idx);
            return;
        }
        for i in k..idx.len() {
            idx.swap(k, i);
            permute(idx, k + 1, f);
            idx.swap(k, i);
        }
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                go(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        go(0, n, k, &mut cur, &mut out);
        out
    }

    fn minor_rank(m: &Matrix, p: u32) -> usize {
        let max = m.rows().min(m.cols());
        for k in (1..=max).rev() {
            for rs in subsets(m.rows(), k) {
                for cs in subsets(m.cols(), k) {
                    let sub: Vec<Vec<u32>> = rs
                        .iter()
                        .map(|&r| cs.iter().map(|&c| m.get(r, c)).collect())
                        .collect();
                    if det_by_permutations(&sub, p) != 0 {
                        return k;
                    }
                }
            }
        }
        0
    }

    fn random_matrix(rows: usize, cols: usize, p: u32, seed: u64) -> Matrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = Matrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, rng.gen_range(0..p));
            }
        }
        m
    }

    #[test]
    fn gf2_rank_matches_minor_oracle_on_shrunk_copies() {
        // random 10x10 over GF(2); the oracle enumerates minors of 4x4 corners
        let m = random_matrix(10, 10, 2, 11);
        for (r0, c0) in [(0, 0), (3, 5), (6, 6), (2, 1)] {
            let mut shrunk = Matrix::zeros(4, 4);
            for r in 0..4 {
                for c in 0..4 {
                    shrunk.set(r, c, m.get(r0 + r, c0 + c));
                }
            }
            assert_eq!(rank(&shrunk, &gf(2)), minor_rank(&shrunk, 2));
        }
        let full = rank(&m, &gf(2));
        assert!(full <= 10);
        assert_eq!(full, row_reduce(&m, &gf(2)).rank);
    }

    // Fraction-free (Bareiss-style) elimination over the integers, reduced
    // mod p only when testing for zero. Independent of `eliminate`.
    fn fraction_free_rank(m: &Matrix, p: u32) -> usize {
        let mut a: Vec<Vec<i128>> = m
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(i128::from).collect())
            .collect();
        let p = i128::from(p);
        let rows = a.len();
        let cols = if rows == 0 { 0 } else { a[0].len() };
        let mut rank = 0;
        for c in 0..cols {
            let Some(piv) = (rank..rows).find(|&r| a[r][c].rem_euclid(p) != 0) else {
                continue;
            };
            a.swap(rank, piv);
            for r in rank + 1..rows {
                let (x, y) = (a[rank][c], a[r][c]);
                for k in 0..cols {
                    a[r][k] = (a[r][k] * x - a[rank][k] * y).rem_euclid(p);
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn rank_matches_fraction_free_small() {
        for seed in 0..40u64 {
            let p = [2u32, 3, 5, 7, 101][seed as usize % 5];
            let rows = 1 + (seed as usize * 7) % 8;
            let cols = 1 + (seed as usize * 3) % 8;
            let m = random_matrix(rows, cols, p, seed);
            assert_eq!(rank(&m, &gf(p)), fraction_free_rank(&m, p), "seed {seed}");
        }
    }

    #[test]
    fn proxy_primes_agree_on_integer_matrix() {
        // a small integer matrix of rank 2
        let rows = vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1], vec![3, 2, 5]];
        let m = Matrix::from_rows(&rows).unwrap();
        let ranks: Vec<usize> = DEFAULT_PROXY_PRIMES
            .iter()
            .map(|&p| rank(&m, &FieldSpec::char0_proxy(p).unwrap()))
            .collect();
        assert_eq!(ranks, vec![2, 2, 2]);
    }

    #[test]
    fn large_matrix_uses_parallel_path_deterministically() {
        let m = random_matrix(300, 300, 7, 5);
        let a = row_reduce(&m, &gf(7));
        let b = row_reduce(&m, &gf(7));
        assert_eq!(a, b);
        let g = random_matrix(300, 400, 2, 5);
        assert_eq!(row_reduce(&g, &gf(2)), row_reduce(&g, &gf(2)));
    }

    proptest! {
        #[test]
        fn inverse_is_involution(a in 1u32..1_000_000, pi in 0usize..3) {
            let f = FieldSpec::char0_proxy(DEFAULT_PROXY_PRIMES[pi]).unwrap();
            let x = FieldElement(a);
            prop_assert_eq!(fe_inv(fe_inv(x, &f).unwrap(), &f).unwrap(), x);
        }

        #[test]
        fn rref_is_idempotent(seed in any::<u64>(), pi in 0usize..3) {
            let p = [2u32, 3, 13][pi];
            let m = random_matrix(6, 7, p, seed);
            let once = row_reduce(&m, &gf(p));
            let twice = row_reduce(&once.matrix, &gf(p));
            prop_assert_eq!(once, twice);
        }
    }
}
