//! Quadratic systems: generation, classification, linear changes of
//! coordinates and the text/JSON file formats.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::{self, FieldMode, FieldSpec, Matrix};
use crate::polyring::{Monomial, Polynomial, Quotient, Ring};

/// Structural class of a system. Vinegar variables are always `x1..xv`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum SystemKind {
    Ov { v: usize },
    Mixed { v: usize, e: usize, u: usize },
    Full,
}

impl SystemKind {
    pub fn vinegar(&self) -> Option<usize> {
        match *self {
            SystemKind::Ov { v } | SystemKind::Mixed { v, .. } => Some(v),
            SystemKind::Full => None,
        }
    }
}

/// A list of polynomials over one ring, with its classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySystem {
    ring: Ring,
    polys: Vec<Polynomial>,
    homogeneous: bool,
    kind: SystemKind,
    seed: Option<u64>,
}

/// True when no degree-2 monomial has both indices outside `x1..xv`.
fn poly_is_ov(f: &Polynomial, v: usize) -> bool {
    f.monomials()
        .filter(|m| m.degree() == 2)
        .all(|m| m.support().next().is_some_and(|i| i < v))
}

impl PolySystem {
    /// Validates homogeneity and the structural kind. The ring must carry the
    /// quotient matching `homogeneous`.
    pub fn new(
        ring: Ring,
        polys: Vec<Polynomial>,
        homogeneous: bool,
        kind: SystemKind,
    ) -> Result<Self> {
        let expected = Ring::new(ring.n, ring.field, homogeneous);
        if expected.quotient != ring.quotient {
            return Err(Error::BadParameters(format!(
                "ring quotient {:?} does not match homogeneous = {homogeneous}",
                ring.quotient
            )));
        }
        let polys: Vec<Polynomial> = polys.into_iter().map(|f| f.with_ring(ring)).collect();
        if homogeneous {
            if let Some(i) = polys.iter().position(|f| !f.is_homogeneous()) {
                return Err(Error::BadParameters(format!("polynomial {} is not homogeneous", i + 1)));
            }
        }
        match kind {
            SystemKind::Ov { v } => {
                if v > ring.n {
                    return Err(Error::BadParameters(format!("v = {v} exceeds n = {}", ring.n)));
                }
                if let Some(i) = polys.iter().position(|f| !poly_is_ov(f, v)) {
                    return Err(Error::NotOv(format!("polynomial {} has an oil-oil monomial", i + 1)));
                }
            }
            SystemKind::Mixed { v, e, u } => {
                if e + u != polys.len() {
                    return Err(Error::NotMixed(format!(
                        "e + u = {} but the system has {} polynomials",
                        e + u,
                        polys.len()
                    )));
                }
                if v > ring.n {
                    return Err(Error::BadParameters(format!("v = {v} exceeds n = {}", ring.n)));
                }
                if let Some(i) = polys[..e].iter().position(|f| !poly_is_ov(f, v)) {
                    return Err(Error::NotMixed(format!(
                        "OV part polynomial {} has an oil-oil monomial",
                        i + 1
                    )));
                }
            }
            SystemKind::Full => {}
        }
        Ok(PolySystem {
            ring,
            polys,
            homogeneous,
            kind,
            seed: None,
        })
    }

    /// Convenience constructor: builds the ring from `field` and `homogeneous`.
    pub fn from_polys(
        n: usize,
        field: FieldSpec,
        homogeneous: bool,
        kind: SystemKind,
        polys: Vec<Polynomial>,
    ) -> Result<Self> {
        PolySystem::new(Ring::new(n, field, homogeneous), polys, homogeneous, kind)
    }

    /// Parse polynomials given in the ASCII grammar.
    pub fn parse_polys(
        n: usize,
        field: FieldSpec,
        homogeneous: bool,
        kind: SystemKind,
        texts: &[&str],
    ) -> Result<Self> {
        let ring = Ring::new(n, field, homogeneous);
        let polys = texts
            .iter()
            .enumerate()
            .map(|(i, t)| {
                ring.parse(t).map_err(|e| match e {
                    Error::Parse { msg, .. } => Error::Parse { line: i + 1, msg },
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        PolySystem::new(ring, polys, homogeneous, kind)
    }

    pub fn with_seed(mut self, seed: Option<u64>) -> Self {
        self.seed = seed;
        self
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn field(&self) -> &FieldSpec {
        &self.ring.field
    }

    pub fn n(&self) -> usize {
        self.ring.n
    }

    pub fn m(&self) -> usize {
        self.polys.len()
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn kind(&self) -> SystemKind {
        self.kind
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// Largest generator degree (0 for the empty system).
    pub fn max_degree(&self) -> usize {
        self.polys
            .iter()
            .filter_map(|f| f.degree().ok())
            .max()
            .unwrap_or(0)
    }

    /// The homogeneous system of top parts, read in the graded ring.
    pub fn top_system(&self) -> PolySystem {
        let ring = Ring::new(self.n(), *self.field(), true);
        let polys = self
            .polys
            .iter()
            .filter(|f| !f.is_zero())
            .map(|f| f.top_part().expect("nonzero").with_ring(ring))
            .filter(|f| !f.is_zero())
            .collect::<Vec<_>>();
        let kind = match self.kind {
            SystemKind::Mixed { v, .. } => {
                // membership may shift once zero tops are dropped
                let e = polys.iter().take_while(|f| poly_is_ov(f, v)).count();
                SystemKind::Mixed { v, e, u: polys.len() - e }
            }
            k => k,
        };
        PolySystem {
            ring,
            polys,
            homogeneous: true,
            kind,
            seed: self.seed,
        }
    }

    /// The first `k` polynomials.
    pub fn prefix(&self, k: usize) -> PolySystem {
        self.subsystem(&(0..k.min(self.m())).collect::<Vec<_>>())
    }

    /// Polynomials at the given indices, classified as OV when the parent is
    /// OV or every chosen polynomial lies in the OV part of a mixed system.
    pub fn subsystem(&self, indices: &[usize]) -> PolySystem {
        let polys: Vec<Polynomial> = indices.iter().map(|&i| self.polys[i].clone()).collect();
        let kind = match self.kind {
            SystemKind::Ov { v } => SystemKind::Ov { v },
            SystemKind::Mixed { v, e, .. } if indices.iter().all(|&i| i < e) => SystemKind::Ov { v },
            SystemKind::Mixed { v, e, .. } => {
                let ee = indices.iter().take_while(|&&i| i < e).count();
                if indices[ee..].iter().all(|&i| i >= e) {
                    SystemKind::Mixed { v, e: ee, u: indices.len() - ee }
                } else {
                    SystemKind::Full
                }
            }
            SystemKind::Full => SystemKind::Full,
        };
        PolySystem {
            ring: self.ring,
            polys,
            homogeneous: self.homogeneous,
            kind,
            seed: self.seed,
        }
    }

    /// Same system with a different kind, validated.
    pub fn reclassify(&self, kind: SystemKind) -> Result<PolySystem> {
        PolySystem::new(self.ring, self.polys.clone(), self.homogeneous, kind)
            .map(|s| s.with_seed(self.seed))
    }

    /// Append a polynomial; the kind drops to `Full` unless it stays valid.
    pub fn push(&self, f: Polynomial) -> Result<PolySystem> {
        let f = f.with_ring(self.ring);
        let kind = match self.kind {
            SystemKind::Ov { v } if poly_is_ov(&f, v) => SystemKind::Ov { v },
            SystemKind::Mixed { v, e, u } => SystemKind::Mixed { v, e, u: u + 1 },
            _ => SystemKind::Full,
        };
        let mut polys = self.polys.clone();
        polys.push(f);
        PolySystem::new(self.ring, polys, self.homogeneous, kind).map(|s| s.with_seed(self.seed))
    }

    /// Read the same polynomials over a different field (same `n`).
    pub fn over_field(&self, field: FieldSpec) -> Result<PolySystem> {
        let ring = Ring::new(self.n(), field, self.homogeneous);
        PolySystem::new(
            ring,
            self.polys.iter().map(|f| f.with_ring(ring)).collect(),
            self.homogeneous,
            self.kind,
        )
        .map(|s| s.with_seed(self.seed))
    }

    pub fn summary(&self) -> String {
        let kind = match self.kind {
            SystemKind::Ov { v } => format!("ov v={v}"),
            SystemKind::Mixed { v, e, u } => format!("mixed v={v} e={e} u={u}"),
            SystemKind::Full => "full".to_string(),
        };
        format!(
            "{} polynomials in {} variables over GF({}){}, {}, {}",
            self.m(),
            self.n(),
            self.field().p(),
            if self.field().field_equations() { " with field equations" } else { "" },
            if self.homogeneous { "homogeneous" } else { "non-homogeneous" },
            kind
        )
    }

    /// Serialize in the line-oriented text format.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let f = self.field();
        let _ = write!(s, "ring GF({}) vars {}", f.p(), self.n());
        if f.field_equations() {
            s.push_str(" field_equations");
        }
        if f.is_char0_proxy() {
            s.push_str(" char0_proxy");
        }
        s.push('\n');
        match self.kind {
            SystemKind::Ov { v } => {
                let _ = writeln!(s, "kind ov {v}");
            }
            SystemKind::Mixed { v, e, u } => {
                let _ = writeln!(s, "kind mixed {v} {e} {u}");
            }
            SystemKind::Full => s.push_str("kind full\n"),
        }
        let _ = writeln!(s, "homogeneous {}", self.homogeneous);
        if let Some(seed) = self.seed {
            let _ = writeln!(s, "# seed {seed}");
        }
        for p in &self.polys {
            let _ = writeln!(s, "{p}");
        }
        s
    }

    /// Parse the text format. Blank lines are ignored; lines starting with
    /// `#` are comments, except `# seed <u64>` which restores the seed.
    pub fn from_text(text: &str) -> Result<PolySystem> {
        let mut header: Vec<(usize, &str)> = Vec::new();
        let mut bodies: Vec<(usize, &str)> = Vec::new();
        let mut seed = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(c) = line.strip_prefix('#') {
                let mut it = c.split_whitespace();
                if it.next() == Some("seed") {
                    seed = Some(parse_num(it.next().unwrap_or(""), i + 1)?);
                }
                continue;
            }
            if header.len() < 3 {
                header.push((i + 1, line));
            } else {
                bodies.push((i + 1, line));
            }
        }
        if header.len() < 3 {
            return Err(Error::Parse {
                line: text.lines().count(),
                msg: "expected ring, kind and homogeneous header lines".into(),
            });
        }
        let (field, n) = parse_ring_line(header[0].0, header[0].1)?;
        let kind = parse_kind_line(header[1].0, header[1].1)?;
        let homogeneous = parse_homogeneous_line(header[2].0, header[2].1)?;
        let ring = Ring::new(n, field, homogeneous);
        let polys = bodies
            .iter()
            .map(|&(ln, l)| {
                ring.parse(l).map_err(|e| match e {
                    Error::Parse { msg, .. } => Error::Parse { line: ln, msg },
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PolySystem::new(ring, polys, homogeneous, kind)?.with_seed(seed))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&SystemJson::from(self))?)
    }

    pub fn from_json(text: &str) -> Result<PolySystem> {
        let j: SystemJson = serde_json::from_str(text)?;
        j.into_system()
    }

    /// Reads either format, chosen by the first non-blank character.
    pub fn from_str_any(text: &str) -> Result<PolySystem> {
        if text.trim_start().starts_with('{') {
            PolySystem::from_json(text)
        } else {
            PolySystem::from_text(text)
        }
    }

    pub fn read_file(path: &std::path::Path) -> Result<PolySystem> {
        PolySystem::from_str_any(&std::fs::read_to_string(path)?)
    }
}

fn parse_num<T: std::str::FromStr>(s: &str, line: usize) -> Result<T> {
    s.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("expected a number, got {s:?}"),
    })
}

fn parse_ring_line(line: usize, l: &str) -> Result<(FieldSpec, usize)> {
    let bad = |msg: &str| Error::Parse { line, msg: msg.to_string() };
    let toks: Vec<&str> = l.split_whitespace().collect();
    if toks.len() < 4 || toks[0] != "ring" || toks[2] != "vars" {
        return Err(bad("expected `ring GF(<p>) vars <n> [field_equations]`"));
    }
    let p: u32 = toks[1]
        .strip_prefix("GF(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| bad("expected GF(<p>)"))
        .and_then(|s| parse_num(s, line))?;
    let n: usize = parse_num(toks[3], line)?;
    let mut fe = false;
    let mut proxy = false;
    for t in &toks[4..] {
        match *t {
            "field_equations" => fe = true,
            "char0_proxy" => proxy = true,
            other => return Err(bad(&format!("unknown ring option {other:?}"))),
        }
    }
    let field = if proxy {
        if fe {
            return Err(bad("char0_proxy excludes field_equations"));
        }
        FieldSpec::char0_proxy(p)?
    } else {
        FieldSpec::new(p, fe)?
    };
    Ok((field, n))
}

fn parse_kind_line(line: usize, l: &str) -> Result<SystemKind> {
    let toks: Vec<&str> = l.split_whitespace().collect();
    match toks.as_slice() {
        ["kind", "ov", v] => Ok(SystemKind::Ov { v: parse_num(v, line)? }),
        ["kind", "mixed", v, e, u] => Ok(SystemKind::Mixed {
            v: parse_num(v, line)?,
            e: parse_num(e, line)?,
            u: parse_num(u, line)?,
        }),
        ["kind", "full"] => Ok(SystemKind::Full),
        _ => Err(Error::Parse {
            line,
            msg: "expected `kind ov <v> | mixed <v> <e> <u> | full`".into(),
        }),
    }
}

fn parse_homogeneous_line(line: usize, l: &str) -> Result<bool> {
    match l.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["homogeneous", "true"] => Ok(true),
        ["homogeneous", "false"] => Ok(false),
        _ => Err(Error::Parse {
            line,
            msg: "expected `homogeneous true|false`".into(),
        }),
    }
}

#[derive(Serialize, Deserialize)]
struct RingJson {
    p: u32,
    n: usize,
    field_equations: bool,
    mode: FieldMode,
}

#[derive(Serialize, Deserialize)]
struct SystemJson {
    ring: RingJson,
    kind: SystemKind,
    homogeneous: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    polys: Vec<String>,
}

impl From<&PolySystem> for SystemJson {
    fn from(s: &PolySystem) -> Self {
        SystemJson {
            ring: RingJson {
                p: s.field().p(),
                n: s.n(),
                field_equations: s.field().field_equations(),
                mode: s.field().mode(),
            },
            kind: s.kind,
            homogeneous: s.homogeneous,
            seed: s.seed,
            polys: s.polys.iter().map(ToString::to_string).collect(),
        }
    }
}

impl SystemJson {
    fn into_system(self) -> Result<PolySystem> {
        let field = match self.ring.mode {
            FieldMode::Exact => FieldSpec::new(self.ring.p, self.ring.field_equations)?,
            FieldMode::Char0Proxy => {
                FieldSpec::char0_proxy(self.ring.p)?.with_field_equations(self.ring.field_equations)?
            }
        };
        let texts: Vec<&str> = self.polys.iter().map(String::as_str).collect();
        Ok(PolySystem::parse_polys(self.ring.n, field, self.homogeneous, self.kind, &texts)?
            .with_seed(self.seed))
    }
}

/// Degree-2 monomials with at least one index in `x1..xv`.
fn ov_support(ring: &Ring, v: usize) -> Vec<Monomial> {
    ring.monomials_of_degree(2, None)
        .into_iter()
        .filter(|m| m.support().next().is_some_and(|i| i < v))
        .collect()
}

fn random_poly(ring: &Ring, quad: &[Monomial], homogeneous: bool, rng: &mut ChaCha8Rng) -> Polynomial {
    let p = ring.field.p();
    let mut lower = Vec::new();
    if !homogeneous {
        lower.extend(ring.monomials_of_degree(1, None));
        lower.extend(ring.monomials_of_degree(0, None));
    }
    loop {
        let mut f = ring.zero();
        for m in quad.iter().chain(lower.iter()) {
            f.add_term(m.clone(), rng.gen_range(0..p));
        }
        if f.degree().ok() == Some(2) {
            return f;
        }
    }
}

fn check_params(n: usize, v: Option<usize>, m: usize) -> Result<()> {
    if n == 0 || n > 64 {
        return Err(Error::BadParameters(format!("n = {n} must lie in 1..=64")));
    }
    if let Some(v) = v {
        if v == 0 || v >= n {
            return Err(Error::BadParameters(format!("need 0 < v < n, got v = {v}, n = {n}")));
        }
    }
    if m == 0 {
        return Err(Error::BadParameters("need at least one polynomial".into()));
    }
    Ok(())
}

/// `m` random OV polynomials with `v` vinegar variables.
pub fn gen_ov(
    n: usize,
    v: usize,
    m: usize,
    field: FieldSpec,
    homogeneous: bool,
    seed: u64,
) -> Result<PolySystem> {
    check_params(n, Some(v), m)?;
    let ring = Ring::new(n, field, homogeneous);
    let quad = ov_support(&ring, v);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let polys = (0..m).map(|_| random_poly(&ring, &quad, homogeneous, &mut rng)).collect();
    Ok(PolySystem::new(ring, polys, homogeneous, SystemKind::Ov { v })?.with_seed(Some(seed)))
}

/// `m` random fully quadratic polynomials.
pub fn gen_full(n: usize, m: usize, field: FieldSpec, homogeneous: bool, seed: u64) -> Result<PolySystem> {
    check_params(n, None, m)?;
    let ring = Ring::new(n, field, homogeneous);
    let quad = ring.monomials_of_degree(2, None);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let polys = (0..m).map(|_| random_poly(&ring, &quad, homogeneous, &mut rng)).collect();
    Ok(PolySystem::new(ring, polys, homogeneous, SystemKind::Full)?.with_seed(Some(seed)))
}

/// `e` random OV polynomials followed by `u` fully quadratic ones.
pub fn gen_mixed(
    n: usize,
    v: usize,
    e: usize,
    u: usize,
    field: FieldSpec,
    homogeneous: bool,
    seed: u64,
) -> Result<PolySystem> {
    check_params(n, Some(v), e + u)?;
    if e == 0 || u == 0 {
        return Err(Error::BadParameters("mixed systems need e >= 1 and u >= 1".into()));
    }
    let ring = Ring::new(n, field, homogeneous);
    let ov = ov_support(&ring, v);
    let full = ring.monomials_of_degree(2, None);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut polys: Vec<Polynomial> = (0..e).map(|_| random_poly(&ring, &ov, homogeneous, &mut rng)).collect();
    polys.extend((0..u).map(|_| random_poly(&ring, &full, homogeneous, &mut rng)));
    Ok(PolySystem::new(ring, polys, homogeneous, SystemKind::Mixed { v, e, u })?.with_seed(Some(seed)))
}

/// Smallest `v` such that every degree-2 monomial has an index in `x1..xv`;
/// `None` when no proper prefix works.
pub fn is_ov(s: &PolySystem) -> Option<usize> {
    let v = s
        .polys
        .iter()
        .flat_map(|f| f.monomials().filter(|m| m.degree() == 2).cloned().collect::<Vec<_>>())
        .map(|m| m.support().next().expect("degree 2") + 1)
        .max()
        .unwrap_or(0);
    (v < s.n() || s.n() == 0 && v == 0).then_some(v)
}

/// Whether the given variables (zero-based) can serve as the vinegar set.
pub fn is_ov_with(s: &PolySystem, vinegar: &[usize]) -> bool {
    s.polys.iter().all(|f| {
        f.monomials()
            .filter(|m| m.degree() == 2)
            .all(|m| m.support().any(|i| vinegar.contains(&i)))
    })
}

/// An invertible change of coordinates `x_i = sum_j T[i][j] y_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearTransform {
    matrix: Matrix,
    field: FieldSpec,
}

impl LinearTransform {
    pub fn new(matrix: Matrix, field: FieldSpec) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::DimensionMismatch(format!(
                "transform is {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if ffield::rank(&matrix, &field) != matrix.rows() {
            return Err(Error::SingularTransform);
        }
        Ok(LinearTransform { matrix, field })
    }

    pub fn from_rows(rows: &[Vec<i64>], field: FieldSpec) -> Result<Self> {
        let rows: Vec<Vec<u32>> = rows
            .iter()
            .map(|r| r.iter().map(|&c| field.reduce(c)).collect())
            .collect();
        LinearTransform::new(Matrix::from_rows(&rows)?, field)
    }

    pub fn identity(n: usize, field: FieldSpec) -> Self {
        LinearTransform {
            matrix: Matrix::identity(n),
            field,
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn inverse(&self) -> LinearTransform {
        let n = self.n();
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.matrix.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let r = ffield::row_reduce(&aug, &self.field);
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.matrix.get(i, n + j));
            }
        }
        LinearTransform {
            matrix: inv,
            field: self.field,
        }
    }
}

/// Substitute `x_i -> sum_j T[i][j] y_j` in every polynomial.
pub fn apply_transform(s: &PolySystem, t: &LinearTransform) -> Result<PolySystem> {
    let n = s.n();
    if t.n() != n {
        return Err(Error::DimensionMismatch(format!(
            "transform on {} variables, system on {n}",
            t.n()
        )));
    }
    if ffield::rank(&t.matrix, s.field()) != n {
        return Err(Error::SingularTransform);
    }
    let ring = *s.ring();
    let images: Vec<Polynomial> = (0..n)
        .map(|i| {
            let mut f = ring.zero();
            for j in 0..n {
                f.add_term(Monomial::var(n, j), t.matrix.get(i, j));
            }
            f
        })
        .collect();
    let polys = s
        .polys
        .iter()
        .map(|f| {
            let mut out = ring.zero();
            for (m, c) in f.terms() {
                let mut prod = ring.constant(i64::from(c));
                for (i, &e) in m.exps().iter().enumerate() {
                    for _ in 0..e {
                        prod = prod.mul(&images[i])?;
                    }
                }
                out = out.add(&prod)?;
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    let candidate = PolySystem {
        ring,
        polys,
        homogeneous: s.homogeneous,
        kind: SystemKind::Full,
        seed: s.seed,
    };
    let kind = match s.kind {
        SystemKind::Ov { v } if is_ov_with(&candidate, &(0..v).collect::<Vec<_>>()) => SystemKind::Ov { v },
        _ => SystemKind::Full,
    };
    Ok(PolySystem { kind, ..candidate })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Enumerate candidate oil subspaces in echelon form; `budget` caps the
    /// number of search nodes.
    Exhaustive { budget: u64 },
    /// Sample random invertible matrices.
    Randomized { attempts: u64, seed: u64 },
}

/// Find an invertible transform after which the system is OV with vinegar
/// `y1..y_{target_v}`.
pub fn search_ov_transform(
    s: &PolySystem,
    target_v: usize,
    mode: SearchMode,
) -> Result<Option<LinearTransform>> {
    let n = s.n();
    if target_v > n {
        return Err(Error::BadParameters(format!("target v = {target_v} exceeds n = {n}")));
    }
    if s.polys.iter().any(|f| f.monomials().any(|m| m.degree() != 2)) {
        return Err(Error::BadParameters("search needs a homogeneous quadratic system".into()));
    }
    let vinegar: Vec<usize> = (0..target_v).collect();
    let accept = |t: &LinearTransform| -> Result<bool> {
        Ok(is_ov_with(&apply_transform(s, t)?, &vinegar))
    };
    match mode {
        SearchMode::Exhaustive { budget } => {
            let q = s.field().p();
            if q > 3 || n > 8 {
                return Err(Error::BadParameters(format!(
                    "exhaustive search covers q <= 3 and n <= 8 (got q = {q}, n = {n})"
                )));
            }
            let k = n - target_v;
            let mut search = IsotropicSearch::new(s, budget);
            let mut found = None;
            search.run(k, &mut |basis, pivots| {
                let t = transform_from_oil_basis(n, basis, pivots, *s.field());
                match accept(&t) {
                    Ok(true) => {
                        found = Some(Ok(t));
                        true
                    }
                    Ok(false) => false,
                    Err(e) => {
                        found = Some(Err(e));
                        true
                    }
                }
            });
            found.transpose()
        }
        SearchMode::Randomized { attempts, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let field = *s.field();
            for _ in 0..attempts {
                let mut m = Matrix::zeros(n, n);
                for i in 0..n {
                    for j in 0..n {
                        m.set(i, j, rng.gen_range(0..field.p()));
                    }
                }
                let Ok(t) = LinearTransform::new(m, field) else {
                    continue;
                };
                if accept(&t)? {
                    return Ok(Some(t));
                }
            }
            Ok(None)
        }
    }
}

/// Columns `0..v` are unit vectors on the non-pivot coordinates, columns
/// `v..n` the oil basis.
fn transform_from_oil_basis(n: usize, basis: &[Vec<u32>], pivots: &[usize], field: FieldSpec) -> LinearTransform {
    let mut m = Matrix::zeros(n, n);
    let mut col = 0;
    for j in (0..n).filter(|j| !pivots.contains(j)) {
        m.set(j, col, 1);
        col += 1;
    }
    for w in basis {
        for (i, &c) in w.iter().enumerate() {
            m.set(i, col, c);
        }
        col += 1;
    }
    LinearTransform::new(m, field).expect("echelon basis plus complementary units is invertible")
}

/// Backtracking over echelon bases of subspaces on which every quadratic
/// form vanishes identically.
struct IsotropicSearch {
    n: usize,
    field: FieldSpec,
    /// Upper-triangular coefficient matrices `c[a][b]`, `a <= b`, one per polynomial.
    forms: Vec<Vec<Vec<u32>>>,
    /// Whether `z^2` survives in the ring (false for the graded GF(2) quotient).
    squares_matter: bool,
    nodes: u64,
    budget: u64,
}

impl IsotropicSearch {
    fn new(s: &PolySystem, budget: u64) -> Self {
        let n = s.n();
        let forms = s
            .polys
            .iter()
            .map(|f| {
                let mut c = vec![vec![0u32; n]; n];
                for (m, v) in f.terms() {
                    let idx: Vec<usize> = m
                        .exps()
                        .iter()
                        .enumerate()
                        .flat_map(|(i, &e)| std::iter::repeat(i).take(usize::from(e)))
                        .collect();
                    c[idx[0]][idx[1]] = v;
                }
                c
            })
            .collect();
        let field = *s.field();
        let squares_matter = !(s.ring().quotient == Quotient::Graded && field.p() == 2);
        IsotropicSearch {
            n,
            field,
            forms,
            squares_matter,
            nodes: 0,
            budget,
        }
    }

    /// `f(w)` and the polar form `B(w, u) = f(w+u) - f(w) - f(u)`.
    fn value(&self, c: &[Vec<u32>], w: &[u32]) -> u32 {
        let f = &self.field;
        let mut acc = 0;
        for a in 0..self.n {
            if w[a] == 0 {
                continue;
            }
            for b in a..self.n {
                if w[b] != 0 && c[a][b] != 0 {
                    acc = f.add(acc, f.mul(c[a][b], f.mul(w[a], w[b])));
                }
            }
        }
        acc
    }

    fn polar(&self, c: &[Vec<u32>], w: &[u32], u: &[u32]) -> u32 {
        let f = &self.field;
        let mut acc = 0;
        for a in 0..self.n {
            for b in a..self.n {
                if c[a][b] == 0 {
                    continue;
                }
                let t = f.add(f.mul(w[a], u[b]), f.mul(u[a], w[b]));
                acc = f.add(acc, f.mul(c[a][b], t));
            }
        }
        acc
    }

    fn compatible(&self, w: &[u32], basis: &[Vec<u32>]) -> bool {
        self.forms.iter().all(|c| {
            (!self.squares_matter || self.value(c, w) == 0)
                && basis.iter().all(|u| self.polar(c, w, u) == 0)
        })
    }

    fn run(&mut self, k: usize, visit: &mut dyn FnMut(&[Vec<u32>], &[usize]) -> bool) {
        let mut basis = Vec::new();
        let mut pivots = Vec::new();
        self.extend(k, 0, &mut basis, &mut pivots, visit);
    }

    /// Returns true to stop the search.
    fn extend(
        &mut self,
        k: usize,
        min_pivot: usize,
        basis: &mut Vec<Vec<u32>>,
        pivots: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[Vec<u32>], &[usize]) -> bool,
    ) -> bool {
        if basis.len() == k {
            return visit(basis, pivots);
        }
        let remaining = k - basis.len();
        let q = self.field.p();
        for pivot in min_pivot..=self.n - remaining {
            // entries after the pivot, zero on earlier pivots by construction
            let free: Vec<usize> = (pivot + 1..self.n).collect();
            let total = u64::from(q).pow(free.len() as u32);
            for code in 0..total {
                self.nodes += 1;
                if self.nodes > self.budget {
                    return true;
                }
                let mut w = vec![0u32; self.n];
                w[pivot] = 1;
                let mut c = code;
                for &j in &free {
                    w[j] = (c % u64::from(q)) as u32;
                    c /= u64::from(q);
                }
                if !self.compatible(&w, basis) {
                    continue;
                }
                basis.push(w);
                pivots.push(pivot);
                let stop = self.extend(k, pivot + 1, basis, pivots, visit);
                basis.pop();
                pivots.pop();
                if stop {
                    return true;
                }
            }
        }
        false
    }
}
