//! Hecke symmetry constructors and the braid / Hecke certificates.

use serde::Deserialize;

use super::TensorOp;
use crate::arith::{parse_scalar, QMode, Rational, Scalar};
use crate::error::{Error, Result};

fn pair(n: usize, i: usize, j: usize) -> usize {
    i * n + j
}

fn graded(m: usize, n: usize, mode: &QMode, deformed: bool) -> TensorOp {
    let dim = m + n;
    let odd = |i: usize| i >= m;
    let mut entries = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            let sign = if odd(i) && odd(j) { -1 } else { 1 };
            if i == j {
                let v = match (deformed, odd(i)) {
                    (true, false) => mode.q(),
                    (true, true) => -&mode.q_pow(-1),
                    (false, _) => Scalar::from_int(sign),
                };
                entries.push((pair(dim, i, i), pair(dim, i, i), v));
                continue;
            }
            entries.push((pair(dim, j, i), pair(dim, i, j), Scalar::from_int(sign)));
            if deformed && i < j {
                entries.push((pair(dim, i, j), pair(dim, i, j), mode.gap()));
            }
        }
    }
    TensorOp::from_entries(dim, 2, entries).expect("indices in range")
}

/// The flip `P(u ⊗ v) = v ⊗ u`.
pub fn flip(n: usize) -> TensorOp {
    graded(n, 0, &QMode::classical(), false)
}

/// The graded flip on `V = V_0 ⊕ V_1`, `dim V_0 = m`, with sign `(-1)^{|i||j|}`.
pub fn super_flip(m: usize, n: usize) -> TensorOp {
    graded(m, n, &QMode::classical(), false)
}

/// Drinfeld–Jimbo R-matrix:
/// `R(x_i ⊗ x_j) = q^{δ_ij} x_j ⊗ x_i + (q - q^-1)[i < j] x_i ⊗ x_j`.
pub fn dj_r_matrix(n: usize, mode: &QMode) -> TensorOp {
    graded(n, 0, mode, true)
}

/// Graded Drinfeld–Jimbo R-matrix of `GL(m|n)` type; odd diagonal entries are `-q^-1`.
pub fn dj_super_r_matrix(m: usize, n: usize, mode: &QMode) -> TensorOp {
    graded(m, n, mode, true)
}

/// `R₁R₂R₁ - R₂R₁R₂` on three sites.
pub fn check_braid(r: &TensorOp) -> Result<TensorOp> {
    if r.sites() != 2 {
        return Err(Error::ShapeMismatch(format!("braid check needs a 2-site operator, got {}", r.sites())));
    }
    let r1 = r.embed_at(1, 3)?;
    let r2 = r.embed_at(2, 3)?;
    Ok(&(&(&r1 * &r2) * &r1) - &(&(&r2 * &r1) * &r2))
}

/// `(qI - R)(q^-1 I + R)`.
pub fn check_hecke(r: &TensorOp, mode: &QMode) -> Result<TensorOp> {
    if r.sites() != 2 {
        return Err(Error::ShapeMismatch(format!("Hecke check needs a 2-site operator, got {}", r.sites())));
    }
    let id = TensorOp::identity(r.dim(), 2);
    let a = &id.scale(&mode.q()) - r;
    let b = &id.scale(&mode.q_pow(-1)) + r;
    Ok(&a * &b)
}

/// Multiplicities of the eigenvalues `q` and `-q^-1`, from kernel ranks.
pub fn eigen_multiplicities(r: &TensorOp, mode: &QMode) -> (usize, usize) {
    let id = TensorOp::identity(r.dim(), r.sites());
    let size = r.size();
    let plus = size - (r - &id.scale(&mode.q())).rank();
    let minus = size - (r + &id.scale(&mode.q_pow(-1))).rank();
    (plus, minus)
}

/// Value at `q = 1`, or the pole that prevents it.
pub fn classical_limit(r: &TensorOp) -> Result<TensorOp> {
    r.specialize(&Rational::ONE)
}

#[derive(Deserialize)]
struct RFile {
    #[serde(rename = "N")]
    n: usize,
    entries: Vec<RFileEntry>,
}

#[derive(Deserialize)]
struct RFileEntry {
    row_pair: [usize; 2],
    col_pair: [usize; 2],
    value: String,
}

/// Parses the JSON R-matrix format; pairs are 1-based and `x_i ⊗ x_j ↦ N(i-1) + (j-1)`.
pub fn r_matrix_from_json(src: &str, mode: &QMode) -> Result<TensorOp> {
    let file: RFile = serde_json::from_str(src).map_err(|e| Error::Invalid(format!("R-matrix file: {e}")))?;
    let n = file.n;
    if n == 0 {
        return Err(Error::Invalid("R-matrix file: N must be positive".into()));
    }
    let index = |p: [usize; 2]| -> Result<usize> {
        if p[0] == 0 || p[1] == 0 || p[0] > n || p[1] > n {
            return Err(Error::IndexOutOfRange(format!("pair {:?} with N = {n}", p)));
        }
        Ok(n * (p[0] - 1) + (p[1] - 1))
    };
    let mut entries = Vec::with_capacity(file.entries.len());
    for e in &file.entries {
        let v = parse_scalar(&e.value, mode)?;
        entries.push((index(e.row_pair)?, index(e.col_pair)?, v));
    }
    TensorOp::from_entries(n, 2, entries)
}
