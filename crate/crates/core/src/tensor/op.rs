use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicUsize, Ordering};

use crate::arith::{Rational, Scalar};
use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, SparseVec};

static DIMENSION_CAP: AtomicUsize = AtomicUsize::new(4096);

/// Largest `N^k` any builder will allocate.
pub fn dimension_cap() -> usize {
    DIMENSION_CAP.load(Ordering::Relaxed)
}

pub fn set_dimension_cap(cap: usize) {
    DIMENSION_CAP.store(cap, Ordering::Relaxed);
}

/// Fails when `n^k` exceeds the dimension guard.
pub fn guard(n: usize, k: usize) -> Result<usize> {
    let cap = dimension_cap();
    let size = n.checked_pow(k as u32).unwrap_or(usize::MAX);
    if size > cap {
        return Err(Error::DimensionGuard { n, k, size, cap });
    }
    Ok(size)
}

/// Sparse operator on `V^{⊗k}`, `dim V = n`, stored row by row.
///
/// Basis index of `x_{i1} ⊗ … ⊗ x_{ik}` (0-based letters) is
/// `Σ i_s n^{k-s}`: the first site is the most significant digit.
#[derive(Clone, PartialEq)]
pub struct TensorOp {
    n: usize,
    k: usize,
    rows: Vec<Vec<(u32, Scalar)>>,
}

impl TensorOp {
    pub fn zeros(n: usize, k: usize) -> Self {
        let size = n.pow(k as u32);
        TensorOp { n, k, rows: vec![Vec::new(); size] }
    }

    pub fn identity(n: usize, k: usize) -> Self {
        let size = n.pow(k as u32);
        TensorOp { n, k, rows: (0..size).map(|i| vec![(i as u32, Scalar::one())]).collect() }
    }

    /// Builds from `(row, col, value)` triples; repeated positions are summed.
    pub fn from_entries<I: IntoIterator<Item = (usize, usize, Scalar)>>(n: usize, k: usize, entries: I) -> Result<Self> {
        let size = n.pow(k as u32);
        let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); size];
        for (r, c, v) in entries {
            if r >= size || c >= size {
                return Err(Error::IndexOutOfRange(format!("entry ({r}, {c}) outside {size}x{size}")));
            }
            rows[r].push((c, v));
        }
        Ok(TensorOp {
            n,
            k,
            rows: rows
                .into_iter()
                .map(|row| SparseVec::from_pairs(row).iter().map(|(c, v)| (*c as u32, v.clone())).collect())
                .collect(),
        })
    }

    pub fn from_dense(n: usize, k: usize, m: &[Vec<Scalar>]) -> Self {
        let entries = m
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, v)| (i, j, v.clone())));
        Self::from_entries(n, k, entries).expect("dense matrix of the right size")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn sites(&self) -> usize {
        self.k
    }

    /// `n^k`, the side length of the matrix.
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, r: usize) -> &[(u32, Scalar)] {
        &self.rows[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        match self.rows[r].binary_search_by_key(&(c as u32), |e| e.0) {
            Ok(p) => self.rows[r][p].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.rows.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c as usize, v)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, Scalar)> {
        self.entries().next().map(|(r, c, v)| (r, c, v.clone()))
    }

    pub fn same_shape(&self, other: &TensorOp) -> bool {
        self.n == other.n && self.k == other.k
    }

    fn assert_shape(&self, other: &TensorOp) {
        assert!(
            self.same_shape(other),
            "tensor shapes differ: (N={}, k={}) vs (N={}, k={})",
            self.n,
            self.k,
            other.n,
            other.k
        );
    }

    pub fn checked_mul(&self, other: &TensorOp) -> Result<TensorOp> {
        if !self.same_shape(other) {
            return Err(Error::ShapeMismatch(format!("({}, {}) * ({}, {})", self.n, self.k, other.n, other.k)));
        }
        Ok(self * other)
    }

    pub fn scale(&self, c: &Scalar) -> TensorOp {
        if c.is_zero() {
            return TensorOp::zeros(self.n, self.k);
        }
        TensorOp {
            n: self.n,
            k: self.k,
            rows: self.rows.iter().map(|row| row.iter().map(|(j, v)| (*j, v * c)).collect()).collect(),
        }
    }

    fn combine(&self, other: &TensorOp, c: &Scalar) -> TensorOp {
        self.assert_shape(other);
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let a = SparseVec::from_pairs(a.iter().map(|(j, v)| (*j as usize, v.clone())));
                let b = SparseVec::from_pairs(b.iter().map(|(j, v)| (*j as usize, v.clone())));
                a.axpy(c, &b).iter().map(|(j, v)| (*j as u32, v.clone())).collect()
            })
            .collect();
        TensorOp { n: self.n, k: self.k, rows }
    }

    /// Kronecker product: `(A⊗B)_{(a,b),(c,d)} = A_{ac} B_{bd}`.
    pub fn kron(&self, other: &TensorOp) -> TensorOp {
        assert_eq!(self.n, other.n, "kron of different base dimensions");
        let sb = other.size();
        let mut rows = Vec::with_capacity(self.size() * sb);
        for ra in &self.rows {
            for rb in &other.rows {
                let mut row = Vec::with_capacity(ra.len() * rb.len());
                for (ca, va) in ra {
                    for (cb, vb) in rb {
                        row.push((*ca * sb as u32 + *cb, va * vb));
                    }
                }
                rows.push(row);
            }
        }
        TensorOp { n: self.n, k: self.k + other.k, rows }
    }

    /// `I^{⊗(i-1)} ⊗ X ⊗ I^{⊗(k-i-s+1)}` for `X` on `s` sites, `i` 1-based.
    pub fn embed_at(&self, i: usize, k: usize) -> Result<TensorOp> {
        if i == 0 || i + self.k - 1 > k {
            return Err(Error::IndexOutOfRange(format!(
                "cannot place a {}-site operator at position {i} of {k}",
                self.k
            )));
        }
        guard(self.n, k)?;
        let post = self.n.pow((k - i + 1 - self.k) as u32);
        let mid = self.size();
        let pre = self.n.pow((i - 1) as u32);
        let mut rows = Vec::with_capacity(pre * mid * post);
        for a in 0..pre {
            for m in 0..mid {
                for b in 0..post {
                    let row = self.rows[m]
                        .iter()
                        .map(|(c, v)| (((a * mid + *c as usize) * post + b) as u32, v.clone()))
                        .collect();
                    rows.push(row);
                }
            }
        }
        Ok(TensorOp { n: self.n, k, rows })
    }

    /// Ordinary partial trace over the given 1-based sites.
    pub fn partial_trace(&self, sites: &[usize]) -> Result<TensorOp> {
        let mut traced = vec![false; self.k];
        for &s in sites {
            if s == 0 || s > self.k {
                return Err(Error::IndexOutOfRange(format!("trace site {s} of {}", self.k)));
            }
            traced[s - 1] = true;
        }
        let kept: Vec<usize> = (0..self.k).filter(|&s| !traced[s]).collect();
        let n = self.n;
        let digits = |mut x: usize| {
            let mut d = vec![0usize; self.k];
            for s in (0..self.k).rev() {
                d[s] = x % n;
                x /= n;
            }
            d
        };
        let mut out: Vec<(usize, usize, Scalar)> = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            let dr = digits(r);
            for (c, v) in row {
                let dc = digits(*c as usize);
                if (0..self.k).all(|s| !traced[s] || dr[s] == dc[s]) {
                    let ri = kept.iter().fold(0, |acc, &s| acc * n + dr[s]);
                    let ci = kept.iter().fold(0, |acc, &s| acc * n + dc[s]);
                    out.push((ri, ci, v.clone()));
                }
            }
        }
        TensorOp::from_entries(n, kept.len(), out)
    }

    /// Plain trace of the whole matrix.
    pub fn trace(&self) -> Scalar {
        let mut acc = Scalar::zero();
        for r in 0..self.size() {
            acc += &self.get(r, r);
        }
        acc
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        self.rows
            .iter()
            .map(|row| {
                let mut d = vec![Scalar::zero(); self.size()];
                for (c, v) in row {
                    d[*c as usize] = v.clone();
                }
                d
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<TensorOp> {
        linalg::inverse(&self.to_dense()).map(|m| TensorOp::from_dense(self.n, self.k, &m))
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.size());
        for row in &self.rows {
            e.insert(&SparseVec::from_pairs(row.iter().map(|(c, v)| (*c as usize, v.clone()))));
        }
        e.rank()
    }

    /// Evaluates every entry at `q0`.
    pub fn specialize(&self, q0: &Rational) -> Result<TensorOp> {
        let mut rows = Vec::with_capacity(self.size());
        for row in &self.rows {
            let mut out = Vec::with_capacity(row.len());
            for (c, v) in row {
                let s = v.specialize(q0)?;
                if !s.is_zero() {
                    out.push((*c, s));
                }
            }
            rows.push(out);
        }
        Ok(TensorOp { n: self.n, k: self.k, rows })
    }

    /// Applies `f` to every stored entry, dropping results that vanish.
    pub fn map_entries(&self, f: impl Fn(&Scalar) -> Scalar) -> TensorOp {
        TensorOp {
            n: self.n,
            k: self.k,
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(|(c, v)| (*c, f(v))).filter(|(_, v)| !v.is_zero()).collect())
                .collect(),
        }
    }

    /// Digits of a basis index, 1-based, first site first.
    pub fn index_label(n: usize, k: usize, mut idx: usize) -> String {
        let mut d = vec![0usize; k];
        for s in (0..k).rev() {
            d[s] = idx % n + 1;
            idx /= n;
        }
        d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("")
    }
}

impl Mul for &TensorOp {
    type Output = TensorOp;
    fn mul(self, rhs: &TensorOp) -> TensorOp {
        self.assert_shape(rhs);
        let size = self.size();
        let rows = crate::exec::map_range(size, |r| {
            let row = &self.rows[r];
            if row.is_empty() {
                return Vec::new();
            }
            let mut acc: Vec<(usize, Scalar)> = Vec::new();
            for (k, a) in row {
                for (c, b) in &rhs.rows[*k as usize] {
                    acc.push((*c as usize, a * b));
                }
            }
            SparseVec::from_pairs(acc).iter().map(|(c, v)| (*c as u32, v.clone())).collect()
        });
        TensorOp { n: self.n, k: self.k, rows }
    }
}

impl Add for &TensorOp {
    type Output = TensorOp;
    fn add(self, rhs: &TensorOp) -> TensorOp {
        self.combine(rhs, &Scalar::one())
    }
}

impl Sub for &TensorOp {
    type Output = TensorOp;
    fn sub(self, rhs: &TensorOp) -> TensorOp {
        self.combine(rhs, &Scalar::from_int(-1))
    }
}

impl Neg for &TensorOp {
    type Output = TensorOp;
    fn neg(self) -> TensorOp {
        self.scale(&Scalar::from_int(-1))
    }
}

impl fmt::Debug for TensorOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "TensorOp(N={}, k={}, nnz={})", self.n, self.k, self.nnz())?;
        for (r, c, v) in self.entries() {
            writeln!(
                f,
                "  [{} | {}] = {:?}",
                Self::index_label(self.n, self.k, r),
                Self::index_label(self.n, self.k, c),
                v
            )?;
        }
        Ok(())
    }
}
