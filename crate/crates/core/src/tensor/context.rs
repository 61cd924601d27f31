use std::sync::Arc;

use dashmap::DashMap;

use super::{guard, r_trace, r_trace_all, skew_inverse, SkewData, TensorOp};
use crate::arith::{QMode, Scalar};
use crate::error::{Error, Result};

/// A skew-invertible `R` in a fixed arithmetic mode, with memoized embeddings.
#[derive(Debug)]
pub struct Symmetry {
    mode: QMode,
    r: TensorOp,
    r_inv: TensorOp,
    skew: SkewData,
    embedded: DashMap<(usize, usize, bool), Arc<TensorOp>>,
}

impl Symmetry {
    pub fn new(r: TensorOp, mode: QMode) -> Result<Self> {
        if r.sites() != 2 {
            return Err(Error::ShapeMismatch(format!("R must act on two sites, got {}", r.sites())));
        }
        let r_inv = r.inverse().ok_or_else(|| Error::Invalid("R is not invertible".into()))?;
        let skew = skew_inverse(&r)?;
        Ok(Symmetry { mode, r, r_inv, skew, embedded: DashMap::new() })
    }

    pub fn n(&self) -> usize {
        self.r.dim()
    }

    pub fn mode(&self) -> &QMode {
        &self.mode
    }

    pub fn r(&self) -> &TensorOp {
        &self.r
    }

    pub fn r_inv(&self) -> &TensorOp {
        &self.r_inv
    }

    pub fn skew(&self) -> &SkewData {
        &self.skew
    }

    pub fn c(&self) -> &TensorOp {
        &self.skew.c
    }

    pub fn identity(&self, k: usize) -> TensorOp {
        TensorOp::identity(self.n(), k)
    }

    /// Fails if `N^k` is over the dimension guard.
    pub fn check_sites(&self, k: usize) -> Result<()> {
        guard(self.n(), k).map(|_| ())
    }

    fn embedded(&self, i: usize, k: usize, inv: bool) -> Arc<TensorOp> {
        if let Some(hit) = self.embedded.get(&(i, k, inv)) {
            return hit.clone();
        }
        let base = if inv { &self.r_inv } else { &self.r };
        let op = Arc::new(base.embed_at(i, k).unwrap_or_else(|e| panic!("R_{i} on {k} sites: {e}")));
        self.embedded.insert((i, k, inv), op.clone());
        op
    }

    /// `R_i` on `k` sites.
    pub fn r_at(&self, i: usize, k: usize) -> Arc<TensorOp> {
        self.embedded(i, k, false)
    }

    /// `R_i^{-1}` on `k` sites.
    pub fn r_inv_at(&self, i: usize, k: usize) -> Arc<TensorOp> {
        self.embedded(i, k, true)
    }

    /// `R_{i→j}`: `R_i R_{i+1} … R_j` for `j ≥ i`, `R_i R_{i-1} … R_j` otherwise.
    /// An empty chain (`i = 0` or `j = 0`) is the identity.
    pub fn chain(&self, i: usize, j: usize, k: usize, inv: bool) -> TensorOp {
        let mut acc = self.identity(k);
        if i == 0 || j == 0 {
            return acc;
        }
        let steps: Vec<usize> = if j >= i { (i..=j).collect() } else { (j..=i).rev().collect() };
        for s in steps {
            acc = &acc * &self.embedded(s, k, inv);
        }
        acc
    }

    /// Jucys–Murphy image `J_r`: `J_1 = I`, `J_r = R_{r-1} J_{r-1} R_{r-1}`.
    pub fn jm(&self, r: usize, k: usize) -> Result<TensorOp> {
        self.jm_shifted(r, 0, k)
    }

    pub fn jm_inv(&self, r: usize, k: usize) -> Result<TensorOp> {
        self.jm_shifted_inv(r, 0, k)
    }

    /// `J_s^{↑n} = R_{n+s-1→n+1} R_{n+1→n+s-1}`.
    pub fn jm_shifted(&self, s: usize, n: usize, k: usize) -> Result<TensorOp> {
        self.jm_general(s, n, k, false)
    }

    pub fn jm_shifted_inv(&self, s: usize, n: usize, k: usize) -> Result<TensorOp> {
        self.jm_general(s, n, k, true)
    }

    fn jm_general(&self, s: usize, n: usize, k: usize, inv: bool) -> Result<TensorOp> {
        if s == 0 || n + s > k {
            return Err(Error::IndexOutOfRange(format!("J_{s} shifted by {n} on {k} sites")));
        }
        if s == 1 {
            return Ok(self.identity(k));
        }
        Ok(&self.chain(n + s - 1, n + 1, k, inv) * &self.chain(n + 1, n + s - 1, k, inv))
    }

    /// `C^{⊗k}`
    pub fn c_power(&self, k: usize) -> TensorOp {
        let mut acc = self.c().clone();
        for _ in 1..k {
            acc = acc.kron(self.c());
        }
        acc
    }

    pub fn r_trace(&self, x: &TensorOp, sites: &[usize]) -> Result<TensorOp> {
        r_trace(x, sites, self.c())
    }

    pub fn r_trace_all(&self, x: &TensorOp) -> Result<Scalar> {
        r_trace_all(x, self.c())
    }

    /// The same symmetry evaluated at `q0`.
    pub fn specialize(&self, mode: QMode) -> Result<Symmetry> {
        let q0 = mode.point().ok_or_else(|| Error::Invalid("specialization needs a point".into()))?.clone();
        let r = self.r.specialize(&q0)?.map_entries(|v| match v {
            Scalar::Num(x) if !mode.is_exact() => Scalar::Special { value: x.clone(), at: Arc::new(q0.clone()) },
            other => other.clone(),
        });
        Symmetry::new(r, mode)
    }
}
