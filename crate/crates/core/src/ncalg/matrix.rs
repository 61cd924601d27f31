use std::fmt;

use super::{Gen, NcPoly};
use crate::arith::Scalar;
use crate::error::{Error, Result};
use crate::exec;
use crate::tensor::{guard, Symmetry, TensorOp};

/// The operations matrix arithmetic needs from an entry algebra.
pub trait Algebra: Sync {
    type Elem: Clone + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn constant(&self, c: &Scalar) -> Self::Elem;
    fn generator(&self, g: Gen) -> Self::Elem;
    /// `acc += c·x`
    fn add_scaled(&self, acc: &mut Self::Elem, x: &Self::Elem, c: &Scalar);
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;

    fn scale(&self, x: &Self::Elem, c: &Scalar) -> Self::Elem {
        let mut out = self.zero();
        self.add_scaled(&mut out, x, c);
        out
    }
}

/// The free algebra: products concatenate words.
#[derive(Clone, Copy, Debug, Default)]
pub struct FreeAlgebra;

impl Algebra for FreeAlgebra {
    type Elem = NcPoly;

    fn zero(&self) -> NcPoly {
        NcPoly::zero()
    }

    fn is_zero(&self, x: &NcPoly) -> bool {
        x.is_zero()
    }

    fn constant(&self, c: &Scalar) -> NcPoly {
        NcPoly::constant(c.clone())
    }

    fn generator(&self, g: Gen) -> NcPoly {
        NcPoly::gen(g)
    }

    fn add_scaled(&self, acc: &mut NcPoly, x: &NcPoly, c: &Scalar) {
        acc.add_scaled(x, c);
    }

    fn mul(&self, a: &NcPoly, b: &NcPoly) -> Result<NcPoly> {
        Ok(a.mul(b))
    }
}

/// Matrix on `V^{⊗k}` with entries in an algebra, stored as sparse rows
/// sorted by column. Indices follow [`TensorOp`].
#[derive(Clone, PartialEq)]
pub struct OpMatrix<E> {
    n: usize,
    k: usize,
    rows: Vec<Vec<(u32, E)>>,
}

impl<E: Clone + Send + Sync> OpMatrix<E> {
    pub fn zeros(n: usize, k: usize) -> Result<Self> {
        let size = guard(n, k)?;
        Ok(OpMatrix { n, k, rows: vec![Vec::new(); size] })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn sites(&self) -> usize {
        self.k
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, r: usize) -> &[(u32, E)] {
        &self.rows[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&E> {
        let row = &self.rows[r];
        row.binary_search_by_key(&(c as u32), |(j, _)| *j).ok().map(|p| &row[p].1)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &E)> {
        self.rows.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c as usize, v)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    fn check_shape(&self, n: usize, k: usize, what: &str) -> Result<()> {
        if self.n != n || self.k != k {
            return Err(Error::ShapeMismatch(format!(
                "{what}: N={}, k={} against N={n}, k={k}",
                self.n, self.k
            )));
        }
        Ok(())
    }

    /// Builds from `(row, col, value)`; zero values are dropped, repeats summed.
    pub fn from_entries<A, I>(alg: &A, n: usize, k: usize, entries: I) -> Result<Self>
    where
        A: Algebra<Elem = E>,
        I: IntoIterator<Item = (usize, usize, E)>,
    {
        let size = guard(n, k)?;
        let mut rows: Vec<Vec<(u32, E)>> = vec![Vec::new(); size];
        for (r, c, v) in entries {
            if r >= size || c >= size {
                return Err(Error::IndexOutOfRange(format!("entry ({r}, {c}) outside {size}x{size}")));
            }
            rows[r].push((c as u32, v));
        }
        for row in rows.iter_mut() {
            *row = merge_row(alg, std::mem::take(row));
        }
        Ok(OpMatrix { n, k, rows })
    }

    /// A scalar operator viewed as a matrix over the algebra.
    pub fn from_op<A: Algebra<Elem = E>>(alg: &A, t: &TensorOp) -> Self {
        let rows = (0..t.size())
            .map(|r| t.row(r).iter().map(|(c, v)| (*c, alg.constant(v))).collect())
            .collect();
        OpMatrix { n: t.dim(), k: t.sites(), rows }
    }

    pub fn is_zero<A: Algebra<Elem = E>>(&self, alg: &A) -> bool {
        self.rows.iter().all(|row| row.iter().all(|(_, v)| alg.is_zero(v)))
    }

    pub fn map<B: Clone + Send + Sync, F>(&self, f: F) -> Result<OpMatrix<B>>
    where
        F: Fn(&E) -> Result<B> + Sync + Send,
    {
        let rows: Vec<Result<Vec<(u32, B)>>> = exec::map_slice(&self.rows, |row| {
            row.iter().map(|(c, v)| Ok((*c, f(v)?))).collect()
        });
        Ok(OpMatrix { n: self.n, k: self.k, rows: rows.into_iter().collect::<Result<_>>()? })
    }

    pub fn add<A: Algebra<Elem = E>>(&self, alg: &A, other: &Self) -> Result<Self> {
        self.combine(alg, other, &Scalar::one())
    }

    pub fn sub<A: Algebra<Elem = E>>(&self, alg: &A, other: &Self) -> Result<Self> {
        self.combine(alg, other, &Scalar::from_int(-1))
    }

    /// `self + c·other`
    pub fn combine<A: Algebra<Elem = E>>(&self, alg: &A, other: &Self, c: &Scalar) -> Result<Self> {
        other.check_shape(self.n, self.k, "matrix sum")?;
        let rows = exec::map_range(self.size(), |r| {
            let mut row: Vec<(u32, E)> = self.rows[r].clone();
            row.extend(other.rows[r].iter().map(|(j, v)| (*j, alg.scale(v, c))));
            merge_row(alg, row)
        });
        Ok(OpMatrix { n: self.n, k: self.k, rows })
    }

    pub fn scale<A: Algebra<Elem = E>>(&self, alg: &A, c: &Scalar) -> Self {
        let rows = exec::map_slice(&self.rows, |row| {
            row.iter().map(|(j, v)| (*j, alg.scale(v, c))).filter(|(_, v)| !alg.is_zero(v)).collect()
        });
        OpMatrix { n: self.n, k: self.k, rows }
    }

    /// Matrix product with entries multiplied in the algebra, `self` on the left.
    pub fn mul<A: Algebra<Elem = E>>(&self, alg: &A, other: &Self) -> Result<Self> {
        self.mul_with(other, alg, |a, b| alg.mul(a, b))
    }

    /// Matrix product where entry products are computed by `f` and summed in `alg`.
    pub fn mul_with<A, F>(&self, other: &Self, alg: &A, f: F) -> Result<Self>
    where
        A: Algebra<Elem = E>,
        F: Fn(&E, &E) -> Result<E> + Sync + Send,
    {
        other.check_shape(self.n, self.k, "matrix product")?;
        let rows: Vec<Result<Vec<(u32, E)>>> = exec::map_range(self.size(), |r| {
            let mut acc: Vec<Option<E>> = vec![None; self.size()];
            for (kk, a) in &self.rows[r] {
                for (c, b) in &other.rows[*kk as usize] {
                    let p = f(a, b)?;
                    match &mut acc[*c as usize] {
                        Some(x) => alg.add_scaled(x, &p, &Scalar::one()),
                        slot @ None => *slot = Some(p),
                    }
                }
            }
            Ok(acc
                .into_iter()
                .enumerate()
                .filter_map(|(c, v)| v.filter(|v| !alg.is_zero(v)).map(|v| (c as u32, v)))
                .collect())
        });
        Ok(OpMatrix { n: self.n, k: self.k, rows: rows.into_iter().collect::<Result<_>>()? })
    }

    /// `T·X` for a scalar operator `T`.
    pub fn op_mul<A: Algebra<Elem = E>>(alg: &A, t: &TensorOp, x: &Self) -> Result<Self> {
        x.check_shape(t.dim(), t.sites(), "operator times matrix")?;
        let rows = exec::map_range(x.size(), |r| {
            let mut row: Vec<(u32, E)> = Vec::new();
            for (kk, v) in t.row(r) {
                row.extend(x.rows[*kk as usize].iter().map(|(c, e)| (*c, alg.scale(e, v))));
            }
            merge_row(alg, row)
        });
        Ok(OpMatrix { n: x.n, k: x.k, rows })
    }

    /// `X·T` for a scalar operator `T`.
    pub fn mul_op<A: Algebra<Elem = E>>(&self, alg: &A, t: &TensorOp) -> Result<Self> {
        self.check_shape(t.dim(), t.sites(), "matrix times operator")?;
        let rows = exec::map_range(self.size(), |r| {
            let mut row: Vec<(u32, E)> = Vec::new();
            for (kk, e) in &self.rows[r] {
                row.extend(t.row(*kk as usize).iter().map(|(c, v)| (*c, alg.scale(e, v))));
            }
            merge_row(alg, row)
        });
        Ok(OpMatrix { n: self.n, k: self.k, rows })
    }

    /// Places this `s`-site matrix at sites `i..i+s-1` of `k` (1-based), identity elsewhere.
    pub fn embed_at(&self, i: usize, k: usize) -> Result<Self> {
        if i == 0 || i + self.k - 1 > k {
            return Err(Error::IndexOutOfRange(format!(
                "cannot place a {}-site matrix at position {i} of {k}",
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
                    rows.push(
                        self.rows[m]
                            .iter()
                            .map(|(c, v)| (((a * mid + *c as usize) * post + b) as u32, v.clone()))
                            .collect(),
                    );
                }
            }
        }
        Ok(OpMatrix { n: self.n, k, rows })
    }

    /// `Tr(W·X) = Σ W_{IJ} X_{JI}`.
    pub fn trace_with<A: Algebra<Elem = E>>(&self, alg: &A, w: &TensorOp) -> Result<E> {
        self.check_shape(w.dim(), w.sites(), "weighted trace")?;
        let mut acc = alg.zero();
        for i in 0..self.size() {
            for (j, v) in w.row(i) {
                if let Some(x) = self.get(*j as usize, i) {
                    alg.add_scaled(&mut acc, x, v);
                }
            }
        }
        Ok(acc)
    }

    /// Ordinary partial trace over 1-based sites.
    pub fn partial_trace<A: Algebra<Elem = E>>(&self, alg: &A, sites: &[usize]) -> Result<Self> {
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
        let mut out = Vec::new();
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
        OpMatrix::from_entries(alg, n, kept.len(), out)
    }

    /// R-trace over the given sites: `C` is applied at each traced site first.
    pub fn r_trace<A: Algebra<Elem = E>>(&self, alg: &A, sym: &Symmetry, sites: &[usize]) -> Result<Self> {
        let mut y = self.clone();
        for &s in sites {
            if s == 0 || s > self.k {
                return Err(Error::IndexOutOfRange(format!("R-trace site {s} of {}", self.k)));
            }
            y = OpMatrix::op_mul(alg, &sym.c().embed_at(s, self.k)?, &y)?;
        }
        y.partial_trace(alg, sites)
    }

    /// R-trace over every site, a single algebra element.
    pub fn r_trace_all<A: Algebra<Elem = E>>(&self, alg: &A, sym: &Symmetry) -> Result<E> {
        self.trace_with(alg, &sym.c_power(self.k))
    }
}

fn merge_row<A: Algebra>(alg: &A, mut row: Vec<(u32, A::Elem)>) -> Vec<(u32, A::Elem)> {
    row.sort_by_key(|(c, _)| *c);
    let mut out: Vec<(u32, A::Elem)> = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => alg.add_scaled(lv, &v, &Scalar::one()),
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !alg.is_zero(v));
    out
}

impl<E: fmt::Debug> fmt::Debug for OpMatrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "OpMatrix N={} k={}", self.n, self.k)?;
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                writeln!(
                    f,
                    "  [{}, {}] {:?}",
                    TensorOp::index_label(self.n, self.k, r),
                    TensorOp::index_label(self.n, self.k, *c as usize),
                    v
                )?;
            }
        }
        Ok(())
    }
}
