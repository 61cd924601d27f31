//! Exact linear algebra over [`Scalar`]: sparse vectors, an incrementally
//! maintained reduced row echelon form, and square solves.

use crate::arith::Scalar;

/// Sparse vector with strictly increasing indices and no stored zeros.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec::default()
    }

    pub fn unit(idx: usize) -> Self {
        SparseVec { entries: vec![(idx, Scalar::one())] }
    }

    /// Collects `(index, value)` pairs, summing repeats and dropping zeros.
    pub fn from_pairs<I: IntoIterator<Item = (usize, Scalar)>>(pairs: I) -> Self {
        let mut v: Vec<(usize, Scalar)> = pairs.into_iter().collect();
        v.sort_by_key(|p| p.0);
        let mut out: Vec<(usize, Scalar)> = Vec::with_capacity(v.len());
        for (i, c) in v {
            match out.last_mut() {
                Some((j, acc)) if *j == i => *acc += &c,
                _ => out.push((i, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        SparseVec { entries: out }
    }

    pub fn from_dense(v: &[Scalar]) -> Self {
        SparseVec {
            entries: v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Scalar)> {
        self.entries.iter()
    }

    pub fn get(&self, idx: usize) -> Option<&Scalar> {
        self.entries.binary_search_by_key(&idx, |p| p.0).ok().map(|k| &self.entries[k].1)
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect() }
    }

    /// `self + c * other`
    pub fn axpy(&self, c: &Scalar, other: &SparseVec) -> SparseVec {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, c * y));
                        b.next();
                    } else {
                        let s = x + &(c * y);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, c * y));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn to_dense(&self, n: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); n];
        for (i, c) in &self.entries {
            v[*i] = c.clone();
        }
        v
    }
}

/// Heuristic cost of dividing by a pivot: units keep later entries small.
fn pivot_cost(c: &Scalar) -> usize {
    match c {
        Scalar::Num(_) | Scalar::Special { .. } => 0,
        Scalar::Exact(f) => {
            if f.is_laurent() && f.numerator().is_monomial() {
                0
            } else {
                1 + f.numerator().terms().count() + f.denominator().terms().count()
            }
        }
    }
}

fn unit_laurent(c: &Scalar) -> bool {
    pivot_cost(c) == 0
}

/// Reduced row echelon form maintained under row insertion.
///
/// Every stored row has a pivot entry equal to one, and pivot columns are zero
/// in all other rows, so reducing a vector is a single pass over its pivot
/// entries.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<Option<usize>>,
    pivot_col: Vec<usize>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), pivot_row: vec![None; ncols], pivot_col: Vec::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    /// Columns that carry no pivot, ascending.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.pivot_row[c].is_none()).collect()
    }

    /// The stored row whose pivot sits in `col`.
    pub fn pivot_row(&self, col: usize) -> Option<&SparseVec> {
        self.pivot_row[col].map(|r| &self.rows[r])
    }

    /// Reduces `v` modulo the row space; the result is supported on free columns.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut acc: Option<Vec<Scalar>> = None;
        let mut touched = false;
        for (i, c) in v.iter() {
            if let Some(r) = self.pivot_row[*i] {
                let dense = acc.get_or_insert_with(|| v.to_dense(self.ncols));
                for (j, x) in self.rows[r].iter() {
                    if self.pivot_row[*j].is_some() {
                        continue;
                    }
                    dense[*j] -= &(c * x);
                }
                touched = true;
            }
        }
        if !touched {
            return v.clone();
        }
        let mut dense = acc.unwrap();
        for &p in &self.pivot_col {
            dense[p] = Scalar::zero();
        }
        SparseVec::from_dense(&dense)
    }

    /// Inserts a row; returns the new pivot column, or `None` if dependent.
    pub fn insert(&mut self, v: &SparseVec) -> Option<usize> {
        let red = self.reduce(v);
        if red.is_zero() {
            return None;
        }
        // Prefer a unit pivot so no new denominators enter the basis.
        let (lead, lead_val) = red
            .iter()
            .min_by_key(|(i, c)| (pivot_cost(c), *i))
            .map(|(i, c)| (*i, c.clone()))
            .unwrap();
        let row = red.scale(&lead_val.inv().expect("nonzero pivot"));
        for existing in self.rows.iter_mut() {
            if let Some(c) = existing.get(lead).cloned() {
                *existing = existing.axpy(&-c, &row);
            }
        }
        self.pivot_row[lead] = Some(self.rows.len());
        self.pivot_col.push(lead);
        self.rows.push(row);
        Some(lead)
    }
}

/// Membership in the span of a fixed list of vectors, with coefficients.
#[derive(Clone, Debug)]
pub struct SpanSolver {
    width: usize,
    count: usize,
    echelon: Echelon,
}

impl SpanSolver {
    /// `vectors` live in a `width`-dimensional space.
    pub fn new(width: usize, vectors: &[SparseVec]) -> Self {
        let count = vectors.len();
        let mut echelon = Echelon::new(width + count);
        // Tracking columns sit after the data columns; a row whose data part
        // vanishes is dependent and dropped, so every pivot lands in data.
        for (k, v) in vectors.iter().enumerate() {
            let mut aug: Vec<(usize, Scalar)> = v.iter().cloned().collect();
            aug.push((width + k, Scalar::one()));
            let aug = SparseVec::from_pairs(aug);
            let red = echelon.reduce(&aug);
            if red.iter().all(|(i, _)| *i >= width) {
                continue;
            }
            let data_only = red.iter().filter(|(i, _)| *i < width).min_by_key(|(i, c)| (pivot_cost(c), *i)).cloned();
            let (lead, val) = data_only.unwrap();
            let row = red.scale(&val.inv().unwrap());
            for existing in echelon.rows.iter_mut() {
                if let Some(c) = existing.get(lead).cloned() {
                    *existing = existing.axpy(&-c, &row);
                }
            }
            echelon.pivot_row[lead] = Some(echelon.rows.len());
            echelon.pivot_col.push(lead);
            echelon.rows.push(row);
        }
        SpanSolver { width, count, echelon }
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    /// Coefficients `c` with `Σ c_k vectors[k] = target`, if the target is in the span.
    pub fn solve(&self, target: &SparseVec) -> Option<Vec<Scalar>> {
        let mut coeffs = vec![Scalar::zero(); self.count];
        let mut rest = target.to_dense(self.width);
        for (i, t) in target.iter() {
            if let Some(r) = self.echelon.pivot_row[*i] {
                for (j, x) in self.echelon.rows[r].iter() {
                    if *j >= self.width {
                        coeffs[*j - self.width] += &(t * x);
                    } else if self.echelon.pivot_row[*j].is_none() {
                        rest[*j] -= &(t * x);
                    }
                }
                rest[*i] = Scalar::zero();
            }
        }
        if rest.iter().all(|c| c.is_zero()) {
            Some(coeffs)
        } else {
            None
        }
    }
}

/// Rank of a dense matrix given by rows.
pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(&SparseVec::from_dense(r));
    }
    e.rank()
}

/// Solves `A X = B` for square `A` (rows of `A`, columns of `B` as rows of `B`).
/// Returns `None` when `A` is singular.
pub fn solve_square(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().chain(rb.iter()).cloned().collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .filter(|&r| !aug[r][col].is_zero())
            .min_by_key(|&r| (if unit_laurent(&aug[r][col]) { 0 } else { 1 }, r))?;
        aug.swap(col, pivot);
        let inv = aug[col][col].inv().ok()?;
        let prow: Vec<Scalar> = aug[col].iter().map(|x| x * &inv).collect();
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for (x, p) in aug[r].iter_mut().zip(&prow) {
                    if !p.is_zero() {
                        *x -= &(&f * p);
                    }
                }
            }
        }
        aug[col] = prow;
    }
    Some(aug.into_iter().map(|r| r[n..n + m].to_vec()).collect())
}

/// Inverse of a square matrix, `None` if singular.
pub fn inverse(a: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = a.len();
    let id: Vec<Vec<Scalar>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
        .collect();
    solve_square(a, &id)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::QMode;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn echelon_reduces_dependent_rows_to_zero() {
        let mut e = Echelon::new(3);
        assert!(e.insert(&SparseVec::from_dense(&[s(1), s(2), s(3)])).is_some());
        assert!(e.insert(&SparseVec::from_dense(&[s(0), s(1), s(1)])).is_some());
        assert!(e.insert(&SparseVec::from_dense(&[s(2), s(5), s(7)])).is_none());
        assert_eq!(e.rank(), 2);
        assert_eq!(e.free_columns().len(), 1);
    }

    #[test]
    fn span_solver_returns_coefficients() {
        let vs = vec![
            SparseVec::from_dense(&[s(1), s(1), s(0)]),
            SparseVec::from_dense(&[s(0), s(1), s(1)]),
            SparseVec::from_dense(&[s(1), s(2), s(1)]),
        ];
        let sol = SpanSolver::new(3, &vs);
        assert_eq!(sol.rank(), 2);
        let t = SparseVec::from_dense(&[s(2), s(5), s(3)]);
        let c = sol.solve(&t).unwrap();
        let mut recon = SparseVec::new();
        for (k, v) in vs.iter().enumerate() {
            recon = recon.axpy(&c[k], v);
        }
        assert_eq!(recon, t);
        assert!(sol.solve(&SparseVec::from_dense(&[s(1), s(0), s(0)])).is_none());
    }

    #[test]
    fn inverse_over_rational_functions() {
        let m = QMode::exact();
        let q = m.q();
        let a = vec![vec![q.clone(), s(1)], vec![s(1), s(0)]];
        let inv = inverse(&a).unwrap();
        // [[q,1],[1,0]]^-1 = [[0,1],[1,-q]]
        assert_eq!(inv, vec![vec![s(0), s(1)], vec![s(1), -&q]]);
        assert!(inverse(&[vec![s(1), s(2)], vec![s(2), s(4)]]).is_none());
    }
}
