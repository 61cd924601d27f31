use std::fmt;

use super::engine::{Double, Flavour, SplitForm};
use crate::arith::Scalar;
use crate::error::{Error, Result};
use crate::hecke::{all_perms, HeckeElement};
use crate::linalg::{SparseVec, SpanSolver};
use crate::ncalg::{word_label, Gen, Kind, NcPoly, OpMatrix};
use crate::tensor::TensorOp;

/// First nonvanishing reduced coordinate of a difference.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    /// `(row, column)` labels when the difference came from a matrix.
    pub position: Option<(String, String)>,
    pub word: String,
    pub coeff: Scalar,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((r, c)) = &self.position {
            write!(f, "entry ({r}, {c}): ")?;
        }
        write!(f, "{} has coefficient {}", self.word, self.coeff)
    }
}

/// Generators a central candidate must commute with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    M,
    Del,
    Double,
    /// `l̂_i^j = Σ_k m_i^k ∂_k^j`
    LHat,
}

impl Double {
    /// `None` when `s` vanishes in the double.
    pub fn witness(&self, s: &SplitForm) -> Result<Option<Witness>> {
        match s.terms().into_iter().next() {
            None => Ok(None),
            Some((md, mi, dd, di, c)) => {
                let w = self.word_of(md, mi, dd, di)?;
                let word = if w.is_empty() { "1".to_string() } else { word_label(&w) };
                Ok(Some(Witness { position: None, word, coeff: c }))
            }
        }
    }

    pub fn reorder_normal(&self, p: &NcPoly) -> Result<SplitForm> {
        self.reorder(p, Flavour::Full)
    }

    /// Normal ordering `:p:`, which drops the constant of every swap.
    pub fn order_homogeneous(&self, p: &NcPoly) -> Result<SplitForm> {
        self.reorder(p, Flavour::Ordered)
    }

    pub fn alg_witness(&self, a: &NcPoly, b: &NcPoly) -> Result<Option<Witness>> {
        let mut diff = a.clone();
        diff.add_scaled(b, &-Scalar::one());
        self.witness(&self.reorder_normal(&diff)?)
    }

    pub fn alg_equal(&self, a: &NcPoly, b: &NcPoly) -> Result<bool> {
        Ok(self.alg_witness(a, b)?.is_none())
    }

    /// Compares two matrices whose entries are already in split form.
    pub fn matrix_witness(&self, a: &OpMatrix<SplitForm>, b: &OpMatrix<SplitForm>) -> Result<Option<Witness>> {
        if a.dim() != b.dim() || a.sites() != b.sites() {
            return Err(Error::ShapeMismatch(format!("{} sites vs {}", a.sites(), b.sites())));
        }
        let (n, k) = (self.n(), a.sites());
        for r in 0..a.size() {
            let mut cols: Vec<u32> = a.row(r).iter().chain(b.row(r)).map(|(c, _)| *c).collect();
            cols.sort_unstable();
            cols.dedup();
            for c in cols {
                let mut d = a.get(r, c as usize).cloned().unwrap_or_default();
                if let Some(y) = b.get(r, c as usize) {
                    d.add_scaled(y, &-Scalar::one());
                }
                if let Some(mut w) = self.witness(&d)? {
                    w.position = Some((TensorOp::index_label(n, k, r), TensorOp::index_label(n, k, c as usize)));
                    return Ok(Some(w));
                }
            }
        }
        Ok(None)
    }

    pub fn matrix_equal(&self, a: &OpMatrix<SplitForm>, b: &OpMatrix<SplitForm>) -> Result<bool> {
        Ok(self.matrix_witness(a, b)?.is_none())
    }

    pub fn scope_generators(&self, scope: Scope) -> Result<Vec<(String, SplitForm)>> {
        let n = self.n();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        let mut out = Vec::new();
        if matches!(scope, Scope::M | Scope::Double) {
            out.extend(pairs.iter().map(|&(i, j)| (Gen::m(i, j).to_string(), self.generator(Gen::m(i, j)))));
        }
        if matches!(scope, Scope::Del | Scope::Double) {
            out.extend(pairs.iter().map(|&(i, j)| (Gen::d(i, j).to_string(), self.generator(Gen::d(i, j)))));
        }
        if scope == Scope::LHat {
            for &(i, j) in &pairs {
                let mut l = SplitForm::zero();
                for s in 0..n {
                    let t = self.mul(Flavour::Full, &self.generator(Gen::m(i, s)), &self.generator(Gen::d(s, j)))?;
                    l.add_scaled(&t, &Scalar::one());
                }
                out.push((format!("l[{},{}]", i + 1, j + 1), l));
            }
        }
        Ok(out)
    }

    /// `None` when `p` commutes with every generator of the scope; otherwise
    /// the witness names the generator.
    pub fn central_witness(&self, p: &SplitForm, scope: Scope) -> Result<Option<Witness>> {
        for (label, g) in self.scope_generators(scope)? {
            let mut c = self.mul(Flavour::Full, p, &g)?;
            c.add_scaled(&self.mul(Flavour::Full, &g, p)?, &-Scalar::one());
            if let Some(mut w) = self.witness(&c)? {
                w.word = format!("[·, {label}] ∋ {}", w.word);
                return Ok(Some(w));
            }
        }
        Ok(None)
    }

    pub fn is_central(&self, p: &SplitForm, scope: Scope) -> Result<bool> {
        Ok(self.central_witness(p, scope)?.is_none())
    }

    /// Coordinates of the `M`-degree-`d` component of `f` in the quotient basis.
    fn m_coords(&self, f: &SplitForm, d: usize) -> SparseVec {
        SparseVec::from_pairs(f.raw().filter_map(|(k, v)| {
            let (md, mi, dd, _) = super::engine::unkey(k);
            (md == d && dd == 0).then(|| (mi, v.clone()))
        }))
    }

    /// Membership of an element of `M(R)` in the characteristic subalgebra.
    ///
    /// Each homogeneous component of degree `n` is tested against the span of
    /// `ch_n(T_w)` over `w ∈ S_n`; the coefficients are returned in the
    /// lexicographic order of `w`, one list per degree present.
    pub fn char_membership(&self, f: &SplitForm) -> Result<Option<Vec<(usize, Vec<Scalar>)>>> {
        if !f.is_m_only() {
            return Err(Error::Invalid("char_membership needs an element of M(R)".into()));
        }
        let mut out = Vec::new();
        for d in 0..=f.max_m_degree() {
            let target = self.m_coords(f, d);
            if target.is_zero() {
                continue;
            }
            if d == 0 {
                out.push((0, vec![target.get(0).cloned().unwrap_or_else(Scalar::zero)]));
                continue;
            }
            let width = self.m_basis().dim(d)?;
            let mut spanning = Vec::new();
            for w in all_perms(d) {
                let z = HeckeElement::basis(w);
                let ch = crate::charsub::ch(self, &z, Kind::M)?;
                spanning.push(self.m_coords(&ch, d));
            }
            match SpanSolver::new(width, &spanning).solve(&target) {
                Some(c) => out.push((d, c)),
                None => return Ok(None),
            }
        }
        Ok(Some(out))
    }
}
