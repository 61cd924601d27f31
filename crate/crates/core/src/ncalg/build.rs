use super::{Algebra, FreeAlgebra, Gen, Kind, NcPoly, OpMatrix};
use crate::error::{Error, Result};
use crate::tensor::{Symmetry, TensorOp};

/// Matrix builders over an entry algebra for a fixed symmetry.
pub struct Calc<'a, A: Algebra> {
    pub alg: &'a A,
    pub sym: &'a Symmetry,
}

impl<'a, A: Algebra> Clone for Calc<'a, A> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<'a, A: Algebra> Copy for Calc<'a, A> {}

type Mat<A> = OpMatrix<<A as Algebra>::Elem>;

impl<'a, A: Algebra> Calc<'a, A> {
    pub fn new(alg: &'a A, sym: &'a Symmetry) -> Self {
        Calc { alg, sym }
    }

    pub fn n(&self) -> usize {
        self.sym.n()
    }

    /// The 1-site generating matrix with `(i, j)` entry the generator.
    pub fn gen_matrix(&self, kind: Kind) -> Mat<A> {
        let n = self.n();
        let entries = (0..n).flat_map(|i| (0..n).map(move |j| (i, j)));
        OpMatrix::from_entries(self.alg, n, 1, entries.map(|(i, j)| (i, j, self.alg.generator(Gen { kind, i: i as u8, j: j as u8 }))))
            .expect("one site is always within the guard")
    }

    /// `X₁` on `k` sites.
    pub fn first(&self, kind: Kind, k: usize) -> Result<Mat<A>> {
        self.gen_matrix(kind).embed_at(1, k)
    }

    pub fn op(&self, t: &TensorOp) -> Mat<A> {
        OpMatrix::from_op(self.alg, t)
    }

    pub fn mul(&self, a: &Mat<A>, b: &Mat<A>) -> Result<Mat<A>> {
        a.mul(self.alg, b)
    }

    pub fn lmul(&self, t: &TensorOp, x: &Mat<A>) -> Result<Mat<A>> {
        OpMatrix::op_mul(self.alg, t, x)
    }

    pub fn rmul(&self, x: &Mat<A>, t: &TensorOp) -> Result<Mat<A>> {
        x.mul_op(self.alg, t)
    }

    pub fn add(&self, a: &Mat<A>, b: &Mat<A>) -> Result<Mat<A>> {
        a.add(self.alg, b)
    }

    pub fn sub(&self, a: &Mat<A>, b: &Mat<A>) -> Result<Mat<A>> {
        a.sub(self.alg, b)
    }

    /// Product of a sequence, associated from the left.
    pub fn product(&self, factors: &[Mat<A>]) -> Result<Mat<A>> {
        let (first, rest) = factors.split_first().ok_or_else(|| Error::Invalid("empty matrix product".into()))?;
        rest.iter().try_fold(first.clone(), |acc, f| self.mul(&acc, f))
    }

    fn check_copy(&self, r: usize, k: usize) -> Result<()> {
        if r == 0 || r > k {
            return Err(Error::IndexOutOfRange(format!("copy {r} needs at least {r} sites, have {k}")));
        }
        self.sym.check_sites(k)
    }

    /// `X_{r̄} = R_{r-1} X_{\overline{r-1}} R_{r-1}^{-1}` starting from `X₁` (given on `k` sites).
    pub fn overline(&self, x1: &Mat<A>, r: usize) -> Result<Mat<A>> {
        let k = x1.sites();
        self.check_copy(r, k)?;
        if r == 1 {
            return Ok(x1.clone());
        }
        let left = self.sym.chain(r - 1, 1, k, false);
        let right = self.sym.chain(1, r - 1, k, true);
        self.rmul(&self.lmul(&left, x1)?, &right)
    }

    /// `X_{r̲} = R_{r-1}^{-1} X_{\underline{r-1}} R_{r-1}` starting from `X₁`.
    pub fn underline(&self, x1: &Mat<A>, r: usize) -> Result<Mat<A>> {
        let k = x1.sites();
        self.check_copy(r, k)?;
        if r == 1 {
            return Ok(x1.clone());
        }
        let left = self.sym.chain(r - 1, 1, k, true);
        let right = self.sym.chain(1, r - 1, k, false);
        self.rmul(&self.lmul(&left, x1)?, &right)
    }

    pub fn m_copy(&self, r: usize, k: usize) -> Result<Mat<A>> {
        self.overline(&self.first(Kind::M, k)?, r)
    }

    pub fn d_copy(&self, r: usize, k: usize) -> Result<Mat<A>> {
        self.overline(&self.first(Kind::Del, k)?, r)
    }

    /// `L̂ = M·D` as a 1-site matrix.
    pub fn l_hat(&self) -> Result<Mat<A>> {
        self.mul(&self.gen_matrix(Kind::M), &self.gen_matrix(Kind::Del))
    }

    /// `K̂ = I - (q - q^{-1}) L̂`.
    pub fn k_hat(&self) -> Result<Mat<A>> {
        let id = self.op(&self.sym.identity(1));
        id.combine(self.alg, &self.l_hat()?, &-&self.sym.mode().gap())
    }

    pub fn l_copy(&self, r: usize, k: usize) -> Result<Mat<A>> {
        self.overline(&self.l_hat()?.embed_at(1, k)?, r)
    }

    pub fn k_copy_over(&self, r: usize, k: usize) -> Result<Mat<A>> {
        self.overline(&self.k_hat()?.embed_at(1, k)?, r)
    }

    pub fn k_copy_under(&self, r: usize, k: usize) -> Result<Mat<A>> {
        self.underline(&self.k_hat()?.embed_at(1, k)?, r)
    }

    fn chain_of(&self, copies: impl Iterator<Item = usize>, k: usize, f: impl Fn(usize) -> Result<Mat<A>>) -> Result<Mat<A>> {
        let mats = copies.map(f).collect::<Result<Vec<_>>>()?;
        if mats.is_empty() {
            return Ok(self.op(&self.sym.identity(k)));
        }
        self.product(&mats)
    }

    /// `M_{1̄} … M_{n̄}` on `k` sites.
    pub fn m_chain(&self, n: usize, k: usize) -> Result<Mat<A>> {
        let m1 = self.first(Kind::M, k)?;
        self.chain_of(1..=n, k, |r| self.overline(&m1, r))
    }

    /// `D_{n̄} … D_{1̄}`
    pub fn d_chain_desc(&self, n: usize, k: usize) -> Result<Mat<A>> {
        let d1 = self.first(Kind::Del, k)?;
        self.chain_of((1..=n).rev(), k, |r| self.overline(&d1, r))
    }

    /// `D_{1̄} … D_{n̄}`
    pub fn d_chain(&self, n: usize, k: usize) -> Result<Mat<A>> {
        let d1 = self.first(Kind::Del, k)?;
        self.chain_of(1..=n, k, |r| self.overline(&d1, r))
    }

    /// `L̂_{1̄} … L̂_{n̄}`
    pub fn l_chain(&self, n: usize, k: usize) -> Result<Mat<A>> {
        let l1 = self.l_hat()?.embed_at(1, k)?;
        self.chain_of(1..=n, k, |r| self.overline(&l1, r))
    }

    /// `K̂_{1̄} … K̂_{n̄}`
    pub fn k_chain_over(&self, n: usize, k: usize) -> Result<Mat<A>> {
        let k1 = self.k_hat()?.embed_at(1, k)?;
        self.chain_of(1..=n, k, |r| self.overline(&k1, r))
    }

    /// `K̂_{r̲} K̂_{\underline{r-1}} … K̂_{s̲}`, `r ≥ s`.
    pub fn k_chain_desc(&self, r: usize, s: usize, k: usize) -> Result<Mat<A>> {
        if s == 0 || s > r {
            return Err(Error::IndexOutOfRange(format!("descending chain {r}→{s}")));
        }
        let k1 = self.k_hat()?.embed_at(1, k)?;
        self.chain_of((s..=r).rev(), k, |t| self.underline(&k1, t))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationKind {
    /// `R M₁ R M₁ - M₁ R M₁ R`
    ReM,
    /// `R⁻¹ D₁ R⁻¹ D₁ - D₁ R⁻¹ D₁ R⁻¹`
    ReD,
    /// `D₁ R M₁ R - R M₁ R⁻¹ D₁ - R`
    Perm,
}

#[derive(Clone, Debug)]
pub struct RelationSet {
    pub kind: RelationKind,
    pub homogeneous: bool,
    pub relations: Vec<NcPoly>,
}

/// Entries of the defining relation matrix, each understood as `≡ 0`.
pub fn relations(kind: RelationKind, sym: &Symmetry) -> Result<RelationSet> {
    let calc = Calc::new(&FreeAlgebra, sym);
    let r = sym.r();
    let ri = sym.r_inv();
    let rel = match kind {
        RelationKind::ReM => re_residual(&calc, &calc.first(Kind::M, 2)?, r)?,
        RelationKind::ReD => re_residual(&calc, &calc.first(Kind::Del, 2)?, ri)?,
        RelationKind::Perm => {
            let m1 = calc.first(Kind::M, 2)?;
            let d1 = calc.first(Kind::Del, 2)?;
            let lhs = calc.mul(&d1, &calc.rmul(&calc.lmul(r, &m1)?, r)?)?;
            let rhs = calc.mul(&calc.rmul(&calc.lmul(r, &m1)?, ri)?, &d1)?;
            calc.sub(&calc.sub(&lhs, &rhs)?, &calc.op(r))?
        }
    };
    let relations = rel.entries().map(|(_, _, p)| p.clone()).filter(|p| !p.is_zero()).collect();
    Ok(RelationSet { kind, homogeneous: kind != RelationKind::Perm, relations })
}

fn re_residual(calc: &Calc<'_, FreeAlgebra>, x1: &OpMatrix<NcPoly>, r: &TensorOp) -> Result<OpMatrix<NcPoly>> {
    let rx = calc.lmul(r, x1)?;
    let xr = calc.rmul(x1, r)?;
    let lhs = calc.mul(&rx, &rx)?;
    let rhs = calc.mul(&xr, &xr)?;
    calc.sub(&lhs, &rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{QMode, Rational, Scalar};
    use crate::ncalg::bidegree;
    use crate::tensor::{dj_r_matrix, flip};
    use proptest::prelude::*;

    fn sym(n: usize, mode: QMode) -> Symmetry {
        Symmetry::new(dj_r_matrix(n, &mode), mode).unwrap()
    }

    #[test]
    fn generating_matrix_layout() {
        let s = sym(2, QMode::exact());
        let c = Calc::new(&FreeAlgebra, &s);
        let m = c.gen_matrix(Kind::M);
        assert_eq!(m.nnz(), 4);
        assert_eq!(m.get(0, 1).unwrap(), &NcPoly::gen(Gen::m(0, 1)));
        let one = sym(1, QMode::exact());
        let c1 = Calc::new(&FreeAlgebra, &one);
        assert_eq!(c1.m_copy(2, 2).unwrap(), c1.first(Kind::M, 2).unwrap());
    }

    #[test]
    fn copies_shift_and_invert() {
        let s = sym(2, QMode::exact());
        let c = Calc::new(&FreeAlgebra, &s);
        let m2 = c.m_copy(2, 3).unwrap();
        let m3 = c.m_copy(3, 3).unwrap();
        let via = c.rmul(&c.lmul(&s.r_at(2, 3), &m2).unwrap(), &s.r_inv_at(2, 3)).unwrap();
        assert_eq!(via, m3);
        let back = c.rmul(&c.lmul(&s.r_inv_at(1, 3), &m2).unwrap(), &s.r_at(1, 3)).unwrap();
        assert_eq!(back, c.first(Kind::M, 3).unwrap());
        // copies commute with R_i away from their position
        let m1 = c.first(Kind::M, 3).unwrap();
        assert_eq!(c.lmul(&s.r_at(2, 3), &m1).unwrap(), c.rmul(&m1, &s.r_at(2, 3)).unwrap());
    }

    #[test]
    fn shift_law_for_two_copies() {
        let s = sym(2, QMode::exact());
        let c = Calc::new(&FreeAlgebra, &s);
        let lhs = c.mul(&c.m_copy(2, 3).unwrap(), &c.m_copy(3, 3).unwrap()).unwrap();
        let m12 = c.m_chain(2, 3).unwrap();
        let rhs = c.rmul(&c.lmul(&s.chain(1, 2, 3, false), &m12).unwrap(), &s.chain(2, 1, 3, true)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn chain_gradings() {
        let s = sym(2, QMode::exact());
        let c = Calc::new(&FreeAlgebra, &s);
        let mc = c.m_chain(2, 2).unwrap();
        assert!(mc.entries().all(|(_, _, p)| p.bidegrees() == vec![(2, 0)]));
        let l = c.l_hat().unwrap();
        assert!(l.entries().all(|(_, _, p)| p.terms().all(|(w, _)| bidegree(w) == (1, 1))));
        let one = sym(1, QMode::exact());
        let l1 = Calc::new(&FreeAlgebra, &one).l_hat().unwrap();
        assert_eq!(l1.get(0, 0).unwrap().len(), 1);
    }

    #[test]
    fn k_hat_definition() {
        let mode = QMode::specialized(Rational::from_int(2)).unwrap();
        let s = sym(2, mode.clone());
        let c = Calc::new(&FreeAlgebra, &s);
        let back = c.k_hat().unwrap().combine(&FreeAlgebra, &c.l_hat().unwrap(), &mode.gap()).unwrap();
        assert_eq!(back, c.op(&s.identity(1)));
    }

    #[test]
    fn relation_sets() {
        let one = sym(1, QMode::exact());
        assert!(relations(RelationKind::ReM, &one).unwrap().relations.is_empty());
        let s = sym(2, QMode::exact());
        let re = relations(RelationKind::ReM, &s).unwrap();
        assert!(re.homogeneous);
        assert!(re.relations.iter().all(|p| p.bidegrees() == vec![(2, 0)]));
        let pm = relations(RelationKind::Perm, &s).unwrap();
        assert!(!pm.homogeneous);
        assert!(pm.relations.iter().all(|p| p.bidegrees().iter().all(|d| *d == (1, 1) || *d == (0, 0))));
    }

    #[test]
    fn classical_perm_is_heisenberg() {
        let p = flip(2);
        let s = Symmetry::new(p, QMode::classical()).unwrap();
        let pm = relations(RelationKind::Perm, &s).unwrap();
        // each relation reads ∂_i^j m_k^s - m_k^s ∂_i^j - δ_i^s δ_k^j
        assert_eq!(pm.relations.len(), 16);
        for rel in &pm.relations {
            let consts: Vec<_> = rel.terms().filter(|(w, _)| w.is_empty()).collect();
            let dm: Vec<_> = rel.terms().filter(|(w, _)| w.len() == 2 && w[0].kind == Kind::Del).collect();
            let md: Vec<_> = rel.terms().filter(|(w, _)| w.len() == 2 && w[0].kind == Kind::M).collect();
            assert_eq!((dm.len(), md.len()), (1, 1));
            let (d, m) = (dm[0].0[0], dm[0].0[1]);
            assert_eq!(md[0].0.as_slice(), &[m, d]);
            let expect = if d.i == m.j && m.i == d.j { 1 } else { 0 };
            assert_eq!(consts.len(), expect);
        }
        let re = relations(RelationKind::ReM, &s).unwrap();
        for rel in &re.relations {
            // commutators only
            assert!(rel.terms().all(|(_, c)| *c == Scalar::one() || *c == Scalar::from_int(-1)));
        }
    }

    #[test]
    fn trace_of_r_against_identity() {
        let s = sym(2, QMode::exact());
        let c = Calc::new(&FreeAlgebra, &s);
        let x = c.lmul(s.r(), &c.op(&s.identity(2))).unwrap();
        let t = x.r_trace_all(&FreeAlgebra, &s).unwrap();
        assert_eq!(t, NcPoly::constant(s.c().trace()));
        let partial = x.r_trace(&FreeAlgebra, &s, &[2]).unwrap();
        assert_eq!(partial, c.op(&s.identity(1)));
    }

    fn small_matrix() -> impl Strategy<Value = Vec<(usize, usize, usize, i64)>> {
        prop::collection::vec((0..4usize, 0..4usize, 0..8usize, -2i64..3), 1..5)
    }

    fn build(c: &Calc<'_, FreeAlgebra>, spec: &[(usize, usize, usize, i64)]) -> OpMatrix<NcPoly> {
        let entries = spec.iter().map(|&(r, col, g, v)| {
            let kind = if g < 4 { Kind::M } else { Kind::Del };
            (r, col, NcPoly::gen(Gen::from_letter(kind, g % 4, 2)).scale(&Scalar::from_int(v)))
        });
        OpMatrix::from_entries(c.alg, 2, 2, entries).unwrap()
    }

    proptest! {
        #[test]
        fn matrix_product_is_associative(a in small_matrix(), b in small_matrix(), d in small_matrix()) {
            let s = sym(2, QMode::specialized(Rational::from_int(3)).unwrap());
            let c = Calc::new(&FreeAlgebra, &s);
            let (a, b, d) = (build(&c, &a), build(&c, &b), build(&c, &d));
            let left = c.mul(&c.mul(&a, &b).unwrap(), &d).unwrap();
            let right = c.mul(&a, &c.mul(&b, &d).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            let id = c.op(&s.identity(2));
            prop_assert_eq!(c.mul(&id, &a).unwrap(), a.clone());
            prop_assert_eq!(c.lmul(&s.identity(2), &a).unwrap(), a);
        }
    }
}
