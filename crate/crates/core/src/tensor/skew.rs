use super::{flip, TensorOp};
use crate::arith::Scalar;
use crate::error::{Error, Result};
use crate::linalg;

/// Skew-inverse of a 2-site operator together with its trace matrices.
#[derive(Clone, Debug)]
pub struct SkewData {
    pub psi: TensorOp,
    /// `C_i^j = Σ_k Ψ_{ik}^{jk}`
    pub c: TensorOp,
    /// `B_i^j = Σ_k Ψ_{ki}^{kj}`
    pub b: TensorOp,
}

/// Solves `Tr₂ R₁₂ Ψ₂₃ = P₁₃` for `Ψ`.
///
/// Writing out the trace, for every fixed pair `(i3, j3)` the unknowns
/// `Y_{ab} = Ψ_{(a,i3),(b,j3)}` satisfy `Σ_{ab} R_{(i1,b),(j1,a)} Y_{ab} = δ_{i1 j3} δ_{i3 j1}`,
/// so one `N²×N²` inverse determines `Ψ`. The result is then certified
/// against both defining conditions.
pub fn skew_inverse(r: &TensorOp) -> Result<SkewData> {
    if r.sites() != 2 {
        return Err(Error::ShapeMismatch(format!("skew inverse needs a 2-site operator, got {}", r.sites())));
    }
    let n = r.dim();
    let p = |i: usize, j: usize| i * n + j;
    let size = n * n;
    let mut a = vec![vec![Scalar::zero(); size]; size];
    for (row, col, v) in r.entries() {
        let (i1, b) = (row / n, row % n);
        let (j1, aa) = (col / n, col % n);
        a[p(i1, j1)][p(aa, b)] = v.clone();
    }
    let inv = linalg::inverse(&a).ok_or_else(|| Error::NotSkewInvertible("the defining linear system is singular".into()))?;
    let mut entries = Vec::new();
    for i3 in 0..n {
        for j3 in 0..n {
            let col = p(j3, i3);
            for aa in 0..n {
                for b in 0..n {
                    let v = &inv[p(aa, b)][col];
                    if !v.is_zero() {
                        entries.push((p(aa, i3), p(b, j3), v.clone()));
                    }
                }
            }
        }
    }
    let psi = TensorOp::from_entries(n, 2, entries)?;
    let p13 = flip(n);
    let left = (&r.embed_at(1, 3)? * &psi.embed_at(2, 3)?).partial_trace(&[2])?;
    if left != p13 {
        return Err(Error::NotSkewInvertible("Tr₂ R₁₂Ψ₂₃ ≠ P₁₃".into()));
    }
    let right = (&psi.embed_at(1, 3)? * &r.embed_at(2, 3)?).partial_trace(&[2])?;
    if right != p13 {
        return Err(Error::NotSkewInvertible("Tr₂ Ψ₁₂R₂₃ ≠ P₁₃".into()));
    }
    let c = psi.partial_trace(&[2])?;
    let b = psi.partial_trace(&[1])?;
    Ok(SkewData { psi, c, b })
}

/// `Tr₂(C₂ R₁₂)`, which equals `I₁` for a skew-invertible `R`.
pub fn trace_identity_residual(r: &TensorOp, c: &TensorOp) -> Result<TensorOp> {
    let c2 = c.embed_at(2, 2)?;
    let t = (&c2 * r).partial_trace(&[2])?;
    Ok(&t - &TensorOp::identity(r.dim(), 1))
}

/// R-trace over the given 1-based sites: multiply by `C` at each traced site, then contract.
pub fn r_trace(x: &TensorOp, sites: &[usize], c: &TensorOp) -> Result<TensorOp> {
    let mut y = x.clone();
    for &s in sites {
        if s == 0 || s > x.sites() {
            return Err(Error::IndexOutOfRange(format!("R-trace site {s} of {}", x.sites())));
        }
        y = &c.embed_at(s, x.sites())? * &y;
    }
    y.partial_trace(sites)
}

/// `Tr(C^{⊗k} X)` over all sites.
pub fn r_trace_all(x: &TensorOp, c: &TensorOp) -> Result<Scalar> {
    let sites: Vec<usize> = (1..=x.sites()).collect();
    let t = r_trace(x, &sites, c)?;
    Ok(t.get(0, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{LaurentPoly, QMode, Rational};
    use crate::tensor::{dj_r_matrix, flip};

    #[test]
    fn flip_is_its_own_skew_inverse() {
        let p = flip(3);
        let s = skew_inverse(&p).unwrap();
        assert_eq!(s.psi, p);
        assert_eq!(s.c, TensorOp::identity(3, 1));
        assert_eq!(s.b, TensorOp::identity(3, 1));
    }

    #[test]
    fn dj_two_trace_matrix() {
        let mode = QMode::exact();
        let r = dj_r_matrix(2, &mode);
        let s = skew_inverse(&r).unwrap();
        assert!(s.c.entries().all(|(i, j, _)| i == j));
        assert!(trace_identity_residual(&r, &s.c).unwrap().is_zero());
    }

    #[test]
    fn dj_trace_of_c_is_a_q_integer_multiple() {
        // Tr C = q^{-N}(q^{N-1} + q^{N-3} + ... + q^{1-N})
        let mode = QMode::exact();
        for n in 1..=3usize {
            let s = skew_inverse(&dj_r_matrix(n, &mode)).unwrap();
            let terms = (0..n).map(|t| (-(n as i32) + (n as i32 - 1) - 2 * t as i32, Rational::ONE));
            let expect = Scalar::from_laurent(LaurentPoly::from_terms(terms));
            assert_eq!(s.c.trace(), expect, "N = {n}");
        }
    }

    #[test]
    fn r_trace_of_r_over_second_site_is_identity() {
        let mode = QMode::specialized(Rational::new(7, 3)).unwrap();
        let r = dj_r_matrix(3, &mode);
        let s = skew_inverse(&r).unwrap();
        assert_eq!(r_trace(&r, &[2], &s.c).unwrap(), TensorOp::identity(3, 1));
    }

    #[test]
    fn full_r_trace_of_identity_is_square_of_trace() {
        let mode = QMode::exact();
        let r = dj_r_matrix(2, &mode);
        let s = skew_inverse(&r).unwrap();
        let tc = s.c.trace();
        assert_eq!(r_trace_all(&TensorOp::identity(2, 2), &s.c).unwrap(), &tc * &tc);
    }

    #[test]
    fn r_trace_composes() {
        let mode = QMode::exact();
        let r = dj_r_matrix(2, &mode);
        let s = skew_inverse(&r).unwrap();
        let x = &r.embed_at(1, 3).unwrap() * &r.embed_at(2, 3).unwrap();
        let step = r_trace(&r_trace(&x, &[3], &s.c).unwrap(), &[2], &s.c).unwrap();
        assert_eq!(step, r_trace(&x, &[2, 3], &s.c).unwrap());
    }

    #[test]
    fn singular_system_is_reported() {
        let z = TensorOp::zeros(2, 2);
        assert!(matches!(skew_inverse(&z), Err(Error::NotSkewInvertible(_))));
    }
}
