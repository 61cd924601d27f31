use rustc_hash::FxHashMap;

use super::{casimir, op_witness, Carrier, Env, Mat, Placement};
use crate::arith::{QMode, Scalar};
use crate::double::{Flavour, Scope, SplitForm, Witness};
use crate::error::{Error, Result};
use crate::hecke::{all_perms, primitive_idempotent, rho_r, HeckeElement, StdTableau};
use crate::linalg::{SpanSolver, SparseVec};
use crate::tensor::{dj_r_matrix, Symmetry, TensorOp};

/// The flip of sites `i` and `j` (1-based) on `k` sites.
pub fn transposition(n: usize, i: usize, j: usize, k: usize) -> Result<TensorOp> {
    if i == 0 || j == 0 || i > k || j > k {
        return Err(Error::IndexOutOfRange(format!("P_{{{i}{j}}} on {k} sites")));
    }
    let size = n.pow(k as u32);
    let entries = (0..size).map(|idx| {
        let mut digits: Vec<usize> = (0..k).map(|s| (idx / n.pow((k - 1 - s) as u32)) % n).collect();
        digits.swap(i - 1, j - 1);
        let col = digits.iter().fold(0, |acc, d| acc * n + d);
        (idx, col, Scalar::one())
    });
    TensorOp::from_entries(n, k, entries)
}

/// `𝒫_1 = I`, `𝒫_k = (I − J_k⁻¹)/(q − q⁻¹)`, divided entrywise and exactly.
pub fn p_matrix(sym: &Symmetry, k: usize, sites: usize) -> Result<TensorOp> {
    if k <= 1 {
        return Ok(sym.identity(sites));
    }
    let mode = sym.mode();
    if !mode.is_generic() {
        return Err(Error::NotDivisible("q − q⁻¹ vanishes at the classical point".into()));
    }
    let num = &sym.identity(sites) - &sym.jm_inv(k, sites)?;
    let gap = mode.gap();
    let mut entries = Vec::with_capacity(num.nnz());
    for (r, c, v) in num.entries() {
        let x = v.try_div(&gap)?;
        if let Scalar::Exact(f) = &x {
            if !f.is_laurent() {
                return Err(Error::NotDivisible(format!("entry ({r}, {c}) of I − J_{k}⁻¹ is {v}")));
            }
        }
        entries.push((r, c, x));
    }
    TensorOp::from_entries(sym.n(), sites, entries)
}

/// `𝒫_k = R⁻¹_{k−1} + Σ_{s=1}^{k−2} R⁻¹_{k−1→s+1} R⁻¹_s R⁻¹_{s+1→k−1}`
pub fn p_matrix_poly(sym: &Symmetry, k: usize, sites: usize) -> Result<TensorOp> {
    if k <= 1 {
        return Ok(sym.identity(sites));
    }
    sym.check_sites(sites)?;
    if k > sites {
        return Err(Error::IndexOutOfRange(format!("𝒫_{k} on {sites} sites")));
    }
    let mut acc = (*sym.r_inv_at(k - 1, sites)).clone();
    for s in 1..k - 1 {
        let t = &(&sym.chain(k - 1, s + 1, sites, true) * &sym.r_inv_at(s, sites)) * &sym.chain(s + 1, k - 1, sites, true);
        acc = &acc + &t;
    }
    Ok(acc)
}

pub fn verify_p_forms(sym: &Symmetry, k: usize) -> Result<Option<Witness>> {
    Ok(op_witness(&p_matrix(sym, k, k)?, &p_matrix_poly(sym, k, k)?))
}

/// The polynomial form of `𝒫_k` for the standard `R` at `q = 1` against
/// `Σ_{i<k} P_{ik}`.
pub fn verify_classical_p_limit(n: usize, k: usize) -> Result<Option<Witness>> {
    let mode = QMode::exact();
    let sym = Symmetry::new(dj_r_matrix(n, &mode), mode)?;
    let at_one = p_matrix_poly(&sym, k, k)?.specialize(&crate::arith::Rational::ONE)?;
    let mut want = TensorOp::zeros(n, k);
    if k == 1 {
        want = TensorOp::identity(n, 1);
    }
    for i in 1..k {
        want = &want + &transposition(n, i, k, k)?;
    }
    Ok(op_witness(&at_one, &want))
}

/// `L̂₁(L̂_{2̄} − 𝒫₂)…(L̂_{k̄} − 𝒫_k)` with `𝒫_s` supplied by `p`.
pub fn capelli_lhs(env: &Env<'_>, k: usize, p: &dyn Fn(usize, usize) -> Result<TensorOp>) -> Result<Mat> {
    let c = env.full();
    let mut acc = env.times_l_copy(Flavour::Full, &env.op(&env.double.sym().identity(k)), 1)?;
    for s in 2..=k {
        let shifted = env.times_l_copy(Flavour::Full, &acc, s)?;
        acc = c.sub(&shifted, &c.rmul(&acc, &p(s, k)?)?)?;
    }
    Ok(acc)
}

pub fn verify_capelli(env: &Env<'_>, k: usize) -> Result<Option<Witness>> {
    let sym = env.double.sym();
    verify_capelli_with(env, k, &|s, sites| p_matrix(sym, s, sites))
}

/// The Capelli identity with a replacement for the 𝒫 matrices, used to
/// confirm that a wrong shift is detected.
pub fn verify_capelli_with(env: &Env<'_>, k: usize, p: &dyn Fn(usize, usize) -> Result<TensorOp>) -> Result<Option<Witness>> {
    let lhs = capelli_lhs(env, k, p)?;
    let rhs = super::ordered_chain(env, k, k, super::JPlacement::Right)?;
    env.double.matrix_witness(&lhs, &rhs)
}

/// Projection of the Capelli identity by `E = ρ_R(e_T)`: the Jucys–Murphy
/// eigenvalue law for every `s ≤ k` and the collapse of `Π J_s⁻¹` to
/// `Π q^{−2c_s(T)}`, given the already computed left side.
pub fn projected_capelli(env: &Env<'_>, t: &StdTableau, lhs: &Mat) -> Result<Option<Witness>> {
    let sym = env.double.sym();
    let mode = sym.mode();
    let k = t.size();
    let e = rho_r(&primitive_idempotent(t, mode)?, sym, k)?;
    let contents = t.contents();
    let mut scalar = Scalar::one();
    for s in 1..=k {
        let lam = mode.q_pow(-2 * contents[s - 1]);
        let j = sym.jm_inv(s, k)?;
        let want = e.scale(&lam);
        if let Some(w) = op_witness(&(&j * &e), &want).or_else(|| op_witness(&(&e * &j), &want)) {
            return Ok(Some(w));
        }
        scalar = &scalar * &lam;
    }
    let c = env.full();
    let md = c.mul(&c.m_chain(k, k)?, &c.d_chain_desc(k, k)?)?;
    let projected = c.rmul(lhs, &e)?;
    let collapsed = c.rmul(&md, &e.scale(&scalar))?;
    env.double.matrix_witness(&projected, &collapsed)
}

/// `:C_Q^{(k)}(L̂): = Tr_R(Q :L̂_{1→k}:)`
pub fn ordered_casimir(env: &Env<'_>, q: &HeckeElement) -> Result<SplitForm> {
    let k = q.degree();
    let chain = env.l_chain(Flavour::Ordered, k, k)?;
    env.trace_of(q, &chain, Placement::Left)
}

/// Centrality and the decomposition `:C_Q^{(k)}: − C_Q^{(k)} ∈ span{C^{(k')}_{T_w} : k' < k}`.
#[derive(Clone, Debug)]
pub struct Theorem22 {
    pub central: Option<Witness>,
    /// Coefficients over `C^{(k')}_{T_w}`, ordered by `k'` then `w`.
    pub lower: Option<Vec<Scalar>>,
}

impl Theorem22 {
    pub fn holds(&self) -> bool {
        self.central.is_none() && self.lower.is_some()
    }
}

fn coordinates(forms: &[&SplitForm]) -> (usize, Vec<SparseVec>) {
    let mut index: FxHashMap<u64, usize> = FxHashMap::default();
    let mut keys: Vec<u64> = forms.iter().flat_map(|f| f.raw().map(|(k, _)| k)).collect();
    keys.sort_unstable();
    keys.dedup();
    for (i, k) in keys.iter().enumerate() {
        index.insert(*k, i);
    }
    let vecs = forms.iter().map(|f| SparseVec::from_pairs(f.raw().map(|(k, v)| (index[&k], v.clone())))).collect();
    (keys.len(), vecs)
}

pub fn theorem22(env: &Env<'_>, q: &HeckeElement) -> Result<Theorem22> {
    let d = env.double;
    let k = q.degree();
    let ordered = ordered_casimir(env, q)?;
    let central = d.central_witness(&ordered, Scope::LHat)?;
    let mut residual = ordered.clone();
    residual.add_scaled(&casimir(d, q)?, &-Scalar::one());
    let mut lower = Vec::new();
    for kp in 1..k {
        for w in all_perms(kp) {
            lower.push(env.char_trace(&HeckeElement::basis(w), Carrier::LHat, Placement::Left)?);
        }
    }
    let mut forms: Vec<&SplitForm> = lower.iter().collect();
    forms.push(&residual);
    let (width, mut vecs) = coordinates(&forms);
    let target = vecs.pop().expect("residual pushed last");
    let solved = if residual.is_zero() {
        Some(vec![Scalar::zero(); lower.len()])
    } else {
        SpanSolver::new(width, &vecs).solve(&target)
    };
    Ok(Theorem22 { central, lower: solved })
}
