use super::{p_matrix, Env, Mat};
use crate::double::{act_matrix, Flavour, Witness};
use crate::error::{Error, Result};
use crate::ncalg::Kind;
use crate::tensor::TensorOp;

/// Side on which `Π J_s⁻¹` multiplies the ordered chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JPlacement {
    Left,
    Right,
}

fn j_inv_product(env: &Env<'_>, k: usize, sites: usize) -> Result<TensorOp> {
    let sym = env.double.sym();
    let mut acc = sym.identity(sites);
    for s in 2..=k {
        acc = &acc * &sym.jm_inv(s, sites)?;
    }
    Ok(acc)
}

/// `M_{1→k} D_{k→1} Π J_s⁻¹` (or with the product on the left) on `sites`.
pub fn ordered_chain(env: &Env<'_>, k: usize, sites: usize, side: JPlacement) -> Result<Mat> {
    let c = env.full();
    let md = c.mul(&c.m_chain(k, sites)?, &c.d_chain_desc(k, sites)?)?;
    let j = j_inv_product(env, k, sites)?;
    match side {
        JPlacement::Right => c.rmul(&md, &j),
        JPlacement::Left => c.lmul(&j, &md),
    }
}

/// `R L̂₁ R L̂₁ − L̂₁ R L̂₁ R = R L̂₁ − L̂₁ R`
pub fn verify_modified_re(env: &Env<'_>) -> Result<Option<Witness>> {
    let c = env.full();
    let r = env.double.sym().r();
    let l1 = c.l_hat()?.embed_at(1, 2)?;
    let rl = c.lmul(r, &l1)?;
    let lr = c.rmul(&l1, r)?;
    let lhs = c.sub(&c.mul(&rl, &rl)?, &c.mul(&lr, &lr)?)?;
    let rhs = c.sub(&rl, &lr)?;
    env.double.matrix_witness(&lhs, &rhs)
}

/// `R L̂₁ R M₁ = M₁ R L̂₁ R⁻¹ + R M₁`
pub fn verify_perm_l_hat(env: &Env<'_>) -> Result<Option<Witness>> {
    let c = env.full();
    let sym = env.double.sym();
    let (r, ri) = (sym.r(), sym.r_inv());
    let l1 = c.l_hat()?.embed_at(1, 2)?;
    let m1 = c.first(Kind::M, 2)?;
    let lhs = c.mul(&c.rmul(&c.lmul(r, &l1)?, r)?, &m1)?;
    let rhs = c.add(&c.mul(&c.rmul(&m1, r)?, &c.rmul(&l1, ri)?)?, &c.lmul(r, &m1)?)?;
    env.double.matrix_witness(&lhs, &rhs)
}

/// `K̂_{n+1} (underline) ▷ M_{1→n} = J⁻¹_{n+1} M_{1→n}`
pub fn verify_action_k_hat(env: &Env<'_>, n: usize) -> Result<Option<Witness>> {
    verify_action_k_hat_chain(env, n, 1)
}

/// `K̂_{n+p→n+1} ▷ M_{1→n} = Π_{i≤p} J⁻¹_{n+i} Π_{2≤s≤p} J_s^{↑n} M_{1→n}`
pub fn verify_action_k_hat_chain(env: &Env<'_>, n: usize, p: usize) -> Result<Option<Witness>> {
    if n == 0 || p == 0 {
        return Err(Error::Invalid("the action needs n, p ≥ 1".into()));
    }
    let sites = n + p;
    let c = env.full();
    let sym = env.double.sym();
    let k = c.k_chain_desc(n + p, n + 1, sites)?;
    let m = c.m_chain(n, sites)?;
    let lhs = act_matrix(env.double, &k, &m)?;
    let mut t = sym.identity(sites);
    for i in 1..=p {
        t = &t * &sym.jm_inv(n + i, sites)?;
    }
    for s in 2..=p {
        t = &t * &sym.jm_shifted(s, n, sites)?;
    }
    let rhs = c.lmul(&t, &m)?;
    env.double.matrix_witness(&lhs, &rhs)
}

/// `K̂_{n̲→1̲} = K̂_{1̄→n̄}`
pub fn verify_underline_overline(env: &Env<'_>, n: usize) -> Result<Option<Witness>> {
    let c = env.full();
    env.double.matrix_witness(&c.k_chain_desc(n, 1, n)?, &c.k_chain_over(n, n)?)
}

/// `:D₁M_{2̄}: = M_{2̄} D₁ R₁⁻²`
pub fn verify_normal_base(env: &Env<'_>) -> Result<Option<Witness>> {
    let o = env.ordered();
    let c = env.full();
    let sym = env.double.sym();
    let lhs = env.mul_linear(Flavour::Ordered, &o.first(Kind::Del, 2)?, &o.m_copy(2, 2)?)?;
    let ri = sym.r_inv_at(1, 2);
    let rhs = c.rmul(&c.mul(&c.m_copy(2, 2)?, &c.first(Kind::Del, 2)?)?, &(&*ri * &*ri))?;
    env.double.matrix_witness(&lhs, &rhs)
}

/// `:D_{m̄} L̂_{n̄}: = L̂_{n̄} D_{m̄} J_{n−m}^{↑m} (J⁻¹_{n−m+1})^{↑(m−1)}`
pub fn verify_lemma8(env: &Env<'_>, m: usize, n: usize) -> Result<Option<Witness>> {
    if m == 0 || m >= n {
        return Err(Error::Invalid(format!("ordering :D_m L̂_n: needs 1 ≤ m < n, got ({m}, {n})")));
    }
    let c = env.full();
    let sym = env.double.sym();
    let lhs = env.times_l_copy(Flavour::Ordered, &c.d_copy(m, n)?, n)?;
    let t = &sym.jm_shifted(n - m, m, n)? * &sym.jm_shifted_inv(n - m + 1, m - 1, n)?;
    let rhs = c.rmul(&c.mul(&c.l_copy(n, n)?, &c.d_copy(m, n)?)?, &t)?;
    env.double.matrix_witness(&lhs, &rhs)
}

/// `:L̂_{1→k}: = M_{1→k} D_{k→1} Π J_s⁻¹`, with the product on the chosen side.
pub fn verify_theorem7(env: &Env<'_>, k: usize, side: JPlacement) -> Result<Option<Witness>> {
    let lhs = env.l_chain(Flavour::Ordered, k, k)?;
    env.double.matrix_witness(&lhs, &ordered_chain(env, k, k, side)?)
}

/// `D_{k→1} L̂_{k+1} = L̂_{k+1} D_{k→1} J⁻¹_{k+1} + D_{k→1} 𝒫_{k+1}`
pub fn verify_wick_d(env: &Env<'_>, k: usize) -> Result<Option<Witness>> {
    let sites = k + 1;
    let c = env.full();
    let sym = env.double.sym();
    let dk = c.d_chain_desc(k, sites)?;
    let lhs = env.times_l_copy(Flavour::Full, &dk, k + 1)?;
    let first = c.rmul(&c.mul(&c.l_copy(k + 1, sites)?, &dk)?, &sym.jm_inv(k + 1, sites)?)?;
    let rhs = c.add(&first, &c.rmul(&dk, &p_matrix(sym, k + 1, sites)?)?)?;
    env.double.matrix_witness(&lhs, &rhs)
}

/// `:L̂_{1→k}: L̂_{k+1} = :L̂_{1→k+1}: + :L̂_{1→k}: 𝒫_{k+1}`, both ordered
/// chains computed by normal ordering.
pub fn verify_wick_ordered(env: &Env<'_>, k: usize) -> Result<Option<Witness>> {
    let sites = k + 1;
    let c = env.full();
    let sym = env.double.sym();
    let ordered = env.l_chain(Flavour::Ordered, k, sites)?;
    let lhs = env.times_l_copy(Flavour::Full, &ordered, k + 1)?;
    let next = env.times_l_copy(Flavour::Ordered, &ordered, k + 1)?;
    let rhs = c.add(&next, &c.rmul(&ordered, &p_matrix(sym, k + 1, sites)?)?)?;
    env.double.matrix_witness(&lhs, &rhs)
}
