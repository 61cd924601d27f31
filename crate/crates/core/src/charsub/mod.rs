//! Characteristic elements, Laplacians and Casimirs, normal ordering, Wick
//! steps, the 𝒫 matrices and Capelli identities, each with a verifier.

mod capelli;
mod identities;

pub use capelli::{
    capelli_lhs, ordered_casimir, p_matrix, p_matrix_poly, projected_capelli, theorem22, transposition,
    verify_capelli, verify_capelli_with, verify_classical_p_limit, verify_p_forms, Theorem22,
};
pub use identities::{
    ordered_chain, verify_action_k_hat, verify_action_k_hat_chain, verify_lemma8, verify_modified_re,
    verify_normal_base, verify_perm_l_hat, verify_theorem7, verify_underline_overline, verify_wick_d,
    verify_wick_ordered, JPlacement,
};

use crate::arith::Scalar;
use crate::double::{Double, DoubleAlg, Flavour, SplitForm, Witness};
use crate::error::{Error, Result};
use crate::exec;
use crate::hecke::{coxeter_element, primitive_idempotent, rho_r, HeckeElement, Partition, StdTableau};
use crate::ncalg::{Calc, Kind, OpMatrix};
use crate::tensor::TensorOp;

pub type Mat = OpMatrix<SplitForm>;

/// The matrix a characteristic trace is taken of.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Carrier {
    /// `M_{1̄} … M_{n̄}`
    M,
    /// `D_{1̄} … D_{n̄}`
    D,
    /// `L̂_{1̄} … L̂_{n̄}`
    LHat,
    /// `K̂_{n̲} … K̂_{1̲}`
    KHat,
}

/// Side of the chain `ρ_R(z)` is placed on inside the trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Placement {
    Left,
    Right,
}

/// Shared builders over a double in both flavours.
pub struct Env<'a> {
    pub double: &'a Double,
    full: DoubleAlg<'a>,
    ordered: DoubleAlg<'a>,
}

impl<'a> Env<'a> {
    pub fn new(double: &'a Double) -> Self {
        Env { double, full: double.algebra(Flavour::Full), ordered: double.algebra(Flavour::Ordered) }
    }

    pub fn full(&self) -> Calc<'_, DoubleAlg<'a>> {
        Calc::new(&self.full, self.double.sym())
    }

    pub fn ordered(&self) -> Calc<'_, DoubleAlg<'a>> {
        Calc::new(&self.ordered, self.double.sym())
    }

    pub fn calc(&self, flavour: Flavour) -> Calc<'_, DoubleAlg<'a>> {
        match flavour {
            Flavour::Full => self.full(),
            Flavour::Ordered => self.ordered(),
        }
    }

    pub fn op(&self, t: &TensorOp) -> Mat {
        self.full().op(t)
    }

    /// `X·Y` where every entry of `Y` is linear in the generators; each entry
    /// of `X` is multiplied by each letter once.
    pub fn mul_linear(&self, flavour: Flavour, x: &Mat, y: &Mat) -> Result<Mat> {
        let d = self.double;
        let n = d.n();
        let rows: Vec<Result<Vec<(usize, usize, SplitForm)>>> = exec::map_range(x.size(), |r| {
            let mut acc: Vec<SplitForm> = vec![SplitForm::zero(); x.size()];
            for (j, e) in x.row(r) {
                let mut cache: Vec<Option<SplitForm>> = vec![None; 2 * n * n];
                for (c, yv) in y.row(*j as usize) {
                    for (md, mi, dd, di, coef) in yv.terms() {
                        let slot = match (md, dd) {
                            (1, 0) => mi,
                            (0, 1) => n * n + di,
                            (0, 0) => {
                                acc[*c as usize].add_scaled(e, &coef);
                                continue;
                            }
                            _ => return Err(Error::Invalid("mul_linear needs entries of degree at most one".into())),
                        };
                        if cache[slot].is_none() {
                            cache[slot] = Some(if slot < n * n {
                                d.mul_m_letter(flavour, e, slot)?
                            } else {
                                d.mul_d_letter(e, slot - n * n)?
                            });
                        }
                        acc[*c as usize].add_scaled(cache[slot].as_ref().expect("filled above"), &coef);
                    }
                }
            }
            Ok(acc.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(c, v)| (r, c, v)).collect())
        });
        let mut entries = Vec::new();
        for row in rows {
            entries.extend(row?);
        }
        OpMatrix::from_entries(&self.full, x.dim(), x.sites(), entries)
    }

    /// `X·L̂_{r̄}` computed as `(X·M_{r̄})·D_{r̄}`.
    pub fn times_l_copy(&self, flavour: Flavour, x: &Mat, r: usize) -> Result<Mat> {
        let k = x.sites();
        let c = self.full();
        let xm = self.mul_linear(flavour, x, &c.m_copy(r, k)?)?;
        self.mul_linear(flavour, &xm, &c.d_copy(r, k)?)
    }

    /// `L̂_{1̄} … L̂_{n̄}` on `k` sites in the given flavour; the ordered
    /// flavour gives `:L̂_{1→n}:`.
    pub fn l_chain(&self, flavour: Flavour, n: usize, k: usize) -> Result<Mat> {
        let mut acc = self.op(&self.double.sym().identity(k));
        for r in 1..=n {
            acc = self.times_l_copy(flavour, &acc, r)?;
        }
        Ok(acc)
    }

    pub fn chain(&self, carrier: Carrier, n: usize, k: usize) -> Result<Mat> {
        let c = self.full();
        match carrier {
            Carrier::M => c.m_chain(n, k),
            Carrier::D => c.d_chain(n, k),
            Carrier::LHat => self.l_chain(Flavour::Full, n, k),
            Carrier::KHat => c.k_chain_desc(n, 1, k),
        }
    }

    /// `Tr_{R(1…n)}(ρ_R(z)·X)` (or with `ρ_R(z)` on the right).
    pub fn trace_of(&self, z: &HeckeElement, x: &Mat, placement: Placement) -> Result<SplitForm> {
        let sym = self.double.sym();
        let n = x.sites();
        let rho = rho_r(z, sym, n)?;
        let cp = sym.c_power(n);
        let w = match placement {
            Placement::Left => &cp * &rho,
            Placement::Right => &rho * &cp,
        };
        x.trace_with(&self.full, &w)
    }

    pub fn char_trace(&self, z: &HeckeElement, carrier: Carrier, placement: Placement) -> Result<SplitForm> {
        let n = z.degree();
        if n == 0 {
            return Ok(SplitForm::constant(Scalar::one()));
        }
        self.trace_of(z, &self.chain(carrier, n, n)?, placement)
    }

    /// `Tr_R X^k` for the one-site generating matrix of a carrier.
    pub fn matrix_power_trace(&self, carrier: Carrier, k: usize) -> Result<SplitForm> {
        let c = self.full();
        let x = match carrier {
            Carrier::M => c.gen_matrix(Kind::M),
            Carrier::D => c.gen_matrix(Kind::Del),
            Carrier::LHat => c.l_hat()?,
            Carrier::KHat => c.k_hat()?,
        };
        let mut acc = x.clone();
        for _ in 1..k {
            acc = c.mul(&acc, &x)?;
        }
        acc.r_trace_all(&self.full, self.double.sym())
    }
}

/// `ch_n(z)` for `z ∈ H_n`, with `ρ_R(z)` on the left.
pub fn ch(double: &Double, z: &HeckeElement, kind: Kind) -> Result<SplitForm> {
    let carrier = match kind {
        Kind::M => Carrier::M,
        Kind::Del => Carrier::D,
    };
    Env::new(double).char_trace(z, carrier, Placement::Left)
}

pub fn ch_carrier(double: &Double, z: &HeckeElement, carrier: Carrier, placement: Placement) -> Result<SplitForm> {
    Env::new(double).char_trace(z, carrier, placement)
}

/// `p_k = Tr_{R(1…k)}(R_{k-1}…R_1 X_{1→k})`.
pub fn power_sum(double: &Double, k: usize, carrier: Carrier) -> Result<SplitForm> {
    ch_carrier(double, &coxeter_element(k, double.sym().mode()), carrier, Placement::Left)
}

/// `Π p_{λ_i}(M)`
pub fn power_sum_partition(double: &Double, lambda: &Partition) -> Result<SplitForm> {
    let mut acc = SplitForm::constant(Scalar::one());
    for &part in lambda.parts() {
        acc = double.mul(Flavour::Full, &acc, &power_sum(double, part, Carrier::M)?)?;
    }
    Ok(acc)
}

/// `s_λ(M) = Tr_R(ρ_R(e_T) M_{1→n})`.
pub fn schur(double: &Double, t: &StdTableau) -> Result<SplitForm> {
    let e = primitive_idempotent(t, double.sym().mode())?;
    ch(double, &e, Kind::M)
}

/// `D_Q^{(m)} = Tr_R(Q D_{1→m})`, `m` the degree of `q`.
pub fn laplacian(double: &Double, q: &HeckeElement) -> Result<SplitForm> {
    ch_carrier(double, q, Carrier::D, Placement::Left)
}

/// `C_Q^{(k)}(L̂) = Tr_R(Q L̂_{1→k})`.
pub fn casimir(double: &Double, q: &HeckeElement) -> Result<SplitForm> {
    ch_carrier(double, q, Carrier::LHat, Placement::Left)
}

/// `C_Q^{(n)}(K̂) = Tr_R(Q K̂_{n̲→1̲})`.
pub fn casimir_k_form(double: &Double, q: &HeckeElement) -> Result<SplitForm> {
    ch_carrier(double, q, Carrier::KHat, Placement::Left)
}

/// Outcome of acting with an operator on a characteristic element.
#[derive(Clone, Debug)]
pub struct Stability {
    pub result: SplitForm,
    /// Coefficients over `ch_d(T_w)` per degree, `None` when outside the span.
    pub membership: Option<Vec<(usize, Vec<Scalar>)>>,
    pub degrees: Vec<usize>,
}

impl Stability {
    /// In the characteristic span with every component of degree `expected`
    /// (vanishing when `expected` is `None`).
    pub fn holds(&self, expected: Option<usize>) -> bool {
        match expected {
            None => self.result.is_zero(),
            Some(d) => self.membership.is_some() && self.degrees.iter().all(|x| *x == d),
        }
    }
}

pub fn stability(double: &Double, op: &SplitForm, target: &SplitForm) -> Result<Stability> {
    let result = double.act(op, target)?;
    let membership = double.char_membership(&result)?;
    let mut degrees: Vec<usize> = result.terms().iter().map(|t| t.0).collect();
    degrees.sort_unstable();
    degrees.dedup();
    Ok(Stability { result, membership, degrees })
}

/// Witness for `a ≠ b` between scalar operators.
pub fn op_witness(a: &TensorOp, b: &TensorOp) -> Option<Witness> {
    let d = a - b;
    d.first_nonzero().map(|(r, c, v)| Witness {
        position: Some((TensorOp::index_label(a.dim(), a.sites(), r), TensorOp::index_label(a.dim(), a.sites(), c))),
        word: "1".into(),
        coeff: v,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::arith::QMode;
    use crate::double::{Caps, Scope};
    use crate::hecke::all_perms;
    use crate::tensor::{dj_r_matrix, Symmetry};

    fn double(n: usize, mode: QMode, caps: Caps) -> Double {
        let sym = Symmetry::new(dj_r_matrix(n, &mode), mode).unwrap();
        Double::new(Arc::new(sym), caps).unwrap()
    }

    fn exact2() -> Double {
        double(2, QMode::exact(), Caps { m_degree: 4, d_degree: 3 })
    }

    #[test]
    fn first_characteristic_is_trace() {
        let d = exact2();
        let p1 = ch(&d, &HeckeElement::one(1), Kind::M).unwrap();
        let c = d.sym().c();
        let mut want = SplitForm::zero();
        for (i, j, v) in c.entries() {
            want.add_scaled(&d.generator(crate::ncalg::Gen::m(j, i)), v);
        }
        assert_eq!(p1, want);
    }

    #[test]
    fn coxeter_trace_is_matrix_power() {
        let d = exact2();
        let env = Env::new(&d);
        for k in 1..=3 {
            assert_eq!(power_sum(&d, k, Carrier::M).unwrap(), env.matrix_power_trace(Carrier::M, k).unwrap(), "k={k}");
        }
    }

    #[test]
    fn characteristic_elements_are_central_and_placement_free() {
        let d = exact2();
        for n in 1..=2 {
            for w in all_perms(n) {
                let z = HeckeElement::basis(w);
                let left = ch_carrier(&d, &z, Carrier::M, Placement::Left).unwrap();
                let right = ch_carrier(&d, &z, Carrier::M, Placement::Right).unwrap();
                assert_eq!(left, right);
                assert!(d.is_central(&left, Scope::M).unwrap());
            }
        }
    }

    #[test]
    fn schur_sum_is_power_square() {
        let d = exact2();
        let s2 = schur(&d, &StdTableau::parse("1,2").unwrap()).unwrap();
        let s11 = schur(&d, &StdTableau::parse("1;2").unwrap()).unwrap();
        let p11 = power_sum_partition(&d, &Partition::parse("1,1").unwrap()).unwrap();
        let mut sum = s2;
        sum.add_scaled(&s11, &Scalar::one());
        assert_eq!(sum, p11);
    }

    #[test]
    fn laplace_on_trace_is_a_scalar() {
        let d = exact2();
        let p1d = power_sum(&d, 1, Carrier::D).unwrap();
        let p1m = power_sum(&d, 1, Carrier::M).unwrap();
        let v = d.act(&p1d, &p1m).unwrap();
        assert_eq!(v.max_m_degree(), 0);
        assert!(!v.is_zero());
        let p2d = power_sum(&d, 2, Carrier::D).unwrap();
        assert!(d.act(&p2d, &p1m).unwrap().is_zero());
    }

    #[test]
    fn classical_laplace_counts_dimension() {
        let mode = QMode::classical();
        let sym = Symmetry::new(crate::tensor::flip(2), mode).unwrap();
        let d = Double::new(Arc::new(sym), Caps { m_degree: 2, d_degree: 2 }).unwrap();
        let v = d.act(&power_sum(&d, 1, Carrier::D).unwrap(), &power_sum(&d, 1, Carrier::M).unwrap()).unwrap();
        assert_eq!(v, SplitForm::constant(Scalar::from_int(2)));
    }

    #[test]
    fn laplacian_keeps_characteristic_span() {
        let d = exact2();
        let p1d = power_sum(&d, 1, Carrier::D).unwrap();
        let p2m = power_sum(&d, 2, Carrier::M).unwrap();
        let s = stability(&d, &p1d, &p2m).unwrap();
        assert!(s.holds(Some(1)), "{:?}", s.result);
    }
}
