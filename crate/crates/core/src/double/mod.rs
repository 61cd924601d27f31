//! The quantum double of `D(R⁻¹)` and `M(R)`: canonical split forms, the
//! counit action, and equality, centrality and membership decisions.

mod basis;
mod decide;
mod engine;

pub use basis::{symmetric_dimension, Coords, Level, QuotientBasis};
pub use decide::{Scope, Witness};
pub use engine::{Caps, Double, DoubleAlg, Flavour, SplitForm};

use crate::error::Result;
use crate::ncalg::OpMatrix;

/// Entrywise `X ▷ F` as a matrix product: `(X ▷ F)_{IJ} = Σ_K X_{IK} ▷ F_{KJ}`.
pub fn act_matrix(double: &Double, x: &OpMatrix<SplitForm>, f: &OpMatrix<SplitForm>) -> Result<OpMatrix<SplitForm>> {
    let alg = double.algebra(Flavour::Full);
    x.mul_with(f, &alg, |a, b| double.act(a, b))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::arith::{QMode, Scalar};
    use crate::ncalg::{relations, Calc, Gen, Kind, NcPoly, RelationKind};
    use crate::tensor::{dj_r_matrix, flip, Symmetry};

    fn double(n: usize, caps: Caps) -> Double {
        let mode = QMode::exact();
        let sym = Symmetry::new(dj_r_matrix(n, &mode), mode).unwrap();
        Double::new(Arc::new(sym), caps).unwrap()
    }

    fn small() -> Caps {
        Caps { m_degree: 3, d_degree: 3 }
    }

    #[test]
    fn one_generator_rule() {
        let d = double(1, small());
        let mode = QMode::exact();
        let (alpha, beta) = d.rule(0, 0);
        assert_eq!(alpha.len(), 1);
        assert_eq!(alpha[0].2, mode.q_pow(-2));
        assert_eq!(*beta, mode.q_pow(-1));
        let s = d.reorder_normal(&NcPoly::gen(Gen::d(0, 0)).mul(&NcPoly::gen(Gen::m(0, 0)))).unwrap();
        assert_eq!(s.counit_project(), SplitForm::constant(mode.q_pow(-1)));
    }

    #[test]
    fn classical_flip_gives_heisenberg() {
        let mode = QMode::classical();
        let sym = Symmetry::new(flip(2), mode).unwrap();
        let d = Double::new(Arc::new(sym), small()).unwrap();
        for (i, j, k, s) in itertools(2) {
            let lhs = NcPoly::gen(Gen::d(i, j)).mul(&NcPoly::gen(Gen::m(k, s)));
            let mut rhs = NcPoly::gen(Gen::m(k, s)).mul(&NcPoly::gen(Gen::d(i, j)));
            if i == s && k == j {
                rhs.add_scaled(&NcPoly::constant(Scalar::one()), &Scalar::one());
            }
            assert!(d.alg_equal(&lhs, &rhs).unwrap(), "{i}{j}{k}{s}");
        }
    }

    fn itertools(n: usize) -> Vec<(usize, usize, usize, usize)> {
        let mut v = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for s in 0..n {
                        v.push((i, j, k, s));
                    }
                }
            }
        }
        v
    }

    #[test]
    fn derivative_of_a_copy() {
        let d = double(2, small());
        let alg = d.algebra(Flavour::Full);
        let calc = Calc::new(&alg, d.sym());
        let d1 = calc.first(Kind::Del, 2).unwrap();
        let m2 = calc.m_copy(2, 2).unwrap();
        let acted = act_matrix(&d, &d1, &m2).unwrap();
        let want = calc.op(&d.sym().r_inv_at(1, 2));
        assert_eq!(d.matrix_witness(&acted, &want).unwrap(), None);
    }

    #[test]
    fn derivative_of_two_copies() {
        let d = double(2, small());
        let alg = d.algebra(Flavour::Full);
        let calc = Calc::new(&alg, d.sym());
        let sym = d.sym();
        let d1 = calc.first(Kind::Del, 3).unwrap();
        let m2 = calc.m_copy(2, 3).unwrap();
        let m3 = calc.m_copy(3, 3).unwrap();
        let acted = act_matrix(&d, &d1, &calc.mul(&m2, &m3).unwrap()).unwrap();
        let r1 = sym.r_inv_at(1, 3);
        let r2 = sym.r_inv_at(2, 3);
        let tail = &(&*r1 * &*r2) * &*r1;
        let want = calc.add(&calc.rmul(&m3, &r1).unwrap(), &calc.rmul(&m2, &tail).unwrap()).unwrap();
        assert_eq!(d.matrix_witness(&acted, &want).unwrap(), None);
    }

    #[test]
    fn entrywise_action_is_b() {
        let d = double(2, small());
        let b = &d.sym().skew().b;
        for (i, j, k, s) in itertools(2) {
            let got = d.act(&d.generator(Gen::d(i, j)), &d.generator(Gen::m(k, s))).unwrap();
            let want = if i == s { b.get(k, j) } else { Scalar::zero() };
            assert_eq!(got, SplitForm::constant(want));
        }
    }

    #[test]
    fn flat_through_degree_four() {
        let d = double(2, Caps::default());
        for t in 0..=4 {
            assert_eq!(d.m_basis().dim(t).unwrap(), symmetric_dimension(2, t));
            assert_eq!(d.d_basis().dim(t).unwrap(), symmetric_dimension(2, t));
        }
    }

    #[test]
    fn ideals_are_stable_under_crossing() {
        let d = double(2, small());
        let re_m = relations(RelationKind::ReM, d.sym()).unwrap();
        let re_d = relations(RelationKind::ReD, d.sym()).unwrap();
        for flavour in [Flavour::Full, Flavour::Ordered] {
            for y in 0..4 {
                for rel in &re_m.relations {
                    let p = NcPoly::gen(Gen::from_letter(Kind::Del, y, 2)).mul(rel);
                    assert!(d.reorder(&p, flavour).unwrap().is_zero());
                }
            }
            for x in 0..4 {
                for rel in &re_d.relations {
                    assert!(d.d_relation_times_m(flavour, rel, x).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn action_is_a_representation() {
        let d = double(2, small());
        let f = d.reorder_normal(&NcPoly::gen(Gen::m(0, 1)).mul(&NcPoly::gen(Gen::m(1, 1))).mul(&NcPoly::gen(Gen::m(1, 0)))).unwrap();
        let x = d.generator(Gen::d(1, 0));
        let y = d.generator(Gen::d(0, 1));
        let xy = d.mul(Flavour::Full, &x, &y).unwrap();
        let lhs = d.act(&xy, &f).unwrap();
        let rhs = d.act(&x, &d.act(&y, &f).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert!(!lhs.is_zero());
    }

    #[test]
    fn too_many_derivatives_annihilate() {
        let d = double(2, small());
        let alg = d.algebra(Flavour::Full);
        let calc = Calc::new(&alg, d.sym());
        let dd = calc.d_chain(2, 2).unwrap();
        let m = calc.first(Kind::M, 2).unwrap();
        assert!(act_matrix(&d, &dd, &m).unwrap().is_zero(&alg));
    }

    #[test]
    fn wick_at_one_step() {
        let d = double(2, small());
        let full = d.algebra(Flavour::Full);
        let ord = d.algebra(Flavour::Ordered);
        let cf = Calc::new(&full, d.sym());
        let co = Calc::new(&ord, d.sym());
        let lhs = cf.mul(&cf.l_copy(1, 2).unwrap(), &cf.l_copy(2, 2).unwrap()).unwrap();
        let normal = co.mul(&co.l_copy(1, 2).unwrap(), &co.l_copy(2, 2).unwrap()).unwrap();
        let rhs = cf.add(&normal, &cf.rmul(&cf.l_copy(1, 2).unwrap(), &d.sym().r_inv_at(1, 2)).unwrap()).unwrap();
        assert_eq!(d.matrix_witness(&lhs, &rhs).unwrap(), None);
        let closed = cf
            .rmul(&cf.product(&[cf.m_copy(1, 2).unwrap(), cf.m_copy(2, 2).unwrap(), cf.d_copy(2, 2).unwrap(), cf.d_copy(1, 2).unwrap()]).unwrap(), &{
                let r = d.sym().r_inv_at(1, 2);
                &*r * &*r
            })
            .unwrap();
        assert_eq!(d.matrix_witness(&normal, &closed).unwrap(), None);
    }

    #[test]
    fn caps_are_reported() {
        let d = double(2, Caps { m_degree: 1, d_degree: 1 });
        let m = d.generator(Gen::m(0, 0));
        assert!(d.mul(Flavour::Full, &m, &m).is_err());
    }
}
