//! The Hecke algebra `H_n(q)` in the `T_w` basis, Jucys–Murphy elements,
//! standard tableaux and primitive idempotents, and the representation
//! `τ_i ↦ R_i`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::LazyLock;

use dashmap::DashMap;

use crate::arith::{ArithError, QMode, Rational, Scalar};
use crate::error::{Error, Result};
use crate::tensor::{Symmetry, TensorOp};

/// A permutation of `0..n` in one-line notation.
pub type Perm = Vec<u8>;

pub fn identity_perm(n: usize) -> Perm {
    (0..n as u8).collect()
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_perms(n: usize) -> Vec<Perm> {
    fn rec(prefix: &mut Perm, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v as u8);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// A reduced word `[i_1, …, i_l]` (1-based generators) with `T_w = τ_{i_1} … τ_{i_l}`.
pub fn reduced_word(w: &[u8]) -> Vec<usize> {
    let mut w = w.to_vec();
    let mut rev = Vec::new();
    while let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) {
        w.swap(i, i + 1);
        rev.push(i + 1);
    }
    rev.reverse();
    rev
}

/// Element of `H_n(q)` as a combination of the basis `T_w`.
#[derive(Clone, PartialEq)]
pub struct HeckeElement {
    n: usize,
    terms: BTreeMap<Perm, Scalar>,
}

impl HeckeElement {
    pub fn zero(n: usize) -> Self {
        HeckeElement { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::basis(identity_perm(n))
    }

    pub fn basis(w: Perm) -> Self {
        let n = w.len();
        let mut terms = BTreeMap::new();
        terms.insert(w, Scalar::one());
        HeckeElement { n, terms }
    }

    /// `τ_i`, 1-based.
    pub fn generator(i: usize, n: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange(format!("τ_{i} in H_{n}")));
        }
        let mut w = identity_perm(n);
        w.swap(i - 1, i);
        Ok(Self::basis(w))
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Perm, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &[u8]) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, w: Perm, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_degree(&self, other: &HeckeElement) -> Result<()> {
        if self.n != other.n {
            return Err(Error::ShapeMismatch(format!("H_{} vs H_{}", self.n, other.n)));
        }
        Ok(())
    }

    pub fn add(&self, other: &HeckeElement) -> Result<HeckeElement> {
        self.check_degree(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &HeckeElement) -> Result<HeckeElement> {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> HeckeElement {
        let mut out = HeckeElement::zero(self.n);
        for (w, v) in &self.terms {
            out.add_term(w.clone(), v * c);
        }
        out
    }

    /// Right multiplication by `τ_i` (1-based).
    pub fn mul_generator(&self, i: usize, mode: &QMode) -> HeckeElement {
        let gap = mode.gap();
        let mut out = HeckeElement::zero(self.n);
        for (w, c) in &self.terms {
            let mut ws = w.clone();
            ws.swap(i - 1, i);
            if w[i - 1] < w[i] {
                out.add_term(ws, c.clone());
            } else {
                out.add_term(ws, c.clone());
                out.add_term(w.clone(), c * &gap);
            }
        }
        out
    }

    pub fn mul(&self, other: &HeckeElement, mode: &QMode) -> Result<HeckeElement> {
        self.check_degree(other)?;
        let mut out = HeckeElement::zero(self.n);
        for (w, c) in &other.terms {
            let mut acc = self.clone();
            for i in reduced_word(w) {
                acc = acc.mul_generator(i, mode);
            }
            for (u, v) in acc.terms {
                out.add_term(u, &v * c);
            }
        }
        Ok(out)
    }

    /// The same element viewed in `H_m(q)`, `m ≥ n`.
    pub fn extend(&self, m: usize) -> HeckeElement {
        assert!(m >= self.n);
        let mut out = HeckeElement::zero(m);
        for (w, c) in &self.terms {
            let mut u = w.clone();
            u.extend(self.n as u8..m as u8);
            out.add_term(u, c.clone());
        }
        out
    }
}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let word = reduced_word(w);
                let name = if word.is_empty() {
                    "1".to_string()
                } else {
                    word.iter().map(|i| format!("τ{i}")).collect::<Vec<_>>().join("")
                };
                format!("({c:?}){name}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `j_1 = 1`, `j_r = τ_{r-1} j_{r-1} τ_{r-1}` in `H_n(q)`.
pub fn jm_element(r: usize, n: usize, mode: &QMode) -> Result<HeckeElement> {
    if r == 0 || r > n {
        return Err(Error::IndexOutOfRange(format!("j_{r} in H_{n}")));
    }
    let mut j = HeckeElement::one(n);
    for s in 2..=r {
        let t = HeckeElement::generator(s - 1, n)?;
        j = t.mul(&j, mode)?.mul_generator(s - 1, mode);
    }
    Ok(j)
}

/// `τ_{k-1} τ_{k-2} … τ_1`
pub fn coxeter_element(k: usize, mode: &QMode) -> HeckeElement {
    let mut acc = HeckeElement::one(k);
    for i in (1..k).rev() {
        acc = acc.mul_generator(i, mode);
    }
    acc
}

/// `ρ_R(z)` on `k` sites.
pub fn rho_r(z: &HeckeElement, sym: &Symmetry, k: usize) -> Result<TensorOp> {
    rho_shifted(z, sym, 0, k)
}

/// `ρ_R^{↑n}(z)`: `τ_i ↦ R_{n+i}`.
pub fn rho_shifted(z: &HeckeElement, sym: &Symmetry, shift: usize, k: usize) -> Result<TensorOp> {
    if z.degree() + shift > k {
        return Err(Error::IndexOutOfRange(format!(
            "element of H_{} shifted by {shift} does not fit on {k} sites",
            z.degree()
        )));
    }
    sym.check_sites(k)?;
    let mut acc = TensorOp::zeros(sym.n(), k);
    for (w, c) in z.terms() {
        let mut t = sym.identity(k);
        for i in reduced_word(w) {
            t = &t * &sym.r_at(i + shift, k);
        }
        acc = &acc + &t.scale(c);
    }
    Ok(acc)
}

/// A partition, parts weakly decreasing and positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        parts.retain(|&p| p > 0);
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!("parts {parts:?} are not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    /// Every partition of `n`, largest first part first.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(prefix.clone()));
                return;
            }
            for p in (1..=n.min(max)).rev() {
                prefix.push(p);
                rec(n - p, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// Contents `col - row` of the cells that can be added.
    pub fn addable_contents(&self) -> Vec<i32> {
        let mut out = Vec::new();
        for (r, &len) in self.0.iter().enumerate() {
            if r == 0 || self.0[r - 1] > len {
                out.push(len as i32 - r as i32);
            }
        }
        out.push(-(self.0.len() as i32));
        out
    }

    /// Parses `2,1`.
    pub fn parse(src: &str) -> Result<Self> {
        let parts = src
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|e| Error::Invalid(format!("partition `{src}`: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Standard Young tableau, rows of 1-based entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StdTableau {
    rows: Vec<Vec<usize>>,
}

impl StdTableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let t = StdTableau { rows };
        let n = t.size();
        let shape: Vec<usize> = t.rows.iter().map(|r| r.len()).collect();
        Partition::new(shape.clone())?;
        if shape.contains(&0) {
            return Err(Error::Invalid("empty tableau row".into()));
        }
        let mut seen = vec![false; n + 1];
        for (r, row) in t.rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v == 0 || v > n || seen[v] {
                    return Err(Error::Invalid(format!("filling {:?} is not a bijection onto 1..{n}", t.rows)));
                }
                seen[v] = true;
                if c > 0 && row[c - 1] >= v {
                    return Err(Error::Invalid(format!("row {} is not increasing", r + 1)));
                }
                if r > 0 && t.rows[r - 1][c] >= v {
                    return Err(Error::Invalid(format!("column {} is not increasing", c + 1)));
                }
            }
        }
        Ok(t)
    }

    /// Parses row-major fillings such as `1,2;3`.
    pub fn parse(src: &str) -> Result<Self> {
        let rows = src
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|v| v.trim().parse::<usize>().map_err(|e| Error::Invalid(format!("tableau `{src}`: {e}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        StdTableau::new(rows)
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn shape(&self) -> Partition {
        Partition(self.rows.iter().map(|r| r.len()).collect())
    }

    /// `c_s(T)` for `s = 1..n`.
    pub fn contents(&self) -> Vec<i32> {
        let mut c = vec![0; self.size()];
        for (r, row) in self.rows.iter().enumerate() {
            for (col, &v) in row.iter().enumerate() {
                c[v - 1] = col as i32 - r as i32;
            }
        }
        c
    }

    /// The tableau with the largest entry removed.
    pub fn parent(&self) -> StdTableau {
        let n = self.size();
        let mut rows = self.rows.clone();
        for row in rows.iter_mut() {
            row.retain(|&v| v != n);
        }
        rows.retain(|r| !r.is_empty());
        StdTableau { rows }
    }

    /// All standard tableaux of a shape.
    pub fn all(shape: &Partition) -> Vec<StdTableau> {
        fn rec(shape: &[usize], n: usize) -> Vec<Vec<Vec<usize>>> {
            if n == 0 {
                return vec![vec![Vec::new(); shape.len()]];
            }
            let mut out = Vec::new();
            for r in 0..shape.len() {
                let removable = shape[r] > 0 && (r + 1 == shape.len() || shape[r + 1] < shape[r]);
                if !removable {
                    continue;
                }
                let mut smaller = shape.to_vec();
                smaller[r] -= 1;
                for mut t in rec(&smaller, n - 1) {
                    t[r].push(n);
                    out.push(t);
                }
            }
            out
        }
        let mut out: Vec<StdTableau> = rec(shape.parts(), shape.weight())
            .into_iter()
            .map(|rows| StdTableau { rows })
            .collect();
        out.sort_by(|a, b| a.rows.cmp(&b.rows));
        out
    }
}

impl fmt::Display for StdTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", rows.join(";"))
    }
}

static IDEMPOTENTS: LazyLock<DashMap<(StdTableau, QMode), HeckeElement>> = LazyLock::new(DashMap::new);

/// Primitive idempotent `e_T` by Jucys–Murphy interpolation:
/// `e_T = e_{T'} Π_{c ≠ c_n(T)} (j_n - q^{2c}) / (q^{2c_n(T)} - q^{2c})`, the product
/// over contents of the other cells addable to the shape of `T'`.
///
/// Normalized so that `j_s e_T = q^{2 c_s(T)} e_T`; memoized per tableau and mode.
pub fn primitive_idempotent(t: &StdTableau, mode: &QMode) -> Result<HeckeElement> {
    if !mode.is_generic() {
        return Err(Error::Arith(ArithError::RootOfUnity(mode.point().cloned().unwrap_or(Rational::ONE))));
    }
    let key = (t.clone(), mode.clone());
    if let Some(hit) = IDEMPOTENTS.get(&key) {
        return Ok(hit.clone());
    }
    let n = t.size();
    let e = if n <= 1 {
        HeckeElement::one(n)
    } else {
        let parent = t.parent();
        let mut e = primitive_idempotent(&parent, mode)?.extend(n);
        let cn = t.contents()[n - 1];
        let jn = jm_element(n, n, mode)?;
        let target = mode.q_pow(2 * cn);
        for c in parent.shape().addable_contents() {
            if c == cn {
                continue;
            }
            let qc = mode.q_pow(2 * c);
            let den = (&target - &qc).inv()?;
            let factor = jn.sub(&HeckeElement::one(n).scale(&qc))?.scale(&den);
            e = e.mul(&factor, mode)?;
        }
        e
    };
    IDEMPOTENTS.insert(key, e.clone());
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_scalar;
    use crate::tensor::dj_r_matrix;

    fn exact() -> QMode {
        QMode::exact()
    }

    #[test]
    fn quadratic_relation() {
        let m = exact();
        let t = HeckeElement::generator(1, 2).unwrap();
        let sq = t.mul(&t, &m).unwrap();
        let expect = HeckeElement::one(2).add(&t.scale(&m.gap())).unwrap();
        assert_eq!(sq, expect);
    }

    #[test]
    fn braid_relation_and_basis_size() {
        let m = exact();
        let t1 = HeckeElement::generator(1, 3).unwrap();
        let t2 = HeckeElement::generator(2, 3).unwrap();
        let a = t1.mul(&t2, &m).unwrap().mul(&t1, &m).unwrap();
        let b = t2.mul(&t1, &m).unwrap().mul(&t2, &m).unwrap();
        assert_eq!(a, b);
        assert_eq!(all_perms(3).len(), 6);
    }

    #[test]
    fn reduced_words_rebuild_the_permutation() {
        for w in all_perms(4) {
            let mut u = identity_perm(4);
            for i in reduced_word(&w) {
                u.swap(i - 1, i);
            }
            assert_eq!(u, w);
        }
    }

    #[test]
    fn second_jm_element() {
        let m = exact();
        let j2 = jm_element(2, 2, &m).unwrap();
        let t = HeckeElement::generator(1, 2).unwrap();
        assert_eq!(j2, HeckeElement::one(2).add(&t.scale(&m.gap())).unwrap());
    }

    #[test]
    fn jm_elements_commute() {
        let m = exact();
        for n in 3..=4 {
            for a in 1..=n {
                for b in a + 1..=n {
                    let ja = jm_element(a, n, &m).unwrap();
                    let jb = jm_element(b, n, &m).unwrap();
                    assert_eq!(ja.mul(&jb, &m).unwrap(), jb.mul(&ja, &m).unwrap());
                }
            }
        }
    }

    #[test]
    fn symmetrizer_in_degree_two() {
        let m = exact();
        let t = StdTableau::parse("1,2").unwrap();
        let e = primitive_idempotent(&t, &m).unwrap();
        let den = parse_scalar("1/(q + q^-1)", &m).unwrap();
        let expect = HeckeElement::one(2)
            .scale(&m.q_pow(-1))
            .add(&HeckeElement::generator(1, 2).unwrap())
            .unwrap()
            .scale(&den);
        assert_eq!(e, expect);
        assert_eq!(e.mul(&e, &m).unwrap(), e);
    }

    #[test]
    fn idempotent_family_is_complete_and_orthogonal() {
        let m = exact();
        for n in 1..=4 {
            let mut sum = HeckeElement::zero(n);
            let family: Vec<(StdTableau, HeckeElement)> = Partition::all(n)
                .iter()
                .flat_map(StdTableau::all)
                .map(|t| {
                    let e = primitive_idempotent(&t, &m).unwrap();
                    (t, e)
                })
                .collect();
            for (i, (t, e)) in family.iter().enumerate() {
                sum = sum.add(e).unwrap();
                assert_eq!(e.mul(e, &m).unwrap(), *e, "idempotent {t}");
                for (j, (_, f)) in family.iter().enumerate() {
                    if i != j {
                        assert!(e.mul(f, &m).unwrap().is_zero());
                    }
                }
                for (s, c) in t.contents().iter().enumerate() {
                    let js = jm_element(s + 1, n, &m).unwrap();
                    let expect = e.scale(&m.q_pow(2 * c));
                    assert_eq!(js.mul(e, &m).unwrap(), expect);
                    assert_eq!(e.mul(&js, &m).unwrap(), expect);
                }
            }
            assert_eq!(sum, HeckeElement::one(n), "n = {n}");
        }
    }

    #[test]
    fn hook_shape_jm_spectrum() {
        let m = exact();
        let shape = Partition::new(vec![2, 1]).unwrap();
        let tabs = StdTableau::all(&shape);
        assert_eq!(tabs.len(), 2);
        let j2 = jm_element(2, 3, &m).unwrap();
        let mut eig: Vec<Scalar> = Vec::new();
        for t in &tabs {
            let e = primitive_idempotent(t, &m).unwrap();
            let c2 = t.contents()[1];
            assert_eq!(j2.mul(&e, &m).unwrap(), e.scale(&m.q_pow(2 * c2)));
            eig.push(m.q_pow(2 * c2));
        }
        assert!(eig.contains(&m.q_pow(2)) && eig.contains(&m.q_pow(-2)));
    }

    #[test]
    fn classical_point_is_rejected() {
        let t = StdTableau::parse("1,2").unwrap();
        assert!(primitive_idempotent(&t, &QMode::classical()).is_err());
    }

    #[test]
    fn rho_is_a_homomorphism() {
        let m = QMode::specialized(Rational::new(3, 2)).unwrap();
        let sym = Symmetry::new(dj_r_matrix(2, &m), m.clone()).unwrap();
        let perms = all_perms(3);
        let a = HeckeElement::basis(perms[3].clone()).add(&HeckeElement::basis(perms[1].clone()).scale(&Scalar::from_int(2))).unwrap();
        let b = HeckeElement::basis(perms[5].clone()).add(&HeckeElement::one(3).scale(&m.q())).unwrap();
        let ab = a.mul(&b, &m).unwrap();
        let lhs = rho_r(&ab, &sym, 3).unwrap();
        let rhs = &rho_r(&a, &sym, 3).unwrap() * &rho_r(&b, &sym, 3).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(rho_r(&HeckeElement::one(3), &sym, 3).unwrap(), sym.identity(3));
    }

    #[test]
    fn rho_of_words_and_jm() {
        let m = exact();
        let sym = Symmetry::new(dj_r_matrix(2, &m), m.clone()).unwrap();
        let t12 = HeckeElement::generator(1, 3).unwrap().mul(&HeckeElement::generator(2, 3).unwrap(), &m).unwrap();
        assert_eq!(rho_r(&t12, &sym, 3).unwrap(), &*sym.r_at(1, 3) * &*sym.r_at(2, 3));
        assert_eq!(rho_r(&jm_element(3, 3, &m).unwrap(), &sym, 3).unwrap(), sym.jm(3, 3).unwrap());
        let cox = coxeter_element(3, &m);
        assert_eq!(rho_r(&cox, &sym, 3).unwrap(), &*sym.r_at(2, 3) * &*sym.r_at(1, 3));
    }

    #[test]
    fn symmetrizer_image_has_rank_three() {
        let m = exact();
        let sym = Symmetry::new(dj_r_matrix(2, &m), m.clone()).unwrap();
        let e = primitive_idempotent(&StdTableau::parse("1,2").unwrap(), &m).unwrap();
        let img = rho_r(&e, &sym, 2).unwrap();
        assert_eq!(&img * &img, img);
        assert_eq!(img.rank(), 3);
    }

    #[test]
    fn tableau_parsing_and_validation() {
        let t = StdTableau::parse("1,2;3").unwrap();
        assert_eq!(t.contents(), vec![0, 1, -1]);
        assert!(StdTableau::parse("2,1;3").is_err());
        assert!(StdTableau::parse("1,3;2,4").is_ok());
        assert_eq!(Partition::all(4).len(), 5);
        assert_eq!(StdTableau::all(&Partition::new(vec![2, 2]).unwrap()).len(), 2);
        assert_eq!(Partition::parse("2,1").unwrap().addable_contents(), vec![2, 0, -2]);
    }
}
