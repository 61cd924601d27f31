use std::sync::{Arc, RwLock};

use dashmap::DashMap;

use crate::arith::Scalar;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::ncalg::{Kind, NcPoly};

/// Coordinates in a quotient level: `(basis index, coefficient)`.
pub type Coords = Vec<(u32, Scalar)>;

/// One homogeneous component of the quotient.
#[derive(Debug)]
pub struct Level {
    pub dim: usize,
    /// Basis element `b` is the image of `parent(b)·letter`.
    pub parent: Vec<(u32, u16)>,
    pub reps: Vec<Vec<u16>>,
    /// `from_below[b·L + x]`: coordinates of `b·x` for `b` in the level below.
    pub from_below: Vec<Coords>,
}

/// A quadratic relation `Σ c_xy · x y` over letter indices.
pub type Quadratic = Vec<(u16, u16, Scalar)>;

/// Graded basis of the quotient of the free algebra on `N²` letters by a
/// quadratic ideal, built level by level.
///
/// Level `d` is the cokernel of `span{u·r : u ∈ basis_{d-2}, r a relation}`
/// inside `basis_{d-1} ⊗ letters`, which is the degree-`d` quotient because
/// `I_d = I_{d-1}·V + T_{d-2}·span(r)`.
pub struct QuotientBasis {
    tag: Kind,
    letters: usize,
    relations: Vec<Quadratic>,
    cap: usize,
    levels: RwLock<Vec<Arc<Level>>>,
    products: DashMap<(u8, u32, u8, u32), Arc<Coords>>,
}

impl std::fmt::Debug for QuotientBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("QuotientBasis")
            .field("tag", &self.tag)
            .field("letters", &self.letters)
            .field("relations", &self.relations.len())
            .field("cap", &self.cap)
            .finish()
    }
}

impl QuotientBasis {
    pub fn new(tag: Kind, n: usize, relations: &[NcPoly], cap: usize) -> Result<Self> {
        let mut quad = Vec::with_capacity(relations.len());
        for rel in relations {
            let mut q = Vec::new();
            for (w, c) in rel.terms() {
                if w.len() != 2 || w.iter().any(|g| g.kind != tag) {
                    return Err(Error::Invalid(format!("relation {rel} is not quadratic in {tag:?}")));
                }
                q.push((w[0].letter(n) as u16, w[1].letter(n) as u16, c.clone()));
            }
            quad.push(q);
        }
        let ground = Level { dim: 1, parent: vec![(0, 0)], reps: vec![Vec::new()], from_below: Vec::new() };
        Ok(QuotientBasis {
            tag,
            letters: n * n,
            relations: quad,
            cap,
            levels: RwLock::new(vec![Arc::new(ground)]),
            products: DashMap::new(),
        })
    }

    pub fn tag(&self) -> Kind {
        self.tag
    }

    pub fn letters(&self) -> usize {
        self.letters
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn level(&self, d: usize) -> Result<Arc<Level>> {
        if let Some(l) = self.levels.read().expect("level lock").get(d) {
            return Ok(l.clone());
        }
        if d > self.cap {
            let what = match self.tag {
                Kind::M => "m",
                Kind::Del => "∂",
            };
            return Err(Error::CapExceeded { what, degree: d, cap: self.cap });
        }
        let prev = self.level(d - 1)?;
        let prev2 = if d >= 2 { Some(self.level(d - 2)?) } else { None };
        let built = Arc::new(self.build(&prev, prev2.as_deref()));
        let mut levels = self.levels.write().expect("level lock");
        if levels.len() == d {
            levels.push(built);
        }
        Ok(levels[d].clone())
    }

    fn build(&self, prev: &Level, prev2: Option<&Level>) -> Level {
        let l = self.letters;
        let ncols = prev.dim * l;
        let mut ech = Echelon::new(ncols);
        if let Some(p2) = prev2 {
            for u in 0..p2.dim {
                for rel in &self.relations {
                    let mut pairs = Vec::new();
                    for (x, y, c) in rel {
                        for (b, v) in &prev.from_below[u * l + *x as usize] {
                            pairs.push((*b as usize * l + *y as usize, c * v));
                        }
                    }
                    let row = SparseVec::from_pairs(pairs);
                    if !row.is_zero() {
                        ech.insert(&row);
                    }
                }
            }
        }
        let free = ech.free_columns();
        let mut index = vec![u32::MAX; ncols];
        for (i, &c) in free.iter().enumerate() {
            index[c] = i as u32;
        }
        let mut from_below = Vec::with_capacity(ncols);
        for col in 0..ncols {
            if index[col] != u32::MAX {
                from_below.push(vec![(index[col], Scalar::one())]);
            } else {
                let red = ech.reduce(&SparseVec::unit(col));
                from_below.push(red.iter().map(|(c, v)| (index[*c], v.clone())).collect());
            }
        }
        let parent: Vec<(u32, u16)> = free.iter().map(|&c| ((c / l) as u32, (c % l) as u16)).collect();
        let reps = parent
            .iter()
            .map(|&(b, x)| {
                let mut w = prev.reps[b as usize].clone();
                w.push(x);
                w
            })
            .collect();
        Level { dim: free.len(), parent, reps, from_below }
    }

    pub fn dim(&self, d: usize) -> Result<usize> {
        Ok(self.level(d)?.dim)
    }

    /// Coordinates of `basis_d[b] · x` in level `d + 1`.
    pub fn times_letter(&self, d: usize, b: usize, x: usize) -> Result<Coords> {
        Ok(self.level(d + 1)?.from_below[b * self.letters + x].clone())
    }

    /// Coordinates of an arbitrary word.
    pub fn reduce_word(&self, word: &[u16]) -> Result<Coords> {
        let mut cur: Coords = vec![(0, Scalar::one())];
        for (d, &x) in word.iter().enumerate() {
            let next = self.level(d + 1)?;
            let mut acc: Vec<(usize, Scalar)> = Vec::new();
            for (b, c) in &cur {
                for (f, v) in &next.from_below[*b as usize * self.letters + x as usize] {
                    acc.push((*f as usize, c * v));
                }
            }
            cur = SparseVec::from_pairs(acc).iter().map(|(i, v)| (*i as u32, v.clone())).collect();
        }
        Ok(cur)
    }

    /// Coordinates of `basis_da[a] · basis_db[b]`, memoized.
    pub fn mul_basis(&self, da: usize, a: usize, db: usize, b: usize) -> Result<Arc<Coords>> {
        let key = (da as u8, a as u32, db as u8, b as u32);
        if let Some(hit) = self.products.get(&key) {
            return Ok(hit.clone());
        }
        let rep = self.level(db)?.reps[b].clone();
        let mut cur: Coords = vec![(a as u32, Scalar::one())];
        for (t, &x) in rep.iter().enumerate() {
            let next = self.level(da + t + 1)?;
            let mut acc: Vec<(usize, Scalar)> = Vec::new();
            for (i, c) in &cur {
                for (f, v) in &next.from_below[*i as usize * self.letters + x as usize] {
                    acc.push((*f as usize, c * v));
                }
            }
            cur = SparseVec::from_pairs(acc).iter().map(|(i, v)| (*i as u32, v.clone())).collect();
        }
        let out = Arc::new(cur);
        self.products.insert(key, out.clone());
        Ok(out)
    }

    pub fn rep(&self, d: usize, b: usize) -> Result<Vec<u16>> {
        Ok(self.level(d)?.reps[b].clone())
    }
}

/// `binom(N² + d - 1, d)`, the dimension of `Sym^d(gl(N))`.
pub fn symmetric_dimension(n: usize, d: usize) -> usize {
    let top = n * n + d - 1;
    let mut acc: u128 = 1;
    for i in 0..d {
        acc = acc * (top - i) as u128 / (i as u128 + 1);
    }
    acc as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::QMode;
    use crate::ncalg::{relations, RelationKind};
    use crate::tensor::{dj_r_matrix, Symmetry};

    fn basis(n: usize, kind: RelationKind) -> QuotientBasis {
        let mode = QMode::exact();
        let sym = Symmetry::new(dj_r_matrix(n, &mode), mode).unwrap();
        let rels = relations(kind, &sym).unwrap();
        let tag = if kind == RelationKind::ReM { Kind::M } else { Kind::Del };
        QuotientBasis::new(tag, n, &rels.relations, 4).unwrap()
    }

    #[test]
    fn symmetric_dimensions() {
        assert_eq!(symmetric_dimension(2, 2), 10);
        assert_eq!(symmetric_dimension(2, 4), 35);
        assert_eq!(symmetric_dimension(1, 7), 1);
        assert_eq!(symmetric_dimension(3, 0), 1);
    }

    #[test]
    fn degree_two_for_n_two() {
        let b = basis(2, RelationKind::ReM);
        assert_eq!(b.dim(1).unwrap(), 4);
        assert_eq!(b.dim(2).unwrap(), 10);
        // the relation span in the 16 quadratic words is 6-dimensional
        let words = 16 - b.dim(2).unwrap();
        assert_eq!(words, 6);
    }

    #[test]
    fn one_generator_is_commutative() {
        let b = basis(1, RelationKind::ReM);
        for d in 0..=4 {
            assert_eq!(b.dim(d).unwrap(), 1);
        }
    }

    #[test]
    fn relations_reduce_to_zero() {
        let b = basis(2, RelationKind::ReD);
        for rel in &b.relations {
            let mut acc: Vec<(usize, Scalar)> = Vec::new();
            for (x, y, c) in rel {
                for (f, v) in b.reduce_word(&[*x, *y]).unwrap() {
                    acc.push((f as usize, c * &v));
                }
            }
            assert!(SparseVec::from_pairs(acc).is_zero());
        }
    }

    #[test]
    fn products_agree_with_word_reduction() {
        let b = basis(2, RelationKind::ReM);
        let w1 = [3u16, 0];
        let w2 = [1u16, 2];
        let a = b.reduce_word(&w1).unwrap();
        let full = b.reduce_word(&[3, 0, 1, 2]).unwrap();
        let mut acc: Vec<(usize, Scalar)> = Vec::new();
        let bb = b.reduce_word(&w2).unwrap();
        for (i, c) in &a {
            for (j, d) in &bb {
                for (f, v) in b.mul_basis(2, *i as usize, 2, *j as usize).unwrap().iter() {
                    acc.push((*f as usize, &(c * d) * v));
                }
            }
        }
        let lhs = SparseVec::from_pairs(acc);
        let rhs = SparseVec::from_pairs(full.into_iter().map(|(i, v)| (i as usize, v)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn cap_is_enforced() {
        let b = basis(2, RelationKind::ReM);
        assert!(matches!(b.level(5), Err(Error::CapExceeded { .. })));
    }
}
