use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;
use rustc_hash::FxHashMap;

use super::basis::QuotientBasis;
use crate::arith::Scalar;
use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, SparseVec};
use crate::ncalg::{relations, Algebra, Gen, Kind, NcPoly, RelationKind, Word};
use crate::tensor::Symmetry;

/// Degree caps for the quotient bases.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub m_degree: usize,
    pub d_degree: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { m_degree: 4, d_degree: 4 }
    }
}

/// Which cross relations drive the reordering of `∂` past `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavour {
    /// `D₁RM₁R = RM₁R⁻¹D₁ + R`: products in the double.
    Full,
    /// The same without the constant: normal ordering `:…:`.
    Ordered,
}

impl Flavour {
    fn slot(self) -> usize {
        match self {
            Flavour::Full => 0,
            Flavour::Ordered => 1,
        }
    }
}

pub(crate) fn key(md: usize, mi: usize, dd: usize, di: usize) -> u64 {
    ((md as u64) << 56) | ((mi as u64) << 32) | ((dd as u64) << 24) | di as u64
}

pub(crate) fn unkey(k: u64) -> (usize, usize, usize, usize) {
    (
        (k >> 56) as usize,
        ((k >> 32) & 0xFF_FFFF) as usize,
        ((k >> 24) & 0xFF) as usize,
        (k & 0xFF_FFFF) as usize,
    )
}

/// An element of the double as `Σ c · m_a ∂_b` over quotient basis elements,
/// all `m` to the left of all `∂`.
#[derive(Clone, Default, PartialEq)]
pub struct SplitForm {
    terms: FxHashMap<u64, Scalar>,
}

impl SplitForm {
    pub fn zero() -> Self {
        SplitForm::default()
    }

    pub fn constant(c: Scalar) -> Self {
        let mut s = SplitForm::zero();
        s.add(key(0, 0, 0, 0), c);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add(&mut self, k: u64, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(k) {
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

    pub fn add_scaled(&mut self, other: &SplitForm, c: &Scalar) {
        for (k, v) in &other.terms {
            self.add(*k, v * c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> SplitForm {
        let mut out = SplitForm::zero();
        out.add_scaled(self, c);
        out
    }

    /// `(m-degree, m-index, ∂-degree, ∂-index, coefficient)` in key order.
    pub fn terms(&self) -> Vec<(usize, usize, usize, usize, Scalar)> {
        let mut keys: Vec<&u64> = self.terms.keys().collect();
        keys.sort();
        keys.into_iter()
            .map(|k| {
                let (a, b, c, d) = unkey(*k);
                (a, b, c, d, self.terms[k].clone())
            })
            .collect()
    }

    pub(crate) fn raw(&self) -> impl Iterator<Item = (u64, &Scalar)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn coeff(&self, md: usize, mi: usize, dd: usize, di: usize) -> Scalar {
        self.terms.get(&key(md, mi, dd, di)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn max_m_degree(&self) -> usize {
        self.terms.keys().map(|k| unkey(*k).0).max().unwrap_or(0)
    }

    pub fn max_d_degree(&self) -> usize {
        self.terms.keys().map(|k| unkey(*k).2).max().unwrap_or(0)
    }

    pub fn is_m_only(&self) -> bool {
        self.terms.keys().all(|k| unkey(*k).2 == 0)
    }

    /// Keeps the `∂`-degree 0 part: the counit applied on the right.
    pub fn counit_project(&self) -> SplitForm {
        SplitForm { terms: self.terms.iter().filter(|(k, _)| unkey(**k).2 == 0).map(|(k, v)| (*k, v.clone())).collect() }
    }

    /// Terms of the given `m`-degree.
    pub fn m_component(&self, d: usize) -> SplitForm {
        SplitForm { terms: self.terms.iter().filter(|(k, _)| unkey(**k).0 == d).map(|(k, v)| (*k, v.clone())).collect() }
    }

    fn retain_d_at_most(&mut self, r: usize) {
        self.terms.retain(|k, _| unkey(*k).2 <= r);
    }
}

impl fmt::Debug for SplitForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.terms().into_iter().map(|(a, b, c, d, v)| format!("({v})·m{a}.{b}·d{c}.{d}")).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

type Cross = Arc<Vec<(u64, Scalar)>>;

/// The quantum double `(D(R⁻¹), M(R))` with the cross relations solved for
/// `∂m` in terms of `m∂` and constants.
pub struct Double {
    sym: Arc<Symmetry>,
    n: usize,
    letters: usize,
    caps: Caps,
    m: QuotientBasis,
    d: QuotientBasis,
    /// `alpha[y·L + x]`: `∂_y m_x = Σ α m_{x'} ∂_{y'} + β`.
    alpha: Vec<Vec<(u16, u16, Scalar)>>,
    beta: Vec<Scalar>,
    cross: [DashMap<(u8, u32, u16), Cross>; 2],
}

impl fmt::Debug for Double {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Double").field("n", &self.n).field("caps", &self.caps).finish()
    }
}

impl Double {
    pub fn new(sym: Arc<Symmetry>, caps: Caps) -> Result<Self> {
        let n = sym.n();
        let letters = n * n;
        let re_m = relations(RelationKind::ReM, &sym)?;
        let re_d = relations(RelationKind::ReD, &sym)?;
        let perm = relations(RelationKind::Perm, &sym)?;
        let m = QuotientBasis::new(Kind::M, n, &re_m.relations, caps.m_degree)?;
        let d = QuotientBasis::new(Kind::Del, n, &re_d.relations, caps.d_degree)?;
        let (alpha, beta) = solve_rules(n, &perm.relations)?;
        Ok(Double { sym, n, letters, caps, m, d, alpha, beta, cross: [DashMap::new(), DashMap::new()] })
    }

    pub fn sym(&self) -> &Symmetry {
        &self.sym
    }

    pub fn sym_arc(&self) -> Arc<Symmetry> {
        self.sym.clone()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn m_basis(&self) -> &QuotientBasis {
        &self.m
    }

    pub fn d_basis(&self) -> &QuotientBasis {
        &self.d
    }

    pub fn algebra(&self, flavour: Flavour) -> DoubleAlg<'_> {
        DoubleAlg { double: self, flavour }
    }

    pub fn generator(&self, g: Gen) -> SplitForm {
        let mut s = SplitForm::zero();
        let x = g.letter(self.n);
        match g.kind {
            Kind::M => s.add(key(1, x, 0, 0), Scalar::one()),
            Kind::Del => s.add(key(0, 0, 1, x), Scalar::one()),
        }
        s
    }

    /// `∂_y m_x` rewritten, as `(x', y', α)` triples and the constant `β`.
    pub fn rule(&self, y: usize, x: usize) -> (&[(u16, u16, Scalar)], &Scalar) {
        (&self.alpha[y * self.letters + x], &self.beta[y * self.letters + x])
    }

    fn cap_m(&self, d: usize) -> Result<()> {
        if d > self.caps.m_degree {
            return Err(Error::CapExceeded { what: "m", degree: d, cap: self.caps.m_degree });
        }
        Ok(())
    }

    fn cap_d(&self, d: usize) -> Result<()> {
        if d > self.caps.d_degree {
            return Err(Error::CapExceeded { what: "∂", degree: d, cap: self.caps.d_degree });
        }
        Ok(())
    }

    /// Split form of `∂_b · m_x` for a `D`-basis element `b` of degree `p`.
    ///
    /// With `b = parent·y`, `∂_b m_x = ∂_parent (Σ α m_{x'} ∂_{y'} + β)`, and
    /// `∂_parent m_{x'}` is the same problem one degree lower.
    fn cross(&self, flavour: Flavour, p: usize, b: usize, x: usize) -> Result<Cross> {
        let slot = &self.cross[flavour.slot()];
        let ck = (p as u8, b as u32, x as u16);
        if let Some(hit) = slot.get(&ck) {
            return Ok(hit.clone());
        }
        let out: Vec<(u64, Scalar)> = if p == 0 {
            vec![(key(1, x, 0, 0), Scalar::one())]
        } else {
            let (parent, y) = self.d.level(p)?.parent[b];
            let (parent, y) = (parent as usize, y as usize);
            let mut acc = SplitForm::zero();
            for (x2, y2, a) in &self.alpha[y * self.letters + x] {
                let sub = self.cross(flavour, p - 1, parent, *x2 as usize)?;
                for (k, g) in sub.iter() {
                    let (md, mi, dd, di) = unkey(*k);
                    let up = self.d.level(dd + 1)?;
                    let ag = a * g;
                    for (h, v) in &up.from_below[di * self.letters + *y2 as usize] {
                        acc.add(key(md, mi, dd + 1, *h as usize), &ag * v);
                    }
                }
            }
            let beta = &self.beta[y * self.letters + x];
            if flavour == Flavour::Full && !beta.is_zero() {
                acc.add(key(0, 0, p - 1, parent), beta.clone());
            }
            let mut v: Vec<(u64, Scalar)> = acc.terms.into_iter().collect();
            v.sort_by_key(|(k, _)| *k);
            v
        };
        let out = Arc::new(out);
        slot.insert(ck, out.clone());
        Ok(out)
    }

    /// `a · m_x`
    pub fn mul_m_letter(&self, flavour: Flavour, a: &SplitForm, x: usize) -> Result<SplitForm> {
        let mut out = SplitForm::zero();
        for (k, c) in a.raw() {
            let (md, mi, dd, di) = unkey(k);
            self.cap_m(md + 1)?;
            let up = self.m.level(md + 1)?;
            if dd == 0 {
                for (f, v) in &up.from_below[mi * self.letters + x] {
                    out.add(key(md + 1, *f as usize, 0, 0), c * v);
                }
                continue;
            }
            let cr = self.cross(flavour, dd, di, x)?;
            for (k2, g) in cr.iter() {
                let (md2, mi2, dd2, di2) = unkey(*k2);
                let cg = c * g;
                if md2 == 0 {
                    out.add(key(md, mi, dd2, di2), cg);
                } else {
                    for (f, v) in &up.from_below[mi * self.letters + mi2] {
                        out.add(key(md + 1, *f as usize, dd2, di2), &cg * v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `a · ∂_y`
    pub fn mul_d_letter(&self, a: &SplitForm, y: usize) -> Result<SplitForm> {
        let mut out = SplitForm::zero();
        for (k, c) in a.raw() {
            let (md, mi, dd, di) = unkey(k);
            self.cap_d(dd + 1)?;
            let up = self.d.level(dd + 1)?;
            for (h, v) in &up.from_below[di * self.letters + y] {
                out.add(key(md, mi, dd + 1, *h as usize), c * v);
            }
        }
        Ok(out)
    }

    /// `a · m_c` for every `M`-basis element `c` requested, sharing prefixes.
    fn times_m_basis(
        &self,
        flavour: Flavour,
        a: &SplitForm,
        wanted: impl Iterator<Item = (usize, usize)>,
        prune_at: Option<usize>,
    ) -> Result<FxHashMap<(usize, usize), SplitForm>> {
        let mut memo: FxHashMap<(usize, usize), SplitForm> = FxHashMap::default();
        let mut base = a.clone();
        if let Some(top) = prune_at {
            base.retain_d_at_most(top);
        }
        memo.insert((0, 0), base);
        for (md, mi) in wanted {
            let mut chain = Vec::new();
            let (mut d, mut i) = (md, mi);
            while !memo.contains_key(&(d, i)) {
                let (p, x) = self.m.level(d)?.parent[i];
                chain.push((d, i, x as usize));
                d -= 1;
                i = p as usize;
            }
            while let Some((d2, i2, x)) = chain.pop() {
                let (pd, pi) = (d2 - 1, self.m.level(d2)?.parent[i2].0 as usize);
                let mut next = self.mul_m_letter(flavour, &memo[&(pd, pi)], x)?;
                if let Some(top) = prune_at {
                    next.retain_d_at_most(top.saturating_sub(d2));
                }
                memo.insert((d2, i2), next);
            }
        }
        Ok(memo)
    }

    pub fn mul(&self, flavour: Flavour, a: &SplitForm, b: &SplitForm) -> Result<SplitForm> {
        let mut out = SplitForm::zero();
        if a.is_zero() || b.is_zero() {
            return Ok(out);
        }
        let mut by_m: BTreeMap<(usize, usize), Vec<(usize, usize, Scalar)>> = BTreeMap::new();
        for (k, c) in b.raw() {
            let (md, mi, dd, di) = unkey(k);
            by_m.entry((md, mi)).or_default().push((dd, di, c.clone()));
        }
        let memo = self.times_m_basis(flavour, a, by_m.keys().copied(), None)?;
        for (mk, list) in &by_m {
            let am = &memo[mk];
            for (dd, di, coef) in list {
                if *dd == 0 {
                    out.add_scaled(am, coef);
                    continue;
                }
                for (k, g) in am.raw() {
                    let (m1d, m1i, d1d, d1i) = unkey(k);
                    self.cap_d(d1d + dd)?;
                    let prod = self.d.mul_basis(d1d, d1i, *dd, *di)?;
                    let cg = coef * g;
                    for (h, v) in prod.iter() {
                        out.add(key(m1d, m1i, d1d + dd, *h as usize), &cg * v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `x ▷ f = ε(x·f)` for `f` in `M(R)`.
    ///
    /// Each term `m_a ∂_b` of `x` acts as `m_a · ε(∂_b f)`, so the `m`-degree
    /// never exceeds that of the result; inside `∂_b f`, terms that cannot lose
    /// all their `∂` before the letters of `f` run out are dropped early.
    pub fn act(&self, x: &SplitForm, f: &SplitForm) -> Result<SplitForm> {
        if !f.is_m_only() {
            return Err(Error::Invalid("the action target must lie in M(R)".into()));
        }
        let mut out = SplitForm::zero();
        if x.is_zero() || f.is_zero() {
            return Ok(out);
        }
        let top = f.max_m_degree();
        let wanted: Vec<(usize, usize)> = f.raw().map(|(k, _)| (unkey(k).0, unkey(k).1)).collect();
        let mut by_d: BTreeMap<(usize, usize), Vec<(usize, usize, Scalar)>> = BTreeMap::new();
        for (k, c) in x.raw() {
            let (md, mi, dd, di) = unkey(k);
            by_d.entry((dd, di)).or_default().push((md, mi, c.clone()));
        }
        for ((dd, di), list) in by_d {
            if dd > top {
                continue;
            }
            let mut d_part = SplitForm::zero();
            d_part.add(key(0, 0, dd, di), Scalar::one());
            let memo = self.times_m_basis(Flavour::Full, &d_part, wanted.iter().copied(), Some(top))?;
            let mut g = SplitForm::zero();
            for (k, c) in f.raw() {
                let (md, mi, _, _) = unkey(k);
                g.add_scaled(&memo[&(md, mi)].counit_project(), c);
            }
            for (md, mi, c) in list {
                for (k, v) in g.raw() {
                    let (gd, gi, _, _) = unkey(k);
                    self.cap_m(md + gd)?;
                    let cv = &c * v;
                    for (h, w) in self.m.mul_basis(md, mi, gd, gi)?.iter() {
                        out.add(key(md + gd, *h as usize, 0, 0), &cv * w);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Canonical form of a word combination.
    pub fn reorder(&self, p: &NcPoly, flavour: Flavour) -> Result<SplitForm> {
        let mut out = SplitForm::zero();
        for (w, c) in p.terms() {
            let mut s = SplitForm::constant(c.clone());
            for g in w {
                let x = g.letter(self.n);
                s = match g.kind {
                    Kind::M => self.mul_m_letter(flavour, &s, x)?,
                    Kind::Del => self.mul_d_letter(&s, x)?,
                };
            }
            out.add_scaled(&s, &Scalar::one());
        }
        Ok(out)
    }

    /// Representative word of a basis pair, m-block then ∂-block.
    pub fn word_of(&self, md: usize, mi: usize, dd: usize, di: usize) -> Result<Word> {
        let mut w = Word::new();
        for x in self.m.rep(md, mi)? {
            w.push(Gen::from_letter(Kind::M, x as usize, self.n));
        }
        for y in self.d.rep(dd, di)? {
            w.push(Gen::from_letter(Kind::Del, y as usize, self.n));
        }
        Ok(w)
    }

    /// The split form written out with representative words.
    pub fn to_poly(&self, s: &SplitForm) -> Result<NcPoly> {
        let mut p = NcPoly::zero();
        for (md, mi, dd, di, c) in s.terms() {
            p.add_term(self.word_of(md, mi, dd, di)?, c);
        }
        Ok(p)
    }

    /// Embeds an element of `M(R)` given by coordinates at degree `d`.
    pub fn from_m_coords(&self, d: usize, coords: &[(u32, Scalar)]) -> SplitForm {
        let mut s = SplitForm::zero();
        for (i, c) in coords {
            s.add(key(d, *i as usize, 0, 0), c.clone());
        }
        s
    }

    /// `Σ c ∂_{y1} (∂_{y2} m_x)` for each quadratic `D` relation, with the inner
    /// product rewritten first so the relation is never reduced before crossing.
    pub fn d_relation_times_m(&self, flavour: Flavour, rel: &NcPoly, x: usize) -> Result<SplitForm> {
        let mut out = SplitForm::zero();
        for (w, c) in rel.terms() {
            if w.len() != 2 || w.iter().any(|g| g.kind != Kind::Del) {
                return Err(Error::Invalid(format!("{rel} is not a quadratic ∂ relation")));
            }
            let (y1, y2) = (w[0].letter(self.n), w[1].letter(self.n));
            let (alpha, beta) = self.rule(y2, x);
            let mut inner = SplitForm::zero();
            let left = self.generator(Gen::from_letter(Kind::Del, y1, self.n));
            for (x2, y3, a) in alpha {
                let t = self.mul_m_letter(flavour, &left, *x2 as usize)?;
                inner.add_scaled(&self.mul_d_letter(&t, *y3 as usize)?, a);
            }
            if flavour == Flavour::Full {
                inner.add_scaled(&left, beta);
            }
            out.add_scaled(&inner, c);
        }
        Ok(out)
    }
}

/// Solves the permutation relations for every `∂_y m_x`.
fn solve_rules(n: usize, perm: &[NcPoly]) -> Result<(Vec<Vec<(u16, u16, Scalar)>>, Vec<Scalar>)> {
    let l = n * n;
    let u = l * l;
    let mut a_rows = Vec::with_capacity(perm.len());
    let mut rhs_rows = Vec::with_capacity(perm.len());
    for rel in perm {
        let mut a = vec![Scalar::zero(); u];
        let mut rhs = vec![Scalar::zero(); u + 1];
        for (w, c) in rel.terms() {
            match w.as_slice() {
                [] => rhs[u] -= c,
                [g, h] if g.kind == Kind::Del && h.kind == Kind::M => a[g.letter(n) * l + h.letter(n)] += c,
                [g, h] if g.kind == Kind::M && h.kind == Kind::Del => rhs[g.letter(n) * l + h.letter(n)] -= c,
                _ => return Err(Error::Invalid(format!("unexpected word in permutation relation {rel}"))),
            }
        }
        a_rows.push(a);
        rhs_rows.push(rhs);
    }
    let mut ech = Echelon::new(u);
    let mut chosen = Vec::new();
    for (i, row) in a_rows.iter().enumerate() {
        if ech.insert(&SparseVec::from_dense(row)).is_some() {
            chosen.push(i);
        }
    }
    if chosen.len() < u {
        return Err(Error::SingularPermutation(format!("rank {} of {u}", chosen.len())));
    }
    let a_sel: Vec<Vec<Scalar>> = chosen.iter().map(|&i| a_rows[i].clone()).collect();
    let b_sel: Vec<Vec<Scalar>> = chosen.iter().map(|&i| rhs_rows[i].clone()).collect();
    let sol = linalg::solve_square(&a_sel, &b_sel).ok_or_else(|| Error::SingularPermutation("singular system".into()))?;
    for (a, rhs) in a_rows.iter().zip(&rhs_rows) {
        for col in 0..=u {
            let mut acc = Scalar::zero();
            for (j, aj) in a.iter().enumerate() {
                if !aj.is_zero() {
                    acc += &(aj * &sol[j][col]);
                }
            }
            if acc != rhs[col] {
                return Err(Error::SingularPermutation("the relations are inconsistent".into()));
            }
        }
    }
    let mut alpha = Vec::with_capacity(u);
    let mut beta = Vec::with_capacity(u);
    for row in &sol {
        let terms = (0..u)
            .filter(|&c| !row[c].is_zero())
            .map(|c| ((c / l) as u16, (c % l) as u16, row[c].clone()))
            .collect();
        alpha.push(terms);
        beta.push(row[u].clone());
    }
    Ok((alpha, beta))
}

/// The double as an entry algebra for matrices, in one flavour.
#[derive(Clone, Copy)]
pub struct DoubleAlg<'a> {
    pub double: &'a Double,
    pub flavour: Flavour,
}

impl Algebra for DoubleAlg<'_> {
    type Elem = SplitForm;

    fn zero(&self) -> SplitForm {
        SplitForm::zero()
    }

    fn is_zero(&self, x: &SplitForm) -> bool {
        x.is_zero()
    }

    fn constant(&self, c: &Scalar) -> SplitForm {
        SplitForm::constant(c.clone())
    }

    fn generator(&self, g: Gen) -> SplitForm {
        self.double.generator(g)
    }

    fn add_scaled(&self, acc: &mut SplitForm, x: &SplitForm, c: &Scalar) {
        acc.add_scaled(x, c);
    }

    fn mul(&self, a: &SplitForm, b: &SplitForm) -> Result<SplitForm> {
        self.double.mul(self.flavour, a, b)
    }
}
