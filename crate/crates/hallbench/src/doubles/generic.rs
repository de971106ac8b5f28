//! Heisenberg and Drinfeld doubles of a Hopf algebra given by structure
//! constants in a basis {e_i}, and the Kashaev embedding of the Drinfeld
//! double into the tensor product of the two Heisenberg doubles.
//!
//! e_i e_j = Σ m_{ij}^k e_k and Δe_k = Σ μ_k^{ij} e_i ⊗ e_j. Normal forms put
//! the dual factor first in HD (Z^a Z_c), the primal factor first in the
//! checked double ȞD (Ž_a Ž^c) and the dual factor first in DD (W^a W_c).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::finitary::{Category, KClass, ObjLabel, Window};
use crate::hallhopf::{basis, HallAlgebra, Key};
use crate::linalg;
use crate::report::Report;
use crate::scalars::{Rational, Scalar};

/// A Hopf algebra seen through its structure constants.
pub trait Structure {
    type Idx: Clone + Ord + Debug;
    fn q(&self) -> u64;
    /// (k, m_{ij}^k).
    fn mul(&self, i: &Self::Idx, j: &Self::Idx) -> Result<Vec<(Self::Idx, Scalar)>>;
    /// (i, j, μ_k^{ij}).
    fn comul(&self, k: &Self::Idx) -> Result<Vec<(Self::Idx, Self::Idx, Scalar)>>;
    /// (a, m_{ab}^k) for fixed k and b.
    fn left_factors(&self, k: &Self::Idx, b: &Self::Idx) -> Result<Vec<(Self::Idx, Scalar)>>;
    /// (c, m_{bc}^k) for fixed k and b.
    fn right_factors(&self, k: &Self::Idx, b: &Self::Idx) -> Result<Vec<(Self::Idx, Scalar)>>;
    /// (k, μ_k^{ij}): the product e^i e^j in the dual algebra.
    fn dual_mul(&self, i: &Self::Idx, j: &Self::Idx) -> Result<Vec<(Self::Idx, Scalar)>>;
}

/// Linear combination of two-letter normal-form words.
pub type Word<I> = BTreeMap<(I, I), Scalar>;

/// Element of HD ⊗ ȞD, both factors in normal form.
pub type Tens<I> = BTreeMap<((I, I), (I, I)), Scalar>;

pub(crate) fn add_to<K: Ord>(m: &mut BTreeMap<K, Scalar>, k: K, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match m.entry(k) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += &c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Z_i Z^j = Σ m^j_{ab} μ_i^{bc} Z^a Z_c.
pub fn hd_cross<S: Structure>(s: &S, i: &S::Idx, j: &S::Idx) -> Result<Word<S::Idx>> {
    let mut out = Word::new();
    for (b, c, mu) in s.comul(i)? {
        for (a, m) in s.left_factors(j, &b)? {
            add_to(&mut out, (a, c.clone()), &m * &mu);
        }
    }
    Ok(out)
}

/// Ž^i Ž_j = Σ μ_j^{ab} m^i_{bc} Ž_a Ž^c.
pub fn hdc_cross<S: Structure>(s: &S, i: &S::Idx, j: &S::Idx) -> Result<Word<S::Idx>> {
    let mut out = Word::new();
    for (a, b, mu) in s.comul(j)? {
        for (c, m) in s.right_factors(i, &b)? {
            add_to(&mut out, (a.clone(), c), &m * &mu);
        }
    }
    Ok(out)
}

/// (Z^a Z_c)(Z^b Z_d) in HD.
pub fn hd_mul<S: Structure>(s: &S, x: &Word<S::Idx>, y: &Word<S::Idx>) -> Result<Word<S::Idx>> {
    let mut out = Word::new();
    for ((a, c), cx) in x {
        for ((b, d), cy) in y {
            let cxy = cx * cy;
            for ((e, f), k) in hd_cross(s, c, b)? {
                let k = &cxy * &k;
                let left = s.dual_mul(a, &e)?;
                let right = s.mul(&f, d)?;
                for (g, k1) in &left {
                    for (h, k2) in &right {
                        add_to(&mut out, (g.clone(), h.clone()), &k * &(k1 * k2));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// (Ž_a Ž^c)(Ž_b Ž^d) in ȞD.
pub fn hdc_mul<S: Structure>(s: &S, x: &Word<S::Idx>, y: &Word<S::Idx>) -> Result<Word<S::Idx>> {
    let mut out = Word::new();
    for ((a, c), cx) in x {
        for ((b, d), cy) in y {
            let cxy = cx * cy;
            for ((e, f), k) in hdc_cross(s, c, b)? {
                let k = &cxy * &k;
                let left = s.mul(a, &e)?;
                let right = s.dual_mul(&f, d)?;
                for (g, k1) in &left {
                    for (h, k2) in &right {
                        add_to(&mut out, (g.clone(), h.clone()), &k * &(k1 * k2));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Componentwise product in HD ⊗ ȞD.
pub fn tens_mul<S: Structure>(s: &S, x: &Tens<S::Idx>, y: &Tens<S::Idx>) -> Result<Tens<S::Idx>> {
    let mut out = Tens::new();
    for ((l1, r1), c1) in x {
        for ((l2, r2), c2) in y {
            let left = hd_mul(s, &single(l1, s.q()), &single(l2, s.q()))?;
            let right = hdc_mul(s, &single(r1, s.q()), &single(r2, s.q()))?;
            let c = c1 * c2;
            for (kl, cl) in &left {
                for (kr, cr) in &right {
                    add_to(&mut out, (kl.clone(), kr.clone()), &c * &(cl * cr));
                }
            }
        }
    }
    Ok(out)
}

fn single<I: Clone + Ord>(k: &(I, I), q: u64) -> Word<I> {
    Word::from([(k.clone(), Scalar::one(q))])
}

fn tens_of<I: Clone + Ord>(l: &Word<I>, r: &Word<I>) -> Tens<I> {
    let mut out = Tens::new();
    for (kl, cl) in l {
        for (kr, cr) in r {
            add_to(&mut out, (kl.clone(), kr.clone()), cl * cr);
        }
    }
    out
}

fn tens_add<I: Clone + Ord>(acc: &mut Tens<I>, x: &Tens<I>, c: &Scalar) {
    for (k, v) in x {
        add_to(acc, k.clone(), c * v);
    }
}

/// Finite Hopf algebra stored as tables over indices 0..n.
#[derive(Clone, Debug)]
pub struct HopfData {
    pub q: u64,
    pub labels: Vec<Key>,
    pub grade: Vec<i64>,
    pub unit: usize,
    pub counit: Vec<Scalar>,
    pub max_grade: i64,
    mul: BTreeMap<(usize, usize), Vec<(usize, Scalar)>>,
    comul: Vec<Vec<(usize, usize, Scalar)>>,
    factors: Vec<Vec<(usize, usize, Scalar)>>,
    dual: BTreeMap<(usize, usize), Vec<(usize, Scalar)>>,
    pub antipode: Vec<Vec<(usize, Scalar)>>,
    pub inv_antipode: Vec<Vec<(usize, Scalar)>>,
}

impl Structure for HopfData {
    type Idx = usize;

    fn q(&self) -> u64 {
        self.q
    }

    fn mul(&self, i: &usize, j: &usize) -> Result<Vec<(usize, Scalar)>> {
        if self.grade[*i] + self.grade[*j] > self.max_grade {
            return Err(Error::WindowInsufficient(format!("product of grades {} and {} leaves the table", self.grade[*i], self.grade[*j])));
        }
        Ok(self.mul.get(&(*i, *j)).cloned().unwrap_or_default())
    }

    fn comul(&self, k: &usize) -> Result<Vec<(usize, usize, Scalar)>> {
        Ok(self.comul[*k].clone())
    }

    fn left_factors(&self, k: &usize, b: &usize) -> Result<Vec<(usize, Scalar)>> {
        Ok(self.factors[*k].iter().filter(|(_, j, _)| j == b).map(|(i, _, c)| (*i, c.clone())).collect())
    }

    fn right_factors(&self, k: &usize, b: &usize) -> Result<Vec<(usize, Scalar)>> {
        Ok(self.factors[*k].iter().filter(|(i, _, _)| i == b).map(|(_, j, c)| (*j, c.clone())).collect())
    }

    fn dual_mul(&self, i: &usize, j: &usize) -> Result<Vec<(usize, Scalar)>> {
        Ok(self.dual.get(&(*i, *j)).cloned().unwrap_or_default())
    }
}

fn reduce(k: &KClass, n: i64) -> KClass {
    KClass(k.0.iter().map(|x| x.rem_euclid(n)).collect())
}

impl HopfData {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    fn finish(&mut self) {
        self.dual.clear();
        for (k, row) in self.comul.iter().enumerate() {
            for (i, j, mu) in row {
                self.dual.entry((*i, *j)).or_default().push((k, mu.clone()));
            }
        }
        self.factors = vec![Vec::new(); self.labels.len()];
        for ((i, j), row) in &self.mul {
            for (k, m) in row {
                self.factors[*k].push((*i, *j, m.clone()));
            }
        }
    }

    /// A copy with one coproduct coefficient doubled, for negative controls.
    pub fn corrupted(&self) -> HopfData {
        let mut out = self.clone();
        let target = (0..out.len()).find_map(|k| {
            out.comul[k].iter().position(|(i, j, _)| out.grade[*i] > 0 && out.grade[*j] > 0).map(|p| (k, p))
        });
        if let Some((k, p)) = target {
            let two = Scalar::int(2, self.q);
            out.comul[k][p].2 = &out.comul[k][p].2 * &two;
        }
        out.finish();
        out
    }
}

/// Tables of the extended Hall algebra of `cat` restricted to `window`, with
/// Cartan symbols taken modulo `cartan_mod`. The window must be closed
/// under subobjects and the symmetric Euler form must vanish on it, so that
/// the quotient of the Cartan group is a Hopf quotient.
pub fn export_hopf_data(cat: &dyn Category, window: Window, cartan_mod: i64) -> Result<HopfData> {
    if cartan_mod < 1 {
        return Err(Error::Precondition("Cartan modulus must be positive".into()));
    }
    let q = cat.q();
    let alg = HallAlgebra::new(cat, window);
    let mut objects = Vec::new();
    for k in cat.window_classes(&window) {
        for a in cat.objects_of_class(&k, &window)? {
            if !cat.subquotients_complete(&a, &window) {
                return Err(Error::WindowInsufficient(format!("subobjects of {a} leave the window")));
            }
            objects.push((k.0.iter().map(|x| x.abs()).sum::<i64>(), k.clone(), a));
        }
    }
    objects.sort();
    let dim = cat.zero_class().0.len();
    for (_, k, a) in &objects {
        for e in 0..dim {
            let mut u = KClass::zero(dim);
            u.0[e] = 1;
            if cat.euler_chi(k, &u) + cat.euler_chi(&u, k) != 0 {
                return Err(Error::UnsupportedShape(format!("symmetric form is nontrivial on {a}; Cartan quotient is not a Hopf quotient")));
            }
        }
    }
    let mut cartans = BTreeSet::from([reduce(&cat.zero_class(), cartan_mod)]);
    loop {
        let mut next = cartans.clone();
        for c in &cartans {
            for (_, k, _) in &objects {
                next.insert(reduce(&(c + k), cartan_mod));
            }
        }
        if next.len() == cartans.len() {
            break;
        }
        cartans = next;
    }
    let mut labels = Vec::new();
    let mut grade = Vec::new();
    for (g, _, a) in &objects {
        for c in &cartans {
            labels.push((c.clone(), a.clone()));
            grade.push(*g);
        }
    }
    let index: BTreeMap<Key, usize> = labels.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    let find = |k: &KClass, a: &ObjLabel| -> Result<usize> {
        index.get(&(reduce(k, cartan_mod), a.clone())).copied().ok_or_else(|| Error::WindowInsufficient(format!("{a} leaves the table")))
    };
    let n = labels.len();
    let max_grade = grade.iter().copied().max().unwrap_or(0);
    let unit = find(&cat.zero_class(), &cat.zero_obj())?;
    let mut mul = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            if grade[i] + grade[j] > max_grade {
                continue;
            }
            let p = alg.b_mul(&basis(&labels[i], q), &basis(&labels[j], q))?;
            let row: Vec<(usize, Scalar)> = p.terms().map(|((k, a), c)| Ok((find(k, a)?, c.clone()))).collect::<Result<_>>()?;
            mul.insert((i, j), row);
        }
    }
    let mut comul = Vec::with_capacity(n);
    let mut counit = Vec::with_capacity(n);
    let mut antipode = Vec::with_capacity(n);
    for l in &labels {
        let b = basis(l, q);
        let d = alg.coproduct(&b)?;
        comul.push(d.terms().map(|(((k1, a1), (k2, a2)), c)| Ok((find(k1, a1)?, find(k2, a2)?, c.clone()))).collect::<Result<Vec<_>>>()?);
        counit.push(alg.counit(&b));
        let mut s: BTreeMap<usize, Scalar> = BTreeMap::new();
        for ((k, a), c) in alg.antipode(&b)?.terms() {
            add_to(&mut s, find(k, a)?, c.clone());
        }
        antipode.push(s.into_iter().collect::<Vec<_>>());
    }
    let mut smat = vec![vec![Scalar::zero(q); n]; n];
    for (c, col) in antipode.iter().enumerate() {
        for (r, v) in col {
            smat[*r][c] = v.clone();
        }
    }
    let mut inv_antipode = Vec::with_capacity(n);
    for i in 0..n {
        let mut rhs = vec![Scalar::zero(q); n];
        rhs[i] = Scalar::one(q);
        let x = linalg::solve(&smat, &rhs)?;
        inv_antipode.push(x.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect());
    }
    let mut out = HopfData {
        q,
        labels,
        grade,
        unit,
        counit,
        max_grade,
        mul,
        comul,
        factors: Vec::new(),
        dual: BTreeMap::new(),
        antipode,
        inv_antipode,
    };
    out.finish();
    Ok(out)
}

/// The Borel-type extended Hall algebra with its full Cartan group, as a
/// lazily evaluated structure. Every object it touches must have all its
/// subobjects inside the window.
pub struct LazyBorel<'h, 'a> {
    pub alg: &'h HallAlgebra<'a>,
}

impl LazyBorel<'_, '_> {
    fn require_complete(&self, a: &ObjLabel) -> Result<()> {
        if self.alg.cat.subquotients_complete(a, &self.alg.window) {
            Ok(())
        } else {
            Err(Error::WindowInsufficient(format!("subobjects of {a} leave the window")))
        }
    }

    fn aut(&self, a: &ObjLabel) -> Result<Rational> {
        Ok(Rational::from_integer(self.alg.cat.aut_order(a)?))
    }
}

impl Structure for LazyBorel<'_, '_> {
    type Idx = Key;

    fn q(&self) -> u64 {
        self.alg.q()
    }

    fn mul(&self, i: &Key, j: &Key) -> Result<Vec<(Key, Scalar)>> {
        let p = self.alg.b_mul(&basis(i, self.q()), &basis(j, self.q()))?;
        Ok(p.terms().map(|(k, c)| (k.clone(), c.clone())).collect())
    }

    fn comul(&self, k: &Key) -> Result<Vec<(Key, Key, Scalar)>> {
        self.require_complete(&k.1)?;
        let d = self.alg.coproduct(&basis(k, self.q()))?;
        Ok(d.terms().map(|((l, r), c)| (l.clone(), r.clone(), c.clone())).collect())
    }

    fn left_factors(&self, k: &Key, b: &Key) -> Result<Vec<(Key, Scalar)>> {
        self.require_complete(&k.1)?;
        let cat = self.alg.cat;
        let kb = cat.class_of(&b.1)?;
        let mut out = Vec::new();
        for (a1, a2, g) in cat.subquotients(&k.1, &self.alg.window)? {
            if a2 != b.1 {
                continue;
            }
            let ka = cat.class_of(&a1)?;
            let coef = &self.alg.cartan_form(&ka, &b.0) * &self.alg.euler(&kb, &ka);
            out.push(((&k.0 - &b.0, a1), coef.scale_rational(&Rational::from_integer(g))));
        }
        Ok(out)
    }

    fn right_factors(&self, k: &Key, b: &Key) -> Result<Vec<(Key, Scalar)>> {
        self.require_complete(&k.1)?;
        let cat = self.alg.cat;
        let kb = cat.class_of(&b.1)?;
        let lam = &k.0 - &b.0;
        let mut out = Vec::new();
        for (a1, a2, g) in cat.subquotients(&k.1, &self.alg.window)? {
            if a1 != b.1 {
                continue;
            }
            let kc = cat.class_of(&a2)?;
            let coef = &self.alg.cartan_form(&kb, &lam) * &self.alg.euler(&kc, &kb);
            out.push(((lam.clone(), a2), coef.scale_rational(&Rational::from_integer(g))));
        }
        Ok(out)
    }

    fn dual_mul(&self, i: &Key, j: &Key) -> Result<Vec<(Key, Scalar)>> {
        let cat = self.alg.cat;
        let ka = cat.class_of(&i.1)?;
        if j.0 != &i.0 + &ka {
            return Ok(Vec::new());
        }
        let kb = cat.class_of(&j.1)?;
        let e = self.alg.euler(&kb, &ka);
        let auts = self.aut(&i.1)? * self.aut(&j.1)?;
        let mut out = Vec::new();
        for (c, g) in cat.hall_product(&i.1, &j.1)? {
            let r = &auts * Rational::from_integer(g) / self.aut(&c)?;
            out.push(((i.0.clone(), c), e.scale_rational(&r)));
        }
        Ok(out)
    }
}

/// Kashaev images κ(W_k) = Σ μ_k^{ij} Z_i ⊗ Ž_j and κ(W^k) = Σ m_{ji}^k Z^i ⊗ Ž^j
/// for every basis index of a finite table.
pub struct Kashaev<'d> {
    pub data: &'d HopfData,
    pub lower: Vec<Tens<usize>>,
    pub upper: Vec<Tens<usize>>,
}

impl<'d> Kashaev<'d> {
    pub fn new(data: &'d HopfData) -> Kashaev<'d> {
        let q = data.q;
        let n = data.len();
        // Z_i = ε·Z_i with ε = Σ ε(e_a) e^a the unit of the dual algebra.
        let eps: Vec<(usize, Scalar)> = data.counit.iter().cloned().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        let z_lower = |i: usize| -> Word<usize> { eps.iter().map(|(a, c)| ((*a, i), c.clone())).collect() };
        let zc_lower = |j: usize| -> Word<usize> { eps.iter().map(|(c, e)| ((j, *c), e.clone())).collect() };
        let mut lower = Vec::with_capacity(n);
        let mut upper = vec![Tens::new(); n];
        for k in 0..n {
            let mut t = Tens::new();
            for (i, j, mu) in &data.comul[k] {
                tens_add(&mut t, &tens_of(&z_lower(*i), &zc_lower(*j)), mu);
            }
            lower.push(t);
        }
        for (k, row) in data.factors.iter().enumerate() {
            for (j, i, m) in row {
                let l = single(&(*i, data.unit), q);
                let r = single(&(data.unit, *j), q);
                tens_add(&mut upper[k], &tens_of(&l, &r), m);
            }
        }
        Kashaev { data, lower, upper }
    }

    /// κ(W^g W_d).
    pub fn image_normal(&self, g: usize, d: usize) -> Result<Tens<usize>> {
        tens_mul(self.data, &self.upper[g], &self.lower[d])
    }

    /// Both sides of Σ μ_i^{ab} m^j_{bc} W_a W^c = Σ m^j_{ab} μ_i^{bc} W^a W_c
    /// pushed through κ.
    pub fn relation_sides(&self, i: usize, j: usize) -> Result<(Tens<usize>, Tens<usize>)> {
        let d = self.data;
        let mut lhs = Tens::new();
        for (a, b, mu) in d.comul(&i)? {
            for (c, m) in d.right_factors(&j, &b)? {
                let p = tens_mul(d, &self.lower[a], &self.upper[c])?;
                tens_add(&mut lhs, &p, &(&mu * &m));
            }
        }
        let mut rhs = Tens::new();
        for (b, c, mu) in d.comul(&i)? {
            for (a, m) in d.left_factors(&j, &b)? {
                let p = tens_mul(d, &self.upper[a], &self.lower[c])?;
                tens_add(&mut rhs, &p, &(&mu * &m));
            }
        }
        Ok((lhs, rhs))
    }

    /// W_i W^j = Σ μ3_i^{xyz} σ_z^{z′} m_{z′g}^h m_{hx}^j W^g W_y with σ = S⁻¹.
    pub fn dd_normal(&self, i: usize, j: usize) -> Result<Word<usize>> {
        let d = self.data;
        let mut out = Word::new();
        for (w, z, mu1) in d.comul(&i)? {
            for (x, y, mu2) in d.comul(&w)? {
                let mu = &mu1 * &mu2;
                for (z1, s) in &d.inv_antipode[z] {
                    for (h, m1) in d.left_factors(&j, &x)? {
                        for (g, m2) in d.right_factors(&h, z1)? {
                            add_to(&mut out, (g, y), &(&mu * s) * &(&m1 * &m2));
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Kashaev's relation on every basis pair, the DD normal form pushed through
/// κ, and injectivity of κ on the normal-form basis W^g W_d.
pub fn kashaev_check(data: &HopfData, suite: &str) -> Result<Report> {
    let mut rep = Report::new(suite, "Kashaev embedding of the Drinfeld double");
    let k = Kashaev::new(data);
    let n = data.len();
    let mut images = Vec::with_capacity(n * n);
    for g in 0..n {
        for dd in 0..n {
            images.push(k.image_normal(g, dd)?);
        }
    }
    for i in 0..n {
        for j in 0..n {
            let (l, r) = k.relation_sides(i, j)?;
            rep.check(format!("relation i={i},j={j}"), l.len(), r.len(), l == r);
            let lhs = tens_mul(data, &k.lower[i], &k.upper[j])?;
            let mut rhs = Tens::new();
            for ((g, dd), c) in k.dd_normal(i, j)? {
                tens_add(&mut rhs, &images[g * n + dd], &c);
            }
            rep.check(format!("normal form i={i},j={j}"), lhs.len(), rhs.len(), lhs == rhs);
        }
    }
    let distinct: BTreeSet<String> = images.iter().map(|t| format!("{t:?}")).collect();
    rep.expect_eq("images pairwise distinct", &distinct.len(), &images.len());
    let cols: BTreeMap<_, usize> = images.iter().flat_map(|t| t.keys().cloned()).collect::<BTreeSet<_>>().into_iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut m = vec![vec![Scalar::zero(data.q); cols.len()]; images.len()];
    for (r, t) in images.iter().enumerate() {
        for (key, c) in t {
            m[r][cols[key]] = c.clone();
        }
    }
    rep.expect_eq("rank of images", &linalg::rank(&m), &images.len());
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finitary::{CohP1, Quiver, TorsionLocal};

    #[test]
    fn table_is_hopf() {
        let t = TorsionLocal::new(2, 1).unwrap();
        let d = export_hopf_data(&t, Window::torsion(2), 2).unwrap();
        assert_eq!(d.len(), 8);
        for i in 0..d.len() {
            // m(S ⊗ id)Δ = ε·1 and S∘σ = id.
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (a, b, mu) in d.comul(&i).unwrap() {
                for (s, c) in &d.antipode[a] {
                    for (k, m) in d.mul(s, &b).unwrap() {
                        add_to(&mut acc, k, &(&mu * c) * &m);
                    }
                }
            }
            let mut want = BTreeMap::new();
            add_to(&mut want, d.unit, d.counit[i].clone());
            assert_eq!(acc, want, "antipode axiom at {i}");
            let mut back: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (s, c) in &d.inv_antipode[i] {
                for (t, c2) in &d.antipode[*s] {
                    add_to(&mut back, *t, c * c2);
                }
            }
            assert_eq!(back, BTreeMap::from([(i, Scalar::one(2))]));
        }
    }

    #[test]
    fn quiver_tables_rejected() {
        let k = Quiver::kronecker(2).unwrap();
        assert!(matches!(export_hopf_data(&k, Window::dims(1), 2), Err(Error::UnsupportedShape(_))));
    }

    #[test]
    fn kashaev_on_local_torsion() {
        let t = TorsionLocal::new(2, 1).unwrap();
        let d = export_hopf_data(&t, Window::torsion(2), 2).unwrap();
        let r = kashaev_check(&d, "torsion-local").unwrap();
        assert!(r.passed(), "{}", r.summary());
    }

    #[test]
    fn kashaev_on_p1_torsion() {
        let c = CohP1::new(2).unwrap();
        let d = export_hopf_data(&c, Window::torsion(1), 1).unwrap();
        let r = kashaev_check(&d, "coh-p1").unwrap();
        assert!(r.passed(), "{}", r.summary());
    }

    #[test]
    fn corrupted_coproduct_is_detected() {
        let t = TorsionLocal::new(2, 1).unwrap();
        let d = export_hopf_data(&t, Window::torsion(2), 1).unwrap().corrupted();
        let r = kashaev_check(&d, "torsion-local").unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn group_algebra_rows() {
        let t = TorsionLocal::new(2, 1).unwrap();
        let d = export_hopf_data(&t, Window::torsion(0), 2).unwrap();
        assert_eq!(d.len(), 1);
    }
}
