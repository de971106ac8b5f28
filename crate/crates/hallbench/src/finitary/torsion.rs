//! Finite-length modules over a discrete valuation ring with residue field
//! F_{p^d}, realized as F_p[t]/(g^k) for an irreducible g of degree d.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::One;

use super::ff::{self, Mat, Poly};
use super::{Category, KClass, ObjLabel, Window};
use crate::error::{Error, Result};

/// Weakly decreasing list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(pub Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Partition> {
        if parts.contains(&0) {
            return Err(Error::Parse("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            parts.sort_unstable_by(|a, b| b.cmp(a));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Partition {
        Partition(vec![])
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let m = self.0.first().copied().unwrap_or(0);
        Partition((1..=m).map(|k| self.0.iter().filter(|&&x| x >= k).count() as u32).collect())
    }

    /// n(λ) = Σ (i−1) λ_i.
    pub fn n(&self) -> u32 {
        self.0.iter().enumerate().map(|(i, &x)| i as u32 * x).sum()
    }

    /// Multiplicities m_1, m_2, … (m_k = number of parts equal to k).
    pub fn multiplicities(&self) -> Vec<u32> {
        let m = self.0.first().copied().unwrap_or(0) as usize;
        let mut out = vec![0u32; m];
        for &x in &self.0 {
            out[x as usize - 1] += 1;
        }
        out
    }

    /// All partitions of n, in reverse lexicographic order.
    pub fn all(n: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for k in (1..=rest.min(max)).rev() {
                cur.push(k);
                rec(rest - k, k, cur, out);
                cur.pop();
            }
        }
        rec(n, n, &mut cur, &mut out);
        out
    }

    /// Dominance-compatible containment: μ ⊆ λ part by part.
    pub fn contained_in(&self, o: &Partition) -> bool {
        self.len() <= o.len() && self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// |Aut| of the module of type λ over a DVR with residue field of size qx.
pub fn aut_order_partition(lam: &Partition, qx: u64) -> BigInt {
    let conj = lam.conjugate();
    let mut exp: i64 = conj.0.iter().map(|&x| (x as i64) * (x as i64)).sum();
    let mut acc = BigInt::one();
    for &m in &lam.multiplicities() {
        for j in 1..=m {
            acc *= BigInt::from(qx).pow(j) - 1;
            exp -= j as i64;
        }
    }
    acc * BigInt::from(qx).pow(exp as u32)
}

/// The module ⊕ F_p[t]/(g^{λ_i}) with its t-action and g(t)-action.
pub struct LocalModule {
    pub p: u32,
    pub g: Poly,
    pub lam: Partition,
    pub dim: usize,
    pub t: Mat,
    pub gmat: Mat,
    /// (offset, length) of each cyclic block in F_p coordinates.
    pub blocks: Vec<(usize, usize)>,
}

impl LocalModule {
    pub fn new(g: &[u32], lam: &Partition, p: u32) -> LocalModule {
        let d = ff::poly_deg(g) as usize;
        let dim = d * lam.size() as usize;
        let mut t = Mat::zero(dim, dim);
        let mut blocks = Vec::new();
        let mut off = 0;
        for &k in &lam.0 {
            let gk = ff::poly_pow(g, k, p);
            let tb = ff::mult_by_t(&gk, p);
            let n = tb.rows;
            for i in 0..n {
                for j in 0..n {
                    t.set(off + i, off + j, tb.get(i, j));
                }
            }
            blocks.push((off, n));
            off += n;
        }
        let gmat = poly_of_mat(g, &t, p);
        LocalModule { p, g: g.to_vec(), lam: lam.clone(), dim, t, gmat, blocks }
    }

    pub fn degree(&self) -> usize {
        ff::poly_deg(&self.g) as usize
    }

    pub fn is_submodule(&self, basis: &Mat) -> bool {
        let img = basis.mul(&self.t, self.p);
        (0..img.rows).all(|i| ff::coords_in(basis, img.row(i), self.p).is_some())
    }

    /// Isomorphism type of the submodule spanned by `basis` (RREF rows).
    pub fn sub_type(&self, basis: &Mat) -> Partition {
        let d = self.degree();
        let mut dims = vec![basis.rows];
        let mut cur = basis.clone();
        while *dims.last().unwrap() > 0 {
            cur = cur.mul(&self.gmat, self.p);
            dims.push(cur.rank(self.p));
        }
        partition_from_dims(&dims, d)
    }

    /// Isomorphism type of the quotient by the submodule spanned by `basis`.
    pub fn quotient_type(&self, basis: &Mat) -> Partition {
        let d = self.degree();
        let s = basis.rows;
        let mut dims = vec![self.dim - s];
        let mut power = Mat::identity(self.dim);
        while *dims.last().unwrap() > 0 {
            power = power.mul(&self.gmat, self.p);
            let mut rows = power.to_rows();
            rows.extend(basis.to_rows());
            let m = Mat::from_rows(&rows, self.dim);
            dims.push(m.rank(self.p) - s);
        }
        partition_from_dims(&dims, d)
    }

    /// Every submodule as an RREF basis.
    pub fn submodules(&self) -> Vec<Mat> {
        let d = self.degree();
        let mut out = Vec::new();
        for s in (0..=self.dim).step_by(d.max(1)) {
            for b in ff::subspaces(self.dim, s, self.p) {
                if self.is_submodule(&b) {
                    out.push(b);
                }
            }
        }
        out
    }
}

fn poly_of_mat(g: &[u32], t: &Mat, p: u32) -> Mat {
    let n = t.rows;
    let mut acc = Mat::zero(n, n);
    let mut pw = Mat::identity(n);
    for &c in g {
        for i in 0..n * n {
            acc.data[i] = (acc.data[i] + c * pw.data[i]) % p;
        }
        pw = pw.mul(t, p);
    }
    acc
}

/// dims[k] = dim g^k M = d·Σ max(λ_i − k, 0).
fn partition_from_dims(dims: &[usize], d: usize) -> Partition {
    let mut conj = Vec::new();
    for k in 0..dims.len() - 1 {
        let c = (dims[k] - dims[k + 1]) / d;
        if c > 0 {
            conj.push(c as u32);
        }
    }
    Partition(conj).conjugate()
}

type Census = HashMap<(Partition, Partition), u64>;

fn census_cache() -> &'static Mutex<HashMap<(u32, Poly, Partition), Arc<Census>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, Poly, Partition), Arc<Census>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Counts of submodules of M_λ by (sub type, quotient type).
pub fn submodule_census(g: &[u32], lam: &Partition, p: u32) -> Arc<Census> {
    let key = (p, g.to_vec(), lam.clone());
    if let Some(c) = census_cache().lock().unwrap().get(&key) {
        return c.clone();
    }
    let m = LocalModule::new(g, lam, p);
    let mut census = Census::new();
    for b in m.submodules() {
        *census.entry((m.sub_type(&b), m.quotient_type(&b))).or_default() += 1;
    }
    let arc = Arc::new(census);
    census_cache().lock().unwrap().insert(key, arc.clone());
    arc
}

/// g^λ_{μν} at the point g by submodule enumeration.
pub fn local_hall_number(g: &[u32], mu: &Partition, nu: &Partition, lam: &Partition, p: u32) -> u64 {
    if mu.size() + nu.size() != lam.size() {
        return 0;
    }
    submodule_census(g, lam, p).get(&(mu.clone(), nu.clone())).copied().unwrap_or(0)
}

/// Σ_λ g^λ_{μν} [λ] at the point g.
pub fn local_product(g: &[u32], mu: &Partition, nu: &Partition, p: u32) -> Vec<(Partition, u64)> {
    let n = mu.size() + nu.size();
    let mut out = Vec::new();
    for lam in Partition::all(n) {
        if !mu.contained_in(&lam) || !nu.contained_in(&lam) {
            continue;
        }
        let c = local_hall_number(g, mu, nu, &lam, p);
        if c > 0 {
            out.push((lam, c));
        }
    }
    out.sort();
    out
}

/// Category of finite-length modules at one closed point of degree `deg`
/// over F_p (so the residue field has q_x = p^deg elements).
pub struct TorsionLocal {
    pub p: u32,
    pub deg: u32,
    g: Poly,
}

impl TorsionLocal {
    pub fn new(p: u32, deg: u32) -> Result<TorsionLocal> {
        if ![2, 3, 5].contains(&p) {
            return Err(Error::Precondition(format!("counting backends need p in {{2,3,5}}, got {p}")));
        }
        if deg == 0 {
            return Err(Error::Precondition("point degree must be positive".into()));
        }
        let g = ff::irreducibles(deg as usize, p).into_iter().next().expect("irreducible exists");
        Ok(TorsionLocal { p, deg, g })
    }

    pub fn qx(&self) -> u64 {
        (self.p as u64).pow(self.deg)
    }

    fn part<'a>(&self, a: &'a ObjLabel) -> Result<&'a Partition> {
        match a {
            ObjLabel::Local(p) => Ok(p),
            other => Err(Error::BackendMismatch(format!("torsion-local got {other}"))),
        }
    }
}

impl Category for TorsionLocal {
    fn backend(&self) -> &'static str {
        "torsion-local"
    }

    fn q(&self) -> u64 {
        self.p as u64
    }

    fn zero_obj(&self) -> ObjLabel {
        ObjLabel::Local(Partition::empty())
    }

    fn zero_class(&self) -> KClass {
        KClass(vec![0])
    }

    fn class_of(&self, a: &ObjLabel) -> Result<KClass> {
        Ok(KClass(vec![self.part(a)?.size() as i64]))
    }

    fn euler_chi(&self, _a: &KClass, _b: &KClass) -> i64 {
        0
    }

    fn aut_order(&self, a: &ObjLabel) -> Result<BigInt> {
        Ok(aut_order_partition(self.part(a)?, self.qx()))
    }

    fn hall_product(&self, a: &ObjLabel, b: &ObjLabel) -> Result<Vec<(ObjLabel, BigInt)>> {
        let (mu, nu) = (self.part(a)?, self.part(b)?);
        Ok(local_product(&self.g, mu, nu, self.p)
            .into_iter()
            .map(|(l, c)| (ObjLabel::Local(l), BigInt::from(c)))
            .collect())
    }

    fn window_classes(&self, w: &Window) -> Vec<KClass> {
        (0..=w.max_torsion).map(|n| KClass(vec![n])).collect()
    }

    fn objects_of_class(&self, k: &KClass, w: &Window) -> Result<Vec<ObjLabel>> {
        let n = k.0[0];
        if n < 0 || n > w.max_torsion {
            return Ok(vec![]);
        }
        Ok(Partition::all(n as u32).into_iter().map(ObjLabel::Local).collect())
    }

    fn in_window(&self, a: &ObjLabel, w: &Window) -> bool {
        self.part(a).map(|p| p.size() as i64 <= w.max_torsion).unwrap_or(false)
    }

    fn subquotients(&self, c: &ObjLabel, w: &Window) -> Result<Vec<(ObjLabel, ObjLabel, BigInt)>> {
        let lam = self.part(c)?;
        if lam.size() as i64 > w.max_torsion {
            return Ok(vec![]);
        }
        let census = submodule_census(&self.g, lam, self.p);
        let mut out: Vec<_> = census
            .iter()
            .map(|((a, b), n)| (ObjLabel::Local(a.clone()), ObjLabel::Local(b.clone()), BigInt::from(*n)))
            .collect();
        out.sort();
        Ok(out)
    }

    fn subquotients_complete(&self, c: &ObjLabel, w: &Window) -> bool {
        self.in_window(c, w)
    }
}

/// Brute-force |Aut M_λ| by enumerating t-linear endomorphisms (test oracle
/// for tiny modules).
pub fn brute_aut_order(g: &[u32], lam: &Partition, p: u32) -> u64 {
    let m = LocalModule::new(g, lam, p);
    let n = m.dim;
    let total = (p as u64).pow((n * n) as u32);
    let mut count = 0;
    for code in 0..total {
        let mut a = Mat::zero(n, n);
        let mut x = code;
        for i in 0..n * n {
            a.data[i] = (x % p as u64) as u32;
            x /= p as u64;
        }
        if a.mul(&m.t, p) == m.t.mul(&a, p) && a.rank(p) == n {
            count += 1;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn partitions_of_four() {
        assert_eq!(Partition::all(4).len(), 5);
        assert_eq!(part(&[2, 1]).conjugate(), part(&[2, 1]));
        assert_eq!(part(&[3, 1]).conjugate(), part(&[2, 1, 1]));
        assert_eq!(part(&[2, 2, 1]).n(), 4);
    }

    #[test]
    fn aut_orders_match_formula() {
        assert_eq!(aut_order_partition(&part(&[2]), 2), 2.into());
        assert_eq!(aut_order_partition(&part(&[1, 1]), 2), 6.into());
        assert_eq!(aut_order_partition(&part(&[1]), 4), 3.into());
        for lam in [part(&[1]), part(&[2]), part(&[1, 1]), part(&[2, 1])] {
            for p in [2u32, 3] {
                let brute = brute_aut_order(&[0, 1], &lam, p);
                assert_eq!(aut_order_partition(&lam, p as u64), brute.into(), "{lam} p={p}");
            }
        }
        // quadratic point over F_2: residue field F_4
        assert_eq!(brute_aut_order(&[1, 1, 1], &part(&[1]), 2), 3);
    }

    #[test]
    fn small_hall_numbers() {
        let t = [0, 1];
        assert_eq!(local_hall_number(&t, &part(&[1]), &part(&[1]), &part(&[1, 1]), 2), 3);
        assert_eq!(local_hall_number(&t, &part(&[1]), &part(&[1]), &part(&[2]), 2), 1);
        assert_eq!(local_hall_number(&t, &part(&[1]), &part(&[1]), &part(&[1, 1]), 3), 4);
        // residue field F_4 at the quadratic point over F_2
        assert_eq!(local_hall_number(&[1, 1, 1], &part(&[1]), &part(&[1]), &part(&[1, 1]), 2), 5);
    }

    #[test]
    fn cyclic_module_subquotients() {
        let cat = TorsionLocal::new(2, 1).unwrap();
        let c = ObjLabel::Local(part(&[2]));
        let sq = cat.subquotients(&c, &Window::torsion(3)).unwrap();
        let expect = vec![
            (ObjLabel::Local(part(&[])), ObjLabel::Local(part(&[2])), BigInt::from(1)),
            (ObjLabel::Local(part(&[1])), ObjLabel::Local(part(&[1])), BigInt::from(1)),
            (ObjLabel::Local(part(&[2])), ObjLabel::Local(part(&[])), BigInt::from(1)),
        ];
        assert_eq!(sq, expect);
    }

    #[test]
    fn subobject_totals_are_gaussian() {
        // sum over sub types of the semisimple module (1,1,1) at q=2 of rank-1 subs is [3]_2 = 7
        let census = submodule_census(&[0, 1], &part(&[1, 1, 1]), 2);
        let n: u64 = census.iter().filter(|((a, _), _)| a.size() == 1).map(|(_, c)| c).sum();
        assert_eq!(n, 7);
    }
}
