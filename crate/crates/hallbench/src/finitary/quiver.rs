//! Representations of a finite quiver without loops over F_p.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::ff::{self, Mat};
use super::{Category, KClass, ObjLabel, Window};
use crate::error::{Error, Result};

/// Representation: one matrix per arrow, of size dims[target] × dims[source].
/// Labels produced by [`Quiver::canonical`] are the lexicographically least
/// matrix tuple in the isomorphism class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuiverRep {
    pub dims: Vec<usize>,
    pub mats: Vec<Mat>,
}

impl QuiverRep {
    pub fn to_json(&self) -> Value {
        let mats: Vec<Vec<Vec<u32>>> = self.mats.iter().map(|m| m.to_rows()).collect();
        json!({"backend": "quiver", "dims": self.dims, "mats": mats})
    }

    pub fn from_json(v: &Value) -> Result<QuiverRep> {
        let bad = |e: serde_json::Error| Error::Parse(e.to_string());
        let dims: Vec<usize> = serde_json::from_value(v.get("dims").cloned().unwrap_or(json!([]))).map_err(bad)?;
        let raw: Vec<Vec<Vec<u32>>> =
            serde_json::from_value(v.get("mats").cloned().unwrap_or(json!([]))).map_err(bad)?;
        Ok(QuiverRep { dims, mats: raw.into_iter().map(mat_from_rows).collect() })
    }

    fn encode(&self) -> Vec<u32> {
        self.mats.iter().flat_map(|m| m.data.iter().copied()).collect()
    }
}

fn mat_from_rows(rows: Vec<Vec<u32>>) -> Mat {
    let cols = rows.first().map(|r| r.len()).unwrap_or(0);
    Mat::from_rows(&rows, cols)
}

impl fmt::Display for QuiverRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mats: Vec<String> = self
            .mats
            .iter()
            .map(|m| {
                let rows: Vec<String> = m
                    .to_rows()
                    .iter()
                    .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(""))
                    .collect();
                format!("[{}]", rows.join("|"))
            })
            .collect();
        let dims: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        write!(f, "Q({};{})", dims.join(","), mats.join(","))
    }
}

struct DimTable {
    /// encoding → index of class
    index: HashMap<Vec<u32>, usize>,
    /// canonical representative and orbit size per class
    classes: Vec<(QuiverRep, u64)>,
}

type SubCensus = HashMap<(QuiverRep, QuiverRep), u64>;

#[derive(Default)]
struct QuiverCache {
    tables: HashMap<Vec<usize>, Arc<DimTable>>,
    census: HashMap<(QuiverRep, Vec<usize>), Arc<SubCensus>>,
}

/// Category of representations of a quiver over F_p.
pub struct Quiver {
    pub name: String,
    pub vertices: usize,
    pub arrows: Vec<(usize, usize)>,
    pub p: u32,
    cache: Mutex<QuiverCache>,
}

/// Cap on the number of matrix tuples enumerated per dimension vector.
const MAX_REPS: u64 = 1 << 21;

impl Quiver {
    pub fn new(name: &str, vertices: usize, arrows: Vec<(usize, usize)>, p: u32) -> Result<Quiver> {
        if ![2, 3, 5].contains(&p) {
            return Err(Error::Precondition(format!("counting backends need p in {{2,3,5}}, got {p}")));
        }
        if arrows.iter().any(|&(s, t)| s == t || s >= vertices || t >= vertices) {
            return Err(Error::Precondition("arrows must join distinct existing vertices".into()));
        }
        Ok(Quiver { name: name.to_string(), vertices, arrows, p, cache: Mutex::new(QuiverCache::default()) })
    }

    pub fn kronecker(p: u32) -> Result<Quiver> {
        Quiver::new("kronecker", 2, vec![(0, 1), (0, 1)], p)
    }

    pub fn a2(p: u32) -> Result<Quiver> {
        Quiver::new("a2", 2, vec![(0, 1)], p)
    }

    pub fn by_name(name: &str, p: u32) -> Result<Quiver> {
        match name {
            "kronecker" => Quiver::kronecker(p),
            "a2" => Quiver::a2(p),
            "a1" => Quiver::new("a1", 1, vec![], p),
            "a3" => Quiver::new("a3", 3, vec![(0, 1), (1, 2)], p),
            other => Err(Error::Parse(format!("unknown quiver {other:?}"))),
        }
    }

    /// Cartan matrix entry a_ij = 2δ_ij − (number of edges between i and j).
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        if i == j {
            return 2;
        }
        -(self.arrows.iter().filter(|&&(s, t)| (s, t) == (i, j) || (s, t) == (j, i)).count() as i64)
    }

    /// The simple representation at vertex i.
    pub fn simple(&self, i: usize) -> QuiverRep {
        let mut dims = vec![0; self.vertices];
        dims[i] = 1;
        self.zero_rep(&dims)
    }

    pub fn zero_rep(&self, dims: &[usize]) -> QuiverRep {
        let mats = self.arrows.iter().map(|&(s, t)| Mat::zero(dims[t], dims[s])).collect();
        QuiverRep { dims: dims.to_vec(), mats }
    }

    fn check(&self, r: &QuiverRep) -> Result<()> {
        if r.dims.len() != self.vertices || r.mats.len() != self.arrows.len() {
            return Err(Error::BackendMismatch(format!("representation {r} does not fit quiver {}", self.name)));
        }
        for (m, &(s, t)) in r.mats.iter().zip(&self.arrows) {
            if m.rows != r.dims[t] || m.cols != r.dims[s] || m.data.iter().any(|&x| x >= self.p) {
                return Err(Error::BackendMismatch(format!("bad matrix shape in {r}")));
            }
        }
        Ok(())
    }

    fn rep<'a>(&self, a: &'a ObjLabel) -> Result<&'a QuiverRep> {
        match a {
            ObjLabel::Quiver(r) => {
                self.check(r)?;
                Ok(r)
            }
            other => Err(Error::BackendMismatch(format!("quiver got {other}"))),
        }
    }

    pub fn group_order(&self, dims: &[usize]) -> BigInt {
        dims.iter().map(|&d| ff::gl_order(d as u32, self.p as u64)).product()
    }

    fn generators(&self, n: usize) -> Vec<(Mat, Mat)> {
        let p = self.p;
        let mut gens = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let mut g = Mat::identity(n);
                    g.set(i, j, 1);
                    let inv = g.inverse(p).unwrap();
                    gens.push((g, inv));
                }
            }
        }
        if p > 2 && n > 0 {
            let omega = (2..p).find(|&w| (1..p - 1).all(|k| ff::pow_mod(w, k, p) != 1)).unwrap();
            let mut g = Mat::identity(n);
            g.set(0, 0, omega);
            let inv = g.inverse(p).unwrap();
            gens.push((g, inv));
        }
        gens
    }

    fn act(&self, r: &QuiverRep, vertex: usize, g: &Mat, ginv: &Mat) -> QuiverRep {
        let p = self.p;
        let mats = r
            .mats
            .iter()
            .zip(&self.arrows)
            .map(|(m, &(s, t))| {
                let mut m = m.clone();
                if t == vertex {
                    m = g.mul(&m, p);
                }
                if s == vertex {
                    m = m.mul(ginv, p);
                }
                m
            })
            .collect();
        QuiverRep { dims: r.dims.clone(), mats }
    }

    fn table(&self, dims: &[usize]) -> Result<Arc<DimTable>> {
        if let Some(t) = self.cache.lock().unwrap().tables.get(dims) {
            return Ok(t.clone());
        }
        let entries: u64 = self.arrows.iter().map(|&(s, t)| (dims[s] * dims[t]) as u64).sum();
        let total = (self.p as u64).checked_pow(entries as u32).unwrap_or(u64::MAX);
        if total > MAX_REPS {
            return Err(Error::UnsupportedShape(format!("dimension vector {dims:?} too large to enumerate")));
        }
        let gens: Vec<(usize, Vec<(Mat, Mat)>)> = (0..self.vertices).map(|v| (v, self.generators(dims[v]))).collect();
        let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
        let mut classes = Vec::new();
        let zero = self.zero_rep(dims);
        for code in 0..total {
            let mut r = zero.clone();
            let mut x = code;
            for m in r.mats.iter_mut() {
                for e in m.data.iter_mut() {
                    *e = (x % self.p as u64) as u32;
                    x /= self.p as u64;
                }
            }
            let enc = r.encode();
            if index.contains_key(&enc) {
                continue;
            }
            // breadth-first orbit under the generators
            let cls = classes.len();
            let mut best = r.clone();
            let mut size = 0u64;
            let mut queue = VecDeque::from([r]);
            index.insert(enc, cls);
            while let Some(cur) = queue.pop_front() {
                size += 1;
                if cur < best {
                    best = cur.clone();
                }
                for (v, gs) in &gens {
                    for (g, ginv) in gs {
                        let nxt = self.act(&cur, *v, g, ginv);
                        let e = nxt.encode();
                        if let std::collections::hash_map::Entry::Vacant(slot) = index.entry(e) {
                            slot.insert(cls);
                            queue.push_back(nxt);
                        }
                    }
                }
            }
            classes.push((best, size));
        }
        let t = Arc::new(DimTable { index, classes });
        self.cache.lock().unwrap().tables.insert(dims.to_vec(), t.clone());
        Ok(t)
    }

    /// Canonical label of any representation.
    pub fn canonical(&self, r: &QuiverRep) -> Result<QuiverRep> {
        let t = self.table(&r.dims)?;
        Ok(t.classes[t.index[&r.encode()]].0.clone())
    }

    /// All isomorphism classes with the given dimension vector.
    pub fn classes(&self, dims: &[usize]) -> Result<Vec<QuiverRep>> {
        let t = self.table(dims)?;
        let mut out: Vec<QuiverRep> = t.classes.iter().map(|(r, _)| r.clone()).collect();
        out.sort();
        Ok(out)
    }

    pub fn rep_aut_order(&self, r: &QuiverRep) -> Result<BigInt> {
        let t = self.table(&r.dims)?;
        let orbit = t.classes[t.index[&r.encode()]].1;
        Ok(self.group_order(&r.dims) / BigInt::from(orbit))
    }

    /// Sub- and quotient representation (canonical) for a tuple of invariant
    /// subspaces, or None when the tuple is not invariant.
    pub fn split(&self, c: &QuiverRep, subs: &[Mat]) -> Result<Option<(QuiverRep, QuiverRep)>> {
        let p = self.p;
        let mut sub_mats = Vec::new();
        let mut quo_mats = Vec::new();
        // full bases [U; W] and their inverses
        let mut comp = Vec::new();
        let mut full_inv = Vec::new();
        for (v, u) in subs.iter().enumerate() {
            let n = c.dims[v];
            let (_, piv) = ff::rref(u, p);
            let free: Vec<usize> = (0..n).filter(|k| !piv.contains(k)).collect();
            let mut w = Mat::zero(free.len(), n);
            for (i, &k) in free.iter().enumerate() {
                w.set(i, k, 1);
            }
            let mut rows = u.to_rows();
            rows.extend(w.to_rows());
            let full = Mat::from_rows(&rows, n);
            full_inv.push(full.inverse(p).expect("complement basis"));
            comp.push(w);
        }
        for (m, &(s, t)) in c.mats.iter().zip(&self.arrows) {
            let (us, ut) = (&subs[s], &subs[t]);
            let mut sm = Mat::zero(ut.rows, us.rows);
            for j in 0..us.rows {
                let img = m.mul(&Mat::from_rows(&[us.row(j).to_vec()], m.cols).transpose(), p).transpose();
                let Some(x) = ff::coords_in(ut, img.row(0), p) else { return Ok(None) };
                for (i, xi) in x.into_iter().enumerate() {
                    sm.set(i, j, xi);
                }
            }
            sub_mats.push(sm);
            let ws = &comp[s];
            let mut qm = Mat::zero(c.dims[t] - ut.rows, ws.rows);
            for j in 0..ws.rows {
                let img = m.mul(&Mat::from_rows(&[ws.row(j).to_vec()], m.cols).transpose(), p).transpose();
                let coords = img.mul(&full_inv[t], p);
                for i in 0..qm.rows {
                    qm.set(i, j, coords.get(0, ut.rows + i));
                }
            }
            quo_mats.push(qm);
        }
        let sub_dims: Vec<usize> = subs.iter().map(|u| u.rows).collect();
        let quo_dims: Vec<usize> = c.dims.iter().zip(&sub_dims).map(|(a, b)| a - b).collect();
        let sub = self.canonical(&QuiverRep { dims: sub_dims, mats: sub_mats })?;
        let quo = self.canonical(&QuiverRep { dims: quo_dims, mats: quo_mats })?;
        Ok(Some((sub, quo)))
    }

    /// Census of subrepresentations of C with the given dimension vector.
    fn sub_census(&self, c: &QuiverRep, sub_dims: &[usize]) -> Result<Arc<SubCensus>> {
        let key = (c.clone(), sub_dims.to_vec());
        if let Some(x) = self.cache.lock().unwrap().census.get(&key) {
            return Ok(x.clone());
        }
        let per_vertex: Vec<Vec<Mat>> =
            (0..self.vertices).map(|v| ff::subspaces(c.dims[v], sub_dims[v], self.p)).collect();
        let mut census = SubCensus::new();
        let mut idx = vec![0usize; self.vertices];
        if per_vertex.iter().all(|l| !l.is_empty()) {
            loop {
                let subs: Vec<Mat> = idx.iter().enumerate().map(|(v, &i)| per_vertex[v][i].clone()).collect();
                if let Some(pair) = self.split(c, &subs)? {
                    *census.entry(pair).or_default() += 1;
                }
                // odometer
                let mut v = 0;
                loop {
                    if v == self.vertices {
                        break;
                    }
                    idx[v] += 1;
                    if idx[v] < per_vertex[v].len() {
                        break;
                    }
                    idx[v] = 0;
                    v += 1;
                }
                if v == self.vertices {
                    break;
                }
            }
        }
        let arc = Arc::new(census);
        self.cache.lock().unwrap().census.insert(key, arc.clone());
        Ok(arc)
    }

    fn dims_of(&self, k: &KClass) -> Option<Vec<usize>> {
        k.0.iter().map(|&x| (x >= 0).then_some(x as usize)).collect()
    }

    fn all_dims(&self, total: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = vec![0usize; self.vertices];
        fn rec(v: usize, rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if v == cur.len() {
                out.push(cur.clone());
                return;
            }
            for d in 0..=rest {
                cur[v] = d;
                rec(v + 1, rest - d, cur, out);
            }
            cur[v] = 0;
        }
        rec(0, total, &mut cur, &mut out);
        out
    }
}

impl Category for Quiver {
    fn backend(&self) -> &'static str {
        "quiver"
    }

    fn q(&self) -> u64 {
        self.p as u64
    }

    fn zero_obj(&self) -> ObjLabel {
        ObjLabel::Quiver(self.zero_rep(&vec![0; self.vertices]))
    }

    fn zero_class(&self) -> KClass {
        KClass::zero(self.vertices)
    }

    fn class_of(&self, a: &ObjLabel) -> Result<KClass> {
        Ok(KClass(self.rep(a)?.dims.iter().map(|&d| d as i64).collect()))
    }

    fn euler_chi(&self, a: &KClass, b: &KClass) -> i64 {
        let diag: i64 = a.0.iter().zip(&b.0).map(|(x, y)| x * y).sum();
        let arrows: i64 = self.arrows.iter().map(|&(s, t)| a.0[s] * b.0[t]).sum();
        diag - arrows
    }

    fn aut_order(&self, a: &ObjLabel) -> Result<BigInt> {
        self.rep_aut_order(self.rep(a)?)
    }

    fn hall_product(&self, a: &ObjLabel, b: &ObjLabel) -> Result<Vec<(ObjLabel, BigInt)>> {
        let (ra, rb) = (self.rep(a)?, self.rep(b)?);
        let (ra, rb) = (self.canonical(ra)?, self.canonical(rb)?);
        let dims: Vec<usize> = ra.dims.iter().zip(&rb.dims).map(|(x, y)| x + y).collect();
        let mut out = Vec::new();
        for c in self.classes(&dims)? {
            let census = self.sub_census(&c, &ra.dims)?;
            if let Some(&n) = census.get(&(ra.clone(), rb.clone())) {
                out.push((ObjLabel::Quiver(c), BigInt::from(n)));
            }
        }
        out.sort();
        Ok(out)
    }

    fn window_classes(&self, w: &Window) -> Vec<KClass> {
        self.all_dims(w.max_rank.max(0) as usize)
            .into_iter()
            .map(|d| KClass(d.into_iter().map(|x| x as i64).collect()))
            .collect()
    }

    fn objects_of_class(&self, k: &KClass, w: &Window) -> Result<Vec<ObjLabel>> {
        let Some(dims) = self.dims_of(k) else { return Ok(vec![]) };
        if dims.iter().sum::<usize>() as i64 > w.max_rank {
            return Ok(vec![]);
        }
        Ok(self.classes(&dims)?.into_iter().map(ObjLabel::Quiver).collect())
    }

    fn in_window(&self, a: &ObjLabel, w: &Window) -> bool {
        self.rep(a).map(|r| r.dims.iter().sum::<usize>() as i64 <= w.max_rank).unwrap_or(false)
    }

    fn subquotients(&self, c: &ObjLabel, w: &Window) -> Result<Vec<(ObjLabel, ObjLabel, BigInt)>> {
        let rc = self.canonical(self.rep(c)?)?;
        if rc.dims.iter().sum::<usize>() as i64 > w.max_rank {
            return Ok(vec![]);
        }
        let mut out = Vec::new();
        let mut sub = vec![0usize; self.vertices];
        loop {
            for ((a, b), n) in self.sub_census(&rc, &sub)?.iter() {
                out.push((ObjLabel::Quiver(a.clone()), ObjLabel::Quiver(b.clone()), BigInt::from(*n)));
            }
            let mut v = 0;
            while v < self.vertices {
                sub[v] += 1;
                if sub[v] <= rc.dims[v] {
                    break;
                }
                sub[v] = 0;
                v += 1;
            }
            if v == self.vertices {
                break;
            }
        }
        out.sort();
        Ok(out)
    }

    fn subquotients_complete(&self, c: &ObjLabel, w: &Window) -> bool {
        self.in_window(c, w)
    }
}

/// All tuples of linear maps F^{dims_a} → F^{dims_b} commuting with the
/// arrows (the space Hom(A, B)), by brute force. Test-oracle scale only.
pub fn brute_homs(quiver: &Quiver, a: &QuiverRep, b: &QuiverRep) -> Vec<Vec<Mat>> {
    let p = quiver.p;
    let sizes: Vec<usize> = (0..quiver.vertices).map(|v| a.dims[v] * b.dims[v]).collect();
    let total_entries: usize = sizes.iter().sum();
    let total = (p as u64).pow(total_entries as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut x = code;
        let maps: Vec<Mat> = (0..quiver.vertices)
            .map(|v| {
                let mut m = Mat::zero(b.dims[v], a.dims[v]);
                for e in m.data.iter_mut() {
                    *e = (x % p as u64) as u32;
                    x /= p as u64;
                }
                m
            })
            .collect();
        let ok = quiver.arrows.iter().enumerate().all(|(k, &(s, t))| {
            maps[t].mul(&a.mats[k], p) == b.mats[k].mul(&maps[s], p)
        });
        if ok {
            out.push(maps);
        }
    }
    out
}

/// Image and kernel of a homomorphism as subspace tuples (RREF rows).
pub fn image_and_kernel(quiver: &Quiver, maps: &[Mat]) -> (Vec<Mat>, Vec<Mat>) {
    let p = quiver.p;
    let image = maps.iter().map(|m| ff::row_space(&m.transpose(), p)).collect();
    let kernel = maps.iter().map(|m| ff::row_space(&ff::kernel(m, p), p)).collect();
    (image, kernel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn kronecker_class_counts() {
        let k = Quiver::kronecker(2).unwrap();
        // dim (1,1): pencils (a,b) up to scaling: zero plus P^1(F_2) = 1 + 3
        assert_eq!(k.classes(&[1, 1]).unwrap().len(), 4);
        assert_eq!(k.classes(&[1, 0]).unwrap().len(), 1);
    }

    #[test]
    fn euler_form_kronecker() {
        let k = Quiver::kronecker(2).unwrap();
        assert_eq!(k.euler_chi(&KClass(vec![1, 0]), &KClass(vec![0, 1])), -2);
        assert_eq!(k.euler_chi(&KClass(vec![0, 1]), &KClass(vec![1, 0])), 0);
    }

    #[test]
    fn simple_subquotients() {
        let k = Quiver::kronecker(2).unwrap();
        let s1 = ObjLabel::Quiver(k.simple(0));
        let sq = k.subquotients(&s1, &Window::dims(3)).unwrap();
        assert_eq!(sq.len(), 2);
        assert!(sq.iter().all(|(_, _, g)| *g == BigInt::from(1)));
    }

    #[test]
    fn aut_orders_by_orbit() {
        let k = Quiver::kronecker(3).unwrap();
        assert_eq!(k.rep_aut_order(&k.zero_rep(&[2, 0])).unwrap(), 48.into());
        let a2 = Quiver::a2(2).unwrap();
        let mut r = a2.zero_rep(&[1, 1]);
        r.mats[0].set(0, 0, 1);
        assert_eq!(a2.rep_aut_order(&r).unwrap(), 1.into());
    }

    /// Independent engine: injective homomorphisms A → C with cokernel ≅ B,
    /// divided by |Aut A|.
    fn brute_hall(k: &Quiver, a: &QuiverRep, b: &QuiverRep, c: &QuiverRep) -> BigInt {
        let mut count = BigInt::zero();
        for maps in brute_homs(k, a, c) {
            if maps.iter().zip(&a.dims).any(|(m, &d)| m.rank(k.p) != d) {
                continue;
            }
            let (image, _) = image_and_kernel(k, &maps);
            if let Some((_, quo)) = k.split(c, &image).unwrap() {
                if quo == *b {
                    count += 1;
                }
            }
        }
        count / k.rep_aut_order(a).unwrap()
    }

    #[test]
    fn hall_numbers_match_hom_enumeration() {
        for k in [Quiver::kronecker(2).unwrap(), Quiver::a2(2).unwrap(), Quiver::a2(3).unwrap()] {
            let w = Window::dims(3);
            for kc in k.window_classes(&w) {
                for c in k.objects_of_class(&kc, &w).unwrap() {
                    let ObjLabel::Quiver(rc) = &c else { unreachable!() };
                    for (a, b, g) in k.subquotients(&c, &w).unwrap() {
                        let (ObjLabel::Quiver(ra), ObjLabel::Quiver(rb)) = (&a, &b) else { unreachable!() };
                        assert_eq!(brute_hall(&k, ra, rb, rc), g, "{a} {b} {c}");
                    }
                }
            }
        }
    }
}
