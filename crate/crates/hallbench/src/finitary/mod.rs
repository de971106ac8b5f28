//! Category backends: canonical object labels, Grothendieck classes, Euler
//! form, automorphism counts and Hall numbers by exact counting.

pub mod cohp1;
pub mod ff;
pub mod quiver;
pub mod torsion;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalars::{Rational, Scalar};

pub use cohp1::{CohP1, PointLabel, Sheaf};
pub use quiver::{Quiver, QuiverRep};
pub use torsion::{Partition, TorsionLocal};

/// Element of the Grothendieck group: (rank, degree) for sheaves, the
/// dimension vector for quivers, the length for a single point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KClass(pub Vec<i64>);

impl KClass {
    pub fn zero(n: usize) -> KClass {
        KClass(vec![0; n])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn scale(&self, k: i64) -> KClass {
        KClass(self.0.iter().map(|x| x * k).collect())
    }
}

impl Add for &KClass {
    type Output = KClass;
    fn add(self, o: &KClass) -> KClass {
        KClass(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &KClass {
    type Output = KClass;
    fn sub(self, o: &KClass) -> KClass {
        KClass(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &KClass {
    type Output = KClass;
    fn neg(self) -> KClass {
        KClass(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Finite slice of a backend. For sheaves: rank cap, bounds on each bundle
/// summand degree and a cap on h⁰ of the torsion part. For quivers
/// `max_rank` caps the total dimension; for a single point `max_torsion`
/// caps the length.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub max_rank: i64,
    pub min_deg: i64,
    pub max_deg: i64,
    pub max_torsion: i64,
}

impl Window {
    pub fn new(max_rank: i64, min_deg: i64, max_deg: i64, max_torsion: i64) -> Result<Window> {
        if min_deg > max_deg || max_rank < 0 || max_torsion < 0 {
            return Err(Error::Precondition("empty window".into()));
        }
        Ok(Window { max_rank, min_deg, max_deg, max_torsion })
    }

    pub fn torsion(max_torsion: i64) -> Window {
        Window { max_rank: 0, min_deg: 0, max_deg: 0, max_torsion }
    }

    pub fn dims(total: i64) -> Window {
        Window { max_rank: total, min_deg: 0, max_deg: 0, max_torsion: 0 }
    }
}

/// Canonical isomorphism-class label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ObjLabel {
    Sheaf(Sheaf),
    Local(Partition),
    Quiver(QuiverRep),
}

impl ObjLabel {
    pub fn is_zero(&self) -> bool {
        match self {
            ObjLabel::Sheaf(s) => s.is_zero(),
            ObjLabel::Local(p) => p.is_empty(),
            ObjLabel::Quiver(r) => r.dims.iter().all(|&d| d == 0),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            ObjLabel::Sheaf(s) => s.to_json(),
            ObjLabel::Local(p) => json!({"backend": "torsion-local", "lam": p.0}),
            ObjLabel::Quiver(r) => r.to_json(),
        }
    }

    /// Point labels are only meaningful over a given prime, hence `p`.
    pub fn from_json(v: &Value, p: u32) -> Result<ObjLabel> {
        match v.get("backend").and_then(|b| b.as_str()) {
            Some("coh-p1") => Ok(ObjLabel::Sheaf(Sheaf::from_json(v, p)?)),
            Some("torsion-local") => {
                let lam: Vec<u32> = serde_json::from_value(v.get("lam").cloned().unwrap_or(json!([])))
                    .map_err(|e| Error::Parse(e.to_string()))?;
                Ok(ObjLabel::Local(Partition::new(lam)?))
            }
            Some("quiver") => Ok(ObjLabel::Quiver(QuiverRep::from_json(v)?)),
            other => Err(Error::Parse(format!("unknown backend {other:?}"))),
        }
    }
}

impl fmt::Display for ObjLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjLabel::Sheaf(s) => write!(f, "{s}"),
            ObjLabel::Local(p) => write!(f, "F{p}"),
            ObjLabel::Quiver(r) => write!(f, "{r}"),
        }
    }
}

/// A finitary abelian category of homological dimension ≤ 1 over F_q.
pub trait Category: Send + Sync {
    fn backend(&self) -> &'static str;

    /// Size of the base field; the coefficient field is Q(√q).
    fn q(&self) -> u64;

    fn zero_obj(&self) -> ObjLabel;

    fn zero_class(&self) -> KClass;

    fn class_of(&self, a: &ObjLabel) -> Result<KClass>;

    /// Integer χ with ⟨A,B⟩ = v^χ.
    fn euler_chi(&self, a: &KClass, b: &KClass) -> i64;

    fn aut_order(&self, a: &ObjLabel) -> Result<BigInt>;

    /// Σ_C g^C_{AB} [C], sorted by label.
    fn hall_product(&self, a: &ObjLabel, b: &ObjLabel) -> Result<Vec<(ObjLabel, BigInt)>>;

    /// Every class that an object of the window can have.
    fn window_classes(&self, w: &Window) -> Vec<KClass>;

    /// All objects of class `k` inside the window.
    fn objects_of_class(&self, k: &KClass, w: &Window) -> Result<Vec<ObjLabel>>;

    fn in_window(&self, a: &ObjLabel, w: &Window) -> bool;

    /// All (A, B, g^C_{AB}) with g ≠ 0 and A, B in the window.
    fn subquotients(&self, c: &ObjLabel, w: &Window) -> Result<Vec<(ObjLabel, ObjLabel, BigInt)>> {
        generic_subquotients(self, c, w)
    }

    /// Whether the window contains every subobject and quotient of `c`.
    fn subquotients_complete(&self, c: &ObjLabel, w: &Window) -> bool;
}

pub fn generic_subquotients<C: Category + ?Sized>(
    cat: &C,
    c: &ObjLabel,
    w: &Window,
) -> Result<Vec<(ObjLabel, ObjLabel, BigInt)>> {
    let kc = cat.class_of(c)?;
    let mut out = Vec::new();
    for ka in cat.window_classes(w) {
        let kb = &kc - &ka;
        if !cat.window_classes(w).contains(&kb) {
            continue;
        }
        for a in cat.objects_of_class(&ka, w)? {
            for b in cat.objects_of_class(&kb, w)? {
                let g = hall_number(cat, &a, &b, c)?;
                if !g.is_zero() {
                    out.push((a.clone(), b, g));
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// g^C_{AB}: the number of subobjects A′ ⊂ C with A′ ≅ A and C/A′ ≅ B.
pub fn hall_number<C: Category + ?Sized>(cat: &C, a: &ObjLabel, b: &ObjLabel, c: &ObjLabel) -> Result<BigInt> {
    let ka = cat.class_of(a)?;
    let kb = cat.class_of(b)?;
    if &ka + &kb != cat.class_of(c)? {
        return Ok(BigInt::zero());
    }
    Ok(cat
        .hall_product(a, b)?
        .into_iter()
        .find(|(x, _)| x == c)
        .map(|(_, g)| g)
        .unwrap_or_default())
}

/// Orbifold count of exact sequences 0→M→B→A→N→0:
/// Σ_L g^B_{ML} g^A_{LN} |Aut M||Aut N||Aut L| / (|Aut A||Aut B|).
pub fn g_four<C: Category + ?Sized>(
    cat: &C,
    a: &ObjLabel,
    b: &ObjLabel,
    m: &ObjLabel,
    n: &ObjLabel,
    w: &Window,
) -> Result<Scalar> {
    let q = cat.q();
    let (ka, kb, km, kn) = (cat.class_of(a)?, cat.class_of(b)?, cat.class_of(m)?, cat.class_of(n)?);
    let kl = &kb - &km;
    if &ka - &kn != kl {
        return Ok(Scalar::zero(q));
    }
    let mut total = Rational::zero();
    let den = cat.aut_order(a)? * cat.aut_order(b)?;
    for l in cat.objects_of_class(&kl, w)? {
        let g1 = hall_number(cat, m, &l, b)?;
        if g1.is_zero() {
            continue;
        }
        let g2 = hall_number(cat, &l, n, a)?;
        if g2.is_zero() {
            continue;
        }
        let num = g1 * g2 * cat.aut_order(m)? * cat.aut_order(n)? * cat.aut_order(&l)?;
        total += Rational::new(num, den.clone());
    }
    Ok(Scalar::rational(total, q))
}

/// The Grothendieck class of a direct sum is the sum of classes.
pub fn class_sum<C: Category + ?Sized>(cat: &C, objs: &[ObjLabel]) -> Result<KClass> {
    let mut k = cat.zero_class();
    for o in objs {
        k = &k + &cat.class_of(o)?;
    }
    Ok(k)
}

/// Sums duplicate labels and drops zeros.
pub fn collect_terms(terms: impl IntoIterator<Item = (ObjLabel, BigInt)>) -> Vec<(ObjLabel, BigInt)> {
    let mut m: BTreeMap<ObjLabel, BigInt> = BTreeMap::new();
    for (k, v) in terms {
        *m.entry(k).or_default() += v;
    }
    m.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

