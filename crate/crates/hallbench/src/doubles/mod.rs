//! Heisenberg and Drinfeld doubles of extended Hall algebras.
//!
//! Concrete normal forms, all keyed by [`DKey`]:
//! HD: Z⁻_A K_α K^χ Z⁺_B, ȞD: Ž⁺_B Ǩ_α Ǩ^χ Ž⁻_A, DD: W⁺_B K_α K^χ W⁻_A,
//! where A is `minus` and B is `plus`. In terms of the generic generators
//! Z⁺_A = Z_{0A}, Z⁻_A = Σ_β Z^{βA}/|Aut A|, K_α = Z_{α0} and
//! K^χ = Σ_β χ(β) Z^{β0}. Characters are v^{a·β} for an integer vector a.
//! Lower Cartan classes are stored doubled so that square roots of
//! central classes are available. DD products are taken through the
//! Kashaev embedding into HD ⊗ ȞD.

pub mod generic;
pub mod p1;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::finitary::quiver::{brute_homs, image_and_kernel};
use crate::finitary::{hall_number, Category, CohP1, KClass, ObjLabel, Quiver, QuiverRep, Sheaf, Window};
use crate::hallhopf::AlgElem;
use crate::scalars::{Rational, Scalar};

/// The character β ↦ v^{a·β} of the Grothendieck group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChiTag(pub Vec<i64>);

impl ChiTag {
    pub fn trivial(n: usize) -> ChiTag {
        ChiTag(vec![0; n])
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

impl Add for &ChiTag {
    type Output = ChiTag;
    fn add(self, o: &ChiTag) -> ChiTag {
        ChiTag(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Neg for &ChiTag {
    type Output = ChiTag;
    fn neg(self) -> ChiTag {
        ChiTag(self.0.iter().map(|a| -a).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    Heis,
    HeisCheck,
    Drinfeld,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Heis => "heis",
            Variant::HeisCheck => "heis-check",
            Variant::Drinfeld => "drinfeld",
        }
    }

    pub fn parse(s: &str) -> Result<Variant> {
        match s {
            "heis" => Ok(Variant::Heis),
            "heis-check" => Ok(Variant::HeisCheck),
            "drinfeld" => Ok(Variant::Drinfeld),
            _ => Err(Error::Parse(format!("unknown double variant {s}"))),
        }
    }
}

/// One normal-form word; `lower2` is twice the lower Cartan class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DKey {
    pub minus: ObjLabel,
    pub lower2: KClass,
    pub upper: ChiTag,
    pub plus: ObjLabel,
}

fn fmt_key(k: &DKey, v: Variant, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let (m, p, c) = match v {
        Variant::Heis => ("Z-", "Z+", "K"),
        Variant::HeisCheck => ("Ž-", "Ž+", "Ǩ"),
        Variant::Drinfeld => ("W-", "W+", "K"),
    };
    let mut parts = Vec::new();
    let minus = (!k.minus.is_zero()).then(|| format!("{m}[{}]", k.minus));
    let plus = (!k.plus.is_zero()).then(|| format!("{p}[{}]", k.plus));
    let mut cartan = Vec::new();
    if !k.lower2.is_zero() {
        let halves: Vec<String> = k.lower2.0.iter().map(|x| if x % 2 == 0 { (x / 2).to_string() } else { format!("{x}/2") }).collect();
        cartan.push(format!("{c}_({})", halves.join(",")));
    }
    if !k.upper.is_trivial() {
        let a: Vec<String> = k.upper.0.iter().map(|x| x.to_string()).collect();
        cartan.push(format!("{c}^<{}>", a.join(",")));
    }
    let cartan = (!cartan.is_empty()).then(|| cartan.join(""));
    match v {
        Variant::Heis => parts.extend([minus, cartan, plus]),
        _ => parts.extend([plus, cartan, minus]),
    }
    let parts: Vec<String> = parts.into_iter().flatten().collect();
    if parts.is_empty() {
        write!(f, "1")
    } else {
        write!(f, "{}", parts.join("·"))
    }
}

fn key_json(k: &DKey) -> Value {
    json!([
        {"side": "minus", "obj": k.minus.to_json()},
        {"side": "cartan", "lower2": k.lower2.0, "upper": k.upper.0},
        {"side": "plus", "obj": k.plus.to_json()},
    ])
}

fn add_term<K: Ord + Clone>(m: &mut BTreeMap<K, Scalar>, k: K, c: Scalar) {
    generic::add_to(m, k, c)
}

/// Element of one of the doubles, in normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleElem {
    pub variant: Variant,
    q: u64,
    terms: BTreeMap<DKey, Scalar>,
}

impl DoubleElem {
    pub fn zero(variant: Variant, q: u64) -> DoubleElem {
        DoubleElem { variant, q, terms: BTreeMap::new() }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn add_term(&mut self, k: DKey, c: &Scalar) {
        add_term(&mut self.terms, k, c.clone());
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DKey, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &DKey) -> Scalar {
        self.terms.get(k).cloned().unwrap_or_else(|| Scalar::zero(self.q))
    }

    pub fn scale(&self, c: &Scalar) -> DoubleElem {
        let mut out = DoubleElem::zero(self.variant, self.q);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), &(v * c));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self.terms.iter().map(|(k, c)| json!({"word": key_json(k), "coef": c.to_string()})).collect();
        json!({"double": self.variant.name(), "terms": terms})
    }
}

impl Add for &DoubleElem {
    type Output = DoubleElem;
    fn add(self, o: &DoubleElem) -> DoubleElem {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), c);
        }
        out
    }
}

impl Sub for &DoubleElem {
    type Output = DoubleElem;
    fn sub(self, o: &DoubleElem) -> DoubleElem {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), &-c);
        }
        out
    }
}

impl fmt::Display for DoubleElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})·")?;
            fmt_key(k, self.variant, f)?;
        }
        Ok(())
    }
}

/// Element of HD ⊗ ȞD.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleTensor {
    q: u64,
    terms: BTreeMap<(DKey, DKey), Scalar>,
}

impl DoubleTensor {
    pub fn zero(q: u64) -> DoubleTensor {
        DoubleTensor { q, terms: BTreeMap::new() }
    }

    pub fn pure(x: &DoubleElem, y: &DoubleElem) -> DoubleTensor {
        let mut out = DoubleTensor::zero(x.q);
        for (kx, cx) in &x.terms {
            for (ky, cy) in &y.terms {
                out.add_term(kx.clone(), ky.clone(), &(cx * cy));
            }
        }
        out
    }

    pub fn add_term(&mut self, l: DKey, r: DKey, c: &Scalar) {
        add_term(&mut self.terms, (l, r), c.clone());
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(DKey, DKey), &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> DoubleTensor {
        let mut out = DoubleTensor::zero(self.q);
        for ((l, r), v) in &self.terms {
            out.add_term(l.clone(), r.clone(), &(v * c));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|((l, r), c)| json!({"left": key_json(l), "right": key_json(r), "coef": c.to_string()}))
            .collect();
        json!({"double": "heis⊗heis-check", "terms": terms})
    }
}

impl Add for &DoubleTensor {
    type Output = DoubleTensor;
    fn add(self, o: &DoubleTensor) -> DoubleTensor {
        let mut out = self.clone();
        for ((l, r), c) in &o.terms {
            out.add_term(l.clone(), r.clone(), c);
        }
        out
    }
}

impl Sub for &DoubleTensor {
    type Output = DoubleTensor;
    fn sub(self, o: &DoubleTensor) -> DoubleTensor {
        self + &o.scale(&Scalar::int(-1, self.q))
    }
}

impl fmt::Display for DoubleTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((l, r), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})·")?;
            fmt_key(l, Variant::Heis, f)?;
            write!(f, " ⊗ ")?;
            fmt_key(r, Variant::HeisCheck, f)?;
        }
        Ok(())
    }
}

/// Kashaev image of a DD element, possibly truncated. `pieces` maps each
/// bigrade (HD grade, ȞD grade) that the untruncated image can reach to
/// whether the stored coefficients in that bigrade are exact.
#[derive(Clone, Debug)]
pub struct Image {
    pub tensor: DoubleTensor,
    pub pieces: BTreeMap<(KClass, KClass), bool>,
}

impl Image {
    fn merge_piece(pieces: &mut BTreeMap<(KClass, KClass), bool>, g: (KClass, KClass), exact: bool) {
        let e = pieces.entry(g).or_insert(true);
        *e = *e && exact;
    }

    pub fn sub(&self, o: &Image) -> Image {
        let mut pieces = self.pieces.clone();
        for (g, e) in &o.pieces {
            Image::merge_piece(&mut pieces, g.clone(), *e);
        }
        Image { tensor: &self.tensor - &o.tensor, pieces }
    }

    pub fn add(&self, o: &Image) -> Image {
        let mut pieces = self.pieces.clone();
        for (g, e) in &o.pieces {
            Image::merge_piece(&mut pieces, g.clone(), *e);
        }
        Image { tensor: &self.tensor + &o.tensor, pieces }
    }

    pub fn scale(&self, c: &Scalar) -> Image {
        Image { tensor: self.tensor.scale(c), pieces: self.pieces.clone() }
    }

    pub(crate) fn exact_at(&self, g: &(KClass, KClass)) -> bool {
        self.pieces.get(g).copied().unwrap_or(true)
    }
}

/// Cached data of the four-term exact sequences 0→M→B→A→N→0 behind the
/// cross relations: (M, N, L̄ = B̄ − M̄, orbifold count).
#[derive(Clone, Debug)]
pub struct Cross {
    pub m: ObjLabel,
    pub n: ObjLabel,
    pub l: KClass,
    pub count: Scalar,
}

/// Concrete restricted doubles of the extended Hall algebra of `cat`.
pub struct DoubleAlg<'a> {
    pub cat: &'a dyn Category,
    p1: Option<&'a CohP1>,
    pub window: Window,
    cross: Mutex<HashMap<(ObjLabel, ObjLabel), Arc<Vec<Cross>>>>,
    ringel: Mutex<HashMap<(ObjLabel, ObjLabel), Arc<Vec<(ObjLabel, Scalar)>>>>,
}

impl<'a> DoubleAlg<'a> {
    /// Backends other than P¹ need every object they multiply to have all
    /// subobjects inside `window`.
    pub fn new(cat: &'a dyn Category, window: Window) -> DoubleAlg<'a> {
        DoubleAlg { cat, p1: None, window, cross: Mutex::new(HashMap::new()), ringel: Mutex::new(HashMap::new()) }
    }

    /// On P¹ cross relations size their own windows; `window` is only used
    /// for enumerations requested by callers.
    pub fn p1(cat: &'a CohP1, window: Window) -> DoubleAlg<'a> {
        DoubleAlg { cat, p1: Some(cat), window, cross: Mutex::new(HashMap::new()), ringel: Mutex::new(HashMap::new()) }
    }

    pub fn q(&self) -> u64 {
        self.cat.q()
    }

    fn dim(&self) -> usize {
        self.cat.zero_class().0.len()
    }

    fn v(&self, k: i64) -> Scalar {
        Scalar::v_pow(k, self.q())
    }

    pub fn class(&self, a: &ObjLabel) -> Result<KClass> {
        self.cat.class_of(a)
    }

    fn sym(&self, a: &KClass, b: &KClass) -> i64 {
        self.cat.euler_chi(a, b) + self.cat.euler_chi(b, a)
    }

    fn aut(&self, a: &ObjLabel) -> Result<Rational> {
        Ok(Rational::from_integer(self.cat.aut_order(a)?))
    }

    /// Exponent e with (ā|α) = v^e, for α given doubled.
    fn form_half(&self, a: &KClass, lower2: &KClass) -> Result<i64> {
        let s = self.sym(a, lower2);
        if s % 2 != 0 {
            return Err(Error::Precondition(format!("(·|·) of {a} with half class {lower2}/2 is not a power of v")));
        }
        Ok(s / 2)
    }

    fn chi(&self, tag: &ChiTag, k: &KClass) -> i64 {
        tag.0.iter().zip(&k.0).map(|(a, b)| a * b).sum()
    }

    fn chi_half(&self, tag: &ChiTag, lower2: &KClass) -> Result<i64> {
        let s = self.chi(tag, lower2);
        if s % 2 != 0 {
            return Err(Error::Precondition(format!("character {:?} at half class {lower2}/2 is not a power of v", tag.0)));
        }
        Ok(s / 2)
    }

    /// The character (α|·) as a tag.
    pub fn tag_of(&self, k: &KClass) -> ChiTag {
        let n = self.dim();
        ChiTag(
            (0..n)
                .map(|i| {
                    let mut e = KClass::zero(n);
                    e.0[i] = 1;
                    self.sym(k, &e)
                })
                .collect(),
        )
    }

    pub fn key(&self, minus: ObjLabel, lower: &KClass, upper: ChiTag, plus: ObjLabel) -> DKey {
        DKey { minus, lower2: lower.scale(2), upper, plus }
    }

    fn unit_key(&self) -> DKey {
        DKey { minus: self.cat.zero_obj(), lower2: self.cat.zero_class(), upper: ChiTag::trivial(self.dim()), plus: self.cat.zero_obj() }
    }

    pub fn one(&self, variant: Variant) -> DoubleElem {
        let mut e = DoubleElem::zero(variant, self.q());
        e.add_term(self.unit_key(), &Scalar::one(self.q()));
        e
    }

    pub fn plus(&self, variant: Variant, a: ObjLabel) -> DoubleElem {
        let mut e = DoubleElem::zero(variant, self.q());
        e.add_term(DKey { plus: a, ..self.unit_key() }, &Scalar::one(self.q()));
        e
    }

    pub fn minus(&self, variant: Variant, a: ObjLabel) -> DoubleElem {
        let mut e = DoubleElem::zero(variant, self.q());
        e.add_term(DKey { minus: a, ..self.unit_key() }, &Scalar::one(self.q()));
        e
    }

    /// K_α K^χ with α given doubled.
    pub fn cartan2(&self, variant: Variant, lower2: KClass, upper: ChiTag) -> DoubleElem {
        let mut e = DoubleElem::zero(variant, self.q());
        e.add_term(DKey { lower2, upper, ..self.unit_key() }, &Scalar::one(self.q()));
        e
    }

    pub fn cartan(&self, variant: Variant, lower: &KClass, upper: ChiTag) -> DoubleElem {
        self.cartan2(variant, lower.scale(2), upper)
    }

    /// The upper Cartan element K^α = K^χ for χ = (α|·).
    pub fn upper_of(&self, variant: Variant, k: &KClass) -> DoubleElem {
        self.cartan2(variant, self.cat.zero_class(), self.tag_of(k))
    }

    /// Embeds Σ c K_κ[A] as Σ c K_κ X_A with X = W⁺, Z⁺ or Ž⁺ (plus) or the
    /// minus generators.
    pub fn embed(&self, variant: Variant, x: &AlgElem, plus: bool) -> DoubleElem {
        let mut out = DoubleElem::zero(variant, self.q());
        for ((k, a), c) in x.terms() {
            let base = DKey { lower2: k.scale(2), ..self.unit_key() };
            let key = if plus { DKey { plus: a.clone(), ..base } } else { DKey { minus: a.clone(), ..base } };
            out.add_term(key, c);
        }
        out
    }

    /// ⟨B,A⟩ Σ g^C_{AB} [C].
    fn ringel_terms(&self, a: &ObjLabel, b: &ObjLabel) -> Result<Arc<Vec<(ObjLabel, Scalar)>>> {
        let key = (a.clone(), b.clone());
        if let Some(r) = self.ringel.lock().unwrap().get(&key) {
            return Ok(r.clone());
        }
        let e = self.v(self.cat.euler_chi(&self.class(b)?, &self.class(a)?));
        let terms: Vec<(ObjLabel, Scalar)> = self
            .cat
            .hall_product(a, b)?
            .into_iter()
            .map(|(c, g)| (c, e.scale_rational(&Rational::from_integer(g))))
            .collect();
        let arc = Arc::new(terms);
        self.ringel.lock().unwrap().insert(key, arc.clone());
        Ok(arc)
    }

    /// Four-term data for M ⊂ B, L = B/M ⊂ A, N = A/L, summed over the
    /// isomorphism class of L.
    pub fn cross_terms(&self, a: &ObjLabel, b: &ObjLabel) -> Result<Arc<Vec<Cross>>> {
        let key = (a.clone(), b.clone());
        if let Some(r) = self.cross.lock().unwrap().get(&key) {
            return Ok(r.clone());
        }
        let raw = match (self.p1, a, b) {
            (Some(c), ObjLabel::Sheaf(sa), ObjLabel::Sheaf(sb)) => p1_four_terms(c, sa, sb)?,
            _ => self.windowed_four_terms(a, b)?,
        };
        let den = self.aut(a)? * self.aut(b)?;
        let kb = self.class(b)?;
        let mut acc: BTreeMap<(ObjLabel, ObjLabel), Rational> = BTreeMap::new();
        for (m, l, n, g1, g2) in raw {
            let r = Rational::from_integer(g1 * g2) * self.aut(&m)? * self.aut(&n)? * self.aut(&l)? / &den;
            *acc.entry((m, n)).or_insert_with(Rational::zero) += r;
        }
        let mut out = Vec::new();
        for ((m, n), r) in acc {
            if r.is_zero() {
                continue;
            }
            let l = &kb - &self.class(&m)?;
            out.push(Cross { m, n, l, count: Scalar::rational(r, self.q()) });
        }
        let arc = Arc::new(out);
        self.cross.lock().unwrap().insert(key, arc.clone());
        Ok(arc)
    }

    fn windowed_four_terms(&self, a: &ObjLabel, b: &ObjLabel) -> Result<Vec<(ObjLabel, ObjLabel, ObjLabel, BigInt, BigInt)>> {
        for x in [a, b] {
            if !self.cat.subquotients_complete(x, &self.window) {
                return Err(Error::WindowInsufficient(format!("subobjects of {x} leave the window")));
            }
        }
        let subs_a = self.cat.subquotients(a, &self.window)?;
        let mut out = Vec::new();
        for (m, l, g1) in self.cat.subquotients(b, &self.window)? {
            for (l2, n, g2) in &subs_a {
                if *l2 == l {
                    out.push((m.clone(), l.clone(), n.clone(), g1.clone(), g2.clone()));
                }
            }
        }
        Ok(out)
    }

    /// HD: (Z⁻_A K_α K^χ Z⁺_B)(Z⁻_C K_β K^ψ Z⁺_D).
    fn heis_words(&self, x: &DKey, y: &DKey, out: &mut BTreeMap<DKey, Scalar>, c: &Scalar) -> Result<()> {
        for cr in self.cross_terms(&x.plus, &y.minus)?.iter() {
            let (km, kn) = (self.class(&cr.m)?, self.class(&cr.n)?);
            // Z⁺_B Z⁻_C = Σ ⟨L,M⟩⟨N,L⟩ g Z⁻_M K_L Z⁺_N
            let mut e = self.cat.euler_chi(&cr.l, &km) + self.cat.euler_chi(&kn, &cr.l);
            // K_α K^χ past Z⁻_M, K^χ past K_L, Z⁺_N past K_β, K^χ past K_β
            e += self.form_half(&km, &x.lower2)? - self.chi(&x.upper, &km);
            e -= self.chi(&x.upper, &cr.l);
            e += self.form_half(&kn, &y.lower2)?;
            e -= self.chi_half(&x.upper, &y.lower2)?;
            let coef = &(c * &cr.count) * &self.v(e);
            let lower2 = &(&x.lower2 + &cr.l.scale(2)) + &y.lower2;
            let upper = &x.upper + &y.upper;
            let left = self.ringel_terms(&x.minus, &cr.m)?;
            let right = self.ringel_terms(&cr.n, &y.plus)?;
            for (e1, c1) in left.iter() {
                for (f1, c2) in right.iter() {
                    let k = DKey { minus: e1.clone(), lower2: lower2.clone(), upper: upper.clone(), plus: f1.clone() };
                    add_term(out, k, &coef * &(c1 * c2));
                }
            }
        }
        Ok(())
    }

    /// ȞD: (Ž⁺_A Ǩ_α Ǩ^χ Ž⁻_B)(Ž⁺_C Ǩ_β Ǩ^ψ Ž⁻_D).
    fn check_words(&self, x: &DKey, y: &DKey, out: &mut BTreeMap<DKey, Scalar>, c: &Scalar) -> Result<()> {
        for cr in self.cross_terms(&x.minus, &y.plus)?.iter() {
            let (km, kn) = (self.class(&cr.m)?, self.class(&cr.n)?);
            // Ž⁻_B Ž⁺_C = Σ ⟨L,M⟩⟨N,L⟩ g Ž⁺_M Ǩ^L Ž⁻_N
            let mut e = self.cat.euler_chi(&cr.l, &km) + self.cat.euler_chi(&kn, &cr.l);
            // Ǩ_α Ǩ^χ past Ž⁺_M, Ž⁻_N past Ǩ^ψ, Ǩ^{χ·L} past Ǩ_β
            e += self.chi(&x.upper, &km) - self.form_half(&km, &x.lower2)?;
            e += self.chi(&y.upper, &kn);
            let chi_l = &x.upper + &self.tag_of(&cr.l);
            e += self.chi_half(&chi_l, &y.lower2)?;
            let coef = &(c * &cr.count) * &self.v(e);
            let lower2 = &x.lower2 + &y.lower2;
            let upper = &chi_l + &y.upper;
            let left = self.ringel_terms(&x.plus, &cr.m)?;
            let right = self.ringel_terms(&cr.n, &y.minus)?;
            for (e1, c1) in left.iter() {
                for (f1, c2) in right.iter() {
                    let k = DKey { minus: f1.clone(), lower2: lower2.clone(), upper: upper.clone(), plus: e1.clone() };
                    add_term(out, k, &coef * &(c1 * c2));
                }
            }
        }
        Ok(())
    }

    /// Product in HD or ȞD. Drinfeld-double products go through [`Self::kappa`].
    pub fn mul(&self, x: &DoubleElem, y: &DoubleElem) -> Result<DoubleElem> {
        if x.variant != y.variant {
            return Err(Error::Precondition("factors live in different doubles".into()));
        }
        let mut out = BTreeMap::new();
        for (kx, cx) in &x.terms {
            for (ky, cy) in &y.terms {
                let c = cx * cy;
                match x.variant {
                    Variant::Heis => self.heis_words(kx, ky, &mut out, &c)?,
                    Variant::HeisCheck => self.check_words(kx, ky, &mut out, &c)?,
                    Variant::Drinfeld => {
                        return Err(Error::UnsupportedShape("Drinfeld double products are computed through the Kashaev embedding".into()))
                    }
                }
            }
        }
        Ok(DoubleElem { variant: x.variant, q: x.q, terms: out })
    }

    pub fn mul_all(&self, xs: &[&DoubleElem]) -> Result<DoubleElem> {
        let (first, rest) = xs.split_first().ok_or_else(|| Error::Precondition("empty product".into()))?;
        let mut acc = (*first).clone();
        for x in rest {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    pub fn commutator(&self, x: &DoubleElem, y: &DoubleElem) -> Result<DoubleElem> {
        Ok(&self.mul(x, y)? - &self.mul(y, x)?)
    }

    pub fn tensor_mul(&self, s: &DoubleTensor, t: &DoubleTensor) -> Result<DoubleTensor> {
        let q = self.q();
        let mut out = DoubleTensor::zero(q);
        for ((l1, r1), c1) in &s.terms {
            for ((l2, r2), c2) in &t.terms {
                let one = Scalar::one(q);
                let mut left = BTreeMap::new();
                self.heis_words(l1, l2, &mut left, &one)?;
                let mut right = BTreeMap::new();
                self.check_words(r1, r2, &mut right, &one)?;
                let c = c1 * c2;
                for (kl, cl) in &left {
                    for (kr, cr) in &right {
                        out.add_term(kl.clone(), kr.clone(), &(&c * &(cl * cr)));
                    }
                }
            }
        }
        Ok(out)
    }

    pub(crate) fn grade(&self, k: &DKey) -> Result<KClass> {
        Ok(&self.class(&k.plus)? - &self.class(&k.minus)?)
    }

    pub fn image_mul(&self, x: &Image, y: &Image) -> Result<Image> {
        let mut pieces = BTreeMap::new();
        for (g1, e1) in &x.pieces {
            for (g2, e2) in &y.pieces {
                Image::merge_piece(&mut pieces, (&g1.0 + &g2.0, &g1.1 + &g2.1), *e1 && *e2);
            }
        }
        Ok(Image { tensor: self.tensor_mul(&x.tensor, &y.tensor)?, pieces })
    }

    /// Subobject classes of `a` that the untruncated coproduct reaches, with
    /// whether the window `w` holds every subquotient pair of that class.
    /// Classes are listed down to `depth` steps below the window on P¹.
    fn sub_classes(&self, a: &ObjLabel, w: &Window, depth: i64) -> Result<Vec<(KClass, bool)>> {
        if let (Some(_), ObjLabel::Sheaf(s)) = (self.p1, a) {
            if s.rank() == 1 {
                let n = s.bundle[0];
                let t = s.torsion_h0();
                let mut out: Vec<(KClass, bool)> = (0..=t).map(|k| (KClass(vec![0, k]), true)).collect();
                for d in (n - w.max_torsion - depth..=n + t).rev() {
                    let exact = d - t >= w.min_deg && n + t - d <= w.max_torsion;
                    out.push((KClass(vec![1, d]), exact));
                }
                return Ok(out);
            }
        }
        if !self.cat.subquotients_complete(a, w) {
            return Err(Error::WindowInsufficient(format!("subobjects of {a} leave the window")));
        }
        let mut out: Vec<(KClass, bool)> = Vec::new();
        for (s, _, _) in self.cat.subquotients(a, w)? {
            let k = self.class(&s)?;
            if !out.iter().any(|(x, _)| *x == k) {
                out.push((k, true));
            }
        }
        Ok(out)
    }

    /// κ(W⁺_A) = Σ ⟨A″,A′⟩ |Aut A′||Aut A″|/|Aut A| g Z⁺_{A′} ⊗ Ǩ_{Ā′} Ž⁺_{A″},
    /// over subobjects A′ ⊂ A with A′, A″ in `w`.
    pub fn kappa_plus(&self, a: &ObjLabel, w: &Window) -> Result<Image> {
        let ka = self.class(a)?;
        let aut_a = self.aut(a)?;
        let mut t = DoubleTensor::zero(self.q());
        for (a1, a2, g) in self.cat.subquotients(a, w)? {
            let (k1, k2) = (self.class(&a1)?, self.class(&a2)?);
            let r = Rational::from_integer(g) * self.aut(&a1)? * self.aut(&a2)? / &aut_a;
            // Ǩ_{Ā′} Ž⁺_{A″} = (Ā″|Ā′)⁻¹ Ž⁺_{A″} Ǩ_{Ā′}
            let e = self.cat.euler_chi(&k2, &k1) - self.sym(&k2, &k1);
            let l = DKey { plus: a1.clone(), ..self.unit_key() };
            let r_key = DKey { plus: a2.clone(), lower2: k1.scale(2), ..self.unit_key() };
            t.add_term(l, r_key, &self.v(e).scale_rational(&r));
        }
        let pieces = self
            .sub_classes(a, w, 4)?
            .into_iter()
            .map(|(k, exact)| ((k.clone(), &ka - &k), exact))
            .collect();
        Ok(Image { tensor: t, pieces })
    }

    /// κ(W⁻_A) = Σ ⟨X,Y⟩ |Aut X||Aut Y|/|Aut A| g^A_{YX} K^Ȳ Z⁻_X ⊗ Ž⁻_Y, over
    /// subobjects Y ⊂ A with quotient X.
    pub fn kappa_minus(&self, a: &ObjLabel, w: &Window) -> Result<Image> {
        let ka = self.class(a)?;
        let aut_a = self.aut(a)?;
        let mut t = DoubleTensor::zero(self.q());
        for (y, x, g) in self.cat.subquotients(a, w)? {
            let (ky, kx) = (self.class(&y)?, self.class(&x)?);
            let r = Rational::from_integer(g) * self.aut(&x)? * self.aut(&y)? / &aut_a;
            // K^Ȳ Z⁻_X = (Ȳ|X̄)⁻¹ Z⁻_X K^Ȳ
            let e = self.cat.euler_chi(&kx, &ky) - self.sym(&ky, &kx);
            let l = DKey { minus: x.clone(), upper: self.tag_of(&ky), ..self.unit_key() };
            let r_key = DKey { minus: y.clone(), ..self.unit_key() };
            t.add_term(l, r_key, &self.v(e).scale_rational(&r));
        }
        let pieces = self
            .sub_classes(a, w, 4)?
            .into_iter()
            .map(|(k, exact)| ((-&(&ka - &k), -&k), exact))
            .collect();
        Ok(Image { tensor: t, pieces })
    }

    /// κ(K_α K^χ) = K_α K^χ ⊗ Ǩ_α Ǩ^χ.
    pub fn kappa_cartan(&self, lower2: &KClass, upper: &ChiTag) -> Image {
        let k = DKey { lower2: lower2.clone(), upper: upper.clone(), ..self.unit_key() };
        let mut t = DoubleTensor::zero(self.q());
        t.add_term(k.clone(), k, &Scalar::one(self.q()));
        let z = self.cat.zero_class();
        Image { tensor: t, pieces: BTreeMap::from([((z.clone(), z), true)]) }
    }

    /// κ of a DD element W⁺_B K_α K^χ W⁻_A, with the coproducts of line
    /// bundles truncated to `w`.
    pub fn kappa(&self, x: &DoubleElem, w: &Window) -> Result<Image> {
        if x.variant != Variant::Drinfeld {
            return Err(Error::Precondition("κ is defined on the Drinfeld double".into()));
        }
        let z = self.cat.zero_class();
        let mut out = Image { tensor: DoubleTensor::zero(self.q()), pieces: BTreeMap::from([((z.clone(), z), true)]) };
        out.pieces.clear();
        for (k, c) in &x.terms {
            let p = self.kappa_plus(&k.plus, w)?;
            let m = self.kappa_minus(&k.minus, w)?;
            let img = self.image_mul(&self.image_mul(&p, &self.kappa_cartan(&k.lower2, &k.upper))?, &m)?;
            out = out.add(&img.scale(c));
        }
        Ok(out)
    }

    /// κ(x)κ(y), the product in the Drinfeld double read in HD ⊗ ȞD.
    pub fn dd_mul(&self, x: &DoubleElem, y: &DoubleElem, w: &Window) -> Result<Image> {
        self.image_mul(&self.kappa(x, w)?, &self.kappa(y, w)?)
    }

    /// Compares two truncated images on the bigrades where both are exact.
    /// Returns (agree, compared terms, skipped terms).
    pub fn compare(&self, l: &Image, r: &Image) -> Result<(bool, usize, usize)> {
        let diff = &l.tensor - &r.tensor;
        let mut seen = 0;
        let mut skipped = 0;
        let mut agree = true;
        let all: BTreeMap<&(DKey, DKey), ()> = l.tensor.terms.keys().chain(r.tensor.terms.keys()).map(|k| (k, ())).collect();
        for (lk, rk) in all.keys() {
            let g = (self.grade(lk)?, self.grade(rk)?);
            if l.exact_at(&g) && r.exact_at(&g) {
                seen += 1;
                if diff.terms.contains_key(&(lk.clone(), rk.clone())) {
                    agree = false;
                }
            } else {
                skipped += 1;
            }
        }
        Ok((agree, seen, skipped))
    }

    /// Rewrites K^α into K_{−α} in the restricted doubles of P¹, where the
    /// rank component of a character tag is even. Other characters and
    /// backends are left untouched and reported as unsupported.
    pub fn restricted_identify(&self, x: &DoubleElem) -> Result<DoubleElem> {
        if self.p1.is_none() {
            return Err(Error::UnsupportedShape("restricted identification is implemented for P¹".into()));
        }
        let mut out = DoubleElem::zero(x.variant, x.q);
        for (k, c) in &x.terms {
            let a = k.upper.0[0];
            if a % 2 != 0 {
                return Err(Error::UnsupportedShape(format!("character {:?} is not of the form (α|·)·d(λ)", k.upper.0)));
            }
            let mut k2 = k.clone();
            k2.lower2.0[0] -= a;
            k2.upper.0[0] = 0;
            out.add_term(k2, c);
        }
        Ok(out)
    }
}

/// (M, L, N, g^B_{ML}, g^A_{LN}) on P¹ for M ⊂ B, L = B/M ⊂ A, N = A/L.
/// L is a quotient of B and a subsheaf of A, which bounds its summands by
/// the bundle summands of B from below and those of A from above and its
/// torsion by that of A. M and N are then bounded through their classes.
fn p1_four_terms(c: &CohP1, a: &Sheaf, b: &Sheaf) -> Result<Vec<(ObjLabel, ObjLabel, ObjLabel, BigInt, BigInt)>> {
    let (ra, rb) = (a.rank(), b.rank());
    let (ta, tb) = (a.torsion_h0(), b.torsion_h0());
    let lo_b = b.bundle.iter().copied().min();
    let hi_a = a.bundle.iter().copied().max();
    let wl = match (lo_b, hi_a) {
        (Some(lo), Some(hi)) if lo <= hi => Window::new(ra.min(rb), lo, hi, ta)?,
        _ => Window::torsion(ta),
    };
    let mut out = Vec::new();
    let (oa, ob) = (ObjLabel::Sheaf(a.clone()), ObjLabel::Sheaf(b.clone()));
    for kl in c.window_classes(&wl) {
        for l in c.sheaves_of_class(kl.0[0], kl.0[1], &wl) {
            let fits = l.torsion.iter().all(|(x, lam)| a.torsion.get(x).is_some_and(|m| lam.contained_in(m)));
            if !fits {
                continue;
            }
            let (rm, dm) = (rb - l.rank(), b.degree() - l.degree());
            let (rn, dn) = (ra - l.rank(), a.degree() - l.degree());
            if rm < 0 || rn < 0 {
                continue;
            }
            let wm = match b.bundle.iter().copied().max() {
                Some(hi) if rm > 0 => Window::new(rm, (dm - tb - (rm - 1) * hi).min(hi), hi, tb)?,
                _ if dm >= 0 => Window::torsion(dm),
                _ => continue,
            };
            let wn = match a.bundle.iter().copied().min() {
                Some(lo) if rn > 0 => Window::new(rn, lo, (dn - (rn - 1) * lo).max(lo), (dn - rn * lo).max(0))?,
                _ if dn >= 0 => Window::torsion(dn),
                _ => continue,
            };
            let ol = ObjLabel::Sheaf(l.clone());
            let ms: Vec<(ObjLabel, BigInt)> = c
                .sheaves_of_class(rm, dm, &wm)
                .into_iter()
                .map(|m| {
                    let om = ObjLabel::Sheaf(m);
                    let g = hall_number(c, &om, &ol, &ob)?;
                    Ok((om, g))
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .filter(|(_, g)| !g.is_zero())
                .collect();
            if ms.is_empty() {
                continue;
            }
            for n in c.sheaves_of_class(rn, dn, &wn) {
                let on = ObjLabel::Sheaf(n);
                let g2 = hall_number(c, &ol, &on, &oa)?;
                if g2.is_zero() {
                    continue;
                }
                for (m, g1) in &ms {
                    out.push((m.clone(), ol.clone(), on.clone(), g1.clone(), g2.clone()));
                }
            }
        }
    }
    Ok(out)
}

/// Four-term counts by brute force over Hom(B, A) of quiver
/// representations, keyed by (ker φ, coker φ). Maps φ with ker φ ≅ M and
/// coker φ ≅ N number Σ_L g^B_{ML} g^A_{LN} |Aut L|, so each count is
/// #{φ}·|Aut M||Aut N|/(|Aut A||Aut B|).
pub fn brute_four_terms(quiver: &Quiver, a: &QuiverRep, b: &QuiverRep) -> Result<BTreeMap<(QuiverRep, QuiverRep), Scalar>> {
    let mut counts: BTreeMap<(QuiverRep, QuiverRep), BigInt> = BTreeMap::new();
    for phi in brute_homs(quiver, b, a) {
        let (image, kernel) = image_and_kernel(quiver, &phi);
        let (Some((k, _)), Some((_, c))) = (quiver.split(b, &kernel)?, quiver.split(a, &image)?) else {
            return Err(Error::Precondition("kernel or image of a homomorphism is not a subrepresentation".into()));
        };
        *counts.entry((k, c)).or_default() += 1;
    }
    let den = quiver.rep_aut_order(a)? * quiver.rep_aut_order(b)?;
    let mut out = BTreeMap::new();
    for ((m, n), count) in counts {
        let r = Rational::new(count * quiver.rep_aut_order(&m)? * quiver.rep_aut_order(&n)?, den.clone());
        out.insert((m, n), Scalar::rational(r, quiver.p as u64));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::generic::{add_to, hd_mul, LazyBorel, Structure, Word};
    use super::*;
    use crate::finitary::g_four;
    use crate::hallhopf::{HallAlgebra, Key};

    fn inv_aut(d: &DoubleAlg, a: &ObjLabel) -> Scalar {
        Scalar::rational(d.aut(a).unwrap().recip(), d.q())
    }

    fn half(k: &KClass) -> KClass {
        KClass(k.0.iter().map(|x| x / 2).collect())
    }

    /// Slice at γ of Z⁻_M K_α K^χ Z⁺_N = Σ_γ χ(γ+M̄+α)/|Aut M| Z^{γM} Z_{αN}.
    fn heis_word(d: &DoubleAlg, k: &DKey, c: &Scalar, gamma: &KClass) -> ((Key, Key), Scalar) {
        let alpha = half(&k.lower2);
        let e = d.chi(&k.upper, &(&(gamma + &d.class(&k.minus).unwrap()) + &alpha));
        let coef = &(c * &d.v(e)) * &inv_aut(d, &k.minus);
        (((gamma.clone(), k.minus.clone()), (alpha, k.plus.clone())), coef)
    }

    fn heis_slice(d: &DoubleAlg, x: &DoubleElem, gamma: &KClass) -> Word<Key> {
        let mut out = Word::new();
        for (k, c) in x.terms() {
            let (w, s) = heis_word(d, k, c, gamma);
            add_to(&mut out, w, s);
        }
        out
    }

    /// The γ slice of xy computed with the generic cross rule. Only the
    /// slice γ + M̄ + α of y meets the term Z^{γM} Z_{αN} of x.
    fn generic_heis(s: &LazyBorel, d: &DoubleAlg, x: &DoubleElem, y: &DoubleElem, gamma: &KClass) -> Word<Key> {
        let mut out = Word::new();
        for (kx, cx) in x.terms() {
            let (wx, sx) = heis_word(d, kx, cx, gamma);
            let g2 = &(gamma + &d.class(&kx.minus).unwrap()) + &half(&kx.lower2);
            for (ky, cy) in y.terms() {
                let (wy, sy) = heis_word(d, ky, cy, &g2);
                let p = hd_mul(s, &Word::from([(wx.clone(), sx.clone())]), &Word::from([(wy, sy)])).unwrap();
                for (k, c) in p {
                    add_to(&mut out, k, c);
                }
            }
        }
        out
    }

    /// Slice at δ of Ž⁺_M Ǩ_α Ǩ^χ Ž⁻_N = Σ_δ (M̄|α) χ(δ)/|Aut N| Ž_{αM} Ž^{δN}.
    fn check_coef(d: &DoubleAlg, k: &DKey, c: &Scalar, delta: &KClass) -> Scalar {
        let alpha = half(&k.lower2);
        let e = d.sym(&d.class(&k.plus).unwrap(), &alpha) + d.chi(&k.upper, delta);
        &(c * &d.v(e)) * &inv_aut(d, &k.minus)
    }

    fn check_slice(d: &DoubleAlg, x: &DoubleElem, delta: &KClass) -> Word<Key> {
        let mut out = Word::new();
        for (k, c) in x.terms() {
            let w = ((half(&k.lower2), k.plus.clone()), (delta.clone(), k.minus.clone()));
            add_to(&mut out, w, check_coef(d, k, c, delta));
        }
        out
    }

    /// The δ slice of xy in ȞD from the generic cross rule
    /// Ž^c Ž_b = Σ μ_b^{a′b″} m^c_{b″f} Ž_{a′} Ž^f, where c is fixed by
    /// requiring f to sit at δ.
    fn generic_check(s: &LazyBorel, d: &DoubleAlg, x: &DoubleElem, y: &DoubleElem, delta: &KClass) -> Word<Key> {
        let mut out = Word::new();
        for (kx, cx) in x.terms() {
            let a = (half(&kx.lower2), kx.plus.clone());
            for (ky, cy) in y.terms() {
                let b = (half(&ky.lower2), ky.plus.clone());
                for (a1, b2, mu) in s.comul(&b).unwrap() {
                    let d1 = delta + &b2.0;
                    let sx = check_coef(d, kx, cx, &d1);
                    for (f, m) in s.right_factors(&(d1, kx.minus.clone()), &b2).unwrap() {
                        assert_eq!(&f.0, delta);
                        let dk = (&f.0 + &d.class(&f.1).unwrap(), ky.minus.clone());
                        let sy = check_coef(d, ky, cy, &dk.0);
                        let c = &(&sx * &sy) * &(&mu * &m);
                        for (g, k1) in s.mul(&a, &a1).unwrap() {
                            for (h, k2) in s.dual_mul(&f, &dk).unwrap() {
                                add_to(&mut out, (g.clone(), h), &c * &(&k1 * &k2));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    fn kronecker_generators(d: &DoubleAlg, quiver: &Quiver, variant: Variant, max_dim: usize) -> Vec<DoubleElem> {
        let mut objs = Vec::new();
        for dims in [[1, 0], [0, 1], [1, 1]] {
            if dims.iter().sum::<usize>() <= max_dim {
                objs.extend(quiver.classes(&dims).unwrap().into_iter().map(ObjLabel::Quiver));
            }
        }
        let mut out = Vec::new();
        for o in objs {
            out.push(d.plus(variant, o.clone()));
            out.push(d.minus(variant, o));
        }
        let e1 = KClass(vec![1, 0]);
        out.push(d.cartan(variant, &e1, ChiTag::trivial(2)));
        out.push(d.cartan(variant, &KClass::zero(2), ChiTag(vec![0, 1])));
        out.push(d.upper_of(variant, &e1));
        out
    }

    fn slices() -> Vec<KClass> {
        vec![KClass(vec![0, 0]), KClass(vec![1, 0]), KClass(vec![-1, 2])]
    }

    #[test]
    fn heis_products_match_generic_cross_rule() {
        let quiver = Quiver::kronecker(2).unwrap();
        let w = Window::dims(4);
        let d = DoubleAlg::new(&quiver, w);
        let alg = HallAlgebra::new(&quiver, w);
        let s = LazyBorel { alg: &alg };
        let gens = kronecker_generators(&d, &quiver, Variant::Heis, 2);
        for x in &gens {
            for y in &gens {
                let xy = d.mul(x, y).unwrap();
                for g in slices() {
                    assert_eq!(heis_slice(&d, &xy, &g), generic_heis(&s, &d, x, y, &g), "{x} · {y} at {g}");
                }
            }
        }
    }

    #[test]
    fn check_products_match_generic_cross_rule() {
        let quiver = Quiver::kronecker(2).unwrap();
        let w = Window::dims(4);
        let d = DoubleAlg::new(&quiver, w);
        let alg = HallAlgebra::new(&quiver, w);
        let s = LazyBorel { alg: &alg };
        let gens = kronecker_generators(&d, &quiver, Variant::HeisCheck, 2);
        for x in &gens {
            for y in &gens {
                let xy = d.mul(x, y).unwrap();
                for g in slices() {
                    assert_eq!(check_slice(&d, &xy, &g), generic_check(&s, &d, x, y, &g), "{x} · {y} at {g}");
                }
            }
        }
    }

    #[test]
    fn torsion_products_match_generic_cross_rule() {
        let cat = CohP1::new(2).unwrap();
        let w = Window::torsion(2);
        let d = DoubleAlg::p1(&cat, w);
        let alg = HallAlgebra::new(&cat, w);
        let s = LazyBorel { alg: &alg };
        let objs: Vec<ObjLabel> = (1..=2).flat_map(|h| cat.torsion_sheaves(h)).map(|t| ObjLabel::Sheaf(Sheaf::from_torsion(t))).collect();
        for variant in [Variant::Heis, Variant::HeisCheck] {
            let mut gens: Vec<DoubleElem> = objs.iter().flat_map(|o| [d.plus(variant, o.clone()), d.minus(variant, o.clone())]).collect();
            gens.push(d.cartan(variant, &KClass(vec![1, 0]), ChiTag::trivial(2)));
            gens.push(d.cartan(variant, &KClass::zero(2), ChiTag(vec![0, 1])));
            for x in &gens {
                for y in &gens {
                    let xy = d.mul(x, y).unwrap();
                    let g = KClass(vec![1, -1]);
                    let (l, r) = match variant {
                        Variant::Heis => (heis_slice(&d, &xy, &g), generic_heis(&s, &d, x, y, &g)),
                        _ => (check_slice(&d, &xy, &g), generic_check(&s, &d, x, y, &g)),
                    };
                    assert_eq!(l, r, "{x} · {y}");
                }
            }
        }
    }

    #[test]
    fn products_are_associative() {
        let quiver = Quiver::kronecker(2).unwrap();
        let d = DoubleAlg::new(&quiver, Window::dims(3));
        for variant in [Variant::Heis, Variant::HeisCheck] {
            let gens = kronecker_generators(&d, &quiver, variant, 1);
            for x in &gens {
                for y in &gens {
                    let xy = d.mul(x, y).unwrap();
                    for z in &gens {
                        let l = d.mul(&xy, z).unwrap();
                        let r = d.mul(x, &d.mul(y, z).unwrap()).unwrap();
                        assert_eq!(l, r, "({x})({y})({z})");
                    }
                }
            }
        }
    }

    #[test]
    fn unit_and_cartan_rules() {
        let cat = CohP1::new(2).unwrap();
        let d = DoubleAlg::p1(&cat, Window::new(1, -2, 2, 2).unwrap());
        let q = 2;
        let o1 = ObjLabel::Sheaf(Sheaf::line(1));
        for variant in [Variant::Heis, Variant::HeisCheck] {
            let x = &d.plus(variant, o1.clone()) + &d.minus(variant, o1.clone());
            assert_eq!(d.mul(&d.one(variant), &x).unwrap(), x);
            assert_eq!(d.mul(&x, &d.one(variant)).unwrap(), x);
        }
        // Z⁺_A K_β = (Ā|β) K_β Z⁺_A with (Ō(1)|Ō) = v²
        let k = d.cartan(Variant::Heis, &KClass(vec![1, 0]), ChiTag::trivial(2));
        let z = d.plus(Variant::Heis, o1.clone());
        assert_eq!(d.mul(&z, &k).unwrap(), d.mul(&k, &z).unwrap().scale(&Scalar::v_pow(2, q)));
        assert!(d.mul(&d.cartan2(Variant::Drinfeld, KClass(vec![0, 1]), ChiTag::trivial(2)), &z).is_err());
    }

    #[test]
    fn line_bundle_cross_terms() {
        let cat = CohP1::new(2).unwrap();
        let d = DoubleAlg::p1(&cat, Window::new(1, -2, 2, 2).unwrap());
        let (o, o1) = (ObjLabel::Sheaf(Sheaf::line(0)), ObjLabel::Sheaf(Sheaf::line(1)));
        // Hom(O, O(1)): the zero map, and for each degree-one point the maps
        // with cokernel O_x, counted once per point.
        let terms = d.cross_terms(&o1, &o).unwrap();
        let points: Vec<&Cross> = terms.iter().filter(|c| c.m.is_zero()).collect();
        assert_eq!(points.len(), 3);
        assert!(points.iter().all(|c| c.count == Scalar::one(2) && c.l == KClass(vec![1, 0])));
        assert!(terms.iter().any(|c| c.m == o && c.n == o1 && c.count == Scalar::one(2)));
        assert_eq!(terms.len(), 4);
        // Hom(O, O) consists of the zero map and the isomorphisms.
        let terms = d.cross_terms(&o, &o).unwrap();
        assert_eq!(terms.len(), 2);
    }

    #[test]
    fn p1_cross_terms_match_windowed_four_term_counts() {
        let cat = CohP1::new(2).unwrap();
        let d = DoubleAlg::p1(&cat, Window::new(2, -3, 3, 2).unwrap());
        let big = Window::new(2, -4, 4, 3).unwrap();
        let x = cat.torsion_sheaves(1)[0].clone();
        let mut tx = Sheaf::from_torsion(x.clone());
        let objs: Vec<Sheaf> = vec![
            Sheaf::line(0),
            Sheaf::line(1),
            Sheaf::line(-1),
            Sheaf::from_torsion(x),
            Sheaf::bundle(&[1, 0]),
            {
                tx.bundle = vec![0];
                tx
            },
        ];
        for a in &objs {
            for b in &objs {
                if a.rank() + b.rank() > 2 {
                    continue;
                }
                let (oa, ob) = (ObjLabel::Sheaf(a.clone()), ObjLabel::Sheaf(b.clone()));
                let fast: BTreeMap<(ObjLabel, ObjLabel), Scalar> =
                    d.cross_terms(&oa, &ob).unwrap().iter().map(|c| ((c.m.clone(), c.n.clone()), c.count.clone())).collect();
                let mut slow = BTreeMap::new();
                for km in cat.window_classes(&big) {
                    let kn = &(&cat.class_of(&oa).unwrap() - &cat.class_of(&ob).unwrap()) + &km;
                    for m in cat.objects_of_class(&km, &big).unwrap() {
                        for n in cat.objects_of_class(&kn, &big).unwrap() {
                            let g = g_four(&cat, &oa, &ob, &m, &n, &big).unwrap();
                            if !g.is_zero() {
                                slow.insert((m.clone(), n), g);
                            }
                        }
                    }
                }
                assert_eq!(fast, slow, "{a} {b}");
            }
        }
    }

    #[test]
    fn four_terms_match_brute_force() {
        let quiver = Quiver::kronecker(2).unwrap();
        let d = DoubleAlg::new(&quiver, Window::dims(2));
        let mut reps = Vec::new();
        for dims in [[1, 0], [0, 1], [1, 1]] {
            reps.extend(quiver.classes(&dims).unwrap());
        }
        for a in &reps {
            for b in &reps {
                let brute: BTreeMap<(ObjLabel, ObjLabel), Scalar> = brute_four_terms(&quiver, a, b)
                    .unwrap()
                    .into_iter()
                    .map(|((m, n), c)| ((ObjLabel::Quiver(m), ObjLabel::Quiver(n)), c))
                    .collect();
                let fast: BTreeMap<(ObjLabel, ObjLabel), Scalar> = d
                    .cross_terms(&ObjLabel::Quiver(a.clone()), &ObjLabel::Quiver(b.clone()))
                    .unwrap()
                    .iter()
                    .map(|c| ((c.m.clone(), c.n.clone()), c.count.clone()))
                    .collect();
                assert_eq!(brute, fast, "{a} {b}");
            }
        }
    }

    #[test]
    fn restricted_identification() {
        let cat = CohP1::new(2).unwrap();
        let d = DoubleAlg::p1(&cat, Window::new(1, -2, 2, 2).unwrap());
        let o = KClass(vec![1, 0]);
        let up = d.upper_of(Variant::HeisCheck, &o);
        let low = d.cartan(Variant::HeisCheck, &KClass(vec![-1, 0]), ChiTag::trivial(2));
        assert_eq!(d.restricted_identify(&up).unwrap(), low);
        let one = d.one(Variant::Heis);
        assert_eq!(d.restricted_identify(&one).unwrap(), one);
        let deg = d.cartan(Variant::Heis, &KClass::zero(2), ChiTag(vec![0, 3]));
        assert_eq!(d.restricted_identify(&deg).unwrap(), deg);
        assert!(d.restricted_identify(&d.cartan(Variant::Heis, &KClass::zero(2), ChiTag(vec![1, 0]))).is_err());
        let quiver = Quiver::kronecker(2).unwrap();
        let dq = DoubleAlg::new(&quiver, Window::dims(2));
        assert!(dq.restricted_identify(&dq.one(Variant::Heis)).is_err());
    }

    #[test]
    fn json_marks_sides() {
        let cat = CohP1::new(2).unwrap();
        let d = DoubleAlg::p1(&cat, Window::new(1, -2, 2, 2).unwrap());
        let x = d.plus(Variant::Drinfeld, ObjLabel::Sheaf(Sheaf::line(1)));
        let j = x.to_json();
        assert_eq!(j["double"], "drinfeld");
        assert!(j.to_string().contains("side"));
    }
}
