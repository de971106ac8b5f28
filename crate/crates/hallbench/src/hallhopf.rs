//! Hall, Ringel and extended (Cartan-enlarged) algebras of a finitary
//! category, with the Green coproduct, counit, antipode and pairing.
//!
//! Basis symbols are K_κ·[A]; κ ranges over the Grothendieck group. For the
//! projective line, κ = (n, d) stands for Kⁿ·c_d.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::{Arc, Mutex};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::finitary::{Category, KClass, ObjLabel, Window};
use crate::report::Report;
use crate::scalars::{Rational, Scalar};

pub type Key = (KClass, ObjLabel);

/// Finite linear combination of basis symbols K_κ[A].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgElem {
    q: u64,
    terms: BTreeMap<Key, Scalar>,
}

impl AlgElem {
    pub fn zero(q: u64) -> AlgElem {
        AlgElem { q, terms: BTreeMap::new() }
    }

    pub fn term(kappa: KClass, obj: ObjLabel, c: Scalar) -> AlgElem {
        let mut e = AlgElem::zero(c.q());
        e.add_term(kappa, obj, &c);
        e
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn add_term(&mut self, kappa: KClass, obj: ObjLabel, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (kappa, obj);
        let entry = self.terms.entry(key.clone()).or_insert_with(|| Scalar::zero(self.q));
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, kappa: &KClass, obj: &ObjLabel) -> Scalar {
        self.terms.get(&(kappa.clone(), obj.clone())).cloned().unwrap_or_else(|| Scalar::zero(self.q))
    }

    pub fn scale(&self, c: &Scalar) -> AlgElem {
        let mut out = AlgElem::zero(self.q);
        for ((k, a), x) in &self.terms {
            out.add_term(k.clone(), a.clone(), &(x * c));
        }
        out
    }

    /// Terms whose object has the given class.
    pub fn project_class(&self, cat: &dyn Category, k: &KClass) -> Result<AlgElem> {
        let mut out = AlgElem::zero(self.q);
        for ((kappa, a), c) in &self.terms {
            if cat.class_of(a)? == *k {
                out.add_term(kappa.clone(), a.clone(), c);
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|((k, a), c)| json!({"kappa": k.0, "obj": a.to_json(), "c": c.to_json()}))
            .collect();
        json!({"q": self.q, "terms": terms})
    }

    pub fn from_json(v: &Value, p: u32) -> Result<AlgElem> {
        let q = v.get("q").and_then(|x| x.as_u64()).ok_or_else(|| Error::Parse("missing q".into()))?;
        let mut out = AlgElem::zero(q);
        for t in v.get("terms").and_then(|x| x.as_array()).into_iter().flatten() {
            let kappa: Vec<i64> = serde_json::from_value(t.get("kappa").cloned().unwrap_or(json!([])))
                .map_err(|e| Error::Parse(e.to_string()))?;
            let obj = ObjLabel::from_json(t.get("obj").unwrap_or(&Value::Null), p)?;
            let c = Scalar::from_json(t.get("c").unwrap_or(&Value::Null), q)?;
            out.add_term(KClass(kappa), obj, &c);
        }
        Ok(out)
    }
}

fn fmt_key(k: &KClass, a: &ObjLabel) -> String {
    let mut s = String::new();
    if !k.is_zero() {
        s.push_str(&format!("K{k}"));
    }
    if !a.is_zero() {
        s.push_str(&format!("[{a}]"));
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

impl fmt::Display for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|((k, a), c)| format!("({c})*{}", fmt_key(k, a))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for &AlgElem {
    type Output = AlgElem;
    fn add(self, o: &AlgElem) -> AlgElem {
        let mut out = self.clone();
        for ((k, a), c) in &o.terms {
            out.add_term(k.clone(), a.clone(), c);
        }
        out
    }
}

impl Sub for &AlgElem {
    type Output = AlgElem;
    fn sub(self, o: &AlgElem) -> AlgElem {
        self + &(-o)
    }
}

impl Neg for &AlgElem {
    type Output = AlgElem;
    fn neg(self) -> AlgElem {
        self.scale(&Scalar::int(-1, self.q))
    }
}

/// Element of B ⊗ B.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElem {
    q: u64,
    terms: BTreeMap<(Key, Key), Scalar>,
}

impl TensorElem {
    pub fn zero(q: u64) -> TensorElem {
        TensorElem { q, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, l: Key, r: Key, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (l, r);
        let entry = self.terms.entry(key.clone()).or_insert_with(|| Scalar::zero(self.q));
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn pure(x: &AlgElem, y: &AlgElem) -> TensorElem {
        let mut out = TensorElem::zero(x.q);
        for (kx, cx) in &x.terms {
            for (ky, cy) in &y.terms {
                out.add_term(kx.clone(), ky.clone(), &(cx * cy));
            }
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Key, Key), &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, l: &Key, r: &Key) -> Scalar {
        self.terms.get(&(l.clone(), r.clone())).cloned().unwrap_or_else(|| Scalar::zero(self.q))
    }

    pub fn scale(&self, c: &Scalar) -> TensorElem {
        let mut out = TensorElem::zero(self.q);
        for ((l, r), x) in &self.terms {
            out.add_term(l.clone(), r.clone(), &(x * c));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(((k1, a1), (k2, a2)), c)| {
                json!({"left": {"kappa": k1.0, "obj": a1.to_json()},
                       "right": {"kappa": k2.0, "obj": a2.to_json()},
                       "c": c.to_json()})
            })
            .collect();
        json!({"q": self.q, "terms": terms})
    }
}

impl fmt::Display for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(((k1, a1), (k2, a2)), c)| format!("({c})*{}⊗{}", fmt_key(k1, a1), fmt_key(k2, a2)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for &TensorElem {
    type Output = TensorElem;
    fn add(self, o: &TensorElem) -> TensorElem {
        let mut out = self.clone();
        for ((l, r), c) in &o.terms {
            out.add_term(l.clone(), r.clone(), c);
        }
        out
    }
}

impl Sub for &TensorElem {
    type Output = TensorElem;
    fn sub(self, o: &TensorElem) -> TensorElem {
        self + &o.scale(&Scalar::int(-1, self.q))
    }
}

type CoproductRow = Arc<Vec<(ObjLabel, ObjLabel, Scalar)>>;

/// The algebra B(A) of a category, with coproducts truncated to a window.
pub struct HallAlgebra<'a> {
    pub cat: &'a dyn Category,
    pub window: Window,
    coproducts: Mutex<HashMap<ObjLabel, CoproductRow>>,
    antipodes: Mutex<HashMap<ObjLabel, AlgElem>>,
}

impl<'a> HallAlgebra<'a> {
    pub fn new(cat: &'a dyn Category, window: Window) -> HallAlgebra<'a> {
        HallAlgebra { cat, window, coproducts: Mutex::new(HashMap::new()), antipodes: Mutex::new(HashMap::new()) }
    }

    pub fn q(&self) -> u64 {
        self.cat.q()
    }

    pub fn zero(&self) -> AlgElem {
        AlgElem::zero(self.q())
    }

    pub fn one(&self) -> AlgElem {
        AlgElem::term(self.cat.zero_class(), self.cat.zero_obj(), Scalar::one(self.q()))
    }

    pub fn obj(&self, a: ObjLabel) -> AlgElem {
        AlgElem::term(self.cat.zero_class(), a, Scalar::one(self.q()))
    }

    pub fn cartan(&self, k: KClass) -> AlgElem {
        AlgElem::term(k, self.cat.zero_obj(), Scalar::one(self.q()))
    }

    pub fn scalar(&self, c: Scalar) -> AlgElem {
        AlgElem::term(self.cat.zero_class(), self.cat.zero_obj(), c)
    }

    /// ⟨α, β⟩ = v^{χ(α,β)}.
    pub fn euler(&self, a: &KClass, b: &KClass) -> Scalar {
        Scalar::v_pow(self.cat.euler_chi(a, b), self.q())
    }

    /// (α|β) = ⟨α,β⟩⟨β,α⟩.
    pub fn cartan_form(&self, a: &KClass, b: &KClass) -> Scalar {
        Scalar::v_pow(self.cat.euler_chi(a, b) + self.cat.euler_chi(b, a), self.q())
    }

    fn class(&self, a: &ObjLabel) -> Result<KClass> {
        self.cat.class_of(a)
    }

    fn require_pure(&self, x: &AlgElem) -> Result<()> {
        if x.terms.keys().any(|(k, _)| !k.is_zero()) {
            return Err(Error::Precondition("Hall and Ringel products take elements without Cartan symbols".into()));
        }
        Ok(())
    }

    /// Σ g^C_{AB} [C], extended bilinearly.
    pub fn hall_mul(&self, x: &AlgElem, y: &AlgElem) -> Result<AlgElem> {
        self.require_pure(x)?;
        self.require_pure(y)?;
        let mut out = self.zero();
        let z = self.cat.zero_class();
        for ((_, a), ca) in &x.terms {
            for ((_, b), cb) in &y.terms {
                let cab = ca * cb;
                for (c, g) in self.cat.hall_product(a, b)? {
                    out.add_term(z.clone(), c, &cab.scale_rational(&Rational::from_integer(g)));
                }
            }
        }
        Ok(out)
    }

    /// [A]*[B] = ⟨B,A⟩·[A]∘[B].
    pub fn ringel_mul(&self, x: &AlgElem, y: &AlgElem) -> Result<AlgElem> {
        self.require_pure(x)?;
        self.require_pure(y)?;
        self.b_mul(x, y)
    }

    /// K_κ[A]·K_λ[B] = (Ā|λ)·K_{κ+λ}·([A]*[B]).
    pub fn b_mul(&self, x: &AlgElem, y: &AlgElem) -> Result<AlgElem> {
        let mut out = self.zero();
        for ((k1, a), ca) in &x.terms {
            let ka = self.class(a)?;
            for ((k2, b), cb) in &y.terms {
                let kb = self.class(b)?;
                let kappa = k1 + k2;
                let coef = &(ca * cb) * &(&self.cartan_form(&ka, k2) * &self.euler(&kb, &ka));
                for (c, g) in self.cat.hall_product(a, b)? {
                    out.add_term(kappa.clone(), c, &coef.scale_rational(&Rational::from_integer(g)));
                }
            }
        }
        Ok(out)
    }

    /// Product of several elements, left to right.
    pub fn b_mul_all(&self, xs: &[&AlgElem]) -> Result<AlgElem> {
        let mut acc = self.one();
        for x in xs {
            acc = self.b_mul(&acc, x)?;
        }
        Ok(acc)
    }

    /// Terms (A′, A″, coefficient of [A′] ⊗ K_{Ā′}[A″] in Δ[A]).
    pub fn coproduct_row(&self, a: &ObjLabel) -> Result<CoproductRow> {
        if let Some(r) = self.coproducts.lock().unwrap().get(a) {
            return Ok(r.clone());
        }
        let aut_a = self.cat.aut_order(a)?;
        let mut row = Vec::new();
        for (a1, a2, g) in self.cat.subquotients(a, &self.window)? {
            let ratio = Rational::new(g * self.cat.aut_order(&a1)? * self.cat.aut_order(&a2)?, aut_a.clone());
            let e = self.euler(&self.class(&a2)?, &self.class(&a1)?);
            row.push((a1, a2, e.scale_rational(&ratio)));
        }
        let arc = Arc::new(row);
        self.coproducts.lock().unwrap().insert(a.clone(), arc.clone());
        Ok(arc)
    }

    /// Δ(K_α[A]) = Σ ⟨A″,A′⟩ |Aut A′||Aut A″|/|Aut A| g^A_{A′A″} K_α[A′] ⊗ K_{α+Ā′}[A″],
    /// truncated to pairs (A′, A″) inside the window.
    pub fn coproduct(&self, x: &AlgElem) -> Result<TensorElem> {
        let mut out = TensorElem::zero(self.q());
        for ((k, a), c) in &x.terms {
            for (a1, a2, coef) in self.coproduct_row(a)?.iter() {
                let k2 = k + &self.class(a1)?;
                out.add_term((k.clone(), a1.clone()), (k2, a2.clone()), &(c * coef));
            }
        }
        Ok(out)
    }

    /// Whether the windowed coproduct of x is the full coproduct.
    pub fn coproduct_complete(&self, x: &AlgElem) -> bool {
        x.terms.keys().all(|(_, a)| self.cat.subquotients_complete(a, &self.window))
    }

    pub fn counit(&self, x: &AlgElem) -> Scalar {
        let zero = self.cat.zero_obj();
        let mut acc = Scalar::zero(self.q());
        for ((_, a), c) in &x.terms {
            if *a == zero {
                acc += c;
            }
        }
        acc
    }

    /// (x ⊗ y)(x′ ⊗ y′) = xx′ ⊗ yy′.
    pub fn tensor_mul(&self, s: &TensorElem, t: &TensorElem) -> Result<TensorElem> {
        let q = self.q();
        let mut out = TensorElem::zero(q);
        for ((l1, r1), c1) in &s.terms {
            for ((l2, r2), c2) in &t.terms {
                let left = self.b_mul(&basis(l1, q), &basis(l2, q))?;
                let right = self.b_mul(&basis(r1, q), &basis(r2, q))?;
                let c = c1 * c2;
                for (kl, cl) in &left.terms {
                    for (kr, cr) in &right.terms {
                        out.add_term(kl.clone(), kr.clone(), &(&c * &(cl * cr)));
                    }
                }
            }
        }
        Ok(out)
    }

    /// m(f ⊗ g) applied to a tensor, with f, g each either the identity or S.
    pub fn contract(&self, t: &TensorElem, left_s: bool, right_s: bool) -> Result<AlgElem> {
        let q = self.q();
        let mut out = self.zero();
        for ((l, r), c) in &t.terms {
            let lx = if left_s { self.antipode(&basis(l, q))? } else { basis(l, q) };
            let rx = if right_s { self.antipode(&basis(r, q))? } else { basis(r, q) };
            out = &out + &self.b_mul(&lx, &rx)?.scale(c);
        }
        Ok(out)
    }

    /// S on pure objects by the convolution-inverse recursion
    /// S([A]) = −(Σ_{A′≠A} coef · S([A′]) · K_{Ā′}[A″]) · K_Ā⁻¹.
    fn antipode_obj(&self, a: &ObjLabel) -> Result<AlgElem> {
        if let Some(s) = self.antipodes.lock().unwrap().get(a) {
            return Ok(s.clone());
        }
        let zero = self.cat.zero_obj();
        if *a == zero {
            return Ok(self.one());
        }
        if !self.cat.subquotients_complete(a, &self.window) {
            return Err(Error::WindowInsufficient(format!("subobjects of {a} leave the window")));
        }
        let ka = self.class(a)?;
        let mut acc = self.zero();
        for (a1, a2, coef) in self.coproduct_row(a)?.iter() {
            if *a2 == zero {
                continue;
            }
            let s1 = self.antipode_obj(a1)?;
            let rest = AlgElem::term(self.class(a1)?, a2.clone(), coef.clone());
            acc = &acc + &self.b_mul(&s1, &rest)?;
        }
        let out = self.b_mul(&(-&acc), &self.cartan(-&ka))?;
        self.antipodes.lock().unwrap().insert(a.clone(), out.clone());
        Ok(out)
    }

    /// S(K_α[A]) = S([A])·K_{−α}.
    pub fn antipode(&self, x: &AlgElem) -> Result<AlgElem> {
        let mut out = self.zero();
        for ((k, a), c) in &x.terms {
            let s = self.antipode_obj(a)?;
            out = &out + &self.b_mul(&s, &self.cartan(-k))?.scale(c);
        }
        Ok(out)
    }

    /// The alternating sum over strict flags 0 = A₀ ⊊ A₁ ⊊ … ⊊ A_n = A:
    /// Σ (−1)^n Π⟨A_i/A_{i−1}, A_{i−1}⟩ Π|Aut(A_i/A_{i−1})| / |Aut A|
    /// · [A₁/A₀] * … * [A_n/A_{n−1}] · K_α⁻¹ K_Ā⁻¹.
    pub fn antipode_flag(&self, x: &AlgElem) -> Result<AlgElem> {
        let mut memo: HashMap<ObjLabel, AlgElem> = HashMap::new();
        let mut out = self.zero();
        for ((k, a), c) in &x.terms {
            if !self.cat.subquotients_complete(a, &self.window) && *a != self.cat.zero_obj() {
                return Err(Error::WindowInsufficient(format!("flags of {a} leave the window")));
            }
            let phi = self.flag_sum(a, &mut memo)?;
            let aut = Rational::from_integer(self.cat.aut_order(a)?);
            let scaled = phi.scale(&Scalar::rational(Rational::from_integer(1.into()) / aut, self.q()));
            let ka = self.class(a)?;
            let tail = self.cartan(&(-k) - &ka);
            out = &out + &self.b_mul(&scaled, &tail)?.scale(c);
        }
        Ok(out)
    }

    fn flag_sum(&self, a: &ObjLabel, memo: &mut HashMap<ObjLabel, AlgElem>) -> Result<AlgElem> {
        let zero = self.cat.zero_obj();
        if *a == zero {
            return Ok(self.one());
        }
        if let Some(v) = memo.get(a) {
            return Ok(v.clone());
        }
        let mut acc = self.zero();
        for (a1, a2, g) in self.cat.subquotients(a, &self.window)? {
            if a2 == zero {
                continue;
            }
            let inner = self.flag_sum(&a1, memo)?;
            let w = self
                .euler(&self.class(&a2)?, &self.class(&a1)?)
                .scale_rational(&Rational::from_integer(-g * self.cat.aut_order(&a2)?));
            acc = &acc + &self.ringel_mul(&inner, &self.obj(a2.clone()))?.scale(&w);
        }
        memo.insert(a.clone(), acc.clone());
        Ok(acc)
    }

    /// (K_α[A], K_β[B]) = (α|β)·δ_{AB}/|Aut A|. Coefficients live in the real
    /// field Q(√q), so the Hermitian form is plain bilinear here.
    pub fn green_pair(&self, x: &AlgElem, y: &AlgElem) -> Result<Scalar> {
        let mut acc = Scalar::zero(self.q());
        for ((k1, a), c1) in &x.terms {
            for ((k2, b), c2) in &y.terms {
                if a != b {
                    continue;
                }
                let aut = Rational::from_integer(self.cat.aut_order(a)?);
                let term = &(c1 * c2) * &self.cartan_form(k1, k2);
                acc += &term.scale_rational(&(Rational::from_integer(1.into()) / aut));
            }
        }
        Ok(acc)
    }

    /// (x ⊗ y, z ⊗ w) = (x, z)(y, w).
    pub fn tensor_pair(&self, s: &TensorElem, t: &TensorElem) -> Result<Scalar> {
        let q = self.q();
        let mut acc = Scalar::zero(q);
        for ((l1, r1), c1) in &s.terms {
            for ((l2, r2), c2) in &t.terms {
                if l1.1 != l2.1 || r1.1 != r2.1 {
                    continue;
                }
                let a = self.green_pair(&basis(l1, q), &basis(l2, q))?;
                let b = self.green_pair(&basis(r1, q), &basis(r2, q))?;
                acc += &(&(c1 * c2) * &(&a * &b));
            }
        }
        Ok(acc)
    }

    /// Δ(xy) = Δ(x)Δ(y), compared per bidegree of object classes. Pairs
    /// whose coproducts are truncated by the window are skipped.
    pub fn verify_bialgebra(&self, samples: &[(AlgElem, AlgElem)]) -> Result<Report> {
        let mut rep = Report::new("hallhopf", "bialgebra");
        for (i, (x, y)) in samples.iter().enumerate() {
            let xy = self.b_mul(x, y)?;
            if !(self.coproduct_complete(x) && self.coproduct_complete(y) && self.coproduct_complete(&xy)) {
                rep.skip(format!("sample {i}"), "coproduct truncated by window");
                continue;
            }
            let lhs = self.coproduct(&xy)?;
            let rhs = self.tensor_mul(&self.coproduct(x)?, &self.coproduct(y)?)?;
            for (bideg, (l, r)) in self.split_bidegrees(&lhs, &rhs)? {
                rep.expect_eq(format!("sample {i} ({x})·({y}) bidegree {bideg}"), &l, &r);
            }
        }
        Ok(rep)
    }

    fn split_bidegrees(&self, a: &TensorElem, b: &TensorElem) -> Result<BTreeMap<String, (TensorElem, TensorElem)>> {
        let q = self.q();
        let mut out: BTreeMap<String, (TensorElem, TensorElem)> = BTreeMap::new();
        for (side, t) in [(0, a), (1, b)] {
            for ((l, r), c) in &t.terms {
                let key = format!("{}|{}", self.class(&l.1)?, self.class(&r.1)?);
                let e = out.entry(key).or_insert_with(|| (TensorElem::zero(q), TensorElem::zero(q)));
                let slot = if side == 0 { &mut e.0 } else { &mut e.1 };
                slot.add_term(l.clone(), r.clone(), c);
            }
        }
        Ok(out)
    }

    /// m(S⊗id)Δ(x) = ε(x)·1 = m(id⊗S)Δ(x).
    pub fn verify_hopf(&self, samples: &[AlgElem]) -> Result<Report> {
        let mut rep = Report::new("hallhopf", "antipode axiom");
        for (i, x) in samples.iter().enumerate() {
            if !self.coproduct_complete(x) {
                rep.skip(format!("sample {i}"), "coproduct truncated by window");
                continue;
            }
            let d = self.coproduct(x)?;
            let unit = self.scalar(self.counit(x));
            let left = self.contract(&d, true, false)?;
            let right = self.contract(&d, false, true)?;
            rep.expect_eq(format!("sample {i} m(S⊗id)Δ({x})"), &left, &unit);
            rep.expect_eq(format!("sample {i} m(id⊗S)Δ({x})"), &right, &unit);
        }
        Ok(rep)
    }

    /// Recursive antipode against the flag formula.
    pub fn verify_antipode_flag(&self, samples: &[AlgElem]) -> Result<Report> {
        let mut rep = Report::new("hallhopf", "antipode flag formula");
        for (i, x) in samples.iter().enumerate() {
            let a = self.antipode(x)?;
            let b = self.antipode_flag(x)?;
            rep.expect_eq(format!("sample {i} S({x})"), &a, &b);
        }
        Ok(rep)
    }

    /// (xy, z) = (x ⊗ y, Δz).
    pub fn verify_pair_adjoint(&self, samples: &[(AlgElem, AlgElem, AlgElem)]) -> Result<Report> {
        let mut rep = Report::new("hallhopf", "pairing adjointness");
        for (i, (x, y, z)) in samples.iter().enumerate() {
            let lhs = self.green_pair(&self.b_mul(x, y)?, z)?;
            let rhs = self.tensor_pair(&TensorElem::pure(x, y), &self.coproduct(z)?)?;
            rep.expect_eq(format!("sample {i} ({x}),({y}),({z})"), &lhs, &rhs);
        }
        Ok(rep)
    }

    /// (xy)z = x(yz) for the chosen product.
    pub fn verify_associativity(&self, triples: &[(AlgElem, AlgElem, AlgElem)], kind: Product) -> Result<Report> {
        let mut rep = Report::new("hallhopf", kind.name());
        for (x, y, z) in triples {
            let l = self.product(&self.product(x, y, kind)?, z, kind)?;
            let r = self.product(x, &self.product(y, z, kind)?, kind)?;
            rep.expect_eq(format!("({x})({y})({z})"), &l, &r);
        }
        Ok(rep)
    }

    pub fn product(&self, x: &AlgElem, y: &AlgElem, kind: Product) -> Result<AlgElem> {
        match kind {
            Product::Hall => self.hall_mul(x, y),
            Product::Ringel => self.ringel_mul(x, y),
            Product::Extended => self.b_mul(x, y),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Product {
    Hall,
    Ringel,
    Extended,
}

impl Product {
    pub fn name(&self) -> &'static str {
        match self {
            Product::Hall => "hall associativity",
            Product::Ringel => "ringel associativity",
            Product::Extended => "extended associativity",
        }
    }
}

pub fn basis(k: &Key, q: u64) -> AlgElem {
    AlgElem::term(k.0.clone(), k.1.clone(), Scalar::one(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finitary::{CohP1, Partition, Quiver, Sheaf, TorsionLocal};

    fn local(parts: &[u32]) -> ObjLabel {
        ObjLabel::Local(Partition::new(parts.to_vec()).unwrap())
    }

    fn sheaf(c: &CohP1, s: &str) -> ObjLabel {
        ObjLabel::Sheaf(c.parse_sheaf(s).unwrap())
    }

    #[test]
    fn spec_products_on_p1() {
        let c = CohP1::new(2).unwrap();
        let h = HallAlgebra::new(&c, Window::new(2, -3, 3, 2).unwrap());
        let o1 = h.obj(sheaf(&c, "O(1)"));
        let o0 = h.obj(sheaf(&c, "O(0)"));
        let sum = sheaf(&c, "O(1)+O(0)");
        assert_eq!(h.hall_mul(&o1, &o0).unwrap(), h.obj(sum.clone()));
        assert_eq!(h.hall_mul(&o0, &o1).unwrap(), h.obj(sum.clone()).scale(&Scalar::int(4, 2)));
        // Ringel: ratio q between the two orders
        let a = h.ringel_mul(&o0, &o1).unwrap().coeff(&KClass(vec![0, 0]), &sum);
        let b = h.ringel_mul(&o1, &o0).unwrap().coeff(&KClass(vec![0, 0]), &sum);
        assert_eq!(a, &b * &Scalar::int(2, 2));
        let fx = h.obj(sheaf(&c, "T(pt=t,lam=[1])"));
        assert_eq!(h.hall_mul(&fx, &o0).unwrap(), h.obj(sheaf(&c, "O(0)+T(pt=t,lam=[1])")));
    }

    #[test]
    fn cartan_commutation_on_p1() {
        let c = CohP1::new(3).unwrap();
        let h = HallAlgebra::new(&c, Window::new(2, -3, 3, 2).unwrap());
        let o = h.obj(sheaf(&c, "O(0)"));
        let k = h.cartan(KClass(vec![1, 0]));
        let ok = h.b_mul(&o, &k).unwrap();
        let ko = h.b_mul(&k, &o).unwrap();
        assert_eq!(ok, ko.scale(&Scalar::int(3, 3)));
        let cd = h.cartan(KClass(vec![0, 2]));
        for s in ["O(1)", "T(pt=inf,lam=[2])", "O(-1)+T(pt=t,lam=[1])"] {
            let x = h.obj(sheaf(&c, s));
            assert_eq!(h.b_mul(&x, &cd).unwrap(), h.b_mul(&cd, &x).unwrap());
        }
        let kinv = h.cartan(KClass(vec![-1, 0]));
        assert_eq!(h.b_mul(&k, &kinv).unwrap(), h.one());
    }

    #[test]
    fn coproduct_of_simple_torsion() {
        let t = TorsionLocal::new(2, 1).unwrap();
        let h = HallAlgebra::new(&t, Window::torsion(3));
        let d = h.coproduct(&h.obj(local(&[1]))).unwrap();
        let z = KClass(vec![0]);
        let one = Scalar::one(2);
        assert_eq!(d.len(), 2);
        assert_eq!(d.coeff(&(z.clone(), local(&[])), &(z.clone(), local(&[1]))), one);
        assert_eq!(d.coeff(&(z.clone(), local(&[1])), &(KClass(vec![1]), local(&[]))), one);
        // S([F]) = −[F]·K⁻¹
        let s = h.antipode(&h.obj(local(&[1]))).unwrap();
        assert_eq!(s, AlgElem::term(KClass(vec![-1]), local(&[1]), Scalar::int(-1, 2)));
        assert_eq!(h.counit(&h.cartan(KClass(vec![3]))), one);
    }

    #[test]
    fn green_theorem_small() {
        let t = TorsionLocal::new(2, 1).unwrap();
        let h = HallAlgebra::new(&t, Window::torsion(3));
        let samples = vec![
            (h.obj(local(&[1])), h.obj(local(&[1]))),
            (h.obj(local(&[1])), h.obj(local(&[1, 1]))),
            (h.obj(local(&[2])), h.obj(local(&[1]))),
            (h.cartan(KClass(vec![1])), h.obj(local(&[1]))),
        ];
        let rep = h.verify_bialgebra(&samples).unwrap();
        assert!(rep.passed(), "{}", rep.summary());
        let k = Quiver::kronecker(2).unwrap();
        let hq = HallAlgebra::new(&k, Window::dims(3));
        let s1 = hq.obj(ObjLabel::Quiver(k.simple(0)));
        let s2 = hq.obj(ObjLabel::Quiver(k.simple(1)));
        let rep = hq.verify_bialgebra(&[(s1.clone(), s2.clone()), (s2.clone(), s1.clone())]).unwrap();
        assert!(rep.passed(), "{}", rep.summary());
    }

    #[test]
    fn antipode_axioms_and_flags() {
        for p in [2, 3] {
            let t = TorsionLocal::new(p, 1).unwrap();
            let h = HallAlgebra::new(&t, Window::torsion(3));
            let samples: Vec<AlgElem> =
                [vec![1], vec![2], vec![1, 1], vec![2, 1], vec![1, 1, 1], vec![3]].iter().map(|l| h.obj(local(l))).collect();
            let rep = h.verify_hopf(&samples).unwrap();
            assert!(rep.passed(), "{}", rep.summary());
            let rep = h.verify_antipode_flag(&samples).unwrap();
            assert!(rep.passed(), "{}", rep.summary());
        }
    }

    #[test]
    fn pairing_values() {
        let c = CohP1::new(2).unwrap();
        let h = HallAlgebra::new(&c, Window::new(2, -2, 2, 2).unwrap());
        let o = h.obj(sheaf(&c, "O(0)"));
        assert_eq!(h.green_pair(&o, &o).unwrap(), Scalar::one(2));
        assert!(h.green_pair(&o, &h.obj(sheaf(&c, "O(1)"))).unwrap().is_zero());
        let k = h.cartan(KClass(vec![1, 0]));
        assert_eq!(h.green_pair(&k, &k).unwrap(), Scalar::int(2, 2));
        let _ = Sheaf::zero();
    }

    #[test]
    fn adjointness_on_p1_lines() {
        let c = CohP1::new(2).unwrap();
        let h = HallAlgebra::new(&c, Window::new(2, -2, 2, 2).unwrap());
        let x = h.obj(sheaf(&c, "O(0)"));
        let y = h.obj(sheaf(&c, "O(0)"));
        let z = h.obj(sheaf(&c, "O(0)+O(0)"));
        let rep = h.verify_pair_adjoint(&[(x, y, z)]).unwrap();
        assert!(rep.passed(), "{}", rep.summary());
    }
}
