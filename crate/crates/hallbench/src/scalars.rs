//! Exact coefficients: rationals, the quadratic field Q(√q), Laurent
//! polynomials, rational functions in one variable, and recurrence fitting.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Integer square root when `q` is a perfect square.
pub fn exact_sqrt(q: u64) -> Option<u64> {
    let mut r = (q as f64).sqrt() as u64;
    while r * r > q {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= q {
        r += 1;
    }
    (r * r == q).then_some(r)
}

/// Element a + b·v of Q(v), v² = q.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    a: Rational,
    b: Rational,
    q: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Scalar {
    pub fn new(a: Rational, b: Rational, q: u64) -> Scalar {
        assert!(q >= 2, "q must be at least 2");
        match exact_sqrt(q) {
            Some(r) if !b.is_zero() => Scalar { a: a + b * rat_int(r), b: Rational::zero(), q },
            _ => Scalar { a, b, q },
        }
    }

    pub fn rational(a: Rational, q: u64) -> Scalar {
        Scalar::new(a, Rational::zero(), q)
    }

    pub fn int(n: i64, q: u64) -> Scalar {
        Scalar::rational(rat_int(n), q)
    }

    pub fn big(n: BigInt, q: u64) -> Scalar {
        Scalar::rational(Rational::from_integer(n), q)
    }

    pub fn frac(n: i64, d: i64, q: u64) -> Scalar {
        Scalar::rational(rat(n, d), q)
    }

    pub fn zero(q: u64) -> Scalar {
        Scalar::int(0, q)
    }

    pub fn one(q: u64) -> Scalar {
        Scalar::int(1, q)
    }

    /// The square root v of q.
    pub fn v(q: u64) -> Scalar {
        Scalar::new(Rational::zero(), Rational::one(), q)
    }

    /// v^k for any integer k.
    pub fn v_pow(k: i64, q: u64) -> Scalar {
        let half = k.div_euclid(2);
        let qpow = if half >= 0 {
            rat_int(BigInt::from(q).pow(half as u32))
        } else {
            Rational::new(BigInt::one(), BigInt::from(q).pow((-half) as u32))
        };
        if k.rem_euclid(2) == 0 {
            Scalar::rational(qpow, q)
        } else {
            Scalar::new(Rational::zero(), qpow, q)
        }
    }

    /// q^k for any integer k.
    pub fn q_pow(k: i64, q: u64) -> Scalar {
        Scalar::v_pow(2 * k, q)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The Galois conjugate a − b·v.
    pub fn conj(&self) -> Scalar {
        Scalar { a: self.a.clone(), b: -self.b.clone(), q: self.q }
    }

    /// Field norm a² − q·b².
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - rat_int(self.q) * &self.b * &self.b
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar { a: &self.a / &n, b: -(&self.b / &n), q: self.q })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<Scalar> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one(self.q);
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn op(&self, other: &Scalar, op: ScalarOp) -> Result<Scalar> {
        Ok(match op {
            ScalarOp::Add => self + other,
            ScalarOp::Sub => self - other,
            ScalarOp::Mul => self * other,
            ScalarOp::Div => self.checked_div(other)?,
        })
    }

    pub fn scale_rational(&self, r: &Rational) -> Scalar {
        Scalar { a: &self.a * r, b: &self.b * r, q: self.q }
    }

    /// Sign of the real number a + b·√q.
    pub fn signum(&self) -> i32 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: compare a² with q b²
        let n = self.norm();
        if n.is_zero() {
            0
        } else if n.is_positive() {
            sa
        } else {
            sb
        }
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.b.is_zero().then(|| self.a.clone())
    }

    pub fn to_i64(&self) -> Option<i64> {
        let r = self.to_rational()?;
        if r.denom().is_one() {
            r.numer().to_i64()
        } else {
            None
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"a": fmt_rational(&self.a), "b": fmt_rational(&self.b)})
    }

    pub fn from_json(v: &Value, q: u64) -> Result<Scalar> {
        let field = |k: &str| -> Result<Rational> {
            match v.get(k) {
                None => Ok(Rational::zero()),
                Some(Value::String(s)) => parse_rational(s),
                Some(Value::Number(n)) => parse_rational(&n.to_string()),
                Some(other) => Err(Error::Parse(format!("bad scalar field {other}"))),
            }
        };
        Ok(Scalar::new(field("a")?, field("b")?, q))
    }

    /// Parses `a`, `bv`, `a+bv`, `a-bv` with rational a, b.
    pub fn parse(s: &str, q: u64) -> Result<Scalar> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let bytes = s.as_bytes();
        let mut split = None;
        for i in (1..bytes.len()).rev() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'/' {
                split = Some(i);
                break;
            }
        }
        let parse_part = |p: &str| -> Result<Scalar> {
            if let Some(coef) = p.strip_suffix('v') {
                let c = match coef {
                    "" | "+" => Rational::one(),
                    "-" => -Rational::one(),
                    c => parse_rational(c.trim_start_matches('+'))?,
                };
                Ok(Scalar::new(Rational::zero(), c, q))
            } else {
                Ok(Scalar::rational(parse_rational(p.trim_start_matches('+'))?, q))
            }
        };
        match split {
            Some(i) => Ok(&parse_part(&s[..i])? + &parse_part(&s[i..])?),
            None => parse_part(&s),
        }
    }

    fn check_q(&self, other: &Scalar) {
        assert_eq!(self.q, other.q, "scalars over different fields");
    }
}

fn sign(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", fmt_rational(&self.a))
        } else if self.a.is_zero() {
            write!(f, "{}v", fmt_rational(&self.b))
        } else if self.b.is_negative() {
            write!(f, "{}-{}v", fmt_rational(&self.a), fmt_rational(&-self.b.clone()))
        } else {
            write!(f, "{}+{}v", fmt_rational(&self.a), fmt_rational(&self.b))
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        self.check_q(o);
        Scalar { a: &self.a + &o.a, b: &self.b + &o.b, q: self.q }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self.check_q(o);
        Scalar { a: &self.a - &o.a, b: &self.b - &o.b, q: self.q }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.check_q(o);
        let qq = rat_int(self.q);
        Scalar {
            a: &self.a * &o.a + qq * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
            q: self.q,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: -self.a.clone(), b: -self.b.clone(), q: self.q }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        self.check_q(o);
        self.a += &o.a;
        self.b += &o.b;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        self.check_q(o);
        self.a -= &o.a;
        self.b -= &o.b;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

/// Finite Laurent polynomial Σ c_k t^k with Scalar coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Scalar>,
    var: String,
    q: u64,
}

impl LaurentPoly {
    pub fn zero(var: &str, q: u64) -> LaurentPoly {
        LaurentPoly { coeffs: BTreeMap::new(), var: var.to_string(), q }
    }

    pub fn one(var: &str, q: u64) -> LaurentPoly {
        LaurentPoly::monomial(Scalar::one(q), 0, var)
    }

    pub fn monomial(c: Scalar, k: i64, var: &str) -> LaurentPoly {
        let mut p = LaurentPoly::zero(var, c.q());
        p.add_term(k, &c);
        p
    }

    /// Builds Σ coeffs[i] t^(start+i).
    pub fn from_coeffs(start: i64, coeffs: &[Scalar], var: &str, q: u64) -> LaurentPoly {
        let mut p = LaurentPoly::zero(var, q);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(start + i as i64, c);
        }
        p
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: i64) -> Scalar {
        self.coeffs.get(&k).cloned().unwrap_or_else(|| Scalar::zero(self.q))
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn low(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn high(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add_term(&mut self, k: i64, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(k).or_insert_with(|| Scalar::zero(c.q()));
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn scale(&self, c: &Scalar) -> LaurentPoly {
        let mut p = LaurentPoly::zero(&self.var, self.q);
        for (k, x) in self.terms() {
            p.add_term(k, &(x * c));
        }
        p
    }

    pub fn shift(&self, by: i64) -> LaurentPoly {
        let mut p = LaurentPoly::zero(&self.var, self.q);
        for (k, x) in self.terms() {
            p.add_term(k + by, x);
        }
        p
    }

    /// Substitution t ↦ λ·t.
    pub fn dilate(&self, lambda: &Scalar) -> Result<LaurentPoly> {
        let mut p = LaurentPoly::zero(&self.var, self.q);
        for (k, x) in self.terms() {
            p.add_term(k, &(x * &lambda.pow(k)?));
        }
        Ok(p)
    }

    pub fn eval(&self, t: &Scalar) -> Result<Scalar> {
        let mut acc = Scalar::zero(self.q);
        for (k, x) in self.terms() {
            acc += &(x * &t.pow(k)?);
        }
        Ok(acc)
    }

    fn dense(&self) -> (i64, Vec<Scalar>) {
        let lo = self.low().unwrap_or(0);
        let hi = self.high().unwrap_or(-1);
        let mut v = vec![Scalar::zero(self.q); (hi - lo + 1).max(0) as usize];
        for (k, x) in self.terms() {
            v[(k - lo) as usize] = x.clone();
        }
        (lo, v)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut p = self.clone();
        for (k, x) in o.terms() {
            p.add_term(k, x);
        }
        p
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        let mut p = self.clone();
        for (k, x) in o.terms() {
            p.add_term(k, &-x);
        }
        p
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        let mut p = LaurentPoly::zero(&self.var, self.q);
        for (i, x) in self.terms() {
            for (j, y) in o.terms() {
                p.add_term(i + j, &(x * y));
            }
        }
        p
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&Scalar::int(-1, self.q))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c}){}", self.var),
                _ => format!("({c}){}^{k}", self.var),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

// Dense polynomial helpers over Q(√q); index = exponent.

fn trim(p: &mut Vec<Scalar>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_divmod(a: &[Scalar], b: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    assert!(!b.is_empty(), "polynomial division by zero");
    let q = b[0].q();
    if r.len() < b.len() {
        return (vec![], r);
    }
    let lead_inv = b.last().unwrap().inv().expect("nonzero leading coefficient");
    let mut quo = vec![Scalar::zero(q); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * &lead_inv;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &(&c * bc);
        }
        quo[shift] = c;
        r.pop();
        trim(&mut r);
    }
    (quo, r)
}

fn poly_gcd(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = poly_divmod(&x, &y);
        x = y;
        y = r;
    }
    x
}

/// Reduced quotient of Laurent polynomials. The denominator is a polynomial
/// with constant term 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFn {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFn {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<RationalFn> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let var = num.var().to_string();
        let q = den.q();
        if num.is_zero() {
            return Ok(RationalFn { num, den: LaurentPoly::one(&var, q) });
        }
        let (nlo, n) = num.dense();
        let (dlo, d) = den.dense();
        let g = poly_gcd(&n, &d);
        let (n2, _) = poly_divmod(&n, &g);
        let (d2, _) = poly_divmod(&d, &g);
        let c0 = d2[0].inv()?;
        let n2: Vec<Scalar> = n2.iter().map(|x| x * &c0).collect();
        let d2: Vec<Scalar> = d2.iter().map(|x| x * &c0).collect();
        Ok(RationalFn {
            num: LaurentPoly::from_coeffs(nlo - dlo, &n2, &var, q),
            den: LaurentPoly::from_coeffs(0, &d2, &var, q),
        })
    }

    pub fn from_poly(p: LaurentPoly) -> RationalFn {
        let den = LaurentPoly::one(p.var(), p.q());
        RationalFn { num: p, den }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn den_degree(&self) -> i64 {
        self.den.high().unwrap_or(0)
    }

    pub fn mul(&self, o: &RationalFn) -> Result<RationalFn> {
        RationalFn::new(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn div(&self, o: &RationalFn) -> Result<RationalFn> {
        RationalFn::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn add(&self, o: &RationalFn) -> Result<RationalFn> {
        RationalFn::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }

    pub fn sub(&self, o: &RationalFn) -> Result<RationalFn> {
        RationalFn::new(&(&self.num * &o.den) - &(&o.num * &self.den), &self.den * &o.den)
    }

    /// Substitution t ↦ λ·t.
    pub fn dilate(&self, lambda: &Scalar) -> Result<RationalFn> {
        RationalFn::new(self.num.dilate(lambda)?, self.den.dilate(lambda)?)
    }

    /// Substitution t ↦ λ/t.
    pub fn invert_var(&self, lambda: &Scalar) -> Result<RationalFn> {
        let flip = |p: &LaurentPoly| -> Result<LaurentPoly> {
            let mut r = LaurentPoly::zero(p.var(), p.q());
            for (k, c) in p.terms() {
                r.add_term(-k, &(c * &lambda.pow(k)?));
            }
            Ok(r)
        };
        RationalFn::new(flip(&self.num)?, flip(&self.den)?)
    }

    /// Coefficients of t^start, …, t^(start+count−1) in the expansion at t = 0.
    pub fn expand(&self, start: i64, count: usize) -> Vec<Scalar> {
        let q = self.den.q();
        let lo = self.num.low().unwrap_or(start).min(start);
        let n = (start + count as i64 - lo).max(0) as usize;
        // power series of 1/den up to degree n
        let d: Vec<Scalar> = (0..=n as i64).map(|k| self.den.coeff(k)).collect();
        let mut inv = vec![Scalar::zero(q); n + 1];
        inv[0] = Scalar::one(q);
        for k in 1..=n {
            let mut acc = Scalar::zero(q);
            for j in 1..=k {
                acc -= &(&d[j] * &inv[k - j]);
            }
            inv[k] = acc;
        }
        (0..count as i64)
            .map(|i| {
                let e = start + i;
                let mut acc = Scalar::zero(q);
                for (k, c) in self.num.terms() {
                    let j = e - k;
                    if j >= 0 && (j as usize) <= n {
                        acc += &(c * &inv[j as usize]);
                    }
                }
                acc
            })
            .collect()
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] / [{}]", self.num, self.den)
    }
}

/// A sequence given by initial terms and a linear recurrence
/// s_n = −Σ_{i=1..L} c_i s_{n−i} valid for n ≥ L (index relative to offset).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceSeries {
    pub initial: Vec<Scalar>,
    pub recurrence: Vec<Scalar>,
    pub offset: i64,
}

impl RecurrenceSeries {
    /// Berlekamp–Massey fit of the shortest recurrence.
    pub fn fit(terms: &[Scalar], max_order: usize) -> Result<RecurrenceSeries> {
        let q = terms.first().map(|t| t.q()).unwrap_or(2);
        let mut c = vec![Scalar::one(q)];
        let mut b = vec![Scalar::one(q)];
        let mut l = 0usize;
        let mut m = 1usize;
        let mut bd = Scalar::one(q);
        for n in 0..terms.len() {
            let mut d = terms[n].clone();
            for i in 1..=l.min(c.len() - 1) {
                d += &(&c[i] * &terms[n - i]);
            }
            if d.is_zero() {
                m += 1;
                continue;
            }
            let coef = d.checked_div(&bd)?;
            let old = c.clone();
            if c.len() < b.len() + m {
                c.resize(b.len() + m, Scalar::zero(q));
            }
            for (i, bi) in b.iter().enumerate() {
                c[i + m] -= &(&coef * bi);
            }
            if 2 * l <= n {
                l = n + 1 - l;
                b = old;
                bd = d;
                m = 1;
                if l > max_order {
                    return Err(Error::NoRecurrence { max_order, position: n });
                }
            } else {
                m += 1;
            }
        }
        c.resize(l + 1, Scalar::zero(q));
        let series = RecurrenceSeries {
            initial: terms[..l.min(terms.len())].to_vec(),
            recurrence: c[1..].to_vec(),
            offset: 0,
        };
        if let Some(pos) = series.first_mismatch(terms) {
            return Err(Error::NoRecurrence { max_order, position: pos });
        }
        Ok(series)
    }

    pub fn order(&self) -> usize {
        self.recurrence.len()
    }

    /// The first `count` terms produced by the recurrence.
    pub fn terms(&self, count: usize) -> Vec<Scalar> {
        let mut out: Vec<Scalar> = self.initial.iter().take(count).cloned().collect();
        let q = self.initial.first().map(|t| t.q()).unwrap_or(2);
        while out.len() < count {
            let n = out.len();
            let mut s = Scalar::zero(q);
            for (i, c) in self.recurrence.iter().enumerate() {
                s -= &(c * &out[n - 1 - i]);
            }
            out.push(s);
        }
        out
    }

    fn first_mismatch(&self, terms: &[Scalar]) -> Option<usize> {
        let gen = self.terms(terms.len());
        gen.iter().zip(terms).position(|(a, b)| a != b)
    }

    /// Generating function Σ s_n t^(n+offset) as a reduced rational function.
    pub fn to_rational(&self, var: &str) -> Result<RationalFn> {
        let q = self.initial.first().map(|t| t.q()).unwrap_or(2);
        let l = self.order();
        let mut den = vec![Scalar::one(q)];
        den.extend(self.recurrence.iter().cloned());
        let s = self.terms(l);
        let mut num = vec![Scalar::zero(q); l];
        for k in 0..l {
            for j in 0..=k {
                num[k] += &(&den[j] * &s[k - j]);
            }
        }
        RationalFn::new(
            LaurentPoly::from_coeffs(self.offset, &num, var, q),
            LaurentPoly::from_coeffs(0, &den, var, q),
        )
    }
}

/// Minimal rational function (in `t`) whose expansion matches `terms`
/// (coefficients of t^0, t^1, …). At least 2·max_order + 1 terms are required.
pub fn series_to_rational(terms: &[Scalar], max_order: usize) -> Result<RationalFn> {
    if terms.len() < 2 * max_order + 1 {
        return Err(Error::Precondition(format!(
            "series_to_rational needs at least {} terms, got {}",
            2 * max_order + 1,
            terms.len()
        )));
    }
    let rec = RecurrenceSeries::fit(terms, max_order)?;
    let rf = rec.to_rational("t")?;
    let back = rf.expand(0, terms.len());
    if let Some(pos) = back.iter().zip(terms).position(|(a, b)| a != b) {
        return Err(Error::NoRecurrence { max_order, position: pos });
    }
    Ok(rf)
}

/// Gaussian binomial polynomial value [m choose l] at x.
pub fn gauss_binomial_at(m: i64, l: i64, x: &Scalar) -> Scalar {
    let q = x.q();
    if l < 0 || l > m {
        return Scalar::zero(q);
    }
    let mut num = Scalar::one(q);
    let mut den = Scalar::one(q);
    for i in 0..l {
        num = &num * &(&Scalar::one(q) - &x.pow(m - i).expect("power"));
        den = &den * &(&Scalar::one(q) - &x.pow(i + 1).expect("power"));
    }
    num.checked_div(&den).unwrap_or_else(|_| {
        // x is a root of unity; fall back to the q-Pascal recursion
        let mut row = vec![Scalar::one(q)];
        for n in 1..=m {
            let mut next = vec![Scalar::one(q); (n + 1) as usize];
            for k in 1..n {
                next[k as usize] = &row[(k - 1) as usize] + &(&x.pow(k).unwrap() * &row[k as usize]);
            }
            row = next;
        }
        row[l as usize].clone()
    })
}

pub fn big_pow(base: u64, e: u32) -> BigInt {
    BigInt::from(base).pow(e)
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn difference_of_squares() {
        let q = 2;
        let x = Scalar::parse("1+v", q).unwrap();
        let y = Scalar::parse("1-v", q).unwrap();
        assert_eq!(&x * &y, Scalar::int(-1, q));
    }

    #[test]
    fn inverse_of_v() {
        let inv = Scalar::v(2).inv().unwrap();
        assert_eq!(inv, Scalar::new(rat(0, 1), rat(1, 2), 2));
    }

    #[test]
    fn quotient_at_q3() {
        let q = 3;
        let x = Scalar::parse("1+v", q).unwrap();
        let y = Scalar::parse("1-v", q).unwrap();
        let z = x.checked_div(&y).unwrap();
        assert_eq!(z, Scalar::parse("-2-v", q).unwrap());
        assert_eq!(&z * &y, x);
    }

    #[test]
    fn division_by_zero_is_error() {
        assert_eq!(Scalar::one(2).checked_div(&Scalar::zero(2)), Err(Error::DivisionByZero));
    }

    #[test]
    fn perfect_square_collapses() {
        let s = Scalar::new(rat(1, 1), rat(3, 1), 4);
        assert!(s.is_rational());
        assert_eq!(s, Scalar::int(7, 4));
        assert_eq!(Scalar::v_pow(3, 9), Scalar::int(27, 9));
    }

    #[test]
    fn v_powers() {
        assert_eq!(Scalar::v_pow(2, 3), Scalar::int(3, 3));
        assert_eq!(Scalar::v_pow(-2, 3), Scalar::frac(1, 3, 3));
        assert_eq!(&Scalar::v_pow(-1, 5) * &Scalar::v(5), Scalar::one(5));
    }

    #[test]
    fn signum_of_irrational() {
        assert_eq!(Scalar::parse("3-2v", 2).unwrap().signum(), 1);
        assert_eq!(Scalar::parse("1-v", 2).unwrap().signum(), -1);
        assert_eq!(Scalar::parse("-3+3v", 2).unwrap().signum(), 1);
    }

    #[test]
    fn scalar_json_round_trip() {
        let s = Scalar::parse("1/2+3/4v", 2).unwrap();
        let j = s.to_json();
        assert_eq!(j, serde_json::json!({"a":"1/2","b":"3/4"}));
        assert_eq!(Scalar::from_json(&j, 2).unwrap(), s);
    }

    fn ints(xs: &[i64], q: u64) -> Vec<Scalar> {
        xs.iter().map(|&x| Scalar::int(x, q)).collect()
    }

    #[test]
    fn geometric_series() {
        let rf = series_to_rational(&ints(&[1, 2, 4, 8], 2), 1).unwrap();
        assert_eq!(rf.den(), &LaurentPoly::from_coeffs(0, &ints(&[1, -2], 2), "t", 2));
        assert_eq!(rf.num(), &LaurentPoly::one("t", 2));
    }

    #[test]
    fn zeta_series_recovered() {
        let rf = series_to_rational(&ints(&[1, 3, 7, 15, 31], 2), 2).unwrap();
        // (1 − t)(1 − 2t) = 1 − 3t + 2t²
        assert_eq!(rf.den(), &LaurentPoly::from_coeffs(0, &ints(&[1, -3, 2], 2), "t", 2));
        assert_eq!(rf.num(), &LaurentPoly::one("t", 2));
    }

    #[test]
    fn constant_series() {
        let rf = series_to_rational(&ints(&[1, 0, 0, 0, 0], 2), 2).unwrap();
        assert_eq!(rf, RationalFn::from_poly(LaurentPoly::one("t", 2)));
    }

    #[test]
    fn unfit_series_reports_position() {
        let err = series_to_rational(&ints(&[1, 1, 2, 3, 5, 8, 13], 2), 1).unwrap_err();
        assert!(matches!(err, Error::NoRecurrence { max_order: 1, .. }));
    }

    #[test]
    fn rational_fn_reduces() {
        let q = 3;
        let p = LaurentPoly::from_coeffs(0, &ints(&[1, -1], q), "t", q);
        let sq = &p * &p;
        let rf = RationalFn::new(p.shift(2), sq.shift(1)).unwrap();
        assert_eq!(rf.den(), &p);
        assert_eq!(rf.num(), &LaurentPoly::monomial(Scalar::one(q), 1, "t"));
    }

    #[test]
    fn gauss_binomials() {
        let two = Scalar::int(2, 2);
        assert_eq!(gauss_binomial_at(3, 1, &two), Scalar::int(7, 2));
        assert_eq!(gauss_binomial_at(4, 2, &two), Scalar::int(35, 2));
        assert_eq!(gauss_binomial_at(5, 0, &two), Scalar::one(2));
        assert_eq!(gauss_binomial_at(4, 2, &Scalar::int(1, 2)), Scalar::int(6, 2));
    }
}
