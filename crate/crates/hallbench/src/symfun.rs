//! Symmetric functions in finitely many variables: monomial and power-sum
//! bases, Hall–Littlewood polynomials by symmetrization, the Macdonald
//! scalar product and the characteristic map from the torsion Hall algebra.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::finitary::torsion::aut_order_partition;
use crate::finitary::{Category, ObjLabel, Partition, TorsionLocal, Window};
use crate::hallhopf::{AlgElem, HallAlgebra};
use crate::linalg;
use crate::report::Report;
use crate::scalars::{Rational, Scalar};

/// Polynomial in n commuting variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    n: usize,
    q: u64,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl MPoly {
    pub fn zero(n: usize, q: u64) -> MPoly {
        MPoly { n, q, terms: BTreeMap::new() }
    }

    pub fn constant(c: Scalar, n: usize) -> MPoly {
        let mut p = MPoly::zero(n, c.q());
        p.add_term(vec![0; n], &c);
        p
    }

    pub fn monomial(exps: Vec<u32>, c: Scalar) -> MPoly {
        let mut p = MPoly::zero(exps.len(), c.q());
        p.add_term(exps, &c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e.clone()).or_insert_with(|| Scalar::zero(self.q));
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn coeff(&self, e: &[u32]) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_else(|| Scalar::zero(self.q))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> MPoly {
        let mut out = MPoly::zero(self.n, self.q);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), &(x * c));
        }
        out
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.n, self.q);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, &(c1 * c2));
            }
        }
        out
    }

    /// Keeps terms whose degree in the variables `vars` is at most `max`.
    pub fn truncate(&self, vars: &[usize], max: u32) -> MPoly {
        let mut out = MPoly::zero(self.n, self.q);
        for (e, c) in &self.terms {
            if vars.iter().map(|&i| e[i]).sum::<u32>() <= max {
                out.add_term(e.clone(), c);
            }
        }
        out
    }

    /// f(x_{w(1)}, …): the exponent of x_i moves to x_{w(i)}.
    pub fn permute(&self, w: &[usize]) -> MPoly {
        let mut out = MPoly::zero(self.n, self.q);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; self.n];
            for i in 0..self.n {
                e2[w[i]] = e[i];
            }
            out.add_term(e2, c);
        }
        out
    }

    /// Places the variables of `self` at positions `at` among `n` variables.
    pub fn embed(&self, n: usize, at: &[usize]) -> MPoly {
        let mut out = MPoly::zero(n, self.q);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; n];
            for (i, &k) in at.iter().enumerate() {
                e2[k] = e[i];
            }
            out.add_term(e2, c);
        }
        out
    }

    /// Exact division by x_i − x_j.
    pub fn div_linear(&self, i: usize, j: usize) -> Result<MPoly> {
        // Long division in x_i: strip the highest power of x_i each step.
        let mut rem = self.clone();
        let mut quot = MPoly::zero(self.n, self.q);
        loop {
            let lead = rem.terms.iter().filter(|(e, _)| e[i] > 0).max_by_key(|(e, _)| e[i]).map(|(e, c)| (e.clone(), c.clone()));
            let Some((e, c)) = lead else { break };
            let mut qe = e.clone();
            qe[i] -= 1;
            quot.add_term(qe.clone(), &c);
            // subtract c·x^{qe}·(x_i − x_j)
            let mut e_i = qe.clone();
            e_i[i] += 1;
            let mut e_j = qe;
            e_j[j] += 1;
            rem.add_term(e_i, &-c.clone());
            rem.add_term(e_j, &c);
        }
        if !rem.is_zero() {
            return Err(Error::Precondition("polynomial not divisible by x_i - x_j".into()));
        }
        Ok(quot)
    }
}

/// Symmetric polynomial in n variables, stored in the monomial basis m_λ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymFn {
    n: usize,
    q: u64,
    coeffs: BTreeMap<Partition, Scalar>,
}

fn perms(n: usize) -> Vec<(Vec<usize>, i64)> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn rec(k: usize, cur: &mut Vec<usize>, sign: i64, out: &mut Vec<(Vec<usize>, i64)>) {
        if k == cur.len() {
            out.push((cur.clone(), sign));
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            rec(k + 1, cur, if i == k { sign } else { -sign }, out);
            cur.swap(k, i);
        }
    }
    rec(0, &mut cur, 1, &mut out);
    out
}

fn padded(l: &Partition, n: usize) -> Vec<u32> {
    let mut e = l.0.clone();
    e.resize(n, 0);
    e
}

/// Partitions of k with at most n parts.
pub fn partitions_bounded(k: u32, n: usize) -> Vec<Partition> {
    Partition::all(k).into_iter().filter(|p| p.len() <= n).collect()
}

impl SymFn {
    pub fn zero(n: usize, q: u64) -> SymFn {
        SymFn { n, q, coeffs: BTreeMap::new() }
    }

    pub fn one(n: usize, q: u64) -> SymFn {
        SymFn::monomial(&Partition::empty(), n, Scalar::one(q))
    }

    pub fn monomial(l: &Partition, n: usize, c: Scalar) -> SymFn {
        let mut f = SymFn::zero(n, c.q());
        f.add_term(l.clone(), &c);
        f
    }

    pub fn power_sum(d: u32, n: usize, q: u64) -> SymFn {
        SymFn::monomial(&Partition(vec![d]), n, Scalar::one(q))
    }

    pub fn elementary(k: u32, n: usize, q: u64) -> SymFn {
        if k as usize > n {
            return SymFn::zero(n, q);
        }
        SymFn::monomial(&Partition(vec![1; k as usize]), n, Scalar::one(q))
    }

    /// p_μ = p_{μ1} p_{μ2} ⋯.
    pub fn power_sum_product(mu: &Partition, n: usize, q: u64) -> SymFn {
        mu.0.iter().fold(SymFn::one(n, q), |acc, &d| acc.mul(&SymFn::power_sum(d, n, q)))
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, l: Partition, c: &Scalar) {
        if c.is_zero() || l.len() > self.n {
            return;
        }
        let entry = self.coeffs.entry(l.clone()).or_insert_with(|| Scalar::zero(self.q));
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&l);
        }
    }

    pub fn coeff(&self, l: &Partition) -> Scalar {
        self.coeffs.get(l).cloned().unwrap_or_else(|| Scalar::zero(self.q))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn add(&self, o: &SymFn) -> SymFn {
        let mut out = self.clone();
        for (l, c) in &o.coeffs {
            out.add_term(l.clone(), c);
        }
        out
    }

    pub fn sub(&self, o: &SymFn) -> SymFn {
        self.add(&o.scale(&Scalar::int(-1, self.q)))
    }

    pub fn scale(&self, c: &Scalar) -> SymFn {
        let mut out = SymFn::zero(self.n, self.q);
        for (l, x) in &self.coeffs {
            out.add_term(l.clone(), &(x * c));
        }
        out
    }

    /// Expands every m_λ into its distinct monomials.
    pub fn to_poly(&self) -> MPoly {
        let mut out = MPoly::zero(self.n, self.q);
        for (l, c) in &self.coeffs {
            let mut seen = std::collections::BTreeSet::new();
            for (w, _) in perms(self.n) {
                let e = padded(l, self.n);
                let mut e2 = vec![0; self.n];
                for i in 0..self.n {
                    e2[w[i]] = e[i];
                }
                if seen.insert(e2.clone()) {
                    out.add_term(e2, c);
                }
            }
        }
        out
    }

    /// Reads the monomial coefficients of a symmetric polynomial; rejects a
    /// non-symmetric input.
    pub fn from_poly(p: &MPoly) -> Result<SymFn> {
        let mut out = SymFn::zero(p.n, p.q);
        for (e, c) in &p.terms {
            let mut s = e.clone();
            s.sort_unstable_by(|a, b| b.cmp(a));
            let l = Partition(s.into_iter().filter(|&x| x > 0).collect());
            if out.coeffs.get(&l).is_some() {
                if out.coeff(&l) != *c {
                    return Err(Error::Precondition("polynomial is not symmetric".into()));
                }
                continue;
            }
            out.add_term(l, c);
        }
        if out.to_poly() != *p {
            return Err(Error::Precondition("polynomial is not symmetric".into()));
        }
        Ok(out)
    }

    pub fn mul(&self, o: &SymFn) -> SymFn {
        SymFn::from_poly(&self.to_poly().mul(&o.to_poly())).expect("product of symmetric polynomials is symmetric")
    }

    /// Coefficients in the power-sum basis, weight by weight. Needs n at
    /// least the top weight so that the bases correspond.
    pub fn to_power_sums(&self) -> Result<BTreeMap<Partition, Scalar>> {
        let mut weights: Vec<u32> = self.coeffs.keys().map(|l| l.size()).collect();
        weights.sort_unstable();
        weights.dedup();
        let mut out = BTreeMap::new();
        for k in weights {
            if k as usize > self.n {
                return Err(Error::Precondition(format!(
                    "power-sum expansion of weight {k} needs at least {k} variables, have {}",
                    self.n
                )));
            }
            let parts = Partition::all(k);
            // column μ of m: the m-coefficients of p_μ
            let cols: Vec<SymFn> = parts.iter().map(|mu| SymFn::power_sum_product(mu, self.n, self.q)).collect();
            let m: linalg::Matrix =
                parts.iter().map(|lam| cols.iter().map(|p| p.coeff(lam)).collect()).collect();
            let rhs: Vec<Scalar> = parts.iter().map(|lam| self.coeff(lam)).collect();
            let sol = linalg::solve(&m, &rhs)?;
            for (mu, c) in parts.into_iter().zip(sol) {
                if !c.is_zero() {
                    out.insert(mu, c);
                }
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        let coeffs: Vec<Value> = self.coeffs.iter().map(|(l, c)| json!({"mu": l.0, "c": c.to_json()})).collect();
        json!({"basis": "monomial", "nvars": self.n, "coeffs": coeffs})
    }
}

impl fmt::Display for SymFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|(l, c)| format!("({c})*m{l}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn t_int(k: u32, t: &Scalar) -> Scalar {
    // 1 + t + … + t^{k−1}
    let mut acc = Scalar::zero(t.q());
    let mut pw = Scalar::one(t.q());
    for _ in 0..k {
        acc += &pw;
        pw *= t;
    }
    acc
}

fn t_pow(t: &Scalar, k: u32) -> Scalar {
    t.pow(k as i64).expect("nonnegative power")
}

/// P_λ(x_1..x_n; t) = v_λ(t)^{-1} Σ_{w∈S_n} w(x^λ Π_{i<j} (x_i − t x_j)/(x_i − x_j)).
pub fn hl_expand(mu: &Partition, n: usize, t: &Scalar) -> Result<SymFn> {
    if n < mu.len() {
        return Err(Error::Precondition(format!("need at least {} variables for {mu}", mu.len())));
    }
    let q = t.q();
    let one = Scalar::one(q);
    let mut f = MPoly::monomial(padded(mu, n), one.clone());
    for i in 0..n {
        for j in i + 1..n {
            let mut ei = vec![0; n];
            ei[i] = 1;
            let mut ej = vec![0; n];
            ej[j] = 1;
            let mut lin = MPoly::monomial(ei, one.clone());
            lin.add_term(ej, &-t.clone());
            f = f.mul(&lin);
        }
    }
    let mut alt = MPoly::zero(n, q);
    for (w, sign) in perms(n) {
        alt = alt.add(&f.permute(&w).scale(&Scalar::int(sign, q)));
    }
    for i in 0..n {
        for j in i + 1..n {
            alt = alt.div_linear(i, j)?;
        }
    }
    // v_λ(t) = Π_{i≥0} Π_{j=1}^{m_i} [j]_t, with m_0 = n − ℓ(λ)
    let mut mult = mu.multiplicities();
    mult.push((n - mu.len()) as u32);
    let mut v = one.clone();
    for m in mult {
        for j in 1..=m {
            v *= &t_int(j, t);
        }
    }
    SymFn::from_poly(&alt.scale(&v.inv()?))
}

/// b_μ(t) = Π_i φ_{m_i(μ)}(t), φ_m(t) = (1−t)(1−t²)⋯(1−t^m).
pub fn b_factor(mu: &Partition, t: &Scalar) -> Scalar {
    let q = t.q();
    let mut acc = Scalar::one(q);
    for m in mu.multiplicities() {
        for j in 1..=m {
            acc *= &(&Scalar::one(q) - &t_pow(t, j));
        }
    }
    acc
}

/// The same b_μ read off the automorphism count at t = 1/q_x:
/// b_μ = q_x^{−|μ|−2n(μ)}·|Aut F_{x,μ}|.
pub fn b_factor_from_aut(mu: &Partition, qx: u64, q: u64) -> Scalar {
    let aut = aut_order_partition(mu, qx);
    let e = mu.size() as i64 + 2 * mu.n() as i64;
    let den = BigInt::from(qx).pow(e as u32);
    Scalar::rational(Rational::new(aut, den), q)
}

fn z_factor(l: &Partition) -> BigInt {
    let mut acc = BigInt::from(1);
    let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
    for &x in &l.0 {
        *counts.entry(x).or_default() += 1;
    }
    for (i, m) in counts {
        acc *= BigInt::from(i).pow(m);
        for k in 1..=m {
            acc *= k;
        }
    }
    acc
}

/// (p_λ, p_μ) = δ_{λμ} z_λ Π_i (1 − t^{λ_i})^{−1}, extended bilinearly.
pub fn macdonald_pair(f: &SymFn, g: &SymFn, t: &Scalar) -> Result<Scalar> {
    let q = t.q();
    let a = f.to_power_sums()?;
    let b = g.to_power_sums()?;
    let mut acc = Scalar::zero(q);
    for (l, ca) in &a {
        let Some(cb) = b.get(l) else { continue };
        let mut w = Scalar::big(z_factor(l), q);
        for &d in &l.0 {
            w = w.checked_div(&(&Scalar::one(q) - &t_pow(t, d)))?;
        }
        acc += &(&(ca * cb) * &w);
    }
    Ok(acc)
}

/// Ch[F_{x,μ}] = q_x^{−n(μ)} P_μ(z; q_x^{−1}) on pure torsion elements.
pub fn ch_map(x: &AlgElem, qx: u64, n: usize) -> Result<SymFn> {
    let q = x.q();
    let t = Scalar::frac(1, qx as i64, q);
    let mut out = SymFn::zero(n, q);
    for ((kappa, obj), c) in x.terms() {
        if !kappa.is_zero() {
            return Err(Error::Precondition("characteristic map takes elements without Cartan symbols".into()));
        }
        let ObjLabel::Local(mu) = obj else {
            return Err(Error::BackendMismatch(format!("characteristic map needs torsion-local objects, got {obj}")));
        };
        let scale = Scalar::q_pow(-(mu.n() as i64), qx).to_rational().expect("rational power");
        let p = hl_expand(mu, n, &t)?;
        out = out.add(&p.scale(&c.scale_rational(&scale)));
    }
    Ok(out)
}

/// Σ_μ b_μ P_μ(z) P_μ(w) = Π_{i,j} (1 − t z_i w_j)/(1 − z_i w_j) through
/// z-degree `max_weight`, with n variables on each side. `b` supplies the
/// b_μ so that a corrupted table can be fed in as a control.
pub fn cauchy_check_with(t: &Scalar, max_weight: u32, n: usize, b: impl Fn(&Partition) -> Scalar) -> Result<Report> {
    let q = t.q();
    let one = Scalar::one(q);
    let zs: Vec<usize> = (0..n).collect();
    let ws: Vec<usize> = (n..2 * n).collect();
    let mut lhs = MPoly::zero(2 * n, q);
    for k in 0..=max_weight {
        for mu in partitions_bounded(k, n) {
            let p = hl_expand(&mu, n, t)?.to_poly();
            let term = p.embed(2 * n, &zs).mul(&p.embed(2 * n, &ws)).scale(&b(&mu));
            lhs = lhs.add(&term);
        }
    }
    let mut rhs = MPoly::constant(one.clone(), 2 * n);
    for i in 0..n {
        for j in 0..n {
            let mut e = vec![0u32; 2 * n];
            e[i] = 1;
            e[n + j] = 1;
            let mut geo = MPoly::zero(2 * n, q);
            for k in 0..=max_weight {
                geo.add_term(e.iter().map(|x| x * k).collect(), &one);
            }
            let mut lin = MPoly::constant(one.clone(), 2 * n);
            lin.add_term(e, &-t.clone());
            rhs = rhs.mul(&geo).truncate(&zs, max_weight).mul(&lin).truncate(&zs, max_weight);
        }
    }
    let mut rep = Report::new("symfun", "cauchy identity");
    for k in 0..=max_weight {
        let pick = |p: &MPoly| {
            let mut out = MPoly::zero(2 * n, q);
            for (e, c) in p.terms() {
                if zs.iter().map(|&i| e[i]).sum::<u32>() == k {
                    out.add_term(e.clone(), c);
                }
            }
            out
        };
        let (l, r) = (pick(&lhs), pick(&rhs));
        rep.check(format!("weight {k}"), format!("{} terms", l.terms.len()), format!("{} terms", r.terms.len()), l == r);
    }
    Ok(rep)
}

pub fn cauchy_check(t: &Scalar, max_weight: u32, n: usize) -> Result<Report> {
    cauchy_check_with(t, max_weight, n, |mu| b_factor(mu, t))
}

/// Ch(u_μ ∘ u_ν) = Ch(u_μ)·Ch(u_ν) for |μ| + |ν| ≤ max_weight.
pub fn hall_vs_hl_check(cat: &TorsionLocal, max_weight: u32) -> Result<Report> {
    let h = HallAlgebra::new(cat, Window::torsion(max_weight as i64));
    let qx = cat.qx();
    let mut rep = Report::new("symfun", "hall numbers vs Hall-Littlewood");
    for total in 1..=max_weight {
        let n = total as usize;
        for a in 0..=total {
            for mu in Partition::all(a) {
                for nu in Partition::all(total - a) {
                    let x = h.obj(ObjLabel::Local(mu.clone()));
                    let y = h.obj(ObjLabel::Local(nu.clone()));
                    let lhs = ch_map(&h.hall_mul(&x, &y)?, qx, n)?;
                    let rhs = ch_map(&x, qx, n)?.mul(&ch_map(&y, qx, n)?);
                    rep.expect_eq(format!("q_x={qx} {mu}*{nu}"), &lhs, &rhs);
                }
            }
        }
    }
    Ok(rep)
}

/// (u₁, u₂) = q_x^{−d}·(Ch u₁, Ch u₂) on torsion basis elements of weight d.
pub fn green_macdonald_check(cat: &TorsionLocal, max_weight: u32) -> Result<Report> {
    let h = HallAlgebra::new(cat, Window::torsion(max_weight as i64));
    let qx = cat.qx();
    let q = cat.q();
    let t = Scalar::frac(1, qx as i64, q);
    let mut rep = Report::new("symfun", "green pairing vs Macdonald pairing");
    for d in 1..=max_weight {
        let n = d as usize;
        for mu in Partition::all(d) {
            for nu in Partition::all(d) {
                let x = h.obj(ObjLabel::Local(mu.clone()));
                let y = h.obj(ObjLabel::Local(nu.clone()));
                let lhs = h.green_pair(&x, &y)?;
                let mac = macdonald_pair(&ch_map(&x, qx, n)?, &ch_map(&y, qx, n)?, &t)?;
                let rhs = mac.scale_rational(&Scalar::q_pow(-(d as i64), qx).to_rational().expect("rational"));
                rep.expect_eq(format!("q_x={qx} ({mu},{nu})"), &lhs, &rhs);
            }
        }
    }
    Ok(rep)
}

/// (p_d, p_d) = d/(1 − q_x^{−d}) for d ≤ max_d.
pub fn power_sum_norm_check(qx: u64, max_d: u32) -> Result<Report> {
    let t = Scalar::frac(1, qx as i64, qx);
    let mut rep = Report::new("symfun", "power-sum norms");
    for d in 1..=max_d {
        let p = SymFn::power_sum(d, d as usize, qx);
        let lhs = macdonald_pair(&p, &p, &t)?;
        let rhs = Scalar::int(d as i64, qx).checked_div(&(&Scalar::one(qx) - &t_pow(&t, d)))?;
        rep.expect_eq(format!("q_x={qx} d={d}"), &lhs, &rhs);
        for d2 in 1..d {
            let p2 = SymFn::power_sum(d2, d as usize, qx);
            let z = macdonald_pair(&p, &p2, &t)?;
            rep.expect_eq(format!("q_x={qx} ({d},{d2})"), &z, &Scalar::zero(qx));
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn small_hall_littlewood() {
        let t = Scalar::frac(1, 2, 2);
        for n in [2, 3] {
            let p11 = hl_expand(&lam(&[1, 1]), n, &t).unwrap();
            assert_eq!(p11, SymFn::monomial(&lam(&[1, 1]), n, Scalar::one(2)));
            let p2 = hl_expand(&lam(&[2]), n, &t).unwrap();
            let mut want = SymFn::monomial(&lam(&[2]), n, Scalar::one(2));
            want.add_term(lam(&[1, 1]), &(&Scalar::one(2) - &t));
            assert_eq!(p2, want);
            let p1 = hl_expand(&lam(&[1]), n, &t).unwrap();
            assert_eq!(p1, SymFn::monomial(&lam(&[1]), n, Scalar::one(2)));
        }
        assert!(hl_expand(&lam(&[1, 1, 1]), 2, &t).is_err());
    }

    #[test]
    fn hall_littlewood_is_schur_at_zero_and_monomial_at_one() {
        let zero = Scalar::zero(3);
        // s_{21} = m_{21} + 2 m_{111}
        let s21 = hl_expand(&lam(&[2, 1]), 3, &zero).unwrap();
        assert_eq!(s21.coeff(&lam(&[1, 1, 1])), Scalar::int(2, 3));
        let one = Scalar::one(3);
        let m21 = hl_expand(&lam(&[2, 1]), 3, &one).unwrap();
        assert_eq!(m21, SymFn::monomial(&lam(&[2, 1]), 3, one));
    }

    #[test]
    fn b_factors() {
        let t = Scalar::frac(1, 3, 3);
        assert_eq!(b_factor(&Partition::empty(), &t), Scalar::one(3));
        assert_eq!(b_factor(&lam(&[1]), &t), Scalar::frac(2, 3, 3));
        assert_eq!(b_factor(&lam(&[1, 1]), &t), Scalar::frac(2 * 8, 27, 3));
        for mu in [lam(&[1]), lam(&[2, 1]), lam(&[1, 1, 1]), lam(&[3, 1, 1])] {
            assert_eq!(b_factor(&mu, &t), b_factor_from_aut(&mu, 3, 3));
        }
    }

    #[test]
    fn power_sums_and_pairing() {
        let rep = power_sum_norm_check(2, 4).unwrap();
        assert!(rep.passed(), "{}", rep.summary());
        let t = Scalar::frac(1, 2, 2);
        let p1 = SymFn::power_sum(1, 2, 2);
        assert_eq!(macdonald_pair(&p1, &p1, &t).unwrap(), Scalar::int(2, 2));
        let p2 = SymFn::power_sum(2, 2, 2);
        assert_eq!(macdonald_pair(&p2, &p2, &t).unwrap(), Scalar::frac(8, 3, 2));
    }

    #[test]
    fn hl_orthogonality() {
        let t = Scalar::frac(1, 2, 2);
        let n = 3;
        let parts = Partition::all(3);
        for a in &parts {
            for b in &parts {
                let pa = hl_expand(a, n, &t).unwrap();
                let qb = hl_expand(b, n, &t).unwrap().scale(&b_factor(b, &t));
                let v = macdonald_pair(&pa, &qb, &t).unwrap();
                let want = if a == b { Scalar::one(2) } else { Scalar::zero(2) };
                assert_eq!(v, want, "{a} {b}");
            }
        }
    }

    #[test]
    fn cauchy_small() {
        let t = Scalar::frac(1, 2, 2);
        let rep = cauchy_check(&t, 3, 2).unwrap();
        assert!(rep.passed(), "{}", rep.summary());
        let bad = cauchy_check_with(&t, 2, 2, |mu| if mu.size() == 2 { Scalar::one(2) } else { b_factor(mu, &t) }).unwrap();
        assert!(!bad.passed());
    }

    #[test]
    fn characteristic_map() {
        let cat = TorsionLocal::new(2, 1).unwrap();
        let h = HallAlgebra::new(&cat, Window::torsion(3));
        let e2 = ch_map(&h.obj(ObjLabel::Local(lam(&[1, 1]))), 2, 2).unwrap();
        // q_x^{−n(n−1)/2} e_n
        assert_eq!(e2, SymFn::elementary(2, 2, 2).scale(&Scalar::frac(1, 2, 2)));
        let rep = hall_vs_hl_check(&cat, 3).unwrap();
        assert!(rep.passed(), "{}", rep.summary());
        let rep = green_macdonald_check(&cat, 3).unwrap();
        assert!(rep.passed(), "{}", rep.summary());
    }
}
