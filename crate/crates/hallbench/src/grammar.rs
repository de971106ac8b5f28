//! Text syntax for backends and algebra elements.
//!
//! Elements are sums of terms joined by `+` or `-`. A term is an optional
//! scalar prefix `(1/2+3/4v)*`, Cartan factors `K^n`, `c(d)` or `K(a,b,..)`,
//! and at most one object in brackets, last: `(2)*K^-1c(3)[O(2)]`.
//! Objects are `[O(1)+T(pt=inf,lam=[1])]` on P¹, `[(2,1)]` at a single
//! point, and `[S0]` or `[Q(1,1;[1],[0])]` for quivers.

use crate::error::{Error, Result};
use crate::finitary::ff::Mat;
use crate::finitary::{Category, CohP1, KClass, ObjLabel, Partition, Quiver, QuiverRep, Sheaf, TorsionLocal};
use crate::hallhopf::AlgElem;
use crate::scalars::Scalar;

/// A concrete category chosen by name.
pub enum Backend {
    Coh(CohP1),
    Local(TorsionLocal),
    Quiver(Quiver),
}

impl Backend {
    /// `coh-p1`, `torsion-local` (point of degree 1) or `quiver:<name>`.
    pub fn by_name(name: &str, p: u32) -> Result<Backend> {
        match name {
            "coh-p1" => Ok(Backend::Coh(CohP1::new(p)?)),
            "torsion-local" => Ok(Backend::Local(TorsionLocal::new(p, 1)?)),
            _ => match name.strip_prefix("quiver:") {
                Some(q) => Ok(Backend::Quiver(Quiver::by_name(q, p)?)),
                None => Err(Error::Parse(format!("unknown backend {name:?}"))),
            },
        }
    }

    pub fn cat(&self) -> &dyn Category {
        match self {
            Backend::Coh(c) => c,
            Backend::Local(c) => c,
            Backend::Quiver(c) => c,
        }
    }

    pub fn parse_obj(&self, s: &str) -> Result<ObjLabel> {
        let s = s.trim();
        match self {
            Backend::Coh(c) => Ok(ObjLabel::Sheaf(Sheaf::parse(s, c.p)?)),
            Backend::Local(_) => {
                let inner = s.trim_start_matches('F').trim_start_matches('(').trim_end_matches(')');
                Ok(ObjLabel::Local(Partition::new(ints(inner)?.into_iter().map(|x| x as u32).collect())?))
            }
            Backend::Quiver(q) => {
                if let Some(i) = s.strip_prefix('S') {
                    let i: usize = i.parse().map_err(|_| Error::Parse(format!("bad simple {s:?}")))?;
                    if i >= q.vertices {
                        return Err(Error::Parse(format!("no vertex {i}")));
                    }
                    return Ok(ObjLabel::Quiver(q.simple(i)));
                }
                Ok(ObjLabel::Quiver(q.canonical(&parse_rep(q, s)?)?))
            }
        }
    }

    /// Cartan class of `K^n` (rank direction for P¹, first coordinate otherwise).
    fn k_power(&self, n: i64) -> KClass {
        let mut k = self.cat().zero_class();
        k.0[0] = n;
        k
    }

    fn c_power(&self, d: i64) -> Result<KClass> {
        match self {
            Backend::Coh(_) => Ok(KClass(vec![0, d])),
            _ => Err(Error::Parse("c(d) needs the coh-p1 backend".into())),
        }
    }
}

fn ints(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad integer {x:?}")))).collect()
}

/// `Q(d0,d1;[rows|rows],[..])` with one matrix per arrow, rows written as digit strings.
fn parse_rep(q: &Quiver, s: &str) -> Result<QuiverRep> {
    let bad = || Error::Parse(format!("bad quiver representation {s:?}"));
    let inner = s.strip_prefix("Q(").and_then(|x| x.strip_suffix(')')).ok_or_else(bad)?;
    let (dims, mats) = inner.split_once(';').unwrap_or((inner, ""));
    let dims: Vec<usize> = ints(dims)?.into_iter().map(|d| usize::try_from(d).map_err(|_| bad())).collect::<Result<_>>()?;
    if dims.len() != q.vertices {
        return Err(bad());
    }
    let mut out = q.zero_rep(&dims);
    let blocks: Vec<&str> = mats.split(',').map(str::trim).filter(|b| !b.is_empty()).collect();
    if !blocks.is_empty() && blocks.len() != q.arrows.len() {
        return Err(bad());
    }
    for (a, block) in blocks.iter().enumerate() {
        let (src, dst) = q.arrows[a];
        let body = block.strip_prefix('[').and_then(|b| b.strip_suffix(']')).ok_or_else(bad)?;
        let rows: Vec<Vec<u32>> = if body.is_empty() {
            Vec::new()
        } else {
            body.split('|').map(|r| r.chars().map(|c| c.to_digit(10).map(|d| d % q.p).ok_or_else(bad)).collect()).collect::<Result<_>>()?
        };
        if rows.len() != dims[dst] || rows.iter().any(|r| r.len() != dims[src]) {
            return Err(bad());
        }
        out.mats[a] = Mat::from_rows(&rows, dims[src]);
    }
    Ok(out)
}

/// Splits at top-level `+`/`-` (outside brackets and parentheses), keeping signs.
fn split_terms(s: &str) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut neg = false;
    for ch in s.chars() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            '+' | '-' if depth == 0 && !cur.is_empty() && !cur.ends_with('^') => {
                out.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
                continue;
            }
            '-' if depth == 0 && cur.is_empty() => {
                neg = !neg;
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    out.push((neg, cur));
    out
}

/// Parses an element of the K-extended Hall algebra of `backend`.
pub fn parse_element(backend: &Backend, s: &str) -> Result<AlgElem> {
    let cat = backend.cat();
    let q = cat.q();
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty element".into()));
    }
    let mut out = AlgElem::zero(q);
    for (neg, term) in split_terms(&s) {
        let bad = || Error::Parse(format!("bad term {term:?}"));
        let mut rest = term.as_str();
        let mut coef = Scalar::one(q);
        if rest.starts_with('(') {
            let close = rest.find(')').ok_or_else(bad)?;
            coef = Scalar::parse(&rest[1..close], q)?;
            rest = &rest[close + 1..];
            rest = rest.strip_prefix('*').unwrap_or(rest);
        } else if let Some(star) = rest.find('*') {
            coef = Scalar::parse(&rest[..star], q)?;
            rest = &rest[star + 1..];
        } else if !rest.is_empty() && !rest.starts_with(['K', 'c', '[']) {
            coef = Scalar::parse(rest, q)?;
            rest = "";
        }
        let mut kappa = cat.zero_class();
        let mut obj = cat.zero_obj();
        while !rest.is_empty() {
            if let Some(r) = rest.strip_prefix("K^") {
                let end = r.char_indices().find(|&(i, c)| !(c.is_ascii_digit() || (i == 0 && c == '-'))).map_or(r.len(), |x| x.0);
                let n: i64 = r[..end].parse().map_err(|_| bad())?;
                kappa = &kappa + &backend.k_power(n);
                rest = &r[end..];
            } else if let Some(r) = rest.strip_prefix("K(") {
                let close = r.find(')').ok_or_else(bad)?;
                let v = ints(&r[..close])?;
                if v.len() != kappa.0.len() {
                    return Err(bad());
                }
                kappa = &kappa + &KClass(v);
                rest = &r[close + 1..];
            } else if let Some(r) = rest.strip_prefix('K') {
                kappa = &kappa + &backend.k_power(1);
                rest = r;
            } else if let Some(r) = rest.strip_prefix("c(") {
                let close = r.find(')').ok_or_else(bad)?;
                let d: i64 = r[..close].parse().map_err(|_| bad())?;
                kappa = &kappa + &backend.c_power(d)?;
                rest = &r[close + 1..];
            } else if let Some(r) = rest.strip_prefix('[') {
                let close = r.rfind(']').ok_or_else(bad)?;
                if close + 1 != r.len() || !obj.is_zero() {
                    return Err(bad());
                }
                obj = backend.parse_obj(&r[..close])?;
                rest = "";
            } else {
                return Err(bad());
            }
        }
        let coef = if neg { -coef } else { coef };
        out.add_term(kappa, obj, &coef);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sheaf_elements() {
        let b = Backend::by_name("coh-p1", 2).unwrap();
        let x = parse_element(&b, "(1/2+3/4v)*K^-1c(3)[O(2)] + [T(pt=inf,lam=[1,1])] - 2").unwrap();
        assert_eq!(x.len(), 3);
        assert_eq!(x.coeff(&KClass(vec![-1, 3]), &ObjLabel::Sheaf(Sheaf::line(2))), Scalar::parse("1/2+3/4v", 2).unwrap());
        assert_eq!(x.coeff(&KClass(vec![0, 0]), &ObjLabel::Sheaf(Sheaf::zero())), Scalar::int(-2, 2));
        let y = parse_element(&b, "[O(1)+O(-1)]").unwrap();
        assert_eq!(y.terms().next().unwrap().0 .1, ObjLabel::Sheaf(Sheaf::bundle(&[1, -1])));
    }

    #[test]
    fn quiver_and_local_elements() {
        let b = Backend::by_name("quiver:kronecker", 2).unwrap();
        let x = parse_element(&b, "[S0] + K(1,0)[Q(1,1;[1],[0])]").unwrap();
        assert_eq!(x.len(), 2);
        let l = Backend::by_name("torsion-local", 3).unwrap();
        let y = parse_element(&l, "(2)*[(2,1)]").unwrap();
        assert_eq!(y.coeff(&KClass(vec![0]), &ObjLabel::Local(Partition::new(vec![2, 1]).unwrap())), Scalar::int(2, 3));
    }

    #[test]
    fn rejects_bad_input() {
        let b = Backend::by_name("coh-p1", 2).unwrap();
        for s in ["", "[O(x)]", "[O(1)]K", "c(1", "[S0]"] {
            assert!(parse_element(&b, s).is_err(), "{s}");
        }
        assert!(Backend::by_name("nope", 2).is_err());
        assert!(parse_element(&Backend::by_name("quiver:a2", 2).unwrap(), "c(1)").is_err());
    }
}
