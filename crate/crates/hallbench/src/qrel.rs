//! Quantum-group relations realized in Hall algebras: Gaussian binomials,
//! quantum Serre relations for quivers, the Drinfeld quadratic relation
//! for line bundles on P¹, and the ordered-monomial basis of rank-2 bundles.

use std::ops::RangeInclusive;

use crate::autop1::{bundles_in_range, P1Hall};
use crate::error::{Error, Result};
use crate::finitary::{CohP1, KClass, ObjLabel, Quiver, Sheaf, Window};
use crate::hallhopf::{AlgElem, HallAlgebra};
use crate::linalg;
use crate::report::Report;
use crate::scalars::{gauss_binomial_at, Scalar};

/// Gaussian binomial [m choose l] evaluated at x.
pub fn gauss_binomial(m: i64, l: i64, x: &Scalar) -> Scalar {
    gauss_binomial_at(m, l, x)
}

/// Balanced binomial [m choose l]_v = v^{−l(m−l)}·[m choose l]_{v²}, the
/// coefficient that goes with the twisted (Ringel) product.
pub fn balanced_binomial(m: i64, l: i64, q: u64) -> Scalar {
    &Scalar::v_pow(-l * (m - l), q) * &gauss_binomial(m, l, &Scalar::int(q as i64, q))
}

/// Which coefficient convention the Serre sum uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SerreForm {
    /// Σ (−1)^l [n choose l]_v e_i^l * e_j * e_i^{n−l} with Ringel products.
    Ringel,
    /// Gaussian binomials in q with Ringel products, which does not vanish.
    Gauss,
}

/// Σ_l (−1)^l [1−a_ij choose l] e_i^l e_j e_i^{1−a_ij−l} for simple objects
/// e_i = [S_i]. The coefficient convention is selected by `form`.
pub fn serre_sum(quiver: &Quiver, window: &Window, i: usize, j: usize, form: SerreForm) -> Result<AlgElem> {
    if i == j || i >= quiver.vertices || j >= quiver.vertices {
        return Err(Error::Precondition(format!("Serre relation needs distinct vertices, got {i} and {j}")));
    }
    let n = 1 - quiver.cartan(i, j);
    if window.max_rank < n + 1 {
        return Err(Error::WindowInsufficient(format!("Serre sum needs total dimension {}", n + 1)));
    }
    let q = quiver.p as u64;
    let h = HallAlgebra::new(quiver, *window);
    let ei = h.obj(ObjLabel::Quiver(quiver.simple(i)));
    let ej = h.obj(ObjLabel::Quiver(quiver.simple(j)));
    let mul = |x: &AlgElem, y: &AlgElem| h.ringel_mul(x, y);
    let mut out = h.zero();
    for l in 0..=n {
        let mut term = h.one();
        for _ in 0..l {
            term = mul(&term, &ei)?;
        }
        term = mul(&term, &ej)?;
        for _ in 0..n - l {
            term = mul(&term, &ei)?;
        }
        let b = match form {
            SerreForm::Ringel => balanced_binomial(n, l, q),
            SerreForm::Gauss => gauss_binomial(n, l, &Scalar::int(q as i64, q)),
        };
        let sign = Scalar::int(if l % 2 == 0 { 1 } else { -1 }, q);
        out = &out + &term.scale(&(&sign * &b));
    }
    Ok(out)
}

/// The Serre sum must vanish for every ordered pair of distinct vertices.
pub fn serre_check(quiver: &Quiver, form: SerreForm) -> Result<Report> {
    let mut rep = Report::new(&format!("quiver-{}", quiver.name), "quantum Serre relation");
    let n_max = (0..quiver.vertices)
        .flat_map(|i| (0..quiver.vertices).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| 2 - quiver.cartan(i, j))
        .max()
        .unwrap_or(0);
    let window = Window::dims(n_max);
    for i in 0..quiver.vertices {
        for j in 0..quiver.vertices {
            if i == j {
                continue;
            }
            let s = serre_sum(quiver, &window, i, j, form)?;
            rep.check(format!("i={i},j={j},q={}", quiver.p), &s, "0", s.is_zero());
        }
    }
    Ok(rep)
}

/// The quadratic relation for x(n) = [O(n)] in the abstract coefficient
/// form x(a)x(b+1) − q·x(a+1)x(b) = q·x(b+1)x(a) − x(b)x(a+1), together with
/// the ζ-derived exchange relation E(t1)E(t2) it specializes.
pub fn drinfeld_quadratic_check(cat: &CohP1, range: RangeInclusive<i64>) -> Result<Report> {
    let q = cat.p as u64;
    let qs = Scalar::int(q as i64, q);
    let h = P1Hall::new(cat, Window::new(1, *range.start(), *range.end(), 0)?);
    let mut rep = h.quadratic_check(range.clone())?;
    rep.relation = "quadratic relation".into();
    let x = |n: i64| h.e(n);
    let m = |a: &AlgElem, b: &AlgElem| h.alg.ringel_mul(a, b);
    for a in range.clone() {
        for b in range.clone() {
            let lhs = &m(&x(a), &x(b + 1))? - &m(&x(a + 1), &x(b))?.scale(&qs);
            let rhs = &m(&x(b + 1), &x(a))?.scale(&qs) - &m(&x(b), &x(a + 1))?;
            rep.expect_eq(format!("a={a},b={b}"), &lhs, &rhs);
        }
        let l = m(&x(a), &x(a + 1))?;
        let r = m(&x(a + 1), &x(a))?.scale(&qs);
        rep.expect_eq(format!("a=b={a} collapsed"), &l, &r);
    }
    let zero = h.alg.zero();
    rep.expect_eq("zero input", &m(&zero, &x(0))?, &zero);
    Ok(rep)
}

/// Ordered monomials of total degree d in two line-bundle factors with
/// summands in [lo, hi]: pairs (i1, i2), i1 ≥ i2, i1 + i2 = d, where
/// i1 = i2 is the divided square.
pub fn ordered_monomials(d: i64, lo: i64, hi: i64) -> Vec<(i64, i64)> {
    (lo..=hi).rev().filter_map(|i1| {
        let i2 = d - i1;
        (i2 <= i1 && (lo..=hi).contains(&i2)).then_some((i1, i2))
    }).collect()
}

/// For each degree d, expands the ordered monomials [O(i1)]∘[O(i2)] and the
/// divided squares [O(i)]∘[O(i)]/[2]_q in the bundle basis, checks that the
/// expansion is unitriangular (leading term [O(i1) ⊕ O(i2)]), that there
/// are as many monomials as rank-2 bundles in the window, and that the
/// transition matrix has nonzero determinant.
pub fn monomial_basis_check(cat: &CohP1, degrees: RangeInclusive<i64>, lo: i64, hi: i64) -> Result<Report> {
    let q = cat.p as u64;
    let mut rep = Report::new("coh-p1", "ordered monomial basis");
    let h = HallAlgebra::new(cat, Window::new(2, lo, hi, 0)?);
    let zero = KClass(vec![0, 0]);
    let two = gauss_binomial(2, 1, &Scalar::int(q as i64, q));
    for d in degrees {
        let monos = ordered_monomials(d, lo, hi);
        let bundles: Vec<Vec<i64>> = bundles_in_range(2, lo, hi).into_iter().filter(|b| b.iter().sum::<i64>() == d).collect();
        rep.expect_eq(format!("d={d} count"), &monos.len(), &bundles.len());
        let mut matrix = Vec::new();
        for &(i1, i2) in &monos {
            let line = |a: i64| h.obj(ObjLabel::Sheaf(Sheaf::line(a)));
            let mut x = h.hall_mul(&line(i1), &line(i2))?;
            if i1 == i2 {
                x = x.scale(&two.inv()?);
            }
            let lead = x.coeff(&zero, &ObjLabel::Sheaf(Sheaf::bundle(&[i1, i2])));
            let above = x.terms().any(|((_, o), _)| match o {
                ObjLabel::Sheaf(s) => s.bundle.first().is_some_and(|&c| c > i1),
                _ => true,
            });
            rep.check(format!("d={d} [O({i1})][O({i2})] unitriangular"), &x, format!("leading {lead}"), lead.is_one() && !above);
            let row: Vec<Scalar> = bundles.iter().map(|b| x.coeff(&zero, &ObjLabel::Sheaf(Sheaf::bundle(b)))).collect();
            matrix.push(row);
        }
        if !monos.is_empty() && monos.len() == bundles.len() {
            let det = linalg::det(&matrix, q);
            rep.check(format!("d={d} determinant"), &det, "nonzero", !det.is_zero());
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        let x = Scalar::int(2, 2);
        assert_eq!(gauss_binomial(3, 1, &x), Scalar::int(7, 2));
        assert_eq!(gauss_binomial(4, 2, &x), Scalar::int(35, 2));
        assert_eq!(gauss_binomial(5, 0, &x), Scalar::int(1, 2));
        for m in 0..=6 {
            for l in 0..=m {
                assert_eq!(gauss_binomial(m, l, &x), gauss_binomial(m, m - l, &x));
                if l > 0 && l < m {
                    let pascal = &gauss_binomial(m - 1, l - 1, &x) + &(&x.pow(l).unwrap() * &gauss_binomial(m - 1, l, &x));
                    assert_eq!(gauss_binomial(m, l, &x), pascal);
                }
            }
        }
        assert_eq!(balanced_binomial(2, 1, 2), &Scalar::v(2) + &Scalar::v_pow(-1, 2));
    }

    #[test]
    fn serre_relations() {
        for p in [2, 3] {
            assert!(serre_check(&Quiver::a2(p).unwrap(), SerreForm::Ringel).unwrap().passed());
        }
        let k = Quiver::kronecker(2).unwrap();
        let r = serre_check(&k, SerreForm::Ringel).unwrap();
        assert!(r.passed(), "{}", r.summary());
    }

    #[test]
    fn serre_conventions() {
        for q in [Quiver::a2(2).unwrap(), Quiver::kronecker(2).unwrap()] {
            assert!(!serre_check(&q, SerreForm::Gauss).unwrap().passed());
        }
    }

    #[test]
    fn serre_preconditions() {
        let a1 = Quiver::by_name("a1", 2).unwrap();
        assert!(serre_sum(&a1, &Window::dims(3), 0, 0, SerreForm::Ringel).is_err());
        let k = Quiver::kronecker(2).unwrap();
        assert!(matches!(serre_sum(&k, &Window::dims(2), 0, 1, SerreForm::Ringel), Err(Error::WindowInsufficient(_))));
    }

    #[test]
    fn quadratic() {
        let cat = CohP1::new(2).unwrap();
        let r = drinfeld_quadratic_check(&cat, -2..=2).unwrap();
        assert!(r.passed(), "{}", r.summary());
    }

    #[test]
    fn monomials() {
        assert_eq!(ordered_monomials(0, -2, 2), vec![(2, -2), (1, -1), (0, 0)]);
        let cat = CohP1::new(2).unwrap();
        let r = monomial_basis_check(&cat, -1..=1, -2, 2).unwrap();
        assert!(r.passed(), "{}", r.summary());
    }
}
