//! Property tests for the algebraic invariants of each layer.

use hallbench::finitary::{Category, CohP1, KClass, ObjLabel, Partition, Quiver, Sheaf, TorsionLocal, Window};
use hallbench::hallhopf::{AlgElem, HallAlgebra};
use hallbench::qrel::gauss_binomial;
use hallbench::scalars::{rat, series_to_rational};
use hallbench::symfun::ch_map;
use hallbench::{LaurentPoly, RationalFn, Scalar};
use num_bigint::BigInt;
use proptest::prelude::*;

fn scalar(q: u64) -> impl Strategy<Value = Scalar> {
    (-20i64..=20, 1i64..=9, -20i64..=20, 1i64..=9).prop_map(move |(a, da, b, db)| Scalar::new(rat(a, da), rat(b, db), q))
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn scalar_field_axioms((x, y, z) in prime().prop_flat_map(|q| (scalar(q), scalar(q), scalar(q)))) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
            prop_assert_eq!(&(&y * &x).checked_div(&x).unwrap(), &y);
        }
    }

    #[test]
    fn perfect_square_q_collapses(a in -20i64..=20, b in -20i64..=20, c in -20i64..=20) {
        let x = Scalar::new(rat(a, 1), rat(b, 1), 4);
        prop_assert!(x.b() == &rat(0, 1));
        prop_assert_eq!(x.a(), &rat(a + 2 * b, 1));
        let y = Scalar::int(c, 4);
        prop_assert_eq!((&x * &y).to_rational().unwrap(), rat((a + 2 * b) * c, 1));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// series_to_rational ∘ expand is the identity for denominators of degree ≤ 4.
    #[test]
    fn rational_reconstruction(num in prop::collection::vec(-5i64..=5, 1..4), den in prop::collection::vec(-5i64..=5, 0..=4)) {
        let q = 2;
        let s = |v: &[i64], lead: bool| {
            let mut c: Vec<Scalar> = v.iter().map(|&x| Scalar::int(x, q)).collect();
            if lead {
                c.insert(0, Scalar::one(q));
            }
            LaurentPoly::from_coeffs(0, &c, "t", q)
        };
        let n = s(&num, false);
        prop_assume!(!n.is_zero());
        let f = RationalFn::new(n, s(&den, true)).unwrap();
        let terms = f.expand(0, 16);
        let back = series_to_rational(&terms, 4).unwrap();
        prop_assert_eq!(back.expand(0, 24), f.expand(0, 24));
        prop_assert_eq!(back, f);
    }

    /// [m, l] = [m, m−l] and the q-Pascal recursion.
    #[test]
    fn gauss_binomial_identities(m in 1i64..=6, l in 0i64..=6, q in prime()) {
        prop_assume!(l <= m);
        let x = Scalar::int(q as i64, q);
        prop_assert_eq!(gauss_binomial(m, l, &x), gauss_binomial(m, m - l, &x));
        if l >= 1 && l < m {
            let pascal = &gauss_binomial(m - 1, l - 1, &x) + &(&x.pow(l).unwrap() * &gauss_binomial(m - 1, l, &x));
            prop_assert_eq!(gauss_binomial(m, l, &x), pascal);
        }
    }
}

fn partition() -> impl Strategy<Value = Partition> {
    prop::sample::select((1..=3).flat_map(Partition::all).collect::<Vec<_>>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Nonzero Hall numbers only between additive classes.
    #[test]
    fn hall_numbers_respect_classes(a in partition(), b in partition(), p in prop::sample::select(vec![2u32, 3])) {
        let t = TorsionLocal::new(p, 1).unwrap();
        let (a, b) = (ObjLabel::Local(a), ObjLabel::Local(b));
        let want = &t.class_of(&a).unwrap() + &t.class_of(&b).unwrap();
        for (c, g) in t.hall_product(&a, &b).unwrap() {
            prop_assert!(g > BigInt::from(0));
            prop_assert_eq!(t.class_of(&c).unwrap(), want.clone());
        }
    }

    /// Counting-level associativity of Hall numbers at a point.
    #[test]
    fn hall_numbers_associate(a in partition(), b in partition(), c in partition()) {
        prop_assume!(a.size() + b.size() + c.size() <= 5);
        let t = TorsionLocal::new(2, 1).unwrap();
        let h = HallAlgebra::new(&t, Window::torsion(5));
        let (x, y, z) = (h.obj(ObjLabel::Local(a)), h.obj(ObjLabel::Local(b)), h.obj(ObjLabel::Local(c)));
        let l = h.hall_mul(&h.hall_mul(&x, &y).unwrap(), &z).unwrap();
        let r = h.hall_mul(&x, &h.hall_mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    /// Ch turns Hall products of torsion modules into products of symmetric functions.
    #[test]
    fn characteristic_map_is_multiplicative(a in partition(), b in partition(), p in prop::sample::select(vec![2u32, 3])) {
        prop_assume!(a.size() + b.size() <= 4);
        let t = TorsionLocal::new(p, 1).unwrap();
        let h = HallAlgebra::new(&t, Window::torsion(4));
        let n = (a.size() + b.size()) as usize;
        let x = h.obj(ObjLabel::Local(a));
        let y = h.obj(ObjLabel::Local(b));
        let xy = ch_map(&h.hall_mul(&x, &y).unwrap(), p as u64, n).unwrap();
        let prod = ch_map(&x, p as u64, n).unwrap().mul(&ch_map(&y, p as u64, n).unwrap());
        prop_assert_eq!(xy, prod);
    }

    /// For a > b, [O(a)]∘[O(b)] is the single split term with coefficient 1.
    #[test]
    fn split_line_products(a in -4i64..=4, b in -4i64..=4, p in prop::sample::select(vec![2u32, 3])) {
        prop_assume!(a > b);
        let cat = CohP1::new(p).unwrap();
        let prod = cat.product(&Sheaf::line(a), &Sheaf::line(b)).unwrap();
        prop_assert_eq!(prod.len(), 1);
        prop_assert_eq!(&prod[0].0, &Sheaf::bundle(&[a, b]));
        prop_assert_eq!(&prod[0].1, &BigInt::from(1));
    }

    /// Subsheaves O(a) ⊂ O(c1) ⊕ O(c2), summed over quotient types, are
    /// the nonzero pairs of forms up to scalars.
    #[test]
    fn line_subsheaves_sum_to_all_maps(c1 in 0i64..=1, c2 in 0i64..=1, a in -1i64..=0) {
        let q = 2u32;
        let cat = CohP1::new(q).unwrap();
        let d = c1 + c2 - a;
        let w = Window::new(1, -8, 8, c1.max(c2) - a).unwrap();
        let total: BigInt = cat.sheaves_of_class(1, d, &w).iter().map(|s| cat.count_line_subsheaves(&[c1, c2], a, s)).sum();
        let h0 = |n: i64| (n + 1).max(0) as u32;
        let want = (BigInt::from(q).pow(h0(c1 - a) + h0(c2 - a)) - 1) / BigInt::from(q - 1);
        prop_assert_eq!(total, want);
    }

    /// The extended product adds Cartan and object classes; the coproduct splits them.
    #[test]
    fn grading(k1 in -2i64..=2, k2 in -2i64..=2, a in partition(), b in partition()) {
        let t = TorsionLocal::new(2, 1).unwrap();
        let h = HallAlgebra::new(&t, Window::torsion(6));
        let x = AlgElem::term(KClass(vec![k1]), ObjLabel::Local(a), Scalar::one(2));
        let y = AlgElem::term(KClass(vec![k2]), ObjLabel::Local(b), Scalar::one(2));
        let class = |e: &AlgElem| -> Vec<(KClass, KClass)> {
            e.terms().map(|((k, o), _)| (k.clone(), t.class_of(o).unwrap())).collect()
        };
        let (kx, ox) = class(&x)[0].clone();
        let (ky, oy) = class(&y)[0].clone();
        let xy = h.b_mul(&x, &y).unwrap();
        for (k, o) in class(&xy) {
            prop_assert_eq!(k, &kx + &ky);
            prop_assert_eq!(o, &ox + &oy);
        }
        for ((l, r), _) in h.coproduct(&xy).unwrap().terms() {
            let split = &t.class_of(&l.1).unwrap() + &t.class_of(&r.1).unwrap();
            prop_assert_eq!(split, &ox + &oy);
            prop_assert_eq!(&l.0, &(&kx + &ky));
        }
    }

    /// Distinct basis objects are orthogonal and every norm is 1/|Aut| > 0.
    #[test]
    fn green_gram_is_diagonal_positive(a in 0usize..40, b in 0usize..40) {
        let k = Quiver::kronecker(2).unwrap();
        let mut objs = Vec::new();
        for dims in [[1, 0], [0, 1], [1, 1], [2, 1], [1, 2]] {
            objs.extend(k.classes(&dims).unwrap().into_iter().map(ObjLabel::Quiver));
        }
        let (a, b) = (&objs[a % objs.len()], &objs[b % objs.len()]);
        let h = HallAlgebra::new(&k, Window::dims(3));
        let g = h.green_pair(&h.obj(a.clone()), &h.obj(b.clone())).unwrap();
        if a == b {
            let want = Scalar::big(BigInt::from(1), 2).checked_div(&Scalar::big(k.aut_order(a).unwrap(), 2)).unwrap();
            prop_assert_eq!(&g, &want);
            prop_assert!(g.signum() > 0);
        } else {
            prop_assert!(g.is_zero());
        }
    }
}
