//! Linear algebra and polynomials over the prime field F_p.

/// Dense matrix over F_p, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u32>], cols: usize) -> Mat {
        let mut m = Mat::zero(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            m.data[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, o: &Mat, p: u32) -> Mat {
        assert_eq!(self.cols, o.rows);
        let mut r = Mat::zero(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let idx = i * o.cols + j;
                    r.data[idx] = (r.data[idx] + a * o.get(k, j)) % p;
                }
            }
        }
        r
    }

    pub fn transpose(&self) -> Mat {
        let mut r = Mat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                r.set(j, i, self.get(i, j));
            }
        }
        r
    }

    pub fn rank(&self, p: u32) -> usize {
        rref(self, p).1.len()
    }

    pub fn inverse(&self, p: u32) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return Some(Mat::identity(0));
        }
        let mut aug = Mat::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (r, piv) = rref(&aug, p);
        if piv.len() < n || piv[n - 1] >= n {
            return None;
        }
        let mut inv = Mat::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Some(inv)
    }
}

pub fn inv_mod(a: u32, p: u32) -> u32 {
    assert!(a % p != 0, "inverse of zero mod {p}");
    pow_mod(a, p - 2, p)
}

pub fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
    let mut base = (a % p) as u64;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// Reduced row echelon form and pivot columns.
pub fn rref(m: &Mat, p: u32) -> (Mat, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(pr) = (r..a.rows).find(|&i| a.get(i, c) != 0) else { continue };
        if pr != r {
            for j in 0..a.cols {
                a.data.swap(pr * a.cols + j, r * a.cols + j);
            }
        }
        let inv = inv_mod(a.get(r, c), p);
        for j in 0..a.cols {
            let x = a.get(r, j) * inv % p;
            a.set(r, j, x);
        }
        for i in 0..a.rows {
            if i != r {
                let f = a.get(i, c);
                if f != 0 {
                    for j in 0..a.cols {
                        let x = (a.get(i, j) + p * p - f * a.get(r, j)) % p;
                        a.set(i, j, x);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Basis (as rows) of the row space.
pub fn row_space(m: &Mat, p: u32) -> Mat {
    let (r, piv) = rref(m, p);
    let mut out = Mat::zero(piv.len(), m.cols);
    for i in 0..piv.len() {
        for j in 0..m.cols {
            out.set(i, j, r.get(i, j));
        }
    }
    out
}

/// Basis (as rows) of {x : m·x = 0}.
pub fn kernel(m: &Mat, p: u32) -> Mat {
    let (r, piv) = rref(m, p);
    let free: Vec<usize> = (0..m.cols).filter(|c| !piv.contains(c)).collect();
    let mut out = Mat::zero(free.len(), m.cols);
    for (k, &f) in free.iter().enumerate() {
        out.set(k, f, 1);
        for (i, &pc) in piv.iter().enumerate() {
            out.set(k, pc, (p - r.get(i, f)) % p);
        }
    }
    out
}

/// All subspaces of F_p^n of dimension k, each as an RREF basis (k × n).
pub fn subspaces(n: usize, k: usize, p: u32) -> Vec<Mat> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut pivots = Vec::with_capacity(k);
    choose_pivots(n, k, 0, &mut pivots, &mut |piv| {
        // free positions: (i, j) with j > piv[i], j not a pivot
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| ((piv[i] + 1)..n).filter(|j| !piv.contains(j)).map(move |j| (i, j)))
            .collect();
        let total = (p as u64).pow(free.len() as u32);
        for code in 0..total {
            let mut m = Mat::zero(k, n);
            for (i, &c) in piv.iter().enumerate() {
                m.set(i, c, 1);
            }
            let mut x = code;
            for &(i, j) in &free {
                m.set(i, j, (x % p as u64) as u32);
                x /= p as u64;
            }
            out.push(m);
        }
    });
    out
}

fn choose_pivots(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for c in start..n {
        cur.push(c);
        choose_pivots(n, k, c + 1, cur, f);
        cur.pop();
    }
}

/// Coordinates of v in the row basis `basis` (assumed RREF with pivots).
pub fn coords_in(basis: &Mat, v: &[u32], p: u32) -> Option<Vec<u32>> {
    let (_, piv) = rref(basis, p);
    let mut rest = v.to_vec();
    let mut coords = vec![0u32; basis.rows];
    for (i, &c) in piv.iter().enumerate() {
        let x = rest[c];
        coords[i] = x;
        if x != 0 {
            for j in 0..rest.len() {
                rest[j] = (rest[j] + p * p - x * basis.get(i, j)) % p;
            }
        }
    }
    rest.iter().all(|&x| x == 0).then_some(coords)
}

/// Number of elements of GL_n(F_q) for arbitrary q.
pub fn gl_order(n: u32, q: u64) -> num_bigint::BigInt {
    let mut acc = num_bigint::BigInt::from(1);
    let qn = num_bigint::BigInt::from(q).pow(n);
    for i in 0..n {
        acc *= &qn - num_bigint::BigInt::from(q).pow(i);
    }
    acc
}

/// Polynomial over F_p, coefficients low to high, no trailing zeros.
pub type Poly = Vec<u32>;

pub fn poly_trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn poly_deg(a: &[u32]) -> i64 {
    a.iter().rposition(|&x| x != 0).map(|d| d as i64).unwrap_or(-1)
}

pub fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + x * y) % p;
        }
    }
    poly_trim(r)
}

pub fn poly_divmod(a: &[u32], b: &[u32], p: u32) -> (Poly, Poly) {
    let b = poly_trim(b.to_vec());
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = poly_trim(a.to_vec());
    if r.len() < b.len() {
        return (vec![], r);
    }
    let inv = inv_mod(*b.last().unwrap(), p);
    let mut quo = vec![0u32; r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * inv % p;
        quo[shift] = c;
        for (i, &bc) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - c * bc % p) % p;
        }
        r = poly_trim(r);
    }
    (poly_trim(quo), r)
}

pub fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Poly {
    poly_divmod(a, b, p).1
}

pub fn poly_monic(a: &[u32], p: u32) -> Poly {
    let a = poly_trim(a.to_vec());
    match a.last() {
        None => a,
        Some(&l) => {
            let inv = inv_mod(l, p);
            a.iter().map(|x| x * inv % p).collect()
        }
    }
}

pub fn poly_gcd(a: &[u32], b: &[u32], p: u32) -> Poly {
    let mut x = poly_trim(a.to_vec());
    let mut y = poly_trim(b.to_vec());
    while !y.is_empty() {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    poly_monic(&x, p)
}

pub fn poly_pow(a: &[u32], e: u32, p: u32) -> Poly {
    let mut acc = vec![1u32];
    for _ in 0..e {
        acc = poly_mul(&acc, a, p);
    }
    acc
}

/// All monic irreducible polynomials of degree d over F_p.
pub fn irreducibles(d: usize, p: u32) -> Vec<Poly> {
    let mut out = Vec::new();
    let total = (p as u64).pow(d as u32);
    for code in 0..total {
        let mut f = vec![0u32; d + 1];
        let mut x = code;
        for c in f.iter_mut().take(d) {
            *c = (x % p as u64) as u32;
            x /= p as u64;
        }
        f[d] = 1;
        if is_irreducible(&f, p) {
            out.push(f);
        }
    }
    out
}

pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let d = poly_deg(f);
    if d <= 0 {
        return false;
    }
    for e in 1..=(d / 2) {
        let total = (p as u64).pow(e as u32);
        for code in 0..total {
            let mut g = vec![0u32; e as usize + 1];
            let mut x = code;
            for c in g.iter_mut().take(e as usize) {
                *c = (x % p as u64) as u32;
                x /= p as u64;
            }
            g[e as usize] = 1;
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Factorization of a nonzero polynomial into monic irreducibles with
/// multiplicities (the leading constant is dropped).
pub fn factor(f: &[u32], p: u32) -> Vec<(Poly, u32)> {
    let mut f = poly_monic(f, p);
    let mut out = Vec::new();
    let mut d = 1;
    while poly_deg(&f) > 0 {
        if d as i64 > poly_deg(&f) {
            break;
        }
        for g in irreducibles(d, p) {
            let mut mult = 0;
            loop {
                let (quo, rem) = poly_divmod(&f, &g, p);
                if !rem.is_empty() {
                    break;
                }
                f = quo;
                mult += 1;
            }
            if mult > 0 {
                out.push((g, mult));
            }
        }
        d += 1;
    }
    out
}

/// Companion-style matrix of multiplication by t on F_p[t]/(f), basis 1, t, …
pub fn mult_by_t(f: &[u32], p: u32) -> Mat {
    let n = poly_deg(f) as usize;
    let mut m = Mat::zero(n, n);
    // column convention: row vector x ↦ x·M where rows are coordinates
    for i in 0..n {
        if i + 1 < n {
            m.set(i, i + 1, 1);
        } else {
            for j in 0..n {
                m.set(i, j, (p - f[j] % p) % p);
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count_subspaces(n: usize, k: usize, p: u32) -> usize {
        subspaces(n, k, p).len()
    }

    #[test]
    fn gaussian_counts() {
        assert_eq!(count_subspaces(2, 1, 2), 3);
        assert_eq!(count_subspaces(3, 1, 2), 7);
        assert_eq!(count_subspaces(4, 2, 2), 35);
        assert_eq!(count_subspaces(3, 2, 3), 13);
    }

    #[test]
    fn irreducible_counts() {
        assert_eq!(irreducibles(1, 2).len(), 2);
        assert_eq!(irreducibles(2, 2).len(), 1);
        assert_eq!(irreducibles(3, 2).len(), 2);
        assert_eq!(irreducibles(2, 3).len(), 3);
    }

    #[test]
    fn factor_round_trip() {
        let p = 3;
        let f = poly_mul(&poly_pow(&[1, 1], 2, p), &[1, 0, 1], p);
        let fac = factor(&f, p);
        assert_eq!(fac, vec![(vec![1, 1], 2), (vec![1, 0, 1], 1)]);
    }

    #[test]
    fn inverse_and_kernel() {
        let p = 5;
        let m = Mat::from_rows(&[vec![1, 2], vec![3, 4]], 2);
        let inv = m.inverse(p).unwrap();
        assert_eq!(m.mul(&inv, p), Mat::identity(2));
        let s = Mat::from_rows(&[vec![1, 2, 3]], 3);
        let k = kernel(&s, p);
        assert_eq!(k.rows, 2);
        assert_eq!(s.mul(&k.transpose(), p), Mat::zero(1, 2));
    }

    #[test]
    fn gl_orders() {
        assert_eq!(gl_order(2, 2), 6.into());
        assert_eq!(gl_order(3, 2), 168.into());
    }
}
