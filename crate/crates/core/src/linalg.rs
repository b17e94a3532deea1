//! Exact dense linear algebra: ranks, nullspaces, minimal polynomials and
//! rational root extraction.
//!
//! Ranks over Q go through fraction-free (Bareiss) elimination on integer
//! matrices, with an i128 fast path falling back to big integers on overflow.
//! Ranks over a prime field use plain modular elimination. Nullspaces use
//! Gauss-Jordan directly on field elements.

use crate::error::Error;
use crate::scalar::{FieldSpec, Scalar};
use crate::Result;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    pub nrows: usize,
    pub ncols: usize,
    pub field: FieldSpec,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(nrows: usize, ncols: usize, field: FieldSpec) -> Self {
        Matrix { nrows, ncols, field, data: vec![field.zero(); nrows * ncols] }
    }

    pub fn identity(n: usize, field: FieldSpec) -> Self {
        let mut m = Matrix::zeros(n, n, field);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, field: FieldSpec) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            debug_assert_eq!(r.len(), ncols);
            data.extend(r);
        }
        Matrix { nrows, ncols, field, data }
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.ncols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn mat_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        debug_assert_eq!(v.len(), self.ncols);
        (0..self.nrows)
            .map(|i| {
                let mut acc = self.field.zero();
                for j in 0..self.ncols {
                    let a = self.get(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc = acc.add(&a.mul(&v[j]));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mat_mul(&self, other: &Matrix) -> Matrix {
        debug_assert_eq!(self.ncols, other.nrows);
        let mut out = Matrix::zeros(self.nrows, other.ncols, self.field);
        for i in 0..self.nrows {
            for l in 0..self.ncols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.ncols {
                    let b = other.get(l, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: usize) -> Matrix {
        debug_assert_eq!(self.nrows, self.ncols);
        let mut acc = Matrix::identity(self.nrows, self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mat_mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mat_mul(&base);
            }
        }
        acc
    }

    /// `self - c * I`.
    pub fn sub_scalar_identity(&self, c: &Scalar) -> Matrix {
        let mut out = self.clone();
        for i in 0..self.nrows {
            let v = out.get(i, i).sub(c);
            out.set(i, i, v);
        }
        out
    }

    /// Stack matrices with equal column counts on top of each other.
    pub fn vstack(parts: &[&Matrix]) -> Matrix {
        let ncols = parts[0].ncols;
        let field = parts[0].field;
        let mut data = Vec::new();
        let mut nrows = 0;
        for p in parts {
            debug_assert_eq!(p.ncols, ncols);
            data.extend_from_slice(&p.data);
            nrows += p.nrows;
        }
        Matrix { nrows, ncols, field, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|s| s.is_zero())
    }

    pub fn rank(&self) -> usize {
        match self.field {
            FieldSpec::Q => {
                let int_rows = self.integer_rows();
                match to_i128_rows(&int_rows) {
                    Some(rows) => {
                        bareiss_rank_i128(rows).unwrap_or_else(|| bareiss_rank_big(int_rows))
                    }
                    None => bareiss_rank_big(int_rows),
                }
            }
            FieldSpec::Fp(p) => {
                let rows: Vec<Vec<u64>> = (0..self.nrows)
                    .map(|i| {
                        self.row(i)
                            .iter()
                            .map(|s| match s {
                                Scalar::Fp { v, .. } => *v,
                                Scalar::Q(_) => unreachable!("rational in F_p matrix"),
                            })
                            .collect()
                    })
                    .collect();
                gauss_rank_fp(rows, p)
            }
        }
    }

    /// Rows scaled to integers (lcm of denominators, then divided by the
    /// common content) for fraction-free elimination.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.nrows)
            .map(|i| {
                let mut lcm = BigInt::one();
                for s in self.row(i) {
                    if let Scalar::Q(r) = s {
                        lcm = lcm.lcm(r.denom());
                    }
                }
                let mut row: Vec<BigInt> = self
                    .row(i)
                    .iter()
                    .map(|s| match s {
                        Scalar::Q(r) => r.numer() * (&lcm / r.denom()),
                        Scalar::Fp { .. } => unreachable!("prime-field value in Q matrix"),
                    })
                    .collect();
                let mut content = BigInt::zero();
                for v in &row {
                    content = content.gcd(v);
                }
                if content > BigInt::one() {
                    for v in &mut row {
                        *v /= &content;
                    }
                }
                row
            })
            .collect()
    }

    /// Basis of `{ x : self * x = 0 }` by Gauss-Jordan over the field.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let mut a: Vec<Vec<Scalar>> = (0..self.nrows).map(|i| self.row(i).to_vec()).collect();
        let mut pivots: Vec<usize> = Vec::new();
        let mut row = 0;
        for col in 0..self.ncols {
            let Some(p) = (row..a.len()).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(row, p);
            let inv = a[row][col].inv();
            for j in col..self.ncols {
                a[row][j] = a[row][j].mul(&inv);
            }
            for i in 0..a.len() {
                if i != row && !a[i][col].is_zero() {
                    let c = a[i][col].clone();
                    for j in col..self.ncols {
                        let v = a[i][j].sub(&c.mul(&a[row][j]));
                        a[i][j] = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == a.len() {
                break;
            }
        }
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.ncols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![self.field.zero(); self.ncols];
            v[free] = self.field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = a[r][free].neg();
            }
            basis.push(v);
        }
        basis
    }
}

fn to_i128_rows(rows: &[Vec<BigInt>]) -> Option<Vec<Vec<i128>>> {
    use num::ToPrimitive;
    rows.iter()
        .map(|r| r.iter().map(|v| v.to_i128()).collect::<Option<Vec<i128>>>())
        .collect()
}

fn bareiss_rank_i128(mut a: Vec<Vec<i128>>) -> Option<usize> {
    let nrows = a.len();
    if nrows == 0 {
        return Some(0);
    }
    let ncols = a[0].len();
    let mut prev: i128 = 1;
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..nrows).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(row, p);
        for i in row + 1..nrows {
            for j in col + 1..ncols {
                let t1 = a[row][col].checked_mul(a[i][j])?;
                let t2 = a[i][col].checked_mul(a[row][j])?;
                a[i][j] = t1.checked_sub(t2)? / prev;
            }
            a[i][col] = 0;
        }
        prev = a[row][col];
        row += 1;
        if row == nrows {
            break;
        }
    }
    Some(row)
}

fn bareiss_rank_big(mut a: Vec<Vec<BigInt>>) -> usize {
    let nrows = a.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = a[0].len();
    let mut prev = BigInt::one();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..nrows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        for i in row + 1..nrows {
            for j in col + 1..ncols {
                let t = &a[row][col] * &a[i][j] - &a[i][col] * &a[row][j];
                a[i][j] = t / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[row][col].clone();
        row += 1;
        if row == nrows {
            break;
        }
    }
    row
}

fn gauss_rank_fp(mut a: Vec<Vec<u64>>, p: u64) -> usize {
    let nrows = a.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = a[0].len();
    let mul = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let mut row = 0;
    for col in 0..ncols {
        let Some(q) = (row..nrows).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(row, q);
        let inv = {
            let mut acc = 1u64;
            let mut base = a[row][col];
            let mut e = p - 2;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul(acc, base);
                }
                base = mul(base, base);
                e >>= 1;
            }
            acc
        };
        for i in row + 1..nrows {
            if a[i][col] != 0 {
                let f = mul(a[i][col], inv);
                for j in col..ncols {
                    let s = mul(f, a[row][j]);
                    a[i][j] = (a[i][j] + p - s) % p;
                }
            }
        }
        row += 1;
        if row == nrows {
            break;
        }
    }
    row
}

/// Monic minimal polynomial of a square matrix, coefficients ascending.
/// Found as the first linear dependency among `I, M, M^2, ...` (echelon
/// reduction with combination tracking).
pub fn minimal_polynomial(m: &Matrix) -> Vec<Scalar> {
    let n = m.nrows;
    let field = m.field;
    // echelon rows: (reduced vectorised power, pivot position, combination)
    let mut echelon: Vec<(Vec<Scalar>, usize, Vec<Scalar>)> = Vec::new();
    let mut power = Matrix::identity(n, field);
    for k in 0..=n {
        let mut v = power.data.clone();
        let mut combo = vec![field.zero(); k + 1];
        combo[k] = field.one();
        for (row, pivot, rcombo) in &echelon {
            if v[*pivot].is_zero() {
                continue;
            }
            let c = v[*pivot].clone();
            for (a, b) in v.iter_mut().zip(row) {
                *a = a.sub(&c.mul(b));
            }
            for (i, b) in rcombo.iter().enumerate() {
                combo[i] = combo[i].sub(&c.mul(b));
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => return combo,
            Some(pivot) => {
                let inv = v[pivot].inv();
                for a in v.iter_mut() {
                    *a = a.mul(&inv);
                }
                for a in combo.iter_mut() {
                    *a = a.mul(&inv);
                }
                echelon.push((v, pivot, combo));
            }
        }
        power = power.mat_mul(m);
    }
    unreachable!("minimal polynomial degree exceeds the matrix size")
}

/// Evaluate a polynomial (ascending coefficients) at a scalar.
pub fn poly_eval(p: &[Scalar], x: &Scalar) -> Scalar {
    let field = x.field();
    let mut acc = field.zero();
    for c in p.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}

fn poly_trim(p: &mut Vec<Scalar>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_derivative(p: &[Scalar], field: FieldSpec) -> Vec<Scalar> {
    let mut out = Vec::new();
    for (i, c) in p.iter().enumerate().skip(1) {
        out.push(c.mul(&field.integer(i as i64)));
    }
    poly_trim(&mut out);
    out
}

/// Remainder of polynomial division (field coefficients, ascending).
fn poly_rem(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = b[db].inv();
    while r.len() > db {
        let da = r.len() - 1;
        let f = r[da].mul(&lead_inv);
        for i in 0..=db {
            let v = r[da - db + i].sub(&f.mul(&b[i]));
            r[da - db + i] = v;
        }
        poly_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn poly_monic(mut p: Vec<Scalar>) -> Vec<Scalar> {
    poly_trim(&mut p);
    if let Some(lead) = p.last().cloned() {
        let inv = lead.inv();
        for c in p.iter_mut() {
            *c = c.mul(&inv);
        }
    }
    p
}

fn poly_gcd(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let (mut x, mut y) = (poly_monic(a.to_vec()), poly_monic(b.to_vec()));
    while !y.is_empty() {
        let r = poly_rem(&x, &y);
        x = y;
        y = poly_monic(r);
    }
    x
}

/// Exact quotient `a / b` when `b` divides `a`.
fn poly_div_exact(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let field = b.last().unwrap().field();
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = b[db].inv();
    let mut q = vec![field.zero(); r.len().saturating_sub(db)];
    while r.len() > db {
        let da = r.len() - 1;
        let f = r[da].mul(&lead_inv);
        q[da - db] = f.clone();
        for i in 0..=db {
            let v = r[da - db + i].sub(&f.mul(&b[i]));
            r[da - db + i] = v;
        }
        poly_trim(&mut r);
    }
    debug_assert!(r.is_empty(), "inexact polynomial division");
    q
}

/// Squarefree part `p / gcd(p, p')`, monic.
pub fn squarefree_part(p: &[Scalar], field: FieldSpec) -> Vec<Scalar> {
    let d = poly_derivative(p, field);
    if d.is_empty() {
        return poly_monic(p.to_vec());
    }
    let g = poly_gcd(p, &d);
    if g.len() <= 1 {
        return poly_monic(p.to_vec());
    }
    poly_monic(poly_div_exact(&poly_monic(p.to_vec()), &g))
}

fn trial_divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    // prime factorisation by trial division; the leftover must be prime for
    // the divisor list to be complete
    let mut n = n.abs();
    if n.is_zero() {
        return Ok(vec![]);
    }
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut d = BigInt::from(2);
    let bound = BigInt::from(1_000_000u64);
    while &d * &d <= n && d <= bound {
        let mut e = 0;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        if e > 0 {
            primes.push((d.clone(), e));
        }
        d += 1;
    }
    if n > BigInt::one() {
        if n > BigInt::from(u64::MAX) || !is_prime_u64(n.to_u64_digits().1[0]) {
            return Err(Error::IrrationalSupport(format!(
                "cannot certify the factorisation of {n}"
            )));
        }
        primes.push((n, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    Ok(divs)
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    // deterministic Miller-Rabin witnesses for u64
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut a: u64, mut e: u64| {
        let mut acc = 1u64;
        a %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, a);
            }
            a = mul(a, a);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All rational roots of a squarefree rational polynomial. Errors when a
/// nontrivial factor without rational roots remains (irrational support) or
/// when the coefficient factorisations cannot be certified.
pub fn rational_roots_complete(p: &[Scalar]) -> Result<Vec<BigRational>> {
    let mut coeffs: Vec<BigRational> = p
        .iter()
        .map(|s| s.as_rational().expect("rational polynomial expected").clone())
        .collect();
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    assert!(!coeffs.is_empty(), "zero polynomial has every root");
    let mut roots = Vec::new();
    // root at zero
    if coeffs[0].is_zero() {
        roots.push(BigRational::zero());
        coeffs.remove(0);
        // squarefree input: zero divides out exactly once
        assert!(!coeffs[0].is_zero(), "input was not squarefree");
    }
    if coeffs.len() == 1 {
        return Ok(roots);
    }
    // clear denominators to an integer polynomial
    let mut lcm = BigInt::one();
    for c in &coeffs {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let a0 = &ints[0];
    let an = ints.last().unwrap();
    let nums = trial_divisors(a0)?;
    let dens = trial_divisors(an)?;
    let mut candidates: Vec<BigRational> = Vec::new();
    for u in &nums {
        for v in &dens {
            let r = BigRational::new(u.clone(), v.clone());
            candidates.push(r.clone());
            candidates.push(-r);
        }
    }
    candidates.sort();
    candidates.dedup();
    let mut work: Vec<Scalar> = ints
        .iter()
        .map(|c| Scalar::Q(BigRational::from_integer(c.clone())))
        .collect();
    for r in candidates {
        if work.len() <= 1 {
            break;
        }
        let rs = Scalar::Q(r.clone());
        if poly_eval(&work, &rs).is_zero() {
            roots.push(r.clone());
            // divide by (x - r)
            let divisor = vec![rs.neg(), FieldSpec::Q.one()];
            work = poly_div_exact(&work, &divisor);
        }
    }
    if work.len() > 1 {
        return Err(Error::IrrationalSupport(
            "a factor of the minimal polynomial has no rational root".into(),
        ));
    }
    roots.sort();
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm(rows: &[&[i64]]) -> Matrix {
        let f = FieldSpec::Q;
        Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| f.integer(v)).collect()).collect(),
            f,
        )
    }

    #[test]
    fn rank_small() {
        assert_eq!(qm(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(qm(&[&[1, 2], &[3, 4]]).rank(), 2);
        assert_eq!(qm(&[&[0, 0], &[0, 0]]).rank(), 0);
        assert_eq!(qm(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]).rank(), 2);
    }

    #[test]
    fn rank_agrees_with_fp() {
        let q = qm(&[&[2, 4, 1], &[1, 3, 5], &[3, 7, 6], &[0, 1, 1]]);
        let f = FieldSpec::Fp(1_000_003);
        let fp = Matrix::from_rows(
            (0..q.nrows)
                .map(|i| q.row(i).iter().map(|s| s.to_fp(1_000_003).unwrap()).collect())
                .collect(),
            f,
        );
        assert_eq!(q.rank(), fp.rank());
    }

    #[test]
    fn nullspace_dimension_complements_rank() {
        let m = qm(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 3 - m.rank());
        for v in &ns {
            let mv = m.mat_vec(v);
            assert!(mv.iter().all(|s| s.is_zero()));
        }
    }

    #[test]
    fn minimal_polynomial_of_nilpotent_shift() {
        // shift matrix on basis {1, x}: M^2 = 0, M != 0 -> min poly x^2
        let m = qm(&[&[0, 0], &[1, 0]]);
        let p = minimal_polynomial(&m);
        assert_eq!(p.len(), 3);
        assert!(p[0].is_zero() && p[1].is_zero() && p[2].is_one());
    }

    #[test]
    fn minimal_polynomial_of_identity() {
        let m = Matrix::identity(3, FieldSpec::Q);
        let p = minimal_polynomial(&m);
        // x - 1
        assert_eq!(p.len(), 2);
        assert!(p[1].is_one());
        assert_eq!(p[0], FieldSpec::Q.integer(-1));
    }

    #[test]
    fn squarefree_and_roots() {
        let f = FieldSpec::Q;
        // (x - 1)^2 (x + 2) = x^3 - 3x + 2
        let p = vec![f.integer(2), f.integer(-3), f.integer(0), f.integer(1)];
        let sf = squarefree_part(&p, f);
        assert_eq!(sf.len(), 3); // (x - 1)(x + 2)
        let roots = rational_roots_complete(&sf).unwrap();
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn irrational_roots_error() {
        let f = FieldSpec::Q;
        // x^2 - 2
        let p = vec![f.integer(-2), f.integer(0), f.integer(1)];
        assert!(matches!(rational_roots_complete(&p), Err(Error::IrrationalSupport(_))));
    }

    #[test]
    fn big_entries_fall_back() {
        let f = FieldSpec::Q;
        let big = i64::MAX / 3;
        let m = Matrix::from_rows(
            vec![
                vec![f.integer(big), f.integer(big - 1), f.integer(1)],
                vec![f.integer(big - 2), f.integer(big), f.integer(2)],
                vec![f.integer(3), f.integer(4), f.integer(5)],
            ],
            f,
        );
        assert_eq!(m.rank(), 3);
    }
}
