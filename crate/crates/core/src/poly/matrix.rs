//! Matrices of polynomials: two independent determinant strategies,
//! Jacobians and Hessians.

use std::collections::HashMap;

use super::Polynomial;
use crate::error::{Error, Result};
use crate::field::Field;

pub type PolyMatrix<K> = Vec<Vec<Polynomial<K>>>;

fn check_square<K: Field>(m: &PolyMatrix<K>) -> Result<usize> {
    let n = m.len();
    for row in m {
        if row.len() != n {
            return Err(Error::NonSquare { rows: n, cols: row.len() });
        }
    }
    Ok(n)
}

fn context<K: Field>(m: &PolyMatrix<K>) -> Option<(K, usize)> {
    m.first().and_then(|r| r.first()).map(|p| (p.field().clone(), p.nvars()))
}

/// Determinant by Bareiss fraction-free elimination. This is the default
/// strategy.
pub fn determinant<K: Field>(m: &PolyMatrix<K>) -> Result<Polynomial<K>> {
    determinant_bareiss(m)
}

/// Laplace expansion along rows, memoized on the set of remaining columns.
pub fn determinant_cofactor<K: Field>(m: &PolyMatrix<K>) -> Result<Polynomial<K>> {
    let n = check_square(m)?;
    let (field, nvars) = match context(m) {
        Some(c) => c,
        None => return Err(Error::Invalid("determinant of an empty matrix needs a context".into())),
    };
    if n > 20 {
        return Err(Error::Invalid("cofactor expansion limited to 20x20".into()));
    }
    let mut memo: HashMap<u32, Polynomial<K>> = HashMap::new();
    // minor on rows (n - popcount(cols))..n and the column set `cols`
    fn rec<K: Field>(
        m: &PolyMatrix<K>,
        cols: u32,
        n: usize,
        field: &K,
        nvars: usize,
        memo: &mut HashMap<u32, Polynomial<K>>,
    ) -> Polynomial<K> {
        if cols == 0 {
            return Polynomial::one(field, nvars);
        }
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let row = n - cols.count_ones() as usize;
        let mut acc = Polynomial::zero(field, nvars);
        let mut sign_pos = true;
        for c in 0..n {
            if cols & (1 << c) == 0 {
                continue;
            }
            let e = &m[row][c];
            if !e.is_zero() {
                let minor = rec(m, cols & !(1 << c), n, field, nvars, memo);
                let t = e.mul(&minor);
                acc = if sign_pos { acc.add(&t) } else { acc.sub(&t) };
            }
            sign_pos = !sign_pos;
        }
        memo.insert(cols, acc.clone());
        acc
    }
    let full = if n == 0 { 0 } else { (1u32 << n) - 1 };
    Ok(rec(m, full, n, &field, nvars, &mut memo))
}

/// Bareiss elimination over the polynomial ring; every division is exact.
pub fn determinant_bareiss<K: Field>(m: &PolyMatrix<K>) -> Result<Polynomial<K>> {
    let n = check_square(m)?;
    let (field, nvars) = match context(m) {
        Some(c) => c,
        None => return Err(Error::Invalid("determinant of an empty matrix needs a context".into())),
    };
    let mut a: PolyMatrix<K> = m.clone();
    let mut prev = Polynomial::one(&field, nvars);
    let mut negate = false;
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(Polynomial::zero(&field, nvars)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { d.neg() } else { d })
}

pub fn jacobian<K: Field>(f: &Polynomial<K>, vars: &[usize]) -> Vec<Polynomial<K>> {
    vars.iter().map(|&i| f.derivative(i)).collect()
}

pub fn hessian<K: Field>(f: &Polynomial<K>, vars: &[usize]) -> PolyMatrix<K> {
    vars.iter()
        .map(|&i| {
            let fi = f.derivative(i);
            vars.iter().map(|&j| fi.derivative(j)).collect()
        })
        .collect()
}

pub fn mat_mul<K: Field>(a: &PolyMatrix<K>, b: &PolyMatrix<K>) -> PolyMatrix<K> {
    let (field, nvars) = context(a).expect("nonempty");
    let n = a.len();
    let k = b.len();
    let m = b[0].len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = Polynomial::zero(&field, nvars);
                    for t in 0..k {
                        if !a[i][t].is_zero() && !b[t][j].is_zero() {
                            acc = acc.add(&a[i][t].mul(&b[t][j]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn transpose<K: Field>(a: &PolyMatrix<K>) -> PolyMatrix<K> {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len()).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Apply a polynomial map to every entry.
pub fn map_entries<K: Field>(a: &PolyMatrix<K>, f: impl Fn(&Polynomial<K>) -> Polynomial<K>) -> PolyMatrix<K> {
    a.iter().map(|row| row.iter().map(&f).collect()).collect()
}

/// Principal submatrix keeping the listed indices.
pub fn principal_submatrix<K: Field>(a: &PolyMatrix<K>, keep: &[usize]) -> PolyMatrix<K> {
    keep.iter().map(|&i| keep.iter().map(|&j| a[i][j].clone()).collect()).collect()
}

/// Rank of a matrix of field elements (Gaussian elimination).
pub fn scalar_rank<K: Field>(field: &K, rows: &[Vec<K::Elem>]) -> usize {
    let mut a: Vec<Vec<K::Elem>> = rows.to_vec();
    let nrows = a.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = a[0].len();
    let mut rank = 0;
    for c in 0..ncols {
        let piv = match (rank..nrows).find(|&r| !field.is_zero(&a[r][c])) {
            Some(p) => p,
            None => continue,
        };
        a.swap(rank, piv);
        let inv = field.inv(&a[rank][c]).expect("nonzero");
        for r in 0..nrows {
            if r != rank && !field.is_zero(&a[r][c]) {
                let factor = field.mul(&a[r][c], &inv);
                for cc in c..ncols {
                    let t = field.mul(&factor, &a[rank][cc]);
                    a[r][cc] = field.sub(&a[r][cc], &t);
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::poly::parse_poly;

    const V: [&str; 3] = ["x0", "x1", "x2"];

    fn p(s: &str) -> Polynomial<Rationals> {
        parse_poly(s, &V, &Rationals).unwrap()
    }

    #[test]
    fn two_by_two() {
        let m = vec![vec![p("x0"), p("x1")], vec![p("x1"), p("x2")]];
        assert_eq!(determinant(&m).unwrap(), p("x0*x2 - x1^2"));
        assert_eq!(determinant_cofactor(&m).unwrap(), p("x0*x2 - x1^2"));
    }

    #[test]
    fn identity_and_nonsquare() {
        let id: PolyMatrix<Rationals> =
            (0..3).map(|i| (0..3).map(|j| if i == j { p("1") } else { p("0") }).collect()).collect();
        assert_eq!(determinant(&id).unwrap(), p("1"));
        let bad = vec![vec![p("1"), p("x0")]];
        assert!(matches!(determinant(&bad), Err(Error::NonSquare { .. })));
    }

    #[test]
    fn zero_pivot_needs_swap() {
        let m = vec![
            vec![p("0"), p("x0"), p("1")],
            vec![p("x1"), p("0"), p("x2")],
            vec![p("1"), p("x2"), p("0")],
        ];
        assert_eq!(determinant_bareiss(&m).unwrap(), determinant_cofactor(&m).unwrap());
    }

    #[test]
    fn jacobian_examples() {
        let f = p("x0*x2 - x1^2");
        assert_eq!(jacobian(&f, &[0, 1, 2]), vec![p("x2"), p("0 - 2*x1"), p("x0")]);
        assert!(jacobian(&p("5"), &[0, 1, 2]).iter().all(|d| d.is_zero()));
        let f5 = crate::field::PrimeField::new(5).unwrap();
        let q = parse_poly("x0^5", &V, &f5).unwrap();
        assert!(jacobian(&q, &[0, 1, 2]).iter().all(|d| d.is_zero()));
    }
}
