//! Dense linear algebra over a field: row reduction, kernels, solving.

use crate::field::Field;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<K: Field>(field: &K, a: &mut [Vec<K::Elem>]) -> Vec<usize> {
    let nrows = a.len();
    if nrows == 0 {
        return Vec::new();
    }
    let ncols = a[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let p = match (r..nrows).find(|&i| !field.is_zero(&a[i][c])) {
            Some(p) => p,
            None => continue,
        };
        a.swap(r, p);
        let inv = field.inv(&a[r][c]).expect("nonzero pivot");
        for x in a[r].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let prow = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[c]) {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&prow).skip(c) {
                *x = field.sub(x, &field.mul(&f, y));
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the null space `{x : A x = 0}` for `A` with `ncols` columns.
pub fn kernel<K: Field>(field: &K, a: &[Vec<K::Elem>], ncols: usize) -> Vec<Vec<K::Elem>> {
    let mut m: Vec<Vec<K::Elem>> = a.to_vec();
    let pivots = rref(field, &mut m);
    let mut is_pivot = vec![None; ncols];
    for (r, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(r);
    }
    let mut basis = Vec::new();
    for free in 0..ncols {
        if is_pivot[free].is_some() {
            continue;
        }
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = field.neg(&m[r][free]);
        }
        basis.push(v);
    }
    basis
}

/// One solution of `A x = b`, if the system is consistent.
pub fn solve<K: Field>(field: &K, a: &[Vec<K::Elem>], b: &[K::Elem], ncols: usize) -> Option<Vec<K::Elem>> {
    let mut m: Vec<Vec<K::Elem>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(field, &mut m);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![field.zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][ncols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn kernel_and_solve() {
        let f = PrimeField::new(101).unwrap();
        let a = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let k = kernel(&f, &a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s = (0..3).fold(0, |acc, j| f.add(&acc, &f.mul(&a[0][j], &v[j])));
            assert_eq!(s, 0);
        }
        let x = solve(&f, &a, &[6, 12], 3).unwrap();
        assert_eq!(f.add(&f.add(&x[0], &f.mul(&2, &x[1])), &f.mul(&3, &x[2])), 6);
        assert!(solve(&f, &a, &[1, 1], 3).is_none());
    }
}
