//! Dense linear algebra over a [`Field`] and fraction-free determinants of
//! polynomial matrices.

use super::field::Field;
use super::sparse::SparsePoly;
use crate::error::{Error, Result};

pub type Matrix<F> = Vec<Vec<F>>;

/// Row echelon form in place; returns the pivot columns and the parity of
/// row swaps.
fn echelon<F: Field>(m: &mut Matrix<F>) -> (Vec<usize>, bool) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut odd = false;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        if p != r {
            m.swap(p, r);
            odd = !odd;
        }
        let inv = m[r][c].inv();
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].mul(&inv);
            for j in c..cols {
                let v = m[r][j].mul(&f);
                m[i][j] = m[i][j].sub(&v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (pivots, odd)
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    let mut a = m.clone();
    echelon(&mut a).0.len()
}

pub fn det<F: Field>(m: &Matrix<F>) -> F {
    let n = m.len();
    let mut a = m.clone();
    let (pivots, odd) = echelon(&mut a);
    if pivots.len() < n {
        return F::zero();
    }
    let mut d = F::one();
    for (i, row) in a.iter().enumerate() {
        d = d.mul(&row[i]);
    }
    if odd {
        d.neg()
    } else {
        d
    }
}

/// Basis of the right kernel `{v : m v = 0}`.
pub fn kernel<F: Field>(m: &Matrix<F>) -> Vec<Vec<F>> {
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut a = m.clone();
    let (pivots, _) = echelon(&mut a);
    // reduce to RREF
    for (r, &c) in pivots.iter().enumerate().rev() {
        let inv = a[r][c].inv();
        for j in 0..cols {
            a[r][j] = a[r][j].mul(&inv);
        }
        for i in 0..r {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..cols {
                let v = a[r][j].mul(&f);
                a[i][j] = a[i][j].sub(&v);
            }
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![F::zero(); cols];
            v[fc] = F::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = a[r][fc].neg();
            }
            v
        })
        .collect()
}

pub fn inverse<F: Field>(m: &Matrix<F>) -> Option<Matrix<F>> {
    let n = m.len();
    let mut aug: Matrix<F> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    let (pivots, _) = echelon(&mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    for r in (0..n).rev() {
        let inv = aug[r][r].inv();
        for j in 0..2 * n {
            aug[r][j] = aug[r][j].mul(&inv);
        }
        for i in 0..r {
            if aug[i][r].is_zero() {
                continue;
            }
            let f = aug[i][r].clone();
            for j in 0..2 * n {
                let v = aug[r][j].mul(&f);
                aug[i][j] = aug[i][j].sub(&v);
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    let inner = b.len();
    let cols = b.first().map(|r| r.len()).unwrap_or(0);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(F::zero(), |acc, k| acc.add(&row[k].mul(&b[k][j]))))
                .collect()
        })
        .collect()
}

pub fn mat_vec<F: Field>(a: &Matrix<F>, v: &[F]) -> Vec<F> {
    a.iter().map(|row| row.iter().zip(v).fold(F::zero(), |acc, (x, y)| acc.add(&x.mul(y)))).collect()
}

/// Exact determinant of a square matrix of polynomials (Bareiss
/// fraction-free elimination with row pivoting).
pub fn det_poly_matrix(m: &[Vec<SparsePoly>]) -> Result<SparsePoly> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        let found = m.iter().map(|r| r.len()).find(|&l| l != n).unwrap_or(0);
        return Err(Error::DimensionMismatch { expected: n, found });
    }
    if n == 0 {
        return Err(Error::DimensionMismatch { expected: 1, found: 0 });
    }
    let nvars = m[0][0].nvars();
    let mut a: Vec<Vec<SparsePoly>> = m.to_vec();
    let mut negate = false;
    let mut prev = SparsePoly::one(nvars);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    negate = !negate;
                }
                None => return Ok(SparsePoly::zero(nvars)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = SparsePoly::zero(nvars);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -&d } else { d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_sparse;
    use crate::algebra::Rat;

    fn r(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    #[test]
    fn det_rank_kernel() {
        let m = vec![vec![r(1), r(2), r(3)], vec![r(4), r(5), r(6)], vec![r(7), r(8), r(10)]];
        assert_eq!(det(&m), r(-3));
        let s = vec![vec![r(1), r(2), r(3)], vec![r(2), r(4), r(6)], vec![r(0), r(1), r(1)]];
        assert_eq!(rank(&s), 2);
        let k = kernel(&s);
        assert_eq!(k.len(), 1);
        assert!(mat_vec(&s, &k[0]).iter().all(|x| x == &r(0)));
        let inv = inverse(&m).unwrap();
        let id = mat_mul(&m, &inv);
        for (i, row) in id.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                assert_eq!(*v, r((i == j) as i64));
            }
        }
    }

    #[test]
    fn poly_det_examples() {
        let p = |s: &str| parse_sparse(s, 3).unwrap();
        let z = SparsePoly::zero(3);
        let diag = vec![vec![p("x"), z.clone(), z.clone()], vec![z.clone(), p("y"), z.clone()], vec![z.clone(), z.clone(), p("z")]];
        assert_eq!(det_poly_matrix(&diag).unwrap(), p("x*y*z"));
        let two = vec![vec![p("x"), p("y")], vec![p("y"), p("x")]];
        assert_eq!(det_poly_matrix(&two).unwrap(), p("x^2-y^2"));
        // zero leading pivot forces a row swap
        let sw = vec![vec![z.clone(), p("x")], vec![p("y"), p("z")]];
        assert_eq!(det_poly_matrix(&sw).unwrap(), p("-x*y"));
        assert!(det_poly_matrix(&[vec![p("x")], vec![p("y")]]).is_err());
    }
}
