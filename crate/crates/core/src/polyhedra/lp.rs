//! Exact rational simplex for `max c·x` subject to `A x ≤ b`, `x ≥ 0`,
//! `b ≥ 0`. The slack basis is feasible at the origin, so a single phase
//! suffices; Bland's rule guarantees termination.

use num_traits::{One, Signed, Zero};

use crate::algebra::Rat;

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Rat, x: Vec<Rat> },
    Unbounded,
}

/// Solves the problem above. Panics if some `b_i` is negative.
pub fn maximize(c: &[Rat], a: &[Vec<Rat>], b: &[Rat]) -> LpOutcome {
    let (m, n) = (a.len(), c.len());
    assert!(b.iter().all(|v| !v.is_negative()), "origin must be feasible");
    // tableau rows: [A | I | b]; objective row holds reduced costs
    let width = n + m + 1;
    let mut t: Vec<Vec<Rat>> = (0..m)
        .map(|i| {
            let mut row = vec![Rat::zero(); width];
            row[..n].clone_from_slice(&a[i]);
            row[n + i] = Rat::one();
            row[width - 1] = b[i].clone();
            row
        })
        .collect();
    let mut obj: Vec<Rat> = vec![Rat::zero(); width];
    obj[..n].clone_from_slice(c);
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Bland: lowest-index improving column
    while let Some(enter) = (0..n + m).find(|&j| obj[j].is_positive()) {
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else { return LpOutcome::Unbounded };
        let piv = t[r][enter].clone();
        for v in t[r].iter_mut() {
            *v /= &piv;
        }
        let pivot_row = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *v -= &f * p;
                    }
                }
            }
        }
        let f = obj[enter].clone();
        for (v, p) in obj.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *v -= &f * p;
            }
        }
        basis[r] = enter;
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][width - 1].clone();
        }
    }
    let value = c.iter().zip(&x).fold(Rat::zero(), |acc, (ci, xi)| acc + ci * xi);
    LpOutcome::Optimal { value, x }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    #[test]
    fn textbook_problem() {
        // max 3x + 5y, x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18 → 36 at (2, 6)
        let out = maximize(
            &[r(3), r(5)],
            &[vec![r(1), r(0)], vec![r(0), r(2)], vec![r(3), r(2)]],
            &[r(4), r(12), r(18)],
        );
        assert_eq!(out, LpOutcome::Optimal { value: r(36), x: vec![r(2), r(6)] });
    }

    #[test]
    fn unbounded_and_degenerate() {
        assert_eq!(maximize(&[r(1), r(0)], &[vec![r(0), r(1)]], &[r(1)]), LpOutcome::Unbounded);
        // degenerate vertex at the origin: max x + y, x − y ≤ 0, y − x ≤ 0, x + y ≤ 2
        let out = maximize(
            &[r(1), r(1)],
            &[vec![r(1), r(-1)], vec![r(-1), r(1)], vec![r(1), r(1)]],
            &[r(0), r(0), r(2)],
        );
        assert_eq!(out, LpOutcome::Optimal { value: r(2), x: vec![r(1), r(1)] });
    }

    #[test]
    fn fractional_optimum() {
        // max t, t ≤ 2u, t ≤ 3(1 − u) written with u ≤ 1 as t − 2u ≤ 0, t + 3u ≤ 3
        let out = maximize(&[r(1), r(0)], &[vec![r(1), r(-2)], vec![r(1), r(3)]], &[r(0), r(3)]);
        match out {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, Rat::new(6.into(), 5.into())),
            other => panic!("{other:?}"),
        }
    }
}
