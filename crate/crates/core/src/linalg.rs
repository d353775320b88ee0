use alloc::vec::Vec;

use num_traits::Zero;

use crate::Rational;

/// Particular solution of `A x = b` with free variables set to zero.
#[derive(Clone, Debug)]
pub(crate) struct Solution {
    pub values: Vec<Rational>,
    pub rank: usize,
}

/// Gauss–Jordan elimination over ℚ. Returns `None` if the system is
/// inconsistent.
pub(crate) fn solve(
    mut rows: Vec<Vec<Rational>>,
    mut rhs: Vec<Rational>,
    unknowns: usize,
) -> Option<Solution> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..unknowns {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        rhs.swap(r, p);
        let inv = rows[r][col].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        rhs[r] *= &inv;
        for i in 0..rows.len() {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let f = rows[i][col].clone();
            let pivot_row = rows[r].clone();
            for (x, p) in rows[i].iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
            let delta = &f * &rhs[r];
            rhs[i] -= delta;
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    if rhs[r..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    let mut values = alloc::vec![Rational::zero(); unknowns];
    for (i, &col) in pivots.iter().enumerate() {
        values[col] = rhs[i].clone();
    }
    Some(Solution {
        values,
        rank: pivots.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;
    use alloc::vec;

    #[test]
    fn unique_solution() {
        let rows = vec![
            vec![ratio(1, 1), ratio(1, 1)],
            vec![ratio(1, 1), ratio(-1, 1)],
        ];
        let s = solve(rows, vec![ratio(3, 1), ratio(1, 1)], 2).unwrap();
        assert_eq!(s.values, vec![ratio(2, 1), ratio(1, 1)]);
        assert_eq!(s.rank, 2);
    }

    #[test]
    fn inconsistent() {
        let rows = vec![vec![ratio(1, 1)], vec![ratio(2, 1)]];
        assert!(solve(rows, vec![ratio(1, 1), ratio(1, 1)], 1).is_none());
    }

    #[test]
    fn rank_deficient() {
        let rows = vec![
            vec![ratio(1, 1), ratio(2, 1)],
            vec![ratio(2, 1), ratio(4, 1)],
        ];
        let s = solve(rows, vec![ratio(1, 1), ratio(2, 1)], 2).unwrap();
        assert_eq!(s.rank, 1);
    }
}
