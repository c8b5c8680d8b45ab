//! Exact dense row reduction.

use crate::field::Field;

/// Rank of the matrix with the given rows, all of length `ncols`.
pub fn rank<F: Field>(mut rows: Vec<Vec<F>>, ncols: usize) -> usize {
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("nonzero pivot");
        for x in &mut rows[r][col..] {
            *x *= &inv;
        }
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot = &head[r];
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, y) in row[col..].iter_mut().zip(&pivot[col..]) {
                if !y.is_zero() {
                    *x -= factor.clone() * y;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf32003, Rational};

    fn q(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| Rational::from_i64(v)).collect())
            .collect()
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rank(q(&[&[1, 2], &[2, 4]]), 2), 1);
        assert_eq!(rank(q(&[&[0, 1], &[1, 0], &[1, 1]]), 2), 2);
        assert_eq!(rank(q(&[]), 3), 0);
        assert_eq!(rank(q(&[&[0, 0, 0]]), 3), 0);
        let p: Vec<Vec<Gf32003>> = vec![
            vec![Gf32003::from_i64(1), Gf32003::from_i64(32002)],
            vec![Gf32003::from_i64(-1), Gf32003::from_i64(1)],
        ];
        assert_eq!(rank(p, 2), 1);
    }
}
