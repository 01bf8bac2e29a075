//! Dense linear algebra over an exact field.

use crate::scalar::Field;

pub type Matrix<K> = Vec<Vec<K>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<K: Field>(m: &mut Matrix<K>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let v = m[r][j].clone();
                    m[i][j] = m[i][j].clone() - f.clone() * v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<K: Field>(m: &Matrix<K>) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Basis of the right null space `{x : m x = 0}`.
pub fn nullspace<K: Field>(m: &Matrix<K>, cols: usize) -> Vec<Vec<K>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![K::zero(); cols];
            v[f] = K::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

/// Solves `m x = b` for square nonsingular `m`; `None` if singular.
pub fn solve<K: Field>(m: &Matrix<K>, b: &[K]) -> Option<Vec<K>> {
    let n = m.len();
    let mut aug: Matrix<K> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots.iter().any(|&p| p >= n) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n].clone()).collect())
}

pub fn determinant<K: Field>(m: &Matrix<K>) -> K {
    let n = m.len();
    let mut a = m.clone();
    let mut det = K::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return K::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det = det * a[c][c].clone();
        let inv = a[c][c].inv();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone() * inv.clone();
            for j in c..n {
                let v = a[c][j].clone();
                a[i][j] = a[i][j].clone() - f.clone() * v;
            }
        }
    }
    det
}

/// Characteristic polynomial `det(X·I − m)` by Faddeev–LeVerrier, as
/// coefficients `[c_0, …, c_n]` of `X⁰ … Xⁿ` (monic).
pub fn charpoly<K: Field>(m: &Matrix<K>) -> Vec<K> {
    let n = m.len();
    let mut coeffs = vec![K::zero(); n + 1];
    coeffs[n] = K::one();
    let identity = |c: &K| -> Matrix<K> {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { c.clone() } else { K::zero() }).collect())
            .collect()
    };
    let mut mk = identity(&K::zero());
    for k in 1..=n {
        // M_k = m · (M_{k−1} + c_{n−k+1} I)
        let mut prev = mk.clone();
        for (i, row) in prev.iter_mut().enumerate() {
            row[i] = row[i].clone() + coeffs[n - k + 1].clone();
        }
        mk = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(K::zero(), |acc, l| acc + m[i][l].clone() * prev[l][j].clone())
                    })
                    .collect()
            })
            .collect();
        let trace = (0..n).fold(K::zero(), |acc, i| acc + mk[i][i].clone());
        let kk = (0..k).fold(K::zero(), |acc, _| acc + K::one());
        coeffs[n - k] = -(trace / kk);
    }
    coeffs
}

/// Canonical representative of the row space: nonzero rows of the RREF.
pub fn row_space<K: Field>(rows: &[Vec<K>]) -> Matrix<K> {
    let mut a = rows.to_vec();
    let r = rref(&mut a).len();
    a.truncate(r);
    a
}

/// Row echelon form grown one vector at a time, for independence tests.
#[derive(Clone, Debug)]
pub struct Echelon<K> {
    rows: Vec<(usize, Vec<K>)>,
}

impl<K: Field> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { rows: Vec::new() }
    }
}

impl<K: Field> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` if it is independent of the rows so far; reports whether it was.
    pub fn try_insert(&mut self, v: &[K]) -> bool {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(p) => {
                let inv = v[p].inv();
                v.iter_mut().for_each(|x| *x = x.clone() * inv.clone());
                self.rows.push((p, v));
                true
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rat};

    fn m(rows: &[&[i64]]) -> Matrix<Rat> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn rank_det_solve() {
        let a = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(rank(&a), 2);
        assert_eq!(determinant(&a), rat(-2));
        assert_eq!(solve(&a, &[rat(5), rat(11)]).unwrap(), vec![rat(1), rat(2)]);
        let s = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(rank(&s), 1);
        assert!(solve(&s, &[rat(1), rat(2)]).is_none());
        let ns = nullspace(&s, 2);
        assert_eq!(ns, vec![vec![rat(-2), rat(1)]]);
    }

    #[test]
    fn charpoly_matches_determinant() {
        let a = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(charpoly(&a), vec![rat(-2), rat(-5), rat(1)]);
        let b = m(&[&[2, -1, 0], &[1, 3, 5], &[-2, 0, 1]]);
        let c = charpoly(&b);
        for x in -3..4 {
            let shifted: Matrix<Rat> = (0..3)
                .map(|i| (0..3).map(|j| if i == j { rat(x) } else { rat(0) } - b[i][j].clone()).collect())
                .collect();
            let v = c.iter().rev().fold(rat(0), |acc, k| acc * rat(x) + k.clone());
            assert_eq!(v, determinant(&shifted));
        }
    }
}
