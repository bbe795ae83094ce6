//! Dense linear algebra over Q.

use num_traits::Zero;

use super::field::Q;

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right null space {v : M v = 0}.
pub fn nullspace(m: &[Vec<Q>], cols: usize) -> Vec<Vec<Q>> {
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let pivots = rref(&mut a);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Q::zero(); cols];
        v[free] = Q::from_integer(1.into());
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[i][free].clone();
        }
        out.push(v);
    }
    out
}

/// Some solution of M v = rhs, or None when inconsistent.
pub fn solve(m: &[Vec<Q>], rhs: &[Q]) -> Option<Vec<Q>> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<Q>> =
        m.iter().zip(rhs).map(|(r, b)| r.iter().cloned().chain([b.clone()]).collect()).collect();
    let pivots = rref(&mut a);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut v = vec![Q::zero(); cols];
    for (i, &pc) in pivots.iter().enumerate() {
        v[pc] = a[i][cols].clone();
    }
    Some(v)
}

/// Incremental detector of the first linear dependency among vectors.
pub struct DependencyFinder {
    dim: usize,
    // Echelon rows augmented with their combination coefficients.
    rows: Vec<(Vec<Q>, Vec<Q>, usize)>,
    count: usize,
}

impl DependencyFinder {
    pub fn new(dim: usize) -> Self {
        DependencyFinder { dim, rows: Vec::new(), count: 0 }
    }

    /// Add a vector; on dependency returns coefficients c_0..c_k (c_k = 1)
    /// with sum c_i v_i = 0 over all vectors pushed so far.
    pub fn push(&mut self, v: Vec<Q>) -> Option<Vec<Q>> {
        assert_eq!(v.len(), self.dim);
        let k = self.count;
        self.count += 1;
        let mut vec = v;
        let mut comb = vec![Q::zero(); k + 1];
        comb[k] = Q::from_integer(1.into());
        for (row, rc, piv) in &self.rows {
            if vec[*piv].is_zero() {
                continue;
            }
            let f = vec[*piv].clone() / &row[*piv];
            for j in 0..self.dim {
                if !row[j].is_zero() {
                    let t = &f * &row[j];
                    vec[j] -= t;
                }
            }
            for (j, c) in rc.iter().enumerate() {
                let t = &f * c;
                comb[j] -= t;
            }
        }
        match vec.iter().position(|x| !x.is_zero()) {
            None => Some(comb),
            Some(p) => {
                self.rows.push((vec, comb, p));
                None
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::q;

    #[test]
    fn kernel_of_rank_one() {
        let m = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]];
        let k = nullspace(&m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s: Q = m[0].iter().zip(v).map(|(a, b)| a * b).sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn solve_square() {
        let m = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        assert_eq!(solve(&m, &[q(3), q(4)]), Some(vec![q(1), q(1)]));
        let sing = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        assert_eq!(solve(&sing, &[q(1), q(3)]), None);
    }

    #[test]
    fn dependency() {
        let mut d = DependencyFinder::new(2);
        assert!(d.push(vec![q(1), q(0)]).is_none());
        assert!(d.push(vec![q(1), q(1)]).is_none());
        let c = d.push(vec![q(3), q(2)]).unwrap();
        // 3,2 = 1*(1,0) + 2*(1,1)
        assert_eq!(c, vec![q(-1), q(-2), q(1)]);
    }
}
