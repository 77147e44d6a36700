use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::IntMatrix;

/// `p * m * q = d` with `p`, `q` unimodular and `d` diagonal with d_1 | d_2 | ...
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmithDecomposition {
    pub p: IntMatrix,
    pub d: IntMatrix,
    pub q: IntMatrix,
}

impl SmithDecomposition {
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d.get(i, i).clone()).collect()
    }
}

struct Work {
    a: Vec<Vec<BigInt>>,
    p: Vec<Vec<BigInt>>,
    q: Vec<Vec<BigInt>>,
}

impl Work {
    // row_i -= k * row_j, mirrored in p
    fn row_axpy(&mut self, i: usize, j: usize, k: &BigInt) {
        for m in [&mut self.a, &mut self.p] {
            let (ri, rj) = pick2(m, i, j);
            for (x, y) in ri.iter_mut().zip(rj.iter()) {
                *x -= k * y;
            }
        }
    }

    // col_i -= k * col_j, mirrored in q
    fn col_axpy(&mut self, i: usize, j: usize, k: &BigInt) {
        for m in [&mut self.a, &mut self.q] {
            for r in m.iter_mut() {
                let t = k * &r[j];
                r[i] -= t;
            }
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.p.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for m in [&mut self.a, &mut self.q] {
            for r in m.iter_mut() {
                r.swap(i, j);
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.p] {
            m[i].iter_mut().for_each(|x| *x = -&*x);
        }
    }
}

fn pick2<T>(v: &mut [T], i: usize, j: usize) -> (&mut T, &T) {
    assert_ne!(i, j);
    if i < j {
        let (a, b) = v.split_at_mut(j);
        (&mut a[i], &b[0])
    } else {
        let (a, b) = v.split_at_mut(i);
        (&mut b[0], &a[j])
    }
}

fn ident(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as u8)).collect())
        .collect()
}

fn to_matrix(rows: Vec<Vec<BigInt>>, cols: usize) -> IntMatrix {
    let r = rows.len();
    IntMatrix::new(r, cols, rows.into_iter().flatten().collect()).expect("consistent shape")
}

/// Smith normal form by gcd-driven elimination with explicit transforms.
pub fn snf(m: &IntMatrix) -> SmithDecomposition {
    let (n, k) = (m.rows(), m.cols());
    let mut w = Work {
        a: (0..n).map(|i| m.row(i).to_vec()).collect(),
        p: ident(n),
        q: ident(k),
    };
    for t in 0..n.min(k) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..n {
            for j in t..k {
                let x = &w.a[i][j];
                if !x.is_zero() && best.map_or(true, |(bi, bj)| x.abs() < w.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        if bi != t {
            w.swap_rows(bi, t);
        }
        if bj != t {
            w.swap_cols(bj, t);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..n {
                if w.a[i][t].is_zero() {
                    continue;
                }
                let qt = w.a[i][t].div_floor(&w.a[t][t]);
                w.row_axpy(i, t, &qt);
                if !w.a[i][t].is_zero() {
                    w.swap_rows(i, t);
                    dirty = true;
                }
            }
            for j in t + 1..k {
                if w.a[t][j].is_zero() {
                    continue;
                }
                let qt = w.a[t][j].div_floor(&w.a[t][t]);
                w.col_axpy(j, t, &qt);
                if !w.a[t][j].is_zero() {
                    w.swap_cols(j, t);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility: fold an offending row into the pivot row and redo
            let piv = w.a[t][t].clone();
            let bad = (t + 1..n).find(|&i| (t + 1..k).any(|j| !w.a[i][j].is_multiple_of(&piv)));
            match bad {
                Some(i) => {
                    let minus_one = BigInt::from(-1);
                    w.row_axpy(t, i, &minus_one);
                }
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
    }
    SmithDecomposition { p: to_matrix(w.p, n), d: to_matrix(w.a, k), q: to_matrix(w.q, k) }
}
