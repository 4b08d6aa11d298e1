//! Smith normal form over `k[x]` with tracked unimodular transforms.

use super::univariate::UniPoly;

pub type UniMatrix = Vec<Vec<UniPoly>>;

/// `U·A·V = D` with `D` diagonal, `d_1 | d_2 | …`, nonzero entries monic.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub d: UniMatrix,
    pub u: UniMatrix,
    pub u_inv: UniMatrix,
    pub v: UniMatrix,
    pub v_inv: UniMatrix,
}

impl SmithForm {
    /// Diagonal entries `d_ii`, `min(rows, cols)` of them.
    pub fn diagonal(&self) -> Vec<UniPoly> {
        let k = self.d.len().min(self.d.first().map_or(0, Vec::len));
        (0..k).map(|i| self.d[i][i].clone()).collect()
    }

    /// Re-multiplies the transforms against `a`.
    pub fn verify(&self, a: &UniMatrix) -> bool {
        let rows = a.len();
        let cols = self.v.len();
        let diagonal = self
            .d
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, e)| i == j || e.is_zero()));
        let divisibility = self
            .diagonal()
            .windows(2)
            .all(|w| w[1].is_zero() || (!w[0].is_zero() && w[1].div_rem(&w[0]).1.is_zero()));
        diagonal
            && divisibility
            && mat_mul(&mat_mul(&self.u, a), &self.v) == self.d
            && mat_mul(&self.u, &self.u_inv) == identity(rows)
            && mat_mul(&self.v, &self.v_inv) == identity(cols)
    }
}

pub fn identity(n: usize) -> UniMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        UniPoly::one()
                    } else {
                        UniPoly::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &UniMatrix, b: &UniMatrix) -> UniMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(UniPoly::zero(), |acc, k| acc.add(&row[k].mul(&b[k][j]))))
                .collect()
        })
        .collect()
}

struct Work {
    a: UniMatrix,
    u: UniMatrix,
    u_inv: UniMatrix,
    v: UniMatrix,
    v_inv: UniMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
        for row in &mut self.u_inv {
            row.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.a {
            row.swap(i, j);
        }
        for row in &mut self.v {
            row.swap(i, j);
        }
        self.v_inv.swap(i, j);
    }

    /// `row_i += q·row_j`.
    fn add_row(&mut self, i: usize, j: usize, q: &UniPoly) {
        for m in [&mut self.a, &mut self.u] {
            let src = m[j].clone();
            for (e, s) in m[i].iter_mut().zip(&src) {
                *e = e.add(&q.mul(s));
            }
        }
        for row in &mut self.u_inv {
            row[j] = row[j].sub(&q.mul(&row[i]));
        }
    }

    /// `col_j += q·col_i`.
    fn add_col(&mut self, j: usize, i: usize, q: &UniPoly) {
        for m in [&mut self.a, &mut self.v] {
            for row in m.iter_mut() {
                row[j] = row[j].add(&q.mul(&row[i]));
            }
        }
        let src = self.v_inv[j].clone();
        for (e, s) in self.v_inv[i].iter_mut().zip(&src) {
            *e = e.sub(&q.mul(s));
        }
    }

    fn scale_row(&mut self, i: usize, c: &num_rational::BigRational) {
        let inv = c.recip();
        for e in self.a[i].iter_mut().chain(self.u[i].iter_mut()) {
            *e = e.scale(c);
        }
        for row in &mut self.u_inv {
            row[i] = row[i].scale(&inv);
        }
    }
}

/// Smith normal form of a `rows × cols` matrix over `k[x]`.
pub fn smith_normal_form(a: &UniMatrix) -> SmithForm {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut w = Work {
        a: a.clone(),
        u: identity(rows),
        u_inv: identity(rows),
        v: identity(cols),
        v_inv: identity(cols),
    };
    for k in 0..rows.min(cols) {
        loop {
            // pivot: nonzero entry of least degree in the trailing block
            let pivot = (k..rows)
                .flat_map(|i| (k..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !w.a[i][j].is_zero())
                .min_by_key(|&(i, j)| (w.a[i][j].degree(), i, j));
            let Some((pi, pj)) = pivot else { break };
            if pi != k {
                w.swap_rows(k, pi);
            }
            if pj != k {
                w.swap_cols(k, pj);
            }
            let mut clean = true;
            for i in k + 1..rows {
                if !w.a[i][k].is_zero() {
                    let (q, r) = w.a[i][k].div_rem(&w.a[k][k]);
                    w.add_row(i, k, &q.neg());
                    clean &= r.is_zero();
                }
            }
            for j in k + 1..cols {
                if !w.a[k][j].is_zero() {
                    let (q, r) = w.a[k][j].div_rem(&w.a[k][k]);
                    w.add_col(j, k, &q.neg());
                    clean &= r.is_zero();
                }
            }
            if !clean {
                continue;
            }
            // pivot must divide the trailing block
            let bad = (k + 1..rows)
                .find(|&i| (k + 1..cols).any(|j| !w.a[i][j].div_rem(&w.a[k][k]).1.is_zero()));
            match bad {
                Some(i) => w.add_row(k, i, &UniPoly::one()),
                None => break,
            }
        }
        if let Some(lc) = w.a[k][k].leading_coeff().cloned() {
            w.scale_row(k, &lc.recip());
        }
    }
    SmithForm {
        d: w.a,
        u: w.u,
        u_inv: w.u_inv,
        v: w.v,
        v_inv: w.v_inv,
    }
}
