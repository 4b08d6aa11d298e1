use super::Polynomial;
use crate::{Error, Result};

/// Dense matrix of polynomials, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    nvars: usize,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zeros(nvars: usize, rows: usize, cols: usize) -> Self {
        Self {
            nvars,
            rows,
            cols,
            entries: vec![Polynomial::zero(nvars); rows * cols],
        }
    }

    pub fn from_rows(nvars: usize, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            for e in row {
                if e.nvars() != nvars {
                    return Err(Error::ContextMismatch {
                        left: nvars,
                        right: e.nvars(),
                    });
                }
                entries.push(e);
            }
        }
        Ok(Self {
            nvars,
            rows: nrows,
            cols,
            entries,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Polynomial) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Polynomial] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = PolyMatrix::zeros(self.nvars, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> PolyMatrix {
        PolyMatrix {
            entries: self.entries.iter().map(f).collect(),
            ..self.clone()
        }
    }

    /// Determinant of the submatrix on the given rows and columns, by
    /// cofactor expansion along the first row. The empty minor is 1.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Polynomial {
        debug_assert_eq!(rows.len(), cols.len());
        if rows.is_empty() {
            return Polynomial::one(self.nvars);
        }
        if rows.len() == 1 {
            return self.get(rows[0], cols[0]).clone();
        }
        let mut acc = Polynomial::zero(self.nvars);
        let rest_rows = &rows[1..];
        for (k, &c) in cols.iter().enumerate() {
            let entry = self.get(rows[0], c);
            if entry.is_zero() {
                continue;
            }
            let rest_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = entry * &self.minor(rest_rows, &rest_cols);
            acc = if k % 2 == 0 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        acc
    }

    pub fn determinant(&self) -> Result<Polynomial> {
        if self.rows != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(self.minor(&idx, &idx))
    }

    /// All `k × k` minors, nonzero ones only. `k = 0` yields `[1]`.
    pub fn minors(&self, k: usize) -> Vec<Polynomial> {
        if k == 0 {
            return vec![Polynomial::one(self.nvars)];
        }
        if k > self.rows || k > self.cols {
            return Vec::new();
        }
        let mut out = Vec::new();
        for rs in combinations(self.rows, k) {
            for cs in combinations(self.cols, k) {
                let m = self.minor(&rs, &cs);
                if !m.is_zero() {
                    out.push(m);
                }
            }
        }
        out
    }
}

/// `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}
