//! Dense linear algebra over F_p.

pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

pub fn reduce(v: i64, p: u64) -> u64 {
    v.rem_euclid(p as i64) as u64
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    p: u64,
    data: Vec<u64>,
}

impl FpMatrix {
    pub fn zeros(rows: usize, cols: usize, p: u64) -> Self {
        FpMatrix { rows, cols, p, data: vec![0; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn add_entry(&mut self, r: usize, c: usize, v: i64) {
        let x = &mut self.data[r * self.cols + c];
        *x = (*x + reduce(v, self.p)) % self.p;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Row-reduce in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let (rows, cols, p) = (self.rows, self.cols, self.p);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if piv != r {
                for k in 0..cols {
                    self.data.swap(piv * cols + k, r * cols + k);
                }
            }
            let inv = inv_mod(self.data[r * cols + c], p);
            for k in c..cols {
                let x = &mut self.data[r * cols + k];
                *x = *x * inv % p;
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = self.data[i * cols + c];
                if f == 0 {
                    continue;
                }
                let g = p - f;
                for k in c..cols {
                    let y = self.data[r * cols + k];
                    if y != 0 {
                        let x = &mut self.data[i * cols + k];
                        *x = (*x + g * y) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // eliminate along the shorter side
        let mut m = if self.rows <= self.cols { self.clone() } else { self.transpose() };
        m.rank_forward()
    }

    fn rank_forward(&mut self) -> usize {
        let (rows, cols, p) = (self.rows, self.cols, self.p);
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if piv != r {
                for k in 0..cols {
                    self.data.swap(piv * cols + k, r * cols + k);
                }
            }
            let inv = inv_mod(self.data[r * cols + c], p);
            for i in r + 1..rows {
                let f = self.data[i * cols + c];
                if f == 0 {
                    continue;
                }
                let g = (p - f) * inv % p;
                for k in c..cols {
                    let y = self.data[r * cols + k];
                    if y != 0 {
                        let x = &mut self.data[i * cols + k];
                        *x = (*x + g * y) % p;
                    }
                }
            }
            r += 1;
        }
        r
    }

    pub fn transpose(&self) -> Self {
        let mut t = FpMatrix::zeros(self.cols, self.rows, self.p);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    /// Basis of { x : M x = 0 }.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let p = self.p;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u64; self.cols];
            v[free] = 1;
            for (r, &c) in pivots.iter().enumerate() {
                let x = m.get(r, free);
                v[c] = (p - x) % p;
            }
            basis.push(v);
        }
        basis
    }
}

/// Incrementally maintained row-echelon basis of a subspace of F_p^n.
#[derive(Debug, Clone)]
pub struct Echelon {
    p: u64,
    dim: usize,
    /// (pivot column, normalised row)
    rows: Vec<(usize, Vec<u64>)>,
}

impl Echelon {
    pub fn new(dim: usize, p: u64) -> Self {
        Echelon { p, dim, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.dim
    }

    fn reduce(&self, v: &mut [u64]) {
        let p = self.p;
        for (c, row) in &self.rows {
            let f = v[*c];
            if f != 0 {
                let g = p - f;
                for (x, y) in v.iter_mut().zip(row) {
                    if *y != 0 {
                        *x = (*x + g * y) % p;
                    }
                }
            }
        }
    }

    /// Insert `v`; returns true when it was independent of the current span.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(c) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(w[c], self.p);
        for x in w.iter_mut() {
            *x = *x * inv % self.p;
        }
        let p = self.p;
        for (_, row) in self.rows.iter_mut() {
            let f = row[c];
            if f != 0 {
                let g = p - f;
                for (x, y) in row.iter_mut().zip(&w) {
                    if *y != 0 {
                        *x = (*x + g * y) % p;
                    }
                }
            }
        }
        self.rows.push((c, w));
        true
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_rank(rows: &[Vec<i64>], p: u64) -> usize {
        let mut e = Echelon::new(rows.first().map_or(0, |r| r.len()), p);
        rows.iter()
            .filter(|r| e.insert(&r.iter().map(|&x| reduce(x, p)).collect::<Vec<_>>()))
            .count()
    }

    #[test]
    fn small_rank() {
        let mut m = FpMatrix::zeros(2, 2, 3);
        m.add_entry(0, 0, 1);
        m.add_entry(0, 1, 2);
        m.add_entry(1, 0, 2);
        m.add_entry(1, 1, 1);
        // det = 1 - 4 = -3 = 0 mod 3
        assert_eq!(m.rank(), 1);
        assert_eq!(m.kernel().len(), 1);
    }

    proptest! {
        #[test]
        fn rank_nullity(rows in 1usize..7, cols in 1usize..7, seed in proptest::collection::vec(-6i64..7, 49), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
            let mut m = FpMatrix::zeros(rows, cols, p);
            let mut plain = vec![vec![0i64; cols]; rows];
            for r in 0..rows {
                for c in 0..cols {
                    m.add_entry(r, c, seed[r * 7 + c]);
                    plain[r][c] = seed[r * 7 + c];
                }
            }
            let rk = m.rank();
            prop_assert_eq!(rk, naive_rank(&plain, p));
            let ker = m.kernel();
            prop_assert_eq!(rk + ker.len(), cols);
            for v in ker {
                for r in 0..rows {
                    let s: u64 = (0..cols).map(|c| m.get(r, c) * v[c]).sum::<u64>() % p;
                    prop_assert_eq!(s, 0);
                }
            }
        }
    }
}
