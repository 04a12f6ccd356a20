use num_bigint::BigInt;
use num_traits::Zero;

/// Exact integer matrix with sparse row storage. Entries are arbitrary
/// precision; anything absent from a row is zero.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    // per row: (column, value) sorted by column, values nonzero
    data: Vec<Vec<(usize, BigInt)>>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.data[i].push((i, BigInt::from(1)));
        }
        m
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let n = entries.len();
        let mut m = IntMatrix::zero(n, n);
        for (i, e) in entries.iter().enumerate() {
            if !e.is_zero() {
                m.data[i].push((i, e.clone()));
            }
        }
        m
    }

    /// Block-diagonal matrix made of `times` copies of `block`.
    pub fn block_diag_repeat(block: &IntMatrix, times: usize) -> Self {
        let mut m = IntMatrix::zero(block.rows * times, block.cols * times);
        for t in 0..times {
            for (r, row) in block.data.iter().enumerate() {
                let dst = &mut m.data[t * block.rows + r];
                for (c, v) in row {
                    dst.push((t * block.cols + c, v.clone()));
                }
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = IntMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged row {i}");
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.data[i].push((j, BigInt::from(v)));
                }
            }
        }
        m
    }

    pub fn from_bigint_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = IntMatrix::zero(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged row {i}");
            for (j, v) in row.into_iter().enumerate() {
                if !v.is_zero() {
                    m.data[i].push((j, v));
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        assert!(r < self.rows && c < self.cols, "entry ({r}, {c}) out of bounds");
        match self.data[r].binary_search_by_key(&c, |e| e.0) {
            Ok(pos) => self.data[r][pos].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        assert!(r < self.rows && c < self.cols, "entry ({r}, {c}) out of bounds");
        match self.data[r].binary_search_by_key(&c, |e| e.0) {
            Ok(pos) => {
                if v.is_zero() {
                    self.data[r].remove(pos);
                } else {
                    self.data[r][pos].1 = v;
                }
            }
            Err(pos) => {
                if !v.is_zero() {
                    self.data[r].insert(pos, (c, v));
                }
            }
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &BigInt) {
        if v.is_zero() {
            return;
        }
        assert!(r < self.rows && c < self.cols, "entry ({r}, {c}) out of bounds");
        match self.data[r].binary_search_by_key(&c, |e| e.0) {
            Ok(pos) => {
                self.data[r][pos].1 += v;
                if self.data[r][pos].1.is_zero() {
                    self.data[r].remove(pos);
                }
            }
            Err(pos) => self.data[r].insert(pos, (c, v.clone())),
        }
    }

    pub fn row(&self, r: usize) -> &[(usize, BigInt)] {
        &self.data[r]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        assert!(c < self.cols, "column {c} out of bounds");
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut m = IntMatrix::zero(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                m.data[*c].push((r, v.clone()));
            }
        }
        // transposing row-major visits rows in order, so columns stay sorted
        m
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(
            self.cols, other.rows,
            "product shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut m = IntMatrix::zero(self.rows, other.cols);
        let mut acc: Vec<BigInt> = vec![BigInt::zero(); other.cols];
        let mut touched: Vec<usize> = Vec::new();
        for (r, row) in self.data.iter().enumerate() {
            for (k, v) in row {
                for (c, w) in &other.data[*k] {
                    if acc[*c].is_zero() {
                        touched.push(*c);
                    }
                    acc[*c] += v * w;
                }
            }
            touched.sort_unstable();
            for &c in &touched {
                if !acc[c].is_zero() {
                    m.data[r].push((c, std::mem::take(&mut acc[c])));
                } else {
                    acc[c] = BigInt::zero();
                }
            }
            touched.clear();
        }
        m
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, x.len(), "vector length mismatch");
        self.data
            .iter()
            .map(|row| {
                let mut s = BigInt::zero();
                for (c, v) in row {
                    s += v * &x[*c];
                }
                s
            })
            .collect()
    }

    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut m = IntMatrix::zero(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            m.data[r] = self.data[r].clone();
            for (c, v) in &other.data[r] {
                m.data[r].push((self.cols + c, v.clone()));
            }
        }
        m
    }

    /// Rows `lo..hi` as a new matrix.
    pub fn row_slice(&self, lo: usize, hi: usize) -> IntMatrix {
        assert!(lo <= hi && hi <= self.rows);
        IntMatrix {
            rows: hi - lo,
            cols: self.cols,
            data: self.data[lo..hi].to_vec(),
        }
    }

    /// Diagonal entries when the matrix is square with no off-diagonal
    /// entries; zeros on the diagonal are allowed.
    pub fn diagonal_entries(&self) -> Option<Vec<BigInt>> {
        if self.rows != self.cols {
            return None;
        }
        let mut diag = vec![BigInt::zero(); self.rows];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                if *c != r {
                    return None;
                }
                diag[r] = v.clone();
            }
        }
        Some(diag)
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                d[r][*c] = v.clone();
            }
        }
        d
    }
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows.min(16) {
            let row: Vec<String> = (0..self.cols.min(16)).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        if self.rows > 16 || self.cols > 16 {
            writeln!(f, "  ...")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        let b = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        let ab = a.mul(&b);
        assert_eq!(ab, IntMatrix::from_rows(&[vec![2, 1], vec![4, 3]]));
        let at = a.transpose();
        assert_eq!(at, IntMatrix::from_rows(&[vec![1, 3], vec![2, 4]]));
    }

    #[test]
    fn block_diag() {
        let b = IntMatrix::from_rows(&[vec![2]]);
        let m = IntMatrix::block_diag_repeat(&b, 3);
        assert_eq!(m.diagonal_entries().unwrap(), vec![2.into(), 2.into(), 2.into()]);
    }

    #[test]
    fn add_to_cancels() {
        let mut m = IntMatrix::zero(1, 1);
        m.add_to(0, 0, &BigInt::from(5));
        m.add_to(0, 0, &BigInt::from(-5));
        assert!(m.is_zero());
    }

    #[test]
    #[should_panic(expected = "out of bounds")]
    fn out_of_bounds_get() {
        let m = IntMatrix::zero(2, 2);
        let _ = m.get(2, 0);
    }
}
