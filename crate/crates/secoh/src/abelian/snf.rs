//! Smith normal form over the integers, with the operations built on it:
//! kernel bases, cokernel invariant factors, membership solving and column
//! lattice bases.
//!
//! The pivot rule is fixed: smallest nonzero magnitude in the remaining
//! submatrix, ties broken by lowest (row, col). Entries are cleared with
//! 2x2 unimodular (extended gcd) row/column operations, then the pivot is
//! forced to divide the remaining submatrix by row absorption. This gives a
//! deterministic result for a given input.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::abelian::fgab::FgAbGroup;
use crate::abelian::matrix::IntMatrix;
use crate::error::{Error, Result};

/// U * M * V = S with U, V unimodular and S diagonal with a divisibility
/// chain s1 | s2 | ... on its nonzero entries.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

struct Engine {
    rows: usize,
    cols: usize,
    m: Vec<Vec<BigInt>>,
    u: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
}

fn dense_identity(n: usize) -> Vec<Vec<BigInt>> {
    let mut d = vec![vec![BigInt::zero(); n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = BigInt::from(1);
    }
    d
}

impl Engine {
    fn new(m: &IntMatrix, track_u: bool, track_v: bool) -> Self {
        // dense working copy; callers keep these matrices small
        assert!(
            m.rows().saturating_mul(m.cols()) <= 16_000_000,
            "matrix too large for dense elimination: {}x{}",
            m.rows(),
            m.cols()
        );
        Engine {
            rows: m.rows(),
            cols: m.cols(),
            m: m.to_dense(),
            u: track_u.then(|| dense_identity(m.rows())),
            v: track_v.then(|| dense_identity(m.cols())),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.m.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in &mut self.m {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.m[i] {
            if !x.is_zero() {
                *x = -std::mem::take(x);
            }
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                if !x.is_zero() {
                    *x = -std::mem::take(x);
                }
            }
        }
    }

    /// row_i += c * row_j
    fn add_row_mul(&mut self, i: usize, j: usize, c: &BigInt) {
        debug_assert_ne!(i, j);
        if c.is_zero() {
            return;
        }
        for k in 0..self.cols {
            if !self.m[j][k].is_zero() {
                let t = c * &self.m[j][k];
                self.m[i][k] += t;
            }
        }
        if let Some(u) = &mut self.u {
            for k in 0..u[0].len() {
                if !u[j][k].is_zero() {
                    let t = c * &u[j][k];
                    u[i][k] += t;
                }
            }
        }
    }

    /// col_i += c * col_j
    fn add_col_mul(&mut self, i: usize, j: usize, c: &BigInt) {
        debug_assert_ne!(i, j);
        if c.is_zero() {
            return;
        }
        for row in &mut self.m {
            if !row[j].is_zero() {
                let t = c * &row[j];
                row[i] += t;
            }
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                if !row[j].is_zero() {
                    let t = c * &row[j];
                    row[i] += t;
                }
            }
        }
    }

    /// Replace (row_i, row_j) by ((x*row_i + y*row_j), (-b/g*row_i + a/g*row_j))
    /// where a = m[i][pc], b = m[j][pc], g = gcd. Afterwards m[i][pc] = g and
    /// m[j][pc] = 0. Determinant of the 2x2 block is +1.
    fn gcd_rows(&mut self, i: usize, j: usize, pc: usize) {
        let a = self.m[i][pc].clone();
        let b = self.m[j][pc].clone();
        let eg = a.extended_gcd(&b);
        let (g, x, y) = (eg.gcd, eg.x, eg.y);
        debug_assert!(!g.is_zero());
        let bg = &b / &g;
        let ag = &a / &g;
        let apply = |ri: &mut Vec<BigInt>, rj: &mut Vec<BigInt>| {
            for k in 0..ri.len() {
                let p = &ri[k];
                let q = &rj[k];
                let np = &x * p + &y * q;
                let nq = &ag * q - &bg * p;
                ri[k] = np;
                rj[k] = nq;
            }
        };
        {
            let (ri, rj) = two_rows(&mut self.m, i, j);
            apply(ri, rj);
        }
        if let Some(u) = &mut self.u {
            let (ri, rj) = two_rows(u, i, j);
            apply(ri, rj);
        }
    }

    /// Column analogue of `gcd_rows` at pivot row `pr`.
    fn gcd_cols(&mut self, i: usize, j: usize, pr: usize) {
        let a = self.m[pr][i].clone();
        let b = self.m[pr][j].clone();
        let eg = a.extended_gcd(&b);
        let (g, x, y) = (eg.gcd, eg.x, eg.y);
        debug_assert!(!g.is_zero());
        let bg = &b / &g;
        let ag = &a / &g;
        let apply_rows = |rows: &mut Vec<Vec<BigInt>>| {
            for row in rows.iter_mut() {
                let p = row[i].clone();
                let q = row[j].clone();
                row[i] = &x * &p + &y * &q;
                row[j] = &ag * &q - &bg * &p;
            }
        };
        apply_rows(&mut self.m);
        if let Some(v) = &mut self.v {
            apply_rows(v);
        }
    }

    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let mut best_mag: Option<BigInt> = None;
        for r in t..self.rows {
            for c in t..self.cols {
                let e = &self.m[r][c];
                if e.is_zero() {
                    continue;
                }
                let mag = e.abs();
                if best_mag.as_ref().is_none_or(|b| mag < *b) {
                    best_mag = Some(mag);
                    best = Some((r, c));
                }
            }
        }
        best
    }

    fn reduce(&mut self) -> usize {
        let mut t = 0;
        while t < self.rows && t < self.cols {
            let Some((pr, pc)) = self.find_pivot(t) else {
                break;
            };
            self.swap_rows(t, pr);
            self.swap_cols(t, pc);
            'clear: loop {
                // clear row t with column operations
                for c in t + 1..self.cols {
                    if self.m[t][c].is_zero() {
                        continue;
                    }
                    let (q, r) = self.m[t][c].div_rem(&self.m[t][t]);
                    if r.is_zero() {
                        self.add_col_mul(c, t, &(-q));
                    } else {
                        self.gcd_cols(t, c, t);
                    }
                }
                // clear column t with row operations; a gcd step here can
                // reintroduce entries into row t, in which case we loop
                let mut row_dirtied = false;
                for r in t + 1..self.rows {
                    if self.m[r][t].is_zero() {
                        continue;
                    }
                    let (q, rem) = self.m[r][t].div_rem(&self.m[t][t]);
                    if rem.is_zero() {
                        self.add_row_mul(r, t, &(-q));
                    } else {
                        self.gcd_rows(t, r, t);
                        row_dirtied = true;
                    }
                }
                if row_dirtied && (t + 1..self.cols).any(|c| !self.m[t][c].is_zero()) {
                    continue 'clear;
                }
                // force the pivot to divide the remaining submatrix
                let pivot = self.m[t][t].clone();
                let mut absorbed = false;
                'scan: for r in t + 1..self.rows {
                    for c in t + 1..self.cols {
                        if !self.m[r][c].is_zero() && !(&self.m[r][c] % &pivot).is_zero() {
                            self.add_row_mul(t, r, &BigInt::from(1));
                            absorbed = true;
                            break 'scan;
                        }
                    }
                }
                if !absorbed {
                    break 'clear;
                }
            }
            if self.m[t][t].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
        t
    }

    fn take(self) -> (IntMatrix, Option<IntMatrix>, Option<IntMatrix>) {
        // reconstruct with explicit shapes: empty row lists lose the column
        // count otherwise
        let s = dense_to_matrix(self.m, self.rows, self.cols);
        let u = self.u.map(|u| dense_to_matrix(u, self.rows, self.rows));
        let v = self.v.map(|v| dense_to_matrix(v, self.cols, self.cols));
        (s, u, v)
    }
}

fn dense_to_matrix(dense: Vec<Vec<BigInt>>, rows: usize, cols: usize) -> IntMatrix {
    let mut m = IntMatrix::zero(rows, cols);
    for (r, row) in dense.into_iter().enumerate() {
        for (c, v) in row.into_iter().enumerate() {
            if !v.is_zero() {
                m.set(r, c, v);
            }
        }
    }
    m
}

fn two_rows<T>(v: &mut [Vec<T>], i: usize, j: usize) -> (&mut Vec<T>, &mut Vec<T>) {
    debug_assert_ne!(i, j);
    if i < j {
        let (a, b) = v.split_at_mut(j);
        (&mut a[i], &mut b[0])
    } else {
        let (a, b) = v.split_at_mut(i);
        (&mut b[0], &mut a[j])
    }
}

pub fn snf(m: &IntMatrix) -> SnfResult {
    let mut e = Engine::new(m, true, true);
    let rank = e.reduce();
    let (s, u, v) = e.take();
    SnfResult {
        u: u.unwrap(),
        s,
        v: v.unwrap(),
        rank,
    }
}

/// Basis of the integer kernel {x : Mx = 0}, returned as the columns of a
/// cols(M) x (cols(M) - rank) matrix. The basis is saturated: it spans the
/// full kernel lattice, not a finite-index sublattice.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let mut e = Engine::new(m, false, true);
    let rank = e.reduce();
    let (_, _, v) = e.take();
    let v = v.unwrap();
    let n = m.cols();
    let mut k = IntMatrix::zero(n, n - rank);
    for r in 0..n {
        for c in rank..n {
            let val = v.get(r, c);
            if !val.is_zero() {
                k.set(r, c - rank, val);
            }
        }
    }
    k
}

/// Invariant factors of Z^rows / col(M): the nontrivial diagonal entries of
/// the Smith form followed by (rows - rank) zeros.
pub fn cokernel_invariants(m: &IntMatrix) -> FgAbGroup {
    let mut e = Engine::new(m, false, false);
    let rank = e.reduce();
    let diag: Vec<BigInt> = (0..rank).map(|i| e.m[i][i].clone()).collect();
    let mut inv: Vec<BigInt> = diag.into_iter().filter(|d| *d != BigInt::from(1)).collect();
    inv.extend(std::iter::repeat_n(BigInt::zero(), m.rows() - rank));
    FgAbGroup::new(inv).expect("Smith form yields canonical invariants")
}

/// Basis of the lattice spanned by the columns of M: the nonzero columns of
/// M*V, where V is the right Smith transform (M*V = U^-1 * S).
pub fn column_lattice_basis(m: &IntMatrix) -> IntMatrix {
    let mut e = Engine::new(m, false, true);
    let rank = e.reduce();
    let (_, _, v) = e.take();
    let mv = m.mul(&v.unwrap());
    let mut b = IntMatrix::zero(m.rows(), rank);
    for r in 0..m.rows() {
        for (c, val) in mv.row(r) {
            if *c < rank {
                b.set(r, *c, val.clone());
            } else {
                debug_assert!(val.is_zero());
            }
        }
    }
    b
}

/// Reusable solver for Mx = v built from one Smith decomposition of M.
pub struct SnfSolver {
    rows: usize,
    cols: usize,
    u: IntMatrix,
    v: IntMatrix,
    diag: Vec<BigInt>,
    rank: usize,
}

impl SnfSolver {
    pub fn new(m: &IntMatrix) -> Self {
        let r = snf(m);
        let diag = (0..r.rank).map(|i| r.s.get(i, i)).collect();
        SnfSolver {
            rows: m.rows(),
            cols: m.cols(),
            u: r.u,
            v: r.v,
            diag,
            rank: r.rank,
        }
    }

    /// Some solution x of Mx = v, or None when v is not in the column image.
    pub fn solve(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.rows, "vector length mismatch");
        let c = self.u.mul_vec(v);
        let mut y = vec![BigInt::zero(); self.cols];
        for i in 0..self.rows {
            if i < self.rank {
                let (q, r) = c[i].div_rem(&self.diag[i]);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            } else if !c[i].is_zero() {
                return None;
            }
        }
        Some(self.v.mul_vec(&y))
    }
}

/// Solve Mx = v over the integers. `Ok(None)` means v is not in the column
/// image of M.
pub fn solve_membership(m: &IntMatrix, v: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if v.len() != m.rows() {
        return Err(Error::Dimension(format!(
            "solve_membership: vector has length {}, matrix has {} rows",
            v.len(),
            m.rows()
        )));
    }
    Ok(SnfSolver::new(m).solve(v))
}
