use crate::error::{Error, Result};

/// Finite group given by its multiplication table. Validation checks the
/// Latin square property, a two-sided identity, associativity and inverses,
/// reporting the first violation with a witness.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>, // row-major, table[g * order + h] = g * h
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        let order = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::TableNotSquare {
                    row: i,
                    len: row.len(),
                    order,
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(Error::TableEntryOutOfRange {
                        row: i,
                        col: j,
                        value: v,
                        order,
                    });
                }
            }
        }
        // Latin square: every row and column is a permutation
        for (i, row) in rows.iter().enumerate() {
            let mut seen = vec![false; order];
            for &v in row {
                if seen[v] {
                    return Err(Error::NotLatinSquare {
                        axis: "row",
                        index: i,
                        value: v,
                    });
                }
                seen[v] = true;
            }
        }
        for j in 0..order {
            let mut seen = vec![false; order];
            for row in rows {
                let v = row[j];
                if seen[v] {
                    return Err(Error::NotLatinSquare {
                        axis: "column",
                        index: j,
                        value: v,
                    });
                }
                seen[v] = true;
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| rows[e][x] == x && rows[x][e] == x))
            .ok_or(Error::NoIdentity)?;
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if rows[rows[a][b]][c] != rows[a][rows[b][c]] {
                        return Err(Error::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let mut inverse = vec![0usize; order];
        for g in 0..order {
            inverse[g] = (0..order)
                .find(|&h| rows[g][h] == identity && rows[h][g] == identity)
                .ok_or(Error::NoInverse { element: g })?;
        }
        let mut table = Vec::with_capacity(order * order);
        for row in rows {
            table.extend_from_slice(row);
        }
        Ok(FiniteGroup {
            order,
            table,
            identity,
            inverse,
        })
    }

    pub fn trivial() -> Self {
        FiniteGroup {
            order: 1,
            table: vec![0],
            identity: 0,
            inverse: vec![0],
        }
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let rows: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Self::from_table(&rows).expect("cyclic table is a group")
    }

    pub fn direct_product(&self, other: &FiniteGroup) -> Self {
        let n = self.order * other.order;
        let enc = |a: usize, b: usize| a * other.order + b;
        let rows: Vec<Vec<usize>> = (0..n)
            .map(|x| {
                let (a1, b1) = (x / other.order, x % other.order);
                (0..n)
                    .map(|y| {
                        let (a2, b2) = (y / other.order, y % other.order);
                        enc(self.mul(a1, a2), other.mul(b1, b2))
                    })
                    .collect()
            })
            .collect();
        Self::from_table(&rows).expect("product table is a group")
    }

    /// Multiplication table of a finite abelian group in its element
    /// enumeration order; used to feed abelian groups into table-based
    /// checks.
    pub fn from_abelian(module: &crate::abelian::FgAbGroup) -> Result<Self> {
        let order = module.order_usize().ok_or_else(|| {
            Error::InfiniteModule("table form requires a finite group".into())
        })?;
        let rows: Vec<Vec<usize>> = (0..order)
            .map(|i| {
                let a = module.element_at(i);
                (0..order)
                    .map(|j| module.index_of(&module.add(&a, &module.element_at(j))))
                    .collect()
            })
            .collect();
        Self::from_table(&rows)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    #[inline]
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g * self.order + h]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    /// Ordered product of a slice of elements; empty product is the identity.
    pub fn product(&self, elems: &[usize]) -> usize {
        elems.iter().fold(self.identity, |acc, &g| self.mul(acc, g))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|g| (g..self.order).all(|h| self.mul(g, h) == self.mul(h, g)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_is_valid() {
        let g = FiniteGroup::from_table(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.identity(), 0);
        assert_eq!(g.order(), 2);
        assert_eq!(g.inverse(1), 1);
    }

    #[test]
    fn symmetric_group_from_permutation_composition() {
        // all 6 permutations of 3 points, composed as functions
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let compose = |p: &[usize; 3], q: &[usize; 3]| -> [usize; 3] {
            [p[q[0]], p[q[1]], p[q[2]]]
        };
        let rows: Vec<Vec<usize>> = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| {
                        let r = compose(p, q);
                        perms.iter().position(|x| *x == r).unwrap()
                    })
                    .collect()
            })
            .collect();
        let g = FiniteGroup::from_table(&rows).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
    }

    #[test]
    fn not_latin() {
        let e = FiniteGroup::from_table(&[vec![0, 1], vec![1, 1]]);
        assert!(matches!(e, Err(Error::NotLatinSquare { .. })));
    }

    #[test]
    fn loop_that_is_not_associative() {
        // a Latin square with two-sided identity 0 that fails associativity
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 3, 4, 0, 1],
            vec![3, 4, 1, 2, 0],
            vec![4, 2, 0, 1, 3],
        ];
        match FiniteGroup::from_table(&rows) {
            Err(Error::NotAssociative { a, b, c }) => {
                let m = |x: usize, y: usize| rows[x][y];
                assert_ne!(m(m(a, b), c), m(a, m(b, c)));
            }
            other => panic!("expected associativity failure, got {other:?}"),
        }
    }

    #[test]
    fn product_convention() {
        let g = FiniteGroup::cyclic(5);
        assert_eq!(g.product(&[]), 0);
        assert_eq!(g.product(&[2, 4, 3]), 4);
    }
}
