use crate::error::{Error, Result};

/// A prime field `F_p` with exact arithmetic, `p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..(1 << 31)).contains(&p) {
            return Err(Error::invalid(format!(
                "characteristic {p} out of range 2..2^31"
            )));
        }
        let mut d = 2u64;
        while d * d <= p {
            if p.is_multiple_of(d) {
                return Err(Error::invalid(format!("characteristic {p} is not prime")));
            }
            d += 1;
        }
        Ok(PrimeField { p })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a % self.p) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        // Operands are < 2^31, so the product fits in u64.
        (a * b) % self.p
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "zero has no inverse");
        self.pow(a, self.p - 2)
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        base %= self.p;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

/// A sparse matrix over `F_p`, rows given as sorted `(column, value)` lists.
pub struct SparseMatrix {
    pub cols: usize,
    pub rows: Vec<Vec<(usize, u64)>>,
}

/// Rank over `F_p`. Dispatches to a bit-packed eliminator in characteristic 2
/// and to a dense eliminator otherwise; matrices wider than `SPARSE_THRESHOLD`
/// columns go through a sparse eliminator instead.
pub fn rank(field: PrimeField, m: SparseMatrix) -> usize {
    const SPARSE_THRESHOLD: usize = 5_000;
    if m.cols == 0 || m.rows.is_empty() {
        return 0;
    }
    if m.cols > SPARSE_THRESHOLD {
        rank_sparse(field, m)
    } else if field.characteristic() == 2 {
        rank_gf2(m)
    } else {
        rank_dense(field, m)
    }
}

fn rank_gf2(m: SparseMatrix) -> usize {
    let words = m.cols.div_ceil(64);
    let mut rows: Vec<Vec<u64>> = m
        .rows
        .iter()
        .map(|r| {
            let mut packed = vec![0u64; words];
            for &(c, v) in r {
                if v % 2 == 1 {
                    packed[c / 64] ^= 1 << (c % 64);
                }
            }
            packed
        })
        .collect();
    let mut rank = 0usize;
    let mut pivot_row = 0usize;
    for col in 0..m.cols {
        let (w, b) = (col / 64, col % 64);
        let Some(sel) = (pivot_row..rows.len()).find(|&r| rows[r][w] >> b & 1 == 1) else {
            continue;
        };
        rows.swap(pivot_row, sel);
        let (head, tail) = rows.split_at_mut(pivot_row + 1);
        let pivot = &head[pivot_row];
        for r in tail.iter_mut() {
            if r[w] >> b & 1 == 1 {
                for (x, y) in r.iter_mut().zip(pivot.iter()) {
                    *x ^= *y;
                }
            }
        }
        pivot_row += 1;
        rank += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rank
}

fn rank_dense(field: PrimeField, m: SparseMatrix) -> usize {
    let mut rows: Vec<Vec<u64>> = m
        .rows
        .iter()
        .map(|r| {
            let mut dense = vec![0u64; m.cols];
            for &(c, v) in r {
                dense[c] = v % field.characteristic();
            }
            dense
        })
        .collect();
    let mut rank = 0usize;
    let mut pivot_row = 0usize;
    for col in 0..m.cols {
        let Some(sel) = (pivot_row..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(pivot_row, sel);
        let inv = field.inv(rows[pivot_row][col]);
        for x in rows[pivot_row].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let (head, tail) = rows.split_at_mut(pivot_row + 1);
        let pivot = &head[pivot_row];
        for r in tail.iter_mut() {
            let f = r[col];
            if f != 0 {
                for (x, y) in r.iter_mut().zip(pivot.iter()) {
                    *x = field.sub(*x, field.mul(f, *y));
                }
            }
        }
        pivot_row += 1;
        rank += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rank
}

fn rank_sparse(field: PrimeField, m: SparseMatrix) -> usize {
    // Left-looking elimination: reduce each row against the recorded pivots,
    // keyed by leading column.
    let mut pivots: std::collections::HashMap<usize, Vec<(usize, u64)>> =
        std::collections::HashMap::new();
    let mut rank = 0usize;
    for row in m.rows {
        let mut row: Vec<(usize, u64)> = row
            .into_iter()
            .filter_map(|(c, v)| {
                let v = v % field.characteristic();
                (v != 0).then_some((c, v))
            })
            .collect();
        row.sort_unstable_by_key(|&(c, _)| c);
        while let Some(&(lead, val)) = row.first() {
            let Some(pivot) = pivots.get(&lead) else {
                break;
            };
            // row -= val * pivot  (pivot is normalized to lead coefficient 1)
            let mut merged: Vec<(usize, u64)> = Vec::with_capacity(row.len() + pivot.len());
            let (mut i, mut j) = (0usize, 0usize);
            while i < row.len() || j < pivot.len() {
                match (row.get(i), pivot.get(j)) {
                    (Some(&(ci, vi)), Some(&(cj, vj))) if ci == cj => {
                        let v = field.sub(vi, field.mul(val, vj));
                        if v != 0 {
                            merged.push((ci, v));
                        }
                        i += 1;
                        j += 1;
                    }
                    (Some(&(ci, vi)), Some(&(cj, _))) if ci < cj => {
                        merged.push((ci, vi));
                        i += 1;
                    }
                    (Some(_), Some(&(cj, vj))) => {
                        merged.push((cj, field.neg(field.mul(val, vj))));
                        j += 1;
                    }
                    (Some(&(ci, vi)), None) => {
                        merged.push((ci, vi));
                        i += 1;
                    }
                    (None, Some(&(cj, vj))) => {
                        merged.push((cj, field.neg(field.mul(val, vj))));
                        j += 1;
                    }
                    (None, None) => unreachable!(),
                }
            }
            row = merged;
        }
        if let Some(&(lead, val)) = row.first() {
            let inv = field.inv(val);
            for (_, v) in row.iter_mut() {
                *v = field.mul(*v, inv);
            }
            pivots.insert(lead, row);
            rank += 1;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_construction() {
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(32003).is_ok());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(6).is_err());
    }

    #[test]
    fn arithmetic_mod_p() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.add(5, 4), 2);
        assert_eq!(f.sub(2, 5), 4);
        assert_eq!(f.mul(3, 5), 1);
        assert_eq!(f.inv(3), 5);
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    fn from_dense(cols: usize, rows: &[&[u64]]) -> SparseMatrix {
        SparseMatrix {
            cols,
            rows: rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(_, &v)| v != 0)
                        .map(|(c, &v)| (c, v))
                        .collect()
                })
                .collect(),
        }
    }

    #[test]
    fn ranks_agree_across_eliminators() {
        let f2 = PrimeField::new(2).unwrap();
        let f3 = PrimeField::new(3).unwrap();
        let m = |_: ()| from_dense(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        // Over F2 the rows sum to zero; over F3 they are independent.
        assert_eq!(rank(f2, m(())), 2);
        assert_eq!(rank(f3, m(())), 3);
    }

    #[test]
    fn sparse_eliminator_agrees_with_dense() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for p in [2u64, 3, 5, 32003] {
            let field = PrimeField::new(p).unwrap();
            for _ in 0..20 {
                let rows = rng.random_range(1..=8usize);
                let cols = rng.random_range(1..=8usize);
                let dense: Vec<Vec<u64>> = (0..rows)
                    .map(|_| (0..cols).map(|_| rng.random_range(0..p.min(9))).collect())
                    .collect();
                let refs: Vec<&[u64]> = dense.iter().map(|r| r.as_slice()).collect();
                let a = rank_dense(field, from_dense(cols, &refs));
                let b = rank_sparse(field, from_dense(cols, &refs));
                assert_eq!(a, b);
                if p == 2 {
                    assert_eq!(a, rank_gf2(from_dense(cols, &refs)));
                }
            }
        }
    }
}
