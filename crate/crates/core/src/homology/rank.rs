//! Exact ranks of sparse integer matrices over `ℚ` or `F_p`.
//!
//! Rows are reduced one at a time against pivots keyed by leading column.
//! Over `ℚ` the elimination is fraction-free: `r ← a·r − b·pivot` followed by
//! division by the content of `r`, first in `i64` with overflow checks and,
//! if any step overflows, again from scratch with `BigInt`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use super::FieldSpec;

/// A sparse matrix stored as rows of `(column, value)` pairs sorted by column.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    ncols: usize,
    rows: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn new(ncols: usize) -> Self {
        SparseMatrix { ncols, rows: Vec::new() }
    }

    /// Appends a row; entries may be given in any order, zeros are dropped.
    pub fn push_row(&mut self, mut entries: Vec<(usize, i64)>) {
        entries.retain(|&(_, v)| v != 0);
        entries.sort_unstable_by_key(|&(c, _)| c);
        debug_assert!(entries.iter().all(|&(c, _)| c < self.ncols));
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        self.rows.push(entries);
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<(usize, i64)>] {
        &self.rows
    }

    /// Reorders rows by `row_perm` (new row `i` is old row `row_perm[i]`) and
    /// relabels column `c` as `col_perm[c]`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> SparseMatrix {
        let mut out = SparseMatrix::new(self.ncols);
        for &r in row_perm {
            out.push_row(self.rows[r].iter().map(|&(c, v)| (col_perm[c], v)).collect());
        }
        out
    }

    pub fn rank(&self, field: FieldSpec) -> usize {
        match field {
            FieldSpec::Rational => rank_integer::<i64>(&self.rows)
                .unwrap_or_else(|| rank_integer::<BigInt>(&self.rows).expect("BigInt elimination cannot overflow")),
            FieldSpec::Prime(p) => rank_mod_p(&self.rows, p),
        }
    }
}

fn rank_mod_p(rows: &[Vec<(usize, i64)>], p: u64) -> usize {
    let reduce = |v: i64| v.rem_euclid(p as i64) as u64;
    let mut pivots: HashMap<usize, Vec<(usize, u64)>> = HashMap::new();
    for row in rows {
        let mut r: Vec<(usize, u64)> = row.iter().map(|&(c, v)| (c, reduce(v))).filter(|&(_, v)| v != 0).collect();
        while let Some(&(lead, val)) = r.first() {
            match pivots.get(&lead) {
                Some(piv) => r = axpy_mod(&r, p - val, piv, p),
                None => {
                    let inv = inverse_mod(val, p);
                    for e in &mut r {
                        e.1 = mul_mod(e.1, inv, p);
                    }
                    pivots.insert(lead, r);
                    break;
                }
            }
        }
    }
    pivots.len()
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inverse_mod(a: u64, p: u64) -> u64 {
    // a^(p-2) by square-and-multiply
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// `r + k·piv (mod p)`.
fn axpy_mod(r: &[(usize, u64)], k: u64, piv: &[(usize, u64)], p: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(r.len() + piv.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < piv.len() {
        let (c, v) = match (r.get(i), piv.get(j)) {
            (Some(&(ci, vi)), Some(&(cj, _))) if ci < cj => {
                i += 1;
                (ci, vi)
            }
            (Some(&(ci, _)), Some(&(cj, vj))) if cj < ci => {
                j += 1;
                (cj, mul_mod(k, vj, p))
            }
            (Some(&(ci, vi)), Some(&(_, vj))) => {
                i += 1;
                j += 1;
                (ci, (vi + mul_mod(k, vj, p)) % p)
            }
            (Some(&(ci, vi)), None) => {
                i += 1;
                (ci, vi)
            }
            (None, Some(&(cj, vj))) => {
                j += 1;
                (cj, mul_mod(k, vj, p))
            }
            (None, None) => unreachable!(),
        };
        if v != 0 {
            out.push((c, v));
        }
    }
    out
}

/// Integer types usable for fraction-free elimination.
trait ExactInt: Clone + Integer + Signed {
    fn from_i64(v: i64) -> Self;
    /// `a·x − b·y`, or `None` on overflow.
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
}

impl ExactInt for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }

    fn cross(a: &i64, x: &i64, b: &i64, y: &i64) -> Option<i64> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
}

impl ExactInt for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    fn cross(a: &BigInt, x: &BigInt, b: &BigInt, y: &BigInt) -> Option<BigInt> {
        Some(a * x - b * y)
    }
}

fn rank_integer<T: ExactInt>(rows: &[Vec<(usize, i64)>]) -> Option<usize> {
    let mut pivots: HashMap<usize, Vec<(usize, T)>> = HashMap::new();
    for row in rows {
        let mut r: Vec<(usize, T)> = row.iter().map(|&(c, v)| (c, T::from_i64(v))).collect();
        loop {
            let Some((lead, val)) = r.first().cloned() else {
                break;
            };
            match pivots.get(&lead) {
                Some(piv) => {
                    let pval = &piv[0].1;
                    let g = pval.gcd(&val);
                    let a = pval.div_floor(&g);
                    let b = val.div_floor(&g);
                    r = cross_rows(&a, &r, &b, piv)?;
                    make_primitive(&mut r);
                }
                None => {
                    pivots.insert(lead, r);
                    break;
                }
            }
        }
    }
    Some(pivots.len())
}

/// `a·r − b·piv`, merged by column.
fn cross_rows<T: ExactInt>(a: &T, r: &[(usize, T)], b: &T, piv: &[(usize, T)]) -> Option<Vec<(usize, T)>> {
    let zero = T::zero();
    let mut out = Vec::with_capacity(r.len() + piv.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < piv.len() {
        let ci = r.get(i).map_or(usize::MAX, |e| e.0);
        let cj = piv.get(j).map_or(usize::MAX, |e| e.0);
        let (c, v) = if ci < cj {
            i += 1;
            (ci, T::cross(a, &r[i - 1].1, b, &zero)?)
        } else if cj < ci {
            j += 1;
            (cj, T::cross(a, &zero, b, &piv[j - 1].1)?)
        } else {
            i += 1;
            j += 1;
            (ci, T::cross(a, &r[i - 1].1, b, &piv[j - 1].1)?)
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    Some(out)
}

fn make_primitive<T: ExactInt>(r: &mut [(usize, T)]) {
    let mut g = T::zero();
    for (_, v) in r.iter() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for (_, v) in r.iter_mut() {
        *v = v.div_floor(&g);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(rows: &[&[i64]]) -> SparseMatrix {
        let mut m = SparseMatrix::new(rows[0].len());
        for r in rows {
            m.push_row(r.iter().enumerate().map(|(c, &v)| (c, v)).collect());
        }
        m
    }

    #[test]
    fn rank_depends_on_characteristic() {
        // det = 2: full rank over Q and F_3, rank 1 over F_2
        let m = dense(&[&[1, 1], &[1, -1]]);
        assert_eq!(m.rank(FieldSpec::Rational), 2);
        assert_eq!(m.rank(FieldSpec::Prime(3)), 2);
        assert_eq!(m.rank(FieldSpec::Prime(2)), 1);
    }

    #[test]
    fn dependent_rows() {
        let m = dense(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1], &[1, 3, 4]]);
        assert_eq!(m.rank(FieldSpec::Rational), 2);
        assert_eq!(m.rank(FieldSpec::Prime(5)), 2);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = 3_037_000_499i64; // squares past i64::MAX
        let m = dense(&[&[big, 1, 0], &[1, big, 1], &[0, 1, big]]);
        assert_eq!(m.rank(FieldSpec::Rational), 3);
        assert!(rank_integer::<i64>(m.rows()).is_none() || rank_integer::<i64>(m.rows()) == Some(3));
    }

    #[test]
    fn inverse_mod_small_primes() {
        for p in [2u64, 3, 5, 7, 101] {
            for a in 1..p {
                assert_eq!(mul_mod(a, inverse_mod(a, p), p), 1);
            }
        }
    }
}
