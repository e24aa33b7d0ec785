//! Exact linear algebra over the rationals.
//!
//! Dense row reduction for the small systems (nullspaces, affine solves,
//! inverses) and an incremental sparse echelon form for span and rank
//! questions in the large PBW coordinate spaces.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// Dense row-major matrix.
pub type Matrix = Vec<Vec<Rational>>;

/// Sparse vector keyed by coordinate index; never stores zeros.
pub type SparseVec = BTreeMap<usize, Rational>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p`, `-p` or `p/q` with integer `p`, nonzero `q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// `p` for integers, `p/q` otherwise.
pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn zero_vec(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vec<Rational> {
    let mut v = zero_vec(n);
    v[i] = Rational::one();
    v
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| unit_vec(n, i)).collect()
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn mat_vec(m: &Matrix, v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter()
                        .enumerate()
                        .filter(|(k, x)| !x.is_zero() && !b[*k][j].is_zero())
                        .fold(Rational::zero(), |acc, (k, x)| acc + x * &b[k][j])
                })
                .collect()
        })
        .collect()
}

pub fn transpose(m: &Matrix, cols: usize) -> Matrix {
    (0..cols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Gauss-Jordan elimination on the first `ncols` columns, keeping every row.
/// Rows `0..pivots.len()` carry the pivots; the rest have a zero coefficient
/// part. Trailing columns ride along.
fn eliminate(rows: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Reduces `rows` in place to reduced row echelon form over the first
/// `ncols` columns, drops the non-pivot rows and returns the pivot columns.
pub fn rref_partial(rows: &mut Vec<Vec<Rational>>, ncols: usize) -> Vec<usize> {
    let pivots = eliminate(rows, ncols);
    rows.truncate(pivots.len());
    pivots
}

pub fn rref(rows: &mut Vec<Vec<Rational>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    rref_partial(rows, ncols)
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{x : A x = 0}` for `A` with `ncols` columns, one vector per free
/// column with that column set to one.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let pivots = rref_partial(&mut m, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = unit_vec(ncols, f);
            for (row, &p) in m.iter().zip(&pivots) {
                if !row[f].is_zero() {
                    v[p] = -row[f].clone();
                }
            }
            v
        })
        .collect()
}

/// Canonical basis of the span of `vectors`: reduced row echelon form.
pub fn echelon_basis(vectors: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut m = vectors.to_vec();
    rref(&mut m);
    m
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(unit_vec(n, i));
            r
        })
        .collect();
    let pivots = rref_partial(&mut aug, n);
    if pivots.len() != n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Outcome of an affine solve `A x = b`.
#[derive(Debug, Clone, PartialEq)]
pub enum AffineSolution {
    /// A particular solution (free variables set to zero) and a basis of the
    /// homogeneous solutions.
    Feasible { particular: Vec<Rational>, kernel: Vec<Vec<Rational>> },
    /// Multipliers `y` with `yᵀA = 0` and `yᵀb ≠ 0`: summing the equations
    /// with these weights yields `0 = yᵀb`.
    Infeasible { multipliers: Vec<Rational>, residual: Rational },
}

pub fn solve_affine(a: &[Vec<Rational>], b: &[Rational], ncols: usize) -> AffineSolution {
    let m = a.len();
    // [A | b | I]: the identity block records which combination of the
    // original equations produced each reduced row.
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(i, (row, bi))| {
            let mut r = row.clone();
            r.push(bi.clone());
            r.extend(unit_vec(m, i));
            r
        })
        .collect();
    let pivots = eliminate(&mut aug, ncols);
    let rank = pivots.len();
    if let Some(bad) = aug[rank..].iter().find(|row| !row[ncols].is_zero()) {
        return AffineSolution::Infeasible { multipliers: bad[ncols + 1..].to_vec(), residual: bad[ncols].clone() };
    }
    let mut particular = zero_vec(ncols);
    for (row, &p) in aug.iter().zip(&pivots) {
        particular[p] = row[ncols].clone();
    }
    AffineSolution::Feasible { particular, kernel: nullspace(a, ncols) }
}

/// Incrementally maintained echelon basis of a subspace, with sparse rows
/// normalized so each pivot coefficient is one.
#[derive(Debug, Clone, Default)]
pub struct EchelonSpace {
    rows: BTreeMap<usize, SparseVec>,
}

impl EchelonSpace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after elimination against the current basis.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut cursor = 0;
        loop {
            let next = v.range(cursor..).map(|(k, _)| *k).find(|k| self.rows.contains_key(k));
            let Some(k) = next else { break };
            let f = v.remove(&k).expect("key present");
            for (j, x) in self.rows[&k].iter().skip(1) {
                let e = v.entry(*j).or_insert_with(Rational::zero);
                *e -= &f * x;
                if e.is_zero() {
                    v.remove(j);
                }
            }
            cursor = k + 1;
        }
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Adds `v` to the spanning set; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((&p, lead)) = r.iter().next() else {
            return false;
        };
        let inv = lead.recip();
        let row: SparseVec = r.into_iter().map(|(k, x)| (k, x * &inv)).collect();
        self.rows.insert(p, row);
        true
    }
}

/// Sparse view of a dense vector.
pub fn to_sparse(v: &[Rational]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn abs_max(v: &[Rational]) -> Rational {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/6"), Some(ratio(1, 2)));
        assert_eq!(parse_rational("-4"), Some(rat(-4)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(format_rational(&ratio(-2, 4)), "-1/2");
        assert_eq!(format_rational(&rat(7)), "7");
    }

    #[test]
    fn nullspace_of_rank_one() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(is_zero_vec(&mat_vec(&a, v)));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(2));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn affine_certificate() {
        // x + y = 1, x + y = 2
        let a = m(&[&[1, 1], &[1, 1]]);
        match solve_affine(&a, &[rat(1), rat(2)], 2) {
            AffineSolution::Infeasible { multipliers, residual } => {
                let combo: Vec<Rational> = (0..2)
                    .map(|j| multipliers.iter().zip(&a).fold(Rational::zero(), |acc, (y, row)| acc + y * &row[j]))
                    .collect();
                assert!(is_zero_vec(&combo));
                let rhs = &multipliers[0] * rat(1) + &multipliers[1] * rat(2);
                assert_eq!(rhs, residual);
                assert!(!residual.is_zero());
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
        match solve_affine(&a, &[rat(1), rat(1)], 2) {
            AffineSolution::Feasible { particular, kernel } => {
                assert_eq!(mat_vec(&a, &particular), vec![rat(1), rat(1)]);
                assert_eq!(kernel.len(), 1);
            }
            other => panic!("expected feasible, got {other:?}"),
        }
    }

    #[test]
    fn echelon_space_rank() {
        let mut s = EchelonSpace::new();
        assert!(s.insert(to_sparse(&[rat(1), rat(1), rat(0)])));
        assert!(s.insert(to_sparse(&[rat(0), rat(1), rat(1)])));
        assert!(!s.insert(to_sparse(&[rat(1), rat(2), rat(1)])));
        assert!(s.contains(&to_sparse(&[rat(2), rat(0), rat(-2)])));
        assert_eq!(s.rank(), 2);
    }
}
