//! Exact rank of sparse integer matrices over `Q` or `F_p`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// Coefficient field, selected by characteristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    pub fn from_characteristic(p: u64) -> Field {
        if p == 0 {
            Field::Rational
        } else {
            Field::Prime(p)
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    /// Rank of the matrix given as sparse rows of `(column, entry)` pairs.
    pub fn rank(self, rows: &[Vec<(usize, i64)>]) -> usize {
        match self {
            Field::Rational => rank_generic(&RationalOps, rows),
            Field::Prime(p) => rank_generic(&PrimeOps { p }, rows),
        }
    }
}

trait FieldOps {
    type E: Clone;
    fn from_i64(&self, v: i64) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    /// `a - f * b`
    fn sub_mul(&self, a: &Self::E, f: &Self::E, b: &Self::E) -> Self::E;
    fn div(&self, a: &Self::E, b: &Self::E) -> Self::E;
}

struct RationalOps;

impl FieldOps for RationalOps {
    type E = BigRational;
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn sub_mul(&self, a: &BigRational, f: &BigRational, b: &BigRational) -> BigRational {
        a - f * b
    }
    fn div(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a / b
    }
}

struct PrimeOps {
    p: u64,
}

impl PrimeOps {
    fn inv(&self, a: u64) -> u64 {
        // Fermat: a^(p-2)
        let mut result = 1u128;
        let mut base = a as u128 % self.p as u128;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % self.p as u128;
            }
            base = base * base % self.p as u128;
            e >>= 1;
        }
        result as u64
    }
}

impl FieldOps for PrimeOps {
    type E = u64;
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn sub_mul(&self, a: &u64, f: &u64, b: &u64) -> u64 {
        let p = self.p as u128;
        let prod = (*f as u128 * *b as u128) % p;
        ((*a as u128 + p - prod) % p) as u64
    }
    fn div(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * self.inv(*b) as u128) % self.p as u128) as u64
    }
}

type SparseRow<E> = Vec<(usize, E)>;

/// Row-by-row elimination against pivot rows keyed by their leading column;
/// each pivot is the first nonzero entry of its row.
fn rank_generic<F: FieldOps>(ops: &F, rows: &[Vec<(usize, i64)>]) -> usize {
    let mut pivots: std::collections::BTreeMap<usize, SparseRow<F::E>> = Default::default();
    for row in rows {
        let mut r: SparseRow<F::E> = {
            let mut sorted: Vec<(usize, i64)> = row.clone();
            sorted.sort_by_key(|e| e.0);
            let mut merged: Vec<(usize, i64)> = Vec::with_capacity(sorted.len());
            for (c, v) in sorted {
                match merged.last_mut() {
                    Some(last) if last.0 == c => last.1 += v,
                    _ => merged.push((c, v)),
                }
            }
            merged
                .into_iter()
                .map(|(c, v)| (c, ops.from_i64(v)))
                .filter(|(_, v)| !ops.is_zero(v))
                .collect()
        };
        loop {
            let Some((lead, lead_val)) = r.first().cloned() else {
                break;
            };
            match pivots.get(&lead) {
                Some(pivot) => {
                    // pivot rows are normalized to a leading 1
                    r = axpy(ops, &r, &lead_val, pivot);
                }
                None => {
                    let normalized = r.iter().map(|(c, v)| (*c, ops.div(v, &lead_val))).collect();
                    pivots.insert(lead, normalized);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// `a - f * b` on sorted sparse rows.
fn axpy<F: FieldOps>(ops: &F, a: &SparseRow<F::E>, f: &F::E, b: &SparseRow<F::E>) -> SparseRow<F::E> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let zero = ops.from_i64(0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        let (col, val) = if take_a {
            let v = a[i].clone();
            i += 1;
            v
        } else if take_b {
            let v = (b[j].0, ops.sub_mul(&zero, f, &b[j].1));
            j += 1;
            v
        } else {
            let v = (a[i].0, ops.sub_mul(&a[i].1, f, &b[j].1));
            i += 1;
            j += 1;
            v
        };
        if !ops.is_zero(&val) {
            out.push((col, val));
        }
    }
    out
}
