//! Exact sparse linear algebra over ℚ.
//!
//! Rows are cleared of denominators once and then eliminated over ℤ: each
//! update `r ← p·r − a·pivot` is followed by division by the row content, so
//! entries stay primitive. The pivot is the column with the fewest remaining
//! rows, then the shortest row in it; ties go to the lowest index. Non-pivot
//! variables are set to zero in the returned particular solution.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A sparse system `A·x = b` with rational entries.
#[derive(Debug, Clone, Default)]
pub struct SparseSystem {
    cols: usize,
    rows: Vec<Vec<(usize, BigRational)>>,
    rhs: Vec<BigRational>,
}

impl SparseSystem {
    pub fn new(cols: usize) -> Self {
        SparseSystem {
            cols,
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    /// Appends a row; zero entries are dropped and duplicate columns summed.
    pub fn push_row(
        &mut self,
        entries: impl IntoIterator<Item = (usize, BigRational)>,
        rhs: BigRational,
    ) {
        let mut row: Vec<(usize, BigRational)> = entries.into_iter().collect();
        row.sort_by_key(|(c, _)| *c);
        let mut merged: Vec<(usize, BigRational)> = Vec::with_capacity(row.len());
        for (c, v) in row {
            assert!(c < self.cols, "column {c} out of range");
            match merged.last_mut() {
                Some((last, acc)) if *last == c => *acc += v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|(_, v)| !v.is_zero());
        self.rows.push(merged);
        self.rhs.push(rhs);
    }

    pub fn row(&self, i: usize) -> (&[(usize, BigRational)], &BigRational) {
        (&self.rows[i], &self.rhs[i])
    }

    /// `A·x − b`, row by row.
    pub fn residual(&self, x: &[BigRational]) -> Vec<BigRational> {
        self.rows
            .iter()
            .zip(&self.rhs)
            .map(|(row, b)| row.iter().fold(-b.clone(), |acc, (c, v)| acc + v * &x[*c]))
            .collect()
    }

    /// A particular solution with free variables at zero, or `None` when the
    /// system is inconsistent.
    pub fn solve(&self) -> Option<Vec<BigRational>> {
        let mut elim = Elimination::new(self);
        elim.run(true);
        if elim.inconsistent {
            return None;
        }
        Some(elim.back_substitute())
    }

    /// Exact rank of the coefficient matrix.
    pub fn rank(&self) -> usize {
        let mut elim = Elimination::new(self);
        elim.run(false);
        elim.pivots.len()
    }
}

/// Integer row with the right-hand side stored at column `cols`.
type IntRow = Vec<(usize, BigInt)>;

struct Elimination {
    cols: usize,
    rows: Vec<IntRow>,
    col_rows: Vec<BTreeSet<usize>>,
    pivots: Vec<(usize, usize)>,
    inconsistent: bool,
}

fn primitive(row: &mut IntRow) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

impl Elimination {
    fn new(sys: &SparseSystem) -> Self {
        let cols = sys.cols;
        let mut col_rows = vec![BTreeSet::new(); cols];
        let mut rows = Vec::with_capacity(sys.rows.len());
        let mut inconsistent = false;
        for (i, (row, b)) in sys.rows.iter().zip(&sys.rhs).enumerate() {
            let lcm = row
                .iter()
                .map(|(_, v)| v.denom().clone())
                .chain(std::iter::once(b.denom().clone()))
                .fold(BigInt::one(), |acc, d| acc.lcm(&d));
            let mut int_row: IntRow = row
                .iter()
                .map(|(c, v)| (*c, (v * &lcm).to_integer()))
                .collect();
            if !b.is_zero() {
                int_row.push((cols, (b * &lcm).to_integer()));
            }
            primitive(&mut int_row);
            if int_row.first().is_some_and(|(c, _)| *c == cols) {
                inconsistent = true;
            }
            for (c, _) in &int_row {
                if *c < cols {
                    col_rows[*c].insert(i);
                }
            }
            rows.push(int_row);
        }
        Elimination {
            cols,
            rows,
            col_rows,
            pivots: Vec::new(),
            inconsistent,
        }
    }

    fn row_len(&self, r: usize) -> usize {
        self.rows[r].iter().filter(|(c, _)| *c < self.cols).count()
    }

    fn choose_pivot(&self) -> Option<(usize, usize)> {
        let col = (0..self.cols)
            .filter(|&c| !self.col_rows[c].is_empty())
            .min_by_key(|&c| (self.col_rows[c].len(), c))?;
        let row = self.col_rows[col]
            .iter()
            .copied()
            .min_by_key(|&r| (self.row_len(r), r))?;
        Some((row, col))
    }

    fn run(&mut self, stop_on_inconsistency: bool) {
        while let Some((pr, pc)) = self.choose_pivot() {
            if stop_on_inconsistency && self.inconsistent {
                return;
            }
            for (c, _) in &self.rows[pr] {
                if *c < self.cols {
                    self.col_rows[*c].remove(&pr);
                }
            }
            self.pivots.push((pr, pc));
            let targets: Vec<usize> = std::mem::take(&mut self.col_rows[pc]).into_iter().collect();
            let pivot_row = self.rows[pr].clone();
            let p = pivot_row
                .iter()
                .find(|(c, _)| *c == pc)
                .map(|(_, v)| v.clone())
                .expect("pivot entry present");
            for r in targets {
                let old = std::mem::take(&mut self.rows[r]);
                let a = old
                    .iter()
                    .find(|(c, _)| *c == pc)
                    .map(|(_, v)| v.clone())
                    .expect("column index consistent");
                let g = a.gcd(&p);
                let fr = &p / &g;
                let fp = &a / &g;
                let new = combine(&old, &fr, &pivot_row, &fp);
                for (c, _) in &old {
                    if *c < self.cols && *c != pc {
                        self.col_rows[*c].remove(&r);
                    }
                }
                let mut new = new;
                primitive(&mut new);
                if new.first().is_some_and(|(c, _)| *c == self.cols) {
                    self.inconsistent = true;
                }
                for (c, _) in &new {
                    if *c < self.cols {
                        self.col_rows[*c].insert(r);
                    }
                }
                self.rows[r] = new;
            }
        }
    }

    fn back_substitute(&self) -> Vec<BigRational> {
        let mut x = vec![BigRational::zero(); self.cols];
        for &(pr, pc) in self.pivots.iter().rev() {
            let mut acc = BigRational::zero();
            let mut pivot = BigInt::zero();
            for (c, v) in &self.rows[pr] {
                if *c == self.cols {
                    acc += BigRational::from_integer(v.clone());
                } else if *c == pc {
                    pivot = v.clone();
                } else {
                    acc -= &x[*c] * BigRational::from_integer(v.clone());
                }
            }
            x[pc] = acc / BigRational::from_integer(pivot);
        }
        x
    }
}

/// `fr·row − fp·pivot`, dropping cancellations.
fn combine(row: &IntRow, fr: &BigInt, pivot: &IntRow, fp: &BigInt) -> IntRow {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_pivot = i >= row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        if take_row {
            out.push((row[i].0, &row[i].1 * fr));
            i += 1;
        } else if take_pivot {
            out.push((pivot[j].0, -(&pivot[j].1 * fp)));
            j += 1;
        } else {
            let v = &row[i].1 * fr - &pivot[j].1 * fp;
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    if out.first().is_some_and(|(_, v)| v.is_negative()) {
        for (_, v) in out.iter_mut() {
            *v = -std::mem::take(v);
        }
    }
    out
}
