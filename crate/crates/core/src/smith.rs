//! Smith normal form of integer matrices by exact row and column reduction.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Entries whose magnitude exceeds this bound abort the reduction.
pub const DEFAULT_MAGNITUDE_GUARD: i64 = 1 << 48;

/// Invariant factors of an integer matrix.
///
/// `diagonal` has one entry per column: the invariant factors
/// `d₁ | d₂ | …` followed by zeros. Read as the abelian group presented by
/// the matrix rows as relations on the columns, this is
/// `Z^rank_free ⊕ Z/t₁ ⊕ …` over the `torsion` entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmithResult {
    pub diagonal: Vec<i64>,
    pub rank_free: usize,
    pub torsion: Vec<i64>,
}

impl fmt::Display for SmithResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.rank_free > 0 {
            parts.push(format!("Z^{}", self.rank_free));
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" (+) "))
        }
    }
}

/// The Smith form together with the column transform `V` such that
/// `U · M · V = D` for some unimodular `U`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub result: SmithResult,
    rank: usize,
    col_transform: Vec<Vec<i64>>,
}

impl SmithDecomposition {
    /// Whether the integer row vector `d` lies in the row lattice of the
    /// decomposed matrix.
    pub fn row_lattice_contains(&self, d: &[i64]) -> Result<bool> {
        let n = self.col_transform.len();
        if d.len() != n {
            return Err(Error::Shape(format!("vector of length {} for {n} columns", d.len())));
        }
        for j in 0..n {
            let mut w: i64 = 0;
            for (i, &di) in d.iter().enumerate() {
                let term = di.checked_mul(self.col_transform[i][j]).ok_or(Error::OverflowGuard)?;
                w = w.checked_add(term).ok_or(Error::OverflowGuard)?;
            }
            let ok = if j < self.rank {
                w % self.result.diagonal[j] == 0
            } else {
                w == 0
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn smith_normal_form(m: &[Vec<i64>], ncols: usize) -> Result<SmithResult> {
    Ok(smith_decompose(m, ncols, DEFAULT_MAGNITUDE_GUARD)?.result)
}

/// Reduces the `rows × ncols` matrix `m`. `ncols` is explicit so that a
/// matrix with no rows still has a width.
pub fn smith_decompose(m: &[Vec<i64>], ncols: usize, guard: i64) -> Result<SmithDecomposition> {
    let mut a: Vec<Vec<i64>> = m.to_vec();
    for row in &a {
        if row.len() != ncols {
            return Err(Error::Shape(format!("row of length {} in a {ncols}-column matrix", row.len())));
        }
        if row.iter().any(|v| v.unsigned_abs() > guard.unsigned_abs()) {
            return Err(Error::OverflowGuard);
        }
    }
    let rows = a.len();
    let mut v: Vec<Vec<i64>> = (0..ncols)
        .map(|i| (0..ncols).map(|j| i64::from(i == j)).collect())
        .collect();

    let check = |x: i64| -> Result<i64> {
        if x.unsigned_abs() > guard.unsigned_abs() {
            Err(Error::OverflowGuard)
        } else {
            Ok(x)
        }
    };

    let mut t = 0;
    while t < rows.min(ncols) {
        // Pivot: smallest nonzero magnitude in the trailing block.
        let mut pivot = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 && pivot.is_none_or(|(_, _, best): (usize, usize, i64)| x.abs() < best) {
                    pivot = Some((i, j, x.abs()));
                }
            }
        }
        let Some((pi, pj, _)) = pivot else { break };
        a.swap(t, pi);
        swap_cols(&mut a, &mut v, t, pj);

        loop {
            let mut dirty = false;
            // Clear column t below the pivot.
            for i in t + 1..rows {
                if a[i][t] == 0 {
                    continue;
                }
                let q = a[i][t].div_euclid(a[t][t]);
                for j in t..ncols {
                    let val = a[i][j].checked_sub(q.checked_mul(a[t][j]).ok_or(Error::OverflowGuard)?);
                    a[i][j] = check(val.ok_or(Error::OverflowGuard)?)?;
                }
                if a[i][t] != 0 {
                    a.swap(t, i);
                    dirty = true;
                }
            }
            // Clear row t right of the pivot.
            for j in t + 1..ncols {
                if a[t][j] == 0 {
                    continue;
                }
                let q = a[t][j].div_euclid(a[t][t]);
                add_col_multiple(&mut a, &mut v, j, t, -q, guard)?;
                if a[t][j] != 0 {
                    swap_cols(&mut a, &mut v, t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Pivot must divide the trailing block.
            let p = a[t][t];
            let bad = (t + 1..rows).find(|&i| (t + 1..ncols).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    for j in t..ncols {
                        let val = a[t][j].checked_add(a[i][j]).ok_or(Error::OverflowGuard)?;
                        a[t][j] = check(val)?;
                    }
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for j in t..ncols {
                a[t][j] = -a[t][j];
            }
        }
        t += 1;
    }

    let rank = t;
    let diagonal: Vec<i64> = (0..ncols).map(|i| if i < rank { a[i][i] } else { 0 }).collect();
    // each pivot divides the whole trailing block it leaves behind
    debug_assert!(diagonal[..rank].windows(2).all(|w| w[1] % w[0] == 0));
    let torsion = diagonal[..rank].iter().copied().filter(|&d| d > 1).collect();
    Ok(SmithDecomposition {
        result: SmithResult {
            diagonal,
            rank_free: ncols - rank,
            torsion,
        },
        rank,
        col_transform: v,
    })
}

fn swap_cols(a: &mut [Vec<i64>], v: &mut [Vec<i64>], i: usize, j: usize) {
    if i == j {
        return;
    }
    for row in a.iter_mut().chain(v.iter_mut()) {
        row.swap(i, j);
    }
}

/// `col[dst] += k · col[src]` on both the matrix and the column transform.
fn add_col_multiple(
    a: &mut [Vec<i64>],
    v: &mut [Vec<i64>],
    dst: usize,
    src: usize,
    k: i64,
    guard: i64,
) -> Result<()> {
    for row in a.iter_mut().chain(v.iter_mut()) {
        let val = row[dst]
            .checked_add(k.checked_mul(row[src]).ok_or(Error::OverflowGuard)?)
            .ok_or(Error::OverflowGuard)?;
        if val.unsigned_abs() > guard.unsigned_abs() {
            return Err(Error::OverflowGuard);
        }
        row[dst] = val;
    }
    Ok(())
}
