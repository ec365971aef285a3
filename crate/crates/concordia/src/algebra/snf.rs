//! Smith normal form over the integers, used to count solution groups of
//! modular linear systems (nonsingularity of linking forms) and as an
//! independent route to invariant factors.

/// Diagonalizes an integer matrix by row and column operations and returns
/// the diagonal `s_1 | s_2 | …` of its Smith normal form (nonnegative,
/// zeros trailing). The input is consumed as a dense row-major matrix.
pub fn smith_invariants(rows: usize, cols: usize, entries: &[i128]) -> Vec<i128> {
    assert_eq!(entries.len(), rows * cols);
    let mut m: Vec<Vec<i128>> = (0..rows)
        .map(|r| entries[r * cols..(r + 1) * cols].to_vec())
        .collect();

    let dim = rows.min(cols);
    let mut diag = Vec::with_capacity(dim);

    for k in 0..dim {
        loop {
            // Pivot: smallest nonzero absolute value in the trailing block.
            let mut pivot: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if m[i][j] != 0 {
                        let better = match pivot {
                            None => true,
                            Some((pi, pj)) => m[i][j].abs() < m[pi][pj].abs(),
                        };
                        if better {
                            pivot = Some((i, j));
                        }
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                // Trailing block is zero.
                for _ in k..dim {
                    diag.push(0);
                }
                normalize_chain(&mut diag);
                return diag;
            };
            m.swap(k, pi);
            for row in m.iter_mut() {
                row.swap(k, pj);
            }
            if m[k][k] < 0 {
                for j in k..cols {
                    m[k][j] = -m[k][j];
                }
            }

            // Reduce column k below the pivot.
            let mut clean = true;
            for i in k + 1..rows {
                let q = div_round(m[i][k], m[k][k]);
                if q != 0 {
                    for j in k..cols {
                        m[i][j] -= q * m[k][j];
                    }
                }
                if m[i][k] != 0 {
                    clean = false;
                }
            }
            // Reduce row k right of the pivot.
            for j in k + 1..cols {
                let q = div_round(m[k][j], m[k][k]);
                if q != 0 {
                    for i in k..rows {
                        m[i][j] -= q * m[i][k];
                    }
                }
                if m[k][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }

            // Pivot must divide every entry of the trailing block; if not,
            // fold the offending row in and restart this pivot position.
            let p = m[k][k];
            let mut offender = None;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    if m[i][j] % p != 0 {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    for j in k..cols {
                        let add = m[i][j];
                        m[k][j] += add;
                    }
                }
                None => break,
            }
        }
        diag.push(m[k][k]);
    }
    normalize_chain(&mut diag);
    diag
}

fn normalize_chain(diag: &mut [i128]) {
    for d in diag.iter_mut() {
        *d = d.abs();
    }
}

/// Division rounding toward the nearest integer keeps intermediate entries
/// small during elimination.
fn div_round(a: i128, b: i128) -> i128 {
    let q = a / b;
    let r = a - q * b;
    if 2 * r.abs() > b.abs() {
        q + if (r < 0) != (b < 0) { -1 } else { 1 }
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_matrix() {
        let m = [
            -6, 111, -36, 6, //
            5, -672, 210, 74, //
            0, -255, 81, 24, //
            -7, 255, -81, -10,
        ];
        assert_eq!(smith_invariants(4, 4, &m), vec![1, 3, 21, 0]);
    }

    #[test]
    fn diagonal_input() {
        assert_eq!(smith_invariants(2, 2, &[4, 0, 0, 6]), vec![2, 12]);
    }

    #[test]
    fn rectangular_and_zero() {
        assert_eq!(smith_invariants(1, 2, &[24, 25]), vec![1]);
        assert_eq!(smith_invariants(2, 2, &[0, 0, 0, 0]), vec![0, 0]);
    }

    #[test]
    fn divisibility_chain_holds() {
        let m = [2, 4, 4, -6, 6, 12, 10, 4, 16];
        let d = smith_invariants(3, 3, &m);
        for w in d.windows(2) {
            if w[0] != 0 && w[1] != 0 {
                assert_eq!(w[1] % w[0], 0);
            }
        }
    }
}
