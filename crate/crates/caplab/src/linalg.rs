//! Exact integer matrix routines: Hermite and Smith normal forms, kernels.
//!
//! Everything here works over `i128`. The lattices that show up in this
//! crate are sandwiched between `diag(p^e)·Z^k` and `Z^k` for small `k`,
//! so entries stay tiny; arithmetic is checked so an overflow would panic
//! loudly instead of corrupting a canonical form.

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i128>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i128>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        Mat { rows: r, cols: c, data }
    }

    pub fn row(&self, i: usize) -> &[i128] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// row[a] -= q * row[b]
    fn sub_scaled_row(&mut self, a: usize, b: usize, q: i128) {
        if q == 0 {
            return;
        }
        for j in 0..self.cols {
            let t = q
                .checked_mul(self.data[b * self.cols + j])
                .and_then(|x| self.data[a * self.cols + j].checked_sub(x))
                .expect("integer overflow in row reduction");
            self.data[a * self.cols + j] = t;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            self.data[a * self.cols + j] = -self.data[a * self.cols + j];
        }
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = i128;
    fn index(&self, (i, j): (usize, usize)) -> &i128 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i128 {
        &mut self.data[i * self.cols + j]
    }
}

/// Row-style Hermite normal form.
///
/// After the call the nonzero rows of `m` are in echelon order with
/// positive pivots and every entry above a pivot reduced into
/// `[0, pivot)`. When `transform` is given it receives the same row
/// operations, so `U * M_in = M_out` with `U` unimodular.
pub(crate) fn hnf_in_place(m: &mut Mat, mut transform: Option<&mut Mat>) {
    let mut pivot_row = 0;
    for col in 0..m.cols {
        if pivot_row == m.rows {
            break;
        }
        // euclidean elimination below the pivot
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..m.rows {
                let v = m[(i, col)];
                if v != 0 {
                    best = match best {
                        Some(b) if m[(b, col)].abs() <= v.abs() => Some(b),
                        _ => Some(i),
                    };
                }
            }
            let Some(b) = best else { break };
            m.swap_rows(pivot_row, b);
            if let Some(t) = transform.as_deref_mut() {
                t.swap_rows(pivot_row, b);
            }
            let mut dirty = false;
            let pivot = m[(pivot_row, col)];
            for i in pivot_row + 1..m.rows {
                let v = m[(i, col)];
                if v != 0 {
                    let q = v.div_euclid(pivot);
                    m.sub_scaled_row(i, pivot_row, q);
                    if let Some(t) = transform.as_deref_mut() {
                        t.sub_scaled_row(i, pivot_row, q);
                    }
                    if m[(i, col)] != 0 {
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
        }
        if m[(pivot_row, col)] == 0 {
            continue;
        }
        if m[(pivot_row, col)] < 0 {
            m.negate_row(pivot_row);
            if let Some(t) = transform.as_deref_mut() {
                t.negate_row(pivot_row);
            }
        }
        // reduce entries above the pivot into [0, pivot)
        let pivot = m[(pivot_row, col)];
        for i in 0..pivot_row {
            let q = m[(i, col)].div_euclid(pivot);
            m.sub_scaled_row(i, pivot_row, q);
            if let Some(t) = transform.as_deref_mut() {
                t.sub_scaled_row(i, pivot_row, q);
            }
        }
        pivot_row += 1;
    }
}

/// Basis of the left kernel `{ x : x * M = 0 }` as rows.
pub(crate) fn left_kernel(m: &Mat) -> Vec<Vec<i128>> {
    let mut h = m.clone();
    let mut u = Mat::identity(m.rows);
    hnf_in_place(&mut h, Some(&mut u));
    let mut out = Vec::new();
    for i in 0..h.rows {
        if h.row(i).iter().all(|&v| v == 0) {
            out.push(u.row(i).to_vec());
        }
    }
    out
}

/// Expresses `v` as an integer combination of the rows of a full-rank
/// upper-triangular matrix (an HNF basis). Returns the coefficients,
/// or `None` when `v` is not in the row lattice.
pub(crate) fn solve_upper_triangular(h: &Mat, v: &[i128]) -> Option<Vec<i128>> {
    debug_assert_eq!(h.rows, h.cols);
    let n = h.rows;
    let mut rem = v.to_vec();
    let mut coeffs = vec![0i128; n];
    for i in 0..n {
        let d = h[(i, i)];
        debug_assert!(d > 0);
        if rem[i].rem_euclid(d) != 0 {
            return None;
        }
        let c = rem[i].div_euclid(d);
        coeffs[i] = c;
        if c != 0 {
            for j in i..n {
                rem[j] = rem[j]
                    .checked_sub(c.checked_mul(h[(i, j)]).expect("overflow"))
                    .expect("overflow");
            }
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    Some(coeffs)
}

/// Smith normal form with transforms: returns `(diag, u, v)` with
/// `u * M * v = diag(d)` and `d[0] | d[1] | ...` (nonnegative).
pub(crate) fn smith_with_transforms(m: &Mat) -> (Vec<i128>, Mat, Mat) {
    let mut a = m.clone();
    let mut u = Mat::identity(a.rows);
    let mut v = Mat::identity(a.cols);
    let n = a.rows.min(a.cols);
    for k in 0..n {
        loop {
            // pick the entry of least absolute value in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in k..a.rows {
                for j in k..a.cols {
                    let w = a[(i, j)];
                    if w != 0 {
                        best = match best {
                            Some(b) if a[b].abs() <= w.abs() => Some(b),
                            _ => Some((i, j)),
                        };
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            a.swap_rows(k, bi);
            u.swap_rows(k, bi);
            swap_cols(&mut a, k, bj);
            swap_cols(&mut v, k, bj);
            let mut dirty = false;
            let pivot = a[(k, k)];
            for i in k + 1..a.rows {
                if a[(i, k)] != 0 {
                    let q = a[(i, k)].div_euclid(pivot);
                    a.sub_scaled_row(i, k, q);
                    u.sub_scaled_row(i, k, q);
                    if a[(i, k)] != 0 {
                        dirty = true;
                    }
                }
            }
            for j in k + 1..a.cols {
                if a[(k, j)] != 0 {
                    let q = a[(k, j)].div_euclid(pivot);
                    sub_scaled_col(&mut a, j, k, q);
                    sub_scaled_col(&mut v, j, k, q);
                    if a[(k, j)] != 0 {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // divisibility sweep: pivot must divide the trailing block
            let pivot = a[(k, k)];
            let mut fixed = true;
            'outer: for i in k + 1..a.rows {
                for j in k + 1..a.cols {
                    if a[(i, j)] % pivot != 0 {
                        // fold the offending row into row k and retry
                        a.sub_scaled_row(k, i, -1);
                        u.sub_scaled_row(k, i, -1);
                        fixed = false;
                        break 'outer;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if a[(k, k)] < 0 {
            a.negate_row(k);
            u.negate_row(k);
        }
    }
    let diag = (0..n).map(|k| a[(k, k)]).collect();
    (diag, u, v)
}

fn swap_cols(m: &mut Mat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.rows {
        m.data.swap(i * m.cols + a, i * m.cols + b);
    }
}

/// col[a] -= q * col[b]
fn sub_scaled_col(m: &mut Mat, a: usize, b: usize, q: i128) {
    if q == 0 {
        return;
    }
    for i in 0..m.rows {
        let t = q
            .checked_mul(m.data[i * m.cols + b])
            .and_then(|x| m.data[i * m.cols + a].checked_sub(x))
            .expect("integer overflow in column reduction");
        m.data[i * m.cols + a] = t;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_of_simple_lattice() {
        // (4,4) - 2(2,1) = (0,2), and gcd with (0,3) yields (0,1)
        let mut m = Mat::from_rows(&[vec![2, 1], vec![0, 3], vec![4, 4]]);
        hnf_in_place(&mut m, None);
        assert_eq!(m.row(0), &[2, 0]);
        assert_eq!(m.row(1), &[0, 1]);
        assert_eq!(m.row(2), &[0, 0]);
    }

    #[test]
    fn hnf_reduces_above_pivot() {
        let mut m = Mat::from_rows(&[vec![1, 5], vec![0, 3]]);
        hnf_in_place(&mut m, None);
        assert_eq!(m.row(0), &[1, 2]);
        assert_eq!(m.row(1), &[0, 3]);
    }

    #[test]
    fn transform_tracks_row_ops() {
        let orig = Mat::from_rows(&[vec![6, 4], vec![4, 8], vec![2, 2]]);
        let mut m = orig.clone();
        let mut u = Mat::identity(3);
        hnf_in_place(&mut m, Some(&mut u));
        // check U * orig == m
        for i in 0..3 {
            for j in 0..2 {
                let mut s = 0i128;
                for t in 0..3 {
                    s += u[(i, t)] * orig[(t, j)];
                }
                assert_eq!(s, m[(i, j)]);
            }
        }
    }

    #[test]
    fn kernel_of_rank_deficient() {
        let m = Mat::from_rows(&[vec![1, 2], vec![2, 4], vec![0, 1]]);
        let ker = left_kernel(&m);
        assert_eq!(ker.len(), 1);
        let k = &ker[0];
        for col in 0..m.cols {
            let dot: i128 = (0..m.rows).map(|r| k[r] * m[(r, col)]).sum();
            assert_eq!(dot, 0);
        }
    }

    #[test]
    fn triangular_solve() {
        let h = Mat::from_rows(&[vec![2, 1], vec![0, 3]]);
        assert_eq!(solve_upper_triangular(&h, &[4, 5]).unwrap(), vec![2, 1]);
        assert_eq!(solve_upper_triangular(&h, &[1, 0]), None);
    }

    #[test]
    fn smith_divisibility_chain() {
        let m = Mat::from_rows(&[vec![2, 0], vec![0, 6]]);
        let (d, _, _) = smith_with_transforms(&m);
        assert_eq!(d, vec![2, 6]);

        let m = Mat::from_rows(&[vec![4, 2], vec![2, 4]]);
        let (d, u, v) = smith_with_transforms(&m);
        assert_eq!(d[0], 2);
        assert_eq!(d[1], 6);
        // u * m * v == diag(d)
        let mut prod = Mat::zero(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                let mut s = 0;
                for a in 0..2 {
                    for b in 0..2 {
                        s += u[(i, a)] * m[(a, b)] * v[(b, j)];
                    }
                }
                prod[(i, j)] = s;
            }
        }
        assert_eq!(prod[(0, 0)], d[0]);
        assert_eq!(prod[(1, 1)], d[1]);
        assert_eq!(prod[(0, 1)], 0);
        assert_eq!(prod[(1, 0)], 0);
    }
}
