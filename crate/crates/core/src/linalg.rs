//! Dense linear algebra over a [`Field`].

use crate::field::{Fe, Field};

/// `dst -= c * src`.
#[inline]
pub fn axpy(f: &Field, dst: &mut [Fe], c: Fe, src: &[Fe]) {
    if c.is_zero() {
        return;
    }
    if f.k() == 1 {
        let p = f.p();
        let pc = p - c.0;
        for (d, s) in dst.iter_mut().zip(src) {
            d.0 = (d.0 + pc * s.0) % p;
        }
    } else {
        for (d, s) in dst.iter_mut().zip(src) {
            *d = f.sub_mul(*d, c, *s);
        }
    }
}

/// `dst += c * src`.
#[inline]
pub fn add_scaled(f: &Field, dst: &mut [Fe], c: Fe, src: &[Fe]) {
    axpy(f, dst, f.neg(c), src)
}

pub fn scale_in_place(f: &Field, v: &mut [Fe], c: Fe) {
    for x in v.iter_mut() {
        *x = f.mul(*x, c);
    }
}

pub fn is_zero_vec(v: &[Fe]) -> bool {
    v.iter().all(|c| c.is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Fe>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![Fe::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Fe::ONE);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[Vec<Fe>]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        Matrix { rows: rows.len(), cols, data }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_cols(rows: usize, cols: &[Vec<Fe>]) -> Matrix {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.data[i * self.cols + j] = v;
    }
    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn row_mut(&mut self, i: usize) -> &mut [Fe] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn col(&self, j: usize) -> Vec<Fe> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, f: &Field, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut r = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                let src = other.row(l).to_vec();
                add_scaled(f, r.row_mut(i), a, &src);
            }
        }
        r
    }

    pub fn mul_vec(&self, f: &Field, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Fe::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let c = self.cols;
        let (lo, hi) = (a.min(b), a.max(b));
        let (x, y) = self.data.split_at_mut(hi * c);
        x[lo * c..(lo + 1) * c].swap_with_slice(&mut y[..c]);
    }

    /// In-place reduced row echelon form; returns pivot columns.
    /// Zero rows end up at the bottom.
    pub fn rref(&mut self, f: &Field) -> Vec<usize> {
        let mut pivots = vec![];
        let mut r = 0;
        let c = self.cols;
        for col in 0..c {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| !self.get(i, col).is_zero()) else {
                continue;
            };
            self.swap_rows(r, piv);
            let inv = f.inv(self.get(r, col));
            scale_in_place(f, self.row_mut(r), inv);
            let pivot_row = self.row(r)[col..].to_vec();
            for i in 0..self.rows {
                if i != r {
                    let factor = self.get(i, col);
                    if !factor.is_zero() {
                        axpy(f, &mut self.row_mut(i)[col..], factor, &pivot_row);
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.clone().rref(f).len()
    }

    /// Basis of `{x : A x = 0}`, one vector per free column, in column order.
    pub fn kernel(&self, f: &Field) -> Vec<Vec<Fe>> {
        self.kernel_with_free(f).0
    }

    /// Kernel basis together with its free columns; basis vector `i` is `1` at
    /// `free[i]` and `0` at the other free columns.
    pub fn kernel_with_free(&self, f: &Field) -> (Vec<Vec<Fe>>, Vec<usize>) {
        let mut e = self.clone();
        let pivots = e.rref(f);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = vec![];
        let frees: Vec<usize> = (0..self.cols).filter(|&j| !is_pivot[j]).collect();
        for &free in &frees {
            let mut v = vec![Fe::ZERO; self.cols];
            v[free] = Fe::ONE;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(e.get(i, free));
            }
            basis.push(v);
        }
        (basis, frees)
    }

    /// Some solution of `A x = b`, free variables set to zero.
    pub fn solve(&self, f: &Field, b: &[Fe]) -> Option<Vec<Fe>> {
        Solver::new(f, self).solve(f, b)
    }
}

/// Repeated solves of `A x = b` for one matrix `A`.
#[derive(Clone, Debug)]
pub struct Solver {
    /// `U` with `U A` in reduced echelon form.
    u: Matrix,
    pivots: Vec<usize>,
    cols: usize,
}

impl Solver {
    pub fn new(f: &Field, a: &Matrix) -> Solver {
        let mut aug = Matrix::zeros(a.rows, a.cols + a.rows);
        for i in 0..a.rows {
            aug.row_mut(i)[..a.cols].copy_from_slice(a.row(i));
            aug.set(i, a.cols + i, Fe::ONE);
        }
        let all = aug.rref(f);
        let pivots: Vec<usize> = all.into_iter().filter(|&p| p < a.cols).collect();
        let mut u = Matrix::zeros(a.rows, a.rows);
        for i in 0..a.rows {
            u.row_mut(i).copy_from_slice(&aug.row(i)[a.cols..]);
        }
        Solver { u, pivots, cols: a.cols }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn solve(&self, f: &Field, b: &[Fe]) -> Option<Vec<Fe>> {
        let ub = self.u.mul_vec(f, b);
        if ub[self.pivots.len()..].iter().any(|c| !c.is_zero()) {
            return None;
        }
        let mut x = vec![Fe::ZERO; self.cols];
        for (i, &p) in self.pivots.iter().enumerate() {
            x[p] = ub[i];
        }
        Some(x)
    }
}

/// A subspace of `F^n` held as reduced echelon rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub ambient: usize,
    rows: Vec<Vec<Fe>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Subspace {
        Subspace { ambient, rows: vec![], pivots: vec![] }
    }

    pub fn full(ambient: usize) -> Subspace {
        let rows = (0..ambient)
            .map(|i| {
                let mut v = vec![Fe::ZERO; ambient];
                v[i] = Fe::ONE;
                v
            })
            .collect();
        Subspace { ambient, rows, pivots: (0..ambient).collect() }
    }

    pub fn span(f: &Field, ambient: usize, vecs: &[Vec<Fe>]) -> Subspace {
        let mut m = Matrix::from_rows(ambient, vecs);
        let pivots = m.rref(f);
        let rows = (0..pivots.len()).map(|i| m.row(i).to_vec()).collect();
        Subspace { ambient, rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<Fe>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its projection along the echelon basis.
    pub fn reduce(&self, f: &Field, v: &[Fe]) -> Vec<Fe> {
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = r[p];
            if !c.is_zero() {
                axpy(f, &mut r, c, row);
            }
        }
        r
    }

    pub fn contains(&self, f: &Field, v: &[Fe]) -> bool {
        is_zero_vec(&self.reduce(f, v))
    }

    /// Coordinates of a member in the echelon basis.
    pub fn coords(&self, v: &[Fe]) -> Vec<Fe> {
        self.pivots.iter().map(|&p| v[p]).collect()
    }

    /// Combination of basis rows with the given coordinates.
    pub fn combine(&self, f: &Field, c: &[Fe]) -> Vec<Fe> {
        let mut v = vec![Fe::ZERO; self.ambient];
        for (row, &ci) in self.rows.iter().zip(c) {
            add_scaled(f, &mut v, ci, row);
        }
        v
    }

    /// Adds `v` if independent; returns whether the dimension grew.
    pub fn insert(&mut self, f: &Field, v: &[Fe]) -> bool {
        let mut r = self.reduce(f, v);
        let Some(p) = r.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = f.inv(r[p]);
        scale_in_place(f, &mut r, inv);
        for row in self.rows.iter_mut() {
            let c = row[p];
            if !c.is_zero() {
                axpy(f, row, c, &r);
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.rows.insert(pos, r);
        true
    }

    /// Vectors from `candidates`, in order, that extend `self` to a larger space.
    pub fn independent_of(&self, f: &Field, candidates: &[Vec<Fe>]) -> Vec<Vec<Fe>> {
        let mut acc = self.clone();
        candidates
            .iter()
            .filter(|v| acc.insert(f, v))
            .cloned()
            .collect()
    }

    pub fn is_subspace_of(&self, f: &Field, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(f, r))
    }

    pub fn intersect(&self, f: &Field, other: &Subspace) -> Subspace {
        // solve sum a_i u_i = sum b_j w_j
        let n = self.ambient;
        let cols: Vec<Vec<Fe>> = self
            .rows
            .iter()
            .cloned()
            .chain(other.rows.iter().map(|w| w.iter().map(|&c| f.neg(c)).collect()))
            .collect();
        let m = Matrix::from_cols(n, &cols);
        let vecs: Vec<Vec<Fe>> = m
            .kernel(f)
            .into_iter()
            .map(|k| self.combine(f, &k[..self.dim()]))
            .collect();
        Subspace::span(f, n, &vecs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(f: &Field, rng: &mut ChaCha8Rng, r: usize, c: usize) -> Matrix {
        let mut m = Matrix::zeros(r, c);
        for v in m.data.iter_mut() {
            *v = Fe(rng.gen_range(0..f.size()));
        }
        m
    }

    #[test]
    fn kernel_and_solve() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for f in [make_field(5, 1).unwrap(), make_field(2, 2).unwrap()] {
            for _ in 0..20 {
                let (r, c) = (rng.gen_range(1..7), rng.gen_range(1..7));
                // low-rank product to get nontrivial kernels
                let inner = rng.gen_range(1..4);
                let a = random_matrix(&f, &mut rng, r, inner).mul(&f, &random_matrix(&f, &mut rng, inner, c));
                let ker = a.kernel(&f);
                assert_eq!(ker.len() + a.rank(&f), c);
                for v in &ker {
                    assert!(is_zero_vec(&a.mul_vec(&f, v)));
                }
                let x: Vec<Fe> = (0..c).map(|_| Fe(rng.gen_range(0..f.size()))).collect();
                let b = a.mul_vec(&f, &x);
                let y = a.solve(&f, &b).unwrap();
                assert_eq!(a.mul_vec(&f, &y), b);
            }
        }
    }

    #[test]
    fn subspace_ops() {
        let f = make_field(7, 1).unwrap();
        let v = |xs: &[u64]| xs.iter().map(|&x| Fe(x)).collect::<Vec<_>>();
        let a = Subspace::span(&f, 3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(&f, 3, &[v(&[1, 1, 1]), v(&[0, 1, 0])]);
        let i = a.intersect(&f, &b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&f, &v(&[0, 3, 0])));
        let mut c = a.clone();
        assert!(!c.insert(&f, &v(&[2, 5, 0])));
        assert!(c.insert(&f, &v(&[2, 5, 1])));
        assert_eq!(c, Subspace::full(3));
        assert_eq!(a.coords(&v(&[3, 4, 0])), v(&[3, 4]));
    }
}
