//! Dense rank-3 and rank-4 arrays of `f64`, sized for desk-scale dimensions.

use std::ops::{Index, IndexMut};

/// Dense cubic array `t[i][j][k]` with all extents equal to `dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor3 {
    dim: usize,
    data: Vec<f64>,
}

impl Tensor3 {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![0.0; dim * dim * dim],
        }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize, usize) -> f64) -> Self {
        let mut t = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    t[(i, j, k)] = f(i, j, k);
                }
            }
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "tensor dimensions differ");
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    #[inline]
    fn offset(&self, i: usize, j: usize, k: usize) -> usize {
        debug_assert!(i < self.dim && j < self.dim && k < self.dim);
        (i * self.dim + j) * self.dim + k
    }
}

impl Index<(usize, usize, usize)> for Tensor3 {
    type Output = f64;
    #[inline]
    fn index(&self, (i, j, k): (usize, usize, usize)) -> &f64 {
        &self.data[self.offset(i, j, k)]
    }
}

impl IndexMut<(usize, usize, usize)> for Tensor3 {
    #[inline]
    fn index_mut(&mut self, (i, j, k): (usize, usize, usize)) -> &mut f64 {
        let o = self.offset(i, j, k);
        &mut self.data[o]
    }
}

/// Dense quartic array `t[i][j][k][h]` with all extents equal to `dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor4 {
    dim: usize,
    data: Vec<f64>,
}

impl Tensor4 {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![0.0; dim * dim * dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "tensor dimensions differ");
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    #[inline]
    fn offset(&self, i: usize, j: usize, k: usize, h: usize) -> usize {
        debug_assert!(i < self.dim && j < self.dim && k < self.dim && h < self.dim);
        ((i * self.dim + j) * self.dim + k) * self.dim + h
    }
}

impl Index<(usize, usize, usize, usize)> for Tensor4 {
    type Output = f64;
    #[inline]
    fn index(&self, (i, j, k, h): (usize, usize, usize, usize)) -> &f64 {
        &self.data[self.offset(i, j, k, h)]
    }
}

impl IndexMut<(usize, usize, usize, usize)> for Tensor4 {
    #[inline]
    fn index_mut(&mut self, (i, j, k, h): (usize, usize, usize, usize)) -> &mut f64 {
        let o = self.offset(i, j, k, h);
        &mut self.data[o]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indexing_round_trip() {
        let mut t = Tensor3::zeros(3);
        t[(0, 1, 2)] = 4.5;
        t[(2, 2, 2)] = -1.0;
        assert_eq!(t[(0, 1, 2)], 4.5);
        assert_eq!(t[(2, 2, 2)], -1.0);
        assert_eq!(t[(1, 1, 1)], 0.0);
        assert_eq!(t.max_abs(), 4.5);
    }

    #[test]
    fn diff_is_symmetric() {
        let a = Tensor4::zeros(2);
        let mut b = Tensor4::zeros(2);
        b[(1, 0, 1, 0)] = 2.0;
        assert_eq!(a.max_abs_diff(&b), 2.0);
        assert_eq!(b.max_abs_diff(&a), 2.0);
    }
}
