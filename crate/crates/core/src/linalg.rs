//! Small exact linear algebra over [`Scalar`]: 3-vectors, 3×3 matrices,
//! and null spaces of short wide systems by row reduction.

use crate::field::{FieldSpec, Scalar};

pub type Vec3 = [Scalar; 3];

pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [&a[1] * &b[2] - &a[2] * &b[1], &a[2] * &b[0] - &a[0] * &b[2], &a[0] * &b[1] - &a[1] * &b[0]]
}

pub fn dot(a: &Vec3, b: &Vec3) -> Scalar {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

pub fn scale(s: &Scalar, v: &Vec3) -> Vec3 {
    [s * &v[0], s * &v[1], s * &v[2]]
}

pub fn add(a: &Vec3, b: &Vec3) -> Vec3 {
    [&a[0] + &b[0], &a[1] + &b[1], &a[2] + &b[2]]
}

pub fn sub(a: &Vec3, b: &Vec3) -> Vec3 {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

pub fn is_zero(v: &Vec3) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// `det [a b c]` with the three vectors as rows.
pub fn det_rows(a: &Vec3, b: &Vec3, c: &Vec3) -> Scalar {
    dot(a, &cross(b, c))
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat3(pub [[Scalar; 3]; 3]);

impl Mat3 {
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        Mat3(std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))))
    }

    pub fn identity(field: FieldSpec) -> Self {
        Mat3::diag(&[field.one(), field.one(), field.one()])
    }

    pub fn diag(d: &Vec3) -> Self {
        let zero = d[0].zero_like();
        Mat3::from_fn(|i, j| if i == j { d[i].clone() } else { zero.clone() })
    }

    pub fn from_columns(c: [&Vec3; 3]) -> Self {
        Mat3::from_fn(|i, j| c[j][i].clone())
    }

    pub fn from_ints(field: FieldSpec, rows: [[i64; 3]; 3]) -> Self {
        Mat3::from_fn(|i, j| field.int(rows[i][j]))
    }

    pub fn field(&self) -> FieldSpec {
        self.0[0][0].field()
    }

    pub fn row(&self, i: usize) -> &Vec3 {
        &self.0[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.0[i][j]
    }

    pub fn transpose(&self) -> Self {
        Mat3::from_fn(|i, j| self.0[j][i].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.0[0][1] == self.0[1][0] && self.0[0][2] == self.0[2][0] && self.0[1][2] == self.0[2][1]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(is_zero)
    }

    pub fn mul_vec(&self, v: &Vec3) -> Vec3 {
        std::array::from_fn(|i| dot(&self.0[i], v))
    }

    pub fn mul(&self, rhs: &Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| {
            &(&self.0[i][0] * &rhs.0[0][j] + &self.0[i][1] * &rhs.0[1][j]) + &self.0[i][2] * &rhs.0[2][j]
        })
    }

    pub fn scaled(&self, s: &Scalar) -> Mat3 {
        Mat3::from_fn(|i, j| s * &self.0[i][j])
    }

    pub fn add(&self, rhs: &Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| &self.0[i][j] + &rhs.0[i][j])
    }

    pub fn sub(&self, rhs: &Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| &self.0[i][j] - &rhs.0[i][j])
    }

    /// `vᵀ·M·w`.
    pub fn bilinear(&self, v: &Vec3, w: &Vec3) -> Scalar {
        dot(v, &self.mul_vec(w))
    }

    pub fn det(&self) -> Scalar {
        det_rows(&self.0[0], &self.0[1], &self.0[2])
    }

    /// Classical adjoint: `M·adj(M) = det(M)·I`.
    pub fn adjugate(&self) -> Mat3 {
        let m = &self.0;
        // Column j of adj(M) is the cross product of the two rows other than j.
        let c0 = cross(&m[1], &m[2]);
        let c1 = cross(&m[2], &m[0]);
        let c2 = cross(&m[0], &m[1]);
        Mat3::from_columns([&c0, &c1, &c2])
    }

    pub fn trace(&self) -> Scalar {
        &(&self.0[0][0] + &self.0[1][1]) + &self.0[2][2]
    }

    pub fn rank(&self) -> usize {
        rank(self.0.iter().map(|r| r.to_vec()).collect())
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(rows: &mut [Vec<Scalar>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
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
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&factor * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    rref(&mut rows).len()
}

/// A basis of `{x : A·x = 0}`, one vector per free column.
pub fn kernel(mut rows: Vec<Vec<Scalar>>, field: FieldSpec) -> Vec<Vec<Scalar>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let pivots = rref(&mut rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![field.zero(); ncols];
            v[f] = field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&rows[r][f];
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjugate_identity() {
        let q = FieldSpec::Rationals;
        let m = Mat3::from_ints(q, [[2, -1, 0], [3, 5, 7], [1, 1, -4]]);
        let prod = m.mul(&m.adjugate());
        assert_eq!(prod, Mat3::identity(q).scaled(&m.det()));
    }

    #[test]
    fn kernel_of_rank_deficient_system() {
        let q = FieldSpec::Rationals;
        let rows = vec![vec![q.int(1), q.int(2), q.int(3)], vec![q.int(2), q.int(4), q.int(6)]];
        let k = kernel(rows.clone(), q);
        assert_eq!(k.len(), 2);
        for v in &k {
            for r in &rows {
                let s = r.iter().zip(v).fold(q.zero(), |acc, (a, b)| acc + a * b);
                assert!(s.is_zero());
            }
        }
        assert_eq!(rank(rows), 1);
    }

    #[test]
    fn rank_mod_p() {
        let f = FieldSpec::prime(7).unwrap();
        // Singular mod 7 only: det = 7.
        let m = Mat3::from_ints(f, [[1, 2, 0], [0, 1, 3], [1, 0, 1]]);
        assert_eq!(
            Mat3::from_ints(FieldSpec::Rationals, [[1, 2, 0], [0, 1, 3], [1, 0, 1]]).det(),
            FieldSpec::Rationals.int(7)
        );
        assert_eq!(m.rank(), 2);
    }
}
