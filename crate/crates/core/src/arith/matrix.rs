use super::{FieldElement, FiniteField};
use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

/// Square matrix over a finite field, acting on row vectors from the right.
#[derive(Clone)]
pub struct FieldMatrix {
    field: Arc<FiniteField>,
    dim: usize,
    entries: Vec<FieldElement>,
}

impl PartialEq for FieldMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.entries == other.entries && *self.field == *other.field
    }
}

impl Eq for FieldMatrix {}

impl FieldMatrix {
    pub fn identity(field: &Arc<FiniteField>, dim: usize) -> Self {
        let mut m = Self::zero(field, dim);
        for i in 0..dim {
            m.entries[i * dim + i] = field.one();
        }
        m
    }

    pub fn zero(field: &Arc<FiniteField>, dim: usize) -> Self {
        Self {
            field: Arc::clone(field),
            dim,
            entries: vec![field.zero(); dim * dim],
        }
    }

    /// Row-major construction.
    pub fn from_rows(field: &Arc<FiniteField>, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::invalid("matrix must be square and nonempty"));
        }
        if rows.iter().flatten().any(|e| e.packed() >= field.order()) {
            return Err(Error::invalid("matrix entry outside the field"));
        }
        Ok(Self {
            field: Arc::clone(field),
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Identity plus `t` in position `(row, col)`, `row != col`.
    pub fn elementary(field: &Arc<FiniteField>, dim: usize, row: usize, col: usize, t: FieldElement) -> Self {
        assert!(row != col && row < dim && col < dim);
        let mut m = Self::identity(field, dim);
        m.entries[row * dim + col] = t;
        m
    }

    pub fn diagonal(field: &Arc<FiniteField>, diag: &[FieldElement]) -> Self {
        let mut m = Self::zero(field, diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.entries[i * diag.len() + i] = d;
        }
        m
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> FieldElement {
        self.entries[row * self.dim + col]
    }

    pub fn rows(&self) -> Vec<Vec<FieldElement>> {
        self.entries.chunks(self.dim).map(<[_]>::to_vec).collect()
    }

    pub fn mul(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.dim, other.dim);
        let k = &self.field;
        let n = self.dim;
        let mut out = Self::zero(k, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = k.zero();
                for t in 0..n {
                    acc = k.add(acc, k.mul(self.get(i, t), other.get(t, j)));
                }
                out.entries[i * n + j] = acc;
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn act(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        let k = &self.field;
        (0..self.dim)
            .map(|j| {
                v.iter()
                    .enumerate()
                    .fold(k.zero(), |acc, (i, &x)| k.add(acc, k.mul(x, self.get(i, j))))
            })
            .collect()
    }

    pub fn determinant(&self) -> FieldElement {
        let k = &self.field;
        let n = self.dim;
        let mut a = self.entries.clone();
        let mut det = k.one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return k.zero();
            };
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                det = k.neg(det);
            }
            let pv = a[col * n + col];
            det = k.mul(det, pv);
            let pinv = k.inv(pv).expect("pivot is nonzero");
            for r in col + 1..n {
                let factor = k.mul(a[r * n + col], pinv);
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    a[r * n + j] = k.sub(a[r * n + j], k.mul(factor, a[col * n + j]));
                }
            }
        }
        det
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.field, self.dim)
    }

    pub fn is_scalar(&self) -> bool {
        let d = self.get(0, 0);
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.get(i, j) == if i == j { d } else { self.field.zero() }))
    }
}

impl fmt::Display for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows().iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_and_action() {
        let k = Arc::new(FiniteField::new(3, 2).unwrap());
        let g = k.primitive_element();
        let z = FieldMatrix::diagonal(&k, &[g, k.inv(g).unwrap()]);
        assert_eq!(z.determinant(), k.one());
        let x = FieldMatrix::elementary(&k, 2, 0, 1, k.one());
        assert_eq!(x.determinant(), k.one());
        assert_eq!(x.act(&[k.one(), k.zero()]), vec![k.one(), k.one()]);
        let prod = x.mul(&z);
        assert_eq!(prod.determinant(), k.one());
        let swap = FieldMatrix::from_rows(&k, vec![vec![k.zero(), k.one()], vec![k.one(), k.zero()]]).unwrap();
        assert_eq!(swap.determinant(), k.neg(k.one()));
        assert!(FieldMatrix::identity(&k, 3).is_scalar());
        assert!(!x.is_scalar());
    }
}
