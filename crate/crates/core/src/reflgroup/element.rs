//! Group elements: unitary matrices with cached determinant and order.

use crate::exactnum::{CycNum, Matrix};

use super::GroupError;

/// Orders beyond this are treated as infinite.
const MAX_ORDER: u32 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    matrix: Matrix,
    det: CycNum,
    det_exp: u32,
    order: u32,
}

impl GroupElement {
    /// Validates unitarity and finite order.
    pub fn new(matrix: Matrix) -> Result<GroupElement, GroupError> {
        if !matrix.is_square() {
            return Err(GroupError::NotSquare);
        }
        if !matrix.is_unitary() {
            return Err(GroupError::NotUnitary);
        }
        let det = matrix.det().map_err(|e| GroupError::Spec(e.to_string()))?;
        let det_exp = det.root_of_unity_exponent().ok_or(GroupError::NotUnitary)?;
        let mut order = 1;
        let mut p = matrix.clone();
        while !p.is_identity() {
            p = p.mul(&matrix).expect("square");
            order += 1;
            if order > MAX_ORDER {
                return Err(GroupError::InfiniteOrder);
            }
        }
        Ok(GroupElement {
            matrix,
            det,
            det_exp,
            order,
        })
    }

    pub(crate) fn from_parts(matrix: Matrix, det: CycNum, det_exp: u32, order: u32) -> GroupElement {
        GroupElement {
            matrix,
            det,
            det_exp,
            order,
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn det(&self) -> &CycNum {
        &self.det
    }

    /// `det = exp(2 pi i det_exp / N)` with N the number of roots of unity in the field.
    pub fn det_exp(&self) -> u32 {
        self.det_exp
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    /// A reflection fixes a hyperplane pointwise: rank(g - I) = 1.
    pub fn is_reflection(&self) -> bool {
        let id = Matrix::identity(self.matrix.conductor(), self.dim());
        self.matrix.sub(&id).map(|d| d.rank() == 1).unwrap_or(false)
    }
}
