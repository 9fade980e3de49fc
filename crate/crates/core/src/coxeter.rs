//! Cartan matrix, Coxeter transformation and Coxeter polynomial.
//!
//! The Coxeter matrix is `Φ = -C^{-T} C`. It acts on classes written in the
//! basis of indecomposable projectives: for a perfect complex `X`, the vector
//! `k(X)` of alternating projective multiplicities satisfies `k(τX) = Φ k(X)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::algebra::NakayamaAlgebra;

pub type IntMatrix = Vec<Vec<i64>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoxeterData {
    pub cartan: IntMatrix,
    pub coxeter_matrix: IntMatrix,
    /// Characteristic polynomial of the Coxeter matrix, constant term first.
    #[serde(serialize_with = "serialize_coefficients")]
    pub polynomial: Vec<BigInt>,
}

fn serialize_coefficients<S: Serializer>(coeffs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    coefficients_json(coeffs).serialize(s)
}

/// Coefficients as JSON numbers, falling back to strings beyond 64 bits.
pub fn coefficients_json(coeffs: &[BigInt]) -> Vec<serde_json::Value> {
    coeffs
        .iter()
        .map(|c| match c.to_i64() {
            Some(v) => serde_json::Value::from(v),
            None => serde_json::Value::from(c.to_string()),
        })
        .collect()
}

/// `C_ij = 1` iff `P_i` has a composition factor `S_j`.
pub fn cartan(a: &NakayamaAlgebra) -> IntMatrix {
    let n = a.n();
    (1..=n)
        .map(|i| (1..=n).map(|j| i64::from(a.path_nonzero(i, j))).collect())
        .collect()
}

/// Inverse of an upper unitriangular integer matrix by back substitution.
fn unitriangular_inverse(c: &IntMatrix) -> IntMatrix {
    let n = c.len();
    let mut inv = vec![vec![0i64; n]; n];
    for col in 0..n {
        for row in (0..=col).rev() {
            let mut v = i64::from(row == col);
            for k in row + 1..=col {
                v -= c[row][k] * inv[k][col];
            }
            inv[row][col] = v;
        }
    }
    inv
}

pub fn coxeter_matrix(a: &NakayamaAlgebra) -> IntMatrix {
    let c = cartan(a);
    let inv = unitriangular_inverse(&c);
    let n = c.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| -(0..n).map(|k| inv[k][i] * c[k][j]).sum::<i64>())
                .collect()
        })
        .collect()
}

pub fn apply(m: &IntMatrix, v: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Characteristic polynomial `det(T·I - M)` by Berkowitz's division-free
/// algorithm, constant term first.
pub fn characteristic_polynomial(m: &IntMatrix) -> Vec<BigInt> {
    let n = m.len();
    let a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    // Coefficients, leading first, of the characteristic polynomial of the
    // leading principal submatrix processed so far.
    let mut poly = vec![BigInt::one()];
    for r in 0..n {
        // Toeplitz column for step r: 1, -a_rr, -R·C, -R·A·C, ...
        let row: Vec<BigInt> = (0..r).map(|j| a[r][j].clone()).collect();
        let mut col: Vec<BigInt> = (0..r).map(|i| a[i][r].clone()).collect();
        let mut t = Vec::with_capacity(r + 2);
        t.push(BigInt::one());
        t.push(-a[r][r].clone());
        for _ in 0..r {
            let dot: BigInt = row.iter().zip(&col).map(|(x, y)| x * y).sum();
            t.push(-dot);
            col = (0..r)
                .map(|i| (0..r).map(|j| &a[i][j] * &col[j]).sum())
                .collect();
        }
        let mut next = vec![BigInt::zero(); r + 2];
        for (i, ti) in t.iter().enumerate() {
            for (j, pj) in poly.iter().enumerate() {
                if i + j < r + 2 {
                    next[i + j] += ti * pj;
                }
            }
        }
        poly = next;
    }
    poly.reverse();
    poly
}

pub fn coxeter(a: &NakayamaAlgebra) -> CoxeterData {
    let cartan = cartan(a);
    let coxeter_matrix = coxeter_matrix(a);
    let polynomial = characteristic_polynomial(&coxeter_matrix);
    CoxeterData {
        cartan,
        coxeter_matrix,
        polynomial,
    }
}

/// Whether `T^n χ(1/T) = ±χ(T)`.
pub fn is_self_reciprocal(poly: &[BigInt]) -> bool {
    let rev: Vec<BigInt> = poly.iter().rev().cloned().collect();
    rev == poly || rev.iter().zip(poly).all(|(a, b)| a == &-b)
}

pub fn format_polynomial(poly: &[BigInt]) -> String {
    let mut out = String::new();
    for (deg, c) in poly.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let sign = if c.is_negative() { "-" } else { "+" };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        let coeff = if mag.is_one() && deg > 0 {
            String::new()
        } else {
            mag.to_string()
        };
        match deg {
            0 => out.push_str(&coeff),
            1 => out.push_str(&format!("{coeff}T")),
            _ => out.push_str(&format!("{coeff}T^{deg}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn a2_by_hand() {
        let a = NakayamaAlgebra::hereditary(2).unwrap();
        let d = coxeter(&a);
        assert_eq!(d.cartan, vec![vec![1, 1], vec![0, 1]]);
        assert_eq!(d.coxeter_matrix, vec![vec![-1, -1], vec![1, 0]]);
        assert_eq!(d.polynomial, ints(&[1, 1, 1]));
    }

    #[test]
    fn berkowitz_matches_known_polynomials() {
        // det(T - diag(2,3)) = T^2 - 5T + 6
        assert_eq!(
            characteristic_polynomial(&vec![vec![2, 0], vec![0, 3]]),
            ints(&[6, -5, 1])
        );
        // companion matrix of T^3 - 2T + 5
        let m = vec![vec![0, 0, -5], vec![1, 0, 2], vec![0, 1, 0]];
        assert_eq!(characteristic_polynomial(&m), ints(&[5, -2, 0, 1]));
        assert_eq!(characteristic_polynomial(&vec![]), ints(&[1]));
    }

    #[test]
    fn formatting() {
        assert_eq!(
            format_polynomial(&ints(&[1, 1, 0, 0, 0, 0, 0, 0, 0, 1, 1])),
            "T^10 + T^9 + T + 1"
        );
        assert_eq!(format_polynomial(&ints(&[-2, 0, 1])), "T^2 - 2");
    }

    #[test]
    fn reciprocity_check() {
        assert!(is_self_reciprocal(&ints(&[1, 1, 1])));
        assert!(is_self_reciprocal(&ints(&[-1, 0, 1])));
        assert!(!is_self_reciprocal(&ints(&[2, 1, 1])));
    }
}
