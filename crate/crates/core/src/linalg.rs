//! Kernel and echelon computations over any scalar context: exact
//! Gaussian elimination for the symbolic path, SVD-based numerical kernels
//! for the specialized path.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::groebner::MonomialOrder;
use crate::polyring::Monomial;
use crate::scalars::{FieldContext, Scalar};

/// Dense matrix with row labels (display strings) and column labels
/// (∂-monomials sorted strictly increasing under the active order).
#[derive(Clone, Debug)]
pub struct LabeledMatrix {
    pub ctx: FieldContext,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<Monomial>,
    pub entries: Vec<Vec<Scalar>>,
}

impl LabeledMatrix {
    pub fn nrows(&self) -> usize {
        self.entries.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn entry(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r][c]
    }

    /// Convert to a complex matrix; entries must already be complex.
    fn to_complex(&self) -> Result<DMatrix<Complex64>> {
        let (m, n) = (self.nrows(), self.ncols());
        let mut data = Vec::with_capacity(m * n);
        for row in &self.entries {
            for e in row {
                match e {
                    Scalar::Complex(z) => data.push(*z),
                    _ => {
                        return Err(Error::ContextMismatch(
                            "numeric kernel requires complex entries".into(),
                        ))
                    }
                }
            }
        }
        Ok(DMatrix::from_row_slice(m, n, &data))
    }
}

/// A basis of the right null space, stored as coefficient vectors indexed
/// by the matrix's column labels.
#[derive(Clone, Debug)]
pub struct KernelBasis {
    pub ctx: FieldContext,
    pub col_labels: Vec<Monomial>,
    pub vectors: Vec<Vec<Scalar>>,
    pub echelon: bool,
}

impl KernelBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

/// Exact right null space via Gaussian elimination; pivoting scans rows
/// top-down for the first nonzero entry, so the result is deterministic
/// given the column order.
pub fn exact_kernel(matrix: &LabeledMatrix) -> Result<KernelBasis> {
    if !matrix.ctx.is_exact() {
        return Err(Error::ContextMismatch(
            "exact kernel requires an exact context".into(),
        ));
    }
    let m = matrix.nrows();
    let n = matrix.ncols();
    let mut a: Vec<Vec<Scalar>> = matrix.entries.clone();
    // row-reduce: for each column left to right, find an unused row with a
    // nonzero entry, normalize it, eliminate the column elsewhere
    let mut pivot_row_of_col: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; m];
    for col in 0..n {
        let pivot = (0..m).find(|&r| !used[r] && !a[r][col].is_structural_zero());
        let Some(pr) = pivot else { continue };
        used[pr] = true;
        pivot_row_of_col[col] = Some(pr);
        let inv = a[pr][col].inv()?;
        for c in col..n {
            a[pr][c] = a[pr][c].mul(&inv);
        }
        for r in 0..m {
            if r != pr && !a[r][col].is_structural_zero() {
                let factor = a[r][col].clone();
                for c in col..n {
                    let delta = factor.mul(&a[pr][c]);
                    a[r][c] = a[r][c].sub(&delta);
                }
            }
        }
    }
    let mut vectors = Vec::new();
    for free in 0..n {
        if pivot_row_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![matrix.ctx.zero(); n];
        v[free] = matrix.ctx.one();
        for (col, pr) in pivot_row_of_col.iter().enumerate() {
            if let Some(pr) = pr {
                let e = &a[*pr][free];
                if !e.is_structural_zero() {
                    v[col] = e.neg();
                }
            }
        }
        vectors.push(v);
    }
    // rank-nullity sanity check
    let rank = pivot_row_of_col.iter().flatten().count();
    debug_assert_eq!(rank + vectors.len(), n);
    Ok(KernelBasis {
        ctx: matrix.ctx.clone(),
        col_labels: matrix.col_labels.clone(),
        vectors,
        echelon: false,
    })
}

/// Numerical right null space: right singular vectors whose singular value
/// is at most `tol·σ_max`. Wide matrices are padded with zero rows so the
/// full V factor is available.
pub fn numeric_kernel(matrix: &LabeledMatrix, tol: f64) -> Result<KernelBasis> {
    let n = matrix.ncols();
    let mut a = matrix.to_complex()?;
    if a.nrows() < n {
        let rows = a.nrows();
        a = a.insert_rows(rows, n - rows, Complex64::new(0.0, 0.0));
    }
    let svd = a.try_svd(false, true, f64::EPSILON, 10_000);
    let svd = svd.ok_or(Error::NumericalFailure)?;
    let v_t = svd.v_t.as_ref().expect("requested V^T");
    let sigma = &svd.singular_values;
    let sigma_max = sigma.iter().cloned().fold(0.0_f64, f64::max);
    let scale = if sigma_max > 0.0 { sigma_max } else { 1.0 };
    let mut vectors = Vec::new();
    for k in 0..v_t.nrows() {
        let s = if k < sigma.len() { sigma[k] } else { 0.0 };
        if s <= tol * scale {
            let col: Vec<Scalar> = v_t
                .row(k)
                .iter()
                .map(|z| Scalar::Complex(z.conj()))
                .collect();
            vectors.push(col);
        }
    }
    Ok(KernelBasis {
        ctx: matrix.ctx.clone(),
        col_labels: matrix.col_labels.clone(),
        vectors,
        echelon: false,
    })
}

/// Reduced column echelon form. Scanning labels from ≺-largest downward,
/// each basis vector acquires a unit pivot at the largest label in its
/// support and every other vector is cleared at that label; the basis is
/// returned sorted by pivot label ascending, so the constant operator
/// comes first. The result is the canonical basis of the spanned space.
pub fn reduced_column_echelon(
    kernel: &KernelBasis,
    order: &MonomialOrder,
) -> Result<KernelBasis> {
    let n = kernel.col_labels.len();
    if kernel.vectors.is_empty() {
        return Ok(KernelBasis {
            echelon: true,
            ..kernel.clone()
        });
    }
    // label scan order: largest first
    let mut scan: Vec<usize> = (0..n).collect();
    scan.sort_by(|&a, &b| order.cmp(&kernel.col_labels[b], &kernel.col_labels[a]));
    let mut pivots = rcef_core(kernel.vectors.clone(), n, &kernel.ctx, &scan)?;
    // sort by pivot label ascending
    pivots.sort_by(|(ra, _), (rb, _)| {
        order.cmp(&kernel.col_labels[*ra], &kernel.col_labels[*rb])
    });
    let vectors = pivots.into_iter().map(|(_, v)| v).collect();
    Ok(KernelBasis {
        ctx: kernel.ctx.clone(),
        col_labels: kernel.col_labels.clone(),
        vectors,
        echelon: true,
    })
}

/// Column reduction over an explicit coordinate scan order; returns
/// (pivot position, vector) pairs in scan order.
pub(crate) fn rcef_core(
    mut vecs: Vec<Vec<Scalar>>,
    n: usize,
    ctx: &FieldContext,
    scan: &[usize],
) -> Result<Vec<(usize, Vec<Scalar>)>> {
    let tol = ctx.tolerance();
    if let Some(tol) = tol {
        snap_small_entries(&mut vecs, tol)?;
    }
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (position, vector index)
    let mut assigned = vec![false; vecs.len()];
    for &row in scan {
        // numeric stability: among eligible vectors take the largest entry
        let cand = (0..vecs.len())
            .filter(|&v| !assigned[v] && !is_negligible(&vecs[v][row], tol))
            .max_by(|&a, &b| entry_norm(&vecs[a][row]).total_cmp(&entry_norm(&vecs[b][row])));
        let Some(vi) = cand else { continue };
        assigned[vi] = true;
        let inv = vecs[vi][row].inv()?;
        for e in vecs[vi].iter_mut() {
            *e = e.mul(&inv);
        }
        for w in 0..vecs.len() {
            if w != vi && !vecs[w][row].is_structural_zero() {
                let factor = vecs[w][row].clone();
                for c in 0..n {
                    let delta = factor.mul(&vecs[vi][c]);
                    vecs[w][c] = vecs[w][c].sub(&delta);
                }
            }
        }
        if let Some(tol) = tol {
            snap_small_entries(&mut vecs, tol)?;
        }
        pivots.push((row, vi));
    }
    if assigned.iter().any(|a| !a) {
        return Err(Error::DegenerateBasis(
            "two basis vectors collapsed during column reduction".into(),
        ));
    }
    // exact pivot entries
    for &(row, vi) in &pivots {
        vecs[vi][row] = ctx.one();
        for (w, v) in vecs.iter_mut().enumerate() {
            if w != vi {
                v[row] = ctx.zero();
            }
        }
    }
    Ok(pivots.into_iter().map(|(row, vi)| (row, vecs[vi].clone())).collect())
}

fn entry_norm(s: &Scalar) -> f64 {
    match s {
        Scalar::Complex(z) => z.norm(),
        other => {
            if other.is_structural_zero() {
                0.0
            } else {
                1.0
            }
        }
    }
}

fn is_negligible(s: &Scalar, tol: Option<f64>) -> bool {
    match (s, tol) {
        (Scalar::Complex(z), Some(t)) => z.norm() <= t,
        _ => s.is_structural_zero(),
    }
}

/// Snap entries below tol·(max modulus) to exact zero.
fn snap_small_entries(vecs: &mut [Vec<Scalar>], tol: f64) -> Result<()> {
    for v in vecs.iter_mut() {
        let mut max = 0.0_f64;
        for e in v.iter() {
            if let Scalar::Complex(z) = e {
                max = max.max(z.norm());
            }
        }
        if max == 0.0 {
            return Err(Error::DegenerateBasis("zero vector in kernel basis".into()));
        }
        for e in v.iter_mut() {
            if let Scalar::Complex(z) = e {
                if z.norm() <= tol * max {
                    *e = Scalar::Complex(Complex64::new(0.0, 0.0));
                }
            }
        }
    }
    Ok(())
}

/// Residual ‖M·v‖₂ of a (complex) kernel vector, for test assertions.
pub fn residual_norm(matrix: &LabeledMatrix, v: &[Scalar]) -> Result<f64> {
    let a = matrix.to_complex()?;
    let mut worst = 0.0_f64;
    for r in 0..a.nrows() {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in 0..a.ncols() {
            let Scalar::Complex(z) = &v[c] else {
                return Err(Error::ContextMismatch("complex vector expected".into()));
            };
            acc += a[(r, c)] * z;
        }
        worst += acc.norm_sqr();
    }
    Ok(worst.sqrt())
}
