use super::ComplexMatrix;
use crate::error::{Error, Result};

/// Kronecker product `a ⊗ b`, with `a` as the slow index.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (br, bc) = (b.rows(), b.cols());
    ComplexMatrix::from_fn(a.rows() * br, a.cols() * bc, |i, j| a[(i / br, j / bc)] * b[(i % br, j % bc)])
}

fn check_square_factored(m: &ComplexMatrix, dims: &[usize]) -> Result<()> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!("expected square matrix, got {}x{}", m.rows(), m.cols())));
    }
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::DimensionMismatch(format!("invalid factor dimensions {dims:?}")));
    }
    let total: usize = dims.iter().product();
    if total != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "factor dimensions {dims:?} multiply to {total}, matrix has dimension {}",
            m.rows()
        )));
    }
    Ok(())
}

/// Mixed-radix digits of `index`, first factor most significant.
fn digits(mut index: usize, dims: &[usize], out: &mut [usize]) {
    for k in (0..dims.len()).rev() {
        out[k] = index % dims[k];
        index /= dims[k];
    }
}

fn compose(digits: &[usize], dims: &[usize], factors: impl Iterator<Item = usize>) -> usize {
    factors.fold(0, |acc, k| acc * dims[k] + digits[k])
}

/// Traces out every factor not listed in `keep`; the kept factors stay in
/// their original order.
pub fn partial_trace(m: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
    check_square_factored(m, dims)?;
    if keep.is_empty() {
        return Err(Error::InvalidInput("partial trace must keep at least one factor".into()));
    }
    let mut kept = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if kept.len() != keep.len() || kept.iter().any(|&k| k >= dims.len()) {
        return Err(Error::InvalidInput(format!("invalid factor selection {keep:?} for {} factors", dims.len())));
    }
    let traced: Vec<usize> = (0..dims.len()).filter(|k| !kept.contains(k)).collect();
    let out_dim: usize = kept.iter().map(|&k| dims[k]).product();

    let n = m.rows();
    let mut out = ComplexMatrix::zeros(out_dim, out_dim);
    let mut di = vec![0; dims.len()];
    let mut dj = vec![0; dims.len()];
    for i in 0..n {
        digits(i, dims, &mut di);
        for j in 0..n {
            digits(j, dims, &mut dj);
            if traced.iter().all(|&k| di[k] == dj[k]) {
                let oi = compose(&di, dims, kept.iter().copied());
                let oj = compose(&dj, dims, kept.iter().copied());
                out[(oi, oj)] += m[(i, j)];
            }
        }
    }
    Ok(out)
}

/// Transposes the tensor factor `which`, leaving the others untouched.
pub fn partial_transpose(m: &ComplexMatrix, dims: &[usize], which: usize) -> Result<ComplexMatrix> {
    check_square_factored(m, dims)?;
    if which >= dims.len() {
        return Err(Error::InvalidInput(format!("factor {which} out of range for {} factors", dims.len())));
    }
    let n = m.rows();
    let mut out = ComplexMatrix::zeros(n, n);
    let mut di = vec![0; dims.len()];
    let mut dj = vec![0; dims.len()];
    for i in 0..n {
        digits(i, dims, &mut di);
        for j in 0..n {
            digits(j, dims, &mut dj);
            std::mem::swap(&mut di[which], &mut dj[which]);
            let ti = compose(&di, dims, 0..dims.len());
            let tj = compose(&dj, dims, 0..dims.len());
            std::mem::swap(&mut di[which], &mut dj[which]);
            out[(ti, tj)] = m[(i, j)];
        }
    }
    Ok(out)
}

/// sqrt(Σ |a_ij - b_ij|²)
pub fn frobenius_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    a.checked_same_shape(b, "frobenius distance")?;
    Ok(a.as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt())
}

/// Real Frobenius inner product Re Tr(a† b).
pub fn inner_real(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.as_slice().iter().zip(b.as_slice()).map(|(x, y)| (x.conj() * y).re).sum()
}
