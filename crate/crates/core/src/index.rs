//! Row-major multi-index bookkeeping for tensors of shape `n_1 × … × n_d`.

/// Row-major strides; the last axis is contiguous.
pub fn strides(shape: &[usize]) -> Vec<usize> {
    let mut strides = vec![1; shape.len()];
    for r in (0..shape.len().saturating_sub(1)).rev() {
        strides[r] = strides[r + 1] * shape[r + 1];
    }
    strides
}

/// Number of points, or `None` on `u128` overflow.
pub fn checked_volume(shape: &[usize]) -> Option<u128> {
    shape
        .iter()
        .try_fold(1u128, |acc, &n| acc.checked_mul(n as u128))
}

pub fn unravel(mut flat: usize, shape: &[usize], out: &mut [usize]) {
    for r in (0..shape.len()).rev() {
        out[r] = flat % shape[r];
        flat /= shape[r];
    }
}

pub fn ravel(idx: &[usize], shape: &[usize]) -> usize {
    idx.iter().zip(shape).fold(0, |acc, (&i, &n)| acc * n + i)
}

/// Advances `idx` to the next multi-index in row-major order. Returns
/// `false` after wrapping past the last index.
pub fn advance(idx: &mut [usize], shape: &[usize]) -> bool {
    for r in (0..shape.len()).rev() {
        idx[r] += 1;
        if idx[r] < shape[r] {
            return true;
        }
        idx[r] = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ravel_unravel_agree_with_advance() {
        let shape = [3, 1, 4, 2];
        let total: usize = shape.iter().product();
        let mut idx = [0; 4];
        let mut buf = [0; 4];
        for flat in 0..total {
            assert_eq!(ravel(&idx, &shape), flat);
            unravel(flat, &shape, &mut buf);
            assert_eq!(buf, idx);
            let more = advance(&mut idx, &shape);
            assert_eq!(more, flat + 1 < total);
        }
        assert_eq!(strides(&shape), vec![8, 8, 2, 1]);
    }

    #[test]
    fn volume_overflow_is_detected() {
        assert_eq!(checked_volume(&[4, 4, 4]), Some(64));
        assert_eq!(checked_volume(&[usize::MAX, usize::MAX, usize::MAX]), None);
    }
}
