//! Word-level helpers for fixed-width bit vectors stored as `[u64]`.

/// `dst |= src << k`, truncated to `dst.len()` words.
pub fn shl_or(src: &[u64], k: usize, dst: &mut [u64]) {
    let (wq, bq) = (k / 64, k % 64);
    let top = dst.len().min(src.len() + wq + 1);
    for i in (wq..top).rev() {
        let mut w = if i - wq < src.len() { src[i - wq] << bq } else { 0 };
        if bq != 0 && i > wq && i - wq - 1 < src.len() {
            w |= src[i - wq - 1] >> (64 - bq);
        }
        dst[i] |= w;
    }
}

/// `dst |= src >> k`.
pub fn shr_or(src: &[u64], k: usize, dst: &mut [u64]) {
    let (wq, bq) = (k / 64, k % 64);
    let n = src.len();
    for i in 0..n.saturating_sub(wq).min(dst.len()) {
        let mut w = src[i + wq] >> bq;
        if bq != 0 && i + wq + 1 < n {
            w |= src[i + wq + 1] << (64 - bq);
        }
        dst[i] |= w;
    }
}

pub fn get(bits: &[u64], i: usize) -> bool {
    bits.get(i / 64).is_some_and(|w| w >> (i % 64) & 1 == 1)
}

pub fn set(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

/// Clears every bit at position `>= width`.
pub fn truncate(bits: &mut [u64], width: usize) {
    for (i, w) in bits.iter_mut().enumerate() {
        let lo = i * 64;
        if lo >= width {
            *w = 0;
        } else if width - lo < 64 {
            *w &= (1u64 << (width - lo)) - 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shifts_match_naive() {
        let mut src = vec![0u64; 3];
        for i in [0, 5, 63, 64, 100, 150, 191] {
            set(&mut src, i);
        }
        for k in [0, 1, 63, 64, 65, 130] {
            let mut up = vec![0u64; 3];
            shl_or(&src, k, &mut up);
            let mut down = vec![0u64; 3];
            shr_or(&src, k, &mut down);
            for i in 0..192 {
                assert_eq!(get(&up, i), i >= k && get(&src, i - k), "shl {k} bit {i}");
                assert_eq!(get(&down, i), get(&src, i + k), "shr {k} bit {i}");
            }
        }
    }
}
