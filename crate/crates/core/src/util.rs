//! Small numeric helpers shared across modules.

/// Canonical representative of `x` in `[0, 1)`.
pub fn frac(x: f64) -> f64 {
    let r = x - libm::floor(x);
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// Distance from `x` to the nearest integer.
pub fn dist_to_int(x: f64) -> f64 {
    libm::fabs(x - libm::round(x))
}

/// Distance of `x` from zero in ℝ/ℤ.
pub fn circle_abs(x: f64) -> f64 {
    dist_to_int(x)
}

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Sign of the permutation that sorts `v` (entries assumed distinct).
pub fn sort_sign(v: &mut [usize]) -> i64 {
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    sign
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frac_wraps_negative_values() {
        assert!((frac(-1.4) - 0.6).abs() < 1e-12);
        assert_eq!(frac(3.0), 0.0);
    }

    #[test]
    fn sort_sign_counts_transpositions() {
        let mut v = [2, 0, 1];
        assert_eq!(sort_sign(&mut v), 1);
        assert_eq!(v, [0, 1, 2]);
        let mut w = [1, 0];
        assert_eq!(sort_sign(&mut w), -1);
    }
}
