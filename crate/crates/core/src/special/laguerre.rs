/// L_n(x) by the three-term recurrence (k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}.
pub fn laguerre(n: usize, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - x) * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// L_0(x), ..., L_{n_max}(x) in one sweep.
pub fn laguerre_all(n_max: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(1.0);
    if n_max == 0 {
        return out;
    }
    out.push(1.0 - x);
    for k in 1..n_max {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - x) * out[k] - kf * out[k - 1]) / (kf + 1.0);
        out.push(next);
    }
    out
}

/// L_n'(x) = n (L_n(x) - L_{n-1}(x)) / x, valid for x != 0.
pub fn laguerre_derivative(n: usize, x: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    if x == 0.0 {
        return -(n as f64);
    }
    let all = laguerre_all(n, x);
    n as f64 * (all[n] - all[n - 1]) / x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert_eq!(laguerre(0, 7.3), 1.0);
        assert_eq!(laguerre(1, 2.0), -1.0);
        assert_eq!(laguerre(5, 0.0), 1.0);
        // L_2(x) = (x^2 - 4x + 2) / 2
        let x = 1.7;
        assert!((laguerre(2, x) - (x * x - 4.0 * x + 2.0) / 2.0).abs() < 1e-15);
        assert_eq!(laguerre_derivative(3, 0.0), -3.0);
    }

    #[test]
    fn sweep_matches_single_evaluations() {
        let all = laguerre_all(30, 4.2);
        for (n, v) in all.iter().enumerate() {
            assert_eq!(*v, laguerre(n, 4.2));
        }
    }
}
