//! Dense symmetric eigen routines on row-major `n × n` slices.
//!
//! The largest eigenvalue comes from Householder tridiagonalization followed
//! by Sturm-count bisection. Full eigensystems (Perron vectors, cross-checks)
//! use cyclic Jacobi rotations.

/// Reduces `a` (overwritten) to tridiagonal form; returns `(diag, offdiag)`.
pub(crate) fn tridiagonalize(a: &mut [f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let at = |i: usize, j: usize| i * n + j;
    let mut v = vec![0.0; n];
    let mut p = vec![0.0; n];
    for k in 0..n.saturating_sub(2) {
        let len = n - k - 1;
        let norm = (k + 1..n).map(|i| a[at(i, k)] * a[at(i, k)]).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = a[at(k + 1, k)];
        let alpha = if x0 > 0.0 { -norm } else { norm };
        for (t, i) in (k + 1..n).enumerate() {
            v[t] = a[at(i, k)];
        }
        v[0] -= alpha;
        let vv: f64 = v[..len].iter().map(|x| x * x).sum();
        if vv == 0.0 {
            continue;
        }
        let beta = 2.0 / vv;
        for (t, i) in (k + 1..n).enumerate() {
            p[t] = beta * (k + 1..n).zip(&v[..len]).map(|(j, vj)| a[at(i, j)] * vj).sum::<f64>();
        }
        let vp: f64 = v[..len].iter().zip(&p[..len]).map(|(x, y)| x * y).sum();
        let half = 0.5 * beta * vp;
        for t in 0..len {
            p[t] -= half * v[t];
        }
        for (s, i) in (k + 1..n).enumerate() {
            for (t, j) in (k + 1..n).enumerate() {
                a[at(i, j)] -= v[s] * p[t] + p[s] * v[t];
            }
        }
        a[at(k + 1, k)] = alpha;
        a[at(k, k + 1)] = alpha;
        for i in k + 2..n {
            a[at(i, k)] = 0.0;
            a[at(k, i)] = 0.0;
        }
    }
    let diag = (0..n).map(|i| a[at(i, i)]).collect();
    let off = (0..n.saturating_sub(1)).map(|i| a[at(i + 1, i)]).collect();
    (diag, off)
}

/// Number of eigenvalues of the tridiagonal matrix strictly below `x`.
fn count_below(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..diag.len() {
        let e2 = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] };
        q = diag[i] - x - if i == 0 { 0.0 } else { e2 / q };
        if q == 0.0 {
            q = -f64::EPSILON * (x.abs() + 1.0);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Largest eigenvalue of a symmetric matrix and an error bound.
pub(crate) fn largest(a: &[f64], n: usize) -> (f64, f64) {
    let mut work = a.to_vec();
    let (diag, off) = tridiagonalize(&mut work, n);
    let radius = (0..n)
        .map(|i| {
            diag[i].abs()
                + if i > 0 { off[i - 1].abs() } else { 0.0 }
                + if i + 1 < n { off[i].abs() } else { 0.0 }
        })
        .fold(0.0, f64::max);
    let (mut lo, mut hi) = (-radius - 1.0, radius + 1.0);
    for _ in 0..256 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if count_below(&diag, &off, mid) == n {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let value = 0.5 * (lo + hi);
    let rounding = 4.0 * n as f64 * f64::EPSILON * value.abs().max(radius);
    (value, 0.5 * (hi - lo) + rounding)
}

/// `true` when `t·I − a` is positive definite, i.e. every eigenvalue of `a`
/// lies below `t`.
pub fn all_below(a: &[f64], n: usize, t: f64) -> bool {
    let mut l = vec![0.0; n * n];
    for j in 0..n {
        let mut d = t - a[j * n + j];
        for k in 0..j {
            d -= l[j * n + k] * l[j * n + k];
        }
        if d <= 0.0 {
            return false;
        }
        let d = d.sqrt();
        l[j * n + j] = d;
        for i in j + 1..n {
            let mut s = -a[i * n + j];
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k];
            }
            l[i * n + j] = s / d;
        }
    }
    true
}

/// Eigenvalues ascending, with unit eigenvectors as the matching columns of
/// the returned row-major matrix.
pub(crate) fn jacobi(a: &[f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut m = a.to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| m[i * n + j] * m[i * n + j])
            .sum();
        let scale: f64 = m.iter().map(|x| x * x).sum();
        if off <= f64::EPSILON * f64::EPSILON * scale || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[q * n + q] - m[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (mkp, mkq) = (m[k * n + p], m[k * n + q]);
                    m[k * n + p] = c * mkp - s * mkq;
                    m[k * n + q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let (mpk, mqk) = (m[p * n + k], m[q * n + k]);
                    m[p * n + k] = c * mpk - s * mqk;
                    m[q * n + k] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let (vkp, vkq) = (v[k * n + p], v[k * n + q]);
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[i * n + i].total_cmp(&m[j * n + j]));
    let values = order.iter().map(|&i| m[i * n + i]).collect();
    let mut vectors = vec![0.0; n * n];
    for (col, &src) in order.iter().enumerate() {
        for k in 0..n {
            vectors[k * n + col] = v[k * n + src];
        }
    }
    (values, vectors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize, seed: u64) -> Vec<f64> {
        let mut s = seed;
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let x = next();
                a[i * n + j] = x;
                a[j * n + i] = x;
            }
        }
        a
    }

    #[test]
    fn bisection_agrees_with_jacobi() {
        for n in 1..12 {
            for seed in 0..5 {
                let a = sym(n, seed * 31 + n as u64);
                let (lam, res) = largest(&a, n);
                let (vals, _) = jacobi(&a, n);
                assert!((lam - vals[n - 1]).abs() < 1e-10, "n={n} {lam} {}", vals[n - 1]);
                assert!(res < 1e-10);
            }
        }
    }

    #[test]
    fn jacobi_vectors_are_eigenvectors() {
        let n = 7;
        let a = sym(n, 99);
        let (vals, vecs) = jacobi(&a, n);
        for c in 0..n {
            for i in 0..n {
                let av: f64 = (0..n).map(|k| a[i * n + k] * vecs[k * n + c]).sum();
                assert!((av - vals[c] * vecs[i * n + c]).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn cholesky_screen() {
        // eigenvalues of [[2,1],[1,2]] are 1 and 3
        let a = [2.0, 1.0, 1.0, 2.0];
        assert!(all_below(&a, 2, 3.0 + 1e-9));
        assert!(!all_below(&a, 2, 3.0 - 1e-9));
    }
}
