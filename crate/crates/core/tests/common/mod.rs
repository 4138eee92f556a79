//! Reference computations that share no code with the library: plain
//! integer polynomials, brute-force partition counts, direct theta sums.
#![allow(dead_code)]

use std::collections::HashMap;

use qverify::{QSeries, Rational};

/// Coefficients of `f` at exponents `0..order` as integers.
pub fn ints(f: &QSeries<Rational>, order: i64) -> Vec<i128> {
    (0..order)
        .map(|e| {
            let c = f.coeff(e).expect("exact");
            assert!(c.is_integer(), "non-integer coefficient {c} at q^{e}");
            c.to_string().parse().expect("integer")
        })
        .collect()
}

/// Number of partitions of each `n < order` into parts `p` with `allowed(p)`,
/// by memoized recursion on the largest part.
pub fn partitions(allowed: impl Fn(i64) -> bool, order: i64) -> Vec<i128> {
    partitions_from((1..order).filter(|&p| allowed(p)).collect(), order)
}

/// Partition counts where each entry of `parts` is a distinct kind of part;
/// a size listed twice comes in two colors.
pub fn partitions_from(parts: Vec<i64>, order: i64) -> Vec<i128> {
    let mut memo = HashMap::new();
    (0..order).map(|n| count(n, parts.len(), &parts, &mut memo)).collect()
}

fn count(n: i64, k: usize, parts: &[i64], memo: &mut HashMap<(i64, usize), i128>) -> i128 {
    if n == 0 {
        return 1;
    }
    if k == 0 {
        return 0;
    }
    if let Some(&v) = memo.get(&(n, k)) {
        return v;
    }
    let p = parts[k - 1];
    let mut total = count(n, k - 1, parts, memo);
    if p <= n {
        total += count(n - p, k, parts, memo);
    }
    memo.insert((n, k), total);
    total
}

/// Truncated product of polynomials with integer coefficients.
pub fn convolve(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(a.len() - i) {
            out[i + j] = out[i + j].checked_add(x.checked_mul(y).expect("overflow")).expect("overflow");
        }
    }
    out
}

/// `∏ (q^j; q^m)_len ^ power` below `order` for `j ≥ 1`; `len = None` is `∞`.
/// Each factor `1 − q^e` is multiplied in, or divided out as the geometric
/// series `Σ q^{ke}`.
pub fn product(factors: &[(i64, i64, Option<i64>, i64)], order: i64) -> Vec<i128> {
    let n = order as usize;
    let mut acc = vec![0i128; n];
    acc[0] = 1;
    for &(j, m, len, power) in factors {
        assert!(j >= 1 && m >= 1);
        let mut k = 0;
        while j + k * m < order && len.is_none_or(|l| k < l) {
            let e = (j + k * m) as usize;
            let mut poly = vec![0i128; n];
            if power > 0 {
                poly[0] = 1;
                poly[e] = -1;
            } else {
                for t in (0..n).step_by(e) {
                    poly[t] = 1;
                }
            }
            for _ in 0..power.abs() {
                acc = convolve(&acc, &poly);
            }
            k += 1;
        }
    }
    acc
}

/// `φ(−q) = Σ_{n∈Z} (−1)^n q^{n²}` below `order`.
pub fn phi_minus_q(order: i64) -> Vec<i128> {
    let mut out = vec![0i128; order as usize];
    let mut n = 0i64;
    while n * n < order {
        let s = if n % 2 == 0 { 1 } else { -1 };
        out[(n * n) as usize] += if n == 0 { 1 } else { 2 * s };
        n += 1;
    }
    out
}

/// `ψ(q) = Σ_{n≥0} q^{n(n+1)/2}` below `order`.
pub fn psi(order: i64) -> Vec<i128> {
    let mut out = vec![0i128; order as usize];
    let mut n = 0i64;
    while n * (n + 1) / 2 < order {
        out[(n * (n + 1) / 2) as usize] += 1;
        n += 1;
    }
    out
}
