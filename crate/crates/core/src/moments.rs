//! Transforms between polynomial coefficients, Verblunsky coefficients,
//! norming constants κₙ and trigonometric moments cₙ.
//!
//! The matrix b = (I + A)⁻¹ satisfies z^k = Σ_l b_{k,l} Φ_l(z). It is built
//! by forward substitution rather than by cofactor expansion.

use crate::opuc_core::build_polynomials;
use crate::{Error, Result, VerblunskySequence, C64};
use serde::Serialize;

/// Lower unitriangular b_{k,l}, 0 ≤ l ≤ k ≤ n.
#[derive(Debug, Clone, PartialEq)]
pub struct LowerUnitriangular {
    rows: Vec<Vec<C64>>,
}

impl LowerUnitriangular {
    /// Order n (the matrix is (n+1)×(n+1)).
    pub fn order(&self) -> usize {
        self.rows.len() - 1
    }

    /// b_{k,l}; zero above the diagonal.
    pub fn get(&self, k: usize, l: usize) -> C64 {
        if l > k {
            C64::new(0.0, 0.0)
        } else {
            self.rows[k][l]
        }
    }
}

/// Coefficient table a[n][m] for 0 ≤ m ≤ n ≤ order.
pub fn coefficient_table(seq: &VerblunskySequence, order: usize) -> Vec<Vec<C64>> {
    build_polynomials(seq, order)
        .into_iter()
        .map(|p| p.coeffs().to_vec())
        .collect()
}

/// b = (I + A)⁻¹ of order n.
pub fn b_inverse(seq: &VerblunskySequence, n: usize) -> LowerUnitriangular {
    b_from_table(&coefficient_table(seq, n))
}

fn b_from_table(a: &[Vec<C64>]) -> LowerUnitriangular {
    let n = a.len() - 1;
    let mut rows = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut row = vec![C64::new(0.0, 0.0); k + 1];
        row[k] = C64::new(1.0, 0.0);
        for i in (0..k).rev() {
            let mut acc = C64::new(0.0, 0.0);
            for l in (i + 1)..=k {
                acc += row[l] * a[l][i];
            }
            row[i] = -acc;
        }
        rows.push(row);
    }
    LowerUnitriangular { rows }
}

/// max |(b·C − I)| using the product order not used to build b.
pub fn inverse_residual(seq: &VerblunskySequence, n: usize) -> f64 {
    let a = coefficient_table(seq, n);
    let b = b_from_table(&a);
    let mut worst: f64 = 0.0;
    for k in 0..=n {
        for i in 0..=k {
            let mut acc = C64::new(0.0, 0.0);
            for l in i..=k {
                acc += a[k][l] * b.get(l, i);
            }
            let target = if i == k { 1.0 } else { 0.0 };
            worst = worst.max((acc - target).norm());
        }
    }
    worst
}

/// κₙ = ∏_{j<n} ρⱼ⁻¹.
pub fn kappa(seq: &VerblunskySequence, n: usize) -> f64 {
    (0..n).map(|j| seq.rho(j)).product::<f64>().recip()
}

/// Σ_{k=m}^{n} b_{k,m}·conj(a_{n,n−k}).
pub fn b_a_sum(seq: &VerblunskySequence, n: usize, m: usize) -> Result<C64> {
    if m > n {
        return Err(Error::Index { index: m, limit: n });
    }
    let a = coefficient_table(seq, n);
    let b = b_from_table(&a);
    Ok((m..=n).map(|k| b.get(k, m) * a[n][n - k].conj()).sum())
}

/// |κₙ⁻² − Σ_k b_{k,0}·conj(a_{n,n−k})|.
pub fn kappa_identity_residual(seq: &VerblunskySequence, n: usize) -> f64 {
    let k = kappa(seq, n);
    (b_a_sum(seq, n, 0).unwrap() - 1.0 / (k * k)).norm()
}

/// Defect of α_{m−1}∏_{j=m}^{n−1}(1−|αⱼ|²) = −Σ_{k=m}^{n} b_{k,m}conj(a_{n,n−k}).
pub fn verblunsky_identity_residual(seq: &VerblunskySequence, n: usize, m: usize) -> Result<f64> {
    let s = b_a_sum(seq, n, m)?;
    let prod: f64 = (m..n).map(|j| seq.rho2(j)).product();
    Ok((seq.at(m as i64 - 1) * prod + s).norm())
}

/// cₙ = Σ_{l<n} conj(b_{n−1,l})·α_l·κ_l⁻², with c₀ = 1.
pub fn moment_c(seq: &VerblunskySequence, n: usize) -> C64 {
    if n == 0 {
        return C64::new(1.0, 0.0);
    }
    let b = b_inverse(seq, n - 1);
    let mut kinv2 = 1.0;
    let mut total = C64::new(0.0, 0.0);
    for l in 0..n {
        total += b.get(n - 1, l).conj() * seq.at(l as i64) * kinv2;
        kinv2 *= seq.rho2(l);
    }
    total
}

/// The same moment through its split form α_{n−1}∏_{k≤n−2}ρ_k² + Σ_{l≤n−2}.
pub fn moment_c_split(seq: &VerblunskySequence, n: usize) -> C64 {
    if n == 0 {
        return C64::new(1.0, 0.0);
    }
    let b = b_inverse(seq, n - 1);
    let head_prod: f64 = (0..n - 1).map(|k| seq.rho2(k)).product();
    let mut kinv2 = 1.0;
    let mut total = seq.at(n as i64 - 1) * head_prod;
    for l in 0..n - 1 {
        total += b.get(n - 1, l).conj() * seq.at(l as i64) * kinv2;
        kinv2 *= seq.rho2(l);
    }
    total
}

/// Large-n behaviour of the b/a sums for a finitely supported sequence.
#[derive(Debug, Clone, Serialize)]
pub struct LimitDiagnostics {
    pub m: usize,
    /// Degrees n at which the sums were evaluated.
    pub degrees: Vec<usize>,
    /// Σ_k b_{k,m}conj(a_{n,n−k}) at each degree.
    pub sums: Vec<C64>,
    /// −α_{m−1}∏_{j≥m}(1−|αⱼ|²).
    pub limit: C64,
    /// Σ_k b_{k,0}conj(a_{n,n−k}) at each degree.
    pub base_sums: Vec<C64>,
    /// ∏_j(1−|αⱼ|²) = exp ∫ log w dθ/2π.
    pub base_limit: f64,
    /// Ratio of the two sums at each degree.
    pub ratios: Vec<C64>,
    /// −α_{m−1}∏_{j<m}(1−|αⱼ|²)⁻¹.
    pub ratio_limit: C64,
    /// Largest deviation from the limits over the evaluated degrees.
    pub max_deviation: f64,
}

/// Evaluates the sums at n = N, N+1, N+2 (and at least n = m).
pub fn limit_diagnostics(seq: &VerblunskySequence, m: usize) -> LimitDiagnostics {
    let n0 = seq.len().max(m);
    let degrees: Vec<usize> = (n0..n0 + 3).collect();
    let sums: Vec<C64> = degrees.iter().map(|&n| b_a_sum(seq, n, m).unwrap()).collect();
    let base_sums: Vec<C64> = degrees.iter().map(|&n| b_a_sum(seq, n, 0).unwrap()).collect();
    let tail: f64 = (m..seq.len()).map(|j| seq.rho2(j)).product();
    let head: f64 = (0..m).map(|j| seq.rho2(j)).product();
    let limit = -seq.at(m as i64 - 1) * tail;
    let base_limit = tail * head;
    let ratios: Vec<C64> = sums.iter().zip(&base_sums).map(|(s, b)| s / b).collect();
    let ratio_limit = -seq.at(m as i64 - 1) / head;
    let max_deviation = sums
        .iter()
        .map(|s| (s - limit).norm())
        .chain(base_sums.iter().map(|b| (b - base_limit).norm()))
        .chain(ratios.iter().map(|r| (r - ratio_limit).norm()))
        .fold(0.0, f64::max);
    LimitDiagnostics {
        m,
        degrees,
        sums,
        limit,
        base_sums,
        base_limit,
        ratios,
        ratio_limit,
        max_deviation,
    }
}
