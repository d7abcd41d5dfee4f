//! Logarithmic moments w_k and the Taylor coefficients d_m of √Θ·D⁻¹.
//!
//! d_m is the nested multi-index sum whose outer index is unbounded; for
//! finite support it is clipped at N + m, past which every summand carries a
//! vanishing factor. w₁…w₄ are the explicit single-index forms written with
//! ρⱼ² factors. The two families are linked by the composition transforms
//! [`w_from_d`] and [`d_from_w`].

use crate::{Error, Result, VerblunskySequence, C64};
use serde::Serialize;

/// d_m from the nested sum, outer index clipped at N + m.
pub fn d_direct(seq: &VerblunskySequence, m: usize) -> C64 {
    d_direct_window(seq, m, seq.len() + m)
}

/// d_m with the outer index running over 0..=window.
pub fn d_direct_window(seq: &VerblunskySequence, m: usize, window: usize) -> C64 {
    if m == 0 {
        return C64::new(1.0, 0.0);
    }
    let m = m as i64;
    let window = window as i64;
    let mut total = C64::new(0.0, 0.0);
    for j in 0..=window {
        total += seq.at(j + m - 1) * seq.at(j - 1).conj();
    }
    for p in 1..m {
        total += d_level(seq, p, 1, window + 1, m, C64::new(1.0, 0.0));
    }
    total
}

// Level s: k_s in [0, k_{s−1}−1], l_s in [p−s+1, l_{s−1}−1], factor α_{k_s+l_{s−1}}conj(α_{k_s+l_s}).
fn d_level(seq: &VerblunskySequence, p: i64, s: i64, k_prev: i64, l_prev: i64, acc: C64) -> C64 {
    if s > p {
        let mut tail = C64::new(0.0, 0.0);
        for j in 0..=k_prev {
            tail += seq.at(j + l_prev - 1) * seq.at(j - 1).conj();
        }
        return acc * tail;
    }
    let mut total = C64::new(0.0, 0.0);
    for k in 0..k_prev {
        let head = seq.at(k + l_prev);
        if head == C64::new(0.0, 0.0) {
            continue;
        }
        for l in (p - s + 1)..l_prev {
            let f = head * seq.at(k + l).conj();
            total += d_level(seq, p, s + 1, k, l, acc * f);
        }
    }
    total
}

/// Explicit single-index form of w_m, 1 ≤ m ≤ 4.
pub fn w_closed(seq: &VerblunskySequence, m: usize) -> Result<C64> {
    let a = |j: i64| seq.at(j);
    let c = |j: i64| seq.at(j).conj();
    let r2 = |j: i64| if j < 0 { 1.0 } else { seq.rho2(j as usize) };
    let top = (seq.len() + m) as i64;
    let sum = |f: &dyn Fn(i64) -> C64| -> C64 { (0..=top).map(f).sum() };
    Ok(match m {
        1 => -sum(&|j| a(j) * c(j - 1)),
        2 => -sum(&|j| a(j + 1) * r2(j) * c(j - 1)) + 0.5 * sum(&|j| a(j).powi(2) * c(j - 1).powi(2)),
        3 => {
            -sum(&|j| a(j + 2) * r2(j + 1) * r2(j) * c(j - 1))
                + sum(&|j| a(j + 1).powi(2) * r2(j) * c(j) * c(j - 1))
                + sum(&|j| a(j + 1) * a(j) * r2(j) * c(j - 1).powi(2))
                - sum(&|j| a(j).powi(3) * c(j - 1).powi(3)) / 3.0
        }
        4 => {
            -sum(&|j| a(j + 3) * r2(j + 2) * r2(j + 1) * r2(j) * c(j - 1))
                + sum(&|j| a(j + 2).powi(2) * r2(j + 1) * r2(j) * c(j + 1) * c(j - 1))
                + 2.0 * sum(&|j| a(j + 2) * a(j + 1) * r2(j + 1) * r2(j) * c(j) * c(j - 1))
                + sum(&|j| a(j + 2) * a(j) * r2(j + 1) * r2(j) * c(j - 1).powi(2))
                - sum(&|j| a(j + 1).powi(3) * r2(j) * c(j).powi(2) * c(j - 1))
                - sum(&|j| a(j + 1) * a(j).powi(2) * r2(j) * c(j - 1).powi(3))
                - sum(&|j| a(j + 1).powi(2) * r2(j) * c(j - 1).powi(2))
                + 1.5 * sum(&|j| a(j + 1).powi(2) * r2(j).powi(2) * c(j - 1).powi(2))
                + 0.25 * sum(&|j| a(j).powi(4) * c(j - 1).powi(4))
        }
        _ => return Err(Error::UnsupportedOrder(m)),
    })
}

/// w₀ = Σ log(1 − |αⱼ|²).
pub fn w0(seq: &VerblunskySequence) -> f64 {
    (0..seq.len()).map(|j| seq.rho2(j).ln()).sum()
}

/// Largest supported composition order.
pub const MAX_COMPOSITION_ORDER: usize = 12;

// table[j][r] = Σ over compositions of r into j parts of Π x_{b}, x[b−1] = x_b.
fn composition_table(x: &[C64], k: usize) -> Vec<Vec<C64>> {
    let mut table = vec![vec![C64::new(0.0, 0.0); k + 1]; k + 1];
    table[0][0] = C64::new(1.0, 0.0);
    for j in 1..=k {
        for r in j..=k {
            let mut acc = C64::new(0.0, 0.0);
            for b in 1..=(r - (j - 1)) {
                acc += x[b - 1] * table[j - 1][r - b];
            }
            table[j][r] = acc;
        }
    }
    table
}

/// w_k = Σ over compositions b₁+…+b_j = k of (−1)^j/j · ∏ d_{b_l}; `d[i]` holds d_{i+1}.
pub fn w_from_d(d: &[C64], k: usize) -> C64 {
    assert!(k >= 1 && k <= d.len() && k <= MAX_COMPOSITION_ORDER);
    let table = composition_table(d, k);
    (1..=k)
        .map(|j| table[j][k] * (if j % 2 == 0 { 1.0 } else { -1.0 } / j as f64))
        .sum()
}

/// d_k = Σ over compositions b₁+…+b_j = k of (−1)^j/j! · ∏ w_{b_l}; `w[i]` holds w_{i+1}.
pub fn d_from_w(w: &[C64], k: usize) -> C64 {
    assert!(k >= 1 && k <= w.len() && k <= MAX_COMPOSITION_ORDER);
    let table = composition_table(w, k);
    let mut fact = 1.0;
    let mut total = C64::new(0.0, 0.0);
    for j in 1..=k {
        fact *= j as f64;
        total += table[j][k] * (if j % 2 == 0 { 1.0 } else { -1.0 } / fact);
    }
    total
}

/// |w_closed(m) − w_from_d(d_direct(1..m), m)|.
pub fn single_index_property(seq: &VerblunskySequence, m: usize) -> Result<f64> {
    let d: Vec<C64> = (1..=m).map(|k| d_direct(seq, k)).collect();
    Ok((w_closed(seq, m)? - w_from_d(&d, m)).norm())
}

/// Defect of Σaₙ Σ_{k≤n}b_k + Σbₙ Σ_{k≤n}a_k = Σa·Σb + Σaₙbₙ.
pub fn partial_sum_pair_residual(a: &[C64], b: &[C64]) -> f64 {
    let n = a.len().min(b.len());
    let (mut pa, mut pb) = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
    let (mut lhs, mut diag) = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
    for i in 0..n {
        pa += a[i];
        pb += b[i];
        lhs += a[i] * pb + b[i] * pa;
        diag += a[i] * b[i];
    }
    (lhs - pa * pb - diag).norm()
}

/// Defect of Σaₙ Σ_{k≤n}a_k = ½(Σa)² + ½Σaₙ².
pub fn partial_sum_square_residual(a: &[C64]) -> f64 {
    let mut p = C64::new(0.0, 0.0);
    let (mut lhs, mut sq) = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
    for &x in a {
        p += x;
        lhs += x * p;
        sq += x * x;
    }
    (lhs - 0.5 * p * p - 0.5 * sq).norm()
}

/// How a table entry was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    ClosedForm,
    GeneralFormula,
    Quadrature,
}

/// w₀…w_M and d₁…d_M with per-entry provenance.
#[derive(Debug, Clone, Serialize)]
pub struct LogMomentTable {
    pub order: usize,
    pub w: Vec<C64>,
    pub w_provenance: Vec<Provenance>,
    pub d: Vec<C64>,
    pub d_provenance: Vec<Provenance>,
}

impl LogMomentTable {
    /// Table from w₀…w_M, with d filled in by the composition transform.
    pub fn from_w(w: Vec<C64>, provenance: Provenance) -> Self {
        let order = w.len() - 1;
        let d: Vec<C64> = (1..=order).map(|k| d_from_w(&w[1..], k)).collect();
        Self {
            order,
            w_provenance: vec![provenance; order + 1],
            d_provenance: vec![provenance; order],
            w,
            d,
        }
    }

    /// max_k |w_k − w_from_d(d, k)|.
    pub fn round_trip_residual(&self) -> f64 {
        (1..=self.order)
            .map(|k| (self.w[k] - w_from_d(&self.d, k)).norm())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{bs_measure, fourier_log_all, szego_taylor};
    use crate::opuc_core::{coefficient, Method};
    use crate::sample;

    #[test]
    fn zero_sequence() {
        let z = VerblunskySequence::zero();
        for m in 1..=5 {
            assert_eq!(d_direct(&z, m), C64::new(0.0, 0.0));
        }
        for m in 1..=4 {
            assert_eq!(w_closed(&z, m).unwrap(), C64::new(0.0, 0.0));
            assert_eq!(single_index_property(&z, m).unwrap(), 0.0);
        }
        assert_eq!(w_closed(&z, 5), Err(Error::UnsupportedOrder(5)));
    }

    #[test]
    fn single_coefficient() {
        let s = VerblunskySequence::from_real(&[0.5]).unwrap();
        assert!((d_direct(&s, 1) + 0.5).norm() < 1e-16);
        assert!((w_closed(&s, 1).unwrap() - 0.5).norm() < 1e-16);
        assert!(single_index_property(&s, 2).unwrap() < 1e-12);
    }

    #[test]
    fn d_is_a_limit_of_reversed_coefficients() {
        let mut r = sample::rng(31);
        for _ in 0..5 {
            let s = sample::sequence_up_to(&mut r, 6, 0.8);
            let n = s.len();
            for m in 1..=6 {
                let expect = if m <= n {
                    coefficient(&s, n, n - m, Method::Recursion).unwrap().conj()
                } else {
                    C64::new(0.0, 0.0)
                };
                assert!((d_direct(&s, m) - expect).norm() < 1e-12, "m={m}");
            }
        }
    }

    #[test]
    fn clip_window_loses_nothing() {
        let mut r = sample::rng(37);
        let s = sample::sequence(&mut r, 5, 0.8);
        for m in 1..=5 {
            let a = d_direct(&s, m);
            let b = d_direct_window(&s, m, s.len() + m + 6);
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn against_quadrature() {
        let mut r = sample::rng(41);
        for _ in 0..5 {
            let s = sample::sequence_up_to(&mut r, 6, 0.8);
            let mu = bs_measure(&s);
            let wq = fourier_log_all(&mu, 4, 1e-12).unwrap();
            assert!((wq[0].re - w0(&s)).abs() < 1e-10);
            for m in 1..=4 {
                assert!((w_closed(&s, m).unwrap() - wq[m]).norm() < 1e-8, "m={m}");
                assert!(single_index_property(&s, m).unwrap() < 1e-10);
            }
            let dq = szego_taylor(&mu, 6, 1e-12).unwrap();
            for m in 1..=6 {
                assert!((d_direct(&s, m) - dq[m - 1]).norm() < 1e-8);
            }
        }
    }

    #[test]
    fn real_sequences_have_real_moments() {
        let s = VerblunskySequence::from_real(&[0.3, -0.5, 0.2, 0.7]).unwrap();
        for m in 1..=4 {
            assert!(w_closed(&s, m).unwrap().im.abs() < 1e-12);
        }
    }

    #[test]
    fn low_order_transforms() {
        let d = [C64::new(0.3, 0.1), C64::new(-0.2, 0.4)];
        assert!((w_from_d(&d, 1) + d[0]).norm() < 1e-16);
        assert!((w_from_d(&d, 2) - (-d[1] + 0.5 * d[0] * d[0])).norm() < 1e-16);
    }

    #[test]
    fn rearrangement_identities() {
        let mut r = sample::rng(43);
        let a = sample::complex_vec(&mut r, 30, 1.0);
        let b = sample::complex_vec(&mut r, 30, 1.0);
        assert!(partial_sum_pair_residual(&a, &b) < 1e-12);
        assert!(partial_sum_square_residual(&a) < 1e-12);
    }

    #[test]
    fn table_round_trip() {
        let mut r = sample::rng(47);
        let w = sample::complex_vec(&mut r, 9, 0.5);
        let t = LogMomentTable::from_w(w, Provenance::Quadrature);
        assert!(t.round_trip_residual() < 1e-12);
    }
}
