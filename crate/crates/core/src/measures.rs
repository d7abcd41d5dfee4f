//! Bernstein–Szegő measures and trapezoid quadrature on the circle.
//!
//! For finite support N the weight is w(θ) = ∏ρⱼ² / |Φ_N*(e^{iθ})|². It is
//! analytic and positive, so the uniform trapezoid rule converges
//! geometrically. Grids start at 256 points and double until two successive
//! results agree within the tolerance.

use crate::opuc_core::{build_polynomials, horner};
use crate::{Error, Result, VerblunskySequence, C64};
use nalgebra::{DMatrix, DVector};
use std::f64::consts::TAU;

/// First grid size tried by the converging quadratures.
pub const MIN_GRID: usize = 256;
/// Hard upper limit on the grid size.
pub const MAX_GRID: usize = 1 << 20;
/// Default convergence tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Grid cap: `OPUC_MAX_GRID` if set to a smaller power of two, else 2²⁰.
pub fn grid_cap() -> usize {
    std::env::var("OPUC_MAX_GRID")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&g| g >= MIN_GRID)
        .map(|g| g.min(MAX_GRID))
        .unwrap_or(MAX_GRID)
}

/// The Bernstein–Szegő measure of a finitely supported sequence.
#[derive(Debug, Clone)]
pub struct BernsteinSzegoMeasure {
    seq: VerblunskySequence,
    phi_star: Vec<C64>,
    rho2_prod: f64,
}

/// Builds the Bernstein–Szegő measure of `seq`.
pub fn bs_measure(seq: &VerblunskySequence) -> BernsteinSzegoMeasure {
    let n = seq.len();
    let phi_star = build_polynomials(seq, n)[n].reversed();
    let rho2_prod = (0..n).map(|j| seq.rho2(j)).product();
    BernsteinSzegoMeasure {
        seq: seq.clone(),
        phi_star,
        rho2_prod,
    }
}

impl BernsteinSzegoMeasure {
    pub fn seq(&self) -> &VerblunskySequence {
        &self.seq
    }

    pub fn order(&self) -> usize {
        self.seq.len()
    }

    /// Coefficients of Φ_N*.
    pub fn phi_star(&self) -> &[C64] {
        &self.phi_star
    }

    /// w(θ).
    pub fn weight(&self, theta: f64) -> f64 {
        let z = C64::from_polar(1.0, theta);
        let w = self.rho2_prod / horner(&self.phi_star, z).norm_sqr();
        debug_assert!(w > 0.0);
        w
    }
}

fn grid(m: usize) -> impl Iterator<Item = f64> {
    (0..m).map(move |t| TAU * t as f64 / m as f64)
}

/// Pairwise summation with a fixed reduction tree.
pub fn pairwise_sum(v: &[C64]) -> C64 {
    if v.len() <= 16 {
        return v.iter().sum();
    }
    let mid = v.len() / 2;
    pairwise_sum(&v[..mid]) + pairwise_sum(&v[mid..])
}

/// Trapezoid mean of `f` over an `m`-point grid: ∫ f dθ/2π.
pub fn trapezoid<F: Fn(f64) -> C64>(f: F, m: usize) -> C64 {
    let vals: Vec<C64> = grid(m).map(f).collect();
    pairwise_sum(&vals) / m as f64
}

/// Doubles the grid until every component of `eval(m)` changes by less than `tol`.
pub fn converge<F: Fn(usize) -> Vec<C64>>(eval: F, tol: f64) -> Result<Vec<C64>> {
    let cap = grid_cap();
    let mut m = MIN_GRID;
    let mut prev = eval(m);
    let mut delta = f64::INFINITY;
    while m < cap {
        m *= 2;
        let next = eval(m);
        delta = prev.iter().zip(&next).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        prev = next;
        if delta < tol {
            return Ok(prev);
        }
    }
    Err(Error::NoConvergence { grid: m, delta })
}

/// w₀…w_kmax, the Fourier coefficients of log w, on one shared grid.
pub fn fourier_log_all(mu: &BernsteinSzegoMeasure, kmax: usize, tol: f64) -> Result<Vec<C64>> {
    converge(
        |m| {
            let logs: Vec<f64> = grid(m).map(|t| mu.weight(t).ln()).collect();
            (0..=kmax)
                .map(|k| {
                    let terms: Vec<C64> = logs
                        .iter()
                        .enumerate()
                        .map(|(t, &lw)| {
                            let th = TAU * ((k * t) % m) as f64 / m as f64;
                            C64::from_polar(lw, -th)
                        })
                        .collect();
                    pairwise_sum(&terms) / m as f64
                })
                .collect()
        },
        tol,
    )
}

/// w_k = ∫ e^{−ikθ} log w(θ) dθ/2π.
pub fn fourier_log(mu: &BernsteinSzegoMeasure, k: usize, tol: f64) -> Result<C64> {
    Ok(fourier_log_all(mu, k, tol)?[k])
}

/// ∫ P(θ) log w(θ) dθ/2π evaluated directly on the grid.
pub fn integrate_z(mu: &BernsteinSzegoMeasure, p: &TrigWeightPoly, tol: f64) -> Result<f64> {
    let v = converge(
        |m| vec![trapezoid(|t| C64::new(p.eval(t) * mu.weight(t).ln(), 0.0), m)],
        tol,
    )?;
    Ok(v[0].re)
}

/// d₁…d_M from exponentiating log(√Θ D⁻¹) = −Σ_{k≥1} w_k z^k.
pub fn szego_taylor(mu: &BernsteinSzegoMeasure, m: usize, tol: f64) -> Result<Vec<C64>> {
    let w = fourier_log_all(mu, m, tol)?;
    let f: Vec<C64> = (0..=m)
        .map(|k| if k == 0 { C64::new(0.0, 0.0) } else { -w[k] })
        .collect();
    Ok(exp_series(&f)[1..].to_vec())
}

/// Truncated power series exp(f) for f with zero constant term.
pub fn exp_series(f: &[C64]) -> Vec<C64> {
    let n = f.len();
    let mut g = vec![C64::new(0.0, 0.0); n];
    if n == 0 {
        return g;
    }
    g[0] = C64::new(1.0, 0.0);
    for i in 1..n {
        let mut acc = C64::new(0.0, 0.0);
        for k in 1..=i {
            acc += f[k] * g[i - k] * k as f64;
        }
        g[i] = acc / i as f64;
    }
    g
}

/// cₙ = ∫ e^{−inθ} w(θ) dθ/2π by quadrature.
pub fn moment_oracle(mu: &BernsteinSzegoMeasure, n: i64, tol: f64) -> Result<C64> {
    let v = converge(
        |m| vec![trapezoid(|t| C64::from_polar(mu.weight(t), -(n as f64) * t), m)],
        tol,
    )?;
    Ok(v[0])
}

/// ⟨f, g⟩ = ∫ conj(f) g dμ on a fixed grid.
pub fn inner(mu: &BernsteinSzegoMeasure, f: &[C64], g: &[C64], m: usize) -> C64 {
    trapezoid(
        |t| {
            let z = C64::from_polar(1.0, t);
            horner(f, z).conj() * horner(g, z) * mu.weight(t)
        },
        m,
    )
}

/// Monic orthogonal polynomials of degree 0…n by Gram–Schmidt on quadrature moments.
pub fn gram_schmidt_monic(mu: &BernsteinSzegoMeasure, n: usize, m: usize) -> Vec<Vec<C64>> {
    let w: Vec<f64> = grid(m).map(|t| mu.weight(t)).collect();
    let moments: Vec<C64> = (0..=n)
        .map(|j| {
            let terms: Vec<C64> = w
                .iter()
                .enumerate()
                .map(|(i, &wi)| C64::from_polar(wi, -TAU * ((i * j) % m) as f64 / m as f64))
                .collect();
            pairwise_sum(&terms) / m as f64
        })
        .collect();
    // ⟨z^i, z^k⟩ = c_{i−k}, with c_{−j} = conj(c_j).
    let gram = |i: usize, k: usize| {
        if i >= k {
            moments[i - k]
        } else {
            moments[k - i].conj()
        }
    };
    let mut out = vec![vec![C64::new(1.0, 0.0)]];
    for deg in 1..=n {
        let a = DMatrix::from_fn(deg, deg, &gram);
        let b = DVector::from_fn(deg, |i, _| -gram(i, deg));
        let x = a
            .lu()
            .solve(&b)
            .expect("Gram matrix of a positive measure is invertible");
        let mut c: Vec<C64> = x.iter().copied().collect();
        c.push(C64::new(1.0, 0.0));
        out.push(c);
    }
    out
}

/// Real cosine polynomial P(θ) = Σ a_l cos lθ.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigWeightPoly {
    coeffs: Vec<f64>,
}

impl TrigWeightPoly {
    pub fn new(coeffs: Vec<f64>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    /// cos kθ.
    pub fn cos(k: usize) -> Self {
        let mut c = vec![0.0; k + 1];
        c[k] = 1.0;
        Self::new(c)
    }

    /// 1 − cos kθ.
    pub fn one_minus_cos(k: usize) -> Self {
        Self::constant(1.0).sub(&Self::cos(k))
    }

    /// 1 + cos kθ.
    pub fn one_plus_cos(k: usize) -> Self {
        Self::constant(1.0).add(&Self::cos(k))
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1 && *self.coeffs.last().unwrap() == 0.0 {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.coeffs.push(0.0);
        }
    }

    /// (a₀, …, a_n).
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, l: usize) -> f64 {
        self.coeffs.get(l).copied().unwrap_or(0.0)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, theta: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(l, a)| a * (l as f64 * theta).cos())
            .sum()
    }

    /// P(0) = Σ a_l.
    pub fn at_zero(&self) -> f64 {
        self.coeffs.iter().sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|l| self.coeff(l) + other.coeff(l)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * s).collect())
    }

    /// Product via cos a·cos b = ½cos(a+b) + ½cos(a−b).
    pub fn mul(&self, other: &Self) -> Self {
        let mut c = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += 0.5 * a * b;
                c[i.abs_diff(j)] += 0.5 * a * b;
            }
        }
        Self::new(c)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(1.0), |acc, _| acc.mul(self))
    }

    /// Minimum of P over an `m`-point grid.
    pub fn grid_min(&self, m: usize) -> f64 {
        grid(m).map(|t| self.eval(t)).fold(f64::INFINITY, f64::min)
    }

    /// P(0) = 0 and P ≥ 0 on the sampled grid.
    pub fn szego_admissible(&self) -> bool {
        self.at_zero().abs() < 1e-12 && self.grid_min(4096) >= -1e-12
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;
    use std::f64::consts::PI;

    #[test]
    fn lebesgue() {
        let mu = bs_measure(&VerblunskySequence::zero());
        for t in [0.0, 1.0, 3.0] {
            assert_eq!(mu.weight(t), 1.0);
        }
        assert_eq!(fourier_log(&mu, 3, 1e-12).unwrap(), C64::new(0.0, 0.0));
        assert!(moment_oracle(&mu, 1, 1e-12).unwrap().norm() < 1e-15);
        let p = TrigWeightPoly::one_minus_cos(2);
        assert_eq!(integrate_z(&mu, &p, 1e-12).unwrap(), 0.0);
    }

    #[test]
    fn single_coefficient_weight() {
        let mu = bs_measure(&VerblunskySequence::from_real(&[0.5]).unwrap());
        assert!((mu.weight(0.0) - 3.0).abs() < 1e-14);
        assert!((mu.weight(PI) - 1.0 / 3.0).abs() < 1e-14);
        let t = 0.7;
        let direct = 0.75 / (C64::new(1.0, 0.0) - 0.5 * C64::from_polar(1.0, t)).norm_sqr();
        assert!((mu.weight(t) - direct).abs() < 1e-14);
        assert!((fourier_log(&mu, 0, 1e-12).unwrap().re - 0.75f64.ln()).abs() < 1e-12);
        assert!((fourier_log(&mu, 1, 1e-12).unwrap() - C64::new(0.5, 0.0)).norm() < 1e-12);
        let z1 = integrate_z(&mu, &TrigWeightPoly::one_minus_cos(1), 1e-12).unwrap();
        assert!((z1 - (0.75f64.ln() - 0.5)).abs() < 1e-12);
        assert!((moment_oracle(&mu, 0, 1e-12).unwrap().re - 1.0).abs() < 1e-12);
        assert!((moment_oracle(&mu, 1, 1e-12).unwrap() - C64::new(0.5, 0.0)).norm() < 1e-12);
        let d = szego_taylor(&mu, 3, 1e-12).unwrap();
        assert!((d[0] + C64::new(0.5, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn normalization_and_szego_sum_rule() {
        let mut r = sample::rng(11);
        for _ in 0..10 {
            let s = sample::sequence_up_to(&mut r, 8, 0.9);
            let mu = bs_measure(&s);
            let mass = moment_oracle(&mu, 0, 1e-13).unwrap();
            assert!((mass - C64::new(1.0, 0.0)).norm() < 1e-11);
            let w0 = fourier_log(&mu, 0, 1e-12).unwrap().re;
            let sum: f64 = (0..s.len()).map(|j| s.rho2(j).ln()).sum();
            assert!((w0 - sum).abs() < 1e-10);
        }
    }

    #[test]
    fn grid_doubling_is_converged_at_1024() {
        let mut r = sample::rng(13);
        for _ in 0..10 {
            let s = sample::sequence_up_to(&mut r, 8, 0.3);
            let mu = bs_measure(&s);
            let p = TrigWeightPoly::one_minus_cos(1).pow(2);
            let f = |t: f64| C64::new(p.eval(t) * mu.weight(t).ln(), 0.0);
            let a = trapezoid(f, 1 << 10);
            let b = trapezoid(f, 1 << 11);
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn adaptive_grid_handles_zeros_near_the_circle() {
        let mut r = sample::rng(13);
        for _ in 0..10 {
            let s = sample::sequence_up_to(&mut r, 8, 0.9);
            let mu = bs_measure(&s);
            let p = TrigWeightPoly::one_minus_cos(1).pow(2);
            let a = integrate_z(&mu, &p, 1e-12).unwrap();
            let f = |t: f64| C64::new(p.eval(t) * mu.weight(t).ln(), 0.0);
            assert!((trapezoid(f, 1 << 19).re - a).abs() < 1e-10);
        }
    }

    #[test]
    fn hermitian_moments() {
        let mut r = sample::rng(17);
        let s = sample::sequence(&mut r, 4, 0.7);
        let mu = bs_measure(&s);
        for n in 1..6 {
            let a = moment_oracle(&mu, n, 1e-12).unwrap();
            let b = moment_oracle(&mu, -n, 1e-12).unwrap();
            assert!((a - b.conj()).norm() < 1e-12);
        }
    }

    #[test]
    fn integrate_z_is_linear() {
        let mut r = sample::rng(19);
        let s = sample::sequence(&mut r, 5, 0.8);
        let mu = bs_measure(&s);
        let p = TrigWeightPoly::one_minus_cos(1);
        let q = TrigWeightPoly::one_minus_cos(3).scale(0.5);
        let tol = 1e-11;
        let lhs = integrate_z(&mu, &p.add(&q), tol).unwrap();
        let rhs = integrate_z(&mu, &p, tol).unwrap() + integrate_z(&mu, &q, tol).unwrap();
        assert!((lhs - rhs).abs() < 2.0 * tol);
    }

    #[test]
    fn trig_algebra() {
        let p = TrigWeightPoly::cos(1).pow(4);
        assert_eq!(p.coeffs(), &[0.375, 0.0, 0.5, 0.0, 0.125]);
        let p = TrigWeightPoly::one_minus_cos(1).pow(2);
        assert_eq!(p.coeffs(), &[1.5, -2.0, 0.5]);
        assert!(p.szego_admissible());
        assert!(!TrigWeightPoly::cos(1).szego_admissible());
        assert_eq!(TrigWeightPoly::new(vec![0.0, 0.0]).degree(), 0);
    }

    #[test]
    fn exp_series_matches_exp() {
        // exp(z) = Σ z^k / k!
        let f = [
            C64::new(0.0, 0.0),
            C64::new(1.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
        ];
        let g = exp_series(&f);
        assert!((g[3].re - 1.0 / 6.0).abs() < 1e-16);
    }
}
