//! Monic orthogonal polynomials Φₙ and their coefficients a_{n,m}.
//!
//! Coefficients are available through four independent formulas: the
//! coefficient form of the Szegő recursion, nested sums of G-bricks, the
//! β-chain form, and the composition form over index chains. The last three
//! are verification-grade and come with no complexity guarantees.

use crate::{Error, Result, VerblunskySequence, C64};
use std::str::FromStr;

/// Φₙ stored as ascending coefficients (a_{n,0}, …, a_{n,n−1}, 1).
#[derive(Debug, Clone, PartialEq)]
pub struct MonicOpucPolynomial {
    coeffs: Vec<C64>,
}

impl MonicOpucPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// Horner evaluation.
    pub fn eval(&self, z: C64) -> C64 {
        horner(&self.coeffs, z)
    }

    /// Coefficients of Φₙ*(z) = zⁿ·conj(Φₙ(1/conj z)).
    pub fn reversed(&self) -> Vec<C64> {
        reversed(&self.coeffs)
    }
}

/// Conjugate-reversal of a coefficient vector of formal degree `c.len() - 1`.
pub fn reversed(c: &[C64]) -> Vec<C64> {
    c.iter().rev().map(|x| x.conj()).collect()
}

/// Horner evaluation of ascending coefficients.
pub fn horner(c: &[C64], z: C64) -> C64 {
    c.iter().rev().fold(C64::new(0.0, 0.0), |acc, &x| acc * z + x)
}

/// Φ₀ … Φₙ from the Szegő recursion Φ_{k+1} = zΦ_k − conj(α_k)Φ_k*.
pub fn build_polynomials(seq: &VerblunskySequence, n: usize) -> Vec<MonicOpucPolynomial> {
    let mut out = Vec::with_capacity(n + 1);
    let mut cur = vec![C64::new(1.0, 0.0)];
    out.push(MonicOpucPolynomial { coeffs: cur.clone() });
    for k in 0..n {
        let ak = seq.at(k as i64).conj();
        let mut next = vec![C64::new(0.0, 0.0); k + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            let shifted = if i >= 1 { cur[i - 1] } else { C64::new(0.0, 0.0) };
            let rev = if i <= k { cur[k - i].conj() } else { C64::new(0.0, 0.0) };
            *slot = shifted - ak * rev;
        }
        cur = next;
        out.push(MonicOpucPolynomial { coeffs: cur.clone() });
    }
    out
}

/// Index ordering of the nested brick sums; both give the same value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BrickOrder {
    /// l_s outside k_s at every level.
    LFirst,
    /// k_s outside l_s at every level.
    KFirst,
}

/// Which formula computes a_{n,m}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Recursion,
    Bricks(BrickOrder),
    BetaChain,
    Gz,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Recursion,
        Method::Bricks(BrickOrder::LFirst),
        Method::Bricks(BrickOrder::KFirst),
        Method::BetaChain,
        Method::Gz,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Recursion => "recursion",
            Method::Bricks(BrickOrder::LFirst) => "bricks",
            Method::Bricks(BrickOrder::KFirst) => "bricks-kfirst",
            Method::BetaChain => "beta-chain",
            Method::Gz => "gz",
        }
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .iter()
            .copied()
            .find(|m| m.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::Unknown(s.to_string()))
    }
}

#[inline]
fn beta(seq: &VerblunskySequence, s: i64, t: i64) -> C64 {
    seq.at(s).conj() * seq.at(t)
}

/// The brick G(k,l) = −conj(α_{l−1}) + Σ_{j<k} conj(α_{j+l})αⱼ − conj(α_l)Σ_{1≤j<l} αⱼconj(α_{j−1}).
pub fn brick_g(seq: &VerblunskySequence, k: usize, l: usize) -> C64 {
    let (k, l) = (k as i64, l as i64);
    let mut g = -seq.at(l - 1).conj();
    for j in 0..k {
        g += seq.at(j + l).conj() * seq.at(j);
    }
    let mut inner = C64::new(0.0, 0.0);
    for j in 1..l {
        inner += seq.at(j) * seq.at(j - 1).conj();
    }
    g - seq.at(l).conj() * inner
}

/// a_{n,m} by the chosen method.
pub fn coefficient(seq: &VerblunskySequence, n: usize, m: usize, method: Method) -> Result<C64> {
    if m > n {
        return Err(Error::Index { index: m, limit: n });
    }
    if m == n {
        return Ok(C64::new(1.0, 0.0));
    }
    let (k0, l0) = (m as i64, (n - m) as i64);
    Ok(match method {
        Method::Recursion => build_polynomials(seq, n)[n].coeffs[m],
        // The brick expansion only holds for m ≥ 1; a_{n,0} = −conj(α_{n−1}).
        Method::Bricks(_) if m == 0 => -seq.at(n as i64 - 1).conj(),
        Method::Bricks(order) => {
            let mut total = brick_g(seq, m, n - m);
            for p in 1..l0 {
                total += bricks_level(seq, p, 1, k0, l0, C64::new(1.0, 0.0), order);
            }
            total
        }
        Method::BetaChain => {
            let mut total = C64::new(0.0, 0.0);
            for p in 0..l0 {
                total += chain_level(seq, p, 1, k0, l0, C64::new(1.0, 0.0));
            }
            total
        }
        Method::Gz => gz_level(seq, l0, k0 + l0, C64::new(1.0, 0.0)),
    })
}

// Level s of the p-fold brick sum: l_s, k_s range over [p−s+1, prev−1].
fn bricks_level(
    seq: &VerblunskySequence,
    p: i64,
    s: i64,
    k_prev: i64,
    l_prev: i64,
    acc: C64,
    order: BrickOrder,
) -> C64 {
    if s > p {
        return acc * brick_g(seq, k_prev as usize, l_prev as usize);
    }
    let lo = p - s + 1;
    let mut total = C64::new(0.0, 0.0);
    let mut visit = |k: i64, l: i64| {
        let f = beta(seq, k + l_prev, k + l);
        total += bricks_level(seq, p, s + 1, k, l, acc * f, order);
    };
    match order {
        BrickOrder::LFirst => {
            for l in lo..l_prev {
                for k in lo..k_prev {
                    visit(k, l);
                }
            }
        }
        BrickOrder::KFirst => {
            for k in lo..k_prev {
                for l in lo..l_prev {
                    visit(k, l);
                }
            }
        }
    }
    total
}

// Level s of the β-chain: k_s over [p−s, k_{s−1}−1], l_s over [p−s+1, l_{s−1}−1].
fn chain_level(seq: &VerblunskySequence, p: i64, s: i64, k_prev: i64, l_prev: i64, acc: C64) -> C64 {
    if s > p {
        let mut tail = C64::new(0.0, 0.0);
        for j in 0..=k_prev {
            tail += beta(seq, j + l_prev - 1, j - 1);
        }
        return acc * tail;
    }
    let mut total = C64::new(0.0, 0.0);
    for k in (p - s)..k_prev {
        for l in (p - s + 1)..l_prev {
            let f = beta(seq, k + l_prev, k + l);
            total += chain_level(seq, p, s + 1, k, l, acc * f);
        }
    }
    total
}

// Compositions a₁+…+a_j of the remaining weight with k_{i+1} < k_i − a_i.
fn gz_level(seq: &VerblunskySequence, remaining: i64, upper: i64, acc: C64) -> C64 {
    if remaining == 0 {
        return acc;
    }
    let top = upper.min(seq.len() as i64);
    let mut total = C64::new(0.0, 0.0);
    for a in 1..=remaining {
        for k in (a - 1)..top {
            let f = seq.at(k).conj() * seq.at(k - a);
            if f == C64::new(0.0, 0.0) {
                continue;
            }
            total += gz_level(seq, remaining - a, k - a, acc * f);
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn zero_sequence_gives_monomials() {
        let p = build_polynomials(&VerblunskySequence::zero(), 3);
        assert_eq!(p[3].coeffs(), &[c(0., 0.), c(0., 0.), c(0., 0.), c(1., 0.)]);
        assert_eq!(p[3].reversed(), vec![c(1., 0.), c(0., 0.), c(0., 0.), c(0., 0.)]);
    }

    #[test]
    fn one_step() {
        let s = VerblunskySequence::from_real(&[0.5]).unwrap();
        let p = build_polynomials(&s, 1);
        assert_eq!(p[1].coeffs(), &[c(-0.5, 0.), c(1., 0.)]);
        assert_eq!(p[1].reversed(), vec![c(1., 0.), c(-0.5, 0.)]);
    }

    #[test]
    fn reversal_is_an_involution() {
        let mut r = sample::rng(3);
        let s = sample::sequence(&mut r, 5, 0.8);
        let p = &build_polynomials(&s, 5)[5];
        assert_eq!(reversed(&p.reversed()), p.coeffs().to_vec());
        assert_eq!(p.reversed()[0], c(1., 0.));
    }

    #[test]
    fn brick_g_cases() {
        let z = VerblunskySequence::zero();
        for k in 0..4 {
            for l in 1..4 {
                assert_eq!(brick_g(&z, k, l), c(0., 0.));
            }
        }
        let s = VerblunskySequence::explicit(&[c(0.3, 0.2)]).unwrap();
        for k in 1..4 {
            assert!((brick_g(&s, k, 1) + c(0.3, -0.2)).norm() < 1e-16);
        }
        let mut r = sample::rng(5);
        let s = sample::sequence(&mut r, 6, 0.7);
        for k in 0..8usize {
            let direct: C64 = (0..=k as i64).map(|j| s.at(j).conj() * s.at(j - 1)).sum();
            assert!((brick_g(&s, k, 1) - direct).norm() < 1e-14);
        }
    }

    #[test]
    fn low_order_coefficients() {
        let mut r = sample::rng(7);
        let s = sample::sequence(&mut r, 6, 0.7);
        for n in 1..9 {
            for method in Method::ALL {
                let a0 = coefficient(&s, n, 0, method).unwrap();
                assert!((a0 + s.at(n as i64 - 1).conj()).norm() < 1e-13, "{method:?}");
                let top = coefficient(&s, n, n - 1, method).unwrap();
                let expect: C64 = (0..n as i64).map(|j| s.at(j).conj() * s.at(j - 1)).sum();
                assert!((top - expect).norm() < 1e-13, "{method:?}");
                assert_eq!(coefficient(&s, n, n, method).unwrap(), c(1., 0.));
            }
        }
        assert!(coefficient(&s, 2, 3, Method::Recursion).is_err());
    }

    #[test]
    fn methods_agree_on_hand_sized_case() {
        let s = VerblunskySequence::explicit(&[c(0., 0.3), c(0.2, 0.)]).unwrap();
        for n in 0..5 {
            for m in 0..=n {
                let r = coefficient(&s, n, m, Method::Recursion).unwrap();
                for method in Method::ALL {
                    let v = coefficient(&s, n, m, method).unwrap();
                    assert!((v - r).norm() < 1e-14, "n={n} m={m} {method:?}");
                }
            }
        }
    }

    #[test]
    fn method_names_parse() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("nope".parse::<Method>().is_err());
    }
}
