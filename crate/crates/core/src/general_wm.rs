//! Combinatorial expansion of the logarithmic moments.
//!
//! Holds unordered decompositions, partitions of ordered tuples, the
//! single-index series α^{(r₁+⋯+r_n)}, the general w_m formula and its
//! coefficient sums, cosine powers, Fejér–Riesz factorization, shift-operator
//! norm identities and two classical inequalities used as spot checks.

use crate::logmoments::w0;
use crate::measures::{bs_measure, integrate_z, TrigWeightPoly};
use crate::{Error, Result, VerblunskySequence, C64};
use nalgebra::{DMatrix, Schur};
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

/// Exact rational used for every combinatorial coefficient.
pub type Rational = Ratio<i128>;

/// Largest order accepted by [`w_general`].
pub const MAX_W_ORDER: usize = 8;

/// Largest order accepted by the coefficient sums.
pub const MAX_COEFF_ORDER: usize = 12;

fn factorial(n: usize) -> i128 {
    (1..=n as i128).product()
}

fn binomial(n: usize, k: usize) -> i128 {
    if k > n {
        return 0;
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

fn sign(s: usize) -> i128 {
    if s.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn to_f64(r: Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// A formal ordered sum r₁+⋯+r_n of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrderedTuple(Vec<usize>);

impl OrderedTuple {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::Spec(format!("tuple entries must be positive: {parts:?}")));
        }
        Ok(Self(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }
}

/// Split of an ordered tuple into contiguous segments.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TuplePartition {
    parent: OrderedTuple,
    /// Exclusive end index of each segment.
    ends: Vec<usize>,
    good: bool,
}

impl TuplePartition {
    fn from_mask(parent: &OrderedTuple, mask: u64) -> Self {
        let n = parent.len();
        let mut ends: Vec<usize> = (1..n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        ends.push(n);
        let mut start = 0;
        let mut plus = Vec::with_capacity(ends.len());
        for &e in &ends {
            plus.push(e - start - 1);
            start = e;
        }
        let good = plus.windows(2).all(|w| w[0] >= w[1]);
        Self {
            parent: parent.clone(),
            ends,
            good,
        }
    }

    pub fn parent(&self) -> &OrderedTuple {
        &self.parent
    }

    /// Number of segments j.
    pub fn j(&self) -> usize {
        self.ends.len()
    }

    /// Plus-sign counts are non-increasing from left to right.
    pub fn is_good(&self) -> bool {
        self.good
    }

    pub fn segments(&self) -> Vec<&[usize]> {
        let mut start = 0;
        self.ends
            .iter()
            .map(|&e| {
                let s = &self.parent.0[start..e];
                start = e;
                s
            })
            .collect()
    }
}

/// Multisets of `s` positive integers summing to `m`, each listed non-increasing.
pub fn decompositions(m: usize, s: usize) -> Vec<Vec<usize>> {
    fn rec(m: usize, s: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if s == 0 {
            if m == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for p in (1..=m.min(max)).rev() {
            cur.push(p);
            rec(m - p, s - 1, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if s >= 1 && s <= m {
        rec(m, s, m, &mut Vec::new(), &mut out);
    }
    out
}

/// Distinct orderings of a multiset, in lexicographic order.
pub fn distinct_permutations(r: &[usize]) -> Vec<Vec<usize>> {
    let mut cur = r.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// Every partition of `tuple` into `j` segments, optionally only the good ones.
pub fn partitions(tuple: &OrderedTuple, j: usize, good_only: bool) -> Vec<TuplePartition> {
    all_partitions(tuple)
        .into_iter()
        .filter(|p| p.j() == j && (!good_only || p.good))
        .collect()
}

/// All 2^{n−1} partitions of `tuple`, ordered by separator mask.
pub fn all_partitions(tuple: &OrderedTuple) -> Vec<TuplePartition> {
    let n = tuple.len();
    (0..1u64 << (n - 1))
        .map(|mask| TuplePartition::from_mask(tuple, mask))
        .collect()
}

// Summand of α^{(r)} at outer index k: the l-chain l₁ ≤ r₁, l_ν ≤ l_{ν−1} + r_ν.
fn segment_summand(seq: &VerblunskySequence, r: &[usize], k: i64, prune: bool, count: &mut u64) -> C64 {
    #[allow(clippy::too_many_arguments)]
    fn rec(
        seq: &VerblunskySequence,
        r: &[usize],
        k: i64,
        t: usize,
        prev: usize,
        acc: C64,
        prune: bool,
        count: &mut u64,
    ) -> C64 {
        if t == r.len() {
            *count += 1;
            return acc;
        }
        if prune && acc == C64::new(0.0, 0.0) {
            return acc;
        }
        let hi = if t == 1 { r[0] } else { prev + r[t - 1] };
        let mut total = C64::new(0.0, 0.0);
        for l in 1..=hi {
            let li = l as i64;
            let f = seq.at(k + li + r[t] as i64 - 1) * seq.at(k + li - 1).conj();
            total += rec(seq, r, k, t + 1, l, acc * f, prune, count);
        }
        total
    }
    let head = seq.at(k + r[0] as i64 - 1) * seq.at(k - 1).conj();
    rec(seq, r, k, 1, 0, head, prune, count)
}

fn segment_values(seq: &VerblunskySequence, r: &[usize]) -> Vec<C64> {
    let mut count = 0;
    (0..=seq.len() as i64)
        .map(|k| segment_summand(seq, r, k, true, &mut count))
        .collect()
}

/// α^{(r₁+⋯+r_n)} = Σ_k α_{k+r₁−1}conj(α_{k−1})·Π_{ν≥2} α_{k+l_{ν−1}+r_ν−1}conj(α_{k+l_{ν−1}−1}).
pub fn alpha_series(seq: &VerblunskySequence, segment: &OrderedTuple) -> C64 {
    segment_values(seq, segment.parts()).into_iter().sum()
}

/// The series value together with the number of distinct series it enumerates.
pub fn alpha_series_counted(seq: &VerblunskySequence, segment: &OrderedTuple) -> (C64, u64) {
    let mut total = C64::new(0.0, 0.0);
    let mut count = 0;
    for k in 0..=seq.len() as i64 {
        let mut c = 0;
        total += segment_summand(seq, segment.parts(), k, false, &mut c);
        if k == 0 {
            count = c;
        }
    }
    (total, count)
}

/// Number of series in α^{(r₁+⋯+r_n)}, counted over the l-chain ranges.
pub fn series_count(tuple: &OrderedTuple) -> u64 {
    let r = tuple.parts();
    if r.len() == 1 {
        return 1;
    }
    // ways[l] = number of chains whose latest index equals l.
    let mut ways: BTreeMap<usize, u64> = (1..=r[0]).map(|l| (l, 1)).collect();
    for &rt in &r[1..r.len() - 1] {
        let mut next = BTreeMap::new();
        for (&l, &w) in &ways {
            for l2 in 1..=l + rt {
                *next.entry(l2).or_insert(0) += w;
            }
        }
        ways = next;
    }
    ways.values().sum()
}

/// The case-split closed form for the series count as it is usually displayed.
/// It agrees with [`series_count`] for n ≤ 2 and n = 4 only.
pub fn series_count_displayed(tuple: &OrderedTuple) -> u64 {
    let r = tuple.parts();
    let n = r.len();
    match n {
        1 => 1,
        2 => r[0] as u64,
        3 => (1..=r[0]).flat_map(|k| (1..=k).map(move |l| (l + r[1]) as u64)).sum(),
        _ => {
            let mid: usize = r[1..n - 2].iter().sum();
            (1..=r[0])
                .flat_map(|k| (1..=k + mid).map(move |l| (l + r[n - 2]) as u64))
                .sum()
        }
    }
}

/// One term of the general w_m expansion: coefficient times a contractive product.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WTerm {
    /// Number of parts s of the decomposition.
    pub parts: usize,
    #[serde(serialize_with = "ser_rational")]
    pub coeff: Rational,
    pub segments: Vec<Vec<usize>>,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// The terms of w_m: distinct orderings of every decomposition, split into good
/// partitions, with coefficient (−1)^s (j−1)! / (Π ℓ! · orderings of equal-length segments).
pub fn w_general_terms(m: usize) -> Result<Vec<WTerm>> {
    if m == 0 || m > MAX_COEFF_ORDER {
        return Err(Error::UnsupportedOrder(m));
    }
    let mut out = Vec::new();
    for s in 1..=m {
        for r in decompositions(m, s) {
            for sigma in distinct_permutations(&r) {
                let tuple = OrderedTuple(sigma);
                for part in all_partitions(&tuple) {
                    if !part.good {
                        continue;
                    }
                    let segs: Vec<Vec<usize>> = part.segments().iter().map(|s| s.to_vec()).collect();
                    out.push(WTerm {
                        parts: s,
                        coeff: term_coefficient(s, &segs),
                        segments: segs,
                    });
                }
            }
        }
    }
    Ok(out)
}

fn term_coefficient(s: usize, segs: &[Vec<usize>]) -> Rational {
    let j = segs.len();
    let mut mult: BTreeMap<&Vec<usize>, usize> = BTreeMap::new();
    for sg in segs {
        *mult.entry(sg).or_insert(0) += 1;
    }
    let identical: i128 = mult.values().map(|&v| factorial(v)).product();
    // Distinct orderings of segments of equal length count the same product once.
    let mut by_len: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (sg, &v) in &mult {
        by_len.entry(sg.len()).or_default().push(v);
    }
    let orderings: i128 = by_len
        .values()
        .map(|vs| factorial(vs.iter().sum()) / vs.iter().map(|&v| factorial(v)).product::<i128>())
        .product();
    Rational::new(sign(s) * factorial(j - 1), identical * orderings)
}

/// w_m through the general single-index expansion, for 1 ≤ m ≤ 8.
pub fn w_general(seq: &VerblunskySequence, m: usize) -> Result<C64> {
    if m == 0 || m > MAX_W_ORDER {
        return Err(Error::UnsupportedOrder(m));
    }
    let terms = w_general_terms(m)?;
    let mut cache: HashMap<Vec<usize>, Vec<C64>> = HashMap::new();
    let kmax = seq.len() + 1;
    let mut total = C64::new(0.0, 0.0);
    for t in &terms {
        for sg in &t.segments {
            if !cache.contains_key(sg) {
                cache.insert(sg.clone(), segment_values(seq, sg));
            }
        }
        let mut acc = C64::new(0.0, 0.0);
        for k in 0..kmax {
            let p: C64 = t.segments.iter().map(|sg| cache[sg][k]).product();
            acc += p;
        }
        total += acc * to_f64(t.coeff);
    }
    Ok(total)
}

/// Signed sum of the coefficients of all series with 2s factors in w_m.
pub fn coeff_sum_signed(m: usize, s: usize) -> Result<Rational> {
    if s == 0 || s > m {
        return Ok(Rational::zero());
    }
    let mut total = Rational::zero();
    for t in w_general_terms(m)?.into_iter().filter(|t| t.parts == s) {
        let n: u64 = t
            .segments
            .iter()
            .map(|sg| series_count(&OrderedTuple(sg.clone())))
            .product();
        total += t.coeff * Rational::from_integer(n as i128);
    }
    Ok(total)
}

/// C_{m,s} in the magnitude convention: C_{m,1} = 1, C_{m,2} = [m/2](m+1) or (m²−1)/2.
/// Equals (−1)^s times [`coeff_sum_signed`].
pub fn coeff_sum(m: usize, s: usize) -> Result<Rational> {
    Ok(coeff_sum_signed(m, s)? * Rational::from_integer(sign(s)))
}

/// The coefficient sums as literally stated: closed forms for s ≤ 2, and for
/// s ≥ 3 the partition sum over j ≤ s−1 with the displayed series count.
pub fn coeff_sum_stated(m: usize, s: usize) -> Result<Rational> {
    if m > MAX_COEFF_ORDER {
        return Err(Error::UnsupportedOrder(m));
    }
    if s == 0 || s > m {
        return Ok(Rational::zero());
    }
    if s == 1 {
        return Ok(Rational::one());
    }
    if s == 2 {
        let mi = m as i128;
        return Ok(if m % 2 == 1 {
            Rational::from_integer((mi / 2) * (mi + 1))
        } else {
            Rational::new(mi * mi - 1, 2)
        });
    }
    let mut total = Rational::zero();
    for r in decompositions(m, s) {
        for sigma in distinct_permutations(&r) {
            let tuple = OrderedTuple(sigma);
            for part in all_partitions(&tuple) {
                let j = part.j();
                if !part.good || j > s - 1 {
                    continue;
                }
                let segs: Vec<Vec<usize>> = part.segments().iter().map(|s| s.to_vec()).collect();
                let mut mult: BTreeMap<&Vec<usize>, usize> = BTreeMap::new();
                for sg in &segs {
                    *mult.entry(sg).or_insert(0) += 1;
                }
                let cj: i128 = if j == 1 {
                    1
                } else {
                    mult.values().map(|&v| factorial(v)).product()
                };
                let n: u64 = segs
                    .iter()
                    .map(|sg| series_count_displayed(&OrderedTuple(sg.clone())))
                    .product();
                total += Rational::new(sign(s) * factorial(j - 1) * n as i128, cj);
            }
        }
    }
    Ok(total)
}

/// Exact cosine coefficients of cosⁿθ, index = frequency.
pub fn cos_power_exact(n: usize) -> Vec<Rational> {
    let half = Rational::new(1, 2);
    let mut cur = vec![Rational::one()];
    for k in 1..=n {
        let mut next = vec![Rational::zero(); k + 1];
        for (j, &c) in cur.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if j == 0 {
                next[1] += c;
            } else {
                next[j - 1] += c * half;
                next[j + 1] += c * half;
            }
        }
        cur = next;
    }
    cur
}

/// cosⁿθ as a cosine polynomial.
pub fn cos_power(n: usize) -> TrigWeightPoly {
    TrigWeightPoly::new(cos_power_exact(n).into_iter().map(to_f64).collect())
}

/// Exact cosine coefficients of (1 − cosθ)ⁿ = Σ_l (−1)^l C(n,l) cos^l θ.
pub fn one_minus_cos_power_exact(n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n + 1];
    for l in 0..=n {
        let w = Rational::from_integer(sign(l) * binomial(n, l));
        for (f, c) in cos_power_exact(l).into_iter().enumerate() {
            out[f] += w * c;
        }
    }
    out
}

/// Real polynomial Q(z) = b₀ + b₁z + ⋯ + b_k z^k.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralFactor {
    coeffs: Vec<f64>,
}

impl SpectralFactor {
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &b| acc * z + b)
    }

    /// max over an m-point grid of ||Q(e^{iθ})|² − P(θ)|.
    pub fn pointwise_residual(&self, p: &TrigWeightPoly, m: usize) -> f64 {
        (0..m)
            .map(|i| {
                let t = std::f64::consts::TAU * i as f64 / m as f64;
                (self.eval(C64::from_polar(1.0, t)).norm_sqr() - p.eval(t)).abs()
            })
            .fold(0.0, f64::max)
    }

    /// Largest defect in a₀ = Σ b_l² and a_j = 2Σ_l b_l b_{l+j}.
    pub fn coefficient_residual(&self, p: &TrigWeightPoly) -> f64 {
        let b = &self.coeffs;
        let k = b.len().max(p.coeffs().len());
        let at = |l: usize| b.get(l).copied().unwrap_or(0.0);
        (0..k)
            .map(|j| {
                let auto: f64 = (0..k).map(|l| at(l) * at(l + j)).sum();
                let expect = if j == 0 { auto } else { 2.0 * auto };
                (expect - p.coeff(j)).abs()
            })
            .fold(0.0, f64::max)
    }
}

const FR_GRID: usize = 4096;
const FR_GATE: f64 = 1e-10;

/// Q with real coefficients and |Q(e^{iθ})|² = P(θ), normalized so the first
/// nonzero coefficient is positive.
pub fn fejer_riesz(p: &TrigWeightPoly) -> Result<SpectralFactor> {
    let a = p.coeffs();
    if a.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite(0));
    }
    let min = p.grid_min(FR_GRID);
    if min < -1e-12 {
        return Err(Error::NotNonnegative(min));
    }
    let k = p.degree();
    if k == 0 {
        return Ok(SpectralFactor {
            coeffs: vec![a[0].max(0.0).sqrt()],
        });
    }
    // z^k L(z), L(z) = ½Σ a_l (z^l + z^{−l}), as a monic degree-2k polynomial.
    let mut c = vec![0.0; 2 * k + 1];
    c[k] = a[0];
    for l in 1..=k {
        c[k + l] = a[l] / 2.0;
        c[k - l] = a[l] / 2.0;
    }
    let roots = polynomial_roots(&c).ok_or(Error::FactorizationUnstable(f64::INFINITY))?;
    let mut best = f64::INFINITY;
    for threshold in [0.1, 0.03, 0.01, 1e-3] {
        if let Some(q) = factor_from_roots(p, &roots, k, threshold) {
            let res = q.pointwise_residual(p, FR_GRID);
            if res < FR_GATE {
                return Ok(q);
            }
            best = best.min(res);
        }
    }
    Err(Error::FactorizationUnstable(best))
}

// Roots of Σ c_j z^j via companion eigenvalues. The QR iteration can cycle on
// symmetric root sets (double roots at the 4th roots of unity, or at ±1), so
// the iteration count is capped and the variable moved to z = s·w + t on failure.
fn polynomial_roots(c: &[f64]) -> Option<Vec<C64>> {
    let deg = c.len() - 1;
    for (s, t) in [(1.0, 0.0), (1.07, 0.0), (1.0, 0.11), (0.93, -0.07), (1.19, 0.23)] {
        // Coefficients of c(s·w + t) by Horner over polynomials in w.
        let mut cs = vec![0.0; deg + 1];
        for &x in c.iter().rev() {
            let mut next = vec![0.0; deg + 1];
            for j in 0..deg {
                next[j + 1] += s * cs[j];
                next[j] += t * cs[j];
            }
            next[deg] += t * cs[deg];
            next[0] += x;
            cs = next;
        }
        let lead = cs[deg];
        let companion = DMatrix::from_fn(deg, deg, |i, j| {
            if i == 0 {
                -cs[deg - 1 - j] / lead
            } else if i == j + 1 {
                1.0
            } else {
                0.0
            }
        });
        if let Some(schur) = Schur::try_new(companion, f64::EPSILON, 2_000) {
            return Some(schur.complex_eigenvalues().iter().map(|w| w * s + t).collect());
        }
    }
    None
}

fn factor_from_roots(p: &TrigWeightPoly, roots: &[C64], k: usize, threshold: f64) -> Option<SpectralFactor> {
    let (near, far): (Vec<C64>, Vec<C64>) = roots.iter().partition(|z| (z.norm() - 1.0).abs() < threshold);
    let mut chosen: Vec<C64> = far.into_iter().filter(|z| z.norm() < 1.0).collect();
    // Single-linkage clusters of roots close to the circle.
    let mut label: Vec<usize> = (0..near.len()).collect();
    for i in 0..near.len() {
        for j in 0..i {
            if (near[i] - near[j]).norm() < threshold {
                let (from, to) = (label[i], label[j]);
                for x in label.iter_mut() {
                    if *x == from {
                        *x = to;
                    }
                }
            }
        }
    }
    let mut clusters: BTreeMap<usize, Vec<C64>> = BTreeMap::new();
    for (i, &l) in label.iter().enumerate() {
        clusters.entry(l).or_default().push(near[i]);
    }
    for members in clusters.values() {
        if members.len() % 2 == 1 {
            return None;
        }
        let centroid: C64 = members.iter().sum::<C64>() / members.len() as f64;
        let on_circle = centroid / centroid.norm();
        chosen.extend(std::iter::repeat_n(on_circle, members.len() / 2));
    }
    if chosen.len() != k {
        return None;
    }
    let mut q = vec![C64::new(1.0, 0.0)];
    for r in &chosen {
        let mut next = vec![C64::new(0.0, 0.0); q.len() + 1];
        for (i, &c) in q.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * r;
        }
        q = next;
    }
    let mut b: Vec<f64> = q.iter().map(|c| c.re).collect();
    let unscaled = SpectralFactor { coeffs: b.clone() };
    let (tmax, pmax) = (0..FR_GRID)
        .map(|i| std::f64::consts::TAU * i as f64 / FR_GRID as f64)
        .map(|t| (t, p.eval(t)))
        .fold((0.0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
    let scale = (pmax / unscaled.eval(C64::from_polar(1.0, tmax)).norm_sqr()).sqrt();
    let first = b.iter().copied().find(|x| x.abs() > 1e-300).unwrap_or(1.0);
    let s = if first < 0.0 { -scale } else { scale };
    b.iter_mut().for_each(|x| *x *= s);
    Some(SpectralFactor { coeffs: b })
}

/// Shift-operator norm identities for sequences α₀, α₁, … (α₋₁ not used).
#[derive(Debug, Clone, PartialEq)]
pub enum ShiftIdentity {
    /// ‖(S−1)^k α‖² as a sum of ‖(S^{k−l} − S^{k−l'})α‖², k ≥ 1.
    BinomialDifference { k: usize },
    /// ‖(S+1)^k α‖² through ‖S^{k−l}α‖² and pairwise differences.
    BinomialSum { k: usize },
    /// ‖P(S)α‖² = P(1)Σ a_l‖S^l α‖² − Σ_{l<l'} a_l a_{l'}‖(S^l − S^{l'})α‖².
    RealPolynomial { coeffs: Vec<f64> },
    /// ‖(S−1)^{m+k}(S+1)^k α‖², m, k ≥ 1.
    MixedDifference { m: usize, k: usize },
    /// ‖(S+1)^{m+k}(S−1)^k α‖², k ≥ 1.
    MixedSum { m: usize, k: usize },
    /// ‖(S^m − S^n)(S^p − S^q)α‖² through six single-difference norms.
    ShiftProduct { m: usize, n: usize, p: usize, q: usize },
    /// ‖Q(S)α‖² = bdy − ½Σ a_l ‖(S^l − 1)α‖² with Q the Fejér–Riesz factor of P.
    Factorized { p: TrigWeightPoly },
}

type Op = Vec<f64>;

fn op_mul(a: &[f64], b: &[f64]) -> Op {
    let mut c = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    c
}

fn op_pow(a: &[f64], e: usize) -> Op {
    (0..e).fold(vec![1.0], |acc, _| op_mul(&acc, a))
}

fn shift(e: usize) -> Op {
    let mut v = vec![0.0; e + 1];
    v[e] = 1.0;
    v
}

fn shift_diff(a: usize, b: usize) -> Op {
    let mut v = vec![0.0; a.max(b) + 1];
    v[a] += 1.0;
    v[b] -= 1.0;
    v
}

/// ‖Σ c_l S^l α‖₂² over indices j ≥ 0.
pub fn op_norm2(alpha: &[C64], op: &[f64]) -> f64 {
    (0..alpha.len())
        .map(|j| {
            op.iter()
                .enumerate()
                .filter(|(l, _)| j + l < alpha.len())
                .map(|(l, &c)| alpha[j + l] * c)
                .sum::<C64>()
                .norm_sqr()
        })
        .sum()
}

/// |LHS − RHS| of the chosen identity.
pub fn shift_identity_residual(alpha: &[C64], id: &ShiftIdentity) -> Result<f64> {
    let n2 = |op: &[f64]| op_norm2(alpha, op);
    let bin = |n: usize, k: usize| binomial(n, k) as f64;
    let sg = |e: usize| sign(e) as f64;
    let (lhs, rhs) = match id {
        ShiftIdentity::BinomialDifference { k } => {
            let k = *k;
            if k == 0 {
                return Err(Error::Spec("k must be at least 1".into()));
            }
            let lhs = n2(&op_pow(&[-1.0, 1.0], k));
            let mut rhs = 0.0;
            for l in 0..=k {
                for lp in l + 1..=k {
                    rhs += -sg(l + lp) * bin(k, l) * bin(k, lp) * n2(&shift_diff(k - l, k - lp));
                }
            }
            (lhs, rhs)
        }
        ShiftIdentity::BinomialSum { k } => {
            let k = *k;
            let lhs = n2(&op_pow(&[1.0, 1.0], k));
            let mut rhs: f64 = (0..=k).map(|l| bin(k, l) * n2(&shift(k - l))).sum::<f64>() * 2f64.powi(k as i32);
            for l in 0..=k {
                for lp in l + 1..=k {
                    rhs -= bin(k, l) * bin(k, lp) * n2(&shift_diff(k - l, k - lp));
                }
            }
            (lhs, rhs)
        }
        ShiftIdentity::RealPolynomial { coeffs } => {
            let lhs = n2(coeffs);
            let p1: f64 = coeffs.iter().sum();
            let mut rhs: f64 = p1 * coeffs.iter().enumerate().map(|(l, a)| a * n2(&shift(l))).sum::<f64>();
            for l in 0..coeffs.len() {
                for lp in l + 1..coeffs.len() {
                    rhs -= coeffs[l] * coeffs[lp] * n2(&shift_diff(l, lp));
                }
            }
            (lhs, rhs)
        }
        ShiftIdentity::MixedDifference { m, k } => {
            let (m, k) = (*m, *k);
            if m == 0 || k == 0 {
                return Err(Error::Spec("m and k must be at least 1".into()));
            }
            let lhs = n2(&op_mul(&op_pow(&[-1.0, 1.0], m + k), &op_pow(&[1.0, 1.0], k)));
            let mut rhs = 0.0;
            for p in 0..=m {
                for pp in p + 1..=m {
                    for l in 0..=k {
                        for lp in l + 1..=k {
                            let op = op_mul(&shift_diff(m - p, m - pp), &shift_diff(2 * (k - l), 2 * (k - lp)));
                            rhs += sg(p + pp + l + lp) * bin(m, p) * bin(m, pp) * bin(k, l) * bin(k, lp) * n2(&op);
                        }
                    }
                }
            }
            (lhs, rhs)
        }
        ShiftIdentity::MixedSum { m, k } => {
            let (m, k) = (*m, *k);
            if k == 0 {
                return Err(Error::Spec("k must be at least 1".into()));
            }
            let lhs = n2(&op_mul(&op_pow(&[1.0, 1.0], m + k), &op_pow(&[-1.0, 1.0], k)));
            let mut rhs = 0.0;
            for l in 0..=k {
                for lp in l + 1..=k {
                    let inner = shift_diff(2 * (k - l), 2 * (k - lp));
                    let ck = bin(k, l) * bin(k, lp);
                    for p in 0..=m {
                        let op = op_mul(&shift(m - p), &inner);
                        rhs += 2f64.powi(m as i32) * -sg(l + lp) * bin(m, p) * ck * n2(&op);
                        for pp in p + 1..=m {
                            let op = op_mul(&shift_diff(m - p, m - pp), &inner);
                            rhs += sg(l + lp) * bin(m, p) * bin(m, pp) * ck * n2(&op);
                        }
                    }
                }
            }
            (lhs, rhs)
        }
        ShiftIdentity::ShiftProduct { m, n, p, q } => {
            let (m, n, p, q) = (*m, *n, *p, *q);
            let lhs = n2(&op_mul(&shift_diff(m, n), &shift_diff(p, q)));
            let rhs = n2(&op_mul(&shift(m), &shift_diff(p, q)))
                + n2(&op_mul(&shift(n), &shift_diff(p, q)))
                + n2(&op_mul(&shift_diff(m, n), &shift(p)))
                + n2(&op_mul(&shift_diff(m, n), &shift(q)))
                - n2(&shift_diff(m + p, n + q))
                - n2(&shift_diff(m + q, n + p));
            (lhs, rhs)
        }
        ShiftIdentity::Factorized { p } => {
            let f = factorized_sides(alpha, p)?;
            (f.lhs, f.rhs)
        }
    };
    Ok((lhs - rhs).abs())
}

/// Both sides of the factorized identity, with the boundary split out.
#[derive(Debug, Clone, Serialize)]
pub struct FactorizedSides {
    pub factor: Vec<f64>,
    /// ‖Q(S)α‖².
    pub lhs: f64,
    /// Full boundary plus −½Σ a_l‖(S^l−1)α‖².
    pub rhs: f64,
    /// Boundary over pairs l < l' only.
    pub pair_boundary: f64,
    /// −Σ_l b_l(b_l + 2Σ_{l'>l} b_{l'})·Σ_{j<l}|α_j|².
    pub head_boundary: f64,
}

/// Evaluates ‖Q(S)α‖² against its boundary expansion.
pub fn factorized_sides(alpha: &[C64], p: &TrigWeightPoly) -> Result<FactorizedSides> {
    if p.at_zero().abs() > 1e-12 {
        return Err(Error::Spec("P(0) must vanish".into()));
    }
    let q = fejer_riesz(p)?;
    let b = q.coeffs().to_vec();
    let k = b.len() - 1;
    let at = |j: usize| alpha.get(j).copied().unwrap_or(C64::new(0.0, 0.0));
    let head = |l: usize| (0..l).map(|j| at(j).norm_sqr()).sum::<f64>();
    let mut pair_boundary = 0.0;
    for l in 0..=k {
        for lp in l + 1..=k {
            let diff: f64 = (0..l).map(|j| (at(j + lp - l) - at(j)).norm_sqr()).sum();
            let mid: f64 = (l..lp).map(|j| at(j).norm_sqr()).sum();
            pair_boundary += b[l] * b[lp] * (diff - mid);
        }
    }
    let head_boundary: f64 = -(0..=k)
        .map(|l| b[l] * (b[l] + 2.0 * b[l + 1..].iter().sum::<f64>()) * head(l))
        .sum::<f64>();
    let tail: f64 = (1..=p.degree())
        .map(|l| p.coeff(l) * op_norm2(alpha, &shift_diff(l, 0)))
        .sum();
    Ok(FactorizedSides {
        lhs: op_norm2(alpha, &b),
        rhs: pair_boundary + head_boundary - 0.5 * tail,
        factor: b,
        pair_boundary,
        head_boundary,
    })
}

/// ∫P log w dθ/2π by quadrature against a₀w₀ + Σ a_l Re w_l from the general formula.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneralSumRuleReport {
    pub weight: Vec<f64>,
    pub lhs: f64,
    pub rhs: f64,
    /// Re w_l for l = 0..=deg P.
    pub log_moments: Vec<f64>,
    pub residual: f64,
}

pub fn general_sum_rule(seq: &VerblunskySequence, p: &TrigWeightPoly, tol: f64) -> Result<GeneralSumRuleReport> {
    let n = p.degree();
    if n > MAX_W_ORDER {
        return Err(Error::UnsupportedOrder(n));
    }
    let lhs = integrate_z(&bs_measure(seq), p, tol)?;
    let mut log_moments = vec![w0(seq)];
    for l in 1..=n {
        log_moments.push(w_general(seq, l)?.re);
    }
    let rhs: f64 = log_moments.iter().enumerate().map(|(l, w)| p.coeff(l) * w).sum();
    Ok(GeneralSumRuleReport {
        weight: p.coeffs().to_vec(),
        lhs,
        rhs,
        log_moments,
        residual: (lhs - rhs).abs(),
    })
}

/// One row of the coefficient condition check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionRow {
    pub s: usize,
    /// a₀/s.
    pub lhs: f64,
    /// |a₀/s − (−1)^s Σ_l a_l C_{l,s}|, the form the expansion actually satisfies.
    pub residual: f64,
    /// |a₀/s + Σ_l a_l C_{l,s}|, the form as usually stated.
    pub literal_residual: f64,
}

/// Condition rows for exact cosine coefficients.
pub fn condition_rows_exact(a: &[Rational]) -> Result<Vec<ConditionRow>> {
    let n = a.len().saturating_sub(1);
    let mut rows = Vec::with_capacity(n);
    for s in 1..=n {
        let lhs = a[0] / Rational::from_integer(s as i128);
        let mut sum = Rational::zero();
        for (l, &al) in a.iter().enumerate().skip(s) {
            sum += al * coeff_sum(l, s)?;
        }
        let corrected = sum * Rational::from_integer(sign(s));
        rows.push(ConditionRow {
            s,
            lhs: to_f64(lhs),
            residual: to_f64((lhs - corrected).abs()),
            literal_residual: to_f64((lhs + sum).abs()),
        });
    }
    Ok(rows)
}

/// Per-s residuals of the coefficient condition for a real cosine polynomial.
pub fn check_coefficient_condition(p: &TrigWeightPoly) -> Result<Vec<ConditionRow>> {
    let a = p.coeffs();
    let n = p.degree();
    if n > MAX_COEFF_ORDER {
        return Err(Error::UnsupportedOrder(n));
    }
    let mut rows = Vec::with_capacity(n);
    for s in 1..=n {
        let lhs = a[0] / s as f64;
        let mut sum = 0.0;
        for (l, &al) in a.iter().enumerate().skip(s) {
            sum += al * to_f64(coeff_sum(l, s)?);
        }
        let corrected = sum * sign(s) as f64;
        rows.push(ConditionRow {
            s,
            lhs,
            residual: (lhs - corrected).abs(),
            literal_residual: (lhs + sum).abs(),
        });
    }
    Ok(rows)
}

/// Evidence row for (1 − cosθ)ⁿ at one s.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjectureRow {
    pub s: usize,
    pub residual: f64,
    pub literal_residual: f64,
    /// Residual of the parity-split form with inner index starting at s.
    pub split_residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub n: usize,
    /// Cosine coefficients of (1 − cosθ)ⁿ.
    pub weight: Vec<f64>,
    pub rows: Vec<ConjectureRow>,
    pub all_pass: bool,
}

/// Tolerance for the pass flag of [`check_cosine_power_conjecture`].
pub const CONJECTURE_TOL: f64 = 1e-12;

/// Evaluates the coefficient condition for (1 − cosθ)ⁿ, 1 ≤ n ≤ 8, by exact arithmetic.
pub fn check_cosine_power_conjecture(n: usize) -> Result<ConjectureReport> {
    if n == 0 || n > MAX_W_ORDER {
        return Err(Error::UnsupportedOrder(n));
    }
    let a = one_minus_cos_power_exact(n);
    let base = condition_rows_exact(&a)?;
    let rows = base
        .into_iter()
        .map(|r| {
            let split = to_f64(split_form_residual(n, r.s)?);
            Ok(ConjectureRow {
                s: r.s,
                residual: r.residual,
                literal_residual: r.literal_residual,
                split_residual: split,
                pass: r.residual < CONJECTURE_TOL,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConjectureReport {
        n,
        weight: a.into_iter().map(to_f64).collect(),
        all_pass: rows.iter().all(|r| r.pass),
        rows,
    })
}

// The parity-split statement: even powers cos^{2l} feed C_{2ν,s}, odd powers feed
// C_{2ν−1,s}, with ν running from s as written.
fn split_form_residual(n: usize, s: usize) -> Result<Rational> {
    let m = n.div_ceil(2);
    let even_top = n / 2;
    let pw: Vec<Vec<Rational>> = (0..=n).map(cos_power_exact).collect();
    let a = |k: usize, f: usize| pw[k].get(f).copied().unwrap_or_else(Rational::zero);
    let c = |k: usize, kk: usize| Rational::from_integer(binomial(k, kk));
    let mut lhs = Rational::zero();
    for l in 0..=even_top {
        lhs += c(n, 2 * l) * a(2 * l, 0);
    }
    lhs /= Rational::from_integer(s as i128);
    let mut rhs = Rational::zero();
    for nu in s..=m {
        for l in nu..=even_top {
            rhs -= c(n, 2 * l) * a(2 * l, 2 * nu) * coeff_sum(2 * nu, s)?;
        }
        for l in nu..=m {
            if 2 * l - 1 <= n {
                rhs += c(n, 2 * l - 1) * a(2 * l - 1, 2 * nu - 1) * coeff_sum(2 * nu - 1, s)?;
            }
        }
    }
    Ok((lhs - rhs).abs())
}

/// ‖(S−1)α‖₃² ≤ 2‖(S−1)²α‖₂‖α‖₆; returns RHS − LHS.
pub fn gagliardo_nirenberg_gap(alpha: &[C64]) -> f64 {
    let norm_p = |op: &[f64], p: f64| -> f64 {
        (0..alpha.len())
            .map(|j| {
                op.iter()
                    .enumerate()
                    .filter(|(l, _)| j + l < alpha.len())
                    .map(|(l, &c)| alpha[j + l] * c)
                    .sum::<C64>()
                    .norm()
                    .powf(p)
            })
            .sum::<f64>()
            .powf(1.0 / p)
    };
    let d1 = [-1.0, 1.0];
    let d2 = op_pow(&d1, 2);
    2.0 * norm_p(&d2, 2.0) * norm_p(&[1.0], 6.0) - norm_p(&d1, 3.0).powi(2)
}

/// |Σz_iⁿ/n − Πz_i| ≤ (n−1)² max|z_i − z_j|² for points of the closed disk; returns RHS − LHS.
pub fn power_mean_product_gap(z: &[C64]) -> f64 {
    let n = z.len();
    if n == 0 {
        return 0.0;
    }
    let mean: C64 = z.iter().map(|x| x.powi(n as i32)).sum::<C64>() / n as f64;
    let prod: C64 = z.iter().product();
    let spread = z
        .iter()
        .flat_map(|a| z.iter().map(move |b| (a - b).norm_sqr()))
        .fold(0.0, f64::max);
    ((n - 1) * (n - 1)) as f64 * spread - (mean - prod).norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logmoments::w_closed;
    use crate::sample;
    use rand::Rng;

    fn t(v: &[usize]) -> OrderedTuple {
        OrderedTuple::new(v.to_vec()).unwrap()
    }

    #[test]
    fn decomposition_examples() {
        assert_eq!(decompositions(4, 2), vec![vec![3, 1], vec![2, 2]]);
        assert_eq!(decompositions(5, 1), vec![vec![5]]);
        assert_eq!(decompositions(6, 3), vec![vec![4, 1, 1], vec![3, 2, 1], vec![2, 2, 2]]);
        assert!(decompositions(2, 3).is_empty());
    }

    #[test]
    fn permutations_of_multisets() {
        assert_eq!(distinct_permutations(&[2, 1, 1]).len(), 3);
        assert_eq!(distinct_permutations(&[1, 2, 3]).len(), 6);
        assert_eq!(distinct_permutations(&[2, 2]), vec![vec![2, 2]]);
    }

    #[test]
    fn partition_examples() {
        let a = t(&[1, 2, 3, 4, 5]);
        assert_eq!(all_partitions(&a).len(), 16);
        let seg_lens = |p: &TuplePartition| p.segments().iter().map(|s| s.len()).collect::<Vec<_>>();
        let three = partitions(&a, 3, false);
        let find = |lens: &[usize]| three.iter().find(|p| seg_lens(p) == lens).unwrap().is_good();
        assert!(find(&[3, 1, 1]));
        assert!(find(&[2, 2, 1]));
        let four = partitions(&a, 4, false);
        assert!(!four.iter().find(|p| seg_lens(p) == [1, 2, 1, 1]).unwrap().is_good());
        let singles = partitions(&a, 5, true);
        assert_eq!(singles.len(), 1);
        assert!(OrderedTuple::new(vec![1, 0]).is_err());
    }

    #[test]
    fn single_part_series_is_first_d() {
        let mut r = sample::rng(31);
        let s = sample::sequence(&mut r, 5, 0.7);
        let d1 = crate::logmoments::d_direct(&s, 1);
        assert!((alpha_series(&s, &t(&[1])) - d1).norm() < 1e-14);
        assert_eq!(
            alpha_series(&VerblunskySequence::zero(), &t(&[2, 1])),
            C64::new(0.0, 0.0)
        );
    }

    #[test]
    fn two_part_series_by_hand() {
        // (1,1) on α = [0.5]: Σ_k α_k conj(α_{k−1}) Σ_{l≤1} α_{k+l} conj(α_{k+l−1}).
        let s = VerblunskySequence::from_real(&[0.5]).unwrap();
        let a = |j: i64| s.at(j);
        let mut expect = C64::new(0.0, 0.0);
        for k in -3..10 {
            expect += a(k) * a(k - 1).conj() * a(k + 1) * a(k).conj();
        }
        assert!((alpha_series(&s, &t(&[1, 1])) - expect).norm() < 1e-15);
    }

    #[test]
    fn series_counts() {
        assert_eq!(series_count(&t(&[4])), 1);
        assert_eq!(series_count(&t(&[3, 5])), 3);
        assert_eq!(series_count(&t(&[2, 1, 1])), 5);
        assert_eq!(series_count_displayed(&t(&[2, 1, 1])), 7);
        let s = VerblunskySequence::from_real(&[0.5, 0.2, 0.1]).unwrap();
        for total in 1..=7 {
            for n in 1..=total {
                for r in decompositions(total, n) {
                    for sigma in distinct_permutations(&r) {
                        let tup = t(&sigma);
                        assert_eq!(alpha_series_counted(&s, &tup).1, series_count(&tup), "{sigma:?}");
                        if n <= 2 || n == 4 {
                            assert_eq!(series_count_displayed(&tup), series_count(&tup));
                        }
                    }
                }
            }
        }
    }

    // Every ordered partition, coefficient (−1)^s / j, over distinct orderings.
    fn w_all_partitions(seq: &VerblunskySequence, m: usize) -> C64 {
        let mut total = C64::new(0.0, 0.0);
        for s in 1..=m {
            for r in decompositions(m, s) {
                for sigma in distinct_permutations(&r) {
                    for part in all_partitions(&t(&sigma)) {
                        let j = part.j();
                        let mut acc = C64::new(0.0, 0.0);
                        for k in 0..=seq.len() as i64 + 2 {
                            let mut c = 0;
                            acc += part
                                .segments()
                                .iter()
                                .map(|sg| segment_summand(seq, sg, k, false, &mut c))
                                .product::<C64>();
                        }
                        total += acc * (sign(s) as f64 / j as f64);
                    }
                }
            }
        }
        total
    }

    #[test]
    fn general_formula_matches_closed_forms_and_oracle() {
        let mut r = sample::rng(37);
        for _ in 0..5 {
            let s = sample::sequence_up_to(&mut r, 5, 0.8);
            for m in 1..=4 {
                assert!((w_general(&s, m).unwrap() - w_closed(&s, m).unwrap()).norm() < 1e-10);
            }
            for m in 1..=6 {
                assert!((w_general(&s, m).unwrap() - w_all_partitions(&s, m)).norm() < 1e-10);
            }
        }
        assert_eq!(w_general(&VerblunskySequence::zero(), 3).unwrap(), C64::new(0.0, 0.0));
        assert!(matches!(
            w_general(&VerblunskySequence::zero(), 9),
            Err(Error::UnsupportedOrder(9))
        ));
    }

    #[test]
    fn coefficient_sums() {
        for m in 1..=8 {
            assert_eq!(coeff_sum(m, 1).unwrap(), Rational::one());
            assert_eq!(coeff_sum(m, 2).unwrap(), coeff_sum_stated(m, 2).unwrap());
        }
        assert_eq!(coeff_sum(3, 2).unwrap(), Rational::from_integer(4));
        assert_eq!(coeff_sum(4, 2).unwrap(), Rational::new(15, 2));
        assert_eq!(coeff_sum_signed(3, 3).unwrap(), Rational::new(-10, 3));
        assert_eq!(coeff_sum_signed(8, 8).unwrap(), Rational::new(6435, 8));
        assert_eq!(coeff_sum(2, 3).unwrap(), Rational::zero());
    }

    #[test]
    fn cosine_powers() {
        let h = |a, b| Rational::new(a, b);
        assert_eq!(cos_power_exact(3), vec![h(0, 1), h(3, 4), h(0, 1), h(1, 4)]);
        assert_eq!(cos_power_exact(4), vec![h(3, 8), h(0, 1), h(1, 2), h(0, 1), h(1, 8)]);
        assert_eq!(cos_power_exact(6)[0], h(5, 16));
        for n in 0..10 {
            let sum: Rational = cos_power_exact(n).into_iter().sum();
            assert_eq!(sum, Rational::one());
            // Discrete Fourier analysis of cosⁿθ on 64 points.
            let p = cos_power(n);
            for f in 0..=n {
                let m = 64;
                let c: f64 = (0..m)
                    .map(|i| {
                        let th = std::f64::consts::TAU * i as f64 / m as f64;
                        th.cos().powi(n as i32) * (f as f64 * th).cos()
                    })
                    .sum::<f64>()
                    / m as f64
                    * if f == 0 { 1.0 } else { 2.0 };
                assert!((c - p.coeff(f)).abs() < 1e-12);
            }
        }
        let w = one_minus_cos_power_exact(4);
        assert_eq!(w, vec![h(35, 8), h(-7, 1), h(7, 2), h(-1, 1), h(1, 8)]);
    }

    #[test]
    fn fejer_riesz_examples() {
        let q = fejer_riesz(&TrigWeightPoly::one_minus_cos(1)).unwrap();
        let r = 0.5f64.sqrt();
        assert!((q.coeffs()[0] - r).abs() < 1e-12 && (q.coeffs()[1] + r).abs() < 1e-12);
        let q = fejer_riesz(&TrigWeightPoly::one_minus_cos(2)).unwrap();
        assert!((q.coeffs()[0] - r).abs() < 1e-12 && q.coeffs()[1].abs() < 1e-12);
        assert!((q.coeffs()[2] + r).abs() < 1e-12);
        let z = fejer_riesz(&TrigWeightPoly::constant(0.0)).unwrap();
        assert_eq!(z.coeffs(), &[0.0]);
        assert!(matches!(
            fejer_riesz(&TrigWeightPoly::cos(1)),
            Err(Error::NotNonnegative(_))
        ));
        let p = TrigWeightPoly::one_minus_cos(1).pow(4);
        let q = fejer_riesz(&p).unwrap();
        assert!(q.pointwise_residual(&p, 4096) < 1e-10);
        assert!(q.coefficient_residual(&p) < 1e-10);
    }

    #[test]
    fn fejer_riesz_on_symmetric_root_sets() {
        // 1 − cos4θ and sin⁴θ put repeated roots at symmetric points of the circle.
        for rule in crate::sumrules::RuleId::ALL {
            let p = rule.weight();
            let q = fejer_riesz(&p).unwrap();
            assert!(q.pointwise_residual(&p, 4096) < 1e-10, "{rule}");
        }
    }

    #[test]
    fn shift_identities() {
        let mut r = sample::rng(41);
        for _ in 0..20 {
            let a = sample::complex_vec(&mut r, 7, 0.5);
            for k in 1..=4 {
                for id in [
                    ShiftIdentity::BinomialDifference { k },
                    ShiftIdentity::BinomialSum { k },
                ] {
                    assert!(shift_identity_residual(&a, &id).unwrap() < 1e-11, "{id:?}");
                }
                for m in 1..=3 {
                    for id in [
                        ShiftIdentity::MixedDifference { m, k },
                        ShiftIdentity::MixedSum { m, k },
                    ] {
                        assert!(shift_identity_residual(&a, &id).unwrap() < 1e-11, "{id:?}");
                    }
                }
            }
            let id = ShiftIdentity::RealPolynomial {
                coeffs: vec![0.3, -1.2, 0.7],
            };
            assert!(shift_identity_residual(&a, &id).unwrap() < 1e-12);
            let id = ShiftIdentity::ShiftProduct { m: 3, n: 1, p: 0, q: 2 };
            assert!(shift_identity_residual(&a, &id).unwrap() < 1e-12);
            let id = ShiftIdentity::Factorized {
                p: TrigWeightPoly::one_minus_cos(1),
            };
            assert!(shift_identity_residual(&a, &id).unwrap() < 1e-11);
        }
        let a = sample::complex_vec(&mut r, 5, 0.5);
        let id = ShiftIdentity::ShiftProduct { m: 2, n: 2, p: 1, q: 3 };
        assert_eq!(shift_identity_residual(&a, &id).unwrap(), 0.0);
        // k = 1: both sides are ‖(S−1)α‖².
        let id = ShiftIdentity::BinomialDifference { k: 1 };
        assert!(shift_identity_residual(&a, &id).unwrap() < 1e-15);
    }

    #[test]
    fn pair_boundary_alone_misses_the_head_terms() {
        let a = vec![C64::new(0.4, 0.1), C64::new(-0.2, 0.3)];
        let f = factorized_sides(&a, &TrigWeightPoly::one_minus_cos(1)).unwrap();
        // Q = (1 − z)/√2: the head term is −½|α₀|².
        assert!((f.head_boundary + 0.5 * a[0].norm_sqr()).abs() < 1e-14);
        assert!((f.lhs - f.rhs).abs() < 1e-14);
    }

    #[test]
    fn condition_for_low_powers() {
        let rows = check_coefficient_condition(&TrigWeightPoly::one_minus_cos(1)).unwrap();
        assert_eq!(rows[0].residual, 0.0);
        let rows = check_coefficient_condition(&TrigWeightPoly::one_minus_cos(1).pow(2)).unwrap();
        assert!(rows.iter().all(|r| r.residual < 1e-14));
        assert!(rows[1].literal_residual > 1.0);
        let rows = check_coefficient_condition(&TrigWeightPoly::new(vec![1.0, 0.5, 0.25])).unwrap();
        assert!(rows.iter().any(|r| r.residual > 0.1));
        for n in 1..=8 {
            let rep = check_cosine_power_conjecture(n).unwrap();
            assert!(rep.all_pass, "n={n}");
        }
    }

    #[test]
    fn inequalities_hold() {
        let mut r = sample::rng(43);
        for _ in 0..200 {
            let n = r.random_range(1..=8usize);
            let a = sample::complex_vec(&mut r, n, 1.0);
            assert!(gagliardo_nirenberg_gap(&a) >= -1e-12);
            let z: Vec<C64> = (0..n).map(|_| sample::disk_point(&mut r, 1.0)).collect();
            assert!(power_mean_product_gap(&z) >= -1e-12);
        }
    }

    #[test]
    fn general_sum_rule_examples() {
        let mut r = sample::rng(47);
        let s = sample::sequence(&mut r, 4, 0.6);
        let p = TrigWeightPoly::one_minus_cos(1)
            .pow(2)
            .mul(&TrigWeightPoly::one_plus_cos(1));
        assert_eq!(p.coeffs(), &[0.5, -0.25, -0.5, 0.25]);
        let rep = general_sum_rule(&s, &p, 1e-12).unwrap();
        assert!(rep.residual < 1e-7);
        let z = general_sum_rule(&VerblunskySequence::zero(), &p, 1e-12).unwrap();
        assert_eq!((z.lhs, z.rhs), (0.0, 0.0));
    }
}
