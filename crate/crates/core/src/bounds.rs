//! Probability bounds: Chernoff tails, the independence probability of a
//! set in the pair-graph model, and the event bounds and union-bound sums
//! for layered graphs.
//!
//! Magnitudes in the layered-graph bounds run to hundreds of thousands of
//! digits, so everything except [`hb_independence_probability`] is carried
//! as a natural logarithm in [`LogProb`].

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::generators::SemiRegularPair;
use crate::rational::Rational;
use crate::{Error, Result};

/// Relative tolerance for comparisons between float bounds.
pub const TOLERANCE: f64 = 1e-9;

/// A nonnegative quantity stored as its natural logarithm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogProb {
    ln: f64,
    zero: bool,
}

impl LogProb {
    pub const ZERO: LogProb = LogProb { ln: f64::NEG_INFINITY, zero: true };
    pub const ONE: LogProb = LogProb { ln: 0.0, zero: false };
    pub const INFINITY: LogProb = LogProb { ln: f64::INFINITY, zero: false };

    pub fn from_ln(ln: f64) -> LogProb {
        if ln == f64::NEG_INFINITY {
            LogProb::ZERO
        } else {
            LogProb { ln, zero: false }
        }
    }

    pub fn from_linear(x: f64) -> LogProb {
        assert!(x >= 0.0, "LogProb of a negative number");
        if x == 0.0 {
            LogProb::ZERO
        } else {
            LogProb::from_ln(libm::log(x))
        }
    }

    pub fn ln(self) -> f64 {
        self.ln
    }

    pub fn is_zero(self) -> bool {
        self.zero
    }

    pub fn is_infinite(self) -> bool {
        self.ln == f64::INFINITY
    }

    pub fn to_f64(self) -> f64 {
        if self.zero {
            0.0
        } else {
            libm::exp(self.ln)
        }
    }

    pub fn powi(self, k: f64) -> LogProb {
        if self.zero {
            if k == 0.0 {
                LogProb::ONE
            } else {
                LogProb::ZERO
            }
        } else {
            LogProb::from_ln(self.ln * k)
        }
    }

    pub fn sum<I: IntoIterator<Item = LogProb>>(items: I) -> LogProb {
        items.into_iter().fold(LogProb::ZERO, |acc, x| acc + x)
    }

    /// `self <= other` up to [`TOLERANCE`] (relative, on the linear scale).
    pub fn le_tol(self, other: LogProb) -> bool {
        if self.zero {
            return true;
        }
        if other.zero {
            return false;
        }
        self.ln <= other.ln + libm::log1p(TOLERANCE)
    }

    pub fn lt(self, other: LogProb) -> bool {
        self.partial_cmp(&other) == Some(Ordering::Less)
    }
}

impl Mul for LogProb {
    type Output = LogProb;

    fn mul(self, other: LogProb) -> LogProb {
        if self.zero || other.zero {
            LogProb::ZERO
        } else {
            LogProb::from_ln(self.ln + other.ln)
        }
    }
}

impl Div for LogProb {
    type Output = LogProb;

    fn div(self, other: LogProb) -> LogProb {
        assert!(!other.zero, "division by zero LogProb");
        if self.zero {
            LogProb::ZERO
        } else {
            LogProb::from_ln(self.ln - other.ln)
        }
    }
}

impl Add for LogProb {
    type Output = LogProb;

    fn add(self, other: LogProb) -> LogProb {
        if self.zero {
            return other;
        }
        if other.zero {
            return self;
        }
        let (hi, lo) = if self.ln >= other.ln { (self.ln, other.ln) } else { (other.ln, self.ln) };
        if hi == f64::INFINITY {
            return LogProb::INFINITY;
        }
        LogProb::from_ln(hi + libm::log1p(libm::exp(lo - hi)))
    }
}

impl PartialOrd for LogProb {
    fn partial_cmp(&self, other: &LogProb) -> Option<Ordering> {
        match (self.zero, other.zero) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            _ => self.ln.partial_cmp(&other.ln),
        }
    }
}

impl fmt::Display for LogProb {
    /// `0`, `1`, `inf`, or `e^x` with `x` printed to at most nine decimals.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero {
            return write!(f, "0");
        }
        if self.ln == 0.0 {
            return write!(f, "1");
        }
        if self.is_infinite() {
            return write!(f, "inf");
        }
        let r = libm::round(self.ln);
        if libm::fabs(self.ln - r) <= TOLERANCE * libm::fmax(1.0, libm::fabs(self.ln)) {
            return write!(f, "e^{}", r as i64);
        }
        let s = format!("{:.9}", self.ln);
        write!(f, "e^{}", s.trim_end_matches('0'))
    }
}

fn check_real(name: &str, x: f64) -> Result<()> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::param(format!("{name} must be a finite nonnegative number, got {x}")));
    }
    Ok(())
}

/// Upper tail: `P[X >= (1+δ)μ] <= exp(-δ²μ/(2+δ))`.
pub fn chernoff_upper(mu: f64, delta: f64) -> Result<LogProb> {
    check_real("mu", mu)?;
    check_real("delta", delta)?;
    Ok(LogProb::from_ln(-(delta * delta * mu) / (2.0 + delta)))
}

/// Lower tail: `P[X <= (1-δ)μ] <= exp(-δ²μ/2)`, `0 <= δ <= 1`.
pub fn chernoff_lower(mu: f64, delta: f64) -> Result<LogProb> {
    check_real("mu", mu)?;
    check_real("delta", delta)?;
    if delta > 1.0 {
        return Err(Error::param(format!("delta must lie in [0, 1], got {delta}")));
    }
    Ok(LogProb::from_ln(-(delta * delta * mu) / 2.0))
}

fn choose2(k: usize) -> BigInt {
    BigInt::from(k) * BigInt::from(k.saturating_sub(1)) / 2
}

/// Exact probability that `z` (vertices of `B`) is independent in a pair
/// graph drawn from `pair`: each `A`-vertex independently avoids choosing
/// both endpoints inside `z`.
pub fn hb_independence_probability(pair: &SemiRegularPair, z: &[usize]) -> Result<Rational> {
    if pair.a < 2 {
        return Err(Error::param("pair graphs need a >= 2"));
    }
    let n = pair.graph.n();
    let mut in_z = alloc::vec![false; n];
    for &v in z {
        if v >= n || pair.bipartition.side_of(v) != Some(true) {
            return Err(Error::param(format!("vertex {v} is not in B")));
        }
        in_z[v] = true;
    }
    let total = choose2(pair.a);
    let mut p = Rational::one();
    for &v in pair.side_a() {
        let dz = pair.graph.neighbors(v).iter().filter(|&&u| in_z[u]).count();
        if dz < 2 {
            continue;
        }
        p *= Rational::new(&total - choose2(dz), total.clone());
        if p.is_zero() {
            break;
        }
    }
    Ok(p)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightLemmaBound {
    pub bound: LogProb,
    /// `deg_Z >= (√q·a + q)·n`; when true, `bound <= e^-n`.
    pub hypothesis: bool,
}

/// `exp(-d(d - qn)/(a²qn))` for `d = deg_Z > qn`, else 1.
pub fn weight_lemma_bound(a: usize, q: usize, n: usize, deg_z: usize) -> Result<WeightLemmaBound> {
    if a < 2 || q == 0 || n == 0 {
        return Err(Error::param("weight bound needs a >= 2, q >= 1, n >= 1"));
    }
    let (a128, q128, n128, d) = (a as u128, q as u128, n as u128, deg_z as u128);
    if d > q128 * n128 * a128 {
        return Err(Error::param(format!("deg_Z = {deg_z} exceeds q*n*a = {}", q * n * a)));
    }
    let qn = q128 * n128;
    if d <= qn {
        return Ok(WeightLemmaBound { bound: LogProb::ONE, hypothesis: false });
    }
    // (d - qn)² >= q a² n²  <=>  d >= (√q a + q) n, given d > qn
    let excess = d - qn;
    let hypothesis = excess * excess >= q128 * a128 * a128 * n128 * n128;
    let exponent = -(d as f64) * (excess as f64) / ((a * a) as f64 * qn as f64);
    Ok(WeightLemmaBound { bound: LogProb::from_ln(exponent), hypothesis })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EventKind {
    /// A set of `s` branch vertices in layer `m` meeting `t` pattern edges.
    Branch,
    /// `s` subdivision vertices in layer `m` with `t` edges back to `A`.
    Subdivision,
}

/// Parameters of one event for the layered graph `G_{n,M}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EventParams {
    /// `ln n`.
    pub ln_n: f64,
    pub big_m: u32,
    pub m: u32,
    pub s: u64,
    pub t: u64,
}

impl EventParams {
    pub fn new(n: f64, big_m: u32, m: u32, s: u64, t: u64) -> Result<Self> {
        if n.is_nan() || n < 1.0 {
            return Err(Error::param("n must be at least 1"));
        }
        Self::from_ln(libm::log(n), big_m, m, s, t)
    }

    /// `n = root^(4^M)`.
    pub fn from_root(root: f64, big_m: u32, m: u32, s: u64, t: u64) -> Result<Self> {
        if root.is_nan() || root < 1.0 || big_m > 12 {
            return Err(Error::param("root must be at least 1 and M at most 12"));
        }
        Self::from_ln(libm::log(root) * pow4(big_m as i32), big_m, m, s, t)
    }

    pub fn from_ln(ln_n: f64, big_m: u32, m: u32, s: u64, t: u64) -> Result<Self> {
        let p = EventParams { ln_n, big_m, m, s, t };
        if big_m < 2 || m < 2 || m > big_m {
            return Err(Error::param(format!("need 2 <= m <= M, got m = {m}, M = {big_m}")));
        }
        if s == 0 {
            return Err(Error::param("s must be positive"));
        }
        if t < 4 * s {
            return Err(Error::param(format!("need t >= 4s, got s = {s}, t = {t}")));
        }
        let ln_s = libm::log(s as f64);
        if ln_s > p.ln_layer() * (1.0 + TOLERANCE) + TOLERANCE {
            return Err(Error::param(format!("s = {s} exceeds |B_{m}|")));
        }
        Ok(p)
    }

    /// `ε_M · 4^(m-1)`.
    pub fn eps_k(&self) -> f64 {
        pow4(self.m as i32 - 1) / pow4(self.big_m as i32 + 1)
    }

    /// `ln |B_m| = (1 - ε_M 4^m) ln n`.
    pub fn ln_layer(&self) -> f64 {
        (1.0 - 4.0 * self.eps_k()) * self.ln_n
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EventBound {
    pub full: LogProb,
    pub simplified: LogProb,
    /// `(8M)^-t`.
    pub target: LogProb,
    pub full_meets_target: bool,
    pub simplified_meets_target: bool,
}

fn pow4(e: i32) -> f64 {
    libm::pow(4.0, e as f64)
}

fn ln_2e() -> f64 {
    core::f64::consts::LN_2 + 1.0
}

/// Branch side: `(2e)^2t (n/s)^(s+t) s^2t n^(2t(εk-1))`, simplified to
/// `(2e)^2t (n^εk)^(4s-2t)`.
/// Subdivision side: `(en/s)^s (es)^t M^t n^((εk-1)t)`, simplified to
/// `(e²M)^t (n^εk)^-t`.
pub fn event_bound(kind: EventKind, p: &EventParams) -> EventBound {
    let (s, t) = (p.s as f64, p.t as f64);
    let ln_s = libm::log(s);
    let ek = p.eps_k();
    let ln_m = libm::log(p.big_m as f64);
    let (full, simplified) = match kind {
        EventKind::Branch => (
            2.0 * t * ln_2e() + (s + t) * (p.ln_n - ln_s) + 2.0 * t * ln_s + 2.0 * t * (ek - 1.0) * p.ln_n,
            2.0 * t * ln_2e() + (4.0 * s - 2.0 * t) * ek * p.ln_n,
        ),
        EventKind::Subdivision => (
            s * (1.0 + p.ln_n - ln_s) + t * (1.0 + ln_s) + t * ln_m + (ek - 1.0) * t * p.ln_n,
            t * (2.0 + ln_m) - t * ek * p.ln_n,
        ),
    };
    let target = LogProb::from_ln(-t * libm::log(8.0 * p.big_m as f64));
    let full = LogProb::from_ln(full);
    let simplified = LogProb::from_ln(simplified);
    EventBound {
        full,
        simplified,
        target,
        full_meets_target: full.le_tol(target),
        simplified_meets_target: simplified.le_tol(target),
    }
}

/// Caps for the exact part of the union sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnionLimits {
    /// Values of `s` summed term by term; larger `s` use a closed tail.
    pub s_cap: u64,
}

impl Default for UnionLimits {
    fn default() -> Self {
        UnionLimits { s_cap: 64 }
    }
}

/// `T_cap = max(64, 8s)`.
pub fn t_cap(s: u64) -> u64 {
    core::cmp::max(64, 8 * s)
}

/// `Σ_{t>=T} x^t = x^T / (1 - x)` for `0 <= x < 1`.
pub fn geometric_tail(ratio: LogProb, start: f64) -> LogProb {
    if !ratio.lt(LogProb::ONE) {
        return LogProb::INFINITY;
    }
    ratio.powi(start) / LogProb::from_linear(1.0 - ratio.to_f64())
}

/// Per-candidate result of [`union_bound_threshold`].
#[derive(Clone, Debug, PartialEq)]
pub struct CandidateSums {
    /// `n = root^(4^M)`.
    pub root: u64,
    pub log10_n: f64,
    pub branch_sum: LogProb,
    pub subdivision_sum: LogProb,
    pub passes: bool,
    /// `Σ_B |B_m| <= n`, checked for this candidate.
    pub b_at_most_n: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct UnionReport {
    pub big_m: u32,
    pub s_cap: u64,
    pub candidates: Vec<CandidateSums>,
    /// Smallest root whose candidate passes.
    pub minimal_passing: Option<u64>,
    /// Both sums are non-increasing along the candidate list.
    pub monotone: bool,
}

impl UnionReport {
    pub fn best(&self) -> Option<&CandidateSums> {
        self.candidates.iter().min_by(|a, b| {
            let ka = a.branch_sum + a.subdivision_sum;
            let kb = b.branch_sum + b.subdivision_sum;
            ka.partial_cmp(&kb).unwrap_or(Ordering::Equal)
        })
    }
}

fn half() -> LogProb {
    LogProb::from_ln(-core::f64::consts::LN_2)
}

/// Sum of one side over `m`, `s`, `t` for `n = e^ln_n`.
fn side_sum(kind: EventKind, big_m: u32, ln_n: f64, limits: UnionLimits) -> LogProb {
    let mut total = LogProb::ZERO;
    for m in 2..=big_m {
        let probe = EventParams { ln_n, big_m, m, s: 1, t: 4 };
        let ln_layer = probe.ln_layer();
        let ek = probe.eps_k();
        let layer = libm::exp(ln_layer);
        // the layer size is an integer power; guard against float fuzz
        let s_max = if layer < (limits.s_cap + 1) as f64 { libm::round(layer) as u64 } else { u64::MAX };
        let s_exact = core::cmp::min(s_max, limits.s_cap);
        for s in 1..=s_exact {
            let ln_s = libm::log(s as f64);
            let ratio = match kind {
                EventKind::Branch => LogProb::from_ln(2.0 * ln_2e() + ln_s - ln_n + 2.0 * ek * ln_n),
                EventKind::Subdivision => {
                    LogProb::from_ln(1.0 + ln_s + libm::log(big_m as f64) + (ek - 1.0) * ln_n)
                }
            };
            let cap = t_cap(s);
            for t in 4 * s..=cap {
                let p = EventParams { ln_n, big_m, m, s, t };
                total = total + event_bound(kind, &p).full;
            }
            // consecutive t differ by the constant factor `ratio`
            if !ratio.lt(half()) {
                return LogProb::INFINITY;
            }
            let next = event_bound(kind, &EventParams { ln_n, big_m, m, s, t: cap + 1 }).full;
            total = total + next / LogProb::from_linear(1.0 - ratio.to_f64());
        }
        if s_max > limits.s_cap {
            // s > s_cap: the full bound is at most the simplified one
            let y = ek * ln_n;
            let start = (limits.s_cap + 1) as f64;
            let tail = match kind {
                EventKind::Branch => {
                    let rho = LogProb::from_ln(2.0 * ln_2e() - 2.0 * y);
                    let r = LogProb::from_ln(8.0 * ln_2e() - 4.0 * y);
                    if !rho.lt(LogProb::ONE) {
                        return LogProb::INFINITY;
                    }
                    geometric_tail(r, start) / LogProb::from_linear(1.0 - rho.to_f64())
                }
                EventKind::Subdivision => {
                    let sigma = LogProb::from_ln(2.0 + libm::log(big_m as f64) - y);
                    if !sigma.lt(LogProb::ONE) {
                        return LogProb::INFINITY;
                    }
                    geometric_tail(sigma.powi(4.0), start) / LogProb::from_linear(1.0 - sigma.to_f64())
                }
            };
            total = total + tail;
        }
        if total.is_infinite() {
            return total;
        }
    }
    total
}

/// Evaluates both union sums for `n = root^(4^M)` at each root (ascending).
pub fn union_bound_threshold(big_m: u32, roots: &[u64], limits: UnionLimits) -> Result<UnionReport> {
    if !(2..=8).contains(&big_m) {
        return Err(Error::param("M must lie in 2..=8"));
    }
    if roots.iter().any(|&r| r < 2) || roots.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::param("roots must be >= 2 and strictly increasing"));
    }
    let power = pow4(big_m as i32);
    let mut candidates = Vec::with_capacity(roots.len());
    for &root in roots {
        let ln_n = libm::log(root as f64) * power;
        let branch_sum = side_sum(EventKind::Branch, big_m, ln_n, limits);
        let subdivision_sum = side_sum(EventKind::Subdivision, big_m, ln_n, limits);
        // Σ_i |B_i| = Σ_i n^(1 - 4^(i-M-1)) <= n
        let b_total = LogProb::sum((1..=big_m).map(|i| {
            LogProb::from_ln((1.0 - pow4(i as i32 - big_m as i32 - 1)) * ln_n)
        }));
        candidates.push(CandidateSums {
            root,
            log10_n: ln_n / core::f64::consts::LN_10,
            branch_sum,
            subdivision_sum,
            passes: branch_sum.lt(half()) && subdivision_sum.lt(half()),
            b_at_most_n: b_total.le_tol(LogProb::from_ln(ln_n)),
        });
    }
    let non_increasing = |a: LogProb, b: LogProb| (a.is_infinite() && b.is_infinite()) || b.le_tol(a);
    let monotone = candidates.windows(2).all(|w| {
        non_increasing(w[0].branch_sum, w[1].branch_sum)
            && non_increasing(w[0].subdivision_sum, w[1].subdivision_sum)
    });
    let minimal_passing = candidates.iter().find(|c| c.passes).map(|c| c.root);
    Ok(UnionReport { big_m, s_cap: limits.s_cap, candidates, minimal_passing, monotone })
}

/// `4 Σ_{m=2}^M (8M)^-4`, the closing sum once every event is below
/// `(8M)^-t`.
pub fn closed_form_sum(big_m: u32) -> Rational {
    let per = Rational::new(BigInt::one(), BigInt::from(8 * big_m as u64).pow(4));
    per * Rational::from_integer(BigInt::from(4 * (big_m as u64 - 1)))
}
