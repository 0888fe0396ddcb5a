//! Exact `q`-expansions behind the vanishing of the signed degree sums.
//!
//! The weight-5/2 form `f = G₂(8z)·θ_ψ(z) + (48πi)⁻¹·θ'_ψ(z)` is checked to vanish
//! coefficient by coefficient, and the consequence `S_D = 0` is checked directly
//! from the degrees `m_D(e)`.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith::divisors;
use crate::euler::{m_d, sigma1, squarefree_decompose, EulerError};
use crate::exactq::{format_rational, is_perfect_square, rat, ratio, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModError {
    #[error("D = {0} is not 1 mod 8")]
    UnsupportedResidue(i64),
    #[error("D = {0} is a perfect square")]
    SquareDiscriminant(i64),
    #[error(transparent)]
    Euler(#[from] EulerError),
}

/// Truncated power series `Σ_{n ≤ N} a_n qⁿ` with exact coefficients; absent exponents are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    coeffs: BTreeMap<u64, Rational>,
    truncation: u64,
}

impl QSeries {
    pub fn zero(truncation: u64) -> Self {
        Self {
            coeffs: BTreeMap::new(),
            truncation,
        }
    }

    pub fn truncation(&self) -> u64 {
        self.truncation
    }

    pub fn coeff(&self, n: u64) -> Rational {
        self.coeffs.get(&n).cloned().unwrap_or_else(Rational::zero)
    }

    /// Add `x` to the coefficient of `qⁿ`, dropping terms beyond the truncation or that cancel.
    pub fn add_term(&mut self, n: u64, x: Rational) {
        if n > self.truncation || x.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(n).or_insert_with(Rational::zero);
        *slot += x;
        if slot.is_zero() {
            self.coeffs.remove(&n);
        }
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.coeffs.iter().map(|(n, x)| (*n, x))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.truncation.min(other.truncation));
        for (n, x) in self.terms().chain(other.terms()) {
            out.add_term(n, x.clone());
        }
        out
    }

    /// Cauchy product over the sparse supports.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.truncation.min(other.truncation));
        for (i, x) in self.terms() {
            for (j, y) in other.terms() {
                if i + j > out.truncation {
                    break;
                }
                out.add_term(i + j, x * y);
            }
        }
        out
    }
}

/// The odd character modulo 4.
pub fn psi(n: i64) -> i8 {
    match n.rem_euclid(4) {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

fn odd_squares(n_max: u64) -> impl Iterator<Item = u64> {
    (1u64..).step_by(2).take_while(move |s| s * s <= n_max)
}

/// `θ_ψ = Σ_{s ≥ 1} ψ(s)·s·q^{s²}`.
pub fn theta_psi(n_max: u64) -> QSeries {
    let mut out = QSeries::zero(n_max);
    for s in odd_squares(n_max) {
        out.add_term(s * s, rat(psi(s as i64) as i64 * s as i64));
    }
    out
}

/// `(48πi)⁻¹·θ'_ψ`: coefficient `ψ(s)·s³/24` at `q^{s²}`.
pub fn theta_prime_scaled(n_max: u64) -> QSeries {
    let mut out = QSeries::zero(n_max);
    for s in odd_squares(n_max) {
        let s = s as i64;
        out.add_term((s * s) as u64, ratio(psi(s) as i64 * s * s * s, 24));
    }
    out
}

/// `G₂(8z) = −1/24 + Σ_{k ≥ 1} σ₁(k)·q^{8k}`.
pub fn g2_8(n_max: u64) -> QSeries {
    let mut out = QSeries::zero(n_max);
    out.add_term(0, ratio(-1, 24));
    for k in (1..).take_while(|k| 8 * k <= n_max) {
        out.add_term(8 * k, rat(sigma1(k) as i64));
    }
    out
}

/// Coefficients of `f = G₂(8z)·θ_ψ + (48πi)⁻¹·θ'_ψ` up to `q^N`.
pub fn f_coeffs(n_max: u64) -> QSeries {
    g2_8(n_max)
        .mul(&theta_psi(n_max))
        .add(&theta_prime_scaled(n_max))
}

/// `Σ ψ(e)·e·σ₁((n − e²)/8)` over odd `0 < e < √n`.
pub fn signed_sigma_sum(n: i64) -> i64 {
    let mut acc = 0;
    let mut e = 1i64;
    while e * e < n {
        if (n - e * e) % 8 == 0 {
            acc += psi(e) as i64 * e * sigma1(((n - e * e) / 8) as u64) as i64;
        }
        e += 2;
    }
    acc
}

/// Closed form of the `n`-th coefficient of `f`: zero unless `n ≡ 1 (mod 8)`; the
/// signed divisor sum for non-square `n`; for `n = s²` that sum plus `ψ(s)(s³ − s)/24`.
pub fn c_n_closed(n: u64) -> Rational {
    if n % 8 != 1 {
        return Rational::zero();
    }
    let base = rat(signed_sigma_sum(n as i64));
    if is_perfect_square(n) {
        let s = (n as f64).sqrt().round() as i64;
        base + ratio(psi(s) as i64 * (s * s * s - s), 24)
    } else {
        base
    }
}

/// A coefficient where the product expansion is nonzero or disagrees with the closed form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub n: u64,
    pub coefficient: String,
    pub closed_form: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VanishingReport {
    #[serde(rename = "N")]
    pub n_max: u64,
    pub violations: Vec<Violation>,
}

impl VanishingReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn json_string(&self) -> String {
        serde_json::to_string(self).expect("plain struct serialises")
    }
}

/// Check that every coefficient of `f` up to `q^N` is zero and equals its closed form.
pub fn verify_vanishing(n_max: u64) -> VanishingReport {
    let f = f_coeffs(n_max);
    let violations = (0..=n_max)
        .into_par_iter()
        .filter_map(|n| {
            let got = f.coeff(n);
            let closed = c_n_closed(n);
            (!got.is_zero() || got != closed).then(|| Violation {
                n,
                coefficient: format_rational(&got),
                closed_form: format_rational(&closed),
            })
        })
        .collect();
    VanishingReport { n_max, violations }
}

fn check_odd_nonsquare(d: i64) -> Result<(), ModError> {
    if d <= 0 || d % 8 != 1 {
        return Err(ModError::UnsupportedResidue(d));
    }
    if is_perfect_square(d as u64) {
        return Err(ModError::SquareDiscriminant(d));
    }
    Ok(())
}

fn s_d_int(d: i64) -> Result<i64, ModError> {
    check_odd_nonsquare(d)?;
    let mut acc = 0i64;
    let mut e = 1i64;
    while e * e < d {
        acc += psi(e) as i64 * e * m_d(d, e)? as i64;
        e += 2;
    }
    Ok(acc)
}

/// `S_D = Σ ψ(e)·e·m_D(e)` over odd `0 < e < √D`, for non-square `D ≡ 1 (mod 8)`.
pub fn s_d(d: i64) -> Result<Rational, ModError> {
    s_d_int(d).map(rat)
}

/// Both sides of `Σ ψ(e)·e·σ₁((D − e²)/8) = Σ_{r² | D} ψ(r)·r·S_{D/r²}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecursionReport {
    pub d: i64,
    pub sigma_side: i64,
    /// `(r, S_{D/r²})` for each `r` with `r² | D`.
    pub terms: Vec<(i64, i64)>,
}

impl RecursionReport {
    pub fn degree_side(&self) -> i64 {
        self.terms.iter().map(|&(r, s)| psi(r) as i64 * r * s).sum()
    }

    pub fn holds(&self) -> bool {
        self.sigma_side == self.degree_side()
    }
}

pub fn verify_s_recursion(d: i64) -> Result<RecursionReport, ModError> {
    check_odd_nonsquare(d)?;
    let (f, _) = squarefree_decompose(d as u64);
    let terms = divisors(f)
        .into_iter()
        .map(|r| {
            let r = r as i64;
            s_d_int(d / (r * r)).map(|s| (r, s))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RecursionReport {
        d,
        sigma_side: signed_sigma_sum(d),
        terms,
    })
}

/// Non-square `D ≡ 1 (mod 8)` below `bound` where `S_D ≠ 0`, in increasing order.
pub fn s_d_failures_below(bound: i64) -> Vec<(i64, i64)> {
    let ds: Vec<i64> = (9..bound)
        .step_by(8)
        .filter(|&d| !is_perfect_square(d as u64))
        .collect();
    ds.into_par_iter()
        .filter_map(|d| {
            let s = s_d_int(d).expect("domain checked");
            (s != 0).then_some((d, s))
        })
        .collect()
}
