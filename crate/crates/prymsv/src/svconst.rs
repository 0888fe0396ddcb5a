//! Volumes and Siegel–Veech constants of the genus-three Prym eigenform loci
//! with two double zeros, assembled from Euler characteristics.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::euler::{chi_w03, lookup_chi, EulerError, EulerTable, Stratum};
use crate::exactq::{format_rational, is_perfect_square, rat, ratio, Rational};
use crate::prototypes::Spin;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SvError {
    #[error("{0} is not divisible by 4")]
    NotDivisibleBy4(i64),
    #[error("D = {0} is outside the range covered by the formulas (need D > 9, non-square, D = 0, 1, 4 mod 8)")]
    OutsideTheoremHypotheses(i64),
    #[error("D = {0} is a perfect square")]
    SquareDiscriminant(i64),
    #[error("D = {0} has the wrong residue for this formula")]
    UnsupportedResidue(i64),
    #[error(transparent)]
    Euler(#[from] EulerError),
}

/// Correction coefficient of the `χ(W_{D/4}(2))` term.
pub fn b_d(d: i64) -> Result<u32, SvError> {
    if d <= 0 || d % 4 != 0 {
        return Err(SvError::NotDivisibleBy4(d));
    }
    let q = d / 4;
    Ok(match (q % 4, q % 8) {
        (2 | 3, _) => 0,
        (0, _) => 4,
        (_, 1) => 3,
        _ => 5,
    })
}

/// Euler characteristics feeding the constants at one discriminant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiInputs {
    pub w4: Rational,
    pub w2: Rational,
    /// `χ(W_{D/4}(2))`; ignored when `b_d == 0`.
    pub w2_quarter: Rational,
    pub b_d: u32,
    pub w03: Rational,
}

impl ChiInputs {
    /// `χ(W_D(2)) + b_D·χ(W_{D/4}(2))`.
    fn genus_two_part(&self) -> Rational {
        if self.b_d == 0 {
            self.w2.clone()
        } else {
            &self.w2 + rat(self.b_d as i64) * &self.w2_quarter
        }
    }

    /// Constants when `4 | D`.
    pub fn constants_even(&self) -> [Rational; 3] {
        let g2 = self.genus_two_part();
        let delta = &g2 + rat(9) * &self.w03;
        [
            rat(15) * &self.w4 / &delta,
            rat(9) * &g2 / &delta,
            rat(3) * &self.w03 / &delta,
        ]
    }

    /// Constants for either spin component when `D ≡ 1 (mod 8)`.
    pub fn constants_odd(&self) -> [Rational; 3] {
        let delta = rat(2) * &self.w2 + rat(9) * &self.w03;
        [
            rat(15) * &self.w4 / &delta,
            rat(18) * &self.w2 / &delta,
            rat(3) * &self.w03 / &delta,
        ]
    }

    /// Multiply every Euler characteristic by `k`.
    pub fn scaled(&self, k: &Rational) -> Self {
        Self {
            w4: &self.w4 * k,
            w2: &self.w2 * k,
            w2_quarter: &self.w2_quarter * k,
            b_d: self.b_d,
            w03: &self.w03 * k,
        }
    }
}

/// Which connected component a result refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Component {
    Whole,
    Spin(Spin),
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Whole => f.write_str("whole"),
            Component::Spin(s) => s.fmt(f),
        }
    }
}

/// Siegel–Veech constants and volume for one component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SvResult {
    pub d: i64,
    pub component: Component,
    pub b_d: Option<u32>,
    /// Coefficient of `π²` in the volume, exactly as the formula gives it (negative
    /// with the table's sign convention).
    pub volume_pi2: Rational,
    pub c1: Rational,
    pub c2: Rational,
    pub c3: Rational,
}

/// JSON shape of an [`SvResult`]; rationals are `p/q` strings.
#[derive(Debug, Serialize)]
pub struct SvJson {
    #[serde(rename = "D")]
    pub d: i64,
    pub component: String,
    pub c1: String,
    pub c2: String,
    pub c3: String,
    pub volume_pi2: String,
    #[serde(rename = "b_D")]
    pub b_d: Option<u32>,
}

impl SvResult {
    pub fn constants(&self) -> [&Rational; 3] {
        [&self.c1, &self.c2, &self.c3]
    }

    /// `|μ|/π²`.
    pub fn abs_volume_pi2(&self) -> Rational {
        self.volume_pi2.abs()
    }

    pub fn to_json(&self) -> SvJson {
        SvJson {
            d: self.d,
            component: self.component.to_string(),
            c1: format_rational(&self.c1),
            c2: format_rational(&self.c2),
            c3: format_rational(&self.c3),
            volume_pi2: format_rational(&self.volume_pi2),
            b_d: self.b_d,
        }
    }

    pub fn json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("plain struct serialises")
    }
}

/// The values every checked discriminant is expected to produce.
pub fn universal_constants() -> [Rational; 3] {
    [ratio(25, 9), rat(3), ratio(2, 9)]
}

fn reject_square(d: i64) -> Result<(), SvError> {
    if d > 0 && is_perfect_square(d as u64) {
        return Err(SvError::SquareDiscriminant(d));
    }
    Ok(())
}

fn gather_even(d: i64, table: &EulerTable, with_w4: bool) -> Result<ChiInputs, SvError> {
    let b = b_d(d)?;
    let w2_quarter = if b == 0 {
        Rational::zero()
    } else {
        lookup_chi(table, d / 4, Stratum::W2)?
    };
    Ok(ChiInputs {
        w4: if with_w4 {
            lookup_chi(table, d, Stratum::W4)?
        } else {
            Rational::zero()
        },
        w2: lookup_chi(table, d, Stratum::W2)?,
        w2_quarter,
        b_d: b,
        w03: chi_w03(d)?,
    })
}

fn gather_odd(d: i64, table: &EulerTable, with_w4: bool) -> Result<ChiInputs, SvError> {
    Ok(ChiInputs {
        w4: if with_w4 {
            lookup_chi(table, d, Stratum::W4)?
        } else {
            Rational::zero()
        },
        w2: lookup_chi(table, d, Stratum::W2)?,
        w2_quarter: Rational::zero(),
        b_d: 0,
        w03: chi_w03(d)?,
    })
}

/// `μ/π² = (1/36)(χ(W_D(2)) + b_D·χ(W_{D/4}(2)) + 9χ(W_D(0³)))` for `4 | D`.
pub fn volume(d: i64, table: &EulerTable) -> Result<Rational, SvError> {
    reject_square(d)?;
    if d <= 4 || d % 4 != 0 {
        return Err(SvError::UnsupportedResidue(d));
    }
    let x = gather_even(d, table, false)?;
    Ok((x.genus_two_part() + rat(9) * &x.w03) / rat(36))
}

/// `μ±/π² = (1/72)(2χ(W_D(2)) + 9χ(W_D(0³)))` for `D ≡ 1 (mod 8)`.
pub fn volume_pm(d: i64, table: &EulerTable) -> Result<Rational, SvError> {
    reject_square(d)?;
    if d <= 0 || d % 8 != 1 {
        return Err(SvError::UnsupportedResidue(d));
    }
    let x = gather_odd(d, table, false)?;
    Ok((rat(2) * &x.w2 + rat(9) * &x.w03) / rat(72))
}

/// Volume of the degree-24 cover of the projectivised locus on which the four
/// fixed points of the involution are labelled.
pub fn marked_cover_volume(projective_volume: &Rational) -> Rational {
    rat(24) * projective_volume
}

/// Siegel–Veech constants `(c₁, c₂, c₃)`, one result per component.
pub fn sv_constants(d: i64, table: &EulerTable) -> Result<Vec<SvResult>, SvError> {
    if d <= 9 || is_perfect_square(d as u64) || !matches!(d % 8, 0 | 1 | 4) {
        return Err(SvError::OutsideTheoremHypotheses(d));
    }
    if d % 8 == 1 {
        let x = gather_odd(d, table, true)?;
        let [c1, c2, c3] = x.constants_odd();
        let volume_pi2 = volume_pm(d, table)?;
        Ok([Spin::Plus, Spin::Minus]
            .into_iter()
            .map(|s| SvResult {
                d,
                component: Component::Spin(s),
                b_d: None,
                volume_pi2: volume_pi2.clone(),
                c1: c1.clone(),
                c2: c2.clone(),
                c3: c3.clone(),
            })
            .collect())
    } else {
        let x = gather_even(d, table, true)?;
        let [c1, c2, c3] = x.constants_even();
        Ok(vec![SvResult {
            d,
            component: Component::Whole,
            b_d: Some(x.b_d),
            volume_pi2: volume(d, table)?,
            c1,
            c2,
            c3,
        }])
    }
}

/// Outcome of the conjecture check at one discriminant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConjectureStatus {
    Holds,
    Fails(Vec<SvResult>),
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureReport {
    pub rows: Vec<(i64, ConjectureStatus)>,
}

impl ConjectureReport {
    fn count(&self, f: impl Fn(&ConjectureStatus) -> bool) -> usize {
        self.rows.iter().filter(|(_, s)| f(s)).count()
    }

    pub fn holds(&self) -> usize {
        self.count(|s| matches!(s, ConjectureStatus::Holds))
    }

    pub fn fails(&self) -> usize {
        self.count(|s| matches!(s, ConjectureStatus::Fails(_)))
    }

    pub fn skipped(&self) -> usize {
        self.count(|s| matches!(s, ConjectureStatus::Skipped(_)))
    }
}

/// Test `(c₁, c₂, c₃) = (25/9, 3, 2/9)` at every discriminant (`D ≡ 0, 1 mod 4`) in the range.
pub fn check_conjecture(ds: impl IntoIterator<Item = i64>, table: &EulerTable) -> ConjectureReport {
    let want = universal_constants();
    let rows = ds
        .into_iter()
        .filter(|d| *d > 0 && matches!(d % 4, 0 | 1))
        .map(|d| {
            let status = match sv_constants(d, table) {
                Ok(results) => {
                    if results
                        .iter()
                        .all(|r| r.constants().into_iter().eq(want.iter()))
                    {
                        ConjectureStatus::Holds
                    } else {
                        ConjectureStatus::Fails(results)
                    }
                }
                Err(e) => ConjectureStatus::Skipped(e.to_string()),
            };
            (d, status)
        })
        .collect();
    ConjectureReport { rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const CHECKED: [i64; 11] = [12, 17, 20, 24, 28, 32, 33, 40, 41, 44, 48];

    #[test]
    fn correction_coefficient() {
        assert_eq!(b_d(20), Ok(5));
        assert_eq!(b_d(32), Ok(4));
        assert_eq!(b_d(40), Ok(0));
        assert_eq!(b_d(12), Ok(0));
        assert_eq!(b_d(36), Ok(3));
        assert_eq!(b_d(17), Err(SvError::NotDivisibleBy4(17)));
    }

    #[test]
    fn volumes() {
        let t = EulerTable::builtin();
        assert_eq!(volume(12, &t), Ok(ratio(-1, 8)));
        assert_eq!(volume_pm(17, &t), Ok(ratio(-1, 4)));
        assert_eq!(volume(20, &t), Ok(ratio(-3, 8)));
        assert_eq!(volume(36, &t), Err(SvError::SquareDiscriminant(36)));
        assert!(matches!(
            volume(56, &t),
            Err(SvError::Euler(EulerError::MissingTableEntry { d: 56, .. }))
        ));
        assert_eq!(marked_cover_volume(&ratio(-1, 8)), rat(-3));
    }

    #[test]
    fn universal_values_on_table() {
        let t = EulerTable::builtin();
        for d in CHECKED {
            let res = sv_constants(d, &t).unwrap();
            assert_eq!(res.len(), if d % 8 == 1 { 2 } else { 1 });
            for r in &res {
                assert_eq!(
                    r.constants().map(Clone::clone),
                    universal_constants(),
                    "D={d}"
                );
                assert_eq!(&r.c1 + &r.c2 + &r.c3, rat(6));
            }
            if d % 8 == 1 {
                assert_eq!(res[0].constants(), res[1].constants());
                assert_eq!(res[0].volume_pi2, res[1].volume_pi2);
            }
        }
    }

    #[test]
    fn d48_by_hand() {
        let r = &sv_constants(48, &EulerTable::builtin()).unwrap()[0];
        assert_eq!(r.b_d, Some(4));
        assert_eq!(r.c1, rat(-150) / rat(-54));
        assert_eq!(r.c2, rat(9 * -18) / rat(-54));
        assert_eq!(r.c3, rat(-12) / rat(-54));
    }

    #[test]
    fn hypotheses_enforced() {
        let t = EulerTable::builtin();
        assert_eq!(
            sv_constants(8, &t),
            Err(SvError::OutsideTheoremHypotheses(8))
        );
        assert_eq!(
            sv_constants(16, &t),
            Err(SvError::OutsideTheoremHypotheses(16))
        );
        assert_eq!(
            sv_constants(21, &t),
            Err(SvError::OutsideTheoremHypotheses(21))
        );
        assert!(matches!(
            sv_constants(57, &t),
            Err(SvError::Euler(EulerError::MissingTableEntry { .. }))
        ));
    }

    #[test]
    fn json_shape() {
        let r = &sv_constants(17, &EulerTable::builtin()).unwrap()[0];
        assert_eq!(
            r.json_string(),
            r#"{"D":17,"component":"plus","c1":"25/9","c2":"3","c3":"2/9","volume_pi2":"-1/4","b_D":null}"#
        );
        assert_eq!(r.abs_volume_pi2(), ratio(1, 4));
        let w = &sv_constants(20, &EulerTable::builtin()).unwrap()[0];
        assert!(w.json_string().ends_with(r#""volume_pi2":"-3/8","b_D":5}"#));
    }

    #[test]
    fn conjecture_report() {
        let rep = check_conjecture(5..=48, &EulerTable::builtin());
        assert_eq!(rep.fails(), 0);
        assert_eq!(rep.holds(), 11);
        let status = |d: i64| {
            rep.rows
                .iter()
                .find(|(x, _)| *x == d)
                .map(|(_, s)| s.clone())
                .unwrap()
        };
        assert!(matches!(status(8), ConjectureStatus::Skipped(_)));
        assert!(matches!(status(16), ConjectureStatus::Skipped(_)));
        assert_eq!(status(41), ConjectureStatus::Holds);
    }

    fn positive_rat() -> impl Strategy<Value = Rational> {
        (1i64..500, 1i64..500).prop_map(|(n, d)| ratio(n, d))
    }

    fn negative_rat() -> impl Strategy<Value = Rational> {
        positive_rat().prop_map(|x| -x)
    }

    proptest! {
        #[test]
        fn constants_are_scale_invariant(
            w4 in negative_rat(), w2 in negative_rat(), wq in negative_rat(), w03 in negative_rat(),
            b in prop::sample::select(vec![0u32, 3, 4, 5]), k in positive_rat(),
        ) {
            let x = ChiInputs { w4, w2, w2_quarter: wq, b_d: b, w03 };
            let y = x.scaled(&k);
            prop_assert_eq!(x.constants_even(), y.constants_even());
            prop_assert_eq!(x.constants_odd(), y.constants_odd());
        }
    }
}
