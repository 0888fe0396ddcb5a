//! Divisor sums, degrees of the torus projection, Euler characteristics of the
//! triple-of-tori loci, and the external table of genus-two Euler characteristics.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Read;
use std::path::Path;

use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

use crate::arith::{divisors, factorize, isqrt_strict};
use crate::exactq::{format_rational, is_perfect_square, parse_rational, rat, ratio, Rational};
use crate::prototypes::enumerate_triple_e;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EulerError {
    #[error("e = {e} is not admissible for D = {d}: need e^2 < D and e^2 = D mod 8")]
    ResidueMismatch { d: i64, e: i64 },
    #[error("D = {0} is not 0, 1 or 4 mod 8 (or the requested variant needs another residue)")]
    UnsupportedResidue(i64),
    #[error("D = {0} is a perfect square")]
    SquareDiscriminant(i64),
    #[error("table parse error at line {line}: {msg}")]
    ParseError { line: usize, msg: String },
    #[error("no table entry for chi(W_{d}({stratum}))")]
    MissingTableEntry { d: i64, stratum: Stratum },
}

/// Sum of the positive divisors of `n` (`n ≥ 1`).
pub fn sigma1(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .map(|(p, k)| (p.pow(k + 1) - 1) / (p - 1))
        .product()
}

/// `[SL(2, Z) : Γ₀(m)] = m·Π_{p | m}(1 + 1/p)`.
pub fn c_index(m: u64) -> u64 {
    factorize(m)
        .into_iter()
        .map(|(p, k)| p.pow(k - 1) * (p + 1))
        .product()
}

/// Number of points of `P¹(Z/m)`, counted directly: primitive pairs `(c, d)`
/// modulo `m` divided by the number of units, each unit class acting freely.
pub fn p1_count(m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    let units = (1..m).filter(|u| u.gcd(&m) == 1).count() as u64;
    let mut primitive = 0u64;
    for c in 0..m {
        let g = c.gcd(&m);
        primitive += (0..m).filter(|d| d.gcd(&g) == 1).count() as u64;
    }
    primitive / units
}

/// Write `n = f²·q` with `q` squarefree.
pub fn squarefree_decompose(n: u64) -> (u64, u64) {
    let mut f = 1;
    let mut q = 1;
    for (p, k) in factorize(n) {
        f *= p.pow(k / 2);
        q *= p.pow(k % 2);
    }
    (f, q)
}

fn check_admissible(d: i64, e: i64) -> Result<u64, EulerError> {
    if d <= 0 || e * e >= d || (d - e * e) % 8 != 0 {
        return Err(EulerError::ResidueMismatch { d, e });
    }
    Ok(((d - e * e) / 8) as u64)
}

/// Degree of the projection of the `e`-part of the triple-of-tori locus onto the
/// modular curve: `Σ_{r | f, gcd(r, e) = 1} c((D − e²)/(8r²))` where
/// `(D − e²)/8 = f²q` with `q` squarefree. `gcd(r, 0) = r`.
pub fn m_d(d: i64, e: i64) -> Result<u64, EulerError> {
    let n = check_admissible(d, e)?;
    if is_perfect_square(d as u64) {
        return Err(EulerError::SquareDiscriminant(d));
    }
    let (f, _) = squarefree_decompose(n);
    let e_abs = e.unsigned_abs();
    Ok(divisors(f)
        .into_iter()
        .filter(|r| r.gcd(&e_abs) == 1)
        .map(|r| c_index(n / (r * r)))
        .sum())
}

/// Oracle for [`m_d`]: the number of triple-of-tori prototypes with this `e`.
pub fn m_d_bruteforce(d: i64, e: i64) -> Result<u64, EulerError> {
    check_admissible(d, e)?;
    enumerate_triple_e(d, e)
        .map(|v| v.len() as u64)
        .map_err(|_| EulerError::UnsupportedResidue(d))
}

/// True when `D` has no factorisation `D = f²D'` with `f > 1` and `D' ≡ 0, 1, 4 (mod 8)`.
pub fn is_12_primitive(d: u64) -> bool {
    (2..)
        .take_while(|f| f * f <= d)
        .filter(|f| d.is_multiple_of(f * f))
        .all(|f| !matches!((d / (f * f)) % 8, 0 | 1 | 4))
}

fn check_chi_domain(d: i64) -> Result<(), EulerError> {
    if d <= 0 || !matches!(d % 8, 0 | 1 | 4) {
        return Err(EulerError::UnsupportedResidue(d));
    }
    if is_perfect_square(d as u64) {
        return Err(EulerError::SquareDiscriminant(d));
    }
    Ok(())
}

/// `e` values with `e² < D` and `e² ≡ D (mod 8)`, increasing.
pub fn admissible_e(d: i64) -> impl Iterator<Item = i64> {
    let s = isqrt_strict(d.max(0) as u64) as i64;
    (-s..=s).filter(move |e| (d - e * e) % 8 == 0)
}

/// `χ(W_D(0³)) = −(1/6)·Σ_e m_D(e)`.
pub fn chi_w03(d: i64) -> Result<Rational, EulerError> {
    check_chi_domain(d)?;
    let mut total = 0u64;
    for e in admissible_e(d) {
        total += m_d(d, e)?;
    }
    Ok(ratio(-(total as i64), 6))
}

/// Euler characteristic of either spin component when `D ≡ 1 (mod 8)`; the two agree.
pub fn chi_w03_pm(d: i64) -> Result<Rational, EulerError> {
    check_chi_domain(d)?;
    if d % 8 != 1 {
        return Err(EulerError::UnsupportedResidue(d));
    }
    Ok(chi_w03(d)? / rat(2))
}

/// Loci whose Euler characteristics appear in the table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stratum {
    /// Eigenforms with a single zero of order four.
    W4,
    /// Genus-two eigenforms with a double zero.
    W2,
    /// Triples of tori.
    W03,
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stratum::W4 => "4",
            Stratum::W2 => "2",
            Stratum::W03 => "0^3",
        })
    }
}

/// One table row; `None` marks a locus that does not exist for this `D`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ChiRow {
    pub w4: Option<Rational>,
    pub w2: Option<Rational>,
    pub w03: Option<Rational>,
}

/// Euler characteristics keyed by discriminant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerTable {
    rows: BTreeMap<i64, ChiRow>,
}

/// Built-in values of `−χ` as `(D, W4, W2, W03)`; `""` marks an absent entry.
const BUILTIN: &[(i64, &str, &str, &str)] = &[
    (5, "", "3/10", ""),
    (8, "12/5", "3/4", "1/6"),
    (12, "5/6", "3/2", "1/3"),
    (13, "", "3/2", ""),
    (17, "10/3", "3", "4/3"),
    (20, "5/2", "3", "1"),
    (21, "", "3", ""),
    (24, "5/2", "9/2", "1"),
    (28, "10/3", "6", "4/3"),
    (29, "", "9/2", ""),
    (32, "5", "6", "2"),
    (33, "10", "9", "4"),
    (37, "", "15/6", ""),
    (40, "35/6", "21/2", "7/3"),
    (41, "40/3", "12", "16/3"),
    (44, "35/6", "21/2", "7/3"),
    (45, "", "6", ""),
    (48, "10", "12", "4"),
];

impl Default for EulerTable {
    fn default() -> Self {
        Self::builtin()
    }
}

impl EulerTable {
    /// The reference values shipped with the crate.
    pub fn builtin() -> Self {
        let neg = |s: &str| (!s.is_empty()).then(|| -parse_rational(s).expect("builtin literal"));
        let rows = BUILTIN
            .iter()
            .map(|&(d, w4, w2, w03)| {
                (
                    d,
                    ChiRow {
                        w4: neg(w4),
                        w2: neg(w2),
                        w03: neg(w03),
                    },
                )
            })
            .collect();
        Self { rows }
    }

    pub fn empty() -> Self {
        Self {
            rows: BTreeMap::new(),
        }
    }

    pub fn row(&self, d: i64) -> Option<&ChiRow> {
        self.rows.get(&d)
    }

    pub fn discriminants(&self) -> impl Iterator<Item = i64> + '_ {
        self.rows.keys().copied()
    }

    /// Insert rows, replacing existing ones and logging each replacement.
    pub fn merge(&mut self, other: EulerTable) {
        for (d, row) in other.rows {
            if self.rows.contains_key(&d) {
                log::warn!("table entry for D={d} overrides an existing value");
            }
            self.rows.insert(d, row);
        }
    }

    /// Parse CSV rows `D,chi_w4,chi_w2,chi_w03`; `-` marks an absent entry and a
    /// leading header row starting with `D` is skipped.
    pub fn parse_csv(input: impl Read) -> Result<Self, EulerError> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_reader(input);
        let mut rows = BTreeMap::new();
        for (idx, record) in reader.records().enumerate() {
            let line = idx + 1;
            let bad = |msg: String| EulerError::ParseError { line, msg };
            let record = record.map_err(|e| bad(e.to_string()))?;
            if idx == 0 && record.get(0).is_some_and(|f| f.eq_ignore_ascii_case("d")) {
                continue;
            }
            if record.len() != 4 {
                return Err(bad(format!("expected 4 fields, found {}", record.len())));
            }
            let d: i64 = record[0]
                .parse()
                .map_err(|_| bad(format!("bad discriminant {:?}", &record[0])))?;
            let cell = |s: &str| -> Result<Option<Rational>, EulerError> {
                if s == "-" {
                    Ok(None)
                } else {
                    parse_rational(s)
                        .map(Some)
                        .ok_or_else(|| bad(format!("bad rational {s:?}")))
                }
            };
            let row = ChiRow {
                w4: cell(&record[1])?,
                w2: cell(&record[2])?,
                w03: cell(&record[3])?,
            };
            rows.insert(d, row);
        }
        Ok(Self { rows })
    }
}

/// Built-in table overlaid with the rows of the CSV file at `path`.
pub fn load_table(path: impl AsRef<Path>) -> Result<EulerTable, EulerError> {
    let file = std::fs::File::open(path.as_ref()).map_err(|e| EulerError::ParseError {
        line: 0,
        msg: e.to_string(),
    })?;
    let mut table = EulerTable::builtin();
    table.merge(EulerTable::parse_csv(file)?);
    Ok(table)
}

pub fn lookup_chi(table: &EulerTable, d: i64, stratum: Stratum) -> Result<Rational, EulerError> {
    let row = table.row(d);
    let value = row.and_then(|r| match stratum {
        Stratum::W4 => r.w4.clone(),
        Stratum::W2 => r.w2.clone(),
        Stratum::W03 => r.w03.clone(),
    });
    value.ok_or(EulerError::MissingTableEntry { d, stratum })
}

/// One line of the `chi` report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiReportRow {
    pub d: i64,
    pub computed: Rational,
    pub table: Option<Rational>,
}

impl ChiReportRow {
    /// `Some(agrees)` when the table has a value to compare against.
    pub fn matches(&self) -> Option<bool> {
        self.table.as_ref().map(|t| *t == self.computed)
    }

    /// `D,chi_w03_computed,chi_w03_table,match`, with `-` for a missing table value.
    pub fn csv_row(&self) -> String {
        let table = self
            .table
            .as_ref()
            .map_or_else(|| "-".to_string(), format_rational);
        let ok = self
            .matches()
            .map_or("-", |m| if m { "true" } else { "false" });
        format!(
            "{},{},{},{}",
            self.d,
            format_rational(&self.computed),
            table,
            ok
        )
    }
}

pub const CHI_REPORT_HEADER: &str = "D,chi_w03_computed,chi_w03_table,match";

/// `χ(W_D(0³))` for every non-square `D ≡ 0, 1, 4 (mod 8)` in `[dmin, dmax]`.
pub fn chi_report(dmin: i64, dmax: i64, table: &EulerTable) -> Vec<ChiReportRow> {
    (dmin.max(1)..=dmax)
        .filter_map(|d| chi_w03(d).ok().map(|computed| (d, computed)))
        .map(|(d, computed)| ChiReportRow {
            d,
            computed,
            table: lookup_chi(table, d, Stratum::W03).ok(),
        })
        .collect()
}

/// True when every `χ` value in the row is negative (the sign convention of the table).
pub fn row_is_negative(row: &ChiRow) -> bool {
    [&row.w4, &row.w2, &row.w03]
        .into_iter()
        .flatten()
        .all(|x| *x < Rational::zero())
}
