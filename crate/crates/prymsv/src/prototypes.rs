//! Integer prototypes `(a, b, d, e)` for the three boundary families:
//! horizontally periodic surfaces with a stable cylinder decomposition,
//! triples of tori, and splitting prototypes in genus two.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::arith::{divisors, gcd4, isqrt_strict};
use crate::exactq::{Discriminant, ExactError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProtoError {
    #[error("{0} is not a valid discriminant for this family")]
    InvalidDiscriminant(i64),
    #[error("discriminant {0} is 5 mod 8; the locus is empty")]
    UnsupportedResidue(i64),
    #[error("the parity classification is only proved for b = 0 (got b = {0})")]
    BRequired(i64),
}

impl From<ExactError> for ProtoError {
    fn from(e: ExactError) -> Self {
        match e {
            ExactError::InvalidDiscriminant(d) => ProtoError::InvalidDiscriminant(d),
            other => unreachable!("unexpected arithmetic error {other}"),
        }
    }
}

macro_rules! quadruple_type {
    ($(#[$meta:meta])* $name:ident, $kind:literal) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name {
            pub a: i64,
            pub b: i64,
            pub d: i64,
            pub e: i64,
            pub disc: Discriminant,
        }

        impl $name {
            /// Label used in CSV output.
            pub const KIND: &'static str = $kind;

            /// One CSV row `D,kind,a,b,d,e`.
            pub fn csv_row(&self) -> String {
                format!("{},{},{},{},{},{}", self.disc, Self::KIND, self.a, self.b, self.d, self.e)
            }

            fn sort_key(&self) -> (i64, i64, i64, i64) {
                (self.e, self.a, self.d, self.b)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "({},{},{},{})", self.a, self.b, self.d, self.e)
            }
        }
    };
}

quadruple_type!(
    /// Cylinder prototype: `D = e² + 8ad`, `0 ≤ b < gcd(a, d)`.
    CylProto,
    "cyl"
);
quadruple_type!(
    /// Triple-of-tori prototype: `D = e² + 8ad`, `0 ≤ b < a`.
    TripleProto,
    "triple"
);
quadruple_type!(
    /// Splitting prototype in genus two: `D' = e² + 4ad`, `0 ≤ b < gcd(a, d)`, `a > d + e`.
    SplitProto,
    "split"
);

impl CylProto {
    pub fn is_valid(&self) -> bool {
        let (a, b, d, e) = (self.a, self.b, self.d, self.e);
        a > 0
            && d > 0
            && (0..a.gcd(&d)).contains(&b)
            && e * e + 8 * a * d == self.disc.value() as i64
            && gcd4(a, b, d, e) == 1
    }
}

impl TripleProto {
    pub fn is_valid(&self) -> bool {
        let (a, b, d, e) = (self.a, self.b, self.d, self.e);
        a > 0
            && d > 0
            && (0..a).contains(&b)
            && e * e + 8 * a * d == self.disc.value() as i64
            && gcd4(a, b, d, e) == 1
    }
}

impl SplitProto {
    pub fn is_valid(&self) -> bool {
        let (a, b, d, e) = (self.a, self.b, self.d, self.e);
        a > 0
            && d > 0
            && (0..a.gcd(&d)).contains(&b)
            && a > d + e
            && e * e + 4 * a * d == self.disc.value() as i64
            && gcd4(a, b, d, e) == 1
    }

    pub fn is_reduced(&self) -> bool {
        self.d == 1 && self.b == 0
    }
}

/// Walk `e` with `e² < D`, `e² ≡ D (mod modulus)`, then `a | (D − e²)/modulus`.
fn for_each_ead(disc: u64, modulus: u64, mut visit: impl FnMut(i64, i64, i64)) {
    let s = isqrt_strict(disc) as i64;
    for e in -s..=s {
        let rest = disc - (e * e) as u64;
        if !rest.is_multiple_of(modulus) {
            continue;
        }
        let n = rest / modulus;
        for a in divisors(n) {
            visit(e, a as i64, (n / a) as i64);
        }
    }
}

/// All cylinder prototypes of discriminant `d`, sorted by `(e, a, d, b)`.
///
/// Discriminants that are 5 mod 8 yield an empty list.
pub fn enumerate_cyl(d: i64) -> Result<Vec<CylProto>, ProtoError> {
    let disc = Discriminant::new(d)?;
    let mut out = Vec::new();
    for_each_ead(disc.value(), 8, |e, a, dd| {
        for b in 0..a.gcd(&dd) {
            if gcd4(a, b, dd, e) == 1 {
                out.push(CylProto {
                    a,
                    b,
                    d: dd,
                    e,
                    disc,
                });
            }
        }
    });
    out.sort_by_key(CylProto::sort_key);
    Ok(out)
}

fn triple_disc(d: i64) -> Result<Discriminant, ProtoError> {
    let disc = Discriminant::new(d)?;
    if d <= 4 {
        return Err(ProtoError::InvalidDiscriminant(d));
    }
    if d % 8 == 5 {
        return Err(ProtoError::UnsupportedResidue(d));
    }
    Ok(disc)
}

/// All triple-of-tori prototypes of discriminant `d`, sorted by `(e, a, d, b)`.
pub fn enumerate_triple(d: i64) -> Result<Vec<TripleProto>, ProtoError> {
    let disc = triple_disc(d)?;
    let mut out = Vec::new();
    for_each_ead(disc.value(), 8, |e, a, dd| {
        push_triples(&mut out, disc, e, a, dd);
    });
    out.sort_by_key(TripleProto::sort_key);
    Ok(out)
}

/// The triple-of-tori prototypes of discriminant `d` with the given `e`.
pub fn enumerate_triple_e(d: i64, e: i64) -> Result<Vec<TripleProto>, ProtoError> {
    let disc = triple_disc(d)?;
    let mut out = Vec::new();
    let rest = d - e * e;
    if rest > 0 && rest % 8 == 0 {
        let n = (rest / 8) as u64;
        for a in divisors(n) {
            push_triples(&mut out, disc, e, a as i64, (n / a) as i64);
        }
    }
    out.sort_by_key(TripleProto::sort_key);
    Ok(out)
}

fn push_triples(out: &mut Vec<TripleProto>, disc: Discriminant, e: i64, a: i64, d: i64) {
    for b in 0..a {
        if gcd4(a, b, d, e) == 1 {
            out.push(TripleProto { a, b, d, e, disc });
        }
    }
}

/// Spin component label for `D ≡ 1 (mod 8)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Spin {
    Plus,
    Minus,
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Spin::Plus => "plus",
            Spin::Minus => "minus",
        })
    }
}

/// Invariants of the `GL⁺(2, R)`-orbit of a triple of tori:
/// `D = e² + 8ℓ²m` with `ℓ = gcd(a, b, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitClass {
    pub e: i64,
    pub ell: i64,
    pub m: i64,
    pub disc: Discriminant,
    pub spin: Option<Spin>,
}

pub fn orbit_of(p: &TripleProto) -> OrbitClass {
    let ell = p.a.gcd(&p.b).gcd(&p.d);
    let spin = (p.disc.value() % 8 == 1).then(|| {
        if p.e.rem_euclid(4) == 1 {
            Spin::Plus
        } else {
            Spin::Minus
        }
    });
    OrbitClass {
        e: p.e,
        ell,
        m: p.a * p.d / (ell * ell),
        disc: p.disc,
        spin,
    }
}

/// All splitting prototypes of discriminant `d'`, sorted by `(e, a, d, b)`.
pub fn enumerate_split(dprime: i64) -> Result<Vec<SplitProto>, ProtoError> {
    let disc = Discriminant::new(dprime)?;
    if dprime <= 4 {
        return Err(ProtoError::InvalidDiscriminant(dprime));
    }
    let mut out = Vec::new();
    for_each_ead(disc.value(), 4, |e, a, d| {
        if a <= d + e {
            return;
        }
        for b in 0..a.gcd(&d) {
            if gcd4(a, b, d, e) == 1 {
                out.push(SplitProto { a, b, d, e, disc });
            }
        }
    });
    out.sort_by_key(SplitProto::sort_key);
    Ok(out)
}

/// Splitting prototypes with `d = 1` and `b = 0`.
pub fn reduced_split(dprime: i64) -> Result<Vec<SplitProto>, ProtoError> {
    Ok(enumerate_split(dprime)?
        .into_iter()
        .filter(SplitProto::is_reduced)
        .collect())
}

/// The five ways a genus-two splitting surface can be collapsed, indexed by
/// the configuration of Weierstrass points that is pinched (cases 1 to 5).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SplitCase {
    Case1,
    Case2,
    Case3,
    Case4,
    Case5,
}

impl SplitCase {
    pub const ALL: [SplitCase; 5] = [
        SplitCase::Case1,
        SplitCase::Case2,
        SplitCase::Case3,
        SplitCase::Case4,
        SplitCase::Case5,
    ];
}

/// Discriminant of the genus-three eigenform obtained from a splitting prototype
/// of discriminant `D'`: either `D'` itself or `4D'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SplitTarget {
    SameD,
    FourD,
}

/// Parity rule deciding whether case `case` applied to `p` lands in discriminant `D'` or `4D'`.
pub fn classify_split(p: &SplitProto, case: SplitCase) -> Result<SplitTarget, ProtoError> {
    if p.b != 0 {
        return Err(ProtoError::BRequired(p.b));
    }
    let even = |x: i64| x.rem_euclid(2) == 0;
    let (a, d, e) = (p.a, p.d, p.e);
    let same = match case {
        SplitCase::Case1 => even(a),
        SplitCase::Case2 => even(a) && even(d),
        SplitCase::Case3 => even(d) && even(e),
        SplitCase::Case4 => even(a - e) && even(d),
        SplitCase::Case5 => even(a - d - e),
    };
    Ok(if same {
        SplitTarget::SameD
    } else {
        SplitTarget::FourD
    })
}

/// Residue classes governing the degree of the forgetful maps onto genus-two loci.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DegreeCase {
    /// `4 | D` with `D/4 ≡ 2, 3 (mod 4)`.
    QuarterTwoOrThreeMod4,
    /// `D/4 ≡ 0 (mod 4)`.
    QuarterZeroMod4,
    /// `D/4 ≡ 1 (mod 8)`.
    QuarterOneMod8,
    /// `D/4 ≡ 5 (mod 8)`.
    QuarterFiveMod8,
    /// `D ≡ 1 (mod 8)`.
    OddOneMod8,
}

impl DegreeCase {
    pub fn of(d: i64) -> Result<Self, ProtoError> {
        Discriminant::new(d)?;
        if d % 8 == 5 {
            return Err(ProtoError::UnsupportedResidue(d));
        }
        if d % 8 == 1 {
            return Ok(DegreeCase::OddOneMod8);
        }
        let q = d / 4;
        Ok(match (q % 4, q % 8) {
            (2 | 3, _) => DegreeCase::QuarterTwoOrThreeMod4,
            (0, _) => DegreeCase::QuarterZeroMod4,
            (_, 1) => DegreeCase::QuarterOneMod8,
            _ => DegreeCase::QuarterFiveMod8,
        })
    }

    /// The degree divided by `4!`, as stated for each case.
    pub fn expected(self) -> u32 {
        match self {
            DegreeCase::QuarterTwoOrThreeMod4 => 1,
            DegreeCase::QuarterZeroMod4 => 4,
            DegreeCase::QuarterOneMod8 => 3,
            DegreeCase::QuarterFiveMod8 => 5,
            DegreeCase::OddOneMod8 => 2,
        }
    }

    /// Which classification outcome is being counted for this case.
    pub fn target(self) -> SplitTarget {
        match self {
            DegreeCase::QuarterTwoOrThreeMod4 | DegreeCase::OddOneMod8 => SplitTarget::SameD,
            _ => SplitTarget::FourD,
        }
    }
}

/// Outcome of the degree count at one discriminant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeCount {
    pub case: DegreeCase,
    /// Each witness with the number of cases `1..=5` that reach the target discriminant.
    pub witnesses: Vec<(SplitProto, u32)>,
}

impl DegreeCount {
    pub fn matches_expected(&self) -> bool {
        let want = self.case.expected();
        !self.witnesses.is_empty() && self.witnesses.iter().all(|&(_, n)| n == want)
    }
}

/// Count, for the witness prototypes of the case containing `d`, how many of the
/// five collapse cases produce the counted discriminant.
///
/// Witnesses satisfy `D' = e² + 4ad` and `b = 0` but are not required to satisfy
/// `a > d + e`; for small `D` some of them sit on that boundary.
pub fn split_degree_counts(d: i64) -> Result<DegreeCount, ProtoError> {
    let case = DegreeCase::of(d)?;
    let quarter = d / 4;
    let (base, shapes): (i64, Vec<(i64, i64)>) = match case {
        DegreeCase::QuarterTwoOrThreeMod4 => (d, vec![(quarter, 0)]),
        DegreeCase::QuarterZeroMod4 => (quarter, vec![(quarter / 4, 0)]),
        DegreeCase::QuarterOneMod8 => (
            quarter,
            vec![((quarter - 1) / 4, -1), ((quarter - 1) / 4, 1)],
        ),
        DegreeCase::QuarterFiveMod8 => (quarter, vec![((quarter - 1) / 4, 1)]),
        DegreeCase::OddOneMod8 => (d, vec![((d - 1) / 4, -1), ((d - 1) / 4, 1)]),
    };
    let disc = Discriminant::new(base)?;
    let target = case.target();
    let mut witnesses = Vec::new();
    for (a, e) in shapes {
        if a <= 0 {
            return Err(ProtoError::InvalidDiscriminant(d));
        }
        let w = SplitProto {
            a,
            b: 0,
            d: 1,
            e,
            disc,
        };
        debug_assert_eq!(e * e + 4 * a, base);
        let mut hits = 0;
        for case in SplitCase::ALL {
            if classify_split(&w, case)? == target {
                hits += 1;
            }
        }
        witnesses.push((w, hits));
    }
    Ok(DegreeCount { case, witnesses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{BTreeSet, HashMap};

    fn tuples<T: Copy>(
        v: &[T],
        f: impl Fn(T) -> (i64, i64, i64, i64),
    ) -> BTreeSet<(i64, i64, i64, i64)> {
        v.iter().map(|&p| f(p)).collect()
    }

    #[test]
    fn cylinder_examples() {
        let c8 = enumerate_cyl(8).unwrap();
        assert_eq!(
            tuples(&c8, |p| (p.a, p.b, p.d, p.e)),
            BTreeSet::from([(1, 0, 1, 0)])
        );
        let c17 = enumerate_cyl(17).unwrap();
        let want = BTreeSet::from([
            (1, 0, 2, 1),
            (1, 0, 2, -1),
            (2, 0, 1, 1),
            (2, 0, 1, -1),
            (1, 0, 1, 3),
            (1, 0, 1, -3),
        ]);
        assert_eq!(tuples(&c17, |p| (p.a, p.b, p.d, p.e)), want);
        assert_eq!(c17.len(), 6);
        assert!(enumerate_cyl(5).unwrap().is_empty());
        assert_eq!(enumerate_cyl(7), Err(ProtoError::InvalidDiscriminant(7)));
    }

    #[test]
    fn cylinder_order_is_lexicographic() {
        let c = enumerate_cyl(17).unwrap();
        let keys: Vec<_> = c.iter().map(|p| (p.e, p.a, p.d, p.b)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(c[0].csv_row(), "17,cyl,1,0,1,-3");
    }

    #[test]
    fn triple_examples() {
        let t = enumerate_triple_e(17, 1).unwrap();
        assert_eq!(
            tuples(&t, |p| (p.a, p.b, p.d, p.e)),
            BTreeSet::from([(1, 0, 2, 1), (2, 0, 1, 1), (2, 1, 1, 1)])
        );
        assert_eq!(enumerate_triple_e(8, 0).unwrap().len(), 1);
        assert_eq!(enumerate_triple_e(33, 1).unwrap().len(), 7);
        assert_eq!(
            enumerate_triple(21),
            Err(ProtoError::UnsupportedResidue(21))
        );
        assert_eq!(enumerate_triple(4), Err(ProtoError::InvalidDiscriminant(4)));
    }

    #[test]
    fn orbit_examples() {
        let d17 = Discriminant::new(17).unwrap();
        let p = TripleProto {
            a: 2,
            b: 1,
            d: 1,
            e: 1,
            disc: d17,
        };
        let o = orbit_of(&p);
        assert_eq!((o.e, o.ell, o.m, o.spin), (1, 1, 2, Some(Spin::Plus)));
        let x = orbit_of(&TripleProto {
            a: 1,
            b: 0,
            d: 2,
            e: 1,
            disc: d17,
        });
        let y = orbit_of(&TripleProto {
            a: 2,
            b: 0,
            d: 1,
            e: 1,
            disc: d17,
        });
        assert_eq!(x, y);
        let z = orbit_of(&TripleProto {
            a: 1,
            b: 0,
            d: 1,
            e: 0,
            disc: Discriminant::new(8).unwrap(),
        });
        assert_eq!((z.e, z.ell, z.m, z.spin), (0, 1, 1, None));
        assert_eq!(
            orbit_of(&TripleProto {
                a: 1,
                b: 0,
                d: 2,
                e: -1,
                disc: d17
            })
            .spin,
            Some(Spin::Minus)
        );
        assert_eq!(
            orbit_of(&TripleProto {
                a: 1,
                b: 0,
                d: 1,
                e: -3,
                disc: d17
            })
            .spin,
            Some(Spin::Plus)
        );
    }

    #[test]
    fn split_examples() {
        let s8 = enumerate_split(8).unwrap();
        assert_eq!(
            tuples(&s8, |p| (p.a, p.b, p.d, p.e)),
            BTreeSet::from([(2, 0, 1, 0), (1, 0, 1, -2)])
        );
        let s17 = enumerate_split(17).unwrap();
        assert_eq!(s17.len(), 6);
        let set = tuples(&s17, |p| (p.a, p.b, p.d, p.e));
        assert!(set.contains(&(4, 0, 1, -1)) && set.contains(&(4, 0, 1, 1)));
        assert!(s17.iter().all(|p| p.b < p.a.gcd(&p.d)));
        let r17 = reduced_split(17).unwrap();
        assert!(r17.iter().all(|p| p.d == 1 && p.b == 0));
        assert_eq!(r17.len(), 3);
    }

    #[test]
    fn split_parity_examples() {
        let d17 = Discriminant::new(17).unwrap();
        let p = SplitProto {
            a: 4,
            b: 0,
            d: 1,
            e: -1,
            disc: d17,
        };
        assert_eq!(classify_split(&p, SplitCase::Case1), Ok(SplitTarget::SameD));
        assert_eq!(classify_split(&p, SplitCase::Case5), Ok(SplitTarget::SameD));
        let q = SplitProto {
            a: 3,
            b: 0,
            d: 1,
            e: 1,
            disc: d17,
        };
        assert_eq!(classify_split(&q, SplitCase::Case5), Ok(SplitTarget::FourD));
        let r = SplitProto {
            a: 2,
            b: 1,
            d: 2,
            e: -1,
            disc: d17,
        };
        assert_eq!(
            classify_split(&r, SplitCase::Case1),
            Err(ProtoError::BRequired(1))
        );
    }

    #[test]
    fn degree_examples() {
        let c = split_degree_counts(36).unwrap();
        assert_eq!(c.case, DegreeCase::QuarterOneMod8);
        assert_eq!(c.witnesses.len(), 2);
        assert!(c.witnesses.iter().all(|&(w, n)| n == 3 && w.a == 2));
        let c = split_degree_counts(52).unwrap();
        assert_eq!((c.case, c.witnesses[0].1), (DegreeCase::QuarterFiveMod8, 5));
        let c = split_degree_counts(17).unwrap();
        assert_eq!(c.case, DegreeCase::OddOneMod8);
        assert!(c.matches_expected());
        assert_eq!(
            split_degree_counts(13),
            Err(ProtoError::UnsupportedResidue(13))
        );
    }

    #[test]
    fn enumerations_validate_and_partition() {
        for d in (5..=600).filter(|d| matches!(d % 8, 0 | 1 | 4)) {
            let all = enumerate_triple(d).unwrap();
            assert!(all.iter().all(TripleProto::is_valid));
            let s = isqrt_strict(d as u64) as i64;
            let mut total = 0;
            for e in -s..=s {
                let n = enumerate_triple_e(d, e).unwrap().len();
                total += n;
                if d % 8 == 1 {
                    assert_eq!(n, enumerate_triple_e(d, -e).unwrap().len());
                }
            }
            assert_eq!(total, all.len());
            assert!(enumerate_cyl(d).unwrap().iter().all(CylProto::is_valid));
            assert!(enumerate_split(d).unwrap().iter().all(SplitProto::is_valid));
            let dedup: BTreeSet<_> = all.iter().copied().collect();
            assert_eq!(dedup.len(), all.len());
        }
    }

    /// Compare the divisor-driven enumerators with a blind box search.
    #[test]
    fn enumerations_match_box_search() {
        for d in 5..=160i64 {
            if !matches!(d % 4, 0 | 1) {
                continue;
            }
            let mut cyl = BTreeSet::new();
            let mut split = BTreeSet::new();
            for e in -13i64..=13 {
                for a in 1..=d / 4 {
                    for dd in 1..=d / 4 {
                        let cyl_eq = e * e + 8 * a * dd == d;
                        let split_eq = e * e + 4 * a * dd == d && a > dd + e;
                        if !cyl_eq && !split_eq {
                            continue;
                        }
                        for b in (0..a).filter(|&b| b < a.gcd(&dd) && gcd4(a, b, dd, e) == 1) {
                            if cyl_eq {
                                cyl.insert((a, b, dd, e));
                            }
                            if split_eq {
                                split.insert((a, b, dd, e));
                            }
                        }
                    }
                }
            }
            assert_eq!(
                tuples(&enumerate_cyl(d).unwrap(), |p| (p.a, p.b, p.d, p.e)),
                cyl,
                "cyl D={d}"
            );
            assert_eq!(
                tuples(&enumerate_split(d).unwrap(), |p| (p.a, p.b, p.d, p.e)),
                split,
                "split D={d}"
            );
        }
    }

    /// `(e, gcd(a, b, d))` determines the orbit class, and the class data is consistent.
    #[test]
    fn orbit_class_determined_by_e_and_ell() {
        for d in (5..=2000).filter(|d| matches!(d % 8, 0 | 1 | 4)) {
            let mut seen: HashMap<(i64, i64), OrbitClass> = HashMap::new();
            for p in enumerate_triple(d).unwrap() {
                let o = orbit_of(&p);
                assert_eq!(o.e.gcd(&o.ell), 1);
                assert_eq!(o.e * o.e + 8 * o.ell * o.ell * o.m, d);
                assert_eq!(o.spin.is_some(), d % 8 == 1);
                let key = (p.e, p.a.gcd(&p.b).gcd(&p.d));
                if let Some(prev) = seen.insert(key, o) {
                    assert_eq!(prev, o);
                }
            }
        }
    }

    #[test]
    fn degree_counts_three_discriminants_per_case() {
        let cases: [(DegreeCase, [i64; 3]); 5] = [
            (DegreeCase::QuarterTwoOrThreeMod4, [24, 40, 44]),
            (DegreeCase::QuarterZeroMod4, [32, 48, 80]),
            (DegreeCase::QuarterOneMod8, [68, 132, 164]),
            (DegreeCase::QuarterFiveMod8, [20, 52, 84]),
            (DegreeCase::OddOneMod8, [17, 33, 41]),
        ];
        for (case, ds) in cases {
            for d in ds {
                let c = split_degree_counts(d).unwrap();
                assert_eq!(c.case, case, "D={d}");
                assert!(c.matches_expected(), "D={d}: {:?}", c.witnesses);
            }
        }
    }
}
