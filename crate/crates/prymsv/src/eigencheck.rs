//! Exact checks of the real-multiplication structure attached to each prototype:
//! the generator `T` of the order, its self-adjointness for the intersection form,
//! its quadratic relation, and the eigenform relation `v·T = λ·v` on periods.

use std::fmt;

use num_integer::Integer;
use num_traits::One;
use thiserror::Error;

use crate::exactq::{lambda_of, quad_sign, rat, Discriminant, QuadComplex, QuadNum, Rational};
use crate::prototypes::{CylProto, SplitCase, SplitProto, TripleProto};

pub type Mat4 = [[i64; 4]; 4];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EigenError {
    #[error("{0} does not satisfy its prototype constraints")]
    InvalidPrototype(String),
    #[error("endomorphism checks require b = 0 (got b = {0})")]
    BRequired(i64),
    #[error("no endomorphism matrix is available for {0:?}")]
    UnsupportedCase(SplitCase),
}

/// Intersection form with `⟨a₁, b₁⟩ = 1`, `⟨a₂, b₂⟩ = 2`.
pub const J12: Mat4 = [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 2], [0, 0, -2, 0]];
/// Intersection form with `⟨a₁, b₁⟩ = 2`, `⟨a₂, b₂⟩ = 1`.
pub const J21: Mat4 = [[0, 2, 0, 0], [-2, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]];

/// A generator of the order together with the symplectic form it should respect.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndoMatrix {
    pub entries: Mat4,
    pub form: Mat4,
}

pub fn mat_mul(x: &Mat4, y: &Mat4) -> Mat4 {
    let mut out = [[0; 4]; 4];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = (0..4).map(|k| x[i][k] * y[k][j]).sum();
        }
    }
    out
}

pub fn transpose(x: &Mat4) -> Mat4 {
    let mut out = [[0; 4]; 4];
    for (i, row) in x.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            out[j][i] = *v;
        }
    }
    out
}

/// `(e·Id, 2B; B*, 0)` with `B = (a b; 0 d)` and `B* = (d −b; 0 a)`.
pub fn build_t(a: i64, b: i64, d: i64, e: i64) -> EndoMatrix {
    let c = 0;
    EndoMatrix {
        entries: [
            [e, 0, 2 * a, 2 * b],
            [0, e, 2 * c, 2 * d],
            [d, -b, 0, 0],
            [-c, a, 0, 0],
        ],
        form: J12,
    }
}

/// The adjugate-style involution `(a b; c d) ↦ (d −b; −c a)`.
pub fn b_star(m: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    [[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]]
}

/// `Tᵀ·J = J·T`.
pub fn verify_selfadjoint(t: &Mat4, j: &Mat4) -> bool {
    mat_mul(&transpose(t), j) == mat_mul(j, t)
}

/// `T² = s·T + c·Id`.
pub fn satisfies_quadratic(t: &Mat4, s: i64, c: i64) -> bool {
    let sq = mat_mul(t, t);
    (0..4).all(|i| (0..4).all(|j| sq[i][j] == s * t[i][j] + if i == j { c } else { 0 }))
}

/// Row vector times matrix.
pub fn row_times(v: &[QuadComplex; 4], t: &Mat4) -> [QuadComplex; 4] {
    let disc = v[0].re.disc;
    std::array::from_fn(|j| {
        (0..4).fold(QuadComplex::zero(disc), |acc, i| {
            &acc + &v[i].scale_int(t[i][j])
        })
    })
}

/// `v·T − λ·v`.
pub fn eigen_residual(v: &[QuadComplex; 4], t: &Mat4, eigenvalue: &QuadNum) -> [QuadComplex; 4] {
    let vt = row_times(v, t);
    std::array::from_fn(|j| &vt[j] - &v[j].try_scale(eigenvalue).expect("same field"))
}

/// Everything needed to run the three algebraic checks for one prototype.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraCase {
    pub endo: EndoMatrix,
    /// `T² = trace·T + norm·Id`.
    pub trace: i64,
    pub norm: i64,
    pub periods: [QuadComplex; 4],
    pub eigenvalue: QuadNum,
}

impl AlgebraCase {
    pub fn selfadjoint(&self) -> bool {
        verify_selfadjoint(&self.endo.entries, &self.endo.form)
    }

    pub fn quadratic(&self) -> bool {
        satisfies_quadratic(&self.endo.entries, self.trace, self.norm)
    }

    pub fn eigen(&self) -> bool {
        eigen_residual(&self.periods, &self.endo.entries, &self.eigenvalue)
            .iter()
            .all(QuadComplex::is_zero)
    }

    /// The eigenvalue is a positive root of `X² − trace·X − norm`.
    pub fn eigenvalue_is_positive_root(&self) -> bool {
        let x = &self.eigenvalue;
        let poly = &(&(x * x) - &x.scale(&rat(self.trace))) - &QuadNum::from_int(self.norm, x.disc);
        poly.is_zero() && quad_sign(x) == 1
    }

    fn all_pass(&self) -> bool {
        self.selfadjoint() && self.quadratic() && self.eigen()
    }

    /// For each of the 16 entries, whether adding 1 to it breaks at least one check.
    pub fn perturbations_detected(&self) -> Vec<bool> {
        let mut out = Vec::with_capacity(16);
        for i in 0..4 {
            for j in 0..4 {
                let mut bent = self.clone();
                bent.endo.entries[i][j] += 1;
                out.push(!bent.all_pass());
            }
        }
        out
    }
}

/// Name and outcome of one exact check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
}

/// All checks run on one prototype.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenReport {
    pub disc: Discriminant,
    pub kind: String,
    pub abde: (i64, i64, i64, i64),
    pub checks: Vec<Check>,
}

impl EigenReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Rows `D,kind,a,b,d,e,check,pass`.
    pub fn csv_rows(&self) -> Vec<String> {
        let (a, b, d, e) = self.abde;
        self.checks
            .iter()
            .map(|c| {
                format!(
                    "{},{},{},{},{},{},{},{}",
                    self.disc, self.kind, a, b, d, e, c.name, c.pass
                )
            })
            .collect()
    }
}

pub const EIGEN_REPORT_HEADER: &str = "D,kind,a,b,d,e,check,pass";

fn algebra_checks(case: &AlgebraCase) -> Vec<Check> {
    vec![
        Check {
            name: "selfadjoint",
            pass: case.selfadjoint(),
        },
        Check {
            name: "quadratic",
            pass: case.quadratic(),
        },
        Check {
            name: "eigen",
            pass: case.eigen(),
        },
        Check {
            name: "eigenvalue",
            pass: case.eigenvalue_is_positive_root(),
        },
    ]
}

fn int(n: i64, disc: Discriminant) -> QuadNum {
    QuadNum::from_int(n, disc)
}

fn cx(re: QuadNum, im: QuadNum) -> QuadComplex {
    QuadComplex::new(re, im)
}

/// Periods `(1, i, 2a/λ, (2b + 2id)/λ)` with the intersection form `J12`.
pub fn cyl_case(p: &CylProto) -> Result<AlgebraCase, EigenError> {
    if !p.is_valid() {
        return Err(EigenError::InvalidPrototype(p.csv_row()));
    }
    let disc = p.disc;
    let lam = lambda_of(disc, p.e);
    let inv = lam.inverse().expect("lambda is a unit");
    let zero = QuadNum::zero(disc);
    let periods = [
        QuadComplex::real(int(1, disc)),
        QuadComplex::imag(int(1, disc)),
        QuadComplex::real(&int(2 * p.a, disc) * &inv),
        cx(&int(2 * p.b, disc) * &inv, &int(2 * p.d, disc) * &inv),
    ];
    debug_assert!(periods[2].im == zero);
    Ok(AlgebraCase {
        endo: build_t(p.a, p.b, p.d, p.e),
        trace: p.e,
        norm: 2 * p.a * p.d,
        periods,
        eigenvalue: lam,
    })
}

/// The four stable cylinder diagrams of the locus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiagramCase {
    IA,
    IB,
    IIA,
    IIB,
}

impl fmt::Display for DiagramCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiagramCase::IA => "I.A",
            DiagramCase::IB => "I.B",
            DiagramCase::IIA => "II.A",
            DiagramCase::IIB => "II.B",
        })
    }
}

/// Circumference and height ratios of a stable cylinder diagram, as field elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramRatios {
    pub case: DiagramCase,
    /// Which circumference ratio the value describes.
    pub width_expr: &'static str,
    pub width: QuadNum,
    /// Which height ratio the value describes.
    pub height_expr: &'static str,
    pub height: QuadNum,
}

/// Ratios `a/λ` and `d/λ` attached to a cylinder prototype, for each diagram.
pub fn diagram_ratios(p: &CylProto) -> Vec<DiagramRatios> {
    let lam = lambda_of(p.disc, p.e);
    let inv = lam.inverse().expect("lambda is a unit");
    let width = &int(p.a, p.disc) * &inv;
    let height = &int(p.d, p.disc) * &inv;
    let cases: [(DiagramCase, &str, &str); 4] = [
        (
            DiagramCase::IA,
            "l3/l1 = l4/l1",
            "(h2+h3)/(h1+h2) = (h2+h4)/(h1+h2)",
        ),
        (
            DiagramCase::IB,
            "(l3-l1)/l1 = (l4-l1)/l1",
            "(h2+h3)/(h1+h2+h3+h4) = (h2+h4)/(h1+h2+h3+h4)",
        ),
        (DiagramCase::IIA, "l3/l1 = l4/l1", "h3/(h1+h2) = h4/(h1+h2)"),
        (DiagramCase::IIB, "l3/l1 = l4/l1", "h3/(h1+h2) = h4/(h1+h2)"),
    ];
    cases
        .into_iter()
        .map(|(case, width_expr, height_expr)| DiagramRatios {
            case,
            width_expr,
            width: width.clone(),
            height_expr,
            height: height.clone(),
        })
        .collect()
}

/// Full check of a cylinder prototype in diagram I.A.
///
/// With `ℓ₁ = 1` and `h₁ + h₂ = 1`, the periods give `ω(a₂) = 2ℓ₃` and
/// `Im ω(b₂) = 2(h₂ + h₃)`, so the I.A ratios are read off the period vector.
pub fn verify_cyl_ia(p: &CylProto) -> Result<EigenReport, EigenError> {
    let case = cyl_case(p)?;
    let mut checks = algebra_checks(&case);
    let half = Rational::new(1.into(), 2.into());
    let ia = &diagram_ratios(p)[0];
    let width_ok = case.periods[2].re.scale(&half) == ia.width;
    let height_ok = case.periods[3].im.scale(&half) == ia.height;
    checks.push(Check {
        name: "ratios",
        pass: width_ok && height_ok,
    });
    Ok(EigenReport {
        disc: p.disc,
        kind: CylProto::KIND.into(),
        abde: (p.a, p.b, p.d, p.e),
        checks,
    })
}

/// Periods `(λ, iλ, 2a, 2b + 2id)` of the triple of tori.
pub fn triple_case(p: &TripleProto) -> Result<AlgebraCase, EigenError> {
    if !p.is_valid() {
        return Err(EigenError::InvalidPrototype(p.csv_row()));
    }
    let disc = p.disc;
    let lam = lambda_of(disc, p.e);
    let periods = [
        QuadComplex::real(lam.clone()),
        QuadComplex::imag(lam.clone()),
        QuadComplex::real(int(2 * p.a, disc)),
        cx(int(2 * p.b, disc), int(2 * p.d, disc)),
    ];
    Ok(AlgebraCase {
        endo: EndoMatrix {
            entries: [
                [p.e, 0, 2 * p.a, 2 * p.b],
                [0, p.e, 0, 2 * p.d],
                [p.d, -p.b, 0, 0],
                [0, p.a, 0, 0],
            ],
            form: J12,
        },
        trace: p.e,
        norm: 2 * p.a * p.d,
        periods,
        eigenvalue: lam,
    })
}

/// Coordinates of `w` in the basis `(λ, iλ)`, when they are integers.
fn integer_coords(w: &QuadComplex, lam_inv: &QuadNum) -> Option<(i64, i64)> {
    let to_int = |x: QuadNum| -> Option<i64> {
        (x.is_rational() && x.p.denom().is_one())
            .then(|| x.p.numer().try_into().ok())
            .flatten()
    };
    Some((to_int(&w.re * lam_inv)?, to_int(&w.im * lam_inv)?))
}

/// Index of `λ·Λ₁` in `Λ₀ = λ(Z + iZ)` where `Λ₁ = aZ + (b + id)Z`, together with
/// the content `gcd` of the inclusion matrix. `None` if `λΛ₁ ⊄ Λ₀`.
pub fn triple_lattice_index(p: &TripleProto) -> Option<(i64, i64)> {
    let disc = p.disc;
    let lam = lambda_of(disc, p.e);
    let inv = lam.inverse().ok()?;
    let g1 = QuadComplex::real(&lam * &int(p.a, disc));
    let g2 = cx(&lam * &int(p.b, disc), &lam * &int(p.d, disc));
    let (x1, y1) = integer_coords(&g1, &inv)?;
    let (x2, y2) = integer_coords(&g2, &inv)?;
    let index = (x1 * y2 - x2 * y1).abs();
    let content = x1.gcd(&y1).gcd(&x2).gcd(&y2);
    Some((index, content))
}

/// `λ²/(λ² + 2ad)`, the share of the area carried by the first torus.
pub fn triple_area_ratio(p: &TripleProto) -> QuadNum {
    let lam = lambda_of(p.disc, p.e);
    let sq = &lam * &lam;
    let total = &sq + &int(2 * p.a * p.d, p.disc);
    sq.try_div(&total).expect("area is positive")
}

pub fn verify_triple(p: &TripleProto) -> Result<EigenReport, EigenError> {
    let case = triple_case(p)?;
    let mut checks = algebra_checks(&case);
    let disc = p.disc;
    let index_ok = match triple_lattice_index(p) {
        Some((index, content)) => {
            index == p.a * p.d
                && index == (disc.value() as i64 - p.e * p.e) / 8
                && content.gcd(&p.e) == 1
        }
        None => false,
    };
    checks.push(Check {
        name: "lattice_index",
        pass: index_ok,
    });
    // (e + √D)/(2√D) = 1/2 + (e/(2D))·√D.
    let expected = QuadNum::new(
        Rational::new(1.into(), 2.into()),
        Rational::new(p.e.into(), (2 * disc.value() as i64).into()),
        disc,
    );
    checks.push(Check {
        name: "area_ratio",
        pass: triple_area_ratio(p) == expected,
    });
    Ok(EigenReport {
        disc,
        kind: TripleProto::KIND.into(),
        abde: (p.a, p.b, p.d, p.e),
        checks,
    })
}

/// Generator, form and periods for the first three collapse cases of a splitting prototype.
///
/// Cases 1 and 2 use the basis whose first symplectic pair has `⟨α₁, β₁⟩ = 2`;
/// case 3 uses the `J12` pairing under which its matrix is self-adjoint. The
/// eigenvalue is `2λ' = e + √D'`.
pub fn split_case(p: &SplitProto, which: SplitCase) -> Result<AlgebraCase, EigenError> {
    if p.b != 0 {
        return Err(EigenError::BRequired(p.b));
    }
    let SplitProto { a, d, e, disc, .. } = *p;
    if a <= 0 || d <= 0 || e * e + 4 * a * d != disc.value() as i64 {
        return Err(EigenError::InvalidPrototype(p.csv_row()));
    }
    let lam = lambda_of(disc, e);
    let two_lam = lam.scale(&rat(2));
    let zero = QuadNum::zero(disc);
    let (entries, form, periods) = match which {
        SplitCase::Case1 => (
            [
                [2 * e, 0, a, 0],
                [0, 2 * e, 0, 2 * d],
                [4 * d, 0, 0, 0],
                [0, 2 * a, 0, 0],
            ],
            J21,
            [
                QuadComplex::real(two_lam.clone()),
                QuadComplex::imag(lam.clone()),
                QuadComplex::real(int(a, disc)),
                QuadComplex::imag(int(d, disc)),
            ],
        ),
        SplitCase::Case2 => (
            [
                [2 * e, 0, a, -d],
                [0, 2 * e, 0, 2 * d],
                [4 * d, 2 * d, 0, 0],
                [0, 2 * a, 0, 0],
            ],
            J21,
            [
                QuadComplex::real(two_lam.clone()),
                cx(lam.clone(), lam.clone()),
                QuadComplex::real(int(a, disc)),
                QuadComplex::imag(int(d, disc)),
            ],
        ),
        SplitCase::Case3 => (
            [
                [2 * e, 0, 4 * a, 2 * e],
                [0, 2 * e, 0, 2 * d],
                [d, -e, 0, 0],
                [0, 2 * a, 0, 0],
            ],
            J12,
            [
                QuadComplex::real(lam.clone()),
                cx(int(a, disc), lam.clone()),
                QuadComplex::real(int(2 * a, disc)),
                cx(lam.clone(), int(d, disc)),
            ],
        ),
        other => return Err(EigenError::UnsupportedCase(other)),
    };
    debug_assert!(periods.iter().all(|v| v.re.disc == zero.disc));
    Ok(AlgebraCase {
        endo: EndoMatrix { entries, form },
        trace: 2 * e,
        norm: 4 * a * d,
        periods,
        eigenvalue: two_lam,
    })
}

pub fn verify_split_endo(p: &SplitProto, which: SplitCase) -> Result<EigenReport, EigenError> {
    let case = split_case(p, which)?;
    let checks = algebra_checks(&case)
        .into_iter()
        .map(|mut c| {
            c.name = match (which, c.name) {
                (SplitCase::Case1, n) => n,
                (SplitCase::Case2, "selfadjoint") => "selfadjoint_case2",
                (SplitCase::Case2, "quadratic") => "quadratic_case2",
                (SplitCase::Case2, "eigen") => "eigen_case2",
                (SplitCase::Case3, "selfadjoint") => "selfadjoint_case3",
                (SplitCase::Case3, "quadratic") => "quadratic_case3",
                (SplitCase::Case3, "eigen") => "eigen_case3",
                (_, n) => n,
            };
            c
        })
        .collect();
    Ok(EigenReport {
        disc: p.disc,
        kind: SplitProto::KIND.into(),
        abde: (p.a, p.b, p.d, p.e),
        checks,
    })
}

/// Residual of the case-1 relation for the period vector `(2λ', 2iλ', a, id)`,
/// which differs from the working vector in its second entry.
pub fn split_printed_vector_residual(p: &SplitProto) -> Result<[QuadComplex; 4], EigenError> {
    let mut case = split_case(p, SplitCase::Case1)?;
    let lam = lambda_of(p.disc, p.e);
    case.periods[1] = QuadComplex::imag(lam.scale(&rat(2)));
    Ok(eigen_residual(
        &case.periods,
        &case.endo.entries,
        &case.eigenvalue,
    ))
}

/// Run every applicable check on every prototype of discriminant `d`.
pub fn reports_for_discriminant(d: i64) -> Vec<EigenReport> {
    let mut out = Vec::new();
    if let Ok(cyls) = crate::prototypes::enumerate_cyl(d) {
        out.extend(cyls.iter().filter_map(|p| verify_cyl_ia(p).ok()));
    }
    if let Ok(triples) = crate::prototypes::enumerate_triple(d) {
        out.extend(triples.iter().filter_map(|p| verify_triple(p).ok()));
    }
    if let Ok(splits) = crate::prototypes::enumerate_split(d) {
        for p in splits.iter().filter(|p| p.b == 0) {
            for which in [SplitCase::Case1, SplitCase::Case2, SplitCase::Case3] {
                out.extend(verify_split_endo(p, which).ok());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::ratio;

    fn disc(d: i64) -> Discriminant {
        Discriminant::new(d).unwrap()
    }

    #[test]
    fn t_shape() {
        let t = build_t(1, 0, 1, 0);
        assert_eq!(
            t.entries,
            [[0, 0, 2, 0], [0, 0, 0, 2], [1, 0, 0, 0], [0, 1, 0, 0]]
        );
        assert!(satisfies_quadratic(&build_t(2, 0, 1, 1).entries, 1, 4));
        assert_eq!(b_star([[1, 2], [3, 4]]), [[4, -2], [-3, 1]]);
    }

    #[test]
    fn selfadjoint_generic_and_perturbed() {
        for (a, b, d, e) in [(1, 0, 1, 0), (2, 1, 3, -5), (7, 3, 2, 4)] {
            let t = build_t(a, b, d, e).entries;
            assert!(verify_selfadjoint(&t, &J12));
            let mut bent = t;
            bent[0][1] += 1;
            assert!(!verify_selfadjoint(&bent, &J12));
        }
        let p = SplitProto {
            a: 4,
            b: 0,
            d: 1,
            e: -1,
            disc: disc(17),
        };
        let t1 = split_case(&p, SplitCase::Case1).unwrap().endo.entries;
        assert!(verify_selfadjoint(&t1, &J21));
        assert!(!verify_selfadjoint(&t1, &J12));
    }

    #[test]
    fn cylinder_d8() {
        let p = CylProto {
            a: 1,
            b: 0,
            d: 1,
            e: 0,
            disc: disc(8),
        };
        let rep = verify_cyl_ia(&p).unwrap();
        assert!(rep.passed(), "{rep:?}");
        let case = cyl_case(&p).unwrap();
        let sqrt2 = QuadNum::new(rat(0), ratio(1, 2), disc(8));
        assert_eq!(case.eigenvalue, sqrt2);
        assert_eq!(case.periods[2].re, sqrt2); // x = 2a/λ
        assert_eq!(case.periods[3].im, sqrt2); // t = 2d/λ
        let q = CylProto {
            a: 2,
            b: 0,
            d: 1,
            e: 1,
            disc: disc(17),
        };
        assert!(verify_cyl_ia(&q).unwrap().passed());
        assert_eq!(diagram_ratios(&q).len(), 4);
    }

    #[test]
    fn invalid_prototypes_rejected() {
        let p = CylProto {
            a: 1,
            b: 0,
            d: 1,
            e: 1,
            disc: disc(8),
        };
        assert!(matches!(
            verify_cyl_ia(&p),
            Err(EigenError::InvalidPrototype(_))
        ));
        let t = TripleProto {
            a: 1,
            b: 1,
            d: 1,
            e: 0,
            disc: disc(8),
        };
        assert!(matches!(
            verify_triple(&t),
            Err(EigenError::InvalidPrototype(_))
        ));
    }

    #[test]
    fn triple_examples() {
        let p = TripleProto {
            a: 1,
            b: 0,
            d: 1,
            e: 0,
            disc: disc(8),
        };
        assert!(verify_triple(&p).unwrap().passed());
        assert_eq!(
            triple_area_ratio(&p),
            QuadNum::from_rational(ratio(1, 2), disc(8))
        );
        let q = TripleProto {
            a: 2,
            b: 1,
            d: 1,
            e: 1,
            disc: disc(17),
        };
        assert!(verify_triple(&q).unwrap().passed());
        assert_eq!(
            triple_area_ratio(&q),
            QuadNum::new(ratio(1, 2), ratio(1, 34), disc(17))
        );
        let r = TripleProto {
            a: 1,
            b: 0,
            d: 2,
            e: 1,
            disc: disc(17),
        };
        assert_eq!(triple_lattice_index(&r), Some((2, 1)));
    }

    #[test]
    fn split_examples() {
        let d17 = disc(17);
        let p = SplitProto {
            a: 4,
            b: 0,
            d: 1,
            e: -1,
            disc: d17,
        };
        let case = split_case(&p, SplitCase::Case1).unwrap();
        assert!(satisfies_quadratic(&case.endo.entries, -2, 16));
        let lam = lambda_of(d17, -1);
        assert_eq!(case.periods[1], QuadComplex::imag(lam.clone()));
        assert_eq!(
            case.periods[2],
            QuadComplex::real(QuadNum::from_int(4, d17))
        );
        for which in [SplitCase::Case1, SplitCase::Case2, SplitCase::Case3] {
            assert!(verify_split_endo(&p, which).unwrap().passed(), "{which:?}");
        }
        let t3 = split_case(&p, SplitCase::Case3).unwrap().endo.entries;
        assert!(verify_selfadjoint(&t3, &J12) && !verify_selfadjoint(&t3, &J21));
        let res = split_printed_vector_residual(&p).unwrap();
        // Second entry is off by −2i·ad.
        assert_eq!(res[1], QuadComplex::imag(QuadNum::from_int(-8, d17)));
        assert!(!res[3].is_zero());
        let bad = SplitProto { b: 1, ..p };
        assert_eq!(
            verify_split_endo(&bad, SplitCase::Case1),
            Err(EigenError::BRequired(1))
        );
        assert_eq!(
            split_case(&p, SplitCase::Case4),
            Err(EigenError::UnsupportedCase(SplitCase::Case4))
        );
    }

    #[test]
    fn perturbations_always_detected() {
        let p = TripleProto {
            a: 2,
            b: 1,
            d: 1,
            e: 1,
            disc: disc(17),
        };
        assert!(triple_case(&p)
            .unwrap()
            .perturbations_detected()
            .into_iter()
            .all(|x| x));
        let s = SplitProto {
            a: 4,
            b: 0,
            d: 1,
            e: -1,
            disc: disc(17),
        };
        for which in [SplitCase::Case1, SplitCase::Case2, SplitCase::Case3] {
            assert!(split_case(&s, which)
                .unwrap()
                .perturbations_detected()
                .into_iter()
                .all(|x| x));
        }
    }

    #[test]
    fn sweep_small_discriminants() {
        for d in 5..=120 {
            for rep in reports_for_discriminant(d) {
                assert!(rep.passed(), "{rep:?}");
            }
        }
    }
}
