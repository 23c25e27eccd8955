//! The cases each suite runs.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use super::{random_jacobi_params, random_matrices, Outcome, SuiteSpec};
use crate::closed_forms::{
    bridge_scale, cbqm_unsimplified, closed_form, cor1_a, cor1_t, cor2_det, defining_matrix,
    even_binomial_matrix, thm1_a, thm1_t, thm2_det, FormulaId, ThmParams,
};
use crate::field::{FieldElem, Rational};
use crate::hankel::{det_with, hankel_matrix, jacobi_from_moments, Engine};
use crate::identities::{
    check_alt_sum, check_alt_sum_equivalence, check_q_alt_sum, check_q_companion_sum,
    check_row_sum, check_weighted_alt_sum, check_weighted_row_sum, check_weighted_row_sum_specials,
    q_sum_terms, IdentityReport,
};
use crate::qcalc::QBase;
use crate::sequences::{binomial, MomentSeq};
use crate::triangle::{build_triangle, build_zero_s_triangle, JacobiParams, TSeq, Triangle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SuiteId {
    CatalanBasics,
    Tables,
    Thm1,
    Thm2Grid,
    Cor2Grid,
    Registry,
    RecipBracketAsPrinted,
    Identities,
    Bridges,
    Engines,
    RoundTrip,
    All,
}

impl SuiteId {
    pub const ALL: [SuiteId; 12] = [
        SuiteId::CatalanBasics,
        SuiteId::Tables,
        SuiteId::Thm1,
        SuiteId::Thm2Grid,
        SuiteId::Cor2Grid,
        SuiteId::Registry,
        SuiteId::RecipBracketAsPrinted,
        SuiteId::Identities,
        SuiteId::Bridges,
        SuiteId::Engines,
        SuiteId::RoundTrip,
        SuiteId::All,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteId::CatalanBasics => "catalan-basics",
            SuiteId::Tables => "tables",
            SuiteId::Thm1 => "thm1",
            SuiteId::Thm2Grid => "thm2-grid",
            SuiteId::Cor2Grid => "cor2-grid",
            SuiteId::Registry => "registry",
            SuiteId::RecipBracketAsPrinted => "recip-bracket-as-printed",
            SuiteId::Identities => "identities",
            SuiteId::Bridges => "bridges",
            SuiteId::Engines => "engines",
            SuiteId::RoundTrip => "round-trip",
            SuiteId::All => "all",
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteId {
    type Err = super::VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SuiteId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| super::VerifyError::UnknownSuite(s.to_string()))
    }
}

type Runner = Box<dyn Fn() -> Result<Outcome, String> + Send + Sync>;

/// One independent check.
pub struct Case {
    pub suite: &'static str,
    pub check: String,
    pub params: String,
    pub n: Option<usize>,
    pub m: Option<usize>,
    /// Documented discrepancy: failing is the expected result.
    pub expect_failure: bool,
    pub run: Runner,
}

struct Builder {
    suite: &'static str,
    cases: Vec<Case>,
}

impl Builder {
    fn new(suite: SuiteId) -> Self {
        Builder {
            suite: suite.name(),
            cases: Vec::new(),
        }
    }

    fn add(
        &mut self,
        check: impl Into<String>,
        params: impl Into<String>,
        nm: (Option<usize>, Option<usize>),
        run: impl Fn() -> Result<Outcome, String> + Send + Sync + 'static,
    ) -> &mut Case {
        self.cases.push(Case {
            suite: self.suite,
            check: check.into(),
            params: params.into(),
            n: nm.0,
            m: nm.1,
            expect_failure: false,
            run: Box::new(run),
        });
        self.cases.last_mut().unwrap()
    }
}

fn err(e: impl fmt::Display) -> String {
    e.to_string()
}

fn describe(p: &ThmParams) -> String {
    format!("a={} b={} Q={}", p.a, p.b, p.base.value())
}

fn int(n: i64) -> FieldElem {
    FieldElem::from_i64(n)
}

fn brute(seq: &MomentSeq, n: usize, m: usize, engine: Engine) -> Result<FieldElem, String> {
    Ok(det_with(&hankel_matrix(seq, n, m).map_err(err)?, engine))
}

fn render_rows(rows: &[Vec<FieldElem>]) -> String {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn render_list(xs: &[FieldElem]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn identity_outcome(r: IdentityReport) -> Outcome {
    Outcome {
        expected: r.rhs.to_string(),
        actual: r.lhs.to_string(),
        holds: r.holds,
    }
}

fn int_rows(rows: &[&[i64]]) -> Vec<Vec<FieldElem>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| int(x)).collect())
        .collect()
}

fn rows_outcome(expected: &[Vec<FieldElem>], tri: &Triangle) -> Outcome {
    let actual = tri.rows().to_vec();
    Outcome {
        expected: render_rows(expected),
        actual: render_rows(&actual),
        holds: actual == expected,
    }
}

pub(crate) fn build_cases(spec: &SuiteSpec) -> Vec<Case> {
    match spec.suite {
        SuiteId::All => SuiteId::ALL
            .into_iter()
            .filter(|id| *id != SuiteId::All)
            .flat_map(|id| cases_for(id, spec))
            .collect(),
        id => cases_for(id, spec),
    }
}

fn cases_for(id: SuiteId, spec: &SuiteSpec) -> Vec<Case> {
    let mut b = Builder::new(id);
    match id {
        SuiteId::CatalanBasics => catalan_basics(&mut b, spec),
        SuiteId::Tables => tables(&mut b),
        SuiteId::Thm1 => thm1(&mut b, spec),
        SuiteId::Thm2Grid => thm2_grid(&mut b, spec),
        SuiteId::Cor2Grid => cor2_grid(&mut b, spec),
        SuiteId::Registry => registry(&mut b, spec),
        SuiteId::RecipBracketAsPrinted => recip_bracket(&mut b, spec),
        SuiteId::Identities => identities(&mut b, spec),
        SuiteId::Bridges => bridges(&mut b, spec),
        SuiteId::Engines => engines(&mut b, spec),
        SuiteId::RoundTrip => round_trip(&mut b, spec),
        SuiteId::All => unreachable!("expanded by build_cases"),
    }
    b.cases
}

fn catalan_basics(b: &mut Builder, spec: &SuiteSpec) {
    for n in 1..=10 {
        for engine in [Engine::Gauss, Engine::Bareiss] {
            b.add(
                "det-catalan",
                format!("engine={engine}"),
                (Some(n), None),
                move || {
                    Ok(Outcome::compare(
                        &FieldElem::one(),
                        &brute(&MomentSeq::Catalan, n, 0, engine)?,
                    ))
                },
            );
        }
    }
    let engine = spec.engine;
    for n in 1..=6 {
        for m in 0..=5 {
            b.add("CatalanShift", "", (Some(n), Some(m)), move || {
                let want = brute(&MomentSeq::Catalan, n, m, engine)?;
                let got = closed_form(FormulaId::CatalanShift, n, m, None).map_err(err)?;
                Ok(Outcome::compare(&want, &got))
            });
        }
    }
    for (n, m, v) in [(2, 2, 3), (1, 3, 5)] {
        b.add("CatalanShift-spot", "", (Some(n), Some(m)), move || {
            let got = closed_form(FormulaId::CatalanShift, n, m, None).map_err(err)?;
            Ok(Outcome::compare(&int(v), &got))
        });
    }
}

fn ballot_rows() -> Vec<Vec<FieldElem>> {
    int_rows(&[
        &[1],
        &[0, 1],
        &[1, 0, 1],
        &[0, 2, 0, 1],
        &[2, 0, 3, 0, 1],
        &[0, 5, 0, 4, 0, 1],
        &[5, 0, 9, 0, 5, 0, 1],
        &[0, 14, 0, 14, 0, 6, 0, 1],
    ])
}

fn catalan_rows() -> Vec<Vec<FieldElem>> {
    int_rows(&[
        &[1],
        &[1, 1],
        &[2, 3, 1],
        &[5, 9, 5, 1],
        &[14, 28, 20, 7, 1],
    ])
}

fn central_binomial_rows() -> Vec<Vec<FieldElem>> {
    int_rows(&[
        &[1],
        &[2, 1],
        &[6, 4, 1],
        &[20, 15, 6, 1],
        &[70, 56, 28, 8, 1],
    ])
}

fn tables(b: &mut Builder) {
    b.add("table-ballot", "T=1", (Some(8), None), || {
        let tri = build_zero_s_triangle(&TSeq::constant(8, FieldElem::one()), 7);
        Ok(rows_outcome(&ballot_rows(), &tri))
    });
    b.add(
        "table-catalan",
        "s=1,2,2,.. t=1,1,..",
        (Some(5), None),
        || {
            let jp = JacobiParams::from_fn(5, |k| int(if k == 0 { 1 } else { 2 }), |_| int(1));
            Ok(rows_outcome(&catalan_rows(), &build_triangle(&jp, 4)))
        },
    );
    b.add("table-catalan", "from moments", (Some(5), None), || {
        let jp = jacobi_from_moments(&MomentSeq::Catalan, 5).map_err(err)?;
        Ok(rows_outcome(&catalan_rows(), &build_triangle(&jp, 4)))
    });
    b.add(
        "table-central-binomial",
        "s=2,2,.. t=2,1,1,..",
        (Some(5), None),
        || {
            let jp = JacobiParams::from_fn(5, |_| int(2), |k| int(if k == 0 { 2 } else { 1 }));
            Ok(rows_outcome(
                &central_binomial_rows(),
                &build_triangle(&jp, 4),
            ))
        },
    );
    b.add(
        "table-central-binomial",
        "from moments",
        (Some(5), None),
        || {
            let jp = jacobi_from_moments(&MomentSeq::CentralBinomial, 5).map_err(err)?;
            Ok(rows_outcome(
                &central_binomial_rows(),
                &build_triangle(&jp, 4),
            ))
        },
    );
}

fn thm1(b: &mut Builder, spec: &SuiteSpec) {
    let n_max = spec.n_max;
    for p in &spec.thm_params {
        for n in 0..=n_max {
            for k in 0..=n_max {
                let p = p.clone();
                b.add(
                    "thm1-residuals",
                    describe(&p),
                    (Some(n), Some(k)),
                    move || {
                        let (r1, r2) =
                            crate::closed_forms::thm1_residuals(n, k, &p).map_err(err)?;
                        Ok(Outcome {
                            expected: "0, 0".into(),
                            actual: format!("{r1}, {r2}"),
                            holds: r1.is_zero() && r2.is_zero(),
                        })
                    },
                );
            }
        }
        let p = p.clone();
        b.add(
            "thm1-triangle",
            describe(&p),
            (Some(2 * n_max), None),
            move || {
                let rows = 2 * n_max;
                let t = (0..=rows)
                    .map(|k| thm1_t(k, &p))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(err)?;
                let tri = build_zero_s_triangle(&TSeq(t), rows);
                let closed = (0..=rows)
                    .map(|n| {
                        (0..=n)
                            .map(|k| thm1_a(n, k, &p))
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(err)?;
                Ok(Outcome {
                    expected: render_rows(tri.rows()),
                    actual: render_rows(&closed),
                    holds: tri.rows() == closed.as_slice(),
                })
            },
        );
    }
}

fn thm2_grid(b: &mut Builder, spec: &SuiteSpec) {
    let engine = spec.engine;
    for p in &spec.thm_params {
        let seq = MomentSeq::cseq(p.a.clone(), p.b.clone(), p.base.clone());
        for n in 1..=spec.n_max {
            for m in 0..=spec.m_max {
                let (p, seq) = (p.clone(), seq.clone());
                b.add("thm2", describe(&p), (Some(n), Some(m)), move || {
                    let want = brute(&seq, n, m, engine)?;
                    Ok(Outcome::compare(&want, &thm2_det(n, m, &p).map_err(err)?))
                });
            }
        }
        let p = p.clone();
        b.add(
            "thm2-order-two",
            describe(&p),
            (Some(2), Some(0)),
            move || {
                let one = FieldElem::one();
                let qq = p.base.value();
                let num = one.sub(&p.b).mul(&one.sub(qq)).mul(&p.b.sub(&p.a));
                let den = one
                    .sub(&p.a)
                    .mul(&one.sub(&p.a))
                    .mul(&one.sub(&qq.mul(&p.a)));
                let want = num.div(&den).map_err(err)?;
                Ok(Outcome::compare(&want, &thm2_det(2, 0, &p).map_err(err)?))
            },
        );
    }
}

fn r_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn cor2_grid(b: &mut Builder, spec: &SuiteSpec) {
    let engine = spec.engine;
    for (a, bb, c) in &spec.rational_triples {
        let params = format!("a={a} b={bb} c={c}");
        let seq = MomentSeq::useq(a.clone(), bb.clone(), c.clone());
        for n in 1..=spec.n_max {
            for m in 0..=spec.m_max {
                let (a, bb, c, seq) = (a.clone(), bb.clone(), c.clone(), seq.clone());
                b.add("cor2", params.clone(), (Some(n), Some(m)), move || {
                    let want = brute(&seq, n, m, engine)?;
                    let got = cor2_det(n, m, &a, &bb, &c).map_err(err)?;
                    Ok(Outcome::compare(&want, &FieldElem::from_rational(got)))
                });
            }
        }
        let rows = 2 * spec.n_max;
        let (a, bb, c) = (a.clone(), bb.clone(), c.clone());
        b.add("cor1-triangle", params, (Some(rows), None), move || {
            let t = (0..=rows)
                .map(|k| cor1_t(k, &a, &bb, &c).map(FieldElem::from_rational))
                .collect::<Result<Vec<_>, _>>()
                .map_err(err)?;
            let tri = build_zero_s_triangle(&TSeq(t), rows);
            let closed = (0..=rows)
                .map(|n| {
                    (0..=n)
                        .map(|k| cor1_a(n, k, &a, &bb, &c).map(FieldElem::from_rational))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()
                .map_err(err)?;
            Ok(Outcome {
                expected: render_rows(tri.rows()),
                actual: render_rows(&closed),
                holds: tri.rows() == closed.as_slice(),
            })
        });
    }
    let (a, bb, c) = (r_int(4), r_int(1), r_int(2));
    for k in 0..=8 {
        let (a, bb, c) = (a.clone(), bb.clone(), c.clone());
        b.add(
            "cor1-T-quarter",
            "a=4 b=1 c=2",
            (Some(k), None),
            move || {
                let got = cor1_t(k, &a, &bb, &c).map_err(err)?;
                Ok(Outcome::compare_rational(
                    &Rational::new(1.into(), 4.into()),
                    &got,
                ))
            },
        );
    }
    for n in 0..=5u64 {
        for k in 0..=n {
            let (a, bb, c) = (a.clone(), bb.clone(), c.clone());
            b.add(
                "cor1-A-catalan",
                "a=4 b=1 c=2",
                (Some(n as usize), Some(k as usize)),
                move || {
                    let want = Rational::new(BigInt::from(2 * k + 1), BigInt::from(n + k + 1))
                        * Rational::from_integer(binomial(2 * n, n - k))
                        / Rational::from_integer(BigInt::from(4).pow((n - k) as u32));
                    let got = cor1_a(2 * n as usize, 2 * k as usize, &a, &bb, &c).map_err(err)?;
                    Ok(Outcome::compare_rational(&want, &got))
                },
            );
        }
    }
    let catalan_limit = MomentSeq::useq(a.clone(), bb.clone(), c.clone());
    for n in 1..=6usize {
        let c2 = (n * (n - 1) / 2) as u32;
        let seq = catalan_limit.clone();
        b.add(
            "catalan-limit-det",
            "a=4 b=1 c=2, 1/16^C(n,2)",
            (Some(n), Some(0)),
            move || {
                let want = Rational::new(1.into(), BigInt::from(16).pow(c2));
                Ok(Outcome::compare(
                    &FieldElem::from_rational(want),
                    &brute(&seq, n, 0, engine)?,
                ))
            },
        );
        if n >= 2 {
            let seq = catalan_limit.clone();
            b.add(
                "catalan-limit-det-as-stated",
                "a=4 b=1 c=2, 1/4^C(n,2)",
                (Some(n), Some(0)),
                move || {
                    let want = Rational::new(1.into(), BigInt::from(4).pow(c2));
                    Ok(Outcome::compare(
                        &FieldElem::from_rational(want),
                        &brute(&seq, n, 0, engine)?,
                    ))
                },
            )
            .expect_failure = true;
        }
    }
}

fn registry(b: &mut Builder, spec: &SuiteSpec) {
    let engine = spec.engine;
    for id in FormulaId::ALL {
        if matches!(id, FormulaId::RecipBracket | FormulaId::OddBinomialRel) {
            continue;
        }
        let xs: Vec<Option<Rational>> = if id.needs_x() {
            spec.x_samples.iter().cloned().map(Some).collect()
        } else {
            vec![None]
        };
        let m_max = if id.uses_m() { spec.m_max } else { 0 };
        for x in xs {
            let params = x.as_ref().map(|x| format!("x={x}")).unwrap_or_default();
            for n in 1..=spec.n_max {
                for m in 0..=m_max {
                    let x = x.clone();
                    b.add(id.name(), params.clone(), (Some(n), Some(m)), move || {
                        let mat = defining_matrix(id, n, m, x.as_ref()).map_err(err)?;
                        let got = closed_form(id, n, m, x.as_ref()).map_err(err)?;
                        Ok(Outcome::compare(&det_with(&mat, engine), &got))
                    });
                }
            }
        }
    }
    for n in 1..=spec.n_max {
        for m in 0..=spec.m_max {
            b.add(
                "OddBinomialRel",
                "relation",
                (Some(n), Some(m)),
                move || {
                    let odd = det_with(
                        &defining_matrix(FormulaId::OddBinomialRel, n, m, None).map_err(err)?,
                        engine,
                    );
                    let even = det_with(&even_binomial_matrix(n, m), engine);
                    let scaled = even.mul(&FieldElem::from_rational(Rational::new(
                        1.into(),
                        BigInt::from(2).pow(n as u32),
                    )));
                    Ok(Outcome::compare(&scaled, &odd))
                },
            );
            b.add(
                "OddBinomialRel",
                "closed form",
                (Some(n), Some(m)),
                move || {
                    let odd = det_with(
                        &defining_matrix(FormulaId::OddBinomialRel, n, m, None).map_err(err)?,
                        engine,
                    );
                    let got = closed_form(FormulaId::OddBinomialRel, n, m, None).map_err(err)?;
                    Ok(Outcome::compare(&odd, &got))
                },
            );
            b.add("CBqm-unsimplified", "", (Some(n), Some(m)), move || {
                let simplified = closed_form(FormulaId::CBqm, n, m, None).map_err(err)?;
                Ok(Outcome::compare(
                    &simplified,
                    &cbqm_unsimplified(n, m).map_err(err)?,
                ))
            });
        }
    }
    let spots: Vec<(FormulaId, usize, usize, Option<Rational>, FieldElem)> = vec![
        (FormulaId::QFactorial, 2, 0, None, FieldElem::q()),
        (FormulaId::Carlitz, 2, 1, None, FieldElem::q().neg()),
        (FormulaId::CentralBinomial, 3, 0, None, int(4)),
    ]
    .into_iter()
    .chain(spec.x_samples.iter().map(|x| {
        (
            FormulaId::BracketFalling,
            2,
            0,
            Some(x.clone()),
            FieldElem::from_rational(-x.clone()),
        )
    }))
    .collect();
    for (id, n, m, x, want) in spots {
        let params = x.as_ref().map(|x| format!("x={x}")).unwrap_or_default();
        b.add(
            format!("{id}-spot"),
            params,
            (Some(n), Some(m)),
            move || {
                let got = closed_form(id, n, m, x.as_ref()).map_err(err)?;
                Ok(Outcome::compare(&want, &got))
            },
        );
    }
}

fn recip_bracket(b: &mut Builder, spec: &SuiteSpec) {
    let engine = spec.engine;
    for n in 1..=spec.n_max.min(4) {
        for m in 1..=spec.m_max {
            b.add(
                "RecipBracket-as-printed",
                "",
                (Some(n), Some(m)),
                move || {
                    let mat = defining_matrix(FormulaId::RecipBracket, n, m, None).map_err(err)?;
                    let got = closed_form(FormulaId::RecipBracket, n, m, None).map_err(err)?;
                    Ok(Outcome::compare(&det_with(&mat, engine), &got))
                },
            )
            .expect_failure = true;
            b.add(
                "RecipBracket-via-QHilbert",
                "shift m-1",
                (Some(n), Some(m)),
                move || {
                    let mat = defining_matrix(FormulaId::RecipBracket, n, m, None).map_err(err)?;
                    let got = closed_form(FormulaId::QHilbert, n, m - 1, None).map_err(err)?;
                    Ok(Outcome::compare(&det_with(&mat, engine), &got))
                },
            );
        }
    }
}

fn identity_a_samples() -> Vec<FieldElem> {
    vec![
        FieldElem::q_pow(3),
        FieldElem::q_pow(2),
        FieldElem::q(),
        FieldElem::from_rational(Rational::new(1.into(), 2.into())),
        FieldElem::from_rational(Rational::new(2.into(), 3.into())),
        int(-3),
    ]
}

fn identities(b: &mut Builder, spec: &SuiteSpec) {
    let tri_rows = 8;
    for n in 0..=tri_rows {
        b.add("alt-row-sum", "catalan", (Some(n), None), move || {
            let jp = JacobiParams::from_fn(
                tri_rows + 1,
                |k| int(if k == 0 { 1 } else { 2 }),
                |_| int(1),
            );
            Ok(identity_outcome(check_alt_sum(
                &build_triangle(&jp, tri_rows),
                n,
            )))
        });
        b.add("row-sum", "catalan", (Some(n), None), move || {
            let jp = JacobiParams::from_fn(
                tri_rows + 1,
                |k| int(if k == 0 { 1 } else { 2 }),
                |_| int(1),
            );
            Ok(identity_outcome(check_row_sum(
                &build_triangle(&jp, tri_rows),
                n,
            )))
        });
        b.add("weighted-alt-sum", "T=1", (Some(n), None), move || {
            Ok(identity_outcome(check_weighted_alt_sum(
                &TSeq::constant(2 * n + 1, int(1)),
                n,
            )))
        });
    }
    let n_max = spec.n_max;
    for p in &spec.thm_params {
        for n in 0..=n_max {
            let p1 = p.clone();
            b.add(
                "weighted-alt-sum",
                describe(p),
                (Some(n), None),
                move || {
                    let t = (0..=2 * n)
                        .map(|k| thm1_t(k, &p1))
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(err)?;
                    Ok(identity_outcome(check_weighted_alt_sum(&TSeq(t), n)))
                },
            );
            let p2 = p.clone();
            b.add(
                "weighted-row-sum",
                describe(p),
                (Some(n), None),
                move || {
                    check_weighted_row_sum(&p2, n)
                        .map(identity_outcome)
                        .map_err(err)
                },
            );
            let p3 = p.clone();
            b.add(
                "alt-sum-equivalence",
                describe(p),
                (Some(n), None),
                move || {
                    check_alt_sum_equivalence(&p3, n)
                        .map(identity_outcome)
                        .map_err(err)
                },
            );
        }
    }
    for a in identity_a_samples() {
        let params = format!("a={a} Q=q");
        for n in 0..=n_max {
            let a1 = a.clone();
            b.add("q-alt-sum", params.clone(), (Some(n), None), move || {
                check_q_alt_sum(&a1, &QBase::q(), n)
                    .map(identity_outcome)
                    .map_err(err)
            });
            let a2 = a.clone();
            b.add(
                "q-companion-sum",
                params.clone(),
                (Some(n), None),
                move || {
                    check_q_companion_sum(&a2, &QBase::q(), n)
                        .map(identity_outcome)
                        .map_err(err)
                },
            );
        }
        let a3 = a.clone();
        b.add(
            "q-sum-order-one-terms",
            params,
            (Some(1), None),
            move || {
                let terms = q_sum_terms(&a3, &QBase::q(), 1).map_err(err)?;
                let inv = FieldElem::one()
                    .div(&FieldElem::one().sub(&FieldElem::q().mul(&a3)))
                    .map_err(err)?;
                let want = vec![inv.clone(), inv];
                Ok(Outcome {
                    expected: render_list(&want),
                    actual: render_list(&terms),
                    holds: terms == want,
                })
            },
        );
    }
    for n in 0..=n_max {
        for which in 0..2 {
            let check = ["weighted-row-sum-andrews", "weighted-row-sum-central"][which];
            b.add(check, "displayed closed form", (Some(n), None), move || {
                let reports = check_weighted_row_sum_specials(n).map_err(err)?;
                Ok(identity_outcome(reports[which].clone()))
            });
        }
    }
}

fn bridges(b: &mut Builder, spec: &SuiteSpec) {
    let one = Rational::from_integer(1.into());
    let andrews = ThmParams::new(FieldElem::q_pow(4), FieldElem::q(), QBase::q_pow(2));
    let central = ThmParams::new(FieldElem::q_pow(2), FieldElem::q(), QBase::q_pow(2));
    let families = [
        (FormulaId::Andrewsm, FormulaId::CatalanShift, andrews),
        (FormulaId::CBqm, FormulaId::CentralBinomial, central),
    ];
    for n in 1..=spec.n_max.min(4) {
        for m in 0..=spec.m_max {
            for (q_id, target, p) in &families {
                let (q_id, target, p, one) = (*q_id, *target, p.clone(), one.clone());
                b.add(
                    format!("{q_id}->{target}"),
                    "q=1, scaled by 4^(n(n-1)+nm)",
                    (Some(n), Some(m)),
                    move || {
                        let lim = closed_form(q_id, n, m, None)
                            .map_err(err)?
                            .specialize(&one)
                            .map_err(err)?;
                        let want = closed_form(target, n, m, None).map_err(err)?;
                        let want = want.as_rational().ok_or("target is not a constant")?;
                        Ok(Outcome::compare_rational(
                            &want,
                            &(lim * bridge_scale(n, m)),
                        ))
                    },
                );
                let one = Rational::from_integer(1.into());
                b.add(
                    format!("thm2->{target}"),
                    describe(&p),
                    (Some(n), Some(m)),
                    move || {
                        let lim = thm2_det(n, m, &p)
                            .map_err(err)?
                            .specialize(&one)
                            .map_err(err)?;
                        let want = closed_form(target, n, m, None).map_err(err)?;
                        let want = want.as_rational().ok_or("target is not a constant")?;
                        Ok(Outcome::compare_rational(
                            &want,
                            &(lim * bridge_scale(n, m)),
                        ))
                    },
                );
            }
        }
    }
}

fn engines(b: &mut Builder, spec: &SuiteSpec) {
    for (label, over_q, seed) in [
        ("over Q", false, spec.seed),
        ("over Q(q)", true, spec.seed + 1),
    ] {
        for (i, mat) in random_matrices(seed, 50, over_q).into_iter().enumerate() {
            let n = mat.dim();
            b.add(
                "engine-agreement",
                format!("{label} #{i}"),
                (Some(n), None),
                move || {
                    let gauss = det_with(&mat, Engine::Gauss);
                    let bareiss = det_with(&mat, Engine::Bareiss);
                    Ok(Outcome::compare(&gauss, &bareiss))
                },
            );
        }
    }
}

fn round_trip(b: &mut Builder, spec: &SuiteSpec) {
    const DEPTH: usize = 8;
    for (i, jp) in random_jacobi_params(spec.seed, 20, 2 * DEPTH)
        .into_iter()
        .enumerate()
    {
        b.add(
            "round-trip",
            format!("random #{i}"),
            (Some(DEPTH), None),
            move || {
                let moments = build_triangle(&jp, 2 * DEPTH - 2).column0();
                let recovered = jacobi_from_moments(&MomentSeq::Explicit(moments.clone()), DEPTH)
                    .map_err(err)?;
                let rebuilt = build_triangle(&recovered, DEPTH - 1).column0();
                let same_params =
                    recovered.s == jp.s[..DEPTH - 1] && recovered.t == jp.t[..DEPTH - 1];
                Ok(Outcome {
                    expected: render_list(&moments[..DEPTH]),
                    actual: render_list(&rebuilt),
                    holds: rebuilt == moments[..DEPTH] && same_params,
                })
            },
        );
    }
    let named: [(MomentSeq, Vec<i64>, Vec<i64>); 2] = [
        (MomentSeq::Catalan, vec![1, 2, 2, 2], vec![1, 1, 1, 1]),
        (
            MomentSeq::CentralBinomial,
            vec![2, 2, 2, 2],
            vec![2, 1, 1, 1],
        ),
    ];
    for (seq, s, t) in named {
        b.add(
            "jacobi-parameters",
            seq.to_string(),
            (Some(5), None),
            move || {
                let jp = jacobi_from_moments(&seq, 5).map_err(err)?;
                let want = JacobiParams::new(
                    s.iter().map(|&x| int(x)).collect(),
                    t.iter().map(|&x| int(x)).collect(),
                );
                Ok(Outcome {
                    expected: format!("s = {}; t = {}", render_list(&want.s), render_list(&want.t)),
                    actual: format!("s = {}; t = {}", render_list(&jp.s), render_list(&jp.t)),
                    holds: jp == want,
                })
            },
        );
    }
}
