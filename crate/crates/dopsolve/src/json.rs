//! JSON shapes for the CLI. Numbers are exact and carried as decimal strings.

use dopsolve_core::render::{complex_text, text};
use dopsolve_core::solver::{FrequencyStep, KernelBasis, SolveTrace};
use dopsolve_core::{GaussianRational, OperatorPoly, Rational, RealExpr, RealTerm, Trig, Verdict};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for RationalJson {
    fn from(q: &Rational) -> Self {
        RationalJson { num: q.numer().to_string(), den: q.denom().to_string() }
    }
}

impl TryFrom<&RationalJson> for Rational {
    type Error = String;

    fn try_from(j: &RationalJson) -> Result<Self, String> {
        let digits = |s: &str| !s.is_empty() && s.trim_start_matches('-').bytes().all(|b| b.is_ascii_digit());
        if !digits(&j.num) || !digits(&j.den) {
            return Err(format!("malformed rational {{num: {:?}, den: {:?}}}", j.num, j.den));
        }
        format!("{}/{}", j.num, j.den).parse().map_err(|e: dopsolve_core::ArithError| e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussianJson {
    pub re: RationalJson,
    pub im: RationalJson,
}

impl From<&GaussianRational> for GaussianJson {
    fn from(z: &GaussianRational) -> Self {
        GaussianJson { re: (&z.re).into(), im: (&z.im).into() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TrigJson {
    None,
    Cos,
    Sin,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: RationalJson,
    pub k: u32,
    pub alpha: RationalJson,
    pub beta: RationalJson,
    pub trig: TrigJson,
}

impl From<&RealTerm> for TermJson {
    fn from(t: &RealTerm) -> Self {
        TermJson {
            coeff: (&t.coeff).into(),
            k: t.k,
            alpha: (&t.alpha).into(),
            beta: (&t.beta).into(),
            trig: match t.trig {
                Trig::None => TrigJson::None,
                Trig::Cos => TrigJson::Cos,
                Trig::Sin => TrigJson::Sin,
            },
        }
    }
}

pub fn terms(e: &RealExpr) -> Vec<TermJson> {
    e.terms().iter().map(TermJson::from).collect()
}

pub fn expr_from_terms(terms: &[TermJson]) -> Result<RealExpr, String> {
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let trig = match t.trig {
            TrigJson::None => Trig::None,
            TrigJson::Cos => Trig::Cos,
            TrigJson::Sin => Trig::Sin,
        };
        out.push(RealTerm::new((&t.coeff).try_into()?, t.k, (&t.alpha).try_into()?, (&t.beta).try_into()?, trig));
    }
    Ok(RealExpr::from_terms(out))
}

pub fn operator(p: &OperatorPoly) -> Vec<GaussianJson> {
    p.coeffs().iter().map(GaussianJson::from).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    /// `exact`, `residual` or `wrong_dimension`.
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_terms: Option<Vec<TermJson>>,
}

impl From<&Verdict> for VerdictJson {
    fn from(v: &Verdict) -> Self {
        match v {
            Verdict::Exact => VerdictJson { status: "exact".into(), residual: None, residual_terms: None },
            Verdict::Residual(r) => VerdictJson {
                status: "residual".into(),
                residual: Some(text(r)),
                residual_terms: Some(terms(r)),
            },
            Verdict::WrongDimension { expected, found } => VerdictJson {
                status: "wrong_dimension".into(),
                residual: Some(format!("expected {expected} basis elements, found {found}")),
                residual_terms: None,
            },
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StepJson {
    pub lambda: GaussianJson,
    pub lambda_text: String,
    pub input: String,
    pub shifted: Vec<GaussianJson>,
    pub shifted_text: String,
    pub resonance_order: usize,
    pub reduced_text: String,
    pub series: Vec<GaussianJson>,
    pub pre_integration: String,
    pub antiderivative: String,
    pub contribution: String,
}

impl From<&FrequencyStep> for StepJson {
    fn from(s: &FrequencyStep) -> Self {
        StepJson {
            lambda: (&s.lambda).into(),
            lambda_text: s.lambda.to_string(),
            input: complex_text(&s.input),
            shifted: operator(&s.shifted),
            shifted_text: s.shifted.to_string(),
            resonance_order: s.resonance_order,
            reduced_text: s.reduced.to_string(),
            series: s.series.coeffs.iter().map(GaussianJson::from).collect(),
            pre_integration: complex_text(&s.pre_integration),
            antiderivative: complex_text(&s.antiderivative),
            contribution: complex_text(&s.contribution),
        }
    }
}

pub fn trace(t: &SolveTrace) -> Vec<StepJson> {
    t.steps.iter().map(StepJson::from).collect()
}

pub fn kernel(b: &KernelBasis) -> Vec<Vec<TermJson>> {
    b.elements.iter().map(terms).collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveJson {
    pub operator: Vec<GaussianJson>,
    pub rhs: Vec<TermJson>,
    pub solution: Vec<TermJson>,
    pub text: String,
    pub latex: String,
    pub verdict: VerdictJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel: Option<Vec<Vec<TermJson>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<StepJson>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BatchInput {
    pub problems: Vec<BatchProblem>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BatchProblem {
    pub op: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BatchResult {
    pub op: String,
    pub rhs: String,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solution: Option<SolveJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BatchOutput {
    pub results: Vec<BatchResult>,
}
