//! Knot specifications, presets and the obstruction report.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{same_lattice, IntMatrix, Integer, Matrix, Rational};
use crate::json::{big, big_mat, big_vec, BigStr};
use crate::milnor::{self, LongitudeSystem, MilnorError, ScreenResult};
use crate::obstruction::{self, Discrepancy, ObstructionError, Triple};
use crate::seifert::{
    self, BlockForm, CurveKind, Metaboliser, SeifertError, SeifertMatrix, SelectionPattern,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReportError {
    #[error("input error: {0}")]
    Input(String),
    #[error("outside hypotheses: {0}")]
    Hypothesis(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl ReportError {
    pub fn exit_code(&self) -> i32 {
        match self {
            ReportError::Input(_) => 1,
            ReportError::Hypothesis(_) => 2,
            ReportError::Invariant(_) => 3,
        }
    }
}

impl From<SeifertError> for ReportError {
    fn from(e: SeifertError) -> Self {
        match e {
            SeifertError::OutsideHypotheses(_) | SeifertError::Singular => {
                ReportError::Hypothesis(e.to_string())
            }
            other => ReportError::Input(other.to_string()),
        }
    }
}

impl From<MilnorError> for ReportError {
    fn from(e: MilnorError) -> Self {
        ReportError::Input(e.to_string())
    }
}

impl From<ObstructionError> for ReportError {
    fn from(e: ObstructionError) -> Self {
        ReportError::Input(e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockFormSpec {
    #[serde(rename = "A", with = "big_mat")]
    pub a: Vec<Vec<Integer>>,
    #[serde(with = "big_vec")]
    pub p: Vec<Integer>,
}

/// Derivative data attached to one metaboliser.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct DerivativeSpec {
    /// Selection pattern such as `δJJ`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pattern: Option<String>,
    /// Metaboliser basis as a list of columns.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<BigStr>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu123: Option<BigStr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub longitudes: Option<LongitudeSystem>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct KnotSpec {
    #[serde(default)]
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block_form: Option<BlockFormSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seifert: Option<Vec<Vec<BigStr>>>,
    #[serde(default)]
    pub derivatives: Vec<DerivativeSpec>,
}

impl KnotSpec {
    pub fn from_json(s: &str) -> Result<Self, ReportError> {
        serde_json::from_str(s).map_err(|e| ReportError::Input(format!("knot spec: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serialises")
    }

    pub fn block(&self) -> Result<Option<BlockForm>, ReportError> {
        let Some(bf) = &self.block_form else {
            return Ok(None);
        };
        let a = Matrix::from_rows(bf.a.clone()).map_err(|e| ReportError::Input(format!("A block: {e}")))?;
        Ok(Some(BlockForm::new(a, bf.p.clone())?))
    }

    pub fn seifert_matrix(&self) -> Result<SeifertMatrix, ReportError> {
        match (&self.block_form, &self.seifert) {
            (Some(_), Some(_)) => Err(ReportError::Input(
                "give either block_form or seifert, not both".into(),
            )),
            (None, None) => Err(ReportError::Input("no Seifert data given".into())),
            (Some(_), None) => Ok(self.block()?.expect("present").to_seifert()?),
            (None, Some(rows)) => {
                let rows: Vec<Vec<Integer>> =
                    rows.iter().map(|r| r.iter().map(|x| x.0.clone()).collect()).collect();
                let m = Matrix::from_rows(rows).map_err(|e| ReportError::Input(format!("seifert: {e}")))?;
                Ok(SeifertMatrix::validate(m)?)
            }
        }
    }
}

fn big_strs(v: &[Integer]) -> Vec<BigStr> {
    v.iter().cloned().map(BigStr).collect()
}

fn pattern_set(kinds: [CurveKind; 2]) -> Vec<SelectionPattern> {
    let mut out = Vec::new();
    for a in kinds {
        for b in kinds {
            for c in kinds {
                out.push(SelectionPattern(vec![a, b, c]));
            }
        }
    }
    out
}

/// The eight selection patterns over `{δ, J}`.
pub fn delta_j_patterns() -> Vec<SelectionPattern> {
    pattern_set([CurveKind::Delta, CurveKind::J])
}

/// The eight selection patterns over `{J, ε}`.
pub fn j_epsilon_patterns() -> Vec<SelectionPattern> {
    pattern_set([CurveKind::J, CurveKind::Epsilon])
}

fn check_triple(p: &Triple) -> Result<(), ReportError> {
    obstruction::check_admissible(p).map_err(ReportError::from)
}

fn derivative_for(pattern: &SelectionPattern, inserted: bool) -> DerivativeSpec {
    DerivativeSpec {
        pattern: Some(pattern.to_string()),
        longitudes: Some(if inserted {
            LongitudeSystem::borromean()
        } else {
            LongitudeSystem::unlink(3)
        }),
        ..Default::default()
    }
}

/// Block form with `A = 0`; each `{δ, J}` pattern in `insertions` carries a
/// Borromean derivative (`μ̄ = 1`), the others an unlink.
pub fn preset_example1(p: &Triple, insertions: &[SelectionPattern]) -> Result<KnotSpec, ReportError> {
    check_triple(p)?;
    let all = delta_j_patterns();
    for s in insertions {
        if !all.contains(s) {
            return Err(ReportError::Input(format!("pattern {s} is not a {{δ, J}} selection")));
        }
    }
    let zero = vec![BigInt::zero(); 3];
    Ok(KnotSpec {
        name: format!("example1 p=({}, {}, {})", p[0], p[1], p[2]),
        block_form: Some(BlockFormSpec {
            a: vec![zero.clone(), zero.clone(), zero],
            p: p.to_vec(),
        }),
        seifert: None,
        derivatives: all.iter().map(|s| derivative_for(s, insertions.contains(s))).collect(),
    })
}

/// `A = diag(1, -1, 1)` with Borromean derivatives on all `{J, ε}` patterns.
pub fn preset_example2(p: &Triple) -> Result<KnotSpec, ReportError> {
    check_triple(p)?;
    let z = BigInt::zero;
    let o = BigInt::one;
    Ok(KnotSpec {
        name: format!("example2 p=({}, {}, {})", p[0], p[1], p[2]),
        block_form: Some(BlockFormSpec {
            a: vec![vec![o(), z(), z()], vec![z(), -o(), z()], vec![z(), z(), o()]],
            p: p.to_vec(),
        }),
        seifert: None,
        derivatives: j_epsilon_patterns().iter().map(|s| derivative_for(s, true)).collect(),
    })
}

/// The `A = 0` preset at `(2^e + 1, 2^2e + 1, 2^4e + 1)` with all eight insertions.
pub fn preset_family(e: u32) -> Result<(KnotSpec, obstruction::FamilyTable), ReportError> {
    if e == 0 {
        return Err(ReportError::Input("family exponent must be positive".into()));
    }
    let p = obstruction::family_parameters(e);
    let mut spec = preset_example1(&p, &delta_j_patterns())?;
    spec.name = format!("family e={e}");
    Ok((spec, obstruction::family_table(e)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStatus {
    Obstructed,
    NotAsserted,
    Inconclusive,
}

impl fmt::Display for VerdictStatus {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(match self {
            VerdictStatus::Obstructed => "obstructed",
            VerdictStatus::NotAsserted => "not asserted",
            VerdictStatus::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub witness: String,
}

impl Verdict {
    pub fn obstructed(&self) -> bool {
        self.status == VerdictStatus::Obstructed
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    /// Not in `F_{0.5,1}`.
    pub f_05_1: Verdict,
    /// Not in `F_{1,1}`.
    pub f_1_1: Verdict,
    pub homotopy_ribbon: Verdict,
    pub doubly_slice: Verdict,
    pub doubly_one_solvable: Verdict,
    pub no_zero_solvable_derivative: Verdict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PsiState {
    Vanishes,
    Nonvanishing,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PsiReport {
    pub state: PsiState,
    #[serde(with = "crate::json::big_opt", skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Integer>,
    #[serde(with = "crate::json::big_opt", skip_serializing_if = "Option::is_none")]
    pub residue: Option<Integer>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl PsiReport {
    fn undetermined(reason: impl Into<String>, modulus: Option<Integer>) -> Self {
        PsiReport {
            state: PsiState::Undetermined,
            modulus,
            residue: None,
            reason: Some(reason.into()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MuSource {
    Integer,
    Longitudes,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MetaboliserReport {
    pub index: usize,
    pub label: Option<String>,
    /// Basis columns.
    #[serde(with = "big_mat")]
    pub basis: Vec<Vec<Integer>>,
    pub eigenvalues: Vec<String>,
    pub verified: bool,
    /// Diagonal of the derivative linking matrix `X`, when diagonal.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub linking_diagonal: Option<Vec<BigStr>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<obstruction::ObstructionData>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<obstruction::DerivativeSetBounds>,
    #[serde(with = "crate::json::big_opt", skip_serializing_if = "Option::is_none")]
    pub mu123: Option<Integer>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu_source: Option<MuSource>,
    /// The supplied derivative freely reduces to the trivial link.
    pub derivative_is_unlink: bool,
    pub psi: PsiReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub first: usize,
    pub second: usize,
    pub labels: (Option<String>, Option<String>),
    #[serde(with = "big")]
    pub determinant: Integer,
    pub unimodular: bool,
    pub both_vanish: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScreenReport {
    pub metaboliser: usize,
    pub source: MuSource,
    pub result: ScreenResult,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub name: String,
    pub genus: usize,
    pub alexander_polynomial: String,
    /// Coefficients from `t^0` upwards.
    #[serde(with = "big_vec")]
    pub alexander_coefficients: Vec<Integer>,
    #[serde(with = "big")]
    pub alexander_at_one: Integer,
    pub isometry_eigenvalues: Vec<String>,
    pub enumeration_extrapolated: bool,
    pub metabolisers: Vec<MetaboliserReport>,
    pub complementary_pairs: Vec<PairReport>,
    pub verdicts: Verdicts,
    pub derivative_screens: Vec<ScreenReport>,
    pub ribbon_consistent: bool,
    pub warnings: Vec<String>,
    pub discrepancies: Vec<Discrepancy>,
}

impl ObstructionReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn vanishing_count(&self) -> usize {
        self.metabolisers
            .iter()
            .filter(|m| m.psi.state == PsiState::Vanishes)
            .count()
    }

    /// The implications between verdicts that every report must satisfy.
    pub fn check_implications(&self) -> Result<(), ReportError> {
        let v = &self.verdicts;
        let chain = [
            (&v.f_05_1, &v.homotopy_ribbon, "F_{0.5,1} ⟹ homotopy ribbon"),
            (&v.f_1_1, &v.doubly_slice, "F_{1,1} ⟹ doubly slice"),
            (&v.f_05_1, &v.f_1_1, "F_{0.5,1} ⟹ F_{1,1}"),
            (&v.f_1_1, &v.doubly_one_solvable, "F_{1,1} ⟹ doubly (1)-solvable"),
        ];
        for (a, b, what) in chain {
            if a.obstructed() && !b.obstructed() {
                return Err(ReportError::Invariant(format!("verdict implication {what} fails")));
            }
        }
        Ok(())
    }
}

fn rational_string(r: &Rational) -> String {
    r.to_string()
}

fn spec_basis(cols: &[Vec<BigStr>], dim: usize) -> Result<IntMatrix, ReportError> {
    let cols: Vec<Vec<Integer>> = cols.iter().map(|c| c.iter().map(|x| x.0.clone()).collect()).collect();
    if cols.iter().any(|c| c.len() != dim) {
        return Err(ReportError::Input(format!("basis columns must have length {dim}")));
    }
    Ok(Matrix::from_columns(dim, &cols))
}

// Index of the metaboliser a derivative entry refers to.
fn match_derivative(
    d: &DerivativeSpec,
    hs: &[Metaboliser],
    dim: usize,
) -> Result<usize, ReportError> {
    match (&d.pattern, &d.basis) {
        (Some(pat), None) => {
            let sel = SelectionPattern::parse(pat)
                .ok_or_else(|| ReportError::Input(format!("unreadable selection pattern {pat:?}")))?;
            hs.iter()
                .position(|h| h.label.as_ref() == Some(&sel))
                .ok_or_else(|| ReportError::Input(format!("pattern {pat} matches no enumerated metaboliser")))
        }
        (None, Some(cols)) => {
            let b = spec_basis(cols, dim)?;
            hs.iter()
                .position(|h| same_lattice(&h.basis, &b))
                .ok_or_else(|| ReportError::Input("basis matches no enumerated metaboliser".into()))
        }
        _ => Err(ReportError::Input(
            "each derivative needs exactly one of pattern or basis".into(),
        )),
    }
}

fn is_unlink(ls: &LongitudeSystem) -> bool {
    ls.longitudes.iter().all(|w| w.freely_reduced().is_empty())
}

struct Derivative {
    mu: Option<(Integer, MuSource)>,
    longitudes: Option<LongitudeSystem>,
}

fn resolve_derivative(
    d: &DerivativeSpec,
    genus: usize,
    label: &str,
    warnings: &mut Vec<String>,
) -> Result<Derivative, ReportError> {
    let from_longitudes = match &d.longitudes {
        Some(ls) => {
            ls.validate()?;
            if ls.components != genus {
                return Err(ReportError::Input(format!(
                    "derivative for {label} has {} components, expected {genus}",
                    ls.components
                )));
            }
            if genus == 3 {
                Some(milnor::mu_triple(ls, 1, 2, 3)?)
            } else {
                None
            }
        }
        None => None,
    };
    let mu = match (&d.mu123, from_longitudes) {
        (Some(k), Some(l)) => {
            if k.0 != l {
                warnings.push(format!(
                    "{label}: supplied μ̄(123) = {} differs from the longitude value {l}; using {}",
                    k.0, k.0
                ));
            }
            Some((k.0.clone(), MuSource::Integer))
        }
        (Some(k), None) => Some((k.0.clone(), MuSource::Integer)),
        (None, Some(l)) => Some((l, MuSource::Longitudes)),
        (None, None) => None,
    };
    Ok(Derivative {
        mu,
        longitudes: d.longitudes.clone(),
    })
}

fn family_discrepancies(block: Option<&BlockForm>) -> Vec<Discrepancy> {
    let Some(bf) = block else { return Vec::new() };
    if bf.genus() != 3 || !bf.a.is_zero() {
        return Vec::new();
    }
    let p0 = &bf.p[0];
    if p0 <= &BigInt::from(2) {
        return Vec::new();
    }
    let e = (p0 - 1u32).bits() - 1;
    if e == 0 || e > 1 << 16 {
        return Vec::new();
    }
    let e = e as u32;
    if obstruction::family_parameters(e).to_vec() != bf.p {
        return Vec::new();
    }
    obstruction::family_table(e).discrepancies
}

pub fn analyze(spec: &KnotSpec) -> Result<ObstructionReport, ReportError> {
    let s = spec.seifert_matrix()?;
    let block = spec.block()?;
    let g = s.genus();
    let dim = s.dim();
    let mut warnings = Vec::new();

    let delta = seifert::alexander_poly(&s);
    let alexander_coefficients: Vec<Integer> = (0..=delta.max_exp().unwrap_or(0))
        .map(|k| delta.coeff(k))
        .collect();
    let alexander_at_one: Integer = alexander_coefficients.iter().sum();

    let en = seifert::enumerate_metabolisers(&s)?;
    if en.extrapolated {
        warnings.push(format!(
            "genus {g}: metaboliser enumeration rule applied outside genus 3; ψ is only defined for three-component derivatives"
        ));
    }
    let hs = &en.metabolisers;
    let iso = seifert::isometry(&s)?;

    // Derivative data, keyed by metaboliser.
    let mut derivs: Vec<Option<Derivative>> = (0..hs.len()).map(|_| None).collect();
    for d in &spec.derivatives {
        let idx = match_derivative(d, hs, dim)?;
        let label = hs[idx].label_string().unwrap_or_else(|| format!("#{idx}"));
        if derivs[idx].is_some() {
            return Err(ReportError::Input(format!("derivative data for {label} given twice")));
        }
        derivs[idx] = Some(resolve_derivative(d, g, &label, &mut warnings)?);
    }

    let mut mets = Vec::with_capacity(hs.len());
    let mut screens = Vec::new();
    for (idx, h) in hs.iter().enumerate() {
        let label = h.label_string();
        let name = label.clone().unwrap_or_else(|| format!("#{idx}"));
        let verified = seifert::verify_metaboliser(&s, h)?;
        if !verified {
            return Err(ReportError::Invariant(format!("metaboliser {name} fails verification")));
        }
        if !seifert::isometry_preserves(&iso, &h.basis) {
            return Err(ReportError::Invariant(format!("isometry does not preserve {name}")));
        }
        let x = seifert::derivative_linking_matrix(&s, &h.basis)?;
        let diag = x.is_diagonal().then(|| x.diagonal());
        if diag.is_none() {
            warnings.push(format!("{name}: derivative linking matrix is not diagonal; ψ undecided"));
        }

        let mut obstruction_data = None;
        let mut bounds = None;
        let mut modulus = None;
        let mut pre_reason = None;
        match &diag {
            Some(d) if g == 3 => {
                let t: Triple = [d[0].clone(), d[1].clone(), d[2].clone()];
                match obstruction::obstruction_data(&t) {
                    Ok(data) => {
                        modulus = Some(data.modulus.clone());
                        obstruction_data = Some(data);
                        bounds = Some(obstruction::derivative_set_bounds(&t)?);
                    }
                    Err(ObstructionError::ZeroN) => {
                        bounds = Some(obstruction::derivative_set_bounds(&t)?);
                        pre_reason = Some("n = 0: S = {0} and the ψ criterion is inapplicable".to_string());
                    }
                    Err(e) => pre_reason = Some(e.to_string()),
                }
            }
            Some(_) => pre_reason = Some(format!("genus {g}: ψ needs three components")),
            None => pre_reason = Some("linking matrix not diagonal".to_string()),
        }

        let der = derivs[idx].take();
        let (mu, src) = match der.as_ref().and_then(|d| d.mu.clone()) {
            Some((m, s)) => (Some(m), Some(s)),
            None => (None, None),
        };
        let psi = match (&pre_reason, &modulus, &mu) {
            (Some(r), _, _) => PsiReport::undetermined(r.clone(), None),
            (None, Some(md), Some(mu)) => {
                let st = obstruction::psi_from_modulus(md, mu);
                PsiReport {
                    state: if st.vanishes { PsiState::Vanishes } else { PsiState::Nonvanishing },
                    modulus: Some(st.modulus),
                    residue: Some(st.residue),
                    reason: None,
                }
            }
            (None, md, None) => PsiReport::undetermined("no μ̄(123) data for this metaboliser", md.clone()),
            (None, None, Some(_)) => unreachable!("modulus is set whenever no reason is"),
        };

        let unlink = der
            .as_ref()
            .and_then(|d| d.longitudes.as_ref())
            .is_some_and(is_unlink);
        if let Some(d) = &der {
            if let Some(ls) = &d.longitudes {
                screens.push(ScreenReport {
                    metaboliser: idx,
                    source: MuSource::Longitudes,
                    result: milnor::zero_solvable_screen(ls)?,
                });
            } else if let Some((m, _)) = &d.mu {
                // Linking numbers of a derivative vanish on a metaboliser.
                let result = if m.is_zero() {
                    ScreenResult::Pass
                } else {
                    ScreenResult::TripleLinking {
                        triple: (1, 2, 3),
                        value: m.clone(),
                    }
                };
                screens.push(ScreenReport {
                    metaboliser: idx,
                    source: MuSource::Integer,
                    result,
                });
            }
        }

        mets.push(MetaboliserReport {
            index: idx,
            label,
            basis: h.basis.columns(),
            eigenvalues: h.eigenvalues.iter().map(rational_string).collect(),
            verified,
            linking_diagonal: diag.as_deref().map(big_strs),
            obstruction: obstruction_data,
            bounds,
            mu123: mu,
            mu_source: src,
            derivative_is_unlink: unlink,
            psi,
        });
    }

    let pairs: Vec<PairReport> = seifert::complementary_pairs(&s, hs)
        .into_iter()
        .map(|c| {
            let (a, b) = (&mets[c.first].psi.state, &mets[c.second].psi.state);
            let both = match (a, b) {
                (PsiState::Vanishes, PsiState::Vanishes) => Some(true),
                (PsiState::Nonvanishing, _) | (_, PsiState::Nonvanishing) => Some(false),
                _ => None,
            };
            PairReport {
                first: c.first,
                second: c.second,
                labels: (mets[c.first].label.clone(), mets[c.second].label.clone()),
                determinant: c.determinant,
                unimodular: c.unimodular,
                both_vanish: both,
            }
        })
        .collect();

    let verdicts = decide(&mets, &pairs);
    let ribbon_consistent = mets
        .iter()
        .any(|m| m.psi.state == PsiState::Vanishes && m.derivative_is_unlink);

    let report = ObstructionReport {
        name: spec.name.clone(),
        genus: g,
        alexander_polynomial: delta.to_string(),
        alexander_coefficients,
        alexander_at_one,
        isometry_eigenvalues: en.eigenvalues.iter().map(rational_string).collect(),
        enumeration_extrapolated: en.extrapolated,
        metabolisers: mets,
        complementary_pairs: pairs,
        verdicts,
        derivative_screens: screens,
        ribbon_consistent,
        warnings,
        discrepancies: family_discrepancies(block.as_ref()),
    };
    report.check_implications()?;
    Ok(report)
}

fn name_of(m: &MetaboliserReport) -> String {
    m.label.clone().unwrap_or_else(|| format!("#{}", m.index))
}

fn decide(mets: &[MetaboliserReport], pairs: &[PairReport]) -> Verdicts {
    let vanishing: Vec<&MetaboliserReport> =
        mets.iter().filter(|m| m.psi.state == PsiState::Vanishes).collect();
    let undetermined = mets.iter().any(|m| m.psi.state == PsiState::Undetermined);

    let f05 = if let Some(m) = vanishing.first() {
        Verdict {
            status: VerdictStatus::NotAsserted,
            witness: format!("ψ vanishes for the metaboliser {}", name_of(m)),
        }
    } else if undetermined || mets.is_empty() {
        Verdict {
            status: VerdictStatus::Inconclusive,
            witness: "ψ is undetermined for some metaboliser".into(),
        }
    } else {
        Verdict {
            status: VerdictStatus::Obstructed,
            witness: format!("ψ ≠ 0 for all {} metabolisers", mets.len()),
        }
    };

    let f11 = if let Some(p) = pairs.iter().find(|p| p.both_vanish == Some(true)) {
        Verdict {
            status: VerdictStatus::NotAsserted,
            witness: format!(
                "ψ vanishes on both members of the complementary pair {} / {}",
                name_of(&mets[p.first]),
                name_of(&mets[p.second])
            ),
        }
    } else if pairs.iter().any(|p| p.both_vanish.is_none()) || mets.is_empty() {
        Verdict {
            status: VerdictStatus::Inconclusive,
            witness: "some complementary pair has an undetermined ψ".into(),
        }
    } else {
        Verdict {
            status: VerdictStatus::Obstructed,
            witness: format!(
                "each of the {} complementary pairs has a member with ψ ≠ 0",
                pairs.len()
            ),
        }
    };

    let implied = |v: &Verdict, what: &str| match v.status {
        VerdictStatus::Obstructed => Verdict {
            status: VerdictStatus::Obstructed,
            witness: format!("{what}: {}", v.witness),
        },
        s => Verdict {
            status: s,
            witness: v.witness.clone(),
        },
    };

    Verdicts {
        homotopy_ribbon: implied(&f05, "not (0.5,1)-solvable"),
        no_zero_solvable_derivative: implied(&f05, "ψ ≠ 0 on every lagrangian"),
        doubly_slice: implied(&f11, "not doubly (1)-solvable"),
        doubly_one_solvable: implied(&f11, "no complementary pair with vanishing ψ"),
        f_05_1: f05,
        f_1_1: f11,
    }
}

/// Plain-text rendering of a report.
pub fn render_table(r: &ObstructionReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("knot: {}\n", r.name));
    out.push_str(&format!("genus: {}\n", r.genus));
    out.push_str(&format!("alexander polynomial: {}\n", r.alexander_polynomial));
    out.push_str(&format!("isometry eigenvalues: {}\n", r.isometry_eigenvalues.join(", ")));
    out.push_str("\nmetaboliser  X diagonal          modulus  mu123  psi\n");
    for m in &r.metabolisers {
        let diag = m
            .linking_diagonal
            .as_ref()
            .map(|d| d.iter().map(|x| x.0.to_string()).collect::<Vec<_>>().join(","))
            .unwrap_or_else(|| "-".into());
        let md = m.psi.modulus.as_ref().map(ToString::to_string).unwrap_or_else(|| "-".into());
        let mu = m.mu123.as_ref().map(ToString::to_string).unwrap_or_else(|| "-".into());
        let psi = match m.psi.state {
            PsiState::Vanishes => "0",
            PsiState::Nonvanishing => "nonzero",
            PsiState::Undetermined => "?",
        };
        out.push_str(&format!(
            "{:<12}  {:<18}  {:>7}  {:>5}  {}\n",
            name_of(m),
            diag,
            md,
            mu,
            psi
        ));
    }
    out.push_str("\ncomplementary pairs:\n");
    for p in &r.complementary_pairs {
        out.push_str(&format!(
            "  {} / {}  det {}  both vanish: {}\n",
            name_of(&r.metabolisers[p.first]),
            name_of(&r.metabolisers[p.second]),
            p.determinant,
            p.both_vanish.map_or("?".to_string(), |b| b.to_string())
        ));
    }
    let v = &r.verdicts;
    out.push_str("\nverdicts:\n");
    for (k, x) in [
        ("not (0.5,1)-solvable", &v.f_05_1),
        ("not (1,1)-solvable", &v.f_1_1),
        ("not homotopy ribbon", &v.homotopy_ribbon),
        ("not doubly slice", &v.doubly_slice),
        ("not doubly (1)-solvable", &v.doubly_one_solvable),
        ("no (0)-solvable derivative", &v.no_zero_solvable_derivative),
    ] {
        out.push_str(&format!("  {k:<28} {:<13} {}\n", x.status.to_string(), x.witness));
    }
    out.push_str(&format!("ribbon consistent: {}\n", r.ribbon_consistent));
    for w in &r.warnings {
        out.push_str(&format!("warning: {w}\n"));
    }
    for d in &r.discrepancies {
        out.push_str(&format!("discrepancy (row {}): {}\n", d.row, d.note));
    }
    out
}

/// Report of the metabolisers alone, for the `metabolisers` subcommand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MetaboliserListing {
    pub genus: usize,
    pub extrapolated: bool,
    pub eigenvalues: Vec<String>,
    pub metabolisers: Vec<ListedMetaboliser>,
    pub complementary_pairs: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ListedMetaboliser {
    pub label: Option<String>,
    #[serde(with = "big_mat")]
    pub basis: Vec<Vec<Integer>>,
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub linking_diagonal: Option<Vec<BigStr>>,
}

pub fn list_metabolisers(spec: &KnotSpec) -> Result<MetaboliserListing, ReportError> {
    let s = spec.seifert_matrix()?;
    let en = seifert::enumerate_metabolisers(&s)?;
    let mut out = Vec::new();
    for h in &en.metabolisers {
        let verified = seifert::verify_metaboliser(&s, h)?;
        if !verified {
            return Err(ReportError::Invariant("enumerated metaboliser fails verification".into()));
        }
        let x = seifert::derivative_linking_matrix(&s, &h.basis)?;
        out.push(ListedMetaboliser {
            label: h.label_string(),
            basis: h.basis.columns(),
            verified,
            linking_diagonal: x.is_diagonal().then(|| big_strs(&x.diagonal())),
        });
    }
    Ok(MetaboliserListing {
        genus: s.genus(),
        extrapolated: en.extrapolated,
        eigenvalues: en.eigenvalues.iter().map(rational_string).collect(),
        complementary_pairs: seifert::complementary_pairs(&s, &en.metabolisers)
            .iter()
            .map(|c| (c.first, c.second))
            .collect(),
        metabolisers: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::obstruction::triple;

    fn pat(s: &str) -> SelectionPattern {
        SelectionPattern::parse(s).unwrap()
    }

    #[test]
    fn eight_insertions_preset() {
        let spec = preset_example1(&triple(3, 5, 17), &delta_j_patterns()).unwrap();
        let r = analyze(&spec).unwrap();
        assert_eq!(r.metabolisers.len(), 8);
        assert!(r.metabolisers.iter().all(|m| m.psi.state == PsiState::Nonvanishing));
        let v = &r.verdicts;
        for x in [
            &v.f_05_1,
            &v.f_1_1,
            &v.homotopy_ribbon,
            &v.doubly_slice,
            &v.doubly_one_solvable,
            &v.no_zero_solvable_derivative,
        ] {
            assert!(x.obstructed(), "{x:?}");
        }
        assert!(!r.ribbon_consistent);
        assert!(r.discrepancies.iter().any(|d| d.row == 3));
    }

    #[test]
    fn seven_insertions_preset() {
        let seven: Vec<_> = delta_j_patterns().into_iter().filter(|s| *s != pat("δδδ")).collect();
        let r = analyze(&preset_example1(&triple(3, 5, 17), &seven).unwrap()).unwrap();
        assert_eq!(r.vanishing_count(), 1);
        let m = r.metabolisers.iter().find(|m| m.psi.state == PsiState::Vanishes).unwrap();
        assert_eq!(m.label.as_deref(), Some("δδδ"));
        assert!(r.verdicts.f_1_1.obstructed());
        assert!(r.verdicts.doubly_slice.obstructed());
        assert_eq!(r.verdicts.f_05_1.status, VerdictStatus::NotAsserted);
        assert_eq!(r.verdicts.homotopy_ribbon.status, VerdictStatus::NotAsserted);
        assert!(r.ribbon_consistent);
    }

    #[test]
    fn all_zero_preset() {
        let r = analyze(&preset_example1(&triple(3, 5, 17), &[]).unwrap()).unwrap();
        assert_eq!(r.vanishing_count(), 8);
        let v = &r.verdicts;
        for x in [&v.f_05_1, &v.f_1_1, &v.homotopy_ribbon, &v.doubly_slice] {
            assert_eq!(x.status, VerdictStatus::NotAsserted);
        }
    }

    #[test]
    fn missing_data_is_inconclusive() {
        let mut spec = preset_example1(&triple(3, 5, 17), &delta_j_patterns()).unwrap();
        spec.derivatives.truncate(7);
        let r = analyze(&spec).unwrap();
        assert_eq!(r.verdicts.f_05_1.status, VerdictStatus::Inconclusive);
        assert_eq!(
            r.metabolisers.iter().filter(|m| m.psi.state == PsiState::Undetermined).count(),
            1
        );
    }

    #[test]
    fn example2_preset() {
        let r = analyze(&preset_example2(&triple(3, 5, 17)).unwrap()).unwrap();
        assert_eq!(r.metabolisers.len(), 8);
        assert!(r.metabolisers.iter().all(|m| m.mu123.is_some()));
        assert!(r.verdicts.f_05_1.obstructed());
        let r = analyze(&preset_example2(&triple(2, 3, 7)).unwrap()).unwrap();
        assert!(r.metabolisers.iter().all(|m| m.psi.state != PsiState::Undetermined));
        assert!(preset_example2(&triple(1, 3, 7)).is_err());
    }

    #[test]
    fn unknown_pattern_is_an_input_error() {
        let mut spec = preset_example1(&triple(3, 5, 17), &[]).unwrap();
        spec.derivatives[0].pattern = Some("εεε".into());
        assert!(matches!(analyze(&spec), Err(ReportError::Input(_))));
    }

    #[test]
    fn integer_wins_with_warning() {
        let mut spec = preset_example1(&triple(3, 5, 17), &delta_j_patterns()).unwrap();
        spec.derivatives[0].mu123 = Some(BigStr(BigInt::from(0)));
        let r = analyze(&spec).unwrap();
        assert_eq!(r.warnings.len(), 1);
        let m = r
            .metabolisers
            .iter()
            .find(|m| m.label == spec.derivatives[0].pattern)
            .unwrap();
        assert_eq!(m.mu_source, Some(MuSource::Integer));
        assert_eq!(m.psi.state, PsiState::Vanishes);
    }

    #[test]
    fn round_trip_and_determinism() {
        let spec = preset_example2(&triple(3, 5, 17)).unwrap();
        let json = spec.to_json();
        assert_eq!(KnotSpec::from_json(&json).unwrap(), spec);
        let a = analyze(&spec).unwrap().to_json();
        let b = analyze(&KnotSpec::from_json(&json).unwrap()).unwrap().to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn family_presets() {
        let (spec, table) = preset_family(2).unwrap();
        assert_eq!(table.p, [5, 17, 257].map(BigInt::from).to_vec());
        assert!(table.admissible);
        assert!(spec.block_form.is_some());
        let (_, t3) = preset_family(3).unwrap();
        assert_eq!(t3.p, [9, 65, 4097].map(BigInt::from).to_vec());
        assert!(preset_family(0).is_err());
    }
}
