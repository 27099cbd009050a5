//! Report records. Field order is the serialization order, so output is
//! stable across runs.

use serde::Serialize;
use slcgerm_core::germs::germ_from_plt_chain;
use slcgerm_core::residue::{
    dihedral_residue, glued_restriction_coeff, restriction_is_classical, DihedralResidue,
};
use slcgerm_core::{
    classify_lc_germ, classify_nonnormal, plt_modification, single_branch_report, Attach,
    CyclicQuotientGerm, Error, GermClass, GermTag, LogCanonicalClass, NonNormalGerm, Rat,
    ResidueReport, ResolutionGraph, Result, Trichotomy,
};

use crate::germfile::{CyclicLiteral, Germ, GermFile};

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Classification {
    Germ(GermClass),
    NonNormal(NonNormalGerm),
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum ResidueTable {
    SingleBranch(Vec<ResidueReport>),
    Dihedral(Vec<DihedralResidue>),
}

/// Solved boundary of a dual graph.
#[derive(Debug, Clone, Serialize)]
pub struct GraphSummary {
    pub log_canonical_class: LogCanonicalClass,
    pub boundary_coefficients: Vec<Rat>,
    pub discrepancies: Vec<Rat>,
    pub cartier_index: Option<u64>,
}

pub fn graph_summary(g: &ResolutionGraph) -> Result<GraphSummary> {
    let b = g.boundary_coefficients()?;
    let cartier_index = match g.cartier_index() {
        Ok(i) => Some(i),
        Err(Error::NotLogCanonical(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(GraphSummary {
        log_canonical_class: g.log_canonical_class()?,
        boundary_coefficients: b.coeffs().to_vec(),
        discrepancies: b.discrepancies(),
        cartier_index,
    })
}

/// How the germ is modified before the vanishing argument: the first curve
/// of a plt chain is extracted with coefficient `1 - γ`; in the lc-center
/// shapes every curve with boundary coefficient 1 is extracted, and the
/// boundary is lowered by an unspecified small multiple of an anti-ample
/// exceptional divisor when `Δ` is not integral (`perturbed`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Modification {
    pub kind: &'static str,
    /// 1-based vertices of the extracted curves.
    pub extracted: Vec<usize>,
    pub discrepancy: Option<Rat>,
    pub assigned_coeff: Option<Rat>,
    pub gamma: Option<Rat>,
    pub perturbed: bool,
}

impl Modification {
    fn none() -> Self {
        Modification {
            kind: "none",
            extracted: Vec::new(),
            discrepancy: None,
            assigned_coeff: None,
            gamma: None,
            perturbed: false,
        }
    }
}

fn plt_chain_modification(germ: &CyclicQuotientGerm, first_curve: Option<usize>) -> Result<Modification> {
    let pm = plt_modification(germ.n(), &germ.c())?;
    Ok(Modification {
        kind: "plt",
        extracted: first_curve.map(|v| v + 1).into_iter().collect(),
        discrepancy: Some(pm.discrepancy),
        assigned_coeff: Some(pm.assigned_coeff),
        gamma: Some(germ.gamma()),
        perturbed: false,
    })
}

fn slc_modification(g: &ResolutionGraph, summary: &GraphSummary) -> Modification {
    let extracted = summary
        .boundary_coefficients
        .iter()
        .enumerate()
        .filter(|(_, b)| b.is_one())
        .map(|(v, _)| v + 1)
        .collect();
    Modification {
        kind: "slc",
        extracted,
        discrepancy: Some(Rat::integer(-1)),
        assigned_coeff: Some(Rat::one()),
        gamma: None,
        perturbed: g.branches().iter().any(|b| !b.coeff.is_integer()),
    }
}

fn unit_branch_vertex(g: &ResolutionGraph) -> Option<usize> {
    g.branches().iter().find(|b| b.coeff.is_one()).and_then(|b| match b.attach {
        Attach::Vertex(v) => Some(v),
        Attach::SmoothPoint => None,
    })
}

pub fn residue_rows(germ: &CyclicQuotientGerm, m_max: u64) -> Result<Vec<ResidueReport>> {
    (1..=m_max).map(|m| single_branch_report(m, germ)).collect()
}

pub fn dihedral_rows(m_max: u64) -> Result<Vec<DihedralResidue>> {
    (1..=m_max).map(dihedral_residue).collect()
}

/// Everything known about one lc germ given by its dual graph.
pub struct GraphAnalysis {
    pub summary: GraphSummary,
    pub class: Option<GermClass>,
    pub plt_germ: Option<CyclicQuotientGerm>,
    pub not_classified: Option<String>,
}

pub fn analyse_graph(g: &ResolutionGraph) -> Result<GraphAnalysis> {
    let summary = graph_summary(g)?;
    let (class, not_classified) = match classify_lc_germ(g) {
        Ok(c) => (Some(c), None),
        Err(Error::NotApplicable(why)) => (None, Some(why)),
        Err(e @ Error::NotLogCanonical(_)) => (None, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    let plt_germ = match &class {
        Some(c) if c.tag == GermTag::PltChain => Some(germ_from_plt_chain(g)?),
        _ => None,
    };
    Ok(GraphAnalysis {
        summary,
        class,
        plt_germ,
        not_classified,
    })
}

/// Coefficient of the point in the different on the coefficient-one branch:
/// the solved coefficient of the curve that branch meets, or the sum of the
/// other branches when the point is smooth.
fn different_of(g: &ResolutionGraph, summary: &GraphSummary) -> Option<Rat> {
    if g.is_empty() {
        let mut others: Vec<&Rat> = g.branches().iter().map(|b| &b.coeff).collect();
        let unit = others.iter().position(|c| c.is_one())?;
        others.remove(unit);
        return Some(others.into_iter().sum());
    }
    unit_branch_vertex(g).map(|v| summary.boundary_coefficients[v].clone())
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentReport {
    pub germ: CyclicLiteral,
    pub tag: Option<GermTag>,
    pub gamma: Option<Rat>,
    pub different: Option<Rat>,
    pub boundary_coefficients: Vec<Rat>,
    pub discrepancies: Vec<Rat>,
    pub cartier_index: Option<u64>,
    pub residue_table: Vec<ResidueReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictionRow {
    pub m: u64,
    pub left: Rat,
    pub right: Rat,
    pub mcartier: bool,
    pub classical: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GlueReport {
    pub slc: bool,
    pub differents: Vec<Rat>,
    pub restriction_table: Vec<RestrictionRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub input: GermFile,
    pub case: String,
    pub classification: Option<Classification>,
    pub log_canonical_class: Option<LogCanonicalClass>,
    pub boundary_coefficients: Vec<Rat>,
    pub discrepancies: Vec<Rat>,
    pub cartier_index: Option<u64>,
    pub different: Option<Rat>,
    pub residue_table: Option<ResidueTable>,
    pub components: Vec<ComponentReport>,
    pub glue: Option<GlueReport>,
    pub modification: Vec<Modification>,
    pub flags: Vec<String>,
}

pub fn build_report(input: &GermFile, m_max: u64) -> Result<Report> {
    match input.validate()? {
        Germ::Cyclic(g) => single_report(input, &g.resolution_graph()?, m_max),
        Germ::Graph(g) => single_report(input, &g, m_max),
        Germ::Glued { components, glue_ok } => glued_report(input, &components, glue_ok, m_max),
    }
}

/// Residue table of an lc germ: single-branch rows for plt chains, parity
/// rows for the dihedral shape with two (-2)-curve prongs and no other
/// boundary.
pub fn graph_residue(a: &GraphAnalysis, m_max: u64) -> Result<Option<ResidueTable>> {
    if let Some(germ) = &a.plt_germ {
        return Ok(Some(ResidueTable::SingleBranch(residue_rows(germ, m_max)?)));
    }
    match &a.class {
        Some(c) if c.tag == GermTag::Dihedral31 => Ok(Some(ResidueTable::Dihedral(dihedral_rows(m_max)?))),
        _ => Ok(None),
    }
}

fn single_report(input: &GermFile, g: &ResolutionGraph, m_max: u64) -> Result<Report> {
    let a = analyse_graph(g)?;
    let mut flags = Vec::new();
    if a.not_classified.is_some() {
        flags.push("not-classified".to_string());
    }
    let modification = match (&a.plt_germ, &a.class) {
        (Some(germ), _) => vec![plt_chain_modification(germ, unit_branch_vertex(g))?],
        (None, Some(c)) if c.tag.is_lc_center_shape() => vec![slc_modification(g, &a.summary)],
        _ => Vec::new(),
    };
    if modification.iter().any(|m| m.perturbed) {
        flags.push("perturbed".to_string());
    }
    let case = match &a.class {
        Some(c) => c.tag.case_label().to_string(),
        None => "not_classified".to_string(),
    };
    Ok(Report {
        input: input.clone(),
        case,
        different: a.class.as_ref().and_then(|_| different_of(g, &a.summary)),
        residue_table: graph_residue(&a, m_max)?,
        classification: a.class.clone().map(Classification::Germ),
        log_canonical_class: Some(a.summary.log_canonical_class),
        boundary_coefficients: a.summary.boundary_coefficients.clone(),
        discrepancies: a.summary.discrepancies.clone(),
        cartier_index: a.summary.cartier_index,
        components: Vec::new(),
        glue: None,
        modification,
        flags,
    })
}

pub fn component_report(germ: &CyclicQuotientGerm, m_max: u64) -> Result<ComponentReport> {
    let g = germ.resolution_graph()?;
    let a = analyse_graph(&g)?;
    let residue_table = match germ.conductor().is_one() {
        true => residue_rows(germ, m_max)?,
        false => Vec::new(),
    };
    Ok(ComponentReport {
        germ: CyclicLiteral::from(germ),
        tag: a.class.as_ref().map(|c| c.tag),
        gamma: germ.conductor().is_one().then(|| germ.gamma()),
        different: germ.different_coeff().ok(),
        boundary_coefficients: a.summary.boundary_coefficients,
        discrepancies: a.summary.discrepancies,
        cartier_index: a.summary.cartier_index,
        residue_table,
    })
}

/// Restriction coefficients of `mK_S + ⌊mΔ⌋` to the conductor from both
/// sides, for `1/n(1,1)` components with `0 < c < 1`. Empty when the pair
/// is outside that model.
pub fn restriction_table(g1: &CyclicQuotientGerm, g2: &CyclicQuotientGerm, m_max: u64) -> Result<Vec<RestrictionRow>> {
    let in_model = |g: &CyclicQuotientGerm| g.q() == 1 && g.c().in_open_unit();
    if !in_model(g1) || !in_model(g2) {
        return Ok(Vec::new());
    }
    let (c1, c2) = (g1.c(), g2.c());
    (1..=m_max)
        .map(|m| {
            let left = glued_restriction_coeff(m, g1.n(), &c1)?;
            let right = glued_restriction_coeff(m, g2.n(), &c2)?;
            Ok(RestrictionRow {
                m,
                mcartier: left == right,
                classical: restriction_is_classical(m, &c1) && restriction_is_classical(m, &c2),
                left,
                right,
            })
        })
        .collect()
}

pub fn glue_report(components: &[CyclicQuotientGerm], m_max: u64) -> Result<GlueReport> {
    let differents = components.iter().map(|g| g.different_coeff()).collect::<Result<Vec<_>>>()?;
    let slc = differents.windows(2).all(|w| w[0] == w[1]);
    let restriction_table = match components {
        [g1, g2] if slc => restriction_table(g1, g2, m_max)?,
        _ => Vec::new(),
    };
    Ok(GlueReport {
        slc,
        differents,
        restriction_table,
    })
}

pub fn trichotomy_label(t: Trichotomy) -> &'static str {
    match t {
        Trichotomy::LcCenterCase => "lc_center",
        Trichotomy::TwoComponentPlt => "two_component_plt",
        Trichotomy::OneComponentPlt => "one_component_plt",
    }
}

fn glued_report(input: &GermFile, components: &[CyclicQuotientGerm], glue_ok: bool, m_max: u64) -> Result<Report> {
    let mut flags = Vec::new();
    let (classification, case) = match classify_nonnormal(components, glue_ok) {
        Ok(nn) => {
            flags.extend(nn.flags.iter().cloned());
            let case = trichotomy_label(nn.trichotomy).to_string();
            (Some(nn), case)
        }
        Err(Error::GlueMismatch { .. }) => {
            flags.push("glue-mismatch".to_string());
            (None, "not_slc".to_string())
        }
        Err(Error::NoGluingMap) => {
            flags.push("no-gluing-map".to_string());
            (None, "no_gluing_map".to_string())
        }
        Err(e) => return Err(e),
    };
    let glue = glue_report(components, m_max)?;
    if glue.restriction_table.iter().any(|r| !r.classical) {
        flags.push("extrapolated".to_string());
    }
    let modification = match classification.as_ref().map(|nn| nn.trichotomy) {
        Some(Trichotomy::TwoComponentPlt) => components
            .iter()
            .map(|g| plt_chain_modification(g, (g.n() > 1).then_some(0)))
            .collect::<Result<Vec<_>>>()?,
        Some(Trichotomy::LcCenterCase) => components
            .iter()
            .map(|g| {
                let graph = g.resolution_graph()?;
                Ok(slc_modification(&graph, &graph_summary(&graph)?))
            })
            .collect::<Result<Vec<_>>>()?,
        Some(Trichotomy::OneComponentPlt) => vec![Modification::none()],
        None => Vec::new(),
    };
    if modification.iter().any(|m| m.perturbed) {
        flags.push("perturbed".to_string());
    }
    Ok(Report {
        input: input.clone(),
        case,
        cartier_index: classification.as_ref().and_then(|nn| nn.cartier_index),
        classification: classification.map(Classification::NonNormal),
        log_canonical_class: None,
        boundary_coefficients: Vec::new(),
        discrepancies: Vec::new(),
        different: glue.slc.then(|| glue.differents[0].clone()),
        residue_table: None,
        components: components.iter().map(|g| component_report(g, m_max)).collect::<Result<_>>()?,
        glue: Some(glue),
        modification,
        flags,
    })
}
