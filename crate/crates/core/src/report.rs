//! JSON reports: one per command run, replayable from the embedded input.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::comm::CommPresentation;
use crate::dimension::degeneracy_verdict;
use crate::error::{Error, Result};
use crate::essential::{cover_check, replay_partition, verify_essential_localization, CoverCandidate};
use crate::groebner::{Budget, BudgetUsage};
use crate::homology::{default_family, hchdim_lower_bound, hochschild_dims, hochschild_dims_normalized};
use crate::io::{Payload, PresentationFile};
use crate::lie::{chevalley_eilenberg_dims, lie_quasifree_verdict};
use crate::nc::{commutative_as_nc, standardize, NcPresentation};
use crate::points::{compare_point_sets, enumerate_homs, Point, PointFlags, PointSet};
use crate::poly::{parse_poly, split_list, Polynomial};
use crate::smoothness::{essential_check, jacobian_smooth, unramified_check, EssentialMode};
use crate::verdict::{Verdict, VerdictTag};

pub const SCHEMA: u32 = 1;

/// A command together with all of its input, as embedded in a report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Invocation {
    Krull {
        input: PresentationFile,
    },
    Degeneracy {
        input: PresentationFile,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sequence: Option<String>,
    },
    Hochschild {
        input: PresentationFile,
        max_degree: usize,
    },
    LieCohomology {
        input: PresentationFile,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_degree: Option<usize>,
    },
    Standardize {
        input: PresentationFile,
    },
    Smooth {
        input: PresentationFile,
        essential: bool,
        mode: EssentialMode,
    },
    Cover {
        input: PresentationFile,
        elements: String,
    },
    Localize {
        input: PresentationFile,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        element: Option<String>,
    },
    Points {
        source: PresentationFile,
        target: PresentationFile,
        nonunital: bool,
        commutative: bool,
        compare: bool,
    },
    Selftest,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BudgetReport {
    pub max_degree: u32,
    pub max_pairs: u64,
    pub pairs_processed: u64,
    pub max_pair_degree: u32,
}

impl BudgetReport {
    fn capture() -> Self {
        let b = Budget::current();
        let BudgetUsage { pairs_processed, max_pair_degree } = Budget::usage();
        BudgetReport { max_degree: b.max_degree, max_pairs: b.max_pairs, pairs_processed, max_pair_degree }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    #[serde(flatten)]
    pub invocation: Invocation,
    /// `null` for purely computational commands such as `krull`.
    pub verdict: Option<String>,
    pub witness: Value,
    pub provenance: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    pub timing_ms: f64,
    pub budget: BudgetReport,
}

impl Report {
    /// The report with its timing zeroed, for byte-level comparison.
    pub fn without_timing(&self) -> Report {
        Report { timing_ms: 0.0, ..self.clone() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

struct Outcome {
    verdict: Option<VerdictTag>,
    witness: Value,
    provenance: Vec<String>,
    warnings: Vec<String>,
}

impl From<Verdict> for Outcome {
    fn from(v: Verdict) -> Self {
        Outcome { verdict: Some(v.tag), witness: v.witness, provenance: v.provenance, warnings: v.warnings }
    }
}

impl Outcome {
    fn data(witness: Value, provenance: &str) -> Self {
        Outcome { verdict: None, witness, provenance: vec![provenance.to_string()], warnings: Vec::new() }
    }
}

fn parse_list(src: &str, a: &CommPresentation) -> Result<Vec<Polynomial>> {
    let items = split_list(src);
    if items.is_empty() {
        return Err(Error::Input(format!("empty element list {src:?}")));
    }
    items.iter().map(|s| parse_poly(s, a.ring())).collect()
}

fn comm_json(a: &CommPresentation) -> Value {
    json!({ "vars": a.vars(), "relations": a.relations() })
}

/// The source of a `points` run: a noncommutative presentation, or a
/// commutative one read with commutators.
fn point_source(f: &PresentationFile) -> Result<NcPresentation> {
    match &f.payload {
        Payload::CommPresentation(_) => commutative_as_nc(&f.comm()?),
        _ => f.nc(),
    }
}

fn point_flags(nonunital: bool, commutative: bool) -> PointFlags {
    PointFlags { unital_maps_only: !nonunital, commutative_category: commutative }
}

fn execute(inv: &Invocation) -> Result<Outcome> {
    match inv {
        Invocation::Krull { input } => {
            let a = input.commutative()?;
            let d = a.krull_dimension();
            Ok(Outcome::data(
                json!({ "krull_dimension": d, "vars": a.vars(), "leading_ideal": a.ideal().leading_monomials().len() }),
                "maximal independent set of variables modulo the leading-term ideal",
            ))
        }
        Invocation::Degeneracy { input, sequence } => {
            let a = input.commutative()?;
            let seq = sequence.as_deref().map(|s| parse_list(s, &a)).transpose()?;
            Ok(degeneracy_verdict(&a, seq.as_deref())?.into())
        }
        Invocation::Hochschild { input, max_degree } => {
            let (a, family) = match &input.payload {
                Payload::Bimodule(_) => {
                    let (a, m) = input.bimodule()?;
                    (a, vec![("M".to_string(), m)])
                }
                _ => {
                    let a = input.findim()?;
                    let family = default_family(&a);
                    (a, family)
                }
            };
            let mut out: Outcome = hchdim_lower_bound(&a, &family, *max_degree)?.into();
            let mut agreement = Vec::new();
            for (label, m) in &family {
                let full = hochschild_dims(&a, m, *max_degree)?;
                let normalized = hochschild_dims_normalized(&a, m, *max_degree)?;
                agreement.push(json!({ "bimodule": label, "unnormalized": full, "normalized": normalized }));
                if full != normalized {
                    out.warnings.push(format!("normalized and unnormalized complexes disagree for {label}"));
                }
            }
            out.witness["complexes"] = Value::Array(agreement);
            out.witness["center_dim"] = json!(a.center_dim());
            Ok(out)
        }
        Invocation::LieCohomology { input, max_degree } => {
            let (g, m) = input.lie()?;
            let n_max = max_degree.unwrap_or(g.dim());
            let dims = chevalley_eilenberg_dims(&g, &m, n_max)?;
            let trivial = m == crate::lie::LieModule::trivial(&g);
            if trivial {
                return Ok(lie_quasifree_verdict(&g, n_max)?.into());
            }
            Ok(Outcome::data(
                json!({ "cohomology_dims": dims, "module_dim": m.dim() }),
                "Chevalley-Eilenberg cochains with the given module",
            ))
        }
        Invocation::Standardize { input } => {
            let a = input.nc()?;
            let s = standardize(&a)?;
            let factors = s
                .factors()?
                .into_iter()
                .map(|f| {
                    json!({
                        "label": f.label,
                        "vars": f.presentation.vars(),
                        "relations": f.presentation.relations(),
                        "krull_dimension": f.presentation.krull_dimension(),
                    })
                })
                .collect::<Vec<_>>();
            let idempotent = s.idempotent.map(|e| s.presentation.vars()[e].clone());
            let mut w = comm_json(&s.presentation);
            w["idempotent"] = json!(idempotent);
            w["factors"] = json!(factors);
            Ok(Outcome::data(w, "abelianization of the unitization"))
        }
        Invocation::Smooth { input, essential: true, mode } => Ok(essential_check(&input.nc()?, *mode)?.into()),
        Invocation::Smooth { input, essential: false, mode } => {
            let a = input.commutative()?;
            if a.is_zero_ring() {
                return Err(Error::ZeroRing);
            }
            let j = || jacobian_smooth(&a);
            let v = match mode {
                EssentialMode::Smooth => {
                    let j = j()?;
                    let tag = if j.is_smooth() { VerdictTag::Smooth } else { VerdictTag::NotSmooth };
                    Verdict::new(tag, j.to_json()).because("Jacobian criterion with codimension n - dim A")
                }
                EssentialMode::Unramified => {
                    let u = unramified_check(&a)?;
                    let tag = if u { VerdictTag::Unramified } else { VerdictTag::Ramified };
                    Verdict::new(tag, json!({ "unramified": u })).because("I plus the maximal minors of the Jacobian")
                }
                EssentialMode::Etale => {
                    let j = j()?;
                    let u = unramified_check(&a)?;
                    let tag = if j.is_smooth() && u { VerdictTag::Etale } else { VerdictTag::NotEtale };
                    Verdict::new(tag, json!({ "jacobian": j.to_json(), "unramified": u }))
                        .because("etale is smooth and unramified")
                }
            };
            Ok(v.into())
        }
        Invocation::Cover { input, elements } => {
            let a = input.commutative()?;
            let e = parse_list(elements, &a)?;
            Ok(cover_check(&CoverCandidate::new(a, e))?.into())
        }
        Invocation::Localize { input, element } => {
            let (nu, spec) = input.morphism()?;
            let src = element
                .as_deref()
                .or(spec.element.as_deref())
                .ok_or_else(|| Error::Input("no element to localize at: use --element or an \"element\" field".into()))?;
            let f = standardize(nu.source())?.presentation.parse_element(src)?;
            Ok(verify_essential_localization(&nu, &f, spec.witness.as_ref())?.into())
        }
        Invocation::Points { source, target, nonunital, commutative, compare } => {
            let a = point_source(source)?;
            let b = target.findim()?;
            if *compare {
                let left = point_flags(false, *commutative);
                let right = point_flags(true, false);
                let c = compare_point_sets(&a, std::slice::from_ref(&b), left, right)?;
                return Ok(Outcome::data(
                    json!({ "left_flags": left, "right_flags": right, "comparison": c[0] }),
                    "exhaustive enumeration under both flag settings",
                ));
            }
            let flags = point_flags(*nonunital, *commutative);
            let s = enumerate_homs(&a, &b, flags)?;
            Ok(Outcome::data(
                json!({ "flags": flags, "count": s.len(), "points": s.points }),
                "exhaustive scan of generator images, filtered by the relations",
            ))
        }
        Invocation::Selftest => {
            let results = crate::acceptance::run_all();
            let passed = results.iter().all(|r| r.passed);
            let tag = if passed { VerdictTag::Verified } else { VerdictTag::Failed };
            Ok(Verdict::new(tag, json!({ "criteria": results }))
                .because("acceptance criteria with pinned time limits")
                .into())
        }
    }
}

/// Runs an invocation and wraps the result in a report.
pub fn run(inv: Invocation) -> Result<Report> {
    Budget::reset_usage();
    let start = Instant::now();
    let out = execute(&inv)?;
    let timing_ms = start.elapsed().as_secs_f64() * 1000.0;
    Ok(Report {
        schema: SCHEMA,
        invocation: inv,
        verdict: out.verdict.map(|t| t.as_str().to_string()),
        witness: out.witness,
        provenance: out.provenance,
        warnings: out.warnings,
        timing_ms,
        budget: BudgetReport::capture(),
    })
}

/// Outcome of replaying a stored report.
#[derive(Clone, Debug, Serialize)]
pub struct Replay {
    pub schema: u32,
    pub command: &'static str,
    pub verdict: VerdictTag,
    pub checks: Vec<ReplayCheck>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReplayCheck {
    pub name: String,
    pub passed: bool,
}

fn check(checks: &mut Vec<ReplayCheck>, name: &str, passed: bool) {
    checks.push(ReplayCheck { name: name.to_string(), passed });
}

fn polys(v: &Value, a: &CommPresentation) -> Result<Vec<Polynomial>> {
    v.as_array()
        .ok_or_else(|| Error::Input("expected a list of polynomials".into()))?
        .iter()
        .map(|s| s.as_str().ok_or_else(|| Error::Input("expected a polynomial string".into())).and_then(|s| a.parse_element(s)))
        .collect()
}

fn stored_points(v: &Value) -> Result<Vec<Point>> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Input(format!("stored points: {e}")))
}

/// Replays a report: recomputes it from the embedded input and checks the
/// stored witness against the kernel where the witness is independently checkable.
pub fn verify_report(src: &str) -> Result<Replay> {
    let stored: Report = serde_json::from_str(src).map_err(|e| Error::Parse(format!("report: {e}")))?;
    if stored.schema != SCHEMA {
        return Err(Error::Input(format!("unsupported report schema {}", stored.schema)));
    }
    let mut checks = Vec::new();
    match &stored.invocation {
        Invocation::Cover { input, elements } if stored.verdict.as_deref() == Some("Verified") => {
            let a = input.commutative()?;
            let ok = replay_partition(&a, &parse_list(elements, &a)?, &polys(&stored.witness["coefficients"], &a)?)?;
            check(&mut checks, "partition of unity replays", ok);
        }
        Invocation::Points { source, target, nonunital, commutative, compare: false } => {
            let set = PointSet {
                source: point_source(source)?,
                target: target.findim()?,
                flags: point_flags(*nonunital, *commutative),
                points: stored_points(&stored.witness["points"])?,
            };
            check(&mut checks, "stored points satisfy every relation", set.verify());
        }
        Invocation::Degeneracy { .. } if stored.witness["path"] == "S" => {
            let cert = &stored.witness["certificate"];
            let a = CommPresentation::parse(
                &str_list(&cert["vars"])?,
                &str_list(&cert["relations"])?,
                match &stored.invocation {
                    Invocation::Degeneracy { input, .. } => input.base_field,
                    _ => unreachable!(),
                },
            )?;
            let seq = polys(&cert["sequence"], &a)?;
            let ok = matches!(crate::dimension::is_regular_sequence(&a, &seq)?, crate::dimension::SequenceCheck::Certified(_));
            check(&mut checks, "stored sequence is regular on the stored ambient ring", ok);
        }
        _ => {}
    }
    let fresh = run(stored.invocation.clone())?;
    check(&mut checks, "recomputed verdict matches", fresh.verdict == stored.verdict);
    check(&mut checks, "recomputed witness matches", fresh.witness == stored.witness);
    let verdict = if checks.iter().all(|c| c.passed) { VerdictTag::Verified } else { VerdictTag::Failed };
    Ok(Replay { schema: SCHEMA, command: "verify-report", verdict, checks })
}

fn str_list(v: &Value) -> Result<Vec<&str>> {
    v.as_array()
        .ok_or_else(|| Error::Input("expected a list of strings".into()))?
        .iter()
        .map(|s| s.as_str().ok_or_else(|| Error::Input("expected a string".into())))
        .collect()
}
