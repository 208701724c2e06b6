//! Command implementations; everything is generic over the scalar and
//! monomorphized per field at the dispatch point.

use std::path::Path;

use serde_json::{json, Value};

use trimat_core::field::{FieldSpec, Fp, Scalar};
use trimat_core::glue::TriangularData;
use trimat_core::homology::PerMembership;
use trimat_core::invariants::{
    cartan_block_check, cartan_matrix, congruent_over_z, coxeter_polynomial, global_dimension,
    repetitive_shift_isomorphism, repetitive_truncation, trivial_extension, CongruenceOptions,
    CongruenceResult, GldimProbe,
};
use trimat_core::mate::{
    certify_mate, check_hypotheses, mate_artin, mate_general, mate_swap, EndDecomposition,
    HypothesisReport, HypothesisVerdict, MateError,
};
use trimat_core::module::RightModule;
use trimat_core::{IntMatrix, Rat};

use crate::corpus;
use crate::doc::{algebra_doc, bimodule_doc, int_matrix_json, Document, Workspace};
use crate::{Command, Verdict};


pub fn run(cmd: &Command, doc_path: Option<&Path>, field_flag: Option<&str>) -> (Verdict, Value) {
    let user_doc = match doc_path {
        None => None,
        Some(p) => match std::fs::read_to_string(p) {
            Err(e) => {
                return (
                    Verdict::InputError,
                    json!({ "message": format!("cannot read {}: {e}", p.display()) }),
                )
            }
            Ok(text) => match serde_json::from_str::<Document>(&text) {
                Err(e) => {
                    return (
                        Verdict::InputError,
                        json!({ "message": format!("cannot parse {}: {e}", p.display()) }),
                    )
                }
                Ok(d) => Some(d),
            },
        },
    };
    let field_str = field_flag
        .map(String::from)
        .or_else(|| user_doc.as_ref().map(|d| d.field.clone()))
        .unwrap_or_else(|| "rational".to_string());
    let spec = match FieldSpec::parse(&field_str) {
        Ok(s) => s,
        Err(e) => return (Verdict::InputError, json!({ "message": e.to_string() })),
    };
    match spec {
        FieldSpec::Rational => run_typed::<Rat>(cmd, user_doc.as_ref(), &spec),
        FieldSpec::Prime(_) => run_typed::<Fp>(cmd, user_doc.as_ref(), &spec),
    }
}

struct Ctx<F: Scalar> {
    user: Option<Workspace<F>>,
    fixtures: Result<Workspace<F>, String>,
}

impl<F: Scalar> Ctx<F> {
    fn lookup<'a, T>(
        &'a self,
        name: &str,
        pick: impl Fn(&'a Workspace<F>) -> Option<&'a T>,
        what: &str,
    ) -> Result<&'a T, String> {
        if let Some(rest) = name.strip_prefix("fixtures:") {
            let ws = self
                .fixtures
                .as_ref()
                .map_err(|e| format!("fixture corpus unavailable over this field: {e}"))?;
            return pick(ws).ok_or_else(|| format!("unknown fixture {what} `{rest}`"));
        }
        let ws = self
            .user
            .as_ref()
            .ok_or_else(|| format!("no --doc given, cannot resolve {what} `{name}`"))?;
        pick(ws).ok_or_else(|| format!("unknown {what} `{name}`"))
    }

    fn algebra(&self, name: &str) -> Result<&trimat_core::algebra::Algebra<F>, String> {
        let key = name.strip_prefix("fixtures:").unwrap_or(name).to_string();
        self.lookup(name, move |ws| ws.algebras.get(&key), "algebra")
    }

    fn module(&self, name: &str) -> Result<&RightModule<F>, String> {
        let key = name.strip_prefix("fixtures:").unwrap_or(name).to_string();
        self.lookup(name, move |ws| ws.modules.get(&key), "module")
    }

    fn bimodule(&self, name: &str) -> Result<&trimat_core::bimodule::Bimodule<F>, String> {
        let key = name.strip_prefix("fixtures:").unwrap_or(name).to_string();
        self.lookup(name, move |ws| ws.bimodules.get(&key), "bimodule")
    }

    fn triplet(&self, name: &str) -> Result<&TriangularData<F>, String> {
        let key = name.strip_prefix("fixtures:").unwrap_or(name).to_string();
        self.lookup(name, move |ws| ws.triplets.get(&key), "triplet")
    }

    fn int_matrix(&self, arg: &str) -> Result<IntMatrix, String> {
        let trimmed = arg.trim();
        if trimmed.starts_with('[') {
            let rows: Vec<Vec<i64>> =
                serde_json::from_str(trimmed).map_err(|e| format!("bad matrix literal: {e}"))?;
            let cols = rows.first().map_or(0, |r| r.len());
            if rows.iter().any(|r| r.len() != cols) {
                return Err("ragged matrix literal".into());
            }
            return Ok(IntMatrix::from_rows(
                rows.into_iter()
                    .map(|r| r.into_iter().map(Into::into).collect())
                    .collect(),
            ));
        }
        let key = arg.strip_prefix("fixtures:").unwrap_or(arg).to_string();
        self.lookup(arg, move |ws| ws.matrices.get(&key), "matrix")
            .cloned()
    }
}

fn run_typed<F: Scalar>(cmd: &Command, user: Option<&Document>, spec: &FieldSpec) -> (Verdict, Value) {
    let fixtures = Workspace::<F>::load(&corpus::builtin(), spec).map_err(|e| e.to_string());
    let user_ws = match user {
        None => None,
        Some(d) => match Workspace::<F>::load(d, spec) {
            Ok(ws) => Some(ws),
            Err(e) => {
                return (
                    Verdict::InputError,
                    json!({ "message": e.to_string(), "location": e.location }),
                )
            }
        },
    };
    let ctx = Ctx {
        user: user_ws,
        fixtures,
    };
    match execute(cmd, &ctx) {
        Ok(out) => out,
        Err(msg) => (Verdict::InputError, json!({ "message": msg })),
    }
}

fn execute<F: Scalar>(cmd: &Command, ctx: &Ctx<F>) -> Result<(Verdict, Value), String> {
    match cmd {
        Command::Fixtures => unreachable!("handled in main"),
        Command::Validate => {
            let fx = ctx
                .fixtures
                .as_ref()
                .map_err(|e| format!("fixture corpus failed to validate: {e}"))?;
            let mut counts = json!({
                "fixtures": {
                    "algebras": fx.algebras.len(),
                    "bimodules": fx.bimodules.len(),
                    "modules": fx.modules.len(),
                    "triplets": fx.triplets.len(),
                    "matrices": fx.matrices.len(),
                }
            });
            if let Some(ws) = &ctx.user {
                counts["document"] = json!({
                    "algebras": ws.algebras.len(),
                    "bimodules": ws.bimodules.len(),
                    "modules": ws.modules.len(),
                    "triplets": ws.triplets.len(),
                    "matrices": ws.matrices.len(),
                });
            }
            Ok((Verdict::Pass, counts))
        }
        Command::Cartan { reference } => cartan_command(ctx, reference),
        Command::Mate {
            triplet,
            mode,
            tilting,
            bound,
        } => mate_command(ctx, triplet, mode, tilting.as_deref(), *bound),
        Command::Check {
            triplet,
            tilting,
            bound,
        } => {
            let d = ctx.triplet(triplet)?;
            let t = ctx.module(tilting)?;
            let report = check_hypotheses(d, t, *bound).map_err(|e| e.to_string())?;
            let verdict = match report.verdict {
                HypothesisVerdict::Pass => Verdict::Pass,
                HypothesisVerdict::Fail(_) => Verdict::Refuted,
                HypothesisVerdict::Unknown(_) => Verdict::Unknown,
            };
            Ok((verdict, hypothesis_json(&report)))
        }
        Command::TiltVerify {
            triplet,
            tilting,
            window,
            bound,
        } => tilt_verify_command(ctx, triplet, tilting.as_deref(), *window, *bound),
        Command::Congruent {
            first,
            second,
            search_bound,
        } => congruent_command(ctx, first, second.as_deref(), *search_bound),
        Command::Gldim { algebra, bound } => {
            let a = ctx.algebra(algebra)?;
            match global_dimension(a, *bound).map_err(|e| e.to_string())? {
                GldimProbe::Finite(n) => Ok((
                    Verdict::Pass,
                    json!({ "gldim": { "finite": n }, "bound": bound }),
                )),
                GldimProbe::AtLeast(b) => Ok((
                    Verdict::Unknown,
                    json!({ "gldim": { "at_least": b }, "bound": bound }),
                )),
            }
        }
        Command::Repetitive { triplet, periods } => {
            if *periods == 0 {
                return Err("periods must be at least 1".into());
            }
            let d = ctx.triplet(triplet)?;
            let truncation = repetitive_truncation(d, *periods).map_err(|e| e.to_string())?;
            let shift = repetitive_shift_isomorphism(d, *periods).map_err(|e| e.to_string())?;
            let verdict = if shift.pass {
                Verdict::Pass
            } else {
                Verdict::Refuted
            };
            Ok((
                verdict,
                json!({
                    "periods": periods,
                    "truncation_dim": truncation.dim(),
                    "shift_isomorphism": {
                        "pass": shift.pass,
                        "pairs_checked": shift.pairs_checked,
                        "window_dim": shift.window_dim,
                    },
                }),
            ))
        }
        Command::Trivext {
            algebra,
            bimodule,
            bound,
        } => {
            let a = ctx.algebra(algebra)?;
            let m = ctx.bimodule(bimodule)?;
            let ext = trivial_extension(a, m).map_err(|e| e.to_string())?;
            let probe = global_dimension(&ext, *bound).map_err(|e| e.to_string())?;
            Ok((
                Verdict::Pass,
                json!({
                    "dim": ext.dim(),
                    "idempotents": ext.idempotents().len(),
                    "gldim": gldim_json(&probe),
                    "algebra": serde_json::to_value(algebra_doc(&ext)).expect("serializes"),
                }),
            ))
        }
    }
}

fn gldim_json(p: &GldimProbe) -> Value {
    match p {
        GldimProbe::Finite(n) => json!({ "finite": n }),
        GldimProbe::AtLeast(b) => json!({ "at_least": b }),
    }
}

fn per_json(p: &PerMembership) -> Value {
    match p {
        PerMembership::Finite(n) => json!({ "finite": n }),
        PerMembership::Unknown(b) => json!({ "unknown_at": b }),
    }
}

fn hypothesis_json(r: &HypothesisReport) -> Value {
    let tilting = match &r.tilting {
        Ok(c) => json!({
            "pd": c.pd,
            "rigidity_ok": c.rigidity_ok,
            "ext_self": c.rigidity.dims,
            "coresolution_mults": c.coresolution_mults,
        }),
        Err(e) => json!({ "error": e.to_string() }),
    };
    let verdict = match &r.verdict {
        HypothesisVerdict::Pass => json!("pass"),
        HypothesisVerdict::Fail(rs) => json!({ "fail": rs }),
        HypothesisVerdict::Unknown(rs) => json!({ "unknown": rs }),
    };
    json!({
        "per_m": per_json(&r.per_m),
        "per_t": per_json(&r.per_t),
        "tilting": tilting,
        "ext_m_t": { "dims": r.ext_vanishing.dims, "exact_beyond": r.ext_vanishing.exact_beyond },
        "verdict": verdict,
    })
}

fn cartan_command<F: Scalar>(ctx: &Ctx<F>, reference: &str) -> Result<(Verdict, Value), String> {
    if let Ok(d) = ctx.triplet(reference) {
        let report = cartan_block_check(d).map_err(|e| e.to_string())?;
        let mate = mate_swap(d).map_err(|e| e.to_string())?;
        let mate_lambda = mate.build().map_err(|e| e.to_string())?;
        let c_mate = cartan_matrix(&mate_lambda.algebra).map_err(|e| e.to_string())?;
        let verdict = if report.pass {
            Verdict::Pass
        } else {
            Verdict::Refuted
        };
        return Ok((
            verdict,
            json!({
                "cartan": int_matrix_json(&report.c_lambda),
                "blocks": {
                    "c_r": int_matrix_json(&report.c_r),
                    "c_s": int_matrix_json(&report.c_s),
                    "c_m": int_matrix_json(&report.c_m),
                    "pass": report.pass,
                },
                "cartan_mate": int_matrix_json(&c_mate),
            }),
        ));
    }
    let a = ctx.algebra(reference)?;
    let c = cartan_matrix(a).map_err(|e| e.to_string())?;
    Ok((Verdict::Pass, json!({ "cartan": int_matrix_json(&c) })))
}

fn mate_verdict(e: &MateError) -> Verdict {
    match e {
        MateError::NotPerfect { .. } | MateError::GldimUnknown(_) => Verdict::Unknown,
        MateError::HypothesisFailure(msg) if msg.starts_with("not certified") => Verdict::Unknown,
        MateError::HypothesisFailure(_) | MateError::IdentificationFailure(_) => Verdict::Refuted,
        _ => Verdict::InputError,
    }
}

fn mate_doc_fragment<F: Scalar>(mate: &TriangularData<F>) -> Value {
    json!({
        "algebras": {
            "mate-r": serde_json::to_value(algebra_doc(mate.r())).expect("serializes"),
            "mate-s": serde_json::to_value(algebra_doc(mate.s())).expect("serializes"),
        },
        "bimodules": {
            "mate-m": serde_json::to_value(bimodule_doc("mate-r", "mate-s", mate.m()))
                .expect("serializes"),
        },
        "dims": { "r": mate.r().dim(), "m": mate.m().dim(), "s": mate.s().dim() },
    })
}

fn mate_command<F: Scalar>(
    ctx: &Ctx<F>,
    triplet: &str,
    mode: &str,
    tilting: Option<&str>,
    bound: usize,
) -> Result<(Verdict, Value), String> {
    let d = ctx.triplet(triplet)?;
    match mode {
        "artin" => match mate_artin(d, bound) {
            Ok(mate) => Ok((Verdict::Pass, mate_doc_fragment(&mate))),
            Err(e) => Ok((mate_verdict(&e), json!({ "message": e.to_string() }))),
        },
        "projective" | "general" => {
            let t_owned;
            let t: &RightModule<F> = match (mode, tilting) {
                ("general", Some(name)) => ctx.module(name)?,
                ("general", None) => {
                    return Err("mode `general` needs --tilting".into());
                }
                _ => {
                    t_owned = RightModule::regular(d.s().clone());
                    &t_owned
                }
            };
            match mate_general(d, t, EndDecomposition::BestEffort, bound) {
                Ok(mate) => Ok((
                    Verdict::Pass,
                    json!({
                        "mate": mate_doc_fragment(&mate.data),
                        "end_is_basic": mate.end_is_basic,
                    }),
                )),
                Err(e) => Ok((mate_verdict(&e), json!({ "message": e.to_string() }))),
            }
        }
        other => Err(format!(
            "unknown mode `{other}` (expected general, artin or projective)"
        )),
    }
}

fn tilt_verify_command<F: Scalar>(
    ctx: &Ctx<F>,
    triplet: &str,
    tilting: Option<&str>,
    window: usize,
    bound: usize,
) -> Result<(Verdict, Value), String> {
    let d = ctx.triplet(triplet)?;
    let t_owned;
    let t: &RightModule<F> = match tilting {
        Some(name) => ctx.module(name)?,
        None => {
            t_owned = RightModule::regular(d.s().clone());
            &t_owned
        }
    };
    match certify_mate(d, t, EndDecomposition::BestEffort, bound, window) {
        Err(e) => Ok((mate_verdict(&e), json!({ "message": e.to_string() }))),
        Ok(report) => {
            let verdict = if report.pass() {
                Verdict::Pass
            } else {
                Verdict::Refuted
            };
            let window_dims: Vec<Value> = report
                .verification
                .window
                .iter()
                .map(|(n, d)| json!([n, d]))
                .collect();
            Ok((
                verdict,
                json!({
                    "hypotheses": hypothesis_json(&report.hypotheses),
                    "hom_window": window_dims,
                    "rigid": report.verification.rigid,
                    "blocks": {
                        "end_summand_r": report.verification.diag_r,
                        "end_summand_t": report.verification.diag_t,
                        "corner_bimodule": report.verification.corner,
                        "opposite_corner": report.verification.opposite,
                    },
                    "cohomology_placement_ok": report.quasi_iso_type_ok,
                    "identification": {
                        "hom_zero_dim": report.identification.hom_zero_dim,
                        "mate_dim": report.identification.mate_dim,
                        "bijective": report.identification.bijective,
                        "multiplicative": report.identification.multiplicative,
                    },
                    "mate": mate_doc_fragment(&report.mate.data),
                    "end_is_basic": report.mate.end_is_basic,
                }),
            ))
        }
    }
}

fn congruent_command<F: Scalar>(
    ctx: &Ctx<F>,
    first: &str,
    second: Option<&str>,
    search_bound: i64,
) -> Result<(Verdict, Value), String> {
    let (c1, c2, source) = match second {
        Some(second) => {
            let c1 = ctx.int_matrix(first)?;
            let c2 = ctx.int_matrix(second)?;
            (c1, c2, json!("explicit matrices"))
        }
        None => {
            let d = ctx.triplet(first)?;
            let lambda = d.build().map_err(|e| e.to_string())?;
            let c1 = cartan_matrix(&lambda.algebra).map_err(|e| e.to_string())?;
            let mate = mate_swap(d).map_err(|e| e.to_string())?;
            let mate_lambda = mate.build().map_err(|e| e.to_string())?;
            let c2 = cartan_matrix(&mate_lambda.algebra).map_err(|e| e.to_string())?;
            (c1, c2, json!("Cartan matrices of the triplet and its mate"))
        }
    };
    let opts = CongruenceOptions { search_bound };
    let result = congruent_over_z(&c1, &c2, &opts).map_err(|e| e.to_string())?;
    let coxeter = |c: &IntMatrix| -> Value {
        match coxeter_polynomial(c) {
            Ok(p) => json!(p.to_string()),
            Err(e) => json!({ "error": e.to_string() }),
        }
    };
    let base = json!({
        "source": source,
        "c1": int_matrix_json(&c1),
        "c2": int_matrix_json(&c2),
        "coxeter_c1": coxeter(&c1),
        "coxeter_c2": coxeter(&c2),
    });
    let (verdict, extra) = match result {
        CongruenceResult::Congruent(p) => (
            Verdict::Pass,
            json!({ "congruent": true, "witness": int_matrix_json(&p) }),
        ),
        CongruenceResult::NotCongruent(cert) => (
            Verdict::Refuted,
            json!({
                "congruent": false,
                "certificate": {
                    "method": "complete-enumeration",
                    "candidate_counts": cert.candidate_counts,
                    "assemblies_tested": cert.assemblies_tested,
                },
            }),
        ),
        CongruenceResult::Unknown {
            search_bound,
            notes,
        } => (
            Verdict::Unknown,
            json!({ "congruent": "unknown", "search_bound": search_bound, "notes": notes }),
        ),
    };
    let mut merged = base;
    for (k, v) in extra.as_object().expect("object").iter() {
        merged[k] = v.clone();
    }
    Ok((verdict, merged))
}
