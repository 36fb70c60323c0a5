use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use gentorsion::classify::{
    classify_free_product, classify_group, closure_suite as run_closure_suite, tor_normality_probe,
    tr_star_decomposition, EvidenceDetail, GtStatus, GtVerdict,
};
use gentorsion::morphism::parse_morphism;
use gentorsion::scl::{bounds_report, refute_generalized_torsion, BoundsVerdict, Refutation};
use gentorsion::search::{gt_group_survey, search_witness, search_witness_with, SearchOutcome};
use gentorsion::witness::{
    bs_power_witness, construct_prod_torsion_witness, dinf_witness, genuineness,
    lift_witness_gt_kernel, lift_witness_torsion_kernel, torsion_witness, GenuinenessTag,
    DEFAULT_ORDER_CAP,
};
use gentorsion::{Element, Group, GroupSpec, Morphism, SearchBudget, Witness, WitnessError};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::output::{Exit, Failure, Report};

fn read(path: &Path, what: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {what} file {}: {e}", path.display())))
}

fn load_group(path: &Path) -> Result<Group, Failure> {
    let text = read(path, "group")?;
    let spec: GroupSpec = serde_json::from_str(&text)
        .map_err(|e| Failure::usage(format!("group file {}: {e}", path.display())))?;
    Group::new(spec).map_err(|e| Failure::usage(format!("group file {}: {e}", path.display())))
}

fn load_witness(path: &Path) -> Result<Witness, Failure> {
    let text = read(path, "witness")?;
    Witness::from_json(&text)
        .map_err(|e| Failure::usage(format!("witness file {}: {e}", path.display())))
}

fn load_morphism(path: &Path) -> Result<Morphism, Failure> {
    let text = read(path, "morphism")?;
    parse_morphism(&text)
        .map_err(|e| Failure::usage(format!("morphism file {}: {e}", path.display())))
}

fn parse_element(group: &Group, text: &str) -> Result<Element, Failure> {
    group
        .parse(text)
        .map_err(|e| Failure::usage(format!("--element `{text}`: {e}")))
}

fn file_json(w: &Witness) -> Value {
    serde_json::to_value(w.to_file()).expect("witness files serialize")
}

fn witness_text(w: &Witness) -> String {
    let g = w.group();
    let conj: Vec<String> = w.conjugators().iter().map(|c| g.render(c)).collect();
    format!(
        "group: {g}\nbase: {}\nconjugators: {}\n",
        g.render(w.base()),
        conj.join(", ")
    )
}

fn genuineness_text(tag: GenuinenessTag) -> String {
    match tag {
        GenuinenessTag::Genuine => "base genuine".into(),
        GenuinenessTag::Torsion { order } => format!("base torsion of order {order}"),
        GenuinenessTag::UnknownGenuineness { probed } => {
            format!("base genuineness unknown (no order up to {probed})")
        }
    }
}

pub fn verify(path: &Path, order_cap: u64) -> Result<Report, Failure> {
    let w = load_witness(path)?;
    let verified = w.verify();
    let tag = genuineness(&w, order_cap);
    let json = json!({
        "verified": verified,
        "length": w.len(),
        "genuineness": tag,
        "witness": file_json(&w),
    });
    let (exit, text) = if verified {
        (
            Exit::Affirmative,
            format!("verified, {}", genuineness_text(tag)),
        )
    } else {
        (
            Exit::Negative,
            "verification failed: the product of conjugates is not the identity".into(),
        )
    };
    Ok(Report::new(
        exit,
        json,
        format!("{text}\n{}", witness_text(&w)),
    ))
}

fn budget_json(b: &SearchBudget) -> Value {
    json!({
        "max_conjugates": b.max_conjugates,
        "ball_radius": b.ball_radius,
        "node_cap": b.node_cap,
    })
}

fn outcome_json(group: &Group, x: &Element, outcome: &SearchOutcome) -> Value {
    let mut v = json!({
        "element": group.render(x),
        "status": outcome.status(),
    });
    match outcome {
        SearchOutcome::Found { witness, minimal } => {
            v["length"] = json!(witness.len());
            v["minimal"] = json!(minimal);
            v["witness"] = file_json(witness);
        }
        SearchOutcome::Exhausted {
            budget,
            node_cap_hit,
        } => {
            v["budget"] = budget_json(budget);
            v["node_cap_hit"] = json!(node_cap_hit);
        }
        SearchOutcome::PrunedByObstruction(reason) => v["reason"] = json!(reason),
    }
    v
}

fn outcome_exit(outcome: &SearchOutcome) -> Exit {
    match outcome {
        SearchOutcome::Found { .. } => Exit::Affirmative,
        SearchOutcome::PrunedByObstruction(_) => Exit::Negative,
        SearchOutcome::Exhausted { .. } => Exit::Inconclusive,
    }
}

fn search_error(e: gentorsion::search::SearchError) -> Failure {
    Failure::usage(e.to_string())
}

pub fn search(
    group: &Path,
    element: &str,
    budget: SearchBudget,
    use_obstruction: bool,
) -> Result<Report, Failure> {
    let g = load_group(group)?;
    let x = parse_element(&g, element)?;
    let outcome = search_witness_with(&g, &x, &budget, use_obstruction).map_err(search_error)?;
    let text = match &outcome {
        SearchOutcome::Found { witness, minimal } => format!(
            "found a witness of length {}{}\n{}",
            witness.len(),
            if *minimal {
                " (minimal over the conjugate set)"
            } else {
                ""
            },
            witness_text(witness)
        ),
        SearchOutcome::Exhausted { node_cap_hit, .. } => format!(
            "exhausted: no witness with at most {} conjugates over the radius-{} ball{}",
            budget.max_conjugates,
            budget.ball_radius,
            if *node_cap_hit { " (node cap hit)" } else { "" }
        ),
        SearchOutcome::PrunedByObstruction(reason) => format!("pruned: {reason}"),
    };
    let artifact = outcome.witness().map(Witness::to_json);
    Ok(
        Report::new(outcome_exit(&outcome), outcome_json(&g, &x, &outcome), text)
            .with_artifact(artifact),
    )
}

/// Reports a construction. Malformed requests are usage errors; a request
/// the mathematics rules out is a negative answer; a budget shortfall is
/// inconclusive.
fn constructed(name: &str, result: Result<Witness, WitnessError>) -> Result<Report, Failure> {
    match result {
        Ok(w) => {
            let tag = genuineness(&w, DEFAULT_ORDER_CAP);
            let json = json!({
                "construction": name,
                "status": "constructed",
                "length": w.len(),
                "verified": w.verify(),
                "genuineness": tag,
                "witness": file_json(&w),
            });
            let text = format!(
                "constructed a witness of length {}, {}\n{}",
                w.len(),
                genuineness_text(tag),
                witness_text(&w)
            );
            Ok(Report::new(Exit::Affirmative, json, text).with_artifact(Some(w.to_json())))
        }
        Err(e) => {
            let exit = match &e {
                WitnessError::NotTorsion(_)
                | WitnessError::BaseTrivial
                | WitnessError::TrivialImage
                | WitnessError::BaseMismatch
                | WitnessError::Unverified
                | WitnessError::SelfCheckFailed(_) => Exit::Negative,
                WitnessError::ResidualOrderNotFound(_) | WitnessError::ProviderFailed(_) => {
                    Exit::Inconclusive
                }
                _ => return Err(Failure::usage(e.to_string())),
            };
            let json = json!({
                "construction": name,
                "status": "failed",
                "reason": e.to_string(),
            });
            Ok(Report::new(exit, json, format!("{name} failed: {e}")))
        }
    }
}

pub fn prod_torsion(group: &Path, elements: &[String]) -> Result<Report, Failure> {
    let g = load_group(group)?;
    let [a, b] = elements else {
        return Err(Failure::usage(format!(
            "prod-torsion takes exactly two --element values, got {}",
            elements.len()
        )));
    };
    let (a, b) = (parse_element(&g, a)?, parse_element(&g, b)?);
    constructed("prod-torsion", construct_prod_torsion_witness(&g, &a, &b))
}

fn lift_inputs(
    morphism: &Path,
    element: &str,
    witness: &Path,
) -> Result<(Morphism, Element, Witness), Failure> {
    let p = load_morphism(morphism)?;
    let x = parse_element(p.domain(), element)?;
    let wq = load_witness(witness)?;
    Ok((p, x, wq))
}

pub fn lift_torsion_kernel(
    morphism: &Path,
    element: &str,
    witness: &Path,
    order_cap: u64,
) -> Result<Report, Failure> {
    let (p, x, wq) = lift_inputs(morphism, element, witness)?;
    constructed(
        "lift-torsion-kernel",
        lift_witness_torsion_kernel(&p, &x, &wq, order_cap),
    )
}

pub fn lift_gt_kernel(
    morphism: &Path,
    element: &str,
    witness: &Path,
    budget: SearchBudget,
) -> Result<Report, Failure> {
    let (p, x, wq) = lift_inputs(morphism, element, witness)?;
    budget.validate().map_err(search_error)?;
    let domain = p.domain().clone();
    let provider = |r: &Element| match search_witness(&domain, r, &budget) {
        Ok(SearchOutcome::Found { witness, .. }) => Some(witness),
        _ => None,
    };
    constructed(
        "lift-gt-kernel",
        lift_witness_gt_kernel(&p, &x, &wq, &provider),
    )
}

pub fn bs_power(group: &Path, power: &str) -> Result<Report, Failure> {
    let g = load_group(group)?;
    let n: BigInt = power
        .parse()
        .map_err(|_| Failure::usage(format!("--power `{power}` is not an integer")))?;
    constructed("bs-power", bs_power_witness(&g, &n))
}

pub fn dinf(group: &Path, element: &str) -> Result<Report, Failure> {
    let g = load_group(group)?;
    let x = parse_element(&g, element)?;
    constructed("dinf", dinf_witness(&g, &x))
}

pub fn torsion(group: &Path, element: &str) -> Result<Report, Failure> {
    let g = load_group(group)?;
    let x = parse_element(&g, element)?;
    constructed("torsion", torsion_witness(&g, &x))
}

pub fn bounds(group: &Path, element: &str, witness: Option<&Path>) -> Result<Report, Failure> {
    let g = load_group(group)?;
    let x = parse_element(&g, element)?;
    let w = witness.map(load_witness).transpose()?;
    if let Some(w) = &w {
        if w.group() != &g || w.base() != &x {
            return Err(Failure::usage(
                "--witness is not a witness for --element in --group",
            ));
        }
    }
    let report = match bounds_report(&g, &x, w.as_ref()) {
        Ok(r) => r,
        Err(e) => {
            let json =
                json!({ "element": g.render(&x), "status": "failed", "reason": e.to_string() });
            return Ok(Report::new(
                Exit::Negative,
                json,
                format!("bounds failed: {e}"),
            ));
        }
    };
    let mut text = format!("element: {}\n", report.element);
    for b in report.lower.iter().chain(&report.upper) {
        let _ = writeln!(
            text,
            "{:?} bound {} ({:?}{})",
            b.kind,
            b.value,
            b.provenance,
            if b.scaled_by == 1u32.into() {
                String::new()
            } else {
                format!(", scaled by {}", b.scaled_by)
            }
        );
    }
    let _ = writeln!(text, "verdict: {:?}", report.verdict);
    let exit = match report.verdict {
        BoundsVerdict::Refuted => Exit::Negative,
        BoundsVerdict::WitnessAttested => Exit::Affirmative,
        BoundsVerdict::Inconclusive => Exit::Inconclusive,
    };
    let json = serde_json::to_value(&report).expect("bounds serialize");
    Ok(Report::new(exit, json, text))
}

pub fn refute(group: &Path, element: &str) -> Result<Report, Failure> {
    let g = load_group(group)?;
    let x = parse_element(&g, element)?;
    let (exit, json, text) = match refute_generalized_torsion(&g, &x) {
        Refutation::Refuted(cert) => {
            let cert = serde_json::to_value(&cert).expect("certificates serialize");
            let text = format!(
                "refuted: {} is not a generalized torsion element of {g}\ncertificate: {}",
                g.render(&x),
                cert
            );
            (
                Exit::Negative,
                json!({ "element": g.render(&x), "verdict": "refuted", "certificate": cert }),
                text,
            )
        }
        Refutation::Inconclusive => (
            Exit::Inconclusive,
            json!({ "element": g.render(&x), "verdict": "inconclusive" }),
            format!(
                "inconclusive: no refutation rule applies to {}",
                g.render(&x)
            ),
        ),
    };
    Ok(Report::new(exit, json, text))
}

pub struct ClassifyArgs {
    pub group: Option<PathBuf>,
    pub factors: Option<(Vec<u64>, Vec<u64>)>,
    pub element_radius: usize,
    pub probe_radius: Option<usize>,
    pub order_cap: u64,
    pub budget: SearchBudget,
    pub markdown: bool,
}

fn status_exit(status: GtStatus) -> Exit {
    match status {
        GtStatus::GeneralizedTorsionGroup => Exit::Affirmative,
        GtStatus::NotGt => Exit::Negative,
        GtStatus::ConsistentUpToBudget => Exit::Inconclusive,
    }
}

fn status_text(status: GtStatus) -> &'static str {
    match status {
        GtStatus::GeneralizedTorsionGroup => "generalized torsion group",
        GtStatus::NotGt => "not a generalized torsion group",
        GtStatus::ConsistentUpToBudget => {
            "consistent with a generalized torsion group up to budget"
        }
    }
}

fn evidence_line(detail: &EvidenceDetail) -> String {
    match detail {
        EvidenceDetail::Witness { witness } => {
            let g = witness.group();
            format!(
                "witness of length {} for {}",
                witness.len(),
                g.render(witness.base())
            )
        }
        EvidenceDetail::ChenBound { element, bound, .. } => {
            format!(
                "scl({element}) >= {} by the alternating-word bound",
                bound.value
            )
        }
        EvidenceDetail::Abelianization {
            abelianization,
            element,
            ..
        } => {
            format!("{element} has infinite order in the abelianization {abelianization}")
        }
        EvidenceDetail::Factor { side, status, .. } => {
            format!(
                "{side:?} factor: {}, and the product maps onto it",
                status_text(*status)
            )
        }
        EvidenceDetail::Survey {
            sampled,
            found,
            exhausted,
            ..
        } => {
            format!("survey: {found} of {sampled} sampled elements found, {exhausted} exhausted")
        }
        EvidenceDetail::Citation { statement } => format!("cited: {statement}"),
    }
}

fn verdict_text(v: &GtVerdict, markdown: bool) -> String {
    let mut s = String::new();
    if markdown {
        let _ = writeln!(
            s,
            "# {}\n\n**Status:** {}\n",
            v.group,
            status_text(v.status)
        );
        let _ = writeln!(s, "| tier | desk-verified | evidence |\n|---|---|---|");
        for e in &v.evidence {
            let _ = writeln!(
                s,
                "| {:?} | {} | {} |",
                e.tier,
                e.desk_verified,
                evidence_line(&e.detail)
            );
        }
    } else {
        let _ = writeln!(s, "{}: {}", v.group, status_text(v.status));
        for e in &v.evidence {
            let flag = if e.desk_verified {
                ""
            } else {
                " [not desk-verified]"
            };
            let _ = writeln!(s, "  {:?}{flag}: {}", e.tier, evidence_line(&e.detail));
        }
    }
    s
}

pub fn classify(args: ClassifyArgs) -> Result<Report, Failure> {
    let (verdict, group) = match (&args.group, &args.factors) {
        (Some(path), None) => {
            let g = load_group(path)?;
            let v = classify_group(&g, args.element_radius, &args.budget)
                .map_err(|e| Failure::usage(e.to_string()))?;
            (v, Some(g))
        }
        (None, Some((a, b))) => {
            let v = classify_free_product(a, b).map_err(|e| Failure::usage(e.to_string()))?;
            (v, None)
        }
        _ => {
            return Err(Failure::usage(
                "give either --group or both --factors-a and --factors-b",
            ))
        }
    };
    let mut json = serde_json::to_value(&verdict).expect("verdicts serialize");
    let mut text = verdict_text(&verdict, args.markdown);
    if let Some(g) = &group {
        if let Ok(d) = tr_star_decomposition(g) {
            let _ = writeln!(
                text,
                "torsion part {}, free quotient Z^{}",
                Group::new(d.torsion_part.clone())
                    .map(|t| t.to_string())
                    .unwrap_or_default(),
                d.free_quotient_rank
            );
            json["decomposition"] = serde_json::to_value(&d).expect("decompositions serialize");
        }
        if let Some(radius) = args.probe_radius {
            let probe = tor_normality_probe(g, radius, args.order_cap);
            let _ = writeln!(
                text,
                "torsion probe (radius {radius}): {} torsion elements, {} non-torsion products{}",
                probe.torsion_count,
                probe.product_violations.len(),
                if probe.closed() { ", closed" } else { "" }
            );
            json["probe"] = serde_json::to_value(&probe).expect("probes serialize");
        }
    }
    Ok(Report::new(status_exit(verdict.status), json, text))
}

pub fn survey(group: &Path, radius: usize, budget: SearchBudget) -> Result<Report, Failure> {
    let g = load_group(group)?;
    let report = gt_group_survey(&g, radius, &budget).map_err(search_error)?;
    let records: Vec<Value> = report
        .records
        .iter()
        .map(|r| outcome_json(&g, &r.element, &r.outcome))
        .collect();
    let consistent = report.consistent_with_gt_group();
    let summary = json!({
        "group": g.to_string(),
        "element_radius": radius,
        "budget": budget_json(&budget),
        "sampled": report.records.len(),
        "found": report.count("found"),
        "exhausted": report.count("exhausted"),
        "pruned": report.count("pruned"),
        "max_witness_length": report.max_witness_length(),
        "consistent_with_generalized_torsion_group": consistent,
    });
    let mut text = String::new();
    for r in &report.records {
        let detail = match &r.outcome {
            SearchOutcome::Found { witness, .. } => format!("found, length {}", witness.len()),
            other => other.status().to_string(),
        };
        let _ = writeln!(text, "{:<24} {detail}", g.render(&r.element));
    }
    let _ = writeln!(
        text,
        "{}: {} found, {} exhausted, {} pruned; {}",
        g,
        report.count("found"),
        report.count("exhausted"),
        report.count("pruned"),
        if consistent {
            "consistent with a generalized torsion group"
        } else {
            "not consistent with a generalized torsion group within budget"
        }
    );
    let exit = if consistent {
        Exit::Affirmative
    } else if report.count("pruned") > 0 {
        Exit::Negative
    } else {
        Exit::Inconclusive
    };
    let mut lines = records.clone();
    lines.push(json!({ "summary": summary }));
    let mut out = Report::new(
        exit,
        json!({ "records": records, "summary": summary }),
        text,
    );
    out.json_lines = Some(lines);
    Ok(out)
}

pub fn closure_suite() -> Result<Report, Failure> {
    let report = run_closure_suite();
    let mut text = String::new();
    for c in &report.checks {
        let _ = writeln!(
            text,
            "({}) {}: {}",
            c.item,
            c.claim,
            if c.passed { "pass" } else { "FAIL" }
        );
        for d in &c.details {
            let _ = writeln!(text, "    {d}");
        }
    }
    let exit = if report.passed() {
        Exit::Affirmative
    } else {
        Exit::Negative
    };
    let json = serde_json::to_value(&report).expect("closure reports serialize");
    Ok(Report::new(exit, json, text))
}
