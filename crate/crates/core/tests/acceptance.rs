//! Acceptance run: one line per criterion.

mod common;

use std::time::{Duration, Instant};

use common::*;
use hopf_ore::freealg::{ratio, scalar, Scalar};
use hopf_ore::hoe::{
    build_hoe, check_recovery, decompose_delta_x, identity_suite, normalize, standard_delta_x,
    CurrentVar,
};
use hopf_ore::hopf::{GenMap, Side};
use hopf_ore::ore::{rewrite_in, VarChange};
use hopf_ore::rewrite::{Algebra, Generator, Presentation, DEFAULT_CONFLUENCE_DEGREE};
use hopf_ore::tensor::t_mul;
use hopf_ore::zoo::{domain_evidence, tensor_square};
use hopf_ore::{Error, NCPoly, TensorElem, Word};
use num_traits::{One, Zero};

const CRITERION_1_LIMIT: Duration = Duration::from_secs(5);
const CRITERION_6_LIMIT: Duration = Duration::from_secs(30);
/// Word degree for the winding oracle and for domain evidence.
const ORACLE_DEGREE: usize = 4;
const EVIDENCE_DEGREE: usize = 4;
const MIN_CONFLUENCE_DEGREE: usize = 6;
const TWIST_EXPONENTS: std::ops::RangeInclusive<i64> = -3..=3;
const SHIFTS: std::ops::RangeInclusive<i64> = -2..=2;
const TWIST_CASES: usize = 70;

struct Outcome {
    pass: bool,
    detail: String,
    /// A failing line whose cause is recorded in the decisions ledger and
    /// whose underlying facts were re-derived by this run.
    documented: bool,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
        documented: false,
    }
}

fn heisenberg_end_to_end() -> Outcome {
    let start = Instant::now();
    let (code, out, _) = run_cli(&["check-hoe", "zoo:heisenberg", "--format", "json"]);
    let elapsed = start.elapsed();
    let v: serde_json::Value = match serde_json::from_str(&out) {
        Ok(v) => v,
        Err(e) => return outcome(false, format!("report is not JSON: {e}")),
    };
    let checks = v["checks"].as_array().cloned().unwrap_or_default();
    let truth: Vec<_> = checks
        .iter()
        .filter(|c| {
            c["name"]
                .as_str()
                .is_some_and(|n| n.starts_with("ground truth: "))
        })
        .collect();
    let truth_ok = !truth.is_empty() && truth.iter().all(|c| c["status"] == "pass");
    let resolution = v["sign_resolution"]
        .as_str()
        .unwrap_or("missing")
        .to_string();
    let exactly_one = resolution == "displayed" || resolution == "commutator";
    let pass = code == 0
        && v["verdict"] == "pass"
        && truth_ok
        && exactly_one
        && elapsed < CRITERION_1_LIMIT;
    outcome(
        pass,
        format!(
            "verdict {}, {} ground-truth checks pass, sign resolution {resolution}, {:.2} s (limit {} s)",
            v["verdict"],
            truth.len(),
            elapsed.as_secs_f64(),
            CRITERION_1_LIMIT.as_secs()
        ),
    )
}

fn power(g: usize, inv: usize, k: i64) -> NCPoly {
    let letter = if k >= 0 { g } else { inv } as u16;
    NCPoly::word(Word(vec![letter; k.unsigned_abs() as usize]))
}

fn normalization_recovery() -> Outcome {
    let mut cases = 0;
    let mut passed = 0;
    let mut first_failure = None;
    for name in ["laurent-q2", "heisenberg"] {
        let (ext, d) = standard(name);
        let beta_inv = ext.base.grouplike_inverse(&d.beta).unwrap();
        let dx0 = standard_delta_x(&ext, &beta_inv, &d.w);
        for k in TWIST_EXPONENTS {
            // a grouplike unit where one exists, a scalar unit otherwise
            let (u, u_inv) = if name == "laurent-q2" {
                (power(0, 1, k), power(0, 1, -k))
            } else {
                let two = scalar(2);
                let q = num_traits::pow::Pow::pow(&two, k.unsigned_abs() as usize);
                let (a, b) = if k >= 0 {
                    (q.clone(), q.recip())
                } else {
                    (q.recip(), q)
                };
                (NCPoly::constant(a), NCPoly::constant(b))
            };
            for c in SHIFTS {
                cases += 1;
                let result = (|| -> Result<(), String> {
                    let cur = CurrentVar::new(ext.clone(), dx0.clone(), Scalar::zero());
                    let (cur, _) = cur
                        .change(&VarChange::Shift(scalar(c)))
                        .map_err(|e| e.to_string())?;
                    let (cur, _) = cur
                        .change(&VarChange::LeftUnit {
                            u: u.clone(),
                            u_inv: u_inv.clone(),
                        })
                        .map_err(|e| e.to_string())?;
                    let n = normalize(&cur.ext, &cur.delta_x, &cur.counit_x);
                    if !n.passed() {
                        let f = n.report.failures().next().map(|c| format!("{c:?}"));
                        return Err(f.unwrap_or_else(|| "no final state".into()));
                    }
                    let fast = n.log.iter().any(|l| l == "already standard");
                    let mut required = vec!["βΣw₁S(w₂) = ΣS(w₁)w₂", "antipode identities on x"];
                    if !fast {
                        required.extend([
                            "coassociativity at x⊗x⊗x",
                            "α⁻¹ = ΣS(s₁)s₂ is a two-sided inverse",
                            "1⊗α⁻¹ = Δ(α⁻¹)s",
                            "β is grouplike",
                            "standard shape Δ(x) = β⁻¹⊗x + x⊗1 + w",
                        ]);
                    }
                    for r in required {
                        if !n.report.find(r).is_some_and(|c| c.passed) {
                            return Err(format!("check `{r}` missing or failed"));
                        }
                    }
                    let st = n.state.unwrap();
                    let x_out = rewrite_in(&ext, &cur.ext, &cur.x_in_input, &st.x_in_input);
                    let rec = check_recovery(&ext, &d.beta, &d.w, &x_out, &st.beta, &st.form.w);
                    let failure = rec.failures().next().map(|c| format!("recovery: {c:?}"));
                    failure.map_or(Ok(()), Err)
                })();
                match result {
                    Ok(()) => passed += 1,
                    Err(e) => {
                        first_failure.get_or_insert(format!("{name}, k = {k}, c = {c}: {e}"));
                    }
                }
            }
        }
    }
    let mut detail = format!("{passed}/{cases} twisted inputs normalized and recovered (required {TWIST_CASES}/{TWIST_CASES})");
    if let Some(f) = first_failure {
        detail.push_str(&format!("; first failure: {f}"));
    }
    outcome(cases == TWIST_CASES && passed == cases, detail)
}

fn identity_universality() -> Outcome {
    let mut n_checks = 0;
    for name in HOE_ENTRIES {
        let (ext, dx) = extension(name);
        let f = match decompose_delta_x(&ext, &dx) {
            Ok(f) => f,
            Err(e) => return outcome(false, format!("{name}: {e}")),
        };
        let rep = identity_suite(&ext.base, &f);
        if let Some(c) = rep.failures().next() {
            return outcome(false, format!("{name}: {} fails: {:?}", c.name, c.witness));
        }
        n_checks += rep.len();
    }
    outcome(
        true,
        format!(
            "{n_checks} exact identities over {} entries",
            HOE_ENTRIES.len()
        ),
    )
}

/// Characters to try: the counit, declared and induced characters, and a
/// small grid of values filtered by well-definedness.
fn characters(name: &str) -> Vec<GenMap<Scalar>> {
    let h = base(name);
    let mut out = vec![h.counit.clone()];
    let src = source(name);
    if let Some(o) = &src.ore {
        if o.chi.len() == h.alg.ngens() {
            out.push(GenMap::hom(o.chi.values().cloned().collect()));
        }
    }
    let gens = h.alg.generators().to_vec();
    let values = [scalar(2), ratio(1, 3), scalar(-1)];
    for v in &values {
        for zero_plain in [false, true] {
            let images = gens
                .iter()
                .map(|g| match (g.inverse, g.is_inverse) {
                    (Some(_), false) => v.clone(),
                    (Some(_), true) => v.recip(),
                    (None, _) if zero_plain => Scalar::zero(),
                    (None, _) => v.clone(),
                })
                .collect();
            out.push(GenMap::hom(images));
        }
    }
    out.retain(|chi| h.check_character(chi).is_ok());
    out
}

fn oracle_equivalence() -> Outcome {
    let mut compared = 0usize;
    for name in HOPF_ENTRIES {
        let h = base(name);
        let r = &h.alg;
        let chis = characters(name);
        let words = r.normal_words(ORACLE_DEGREE);
        for chi in &chis {
            for side in [Side::Left, Side::Right] {
                let tau = h.winding(chi, side).unwrap();
                for w in &words {
                    let m = NCPoly::word(w.clone());
                    let via_extend = h.apply(&tau, &m);
                    // brute force: multiply out Δ letter by letter, then apply χ
                    let mut d = TensorElem::unit(2, r.tag(), Scalar::one());
                    for l in w.letters() {
                        d = t_mul(r, &d, &h.delta.images[l]).unwrap();
                    }
                    let chi_word = |v: &Word| {
                        v.letters()
                            .fold(Scalar::one(), |acc, l| acc * &chi.images[l])
                    };
                    let mut brute = NCPoly::zero();
                    for (slots, c) in d.terms() {
                        let (keep, eval) = match side {
                            Side::Left => (&slots[1], &slots[0]),
                            Side::Right => (&slots[0], &slots[1]),
                        };
                        brute.add_term(keep.clone(), c * chi_word(eval));
                    }
                    if via_extend != brute {
                        return outcome(
                            false,
                            format!(
                                "{name}: winding of {} differs: {} vs {}",
                                r.fmt(&m),
                                r.fmt(&via_extend),
                                r.fmt(&brute)
                            ),
                        );
                    }
                    compared += 1;
                }
            }
        }
    }
    outcome(
        true,
        format!("{compared} exact comparisons on monomials of degree <= {ORACLE_DEGREE} across {} algebras", HOPF_ENTRIES.len()),
    )
}

fn hopf_suite() -> Outcome {
    let mut notes = Vec::new();
    let mut zoo_ok = true;
    for name in HOPF_ENTRIES {
        let rep = base(name).hopf_axiom_suite();
        let failure = rep
            .failures()
            .next()
            .map(|c| format!("{name}: {} fails", c.name));
        if let Some(f) = failure {
            zoo_ok = false;
            notes.push(f);
        }
    }
    let mut t_ok = true;
    for name in HOE_ENTRIES {
        let (ext, d) = standard(name);
        let (truth, hopf) = build_hoe(&ext, &d);
        let suite_ok = hopf.map(|t| t.hopf_axiom_suite().passed()).unwrap_or(false);
        if !truth.passed() || !suite_ok {
            t_ok = false;
            notes.push(format!("T for {name} fails"));
        }
    }

    // sabotage: S(y) = +y on the Heisenberg base
    let mut src = source("heisenberg");
    src.antipode.insert(0, NCPoly::gen(0));
    let bad = src.hopf(presentation("heisenberg")).unwrap();
    let rep = bad.hopf_axiom_suite();
    let antipode_caught = rep
        .failures()
        .any(|c| c.witness.as_deref().is_some_and(|w| !w.is_empty()));
    notes.push(format!(
        "S(y)=+y {}",
        if antipode_caught {
            "rejected with witness"
        } else {
            "NOT rejected"
        }
    ));

    let (ext, d) = standard("heisenberg");
    let r = ext.r().clone();
    let with_w = |slots: [NCPoly; 2]| {
        let mut d = d.clone();
        d.w = TensorElem::pure(&r, &slots);
        d
    };
    // w = y⊗y is the coboundary of y²/2, so this structure is valid
    let (yy_truth, yy_hopf) = build_hoe(&ext, &with_w([NCPoly::gen(0), NCPoly::gen(0)]));
    let yy_rejected = !yy_truth.passed();
    let yy_valid = yy_truth.passed() && yy_hopf.is_some_and(|t| t.hopf_axiom_suite().passed());
    notes.push(if yy_rejected {
        "w=y⊗y rejected".to_string()
    } else {
        "w=y⊗y NOT rejected: y⊗y = ½(Δ(y²) − y²⊗1 − 1⊗y²) is a coboundary and x − y²/2 is primitive, so it defines a valid Hopf algebra".to_string()
    });
    // a genuine non-cocycle
    let (y1_truth, _) = build_hoe(&ext, &with_w([NCPoly::gen(0), NCPoly::one()]));
    let y1_witness = y1_truth
        .failures()
        .find_map(|c| c.witness.clone())
        .filter(|w| !w.is_empty());
    notes.push(format!(
        "w=y⊗1 {}",
        if y1_witness.is_some() {
            "rejected with witness"
        } else {
            "NOT rejected"
        }
    ));

    let pass = zoo_ok && t_ok && antipode_caught && yy_rejected && y1_witness.is_some();
    let documented = !pass && zoo_ok && t_ok && antipode_caught && yy_valid && y1_witness.is_some();
    Outcome {
        pass,
        detail: format!(
            "suite on {} zoo algebras and {} extensions: {}; {}",
            HOPF_ENTRIES.len(),
            HOE_ENTRIES.len(),
            if zoo_ok && t_ok { "pass" } else { "fail" },
            notes.join("; ")
        ),
        documented,
    }
}

fn domain_evidence_criterion() -> Outcome {
    let start = Instant::now();
    let smash = base("smash-z-scale");
    let square = tensor_square(&smash).unwrap();
    let pass_smash = domain_evidence(&smash.alg, EVIDENCE_DEGREE).passed();
    let pass_square = domain_evidence(&square.alg, EVIDENCE_DEGREE).passed();
    let z2 = domain_evidence(&presentation("z2-group"), EVIDENCE_DEGREE);
    let dual = domain_evidence(&presentation("dual-numbers"), EVIDENCE_DEGREE);
    let has =
        |r: &hopf_ore::Report, w: &str| r.checks.iter().any(|c| c.witness.as_deref() == Some(w));
    let z2_ok = !z2.passed() && has(&z2, "(1 - g)*(1 + g) = 0");
    let dual_ok = !dual.passed() && has(&dual, "y*y = 0");
    let elapsed = start.elapsed();
    outcome(
        pass_smash && pass_square && z2_ok && dual_ok && elapsed < CRITERION_6_LIMIT,
        format!(
            "smash-z-scale {}, tensor square {}, z2-group {}, dual-numbers {}, d = {EVIDENCE_DEGREE}, {:.2} s (limit {} s)",
            if pass_smash { "pass" } else { "fail" },
            if pass_square { "pass" } else { "fail" },
            if z2_ok { "fails with (1 - g)*(1 + g) = 0" } else { "unexpected" },
            if dual_ok { "fails with y*y = 0" } else { "unexpected" },
            elapsed.as_secs_f64(),
            CRITERION_6_LIMIT.as_secs()
        ),
    )
}

fn confluence_certification() -> Outcome {
    for name in hopf_ore::zoo::names() {
        let p = source(name).presentation().unwrap();
        let rep = p.check_confluence(DEFAULT_CONFLUENCE_DEGREE);
        if !rep.is_confluent() || rep.degree < MIN_CONFLUENCE_DEGREE {
            return outcome(false, format!("{name} not certified"));
        }
    }
    let gens = ["a", "b", "c"].map(Generator::plain).to_vec();
    let w = |v: &[u16]| NCPoly::word(Word(v.to_vec()));
    let bad = Presentation::new(
        "bad",
        gens,
        &[(w(&[0, 1]), NCPoly::one()), (w(&[1, 2]), NCPoly::one())],
    )
    .unwrap()
    .certify(DEFAULT_CONFLUENCE_DEGREE);
    let witness = match bad {
        Err(Error::NotConfluent { word, .. }) => word,
        other => return outcome(false, format!("{{ab→1, bc→1}} not rejected: {other:?}")),
    };
    outcome(
        witness == "a*b*c",
        format!(
            "{} zoo presentations certified to degree {DEFAULT_CONFLUENCE_DEGREE}; {{ab→1, bc→1}} rejected at {witness}",
            hopf_ore::zoo::names().len()
        ),
    )
}

fn negative_character() -> Outcome {
    let h = base("smash-z-scale");
    let names = h.alg.names();
    let value = |n: &str| match n {
        "g" => scalar(2),
        "G" => ratio(1, 2),
        "h" => scalar(3),
        _ => unreachable!(),
    };
    let chi = GenMap::hom(names.iter().map(|n| value(n)).collect());
    match h.check_character(&chi) {
        Err(Error::WellDefinedness {
            relation, lhs, rhs, ..
        }) => {
            let pair = (lhs.as_str(), rhs.as_str());
            outcome(
                pair == ("6", "12") || pair == ("12", "6"),
                format!("rejected on `{relation}`: {lhs} ≠ {rhs}"),
            )
        }
        other => outcome(false, format!("not rejected: {other:?}")),
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("Heisenberg end-to-end", heisenberg_end_to_end),
        ("normalization recovery", normalization_recovery),
        ("identity suite universality", identity_universality),
        ("winding oracle equivalence", oracle_equivalence),
        ("Hopf axiom suite and sabotage", hopf_suite),
        ("domain evidence", domain_evidence_criterion),
        ("confluence certification", confluence_certification),
        ("negative character", negative_character),
    ];
    let mut unexpected = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        let status = if o.pass { "PASS" } else { "FAIL" };
        let note = if !o.pass && o.documented {
            " [documented deviation]"
        } else {
            ""
        };
        println!("criterion {} ({name}): {status}{note}: {}", i + 1, o.detail);
        if !o.pass && !o.documented {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria failed");
        std::process::exit(1);
    }
}
