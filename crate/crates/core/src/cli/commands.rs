//! The checks behind each subcommand.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hoe::{
    build_hoe, check_conditions, decompose_delta_x, identity_suite, normalize, resolve_sign,
    standard_data, SignResolution, SignVariant,
};
use crate::hopf::HopfAlg;
use crate::ore::{validate_ore, OreExt};
use crate::report::Report;
use crate::rewrite::{Algebra, Presentation, DEFAULT_CONFLUENCE_DEGREE};
use crate::tensor::TensorElem;
use crate::zoo::domain_evidence;

use super::parser::SourceFile;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    CheckHopf,
    CheckOre,
    CheckHoe,
    Normalize,
    DomainEvidence,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::CheckHopf => "check-hopf",
            Command::CheckOre => "check-ore",
            Command::CheckHoe => "check-hoe",
            Command::Normalize => "normalize",
            Command::DomainEvidence => "domain-evidence",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [
            Command::CheckHopf,
            Command::CheckOre,
            Command::CheckHoe,
            Command::Normalize,
            Command::DomainEvidence,
        ]
        .into_iter()
        .find(|c| c.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignChoice {
    Auto,
    Fixed(SignVariant),
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub degree_bound: usize,
    pub degree: usize,
    pub sign: SignChoice,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            degree_bound: crate::hoe::DEFAULT_DEGREE_BOUND,
            degree: 4,
            sign: SignChoice::Auto,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub command: String,
    pub input: String,
    pub report: Report,
    pub log: Vec<String>,
    pub sign_resolution: Option<SignResolution>,
    pub assertions: Vec<String>,
}

#[derive(Serialize)]
struct JsonCheck<'a> {
    name: &'a str,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<&'a str>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    command: &'a str,
    input: &'a str,
    checks: Vec<JsonCheck<'a>>,
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    sign_resolution: Option<&'static str>,
    log: &'a [String],
    assertions: &'a [String],
}

fn status(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "fail"
    }
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let r = JsonReport {
            command: &self.command,
            input: &self.input,
            checks: self
                .report
                .checks
                .iter()
                .map(|c| JsonCheck {
                    name: &c.name,
                    status: status(c.passed),
                    witness: c.witness.as_deref(),
                })
                .collect(),
            verdict: status(self.passed()),
            sign_resolution: self.sign_resolution.map(SignResolution::name),
            log: &self.log,
            assertions: &self.assertions,
        };
        serde_json::to_value(r).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.command, self.input);
        for c in &self.report.checks {
            s.push_str(&format!(
                "{}  {}\n",
                status(c.passed).to_uppercase(),
                c.name
            ));
            if let Some(w) = &c.witness {
                s.push_str(&format!("      {w}\n"));
            }
        }
        if !self.log.is_empty() {
            s.push_str("log:\n");
            for l in &self.log {
                s.push_str(&format!("  {l}\n"));
            }
        }
        if let Some(r) = self.sign_resolution {
            s.push_str(&format!("sign resolution: {}\n", r.name()));
        }
        if !self.assertions.is_empty() {
            s.push_str(&format!(
                "assumed (not verified): {}\n",
                self.assertions.join(", ")
            ));
        }
        s.push_str(&format!("verdict: {}\n", status(self.passed())));
        s
    }
}

/// Builds the presentation and certifies confluence; a divergence is a
/// failed check, not an input error.
fn certified(src: &SourceFile, report: &mut Report) -> Result<Option<Presentation>> {
    let name = format!("confluence to degree {DEFAULT_CONFLUENCE_DEGREE}");
    match src.presentation()?.certify(DEFAULT_CONFLUENCE_DEGREE) {
        Ok(p) => {
            report.pass(name);
            Ok(Some(p))
        }
        Err(e @ Error::NotConfluent { .. }) => {
            report.fail(name, e.to_string());
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn verified_base(
    src: &SourceFile,
    report: &mut Report,
    prefix: &str,
) -> Result<Option<HopfAlg<Presentation>>> {
    let Some(pres) = certified(src, report)? else {
        return Ok(None);
    };
    let h = src.hopf(pres)?;
    let suite = h.hopf_axiom_suite();
    let ok = suite.passed();
    report.extend_prefixed(prefix, suite);
    Ok(ok.then_some(h))
}

fn extension(src: &SourceFile, report: &mut Report) -> Result<Option<OreExt>> {
    let Some(h) = verified_base(src, report, "R: ")? else {
        return Ok(None);
    };
    let (s, si, d) = src.ore_maps(&h.alg)?;
    let v = validate_ore(&h, &s, &si, &d);
    let ok = v.passed();
    report.extend(v);
    if !ok {
        return Ok(None);
    }
    match src.ore_ext(h) {
        Ok(ext) => Ok(Some(ext)),
        Err(e @ Error::PremiseFailed { .. }) => {
            report.fail("Ore data", e.to_string());
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn check_hopf(src: &SourceFile, out: &mut Outcome) -> Result<()> {
    if let Some(h) = verified_base(src, &mut out.report, "")? {
        let cocomm = if h.is_cocommutative() { "yes" } else { "no" };
        out.log.push(format!("cocommutative: {cocomm}"));
    }
    Ok(())
}

fn check_ore(src: &SourceFile, out: &mut Outcome) -> Result<()> {
    if let Some(ext) = extension(src, &mut out.report)? {
        for rel in ext
            .defining_relations()
            .iter()
            .skip(ext.r().defining_relations().len())
        {
            out.log.push(rel.label.clone());
        }
    }
    Ok(())
}

fn run_normalize(src: &SourceFile, out: &mut Outcome) -> Result<()> {
    src.ore_section()?;
    let Some(ext) = extension(src, &mut out.report)? else {
        return Ok(());
    };
    let dx = src.delta_x(&ext)?;
    let n = normalize(&ext, &dx, &src.counit_x());
    out.report.extend(n.report);
    out.log.extend(n.log);
    Ok(())
}

/// The standard-shape variable to check: the input one when `Δ(x)` is
/// already standard, otherwise the normalized one.
fn standard_variable(
    src: &SourceFile,
    ext: OreExt,
    dx: &TensorElem,
    out: &mut Outcome,
) -> Result<Option<(OreExt, crate::freealg::NCPoly, TensorElem)>> {
    if let Ok((beta, w)) = standard_data(&ext, dx) {
        let r = ext.r();
        if let Some(b) = src.declared_beta(r) {
            out.report.record(
                "declared beta agrees with deltaX",
                (b != beta)
                    .then(|| format!("hoe beta = {}, deltaX gives {}", r.fmt(&b), r.fmt(&beta))),
            );
        }
        if let Some(dw) = src.declared_w(r) {
            out.report.record(
                "declared w agrees with deltaX",
                (dw != w).then(|| {
                    format!(
                        "hoe w = {}, deltaX gives {}",
                        dw.fmt_with(r.names()),
                        w.fmt_with(r.names())
                    )
                }),
            );
        }
        return Ok(Some((ext, beta, w)));
    }
    out.log
        .push("deltaX is not in standard shape; normalizing".into());
    let n = normalize(&ext, dx, &src.counit_x());
    out.report.extend_prefixed("normalize: ", n.report);
    out.log.extend(n.log);
    let Some(state) = n.state else {
        return Ok(None);
    };
    if src.declared_beta(ext.r()).is_some() || src.declared_w(ext.r()).is_some() {
        out.log
            .push("declared hoe beta/w refer to the input variable and are not used".into());
    }
    match standard_data(&state.ore, &state.delta_x) {
        Ok((beta, w)) => Ok(Some((state.ore, beta, w))),
        Err(e) => {
            out.report
                .fail("standard shape after normalization", e.to_string());
            Ok(None)
        }
    }
}

fn check_hoe(src: &SourceFile, opts: &Options, out: &mut Outcome) -> Result<()> {
    src.ore_section()?;
    let Some(ext) = extension(src, &mut out.report)? else {
        return Ok(());
    };
    let dx = src.delta_x(&ext)?;
    match decompose_delta_x(&ext, &dx) {
        Ok(f) => out
            .report
            .extend_prefixed("identity: ", identity_suite(&ext.base, &f)),
        Err(e) => {
            out.report.fail("shape of Δ(x)", e.to_string());
            return Ok(());
        }
    }
    let Some((ext, beta, w)) = standard_variable(src, ext, &dx, out)? else {
        return Ok(());
    };
    let variant = match opts.sign {
        SignChoice::Fixed(v) => v,
        SignChoice::Auto => SignVariant::Commutator,
    };
    let d = src.hoe_data(&ext, beta, w, variant)?;
    let hopf = match opts.sign {
        SignChoice::Fixed(v) => {
            out.log.push(format!("sign variant: {} (fixed)", v.name()));
            out.report
                .extend(check_conditions(&ext, &d, opts.degree_bound));
            let (truth, hopf) = build_hoe(&ext, &d);
            out.report.extend_prefixed("ground truth: ", truth);
            hopf
        }
        SignChoice::Auto => {
            let hc = resolve_sign(&ext, &d, opts.degree_bound);
            let conditions = match hc.resolution {
                SignResolution::Displayed => hc.displayed,
                _ => hc.commutator,
            };
            out.report.extend(conditions);
            out.report
                .extend_prefixed("ground truth: ", hc.ground_truth);
            out.report.record(
                "sign resolution",
                (hc.resolution == SignResolution::None).then(|| {
                    "neither sign variant agrees with the direct verification".to_string()
                }),
            );
            out.sign_resolution = Some(hc.resolution);
            hc.hopf
        }
    };
    let r = ext.r();
    out.log.push(format!("beta = {}", r.fmt(&d.beta)));
    out.log.push(format!("w = {}", d.w.fmt_with(r.names())));
    if let Some(t) = hopf {
        let x = ext.x_poly();
        out.log.push(format!(
            "S({}) = {}",
            ext.x_name,
            ext.fmt(&t.antipode_of(&x))
        ));
    }
    Ok(())
}

fn run_domain_evidence(src: &SourceFile, opts: &Options, out: &mut Outcome) -> Result<()> {
    let pres = src.presentation()?;
    out.report.extend(domain_evidence(&pres, opts.degree));
    out.log
        .push("bounded evidence only; a pass is not a proof that the algebra is a domain".into());
    Ok(())
}

/// Runs `cmd` on a parsed source. `Err` means the input itself is unusable.
pub fn run(cmd: Command, input: &str, src: &SourceFile, opts: &Options) -> Result<Outcome> {
    let mut out = Outcome {
        command: cmd.name().to_string(),
        input: input.to_string(),
        report: Report::new(),
        log: Vec::new(),
        sign_resolution: None,
        assertions: src.assertions.clone(),
    };
    match cmd {
        Command::CheckHopf => check_hopf(src, &mut out)?,
        Command::CheckOre => check_ore(src, &mut out)?,
        Command::CheckHoe => check_hoe(src, opts, &mut out)?,
        Command::Normalize => run_normalize(src, &mut out)?,
        Command::DomainEvidence => run_domain_evidence(src, opts, &mut out)?,
    }
    Ok(out)
}
