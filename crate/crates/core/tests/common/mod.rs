#![allow(dead_code)]

use hopf_ore::cli::{parse, SourceFile};
use hopf_ore::hoe::{normalize, standard_data, HOEData, SignVariant};
use hopf_ore::hopf::HopfAlg;
use hopf_ore::ore::OreExt;
use hopf_ore::rewrite::{Presentation, DEFAULT_CONFLUENCE_DEGREE};
use hopf_ore::{zoo, TensorElem};

pub const HOE_ENTRIES: &[&str] = &[
    "heisenberg",
    "laurent-q2",
    "laurent-twisted",
    "poly-shift",
    "smash-z-scale",
];
pub const HOPF_ENTRIES: &[&str] = &[
    "heisenberg",
    "laurent-q2",
    "laurent-twisted",
    "poly-shift",
    "smash-z-scale",
    "z2-group",
];

pub fn source(name: &str) -> SourceFile {
    parse(zoo::source(name).unwrap()).unwrap()
}

pub fn presentation(name: &str) -> Presentation {
    source(name)
        .presentation()
        .unwrap()
        .certify(DEFAULT_CONFLUENCE_DEGREE)
        .unwrap()
}

pub fn base(name: &str) -> HopfAlg<Presentation> {
    let s = source(name);
    s.hopf(presentation(name)).unwrap()
}

/// The extension together with the declared `Δ(x)`.
pub fn extension(name: &str) -> (OreExt, TensorElem) {
    let s = source(name);
    let ext = s.ore_ext(base(name)).unwrap();
    let dx = s.delta_x(&ext).unwrap();
    (ext, dx)
}

/// A standard-shape variable for the entry, normalizing when needed.
pub fn standard(name: &str) -> (OreExt, HOEData) {
    let s = source(name);
    let (ext, dx) = extension(name);
    let (ext, beta, w) = match standard_data(&ext, &dx) {
        Ok((b, w)) => (ext, b, w),
        Err(_) => {
            let n = normalize(&ext, &dx, &s.counit_x());
            let st = n.state.expect("normalizes");
            let (b, w) = standard_data(&st.ore, &st.delta_x).unwrap();
            (st.ore, b, w)
        }
    };
    let d = s.hoe_data(&ext, beta, w, SignVariant::Commutator).unwrap();
    (ext, d)
}

/// Runs the binary entry point in-process.
pub fn run_cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("hopf-ore").chain(args.iter().copied());
    let code = hopf_ore::cli::run_with(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}
