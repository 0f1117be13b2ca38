//! Canonical text for a parsed source; reparses to the same [`SourceFile`].

use std::collections::BTreeMap;

use crate::freealg::fmt_scalar;

use super::parser::SourceFile;

pub fn print(src: &SourceFile) -> String {
    let names = src.all_names();
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!("algebra {}", src.name));

    let mut plain: Vec<&str> = Vec::new();
    let mut gens = Vec::new();
    let mut i = 0;
    while i < src.gens.len() {
        let g = &src.gens[i];
        match g.inverse {
            Some(j) if !g.is_inverse => {
                if !plain.is_empty() {
                    gens.push(format!("gen {}", plain.join(" ")));
                    plain.clear();
                }
                gens.push(format!("gen {} inv {}", g.name, src.gens[j].name));
                i += 2;
            }
            _ => {
                plain.push(&g.name);
                i += 1;
            }
        }
    }
    if !plain.is_empty() {
        gens.push(format!("gen {}", plain.join(" ")));
    }
    gens.into_iter().for_each(&mut line);

    for (l, r) in &src.rels {
        line(format!(
            "rel {} = {}",
            l.fmt_with(&names),
            r.fmt_with(&names)
        ));
    }
    for (g, t) in &src.delta {
        line(format!("delta {} = {}", names[*g], t.fmt_with(&names)));
    }
    for (g, c) in &src.counit {
        line(format!("counit {} = {}", names[*g], fmt_scalar(c)));
    }
    for (g, p) in &src.antipode {
        line(format!("antipode {} = {}", names[*g], p.fmt_with(&names)));
    }
    if let Some(o) = &src.ore {
        line(format!("ore {}", o.x));
        let map_lines =
            |kw: &str, name: &Option<String>, map: &BTreeMap<usize, crate::freealg::NCPoly>| {
                let name = name.clone().unwrap_or_default();
                map.iter()
                    .map(|(g, p)| format!("{kw} {name} {} = {}", names[*g], p.fmt_with(&names)))
                    .collect::<Vec<_>>()
            };
        map_lines("auto", &o.sigma_name, &o.sigma)
            .into_iter()
            .for_each(&mut line);
        map_lines("autoinv", &o.sigma_name, &o.sigma_inv)
            .into_iter()
            .for_each(&mut line);
        map_lines("der", &o.delta_name, &o.der)
            .into_iter()
            .for_each(&mut line);
        if let Some(c) = &o.counit_x {
            line(format!("counit {} = {}", o.x, fmt_scalar(c)));
        }
        if let Some(t) = &o.delta_x {
            line(format!("deltaX = {}", t.fmt_with(&names)));
        }
        if let Some(b) = &o.beta {
            line(format!("hoe beta = {}", b.fmt_with(&names)));
        }
        for (g, c) in &o.chi {
            line(format!("hoe chi {} = {}", names[*g], fmt_scalar(c)));
        }
        if let Some(w) = &o.w {
            line(format!("hoe w = {}", w.fmt_with(&names)));
        }
    }
    for a in &src.assertions {
        line(format!("assert {a}"));
    }
    out
}
