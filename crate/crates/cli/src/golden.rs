//! Golden examples: frozen bracket values checked against both engines.

use std::path::Path;

use anyhow::{Context, Result};
use serde::Deserialize;

use twg_core::bracket::BracketEngine;
use twg_core::ribbon::intersection_number_comb;
use twg_core::{DirectedClass, GeometricEngine, LinComb, TermJson, UndirectedClass};

use crate::{engines, load_holonomy, load_surface, Engine, Outcome};

const BUILTIN: &str = include_str!("../golden/goldenset.json");

#[derive(Deserialize)]
struct GoldenSet {
    cases: Vec<Case>,
}

#[derive(Deserialize)]
struct Case {
    name: String,
    surface: String,
    x: String,
    y: String,
    #[serde(default)]
    directed: bool,
    expected: Vec<TermJson>,
    #[serde(default)]
    intersection: Option<usize>,
}

fn check<K: Ord + Clone + std::fmt::Display>(
    got: &LinComb<K>,
    want: &LinComb<K>,
    engine: &str,
    problems: &mut Vec<String>,
) {
    if got != want {
        problems.push(format!("{engine} gave {got}, expected {want}"));
    }
}

fn run_case(case: &Case, engine: Engine) -> Result<Vec<String>> {
    let surface = load_surface(&case.surface)?;
    let x = surface.parse_class(&case.x)?;
    let y = surface.parse_class(&case.y)?;
    let (use_comb, use_geom) = engines(engine);
    let comb = BracketEngine::new(&surface);
    let geo = if use_geom {
        Some(GeometricEngine::new(load_holonomy(&surface, None)?))
    } else {
        None
    };
    let mut problems = Vec::new();
    if case.directed {
        let want = LinComb::<DirectedClass>::from_terms(&case.expected)?;
        let (x, y) = (DirectedClass::new(x), DirectedClass::new(y));
        if use_comb {
            check(&comb.goldman(&x, &y)?, &want, "comb", &mut problems);
        }
        if let Some(g) = &geo {
            check(&g.goldman(&x, &y)?, &want, "geom", &mut problems);
        }
    } else {
        let want = LinComb::<UndirectedClass>::from_terms(&case.expected)?;
        let (x, y) = (UndirectedClass::new(x), UndirectedClass::new(y));
        if use_comb {
            check(&comb.twg(&x, &y)?, &want, "comb", &mut problems);
        }
        if let Some(g) = &geo {
            check(&g.twg(&x, &y)?, &want, "geom", &mut problems);
        }
        if let Some(i) = case.intersection {
            let got = intersection_number_comb(&x, &y, &surface)?;
            if got != i {
                problems.push(format!("intersection number {got}, expected {i}"));
            }
        }
    }
    Ok(problems)
}

pub(crate) fn verify(file: Option<&Path>, engine: Engine) -> Result<Outcome> {
    let text = match file {
        Some(f) => std::fs::read_to_string(f).with_context(|| format!("reading {}", f.display()))?,
        None => BUILTIN.to_string(),
    };
    let set: GoldenSet = serde_json::from_str(&text).context("parsing golden set")?;
    let mut failed = 0;
    for case in &set.cases {
        let problems = run_case(case, engine).with_context(|| format!("case {}", case.name))?;
        let tag = if problems.is_empty() { "PASS" } else { "FAIL" };
        println!("{tag}  {}", case.name);
        for p in &problems {
            println!("      {p}");
        }
        failed += usize::from(!problems.is_empty());
    }
    println!("{} of {} cases passed", set.cases.len() - failed, set.cases.len());
    Ok(if failed == 0 { Outcome::Ok } else { Outcome::Failed })
}
