//! Scenarios bundled into the binary, runnable as `suite NAME`.

use fgring_core::{Error, Result};

use crate::scenario::{parse_scenario, Scenario, Task};

pub const BUNDLED: &[(&str, &str)] = &[
    ("derived", include_str!("../corpus/derived.scn")),
    ("gamma3", include_str!("../corpus/gamma3.scn")),
    ("products", include_str!("../corpus/products.scn")),
    ("square", include_str!("../corpus/square.scn")),
    ("cocycle", include_str!("../corpus/cocycle.scn")),
    ("functors", include_str!("../corpus/functors.scn")),
    ("inclusions", include_str!("../corpus/inclusions.scn")),
    ("full", include_str!("../corpus/full.scn")),
];

pub fn bundled(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// The bundled scenario `name`, parsed. A scenario made only of `suite`
/// tasks is replaced by the scenarios it names, in order.
pub fn expand(name: &str) -> Result<Vec<(&'static str, Scenario)>> {
    let (key, text) = BUNDLED
        .iter()
        .find(|(n, _)| *n == name)
        .copied()
        .ok_or_else(|| Error::UnresolvedName(name.into()))?;
    let sc = parse_scenario(text)?;
    let subs: Option<Vec<&str>> = sc
        .tasks
        .iter()
        .map(|t| match &t.task {
            Task::Suite { name } => Some(name.as_str()),
            _ => None,
        })
        .collect();
    match subs {
        Some(names) if !names.is_empty() => {
            let mut out = Vec::new();
            for n in names {
                out.extend(expand(n)?);
            }
            Ok(out)
        }
        _ => Ok(vec![(key, sc)]),
    }
}
