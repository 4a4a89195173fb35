//! Browser bindings: analyse a network, test reachability, build extensions.

use lincut::dynamics::{self, Caps, Semantics};
use lincut::extension::{cuttable_extension, full_extension};
use lincut::netio::{
    export_report, parse_document, serialize_bnet_with_extenders, ParseOptions, Report,
};
use lincut::structure::{find_linear_cut, interaction_graph};
use lincut::{BooleanNetwork, State, Subspace};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const CAPS: Caps = Caps {
    state_space: 14,
    subspaces: 10,
};

fn network(text: &str) -> Result<(BooleanNetwork, Vec<String>), String> {
    let doc = parse_document(text, ParseOptions::default()).map_err(|e| e.to_string())?;
    Ok((doc.network, doc.warnings))
}

fn report(r: &Report) -> Value {
    serde_json::from_str(&export_report(r)).expect("reports are JSON")
}

/// Structure always; fixed points, minimal trap spaces and asynchronous
/// attractors when the state space is small enough.
pub fn analyze_json(text: &str) -> Result<String, String> {
    let (net, warnings) = network(text)?;
    let g = interaction_graph(&net);
    let edges: Vec<Value> = g
        .edges()
        .map(|((j, i), s)| json!([net.name(j), net.name(i), s.to_string()]))
        .collect();
    let cut = match find_linear_cut(&g, true) {
        Ok(c) => {
            json!({"cuttable": true, "cut": c.members().iter().map(|i| net.name(i)).collect::<Vec<_>>()})
        }
        Err(v) => json!({"cuttable": false, "violation": v.describe(net.names())}),
    };
    let mut out = json!({
        "components": net.names(),
        "edges": edges,
        "cut": cut,
        "warnings": warnings,
    });
    let dynamic = || -> lincut::Result<Value> {
        Ok(json!({
            "fixed_points": report(&Report::fixed_points(&dynamics::fixed_points(&net, &CAPS)?)),
            "minimal_trap_spaces": report(&Report::trap_spaces(&dynamics::minimal_trap_spaces(&net, &CAPS)?, true)),
            "attractors": report(&Report::attractors(&dynamics::attractors(&net, Semantics::Asynchronous, &CAPS)?)),
        }))
    };
    match dynamic() {
        Ok(v) => out["dynamics"] = v,
        Err(e) => out["skipped"] = json!(e.to_string()),
    }
    Ok(out.to_string())
}

/// Reachability from a state to a state or subspace; `sem` also accepts
/// `lreach` for the cuttable extension.
pub fn reach_json(text: &str, from: &str, to: &str, sem: &str) -> Result<String, String> {
    let (net, _) = network(text)?;
    let x: State = from
        .trim()
        .parse()
        .map_err(|e: lincut::Error| e.to_string())?;
    let t: Subspace = to
        .trim()
        .parse()
        .map_err(|e: lincut::Error| e.to_string())?;
    if x.len() != net.n() || t.len() != net.n() {
        return Err(format!("states need {} values", net.n()));
    }
    let mut warnings = Vec::new();
    let path = if sem == "lreach" {
        let ext = cuttable_extension(&net);
        warnings.push(format!(
            "path in the cuttable extension, extender count {}",
            ext.edges().len()
        ));
        dynamics::reachable(
            ext.extended(),
            ext.embed(x),
            Semantics::Asynchronous,
            |s| ext.is_canonical(s) && t.contains_state(ext.project(s)),
            &CAPS,
        )
    } else {
        let s: Semantics = sem.parse().map_err(|e: lincut::Error| e.to_string())?;
        dynamics::reachable(&net, x, s, |y| t.contains_state(y), &CAPS)
    }
    .map_err(|e| e.to_string())?;
    Ok(export_report(&Report::Reach {
        semantics: sem.to_string(),
        reachable: path.is_some(),
        path: path.map(|p| p.iter().map(State::to_string).collect()),
        warnings,
    }))
}

/// The cuttable (`cuttable`) or full (`full`) extension as rule text.
pub fn extend_text(text: &str, mode: &str) -> Result<String, String> {
    let (net, _) = network(text)?;
    let ext = match mode {
        "full" => full_extension(&net),
        "cuttable" => cuttable_extension(&net),
        other => return Err(format!("unknown extension `{other}`")),
    };
    Ok(serialize_bnet_with_extenders(
        ext.extended(),
        ext.extender_set(),
    ))
}

#[wasm_bindgen]
pub fn analyze(text: &str) -> Result<String, JsValue> {
    analyze_json(text).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn reach(text: &str, from: &str, to: &str, sem: &str) -> Result<String, JsValue> {
    reach_json(text, from, to, sem).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn extend(text: &str, mode: &str) -> Result<String, JsValue> {
    extend_text(text, mode).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIVE: &str = "x1, x3\nx2, x4 & x5\nx3, x1\nx4, x1\nx5, x2\n";

    #[test]
    fn analysis_of_the_five_component_network() {
        let v: Value = serde_json::from_str(&analyze_json(FIVE).unwrap()).unwrap();
        assert_eq!(v["cut"]["cuttable"], true);
        assert_eq!(
            v["dynamics"]["fixed_points"]["states"],
            json!(["00000", "10110", "11111"])
        );
        assert_eq!(v["edges"].as_array().unwrap().len(), 6);
    }

    #[test]
    fn reachability_queries() {
        let v: Value =
            serde_json::from_str(&reach_json(FIVE, "11011", "00000", "async").unwrap()).unwrap();
        assert_eq!(v["path"].as_array().unwrap().len(), 5);
        let v: Value =
            serde_json::from_str(&reach_json(FIVE, "11011", "10110", "async").unwrap()).unwrap();
        assert_eq!(v["reachable"], false);
        let v: Value =
            serde_json::from_str(&reach_json("a, b\nb, a\n", "01", "10", "lreach").unwrap())
                .unwrap();
        assert_eq!(v["reachable"], true);
        assert!(reach_json(FIVE, "110", "00000", "async").is_err());
        assert!(reach_json(FIVE, "11011", "00000", "sideways").is_err());
    }

    #[test]
    fn extensions_as_text() {
        assert_eq!(
            extend_text(FIVE, "cuttable")
                .unwrap()
                .matches("# extender:")
                .count(),
            3
        );
        assert_eq!(
            extend_text(FIVE, "full")
                .unwrap()
                .matches("# extender:")
                .count(),
            6
        );
        assert!(extend_text(FIVE, "half").is_err());
        assert!(analyze_json("a, &").is_err());
    }
}
