//! Canonical JSON reports. `serde_json` maps are ordered by key, so a
//! report is a deterministic function of its contents; exact values are
//! always strings.

use std::sync::Arc;

use hahnfield::{Ambient, Coeff, Config, Cut, Elem, Group, Result, Series};
use serde_json::{json, Map, Value};

pub const SCHEMA: u64 = 1;

pub fn elem(g: &Group, e: &Elem) -> Value {
    Value::String(g.fmt_elem(e))
}

pub fn opt_elem(g: &Group, e: &Option<Elem>) -> Value {
    match e {
        Some(e) => elem(g, e),
        None => Value::String("inf".into()),
    }
}

pub fn cut(g: &Group, c: &Cut) -> Value {
    Value::String(g.fmt_cut(&g.canon(c).unwrap_or_else(|_| c.clone())))
}

pub fn coeff(amb: &Ambient, c: &Coeff) -> Value {
    Value::String(amb.field.fmt_coeff(c))
}

fn terms(amb: &Ambient, t: &[(Elem, Coeff)]) -> Value {
    t.iter()
        .map(|(e, c)| json!({"exp": amb.group.fmt_elem(e), "coeff": amb.field.fmt_coeff(c)}))
        .collect()
}

/// A finite series lists every term with its valuation; a rule-based one
/// lists its first `depth` grid points and records where it stopped.
pub fn series(x: &Series, depth: usize) -> Result<Value> {
    let amb = x.ambient();
    let mut m = Map::new();
    match x.terms() {
        Some(t) => {
            m.insert("terms".into(), terms(amb, t));
            m.insert(
                "valuation".into(),
                opt_elem(&amb.group, &t.first().map(|p| p.0.clone())),
            );
        }
        None => {
            let t = x.prefix(depth)?;
            m.insert("terms".into(), terms(amb, &t));
            m.insert("truncated_at".into(), json!(depth));
        }
    }
    Ok(Value::Object(m))
}

pub fn config(cfg: &Config, seed: u64) -> Value {
    json!({
        "depth": cfg.depth,
        "monoid_cap": cfg.monoid_cap,
        "horizon": cfg.horizon,
        "pc_cap": cfg.pc_cap,
        "seed": seed,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, witness: Option<String>) -> Check {
        Check {
            name: name.into(),
            passed,
            witness,
        }
    }
}

/// A command's report before serialization.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub argv: Vec<String>,
    pub amb: Arc<Ambient>,
    pub seed: u64,
    pub inputs: Map<String, Value>,
    pub outputs: Map<String, Value>,
    pub checks: Vec<Check>,
    pub runtime_ms: Option<u128>,
}

impl Report {
    pub fn new(command: &str, argv: Vec<String>, amb: Arc<Ambient>, seed: u64) -> Report {
        Report {
            command: command.into(),
            argv,
            amb,
            seed,
            inputs: Map::new(),
            outputs: Map::new(),
            checks: Vec::new(),
            runtime_ms: None,
        }
    }

    pub fn input(&mut self, k: &str, v: Value) {
        self.inputs.insert(k.into(), v);
    }

    pub fn output(&mut self, k: &str, v: Value) {
        self.outputs.insert(k.into(), v);
    }

    pub fn check(&mut self, name: &str, passed: bool, witness: Option<String>) {
        self.checks.push(Check::new(name, passed, witness));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        let amb = &self.amb;
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                let mut m = Map::new();
                m.insert("name".into(), json!(c.name));
                m.insert("passed".into(), json!(c.passed));
                if let Some(w) = &c.witness {
                    m.insert("witness".into(), json!(w));
                }
                Value::Object(m)
            })
            .collect();
        let mut m = Map::new();
        m.insert("hahnfield_report".into(), json!(SCHEMA));
        m.insert("command".into(), json!(self.command));
        m.insert("argv".into(), json!(self.argv));
        m.insert("group".into(), json!(amb.group.literal()));
        m.insert("field".into(), json!(amb.field.literal()));
        m.insert("factor_set".into(), json!(amb.factor.literal(&amb.field)));
        m.insert("config".into(), config(&amb.cfg, self.seed));
        m.insert("inputs".into(), Value::Object(self.inputs.clone()));
        m.insert("outputs".into(), Value::Object(self.outputs.clone()));
        m.insert("checks".into(), Value::Array(checks));
        m.insert("passed".into(), json!(self.passed()));
        if let Some(ms) = self.runtime_ms {
            m.insert("runtime_ms".into(), json!(ms));
        }
        Value::Object(m)
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("reports serialize");
        s.push('\n');
        s
    }
}
