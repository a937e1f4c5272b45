//! Experiment configuration files.
//!
//! ```text
//! # comment
//! [petersen]
//! command = invariants
//! input = petersen.txt
//! chi-f = true
//! expect.chi_f = 5/2
//!
//! [thm1-c2]
//! command = thm1
//! c = 2
//! trials = 50
//! expect.certified_fraction = >= 0.5
//! ```
//!
//! Each section is one experiment. `command` holds the subcommand words,
//! `args` positional arguments, `expect.KEY` a check against the report's
//! aggregate value `KEY`; every other key becomes `--key value` (`true`
//! gives a bare flag, `false` omits it).

use std::collections::BTreeSet;

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub key: String,
    pub value: String,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExperimentSpec {
    pub name: String,
    pub line: usize,
    pub entries: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expectation {
    pub key: String,
    pub op: Op,
    pub value: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Eq,
    Ne,
    Ge,
    Le,
    Gt,
    Lt,
}

fn err(line: usize, message: impl Into<String>) -> CliError {
    CliError::Parse { line, message: message.into() }
}

pub fn parse_config(text: &str) -> Result<Vec<ExperimentSpec>, CliError> {
    let mut specs: Vec<ExperimentSpec> = Vec::new();
    let mut names = BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') || l.starts_with(';') {
            continue;
        }
        if let Some(rest) = l.strip_prefix('[') {
            let name = rest.strip_suffix(']').ok_or_else(|| err(line, "unterminated section header"))?.trim();
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || "-_.".contains(c)) {
                return Err(err(line, format!("invalid experiment name {name:?}")));
            }
            if !names.insert(name.to_string()) {
                return Err(err(line, format!("duplicate experiment {name:?}")));
            }
            specs.push(ExperimentSpec { name: name.into(), line, entries: Vec::new() });
            continue;
        }
        let (key, value) = l.split_once('=').ok_or_else(|| err(line, "expected `key = value`"))?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() {
            return Err(err(line, "empty key"));
        }
        let spec = specs.last_mut().ok_or_else(|| err(line, "key outside of an [experiment] section"))?;
        if spec.entries.iter().any(|e| e.key == key) {
            return Err(err(line, format!("duplicate key {key:?}")));
        }
        spec.entries.push(Entry { key: key.into(), value: value.into(), line });
    }
    for spec in &specs {
        match spec.get("command") {
            None => return Err(err(spec.line, format!("experiment {:?} has no command", spec.name))),
            Some("run") => return Err(err(spec.line, "experiments cannot nest `run`")),
            Some(_) => {}
        }
        for e in spec.entries.iter().filter(|e| e.key.starts_with("expect.")) {
            parse_expectation(&e.key, &e.value).map_err(|m| err(e.line, m))?;
        }
    }
    Ok(specs)
}

fn parse_expectation(key: &str, value: &str) -> Result<Expectation, String> {
    let name = key.trim_start_matches("expect.");
    if name.is_empty() {
        return Err("empty expectation key".into());
    }
    let ops = [(">=", Op::Ge), ("<=", Op::Le), ("!=", Op::Ne), ("==", Op::Eq), (">", Op::Gt), ("<", Op::Lt)];
    let (op, rest) = ops
        .iter()
        .find_map(|(p, op)| value.strip_prefix(p).map(|r| (*op, r.trim())))
        .unwrap_or((Op::Eq, value));
    if rest.is_empty() {
        return Err(format!("expectation {name:?} has no value"));
    }
    if !matches!(op, Op::Eq | Op::Ne) && rest.parse::<f64>().is_err() {
        return Err(format!("ordered comparison needs a number, got {rest:?}"));
    }
    Ok(Expectation { key: name.into(), op, value: rest.into() })
}

impl ExperimentSpec {
    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|e| e.key == key).map(|e| e.value.as_str())
    }

    pub fn expectations(&self) -> Vec<Expectation> {
        self.entries
            .iter()
            .filter(|e| e.key.starts_with("expect."))
            .map(|e| parse_expectation(&e.key, &e.value).expect("validated on parse"))
            .collect()
    }

    /// Argument vector for the experiment, program name first.
    pub fn to_argv(&self) -> Vec<String> {
        let mut argv = vec!["halllab".to_string()];
        argv.extend(self.get("command").unwrap_or_default().split_whitespace().map(String::from));
        if let Some(args) = self.get("args") {
            argv.extend(args.split_whitespace().map(String::from));
        }
        for e in &self.entries {
            if matches!(e.key.as_str(), "command" | "args") || e.key.starts_with("expect.") {
                continue;
            }
            let flag = format!("--{}", e.key.replace('_', "-"));
            match e.value.as_str() {
                "true" => argv.push(flag),
                "false" => {}
                v => {
                    argv.push(flag);
                    argv.push(v.into());
                }
            }
        }
        argv
    }
}

impl Expectation {
    /// Checks `observed`, a report aggregate value.
    pub fn check(&self, observed: Option<&serde_json::Value>) -> (String, bool) {
        let Some(obs) = observed else { return ("missing".into(), false) };
        let text = match obs {
            serde_json::Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        let numeric = |s: &str| -> Option<f64> {
            s.parse::<f64>().ok().or_else(|| {
                let r = crate::dto::parse_rational(s).ok()?;
                Some(halllab_core::rational::to_f64(&r))
            })
        };
        let passed = match self.op {
            Op::Eq => text == self.value,
            Op::Ne => text != self.value,
            op => match (numeric(&text), self.value.parse::<f64>().ok()) {
                (Some(x), Some(y)) => match op {
                    Op::Ge => x >= y,
                    Op::Le => x <= y,
                    Op::Gt => x > y,
                    Op::Lt => x < y,
                    Op::Eq | Op::Ne => unreachable!(),
                },
                _ => false,
            },
        };
        (text, passed)
    }

    pub fn describe(&self) -> String {
        let op = match self.op {
            Op::Eq => "==",
            Op::Ne => "!=",
            Op::Ge => ">=",
            Op::Le => "<=",
            Op::Gt => ">",
            Op::Lt => "<",
        };
        format!("{op} {}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn parses_sections() {
        let text = "# x\n[a]\ncommand = gen kneser\nargs = 5 2\n\n[b]\ncommand = thm1\nc = 2\nhall_ratio = true\nquiet = false\nexpect.certified_fraction = >= 0.5\n";
        let specs = parse_config(text).unwrap();
        assert_eq!(specs.len(), 2);
        assert_eq!(specs[0].to_argv(), ["halllab", "gen", "kneser", "5", "2"]);
        assert_eq!(specs[1].to_argv(), ["halllab", "thm1", "--c", "2", "--hall-ratio"]);
        let e = &specs[1].expectations()[0];
        assert_eq!((e.key.as_str(), e.op), ("certified_fraction", Op::Ge));
        assert!(e.check(Some(&json!(0.75))).1);
        assert!(!e.check(Some(&json!(0.25))).1);
        assert!(!e.check(None).1);
    }

    #[test]
    fn equality_on_strings() {
        let e = parse_expectation("expect.chi_f", "5/2").unwrap();
        assert!(e.check(Some(&json!("5/2"))).1);
        let e = parse_expectation("expect.chi_f", "> 2").unwrap();
        assert!(e.check(Some(&json!("5/2"))).1);
    }

    #[test]
    fn empty_config() {
        assert!(parse_config("").unwrap().is_empty());
        assert!(parse_config("# only comments\n\n").unwrap().is_empty());
    }

    #[test]
    fn errors_carry_lines() {
        let line = |t: &str| match parse_config(t) {
            Err(CliError::Parse { line, .. }) => line,
            other => panic!("{other:?}"),
        };
        assert_eq!(line("c = 2\n"), 1);
        assert_eq!(line("[a]\ncommand = thm1\nnot a pair\n"), 3);
        assert_eq!(line("[a]\ncommand = thm1\n[a]\ncommand = thm1\n"), 3);
        assert_eq!(line("\n[a]\nc = 2\n"), 2);
        assert_eq!(line("[a]\ncommand = x\nc = 1\nc = 2\n"), 4);
        assert_eq!(line("[a]\ncommand = x\nexpect.v = >= abc\n"), 3);
        assert_eq!(line("[bad name]\n"), 1);
    }
}
