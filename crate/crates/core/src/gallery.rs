//! Named example systems.

use crate::decomposition::{function_triple, modular_sum_table};
use crate::gaussian::GaussianTriple;
use crate::maxent::markov_join;
use crate::{JointPmf, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum System {
    Discrete(JointPmf),
    Gaussian(GaussianTriple),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub name: String,
    pub description: String,
    pub system: System,
}

/// Names accepted by [`lookup`], in listing order.
pub fn names() -> Vec<String> {
    let mut out: Vec<String> = ["xor", "and-gate"].iter().map(|s| s.to_string()).collect();
    out.extend((2..=8).map(|k| format!("modk-{k}")));
    out.extend(
        [
            "bsc-markov",
            "copy-bits",
            "independent",
            "gauss-common",
            "gauss-synergy",
            "gauss-markov",
        ]
        .iter()
        .map(|s| s.to_string()),
    );
    out
}

fn binary_pair(e: f64) -> Result<JointPmf> {
    JointPmf::new(vec![2, 2], vec![0.5 * (1.0 - e), 0.5 * e, 0.5 * e, 0.5 * (1.0 - e)])
}

pub fn lookup(name: &str) -> Option<Entry> {
    let discrete = |description: &str, p: Result<JointPmf>| {
        Some(Entry {
            name: name.to_string(),
            description: description.to_string(),
            system: System::Discrete(p.expect("gallery entries are valid")),
        })
    };
    let gaussian = |description: &str, a: f64, b: f64, g: f64| {
        Some(Entry {
            name: name.to_string(),
            description: description.to_string(),
            system: System::Gaussian(
                GaussianTriple::standard(a, b, g).expect("gallery entries are valid"),
            ),
        })
    };
    match name {
        "xor" => discrete(
            "two uniform bits and their XOR",
            function_triple(2, &[0, 1, 1, 0]),
        ),
        "and-gate" => discrete(
            "two uniform bits and their AND",
            function_triple(2, &[0, 0, 0, 1]),
        ),
        "bsc-markov" => discrete(
            "uniform bit through two binary symmetric channels with flip probability 0.1",
            binary_pair(0.1).and_then(|p| markov_join(&p, &p)),
        ),
        "copy-bits" => discrete(
            "three copies of one uniform bit",
            JointPmf::from_fn(vec![2, 2, 2], |x| {
                if x[0] == x[1] && x[1] == x[2] {
                    0.5
                } else {
                    0.0
                }
            }),
        ),
        "independent" => discrete("three independent uniform bits", JointPmf::uniform(vec![2, 2, 2])),
        "gauss-common" => gaussian("unit Gaussians with all correlations 0.5", 0.5, 0.5, 0.5),
        "gauss-synergy" => gaussian(
            "unit Gaussians, X2 and X3 uncorrelated, both correlated 0.5 with X1",
            0.5,
            0.5,
            0.0,
        ),
        "gauss-markov" => gaussian(
            "unit Gaussians forming the chain X2 - X1 - X3 (gamma = alpha beta)",
            0.6,
            0.5,
            0.3,
        ),
        _ => {
            let k: usize = name.strip_prefix("modk-")?.parse().ok()?;
            if !(2..=8).contains(&k) {
                return None;
            }
            discrete(
                &format!("two uniform symbols mod {k} and their sum"),
                function_triple(k, &modular_sum_table(k)),
            )
        }
    }
}

pub fn all() -> Vec<Entry> {
    names()
        .iter()
        .map(|n| lookup(n).expect("listed names resolve"))
        .collect()
}
