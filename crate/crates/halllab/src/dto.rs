//! JSON forms of certificates, subdivision witnesses and semiregular pairs.

use halllab_core::fractional::ChiFCertificate;
use halllab_core::generators::SemiRegularPair;
use halllab_core::graph::Bipartition;
use halllab_core::subdivision::SubdivisionWitness;
use halllab_core::{Graph, Rational, WeightAssignment};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::io::graph_sha256;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl GraphJson {
    pub fn from_graph(g: &Graph) -> Self {
        GraphJson { n: g.n(), edges: g.edges().map(|(u, v)| [u, v]).collect() }
    }

    pub fn to_graph(&self) -> Result<Graph, CliError> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        Ok(Graph::new(self.n, &edges)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimalEntry {
    pub set: Vec<usize>,
    pub weight: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub graph: GraphJson,
    pub graph_sha256: String,
    pub value: String,
    pub primal: Vec<PrimalEntry>,
    pub dual: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub host: GraphJson,
    pub host_sha256: String,
    pub pattern: GraphJson,
    pub branch_map: Vec<usize>,
    pub sub_map: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Artifact {
    Certificate(CertificateJson),
    Witness(WitnessJson),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    pub a: usize,
    pub q: usize,
    pub graph: GraphJson,
    pub side_a: Vec<usize>,
    pub side_b: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub host_ids: Option<Vec<usize>>,
}

pub fn parse_rational(s: &str) -> Result<Rational, CliError> {
    let s = s.trim();
    if let Some((int, frac)) = s.split_once('.') {
        let digits = format!("{int}{frac}");
        let text = format!("{}/1{}", if digits.is_empty() { "0" } else { &digits }, "0".repeat(frac.len()));
        if frac.chars().all(|c| c.is_ascii_digit()) {
            if let Ok(r) = text.parse::<Rational>() {
                return Ok(r);
            }
        }
    } else if let Ok(r) = s.parse::<Rational>() {
        return Ok(r);
    }
    Err(CliError::usage(format!("invalid rational number {s:?}")))
}

impl CertificateJson {
    pub fn new(g: &Graph, cert: &ChiFCertificate) -> Self {
        CertificateJson {
            graph: GraphJson::from_graph(g),
            graph_sha256: graph_sha256(g),
            value: cert.value.to_string(),
            primal: cert
                .primal
                .iter()
                .map(|(set, w)| PrimalEntry { set: set.clone(), weight: w.to_string() })
                .collect(),
            dual: cert.dual.weights().iter().map(|w| w.to_string()).collect(),
        }
    }

    pub fn decode(&self) -> Result<(Graph, ChiFCertificate), CliError> {
        let g = self.graph.to_graph()?;
        let primal = self
            .primal
            .iter()
            .map(|p| Ok((p.set.clone(), parse_rational(&p.weight)?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        let dual = self.dual.iter().map(|w| parse_rational(w)).collect::<Result<Vec<_>, _>>()?;
        let cert = ChiFCertificate {
            value: parse_rational(&self.value)?,
            primal,
            dual: WeightAssignment::new(dual)?,
        };
        Ok((g, cert))
    }
}

impl WitnessJson {
    pub fn new(host: &Graph, w: &SubdivisionWitness) -> Self {
        WitnessJson {
            host: GraphJson::from_graph(host),
            host_sha256: graph_sha256(host),
            pattern: GraphJson::from_graph(&w.pattern),
            branch_map: w.branch_map.clone(),
            sub_map: w.sub_map.clone(),
        }
    }

    pub fn decode(&self) -> Result<(Graph, SubdivisionWitness), CliError> {
        let w = SubdivisionWitness {
            pattern: self.pattern.to_graph()?,
            branch_map: self.branch_map.clone(),
            sub_map: self.sub_map.clone(),
        };
        Ok((self.host.to_graph()?, w))
    }
}

impl PairJson {
    pub fn new(pair: &SemiRegularPair) -> Self {
        PairJson {
            a: pair.a,
            q: pair.q,
            graph: GraphJson::from_graph(&pair.graph),
            side_a: pair.side_a().to_vec(),
            side_b: pair.side_b().to_vec(),
            host_ids: pair.host_ids.clone(),
        }
    }

    pub fn decode(&self) -> Result<SemiRegularPair, CliError> {
        let parts = Bipartition::new(self.side_a.clone(), self.side_b.clone());
        let mut pair = SemiRegularPair::new(self.graph.to_graph()?, parts, self.a, self.q)?;
        pair.host_ids = self.host_ids.clone();
        Ok(pair)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use halllab_core::fractional::chi_f_exact;
    use halllab_core::generators::one_subdivision;
    use halllab_core::rational::ratio;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("5/2").unwrap(), ratio(5, 2));
        assert_eq!(parse_rational("0.5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("1.25").unwrap(), ratio(5, 4));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("3").unwrap(), ratio(3, 1));
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.-2").is_err());
    }

    #[test]
    fn certificate_round_trip() {
        let g = Graph::cycle(5).unwrap();
        let cert = chi_f_exact(&g).unwrap();
        let json = serde_json::to_string(&Artifact::Certificate(CertificateJson::new(&g, &cert))).unwrap();
        assert!(json.starts_with("{\"kind\":\"certificate\""));
        let Artifact::Certificate(back) = serde_json::from_str(&json).unwrap() else { panic!() };
        assert_eq!(back.decode().unwrap(), (g, cert));
    }

    #[test]
    fn witness_and_pair_round_trip() {
        let (host, w) = one_subdivision(&Graph::complete(4));
        let j = WitnessJson::new(&host, &w);
        assert_eq!(j.decode().unwrap(), (host, w));
        let pair = SemiRegularPair::cyclic(4, 2, 3).unwrap();
        assert_eq!(PairJson::new(&pair).decode().unwrap(), pair);
    }
}
