//! The germ file format.
//!
//! Every file is one JSON object with a `kind` tag. Rationals are always
//! strings, `"a/b"` or `"a"`.
//!
//! ```json
//! {"kind": "cyclic_quotient", "n": 5, "q": 2, "conductor": "1", "side": "1/2"}
//! {"kind": "dual_graph", "chain": [3, 2], "forks": [[2, 2]], "branches": [[1, "1"], [3, "1/2"]]}
//! {"kind": "glued", "components": [{"n": 2, "q": 1, "conductor": "1", "side": "3/4"}, ...]}
//! ```
//!
//! Graph literals number vertices from 1: the chain first, then the forks in
//! order. A fork `[a, c]` adds a curve with label `c` meeting vertex `a`. A
//! branch `[a, "x"]` puts a boundary branch of coefficient `x` through
//! vertex `a`; `a = 0` is the smooth point and needs an empty chain.
//!
//! Parsing only checks the shape of the document. Mathematical conditions
//! (coprimality, coefficient ranges, tree structure) are checked by
//! [`GermFile::validate`].

use serde::{Deserialize, Serialize};
use slcgerm_core::{Attach, CyclicQuotientGerm, Rat, ResolutionGraph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GermFile {
    CyclicQuotient(CyclicLiteral),
    DualGraph(GraphLiteral),
    Glued(GluedLiteral),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CyclicLiteral {
    pub n: u64,
    pub q: u64,
    pub conductor: Rat,
    pub side: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphLiteral {
    pub chain: Vec<u32>,
    #[serde(default)]
    pub forks: Vec<(usize, u32)>,
    #[serde(default)]
    pub branches: Vec<(usize, Rat)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GluedLiteral {
    pub components: Vec<CyclicLiteral>,
    #[serde(default = "default_true")]
    pub glue_ok: bool,
}

fn default_true() -> bool {
    true
}

/// A validated germ file.
#[derive(Debug, Clone)]
pub enum Germ {
    Cyclic(CyclicQuotientGerm),
    Graph(ResolutionGraph),
    Glued { components: Vec<CyclicQuotientGerm>, glue_ok: bool },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

impl From<serde_json::Error> for ParseError {
    fn from(e: serde_json::Error) -> Self {
        // serde_json appends " at line L column C"; keep only the reason
        let full = e.to_string();
        let message = match full.rfind(" at line ") {
            Some(i) => full[..i].to_string(),
            None => full,
        };
        ParseError {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

pub fn parse_germ_file(text: &str) -> Result<GermFile, ParseError> {
    Ok(serde_json::from_str(text)?)
}

impl GermFile {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("germ files always serialize")
    }

    pub fn validate(&self) -> slcgerm_core::Result<Germ> {
        match self {
            GermFile::CyclicQuotient(c) => c.validate().map(Germ::Cyclic),
            GermFile::DualGraph(g) => g.validate().map(Germ::Graph),
            GermFile::Glued(g) => Ok(Germ::Glued {
                components: g.components.iter().map(CyclicLiteral::validate).collect::<Result<_, _>>()?,
                glue_ok: g.glue_ok,
            }),
        }
    }
}

impl CyclicLiteral {
    pub fn validate(&self) -> slcgerm_core::Result<CyclicQuotientGerm> {
        CyclicQuotientGerm::new(self.n, self.q, self.conductor.clone(), self.side.clone())
    }
}

impl From<&CyclicQuotientGerm> for CyclicLiteral {
    fn from(g: &CyclicQuotientGerm) -> Self {
        CyclicLiteral {
            n: g.n(),
            q: g.q(),
            conductor: g.conductor().clone(),
            side: g.side().clone(),
        }
    }
}

impl GraphLiteral {
    pub fn validate(&self) -> slcgerm_core::Result<ResolutionGraph> {
        let invalid = |msg: String| slcgerm_core::Error::InvalidGraph(msg);
        let mut g = ResolutionGraph::chain(&self.chain)?;
        for &(at, c) in &self.forks {
            if at == 0 || at > g.num_vertices() {
                return Err(invalid(format!("fork attached to vertex {at}, which does not exist yet")));
            }
            g = g.with_vertex(at - 1, c)?.0;
        }
        for (at, coeff) in &self.branches {
            let attach = match *at {
                0 => Attach::SmoothPoint,
                v => Attach::Vertex(v - 1),
            };
            g = g.with_branch(attach, coeff.clone())?;
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_example() {
        let f = parse_germ_file(r#"{"kind":"cyclic_quotient","n":5,"q":2,"conductor":"1","side":"1/2"}"#).unwrap();
        let Germ::Cyclic(g) = f.validate().unwrap() else { panic!() };
        assert_eq!((g.n(), g.q()), (5, 2));
    }

    #[test]
    fn gcd_is_a_validation_error() {
        let f = parse_germ_file(r#"{"kind":"cyclic_quotient","n":4,"q":2,"conductor":"1","side":"0"}"#).unwrap();
        let err = f.validate().unwrap_err();
        assert!(err.to_string().contains("gcd"));
    }

    #[test]
    fn graph_example() {
        let f = parse_germ_file(r#"{"kind":"dual_graph","chain":[3,2],"branches":[[1,"1"],[2,"2/3"]]}"#).unwrap();
        let Germ::Graph(g) = f.validate().unwrap() else { panic!() };
        assert_eq!(g.selfints(), &[3, 2]);
        assert_eq!(g.branches().len(), 2);
    }

    #[test]
    fn forks_number_after_chain() {
        let f = parse_germ_file(r#"{"kind":"dual_graph","chain":[2,2],"forks":[[2,2],[3,4]]}"#).unwrap();
        let Germ::Graph(g) = f.validate().unwrap() else { panic!() };
        assert_eq!(g.neighbors(2), vec![1, 3]);
        assert!(parse_germ_file(r#"{"kind":"dual_graph","chain":[2],"forks":[[3,2]]}"#)
            .unwrap()
            .validate()
            .is_err());
    }

    #[test]
    fn smooth_point_branches() {
        let f = parse_germ_file(r#"{"kind":"dual_graph","chain":[],"branches":[[0,"1"],[0,"1/2"]]}"#).unwrap();
        assert!(f.validate().is_ok());
        let f = parse_germ_file(r#"{"kind":"dual_graph","chain":[2],"branches":[[0,"1"]]}"#).unwrap();
        assert!(f.validate().is_err());
    }

    #[test]
    fn glue_ok_defaults_to_true() {
        let f = parse_germ_file(
            r#"{"kind":"glued","components":[{"n":2,"q":1,"conductor":"1","side":"1/2"}]}"#,
        )
        .unwrap();
        let GermFile::Glued(g) = &f else { panic!() };
        assert!(g.glue_ok);
    }

    #[test]
    fn parse_errors_carry_position() {
        let e = parse_germ_file("{\n  \"kind\": \"cyclic_quotient\",\n  \"n\": ,\n}").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.column > 0);
        assert!(!e.message.contains(" at line "));
        let e = parse_germ_file(r#"{"kind":"torus"}"#).unwrap_err();
        assert!(e.message.contains("unknown variant"));
        let e = parse_germ_file(r#"{"kind":"cyclic_quotient","n":5,"q":2,"conductor":"1","side":"x"}"#).unwrap_err();
        assert!(e.message.contains("rational"));
        let e = parse_germ_file(r#"{"kind":"cyclic_quotient","n":5,"q":2,"conductor":"1","side":"0","z":1}"#)
            .unwrap_err();
        assert!(e.message.contains("unknown field"));
    }

    #[test]
    fn echo_is_canonical() {
        let f = parse_germ_file(r#"{"kind":"cyclic_quotient","n":5,"q":2,"conductor":"2/2","side":"2/4"}"#).unwrap();
        assert_eq!(f.to_json(), r#"{"kind":"cyclic_quotient","n":5,"q":2,"conductor":"1","side":"1/2"}"#);
        assert_eq!(parse_germ_file(&f.to_json()).unwrap(), f);
    }
}
