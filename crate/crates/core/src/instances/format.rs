//! Line-oriented profile files.
//!
//! ```text
//! # comment
//! n m
//! <n lines, each a permutation of 1..m, most-preferred first>
//! costs: c1 .. cm        (optional)
//! caps: x1 .. xm         (optional)
//! budget: B              (optional)
//! weights: w1 .. wn      (optional)
//! ```
//!
//! `#` starts a comment that runs to the end of the line. Blank lines are
//! ignored, CRLF is accepted, and writing always produces LF.

use std::fmt;

use thiserror::Error;

use crate::instance::Instance;
use crate::profile::Profile;

/// A parsed profile file: a profile plus the optional general-instance blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileDocument {
    pub profile: Profile,
    pub costs: Option<Vec<u64>>,
    pub caps: Option<Vec<u64>>,
    pub budget: Option<u64>,
    pub weights: Option<Vec<u64>>,
}

impl From<Profile> for ProfileDocument {
    fn from(profile: Profile) -> Self {
        ProfileDocument {
            profile,
            costs: None,
            caps: None,
            budget: None,
            weights: None,
        }
    }
}

impl ProfileDocument {
    pub fn has_general_fields(&self) -> bool {
        self.costs.is_some() || self.caps.is_some() || self.budget.is_some() || self.weights.is_some()
    }

    /// A general instance; missing blocks default to unit costs and weights,
    /// capacity `n` and a budget covering every alternative.
    pub fn to_instance(&self) -> crate::Result<Instance> {
        let (n, m) = (self.profile.n(), self.profile.m());
        let costs = self.costs.clone().unwrap_or_else(|| vec![1; m]);
        let budget = self.budget.unwrap_or_else(|| costs.iter().sum());
        Instance::general(
            self.profile.clone(),
            self.weights.clone().unwrap_or_else(|| vec![1; n]),
            costs,
            self.caps.clone().unwrap_or_else(|| vec![n as u64; m]),
            budget,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("document has no header line")]
    MissingHeader,
    #[error("header must be two integers \"n m\"")]
    MalformedHeader,
    #[error("{0}")]
    Domain(String),
    #[error("invalid token {0:?}")]
    InvalidToken(String),
    #[error("order has {found} entries, expected {expected}")]
    RankLength { expected: usize, found: usize },
    #[error("alternative {index} outside 1..={m}")]
    IndexOutOfRange { index: usize, m: usize },
    #[error("alternative {index} listed twice")]
    DuplicateIndex { index: usize },
    #[error("expected {expected} order lines, found {found}")]
    MissingOrders { expected: usize, found: usize },
    #[error("more than {expected} order lines")]
    ExtraOrders { expected: usize },
    #[error("unknown block {0:?}")]
    UnknownBlock(String),
    #[error("block {0:?} given twice")]
    DuplicateBlock(String),
    #[error("block {name:?} has {found} values, expected {expected}")]
    BlockLength {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("block {0:?} values must be positive")]
    NonPositive(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    /// 1-based line number.
    pub line: usize,
    /// 1-based column of the offending token (1 when the whole line is at fault).
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.kind)
    }
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
}

fn significant_lines(document: &str) -> impl Iterator<Item = Line<'_>> {
    document.split('\n').enumerate().filter_map(|(i, raw)| {
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        let content = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let mut tokens = Vec::new();
        let mut start = None;
        for (off, ch) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(off),
                (true, Some(s)) => {
                    tokens.push(Token {
                        text: &content[s..off],
                        column: content[..s].chars().count() + 1,
                    });
                    start = None;
                }
                _ => {}
            }
        }
        (!tokens.is_empty()).then_some(Line { number: i + 1, tokens })
    })
}

fn err(line: usize, column: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, column, kind }
}

fn number(line: usize, tok: &Token<'_>) -> Result<u64, ParseError> {
    tok.text
        .parse()
        .map_err(|_| err(line, tok.column, ParseErrorKind::InvalidToken(tok.text.to_string())))
}

/// Parses a profile document.
pub fn parse_instance(document: &str) -> Result<ProfileDocument, ParseError> {
    let mut lines = significant_lines(document);
    let header = lines
        .next()
        .ok_or_else(|| err(1, 1, ParseErrorKind::MissingHeader))?;
    if header.tokens.len() != 2 {
        return Err(err(header.number, 1, ParseErrorKind::MalformedHeader));
    }
    let parse_dim = |tok: &Token<'_>| {
        tok.text
            .parse::<usize>()
            .map_err(|_| err(header.number, tok.column, ParseErrorKind::MalformedHeader))
    };
    let n = parse_dim(&header.tokens[0])?;
    let m = parse_dim(&header.tokens[1])?;
    if n == 0 || m == 0 {
        return Err(err(
            header.number,
            1,
            ParseErrorKind::Domain(format!("n = {n} and m = {m} must both be positive")),
        ));
    }

    let mut orders = Vec::with_capacity(n);
    let mut last_line = header.number;
    while orders.len() < n {
        let Some(line) = lines.next() else {
            return Err(err(
                last_line + 1,
                1,
                ParseErrorKind::MissingOrders {
                    expected: n,
                    found: orders.len(),
                },
            ));
        };
        last_line = line.number;
        if line.tokens[0].text.ends_with(':') {
            return Err(err(
                line.number,
                1,
                ParseErrorKind::MissingOrders {
                    expected: n,
                    found: orders.len(),
                },
            ));
        }
        if line.tokens.len() != m {
            return Err(err(
                line.number,
                1,
                ParseErrorKind::RankLength {
                    expected: m,
                    found: line.tokens.len(),
                },
            ));
        }
        let mut seen = vec![false; m];
        let mut order = Vec::with_capacity(m);
        for tok in &line.tokens {
            let index = number(line.number, tok)? as usize;
            if index == 0 || index > m {
                return Err(err(
                    line.number,
                    tok.column,
                    ParseErrorKind::IndexOutOfRange { index, m },
                ));
            }
            if std::mem::replace(&mut seen[index - 1], true) {
                return Err(err(
                    line.number,
                    tok.column,
                    ParseErrorKind::DuplicateIndex { index },
                ));
            }
            order.push(index);
        }
        orders.push(order);
    }
    let profile = Profile::new(m, orders).expect("orders were validated while parsing");
    let mut doc = ProfileDocument::from(profile);

    for line in lines {
        let name = line.tokens[0].text;
        if !name.ends_with(':') {
            return Err(err(line.number, 1, ParseErrorKind::ExtraOrders { expected: n }));
        }
        let values = line.tokens[1..]
            .iter()
            .map(|t| number(line.number, t))
            .collect::<Result<Vec<u64>, _>>()?;
        let expected = match name {
            "costs:" | "caps:" => m,
            "weights:" => n,
            "budget:" => 1,
            _ => {
                return Err(err(
                    line.number,
                    1,
                    ParseErrorKind::UnknownBlock(name.to_string()),
                ))
            }
        };
        let block = name.trim_end_matches(':').to_string();
        if values.len() != expected {
            return Err(err(
                line.number,
                1,
                ParseErrorKind::BlockLength {
                    name: block,
                    expected,
                    found: values.len(),
                },
            ));
        }
        if let Some(i) = values.iter().position(|&v| v == 0) {
            return Err(err(
                line.number,
                line.tokens[i + 1].column,
                ParseErrorKind::NonPositive(block),
            ));
        }
        let duplicate = match name {
            "costs:" => doc.costs.replace(values).is_some(),
            "caps:" => doc.caps.replace(values).is_some(),
            "weights:" => doc.weights.replace(values).is_some(),
            _ => doc.budget.replace(values[0]).is_some(),
        };
        if duplicate {
            return Err(err(line.number, 1, ParseErrorKind::DuplicateBlock(block)));
        }
    }
    Ok(doc)
}

fn join(values: impl IntoIterator<Item = impl ToString>) -> String {
    values
        .into_iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Renders a document in canonical form (LF endings, no comments).
pub fn write_instance(doc: &ProfileDocument) -> String {
    let p = &doc.profile;
    let mut out = format!("{} {}\n", p.n(), p.m());
    for order in p.orders() {
        out.push_str(&join(order));
        out.push('\n');
    }
    if let Some(costs) = &doc.costs {
        out.push_str(&format!("costs: {}\n", join(costs)));
    }
    if let Some(caps) = &doc.caps {
        out.push_str(&format!("caps: {}\n", join(caps)));
    }
    if let Some(budget) = doc.budget {
        out.push_str(&format!("budget: {budget}\n"));
    }
    if let Some(weights) = &doc.weights {
        out.push_str(&format!("weights: {}\n", join(weights)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_crlf() {
        let doc = parse_instance("# a profile\r\n2 3 # header\r\n\r\n1 2 3\r\n3 2 1\r\n").unwrap();
        assert_eq!(doc.profile.n(), 2);
        assert_eq!(doc.profile.order(1), &[3, 2, 1]);
        assert!(!doc.has_general_fields());
        assert_eq!(write_instance(&doc), "2 3\n1 2 3\n3 2 1\n");
    }

    #[test]
    fn parses_general_blocks() {
        let text = "2 2\n1 2\n2 1\ncosts: 3 4\ncaps: 1 2\nbudget: 7\nweights: 1 1\n";
        let doc = parse_instance(text).unwrap();
        assert_eq!(doc.costs, Some(vec![3, 4]));
        assert_eq!(doc.caps, Some(vec![1, 2]));
        assert_eq!(doc.budget, Some(7));
        assert_eq!(doc.weights, Some(vec![1, 1]));
        assert_eq!(write_instance(&doc), text);
        let inst = doc.to_instance().unwrap();
        assert_eq!(inst.budget(), 7);
        assert_eq!(inst.capacity(2), 2);
    }

    fn kind(text: &str) -> (usize, usize, ParseErrorKind) {
        let e = parse_instance(text).unwrap_err();
        (e.line, e.column, e.kind)
    }

    #[test]
    fn duplicate_index_reports_line_and_column() {
        assert_eq!(
            kind("1 3\n1 1 2\n"),
            (2, 3, ParseErrorKind::DuplicateIndex { index: 1 })
        );
    }

    #[test]
    fn malformed_documents() {
        assert_eq!(kind("").2, ParseErrorKind::MissingHeader);
        assert_eq!(kind("# only comments\n").2, ParseErrorKind::MissingHeader);
        assert_eq!(kind("3\n").2, ParseErrorKind::MalformedHeader);
        assert_eq!(kind("a 3\n").2, ParseErrorKind::MalformedHeader);
        assert!(matches!(kind("0 5\n").2, ParseErrorKind::Domain(_)));
        assert_eq!(
            kind("1 3\n1 2\n"),
            (2, 1, ParseErrorKind::RankLength { expected: 3, found: 2 })
        );
        assert_eq!(
            kind("1 3\n1 2 4\n"),
            (2, 5, ParseErrorKind::IndexOutOfRange { index: 4, m: 3 })
        );
        assert_eq!(
            kind("1 3\n1 x 2\n").2,
            ParseErrorKind::InvalidToken("x".into())
        );
        assert_eq!(
            kind("2 2\n1 2\n").2,
            ParseErrorKind::MissingOrders { expected: 2, found: 1 }
        );
        assert_eq!(
            kind("1 2\n1 2\n2 1\n"),
            (3, 1, ParseErrorKind::ExtraOrders { expected: 1 })
        );
        assert_eq!(
            kind("1 2\n1 2\ncolors: 1 2\n").2,
            ParseErrorKind::UnknownBlock("colors:".into())
        );
        assert_eq!(
            kind("1 2\n1 2\nbudget: 1\nbudget: 2\n").2,
            ParseErrorKind::DuplicateBlock("budget".into())
        );
        assert_eq!(
            kind("1 2\n1 2\ncosts: 1\n").2,
            ParseErrorKind::BlockLength { name: "costs".into(), expected: 2, found: 1 }
        );
        assert_eq!(
            kind("1 2\n1 2\ncaps: 1 0\n"),
            (3, 9, ParseErrorKind::NonPositive("caps".into()))
        );
    }
}
