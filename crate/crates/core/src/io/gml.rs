// SPDX-License-Identifier: Apache-2.0

//! Reader for the node/edge subset of GML.
//!
//! Only `graph`, `node { id, label }`, `edge { source, target }` and
//! `directed` are interpreted; any other key and its value (including
//! nested lists) is skipped.

use std::collections::HashMap;

use super::Parsed;
use crate::error::{Error, Result};
use crate::graph::GraphBuilder;

/// Which GML field becomes the node label.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum GmlLabels {
    /// The `label` string, falling back to `id` when absent.
    #[default]
    Label,
    /// The `id` value as written.
    Id,
    /// 1-based position of the node block in the file.
    Ordinal,
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Open,
    Close,
    Key(String),
    Scalar(String),
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    let mut line = 1;
    while let Some(&(_, c)) = chars.peek() {
        match c {
            '\n' => {
                line += 1;
                chars.next();
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            '#' => {
                while let Some(&(_, c)) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                }
            }
            '[' => {
                tokens.push((Token::Open, line));
                chars.next();
            }
            ']' => {
                tokens.push((Token::Close, line));
                chars.next();
            }
            '"' => {
                let start_line = line;
                chars.next();
                let mut s = String::new();
                let mut closed = false;
                for (_, c) in chars.by_ref() {
                    if c == '"' {
                        closed = true;
                        break;
                    }
                    if c == '\n' {
                        line += 1;
                    }
                    s.push(c);
                }
                if !closed {
                    return Err(Error::parse(start_line, "unterminated string"));
                }
                tokens.push((Token::Scalar(s), start_line));
            }
            _ => {
                let mut word = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_whitespace() || c == '[' || c == ']' || c == '"' {
                        break;
                    }
                    word.push(c);
                    chars.next();
                }
                let is_key = word
                    .chars()
                    .next()
                    .is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
                tokens.push((
                    if is_key {
                        Token::Key(word)
                    } else {
                        Token::Scalar(word)
                    },
                    line,
                ));
            }
        }
    }
    Ok(tokens)
}

#[derive(Debug)]
enum Value {
    Scalar(String),
    List(Vec<(String, Value, usize)>),
}

struct Reader {
    tokens: Vec<(Token, usize)>,
    pos: usize,
}

impl Reader {
    fn last_line(&self) -> usize {
        self.tokens.last().map_or(1, |t| t.1)
    }

    /// Reads `key value` pairs until a closing bracket (when nested) or end of input.
    fn list(&mut self, nested: bool, open_line: usize) -> Result<Vec<(String, Value, usize)>> {
        let mut items = Vec::new();
        loop {
            let Some((tok, line)) = self.tokens.get(self.pos).cloned() else {
                if nested {
                    return Err(Error::parse(
                        open_line,
                        "unbalanced brackets: '[' never closed",
                    ));
                }
                return Ok(items);
            };
            self.pos += 1;
            match tok {
                Token::Close if nested => return Ok(items),
                Token::Close => {
                    return Err(Error::parse(line, "unbalanced brackets: unexpected ']'"))
                }
                Token::Key(key) => {
                    let value = match self.tokens.get(self.pos).cloned() {
                        Some((Token::Open, l)) => {
                            self.pos += 1;
                            Value::List(self.list(true, l)?)
                        }
                        Some((Token::Scalar(s), _)) | Some((Token::Key(s), _)) => {
                            self.pos += 1;
                            Value::Scalar(s)
                        }
                        Some((Token::Close, l)) => {
                            return Err(Error::parse(l, format!("key {key:?} has no value")))
                        }
                        None => {
                            return Err(Error::parse(
                                self.last_line(),
                                format!("key {key:?} has no value"),
                            ))
                        }
                    };
                    items.push((key, value, line));
                }
                Token::Open | Token::Scalar(_) => {
                    return Err(Error::parse(line, "expected a key"));
                }
            }
        }
    }
}

fn scalar<'a>(items: &'a [(String, Value, usize)], key: &str) -> Option<&'a str> {
    items.iter().find_map(|(k, v, _)| match v {
        Value::Scalar(s) if k == key => Some(s.as_str()),
        _ => None,
    })
}

/// Parses a GML document into an undirected graph.
pub fn parse_gml(text: &str, labels: GmlLabels) -> Result<Parsed> {
    let mut reader = Reader {
        tokens: tokenize(text)?,
        pos: 0,
    };
    let top = reader.list(false, 1)?;
    let Some((graph_items, _)) = top.iter().find_map(|(k, v, line)| match v {
        Value::List(items) if k == "graph" => Some((items, *line)),
        _ => None,
    }) else {
        return Err(Error::parse(1, "no graph [ ... ] block"));
    };

    let declared_directed = scalar(graph_items, "directed").is_some_and(|d| d.trim() != "0");
    let mut builder = GraphBuilder::new();
    let mut by_id: HashMap<&str, usize> = HashMap::new();
    let mut ordinal = 0usize;

    for (key, value, line) in graph_items {
        if key != "node" {
            continue;
        }
        let Value::List(items) = value else {
            return Err(Error::parse(*line, "node must be a list"));
        };
        let id = scalar(items, "id").ok_or_else(|| Error::parse(*line, "node without id"))?;
        ordinal += 1;
        let label = match labels {
            GmlLabels::Label => scalar(items, "label").unwrap_or(id).to_string(),
            GmlLabels::Id => id.to_string(),
            GmlLabels::Ordinal => ordinal.to_string(),
        };
        if by_id.contains_key(id) {
            return Err(Error::parse(*line, format!("duplicate node id {id}")));
        }
        if builder.contains(&label) {
            return Err(Error::parse(
                *line,
                format!("duplicate node label {label:?}"),
            ));
        }
        by_id.insert(id, builder.add_node(label));
    }

    for (key, value, line) in graph_items {
        if key != "edge" {
            continue;
        }
        let Value::List(items) = value else {
            return Err(Error::parse(*line, "edge must be a list"));
        };
        let endpoint = |name: &str| -> Result<usize> {
            let id = scalar(items, name)
                .ok_or_else(|| Error::parse(*line, format!("edge without {name}")))?;
            by_id.get(id).copied().ok_or_else(|| {
                Error::parse(*line, format!("edge {name} references unknown id {id}"))
            })
        };
        let (u, v) = (endpoint("source")?, endpoint("target")?);
        builder.add_edge_by_index(u, v);
    }

    let self_loops_dropped = builder.self_loops();
    let duplicate_edges = builder.duplicates();
    Ok(Parsed {
        graph: builder.build(),
        self_loops_dropped,
        duplicate_edges,
        declared_directed,
    })
}
