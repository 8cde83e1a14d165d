//! Line-oriented parser for the textual model format.
//!
//! ```text
//! automaton <name> : <k>          # declares states 1..k
//! <name> <i> -> <j> on <label>    # local transition i --label--> j
//! init <name> in { <i>(,<i>)* }   # initial context of <name>
//! ```
//!
//! `#` starts a comment to end of line; blank lines are ignored.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use super::{
    Automaton, AutomataNetwork, Context, LocalState, LocalTransition, TransitionLabel,
    MAX_STATES_PER_AUTOMATON,
};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("{line}:{col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    DuplicateAutomaton(String),
    UnknownAutomaton(String),
    StateOutOfRange { automaton: String, state: u32 },
    TooManyStates { automaton: String, states: u32 },
    DuplicateTransition { automaton: String, label: String },
    ConflictingTransition { automaton: String, label: String },
    MissingInit(String),
    DuplicateInit(String),
    EmptyContext,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ParseErrorKind::*;
        match self {
            Syntax(msg) => write!(f, "syntax error: {msg}"),
            DuplicateAutomaton(a) => write!(f, "automaton `{a}` declared twice"),
            UnknownAutomaton(a) => write!(f, "unknown automaton `{a}`"),
            StateOutOfRange { automaton, state } => {
                write!(f, "state {state} out of range for automaton `{automaton}`")
            }
            TooManyStates { automaton, states } => write!(
                f,
                "automaton `{automaton}` declares {states} states (limit {MAX_STATES_PER_AUTOMATON})"
            ),
            DuplicateTransition { automaton, label } => {
                write!(f, "duplicate transition of `{automaton}` on label `{label}`")
            }
            ConflictingTransition { automaton, label } => write!(
                f,
                "label `{label}` already used by another transition of `{automaton}`"
            ),
            MissingInit(a) => write!(f, "missing `init` line for automaton `{a}`"),
            DuplicateInit(a) => write!(f, "duplicate `init` line for automaton `{a}`"),
            EmptyContext => write!(f, "context set must not be empty"),
        }
    }
}

struct Cursor<'a> {
    text: &'a str,
    line: usize,
    /// Byte offset within the line, 0-based.
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { line: self.line, col: self.pos + 1, kind }
    }

    fn syntax(&self, msg: impl Into<String>) -> ParseError {
        self.err(ParseErrorKind::Syntax(msg.into()))
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with([' ', '\t']) {
            self.pos += 1;
        }
    }

    fn at_end(&self) -> bool {
        self.pos == self.text.len()
    }

    fn take_ident(&mut self) -> Result<&'a str, ParseError> {
        let rest = self.rest();
        let mut len = 0;
        for (i, c) in rest.char_indices() {
            let ok = if i == 0 {
                c.is_ascii_alphabetic() || c == '_'
            } else {
                c.is_ascii_alphanumeric() || c == '_'
            };
            if !ok {
                break;
            }
            len = i + c.len_utf8();
        }
        if len == 0 {
            return Err(self.syntax("expected identifier"));
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn take_number(&mut self) -> Result<u32, ParseError> {
        let rest = self.rest();
        let len = rest.bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.syntax("expected a number"));
        }
        let value = rest[..len]
            .parse()
            .map_err(|_| self.syntax("number too large"))?;
        self.pos += len;
        Ok(value)
    }

    fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            Ok(())
        } else {
            Err(self.syntax(format!("expected `{token}`")))
        }
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.syntax("trailing input"))
        }
    }
}

/// Parses a model document into a network and its initial context.
///
/// Every automaton must carry exactly one `init` line with a non-empty state
/// set.
pub fn parse_network(text: &str) -> Result<(AutomataNetwork, Context), ParseError> {
    let mut automata: Vec<Automaton> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut label_index: HashMap<String, usize> = HashMap::new();
    let mut labels: Vec<TransitionLabel> = Vec::new();
    let mut transitions: Vec<LocalTransition> = Vec::new();
    let mut inits: Vec<Option<Vec<u32>>> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut cur = Cursor { text: content.trim_end(), line: lineno + 1, pos: 0 };
        cur.skip_ws();
        if cur.at_end() {
            continue;
        }
        let word_start = cur.pos;
        let word = cur.take_ident()?;
        match word {
            "automaton" => {
                cur.skip_ws();
                let name_start = cur.pos;
                let name = cur.take_ident()?.to_string();
                cur.skip_ws();
                cur.expect(":")?;
                cur.skip_ws();
                let states = cur.take_number()?;
                cur.skip_ws();
                cur.expect_end()?;
                if index.contains_key(&name) {
                    cur.pos = name_start;
                    return Err(cur.err(ParseErrorKind::DuplicateAutomaton(name)));
                }
                if states < 1 || states > MAX_STATES_PER_AUTOMATON {
                    cur.pos = name_start;
                    return Err(cur.err(ParseErrorKind::TooManyStates { automaton: name, states }));
                }
                index.insert(name.clone(), automata.len());
                automata.push(Automaton { name, states });
                inits.push(None);
            }
            "init" => {
                cur.skip_ws();
                let name_start = cur.pos;
                let name = cur.take_ident()?.to_string();
                cur.skip_ws();
                cur.expect("in")?;
                cur.skip_ws();
                cur.expect("{")?;
                let mut states = Vec::new();
                loop {
                    cur.skip_ws();
                    if cur.rest().starts_with('}') {
                        break;
                    }
                    if !states.is_empty() {
                        cur.expect(",")?;
                        cur.skip_ws();
                    }
                    states.push((cur.pos, cur.take_number()?));
                }
                cur.expect("}")?;
                cur.skip_ws();
                cur.expect_end()?;
                let Some(&a) = index.get(&name) else {
                    cur.pos = name_start;
                    return Err(cur.err(ParseErrorKind::UnknownAutomaton(name)));
                };
                if states.is_empty() {
                    return Err(cur.err(ParseErrorKind::EmptyContext));
                }
                for &(pos, state) in &states {
                    if state < 1 || state > automata[a].states {
                        cur.pos = pos;
                        return Err(cur.err(ParseErrorKind::StateOutOfRange {
                            automaton: name,
                            state,
                        }));
                    }
                }
                if inits[a].is_some() {
                    cur.pos = name_start;
                    return Err(cur.err(ParseErrorKind::DuplicateInit(name)));
                }
                inits[a] = Some(states.into_iter().map(|(_, s)| s).collect());
            }
            _ => {
                // <name> <i> -> <j> on <label>
                let name = word.to_string();
                cur.skip_ws();
                let from_pos = cur.pos;
                let from = cur.take_number()?;
                cur.skip_ws();
                cur.expect("->")?;
                cur.skip_ws();
                let to_pos = cur.pos;
                let to = cur.take_number()?;
                cur.skip_ws();
                cur.expect("on")?;
                cur.skip_ws();
                let label_pos = cur.pos;
                let label_name = cur.take_ident()?.to_string();
                cur.skip_ws();
                cur.expect_end()?;
                let Some(&a) = index.get(&name) else {
                    cur.pos = word_start;
                    return Err(cur.err(ParseErrorKind::UnknownAutomaton(name)));
                };
                for (pos, state) in [(from_pos, from), (to_pos, to)] {
                    if state < 1 || state > automata[a].states {
                        cur.pos = pos;
                        return Err(cur.err(ParseErrorKind::StateOutOfRange {
                            automaton: name.clone(),
                            state,
                        }));
                    }
                }
                let label = *label_index.entry(label_name.clone()).or_insert_with(|| {
                    labels.push(TransitionLabel {
                        name: label_name.clone(),
                        precond: Vec::new(),
                        postcond: Vec::new(),
                    });
                    labels.len() - 1
                });
                // One transition per automaton per label, so that the label's
                // pre- and postcondition stay functions on touched automata.
                if let Some(prev) = transitions
                    .iter()
                    .find(|t| t.automaton == a && t.label == label)
                {
                    cur.pos = label_pos;
                    let kind = if prev.from == from && prev.to == to {
                        ParseErrorKind::DuplicateTransition { automaton: name, label: label_name }
                    } else {
                        ParseErrorKind::ConflictingTransition { automaton: name, label: label_name }
                    };
                    return Err(cur.err(kind));
                }
                labels[label].precond.push(LocalState { automaton: a, state: from });
                labels[label].postcond.push(LocalState { automaton: a, state: to });
                transitions.push(LocalTransition { automaton: a, from, label, to });
            }
        }
    }

    for (a, init) in inits.iter().enumerate() {
        if init.is_none() {
            let cur = Cursor { text: "", line: text.lines().count() + 1, pos: 0 };
            return Err(cur.err(ParseErrorKind::MissingInit(automata[a].name.clone())));
        }
    }
    for label in &mut labels {
        label.precond.sort_unstable();
        label.postcond.sort_unstable();
    }

    let net = AutomataNetwork::new(automata, labels, transitions);
    let ctx = Context::new(&net, inits.into_iter().map(Option::unwrap).collect())
        .expect("init sets validated during parsing");
    Ok((net, ctx))
}
