//! Automata networks: domain types, textual format and exact step semantics.
//!
//! A network is a finite set of automata with states `1..=k`, synchronizing on
//! shared transition labels. A label fires when every local state of its
//! precondition is present in the global state; firing replaces those local
//! states by the label's postcondition.

mod parse;

pub use parse::{parse_network, ParseError, ParseErrorKind};

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Upper bound on states per automaton. Acyclic local path enumeration is
/// worst-case exponential in this number, so it is kept small.
pub const MAX_STATES_PER_AUTOMATON: u32 = 64;

/// One local state of one automaton. States are 1-based.
///
/// The derived ordering (automaton declaration index, then state number) is
/// the total order used by every set-of-sets operation downstream.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LocalState {
    pub automaton: usize,
    pub state: u32,
}

/// A global synchronization label with its pre- and postcondition.
///
/// Both sets contain at most one local state per automaton, and touch the same
/// automata: each local transition `i -> j` on this label contributes `i` to
/// the precondition and `j` to the postcondition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TransitionLabel {
    pub name: String,
    /// Sorted by the `LocalState` total order.
    pub precond: Vec<LocalState>,
    /// Sorted by the `LocalState` total order.
    pub postcond: Vec<LocalState>,
}

/// A local transition `from --label--> to` of one automaton.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct LocalTransition {
    pub automaton: usize,
    pub from: u32,
    pub label: usize,
    pub to: u32,
}

#[derive(Clone, PartialEq, Eq, Debug)]
struct Automaton {
    name: String,
    states: u32,
}

/// A network of finite automata synchronizing on shared labels.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AutomataNetwork {
    automata: Vec<Automaton>,
    labels: Vec<TransitionLabel>,
    transitions: Vec<LocalTransition>,
    name_index: HashMap<String, usize>,
    /// `offsets[a]` is the dense code of local state `(a, 1)`.
    offsets: Vec<u32>,
}

/// Per-automaton non-empty set of admissible initial local states.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Context {
    /// Indexed by automaton; each entry sorted ascending and non-empty.
    sets: Vec<Vec<u32>>,
}

/// One local state per automaton, in declaration order. Entries are 1-based.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GlobalState(pub Vec<u32>);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DomainError {
    #[error("unknown local state")]
    UnknownLocalState,
    #[error("label `{0}` is not enabled")]
    LabelNotEnabled(String),
    #[error("malformed global state")]
    MalformedState,
}

impl AutomataNetwork {
    fn new(automata: Vec<Automaton>, labels: Vec<TransitionLabel>, transitions: Vec<LocalTransition>) -> Self {
        let name_index = automata
            .iter()
            .enumerate()
            .map(|(i, a)| (a.name.clone(), i))
            .collect();
        let mut offsets = Vec::with_capacity(automata.len());
        let mut off = 0;
        for a in &automata {
            offsets.push(off);
            off += a.states;
        }
        AutomataNetwork { automata, labels, transitions, name_index, offsets }
    }

    pub fn automaton_count(&self) -> usize {
        self.automata.len()
    }

    pub fn automaton_name(&self, a: usize) -> &str {
        &self.automata[a].name
    }

    pub fn automaton_index(&self, name: &str) -> Option<usize> {
        self.name_index.get(name).copied()
    }

    /// Number of local states of automaton `a`.
    pub fn state_count(&self, a: usize) -> u32 {
        self.automata[a].states
    }

    pub fn labels(&self) -> &[TransitionLabel] {
        &self.labels
    }

    pub fn label_index(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l.name == name)
    }

    pub fn transitions(&self) -> &[LocalTransition] {
        &self.transitions
    }

    pub fn transitions_of(&self, a: usize) -> impl Iterator<Item = &LocalTransition> {
        self.transitions.iter().filter(move |t| t.automaton == a)
    }

    /// Total number of local states, all automata together.
    pub fn local_state_count(&self) -> u32 {
        self.offsets.last().map_or(0, |o| o + self.automata.last().unwrap().states)
    }

    pub fn contains(&self, ls: LocalState) -> bool {
        ls.automaton < self.automata.len()
            && ls.state >= 1
            && ls.state <= self.automata[ls.automaton].states
    }

    /// Dense code of a local state under the global total order.
    pub fn code_of(&self, ls: LocalState) -> u32 {
        debug_assert!(self.contains(ls));
        self.offsets[ls.automaton] + ls.state - 1
    }

    pub fn local_state_of_code(&self, code: u32) -> LocalState {
        let automaton = match self.offsets.binary_search(&code) {
            Ok(a) => a,
            Err(a) => a - 1,
        };
        LocalState { automaton, state: code - self.offsets[automaton] + 1 }
    }

    /// All local states in the global total order.
    pub fn local_states(&self) -> impl Iterator<Item = LocalState> + '_ {
        self.automata.iter().enumerate().flat_map(|(a, aut)| {
            (1..=aut.states).map(move |state| LocalState { automaton: a, state })
        })
    }

    /// Renders a local state as `name=i`.
    pub fn display_local_state(&self, ls: LocalState) -> String {
        format!("{}={}", self.automata[ls.automaton].name, ls.state)
    }

    /// Parses a `name=i` reference against this network.
    pub fn lookup_local_state(&self, text: &str) -> Option<LocalState> {
        let (name, state) = text.split_once('=')?;
        let a = self.automaton_index(name.trim())?;
        let state: u32 = state.trim().parse().ok()?;
        let ls = LocalState { automaton: a, state };
        self.contains(ls).then_some(ls)
    }

    /// The network where all local states of `ls` are disabled: every label
    /// whose precondition intersects `ls` is removed, with its transitions.
    pub fn disable(&self, ls: &[LocalState]) -> Result<AutomataNetwork, DomainError> {
        if ls.iter().any(|&l| !self.contains(l)) {
            return Err(DomainError::UnknownLocalState);
        }
        let keep: Vec<bool> = self
            .labels
            .iter()
            .map(|label| !label.precond.iter().any(|p| ls.contains(p)))
            .collect();
        let mut remap = vec![usize::MAX; self.labels.len()];
        let mut labels = Vec::new();
        for (i, label) in self.labels.iter().enumerate() {
            if keep[i] {
                remap[i] = labels.len();
                labels.push(label.clone());
            }
        }
        let transitions = self
            .transitions
            .iter()
            .filter(|t| keep[t.label])
            .map(|t| LocalTransition { label: remap[t.label], ..*t })
            .collect();
        Ok(AutomataNetwork::new(self.automata.clone(), labels, transitions))
    }

    pub fn is_valid_state(&self, s: &GlobalState) -> bool {
        s.0.len() == self.automata.len()
            && s.0.iter().zip(&self.automata).all(|(&x, a)| x >= 1 && x <= a.states)
    }

    /// Labels enabled in `s`: every local state of the precondition is present.
    pub fn enabled_labels(&self, s: &GlobalState) -> Result<Vec<usize>, DomainError> {
        if !self.is_valid_state(s) {
            return Err(DomainError::MalformedState);
        }
        Ok(self
            .labels
            .iter()
            .enumerate()
            .filter(|(_, l)| l.precond.iter().all(|p| s.0[p.automaton] == p.state))
            .map(|(i, _)| i)
            .collect())
    }

    /// Fires label `label` in `s`. Touched automata move to the postcondition
    /// state, the others keep their local state.
    pub fn step(&self, s: &GlobalState, label: usize) -> Result<GlobalState, DomainError> {
        if !self.enabled_labels(s)?.contains(&label) {
            return Err(DomainError::LabelNotEnabled(self.labels[label].name.clone()));
        }
        let mut next = s.clone();
        for p in &self.labels[label].postcond {
            next.0[p.automaton] = p.state;
        }
        Ok(next)
    }

    /// Lazily enumerates the Cartesian product of the context sets, in
    /// declaration order of automata.
    pub fn initial_states<'a>(&'a self, ctx: &'a Context) -> InitialStates<'a> {
        InitialStates { ctx, indices: vec![0; self.automata.len()], done: false }
    }

    /// Canonical textual form; `parse_network` on the output reproduces the
    /// network and context exactly.
    pub fn to_document(&self, ctx: &Context) -> String {
        let mut out = String::new();
        for a in &self.automata {
            out.push_str(&format!("automaton {} : {}\n", a.name, a.states));
        }
        for t in &self.transitions {
            out.push_str(&format!(
                "{} {} -> {} on {}\n",
                self.automata[t.automaton].name, t.from, t.to, self.labels[t.label].name
            ));
        }
        for (a, aut) in self.automata.iter().enumerate() {
            let states: Vec<String> = ctx.states(a).iter().map(u32::to_string).collect();
            out.push_str(&format!("init {} in {{{}}}\n", aut.name, states.join(",")));
        }
        out
    }
}

impl Context {
    /// Builds a context; each automaton must map to a non-empty set of valid
    /// states.
    pub fn new(net: &AutomataNetwork, sets: Vec<Vec<u32>>) -> Result<Context, DomainError> {
        if sets.len() != net.automaton_count() {
            return Err(DomainError::MalformedState);
        }
        let mut normalized = Vec::with_capacity(sets.len());
        for (a, mut states) in sets.into_iter().enumerate() {
            states.sort_unstable();
            states.dedup();
            if states.is_empty() || states.iter().any(|&i| i < 1 || i > net.state_count(a)) {
                return Err(DomainError::UnknownLocalState);
            }
            normalized.push(states);
        }
        Ok(Context { sets: normalized })
    }

    pub fn states(&self, a: usize) -> &[u32] {
        &self.sets[a]
    }

    pub fn automaton_count(&self) -> usize {
        self.sets.len()
    }

    pub fn admits(&self, ls: LocalState) -> bool {
        self.sets[ls.automaton].contains(&ls.state)
    }

    pub fn state_count(&self) -> u128 {
        self.sets.iter().map(|s| s.len() as u128).product()
    }
}

/// Odometer over the per-automaton context sets.
pub struct InitialStates<'a> {
    ctx: &'a Context,
    indices: Vec<usize>,
    done: bool,
}

impl Iterator for InitialStates<'_> {
    type Item = GlobalState;

    fn next(&mut self) -> Option<GlobalState> {
        if self.done {
            return None;
        }
        let state = GlobalState(
            self.indices
                .iter()
                .enumerate()
                .map(|(a, &i)| self.ctx.sets[a][i])
                .collect(),
        );
        let mut pos = self.indices.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.indices[pos] += 1;
            if self.indices[pos] < self.ctx.sets[pos].len() {
                break;
            }
            self.indices[pos] = 0;
        }
        Some(state)
    }
}

impl fmt::Display for GlobalState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::EX1;

    fn ex1() -> (AutomataNetwork, Context) {
        parse_network(EX1).expect("fixture parses")
    }

    /// The fixture context with `d` started in state 2 instead of 1.
    fn ctx_d2(net: &AutomataNetwork) -> Context {
        Context::new(net, vec![vec![1], vec![1], vec![1, 2], vec![2]]).unwrap()
    }

    fn ls(net: &AutomataNetwork, text: &str) -> LocalState {
        net.lookup_local_state(text).unwrap()
    }

    fn label_names(net: &AutomataNetwork) -> Vec<&str> {
        net.labels().iter().map(|l| l.name.as_str()).collect()
    }

    #[test]
    fn parses_minimal_document() {
        let doc = "automaton a : 2\na 1 -> 2 on l\ninit a in {1}\n";
        let (net, ctx) = parse_network(doc).unwrap();
        assert_eq!(net.automaton_count(), 1);
        assert_eq!(net.state_count(0), 2);
        assert_eq!(net.labels().len(), 1);
        assert_eq!(ctx.states(0), &[1]);
    }

    #[test]
    fn parses_example_network() {
        let (net, ctx) = ex1();
        assert_eq!(net.automaton_count(), 4);
        assert_eq!(net.labels().len(), 6);
        assert_eq!(net.transitions().len(), 12);
        assert_eq!(ctx.states(2), &[1, 2]);
    }

    #[test]
    fn rejects_empty_context_set() {
        let doc = "automaton a : 2\na 1 -> 2 on l\ninit a in {}\n";
        let err = parse_network(doc).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::EmptyContext);
    }

    #[test]
    fn disable_empty_is_identity() {
        let (net, _) = ex1();
        assert_eq!(net.disable(&[]).unwrap(), net);
    }

    #[test]
    fn disable_removes_labels_with_touched_precondition() {
        let (net, _) = ex1();
        let d = net.disable(&[ls(&net, "b=1")]).unwrap();
        assert_eq!(label_names(&d), vec!["l3", "l1", "l4"]);

        let d = net.disable(&[ls(&net, "c=2"), ls(&net, "d=2")]).unwrap();
        assert_eq!(label_names(&d), vec!["l2", "l1", "l4", "l6"]);
    }

    #[test]
    fn disable_rejects_unknown_local_state() {
        let (net, _) = ex1();
        let bad = LocalState { automaton: 0, state: 9 };
        assert_eq!(net.disable(&[bad]), Err(DomainError::UnknownLocalState));
    }

    #[test]
    fn enabled_labels_checks_full_precondition() {
        let (net, _) = ex1();
        let names = |s: &GlobalState| -> Vec<String> {
            net.enabled_labels(s)
                .unwrap()
                .into_iter()
                .map(|i| net.labels()[i].name.clone())
                .collect()
        };
        assert_eq!(names(&GlobalState(vec![1, 1, 1, 2])), vec!["l2", "l5"]);
        assert_eq!(names(&GlobalState(vec![1, 1, 2, 2])), vec!["l2", "l5"]);
        // A deadlock state: a=3 blocks l1/l2, b=2 blocks l5/l6, c=2 blocks l4.
        assert_eq!(names(&GlobalState(vec![3, 2, 2, 2])), Vec::<String>::new());
    }

    #[test]
    fn step_applies_postcondition_and_keeps_rest() {
        let (net, _) = ex1();
        let s = GlobalState(vec![1, 1, 1, 2]);
        let l5 = net.label_index("l5").unwrap();
        assert_eq!(net.step(&s, l5).unwrap(), GlobalState(vec![1, 3, 1, 1]));
        let l2 = net.label_index("l2").unwrap();
        assert_eq!(net.step(&s, l2).unwrap(), GlobalState(vec![2, 2, 1, 2]));
        let l1 = net.label_index("l1").unwrap();
        assert_eq!(
            net.step(&s, l1),
            Err(DomainError::LabelNotEnabled("l1".into()))
        );
    }

    #[test]
    fn self_loop_step_is_identity() {
        let doc = "automaton a : 1\na 1 -> 1 on l\ninit a in {1}\n";
        let (net, _) = parse_network(doc).unwrap();
        let s = GlobalState(vec![1]);
        assert_eq!(net.step(&s, 0).unwrap(), s);
    }

    #[test]
    fn initial_states_enumerates_context_product() {
        let (net, _) = ex1();
        let ctx = ctx_d2(&net);
        let states: Vec<GlobalState> = net.initial_states(&ctx).collect();
        assert_eq!(
            states,
            vec![GlobalState(vec![1, 1, 1, 2]), GlobalState(vec![1, 1, 2, 2])]
        );

        let one = Context::new(&net, vec![vec![1], vec![3], vec![2], vec![1]]).unwrap();
        assert_eq!(net.initial_states(&one).count(), 1);
    }

    #[test]
    fn initial_states_cardinality_is_product() {
        let doc = "automaton a : 2\nautomaton b : 2\nautomaton c : 2\n\
                   a 1 -> 2 on l\ninit a in {1,2}\ninit b in {1,2}\ninit c in {1,2}\n";
        let (net, ctx) = parse_network(doc).unwrap();
        assert_eq!(net.initial_states(&ctx).count(), 8);
        assert_eq!(ctx.state_count(), 8);
    }

    #[test]
    fn serialize_round_trips() {
        let (net, ctx) = ex1();
        let doc = net.to_document(&ctx);
        let (net2, ctx2) = parse_network(&doc).unwrap();
        assert_eq!(net, net2);
        assert_eq!(ctx, ctx2);
        assert_eq!(net2.to_document(&ctx2), doc);
    }

    #[test]
    fn local_state_codes_follow_declaration_order() {
        let (net, _) = ex1();
        let all: Vec<u32> = net.local_states().map(|l| net.code_of(l)).collect();
        assert_eq!(all, (0..10).collect::<Vec<u32>>());
        for l in net.local_states() {
            assert_eq!(net.local_state_of_code(net.code_of(l)), l);
        }
        assert_eq!(net.display_local_state(net.local_state_of_code(5)), "b=3");
    }
}
