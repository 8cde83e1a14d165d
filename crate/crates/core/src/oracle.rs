//! Exact reference implementations at desk scale: breadth-first reachability
//! over the global state space, exhaustive enumeration of minimal cut
//! N-sets, and seeded random generators for property testing.
//!
//! Global states are packed into mixed-radix integers over the per-automaton
//! state counts, so the visited set is a dense bitmap.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::an::{AutomataNetwork, Context, GlobalState, LocalState};
use crate::glc::{Glc, GlcNode, Objective, Solution};

/// Guard on the number of distinct global states an exploration may visit.
#[derive(Clone, Copy, Debug)]
pub struct ExplorationBudget {
    pub max_states: usize,
}

impl Default for ExplorationBudget {
    fn default() -> ExplorationBudget {
        ExplorationBudget { max_states: 1_000_000 }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("exploration budget of {max_states} states exceeded")]
pub struct BudgetExceeded {
    pub max_states: usize,
}

/// Mixed-radix packing of global states.
struct StateCodec {
    radices: Vec<u64>,
    size: u64,
}

impl StateCodec {
    fn new(net: &AutomataNetwork) -> StateCodec {
        let radices: Vec<u64> = (0..net.automaton_count())
            .map(|a| net.state_count(a) as u64)
            .collect();
        let size = radices.iter().product();
        StateCodec { radices, size }
    }

    fn encode(&self, s: &GlobalState) -> u64 {
        let mut code = 0;
        for (x, r) in s.0.iter().zip(&self.radices) {
            code = code * r + (*x as u64 - 1);
        }
        code
    }

    fn decode(&self, mut code: u64) -> GlobalState {
        let mut out = vec![0u32; self.radices.len()];
        for (slot, r) in out.iter_mut().zip(&self.radices).rev() {
            *slot = (code % r) as u32 + 1;
            code /= r;
        }
        GlobalState(out)
    }
}

fn bfs(
    net: &AutomataNetwork,
    ctx: &Context,
    target: LocalState,
    budget: ExplorationBudget,
    want_trace: bool,
) -> Result<Option<Vec<usize>>, BudgetExceeded> {
    debug_assert!(net.contains(target));
    let codec = StateCodec::new(net);
    let mut visited = vec![false; codec.size as usize];
    // parent[code] = (predecessor code, label fired), for witness extraction.
    let mut parent: Vec<(u64, usize)> = if want_trace {
        vec![(u64::MAX, usize::MAX); codec.size as usize]
    } else {
        Vec::new()
    };
    let mut queue = VecDeque::new();
    let mut count = 0usize;

    let push = |code: u64,
                    visited: &mut Vec<bool>,
                    queue: &mut VecDeque<u64>,
                    count: &mut usize|
     -> Result<(), BudgetExceeded> {
        if !visited[code as usize] {
            visited[code as usize] = true;
            *count += 1;
            if *count > budget.max_states {
                return Err(BudgetExceeded { max_states: budget.max_states });
            }
            queue.push_back(code);
        }
        Ok(())
    };

    for s in net.initial_states(ctx) {
        push(codec.encode(&s), &mut visited, &mut queue, &mut count)?;
    }

    while let Some(code) = queue.pop_front() {
        let s = codec.decode(code);
        if s.0[target.automaton] == target.state {
            if !want_trace {
                return Ok(Some(Vec::new()));
            }
            let mut labels = Vec::new();
            let mut at = code;
            while parent[at as usize].0 != u64::MAX {
                let (prev, label) = parent[at as usize];
                labels.push(label);
                at = prev;
            }
            labels.reverse();
            return Ok(Some(labels));
        }
        for label in net.enabled_labels(&s).expect("explored states are valid") {
            let next = net.step(&s, label).expect("label is enabled");
            let next_code = codec.encode(&next);
            let fresh = !visited[next_code as usize];
            push(next_code, &mut visited, &mut queue, &mut count)?;
            if want_trace && fresh {
                parent[next_code as usize] = (code, label);
            }
        }
    }
    Ok(None)
}

/// Whether some reachable global state puts the target's automaton in the
/// target state.
pub fn reachable(
    net: &AutomataNetwork,
    ctx: &Context,
    target: LocalState,
    budget: ExplorationBudget,
) -> Result<bool, BudgetExceeded> {
    bfs(net, ctx, target, budget, false).map(|w| w.is_some())
}

/// Like [`reachable`], with a shortest witness as a label sequence starting
/// from one of the initial states.
pub fn reachable_with_trace(
    net: &AutomataNetwork,
    ctx: &Context,
    target: LocalState,
    budget: ExplorationBudget,
) -> Result<Option<Vec<usize>>, BudgetExceeded> {
    bfs(net, ctx, target, budget, true)
}

/// Whether disabling `kls` makes `target` unreachable.
///
/// Disabling removes transitions conditioned on the disabled states, not
/// transitions producing them, so a set containing the target itself is
/// judged directly: disabling the target state cuts it exactly when the
/// context does not already admit it.
pub fn is_cut_set(
    net: &AutomataNetwork,
    ctx: &Context,
    target: LocalState,
    kls: &[LocalState],
    budget: ExplorationBudget,
) -> Result<bool, BudgetExceeded> {
    if kls.contains(&target) {
        return Ok(!ctx.admits(target));
    }
    let disabled = net.disable(kls).expect("cut-set members are valid local states");
    Ok(!reachable(&disabled, ctx, target, budget)?)
}

/// All inclusion-minimal subsets of `obs` of size at most `n` that cut
/// `target`, by exhaustive testing in increasing cardinality. Sursets of
/// found cut sets are skipped without testing.
pub fn enumerate_cut_nsets(
    net: &AutomataNetwork,
    ctx: &Context,
    target: LocalState,
    obs: &[LocalState],
    n: usize,
    budget: ExplorationBudget,
) -> Result<Vec<Vec<LocalState>>, BudgetExceeded> {
    if is_cut_set(net, ctx, target, &[], budget)? {
        return Ok(vec![Vec::new()]);
    }
    let mut obs: Vec<LocalState> = obs.to_vec();
    obs.sort_unstable();
    obs.dedup();
    let mut found: Vec<Vec<LocalState>> = Vec::new();
    let mut candidate: Vec<usize> = Vec::new();
    for size in 1..=n.min(obs.len()) {
        // Index combinations of `obs` of the given size, lexicographic.
        candidate.clear();
        candidate.extend(0..size);
        loop {
            let kls: Vec<LocalState> = candidate.iter().map(|&i| obs[i]).collect();
            let dominated = found.iter().any(|f| f.iter().all(|l| kls.contains(l)));
            if !dominated && is_cut_set(net, ctx, target, &kls, budget)? {
                found.push(kls);
            }
            // Advance the combination odometer.
            let mut i = size;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if candidate[i] < obs.len() - (size - i) {
                    candidate[i] += 1;
                    for j in i + 1..size {
                        candidate[j] = candidate[j - 1] + 1;
                    }
                    break;
                }
                if i == 0 {
                    candidate.clear();
                }
            }
            if candidate.is_empty() {
                break;
            }
        }
    }
    found.sort();
    Ok(found)
}

/// Parameters of the seeded random network generator.
#[derive(Clone, Copy, Debug)]
pub struct RandomNetworkSpec {
    pub automata: usize,
    pub states_per_automaton: u32,
    pub labels: usize,
    pub max_automata_per_label: usize,
    pub seed: u64,
}

/// Generates a reproducible random network with its context.
pub fn random_network(spec: RandomNetworkSpec) -> (AutomataNetwork, Context) {
    assert!(spec.automata >= 1 && spec.states_per_automaton >= 1);
    assert!(spec.max_automata_per_label >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut doc = String::new();
    let name = |a: usize| format!("n{a}");
    for a in 0..spec.automata {
        doc.push_str(&format!("automaton {} : {}\n", name(a), spec.states_per_automaton));
    }
    for label in 0..spec.labels {
        let width = rng.gen_range(1..=spec.max_automata_per_label.min(spec.automata));
        let mut chosen: Vec<usize> = (0..spec.automata).collect();
        for i in 0..width {
            let j = rng.gen_range(i..chosen.len());
            chosen.swap(i, j);
        }
        for &a in &chosen[..width] {
            let from = rng.gen_range(1..=spec.states_per_automaton);
            let to = rng.gen_range(1..=spec.states_per_automaton);
            doc.push_str(&format!("{} {from} -> {to} on l{label}\n", name(a)));
        }
    }
    for a in 0..spec.automata {
        let mut states: Vec<u32> =
            (1..=spec.states_per_automaton).filter(|_| rng.gen_bool(0.5)).collect();
        if states.is_empty() {
            states.push(rng.gen_range(1..=spec.states_per_automaton));
        }
        let rendered: Vec<String> = states.iter().map(u32::to_string).collect();
        doc.push_str(&format!("init {} in {{{}}}\n", name(a), rendered.join(",")));
    }
    crate::an::parse_network(&doc).expect("generated document is well formed")
}

/// Parameters of the synthetic benchmark graph generator.
#[derive(Clone, Copy, Debug)]
pub struct SyntheticGlcSpec {
    pub automata: usize,
    pub states_per_automaton: u32,
    /// Objectives attached to each local-state node, capped by the state
    /// count.
    pub objectives_per_state: usize,
    pub solutions_per_objective: usize,
    pub max_locals_per_solution: usize,
    pub seed: u64,
}

/// Builds a large graph with realistic shape directly, bypassing closure
/// construction, together with a network carrying its local states.
/// Every local-state node gets at least one objective; some solutions are
/// empty, providing leaves. Solutions only reference local states of lower
/// code, so the graph is acyclic and ranks strictly decrease along edges.
pub fn synthetic_glc(spec: SyntheticGlcSpec) -> (AutomataNetwork, Context, Glc) {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut doc = String::new();
    for a in 0..spec.automata {
        doc.push_str(&format!("automaton n{a} : {}\n", spec.states_per_automaton));
        let all: Vec<String> = (1..=spec.states_per_automaton).map(|s| s.to_string()).collect();
        doc.push_str(&format!("init n{a} in {{{}}}\n", all.join(",")));
    }
    let (net, ctx) = crate::an::parse_network(&doc).expect("generated document is well formed");

    let locals: Vec<LocalState> = net.local_states().collect();
    let mut nodes: Vec<GlcNode> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let ls_id: Vec<usize> = locals
        .iter()
        .map(|&ls| {
            nodes.push(GlcNode::Ls(ls));
            nodes.len() - 1
        })
        .collect();

    for (i, &ls) in locals.iter().enumerate() {
        let n_obj = spec
            .objectives_per_state
            .clamp(1, spec.states_per_automaton as usize);
        let mut froms: Vec<u32> = (1..=spec.states_per_automaton).collect();
        for k in 0..n_obj {
            let j = rng.gen_range(k..froms.len());
            froms.swap(k, j);
        }
        for &from in &froms[..n_obj] {
            let objective =
                Objective { automaton: ls.automaton, from_state: from, to_state: ls.state };
            let obj_id = nodes.len();
            nodes.push(GlcNode::Obj(objective));
            edges.push((ls_id[i], obj_id));
            let mut seen: Vec<Vec<LocalState>> = Vec::new();
            for s in 0..spec.solutions_per_objective {
                // The first solution of every third objective is empty,
                // giving the graph environment leaves.
                let width = if s == 0 && obj_id % 3 == 0 {
                    0
                } else {
                    rng.gen_range(1..=spec.max_locals_per_solution)
                };
                let mut members: Vec<LocalState> = (0..width)
                    .filter_map(|_| {
                        if i == 0 {
                            return None;
                        }
                        let m = locals[rng.gen_range(0..i)];
                        (m.automaton != ls.automaton).then_some(m)
                    })
                    .collect();
                members.sort_unstable();
                members.dedup();
                if seen.contains(&members) {
                    continue;
                }
                seen.push(members.clone());
                let sol_id = nodes.len();
                nodes.push(GlcNode::Sol(Solution { objective, locals: members.clone() }));
                edges.push((obj_id, sol_id));
                for m in members {
                    edges.push((sol_id, ls_id[net.code_of(m) as usize]));
                }
            }
        }
    }

    let omega = locals.clone();
    (net, ctx, Glc::from_parts(nodes, &edges, omega))
}
