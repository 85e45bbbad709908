//! Bridge states and the ordering that eliminates them last.
//!
//! A bridge state is neither initial nor final, lies on every path from the
//! initial state to each final state, and is on no cycle other than its own
//! loop. The automaton then splits at the bridge into a part that ends in it
//! and a part that starts from it.

use std::collections::VecDeque;

use crate::automata::{Digraph, Efa, Nfa, State};
use crate::error::Result;
use crate::ordering::OrderingStrategy;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BridgeReport {
    /// Bridge states ordered by distance from the initial state, which is
    /// also the order in which each dominates the next.
    pub bridges: Vec<State>,
}

impl BridgeReport {
    pub fn count(&self) -> usize {
        self.bridges.len()
    }

    pub fn contains(&self, q: State) -> bool {
        self.bridges.contains(&q)
    }
}

/// Which automaton the bridge conditions are checked on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum BridgeScope {
    /// The automaton itself: its initial and final states are never bridges.
    Input,
    /// The automaton with a fresh initial state leading to the old one and a
    /// fresh final state reached from every old final state, as elimination
    /// with normalization sees it. The old initial and final states can then
    /// be bridges.
    #[default]
    Normalized,
}

impl BridgeScope {
    pub fn as_str(self) -> &'static str {
        match self {
            BridgeScope::Input => "input",
            BridgeScope::Normalized => "normalized",
        }
    }
}

/// Bridge states of a trim automaton under `scope`.
pub fn bridge_states_in(nfa: &Nfa, scope: BridgeScope) -> BridgeReport {
    match scope {
        BridgeScope::Input => bridge_states(nfa),
        BridgeScope::Normalized => {
            let n = nfa.state_count();
            let mut g = Digraph::new(n + 2);
            nfa.underlying_digraph()
                .arcs()
                .for_each(|(u, v)| g.add_arc(u, v));
            g.add_arc(n, nfa.initial());
            nfa.finals().iter().for_each(|&f| g.add_arc(f, n + 1));
            bridges_in(&g, n, &[n + 1], |q| q < n)
        }
    }
}

/// Bridge states of a trim automaton.
pub fn bridge_states(nfa: &Nfa) -> BridgeReport {
    let finals: Vec<State> = nfa.finals().iter().copied().collect();
    bridges_in(&nfa.underlying_digraph(), nfa.initial(), &finals, |_| true)
}

/// Bridge states of an EFA, over its live states.
pub fn bridge_states_efa(efa: &Efa) -> BridgeReport {
    let finals: Vec<State> = efa.finals().iter().copied().collect();
    bridges_in(&efa.underlying_digraph(), efa.initial(), &finals, |q| {
        efa.contains(q)
    })
}

fn bridges_in(
    g: &Digraph,
    initial: State,
    finals: &[State],
    live: impl Fn(State) -> bool,
) -> BridgeReport {
    let comp = g.strong_components();
    let mut comp_size = vec![0usize; g.vertex_count()];
    comp.iter().for_each(|&c| comp_size[c] += 1);
    let distance = bfs_distances(g, initial);
    let mut bridges: Vec<State> = (0..g.vertex_count())
        .filter(|&q| live(q) && q != initial && !finals.contains(&q))
        .filter(|&q| comp_size[comp[q]] == 1)
        .filter(|&q| {
            let reach = g.reachable_from(initial, Some(q));
            !finals.iter().any(|&f| reach[f])
        })
        .collect();
    bridges.sort_by_key(|&q| (distance[q], q));
    BridgeReport { bridges }
}

fn bfs_distances(g: &Digraph, start: State) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    dist[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for v in g.successors(u) {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// HW: defers the bridge states of the automaton it was built from until no
/// other state is left, choosing among the others with `inner`; bridges then
/// go in decomposition-chain order.
pub struct BridgeLast<S> {
    bridges: BridgeReport,
    inner: S,
}

impl<S: OrderingStrategy> BridgeLast<S> {
    pub fn new(efa: &Efa, inner: S) -> Self {
        BridgeLast {
            bridges: bridge_states_efa(efa),
            inner,
        }
    }

    pub fn bridges(&self) -> &BridgeReport {
        &self.bridges
    }
}

impl<S: OrderingStrategy> OrderingStrategy for BridgeLast<S> {
    fn name(&self) -> &str {
        "hw"
    }

    fn select(&mut self, efa: &Efa, eliminable: &[State]) -> Result<State> {
        let others: Vec<State> = eliminable
            .iter()
            .copied()
            .filter(|&q| !self.bridges.contains(q))
            .collect();
        if !others.is_empty() {
            return self.inner.select(efa, &others);
        }
        Ok(self
            .bridges
            .bridges
            .iter()
            .copied()
            .find(|q| eliminable.contains(q))
            .unwrap_or(eliminable[0]))
    }

    fn fell_back(&self) -> bool {
        self.inner.fell_back()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two loops joined by state 2: {0,1} -> 2 -> {3,4}; 2 has a loop.
    fn chain() -> Nfa {
        Nfa::new(
            5,
            2,
            [
                (0, 0, 1),
                (1, 0, 0),
                (1, 1, 2),
                (0, 1, 2),
                (2, 0, 2),
                (2, 1, 3),
                (3, 0, 4),
                (4, 0, 3),
            ],
            0,
            [4],
        )
        .unwrap()
    }

    #[test]
    fn decomposition_point_is_a_bridge() {
        assert_eq!(bridge_states(&chain()).bridges, vec![2]);
    }

    #[test]
    fn states_on_two_cycles_are_not_bridges() {
        // 0 -> 1 <-> 2 -> 3: everything to 3 passes 1 and 2, but they form a 2-cycle
        let nfa = Nfa::new(4, 1, [(0, 0, 1), (1, 0, 2), (2, 0, 1), (2, 0, 3)], 0, [3]).unwrap();
        assert!(bridge_states(&nfa).bridges.is_empty());
    }

    #[test]
    fn initial_and_finals_are_never_bridges() {
        let nfa = Nfa::new(3, 1, [(0, 0, 1), (1, 0, 2)], 0, [1, 2]).unwrap();
        assert!(bridge_states(&nfa).bridges.is_empty());
        let nfa = Nfa::new(3, 1, [(0, 0, 1), (1, 0, 2)], 0, [2]).unwrap();
        assert_eq!(bridge_states(&nfa).bridges, vec![1]);
    }

    #[test]
    fn bypassed_state_is_not_a_bridge() {
        // 0 -> 1 -> 3 and 0 -> 2 -> 3: final 3 reachable avoiding 1
        let nfa = Nfa::new(4, 2, [(0, 0, 1), (0, 1, 2), (1, 0, 3), (2, 0, 3)], 0, [3]).unwrap();
        assert!(bridge_states(&nfa).bridges.is_empty());
    }

    #[test]
    fn chain_of_bridges_in_dominance_order() {
        let nfa = Nfa::new(4, 1, [(0, 0, 1), (1, 0, 2), (2, 0, 3)], 0, [3]).unwrap();
        assert_eq!(bridge_states(&nfa).bridges, vec![1, 2]);
    }

    #[test]
    fn normalized_scope_admits_old_endpoints() {
        // 0 -a-> 1 -a-> 2 (final) with a loop on 2
        let nfa = Nfa::new(3, 1, [(0, 0, 1), (1, 0, 2), (2, 0, 2)], 0, [2]).unwrap();
        assert_eq!(bridge_states_in(&nfa, BridgeScope::Input).bridges, vec![1]);
        assert_eq!(
            bridge_states_in(&nfa, BridgeScope::Normalized).bridges,
            vec![0, 1, 2]
        );
        // 2 -> 0 puts every state on a cycle
        let nfa = Nfa::new(3, 1, [(0, 0, 1), (1, 0, 2), (2, 0, 0)], 0, [2]).unwrap();
        assert!(bridge_states_in(&nfa, BridgeScope::Normalized)
            .bridges
            .is_empty());
    }

    #[test]
    fn hw_defers_bridges() {
        use crate::elimination::{convert, Variant};
        use crate::ordering::DelgadoMorais;
        let efa = Efa::from_nfa(&chain());
        let mut hw = BridgeLast::new(&efa, DelgadoMorais::default());
        let r = convert(&efa, &mut hw, Variant::WithoutNormalization).unwrap();
        assert_eq!(r.order.last(), Some(&2));
        assert_eq!(r.order.len(), 3);
    }
}
