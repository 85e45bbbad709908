//! Elementary cycles of underlying digraphs and the cycle-based orderings.
//!
//! Enumeration follows Johnson's algorithm: for each start vertex `s` in
//! increasing order, circuits through `s` are searched inside the strong
//! component of `s` in the subgraph induced by the vertices `>= s`, with the
//! blocking lists that keep the search output-polynomial. Self-loops are
//! length-one cycles.

use crate::automata::{Digraph, Efa, State};
use crate::error::{Error, Result};
use crate::ordering::{select_dm, select_min_by_key, OrderingStrategy};
use crate::Size;

pub const DEFAULT_CYCLE_CAP: u64 = 1_000_000;

/// All elementary cycles of a digraph, each listed from its smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleSet {
    pub cycles: Vec<Vec<usize>>,
    /// Number of cycles through each vertex.
    pub per_state_count: Vec<u64>,
}

/// Calls `visit` once per elementary cycle. Stops with
/// [`Error::CycleCapExceeded`] as soon as more than `cap` cycles are found.
/// Returns the number of cycles.
pub fn for_each_cycle<F>(g: &Digraph, cap: u64, mut visit: F) -> Result<u64>
where
    F: FnMut(&[usize]),
{
    let n = g.vertex_count();
    let mut found = 0u64;
    for s in 0..n {
        let keep: Vec<bool> = (0..n).map(|v| v >= s).collect();
        let (sub, new_to_old) = g.induced(&keep);
        let comp = sub.strong_components();
        // s is vertex 0 of the subgraph
        let members: Vec<bool> = comp.iter().map(|&c| c == comp[0]).collect();
        if !members[1..].iter().any(|&m| m) && !sub.has_arc(0, 0) {
            continue;
        }
        let adj: Vec<Vec<usize>> = (0..sub.vertex_count())
            .map(|v| {
                if members[v] {
                    sub.successors(v).filter(|&w| members[w]).collect()
                } else {
                    Vec::new()
                }
            })
            .collect();
        let mut search = Circuits {
            adj: &adj,
            blocked: vec![false; adj.len()],
            blocked_by: vec![Vec::new(); adj.len()],
            stack: Vec::new(),
            found: &mut found,
            cap,
            overflow: false,
            visit: &mut |cycle: &[usize]| {
                let original: Vec<usize> = cycle.iter().map(|&v| new_to_old[v]).collect();
                visit(&original);
            },
        };
        search.circuit(0);
        if search.overflow {
            return Err(Error::CycleCapExceeded { found, cap });
        }
    }
    Ok(found)
}

struct Circuits<'a, F: FnMut(&[usize])> {
    adj: &'a [Vec<usize>],
    blocked: Vec<bool>,
    blocked_by: Vec<Vec<usize>>,
    stack: Vec<usize>,
    found: &'a mut u64,
    cap: u64,
    overflow: bool,
    visit: &'a mut F,
}

impl<F: FnMut(&[usize])> Circuits<'_, F> {
    fn circuit(&mut self, v: usize) -> bool {
        let mut closed = false;
        self.stack.push(v);
        self.blocked[v] = true;
        for i in 0..self.adj[v].len() {
            if self.overflow {
                break;
            }
            let w = self.adj[v][i];
            if w == 0 {
                if *self.found >= self.cap {
                    self.overflow = true;
                    break;
                }
                *self.found += 1;
                (self.visit)(&self.stack);
                closed = true;
            } else if !self.blocked[w] && self.circuit(w) {
                closed = true;
            }
        }
        if closed {
            self.unblock(v);
        } else {
            for i in 0..self.adj[v].len() {
                let w = self.adj[v][i];
                if !self.blocked_by[w].contains(&v) {
                    self.blocked_by[w].push(v);
                }
            }
        }
        self.stack.pop();
        closed
    }

    fn unblock(&mut self, u: usize) {
        self.blocked[u] = false;
        while let Some(w) = self.blocked_by[u].pop() {
            if self.blocked[w] {
                self.unblock(w);
            }
        }
    }
}

pub fn elementary_cycles(g: &Digraph) -> Result<CycleSet> {
    elementary_cycles_capped(g, DEFAULT_CYCLE_CAP)
}

pub fn elementary_cycles_capped(g: &Digraph, cap: u64) -> Result<CycleSet> {
    let mut cycles = Vec::new();
    let mut per_state_count = vec![0u64; g.vertex_count()];
    for_each_cycle(g, cap, |c| {
        c.iter().for_each(|&v| per_state_count[v] += 1);
        cycles.push(c.to_vec());
    })?;
    Ok(CycleSet {
        cycles,
        per_state_count,
    })
}

/// Number of elementary cycles through each vertex, without storing cycles.
pub fn cycle_counts(g: &Digraph, cap: u64) -> Result<Vec<u64>> {
    let mut counts = vec![0u64; g.vertex_count()];
    for_each_cycle(g, cap, |c| c.iter().for_each(|&v| counts[v] += 1))?;
    Ok(counts)
}

/// Per-state sums, over the elementary cycles through the state, of the
/// alphabetic sizes of the labels along each cycle. Indexed by slot number.
pub fn cd_weights(efa: &Efa, cap: u64) -> Result<Vec<Size>> {
    let g = efa.underlying_digraph();
    let mut weights: Vec<Size> = vec![0; g.vertex_count()];
    for_each_cycle(&g, cap, |c| {
        let total = (0..c.len())
            .map(|i| {
                let (p, q) = (c[i], c[(i + 1) % c.len()]);
                efa.label(p, q).map_or(0, |r| r.alphabetic_size())
            })
            .fold(0 as Size, Size::saturating_add);
        for &v in c {
            weights[v] = weights[v].saturating_add(total);
        }
    })?;
    Ok(weights)
}

/// CS: eliminate by increasing number of cycles in the automaton the
/// strategy was built from. Falls back to DM when that automaton has more
/// cycles than the cap.
#[derive(Debug, Clone)]
pub struct CycleStatic {
    counts: Option<Vec<u64>>,
}

impl CycleStatic {
    pub fn new(efa: &Efa) -> Self {
        Self::with_cap(efa, DEFAULT_CYCLE_CAP)
    }

    pub fn with_cap(efa: &Efa, cap: u64) -> Self {
        CycleStatic {
            counts: cycle_counts(&efa.underlying_digraph(), cap).ok(),
        }
    }

    pub fn counts(&self) -> Option<&[u64]> {
        self.counts.as_deref()
    }
}

impl OrderingStrategy for CycleStatic {
    fn name(&self) -> &str {
        "cs"
    }

    fn select(&mut self, efa: &Efa, eliminable: &[State]) -> Result<State> {
        match &self.counts {
            // states added after construction lie on no cycle
            Some(counts) => select_min_by_key(eliminable, |q| counts.get(q).copied().unwrap_or(0)),
            None => select_dm(efa, eliminable),
        }
    }

    fn fell_back(&self) -> bool {
        self.counts.is_none()
    }
}

/// CD: before every elimination, weigh each state by [`cd_weights`] of the
/// current automaton and take the lightest. A step whose enumeration hits
/// the cap uses DM weights instead.
#[derive(Debug, Clone)]
pub struct CycleDynamic {
    cap: u64,
    fell_back: bool,
}

impl CycleDynamic {
    pub fn new() -> Self {
        Self::with_cap(DEFAULT_CYCLE_CAP)
    }

    pub fn with_cap(cap: u64) -> Self {
        CycleDynamic {
            cap,
            fell_back: false,
        }
    }
}

impl Default for CycleDynamic {
    fn default() -> Self {
        Self::new()
    }
}

impl OrderingStrategy for CycleDynamic {
    fn name(&self) -> &str {
        "cd"
    }

    fn select(&mut self, efa: &Efa, eliminable: &[State]) -> Result<State> {
        match cd_weights(efa, self.cap) {
            Ok(w) => select_min_by_key(eliminable, |q| w[q]),
            Err(Error::CycleCapExceeded { .. }) => {
                self.fell_back = true;
                select_dm(efa, eliminable)
            }
            Err(e) => Err(e),
        }
    }

    fn fell_back(&self) -> bool {
        self.fell_back
    }
}
