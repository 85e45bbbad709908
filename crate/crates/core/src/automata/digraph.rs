use std::collections::BTreeSet;

/// A directed graph on vertices `0..vertex_count` without parallel arcs.
/// Loops are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    succ: Vec<BTreeSet<usize>>,
}

impl Digraph {
    pub fn new(vertex_count: usize) -> Self {
        Digraph {
            succ: vec![BTreeSet::new(); vertex_count],
        }
    }

    /// Builds a digraph from arcs; repeated arcs collapse into one.
    ///
    /// # Panics
    /// If an arc endpoint is not below `vertex_count`.
    pub fn from_arcs<I: IntoIterator<Item = (usize, usize)>>(vertex_count: usize, arcs: I) -> Self {
        let mut g = Digraph::new(vertex_count);
        for (u, v) in arcs {
            g.add_arc(u, v);
        }
        g
    }

    pub fn add_arc(&mut self, u: usize, v: usize) {
        assert!(v < self.succ.len(), "arc target {v} out of range");
        self.succ[u].insert(v);
    }

    pub fn vertex_count(&self) -> usize {
        self.succ.len()
    }

    pub fn arc_count(&self) -> usize {
        self.succ.iter().map(BTreeSet::len).sum()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(u, s)| s.iter().map(move |&v| (u, v)))
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.succ[u].contains(&v)
    }

    pub fn successors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.succ[u].iter().copied()
    }

    /// Number of vertices adjacent from `v`, `v` itself included when it has a loop.
    pub fn outdegree(&self, v: usize) -> usize {
        self.succ[v].len()
    }

    /// Number of vertices adjacent to `v`, `v` itself included when it has a loop.
    pub fn indegree(&self, v: usize) -> usize {
        self.succ.iter().filter(|s| s.contains(&v)).count()
    }

    pub fn reverse(&self) -> Digraph {
        Digraph::from_arcs(self.vertex_count(), self.arcs().map(|(u, v)| (v, u)))
    }

    /// Vertices reachable from `start` by paths avoiding `avoid`. `start`
    /// itself is reachable unless it is the avoided vertex.
    pub fn reachable_from(&self, start: usize, avoid: Option<usize>) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        if avoid == Some(start) {
            return seen;
        }
        if let Some(a) = avoid {
            seen[a] = true;
        }
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &v in &self.succ[u] {
                if !std::mem::replace(&mut seen[v], true) {
                    stack.push(v);
                }
            }
        }
        if let Some(a) = avoid {
            seen[a] = false;
        }
        seen
    }

    pub fn reachable_from_set<I: IntoIterator<Item = usize>>(&self, starts: I) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        let mut stack: Vec<usize> = Vec::new();
        for s in starts {
            if !std::mem::replace(&mut seen[s], true) {
                stack.push(s);
            }
        }
        while let Some(u) = stack.pop() {
            for &v in &self.succ[u] {
                if !std::mem::replace(&mut seen[v], true) {
                    stack.push(v);
                }
            }
        }
        seen
    }

    /// Strongly connected components (Tarjan). Returns the component index
    /// of every vertex; components are numbered in reverse topological order.
    pub fn strong_components(&self) -> Vec<usize> {
        struct Tarjan<'a> {
            g: &'a Digraph,
            index: Vec<Option<usize>>,
            low: Vec<usize>,
            on_stack: Vec<bool>,
            stack: Vec<usize>,
            comp: Vec<usize>,
            next_index: usize,
            next_comp: usize,
        }
        impl Tarjan<'_> {
            fn visit(&mut self, v: usize) {
                self.index[v] = Some(self.next_index);
                self.low[v] = self.next_index;
                self.next_index += 1;
                self.stack.push(v);
                self.on_stack[v] = true;
                for w in self.g.successors(v) {
                    match self.index[w] {
                        None => {
                            self.visit(w);
                            self.low[v] = self.low[v].min(self.low[w]);
                        }
                        Some(iw) if self.on_stack[w] => self.low[v] = self.low[v].min(iw),
                        _ => {}
                    }
                }
                if Some(self.low[v]) == self.index[v] {
                    loop {
                        let w = self.stack.pop().unwrap();
                        self.on_stack[w] = false;
                        self.comp[w] = self.next_comp;
                        if w == v {
                            break;
                        }
                    }
                    self.next_comp += 1;
                }
            }
        }
        let n = self.vertex_count();
        let mut t = Tarjan {
            g: self,
            index: vec![None; n],
            low: vec![0; n],
            on_stack: vec![false; n],
            stack: Vec::new(),
            comp: vec![0; n],
            next_index: 0,
            next_comp: 0,
        };
        for v in 0..n {
            if t.index[v].is_none() {
                t.visit(v);
            }
        }
        t.comp
    }

    /// Subgraph induced by the vertices with `keep[v]`, renumbered densely in
    /// increasing order. Returns the subgraph and the new-to-old vertex map.
    pub fn induced(&self, keep: &[bool]) -> (Digraph, Vec<usize>) {
        let new_to_old: Vec<usize> = (0..self.vertex_count()).filter(|&v| keep[v]).collect();
        let mut old_to_new = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in new_to_old.iter().enumerate() {
            old_to_new[v] = i;
        }
        let g = Digraph::from_arcs(
            new_to_old.len(),
            self.arcs()
                .filter(|&(u, v)| keep[u] && keep[v])
                .map(|(u, v)| (old_to_new[u], old_to_new[v])),
        );
        (g, new_to_old)
    }
}
