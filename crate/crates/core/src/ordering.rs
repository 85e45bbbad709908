//! Elimination-ordering strategies.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automata::{Efa, State};
use crate::elimination::{prepare, terminal_expression, Variant};
use crate::error::{Error, Result};
use crate::Size;

/// Chooses the next state to eliminate.
///
/// `eliminable` is never empty and lists the candidates in increasing
/// order. Given the same automaton, candidates and construction
/// parameters, a strategy must make the same choice.
pub trait OrderingStrategy {
    fn name(&self) -> &str;

    fn select(&mut self, efa: &Efa, eliminable: &[State]) -> Result<State>;

    /// Whether the strategy had to fall back to DM weights at some point.
    fn fell_back(&self) -> bool {
        false
    }
}

impl<S: OrderingStrategy + ?Sized> OrderingStrategy for Box<S> {
    fn name(&self) -> &str {
        (**self).name()
    }

    fn select(&mut self, efa: &Efa, eliminable: &[State]) -> Result<State> {
        (**self).select(efa, eliminable)
    }

    fn fell_back(&self) -> bool {
        (**self).fell_back()
    }
}

/// Eliminates states in a fixed sequence, skipping states that are not
/// currently eliminable.
#[derive(Debug, Clone)]
pub struct FixedOrder {
    order: Option<Vec<State>>,
}

impl FixedOrder {
    pub fn new(order: Vec<State>) -> Self {
        FixedOrder { order: Some(order) }
    }

    /// Increasing state numbers; on a canonically numbered automaton this is
    /// the order in which states occur in its canonical string.
    pub fn ascending() -> Self {
        FixedOrder { order: None }
    }
}

impl OrderingStrategy for FixedOrder {
    fn name(&self) -> &str {
        "s"
    }

    fn select(&mut self, _efa: &Efa, eliminable: &[State]) -> Result<State> {
        match &self.order {
            None => eliminable.first().copied().ok_or(Error::NothingToSelect),
            Some(order) => order
                .iter()
                .copied()
                .find(|q| eliminable.contains(q))
                .ok_or_else(|| Error::OrderExhausted {
                    remaining: eliminable.to_vec(),
                }),
        }
    }
}

/// Picks uniformly among the eliminable states; over a whole conversion this
/// yields a uniformly random elimination order.
#[derive(Debug, Clone)]
pub struct RandomOrder {
    rng: ChaCha8Rng,
}

impl RandomOrder {
    pub fn new(seed: u64) -> Self {
        RandomOrder {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl OrderingStrategy for RandomOrder {
    fn name(&self) -> &str {
        "random"
    }

    fn select(&mut self, _efa: &Efa, eliminable: &[State]) -> Result<State> {
        if eliminable.is_empty() {
            return Err(Error::NothingToSelect);
        }
        Ok(eliminable[self.rng.gen_range(0..eliminable.len())])
    }
}

/// Whether a loop on `q` counts towards its in- and outdegree in
/// [`dm_weight_with`].
///
/// [`DelgadoMorais`] counts loops by default: with that reading greedy
/// elimination reproduces the published sizes on small worked automata and
/// the published SEAwn/SEA ratios on random ones, which the other reading
/// does not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum LoopDegree {
    /// `m` and `l` count the other states only.
    Excluded,
    /// A loop makes `q` its own predecessor and successor.
    #[default]
    Included,
}

impl LoopDegree {
    pub fn as_str(self) -> &'static str {
        match self {
            LoopDegree::Excluded => "excluded",
            LoopDegree::Included => "included",
        }
    }
}

/// Delgado–Morais weight of `q` in the current automaton:
///
/// `W(q) = (l−1)·Σ|α_pq| + (m−1)·Σ|α_qr| + (m·l−1)·|α_qq|`
///
/// where the sums run over the other states and `m`, `l` are the number of
/// other states with a label into and out of `q`. Negative values, possible
/// only when `q` has no incoming or no outgoing labels, are clamped to 0.
pub fn dm_weight(efa: &Efa, q: State) -> Size {
    dm_weight_with(efa, q, LoopDegree::Excluded)
}

/// [`dm_weight`] with the degree convention made explicit.
pub fn dm_weight_with(efa: &Efa, q: State, loops: LoopDegree) -> Size {
    let (mut m, in_sum) = efa.predecessors(q).fold((0i128, 0i128), |(c, s), (_, r)| {
        (c + 1, s.saturating_add(size_i(r)))
    });
    let (mut l, out_sum) = efa.successors(q).fold((0i128, 0i128), |(c, s), (_, r)| {
        (c + 1, s.saturating_add(size_i(r)))
    });
    let looped = efa.loop_label(q).map_or(0, size_i);
    if loops == LoopDegree::Included && efa.loop_label(q).is_some() {
        m += 1;
        l += 1;
    }
    let w = (l - 1)
        .saturating_mul(in_sum)
        .saturating_add((m - 1).saturating_mul(out_sum))
        .saturating_add((m * l - 1).saturating_mul(looped));
    w.max(0) as Size
}

fn size_i(r: &crate::regex::Regex) -> i128 {
    i128::try_from(r.alphabetic_size()).unwrap_or(i128::MAX)
}

/// The eliminable state of least weight under the default [`LoopDegree`];
/// ties go to the smallest state number.
pub fn select_dm(efa: &Efa, eliminable: &[State]) -> Result<State> {
    select_dm_with(efa, eliminable, LoopDegree::default())
}

pub fn select_dm_with(efa: &Efa, eliminable: &[State], loops: LoopDegree) -> Result<State> {
    select_min_by_key(eliminable, |q| dm_weight_with(efa, q, loops))
}

pub(crate) fn select_min_by_key<K: Ord>(
    eliminable: &[State],
    mut key: impl FnMut(State) -> K,
) -> Result<State> {
    eliminable
        .iter()
        .map(|&q| (key(q), q))
        .min()
        .map(|(_, q)| q)
        .ok_or(Error::NothingToSelect)
}

/// Greedy DM: weights are recomputed before every elimination.
#[derive(Debug, Clone, Copy, Default)]
pub struct DelgadoMorais {
    pub loops: LoopDegree,
}

impl DelgadoMorais {
    pub fn new(loops: LoopDegree) -> Self {
        DelgadoMorais { loops }
    }
}

impl OrderingStrategy for DelgadoMorais {
    fn name(&self) -> &str {
        "dm"
    }

    fn select(&mut self, efa: &Efa, eliminable: &[State]) -> Result<State> {
        select_dm_with(efa, eliminable, self.loops)
    }
}

/// Extremes over all elimination orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForce {
    pub best_order: Vec<State>,
    pub best_size: Size,
    pub worst_order: Vec<State>,
    pub worst_size: Size,
    /// Number of complete orders evaluated.
    pub evaluated: u64,
}

pub const DEFAULT_BRUTE_FORCE_CAP: usize = 8;

/// Evaluates every elimination order of `efa` under `variant`. Ties keep
/// the lexicographically first order.
pub fn brute_force_optimal(efa: &Efa, variant: Variant, cap: usize) -> Result<BruteForce> {
    let prepared = prepare(efa, variant);
    let eliminable = prepared.eliminable().len();
    if eliminable > cap {
        return Err(Error::BruteForceCap { eliminable, cap });
    }
    let mut best: Option<BruteForce> = None;
    let mut order = Vec::new();
    search(&prepared, &mut order, &mut best)?;
    Ok(best.expect("at least one order"))
}

fn search(efa: &Efa, order: &mut Vec<State>, best: &mut Option<BruteForce>) -> Result<()> {
    let eliminable = efa.eliminable();
    if eliminable.is_empty() {
        let size = terminal_expression(efa)?.alphabetic_size();
        match best {
            None => {
                *best = Some(BruteForce {
                    best_order: order.clone(),
                    best_size: size,
                    worst_order: order.clone(),
                    worst_size: size,
                    evaluated: 1,
                })
            }
            Some(b) => {
                b.evaluated += 1;
                if size < b.best_size {
                    b.best_size = size;
                    b.best_order = order.clone();
                }
                if size > b.worst_size {
                    b.worst_size = size;
                    b.worst_order = order.clone();
                }
            }
        }
        return Ok(());
    }
    for q in eliminable {
        let next = efa.eliminate_state(q)?;
        order.push(q);
        search(&next, order, best)?;
        order.pop();
    }
    Ok(())
}
