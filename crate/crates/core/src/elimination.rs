//! The state elimination method.
//!
//! [`Variant::Normalized`] first gives the automaton a fresh initial state
//! without incoming transitions and a single fresh final state without
//! outgoing transitions, when the input lacks them, and then eliminates every
//! other state. [`Variant::WithoutNormalization`] keeps the original initial
//! state to the end and only adds a fresh final state when there is more than
//! one final state; what remains after elimination is read off with
//! `β₁★α₁(β₂ + α₂β₁★α₁)★`, which the simplifying constructors reduce when
//! some of its labels are `∅`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::automata::{Efa, State};
use crate::error::{Error, Result};
use crate::ordering::OrderingStrategy;
use crate::regex::Regex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    /// SEA: normalize, then eliminate everything but the added endpoints.
    #[serde(rename = "sea")]
    Normalized,
    /// SEAwn: keep the original initial state (and single final state) until the end.
    #[serde(rename = "seawn")]
    WithoutNormalization,
}

impl Variant {
    pub const ALL: [Variant; 2] = [Variant::Normalized, Variant::WithoutNormalization];

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Normalized => "sea",
            Variant::WithoutNormalization => "seawn",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sea" => Ok(Variant::Normalized),
            "seawn" => Ok(Variant::WithoutNormalization),
            other => Err(Error::InvalidAutomaton(format!(
                "unknown variant `{other}` (expected sea or seawn)"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ConversionResult {
    pub regex: Regex,
    /// Eliminated states in the numbering of the input automaton.
    pub order: Vec<State>,
    pub variant: Variant,
}

/// Adds a fresh initial state when the initial state has incoming labels,
/// and a fresh single final state when there are several final states or
/// a final state has outgoing labels. New transitions are labelled `ε`.
pub fn normalize(efa: &Efa) -> Efa {
    let mut out = efa.clone();
    let init = efa.initial();
    if efa.states().any(|p| efa.label(p, init).is_some()) {
        let i = out.add_state();
        out.set_label(i, init, Regex::epsilon()).unwrap();
        out.set_initial(i).unwrap();
    }
    let needs_final = efa.finals().len() > 1
        || efa
            .finals()
            .iter()
            .any(|&f| efa.states().any(|q| efa.label(f, q).is_some()));
    if needs_final {
        add_single_final(&mut out);
    }
    out
}

fn add_single_final(efa: &mut Efa) {
    let finals: Vec<State> = efa.finals().iter().copied().collect();
    let f = efa.add_state();
    for q in finals {
        efa.set_label(q, f, Regex::epsilon()).unwrap();
    }
    efa.set_finals([f]).unwrap();
}

/// The automaton on which elimination runs for the given variant.
pub fn prepare(efa: &Efa, variant: Variant) -> Efa {
    match variant {
        Variant::Normalized => normalize(efa),
        Variant::WithoutNormalization => {
            let mut out = efa.clone();
            if out.finals().len() > 1 {
                add_single_final(&mut out);
            }
            out
        }
    }
}

/// Reads the expression off an automaton whose only states are the initial
/// state and at most one other, final, state.
pub fn terminal_expression(efa: &Efa) -> Result<Regex> {
    let init = efa.initial();
    let finals: Vec<State> = efa.finals().iter().copied().collect();
    if let Some(q) = efa
        .states()
        .find(|&q| q != init && !efa.finals().contains(&q))
    {
        return Err(Error::InvalidAutomaton(format!(
            "state {q} has not been eliminated"
        )));
    }
    match finals.as_slice() {
        [] => Ok(Regex::empty_set()),
        [f] if *f == init => Ok(Regex::star(efa.label_or_empty(init, init))),
        [f] => {
            let b1 = Regex::star(efa.label_or_empty(init, init));
            let a1 = efa.label_or_empty(init, *f);
            let b2 = efa.label_or_empty(*f, *f);
            let a2 = efa.label_or_empty(*f, init);
            let back = Regex::concat([a2, b1.clone(), a1.clone()]);
            Ok(Regex::concat([
                b1,
                a1,
                Regex::star(Regex::union([b2, back])),
            ]))
        }
        _ => Err(Error::InvalidAutomaton(
            "more than one final state left after elimination".into(),
        )),
    }
}

/// Eliminates every eliminable state of `prepared` in the order chosen by
/// `strategy` and returns the resulting expression and order.
pub fn eliminate_all(
    prepared: &Efa,
    strategy: &mut dyn OrderingStrategy,
) -> Result<(Regex, Vec<State>)> {
    let mut efa = prepared.clone();
    let mut order = Vec::new();
    loop {
        let eliminable = efa.eliminable();
        if eliminable.is_empty() {
            break;
        }
        let q = strategy.select(&efa, &eliminable)?;
        if !eliminable.contains(&q) {
            return Err(Error::ProtectedState(q));
        }
        efa.eliminate_in_place(q)?;
        order.push(q);
    }
    Ok((terminal_expression(&efa)?, order))
}

/// Converts a trim EFA with the given variant. The strategy sees the
/// prepared automaton, whose added states are numbered after the input's.
pub fn convert(
    efa: &Efa,
    strategy: &mut dyn OrderingStrategy,
    variant: Variant,
) -> Result<ConversionResult> {
    let prepared = prepare(efa, variant);
    let (regex, order) = eliminate_all(&prepared, strategy)?;
    Ok(ConversionResult {
        regex,
        order,
        variant,
    })
}
