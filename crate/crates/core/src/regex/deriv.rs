use std::collections::HashMap;
use std::sync::Arc;

use super::{Kind, Letter, Node, Regex};

impl Regex {
    /// Brzozowski derivative with respect to `letter`.
    pub fn derivative(&self, letter: Letter) -> Regex {
        derive(self, letter, &mut HashMap::new())
    }
}

fn derive(r: &Regex, letter: Letter, memo: &mut HashMap<*const Node, Regex>) -> Regex {
    let key = Arc::as_ptr(&r.0);
    if let Some(d) = memo.get(&key) {
        return d.clone();
    }
    let d = match r.kind() {
        Kind::EmptySet | Kind::Epsilon => Regex::empty_set(),
        Kind::Symbol(a) if *a == letter => Regex::epsilon(),
        Kind::Symbol(_) => Regex::empty_set(),
        Kind::Union(parts) => Regex::union(parts.iter().map(|p| derive(p, letter, memo))),
        Kind::Concat(parts) => {
            // d(p1 p2 .. pn) = d(p1) p2..pn + [p1 nullable] d(p2 .. pn)
            let mut terms = Vec::new();
            for (i, p) in parts.iter().enumerate() {
                let head = derive(p, letter, memo);
                terms.push(Regex::concat(
                    std::iter::once(head).chain(parts[i + 1..].iter().cloned()),
                ));
                if !p.is_nullable() {
                    break;
                }
            }
            Regex::union(terms)
        }
        Kind::Star(inner) => Regex::concat([derive(inner, letter, memo), r.clone()]),
    };
    memo.insert(key, d.clone());
    d
}
