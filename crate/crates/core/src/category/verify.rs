use super::{composability_failure, word_degree, AInfty, Adjacency};
use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::report::Violation;
use crate::words::splice;

/// Human-readable word label `(γ_d, …, γ_1)`.
pub fn word_label<C: AInfty>(c: &C, word: &[C::Gen]) -> String {
    let names: Vec<String> = word.iter().map(|g| c.name(g)).collect();
    format!("({})", names.join(", "))
}

/// `μ^d(word)`. In strict mode words longer than the arity bound are an error
/// rather than zero.
pub fn evaluate_mu<C: AInfty>(c: &C, word: &[C::Gen], strict: bool) -> Result<Chain<C::Gen>> {
    if word.is_empty() {
        return Err(Error::Malformed("μ of the empty word".into()));
    }
    if let Some(position) = composability_failure(c, word) {
        return Err(Error::NotComposable { position });
    }
    if word.len() > c.max_arity() {
        if strict {
            return Err(Error::ArityExceeded {
                arity: word.len(),
                max_arity: c.max_arity(),
            });
        }
        return Ok(Chain::zero());
    }
    Ok(c.mu(word))
}

/// Left-hand side of the associativity relation on `word`:
/// `Σ μ(γ_d, …, μ(γ_{s+m}, …, γ_{s+1}), …, γ_1)` over all contiguous blocks.
pub fn relation_sum<C: AInfty>(c: &C, word: &[C::Gen]) -> Chain<C::Gen> {
    let d = word.len();
    let active = c.active_arities();
    let mut out = Chain::zero();
    for s in 0..d {
        for m in 1..=d - s {
            if !active.contains(&m) || !active.contains(&(d - m + 1)) {
                continue;
            }
            for t in c.mu(&word[s..s + m]) {
                out.add_assign(&c.mu(&splice(word, s, m, t)));
            }
        }
    }
    out
}

/// Whether some pair of active arities can produce a nonzero relation on words
/// of length `d`.
fn relation_possible(active: &[usize], d: usize) -> bool {
    active
        .iter()
        .any(|&k| k <= d && active.contains(&(d + 1 - k)))
}

pub fn verify_ainfty_relations<C: AInfty>(c: &C, max_d: usize) -> Vec<Violation> {
    verify_ainfty_relations_scoped(c, max_d, |_| true)
}

/// Relation check restricted to words accepted by `scope`.
pub fn verify_ainfty_relations_scoped<C: AInfty>(
    c: &C,
    max_d: usize,
    scope: impl Fn(&[C::Gen]) -> bool,
) -> Vec<Violation> {
    let active = c.active_arities();
    let adj = Adjacency::new(c);
    let mut out = Vec::new();
    for d in 1..=max_d {
        if !relation_possible(&active, d) {
            continue;
        }
        adj.for_each_word(c, d, |w| {
            if !scope(w) {
                return;
            }
            let r = relation_sum(c, w);
            if !r.is_zero() {
                let terms: Vec<String> = r.iter().map(|g| c.name(g)).collect();
                out.push(Violation::new(
                    word_label(c, w),
                    format!("relation sum is {}", terms.join(" + ")),
                ));
            }
        });
    }
    out
}

/// Every structure constant whose output degree is not `Σ deg + 2 − d`.
pub fn verify_degree_convention<C: AInfty>(c: &C) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut check = |w: &[C::Gen], outputs: &Chain<C::Gen>| {
        let expected = word_degree(c, w) + 2 - w.len() as i64;
        for t in outputs {
            let got = c.degree(t);
            if got != expected {
                out.push(Violation::new(
                    word_label(c, w),
                    format!(
                        "output `{}` has degree {got}, expected {expected}",
                        c.name(t)
                    ),
                ));
            }
        }
    };
    match c.explicit_entries() {
        Some(entries) => {
            for (w, o) in &entries {
                check(w, o);
            }
        }
        None => {
            let adj = Adjacency::new(c);
            for d in c.active_arities() {
                adj.for_each_word(c, d, |w| {
                    let o = c.mu(w);
                    check(w, &o);
                });
            }
        }
    }
    out
}
