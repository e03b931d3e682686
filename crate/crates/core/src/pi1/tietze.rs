//! Heuristic Tietze simplification.
//!
//! Only two moves are used: rewriting relators (free and cyclic reduction,
//! dropping empty, duplicate and inverse/conjugate copies) and eliminating
//! a generator that occurs exactly once in some relator. Both preserve the
//! group, so reaching zero generators proves triviality.

use serde::Serialize;

use super::{Presentation, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TietzeStatus {
    Trivialized,
    Simplified,
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TietzeResult {
    pub status: TietzeStatus,
    pub steps: usize,
    pub budget: usize,
    pub presentation: Presentation,
}

pub(crate) fn free_reduce(w: &[i64]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

pub(crate) fn cyclic_reduce(w: &[i64]) -> Word {
    let mut w = free_reduce(w);
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.pop();
        w.remove(0);
    }
    w
}

pub(crate) fn inverse(w: &[i64]) -> Word {
    w.iter().rev().map(|&x| -x).collect()
}

/// Least rotation of `w` or of its inverse; equal for relators that are
/// conjugate or inverse to each other.
fn canonical(w: &[i64]) -> Word {
    let inv = inverse(w);
    let mut best: Option<Word> = None;
    for base in [w, &inv[..]] {
        for r in 0..base.len().max(1) {
            let rot: Word = base[r..].iter().chain(&base[..r]).copied().collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

fn tidy(relators: &mut Vec<Word>) {
    let mut seen: Vec<Word> = Vec::new();
    relators.retain_mut(|r| {
        *r = cyclic_reduce(r);
        if r.is_empty() {
            return false;
        }
        let c = canonical(r);
        if seen.contains(&c) {
            return false;
        }
        seen.push(c);
        true
    });
}

/// A relator index and a generator occurring exactly once in it, choosing
/// the shortest relator first, then the smallest generator.
fn find_elimination(relators: &[Word]) -> Option<(usize, i64)> {
    let mut order: Vec<usize> = (0..relators.len()).collect();
    order.sort_by_key(|&i| (relators[i].len(), relators[i].clone()));
    for i in order {
        let r = &relators[i];
        let mut gens: Vec<i64> = r.iter().map(|x| x.abs()).collect();
        gens.sort_unstable();
        gens.dedup();
        if let Some(&g) = gens.iter().find(|&&g| r.iter().filter(|x| x.abs() == g).count() == 1) {
            return Some((i, g));
        }
    }
    None
}

pub fn tietze_simplify(p: &Presentation, budget: usize) -> TietzeResult {
    let mut generators = p.generators;
    let mut relators = p.relators.clone();
    let mut steps = 0;
    tidy(&mut relators);
    let status = loop {
        if generators == 0 {
            break TietzeStatus::Trivialized;
        }
        let Some((i, g)) = find_elimination(&relators) else {
            break TietzeStatus::Simplified;
        };
        if steps == budget {
            break TietzeStatus::BudgetExhausted;
        }
        steps += 1;
        let r = relators.swap_remove(i);
        // Rotate r to x^ε W; then x = W^{-1} when ε = 1, x = W when ε = -1.
        let pos = r.iter().position(|x| x.abs() == g).unwrap();
        let eps = r[pos].signum();
        let rest: Word = r[pos + 1..].iter().chain(&r[..pos]).copied().collect();
        let value = if eps > 0 { inverse(&rest) } else { rest };
        let value_inv = inverse(&value);
        for rel in relators.iter_mut() {
            let mut out = Vec::with_capacity(rel.len());
            for &x in rel.iter() {
                if x == g {
                    out.extend_from_slice(&value);
                } else if x == -g {
                    out.extend_from_slice(&value_inv);
                } else {
                    out.push(x);
                }
            }
            // Renumber generators above g down by one.
            for x in out.iter_mut() {
                if x.abs() > g {
                    *x -= x.signum();
                }
            }
            *rel = out;
        }
        generators -= 1;
        tidy(&mut relators);
    };
    TietzeResult {
        status,
        steps,
        budget,
        presentation: Presentation { generators, relators },
    }
}
