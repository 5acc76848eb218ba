//! Growth rates: the renewal reduction of the split automaton solved by
//! bisection, and a Collatz–Wielandt power iteration used as a cross-check.

use std::collections::HashMap;

use super::automaton::{SplitAutomaton, Transition};
use super::census::Endpoint;
use crate::metric::agreement_window;
use crate::sequence::{Itinerary, KneadingSequence, SymbolStream};

/// One renewal class: an interval born as `{x, ν}` splits after `delay`
/// steps into intervals of classes `children`. `delay = None` means it
/// never splits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenewalRow {
    pub born: Endpoint,
    pub delay: Option<usize>,
    pub children: [usize; 2],
}

/// Every interval on the frontier has `ν` as an endpoint from its first
/// split onward, so the subdivision is a multi-type renewal process indexed
/// by the other endpoint.
#[derive(Debug, Clone)]
pub struct Renewal {
    pub rows: Vec<RenewalRow>,
}

fn first_symbol_gap(nu: &Itinerary, born: Endpoint) -> Option<usize> {
    let shape = nu.shape().expect("shaped");
    let window = agreement_window(shape, shape) + 1;
    let at = |k: usize| match born {
        Endpoint::Critical if k == 1 => crate::sequence::Symbol::Star,
        Endpoint::Critical => nu.symbol(k - 1),
        Endpoint::Orbit(j) => nu.symbol(j + k),
    };
    (1..=window).find(|&k| at(k).differs_from(nu.symbol(k)))
}

impl Renewal {
    pub fn build(nu: &KneadingSequence) -> Renewal {
        let it = nu.itinerary();
        // For *-periodic ν the critical point *ν equals σ^{p-1}ν.
        let root = if nu.is_star_periodic() {
            Endpoint::Orbit(it.period_len() - 1)
        } else {
            Endpoint::Critical
        };
        let mut index: HashMap<Endpoint, usize> = HashMap::new();
        let mut rows: Vec<RenewalRow> = Vec::new();
        let mut pending = vec![root];
        index.insert(root, 0);
        rows.push(RenewalRow {
            born: root,
            delay: None,
            children: [0, 0],
        });
        while let Some(born) = pending.pop() {
            let r = index[&born];
            let Some(d) = first_symbol_gap(it, born) else {
                continue;
            };
            let shifted = match born {
                Endpoint::Critical => d - 1,
                Endpoint::Orbit(j) => j + d,
            };
            let kids = [
                Endpoint::Orbit(it.normalize_offset(shifted)),
                Endpoint::Orbit(it.normalize_offset(d)),
            ];
            let mut children = [0; 2];
            for (c, kid) in kids.into_iter().enumerate() {
                children[c] = *index.entry(kid).or_insert_with(|| {
                    rows.push(RenewalRow {
                        born: kid,
                        delay: None,
                        children: [0, 0],
                    });
                    pending.push(kid);
                    rows.len() - 1
                });
            }
            rows[r].delay = Some(d);
            rows[r].children = children;
        }
        Renewal { rows }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// True iff `I − B(z)` is a nonsingular M-matrix, i.e. `ρ(B(z)) < 1`,
    /// where `B(z)[r][c] = Σ z^{delay(r)}` over children `c` of `r`.
    ///
    /// A Z-matrix is a nonsingular M-matrix iff Gaussian elimination without
    /// pivoting produces only positive pivots.
    pub fn subcritical(&self, z: f64) -> bool {
        let m = self.rows.len();
        let mut a = vec![0.0f64; m * m];
        for (r, row) in self.rows.iter().enumerate() {
            a[r * m + r] += 1.0;
            if let Some(d) = row.delay {
                let w = z.powi(d as i32);
                for &c in &row.children {
                    a[r * m + c] -= w;
                }
            }
        }
        for c in 0..m {
            let pivot = a[c * m + c];
            if !(pivot > 0.0) {
                return false;
            }
            for r in c + 1..m {
                let f = a[r * m + c] / pivot;
                if f != 0.0 {
                    for cc in c..m {
                        a[r * m + cc] -= f * a[c * m + cc];
                    }
                }
            }
        }
        true
    }

    /// Bracket `[lo, hi]` for `r = sup{z ∈ (0, 1] : ρ(B(z)) < 1}`; `None`
    /// when `ρ(B(1)) < 1` (no exponential growth).
    pub fn critical_radius(&self, rel_tol: f64) -> Option<(f64, f64)> {
        if self.subcritical(1.0) {
            return None;
        }
        // N(n) <= 2^{n-2} puts the radius at or above 1/2.
        let (mut lo, mut hi) = (0.25f64, 1.0f64);
        debug_assert!(self.subcritical(lo));
        while hi - lo > rel_tol * lo {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.subcritical(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some((lo, hi))
    }
}

/// Two-sided Collatz–Wielandt bounds on the spectral radius of the
/// automaton's transition-count matrix, computed per strongly connected
/// component on `A + I`.
pub fn power_iteration_bounds(a: &SplitAutomaton, tol: f64, max_iter: usize) -> (f64, f64) {
    let succ: Vec<Vec<usize>> = a
        .transitions()
        .iter()
        .map(|t| match *t {
            Transition::Absorbing => vec![],
            Transition::Advance(x) => vec![x],
            Transition::Split(x, y) => vec![x, y],
        })
        .collect();
    let comps = strongly_connected(&succ);
    let (mut lower, mut upper) = (1.0f64, 1.0f64);
    for comp in comps {
        let local: HashMap<usize, usize> = comp.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let edges: Vec<Vec<usize>> = comp
            .iter()
            .map(|&s| succ[s].iter().filter_map(|t| local.get(t).copied()).collect())
            .collect();
        if edges.iter().all(|e| e.is_empty()) {
            continue;
        }
        let m = comp.len();
        let mut x = vec![1.0f64; m];
        let (mut lo, mut hi) = (0.0, f64::INFINITY);
        for _ in 0..max_iter {
            let mut y = x.clone();
            for (i, es) in edges.iter().enumerate() {
                for &j in es {
                    y[i] += x[j];
                }
            }
            let ratios = y.iter().zip(&x).map(|(a, b)| a / b);
            lo = ratios.clone().fold(f64::INFINITY, f64::min) - 1.0;
            hi = ratios.fold(0.0, f64::max) - 1.0;
            let norm = y.iter().cloned().fold(0.0, f64::max);
            x = y.into_iter().map(|v| v / norm).collect();
            if hi - lo < tol {
                break;
            }
        }
        lower = lower.max(lo);
        upper = upper.max(hi);
    }
    (lower, upper)
}

fn strongly_connected(succ: &[Vec<usize>]) -> Vec<Vec<usize>> {
    // Iterative Tarjan.
    let n = succ.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut counter = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        while let Some(&mut (v, ref mut next)) = call.last_mut() {
            if *next == 0 {
                index[v] = counter;
                low[v] = counter;
                counter += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if *next < succ[v].len() {
                let w = succ[v][*next];
                *next += 1;
                if index[w] == usize::MAX {
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().unwrap();
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comps.push(comp);
            }
        }
    }
    comps
}
