//! The frontier dynamics of an eventually periodic sequence as a finite
//! automaton on endpoint-offset pairs.

use std::collections::{HashMap, VecDeque};

use super::census::{Geometry, IntervalState, PrecriticalCensus, Step, MAX_CENSUS_DEPTH};
use crate::error::{Error, Result};
use crate::sequence::KneadingSequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transition {
    /// Never splits again: a Fatou interval.
    Absorbing,
    Advance(usize),
    Split(usize, usize),
}

impl Transition {
    pub fn out_degree(self) -> usize {
        match self {
            Transition::Absorbing => 0,
            Transition::Advance(_) => 1,
            Transition::Split(..) => 2,
        }
    }

    fn targets(self) -> impl Iterator<Item = usize> {
        let (a, b) = match self {
            Transition::Absorbing => (None, None),
            Transition::Advance(a) => (Some(a), None),
            Transition::Split(a, b) => (Some(a), Some(b)),
        };
        a.into_iter().chain(b)
    }
}

#[derive(Debug, Clone)]
pub struct SplitAutomaton {
    states: Vec<IntervalState>,
    transitions: Vec<Transition>,
    initial: usize,
}

impl SplitAutomaton {
    pub fn states(&self) -> &[IntervalState] {
        &self.states
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Counts of split events over `n_max` steps from the initial state.
    pub fn replay(&self, n_max: usize) -> Result<PrecriticalCensus> {
        if n_max > MAX_CENSUS_DEPTH {
            return Err(Error::CountOverflow(n_max));
        }
        let mut mass = vec![0u128; self.len()];
        mass[self.initial] = 1;
        let mut counts = vec![0u128; n_max];
        for (t, count) in counts.iter_mut().enumerate() {
            let mut next = vec![0u128; self.len()];
            for (i, &m) in mass.iter().enumerate() {
                if m == 0 {
                    continue;
                }
                let add = |slot: &mut u128| -> Result<()> {
                    *slot = slot.checked_add(m).ok_or(Error::CountOverflow(t + 1))?;
                    Ok(())
                };
                match self.transitions[i] {
                    Transition::Absorbing => add(&mut next[i])?,
                    Transition::Advance(a) => add(&mut next[a])?,
                    Transition::Split(a, b) => {
                        *count = count.checked_add(m).ok_or(Error::CountOverflow(t + 1))?;
                        add(&mut next[a])?;
                        add(&mut next[b])?;
                    }
                }
            }
            mass = next;
        }
        let frontier = mass
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(i, &m)| (self.states[i], m))
            .collect();
        Ok(PrecriticalCensus::from_counts(counts, frontier))
    }
}

/// Explores every interval state reachable from `[*ν, ν]`. States from
/// which no split is reachable are collapsed to absorbing states.
pub fn compile_automaton(nu: &KneadingSequence) -> Result<SplitAutomaton> {
    nu.require_critical_orbit()?;
    let geo = Geometry::periodic(nu.itinerary());

    let mut index: HashMap<IntervalState, usize> = HashMap::new();
    let mut states = vec![IntervalState::initial()];
    let mut steps: Vec<Step> = Vec::new();
    index.insert(states[0], 0);
    let mut i = 0;
    while i < states.len() {
        let step = geo.step(states[i]);
        let mut visit = |s: IntervalState| {
            if let std::collections::hash_map::Entry::Vacant(e) = index.entry(s) {
                e.insert(states.len());
                states.push(s);
            }
        };
        match step {
            Step::Advance(a) => visit(a),
            Step::Split(a, b) => {
                visit(a);
                visit(b);
            }
        }
        steps.push(step);
        i += 1;
    }
    let raw: Vec<Transition> = steps
        .iter()
        .map(|s| match *s {
            Step::Advance(a) => Transition::Advance(index[&a]),
            Step::Split(a, b) => Transition::Split(index[&a], index[&b]),
        })
        .collect();

    // Backward reachability from split states.
    let n = states.len();
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, t) in raw.iter().enumerate() {
        for j in t.targets() {
            preds[j].push(i);
        }
    }
    let mut live = vec![false; n];
    let mut queue: VecDeque<usize> = (0..n)
        .filter(|&i| matches!(raw[i], Transition::Split(..)))
        .collect();
    for &i in &queue {
        live[i] = true;
    }
    while let Some(i) = queue.pop_front() {
        for &p in &preds[i] {
            if !live[p] {
                live[p] = true;
                queue.push_back(p);
            }
        }
    }
    let pruned: Vec<Transition> = raw
        .iter()
        .enumerate()
        .map(|(i, &t)| if live[i] { t } else { Transition::Absorbing })
        .collect();

    // Keep only states still reachable from the initial one.
    let mut new_id = vec![usize::MAX; n];
    let mut order = vec![0];
    new_id[0] = 0;
    let mut k = 0;
    while k < order.len() {
        for j in pruned[order[k]].targets() {
            if new_id[j] == usize::MAX {
                new_id[j] = order.len();
                order.push(j);
            }
        }
        k += 1;
    }
    let remap = |t: Transition| match t {
        Transition::Absorbing => Transition::Absorbing,
        Transition::Advance(a) => Transition::Advance(new_id[a]),
        Transition::Split(a, b) => Transition::Split(new_id[a], new_id[b]),
    };
    Ok(SplitAutomaton {
        states: order.iter().map(|&i| states[i]).collect(),
        transitions: order.iter().map(|&i| remap(pruned[i])).collect(),
        initial: 0,
    })
}
