//! Bounded saturation of filtered permutation groups.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use serde::Serialize;

use super::Permutation;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Default)]
pub struct ClosureOptions {
    /// Record how every element was first obtained.
    pub provenance: bool,
}

/// How an element of a [`FilteredClosure`] was first produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Provenance {
    Generator,
    Identity,
    /// `compose(left, right)`, i.e. `right` on top of `left`.
    Compose {
        left: Permutation,
        right: Permutation,
    },
    PadRight {
        of: Permutation,
    },
    PadLeft {
        of: Permutation,
    },
    RemoveOuterStrings {
        of: Permutation,
    },
    RemoveNeighborPair {
        of: Permutation,
        position: usize,
    },
}

impl Provenance {
    fn operands(&self) -> Vec<&Permutation> {
        match self {
            Provenance::Generator | Provenance::Identity => vec![],
            Provenance::Compose { left, right } => vec![left, right],
            Provenance::PadRight { of }
            | Provenance::PadLeft { of }
            | Provenance::RemoveOuterStrings { of }
            | Provenance::RemoveNeighborPair { of, .. } => vec![of],
        }
    }

    /// Recomputes the element this rule produces.
    pub fn replay(&self) -> Option<Permutation> {
        match self {
            Provenance::Generator | Provenance::Identity => None,
            Provenance::Compose { left, right } => Permutation::compose(left, right).ok(),
            Provenance::PadRight { of } => Some(of.pad_right()),
            Provenance::PadLeft { of } => Some(of.pad_left()),
            Provenance::RemoveOuterStrings { of } => Some(of.remove_outer_strings()),
            Provenance::RemoveNeighborPair { of, position } => {
                of.remove_neighbor_pair(*position).ok()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivationStep {
    pub result: Permutation,
    #[serde(flatten)]
    pub rule: Provenance,
}

/// Steps in dependency order, each using only generators, identities and
/// results of earlier steps. The last step produces the target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Derivation {
    pub steps: Vec<DerivationStep>,
}

impl Derivation {
    /// Steps that apply an operation (generators and identities excluded).
    pub fn derived_steps(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| !matches!(s.rule, Provenance::Generator | Provenance::Identity))
            .count()
    }

    pub fn target(&self) -> Option<&Permutation> {
        self.steps.last().map(|s| &s.result)
    }

    /// Checks every step by recomputing it from earlier steps.
    pub fn is_valid(&self) -> bool {
        let mut known: HashSet<&Permutation> = HashSet::new();
        for step in &self.steps {
            let ok = match &step.rule {
                Provenance::Generator => true,
                Provenance::Identity => step.result.is_identity(),
                rule => {
                    rule.operands().iter().all(|op| known.contains(op))
                        && rule.replay().as_ref() == Some(&step.result)
                }
            };
            if !ok {
                return false;
            }
            known.insert(&step.result);
        }
        true
    }
}

/// The smallest family `G_1, …, G_cap` with each `G_k ⊆ S_k` a group,
/// containing the generators and closed under padding on either side,
/// tensoring, removing outer strings and removing neighboring pairs.
#[derive(Debug, Clone)]
pub struct FilteredClosure {
    level_cap: usize,
    levels: Vec<BTreeSet<Permutation>>,
    provenance: Option<HashMap<Permutation, Provenance>>,
}

impl FilteredClosure {
    pub fn new(generators: &[Permutation], level_cap: usize) -> Result<Self> {
        Self::with_options(generators, level_cap, ClosureOptions::default())
    }

    pub fn with_options(
        generators: &[Permutation],
        level_cap: usize,
        options: ClosureOptions,
    ) -> Result<Self> {
        let required = generators.iter().map(Permutation::len).max().unwrap_or(0).max(1);
        if level_cap < required {
            return Err(Error::CapTooSmall {
                cap: level_cap,
                required,
            });
        }

        let mut builder = Builder {
            cap: level_cap,
            levels: vec![BTreeSet::new(); level_cap + 1],
            gens: vec![Vec::new(); level_cap + 1],
            worklist: VecDeque::new(),
            provenance: options.provenance.then(HashMap::new),
        };
        for k in 1..=level_cap {
            let id = Permutation::identity(k);
            builder.record(&id, Provenance::Identity);
            builder.levels[k].insert(id.clone());
            builder.worklist.push_back(id);
        }
        for g in generators {
            builder.add(g.clone(), Provenance::Generator);
        }
        builder.saturate();

        Ok(FilteredClosure {
            level_cap,
            levels: builder.levels,
            provenance: builder.provenance,
        })
    }

    pub fn level_cap(&self) -> usize {
        self.level_cap
    }

    /// `G_k` in lexicographic order; empty outside `1..=cap`.
    pub fn level(&self, k: usize) -> &BTreeSet<Permutation> {
        static EMPTY: BTreeSet<Permutation> = BTreeSet::new();
        if k == 0 || k > self.level_cap {
            return &EMPTY;
        }
        &self.levels[k]
    }

    pub fn level_sizes(&self) -> Vec<(usize, usize)> {
        (1..=self.level_cap)
            .map(|k| (k, self.levels[k].len()))
            .collect()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.level(p.len()).contains(p)
    }

    pub fn elements(&self) -> impl Iterator<Item = &Permutation> {
        self.levels.iter().flatten()
    }

    pub fn provenance(&self, p: &Permutation) -> Option<&Provenance> {
        self.provenance.as_ref()?.get(p)
    }

    pub fn has_provenance(&self) -> bool {
        self.provenance.is_some()
    }

    /// The derivation of `target` from the generators, if it is stored and
    /// provenance was recorded.
    pub fn derivation(&self, target: &Permutation) -> Option<Derivation> {
        let provenance = self.provenance.as_ref()?;
        if !self.contains(target) {
            return None;
        }
        let mut steps = Vec::new();
        let mut done = HashSet::new();
        // Iterative post-order walk over the provenance DAG.
        let mut stack = vec![(target.clone(), false)];
        while let Some((p, expanded)) = stack.pop() {
            if done.contains(&p) {
                continue;
            }
            let rule = provenance.get(&p)?;
            if expanded {
                done.insert(p.clone());
                steps.push(DerivationStep {
                    result: p,
                    rule: rule.clone(),
                });
            } else {
                stack.push((p, true));
                for op in rule.operands() {
                    if !done.contains(op) {
                        stack.push((op.clone(), false));
                    }
                }
            }
        }
        Some(Derivation { steps })
    }
}

struct Builder {
    cap: usize,
    levels: Vec<BTreeSet<Permutation>>,
    /// Generators of each level group, in insertion order.
    gens: Vec<Vec<Permutation>>,
    worklist: VecDeque<Permutation>,
    provenance: Option<HashMap<Permutation, Provenance>>,
}

impl Builder {
    fn record(&mut self, p: &Permutation, why: Provenance) {
        if let Some(map) = self.provenance.as_mut() {
            map.entry(p.clone()).or_insert(why);
        }
    }

    /// Inserts `p` and extends its level to the group generated by the old
    /// level and `p`.
    fn add(&mut self, p: Permutation, why: Provenance) {
        let k = p.len();
        if k == 0 || k > self.cap || self.levels[k].contains(&p) {
            return;
        }
        self.record(&p, why);

        let old: Vec<Permutation> = self.levels[k].iter().cloned().collect();
        self.gens[k].push(p.clone());
        self.levels[k].insert(p.clone());
        self.worklist.push_back(p.clone());

        // The old level is closed under right multiplication by the old
        // generators, so it only needs products with `p`; new elements need
        // products with every generator.
        let mut frontier = vec![p.clone()];
        for x in &old {
            self.push_product(k, x, &p, &mut frontier);
        }
        while let Some(x) = frontier.pop() {
            for s in self.gens[k].clone() {
                self.push_product(k, &x, &s, &mut frontier);
            }
        }
    }

    fn push_product(
        &mut self,
        k: usize,
        x: &Permutation,
        s: &Permutation,
        frontier: &mut Vec<Permutation>,
    ) {
        let y = Permutation::compose(x, s).expect("same level");
        if self.levels[k].insert(y.clone()) {
            self.record(
                &y,
                Provenance::Compose {
                    left: x.clone(),
                    right: s.clone(),
                },
            );
            self.worklist.push_back(y.clone());
            frontier.push(y);
        }
    }

    fn saturate(&mut self) {
        // Tensor products arise here as p ⊗ q = (p ⊗ id) ∘ (id ⊗ q).
        while let Some(x) = self.worklist.pop_front() {
            if x.len() < self.cap {
                self.add(x.pad_right(), Provenance::PadRight { of: x.clone() });
                self.add(x.pad_left(), Provenance::PadLeft { of: x.clone() });
            }
            self.add(
                x.remove_outer_strings(),
                Provenance::RemoveOuterStrings { of: x.clone() },
            );
            for (position, _) in x.removable_neighbor_pairs() {
                let reduced = x.remove_neighbor_pair(position).expect("listed as removable");
                self.add(
                    reduced,
                    Provenance::RemoveNeighborPair {
                        of: x.clone(),
                        position,
                    },
                );
            }
        }
    }
}
