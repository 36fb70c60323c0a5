//! Bounded breadth-first search for witnesses.
//!
//! The conjugate set `{x g x⁻¹ : |x| ≤ R}` is deduplicated by value, keeping
//! the first conjugator in ball order. The first factor is fixed to `g`
//! itself, which loses nothing because the defining equation is invariant
//! under conjugating every factor at once. Partial products are then
//! explored by length, so the first identity reached gives a witness of
//! minimal length over that conjugate set.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::witness::Witness;
use crate::zoo::{Element, Group, GroupError, Order};

pub const DEFAULT_NODE_CAP: usize = 200_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("invalid budget: {0}")]
    InvalidBudget(&'static str),
    #[error("the identity is never a generalized torsion element")]
    BaseTrivial,
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    pub max_conjugates: usize,
    pub ball_radius: usize,
    pub node_cap: usize,
}

impl SearchBudget {
    pub fn new(max_conjugates: usize, ball_radius: usize, node_cap: usize) -> Self {
        SearchBudget {
            max_conjugates,
            ball_radius,
            node_cap,
        }
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if self.max_conjugates == 0 {
            return Err(SearchError::InvalidBudget(
                "max_conjugates must be at least 1",
            ));
        }
        if self.node_cap == 0 {
            return Err(SearchError::InvalidBudget("node_cap must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum SearchOutcome {
    /// `minimal` means no shorter witness exists over the same conjugate set.
    Found {
        witness: Witness,
        minimal: bool,
    },
    Exhausted {
        budget: SearchBudget,
        node_cap_hit: bool,
    },
    PrunedByObstruction(String),
}

impl SearchOutcome {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            SearchOutcome::Found { witness, .. } => Some(witness),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found { .. })
    }

    pub fn is_pruned(&self) -> bool {
        matches!(self, SearchOutcome::PrunedByObstruction(_))
    }

    pub fn status(&self) -> &'static str {
        match self {
            SearchOutcome::Found { .. } => "found",
            SearchOutcome::Exhausted { .. } => "exhausted",
            SearchOutcome::PrunedByObstruction(_) => "pruned",
        }
    }
}

/// Abelianization data for an element. A witness of length `n` maps to
/// `n · ab(g) = 0`, so an infinite-order image rules out every witness and
/// a finite one of order `d` forces `d | n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    pub blocked: bool,
    pub period: Option<u64>,
}

pub fn abelianization_obstruction(group: &Group, x: &Element) -> Obstruction {
    let ab = group.abelianization();
    match ab.order(&group.abelianization_image(x)) {
        Order::Infinite => Obstruction {
            blocked: true,
            period: None,
        },
        Order::Finite(d) => Obstruction {
            blocked: false,
            period: Some(d),
        },
    }
}

fn obstruction_reason(group: &Group, x: &Element) -> String {
    let image: Vec<String> = group
        .abelianization_image(x)
        .iter()
        .map(|c| c.to_string())
        .collect();
    format!(
        "abelianization image ({}) of {} has infinite order in {}",
        image.join(", "),
        group.render(x),
        group.abelianization()
    )
}

pub fn search_witness(
    group: &Group,
    x: &Element,
    budget: &SearchBudget,
) -> Result<SearchOutcome, SearchError> {
    search_witness_with(group, x, budget, true)
}

/// Like [`search_witness`], with the abelianization pruning switchable so its
/// soundness can be checked against the plain search.
pub fn search_witness_with(
    group: &Group,
    x: &Element,
    budget: &SearchBudget,
    use_obstruction: bool,
) -> Result<SearchOutcome, SearchError> {
    budget.validate()?;
    group.check(x)?;
    if group.is_identity(x) {
        return Err(SearchError::BaseTrivial);
    }
    let mut period = 1u64;
    if use_obstruction {
        let obstruction = abelianization_obstruction(group, x);
        if obstruction.blocked {
            return Ok(SearchOutcome::PrunedByObstruction(obstruction_reason(
                group, x,
            )));
        }
        period = obstruction.period.unwrap_or(1);
    }

    // Conjugate values in ball order, each with its first conjugator.
    let mut conjugates: Vec<(Element, Element)> = Vec::new();
    let mut conjugate_index: HashMap<Element, usize> = HashMap::new();
    for y in group.ball(budget.ball_radius) {
        let value = group.conjugate(&y, x);
        if !conjugate_index.contains_key(&value) {
            conjugate_index.insert(value.clone(), conjugates.len());
            conjugates.push((value, y));
        }
    }

    // Each visited partial product remembers its parent and the conjugate
    // appended to reach it. Node 0 is the fixed first factor.
    let mut nodes: Vec<(Element, usize, usize)> = vec![(x.clone(), usize::MAX, usize::MAX)];
    let mut seen: HashMap<Element, usize> = HashMap::from([(x.clone(), 0)]);
    let mut frontier = vec![0usize];
    let mut node_cap_hit = false;

    for length in 1..budget.max_conjugates {
        let next_length = length as u64 + 1;
        if next_length.is_multiple_of(period) {
            for &node in &frontier {
                let inverse = group.inv(&nodes[node].0);
                if let Some(&c) = conjugate_index.get(&inverse) {
                    let witness = reconstruct(group, x, &nodes, &conjugates, node, c);
                    assert!(witness.verify(), "search produced an invalid witness");
                    return Ok(SearchOutcome::Found {
                        witness,
                        minimal: true,
                    });
                }
            }
        }
        if length + 1 == budget.max_conjugates {
            break;
        }
        let mut next = Vec::new();
        'expand: for &node in &frontier {
            for (c, (value, _)) in conjugates.iter().enumerate() {
                let product = group.mul(&nodes[node].0, value);
                if group.is_identity(&product) || seen.contains_key(&product) {
                    continue;
                }
                if nodes.len() >= budget.node_cap {
                    node_cap_hit = true;
                    break 'expand;
                }
                seen.insert(product.clone(), nodes.len());
                next.push(nodes.len());
                nodes.push((product, node, c));
            }
        }
        if node_cap_hit {
            break;
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    Ok(SearchOutcome::Exhausted {
        budget: *budget,
        node_cap_hit,
    })
}

fn reconstruct(
    group: &Group,
    x: &Element,
    nodes: &[(Element, usize, usize)],
    conjugates: &[(Element, Element)],
    last_node: usize,
    last_conjugate: usize,
) -> Witness {
    let mut tail = vec![conjugates[last_conjugate].1.clone()];
    let mut node = last_node;
    while node != 0 {
        let (_, parent, c) = &nodes[node];
        tail.push(conjugates[*c].1.clone());
        node = *parent;
    }
    tail.push(group.identity());
    tail.reverse();
    Witness::new(group.clone(), x.clone(), tail).expect("search witness is well formed")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyRecord {
    pub element: Element,
    pub outcome: SearchOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyReport {
    pub group: Group,
    pub element_radius: usize,
    pub budget: SearchBudget,
    pub records: Vec<SurveyRecord>,
}

impl SurveyReport {
    pub fn count(&self, status: &str) -> usize {
        self.records
            .iter()
            .filter(|r| r.outcome.status() == status)
            .count()
    }

    pub fn max_witness_length(&self) -> Option<usize> {
        self.records
            .iter()
            .filter_map(|r| r.outcome.witness().map(Witness::len))
            .max()
    }

    /// Every sampled non-identity element has a witness.
    pub fn consistent_with_gt_group(&self) -> bool {
        self.records.iter().all(|r| r.outcome.is_found())
    }
}

/// Searches every non-identity element of the element ball.
pub fn gt_group_survey(
    group: &Group,
    element_radius: usize,
    budget: &SearchBudget,
) -> Result<SurveyReport, SearchError> {
    budget.validate()?;
    let records = group
        .ball(element_radius)
        .into_iter()
        .filter(|x| !group.is_identity(x))
        .map(|x| {
            let outcome = search_witness(group, &x, budget)?;
            Ok(SurveyRecord {
                element: x,
                outcome,
            })
        })
        .collect::<Result<Vec<_>, SearchError>>()?;
    Ok(SurveyReport {
        group: group.clone(),
        element_radius,
        budget: *budget,
        records,
    })
}
