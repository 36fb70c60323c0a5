use std::collections::HashSet;

use super::{Element, Group};

/// Breadth-first ball enumeration over the declared generators and their
/// inverses. Each layer is sorted, so the output order does not depend on
/// hashing.
pub(super) fn ball(group: &Group, radius: usize) -> Vec<(Element, usize)> {
    let mut steps = Vec::new();
    for x in group.generators() {
        let inv = group.inv(&x);
        steps.push(x);
        steps.push(inv);
    }
    let identity = group.identity();
    let mut seen: HashSet<Element> = HashSet::from([identity.clone()]);
    let mut out = vec![(identity.clone(), 0)];
    let mut layer = vec![identity];
    for r in 1..=radius {
        let mut next = Vec::new();
        for x in &layer {
            for s in &steps {
                let y = group.mul(x, s);
                if seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort();
        out.extend(next.iter().cloned().map(|y| (y, r)));
        layer = next;
    }
    out
}
