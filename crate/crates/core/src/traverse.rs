//! Explicit-stack traversal shared by every recursive operation, so deep
//! game trees never touch the call stack.

use std::collections::HashSet;
use std::hash::Hash;

/// Returns the keys reachable from `root` that are not yet `done`, ordered so
/// that every key appears after all of its children.
///
/// Keys for which `done` returns true are treated as leaves and omitted.
pub(crate) fn post_order<K, D, C>(root: K, mut done: D, mut children: C) -> Vec<K>
where
    K: Clone + Eq + Hash,
    D: FnMut(&K) -> bool,
    C: FnMut(&K, &mut Vec<K>),
{
    let mut order = Vec::new();
    if done(&root) {
        return order;
    }
    // A key is marked when it is expanded, not when it is pushed: a key may
    // sit on the stack more than once, and only its topmost copy is expanded.
    let mut expanded = HashSet::new();
    let mut stack = vec![(root, false)];
    let mut scratch = Vec::new();
    while let Some((key, ready)) = stack.pop() {
        if ready {
            order.push(key);
            continue;
        }
        if !expanded.insert(key.clone()) {
            continue;
        }
        scratch.clear();
        children(&key, &mut scratch);
        stack.push((key, true));
        for child in scratch.drain(..) {
            if !done(&child) && !expanded.contains(&child) {
                stack.push((child, false));
            }
        }
    }
    order
}
