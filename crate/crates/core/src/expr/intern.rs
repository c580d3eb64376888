//! Hash-consing of expression nodes.
//!
//! Every [`Expr`] is created through [`intern`], so two structurally equal
//! expressions share one allocation and equality is a pointer comparison.
//! There is one table per weight type; lookups take a read lock and only a
//! miss takes the write lock.

use std::any::{Any, TypeId};
use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock, RwLock};

use super::{Expr, ExprKind, Node};
use crate::semiring::Semiring;

struct Table<S: Semiring> {
    nodes: RwLock<HashMap<ExprKind<S>, Expr<S>>>,
}

type Registry = RwLock<HashMap<TypeId, &'static (dyn Any + Send + Sync)>>;

fn table<S: Semiring>() -> &'static Table<S> {
    static REGISTRY: OnceLock<Registry> = OnceLock::new();
    let registry = REGISTRY.get_or_init(Default::default);
    let id = TypeId::of::<S>();
    let found = registry.read().expect("intern registry poisoned").get(&id).copied();
    let any = match found {
        Some(t) => t,
        None => *registry
            .write()
            .expect("intern registry poisoned")
            .entry(id)
            .or_insert_with(|| {
                let table: &'static Table<S> = Box::leak(Box::new(Table {
                    nodes: RwLock::new(HashMap::new()),
                }));
                table
            }),
    };
    any.downcast_ref::<Table<S>>().expect("intern table type")
}

pub(super) fn intern<S: Semiring>(kind: ExprKind<S>) -> Expr<S> {
    let table = table::<S>();
    if let Some(e) = table.nodes.read().expect("intern table poisoned").get(&kind) {
        return e.clone();
    }
    let mut nodes = table.nodes.write().expect("intern table poisoned");
    nodes
        .entry(kind)
        .or_insert_with_key(|kind| {
            let mut h = DefaultHasher::new();
            kind.hash(&mut h);
            Expr(Arc::new(Node {
                kind: kind.clone(),
                hash: h.finish(),
            }))
        })
        .clone()
}

/// Number of distinct expressions interned so far for weight type `S`.
pub fn interned_count<S: Semiring>() -> usize {
    table::<S>().nodes.read().expect("intern table poisoned").len()
}
