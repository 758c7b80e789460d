use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::Point;

const MAX_ENTRIES: usize = 1 << 16;

/// Memo table keyed by the exact bit pattern of a point. Clones share the
/// table. Values must be pure functions of the point.
#[derive(Clone, Default)]
pub struct PointCache<T> {
    table: Arc<Mutex<HashMap<Vec<u64>, T>>>,
}

impl<T> std::fmt::Debug for PointCache<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("PointCache")
    }
}

impl<T: Clone> PointCache<T> {
    pub fn new() -> Self {
        Self {
            table: Arc::new(Mutex::new(HashMap::new())),
        }
    }

    pub fn get_or_insert_with(&self, q: &Point, f: impl FnOnce() -> T) -> T {
        let key: Vec<u64> = q.coords().iter().map(|c| c.to_bits()).collect();
        if let Some(v) = self.table.lock().expect("cache lock").get(&key) {
            return v.clone();
        }
        let v = f();
        let mut table = self.table.lock().expect("cache lock");
        if table.len() >= MAX_ENTRIES {
            table.clear();
        }
        table.insert(key, v.clone());
        v
    }
}
