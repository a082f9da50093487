use std::sync::Arc;

/// Persistent name-keyed environment; cloning is O(1) and the innermost
/// binding of a name wins.
pub struct Env<V> {
    head: Option<Arc<Node<V>>>,
}

struct Node<V> {
    name: String,
    value: V,
    next: Option<Arc<Node<V>>>,
}

impl<V> Clone for Env<V> {
    fn clone(&self) -> Self {
        Env {
            head: self.head.clone(),
        }
    }
}

impl<V> Default for Env<V> {
    fn default() -> Self {
        Env { head: None }
    }
}

impl<V> Env<V> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn extend(&self, name: impl Into<String>, value: V) -> Self {
        Env {
            head: Some(Arc::new(Node {
                name: name.into(),
                value,
                next: self.head.clone(),
            })),
        }
    }

    pub fn lookup(&self, name: &str) -> Option<&V> {
        let mut cur = self.head.as_deref();
        while let Some(node) = cur {
            if node.name == name {
                return Some(&node.value);
            }
            cur = node.next.as_deref();
        }
        None
    }
}

impl<V, S: Into<String>> FromIterator<(S, V)> for Env<V> {
    fn from_iter<I: IntoIterator<Item = (S, V)>>(iter: I) -> Self {
        iter.into_iter()
            .fold(Env::new(), |env, (k, v)| env.extend(k, v))
    }
}
