#![allow(dead_code)]

use std::path::{Path, PathBuf};

use serde_json::Value;
use speclab::{construct, Graph};

pub fn family(text: &str) -> Graph {
    construct(&text.parse().unwrap()).unwrap().0
}

pub fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges.iter().copied()).unwrap()
}

/// Labeled graph on `n` vertices whose edges are the set bits of `mask`
/// over pairs (u, v), u < v, in lexicographic order.
pub fn from_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

// ---------------------------------------------------------------- oracles

/// Smallest adjacency bit-string over all n! relabellings.
pub fn brute_canonical(g: &Graph) -> Vec<bool> {
    let n = g.n();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<bool>> = None;
    loop {
        let mut bits = Vec::with_capacity(n * n / 2);
        for v in 1..n {
            for u in 0..v {
                bits.push(g.has_edge(perm[u], perm[v]));
            }
        }
        if best.as_ref().is_none_or(|b| bits < *b) {
            best = Some(bits);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap_or_default()
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

pub fn brute_connected(g: &Graph) -> bool {
    let n = g.n();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for u in 0..n {
            if g.has_edge(v, u) && !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Union-find: an edge inside one class closes a cycle.
pub fn has_cycle(g: &Graph) -> bool {
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (u, v) in g.edges() {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a == b {
            return true;
        }
        parent[a] = b;
    }
    false
}

/// Enumerates simple cycles through their smallest vertex.
pub fn has_long_cycle(g: &Graph, min_len: usize) -> bool {
    fn walk(g: &Graph, start: usize, v: usize, len: usize, on: &mut [bool], min_len: usize) -> bool {
        for u in 0..g.n() {
            if !g.has_edge(v, u) {
                continue;
            }
            if u == start && len >= min_len {
                return true;
            }
            if u > start && !on[u] {
                on[u] = true;
                if walk(g, start, u, len + 1, on, min_len) {
                    return true;
                }
                on[u] = false;
            }
        }
        false
    }
    (0..g.n()).any(|s| {
        let mut on = vec![false; g.n()];
        on[s] = true;
        walk(g, s, s, 1, &mut on, min_len)
    })
}

/// Minor test straight from the definition: try every map of host vertices
/// to pattern vertices or "unused". Only for tiny hosts.
pub fn brute_minor(host: &Graph, pattern: &Graph) -> bool {
    let (n, k) = (host.n(), pattern.n());
    if k > n {
        return false;
    }
    let mut label = vec![0usize; n];
    loop {
        if model_ok(host, pattern, &label) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            label[i] += 1;
            if label[i] <= k {
                break;
            }
            label[i] = 0;
            i += 1;
        }
    }
}

fn model_ok(host: &Graph, pattern: &Graph, label: &[usize]) -> bool {
    let k = pattern.n();
    for p in 0..k {
        let set: Vec<usize> = (0..host.n()).filter(|&v| label[v] == p).collect();
        if set.is_empty() || !host.induced(&set).unwrap().is_connected() {
            return false;
        }
    }
    pattern.edges().all(|(a, b)| host.edges().any(|(u, v)| (label[u] == a && label[v] == b) || (label[u] == b && label[v] == a)))
}

// ---------------------------------------------------------- JSON schemas

pub fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas")
}

pub fn load_schema(name: &str) -> Value {
    let text = std::fs::read_to_string(schema_dir().join(name)).unwrap();
    serde_json::from_str(&text).unwrap()
}

/// Validates `value` against the schema file `name`. Covers the keywords
/// the shipped schemas use: type, enum, minimum, required, properties,
/// additionalProperties, items and $ref.
pub fn validate(name: &str, value: &Value) -> Result<(), String> {
    let root = load_schema(name);
    check(&root, &root, value, "$")
}

fn check(root: &Value, schema: &Value, value: &Value, path: &str) -> Result<(), String> {
    if let Some(r) = schema.get("$ref").and_then(Value::as_str) {
        return match r.strip_prefix("#/$defs/") {
            Some(def) => check(root, &root["$defs"][def], value, path),
            None => validate(r, value).map_err(|e| format!("{path} -> {r}: {e}")),
        };
    }
    if let Some(types) = schema.get("type") {
        let allowed: Vec<&str> = match types {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().filter_map(Value::as_str).collect(),
            _ => return Err(format!("{path}: bad type keyword")),
        };
        if !allowed.iter().any(|t| type_matches(t, value)) {
            return Err(format!("{path}: expected {allowed:?}, got {value}"));
        }
    }
    if let Some(options) = schema.get("enum").and_then(Value::as_array) {
        if !options.contains(value) {
            return Err(format!("{path}: {value} not in {options:?}"));
        }
    }
    if let (Some(min), Some(x)) = (schema.get("minimum").and_then(Value::as_f64), value.as_f64()) {
        if x < min {
            return Err(format!("{path}: {x} < {min}"));
        }
    }
    if let Some(obj) = value.as_object() {
        if let Some(required) = schema.get("required").and_then(Value::as_array) {
            for key in required.iter().filter_map(Value::as_str) {
                if !obj.contains_key(key) {
                    return Err(format!("{path}: missing {key}"));
                }
            }
        }
        let props = schema.get("properties").and_then(Value::as_object);
        for (key, v) in obj {
            match props.and_then(|p| p.get(key)) {
                Some(sub) => check(root, sub, v, &format!("{path}.{key}"))?,
                None if schema.get("additionalProperties") == Some(&Value::Bool(false)) => {
                    return Err(format!("{path}: unexpected property {key}"));
                }
                None => {}
            }
        }
    }
    if let (Some(items), Some(arr)) = (schema.get("items"), value.as_array()) {
        for (i, v) in arr.iter().enumerate() {
            check(root, items, v, &format!("{path}[{i}]"))?;
        }
    }
    Ok(())
}

fn type_matches(t: &str, value: &Value) -> bool {
    match t {
        "object" => value.is_object(),
        "array" => value.is_array(),
        "string" => value.is_string(),
        "boolean" => value.is_boolean(),
        "null" => value.is_null(),
        "number" => value.is_number(),
        "integer" => value.is_i64() || value.is_u64(),
        _ => false,
    }
}
