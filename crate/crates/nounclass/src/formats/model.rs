//! Model files.
//!
//! ```text
//! groups at_X in_X suffix
//! params min_leaf=2 cf=0.25 max_depth=- raising=1
//! split at_X <= 1.25000000e-2
//!   leaf 3 40
//!   split suffix <= 5.00000000e-1
//!     leaf 30 2
//!     leaf 1 9
//! ```
//!
//! Indentation is two spaces per level, the `<=` branch first. Thresholds use
//! nine significant digits, which is exactly what training produces.

use nounclass_core::{Model, TrainParams, TreeNode};

use crate::error::ParseError;

pub fn serialize_model(model: &Model) -> String {
    let p = &model.params;
    let mut out = format!("groups {}\n", model.groups.join(" "));
    out.push_str(&format!(
        "params min_leaf={} cf={} max_depth={} raising={}\n",
        p.min_leaf,
        p.confidence_factor,
        p.max_depth.map_or("-".to_string(), |d| d.to_string()),
        u8::from(p.subtree_raising)
    ));
    write_node(&model.root, &model.groups, 0, &mut out);
    out
}

fn write_node(node: &TreeNode, groups: &[String], depth: usize, out: &mut String) {
    let indent = "  ".repeat(depth);
    match node {
        TreeNode::Leaf { members, nonmembers } => out.push_str(&format!("{indent}leaf {members} {nonmembers}\n")),
        TreeNode::Split { feature, threshold, left, right } => {
            out.push_str(&format!("{indent}split {} <= {threshold:.8e}\n", groups[*feature]));
            write_node(left, groups, depth + 1, out);
            write_node(right, groups, depth + 1, out);
        }
    }
}

pub fn parse_model(text: &str) -> Result<Model, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
        .peekable();
    let (n, line) = lines.next().ok_or_else(|| ParseError::new(1, "missing `groups` line"))?;
    let groups: Vec<String> = match line.strip_prefix("groups") {
        Some(rest) => rest.split_whitespace().map(str::to_string).collect(),
        None => return Err(ParseError::new(n, "expected `groups`")),
    };
    if groups.is_empty() {
        return Err(ParseError::new(n, "model has no feature groups"));
    }
    let (n, line) = lines.next().ok_or_else(|| ParseError::new(n + 1, "missing `params` line"))?;
    let params = parse_params(line).map_err(|m| ParseError::new(n, m))?;
    let mut nodes = Vec::new();
    for (n, line) in lines {
        let depth_spaces = line.len() - line.trim_start_matches(' ').len();
        if depth_spaces % 2 != 0 {
            return Err(ParseError::new(n, "indentation must be a multiple of two spaces"));
        }
        nodes.push((n, depth_spaces / 2, line.trim()));
    }
    let mut at = 0;
    let root = parse_node(&nodes, &mut at, 0, &groups)?;
    if let Some(&(n, _, _)) = nodes.get(at) {
        return Err(ParseError::new(n, "trailing lines after the tree"));
    }
    Ok(Model { groups, params, root })
}

fn parse_params(line: &str) -> Result<TrainParams, String> {
    let rest = line.strip_prefix("params").ok_or("expected `params`")?;
    let mut p = TrainParams::default();
    for kv in rest.split_whitespace() {
        let (k, v) = kv.split_once('=').ok_or_else(|| format!("expected key=value, found `{kv}`"))?;
        let bad = || format!("bad value for `{k}`: `{v}`");
        match k {
            "min_leaf" => p.min_leaf = v.parse().map_err(|_| bad())?,
            "cf" => p.confidence_factor = v.parse().map_err(|_| bad())?,
            "max_depth" if v == "-" => p.max_depth = None,
            "max_depth" => p.max_depth = Some(v.parse().map_err(|_| bad())?),
            "raising" => {
                p.subtree_raising = match v {
                    "1" => true,
                    "0" => false,
                    _ => return Err(bad()),
                }
            }
            _ => return Err(format!("unknown parameter `{k}`")),
        }
    }
    p.validate().map_err(|e| e.to_string())?;
    Ok(p)
}

fn parse_node(nodes: &[(usize, usize, &str)], at: &mut usize, depth: usize, groups: &[String]) -> Result<TreeNode, ParseError> {
    let last = nodes.last().map_or(0, |n| n.0);
    let &(n, d, line) = nodes.get(*at).ok_or_else(|| ParseError::new(last + 1, "tree ends early"))?;
    if d != depth {
        return Err(ParseError::new(n, format!("expected indentation depth {depth}, found {d}")));
    }
    *at += 1;
    let words: Vec<&str> = line.split_whitespace().collect();
    match words.as_slice() {
        ["leaf", m, nm] => {
            let count = |s: &str| s.parse::<usize>().map_err(|_| ParseError::new(n, format!("bad count `{s}`")));
            Ok(TreeNode::leaf(count(m)?, count(nm)?))
        }
        ["split", group, "<=", t] => {
            let feature = groups
                .iter()
                .position(|g| g == group)
                .ok_or_else(|| ParseError::new(n, format!("unknown group `{group}`")))?;
            let threshold: f64 = t.parse().map_err(|_| ParseError::new(n, format!("bad threshold `{t}`")))?;
            let left = parse_node(nodes, at, depth + 1, groups)?;
            let right = parse_node(nodes, at, depth + 1, groups)?;
            Ok(TreeNode::Split { feature, threshold, left: Box::new(left), right: Box::new(right) })
        }
        _ => Err(ParseError::new(n, format!("expected `leaf M N` or `split GROUP <= T`, found `{line}`"))),
    }
}
