//! Builders for the group spec grammar: `c<n>`, `d<n>` (dihedral of order
//! 2n), `s<n>` (symmetric, n ≤ 5), `q8`, direct products with `*`, and
//! `file:<path>` multiplication-table files.

use itertools::Itertools;

use super::{FiniteGroup, GroupError};

/// Default cap on group order for table construction.
pub const DEFAULT_MAX_ORDER: usize = 2000;

fn spec_err(spec: &str, message: impl Into<String>) -> GroupError {
    GroupError::SpecSyntax {
        spec: spec.to_string(),
        message: message.into(),
    }
}

pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let mut flat = vec![0usize; n * n];
    for i in 0..n {
        for j in 0..n {
            flat[i * n + j] = (i + j) % n;
        }
    }
    let names = (0..n)
        .map(|i| match i {
            0 => "e".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{i}"),
        })
        .collect();
    FiniteGroup::from_table_trusted(n, flat, names)
}

/// Dihedral group of order 2n: elements sᶠ·rⁱ with rⁿ = s² = 1, s·r·s = r⁻¹,
/// encoded as index f·n + i.
pub fn dihedral(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let order = 2 * n;
    let mut flat = vec![0usize; order * order];
    let idx = |f: usize, i: usize| f * n + i;
    for f1 in 0..2 {
        for i1 in 0..n {
            for f2 in 0..2 {
                for i2 in 0..n {
                    // (s^f1 r^i1)(s^f2 r^i2) = s^(f1+f2) r^(i2 ± i1)
                    let f = (f1 + f2) % 2;
                    let i = if f2 == 0 {
                        (i1 + i2) % n
                    } else {
                        (n - i1 + i2) % n
                    };
                    flat[idx(f1, i1) * order + idx(f2, i2)] = idx(f, i);
                }
            }
        }
    }
    let names = (0..order)
        .map(|k| {
            let (f, i) = (k / n, k % n);
            match (f, i) {
                (0, 0) => "e".to_string(),
                (0, 1) => "r".to_string(),
                (0, _) => format!("r^{i}"),
                (_, 0) => "s".to_string(),
                (_, 1) => "sr".to_string(),
                (_, _) => format!("sr^{i}"),
            }
        })
        .collect();
    FiniteGroup::from_table_trusted(order, flat, names)
}

/// The quaternion group {±1, ±i, ±j, ±k}, indexed 1, -1, i, -i, j, -j, k, -k.
pub fn quaternion() -> FiniteGroup {
    // elements as (sign, axis) with axis 0 = 1, 1 = i, 2 = j, 3 = k
    let decode = |g: usize| -> (bool, usize) { (g % 2 == 1, g / 2) };
    let encode = |neg: bool, axis: usize| -> usize { axis * 2 + neg as usize };
    let mul_axes = |a: usize, b: usize| -> (bool, usize) {
        match (a, b) {
            (0, x) => (false, x),
            (x, 0) => (false, x),
            (x, y) if x == y => (true, 0), // i² = j² = k² = -1
            (1, 2) => (false, 3),          // ij = k
            (2, 3) => (false, 1),          // jk = i
            (3, 1) => (false, 2),          // ki = j
            (2, 1) => (true, 3),           // ji = -k
            (3, 2) => (true, 1),           // kj = -i
            (1, 3) => (true, 2),           // ik = -j
            _ => unreachable!(),
        }
    };
    let n = 8;
    let mut flat = vec![0usize; n * n];
    for g in 0..n {
        for h in 0..n {
            let (sg, ag) = decode(g);
            let (sh, ah) = decode(h);
            let (sp, ap) = mul_axes(ag, ah);
            flat[g * n + h] = encode(sg ^ sh ^ sp, ap);
        }
    }
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    FiniteGroup::from_table_trusted(n, flat, names)
}

/// Symmetric group on n letters (n ≤ 5), permutations in lexicographic
/// order so the identity sits at index 0. Product σ·τ applies τ first.
pub fn symmetric(n: usize) -> FiniteGroup {
    assert!((1..=5).contains(&n));
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let index_of = |p: &[usize]| -> usize {
        perms
            .iter()
            .position(|q| q.as_slice() == p)
            .expect("permutation enumeration is complete")
    };
    let order = perms.len();
    let mut flat = vec![0usize; order * order];
    for (i, p) in perms.iter().enumerate() {
        for (j, q) in perms.iter().enumerate() {
            let composed: Vec<usize> = (0..n).map(|x| p[q[x]]).collect();
            flat[i * order + j] = index_of(&composed);
        }
    }
    let names = perms
        .iter()
        .map(|p| {
            let body = p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("");
            format!("p{body}")
        })
        .collect();
    FiniteGroup::from_table_trusted(order, flat, names)
}

fn from_file(path: &str, max_order: usize) -> Result<FiniteGroup, GroupError> {
    let content = std::fs::read_to_string(path).map_err(|e| GroupError::FileRead {
        path: path.to_string(),
        message: e.to_string(),
    })?;
    let mut lines = content.lines().filter(|l| !l.trim().is_empty());
    let n: usize = lines
        .next()
        .ok_or_else(|| GroupError::InvalidTable("empty file".into()))?
        .trim()
        .parse()
        .map_err(|_| GroupError::InvalidTable("first line must be the order".into()))?;
    if n > max_order {
        return Err(GroupError::OrderTooLarge(n, max_order));
    }
    let mut table = Vec::with_capacity(n);
    for _ in 0..n {
        let line = lines
            .next()
            .ok_or_else(|| GroupError::InvalidTable("missing table row".into()))?;
        let row: Result<Vec<usize>, _> =
            line.split_whitespace().map(|t| t.parse::<usize>()).collect();
        table.push(row.map_err(|_| GroupError::InvalidTable("non-integer entry".into()))?);
    }
    FiniteGroup::from_table(table, None)
}

/// Parses a single (non-product) group atom.
fn build_atom(atom: &str, max_order: usize) -> Result<FiniteGroup, GroupError> {
    let a = atom.trim().to_ascii_lowercase();
    if a == "q8" {
        return Ok(quaternion());
    }
    if let Some(path) = atom.trim().strip_prefix("file:") {
        return from_file(path, max_order);
    }
    if let Some(rest) = a.strip_prefix('c') {
        let n: usize = rest
            .parse()
            .map_err(|_| spec_err(atom, "expected c<n>"))?;
        if n == 0 {
            return Err(spec_err(atom, "cyclic group order must be ≥ 1"));
        }
        if n > max_order {
            return Err(GroupError::OrderTooLarge(n, max_order));
        }
        return Ok(cyclic(n));
    }
    if let Some(rest) = a.strip_prefix('d') {
        let n: usize = rest
            .parse()
            .map_err(|_| spec_err(atom, "expected d<n>"))?;
        if n == 0 {
            return Err(spec_err(atom, "dihedral parameter must be ≥ 1"));
        }
        if 2 * n > max_order {
            return Err(GroupError::OrderTooLarge(2 * n, max_order));
        }
        return Ok(dihedral(n));
    }
    if let Some(rest) = a.strip_prefix('s') {
        let n: usize = rest
            .parse()
            .map_err(|_| spec_err(atom, "expected s<n>"))?;
        if !(1..=5).contains(&n) {
            return Err(spec_err(atom, "symmetric groups are supported for n ≤ 5"));
        }
        return Ok(symmetric(n));
    }
    Err(spec_err(atom, "unknown group atom"))
}

/// Parses the group spec grammar and builds the group, enforcing the order
/// cap on the final product.
pub fn parse_group_spec(spec: &str, max_order: usize) -> Result<FiniteGroup, GroupError> {
    let mut parts = spec.split('*');
    let first = parts
        .next()
        .ok_or_else(|| spec_err(spec, "empty group spec"))?;
    let mut group = build_atom(first, max_order)?;
    for part in parts {
        let next = build_atom(part, max_order)?;
        let combined_order = group.order() * next.order();
        if combined_order > max_order {
            return Err(GroupError::OrderTooLarge(combined_order, max_order));
        }
        group = group.direct_product(&next);
    }
    Ok(group)
}

/// Builds a group from its spec with the default order cap.
pub fn build_group(spec: &str) -> Result<FiniteGroup, GroupError> {
    parse_group_spec(spec, DEFAULT_MAX_ORDER)
}
