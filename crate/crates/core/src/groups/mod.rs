//! Finite groups as multiplication tables, with the structural predicates
//! the group-algebra analysis needs: element orders, conjugacy, FC-subgroup,
//! derived subgroup, Dedekind/Hamiltonian classification, p′-group test, and
//! index-2 abelian subgroup search.

mod builders;

pub use builders::{build_group, parse_group_spec, DEFAULT_MAX_ORDER};

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("invalid table: {0}")]
    InvalidTable(String),
    #[error("invalid group spec `{spec}`: {message}")]
    SpecSyntax { spec: String, message: String },
    #[error("group order {0} exceeds the cap {1}")]
    OrderTooLarge(usize, usize),
    #[error("cannot read table file {path}: {message}")]
    FileRead { path: String, message: String },
}

/// A finite group given by its full multiplication table. Index 0 is the
/// identity; `table[g * n + h]` is the product g·h.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    names: Vec<String>,
}

impl FiniteGroup {
    /// Validates and wraps a multiplication table: Latin square, two-sided
    /// identity at index 0, inverses, and full O(n³) associativity.
    pub fn from_table(
        table: Vec<Vec<usize>>,
        names: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::InvalidTable("empty table".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::InvalidTable(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for &x in row {
                if x >= n {
                    return Err(GroupError::InvalidTable(format!(
                        "entry {x} out of range in row {i}"
                    )));
                }
                flat.push(x);
            }
        }
        let g = Self::assemble(n, flat, names)?;
        g.check_axioms()?;
        Ok(g)
    }

    /// Fast path for internally generated tables: checks identity and
    /// inverses, skips the O(n³) associativity scan.
    pub(crate) fn from_table_trusted(
        n: usize,
        flat: Vec<usize>,
        names: Vec<String>,
    ) -> Self {
        let g = Self::assemble(n, flat, Some(names)).expect("trusted builder produced bad table");
        debug_assert!(g.check_axioms().is_ok());
        g
    }

    fn assemble(
        n: usize,
        flat: Vec<usize>,
        names: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        assert_eq!(flat.len(), n * n);
        // identity and inverses are needed to build the struct at all
        for g in 0..n {
            if flat[g] != g || flat[g * n] != g {
                return Err(GroupError::InvalidTable(format!(
                    "index 0 is not a two-sided identity at element {g}"
                )));
            }
        }
        let mut inverses = vec![usize::MAX; n];
        for g in 0..n {
            for h in 0..n {
                if flat[g * n + h] == 0 && flat[h * n + g] == 0 {
                    inverses[g] = h;
                    break;
                }
            }
            if inverses[g] == usize::MAX {
                return Err(GroupError::InvalidTable(format!(
                    "element {g} has no two-sided inverse"
                )));
            }
        }
        let names =
            names.unwrap_or_else(|| (0..n).map(|i| format!("g{i}")).collect::<Vec<_>>());
        if names.len() != n {
            return Err(GroupError::InvalidTable("name list length mismatch".into()));
        }
        Ok(FiniteGroup {
            order: n,
            table: flat,
            inverses,
            names,
        })
    }

    fn check_axioms(&self) -> Result<(), GroupError> {
        let n = self.order;
        // Latin square: every row and column is a permutation
        for g in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for h in 0..n {
                let r = self.mul(g, h);
                let c = self.mul(h, g);
                if seen_row[r] || seen_col[c] {
                    return Err(GroupError::InvalidTable(format!(
                        "row or column {g} repeats an element"
                    )));
                }
                seen_row[r] = true;
                seen_col[c] = true;
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(GroupError::InvalidTable(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g * self.order + h]
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inverses[g]
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Least n ≥ 1 with gⁿ = identity.
    pub fn order_of(&self, g: usize) -> usize {
        let mut x = g;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, g);
            n += 1;
        }
        n
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|g| (0..self.order).all(|h| self.mul(g, h) == self.mul(h, g)))
    }

    /// The set of conjugates h·g·h⁻¹ of g.
    pub fn conjugates(&self, g: usize) -> BTreeSet<usize> {
        (0..self.order)
            .map(|h| self.mul(self.mul(h, g), self.inv(h)))
            .collect()
    }

    /// The FC-subgroup: elements with finitely many conjugates, computed by
    /// conjugate counting (for a finite group this is the whole group).
    pub fn fc_subgroup(&self) -> BTreeSet<usize> {
        (0..self.order)
            .filter(|&g| self.conjugates(g).len() <= self.order)
            .collect()
    }

    /// Closure of a generating set under multiplication (a subgroup, since
    /// the group is finite).
    pub fn subgroup_closure<I: IntoIterator<Item = usize>>(&self, gens: I) -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::new();
        set.insert(0);
        let mut frontier: Vec<usize> = gens.into_iter().collect();
        while let Some(g) = frontier.pop() {
            if set.insert(g) {
                for &h in set.clone().iter() {
                    for prod in [self.mul(g, h), self.mul(h, g)] {
                        if !set.contains(&prod) {
                            frontier.push(prod);
                        }
                    }
                }
            }
        }
        set
    }

    /// Derived (commutator) subgroup of the subgroup `s`: the closure of all
    /// commutators [a, b] = a·b·a⁻¹·b⁻¹ with a, b ∈ s.
    pub fn derived_subgroup(&self, s: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut comms = Vec::new();
        for &a in s {
            for &b in s {
                comms.push(self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b))));
            }
        }
        self.subgroup_closure(comms)
    }

    /// Cyclic subgroup generated by g.
    pub fn cyclic_subgroup(&self, g: usize) -> BTreeSet<usize> {
        let mut set = BTreeSet::new();
        let mut x = 0;
        loop {
            set.insert(x);
            x = self.mul(x, g);
            if x == 0 {
                break;
            }
        }
        set
    }

    /// Whether `s` is setwise invariant under conjugation.
    pub fn is_subgroup_normal(&self, s: &BTreeSet<usize>) -> bool {
        s.iter().all(|&x| {
            (0..self.order).all(|h| s.contains(&self.mul(self.mul(h, x), self.inv(h))))
        })
    }

    /// Abelian / Hamiltonian (nonabelian with every cyclic subgroup normal) /
    /// NonDedekind with a witness generator of a non-normal cyclic subgroup.
    pub fn classify(&self) -> GroupClassification {
        if self.is_abelian() {
            return GroupClassification::Abelian;
        }
        for g in 1..self.order {
            // ⟨g⟩ is normal iff every conjugate of g lies in ⟨g⟩
            let cyc = self.cyclic_subgroup(g);
            if !self.conjugates(g).iter().all(|c| cyc.contains(c)) {
                return GroupClassification::NonDedekind { witness: g };
            }
        }
        GroupClassification::Hamiltonian
    }

    /// True iff no element has order divisible by p.
    pub fn is_p_prime_group(&self, p: u64) -> bool {
        (0..self.order).all(|g| !(self.order_of(g) as u64).is_multiple_of(p))
    }

    /// Searches for an abelian subgroup of index 2 via the kernels of the
    /// surjections onto the 2-element group (they all contain the subgroup
    /// generated by squares and commutators).
    pub fn find_abelian_index2_subgroup(&self) -> Option<BTreeSet<usize>> {
        let mut gens: Vec<usize> = (0..self.order).map(|g| self.mul(g, g)).collect();
        for a in 0..self.order {
            for b in 0..self.order {
                gens.push(self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b))));
            }
        }
        let n_sub = self.subgroup_closure(gens);
        // coset space of N, an elementary abelian 2-group
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps: Vec<usize> = Vec::new();
        for g in 0..self.order {
            if coset_of[g] == usize::MAX {
                let idx = reps.len();
                for &h in &n_sub {
                    coset_of[self.mul(g, h)] = idx;
                }
                reps.push(g);
            }
        }
        let k = reps.len(); // |G/N| = 2^m
        if k == 1 {
            return None;
        }
        // greedy F2 basis of the quotient, tracking coordinates per coset
        let mut coords: Vec<Option<u32>> = vec![None; k];
        coords[coset_of[0]] = Some(0);
        let mut dim = 0u32;
        for idx in 0..k {
            if coords[idx].is_some() {
                continue;
            }
            let bit = 1u32 << dim;
            dim += 1;
            let known: Vec<(usize, u32)> = coords
                .iter()
                .enumerate()
                .filter_map(|(i, c)| c.map(|v| (i, v)))
                .collect();
            for (i, v) in known {
                let combined = coset_of[self.mul(reps[i], reps[idx])];
                coords[combined] = Some(v | bit);
            }
        }
        // hyperplanes = kernels of nonzero functionals
        for lambda in 1u32..(1 << dim) {
            let subgroup: BTreeSet<usize> = (0..self.order)
                .filter(|&g| {
                    let c = coords[coset_of[g]].expect("coset coordinates are total");
                    (c & lambda).count_ones().is_multiple_of(2)
                })
                .collect();
            if subgroup.len() * 2 != self.order {
                continue;
            }
            let abelian = subgroup
                .iter()
                .all(|&a| subgroup.iter().all(|&b| self.mul(a, b) == self.mul(b, a)));
            if abelian {
                return Some(subgroup);
            }
        }
        None
    }

    /// Direct product, indexed as (a, b) ↦ a·|H| + b.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let n = self.order * other.order;
        let mut flat = vec![0usize; n * n];
        let mut names = Vec::with_capacity(n);
        for a in 0..self.order {
            for b in 0..other.order {
                names.push(format!("({},{})", self.names[a], other.names[b]));
            }
        }
        for a1 in 0..self.order {
            for b1 in 0..other.order {
                let i = a1 * other.order + b1;
                for a2 in 0..self.order {
                    for b2 in 0..other.order {
                        let j = a2 * other.order + b2;
                        flat[i * n + j] = self.mul(a1, a2) * other.order + other.mul(b1, b2);
                    }
                }
            }
        }
        FiniteGroup::from_table_trusted(n, flat, names)
    }
}

/// Abelian, Hamiltonian, or neither (with a witness of a non-normal cyclic
/// subgroup).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupClassification {
    Abelian,
    Hamiltonian,
    NonDedekind { witness: usize },
}

impl fmt::Display for GroupClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupClassification::Abelian => write!(f, "abelian"),
            GroupClassification::Hamiltonian => write!(f, "Hamiltonian"),
            GroupClassification::NonDedekind { witness } => {
                write!(f, "non-Dedekind (witness element {witness})")
            }
        }
    }
}

#[cfg(test)]
mod tests;
