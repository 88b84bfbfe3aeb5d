//! Finite groups with elements canonicalized to indices `0..n`, index 0
//! being the identity.
//!
//! Cyclic groups are computed arithmetically at any order; everything else
//! is backed by a Cayley table of at most [`MAX_TABLE_ORDER`] elements,
//! checked exhaustively against the group axioms on construction.

use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};

pub const MAX_TABLE_ORDER: usize = 512;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(u32);

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }

    pub(crate) fn from_index(i: usize) -> Self {
        GroupElement(i as u32)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug)]
enum Repr {
    Cyclic(u32),
    Table { mul: Vec<u32>, inv: Vec<u32> },
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    spec: String,
    order: usize,
    abelian: bool,
    repr: Repr,
    labels: Option<Vec<String>>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
            && self.abelian == other.abelian
            && match (&self.repr, &other.repr) {
                (Repr::Cyclic(a), Repr::Cyclic(b)) => a == b,
                (Repr::Table { mul: a, .. }, Repr::Table { mul: b, .. }) => a == b,
                _ => false,
            }
    }
}

impl FiniteGroup {
    /// The cyclic group `Z_m` in additive notation.
    pub fn cyclic(m: usize) -> Result<Self> {
        if m == 0 || m > u32::MAX as usize {
            return Err(Error::UnknownGroup(format!("Z{m}")));
        }
        Ok(FiniteGroup { spec: format!("Z{m}"), order: m, abelian: true, repr: Repr::Cyclic(m as u32), labels: None })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1).expect("order 1")
    }

    /// The direct product `a × b`, element `(x, y)` at index `x * |b| + y`.
    pub fn product(a: &FiniteGroup, b: &FiniteGroup) -> Result<Self> {
        let (n, m) = (a.order, b.order);
        let order = n * m;
        if order > MAX_TABLE_ORDER {
            return Err(Error::BadGroupTable(format!("product of order {order} exceeds {MAX_TABLE_ORDER}")));
        }
        let mut table = vec![vec![0usize; order]; order];
        for x1 in 0..n {
            for y1 in 0..m {
                for x2 in 0..n {
                    for y2 in 0..m {
                        let x = a.op(GroupElement::from_index(x1), GroupElement::from_index(x2)).index();
                        let y = b.op(GroupElement::from_index(y1), GroupElement::from_index(y2)).index();
                        table[x1 * m + y1][x2 * m + y2] = x * m + y;
                    }
                }
            }
        }
        let labels = (0..order)
            .map(|i| {
                let x = a.label(GroupElement::from_index(i / m));
                let y = b.label(GroupElement::from_index(i % m));
                format!("({x},{y})")
            })
            .collect();
        Self::from_table(format!("{}x{}", a.spec, b.spec), table, Some(labels))
    }

    /// The symmetric group `S_m` acting on `1..=m`, with the product
    /// `(a·b)(x) = a(b(x))` (apply `b` first).
    pub fn symmetric(m: usize) -> Result<Self> {
        if m == 0 || m > 5 {
            return Err(Error::UnknownGroup(format!("S{m} (supported: S1..S5)")));
        }
        let perms = permutations(m);
        let index = |p: &[usize]| perms.iter().position(|q| q == p).expect("closed");
        let n = perms.len();
        let mut table = vec![vec![0usize; n]; n];
        for (i, a) in perms.iter().enumerate() {
            for (j, b) in perms.iter().enumerate() {
                let c: Vec<usize> = (0..m).map(|x| a[b[x]]).collect();
                table[i][j] = index(&c);
            }
        }
        let labels = perms.iter().map(|p| cycle_notation(p)).collect();
        Self::from_table(format!("S{m}"), table, Some(labels))
    }

    /// The dihedral group `D_m` of order `2m`: `r^i s^a`, with `s r s = r^-1`.
    pub fn dihedral(m: usize) -> Result<Self> {
        if m == 0 || 2 * m > MAX_TABLE_ORDER {
            return Err(Error::UnknownGroup(format!("D{m}")));
        }
        let n = 2 * m;
        let idx = |i: usize, a: usize| a * m + i;
        let mut table = vec![vec![0usize; n]; n];
        for a in 0..2 {
            for i in 0..m {
                for b in 0..2 {
                    for j in 0..m {
                        // r^i s^a r^j s^b = r^(i ± j) s^(a+b)
                        let k = if a == 0 { (i + j) % m } else { (i + m - j) % m };
                        table[idx(i, a)][idx(j, b)] = idx(k, (a + b) % 2);
                    }
                }
            }
        }
        let labels = (0..n)
            .map(|e| {
                let (i, a) = (e % m, e / m);
                match (i, a) {
                    (0, 0) => "e".to_string(),
                    (1, 0) => "r".to_string(),
                    (i, 0) => format!("r{i}"),
                    (0, _) => "s".to_string(),
                    (1, _) => "rs".to_string(),
                    (i, _) => format!("r{i}s"),
                }
            })
            .collect();
        Self::from_table(format!("D{m}"), table, Some(labels))
    }

    /// A group from its Cayley table, `table[a][b] = a·b`. The identity is
    /// moved to index 0 if it is not already there.
    pub fn from_table(spec: String, table: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || n > MAX_TABLE_ORDER {
            return Err(Error::BadGroupTable(format!("order {n} outside 1..={MAX_TABLE_ORDER}")));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::BadGroupTable("table is not an n x n table over 0..n".into()));
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::BadGroupTable("no identity element".into()))?;
        // Relabel by swapping e and 0.
        let perm = |x: usize| if x == e { 0 } else if x == 0 { e } else { x };
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[perm(a) * n + perm(b)] = perm(table[a][b]) as u32;
            }
        }
        let labels = labels.map(|l| {
            let mut out = l.clone();
            out.swap(0, e);
            out
        });
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(Error::BadGroupTable("label count differs from order".into()));
            }
        }
        let mut inv = vec![u32::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| mul[a * n + b] == 0 && mul[b * n + a] == 0) {
                Some(b) => inv[a] = b as u32,
                None => return Err(Error::BadGroupTable(format!("element {a} has no inverse"))),
            }
        }
        let abelian = (0..n).all(|a| (0..n).all(|b| mul[a * n + b] == mul[b * n + a]));
        let group = FiniteGroup { spec, order: n, abelian, repr: Repr::Table { mul, inv }, labels };
        group.verify_axioms()?;
        Ok(group)
    }

    /// Parses `Z6`, `S3`, `D4`, products such as `Z2xZ3`, or `table:<file>`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if let Some(path) = spec.strip_prefix("table:") {
            let text = std::fs::read_to_string(path)?;
            return Self::parse_table(spec.to_string(), &text);
        }
        if spec.contains(['x', '×']) {
            let mut parts = spec.split(['x', '×']);
            let first = Self::parse(parts.next().unwrap_or(""))?;
            return parts.try_fold(first, |acc, p| Self::product(&acc, &Self::parse(p)?));
        }
        if spec.eq_ignore_ascii_case("trivial") {
            return Ok(Self::trivial());
        }
        let unknown = || Error::UnknownGroup(spec.to_string());
        let (kind, rest) = spec.split_at(spec.char_indices().nth(1).map(|(i, _)| i).ok_or_else(unknown)?);
        let m: usize = rest.parse().map_err(|_| unknown())?;
        match kind {
            "Z" | "C" => Self::cyclic(m),
            "S" => Self::symmetric(m),
            "D" => Self::dihedral(m),
            _ => Err(unknown()),
        }
    }

    /// Table file: optional `labels a b c ...` line, then `n` rows of `n`
    /// element indices. Lines starting with `#` are ignored.
    pub fn parse_table(spec: String, text: &str) -> Result<Self> {
        let mut labels = None;
        let mut rows = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            if let Some(rest) = line.strip_prefix("labels") {
                labels = Some(rest.split_whitespace().map(String::from).collect());
                continue;
            }
            let row: std::result::Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
            rows.push(row.map_err(|_| Error::Parse(format!("bad table row {line:?}")))?);
        }
        Self::from_table(spec, rows, labels)
    }

    pub fn load_table(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse_table(format!("table:{}", path.display()), &text)
    }

    /// Exhaustive check of closure, identity, inverses and associativity.
    pub fn verify_axioms(&self) -> Result<()> {
        let n = self.order;
        if n > MAX_TABLE_ORDER && matches!(self.repr, Repr::Cyclic(_)) {
            return Ok(());
        }
        let el = GroupElement::from_index;
        for a in 0..n {
            if self.op(el(a), self.identity()) != el(a) || self.op(self.identity(), el(a)) != el(a) {
                return Err(Error::BadGroupTable(format!("identity fails at {a}")));
            }
            if !self.op(el(a), self.inv(el(a))).is_identity() {
                return Err(Error::BadGroupTable(format!("inverse fails at {a}")));
            }
            for b in 0..n {
                let ab = self.op(el(a), el(b));
                if self.abelian && ab != self.op(el(b), el(a)) {
                    return Err(Error::BadGroupTable("abelian flag inconsistent".into()));
                }
                for c in 0..n {
                    if self.op(ab, el(c)) != self.op(el(a), self.op(el(b), el(c))) {
                        return Err(Error::BadGroupTable(format!("associativity fails at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn spec(&self) -> &str {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::IDENTITY
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> {
        (0..self.order).map(GroupElement::from_index)
    }

    pub fn element(&self, i: usize) -> Result<GroupElement> {
        if i < self.order {
            Ok(GroupElement::from_index(i))
        } else {
            Err(Error::GroupMismatch { index: i, order: self.order })
        }
    }

    #[inline]
    pub fn op(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        match &self.repr {
            Repr::Cyclic(m) => GroupElement(((a.0 as u64 + b.0 as u64) % *m as u64) as u32),
            Repr::Table { mul, .. } => GroupElement(mul[a.index() * self.order + b.index()]),
        }
    }

    #[inline]
    pub fn inv(&self, a: GroupElement) -> GroupElement {
        match &self.repr {
            Repr::Cyclic(m) => GroupElement((*m - a.0) % *m),
            Repr::Table { inv, .. } => GroupElement(inv[a.index()]),
        }
    }

    /// `a` for `sign = +1`, `a^-1` for `sign = -1`.
    #[inline]
    pub fn neg_pow(&self, a: GroupElement, sign: i8) -> GroupElement {
        if sign >= 0 {
            a
        } else {
            self.inv(a)
        }
    }

    /// `a · b`, rejecting indices outside the group.
    pub fn checked_op(&self, a: GroupElement, b: GroupElement) -> Result<GroupElement> {
        self.element(a.index())?;
        self.element(b.index())?;
        Ok(self.op(a, b))
    }

    /// `a b a^-1`.
    pub fn conjugate(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        self.op(self.op(a, b), self.inv(a))
    }

    /// `a b^-1`.
    pub fn div(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        self.op(a, self.inv(b))
    }

    pub fn label(&self, a: GroupElement) -> String {
        match &self.labels {
            Some(l) => l[a.index()].clone(),
            None => a.index().to_string(),
        }
    }

    /// Looks an element up by label or by index.
    pub fn parse_element(&self, s: &str) -> Result<GroupElement> {
        if let Some(l) = &self.labels {
            if let Some(i) = l.iter().position(|x| x == s) {
                return Ok(GroupElement::from_index(i));
            }
        }
        let i: usize = s.parse().map_err(|_| Error::Parse(format!("unknown element {s:?} of {}", self.spec)))?;
        self.element(i)
    }
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..m).collect();
    loop {
        out.push(current.clone());
        // next lexicographic permutation
        let Some(i) = (1..m).rev().find(|&i| current[i - 1] < current[i]) else { break };
        let j = (i..m).rev().find(|&j| current[j] > current[i - 1]).expect("exists");
        current.swap(i - 1, j);
        current[i..].reverse();
    }
    out
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            out.push_str(&(x + 1).to_string());
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        "e".into()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(i: usize) -> GroupElement {
        GroupElement::from_index(i)
    }

    #[test]
    fn z2_addition() {
        let g = FiniteGroup::cyclic(2).unwrap();
        assert_eq!(g.op(el(1), el(1)), el(0));
        assert_eq!(g.neg_pow(el(1), -1), el(1));
    }

    #[test]
    fn neg_pow_examples() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        assert_eq!(z3.neg_pow(el(1), -1), el(2));
        let z5 = FiniteGroup::cyclic(5).unwrap();
        assert_eq!(z5.neg_pow(el(2), 1), el(2));
    }

    #[test]
    fn s3_composition() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let a = g.parse_element("(12)").unwrap();
        let b = g.parse_element("(23)").unwrap();
        assert_eq!(g.label(g.op(a, b)), "(123)");
        assert_eq!(g.label(g.op(b, a)), "(132)");
        assert!(!g.is_abelian());
        assert_eq!(g.label(g.identity()), "e");
    }

    #[test]
    fn parse_specs() {
        for (spec, n, abelian) in
            [("Z2", 2, true), ("Z6", 6, true), ("Z2xZ3", 6, true), ("S3", 6, false), ("D4", 8, false), ("Z2xZ2", 4, true)]
        {
            let g = FiniteGroup::parse(spec).unwrap();
            assert_eq!(g.order(), n, "{spec}");
            assert_eq!(g.is_abelian(), abelian, "{spec}");
            g.verify_axioms().unwrap();
        }
        assert!(FiniteGroup::parse("Q8").is_err());
        assert!(FiniteGroup::parse("S6").is_err());
    }

    #[test]
    fn table_identity_is_reindexed() {
        // Z3 with identity stored at index 2.
        let table = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let g = FiniteGroup::from_table("t".into(), table, None).unwrap();
        assert!(g.op(el(1), g.inv(el(1))).is_identity());
        assert_eq!(g.order(), 3);
    }

    #[test]
    fn bad_tables_rejected() {
        let not_assoc = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 2, 0]];
        assert!(FiniteGroup::from_table("t".into(), not_assoc, None).is_err());
        let no_identity = vec![vec![1, 1], vec![1, 1]];
        assert!(FiniteGroup::from_table("t".into(), no_identity, None).is_err());
    }

    #[test]
    fn dihedral_relations() {
        let g = FiniteGroup::dihedral(4).unwrap();
        let r = g.parse_element("r").unwrap();
        let s = g.parse_element("s").unwrap();
        assert_eq!(g.op(g.op(s, r), s), g.inv(r));
        let mut x = g.identity();
        for _ in 0..4 {
            x = g.op(x, r);
        }
        assert!(x.is_identity());
    }

    #[test]
    fn large_cyclic_is_arithmetic() {
        let g = FiniteGroup::cyclic(1_000_003).unwrap();
        assert_eq!(g.op(el(1_000_000), el(10)), el(7));
        assert_eq!(g.inv(el(0)), el(0));
    }
}
