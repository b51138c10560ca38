//! Finite non-degenerate cycle sets: validation, construction, exhaustive
//! enumeration and decomposability.

use crate::perm::Perm;
use crate::{Error, Limits};
use itertools::Itertools;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A finite cycle set on `{0..n-1}`.
///
/// `table[x][y] = x * y` is the left translation by `x` applied to `y`.
/// Construction enforces the three invariants: every row is a bijection, the
/// cycle-set law `(x*y)*(x*z) = (y*x)*(y*z)` holds, and the square map
/// `x -> x*x` is bijective. Values are immutable afterwards.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawTable", into = "RawTable")]
pub struct CycleSet {
    n: usize,
    table: Vec<Vec<usize>>,
}

/// Interchange form: `{"n": 3, "table": [[..], ..]}`, 0-based entries.
#[derive(Serialize, Deserialize)]
struct RawTable {
    n: usize,
    table: Vec<Vec<usize>>,
}

impl TryFrom<RawTable> for CycleSet {
    type Error = Error;
    fn try_from(raw: RawTable) -> Result<Self, Error> {
        if raw.table.len() != raw.n {
            return Err(Error::MalformedTable(format!(
                "declared n={} but table has {} rows",
                raw.n,
                raw.table.len()
            )));
        }
        CycleSet::new(raw.table)
    }
}

impl From<CycleSet> for RawTable {
    fn from(cs: CycleSet) -> RawTable {
        RawTable {
            n: cs.n,
            table: cs.table,
        }
    }
}

impl CycleSet {
    /// Validates a table and wraps it. Errors report the first violation in
    /// row-major scan order.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self, Error> {
        let n = table.len();
        if n == 0 {
            return Err(Error::MalformedTable("empty table".into()));
        }
        for (x, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedTable(format!(
                    "row {} has length {}, expected {}",
                    x,
                    row.len(),
                    n
                )));
            }
            if !is_bijection(row, n) {
                return Err(Error::RowNotBijective(x));
            }
        }
        if let Some((x, y, z)) = first_law_violation(&table) {
            return Err(Error::LawViolation(x, y, z));
        }
        let square: Vec<usize> = (0..n).map(|x| table[x][x]).collect();
        if !is_bijection(&square, n) {
            return Err(Error::DegenerateSquareMap);
        }
        Ok(CycleSet { n, table })
    }

    /// The cyclic cycle set: `x * y = s(y)` where `s` is the n-cycle
    /// `y -> y+1 mod n`, for every `x`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let row: Vec<usize> = (0..n).map(|y| (y + 1) % n).collect();
        CycleSet {
            n,
            table: vec![row; n],
        }
    }

    /// The trivial cycle set: `x * y = y`.
    pub fn trivial(n: usize) -> Self {
        assert!(n >= 1);
        let row: Vec<usize> = (0..n).collect();
        CycleSet {
            n,
            table: vec![row; n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `x * y`.
    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn row(&self, x: usize) -> &[usize] {
        &self.table[x]
    }

    /// Left translation `σ_x : y -> x * y`.
    pub fn sigma(&self, x: usize) -> Perm {
        Perm::from_images(self.table[x].clone()).expect("validated row")
    }

    /// `λ_x = σ_x^{-1}`.
    pub fn lambda(&self, x: usize) -> Perm {
        self.sigma(x).inverse()
    }

    /// True iff the group generated by the `σ_x` has a single orbit.
    pub fn is_indecomposable(&self) -> bool {
        self.decomposition().len() == 1
    }

    /// Orbit partition of `{0..n-1}` under the translations. Each block is
    /// closed under `*`; a single block means the set is indecomposable.
    pub fn decomposition(&self) -> Vec<Vec<usize>> {
        let gens: Vec<Perm> = (0..self.n).map(|x| self.sigma(x)).collect();
        Perm::orbits(self.n, &gens)
    }

    /// Minimal flattened table over all relabelings; the set is canonical
    /// when its own table attains the minimum.
    pub fn is_canonical(&self) -> bool {
        let flat = self.flat();
        (0..self.n)
            .permutations(self.n)
            .all(|relabel| flat <= relabel_flat(&self.table, &relabel))
    }

    fn flat(&self) -> Vec<usize> {
        self.table.iter().flatten().copied().collect()
    }

    /// Compact text form `n; row; row; ...` with 0-based space-separated
    /// entries, e.g. `2; 1 0; 1 0`.
    pub fn to_compact(&self) -> String {
        let rows = self
            .table
            .iter()
            .map(|row| row.iter().map(|e| e.to_string()).join(" "))
            .join("; ");
        format!("{}; {}", self.n, rows)
    }

    /// Parses the compact text form.
    pub fn parse_compact(s: &str) -> Result<Self, Error> {
        let mut parts = s.split(';').map(str::trim);
        let n: usize = parts
            .next()
            .ok_or_else(|| Error::Parse("empty input".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad size field: {}", e)))?;
        let table: Vec<Vec<usize>> = parts
            .map(|row| {
                row.split_whitespace()
                    .map(|e| {
                        e.parse()
                            .map_err(|err| Error::Parse(format!("bad entry {:?}: {}", e, err)))
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        if table.len() != n {
            return Err(Error::Parse(format!(
                "declared n={} but found {} rows",
                n,
                table.len()
            )));
        }
        CycleSet::new(table)
    }

    /// Parses either the JSON interchange form or the compact text form.
    pub fn parse(s: &str) -> Result<Self, Error> {
        if s.trim_start().starts_with('{') {
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
        } else {
            Self::parse_compact(s)
        }
    }
}

impl fmt::Display for CycleSet {
    /// Human-readable table, rendered 1-based.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "cycle set on {} elements", self.n)?;
        for (x, row) in self.table.iter().enumerate() {
            write!(f, "  x{} * _ :", x + 1)?;
            for &e in row {
                write!(f, " x{}", e + 1)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn is_bijection(images: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    images.iter().all(|&i| {
        if i >= n || seen[i] {
            false
        } else {
            seen[i] = true;
            true
        }
    })
}

fn first_law_violation(table: &[Vec<usize>]) -> Option<(usize, usize, usize)> {
    let n = table.len();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if table[table[x][y]][table[x][z]] != table[table[y][x]][table[y][z]] {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

fn relabel_flat(table: &[Vec<usize>], relabel: &[usize]) -> Vec<usize> {
    // x *' y in the relabeled set: table'[p(x)][p(y)] = p(table[x][y]).
    let n = table.len();
    let mut out = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            out[relabel[x] * n + relabel[y]] = relabel[table[x][y]];
        }
    }
    out
}

/// Streams every valid cycle set of size `n` exactly once, in lexicographic
/// order of the flattened table.
pub fn enumerate(n: usize, limits: &Limits) -> Result<Enumerator, Error> {
    check_bound(n, limits)?;
    Ok(Enumerator::new(n, None))
}

/// Splits the size-`n` search space by first-row assignment into independent
/// enumerators, one per permutation. Driving them concurrently and merging
/// yields the same multiset as [`enumerate`].
pub fn enumerate_partitioned(n: usize, limits: &Limits) -> Result<Vec<Enumerator>, Error> {
    check_bound(n, limits)?;
    let count = (1..=n).product::<usize>();
    Ok((0..count).map(|r| Enumerator::new(n, Some(r))).collect())
}

fn check_bound(n: usize, limits: &Limits) -> Result<(), Error> {
    if n == 0 || n > limits.enumerate_bound {
        return Err(Error::SizeBoundExceeded {
            n,
            bound: limits.enumerate_bound,
        });
    }
    Ok(())
}

/// Backtracking search over row assignments. Rows are drawn from the `n!`
/// permutations in lexicographic order; a law triple `(a, b, *)` is checked
/// as soon as rows `a`, `b`, `a*b` and `b*a` are all assigned.
pub struct Enumerator {
    n: usize,
    perms: Vec<Vec<usize>>,
    table: Vec<Vec<usize>>,
    /// cand[d] = index into `perms` currently tried (or next to try) at row d.
    cand: Vec<usize>,
    depth: usize,
    exhausted: bool,
    /// When set, row 0 is pinned to this permutation index.
    pin: Option<usize>,
}

impl Enumerator {
    fn new(n: usize, pin: Option<usize>) -> Self {
        let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
        let first = pin.unwrap_or(0);
        Enumerator {
            n,
            table: vec![vec![0; n]; n],
            cand: {
                let mut c = vec![0; n + 1];
                c[0] = first;
                c
            },
            perms,
            depth: 0,
            exhausted: false,
            pin,
        }
    }

    fn level_exhausted(&self) -> bool {
        let d = self.depth;
        if self.cand[d] >= self.perms.len() {
            return true;
        }
        d == 0 && self.pin.is_some_and(|p| self.cand[0] != p)
    }

    fn retreat(&mut self) -> bool {
        if self.depth == 0 {
            self.exhausted = true;
            return false;
        }
        self.depth -= 1;
        self.cand[self.depth] += 1;
        true
    }

    /// Checks every law pair that became fully determined when row `k` was
    /// assigned (all four of `a`, `b`, `a*b`, `b*a` assigned, max equal `k`).
    fn prefix_consistent(&self, k: usize) -> bool {
        let t = &self.table;
        for a in 0..=k {
            for b in (a + 1)..=k {
                let ab = t[a][b];
                let ba = t[b][a];
                if ab > k || ba > k || (a != k && b != k && ab != k && ba != k) {
                    continue;
                }
                for c in 0..self.n {
                    if t[ab][t[a][c]] != t[ba][t[b][c]] {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl Iterator for Enumerator {
    type Item = CycleSet;

    fn next(&mut self) -> Option<CycleSet> {
        if self.exhausted {
            return None;
        }
        loop {
            if self.depth == self.n {
                let square: Vec<usize> = (0..self.n).map(|x| self.table[x][x]).collect();
                let ok = is_bijection(&square, self.n);
                let found = ok.then(|| CycleSet {
                    n: self.n,
                    table: self.table.clone(),
                });
                if !self.retreat() {
                    return found;
                }
                if let Some(cs) = found {
                    return Some(cs);
                }
                continue;
            }
            if self.level_exhausted() {
                if !self.retreat() {
                    return None;
                }
                continue;
            }
            let d = self.depth;
            self.table[d] = self.perms[self.cand[d]].clone();
            if self.prefix_consistent(d) {
                self.depth += 1;
                self.cand[self.depth] = 0;
            } else {
                self.cand[d] += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_tables() {
        assert_eq!(CycleSet::cyclic(2).table(), &[vec![1, 0], vec![1, 0]]);
        assert_eq!(CycleSet::cyclic(1).table(), &[vec![0]]);
        let c3 = CycleSet::cyclic(3);
        for x in 0..3 {
            assert_eq!(c3.row(x), &[1, 2, 0]);
        }
    }

    #[test]
    fn validates_paper_example() {
        // x_i * x_j = x_{s(j)} with s the transposition.
        assert!(CycleSet::new(vec![vec![1, 0], vec![1, 0]]).is_ok());
        assert!(CycleSet::new(vec![vec![0]]).is_ok());
    }

    #[test]
    fn rejects_law_violation_at_first_triple() {
        // σ_0 = id, σ_1 = swap: fails at x=0, y=1, z=0.
        let err = CycleSet::new(vec![vec![0, 1], vec![1, 0]]).unwrap_err();
        assert_eq!(err, Error::LawViolation(0, 1, 0));
    }

    #[test]
    fn rejects_bad_rows() {
        let err = CycleSet::new(vec![vec![0, 0], vec![1, 0]]).unwrap_err();
        assert_eq!(err, Error::RowNotBijective(0));
    }

    #[test]
    fn decomposition_blocks() {
        assert_eq!(
            CycleSet::trivial(3).decomposition(),
            vec![vec![0], vec![1], vec![2]]
        );
        assert_eq!(CycleSet::cyclic(4).decomposition(), vec![vec![0, 1, 2, 3]]);
        assert!(CycleSet::cyclic(3).is_indecomposable());
        assert!(!CycleSet::trivial(2).is_indecomposable());
        assert!(CycleSet::cyclic(1).is_indecomposable());
    }

    /// Independent oracle: all n!^n row assignments, checked directly against
    /// the definition with no pruning shared with `Enumerator`.
    fn oracle_all(n: usize) -> Vec<Vec<Vec<usize>>> {
        let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
        let mut found = Vec::new();
        let total = perms.len().pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let mut table = Vec::with_capacity(n);
            for _ in 0..n {
                table.push(perms[c % perms.len()].clone());
                c /= perms.len();
            }
            let law_ok = (0..n).all(|x| {
                (0..n).all(|y| {
                    (0..n).all(|z| {
                        table[table[x][y]][table[x][z]] == table[table[y][x]][table[y][z]]
                    })
                })
            });
            let square: Vec<usize> = (0..n).map(|x| table[x][x]).collect();
            if law_ok && is_bijection(&square, n) {
                found.push(table);
            }
        }
        found
    }

    #[test]
    fn enumerate_matches_oracle_small() {
        let limits = Limits::default();
        for n in 1..=3 {
            let mut got: Vec<_> = enumerate(n, &limits).unwrap().map(|c| c.flat()).collect();
            let mut want: Vec<_> = oracle_all(n)
                .into_iter()
                .map(|t| t.into_iter().flatten().collect::<Vec<_>>())
                .collect();
            got.sort();
            want.sort();
            assert_eq!(got, want, "n={}", n);
        }
    }

    #[test]
    fn enumerate_counts() {
        let limits = Limits::default();
        assert_eq!(enumerate(1, &limits).unwrap().count(), 1);
        // n=2: exactly the trivial and the cyclic set.
        let two: Vec<_> = enumerate(2, &limits).unwrap().collect();
        assert_eq!(two.len(), 2);
        assert!(two.contains(&CycleSet::trivial(2)));
        assert!(two.contains(&CycleSet::cyclic(2)));
        // Frozen from the oracle run above.
        assert_eq!(enumerate(3, &limits).unwrap().count(), 12);
    }

    #[test]
    fn enumerate_is_lexicographic_and_unique() {
        let limits = Limits::default();
        let flats: Vec<_> = enumerate(3, &limits).unwrap().map(|c| c.flat()).collect();
        let mut sorted = flats.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(flats, sorted);
    }

    #[test]
    fn enumerate_partitions_cover_search_space() {
        let limits = Limits::default();
        let mut merged: Vec<_> = enumerate_partitioned(3, &limits)
            .unwrap()
            .into_iter()
            .flatten()
            .map(|c| c.flat())
            .collect();
        merged.sort();
        let mut plain: Vec<_> = enumerate(3, &limits).unwrap().map(|c| c.flat()).collect();
        plain.sort();
        assert_eq!(merged, plain);
    }

    #[test]
    fn enumerate_respects_bound() {
        let limits = Limits::default();
        assert_eq!(
            enumerate(5, &limits).unwrap_err(),
            Error::SizeBoundExceeded { n: 5, bound: 4 }
        );
        let relaxed = Limits {
            enumerate_bound: 5,
            ..Limits::default()
        };
        assert!(enumerate(5, &relaxed).is_ok());
    }

    #[test]
    fn enumerated_sets_revalidate() {
        let limits = Limits::default();
        for cs in enumerate(3, &limits).unwrap() {
            assert!(CycleSet::new(cs.table().to_vec()).is_ok());
        }
    }

    #[test]
    fn decomposable_three_element_set_exists() {
        // Completion of cyclic(2) ⊔ {fixed point}: rows [1,0,2],[1,0,2],[?].
        let limits = Limits::default();
        let hit = enumerate(3, &limits)
            .unwrap()
            .find(|c| c.row(0) == [1, 0, 2] && c.row(1) == [1, 0, 2])
            .expect("a valid completion exists");
        assert_eq!(hit.decomposition().len(), 2);
    }

    #[test]
    fn blocks_are_closed_under_op() {
        let limits = Limits::default();
        for cs in enumerate(3, &limits).unwrap() {
            let blocks = cs.decomposition();
            let mut all: Vec<usize> = blocks.iter().flatten().copied().collect();
            all.sort_unstable();
            assert_eq!(all, (0..cs.n()).collect::<Vec<_>>());
            for block in &blocks {
                for &x in block {
                    for &y in block {
                        assert!(block.contains(&cs.op(x, y)));
                    }
                }
            }
        }
    }

    #[test]
    fn canonical_filter_keeps_one_per_class() {
        let limits = Limits::default();
        let canonical = enumerate(3, &limits)
            .unwrap()
            .filter(|c| c.is_canonical())
            .count();
        // Frozen: 12 labeled tables fall into 5 relabeling classes.
        assert_eq!(canonical, 5);
    }

    #[test]
    fn compact_roundtrip_and_json() {
        let cs = CycleSet::cyclic(3);
        assert_eq!(cs.to_compact(), "3; 1 2 0; 1 2 0; 1 2 0");
        assert_eq!(CycleSet::parse_compact(&cs.to_compact()).unwrap(), cs);
        let json = serde_json::to_string(&cs).unwrap();
        assert_eq!(serde_json::from_str::<CycleSet>(&json).unwrap(), cs);
        // Deserializing an invalid table fails.
        assert!(serde_json::from_str::<CycleSet>(r#"{"n":2,"table":[[0,1],[1,0]]}"#).is_err());
        assert_eq!(CycleSet::parse(&json).unwrap(), cs);
    }

    #[test]
    fn display_is_one_based() {
        let s = CycleSet::cyclic(2).to_string();
        assert!(s.contains("x1 * _ : x2 x1"));
    }
}
