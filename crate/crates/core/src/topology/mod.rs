//! Star graphs S_n, (n,k)-star graphs S_{n,k}, complete graphs and cycles.

mod split;

use std::collections::HashMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{parse_edge_list, Family, Graph};

pub use split::{verify_split, verify_split_with, SplitSummary, SplitWitness};

/// Default cap on constructed graph sizes (7! vertices).
pub const DEFAULT_MAX_VERTICES: usize = 5040;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TopologyLimits {
    pub max_vertices: usize,
}

impl Default for TopologyLimits {
    fn default() -> Self {
        Self {
            max_vertices: DEFAULT_MAX_VERTICES,
        }
    }
}

/// A k-arrangement of the symbols `1..=n`: distinct symbols, in order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arrangement {
    n: u8,
    symbols: Vec<u8>,
}

impl Arrangement {
    pub fn new(n: usize, symbols: Vec<u8>) -> Result<Self> {
        let n8 = u8::try_from(n).map_err(|_| Error::domain(format!("alphabet size {n} too large")))?;
        if symbols.is_empty() || symbols.len() > n {
            return Err(Error::domain(format!(
                "arrangement length {} outside 1..={n}",
                symbols.len()
            )));
        }
        let mut seen = vec![false; n + 1];
        for &s in &symbols {
            if s == 0 || s > n8 || std::mem::replace(&mut seen[s as usize], true) {
                return Err(Error::domain(format!(
                    "symbols {symbols:?} are not distinct members of 1..={n}"
                )));
            }
        }
        Ok(Self { n: n8, symbols })
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn alphabet(&self) -> usize {
        self.n as usize
    }

    pub fn label(&self) -> String {
        self.to_string()
    }

    /// Rule (a): exchange the first symbol with the one at `pos` (0-based, `pos >= 1`).
    pub fn swap_first(&self, pos: usize) -> Self {
        let mut symbols = self.symbols.clone();
        symbols.swap(0, pos);
        Self { n: self.n, symbols }
    }

    /// Rule (b): overwrite the first symbol with an unused one.
    pub fn replace_first(&self, symbol: u8) -> Self {
        let mut symbols = self.symbols.clone();
        symbols[0] = symbol;
        Self { n: self.n, symbols }
    }

    /// Symbols of the alphabet not used by this arrangement, ascending.
    pub fn unused(&self) -> impl Iterator<Item = u8> + '_ {
        (1..=self.n).filter(|s| !self.symbols.contains(s))
    }

    pub fn prefix(&self, k: usize) -> Self {
        Self {
            n: self.n,
            symbols: self.symbols[..k].to_vec(),
        }
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n <= 9 { "" } else { "-" };
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

fn falling_factorial(n: usize, k: usize) -> Option<usize> {
    (n - k + 1..=n).try_fold(1usize, |acc, x| acc.checked_mul(x))
}

fn check_budget(what: &str, vertices: Option<usize>, limits: &TopologyLimits) -> Result<usize> {
    match vertices {
        Some(v) if v <= limits.max_vertices => Ok(v),
        _ => Err(Error::domain(format!(
            "{what} exceeds the vertex budget of {}",
            limits.max_vertices
        ))),
    }
}

/// All k-arrangements of `1..=n` in lexicographic order. Position in the list
/// is the vertex index used by [`build_nk_star`].
pub fn canonical_vertex_enumeration(n: usize, k: usize) -> Result<Vec<Arrangement>> {
    canonical_vertex_enumeration_with(n, k, &TopologyLimits::default())
}

pub fn canonical_vertex_enumeration_with(n: usize, k: usize, limits: &TopologyLimits) -> Result<Vec<Arrangement>> {
    if n == 0 || n > u8::MAX as usize || k == 0 || k > n {
        return Err(Error::domain(format!("need 1 <= k <= n, got n={n}, k={k}")));
    }
    let count = check_budget(&format!("P({n},{k})"), falling_factorial(n, k), limits)?;
    let mut out = Vec::with_capacity(count);
    let mut current = Vec::with_capacity(k);
    let mut used = vec![false; n + 1];
    fn extend(n: usize, k: usize, current: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Arrangement>) {
        if current.len() == k {
            out.push(Arrangement {
                n: n as u8,
                symbols: current.clone(),
            });
            return;
        }
        for s in 1..=n {
            if !used[s] {
                used[s] = true;
                current.push(s as u8);
                extend(n, k, current, used, out);
                current.pop();
                used[s] = false;
            }
        }
    }
    extend(n, k, &mut current, &mut used, &mut out);
    Ok(out)
}

fn arrangement_graph(
    family: Family,
    vertices: &[Arrangement],
    neighbors: impl Fn(&Arrangement) -> Vec<Arrangement>,
) -> Result<Graph> {
    let index: HashMap<&Arrangement, usize> = vertices.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let mut edges = Vec::new();
    for (i, p) in vertices.iter().enumerate() {
        for q in neighbors(p) {
            let j = index[&q];
            if i < j {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(family, vertices.iter().map(Arrangement::label).collect(), edges)
}

/// The star graph S_n on all permutations of `1..=n`.
pub fn build_star(n: usize) -> Result<Graph> {
    build_star_with(n, &TopologyLimits::default())
}

pub fn build_star_with(n: usize, limits: &TopologyLimits) -> Result<Graph> {
    if n < 2 {
        return Err(Error::domain(format!("star graph needs n >= 2, got {n}")));
    }
    let vertices = canonical_vertex_enumeration_with(n, n, limits)?;
    arrangement_graph(Family::Star { n }, &vertices, |p| {
        (1..n).map(|i| p.swap_first(i)).collect()
    })
}

/// The (n,k)-star graph S_{n,k}.
pub fn build_nk_star(n: usize, k: usize) -> Result<Graph> {
    build_nk_star_with(n, k, &TopologyLimits::default())
}

pub fn build_nk_star_with(n: usize, k: usize, limits: &TopologyLimits) -> Result<Graph> {
    if n < 2 || k == 0 || k >= n {
        return Err(Error::domain(format!(
            "(n,k)-star graph needs 1 <= k <= n-1, got n={n}, k={k}"
        )));
    }
    let vertices = canonical_vertex_enumeration_with(n, k, limits)?;
    arrangement_graph(Family::NkStar { n, k }, &vertices, |p| {
        let mut out: Vec<Arrangement> = (1..k).map(|i| p.swap_first(i)).collect();
        out.extend(p.unused().map(|s| p.replace_first(s)));
        out
    })
}

fn u_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("u{i}")).collect()
}

/// K_n with vertices `u1..un`.
pub fn complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::domain("complete graph needs at least one vertex"));
    }
    let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    Graph::from_edges(Family::Complete { n }, u_labels(n), edges.collect::<Vec<_>>())
}

/// The cycle C_m with vertices `u1..um` and edges `u_i u_{i+1}`, `u_1 u_m`.
pub fn cycle(m: usize) -> Result<Graph> {
    if m < 3 {
        return Err(Error::domain(format!("cycle needs at least 3 vertices, got {m}")));
    }
    let edges: Vec<(usize, usize)> = (0..m).map(|i| (i, (i + 1) % m)).collect();
    Graph::from_edges(Family::Cycle { m }, u_labels(m), edges)
}

/// Graph descriptor: `star:n`, `nkstar:n,k`, `complete:n`, `cycle:m` or `file:<path>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Descriptor {
    Star(usize),
    NkStar(usize, usize),
    Complete(usize),
    Cycle(usize),
    File(PathBuf),
}

impl Descriptor {
    pub fn build(&self, limits: &TopologyLimits) -> Result<Graph> {
        match self {
            Descriptor::Star(n) => build_star_with(*n, limits),
            Descriptor::NkStar(n, k) => build_nk_star_with(*n, *k, limits),
            Descriptor::Complete(n) => {
                check_budget(&format!("K_{n}"), Some(*n), limits)?;
                complete(*n)
            }
            Descriptor::Cycle(m) => {
                check_budget(&format!("C_{m}"), Some(*m), limits)?;
                cycle(*m)
            }
            Descriptor::File(path) => {
                let g = parse_edge_list(&std::fs::read_to_string(path)?)?;
                check_budget(&path.display().to_string(), Some(g.vertex_count()), limits)?;
                Ok(g)
            }
        }
    }

    /// `(n, k)` when this descriptor names an (n,k)-star graph (K_n counts as k = 1).
    pub fn nk(&self) -> Option<(usize, usize)> {
        match *self {
            Descriptor::NkStar(n, k) => Some((n, k)),
            Descriptor::Complete(n) => Some((n, 1)),
            Descriptor::Star(n) => Some((n, n.saturating_sub(1))),
            _ => None,
        }
    }
}

impl FromStr for Descriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::domain(format!("cannot parse graph descriptor {s:?}"));
        let (kind, args) = s.split_once(':').ok_or_else(bad)?;
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        match kind {
            "star" => Ok(Descriptor::Star(num(args)?)),
            "nkstar" => {
                let (n, k) = args.split_once(',').ok_or_else(bad)?;
                Ok(Descriptor::NkStar(num(n)?, num(k)?))
            }
            "complete" => Ok(Descriptor::Complete(num(args)?)),
            "cycle" => Ok(Descriptor::Cycle(num(args)?)),
            "file" if !args.is_empty() => Ok(Descriptor::File(PathBuf::from(args))),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Descriptor::Star(n) => write!(f, "star:{n}"),
            Descriptor::NkStar(n, k) => write!(f, "nkstar:{n},{k}"),
            Descriptor::Complete(n) => write!(f, "complete:{n}"),
            Descriptor::Cycle(m) => write!(f, "cycle:{m}"),
            Descriptor::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}
