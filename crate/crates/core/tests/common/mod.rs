//! Reference computations written without the library's algorithms, used to
//! cross-check it. Shared with the CLI acceptance suite via `#[path]`.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};

use ahtop_core::graph::Graph;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

// ---------------------------------------------------------------- trees

/// Every tree on `n` labelled vertices, decoded from Prüfer sequences.
fn labelled_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    if n == 1 {
        return vec![vec![]];
    }
    if n == 2 {
        return vec![vec![(0, 1)]];
    }
    let mut out = Vec::new();
    let mut seq = vec![0; n - 2];
    loop {
        let mut degree = vec![1; n];
        for &s in &seq {
            degree[s] += 1;
        }
        let mut edges = Vec::with_capacity(n - 1);
        for &s in &seq {
            let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
            edges.push((leaf, s));
            degree[leaf] -= 1;
            degree[s] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        edges.push((rest[0], rest[1]));
        out.push(edges);
        // Next sequence in base n.
        let mut i = 0;
        loop {
            if i == seq.len() {
                return out;
            }
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
    }
}

/// Canonical string of the tree rooted at `v` (sorted parenthesised children).
fn rooted_code(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = adj[v].iter().filter(|&&w| w != parent).map(|&w| rooted_code(adj, w, v)).collect();
    kids.sort();
    format!("({})", kids.concat())
}

/// Isomorphism invariant of a tree: the least rooted code over its centres.
fn tree_code(n: usize, edges: &[(usize, usize)]) -> String {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in &adj[v] {
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer.iter().map(|&c| rooted_code(&adj, c, usize::MAX)).min().unwrap()
}

/// One tree per isomorphism class, for `1 ≤ n ≤ max_n` vertices.
pub fn unlabelled_trees(max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let mut seen = BTreeSet::new();
        for edges in labelled_trees(n) {
            if seen.insert(tree_code(n, &edges)) {
                out.push(Graph::new(n, edges).unwrap());
            }
        }
    }
    out
}

// ---------------------------------------------------------------- homology

/// 3- and 4-cycles of `g` as edge-index boundary vectors, found by brute
/// force over vertex tuples.
fn face_boundaries(g: &Graph) -> (Vec<(usize, usize)>, Vec<Vec<i64>>) {
    let n = g.vertex_count();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if g.adjacent(a, b) {
                edges.push((a, b));
            }
        }
    }
    let index: HashMap<(usize, usize), usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let column = |cycle: &[usize]| {
        let mut col = vec![0i64; edges.len()];
        for i in 0..cycle.len() {
            let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            if a < b {
                col[index[&(a, b)]] += 1;
            } else {
                col[index[&(b, a)]] -= 1;
            }
        }
        col
    };
    let mut faces = Vec::new();
    let mut seen = BTreeSet::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let tri = [a, b, c];
                if a < b && b < c && g.adjacent(a, b) && g.adjacent(b, c) && g.adjacent(c, a) {
                    faces.push(column(&tri));
                }
                for d in 0..n {
                    let q = [a, b, c, d];
                    let distinct = a != b && a != c && a != d && b != c && b != d && c != d;
                    if !distinct || !(g.adjacent(a, b) && g.adjacent(b, c) && g.adjacent(c, d) && g.adjacent(d, a)) {
                        continue;
                    }
                    let mut key = q.to_vec();
                    key.sort_unstable();
                    // The vertex set plus the diagonal pairs determine the 4-cycle.
                    let diag = [(a.min(c), a.max(c)), (b.min(d), b.max(d))];
                    let mut diag = diag.to_vec();
                    diag.sort_unstable();
                    if seen.insert((key, diag)) {
                        faces.push(column(&q));
                    }
                }
            }
        }
    }
    (edges, faces)
}

/// Rank over Q by fraction-free elimination.
fn rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let (a, b) = (m[r][c].clone(), m[i][c].clone());
            let pivot_row = m[r].clone();
            for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                *x = &*x * &a - p * &b;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

fn det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    // Bareiss.
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

fn gcd(a: BigInt, b: BigInt) -> BigInt {
    let (mut a, mut b) = (a.abs(), b.abs());
    while !b.is_zero() {
        let t = &a % &b;
        a = b;
        b = t;
    }
    a
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Torsion coefficients (> 1) of the cokernel of `m`, from determinantal
/// divisors: `d_k` is the gcd of all `k × k` minors and the invariant
/// factors are `d_k / d_{k-1}`.
fn cokernel_torsion(m: &[Vec<BigInt>], r: usize) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut divisors = vec![BigInt::one()];
    for k in 1..=r {
        let mut d = BigInt::zero();
        'outer: for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<BigInt>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j].clone()).collect()).collect();
                d = gcd(d, det(minor));
                if d.is_one() {
                    break 'outer;
                }
            }
        }
        divisors.push(d);
    }
    (1..=r)
        .map(|k| &divisors[k] / &divisors[k - 1])
        .filter(|x| *x > BigInt::one())
        .collect()
}

/// `H₁` of `g` with every 3- and 4-cycle filled: `(betti, torsion)`.
pub fn h1_oracle(g: &Graph) -> (usize, Vec<BigInt>) {
    let (edges, faces) = face_boundaries(g);
    let n = g.vertex_count();
    let d1: Vec<Vec<BigInt>> = (0..n)
        .map(|v| {
            edges
                .iter()
                .map(|&(a, b)| BigInt::from(i64::from(b == v) - i64::from(a == v)))
                .collect()
        })
        .collect();
    let d2: Vec<Vec<BigInt>> = (0..edges.len())
        .map(|e| faces.iter().map(|f| BigInt::from(f[e])).collect())
        .collect();
    let r1 = rank(d1);
    let r2 = if faces.is_empty() { 0 } else { rank(d2.clone()) };
    let betti = edges.len() - r1 - r2;
    let torsion = if faces.is_empty() { vec![] } else { cokernel_torsion(&d2, r2) };
    (betti, torsion)
}

// ---------------------------------------------------------------- cycles

/// Signed number of turns of a closed walk around `C_n` (vertices `0..n`
/// in cyclic order).
pub fn winding(trace: &[usize], n: usize) -> i64 {
    let mut steps = 0i64;
    for w in trace.windows(2) {
        let d = (w[1] + n - w[0]) % n;
        steps += match d {
            0 => 0,
            1 => 1,
            d if d == n - 1 => -1,
            _ => panic!("not a walk on C_{n}: {w:?}"),
        };
    }
    assert_eq!(steps.rem_euclid(n as i64), 0, "walk is not closed");
    steps / n as i64
}

// ---------------------------------------------------------------- map graphs

/// All graph maps `dom → cod` (pointed: base to base) by filtering the full
/// assignment space.
pub fn all_maps(dom: &Graph, cod: &Graph, base: Option<(usize, usize)>) -> Vec<Vec<usize>> {
    let (n, m) = (dom.vertex_count(), cod.vertex_count());
    let ok_edge = |a: usize, b: usize| a == b || cod.adjacent(a, b);
    let mut out = Vec::new();
    let mut f = vec![0; n];
    loop {
        let pointed_ok = base.is_none_or(|(b, c)| f[b] == c);
        if pointed_ok && dom.edges().iter().all(|&(u, v)| ok_edge(f[u], f[v])) {
            out.push(f.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            f[i] += 1;
            if f[i] < m {
                break;
            }
            f[i] = 0;
            i += 1;
        }
    }
}

/// BFS distances from `start` in the graph on `maps` whose edges join maps
/// that agree up to adjacency at every vertex.
pub fn map_graph_distances(maps: &[Vec<usize>], cod: &Graph, start: &[usize]) -> HashMap<Vec<usize>, usize> {
    let index: HashMap<&[usize], usize> = maps.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
    let close = |a: usize, b: usize| a == b || cod.adjacent(a, b);
    let mut dist = HashMap::new();
    dist.insert(start.to_vec(), 0);
    let mut queue = VecDeque::from([start.to_vec()]);
    while let Some(f) = queue.pop_front() {
        let d = dist[&f];
        // Candidates: every choice of g(v) in the closed neighbourhood of f(v).
        let options: Vec<Vec<usize>> = f
            .iter()
            .map(|&x| (0..cod.vertex_count()).filter(|&y| close(x, y)).collect())
            .collect();
        let mut pick = vec![0; f.len()];
        loop {
            let g: Vec<usize> = pick.iter().enumerate().map(|(v, &i)| options[v][i]).collect();
            if index.contains_key(g.as_slice()) && !dist.contains_key(&g) {
                dist.insert(g.clone(), d + 1);
                queue.push_back(g);
            }
            let mut i = 0;
            loop {
                if i == pick.len() {
                    break;
                }
                pick[i] += 1;
                if pick[i] < options[i].len() {
                    break;
                }
                pick[i] = 0;
                i += 1;
            }
            if i == pick.len() {
                break;
            }
        }
    }
    dist
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    Graph::new(10, edges).unwrap()
}
