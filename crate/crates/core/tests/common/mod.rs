//! Independent oracles shared by the integration tests and the acceptance
//! suite. Nothing here calls into the library's word problem, growth series
//! or Hecke multiplication.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap, HashSet};
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tdlc::algebra::BigRational;
use tdlc::coxeter::{systems, CoxeterSystem, NormalForm};
use tdlc::hecke::{HeckeAlgebra, HeckeElement};

// ---------- faithful models of Coxeter groups ----------

/// A concrete group with generators acting by right multiplication.
pub trait Model {
    type Elem: Clone + Eq + Hash;
    fn rank(&self) -> usize;
    fn identity(&self) -> Self::Elem;
    fn right_mul(&self, g: &Self::Elem, s: usize) -> Self::Elem;
    fn inverse(&self, g: &Self::Elem) -> Self::Elem;

    fn left_mul(&self, s: usize, g: &Self::Elem) -> Self::Elem {
        self.inverse(&self.right_mul(&self.inverse(g), s))
    }
}

/// Number of elements at each word length `0..=order`, by breadth-first search.
pub fn bfs_counts<M: Model>(m: &M, order: usize) -> Vec<u64> {
    let mut seen: HashSet<M::Elem> = HashSet::from([m.identity()]);
    let mut layer = vec![m.identity()];
    let mut counts = vec![1u64];
    for _ in 0..order {
        let mut next = Vec::new();
        for g in &layer {
            for s in 0..m.rank() {
                let h = m.right_mul(g, s);
                if seen.insert(h.clone()) {
                    next.push(h);
                }
            }
        }
        counts.push(next.len() as u64);
        layer = next;
    }
    counts
}

/// Permutations of `0..n` with generator `s` swapping two fixed positions.
pub struct Perm {
    pub n: usize,
    pub swaps: Vec<(usize, usize)>,
}

impl Perm {
    pub fn symmetric(n: usize) -> Self {
        Perm {
            n: n + 1,
            swaps: (0..n).map(|i| (i, i + 1)).collect(),
        }
    }
}

impl Model for Perm {
    type Elem = Vec<usize>;
    fn rank(&self) -> usize {
        self.swaps.len()
    }
    fn identity(&self) -> Vec<usize> {
        (0..self.n).collect()
    }
    fn right_mul(&self, g: &Vec<usize>, s: usize) -> Vec<usize> {
        let (a, b) = self.swaps[s];
        let mut h = g.clone();
        h.swap(a, b);
        h
    }
    fn inverse(&self, g: &Vec<usize>) -> Vec<usize> {
        let mut h = vec![0; g.len()];
        for (i, &v) in g.iter().enumerate() {
            h[v] = i;
        }
        h
    }
}

/// Dihedral group of order `2m` (infinite for `None`) as maps `x ↦ ±x + k`.
pub struct Dihedral(pub Option<i64>);

impl Model for Dihedral {
    type Elem = (i64, i64);
    fn rank(&self) -> usize {
        2
    }
    fn identity(&self) -> (i64, i64) {
        (1, 0)
    }
    fn right_mul(&self, g: &(i64, i64), s: usize) -> (i64, i64) {
        let (e, k) = *g;
        let k2 = e * s as i64 + k;
        (-e, self.0.map_or(k2, |m| k2.rem_euclid(m)))
    }
    fn inverse(&self, g: &(i64, i64)) -> (i64, i64) {
        let (e, k) = *g;
        (e, self.0.map_or(-e * k, |m| (-e * k).rem_euclid(m)))
    }
}

/// Affine permutations of `Z` with period `n`, in window notation; generators
/// `s_0 .. s_{n-2}` swap adjacent window entries, the last one is affine.
pub struct AffinePerm(pub usize);

impl Model for AffinePerm {
    type Elem = Vec<i64>;
    fn rank(&self) -> usize {
        self.0
    }
    fn identity(&self) -> Vec<i64> {
        (1..=self.0 as i64).collect()
    }
    fn right_mul(&self, g: &Vec<i64>, s: usize) -> Vec<i64> {
        let n = self.0;
        let mut h = g.clone();
        if s + 1 < n {
            h.swap(s, s + 1);
        } else {
            // swap positions 0 and 1 of Z, i.e. w(0) = w(n) - n and w(1)
            let (first, last) = (h[0], h[n - 1]);
            h[0] = last - n as i64;
            h[n - 1] = first + n as i64;
        }
        h
    }
    fn inverse(&self, g: &Vec<i64>) -> Vec<i64> {
        let n = self.0 as i64;
        let mut h = vec![0; self.0];
        for (i, &v) in g.iter().enumerate() {
            let r = (v - 1).rem_euclid(n);
            let shift = (v - 1 - r) / n;
            h[r as usize] = i as i64 + 1 - shift * n;
        }
        h
    }
}

/// Free product of `rank` copies of `Z/2`, as freely reduced words.
pub struct FreeInvolutions(pub usize);

impl Model for FreeInvolutions {
    type Elem = Vec<usize>;
    fn rank(&self) -> usize {
        self.0
    }
    fn identity(&self) -> Vec<usize> {
        Vec::new()
    }
    fn right_mul(&self, g: &Vec<usize>, s: usize) -> Vec<usize> {
        let mut h = g.clone();
        if h.last() == Some(&s) {
            h.pop();
        } else {
            h.push(s);
        }
        h
    }
    fn inverse(&self, g: &Vec<usize>) -> Vec<usize> {
        g.iter().rev().copied().collect()
    }
}

/// Elements up to length `order` with their lengths, by breadth-first search.
pub fn bfs_lengths<M: Model>(m: &M, order: usize) -> HashMap<M::Elem, usize> {
    let mut len = HashMap::from([(m.identity(), 0)]);
    let mut layer = vec![m.identity()];
    for k in 1..=order {
        let mut next = Vec::new();
        for g in &layer {
            for s in 0..m.rank() {
                let h = m.right_mul(g, s);
                if !len.contains_key(&h) {
                    len.insert(h.clone(), k);
                    next.push(h);
                }
            }
        }
        layer = next;
    }
    len
}

/// Lengths of the elements of each `W_J`-double coset whose shortest element
/// has length at most `order`; `j_len` bounds the length of the longest
/// element of `W_J`.
pub fn double_coset_lengths<M: Model>(m: &M, j: &[usize], j_len: usize, order: usize) -> Vec<Vec<usize>> {
    let lengths = bfs_lengths(m, order + 2 * j_len);
    let mut seen: HashSet<M::Elem> = HashSet::new();
    let mut by_len: Vec<(&M::Elem, usize)> = lengths.iter().map(|(g, &l)| (g, l)).collect();
    by_len.sort_by_key(|&(_, l)| l);
    let mut out = Vec::new();
    for (g, l) in by_len {
        if l > order || seen.contains(g) {
            continue;
        }
        let mut class = vec![g.clone()];
        seen.insert(g.clone());
        let mut i = 0;
        while i < class.len() {
            let x = class[i].clone();
            for &s in j {
                for y in [m.right_mul(&x, s), m.left_mul(s, &x)] {
                    if seen.insert(y.clone()) {
                        class.push(y);
                    }
                }
            }
            i += 1;
        }
        out.push(class.iter().map(|x| lengths[x]).collect());
    }
    out
}

/// Model counts for the reference systems, in the library's generator order.
pub fn model_counts(name: &str, order: usize) -> Vec<u64> {
    match name {
        "A1" => bfs_counts(&Perm::symmetric(1), order),
        "A2" => bfs_counts(&Perm::symmetric(2), order),
        "A3" => bfs_counts(&Perm::symmetric(3), order),
        "I2(5)" => bfs_counts(&Dihedral(Some(5)), order),
        "A1xA1" => bfs_counts(
            &Perm {
                n: 4,
                swaps: vec![(0, 1), (2, 3)],
            },
            order,
        ),
        "~A1" => bfs_counts(&Dihedral(None), order),
        "~A2" => bfs_counts(&AffinePerm(3), order),
        "triangle(inf,inf,inf)" => bfs_counts(&FreeInvolutions(3), order),
        other => panic!("no model for {other}"),
    }
}

pub fn reference_systems() -> Vec<(&'static str, CoxeterSystem)> {
    vec![
        ("A1", systems::a(1)),
        ("A2", systems::a(2)),
        ("A3", systems::a(3)),
        ("I2(5)", systems::dihedral(5)),
        ("A1xA1", systems::a1xa1()),
        ("~A1", systems::affine_a1()),
        ("~A2", systems::affine_a(2)),
        ("triangle(inf,inf,inf)", systems::infinite_triangle()),
    ]
}

// ---------- the Hecke algebra of GL_n(F_2) by literal convolution ----------

/// An `n × n` matrix over `F_2`; row `i` is the bitmask `rows[i]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Mat {
    n: usize,
    rows: [u8; 4],
}

impl Mat {
    fn mul(&self, o: &Mat) -> Mat {
        let mut rows = [0u8; 4];
        for (i, r) in rows.iter_mut().enumerate().take(self.n) {
            for k in 0..self.n {
                if self.rows[i] >> k & 1 == 1 {
                    *r ^= o.rows[k];
                }
            }
        }
        Mat { n: self.n, rows }
    }

    fn det_nonzero(&self) -> bool {
        let mut rows = self.rows;
        let mut rank = 0;
        for col in 0..self.n {
            let Some(p) = (rank..self.n).find(|&r| rows[r] >> col & 1 == 1) else { continue };
            rows.swap(rank, p);
            for r in 0..self.n {
                if r != rank && rows[r] >> col & 1 == 1 {
                    rows[r] ^= rows[rank];
                }
            }
            rank += 1;
        }
        rank == self.n
    }

    fn upper_triangular(&self) -> bool {
        (0..self.n).all(|i| self.rows[i] & ((1u8 << i) - 1) == 0)
    }

    /// Permutation matrix swapping coordinates `i` and `i + 1`.
    fn swap(n: usize, i: usize) -> Mat {
        let mut rows = [0u8; 4];
        for (r, row) in rows.iter_mut().enumerate().take(n) {
            let c = if r == i {
                i + 1
            } else if r == i + 1 {
                i
            } else {
                r
            };
            *row = 1 << c;
        }
        Mat { n, rows }
    }

    fn identity(n: usize) -> Mat {
        let mut rows = [0u8; 4];
        for (r, row) in rows.iter_mut().enumerate().take(n) {
            *row = 1 << r;
        }
        Mat { n, rows }
    }

    fn inverse(&self, group: &[Mat]) -> Mat {
        let id = Mat::identity(self.n);
        *group.iter().find(|g| self.mul(g) == id).expect("invertible")
    }
}

/// `GL_n(F_2)` with its upper triangular Borel subgroup `B`, the Bruhat cell
/// of every element, and the convolution product on `B`-biinvariant
/// functions normalized by `μ(B) = 1`.
pub struct GlOverF2 {
    pub n: usize,
    pub group: Vec<Mat>,
    pub borel: Vec<Mat>,
    /// Bruhat cell of each element, indexed like `group`.
    cell: Vec<usize>,
    /// A representative and a reduced word (0-based) for each cell.
    pub cells: Vec<(Mat, Vec<usize>)>,
    index: HashMap<Mat, usize>,
}

impl GlOverF2 {
    pub fn new(n: usize) -> Self {
        assert!((1..=4).contains(&n));
        let mut group = Vec::new();
        let total = 1usize << (n * n);
        for bits in 0..total {
            let mut rows = [0u8; 4];
            for (i, r) in rows.iter_mut().enumerate().take(n) {
                *r = ((bits >> (i * n)) & ((1 << n) - 1)) as u8;
            }
            let m = Mat { n, rows };
            if m.det_nonzero() {
                group.push(m);
            }
        }
        let borel: Vec<Mat> = group.iter().copied().filter(Mat::upper_triangular).collect();
        let index: HashMap<Mat, usize> = group.iter().enumerate().map(|(i, g)| (*g, i)).collect();
        // cells via words in the adjacent swaps, found by breadth-first search
        let mut cells: Vec<(Mat, Vec<usize>)> = Vec::new();
        let mut cell = vec![usize::MAX; group.len()];
        let mut frontier = vec![(Mat::identity(n), Vec::new())];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (w, word) in frontier {
                if cell[index[&w]] != usize::MAX {
                    continue;
                }
                let c = cells.len();
                for b1 in &borel {
                    for b2 in &borel {
                        cell[index[&b1.mul(&w).mul(b2)]] = c;
                    }
                }
                cells.push((w, word.clone()));
                for i in 0..n.saturating_sub(1) {
                    let mut longer = word.clone();
                    longer.push(i);
                    next.push((w.mul(&Mat::swap(n, i)), longer));
                }
            }
            frontier = next;
        }
        assert!(cell.iter().all(|&c| c != usize::MAX));
        GlOverF2 {
            n,
            group,
            borel,
            cell,
            cells,
            index,
        }
    }

    /// Values on the cells of a `B`-biinvariant function, from cell indicators.
    pub fn convolve(&self, f: &[BigRational], g: &[BigRational]) -> Vec<BigRational> {
        let b = BigRational::from_integer(BigInt::from(self.borel.len()));
        self.cells
            .iter()
            .map(|(x, _)| {
                let mut total = BigRational::zero();
                for y in &self.group {
                    let fy = &f[self.cell[self.index[y]]];
                    if fy.is_zero() {
                        continue;
                    }
                    let z = y.inverse(&self.group).mul(x);
                    total += fy * &g[self.cell[self.index[&z]]];
                }
                total / &b
            })
            .collect()
    }

    pub fn indicator(&self, c: usize) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.cells.len()];
        v[c] = BigRational::one();
        v
    }

    /// `B`-biinvariant function of a Hecke element, via reduced words of cells.
    pub fn function_of(&self, h: &HeckeAlgebra<BigRational>, a: &HeckeElement<BigRational>) -> Vec<BigRational> {
        self.cells
            .iter()
            .map(|(_, word)| a.coeff(&h.system().normal_form(word).expect("valid word")))
            .collect()
    }

    pub fn cell_element(&self, h: &HeckeAlgebra<BigRational>, c: usize) -> NormalForm {
        h.system().normal_form(&self.cells[c].1).expect("valid word")
    }
}

// ---------- random unimodular graphs of groups ----------

/// A random connected unimodular graph of groups with its Euler
/// characteristic in units of a reference measure: every group `H` gets a
/// measure `m(H)` and indices are ratios of these, so unimodularity holds by
/// construction and `χ = Σ_v 1/m(v) − Σ_e 1/m(e)`.
pub struct RandomGraph {
    pub text: String,
    pub measure: BTreeMap<String, BigInt>,
    pub chi_reference: BigRational,
}

pub fn random_graph(rng: &mut ChaCha8Rng) -> RandomGraph {
    let primes = [2i64, 3, 5];
    let n = rng.gen_range(2..=6);
    let mut measure = BTreeMap::new();
    let mut text = String::new();
    let mut vm = Vec::new();
    for v in 0..n {
        let mut m = BigInt::one();
        for _ in 0..rng.gen_range(1..=4) {
            m *= primes[rng.gen_range(0..primes.len())];
        }
        text.push_str(&format!("vertex v{v}\n"));
        measure.insert(format!("v{v}"), m.clone());
        vm.push(m);
    }
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for _ in 0..rng.gen_range(0..=3) {
        edges.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    let mut chi: BigRational = vm.iter().map(|m| BigRational::new(BigInt::one(), m.clone())).sum();
    for (k, (a, b)) in edges.into_iter().enumerate() {
        let g = num_integer::Integer::gcd(&vm[a], &vm[b]);
        // a random divisor of the gcd; index 1 happens when it equals m(a) or m(b)
        let mut me = g.clone();
        while rng.gen_bool(0.4) {
            let p = primes.iter().find(|p| (&me % BigInt::from(**p)).is_zero());
            match p {
                Some(p) if me > BigInt::one() => me /= *p,
                _ => break,
            }
        }
        let name = format!("e{k}");
        let io = &vm[a] / &me;
        let it = &vm[b] / &me;
        text.push_str(&format!("edge {name} v{a} v{b} it {it} io {io}\n"));
        chi -= BigRational::new(BigInt::one(), me.clone());
        measure.insert(name, me);
    }
    RandomGraph {
        text,
        measure,
        chi_reference: chi,
    }
}
