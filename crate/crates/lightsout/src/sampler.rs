//! Uniform sampling of unlabeled graphs with fixed vertex and edge counts.
//!
//! Implements the fixed-point-class rejection scheme of Wormald's "Random
//! Orbit II" (SIAM J. Computing 16(4), 1987), a refinement of the
//! Dixon–Wilf orbit sampler. The symmetric group acts on labeled graphs by
//! permuting vertices; every unlabeled graph corresponds to one orbit, and
//! every orbit contains exactly n! pairs (σ, Γ) with Γ a labeled graph fixed
//! by σ. Drawing such a pair uniformly — restricted to Γ with exactly e
//! edges — therefore draws a uniform isomorphism class from 𝓖_{n,e}.
//!
//! Pairs are drawn by rejection. Permutations are grouped into classes R_i
//! (those moving exactly i points; i = 1 is empty), and class i is proposed
//! with probability proportional to an envelope weight B_i. Given σ, a
//! σ-invariant graph is proposed by including each orbit D of vertex pairs
//! independently with probability p^|D|/(p^|D| + q^|D|), where p is tuned per
//! class (via a cubic equation) so that e-edge graphs are likely. A proposal
//! with e edges survives a final thinning with probability
//! |R_i| / (B_i · P(Γ)), which flattens the proposal density to uniform over
//! pairs. The envelope must dominate: B_i ≥ |R_i|/P(Γ) for every admissible
//! (σ, Γ) — see [`compute_weights`] for the bound.
//!
//! Edge counts above ⌊N/2⌋ are sampled at N − e and complemented, and
//! e ∈ {0, N} short-circuit to the unique class.

use num_bigint::BigUint;
use rand::distr::Distribution;
use rand::{Rng, RngExt};
use rand_distr::Binomial;

use crate::census::Catalog;
use crate::cubic::solve_weight_cubic;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::stats::{binomial, biguint_ln, derangements, ln_factorial};

/// Largest tolerated numeric overshoot of the acceptance ratio before the
/// envelope is declared broken.
const RATIO_SLACK: f64 = 1e-9;

/// Per-class tables for one (n, e) instance.
#[derive(Debug, Clone)]
pub struct ClassWeight {
    /// Number of moved points (0, or 2..=n).
    pub i: usize,
    /// Positive root of the tuning cubic.
    pub r: f64,
    /// Per-pair inclusion bias p = r/(r+1) and q = 1 − p.
    pub p: f64,
    pub q: f64,
    /// ln B_i, the class envelope.
    pub ln_b: f64,
    /// |R_i| = C(n,i)·D_i, exact and as a log.
    pub r_size: BigUint,
    pub ln_r: f64,
    /// include_prob[j] = p^j/(p^j + q^j), the inclusion probability for a
    /// pair orbit of size j (index 0 unused).
    include_prob: Vec<f64>,
    /// ln_fix[j] = ln(p^j + q^j), the normalizer contribution of a size-j
    /// orbit (index 0 unused).
    ln_fix: Vec<f64>,
    /// Edge-count distribution for the identity class shortcut (i = 0 only).
    identity_binomial: Option<Binomial>,
}

impl ClassWeight {
    /// p^j/(p^j + q^j) for a size-j orbit, evaluated in log space.
    pub fn include_probability(&self, j: usize) -> f64 {
        self.include_prob[j]
    }

    /// ln(p^j + q^j) for a size-j orbit, evaluated in log space.
    pub fn ln_orbit_normalizer(&self, j: usize) -> f64 {
        self.ln_fix[j]
    }
}

/// Weight tables for sampling at fixed (n, e) with 0 < e < N.
#[derive(Debug, Clone)]
pub struct WormaldParams {
    pub n: usize,
    pub e: usize,
    pub classes: Vec<ClassWeight>,
    /// Cumulative selection weights, normalized by the largest ln B_i.
    cumulative: Vec<f64>,
}

/// Orbits of the induced action of a permutation on vertex pairs.
#[derive(Debug, Clone)]
pub struct PairOrbitSet {
    pub orbits: Vec<Vec<(usize, usize)>>,
    /// histogram[j] = number of orbits of cardinality j.
    pub histogram: Vec<usize>,
}

/// One successful draw, with rejection bookkeeping.
#[derive(Debug, Clone)]
pub struct SampleOutcome {
    pub graph: Graph,
    /// Attempt iterations including the successful one.
    pub attempts: u64,
    /// Moved-point class of the successful attempt.
    pub i_used: usize,
}

/// Aggregate rejection statistics across many draws.
#[derive(Debug, Clone, Copy, Default)]
pub struct SamplerStats {
    pub samples: u64,
    pub attempts: u64,
    pub edge_misses: u64,
    pub thinning_rejections: u64,
    pub derangement_retries: u64,
}

/// Fills the per-class tables. The envelope is
/// B_i = (n!/(n−i)!) · p^−e · q^(e−N) · (p² + q²)^(i(2n−i−2)/4):
/// a permutation moving i points fixes at most C(n−i,2) + ⌊i/2⌋ pairs, so at
/// least i(2n−i−2)/2 pairs lie in orbits of size ≥ 2, and
/// (p^j + q^j)^(1/j) ≤ (p² + q²)^(1/2) for j ≥ 2 bounds each such orbit's
/// normalizer contribution, giving B_i ≥ |R_i|/P(Γ) for every admissible
/// (σ, Γ). At i = 0 the envelope is exact and the thinning never rejects.
pub fn compute_weights(n: usize, e: usize) -> Result<WormaldParams> {
    let npairs = n * n.saturating_sub(1) / 2;
    if e == 0 || e >= npairs {
        return Err(Error::range(
            "sampler weights",
            format!("need 0 < e < C(n,2); got n={n}, e={e}"),
        ));
    }
    let mut classes = Vec::with_capacity(n);
    for i in (0..=n).filter(|&i| i != 1) {
        // The stationarity cubic can have up to three positive roots
        // (min/max/min of ln B_i); any root yields a valid envelope, so pick
        // the global minimizer.
        let (mut best, mut best_ln_b) = (f64::NAN, f64::INFINITY);
        for r in solve_weight_cubic(n, e, i)? {
            let p = r / (r + 1.0);
            let q = 1.0 - p;
            let ln_pq = (e as f64) * p.ln() + ((npairs - e) as f64) * q.ln();
            // i(2n−i−2)/2 pairs are moved; each size-≥2 orbit eats at least two.
            let moved_pairs = i * (2 * n - i - 2);
            let ln_b = ln_factorial(n) - ln_factorial(n - i) - ln_pq
                + (moved_pairs as f64 / 4.0) * (p * p + q * q).ln();
            if ln_b < best_ln_b {
                (best, best_ln_b) = (r, ln_b);
            }
        }
        let r = best;
        let p = r / (r + 1.0);
        let q = 1.0 - p;
        let ln_b = best_ln_b;
        let r_size = binomial(n, i) * derangements(i);
        let ln_r = biguint_ln(&r_size);
        // Per-orbit-size tables: one exp/ln per size here replaces one per
        // orbit per attempt in the rejection loop.
        let ln_odds = q.ln() - p.ln();
        let (m, s) = if p >= q { (p, q / p) } else { (q, p / q) };
        let mut include_prob = Vec::with_capacity(npairs + 1);
        let mut ln_fix = Vec::with_capacity(npairs + 1);
        for j in 0..=npairs {
            include_prob.push(1.0 / (1.0 + (j as f64 * ln_odds).exp()));
            // ln(p^j + q^j) = j·ln max + ln(1 + (min/max)^j)
            ln_fix.push((j as f64) * m.ln() + s.powi(j as i32).ln_1p());
        }
        let identity_binomial = (i == 0)
            .then(|| Binomial::new(npairs as u64, p).expect("0 < p < 1"));
        classes.push(ClassWeight {
            i,
            r,
            p,
            q,
            ln_b,
            r_size,
            ln_r,
            include_prob,
            ln_fix,
            identity_binomial,
        });
    }
    let top = classes.iter().map(|c| c.ln_b).fold(f64::MIN, f64::max);
    let mut cumulative = Vec::with_capacity(classes.len());
    let mut acc = 0.0;
    for c in &classes {
        acc += (c.ln_b - top).exp();
        cumulative.push(acc);
    }
    Ok(WormaldParams {
        n,
        e,
        classes,
        cumulative,
    })
}

/// Identity for i = 0; otherwise a uniform derangement of the first i labels
/// (rejection from uniform shuffles) extended by the identity. Returns the
/// permutation and the number of shuffles drawn.
pub fn sample_sigma<R: Rng + ?Sized>(n: usize, i: usize, rng: &mut R) -> (Vec<usize>, u64) {
    debug_assert!(i == 0 || i >= 2);
    let mut sigma: Vec<usize> = (0..n).collect();
    if i == 0 {
        return (sigma, 0);
    }
    let mut draws = 0;
    loop {
        draws += 1;
        // Fisher-Yates on the first i entries.
        for k in (1..i).rev() {
            let j = rng.random_range(0..=k);
            sigma.swap(k, j);
        }
        if (0..i).all(|v| sigma[v] != v) {
            return (sigma, draws);
        }
        for (v, s) in sigma.iter_mut().enumerate().take(i) {
            *s = v;
        }
    }
}

/// Orbits of 2-element subsets under repeated application of sigma.
pub fn pair_orbits(sigma: &[usize]) -> PairOrbitSet {
    let n = sigma.len();
    let npairs = n * n.saturating_sub(1) / 2;
    let colex = |a: usize, b: usize| {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        hi * (hi - 1) / 2 + lo
    };
    let mut seen = vec![false; npairs];
    let mut orbits = Vec::new();
    let mut largest = 0;
    for b in 1..n {
        for a in 0..b {
            if seen[colex(a, b)] {
                continue;
            }
            let mut orbit = Vec::new();
            let (mut x, mut y) = (a, b);
            loop {
                seen[colex(x, y)] = true;
                orbit.push((x.min(y), x.max(y)));
                (x, y) = (sigma[x], sigma[y]);
                if x.min(y) == a && x.max(y) == b {
                    break;
                }
            }
            largest = largest.max(orbit.len());
            orbits.push(orbit);
        }
    }
    let mut histogram = vec![0usize; largest + 1];
    for orbit in &orbits {
        histogram[orbit.len()] += 1;
    }
    PairOrbitSet { orbits, histogram }
}

/// Proposes a σ-invariant graph by independent orbit inclusion; `Some` only
/// when it lands on exactly e edges.
pub fn sample_graph_given_sigma<R: Rng + ?Sized>(
    params: &WormaldParams,
    class: &ClassWeight,
    orbits: &PairOrbitSet,
    rng: &mut R,
) -> Option<Graph> {
    let mut g = Graph::empty(params.n).expect("validated at construction");
    let mut edges = 0;
    for orbit in &orbits.orbits {
        let include = class.include_prob[orbit.len()];
        if rng.random::<f64>() < include {
            edges += orbit.len();
            if edges > params.e {
                return None;
            }
            for &(a, b) in orbit {
                g.set_edge(a, b);
            }
        }
    }
    (edges == params.e).then_some(g)
}

/// Final thinning: accept with probability |R_i|/(B_i·P(Γ)), where
/// P(Γ) = p^e q^(N−e) / Π_D (p^|D| + q^|D|) is the chance the orbit-inclusion
/// pass produced this particular graph. Consumes exactly one uniform variate.
///
/// Panics if the ratio exceeds 1 + 1e−9: that means the envelope B_i failed
/// to dominate, which is a weight-computation bug, never bad luck.
pub fn acceptance_check<R: Rng + ?Sized>(
    params: &WormaldParams,
    class: &ClassWeight,
    orbits: &PairOrbitSet,
    rng: &mut R,
) -> bool {
    let ln_ratio = ln_acceptance_ratio(params, class, orbits);
    assert!(
        ln_ratio <= RATIO_SLACK,
        "acceptance ratio e^{ln_ratio} > 1 at n={} e={} i={}: envelope does not dominate",
        params.n,
        params.e,
        class.i,
    );
    rng.random::<f64>() < ln_ratio.min(0.0).exp()
}

fn ln_acceptance_ratio(params: &WormaldParams, class: &ClassWeight, orbits: &PairOrbitSet) -> f64 {
    let mut ln_fix = 0.0; // ln Π_j (p^j + q^j)^{h_j}
    for (j, &count) in orbits.histogram.iter().enumerate().skip(1) {
        if count > 0 {
            ln_fix += count as f64 * class.ln_fix[j];
        }
    }
    ln_ratio_from_fix(params, class, ln_fix)
}

/// Acceptance ratio given the accumulated orbit normalizer ln Π(p^j + q^j).
fn ln_ratio_from_fix(params: &WormaldParams, class: &ClassWeight, ln_fix: f64) -> f64 {
    let npairs = params.n * (params.n - 1) / 2;
    let ln_p_graph = (params.e as f64) * class.p.ln()
        + ((npairs - params.e) as f64) * class.q.ln()
        - ln_fix;
    class.ln_r - class.ln_b - ln_p_graph
}

/// Reusable buffers for the allocation-free attempt loop. One instance serves
/// one `sample` call; every attempt reuses the same storage.
struct Scratch {
    /// Working permutation of 0..n; entries i.. stay fixed.
    sigma: Vec<usize>,
    /// How far a previous attempt may have left σ non-identity.
    dirty: usize,
    /// Pair list in colexicographic order: pairs[k] = (lo, hi).
    pairs: Vec<(usize, usize)>,
    /// Induced permutation on pair indices for the current σ.
    pair_sigma: Vec<u32>,
    /// Visit stamps for orbit walking; stamp == gen means seen this pass.
    stamp: Vec<u64>,
    gen: u64,
    /// Inclusion decision per orbit, in discovery order.
    include: Vec<bool>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        let npairs = n * n.saturating_sub(1) / 2;
        let mut pairs = Vec::with_capacity(npairs);
        for hi in 1..n {
            for lo in 0..hi {
                pairs.push((lo, hi));
            }
        }
        Scratch {
            sigma: (0..n).collect(),
            dirty: 0,
            pairs,
            pair_sigma: vec![0; npairs],
            stamp: vec![0; npairs],
            gen: 0,
            include: Vec::with_capacity(npairs),
        }
    }

    /// Fisher-Yates the first i entries until they form a derangement of
    /// their own positions; starting from the identity makes the result match
    /// [`sample_sigma`] variate-for-variate.
    fn derange_prefix<R: Rng + ?Sized>(&mut self, i: usize, rng: &mut R) -> u64 {
        for v in 0..self.dirty {
            self.sigma[v] = v;
        }
        self.dirty = i;
        let mut draws = 0;
        loop {
            draws += 1;
            for k in (1..i).rev() {
                let j = rng.random_range(0..=k);
                self.sigma.swap(k, j);
            }
            if (0..i).all(|v| self.sigma[v] != v) {
                return draws;
            }
            for (v, s) in self.sigma.iter_mut().enumerate().take(i) {
                *s = v;
            }
        }
    }

    /// Rebuilds the induced pair permutation for the current σ.
    fn index_pairs(&mut self) {
        for (k, &(lo, hi)) in self.pairs.iter().enumerate() {
            let (a, b) = (self.sigma[lo], self.sigma[hi]);
            let (a, b) = if a < b { (a, b) } else { (b, a) };
            self.pair_sigma[k] = (b * (b - 1) / 2 + a) as u32;
        }
    }
}

/// Cached sampler for one (n, e) target.
#[derive(Debug, Clone)]
pub struct WormaldSampler {
    n: usize,
    e_target: usize,
    /// Working edge count min(e, N−e); output is complemented when they differ.
    e_work: usize,
    complemented: bool,
    /// None for the deterministic e_work = 0 shortcut.
    params: Option<WormaldParams>,
}

impl WormaldSampler {
    pub fn new(n: usize, e: usize) -> Result<Self> {
        if n > crate::graph::MAX_VERTICES {
            return Err(Error::Capacity {
                requested: n,
                max: crate::graph::MAX_VERTICES,
            });
        }
        let npairs = n * n.saturating_sub(1) / 2;
        if e > npairs {
            return Err(Error::range(
                "edge count",
                format!("e={e} exceeds C({n},2)={npairs}"),
            ));
        }
        let e_work = e.min(npairs - e);
        let complemented = e != e_work;
        let params = (e_work > 0)
            .then(|| compute_weights(n, e_work))
            .transpose()?;
        Ok(Self {
            n,
            e_target: e,
            e_work,
            complemented,
            params,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn e(&self) -> usize {
        self.e_target
    }

    /// ln of the thinning ratio on the identity-permutation class, which the
    /// envelope construction pins to exactly 1. None when e ∈ {0, N} (the
    /// shortcut path draws nothing). Exposed so harnesses can verify the
    /// identity-class calibration without sampling.
    pub fn identity_class_ln_ratio(&self) -> Option<f64> {
        let params = self.params.as_ref()?;
        let class = &params.classes[0];
        debug_assert_eq!(class.i, 0);
        let sigma: Vec<usize> = (0..self.n).collect();
        Some(ln_acceptance_ratio(params, class, &pair_orbits(&sigma)))
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> SampleOutcome {
        let mut stats = SamplerStats::default();
        self.sample_with_stats(rng, &mut stats)
    }

    pub fn sample_with_stats<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        stats: &mut SamplerStats,
    ) -> SampleOutcome {
        let params = match &self.params {
            None => {
                // e ∈ {0, N}: a single class exists; no randomness needed.
                stats.samples += 1;
                stats.attempts += 1;
                let empty = Graph::empty(self.n).expect("validated at construction");
                return SampleOutcome {
                    graph: self.orient(empty),
                    attempts: 1,
                    i_used: 0,
                };
            }
            Some(p) => p,
        };
        let mut scratch = Scratch::new(self.n);
        let mut attempts = 0;
        loop {
            attempts += 1;
            let class = self.draw_class(params, rng);
            let proposal = if class.i == 0 {
                match self.identity_attempt(params, class, rng) {
                    None => {
                        stats.edge_misses += 1;
                        None
                    }
                    hit => hit,
                }
            } else {
                self.moved_class_attempt(params, class, &mut scratch, rng, stats)
            };
            if let Some(g) = proposal {
                stats.samples += 1;
                stats.attempts += attempts;
                return SampleOutcome {
                    graph: self.orient(g),
                    attempts,
                    i_used: class.i,
                };
            }
        }
    }

    /// One attempt on a class with i ≥ 2 moved points, allocation-free.
    /// Consumes the same random variates in the same order as the reference
    /// decomposition (`sample_sigma` → `pair_orbits` →
    /// `sample_graph_given_sigma` → `acceptance_check`): one shuffle per
    /// derangement retry, one uniform per pair orbit in colex discovery order
    /// (stopping once the edge budget is exceeded), and one uniform for the
    /// thinning on an edge-count hit. The graph is materialized only when the
    /// thinning accepts.
    fn moved_class_attempt<R: Rng + ?Sized>(
        &self,
        params: &WormaldParams,
        class: &ClassWeight,
        scratch: &mut Scratch,
        rng: &mut R,
        stats: &mut SamplerStats,
    ) -> Option<Graph> {
        let npairs = scratch.pairs.len();
        let retries = scratch.derange_prefix(class.i, rng);
        stats.derangement_retries += retries.saturating_sub(1);
        scratch.index_pairs();

        // First pass: walk orbits in colex order of their smallest pair,
        // drawing inclusion and accumulating the normalizer ln Π(p^j + q^j).
        scratch.gen = scratch.gen.wrapping_add(1);
        scratch.include.clear();
        let mut edges = 0usize;
        let mut ln_fix = 0.0;
        for k in 0..npairs {
            if scratch.stamp[k] == scratch.gen {
                continue;
            }
            let mut j = 0usize;
            let mut cur = k;
            loop {
                scratch.stamp[cur] = scratch.gen;
                j += 1;
                cur = scratch.pair_sigma[cur] as usize;
                if cur == k {
                    break;
                }
            }
            let inc = rng.random::<f64>() < class.include_prob[j];
            scratch.include.push(inc);
            ln_fix += class.ln_fix[j];
            if inc {
                edges += j;
                if edges > params.e {
                    stats.edge_misses += 1;
                    return None;
                }
            }
        }
        if edges != params.e {
            stats.edge_misses += 1;
            return None;
        }

        let ln_ratio = ln_ratio_from_fix(params, class, ln_fix);
        assert!(
            ln_ratio <= RATIO_SLACK,
            "acceptance ratio e^{ln_ratio} > 1 at n={} e={} i={}: envelope does not dominate",
            params.n,
            params.e,
            class.i,
        );
        if rng.random::<f64>() >= ln_ratio.min(0.0).exp() {
            stats.thinning_rejections += 1;
            return None;
        }

        // Accepted: re-walk the same orbits and set the included ones.
        let mut g = Graph::empty(self.n).expect("validated at construction");
        scratch.gen = scratch.gen.wrapping_add(1);
        let mut orbit_idx = 0usize;
        for k in 0..npairs {
            if scratch.stamp[k] == scratch.gen {
                continue;
            }
            let inc = scratch.include[orbit_idx];
            orbit_idx += 1;
            let mut cur = k;
            loop {
                scratch.stamp[cur] = scratch.gen;
                if inc {
                    let (lo, hi) = scratch.pairs[cur];
                    g.set_edge(lo, hi);
                }
                cur = scratch.pair_sigma[cur] as usize;
                if cur == k {
                    break;
                }
            }
        }
        Some(g)
    }

    /// Identity-class attempt. Independent Bernoulli(p) over all N pairs is
    /// equivalent to drawing the edge count from Binomial(N, p) and then a
    /// uniform e-subset of pairs on a hit, so the (frequent) misses cost one
    /// binomial variate instead of N coin flips. The thinning ratio is
    /// exactly 1 on this class, so a hit is always accepted.
    fn identity_attempt<R: Rng + ?Sized>(
        &self,
        params: &WormaldParams,
        class: &ClassWeight,
        rng: &mut R,
    ) -> Option<Graph> {
        let npairs = self.n * (self.n - 1) / 2;
        let count = class
            .identity_binomial
            .expect("present on the i = 0 class")
            .sample(rng);
        if count != params.e as u64 {
            return None;
        }
        let mut g = Graph::empty(self.n).expect("validated at construction");
        let mut pairs = Vec::with_capacity(npairs);
        for b in 1..self.n {
            for a in 0..b {
                pairs.push((a, b));
            }
        }
        for idx in rand::seq::index::sample(rng, npairs, params.e) {
            let (a, b) = pairs[idx];
            g.set_edge(a, b);
        }
        Some(g)
    }

    fn draw_class<'p, R: Rng + ?Sized>(
        &self,
        params: &'p WormaldParams,
        rng: &mut R,
    ) -> &'p ClassWeight {
        let total = *params.cumulative.last().expect("at least the i=0 class");
        let u = rng.random::<f64>() * total;
        let idx = params.cumulative.partition_point(|&c| c <= u);
        &params.classes[idx.min(params.classes.len() - 1)]
    }

    fn orient(&self, g: Graph) -> Graph {
        debug_assert_eq!(g.edge_count(), self.e_work);
        if self.complemented {
            g.complement()
        } else {
            g
        }
    }
}

/// One-shot convenience wrapper around [`WormaldSampler`].
pub fn wormald_sample<R: Rng + ?Sized>(n: usize, e: usize, rng: &mut R) -> Result<SampleOutcome> {
    Ok(WormaldSampler::new(n, e)?.sample(rng))
}

/// Exactly-uniform baseline: index into the materialized class list.
pub fn oracle_sample<R: Rng + ?Sized>(
    catalog: &Catalog,
    n: usize,
    e: usize,
    rng: &mut R,
) -> Result<Graph> {
    if n > 7 {
        return Err(Error::Capacity { requested: n, max: 7 });
    }
    let all = catalog.classes_by_vertices(n)?;
    let classes: Vec<&Graph> = all.iter().filter(|g| g.edge_count() == e).collect();
    if classes.is_empty() {
        return Err(Error::range(
            "oracle sample",
            format!("no classes with n={n}, e={e}"),
        ));
    }
    Ok(classes[rng.random_range(0..classes.len())].clone())
}
