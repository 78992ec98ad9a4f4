//! Instance generators. Deterministic given their spec (seed included);
//! generated instances always satisfy the height invariant, rescaling
//! weights when a sampled branch would break it.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::piecemeal::pdfs;
use crate::traversal::{dfs_tour, ChildOrder};
use crate::tree::{Instance, InstanceBuilder};
use crate::weight::Weight;

#[derive(Clone, Debug)]
pub enum GeneratorSpec {
    /// `arms` leaves at distance `arm_length` from the root.
    Star {
        arms: usize,
        arm_length: Weight,
        budget: Weight,
    },
    /// A spine with one leaf per spine vertex; seeded integer weights.
    Caterpillar {
        spine: usize,
        max_weight: u32,
        budget: Option<Weight>,
        seed: u64,
    },
    /// A heavy chain ending in a star, with seeded light leaves bunched on
    /// the chain; always violates the one-light-edge-per-vertex property.
    HeavyPath { seed: u64 },
    /// Uniform random recursive tree with integer weights in
    /// `min_weight..=max_weight`. Without an explicit budget, the budget is
    /// twice the height; with one, weights are rescaled to fit.
    Random {
        nodes: usize,
        min_weight: u32,
        max_weight: u32,
        budget: Option<Weight>,
        max_leaves: Option<usize>,
        seed: u64,
    },
    /// A random base whose inter-route stop edges are subdivided so every
    /// non-final piecemeal route has length exactly the budget.
    Subdivided { nodes: usize, seed: u64 },
    /// A root with three branches of lengths `B/4`, `B/4` and `B/2`.
    LowerBoundBranches { budget: Weight },
}

pub fn generate(spec: &GeneratorSpec) -> Result<Instance> {
    match spec {
        GeneratorSpec::Star {
            arms,
            arm_length,
            budget,
        } => star(*arms, arm_length, budget),
        GeneratorSpec::Caterpillar {
            spine,
            max_weight,
            budget,
            seed,
        } => caterpillar(*spine, *max_weight, budget.as_ref(), *seed),
        GeneratorSpec::HeavyPath { seed } => heavy_path_family(*seed),
        GeneratorSpec::Random {
            nodes,
            min_weight,
            max_weight,
            budget,
            max_leaves,
            seed,
        } => random(
            *nodes,
            *min_weight,
            *max_weight,
            budget.as_ref(),
            *max_leaves,
            *seed,
        ),
        GeneratorSpec::Subdivided { nodes, seed } => subdivided(*nodes, *seed),
        GeneratorSpec::LowerBoundBranches { budget } => lower_bound_branches(budget),
    }
}

fn star(arms: usize, arm_length: &Weight, budget: &Weight) -> Result<Instance> {
    if arms == 0 {
        return Err(Error::Generator("star needs at least one arm".into()));
    }
    if !arm_length.is_positive() {
        return Err(Error::Generator("arm length must be positive".into()));
    }
    let mut b = InstanceBuilder::new(budget.clone());
    for i in 1..=arms {
        b = b.edge("r", &format!("l{i}"), arm_length.clone());
    }
    b.build()
}

fn caterpillar(
    spine: usize,
    max_weight: u32,
    budget: Option<&Weight>,
    seed: u64,
) -> Result<Instance> {
    if spine == 0 {
        return Err(Error::Generator("caterpillar needs a spine".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(String, String, Weight)> = Vec::new();
    let mut prev = "s0".to_string();
    let mut depth = Weight::zero();
    let mut height = Weight::zero();
    for i in 1..=spine {
        let name = format!("s{i}");
        let w = Weight::from_int(rng.gen_range(1..=max_weight.max(1)) as i64);
        depth = depth + &w;
        edges.push((prev.clone(), name.clone(), w));
        let leaf_w = Weight::from_int(rng.gen_range(1..=max_weight.max(1)) as i64);
        height = height.clone().max(&depth + &leaf_w);
        edges.push((name.clone(), format!("h{i}"), leaf_w));
        prev = name;
    }
    height = height.max(depth);
    finish(edges, budget, height)
}

/// Chain of heavy edges to a bottom star, with 2-3 light leaves bunched on
/// chain vertices. Retries seeds deterministically until the shape
/// classifies as intended (root heavy degree one, bunched vertex present).
fn heavy_path_family(seed: u64) -> Result<Instance> {
    for attempt in 0..64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt * 0x9e37_79b9));
        let chain_len = rng.gen_range(1..=2usize);
        let star_arms = rng.gen_range(3..=4usize);
        let star_w = rng.gen_range(2..=4u32);
        let mut edges: Vec<(String, String, Weight)> = Vec::new();
        let mut prev = "r".to_string();
        for i in 1..=chain_len {
            let name = format!("p{i}");
            edges.push((prev.clone(), name.clone(), Weight::from_int(1)));
            prev = name;
        }
        // Bunch 2..=3 light leaves on one chain vertex (possibly the root).
        let host = rng.gen_range(0..=chain_len);
        let host_name = if host == 0 {
            "r".to_string()
        } else {
            format!("p{host}")
        };
        let bunch = rng.gen_range(2..=(6 - star_arms).min(3));
        for i in 1..=bunch {
            let w = rng.gen_range(1..=2u32);
            edges.push((
                host_name.clone(),
                format!("q{i}"),
                Weight::from_int(w as i64),
            ));
        }
        edges.push((prev.clone(), "bot".to_string(), Weight::from_int(1)));
        for i in 1..=star_arms {
            edges.push((
                "bot".to_string(),
                format!("z{i}"),
                Weight::from_int(star_w as i64),
            ));
        }
        let height = Weight::from_int((chain_len + 1) as i64 + star_w as i64);
        let t = finish(edges, None, height)?;
        let cl = t.classify();
        let (st, _) = crate::rearrange::satisfies_st(&t);
        if cl.node_heavy(t.root()) && cl.heavydeg(t.root()) == 1 && !st {
            return Ok(t);
        }
    }
    Err(Error::Generator(format!(
        "no heavy-path-family instance found for seed {seed}"
    )))
}

fn random(
    nodes: usize,
    min_weight: u32,
    max_weight: u32,
    budget: Option<&Weight>,
    max_leaves: Option<usize>,
    seed: u64,
) -> Result<Instance> {
    if nodes < 2 {
        return Err(Error::Generator(
            "random tree needs at least 2 nodes".into(),
        ));
    }
    if min_weight == 0 || min_weight > max_weight {
        return Err(Error::Generator(format!(
            "bad weight range {min_weight}..={max_weight}"
        )));
    }
    for attempt in 0..1024 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt * 0x9e37_79b9));
        // Uniform random recursive tree: parent of node i drawn from 0..i.
        let parents: Vec<usize> = (1..nodes).map(|i| rng.gen_range(0..i)).collect();
        if let Some(cap) = max_leaves {
            let mut has_child = vec![false; nodes];
            for &p in &parents {
                has_child[p] = true;
            }
            let leaves = has_child.iter().filter(|h| !**h).count();
            if leaves > cap {
                continue;
            }
        }
        let mut edges = Vec::new();
        let mut depth = vec![Weight::zero(); nodes];
        let mut height = Weight::zero();
        for (i, &p) in parents.iter().enumerate() {
            let child = i + 1;
            let w = Weight::from_int(rng.gen_range(min_weight..=max_weight) as i64);
            depth[child] = &depth[p] + &w;
            height = height.clone().max(depth[child].clone());
            edges.push((format!("n{p}"), format!("n{child}"), w));
        }
        return finish(edges, budget, height);
    }
    Err(Error::Generator(format!(
        "no random instance with <= {max_leaves:?} leaves for seed {seed}"
    )))
}

fn subdivided(nodes: usize, seed: u64) -> Result<Instance> {
    let base = random(nodes, 1, 3, None, None, seed)?;
    let tour = dfs_tour(&base, &ChildOrder::FileOrder)?;
    let trace = pdfs(&base, &tour);

    // Split each inter-route stop edge so the stopped route, extended to
    // the split vertex, has length exactly the budget.
    let mut split_at: Vec<(usize, Weight)> = Vec::new(); // (stop index, offset below stop vertex)
    for i in 0..trace.route_count() - 1 {
        let stop = trace.stop_indices[i + 1];
        let len = &trace.per_route_lengths[i];
        let gap = (base.budget() - len).half();
        if gap.is_positive() {
            split_at.push((stop, gap));
        }
    }

    let mut edges: Vec<(String, String, Weight)> = Vec::new();
    for v in base.preorder() {
        for &c in base.children(v) {
            let mut splits: Vec<&Weight> = Vec::new();
            for (stop, gap) in &split_at {
                let stop_v = tour.vertices[*stop];
                let next_v = tour.vertices[*stop + 1];
                // The subdivided edge is the tour edge leaving the stop; it
                // is always a downward step (an upward step costs no
                // progress budget, so the route would have taken it).
                if stop_v == v && next_v == c {
                    splits.push(gap);
                }
            }
            let parent_name = base.name(v).to_string();
            let child_name = base.name(c).to_string();
            match splits.as_slice() {
                [] => edges.push((parent_name, child_name, base.parent_edge_weight(c).clone())),
                [gap] => {
                    let mid = format!("{child_name}+");
                    edges.push((parent_name, mid.clone(), (*gap).clone()));
                    edges.push((mid, child_name, base.parent_edge_weight(c) - *gap));
                }
                _ => {
                    return Err(Error::Generator(
                        "an edge cannot host two stop splits".into(),
                    ))
                }
            }
        }
    }
    let mut b = InstanceBuilder::new(base.budget().clone());
    for (p, c, w) in edges {
        b = b.edge(&p, &c, w);
    }
    b.build()
}

fn lower_bound_branches(budget: &Weight) -> Result<Instance> {
    let quarter = budget.half().half();
    if !quarter.is_positive() {
        return Err(Error::Generator("budget must be positive".into()));
    }
    InstanceBuilder::new(budget.clone())
        .edge("r", "a", quarter.clone())
        .edge("r", "b", quarter.clone())
        .edge("r", "c", budget.half())
        .build()
}

/// Picks the final budget: the explicit one (rescaling weights to fit the
/// height invariant when needed) or twice the height.
fn finish(
    edges: Vec<(String, String, Weight)>,
    budget: Option<&Weight>,
    height: Weight,
) -> Result<Instance> {
    let (edges, budget) = match budget {
        None => (edges, height.double()),
        Some(b) => {
            let half = b.half();
            if height > half {
                let scale = &half / &height;
                let scaled = edges
                    .into_iter()
                    .map(|(p, c, w)| (p, c, w * &scale))
                    .collect();
                (scaled, b.clone())
            } else {
                (edges, b.clone())
            }
        }
    };
    let mut builder = InstanceBuilder::new(budget);
    for (p, c, w) in edges {
        builder = builder.edge(&p, &c, w);
    }
    builder.build()
}
