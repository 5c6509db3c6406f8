use std::collections::BTreeMap;

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;
use crate::warehouse::Layout;

use super::types::{Instance, InstanceError, Provenance, ScatteredInstance, Sku, SupplyEntry};

/// One turnover class: the fraction of SKUs it contains and the total
/// selection weight shared by those SKUs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TurnoverClass {
    pub share: f64,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassProfile {
    pub classes: Vec<TurnoverClass>,
}

impl Default for ClassProfile {
    /// A/B/C: 10% of SKUs carry 60% of the weight, 30% carry 30%, 60% carry 10%.
    fn default() -> Self {
        ClassProfile {
            classes: vec![
                TurnoverClass { share: 0.1, weight: 0.6 },
                TurnoverClass { share: 0.3, weight: 0.3 },
                TurnoverClass { share: 0.6, weight: 0.1 },
            ],
        }
    }
}

impl ClassProfile {
    /// Per-SKU selection weights for `count` SKUs, in SKU order.
    pub fn sku_weights(&self, count: usize) -> Vec<f64> {
        let total_share: f64 = self.classes.iter().map(|c| c.share).sum();
        let mut sizes = Vec::with_capacity(self.classes.len());
        let mut assigned = 0usize;
        for (i, class) in self.classes.iter().enumerate() {
            let size = if i + 1 == self.classes.len() {
                count - assigned
            } else {
                ((class.share / total_share) * count as f64).round() as usize
            };
            let size = size.min(count - assigned);
            sizes.push(size);
            assigned += size;
        }
        let mut weights = Vec::with_capacity(count);
        for (class, &size) in self.classes.iter().zip(&sizes) {
            for _ in 0..size {
                weights.push(class.weight / size as f64);
            }
        }
        weights
    }
}

fn default_positions() -> usize {
    90
}

fn default_crosses() -> usize {
    2
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub alpha: u32,
    pub num_aisles: usize,
    pub num_articles: usize,
    #[serde(default = "default_positions")]
    pub positions_per_aisle: usize,
    #[serde(default = "default_crosses")]
    pub num_crosses: usize,
    pub seed: u64,
    #[serde(default)]
    pub replicate: u32,
    #[serde(default)]
    pub class_profile: ClassProfile,
}

impl GeneratorConfig {
    pub fn new(alpha: u32, num_aisles: usize, num_articles: usize, seed: u64) -> Self {
        GeneratorConfig {
            alpha,
            num_aisles,
            num_articles,
            positions_per_aisle: default_positions(),
            num_crosses: default_crosses(),
            seed,
            replicate: 0,
            class_profile: ClassProfile::default(),
        }
    }

    pub fn two_block(mut self) -> Self {
        self.num_crosses = 3;
        self
    }

    pub fn with_positions(mut self, positions_per_aisle: usize) -> Self {
        self.positions_per_aisle = positions_per_aisle;
        self
    }

    pub fn with_replicate(mut self, replicate: u32) -> Self {
        self.replicate = replicate;
        self
    }

    /// Seed of this configuration's private random stream.
    pub fn stream_seed(&self) -> u64 {
        instance_seed(
            self.seed,
            &[
                u64::from(self.alpha),
                self.num_aisles as u64,
                self.num_articles as u64,
                u64::from(self.replicate),
                self.num_crosses as u64,
                self.positions_per_aisle as u64,
            ],
        )
    }

    pub fn instance_id(&self, kind: &str) -> String {
        let blocks = if self.num_crosses == 3 { "2b" } else { "1b" };
        format!(
            "{kind}-{blocks}-a{}-m{}-p{}-r{}",
            self.alpha, self.num_aisles, self.num_articles, self.replicate
        )
    }

    fn layout<T: Scalar>(&self) -> Result<Layout<T>, InstanceError> {
        if self.alpha == 0 {
            return Err(InstanceError::Config("alpha must be at least 1".into()));
        }
        let blocks = self.num_crosses.saturating_sub(1).max(1);
        if self.positions_per_aisle == 0 || !self.positions_per_aisle.is_multiple_of(blocks) {
            return Err(InstanceError::Config(format!(
                "{} positions per aisle cannot be split into {blocks} blocks",
                self.positions_per_aisle
            )));
        }
        let layout = Layout::new(
            self.num_aisles,
            self.num_crosses,
            self.positions_per_aisle / blocks,
        );
        layout.validate()?;
        Ok(layout)
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Mixes a master seed with grid coordinates into an independent stream seed.
pub fn instance_seed(master: u64, parts: &[u64]) -> u64 {
    parts
        .iter()
        .fold(splitmix64(master), |acc, &p| splitmix64(acc ^ splitmix64(p)))
}

/// Number of distinct SKUs stored in the warehouse: `max(a, ceil(m*n/alpha))`.
pub fn distinct_sku_count(a: usize, m: usize, n: usize, alpha: usize) -> usize {
    assert!(a >= 1 && m >= 1 && n >= 1 && alpha >= 1, "arguments must be positive");
    a.max((m * n).div_ceil(alpha))
}

fn place_depot<T: Scalar, R: Rng>(layout: Layout<T>, rng: &mut R) -> Layout<T> {
    let aisle = rng.gen_range(0..layout.num_aisles);
    let cross = if rng.gen_bool(0.5) { layout.top_cross() } else { 0 };
    layout.with_depot(aisle, cross)
}

pub fn generate_sprp<T: Scalar>(config: &GeneratorConfig) -> Result<Instance<T>, InstanceError> {
    let layout = config.layout::<T>()?;
    let per_aisle = layout.cells_per_aisle();
    let total = layout.num_aisles * per_aisle;
    if config.num_articles > total {
        return Err(InstanceError::Config(format!(
            "{} picks exceed {total} cells",
            config.num_articles
        )));
    }
    let seed = config.stream_seed();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let layout = place_depot(layout, &mut rng);
    let picks: Vec<(usize, usize)> = index::sample(&mut rng, total, config.num_articles)
        .into_iter()
        .map(|flat| (flat / per_aisle, flat % per_aisle))
        .collect();
    let mut inst = Instance::new(config.instance_id("sprp"), layout, picks)?;
    inst.provenance = Some(Provenance {
        config: config.clone(),
        seed,
        distinct_skus: None,
    });
    Ok(inst)
}

pub fn generate_sprp_ss<T: Scalar>(
    config: &GeneratorConfig,
) -> Result<ScatteredInstance<T>, InstanceError> {
    let layout = config.layout::<T>()?;
    let per_aisle = layout.cells_per_aisle();
    let total = layout.num_aisles * per_aisle;
    let xi = distinct_sku_count(
        config.num_articles.max(1),
        layout.num_aisles,
        per_aisle,
        config.alpha as usize,
    );
    if config.num_articles == 0 || xi > total {
        return Err(InstanceError::Config(format!(
            "{} articles cannot be stored in {total} positions",
            config.num_articles
        )));
    }
    let seed = config.stream_seed();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let layout = place_depot(layout, &mut rng);

    let weights = config.class_profile.sku_weights(xi);
    let base = total / xi;
    let mut copies: Vec<Sku> = (0..xi as Sku)
        .flat_map(|s| std::iter::repeat_n(s, base))
        .collect();
    let extra = total - base * xi;
    if extra > 0 {
        let dist = WeightedIndex::new(&weights)
            .map_err(|e| InstanceError::Config(format!("class profile: {e}")))?;
        for _ in 0..extra {
            copies.push(dist.sample(&mut rng) as Sku);
        }
    }
    copies.shuffle(&mut rng);

    let skus: Vec<Sku> = (0..xi as Sku).collect();
    let mut picked: Vec<Sku> = skus
        .choose_multiple_weighted(&mut rng, config.num_articles, |s| weights[*s as usize])
        .map_err(|e| InstanceError::Config(format!("class profile: {e}")))?
        .copied()
        .collect();
    picked.sort_unstable();

    let demand: BTreeMap<Sku, u32> = picked.iter().map(|&s| (s, 1)).collect();
    let supply = copies
        .iter()
        .enumerate()
        .map(|(flat, &sku)| SupplyEntry {
            aisle: flat / per_aisle,
            cell: flat % per_aisle,
            sku,
            qty: 1,
        })
        .collect();

    let inst = ScatteredInstance {
        id: config.instance_id("ss"),
        layout,
        skus: picked,
        demand,
        supply,
        provenance: Some(Provenance {
            config: config.clone(),
            seed,
            distinct_skus: Some(xi),
        }),
    };
    inst.validate()?;
    Ok(inst)
}

/// A full-factorial parameter grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub alphas: Vec<u32>,
    pub aisles: Vec<usize>,
    pub articles: Vec<usize>,
    pub replicates: u32,
    #[serde(default = "default_positions")]
    pub positions_per_aisle: usize,
    #[serde(default = "default_crosses")]
    pub num_crosses: usize,
}

impl Grid {
    /// Standard instances: five aisle counts by five pick counts, 50 each.
    pub fn sprp_default() -> Self {
        Grid {
            alphas: vec![1],
            aisles: vec![5, 10, 15, 20, 25],
            articles: vec![5, 10, 15, 20, 25],
            replicates: 50,
            positions_per_aisle: 90,
            num_crosses: 2,
        }
    }

    /// Scattered storage: the standard grid crossed with scatter factors 1..=5.
    pub fn ss_default() -> Self {
        Grid {
            alphas: vec![1, 2, 3, 4, 5],
            ..Self::sprp_default()
        }
    }

    pub fn len(&self) -> usize {
        self.alphas.len() * self.aisles.len() * self.articles.len() * self.replicates as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn configs(&self, master_seed: u64) -> Vec<GeneratorConfig> {
        let mut out = Vec::with_capacity(self.len());
        for &alpha in &self.alphas {
            for &m in &self.aisles {
                for &a in &self.articles {
                    for rep in 0..self.replicates {
                        let mut c = GeneratorConfig::new(alpha, m, a, master_seed)
                            .with_positions(self.positions_per_aisle)
                            .with_replicate(rep);
                        c.num_crosses = self.num_crosses;
                        out.push(c);
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;

    #[test]
    fn xi_examples() {
        assert_eq!(distinct_sku_count(10, 25, 90, 3), 750);
        assert_eq!(distinct_sku_count(5, 4, 90, 1), 360);
        assert_eq!(distinct_sku_count(100, 5, 90, 5), 100);
    }

    #[test]
    fn abc_weights_sum_to_one() {
        let w = ClassProfile::default().sku_weights(100);
        assert_eq!(w.len(), 100);
        let sum: f64 = w.iter().sum();
        assert!((sum - 1.0).abs() < 1e-9);
        assert!((w[0] - 0.06).abs() < 1e-12);
        assert!((w[99] - 0.1 / 60.0).abs() < 1e-12);
    }

    #[test]
    fn sprp_generation_is_deterministic() {
        let c = GeneratorConfig::new(1, 5, 5, 42);
        let a: Instance<i64> = generate_sprp(&c).unwrap();
        let b: Instance<i64> = generate_sprp(&c).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sprp_picks_are_distinct() {
        let c = GeneratorConfig::new(1, 5, 25, 3);
        let inst: Instance<i64> = generate_sprp(&c).unwrap();
        assert_eq!(inst.num_picks(), 25);
        assert!(inst.required.iter().all(|a| a.len() <= 90));
    }

    #[test]
    fn too_many_picks() {
        let c = GeneratorConfig::new(1, 1, 20, 3).with_positions(10);
        assert!(matches!(generate_sprp::<i64>(&c), Err(InstanceError::Config(_))));
    }

    #[test]
    fn alpha_one_stores_each_sku_once() {
        let c = GeneratorConfig::new(1, 3, 5, 9);
        let inst: ScatteredInstance<i64> = generate_sprp_ss(&c).unwrap();
        for &sku in &inst.skus {
            assert_eq!(inst.candidates_for(sku).len(), 1);
        }
        assert!(inst.as_unique_sprp().is_some());
    }

    #[test]
    fn replication_matches_alpha() {
        let c = GeneratorConfig::new(5, 25, 25, 1);
        let inst: ScatteredInstance<i64> = generate_sprp_ss(&c).unwrap();
        assert_eq!(inst.provenance.as_ref().unwrap().distinct_skus, Some(450));
        for &sku in &inst.skus {
            assert_eq!(inst.candidates_for(sku).len(), 5);
        }
        let stored: BTreeSet<Sku> = inst.supply.iter().map(|e| e.sku).collect();
        assert_eq!(stored.len(), 450);
        assert_eq!(inst.supply.len(), 25 * 90);
    }

    #[test]
    fn two_block_layout_splits_positions() {
        let c = GeneratorConfig::new(1, 3, 4, 2).two_block();
        let inst: Instance<i64> = generate_sprp(&c).unwrap();
        assert_eq!(inst.layout.cells_per_subaisle, 45);
        assert_eq!(inst.layout.num_crosses, 3);
    }

    #[test]
    fn grid_cardinalities() {
        assert_eq!(Grid::sprp_default().len(), 1250);
        assert_eq!(Grid::ss_default().len(), 6250);
        assert_eq!(Grid::sprp_default().configs(0).len(), 1250);
    }

    #[test]
    fn stream_seeds_differ_across_replicates() {
        let a = GeneratorConfig::new(1, 5, 5, 7);
        let b = a.clone().with_replicate(1);
        assert_ne!(a.stream_seed(), b.stream_seed());
    }
}
