//! Shannon-entropic geometry over a measured joint distribution.
//!
//! All entropies are base-2. From one `JointDistribution` the table of all
//! subset entropies is built eagerly (every reactivity evaluation touches
//! most subsets, and `d ≤ 6` keeps the table small). On top of it sit the
//! Rokhlin–Rajski distance `D_AB = 2H_AB − H_A − H_B`, the information area
//! `𝒜_ABC = H_{A|BC}H_{B|CA} + H_{B|CA}H_{C|AB} + H_{C|AB}H_{A|BC}`, and the
//! general `n`-observer volume.
//!
//! For `n` observers with leave-one-out conditional entropies
//! `h_i = H(X_i | rest)`, the volume is the elementary symmetric polynomial
//! `e_{n−1}(h_1, …, h_n)`, the sum of all `n` leave-one-out products. For
//! `n = 3` this is exactly the area above, and for `n = 4` the four-term
//! tetrahedron volume; the pattern for `n > 4` is our reading of that
//! sequence rather than a formula taken from elsewhere.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::qstate::JointDistribution;
use crate::{Error, Result};

/// Conditional entropies in `(-1e-12, 0)` are round-off and clamp to zero;
/// anything lower is treated as a computation error.
pub const CONDITIONAL_ENTROPY_TOL: f64 = 1e-12;

/// Base-2 Shannon entropies of every non-empty observer subset, indexed by
/// bitmask (bit `v` set means variable `v` is in the subset).
#[derive(Clone, Debug, PartialEq)]
pub struct EntropyTable {
    num_vars: usize,
    outcomes_per_var: usize,
    h: Vec<f64>,
}

impl EntropyTable {
    /// Computes all `2^d − 1` subset entropies from one pass of marginals.
    pub fn from_distribution(p: &JointDistribution) -> Self {
        let d = p.num_vars();
        let s = p.outcomes_per_var();
        // stride of variable v in the flattened outcome table
        let mut stride = vec![1usize; d];
        for v in (0..d.saturating_sub(1)).rev() {
            stride[v] = stride[v + 1] * s;
        }
        let mut h = vec![0.0f64; 1 << d];
        let mut marginal = vec![0.0f64; p.probs().len()];
        for mask in 1usize..(1 << d) {
            let vars: Vec<usize> = (0..d).filter(|v| mask >> v & 1 == 1).collect();
            let size = s.pow(vars.len() as u32);
            marginal[..size].fill(0.0);
            for (idx, &prob) in p.probs().iter().enumerate() {
                let mut dest = 0usize;
                for &v in &vars {
                    dest = dest * s + (idx / stride[v]) % s;
                }
                marginal[dest] += prob;
            }
            h[mask] = shannon(&marginal[..size]);
        }
        Self {
            num_vars: d,
            outcomes_per_var: s,
            h,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn outcomes_per_var(&self) -> usize {
        self.outcomes_per_var
    }

    /// `log₂ s`, the entropy ceiling of a single variable.
    pub fn max_entropy_per_var(&self) -> f64 {
        (self.outcomes_per_var as f64).log2()
    }

    /// Joint entropy `H(S)` of a subset of variables, in bits.
    pub fn entropy(&self, vars: &[usize]) -> Result<f64> {
        Ok(self.h[self.mask_of(vars)? as usize])
    }

    fn mask_of(&self, vars: &[usize]) -> Result<u32> {
        if vars.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut mask = 0u32;
        for &v in vars {
            if v >= self.num_vars {
                return Err(Error::VariableOutOfRange {
                    index: v,
                    num_vars: self.num_vars,
                });
            }
            if mask >> v & 1 == 1 {
                return Err(Error::RepeatedVariable);
            }
            mask |= 1 << v;
        }
        Ok(mask)
    }

    fn conditional_from_masks(&self, union: u32, given: u32) -> Result<f64> {
        let value = self.h[union as usize] - self.h[given as usize];
        if value < 0.0 {
            if value < -CONDITIONAL_ENTROPY_TOL {
                return Err(Error::NegativeConditionalEntropy(value));
            }
            return Ok(0.0);
        }
        Ok(value)
    }

    /// `H(target | given) = H(target ∪ given) − H(given)`.
    pub fn conditional_entropy(&self, target: &[usize], given: &[usize]) -> Result<f64> {
        let t = self.mask_of(target)?;
        let g = self.mask_of(given)?;
        if t & g != 0 {
            return Err(Error::OverlappingSubsets);
        }
        self.conditional_from_masks(t | g, g)
    }

    /// Rokhlin–Rajski distance `D_ab = 2H_ab − H_a − H_b`; zero when
    /// `a == b` by convention.
    pub fn info_distance(&self, a: usize, b: usize) -> Result<f64> {
        if a == b {
            self.mask_of(&[a])?;
            return Ok(0.0);
        }
        // fixed evaluation order keeps the value exactly symmetric in (a, b)
        let ma = self.mask_of(&[a.min(b)])?;
        let mb = self.mask_of(&[a.max(b)])?;
        let value =
            2.0 * self.h[(ma | mb) as usize] - self.h[ma as usize] - self.h[mb as usize];
        if value < 0.0 {
            if value < -CONDITIONAL_ENTROPY_TOL {
                return Err(Error::NegativeConditionalEntropy(value));
            }
            return Ok(0.0);
        }
        Ok(value)
    }

    /// Information area of a triangle of observers, in bits².
    pub fn info_area(&self, a: usize, b: usize, c: usize) -> Result<f64> {
        self.info_volume(&[a, b, c])
    }

    /// Information volume of an `n ≥ 3` observer simplex, in bits^(n−1):
    /// `e_{n−1}` of the leave-one-out conditional entropies. Arguments are
    /// sorted internally, so the value is exactly permutation-invariant.
    pub fn info_volume(&self, vars: &[usize]) -> Result<f64> {
        if vars.len() < 3 {
            return Err(Error::TooFewVariables {
                min: 3,
                got: vars.len(),
            });
        }
        let full = self.mask_of(vars)?;
        let mut sorted: Vec<usize> = vars.to_vec();
        sorted.sort_unstable();
        let mut cond = Vec::with_capacity(sorted.len());
        for &v in &sorted {
            cond.push(self.conditional_from_masks(full, full & !(1 << v))?);
        }
        let mut total = 0.0f64;
        for skip in 0..cond.len() {
            let mut prod = 1.0f64;
            for (j, &hj) in cond.iter().enumerate() {
                if j != skip {
                    prod *= hj;
                }
            }
            total += prod;
        }
        Ok(total)
    }
}

fn shannon(probs: &[f64]) -> f64 {
    let mut h = 0.0f64;
    for &p in probs {
        if p > 0.0 {
            h -= p * p.log2();
        }
    }
    h.max(0.0)
}

pub(crate) fn pairs(d: usize) -> Vec<[usize; 2]> {
    let mut out = Vec::new();
    for i in 0..d {
        for j in (i + 1)..d {
            out.push([i, j]);
        }
    }
    out
}

pub(crate) fn triples(d: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for i in 0..d {
        for j in (i + 1)..d {
            for k in (j + 1)..d {
                out.push([i, j, k]);
            }
        }
    }
    out
}

pub(crate) fn quadruples(d: usize) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for i in 0..d {
        for j in (i + 1)..d {
            for k in (j + 1)..d {
                for l in (k + 1)..d {
                    out.push([i, j, k, l]);
                }
            }
        }
    }
    out
}

/// Every pairwise distance, triple area and quadruple volume of one
/// entropy table, with their boundary/bulk aggregates.
#[derive(Clone, Debug, PartialEq)]
pub struct GeometryReport {
    pub num_vars: usize,
    pub distances: Vec<([usize; 2], f64)>,
    pub areas: Vec<([usize; 3], f64)>,
    pub volumes: Vec<([usize; 4], f64)>,
    /// Sum of all pairwise distances.
    pub perimeter: f64,
    /// Sum of all triple areas.
    pub surface: f64,
    /// Sum of all quadruple volumes.
    pub volume_total: f64,
}

impl GeometryReport {
    pub fn from_table(table: &EntropyTable) -> Result<Self> {
        let d = table.num_vars();
        let mut distances = Vec::new();
        let mut perimeter = 0.0f64;
        for pair in pairs(d) {
            let v = table.info_distance(pair[0], pair[1])?;
            perimeter += v;
            distances.push((pair, v));
        }
        let mut areas = Vec::new();
        let mut surface = 0.0f64;
        for t in triples(d) {
            let v = table.info_area(t[0], t[1], t[2])?;
            surface += v;
            areas.push((t, v));
        }
        let mut volumes = Vec::new();
        let mut volume_total = 0.0f64;
        for q in quadruples(d) {
            let v = table.info_volume(&q)?;
            volume_total += v;
            volumes.push((q, v));
        }
        Ok(Self {
            num_vars: d,
            distances,
            areas,
            volumes,
            perimeter,
            surface,
            volume_total,
        })
    }
}
