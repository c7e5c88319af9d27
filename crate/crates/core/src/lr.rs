//! Littlewood–Richardson coefficients by counting LR skew tableaux.
//!
//! A tableau of shape `λ/μ` and content `ν` is counted when it is
//! semistandard (rows weakly increasing, columns strictly increasing) and
//! its reverse reading word (rows top to bottom, each read right to left)
//! is a lattice word.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigUint;
use num_traits::Zero;

use crate::partition::Partition;

/// `c^λ_{μν}`.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> BigUint {
    if lambda.size() != mu.size() + nu.size() || !mu.contained_in(lambda) || !nu.contained_in(lambda) {
        return BigUint::zero();
    }
    BigUint::from(count_tableaux(lambda, mu, nu))
}

fn count_tableaux(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    // skew cells in reverse reading order
    let cells: Vec<(usize, usize)> = (0..lambda.len())
        .flat_map(|r| {
            let lo = mu.part(r) as usize;
            let hi = lambda.part(r) as usize;
            (lo..hi).rev().map(move |c| (r, c))
        })
        .collect();
    let mut grid: Vec<Vec<u8>> = (0..lambda.len()).map(|r| vec![0; lambda.part(r) as usize]).collect();
    let mut counts = vec![0u32; nu.len() + 1];
    let mut state = Search { lambda, mu, nu, cells: &cells, grid: &mut grid, counts: &mut counts };
    state.fill(0)
}

struct Search<'a> {
    lambda: &'a Partition,
    mu: &'a Partition,
    nu: &'a Partition,
    cells: &'a [(usize, usize)],
    grid: &'a mut Vec<Vec<u8>>,
    counts: &'a mut Vec<u32>,
}

impl Search<'_> {
    fn fill(&mut self, k: usize) -> u64 {
        if k == self.cells.len() {
            return 1;
        }
        let (r, c) = self.cells[k];
        // entries are 1-based; row r may only hold values ≤ r + 1
        let mut hi = (self.nu.len()).min(r + 1) as u8;
        if c + 1 < self.lambda.part(r) as usize {
            hi = hi.min(self.grid[r][c + 1]);
        }
        let mut lo = 1u8;
        if r > 0 && c >= self.mu.part(r - 1) as usize {
            lo = self.grid[r - 1][c] + 1;
        }
        let mut total = 0;
        for v in lo..=hi {
            let vi = v as usize;
            if self.counts[vi] >= self.nu.part(vi - 1) {
                continue;
            }
            if vi > 1 && self.counts[vi] + 1 > self.counts[vi - 1] {
                continue;
            }
            self.counts[vi] += 1;
            self.grid[r][c] = v;
            total += self.fill(k + 1);
            self.counts[vi] -= 1;
        }
        self.grid[r][c] = 0;
        total
    }
}

type ProductTerms = Arc<Vec<(Partition, BigUint)>>;

fn product_cache() -> &'static RwLock<HashMap<(Partition, Partition, usize), ProductTerms>> {
    static CACHE: OnceLock<RwLock<HashMap<(Partition, Partition, usize), ProductTerms>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

const CACHE_LIMIT: usize = 1 << 18;

/// The Schur expansion of `s_μ · s_ν` in `n` variables, terms with more
/// than `n` rows dropped. Sorted by partition.
pub fn schur_product(mu: &Partition, nu: &Partition, n: usize) -> ProductTerms {
    // the smaller factor becomes the content, which keeps the search small
    let (mu, nu) = if (nu.size(), nu) <= (mu.size(), mu) { (mu, nu) } else { (nu, mu) };
    let key = (mu.clone(), nu.clone(), n);
    if let Some(hit) = product_cache().read().unwrap().get(&key) {
        return hit.clone();
    }
    let terms = Arc::new(compute_product(mu, nu, n));
    let mut cache = product_cache().write().unwrap();
    if cache.len() >= CACHE_LIMIT {
        cache.clear();
    }
    cache.insert(key, terms.clone());
    terms
}

fn compute_product(mu: &Partition, nu: &Partition, n: usize) -> Vec<(Partition, BigUint)> {
    let max_len = n.min(mu.len() + nu.len());
    if mu.len() > n || nu.len() > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut shape = Vec::with_capacity(max_len);
    candidates(mu, nu, max_len, nu.size(), &mut shape, &mut |lambda| {
        let c = count_tableaux(lambda, mu, nu);
        if c > 0 {
            out.push((lambda.clone(), BigUint::from(c)));
        }
    });
    out.sort();
    out
}

/// Shapes `λ ⊇ μ` with `|λ/μ| = |ν|`, at most `max_len` rows and a first
/// row extended by at most `ν_1` boxes.
fn candidates(
    mu: &Partition,
    nu: &Partition,
    max_len: usize,
    remaining: u32,
    shape: &mut Vec<u32>,
    emit: &mut dyn FnMut(&Partition),
) {
    let i = shape.len();
    if remaining == 0 {
        let mut full = shape.clone();
        full.extend((i..mu.len()).map(|r| mu.part(r)));
        let lambda = Partition::from_padded(full).expect("candidate shapes are partitions");
        if nu.contained_in(&lambda) {
            emit(&lambda);
        }
        return;
    }
    if i == max_len {
        return;
    }
    let base = mu.part(i);
    let mut hi = base + remaining;
    if i == 0 {
        hi = hi.min(base + nu.first());
    } else {
        hi = hi.min(shape[i - 1]);
    }
    for v in base..=hi {
        shape.push(v);
        candidates(mu, nu, max_len, remaining - (v - base), shape, emit);
        shape.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[1]), &p(&[1, 1])), BigUint::from(1u32));
        assert_eq!(lr_coefficient(&p(&[3, 2, 1]), &p(&[2, 1]), &p(&[2, 1])), BigUint::from(2u32));
        assert_eq!(lr_coefficient(&p(&[1]), &p(&[1]), &p(&[1])), BigUint::zero());
        assert_eq!(lr_coefficient(&p(&[2]), &p(&[1, 1]), &p(&[])), BigUint::zero());
    }

    #[test]
    fn coefficient_symmetric_in_factors() {
        let ps = crate::partition::partitions_up_to(4, 4);
        for mu in &ps {
            for nu in &ps {
                for lambda in crate::partition::partitions_of(mu.size() + nu.size(), 8) {
                    assert_eq!(lr_coefficient(&lambda, mu, nu), lr_coefficient(&lambda, nu, mu));
                }
            }
        }
    }

    #[test]
    fn product_truncates_rows() {
        let terms = schur_product(&p(&[1]), &p(&[1]), 1);
        assert_eq!(terms.as_slice(), &[(p(&[2]), BigUint::from(1u32))]);
        let terms = schur_product(&p(&[2, 1]), &p(&[2, 1]), 3);
        let total: usize = terms.iter().map(|(l, _)| l.len()).max().unwrap();
        assert!(total <= 3);
    }
}
