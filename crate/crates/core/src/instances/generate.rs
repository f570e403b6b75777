use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, Result};
use crate::profile::Profile;

fn check_sizes(n: usize, m: usize) -> Result<()> {
    if n == 0 || m == 0 {
        return domain(format!("n = {n} and m = {m} must both be positive"));
    }
    Ok(())
}

/// Impartial culture: every order drawn independently and uniformly with a
/// seeded Fisher–Yates shuffle.
pub fn gen_impartial_culture(n: usize, m: usize, seed: u64) -> Result<Profile> {
    check_sizes(n, m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let orders = (0..n)
        .map(|_| {
            let mut order: Vec<usize> = (1..=m).collect();
            for i in (1..m).rev() {
                let j = rng.gen_range(0..=i);
                order.swap(i, j);
            }
            order
        })
        .collect();
    Profile::new(m, orders)
}

/// Every agent ranks `1 ≻ 2 ≻ … ≻ m`.
pub fn gen_identical(n: usize, m: usize) -> Result<Profile> {
    check_sizes(n, m)?;
    Profile::new(m, vec![(1..=m).collect(); n])
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;

    use super::*;

    #[test]
    fn deterministic_in_seed() {
        let a = gen_impartial_culture(20, 6, 11).unwrap();
        let b = gen_impartial_culture(20, 6, 11).unwrap();
        let c = gen_impartial_culture(20, 6, 12).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn single_alternative() {
        let p = gen_impartial_culture(5, 1, 0).unwrap();
        assert!(p.orders().all(|o| o == [1]));
        assert!(gen_impartial_culture(0, 3, 0).is_err());
    }

    #[test]
    fn identical_orders() {
        let p = gen_identical(3, 2).unwrap();
        assert_eq!(p.n(), 3);
        assert!(p.orders().all(|o| o == [1, 2]));
    }

    #[test]
    fn impartial_culture_is_uniform_on_three_alternatives() {
        let p = gen_impartial_culture(60_000, 3, 2024).unwrap();
        let mut counts: HashMap<Vec<usize>, usize> = HashMap::new();
        for o in p.orders() {
            *counts.entry(o.to_vec()).or_default() += 1;
        }
        assert_eq!(counts.len(), 6);
        for (order, count) in counts {
            assert!(
                (9_500..=10_500).contains(&count),
                "{order:?} appeared {count} times"
            );
        }
    }
}
