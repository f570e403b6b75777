//! Instance constructors, synthetic profile generators and the profile file format.

mod format;
mod generate;

pub use format::{parse_instance, write_instance, ParseError, ParseErrorKind, ProfileDocument};
pub use generate::{gen_identical, gen_impartial_culture};

use crate::error::{domain, Result};
use crate::instance::{Instance, SystemTag};
use crate::profile::Profile;

fn check_committee_size(profile: &Profile, k: usize) -> Result<()> {
    if k == 0 || k > profile.m() {
        return domain(format!(
            "committee size {k} outside 1..={}",
            profile.m()
        ));
    }
    Ok(())
}

/// Monroe restriction: unit costs and weights, budget `k`, capacity `⌈n/k⌉`.
pub fn make_monroe(profile: Profile, k: usize) -> Result<Instance> {
    check_committee_size(&profile, k)?;
    let capacity = profile.n().div_ceil(k) as u64;
    Ok(Instance::restricted(profile, k, capacity, SystemTag::Monroe))
}

/// Chamberlin–Courant restriction: unit costs and weights, budget `k`, capacity `n`.
pub fn make_cc(profile: Profile, k: usize) -> Result<Instance> {
    check_committee_size(&profile, k)?;
    let capacity = profile.n() as u64;
    Ok(Instance::restricted(profile, k, capacity, SystemTag::Cc))
}
