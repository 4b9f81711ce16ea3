use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::PostId;
use crate::instance::{Instance, PreferenceList};

/// Seeded random instance with applicants `a1..an` and posts `p1..pm`.
///
/// Each applicant ranks between 1 and `m` distinct posts. Consecutive posts
/// share a tie group with probability `tie_prob`; a list stops once it
/// would need more than `max_rank` groups.
pub fn generate_random(n: usize, m: usize, max_rank: usize, tie_prob: f64, seed: u64) -> Result<Instance> {
    if n == 0 || m == 0 || max_rank == 0 {
        return Err(Error::InvalidParameter(
            "applicants, posts and max rank must be at least 1".into(),
        ));
    }
    if !(0.0..1.0).contains(&tie_prob) {
        return Err(Error::InvalidParameter(format!(
            "tie probability {tie_prob} not in [0, 1)"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut posts: Vec<PostId> = (0..m).map(PostId).collect();
    let mut prefs = Vec::with_capacity(n);
    for _ in 0..n {
        let len = rng.gen_range(1..=m);
        posts.shuffle(&mut rng);
        let mut groups: PreferenceList = Vec::new();
        for &p in &posts[..len] {
            let tie = !groups.is_empty() && rng.gen_bool(tie_prob);
            if tie {
                groups.last_mut().expect("non-empty").push(p);
            } else if groups.len() == max_rank {
                break;
            } else {
                groups.push(vec![p]);
            }
        }
        prefs.push(groups);
    }
    Instance::new(
        (1..=n).map(|i| format!("a{i}")).collect(),
        (1..=m).map(|i| format!("p{i}")).collect(),
        prefs,
    )
}
