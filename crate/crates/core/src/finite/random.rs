use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::finite::game::FiniteGame;
use crate::Rational;

fn sorted_sample<R: Rng>(rng: &mut R, count: usize, lo: i64, hi: i64) -> Vec<i64> {
    let mut pool: Vec<i64> = (lo..=hi).collect();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let k = rng.random_range(0..pool.len());
        out.push(pool.swap_remove(k));
    }
    out.sort_unstable();
    out
}

/// Draws a game whose sender utility is monotone-supermodular by construction.
///
/// Sender: `u = t - a s / z - e(s)` with `a > 0` and a small nondecreasing
/// penalty `e`. Receiver: `g = -(t - b z)^2` plus small table noise.
/// Each of the type, action and reaction lists has 1 to `max_size` entries.
pub fn random_game<R: Rng>(rng: &mut R, max_size: usize) -> FiniteGame<Rational> {
    let max_size = max_size.max(1);
    let nz = rng.random_range(1..=max_size);
    let ns = rng.random_range(1..=max_size);
    let nt = rng.random_range(1..=max_size);
    let types = sorted_sample(rng, nz, 1, 9);
    let actions = sorted_sample(rng, ns, 0, 7);
    let reactions = sorted_sample(rng, nt, 0, 11);
    let a = Rational::new(rng.random_range(1..=8), 2);
    let b = Rational::new(rng.random_range(1..=6), 2);
    let mut penalty = Vec::with_capacity(ns);
    let mut acc = Rational::from_integer(0);
    for _ in 0..ns {
        acc += Rational::new(rng.random_range(0..=2), 100);
        penalty.push(acc);
    }
    let weights: Vec<i64> = (0..nz).map(|_| rng.random_range(1..=4)).collect();
    let total: i64 = weights.iter().sum();
    let prior = weights.iter().map(|&w| Rational::new(w, total)).collect();

    let mut sender = Vec::with_capacity(nt);
    let mut receiver = Vec::with_capacity(nt);
    for &t in &reactions {
        let mut u_rows = Vec::with_capacity(ns);
        let mut g_rows = Vec::with_capacity(ns);
        for (si, &s) in actions.iter().enumerate() {
            let mut u_row = Vec::with_capacity(nz);
            let mut g_row = Vec::with_capacity(nz);
            for &z in &types {
                let (t, s, z) = (Rational::from_integer(t), Rational::from_integer(s), Rational::from_integer(z));
                u_row.push(t - a * s / z - penalty[si]);
                let noise = Rational::new(rng.random_range(-3..=3), 1000);
                g_row.push(-(t - b * z) * (t - b * z) + noise);
            }
            u_rows.push(u_row);
            g_rows.push(g_row);
        }
        sender.push(u_rows);
        receiver.push(g_rows);
    }
    let to_r = |v: Vec<i64>| v.into_iter().map(Rational::from_integer).collect::<Vec<_>>();
    FiniteGame::from_tables(to_r(types), prior, to_r(actions), to_r(reactions), sender, receiver)
        .expect("generated game is well formed")
}

/// `count` games drawn from a ChaCha stream seeded with `seed`.
pub fn random_games(count: usize, seed: u64, max_size: usize) -> Vec<FiniteGame<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            loop {
                let g = random_game(&mut rng, max_size);
                if g.sender_certificate().passed() {
                    break g;
                }
            }
        })
        .collect()
}
