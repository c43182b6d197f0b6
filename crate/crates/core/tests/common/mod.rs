#![allow(dead_code)]

use entropy_decomp::maxent::markov_join;
use entropy_decomp::{GaussianTriple, JointPmf};
use rand::Rng;

pub fn weights<R: Rng>(rng: &mut R, n: usize, sparsity: f64) -> Vec<f64> {
    loop {
        let w: Vec<f64> = (0..n)
            .map(|_| {
                if rng.gen::<f64>() < sparsity {
                    0.0
                } else {
                    -rng.gen::<f64>().max(1e-300).ln()
                }
            })
            .collect();
        let s: f64 = w.iter().sum();
        if s > 0.0 {
            return w.into_iter().map(|x| x / s).collect();
        }
    }
}

pub fn random_pmf<R: Rng>(rng: &mut R, cards: &[usize], sparsity: f64) -> JointPmf {
    let n = cards.iter().product();
    JointPmf::new(cards.to_vec(), weights(rng, n, sparsity)).unwrap()
}

pub fn random_cards<R: Rng>(rng: &mut R, max: usize) -> Vec<usize> {
    (0..3).map(|_| rng.gen_range(2..=max)).collect()
}

/// `p(x1) p(x2) W(x3 | x1, x2)`: X1 and X2 independent.
pub fn random_independent_inputs<R: Rng>(rng: &mut R, cards: &[usize], sparsity: f64) -> JointPmf {
    let p1 = weights(rng, cards[0], 0.0);
    let p2 = weights(rng, cards[1], 0.0);
    let channel: Vec<Vec<f64>> = (0..cards[0] * cards[1])
        .map(|_| weights(rng, cards[2], sparsity))
        .collect();
    JointPmf::from_fn(cards.to_vec(), |x| {
        p1[x[0]] * p2[x[1]] * channel[x[0] * cards[1] + x[1]][x[2]]
    })
    .unwrap()
}

/// A chain `X1 - X2 - X3` built from a random pair and a random channel.
pub fn random_chain<R: Rng>(rng: &mut R, cards: &[usize], sparsity: f64) -> JointPmf {
    let p12 = random_pmf(rng, &cards[..2], sparsity);
    let p2 = p12.marginalize(&[1]).unwrap();
    let channel: Vec<Vec<f64>> = (0..cards[1]).map(|_| weights(rng, cards[2], sparsity)).collect();
    let p23 = JointPmf::from_fn(vec![cards[1], cards[2]], |x| {
        p2.probabilities()[x[0]] * channel[x[0]][x[1]]
    })
    .unwrap();
    markov_join(&p12, &p23).unwrap()
}

/// Random non-singular correlation structure with random variances.
pub fn random_gaussian<R: Rng>(rng: &mut R) -> GaussianTriple {
    loop {
        let r = |rng: &mut R| rng.gen_range(-0.98..0.98);
        let (a, b, c) = (r(rng), r(rng), r(rng));
        let sigma = [
            rng.gen_range(0.2..3.0),
            rng.gen_range(0.2..3.0),
            rng.gen_range(0.2..3.0),
        ];
        if let Ok(g) = GaussianTriple::new(sigma, a, b, c) {
            if g.correlation_determinant() > 1e-4 {
                return g;
            }
        }
    }
}

/// Ordered non-negative correlations with `1 - alpha - beta + gamma >= 0`.
pub fn random_latent_gaussian<R: Rng>(rng: &mut R) -> GaussianTriple {
    loop {
        let mut v = [rng.gen::<f64>(), rng.gen::<f64>(), rng.gen::<f64>()];
        v.sort_by(|x, y| y.partial_cmp(x).unwrap());
        let [a, b, c] = v;
        if 1.0 - a - b + c < 0.0 {
            continue;
        }
        let sigma = [
            rng.gen_range(0.2..3.0),
            rng.gen_range(0.2..3.0),
            rng.gen_range(0.2..3.0),
        ];
        if let Ok(g) = GaussianTriple::new(sigma, a, b, c) {
            return g;
        }
    }
}

/// `(-1)^(x1+x2+x3)`: the one direction of binary triples that leaves all
/// pairwise marginals unchanged.
pub fn parity(x: &[usize]) -> f64 {
    if (x[0] + x[1] + x[2]) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Range of `t` for which `p + t * parity` stays non-negative.
pub fn parity_range(p: &JointPmf) -> (f64, f64) {
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    for (x, v) in p.iter() {
        if parity(&x) > 0.0 {
            lo = lo.max(-v);
        } else {
            hi = hi.min(v);
        }
    }
    (lo, hi)
}

pub fn shift_parity(p: &JointPmf, t: f64) -> JointPmf {
    JointPmf::from_fn(vec![2, 2, 2], |x| (p.get(x) + t * parity(x)).max(0.0)).unwrap()
}

pub fn det2(s: &[[f64; 3]; 3], i: usize, j: usize) -> f64 {
    nalgebra::Matrix2::new(s[i][i], s[i][j], s[j][i], s[j][j]).determinant()
}

pub fn det3(s: &[[f64; 3]; 3]) -> f64 {
    nalgebra::Matrix3::from_fn(|r, c| s[r][c]).determinant()
}

/// Mutual informations from covariance determinants, in bits.
pub fn det_mi(s: &[[f64; 3]; 3], i: usize, j: usize) -> f64 {
    0.5 * (s[i][i] * s[j][j] / det2(s, i, j)).log2()
}

pub fn det_cmi(s: &[[f64; 3]; 3], i: usize, j: usize, k: usize) -> f64 {
    0.5 * (det2(s, i, k) * det2(s, j, k) / (s[k][k] * det3(s))).log2()
}

pub fn det_coinformation(s: &[[f64; 3]; 3]) -> f64 {
    det_mi(s, 0, 1) - det_cmi(s, 0, 1, 2)
}
