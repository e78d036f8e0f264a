//! Dense reference model of the walks, written straight from the definitions
//! and sharing nothing with the library's kernels except `WalkSpec`.

#![allow(dead_code)]

use num_complex::Complex64 as C;
use qwadg::statevec::{Layers, WalkKind, WalkSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Dense = Vec<Vec<C>>;

pub fn u3(theta: f64, phi: f64, lambda: f64) -> Dense {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    vec![
        vec![C::new(c, 0.0), -C::from_polar(s, lambda)],
        vec![C::from_polar(s, phi), C::from_polar(c, phi + lambda)],
    ]
}

pub fn matmul(a: &Dense, b: &Dense) -> Dense {
    let (n, m, p) = (a.len(), b.len(), b[0].len());
    let mut out = vec![vec![C::new(0.0, 0.0); p]; n];
    for i in 0..n {
        for k in 0..m {
            if a[i][k] == C::new(0.0, 0.0) {
                continue;
            }
            for j in 0..p {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn kron(a: &Dense, b: &Dense) -> Dense {
    let (ra, ca, rb, cb) = (a.len(), a[0].len(), b.len(), b[0].len());
    let mut out = vec![vec![C::new(0.0, 0.0); ca * cb]; ra * rb];
    for i in 0..ra {
        for j in 0..ca {
            for k in 0..rb {
                for l in 0..cb {
                    out[i * rb + k][j * cb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn identity(n: usize) -> Dense {
    (0..n).map(|i| (0..n).map(|j| C::new((i == j) as u8 as f64, 0.0)).collect()).collect()
}

fn pauli() -> (Dense, Dense, Dense) {
    let z = C::new(0.0, 0.0);
    let o = C::new(1.0, 0.0);
    let i = C::new(0.0, 1.0);
    (vec![vec![z, o], vec![o, z]], vec![vec![z, -i], vec![i, z]], vec![vec![o, z], vec![z, -o]])
}

/// `exp(M)` by scaling, a 30-term Taylor series, and squaring.
pub fn expm(m: &Dense) -> Dense {
    let n = m.len();
    let norm: f64 = m.iter().flatten().map(|z| z.norm()).sum();
    let squarings = (norm.max(1.0).log2().ceil() as i32 + 4).max(0);
    let scale = 0.5f64.powi(squarings);
    let a: Dense = m.iter().map(|r| r.iter().map(|z| z * scale).collect()).collect();
    let mut result = identity(n);
    let mut term = identity(n);
    for k in 1..30 {
        term = matmul(&term, &a);
        term.iter_mut().flatten().for_each(|z| *z /= k as f64);
        for (r, t) in result.iter_mut().flatten().zip(term.iter().flatten()) {
            *r += t;
        }
    }
    for _ in 0..squarings {
        result = matmul(&result, &result);
    }
    result
}

/// `exp(i(a XX + b YY + c ZZ))`.
pub fn interaction_expm(a: f64, b: f64, c: f64) -> Dense {
    let (x, y, z) = pauli();
    let (xx, yy, zz) = (kron(&x, &x), kron(&y, &y), kron(&z, &z));
    let h: Dense = (0..4)
        .map(|i| (0..4).map(|j| C::new(0.0, 1.0) * (xx[i][j] * a + yy[i][j] * b + zz[i][j] * c)).collect())
        .collect();
    expm(&h)
}

/// Joint coin from 15 flat angles.
pub fn entangled(v: &[f64]) -> Dense {
    let pre = kron(&u3(v[0], v[1], v[2]), &u3(v[3], v[4], v[5]));
    let mid = interaction_expm(v[6], v[7], v[8]);
    let post = kron(&u3(v[9], v[10], v[11]), &u3(v[12], v[13], v[14]));
    matmul(&post, &matmul(&mid, &pre))
}

/// Where the shift after coin `g` sends each basis state.
fn destination(kind: WalkKind, g: usize, coin: usize, pos: &[usize], n: usize) -> Vec<usize> {
    let wrap = |x: usize, d: isize| ((x as isize + d).rem_euclid(n as isize)) as usize;
    match kind {
        WalkKind::Dtqw => vec![wrap(pos[0], if coin == 0 { 1 } else { -1 })],
        WalkKind::Ssqw => {
            if g % 2 == 0 {
                vec![wrap(pos[0], if coin == 0 { 1 } else { 0 })]
            } else {
                vec![wrap(pos[0], if coin == 1 { -1 } else { 0 })]
            }
        }
        WalkKind::Entangled2D => {
            let (c1, c2) = ((coin >> 1) as isize, (coin & 1) as isize);
            if g % 2 == 0 {
                vec![wrap(pos[0], c1), wrap(pos[1], c2)]
            } else {
                vec![wrap(pos[0], c1 - 1), wrap(pos[1], c2 - 1)]
            }
        }
    }
}

fn decode(kind: WalkKind, index: usize, n: usize) -> (usize, Vec<usize>) {
    match kind {
        WalkKind::Entangled2D => (index / (n * n), vec![(index / n) % n, index % n]),
        _ => (index / n, vec![index % n]),
    }
}

fn encode(kind: WalkKind, coin: usize, pos: &[usize], n: usize) -> usize {
    match kind {
        WalkKind::Entangled2D => coin * n * n + pos[0] * n + pos[1],
        _ => coin * n + pos[0],
    }
}

/// The flat coin angles of every stage, in application order.
fn stage_angles(spec: &WalkSpec) -> Vec<Vec<f64>> {
    match &spec.layers {
        Layers::Dtqw(c) => c.iter().map(|p| p.to_array().to_vec()).collect(),
        Layers::Ssqw(c) => c.iter().flat_map(|[a, b]| [a.to_array().to_vec(), b.to_array().to_vec()]).collect(),
        Layers::Entangled2D(c) => c.iter().flat_map(|[a, b]| [a.to_array().to_vec(), b.to_array().to_vec()]).collect(),
    }
}

/// Dense unitary of stage `g`: the coin on the coin register, then the shift.
pub fn stage_matrix(kind: WalkKind, g: usize, angles: &[f64], n: usize) -> Dense {
    let coin = match kind {
        WalkKind::Entangled2D => entangled(angles),
        _ => u3(angles[0], angles[1], angles[2]),
    };
    let positions = if kind == WalkKind::Entangled2D { n * n } else { n };
    let coin_op = kron(&coin, &identity(positions));
    let dim = coin_op.len();
    let mut out = vec![vec![C::new(0.0, 0.0); dim]; dim];
    for k in 0..dim {
        let (c, pos) = decode(kind, k, n);
        let to = encode(kind, c, &destination(kind, g, c, &pos, n), n);
        out[to].clone_from(&coin_op[k]);
    }
    out
}

/// Final-state position distribution of `spec`, computed densely.
pub fn oracle_probabilities(spec: &WalkSpec) -> Vec<f64> {
    let kind = spec.kind;
    let n = 1usize << spec.position_qubits[0];
    let positions = if kind == WalkKind::Entangled2D { n * n } else { n };
    let coin_dim = spec.initial_coin.len();
    let start = encode(kind, 0, &spec.initial_position, n) % positions;
    let mut psi = vec![C::new(0.0, 0.0); coin_dim * positions];
    for (c, a) in spec.initial_coin.iter().enumerate() {
        psi[c * positions + start] = *a;
    }
    let mut total = identity(psi.len());
    for (g, angles) in stage_angles(spec).iter().enumerate() {
        total = matmul(&stage_matrix(kind, g, angles, n), &total);
    }
    let out: Vec<C> = total.iter().map(|row| row.iter().zip(&psi).map(|(u, p)| u * p).sum()).collect();
    (0..positions).map(|x| (0..coin_dim).map(|c| out[c * positions + x].norm_sqr()).sum()).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_angles(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(0.0..std::f64::consts::TAU)).collect()
}

/// A normalized random vector of `n` complex amplitudes.
pub fn random_coin_state(rng: &mut impl Rng, n: usize) -> Vec<C> {
    let v: Vec<C> = (0..n).map(|_| C::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

/// A random walk of `kind` with `steps` layers, random start and random angles.
pub fn random_spec(rng: &mut impl Rng, kind: WalkKind, qubits: usize, steps: usize) -> WalkSpec {
    let axes = kind.axes();
    let template = WalkSpec::new(vec![qubits; axes], Layers::identity(kind, steps)).unwrap();
    let params = random_angles(rng, template.num_parameters());
    let coin = random_coin_state(rng, kind.coin_dim());
    let n = 1usize << qubits;
    let pos: Vec<usize> = (0..axes).map(|_| rng.random_range(0..n)).collect();
    template.with_parameters(&params).unwrap().with_initial_coin(coin).unwrap().with_initial_position(pos).unwrap()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Removes every key that holds a wall-clock measurement.
pub fn strip_timing(v: &mut serde_json::Value) {
    match v {
        serde_json::Value::Object(m) => {
            m.retain(|k, _| !k.contains("wall_time"));
            m.values_mut().for_each(strip_timing);
        }
        serde_json::Value::Array(a) => a.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

pub fn qwadg(args: &[&str]) -> std::process::Output {
    std::process::Command::new(env!("CARGO_BIN_EXE_qwadg")).args(args).output().expect("binary runs")
}

pub fn read_json(path: &std::path::Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}
