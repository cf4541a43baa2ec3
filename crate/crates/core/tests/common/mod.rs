#![allow(dead_code, clippy::needless_range_loop)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toricloc::exact::factorial;
use toricloc::polytope::{shapes, DelzantPolytope, Facet};
use toricloc::testconfig::{product_tc, trivial_tc, ToricTestConfiguration};
use toricloc::{GaussianRational, Rational};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::normalize(n, d).unwrap()
}

pub fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from(x)).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_vector(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Vec<Rational> {
    (0..n).map(|_| Rational::from(rng.gen_range(-bound..=bound))).collect()
}

pub fn random_rational_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| q(rng.gen_range(-20..=20), rng.gen_range(1..=7))).collect()
}

/// Random vector pairing nonzero with every edge of `p`.
pub fn random_generic(rng: &mut ChaCha8Rng, p: &DelzantPolytope) -> Vec<Rational> {
    let frames = p.vertex_frames();
    loop {
        let xi = random_vector(rng, p.dim(), 9);
        if toricloc::localize::is_generic(&frames, &xi) {
            return xi;
        }
    }
}

/// Product of random elementary matrices: a random element of `GL_n(Z)`.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    if n == 1 {
        m[0][0] = if rng.gen_bool(0.5) { 1 } else { -1 };
        return m;
    }
    for _ in 0..4 {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        let k = rng.gen_range(-2..=2);
        for col in 0..n {
            let add = k * m[j][col];
            m[i][col] += add;
        }
    }
    if rng.gen_bool(0.5) {
        m.swap(0, 1);
    }
    m
}

/// `M^{-T} v` for a unimodular `M`, by exact solve of `M^T y = v`.
pub fn contragredient(m: &[Vec<i64>], v: &[Rational]) -> Vec<Rational> {
    let n = m.len();
    let mt: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| Rational::from(m[j][i])).collect()).collect();
    solve(&mt, v)
}

/// Gauss–Jordan over `Q`; panics on a singular system.
pub fn solve(m: &[Vec<Rational>], b: &[Rational]) -> Vec<Rational> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut row = r.clone();
            row.push(x.clone());
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).expect("singular system");
        a.swap(p, c);
        let pivot = a[c][c].clone();
        for x in a[c].iter_mut() {
            *x = &*x / &pivot;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for k in 0..=n {
                    let d = &f * &a[c][k];
                    a[r][k] = &a[r][k] - d;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n].clone()).collect()
}

/// Coefficients of the polynomial of degree `< values.len()` through `(t_i, values_i)`.
pub fn interpolate(ts: &[Rational], values: &[Rational]) -> Vec<Rational> {
    let vandermonde: Vec<Vec<Rational>> = ts
        .iter()
        .map(|t| (0..ts.len()).map(|j| t.pow(j as u32)).collect())
        .collect();
    solve(&vandermonde, values)
}

fn fact(n: u32) -> Rational {
    Rational::from(factorial(n as u64))
}

/// Intersection pairing `∫ A^a C^b R^r` at parameter `ξ`, computed from exact
/// moments of deformed polytopes rather than fixed points.
///
/// `∫ e^{A + tC + sR} = ∫_{P(t,s)} e^{-<x, ξ>} dx`, where `P(t,s)` moves every
/// facet out by `t` and the facets in `fibre` by a further `s`. The part of
/// degree `e = a + b + r - dim` in `ξ` is `(-1)^e/e! · moment(P(t,s), ξ, e)`.
pub fn pairing_oracle(p: &DelzantPolytope, fibre: &[usize], xi: &[Rational], a: u32, b: u32, r: u32) -> Rational {
    let d = p.dim() as u32;
    if a + b + r < d {
        return Rational::zero();
    }
    let e = a + b + r - d;
    let step = q(1, 1000);
    let nodes: Vec<Rational> = (0..=(d + e)).map(|i| &step * Rational::from(i as i64)).collect();
    let moment_at = |t: &Rational, s: &Rational| -> Rational {
        let offsets: Vec<Rational> = p
            .facets()
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let mut o = &f.offset + t;
                if fibre.contains(&i) {
                    o += s;
                }
                o
            })
            .collect();
        p.with_offsets(&offsets).unwrap().moment(xi, e).unwrap()
    };
    // Coefficient of t^b s^r via interpolation in s, then in t.
    let s_nodes: &[Rational] = if fibre.is_empty() { &nodes[..1] } else { &nodes };
    let mut coefficient_of_sr = Vec::new();
    for t in &nodes {
        let values: Vec<Rational> = s_nodes.iter().map(|s| moment_at(t, s)).collect();
        let coeffs = interpolate(s_nodes, &values);
        coefficient_of_sr.push(coeffs.get(r as usize).cloned().unwrap_or_else(Rational::zero));
    }
    let t_coeffs = interpolate(&nodes, &coefficient_of_sr);
    let raw = t_coeffs.get(b as usize).cloned().unwrap_or_else(Rational::zero);
    let sign = if e.is_multiple_of(2) { Rational::one() } else { Rational::from(-1) };
    raw * sign * fact(a) * fact(b) * fact(r) / fact(e)
}

/// `∫ Σ coef · A^a C^b R^r` by the oracle.
pub fn integrand_oracle(
    p: &DelzantPolytope,
    fibre: &[usize],
    xi: &[Rational],
    terms: &[(GaussianRational, u32, u32, u32)],
) -> GaussianRational {
    let mut total = GaussianRational::zero();
    for (coef, a, b, r) in terms {
        total += &coef.scale(&pairing_oracle(p, fibre, xi, *a, *b, *r));
    }
    total
}

/// Moment of a polygon by a fan from its first vertex in angular order,
/// independent of the library's triangulation.
pub fn polygon_moment(vertices: &[Vec<Rational>], xi: &[Rational], m: u32) -> Rational {
    let cx: Rational = vertices.iter().map(|v| v[0].clone()).sum::<Rational>() / Rational::from(vertices.len() as i64);
    let cy: Rational = vertices.iter().map(|v| v[1].clone()).sum::<Rational>() / Rational::from(vertices.len() as i64);
    let mut sorted = vertices.to_vec();
    sorted.sort_by(|u, v| {
        let (ux, uy) = ((&u[0] - &cx).to_f64(), (&u[1] - &cy).to_f64());
        let (vx, vy) = ((&v[0] - &cx).to_f64(), (&v[1] - &cy).to_f64());
        uy.atan2(ux).partial_cmp(&vy.atan2(vx)).unwrap()
    });
    let ell = |p: &Vec<Rational>| &p[0] * &xi[0] + &p[1] * &xi[1];
    let mut total = Rational::zero();
    for i in 1..sorted.len() - 1 {
        let (p0, p1, p2) = (&sorted[0], &sorted[i], &sorted[i + 1]);
        let area2 = (&p1[0] - &p0[0]) * (&p2[1] - &p0[1]) - (&p2[0] - &p0[0]) * (&p1[1] - &p0[1]);
        // ∫_T ℓ^m = 2·area · m!/(m+2)! · Σ_{i+j+k=m} ℓ0^i ℓ1^j ℓ2^k
        let (l0, l1, l2) = (ell(p0), ell(p1), ell(p2));
        let mut h = Rational::zero();
        for i in 0..=m {
            for j in 0..=(m - i) {
                h += &(l0.pow(i) * l1.pow(j) * l2.pow(m - i - j));
            }
        }
        total += &(area2.abs() * fact(m) / fact(m + 2) * h);
    }
    total
}

/// Lattice-normalised boundary moment of a polygon, edge by edge.
pub fn polygon_boundary_moment(p: &DelzantPolytope, xi: &[Rational], m: u32) -> Rational {
    let vertices = p.vertices();
    let mut total = Rational::zero();
    for (i, f) in p.facets().iter().enumerate() {
        let ends: Vec<&Vec<Rational>> = vertices.iter().filter(|v| f.eval(v).is_zero()).collect();
        assert_eq!(ends.len(), 2, "facet {i}");
        let (u, v) = (ends[0], ends[1]);
        // Lattice length: the edge direction divided by its primitive vector.
        let dx = &v[0] - &u[0];
        let dy = &v[1] - &u[1];
        let primitive = (f.normal[1], -f.normal[0]);
        let length = if primitive.0 != 0 { (&dx / Rational::from(primitive.0)).abs() } else { (&dy / Rational::from(primitive.1)).abs() };
        let (a, b) = (&u[0] * &xi[0] + &u[1] * &xi[1], &v[0] * &xi[0] + &v[1] * &xi[1]);
        // Average of ℓ^m along the segment: Σ a^i b^{m-i} / (m+1).
        let mut avg = Rational::zero();
        for j in 0..=m {
            avg += &(a.pow(j) * b.pow(m - j));
        }
        total += &(length * avg / Rational::from(m as i64 + 1));
    }
    total
}

pub struct NamedTc {
    pub name: String,
    pub tc: ToricTestConfiguration,
}

/// The product test configurations exercised throughout the suite.
pub fn product_suite() -> Vec<NamedTc> {
    let p1 = shapes::fubini_study_line();
    let p1p1 = shapes::product_of_lines();
    let f1 = shapes::hirzebruch_f1();
    let mut out = Vec::new();
    for xi in [1, -1] {
        for c in [2, 3] {
            out.push(NamedTc { name: format!("P1 xi={xi} c={c}"), tc: product_tc(&p1, &[xi], c).unwrap() });
        }
    }
    out.push(NamedTc { name: "P1xP1 xi=(1,0) c=2".into(), tc: product_tc(&p1p1, &[1, 0], 2).unwrap() });
    out.push(NamedTc { name: "P1xP1 xi=(1,1) c=3".into(), tc: product_tc(&p1p1, &[1, 1], 3).unwrap() });
    out.push(NamedTc { name: "F1 xi=(0,1) c=1".into(), tc: product_tc(&f1, &[0, 1], 1).unwrap() });
    out.push(NamedTc { name: "F1 xi=(1,0) c=1".into(), tc: product_tc(&f1, &[1, 0], 1).unwrap() });
    for (name, p) in [("P1", &p1), ("P1xP1", &p1p1), ("F1", &f1)] {
        out.push(NamedTc { name: format!("{name} trivial"), tc: trivial_tc(p) });
    }
    out
}

pub fn segment_facets() -> Vec<Facet> {
    vec![Facet::new(vec![1], 1), Facet::new(vec![-1], 1)]
}
