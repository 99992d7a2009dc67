//! Problem generators: graph colorings, subset sum and a finite-difference
//! discretization of a cubic boundary value problem.

use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::{is_prime, FieldSpec};
use crate::chordal::Graph;
use crate::groebner::GeneratorSet;
use crate::poly::{Monomial, MonomialOrder, Polynomial, Ring};
use crate::system::SystemFile;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("need at least {min} colors, got {q}")]
    TooFewColors { q: u32, min: u32 },
    #[error("need at least 2 unknowns, got {0}")]
    TooFewUnknowns(usize),
}

/// Whether `GF(p)` holds all `q`-th roots of unity, i.e. `p ≡ 1 (mod q)`.
pub fn coloring_field_is_faithful(q: u32, field: FieldSpec) -> bool {
    match field.modulus() {
        Some(p) => p % q as u64 == 1,
        None => q <= 2,
    }
}

/// `x_i^q - 1` for each vertex and `Σ_k x_i^(q-1-k) x_j^k` for each edge.
pub fn gen_colorings(graph: &Graph, q: u32, field: FieldSpec) -> Result<SystemFile, GenError> {
    if q < 2 {
        return Err(GenError::TooFewColors { q, min: 2 });
    }
    let n = graph.n();
    let ring = Ring::indexed("x", n, field);
    let lex = MonomialOrder::Lex;
    let mono = |a: (usize, u32), b: (usize, u32)| {
        let mut e = vec![0u32; n];
        e[a.0] += a.1;
        e[b.0] += b.1;
        Polynomial::monomial(&ring, lex, Monomial::from_exponents(&e), field.one())
    };
    let mut gens = GeneratorSet::empty(&ring, lex);
    for i in 0..n {
        gens.push(mono((i, q), (i, 0)) - Polynomial::one(&ring, lex));
    }
    for (i, j) in graph.edges() {
        let edge = (0..q)
            .map(|k| mono((i, q - 1 - k), (j, k)))
            .fold(Polynomial::zero(&ring, lex), |acc, t| acc + t);
        gens.push(edge);
    }
    Ok(SystemFile::new(gens))
}

/// Partial sums `s_0 = 0`, `(s_i - s_{i-1})(s_i - s_{i-1} - a_i) = 0`,
/// `s_n = S` over the rationals.
pub fn gen_subset_sum(values: &[i64], target: i64) -> SystemFile {
    gen_subset_sum_over(values, target, FieldSpec::Rationals)
}

pub fn gen_subset_sum_over(values: &[i64], target: i64, field: FieldSpec) -> SystemFile {
    let n = values.len();
    let ring = Ring::indexed("s", n + 1, field);
    let lex = MonomialOrder::Lex;
    let s = |i: usize| Polynomial::var(&ring, lex, i);
    let c = |v: i64| Polynomial::constant(&ring, lex, field.from_i64(v));
    let mut gens = GeneratorSet::empty(&ring, lex);
    gens.push(s(0));
    for (i, &a) in values.iter().enumerate() {
        let step = s(i + 1) - s(i);
        gens.push(&step * &(&step - &c(a)));
    }
    gens.push(s(n) - c(target));
    SystemFile::new(gens)
}

/// A prime large enough that reducing a subset-sum instance modulo it
/// neither creates nor merges solutions.
pub fn subset_sum_prime(values: &[i64], target: i64) -> u64 {
    let bound: u64 = values.iter().map(|v| v.unsigned_abs()).sum::<u64>() + target.unsigned_abs();
    (bound + 1..).find(|&p| is_prime(p)).expect("primes are unbounded")
}

/// Indices chosen by a point `(s_0, …, s_n)` of the subset-sum variety.
pub fn decode_subset(point: &[crate::arith::FieldElement]) -> Vec<usize> {
    point
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] != w[1])
        .map(|(i, _)| i)
        .collect()
}

/// `2x_i - x_{i-1} - x_{i+1} + h²/2 (x_i + t_i)³` with `h = 1/(n+1)`,
/// `t_i = i h` and zero boundary values, in unknowns `x1..xn`.
pub fn gen_diffeq(n: usize) -> Result<SystemFile, GenError> {
    if n < 2 {
        return Err(GenError::TooFewUnknowns(n));
    }
    let field = FieldSpec::Rationals;
    let ring = crate::poly::Ring::new((1..=n).map(|i| format!("x{i}")), field)
        .expect("generated names are valid");
    let lex = MonomialOrder::Lex;
    let m = BigInt::from(n as u64 + 1);
    let ratio = |a: i64, b: &BigInt| {
        Polynomial::constant(&ring, lex, field.from_ratio(&BigInt::from(a), b).expect("nonzero"))
    };
    let half_h2 = ratio(1, &(&m * &m * 2));
    let x = |i: usize| Polynomial::var(&ring, lex, i);
    let mut gens = GeneratorSet::empty(&ring, lex);
    for i in 0..n {
        let mut f = ratio(2, &BigInt::from(1)) * x(i);
        if i > 0 {
            f = f - x(i - 1);
        }
        if i + 1 < n {
            f = f - x(i + 1);
        }
        let shifted = x(i) + ratio(i as i64 + 1, &m);
        f = f + &half_h2 * &shifted.pow(3);
        gens.push(f);
    }
    Ok(SystemFile::new(gens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chordal::graph_of_system;
    use crate::poly::is_simplicial;
    use proptest::prelude::*;

    #[test]
    fn edge_two_coloring() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let s = gen_colorings(&g, 2, FieldSpec::Rationals).unwrap();
        assert_eq!(s.generators.to_strings(), vec!["x0^2 - 1", "x1^2 - 1", "x0 + x1"]);
        assert!(matches!(gen_colorings(&g, 1, FieldSpec::Rationals), Err(GenError::TooFewColors { .. })));
    }

    #[test]
    fn triangle_three_coloring() {
        let g = Graph::complete(3);
        let s = gen_colorings(&g, 3, FieldSpec::Prime(7)).unwrap();
        assert_eq!(s.generators.len(), 6);
        assert_eq!(s.generators.to_strings()[3], "x0^2 + x0*x1 + x1^2");
        assert!(coloring_field_is_faithful(3, FieldSpec::Prime(7)));
        assert!(!coloring_field_is_faithful(3, FieldSpec::Prime(5)));
    }

    #[test]
    fn subset_sum_shape() {
        let s = gen_subset_sum(&[1, 2], 3);
        assert_eq!(s.generators.to_strings(), vec!["s0", "s0^2 - 2*s0*s1 + s0 + s1^2 - s1", "s1^2 - 2*s1*s2 + 2*s1 + s2^2 - 2*s2", "s2 - 3"]);
        assert_eq!(s.graph().edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(subset_sum_prime(&[1, 2], 3), 7);
    }

    #[test]
    fn decode() {
        let f = FieldSpec::Rationals;
        let pt: Vec<_> = [0, 0, 2, 5].iter().map(|&v| f.from_i64(v)).collect();
        assert_eq!(decode_subset(&pt), vec![1, 2]);
    }

    #[test]
    fn diffeq_shape() {
        let s = gen_diffeq(3).unwrap();
        assert_eq!(s.generators.len(), 3);
        assert_eq!(s.ring().names(), ["x1", "x2", "x3"]);
        assert_eq!(s.generators.to_strings()[0], "1/32*x1^3 + 3/128*x1^2 + 1027/512*x1 - x2 + 1/2048");
        assert!(s.generators.polys().iter().all(|f| is_simplicial(f).unwrap()));
        assert_eq!(s.graph().edges(), vec![(0, 1), (0, 2), (1, 2)]);
        let five = gen_diffeq(5).unwrap().graph();
        assert_eq!(five.edges(), vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4)]);
        let two = gen_diffeq(2).unwrap();
        assert_eq!(two.generators.len(), 2);
        assert_eq!(gen_diffeq(1), Err(GenError::TooFewUnknowns(1)));
    }

    proptest! {
        #[test]
        fn coloring_graph_round_trips(n in 2usize..9, bits in proptest::collection::vec(any::<bool>(), 36), q in 2u32..4) {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] { edges.push((u, v)); }
                    k += 1;
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            let s = gen_colorings(&g, q, FieldSpec::Prime(7)).unwrap();
            prop_assert_eq!(graph_of_system(&s.generators), g);
        }

        #[test]
        fn subset_sum_graph_is_path(values in proptest::collection::vec(1i64..20, 1..10), t in 0i64..50) {
            let s = gen_subset_sum(&values, t);
            let n = values.len() + 1;
            let path: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
            prop_assert_eq!(s.graph().edges(), path);
        }
    }
}
