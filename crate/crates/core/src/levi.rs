//! Levi subalgebras by successive correction along the derived series of the
//! radical.

use crate::lie::{LieAlgebra, LieError};
use crate::linalg::{add_scaled, rat, zero_vec, AdaptedBasis, Matrix, Rational, Subspace};

/// A semisimple subalgebra `S` with `L = S ⊕ rad(L)` as vector spaces.
pub fn levi_subalgebra(l: &LieAlgebra) -> Subspace {
    let n = l.dim();
    let radical = l.radical();
    if radical.is_zero() {
        return Subspace::full(n);
    }
    if radical.is_full() {
        return Subspace::zero(n);
    }
    let top = AdaptedBasis::new(&radical, &Subspace::full(n)).expect("radical sits in L");
    let m = top.quotient_dim();
    let mut s: Vec<Vec<Rational>> = (0..m).map(|a| top.complement_vector(a).to_vec()).collect();

    // structure constants of L/R in the basis s + R
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b))).collect();
    let quotient_bracket: Vec<Vec<Rational>> = pairs
        .iter()
        .map(|&(a, b)| {
            top.quotient_coordinates(&l.br(&s[a], &s[b]))
                .expect("coordinates in an adapted basis of L")
        })
        .collect();

    let series = l.derived_series(&radical).expect("radical is an ideal");
    for k in 0..series.len() - 1 {
        let stage = AdaptedBasis::new(&series[k + 1], &series[k]).expect("derived series is nested");
        let q = stage.quotient_dim();
        let w: Vec<&[Rational]> = (0..q).map(|p| stage.complement_vector(p)).collect();
        let coords = |v: &[Rational]| {
            stage
                .quotient_coordinates(v)
                .expect("defect lies in the current stage")
        };

        // column (a, p): effect of φ_a = w_p on every pair equation
        let unknowns = m * q;
        let mut system = Matrix::zeros(pairs.len() * q, unknowns);
        for a in 0..m {
            for (p, wp) in w.iter().enumerate() {
                let col = a * q + p;
                for (e, &(x, y)) in pairs.iter().enumerate() {
                    let mut v = zero_vec(n);
                    if x == a {
                        add_scaled(&mut v, &rat(-1), &l.br(&s[y], wp));
                    }
                    if y == a {
                        add_scaled(&mut v, &rat(1), &l.br(&s[x], wp));
                    }
                    let c = &quotient_bracket[e][a];
                    add_scaled(&mut v, &-c.clone(), wp);
                    for (i, x) in coords(&v).into_iter().enumerate() {
                        system[(e * q + i, col)] = x;
                    }
                }
            }
        }
        let mut rhs = Vec::with_capacity(pairs.len() * q);
        for (e, &(a, b)) in pairs.iter().enumerate() {
            let mut defect = l.br(&s[a], &s[b]);
            for (c, coeff) in quotient_bracket[e].iter().enumerate() {
                add_scaled(&mut defect, &-coeff.clone(), &s[c]);
            }
            rhs.extend(coords(&defect).into_iter().map(|x| -x));
        }
        let phi = system
            .solve(&rhs)
            .expect("Levi correction system must be solvable in characteristic zero");
        for (a, sa) in s.iter_mut().enumerate() {
            for (p, wp) in w.iter().enumerate() {
                add_scaled(sa, &phi[a * q + p], wp);
            }
        }
    }
    let levi = Subspace::span(n, s);
    debug_assert!(l.is_subalgebra(&levi).unwrap_or(false));
    levi
}

/// Whether `L = S_part ⊕ rest` is a direct sum of ideals, i.e. the two parts
/// commute.
pub fn is_direct_summand(
    l: &LieAlgebra,
    s_part: &Subspace,
    rest: &Subspace,
) -> Result<bool, LieError> {
    if s_part.ambient_dim() != l.dim()
        || !s_part.intersect(rest)?.is_zero()
        || !s_part.sum(rest)?.is_full()
    {
        return Err(LieError::NotComplementary);
    }
    Ok(l.bracket_span(s_part, rest)?.is_zero())
}
