use std::collections::HashMap;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::gasket::{check_level, CellWord, VertexId};
use crate::restriction::extend_values;
use crate::scalar::{rat, Scalar};
use crate::surd::rational_sqrt;

use super::lambda::is_forbidden;
use super::spec::EigenSpec;

/// Midpoint values of a cell whose corners carry `v`, one level up with
/// eigenvalue `lambda_next`; indexed by the opposite corner.
pub fn eigen_extend_cell<T: Scalar>(v: &[T; 3], lambda_next: &T) -> Result<[T; 3]> {
    let l = lambda_next.as_f64();
    if is_forbidden(l) {
        return Err(Error::ForbiddenEigenvalue { value: l });
    }
    let four = T::from_int(4) - lambda_next.clone();
    let den = (T::from_int(2) - lambda_next.clone()) * (T::from_int(5) - lambda_next.clone());
    Ok([0usize, 1, 2].map(|k| {
        let (i, j) = ((k + 1) % 3, (k + 2) % 3);
        (four.clone() * (v[i].clone() + v[j].clone()) + T::from_int(2) * v[k].clone()) / den.clone()
    }))
}

/// Values on V_m of the eigenfunction described by `spec`.
pub fn eigen_values(spec: &EigenSpec, m: usize) -> Result<HashMap<VertexId, f64>> {
    check_level(m)?;
    require_level(spec, m)?;
    let lambdas = spec.lambdas(m)?;
    let lam: Vec<f64> = (spec.birth_level()..=m).map(|k| lambdas.at(k)).collect::<Result<_>>()?;
    let m0 = spec.birth_level();
    extend_values(&spec.initial_values_f64(), m0, m, |level, v| {
        eigen_extend_cell(v, &lam[level + 1 - m0])
    })
}

/// Exact graph eigenvalues λ_{m₀}, …, λ_up_to when every one of them is rational.
pub fn exact_lambdas(spec: &EigenSpec, up_to: usize) -> Option<Vec<BigRational>> {
    let mut out = vec![spec.birth_eigenvalue().clone()];
    for k in spec.birth_level() + 1..=up_to {
        let prev = out.last().unwrap();
        let s = rational_sqrt(&(rat(25, 1) - rat(4, 1) * prev))?;
        let next = if spec.epsilon(k) > 0 {
            (rat(5, 1) + s) / rat(2, 1)
        } else {
            (rat(5, 1) - s) / rat(2, 1)
        };
        out.push(next);
    }
    Some(out)
}

/// Exact values on V_m, or `None` when some λ up to level m is irrational.
pub fn eigen_values_exact(spec: &EigenSpec, m: usize) -> Result<Option<HashMap<VertexId, BigRational>>> {
    check_level(m)?;
    require_level(spec, m)?;
    let Some(lam) = exact_lambdas(spec, m) else {
        return Ok(None);
    };
    let m0 = spec.birth_level();
    let base: HashMap<VertexId, BigRational> =
        spec.initial_values().iter().map(|(k, v)| (*k, v.clone())).collect();
    extend_values(&base, m0, m, |level, v| eigen_extend_cell(v, &lam[level + 1 - m0])).map(Some)
}

fn require_level(spec: &EigenSpec, m: usize) -> Result<()> {
    if m < spec.birth_level() {
        return Err(Error::NotApplicable(format!(
            "level {m} is below the level of birth {}",
            spec.birth_level()
        )));
    }
    Ok(())
}

fn descend_cell<T: Scalar>(
    spec: &EigenSpec,
    w: &CellWord,
    lambda_at: impl Fn(usize) -> Result<T>,
    initial: impl Fn(&VertexId) -> T,
) -> Result<[T; 3]> {
    let m0 = spec.birth_level();
    require_level(spec, w.level())?;
    let start = crate::gasket::cell_vertices(&w.prefix(m0))?;
    let mut vals = start.map(|v| initial(&v));
    for (i, &j) in w.letters()[m0..].iter().enumerate() {
        let mids = eigen_extend_cell(&vals, &lambda_at(m0 + i + 1)?)?;
        let j = j as usize;
        vals = [0usize, 1, 2].map(|c| if c == j { vals[c].clone() } else { mids[3 - c - j].clone() });
    }
    Ok(vals)
}

/// u at F_w q₀, F_w q₁, F_w q₂ for a cell at level ≥ m₀.
pub fn cell_values(spec: &EigenSpec, w: &CellWord) -> Result<[f64; 3]> {
    let lambdas = spec.lambdas(w.level())?;
    let init = spec.initial_values_f64();
    descend_cell(spec, w, |k| lambdas.at(k), |v| init[v])
}

/// Exact corner values, or `None` when λ is irrational somewhere up to the cell level.
pub fn cell_values_exact(spec: &EigenSpec, w: &CellWord) -> Result<Option<[BigRational; 3]>> {
    let Some(lam) = exact_lambdas(spec, w.level()) else {
        return Ok(None);
    };
    let m0 = spec.birth_level();
    descend_cell(
        spec,
        w,
        |k| Ok(lam[k - m0].clone()),
        |v| spec.initial_values()[v].clone(),
    )
    .map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gasket::build_graph;
    use crate::spectral::FamilyId;

    #[test]
    fn constants_at_zero() {
        let v = [1.5f64, 1.5, 1.5];
        assert_eq!(eigen_extend_cell(&v, &0.0).unwrap(), v);
    }

    #[test]
    fn lambda_three_rule() {
        let v = [rat(1, 1), rat(-2, 1), rat(5, 3)];
        let out = eigen_extend_cell(&v, &rat(3, 1)).unwrap();
        for k in 0..3 {
            let (i, j) = ((k + 1) % 3, (k + 2) % 3);
            let expect = -(v[i].clone() + v[j].clone() + rat(2, 1) * v[k].clone()) / rat(2, 1);
            assert_eq!(out[k], expect);
        }
        assert!(matches!(
            eigen_extend_cell(&[0.0f64, 1.0, 2.0], &2.0),
            Err(Error::ForbiddenEigenvalue { .. })
        ));
        assert!(eigen_extend_cell(&[0.0f64, 1.0, 2.0], &5.0).is_err());
    }

    #[test]
    fn two_series_extends_to_level_two() {
        let spec = FamilyId::TwoSeries.base_spec();
        let vals = eigen_values(&spec, 2).unwrap();
        let lam = (5.0 - 17f64.sqrt()) / 2.0;
        let g = build_graph(2).unwrap();
        for x in g.interior() {
            let r = g.laplacian_at(&vals, x).unwrap() + lam * vals[x];
            assert!(r.abs() <= 1e-9);
        }
    }

    #[test]
    fn six_series_level_three_is_exact() {
        let spec = FamilyId::SixSeries.base_spec();
        let exact = eigen_values_exact(&spec, 3).unwrap().unwrap();
        let g = build_graph(3).unwrap();
        for x in g.interior() {
            let r = g.laplacian_at(&exact, x).unwrap() + rat(3, 1) * exact[x].clone();
            assert_eq!(r, rat(0, 1));
        }
        assert!(eigen_values_exact(&spec, 4).unwrap().is_none());
        let w: CellWord = "010".parse().unwrap();
        let c = cell_values_exact(&spec, &w).unwrap().unwrap();
        let f = cell_values(&spec, &w).unwrap();
        for k in 0..3 {
            assert_eq!(c[k].as_f64(), f[k]);
            let v = VertexId::from_address(&w, k as u8).unwrap();
            assert_eq!(exact[&v], c[k]);
        }
    }
}
