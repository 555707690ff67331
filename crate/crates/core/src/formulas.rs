//! Closed-form values and bounds for `γ`, `γ_R` on Sierpiński graphs,
//! in exact integer arithmetic.

use std::time::Duration;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{input_err, internal_err, Error, Result};
use crate::graph::families;
use crate::sierpinski::SierpinskiGraph;
use crate::solver::{gamma_r_exact_with, SolverOptions};

/// Serializes as a JSON number when it fits in `u64`, otherwise as a
/// decimal string.
fn ser_big<S: Serializer>(v: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        None => s.serialize_none(),
        Some(b) => match b.to_u64() {
            Some(x) => s.serialize_u64(x),
            None => s.serialize_str(&b.to_string()),
        },
    }
}

/// Exact value or lower/upper bounds. An exact value populates all three
/// fields.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValueOrBounds {
    #[serde(serialize_with = "ser_big")]
    pub exact: Option<BigUint>,
    #[serde(serialize_with = "ser_big")]
    pub lower: Option<BigUint>,
    #[serde(serialize_with = "ser_big")]
    pub upper: Option<BigUint>,
}

impl ValueOrBounds {
    pub fn exact(v: BigUint) -> Self {
        Self {
            exact: Some(v.clone()),
            lower: Some(v.clone()),
            upper: Some(v),
        }
    }

    pub fn bounds(lower: BigUint, upper: BigUint) -> Self {
        debug_assert!(lower <= upper);
        Self {
            exact: None,
            lower: Some(lower),
            upper: Some(upper),
        }
    }

    pub fn upper_only(upper: BigUint) -> Self {
        Self {
            exact: None,
            lower: None,
            upper: Some(upper),
        }
    }

    pub fn lower_only(lower: BigUint) -> Self {
        Self {
            exact: None,
            lower: Some(lower),
            upper: None,
        }
    }

    pub fn unknown() -> Self {
        Self {
            exact: None,
            lower: None,
            upper: None,
        }
    }

    /// Whether `v` is consistent with the value or bounds.
    pub fn admits(&self, v: u64) -> bool {
        let v = BigUint::from(v);
        self.lower.as_ref().is_none_or(|l| *l <= v) && self.upper.as_ref().is_none_or(|u| v <= *u)
    }

    pub fn exact_u64(&self) -> Option<u64> {
        self.exact.as_ref().and_then(ToPrimitive::to_u64)
    }
}

impl std::fmt::Display for ValueOrBounds {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (&self.exact, &self.lower, &self.upper) {
            (Some(e), _, _) => write!(f, "{e}"),
            (None, Some(l), Some(u)) => write!(f, "[{l}, {u}]"),
            (None, Some(l), None) => write!(f, ">= {l}"),
            (None, None, Some(u)) => write!(f, "<= {u}"),
            (None, None, None) => f.write_str("?"),
        }
    }
}

pub(crate) fn pow(n: u64, e: usize) -> BigUint {
    BigUint::from(n).pow(e as u32)
}

fn exact_div(num: BigUint, den: u64, what: &str) -> Result<BigUint> {
    let den = BigUint::from(den);
    if !(&num % &den).is_zero() {
        return Err(internal_err!("{what}: {num} is not divisible by {den}"));
    }
    Ok(num / den)
}

/// `⌈2n/3⌉`, the Roman domination number of `P_n` and `C_n`.
pub fn gamma_r_path_cycle(n: u64) -> u64 {
    (2 * n).div_ceil(3)
}

/// `γ_R(S(P_n, t))`. For `n = 2` this is `γ_R(P_{2^t}) = ⌈2^{t+1}/3⌉`.
pub fn gamma_r_sierpinski_path(n: u64, t: usize) -> Result<BigUint> {
    if n == 2 {
        if t == 0 {
            return Err(input_err!("depth must be at least 1"));
        }
        let m = pow(2, t + 1);
        return Ok((m + 2u32) / 3u32);
    }
    if n < 3 || t < 2 {
        return Err(input_err!(
            "path formula needs n >= 2 and t >= 2 (n = {n}, t = {t})"
        ));
    }
    let c2 = gamma_r_path_cycle(n);
    let c1 = n.div_ceil(3);
    let inner = if n % 3 == 2 {
        n * c2 - 2 * c1 + 1
    } else {
        n * c2 - c1
    };
    Ok(pow(n, t - 2) * inner)
}

/// `γ_R(S(C_n, t))`: exact `n^{t-1}⌊2n/3⌋` for `n ≢ 0 (mod 3)`, otherwise
/// the bounds `n^{t-1}(2n-3)/3 ≤ γ_R ≤ n^{t-1}(2n-1)/3`.
pub fn gamma_r_sierpinski_cycle(n: u64, t: usize) -> Result<ValueOrBounds> {
    if n < 4 || t < 2 {
        return Err(input_err!(
            "cycle formula needs n >= 4 and t >= 2 (n = {n}, t = {t})"
        ));
    }
    let scale = pow(n, t - 1);
    if n.is_multiple_of(3) {
        let lower = exact_div(&scale * (2 * n - 3), 3, "cycle lower bound")?;
        let upper = exact_div(&scale * (2 * n - 1), 3, "cycle upper bound")?;
        Ok(ValueOrBounds::bounds(lower, upper))
    } else {
        Ok(ValueOrBounds::exact(scale * (2 * n / 3)))
    }
}

/// `γ(S(K_n, t))`: `(n^t + n)/(n + 1)` for even `t`, `(n^t + 1)/(n + 1)` for odd `t`.
pub fn gamma_knt(n: u64, t: usize) -> Result<BigUint> {
    if n < 2 || t < 1 {
        return Err(input_err!("needs n >= 2 and t >= 1 (n = {n}, t = {t})"));
    }
    let add = if t.is_multiple_of(2) { n } else { 1 };
    exact_div(pow(n, t) + add, n + 1, "gamma(S(K_n,t))")
}

/// Upper bound on `γ_R(S(K_n, t))`: `(2n^t + n - 1)/(n + 1)` for even `t`,
/// `2(n^t + 1)/(n + 1)` for odd `t`.
pub fn gamma_r_knt_upper(n: u64, t: usize) -> Result<BigUint> {
    if n < 2 || t < 1 {
        return Err(input_err!("needs n >= 2 and t >= 1 (n = {n}, t = {t})"));
    }
    if t.is_multiple_of(2) {
        exact_div(pow(n, t) * 2u32 + (n - 1), n + 1, "gamma_R upper bound")
    } else {
        exact_div((pow(n, t) + 1u32) * 2u32, n + 1, "gamma_R upper bound")
    }
}

fn universal_form(n: u64, t: usize) -> Result<BigUint> {
    if n < 4 || t < 2 {
        return Err(input_err!("needs n >= 4 and t >= 2 (n = {n}, t = {t})"));
    }
    Ok(pow(n, t - 2) * (2 * n - 1))
}

/// `γ_R(S(G, t)) = n^{t-2}(2n - 1)` for `G` with exactly one universal vertex.
pub fn universal_vertex_value(n: u64, t: usize) -> Result<BigUint> {
    universal_form(n, t)
}

/// Lower bound `n^{t-2}(2n - 1)` for `G` with at most one vertex of degree
/// at least `n - 2`.
pub fn min_degree_lower_bound(n: u64, t: usize) -> Result<BigUint> {
    universal_form(n, t)
}

/// Where a [`KntLowerBound`] value came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LowerBoundSource {
    /// Solver-certified `γ_R(S(K_n, t))`.
    SolverExact,
    /// `γ(S(K_n, t)) ≤ γ_R(S(K_n, t))`.
    DominationFallback,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KntLowerBound {
    pub n: u64,
    pub t: usize,
    #[serde(serialize_with = "ser_big_plain")]
    pub value: BigUint,
    pub source: LowerBoundSource,
}

fn ser_big_plain<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    ser_big(&Some(v.clone()), s)
}

/// Largest `S(K_n, t)` the lower-bound helper will try to solve exactly.
pub const KNT_EXACT_LIMIT: usize = 64;

/// Lower bound on `γ_R(S(G, t))` for any `G` of order `n`: the certified
/// `γ_R(S(K_n, t))` when it is small enough to solve, else `γ(S(K_n, t))`.
pub fn knt_lower_bound_for_any_graph(n: u64, t: usize) -> Result<KntLowerBound> {
    knt_lower_bound_with(n, t, Some(Duration::from_secs(30)))
}

pub fn knt_lower_bound_with(n: u64, t: usize, timeout: Option<Duration>) -> Result<KntLowerBound> {
    if n == 1 {
        // S(K_1, t) is a single vertex.
        return Ok(KntLowerBound {
            n,
            t,
            value: BigUint::from(1u32),
            source: LowerBoundSource::SolverExact,
        });
    }
    let fallback = || -> Result<KntLowerBound> {
        Ok(KntLowerBound {
            n,
            t,
            value: gamma_knt(n, t)?,
            source: LowerBoundSource::DominationFallback,
        })
    };
    let order = usize::try_from(n)
        .ok()
        .and_then(|n| n.checked_pow(t as u32));
    match order {
        Some(order) if order <= KNT_EXACT_LIMIT => {
            let s = SierpinskiGraph::build(&families::complete(n as usize)?, t)?;
            let opts = SolverOptions::default().with_timeout(timeout);
            match gamma_r_exact_with(s.graph(), &opts) {
                Ok(c) => Ok(KntLowerBound {
                    n,
                    t,
                    value: BigUint::from(c.value),
                    source: LowerBoundSource::SolverExact,
                }),
                Err(Error::Timeout(_)) => fallback(),
                Err(e) => Err(e),
            }
        }
        _ => fallback(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn path_cycle_base_values() {
        assert_eq!(gamma_r_path_cycle(3), 2);
        assert_eq!(gamma_r_path_cycle(7), 5);
        assert_eq!(gamma_r_path_cycle(1), 1);
    }

    #[test]
    fn sierpinski_path_values() {
        assert_eq!(gamma_r_sierpinski_path(4, 2).unwrap(), b(10));
        assert_eq!(gamma_r_sierpinski_path(5, 2).unwrap(), b(17));
        assert_eq!(gamma_r_sierpinski_path(3, 3).unwrap(), b(15));
        assert_eq!(gamma_r_sierpinski_path(3, 2).unwrap(), b(5));
        assert_eq!(gamma_r_sierpinski_path(6, 2).unwrap(), b(22));
        assert_eq!(gamma_r_sierpinski_path(7, 2).unwrap(), b(32));
        // S(P_2, t) = P_{2^t}
        assert_eq!(gamma_r_sierpinski_path(2, 2).unwrap(), b(3));
        assert_eq!(gamma_r_sierpinski_path(2, 3).unwrap(), b(6));
        assert!(gamma_r_sierpinski_path(1, 2).is_err());
        assert!(gamma_r_sierpinski_path(4, 1).is_err());
    }

    #[test]
    fn sierpinski_cycle_values() {
        assert_eq!(gamma_r_sierpinski_cycle(5, 2).unwrap().exact, Some(b(15)));
        assert_eq!(gamma_r_sierpinski_cycle(4, 2).unwrap().exact, Some(b(8)));
        let c6 = gamma_r_sierpinski_cycle(6, 2).unwrap();
        assert_eq!(c6, ValueOrBounds::bounds(b(18), b(22)));
        assert!(gamma_r_sierpinski_cycle(3, 2).is_err());
    }

    #[test]
    fn complete_graph_values() {
        assert_eq!(gamma_knt(3, 2).unwrap(), b(3));
        assert_eq!(gamma_knt(3, 3).unwrap(), b(7));
        assert_eq!(gamma_knt(2, 2).unwrap(), b(2));
        assert_eq!(gamma_r_knt_upper(3, 2).unwrap(), b(5));
        assert_eq!(gamma_r_knt_upper(3, 3).unwrap(), b(14));
        assert_eq!(gamma_r_knt_upper(4, 2).unwrap(), b(7));
    }

    #[test]
    fn large_depths_do_not_overflow() {
        let g = gamma_knt(7, 40).unwrap();
        assert_eq!(g * 8u32, pow(7, 40) + 7u32);
        assert!(gamma_r_sierpinski_path(9, 30).unwrap() > b(u64::MAX));
    }

    #[test]
    fn universal_vertex_values() {
        assert_eq!(universal_vertex_value(4, 2).unwrap(), b(7));
        assert_eq!(universal_vertex_value(5, 2).unwrap(), b(9));
        assert_eq!(universal_vertex_value(4, 3).unwrap(), b(28));
        assert_eq!(min_degree_lower_bound(5, 2).unwrap(), b(9));
        assert_eq!(min_degree_lower_bound(6, 2).unwrap(), b(11));
        assert_eq!(min_degree_lower_bound(4, 2).unwrap(), b(7));
    }

    #[test]
    fn value_or_bounds_display_and_admits() {
        let e = ValueOrBounds::exact(b(5));
        assert!(e.admits(5) && !e.admits(4));
        assert_eq!(e.to_string(), "5");
        let r = ValueOrBounds::bounds(b(18), b(22));
        assert!(r.admits(18) && r.admits(22) && !r.admits(23));
        assert_eq!(r.to_string(), "[18, 22]");
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"exact":null,"lower":18,"upper":22}"#
        );
    }

    #[test]
    fn knt_lower_bound_sources() {
        let exact = knt_lower_bound_for_any_graph(3, 2).unwrap();
        assert_eq!(exact.source, LowerBoundSource::SolverExact);
        assert_eq!(exact.value, b(5));
        let k4 = knt_lower_bound_for_any_graph(4, 2).unwrap();
        assert_eq!(k4.source, LowerBoundSource::SolverExact);
        assert!(k4.value <= b(7));
        let big = knt_lower_bound_for_any_graph(3, 5).unwrap();
        assert_eq!(big.source, LowerBoundSource::DominationFallback);
        assert_eq!(big.value, b(61));
    }
}
