//! Minimal Nelder-Mead simplex minimizer in two variables. Deterministic:
//! no randomness, stable tie handling.

use crate::scalar::Scalar;

pub(crate) struct NmResult<T> {
    pub x: [T; 2],
    pub value: T,
    pub iterations: usize,
    pub converged: bool,
}

fn add<T: Scalar>(a: [T; 2], b: [T; 2], w: T) -> [T; 2] {
    [a[0] + w * b[0], a[1] + w * b[1]]
}

fn diff<T: Scalar>(a: [T; 2], b: [T; 2]) -> [T; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

fn dist<T: Scalar>(a: [T; 2], b: [T; 2]) -> T {
    let d = diff(a, b);
    (d[0] * d[0] + d[1] * d[1]).sqrt()
}

/// Standard coefficients: reflection 1, expansion 2, contraction 1/2,
/// shrink 1/2. Stops when every vertex sits within `tol` of the best one or
/// after `max_iter` iterations.
pub(crate) fn nelder_mead_2d<T: Scalar>(
    f: &mut impl FnMut([T; 2]) -> T,
    start: [T; 2],
    steps: [T; 2],
    tol: T,
    max_iter: usize,
) -> NmResult<T> {
    let half = T::one() / (T::one() + T::one());
    let two = T::one() + T::one();

    let mut simplex = [
        (start, f(start)),
        ([start[0] + steps[0], start[1]], T::zero()),
        ([start[0], start[1] + steps[1]], T::zero()),
    ];
    simplex[1].1 = f(simplex[1].0);
    simplex[2].1 = f(simplex[2].0);

    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iter {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("objective values are ordered"));
        let diameter = dist(simplex[0].0, simplex[1].0)
            .max(dist(simplex[0].0, simplex[2].0))
            .max(dist(simplex[1].0, simplex[2].0));
        if diameter < tol {
            converged = true;
            break;
        }
        iterations += 1;

        let (best, second, worst) = (simplex[0], simplex[1], simplex[2]);
        let centroid =
            [(best.0[0] + second.0[0]) * half, (best.0[1] + second.0[1]) * half];

        let reflected = add(centroid, diff(centroid, worst.0), T::one());
        let fr = f(reflected);
        if fr < best.1 {
            let expanded = add(centroid, diff(reflected, centroid), two);
            let fe = f(expanded);
            simplex[2] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
            continue;
        }
        if fr < second.1 {
            simplex[2] = (reflected, fr);
            continue;
        }
        let contracted = if fr < worst.1 {
            add(centroid, diff(reflected, centroid), half)
        } else {
            add(centroid, diff(worst.0, centroid), half)
        };
        let fc = f(contracted);
        if fc < worst.1.min(fr) {
            simplex[2] = (contracted, fc);
            continue;
        }
        for k in 1..3 {
            let shrunk = add(best.0, diff(simplex[k].0, best.0), half);
            simplex[k] = (shrunk, f(shrunk));
        }
    }

    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("objective values are ordered"));
    NmResult { x: simplex[0].0, value: simplex[0].1, iterations, converged }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_quadratic_minimum() {
        let mut f = |x: [f64; 2]| (x[0] - 1.5).powi(2) + 2.0 * (x[1] + 0.25).powi(2);
        let r = nelder_mead_2d(&mut f, [0.0, 0.0], [0.1, 0.1], 1e-10, 500);
        assert!(r.converged);
        assert!((r.x[0] - 1.5).abs() <= 1e-8, "{:?}", r.x);
        assert!((r.x[1] + 0.25).abs() <= 1e-8, "{:?}", r.x);
        assert!(r.value <= 1e-15);
    }

    #[test]
    fn never_returns_worse_than_start() {
        let mut f = |x: [f64; 2]| x[0].sin() * x[1].cos() + 0.1 * (x[0] * x[0] + x[1] * x[1]);
        for s in 0..20 {
            let start = [s as f64 * 0.37 - 3.0, s as f64 * 0.61 - 5.0];
            let f0 = f(start);
            let r = nelder_mead_2d(&mut f, start, [0.05, 0.05], 1e-8, 500);
            assert!(r.value <= f0, "start {start:?}: {} > {f0}", r.value);
        }
    }

    #[test]
    fn respects_iteration_cap() {
        // A sloped plane never converges; the cap must stop it.
        let mut f = |x: [f64; 2]| -x[0] - x[1];
        let r = nelder_mead_2d(&mut f, [0.0, 0.0], [0.1, 0.1], 1e-12, 37);
        assert!(!r.converged);
        assert_eq!(r.iterations, 37);
    }

    #[test]
    fn is_deterministic() {
        let mut f = |x: [f64; 2]| (x[0].powi(2) - x[1]).powi(2) + (1.0 - x[0]).powi(2);
        let a = nelder_mead_2d(&mut f, [-1.2, 1.0], [0.1, 0.1], 1e-9, 500);
        let b = nelder_mead_2d(&mut f, [-1.2, 1.0], [0.1, 0.1], 1e-9, 500);
        assert_eq!(a.x, b.x);
        assert_eq!(a.value, b.value);
        assert_eq!(a.iterations, b.iterations);
    }
}
