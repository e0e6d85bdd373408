//! Hilbert projective metric and its weighted product over (node, layer) pairs.

use crate::error::{Error, Result};

use super::maps::NodeLayerScores;

/// `ln(max_i x_i/u_i * max_j u_j/x_j)` over the common support of `x` and `u`.
pub fn hilbert_distance(x: &[f64], u: &[f64]) -> Result<f64> {
    if x.len() != u.len() {
        return Err(Error::Dimension {
            expected: x.len(),
            got: u.len(),
        });
    }
    let mut hi = f64::NEG_INFINITY;
    let mut lo = f64::INFINITY;
    for (i, (&a, &b)) in x.iter().zip(u).enumerate() {
        if !(a.is_finite() && b.is_finite()) || a < 0.0 || b < 0.0 {
            return Err(Error::validation(
                "Hilbert metric needs finite non-negative vectors",
            ));
        }
        match (a > 0.0, b > 0.0) {
            (true, true) => {
                let r = a.ln() - b.ln();
                hi = hi.max(r);
                lo = lo.min(r);
            }
            (false, false) => {}
            _ => {
                return Err(Error::SupportMismatch(format!(
                    "entry {} is zero in one vector only",
                    i + 1
                )))
            }
        }
    }
    if hi == f64::NEG_INFINITY {
        return Err(Error::validation(
            "Hilbert metric needs a non-empty support",
        ));
    }
    Ok((hi - lo).max(0.0))
}

/// `b[0] d(x, u) + b[1] d(t, v)`.
pub fn product_metric(p: &NodeLayerScores, q: &NodeLayerScores, b: [f64; 2]) -> Result<f64> {
    Ok(b[0] * hilbert_distance(&p.x, &q.x)? + b[1] * hilbert_distance(&p.t, &q.t)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_values() {
        assert_eq!(hilbert_distance(&[0.3, 0.7], &[0.3, 0.7]).unwrap(), 0.0);
        assert!(hilbert_distance(&[0.3, 0.7], &[0.9, 2.1]).unwrap() < 1e-15);
        assert!((hilbert_distance(&[1.0, 2.0], &[2.0, 1.0]).unwrap() - 4f64.ln()).abs() < 1e-15);
        assert_eq!(hilbert_distance(&[1.0, 0.0], &[3.0, 0.0]).unwrap(), 0.0);
    }

    #[test]
    fn support_mismatch() {
        assert!(matches!(
            hilbert_distance(&[1.0, 0.0], &[1.0, 1.0]),
            Err(Error::SupportMismatch(_))
        ));
        assert!(hilbert_distance(&[0.0, 0.0], &[0.0, 0.0]).is_err());
        assert!(hilbert_distance(&[1.0], &[1.0, 1.0]).is_err());
    }

    #[test]
    fn product_metric_cases() {
        let p = NodeLayerScores::new(vec![1.0, 2.0], vec![0.5, 0.5]);
        let q = NodeLayerScores::new(vec![2.0, 1.0], vec![0.25, 0.75]);
        assert_eq!(product_metric(&p, &p, [1.3, 1.0]).unwrap(), 0.0);
        let sum = hilbert_distance(&p.x, &q.x).unwrap() + hilbert_distance(&p.t, &q.t).unwrap();
        assert!((product_metric(&p, &q, [1.0, 1.0]).unwrap() - sum).abs() < 1e-15);
    }

    fn positive_vec(len: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(1e-3f64..10.0, len)
    }

    proptest! {
        #[test]
        fn symmetric_projective_non_negative(
            (x, u) in (1usize..8).prop_flat_map(|n| (positive_vec(n), positive_vec(n))),
            c in 1e-3f64..1e3,
        ) {
            let d = hilbert_distance(&x, &u).unwrap();
            prop_assert!(d >= 0.0);
            prop_assert!((d - hilbert_distance(&u, &x).unwrap()).abs() <= 1e-12 * d.max(1.0));
            let scaled: Vec<f64> = x.iter().map(|v| v * c).collect();
            prop_assert!((d - hilbert_distance(&scaled, &u).unwrap()).abs() <= 1e-9 * d.max(1.0));
        }
    }
}
