use num_complex::Complex64;

use super::LabError;
use crate::proj::Space;

/// Chordal Fubini–Study distance `‖a ∧ b‖ / (‖a‖‖b‖)` in `[0, 1]`.
///
/// The wedge form keeps full relative precision for nearby points, where
/// `sqrt(1 − |⟨a,b⟩|²/…)` would lose half the digits.
pub fn fs_distance(a: &[Complex64], b: &[Complex64]) -> Result<f64, LabError> {
    let na: f64 = a.iter().map(|x| x.norm_sqr()).sum();
    let nb: f64 = b.iter().map(|x| x.norm_sqr()).sum();
    if na == 0.0 || nb == 0.0 || !na.is_finite() || !nb.is_finite() || a.len() != b.len() {
        return Err(LabError::InvalidPoint);
    }
    let mut w = 0.0;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            w += (a[i] * b[j] - a[j] * b[i]).norm_sqr();
        }
    }
    Ok((w / (na * nb)).sqrt().min(1.0))
}

/// Distance on P² or P¹×P¹ (maximum over the factors).
pub fn fs_distance_in(space: Space, a: &[Complex64], b: &[Complex64]) -> Result<f64, LabError> {
    let mut d = 0.0f64;
    for r in space.factors() {
        d = d.max(fs_distance(&a[r.clone()], &b[r])?);
    }
    Ok(d)
}

/// Scales each factor to a unit vector.
pub fn normalize_in(space: Space, p: &[Complex64]) -> Option<Vec<Complex64>> {
    let mut out = p.to_vec();
    for r in space.factors() {
        let n: f64 = out[r.clone()].iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if n == 0.0 || !n.is_finite() {
            return None;
        }
        for x in &mut out[r] {
            *x /= n;
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    }

    #[test]
    fn basic_distances() {
        assert_eq!(fs_distance(&c(&[1.0, 2.0, 3.0]), &c(&[2.0, 4.0, 6.0])).unwrap(), 0.0);
        assert_eq!(fs_distance(&c(&[1.0, 0.0, 0.0]), &c(&[0.0, 1.0, 0.0])).unwrap(), 1.0);
        let d = fs_distance(&c(&[1.0, 1.0, 0.0]), &c(&[1.0, 0.0, 0.0])).unwrap();
        assert!((d - 0.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(fs_distance(&c(&[0.0, 0.0]), &c(&[1.0, 0.0])), Err(LabError::InvalidPoint));
    }

    #[test]
    fn phase_invariance() {
        let a = c(&[1.0, 2.0]);
        let b: Vec<Complex64> = a.iter().map(|x| x * Complex64::new(0.0, 3.0)).collect();
        assert!(fs_distance(&a, &b).unwrap() < 1e-8);
    }

    #[test]
    fn product_distance_is_max() {
        let a = c(&[1.0, 0.0, 1.0, 0.0]);
        let b = c(&[1.0, 0.0, 0.0, 1.0]);
        assert_eq!(fs_distance_in(Space::P1xP1, &a, &b).unwrap(), 1.0);
    }
}
