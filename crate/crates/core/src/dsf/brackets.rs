//! q-, (p,q)- and symmetric brackets with exact limit branches.

use num_complex::Complex64;

use crate::error::{Error, Result};

fn check_positive(name: &str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{name} must be finite and > 0, got {x}"
        )))
    }
}

/// `[n]_q = (1 - qⁿ)/(1 - q)`, equal to `n` at `q = 1`.
pub fn bracket_q(n: u32, q: f64) -> Result<f64> {
    check_positive("q", q)?;
    Ok(bracket_q_unchecked(n as i32, q))
}

pub(crate) fn bracket_q_unchecked(n: i32, q: f64) -> f64 {
    if q == 1.0 {
        n as f64
    } else {
        (1.0 - q.powi(n)) / (1.0 - q)
    }
}

pub(crate) fn bracket_q_complex(n: i32, q: Complex64) -> Complex64 {
    if q == Complex64::new(1.0, 0.0) {
        Complex64::new(n as f64, 0.0)
    } else {
        (Complex64::new(1.0, 0.0) - q.powi(n)) / (Complex64::new(1.0, 0.0) - q)
    }
}

/// `[x]_{q,p} = (pˣ - qˣ)/(p - q)`, equal to `x·q^(x-1)` at `p = q`.
pub fn bracket_pq(x: u32, q: f64, p: f64) -> Result<f64> {
    check_positive("q", q)?;
    check_positive("p", p)?;
    let x = x as i32;
    if p == q {
        if x == 0 {
            return Ok(0.0);
        }
        return Ok(x as f64 * q.powi(x - 1));
    }
    Ok((p.powi(x) - q.powi(x)) / (p - q))
}

/// `[[x]]_q = (qˣ - q⁻ˣ)/(q - q⁻¹)` for complex `q`.
///
/// At `q = ±1` the limit `x·q^(x-1)` is returned.
pub fn bracket_sym(x: u32, q: Complex64) -> Result<Complex64> {
    if q == Complex64::new(0.0, 0.0) || !q.is_finite() {
        return Err(Error::Domain(format!(
            "symmetric bracket needs finite q ≠ 0, got {q}"
        )));
    }
    Ok(bracket_sym_unchecked(x as i32, q))
}

pub(crate) fn bracket_sym_unchecked(x: i32, q: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    if q == one || q == -one {
        if x == 0 {
            return Complex64::new(0.0, 0.0);
        }
        return q.powi(x - 1) * x as f64;
    }
    let qi = q.inv();
    (q.powi(x) - qi.powi(x)) / (q - qi)
}
