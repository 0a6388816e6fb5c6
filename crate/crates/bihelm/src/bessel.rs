//! First-kind Bessel functions J_n and I_n for integer order, to double
//! precision on the envelope the plate problem needs: 0 ≤ n ≤ 10,
//! 0 ≤ x ≤ 50. Values come from the ascending power series where it is
//! well-conditioned and from backward (Miller) recurrence above that;
//! derivatives use the exact three-term identities, never differences.

use crate::error::PlateError;

pub const MAX_ORDER: u32 = 10;
pub const MAX_ARGUMENT: f64 = 50.0;

/// The ascending J series alternates, so beyond this its largest term
/// grows like e^x/√x and cancellation eats the significand; Miller
/// recurrence takes over. The I series is monotone and safe everywhere.
const SERIES_SPLIT: f64 = 8.0;

/// One evaluated function: value and first derivative at (n, x).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselEval {
    pub n: u32,
    pub x: f64,
    pub value: f64,
    pub derivative: f64,
}

impl BesselEval {
    pub fn j(n: u32, x: f64) -> Result<BesselEval, PlateError> {
        Ok(BesselEval {
            n,
            x,
            value: bessel_j(n, x)?,
            derivative: bessel_j_prime(n, x)?,
        })
    }

    pub fn i(n: u32, x: f64) -> Result<BesselEval, PlateError> {
        Ok(BesselEval {
            n,
            x,
            value: bessel_i(n, x)?,
            derivative: bessel_i_prime(n, x)?,
        })
    }
}

fn check_envelope(n: u32, x: f64) -> Result<(), PlateError> {
    if n > MAX_ORDER {
        return Err(PlateError::OrderOutOfRange(n as i64));
    }
    if !(0.0..=MAX_ARGUMENT).contains(&x) {
        return Err(PlateError::ArgumentOutOfRange(x));
    }
    Ok(())
}

pub fn bessel_j(n: u32, x: f64) -> Result<f64, PlateError> {
    check_envelope(n, x)?;
    Ok(eval_j(n as i64, x))
}

pub fn bessel_i(n: u32, x: f64) -> Result<f64, PlateError> {
    check_envelope(n, x)?;
    Ok(eval_i(n as i64, x))
}

/// J_n′ = (J_{n−1} − J_{n+1})/2; at n = 0 this is exactly −J_1.
pub fn bessel_j_prime(n: u32, x: f64) -> Result<f64, PlateError> {
    check_envelope(n, x)?;
    let n = n as i64;
    Ok(0.5 * (eval_j(n - 1, x) - eval_j(n + 1, x)))
}

/// I_n′ = (I_{n−1} + I_{n+1})/2; at n = 0 this is exactly I_1.
pub fn bessel_i_prime(n: u32, x: f64) -> Result<f64, PlateError> {
    check_envelope(n, x)?;
    let n = n as i64;
    Ok(0.5 * (eval_i(n - 1, x) + eval_i(n + 1, x)))
}

/// Internal evaluation without the envelope check; negative orders fold
/// back through J_{−m} = (−1)^m J_m. Orders slightly past MAX_ORDER occur
/// in the derivative identities and in the plate's radial recurrences.
pub(crate) fn eval_j(n: i64, x: f64) -> f64 {
    if n < 0 {
        let v = eval_j(-n, x);
        return if n % 2 == 0 { v } else { -v };
    }
    if x <= SERIES_SPLIT {
        series(n as u64, x, true)
    } else {
        miller_j(n as u64, x)
    }
}

/// I_{−m} = I_m.
pub(crate) fn eval_i(n: i64, x: f64) -> f64 {
    series(n.unsigned_abs(), x, false)
}

/// Ascending series Σ_k s^k (x/2)^{n+2k} / (k! (n+k)!) with s = ∓1,
/// compensated (Neumaier) summation.
fn series(n: u64, x: f64, alternating: bool) -> f64 {
    let half = 0.5 * x;
    let mut term = 1.0;
    for k in 1..=n {
        term *= half / k as f64;
    }
    if term == 0.0 {
        // x = 0 and n ≥ 1
        return 0.0;
    }
    let ratio = if alternating {
        -half * half
    } else {
        half * half
    };
    let mut sum = term;
    let mut comp = 0.0;
    for k in 1..200 {
        term *= ratio / (k as f64 * (n + k as u64) as f64);
        let t = sum + term;
        // Neumaier correction keeps the low-order bits of the larger addend
        comp += if sum.abs() >= term.abs() {
            (sum - t) + term
        } else {
            (term - t) + sum
        };
        sum = t;
        if term.abs() <= f64::EPSILON * 1e-2 * sum.abs().max(f64::MIN_POSITIVE) {
            break;
        }
    }
    sum + comp
}

/// Backward recurrence f_{k−1} = (2k/x) f_k − f_{k+1} from a start order
/// high enough that the true J is negligible, normalized through
/// J_0 + 2 Σ_{k≥1} J_{2k} = 1.
fn miller_j(n: u64, x: f64) -> f64 {
    let start = (x + 2.0 * x.sqrt() + 30.0).ceil() as u64;
    let start = start.max(n + 20);
    // even start so the normalization sum sees a full set of even orders
    let start = start + (start % 2);
    let mut above = 0.0_f64; // f_{k+1}
    let mut here = 1e-30_f64; // f_k
    let mut wanted = if n == start { here } else { 0.0 };
    let mut norm = 0.0_f64;
    let mut k = start;
    while k > 0 {
        if k % 2 == 0 {
            norm += 2.0 * here;
        }
        let below = (2.0 * k as f64 / x) * here - above;
        above = here;
        here = below;
        k -= 1;
        if k == n {
            wanted = here;
        }
        if here.abs() > 1e250 {
            above *= 1e-250;
            here *= 1e-250;
            norm *= 1e-250;
            wanted *= 1e-250;
        }
    }
    norm += here; // f_0
    wanted / norm
}
