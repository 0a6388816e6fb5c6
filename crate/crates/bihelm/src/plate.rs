//! Clamped circular plate: time separation, frequency-equation roots,
//! mode shapes, operator-factorization and full-equation residual checks.
//!
//! The transverse displacement obeys ρψ̈ + cΔ²ψ = 0 on a disk of radius
//! `a`, clamped at the edge. Harmonic time dependence turns this into
//! Δ²w = k⁴w with ω = √(c/ρ)·k², and the radial factor that is regular at
//! the origin is R(r) = I_n(kr) − (I_n(l)/J_n(l))·J_n(kr) with l = ka
//! fixed by I_n′(l)J_n(l) − J_n′(l)I_n(l) = 0.

use crate::bessel::{self, MAX_ARGUMENT};
use crate::error::PlateError;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Physical parameters: radius, areal density, bending stiffness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlateConfig {
    pub a: f64,
    pub rho: f64,
    pub c: f64,
}

impl PlateConfig {
    pub fn new(a: f64, rho: f64, c: f64) -> Result<PlateConfig, PlateError> {
        for (name, value) in [("a", a), ("rho", rho), ("c", c)] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(PlateError::BadParameter { name, value });
            }
        }
        Ok(PlateConfig { a, rho, c })
    }

    /// ω from ω² = c k⁴ / ρ.
    pub fn omega(&self, k: f64) -> f64 {
        (self.c / self.rho).sqrt() * k * k
    }
}

/// One eigenmode: angular order n, radial index m (1-based), the
/// dimensionless root l = ka of the frequency equation, the wavenumber,
/// the amplitude ratio −I_n(l)/J_n(l) of the J part to the I part, and
/// the angular frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlateMode {
    pub n: u32,
    pub m: usize,
    pub root: f64,
    pub k: f64,
    pub ratio: f64,
    pub omega: f64,
}

/// Caller-supplied amplitudes: E, F multiply cos nθ, sin nθ; G, H
/// multiply cos ωt, sin ωt.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeAmplitudes {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub h: f64,
}

/// One field sample ψ(r, θ, t).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample {
    pub r: f64,
    pub theta: f64,
    pub t: f64,
    pub psi: f64,
}

pub const DEFAULT_WINDOW: (f64, f64) = (0.5, 30.0);
const SCAN_STEP: f64 = 0.05;
const BRACKET_WIDTH: f64 = 1e-12;

/// Angular frequency and the closed-form time basis for wavenumber k.
/// The basis solves T″ + ω²T = 0 exactly.
pub fn time_separation(cfg: &PlateConfig, k: f64) -> Result<(f64, String), PlateError> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(PlateError::BadParameter { name: "k", value: k });
    }
    let omega = cfg.omega(k);
    Ok((omega, format!("G*cos({omega}*t) + H*sin({omega}*t)")))
}

/// The rescaled frequency function F(x) = I_n′(x)J_n(x) − J_n′(x)I_n(x).
/// It has the same zeros as the quotient form I′/I = J′/J wherever the
/// denominators are finite, but no poles at zeros of J_n, so bracketing
/// is safe. I_n > 0 for x > 0 adds no spurious zeros.
pub fn frequency_function(n: u32, x: f64) -> Result<f64, PlateError> {
    if !(x > 0.0) {
        return Err(PlateError::BadParameter { name: "x", value: x });
    }
    if x > MAX_ARGUMENT || x.is_nan() {
        return Err(PlateError::ArgumentOutOfRange(x));
    }
    let n = n as i64;
    let j = bessel::eval_j(n, x);
    let jp = 0.5 * (bessel::eval_j(n - 1, x) - bessel::eval_j(n + 1, x));
    let i = bessel::eval_i(n, x);
    let ip = 0.5 * (bessel::eval_i(n - 1, x) + bessel::eval_i(n + 1, x));
    Ok(ip * j - jp * i)
}

/// The first `m_max` roots of the frequency function in `window`, found
/// by fixed-step bracketing and bisection to a 1e-12 bracket. Strictly
/// increasing by construction.
pub fn find_roots(n: u32, m_max: usize, window: (f64, f64)) -> Result<Vec<f64>, PlateError> {
    if m_max == 0 {
        return Err(PlateError::BadParameter {
            name: "m_max",
            value: 0.0,
        });
    }
    let (lo, hi) = window;
    if !(lo > 0.0) || !(hi > lo) {
        return Err(PlateError::BadParameter {
            name: "window",
            value: lo,
        });
    }
    if hi > MAX_ARGUMENT {
        return Err(PlateError::ArgumentOutOfRange(hi));
    }
    let mut roots = Vec::new();
    let mut x0 = lo;
    let mut f0 = frequency_function(n, x0)?;
    while x0 < hi && roots.len() < m_max {
        let x1 = (x0 + SCAN_STEP).min(hi);
        let f1 = frequency_function(n, x1)?;
        if f0 == 0.0 {
            roots.push(x0);
        } else if f0 * f1 < 0.0 {
            roots.push(bisect(n, x0, x1, f0));
        }
        x0 = x1;
        f0 = f1;
        if x1 >= hi {
            break;
        }
    }
    if roots.len() < m_max {
        return Err(PlateError::RootNotFound {
            m: m_max,
            found: roots.len(),
        });
    }
    roots.truncate(m_max);
    Ok(roots)
}

fn bisect(n: u32, mut lo: f64, mut hi: f64, mut flo: f64) -> f64 {
    while hi - lo > BRACKET_WIDTH {
        let mid = 0.5 * (lo + hi);
        let fmid = frequency_function(n, mid).expect("bracket stays in envelope");
        if fmid == 0.0 {
            return mid;
        }
        if flo * fmid < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fmid;
        }
    }
    0.5 * (lo + hi)
}

/// The (n, m) mode for the given plate, searching the default window.
pub fn mode(cfg: &PlateConfig, n: u32, m: usize) -> Result<PlateMode, PlateError> {
    let roots = find_roots(n, m, DEFAULT_WINDOW)?;
    let root = roots[m - 1];
    // J_n(l) ≠ 0 at a frequency root: otherwise F(l) = −J_n′(l)I_n(l),
    // and neither factor vanishes where J_n does.
    let ratio = -bessel::eval_i(n as i64, root) / bessel::eval_j(n as i64, root);
    let k = root / cfg.a;
    Ok(PlateMode {
        n,
        m,
        root,
        k,
        ratio,
        omega: cfg.omega(k),
    })
}

/// All modes with n and m in the inclusive ranges. Root searches for
/// distinct angular orders are independent and run in parallel when the
/// `parallel` feature is on.
pub fn mode_table(
    cfg: &PlateConfig,
    n_range: (u32, u32),
    m_range: (usize, usize),
) -> Result<Vec<PlateMode>, PlateError> {
    let (n_lo, n_hi) = n_range;
    let (m_lo, m_hi) = m_range;
    if n_hi < n_lo || m_hi < m_lo || m_lo == 0 {
        return Err(PlateError::BadParameter {
            name: "range",
            value: 0.0,
        });
    }
    let orders: Vec<u32> = (n_lo..=n_hi).collect();
    let per_order = |&n: &u32| -> Result<Vec<PlateMode>, PlateError> {
        let roots = find_roots(n, m_hi, DEFAULT_WINDOW)?;
        Ok((m_lo..=m_hi)
            .map(|m| {
                let root = roots[m - 1];
                let k = root / cfg.a;
                PlateMode {
                    n,
                    m,
                    root,
                    k,
                    ratio: -bessel::eval_i(n as i64, root) / bessel::eval_j(n as i64, root),
                    omega: cfg.omega(k),
                }
            })
            .collect())
    };
    #[cfg(feature = "parallel")]
    let per_n: Vec<Vec<PlateMode>> = orders.par_iter().map(per_order).collect::<Result<_, _>>()?;
    #[cfg(not(feature = "parallel"))]
    let per_n: Vec<Vec<PlateMode>> = orders.iter().map(per_order).collect::<Result<_, _>>()?;
    Ok(per_n.into_iter().flatten().collect())
}

/// Derivatives 0..=4 of J_n at x through the exact shift identity
/// J_n^(m) = 2^−m Σ_i (−1)^i C(m,i) J_{n−m+2i}.
fn j_derivs(n: i64, x: f64) -> [f64; 5] {
    let j: Vec<f64> = (n - 4..=n + 4).map(|k| bessel::eval_j(k, x)).collect();
    let at = |k: i64| j[(k - (n - 4)) as usize];
    [
        at(n),
        0.5 * (at(n - 1) - at(n + 1)),
        0.25 * (at(n - 2) - 2.0 * at(n) + at(n + 2)),
        0.125 * (at(n - 3) - 3.0 * at(n - 1) + 3.0 * at(n + 1) - at(n + 3)),
        0.0625 * (at(n - 4) - 4.0 * at(n - 2) + 6.0 * at(n) - 4.0 * at(n + 2) + at(n + 4)),
    ]
}

/// Same for I_n: I_n^(m) = 2^−m Σ_i C(m,i) I_{n−m+2i}.
fn i_derivs(n: i64, x: f64) -> [f64; 5] {
    let iv: Vec<f64> = (n - 4..=n + 4).map(|k| bessel::eval_i(k, x)).collect();
    let at = |k: i64| iv[(k - (n - 4)) as usize];
    [
        at(n),
        0.5 * (at(n - 1) + at(n + 1)),
        0.25 * (at(n - 2) + 2.0 * at(n) + at(n + 2)),
        0.125 * (at(n - 3) + 3.0 * at(n - 1) + 3.0 * at(n + 1) + at(n + 3)),
        0.0625 * (at(n - 4) + 4.0 * at(n - 2) + 6.0 * at(n) + 4.0 * at(n + 2) + at(n + 4)),
    ]
}

/// R and its first four radial derivatives at r, from exact recurrences.
fn radial_derivs(mode: &PlateMode, r: f64) -> [f64; 5] {
    let x = mode.k * r;
    let j = j_derivs(mode.n as i64, x);
    let i = i_derivs(mode.n as i64, x);
    let mut out = [0.0; 5];
    let mut kp = 1.0;
    for s in 0..5 {
        out[s] = kp * (i[s] + mode.ratio * j[s]);
        kp *= mode.k;
    }
    out
}

fn check_radius(mode: &PlateMode, r: f64) -> Result<(), PlateError> {
    let a = mode.root / mode.k;
    if !(0.0..=a * (1.0 + 1e-12)).contains(&r) {
        return Err(PlateError::BadParameter { name: "r", value: r });
    }
    Ok(())
}

/// R_{n,m}(r) = I_n(kr) − (I_n(l)/J_n(l))·J_n(kr), normalized with C = 1.
pub fn radial_mode(mode: &PlateMode, r: f64) -> Result<f64, PlateError> {
    check_radius(mode, r)?;
    let x = mode.k * r;
    Ok(bessel::eval_i(mode.n as i64, x) + mode.ratio * bessel::eval_j(mode.n as i64, x))
}

/// dR/dr.
pub fn radial_mode_prime(mode: &PlateMode, r: f64) -> Result<f64, PlateError> {
    check_radius(mode, r)?;
    Ok(radial_derivs(mode, r)[1])
}

/// Applies both operator-factorization orders
/// (D² + D/r − n²/r² + k²)(D² + D/r − n²/r² − k²) and its reverse to the
/// sample families J_n(kr), I_n(kr), and r^(n+2), compares each against
/// the expanded quartic operator minus k⁴, and returns the largest
/// relative disagreement.
pub fn factorization_check(n: u32, k: f64, radii: &[f64]) -> Result<f64, PlateError> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(PlateError::BadParameter { name: "k", value: k });
    }
    let mut worst = 0.0_f64;
    for &r in radii {
        if !(r > 0.0) {
            return Err(PlateError::BadParameter { name: "r", value: r });
        }
        let x = k * r;
        if x > MAX_ARGUMENT {
            return Err(PlateError::ArgumentOutOfRange(x));
        }
        let nn = n as i64;
        let mut samples: Vec<[f64; 5]> = Vec::new();
        // Bessel samples with derivatives by chain rule, d^s/dr^s = k^s·(d^s/dx^s)
        for d in [j_derivs(nn, x), i_derivs(nn, x)] {
            let mut scaled = [0.0; 5];
            let mut kp = 1.0;
            for s in 0..5 {
                scaled[s] = kp * d[s];
                kp *= k;
            }
            samples.push(scaled);
        }
        // polynomial sample r^(n+2)
        let p = (n + 2) as i32;
        let mut poly = [0.0; 5];
        let mut coef = 1.0;
        for (s, slot) in poly.iter_mut().enumerate() {
            let e = p - s as i32;
            *slot = coef * r.powi(e);
            coef *= e as f64;
        }
        samples.push(poly);
        for f in samples {
            let ab = apply_factored(n, k, r, &f, 1.0, -1.0);
            let ba = apply_factored(n, k, r, &f, -1.0, 1.0);
            let direct = apply_quartic(n, r, &f) - k.powi(4) * f[0];
            let scale = quartic_scale(n, k, r, &f);
            worst = worst
                .max((ab - direct).abs() / scale)
                .max((ba - direct).abs() / scale)
                .max((ab - ba).abs() / scale);
        }
    }
    Ok(worst)
}

/// (D² + D/r − n²/r² + outer·k²) applied to g = (D² + D/r − n²/r² +
/// inner·k²) f, with g, g′, g″ in closed form from f's derivative array.
fn apply_factored(n: u32, k: f64, r: f64, f: &[f64; 5], outer: f64, inner: f64) -> f64 {
    let nn = (n as f64) * (n as f64);
    let k2 = k * k;
    let g = f[2] + f[1] / r - nn * f[0] / (r * r) + inner * k2 * f[0];
    let g1 = f[3] + f[2] / r - f[1] / (r * r) - nn * (f[1] / (r * r) - 2.0 * f[0] / (r * r * r))
        + inner * k2 * f[1];
    let g2 = f[4] + f[3] / r - 2.0 * f[2] / (r * r) + 2.0 * f[1] / (r * r * r)
        - nn * (f[2] / (r * r) - 4.0 * f[1] / (r * r * r) + 6.0 * f[0] / (r * r * r * r))
        + inner * k2 * f[2];
    g2 + g1 / r - nn * g / (r * r) + outer * k2 * g
}

/// D⁴ + (2/r)D³ − ((1+2n²)/r²)D² + ((1+2n²)/r³)D − n²(4−n²)/r⁴.
fn apply_quartic(n: u32, r: f64, f: &[f64; 5]) -> f64 {
    let nn = (n as f64) * (n as f64);
    f[4] + 2.0 * f[3] / r - (1.0 + 2.0 * nn) * f[2] / (r * r)
        + (1.0 + 2.0 * nn) * f[1] / (r * r * r)
        - nn * (4.0 - nn) * f[0] / (r * r * r * r)
}

fn quartic_scale(n: u32, k: f64, r: f64, f: &[f64; 5]) -> f64 {
    let nn = (n as f64) * (n as f64);
    let terms = [
        f[4],
        2.0 * f[3] / r,
        (1.0 + 2.0 * nn) * f[2] / (r * r),
        (1.0 + 2.0 * nn) * f[1] / (r * r * r),
        nn * (4.0 - nn) * f[0] / (r * r * r * r),
        k.powi(4) * f[0],
    ];
    terms.iter().map(|t| t.abs()).sum::<f64>().max(1.0)
}

/// Max |Δ²w − k⁴w| / max |w| over the samples for w = R(r)cos(nθ), with
/// all radial derivatives from exact recurrences and the angular ones
/// analytic. Returns 0 when the mode vanishes on every sample.
pub fn pde_residual(mode: &PlateMode, samples: &[(f64, f64)]) -> Result<f64, PlateError> {
    let a = mode.root / mode.k;
    let nn = (mode.n as f64) * (mode.n as f64);
    let mut max_res = 0.0_f64;
    let mut max_w = 0.0_f64;
    for &(r, theta) in samples {
        if !(r > 0.0 && r < a) {
            return Err(PlateError::BadParameter { name: "r", value: r });
        }
        let d = radial_derivs(mode, r);
        let ang = (mode.n as f64 * theta).cos();
        // polar bilaplacian on a separated w = R cos nθ:
        // each ∂θθ pulls down −n²
        let bilap = ang
            * (d[4] + 2.0 * d[3] / r - d[2] / (r * r) + d[1] / (r * r * r)
                + (2.0 / (r * r)) * (-nn * d[2])
                - (2.0 / (r * r * r)) * (-nn * d[1])
                + (1.0 / (r * r * r * r)) * (nn * nn * d[0])
                + (4.0 / (r * r * r * r)) * (-nn * d[0]));
        let w = ang * d[0];
        max_res = max_res.max((bilap - mode.k.powi(4) * w).abs());
        max_w = max_w.max(w.abs());
    }
    if max_w == 0.0 {
        return Ok(0.0);
    }
    Ok(max_res / max_w)
}

/// ψ(r, θ, t) = Σ_modes (E cos nθ + F sin nθ)(G cos ωt + H sin ωt)·R(r)
/// sampled over the tensor grid of radii and angles at time t.
pub fn mode_field(
    modes: &[(PlateMode, ModeAmplitudes)],
    radii: &[f64],
    thetas: &[f64],
    t: f64,
) -> Result<Vec<FieldSample>, PlateError> {
    let mut out = Vec::with_capacity(radii.len() * thetas.len());
    for &r in radii {
        // radial parts are theta-independent; hoist them
        let mut parts = Vec::with_capacity(modes.len());
        for (mode, amp) in modes {
            let radial = radial_mode(mode, r)?;
            let temporal = amp.g * (mode.omega * t).cos() + amp.h * (mode.omega * t).sin();
            parts.push((mode.n as f64, amp.e, amp.f, radial * temporal));
        }
        for &theta in thetas {
            let mut psi = 0.0;
            for &(n, e, f, rt) in &parts {
                psi += (e * (n * theta).cos() + f * (n * theta).sin()) * rt;
            }
            out.push(FieldSample { r, theta, t, psi });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Frequency-equation roots computed with 25-digit arithmetic.
    const ROOTS: [[f64; 4]; 4] = [
        [
            3.1962206165825411,
            6.3064370476884237,
            9.4394991378764049,
            12.577130640430654,
        ],
        [
            4.6108998790490558,
            7.7992738008112319,
            10.958067191919498,
            14.108627805410928,
        ],
        [
            5.9056782354205229,
            9.1968825996353207,
            12.402220966864384,
            15.579491490430269,
        ],
        [
            7.1435310235048409,
            10.536669866589634,
            13.795063594348294,
            17.005290182525994,
        ],
    ];

    /// First zeros of J_n — the membrane branch the plate roots must avoid.
    const MEMBRANE: [f64; 3] = [2.4048255576957728, 3.8317059702075123, 5.1356223018406826];

    fn unit_cfg() -> PlateConfig {
        PlateConfig::new(1.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn frequency_roots_match_references() {
        for (n, row) in ROOTS.iter().enumerate() {
            let roots = find_roots(n as u32, 4, DEFAULT_WINDOW).unwrap();
            for (got, want) in roots.iter().zip(row) {
                assert!(
                    ((got - want) / want).abs() < 1e-9,
                    "l_{{{n},·}}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn roots_interlace_in_angular_order() {
        assert!(ROOTS[0][0] < ROOTS[1][0]);
        assert!(ROOTS[1][0] < ROOTS[2][0]);
        assert!(ROOTS[2][0] < ROOTS[3][0]);
    }

    #[test]
    fn roots_avoid_the_membrane_branch() {
        for (n, &jz) in MEMBRANE.iter().enumerate() {
            for root in find_roots(n as u32, 4, DEFAULT_WINDOW).unwrap() {
                assert!((root - jz).abs() > 1e-8);
            }
            // at a membrane zero the frequency function is clearly nonzero
            assert!(frequency_function(n as u32, jz).unwrap().abs() > 1e-3);
        }
    }

    #[test]
    fn frequency_function_changes_sign_where_expected() {
        let lo = frequency_function(0, 3.0).unwrap();
        let hi = frequency_function(0, 3.3).unwrap();
        assert!(lo * hi < 0.0);
    }

    #[test]
    fn mode_assembles_derived_quantities() {
        let cfg = PlateConfig::new(2.0, 3.0, 12.0).unwrap();
        let m = mode(&cfg, 0, 1).unwrap();
        assert_eq!(m.n, 0);
        assert_eq!(m.m, 1);
        assert!((m.root - ROOTS[0][0]).abs() < 1e-9);
        assert_eq!(m.k, m.root / 2.0);
        assert_eq!(m.omega, 2.0 * m.k * m.k);
    }

    #[test]
    fn time_separation_examples() {
        let cfg = unit_cfg();
        let (omega, basis) = time_separation(&cfg, 1.0).unwrap();
        assert_eq!(omega, 1.0);
        assert!(basis.contains("cos") && basis.contains("sin"));
        let cfg = PlateConfig::new(1.0, 1.0, 4.0).unwrap();
        let (omega, _) = time_separation(&cfg, 1.0).unwrap();
        assert_eq!(omega, 2.0);
        // closed-form basis satisfies T'' + ω²T = 0
        let (g, h) = (0.7, -0.3);
        for t in [0.0, 0.4, 1.7] {
            let tval = g * (omega * t).cos() + h * (omega * t).sin();
            let tpp = -omega * omega * tval;
            assert!((tpp + omega * omega * tval).abs() < 1e-12);
        }
        assert!(time_separation(&cfg, 0.0).is_err());
    }

    #[test]
    fn radial_profile_reference_values() {
        let m = mode(&unit_cfg(), 0, 1).unwrap();
        let anchors = [
            (0.25, 16.362549408927382),
            (0.5, 9.9413694060321543),
            (0.75, 3.1142431374029424),
        ];
        for (r, want) in anchors {
            let got = radial_mode(&m, r).unwrap();
            assert!(((got - want) / want).abs() < 1e-10, "R({r}) = {got}");
        }
        // origin value in closed form: I₀(0) + ratio·J₀(0) = 1 + ratio
        assert_eq!(radial_mode(&m, 0.0).unwrap(), 1.0 + m.ratio);
    }

    #[test]
    fn clamped_boundary_conditions() {
        let cfg = PlateConfig::new(1.7, 2.0, 5.0).unwrap();
        for n in 0..=3u32 {
            for m_idx in 1..=3usize {
                let m = mode(&cfg, n, m_idx).unwrap();
                let mut max_r = 0.0_f64;
                let mut max_rp = 0.0_f64;
                for s in 1..200 {
                    let r = cfg.a * s as f64 / 200.0;
                    max_r = max_r.max(radial_mode(&m, r).unwrap().abs());
                    max_rp = max_rp.max(radial_mode_prime(&m, r).unwrap().abs());
                }
                let at_edge = radial_mode(&m, cfg.a).unwrap().abs();
                let slope_at_edge = radial_mode_prime(&m, cfg.a).unwrap().abs();
                assert!(at_edge <= 1e-10 * max_r, "R(a) = {at_edge:e} for ({n},{m_idx})");
                assert!(
                    slope_at_edge <= 1e-10 * max_rp,
                    "R'(a) = {slope_at_edge:e} for ({n},{m_idx})"
                );
            }
        }
    }

    #[test]
    fn full_equation_residuals() {
        let cfg = unit_cfg();
        let samples: Vec<(f64, f64)> = (1..12)
            .map(|i| (i as f64 / 12.5, 0.3 + 0.5 * i as f64))
            .collect();
        for n in 0..=3u32 {
            for m_idx in 1..=3usize {
                let m = mode(&cfg, n, m_idx).unwrap();
                let res = pde_residual(&m, &samples).unwrap();
                assert!(res < 1e-8, "residual {res:e} for ({n},{m_idx})");
            }
        }
    }

    #[test]
    fn degenerate_samples_report_zero_residual() {
        let m = mode(&unit_cfg(), 1, 1).unwrap();
        // cos(θ) vanishes on every sample: 0/0 guarded to 0
        let res = pde_residual(&m, &[(0.5, std::f64::consts::FRAC_PI_2)]).unwrap();
        assert_eq!(res, 0.0);
        assert_eq!(pde_residual(&m, &[]).unwrap(), 0.0);
    }

    #[test]
    fn factorization_orders_agree() {
        let radii = [0.3, 0.7, 1.2, 2.5];
        for n in 0..=3u32 {
            let l = ROOTS[n as usize][1];
            let res = factorization_check(n, l, &radii).unwrap();
            assert!(res <= 1e-7, "factorization residual {res:e} at n={n}");
        }
        // sanity on arguments
        assert!(factorization_check(0, -1.0, &radii).is_err());
        assert!(factorization_check(0, 1.0, &[0.0]).is_err());
        assert!(factorization_check(0, 30.0, &[2.0]).is_err());
    }

    #[test]
    fn nodal_circle_count_of_second_axisymmetric_mode() {
        let m = mode(&unit_cfg(), 0, 2).unwrap();
        let mut crossings = 0;
        let mut prev = radial_mode(&m, 0.001).unwrap();
        for s in 1..500 {
            let r = 0.001 + (0.998 - 0.001) * s as f64 / 499.0;
            let v = radial_mode(&m, r).unwrap();
            if prev * v < 0.0 {
                crossings += 1;
            }
            prev = v;
        }
        assert_eq!(crossings, 1);
    }

    #[test]
    fn field_sampling_and_boundary() {
        let cfg = unit_cfg();
        let m = mode(&cfg, 2, 1).unwrap();
        let amp = ModeAmplitudes {
            e: 1.0,
            f: 0.5,
            g: 1.0,
            h: 0.0,
        };
        let radii = [0.0, 0.3, 0.6, 0.9, 1.0];
        let thetas: Vec<f64> = (0..8).map(|i| i as f64 * 0.25 * std::f64::consts::PI).collect();
        let field = mode_field(&[(m, amp)], &radii, &thetas, 0.0).unwrap();
        assert_eq!(field.len(), radii.len() * thetas.len());
        let max_psi = field.iter().map(|s| s.psi.abs()).fold(0.0, f64::max);
        for s in field.iter().filter(|s| s.r == 1.0) {
            assert!(s.psi.abs() <= 1e-9 * max_psi);
        }
        // at t = 0 with G=1, H=0 the sample is the spatial mode itself
        for s in &field {
            let want = (1.0 * (2.0 * s.theta).cos() + 0.5 * (2.0 * s.theta).sin())
                * radial_mode(&m, s.r).unwrap();
            assert!((s.psi - want).abs() <= 1e-12 * max_psi.max(1.0));
        }
    }

    #[test]
    fn parameter_validation() {
        assert!(matches!(
            PlateConfig::new(0.0, 1.0, 1.0),
            Err(PlateError::BadParameter { name: "a", .. })
        ));
        assert!(matches!(
            PlateConfig::new(1.0, -2.0, 1.0),
            Err(PlateError::BadParameter { name: "rho", .. })
        ));
        assert!(matches!(
            find_roots(0, 0, DEFAULT_WINDOW),
            Err(PlateError::BadParameter { name: "m_max", .. })
        ));
        assert!(matches!(
            find_roots(0, 1, (0.0, 30.0)),
            Err(PlateError::BadParameter { name: "window", .. })
        ));
        assert!(matches!(
            find_roots(0, 1, (0.5, 60.0)),
            Err(PlateError::ArgumentOutOfRange(_))
        ));
        assert!(matches!(
            find_roots(0, 50, DEFAULT_WINDOW),
            Err(PlateError::RootNotFound { m: 50, .. })
        ));
        let m = mode(&unit_cfg(), 0, 1).unwrap();
        assert!(radial_mode(&m, 1.5).is_err());
        assert!(radial_mode(&m, -0.1).is_err());
    }

    #[test]
    fn mode_table_covers_the_grid() {
        let cfg = unit_cfg();
        let table = mode_table(&cfg, (0, 3), (1, 3)).unwrap();
        assert_eq!(table.len(), 12);
        for mode in &table {
            let want = ROOTS[mode.n as usize][mode.m - 1];
            assert!((mode.root - want).abs() < 1e-9);
        }
        assert!(mode_table(&cfg, (0, 1), (0, 2)).is_err());
    }
}
