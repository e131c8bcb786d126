//! Brute-force statistics oracles, deliberately implemented with different
//! algorithms than the library (counting instead of sorting, direct moment
//! sums instead of centered accumulation, quadrature instead of a CDF).

#![allow(dead_code)]

/// Average rank of each element by pairwise counting: rank_i is the number
/// of strictly smaller elements plus half the ties, 1-based.
pub fn counting_ranks(values: &[f64]) -> Vec<f64> {
    values
        .iter()
        .map(|&v| {
            let smaller = values.iter().filter(|&&w| w < v).count() as f64;
            let equal = values.iter().filter(|&&w| w == v).count() as f64;
            smaller + (equal + 1.0) / 2.0
        })
        .collect()
}

/// Pearson correlation via raw moment sums.
fn pearson_raw(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len() as f64;
    let sx: f64 = x.iter().sum();
    let sy: f64 = y.iter().sum();
    let sxx: f64 = x.iter().map(|v| v * v).sum();
    let syy: f64 = y.iter().map(|v| v * v).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let var_x = sxx - sx * sx / n;
    let var_y = syy - sy * sy / n;
    if var_x <= 0.0 || var_y <= 0.0 {
        return None;
    }
    Some((sxy - sx * sy / n) / (var_x * var_y).sqrt())
}

/// Tie-corrected Spearman by the counting-rank oracle; `None` when
/// degenerate.
pub fn oracle_spearman(x: &[f64], y: &[f64]) -> Option<f64> {
    pearson_raw(&counting_ranks(x), &counting_ranks(y))
}

/// The classic formula, valid only for tie-free vectors.
pub fn classic_rho_tie_free(x: &[f64], y: &[f64]) -> f64 {
    let rx = counting_ranks(x);
    let ry = counting_ranks(y);
    let n = x.len() as f64;
    let d2: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - b) * (a - b)).sum();
    1.0 - 6.0 * d2 / (n * (n * n - 1.0))
}

/// Student's t density.
fn t_pdf(t: f64, df: f64) -> f64 {
    // gamma((df+1)/2) / (sqrt(df*pi) * gamma(df/2)) * (1 + t^2/df)^-((df+1)/2)
    let coeff = (ln_gamma((df + 1.0) / 2.0) - ln_gamma(df / 2.0)).exp()
        / (df * std::f64::consts::PI).sqrt();
    coeff * (1.0 + t * t / df).powf(-(df + 1.0) / 2.0)
}

/// Lanczos log-gamma, good to ~1e-13 for the small positive arguments used
/// here.
fn ln_gamma(x: f64) -> f64 {
    #[allow(clippy::excessive_precision)]
    const G: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        // reflection
        return (std::f64::consts::PI / (std::f64::consts::PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = G[0];
    for (i, &g) in G.iter().enumerate().skip(1) {
        acc += g / (x + i as f64);
    }
    let t = x + 7.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// Two-sided tail mass of the t distribution by Simpson quadrature over
/// [0, |t|], using symmetry: p = 1 - 2 * integral(0..|t|).
pub fn t_two_sided_by_quadrature(t_abs: f64, df: f64) -> f64 {
    let steps = 200_000usize;
    let h = t_abs / steps as f64;
    if t_abs == 0.0 {
        return 1.0;
    }
    let mut sum = t_pdf(0.0, df) + t_pdf(t_abs, df);
    for i in 1..steps {
        let x = i as f64 * h;
        sum += t_pdf(x, df) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    let integral = sum * h / 3.0;
    (1.0 - 2.0 * integral).max(0.0)
}
