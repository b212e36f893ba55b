//! Small statistics helpers for experiment summaries and directional tests.

/// One-sided 95% critical value of the standard normal.
pub const Z_95_ONE_SIDED: f64 = 1.6449;
/// Two-sided 95% critical value of the standard normal.
pub const Z_95_TWO_SIDED: f64 = 1.96;

pub fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    xs.iter().sum::<f64>() / xs.len() as f64
}

pub fn sample_variance(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() - 1) as f64
}

pub fn std_err(xs: &[f64]) -> f64 {
    (sample_variance(xs) / xs.len().max(1) as f64).sqrt()
}

/// Half-width of the normal-approximation 95% confidence interval.
pub fn ci95_half_width(xs: &[f64]) -> f64 {
    Z_95_TWO_SIDED * std_err(xs)
}

/// Result of a paired one-sided test of `mean(x - y) > 0`.
#[derive(Debug, Clone, Copy)]
pub struct PairedTest {
    pub mean_delta: f64,
    pub std_err: f64,
    pub z: f64,
}

impl PairedTest {
    /// Significant at the one-sided 95% level.
    pub fn significant(&self) -> bool {
        self.z > Z_95_ONE_SIDED
    }
}

/// Paired z-test that `xs` exceeds `ys` on average.
pub fn paired_greater(xs: &[f64], ys: &[f64]) -> PairedTest {
    assert_eq!(xs.len(), ys.len(), "paired samples must align");
    let deltas: Vec<f64> = xs.iter().zip(ys).map(|(x, y)| x - y).collect();
    let m = mean(&deltas);
    let se = std_err(&deltas);
    PairedTest {
        mean_delta: m,
        std_err: se,
        z: if se > 0.0 {
            m / se
        } else if m > 0.0 {
            f64::INFINITY
        } else {
            0.0
        },
    }
}

/// One-sample one-sided test that `mean(xs) > threshold`.
pub fn mean_greater_than(xs: &[f64], threshold: f64) -> PairedTest {
    let m = mean(xs);
    let se = std_err(xs);
    PairedTest {
        mean_delta: m - threshold,
        std_err: se,
        z: if se > 0.0 {
            (m - threshold) / se
        } else if m > threshold {
            f64::INFINITY
        } else {
            0.0
        },
    }
}

fn ranks(xs: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..xs.len()).collect();
    idx.sort_by(|&a, &b| xs[a].partial_cmp(&xs[b]).expect("finite values"));
    let mut out = vec![0.0; xs.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && xs[idx[j + 1]] == xs[idx[i]] {
            j += 1;
        }
        // Average rank across ties.
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            out[k] = rank;
        }
        i = j + 1;
    }
    out
}

fn pearson(xs: &[f64], ys: &[f64]) -> f64 {
    let mx = mean(xs);
    let my = mean(ys);
    let mut cov = 0.0;
    let mut vx = 0.0;
    let mut vy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        cov += (x - mx) * (y - my);
        vx += (x - mx).powi(2);
        vy += (y - my).powi(2);
    }
    if vx <= 0.0 || vy <= 0.0 {
        return 0.0;
    }
    cov / (vx * vy).sqrt()
}

/// Spearman rank correlation with its t-statistic under the null of no
/// association (`df = n - 2`).
#[derive(Debug, Clone, Copy)]
pub struct SpearmanTest {
    pub rho: f64,
    pub t: f64,
    pub n: usize,
}

pub fn spearman(xs: &[f64], ys: &[f64]) -> SpearmanTest {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    let rho = pearson(&ranks(xs), &ranks(ys));
    let t = if n > 2 && rho.abs() < 1.0 {
        rho * ((n as f64 - 2.0) / (1.0 - rho * rho)).sqrt()
    } else if rho > 0.0 {
        f64::INFINITY
    } else if rho < 0.0 {
        f64::NEG_INFINITY
    } else {
        0.0
    };
    SpearmanTest { rho, t, n }
}

/// One-sided 95% critical value of Student's t for the given degrees of
/// freedom (conservative lookup, clamped to the normal limit).
pub fn t_crit_95_one_sided(df: usize) -> f64 {
    const TABLE: [(usize, f64); 12] = [
        (1, 6.314),
        (2, 2.920),
        (3, 2.353),
        (4, 2.132),
        (5, 2.015),
        (8, 1.860),
        (10, 1.812),
        (15, 1.753),
        (18, 1.734),
        (20, 1.725),
        (30, 1.697),
        (60, 1.671),
    ];
    for &(d, t) in TABLE.iter().rev() {
        if df >= d {
            return t;
        }
    }
    6.314
}

/// Formats `mean ± ci` with the 95% half-width.
pub fn summarize(xs: &[f64]) -> String {
    format!("{:.4} ± {:.4}", mean(xs), ci95_half_width(xs))
}
