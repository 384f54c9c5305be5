use serde::{Deserialize, Serialize};

use super::special::student_t_two_tailed;
use super::StatsError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TTestResult {
    pub t: f64,
    /// Welch–Satterthwaite degrees of freedom.
    pub df: f64,
    /// Two-tailed p-value.
    pub p: f64,
    pub mean_a: f64,
    pub sd_a: f64,
    pub n_a: usize,
    pub mean_b: f64,
    pub sd_b: f64,
    pub n_b: usize,
}

fn mean_var(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, var)
}

/// Two-sample t-test without assuming equal variances.
pub fn welch_ttest(a: &[f64], b: &[f64]) -> Result<TTestResult, StatsError> {
    if a.len() < 2 || b.len() < 2 {
        return Err(StatsError::InsufficientData);
    }
    let (ma, va) = mean_var(a);
    let (mb, vb) = mean_var(b);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let qa = va / na;
    let qb = vb / nb;
    let se2 = qa + qb;
    if !(se2 > 0.0) {
        return Err(StatsError::ZeroVariance);
    }
    let t = (ma - mb) / se2.sqrt();
    let df = se2 * se2 / (qa * qa / (na - 1.0) + qb * qb / (nb - 1.0));
    let p = student_t_two_tailed(t, df)?.clamp(0.0, 1.0);
    Ok(TTestResult {
        t,
        df,
        p,
        mean_a: ma,
        sd_a: va.sqrt(),
        n_a: a.len(),
        mean_b: mb,
        sd_b: vb.sqrt(),
        n_b: b.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_samples() {
        let a = [1.0, 2.0, 3.0, 4.0];
        let r = welch_ttest(&a, &a).unwrap();
        assert_eq!(r.t, 0.0);
        assert_eq!(r.p, 1.0);
    }

    #[test]
    fn textbook_example() {
        // reference values from scipy.stats.ttest_ind(a, b, equal_var=False)
        let a = [19.1, 20.5, 21.2, 18.4, 20.0, 19.8, 21.1, 20.7, 19.3, 20.2];
        let b = [21.3, 22.8, 20.9, 23.4, 21.7, 22.0, 20.4, 23.1, 21.9, 19.8];
        let r = welch_ttest(&a, &b).unwrap();
        // hand check of the statistic from the sample moments
        let (ma, va) = mean_var(&a);
        let (mb, vb) = mean_var(&b);
        assert!((r.t - (ma - mb) / (va / 10.0 + vb / 10.0).sqrt()).abs() < 1e-12);
        assert!((r.t - -3.642_671_297_021_621_5).abs() < 1e-10);
        assert!((r.p - 0.002_027_240_465_639_812).abs() < 1e-10);
        assert!((r.df - 16.916_865_287_967_273).abs() < 1e-9);
    }

    #[test]
    fn errors() {
        assert_eq!(welch_ttest(&[1.0], &[1.0, 2.0]), Err(StatsError::InsufficientData));
        assert_eq!(welch_ttest(&[1.0, 1.0], &[2.0, 2.0]), Err(StatsError::ZeroVariance));
    }
}
