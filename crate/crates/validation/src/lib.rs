//! Small helpers for the acceptance run: a PASS/FAIL reporter and a
//! golden-section maximiser.

use std::time::{Duration, Instant};

/// Outcome of one numbered check.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: u32,
    pub name: String,
    pub pass: bool,
    pub detail: String,
    pub elapsed: Duration,
}

/// Evaluation result: pass flag plus a one-line measurement summary.
pub type Check = Result<(bool, String), String>;

#[derive(Debug, Default)]
pub struct Report {
    pub outcomes: Vec<Outcome>,
}

impl Report {
    /// Run `check`, enforce the optional wall-clock budget and print one line.
    pub fn run(
        &mut self,
        id: u32,
        name: &str,
        budget: Option<Duration>,
        check: impl FnOnce() -> Check,
    ) {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let (mut pass, mut detail) = match result {
            Ok(v) => v,
            Err(e) => (false, format!("error: {e}")),
        };
        if let Some(limit) = budget {
            if elapsed > limit {
                pass = false;
                detail.push_str(&format!("; over budget {:.1?} > {:.1?}", elapsed, limit));
            }
        }
        println!(
            "{} {:>2} {} ({:.2?}): {}",
            if pass { "PASS" } else { "FAIL" },
            id,
            name,
            elapsed,
            detail
        );
        self.outcomes.push(Outcome {
            id,
            name: name.to_string(),
            pass,
            detail,
            elapsed,
        });
    }

    pub fn failed(&self) -> Vec<u32> {
        self.outcomes
            .iter()
            .filter(|o| !o.pass)
            .map(|o| o.id)
            .collect()
    }
}

/// Maximise a unimodal `f` on `[a, b]` until the bracket is narrower than `tol`.
pub fn golden_section_max<E>(
    mut f: impl FnMut(f64) -> Result<f64, E>,
    mut a: f64,
    mut b: f64,
    tol: f64,
) -> Result<(f64, f64), E> {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let (mut f1, mut f2) = (f(x1)?, f(x2)?);
    while (b - a).abs() > tol {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2)?;
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1)?;
        }
    }
    Ok(if f1 > f2 { (x1, f1) } else { (x2, f2) })
}

/// Indices of strict interior local maxima.
pub fn local_maxima(ys: &[f64]) -> Vec<usize> {
    (1..ys.len().saturating_sub(1))
        .filter(|&i| ys[i] > ys[i - 1] && ys[i] >= ys[i + 1])
        .collect()
}

/// `n` points from `a` to `b`, geometrically spaced.
pub fn geomspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| (a.ln() + (b.ln() - a.ln()) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_section_finds_parabola_peak() {
        let (x, y) = golden_section_max(
            |x| Ok::<_, ()>(-(x - 2.5f64).powi(2) + 1.0),
            0.0,
            10.0,
            1e-9,
        )
        .unwrap();
        assert!((x - 2.5).abs() < 1e-8);
        assert!((y - 1.0).abs() < 1e-15);
    }

    #[test]
    fn counts_interior_maxima() {
        assert_eq!(local_maxima(&[0.0, 1.0, 2.0, 1.0, 0.5]), vec![2]);
        assert_eq!(local_maxima(&[0.0, 1.0, 0.0, 1.0, 0.0]), vec![1, 3]);
        assert!(local_maxima(&[3.0, 2.0, 1.0]).is_empty());
    }
}
