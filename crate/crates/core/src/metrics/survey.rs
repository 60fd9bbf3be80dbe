use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;

use serde::{Deserialize, Serialize};

use super::composition::{capitalization_matrix, is_symbol, symbol_ranking, CapitalizationMatrix};
use super::entropy::naive_entropy;
use super::MetricsError;
use crate::corpus::PasswordRecord;
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow<T> {
    pub scheme: String,
    pub count: usize,
    pub mean_length: T,
    /// Percentage of passwords with at least one digit or symbol.
    pub security_pct: T,
    pub mean_entropy: T,
    /// Population standard deviation.
    pub entropy_std: T,
    pub mean_difficulty: Option<T>,
}

pub fn by_scheme(records: &[PasswordRecord]) -> BTreeMap<&str, Vec<&PasswordRecord>> {
    let mut groups: BTreeMap<&str, Vec<&PasswordRecord>> = BTreeMap::new();
    for r in records {
        groups.entry(r.scheme.as_str()).or_default().push(r);
    }
    groups
}

pub fn summarize<T: Real>(records: &[PasswordRecord]) -> Result<Vec<SummaryRow<T>>, MetricsError> {
    by_scheme(records)
        .into_iter()
        .map(|(scheme, group)| summarize_group(scheme, &group))
        .collect()
}

fn summarize_group<T: Real>(scheme: &str, group: &[&PasswordRecord]) -> Result<SummaryRow<T>, MetricsError> {
    let n = T::count(group.len());
    let entropies = group
        .iter()
        .map(|r| naive_entropy::<T>(&r.password).map(|e| e.bits))
        .collect::<Result<Vec<T>, _>>()?;
    let mean_entropy = entropies.iter().copied().sum::<T>() / n;
    let variance = entropies.iter().map(|&e| (e - mean_entropy).powi(2)).sum::<T>() / n;
    let secure = group
        .iter()
        .filter(|r| r.password.chars().any(|c| c.is_ascii_digit() || is_symbol(c)))
        .count();
    let difficulties: Vec<T> = group.iter().filter_map(|r| r.difficulty).map(|d| T::count(d as usize)).collect();
    let mean_difficulty =
        (!difficulties.is_empty()).then(|| difficulties.iter().copied().sum::<T>() / T::count(difficulties.len()));
    Ok(SummaryRow {
        scheme: scheme.to_string(),
        count: group.len(),
        mean_length: group.iter().map(|r| T::count(r.password.chars().count())).sum::<T>() / n,
        security_pct: T::count(100 * secure) / n,
        mean_entropy,
        entropy_std: variance.sqrt(),
        mean_difficulty,
    })
}

/// Least-squares slope of difficulty, rescaled from 1..=7 to 0..=1, against
/// education level counted downward. Positive values mean the scheme gets
/// harder as education drops.
pub fn graceful_degradation<T: Real>(points: &[(u32, u8)]) -> Result<T, MetricsError> {
    let levels: BTreeSet<u32> = points.iter().map(|p| p.0).collect();
    if levels.len() < 2 {
        return Err(MetricsError::UndefinedMetric(format!(
            "need at least two education levels, got {}",
            levels.len()
        )));
    }
    if let Some((_, d)) = points.iter().find(|(_, d)| !(1..=7).contains(d)) {
        return Err(MetricsError::UndefinedMetric(format!("difficulty {d} outside 1-7")));
    }
    let n = T::count(points.len());
    let xs: Vec<T> = points.iter().map(|(level, _)| -T::count(*level as usize)).collect();
    let ys: Vec<T> = points.iter().map(|(_, d)| T::count(*d as usize - 1) / T::lit(6.0)).collect();
    let mx = xs.iter().copied().sum::<T>() / n;
    let my = ys.iter().copied().sum::<T>() / n;
    let sxx = xs.iter().map(|&x| (x - mx).powi(2)).sum::<T>();
    let sxy = xs.iter().zip(&ys).map(|(&x, &y)| (x - mx) * (y - my)).sum::<T>();
    if sxx <= T::epsilon() {
        return Err(MetricsError::UndefinedMetric("education level has no variance".into()));
    }
    Ok(sxy / sxx)
}

/// Per-scheme degradation over records that carry both survey answers.
pub fn graceful_degradation_by_scheme<T: Real>(records: &[PasswordRecord]) -> BTreeMap<String, Result<T, MetricsError>> {
    by_scheme(records)
        .into_iter()
        .map(|(scheme, group)| {
            let points: Vec<(u32, u8)> = group
                .iter()
                .filter_map(|r| Some((r.education_level?, r.difficulty?)))
                .collect();
            (scheme.to_string(), graceful_degradation(&points))
        })
        .collect()
}

pub fn capitalization_by_scheme(records: &[PasswordRecord]) -> BTreeMap<String, CapitalizationMatrix> {
    by_scheme(records)
        .into_iter()
        .map(|(s, g)| (s.to_string(), capitalization_matrix(g.iter().map(|r| r.password.as_str()))))
        .collect()
}

pub fn symbol_rank_frequency(records: &[PasswordRecord]) -> BTreeMap<String, Vec<(char, u64)>> {
    by_scheme(records)
        .into_iter()
        .map(|(s, g)| (s.to_string(), symbol_ranking(g.iter().map(|r| r.password.as_str()))))
        .collect()
}

pub fn write_summary_csv<T: Real, W: Write>(rows: &[SummaryRow<T>], out: W) -> Result<(), MetricsError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "scheme",
        "count",
        "mean_length",
        "security_pct",
        "mean_entropy",
        "entropy_std",
        "mean_difficulty",
    ])?;
    for r in rows {
        w.write_record([
            r.scheme.clone(),
            r.count.to_string(),
            format!("{:.4}", r.mean_length.as_f64()),
            format!("{:.2}", r.security_pct.as_f64()),
            format!("{:.4}", r.mean_entropy.as_f64()),
            format!("{:.4}", r.entropy_std.as_f64()),
            r.mean_difficulty.map_or("NA".into(), |d| format!("{:.4}", d.as_f64())),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_ranking_csv<W: Write>(rankings: &BTreeMap<String, Vec<(char, u64)>>, out: W) -> Result<(), MetricsError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["scheme", "rank", "symbol", "count"])?;
    for (scheme, ranked) in rankings {
        for (i, (c, n)) in ranked.iter().enumerate() {
            w.write_record([scheme.clone(), (i + 1).to_string(), c.to_string(), n.to_string()])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_matrix_csv<W: Write>(matrices: &BTreeMap<String, CapitalizationMatrix>, out: W) -> Result<(), MetricsError> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["scheme".to_string()];
    header.extend((1..=super::MAX_INDEXED_LENGTH).map(|i| i.to_string()));
    w.write_record(&header)?;
    for (scheme, m) in matrices {
        let mut row = vec![scheme.clone()];
        row.extend(m.counts.iter().map(u64::to_string));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::SourceKind;

    fn rec(id: &str, scheme: &str, pw: &str) -> PasswordRecord {
        PasswordRecord::new(id, scheme, "site", pw, SourceKind::Simulated { seed: 0 })
    }

    #[test]
    fn single_record_summary() {
        let rows = summarize::<f64>(&[rec("1", "x", "ab1")]).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].mean_length, 3.0);
        assert_eq!(rows[0].security_pct, 100.0);
        assert_eq!(rows[0].mean_difficulty, None);
    }

    #[test]
    fn population_std() {
        // log2(26) * L: pick lengths whose entropies are in ratio 1:2
        let a = rec("1", "x", "abcd");
        let b = rec("2", "x", "abcdefgh");
        let rows = summarize::<f64>(&[a, b]).unwrap();
        let e = 26f64.log2();
        assert!((rows[0].mean_entropy - 6.0 * e).abs() < 1e-9);
        assert!((rows[0].entropy_std - 2.0 * e).abs() < 1e-9);
    }

    #[test]
    fn degradation_examples() {
        assert_eq!(graceful_degradation::<f64>(&[(1, 4), (2, 4), (3, 4)]).unwrap(), 0.0);
        assert!(matches!(graceful_degradation::<f64>(&[(2, 3), (2, 5)]), Err(MetricsError::UndefinedMetric(_))));
        assert!(graceful_degradation::<f64>(&[]).is_err());
    }

    #[test]
    fn summary_csv_has_header_and_rows() {
        let rows = summarize::<f64>(&[rec("1", "a", "x!"), rec("2", "b", "yy")]).unwrap();
        let mut buf = Vec::new();
        write_summary_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 3);
        assert!(text.lines().nth(2).unwrap().ends_with(",NA"));
    }
}
