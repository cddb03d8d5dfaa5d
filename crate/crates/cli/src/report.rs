//! CSV and JSON emission of metrics reports.
//!
//! Both formats carry the same rows with the same column set
//! (method, band, SD, En, SNR, NRMSE, DI, CC): first the reference
//! baseline rows (method `origin`, SD/En only), then one row per band of
//! the measured image. Degenerate metric values serialize as the literal
//! strings `infinite` and `undefined` in both formats.

use ihsfuse_core::{MetricValue, MetricsReport};
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

const COLUMNS: [&str; 8] = ["method", "band", "SD", "En", "SNR", "NRMSE", "DI", "CC"];

/// One flat cell: a number, a sentinel string, or empty.
#[derive(Debug, Clone)]
enum Cell {
    Num(f64),
    Text(&'static str),
    Empty,
}

impl Cell {
    fn from_metric(value: MetricValue) -> Cell {
        match value {
            MetricValue::Finite(v) => Cell::Num(v),
            MetricValue::Infinite => Cell::Text("infinite"),
            MetricValue::Undefined => Cell::Text("undefined"),
        }
    }

    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => v.to_string(),
            Cell::Text(s) => (*s).to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) => json!(v),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

struct Row {
    method: String,
    band: String,
    cells: [Cell; 6],
}

fn rows(report: &MetricsReport) -> Vec<Row> {
    let mut out = Vec::new();
    for origin in &report.origin {
        out.push(Row {
            method: "origin".to_string(),
            band: origin.band.clone(),
            cells: [
                Cell::Num(origin.sd),
                Cell::Num(origin.en),
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
            ],
        });
    }
    for band in &report.bands {
        out.push(Row {
            method: report.method.clone(),
            band: band.band.clone(),
            cells: [
                Cell::Num(band.sd),
                Cell::Num(band.en),
                Cell::from_metric(band.snr),
                Cell::Num(band.nrmse),
                Cell::Num(band.di),
                Cell::from_metric(band.cc),
            ],
        });
    }
    out
}

pub fn write_report(report: &MetricsReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Csv => {
            let mut text = COLUMNS.join(",");
            text.push('\n');
            for row in rows(report) {
                let cells: Vec<String> = row.cells.iter().map(Cell::csv).collect();
                text.push_str(&format!(
                    "{},{},{}\n",
                    row.method,
                    row.band,
                    cells.join(",")
                ));
            }
            text
        }
        ReportFormat::Json => {
            let json_rows: Vec<Value> = rows(report)
                .into_iter()
                .map(|row| {
                    let mut obj = Map::new();
                    obj.insert("method".into(), json!(row.method));
                    obj.insert("band".into(), json!(row.band));
                    for (name, cell) in COLUMNS[2..].iter().zip(&row.cells) {
                        obj.insert((*name).into(), cell.json());
                    }
                    Value::Object(obj)
                })
                .collect();
            let doc = json!({
                "method": report.method,
                "settings": {
                    "variant": report.variant,
                    "mode": report.mode,
                    "match": report.match_mode,
                    "levels": report.levels,
                    "max_dn": report.max_dn,
                },
                "rows": json_rows,
            });
            let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
            text.push('\n');
            text
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ihsfuse_core::{evaluate, Raster};

    fn sample_report() -> MetricsReport {
        let raster = Raster::new(
            2,
            2,
            3,
            8,
            vec![0, 10, 20, 30, 1, 11, 21, 31, 2, 12, 22, 32],
        )
        .unwrap();
        let mut report = evaluate(&raster, &raster, 256).unwrap();
        report.method = "ihs5".to_string();
        report
    }

    #[test]
    fn csv_has_the_table_column_order() {
        let text = write_report(&sample_report(), ReportFormat::Csv);
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "method,band,SD,En,SNR,NRMSE,DI,CC");
        // three origin rows then three band rows
        let rest: Vec<&str> = lines.collect();
        assert_eq!(rest.len(), 6);
        assert!(rest[0].starts_with("origin,red,"));
        assert!(rest[3].starts_with("ihs5,red,"));
        assert!(rest[3].ends_with(",infinite,0,0,1"));
    }

    #[test]
    fn json_rows_mirror_the_csv_cells() {
        let report = sample_report();
        let csv = write_report(&report, ReportFormat::Csv);
        let json_text = write_report(&report, ReportFormat::Json);
        let doc: Value = serde_json::from_str(&json_text).unwrap();
        let rows = doc["rows"].as_array().unwrap();
        let csv_rows: Vec<&str> = csv.lines().skip(1).collect();
        assert_eq!(rows.len(), csv_rows.len());
        for (json_row, csv_row) in rows.iter().zip(csv_rows) {
            let fields: Vec<&str> = csv_row.split(',').collect();
            assert_eq!(json_row["method"].as_str().unwrap(), fields[0]);
            assert_eq!(json_row["band"].as_str().unwrap(), fields[1]);
            for (i, col) in COLUMNS[2..].iter().enumerate() {
                match &json_row[*col] {
                    Value::Null => assert_eq!(fields[2 + i], ""),
                    Value::String(s) => assert_eq!(fields[2 + i], s),
                    Value::Number(n) => {
                        let csv_val: f64 = fields[2 + i].parse().unwrap();
                        assert!((n.as_f64().unwrap() - csv_val).abs() < 1e-9);
                    }
                    other => panic!("unexpected cell {other:?}"),
                }
            }
        }
    }
}
