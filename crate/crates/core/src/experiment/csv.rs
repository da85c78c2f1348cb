use std::fs::File;
use std::io::{self, BufRead, BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

use super::{SweepRecord, SweepSummary};

pub const CSV_HEADER: &str = "t_gamma,u_l,u_b,s_xb,s_zb,negativity,g_plus,g_minus";

/// `# qutrit-eur <version> params: <params>`
pub fn provenance_line(params: &str) -> String {
    format!(
        "# qutrit-eur {} params: {params}",
        env!("CARGO_PKG_VERSION")
    )
}

// 12 significant digits
fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

pub fn write_csv<W: Write>(records: &[SweepRecord], params: &str, mut w: W) -> io::Result<()> {
    writeln!(w, "{}", provenance_line(params))?;
    writeln!(w, "{CSV_HEADER}")?;
    for r in records {
        let row = [
            r.t_gamma,
            r.u_l,
            r.u_b,
            r.sxb,
            r.szb,
            r.negativity,
            r.g_plus,
            r.g_minus,
        ]
        .map(sig12)
        .join(",");
        writeln!(w, "{row}")?;
    }
    w.flush()
}

pub fn emit_csv(records: &[SweepRecord], params: &str, path: &Path) -> Result<()> {
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::create(path).map_err(io_err)?;
    write_csv(records, params, BufWriter::new(file)).map_err(io_err)
}

/// Reads records back from the CSV layout written by [`write_csv`]; comment
/// lines and the header are skipped.
pub fn parse_csv<R: BufRead>(reader: R) -> io::Result<Vec<SweepRecord>> {
    let invalid = |msg: String| io::Error::new(io::ErrorKind::InvalidData, msg);
    let mut out = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line == CSV_HEADER {
            continue;
        }
        let fields = line
            .split(',')
            .map(|f| f.parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| invalid(format!("line {}: {e}", lineno + 1)))?;
        let [t_gamma, u_l, u_b, sxb, szb, negativity, g_plus, g_minus] = fields[..] else {
            return Err(invalid(format!(
                "line {}: expected 8 fields, found {}",
                lineno + 1,
                fields.len()
            )));
        };
        out.push(SweepRecord {
            t_gamma,
            u_l,
            u_b,
            sxb,
            szb,
            negativity,
            g_plus,
            g_minus,
        });
    }
    Ok(out)
}

/// Writes `<csv_path>.summary.txt` and returns its path.
pub fn write_summary(summary: &SweepSummary, params: &str, csv_path: &Path) -> Result<PathBuf> {
    let mut name = csv_path.as_os_str().to_owned();
    name.push(".summary.txt");
    let path = PathBuf::from(name);

    let fmt_opt = |x: Option<f64>| x.map_or_else(|| "none".to_string(), |v| format!("{v:.6}"));
    let fmt_ext = |e: Option<super::Extremum>| {
        e.map_or_else(
            || "none".to_string(),
            |e| format!("{:.6} at t_gamma={:.4}", e.value, e.t_gamma),
        )
    };
    let zeros: Vec<String> = summary
        .negativity_zeros
        .iter()
        .map(|t| format!("{t:.4}"))
        .collect();
    let body = format!(
        "{}\n\
         u_l_max: {:.6} at t_gamma={:.4}\n\
         u_l_min: {:.6} at t_gamma={:.4}\n\
         period_estimate: {}\n\
         u_l_local_minima: {}\n\
         first_alpha_minimum: {}\n\
         first_beta_minimum: {}\n\
         negativity_zeros: [{}]\n",
        provenance_line(params),
        summary.ul_max.value,
        summary.ul_max.t_gamma,
        summary.ul_min.value,
        summary.ul_min.t_gamma,
        fmt_opt(summary.period_estimate),
        summary.ul_minima.len(),
        fmt_ext(summary.first_alpha_minimum),
        fmt_ext(summary.first_beta_minimum),
        zeros.join(", "),
    );
    std::fs::write(&path, body).map_err(|source| Error::Io {
        path: path.clone(),
        source,
    })?;
    Ok(path)
}
