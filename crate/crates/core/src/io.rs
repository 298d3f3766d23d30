//! Field dumps, Koszul dumps and report files.
//!
//! Field CSV: header `i,k,r,theta,re,im`, one row per node in i-major order,
//! reals with 17 significant digits, LF line endings.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::IoError;
use crate::field::ScalarField;
use crate::grid::PolarGrid;
use crate::koszul::KoszulElement;
use crate::pipeline::SolveReport;
use crate::spec::format_real;

pub const FIELD_HEADER: &str = "i,k,r,theta,re,im";

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> IoError + '_ {
    move |source| IoError::Io {
        path: path.to_path_buf(),
        source,
    }
}

pub fn field_to_csv(u: &ScalarField) -> String {
    let grid = u.grid();
    let mut out = String::with_capacity(grid.len() * 96);
    out.push_str(FIELD_HEADER);
    out.push('\n');
    for i in 0..grid.n_r() {
        for k in 0..grid.n_theta() {
            let v = u.at(i, k);
            let _ = writeln!(
                out,
                "{i},{k},{},{},{},{}",
                format_real(grid.radius(i)),
                format_real(grid.angle(k)),
                format_real(v.re),
                format_real(v.im)
            );
        }
    }
    out
}

pub fn write_field(path: &Path, u: &ScalarField) -> Result<(), IoError> {
    fs::write(path, field_to_csv(u)).map_err(io_err(path))
}

/// Parses a field dump; the dump must cover exactly `grid`.
pub fn field_from_csv(path: &Path, text: &str, grid: &Arc<PolarGrid>) -> Result<ScalarField, IoError> {
    let fail = |line: usize, msg: String| IoError::Format {
        path: path.to_path_buf(),
        line,
        msg,
    };
    let mut lines = text.split('\n').enumerate().map(|(n, l)| (n + 1, l));
    match lines.next() {
        Some((_, h)) if h.trim_end_matches('\r') == FIELD_HEADER => {}
        Some((n, h)) => return Err(fail(n, format!("expected header `{FIELD_HEADER}`, got `{h}`"))),
        None => return Err(fail(1, "empty file".into())),
    }
    let mut values = Vec::with_capacity(grid.len());
    let (mut max_i, mut max_k) = (0usize, 0usize);
    let mut out_of_order = None;
    let mut last_line = 1;
    for (n, line) in lines {
        if line.is_empty() {
            continue;
        }
        last_line = n;
        let cols: Vec<&str> = line.trim_end_matches('\r').split(',').collect();
        if cols.len() != 6 {
            return Err(fail(n, format!("expected 6 columns, got {} (truncated row?)", cols.len())));
        }
        let index = |c: &str| c.parse::<usize>().map_err(|e| fail(n, format!("bad index `{c}`: {e}")));
        let real = |c: &str| c.parse::<f64>().map_err(|e| fail(n, format!("bad number `{c}`: {e}")));
        let (i, k) = (index(cols[0])?, index(cols[1])?);
        let v = Complex64::new(real(cols[4])?, real(cols[5])?);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(fail(n, "non-finite value".into()));
        }
        max_i = max_i.max(i);
        max_k = max_k.max(k);
        if out_of_order.is_none() && (values.len() >= grid.len() || (i, k) != grid.split(values.len())) {
            out_of_order = Some((n, i, k, values.len()));
        }
        values.push(v);
    }
    let (got_r, got_theta) = (max_i + 1, max_k + 1);
    let complete_other = !values.is_empty()
        && values.len() == got_r * got_theta
        && (got_r, got_theta) != (grid.n_r(), grid.n_theta());
    if got_r > grid.n_r() || got_theta > grid.n_theta() || complete_other {
        return Err(IoError::GridMismatch {
            path: path.to_path_buf(),
            n_r: grid.n_r(),
            n_theta: grid.n_theta(),
            got_r,
            got_theta,
        });
    }
    if let Some((n, i, k, pos)) = out_of_order {
        let (ei, ek) = grid.split(pos);
        return Err(fail(n, format!("expected node ({ei},{ek}), got ({i},{k})")));
    }
    if values.len() != grid.len() {
        return Err(fail(
            last_line + 1,
            format!("truncated: {} of {} rows present", values.len(), grid.len()),
        ));
    }
    Ok(ScalarField::from_vec_unchecked(Arc::clone(grid), values))
}

pub fn read_field(path: &Path, grid: &Arc<PolarGrid>) -> Result<ScalarField, IoError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    field_from_csv(path, &text, grid)
}

/// File name of a component dump, `J<wedge>_L<form>.csv`.
pub fn component_file_name(wedge: &crate::koszul::MultiIndex, form: &crate::koszul::MultiIndex) -> String {
    format!("J{wedge}_L{form}.csv")
}

/// One CSV per component plus `manifest.txt`.
pub fn dump_koszul(dir: &Path, x: &KoszulElement) -> Result<Vec<PathBuf>, IoError> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let d = x.degree();
    let mut manifest = format!(
        "m = {}\nn = {}\nwedge_degree = {}\nform_degree = {}\ncomponents = {}\n",
        x.m(),
        x.n(),
        d.wedge,
        d.form,
        x.components().len()
    );
    let mut written = Vec::new();
    for ((wedge, form), u) in x.components() {
        let name = component_file_name(wedge, form);
        let path = dir.join(&name);
        write_field(&path, u)?;
        let _ = writeln!(manifest, "{name} J=[{wedge}] L=[{form}]");
        written.push(path);
    }
    let path = dir.join("manifest.txt");
    fs::write(&path, manifest).map_err(io_err(&path))?;
    written.push(path);
    Ok(written)
}

pub fn write_report(path: &Path, report: &SolveReport) -> Result<(), IoError> {
    fs::write(path, report.to_text()).map_err(io_err(path))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::koszul::MultiIndex;

    fn field(grid: &Arc<PolarGrid>) -> ScalarField {
        ScalarField::from_fn(grid, |z| (z * 3.0).exp() / 7.0 + z.conj())
    }

    #[test]
    fn csv_round_trip_is_bit_exact() {
        let grid = PolarGrid::new(5, 8).unwrap();
        let u = field(&grid);
        let text = field_to_csv(&u);
        assert!(text.starts_with("i,k,r,theta,re,im\n0,0,"));
        assert_eq!(text.lines().count(), 41);
        assert!(!text.contains('\r'));
        let back = field_from_csv(Path::new("mem"), &text, &grid).unwrap();
        assert_eq!(back.values(), u.values());
    }

    #[test]
    fn truncation_names_the_line() {
        let grid = PolarGrid::new(4, 8).unwrap();
        let text = field_to_csv(&field(&grid));
        let cut: String = text.lines().take(20).map(|l| format!("{l}\n")).collect();
        match field_from_csv(Path::new("t.csv"), &cut, &grid) {
            Err(IoError::Format { line, .. }) => assert_eq!(line, 21),
            other => panic!("{other:?}"),
        }
        // a row cut mid-way
        let last_row = text[..text.len() - 1].rfind('\n').unwrap() + 1;
        let half = &text[..last_row + 8];
        match field_from_csv(Path::new("t.csv"), half, &grid) {
            Err(IoError::Format { line, .. }) => assert_eq!(line, 33),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn grid_mismatch_is_reported() {
        let small = PolarGrid::new(4, 8).unwrap();
        let big = PolarGrid::new(8, 16).unwrap();
        let text = field_to_csv(&field(&small));
        assert!(matches!(
            field_from_csv(Path::new("x"), &text, &big),
            Err(IoError::GridMismatch { got_r: 4, got_theta: 8, .. })
        ));
        let text = field_to_csv(&field(&big));
        assert!(matches!(
            field_from_csv(Path::new("x"), &text, &small),
            Err(IoError::GridMismatch { got_r: 8, .. })
        ));
    }

    #[test]
    fn bad_header_rejected() {
        let grid = PolarGrid::new(2, 4).unwrap();
        assert!(matches!(
            field_from_csv(Path::new("x"), "a,b\n", &grid),
            Err(IoError::Format { line: 1, .. })
        ));
    }

    #[test]
    fn koszul_dump_layout() {
        let grid = PolarGrid::new(3, 4).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let x = KoszulElement::from_components(
            3,
            1,
            2,
            0,
            &grid,
            [
                ((MultiIndex::new(vec![1, 2]).unwrap(), MultiIndex::empty()), field(&grid)),
                ((MultiIndex::new(vec![2, 3]).unwrap(), MultiIndex::empty()), field(&grid)),
            ],
        )
        .unwrap();
        let files = dump_koszul(dir.path(), &x).unwrap();
        assert_eq!(files.len(), 3);
        assert!(dir.path().join("J1-2_L.csv").exists());
        let manifest = fs::read_to_string(dir.path().join("manifest.txt")).unwrap();
        assert!(manifest.contains("wedge_degree = 2"));
        assert!(manifest.contains("J2-3_L.csv"));
    }
}
