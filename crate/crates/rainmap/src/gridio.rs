//! Grid artifacts: a geo-registered CSV format and a binary (P5) PGM
//! heatmap, both with parsers for round-trip checks.
//!
//! CSV layout: one header line
//! `# nx,ny,box_km,origin_lon,origin_lat`
//! followed by `ny` comma-separated rows of `nx` values (row 0 is the
//! northernmost).  Values carry six significant digits; the header carries
//! the grid geometry losslessly.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::geodesy::{GeoPoint, Projection};
use crate::rainfield::{GridSpec, RainGrid};

// ---------------------------------------------------------------------------
// Number formatting
// ---------------------------------------------------------------------------

/// Format a value with six significant digits in plain decimal notation.
pub fn format_sig6(v: f64) -> String {
    if !v.is_finite() {
        return format!("{v}");
    }
    if v == 0.0 {
        return "0.00000".to_string();
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).clamp(0, 12) as usize;
    format!("{v:.decimals$}")
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

/// Render a grid as geo-registered CSV text.
pub fn grid_csv_string(grid: &RainGrid, projection: &Projection) -> String {
    let spec = &grid.spec;
    let origin_geo = projection.from_local(spec.origin);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# {},{},{},{},{}",
        spec.nx, spec.ny, spec.box_size_km, origin_geo.lon_deg, origin_geo.lat_deg
    );
    for row in 0..spec.ny {
        for col in 0..spec.nx {
            if col > 0 {
                out.push(',');
            }
            out.push_str(&format_sig6(grid.value(col, row)));
        }
        out.push('\n');
    }
    out
}

/// Write a grid as geo-registered CSV.
pub fn write_grid_csv(grid: &RainGrid, projection: &Projection, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, grid_csv_string(grid, projection)).map_err(|e| Error::io(path, e))
}

/// Parse geo-registered CSV text back into a grid, expressing the origin in
/// the local frame of `projection`.
pub fn parse_grid_csv(text: &str, projection: &Projection) -> Result<RainGrid> {
    let mut lines = text.lines().enumerate();

    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "empty file, expected a '# nx,ny,box_km,origin_lon,origin_lat' header".into(),
    })?;
    let header = header.strip_prefix('#').ok_or(Error::Parse {
        line: 1,
        message: "header must start with '#'".into(),
    })?;
    let fields: Vec<&str> = header.split(',').map(str::trim).collect();
    if fields.len() != 5 {
        return Err(Error::Parse {
            line: 1,
            message: format!("header must have 5 fields, got {}", fields.len()),
        });
    }
    let parse_header = |idx: usize, what: &str| -> Result<f64> {
        fields[idx].parse::<f64>().map_err(|_| Error::Parse {
            line: 1,
            message: format!("{what} '{}' is not a number", fields[idx]),
        })
    };
    let nx = fields[0].parse::<usize>().map_err(|_| Error::Parse {
        line: 1,
        message: format!("nx '{}' is not a positive integer", fields[0]),
    })?;
    let ny = fields[1].parse::<usize>().map_err(|_| Error::Parse {
        line: 1,
        message: format!("ny '{}' is not a positive integer", fields[1]),
    })?;
    let box_size_km = parse_header(2, "box size")?;
    let origin_lon = parse_header(3, "origin longitude")?;
    let origin_lat = parse_header(4, "origin latitude")?;
    if nx == 0 || ny == 0 || box_size_km <= 0.0 {
        return Err(Error::Parse {
            line: 1,
            message: "grid dimensions and box size must be positive".into(),
        });
    }

    let origin = projection.to_local(GeoPoint::new(origin_lon, origin_lat));
    let spec = GridSpec::new(nx, ny, box_size_km, origin);

    let mut values = Vec::with_capacity(spec.n_boxes());
    let mut rows_seen = 0usize;
    for (idx, row) in lines {
        let line = idx + 1;
        if row.trim().is_empty() {
            continue;
        }
        rows_seen += 1;
        if rows_seen > ny {
            return Err(Error::Parse {
                line,
                message: format!("expected {ny} data rows, found more"),
            });
        }
        let cells: Vec<&str> = row.split(',').collect();
        if cells.len() != nx {
            return Err(Error::Parse {
                line,
                message: format!("expected {nx} values per row, got {}", cells.len()),
            });
        }
        for cell in cells {
            values.push(cell.trim().parse::<f64>().map_err(|_| Error::Parse {
                line,
                message: format!("value '{}' is not a number", cell.trim()),
            })?);
        }
    }
    if rows_seen != ny {
        return Err(Error::Parse {
            line: rows_seen + 1,
            message: format!("expected {ny} data rows, got {rows_seen}"),
        });
    }
    RainGrid::from_values(spec, values)
}

/// Read a geo-registered CSV grid from disk.
pub fn read_grid_csv(path: impl AsRef<Path>, projection: &Projection) -> Result<RainGrid> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_grid_csv(&text, projection)
}

// ---------------------------------------------------------------------------
// PGM heatmap
// ---------------------------------------------------------------------------

/// Render a grid as a binary (P5) PGM heatmap.  Pixels scale linearly from 0
/// (no rain) to 255 (the grid maximum); an all-zero grid is all black.
pub fn heatmap_pgm_bytes(grid: &RainGrid) -> Vec<u8> {
    let spec = &grid.spec;
    let max = grid.max_value();
    let mut bytes = format!("P5\n{} {}\n255\n", spec.nx, spec.ny).into_bytes();
    bytes.reserve(spec.n_boxes());
    for &v in grid.values() {
        let pixel = if max > 0.0 {
            ((v / max) * 255.0).round().clamp(0.0, 255.0) as u8
        } else {
            0
        };
        bytes.push(pixel);
    }
    bytes
}

/// Write a grid as a binary PGM heatmap.
pub fn write_heatmap_pgm(grid: &RainGrid, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, heatmap_pgm_bytes(grid)).map_err(|e| Error::io(path, e))
}

/// A decoded PGM image (for round-trip checks).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PgmImage {
    pub width: usize,
    pub height: usize,
    pub maxval: u16,
    pub pixels: Vec<u8>,
}

/// Parse a binary (P5) PGM image.
pub fn parse_pgm(bytes: &[u8]) -> Result<PgmImage> {
    let bad = |message: String| Error::Parse { line: 1, message };

    // Header tokens are separated by whitespace; '#' starts a comment that
    // runs to the end of the line.
    let mut pos = 0usize;
    let mut next_token = |bytes: &[u8]| -> Result<String> {
        while pos < bytes.len() {
            match bytes[pos] {
                b' ' | b'\t' | b'\r' | b'\n' => pos += 1,
                b'#' => {
                    while pos < bytes.len() && bytes[pos] != b'\n' {
                        pos += 1;
                    }
                }
                _ => break,
            }
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if start == pos {
            return Err(Error::Parse {
                line: 1,
                message: "truncated PGM header".into(),
            });
        }
        Ok(String::from_utf8_lossy(&bytes[start..pos]).into_owned())
    };

    let magic = next_token(bytes)?;
    if magic != "P5" {
        return Err(bad(format!("expected P5 magic, got '{magic}'")));
    }
    let width: usize = next_token(bytes)?
        .parse()
        .map_err(|_| bad("width is not an integer".into()))?;
    let height: usize = next_token(bytes)?
        .parse()
        .map_err(|_| bad("height is not an integer".into()))?;
    let maxval: u16 = next_token(bytes)?
        .parse()
        .map_err(|_| bad("maxval is not an integer".into()))?;
    if maxval == 0 || maxval > 255 {
        return Err(bad(format!("unsupported maxval {maxval}")));
    }
    // Exactly one whitespace byte separates the header from the raster.
    if pos >= bytes.len() || !bytes[pos].is_ascii_whitespace() {
        return Err(bad("missing separator before raster data".into()));
    }
    pos += 1;

    let expected = width * height;
    let raster = &bytes[pos..];
    if raster.len() != expected {
        return Err(bad(format!(
            "expected {expected} raster bytes, got {}",
            raster.len()
        )));
    }
    Ok(PgmImage {
        width,
        height,
        maxval,
        pixels: raster.to_vec(),
    })
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geodesy::LocalPoint;
    use crate::rainfield::{rasterize, ConstantField, GaussianField};

    fn study_projection() -> Projection {
        Projection::new(GeoPoint::new(10.2691, 43.7040))
    }

    #[test]
    fn six_significant_digits() {
        assert_eq!(format_sig6(10.0), "10.0000");
        assert_eq!(format_sig6(0.0), "0.00000");
        assert_eq!(format_sig6(2.3692775868212177), "2.36928");
        assert_eq!(format_sig6(0.0123), "0.0123000");
        assert_eq!(format_sig6(123456.7), "123457");
        assert_eq!(format_sig6(-3.5), "-3.50000");
        assert_eq!(format_sig6(9.9999999), "10.00000");
    }

    #[test]
    fn csv_of_single_box_grid() {
        let proj = study_projection();
        let spec = GridSpec::new(1, 1, 0.1, LocalPoint::new(0.0, 0.0));
        let grid = RainGrid::from_values(spec, vec![10.0]).unwrap();
        assert_eq!(
            grid_csv_string(&grid, &proj),
            "# 1,1,0.1,10.2691,43.704\n10.0000\n"
        );
    }

    #[test]
    fn csv_round_trips_geometry_and_values() {
        let proj = study_projection();
        let spec = GridSpec::new(120, 120, 0.1, LocalPoint::new(0.0, 0.0));
        let grid = rasterize(
            &GaussianField::new(10.0, LocalPoint::new(6.0, -6.0), 5.0),
            &spec,
        );
        let text = grid_csv_string(&grid, &proj);
        let back = parse_grid_csv(&text, &proj).unwrap();
        assert!(
            back.same_geometry(&grid),
            "round-tripped grid must keep its geometry"
        );
        for (a, b) in grid.values().iter().zip(back.values()) {
            assert!(
                (a - b).abs() <= a.abs() * 1e-5 + 1e-9,
                "value {a} came back as {b}, beyond six-digit quantization"
            );
        }
    }

    #[test]
    fn csv_parser_reports_line_numbers() {
        let proj = study_projection();

        let err = parse_grid_csv("1,1,0.1,10,43\n5.0\n", &proj).unwrap_err();
        match err {
            Error::Parse { line, message } => {
                assert_eq!(line, 1);
                assert!(message.contains('#'), "must explain the header marker: {message}");
            }
            other => panic!("expected Parse error, got {other:?}"),
        }

        let err = parse_grid_csv("# 2,2,0.1,10,43\n1.0,2.0\n3.0,oops\n", &proj).unwrap_err();
        match err {
            Error::Parse { line, message } => {
                assert_eq!(line, 3, "bad value is on line 3");
                assert!(message.contains("oops"), "must quote the bad cell: {message}");
            }
            other => panic!("expected Parse error, got {other:?}"),
        }

        let err = parse_grid_csv("# 3,1,0.1,10,43\n1.0,2.0\n", &proj).unwrap_err();
        match err {
            Error::Parse { line, message } => {
                assert_eq!(line, 2);
                assert!(message.contains("3 values"), "must state the expected width: {message}");
            }
            other => panic!("expected Parse error, got {other:?}"),
        }

        let err = parse_grid_csv("# 1,3,0.1,10,43\n1.0\n", &proj).unwrap_err();
        assert!(
            matches!(err, Error::Parse { .. }),
            "missing rows must be a parse error, got {err:?}"
        );
    }

    #[test]
    fn heatmap_quantizes_linearly_to_the_grid_max() {
        let spec = GridSpec::new(2, 2, 1.0, LocalPoint::new(0.0, 0.0));
        let grid = RainGrid::from_values(spec, vec![0.0, 2.5, 5.0, 10.0]).unwrap();
        let bytes = heatmap_pgm_bytes(&grid);
        assert!(bytes.starts_with(b"P5\n2 2\n255\n"));
        let img = parse_pgm(&bytes).unwrap();
        assert_eq!(img.width, 2);
        assert_eq!(img.height, 2);
        assert_eq!(img.maxval, 255);
        assert_eq!(img.pixels, vec![0, 64, 128, 255], "linear scale to the max");
    }

    #[test]
    fn heatmap_of_empty_field_is_black() {
        let spec = GridSpec::new(3, 2, 1.0, LocalPoint::new(0.0, 0.0));
        let grid = rasterize(&ConstantField(0.0), &spec);
        let img = parse_pgm(&heatmap_pgm_bytes(&grid)).unwrap();
        assert!(img.pixels.iter().all(|&p| p == 0), "no rain, no glow");
    }

    #[test]
    fn pgm_parser_rejects_truncated_raster() {
        let spec = GridSpec::new(2, 2, 1.0, LocalPoint::new(0.0, 0.0));
        let grid = rasterize(&ConstantField(1.0), &spec);
        let mut bytes = heatmap_pgm_bytes(&grid);
        bytes.pop();
        let err = parse_pgm(&bytes).unwrap_err();
        assert!(
            matches!(err, Error::Parse { .. }),
            "expected Parse error, got {err:?}"
        );
    }

    #[test]
    fn file_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let proj = study_projection();
        let spec = GridSpec::new(12, 10, 0.25, LocalPoint::new(0.0, 0.0));
        let grid = rasterize(
            &GaussianField::new(8.0, LocalPoint::new(1.5, -1.0), 2.0),
            &spec,
        );

        let csv_path = dir.path().join("grid.csv");
        write_grid_csv(&grid, &proj, &csv_path).unwrap();
        let back = read_grid_csv(&csv_path, &proj).unwrap();
        assert!(back.same_geometry(&grid));

        let pgm_path = dir.path().join("grid.pgm");
        write_heatmap_pgm(&grid, &pgm_path).unwrap();
        let img = parse_pgm(&std::fs::read(&pgm_path).unwrap()).unwrap();
        assert_eq!(img.width, 12);
        assert_eq!(img.height, 10);
    }

    #[test]
    fn missing_file_is_an_io_error_with_path() {
        let err = read_grid_csv("/nonexistent/grid.csv", &study_projection()).unwrap_err();
        match err {
            Error::Io { path, .. } => {
                assert!(path.to_string_lossy().contains("nonexistent"));
            }
            other => panic!("expected Io error, got {other:?}"),
        }
    }
}
