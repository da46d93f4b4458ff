//! CSV input: column selection and header auto-detection.
//!
//! Input files are plain comma-separated numerics, with or without a header
//! row (detected by trying to parse the first row); decimal points only.

use lancaster::Sample;

use crate::CliError;

/// A column picked by 0-based index or by header name.
#[derive(Debug, Clone, PartialEq)]
pub enum ColSel {
    Index(usize),
    Name(String),
}

pub fn parse_columns(spec: &str) -> Result<(ColSel, ColSel), CliError> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    if parts.len() != 2 || parts.iter().any(|p| p.is_empty()) {
        return Err(CliError::Usage(format!(
            "--columns expects two comma-separated selectors, got '{spec}'"
        )));
    }
    let sel = |p: &str| match p.parse::<usize>() {
        Ok(i) => ColSel::Index(i),
        Err(_) => ColSel::Name(p.to_string()),
    };
    Ok((sel(parts[0]), sel(parts[1])))
}

fn resolve(sel: &ColSel, header: Option<&[String]>, width: usize) -> Result<usize, CliError> {
    match sel {
        ColSel::Index(i) => {
            if *i >= width {
                Err(CliError::Usage(format!(
                    "column index {i} out of range: input has {width} column(s)"
                )))
            } else {
                Ok(*i)
            }
        }
        ColSel::Name(name) => match header {
            Some(h) => h.iter().position(|c| c == name).ok_or_else(|| {
                CliError::Usage(format!(
                    "no column named '{name}'; header: {}",
                    h.join(", ")
                ))
            }),
            None => Err(CliError::Usage(format!(
                "column '{name}' requested but the input has no header row"
            ))),
        },
    }
}

/// Read the two selected columns of a CSV file into a paired sample.
pub fn read_sample(path: &str, cols: &(ColSel, ColSel)) -> Result<Sample, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::Parse(format!("{path}: {e}")))?;

    let mut rows: Vec<(u64, csv::StringRecord)> = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| CliError::Parse(format!("{path}: {e}")))?;
        let line = rec.position().map(|p| p.line()).unwrap_or(0);
        if rec.iter().all(|f| f.is_empty()) {
            continue;
        }
        rows.push((line, rec));
    }
    if rows.is_empty() {
        return Err(CliError::Parse(format!("{path}: no data rows")));
    }
    let width = rows[0].1.len();
    if width < 2 {
        return Err(CliError::Usage(format!(
            "{path}: need at least 2 columns, found {width}"
        )));
    }

    // Header detection: only the selected cells decide. A text column
    // elsewhere in the file must not turn a data row into a header.
    let first: Vec<String> = rows[0].1.iter().map(str::to_string).collect();
    let needs_header = matches!(cols.0, ColSel::Name(_)) || matches!(cols.1, ColSel::Name(_));
    let selected_numeric = match (&cols.0, &cols.1) {
        (ColSel::Index(a), ColSel::Index(b)) => {
            let numeric = |i: &usize| first.get(*i).is_some_and(|f| f.parse::<f64>().is_ok());
            numeric(a) && numeric(b)
        }
        _ => false,
    };
    let (header, data_rows) = if needs_header {
        if first.iter().all(|f| f.parse::<f64>().is_ok()) {
            return Err(CliError::Usage(format!(
                "{path}: named columns requested but the first row is numeric (no header)"
            )));
        }
        (Some(first), &rows[1..])
    } else if selected_numeric {
        (None, &rows[..])
    } else {
        (Some(first), &rows[1..])
    };

    let ix = resolve(&cols.0, header.as_deref(), width)?;
    let iy = resolve(&cols.1, header.as_deref(), width)?;

    let mut xs = Vec::with_capacity(data_rows.len());
    let mut ys = Vec::with_capacity(data_rows.len());
    for (line, rec) in data_rows {
        let cell = |i: usize| -> Result<f64, CliError> {
            let raw = rec.get(i).ok_or_else(|| {
                CliError::Parse(format!("{path}:{line}: row has only {} field(s)", rec.len()))
            })?;
            raw.parse::<f64>().map_err(|_| {
                CliError::Parse(format!(
                    "{path}:{line}: column {i} has non-numeric value '{raw}'"
                ))
            })
        };
        xs.push(cell(ix)?);
        ys.push(cell(iy)?);
    }
    Sample::new(xs, ys).map_err(CliError::from)
}

/// Write a two-column sample (used by `estimate --dump-sample`).
pub fn write_sample(path: &str, sample: &Sample) -> Result<(), CliError> {
    let mut out = String::from("x,y\n");
    for (x, y) in sample.xs().iter().zip(sample.ys()) {
        out.push_str(&format!("{x},{y}\n"));
    }
    std::fs::write(path, out)?;
    Ok(())
}
