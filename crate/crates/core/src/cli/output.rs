use crate::error::Error;
use crate::series::SeriesLiteral;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

/// 17 significant digits, enough to round-trip any `f64`.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn open(out: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn csv_writer(out: Option<&Path>) -> io::Result<csv::Writer<Box<dyn Write>>> {
    Ok(csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(open(out)?))
}

/// Short machine-readable tag for a failed grid point.
pub fn flag(e: &Error) -> &'static str {
    match e {
        Error::BranchCut(_) => "branch_cut",
        Error::OutOfRange(_) => "out_of_range",
        Error::Quadrature(_) => "quadrature",
        Error::Zipper(_) => "zipper",
        Error::InsufficientTruncation { .. } => "truncation",
        _ => "error",
    }
}

/// JSON form of a series literal with every coefficient at full precision.
pub fn literal_json(lit: &SeriesLiteral) -> String {
    let coeffs: Vec<String> = lit.coeffs.iter().map(|&c| num(c)).collect();
    let mut s = format!(
        "{{\"min_exponent\":{},\"coeffs\":[{}]",
        lit.min_exponent,
        coeffs.join(",")
    );
    if let Some(t) = lit.trunc {
        s.push_str(&format!(",\"trunc\":{t}"));
    }
    s.push('}');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for x in [std::f64::consts::PI, -1e-300, 0.1 + 0.2, 123456789.0] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(num(-1.0), "-1.0000000000000000e0");
    }

    #[test]
    fn literal_json_parses_back() {
        let lit = SeriesLiteral {
            min_exponent: -1,
            coeffs: vec![1.0, 1.0 / 3.0],
            trunc: Some(4),
        };
        let back: SeriesLiteral = serde_json::from_str(&literal_json(&lit)).unwrap();
        assert_eq!(back, lit);
    }
}
