//! CSV and key=value report emission. All floats are printed with 17
//! significant digits so reports round-trip losslessly and identical runs
//! produce byte-identical files.

use std::fs;
use std::io;
use std::path::Path;

pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub struct Csv {
    buf: String,
    cols: usize,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        Csv {
            buf: format!("{}\n", header.join(",")),
            cols: header.len(),
        }
    }

    pub fn row(&mut self, fields: &[String]) {
        assert_eq!(fields.len(), self.cols, "csv row width mismatch");
        self.buf.push_str(&fields.join(","));
        self.buf.push('\n');
    }

    pub fn write_to(&self, path: &Path) -> io::Result<()> {
        fs::write(path, &self.buf)
    }
}

pub fn write_summary(path: &Path, pairs: &[(&str, String)]) -> io::Result<()> {
    let mut out = String::new();
    for (k, v) in pairs {
        out.push_str(k);
        out.push('=');
        out.push_str(v);
        out.push('\n');
    }
    fs::write(path, out)
}
