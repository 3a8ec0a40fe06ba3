use std::path::Path;

use serde::Serialize;

use crate::{Failure, Format};

/// Buffered command output, written once the command has succeeded.
pub struct Output {
    pub format: Format,
    buf: Vec<u8>,
}

impl Output {
    pub fn new(format: Format) -> Self {
        Output {
            format,
            buf: Vec::new(),
        }
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.buf.extend_from_slice(s.as_ref().as_bytes());
        self.buf.push(b'\n');
    }

    pub fn raw(&mut self, s: &str) {
        self.buf.extend_from_slice(s.as_bytes());
    }

    pub fn json<T: Serialize + ?Sized>(&mut self, value: &T) -> Result<(), Failure> {
        let s = serde_json::to_string_pretty(value).map_err(|e| Failure::Usage(e.to_string()))?;
        self.line(s);
        Ok(())
    }

    pub fn csv<I, R>(&mut self, header: &[&str], rows: I) -> Result<(), Failure>
    where
        I: IntoIterator<Item = R>,
        R: IntoIterator,
        R::Item: AsRef<[u8]>,
    {
        let mut w = csv::Writer::from_writer(Vec::new());
        let err = |e: csv::Error| Failure::Usage(e.to_string());
        w.write_record(header).map_err(err)?;
        for r in rows {
            w.write_record(r).map_err(err)?;
        }
        let bytes = w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?;
        self.buf.extend_from_slice(&bytes);
        Ok(())
    }

    /// Rejects formats a command does not produce.
    pub fn expect(&self, allowed: &[Format], command: &str) -> Result<(), Failure> {
        if allowed.contains(&self.format) {
            Ok(())
        } else {
            let names: Vec<_> = allowed
                .iter()
                .map(|f| format!("{f:?}").to_lowercase())
                .collect();
            Err(Failure::Usage(format!(
                "{command} does not support --format {}; use one of: {}",
                format!("{:?}", self.format).to_lowercase(),
                names.join(", ")
            )))
        }
    }

    pub fn finish(self, path: Option<&Path>) -> Result<(), Failure> {
        match path {
            Some(p) => std::fs::write(p, &self.buf)
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
            None => {
                use std::io::Write;
                std::io::stdout()
                    .write_all(&self.buf)
                    .map_err(|e| Failure::Usage(format!("cannot write output: {e}")))
            }
        }
    }
}

/// Twelve significant digits, fixed-point when the magnitude allows it.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        format!("{:.*}", (11 - exp).max(0) as usize, x)
    } else {
        format!("{x:.11e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(sig12(0.18393972058572117), "0.183939720586");
        assert_eq!(sig12(1.0), "1.00000000000");
        assert_eq!(sig12(-0.5), "-0.500000000000");
        assert_eq!(sig12(123.456), "123.456000000");
        assert_eq!(sig12(2.5e-9), "2.50000000000e-9");
        assert_eq!(sig12(0.0), "0");
    }
}
