use std::io::{BufRead, Write};

use super::Layout;
use crate::error::{Error, Result};

/// One line per node: `id c1 c2 ...`, coordinates with 10 significant
/// digits in scientific notation.
pub fn write_layout<W: Write>(layout: &Layout, mut out: W) -> Result<()> {
    for i in 0..layout.node_count() {
        write!(out, "{i}")?;
        for c in layout.position(i) {
            write!(out, " {c:.9e}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}

/// Reads the format of [`write_layout`]. Ids must be `0..n` in order;
/// blank lines and `#` comments are skipped.
pub fn read_layout<R: BufRead>(input: R) -> Result<Layout> {
    let mut coords = Vec::new();
    let mut dim = None;
    let mut n = 0;
    for (k, line) in input.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |msg: String| Error::Parse { line: k + 1, msg };
        let mut fields = line.split_whitespace();
        let id: usize = fields.next().and_then(|t| t.parse().ok()).ok_or_else(|| bad("missing node id".into()))?;
        if id != n {
            return Err(bad(format!("expected node id {n}, found {id}")));
        }
        let before = coords.len();
        for tok in fields {
            coords.push(tok.parse::<f64>().map_err(|e| bad(format!("bad coordinate '{tok}': {e}")))?);
        }
        let row_dim = coords.len() - before;
        match dim {
            None => dim = Some(row_dim),
            Some(d) if d != row_dim => return Err(bad(format!("expected {d} coordinates, found {row_dim}"))),
            _ => {}
        }
        n += 1;
    }
    Layout::new(n, dim.unwrap_or(2), coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let l = Layout::from_points(&[[0.1, -2.5], [1.0 / 3.0, 1e-7]]).unwrap();
        let mut buf = Vec::new();
        write_layout(&l, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text.lines().next().unwrap(), "0 1.000000000e-1 -2.500000000e0");
        let back = read_layout(buf.as_slice()).unwrap();
        for (a, b) in back.coords().iter().zip(l.coords()) {
            assert!((a - b).abs() <= 1e-9 * b.abs());
        }
    }

    #[test]
    fn rejects_out_of_order_ids() {
        assert!(read_layout("1 0 0\n".as_bytes()).is_err());
        assert!(read_layout("0 0 0\n1 0\n".as_bytes()).is_err());
    }
}
