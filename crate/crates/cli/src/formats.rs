//! Text formats for generator matrices (`.gmat`) and point sets (`.pts`).
//!
//! Both are whitespace separated integers with `#` starting a comment that
//! runs to the end of the line.
//!
//! `.gmat`: header `p m n k`, then `k` rows of `n` field elements.
//! `.pts`: header `p m k n`, then `n` rows of `k` coordinates, each row a
//! normalized point (first nonzero coordinate 1).

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use concat_blocking_core::geometry::normalized;
use concat_blocking_core::{Error as CoreError, Field, LinearCode, Matrix, ProjectivePoint, ProjectiveSystem};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("generator matrix has rank {rank} but {rows} rows")]
    RankDeficient { rank: usize, rows: usize },
    #[error("line {line}: value {value} is not an element of GF({order})")]
    ValueOutOfRange { line: usize, value: u64, order: u64 },
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

struct Tokens<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
    last_line: usize,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        let items = text
            .lines()
            .enumerate()
            .flat_map(|(i, l)| {
                let body = l.split('#').next().unwrap_or("");
                body.split_whitespace().map(move |t| (i + 1, t))
            })
            .collect();
        let last_line = text.lines().count().max(1);
        Tokens { items, pos: 0, last_line }
    }

    fn next(&mut self, what: &str) -> Result<(usize, u64), FormatError> {
        let Some(&(line, tok)) = self.items.get(self.pos) else {
            return Err(FormatError::Syntax { line: self.last_line, msg: format!("unexpected end of input, expected {what}") });
        };
        self.pos += 1;
        let v = tok
            .parse::<u64>()
            .map_err(|_| FormatError::Syntax { line, msg: format!("expected {what}, found {tok:?}") })?;
        Ok((line, v))
    }

    fn line_of_next(&self) -> usize {
        self.items.get(self.pos).map_or(self.last_line, |t| t.0)
    }

    fn finish(&self) -> Result<(), FormatError> {
        match self.items.get(self.pos) {
            None => Ok(()),
            Some(&(line, tok)) => Err(FormatError::Syntax { line, msg: format!("trailing token {tok:?}") }),
        }
    }
}

fn header_field(t: &mut Tokens) -> Result<Arc<Field>, FormatError> {
    let line = t.line_of_next();
    let (_, p) = t.next("characteristic p")?;
    let (_, m) = t.next("extension degree m")?;
    let m = u32::try_from(m).map_err(|_| FormatError::Syntax { line, msg: "extension degree too large".into() })?;
    let f = Field::gf(p, m).map_err(|e| match e {
        CoreError::NotPrime(_) | CoreError::BadParams(_) => FormatError::Syntax { line, msg: e.to_string() },
        other => FormatError::Core(other),
    })?;
    Ok(Arc::new(f))
}

fn elements(t: &mut Tokens, f: &Field, count: usize) -> Result<Vec<u32>, FormatError> {
    (0..count)
        .map(|_| {
            let (line, v) = t.next("field element")?;
            if f.contains(v) {
                Ok(v as u32)
            } else {
                Err(FormatError::ValueOutOfRange { line, value: v, order: f.order() })
            }
        })
        .collect()
}

pub fn parse_gmat(text: &str) -> Result<LinearCode, FormatError> {
    let mut t = Tokens::new(text);
    let field = header_field(&mut t)?;
    let (_, n) = t.next("length n")?;
    let (line, k) = t.next("dimension k")?;
    if k == 0 || n == 0 || k > n {
        return Err(FormatError::Syntax { line, msg: format!("need 1 <= k <= n, got n = {n}, k = {k}") });
    }
    let (n, k) = (n as usize, k as usize);
    let data = elements(&mut t, &field, n * k)?;
    t.finish()?;
    let gen = Matrix::new(k, n, data)?;
    LinearCode::new(field, gen).map_err(|e| match e {
        CoreError::RankDeficient { rank, rows } => FormatError::RankDeficient { rank, rows },
        other => FormatError::Core(other),
    })
}

pub fn write_gmat(c: &LinearCode) -> String {
    let f = c.field();
    let mut s = format!("{} {} {} {}\n", f.p(), f.m(), c.n(), c.k());
    for i in 0..c.k() {
        let row: Vec<String> = c.generator().row(i).iter().map(u32::to_string).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

pub fn parse_pts(text: &str) -> Result<ProjectiveSystem, FormatError> {
    let mut t = Tokens::new(text);
    let field = header_field(&mut t)?;
    let (line, k) = t.next("dimension k")?;
    if k == 0 {
        return Err(FormatError::Syntax { line, msg: "dimension must be positive".into() });
    }
    let (_, n) = t.next("point count n")?;
    let k = k as usize;
    let mut points = Vec::with_capacity(n as usize);
    for _ in 0..n {
        let line = t.line_of_next();
        let v = elements(&mut t, &field, k)?;
        match normalized(&field, &v) {
            Some(nv) if nv == v => points.push(ProjectivePoint::new(&field, &v).expect("nonzero")),
            Some(_) => return Err(FormatError::Syntax { line, msg: "point is not normalized (first nonzero coordinate must be 1)".into() }),
            None => return Err(FormatError::Syntax { line, msg: "zero vector is not a point".into() }),
        }
    }
    t.finish()?;
    Ok(ProjectiveSystem::new(field, k, points)?)
}

pub fn write_pts(s: &ProjectiveSystem) -> String {
    let f = s.field();
    let mut out = format!("{} {} {} {}\n", f.p(), f.m(), s.dim(), s.len());
    for p in s.points() {
        let row: Vec<String> = p.coords().iter().map(u32::to_string).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

pub fn read_file(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

pub fn write_file(path: &Path, text: &str) -> Result<(), FormatError> {
    std::fs::write(path, text).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

/// Reads a code from a `.gmat` file.
pub fn load_code(path: &Path) -> Result<LinearCode, FormatError> {
    parse_gmat(&read_file(path)?)
}

/// Reads a point set: `.pts` files directly, anything else as a `.gmat`
/// whose columns are the points.
pub fn load_system(path: &Path) -> Result<ProjectiveSystem, FormatError> {
    let text = read_file(path)?;
    if path.extension().is_some_and(|e| e == "pts") {
        parse_pts(&text)
    } else {
        Ok(concat_blocking_core::geometry::system_from_code(&parse_gmat(&text)?)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TERN: &str = "# ternary\n3 1 9 3\n1 0 0 1 2 0 0 2 2\n0 1 0 0 0 1 2 1 2  # row two\n0 0 1 1 1 1 1 1 1\n";

    #[test]
    fn gmat_round_trip() {
        let c = parse_gmat(TERN).unwrap();
        assert_eq!((c.q(), c.n(), c.k()), (3, 9, 3));
        let text = write_gmat(&c);
        assert_eq!(parse_gmat(&text).unwrap(), c);
        assert_eq!(text.lines().next(), Some("3 1 9 3"));
    }

    #[test]
    fn gmat_errors() {
        let e = parse_gmat("3 1 2 2\n1 1\n2 2\n").unwrap_err();
        assert!(matches!(e, FormatError::RankDeficient { rank: 1, rows: 2 }), "{e}");
        let e = parse_gmat("3 1 2 1\n1 3\n").unwrap_err();
        assert!(matches!(e, FormatError::ValueOutOfRange { line: 2, value: 3, order: 3 }), "{e}");
        let e = parse_gmat("3 1 2 1\n1 x\n").unwrap_err();
        assert!(matches!(e, FormatError::Syntax { line: 2, .. }), "{e}");
        let e = parse_gmat("3 1 2 1\n1\n").unwrap_err();
        assert!(matches!(e, FormatError::Syntax { .. }), "{e}");
        let e = parse_gmat("4 1 2 1\n1 1\n").unwrap_err();
        assert!(matches!(e, FormatError::Syntax { line: 1, .. }), "{e}");
        let e = parse_gmat("2 1 2 1\n1 1 1\n").unwrap_err();
        assert!(matches!(e, FormatError::Syntax { .. }), "{e}");
    }

    #[test]
    fn pts_round_trip() {
        let text = "2 2 2 3\n1 0\n0 1\n1 3\n";
        let s = parse_pts(text).unwrap();
        assert_eq!((s.field().order(), s.dim(), s.len()), (4, 2, 3));
        assert_eq!(write_pts(&s), text);
        assert!(parse_pts("2 2 2 1\n2 1\n").is_err());
        assert!(parse_pts("2 1 2 1\n0 0\n").is_err());
    }
}
