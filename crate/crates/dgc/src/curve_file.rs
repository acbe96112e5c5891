//! Space curves given by two generators in a text file.

use dgc_core::poly::parse_poly;
use dgc_core::IntPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveFile {
    pub vars: Vec<String>,
    pub generators: [IntPoly; 2],
    pub degree: Option<u32>,
}

impl CurveFile {
    /// Four variables mean a curve in `P^3`, three one in `A^3`.
    pub fn is_projective(&self) -> bool {
        self.vars.len() == 4
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CurveFileError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("expected exactly two generators, found {0}")]
    GeneratorCount(usize),
}

/// Format: optional `vars = x0, x1, x2, x3` and `degree = d` lines, then
/// one generator per line; `#` starts a comment. Without `vars`, the
/// variables are `x0..x3` if that parses and `x, y, z` otherwise.
pub fn parse_curve_file(text: &str) -> Result<CurveFile, CurveFileError> {
    let mut vars: Option<Vec<String>> = None;
    let mut degree = None;
    let mut polys: Vec<(usize, &str)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match line.split_once('=') {
            Some((k, v)) if k.trim() == "vars" => {
                vars = Some(v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect());
            }
            Some((k, v)) if k.trim() == "degree" => {
                degree = Some(v.trim().parse().map_err(|_| CurveFileError::Line { line: i + 1, msg: "bad degree".into() })?);
            }
            Some(_) => return Err(CurveFileError::Line { line: i + 1, msg: "unknown setting".into() }),
            None => polys.push((i + 1, line)),
        }
    }
    if polys.len() != 2 {
        return Err(CurveFileError::GeneratorCount(polys.len()));
    }
    let candidates: Vec<Vec<String>> = match vars {
        Some(v) => vec![v],
        None => vec![
            ["x0", "x1", "x2", "x3"].map(String::from).to_vec(),
            ["x", "y", "z"].map(String::from).to_vec(),
        ],
    };
    let mut last_err = None;
    for vs in candidates {
        if vs.len() != 3 && vs.len() != 4 {
            return Err(CurveFileError::Line { line: 0, msg: "need 3 or 4 variables".into() });
        }
        let parsed: Result<Vec<IntPoly>, _> = polys
            .iter()
            .map(|&(line, s)| parse_poly(s, &vs).map_err(|e| CurveFileError::Line { line, msg: e.to_string() }))
            .collect();
        match parsed {
            Ok(gens) => {
                let [g1, g2]: [IntPoly; 2] = gens.try_into().expect("two generators");
                return Ok(CurveFile { vars: vs, generators: [g1, g2], degree });
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.expect("at least one attempt"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_and_explicit_vars() {
        let c = parse_curve_file("# twisted cubic\nx1^2 - x0*x2\nx2^3 - 2*x1*x2*x3 + x0*x3^2\n").unwrap();
        assert!(c.is_projective() && c.degree.is_none());
        let c = parse_curve_file("degree = 3\ny - x^2\nz - x^3\n").unwrap();
        assert_eq!((c.vars.len(), c.degree), (3, Some(3)));
        let c = parse_curve_file("vars = a, b, c\nb - a^2\nc - a^3").unwrap();
        assert_eq!(c.vars, vec!["a", "b", "c"]);
        assert!(matches!(parse_curve_file("y - x^2"), Err(CurveFileError::GeneratorCount(1))));
        assert!(parse_curve_file("y - w\nz").is_err());
    }
}
