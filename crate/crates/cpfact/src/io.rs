//! Plain-text file formats.
//!
//! Matrix format: first line the dimension `n`, then the `n(n+1)/2`
//! upper-triangle entries in row-major order as rational tokens (`p/q`
//! or a plain integer), separated by whitespace.
//!
//! Certificate format: first line `n m` (dimension and atom count),
//! then `m` lines `alpha v_1 ... v_n` with `alpha` a rational token and
//! the coordinates decimal integers.
//!
//! Both formats are exact and diff-able; parse errors carry the line
//! and column of the offending token.

use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::factorize::{Certificate, CertificateMeta};
use crate::matrix::{LatticeVector, Rational, SymMatrix};

struct Tokens<'a> {
    items: Vec<(usize, usize, &'a str)>,
    pos: usize,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        let mut items = Vec::new();
        for (line_idx, line) in text.lines().enumerate() {
            // Split on whitespace, tracking the 1-based column of each token.
            let mut start = None;
            for (i, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
                if ch.is_whitespace() {
                    if let Some(s) = start.take() {
                        items.push((line_idx + 1, s + 1, &line[s..i]));
                    }
                } else if start.is_none() {
                    start = Some(i);
                }
            }
        }
        Self { items, pos: 0 }
    }

    fn next(&mut self, expected: &str) -> Result<(usize, usize, &'a str)> {
        let Some(&item) = self.items.get(self.pos) else {
            let (line, col) = self
                .items
                .last()
                .map(|&(l, c, t)| (l, c + t.len()))
                .unwrap_or((1, 1));
            return Err(Error::Parse {
                line,
                column: col,
                message: format!("unexpected end of input, expected {expected}"),
            });
        };
        self.pos += 1;
        Ok(item)
    }

    fn finish(&self) -> Result<()> {
        if let Some(&(line, col, tok)) = self.items.get(self.pos) {
            return Err(Error::Parse {
                line,
                column: col,
                message: format!("trailing token `{tok}`"),
            });
        }
        Ok(())
    }

    fn parse<T: FromStr>(&mut self, expected: &str) -> Result<T> {
        let (line, column, tok) = self.next(expected)?;
        tok.parse().map_err(|_| Error::Parse {
            line,
            column,
            message: format!("cannot parse `{tok}` as {expected}"),
        })
    }
}

pub fn serialize_matrix(a: &SymMatrix) -> String {
    let n = a.dim();
    let mut out = format!("{n}\n");
    for i in 0..n {
        let row: Vec<String> = (i..n).map(|j| a.get(i, j).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<SymMatrix> {
    let mut tokens = Tokens::new(text);
    let n: usize = tokens.parse("a dimension")?;
    if n == 0 {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "dimension must be positive".into(),
        });
    }
    let entries: Vec<Rational> = (0..n * (n + 1) / 2)
        .map(|_| tokens.parse("a rational entry"))
        .collect::<Result<_>>()?;
    tokens.finish()?;
    SymMatrix::from_upper(n, entries)
}

pub fn serialize_certificate(cert: &Certificate) -> String {
    let mut out = format!("{} {}\n", cert.n, cert.atoms.len());
    for (alpha, v) in &cert.atoms {
        let coords: Vec<String> = v.coords().iter().map(BigInt::to_string).collect();
        out.push_str(&format!("{alpha} {}\n", coords.join(" ")));
    }
    out
}

pub fn parse_certificate(text: &str) -> Result<Certificate> {
    let mut tokens = Tokens::new(text);
    let n: usize = tokens.parse("a dimension")?;
    let m: usize = tokens.parse("an atom count")?;
    let mut atoms = Vec::with_capacity(m);
    for _ in 0..m {
        let alpha: Rational = tokens.parse("a rational coefficient")?;
        let mut coords = Vec::with_capacity(n);
        for _ in 0..n {
            let (line, column, tok) = tokens.next("an integer coordinate")?;
            let c: BigInt = tok.parse().map_err(|_| Error::Parse {
                line,
                column,
                message: format!("cannot parse `{tok}` as an integer coordinate"),
            })?;
            coords.push(c);
        }
        let v = LatticeVector::new(coords).map_err(|e| Error::Parse {
            line: 1,
            column: 1,
            message: format!("invalid atom: {e}"),
        })?;
        atoms.push((alpha, v));
    }
    tokens.finish()?;
    Ok(Certificate {
        n,
        atoms,
        meta: CertificateMeta::unknown(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{rat, rint};

    #[test]
    fn matrix_round_trip() {
        let mut a = SymMatrix::zero(3);
        a.set(0, 0, rat(2, 3));
        a.set(0, 1, rint(-1));
        a.set(1, 2, rat(7, 5));
        a.set(2, 2, rint(4));
        let text = serialize_matrix(&a);
        assert_eq!(parse_matrix(&text).unwrap(), a);
    }

    #[test]
    fn certificate_round_trip() {
        let cert = Certificate {
            n: 2,
            atoms: vec![
                (rat(1, 2), LatticeVector::from_i64(&[1, 0]).unwrap()),
                (rint(3), LatticeVector::from_i64(&[1, 2]).unwrap()),
            ],
            meta: CertificateMeta::unknown(),
        };
        let parsed = parse_certificate(&serialize_certificate(&cert)).unwrap();
        assert_eq!(parsed.n, cert.n);
        assert_eq!(parsed.atoms, cert.atoms);
    }

    #[test]
    fn parse_error_names_line_and_column() {
        let text = "2\n1 x\n1\n";
        let err = parse_matrix(text).unwrap_err();
        let Error::Parse { line, column, .. } = err else {
            panic!("expected parse error, got {err}");
        };
        assert_eq!((line, column), (2, 3));
    }

    #[test]
    fn truncated_matrix_rejected() {
        assert!(parse_matrix("2\n1 2\n").is_err());
    }

    #[test]
    fn trailing_tokens_rejected() {
        assert!(parse_matrix("2\n1 2 3 4\n").is_err());
    }
}
