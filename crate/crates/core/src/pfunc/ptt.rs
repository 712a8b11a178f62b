//! The `.ptt` truth-table text format.
//!
//! ```text
//! PTT v1 p=<p> n=<n> m=<m>
//! <canonical index of F(0)>
//! <canonical index of F(1)>
//! ...
//! ```
//!
//! One line per domain point in canonical order, p^n lines in total.

use std::path::Path;
use std::sync::Arc;

use super::{PFunc, Space, VPFunc};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ptt {
    pub p: u32,
    pub n: usize,
    pub m: usize,
    pub values: Vec<u32>,
}

fn parse_kv(tok: Option<&str>, key: &str) -> Result<u64> {
    let err = |msg: String| Error::Parse { line: 1, msg };
    let tok = tok.ok_or_else(|| err(format!("missing {key}=")))?;
    let val = tok
        .strip_prefix(key)
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| err(format!("expected {key}=<int>, found {tok:?}")))?;
    val.parse()
        .map_err(|_| err(format!("bad integer for {key}: {val:?}")))
}

impl Ptt {
    pub fn parse(text: &str) -> Result<Ptt> {
        let mut lines = text.lines();
        let header = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "empty file".into(),
        })?;
        let mut toks = header.split_whitespace();
        if toks.next() != Some("PTT") || toks.next() != Some("v1") {
            return Err(Error::Parse {
                line: 1,
                msg: "header must start with `PTT v1`".into(),
            });
        }
        let p = parse_kv(toks.next(), "p")?;
        let n = parse_kv(toks.next(), "n")?;
        let m = parse_kv(toks.next(), "m")?;
        if toks.next().is_some() {
            return Err(Error::Parse {
                line: 1,
                msg: "trailing tokens in header".into(),
            });
        }
        let too_big = |e: u64| Error::Parse {
            line: 1,
            msg: format!("p^{e} is too large"),
        };
        let size = p
            .checked_pow(n as u32)
            .filter(|&s| s <= crate::gf::MAX_ORDER)
            .ok_or_else(|| too_big(n))?;
        let cod = p
            .checked_pow(m as u32)
            .filter(|&s| s <= crate::gf::MAX_ORDER)
            .ok_or_else(|| too_big(m))?;
        let mut values = Vec::with_capacity(size as usize);
        for (i, line) in lines.enumerate() {
            let lineno = i + 2;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if values.len() as u64 == size {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("more than {size} values"),
                });
            }
            let v: u64 = line.parse().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("not an integer: {line:?}"),
            })?;
            if v >= cod {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("value {v} outside [0, {cod})"),
                });
            }
            values.push(v as u32);
        }
        if values.len() as u64 != size {
            return Err(Error::Parse {
                line: values.len() + 2,
                msg: format!("expected {size} values, found {}", values.len()),
            });
        }
        Ok(Ptt {
            p: p as u32,
            n: n as usize,
            m: m as usize,
            values,
        })
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Ptt> {
        Ptt::parse(&std::fs::read_to_string(path)?)
    }

    pub fn render(&self) -> String {
        let mut out = format!("PTT v1 p={} n={} m={}\n", self.p, self.n, self.m);
        for v in &self.values {
            out.push_str(&v.to_string());
            out.push('\n');
        }
        out
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.render())?;
        Ok(())
    }

    pub fn from_vpfunc(f: &VPFunc) -> Ptt {
        Ptt {
            p: f.domain().p(),
            n: f.domain().dim(),
            m: f.codomain().dim(),
            values: f.table().to_vec(),
        }
    }

    pub fn from_pfunc(f: &PFunc) -> Ptt {
        Ptt {
            p: f.p(),
            n: f.dim(),
            m: 1,
            values: f.table().to_vec(),
        }
    }

    pub fn to_vpfunc(&self, domain: &Arc<Space>, codomain: &Arc<Space>) -> Result<VPFunc> {
        if domain.p() != self.p || domain.dim() != self.n || codomain.dim() != self.m {
            return Err(Error::SpecMismatch);
        }
        VPFunc::new(domain, codomain, self.values.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        let text = "PTT v1 p=3 n=1 m=1\n0\n1\n1\n";
        let t = Ptt::parse(text).unwrap();
        assert_eq!(t.values, vec![0, 1, 1]);
        assert_eq!(t.render(), text);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let truncated = "PTT v1 p=3 n=1 m=1\n0\n1\n";
        assert!(matches!(Ptt::parse(truncated), Err(Error::Parse { line: 4, .. })));
        let bad = "PTT v1 p=3 n=1 m=1\n0\nx\n1\n";
        assert!(matches!(Ptt::parse(bad), Err(Error::Parse { line: 3, .. })));
        let range = "PTT v1 p=3 n=1 m=1\n0\n3\n1\n";
        assert!(matches!(Ptt::parse(range), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(Ptt::parse("PTX v1"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(Ptt::parse("PTT v1 p=3 n=1"), Err(Error::Parse { line: 1, .. })));
        let extra = "PTT v1 p=3 n=1 m=1\n0\n1\n1\n2\n";
        assert!(matches!(Ptt::parse(extra), Err(Error::Parse { line: 5, .. })));
    }
}
