use std::collections::BTreeMap;
use std::fmt::Write as _;

use ndarray::{Array2, Array4};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tensors::InteractionTensor;

const CONTRADICTION_TOL: f64 = 1e-10;

/// Integrals of a Molpro-style FCIDUMP file over spatial orbitals.
///
/// `two_body[[i, j, k, l]]` is the chemist-notation integral `(ij|kl)`,
/// stored with its full eight-fold symmetry.
#[derive(Clone, Debug, PartialEq)]
pub struct Fcidump {
    pub norb: usize,
    pub nelec: usize,
    pub ms2: i64,
    pub orbsym: Vec<i64>,
    pub isym: i64,
    pub constant: f64,
    pub one_body: Array2<f64>,
    pub two_body: Array4<f64>,
}

impl Fcidump {
    pub fn new(norb: usize, nelec: usize, ms2: i64) -> Self {
        Fcidump {
            norb,
            nelec,
            ms2,
            orbsym: vec![1; norb],
            isym: 1,
            constant: 0.0,
            one_body: Array2::zeros((norb, norb)),
            two_body: Array4::zeros((norb, norb, norb, norb)),
        }
    }

    /// Spin-orbital tensor with `h_{2i+σ, 2j+σ} = h_ij` and
    /// `h_pqrs = (ps|qr)` where `p, s` share one spin and `q, r` the other.
    pub fn to_interaction_tensor(&self) -> InteractionTensor {
        let n = 2 * self.norb;
        let mut t = InteractionTensor::zeros(n);
        t.constant = Complex64::new(self.constant, 0.0);
        for ((i, j), &v) in self.one_body.indexed_iter() {
            for s in 0..2 {
                t.one_body[[2 * i + s, 2 * j + s]] = Complex64::new(v, 0.0);
            }
        }
        for ((i, j, k, l), &v) in self.two_body.indexed_iter() {
            if v == 0.0 {
                continue;
            }
            for s in 0..2 {
                for u in 0..2 {
                    t.two_body[[2 * i + s, 2 * k + u, 2 * l + u, 2 * j + s]] =
                        Complex64::new(v, 0.0);
                }
            }
        }
        t
    }
}

fn header_error(message: impl Into<String>) -> Error {
    Error::Fcidump(message.into())
}

fn parse_header(header: &str) -> Result<BTreeMap<String, Vec<String>>> {
    let mut fields: BTreeMap<String, Vec<String>> = BTreeMap::new();
    let mut current: Option<String> = None;
    for token in header
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
    {
        if let Some((key, value)) = token.split_once('=') {
            let key = key.trim().to_ascii_uppercase();
            let entry = fields.entry(key.clone()).or_default();
            if !value.is_empty() {
                entry.push(value.to_string());
            }
            current = Some(key);
        } else if let Some(key) = &current {
            fields
                .get_mut(key)
                .expect("key inserted")
                .push(token.to_string());
        } else {
            return Err(header_error(format!("unexpected header token `{token}`")));
        }
    }
    Ok(fields)
}

fn integer_field(fields: &BTreeMap<String, Vec<String>>, key: &str) -> Result<Option<i64>> {
    match fields.get(key).map(|v| v.as_slice()) {
        None => Ok(None),
        Some([value]) => value
            .parse()
            .map(Some)
            .map_err(|_| header_error(format!("{key} must be an integer, got `{value}`"))),
        Some(values) => Err(header_error(format!(
            "{key} expects one value, got {}",
            values.len()
        ))),
    }
}

fn set_checked(slot: &mut f64, seen: &mut bool, value: f64, what: &str) -> Result<()> {
    if *seen && (*slot - value).abs() > CONTRADICTION_TOL {
        return Err(header_error(format!(
            "contradictory values {} and {value} for {what}",
            *slot
        )));
    }
    if !*seen {
        *slot = value;
        *seen = true;
    }
    Ok(())
}

/// Parses FCIDUMP text. Symmetry-equivalent entries are completed, and
/// entries that disagree by more than 1e-10 are an error.
pub fn parse_fcidump(text: &str) -> Result<Fcidump> {
    let upper = text.to_ascii_uppercase();
    let start = upper
        .find("&FCI")
        .ok_or_else(|| header_error("missing &FCI header"))?;
    let rest = &upper[start + 4..];
    let (end, end_len) = match (rest.find("&END"), rest.find('/')) {
        (Some(a), Some(b)) if b < a => (b, 1),
        (Some(a), _) => (a, 4),
        (None, Some(b)) => (b, 1),
        (None, None) => return Err(header_error("unterminated &FCI header")),
    };
    let fields = parse_header(&rest[..end])?;
    let norb = integer_field(&fields, "NORB")?.ok_or_else(|| header_error("header lacks NORB"))?;
    if norb < 0 {
        return Err(header_error("NORB must be non-negative"));
    }
    let norb = norb as usize;
    let nelec = integer_field(&fields, "NELEC")?.unwrap_or(0).max(0) as usize;
    let mut dump = Fcidump::new(norb, nelec, integer_field(&fields, "MS2")?.unwrap_or(0));
    dump.isym = integer_field(&fields, "ISYM")?.unwrap_or(1);
    if let Some(sym) = fields.get("ORBSYM") {
        dump.orbsym = sym
            .iter()
            .map(|s| {
                s.parse()
                    .map_err(|_| header_error(format!("bad ORBSYM entry `{s}`")))
            })
            .collect::<Result<_>>()?;
    }

    let body_offset = start + 4 + end + end_len;
    let mut seen_one = Array2::from_elem((norb, norb), false);
    let mut seen_two = Array4::from_elem((norb, norb, norb, norb), false);
    let mut seen_constant = false;
    for (line_no, line) in text[body_offset..].lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 5 {
            return Err(header_error(format!(
                "integral line {} has {} fields",
                line_no + 1,
                parts.len()
            )));
        }
        let value: f64 = parts[0].replace(['D', 'd'], "e").parse().map_err(|_| {
            header_error(format!(
                "bad value `{}` on integral line {}",
                parts[0],
                line_no + 1
            ))
        })?;
        let mut idx = [0usize; 4];
        for (slot, p) in idx.iter_mut().zip(&parts[1..]) {
            *slot = p.parse().map_err(|_| {
                header_error(format!("bad index `{p}` on integral line {}", line_no + 1))
            })?;
            if *slot > norb {
                return Err(header_error(format!(
                    "index {slot} exceeds NORB={norb} on integral line {}",
                    line_no + 1
                )));
            }
        }
        match idx {
            [0, 0, 0, 0] => set_checked(
                &mut dump.constant,
                &mut seen_constant,
                value,
                "the core energy",
            )?,
            [i, j, 0, 0] if i > 0 && j > 0 => {
                for (a, b) in [(i - 1, j - 1), (j - 1, i - 1)] {
                    set_checked(
                        &mut dump.one_body[[a, b]],
                        &mut seen_one[[a, b]],
                        value,
                        &format!("h({i},{j})"),
                    )?;
                }
            }
            [i, j, k, l] if i > 0 && j > 0 && k > 0 && l > 0 => {
                let (i, j, k, l) = (i - 1, j - 1, k - 1, l - 1);
                for [a, b, c, d] in [
                    [i, j, k, l],
                    [j, i, k, l],
                    [i, j, l, k],
                    [j, i, l, k],
                    [k, l, i, j],
                    [l, k, i, j],
                    [k, l, j, i],
                    [l, k, j, i],
                ] {
                    let what = format!("({}{}|{}{})", i + 1, j + 1, k + 1, l + 1);
                    set_checked(
                        &mut dump.two_body[[a, b, c, d]],
                        &mut seen_two[[a, b, c, d]],
                        value,
                        &what,
                    )?;
                }
            }
            _ => {
                return Err(header_error(format!(
                    "unsupported index pattern {idx:?} on integral line {}",
                    line_no + 1
                )))
            }
        }
    }
    Ok(dump)
}

fn number(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes `dump` in FCIDUMP form with 17 significant digits, listing each
/// symmetry-unique non-zero integral once.
pub fn emit_fcidump(dump: &Fcidump) -> String {
    let mut out = String::new();
    let n = dump.norb;
    let _ = writeln!(out, " &FCI NORB={n},NELEC={},MS2={},", dump.nelec, dump.ms2);
    let sym: Vec<String> = dump.orbsym.iter().map(|s| s.to_string()).collect();
    let _ = writeln!(out, "  ORBSYM={},", sym.join(","));
    let _ = writeln!(out, "  ISYM={},", dump.isym);
    let _ = writeln!(out, " &END");
    let pair = |a: usize, b: usize| a * (a + 1) / 2 + b;
    for i in 0..n {
        for j in 0..=i {
            for k in 0..n {
                for l in 0..=k {
                    if pair(i, j) < pair(k, l) {
                        continue;
                    }
                    let v = dump.two_body[[i, j, k, l]];
                    if v != 0.0 {
                        let _ =
                            writeln!(out, "{} {} {} {} {}", number(v), i + 1, j + 1, k + 1, l + 1);
                    }
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..=i {
            let v = dump.one_body[[i, j]];
            if v != 0.0 {
                let _ = writeln!(out, "{} {} {} 0 0", number(v), i + 1, j + 1);
            }
        }
    }
    let _ = writeln!(out, "{} 0 0 0 0", number(dump.constant));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_only() {
        let dump = parse_fcidump("&FCI NORB=2,NELEC=2,MS2=0,\n&END\n -3.5 0 0 0 0\n").unwrap();
        assert_eq!(dump.constant, -3.5);
        assert!(dump.one_body.iter().all(|&v| v == 0.0));
        assert!(dump.two_body.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn slash_terminator_and_fortran_exponent() {
        let dump = parse_fcidump("&FCI NORB=1 /\n 1.5D0 1 1 0 0\n").unwrap();
        assert_eq!(dump.one_body[[0, 0]], 1.5);
    }

    #[test]
    fn errors() {
        assert!(parse_fcidump("1.0 0 0 0 0\n").is_err());
        assert!(parse_fcidump("&FCI NORB=1,\n&END\n1.0 2 1 0 0\n").is_err());
        assert!(parse_fcidump("&FCI NORB=2,\n&END\n1.0 2 1 0 0\n2.0 1 2 0 0\n").is_err());
        assert!(parse_fcidump("&FCI NELEC=2,\n&END\n").is_err());
    }

    #[test]
    fn emit_round_trip() {
        let mut dump = Fcidump::new(2, 2, 0);
        dump.constant = 0.1 + 0.2;
        dump.one_body[[0, 1]] = -1.0 / 3.0;
        dump.one_body[[1, 0]] = -1.0 / 3.0;
        for idx in [[0, 1, 1, 0], [1, 0, 1, 0], [0, 1, 0, 1], [1, 0, 0, 1]] {
            dump.two_body[idx] = std::f64::consts::PI;
        }
        let again = parse_fcidump(&emit_fcidump(&dump)).unwrap();
        assert_eq!(again, dump);
    }
}
