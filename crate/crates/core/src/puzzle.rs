//! Text format for puzzles.
//!
//! ```text
//! # comment
//! equation: 5+9=06
//! k: 2            # a number, `search` or `min`
//! k_mode: exact   # or at_most
//! hd_factor: 2
//! conserve: true
//! operators: +=00 -=01 ==10
//! weights: +=2 -=1
//! unchanged: 2
//! ```
//!
//! Instead of `equation:` a puzzle may list raw codes with
//! `segments: 1011011 + 1111011 = 1111110 1011111`, where each 7-bit word is
//! one display (segments `a` to `g`).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::oracle::{ConstraintSpec, EquationShape, Extra};
use crate::segcode::{
    encode_digit, KBudget, KMode, Operator, OperatorEncoding, PuzzleConfig, SegmentCode, SEGMENTS,
};

/// How the K budget is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KRequest {
    Fixed(u8),
    Search,
    /// Smallest fixed K that admits a solution.
    Min,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuzzleFile {
    pub puzzle: PuzzleConfig,
    pub spec: ConstraintSpec,
    pub k: KRequest,
    /// Whether the displays were given as raw segment codes.
    pub raw_segments: bool,
}

impl PuzzleFile {
    /// The puzzle with K fixed to `k`, for `k: min` files.
    pub fn with_k(&self, k: u8) -> PuzzleConfig {
        let mut p = self.puzzle.clone();
        p.k_budget = KBudget::Fixed(k);
        p
    }
}

struct Line<'a> {
    no: usize,
    text: &'a str,
}

impl Line<'_> {
    fn err(&self, column: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.no,
            column,
            message: message.into(),
        }
    }

    /// Column (1-based, in chars) of byte offset `at` within the line.
    fn col(&self, at: usize) -> usize {
        self.text[..at].chars().count() + 1
    }
}

/// Splits `value` (starting at byte `start` of the line) into words with
/// their byte offsets.
fn words(value: &str, start: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut begin = None;
    for (i, ch) in value.char_indices() {
        match (ch.is_whitespace(), begin) {
            (true, Some(b)) => {
                out.push((start + b, &value[b..i]));
                begin = None;
            }
            (false, None) => begin = Some(i),
            _ => {}
        }
    }
    if let Some(b) = begin {
        out.push((start + b, &value[b..]));
    }
    out
}

fn parse_equation(line: &Line, at: usize, value: &str) -> Result<(Vec<SegmentCode>, Vec<Operator>, EquationShape)> {
    let mut displays = Vec::new();
    let mut ops = Vec::new();
    let mut parts: [Vec<usize>; 3] = Default::default();
    let mut part = 0;
    for (i, ch) in value.char_indices() {
        let col = line.col(at + i);
        if ch.is_whitespace() {
            continue;
        }
        if let Some(d) = ch.to_digit(10) {
            parts[part].push(displays.len());
            displays.push(encode_digit(d as u8).unwrap());
        } else if ch == '=' {
            if part != 1 {
                return Err(line.err(col, "'=' must follow `number operator number`"));
            }
            part = 2;
        } else if let Some(op) = Operator::from_symbol(ch) {
            if part != 0 || parts[0].is_empty() {
                return Err(line.err(col, format!("unexpected operator '{ch}'")));
            }
            ops.push(op);
            part = 1;
        } else {
            return Err(line.err(col, format!("unexpected character '{ch}'")));
        }
    }
    if part != 2 || parts.iter().any(Vec::is_empty) {
        return Err(line.err(line.col(at), "expected an equation like `5+9=06`"));
    }
    let [left, right, result] = parts;
    Ok((
        displays,
        ops,
        EquationShape {
            left,
            operator: 0,
            right,
            result,
        },
    ))
}

fn parse_segments(line: &Line, at: usize, value: &str) -> Result<(Vec<SegmentCode>, Vec<Operator>, EquationShape)> {
    let mut displays = Vec::new();
    let mut ops = Vec::new();
    let mut parts: [Vec<usize>; 3] = Default::default();
    let mut part = 0;
    for (off, w) in words(value, at) {
        let col = line.col(off);
        if w == "=" {
            if part != 1 {
                return Err(line.err(col, "'=' must follow `codes operator codes`"));
            }
            part = 2;
        } else if w.chars().count() == 1 && Operator::from_symbol(w.chars().next().unwrap()).is_some() {
            if part != 0 || parts[0].is_empty() {
                return Err(line.err(col, format!("unexpected operator '{w}'")));
            }
            ops.push(Operator::from_symbol(w.chars().next().unwrap()).unwrap());
            part = 1;
        } else if w.len() == SEGMENTS && w.bytes().all(|b| b == b'0' || b == b'1') {
            parts[part].push(displays.len());
            displays.push(w.parse().unwrap());
        } else {
            return Err(line.err(col, format!("'{w}' is neither a 7-bit code nor an operator")));
        }
    }
    if part != 2 || parts.iter().any(Vec::is_empty) {
        return Err(line.err(line.col(at), "expected `codes operator codes = codes`"));
    }
    let [left, right, result] = parts;
    Ok((
        displays,
        ops,
        EquationShape {
            left,
            operator: 0,
            right,
            result,
        },
    ))
}

/// `sym=value` pairs such as `+=00` or `-=1`.
fn assignments<'a>(line: &Line, at: usize, value: &'a str) -> Result<Vec<(usize, Operator, &'a str)>> {
    words(value, at)
        .into_iter()
        .map(|(off, w)| {
            let mut chars = w.chars();
            let sym = chars.next().unwrap();
            let op = Operator::from_symbol(sym)
                .ok_or_else(|| line.err(line.col(off), format!("unknown operator '{sym}'")))?;
            let rest = chars.as_str();
            let rhs = rest
                .strip_prefix('=')
                .ok_or_else(|| line.err(line.col(off), format!("expected `{sym}=value`")))?;
            Ok((off, op, rhs))
        })
        .collect()
}

fn parse_bool(line: &Line, col: usize, v: &str) -> Result<bool> {
    match v {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(line.err(col, format!("expected true or false, found '{v}'"))),
    }
}

pub fn parse_puzzle(text: &str) -> Result<PuzzleFile> {
    let mut body = None;
    let mut k = KRequest::Fixed(1);
    let mut k_mode = KMode::Exact;
    let mut hd_factor = 1u8;
    let mut conserve = false;
    let mut encoding = None;
    let mut weights = Vec::new();
    let mut unchanged = Vec::new();
    let mut seen: Vec<&str> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = Line { no: idx + 1, text: raw };
        last_line = line.no;
        let content = raw.split('#').next().unwrap();
        if content.trim().is_empty() {
            continue;
        }
        let Some(colon) = content.find(':') else {
            let at = content.len() - content.trim_start().len();
            return Err(line.err(line.col(at), "expected `key: value`"));
        };
        let key = content[..colon].trim();
        let key_at = content.len() - content.trim_start().len();
        let vstart = colon + 1;
        let value = content[vstart..].trim();
        let vat = vstart + (content[vstart..].len() - content[vstart..].trim_start().len());
        let vcol = line.col(vat);
        if seen.contains(&key) {
            return Err(line.err(line.col(key_at), format!("duplicate key '{key}'")));
        }
        match key {
            "equation" | "segments" => {
                if body.is_some() {
                    return Err(line.err(line.col(key_at), "only one of `equation:` and `segments:` may appear"));
                }
                let parsed = if key == "equation" {
                    parse_equation(&line, vat, value)?
                } else {
                    parse_segments(&line, vat, value)?
                };
                body = Some((parsed, key == "segments", line.no));
            }
            "k" => {
                k = match value {
                    "search" => KRequest::Search,
                    "min" => KRequest::Min,
                    _ => match value.parse::<u8>() {
                        Ok(n) if n < 8 => KRequest::Fixed(n),
                        _ => return Err(line.err(vcol, format!("k must be 0..7, `search` or `min`, found '{value}'"))),
                    },
                }
            }
            "k_mode" => {
                k_mode = match value {
                    "exact" => KMode::Exact,
                    "at_most" | "atmost" => KMode::AtMost,
                    _ => return Err(line.err(vcol, format!("k_mode must be exact or at_most, found '{value}'"))),
                }
            }
            "hd_factor" => {
                hd_factor = match value {
                    "1" => 1,
                    "2" => 2,
                    _ => return Err(line.err(vcol, format!("hd_factor must be 1 or 2, found '{value}'"))),
                }
            }
            "conserve" => conserve = parse_bool(&line, vcol, value)?,
            "operators" => {
                let entries = assignments(&line, vat, value)?;
                let width = entries.first().map_or(0, |e| e.2.len());
                let mut list = Vec::new();
                for (off, op, code) in entries {
                    if code.len() != width || code.is_empty() || !code.bytes().all(|b| b == b'0' || b == b'1') {
                        return Err(line.err(line.col(off), format!("code '{code}' is not a {width}-bit binary word")));
                    }
                    list.push((op, u8::from_str_radix(code, 2).unwrap()));
                }
                encoding = Some(
                    OperatorEncoding::new(width, list).map_err(|e| line.err(vcol, e.to_string()))?,
                );
            }
            "weights" => {
                for (off, op, w) in assignments(&line, vat, value)? {
                    let w: u32 = w
                        .parse()
                        .map_err(|_| line.err(line.col(off), format!("weight '{w}' is not a number")))?;
                    weights.push((op, w));
                }
            }
            "unchanged" => {
                for (off, w) in words(value, vat) {
                    for part in w.split(',').filter(|s| !s.is_empty()) {
                        let d: usize = part
                            .parse()
                            .map_err(|_| line.err(line.col(off), format!("'{part}' is not a display index")))?;
                        unchanged.push(d);
                    }
                }
            }
            _ => return Err(line.err(line.col(key_at), format!("unknown key '{key}'"))),
        }
        seen.push(key);
    }

    let Some(((displays, ops, shape), raw_segments, body_line)) = body else {
        return Err(Error::Parse {
            line: last_line.max(1),
            column: 1,
            message: "missing `equation:` or `segments:`".into(),
        });
    };
    let at_body = |message: String| Error::Parse {
        line: body_line,
        column: 1,
        message,
    };
    let mut encoding = encoding.unwrap_or_default();
    for (op, w) in weights {
        encoding = encoding.with_weight(op, w);
    }
    let operators = ops
        .iter()
        .map(|&op| encoding.encode(op))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| at_body(e.to_string()))?;
    let mut puzzle = PuzzleConfig::new(displays, operators);
    puzzle.encoding = encoding;
    puzzle.k_mode = k_mode;
    puzzle.hd_factor = hd_factor;
    puzzle.conserve_matchsticks = conserve;
    puzzle.k_budget = match k {
        KRequest::Fixed(n) => KBudget::Fixed(n),
        KRequest::Search => KBudget::Search,
        KRequest::Min => KBudget::Fixed(0),
    };
    let mut spec = ConstraintSpec::for_puzzle(&puzzle, Some(shape));
    for d in unchanged {
        spec = spec.with_extra(Extra::DisplayUnchanged(d));
    }
    spec.validate(&puzzle).map_err(|e| at_body(e.to_string()))?;
    Ok(PuzzleFile {
        puzzle,
        spec,
        k,
        raw_segments,
    })
}

impl FromStr for PuzzleFile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_puzzle(s)
    }
}

impl fmt::Display for PuzzleFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.puzzle;
        let eq = self.spec.equation.as_ref().expect("puzzle files carry an equation");
        let op = p
            .encoding
            .operator_of(p.operators[eq.operator].code)
            .expect("parsed operators are named");
        let all_digits = p.displays.iter().all(|d| d.is_valid());
        if self.raw_segments || !all_digits {
            let codes = |ds: &[usize]| {
                ds.iter()
                    .map(|&d| p.displays[d].to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            writeln!(
                f,
                "segments: {} {op} {} = {}",
                codes(&eq.left),
                codes(&eq.right),
                codes(&eq.result)
            )?;
        } else {
            let digits = |ds: &[usize]| -> String {
                ds.iter()
                    .map(|&d| char::from(b'0' + p.displays[d].digit().unwrap()))
                    .collect()
            };
            writeln!(f, "equation: {}{op}{}={}", digits(&eq.left), digits(&eq.right), digits(&eq.result))?;
        }
        match self.k {
            KRequest::Fixed(n) => writeln!(f, "k: {n}")?,
            KRequest::Search => writeln!(f, "k: search")?,
            KRequest::Min => writeln!(f, "k: min")?,
        }
        let mode = match p.k_mode {
            KMode::Exact => "exact",
            KMode::AtMost => "at_most",
        };
        writeln!(f, "k_mode: {mode}")?;
        writeln!(f, "hd_factor: {}", p.hd_factor)?;
        writeln!(f, "conserve: {}", p.conserve_matchsticks)?;
        let w = p.encoding.width();
        let ops: Vec<String> = p
            .encoding
            .entries()
            .iter()
            .map(|&(op, code)| format!("{op}={code:0w$b}"))
            .collect();
        writeln!(f, "operators: {}", ops.join(" "))?;
        let weights: Vec<String> = p
            .encoding
            .weights()
            .iter()
            .map(|&(op, wt)| format!("{op}={wt}"))
            .collect();
        if !weights.is_empty() {
            writeln!(f, "weights: {}", weights.join(" "))?;
        }
        let unchanged: Vec<String> = self
            .spec
            .extras
            .iter()
            .filter_map(|e| match e {
                Extra::DisplayUnchanged(d) => Some(d.to_string()),
                Extra::ConserveMatchsticks => None,
            })
            .collect();
        if !unchanged.is_empty() {
            writeln!(f, "unchanged: {}", unchanged.join(","))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_file() {
        let f: PuzzleFile = "# case\nequation: 5+9=06\nk: min\nk_mode: exact\nhd_factor: 2\nconserve: true\noperators: +=00 -=01 ==10\nweights: -=1\nunchanged: 2\n"
            .parse()
            .unwrap();
        assert_eq!(f.puzzle.displays.len(), 4);
        assert_eq!(f.puzzle.displays[1], encode_digit(9).unwrap());
        assert_eq!(f.puzzle.operators[0].code, 0);
        assert_eq!(f.k, KRequest::Min);
        assert_eq!(f.puzzle.hd_factor, 2);
        assert!(f.spec.conserves());
        assert!(f.spec.extras.contains(&Extra::DisplayUnchanged(2)));
        assert_eq!(f.spec.equation.as_ref().unwrap().result, vec![2, 3]);
    }

    #[test]
    fn round_trips() {
        for text in [
            "equation: 5+9=06\nk: 2\n",
            "equation: 8-3=06\nk: search\nk_mode: at_most\n",
            "segments: 1011011 + 1111011 = 1111110 0000000\nk: 1\n",
            "equation: 12+3=15\nk: 0\nunchanged: 0,1\n",
        ] {
            let a: PuzzleFile = text.parse().unwrap();
            let b: PuzzleFile = a.to_string().parse().unwrap();
            assert_eq!(a, b, "{text}");
        }
    }

    #[test]
    fn diagnostics_point_at_the_problem() {
        let cases = [
            ("equation: 5+9=06\nk: 9\n", 2, 4),
            ("equation: 5?9=06\n", 1, 12),
            ("equation: 5+9=06\nmode: exact\n", 2, 1),
            ("k: 1\n", 1, 1),
            ("equation: 5+9=06\nsegments: 1111110 + 1111110 = 1111110\n", 2, 1),
            ("segments: 101101 + 1111011 = 1111110\n", 1, 11),
            ("equation: 5+9=06\noperators: +=00 -=1\n", 2, 17),
            ("equation: 5+9=06\nk: 1\nk: 2\n", 3, 1),
        ];
        for (text, line, column) in cases {
            match text.parse::<PuzzleFile>() {
                Err(Error::Parse { line: l, column: c, .. }) => assert_eq!((l, c), (line, column), "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }
}
