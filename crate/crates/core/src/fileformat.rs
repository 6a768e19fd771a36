//! Line-oriented text format for algebra definitions.
//!
//! ```text
//! # comment lines and trailing comments start with '#'
//! dim_even 3
//! dim_odd 4
//! prod x1 x1 = x2
//! prod x1 y1 = 1/2 y2
//! prod y2 y1 = -1 x1 + 2/3 x3
//! ```
//!
//! The header is `dim_even <n>` followed by `dim_odd <m>`, each on its own
//! line. Product lines read `prod <b> <b> = <term> [+ <term>]...` where
//! `<b>` is `x<i>` or `y<j>` (1-based) and `<term>` is `[<rational> ]<b>`
//! with the rational written as `p` or `p/q`, optional leading `-`.
//! Omitted products are zero. [`dump_algebra`] emits the canonical form:
//! sorted product lines, reduced rationals, unit coefficients omitted;
//! `parse_algebra(dump_algebra(a)) == a` exactly.

use std::collections::HashMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::SuperAlgebra;
use crate::scalar::Rat;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}: unknown basis name `{name}`")]
    UnknownBasis { line: usize, name: String },
    #[error("line {line}: grading violation: [{left}, {right}] cannot contain {target}")]
    GradingViolation {
        line: usize,
        left: String,
        right: String,
        target: String,
    },
    #[error("line {line}: duplicate product for [{left}, {right}] (first defined on line {first})")]
    Duplicate {
        line: usize,
        first: usize,
        left: String,
        right: String,
    },
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        col,
        msg: msg.into(),
    }
}

/// Tokens with their 1-based column offsets, comments stripped.
fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let content = match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    };
    let mut tokens = Vec::new();
    let mut offset = 0;
    for chunk in content.split_inclusive(char::is_whitespace) {
        let trimmed = chunk.trim_end_matches(char::is_whitespace);
        if !trimmed.is_empty() {
            tokens.push((offset + 1, trimmed));
        }
        offset += chunk.len();
    }
    tokens
}

/// Parses `p` or `p/q` with optional leading `-` into a reduced rational.
pub fn parse_rational(text: &str) -> Result<Rat, String> {
    let (numer_text, denom_text) = match text.split_once('/') {
        Some((p, q)) => (p, Some(q)),
        None => (text, None),
    };
    let numer = BigInt::from_str(numer_text).map_err(|_| format!("bad numerator in `{text}`"))?;
    let denom = match denom_text {
        Some(q) => BigInt::from_str(q).map_err(|_| format!("bad denominator in `{text}`"))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(format!("zero denominator in `{text}`"));
    }
    Ok(Rat::new(numer, denom))
}

fn looks_like_rational(token: &str) -> bool {
    token
        .chars()
        .next()
        .is_some_and(|c| c.is_ascii_digit() || c == '-')
}

fn parse_basis_name(
    token: &str,
    n: usize,
    m: usize,
    line: usize,
    col: usize,
) -> Result<usize, ParseError> {
    let unknown = || ParseError::UnknownBasis {
        line,
        name: token.to_string(),
    };
    if token.len() < 2 || !token.starts_with(['x', 'y']) {
        return Err(syntax(
            line,
            col,
            format!("expected a basis name, got `{token}`"),
        ));
    }
    let (block, rest) = token.split_at(1);
    let index: usize = rest.parse().map_err(|_| unknown())?;
    if index == 0 {
        return Err(unknown());
    }
    match block {
        "x" if index <= n => Ok(index - 1),
        "y" if index <= m => Ok(n + index - 1),
        _ => Err(unknown()),
    }
}

fn parse_header_line(
    tokens: &[(usize, &str)],
    keyword: &str,
    line: usize,
) -> Result<usize, ParseError> {
    if tokens.len() != 2 || tokens[0].1 != keyword {
        return Err(syntax(
            line,
            tokens.first().map_or(1, |t| t.0),
            format!("expected `{keyword} <count>`"),
        ));
    }
    tokens[1]
        .1
        .parse()
        .map_err(|_| syntax(line, tokens[1].0, format!("bad count `{}`", tokens[1].1)))
}

/// Parses `<b> <b> = <terms>` (no `prod` keyword) against known
/// dimensions; shared by product lines and mixed-product arguments.
pub fn parse_product_body(
    tokens: &[(usize, &str)],
    n: usize,
    m: usize,
    line: usize,
) -> Result<(usize, usize, Vec<Rat>), ParseError> {
    let d = n + m;
    if tokens.len() < 4 || tokens[2].1 != "=" {
        return Err(syntax(
            line,
            tokens.first().map_or(1, |t| t.0),
            "expected `<basis> <basis> = <term> [+ <term>]...`",
        ));
    }
    let left = parse_basis_name(tokens[0].1, n, m, line, tokens[0].0)?;
    let right = parse_basis_name(tokens[1].1, n, m, line, tokens[1].0)?;

    let mut coeffs = vec![Rat::zero(); d];
    let mut terms: Vec<Vec<(usize, &str)>> = vec![Vec::new()];
    for &(col, token) in &tokens[3..] {
        if token == "+" {
            terms.push(Vec::new());
        } else {
            terms.last_mut().expect("nonempty").push((col, token));
        }
    }
    for term in &terms {
        let (coeff, basis_token, basis_col) = match term.as_slice() {
            [(col, b)] => (Rat::one(), *b, *col),
            [(col, r), (bcol, b)] => {
                if !looks_like_rational(r) {
                    return Err(syntax(line, *col, format!("expected a rational, got `{r}`")));
                }
                let value = parse_rational(r).map_err(|msg| syntax(line, *col, msg))?;
                (value, *b, *bcol)
            }
            [] => return Err(syntax(line, tokens[2].0, "empty term")),
            _ => {
                return Err(syntax(
                    line,
                    term[0].0,
                    "each term is `[<rational>] <basis>`",
                ))
            }
        };
        let target = parse_basis_name(basis_token, n, m, line, basis_col)?;
        coeffs[target] = coeffs[target].clone() + coeff;
    }
    Ok((left, right, coeffs))
}

/// Parses an algebra definition. Unstated products are zero; grading
/// violations, unknown names and duplicate product lines are positioned
/// errors.
pub fn parse_algebra(text: &str) -> Result<SuperAlgebra<Rat>, ParseError> {
    let mut n: Option<usize> = None;
    let mut m: Option<usize> = None;
    let mut products: Vec<(usize, usize, Vec<Rat>)> = Vec::new();
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let tokens = tokenize(raw);
        if tokens.is_empty() {
            continue;
        }
        if n.is_none() {
            n = Some(parse_header_line(&tokens, "dim_even", line)?);
            continue;
        }
        if m.is_none() {
            m = Some(parse_header_line(&tokens, "dim_odd", line)?);
            continue;
        }
        let (n, m) = (n.expect("set"), m.expect("set"));
        if tokens[0].1 != "prod" {
            return Err(syntax(
                line,
                tokens[0].0,
                format!("expected `prod`, got `{}`", tokens[0].1),
            ));
        }
        let (left, right, coeffs) = parse_product_body(&tokens[1..], n, m, line)?;
        if let Some(&first) = seen.get(&(left, right)) {
            return Err(ParseError::Duplicate {
                line,
                first,
                left: basis_name(n, left),
                right: basis_name(n, right),
            });
        }
        seen.insert((left, right), line);
        let target_parity = (usize::from(left >= n) + usize::from(right >= n)) % 2;
        for (k, v) in coeffs.iter().enumerate() {
            if !v.is_zero() && usize::from(k >= n) != target_parity {
                return Err(ParseError::GradingViolation {
                    line,
                    left: basis_name(n, left),
                    right: basis_name(n, right),
                    target: basis_name(n, k),
                });
            }
        }
        products.push((left, right, coeffs));
    }

    let (Some(n), Some(m)) = (n, m) else {
        return Err(syntax(
            last_line.max(1),
            1,
            "missing header: `dim_even <n>` then `dim_odd <m>`",
        ));
    };
    SuperAlgebra::from_products(n, m, &products).map_err(|e| syntax(1, 1, e.to_string()))
}

fn basis_name(n: usize, index: usize) -> String {
    if index < n {
        format!("x{}", index + 1)
    } else {
        format!("y{}", index - n + 1)
    }
}

/// Canonical serialization: header, then product lines sorted by (left,
/// right) with terms sorted by target index, reduced rationals, and unit
/// coefficients omitted.
pub fn dump_algebra(a: &SuperAlgebra<Rat>) -> String {
    let n = a.even_dim();
    let d = a.dim();
    let mut out = format!("dim_even {}\ndim_odd {}\n", n, a.odd_dim());
    for i in 0..d {
        for j in 0..d {
            let coeffs = a.product(i, j);
            if coeffs.iter().all(Zero::is_zero) {
                continue;
            }
            let terms: Vec<String> = coeffs
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(k, v)| {
                    if v.is_one() {
                        basis_name(n, k)
                    } else {
                        format!("{v} {}", basis_name(n, k))
                    }
                })
                .collect();
            out.push_str(&format!(
                "prod {} {} = {}\n",
                basis_name(n, i),
                basis_name(n, j),
                terms.join(" + ")
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_remark21, build_theorem21, Theorem21Variant};
    use crate::scalar::{rat, ratio};
    use proptest::prelude::*;

    #[test]
    fn parses_null_filiform() {
        let text = "dim_even 3\ndim_odd 0\nprod x1 x1 = x2\nprod x2 x1 = x3\n";
        let a = parse_algebra(text).unwrap();
        let expected: SuperAlgebra<Rat> = build_theorem21(Theorem21Variant::First, 3, 0).unwrap();
        assert_eq!(a, expected);
    }

    #[test]
    fn header_only_is_abelian() {
        let a = parse_algebra("dim_even 2\ndim_odd 1\n").unwrap();
        assert_eq!(a, SuperAlgebra::abelian(2, 1));
    }

    #[test]
    fn comments_and_blank_lines() {
        let text =
            "# a table\n\ndim_even 2  # inline comment\ndim_odd 0\n\nprod x1 x1 = x2 # chain\n";
        let a = parse_algebra(text).unwrap();
        assert_eq!(a.product(0, 0)[1], rat(1));
    }

    #[test]
    fn grading_violation_is_positioned() {
        let text = "dim_even 1\ndim_odd 1\nprod x1 x1 = y1\n";
        assert_eq!(
            parse_algebra(text).unwrap_err(),
            ParseError::GradingViolation {
                line: 3,
                left: "x1".into(),
                right: "x1".into(),
                target: "y1".into(),
            }
        );
    }

    #[test]
    fn unknown_basis_name() {
        let text = "dim_even 3\ndim_odd 0\nprod x1 x5 = x2\n";
        assert_eq!(
            parse_algebra(text).unwrap_err(),
            ParseError::UnknownBasis {
                line: 3,
                name: "x5".into()
            }
        );
        let text = "dim_even 3\ndim_odd 0\nprod x1 y1 = x2\n";
        assert!(matches!(
            parse_algebra(text).unwrap_err(),
            ParseError::UnknownBasis { line: 3, .. }
        ));
    }

    #[test]
    fn duplicate_product_line() {
        let text = "dim_even 3\ndim_odd 0\nprod x1 x1 = x2\nprod x1 x1 = x3\n";
        assert_eq!(
            parse_algebra(text).unwrap_err(),
            ParseError::Duplicate {
                line: 4,
                first: 3,
                left: "x1".into(),
                right: "x1".into(),
            }
        );
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(
            parse_algebra("dim_even 2\ndim_odd 0\nprod x1 = x2\n").unwrap_err(),
            ParseError::Syntax { line: 3, .. }
        ));
        assert!(matches!(
            parse_algebra("dim_odd 2\n").unwrap_err(),
            ParseError::Syntax { line: 1, .. }
        ));
        assert!(matches!(
            parse_algebra("dim_even 2\ndim_odd 0\nprod x1 x1 = 1/0 x2\n").unwrap_err(),
            ParseError::Syntax { line: 3, .. }
        ));
        assert!(matches!(
            parse_algebra("dim_even 2\n").unwrap_err(),
            ParseError::Syntax { .. }
        ));
    }

    #[test]
    fn rational_coefficients() {
        let text = "dim_even 3\ndim_odd 0\nprod x1 x1 = -1/2 x2 + 2 x3\n";
        let a = parse_algebra(text).unwrap();
        assert_eq!(a.product(0, 0)[1], ratio(-1, 2));
        assert_eq!(a.product(0, 0)[2], rat(2));
    }

    #[test]
    fn dump_contains_pinned_line() {
        let a = build_remark21(3, 4).unwrap();
        let dump = dump_algebra(&a);
        assert!(dump.contains("prod x1 y1 = 1/2 y2"), "{dump}");
        assert_eq!(parse_algebra(&dump).unwrap(), a);
    }

    #[test]
    fn dump_of_abelian_is_header_only() {
        let a: SuperAlgebra<Rat> = SuperAlgebra::abelian(2, 1);
        assert_eq!(dump_algebra(&a), "dim_even 2\ndim_odd 1\n");
    }

    proptest! {
        #[test]
        fn round_trip_on_random_valid_tables(
            n in 1usize..4,
            m in 0usize..4,
            entries in proptest::collection::vec(
                (0usize..6, 0usize..6, -3i64..=3, 1i64..=3, 0usize..6), 0..10),
        ) {
            let d = n + m;
            let mut products: Vec<(usize, usize, Vec<Rat>)> = Vec::new();
            let mut used = std::collections::HashSet::new();
            for (i, j, p, q, k) in entries {
                let (i, j, k) = (i % d, j % d, k % d);
                if !used.insert((i, j)) {
                    continue;
                }
                // force the target into the graded component
                let parity = (usize::from(i >= n) + usize::from(j >= n)) % 2;
                let k = if usize::from(k >= n) == parity {
                    k
                } else if parity == 0 {
                    k % n
                } else if m > 0 {
                    n + (k % m)
                } else {
                    continue;
                };
                let mut coeffs = vec![Rat::zero(); d];
                coeffs[k] = ratio(p, q);
                products.push((i, j, coeffs));
            }
            let a = SuperAlgebra::from_products(n, m, &products).unwrap();
            let round = parse_algebra(&dump_algebra(&a)).unwrap();
            prop_assert_eq!(round, a);
        }
    }
}
