//! Parsers for the textual forms accepted on the command line.

use lamcf::cf::RegularCf;
use lamcf::gl2::IntMat2;
use lamcf::json::{cf_from_json, matrix_from_json, surd_from_json};
use lamcf::{BigInt, Cf, Error, Mat2, Rational, Result, Surd};
use num_traits::Zero;
use serde_json::Value;

fn parse_int(s: &str) -> Result<BigInt> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("not an integer: {:?}", s.trim())))
}

fn parse_json(s: &str) -> Result<Value> {
    serde_json::from_str(s).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))
}

/// `a,b,c,d`, `[a,b,c,d]` or a matrix JSON object.
pub fn parse_matrix(s: &str) -> Result<Mat2> {
    let s = s.trim();
    if s.starts_with('{') {
        return matrix_from_json(&parse_json(s)?);
    }
    let body = s
        .strip_prefix('[')
        .and_then(|b| b.strip_suffix(']'))
        .unwrap_or(s);
    let entries: Vec<BigInt> = body.split(',').map(parse_int).collect::<Result<_>>()?;
    match <[BigInt; 4]>::try_from(entries) {
        Ok([a, b, c, d]) => IntMat2::new(a, b, c, d),
        Err(v) => Err(Error::Parse(format!(
            "a matrix needs 4 entries, got {}",
            v.len()
        ))),
    }
}

/// A fraction as JSON, as its display form (`[1, (2)]`, `[2, 5, …]`) or
/// as a plain comma-separated finite list.
pub fn parse_cf(s: &str) -> Result<Cf> {
    let s = s.trim();
    if s.starts_with('{') {
        return cf_from_json(&parse_json(s)?);
    }
    let body = s
        .strip_prefix('[')
        .and_then(|b| b.strip_suffix(']'))
        .unwrap_or(s)
        .trim();
    let (body, open) = match body.strip_suffix('…').or_else(|| body.strip_suffix("...")) {
        Some(rest) => (rest.trim_end().trim_end_matches(',').trim_end(), true),
        None => (body, false),
    };
    if let Some(start) = body.find('(') {
        let end = body
            .rfind(')')
            .filter(|&e| e == body.len() - 1 && e > start);
        let end = end.ok_or_else(|| Error::Parse(format!("unbalanced period in {s:?}")))?;
        if open {
            return Err(Error::Parse(
                "a periodic fraction cannot be open-ended".into(),
            ));
        }
        let prefix = split_terms(body[..start].trim_end().trim_end_matches(','))?;
        let period = split_terms(&body[start + 1..end])?;
        return RegularCf::periodic(prefix, period);
    }
    let terms = split_terms(body)?;
    if open {
        RegularCf::prefix_only(terms)
    } else {
        RegularCf::finite(terms)
    }
}

fn split_terms(s: &str) -> Result<Vec<BigInt>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_int).collect()
}

/// A number to expand: `p/q`, an integer, a surd such as `sqrt(2)` or
/// `(1 + 1*sqrt(5))/2`, or a surd JSON object.
pub enum Expandable {
    Rational(Rational),
    Surd(Surd),
}

pub fn parse_expandable(s: &str) -> Result<Expandable> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.starts_with('{') {
        return surd_from_json(&parse_json(&t)?).map(Expandable::Surd);
    }
    if t.contains("sqrt(") {
        return parse_surd(&t).map(Expandable::Surd);
    }
    let (num, den) = t.split_once('/').unwrap_or((&t, "1"));
    let den = parse_int(den)?;
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Expandable::Rational(Rational::new(parse_int(num)?, den)))
}

// `[(]p ± q*sqrt(D)[)/r]` with every piece optional except the radical
fn parse_surd(t: &str) -> Result<Surd> {
    let bad = || Error::Parse(format!("not a quadratic surd: {t:?}"));
    let (body, r) = match t.rsplit_once(")/") {
        Some((body, r)) if body.starts_with('(') => (&body[1..], parse_int(r)?),
        _ => (t, BigInt::from(1)),
    };
    let start = body.find("sqrt(").ok_or_else(bad)?;
    let radicand = body[start + 5..].strip_suffix(')').ok_or_else(bad)?;
    let d = parse_int(radicand)?;
    let coeffs = body[..start].strip_suffix('*').unwrap_or(&body[..start]);
    // split p from q at the last sign that follows a digit
    let split = coeffs
        .char_indices()
        .filter(|&(i, c)| {
            i > 0 && (c == '+' || c == '-') && coeffs.as_bytes()[i - 1].is_ascii_digit()
        })
        .map(|(i, _)| i)
        .next_back();
    let (p, q) = match split {
        Some(i) => (parse_int(&coeffs[..i])?, signed_coefficient(&coeffs[i..])?),
        None => (BigInt::zero(), signed_coefficient(coeffs)?),
    };
    Surd::new(p, q, r, d)
}

fn signed_coefficient(s: &str) -> Result<BigInt> {
    let s = s.strip_prefix('+').unwrap_or(s);
    match s {
        "" => Ok(BigInt::from(1)),
        "-" => Ok(BigInt::from(-1)),
        _ => parse_int(s),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn matrices() {
        let m = parse_matrix("2,3,1,2").unwrap();
        assert_eq!(m, Mat2::from_i64(2, 3, 1, 2).unwrap());
        assert_eq!(parse_matrix("[2, 3, 1, 2]").unwrap(), m);
        assert_eq!(
            parse_matrix(r#"{"a":"2","b":"3","c":"1","d":"2"}"#).unwrap(),
            m
        );
        assert_eq!(parse_matrix("1,2,3").unwrap_err().code(), "Parse");
        assert_eq!(parse_matrix("2,2,1,2").unwrap_err().code(), "NotUnimodular");
    }

    #[test]
    fn fractions() {
        assert_eq!(
            parse_cf("3,7,16").unwrap(),
            RegularCf::finite(b(&[3, 7, 16])).unwrap()
        );
        assert_eq!(
            parse_cf("[1, (2)]").unwrap(),
            RegularCf::periodic(b(&[1]), b(&[2])).unwrap()
        );
        assert_eq!(
            parse_cf("[(1)]").unwrap(),
            RegularCf::periodic(vec![], b(&[1])).unwrap()
        );
        assert_eq!(
            parse_cf("[2, 5, …]").unwrap(),
            RegularCf::prefix_only(b(&[2, 5])).unwrap()
        );
        assert_eq!(
            parse_cf("2,5,...").unwrap(),
            RegularCf::prefix_only(b(&[2, 5])).unwrap()
        );
        assert_eq!(
            parse_cf(r#"{"prefix":[1],"period":[2]}"#).unwrap(),
            parse_cf("[1, (2)]").unwrap()
        );
        assert!(parse_cf("[1, (2]").is_err());
        assert!(parse_cf("1,x").is_err());
        for text in ["[3, 7, 16]", "[1, (2)]", "[(1)]", "[2, 5, …]"] {
            assert_eq!(parse_cf(text).unwrap().to_string(), text);
        }
    }

    #[test]
    fn expandables() {
        let Expandable::Rational(r) = parse_expandable("355/113").unwrap() else {
            panic!()
        };
        assert_eq!(r, Rational::new(355.into(), 113.into()));
        let Expandable::Surd(s) = parse_expandable("sqrt(2)").unwrap() else {
            panic!()
        };
        assert_eq!(s, Surd::sqrt(2.into()).unwrap());
        let golden = Surd::new(1.into(), 1.into(), 2.into(), 5.into()).unwrap();
        for text in ["(1 + sqrt(5))/2", "(1+1*sqrt(5))/2", &golden.to_string()] {
            let Expandable::Surd(s) = parse_expandable(text).unwrap() else {
                panic!()
            };
            assert_eq!(s, golden);
        }
        let Expandable::Surd(s) = parse_expandable("(1 + -2*sqrt(3))/5").unwrap() else {
            panic!()
        };
        assert_eq!(
            s,
            Surd::new(1.into(), (-2).into(), 5.into(), 3.into()).unwrap()
        );
        let Expandable::Surd(s) = parse_expandable("-3-sqrt(7)").unwrap() else {
            panic!()
        };
        assert_eq!(
            s,
            Surd::new((-3).into(), (-1).into(), 1.into(), 7.into()).unwrap()
        );
        assert!(matches!(
            parse_expandable("1/0"),
            Err(Error::ZeroDenominator)
        ));
        assert!(matches!(
            parse_expandable("sqrt(4)"),
            Err(Error::NotIrrational)
        ));
    }
}
