//! Compact textual polynomial descriptions for the command line.
//!
//! - `coeffs:c0,c1,...`: ascending coefficients, formal degree = count − 1
//! - `roots:r1,r2,...[;n]`: monic with the given roots, optional formal degree `n`
//! - `laguerre:n:λ`, `cosine:n`, `hyper:n:b1,b2:a1` (empty lists allowed)
//! - a JSON object `{"formal_degree": n, "coeffs": [...]}`

use crate::error::{Error, Result};
use crate::families::{cosine_appell, hypergeometric, laguerre};
use crate::poly::FormalPolynomial;
use crate::rational::{self, Rational};

fn list(s: &str) -> Result<Vec<Rational>> {
    s.split(',').filter(|x| !x.trim().is_empty()).map(rational::parse).collect()
}

fn degree(s: &str) -> Result<usize> {
    s.trim().parse().map_err(|e| Error::Parse(format!("degree {s:?}: {e}")))
}

pub fn parse_polynomial(spec: &str) -> Result<FormalPolynomial> {
    let spec = spec.trim();
    if spec.starts_with('{') {
        return serde_json::from_str(spec).map_err(|e| Error::Parse(e.to_string()));
    }
    let (head, rest) = spec.split_once(':').ok_or_else(|| Error::Parse(format!("no family prefix in {spec:?}")))?;
    let parts: Vec<&str> = rest.split(':').collect();
    let arity = |k: usize| {
        if parts.len() == k {
            Ok(())
        } else {
            Err(Error::Parse(format!("{head} takes {k} field(s), got {}", parts.len())))
        }
    };
    match head {
        "coeffs" => FormalPolynomial::from_coeffs(&list(rest)?),
        "roots" => {
            let (roots, n) = match rest.split_once(';') {
                Some((r, n)) => (list(r)?, Some(degree(n)?)),
                None => (list(rest)?, None),
            };
            let n = n.unwrap_or(roots.len());
            FormalPolynomial::from_roots(&roots, n)
        }
        "laguerre" => {
            arity(2)?;
            laguerre(degree(parts[0])?, &rational::parse(parts[1])?)
        }
        "cosine" => {
            arity(1)?;
            Ok(cosine_appell(degree(parts[0])?))
        }
        "hyper" => {
            arity(3)?;
            hypergeometric(degree(parts[0])?, &list(parts[1])?, &list(parts[2])?)
        }
        _ => Err(Error::Parse(format!("unknown polynomial family {head:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn forms() {
        assert_eq!(parse_polynomial("coeffs:-1,0,1").unwrap(), FormalPolynomial::from_i64(&[-1, 0, 1]));
        let p = parse_polynomial("roots:1,-1;4").unwrap();
        assert_eq!(p.formal_degree(), 4);
        assert_eq!(p.precise_degree(), Some(2));
        assert_eq!(parse_polynomial("laguerre:3:2").unwrap(), laguerre(3, &int(2)).unwrap());
        assert_eq!(parse_polynomial("hyper:3:2:").unwrap(), laguerre(3, &int(2)).unwrap());
        let json = serde_json::to_string(&cosine_appell(5)).unwrap();
        assert_eq!(parse_polynomial(&json).unwrap(), cosine_appell(5));
        assert!(parse_polynomial("bessel:3").is_err());
        assert!(parse_polynomial("laguerre:3").is_err());
    }
}
