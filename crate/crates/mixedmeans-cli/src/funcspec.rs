//! The `--f` mini-language: named builtins, simple monomial-sum
//! expressions like `z+0.5*z^2`, or a comma-separated coefficient list.

use num_complex::Complex64;

use mixedmeans::PowerSeries;

/// Parses a function specification. Accepted forms:
///
/// * named builtins: `identity`, `paper_area_example`,
///   `paper_length_example`, `monomial:N`;
/// * sums of real-coefficient monomials: `z`, `z+0.5*z^2`, `8+12*z+6*z^2+z^3`;
/// * comma-separated coefficients, real (`0,1,0.5`) or complex (`1+2i`).
pub fn parse_function(spec: &str) -> Result<PowerSeries, String> {
    let spec = spec.trim();
    match spec {
        "identity" => return Ok(PowerSeries::from_real(&[0.0, 1.0]).unwrap()),
        "paper_area_example" => return Ok(PowerSeries::from_real(&[0.0, 1.0, 0.5]).unwrap()),
        "paper_length_example" => return Ok(PowerSeries::from_real(&[8.0, 12.0, 6.0, 1.0]).unwrap()),
        _ => {}
    }
    if let Some(rest) = spec.strip_prefix("monomial:") {
        let n: usize = rest
            .parse()
            .map_err(|_| format!("bad monomial exponent {rest:?}"))?;
        if n == 0 {
            return Err("monomial exponent must be >= 1".into());
        }
        return PowerSeries::monomial(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), n)
            .map_err(|e| e.to_string());
    }
    if spec.contains(',') {
        let coeffs = spec
            .split(',')
            .map(|t| parse_complex(t.trim()))
            .collect::<Result<Vec<_>, _>>()?;
        return PowerSeries::new(coeffs).map_err(|e| e.to_string());
    }
    if spec.contains('z') {
        return parse_monomial_sum(spec);
    }
    // A single number is a constant map.
    let c = parse_complex(spec)?;
    PowerSeries::new(vec![c]).map_err(|e| e.to_string())
}

fn parse_complex(token: &str) -> Result<Complex64, String> {
    let token = token.trim();
    if token.is_empty() {
        return Err("empty coefficient".into());
    }
    if let Ok(re) = token.parse::<f64>() {
        return Ok(Complex64::new(re, 0.0));
    }
    if let Some(body) = token.strip_suffix('i') {
        // Pure imaginary, or a+bi / a-bi with the split at the last sign.
        if let Ok(im) = parse_signed_or_unit(body) {
            return Ok(Complex64::new(0.0, im));
        }
        for (idx, ch) in body.char_indices().rev() {
            if (ch == '+' || ch == '-') && idx > 0 {
                let (re_part, im_part) = body.split_at(idx);
                let re = re_part.parse::<f64>().map_err(|_| format!("bad coefficient {token:?}"))?;
                let im = parse_signed_or_unit(im_part)?;
                return Ok(Complex64::new(re, im));
            }
        }
    }
    Err(format!("bad coefficient {token:?}"))
}

fn parse_signed_or_unit(s: &str) -> Result<f64, String> {
    match s {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => s.parse::<f64>().map_err(|_| format!("bad number {s:?}")),
    }
}

/// Sums of terms `[coef*]z[^k]` and constants, joined by `+`/`-`.
fn parse_monomial_sum(spec: &str) -> Result<PowerSeries, String> {
    let cleaned: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    let mut terms: Vec<(f64, usize)> = Vec::new();
    let mut start = 0usize;
    let bytes = cleaned.as_bytes();
    for i in 1..=bytes.len() {
        if i == bytes.len() || (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'e' && bytes[i - 1] != b'E' {
            let term = &cleaned[start..i];
            if !term.is_empty() {
                terms.push(parse_term(term)?);
            }
            start = i;
        }
    }
    if terms.is_empty() {
        return Err(format!("no terms in {spec:?}"));
    }
    let order = terms.iter().map(|&(_, k)| k).max().unwrap();
    let mut coeffs = vec![0.0f64; order + 1];
    for (c, k) in terms {
        coeffs[k] += c;
    }
    PowerSeries::from_real(&coeffs).map_err(|e| e.to_string())
}

fn parse_term(term: &str) -> Result<(f64, usize), String> {
    let (sign, body) = match term.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, term.strip_prefix('+').unwrap_or(term)),
    };
    if let Some(z_pos) = body.find('z') {
        let coef_part = &body[..z_pos];
        let pow_part = &body[z_pos + 1..];
        let coef = match coef_part.strip_suffix('*') {
            Some(num) => num.parse::<f64>().map_err(|_| format!("bad coefficient in {term:?}"))?,
            None if coef_part.is_empty() => 1.0,
            None => coef_part.parse::<f64>().map_err(|_| format!("bad coefficient in {term:?}"))?,
        };
        let power = match pow_part.strip_prefix('^') {
            Some(p) => p.parse::<usize>().map_err(|_| format!("bad power in {term:?}"))?,
            None if pow_part.is_empty() => 1,
            None => return Err(format!("unexpected trailing {pow_part:?} in {term:?}")),
        };
        Ok((sign * coef, power))
    } else {
        let c = body.parse::<f64>().map_err(|_| format!("bad constant term {term:?}"))?;
        Ok((sign * c, 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(s: &str) -> Vec<f64> {
        parse_function(s).unwrap().coeffs().iter().map(|c| c.re).collect()
    }

    #[test]
    fn builtins() {
        assert_eq!(coeffs("identity"), vec![0.0, 1.0]);
        assert_eq!(coeffs("paper_area_example"), vec![0.0, 1.0, 0.5]);
        assert_eq!(coeffs("paper_length_example"), vec![8.0, 12.0, 6.0, 1.0]);
        assert_eq!(coeffs("monomial:3"), vec![0.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn expressions() {
        assert_eq!(coeffs("z"), vec![0.0, 1.0]);
        assert_eq!(coeffs("z+0.5*z^2"), vec![0.0, 1.0, 0.5]);
        assert_eq!(coeffs("8+12*z+6*z^2+z^3"), vec![8.0, 12.0, 6.0, 1.0]);
        assert_eq!(coeffs("z-2*z^4"), vec![0.0, 1.0, 0.0, 0.0, -2.0]);
        assert_eq!(coeffs("2"), vec![2.0]);
    }

    #[test]
    fn coefficient_lists() {
        assert_eq!(coeffs("0,1,0.5"), vec![0.0, 1.0, 0.5]);
        let f = parse_function("0, 1+2i, 3i").unwrap();
        assert_eq!(f.coeff(1), num_complex::Complex64::new(1.0, 2.0));
        assert_eq!(f.coeff(2), num_complex::Complex64::new(0.0, 3.0));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_function("").is_err());
        assert!(parse_function("z*z").is_err());
        assert!(parse_function("monomial:0").is_err());
        assert!(parse_function("1,frog").is_err());
    }
}
