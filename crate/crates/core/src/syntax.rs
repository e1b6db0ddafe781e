//! Text syntax: monomials as `x1^2*x3` (or `1`), ideals as `[x1^2*x3, t^2]`.

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::ring::RingContext;

pub fn parse_monomial(ring: &RingContext, text: &str) -> Result<Monomial> {
    parse_monomial_at(ring, text, 0)
}

fn parse_monomial_at(ring: &RingContext, text: &str, base: usize) -> Result<Monomial> {
    let mut exps = vec![0u32; ring.nvars()];
    let trimmed = text.trim();
    let lead = base + (text.len() - text.trim_start().len());
    if trimmed.is_empty() {
        return Err(Error::Parse {
            offset: lead,
            message: "empty monomial".into(),
        });
    }
    if trimmed == "1" {
        return Ok(Monomial::new(exps));
    }
    let mut offset = lead;
    for factor in trimmed.split('*') {
        let f = factor.trim();
        let (name, power) = match f.split_once('^') {
            Some((name, p)) => {
                let p: u32 = p.trim().parse().map_err(|_| Error::Parse {
                    offset,
                    message: format!("bad exponent in {f:?}"),
                })?;
                (name.trim(), p)
            }
            None => (f, 1),
        };
        let idx = ring.index_of(name).ok_or_else(|| Error::Parse {
            offset,
            message: format!("unknown variable {name:?}"),
        })?;
        exps[idx] = exps[idx]
            .checked_add(power)
            .ok_or(Error::ExponentOverflow { var: idx })?;
        offset += factor.len() + 1;
    }
    Ok(Monomial::new(exps))
}

pub fn parse_ideal(ring: &RingContext, text: &str) -> Result<MonomialIdeal> {
    let t = text.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .unwrap_or(t);
    let base = text.find(inner).unwrap_or(0);
    if inner.trim().is_empty() {
        return Ok(MonomialIdeal::zero(ring.nvars()));
    }
    let mut gens = Vec::new();
    let mut offset = base;
    for piece in inner.split(',') {
        gens.push(parse_monomial_at(ring, piece, offset)?);
        offset += piece.len() + 1;
    }
    MonomialIdeal::new(ring.nvars(), gens)
}

pub fn format_monomial(ring: &RingContext, m: &Monomial) -> String {
    let parts: Vec<String> = m
        .exps()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                ring.name(i).to_string()
            } else {
                format!("{}^{}", ring.name(i), e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

pub fn format_ideal(ring: &RingContext, ideal: &MonomialIdeal) -> String {
    let gens: Vec<String> = ideal.gens().iter().map(|g| format_monomial(ring, g)).collect();
    format!("[{}]", gens.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_and_prints() {
        let r = RingContext::parse_spec("x1..x3", 0).unwrap();
        let m = parse_monomial(&r, "x1^2*x3").unwrap();
        assert_eq!(m.exps(), &[2, 0, 1]);
        assert_eq!(format_monomial(&r, &m), "x1^2*x3");
        let i = parse_ideal(&r, "[x1^2*x3, x2^2, x1^3*x3]").unwrap();
        assert_eq!(format_ideal(&r, &i), "[x2^2, x1^2*x3]");
        assert!(parse_ideal(&r, "[]").unwrap().is_zero());
        assert!(parse_ideal(&r, "[1]").unwrap().is_unit());
    }

    #[test]
    fn reports_unknown_variables() {
        let r = RingContext::from_letters("xy").unwrap();
        match parse_ideal(&r, "[x, q^2]") {
            Err(Error::Parse { message, .. }) => assert!(message.contains("q")),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_monomial(&r, "x^").is_err());
    }

    proptest! {
        #[test]
        fn text_round_trip(gens in prop::collection::vec(prop::collection::vec(0u32..4, 4), 0..6)) {
            let r = RingContext::from_letters("xyzt").unwrap();
            let ideal = MonomialIdeal::new(4, gens.into_iter().map(Monomial::new).collect()).unwrap();
            let text = format_ideal(&r, &ideal);
            prop_assert_eq!(parse_ideal(&r, &text).unwrap(), ideal);
        }
    }
}
