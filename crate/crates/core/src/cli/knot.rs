use crate::error::{Error, Result};
use crate::knot_words::KnotSpec;

const SUPPORTED: &str = "supported families: C(2m,-2n), C(2m+1,2n), C(2m+1,-2n) with m, n >= 1";

/// Parses Conway notation `C(k,l)` into one of the supported families.
///
/// Mirror images are reported, never applied: mirroring flips slope signs.
pub fn parse_knot(text: &str) -> Result<KnotSpec> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = compact
        .strip_prefix("C(")
        .or_else(|| compact.strip_prefix("c("))
        .and_then(|rest| rest.strip_suffix(')'))
        .ok_or_else(|| Error::InvalidInput(format!("expected C(k,l), got {text:?}")))?;
    let (k, l) = inner
        .split_once(',')
        .ok_or_else(|| Error::InvalidInput(format!("expected C(k,l), got {text:?}")))?;
    let parse = |v: &str| {
        v.parse::<i64>()
            .map_err(|_| Error::InvalidInput(format!("{v:?} is not an integer in {text:?}")))
    };
    let (k, l) = (parse(k)?, parse(l)?);
    let kl = k.checked_mul(l).ok_or_else(|| Error::InvalidInput("C(k,l) too large".into()))?;
    if kl.abs() < 3 {
        return Err(Error::InvalidInput(format!("C({k},{l}) needs |kl| >= 3")));
    }
    if kl % 2 != 0 {
        return Err(Error::InvalidInput(format!("C({k},{l}) is a two-component link, not a knot")));
    }
    let to_u32 = |v: i64| {
        u32::try_from(v).map_err(|_| Error::InvalidInput(format!("C({k},{l}) is too large")))
    };
    match (k > 0, k % 2 == 0, l % 2 == 0, l > 0) {
        (true, true, true, false) => KnotSpec::even_minus(to_u32(k / 2)?, to_u32(-l / 2)?),
        (true, false, true, _) if k >= 3 => {
            let (m, n) = (to_u32((k - 1) / 2)?, to_u32(l.abs() / 2)?);
            if l > 0 {
                KnotSpec::odd_plus(m, n)
            } else {
                KnotSpec::odd_minus(m, n)
            }
        }
        (true, true, true, true) => Err(Error::UnsupportedFamily(format!(
            "C({k},{l}) is of the form C(2m,2n), which these curves do not cover; {SUPPORTED}"
        ))),
        (true, false, true, _) => Err(Error::UnsupportedFamily(format!(
            "C({k},{l}) has k = 1; {SUPPORTED}"
        ))),
        _ => {
            let mirror = [(l, k), (-k, -l)]
                .into_iter()
                .find(|&(a, b)| a > 0 && b % 2 == 0)
                .map(|(a, b)| format!("; it is the mirror image of C({a},{b}), but mirroring flips slope signs and is not applied"))
                .unwrap_or_default();
            Err(Error::UnsupportedFamily(format!(
                "C({k},{l}) is not in normal form (k > 0, l even){mirror}; {SUPPORTED}"
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot_words::Family;

    #[test]
    fn supported_forms() {
        let k = parse_knot("C(2,-2)").unwrap();
        assert_eq!((k.family, k.m, k.n), (Family::EvenMinus, 1, 1));
        let k = parse_knot(" C( 3 , 4 ) ").unwrap();
        assert_eq!((k.family, k.m, k.n), (Family::OddPlus, 1, 2));
        let k = parse_knot("C(5,-6)").unwrap();
        assert_eq!((k.family, k.m, k.n), (Family::OddMinus, 2, 3));
        assert_eq!(parse_knot("C(7,-2)").unwrap().family, Family::OddMinus);
    }

    #[test]
    fn rejected_forms() {
        assert!(matches!(parse_knot("C(4,6)"), Err(Error::UnsupportedFamily(_))));
        assert!(matches!(parse_knot("C(3,5)"), Err(Error::InvalidInput(_))));
        assert!(matches!(parse_knot("C(1,2)"), Err(Error::InvalidInput(_))));
        assert!(matches!(parse_knot("C(1,4)"), Err(Error::UnsupportedFamily(_))));
        match parse_knot("C(-2,2)") {
            Err(Error::UnsupportedFamily(msg)) => assert!(msg.contains("mirror")),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_knot("C(4,3)"), Err(Error::UnsupportedFamily(_))));
        assert!(parse_knot("K(2,-2)").is_err());
        assert!(parse_knot("C(2;-2)").is_err());
        assert!(parse_knot("C(a,-2)").is_err());
    }
}
