//! Planting rates for the synthetic corpus: `group<TAB>member<TAB>nonmember`.

use nounclass_core::SynthGroup;

use crate::error::ParseError;

pub fn parse_rates(text: &str) -> Result<Vec<SynthGroup>, ParseError> {
    let mut out: Vec<SynthGroup> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end();
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |m: String| ParseError::new(i + 1, m);
        let fields: Vec<&str> = line.split('\t').collect();
        let [group, member, nonmember] = fields[..] else {
            return Err(err(format!("expected 3 tab-separated fields, found {}", fields.len())));
        };
        let rate = |s: &str| match s.parse::<f64>() {
            Ok(r) if (0.0..=1.0).contains(&r) => Ok(r),
            _ => Err(err(format!("rate must be a number in [0, 1], found `{s}`"))),
        };
        if out.iter().any(|g| g.group == group) {
            return Err(err(format!("duplicate group `{group}`")));
        }
        out.push(SynthGroup { group: group.to_string(), member_rate: rate(member)?, nonmember_rate: rate(nonmember)? });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_exponents_and_comments() {
        let r = parse_rates("# group\tmember\tnonmember\nat_X\t0.02491\t0.00405\nalong_X\t0.00091\t5e-5\n").unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r[1].nonmember_rate, 5e-5);
    }

    #[test]
    fn rejects_bad_rows() {
        assert_eq!(parse_rates("a\t0.1\n").unwrap_err().line, 1);
        assert_eq!(parse_rates("a\t0.1\t0.2\nb\t1.2\t0\n").unwrap_err().line, 2);
        assert_eq!(parse_rates("a\t0.1\t0.2\na\t0.1\t0.2\n").unwrap_err().line, 2);
    }
}
