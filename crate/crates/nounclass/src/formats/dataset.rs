//! Dataset files: a `lemma<TAB>label<TAB>group...` header, then one row per
//! noun with label `1`, `0` or `?` and six-decimal feature values.

use nounclass_core::{Dataset, FeatureVector, Label, Row};

use crate::error::ParseError;

pub fn serialize_dataset(data: &Dataset) -> String {
    let mut out = String::from("lemma\tlabel");
    for g in data.groups() {
        out.push('\t');
        out.push_str(g);
    }
    out.push('\n');
    for row in data.rows() {
        out.push_str(&row.vector.lemma);
        out.push('\t');
        out.push(row.label.map_or('?', Label::as_char));
        for v in &row.vector.values {
            // exact ties round to even
            out.push_str(&format!("\t{v:.6}"));
        }
        out.push('\n');
    }
    out
}

/// A row is marked seen when any of its values is non-zero; a seen noun with
/// no cue hits reads back as unseen.
pub fn parse_dataset(text: &str) -> Result<Dataset, ParseError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'));
    let (_, header) = lines.next().ok_or_else(|| ParseError::new(1, "missing header"))?;
    let cols: Vec<&str> = header.split('\t').collect();
    if cols.len() < 2 || cols[0] != "lemma" || cols[1] != "label" {
        return Err(ParseError::new(1, "header must start with `lemma<TAB>label`"));
    }
    let groups: Vec<String> = cols[2..].iter().map(|s| s.to_string()).collect();
    let mut rows = Vec::new();
    for (i, line) in lines {
        let err = |m: String| ParseError::new(i + 1, m);
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != cols.len() {
            return Err(err(format!("expected {} fields, found {}", cols.len(), fields.len())));
        }
        let label = match fields[1] {
            "1" => Some(Label::Member),
            "0" => Some(Label::Nonmember),
            "?" => None,
            other => return Err(err(format!("label must be 1, 0 or ?, found `{other}`"))),
        };
        let values = fields[2..]
            .iter()
            .map(|f| f.parse::<f64>().map_err(|_| err(format!("bad value `{f}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        let seen = values.iter().any(|&v| v != 0.0);
        rows.push(Row {
            vector: FeatureVector { lemma: fields[0].to_string(), values, seen },
            label,
        });
    }
    let last = text.lines().count();
    Dataset::new(groups, rows).map_err(|e| ParseError::new(last, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TEXT: &str = "lemma\tlabel\tat_X\tsuffix\ncity\t1\t0.250000\t0.000000\nsky\t0\t0.007812\t1.000000\nthing\t?\t0.000000\t0.000000\n";

    #[test]
    fn round_trip() {
        let d = parse_dataset(TEXT).unwrap();
        assert_eq!(d.len(), 3);
        assert_eq!(d.rows()[2].label, None);
        assert!(!d.rows()[2].vector.seen);
        assert_eq!(serialize_dataset(&d), TEXT);
        assert_eq!(parse_dataset(&serialize_dataset(&d)).unwrap(), d);
    }

    #[test]
    fn six_decimals_half_even() {
        let rows = [1.0 / 128.0, 3.0 / 128.0, 1.0 / 3.0]
            .iter()
            .enumerate()
            .map(|(i, &v)| Row {
                vector: FeatureVector { lemma: format!("w{i}"), values: vec![v], seen: true },
                label: Some(Label::Member),
            })
            .collect();
        let d = Dataset::new(vec!["g".into()], rows).unwrap();
        let text = serialize_dataset(&d);
        // 0.0078125 and 0.0234375 are exact binary ties at the sixth decimal
        assert!(text.contains("w0\t1\t0.007812\n"), "{text}");
        assert!(text.contains("w1\t1\t0.023438\n"), "{text}");
        assert!(text.contains("w2\t1\t0.333333\n"), "{text}");
    }

    #[test]
    fn errors_point_at_lines() {
        assert_eq!(parse_dataset("lemma\tlabel\tg\ncity\t2\t0.1\n").unwrap_err().line, 2);
        assert_eq!(parse_dataset("lemma\tlabel\tg\ncity\t1\n").unwrap_err().line, 2);
        assert_eq!(parse_dataset("lemma\tlabel\tg\ncity\t1\tx\n").unwrap_err().line, 2);
        assert_eq!(parse_dataset("word\tlabel\n").unwrap_err().line, 1);
        assert!(parse_dataset("lemma\tlabel\tg\na\t1\t0.1\na\t0\t0.2\n").is_err());
        assert!(parse_dataset("lemma\tlabel\tg\na\t1\t1.5\n").is_err());
    }
}
