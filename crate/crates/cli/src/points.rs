//! Point lists such as `(2,0) (-1,1)`, separated by whitespace or commas.

use crate::error::CliError;

fn err(text: &str, offset: usize, msg: &str) -> CliError {
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    CliError::Parse(format!("line {line}, column {column}: {msg}"))
}

pub fn parse_points(text: &str) -> Result<Vec<Vec<i64>>, CliError> {
    let bytes = text.as_bytes();
    let mut points: Vec<Vec<i64>> = Vec::new();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && (bytes[*i].is_ascii_whitespace() || bytes[*i] == b',') {
            *i += 1;
        }
    };
    loop {
        skip_ws(&mut i);
        if i == bytes.len() {
            break;
        }
        if bytes[i] != b'(' {
            return Err(err(text, i, "expected `(`"));
        }
        i += 1;
        let mut coords = Vec::new();
        loop {
            while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                i += 1;
            }
            let start = i;
            if i < bytes.len() && (bytes[i] == b'-' || bytes[i] == b'+') {
                i += 1;
            }
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let num = text[start..i].parse::<i64>().map_err(|_| err(text, start, "expected an integer"))?;
            coords.push(num);
            while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                i += 1;
            }
            match bytes.get(i) {
                Some(b',') => i += 1,
                Some(b')') => {
                    i += 1;
                    break;
                }
                _ => return Err(err(text, i.min(text.len()), "expected `,` or `)`")),
            }
        }
        if let Some(first) = points.first() {
            if first.len() != coords.len() {
                return Err(err(
                    text,
                    i - 1,
                    &format!("point has {} coordinates, expected {}", coords.len(), first.len()),
                ));
            }
        }
        points.push(coords);
    }
    Ok(points)
}

pub fn format_point(p: &[i64]) -> String {
    let inner: Vec<String> = p.iter().map(i64::to_string).collect();
    format!("({})", inner.join(","))
}
