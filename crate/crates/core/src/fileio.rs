//! Line-oriented text formats for codes, frames, and messages.
//!
//! Code file: a header line `q p e k delta mu construction`, then
//! (mu+1)*k rows of n base-10 phi-indices, G_0 first. Frame file: one frame
//! per line, N*n indices space-separated. Message file: N-mu lines of k
//! indices. All values are phi-indices; the formats are whitespace-exact on
//! write and whitespace-tolerant on read.

use crate::conv::{Construction, ConvolutionalCode};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::frame::Frame;
use crate::matrix::FqMatrix;
use std::fmt::Write as _;
use std::sync::Arc;

fn parse_numbers(line: &str) -> Result<Vec<u64>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<u64>()
                .map_err(|e| Error::Parse(format!("'{tok}': {e}")))
        })
        .collect()
}

pub fn write_code(code: &ConvolutionalCode) -> String {
    let f = code.field();
    let mut out = String::new();
    writeln!(
        out,
        "{} {} {} {} {} {} {}",
        f.q,
        f.p,
        f.e,
        code.k(),
        code.delta(),
        code.mu(),
        code.construction().tag()
    )
    .unwrap();
    for i in 0..=code.mu() {
        let g = code.coeff(i);
        for r in 0..g.rows() {
            let row: Vec<String> = g.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(out, "{}", row.join(" ")).unwrap();
        }
    }
    out
}

pub fn read_code(text: &str) -> Result<ConvolutionalCode> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = parse_numbers(
        lines
            .next()
            .ok_or_else(|| Error::Parse("empty code file".into()))?,
    )?;
    let [q, p, e, k, delta, mu, tag] = header[..] else {
        return Err(Error::Parse(
            "header must be: q p e k delta mu construction".into(),
        ));
    };
    let field = Arc::new(FieldSpec::for_size(q)?);
    if field.p != p || field.e as u64 != e {
        return Err(Error::Parse(format!(
            "header claims GF({p}^{e}), but q={q}"
        )));
    }
    let construction = Construction::from_tag(tag as u8)?;
    let (k, delta, mu) = (k as usize, delta as usize, mu as usize);
    let mut numbers: Vec<u64> = Vec::new();
    for line in lines {
        numbers.extend(parse_numbers(line)?);
    }
    let total_rows = (mu + 1) * k;
    if total_rows == 0 || !numbers.len().is_multiple_of(total_rows) {
        return Err(Error::Parse(format!(
            "{} matrix entries do not split into {total_rows} rows",
            numbers.len()
        )));
    }
    let n = numbers.len() / total_rows;
    if numbers.iter().any(|&x| x >= q) {
        return Err(Error::Parse("matrix entry out of field range".into()));
    }
    let mut coeffs = Vec::with_capacity(mu + 1);
    for i in 0..=mu {
        let rows: Vec<Vec<u8>> = (0..k)
            .map(|r| {
                let base = (i * k + r) * n;
                numbers[base..base + n].iter().map(|&x| x as u8).collect()
            })
            .collect();
        coeffs.push(FqMatrix::from_rows(field.clone(), rows)?);
    }
    let code = ConvolutionalCode::from_parts(&field, coeffs)?;
    if code.delta() != delta {
        return Err(Error::Parse(format!(
            "derived degree {} disagrees with header {delta}",
            code.delta()
        )));
    }
    match construction {
        Construction::Custom => Ok(code),
        tag => {
            // A construction tag is only honored when the coefficients
            // really are that construction; the fast decoder depends on it.
            let rebuilt = match tag {
                Construction::C1 => ConvolutionalCode::construct_1(&field, k, delta),
                Construction::C2 => ConvolutionalCode::construct_2(&field, k, delta),
                Construction::C3 => ConvolutionalCode::construct_3(&field, k, delta),
                Construction::Custom => unreachable!(),
            }?;
            if rebuilt.coeffs() == code.coeffs() {
                Ok(rebuilt)
            } else {
                Err(Error::Parse(format!(
                    "coefficients do not match construction {}",
                    tag.tag()
                )))
            }
        }
    }
}

pub fn write_frames(frames: &[Frame]) -> String {
    let mut out = String::new();
    for frame in frames {
        let row: Vec<String> = frame.symbols.iter().map(|x| x.to_string()).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}

pub fn read_frames(text: &str, n: usize) -> Result<Vec<Frame>> {
    let mut frames = Vec::new();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let numbers = parse_numbers(line)?;
        if numbers.is_empty() || numbers.len() % n != 0 {
            return Err(Error::Parse(format!(
                "frame with {} symbols is not a multiple of n = {n}",
                numbers.len()
            )));
        }
        if numbers.iter().any(|&x| x > u8::MAX as u64) {
            return Err(Error::Parse("symbol out of range".into()));
        }
        let symbols: Vec<u8> = numbers.iter().map(|&x| x as u8).collect();
        frames.push(Frame::new(symbols.len() / n, n, symbols)?);
    }
    Ok(frames)
}

/// Serializes a generator matrix as rows of base-10 phi-indices.
pub fn write_matrix(m: &FqMatrix) -> String {
    let mut out = String::new();
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(|x| x.to_string()).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}

pub fn read_matrix(text: &str, field: &Arc<FieldSpec>) -> Result<FqMatrix> {
    let mut rows = Vec::new();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let numbers = parse_numbers(line)?;
        if numbers.iter().any(|&x| x >= field.q as u64) {
            return Err(Error::Parse("matrix entry out of field range".into()));
        }
        rows.push(numbers.iter().map(|&x| x as u8).collect());
    }
    FqMatrix::from_rows(field.clone(), rows)
}

pub fn write_message(message: &[u8], k: usize) -> String {
    let mut out = String::new();
    for block in message.chunks(k) {
        let row: Vec<String> = block.iter().map(|x| x.to_string()).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}

pub fn read_message(text: &str, k: usize) -> Result<Vec<u8>> {
    let mut message = Vec::new();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let numbers = parse_numbers(line)?;
        if numbers.len() != k {
            return Err(Error::Parse(format!(
                "message line has {} symbols, expected k = {k}",
                numbers.len()
            )));
        }
        if numbers.iter().any(|&x| x > u8::MAX as u64) {
            return Err(Error::Parse("symbol out of range".into()));
        }
        message.extend(numbers.iter().map(|&x| x as u8));
    }
    Ok(message)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use proptest::prelude::*;
    use std::sync::Arc;

    #[test]
    fn code_round_trip_constructions() {
        let f = Arc::new(FieldSpec::for_size(3).unwrap());
        for code in [
            ConvolutionalCode::construct_1(&f, 2, 1).unwrap(),
            ConvolutionalCode::construct_2(&f, 2, 2).unwrap(),
            ConvolutionalCode::construct_3(&f, 1, 2).unwrap(),
        ] {
            let text = write_code(&code);
            let back = read_code(&text).unwrap();
            assert_eq!(back, code);
            assert_eq!(write_code(&back), text);
        }
    }

    #[test]
    fn code_round_trip_custom() {
        let f = Arc::new(FieldSpec::for_size(2).unwrap());
        let code = crate::conv::tests::example_code(&f);
        let text = write_code(&code);
        assert!(text.starts_with("2 2 1 1 2 2 0\n"));
        let back = read_code(&text).unwrap();
        assert_eq!(back, code);
    }

    #[test]
    fn generator_matrix_round_trip() {
        let f = Arc::new(FieldSpec::for_size(3).unwrap());
        let g = crate::block::macdonald_generator(&f, 3, 2)
            .unwrap()
            .generator;
        let text = write_matrix(&g);
        assert_eq!(read_matrix(&text, &f).unwrap(), g);
    }

    #[test]
    fn message_round_trip() {
        let msg = vec![1, 0, 2, 2, 0, 1];
        let text = write_message(&msg, 2);
        assert_eq!(read_message(&text, 2).unwrap(), msg);
        assert!(read_message(&text, 3).is_err());
    }

    #[test]
    fn rejects_garbage() {
        assert!(read_code("").is_err());
        assert!(read_code("2 2 1 1 2\n").is_err());
        assert!(read_frames("1 2 x", 3).is_err());
    }

    #[test]
    fn rejects_wrong_construction_tag() {
        // The worked-example coefficients are not construction 1; a file
        // claiming so must not parse into a fast-decodable code.
        let text = "2 2 1 1 2 2 1\n1 1\n0 1\n1 1\n";
        assert!(matches!(read_code(text), Err(Error::Parse(_))));
    }

    proptest! {
        #[test]
        fn frame_round_trip(symbols in proptest::collection::vec(0u8..3, 12)) {
            let frame = Frame::new(4, 3, symbols).unwrap();
            let text = write_frames(std::slice::from_ref(&frame));
            let back = read_frames(&text, 3).unwrap();
            prop_assert_eq!(back, vec![frame]);
        }
    }
}
