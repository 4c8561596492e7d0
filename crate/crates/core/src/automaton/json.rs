//! The `dfao-v1` JSON format:
//!
//! ```json
//! {"format":"dfao-v1","p":2,"digit_order":"lsd","start":0,
//!  "states":[{"output":0,"next":[0,1]},{"output":1,"next":[1,0]}]}
//! ```
//!
//! Serialization is compact with fields in exactly this order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Prime;

use super::Dfao;

pub const FORMAT_TAG: &str = "dfao-v1";
pub const DIGIT_ORDER: &str = "lsd";

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Wire {
    format: String,
    p: u64,
    digit_order: String,
    start: usize,
    states: Vec<WireState>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireState {
    output: u64,
    next: Vec<usize>,
}

pub(super) fn serialize(a: &Dfao) -> String {
    let wire = Wire {
        format: FORMAT_TAG.into(),
        p: a.p.get() as u64,
        digit_order: DIGIT_ORDER.into(),
        start: a.start,
        states: a
            .next
            .iter()
            .zip(&a.output)
            .map(|(next, &output)| WireState {
                output: output as u64,
                next: next.clone(),
            })
            .collect(),
    };
    serde_json::to_string(&wire).expect("plain data serializes")
}

pub(super) fn deserialize(text: &str) -> Result<Dfao> {
    let wire: Wire = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    if wire.format != FORMAT_TAG {
        return Err(Error::Schema(format!(
            "unknown format tag {:?}",
            wire.format
        )));
    }
    if wire.digit_order != DIGIT_ORDER {
        return Err(Error::Schema(format!(
            "unsupported digit order {:?}",
            wire.digit_order
        )));
    }
    let p = Prime::new(wire.p).map_err(|e| Error::Schema(e.to_string()))?;
    let mut next = Vec::with_capacity(wire.states.len());
    let mut output = Vec::with_capacity(wire.states.len());
    for (i, s) in wire.states.into_iter().enumerate() {
        if s.output >= p.get() as u64 {
            return Err(Error::Schema(format!(
                "state {i} output {} is not a residue mod {p}",
                s.output
            )));
        }
        output.push(s.output as u32);
        next.push(s.next);
    }
    Dfao::new(p, wire.start, next, output)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn thue_morse() -> Dfao {
        Dfao::new(
            Prime::new(2).unwrap(),
            0,
            vec![vec![0, 1], vec![1, 0]],
            vec![0, 1],
        )
        .unwrap()
    }

    #[test]
    fn exact_encoding() {
        assert_eq!(
            thue_morse().to_json(),
            r#"{"format":"dfao-v1","p":2,"digit_order":"lsd","start":0,"states":[{"output":0,"next":[0,1]},{"output":1,"next":[1,0]}]}"#
        );
    }

    #[test]
    fn round_trip() {
        let m = thue_morse();
        assert_eq!(Dfao::from_json(&m.to_json()).unwrap(), m);
    }

    #[test]
    fn schema_errors() {
        let bad = [
            r#"{"format":"dfao-v2","p":2,"digit_order":"lsd","start":0,"states":[{"output":0,"next":[0,0]}]}"#,
            r#"{"format":"dfao-v1","p":2,"digit_order":"msd","start":0,"states":[{"output":0,"next":[0,0]}]}"#,
            r#"{"format":"dfao-v1","p":4,"digit_order":"lsd","start":0,"states":[{"output":0,"next":[0,0,0,0]}]}"#,
            r#"{"format":"dfao-v1","p":2,"digit_order":"lsd","start":0,"states":[{"output":0,"next":[0]}]}"#,
            r#"{"format":"dfao-v1","p":2,"digit_order":"lsd","start":1,"states":[{"output":0,"next":[0,0]}]}"#,
            r#"{"format":"dfao-v1","p":2,"digit_order":"lsd","start":0,"states":[{"output":0,"next":[0,3]}]}"#,
            r#"{"format":"dfao-v1","p":2,"digit_order":"lsd","start":0,"states":[{"output":2,"next":[0,0]}]}"#,
            r#"{"format":"dfao-v1","p":2,"digit_order":"lsd","start":0,"states":[]}"#,
            r#"{"format":"dfao-v1","p":2,"digit_order":"lsd","start":0,"states":[{"output":-1,"next":[0,0]}]}"#,
            r#"{"format":"dfao-v1","p":2,"digit_order":"lsd","start":0}"#,
            r#"{"format":"dfao-v1","p":2,"digit_order":"lsd","start":0,"states":[{"output":0,"next":[0,0]}],"extra":1}"#,
            "not json",
        ];
        for text in bad {
            assert!(
                matches!(Dfao::from_json(text), Err(Error::Schema(_))),
                "{text}"
            );
        }
    }
}
