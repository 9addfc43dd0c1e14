use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::{UpdateEvent, UpdateKind};

/// Writes `n <N>` followed by one `+ u v` / `- u v` line per update.
pub fn write_sequence<W: Write>(mut w: W, n: usize, events: &[UpdateEvent]) -> Result<()> {
    writeln!(w, "n {}", n)?;
    for ev in events {
        let sign = match ev.kind {
            UpdateKind::Insert => '+',
            UpdateKind::Delete => '-',
        };
        writeln!(w, "{} {} {}", sign, ev.edge.u, ev.edge.v)?;
    }
    w.flush()?;
    Ok(())
}

/// Parses a sequence file. Errors carry 1-based line numbers.
pub fn read_sequence<R: BufRead>(r: R) -> Result<(usize, Vec<UpdateEvent>)> {
    let mut n = None;
    let mut events = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        let parse_err = |msg: String| Error::Parse { line: line_no, msg };
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        let Some(n_val) = n else {
            if toks.len() != 2 || toks[0] != "n" {
                return Err(parse_err("expected header 'n <N>'".into()));
            }
            let v: usize = toks[1].parse().map_err(|_| parse_err(format!("bad vertex count '{}'", toks[1])))?;
            if v == 0 {
                return Err(parse_err("vertex count must be positive".into()));
            }
            n = Some(v);
            continue;
        };
        if toks.len() != 3 {
            return Err(parse_err(format!("expected '+ u v' or '- u v', got '{}'", line)));
        }
        let id = |s: &str| -> Result<usize> {
            let v: usize = s.parse().map_err(|_| parse_err(format!("bad vertex id '{}'", s)))?;
            if v >= n_val {
                return Err(parse_err(format!("vertex {} out of range for n = {}", v, n_val)));
            }
            Ok(v)
        };
        let (a, b) = (id(toks[1])?, id(toks[2])?);
        if a == b {
            return Err(parse_err(format!("self-loop at {}", a)));
        }
        let ev = match toks[0] {
            "+" => UpdateEvent::insert(a, b),
            "-" => UpdateEvent::delete(a, b),
            op => return Err(parse_err(format!("unknown operation '{}'", op))),
        };
        events.push(ev);
    }
    let n = n.ok_or(Error::Parse { line: 1, msg: "missing header".into() })?;
    Ok((n, events))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let evs = vec![UpdateEvent::insert(0, 1), UpdateEvent::insert(2, 1), UpdateEvent::delete(0, 1)];
        let mut buf = Vec::new();
        write_sequence(&mut buf, 3, &evs).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "n 3\n+ 0 1\n+ 1 2\n- 0 1\n");
        let (n, back) = read_sequence(&buf[..]).unwrap();
        assert_eq!(n, 3);
        assert_eq!(back, evs);
    }

    #[test]
    fn errors_name_the_line() {
        let text = "n 4\n+ 0 1\n* 1 2\n";
        assert_eq!(
            read_sequence(text.as_bytes()).unwrap_err(),
            Error::Parse { line: 3, msg: "unknown operation '*'".into() }
        );
        let text = "n 4\n+ 0 9\n";
        assert!(matches!(read_sequence(text.as_bytes()), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(read_sequence("+ 0 1\n".as_bytes()), Err(Error::Parse { line: 1, .. })));
    }
}
