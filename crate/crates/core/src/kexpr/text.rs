//! Text form: `v(L,ID)` | `u(E,E)` | `j(L,L,E)` | `r(L,L,E)`.
//! Whitespace between tokens is ignored; serialization emits none.

use super::{ExprError, KExpr, Label};
use crate::graph::VertexId;

pub fn serialize(e: &KExpr) -> String {
    let mut out = String::new();
    write_expr(e, &mut out);
    out
}

fn write_expr(e: &KExpr, out: &mut String) {
    match e {
        KExpr::Create(l, v) => {
            out.push_str(&format!("v({l},{v})"));
        }
        KExpr::Union(a, b) => {
            out.push_str("u(");
            write_expr(a, out);
            out.push(',');
            write_expr(b, out);
            out.push(')');
        }
        KExpr::Join(x, y, c) | KExpr::Relabel(x, y, c) => {
            let op = if matches!(e, KExpr::Join(..)) { 'j' } else { 'r' };
            out.push_str(&format!("{op}({x},{y},"));
            write_expr(c, out);
            out.push(')');
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn location(&self, at: usize) -> (usize, usize) {
        let before = &self.src[..at.min(self.src.len())];
        let line = before.iter().filter(|&&b| b == b'\n').count() + 1;
        let column = at - before.iter().rposition(|&b| b == b'\n').map_or(0, |p| p + 1) + 1;
        (line, column)
    }

    fn error_at(&self, at: usize, message: impl Into<String>) -> ExprError {
        let (line, column) = self.location(at);
        ExprError::Syntax { line, column, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, ch: u8) -> Result<(), ExprError> {
        match self.peek() {
            Some(c) if c == ch => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(self.error_at(self.pos, format!("expected '{}', found '{}'", ch as char, c as char))),
            None => Err(self.error_at(self.pos, format!("expected '{}', found end of input", ch as char))),
        }
    }

    fn word(&mut self) -> (usize, String) {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        (start, String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn label(&mut self) -> Result<Label, ExprError> {
        let (start, w) = self.word();
        match w.parse::<u32>() {
            Ok(l) if l > 0 && w.bytes().all(|b| b.is_ascii_digit()) => Ok(Label::new(l)),
            _ => Err(self.error_at(start, format!("expected a positive integer label, found {w:?}"))),
        }
    }

    fn expr(&mut self) -> Result<KExpr, ExprError> {
        let start = {
            self.skip_ws();
            self.pos
        };
        let op = match self.peek() {
            Some(c) => c,
            None => return Err(self.error_at(start, "expected an expression, found end of input")),
        };
        self.pos += 1;
        self.expect(b'(')?;
        let e = match op {
            b'v' => {
                let l = self.label()?;
                self.expect(b',')?;
                let (at, w) = self.word();
                let v = VertexId::new(w.clone()).map_err(|_| self.error_at(at, format!("invalid vertex id {w:?}")))?;
                KExpr::Create(l, v)
            }
            b'u' => {
                let a = self.expr()?;
                self.expect(b',')?;
                let b = self.expr()?;
                KExpr::Union(Box::new(a), Box::new(b))
            }
            b'j' | b'r' => {
                let x = self.label()?;
                self.expect(b',')?;
                let y = self.label()?;
                if x == y {
                    return Err(self.error_at(start, format!("'{}' needs two distinct labels", op as char)));
                }
                self.expect(b',')?;
                let c = Box::new(self.expr()?);
                if op == b'j' {
                    KExpr::Join(x, y, c)
                } else {
                    KExpr::Relabel(x, y, c)
                }
            }
            other => return Err(self.error_at(start, format!("unknown operation '{}'", other as char))),
        };
        self.expect(b')')?;
        Ok(e)
    }
}

pub fn parse(text: &str) -> Result<KExpr, ExprError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.error_at(p.pos, "trailing input after expression"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn create_parses() {
        let e = parse("v(1,a)").unwrap();
        assert_eq!(e, KExpr::Create(Label::new(1), VertexId::new("a").unwrap()));
    }

    #[test]
    fn join_round_trips() {
        let s = "j(1,2,u(v(1,a),v(2,b)))";
        assert_eq!(serialize(&parse(s).unwrap()), s);
    }

    #[test]
    fn whitespace_ignored() {
        let e = parse(" j( 1 , 2,\n u(v(1,a) , v(2,b)) )\n").unwrap();
        assert_eq!(serialize(&e), "j(1,2,u(v(1,a),v(2,b)))");
    }

    #[test]
    fn equal_labels_rejected() {
        assert!(matches!(parse("j(1,1,v(1,a))"), Err(ExprError::Syntax { .. })));
        assert!(matches!(parse("r(3,3,v(1,a))"), Err(ExprError::Syntax { .. })));
    }

    #[test]
    fn errors_carry_position() {
        match parse("u(v(1,a),\n  v(0,b))") {
            Err(ExprError::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 5)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse("v(1,a) x").is_err());
        assert!(parse("v(1,a-b)").is_err());
        assert!(parse("q(1,a)").is_err());
    }

    fn arb_expr() -> impl Strategy<Value = KExpr> {
        let leaf = (1u32..6, 0u32..1000).prop_map(|(l, v)| KExpr::create(l, &VertexId::new(format!("v{v}")).unwrap()));
        leaf.prop_recursive(5, 40, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| KExpr::union(a, b)),
                (inner.clone(), 1u32..6, 1u32..6).prop_filter_map("distinct", |(c, a, b)| (a != b).then(|| c.join(a, b))),
                (inner, 1u32..6, 1u32..6).prop_filter_map("distinct", |(c, a, b)| (a != b).then(|| c.relabel(a, b))),
            ]
        })
    }

    proptest! {
        #[test]
        fn parse_inverts_serialize(e in arb_expr()) {
            prop_assert_eq!(parse(&serialize(&e)).unwrap(), e);
        }
    }
}
