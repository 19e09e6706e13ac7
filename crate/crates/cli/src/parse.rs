//! Text grammars: polynomial expressions, curve specs, twists, forms and
//! orderings.

use realcycle::numeric::{parse_rat, RatFunc};
use realcycle::qform::{Elem, FieldCtx, FieldOrdering};
use realcycle::realcurve::{CurveModel, CurvePoint};
use realcycle::{ExtendedPoint, Rat, UPoly};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character '{0}' at offset {1}")]
    UnexpectedChar(char, usize),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected token at offset {0}")]
    UnexpectedToken(usize),
    #[error("exponent must be a nonnegative integer")]
    BadExponent,
    #[error("division by zero")]
    DivisionByZero,
    #[error("expected a polynomial, got a rational function")]
    NotPolynomial,
    #[error("unknown variable '{0}', expected '{1}'")]
    UnknownVariable(char, char),
    #[error("invalid curve spec: {0}")]
    BadCurve(String),
    #[error("invalid twist spec: {0}")]
    BadTwist(String),
    #[error("invalid form: {0}")]
    BadForm(String),
    #[error("invalid field: {0}")]
    BadField(String),
    #[error("invalid ordering: {0}")]
    BadOrdering(String),
    #[error("invalid rational: {0}")]
    BadRational(String),
    #[error("invalid argument: {0}")]
    BadArgument(String),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rat),
    Var,
    Op(char),
    Open,
    Close,
}

fn tokenize(s: &str, var: char) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((start, Tok::Num(parse_rat(&digits).expect("digits"))));
            }
            '+' | '-' | '*' | '/' | '^' => {
                out.push((i, Tok::Op(c)));
                i += 1;
            }
            '(' => {
                out.push((i, Tok::Open));
                i += 1;
            }
            ')' => {
                out.push((i, Tok::Close));
                i += 1;
            }
            c if c == var => {
                out.push((i, Tok::Var));
                i += 1;
            }
            c if c.is_ascii_alphabetic() => return Err(ParseError::UnknownVariable(c, var)),
            _ => return Err(ParseError::UnexpectedChar(c, i)),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(usize::MAX)
    }

    fn expr(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.mul(&d.inv().ok_or(ParseError::DivisionByZero)?);
                }
                // implicit multiplication: 2x, x(x+1), (x)(x)
                Some(Tok::Num(_) | Tok::Var | Tok::Open) => acc = acc.mul(&self.power()?),
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc, ParseError> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let Some(Tok::Num(e)) = self.peek().cloned() else {
                return Err(ParseError::BadExponent);
            };
            self.pos += 1;
            let e: u32 = e.to_integer().try_into().map_err(|_| ParseError::BadExponent)?;
            let mut acc = RatFunc::one();
            for _ in 0..e {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFunc, ParseError> {
        let off = self.offset();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(RatFunc::constant(n))
            }
            Some(Tok::Var) => {
                self.pos += 1;
                Ok(RatFunc::from_poly(UPoly::x()))
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::Close) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    None => Err(ParseError::UnexpectedEnd),
                    _ => Err(ParseError::UnexpectedToken(self.offset())),
                }
            }
            None => Err(ParseError::UnexpectedEnd),
            _ => Err(ParseError::UnexpectedToken(off)),
        }
    }
}

/// Rational function expression in the variable `var`.
pub fn parse_ratfunc(s: &str, var: char) -> Result<RatFunc, ParseError> {
    let toks = tokenize(s, var)?;
    if toks.is_empty() {
        return Err(ParseError::UnexpectedEnd);
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(ParseError::UnexpectedToken(p.offset()));
    }
    Ok(e)
}

/// Polynomial expression in the variable `var`.
pub fn parse_poly(s: &str, var: char) -> Result<UPoly, ParseError> {
    parse_ratfunc(s, var)?.as_poly().cloned().ok_or(ParseError::NotPolynomial)
}

/// A rational literal such as `-3`, `1/2` or `-5/7`.
pub fn parse_rational(s: &str) -> Result<Rat, ParseError> {
    let t = s.trim();
    parse_rat(t).ok_or_else(|| ParseError::BadRational(t.to_string()))
}

/// A parsed curve spec. Square-freeness is checked later by the model
/// constructor, which keeps parse errors apart from violated preconditions.
pub enum CurveSpec {
    Line(Vec<Rat>),
    ProjectiveLine,
    Hyperelliptic { f: UPoly, projective: bool },
}

/// `line`, `line punctures=a1,a2,...`, `projective-line`,
/// `hyperelliptic f=<expr> [projective]`.
pub fn parse_curve_spec(s: &str) -> Result<CurveSpec, ParseError> {
    let s = s.trim();
    let bad = |m: &str| ParseError::BadCurve(m.to_string());
    if s == "line" {
        return Ok(CurveSpec::Line(Vec::new()));
    }
    if s == "projective-line" {
        return Ok(CurveSpec::ProjectiveLine);
    }
    if let Some(rest) = s.strip_prefix("line ") {
        let list = rest.trim().strip_prefix("punctures=").ok_or_else(|| bad("expected punctures=..."))?;
        let pts = list.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?;
        return Ok(CurveSpec::Line(pts));
    }
    if let Some(rest) = s.strip_prefix("hyperelliptic") {
        let mut rest = rest.trim();
        let mut projective = false;
        if let Some(r) = rest.strip_suffix("projective") {
            if r.ends_with(char::is_whitespace) {
                rest = r.trim_end();
                projective = true;
            }
        }
        let expr = rest.strip_prefix("f=").ok_or_else(|| bad("expected f=<expr>"))?;
        let f = parse_poly(expr, 'x')?;
        return Ok(CurveSpec::Hyperelliptic { f, projective });
    }
    Err(bad(s))
}

impl CurveSpec {
    pub fn into_model(self) -> Result<CurveModel, realcycle::realcurve::CurveError> {
        match self {
            CurveSpec::Line(p) => CurveModel::punctured_line(p),
            CurveSpec::ProjectiveLine => Ok(CurveModel::ProjectiveLine),
            CurveSpec::Hyperelliptic { f, projective } => CurveModel::hyperelliptic(f, projective),
        }
    }
}

/// `points:(x0,branch)[*mult],...`; branch is `+` or `-`, and may be omitted
/// on lines.
pub fn parse_twist(s: &str) -> Result<Vec<(CurvePoint, i64)>, ParseError> {
    let bad = |m: &str| ParseError::BadTwist(m.to_string());
    let body = s.trim().strip_prefix("points:").ok_or_else(|| bad("expected points:..."))?.trim();
    if body.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut rest = body;
    loop {
        rest = rest.trim_start();
        let inner_start = rest.strip_prefix('(').ok_or_else(|| bad(rest))?;
        let close = inner_start.find(')').ok_or_else(|| bad("unclosed point"))?;
        let inner = &inner_start[..close];
        rest = &inner_start[close + 1..];
        let (x, branch) = match inner.split_once(',') {
            Some((x, b)) => {
                let b = match b.trim() {
                    "+" => 1,
                    "-" => -1,
                    other => return Err(bad(&format!("branch '{other}'"))),
                };
                (parse_rational(x)?, b)
            }
            None => (parse_rational(inner)?, 0),
        };
        let mut mult = 1i64;
        rest = rest.trim_start();
        if let Some(r) = rest.strip_prefix('*') {
            let end = r.find(',').unwrap_or(r.len());
            mult = r[..end].trim().parse().map_err(|_| bad("multiplicity"))?;
            rest = &r[end..];
        }
        out.push((CurvePoint { x, branch }, mult));
        rest = rest.trim_start();
        if rest.is_empty() {
            return Ok(out);
        }
        rest = rest.strip_prefix(',').ok_or_else(|| bad(rest))?;
    }
}

pub fn parse_field(s: &str) -> Result<FieldCtx, ParseError> {
    let t = s.trim();
    let lower = t.to_ascii_lowercase();
    match lower.as_str() {
        "q" | "rationals" => return Ok(FieldCtx::Rationals),
        "r" | "reals" => return Ok(FieldCtx::Reals),
        "c" | "complexes" => return Ok(FieldCtx::Complexes),
        "r(t)" | "rt" | "q(t)" | "functions" => return Ok(FieldCtx::RationalFunctions),
        _ => {}
    }
    let p = lower
        .strip_prefix("fp:")
        .or_else(|| lower.strip_prefix('f'))
        .and_then(|p| p.parse::<u64>().ok())
        .ok_or_else(|| ParseError::BadField(t.to_string()))?;
    FieldCtx::finite(p).map_err(|_| ParseError::BadField(t.to_string()))
}

/// `<e1, e2, ...>` with entries parsed in `t`; returns the raw entries.
pub fn parse_form_entries(s: &str) -> Result<Vec<RatFunc>, ParseError> {
    let t = s.trim();
    let inner = t
        .strip_prefix('<')
        .and_then(|r| r.strip_suffix('>'))
        .ok_or_else(|| ParseError::BadForm("expected <e1, e2, ...>".into()))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(|e| parse_ratfunc(e, 't')).collect()
}

/// Converts parsed entries into field elements.
pub fn form_elements(ctx: FieldCtx, entries: &[RatFunc]) -> Result<Vec<Elem>, ParseError> {
    entries
        .iter()
        .map(|e| match ctx {
            FieldCtx::RationalFunctions => Ok(Elem::Func(e.clone())),
            _ => {
                let c = e
                    .as_poly()
                    .filter(|p| p.is_constant())
                    .map(|p| p.coeff(0))
                    .ok_or_else(|| ParseError::BadForm(format!("{e} is not a constant of {ctx}")))?;
                if let FieldCtx::Finite(p) = ctx {
                    if (c.denom() % num_bigint::BigInt::from(p)) == num_bigint::BigInt::from(0) {
                        return Err(ParseError::BadForm(format!("denominator of {e} vanishes mod {p}")));
                    }
                }
                Ok(ctx.constant(&c))
            }
        })
        .collect()
}

/// `arch`, `inf`, `-inf`, `a+`, `a-`.
pub fn parse_ordering(s: &str) -> Result<FieldOrdering, ParseError> {
    let t = s.trim();
    match t {
        "arch" | "archimedean" => return Ok(FieldOrdering::Archimedean),
        "inf" | "+inf" => return Ok(FieldOrdering::At(ExtendedPoint::pos_inf())),
        "-inf" => return Ok(FieldOrdering::At(ExtendedPoint::neg_inf())),
        _ => {}
    }
    let bad = || ParseError::BadOrdering(t.to_string());
    if let Some(a) = t.strip_suffix('+') {
        return Ok(FieldOrdering::At(ExtendedPoint::plus(parse_rational(a).map_err(|_| bad())?)));
    }
    if let Some(a) = t.strip_suffix('-') {
        return Ok(FieldOrdering::At(ExtendedPoint::minus(parse_rational(a).map_err(|_| bad())?)));
    }
    Err(bad())
}

pub fn ordering_label(o: &FieldOrdering) -> String {
    use realcycle::numeric::{format_rat, Base, Side};
    match o {
        FieldOrdering::Archimedean => "arch".into(),
        FieldOrdering::At(p) => match (&p.base, p.side) {
            (Base::NegInf, _) => "-inf".into(),
            (Base::PosInf, _) => "inf".into(),
            (Base::Finite(a), Side::Plus) => format!("{}+", format_rat(a)),
            (Base::Finite(a), Side::Minus) => format!("{}-", format_rat(a)),
            (Base::Finite(a), Side::Exact) => format_rat(a),
        },
    }
}
