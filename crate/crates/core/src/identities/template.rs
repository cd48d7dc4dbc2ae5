//! A compact notation for identity sides, so that every side in the registry
//! is data rather than hand-written evaluation code.
//!
//! A side is written as four `;`-separated fields:
//!
//! ```text
//! multi; ; B[k](w1*y1) B[l](w2*y2) S[m](w3); w1^(l+m) w2^(k+m) w3^(k+l-1)
//! binom; i<w1; B[k](w3*y1) B[n-k](w2*y2 + w2/w1*i); w1^(n-1) w3^(n-k) w2^(k)
//! single; i<w1, j<w2; B[n](y1 + i/w1 + j/w2); w1^(n-1) w2^(n-1)
//! ```
//!
//! * shape: `multi` sums over `k + l + m = n` with the multinomial
//!   coefficient, `binom` over `k = 0..=n` with `C(n, k)`, `single` is one term.
//! * inner sums: counters `i`, `j` ranging over `0..w`.
//! * factors: `B[idx](arg)` is a Bernoulli polynomial, `S[idx](w)` the power
//!   sum `S_idx(w - 1)`.
//! * powers: `w^(exponent)`; exponents may be negative.

use std::fmt;

use crate::exact::Var;
use crate::Weights;

/// A weight slot, or the literal 1 used by specialized displays.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Wt {
    One,
    W1,
    W2,
    W3,
}

impl Wt {
    pub fn value(self, w: &Weights) -> u64 {
        match self {
            Wt::One => 1,
            Wt::W1 => w[0],
            Wt::W2 => w[1],
            Wt::W3 => w[2],
        }
    }

    fn parse(s: &str) -> Result<Wt, String> {
        match s.trim() {
            "1" => Ok(Wt::One),
            "w1" => Ok(Wt::W1),
            "w2" => Ok(Wt::W2),
            "w3" => Ok(Wt::W3),
            other => Err(format!("unknown weight `{other}`")),
        }
    }
}

/// Integer linear form `a k + b l + c m + d n + e` over the summation indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Lin {
    pub k: i64,
    pub l: i64,
    pub m: i64,
    pub n: i64,
    pub c: i64,
}

impl Lin {
    pub fn eval(&self, idx: Indices) -> i64 {
        self.k * idx.k as i64 + self.l * idx.l as i64 + self.m * idx.m as i64 + self.n * idx.n as i64 + self.c
    }

    fn parse(s: &str) -> Result<Lin, String> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err("empty exponent".into());
        }
        let mut lin = Lin::default();
        let mut sign = 1i64;
        let mut token = String::new();
        let flush = |token: &mut String, sign: i64, lin: &mut Lin| -> Result<(), String> {
            match token.as_str() {
                "k" => lin.k += sign,
                "l" => lin.l += sign,
                "m" => lin.m += sign,
                "n" => lin.n += sign,
                t => lin.c += sign * t.parse::<i64>().map_err(|_| format!("bad exponent term `{t}`"))?,
            }
            token.clear();
            Ok(())
        };
        for (pos, ch) in s.chars().enumerate() {
            match ch {
                '+' | '-' => {
                    if pos > 0 {
                        flush(&mut token, sign, &mut lin)?;
                    }
                    sign = if ch == '-' { -1 } else { 1 };
                }
                _ => token.push(ch),
            }
        }
        flush(&mut token, sign, &mut lin)?;
        Ok(lin)
    }
}

/// Values of the summation indices for one term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Indices {
    pub k: usize,
    pub l: usize,
    pub m: usize,
    pub n: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Multinomial,
    Binomial,
    Single,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Counter {
    I,
    J,
}

/// `(num / den) * counter`
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shift {
    pub num: Wt,
    pub den: Wt,
    pub counter: Counter,
}

/// `scale * var + sum(shifts)`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arg {
    pub scale: Wt,
    pub var: Var,
    pub shifts: Vec<Shift>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    Bernoulli { index: Lin, arg: Arg },
    PowerSum { index: Lin, weight: Wt },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideTemplate {
    pub source: String,
    pub shape: Shape,
    pub inner: Vec<(Counter, Wt)>,
    pub factors: Vec<Factor>,
    pub powers: Vec<(Wt, Lin)>,
}

impl SideTemplate {
    pub fn parse(source: &str) -> Result<SideTemplate, String> {
        let fields: Vec<&str> = source.split(';').collect();
        let [shape, inner, factors, powers] = fields.as_slice() else {
            return Err(format!("expected 4 fields in `{source}`"));
        };
        let shape = match shape.trim() {
            "multi" => Shape::Multinomial,
            "binom" => Shape::Binomial,
            "single" => Shape::Single,
            other => return Err(format!("unknown shape `{other}`")),
        };
        let inner = inner
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(parse_counter)
            .collect::<Result<Vec<_>, _>>()?;
        let factors = split_factors(factors)?
            .into_iter()
            .map(parse_factor)
            .collect::<Result<Vec<_>, _>>()?;
        let powers = powers
            .split_whitespace()
            .map(parse_power)
            .collect::<Result<Vec<_>, _>>()?;
        let t = SideTemplate {
            source: source.trim().to_string(),
            shape,
            inner,
            factors,
            powers,
        };
        for f in &t.factors {
            if let Factor::Bernoulli { arg, .. } = f {
                for s in &arg.shifts {
                    if !t.inner.iter().any(|(c, _)| *c == s.counter) {
                        return Err(format!("counter {:?} used but not summed in `{source}`", s.counter));
                    }
                }
            }
        }
        Ok(t)
    }

    /// Every `y` variable that appears in some factor.
    pub fn variables(&self) -> Vec<Var> {
        let mut vars: Vec<Var> = self
            .factors
            .iter()
            .filter_map(|f| match f {
                Factor::Bernoulli { arg, .. } => Some(arg.var),
                Factor::PowerSum { .. } => None,
            })
            .collect();
        vars.sort();
        vars.dedup();
        vars
    }

    /// Index tuples of the outer sum in the fixed order `k` ascending, then
    /// `l` ascending.
    pub fn indices(&self, n: usize) -> Vec<Indices> {
        match self.shape {
            Shape::Multinomial => (0..=n)
                .flat_map(|k| (0..=n - k).map(move |l| Indices { k, l, m: n - k - l, n }))
                .collect(),
            Shape::Binomial => (0..=n).map(|k| Indices { k, l: n - k, m: 0, n }).collect(),
            Shape::Single => vec![Indices { k: 0, l: 0, m: 0, n }],
        }
    }
}

impl fmt::Display for SideTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

fn parse_counter(s: &str) -> Result<(Counter, Wt), String> {
    let (c, w) = s.split_once('<').ok_or_else(|| format!("bad inner sum `{s}`"))?;
    let counter = match c.trim() {
        "i" => Counter::I,
        "j" => Counter::J,
        other => return Err(format!("unknown counter `{other}`")),
    };
    Ok((counter, Wt::parse(w)?))
}

/// Splits `B[k](w1*y1 + i/w1) S[m](w3)` at top-level whitespace.
fn split_factors(s: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut depth = 0i32;
    for ch in s.chars() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if ch.is_whitespace() && depth == 0 {
            if !current.is_empty() {
                out.push(std::mem::take(&mut current));
            }
        } else if !ch.is_whitespace() {
            current.push(ch);
        }
    }
    if depth != 0 {
        return Err(format!("unbalanced brackets in `{s}`"));
    }
    if !current.is_empty() {
        out.push(current);
    }
    Ok(out)
}

fn parse_factor(s: String) -> Result<Factor, String> {
    let kind = s.chars().next().ok_or("empty factor")?;
    let open = s.find('[').ok_or_else(|| format!("missing index in `{s}`"))?;
    let close = s.find(']').ok_or_else(|| format!("missing index in `{s}`"))?;
    let index = Lin::parse(&s[open + 1..close])?;
    let rest = &s[close + 1..];
    let body = rest
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| format!("missing argument in `{s}`"))?;
    match kind {
        'B' => Ok(Factor::Bernoulli {
            index,
            arg: parse_arg(body)?,
        }),
        'S' => Ok(Factor::PowerSum {
            index,
            weight: Wt::parse(body)?,
        }),
        _ => Err(format!("unknown factor `{s}`")),
    }
}

fn parse_var(s: &str) -> Option<Var> {
    match s {
        "y1" => Some(Var::Y1),
        "y2" => Some(Var::Y2),
        "y3" => Some(Var::Y3),
        _ => None,
    }
}

fn parse_counter_name(s: &str) -> Option<Counter> {
    match s {
        "i" => Some(Counter::I),
        "j" => Some(Counter::J),
        _ => None,
    }
}

fn parse_arg(s: &str) -> Result<Arg, String> {
    let mut scale_var: Option<(Wt, Var)> = None;
    let mut shifts = Vec::new();
    for term in s.split('+') {
        let term = term.trim();
        if let Some(v) = parse_var(term) {
            scale_var = Some((Wt::One, v));
        } else if let Some((w, v)) = term.split_once('*').and_then(|(a, b)| parse_var(b).map(|v| (a, v))) {
            scale_var = Some((Wt::parse(w)?, v));
        } else if let Some((frac, c)) = term.split_once('*') {
            // wX/wY*i
            let (num, den) = frac.split_once('/').ok_or_else(|| format!("bad shift `{term}`"))?;
            let counter = parse_counter_name(c).ok_or_else(|| format!("bad shift `{term}`"))?;
            shifts.push(Shift {
                num: Wt::parse(num)?,
                den: Wt::parse(den)?,
                counter,
            });
        } else if let Some((c, den)) = term.split_once('/') {
            // i/wY
            let counter = parse_counter_name(c).ok_or_else(|| format!("bad shift `{term}`"))?;
            shifts.push(Shift {
                num: Wt::One,
                den: Wt::parse(den)?,
                counter,
            });
        } else {
            return Err(format!("bad argument term `{term}`"));
        }
    }
    let (scale, var) = scale_var.ok_or_else(|| format!("argument `{s}` has no variable"))?;
    Ok(Arg { scale, var, shifts })
}

fn parse_power(s: &str) -> Result<(Wt, Lin), String> {
    let (base, exp) = s.split_once('^').ok_or_else(|| format!("bad power `{s}`"))?;
    let exp = exp.trim_start_matches('(').trim_end_matches(')');
    Ok((Wt::parse(base)?, Lin::parse(exp)?))
}
