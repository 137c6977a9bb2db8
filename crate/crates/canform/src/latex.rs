//! LaTeX for coefficient tables, one `align*` row per basis element.

use std::fmt::Write;

use canform_core::canonical::{CanonicalForm, PbwExpansion, RepForm};
use canform_core::polyrat::{LinearForm, Monomial, RatFun, Var, Q};
use canform_core::roots::RootSystemData;
use num_traits::{One, Signed};

pub fn var(v: Var) -> String {
    match v {
        Var::T(i, j) => format!("t^{{({i})}}_{{{j}}}"),
        Var::Z(m) => format!("z_{{{m}}}"),
    }
}

fn power(base: String, e: u32) -> String {
    if e == 1 {
        base
    } else {
        format!("{{{base}}}^{{{e}}}")
    }
}

fn monomial(m: &Monomial) -> String {
    m.pairs().iter().map(|&(v, e)| power(var(v), e)).collect::<Vec<_>>().join(" ")
}

fn rational(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", q.numer(), q.denom())
    }
}

fn form(f: &LinearForm) -> String {
    let s = f.to_string();
    match s.split_once('-') {
        Some((hi, lo)) => format!("({}-{})", var(hi.parse().expect("forms print variables")), var(lo.parse().expect("forms print variables"))),
        None => var(s.parse().expect("forms print variables")),
    }
}

pub fn ratfun(f: &RatFun) -> String {
    let mut num = String::new();
    for (n, (m, c)) in f.numerator().terms().enumerate() {
        let sign = if c.is_negative() { "-" } else if n > 0 { "+" } else { "" };
        let c = c.abs();
        let body = match (c.is_one(), m.is_one()) {
            (_, true) => rational(&c),
            (true, false) => monomial(m),
            (false, false) => format!("{} {}", rational(&c), monomial(m)),
        };
        num += sign;
        num += &body;
    }
    if num.is_empty() {
        num = "0".into();
    }
    if f.denominator().is_empty() {
        return num;
    }
    let den: Vec<String> = f.denominator().iter().map(|(l, &m)| power(form(l), m)).collect();
    format!("\\frac{{{num}}}{{{}}}", den.join(""))
}

/// `\tilde f_2 \tilde f_1^{2}` for the word of a multi-index.
fn word(letters: &[u32]) -> String {
    let mut out = String::new();
    let mut n = 0;
    while n < letters.len() {
        let run = letters[n..].iter().take_while(|&&a| a == letters[n]).count();
        let _ = write!(out, "\\tilde f_{{{}}}", letters[n]);
        if run > 1 {
            let _ = write!(out, "^{{{run}}}");
        }
        n += run;
    }
    out
}

fn pbw_monomial(data: &RootSystemData, p: &[u32]) -> String {
    let mut out = String::new();
    for (l, &e) in p.iter().enumerate() {
        if e > 0 {
            let _ = write!(out, "F_{{{}}}", data.roots()[l].kind);
            if e > 1 {
                let _ = write!(out, "^{{{e}}}");
            }
        }
    }
    if out.is_empty() {
        out.push('1');
    }
    out
}

fn table(head: String, rows: Vec<(String, String)>) -> String {
    let mut out = String::from("\\begin{align*}\n");
    for (n, (coeff, basis)) in rows.iter().enumerate() {
        let lead = if n == 0 { format!("{head} ={{}}& ") } else { "+{}& ".into() };
        let end = if n + 1 < rows.len() { " \\\\" } else { "" };
        let _ = writeln!(out, "{lead}\\Big({coeff}\\Big)\\, dV \\otimes {basis}{end}");
    }
    out + "\\end{align*}\n"
}

pub fn canonical_form(f: &CanonicalForm) -> String {
    let rows = f.coeffs().iter().map(|(j, c)| (ratfun(c), word(&j.to_word()))).collect();
    table(format!("\\Omega_{{{}}}", f.weight()), rows)
}

pub fn pbw_expansion(data: &RootSystemData, e: &PbwExpansion) -> String {
    let rows = e.coeffs.iter().map(|(p, c)| (ratfun(c), pbw_monomial(data, p))).collect();
    table(format!("\\Omega^{{{}}}_{{{}}}", e.lie_type, e.weight), rows)
}

pub fn rep_form(data: &RootSystemData, r: &RepForm) -> String {
    let rows = r
        .coeffs
        .iter()
        .map(|(key, c)| {
            let factors: Vec<String> =
                key.iter().enumerate().map(|(m, p)| format!("{} v_{{{}}}", pbw_monomial(data, p), m + 1)).collect();
            (ratfun(c), factors.join(" \\otimes "))
        })
        .collect();
    table(format!("\\Omega^{{V}}_{{{}}}", r.weight), rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions() {
        let f: RatFun = "-3/2*t:1:1^2/(t:1:1*(t:2:1-t:1:1)^2)".parse().unwrap();
        assert_eq!(ratfun(&f), "\\frac{-\\frac{3}{2} t^{(1)}_{1}}{{(t^{(2)}_{1}-t^{(1)}_{1})}^{2}}");
        assert_eq!(word(&[2, 1, 1]), "\\tilde f_{2}\\tilde f_{1}^{2}");
    }
}
