use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{omega_free, omega_j, omega_pbw, omega_sym, Atoms, CanonError, PbwProjection};
use crate::flags::{flag_of_free_element, flag_of_word, residue_pairing, residue_step, Equation, TopForm};
use crate::freealg::{serre_ideal_span, shuffle_counts, CartanMatrix, FreeElement};
use crate::polyrat::{equals_with, seed, star, LinearForm, MultiIndex, Q, RatFun, Var, Weight};
use crate::roots::RootSystemData;
use num_traits::Zero;

/// One failed case of a check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub case: String,
    pub expected: String,
    pub got: String,
}

/// Outcome of a verification suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub check: String,
    pub params: Vec<(String, String)>,
    pub cases: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl Report {
    pub fn new(check: &str) -> Self {
        Report { check: check.into(), params: Vec::new(), cases: 0, counterexamples: Vec::new() }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.push((key.into(), value.to_string()));
        self
    }

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn status(&self) -> &'static str {
        if self.passed() {
            "pass"
        } else {
            "fail"
        }
    }

    /// Records one case; a mismatch becomes a counterexample. Equality of
    /// normal forms is cross-checked at one seeded random point.
    pub fn expect(&mut self, case: impl ToString, expected: &RatFun, got: &RatFun) {
        self.cases += 1;
        if !equals_with(expected, got, seed(), 1) {
            self.counterexamples.push(Counterexample {
                case: case.to_string(),
                expected: expected.to_string(),
                got: got.to_string(),
            });
        }
    }

    pub fn fail(&mut self, case: impl ToString, expected: impl ToString, got: impl ToString) {
        self.cases += 1;
        self.counterexamples.push(Counterexample {
            case: case.to_string(),
            expected: expected.to_string(),
            got: got.to_string(),
        });
    }

    /// Appends the cases of `other`, prefixing its case names.
    pub fn absorb(&mut self, other: Report) {
        let prefix = other.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ");
        self.cases += other.cases;
        for mut c in other.counterexamples {
            c.case = format!("{prefix}: {}", c.case);
            self.counterexamples.push(c);
        }
    }
}

fn delta(a: bool) -> RatFun {
    if a {
        RatFun::one()
    } else {
        RatFun::zero()
    }
}

/// Pairs the flag of every monomial of content `k` with every coefficient
/// of `Ω_k` and expects the identity matrix.
pub fn verify_duality(k: &Weight, anchor: Option<Var>) -> Result<Report, CanonError> {
    let mut report = Report::new("duality").param("k", k).param("anchor", anchor_name(anchor));
    let form = omega_free(k, anchor);
    let tops: Vec<(&MultiIndex, TopForm)> = form
        .coeffs()
        .iter()
        .map(|(j, f)| Ok((j, TopForm::standard(f.clone(), k)?)))
        .collect::<Result<_, CanonError>>()?;
    for j in form.coeffs().keys() {
        let flag = flag_of_word(j, k, anchor)?;
        for (j2, top) in &tops {
            let got = residue_pairing(&flag, top)?;
            report.expect(format!("flag {j} vs form {j2}"), &delta(j == *j2), &got);
        }
    }
    Ok(report)
}

fn anchor_name(anchor: Option<Var>) -> String {
    anchor.map_or_else(|| "0".into(), |v| v.to_string())
}

/// The residue of `Ω_k` along `t^(i)_{k_i} = 0` against
/// `(-1)^{k_1+...+k_i-1} Ω_{k-1_i} f_i`.
pub fn verify_residue_recursion(k: &Weight, i: u32) -> Result<Report, CanonError> {
    let smaller = k
        .minus_unit(i)
        .ok_or_else(|| CanonError::Precondition(format!("color {i} does not occur in {k}")))?;
    let mut report = Report::new("residue").param("k", k).param("i", i);
    let eq = Equation::to_zero(Var::T(i, k.get(i)));
    let sign = if k.parts()[..i as usize].iter().sum::<u32>() % 2 == 1 { 1 } else { -1 };
    let lower = omega_free(&smaller, None);
    for (j, f) in omega_free(k, None).coeffs() {
        let got = residue_step(&TopForm::standard(f.clone(), k)?, &eq)?;
        if got.vars() != smaller.variables().as_slice() {
            report.fail(format!("form {j}"), "dV of the smaller weight", "other variables");
            continue;
        }
        // The monomial of j is f_{J'} f_i exactly when j starts with i.
        let expected = match j.colors().split_first() {
            Some((&first, rest)) if first == i => {
                let c = lower.coeff(&MultiIndex::new(rest.to_vec())).cloned().unwrap_or_else(RatFun::zero);
                if sign < 0 {
                    c.neg()
                } else {
                    c
                }
            }
            _ => RatFun::zero(),
        };
        report.expect(format!("form {j}"), &expected, got.coeff());
    }
    Ok(report)
}

/// `ω_{J1} * ω_{J2} = sum over shuffles J of ω_J`, with multiplicity.
pub fn verify_shuffle_duality(j1: &MultiIndex, j2: &MultiIndex, rank: usize) -> Result<Report, CanonError> {
    let mut report = Report::new("shuffle").param("J1", j1).param("J2", j2);
    let (k1, k2) = (j1.content(rank), j2.content(rank));
    let lhs = star(&omega_sym(j1, &k1, None), &omega_sym(j2, &k2, None))?;
    let k = &k1 + &k2;
    let terms = shuffle_counts(j1, j2)
        .into_iter()
        .map(|(j, n)| omega_j(&j, &k, None).scale(&Q::from_integer(n.into())));
    let rhs = crate::polyrat::sum_all(terms);
    report.expect("star product", &rhs, lhs.fun());
    Ok(report)
}

/// Projects `Ω_k` onto the PBW basis through the Serre ideal and compares
/// every coefficient with the product formula. A span defect is an error.
pub fn verify_pbw_equivalence(data: &RootSystemData, k: &Weight, anchor: Option<Var>) -> Result<Report, CanonError> {
    let mut report =
        Report::new("pbw").param("type", data.lie_type()).param("k", k).param("anchor", anchor_name(anchor));
    let projection = PbwProjection::new(data, k)?;
    let projected = projection.project(&omega_free(k, anchor));
    let expansion = omega_pbw(data, k, &Atoms::new(data, anchor))?;
    for (p, got) in &projected {
        report.expect(format!("p={}", exponents(p)), &expansion.coeffs[p], got);
    }
    Ok(report)
}

pub(crate) fn exponents(p: &[u32]) -> String {
    p.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
}

/// Denominator forms `t^(i)_a - t^(j)_b` of `f` whose colors have
/// orthogonal simple roots.
pub fn orthogonal_poles(f: &RatFun, cartan: &CartanMatrix) -> Vec<LinearForm> {
    f.pole_support()
        .into_iter()
        .filter(|form| match (form.hi(), form.lo()) {
            (Var::T(i, _), Some(Var::T(j, _))) => i != j && cartan.get(i, j) == 0,
            _ => false,
        })
        .collect()
}

/// The denominator support of `f`.
pub fn pole_support(f: &RatFun) -> Vec<LinearForm> {
    f.pole_support()
}

/// No `ω_p` of content `k` has a pole along `t^(i) = t^(j)` with `a_ij = 0`.
pub fn verify_pole_support(data: &RootSystemData, k: &Weight) -> Result<Report, CanonError> {
    let mut report = Report::new("poles").param("type", data.lie_type()).param("k", k);
    let expansion = omega_pbw(data, k, &Atoms::new(data, None))?;
    for (p, f) in &expansion.coeffs {
        let bad = orthogonal_poles(f, data.cartan());
        report.cases += 1;
        if !bad.is_empty() {
            let got = bad.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(" ");
            report.counterexamples.push(Counterexample {
                case: format!("p={}", exponents(p)),
                expected: "no orthogonal poles".into(),
                got,
            });
        }
    }
    Ok(report)
}

/// Residue recursion, Serre vanishing and PBW duality for the atom of the
/// root with the given index.
///
/// The residue of `η_β` along `t^(i)_{k_i} = 0` must equal the `F_β`
/// coefficient of `(-1)^{k_1+...+k_i-1} Ω^g_{k-1_i} f_i`, and that value must
/// be a nonzero multiple of the case term: `η_{β-α_i}` when `β-α_i` is a
/// later positive root, `η_γ * η_γ` when `γ = (β-α_i)/2` is a later positive
/// root, `1` when `β = α_i`, and zero otherwise.
pub fn verify_atom(data: &RootSystemData, index: usize) -> Result<Report, CanonError> {
    let root = &data.roots()[index];
    let k = &root.content;
    let mut report = Report::new("atom").param("type", data.lie_type()).param("root", root.kind);
    let atoms = Atoms::new(data, None);
    let eta = atoms.get(index);
    let top = TopForm::standard(eta.fun().clone(), k)?;
    let projection = PbwProjection::new(data, k)?;

    for i in 1..=k.rank() as u32 {
        if k.get(i) == 0 {
            continue;
        }
        let got = residue_step(&top, &Equation::to_zero(Var::T(i, k.get(i))))?;
        let expected = recursion_value(data, &atoms, &projection, index, i)?;
        report.expect(format!("residue at color {i}"), &expected, got.coeff());
        let term = case_term(data, &atoms, index, i)?;
        let proportional = if term.is_zero() {
            expected.is_zero()
        } else {
            constant_ratio(&expected, &term).is_some_and(|c| !c.is_zero())
        };
        if !proportional {
            report.fail(format!("case term at color {i}"), term, expected);
        }
    }

    for (n, s) in serre_ideal_span(data.cartan(), k).iter().enumerate() {
        let got = residue_pairing(&flag_of_free_element(s, k, None)?, &top)?;
        report.expect(format!("ideal element {n}"), &RatFun::zero(), &got);
    }

    for p in data.pbw_monomials(k)? {
        let single = p.iter().enumerate().all(|(l, &e)| e == if l == index { 1 } else { 0 });
        let got = residue_pairing(&flag_of_free_element(&data.pbw_element(&p), k, None)?, &top)?;
        report.expect(format!("flag of p={}", exponents(&p)), &delta(single), &got);
    }
    Ok(report)
}

/// The `F_β` coefficient of `(-1)^{k_1+...+k_i-1} Ω^g_{k-1_i} f_i`, with
/// `Ω^g_{k-1_i}` taken from the product formula.
fn recursion_value(
    data: &RootSystemData,
    atoms: &Atoms,
    projection: &PbwProjection,
    index: usize,
    i: u32,
) -> Result<RatFun, CanonError> {
    let k = data.content(index);
    let smaller = k.minus_unit(i).expect("color occurs");
    let slot = projection
        .monomials()
        .iter()
        .position(|p| p.iter().enumerate().all(|(l, &e)| e == if l == index { 1 } else { 0 }))
        .expect("the root is a monomial of its own content");
    let lower = omega_pbw(data, &smaller, atoms)?;
    let f_i = FreeElement::generator(i);
    let mut terms = Vec::new();
    for (q, w) in &lower.coeffs {
        let product = data.pbw_element(q).mul(&f_i);
        let mut c = Q::zero();
        for (word, a) in product.terms() {
            let coords = projection.coordinates(word).expect("word of the right content");
            c += a * &coords[slot];
        }
        terms.push(w.scale(&c));
    }
    let value = crate::polyrat::sum_all(terms);
    let before: u32 = k.parts()[..i as usize].iter().sum();
    Ok(if before % 2 == 1 { value } else { value.neg() })
}

/// `c` with `a = c b`, if there is one.
pub fn constant_ratio(a: &RatFun, b: &RatFun) -> Option<Q> {
    let (_, lead_b) = b.numerator().leading()?;
    let c = match a.numerator().leading() {
        Some((_, lead_a)) => lead_a / lead_b,
        None => Q::zero(),
    };
    (b.scale(&c) == *a).then_some(c)
}

/// The case term of the atom recursion, up to its constant.
fn case_term(data: &RootSystemData, atoms: &Atoms, index: usize, i: u32) -> Result<RatFun, CanonError> {
    let rest: Vec<i32> = data.roots()[index]
        .eps
        .iter()
        .zip(&data.simple_roots()[i as usize - 1])
        .map(|(a, b)| a - b)
        .collect();
    if rest.iter().all(|&x| x == 0) {
        return Ok(RatFun::one());
    }
    if let Some(next) = data.index_of_eps(&rest) {
        return Ok(if next > index { atoms.get(next).fun().clone() } else { RatFun::zero() });
    }
    if rest.iter().all(|x| x % 2 == 0) {
        let half: Vec<i32> = rest.iter().map(|x| x / 2).collect();
        if let Some(h) = data.index_of_eps(&half) {
            if h > index {
                let eta = atoms.get(h);
                return Ok(star(eta, eta)?.into_fun());
            }
        }
    }
    Ok(RatFun::zero())
}

/// `sym_{(n)}(prod_u 1/(t_u - t_{u-1})) = 1/(t_1 ... t_n)`.
pub fn verify_matsuo(n: u32) -> Report {
    let mut report = Report::new("matsuo").param("n", n);
    let k = Weight::new(alloc::vec![n]).expect("rank one");
    let got = omega_j(&MultiIndex::new(alloc::vec![1; n as usize]), &k, None);
    let mut expected = RatFun::one();
    for v in k.variables() {
        expected = expected.mul(&RatFun::inv_diff(Some(v), None).expect("nonzero"));
    }
    report.expect(format!("n={n}"), &expected, &got);
    report
}

/// Setting the anchor to 0 in `Ω_k(z)` gives `Ω_k`.
pub fn verify_anchor_specialization(k: &Weight, anchor: Var) -> Result<Report, CanonError> {
    let mut report = Report::new("anchor").param("k", k).param("anchor", anchor);
    let plain = omega_free(k, None);
    for (j, f) in omega_free(k, Some(anchor)).coeffs() {
        let got = f.substitute(anchor, None)?;
        report.expect(format!("form {j}"), &plain.coeffs()[j], &got);
    }
    Ok(report)
}

/// Sorted counts of cases and failures per check name.
pub fn summarize(reports: &[Report]) -> BTreeMap<String, (usize, usize)> {
    let mut out: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for r in reports {
        let e = out.entry(r.check.clone()).or_default();
        e.0 += r.cases;
        e.1 += r.counterexamples.len();
    }
    out
}
