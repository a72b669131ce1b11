//! Closed forms for t_g(S_{n,k}).
//!
//! Every rule whose range covers `(n, k, g, model)` is evaluated and all of
//! them must agree; the result names each rule that fired.

use crate::error::{Error, Result};
use crate::fault::{factorial, Model};

struct Rule {
    tag: &'static str,
    range: &'static str,
    applies: fn(usize, usize, usize, Model) -> bool,
    value: fn(usize, usize, usize, Model) -> Result<u128>,
}

const RULES: &[Rule] = &[
    Rule {
        tag: "complete-low-band",
        range: "k = 1, n >= 4, 1 <= g <= floor(n/2) - 1",
        applies: |n, k, g, _| k == 1 && n >= 4 && g >= 1 && g < n / 2,
        value: |n, _, _, _| Ok(n.div_ceil(2) as u128 - 1),
    },
    Rule {
        tag: "complete-high-band",
        range: "k = 1, n >= 4, floor(n/2) <= g <= n - 2",
        applies: |n, k, g, _| k == 1 && n >= 4 && g >= n / 2 && g + 2 <= n,
        value: |n, _, g, _| Ok((n - g - 1) as u128),
    },
    Rule {
        tag: "triangle",
        range: "n = 3, k = 1, g = 1",
        applies: |n, k, g, _| n == 3 && k == 1 && g == 1,
        value: |_, _, _, model| Ok(if model == Model::Pmc { 1 } else { 0 }),
    },
    Rule {
        tag: "pmc-mid-band",
        range: "PMC, 2 <= k <= n - 1, 1 <= g <= n - k",
        applies: |n, k, g, model| model == Model::Pmc && k >= 2 && k < n && g >= 1 && g + k <= n,
        value: |n, k, g, _| Ok(mid_band(n, k, g)),
    },
    Rule {
        tag: "mm-mid-band",
        range: "MM*, 2 <= k <= n - 1, 2 <= g <= n - k",
        applies: |n, k, g, model| model == Model::MmStar && k >= 2 && k < n && g >= 2 && g + k <= n,
        value: |n, k, g, _| Ok(mid_band(n, k, g)),
    },
    Rule {
        tag: "mm-g1",
        range: "MM*, g = 1, n >= 4, 3 <= k <= n - 1",
        applies: |n, k, g, model| model == Model::MmStar && g == 1 && n >= 4 && k >= 3 && k < n,
        value: |n, k, _, _| Ok((n + k - 2) as u128),
    },
    Rule {
        tag: "mm-k2-g1",
        range: "MM*, k = 2, g = 1",
        applies: |n, k, g, model| model == Model::MmStar && k == 2 && g == 1 && n >= 3,
        value: |n, _, _, _| Ok(if n == 3 { 1 } else { (n - 1) as u128 }),
    },
    Rule {
        tag: "high-band",
        range: "n >= 4, 2 <= k <= n - 1, n - k <= g <= n - 2",
        applies: |n, k, g, _| n >= 4 && k >= 2 && k < n && g + k >= n && g + 2 <= n,
        value: |n, k, g, _| high_band(n, k, g),
    },
    Rule {
        tag: "star-graph",
        range: "n >= 4, k = n - 1, 1 <= g <= n - 2",
        applies: |n, k, g, _| n >= 4 && k + 1 == n && g >= 1 && g + 2 <= n,
        value: |n, _, g, _| star_graph(n, g),
    },
    Rule {
        tag: "top-g",
        range: "g = n - 1",
        applies: |n, _, g, _| g + 1 == n,
        value: |_, _, _, _| Ok(0),
    },
];

/// `n + g(k-1) - 1`.
pub fn mid_band(n: usize, k: usize, g: usize) -> u128 {
    (n + g * (k - 1) - 1) as u128
}

/// `(g+1)!(n-g)/(n-k)! - 1`; the division is exact whenever `g >= n - k`.
pub fn high_band(n: usize, k: usize, g: usize) -> Result<u128> {
    let num = factorial(g + 1)? * (n - g) as u128;
    let den = factorial(n - k)?;
    if !num.is_multiple_of(den) {
        return Err(Error::Consistency(format!(
            "(g+1)!(n-g) = {num} is not divisible by (n-k)! = {den} at n={n}, k={k}, g={g}"
        )));
    }
    Ok(num / den - 1)
}

/// `a! / b!` for `a >= b`.
pub(crate) fn factorial_ratio(a: usize, b: usize) -> Result<u128> {
    Ok(factorial(a)? / factorial(b)?)
}

/// `(n-g)(g+1)! - 1`, the value for the star graph S_n.
pub fn star_graph(n: usize, g: usize) -> Result<u128> {
    Ok(factorial(g + 1)? * (n - g) as u128 - 1)
}

/// Evaluated closed form with the rules that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub value: u64,
    pub tags: Vec<&'static str>,
    pub ranges: Vec<&'static str>,
}

pub(crate) fn evaluate(n: usize, k: usize, g: usize, model: Model) -> Result<Evaluation> {
    if n < 3 || k < 1 || k >= n || g < 1 || g >= n {
        return Err(Error::NotApplicable(format!(
            "closed forms cover n >= 3, 1 <= k <= n-1, 1 <= g <= n-1 (n={n}, k={k}, g={g})"
        )));
    }
    let mut hits: Vec<(&Rule, u128)> = Vec::new();
    for rule in RULES.iter().filter(|r| (r.applies)(n, k, g, model)) {
        hits.push((rule, (rule.value)(n, k, g, model)?));
    }
    let Some(&(_, value)) = hits.first() else {
        return Err(Error::NotApplicable(format!(
            "no closed form covers n={n}, k={k}, g={g} under {model}"
        )));
    };
    if let Some((rule, other)) = hits.iter().find(|(_, v)| *v != value) {
        return Err(Error::Consistency(format!(
            "overlapping closed forms disagree at n={n}, k={k}, g={g}, {model}: {} gives {value}, {} gives {other}",
            hits[0].0.tag, rule.tag
        )));
    }
    let value = u64::try_from(value).map_err(|_| Error::domain(format!("t_g = {value} exceeds 64 bits")))?;
    Ok(Evaluation {
        value,
        tags: hits.iter().map(|(r, _)| r.tag).collect(),
        ranges: hits.iter().map(|(r, _)| r.range).collect(),
    })
}
