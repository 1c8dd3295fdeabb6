use balacyc::balanced::Colors;
use balacyc::cyclo_complex::validate_primes;
use balacyc::fourier::GroupElement;
use balacyc::sweep::Selection;

use crate::Select;

/// Largest universe for which `--all-subsets` is accepted.
const MAX_EXHAUSTIVE: usize = 20;

pub fn primes(s: &str) -> Result<Vec<u64>, String> {
    let primes = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| format!("bad prime {t:?} in --primes"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    validate_primes(&primes).map_err(|e| e.to_string())?;
    Ok(primes)
}

pub fn groups(s: &str) -> Result<Colors, String> {
    Colors::from_json(s).map_err(|e| e.to_string())
}

fn comma_list(s: &str, what: &str) -> Result<Vec<usize>, String> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad {what} {t:?} in --set"))
        })
        .collect()
}

fn distinct(mut v: Vec<usize>) -> Result<Vec<usize>, String> {
    let len = v.len();
    v.sort_unstable();
    v.dedup();
    if v.len() != len {
        return Err("--set lists an element twice".into());
    }
    Ok(v)
}

/// Positions of a `--set` inside the element list of `G`.
pub fn group_set(colors: &Colors, s: &str) -> Result<Vec<usize>, String> {
    let g = colors.product();
    let positions = if s.trim_start().starts_with('[') {
        let raw: Vec<Vec<u64>> = serde_json::from_str(s).map_err(|e| format!("bad --set: {e}"))?;
        raw.into_iter()
            .map(|coords| {
                let x = GroupElement(coords);
                g.check(&x).map_err(|e| e.to_string())?;
                Ok(g.index_of(&x))
            })
            .collect::<Result<Vec<_>, String>>()?
    } else {
        let v = comma_list(s, "element position")?;
        if let Some(p) = v.iter().find(|&&p| p as u64 >= g.order()) {
            return Err(format!("element position {p} out of range (|G| = {})", g.order()));
        }
        v
    };
    distinct(positions)
}

/// Indices of a `--set` for `K_A`; every index lies in `0..=φ(n)`.
pub fn index_set(phi: u64, s: &str) -> Result<Vec<usize>, String> {
    let v = comma_list(s, "index")?;
    if let Some(j) = v.iter().find(|&&j| j as u64 > phi) {
        return Err(format!("index {j} exceeds φ(n) = {phi}"));
    }
    distinct(v)
}

/// Turns the selection flags into a [`Selection`] over a universe of the
/// given size; `parse_set` maps one `--set` value to positions.
pub fn selection(
    select: &Select,
    universe: usize,
    parse_set: impl Fn(&str) -> Result<Vec<usize>, String>,
) -> Result<Selection, String> {
    if select.all_subsets && universe > MAX_EXHAUSTIVE {
        return Err(format!(
            "--all-subsets over {universe} elements is too large; use --max-size or --random"
        ));
    }
    let explicit = select
        .sets
        .iter()
        .map(|s| parse_set(s))
        .collect::<Result<Vec<_>, _>>()?;
    let mut sel = Selection {
        all: select.all_subsets,
        max_size: select.max_size,
        random: select.random,
        seed: select.seed,
        explicit,
        nonempty: false,
    };
    if !sel.all && sel.max_size.is_none() && sel.explicit.is_empty() && sel.random == 0 {
        sel.explicit.push((0..universe).collect());
    }
    if let Some(m) = sel.max_size {
        let count: f64 = (0..=m.min(universe)).map(|r| binomial(universe, r)).sum();
        if count > 2e6 {
            return Err(format!("--max-size {m} selects about {count:.0} subsets; too many"));
        }
    }
    Ok(sel)
}

fn binomial(n: usize, r: usize) -> f64 {
    (0..r).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}
