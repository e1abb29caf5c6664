//! Line-oriented text formats.
//!
//! Set-cover instance (`scp 1`), solution (`solution`/`mult`), bribery
//! instance (`gib 1`) and bribe set (`bribes`). Blank lines and lines starting
//! with `#` are ignored on input. Output is canonical: fixed directive order,
//! single spaces, LF line endings, so `serialize(parse(x))` is unique.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::consent::{BribeSet, BriberyInstance, Profile};
use crate::error::{Error, Result};
use crate::instance::{Mode, SetCoverInstance, Solution};

struct Line<'a> {
    number: usize,
    keyword: &'a str,
    args: Vec<&'a str>,
}

impl<'a> Line<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.number,
            message: message.into(),
        }
    }

    fn values<T: FromStr>(&self) -> Result<Vec<T>> {
        self.args
            .iter()
            .map(|a| {
                a.parse().map_err(|_| {
                    self.err(format!("`{a}` is not a valid value for `{}`", self.keyword))
                })
            })
            .collect()
    }

    fn single<T: FromStr>(&self) -> Result<T> {
        if self.args.len() != 1 {
            return Err(self.err(format!("`{}` takes exactly one value", self.keyword)));
        }
        Ok(self.values()?.remove(0))
    }

    /// `<keyword> <count> v_1 ... v_count`
    fn counted<T: FromStr>(&self) -> Result<Vec<T>> {
        let Some((count, rest)) = self.args.split_first() else {
            return Err(self.err(format!("`{}` needs a count", self.keyword)));
        };
        let count: usize = count
            .parse()
            .map_err(|_| self.err(format!("`{count}` is not a count")))?;
        if rest.len() != count {
            return Err(self.err(format!(
                "`{}` announces {count} values but lists {}",
                self.keyword,
                rest.len()
            )));
        }
        Line {
            number: self.number,
            keyword: self.keyword,
            args: rest.to_vec(),
        }
        .values()
    }
}

fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            return None;
        }
        let mut parts = trimmed.split_whitespace();
        let keyword = parts.next()?;
        Some(Line {
            number: i + 1,
            keyword,
            args: parts.collect(),
        })
    })
}

fn last_line(text: &str) -> usize {
    text.lines().count().max(1)
}

fn strictly_increasing(line: &Line<'_>, values: &[usize], what: &str) -> Result<()> {
    if values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(line.err(format!("{what} must be strictly increasing")));
    }
    Ok(())
}

fn set_once<T>(slot: &mut Option<T>, line: &Line<'_>, value: T) -> Result<()> {
    if slot.is_some() {
        return Err(line.err(format!("duplicate `{}` directive", line.keyword)));
    }
    *slot = Some(value);
    Ok(())
}

fn header(line: Option<Line<'_>>, magic: &str) -> Result<()> {
    match line {
        Some(l) if l.keyword == magic => {
            if l.single::<u32>()? != 1 {
                return Err(l.err(format!("unsupported `{magic}` format version")));
            }
            Ok(())
        }
        Some(l) => Err(l.err(format!("expected `{magic} 1` header"))),
        None => Err(Error::Parse {
            line: 1,
            message: format!("empty input, expected `{magic} 1` header"),
        }),
    }
}

fn join(out: &mut String, keyword: &str, values: impl IntoIterator<Item = impl std::fmt::Display>) {
    out.push_str(keyword);
    for v in values {
        write!(out, " {v}").expect("writing to a String");
    }
    out.push('\n');
}

pub fn parse_setcover(text: &str) -> Result<SetCoverInstance> {
    let mut it = lines(text);
    header(it.next(), "scp")?;
    let (mut mode, mut n, mut m, mut k) = (None, None, None, None);
    let (mut multi, mut bounds, mut prices, mut budget) = (None, None, None, None);
    let mut sets: Vec<Vec<usize>> = Vec::new();
    for line in it {
        match line.keyword {
            "mode" => {
                let v = match line.single::<String>()?.as_str() {
                    "demands" => Mode::Demands,
                    "capacities" => Mode::Capacities,
                    other => return Err(line.err(format!("unknown mode `{other}`"))),
                };
                set_once(&mut mode, &line, v)?;
            }
            "n" => set_once(&mut n, &line, line.single::<usize>()?)?,
            "m" => set_once(&mut m, &line, line.single::<usize>()?)?,
            "k" => set_once(&mut k, &line, line.single::<usize>()?)?,
            "multiplicities" => {
                let v = match line.single::<String>()?.as_str() {
                    "on" => true,
                    "off" => false,
                    other => return Err(line.err(format!("expected on/off, found `{other}`"))),
                };
                set_once(&mut multi, &line, v)?;
            }
            "bounds" => {
                let v = line.values::<usize>()?;
                if let Some(n) = n {
                    if v.len() != n {
                        return Err(line.err(format!("expected {n} bounds, found {}", v.len())));
                    }
                }
                set_once(&mut bounds, &line, (line.number, v))?;
            }
            "prices" => set_once(&mut prices, &line, (line.number, line.values::<u64>()?))?,
            "pricebudget" => set_once(&mut budget, &line, line.single::<u64>()?)?,
            "set" => {
                let Some((&index, rest)) = line.args.split_first() else {
                    return Err(line.err("`set` needs an index"));
                };
                let index: usize = index
                    .parse()
                    .map_err(|_| line.err(format!("`{index}` is not a set index")))?;
                if index != sets.len() + 1 {
                    return Err(line.err(format!(
                        "expected set {}, found set {index}",
                        sets.len() + 1
                    )));
                }
                let body = Line {
                    number: line.number,
                    keyword: "set",
                    args: rest.to_vec(),
                };
                let elements = body.counted::<usize>()?;
                let n = n.ok_or_else(|| line.err("`set` before `n`"))?;
                if let Some(&e) = elements.iter().find(|&&e| e == 0 || e > n) {
                    return Err(line.err(format!("element {e} outside 1..={n}")));
                }
                strictly_increasing(&line, &elements, "set elements")?;
                sets.push(elements);
            }
            other => return Err(line.err(format!("unknown directive `{other}`"))),
        }
    }
    let end = last_line(text);
    let missing = |what: &str| Error::Parse {
        line: end,
        message: format!("missing `{what}` directive"),
    };
    let mode = mode.ok_or_else(|| missing("mode"))?;
    let n = n.ok_or_else(|| missing("n"))?;
    let m = m.ok_or_else(|| missing("m"))?;
    let k = k.ok_or_else(|| missing("k"))?;
    let (bounds_line, bounds) = bounds.ok_or_else(|| missing("bounds"))?;
    if bounds.len() != n {
        return Err(Error::Parse {
            line: bounds_line,
            message: format!("expected {n} bounds, found {}", bounds.len()),
        });
    }
    if sets.len() != m {
        return Err(Error::Parse {
            line: end,
            message: format!("expected {m} set lines, found {}", sets.len()),
        });
    }
    let mut instance = SetCoverInstance::new(n, sets, mode, bounds, k)?
        .with_multiplicities(multi.unwrap_or(false));
    match (prices, budget) {
        (Some((line, prices)), Some(budget)) => {
            if prices.len() != m {
                return Err(Error::Parse {
                    line,
                    message: format!("expected {m} prices, found {}", prices.len()),
                });
            }
            instance = instance.with_pricing(prices, budget)?;
        }
        (None, None) => {}
        _ => {
            return Err(Error::Parse {
                line: end,
                message: "`prices` and `pricebudget` must appear together".into(),
            })
        }
    }
    Ok(instance)
}

pub fn serialize_setcover(instance: &SetCoverInstance) -> String {
    let mut out = String::new();
    out.push_str("scp 1\n");
    writeln!(out, "mode {}", instance.mode()).unwrap();
    writeln!(out, "n {}", instance.n()).unwrap();
    writeln!(out, "m {}", instance.m()).unwrap();
    writeln!(out, "k {}", instance.k()).unwrap();
    if instance.multiplicities() {
        out.push_str("multiplicities on\n");
    }
    join(&mut out, "bounds", instance.bounds());
    if let Some(p) = instance.pricing() {
        join(&mut out, "prices", &p.prices);
        writeln!(out, "pricebudget {}", p.budget).unwrap();
    }
    for (j, set) in instance.family().iter().enumerate() {
        join(&mut out, &format!("set {} {}", j + 1, set.len()), set);
    }
    out
}

pub fn parse_solution(text: &str) -> Result<Solution> {
    let mut it = lines(text);
    let head = it.next().ok_or(Error::Parse {
        line: 1,
        message: "empty solution".into(),
    })?;
    let total: usize = head.single()?;
    let body = it.next().ok_or_else(|| Error::Parse {
        line: last_line(text),
        message: format!("`{}` without a body line", head.keyword),
    })?;
    if let Some(extra) = it.next() {
        return Err(extra.err("unexpected trailing line"));
    }
    match (head.keyword, body.keyword) {
        ("solution", "pick") => {
            let picks = body.values::<usize>()?;
            if picks.len() != total {
                return Err(body.err(format!("expected {total} picks, found {}", picks.len())));
            }
            if picks.contains(&0) {
                return Err(body.err("set indices start at 1"));
            }
            strictly_increasing(&body, &picks, "picks")?;
            Ok(Solution::Sets(picks))
        }
        ("mult", "counts") => {
            let counts = body.values::<usize>()?;
            let sum: usize = counts.iter().sum();
            if sum != total {
                return Err(body.err(format!("counts sum to {sum}, header says {total}")));
            }
            Ok(Solution::Multi(counts))
        }
        ("solution", _) => Err(body.err("expected `pick` line")),
        ("mult", _) => Err(body.err("expected `counts` line")),
        (other, _) => Err(head.err(format!("unknown solution header `{other}`"))),
    }
}

pub fn serialize_solution(solution: &Solution) -> String {
    let mut out = String::new();
    match solution {
        Solution::Sets(picks) => {
            writeln!(out, "solution {}", picks.len()).unwrap();
            join(&mut out, "pick", picks);
        }
        Solution::Multi(counts) => {
            writeln!(out, "mult {}", solution.size()).unwrap();
            join(&mut out, "counts", counts);
        }
    }
    out
}

pub fn parse_bribery(text: &str) -> Result<BriberyInstance> {
    let mut it = lines(text);
    header(it.next(), "gib")?;
    let (mut n, mut s, mut t, mut ell, mut targets) = (None, None, None, None, None);
    let mut rows: Vec<Vec<i8>> = Vec::new();
    for line in it {
        match line.keyword {
            "n" => set_once(&mut n, &line, line.single::<usize>()?)?,
            "s" => set_once(&mut s, &line, line.single::<usize>()?)?,
            "t" => set_once(&mut t, &line, line.single::<usize>()?)?,
            "ell" => set_once(&mut ell, &line, line.single::<usize>()?)?,
            "targets" => {
                let v = line.counted::<usize>()?;
                strictly_increasing(&line, &v, "targets")?;
                set_once(&mut targets, &line, (line.number, v))?;
            }
            "row" => {
                let n = n.ok_or_else(|| line.err("`row` before `n`"))?;
                let Some((&index, rest)) = line.args.split_first() else {
                    return Err(line.err("`row` needs an index"));
                };
                let index: usize = index
                    .parse()
                    .map_err(|_| line.err(format!("`{index}` is not a row index")))?;
                let opinions = Line {
                    number: line.number,
                    keyword: "row",
                    args: rest.to_vec(),
                }
                .values::<i8>()?;
                if index != rows.len() + 1 {
                    return Err(line.err(format!(
                        "expected row {}, found row {index}",
                        rows.len() + 1
                    )));
                }
                if opinions.len() != n {
                    return Err(
                        line.err(format!("expected {n} opinions, found {}", opinions.len()))
                    );
                }
                if let Some(v) = opinions.iter().find(|&&v| v != 1 && v != -1) {
                    return Err(line.err(format!("opinion {v} is not -1 or 1")));
                }
                rows.push(opinions);
            }
            other => return Err(line.err(format!("unknown directive `{other}`"))),
        }
    }
    let end = last_line(text);
    let missing = |what: &str| Error::Parse {
        line: end,
        message: format!("missing `{what}` directive"),
    };
    let n = n.ok_or_else(|| missing("n"))?;
    let s = s.ok_or_else(|| missing("s"))?;
    let t = t.ok_or_else(|| missing("t"))?;
    let ell = ell.ok_or_else(|| missing("ell"))?;
    let (targets_line, targets) = targets.ok_or_else(|| missing("targets"))?;
    if rows.len() != n {
        return Err(Error::Parse {
            line: end,
            message: format!("expected {n} rows, found {}", rows.len()),
        });
    }
    if let Some(&a) = targets.iter().find(|&&a| a == 0 || a > n) {
        return Err(Error::Parse {
            line: targets_line,
            message: format!("target {a} outside 1..={n}"),
        });
    }
    BriberyInstance::new(Profile::from_rows(&rows)?, targets, s, t, ell)
}

pub fn serialize_bribery(instance: &BriberyInstance) -> String {
    let mut out = String::new();
    out.push_str("gib 1\n");
    writeln!(out, "n {}", instance.n()).unwrap();
    writeln!(out, "s {}", instance.s()).unwrap();
    writeln!(out, "t {}", instance.t()).unwrap();
    writeln!(out, "ell {}", instance.ell()).unwrap();
    join(
        &mut out,
        &format!("targets {}", instance.targets().len()),
        instance.targets(),
    );
    let p = instance.profile();
    for a in 1..=p.n() {
        join(
            &mut out,
            &format!("row {a}"),
            (1..=p.n()).map(|b| p.opinion(a, b)),
        );
    }
    out
}

pub fn parse_bribes(text: &str) -> Result<BribeSet> {
    let mut it = lines(text);
    let head = it.next().ok_or(Error::Parse {
        line: 1,
        message: "empty bribe set".into(),
    })?;
    if head.keyword != "bribes" {
        return Err(head.err("expected `bribes <count>`"));
    }
    let count: usize = head.single()?;
    let body = it.next().ok_or_else(|| Error::Parse {
        line: last_line(text),
        message: "`bribes` without an `agents` line".into(),
    })?;
    if body.keyword != "agents" {
        return Err(body.err("expected `agents` line"));
    }
    if let Some(extra) = it.next() {
        return Err(extra.err("unexpected trailing line"));
    }
    let agents = body.values::<usize>()?;
    if agents.len() != count {
        return Err(body.err(format!("expected {count} agents, found {}", agents.len())));
    }
    if agents.contains(&0) {
        return Err(body.err("agent ids start at 1"));
    }
    strictly_increasing(&body, &agents, "agents")?;
    BribeSet::new(agents)
}

pub fn serialize_bribes(bribes: &BribeSet) -> String {
    let mut out = String::new();
    writeln!(out, "bribes {}", bribes.len()).unwrap();
    join(&mut out, "agents", bribes.agents());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "\
# two elements, three sets
scp 1
mode demands
n 2
m 3
k 2
bounds 2 1

set 1 1 1
set 2 2 1 2
set 3 1 2
";

    #[test]
    fn parses_minimal_instance() {
        let i = parse_setcover(MINIMAL).unwrap();
        assert_eq!((i.n(), i.m(), i.k()), (2, 3, 2));
        assert_eq!(i.bounds(), &[2, 1]);
        assert_eq!(i.mode(), Mode::Demands);
        assert_eq!(i.family(), &[vec![1], vec![1, 2], vec![2]]);
        let canonical = serialize_setcover(&i);
        assert!(!canonical.contains('#'));
        assert_eq!(parse_setcover(&canonical).unwrap(), i);
    }

    #[test]
    fn priced_multi_roundtrip() {
        let i = SetCoverInstance::new(2, vec![vec![], vec![2]], Mode::Capacities, vec![0, 3], 3)
            .unwrap()
            .with_multiplicities(true)
            .with_pricing(vec![4, 0], 7)
            .unwrap();
        let text = serialize_setcover(&i);
        assert_eq!(
            text,
            "scp 1\nmode capacities\nn 2\nm 2\nk 3\nmultiplicities on\nbounds 0 3\nprices 4 0\npricebudget 7\nset 1 0\nset 2 1 2\n"
        );
        assert_eq!(parse_setcover(&text).unwrap(), i);
    }

    fn parse_err_line(text: &str) -> usize {
        match parse_setcover(text) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn setcover_errors_name_the_line() {
        let zero = MINIMAL.replace("set 3 1 2", "set 3 1 0");
        assert_eq!(parse_err_line(&zero), 11);
        let unknown = MINIMAL.replace("k 2", "q 2");
        assert_eq!(parse_err_line(&unknown), 6);
        let count = MINIMAL.replace("set 2 2 1 2", "set 2 3 1 2");
        assert_eq!(parse_err_line(&count), 10);
        let bounds = MINIMAL.replace("bounds 2 1", "bounds 2 1 1");
        assert_eq!(parse_err_line(&bounds), 7);
        let order = MINIMAL.replace("set 2 2 1 2", "set 2 2 2 1");
        assert_eq!(parse_err_line(&order), 10);
        let missing_set = MINIMAL.replace("set 3 1 2\n", "");
        assert!(matches!(
            parse_setcover(&missing_set),
            Err(Error::Parse { .. })
        ));
        let lonely = MINIMAL.replace("k 2", "k 2\npricebudget 3");
        assert!(parse_setcover(&lonely).is_err());
        assert!(parse_setcover("").is_err());
        assert!(parse_setcover("scp 2\n").is_err());
    }

    #[test]
    fn solutions() {
        assert_eq!(
            parse_solution("solution 2\npick 1 2\n").unwrap(),
            Solution::Sets(vec![1, 2])
        );
        assert_eq!(
            parse_solution("mult 3\ncounts 0 3 0\n").unwrap(),
            Solution::Multi(vec![0, 3, 0])
        );
        assert_eq!(
            parse_solution("solution 0\npick\n").unwrap(),
            Solution::empty()
        );
        assert_eq!(serialize_solution(&Solution::empty()), "solution 0\npick\n");
        assert_eq!(
            serialize_solution(&Solution::Multi(vec![0, 3, 0])),
            "mult 3\ncounts 0 3 0\n"
        );
        assert!(parse_solution("solution 2\npick 2 1\n").is_err());
        assert!(parse_solution("solution 3\npick 1 2\n").is_err());
        assert!(parse_solution("mult 2\ncounts 0 3 0\n").is_err());
        assert!(parse_solution("mult 2\npick 1 2\n").is_err());
    }

    const BRIBERY: &str =
        "gib 1\nn 3\ns 2\nt 1\nell 1\ntargets 1 1\nrow 1 1 -1 -1\nrow 2 -1 -1 -1\nrow 3 -1 -1 -1\n";

    #[test]
    fn bribery_roundtrip() {
        let i = parse_bribery(BRIBERY).unwrap();
        assert_eq!((i.n(), i.s(), i.t(), i.ell()), (3, 2, 1, 1));
        assert_eq!(i.targets(), &[1]);
        assert!(i.profile().qualifies(1, 1) && !i.profile().qualifies(1, 2));
        assert_eq!(serialize_bribery(&i), BRIBERY);
    }

    #[test]
    fn bribery_errors() {
        let invalid = BRIBERY.replace("s 2", "s 5");
        assert!(matches!(parse_bribery(&invalid), Err(Error::Invalid(_))));
        let bad_cell = BRIBERY.replace("row 2 -1 -1 -1", "row 2 -1 0 -1");
        assert!(matches!(
            parse_bribery(&bad_cell),
            Err(Error::Parse { line: 8, .. })
        ));
        let short = BRIBERY.replace("row 3 -1 -1 -1\n", "");
        assert!(parse_bribery(&short).is_err());
        let target = BRIBERY.replace("targets 1 1", "targets 1 4");
        assert!(parse_bribery(&target).is_err());
    }

    #[test]
    fn bribe_sets() {
        let b = parse_bribes("bribes 2\nagents 1 3\n").unwrap();
        assert_eq!(b.agents(), &[1, 3]);
        assert_eq!(serialize_bribes(&b), "bribes 2\nagents 1 3\n");
        assert_eq!(serialize_bribes(&BribeSet::default()), "bribes 0\nagents\n");
        assert!(parse_bribes("bribes 1\nagents 1 3\n").is_err());
        assert!(parse_bribes("bribes 2\nagents 3 1\n").is_err());
    }
}
