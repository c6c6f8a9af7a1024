//! Named groups and the generator file format.
//!
//! Names follow `NAME` or `NAME(arg, ...)`, where arguments are integers or nested
//! names: `S(5)`, `PGL(2,7)`, `M11`, `PSp(4,3).2`, `PSp(6,2)`, `Wr(C(3),C(3))`,
//! `Dp(A(5),C(4))`, `Hat(C(3))`.

use std::path::Path;

use super::products::{direct_product, hat_group, wreath};
use super::{parse_cycles, PermError, PermGroup, Permutation};

const M11_DATA: &str = include_str!("../../data/m11.txt");
const PSP4_3_2_DATA: &str = include_str!("../../data/psp4_3_2.txt");
const PSP6_2_DATA: &str = include_str!("../../data/psp6_2.txt");

/// Parses the generator file format: one permutation per line in 1-based cycle
/// notation, `#` comments and blank lines ignored. The degree is the largest point
/// mentioned unless given.
pub fn parse_generator_file(text: &str, degree: Option<usize>) -> Result<PermGroup, PermError> {
    let mut cycle_lists = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        cycle_lists.push(parse_cycles(line)?);
    }
    if cycle_lists.is_empty() {
        return Err(PermError::EmptyGenerators);
    }
    let max_pt = cycle_lists
        .iter()
        .flatten()
        .flatten()
        .copied()
        .max()
        .unwrap_or(1);
    let n = degree.unwrap_or(max_pt);
    let gens = cycle_lists
        .iter()
        .map(|c| Permutation::from_cycles(n, c))
        .collect::<Result<Vec<_>, _>>()?;
    PermGroup::new(n, gens)
}

pub fn symmetric(n: usize) -> PermGroup {
    match n {
        0 | 1 => PermGroup::trivial(1),
        2 => group_from(2, &[vec![vec![1, 2]]]),
        _ => group_from(n, &[vec![vec![1, 2]], vec![(1..=n).collect()]]),
    }
}

pub fn alternating(n: usize) -> PermGroup {
    match n {
        0..=2 => PermGroup::trivial(n.max(1)),
        3 => group_from(3, &[vec![vec![1, 2, 3]]]),
        _ if n % 2 == 1 => group_from(n, &[vec![vec![1, 2, 3]], vec![(1..=n).collect()]]),
        _ => group_from(n, &[vec![vec![1, 2, 3]], vec![(2..=n).collect()]]),
    }
}

pub fn cyclic(n: usize) -> PermGroup {
    if n <= 1 {
        return PermGroup::trivial(1);
    }
    group_from(n, &[vec![(1..=n).collect()]])
}

/// Dihedral group of order `2n`; `D(2)` is the Klein four-group on 4 points.
pub fn dihedral(n: usize) -> Result<PermGroup, PermError> {
    match n {
        0 => Err(PermError::Invalid("D(n) needs n >= 1".into())),
        1 => Ok(cyclic(2)),
        2 => Ok(group_from(4, &[vec![vec![1, 2]], vec![vec![3, 4]]])),
        _ => {
            let rot = Permutation::from_cycles(n, &[(1..=n).collect()])?;
            let refl: Vec<u32> = (0..n).map(|i| ((n - i) % n) as u32).collect();
            PermGroup::new(n, vec![rot, Permutation::from_images(refl)?])
        }
    }
}

fn group_from(n: usize, gens: &[Vec<Vec<usize>>]) -> PermGroup {
    let gens = gens
        .iter()
        .map(|c| Permutation::from_cycles(n, c).expect("valid builtin"))
        .collect();
    PermGroup::new(n, gens).expect("valid builtin")
}

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

fn primitive_root(q: u64) -> u64 {
    (2..q)
        .find(|&w| {
            let mut x = 1;
            (1..q - 1).all(|_| {
                x = x * w % q;
                x != 1
            })
        })
        .unwrap_or(1)
}

/// A Möbius map `x ↦ (a x + b)/(c x + d)` on the projective line over `F_q`, point `q` = ∞.
fn mobius(q: u64, a: u64, b: u64, c: u64, d: u64) -> Permutation {
    let inv = |x: u64| (1..q).find(|y| x * y % q == 1).expect("unit");
    let images: Vec<u32> = (0..=q)
        .map(|x| {
            let (num, den) = if x == q {
                (a % q, c % q)
            } else {
                ((a * x + b) % q, (c * x + d) % q)
            };
            if den == 0 {
                q as u32
            } else {
                (num * inv(den) % q) as u32
            }
        })
        .collect();
    Permutation::from_images_unchecked(images)
}

fn projective_line_group(q: u64, full: bool) -> Result<PermGroup, PermError> {
    if !is_prime(q) {
        return Err(PermError::Invalid(format!(
            "only prime fields are supported, got q = {q}"
        )));
    }
    let n = (q + 1) as usize;
    if q == 2 {
        return Ok(symmetric(3));
    }
    let w = primitive_root(q);
    let scale = if full { w } else { w * w % q };
    let gens = vec![
        mobius(q, 1, 1, 0, 1),
        mobius(q, scale, 0, 0, 1),
        mobius(q, 0, q - 1, 1, 0),
    ];
    PermGroup::new(n, gens)
}

pub fn psl2(q: u64) -> Result<PermGroup, PermError> {
    projective_line_group(q, false)
}

pub fn pgl2(q: u64) -> Result<PermGroup, PermError> {
    projective_line_group(q, true)
}

fn load(
    file: &str,
    bundled: &str,
    order: u128,
    data_dir: Option<&Path>,
) -> Result<PermGroup, PermError> {
    let text = match data_dir.map(|d| d.join(file)) {
        Some(path) if path.exists() => std::fs::read_to_string(&path)
            .map_err(|e| PermError::Parse(format!("{}: {e}", path.display())))?,
        _ => bundled.to_string(),
    };
    let g = parse_generator_file(&text, None)?;
    if g.order() != order {
        return Err(PermError::Invalid(format!(
            "{file} generates a group of order {}, expected {order}",
            g.order()
        )));
    }
    Ok(g)
}

pub fn m11(data_dir: Option<&Path>) -> Result<PermGroup, PermError> {
    load("m11.txt", M11_DATA, 7920, data_dir)
}

pub fn psp4_3_ext2(data_dir: Option<&Path>) -> Result<PermGroup, PermError> {
    load("psp4_3_2.txt", PSP4_3_2_DATA, 51840, data_dir)
}

pub fn psp6_2(data_dir: Option<&Path>) -> Result<PermGroup, PermError> {
    load("psp6_2.txt", PSP6_2_DATA, 1_451_520, data_dir)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Arg {
    Int(u64),
    Name(Spec),
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Spec {
    name: String,
    args: Option<Vec<Arg>>,
    suffix: Option<String>,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self) -> PermError {
        PermError::UnknownGroup(String::from_utf8_lossy(self.src).into_owned())
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn take_while(&mut self, f: impl Fn(u8) -> bool) -> &str {
        let start = self.pos;
        while self.pos < self.src.len() && f(self.src[self.pos]) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("")
    }

    fn spec(&mut self) -> Result<Spec, PermError> {
        if !self.src.get(self.pos).is_some_and(u8::is_ascii_alphabetic) {
            return Err(self.err());
        }
        let name = self.take_while(|c| c.is_ascii_alphanumeric()).to_string();
        let args = if self.eat(b'(') {
            let mut args = Vec::new();
            loop {
                if self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    let digits = self.take_while(|c| c.is_ascii_digit());
                    args.push(Arg::Int(digits.parse().map_err(|_| self.err())?));
                } else {
                    args.push(Arg::Name(self.spec()?));
                }
                if self.eat(b')') {
                    break;
                }
                if !self.eat(b',') {
                    return Err(self.err());
                }
            }
            Some(args)
        } else {
            None
        };
        let suffix = if self.eat(b'.') {
            let digits = self.take_while(|c| c.is_ascii_digit());
            if digits.is_empty() {
                return Err(self.err());
            }
            Some(digits.to_string())
        } else {
            None
        };
        Ok(Spec { name, args, suffix })
    }
}

/// Whether `text` parses under the builtin name grammar (the group may still be unknown).
pub fn looks_like_builtin(text: &str) -> bool {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser {
        src: compact.as_bytes(),
        pos: 0,
    };
    p.spec().is_ok() && p.pos == compact.len()
}

/// Resolves a builtin group name, reading data files from `data_dir` when present there.
pub fn builtin(text: &str, data_dir: Option<&Path>) -> Result<PermGroup, PermError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser {
        src: compact.as_bytes(),
        pos: 0,
    };
    let spec = p.spec()?;
    if p.pos != compact.len() {
        return Err(PermError::UnknownGroup(text.to_string()));
    }
    resolve(&spec, text, data_dir)
}

fn resolve(spec: &Spec, text: &str, data_dir: Option<&Path>) -> Result<PermGroup, PermError> {
    let unknown = || PermError::UnknownGroup(text.to_string());
    let ints: Option<Vec<u64>> = spec.args.as_ref().map(|a| {
        a.iter()
            .filter_map(|x| match x {
                Arg::Int(n) => Some(*n),
                Arg::Name(_) => None,
            })
            .collect()
    });
    let groups = || -> Result<Vec<PermGroup>, PermError> {
        spec.args
            .as_ref()
            .ok_or_else(unknown)?
            .iter()
            .map(|a| match a {
                Arg::Name(s) => resolve(s, text, data_dir),
                Arg::Int(_) => Err(unknown()),
            })
            .collect()
    };
    let one_int = || match ints.as_deref() {
        Some([n]) if spec.args.as_ref().map(Vec::len) == Some(1) => Ok(*n as usize),
        _ => Err(unknown()),
    };
    let suffix = spec.suffix.as_deref();
    match (spec.name.as_str(), suffix) {
        ("S", None) => Ok(symmetric(one_int()?)),
        ("A", None) => Ok(alternating(one_int()?)),
        ("C", None) => Ok(cyclic(one_int()?)),
        ("D", None) => dihedral(one_int()?),
        ("PSL", None) | ("PGL", None) => match ints.as_deref() {
            Some([2, q]) => {
                if spec.name == "PSL" {
                    psl2(*q)
                } else {
                    pgl2(*q)
                }
            }
            _ => Err(unknown()),
        },
        ("M11", None) if spec.args.is_none() => m11(data_dir),
        ("PSp", Some("2")) if ints.as_deref() == Some(&[4, 3]) => psp4_3_ext2(data_dir),
        ("PSp", None) if ints.as_deref() == Some(&[6, 2]) => psp6_2(data_dir),
        ("Wr", None) => match groups()?.as_slice() {
            [g, h] => Ok(wreath(g, h)),
            _ => Err(unknown()),
        },
        ("Dp", None) => {
            let gs = groups()?;
            let mut it = gs.into_iter();
            let first = it.next().ok_or_else(unknown)?;
            Ok(it.fold(first, |acc, g| direct_product(&acc, &g)))
        }
        ("Hat", None) => match groups()?.as_slice() {
            [g] => Ok(hat_group(g)),
            _ => Err(unknown()),
        },
        _ => Err(unknown()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_orders() {
        let cases = [
            ("S(5)", 120u128),
            ("A(5)", 60),
            ("A(6)", 360),
            ("C(12)", 12),
            ("D(5)", 10),
            ("D(4)", 8),
            ("PSL(2,7)", 168),
            ("PGL(2,7)", 336),
            ("PSL(2,11)", 660),
            ("PGL(2,5)", 120),
            ("M11", 7920),
            ("Wr(C(3),C(3))", 81),
            ("Dp(A(5), C(4))", 240),
            ("Hat(C(3))", 6),
            ("S(1)", 1),
        ];
        for (name, order) in cases {
            assert_eq!(builtin(name, None).unwrap().order(), order, "{name}");
        }
    }

    #[test]
    fn bundled_symplectic_groups() {
        let g = psp4_3_ext2(None).unwrap();
        assert_eq!(g.derived_subgroup().order(), 25920);
        assert!(g.is_transitive());
    }

    #[test]
    fn rejects_bad_names() {
        for bad in ["", "S", "S(", "S(5", "Q(3)", "PSL(2,8)", "PSL(3,2)", "S(5)x", "M11(2)"] {
            assert!(builtin(bad, None).is_err(), "{bad}");
        }
    }

    #[test]
    fn generator_file_format() {
        let g = parse_generator_file("# comment\n\n(1,2)(3,4) # trailing\n(1,2,3)\n", None).unwrap();
        assert_eq!(g.degree(), 4);
        assert_eq!(g.order(), 12);
        assert!(parse_generator_file("# nothing\n", None).is_err());
        assert!(parse_generator_file("(1,2,1)\n", None).is_err());
    }
}
