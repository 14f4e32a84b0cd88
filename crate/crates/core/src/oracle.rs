//! Brute-force ground truth: breadth-first search of the Cayley graph on
//! `x0, x1`, keyed by normal-form strings, plus the sweeps that check the
//! rest of the crate against it.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::{self, BufRead, Write};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::deadend::{self, matches_dead_end_form};
use crate::geodesic::GeneratorWord;
use crate::group::{apply_generator, Generator, TreePair};
use crate::metric::word_length;
use crate::normal_form::{self, NormalForm};

/// Radius accepted by default; larger balls need an explicit override.
pub const DEFAULT_MAX_RADIUS: u32 = 9;
/// Element budget when `THOMPSON_MAX_ELEMENTS` is unset.
pub const DEFAULT_MAX_ELEMENTS: usize = 4_000_000;
pub const MAX_ELEMENTS_VAR: &str = "THOMPSON_MAX_ELEMENTS";

const DUMP_HEADER: &str = "# thompson-ball v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_radius: u32,
    pub max_elements: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_radius: DEFAULT_MAX_RADIUS,
            max_elements: DEFAULT_MAX_ELEMENTS,
        }
    }
}

impl Limits {
    /// Defaults, with the element budget taken from `THOMPSON_MAX_ELEMENTS` if set.
    pub fn from_env() -> Result<Limits, OracleError> {
        let mut limits = Limits::default();
        if let Ok(v) = std::env::var(MAX_ELEMENTS_VAR) {
            limits.max_elements = v
                .trim()
                .parse()
                .map_err(|_| OracleError::BadLimit(format!("{MAX_ELEMENTS_VAR}={v}")))?;
        }
        Ok(limits)
    }
}

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("radius {requested} exceeds the cap {cap}")]
    RadiusCap { requested: u32, cap: u32 },
    #[error("ball would exceed {limit} elements while building sphere {radius}")]
    Capacity { limit: usize, radius: u32 },
    #[error("invalid limit {0}")]
    BadLimit(String),
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallEntry {
    pub key: String,
    pub pair: TreePair,
    pub distance: u32,
    /// Last letter of a geodesic reaching this element; `None` for the identity.
    pub parent: Option<Generator>,
}

/// Every element at distance at most `radius`, sphere by sphere, each sphere
/// sorted by key.
#[derive(Clone, Debug)]
pub struct Ball {
    radius: u32,
    entries: Vec<BallEntry>,
    index: HashMap<String, usize>,
    sphere_sizes: Vec<usize>,
}

pub fn key_of(pair: &TreePair) -> String {
    NormalForm::from_tree_pair(pair).to_string()
}

pub fn bfs_ball(radius: u32, limits: &Limits) -> Result<Ball, OracleError> {
    if radius > limits.max_radius {
        return Err(OracleError::RadiusCap {
            requested: radius,
            cap: limits.max_radius,
        });
    }
    let identity = TreePair::identity();
    let mut ball = Ball {
        radius: 0,
        entries: vec![BallEntry {
            key: key_of(&identity),
            pair: identity,
            distance: 0,
            parent: None,
        }],
        index: HashMap::new(),
        sphere_sizes: vec![1],
    };
    ball.index.insert(ball.entries[0].key.clone(), 0);
    let mut frontier = 0..1;
    for r in 1..=radius {
        let candidates: Vec<(String, TreePair, Generator)> = ball.entries[frontier.clone()]
            .par_iter()
            .flat_map_iter(|e| {
                Generator::ALL.into_iter().map(move |g| {
                    let p = apply_generator(&e.pair, g);
                    (key_of(&p), p, g)
                })
            })
            .collect();
        let mut fresh: HashMap<String, (TreePair, Generator)> = HashMap::new();
        for (key, pair, g) in candidates {
            if !ball.index.contains_key(&key) {
                fresh.entry(key).or_insert((pair, g));
            }
        }
        if ball.entries.len() + fresh.len() > limits.max_elements {
            return Err(OracleError::Capacity {
                limit: limits.max_elements,
                radius: r,
            });
        }
        let mut sphere: Vec<_> = fresh.into_iter().collect();
        sphere.sort_by(|a, b| a.0.cmp(&b.0));
        let start = ball.entries.len();
        for (key, (pair, g)) in sphere {
            ball.index.insert(key.clone(), ball.entries.len());
            ball.entries.push(BallEntry {
                key,
                pair,
                distance: r,
                parent: Some(g),
            });
        }
        ball.sphere_sizes.push(ball.entries.len() - start);
        ball.radius = r;
        frontier = start..ball.entries.len();
    }
    Ok(ball)
}

impl Ball {
    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `sphere_sizes()[k]` elements at distance exactly `k`.
    pub fn sphere_sizes(&self) -> &[usize] {
        &self.sphere_sizes
    }

    pub fn entries(&self) -> &[BallEntry] {
        &self.entries
    }

    pub fn get(&self, key: &str) -> Option<&BallEntry> {
        self.index.get(key).map(|&i| &self.entries[i])
    }

    pub fn distance(&self, pair: &TreePair) -> Option<u32> {
        self.get(&key_of(pair)).map(|e| e.distance)
    }

    /// The sub-ball of the given radius, which is a prefix of this one.
    pub fn restrict(&self, radius: u32) -> Ball {
        let radius = radius.min(self.radius);
        let sphere_sizes = self.sphere_sizes[..=radius as usize].to_vec();
        let entries = self.entries[..sphere_sizes.iter().sum()].to_vec();
        let index = entries.iter().enumerate().map(|(i, e)| (e.key.clone(), i)).collect();
        Ball {
            radius,
            entries,
            index,
            sphere_sizes,
        }
    }

    /// A geodesic word for `key`, rebuilt from parent letters.
    pub fn witness(&self, key: &str) -> Option<GeneratorWord> {
        let mut entry = self.get(key)?;
        let mut letters = Vec::with_capacity(entry.distance as usize);
        while let Some(g) = entry.parent {
            letters.push(g);
            let prev = apply_generator(&entry.pair, g.inverse());
            entry = self.get(&key_of(&prev))?;
        }
        letters.reverse();
        Some(GeneratorWord(letters))
    }

    /// Tab-separated `key distance parent` records after a versioned header.
    pub fn dump<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{DUMP_HEADER} radius={}", self.radius)?;
        for e in &self.entries {
            let parent = e.parent.map_or('-', Generator::letter);
            writeln!(out, "{}\t{}\t{}", e.key, e.distance, parent)?;
        }
        Ok(())
    }

    pub fn load<R: BufRead>(input: R) -> Result<Ball, OracleError> {
        let bad = |line: usize, message: String| OracleError::Format { line, message };
        let mut lines = input.lines();
        let header = lines.next().ok_or_else(|| bad(1, "empty dump".into()))??;
        let radius: u32 = header
            .strip_prefix(DUMP_HEADER)
            .and_then(|rest| rest.trim().strip_prefix("radius="))
            .and_then(|r| r.parse().ok())
            .ok_or_else(|| bad(1, format!("unrecognized header `{header}`")))?;
        let mut ball = Ball {
            radius,
            entries: Vec::new(),
            index: HashMap::new(),
            sphere_sizes: vec![0; radius as usize + 1],
        };
        for (i, line) in lines.enumerate() {
            let n = i + 2;
            let line = line?;
            let fields: Vec<&str> = line.split('\t').collect();
            let [key, distance, parent] = fields[..] else {
                return Err(bad(n, "expected three tab-separated fields".into()));
            };
            let nf = normal_form::parse(key)
                .map_err(|e| bad(n, e.to_string()))?
                .normal_form();
            let distance: u32 = distance.parse().map_err(|_| bad(n, format!("bad distance `{distance}`")))?;
            if distance > radius {
                return Err(bad(n, format!("distance {distance} beyond radius {radius}")));
            }
            let parent = match parent {
                "-" => None,
                p => Some(p.parse::<Generator>().map_err(|e| bad(n, e))?),
            };
            ball.sphere_sizes[distance as usize] += 1;
            ball.index.insert(key.to_string(), ball.entries.len());
            ball.entries.push(BallEntry {
                key: key.to_string(),
                pair: nf.to_tree_pair(),
                distance,
                parent,
            });
        }
        Ok(ball)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthViolation {
    pub key: String,
    pub distance: u32,
    pub word_length: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WordLengthReport {
    pub radius: u32,
    pub elements: usize,
    pub sphere_sizes: Vec<usize>,
    pub violations: Vec<LengthViolation>,
}

impl WordLengthReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "radius {} elements {}", self.radius, self.elements);
        for (k, n) in self.sphere_sizes.iter().enumerate() {
            let _ = writeln!(s, "sphere {k} {n}");
        }
        for v in &self.violations {
            let _ = writeln!(s, "violation {} distance {} length {}", v.key, v.distance, v.word_length);
        }
        let _ = writeln!(s, "violations {}", self.violations.len());
        s
    }
}

pub fn verify_word_length(ball: &Ball) -> WordLengthReport {
    let violations = ball
        .entries
        .par_iter()
        .filter_map(|e| {
            let len = word_length(&e.pair);
            (len != e.distance).then(|| LengthViolation {
                key: e.key.clone(),
                distance: e.distance,
                word_length: len,
            })
        })
        .collect();
    WordLengthReport {
        radius: ball.radius,
        elements: ball.len(),
        sphere_sizes: ball.sphere_sizes.clone(),
        violations,
    }
}

/// Adjacent elements at distance `d` and `d ± 1` only, for every element
/// whose neighbours all lie in the ball.
pub fn consistency_violations(ball: &Ball) -> Vec<String> {
    ball.entries
        .par_iter()
        .filter(|e| e.distance < ball.radius)
        .flat_map_iter(|e| {
            Generator::ALL.into_iter().filter_map(move |g| {
                let d = ball.distance(&apply_generator(&e.pair, g));
                match d {
                    Some(d) if d.abs_diff(e.distance) == 1 => None,
                    _ => Some(format!("{} {g} -> {d:?}", e.key)),
                }
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChartReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

/// Chart prediction against measured delta for every element and generator.
pub fn chart_soundness(ball: &Ball) -> ChartReport {
    let violations: Vec<String> = ball
        .entries
        .par_iter()
        .flat_map_iter(|e| {
            Generator::ALL
                .into_iter()
                .filter_map(move |g| deadend::generator_effect(&e.pair, g).err().map(|err| err.to_string()))
        })
        .collect();
    ChartReport {
        checked: 4 * ball.len(),
        violations,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeadEndRecord {
    pub key: String,
    pub length: u32,
    pub structural: bool,
    /// Lengths along `x0^-1`, `x0^-1 x1`, `x0^-1 x1 x1`.
    pub escape_lengths: [u32; 3],
    pub escapes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub key: String,
    pub dead_end: bool,
    pub structural: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeadEndCensus {
    pub radius: u32,
    /// Dead ends are certified by ball distances up to this length.
    pub certified_up_to: u32,
    pub dead_ends: Vec<DeadEndRecord>,
    /// Elements where the definitional and structural tests differ.
    pub disagreements: Vec<Disagreement>,
}

impl DeadEndCensus {
    /// `<normal form> <length> <structural yes/no>` per dead end.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for d in &self.dead_ends {
            let _ = writeln!(s, "{} {} {}", d.key, d.length, if d.structural { "yes" } else { "no" });
        }
        for d in &self.disagreements {
            let _ = writeln!(s, "# disagreement {} dead-end={} structural={}", d.key, d.dead_end, d.structural);
        }
        s
    }

    pub fn smallest_length(&self) -> Option<u32> {
        self.dead_ends.iter().map(|d| d.length).min()
    }
}

/// Dead ends among elements whose whole 1-neighbourhood lies in the ball,
/// decided by ball distances alone, together with the structural flag and
/// the escape path. Disagreements are collected over the whole ball, using
/// the caret-weight length where the ball cannot certify.
pub fn dead_end_census(ball: &Ball) -> DeadEndCensus {
    let certified = ball.radius.saturating_sub(1);
    let results: Vec<(Option<DeadEndRecord>, Option<Disagreement>)> = ball
        .entries
        .par_iter()
        .filter(|e| e.distance > 0)
        .map(|e| {
            let dead = if e.distance <= certified {
                Generator::ALL
                    .iter()
                    .all(|&g| ball.distance(&apply_generator(&e.pair, g)) == Some(e.distance - 1))
            } else {
                deadend::is_dead_end(&e.pair)
            };
            let structural = matches_dead_end_form(&e.pair);
            let disagreement = (dead != structural).then(|| Disagreement {
                key: e.key.clone(),
                dead_end: dead,
                structural,
            });
            let record = (dead && e.distance <= certified).then(|| {
                let a = apply_generator(&e.pair, Generator::X0Inv);
                let b = apply_generator(&a, Generator::X1);
                let c = apply_generator(&b, Generator::X1);
                let lengths = [word_length(&a), word_length(&b), word_length(&c)];
                let n = e.distance;
                DeadEndRecord {
                    key: e.key.clone(),
                    length: n,
                    structural,
                    escape_lengths: lengths,
                    escapes: lengths == [n - 1, n, n + 1],
                }
            });
            (record, disagreement)
        })
        .collect();
    let (records, disagreements): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    DeadEndCensus {
        radius: ball.radius,
        certified_up_to: certified,
        dead_ends: records.into_iter().flatten().collect(),
        disagreements: disagreements.into_iter().flatten().collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PocketReport {
    pub max_length: u32,
    pub checked: usize,
    /// Elements none of whose words of length at most 3 leave `B(|w|)`.
    pub violations: Vec<String>,
}

/// For each `w` with `|w| <= max_length`, looks for a word of length at most
/// 3 from `w` ending at distance `|w| + 1`. Needs `max_length + 3 <= radius`
/// so that every distance consulted is known.
pub fn no_three_pockets(ball: &Ball, max_length: u32) -> PocketReport {
    assert!(max_length + 3 <= ball.radius, "ball too small for the pocket sweep");
    let violations: Vec<String> = ball
        .entries
        .par_iter()
        .filter(|e| e.distance <= max_length)
        .filter_map(|e| {
            let target = e.distance + 1;
            let mut layer = vec![e.pair.clone()];
            for _ in 0..3 {
                let next: Vec<TreePair> = layer
                    .iter()
                    .flat_map(|p| Generator::ALL.map(|g| apply_generator(p, g)))
                    .collect();
                if next.iter().any(|p| ball.distance(p) == Some(target)) {
                    return None;
                }
                layer = next;
            }
            Some(e.key.clone())
        })
        .collect();
    PocketReport {
        max_length,
        checked: ball.entries.iter().filter(|e| e.distance <= max_length).count(),
        violations,
    }
}
