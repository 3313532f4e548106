//! Sources for the sequence `H_1, H_2, ...` used by `verify-needed`.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use g2n_core::exactmath::{harmonic_prefix, random_positive_sequence};
use g2n_core::{validate_concave, ConcaveSequence, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SequenceSource {
    Harmonic,
    /// Seeded random sequence; concave unless exploratory mode is on.
    Random,
    File(PathBuf),
}

impl FromStr for SequenceSource {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "harmonic" => SequenceSource::Harmonic,
            "random" => SequenceSource::Random,
            path => SequenceSource::File(PathBuf::from(path)),
        })
    }
}

impl fmt::Display for SequenceSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceSource::Harmonic => f.write_str("harmonic"),
            SequenceSource::Random => f.write_str("random"),
            SequenceSource::File(p) => write!(f, "{}", p.display()),
        }
    }
}

/// Parses whitespace- or comma-separated values (`p/q`, integers or finite
/// decimals). Text after `#` on a line is ignored.
pub fn parse_sequence(text: &str, origin: &Path) -> Result<Vec<Rational>, CliError> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        for token in line.split(|c: char| c == ',' || c.is_whitespace()) {
            if token.is_empty() {
                continue;
            }
            let value: Rational = token.parse().map_err(|_| CliError::Sequence {
                path: origin.to_path_buf(),
                message: format!("line {}: cannot parse {token:?}", lineno + 1),
            })?;
            out.push(value);
        }
    }
    if out.is_empty() {
        return Err(CliError::Sequence {
            path: origin.to_path_buf(),
            message: "no values".into(),
        });
    }
    Ok(out)
}

/// A loaded sequence, ready to be truncated to `H_1..H_{T-1}` per `T`.
#[derive(Clone, Debug)]
pub enum LoadedSequence {
    Harmonic,
    Random { seed: u64, exploratory: bool },
    Fixed(Vec<Rational>),
}

impl LoadedSequence {
    pub fn load(
        source: &SequenceSource,
        seed: u64,
        exploratory: bool,
        t_max: u32,
    ) -> Result<Self, CliError> {
        match source {
            SequenceSource::Harmonic => Ok(LoadedSequence::Harmonic),
            SequenceSource::Random => Ok(LoadedSequence::Random { seed, exploratory }),
            SequenceSource::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::Sequence {
                    path: path.clone(),
                    message: e.to_string(),
                })?;
                let values = parse_sequence(&text, path)?;
                let needed = t_max as usize - 1;
                if values.len() < needed {
                    return Err(CliError::Sequence {
                        path: path.clone(),
                        message: format!("{} values, T={t_max} needs {needed}", values.len()),
                    });
                }
                if let Some(bad) = values.iter().find(|v| !v.is_positive()) {
                    return Err(CliError::Sequence {
                        path: path.clone(),
                        message: format!("value {bad} is not positive"),
                    });
                }
                if !exploratory && !validate_concave(&values) {
                    return Err(CliError::Sequence {
                        path: path.clone(),
                        message: "not concave increasing (use --exploratory for arbitrary positive sequences)"
                            .into(),
                    });
                }
                Ok(LoadedSequence::Fixed(values))
            }
        }
    }

    /// Short description recorded in every report row; random sources
    /// carry their seed.
    pub fn label(&self) -> String {
        match self {
            LoadedSequence::Harmonic => "harmonic".into(),
            LoadedSequence::Random { seed, .. } => format!("random:{seed}"),
            LoadedSequence::Fixed(_) => "file".into(),
        }
    }

    /// `H_1..H_{T-1}` for one `T`. Random sequences are seeded by `(seed, T)`.
    pub fn for_t(&self, t: u32) -> Vec<Rational> {
        let m = t as usize - 1;
        match self {
            LoadedSequence::Harmonic => harmonic_prefix(t - 1),
            LoadedSequence::Random { seed, exploratory } => {
                let mut rng =
                    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(1_000_003).wrapping_add(t as u64));
                if *exploratory {
                    random_positive_sequence(&mut rng, m)
                } else {
                    ConcaveSequence::random(&mut rng, m).values().to_vec()
                }
            }
            LoadedSequence::Fixed(values) => values[..m].to_vec(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_mixed_tokens() {
        let v = parse_sequence("1, 3/2\n# comment\n11/6 2.5 # tail\n", Path::new("x")).unwrap();
        assert_eq!(
            v,
            vec![
                Rational::one(),
                Rational::frac(3, 2),
                Rational::frac(11, 6),
                Rational::frac(5, 2)
            ]
        );
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_sequence("1 two 3", Path::new("x")).is_err());
        assert!(parse_sequence("# nothing\n", Path::new("x")).is_err());
    }

    #[test]
    fn source_names() {
        assert_eq!(
            "harmonic".parse::<SequenceSource>().unwrap(),
            SequenceSource::Harmonic
        );
        assert_eq!(
            "seq.txt".parse::<SequenceSource>().unwrap(),
            SequenceSource::File("seq.txt".into())
        );
    }

    #[test]
    fn random_is_seeded() {
        let a = LoadedSequence::Random {
            seed: 7,
            exploratory: false,
        };
        assert_eq!(a.for_t(20), a.for_t(20));
        assert!(validate_concave(&a.for_t(20)));
        assert_ne!(a.for_t(20)[..5], a.for_t(21)[..5]);
    }
}
