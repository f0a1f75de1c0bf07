use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::codec::{InputEncoding, PhaseCodec};
use crate::array::ArrayGeometry;
use crate::error::{Error, Result};
use crate::io::fmt_sig;
use crate::nn::Sample;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Split {
    Train,
    Validation,
    Test,
}

impl Split {
    pub fn as_str(&self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Validation => "validation",
            Split::Test => "test",
        }
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Split {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "train" => Ok(Split::Train),
            "validation" => Ok(Split::Validation),
            "test" => Ok(Split::Test),
            other => Err(Error::Parse(format!("unknown split '{other}'"))),
        }
    }
}

/// Fractions of the data assigned to each partition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitFractions {
    pub train: f64,
    pub validation: f64,
    pub test: f64,
}

impl Default for SplitFractions {
    fn default() -> Self {
        Self {
            train: 0.70,
            validation: 0.15,
            test: 0.15,
        }
    }
}

impl SplitFractions {
    pub fn new(train: f64, validation: f64, test: f64) -> Result<Self> {
        let s = Self {
            train,
            validation,
            test,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let parts = [self.train, self.validation, self.test];
        if parts.iter().any(|f| !f.is_finite() || *f < 0.0) {
            return Err(Error::Config(format!("split fractions must be non-negative: {parts:?}")));
        }
        if (parts.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
            return Err(Error::Config(format!("split fractions must sum to 1: {parts:?}")));
        }
        Ok(())
    }

    /// `(train, validation, test)` counts for `n` items. Validation and test
    /// round down; training takes the remainder.
    pub fn counts(&self, n: usize) -> (usize, usize, usize) {
        let v = ((self.validation * n as f64) + 1e-9).floor() as usize;
        let t = ((self.test * n as f64) + 1e-9).floor() as usize;
        let v = v.min(n);
        let t = t.min(n - v);
        (n - v - t, v, t)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DatasetConfig {
    pub split: SplitFractions,
    pub seed: u64,
    pub encoding: InputEncoding,
}

impl Default for DatasetConfig {
    fn default() -> Self {
        Self {
            split: SplitFractions::default(),
            seed: 1,
            encoding: InputEncoding::reference(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DatasetPair {
    pub steer_deg: f64,
    pub split: Split,
    pub input: Vec<f64>,
    pub target: Vec<f64>,
}

/// Input/target pairs ordered by steer direction.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SynthesisDataset {
    pub pairs: Vec<DatasetPair>,
}

/// 40 to 140 deg in 1 deg steps.
pub fn default_directions() -> Vec<f64> {
    (40..=140).map(f64::from).collect()
}

/// Seeded split labels over `n` sorted directions. Held-out directions are
/// drawn in shuffled order, skipping the two ends of the range and any
/// direction next to one already held out, so every held-out direction lies
/// between trained neighbours. If the fractions are too large for that,
/// the remainder is filled in shuffled order without the restriction.
fn assign_splits(n: usize, n_val: usize, n_test: usize, seed: u64) -> Vec<Split> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let want = n_val + n_test;
    let mut held = Vec::with_capacity(want);
    let mut blocked = vec![false; n];
    for &i in &order {
        if held.len() == want {
            break;
        }
        if i == 0 || i + 1 == n || blocked[i] {
            continue;
        }
        held.push(i);
        blocked[i - 1] = true;
        blocked[i] = true;
        blocked[i + 1] = true;
    }
    for &i in &order {
        if held.len() == want {
            break;
        }
        if !held.contains(&i) {
            held.push(i);
        }
    }
    let mut splits = vec![Split::Train; n];
    for (rank, &i) in held.iter().enumerate() {
        splits[i] = if rank < n_val { Split::Validation } else { Split::Test };
    }
    splits
}

/// Build the dataset for `directions`. Partition membership comes from
/// [`assign_splits`], so identical inputs give identical datasets.
pub fn generate(geom: &ArrayGeometry, directions: &[f64], cfg: &DatasetConfig) -> Result<SynthesisDataset> {
    cfg.split.validate()?;
    if directions.is_empty() {
        return Err(Error::arg("no steer directions given"));
    }
    let mut dirs = directions.to_vec();
    dirs.sort_by(f64::total_cmp);
    if dirs.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Config("duplicate steer directions".into()));
    }

    let (_, n_val, n_test) = cfg.split.counts(dirs.len());
    let splits = assign_splits(dirs.len(), n_val, n_test, cfg.seed);

    let codec = PhaseCodec::new(*geom);
    let pairs = dirs
        .iter()
        .zip(splits)
        .map(|(&steer, split)| {
            Ok(DatasetPair {
                steer_deg: steer,
                split,
                input: cfg.encoding.encode(steer)?,
                target: codec.target_for(steer),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SynthesisDataset { pairs })
}

impl SynthesisDataset {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn count(&self, split: Split) -> usize {
        self.pairs.iter().filter(|p| p.split == split).count()
    }

    pub fn samples(&self, split: Split) -> Vec<Sample> {
        self.pairs
            .iter()
            .filter(|p| p.split == split)
            .map(|p| Sample {
                input: p.input.clone(),
                target: p.target.clone(),
            })
            .collect()
    }

    pub fn steers(&self, split: Split) -> Vec<f64> {
        self.pairs
            .iter()
            .filter(|p| p.split == split)
            .map(|p| p.steer_deg)
            .collect()
    }

    fn widths(&self) -> Result<(usize, usize)> {
        let first = self
            .pairs
            .first()
            .ok_or_else(|| Error::Config("empty dataset".into()))?;
        let (ni, nt) = (first.input.len(), first.target.len());
        for p in &self.pairs {
            if p.input.len() != ni {
                return Err(Error::Dimension {
                    expected: ni,
                    got: p.input.len(),
                });
            }
            if p.target.len() != nt {
                return Err(Error::Dimension {
                    expected: nt,
                    got: p.target.len(),
                });
            }
        }
        Ok((ni, nt))
    }

    /// Columns `steer_deg,split,in_1..in_K,tgt_1..tgt_N`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let (ni, nt) = self.widths()?;
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["steer_deg".to_string(), "split".to_string()];
        header.extend((1..=ni).map(|i| format!("in_{i}")));
        header.extend((1..=nt).map(|i| format!("tgt_{i}")));
        w.write_record(&header)?;
        for p in &self.pairs {
            let mut rec = vec![fmt_sig(p.steer_deg), p.split.to_string()];
            rec.extend(p.input.iter().map(|v| fmt_sig(*v)));
            rec.extend(p.target.iter().map(|v| fmt_sig(*v)));
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(input);
        let header = r.headers()?.clone();
        let ni = header.iter().filter(|h| h.starts_with("in_")).count();
        let nt = header.iter().filter(|h| h.starts_with("tgt_")).count();
        if header.get(0) != Some("steer_deg") || header.get(1) != Some("split") || ni + nt + 2 != header.len() {
            return Err(Error::Parse("unrecognized dataset header".into()));
        }
        let num = |s: &str| -> Result<f64> {
            s.trim()
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("bad number '{s}': {e}")))
        };
        let mut pairs = Vec::new();
        for rec in r.records() {
            let rec = rec?;
            let vals: Vec<&str> = rec.iter().collect();
            pairs.push(DatasetPair {
                steer_deg: num(vals[0])?,
                split: vals[1].parse()?,
                input: vals[2..2 + ni].iter().map(|s| num(s)).collect::<Result<_>>()?,
                target: vals[2 + ni..].iter().map(|s| num(s)).collect::<Result<_>>()?,
            });
        }
        Ok(Self { pairs })
    }
}
