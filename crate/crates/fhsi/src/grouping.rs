//! Single-pass grouping of a palette corpus: each palette joins the
//! existing group with the smallest average dissimilarity, or founds a
//! new group when even the closest group is at or beyond the threshold.
//!
//! The procedure is order-sensitive; callers fix the processing order
//! (the CLI sorts by file name) and identical input order plus threshold
//! reproduces identical groups byte-for-byte in the checkpoint.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::exec;
use crate::fuzzy::{FuzzyColor, FuzzyColorSpace};
use crate::palette::{DifferenceParams, FuzzyPalette, PaletteMetric};

/// One group of images sharing similar palettes. The founding member's
/// palette is the group prototype and never updates.
#[derive(Debug, Clone, PartialEq)]
pub struct PaletteGroup {
    pub id: usize,
    pub members: Vec<FuzzyPalette>,
    pub prototype: FuzzyPalette,
}

impl PaletteGroup {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// The outcome of clustering a corpus.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupingResult {
    pub groups: Vec<PaletteGroup>,
    pub threshold: f64,
    pub corpus_size: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClusterParams {
    pub threshold: f64,
    pub difference: DifferenceParams,
}

impl ClusterParams {
    pub fn new(threshold: f64, difference: DifferenceParams) -> Result<Self> {
        if !(threshold > 0.0 && threshold <= 1.0) {
            return Err(Error::InvalidParameter {
                name: "threshold",
                reason: format!("must be in (0, 1], got {threshold}"),
            });
        }
        Ok(ClusterParams {
            threshold,
            difference,
        })
    }
}

/// Groups palettes in their given order. For each palette the mean
/// dissimilarity against every member of each existing group is
/// computed; the palette founds a new group when the minimum mean is at
/// or above the threshold, otherwise it joins the closest group (ties
/// to the lower group id).
pub fn cluster_corpus(
    palettes: Vec<FuzzyPalette>,
    space: &FuzzyColorSpace,
    params: &ClusterParams,
) -> Result<GroupingResult> {
    if palettes.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let metric = PaletteMetric::new(space, params.difference);
    let corpus_size = palettes.len();
    let mut groups: Vec<PaletteGroup> = Vec::new();

    for palette in palettes {
        // Group means can be evaluated in parallel; the join decision
        // below stays sequential in input order.
        let means: Vec<f64> = exec::par_map(&groups, |g| {
            let total: f64 = g
                .members
                .iter()
                .map(|m| metric.difference(&palette, m))
                .sum();
            total / g.members.len() as f64
        });

        let best = means
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap().then(a.0.cmp(&b.0)));

        match best {
            Some((id, &mean)) if mean < params.threshold => {
                groups[id].members.push(palette);
            }
            _ => {
                let id = groups.len();
                groups.push(PaletteGroup {
                    id,
                    prototype: palette.clone(),
                    members: vec![palette],
                });
            }
        }
    }

    Ok(GroupingResult {
        groups,
        threshold: params.threshold,
        corpus_size,
    })
}

/// Groups holding strictly more members than the per-group average.
/// May be empty when every group has the same size.
pub fn dominant_groups(result: &GroupingResult) -> Vec<&PaletteGroup> {
    let average = result.corpus_size as f64 / result.groups.len() as f64;
    result
        .groups
        .iter()
        .filter(|g| g.members.len() as f64 > average)
        .collect()
}

// --- checkpoint serialization -------------------------------------------
//
// Line-oriented text format, one palette entry token per
// `Hue/Sat/Int:weight`, weights printed losslessly:
//
//   fhsi checkpoint 1
//   threshold 0.25
//   corpus 30
//   groups 2
//   group 0 members 2
//   prototype Red/High/Medium:0.75 Cyan/Low/Dark:0.25
//   member img_001.png
//   palette Red/High/Medium:0.75 Cyan/Low/Dark:0.25
//   member img_007.png
//   palette Red/High/Medium:0.8 Cyan/Low/Dark:0.2

fn palette_tokens(p: &FuzzyPalette) -> String {
    p.entries()
        .iter()
        .map(|e| format!("{}:{}", e.color, e.weight))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn write_checkpoint(result: &GroupingResult, mut w: impl Write) -> std::io::Result<()> {
    writeln!(w, "fhsi checkpoint 1")?;
    writeln!(w, "threshold {}", result.threshold)?;
    writeln!(w, "corpus {}", result.corpus_size)?;
    writeln!(w, "groups {}", result.groups.len())?;
    for group in &result.groups {
        writeln!(w, "group {} members {}", group.id, group.members.len())?;
        writeln!(w, "prototype {}", palette_tokens(&group.prototype))?;
        for member in &group.members {
            writeln!(w, "member {}", member.source_id())?;
            writeln!(w, "palette {}", palette_tokens(member))?;
        }
    }
    Ok(())
}

struct LineReader<R> {
    inner: R,
    line_no: usize,
}

impl<R: BufRead> LineReader<R> {
    fn next_line(&mut self) -> Result<Option<String>> {
        let mut buf = String::new();
        let n = self
            .inner
            .read_line(&mut buf)
            .map_err(|e| Error::Checkpoint {
                line: self.line_no + 1,
                message: e.to_string(),
            })?;
        if n == 0 {
            return Ok(None);
        }
        self.line_no += 1;
        while buf.ends_with('\n') || buf.ends_with('\r') {
            buf.pop();
        }
        Ok(Some(buf))
    }

    fn expect_line(&mut self) -> Result<String> {
        self.next_line()?.ok_or_else(|| Error::Checkpoint {
            line: self.line_no + 1,
            message: "unexpected end of file".into(),
        })
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Checkpoint {
            line: self.line_no,
            message: message.into(),
        })
    }
}

fn parse_palette_tokens(tokens: &str, source_id: &str, line: usize) -> Result<FuzzyPalette> {
    let mut masses: Vec<(FuzzyColor, f64)> = Vec::new();
    for token in tokens.split_whitespace() {
        let (name, weight) = token.rsplit_once(':').ok_or(Error::Checkpoint {
            line,
            message: format!("palette entry {token:?} is not Hue/Sat/Int:weight"),
        })?;
        let color: FuzzyColor = name.parse().map_err(|_| Error::Checkpoint {
            line,
            message: format!("unknown fuzzy color {name:?}"),
        })?;
        let weight: f64 = weight.parse().map_err(|_| Error::Checkpoint {
            line,
            message: format!("bad weight in {token:?}"),
        })?;
        masses.push((color, weight));
    }
    if masses.is_empty() {
        return Err(Error::Checkpoint {
            line,
            message: "palette has no entries".into(),
        });
    }
    FuzzyPalette::from_masses(masses.iter().copied(), masses.len(), source_id).map_err(|e| {
        Error::Checkpoint {
            line,
            message: e.to_string(),
        }
    })
}

fn parse_prefixed<'a, R: BufRead>(
    r: &LineReader<R>,
    line: &'a str,
    prefix: &str,
) -> Result<&'a str> {
    line.strip_prefix(prefix)
        .ok_or(())
        .or_else(|_| r.fail(format!("expected {prefix:?} line, got {line:?}")))
}

fn parse_field<T: std::str::FromStr, R: BufRead>(
    r: &LineReader<R>,
    value: &str,
    what: &str,
) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| ())
        .or_else(|_| r.fail(format!("bad {what}: {value:?}")))
}

pub fn read_checkpoint(reader: impl BufRead) -> Result<GroupingResult> {
    let mut r = LineReader {
        inner: reader,
        line_no: 0,
    };

    let header = r.expect_line()?;
    if header != "fhsi checkpoint 1" {
        return r.fail(format!("unrecognized header {header:?}"));
    }
    let line = r.expect_line()?;
    let threshold: f64 = parse_field(&r, parse_prefixed(&r, &line, "threshold ")?, "threshold")?;
    let line = r.expect_line()?;
    let corpus_size: usize = parse_field(&r, parse_prefixed(&r, &line, "corpus ")?, "corpus size")?;
    let line = r.expect_line()?;
    let group_count: usize = parse_field(&r, parse_prefixed(&r, &line, "groups ")?, "group count")?;

    let mut groups = Vec::with_capacity(group_count);
    for expected_id in 0..group_count {
        let line = r.expect_line()?;
        let rest = parse_prefixed(&r, &line, "group ")?;
        let (id_str, members_part) = rest.split_once(" members ").ok_or(Error::Checkpoint {
            line: r.line_no,
            message: format!("malformed group header {line:?}"),
        })?;
        let id: usize = parse_field(&r, id_str, "group id")?;
        if id != expected_id {
            return r.fail(format!(
                "group id {id} out of order, expected {expected_id}"
            ));
        }
        let member_count: usize = parse_field(&r, members_part, "member count")?;
        if member_count == 0 {
            return r.fail("group has no members");
        }

        let line = r.expect_line()?;
        let proto_tokens = parse_prefixed(&r, &line, "prototype ")?.to_string();
        let proto_line = r.line_no;
        // Validate eagerly so errors point at the prototype line; the
        // source id is fixed up once the founding member is known.
        parse_palette_tokens(&proto_tokens, "", proto_line)?;

        let mut members = Vec::with_capacity(member_count);
        for _ in 0..member_count {
            let line = r.expect_line()?;
            let source_id = parse_prefixed(&r, &line, "member ")?.to_string();
            let line = r.expect_line()?;
            let tokens = parse_prefixed(&r, &line, "palette ")?;
            members.push(parse_palette_tokens(tokens, &source_id, r.line_no)?);
        }

        let prototype = parse_palette_tokens(&proto_tokens, members[0].source_id(), proto_line)?;
        groups.push(PaletteGroup {
            id,
            members,
            prototype,
        });
    }

    if let Some(extra) = r.next_line()? {
        if !extra.trim().is_empty() {
            return r.fail(format!("trailing content {extra:?}"));
        }
    }

    let total: usize = groups.iter().map(|g| g.members.len()).sum();
    if total != corpus_size {
        return r.fail(format!(
            "member count {total} does not match corpus size {corpus_size}"
        ));
    }

    Ok(GroupingResult {
        groups,
        threshold,
        corpus_size,
    })
}
