//! Output formatting for the CLI. Table output is for people; csv and json
//! are stable, sorted and free of timestamps in data rows.

use std::io::Write;

use serde::Serialize;
use serde_json::json;

use super::Format;
use crate::bwx::BijectionTrace;
use crate::classification::{ClassCountRow, ClassPartition};
use crate::enumeration::CountTriple;
use crate::error::Result;
use crate::perm::Permutation;
use crate::shape::{FerrersShape, Transversal};
use crate::verification::CheckReport;

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn write_json(out: &mut dyn Write, value: &impl Serialize) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

#[derive(Debug, Serialize)]
pub struct CountRow {
    pub pattern: Permutation,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shape: Option<FerrersShape>,
    #[serde(flatten)]
    pub counts: CountTriple,
}

pub fn count(out: &mut dyn Write, format: Format, row: &CountRow) -> Result<()> {
    let (label, value) = match (&row.n, &row.shape) {
        (_, Some(s)) => ("shape", s.to_string()),
        (Some(n), None) => ("n", n.to_string()),
        (None, None) => ("n", String::new()),
    };
    let c = row.counts;
    match format {
        Format::Table => {
            let p = row.pattern.to_string();
            let w = p.len().max(7);
            let vw = value.len().max(label.len());
            writeln!(out, "{:<w$}  {:<vw$}  {:>12}  {:>12}  {:>12}", "pattern", label, "total", "even", "odd")?;
            writeln!(out, "{:<w$}  {:<vw$}  {:>12}  {:>12}  {:>12}", p, value, c.total, c.even, c.odd)?;
        }
        Format::Csv => {
            writeln!(out, "pattern,{label},total,even,odd")?;
            writeln!(
                out,
                "{},{},{},{},{}",
                csv_field(&row.pattern.to_string()),
                csv_field(&value),
                c.total,
                c.even,
                c.odd
            )?;
        }
        Format::Json => write_json(out, row)?,
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct ClassLine {
    block: usize,
    pattern: Permutation,
    representative: Permutation,
    /// `distinct` opens a block; `proven` joins the previous row by a
    /// proven equivalence; `conjectured(N)` joins it by equal counts only.
    provenance: String,
}

/// Orders each block by proven sub-block and labels every row.
fn class_lines(partition: &ClassPartition, proven: Option<&ClassPartition>) -> Vec<ClassLine> {
    let horizon = partition.horizon.unwrap_or(0);
    let mut lines = Vec::new();
    for (bi, block) in partition.blocks.iter().enumerate() {
        let group = |p: &Permutation| proven.and_then(|pp| pp.block_of(p));
        let mut members = block.members.clone();
        members.sort_by_key(|m| (group(m), m.clone()));
        let mut prev: Option<Option<usize>> = None;
        for m in members {
            let g = group(&m);
            let provenance = match prev {
                None => "distinct".to_string(),
                Some(pg) if pg.is_some() && pg == g => "proven".to_string(),
                Some(_) => format!("conjectured({horizon})"),
            };
            prev = Some(g);
            lines.push(ClassLine {
                block: bi + 1,
                pattern: m,
                representative: block.representative.clone(),
                provenance,
            });
        }
    }
    lines
}

fn classification_table(
    out: &mut dyn Write,
    partition: &ClassPartition,
    lines: &[ClassLine],
) -> Result<()> {
    let horizon = partition
        .horizon
        .map_or_else(|| "proven".to_string(), |n| format!("n <= {n}"));
    writeln!(
        out,
        "S_{} {} classes ({horizon}): {} blocks",
        partition.k,
        partition.mode.name(),
        partition.num_blocks()
    )?;
    let w = partition.k.max(7);
    let rule = "-".repeat(w + 24);
    writeln!(out, "{:>5}  {:<w$}  provenance", "block", "pattern")?;
    for line in lines {
        if line.provenance == "distinct" {
            writeln!(out, "{rule}")?;
        } else if line.provenance != "proven" {
            writeln!(out, "{}", ". ".repeat(rule.len() / 2))?;
        }
        writeln!(
            out,
            "{:>5}  {:<w$}  {}",
            line.block,
            line.pattern.to_string(),
            line.provenance
        )?;
    }
    writeln!(out, "{rule}")?;
    Ok(())
}

fn classification_json(partition: &ClassPartition, lines: &[ClassLine]) -> serde_json::Value {
    json!({
        "k": partition.k,
        "mode": partition.mode,
        "horizon": partition.horizon,
        "num_blocks": partition.num_blocks(),
        "blocks": partition.blocks,
        "rows": lines,
    })
}

pub fn classification(
    out: &mut dyn Write,
    format: Format,
    partition: &ClassPartition,
    proven: Option<&ClassPartition>,
) -> Result<()> {
    let lines = class_lines(partition, proven);
    match format {
        Format::Table => classification_table(out, partition, &lines)?,
        Format::Csv => {
            writeln!(out, "block,pattern,representative,provenance")?;
            for l in &lines {
                writeln!(
                    out,
                    "{},{},{},{}",
                    l.block,
                    csv_field(&l.pattern.to_string()),
                    csv_field(&l.representative.to_string()),
                    csv_field(&l.provenance)
                )?;
            }
        }
        Format::Json => write_json(out, &classification_json(partition, &lines))?,
    }
    Ok(())
}

pub fn map(
    out: &mut dyn Write,
    format: Format,
    input: &Permutation,
    image: &Transversal,
    trace: &BijectionTrace,
) -> Result<()> {
    match format {
        Format::Table => {
            writeln!(out, "input   {input}")?;
            writeln!(out, "shape   {}", image.shape())?;
            writeln!(out, "output  {}", image.perm())?;
            writeln!(out, "trace")?;
            write_json(out, trace)?;
        }
        Format::Csv => {
            writeln!(out, "input,shape,t,direction,output,applications,sign_flips")?;
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                csv_field(&input.to_string()),
                csv_field(&image.shape().to_string()),
                trace.t,
                serde_json::to_value(trace.direction)?.as_str().unwrap_or_default(),
                csv_field(&image.perm().to_string()),
                trace.applications,
                trace.sign_flips
            )?;
        }
        Format::Json => write_json(
            out,
            &json!({
                "input": input,
                "shape": image.shape(),
                "output": image.perm(),
                "trace": trace,
            }),
        )?,
    }
    Ok(())
}

pub fn report(out: &mut dyn Write, format: Format, r: &CheckReport) -> Result<()> {
    let kv = |m: &dyn Fn() -> Vec<(String, String)>| {
        m().into_iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let params = kv(&|| r.params.iter().map(|(k, v)| (k.clone(), v.to_string())).collect());
    let horizons = kv(&|| r.horizons.iter().map(|(k, v)| (k.clone(), v.to_string())).collect());
    match format {
        Format::Table => {
            writeln!(out, "check     {}", r.name)?;
            writeln!(out, "status    {}", r.status)?;
            writeln!(out, "params    {params}")?;
            writeln!(out, "horizons  {horizons}")?;
            if let Some(w) = &r.witness {
                writeln!(out, "witness   {w}")?;
            }
            for note in &r.observations {
                writeln!(out, "note      {note}")?;
            }
            writeln!(out, "elapsed   {} ms", r.elapsed_ms)?;
            writeln!(out, "version   {}", r.tool_version)?;
        }
        Format::Csv => {
            writeln!(out, "name,status,params,horizons,witness")?;
            let witness = r.witness.as_ref().map(|w| w.to_string()).unwrap_or_default();
            writeln!(
                out,
                "{},{},{},{},{}",
                csv_field(&r.name),
                r.status,
                csv_field(&params),
                csv_field(&horizons),
                csv_field(&witness)
            )?;
        }
        Format::Json => write_json(out, r)?,
    }
    Ok(())
}

pub fn tables(
    out: &mut dyn Write,
    format: Format,
    rows: &[ClassCountRow],
    partitions: &[(ClassPartition, Option<ClassPartition>)],
) -> Result<()> {
    match format {
        Format::Table => {
            writeln!(out, "Number of classes for patterns of length k")?;
            writeln!(
                out,
                "{:>2}  {:>5}  {:>5}  {:>9}  {:>9}  {:>10}  {:>10}",
                "k", "n <=", "wilf", "reference", "even-wilf", "reference", "match"
            )?;
            for r in rows {
                let ok = if r.wilf_matches && r.even_wilf_matches { "yes" } else { "no" };
                writeln!(
                    out,
                    "{:>2}  {:>5}  {:>5}  {:>9}  {:>9}  {:>10}  {:>10}",
                    r.k,
                    r.horizon,
                    r.wilf,
                    r.reference_wilf,
                    r.even_wilf,
                    r.reference_even_wilf.to_string(),
                    ok
                )?;
            }
            for (partition, proven) in partitions.iter().filter(|(p, _)| p.k >= 2) {
                writeln!(out)?;
                classification_table(out, partition, &class_lines(partition, proven.as_ref()))?;
            }
        }
        Format::Csv => {
            writeln!(out, "k,horizon,wilf,reference_wilf,even_wilf,reference_even_wilf,wilf_matches,even_wilf_matches")?;
            for r in rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    r.k,
                    r.horizon,
                    r.wilf,
                    r.reference_wilf,
                    r.even_wilf,
                    csv_field(&r.reference_even_wilf.to_string()),
                    r.wilf_matches,
                    r.even_wilf_matches
                )?;
            }
            writeln!(out)?;
            writeln!(out, "k,block,pattern,representative,provenance")?;
            for (partition, proven) in partitions {
                for l in class_lines(partition, proven.as_ref()) {
                    writeln!(
                        out,
                        "{},{},{},{},{}",
                        partition.k,
                        l.block,
                        csv_field(&l.pattern.to_string()),
                        csv_field(&l.representative.to_string()),
                        csv_field(&l.provenance)
                    )?;
                }
            }
        }
        Format::Json => {
            let classes: Vec<_> = partitions
                .iter()
                .map(|(p, proven)| classification_json(p, &class_lines(p, proven.as_ref())))
                .collect();
            write_json(out, &json!({ "class_counts": rows, "classifications": classes }))?;
        }
    }
    Ok(())
}
