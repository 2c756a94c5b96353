//! Per-vertex safety certificates.
//!
//! A coloured vertex is forwards-safe when, after deleting any k-1 other
//! vertices, a directed path inside its colour class still reaches a vertex
//! of the class outside `D ∪ E_B` (backwards-safe mirrors this with `E_A`
//! and reversed paths). The pipeline never argues safety from scratch; it
//! records one of three certificate shapes per vertex and direction, and a
//! validation pass checks the recorded justification bottom-up:
//!
//! - `OutsideDe`: the vertex itself lies outside the exceptional region, so
//!   the length-0 path works;
//! - `Neighbors`: at least k same-colour neighbours in the right direction,
//!   each safe in that direction — any deletion of k-1 vertices spares one;
//! - `Reach`: the vertex is covered by its colour's reach structure, whose
//!   core sets are themselves safe.

use crate::linkage::ReachSets;
use crate::vset::VertexSet;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SafetyCert {
    /// Forwards: `v ∉ D ∪ E_B`. Backwards: `v ∉ D ∪ E_A`.
    OutsideDe,
    /// At least k same-colour out-(in-)neighbours, each forwards-(backwards-)
    /// safe.
    Neighbors(Vec<u32>),
    /// Covered by the reach structure of `colour` (1-based).
    Reach { colour: usize },
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct SafetyLedger {
    pub fwd: Vec<Option<SafetyCert>>,
    pub bwd: Vec<Option<SafetyCert>>,
    /// Helper vertices coloured while securing the reach cores.
    pub z_helpers: Vec<u32>,
}

impl SafetyLedger {
    pub fn new(n: usize) -> SafetyLedger {
        SafetyLedger {
            fwd: vec![None; n],
            bwd: vec![None; n],
            z_helpers: Vec::new(),
        }
    }

    pub fn set_fwd(&mut self, v: u32, cert: SafetyCert) {
        let slot = &mut self.fwd[v as usize];
        debug_assert!(slot.is_none(), "forward certificate for {} set twice", v);
        *slot = Some(cert);
    }

    pub fn set_bwd(&mut self, v: u32, cert: SafetyCert) {
        let slot = &mut self.bwd[v as usize];
        debug_assert!(slot.is_none(), "backward certificate for {} set twice", v);
        *slot = Some(cert);
    }
}

/// Everything the validator needs to know about the pipeline state.
pub struct LedgerContext<'a> {
    pub k: usize,
    /// colour per vertex, 0 = uncoloured
    pub color: &'a [usize],
    pub d: &'a VertexSet,
    pub e_a: &'a VertexSet,
    pub e_b: &'a VertexSet,
    /// reach structure per colour (index 0 unused), with its covered vertices
    pub reach: &'a [Option<(ReachSets, VertexSet)>],
    /// edge query in the pipeline frame
    pub has_edge: &'a dyn Fn(u32, u32) -> bool,
}

#[derive(Clone, Copy, PartialEq)]
enum Mark {
    Unknown,
    InProgress,
    Valid,
}

/// Validates every coloured vertex's certificates; returns the first
/// violation as a message. Certificates only ever cite safety in their own
/// direction, so each direction validates against its own memo table.
pub fn validate_ledger(ctx: &LedgerContext, ledger: &SafetyLedger) -> Result<(), String> {
    let n = ctx.color.len();
    let mut fwd_mark = vec![Mark::Unknown; n];
    let mut bwd_mark = vec![Mark::Unknown; n];
    for v in 0..n as u32 {
        if ctx.color[v as usize] == 0 {
            if ledger.fwd[v as usize].is_some() || ledger.bwd[v as usize].is_some() {
                return Err(format!("uncoloured vertex {} holds a certificate", v));
            }
            continue;
        }
        validate_dir(ctx, ledger, v, true, &mut fwd_mark)?;
        validate_dir(ctx, ledger, v, false, &mut bwd_mark)?;
    }
    Ok(())
}

fn validate_dir(
    ctx: &LedgerContext,
    ledger: &SafetyLedger,
    v: u32,
    forwards: bool,
    marks: &mut [Mark],
) -> Result<(), String> {
    let dir_name = if forwards { "forwards" } else { "backwards" };
    match marks[v as usize] {
        Mark::Valid => return Ok(()),
        Mark::InProgress => {
            return Err(format!("{} certificate of {} is circular", dir_name, v));
        }
        Mark::Unknown => {}
    }
    marks[v as usize] = Mark::InProgress;

    let certs = if forwards { &ledger.fwd } else { &ledger.bwd };
    let cert = certs[v as usize]
        .as_ref()
        .ok_or_else(|| format!("coloured vertex {} lacks a {} certificate", v, dir_name))?;
    let colour = ctx.color[v as usize];

    match cert {
        SafetyCert::OutsideDe => {
            let bad = if forwards {
                ctx.d.contains(v) || ctx.e_b.contains(v)
            } else {
                ctx.d.contains(v) || ctx.e_a.contains(v)
            };
            if bad {
                return Err(format!(
                    "{} OutsideDe certificate of {} contradicts membership",
                    dir_name, v
                ));
            }
        }
        SafetyCert::Neighbors(ws) => {
            if ws.len() < ctx.k {
                return Err(format!(
                    "{} certificate of {} lists {} < k neighbours",
                    dir_name,
                    v,
                    ws.len()
                ));
            }
            let mut seen = Vec::new();
            for &w in ws {
                if seen.contains(&w) {
                    return Err(format!("certificate of {} repeats neighbour {}", v, w));
                }
                seen.push(w);
                if ctx.color[w as usize] != colour {
                    return Err(format!(
                        "{} certificate of {} cites {} of another colour",
                        dir_name, v, w
                    ));
                }
                let edge_ok = if forwards {
                    (ctx.has_edge)(v, w)
                } else {
                    (ctx.has_edge)(w, v)
                };
                if !edge_ok {
                    return Err(format!(
                        "{} certificate of {} cites non-neighbour {}",
                        dir_name, v, w
                    ));
                }
                validate_dir(ctx, ledger, w, forwards, marks)?;
            }
        }
        SafetyCert::Reach { colour: rj } => {
            if *rj != colour {
                return Err(format!("reach certificate of {} names colour {}", v, rj));
            }
            let Some((rs, covered)) = ctx.reach.get(*rj).and_then(|o| o.as_ref()) else {
                return Err(format!("no reach structure for colour {}", rj));
            };
            if !covered.contains(v) {
                return Err(format!("vertex {} outside the reach cover of colour {}", v, rj));
            }
            let (prime, core) = if forwards {
                (&rs.u_prime, &rs.u)
            } else {
                (&rs.w_prime, &rs.w)
            };
            for p in prime.iter() {
                if ctx.color[p as usize] != *rj {
                    return Err(format!(
                        "reach support vertex {} of colour {} is coloured {}",
                        p, rj, ctx.color[p as usize]
                    ));
                }
            }
            for u in core.iter() {
                validate_dir(ctx, ledger, u, forwards, marks)?;
            }
        }
    }
    marks[v as usize] = Mark::Valid;
    Ok(())
}
