//! Seed syntax: `FAMILY:p1,p2,...`, with an optional `~` suffix to flip.
//!
//! | family       | parameters                 |
//! |--------------|----------------------------|
//! | `cp2`        | `m,n[,alpha,beta]`         |
//! | `cp2s`       | `lambda[,alpha]`           |
//! | `hirz-left`  | `n,c,d,r,s[,alpha]`        |
//! | `hirz-mid`   | `n,c,d,r,s[,alpha]`        |
//! | `hirz-right` | `n,r,s[,alpha]`            |
//! | `ruled`      | `g,n,r,s[,alpha]`          |

use classify::{Family, HirzebruchVariant, MinimalFamily, Orientation};
use graph_core::rational::{int, parse};
use graph_core::Rational;

use crate::CliError;

fn bad(s: &str, why: &str) -> CliError {
    CliError::Domain(format!("seed {s:?}: {why}"))
}

pub fn parse_seed(s: &str) -> Result<MinimalFamily, CliError> {
    let (body, orientation) = match s.strip_suffix('~') {
        Some(b) => (b, Orientation::Flipped),
        None => (s, Orientation::AsIs),
    };
    let (name, params) = body.split_once(':').ok_or_else(|| bad(s, "expected FAMILY:params"))?;
    let ps: Vec<&str> = params.split(',').map(str::trim).collect();
    let rat = |i: usize, default: Option<Rational>| -> Result<Rational, CliError> {
        match ps.get(i) {
            Some(p) => parse(p).map_err(|e| bad(s, &e.to_string())),
            None => default.ok_or_else(|| bad(s, "too few parameters")),
        }
    };
    let nat = |i: usize| -> Result<u64, CliError> {
        ps.get(i).ok_or_else(|| bad(s, "too few parameters"))?.parse().map_err(|_| bad(s, "expected an integer"))
    };
    let hirz = |variant| -> Result<Family, CliError> {
        Ok(Family::Hirzebruch {
            variant,
            n: nat(0)?,
            c: nat(1)?,
            d: nat(2)?,
            r: rat(3, None)?,
            s: rat(4, None)?,
            alpha: rat(5, Some(int(0)))?,
        })
    };
    let family = match name {
        "cp2" => Family::CP2 { m: nat(0)?, n: nat(1)?, alpha: rat(2, Some(int(0)))?, beta: rat(3, Some(int(1)))? },
        "cp2s" => Family::CP2Surface { lambda: rat(0, None)?, alpha: rat(1, Some(int(0)))? },
        "hirz-left" => hirz(HirzebruchVariant::Left)?,
        "hirz-mid" => hirz(HirzebruchVariant::Middle)?,
        "hirz-right" => Family::Hirzebruch {
            variant: HirzebruchVariant::Right,
            n: nat(0)?,
            c: 1,
            d: 1,
            r: rat(1, None)?,
            s: rat(2, None)?,
            alpha: rat(3, Some(int(0)))?,
        },
        "ruled" => Family::Ruled {
            genus: nat(0)? as u32,
            n: ps
                .get(1)
                .ok_or_else(|| bad(s, "too few parameters"))?
                .parse()
                .map_err(|_| bad(s, "expected an integer"))?,
            r: rat(2, None)?,
            s: rat(3, None)?,
            alpha: rat(4, Some(int(0)))?,
        },
        other => return Err(bad(s, &format!("unknown family {other}"))),
    };
    Ok(MinimalFamily { family, orientation })
}
