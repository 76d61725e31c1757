use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::PlanarDiagram;
use crate::error::DiagramError;

/// One passage through a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GaussVisit {
    /// 1-based crossing index.
    pub crossing: usize,
    pub over: bool,
    pub sign: i8,
}

/// Signed Gauss code, one visit sequence per component.
///
/// Text form: visits as `O+3` / `U-1` (marker, crossing sign, 1-based crossing
/// index), components separated by ` | `. The empty code is the unknot.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GaussCode {
    pub components: Vec<Vec<GaussVisit>>,
}

impl GaussCode {
    pub(super) fn from_diagram(d: &PlanarDiagram) -> Self {
        if d.crossings.is_empty() {
            return Self { components: vec![Vec::new()] };
        }
        let ends = d.arc_ends();
        let mut visited = vec![false; ends.len()];
        let mut components = Vec::new();
        for start in 0..ends.len() {
            if visited[start] {
                continue;
            }
            let mut seq = Vec::new();
            let mut cur = start;
            while !visited[cur] {
                visited[cur] = true;
                let (ci, pos) = ends[cur].1;
                let c = &d.crossings[ci];
                seq.push(GaussVisit { crossing: ci + 1, over: pos % 2 == 1, sign: c.sign });
                cur = (c.arcs[(pos + 2) % 4] - 1) as usize;
            }
            components.push(seq);
        }
        Self { components }
    }

    /// Checks that each crossing is visited exactly twice, once over and once under.
    pub fn validate(&self) -> Result<(), DiagramError> {
        let mut seen: std::collections::BTreeMap<usize, (usize, usize, i8)> = Default::default();
        for v in self.components.iter().flatten() {
            let e = seen.entry(v.crossing).or_insert((0, 0, v.sign));
            if v.over {
                e.0 += 1;
            } else {
                e.1 += 1;
            }
            if e.2 != v.sign {
                return Err(DiagramError::Gauss(format!("crossing {} has inconsistent signs", v.crossing)));
            }
        }
        for (c, (o, u, _)) in seen {
            if o != 1 || u != 1 {
                return Err(DiagramError::Gauss(format!("crossing {c} visited {o} over / {u} under")));
            }
        }
        Ok(())
    }
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self
            .components
            .iter()
            .map(|seq| {
                seq.iter()
                    .map(|v| {
                        format!(
                            "{}{}{}",
                            if v.over { 'O' } else { 'U' },
                            if v.sign > 0 { '+' } else { '-' },
                            v.crossing
                        )
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        f.write_str(&comps.join(" | "))
    }
}

impl FromStr for GaussCode {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut components = Vec::new();
        for comp in s.split('|') {
            let mut seq = Vec::new();
            for tok in comp.split_whitespace() {
                let bad = || DiagramError::Gauss(format!("bad visit `{tok}`"));
                let mut chars = tok.chars();
                let over = match chars.next() {
                    Some('O') => true,
                    Some('U') => false,
                    _ => return Err(bad()),
                };
                let sign = match chars.next() {
                    Some('+') => 1,
                    Some('-') => -1,
                    _ => return Err(bad()),
                };
                let crossing: usize = chars.as_str().parse().map_err(|_| bad())?;
                if crossing == 0 {
                    return Err(bad());
                }
                seq.push(GaussVisit { crossing, over, sign });
            }
            components.push(seq);
        }
        let code = Self { components };
        code.validate()?;
        Ok(code)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_gauss_code() {
        let d = PlanarDiagram::parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        let g = d.to_gauss_code();
        assert_eq!(g.to_string(), "U+1 O+3 U+2 O+1 U+3 O+2");
        assert_eq!(g.to_string().parse::<GaussCode>().unwrap(), g);
        g.validate().unwrap();
    }

    #[test]
    fn unknot_code_is_empty() {
        let g = PlanarDiagram::unknot().to_gauss_code();
        assert_eq!(g.to_string(), "");
        assert_eq!("".parse::<GaussCode>().unwrap(), g);
    }

    #[test]
    fn rejects_unbalanced_visits() {
        assert!("U+1 U+1".parse::<GaussCode>().is_err());
        assert!("O+1 U-1".parse::<GaussCode>().is_err());
        assert!("X+1".parse::<GaussCode>().is_err());
    }
}
