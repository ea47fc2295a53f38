//! JSON system files and the `--ranking` syntax.

use serde::{Deserialize, Serialize};
use sigstrength::{
    ConstantDecl, ConstantExpr, DifferenceSystem, Names, PowerProduct, Ranking, Shift, SigmaPolynomial, Term,
};

use crate::error::CliError;

/// On-disk form of a difference system. Shifts are raw exponent vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    pub m: usize,
    pub translations: Vec<String>,
    pub indeterminates: Vec<String>,
    #[serde(default)]
    pub constants: Vec<ConstantEntry>,
    pub polynomials: Vec<Vec<MonomialEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ranking: Option<RankingEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantEntry {
    pub name: String,
    #[serde(default)]
    pub nonzero: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialEntry {
    pub coeff: String,
    #[serde(default)]
    pub terms: Vec<FactorEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorEntry {
    pub shift: Vec<i64>,
    pub ind: String,
    #[serde(default = "one")]
    pub pow: u32,
}

fn one() -> u32 {
    1
}

/// Index vectors with the library's meaning: translations listed from most
/// to least significant, indeterminates from lowest to highest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RankingEntry {
    pub translation_priority: Vec<usize>,
    pub indeterminate_priority: Vec<usize>,
}

impl SystemFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn from_system(sys: &DifferenceSystem, rk: Option<&Ranking>) -> Self {
        let names = &sys.names;
        let polynomials = sys
            .polynomials
            .iter()
            .map(|p| {
                p.monomials()
                    .map(|(pp, c)| MonomialEntry {
                        coeff: c.to_string(),
                        terms: pp
                            .factors()
                            .iter()
                            .map(|(t, e)| FactorEntry {
                                shift: t.shift.exponents().to_vec(),
                                ind: names.indeterminates[t.ind].clone(),
                                pow: *e,
                            })
                            .collect(),
                    })
                    .collect()
            })
            .collect();
        SystemFile {
            m: sys.m(),
            translations: names.translations.clone(),
            indeterminates: names.indeterminates.clone(),
            constants: sys
                .constants
                .iter()
                .map(|c| ConstantEntry { name: c.name.clone(), nonzero: c.nonzero })
                .collect(),
            polynomials,
            ranking: rk.map(|r| RankingEntry {
                translation_priority: r.translation_priority().to_vec(),
                indeterminate_priority: r.indeterminate_priority().to_vec(),
            }),
        }
    }

    pub fn to_system(&self) -> Result<(DifferenceSystem, Ranking), CliError> {
        let parse_err = |msg: String| CliError::Parse(msg);
        if self.translations.len() != self.m {
            return Err(parse_err(format!("m = {} but {} translation names given", self.m, self.translations.len())));
        }
        let n = self.indeterminates.len();
        let mut polys = Vec::new();
        for (i, mons) in self.polynomials.iter().enumerate() {
            let mut p = SigmaPolynomial::zero(self.m, n);
            for (j, mon) in mons.iter().enumerate() {
                let at = format!("polynomial {}, monomial {}", i + 1, j + 1);
                let c: ConstantExpr = mon.coeff.parse().map_err(|e| parse_err(format!("{at}: {e}")))?;
                let mut factors = Vec::new();
                for f in &mon.terms {
                    if f.shift.len() != self.m {
                        return Err(parse_err(format!("{at}: shift {:?} does not have length {}", f.shift, self.m)));
                    }
                    let ind = self
                        .indeterminates
                        .iter()
                        .position(|y| *y == f.ind)
                        .ok_or_else(|| parse_err(format!("{at}: indeterminate {} is not declared", f.ind)))?;
                    if f.pow == 0 {
                        return Err(parse_err(format!("{at}: power must be positive")));
                    }
                    factors.push((Term::new(Shift::new(f.shift.clone()), ind), f.pow));
                }
                p = p.add(&SigmaPolynomial::monomial(self.m, n, c, PowerProduct::from_factors(factors)));
            }
            polys.push(p);
        }
        let names = Names { translations: self.translations.clone(), indeterminates: self.indeterminates.clone() };
        let constants =
            self.constants.iter().map(|c| ConstantDecl { name: c.name.clone(), nonzero: c.nonzero }).collect();
        let sys = DifferenceSystem::new(names, constants, polys).map_err(|e| parse_err(e.to_string()))?;
        let rk = match &self.ranking {
            Some(r) => Ranking::new(r.translation_priority.clone(), r.indeterminate_priority.clone())
                .map_err(|e| parse_err(e.to_string()))?,
            None => Ranking::standard(self.m, n),
        };
        if rk.m() != self.m || rk.n() != n {
            return Err(parse_err("ranking does not match the declared names".into()));
        }
        Ok((sys, rk))
    }
}

/// Parses `a2>a1`, `y2>y1` or both joined by `;`. Each group lists names from
/// greatest to least; omitted groups keep the standard order.
pub fn parse_ranking(text: &str, names: &Names) -> Result<Ranking, CliError> {
    let (m, n) = (names.translations.len(), names.indeterminates.len());
    let mut tp: Vec<usize> = (0..m).collect();
    let mut ip: Vec<usize> = (0..n).collect();
    for group in text.split(';').map(str::trim).filter(|g| !g.is_empty()) {
        let items: Vec<&str> = group.split('>').map(str::trim).collect();
        let find = |list: &[String]| items.iter().map(|s| list.iter().position(|x| x == s)).collect::<Option<Vec<_>>>();
        if let Some(t) = find(&names.translations) {
            tp = t;
        } else if let Some(mut i) = find(&names.indeterminates) {
            i.reverse();
            ip = i;
        } else {
            return Err(CliError::Parse(format!(
                "ranking group `{group}` does not name a permutation of translations or indeterminates"
            )));
        }
    }
    Ranking::new(tp, ip).map_err(|e| CliError::Parse(format!("ranking `{text}`: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranking_strings() {
        let names = Names::default_for(2, 2);
        let rk = parse_ranking("a2>a1", &names).unwrap();
        assert_eq!(rk.translation_priority(), &[1, 0]);
        assert_eq!(rk.indeterminate_priority(), &[0, 1]);
        let rk = parse_ranking("a1 > a2; y1 > y2", &names).unwrap();
        assert_eq!(rk.translation_priority(), &[0, 1]);
        assert_eq!(rk.indeterminate_priority(), &[1, 0]);
        assert!(parse_ranking("a2", &names).is_err());
        assert!(parse_ranking("a1>y1", &names).is_err());
    }

    #[test]
    fn file_errors() {
        let bad = SystemFile::parse("{\n  \"m\": 2,\n  \"oops\": 1\n}").unwrap_err();
        assert!(bad.to_string().contains("line 3"), "{bad}");
        let text = r#"{"m":1,"translations":["a1"],"indeterminates":["y"],
            "polynomials":[[{"coeff":"b","terms":[{"shift":[1],"ind":"y"}]}]]}"#;
        let err = SystemFile::parse(text).unwrap().to_system().unwrap_err();
        assert!(err.to_string().contains("b"), "{err}");
        let text = r#"{"m":1,"translations":["a1"],"indeterminates":["y"],
            "polynomials":[[{"coeff":"1","terms":[{"shift":[1,0],"ind":"y"}]}]]}"#;
        assert!(SystemFile::parse(text).unwrap().to_system().is_err());
    }
}
