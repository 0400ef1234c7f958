use std::collections::BTreeMap;

use crate::diagram::{braid_closure, parse_pd, pretzel, DiagramError, LinkDiagram};

const BUNDLED: &str = include_str!("catalog.txt");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub pd: String,
    pub tags: BTreeMap<String, String>,
}

impl CatalogEntry {
    pub fn diagram(&self) -> Result<LinkDiagram, DiagramError> {
        parse_pd(&self.pd)
    }

    /// Name of the link this diagram presents: the part before `~`.
    pub fn base(&self) -> &str {
        self.name.split('~').next().unwrap_or(&self.name)
    }

    pub fn is_variant(&self) -> bool {
        self.name.contains('~')
    }

    pub fn has(&self, tag: &str) -> bool {
        self.tags.contains_key(tag)
    }

    /// Rebuilds the diagram from its recorded `braid=` or `pretzel=` recipe.
    pub fn rebuild(&self) -> Option<Result<LinkDiagram, DiagramError>> {
        let ints = |s: &str| -> Result<Vec<i32>, DiagramError> {
            s.split(',')
                .map(|x| {
                    x.trim()
                        .parse()
                        .map_err(|_| DiagramError::MalformedCode(format!("bad recipe {s:?}")))
                })
                .collect()
        };
        if let Some(b) = self.tags.get("braid") {
            let (n, w) = b.split_once(':')?;
            let n: usize = n.parse().ok()?;
            return Some(ints(w).and_then(|w| braid_closure(n, &w)));
        }
        self.tags
            .get("pretzel")
            .map(|p| ints(p).and_then(|t| pretzel(&t)))
    }
}

pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>, DiagramError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (name, rest) = line.split_once(':').ok_or_else(|| {
            DiagramError::MalformedCode(format!("catalog line {}: missing name", i + 1))
        })?;
        let mut parts = rest.split(';');
        let pd = parts.next().unwrap_or("").trim().to_string();
        let tags = parts
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| match t.split_once('=') {
                Some((k, v)) => (k.trim().to_string(), v.trim().to_string()),
                None => (t.to_string(), String::new()),
            })
            .collect();
        out.push(CatalogEntry {
            name: name.trim().to_string(),
            pd,
            tags,
        });
    }
    Ok(out)
}

pub fn bundled() -> Vec<CatalogEntry> {
    parse_catalog(BUNDLED).expect("bundled catalog parses")
}

pub fn find<'a>(entries: &'a [CatalogEntry], name: &str) -> Option<&'a CatalogEntry> {
    entries.iter().find(|e| e.name == name)
}

/// `(base, variant)` for every `base~variant` entry whose base is present.
pub fn reidemeister_pairs(entries: &[CatalogEntry]) -> Vec<(&CatalogEntry, &CatalogEntry)> {
    entries
        .iter()
        .filter(|e| e.is_variant())
        .filter_map(|v| find(entries, v.base()).map(|b| (b, v)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_entries_parse() {
        let all = bundled();
        assert!(all.len() > 20);
        for e in &all {
            let d = e
                .diagram()
                .unwrap_or_else(|err| panic!("{}: {err}", e.name));
            assert!(d.is_connected(), "{}", e.name);
            assert_eq!(
                e.has("alternating"),
                d.is_alternating() && d.crossing_count() > 0,
                "{}",
                e.name
            );
        }
        assert!(find(&all, "t37").unwrap().has("slow"));
    }

    #[test]
    fn recipes_reproduce_codes() {
        for e in bundled() {
            if let Some(d) = e.rebuild() {
                assert_eq!(d.unwrap().to_pd_string(), e.pd, "{}", e.name);
            }
        }
    }

    #[test]
    fn pairs_and_tags() {
        let entries =
            parse_catalog("a: UNKNOT\na~x: X(1,1,2,2) ; k=v ; flag # note\nb~y: UNKNOT\n").unwrap();
        assert_eq!(entries[1].tags.get("k").unwrap(), "v");
        assert!(entries[1].has("flag"));
        let pairs = reidemeister_pairs(&entries);
        assert_eq!(pairs.len(), 1);
        assert_eq!(
            (pairs[0].0.name.as_str(), pairs[0].1.name.as_str()),
            ("a", "a~x")
        );
        assert!(parse_catalog("no colon here").is_err());
    }
}
