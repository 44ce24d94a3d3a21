//! Finite categories given by a full composition table.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    name: String,
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identities: Vec<usize>,
    /// `compose[g * arrows + f]` is `g ∘ f` when `dst f = src g`.
    compose: Vec<Option<usize>>,
}

impl FiniteCategory {
    /// A category from its complete data. Every law is checked.
    pub fn from_table(
        name: impl Into<String>,
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identities: Vec<usize>,
        composites: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let na = arrows.len();
        let mut compose = vec![None; na * na];
        for &(g, f, h) in composites {
            if g >= na || f >= na || h >= na {
                return Err(Error::validation("composition-table", format!("arrow index out of range in ({g}, {f}, {h})")));
            }
            match compose[g * na + f] {
                Some(old) if old != h => {
                    return Err(Error::validation(
                        "composition-table",
                        format!("{} ∘ {} given twice", arrows[g].name, arrows[f].name),
                    ))
                }
                _ => compose[g * na + f] = Some(h),
            }
        }
        let c = FiniteCategory { name: name.into(), objects, arrows, identities, compose };
        c.ensure_valid()?;
        Ok(c)
    }

    /// A category from its non-identity arrows. Identities `id_X` are added
    /// and composites with identities filled in.
    pub fn build(
        name: impl Into<String>,
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        composites: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let n = objects.len();
        for a in &arrows {
            if a.src >= n || a.dst >= n {
                return Err(Error::validation("arrow-endpoints", format!("{} has an unknown endpoint", a.name)));
            }
        }
        let mut all: Vec<Arrow> = objects.iter().enumerate().map(|(i, o)| Arrow { name: format!("id_{o}"), src: i, dst: i }).collect();
        all.extend(arrows);
        let mut table: Vec<(usize, usize, usize)> = composites.iter().map(|&(g, f, h)| (g + n, f + n, h + n)).collect();
        for (a, arrow) in all.iter().enumerate() {
            table.push((a, arrow.src, a));
            table.push((arrow.dst, a, a));
        }
        table.sort_unstable();
        table.dedup();
        Self::from_table(name, objects, all, (0..n).collect(), &table)
    }

    /// The poset generated by `relations`, one arrow `a<=b` per comparable pair.
    pub fn poset(name: impl Into<String>, elements: Vec<String>, relations: &[(usize, usize)]) -> Result<Self> {
        let n = elements.len();
        let mut le = vec![vec![false; n]; n];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(Error::validation("arrow-endpoints", format!("relation ({a}, {b}) out of range")));
            }
            le[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if le[i][k] && le[k][j] {
                        le[i][j] = true;
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if le[i][j] && le[j][i] {
                    return Err(Error::validation(
                        "antisymmetry",
                        format!("{} and {} are comparable both ways", elements[i], elements[j]),
                    ));
                }
            }
        }
        let mut index = BTreeMap::new();
        let mut arrows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && le[i][j] {
                    index.insert((i, j), n + arrows.len());
                    arrows.push(Arrow { name: format!("{}<={}", elements[i], elements[j]), src: i, dst: j });
                }
            }
        }
        let mut composites = Vec::new();
        for (&(i, j), &f) in &index {
            for (&(j2, k), &g) in index.range((j, 0)..(j + 1, 0)) {
                debug_assert_eq!(j, j2);
                composites.push((g - n, f - n, index[&(i, k)] - n));
            }
        }
        Self::build(name, elements, arrows, &composites)
    }

    /// Objects and identity arrows only.
    pub fn discrete(name: impl Into<String>, objects: Vec<String>) -> Self {
        Self::build(name, objects, Vec::new(), &[]).expect("discrete categories are valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn is_identity(&self, a: usize) -> bool {
        self.identities[self.arrows[a].src] == a
    }

    /// `g ∘ f`, or `None` when they do not compose.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose[g * self.arrows.len() + f]
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].src == x && self.arrows[a].dst == y).collect()
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Same arrows with source and target exchanged.
    pub fn opposite(&self) -> Self {
        let na = self.arrows.len();
        let mut compose = vec![None; na * na];
        for g in 0..na {
            for f in 0..na {
                compose[g * na + f] = self.compose(f, g);
            }
        }
        FiniteCategory {
            name: format!("{}^op", self.name),
            objects: self.objects.clone(),
            arrows: self.arrows.iter().map(|a| Arrow { name: a.name.clone(), src: a.dst, dst: a.src }).collect(),
            identities: self.identities.clone(),
            compose,
        }
    }

    /// True when any two objects are joined by a zigzag of arrows.
    pub fn is_connected(&self) -> bool {
        let n = self.objects.len();
        if n == 0 {
            return false;
        }
        let mut seen = BTreeSet::from([0]);
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for a in &self.arrows {
                for (p, q) in [(a.src, a.dst), (a.dst, a.src)] {
                    if p == x && seen.insert(q) {
                        stack.push(q);
                    }
                }
            }
        }
        seen.len() == n
    }

    /// Exhaustive check of the category laws. Failure messages start with
    /// the axiom name.
    pub fn validate(&self) -> Report {
        let mut r = Report::new("category")
            .with_bound("objects", self.objects.len() as i64)
            .with_bound("arrows", self.arrows.len() as i64);
        let (n, na) = (self.objects.len(), self.arrows.len());
        let mut names = BTreeSet::new();
        for a in &self.arrows {
            r.check(a.src < n && a.dst < n, || format!("arrow-endpoints: {} has an unknown endpoint", a.name));
            r.check(names.insert(&a.name), || format!("arrow-names: {} is repeated", a.name));
        }
        if !r.passed() {
            return r;
        }
        r.check(self.identities.len() == n, || "identity: one identity per object".into());
        for (x, &i) in self.identities.iter().enumerate() {
            r.check(i < na && self.arrows[i].src == x && self.arrows[i].dst == x, || {
                format!("identity: identity of {} is not an endomorphism of it", self.objects[x])
            });
        }
        if !r.passed() {
            return r;
        }
        for g in 0..na {
            for f in 0..na {
                let (ag, af) = (&self.arrows[g], &self.arrows[f]);
                match (af.dst == ag.src, self.compose(g, f)) {
                    (true, Some(h)) => {
                        let ah = &self.arrows[h];
                        r.check(ah.src == af.src && ah.dst == ag.dst, || {
                            format!("composition-endpoints: {} ∘ {} = {} has the wrong endpoints", ag.name, af.name, ah.name)
                        });
                    }
                    (true, None) => r.check(false, || format!("composition-total: {} ∘ {} is missing", ag.name, af.name)),
                    (false, Some(_)) => r.check(false, || {
                        format!("composition-endpoints: {} ∘ {} is given but they do not compose", ag.name, af.name)
                    }),
                    (false, None) => {}
                }
            }
        }
        if !r.passed() {
            return r;
        }
        for (f, a) in self.arrows.iter().enumerate() {
            r.check(self.compose(self.identities[a.dst], f) == Some(f) && self.compose(f, self.identities[a.src]) == Some(f), || {
                format!("identity: identities do not fix {}", a.name)
            });
        }
        for h in 0..na {
            for g in 0..na {
                let Some(hg) = self.compose(h, g) else { continue };
                for f in 0..na {
                    let Some(gf) = self.compose(g, f) else { continue };
                    r.check(self.compose(hg, f) == self.compose(h, gf), || {
                        format!(
                            "associativity: ({} ∘ {}) ∘ {} differs from {} ∘ ({} ∘ {})",
                            self.arrows[h].name, self.arrows[g].name, self.arrows[f].name,
                            self.arrows[h].name, self.arrows[g].name, self.arrows[f].name
                        )
                    });
                }
            }
        }
        r
    }

    fn ensure_valid(&self) -> Result<()> {
        let r = self.validate();
        match r.failures.first() {
            None => Ok(()),
            Some(msg) => {
                let (axiom, detail) = msg.split_once(": ").unwrap_or(("category", msg.as_str()));
                Err(Error::validation(axiom, detail))
            }
        }
    }
}

/// A functor between finite categories, by its action on indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functor {
    pub objects: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl Functor {
    /// Records the functor laws from `src` to `tgt` in `r`.
    pub fn check(&self, src: &FiniteCategory, tgt: &FiniteCategory, label: &str, r: &mut Report) {
        let ok = self.objects.len() == src.objects().len()
            && self.arrows.len() == src.arrows().len()
            && self.objects.iter().all(|&x| x < tgt.objects().len())
            && self.arrows.iter().all(|&a| a < tgt.arrows().len());
        r.check(ok, || format!("{label}: functor data has the wrong shape"));
        if !ok {
            return;
        }
        for (a, arrow) in src.arrows().iter().enumerate() {
            let image = tgt.arrow(self.arrows[a]);
            r.check(image.src == self.objects[arrow.src] && image.dst == self.objects[arrow.dst], || {
                format!("{label}: image of {} has the wrong endpoints", arrow.name)
            });
        }
        for x in 0..src.objects().len() {
            r.check(self.arrows[src.identity(x)] == tgt.identity(self.objects[x]), || {
                format!("{label}: identity of {} is not preserved", src.objects()[x])
            });
        }
        for g in 0..src.arrows().len() {
            for f in 0..src.arrows().len() {
                if let Some(h) = src.compose(g, f) {
                    r.check(tgt.compose(self.arrows[g], self.arrows[f]) == Some(self.arrows[h]), || {
                        format!("{label}: {} ∘ {} is not preserved", src.arrow(g).name, src.arrow(f).name)
                    });
                }
            }
        }
    }
}
