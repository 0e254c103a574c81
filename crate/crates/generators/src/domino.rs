//! Domino systems, their encoding on top of the index hierarchy, torus
//! tilings and a backtracking tiler.

use std::collections::BTreeSet;

use fol_semantics::Structure;
use fol_syntax::{Formula, Term};
use serde::{Deserialize, Serialize};

use crate::build::{and, atom, cnst, eq, exists, forall, iff, imp, not, or, var};
use crate::error::GeneratorError;
use crate::hierarchy::{build_hierarchy_model, hierarchy_parts, HierarchyParams, Symbols, DEFAULT_ELEMENT_CAP};

/// Tiles with allowed horizontal (`h`: left, right) and vertical
/// (`v`: lower, upper) neighbour pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominoSystem {
    pub tiles: Vec<String>,
    #[serde(rename = "H")]
    pub h: BTreeSet<(String, String)>,
    #[serde(rename = "V")]
    pub v: BTreeSet<(String, String)>,
}

/// The JSON file format: a domino system plus the initial word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominoFile {
    #[serde(flatten)]
    pub system: DominoSystem,
    #[serde(default)]
    pub word: Vec<String>,
}

impl DominoFile {
    pub fn from_json(text: &str) -> Result<DominoFile, GeneratorError> {
        let file: DominoFile = serde_json::from_str(text).map_err(|e| GeneratorError::Format(e.to_string()))?;
        file.system.validate()?;
        file.system.check_word(&file.word)?;
        Ok(file)
    }
}

impl DominoSystem {
    pub fn new<S: Into<String>>(
        tiles: impl IntoIterator<Item = S>,
        h: impl IntoIterator<Item = (S, S)>,
        v: impl IntoIterator<Item = (S, S)>,
    ) -> DominoSystem {
        DominoSystem {
            tiles: tiles.into_iter().map(Into::into).collect(),
            h: h.into_iter().map(|(a, b)| (a.into(), b.into())).collect(),
            v: v.into_iter().map(|(a, b)| (a.into(), b.into())).collect(),
        }
    }

    /// Nonempty components over identifier-shaped, distinct tile names.
    pub fn validate(&self) -> Result<(), GeneratorError> {
        if self.tiles.is_empty() {
            return Err(GeneratorError::EmptyDominoComponent("tiles"));
        }
        if self.h.is_empty() {
            return Err(GeneratorError::EmptyDominoComponent("H"));
        }
        if self.v.is_empty() {
            return Err(GeneratorError::EmptyDominoComponent("V"));
        }
        let distinct: BTreeSet<&String> = self.tiles.iter().collect();
        if distinct.len() != self.tiles.len() {
            return Err(GeneratorError::Format("duplicate tile".into()));
        }
        for t in &self.tiles {
            let mut chars = t.chars();
            let ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(GeneratorError::Format(format!("tile name {t:?} is not an identifier")));
            }
        }
        for (a, b) in self.h.iter().chain(&self.v) {
            for x in [a, b] {
                if !distinct.contains(x) {
                    return Err(GeneratorError::Format(format!("unknown tile {x}")));
                }
            }
        }
        Ok(())
    }

    pub fn check_word(&self, word: &[String]) -> Result<(), GeneratorError> {
        match word.iter().find(|w| !self.tiles.contains(w)) {
            Some(w) => Err(GeneratorError::Format(format!("unknown tile {w} in word"))),
            None => Ok(()),
        }
    }

    fn index(&self, tile: &str) -> usize {
        self.tiles.iter().position(|t| t == tile).expect("validated tile")
    }
}

/// Name of the binary predicate standing for a tile.
pub fn tile_predicate(tile: &str) -> String {
    format!("Tile_{tile}")
}

/// A tiling of the `size × size` torus. `cells[y][x]` is the tile at
/// column `x` of row `y`; row 0 carries the initial word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tiling {
    pub size: usize,
    pub cells: Vec<Vec<String>>,
}

impl Tiling {
    pub fn tile(&self, x: usize, y: usize) -> &str {
        &self.cells[y][x]
    }

    /// Checks shape, both adjacency constraints (cyclically) and the word.
    pub fn verify(&self, d: &DominoSystem, word: &[String]) -> Result<(), GeneratorError> {
        let t = self.size;
        if self.cells.len() != t || self.cells.iter().any(|r| r.len() != t) {
            return Err(GeneratorError::InvalidTiling(format!("not a {t}x{t} grid")));
        }
        if word.len() > t {
            return Err(GeneratorError::WordTooLong { len: word.len(), t: t.to_string() });
        }
        for y in 0..t {
            for x in 0..t {
                let here = self.tile(x, y).to_string();
                if !d.tiles.contains(&here) {
                    return Err(GeneratorError::InvalidTiling(format!("unknown tile {here}")));
                }
                let right = self.tile((x + 1) % t, y).to_string();
                if !d.h.contains(&(here.clone(), right)) {
                    return Err(GeneratorError::InvalidTiling(format!("horizontal constraint fails at ({x}, {y})")));
                }
                let up = self.tile(x, (y + 1) % t).to_string();
                if !d.v.contains(&(here, up)) {
                    return Err(GeneratorError::InvalidTiling(format!("vertical constraint fails at ({x}, {y})")));
                }
            }
        }
        for (x, w) in word.iter().enumerate() {
            if self.tile(x, 0) != w {
                return Err(GeneratorError::InvalidTiling(format!("cell ({x}, 0) does not match the word")));
            }
        }
        Ok(())
    }
}

/// Backtracking search for a tiling of the `t × t` torus, cells in
/// row-major order, tiles tried in declaration order.
pub fn brute_force_tiler(d: &DominoSystem, word: &[String], t: usize) -> Option<Tiling> {
    if t == 0 || word.len() > t || d.tiles.is_empty() || d.check_word(word).is_err() {
        return None;
    }
    let n = d.tiles.len();
    let mut h = vec![vec![false; n]; n];
    let mut v = vec![vec![false; n]; n];
    for (a, b) in &d.h {
        h[d.index(a)][d.index(b)] = true;
    }
    for (a, b) in &d.v {
        v[d.index(a)][d.index(b)] = true;
    }
    let fixed: Vec<Option<usize>> = (0..t * t)
        .map(|c| if c < word.len() { Some(d.index(&word[c])) } else { None })
        .collect();
    let mut grid = vec![usize::MAX; t * t];
    let fits = |grid: &[usize], c: usize, k: usize| {
        let (x, y) = (c % t, c / t);
        // on a 1-wide torus the wrap-around partner is the cell itself
        let at = |i: usize| if i == c { k } else { grid[i] };
        if x > 0 && !h[grid[c - 1]][k] {
            return false;
        }
        if x == t - 1 && !h[k][at(y * t)] {
            return false;
        }
        if y > 0 && !v[grid[c - t]][k] {
            return false;
        }
        if y == t - 1 && !v[k][at(x)] {
            return false;
        }
        true
    };
    fn search(
        c: usize,
        grid: &mut Vec<usize>,
        fixed: &[Option<usize>],
        n: usize,
        fits: &dyn Fn(&[usize], usize, usize) -> bool,
    ) -> bool {
        if c == grid.len() {
            return true;
        }
        let candidates: Vec<usize> = match fixed[c] {
            Some(k) => vec![k],
            None => (0..n).collect(),
        };
        for k in candidates {
            if fits(grid, c, k) {
                grid[c] = k;
                if search(c + 1, grid, fixed, n, fits) {
                    return true;
                }
            }
        }
        grid[c] = usize::MAX;
        false
    }
    if !search(0, &mut grid, &fixed, n, &fits) {
        return None;
    }
    let cells = (0..t)
        .map(|y| (0..t).map(|x| d.tiles[grid[y * t + x]].clone()).collect())
        .collect();
    Some(Tiling { size: t, cells })
}

/// The torus size `t`, when it fits in a machine word.
fn exact_torus(p: HierarchyParams) -> Option<usize> {
    p.torus_size().to_u64().and_then(|t| usize::try_from(t).ok())
}

fn hp(a: &Term, b: &Term, c: &Term, e: &Term) -> Formula {
    atom("H", &[a, b, c, e])
}

fn vp(a: &Term, b: &Term, c: &Term, e: &Term) -> Formula {
    atom("V", &[a, b, c, e])
}

fn tile(name: &str, a: &Term, b: &Term) -> Formula {
    atom(&tile_predicate(name), &[a, b])
}

/// The labelled conjuncts `eta1..eta18`.
pub fn domino_parts(
    d: &DominoSystem,
    word: &[String],
    p: HierarchyParams,
) -> Result<Vec<(String, Formula)>, GeneratorError> {
    d.validate()?;
    d.check_word(word)?;
    if word.is_empty() {
        return Err(GeneratorError::BadParams("the initial word must be nonempty".into()));
    }
    if let Some(t) = exact_torus(p) {
        if word.len() > t {
            return Err(GeneratorError::WordTooLong { len: word.len(), t: t.to_string() });
        }
    }
    let s = Symbols { mu: p.mu };
    let k = p.kappa;
    let (x, y, x1, y1, i, z) = (var("x"), var("y"), var("x1"), var("y1"), var("i"), var("z"));
    let (tx, ty, tx1, ty1) = (var("tx"), var("ty"), var("tx1"), var("ty1"));
    let f = |n: usize| cnst(&format!("f{n}"));
    let on_top = |a| s.level(k, a);
    let not_last = |a| and(vec![s.max(k - 1, &i), s.bit_of(k, a, &i, 0)]);
    let same_tiles = |a, b, c, e| and(d.tiles.iter().map(|t| iff(tile(t, a, b), tile(t, c, e))).collect());

    let mut out = Vec::new();
    let mut push = |name: &str, f: Formula| out.push((name.to_string(), f));
    push(
        "eta1",
        forall(
            &["x", "y", "x1", "y1"],
            imp(hp(&x, &y, &x1, &y1), and(vec![on_top(&x), on_top(&y), on_top(&x1), on_top(&y1), eq(&y, &y1)])),
        ),
    );
    push(
        "eta2",
        forall(
            &["x", "y", "x1", "y1", "i"],
            imp(and(vec![hp(&x, &y, &x1, &y1), not_last(&x)]), s.succ(k, &x, &x1)),
        ),
    );
    push(
        "eta3",
        forall(
            &["x", "y", "i"],
            imp(
                and(vec![on_top(&x), on_top(&y), not_last(&x)]),
                exists(
                    &["tx", "ty", "tx1"],
                    and(vec![
                        s.similar(k, &x, &tx),
                        s.similar(k, &y, &ty),
                        same_tiles(&x, &y, &tx, &ty),
                        hp(&tx, &ty, &tx1, &ty),
                    ]),
                ),
            ),
        ),
    );
    push(
        "eta4",
        forall(
            &["x", "y", "x1"],
            imp(and(vec![s.max(k, &x), s.min(k, &x1), on_top(&y)]), hp(&x, &y, &x1, &y)),
        ),
    );
    push(
        "eta5",
        forall(&["x", "y", "x1", "y1"], imp(and(vec![hp(&x, &y, &x1, &y1), s.max(k, &x)]), s.min(k, &x1))),
    );
    push(
        "eta6",
        forall(&["x", "y", "x1", "y1"], imp(and(vec![hp(&x, &y, &x1, &y1), s.min(k, &x1)]), s.max(k, &x))),
    );
    push(
        "eta7",
        forall(
            &["x", "y", "x1", "y1"],
            imp(vp(&x, &y, &x1, &y1), and(vec![on_top(&x), on_top(&y), on_top(&x1), on_top(&y1), eq(&x, &x1)])),
        ),
    );
    push(
        "eta8",
        forall(
            &["x", "y", "x1", "y1", "i"],
            imp(and(vec![vp(&x, &y, &x1, &y1), not_last(&y)]), s.succ(k, &y, &y1)),
        ),
    );
    push(
        "eta9",
        forall(
            &["x", "y", "i"],
            imp(
                and(vec![on_top(&x), on_top(&y), not_last(&y)]),
                exists(
                    &["tx", "ty", "ty1"],
                    and(vec![
                        s.similar(k, &x, &tx),
                        s.similar(k, &y, &ty),
                        same_tiles(&x, &y, &tx, &ty),
                        vp(&tx, &ty, &tx, &ty1),
                    ]),
                ),
            ),
        ),
    );
    push(
        "eta10",
        forall(
            &["x", "y", "y1"],
            imp(and(vec![s.max(k, &y), s.min(k, &y1), on_top(&x)]), vp(&x, &y, &x, &y1)),
        ),
    );
    push(
        "eta11",
        forall(&["x", "x1", "y", "y1"], imp(and(vec![vp(&x, &y, &x1, &y1), s.max(k, &y)]), s.min(k, &y1))),
    );
    push(
        "eta12",
        forall(&["x", "x1", "y", "y1"], imp(and(vec![vp(&x, &y, &x1, &y1), s.min(k, &y1)]), s.max(k, &y))),
    );
    push(
        "eta13",
        and(d
            .tiles
            .iter()
            .map(|t| forall(&["x", "y"], imp(tile(t, &x, &y), and(vec![on_top(&x), on_top(&y)]))))
            .collect()),
    );
    push(
        "eta14",
        and(d
            .tiles
            .iter()
            .flat_map(|a| d.tiles.iter().filter(move |b| *b != a).map(move |b| (a, b)))
            .map(|(a, b)| forall(&["x", "y"], imp(tile(a, &x, &y), not(tile(b, &x, &y)))))
            .collect()),
    );
    push(
        "eta15",
        forall(
            &["x", "x1", "y"],
            imp(
                hp(&x, &y, &x1, &y),
                or(d.h.iter().map(|(a, b)| and(vec![tile(a, &x, &y), tile(b, &x1, &y)])).collect()),
            ),
        ),
    );
    push(
        "eta16",
        forall(
            &["x", "y", "y1"],
            imp(
                vp(&x, &y, &x, &y1),
                or(d.v.iter().map(|(a, b)| and(vec![tile(a, &x, &y), tile(b, &x, &y1)])).collect()),
            ),
        ),
    );
    let mut initial = vec![eq(&f(1), &z)];
    initial.extend((1..word.len()).map(|n| hp(&f(n), &z, &f(n + 1), &z)));
    push("eta17", forall(&["z"], imp(s.min(k, &z), and(initial))));
    push(
        "eta18",
        forall(
            &["z"],
            imp(
                s.min(k, &z),
                and(word.iter().enumerate().map(|(n, w)| tile(w, &f(n + 1), &z)).collect()),
            ),
        ),
    );
    Ok(out)
}

/// The hierarchy sentence extended by the tiling conjuncts.
pub fn generate_domino_encoding(
    d: &DominoSystem,
    word: &[String],
    p: HierarchyParams,
) -> Result<Formula, GeneratorError> {
    let mut parts: Vec<Formula> = hierarchy_parts(p).into_iter().map(|(_, f)| f).collect();
    parts.extend(domino_parts(d, word, p)?.into_iter().map(|(_, f)| f));
    Ok(Formula::And(parts))
}

/// The intended model of the encoding induced by a tiling: cell `(x, y)`
/// is the pair of the `x`-th and `y`-th top-level indices.
pub fn canonical_domino_model(
    d: &DominoSystem,
    word: &[String],
    p: HierarchyParams,
    tiling: &Tiling,
) -> Result<Structure, GeneratorError> {
    d.validate()?;
    let t = exact_torus(p).ok_or_else(|| GeneratorError::CapExceeded {
        needed: p.torus_size().to_string(),
        cap: DEFAULT_ELEMENT_CAP,
    })?;
    if tiling.size != t {
        return Err(GeneratorError::SizeMismatch { expected: t, found: tiling.size });
    }
    tiling.verify(d, word)?;
    let model = build_hierarchy_model(p, DEFAULT_ELEMENT_CAP)?;
    let mut a = model.structure;
    let top = &model.chains[p.kappa];
    a.declare_predicate("H", 4);
    a.declare_predicate("V", 4);
    for tile in &d.tiles {
        a.declare_predicate(tile_predicate(tile), 2);
    }
    for xs in 0..t {
        for ys in 0..t {
            let (x, y) = (top[xs], top[ys]);
            a.insert("H", vec![x, y, top[(xs + 1) % t], y]);
            a.insert("V", vec![x, y, x, top[(ys + 1) % t]]);
            a.insert(tile_predicate(tiling.tile(xs, ys)), vec![x, y]);
        }
    }
    for (n, &cell) in top.iter().take(word.len()).enumerate() {
        a.set_constant(format!("f{}", n + 1), cell);
    }
    Ok(a)
}

/// Checks that every pair of top-level indices carries exactly one tile.
pub fn check_cell_coverage(a: &Structure, d: &DominoSystem, kappa: usize) -> Result<(), String> {
    let top = crate::hierarchy::level_set(a, kappa);
    for &x in &top {
        for &y in &top {
            let count = d.tiles.iter().filter(|t| a.holds(&tile_predicate(t), &[x, y])).count();
            if count != 1 {
                return Err(format!(
                    "cell ({}, {}) carries {count} tiles",
                    a.universe[x], a.universe[y]
                ));
            }
        }
    }
    Ok(())
}
