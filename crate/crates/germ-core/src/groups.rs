//! Finitely generated groups of formal diffeomorphisms, explored through
//! word balls.
//!
//! Everything here is a ball-relative certificate: statements are about the
//! freely reduced words of length at most L over the generators, never about
//! the infinite group, and every report records the radius, jet level, and
//! truncation it was computed at. Deduplication works on exact maps (at
//! truncation): once two words produce the same map, their continuations
//! coincide, so pruning is sound. Enumeration is sequential breadth-first and
//! reports are deterministic; the word-count cap is the primary resource
//! bound, with an optional wall-clock budget, and hitting either flags the
//! report as incomplete instead of failing.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use crate::blowup::{self, NearPoint};
use crate::curve::{self, CurveParam};
use crate::diffeo::{DiffeoClass, FormalDiffeo};
use crate::jetspace;
use crate::series::OrderResult;
use crate::{Error, Result};

/// A freely reduced word over the generators: letters are (index, sign).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<(usize, i8)>,
}

impl Word {
    pub fn identity() -> Word {
        Word::default()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    /// Append one letter, cancelling against the tail if it inverts it.
    pub fn push(&mut self, index: usize, sign: i8) {
        debug_assert!(sign == 1 || sign == -1);
        if let Some(&(last_idx, last_sign)) = self.letters.last() {
            if last_idx == index && last_sign == -sign {
                self.letters.pop();
                return;
            }
        }
        self.letters.push((index, sign));
    }

    /// Human-readable form using generator names, with runs compressed to
    /// powers: "a^2 b^-1", or "id" for the empty word.
    pub fn render(&self, names: &[String]) -> String {
        if self.letters.is_empty() {
            return "id".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut run: Option<(usize, i64)> = None;
        let flush = |run: &mut Option<(usize, i64)>, parts: &mut Vec<String>| {
            if let Some((idx, e)) = run.take() {
                let name = names.get(idx).cloned().unwrap_or_else(|| format!("g{idx}"));
                if e == 1 {
                    parts.push(name);
                } else {
                    parts.push(format!("{name}^{e}"));
                }
            }
        };
        for &(idx, sign) in &self.letters {
            match run {
                Some((i, e)) if i == idx && (e > 0) == (sign > 0) => {
                    run = Some((i, e + sign as i64));
                }
                _ => {
                    flush(&mut run, &mut parts);
                    run = Some((idx, sign as i64));
                }
            }
        }
        flush(&mut run, &mut parts);
        parts.join(" ")
    }
}

/// Resource bounds for ball enumeration. The word count is the primary,
/// deterministic cap; the optional time budget is a wall-clock safety net.
#[derive(Debug, Clone)]
pub struct Caps {
    pub max_words: usize,
    pub time_budget: Option<Duration>,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_words: 20_000, time_budget: None }
    }
}

/// A finitely generated group of formal diffeomorphisms.
#[derive(Debug, Clone)]
pub struct GeneratedGroup {
    gens: Vec<FormalDiffeo>,
    inverses: Vec<FormalDiffeo>,
    names: Vec<String>,
    trunc: u32,
}

impl GeneratedGroup {
    /// Build from generators and display names (inverses are derived).
    pub fn new(gens: Vec<FormalDiffeo>, names: Vec<String>) -> Result<Self> {
        if gens.len() != names.len() {
            return Err(Error::Internal("one name per generator is required".into()));
        }
        let trunc = gens.iter().map(FormalDiffeo::trunc).min().unwrap_or(0);
        let gens: Vec<FormalDiffeo> = gens
            .into_iter()
            .map(|g| {
                FormalDiffeo::new(g.comp_x().truncate_to(trunc), g.comp_y().truncate_to(trunc))
            })
            .collect::<Result<_>>()?;
        let inverses = gens.iter().map(FormalDiffeo::invert).collect::<Result<Vec<_>>>()?;
        Ok(GeneratedGroup { gens, inverses, names, trunc })
    }

    pub fn generators(&self) -> &[FormalDiffeo] {
        &self.gens
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    fn letter_map(&self, index: usize, sign: i8) -> &FormalDiffeo {
        if sign > 0 {
            &self.gens[index]
        } else {
            &self.inverses[index]
        }
    }
}

/// One distinct element of a word ball: its shortest witness word (in
/// breadth-first order) and its map.
#[derive(Debug, Clone)]
pub struct BallElement {
    pub word: Word,
    pub map: FormalDiffeo,
}

/// All distinct elements reachable by words of length ≤ radius.
#[derive(Debug, Clone)]
pub struct Ball {
    pub radius: u32,
    pub elements: Vec<BallElement>,
    /// Words evaluated during enumeration (≥ number of distinct elements).
    pub words_evaluated: usize,
    /// False when a resource cap stopped enumeration early.
    pub complete: bool,
}

/// Enumerate the word ball of the given radius, deduplicating by exact map.
pub fn ball_elements(group: &GeneratedGroup, radius: u32, caps: &Caps) -> Result<Ball> {
    let start = Instant::now();
    let mut elements = vec![BallElement {
        word: Word::identity(),
        map: FormalDiffeo::identity(group.trunc()),
    }];
    let mut seen: HashMap<FormalDiffeo, usize> = HashMap::new();
    seen.insert(elements[0].map.clone(), 0);
    let mut frontier: Vec<usize> = vec![0];
    let mut evaluated = 1usize;
    let mut complete = true;

    'outer: for _len in 1..=radius {
        let mut next_frontier = Vec::new();
        for &ei in &frontier {
            for gi in 0..group.gens.len() {
                for sign in [1i8, -1] {
                    let word = {
                        let mut w = elements[ei].word.clone();
                        let before = w.len();
                        w.push(gi, sign);
                        if w.len() < before + 1 {
                            // Cancellation: this word was already visited at
                            // a shorter length.
                            continue;
                        }
                        w
                    };
                    if evaluated >= caps.max_words {
                        complete = false;
                        break 'outer;
                    }
                    if let Some(budget) = caps.time_budget {
                        if start.elapsed() > budget {
                            complete = false;
                            break 'outer;
                        }
                    }
                    evaluated += 1;
                    let map = elements[ei].map.compose(group.letter_map(gi, sign))?;
                    if seen.contains_key(&map) {
                        continue;
                    }
                    let idx = elements.len();
                    seen.insert(map.clone(), idx);
                    elements.push(BallElement { word, map });
                    next_frontier.push(idx);
                }
            }
        }
        frontier = next_frontier;
        if frontier.is_empty() {
            break;
        }
    }
    Ok(Ball { radius, elements, words_evaluated: evaluated, complete })
}

/// One jet-level class of ball elements.
#[derive(Debug, Clone)]
pub struct JetClass {
    /// Shortest word whose map lands in this class.
    pub witness: Word,
    /// Number of distinct ball elements in the class.
    pub size: usize,
    /// Whether the class is the identity jet.
    pub identity_jet: bool,
}

/// Ball elements grouped by their exact jet-level matrices.
#[derive(Debug, Clone)]
pub struct BallReport {
    pub radius: u32,
    pub jet_level: u32,
    pub truncation: u32,
    pub complete: bool,
    pub words_evaluated: usize,
    pub classes: Vec<JetClass>,
}

/// Group the word ball by jet-level action.
pub fn enumerate_ball(
    group: &GeneratedGroup,
    radius: u32,
    jet_level: u32,
    caps: &Caps,
) -> Result<BallReport> {
    let ball = ball_elements(group, radius, caps)?;
    let mut class_index: HashMap<jetspace::JetAutomorphism, usize> = HashMap::new();
    let mut classes: Vec<JetClass> = Vec::new();
    for el in &ball.elements {
        let jet = jetspace::project_diffeo(&el.map, jet_level)?;
        match class_index.get(&jet) {
            Some(&ci) => classes[ci].size += 1,
            None => {
                let identity_jet = jet.is_identity();
                class_index.insert(jet, classes.len());
                classes.push(JetClass { witness: el.word.clone(), size: 1, identity_jet });
            }
        }
    }
    Ok(BallReport {
        radius,
        jet_level,
        truncation: group.trunc(),
        complete: ball.complete,
        words_evaluated: ball.words_evaluated,
        classes,
    })
}

/// Outcome of a finite-determination probe at a jet level, over a ball.
#[derive(Debug, Clone)]
pub enum FdOutcome {
    /// No word in the ball has identity jet without being the identity.
    Determined,
    /// A word whose jet is the identity but whose map is not.
    Counterexample(Word),
}

#[derive(Debug, Clone)]
pub struct FdReport {
    pub jet_level: u32,
    pub radius: u32,
    pub truncation: u32,
    /// False when enumeration was cut by a resource cap, making a
    /// "determined" outcome inconclusive.
    pub complete: bool,
    pub outcome: FdOutcome,
}

/// Probe whether the jet at `jet_level` determines elements within the ball:
/// search for a non-identity element with identity jet.
pub fn fd_check(
    group: &GeneratedGroup,
    jet_level: u32,
    radius: u32,
    caps: &Caps,
) -> Result<FdReport> {
    let ball = ball_elements(group, radius, caps)?;
    let mut outcome = FdOutcome::Determined;
    for el in &ball.elements {
        if el.word.is_identity() {
            continue;
        }
        if el.map.jet_is_identity(jet_level) && !el.map.is_identity() {
            outcome = FdOutcome::Counterexample(el.word.clone());
            break;
        }
    }
    Ok(FdReport {
        jet_level,
        radius,
        truncation: group.trunc(),
        complete: ball.complete,
        outcome,
    })
}

/// One distinct intersection value observed over the ball.
#[derive(Debug, Clone)]
pub struct UiValue {
    pub value: OrderResult,
    /// Distinct ball elements attaining it.
    pub count: usize,
    /// Shortest witness word.
    pub witness: Word,
}

/// Intersection numbers of a curve with its images over the ball.
#[derive(Debug, Clone)]
pub struct UiReport {
    pub radius: u32,
    pub truncation: u32,
    pub complete: bool,
    /// Distinct observed values, sorted by their lower bound (exact values
    /// before open lower bounds at the same level).
    pub values: Vec<UiValue>,
    /// Largest exact value observed, with a witness.
    pub max_exact: Option<(u32, Word)>,
}

/// Probe uniform intersection behavior: the multiset of intersection numbers
/// of word images of the curve with the curve itself. Lower-bound entries
/// mark words that may fix the curve.
pub fn ui_probe(
    group: &GeneratedGroup,
    gamma: &CurveParam,
    radius: u32,
    caps: &Caps,
) -> Result<UiReport> {
    let ball = ball_elements(group, radius, caps)?;
    let bound = gamma.trunc().min(group.trunc());
    let equation = curve::implicitize(gamma, bound)?;
    let mut values: Vec<UiValue> = Vec::new();
    let mut max_exact: Option<(u32, Word)> = None;
    for el in &ball.elements {
        let moved = gamma.act(&el.map)?;
        let value = equation.substitute(moved.comp_x(), moved.comp_y())?.order();
        match values.iter_mut().find(|v| v.value == value) {
            Some(v) => v.count += 1,
            None => values.push(UiValue { value, count: 1, witness: el.word.clone() }),
        }
        if let OrderResult::Exact(n) = value {
            let better = match &max_exact {
                Some((best, _)) => n > *best,
                None => true,
            };
            if better {
                max_exact = Some((n, el.word.clone()));
            }
        }
    }
    values.sort_by_key(|v| (v.value.lower_bound(), !v.value.is_exact()));
    Ok(UiReport {
        radius,
        truncation: group.trunc(),
        complete: ball.complete,
        values,
        max_exact,
    })
}

/// Trie statistics over the near-point prefixes of a curve's orbit.
#[derive(Debug, Clone)]
pub struct OrbitTreeReport {
    pub radius: u32,
    pub depth: u32,
    pub truncation: u32,
    pub complete: bool,
    /// Distinct image parametrizations observed (an upper bound for leaves:
    /// reparametrizations of one curve share every near point).
    pub distinct_images: usize,
    /// Distinct near-point prefixes at each level 1..=depth.
    pub level_counts: Vec<usize>,
    /// Leaves of the trie: orbit elements separated at full depth.
    pub leaves: usize,
    /// Deepest level at which two distinct leaves still share a prefix
    /// (None when fewer than two leaves).
    pub max_shared_depth: Option<u32>,
    /// True when some prefix was cut short by truncation before `depth`.
    pub truncated_prefixes: bool,
}

/// Build the orbit's near-point prefix trie and report its shape: a probe of
/// how fast word images of the curve separate from each other.
pub fn orbit_prefix_tree(
    group: &GeneratedGroup,
    gamma: &CurveParam,
    radius: u32,
    depth: u32,
    caps: &Caps,
) -> Result<OrbitTreeReport> {
    let ball = ball_elements(group, radius, caps)?;
    let mut images: Vec<CurveParam> = Vec::new();
    for el in &ball.elements {
        let moved = gamma.act(&el.map)?;
        if !images.contains(&moved) {
            images.push(moved);
        }
    }
    let mut truncated = false;
    let mut prefixes: Vec<Vec<NearPoint>> = Vec::new();
    for image in &images {
        let mut cur = image.clone();
        let mut prefix = Vec::new();
        for _ in 0..depth {
            match blowup::strict_transform(&cur) {
                Ok((p, next)) => {
                    prefix.push(p);
                    cur = next;
                }
                Err(Error::DepthLimit(_)) => {
                    truncated = true;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        if !prefixes.contains(&prefix) {
            prefixes.push(prefix);
        }
    }
    let mut level_counts = Vec::with_capacity(depth as usize);
    for level in 1..=depth as usize {
        let mut seen: Vec<&[NearPoint]> = Vec::new();
        for p in &prefixes {
            let cut = &p[..level.min(p.len())];
            if !seen.contains(&cut) {
                seen.push(cut);
            }
        }
        level_counts.push(seen.len());
    }
    let leaves = prefixes.len();
    let mut max_shared: Option<u32> = None;
    for i in 0..prefixes.len() {
        for j in (i + 1)..prefixes.len() {
            let shared = prefixes[i]
                .iter()
                .zip(&prefixes[j])
                .take_while(|(a, b)| a == b)
                .count() as u32;
            max_shared = Some(max_shared.map_or(shared, |m| m.max(shared)));
        }
    }
    Ok(OrbitTreeReport {
        radius,
        depth,
        truncation: group.trunc(),
        complete: ball.complete,
        distinct_images: images.len(),
        level_counts,
        leaves,
        max_shared_depth: max_shared,
        truncated_prefixes: truncated,
    })
}

/// One sampled element of an iterated commutator group.
#[derive(Debug, Clone)]
pub struct DerivedElement {
    /// Bracket expression over witness words, e.g. "[a, b]".
    pub label: String,
    pub class: DiffeoClass,
    pub map: FormalDiffeo,
}

#[derive(Debug, Clone)]
pub struct DerivedReport {
    pub depth: u32,
    pub radius: u32,
    pub truncation: u32,
    pub complete: bool,
    /// True when every sampled commutator is the identity at truncation.
    pub trivial: bool,
    pub elements: Vec<DerivedElement>,
}

/// Sample the r-th derived group: commutators of ball words, iterated r
/// times, deduplicated by map, with their linear-part classifications.
pub fn derived_sample(
    group: &GeneratedGroup,
    depth: u32,
    radius: u32,
    caps: &Caps,
) -> Result<DerivedReport> {
    const MAX_SAMPLE: usize = 24;
    const MAX_PAIRS: usize = 600;
    let ball = ball_elements(group, radius, caps)?;
    let mut layer: Vec<(String, FormalDiffeo)> = ball
        .elements
        .iter()
        .map(|el| (el.word.render(group.names()), el.map.clone()))
        .collect();
    let mut trivial = true;
    let mut sampled: Vec<DerivedElement> = Vec::new();
    for _ in 0..depth.max(1) {
        let mut next: Vec<(String, FormalDiffeo)> = Vec::new();
        let mut seen: HashMap<FormalDiffeo, ()> = HashMap::new();
        let mut pairs = 0usize;
        'level: for i in 0..layer.len() {
            for j in 0..layer.len() {
                if i == j {
                    continue;
                }
                if pairs >= MAX_PAIRS || next.len() >= MAX_SAMPLE {
                    break 'level;
                }
                pairs += 1;
                let commutator = layer[i].1.commutator(&layer[j].1)?;
                if commutator.is_identity() || seen.contains_key(&commutator) {
                    continue;
                }
                seen.insert(commutator.clone(), ());
                let label = format!("[{}, {}]", layer[i].0, layer[j].0);
                next.push((label, commutator));
            }
        }
        if !next.is_empty() {
            trivial = false;
        }
        sampled = next
            .iter()
            .map(|(label, map)| DerivedElement {
                label: label.clone(),
                class: map.classify(),
                map: map.clone(),
            })
            .collect();
        layer = next;
        if layer.is_empty() {
            break;
        }
    }
    Ok(DerivedReport {
        depth,
        radius,
        truncation: group.trunc(),
        complete: ball.complete,
        trivial,
        elements: sampled,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use crate::series::{BiSeries, UniSeries};

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn shift_diffeo(terms: &[((u32, u32), Scalar)], n: u32) -> FormalDiffeo {
        // (x, y + f) for the given f-terms.
        let mut all = vec![((0u32, 1u32), s(1))];
        all.extend(terms.iter().cloned());
        FormalDiffeo::new(BiSeries::var_x(n), BiSeries::from_terms(all, n)).unwrap()
    }

    fn group(gens: Vec<FormalDiffeo>, names: &[&str]) -> GeneratedGroup {
        GeneratedGroup::new(gens, names.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    fn tangent_pair(n: u32) -> GeneratedGroup {
        group(
            vec![
                shift_diffeo(&[((2, 0), s(1))], n),
                shift_diffeo(&[((3, 0), s(1))], n),
            ],
            &["a", "b"],
        )
    }

    /// Shift family with linear coefficients 1·eps and 1·eps²: elements are
    /// determined by their first jets.
    fn eps_family(n: u32) -> GeneratedGroup {
        let e = Scalar::epsilon();
        let e2 = e.mul_ref(&e);
        group(
            vec![
                shift_diffeo(&[((1, 0), e), ((2, 0), s(1))], n),
                shift_diffeo(&[((1, 0), e2), ((3, 0), s(1))], n),
            ],
            &["a", "b"],
        )
    }

    #[test]
    fn cyclic_shear_ball() {
        let n = 8;
        let g = group(vec![shift_diffeo(&[((1, 0), s(1))], n)], &["a"]);
        let report = enumerate_ball(&g, 3, 1, &Caps::default()).unwrap();
        assert!(report.complete);
        // Shears by −3..3: seven distinct jet classes, one of them trivial.
        assert_eq!(report.classes.len(), 7);
        assert_eq!(report.classes.iter().filter(|c| c.identity_jet).count(), 1);
        let id_class = report.classes.iter().find(|c| c.identity_jet).unwrap();
        assert!(id_class.witness.is_identity());
    }

    #[test]
    fn identity_group_collapses() {
        let n = 8;
        let g = group(vec![FormalDiffeo::identity(n)], &["e"]);
        let report = enumerate_ball(&g, 4, 2, &Caps::default()).unwrap();
        assert_eq!(report.classes.len(), 1);
        assert!(report.classes[0].identity_jet);
    }

    #[test]
    fn eps_family_ball_classes() {
        let n = 8;
        let report = enumerate_ball(&eps_family(n), 2, 1, &Caps::default()).unwrap();
        // Elements are indexed by (n₁, n₂) with |n₁| + |n₂| ≤ 2, and their
        // first jets (shears by n₁·eps + n₂·eps²) are pairwise distinct.
        assert_eq!(report.classes.len(), 13);
        assert!(report.classes.iter().all(|c| c.size == 1));
    }

    #[test]
    fn word_caps_flag_incomplete() {
        let n = 8;
        let caps = Caps { max_words: 5, time_budget: None };
        let ball = ball_elements(&tangent_pair(n), 3, &caps).unwrap();
        assert!(!ball.complete);
        assert!(ball.words_evaluated <= 5);
    }

    #[test]
    fn fd_eps_family_is_determined_at_level_one() {
        let n = 10;
        let report = fd_check(&eps_family(n), 1, 4, &Caps::default()).unwrap();
        assert!(report.complete);
        assert!(matches!(report.outcome, FdOutcome::Determined));
    }

    #[test]
    fn fd_tangent_pair_fails_at_level_one_and_holds_at_three() {
        let n = 10;
        let g = tangent_pair(n);
        let report = fd_check(&g, 1, 2, &Caps::default()).unwrap();
        match &report.outcome {
            FdOutcome::Counterexample(w) => assert_eq!(w.len(), 1),
            FdOutcome::Determined => panic!("tangent generators have identity first jets"),
        }
        let report = fd_check(&g, 3, 2, &Caps::default()).unwrap();
        assert!(matches!(report.outcome, FdOutcome::Determined));
    }

    #[test]
    fn jet_dedup_is_sound() {
        // Words in the same jet class differ by a word with identity jet.
        let n = 10;
        let k = 1;
        let ball = ball_elements(&tangent_pair(n), 2, &Caps::default()).unwrap();
        let mut by_class: HashMap<crate::jetspace::JetAutomorphism, Vec<usize>> = HashMap::new();
        for (i, el) in ball.elements.iter().enumerate() {
            by_class
                .entry(crate::jetspace::project_diffeo(&el.map, k).unwrap())
                .or_default()
                .push(i);
        }
        for members in by_class.values() {
            for pair in members.windows(2) {
                let diff = ball.elements[pair[0]]
                    .map
                    .compose(&ball.elements[pair[1]].map.invert().unwrap())
                    .unwrap();
                assert!(diff.jet_is_identity(k));
            }
        }
    }

    #[test]
    fn ui_shift_family_reads_off_orders() {
        let n = 10;
        let g = group(vec![shift_diffeo(&[((3, 0), s(1))], n)], &["a"]);
        let gamma =
            CurveParam::new(UniSeries::var_t(n), UniSeries::zero(n)).unwrap();
        let report = ui_probe(&g, &gamma, 3, &Caps::default()).unwrap();
        // Identity word: the curve meets itself, only a lower bound; all
        // other words shift by n·x³ and meet at order exactly 3.
        assert_eq!(report.values.len(), 2);
        let exact: Vec<_> = report.values.iter().filter(|v| v.value.is_exact()).collect();
        assert_eq!(exact.len(), 1);
        assert_eq!(exact[0].value, OrderResult::Exact(3));
        assert_eq!(exact[0].count, 6);
        assert_eq!(report.max_exact.as_ref().unwrap().0, 3);
    }

    #[test]
    fn ui_scaling_group_on_parabola() {
        let n = 10;
        let scale2 = FormalDiffeo::new(
            BiSeries::var_x(n).scale(&s(2)),
            BiSeries::var_y(n).scale(&s(2)),
        )
        .unwrap();
        let g = group(vec![scale2], &["s"]);
        let gamma = CurveParam::new(
            UniSeries::var_t(n),
            UniSeries::monomial(2, s(1), n),
        )
        .unwrap();
        let report = ui_probe(&g, &gamma, 3, &Caps::default()).unwrap();
        for v in &report.values {
            if v.value.is_exact() {
                assert_eq!(v.value, OrderResult::Exact(2));
            } else {
                // Only the identity keeps the curve.
                assert!(v.witness.is_identity());
            }
        }
        assert_eq!(report.max_exact.as_ref().unwrap().0, 2);
    }

    #[test]
    fn orbit_tree_of_cubic_shifts() {
        let n = 12;
        let g = group(vec![shift_diffeo(&[((3, 0), s(1))], n)], &["a"]);
        let gamma = CurveParam::new(UniSeries::var_t(n), UniSeries::zero(n)).unwrap();
        let report = orbit_prefix_tree(&g, &gamma, 3, 3, &Caps::default()).unwrap();
        // Orbit curves (t, n·t³), n = −3..3: identical for two levels, then
        // split completely at the third.
        assert_eq!(report.leaves, 7);
        assert_eq!(report.level_counts, vec![1, 1, 7]);
        assert_eq!(report.max_shared_depth, Some(2));
        assert!(!report.truncated_prefixes);
    }

    #[test]
    fn orbit_tree_of_invariant_curve_is_one_leaf() {
        let n = 12;
        let stretch =
            FormalDiffeo::new(BiSeries::var_x(n).scale(&s(2)), BiSeries::var_y(n)).unwrap();
        let g = group(vec![stretch], &["s"]);
        let gamma = CurveParam::new(UniSeries::var_t(n), UniSeries::zero(n)).unwrap();
        let report = orbit_prefix_tree(&g, &gamma, 2, 3, &Caps::default()).unwrap();
        // The images (2ⁿt, 0) all reparametrize the same curve.
        assert!(report.distinct_images > 1);
        assert_eq!(report.leaves, 1);
        assert_eq!(report.max_shared_depth, None);
    }

    #[test]
    fn orbit_tree_splits_tangents_at_level_one() {
        let n = 12;
        let swap = FormalDiffeo::new(BiSeries::var_y(n), BiSeries::var_x(n)).unwrap();
        let g = group(vec![swap], &["r"]);
        let gamma = CurveParam::new(UniSeries::var_t(n), UniSeries::zero(n)).unwrap();
        let report = orbit_prefix_tree(&g, &gamma, 1, 2, &Caps::default()).unwrap();
        assert_eq!(report.leaves, 2);
        assert_eq!(report.level_counts[0], 2);
        assert_eq!(report.max_shared_depth, Some(0));
    }

    #[test]
    fn derived_sample_of_abelian_group_is_trivial() {
        let n = 10;
        let report = derived_sample(&tangent_pair(n), 1, 2, &Caps::default()).unwrap();
        assert!(report.trivial);
        assert!(report.elements.is_empty());
    }

    #[test]
    fn derived_sample_of_scaling_and_shear_is_tangent_to_identity() {
        let n = 10;
        let scale = FormalDiffeo::new(
            BiSeries::var_x(n).scale(&s(2)),
            BiSeries::var_y(n),
        )
        .unwrap();
        let shear = shift_diffeo(&[((2, 0), s(1))], n);
        let g = group(vec![scale, shear], &["d", "u"]);
        let report = derived_sample(&g, 1, 2, &Caps::default()).unwrap();
        assert!(!report.trivial);
        assert!(!report.elements.is_empty());
        for el in &report.elements {
            assert_eq!(el.class, DiffeoClass::TangentToIdentity, "{}", el.label);
        }
    }

    #[test]
    fn derived_sample_of_linear_shear_pair_is_nontrivial() {
        let n = 10;
        let linear_shear = FormalDiffeo::new(
            BiSeries::from_terms([((1, 0), s(1)), ((0, 1), s(1))], n),
            BiSeries::var_y(n),
        )
        .unwrap();
        let quad_shear = shift_diffeo(&[((2, 0), s(1))], n);
        let g = group(vec![linear_shear, quad_shear], &["l", "u"]);
        let report = derived_sample(&g, 1, 2, &Caps::default()).unwrap();
        assert!(!report.trivial);
        assert!(report.elements.iter().any(|el| !el.map.is_identity()));
    }

    #[test]
    fn commutator_tower_gains_jet_levels() {
        // Starting from tangent-to-identity generators, iterated commutators
        // climb the identity-jet filtration one level per bracket.
        let n = 12;
        let g = tangent_pair(n);
        let a = &g.generators()[0];
        let b = &g.generators()[1];
        assert!(a.jet_is_identity(1) && b.jet_is_identity(1));
        let c2 = a.commutator(b).unwrap();
        assert!(c2.jet_is_identity(2));
        let c3 = c2.commutator(a).unwrap();
        assert!(c3.jet_is_identity(3));
        let c4 = c3.commutator(b).unwrap();
        assert!(c4.jet_is_identity(4));
    }

    #[test]
    fn word_rendering() {
        let mut w = Word::identity();
        assert_eq!(w.render(&["a".into(), "b".into()]), "id");
        w.push(0, 1);
        w.push(0, 1);
        w.push(1, -1);
        assert_eq!(w.render(&["a".into(), "b".into()]), "a^2 b^-1");
        let mut cancel = Word::identity();
        cancel.push(0, 1);
        cancel.push(0, -1);
        assert!(cancel.is_identity());
    }
}
