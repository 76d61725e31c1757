//! Khovanov complex over `F[t]` built one crossing at a time on the open
//! boundary of the already processed part of the diagram. Closed loops are
//! removed as they appear (each loop splits an object into two shifted
//! copies) and every isomorphism in the differential is cancelled right away,
//! so the full cube is never materialized.

use std::collections::{BTreeMap, HashMap, HashSet};

use log::debug;
use rayon::prelude::*;

use super::cobordism::{cycles, evaluate, partners, Component, ComposePlan, Matching, Mor, Pt, UnionFind};
use super::complex::{FilteredChainComplex, Grading};
use super::field::Field;
use crate::conventions::SMOOTHING;
use crate::diagram::{Arc, PlanarDiagram};
use crate::error::KhovanovError;
use crate::jones::scan_order;

/// Crossing positions get point ids above every arc label.
const CROSSING_PT: Pt = 1 << 31;

#[derive(Clone, Copy, Debug)]
struct Gen {
    m: u32,
    i: i64,
    q: i64,
}

#[derive(Default)]
struct Interner {
    list: Vec<Matching>,
    index: HashMap<Matching, u32>,
}

impl Interner {
    fn intern(&mut self, m: Matching) -> u32 {
        if let Some(&k) = self.index.get(&m) {
            return k;
        }
        let k = self.list.len() as u32;
        self.list.push(m.clone());
        self.index.insert(m, k);
        k
    }
}

/// Statistics gathered while scanning.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScanStats {
    pub peak_generators: usize,
    pub final_generators: usize,
    pub crossings: usize,
}

struct Stage<F: Field> {
    matchings: Interner,
    gens: Vec<Option<Gen>>,
    out: Vec<HashMap<usize, Mor<F>>>,
    inc: Vec<HashSet<usize>>,
    live: usize,
    compose_cache: HashMap<(u32, u32, u32), ComposePlan>,
}

/// A smoothed object glued into the new boundary: the open strands, the
/// closed loops, and for each a point lying on it.
struct Glued {
    matching: Matching,
    /// For each pair of `matching`, a point on that strand.
    strand_pts: Vec<Pt>,
    /// For each closed loop (ordered by smallest point), a point on it.
    loop_pts: Vec<Pt>,
}

/// How the boundary changes when a crossing is attached.
struct Attach {
    /// Pairs of points glued together.
    glued: Vec<(Pt, Pt)>,
    ident: HashMap<Pt, Pt>,
    /// Surviving points with their labels.
    label: HashMap<Pt, Arc>,
}

impl Attach {
    fn new(boundary: &HashSet<Arc>, arcs: [Arc; 4]) -> Self {
        let mut glued = Vec::new();
        let mut label = HashMap::new();
        for (p, &a) in arcs.iter().enumerate() {
            let pt = CROSSING_PT + p as Pt;
            if boundary.contains(&a) {
                glued.push((a, pt));
            } else if let Some(q) = (0..p).find(|&q| arcs[q] == a) {
                glued.push((CROSSING_PT + q as Pt, pt));
            } else if !arcs[p + 1..].contains(&a) {
                label.insert(pt, a);
            }
        }
        for &b in boundary {
            if !arcs.contains(&b) {
                label.insert(b, b);
            }
        }
        let ident = partners(&glued);
        Self { glued, ident, label }
    }

    fn smoothing(&self, s: usize) -> Matching {
        SMOOTHING[s].iter().map(|&(p, q)| (CROSSING_PT + p as Pt, CROSSING_PT + q as Pt)).collect()
    }

    /// Glues `bottom` (a matching on old boundary plus crossing points).
    fn glue(&self, bottom: &[(Pt, Pt)]) -> Glued {
        let bp = partners(bottom);
        let mut seen: HashSet<Pt> = HashSet::new();
        let mut ends: Vec<Pt> = self.label.keys().copied().collect();
        ends.sort_by_key(|p| self.label[p]);
        let mut pairs = Vec::new();
        for &start in &ends {
            if seen.contains(&start) {
                continue;
            }
            let mut cur = start;
            loop {
                seen.insert(cur);
                let next = bp[&cur];
                seen.insert(next);
                match self.ident.get(&next) {
                    Some(&j) => cur = j,
                    None => {
                        let (a, b) = (self.label[&start], self.label[&next]);
                        pairs.push(((a.min(b), a.max(b)), start));
                        break;
                    }
                }
            }
        }
        let mut loops: Vec<Pt> = Vec::new();
        let mut rest: Vec<Pt> = bp.keys().copied().filter(|p| !seen.contains(p)).collect();
        rest.sort_unstable();
        for p in rest {
            if seen.contains(&p) {
                continue;
            }
            loops.push(p);
            let mut cur = p;
            loop {
                seen.insert(cur);
                let next = bp[&cur];
                seen.insert(next);
                cur = self.ident[&next];
                if cur == p {
                    break;
                }
            }
        }
        pairs.sort_unstable();
        Glued {
            matching: pairs.iter().map(|x| x.0).collect(),
            strand_pts: pairs.iter().map(|x| x.1).collect(),
            loop_pts: loops,
        }
    }
}

/// Surface structure of one morphism between two glued objects; only the
/// dots depend on the particular term and loop labels.
struct GluePlan {
    /// Per component: pieces carrying old dots (by old circle bit), source
    /// loops, target loops, and the template.
    comps: Vec<(u64, u64, u64, Component)>,
    /// Number of circles between the glued source and target matchings.
    circles: usize,
}

impl GluePlan {
    /// `bottom`/`top` live on old boundary plus crossing points. `old_bits`
    /// lists, for each dotted old circle bit, a point on that circle.
    fn new(at: &Attach, bottom: &[(Pt, Pt)], top: &[(Pt, Pt)], old_bits: &[Pt], src: &Glued, tgt: &Glued) -> Self {
        let pieces = cycles(bottom, top);
        let mut piece_of: HashMap<Pt, usize> = HashMap::new();
        for (k, c) in pieces.iter().enumerate() {
            for &p in c {
                piece_of.insert(p, k);
            }
        }
        let n = pieces.len();
        let extra = src.loop_pts.len() + tgt.loop_pts.len();
        let mut uf = UnionFind::new(n + extra);
        let mut chi = vec![1i64; n + extra];
        let join = |uf: &mut UnionFind, chi: &mut Vec<i64>, a: usize, b: usize, delta: i64| {
            let (ra, rb) = (uf.find(a), uf.find(b));
            if ra != rb {
                uf.parent[ra] = rb;
                chi[rb] += chi[ra];
            }
            chi[rb] += delta;
        };
        for &(a, b) in &at.glued {
            join(&mut uf, &mut chi, piece_of[&a], piece_of[&b], -1);
        }
        for (k, p) in src.loop_pts.iter().chain(&tgt.loop_pts).enumerate() {
            join(&mut uf, &mut chi, n + k, piece_of[p], 0);
        }
        let mut by_root: BTreeMap<usize, (u64, u64, u64, Component)> = BTreeMap::new();
        for x in 0..n + extra {
            let r = uf.find(x);
            by_root.entry(r).or_insert_with(|| (0, 0, 0, Component { chi: chi[r], ..Default::default() }));
        }
        for (bit, p) in old_bits.iter().enumerate() {
            let r = uf.find(piece_of[p]);
            by_root.get_mut(&r).unwrap().0 |= 1 << bit;
        }
        for k in 0..src.loop_pts.len() {
            let r = uf.find(n + k);
            by_root.get_mut(&r).unwrap().1 |= 1 << k;
        }
        for k in 0..tgt.loop_pts.len() {
            let r = uf.find(n + src.loop_pts.len() + k);
            by_root.get_mut(&r).unwrap().2 |= 1 << k;
        }
        let new_circles = cycles(&src.matching, &tgt.matching);
        let strand_of: HashMap<Pt, Pt> = src
            .matching
            .iter()
            .zip(&src.strand_pts)
            .flat_map(|(&(a, b), &p)| [(a, p), (b, p)])
            .collect();
        for (k, c) in new_circles.iter().enumerate() {
            let r = uf.find(piece_of[&strand_of[&c[0]]]);
            by_root.get_mut(&r).unwrap().3.circles.push(k);
        }
        Self { comps: by_root.into_values().collect(), circles: new_circles.len() }
    }

    /// Terms for one old term, source loop labels `lam`, target loop labels
    /// `mu` (bit set = `x`). Source loops are capped by a disk dotted for `x`,
    /// target loops by a disk dotted for `1`.
    fn eval(&self, old_mask: u64, lam: u64, mu: u64, tgt_loops: usize) -> Vec<(u64, u32, i64)> {
        let not_mu = !mu & ((1u64 << tgt_loops) - 1);
        let comps: Vec<Component> = self
            .comps
            .iter()
            .map(|(ob, sl, tl, c)| Component {
                dots: (old_mask & ob).count_ones() + (lam & sl).count_ones() + (not_mu & tl).count_ones(),
                ..c.clone()
            })
            .collect();
        evaluate(&comps)
    }
}

impl<F: Field> Stage<F> {
    fn new() -> Self {
        let mut s = Stage {
            matchings: Interner::default(),
            gens: Vec::new(),
            out: Vec::new(),
            inc: Vec::new(),
            live: 0,
            compose_cache: HashMap::new(),
        };
        let m = s.matchings.intern(Vec::new());
        s.push(Gen { m, i: 0, q: 0 });
        s
    }

    fn push(&mut self, g: Gen) -> usize {
        self.gens.push(Some(g));
        self.out.push(HashMap::new());
        self.inc.push(HashSet::new());
        self.live += 1;
        self.gens.len() - 1
    }

    fn add_mor(&mut self, src: usize, tgt: usize, f: Mor<F>) {
        if f.is_zero() {
            return;
        }
        let slot = self.out[src].entry(tgt).or_insert_with(Mor::zero);
        slot.add(&f);
        if slot.is_zero() {
            self.out[src].remove(&tgt);
            self.inc[tgt].remove(&src);
        } else {
            self.inc[tgt].insert(src);
        }
    }

    fn remove(&mut self, g: usize) {
        for t in std::mem::take(&mut self.out[g]).into_keys() {
            self.inc[t].remove(&g);
        }
        for s in std::mem::take(&mut self.inc[g]) {
            self.out[s].remove(&g);
        }
        self.gens[g] = None;
        self.live -= 1;
    }

    fn gen(&self, g: usize) -> Gen {
        self.gens[g].expect("live generator")
    }

    fn live_gens(&self) -> impl Iterator<Item = (usize, Gen)> + '_ {
        self.gens.iter().enumerate().filter_map(|(k, g)| g.map(|g| (k, g)))
    }

    fn plan(&mut self, s: u32, t: u32, u: u32) -> &ComposePlan {
        let list = &self.matchings.list;
        self.compose_cache
            .entry((s, t, u))
            .or_insert_with(|| ComposePlan::new(&list[s as usize], &list[t as usize], &list[u as usize]))
    }

    fn check_d_squared(&mut self) -> Result<(), KhovanovError> {
        let xs: Vec<usize> = self.live_gens().map(|(x, _)| x).collect();
        for x in xs {
            let mut acc: HashMap<usize, Mor<F>> = HashMap::new();
            let firsts: Vec<(usize, Mor<F>)> = self.out[x].iter().map(|(&y, f)| (y, f.clone())).collect();
            for (y, f) in firsts {
                let seconds: Vec<(usize, Mor<F>)> = self.out[y].iter().map(|(&z, g)| (z, g.clone())).collect();
                for (z, g) in seconds {
                    let (mx, my, mz) = (self.gen(x).m, self.gen(y).m, self.gen(z).m);
                    let h = self.plan(mx, my, mz).compose(&f, &g);
                    acc.entry(z).or_insert_with(Mor::zero).add(&h);
                }
            }
            if acc.values().any(|m| !m.is_zero()) {
                return Err(KhovanovError::DSquaredNonzero { degree: self.gen(x).i });
            }
        }
        Ok(())
    }

    /// Cancels `b -> a`, an isomorphism `c * id`.
    fn cancel(&mut self, b: usize, a: usize) {
        let inv = self.out[b][&a].unit_part().expect("isomorphism").inv();
        let ma = self.gen(a).m;
        let sources: Vec<(usize, Mor<F>)> =
            self.inc[a].iter().filter(|&&x| x != b).map(|&x| (x, self.out[x][&a].scale(&inv))).collect();
        let targets: Vec<(usize, Mor<F>)> =
            self.out[b].iter().filter(|(&y, _)| y != a).map(|(&y, f)| (y, f.clone())).collect();
        for (x, fx) in &sources {
            for (y, fy) in &targets {
                let (mx, my) = (self.gen(*x).m, self.gen(*y).m);
                let h = self.plan(mx, ma, my).compose(fx, fy);
                self.add_mor(*x, *y, h.scale(&F::from_i64(-1)));
            }
        }
        self.remove(a);
        self.remove(b);
    }

    fn pivot_from(&self, b: usize) -> Option<usize> {
        let gb = self.gens[b]?;
        self.out[b].iter().find_map(|(&a, f)| {
            let ga = self.gen(a);
            (ga.m == gb.m && ga.q == gb.q && f.unit_part().is_some()).then_some(a)
        })
    }

    fn eliminate(&mut self) {
        let mut queue: Vec<usize> = self.live_gens().map(|(x, _)| x).collect();
        queue.reverse();
        while let Some(b) = queue.pop() {
            if let Some(a) = self.pivot_from(b) {
                let touched: Vec<usize> = self.inc[a].iter().copied().collect();
                self.cancel(b, a);
                queue.extend(touched.into_iter().filter(|&x| self.gens[x].is_some()));
            }
        }
    }

    /// Tensors with the two-term complex of a crossing and glues it on.
    fn attach(&self, boundary: &HashSet<Arc>, arcs: [Arc; 4], sign: i8, limit: u64) -> Result<Stage<F>, KhovanovError> {
        let at = Attach::new(boundary, arcs);
        let neg = (sign < 0) as i64;
        let q_shift = if sign > 0 { 1 } else { -2 };
        let old = &self.matchings.list;
        // Glued objects per (old matching, smoothing).
        let mut glued: HashMap<(u32, usize), Glued> = HashMap::new();
        let mut next = Stage {
            matchings: Interner::default(),
            gens: Vec::new(),
            out: Vec::new(),
            inc: Vec::new(),
            live: 0,
            compose_cache: HashMap::new(),
        };
        let mut new_match: HashMap<(u32, usize), u32> = HashMap::new();
        let mut first: HashMap<(usize, usize), usize> = HashMap::new();
        let live: Vec<(usize, Gen)> = self.live_gens().collect();
        for &(g, gen) in &live {
            for s in 0..2 {
                let key = (gen.m, s);
                if let std::collections::hash_map::Entry::Vacant(e) = glued.entry(key) {
                    let mut bottom = old[gen.m as usize].clone();
                    bottom.extend(at.smoothing(s));
                    let gl = at.glue(&bottom);
                    let id = next.matchings.intern(gl.matching.clone());
                    new_match.insert(key, id);
                    e.insert(gl);
                }
                let gl = &glued[&key];
                let loops = gl.loop_pts.len();
                first.insert((g, s), next.gens.len());
                for lam in 0..1u64 << loops {
                    let shift = loops as i64 - 2 * lam.count_ones() as i64;
                    next.push(Gen {
                        m: new_match[&key],
                        i: gen.i + s as i64 - neg,
                        q: gen.q + s as i64 + q_shift + shift,
                    });
                }
                if next.live as u64 > limit {
                    return Err(KhovanovError::SizeLimit { size: next.live as u64, limit });
                }
            }
        }

        // Build every morphism: old differential tensored with the identity of
        // the smoothing, and the saddle between the two smoothings.
        struct Job<'a, F: Field> {
            src: (usize, usize),
            tgt: (usize, usize),
            src_key: (u32, usize),
            tgt_key: (u32, usize),
            old: Option<(u32, u32, &'a Mor<F>)>,
            sign: i64,
        }
        let mut jobs: Vec<Job<F>> = Vec::new();
        for &(g, gen) in &live {
            for s in 0..2 {
                for (&h, f) in &self.out[g] {
                    let hm = self.gen(h).m;
                    jobs.push(Job {
                        src: (g, s),
                        tgt: (h, s),
                        src_key: (gen.m, s),
                        tgt_key: (hm, s),
                        old: Some((gen.m, hm, f)),
                        sign: 1,
                    });
                }
            }
            jobs.push(Job {
                src: (g, 0),
                tgt: (g, 1),
                src_key: (gen.m, 0),
                tgt_key: (gen.m, 1),
                old: None,
                sign: if gen.i.rem_euclid(2) == 0 { 1 } else { -1 },
            });
        }
        let boundary_pts = at.label.len() as i64;
        let results: Vec<Result<Vec<(usize, usize, Mor<F>)>, KhovanovError>> = jobs
            .par_iter()
            .map(|job| {
                let (sg, tg) = (&glued[&job.src_key], &glued[&job.tgt_key]);
                let (bottom, top, bits, terms): (Matching, Matching, Vec<Pt>, Vec<(u64, u32, F)>) = match job.old {
                    Some((ms, mt, f)) => {
                        let (s_old, t_old) = (&old[ms as usize], &old[mt as usize]);
                        let bits: Vec<Pt> = cycles(s_old, t_old).iter().map(|c| c[0]).collect();
                        let mut b = s_old.clone();
                        b.extend(at.smoothing(job.src.1));
                        let mut t = t_old.clone();
                        t.extend(at.smoothing(job.tgt.1));
                        let terms = f.terms.iter().map(|(&(m, k), c)| (m, k, c.clone())).collect();
                        (b, t, bits, terms)
                    }
                    None => {
                        let s_old = &old[job.src_key.0 as usize];
                        let mut b = s_old.clone();
                        b.extend(at.smoothing(0));
                        let mut t = s_old.clone();
                        t.extend(at.smoothing(1));
                        (b, t, Vec::new(), vec![(0, 0, F::one())])
                    }
                };
                let plan = GluePlan::new(&at, &bottom, &top, &bits, sg, tg);
                let (src_loops, tgt_loops) = (sg.loop_pts.len(), tg.loop_pts.len());
                let (s0, t0) = (first[&job.src], first[&job.tgt]);
                let sign = F::from_i64(job.sign);
                let mut out = Vec::new();
                for lam in 0..1u64 << src_loops {
                    for mu in 0..1u64 << tgt_loops {
                        let (x, y) = (s0 + lam as usize, t0 + mu as usize);
                        let (gx, gy) = (next.gens[x].unwrap(), next.gens[y].unwrap());
                        let mut m = Mor::zero();
                        for (mask, k, c) in &terms {
                            for (nm, nk, n) in plan.eval(*mask, lam, mu, tgt_loops) {
                                let deg = plan.circles as i64 - boundary_pts / 2
                                    - 2 * nm.count_ones() as i64
                                    - 4 * (k + nk) as i64;
                                if deg != gx.q - gy.q {
                                    return Err(KhovanovError::Internal(format!(
                                        "inhomogeneous morphism: degree {deg}, shift {}",
                                        gx.q - gy.q
                                    )));
                                }
                                m.add_term(nm, k + nk, c.mul(&sign).mul(&F::from_i64(n)));
                            }
                        }
                        if !m.is_zero() {
                            out.push((x, y, m));
                        }
                    }
                }
                Ok(out)
            })
            .collect();
        for r in results {
            for (x, y, m) in r? {
                next.add_mor(x, y, m);
            }
        }
        Ok(next)
    }
}

/// Result of scanning a diagram.
pub(crate) struct Scanned<F: Field> {
    pub complex: FilteredChainComplex<F>,
    pub stats: ScanStats,
}

pub(crate) fn scan<F: Field>(d: &PlanarDiagram, limit: u64, check: bool) -> Result<Scanned<F>, KhovanovError> {
    d.require_knot().map_err(KhovanovError::Diagram)?;
    if d.is_unknot_diagram() {
        let mut c = FilteredChainComplex::new();
        c.add_generator(Grading { i: 0, q: 1 });
        c.add_generator(Grading { i: 0, q: -1 });
        let stats = ScanStats { peak_generators: 2, final_generators: 2, crossings: 0 };
        return Ok(Scanned { complex: c, stats });
    }
    let mut stage: Stage<F> = Stage::new();
    let mut boundary: HashSet<Arc> = HashSet::new();
    let mut stats = ScanStats { crossings: d.crossing_count(), ..Default::default() };
    for (step, ci) in scan_order(d).into_iter().enumerate() {
        let c = d.crossings()[ci];
        let mut next = stage.attach(&boundary, c.arcs, c.sign, limit)?;
        stats.peak_generators = stats.peak_generators.max(next.live);
        if check {
            next.check_d_squared()?;
        }
        next.eliminate();
        debug!("crossing {ci} (step {step}): {} generators after elimination", next.live);
        for a in c.arcs {
            if !boundary.remove(&a) {
                boundary.insert(a);
            }
        }
        stage = next;
    }
    if !boundary.is_empty() {
        return Err(KhovanovError::Internal("open boundary after the last crossing".into()));
    }
    let mut complex = FilteredChainComplex::new();
    let mut index = HashMap::new();
    for (x, g) in stage.live_gens() {
        index.insert(x, complex.add_generator(Grading { i: g.i, q: g.q }));
    }
    for (x, g) in stage.live_gens() {
        for (y, f) in &stage.out[x] {
            for (&(mask, k), c) in &f.terms {
                let gy = stage.gen(*y);
                if mask != 0 || 4 * k as i64 != gy.q - g.q {
                    return Err(KhovanovError::Internal(format!("closed morphism term ({mask}, t^{k}) off degree")));
                }
                complex.add_entry(index[&x], index[y], c.clone())?;
            }
        }
    }
    if check {
        complex.check_d_squared()?;
    }
    stats.final_generators = complex.len();
    Ok(Scanned { complex, stats })
}
