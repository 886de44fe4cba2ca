//! Subset enumeration of the Taylor complex and per-multidegree homology.
//!
//! Every nonempty subset of the minimal generators is enumerated and
//! bucketed by the lcm of its members. Within one multidegree the boundary
//! map keeps exactly the faces whose lcm is unchanged, so each bucket is an
//! independent chain complex over the coefficient field; the graded Betti
//! number at homological index `i` and internal degree `j` is the sum over
//! buckets of total degree `j` of the homology dimension at faces of size
//! `i + 1`.
//!
//! Buckets are solved by one of two routes with identical output:
//!
//! * `Direct` builds the literal boundary matrices on the bucket's faces and
//!   reads ranks off Gaussian elimination. Cost grows with the bucket, so
//!   the automatic plan uses it only for small buckets.
//! * `Nerve` replaces the bucket by a homotopy-equivalent complex on at most
//!   one vertex per ambient variable. A face of the bucket misses the
//!   multidegree `b` exactly when all its members stay below `b_v` for some
//!   variable `v`, so the faces below `b` are covered by the full simplices
//!   on the sets `G_v = {g | b : deg_v(g) < b_v}`. All intersections of
//!   those simplices are empty or contractible, hence the nerve of the
//!   cover has the same homology, with homology at bucket faces of size `m`
//!   equal to reduced nerve homology in dimension `m - 2`.

use std::collections::{BTreeMap, HashMap};

use super::linalg::{rank, Entry, FieldSpec};
use super::BettiError;
use crate::ideal::MonomialIdeal;

/// Structural ceiling: subset masks are `u32` and the id table holds
/// `2^r` entries.
pub const HARD_GENERATOR_CAP: usize = 24;

const AUTO_DIRECT_MAX_FACES: u64 = 256;
const NERVE_MAX_VERTICES: usize = 20;
const NERVE_MAX_FACES: usize = 1 << 16;
const DIRECT_MAX_CLASS: usize = 4096;

/// Which per-bucket solver to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EngineKind {
    /// Small buckets run `Direct`, large ones `Nerve`.
    #[default]
    Auto,
    Direct,
    Nerve,
}

#[derive(Debug, Clone)]
enum Multideg {
    /// Squarefree multidegree as a variable bitmask.
    Bits(u128),
    /// General exponent vector.
    Exps(Vec<u32>),
}

impl Multideg {
    fn exponent(&self, v: usize) -> u32 {
        match self {
            Multideg::Bits(bits) => ((bits >> v) & 1) as u32,
            Multideg::Exps(exps) => exps[v],
        }
    }

    fn total_degree(&self) -> u64 {
        match self {
            Multideg::Bits(bits) => u64::from(bits.count_ones()),
            Multideg::Exps(exps) => exps.iter().map(|&e| u64::from(e)).sum(),
        }
    }
}

#[derive(Debug)]
enum Payload {
    /// Faces of the bucket grouped by subset size.
    Direct(Vec<Vec<u32>>),
    /// Maximal cover masks over the dividing generators; an empty list means
    /// the multidegree is itself a generator and contributes one beta in
    /// homological index 0.
    Nerve(Vec<u32>),
}

#[derive(Debug)]
struct Bucket {
    total_degree: u64,
    face_count: u64,
    payload: Payload,
}

/// The field-independent part of a Betti computation: enumeration, lcm
/// bucketing and the per-bucket solve plan. One skeleton can be solved over
/// several coefficient fields.
#[derive(Debug)]
pub struct Skeleton {
    generator_count: usize,
    buckets: Vec<Bucket>,
}

struct Enumeration {
    ids: Vec<u32>,
    multidegs: Vec<Multideg>,
    counts: Vec<u64>,
}

fn enumerate_squarefree(gens: &[&[u32]], n: usize) -> Enumeration {
    let gen_bits: Vec<u128> = gens
        .iter()
        .map(|g| {
            let mut bits = 0u128;
            for (v, &e) in g.iter().enumerate() {
                if e > 0 {
                    bits |= 1u128 << v;
                }
            }
            bits
        })
        .collect();
    let _ = n;
    let r = gens.len();
    let total = 1usize << r;
    let mut ids = vec![0u32; total];
    let mut intern: HashMap<u128, u32> = HashMap::new();
    let mut multidegs: Vec<Multideg> = Vec::new();
    let mut bits_of: Vec<u128> = Vec::new();
    let mut counts: Vec<u64> = Vec::new();
    for mask in 1..total {
        let low = mask.trailing_zeros() as usize;
        let parent = mask & (mask - 1);
        let bits = if parent == 0 {
            gen_bits[low]
        } else {
            bits_of[ids[parent] as usize] | gen_bits[low]
        };
        let id = *intern.entry(bits).or_insert_with(|| {
            multidegs.push(Multideg::Bits(bits));
            bits_of.push(bits);
            counts.push(0);
            (multidegs.len() - 1) as u32
        });
        counts[id as usize] += 1;
        ids[mask] = id;
    }
    Enumeration {
        ids,
        multidegs,
        counts,
    }
}

fn enumerate_general(gens: &[&[u32]], n: usize) -> Enumeration {
    let r = gens.len();
    let total = 1usize << r;
    let mut ids = vec![0u32; total];
    let mut intern: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut multidegs: Vec<Multideg> = Vec::new();
    let mut exps_of: Vec<Vec<u32>> = Vec::new();
    let mut counts: Vec<u64> = Vec::new();
    let mut scratch = vec![0u32; n];
    for mask in 1..total {
        let low = mask.trailing_zeros() as usize;
        let parent = mask & (mask - 1);
        if parent == 0 {
            scratch.copy_from_slice(gens[low]);
        } else {
            let base = &exps_of[ids[parent] as usize];
            for ((s, &b), &g) in scratch.iter_mut().zip(base).zip(gens[low]) {
                *s = b.max(g);
            }
        }
        let id = match intern.get(scratch.as_slice()) {
            Some(&id) => id,
            None => {
                let id = (multidegs.len()) as u32;
                intern.insert(scratch.clone(), id);
                multidegs.push(Multideg::Exps(scratch.clone()));
                exps_of.push(scratch.clone());
                counts.push(0);
                id
            }
        };
        counts[id as usize] += 1;
        ids[mask] = id;
    }
    Enumeration {
        ids,
        multidegs,
        counts,
    }
}

/// Per-variable masks of generators with exponent at most `e`, indexed as
/// `le[v][e]` for `e` up to the largest exponent of `v`.
fn divisibility_tables(gens: &[&[u32]], n: usize, max_exps: &[u32]) -> Vec<Vec<u32>> {
    let mut le = Vec::with_capacity(n);
    for v in 0..n {
        let mut table = vec![0u32; max_exps[v] as usize + 1];
        for (g, gen) in gens.iter().enumerate() {
            let e = gen[v] as usize;
            if e < table.len() {
                table[e] |= 1 << g;
            }
        }
        // Prefix-or: gens with exponent exactly e become gens with <= e.
        for e in 1..table.len() {
            table[e] |= table[e - 1];
        }
        le.push(table);
    }
    le
}

fn divisor_mask(b: &Multideg, le: &[Vec<u32>], all: u32) -> u32 {
    let mut mask = all;
    for (v, table) in le.iter().enumerate() {
        mask &= table[b.exponent(v) as usize];
        if mask == 0 {
            break;
        }
    }
    mask
}

/// Maximal distinct covers `G_v` over the dividing generators: for every
/// variable `v` in the support of `b`, the dividing generators whose
/// exponent at `v` is below `b_v`. Nested and duplicate covers collapse.
fn nerve_masks(b: &Multideg, le: &[Vec<u32>], div: u32) -> Vec<u32> {
    let mut masks: Vec<u32> = Vec::new();
    for (v, table) in le.iter().enumerate() {
        let bv = b.exponent(v);
        if bv == 0 {
            continue;
        }
        let m = div & table[bv as usize - 1];
        if m != 0 && !masks.contains(&m) {
            masks.push(m);
        }
    }
    masks.sort_unstable_by_key(|m| std::cmp::Reverse(m.count_ones()));
    let mut maximal: Vec<u32> = Vec::new();
    for m in masks {
        if !maximal.iter().any(|&big| m & !big == 0) {
            maximal.push(m);
        }
    }
    maximal.sort_unstable();
    maximal
}

impl Skeleton {
    pub fn build(
        ideal: &MonomialIdeal,
        cap: usize,
        kind: EngineKind,
    ) -> Result<Skeleton, BettiError> {
        if ideal.is_zero() {
            return Err(BettiError::ZeroIdeal);
        }
        if ideal.is_improper() {
            return Err(BettiError::ImproperIdeal);
        }
        let r = ideal.num_generators();
        let effective_cap = cap.min(HARD_GENERATOR_CAP);
        if r > effective_cap {
            return Err(BettiError::GeneratorCap {
                have: r,
                cap: effective_cap,
            });
        }
        let n = ideal.context().len();
        let gens: Vec<&[u32]> = ideal.generators().iter().map(|g| g.exponents()).collect();
        let max_exps = ideal.max_exponents();

        let enumeration = if ideal.is_squarefree() && n <= 128 {
            enumerate_squarefree(&gens, n)
        } else {
            enumerate_general(&gens, n)
        };
        let Enumeration {
            ids,
            multidegs,
            counts,
        } = enumeration;

        let le = divisibility_tables(&gens, n, &max_exps);
        let all = if r == 32 { u32::MAX } else { (1u32 << r) - 1 };

        let mut payloads: Vec<Payload> = Vec::with_capacity(multidegs.len());
        let mut wants_faces = vec![false; multidegs.len()];
        for (idx, b) in multidegs.iter().enumerate() {
            let direct = match kind {
                EngineKind::Direct => true,
                EngineKind::Nerve => false,
                EngineKind::Auto => counts[idx] <= AUTO_DIRECT_MAX_FACES,
            };
            if direct {
                wants_faces[idx] = true;
                payloads.push(Payload::Direct(Vec::new()));
                continue;
            }
            let div = divisor_mask(b, &le, all);
            debug_assert_ne!(div, 0, "a multidegree is the lcm of its divisors");
            let masks = nerve_masks(b, &le, div);
            if masks.len() > NERVE_MAX_VERTICES {
                if kind == EngineKind::Nerve {
                    return Err(BettiError::BucketTooHard {
                        faces: counts[idx],
                        nerve_vertices: masks.len(),
                    });
                }
                wants_faces[idx] = true;
                payloads.push(Payload::Direct(Vec::new()));
            } else {
                payloads.push(Payload::Nerve(masks));
            }
        }

        if wants_faces.iter().any(|&w| w) {
            let mut face_lists: Vec<Vec<Vec<u32>>> = payloads
                .iter()
                .map(|p| match p {
                    Payload::Direct(_) => vec![Vec::new(); r + 1],
                    Payload::Nerve(_) => Vec::new(),
                })
                .collect();
            for (mask, &id) in ids.iter().enumerate().skip(1) {
                let id = id as usize;
                if wants_faces[id] {
                    face_lists[id][mask.count_ones() as usize].push(mask as u32);
                }
            }
            for (payload, lists) in payloads.iter_mut().zip(face_lists) {
                if let Payload::Direct(faces) = payload {
                    *faces = lists;
                }
            }
        }
        drop(ids);

        let buckets = multidegs
            .iter()
            .zip(payloads)
            .zip(&counts)
            .map(|((b, payload), &face_count)| Bucket {
                total_degree: b.total_degree(),
                face_count,
                payload,
            })
            .collect();

        Ok(Skeleton {
            generator_count: r,
            buckets,
        })
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    /// Betti numbers over `field` as a map from `(homological degree,
    /// internal degree)` to multiplicity.
    pub fn solve(&self, field: FieldSpec) -> Result<BTreeMap<(u32, u64), u64>, BettiError> {
        let mut entries: BTreeMap<(u32, u64), u64> = BTreeMap::new();
        for bucket in &self.buckets {
            let contributions = match &bucket.payload {
                Payload::Direct(faces) => direct_contributions(faces, field, bucket.face_count)?,
                Payload::Nerve(masks) => nerve_contributions(masks, field, bucket.face_count)?,
            };
            for (i, dim) in contributions {
                *entries.entry((i, bucket.total_degree)).or_insert(0) += dim;
            }
        }
        Ok(entries)
    }
}

fn boundary_rank(
    sources: &[u32],
    targets: &[u32],
    field: FieldSpec,
) -> usize {
    let mut matrix_entries = Vec::new();
    for (col, &face) in sources.iter().enumerate() {
        let mut bits = face;
        while bits != 0 {
            let low = bits & bits.wrapping_neg();
            let sub = face ^ low;
            if let Ok(row) = targets.binary_search(&sub) {
                let position = (face & (low - 1)).count_ones();
                matrix_entries.push(Entry {
                    row: row as u32,
                    col: col as u32,
                    sign: if position % 2 == 0 { 1 } else { -1 },
                });
            }
            bits ^= low;
        }
    }
    rank(targets.len(), sources.len(), &matrix_entries, field)
}

/// Homology of the bucket complex from its literal boundary matrices.
/// Returns `(homological index, dimension)` pairs, where faces of size `m`
/// sit in homological index `m - 1`.
fn direct_contributions(
    faces: &[Vec<u32>],
    field: FieldSpec,
    face_count: u64,
) -> Result<Vec<(u32, u64)>, BettiError> {
    if let Some(worst) = faces.iter().map(Vec::len).max() {
        if worst > DIRECT_MAX_CLASS {
            return Err(BettiError::BucketTooHard {
                faces: face_count,
                nerve_vertices: 0,
            });
        }
    }
    let max_size = faces.len();
    let mut ranks = vec![0usize; max_size + 1];
    for m in 2..max_size {
        if !faces[m].is_empty() && !faces[m - 1].is_empty() {
            ranks[m] = boundary_rank(&faces[m], &faces[m - 1], field);
        }
    }
    let mut out = Vec::new();
    for m in 1..max_size {
        let count = faces[m].len();
        if count == 0 {
            continue;
        }
        let next_rank = if m + 1 < ranks.len() { ranks[m + 1] } else { 0 };
        let h = count - ranks[m] - next_rank;
        if h > 0 {
            out.push(((m - 1) as u32, h as u64));
        }
    }
    Ok(out)
}

/// Homology of the nerve model. Nerve faces of size `s` carry reduced
/// homology in dimension `s - 1`, which lands in homological index `s` of
/// the Betti table; the augmentation to the empty face is included so that
/// reduced ranks come out directly.
fn nerve_contributions(
    masks: &[u32],
    field: FieldSpec,
    face_count: u64,
) -> Result<Vec<(u32, u64)>, BettiError> {
    if masks.is_empty() {
        // The multidegree is a minimal generator.
        return Ok(vec![(0, 1)]);
    }
    let a = masks.len();
    let mut faces: Vec<Vec<u32>> = vec![Vec::new(); a + 1];
    let mut inter = vec![0u32; 1 << a];
    let mut total = 0usize;
    for t in 1usize..(1 << a) {
        let low = t.trailing_zeros() as usize;
        let parent = t & (t - 1);
        let common = if parent == 0 {
            masks[low]
        } else {
            inter[parent] & masks[low]
        };
        inter[t] = common;
        if common != 0 {
            faces[t.count_ones() as usize].push(t as u32);
            total += 1;
            if total > NERVE_MAX_FACES {
                return Err(BettiError::BucketTooHard {
                    faces: face_count,
                    nerve_vertices: a,
                });
            }
        }
    }
    let mut ranks = vec![0usize; a + 2];
    ranks[1] = 1; // augmentation: every vertex maps to the empty face
    for s in 2..=a {
        if !faces[s].is_empty() {
            debug_assert!(!faces[s - 1].is_empty());
            ranks[s] = boundary_rank(&faces[s], &faces[s - 1], field);
        }
    }
    let mut out = Vec::new();
    for s in 1..=a {
        let count = faces[s].len();
        if count == 0 {
            continue;
        }
        let h = count - ranks[s] - ranks[s + 1];
        if h > 0 {
            out.push((s as u32, h as u64));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::parse_ideal;

    fn betti(
        text: &str,
        kind: EngineKind,
        field: FieldSpec,
    ) -> BTreeMap<(u32, u64), u64> {
        let ideal = parse_ideal(text).unwrap();
        Skeleton::build(&ideal, 22, kind)
            .unwrap()
            .solve(field)
            .unwrap()
    }

    #[test]
    fn principal_ideal() {
        for kind in [EngineKind::Direct, EngineKind::Nerve] {
            let table = betti("ring x1 x2\nx1*x2^2\n", kind, FieldSpec::default());
            assert_eq!(table, BTreeMap::from([((0, 3), 1)]));
        }
    }

    #[test]
    fn two_coprime_generators() {
        for kind in [EngineKind::Direct, EngineKind::Nerve] {
            let table = betti(
                "ring x1 x2 x3 x4\nx1*x2\nx3*x4\n",
                kind,
                FieldSpec::default(),
            );
            assert_eq!(table, BTreeMap::from([((0, 2), 2), ((1, 4), 1)]));
        }
    }

    #[test]
    fn squarefree_path() {
        for kind in [EngineKind::Direct, EngineKind::Nerve] {
            let table = betti(
                "ring a b c d\na*b\nb*c\nc*d\n",
                kind,
                FieldSpec::default(),
            );
            assert_eq!(table, BTreeMap::from([((0, 2), 3), ((1, 3), 2)]));
        }
    }

    #[test]
    fn koszul_three_variables() {
        // Three coprime variables: binomial Betti numbers.
        for kind in [EngineKind::Direct, EngineKind::Nerve, EngineKind::Auto] {
            let table = betti("ring x y z\nx\ny\nz\n", kind, FieldSpec::default());
            assert_eq!(
                table,
                BTreeMap::from([((0, 1), 3), ((1, 2), 3), ((2, 3), 1)])
            );
        }
    }

    #[test]
    fn engines_agree_on_mixed_ideal() {
        let text = "ring x1 x2 x3\nx1^2*x2\nx1*x2^3\nx2*x3^2\nx1*x3\n";
        let direct = betti(text, EngineKind::Direct, FieldSpec::default());
        let nerve = betti(text, EngineKind::Nerve, FieldSpec::default());
        let auto = betti(text, EngineKind::Auto, FieldSpec::default());
        assert_eq!(direct, nerve);
        assert_eq!(direct, auto);
        let rational = betti(text, EngineKind::Auto, FieldSpec::Rationals);
        assert_eq!(direct, rational);
    }

    #[test]
    fn cap_is_enforced() {
        let ideal = parse_ideal("ring x1 x2\nx1\n").unwrap();
        let err = Skeleton::build(&ideal, 0, EngineKind::Auto).unwrap_err();
        assert!(matches!(err, BettiError::GeneratorCap { have: 1, cap: 0 }));
    }
}
