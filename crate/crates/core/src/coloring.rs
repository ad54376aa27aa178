//! Colorings, color classes, color codes and the locating check.
//!
//! Colors are 1-based: a `k`-coloring uses every color of `1..=k`.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::graph::{DistanceMatrix, Graph, UNREACHED};

pub type Color = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("coloring has {got} entries but the graph has {expected} vertices")]
    WrongLength { expected: usize, got: usize },
    #[error("color 0 is not allowed (colors are 1-based)")]
    ZeroColor,
    #[error("color {0} is never used, but a larger color is")]
    UnusedColor(Color),
    #[error("not proper: adjacent vertices {u} and {v} both have color {color}")]
    Improper { u: usize, v: usize, color: Color },
    #[error("graph is disconnected")]
    Disconnected,
}

/// A vertex coloring onto `1..=k` (every color used).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    colors: Vec<Color>,
    k: Color,
}

impl Coloring {
    pub fn new(colors: Vec<Color>) -> Result<Self, ColoringError> {
        let k = colors.iter().copied().max().unwrap_or(0);
        let mut used = vec![false; k as usize + 1];
        for &c in &colors {
            if c == 0 {
                return Err(ColoringError::ZeroColor);
            }
            used[c as usize] = true;
        }
        if let Some(c) = (1..=k).find(|&c| !used[c as usize]) {
            return Err(ColoringError::UnusedColor(c));
        }
        Ok(Coloring { colors, k })
    }

    /// Relabels arbitrary positive labels onto `1..=k` preserving their order.
    pub fn normalized(labels: &[Color]) -> Result<Self, ColoringError> {
        let mut distinct: Vec<Color> = labels.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.first() == Some(&0) {
            return Err(ColoringError::ZeroColor);
        }
        let colors = labels
            .iter()
            .map(|c| distinct.binary_search(c).unwrap() as Color + 1)
            .collect();
        Coloring::new(colors)
    }

    pub fn num_colors(&self) -> Color {
        self.k
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn color(&self, v: usize) -> Color {
        self.colors[v]
    }

    pub fn as_slice(&self) -> &[Color] {
        &self.colors
    }

    pub fn into_vec(self) -> Vec<Color> {
        self.colors
    }

    pub fn partition(&self) -> ColorPartition {
        let mut classes = vec![Vec::new(); self.k as usize];
        for (v, &c) in self.colors.iter().enumerate() {
            classes[c as usize - 1].push(v);
        }
        ColorPartition { classes }
    }

    fn check_len(&self, g: &Graph) -> Result<(), ColoringError> {
        if self.colors.len() != g.vertex_count() {
            return Err(ColoringError::WrongLength {
                expected: g.vertex_count(),
                got: self.colors.len(),
            });
        }
        Ok(())
    }
}

/// Ordered color classes `(V_1, ..., V_k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorPartition {
    classes: Vec<Vec<usize>>,
}

impl ColorPartition {
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class(&self, color: Color) -> &[usize] {
        &self.classes[color as usize - 1]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Distances from one vertex to each color class, in class order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorCode(pub Vec<u32>);

impl fmt::Display for ColorCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

/// The first monochromatic edge, if any.
pub fn find_conflict(g: &Graph, c: &Coloring) -> Result<Option<(usize, usize)>, ColoringError> {
    c.check_len(g)?;
    Ok(g.edges().find(|&(u, v)| c.color(u) == c.color(v)))
}

pub fn is_proper(g: &Graph, c: &Coloring) -> Result<bool, ColoringError> {
    Ok(find_conflict(g, c)?.is_none())
}

fn require_proper(g: &Graph, c: &Coloring) -> Result<(), ColoringError> {
    match find_conflict(g, c)? {
        Some((u, v)) => Err(ColoringError::Improper {
            u,
            v,
            color: c.color(u),
        }),
        None => Ok(()),
    }
}

/// Code of `v` read off a precomputed distance matrix.
pub fn color_code(dm: &DistanceMatrix, partition: &ColorPartition, v: usize) -> ColorCode {
    let row = dm.row(v);
    ColorCode(
        partition
            .classes()
            .iter()
            .map(|class| class.iter().map(|&x| row[x]).min().unwrap_or(UNREACHED))
            .collect(),
    )
}

/// Codes of all vertices, one multi-source BFS per color class.
pub fn color_codes(g: &Graph, c: &Coloring) -> Result<Vec<ColorCode>, ColoringError> {
    c.check_len(g)?;
    let partition = c.partition();
    let per_class: Vec<Vec<u32>> = partition
        .classes()
        .iter()
        .map(|class| g.distances_to_set(class.iter().copied()))
        .collect();
    if per_class.first().is_some_and(|d| d.contains(&UNREACHED)) {
        return Err(ColoringError::Disconnected);
    }
    Ok((0..g.vertex_count())
        .map(|v| ColorCode(per_class.iter().map(|d| d[v]).collect()))
        .collect())
}

/// Two distinct vertices with the same color code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clash {
    pub first: usize,
    pub second: usize,
    pub code: ColorCode,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Locating {
    Yes,
    No(Clash),
}

impl Locating {
    pub fn is_yes(&self) -> bool {
        matches!(self, Locating::Yes)
    }
}

/// Decides whether a proper coloring is locating. An improper coloring is
/// an error, not a negative answer.
///
/// Codes only need comparing inside a color class: the zero entry already
/// tells classes apart.
pub fn is_locating(g: &Graph, c: &Coloring) -> Result<Locating, ColoringError> {
    require_proper(g, c)?;
    let codes = color_codes(g, c)?;
    let partition = c.partition();
    for class in partition.classes() {
        let mut seen: HashMap<&ColorCode, usize> = HashMap::with_capacity(class.len());
        for &v in class {
            if let Some(&u) = seen.get(&codes[v]) {
                return Ok(Locating::No(Clash {
                    first: u,
                    second: v,
                    code: codes[v].clone(),
                }));
            }
            seen.insert(&codes[v], v);
        }
    }
    Ok(Locating::Yes)
}

/// Vertices whose closed neighborhood sees every color, paired with their
/// (full) color. One entry per colorful vertex; repeated colors are kept.
pub fn colorful_vertices(g: &Graph, c: &Coloring) -> Result<Vec<(usize, Color)>, ColoringError> {
    require_proper(g, c)?;
    let k = c.num_colors() as usize;
    let mut seen = vec![usize::MAX; k + 1];
    let mut out = Vec::new();
    for v in 0..g.vertex_count() {
        let mut count = 0;
        for w in std::iter::once(v).chain(g.neighbors(v).iter().copied()) {
            let color = c.color(w) as usize;
            if seen[color] != v {
                seen[color] = v;
                count += 1;
            }
        }
        if count == k {
            out.push((v, c.color(v)));
        }
    }
    Ok(out)
}

/// Colors that occur on two or more colorful vertices. Empty for every
/// locating coloring.
pub fn repeated_full_colors(g: &Graph, c: &Coloring) -> Result<Vec<Color>, ColoringError> {
    let mut counts = vec![0usize; c.num_colors() as usize + 1];
    for (_, color) in colorful_vertices(g, c)? {
        counts[color as usize] += 1;
    }
    Ok((1..counts.len())
        .filter(|&i| counts[i] > 1)
        .map(|i| i as Color)
        .collect())
}

/// Coloring of `G □ H` whose classes are the products `A_i x B_j` of the
/// factor classes. Class `(i, j)` gets color `(i - 1) * k_H + j`.
/// Vertex `(a, b)` is `a * |V(H)| + b`, matching `cartesian_product`.
pub fn product_coloring(cg: &Coloring, ch: &Coloring) -> Coloring {
    let kh = ch.num_colors();
    let colors = cg
        .as_slice()
        .iter()
        .flat_map(|&a| ch.as_slice().iter().map(move |&b| (a - 1) * kh + b))
        .collect();
    Coloring::new(colors).expect("product of surjective colorings is surjective")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, cartesian_product, Family};

    fn col(v: &[Color]) -> Coloring {
        Coloring::new(v.to_vec()).unwrap()
    }

    #[test]
    fn coloring_requires_all_colors() {
        assert_eq!(
            Coloring::new(vec![1, 3]),
            Err(ColoringError::UnusedColor(2))
        );
        assert_eq!(Coloring::new(vec![0, 1]), Err(ColoringError::ZeroColor));
        assert_eq!(
            Coloring::normalized(&[7, 3, 7, 9]).unwrap().as_slice(),
            &[2, 1, 2, 3]
        );
    }

    #[test]
    fn properness() {
        let k3 = build_family(Family::Complete, 3).unwrap();
        assert!(is_proper(&k3, &col(&[1, 2, 3])).unwrap());
        let p3 = build_family(Family::Path, 3).unwrap();
        assert!(!is_proper(&p3, &col(&[1, 1, 2])).unwrap());
        assert!(matches!(
            is_locating(&p3, &col(&[1, 1, 2])),
            Err(ColoringError::Improper {
                u: 0,
                v: 1,
                color: 1
            })
        ));
        assert!(matches!(
            is_proper(&p3, &col(&[1, 2])),
            Err(ColoringError::WrongLength {
                expected: 3,
                got: 2
            })
        ));
    }

    #[test]
    fn codes_on_k3_and_p4() {
        let k3 = build_family(Family::Complete, 3).unwrap();
        let c = col(&[1, 2, 3]);
        let dm = k3.distances().unwrap();
        assert_eq!(color_code(dm, &c.partition(), 0), ColorCode(vec![0, 1, 1]));

        let p4 = build_family(Family::Path, 4).unwrap();
        let c = col(&[1, 2, 1, 3]);
        let dm = p4.distances().unwrap();
        let codes: Vec<ColorCode> = (0..4).map(|v| color_code(dm, &c.partition(), v)).collect();
        assert_eq!(
            codes,
            vec![
                ColorCode(vec![0, 1, 3]),
                ColorCode(vec![1, 0, 2]),
                ColorCode(vec![0, 1, 1]),
                ColorCode(vec![1, 2, 0]),
            ]
        );
        assert_eq!(color_codes(&p4, &c).unwrap(), codes);
        assert!(is_locating(&p4, &c).unwrap().is_yes());
        for (v, code) in codes.iter().enumerate() {
            assert_eq!(code.0[c.color(v) as usize - 1], 0);
        }
    }

    #[test]
    fn even_cycle_has_no_locating_3_coloring() {
        let c4 = build_family(Family::Cycle, 4).unwrap();
        for colors in [[1, 2, 1, 3], [1, 2, 3, 2], [1, 3, 1, 2], [1, 2, 1, 2]] {
            let c = Coloring::normalized(&colors).unwrap();
            assert!(!is_locating(&c4, &c).unwrap().is_yes(), "{colors:?}");
        }
    }

    #[test]
    fn clash_witness_is_reported() {
        let c4 = build_family(Family::Cycle, 4).unwrap();
        let c = col(&[1, 2, 1, 3]);
        match is_locating(&c4, &c).unwrap() {
            Locating::No(clash) => {
                assert_eq!((clash.first, clash.second), (0, 2));
                assert_eq!(clash.code, ColorCode(vec![0, 1, 1]));
            }
            Locating::Yes => panic!("C4 with 3 colors cannot be locating"),
        }
    }

    #[test]
    fn complete_graph_is_locating_and_colorful() {
        for n in 1..=6 {
            let kn = build_family(Family::Complete, n).unwrap();
            let c = col(&(1..=n as Color).collect::<Vec<_>>());
            assert!(is_locating(&kn, &c).unwrap().is_yes());
            assert_eq!(colorful_vertices(&kn, &c).unwrap().len(), n);
        }
    }

    #[test]
    fn colorful_on_p4() {
        let p4 = build_family(Family::Path, 4).unwrap();
        let c = col(&[1, 2, 1, 3]);
        let colorful = colorful_vertices(&p4, &c).unwrap();
        assert!(colorful.contains(&(2, 1)));
        // degree-1 vertices cannot see three colors
        assert!(!colorful.iter().any(|&(v, _)| v == 0 || v == 3));
        assert!(repeated_full_colors(&p4, &c).unwrap().is_empty());
    }

    #[test]
    fn product_of_k2_colorings_locates_c4() {
        let k2 = build_family(Family::Complete, 2).unwrap();
        let c = col(&[1, 2]);
        let prod = product_coloring(&c, &c);
        assert_eq!(prod.num_colors(), 4);
        let g = cartesian_product(&k2, &k2);
        assert!(is_locating(&g, &prod).unwrap().is_yes());
    }

    #[test]
    fn product_of_path_colorings() {
        let p3 = build_family(Family::Path, 3).unwrap();
        let p4 = build_family(Family::Path, 4).unwrap();
        let c3 = col(&[1, 2, 3]);
        let c4 = col(&[1, 2, 1, 3]);
        assert!(is_locating(&p3, &c3).unwrap().is_yes());
        let prod = product_coloring(&c3, &c4);
        assert_eq!(prod.num_colors(), 9);
        assert_eq!(prod.partition().len(), 9);
        let g = cartesian_product(&p3, &p4);
        assert!(is_locating(&g, &prod).unwrap().is_yes());
    }
}
