//! The bigraded complex `K_{j,l} = Lambda^j V (x) C^inf_{0,l}` with the Koszul
//! differential `b`, the componentwise `dbar`, and the homotopy `eta`.
//!
//! All three operators are pointwise algebra on the sampled coefficient fields
//! except `dbar`, which delegates to a [`PartialDbar`] per complex variable.
//!
//! Sign conventions: `b` removes the `p`-th wedge index (0-based) with sign
//! `(-1)^p`; `eta` and `dbar` insert a new index `q` into a sorted index set
//! with sign `(-1)^{#entries < q}`. With these, `b b = 0` and
//! `b eta + eta b = (sum_j f_j g_j) id` hold exactly.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::calculus::wirtinger_dbar_fd;
use crate::error::KoszulError;
use crate::field::ScalarField;
use crate::grid::PolarGrid;

/// Strictly increasing list of 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Sorts and rejects repeats or zero entries.
    pub fn new(mut entries: Vec<usize>) -> Option<Self> {
        entries.sort_unstable();
        if entries.first() == Some(&0) || entries.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(Self(entries))
    }

    pub fn single(i: usize) -> Self {
        Self(vec![i])
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn largest(&self) -> usize {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn contains(&self, q: usize) -> bool {
        self.0.binary_search(&q).is_ok()
    }

    /// `e_q ^ e_self` as (sign, sorted index), or `None` if `q` is present.
    pub fn insert(&self, q: usize) -> Option<(f64, MultiIndex)> {
        match self.0.binary_search(&q) {
            Ok(_) => None,
            Err(pos) => {
                let mut v = self.0.clone();
                v.insert(pos, q);
                Some((parity(pos), MultiIndex(v)))
            }
        }
    }

    /// Index with the entry at `pos` removed.
    pub fn remove_at(&self, pos: usize) -> MultiIndex {
        let mut v = self.0.clone();
        v.remove(pos);
        MultiIndex(v)
    }

    /// Every index of size `size` drawn from `1..=bound`, lexicographic.
    pub fn all(bound: usize, size: usize) -> Vec<MultiIndex> {
        fn rec(start: usize, bound: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
            if left == 0 {
                out.push(MultiIndex(cur.clone()));
                return;
            }
            for q in start..=bound {
                cur.push(q);
                rec(q + 1, bound, left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if size <= bound {
            rec(1, bound, size, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join("-"))
    }
}

fn parity(count: usize) -> f64 {
    if count.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Wedge degree `j` (may be -1 for the target of `b` on `K_{0,l}`) and form degree `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Degree {
    pub wedge: i64,
    pub form: i64,
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, {}", self.wedge, self.form)
    }
}

pub type ComponentKey = (MultiIndex, MultiIndex);

/// Sparse element of `K_{j,l}`; absent components are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct KoszulElement {
    m: usize,
    n: usize,
    degree: Degree,
    grid: Arc<PolarGrid>,
    components: BTreeMap<ComponentKey, ScalarField>,
}

impl KoszulElement {
    pub fn zero(m: usize, n: usize, wedge: i64, form: i64, grid: &Arc<PolarGrid>) -> Self {
        Self {
            m,
            n,
            degree: Degree { wedge, form },
            grid: Arc::clone(grid),
            components: BTreeMap::new(),
        }
    }

    /// The function `u` viewed as an element of `K_{0,0}`.
    pub fn scalar(m: usize, n: usize, u: ScalarField) -> Self {
        let grid = Arc::clone(u.grid());
        let mut x = Self::zero(m, n, 0, 0, &grid);
        x.components.insert((MultiIndex::empty(), MultiIndex::empty()), u);
        x
    }

    pub fn from_components<I>(
        m: usize,
        n: usize,
        wedge: usize,
        form: usize,
        grid: &Arc<PolarGrid>,
        components: I,
    ) -> Result<Self, KoszulError>
    where
        I: IntoIterator<Item = (ComponentKey, ScalarField)>,
    {
        let mut x = Self::zero(m, n, wedge as i64, form as i64, grid);
        for ((wj, fl), field) in components {
            if wj.len() != wedge || fl.len() != form || wj.largest() > m || fl.largest() > n {
                return Err(KoszulError::InvalidKey {
                    wedge: wj.entries().to_vec(),
                    form: fl.entries().to_vec(),
                    m,
                    n,
                });
            }
            if !grid.same_layout(field.grid()) {
                return Err(KoszulError::Field(crate::error::FieldError::GridMismatch));
            }
            x.components.insert((wj, fl), field);
        }
        Ok(x)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn grid(&self) -> &Arc<PolarGrid> {
        &self.grid
    }

    pub fn components(&self) -> &BTreeMap<ComponentKey, ScalarField> {
        &self.components
    }

    pub fn component(&self, wedge: &MultiIndex, form: &MultiIndex) -> Option<&ScalarField> {
        self.components.get(&(wedge.clone(), form.clone()))
    }

    /// True when no stored component has a nonzero value.
    pub fn is_zero(&self) -> bool {
        self.components.values().all(ScalarField::is_zero)
    }

    /// Degree lies outside `0..=m` x `0..=n`, so the space is trivial.
    pub fn degree_is_trivial(&self) -> bool {
        let Degree { wedge, form } = self.degree;
        wedge < 0 || form < 0 || wedge as usize > self.m || form as usize > self.n
    }

    /// Drops components that are identically zero.
    pub fn pruned(mut self) -> Self {
        self.components.retain(|_, v| !v.is_zero());
        self
    }

    /// Largest component sup-norm over `r <= r_max`.
    pub fn sup_norm(&self, r_max: f64) -> f64 {
        self.components
            .values()
            .fold(0.0, |m, v| m.max(v.sup_norm(r_max)))
    }

    pub fn sup_norm_full(&self) -> f64 {
        self.sup_norm(1.0)
    }

    pub(crate) fn with_same_shape(&self, degree: Degree) -> Self {
        Self::zero(self.m, self.n, degree.wedge, degree.form, &self.grid)
    }

    /// Adds `coef * a * b` into the component at `key`.
    fn accumulate(&mut self, key: ComponentKey, coef: f64, a: &ScalarField, b: Option<&ScalarField>) {
        let values: Vec<Complex64> = match b {
            Some(b) => a
                .values()
                .iter()
                .zip(b.values())
                .map(|(&x, &y)| coef * x * y)
                .collect(),
            None => a.values().iter().map(|&x| coef * x).collect(),
        };
        match self.components.get_mut(&key) {
            Some(existing) => {
                let add = ScalarField::from_vec_unchecked(Arc::clone(&self.grid), values);
                existing
                    .add_scaled(Complex64::new(1.0, 0.0), &add)
                    .expect("grids checked by caller");
            }
            None => {
                self.components.insert(
                    key,
                    ScalarField::from_vec_unchecked(Arc::clone(&self.grid), values),
                );
            }
        }
    }

    fn check_fields(&self, fs: &[ScalarField]) -> Result<(), KoszulError> {
        if fs.len() != self.m {
            return Err(KoszulError::CountMismatch {
                element: self.m,
                given: fs.len(),
            });
        }
        if fs.iter().any(|f| !self.grid.same_layout(f.grid())) {
            return Err(crate::error::FieldError::GridMismatch.into());
        }
        Ok(())
    }
}

/// Derivative `d/dzbar_k` on sampled fields, one call per complex variable.
pub trait PartialDbar {
    /// Complex dimension handled.
    fn dimension(&self) -> usize;
    /// `d u / d zbar_var` for `var` in `1..=dimension()`.
    fn partial(&self, u: &ScalarField, var: usize) -> ScalarField;
}

/// Second-order finite differences on the polar disc grid (`n = 1`).
#[derive(Debug, Clone, Copy, Default)]
pub struct DiscWirtinger;

impl PartialDbar for DiscWirtinger {
    fn dimension(&self) -> usize {
        1
    }

    fn partial(&self, u: &ScalarField, var: usize) -> ScalarField {
        debug_assert_eq!(var, 1);
        wirtinger_dbar_fd(u)
    }
}

/// `b((e_J) (x) w) = sum_p (-1)^p e_{J \ J_p} (x) f_{J_p} w`.
pub fn koszul_b(x: &KoszulElement, f: &[ScalarField]) -> Result<KoszulElement, KoszulError> {
    x.check_fields(f)?;
    let mut out = x.with_same_shape(Degree {
        wedge: x.degree.wedge - 1,
        form: x.degree.form,
    });
    for ((wj, fl), w) in &x.components {
        for (p, &q) in wj.entries().iter().enumerate() {
            out.accumulate((wj.remove_at(p), fl.clone()), parity(p), &f[q - 1], Some(w));
        }
    }
    Ok(out)
}

/// Componentwise `dbar`, inserting `dzbar_k` with insert-and-sort parity.
pub fn koszul_dbar_with(
    x: &KoszulElement,
    dbar: &dyn PartialDbar,
) -> Result<KoszulElement, KoszulError> {
    if dbar.dimension() != x.n {
        return Err(KoszulError::DimensionMismatch {
            element: x.n,
            operator: dbar.dimension(),
        });
    }
    let mut out = x.with_same_shape(Degree {
        wedge: x.degree.wedge,
        form: x.degree.form + 1,
    });
    if out.degree_is_trivial() {
        return Ok(out);
    }
    for ((wj, fl), w) in &x.components {
        for var in 1..=x.n {
            if let Some((sign, fl2)) = fl.insert(var) {
                let d = dbar.partial(w, var);
                out.accumulate((wj.clone(), fl2), sign, &d, None);
            }
        }
    }
    Ok(out)
}

/// `dbar` on the disc grid.
pub fn koszul_dbar(x: &KoszulElement) -> Result<KoszulElement, KoszulError> {
    koszul_dbar_with(x, &DiscWirtinger)
}

/// `eta(x) = sum_q e_q ^ (g_q x)`.
pub fn eta(x: &KoszulElement, g: &[ScalarField]) -> Result<KoszulElement, KoszulError> {
    x.check_fields(g)?;
    let mut out = x.with_same_shape(Degree {
        wedge: x.degree.wedge + 1,
        form: x.degree.form,
    });
    if out.degree_is_trivial() {
        return Ok(out);
    }
    for ((wj, fl), w) in &x.components {
        for q in 1..=x.m {
            if let Some((sign, wj2)) = wj.insert(q) {
                out.accumulate((wj2, fl.clone()), sign, &g[q - 1], Some(w));
            }
        }
    }
    Ok(out)
}

/// `a x + y`, missing components treated as zero.
pub fn kelem_axpy(
    a: Complex64,
    x: &KoszulElement,
    y: &KoszulElement,
) -> Result<KoszulElement, KoszulError> {
    if x.degree != y.degree || x.m != y.m || x.n != y.n {
        return Err(KoszulError::DegreeMismatch(
            format!("m={}, n={}, {}", x.m, x.n, x.degree),
            format!("m={}, n={}, {}", y.m, y.n, y.degree),
        ));
    }
    if !x.grid.same_layout(&y.grid) {
        return Err(crate::error::FieldError::GridMismatch.into());
    }
    let mut out = y.clone();
    for (key, w) in &x.components {
        match out.components.get_mut(key) {
            Some(existing) => existing.add_scaled(a, w)?,
            None => {
                out.components.insert(key.clone(), w.scale(a));
            }
        }
    }
    Ok(out)
}
