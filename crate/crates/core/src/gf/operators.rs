//! Generating functions assembled from sparsened skeletons.
//!
//! Each skeleton case is a product of tree and path series in the marker
//! ring; the operator `Y` then reads off the coefficient of `y_1 ⋯ y_k`.
//! Series are memoised per context because most cases share factors.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_rational::BigRational;

use crate::algebra::{Dyadic, MultilinearElem, Scalar};
use crate::error::{Error, Result};
use crate::exec::{self, Mode};
use crate::series::{build_m, build_mtilde, build_p_from, build_phat_from, TruncSeries};

use super::NetworkClass;

type Ser<S> = TruncSeries<MultilinearElem<S>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Key {
    Tree(u32),
    White(u32),
    WhitePath(u32),
    TreePath(u32),
    Path(u32, u32, u32),
    TcPath(u32, u32, u32),
}

/// Memoised factor series for a fixed marker count and truncation order.
pub struct OperatorContext<S: Scalar> {
    k: usize,
    order: usize,
    mode: Mode,
    cache: Mutex<HashMap<Key, Arc<Ser<S>>>>,
}

impl<S: Scalar> OperatorContext<S> {
    pub fn new(k: usize, order: usize, mode: Mode) -> Result<Self> {
        MultilinearElem::<S>::zero(k)?;
        Ok(OperatorContext { k, order, mode, cache: Mutex::new(HashMap::new()) })
    }

    pub fn markers(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn y(&self, mask: u32) -> Result<MultilinearElem<S>> {
        MultilinearElem::marker_sum(self.k, mask)
    }

    fn memo(&self, key: Key, build: impl FnOnce() -> Result<Ser<S>>) -> Result<Arc<Ser<S>>> {
        if let Some(s) = self.cache.lock().expect("cache poisoned").get(&key) {
            return Ok(s.clone());
        }
        let s = Arc::new(build()?);
        Ok(self.cache.lock().expect("cache poisoned").entry(key).or_insert(s).clone())
    }

    /// `M(z, y_mask)`.
    pub fn tree(&self, mask: u32) -> Result<Arc<Ser<S>>> {
        self.memo(Key::Tree(mask), || build_m(self.order, &self.y(mask)?))
    }

    /// `M̃(z, y_mask)`.
    pub fn white_tree(&self, mask: u32) -> Result<Arc<Ser<S>>> {
        self.memo(Key::White(mask), || build_mtilde(self.order, &self.y(mask)?))
    }

    /// `1 / (1 - z M̃(z, y_mask))`.
    pub fn white_path(&self, mask: u32) -> Result<Arc<Ser<S>>> {
        self.memo(Key::WhitePath(mask), || {
            let mt = self.white_tree(mask)?;
            TruncSeries::one(self.order, mt.ring_like()).sub(&mt.shift(1)?)?.recip()
        })
    }

    /// `1 / (1 - z M(z, y_mask))`.
    pub fn tree_path(&self, mask: u32) -> Result<Arc<Ser<S>>> {
        self.memo(Key::TreePath(mask), || {
            let m = self.tree(mask)?;
            TruncSeries::one(self.order, m.ring_like()).sub(&m.shift(1)?)?.recip()
        })
    }

    /// `P(z; y, ỹ, ŷ)` with markers given as masks.
    pub fn path(&self, y: u32, ytilde: u32, yhat: u32) -> Result<Arc<Ser<S>>> {
        self.memo(Key::Path(y, ytilde, yhat), || build_p_from(self.order, &self.y(y)?, &self.y(yhat)?, &*self.white_tree(ytilde)?))
    }

    /// `P̂(z; y, ỹ, ŷ)` with markers given as masks.
    pub fn tc_path(&self, y: u32, ytilde: u32, yhat: u32) -> Result<Arc<Ser<S>>> {
        self.memo(Key::TcPath(y, ytilde, yhat), || {
            build_phat_from(self.order, &self.y(y)?, &self.y(yhat)?, &*self.tree(ytilde)?, &*self.white_tree(ytilde)?)
        })
    }

    /// Coefficient of the marker monomial `mask` in `z^zpow · Π factors`.
    pub fn term_at(&self, zpow: usize, factors: &[Arc<Ser<S>>], mask: u32) -> Result<TruncSeries<S>> {
        let (first, rest) = factors.split_first().ok_or_else(|| Error::InvalidArgument("empty product".into()))?;
        let mut acc = first.as_ref().clone();
        for f in rest {
            acc = acc.mul_with(f, self.mode)?;
        }
        Ok(acc.shift(zpow as isize)?.map(|c| c.coeff(mask).clone()))
    }

    /// `Y[z^zpow · Π factors]`.
    pub fn term(&self, zpow: usize, factors: &[Arc<Ser<S>>]) -> Result<TruncSeries<S>> {
        self.term_at(zpow, factors, (1u32 << self.k) - 1)
    }
}

fn half<S: Scalar>(s: TruncSeries<S>) -> TruncSeries<S> {
    s.scale(&S::ratio(1, 2))
}

fn sum_scaled<S: Scalar>(parts: Vec<Result<TruncSeries<S>>>, den: i64) -> Result<TruncSeries<S>> {
    let mut it = parts.into_iter();
    let mut acc = it.next().ok_or_else(|| Error::Internal("no skeleton cases".into()))??;
    for p in it {
        acc = acc.add(&p?)?;
    }
    Ok(acc.scale(&S::ratio(1, den)))
}

fn normal_cases<S: Scalar>(k: usize, order: usize, mode: Mode) -> Result<TruncSeries<S>> {
    let c = OperatorContext::<S>::new(k, order, mode)?;
    match k {
        1 => Ok(half(c.term(1, &[c.tree(0)?, c.white_path(1)?])?)),
        2 => {
            let cases = exec::map_range(mode, 2, |i| match i {
                0 => c.term(2, &[c.tree(0)?, c.white_path(1)?, c.white_path(3)?]),
                _ => c.term(3, &[c.white_tree(1)?, c.white_tree(2)?, c.path(2, 3, 0)?, c.path(1, 3, 0)?, c.white_path(3)?]).map(half),
            });
            sum_scaled(cases, 4)
        }
        3 => {
            let cases = exec::map_range(mode, 4, |i| match i {
                0 => c.term(3, &[c.tree(0)?, c.white_path(1)?, c.white_path(3)?, c.white_path(7)?]),
                1 => c
                    .term(4, &[c.white_tree(1)?, c.white_tree(2)?, c.path(1, 3, 0)?, c.path(2, 3, 0)?, c.white_path(7)?, c.white_path(3)?])
                    .map(half),
                2 => {
                    c.term(4, &[c.white_tree(6)?, c.white_tree(1)?, c.white_path(7)?, c.path(1, 5, 0)?, c.path(6, 7, 0)?, c.path(1, 7, 0)?])
                }
                _ => c
                    .term(
                        5,
                        &[
                            c.white_tree(3)?,
                            c.white_tree(5)?,
                            c.white_tree(6)?,
                            c.white_path(7)?,
                            c.path(3, 7, 0)?,
                            c.path(5, 7, 4)?,
                            c.path(6, 7, 4)?,
                            c.path(4, 7, 0)?,
                        ],
                    )
                    .map(half),
            });
            sum_scaled(cases, 8)
        }
        _ => Err(Error::UnsupportedK(k)),
    }
}

fn tree_child_cases<S: Scalar>(k: usize, order: usize, mode: Mode) -> Result<TruncSeries<S>> {
    let c = OperatorContext::<S>::new(k, order, mode)?;
    match k {
        1 => Ok(half(c.term(1, &[c.white_tree(1)?, c.tree_path(1)?])?)),
        2 => {
            let cases = exec::map_range(mode, 2, |i| match i {
                0 => c.term(2, &[c.white_tree(3)?, c.tc_path(2, 3, 0)?, c.tc_path(0, 3, 0)?]),
                _ => {
                    let w = c.white_tree(3)?;
                    let main = c.term(3, &[w.clone(), w, c.tree_path(3)?, c.tc_path(2, 3, 2)?, c.tc_path(1, 3, 1)?])?;
                    let m0 = c.tree(0)?;
                    let q0 = c.tree_path(0)?;
                    let corr = c.term_at(5, &[m0.clone(), m0, q0.clone(), q0.clone(), q0], 0)?;
                    Ok(half(main.sub(&corr)?))
                }
            });
            sum_scaled(cases, 4)
        }
        3 => {
            let one = OperatorContext::<S>::new(1, order, mode)?;
            let cases = exec::map_range(mode, 4, |i| match i {
                0 => c.term(3, &[c.white_tree(7)?, c.tc_path(4, 7, 0)?, c.tc_path(6, 7, 0)?, c.tree_path(7)?]),
                1 => {
                    let w = c.white_tree(7)?;
                    let main =
                        c.term(4, &[w.clone(), w, c.tree_path(7)?, c.tc_path(4, 7, 0)?, c.tc_path(5, 7, 5)?, c.tc_path(6, 7, 6)?])?;
                    let (w1, q1, p1) = (one.white_tree(1)?, one.tree_path(1)?, one.tc_path(1, 1, 0)?);
                    let outer = one.term(6, &[w1.clone(), w1.clone(), q1.clone(), q1.clone(), q1.clone(), p1.clone()])?;
                    let inner = one.term(6, &[w1.clone(), w1, q1, p1.clone(), p1.clone(), p1])?;
                    Ok(half(main.sub(&outer)?.sub(&outer)?.sub(&inner)?))
                }
                2 => {
                    let w = c.white_tree(7)?;
                    let main =
                        c.term(4, &[w.clone(), w, c.tree_path(7)?, c.tc_path(6, 7, 6)?, c.tc_path(1, 7, 1)?, c.tc_path(3, 7, 0)?])?;
                    let (w1, q1, p1) = (one.white_tree(1)?, one.tree_path(1)?, one.tc_path(1, 1, 0)?);
                    let d2 = one.term(6, &[w1.clone(), w1.clone(), q1.clone(), q1.clone(), p1.clone(), p1.clone()])?;
                    let d3 = one.term(6, &[w1.clone(), w1, q1.clone(), q1.clone(), q1, p1])?;
                    main.sub(&d2)?.sub(&d3)
                }
                _ => {
                    let w = c.white_tree(7)?;
                    let main = c.term(
                        5,
                        &[
                            w.clone(),
                            w.clone(),
                            w,
                            c.tree_path(7)?,
                            c.tc_path(3, 7, 3)?,
                            c.tc_path(5, 7, 5)?,
                            c.tc_path(6, 7, 6)?,
                            c.tc_path(4, 7, 4)?,
                        ],
                    )?;
                    let (w1, q1) = (one.white_tree(1)?, one.tree_path(1)?);
                    let (p0, p1) = (one.tc_path(1, 1, 0)?, one.tc_path(1, 1, 1)?);
                    let e3 =
                        one.term(7, &[w1.clone(), w1.clone(), w1.clone(), q1.clone(), q1.clone(), p1.clone(), p0.clone(), p0.clone()])?;
                    let e12 = one.term(7, &[w1.clone(), w1.clone(), w1, q1.clone(), q1.clone(), q1, p1, p0])?;
                    let e12 = e12.add(&e12)?;
                    Ok(half(main.sub(&e3)?).sub(&e12)?)
                }
            });
            sum_scaled(cases, 8)
        }
        _ => Err(Error::UnsupportedK(k)),
    }
}

/// Skeleton-case generating function for `class` with `k` reticulations,
/// computed over the scalar type `S`.
pub fn operator_in<S: Scalar>(class: NetworkClass, k: usize, order: usize, mode: Mode) -> Result<TruncSeries<S>> {
    match class {
        NetworkClass::Normal => normal_cases(k, order, mode),
        NetworkClass::TreeChild => tree_child_cases(k, order, mode),
    }
}

/// `N_k(z)` from the skeleton cases.
pub fn operator_n(k: usize, order: usize) -> Result<TruncSeries<BigRational>> {
    Ok(operator_in::<Dyadic>(NetworkClass::Normal, k, order, Mode::default())?.map(|c| c.to_rational()))
}

/// `T_k(z)` from the skeleton cases.
pub fn operator_t(k: usize, order: usize) -> Result<TruncSeries<BigRational>> {
    Ok(operator_in::<Dyadic>(NetworkClass::TreeChild, k, order, Mode::default())?.map(|c| c.to_rational()))
}
