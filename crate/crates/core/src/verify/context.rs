use std::cell::{OnceCell, RefCell};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::rc::Rc;
use std::time::Instant;

use serde::Serialize;

use crate::classchar::{
    conj_classes, load_or_compute, twisted_classes, CharacterTable, ConjClasses, GroupSel, TableKey, TwistedClasses,
    DEFAULT_TABLE_CAP,
};
use crate::error::Result;
use crate::gf::FieldElem;
use crate::matgrp::{Family, GaloisDatum, Mat, Over, Selector};
use crate::shintani::{base_change_match, norm_map, BaseChangeResult, NormTable};
use crate::whittaker::{generic_irreps, psi_build, whittaker_model_in, InducedSpace, NondegenChar, WhittakerModel, DEFAULT_MODEL_CAP};

/// Everything that determines a verification run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Config {
    pub family: Family,
    pub n: usize,
    pub q: u32,
    /// `E`-code of the parameter of `ψ` over `E`; `None` picks the least
    /// nonzero trace-zero element.
    pub beta: Option<u8>,
    pub seed: u64,
    pub tol: f64,
    /// Threshold below which a Bessel value counts as zero.
    pub zero_tol: f64,
    pub table_cap: usize,
    pub model_cap: usize,
    #[serde(skip)]
    pub cache_dir: Option<PathBuf>,
}

impl Config {
    pub fn new(family: Family, n: usize, q: u32) -> Self {
        Config {
            family,
            n,
            q,
            beta: None,
            seed: 1,
            tol: 1e-6,
            zero_tol: 1e-8,
            table_cap: DEFAULT_TABLE_CAP,
            model_cap: DEFAULT_MODEL_CAP,
            cache_dir: None,
        }
    }

    pub fn label(&self) -> String {
        format!("({},{},{})", self.family, self.n, self.q)
    }
}

type Lazy<T> = OnceCell<Rc<T>>;

fn lazy<T>(cell: &Lazy<T>, what: &str, init: impl FnOnce() -> Result<T>) -> Result<Rc<T>> {
    if let Some(v) = cell.get() {
        return Ok(v.clone());
    }
    let start = Instant::now();
    let v = Rc::new(init()?);
    log::debug!("{what} computed in {:.2?}", start.elapsed());
    Ok(cell.get_or_init(|| v).clone())
}

/// A group together with its classes and character table.
pub struct GroupData {
    pub classes: ConjClasses,
    pub table: CharacterTable,
}

/// Lazily computed objects for one configuration, shared by all checks.
pub struct Context {
    pub config: Config,
    pub d: GaloisDatum,
    ge: Lazy<Vec<Mat>>,
    gf: Lazy<Vec<Mat>>,
    x_sigma: Lazy<Vec<Mat>>,
    ge_data: Lazy<GroupData>,
    gf_data: Lazy<GroupData>,
    gop_data: Lazy<GroupData>,
    tclasses: Lazy<TwistedClasses>,
    psi_e: Lazy<NondegenChar>,
    psi_f: Lazy<NondegenChar>,
    units_e: Lazy<Vec<Mat>>,
    units_f: Lazy<Vec<Mat>>,
    generic_e: Lazy<Vec<usize>>,
    generic_f: Lazy<Vec<usize>>,
    invariant_e: Lazy<Vec<usize>>,
    induced: Lazy<InducedSpace>,
    models: RefCell<BTreeMap<usize, Rc<WhittakerModel>>>,
    norm: Lazy<NormTable>,
    base_change: Lazy<BaseChangeResult>,
    cache_keys: RefCell<Vec<String>>,
}

impl Context {
    pub fn new(config: Config) -> Result<Self> {
        let d = GaloisDatum::build(config.family, config.n, config.q)?;
        Ok(Context {
            config,
            d,
            ge: OnceCell::new(),
            gf: OnceCell::new(),
            x_sigma: OnceCell::new(),
            ge_data: OnceCell::new(),
            gf_data: OnceCell::new(),
            gop_data: OnceCell::new(),
            tclasses: OnceCell::new(),
            psi_e: OnceCell::new(),
            psi_f: OnceCell::new(),
            units_e: OnceCell::new(),
            units_f: OnceCell::new(),
            generic_e: OnceCell::new(),
            generic_f: OnceCell::new(),
            invariant_e: OnceCell::new(),
            induced: OnceCell::new(),
            models: RefCell::new(BTreeMap::new()),
            norm: OnceCell::new(),
            base_change: OnceCell::new(),
            cache_keys: RefCell::new(Vec::new()),
        })
    }

    pub fn beta(&self) -> FieldElem {
        self.config.beta.map(FieldElem).unwrap_or_else(|| self.d.tower().default_beta())
    }

    /// Cache file names of every table used so far, in order of first use.
    pub fn cache_keys(&self) -> Vec<String> {
        self.cache_keys.borrow().clone()
    }

    pub fn ge(&self) -> Result<Rc<Vec<Mat>>> {
        lazy(&self.ge, "ge", || self.d.enumerate(Selector::GE))
    }

    pub fn gf(&self) -> Result<Rc<Vec<Mat>>> {
        lazy(&self.gf, "gf", || self.d.enumerate(Selector::GF))
    }

    pub fn x_sigma(&self) -> Result<Rc<Vec<Mat>>> {
        lazy(&self.x_sigma, "x_sigma", || self.d.enumerate(Selector::Xsigma))
    }

    fn group_data(&self, which: GroupSel, elements: Vec<Mat>) -> Result<GroupData> {
        if elements.len() > self.config.table_cap {
            return Err(crate::Error::CapExceeded {
                what: format!("{} of {}", which.name(), self.config.label()),
                size: elements.len() as u64,
                cap: self.config.table_cap as u64,
            });
        }
        let classes = conj_classes(self.d.ops(), elements)?;
        let key = TableKey {
            family: self.config.family,
            n: self.config.n,
            q: self.config.q as usize,
            group: which,
            seed: self.config.seed,
        };
        let table = load_or_compute(&self.d, &key, &classes, self.config.table_cap, self.config.cache_dir.as_deref())?;
        self.cache_keys.borrow_mut().push(key.file_name());
        Ok(GroupData { classes, table })
    }

    pub fn ge_data(&self) -> Result<Rc<GroupData>> {
        lazy(&self.ge_data, "ge_data", || {
            let order = self.d.ge_order();
            if order > self.config.table_cap as u64 {
                return Err(crate::Error::CapExceeded {
                    what: format!("G(E) of {}", self.config.label()),
                    size: order,
                    cap: self.config.table_cap as u64,
                });
            }
            self.group_data(GroupSel::Ge, self.ge()?.to_vec())
        })
    }

    pub fn gf_data(&self) -> Result<Rc<GroupData>> {
        lazy(&self.gf_data, "gf_data", || self.group_data(GroupSel::Gf, self.gf()?.to_vec()))
    }

    pub fn gop_data(&self) -> Result<Rc<GroupData>> {
        lazy(&self.gop_data, "gop_data", || self.group_data(GroupSel::Gop, self.d.enumerate(Selector::GopF)?))
    }

    pub fn tclasses(&self) -> Result<Rc<TwistedClasses>> {
        lazy(&self.tclasses, "tclasses", || twisted_classes(&self.d, self.ge()?.to_vec()))
    }

    pub fn psi_e(&self) -> Result<Rc<NondegenChar>> {
        lazy(&self.psi_e, "psi_e", || psi_build(&self.d, self.beta(), Over::E))
    }

    /// `ψ` over `F` with parameter 1.
    pub fn psi_f(&self) -> Result<Rc<NondegenChar>> {
        lazy(&self.psi_f, "psi_f", || psi_build(&self.d, FieldElem::ONE, Over::F))
    }

    pub fn units_e(&self) -> Result<Rc<Vec<Mat>>> {
        lazy(&self.units_e, "units_e", || self.d.enumerate(Selector::UE))
    }

    pub fn units_f(&self) -> Result<Rc<Vec<Mat>>> {
        lazy(&self.units_f, "units_f", || self.d.enumerate(Selector::UF))
    }

    /// Generic irreducibles of `G(E)` with respect to `ψ` over `E`.
    pub fn generic_e(&self) -> Result<Rc<Vec<usize>>> {
        lazy(&self.generic_e, "generic_e", || {
            let g = self.ge_data()?;
            let list = generic_irreps(&self.d, &g.classes, &g.table, &*self.psi_e()?, &self.units_e()?, self.config.tol)?;
            Ok(list.into_iter().filter(|&(_, m)| m == 1).map(|(i, _)| i).collect())
        })
    }

    /// Generic irreducibles of `G(F)` with respect to `ψ` over `F`.
    pub fn generic_f(&self) -> Result<Rc<Vec<usize>>> {
        lazy(&self.generic_f, "generic_f", || {
            let g = self.gf_data()?;
            let list = generic_irreps(&self.d, &g.classes, &g.table, &*self.psi_f()?, &self.units_f()?, self.config.tol)?;
            Ok(list.into_iter().filter(|&(_, m)| m == 1).map(|(i, _)| i).collect())
        })
    }

    /// σ-invariant irreducibles of `G(E)`.
    pub fn invariant_e(&self) -> Result<Rc<Vec<usize>>> {
        lazy(&self.invariant_e, "invariant_e", || {
            let g = self.ge_data()?;
            Ok(crate::classchar::sigma_invariant_irreps(&self.d, &g.classes, &g.table, self.config.tol))
        })
    }

    /// `Ind ψ` over `E` with the data shared by all Whittaker models.
    pub fn induced(&self) -> Result<Rc<InducedSpace>> {
        lazy(&self.induced, "induced", || {
            InducedSpace::new(&self.d, &self.ge_data()?.classes, &*self.psi_e()?, self.config.model_cap)
        })
    }

    pub fn model(&self, pi: usize) -> Result<Rc<WhittakerModel>> {
        if let Some(m) = self.models.borrow().get(&pi) {
            return Ok(m.clone());
        }
        let g = self.ge_data()?;
        let start = Instant::now();
        let space = self.induced()?;
        let m = Rc::new(whittaker_model_in(&space, &self.d, &g.classes, &g.table, pi, self.config.tol)?);
        log::debug!("model of {pi} (degree {}) built in {:.2?}", m.degree, start.elapsed());
        self.models.borrow_mut().insert(pi, m.clone());
        Ok(m)
    }

    pub fn norm(&self) -> Result<Rc<NormTable>> {
        lazy(&self.norm, "norm", || norm_map(&self.d, &*self.tclasses()?, &self.gop_data()?.classes))
    }

    /// Base-change matching over all σ-invariant generic irreducibles.
    pub fn base_change(&self) -> Result<Rc<BaseChangeResult>> {
        lazy(&self.base_change, "base_change", || {
            let invariant = self.invariant_e()?;
            let models = self
                .generic_e()?
                .iter()
                .filter(|pi| invariant.contains(pi))
                .map(|&pi| self.model(pi).map(|m| (*m).clone()))
                .collect::<Result<Vec<_>>>()?;
            let op = self.gop_data()?;
            base_change_match(&self.d, &models, &*self.tclasses()?, &op.classes, &op.table, &*self.norm()?, self.config.tol)
        })
    }
}
