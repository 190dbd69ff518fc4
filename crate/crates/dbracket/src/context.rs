use ncalg::{Algebra, AntiHom, BaseRing};

use crate::error::DbError;

use crate::certify::{certify, CertReport};
use crate::compat::{check_compat, CompatReport};
use crate::moment::{check_moment_map, MomentCheck, MomentMap};
use crate::table::BracketTable;

/// An algebra with its double bracket, and optionally an anti-involution and
/// a moment map.
#[derive(Debug, Clone, PartialEq)]
pub struct Context {
    pub db: BracketTable,
    pub phi: Option<AntiHom>,
    pub moment: Option<MomentMap>,
}

impl Context {
    pub fn new(db: BracketTable, phi: Option<AntiHom>, moment: Option<MomentMap>) -> Self {
        Context { db, phi, moment }
    }

    pub fn alg(&self) -> &Algebra {
        self.db.alg()
    }

    pub fn certify(&self) -> CertReport {
        certify(&self.db)
    }

    pub fn compat(&self) -> Option<CompatReport> {
        self.phi.as_ref().map(|phi| check_compat(&self.db, phi))
    }

    pub fn moment_check(&self) -> Option<MomentCheck> {
        self.moment.as_ref().map(|m| check_moment_map(&self.db, m))
    }
}

impl Context {
    /// Same data over a base ring with new vertex labels (types kept).
    pub fn relabeled<S: ToString>(&self, labels: &[S]) -> Result<Context, DbError> {
        let alg = self.alg();
        let labels = labels.iter().map(|l| l.to_string()).collect();
        let base = BaseRing::new(labels, alg.base().types().to_vec())?;
        let new = Algebra::new(base, alg.gens().to_vec())?;
        let entries = self.db.entries().into_iter().map(|(k, d)| (k, d.clone())).collect();
        let db = BracketTable::new(new.clone(), entries, self.db.claim())?;
        let phi = match &self.phi {
            None => None,
            Some(p) => Some(AntiHom::new(&new, p.images().to_vec(), p.kind())?),
        };
        let moment = match &self.moment {
            None => None,
            Some(m) => Some(MomentMap::new(&new, m.kind, m.components().to_vec())?),
        };
        Ok(Context { db, phi, moment })
    }
}
