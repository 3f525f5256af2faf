//! Finite-scale computations around totally distributive categories:
//! completely distributive lattices and their order-theoretic relatives,
//! presheaves with Kan extensions over finite categories, idempotent
//! profunctor comonads and idempotent arrow ideals.

pub mod category;
pub mod error;
pub mod format;
pub mod generate;
pub mod order;
pub mod guard;
pub mod ideals;
pub mod kan;
pub mod poset;
pub mod presheaf;
pub mod profunctor;
mod search;
pub mod unionfind;
pub mod wavy;

pub use category::{builtin, Builtin, FinCategory, FinFunctor, FinSet, RawCategory};
pub use error::{Error, Result};
pub use guard::SizeGuard;
pub use poset::{FinPoset, MonotoneMap, Order};
pub use presheaf::{Copresheaf, NatTrans, Presheaf};
pub use profunctor::Profunctor;
