use thiserror::Error;

use crate::brauer::BrauerError;
use crate::classfn::ClassFnError;
use crate::curve::CurveError;
use crate::cyclotomic::CycError;
use crate::deligne_lusztig::DlError;
use crate::fields::FieldError;
use crate::group::GroupError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Cyclotomic(#[from] CycError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    ClassFn(#[from] ClassFnError),
    #[error(transparent)]
    DeligneLusztig(#[from] DlError),
    #[error(transparent)]
    Brauer(#[from] BrauerError),
    #[error(transparent)]
    Curve(#[from] CurveError),
}
