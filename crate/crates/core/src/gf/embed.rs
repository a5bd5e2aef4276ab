use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

use super::factor::roots_in;
use super::field::{Elem, Field};
use super::poly::Poly;
use crate::error::{Error, Result};

static CACHE: LazyLock<Mutex<HashMap<(u32, u32), Arc<Vec<Elem>>>>> =
    LazyLock::new(Default::default);

/// A fixed ring embedding `F_{p^a} -> F_{p^b}` for `a | b`.
///
/// The generator of the source is sent to the root of the source modulus in
/// the target with the lexicographically smallest coefficient vector. The
/// images of the power basis are computed once per field pair and cached,
/// so every call for the same pair uses the same homomorphism.
#[derive(Clone)]
pub struct Embedding {
    source: Field,
    target: Field,
    images: Arc<Vec<Elem>>,
}

impl Embedding {
    pub fn new(source: &Field, target: &Field) -> Result<Embedding> {
        let unavailable = Error::EmbeddingUnavailable {
            p: source.characteristic(),
            from: source.degree(),
            to: target.degree(),
        };
        if source.characteristic() != target.characteristic()
            || target.degree() % source.degree() != 0
        {
            return Err(unavailable);
        }
        let key = (source.id(), target.id());
        if let Some(images) = CACHE.lock().unwrap().get(&key) {
            return Ok(Embedding {
                source: source.clone(),
                target: target.clone(),
                images: images.clone(),
            });
        }
        let images = if source.is_prime_field() {
            vec![target.one()]
        } else if source == target {
            let g = target.generator();
            (0..target.degree())
                .map(|i| target.pow(g, i as u64))
                .collect()
        } else {
            let prime = Field::galois(source.characteristic() as u64, 1)?;
            let ints: Vec<i64> = source.modulus().iter().map(|&c| c as i64).collect();
            let modulus = Poly::from_ints(&prime, &ints);
            let root = roots_in(&modulus, target)?
                .into_iter()
                .map(|(r, _)| r)
                .min_by_key(|&r| target.coeffs(r))
                .ok_or(unavailable)?;
            (0..source.degree())
                .map(|i| target.pow(root, i as u64))
                .collect()
        };
        let images = Arc::new(images);
        CACHE.lock().unwrap().insert(key, images.clone());
        Ok(Embedding {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn apply(&self, a: Elem) -> Elem {
        debug_assert!(self.source.contains(a));
        let t = &self.target;
        if self.source.is_prime_field() {
            return t.from_int(a.raw() as i64);
        }
        self.source
            .coeffs(a)
            .iter()
            .zip(self.images.iter())
            .filter(|(&c, _)| c != 0)
            .fold(t.zero(), |acc, (&c, &img)| {
                t.add(acc, t.mul(t.from_int(c as i64), img))
            })
    }
}

/// Embeds `a` (from whichever registered field owns it) into `target`.
pub fn embed(a: Elem, target: &Field) -> Result<Elem> {
    let source = Field::from_id(a.field_id()).ok_or(Error::FieldMismatch)?;
    Ok(Embedding::new(&source, target)?.apply(a))
}
