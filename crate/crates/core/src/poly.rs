use std::collections::BTreeMap;

use serde::Serialize;

use crate::gf::{Elem, ElemRepr, FieldCtx};

/// A normalized sparse polynomial: nonzero coefficients, strictly
/// decreasing exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    terms: Vec<(u64, Elem)>,
}

impl SparsePoly {
    /// Merges like exponents by addition, then drops zero coefficients.
    pub fn normalized<I>(ctx: &FieldCtx, terms: I) -> Self
    where
        I: IntoIterator<Item = (u64, Elem)>,
    {
        let mut merged: BTreeMap<u64, Elem> = BTreeMap::new();
        for (e, c) in terms {
            let slot = merged.entry(e).or_insert_with(|| ctx.zero());
            *slot = ctx.add(slot, &c);
        }
        let terms = merged
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        SparsePoly { terms }
    }

    /// Builds from terms already in normal form (descending, nonzero).
    pub(crate) fn from_normal_terms(terms: Vec<(u64, Elem)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        SparsePoly { terms }
    }

    pub fn terms(&self) -> &[(u64, Elem)] {
        &self.terms
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u64> {
        self.terms.first().map(|(e, _)| *e)
    }

    /// `[[exponent, coefficient], ..]` with coefficients in serialized form.
    pub fn to_repr(&self, ctx: &FieldCtx) -> Vec<(u64, ElemRepr)> {
        self.terms.iter().map(|(e, c)| (*e, ctx.repr(c))).collect()
    }

    pub fn display(&self, ctx: &FieldCtx) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let one = ctx.one();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let coeff = if *c == one && *e != 0 {
                    String::new()
                } else if ctx.n() > 1 && c.coeffs().iter().filter(|&&d| d != 0).count() > 1 {
                    format!("({})", ctx.format_elem(c))
                } else {
                    ctx.format_elem(c)
                };
                match e {
                    0 => coeff,
                    1 => format!("{coeff}x"),
                    e => format!("{coeff}x^{e}"),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

#[derive(Serialize)]
struct Term(u64, ElemRepr);

/// Serializable view `[[exponent, coefficient], ..]`.
pub fn terms_json(ctx: &FieldCtx, poly: &SparsePoly) -> serde_json::Value {
    let terms: Vec<Term> = poly
        .to_repr(ctx)
        .into_iter()
        .map(|(e, c)| Term(e, c))
        .collect();
    serde_json::to_value(terms).expect("terms serialize")
}
