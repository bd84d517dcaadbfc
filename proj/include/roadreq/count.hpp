// Copyright (c) 2026 roadreq contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include "roadreq/requirements.hpp"

namespace roadreq {

struct ModelCount {
  mpz_class value;  // exact; bounded by 2^n_labels
};

/// Exact number of total assignments satisfying every clause. DPLL-style
/// counting with connected-component decomposition and component caching;
/// the cache key is the canonicalized residual formula, so hits are sound by
/// construction.
ModelCount count_models(const RequirementSet& rs);

}  // namespace roadreq
