#pragma once

// Umbrella header for the citenorm library: cross-field citation impact
// comparison built on the near-constant pairwise ratios of per-field
// citation totals. The CLI front end lives in citenorm/cli.hpp and is not
// pulled in here.

#include "citenorm/baseline.hpp"
#include "citenorm/compare.hpp"
#include "citenorm/csv.hpp"
#include "citenorm/datasets.hpp"
#include "citenorm/errors.hpp"
#include "citenorm/ratios.hpp"
#include "citenorm/table.hpp"
#include "citenorm/text.hpp"
