#pragma once

// Umbrella header for the censored two-sample testing toolkit.

#include "survdiff/classical.hpp"
#include "survdiff/errors.hpp"
#include "survdiff/io.hpp"
#include "survdiff/kernels.hpp"
#include "survdiff/km.hpp"
#include "survdiff/methods.hpp"
#include "survdiff/numeric.hpp"
#include "survdiff/permutation.hpp"
#include "survdiff/rng.hpp"
#include "survdiff/sample.hpp"
#include "survdiff/simulate.hpp"
#include "survdiff/statistics.hpp"
#include "survdiff/thread_pool.hpp"
