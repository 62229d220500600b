#pragma once

// Umbrella header for the maximum smoothed likelihood biomarker-combination
// library.

#include "msl/bandwidth.hpp"
#include "msl/baselines.hpp"
#include "msl/benchmark.hpp"
#include "msl/bootstrap.hpp"
#include "msl/common.hpp"
#include "msl/dataset.hpp"
#include "msl/estimator.hpp"
#include "msl/isotonic.hpp"
#include "msl/kde.hpp"
#include "msl/kernels.hpp"
#include "msl/methods.hpp"
#include "msl/nelder_mead.hpp"
#include "msl/rng.hpp"
#include "msl/roc.hpp"
#include "msl/sampling.hpp"
#include "msl/serialize.hpp"
#include "msl/simulate.hpp"
#include "msl/step_function.hpp"
