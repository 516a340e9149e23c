#pragma once

#include "errors.hpp"
#include "kernels.hpp"
#include "geometry.hpp"
#include "state.hpp"
#include "dynamics.hpp"
#include "diagnostics.hpp"
#include "integrate.hpp"
#include "random.hpp"
#include "initial_data.hpp"
#include "config.hpp"
#include "csv.hpp"
#include "rate_fit.hpp"
#include "lyapunov_search.hpp"
#include "scenarios.hpp"
#include "acceptance.hpp"
