#pragma once

// Umbrella header.

#include "lcflow/error.hpp"
#include "lcflow/grid.hpp"
#include "lcflow/field.hpp"
#include "lcflow/spectral.hpp"
#include "lcflow/state.hpp"
#include "lcflow/dynamics.hpp"
#include "lcflow/diagnostics.hpp"
#include "lcflow/scenarios.hpp"
#include "lcflow/config.hpp"
#include "lcflow/io.hpp"
#include "lcflow/runner.hpp"
#include "lcflow/verify.hpp"
