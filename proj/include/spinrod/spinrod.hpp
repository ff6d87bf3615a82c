#pragma once

// Umbrella header for the whole library.

#include "spinrod/assembly.hpp"
#include "spinrod/config.hpp"
#include "spinrod/csv.hpp"
#include "spinrod/linalg.hpp"
#include "spinrod/linear_solve.hpp"
#include "spinrod/model_eulerian.hpp"
#include "spinrod/model_lagrangian.hpp"
#include "spinrod/models.hpp"
#include "spinrod/newton.hpp"
#include "spinrod/params.hpp"
#include "spinrod/radau.hpp"
#include "spinrod/record.hpp"
#include "spinrod/rotation.hpp"
#include "spinrod/runner.hpp"
#include "spinrod/state.hpp"
#include "spinrod/verify.hpp"
