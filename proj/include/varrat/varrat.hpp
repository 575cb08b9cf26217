#pragma once

#include "varrat/core.hpp"
#include "varrat/nnls.hpp"
#include "varrat/cone.hpp"
#include "varrat/ordering.hpp"
#include "varrat/quasimetric.hpp"
#include "varrat/goal_system.hpp"
#include "varrat/worthwhile.hpp"
#include "varrat/hypotheses.hpp"
#include "varrat/solver.hpp"
#include "varrat/certifier.hpp"
#include "varrat/generator.hpp"
#include "varrat/scenario.hpp"
