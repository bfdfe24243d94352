#pragma once

#include "lcl/choice.hpp"
#include "lcl/digraph.hpp"
#include "lcl/error.hpp"
#include "lcl/family.hpp"
#include "lcl/lcl_engine.hpp"
#include "lcl/lll.hpp"
#include "lcl/parallel.hpp"
#include "lcl/probability.hpp"
#include "lcl/random.hpp"
#include "lcl/samplers.hpp"
#include "lcl/solve_status.hpp"
#include "lcl/structures.hpp"
#include "lcl/thresholds.hpp"
