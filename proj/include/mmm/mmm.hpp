#pragma once

#include "mmm/approx.hpp"
#include "mmm/bnb.hpp"
#include "mmm/core.hpp"
#include "mmm/guarantees.hpp"
#include "mmm/instance.hpp"
#include "mmm/instances.hpp"
#include "mmm/lower_bound.hpp"
#include "mmm/lp.hpp"
#include "mmm/oracles.hpp"
#include "mmm/uncertainty.hpp"
