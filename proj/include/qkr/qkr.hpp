#pragma once

#include "qkr/analysis.hpp"
#include "qkr/dense_oracle.hpp"
#include "qkr/ensemble.hpp"
#include "qkr/errors.hpp"
#include "qkr/physical.hpp"
#include "qkr/propagator.hpp"
#include "qkr/pulse_train.hpp"
#include "qkr/state.hpp"
#include "qkr/version.hpp"
