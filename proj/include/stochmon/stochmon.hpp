#pragma once

#include "stochmon/automaton.hpp"
#include "stochmon/automaton_io.hpp"
#include "stochmon/bigint.hpp"
#include "stochmon/boolean_matrix.hpp"
#include "stochmon/convergence.hpp"
#include "stochmon/errors.hpp"
#include "stochmon/factorial.hpp"
#include "stochmon/limits.hpp"
#include "stochmon/matrix.hpp"
#include "stochmon/monoid.hpp"
#include "stochmon/omega.hpp"
#include "stochmon/realization.hpp"
#include "stochmon/reduction.hpp"
#include "stochmon/schedule.hpp"
