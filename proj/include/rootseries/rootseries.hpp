#pragma once

#include "rootseries/polynomial_spec.hpp"
#include "rootseries/parse.hpp"
#include "rootseries/format.hpp"
#include "rootseries/series.hpp"
#include "rootseries/convergence.hpp"
#include "rootseries/oracle.hpp"
#include "rootseries/report.hpp"
