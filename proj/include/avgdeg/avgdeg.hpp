#pragma once

#include "avgdeg/errors.hpp"
#include "avgdeg/rational.hpp"
#include "avgdeg/field_algebra.hpp"
#include "avgdeg/quadrature.hpp"
#include "avgdeg/averaging.hpp"
#include "avgdeg/flow_sim.hpp"
#include "avgdeg/monomial_classifier.hpp"
#include "avgdeg/presets.hpp"
