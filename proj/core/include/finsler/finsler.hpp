// Umbrella header.
#pragma once

#include "finsler/curvature.hpp"
#include "finsler/domain.hpp"
#include "finsler/dual.hpp"
#include "finsler/errors.hpp"
#include "finsler/expression.hpp"
#include "finsler/geodesic.hpp"
#include "finsler/harmonic.hpp"
#include "finsler/measure.hpp"
#include "finsler/metric.hpp"
#include "finsler/ode.hpp"
#include "finsler/quadrature.hpp"
#include "finsler/randers.hpp"
#include "finsler/smallvec.hpp"
#include "finsler/spray.hpp"
#include "finsler/tensor.hpp"
