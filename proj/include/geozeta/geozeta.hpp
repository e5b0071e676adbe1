#pragma once

#include "geozeta/analytic.hpp"
#include "geozeta/bigint.hpp"
#include "geozeta/forms.hpp"
#include "geozeta/geodesics.hpp"
#include "geozeta/heckezeta.hpp"
#include "geozeta/matrix.hpp"
#include "geozeta/modular.hpp"
#include "geozeta/parallel.hpp"
#include "geozeta/periods.hpp"
#include "geozeta/quad_exact.hpp"
#include "geozeta/quadrature.hpp"
#include "geozeta/special.hpp"
