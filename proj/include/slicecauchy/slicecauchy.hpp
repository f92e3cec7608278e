// Umbrella header for the slice-function Cauchy library.
#pragma once

#include "algebra.hpp"
#include "cauchy.hpp"
#include "domain.hpp"
#include "element_io.hpp"
#include "gis.hpp"
#include "jump.hpp"
#include "polar.hpp"
#include "quadrature.hpp"
#include "report.hpp"
#include "runner.hpp"
#include "stem.hpp"
