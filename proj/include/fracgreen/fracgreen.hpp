#pragma once

#include "fracgreen/field_io.hpp"
#include "fracgreen/fourier.hpp"
#include "fracgreen/gamma.hpp"
#include "fracgreen/green.hpp"
#include "fracgreen/hfunction.hpp"
#include "fracgreen/mittag_leffler.hpp"
#include "fracgreen/operators.hpp"
#include "fracgreen/oracle.hpp"
#include "fracgreen/parallel.hpp"
#include "fracgreen/quadrature.hpp"
#include "fracgreen/solver.hpp"
#include "fracgreen/types.hpp"
