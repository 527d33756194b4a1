#pragma once

#include "arith.hpp"
#include "cyclotomic.hpp"
#include "dimension.hpp"
#include "qseries.hpp"
#include "quad_space.hpp"
#include "rademacher.hpp"
#include "sl2.hpp"
#include "sweep.hpp"
#include "umbral.hpp"
#include "vanishing.hpp"
#include "weil.hpp"
