#pragma once

#include "perspace/complex.hpp"
#include "perspace/critical.hpp"
#include "perspace/grade.hpp"
#include "perspace/homology.hpp"
#include "perspace/io.hpp"
#include "perspace/linalg.hpp"
#include "perspace/metric.hpp"
#include "perspace/perspace.hpp"
#include "perspace/random.hpp"
#include "perspace/rational.hpp"
#include "perspace/serialize.hpp"
