#pragma once

#include "cxta/rational.hpp"
#include "cxta/number_theory.hpp"
#include "cxta/cyclotomic.hpp"
#include "cxta/root_sum.hpp"
#include "cxta/hermitian.hpp"
#include "cxta/triangle.hpp"
#include "cxta/arith.hpp"
#include "cxta/io.hpp"
#include "cxta/cache.hpp"
