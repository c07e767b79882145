#pragma once

#include "maxconv/aux_file.hpp"
#include "maxconv/cdf.hpp"
#include "maxconv/families.hpp"
#include "maxconv/grid_cdf.hpp"
#include "maxconv/parallel.hpp"
#include "maxconv/rate_lab.hpp"
#include "maxconv/reports.hpp"
#include "maxconv/scaling.hpp"
#include "maxconv/semigroup.hpp"
#include "maxconv/sup_distance.hpp"
#include "maxconv/util.hpp"
#include "maxconv/von_mises.hpp"
