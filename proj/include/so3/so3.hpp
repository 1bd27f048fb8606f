#pragma once

#include "so3/constants.hpp"
#include "so3/energy.hpp"
#include "so3/kernel.hpp"
#include "so3/parallel.hpp"
#include "so3/point_set.hpp"
#include "so3/quadrature.hpp"
#include "so3/random.hpp"
#include "so3/report.hpp"
#include "so3/rotation.hpp"
#include "so3/sampling.hpp"
#include "so3/special.hpp"
#include "so3/stats.hpp"
#include "so3/verify.hpp"
