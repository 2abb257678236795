#pragma once

#include "excess_kit/cover.hpp"
#include "excess_kit/error.hpp"
#include "excess_kit/gf2.hpp"
#include "excess_kit/manifold.hpp"
#include "excess_kit/obstruction.hpp"
#include "excess_kit/report_io.hpp"
#include "excess_kit/surface.hpp"
#include "excess_kit/text_format.hpp"
#include "excess_kit/zero_sum_search.hpp"
