#pragma once

#include "loadcast/arima.hpp"
#include "loadcast/catalog.hpp"
#include "loadcast/comparison.hpp"
#include "loadcast/dataset.hpp"
#include "loadcast/decomposition.hpp"
#include "loadcast/linalg.hpp"
#include "loadcast/metrics.hpp"
#include "loadcast/regression.hpp"
#include "loadcast/report.hpp"
#include "loadcast/series.hpp"
#include "loadcast/smoothing.hpp"

namespace loadcast {
inline constexpr const char* kVersion = "0.1.0";
}
