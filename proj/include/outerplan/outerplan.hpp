#pragma once

// Umbrella header. io.hpp needs nlohmann/json and is included separately.
#include "outerplan/center.hpp"
#include "outerplan/embed.hpp"
#include "outerplan/gen.hpp"
#include "outerplan/oracle.hpp"
#include "outerplan/peels.hpp"
#include "outerplan/plane_graph.hpp"
#include "outerplan/types.hpp"
