#pragma once

#include "ribbon/presentation.hpp"
#include "ribbon/tracing.hpp"
#include "ribbon/duality.hpp"
#include "ribbon/medial.hpp"
#include "ribbon/report.hpp"
#include "ribbon/verify.hpp"
