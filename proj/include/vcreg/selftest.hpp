#pragma once

#include "vcreg/report.hpp"

namespace vcreg {

// Runs the worked examples against their brute-force oracles, one check each.
void run_selftest(RunReport& report);

}  // namespace vcreg
