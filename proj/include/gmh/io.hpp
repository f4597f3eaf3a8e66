#pragma once

#include <string>

#include "gmh/trace.hpp"
#include "gmh/types.hpp"

namespace gmh {

/// Format a double with 17 significant digits (lossless round trip).
std::string format_full(double v);

/// Chain CSV: header "iteration,x1,..,xd,accepted", one row per state.
void write_trace_csv(const std::string& path, const ChainTrace& trace);
ChainTrace read_trace_csv(const std::string& path);

}  // namespace gmh
