#pragma once

#include <span>
#include <string>

#include "star/pipeline.hpp"

namespace star {

// Fixed color ramp over the g/tau ratio: bin 0 is uncolored (g = 0), bins
// 1..4 cover (0, .25], (.25, .5], (.5, .75], (.75, 1], bin 5 is above tau.
int heat_bin(double g, double tau);

// Terminal rendering: one line of tokens with 256-color backgrounds plus a
// per-sequence summary line.
std::string render_ansi(const TraceDoc& doc, double tau);

// Self-contained HTML document (inline CSS, no external assets).
std::string render_html(std::span<const TraceDoc> docs, double tau);

} // namespace star
