#pragma once

#include <string>
#include <vector>

#include "qisim/scheme.hpp"
#include "qisim/serialize.hpp"

namespace qisim::curves {

struct SweepAxis {
  std::string param;           // one of "l", "G", "T", "r"
  std::vector<double> values;  // evaluation order, as given
};

// Parses "l=0:0.9:0.01" (inclusive range) or "G=1,2,5,10" (explicit list).
SweepAxis parse_axis(const std::string& text);

// Evaluates every scheme at every grid point (row-major over the axes; one
// or two axes, at most 1e6 points). The swept parameter overrides the base
// config per point; sweeping a knob a scheme pins is an error.
ser::CsvTable run_sweep(const scheme::SchemeConfig& base,
                        const std::vector<scheme::Scheme>& schemes,
                        const std::vector<SweepAxis>& axes);

const std::vector<std::string>& figure_ids();

// Theory curves with the published operating parameters baked in:
// fig2a..fig2f at N=4e14 and 10 dB squeezing, fig4a..fig4d at N=1.2e15 and
// r=0.48 with the photon-number-matched gain for the amplified schemes.
ser::CsvTable figure_series(const std::string& id);

}  // namespace qisim::curves
