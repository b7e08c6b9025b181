// SPDX-License-Identifier: Apache-2.0
//
// memsic: behavioral simulator of a memristor-crossbar massive MIMO SIC detector
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef MEMSIC_REPORT_HPP
#define MEMSIC_REPORT_HPP

#include "memsic/perf.hpp"
#include "memsic/slicer.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace memsic {

/// Timing breakdown as aligned text.
void print_timing(std::ostream& os, Index num_stages, const TimingParams& params);
void write_timing_csv(const std::string& path, Index num_stages, const TimingParams& params);

/// Full performance report: timing, both FLOP figures with their ratio,
/// energy breakdown with the informational comparison against the
/// published hardware estimate, speed and efficiency.
void print_perf_report(std::ostream& os, const PerfReport& report);
void write_perf_csv(const std::string& path, const PerfReport& report);

/// Comparison against the fixed reference processors (speed, energy,
/// efficiency), one extra column per simulated report, with ratio lines
/// against the DSP baseline.
std::string comparison_table(std::span<const PerfReport> reports);
void write_comparison_csv(const std::string& path, std::span<const PerfReport> reports);

/// Slicer truth table as aligned text / CSV.
void print_truth_table(std::ostream& os, const SlicerConfig& cfg);
void write_truth_table_csv(const std::string& path, const SlicerConfig& cfg);

} // namespace memsic

#endif // MEMSIC_REPORT_HPP
