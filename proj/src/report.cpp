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

#include "memsic/report.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace memsic {

namespace {

std::string fmt(double value, const char* spec = "%.4g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, value);
    return buf;
}

std::string word_bits(const std::vector<int>& bits) {
    std::string s = "[";
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (i)
            s += ",";
        s += bits[i] ? "1" : "0";
    }
    return s + "]";
}

// comma-free form for CSV cells
std::string word_bits_compact(const std::vector<int>& bits) {
    std::string s;
    for (int b : bits)
        s += b ? "1" : "0";
    return s;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write file: " + path);
    return out;
}

} // namespace

void print_timing(std::ostream& os, Index num_stages, const TimingParams& params) {
    const double total = convergence_time(num_stages, params);
    os << "timing model: dac + K * (t2 + comparator + mux) + adc, K = " << num_stages << "\n";
    os << "  t2 (module settling)   " << fmt(params.t2 * 1e9, "%10.3f") << " ns\n";
    os << "  comparator delay       " << fmt(params.comparator_delay * 1e9, "%10.3f") << " ns\n";
    os << "  multiplexer delay      " << fmt(params.mux_delay * 1e9, "%10.3f") << " ns\n";
    os << "  per-stage total        " << fmt((params.t2 + params.slicer_delay()) * 1e9, "%10.3f")
       << " ns\n";
    os << "  dac settling           " << fmt(params.dac_settle * 1e9, "%10.3f") << " ns\n";
    os << "  adc delay              " << fmt(params.adc_delay * 1e9, "%10.3f") << " ns\n";
    os << "  total computing time   " << fmt(total * 1e9, "%10.3f") << " ns  ("
       << fmt(total * 1e6, "%.4g") << " us)\n";
}

void write_timing_csv(const std::string& path, Index num_stages, const TimingParams& params) {
    auto out = open_out(path);
    out << "quantity,seconds\n";
    out << "t2," << fmt(params.t2, "%.10g") << "\n";
    out << "comparator_delay," << fmt(params.comparator_delay, "%.10g") << "\n";
    out << "mux_delay," << fmt(params.mux_delay, "%.10g") << "\n";
    out << "dac_settle," << fmt(params.dac_settle, "%.10g") << "\n";
    out << "adc_delay," << fmt(params.adc_delay, "%.10g") << "\n";
    out << "total," << fmt(convergence_time(num_stages, params), "%.10g") << "\n";
}

void print_perf_report(std::ostream& os, const PerfReport& report) {
    os << "performance report: " << report.num_users << "x" << report.num_bs_antennas
       << " detector\n";
    os << "  total computing time   " << fmt(report.total_time * 1e6, "%10.4f") << " us\n";
    os << "  operation count        " << fmt(report.flops, "%10.4g") << " FLOP (headline)\n";
    os << "    detector convention  " << fmt(report.flops_convention, "%10.4g") << " FLOP\n";
    if (report.flops_reference) {
        os << "    benchmark reference  " << fmt(*report.flops_reference, "%10.4g") << " FLOP\n";
        os << "    convention/reference ratio "
           << fmt(report.flops_convention / *report.flops_reference, "%.3f") << "\n";
    }
    os << "  computing speed        " << fmt(report.speed_tops, "%10.4f") << " TOPS\n";
    os << "  energy                 " << fmt(report.energy_joules * 1e6, "%10.4f") << " uJ\n";
    os << "    memristor Joule      " << fmt(report.energy_breakdown.memristor * 1e6, "%10.4f")
       << " uJ\n";
    os << "    amplifiers     (x" << report.counts.oa << ") "
       << fmt(report.energy_breakdown.oa * 1e6, "%.4f") << " uJ\n";
    os << "    comparators    (x" << report.counts.comparator << ") "
       << fmt(report.energy_breakdown.comparator * 1e6, "%.4f") << " uJ\n";
    os << "    multiplexers   (x" << report.counts.mux << ") "
       << fmt(report.energy_breakdown.mux * 1e6, "%.4f") << " uJ\n";
    os << "    adcs           (x" << report.counts.adc << ") "
       << fmt(report.energy_breakdown.adc * 1e6, "%.4f") << " uJ\n";
    os << "    dacs           (x" << report.counts.dac << ") "
       << fmt(report.energy_breakdown.dac * 1e6, "%.4f") << " uJ\n";
    if (report.num_users == 32 && report.num_bs_antennas == 64) {
        os << "  vs hardware estimate   " << fmt(energy_reference_microjoules, "%.4g")
           << " uJ reference, ratio "
           << fmt(report.energy_joules * 1e6 / energy_reference_microjoules, "%.3f")
           << " (informational; component powers are configuration)\n";
    }
    os << "  energy efficiency      " << fmt(report.efficiency_tops_per_watt, "%10.4f")
       << " TOPS/W\n";
}

void write_perf_csv(const std::string& path, const PerfReport& report) {
    auto out = open_out(path);
    out << "quantity,value\n";
    out << "num_users," << report.num_users << "\n";
    out << "num_bs_antennas," << report.num_bs_antennas << "\n";
    out << "total_time_s," << fmt(report.total_time, "%.10g") << "\n";
    out << "flops_headline," << fmt(report.flops, "%.10g") << "\n";
    out << "flops_convention," << fmt(report.flops_convention, "%.10g") << "\n";
    if (report.flops_reference)
        out << "flops_reference," << fmt(*report.flops_reference, "%.10g") << "\n";
    out << "speed_tops," << fmt(report.speed_tops, "%.10g") << "\n";
    out << "energy_j," << fmt(report.energy_joules, "%.10g") << "\n";
    out << "energy_memristor_j," << fmt(report.energy_breakdown.memristor, "%.10g") << "\n";
    out << "energy_oa_j," << fmt(report.energy_breakdown.oa, "%.10g") << "\n";
    out << "energy_comparator_j," << fmt(report.energy_breakdown.comparator, "%.10g") << "\n";
    out << "energy_mux_j," << fmt(report.energy_breakdown.mux, "%.10g") << "\n";
    out << "energy_adc_j," << fmt(report.energy_breakdown.adc, "%.10g") << "\n";
    out << "energy_dac_j," << fmt(report.energy_breakdown.dac, "%.10g") << "\n";
    out << "efficiency_tops_per_watt," << fmt(report.efficiency_tops_per_watt, "%.10g") << "\n";
}

std::string comparison_table(std::span<const PerfReport> reports) {
    const ProcessorFigures baselines[] = {dsp_reference, fpga_reference, gpu_reference};

    std::ostringstream os;
    os << "comparison with digital processors (same detection workload)\n";
    char line[256];

    std::snprintf(line, sizeof(line), "%-34s %14s %18s %16s\n", "", "speed", "energy",
                  "efficiency");
    os << line;
    for (const auto& b : baselines) {
        std::snprintf(line, sizeof(line), "%-34s %10.4g TOPS %14.4g uJ %10.4g TOPS/W\n", b.name,
                      b.speed_tops, b.energy_joules * 1e6, b.efficiency_tops_per_watt);
        os << line;
    }
    for (const auto& r : reports) {
        std::snprintf(line, sizeof(line), "%-34s %10.4g TOPS %14.4g uJ %10.4g TOPS/W\n",
                      r.label.c_str(), r.speed_tops, r.energy_joules * 1e6,
                      r.efficiency_tops_per_watt);
        os << line;
    }
    for (const auto& r : reports) {
        std::snprintf(line, sizeof(line),
                      "%s vs %s: %.1fx faster, %.1fx more energy-efficient\n", r.label.c_str(),
                      dsp_reference.name, r.speed_tops / dsp_reference.speed_tops,
                      r.efficiency_tops_per_watt / dsp_reference.efficiency_tops_per_watt);
        os << line;
    }
    return os.str();
}

void write_comparison_csv(const std::string& path, std::span<const PerfReport> reports) {
    auto out = open_out(path);
    out << "processor,speed_tops,energy_j,efficiency_tops_per_watt\n";
    const ProcessorFigures baselines[] = {dsp_reference, fpga_reference, gpu_reference};
    for (const auto& b : baselines)
        out << b.name << "," << fmt(b.speed_tops, "%.10g") << "," << fmt(b.energy_joules, "%.10g")
            << "," << fmt(b.efficiency_tops_per_watt, "%.10g") << "\n";
    for (const auto& r : reports)
        out << r.label << "," << fmt(r.speed_tops, "%.10g") << ","
            << fmt(r.energy_joules, "%.10g") << "," << fmt(r.efficiency_tops_per_watt, "%.10g")
            << "\n";
}

void print_truth_table(std::ostream& os, const SlicerConfig& cfg) {
    const auto rows = truth_table(cfg);
    const bool with_q = cfg.structure == SlicerStructure::indirect_select;

    os << to_string(cfg.structure) << "-select slicer, " << cfg.levels_count() << " levels, "
       << cfg.mux_channel_count() << "-channel multiplexer\n";
    char line[256];
    std::snprintf(line, sizeof(line), "%-10s %-17s %-10s %-6s %s\n", "v_sin", "p",
                  with_q ? "q" : "", "level", "v_sout [V]");
    os << line;
    for (const auto& row : rows) {
        std::snprintf(line, sizeof(line), "%-10s %-17s %-10s x%-5d %.10g\n",
                      row.interval.c_str(), word_bits(row.p.bits).c_str(),
                      row.q ? word_bits(row.q->bits).c_str() : "", row.level_index + 1,
                      row.output);
        os << line;
    }
}

void write_truth_table_csv(const std::string& path, const SlicerConfig& cfg) {
    auto out = open_out(path);
    const bool with_q = cfg.structure == SlicerStructure::indirect_select;
    out << (with_q ? "interval,p,q,level,v_sout\n" : "interval,p,level,v_sout\n");
    for (const auto& row : truth_table(cfg)) {
        out << row.interval << "," << word_bits_compact(row.p.bits) << ",";
        if (with_q)
            out << word_bits_compact(row.q->bits) << ",";
        out << "x" << (row.level_index + 1) << "," << fmt(row.output, "%.10g") << "\n";
    }
}

} // namespace memsic
