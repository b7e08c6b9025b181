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

#include "memsic/harness.hpp"

#include "memsic/detector.hpp"
#include "memsic/errors.hpp"
#include "memsic/sic.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

namespace memsic {

namespace {

std::string format_double(double value, const char* fmt = "%.10g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, value);
    return buf;
}

// shortest representation that parses back to the same double
std::string format_exact(double value) {
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, result.ptr);
}

// Bit errors of one trial for one precision setting. The transmitted bits
// and the received vector are fixed before this is called, so every
// precision sees identical randomness.
long long trial_bit_errors(const ExperimentConfig& cfg, const PrecisionSetting& precision,
                           const Constellation& constellation, const ChannelRealization& chan,
                           const ReceivedSignal& rx, double noise_variance,
                           const std::vector<std::uint8_t>& sent_bits) {
    ComplexVector decided;
    if (precision.kind == PrecisionSetting::Kind::digital) {
        decided = sic_detect(chan.F, rx.y, noise_variance, constellation).symbols;
    } else {
        const DetectorInstance det =
            build_detector(chan, noise_variance, constellation, cfg.range, precision.bits,
                           cfg.structure, cfg.reference_voltage, cfg.voltage_ceiling);
        decided = detect(det, rx.y).symbols;
    }
    const std::vector<std::uint8_t> received_bits = demap_bits(decided, constellation);
    long long errors = 0;
    for (std::size_t b = 0; b < sent_bits.size(); ++b)
        errors += sent_bits[b] != received_bits[b];
    return errors;
}

} // namespace

std::vector<BerRecord> ber_sweep(const ExperimentConfig& cfg, std::ostream& log) {
    cfg.validate();

    const Constellation constellation =
        build_constellation(cfg.mimo.modulation_order, cfg.reference_voltage);
    const int bits_per_trial =
        static_cast<int>(cfg.mimo.num_users) * constellation.bits_per_symbol();
    const std::size_t num_precisions = cfg.precisions.size();

    std::vector<BerRecord> records;
    records.reserve(cfg.snr_db.size() * num_precisions);

    for (std::size_t si = 0; si < cfg.snr_db.size(); ++si) {
        const double snr_linear = std::pow(10.0, cfg.snr_db[si] / 10.0);
        const double noise_variance = static_cast<double>(cfg.mimo.num_users) / snr_linear;

        std::vector<long long> errors(num_precisions, 0);
        long long trials_done = 0;
        const auto t_start = std::chrono::steady_clock::now();

        // Trials run in fixed blocks; the early-stop rule is evaluated only
        // at block boundaries so any thread count yields the same totals.
        const long long block = cfg.target_errors > 0 ? std::min<long long>(cfg.trials, 256)
                                                      : cfg.trials;
        while (trials_done < cfg.trials) {
            const long long begin = trials_done;
            const long long end = std::min<long long>(cfg.trials, begin + block);

            const int workers = static_cast<int>(
                std::min<long long>(cfg.threads, end - begin));
            std::vector<std::vector<long long>> partial(
                static_cast<std::size_t>(workers),
                std::vector<long long>(num_precisions, 0));

            // trial streams keyed by the SNR value itself, so a point's
            // sample does not depend on its position in the grid
            const std::uint64_t point_key =
                std::bit_cast<std::uint64_t>(cfg.snr_db[si]);
            auto run_range = [&](long long lo, long long hi, std::vector<long long>& out) {
                for (long long t = lo; t < hi; ++t) {
                    Rng rng(mix_seed(cfg.seed, point_key, static_cast<std::uint64_t>(t)));
                    const ChannelRealization chan = generate_channel(cfg.mimo, rng);

                    std::vector<std::uint8_t> sent_bits(static_cast<std::size_t>(bits_per_trial));
                    for (auto& b : sent_bits)
                        b = rng.coin() ? 1 : 0;
                    const ComplexVector symbols = modulate_bits(sent_bits, constellation);
                    const ReceivedSignal rx = transmit(chan, symbols, noise_variance, rng);

                    for (std::size_t p = 0; p < num_precisions; ++p)
                        out[p] += trial_bit_errors(cfg, cfg.precisions[p], constellation, chan,
                                                   rx, noise_variance, sent_bits);
                }
            };

            if (workers <= 1) {
                run_range(begin, end, partial[0]);
            } else {
                std::vector<std::thread> pool;
                const long long chunk = (end - begin + workers - 1) / workers;
                for (int w = 0; w < workers; ++w) {
                    const long long lo = begin + w * chunk;
                    const long long hi = std::min<long long>(end, lo + chunk);
                    if (lo >= hi)
                        break;
                    pool.emplace_back(run_range, lo, hi,
                                      std::ref(partial[static_cast<std::size_t>(w)]));
                }
                for (auto& th : pool)
                    th.join();
            }

            for (const auto& part : partial)
                for (std::size_t p = 0; p < num_precisions; ++p)
                    errors[p] += part[p];
            trials_done = end;

            if (cfg.target_errors > 0 &&
                *std::min_element(errors.begin(), errors.end()) >= cfg.target_errors)
                break;
        }

        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();

        for (std::size_t p = 0; p < num_precisions; ++p) {
            BerRecord rec;
            rec.snr_db = cfg.snr_db[si];
            rec.precision = cfg.precisions[p].label();
            rec.bits_sent = trials_done * bits_per_trial;
            rec.bit_errors = errors[p];
            rec.ber = static_cast<double>(rec.bit_errors) / static_cast<double>(rec.bits_sent);
            rec.wall_time = elapsed;
            records.push_back(rec);
            log << "snr " << format_double(rec.snr_db, "%.4g") << " dB  precision "
                << rec.precision << "  ber " << format_double(rec.ber, "%.4e") << "  ("
                << rec.bit_errors << "/" << rec.bits_sent << " bits, "
                << format_double(elapsed, "%.2f") << " s)\n";
        }
    }

    if (!cfg.out_csv.empty()) {
        write_ber_csv(cfg.out_csv, records);
        log << "wrote " << cfg.out_csv << "\n";
    }
    if (!cfg.plot_stem.empty()) {
        emit_plot_data(records, cfg.plot_stem);
        log << "wrote " << cfg.plot_stem << ".csv and " << cfg.plot_stem << ".svg\n";
    }
    return records;
}

void write_ber_csv(const std::string& path, const std::vector<BerRecord>& records) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write CSV file: " + path);
    out << "snr_db,precision,bits_sent,bit_errors,ber\n";
    for (const BerRecord& rec : records)
        out << format_exact(rec.snr_db) << "," << rec.precision << "," << rec.bits_sent << ","
            << rec.bit_errors << "," << format_exact(rec.ber) << "\n";
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

std::vector<BerRecord> read_ber_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read CSV file: " + path);
    std::string line;
    if (!std::getline(in, line) || line != "snr_db,precision,bits_sent,bit_errors,ber")
        throw std::runtime_error(path + ": unexpected CSV header");

    std::vector<BerRecord> records;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream row(line);
        std::string field;
        BerRecord rec;
        std::getline(row, field, ',');
        rec.snr_db = std::stod(field);
        std::getline(row, rec.precision, ',');
        std::getline(row, field, ',');
        rec.bits_sent = std::stoll(field);
        std::getline(row, field, ',');
        rec.bit_errors = std::stoll(field);
        std::getline(row, field, ',');
        rec.ber = std::stod(field);
        records.push_back(rec);
    }
    return records;
}

namespace {

// Minimal SVG line plot of BER over SNR, log-scale vertical axis. Zero-BER
// points have no logarithm and leave a gap in their curve.
void write_ber_svg(const std::string& path, const std::vector<BerRecord>& records) {
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    const int width = 640, height = 480, margin = 56;

    std::vector<std::string> precisions;
    double snr_min = 1e300, snr_max = -1e300, ber_min = 1.0, ber_max = 0.0;
    for (const BerRecord& rec : records) {
        if (std::find(precisions.begin(), precisions.end(), rec.precision) == precisions.end())
            precisions.push_back(rec.precision);
        snr_min = std::min(snr_min, rec.snr_db);
        snr_max = std::max(snr_max, rec.snr_db);
        if (rec.ber > 0.0) {
            ber_min = std::min(ber_min, rec.ber);
            ber_max = std::max(ber_max, rec.ber);
        }
    }
    if (ber_max <= 0.0) { // nothing measurable; keep a decade of axis
        ber_min = 1e-6;
        ber_max = 1e-1;
    }
    const double log_lo = std::floor(std::log10(ber_min));
    const double log_hi = std::ceil(std::log10(std::max(ber_max, ber_min * 10)));
    const double snr_span = snr_max > snr_min ? snr_max - snr_min : 1.0;

    auto x_of = [&](double snr) {
        return margin + (snr - snr_min) / snr_span * (width - 2 * margin);
    };
    auto y_of = [&](double ber) {
        const double t = (std::log10(ber) - log_lo) / (log_hi - log_lo);
        return height - margin - t * (height - 2 * margin);
    };

    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write SVG file: " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // axes and decade grid
    out << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\""
        << width - margin << "\" y2=\"" << height - margin
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin
        << "\" y2=\"" << height - margin << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    for (double d = log_lo; d <= log_hi + 0.5; d += 1.0) {
        const double y = y_of(std::pow(10.0, d));
        out << "<line x1=\"" << margin << "\" y1=\"" << y << "\" x2=\"" << width - margin
            << "\" y2=\"" << y << "\" stroke=\"#dddddd\" stroke-width=\"0.5\"/>\n";
        out << "<text x=\"6\" y=\"" << y + 4 << "\" font-size=\"11\">1e" << static_cast<int>(d)
            << "</text>\n";
    }
    out << "<text x=\"" << width / 2 - 20 << "\" y=\"" << height - 12
        << "\" font-size=\"12\">SNR [dB]</text>\n";
    out << "<text x=\"6\" y=\"16\" font-size=\"12\">BER</text>\n";

    for (std::size_t p = 0; p < precisions.size(); ++p) {
        const char* color = colors[p % (sizeof(colors) / sizeof(colors[0]))];
        std::string points;
        for (const BerRecord& rec : records) {
            if (rec.precision != precisions[p])
                continue;
            if (rec.ber <= 0.0) {
                if (!points.empty()) {
                    out << "<polyline fill=\"none\" stroke=\"" << color
                        << "\" stroke-width=\"1.5\" points=\"" << points << "\"/>\n";
                    points.clear();
                }
                continue;
            }
            points += format_double(x_of(rec.snr_db), "%.1f");
            points += ",";
            points += format_double(y_of(rec.ber), "%.1f");
            points += " ";
        }
        if (!points.empty())
            out << "<polyline fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"1.5\" points=\"" << points << "\"/>\n";
        out << "<text x=\"" << width - margin + 6 << "\" y=\"" << margin + 16 * p + 4
            << "\" font-size=\"11\" fill=\"" << color << "\">" << precisions[p] << "</text>\n";
    }
    out << "</svg>\n";
}

} // namespace

void emit_plot_data(const std::vector<BerRecord>& records, const std::string& stem) {
    if (records.empty())
        throw std::invalid_argument("emit_plot_data: no records");
    {
        const std::string path = stem + ".csv";
        std::ofstream out(path);
        if (!out)
            throw std::runtime_error("cannot write CSV file: " + path);
        out << "snr_db,precision,ber\n";
        for (const BerRecord& rec : records)
            out << format_exact(rec.snr_db) << "," << rec.precision << ","
                << format_exact(rec.ber) << "\n";
        if (!out)
            throw std::runtime_error("write failed: " + path);
    }
    write_ber_svg(stem + ".svg", records);
}

void run_demo(std::ostream& os, int modulation_order, SlicerStructure structure) {
    // fixed, well-conditioned 4x4 noise-free scenario (K = R: the exact
    // solve needs no regularization, so the feedback devices are removed)
    const Index num_users = 4;
    const Constellation constellation = build_constellation(modulation_order, 0.1);

    Rng rng(mix_seed(0xdeadbeef, 4));
    ChannelRealization chan;
    chan.H.resize(num_users, num_users);
    for (Index j = 0; j < num_users; ++j)
        for (Index i = 0; i < num_users; ++i)
            chan.H(i, j) = rng.complex_normal();
    chan.F = chan.H;

    std::vector<std::uint8_t> bits(static_cast<std::size_t>(num_users) *
                                   constellation.bits_per_symbol());
    for (auto& b : bits)
        b = rng.coin() ? 1 : 0;
    const ComplexVector symbols = modulate_bits(bits, constellation);
    const ComplexVector y = chan.F * symbols; // noise-free

    const DetectorInstance det =
        build_detector(chan, 0.0, constellation, default_conductance_range(), std::nullopt,
                       structure);
    const DetectResult analog = detect(det, y);
    const SicResult digital = sic_detect(chan.F, y, 0.0, constellation);

    const Eigen::IOFormat vec_fmt(5, Eigen::DontAlignCols, ", ", ", ", "", "", "[", "]");
    os << "noise-free " << num_users << "x" << num_users << " demo, " << modulation_order
       << "-QAM, " << to_string(structure) << "-select slicers, ideal conductances\n";
    os << "detection order:";
    for (Index idx : det.order.sequence)
        os << " " << idx;
    os << "\n\n";

    double worst_rel = 0.0;
    for (Index k = 0; k < num_users; ++k) {
        const RealVector& r_analog = analog.trace.stage_results[static_cast<std::size_t>(k)];
        const RealVector& r_digital = digital.trace.stage_results[static_cast<std::size_t>(k)];
        worst_rel = std::max(worst_rel,
                             (r_analog - r_digital).norm() / std::max(r_digital.norm(), 1e-300));

        os << "stage " << (k + 1) << " (" << r_analog.size() << " outputs)\n";
        os << "  r_" << (k + 1) << " = " << r_analog.format(vec_fmt) << "\n";
        os << "  slicer in  ("
           << format_double(analog.trace.slicer_inputs[static_cast<std::size_t>(k)][0], "%.6g")
           << ", "
           << format_double(analog.trace.slicer_inputs[static_cast<std::size_t>(k)][1], "%.6g")
           << ")\n";
        const Complex estimate = analog.trace.stage_estimates[static_cast<std::size_t>(k)];
        os << "  slicer out (" << format_double(estimate.real(), "%.6g") << ", "
           << format_double(estimate.imag(), "%.6g") << ")\n";
    }

    os << "\ntransmitted: " << symbols.format(vec_fmt) << "\n";
    os << "detected:    " << analog.symbols.format(vec_fmt) << "\n";
    os << "digital reference agrees to relative error " << format_double(worst_rel, "%.2e")
       << "\n";
    const bool recovered = (analog.symbols.array() == symbols.array()).all();
    os << (recovered ? "all symbols recovered\n"
                     : "symbol mismatch (unexpected for this scenario)\n");
}

} // namespace memsic
