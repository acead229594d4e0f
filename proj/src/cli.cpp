/*
 * Copyright 2026 The Woven Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "woven/cli.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <ostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "woven/fourier.hpp"
#include "woven/io.hpp"
#include "woven/reconstruct.hpp"
#include "woven/sis.hpp"
#include "woven/weaving.hpp"

namespace woven::cli {

namespace {

using io::json;

struct Precision {
    double tol = 1e-9;
    unsigned bits = 0;

    PrecisionConfig config() const {
        if (bits == 0) return PrecisionConfig::double_mode(tol);
        PrecisionConfig cfg = PrecisionConfig::extended(bits);
        cfg.zero_tol = tol;
        return cfg;
    }
};

void add_precision(CLI::App* cmd, Precision& p) {
    cmd->add_option("--tol", p.tol, "Relative singularity threshold in double mode")->check(CLI::PositiveNumber);
    cmd->add_option("--precision", p.bits, "Work in extended precision with this many bits")
        ->check(CLI::Range(53u, 1u << 16));
}

std::vector<std::size_t> parse_subset(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        const auto last = item.find_last_not_of(" \t");
        const std::string token = item.substr(first, last - first + 1);
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(token, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != token.size() || token.empty() || token[0] == '-')
            throw ArgumentError("--subset: \"" + token + "\" is not a non-negative index");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) throw ArgumentError("--range expects a..b, got \"" + text + "\"");
    try {
        std::size_t used_a = 0;
        std::size_t used_b = 0;
        const std::string a = text.substr(0, dots);
        const std::string b = text.substr(dots + 2);
        const auto lo = std::stoull(a, &used_a);
        const auto hi = std::stoull(b, &used_b);
        if (used_a != a.size() || used_b != b.size() || a[0] == '-' || b[0] == '-') throw std::invalid_argument("");
        return {static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)};
    } catch (const std::exception&) {
        throw ArgumentError("--range expects a..b with non-negative integers, got \"" + text + "\"");
    }
}

struct SpectrumSource {
    std::size_t grid = sis::kDefaultGrid;
    std::size_t kmax = sis::kDefaultShelves;
};

// A spectrum file, "builtin:sinc" or "builtin:sinc-minus-exp:c" (base shelf
// 1 - c e^{2 pi i zeta}); built-ins use --grid and --kmax.
sis::SpectrumSamples load_spectrum(const std::string& spec, const SpectrumSource& src, json& inputs) {
    constexpr std::string_view kShift = "builtin:sinc-minus-exp:";
    if (spec == "builtin:sinc") {
        inputs.push_back({{"source", spec}});
        return sis::SpectrumSamples::sinc(src.grid, src.kmax);
    }
    if (spec.rfind(kShift, 0) == 0) {
        const std::string tail = spec.substr(kShift.size());
        std::size_t used = 0;
        double c = 0.0;
        try {
            c = std::stod(tail, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != tail.size()) throw ArgumentError("bad coefficient in \"" + spec + "\"");
        inputs.push_back({{"source", spec}});
        return sis::SpectrumSamples::base_shelf(src.grid, src.kmax, [c](double z) {
            return 1.0 - c * std::polar(1.0, 2.0 * std::numbers::pi * z);
        });
    }
    if (spec.rfind("builtin:", 0) == 0) throw ArgumentError("unknown built-in spectrum \"" + spec + "\"");
    io::SpectrumFile f = io::read_spectrum(spec);
    inputs.push_back({{"source", spec}, {"label", f.label ? json(*f.label) : json(nullptr)}});
    return std::move(f.spectrum);
}

int exit_for(ClassW status) {
    switch (status) {
    case ClassW::InW: return kOk;
    case ClassW::NotInW: return kNegative;
    case ClassW::Inconclusive: return kUndecided;
    }
    return kUndecided;
}

int exit_for(const sis::SISCertificate& c) {
    return c.status == sis::SISStatus::CertifiedWoven ? kOk : kNegative;
}

json label_of(const io::MatrixFile& m, const std::string& path) {
    return {{"source", path}, {"label", m.label ? json(*m.label) : json(nullptr)}};
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    const auto start = std::chrono::steady_clock::now();
    CLI::App app{"Certificates for woven bases, class-W matrices, Fourier minors and shift-invariant spaces",
                 "woven"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    io::Report report;
    report.version = std::string(kVersion);
    for (int i = 0; i < argc; ++i) report.command.emplace_back(argv[i]);
    std::string out_path;
    std::function<int()> action;

    auto add_out = [&](CLI::App* cmd) { cmd->add_option("--out", out_path, "Also write the report to this file"); };

    // check-w
    Precision cw_prec;
    std::string cw_matrix;
    WeavingOptions cw_opts;
    auto* check_w = app.add_subcommand("check-w", "Decide whether every central submatrix is invertible");
    check_w->add_option("matrix", cw_matrix, "Matrix file")->required();
    add_precision(check_w, cw_prec);
    check_w->add_option("--max-n", cw_opts.max_n, "Largest accepted dimension");
    check_w->add_option("--threads", cw_opts.threads, "Worker threads (0: all cores)");
    add_out(check_w);
    check_w->callback([&] {
        action = [&] {
            const io::MatrixFile m = io::read_matrix(cw_matrix);
            const PrecisionConfig cfg = cw_prec.config();
            report.config = {{"precision", io::to_json(cfg)},
                             {"max_n", cw_opts.max_n},
                             {"threads", cw_opts.threads},
                             {"input", label_of(m, cw_matrix)}};
            const WeavingCertificate c = classify_class_w(m.matrix, cfg, cw_opts);
            report.result = io::to_json(c);
            return exit_for(c.status);
        };
    });

    // woven
    Precision wv_prec;
    std::string wv_v, wv_w;
    bool wv_perm = false;
    std::size_t wv_max_n = 0;
    auto* woven_cmd = app.add_subcommand("woven", "Decide whether two bases (matrix columns) are woven");
    woven_cmd->add_option("v", wv_v, "First basis")->required();
    woven_cmd->add_option("w", wv_w, "Second basis")->required();
    woven_cmd->add_flag("--permutations", wv_perm, "Search for a reindexing of the second basis");
    woven_cmd->add_option("--max-n", wv_max_n, "Largest accepted dimension");
    add_precision(woven_cmd, wv_prec);
    add_out(woven_cmd);
    woven_cmd->callback([&] {
        action = [&] {
            const io::MatrixFile v = io::read_matrix(wv_v);
            const io::MatrixFile w = io::read_matrix(wv_w);
            const PrecisionConfig cfg = wv_prec.config();
            const std::size_t max_n = wv_max_n != 0 ? wv_max_n : (wv_perm ? 8 : 24);
            report.config = {{"precision", io::to_json(cfg)},
                             {"permutations", wv_perm},
                             {"max_n", max_n},
                             {"inputs", json::array({label_of(v, wv_v), label_of(w, wv_w)})}};
            const BasisPair pair{v.matrix, w.matrix};
            if (v.matrix.rows() > max_n)
                throw SizeLimitError("n = " + std::to_string(v.matrix.rows()) + " exceeds --max-n " +
                                     std::to_string(max_n));
            const CMatrix a = change_of_basis(pair, cfg);
            report.result["change_of_basis"] = io::matrix_json(a);
            if (!wv_perm) {
                WeavingOptions opts;
                opts.max_n = max_n;
                const WeavingCertificate c = are_woven(pair, cfg, opts);
                report.result["certificate"] = io::to_json(c);
                return exit_for(c.status);
            }
            const PermutationSearch s = woven_up_to_permutation(pair, cfg, max_n);
            report.result["search"] = io::to_json(s);
            if (s.found) return int{kOk};
            report.result["message"] = s.any_inconclusive ? "no permutation certified; some candidates inconclusive"
                                                          : "no permutation found";
            return s.any_inconclusive ? int{kUndecided} : int{kNegative};
        };
    });

    // reconstruct
    Precision rc_prec;
    std::string rc_matrix, rc_samples, rc_subset;
    auto* recon = app.add_subcommand("reconstruct", "Recover x from (Ax)(j), j in J, and x(j) elsewhere");
    recon->add_option("matrix", rc_matrix, "Matrix file")->required();
    recon->add_option("samples", rc_samples, "Samples file")->required();
    auto* subset_opt = recon->add_option("--subset", rc_subset, "Comma-separated J (overrides the samples file)");
    add_precision(recon, rc_prec);
    add_out(recon);
    recon->callback([&] {
        action = [&] {
            const io::MatrixFile m = io::read_matrix(rc_matrix);
            const io::SamplesFile s = io::read_samples(rc_samples);
            std::vector<std::size_t> subset;
            if (subset_opt->count() > 0)
                subset = parse_subset(rc_subset);
            else if (s.subset)
                subset = *s.subset;
            else
                throw ArgumentError("no subset: pass --subset or store \"subset\" in the samples file");
            const std::size_t n = m.matrix.rows();
            std::sort(subset.begin(), subset.end());
            const PrecisionConfig cfg = rc_prec.config();
            report.config = {{"precision", io::to_json(cfg)},
                             {"subset", subset},
                             {"inputs", json::array({label_of(m, rc_matrix), {{"source", rc_samples}}})}};
            if (s.values.size() != n)
                throw DimensionError("samples have length " + std::to_string(s.values.size()) + ", matrix is " +
                                     std::to_string(n) + " x " + std::to_string(n));
            const IndexSet j(n, subset);
            try {
                const CVector x = recover(m.matrix, MixedSamples{j, s.values}, cfg);
                report.result = {{"status", "recovered"}, {"x", io::vector_json(x)}};
                return int{kOk};
            } catch (const RecoveryImpossible& e) {
                report.result = {{"status", "recovery_impossible"},
                                 {"witness_J", io::index_set_json(e.witness())},
                                 {"block_verdict", std::string(to_string(e.verdict().status))},
                                 {"message", e.what()}};
                return e.verdict().status == Invertibility::Inconclusive ? int{kUndecided} : int{kNegative};
            }
        };
    });

    // fourier
    auto* fourier = app.add_subcommand("fourier", "Fourier matrices and the square-free criterion");
    fourier->require_subcommand(1);
    unsigned fr_bits = 0;
    std::size_t fr_max_n = 0;
    unsigned fr_threads = 0;
    std::string fr_range;
    std::size_t fr_n = 0;
    auto fourier_config = [&] {
        PrecisionConfig cfg = PrecisionConfig::double_mode();
        if (fr_bits != 0) cfg = PrecisionConfig::extended(fr_bits);
        return cfg;
    };
    auto fourier_opts = [&](std::size_t default_max) {
        FourierOptions o;
        o.max_n = fr_max_n != 0 ? fr_max_n : default_max;
        o.threads = fr_threads;
        o.cap_bits = std::max(o.cap_bits, fr_bits);
        return o;
    };
    auto fourier_echo = [&](const PrecisionConfig& cfg, const FourierOptions& o) {
        return json{{"precision", io::to_json(cfg)},
                    {"start_bits", cfg.mode == PrecisionMode::Extended ? cfg.bits : cfg.escalation_bits},
                    {"cap_bits", o.cap_bits},
                    {"max_n", o.max_n},
                    {"threads", o.threads},
                    {"reduce_to_zero", o.reduce_to_zero},
                    {"square_free_fast_path", o.square_free_fast_path}};
    };
    auto add_fourier_flags = [&](CLI::App* cmd) {
        cmd->add_option("--precision", fr_bits, "Starting precision in bits (default 192)")
            ->check(CLI::Range(53u, 1u << 16));
        cmd->add_option("--max-n", fr_max_n, "Largest accepted size");
        cmd->add_option("--threads", fr_threads, "Worker threads (0: all cores)");
        add_out(cmd);
    };
    auto* f_scan = fourier->add_subcommand("scan", "Classify F_n for every n in a range");
    f_scan->add_option("--range", fr_range, "a..b")->required();
    add_fourier_flags(f_scan);
    f_scan->callback([&] {
        action = [&] {
            const auto [lo, hi] = parse_range(fr_range);
            const PrecisionConfig cfg = fourier_config();
            const FourierOptions o = fourier_opts(20);
            report.config = fourier_echo(cfg, o);
            report.config["range"] = {lo, hi};
            const ScanReport r = scan(lo, hi, cfg, o);
            report.result = io::to_json(r);
            json rows = json::array();
            for (const auto& row : r.rows) rows.push_back({{"n", row.n}, {"seconds", row.seconds}});
            report.timings["rows"] = rows;
            if (!r.findings.empty() || !r.contradictions.empty()) {
                for (std::size_t n : r.findings)
                    err << "FINDING: F_" << n << " is square free but has a singular central submatrix\n";
                for (std::size_t n : r.contradictions)
                    err << "CONTRADICTION: F_" << n << " is not square free but was not shown outside W\n";
                return int{kNegative};
            }
            return r.inconclusive.empty() ? int{kOk} : int{kUndecided};
        };
    });
    auto* f_classify = fourier->add_subcommand("classify", "Classify one F_n");
    f_classify->add_option("n", fr_n, "Size")->required();
    add_fourier_flags(f_classify);
    f_classify->callback([&] {
        action = [&] {
            const PrecisionConfig cfg = fourier_config();
            const FourierOptions o = fourier_opts(20);
            report.config = fourier_echo(cfg, o);
            report.config["n"] = fr_n;
            const FourierScanRow row = classify_fourier(fr_n, cfg, o);
            report.result = io::to_json(row);
            report.timings["row_seconds"] = row.seconds;
            return exit_for(row.in_W);
        };
    });
    auto* f_minors = fourier->add_subcommand("minors", "Check every square submatrix of F_n");
    f_minors->add_option("n", fr_n, "Size")->required();
    add_fourier_flags(f_minors);
    f_minors->callback([&] {
        action = [&] {
            const PrecisionConfig cfg = fourier_config();
            const FourierOptions o = fourier_opts(11);
            report.config = fourier_echo(cfg, o);
            report.config["n"] = fr_n;
            const MinorsReport m = minors_exhaustive(fr_n, cfg, o.max_n, o);
            report.result = io::to_json(m);
            if (m.witness) return int{kNegative};
            return m.inconclusive ? int{kUndecided} : int{kOk};
        };
    });

    // sis
    auto* sis_cmd = app.add_subcommand("sis", "Weaving certificates for translates in shift-invariant spaces");
    sis_cmd->require_subcommand(1);
    SpectrumSource src;
    std::vector<std::string> phi_specs, psi_specs;
    std::size_t trials = 50;
    std::uint64_t seed = 1;
    std::size_t half_width = 32;
    auto add_grid = [&](CLI::App* cmd) {
        cmd->add_option("--grid", src.grid, "Grid size for built-in spectra")->check(CLI::Range(2ul, 1ul << 24));
        cmd->add_option("--kmax", src.kmax, "Shelf count K for built-in spectra")->check(CLI::Range(0ul, 1ul << 12));
        add_out(cmd);
    };
    auto grid_echo = [&] { return json{{"grid", src.grid}, {"kmax", src.kmax}}; };

    auto* s_check = sis_cmd->add_subcommand("check", "Perturbation certificate for a pair of generators");
    s_check->add_option("--phi", phi_specs, "Spectrum file or builtin:sinc")->required()->expected(1);
    s_check->add_option("--psi", psi_specs, "Spectrum file or builtin:...")->required()->expected(1);
    add_grid(s_check);
    s_check->callback([&] {
        action = [&] {
            json inputs = json::array();
            const auto phi = load_spectrum(phi_specs.at(0), src, inputs);
            const auto psi = load_spectrum(psi_specs.at(0), src, inputs);
            report.config = {{"builtin", grid_echo()}, {"inputs", inputs}};
            const auto c = sis::perturbation_certify(phi, psi);
            report.result = io::to_json(c);
            return exit_for(c);
        };
    });
    auto* s_pw = sis_cmd->add_subcommand("pw", "Paley-Wiener corollary for a band-limited generator");
    s_pw->add_option("--psi", psi_specs, "Spectrum file or builtin:...")->required()->expected(1);
    add_grid(s_pw);
    s_pw->callback([&] {
        action = [&] {
            json inputs = json::array();
            const auto psi = load_spectrum(psi_specs.at(0), src, inputs);
            report.config = {{"builtin", grid_echo()}, {"inputs", inputs}};
            const auto c = sis::pw_corollary_certify(psi);
            report.result = io::to_json(c);
            return exit_for(c);
        };
    });
    auto* s_multi = sis_cmd->add_subcommand("multi", "Perturbation certificate for generator sets");
    s_multi->add_option("--phi", phi_specs, "Comma-separated spectra")->required()->delimiter(',');
    s_multi->add_option("--psi", psi_specs, "Comma-separated spectra")->required()->delimiter(',');
    add_grid(s_multi);
    s_multi->callback([&] {
        action = [&] {
            json inputs = json::array();
            std::vector<sis::SpectrumSamples> phi, psi;
            for (const auto& s : phi_specs) phi.push_back(load_spectrum(s, src, inputs));
            for (const auto& s : psi_specs) psi.push_back(load_spectrum(s, src, inputs));
            report.config = {{"builtin", grid_echo()}, {"inputs", inputs}};
            const auto c = sis::multi_perturbation_certify(phi, psi);
            report.result = io::to_json(c);
            return exit_for(c);
        };
    });
    auto* s_validate = sis_cmd->add_subcommand("validate", "Random finite sections of a weaving");
    s_validate->add_option("--phi", phi_specs, "Spectrum file or builtin:sinc")->required()->expected(1);
    s_validate->add_option("--psi", psi_specs, "Spectrum file or builtin:...")->required()->expected(1);
    s_validate->add_option("--trials", trials, "Random subsets to draw");
    s_validate->add_option("--seed", seed, "Seed for the subset draws");
    s_validate->add_option("--half-width", half_width, "Translates t_k with |k| <= N");
    add_grid(s_validate);
    s_validate->callback([&] {
        action = [&] {
            json inputs = json::array();
            const auto phi = load_spectrum(phi_specs.at(0), src, inputs);
            const auto psi = load_spectrum(psi_specs.at(0), src, inputs);
            report.config = {{"builtin", grid_echo()},
                             {"inputs", inputs},
                             {"trials", trials},
                             {"seed", seed},
                             {"half_width", half_width}};
            const auto r = sis::finite_section_validate(phi, psi, half_width, trials, seed);
            report.result = io::to_json(r);
            return r.min_lower_bound > 0.0 ? int{kOk} : int{kNegative};
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << (dynamic_cast<const CLI::CallForHelp*>(&e) || dynamic_cast<const CLI::CallForAllHelp*>(&e)
                        ? app.help()
                        : std::string(e.what()) + "\n");
            return kOk;
        }
        err << "woven: " << e.what() << "\n";
        return kUsage;
    }
    if (!action) {
        err << "woven: no command given\n" << app.help();
        return kUsage;
    }

    int code = kUsage;
    try {
        code = action();
    } catch (const Error& e) {
        err << "woven: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "woven: unexpected failure: " << e.what() << "\n";
        return kUsage;
    }
    report.timings["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.result["exit_code"] = code;
    out << io::dump(report.to_json());
    if (!out_path.empty()) {
        try {
            io::write_report(report, out_path);
        } catch (const Error& e) {
            err << "woven: " << e.what() << "\n";
            return kUsage;
        }
    }
    return code;
}

} // namespace woven::cli
