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

#include "woven/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace woven::io {

namespace {

std::string position_text(std::size_t line, std::size_t column) {
    if (line == 0) return "";
    return " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")";
}

// 1-based line and column of byte offset `byte` (nlohmann reports one past
// the offending character).
std::pair<std::size_t, std::size_t> locate(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min(byte == 0 ? 0 : byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

[[noreturn]] void fail(const std::string& source, const std::string& message) { throw ParseError(source, message); }

const json& field(const json& j, const char* key, const std::string& source) {
    if (!j.is_object()) fail(source, "expected a JSON object at the top level");
    const auto it = j.find(key);
    if (it == j.end()) fail(source, std::string("missing field \"") + key + "\"");
    return *it;
}

std::size_t count_field(const json& j, const char* key, const std::string& source) {
    const json& v = field(j, key, source);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
        fail(source, std::string("field \"") + key + "\" must be a non-negative integer");
    return v.get<std::size_t>();
}

std::optional<std::string> label_field(const json& j, const std::string& source) {
    const auto it = j.find("label");
    if (it == j.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) fail(source, "field \"label\" must be a string");
    return it->get<std::string>();
}

CScalar pair_value(const json& p, const std::string& where, const std::string& source) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
        fail(source, where + ": expected an [re, im] pair of numbers");
    const CScalar z(p[0].get<double>(), p[1].get<double>());
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) fail(source, where + ": value is not finite");
    return z;
}

CVector pair_list(const json& arr, const std::string& where, const std::string& source) {
    if (!arr.is_array()) fail(source, where + ": expected a list of [re, im] pairs");
    CVector out;
    out.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i)
        out.push_back(pair_value(arr[i], where + "[" + std::to_string(i) + "]", source));
    return out;
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path.string(), "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

ParseError::ParseError(const std::string& source, const std::string& message, std::size_t line, std::size_t column)
    : Error(source + ": " + message + position_text(line, column)), line_(line), column_(column) {}

json parse_json(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, column] = locate(text, e.byte);
        std::string what = e.what();
        const auto colon = what.rfind(": ");
        throw ParseError(source, "malformed JSON: " + (colon == std::string::npos ? what : what.substr(colon + 2)),
                         line, column);
    } catch (const json::out_of_range& e) {
        throw ParseError(source, std::string("number out of range: ") + e.what());
    }
}

json read_json(const std::filesystem::path& path) { return parse_json(read_text(path), path.string()); }

MatrixFile matrix_from_json(const json& j, const std::string& source) {
    const std::size_t n = count_field(j, "n", source);
    if (n == 0) fail(source, "field \"n\" must be at least 1");
    CVector entries = pair_list(field(j, "entries", source), "entries", source);
    if (entries.size() != n * n)
        fail(source, "entries has " + std::to_string(entries.size()) + " values, expected n^2 = " +
                         std::to_string(n * n));
    return {CMatrix(n, n, std::move(entries)), label_field(j, source)};
}

json to_json(const MatrixFile& m) {
    json j = {{"n", m.matrix.rows()}, {"entries", vector_json(m.matrix.data())}};
    if (m.label) j["label"] = *m.label;
    return j;
}

MatrixFile read_matrix(const std::filesystem::path& path) { return matrix_from_json(read_json(path), path.string()); }

SpectrumFile spectrum_from_json(const json& j, const std::string& source) {
    const std::size_t grid = count_field(j, "grid_size", source);
    const std::size_t k_max = count_field(j, "k_max", source);
    if (grid < 2) fail(source, "field \"grid_size\" must be at least 2");
    const json& shelves = field(j, "shelves", source);
    if (!shelves.is_array() || shelves.size() != 2 * k_max + 1)
        fail(source, "shelves must be a list of 2 k_max + 1 = " + std::to_string(2 * k_max + 1) + " shelves");
    std::vector<CScalar> values;
    values.reserve((2 * k_max + 1) * grid);
    for (std::size_t s = 0; s < shelves.size(); ++s) {
        const CVector shelf = pair_list(shelves[s], "shelves[" + std::to_string(s) + "]", source);
        if (shelf.size() != grid)
            fail(source, "shelves[" + std::to_string(s) + "] has " + std::to_string(shelf.size()) +
                             " samples, expected grid_size = " + std::to_string(grid));
        values.insert(values.end(), shelf.begin(), shelf.end());
    }
    return {sis::SpectrumSamples(grid, k_max, std::move(values)), label_field(j, source)};
}

json to_json(const SpectrumFile& s) {
    const auto& sp = s.spectrum;
    json shelves = json::array();
    const long k_max = static_cast<long>(sp.k_max());
    for (long k = -k_max; k <= k_max; ++k)
        shelves.push_back(vector_json(std::span<const CScalar>(sp.shelf(k), sp.grid_size())));
    json j = {{"grid_size", sp.grid_size()}, {"k_max", sp.k_max()}, {"shelves", std::move(shelves)}};
    if (s.label) j["label"] = *s.label;
    return j;
}

SpectrumFile read_spectrum(const std::filesystem::path& path) {
    return spectrum_from_json(read_json(path), path.string());
}

SamplesFile samples_from_json(const json& j, const std::string& source) {
    SamplesFile out;
    out.values = pair_list(field(j, "values", source), "values", source);
    const auto it = j.find("subset");
    if (it != j.end() && !it->is_null()) {
        if (!it->is_array()) fail(source, "field \"subset\" must be a list of indices");
        std::vector<std::size_t> subset;
        for (const auto& v : *it) {
            if (!v.is_number_unsigned()) fail(source, "subset entries must be non-negative integers");
            subset.push_back(v.get<std::size_t>());
        }
        out.subset = std::move(subset);
    }
    return out;
}

json to_json(const SamplesFile& s) {
    json j = {{"values", vector_json(s.values)}};
    if (s.subset) j["subset"] = *s.subset;
    return j;
}

SamplesFile read_samples(const std::filesystem::path& path) {
    return samples_from_json(read_json(path), path.string());
}

json real(double x) {
    if (std::isfinite(x)) return x;
    if (std::isnan(x)) return "nan";
    return x > 0 ? "inf" : "-inf";
}

double real_from_json(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j == "inf") return std::numeric_limits<double>::infinity();
    if (j == "-inf") return -std::numeric_limits<double>::infinity();
    if (j == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw ParseError("report", "expected a real number");
}

json complex(CScalar z) { return json::array({real(z.real()), real(z.imag())}); }

json vector_json(std::span<const CScalar> v) {
    json arr = json::array();
    for (const auto& z : v) arr.push_back(complex(z));
    return arr;
}

json matrix_json(const CMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(vector_json(m.row(i)));
    return rows;
}

json index_set_json(const IndexSet& s) { return s.members(); }

json index_set_json(const std::optional<IndexSet>& s) { return s ? index_set_json(*s) : json(nullptr); }

json to_json(const PrecisionConfig& cfg) {
    return {{"mode", std::string(to_string(cfg.mode))}, {"bits", cfg.bits},
            {"zero_tol", real(cfg.zero_tol)},          {"rel_tol", real(cfg.rel_tol)},
            {"escalation_bits", cfg.escalation_bits}};
}

json to_json(const WeavingCertificate& c) {
    return {{"status", std::string(to_string(c.status))},
            {"worst_J", index_set_json(c.worst_J)},
            {"min_sigma", real(c.min_sigma)},
            {"min_abs_det", real(c.min_abs_det)},
            {"subsets_checked", c.subsets_checked},
            {"precision_used", to_json(c.precision_used)},
            {"fast_path", std::string(to_string(c.fast_path))},
            {"escalations", c.escalations}};
}

json to_json(const PermutationSearch& p) {
    return {{"found", p.found},
            {"sigma", p.sigma ? json(*p.sigma) : json(nullptr)},
            {"certificate", p.certificate ? to_json(*p.certificate) : json(nullptr)},
            {"candidates_classified", p.candidates_classified},
            {"any_inconclusive", p.any_inconclusive}};
}

json to_json(const FourierScanRow& r) {
    const char* verdict = r.in_W == ClassW::InW ? "yes" : r.in_W == ClassW::NotInW ? "no" : "inconclusive";
    return {{"n", r.n},
            {"square_free", r.square_free},
            {"in_W", verdict},
            {"min_abs_det", real(r.min_abs_det)},
            {"min_abs_det_error", real(r.min_abs_det_error)},
            {"witness_J", index_set_json(r.witness_J)},
            {"subsets_checked", r.subsets_checked},
            {"precision_bits", r.precision_bits},
            {"escalations", r.escalations}};
}

json to_json(const ScanReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows) rows.push_back(to_json(row));
    return {{"rows", std::move(rows)},
            {"contradictions", r.contradictions},
            {"square_free_counterexample_candidates", r.findings},
            {"inconclusive", r.inconclusive},
            {"note", "finite-precision evidence that F_n is in W exactly when n is square free; not a proof"}};
}

json to_json(const MinorsReport& m) {
    json witness = nullptr;
    if (m.witness) witness = {{"rows", index_set_json(m.witness->rows)}, {"cols", index_set_json(m.witness->cols)}};
    return {{"all_nonzero", m.all_nonzero},
            {"count", m.count},
            {"min_abs", real(m.min_abs)},
            {"min_abs_error", real(m.min_abs_error)},
            {"witness", witness},
            {"inconclusive", m.inconclusive},
            {"precision_bits", m.precision_bits}};
}

json to_json(const sis::SISCertificate& c) {
    json j = {{"status", std::string(sis::to_string(c.status))},
              {"A_est", real(c.A_est)},
              {"B_est", real(c.B_est)},
              {"mu_est", real(c.mu_est)},
              {"margin", real(c.margin)},
              {"grid_size", c.grid_size},
              {"k_max", c.k_max},
              {"tail_mass", real(c.tail_mass)},
              {"note", "sufficient test at this grid resolution; not_certified does not mean not woven"}};
    if (c.second_clause) {
        j["second_clause"] = *c.second_clause;
        j["psi_A"] = real(*c.psi_A);
        j["psi_B"] = real(*c.psi_B);
    }
    return j;
}

json to_json(const sis::FiniteSectionReport& r) {
    json trials = json::array();
    for (const auto& [lo, hi] : r.per_trial) trials.push_back(json::array({real(lo), real(hi)}));
    return {{"min_lower_bound", real(r.min_lower_bound)},
            {"max_upper_bound", real(r.max_upper_bound)},
            {"n_translates", r.n_translates},
            {"trials", r.trials},
            {"seed", r.seed},
            {"per_trial", std::move(trials)}};
}

json Report::to_json() const {
    return {{"tool", tool},     {"version", version}, {"command", command},
            {"config", config}, {"result", result},   {"timings", timings}};
}

Report Report::from_json(const json& j) {
    const std::string source = "report";
    Report r;
    r.tool = field(j, "tool", source).get<std::string>();
    r.version = field(j, "version", source).get<std::string>();
    r.command = field(j, "command", source).get<std::vector<std::string>>();
    r.config = field(j, "config", source);
    r.result = field(j, "result", source);
    r.timings = field(j, "timings", source);
    return r;
}

json Report::payload() const {
    json j = to_json();
    j.erase("timings");
    return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_report(const Report& r, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ArgumentError("cannot write report to " + path.string());
    out << dump(r.to_json());
    if (!out) throw ArgumentError("failed writing report to " + path.string());
}

Report read_report(const std::filesystem::path& path) { return Report::from_json(read_json(path)); }

} // namespace woven::io
