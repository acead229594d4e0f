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

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "woven/errors.hpp"
#include "woven/fourier.hpp"
#include "woven/index_set.hpp"
#include "woven/matrix.hpp"
#include "woven/numeric.hpp"
#include "woven/sis.hpp"
#include "woven/weaving.hpp"

// File formats and reports. Every file is JSON with complex numbers written
// as [re, im] pairs:
//
//   matrix    {"n": 2, "entries": [[1,0],[-1,0],[1,0],[1,0]], "label": "..."}
//   spectrum  {"grid_size": G, "k_max": K, "shelves": [[[re,im], ...G], ...2K+1]}
//   samples   {"values": [[re,im], ...], "subset": [0, 2]}
//
// Entries are row-major; shelves run from k = -K to K.

namespace woven::io {

using nlohmann::json;

/// Malformed input. line and column are 1-based; 0 when unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& source, const std::string& message, std::size_t line = 0, std::size_t column = 0);
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

struct MatrixFile {
    CMatrix matrix;
    std::optional<std::string> label;
};

struct SpectrumFile {
    sis::SpectrumSamples spectrum;
    std::optional<std::string> label;
};

struct SamplesFile {
    CVector values;
    std::optional<std::vector<std::size_t>> subset;
};

/// Parses JSON text; `source` names the input in error messages.
json parse_json(const std::string& text, const std::string& source);
json read_json(const std::filesystem::path& path);

MatrixFile matrix_from_json(const json& j, const std::string& source = "matrix");
json to_json(const MatrixFile& m);
MatrixFile read_matrix(const std::filesystem::path& path);

SpectrumFile spectrum_from_json(const json& j, const std::string& source = "spectrum");
json to_json(const SpectrumFile& s);
SpectrumFile read_spectrum(const std::filesystem::path& path);

SamplesFile samples_from_json(const json& j, const std::string& source = "samples");
json to_json(const SamplesFile& s);
SamplesFile read_samples(const std::filesystem::path& path);

/// Non-finite reals become the strings "inf", "-inf" or "nan".
json real(double x);
double real_from_json(const json& j);
json complex(CScalar z);
json vector_json(std::span<const CScalar> v);
json matrix_json(const CMatrix& m);
json index_set_json(const IndexSet& s);
json index_set_json(const std::optional<IndexSet>& s);

json to_json(const PrecisionConfig& cfg);
json to_json(const WeavingCertificate& c);
json to_json(const PermutationSearch& p);
json to_json(const FourierScanRow& r);
json to_json(const ScanReport& r);
json to_json(const MinorsReport& m);
json to_json(const sis::SISCertificate& c);
json to_json(const sis::FiniteSectionReport& r);

/// Everything a run produced. Timings are kept apart from the payload so
/// identical runs compare equal on `payload()`.
struct Report {
    std::string tool = "woven";
    std::string version;
    std::vector<std::string> command;
    json config = json::object();
    json result = json::object();
    json timings = json::object();

    json to_json() const;
    static Report from_json(const json& j);
    /// The report without timings.
    json payload() const;

    friend bool operator==(const Report&, const Report&) = default;
};

std::string dump(const json& j);
void write_report(const Report& r, const std::filesystem::path& path);
Report read_report(const std::filesystem::path& path);

} // namespace woven::io
