#pragma once

// JSON space-spec parsing and report serialization.
//
// Scalar spec:
//   {"a": {"coeff": [re,im], "base": [re,im], "power": p,
//          "overrides": {"3": [re,im]}},
//    "b": {...},
//    "options": {"truncation": 256, "horizon": 64, "tolerance": 1e-10}}
//
// Matrix spec:
//   {"d": 2, "Q": [[[re,im],...],...], "channels": [{"a":...,"b":...}, ...],
//    "A": {"0": [[[re,im],...],...], ...}, "B": {...}}   (A, B optional)
//
// Complex numbers are [re, im] pairs everywhere. Reports embed the FNV-1a
// hash of the spec file so identical inputs yield byte-identical outputs.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "tridiag/dynamics.hpp"
#include "tridiag/matrix_kernel.hpp"
#include "tridiag/spectrum.hpp"
#include "tridiag/verify.hpp"

namespace tridiag {

struct SpecParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a command would have to report uncertified numbers.
struct UncertifiedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SpecOptionsIo {
    std::size_t truncation = 256;
    std::size_t horizon = 64;
    double tolerance = 1e-10;
};

struct ParsedSpec {
    std::optional<SequencePair> scalar;
    std::optional<MatrixKernelSpace> matrix;
    SpecOptionsIo options;
    std::uint64_t hash = 0;

    bool isMatrix() const { return matrix.has_value(); }
    TridiagonalSpace makeSpace() const;  // scalar specs only
};

std::uint64_t fnv1a(std::string_view bytes);
std::string hash_string(std::uint64_t h);

ParsedSpec load_spec(const std::filesystem::path& path);
ParsedSpec parse_spec(const std::string& text);  // hash of the given text

// ---- serialization ------------------------------------------------------

std::string verdict_with_clause(HcVerdict v, const std::string& clause);
std::string verdict_with_clause(ChaosVerdict v, const std::string& clause);
std::string verdict_with_clause(Tri v, const std::string& clause);

nlohmann::ordered_json dynamics_report_json(const DynamicsReport& rep, std::uint64_t specHash);
nlohmann::ordered_json boundedness_report_json(const BoundednessReport& rep);
nlohmann::ordered_json annulus_json(const SpectralAnnulus& ann, std::uint64_t specHash);
nlohmann::ordered_json oracle_reports_json(const std::vector<OracleReport>& reps,
                                           std::uint64_t specHash);

// CSV with quoted "re,im" cells, row-major.
std::string matrix_csv(const DenseMatrix& m);

// Atomic write (temp file + rename).
void write_file(const std::filesystem::path& path, const std::string& content);

} // namespace tridiag
