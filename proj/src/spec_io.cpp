#include "tridiag/spec_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace tridiag {

using nlohmann::json;
using nlohmann::ordered_json;

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hash_string(std::uint64_t h) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

cxd parse_complex(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw SpecParseError(where + ": expected [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

SequenceFamily parse_family(const json& j, const std::string& where) {
    if (!j.is_object()) throw SpecParseError(where + ": expected a family object");
    if (!j.contains("coeff") || !j.contains("base") || !j.contains("power"))
        throw SpecParseError(where + ": family needs coeff, base, power");
    const cxd coeff = parse_complex(j.at("coeff"), where + ".coeff");
    const cxd base = parse_complex(j.at("base"), where + ".base");
    if (!j.at("power").is_number()) throw SpecParseError(where + ".power: expected a number");
    const double power = j.at("power").get<double>();

    std::map<std::size_t, cxd> overrides;
    if (j.contains("overrides")) {
        const json& ov = j.at("overrides");
        if (!ov.is_object()) throw SpecParseError(where + ".overrides: expected an object");
        for (auto it = ov.begin(); it != ov.end(); ++it) {
            std::size_t idx = 0;
            try {
                idx = static_cast<std::size_t>(std::stoull(it.key()));
            } catch (...) {
                throw SpecParseError(where + ".overrides." + it.key() + ": bad index");
            }
            const cxd v = parse_complex(it.value(), where + ".overrides." + it.key());
            if (v == cxd{})
                throw SpecParseError(where + ".overrides." + it.key() + ": zero value not allowed");
            overrides[idx] = v;
        }
    }
    try {
        return SequenceFamily(coeff, base, power, std::move(overrides));
    } catch (const std::invalid_argument& e) {
        throw SpecParseError(where + ": " + e.what());
    }
}

SequencePair parse_pair(const json& j, const std::string& where) {
    if (!j.contains("a") || !j.contains("b"))
        throw SpecParseError(where + ": expected families a and b");
    return SequencePair{parse_family(j.at("a"), where + ".a"),
                        parse_family(j.at("b"), where + ".b")};
}

DenseMatrix parse_matrix(const json& j, std::size_t d, const std::string& where) {
    if (!j.is_array() || j.size() != d) throw SpecParseError(where + ": expected " +
                                                             std::to_string(d) + " rows");
    DenseMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        const json& row = j[i];
        if (!row.is_array() || row.size() != d)
            throw SpecParseError(where + "[" + std::to_string(i) + "]: expected " +
                                 std::to_string(d) + " cells");
        for (std::size_t k = 0; k < d; ++k)
            m.at(i, k) = parse_complex(row[k], where + "[" + std::to_string(i) + "][" +
                                                   std::to_string(k) + "]");
    }
    return m;
}

std::map<std::size_t, DenseMatrix> parse_matrix_table(const json& j, std::size_t d,
                                                      const std::string& where) {
    std::map<std::size_t, DenseMatrix> table;
    if (!j.is_object()) throw SpecParseError(where + ": expected an object of matrices");
    for (auto it = j.begin(); it != j.end(); ++it) {
        std::size_t idx = 0;
        try {
            idx = static_cast<std::size_t>(std::stoull(it.key()));
        } catch (...) {
            throw SpecParseError(where + "." + it.key() + ": bad index");
        }
        table.emplace(idx, parse_matrix(it.value(), d, where + "." + it.key()));
    }
    return table;
}

} // namespace

TridiagonalSpace ParsedSpec::makeSpace() const {
    if (!scalar) throw std::logic_error("makeSpace called on a matrix spec");
    SpaceOptions opts;
    opts.defaultTruncation = options.truncation;
    return TridiagonalSpace(*scalar, opts);
}

ParsedSpec parse_spec(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SpecParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw SpecParseError("spec root must be an object");

    ParsedSpec spec;
    spec.hash = fnv1a(text);

    if (j.contains("options")) {
        const json& o = j.at("options");
        if (!o.is_object()) throw SpecParseError("options: expected an object");
        if (o.contains("truncation")) spec.options.truncation = o.at("truncation").get<std::size_t>();
        if (o.contains("horizon")) spec.options.horizon = o.at("horizon").get<std::size_t>();
        if (o.contains("tolerance")) spec.options.tolerance = o.at("tolerance").get<double>();
        if (spec.options.truncation < 2) throw SpecParseError("options.truncation: must be >= 2");
        if (spec.options.horizon < 16) throw SpecParseError("options.horizon: must be >= 16");
    }

    if (j.contains("d")) {
        const std::size_t d = j.at("d").get<std::size_t>();
        if (d == 0 || d > 16) throw SpecParseError("d: must be in 1..16");
        if (!j.contains("Q") || !j.contains("channels"))
            throw SpecParseError("matrix spec needs Q and channels");
        DenseMatrix Q = parse_matrix(j.at("Q"), d, "Q");
        const json& ch = j.at("channels");
        if (!ch.is_array() || ch.size() != d)
            throw SpecParseError("channels: expected " + std::to_string(d) + " entries");
        std::vector<SequencePair> channels;
        for (std::size_t q = 0; q < d; ++q)
            channels.push_back(parse_pair(ch[q], "channels[" + std::to_string(q) + "]"));
        std::map<std::size_t, DenseMatrix> rawA, rawB;
        if (j.contains("A")) rawA = parse_matrix_table(j.at("A"), d, "A");
        if (j.contains("B")) rawB = parse_matrix_table(j.at("B"), d, "B");
        try {
            spec.matrix.emplace(std::move(Q), std::move(channels), std::move(rawA),
                                std::move(rawB));
        } catch (const std::invalid_argument& e) {
            throw SpecParseError(std::string("matrix spec: ") + e.what());
        }
        return spec;
    }

    spec.scalar = parse_pair(j, "spec");
    return spec;
}

ParsedSpec load_spec(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SpecParseError("cannot read spec file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_spec(ss.str());
}

// ---- serialization ------------------------------------------------------

namespace {

ordered_json ext_real_json(const ExtReal& e) {
    if (e.infinite) return "inf";
    return e.value;
}

} // namespace

std::string verdict_with_clause(HcVerdict v, const std::string& clause) {
    std::string head;
    switch (v) {
        case HcVerdict::YesIff:
        case HcVerdict::YesSufficient: head = "yes"; break;
        case HcVerdict::NoIff:
        case HcVerdict::NoNecessary: head = "no"; break;
        default: return "indeterminate";
    }
    return clause.empty() ? head : head + "[" + clause + "]";
}

std::string verdict_with_clause(ChaosVerdict v, const std::string& clause) {
    if (v == ChaosVerdict::Indeterminate) return "indeterminate";
    const std::string head = v == ChaosVerdict::Yes ? "yes" : "no";
    return clause.empty() ? head : head + "[" + clause + "]";
}

std::string verdict_with_clause(Tri v, const std::string& clause) {
    if (v == Tri::Indeterminate) return "indeterminate";
    const std::string head = v == Tri::Yes ? "yes" : "no";
    return clause.empty() ? head : head + "[" + clause + "]";
}

ordered_json boundedness_report_json(const BoundednessReport& rep) {
    ordered_json j;
    j["verdict"] = to_string(rep.verdict);
    j["necessaryOk"] = rep.necessaryOk;
    j["sufficientOk"] = to_string(rep.sufficientOk);
    j["strongOk"] = rep.strongOk;
    j["tridiagLimsup"] = ext_real_json(rep.tridiagLimsup);
    j["bandSeriesPartialSum"] = rep.bandSeriesPartialSum;
    j["horizon"] = rep.horizon;
    j["provenance"] = rep.provenance;
    return j;
}

ordered_json dynamics_report_json(const DynamicsReport& rep, std::uint64_t specHash) {
    ordered_json j;
    j["specHash"] = hash_string(specHash);
    j["lambdaAbs"] = rep.lambdaAbs;
    j["hypercyclic"] = verdict_with_clause(rep.hypercyclic, rep.hypercyclicClause);
    j["mixing"] = verdict_with_clause(rep.mixing, rep.mixingClause);
    j["chaotic"] = verdict_with_clause(rep.chaotic, rep.chaoticClause);
    j["hypercyclicSubspace"] = verdict_with_clause(rep.hypercyclicSubspace, rep.subspaceClause);
    j["detail"] = {{"hypercyclic", to_string(rep.hypercyclic)},
                   {"mixing", to_string(rep.mixing)},
                   {"chaotic", to_string(rep.chaotic)}};
    j["boundedness"] = boundedness_report_json(rep.boundedness);
    return j;
}

ordered_json annulus_json(const SpectralAnnulus& ann, std::uint64_t specHash) {
    ordered_json j;
    j["specHash"] = hash_string(specHash);
    j["inner"] = ann.innerRadius;
    j["outer"] = ann.outerRadius;
    ordered_json horizons;
    horizons["nMax"] = ann.nMax;
    horizons["kMax"] = ann.kMax;
    horizons["finiteInner"] = ann.finiteInner;
    horizons["finiteOuter"] = ann.finiteOuter;
    horizons["finiteInnerBest"] = ann.finiteInnerBest;
    horizons["finiteOuterBest"] = ann.finiteOuterBest;
    horizons["overridesIgnoredInAnalytic"] = ann.overridesIgnoredInAnalytic;
    j["horizons"] = horizons;
    return j;
}

ordered_json oracle_reports_json(const std::vector<OracleReport>& reps, std::uint64_t specHash) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : reps) {
        ordered_json j;
        j["oracle"] = r.oracle;
        j["instance"] = r.instance;
        j["maxDeviation"] = r.maxDeviation;
        j["tolerance"] = r.tolerance;
        j["pass"] = r.pass;
        arr.push_back(j);
    }
    ordered_json out;
    out["specHash"] = hash_string(specHash);
    out["reports"] = arr;
    out["allPass"] = std::all_of(reps.begin(), reps.end(),
                                 [](const OracleReport& r) { return r.pass; });
    return out;
}

std::string matrix_csv(const DenseMatrix& m) {
    std::ostringstream out;
    out.precision(17);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            const cxd v = m.at(i, j);
            out << '"' << v.real() << ',' << v.imag() << '"';
        }
        out << '\n';
    }
    return out.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

} // namespace tridiag
