// tridiag: analyze backward-shift dynamics on tridiagonal-kernel spaces.
//
// JSON specs in, JSON/CSV reports out. Output is deterministic for a fixed
// (spec, options) and embeds the spec hash. Exit codes: 0 ok, 1 oracle or
// internal failure, 2 spec parse error, 3 domain error, 4 uncertified
// numerics requested without --allow-partial.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tridiag/spec_io.hpp"

namespace fs = std::filesystem;
using namespace tridiag;
using nlohmann::ordered_json;

namespace {

struct Common {
    std::string specPath;
    std::string outDir = ".";
    bool json = false;
    bool csv = false;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--spec", c.specPath, "space spec (JSON)")->required();
    cmd->add_option("--out", c.outDir, "output directory");
    cmd->add_flag("--json", c.json, "print the JSON report to stdout");
    cmd->add_flag("--csv", c.csv, "also emit CSV where applicable");
}

fs::path out_dir(const Common& c) {
    if (const char* env = std::getenv("TRIDIAG_OUT")) return env;
    return c.outDir;
}

cxd parse_lambda(const std::string& s) {
    double re = 0.0, im = 0.0;
    if (std::sscanf(s.c_str(), "%lf,%lf", &re, &im) < 1)
        throw std::invalid_argument("lambda must be RE or RE,IM");
    return {re, im};
}

void emit(const Common& c, const std::string& name, const std::string& content) {
    const fs::path dir = out_dir(c);
    fs::create_directories(dir);
    write_file(dir / name, content);
}

int cmd_describe(const Common& c, std::size_t horizon) {
    const ParsedSpec spec = load_spec(c.specPath);
    if (spec.isMatrix()) {
        ordered_json j;
        j["specHash"] = hash_string(spec.hash);
        j["kind"] = "matrix";
        j["d"] = spec.matrix->dim();
        ordered_json chans = ordered_json::array();
        for (const auto& ch : spec.matrix->channels()) {
            const auto& as = ch.asym();
            ordered_json cj;
            cj["ratioLimitA"] = as.ratioLimitA;
            cj["tridiagLimsup"] = as.tridiagLimsup.infinite ? ordered_json("inf")
                                                            : ordered_json(as.tridiagLimsup.value);
            chans.push_back(cj);
        }
        j["channels"] = chans;
        std::cout << j.dump(2) << '\n';
        emit(c, "describe.json", j.dump(2) + "\n");
        return 0;
    }

    const TridiagonalSpace sp = spec.makeSpace();
    const auto& as = sp.asym();
    const BoundednessReport br = boundedness_report(*spec.scalar,
                                                    std::max<std::size_t>(horizon, 16));
    ordered_json j;
    j["specHash"] = hash_string(spec.hash);
    j["kind"] = "scalar";
    ordered_json aj;
    aj["ratioLimitA"] = as.ratioLimitA;
    aj["tridiagLimsup"] =
        as.tridiagLimsup.infinite ? ordered_json("inf") : ordered_json(as.tridiagLimsup.value);
    aj["tridiagLessThanOne"] = as.tridiagLessThanOne;
    aj["cLimitZero"] = as.cLimitZero;
    if (as.tridiagLessThanOne) {
        aj["geomR"] = as.geomR;
        aj["geomN"] = as.geomN;
    }
    j["asymptotics"] = aj;
    j["standingAssumptionUnitRadius"] = sp.unitRadius();
    if (!sp.unitRadius())
        j["warning"] = "kernel radius of convergence differs from 1; proceeding formally";
    j["boundedness"] = boundedness_report_json(br);
    std::cout << j.dump(2) << '\n';
    emit(c, "describe.json", j.dump(2) + "\n");
    return 0;
}

int cmd_classify(const Common& c, const std::string& lambdaStr, const std::string& sweep) {
    const ParsedSpec spec = load_spec(c.specPath);
    const cxd lambda = parse_lambda(lambdaStr);

    if (!sweep.empty()) {
        double lo = 0.0, hi = 0.0;
        int count = 0;
        if (std::sscanf(sweep.c_str(), "%lf:%lf:%d", &lo, &hi, &count) != 3 || count < 2)
            throw std::invalid_argument("sweep must be START:STOP:COUNT with COUNT >= 2");
        std::ostringstream csvOut;
        csvOut << "lambdaAbs,hypercyclic,mixing,chaotic,subspace\n";
        csvOut.precision(17);
        for (int i = 0; i < count; ++i) {
            const double labs = lo + (hi - lo) * i / (count - 1);
            DynamicsReport rep;
            if (spec.isMatrix())
                rep = direct_sum_classify_lambda(*spec.matrix, DynamicsQuery{cxd{labs, 0.0}});
            else
                rep = classify(*spec.scalar, DynamicsQuery{cxd{labs, 0.0}});
            csvOut << labs << ',' << verdict_with_clause(rep.hypercyclic, rep.hypercyclicClause)
                   << ',' << verdict_with_clause(rep.mixing, rep.mixingClause) << ','
                   << verdict_with_clause(rep.chaotic, rep.chaoticClause) << ','
                   << verdict_with_clause(rep.hypercyclicSubspace, rep.subspaceClause) << '\n';
        }
        emit(c, "classify_sweep.csv", csvOut.str());
        std::cout << csvOut.str();
        return 0;
    }

    DynamicsReport rep;
    if (spec.isMatrix()) {
        const DynamicsQuery q{lambda};
        rep = nearly(q.lambdaAbs, 1.0) ? direct_sum_classify(*spec.matrix)
                                       : direct_sum_classify_lambda(*spec.matrix, q);
    } else {
        rep = classify(*spec.scalar, DynamicsQuery{lambda});
    }
    const ordered_json j = dynamics_report_json(rep, spec.hash);
    std::cout << j.dump(2) << '\n';
    emit(c, "classify.json", j.dump(2) + "\n");
    if (c.csv) {
        std::ostringstream row;
        row.precision(17);
        row << "lambdaAbs,hypercyclic,mixing,chaotic,subspace\n"
            << rep.lambdaAbs << ',' << verdict_with_clause(rep.hypercyclic, rep.hypercyclicClause)
            << ',' << verdict_with_clause(rep.mixing, rep.mixingClause) << ','
            << verdict_with_clause(rep.chaotic, rep.chaoticClause) << ','
            << verdict_with_clause(rep.hypercyclicSubspace, rep.subspaceClause) << '\n';
        emit(c, "classify.csv", row.str());
    }
    return 0;
}

int cmd_matrix(const Common& c, std::size_t N) {
    const ParsedSpec spec = load_spec(c.specPath);
    if (spec.isMatrix()) throw std::invalid_argument("matrix command expects a scalar spec");
    const TridiagonalSpace sp = spec.makeSpace();
    const DenseMatrix m = build_matrix(sp, N ? N : spec.options.truncation);
    emit(c, "matrix.csv", matrix_csv(m));
    if (c.json) {
        ordered_json rows = ordered_json::array();
        for (std::size_t i = 0; i < m.rows(); ++i) {
            ordered_json row = ordered_json::array();
            for (std::size_t k = 0; k < m.cols(); ++k)
                row.push_back({m.at(i, k).real(), m.at(i, k).imag()});
            rows.push_back(row);
        }
        ordered_json j;
        j["specHash"] = hash_string(spec.hash);
        j["n"] = m.rows();
        j["entries"] = rows;
        emit(c, "matrix.json", j.dump(2) + "\n");
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "wrote matrix.csv (" << m.rows() << "x" << m.cols() << ")\n";
    }
    return 0;
}

int cmd_decompose(const Common& c, std::size_t N, std::size_t M) {
    const ParsedSpec spec = load_spec(c.specPath);
    if (spec.isMatrix()) throw std::invalid_argument("decompose expects a scalar spec");
    const TridiagonalSpace sp = spec.makeSpace();
    if (N == 0) N = spec.options.truncation;
    if (M == 0) M = N - 1;
    const Decomposition d = decompose(sp, N, M);
    const CompactnessDiagnostic comp = compactness_check(sp, N, spec.options.tolerance);

    ordered_json j;
    j["specHash"] = hash_string(spec.hash);
    j["n"] = d.N;
    j["bands"] = d.M;
    j["residualWithinBands"] = d.residualWithinBands;
    j["residualBeyondBands"] = d.residualBeyondBands;
    ordered_json norms = ordered_json::array();
    for (const auto& band : d.bands) norms.push_back(band.norm);
    j["bandNorms"] = norms;
    ordered_json cj;
    cj["hypothesesHold"] = comp.hypothesesHold;
    cj["certifiedCompact"] = comp.certifiedCompact;
    cj["decayIndex"] = comp.decayIndex;
    cj["tolerance"] = comp.tol;
    cj["note"] = comp.note;
    j["compactness"] = cj;
    std::cout << j.dump(2) << '\n';
    emit(c, "decompose.json", j.dump(2) + "\n");
    return 0;
}

int cmd_spectrum(const Common& c, std::size_t nMax, std::size_t kMax) {
    const ParsedSpec spec = load_spec(c.specPath);
    if (spec.isMatrix()) throw std::invalid_argument("spectrum expects a scalar spec");
    const SpectralAnnulus ann = essential_spectrum(*spec.scalar, nMax, kMax);
    const ordered_json j = annulus_json(ann, spec.hash);
    std::cout << j.dump(2) << '\n';
    emit(c, "spectrum.json", j.dump(2) + "\n");
    return 0;
}

int cmd_norms(const Common& c, std::size_t N, bool allowPartial) {
    const ParsedSpec spec = load_spec(c.specPath);
    if (spec.isMatrix()) throw std::invalid_argument("norms expects a scalar spec");
    const TridiagonalSpace sp = spec.makeSpace();
    if (!sp.tailCertified() && !allowPartial)
        throw UncertifiedError("monomial norms lack a certified tail bound here; "
                               "pass --allow-partial for flagged partial sums");
    const NormEstimateReport rep = norm_estimates(sp, 0, N ? N : 64);

    std::ostringstream csvOut;
    csvOut.precision(17);
    csvOut << "n,norm\n";
    for (std::size_t i = 0; i < rep.norms.size(); ++i)
        csvOut << rep.nBegin + i << ',' << rep.norms[i] << '\n';
    emit(c, "norms.csv", csvOut.str());

    ordered_json j;
    j["specHash"] = hash_string(spec.hash);
    j["certified"] = rep.certified;
    j["m1"] = rep.m1;
    j["m1Valid"] = rep.m1Valid;
    j["m2"] = rep.m2;
    std::cout << j.dump(2) << '\n';
    emit(c, "norms.json", j.dump(2) + "\n");
    return 0;
}

int cmd_orbit(const Common& c, const std::string& lambdaStr, std::size_t basisIndex,
              std::size_t steps, std::size_t N) {
    const ParsedSpec spec = load_spec(c.specPath);
    if (spec.isMatrix()) throw std::invalid_argument("orbit expects a scalar spec");
    const TridiagonalSpace sp = spec.makeSpace();
    if (N == 0) N = spec.options.truncation;
    std::vector<cxd> x(basisIndex + 1, cxd{});
    x[basisIndex] = 1.0;
    const std::vector<double> trace = orbit(sp, DynamicsQuery{parse_lambda(lambdaStr)}, x, steps, N);

    std::ostringstream csvOut;
    csvOut.precision(17);
    csvOut << "k,norm\n";
    for (std::size_t k = 0; k < trace.size(); ++k) csvOut << k << ',' << trace[k] << '\n';
    emit(c, "orbit.csv", csvOut.str());
    std::cout << csvOut.str();
    return 0;
}

int cmd_periodic(const Common& c, const std::string& lambdaStr, std::size_t period,
                 std::size_t K, std::size_t N) {
    const ParsedSpec spec = load_spec(c.specPath);
    if (spec.isMatrix()) throw std::invalid_argument("periodic expects a scalar spec");
    const TridiagonalSpace sp = spec.makeSpace();
    if (N == 0) N = spec.options.truncation;
    const std::vector<cxd> f{cxd{1.0, 0.0}};  // the constant function 1
    const PeriodicVectorResult res =
        periodic_vector(sp, DynamicsQuery{parse_lambda(lambdaStr)}, period, f, K, N);

    ordered_json j;
    j["specHash"] = hash_string(spec.hash);
    j["period"] = period;
    j["K"] = K;
    j["residualNorm"] = res.residualNorm;
    j["experimental"] = res.experimental;
    std::cout << j.dump(2) << '\n';
    emit(c, "periodic.json", j.dump(2) + "\n");
    return 0;
}

int cmd_vector(const Common& c, std::size_t N) {
    const ParsedSpec spec = load_spec(c.specPath);
    if (!spec.isMatrix()) throw std::invalid_argument("vector expects a matrix spec");
    const MatrixKernelSpace& ms = *spec.matrix;

    std::vector<std::size_t> indices;
    for (const auto& [n, m] : ms.rawA()) {
        (void)m;
        if (ms.rawB().count(n)) indices.push_back(n);
    }
    ordered_json j;
    j["specHash"] = hash_string(spec.hash);
    if (!indices.empty()) {
        const DiagDiagnostic dd =
            diagonalization_check(ms, indices, MatrixKernelSpace::kUnitarityTol);
        ordered_json dj;
        dj["pass"] = dd.pass;
        dj["maxDeviation"] = dd.maxDeviation;
        if (!dd.pass) {
            dj["failIndex"] = dd.failIndex;
            dj["failMatrix"] = std::string(1, dd.failMatrix);
            dj["note"] = dd.note;
        }
        j["diagonalization"] = dj;
    }

    // deterministic sample points on two circles
    std::vector<std::pair<cxd, cxd>> samples;
    for (int i = 0; i < 16; ++i) {
        const double th = 2.0 * 3.14159265358979323846 * i / 16.0;
        samples.emplace_back(cxd{0.5 * std::cos(th), 0.5 * std::sin(th)},
                             cxd{0.3 * std::cos(2 * th), 0.3 * std::sin(2 * th)});
    }
    const KernelCheckDiagnostic kc = direct_sum_kernel_check(ms, samples, 1e-10, N ? N : 96);
    ordered_json kj;
    kj["pass"] = kc.pass;
    kj["maxDeviation"] = kc.maxDeviation;
    j["directSumKernel"] = kj;

    j["classification"] = dynamics_report_json(direct_sum_classify(ms), spec.hash);
    std::cout << j.dump(2) << '\n';
    emit(c, "vector.json", j.dump(2) + "\n");
    return 0;
}

int cmd_verify(const Common& c) {
    const ParsedSpec spec = load_spec(c.specPath);
    if (spec.isMatrix()) throw std::invalid_argument("verify expects a scalar spec");
    const TridiagonalSpace sp = spec.makeSpace();
    const std::vector<OracleReport> reps = run_all_oracles(sp);
    const ordered_json j = oracle_reports_json(reps, spec.hash);
    std::cout << j.dump(2) << '\n';
    emit(c, "verify.json", j.dump(2) + "\n");
    for (const auto& r : reps)
        if (!r.pass) return 1;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"backward-shift dynamics on tridiagonal-kernel spaces"};
    app.require_subcommand(1);

    Common c;
    std::string lambdaStr = "1,0";
    std::string sweep;
    std::size_t N = 0, M = 0, nMax = 50, kMax = 2000, horizon = 64;
    std::size_t steps = 16, basisIndex = 0, period = 1, K = 16;
    bool allowPartial = false;

    auto* describe = app.add_subcommand("describe", "asymptotics and boundedness report");
    add_common(describe, c);
    describe->add_option("--horizon", horizon, "advisory numeric horizon");

    auto* classifyCmd = app.add_subcommand("classify", "hypercyclic/mixing/chaotic verdicts");
    add_common(classifyCmd, c);
    classifyCmd->add_option("--lambda", lambdaStr, "scalar lambda as RE,IM");
    classifyCmd->add_option("--sweep", sweep, "modulus grid START:STOP:COUNT (CSV rows)");

    auto* matrixCmd = app.add_subcommand("matrix", "truncated matrix of the shift");
    add_common(matrixCmd, c);
    matrixCmd->add_option("--n", N, "truncation dimension");

    auto* decomposeCmd = app.add_subcommand("decompose", "weighted shift + diagonal + bands");
    add_common(decomposeCmd, c);
    decomposeCmd->add_option("--n", N, "truncation dimension");
    decomposeCmd->add_option("--bands", M, "number of retained bands");

    auto* spectrumCmd = app.add_subcommand("spectrum", "essential-spectrum annulus");
    add_common(spectrumCmd, c);
    spectrumCmd->add_option("--nmax", nMax, "outer horizon");
    spectrumCmd->add_option("--kmax", kMax, "inner horizon");

    auto* normsCmd = app.add_subcommand("norms", "monomial norms and envelope constants");
    add_common(normsCmd, c);
    normsCmd->add_option("--n", N, "number of monomials");
    normsCmd->add_flag("--allow-partial", allowPartial, "accept flagged partial sums");

    auto* orbitCmd = app.add_subcommand("orbit", "orbit norm trace of a basis vector");
    add_common(orbitCmd, c);
    orbitCmd->add_option("--lambda", lambdaStr, "scalar lambda as RE,IM");
    orbitCmd->add_option("--basis-index", basisIndex, "start vector f_k");
    orbitCmd->add_option("--steps", steps, "number of iterates");
    orbitCmd->add_option("--n", N, "truncation dimension");

    auto* periodicCmd = app.add_subcommand("periodic", "truncated periodic-vector construction");
    add_common(periodicCmd, c);
    periodicCmd->add_option("--lambda", lambdaStr, "scalar lambda as RE,IM");
    periodicCmd->add_option("--period", period, "period p");
    periodicCmd->add_option("--K", K, "series truncation");
    periodicCmd->add_option("--n", N, "matrix truncation");

    auto* vectorCmd = app.add_subcommand("vector", "matrix-kernel checks and classification");
    add_common(vectorCmd, c);
    vectorCmd->add_option("--n", N, "kernel truncation");

    auto* verifyCmd = app.add_subcommand("verify", "run all independent oracles");
    add_common(verifyCmd, c);

    CLI11_PARSE(app, argc, argv);

    try {
        if (describe->parsed()) return cmd_describe(c, horizon);
        if (classifyCmd->parsed()) return cmd_classify(c, lambdaStr, sweep);
        if (matrixCmd->parsed()) return cmd_matrix(c, N);
        if (decomposeCmd->parsed()) return cmd_decompose(c, N, M);
        if (spectrumCmd->parsed()) return cmd_spectrum(c, nMax, kMax);
        if (normsCmd->parsed()) return cmd_norms(c, N, allowPartial);
        if (orbitCmd->parsed()) return cmd_orbit(c, lambdaStr, basisIndex, steps, N);
        if (periodicCmd->parsed()) return cmd_periodic(c, lambdaStr, period, K, N);
        if (vectorCmd->parsed()) return cmd_vector(c, N);
        if (verifyCmd->parsed()) return cmd_verify(c);
    } catch (const SpecParseError& e) {
        std::cerr << "spec error: " << e.what() << '\n';
        return 2;
    } catch (const UncertifiedError& e) {
        std::cerr << "uncertified: " << e.what() << '\n';
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
