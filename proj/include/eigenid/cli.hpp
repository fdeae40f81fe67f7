#pragma once

// Command layer.  Each cmd_* function is callable in-process (streams
// injected) and returns the process exit code: 0 success, 1 validation,
// 2 parse, 3 non-convergence, 4 method precondition.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eigenid/complex_matrix.hpp"
#include "eigenid/eigensolve.hpp"
#include "eigenid/errors.hpp"
#include "eigenid/identity.hpp"
#include "eigenid/matrix_io.hpp"
#include "eigenid/phase.hpp"
#include "eigenid/spectral.hpp"
#include "eigenid/verify.hpp"

namespace eigenid {

struct CliOptions {
    bool json = false;
    std::string method = "identity";
    std::size_t index = 1;
    double tol = -1.0;
    std::uint64_t seed = 0;
    std::size_t threads = 0;
    std::size_t repeat = 5;
};

namespace detail {

inline std::string fmt17(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string fmt12(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline std::size_t resolve_threads(std::size_t flag) {
    if (flag > 0) return flag;
    if (const char* env = std::getenv("EIGENID_THREADS")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return 1;
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const FileParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const NoConvergence& e) {
        err << "non-convergence: " << e.what() << "\n";
        return 3;
    } catch (const DegenerateEigenvalue& e) {
        err << "method precondition failed: " << e.what() << "\n";
        return 4;
    } catch (const DegenerateSpectrum& e) {
        err << "method precondition failed: " << e.what() << "\n";
        return 4;
    } catch (const SingularShift& e) {
        err << "method precondition failed: " << e.what() << "\n";
        return 4;
    } catch (const IllConditioned& e) {
        err << "method precondition failed: " << e.what() << "\n";
        return 4;
    } catch (const ProbeTooCloseToPole& e) {
        err << "method precondition failed: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        err << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "validation error: " << e.what() << "\n";
        return 1;
    }
}

inline HermitianMatrix load_hermitian(const std::string& path) {
    return validate_hermitian(read_matrix_file(path));
}

// n x n magnitude tables computed entry by entry for the simple-spectrum
// methods; throws when a precondition fails.
inline std::vector<std::vector<double>> charpoly_table(const HermitianMatrix& a,
                                                       const Spectrum& sA,
                                                       const std::vector<Spectrum>& minors) {
    const std::size_t n = a.n();
    std::vector<std::vector<double>> q(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= n; ++j)
            q[i - 1][j - 1] = magnitude_sq_charpoly(sA, minors[j - 1], i);
    return q;
}

inline std::vector<std::vector<double>> alternate_table(const HermitianMatrix& a,
                                                        const Spectrum& sA) {
    const std::size_t n = a.n();
    std::vector<std::vector<double>> q(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= n; ++j)
            q[i - 1][j - 1] = magnitude_alternate(a, sA.value(i), j);
    return q;
}

inline std::vector<std::vector<double>> values_of(const MagnitudeTable& t) {
    const std::size_t n = t.n();
    std::vector<std::vector<double>> q(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= n; ++j) q[i - 1][j - 1] = t.value(i, j);
    return q;
}

inline void print_magnitude_json(std::ostream& out, const std::string& method,
                                 const Spectrum& sA, const MultiplicityGrouping* grouping,
                                 const std::vector<std::vector<double>>& q) {
    const std::size_t n = sA.size();
    out << "{\"n\": " << n << ", \"method\": \"" << method << "\", \"eigenvalues\": [";
    for (std::size_t i = 1; i <= n; ++i) out << (i > 1 ? ", " : "") << fmt17(sA.value(i));
    out << "], \"groups\": [";
    if (grouping) {
        bool first = true;
        for (const auto& g : grouping->groups()) {
            out << (first ? "" : ", ") << "[" << g.first << ", " << g.last << "]";
            first = false;
        }
    } else {
        for (std::size_t i = 1; i <= n; ++i)
            out << (i > 1 ? ", " : "") << "[" << i << ", " << i << "]";
    }
    out << "], \"values\": [";
    for (std::size_t i = 0; i < n; ++i) {
        out << (i ? ", [" : "[");
        for (std::size_t j = 0; j < n; ++j) out << (j ? ", " : "") << fmt17(q[i][j]);
        out << "]";
    }
    out << "]}\n";
}

inline void print_magnitude_table(std::ostream& out, const std::string& method,
                                  const Spectrum& sA, const MultiplicityGrouping* grouping,
                                  const std::vector<std::vector<double>>& q) {
    const std::size_t n = sA.size();
    out << "magnitude table  n = " << n << "  method = " << method << "\n";
    out << std::left << std::setw(12) << "i" << std::setw(22) << "lambda";
    for (std::size_t j = 1; j <= n; ++j) out << std::setw(18) << ("j=" + std::to_string(j));
    out << "\n";
    auto row = [&](const std::string& label, double lambda, const std::vector<double>& vals) {
        out << std::left << std::setw(12) << label << std::setw(22) << fmt12(lambda);
        for (double v : vals) out << std::setw(18) << fmt12(v);
        out << "\n";
    };
    if (grouping) {
        for (const auto& g : grouping->groups()) {
            std::string label = g.multiplicity() == 1
                                    ? std::to_string(g.first)
                                    : "[" + std::to_string(g.first) + ".." + std::to_string(g.last) + "]";
            row(label, g.representative, q[g.first - 1]);
        }
    } else {
        for (std::size_t i = 1; i <= n; ++i) row(std::to_string(i), sA.value(i), q[i - 1]);
    }
}

} // namespace detail

inline int cmd_eig(const std::string& path, const CliOptions& opts, std::ostream& out,
                   std::ostream& err) {
    return detail::guarded(err, [&]() {
        HermitianMatrix a = detail::load_hermitian(path);
        Spectrum s = spectrum_of(a);
        if (opts.json) {
            out << "{\"n\": " << s.size() << ", \"eigenvalues\": [";
            for (std::size_t i = 1; i <= s.size(); ++i)
                out << (i > 1 ? ", " : "") << detail::fmt17(s.value(i));
            out << "]}\n";
        } else {
            for (std::size_t i = 1; i <= s.size(); ++i)
                out << (i > 1 ? " " : "") << detail::fmt12(s.value(i));
            out << "\n";
        }
        return 0;
    });
}

inline int cmd_magnitudes(const std::string& path, const CliOptions& opts, std::ostream& out,
                          std::ostream& err) {
    return detail::guarded(err, [&]() {
        HermitianMatrix a = detail::load_hermitian(path);
        std::size_t threads = detail::resolve_threads(opts.threads);
        if (opts.method == "identity" || opts.method == "oracle") {
            MagnitudeTable t = opts.method == "identity"
                                   ? magnitude_table(a, opts.tol, threads)
                                   : magnitude_table_oracle(a, opts.tol);
            auto q = detail::values_of(t);
            if (opts.json)
                detail::print_magnitude_json(out, opts.method, t.spectrum(), &t.grouping(), q);
            else
                detail::print_magnitude_table(out, opts.method, t.spectrum(), &t.grouping(), q);
        } else if (opts.method == "charpoly" || opts.method == "alternate") {
            Spectrum sA = spectrum_of(a);
            std::vector<std::vector<double>> q;
            if (opts.method == "charpoly")
                q = detail::charpoly_table(a, sA, minor_spectra(a, threads));
            else
                q = detail::alternate_table(a, sA);
            if (opts.json)
                detail::print_magnitude_json(out, opts.method, sA, nullptr, q);
            else
                detail::print_magnitude_table(out, opts.method, sA, nullptr, q);
        } else {
            throw FileParseError("unknown method: " + opts.method);
        }
        return 0;
    });
}

inline int cmd_reconstruct(const std::string& path, const CliOptions& opts, std::ostream& out,
                           std::ostream& err) {
    return detail::guarded(err, [&]() {
        HermitianMatrix a = detail::load_hermitian(path);
        ReconstructedVector v = reconstruct_eigenvector(a, opts.index);
        const std::size_t n = a.n();

        double res = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            cdouble acc = -v.lambda * v.components[r];
            for (std::size_t c = 0; c < n; ++c) acc += a(r, c) * v.components[c];
            res += std::norm(acc);
        }
        res = std::sqrt(res);

        if (opts.json) {
            out << "{\"index\": " << v.i << ", \"lambda\": " << detail::fmt17(v.lambda)
                << ", \"pivot\": " << v.pivot << ", \"real\": [";
            for (std::size_t r = 0; r < n; ++r)
                out << (r ? ", " : "") << detail::fmt17(v.components[r].real());
            out << "], \"imag\": [";
            for (std::size_t r = 0; r < n; ++r)
                out << (r ? ", " : "") << detail::fmt17(v.components[r].imag());
            out << "], \"undefined_phase\": [";
            bool first = true;
            for (std::size_t r = 1; r <= n; ++r)
                if (v.undefined_phase[r - 1]) {
                    out << (first ? "" : ", ") << r;
                    first = false;
                }
            out << "], \"residual\": " << detail::fmt17(res) << "}\n";
        } else {
            out << "eigenvector  index = " << v.i << "  lambda = " << detail::fmt12(v.lambda)
                << "  pivot = " << v.pivot << "\n";
            for (std::size_t r = 0; r < n; ++r) {
                out << "j=" << std::left << std::setw(10) << std::to_string(r + 1)
                    << std::setw(22) << detail::fmt12(v.components[r].real()) << std::setw(22)
                    << detail::fmt12(v.components[r].imag());
                if (v.undefined_phase[r]) out << "(phase undefined)";
                out << "\n";
            }
            out << "residual = " << detail::fmt12(res) << "\n";
        }
        return 0;
    });
}

inline int cmd_verify(const std::string& path, const CliOptions& opts, std::ostream& out,
                      std::ostream& err) {
    return detail::guarded(err, [&]() {
        HermitianMatrix a = detail::load_hermitian(path);
        bool all_passed = true;
        for (const CheckReport& r : run_full_suite(a, opts.seed)) {
            out << to_json_line(r) << "\n";
            all_passed = all_passed && r.passed;
        }
        return all_passed ? 0 : 1;
    });
}

inline int cmd_stability(const std::string& path, const CliOptions& opts, std::ostream& out,
                         std::ostream& err) {
    return detail::guarded(err, [&]() {
        HermitianMatrix a = detail::load_hermitian(path);
        std::size_t threads = detail::resolve_threads(opts.threads);
        std::size_t repeat = opts.repeat > 0 ? opts.repeat : 1;

        struct PathResult {
            std::string name;
            bool skipped = false;
            std::string reason;
            double deviation = 0.0;
            double mean_ms = 0.0;
            std::vector<std::vector<double>> values;
        };

        auto timed = [&](const std::string& name, auto&& fn) {
            PathResult pr;
            pr.name = name;
            try {
                double total_ms = 0.0;
                for (std::size_t r = 0; r < repeat; ++r) {
                    auto t0 = std::chrono::steady_clock::now();
                    pr.values = fn();
                    auto t1 = std::chrono::steady_clock::now();
                    total_ms += std::chrono::duration<double, std::milli>(t1 - t0).count();
                }
                pr.mean_ms = total_ms / static_cast<double>(repeat);
            } catch (const Error& e) {
                pr.skipped = true;
                pr.reason = e.what();
            }
            return pr;
        };

        std::vector<PathResult> paths;
        paths.push_back(timed("identity", [&] {
            return detail::values_of(magnitude_table(a, opts.tol, threads));
        }));
        paths.push_back(timed("charpoly", [&] {
            Spectrum sA = spectrum_of(a);
            return detail::charpoly_table(a, sA, minor_spectra(a, threads));
        }));
        paths.push_back(timed("alternate", [&] {
            return detail::alternate_table(a, spectrum_of(a));
        }));
        paths.push_back(timed("oracle", [&] {
            return detail::values_of(magnitude_table_oracle(a, opts.tol));
        }));

        const auto& oracle = paths.back();
        const std::size_t n = a.n();
        auto table_dev = [n](const std::vector<std::vector<double>>& x,
                             const std::vector<std::vector<double>>& y) {
            double d = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) d = std::max(d, std::abs(x[i][j] - y[i][j]));
            return d;
        };
        for (auto& p : paths)
            if (!p.skipped && !oracle.skipped) p.deviation = table_dev(p.values, oracle.values);
        double max_pairwise = 0.0;
        for (std::size_t x = 0; x < paths.size(); ++x)
            for (std::size_t y = x + 1; y < paths.size(); ++y)
                if (!paths[x].skipped && !paths[y].skipped)
                    max_pairwise =
                        std::max(max_pairwise, table_dev(paths[x].values, paths[y].values));

        if (opts.json) {
            out << "{\"n\": " << n << ", \"repeat\": " << repeat << ", \"paths\": [";
            for (std::size_t p = 0; p < paths.size(); ++p) {
                const auto& pr = paths[p];
                out << (p ? ", " : "") << "{\"name\": \"" << pr.name << "\", \"skipped\": "
                    << (pr.skipped ? "true" : "false");
                if (pr.skipped)
                    out << ", \"reason\": \"" << pr.reason << "\"";
                else
                    out << ", \"deviation\": " << detail::fmt17(pr.deviation)
                        << ", \"mean_ms\": " << detail::fmt17(pr.mean_ms);
                out << "}";
            }
            out << "], \"max_pairwise_deviation\": " << detail::fmt17(max_pairwise) << "}\n";
        } else {
            out << "stability  n = " << n << "  repeat = " << repeat << "\n";
            out << std::left << std::setw(12) << "path" << std::setw(22) << "max|q - oracle|"
                << std::setw(14) << "mean ms" << "\n";
            for (const auto& pr : paths) {
                out << std::left << std::setw(12) << pr.name;
                if (pr.skipped)
                    out << "skipped (" << pr.reason << ")";
                else
                    out << std::setw(22) << detail::fmt12(pr.deviation) << std::setw(14)
                        << detail::fmt12(pr.mean_ms);
                out << "\n";
            }
            out << "max pairwise deviation = " << detail::fmt12(max_pairwise) << "\n";
        }
        return 0;
    });
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"eigenvector magnitudes, phases, and identity checks from eigenvalue data"};
    app.name("eigenid");
    app.require_subcommand(1);

    std::string path;
    CliOptions opts;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("file", path, "matrix file (JSON: n, real, optional imag)")->required();
        sub->add_flag("--json", opts.json, "machine-readable output, 17 significant digits");
        sub->add_option("--method", opts.method, "magnitude path")
            ->check(CLI::IsMember({"identity", "charpoly", "alternate", "oracle"}));
        sub->add_option("--index", opts.index, "eigenvalue index, 1-based ascending");
        sub->add_option("--tol", opts.tol, "multiplicity grouping tolerance override");
        sub->add_option("--seed", opts.seed, "seed for the verification suite");
        sub->add_option("--threads", opts.threads, "worker threads (default: EIGENID_THREADS or 1)");
        sub->add_option("--repeat", opts.repeat, "stability repetitions per path");
        return sub;
    };
    CLI::App* eig = add_common(app.add_subcommand("eig", "sorted eigenvalues"));
    CLI::App* mag = add_common(app.add_subcommand("magnitudes", "squared component magnitudes"));
    CLI::App* rec = add_common(app.add_subcommand("reconstruct", "eigenvector with recovered phases"));
    CLI::App* ver = add_common(app.add_subcommand("verify", "run the full check suite"));
    CLI::App* sta = add_common(app.add_subcommand("stability", "compare magnitude paths"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    }

    if (eig->parsed()) return cmd_eig(path, opts, out, err);
    if (mag->parsed()) return cmd_magnitudes(path, opts, out, err);
    if (rec->parsed()) return cmd_reconstruct(path, opts, out, err);
    if (ver->parsed()) return cmd_verify(path, opts, out, err);
    if (sta->parsed()) return cmd_stability(path, opts, out, err);
    err << "parse error: no command\n";
    return 2;
}

} // namespace eigenid
