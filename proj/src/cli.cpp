#include "atrid/cli.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "atrid/dense.hpp"
#include "atrid/errors.hpp"
#include "atrid/factor.hpp"
#include "atrid/flops.hpp"
#include "atrid/linalg.hpp"
#include "atrid/nnet.hpp"
#include "atrid/oracle.hpp"
#include "atrid/structured.hpp"

namespace atrid::cli {

namespace {

// ---------------------------------------------------------------------
// small shared helpers

CornerFlags parse_corners(const std::string& s) {
    if (s == "none") return {false, false};
    if (s == "d1") return {true, false};
    if (s == "d2") return {false, true};
    if (s == "both") return {true, true};
    throw CLI::ValidationError("--corners", "expected one of none|d1|d2|both");
}

std::uint64_t trial_seed(std::uint64_t base, std::uint64_t order, std::uint64_t trial) {
    // splitmix-style mix so per-trial streams are independent yet
    // reproducible from the base seed
    std::uint64_t x = base ^ (order * 0x9e3779b97f4a7c15ull) ^ (trial + 0x632be59bd9b4e019ull);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

double time_ns(const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::nano>(t1 - t0).count();
}

/// One warm-up run discarded, then the median of five repetitions; each
/// repetition averages `reps` inner calls so sub-microsecond work still
/// lands above the clock granularity.
double measure_ns(const std::function<void()>& fn, std::size_t reps) {
    fn();
    std::array<double, 5> samples{};
    for (auto& s : samples) {
        const double total = time_ns([&] {
            for (std::size_t r = 0; r < reps; ++r) fn();
        });
        s = total / static_cast<double>(reps);
    }
    std::sort(samples.begin(), samples.end());
    return samples[2];
}

double fit_loglog_slope(const std::vector<double>& n, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t k = 0;
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (!(y[i] > 0.0)) continue;
        const double x = std::log(n[i]), v = std::log(y[i]);
        sx += x;
        sy += v;
        sxx += x * x;
        sxy += x * v;
        ++k;
    }
    if (k < 2) return std::numeric_limits<double>::quiet_NaN();
    const double d = static_cast<double>(k);
    return (sxy - sx * sy / d) / (sxx - sx * sx / d);
}

std::ostream& open_or_stdout(const std::string& path, std::ofstream& file, std::ostream& out) {
    if (path.empty()) return out;
    file.open(path, std::ios::binary);
    if (!file) throw ParseError(0, 0, "cannot open '" + path + "' for writing");
    return file;
}

constexpr const char* kCsvHeader = "n,method,op,trial,seed,elapsed_ns,flops,eps_r,overflow";

struct CsvRow {
    std::size_t n = 0;
    std::string method;
    std::string op;
    std::string trial;       // empty marks a per-order aggregate row
    std::string seed;
    std::string elapsed_ns;  // empty when timing is suppressed or absent
    std::string flops;
    std::string eps_r;
    std::string overflow;
};

void emit(std::ostream& os, const CsvRow& r) {
    os << r.n << ',' << r.method << ',' << r.op << ',' << r.trial << ',' << r.seed << ','
       << r.elapsed_ns << ',' << r.flops << ',' << r.eps_r << ',' << r.overflow << '\n';
}

std::string fmt_ns(double ns, bool suppressed) {
    if (suppressed) return "";
    return std::to_string(static_cast<long long>(ns < 1.0 ? 1.0 : ns));
}

// ---------------------------------------------------------------------
// subcommands

int cmd_gen(std::size_t n, double margin, const std::string& corners, std::uint64_t seed,
            const std::string& out_path, std::ostream& out) {
    StructuredMatrix m = random_dominant(n, margin, parse_corners(corners), seed);
    if (out_path.empty())
        out << write_matrix(m);
    else
        write_matrix_file(out_path, m);
    return 0;
}

int cmd_factor(const std::string& path, bool dump, std::ostream& out) {
    StructuredMatrix m = read_matrix_file(path);
    Factorization f = factorize(m);
    auto print_seq = [&out](const char* name, std::span<const double> xs) {
        out << name;
        for (double v : xs) out << ' ' << format_double(v);
        out << '\n';
    };
    print_seq("lambda", f.lambda());
    print_seq("zeta", f.zeta());
    print_seq("pivots", f.pivots());
    out << "mu " << format_double(f.mu()) << '\n';
    if (dump) {
        out << "theta\n";
        write_dense(out, materialize_factor(f, Factor::theta));
        out << "psi\n";
        write_dense(out, materialize_factor(f, Factor::psi));
        out << "r\n";
        write_dense(out, materialize_factor(f, Factor::r));
    }
    return 0;
}

int cmd_det(const std::string& path, std::ostream& out) {
    StructuredMatrix m = read_matrix_file(path);
    Factorization f = factorize(m, Growth::extended);
    DetResult d = determinant(f);
    if (d.sign == 0) throw SingularError("mu_n = 0");
    out << "sign " << d.sign << '\n';
    out << "value " << format_double(d.value) << '\n';
    out << "log_abs " << format_double(d.log_abs) << '\n';
    return 0;
}

int cmd_inv(const std::string& path, const std::string& out_path, std::ostream& out) {
    StructuredMatrix m = read_matrix_file(path);
    DenseMatrix inv = inverse(factorize(m));
    std::ofstream file;
    write_dense(open_or_stdout(out_path, file, out), inv);
    return 0;
}

int cmd_solve(const std::string& path, const std::string& rhs_path, std::ostream& out) {
    StructuredMatrix m = read_matrix_file(path);
    std::vector<double> rhs = read_vector_file(rhs_path);
    if (rhs.size() != m.order())
        throw ShapeError("rhs has " + std::to_string(rhs.size()) + " entries, expected " +
                         std::to_string(m.order()));
    SolveResult sol = solve(factorize(m, Growth::extended), rhs);
    out << "x";
    for (double v : sol.x) out << ' ' << format_double(v);
    out << '\n';
    out << "residual_inf " << format_double(sol.residual_inf) << '\n';
    return 0;
}

int cmd_pinv_solve(const std::string& path, const std::string& rhs_path, std::size_t rows,
                   std::ostream& out) {
    RectangularSystem sys(read_matrix_file(path), rows);
    std::vector<double> rhs = read_vector_file(rhs_path);
    if (rhs.size() != sys.rows)
        throw ShapeError("rhs has " + std::to_string(rhs.size()) + " entries, expected " +
                         std::to_string(sys.rows));
    SolveResult sol = pseudo_solve(sys, rhs);
    out << "x";
    for (double v : sol.x) out << ' ' << format_double(v);
    out << '\n';
    out << "residual_inf " << format_double(sol.residual_inf) << '\n';

    // Reported, not asserted: this path does not promise least-squares
    // optimality, so show the gap to the normal-equations solution.
    auto lsq = oracle::normal_eq_lsq(to_dense(sys), rhs);
    out << "normal_eq_deviation_inf " << format_double(max_abs_diff(sol.x, lsq)) << '\n';
    return 0;
}

int cmd_bench_error(const std::vector<std::size_t>& orders, std::size_t trials, double margin,
                    std::uint64_t seed, const std::string& out_path, bool no_timing,
                    std::ostream& out) {
    std::ofstream file;
    std::ostream& os = open_or_stdout(out_path, file, out);
    os << kCsvHeader << '\n';
    for (std::size_t n : orders) {
        if (n < 2) throw ShapeError("bench-error orders must be >= 2");
        double sum_eps = 0.0;
        std::size_t ok = 0, overflowed = 0;
        for (std::size_t t = 0; t < trials; ++t) {
            const std::uint64_t s = trial_seed(seed, n, t);
            StructuredMatrix m =
                random_dominant(n, margin, CornerFlags{n >= 3, n >= 3}, s);
            CsvRow row{.n = n,
                       .method = "structured",
                       .op = "inverse",
                       .trial = std::to_string(t),
                       .seed = std::to_string(s),
                       .overflow = "0"};
            try {
                flops::Counter fc;
                DenseMatrix inv_structured;
                const double ns = time_ns([&] {
                    flops::Region guard(fc);
                    inv_structured = inverse(factorize(m));
                });
                DenseMatrix inv_lu = oracle::lu_invert(oracle::lu_decompose(to_dense(m)));
                const double eps = oracle::relative_error_inf(inv_structured, inv_lu);
                row.elapsed_ns = fmt_ns(ns, no_timing);
                row.flops = std::to_string(fc.total());
                row.eps_r = format_double(eps);
                sum_eps += eps;
                ++ok;
            } catch (const OverflowError&) {
                row.overflow = "1";
                ++overflowed;
            }
            emit(os, row);
        }
        if (trials > 0) {
            CsvRow mean{.n = n, .method = "structured", .op = "inverse"};
            if (ok > 0) mean.eps_r = format_double(sum_eps / static_cast<double>(ok));
            mean.overflow = std::to_string(overflowed);
            emit(os, mean);
        }
    }
    return 0;
}

struct TimeCase {
    std::string method;
    std::string op;
    std::function<void()> body;
    bool ran = false;
};

int cmd_bench_time(const std::vector<std::size_t>& orders, std::size_t trials,
                   const std::vector<std::string>& methods, const std::string& op, double margin,
                   std::uint64_t seed, const std::string& out_path, bool no_timing,
                   std::ostream& out, std::ostream& report) {
    if (op != "solve" && op != "inverse")
        throw CLI::ValidationError("--op", "expected solve or inverse");
    std::ofstream file;
    std::ostream& os = open_or_stdout(out_path, file, out);
    os << kCsvHeader << '\n';

    struct Series {
        std::vector<double> orders, elapsed, flops;
    };
    std::map<std::string, Series> series;

    for (std::size_t n : orders) {
        std::map<std::string, std::pair<double, std::size_t>> mean_acc;
        for (std::size_t t = 0; t < trials; ++t) {
            const std::uint64_t s = trial_seed(seed, n, t);
            StructuredMatrix m =
                random_dominant(n, margin, CornerFlags{n >= 3, n >= 3}, s);
            DenseMatrix dense;  // dense copy only for the dense baselines
            const bool needs_dense =
                std::any_of(methods.begin(), methods.end(),
                            [](const std::string& v) { return v != "structured"; });
            if (needs_dense) dense = to_dense(m);
            std::vector<double> rhs;
            if (op == "solve") rhs = m.apply(std::vector<double>(n, 1.0));

            for (const std::string& method : methods) {
                std::function<void()> body;
                if (method == "structured" && op == "solve")
                    body = [&] { solve(factorize(m, Growth::extended), rhs); };
                else if (method == "structured" && op == "inverse")
                    body = [&] { inverse(factorize(m)); };
                else if (method == "lu" && op == "solve")
                    body = [&] { oracle::lu_solve(oracle::lu_decompose(dense), rhs); };
                else if (method == "lu" && op == "inverse")
                    body = [&] { oracle::lu_invert(oracle::lu_decompose(dense)); };
                else if (method == "gauss_jordan" && op == "inverse")
                    body = [&] { oracle::gj_invert(dense); };
                else if (method == "pinv_normal_eq" && op == "solve")
                    body = [&] { oracle::normal_eq_lsq(dense, rhs); };
                else if (method == "pinv_normal_eq" && op == "inverse")
                    body = [&] {
                        // Moore-Penrose style baseline: (A^T A)^-1 A^T
                        DenseMatrix at = dense.transposed();
                        DenseMatrix ata = multiply(at, dense);
                        multiply(oracle::lu_invert(oracle::lu_decompose(ata)), at);
                    };
                else
                    throw CLI::ValidationError("--methods",
                                               "method '" + method + "' does not support op '" +
                                                   op + "'");

                CsvRow row{.n = n,
                           .method = method,
                           .op = op,
                           .trial = std::to_string(t),
                           .seed = std::to_string(s),
                           .overflow = "0"};
                try {
                    flops::Counter fc;
                    {
                        flops::Region guard(fc);
                        body();
                    }
                    const std::size_t reps =
                        method == "structured" ? std::max<std::size_t>(1, 4096 / n) : 1;
                    const double ns = measure_ns(body, reps);
                    row.elapsed_ns = fmt_ns(ns, no_timing);
                    row.flops = std::to_string(fc.total());
                    auto& acc = mean_acc[method];
                    acc.first += ns;
                    ++acc.second;
                    auto& ser = series[method];
                    ser.orders.push_back(static_cast<double>(n));
                    ser.elapsed.push_back(ns);
                    ser.flops.push_back(static_cast<double>(fc.total()));
                } catch (const OverflowError&) {
                    row.overflow = "1";
                }
                emit(os, row);
            }
        }
        for (const auto& [method, acc] : mean_acc) {
            CsvRow mean{.n = n, .method = method, .op = op};
            if (acc.second > 0 && !no_timing)
                mean.elapsed_ns = fmt_ns(acc.first / static_cast<double>(acc.second), false);
            emit(os, mean);
        }
    }

    for (const auto& [method, ser] : series) {
        report << "slope " << method << ' ' << op
               << " elapsed=" << format_double(fit_loglog_slope(ser.orders, ser.elapsed))
               << " flops=" << format_double(fit_loglog_slope(ser.orders, ser.flops)) << '\n';
    }
    return 0;
}

int cmd_flops(std::size_t n, const std::string& corners, double margin, std::uint64_t seed,
              std::ostream& out) {
    StructuredMatrix m = random_dominant(n, margin, parse_corners(corners), seed);
    const auto count = [](const std::function<void()>& fn) {
        return flops::counted([&] { fn(); }).total();
    };

    Factorization f = factorize(m, Growth::extended);
    const auto fact_flops = count([&] { factorize(m, Growth::extended); });
    std::vector<double> rhs = m.apply(std::vector<double>(n, 1.0));
    const auto solve_flops = count([&] { solve(f, rhs); });

    out << "n " << n << '\n';
    out << "factorize " << fact_flops << "  (closed-form target 7n-8 = "
        << (7 * static_cast<long long>(n) - 8) << ")\n";
    out << "solve " << solve_flops << '\n';
    if (f.plain_ok()) {
        const auto rinv_flops = count([&] { r_inverse(f); });
        const auto inv_flops = count([&] { inverse(f); });
        out << "r_inverse " << rinv_flops << '\n';
        out << "inverse " << inv_flops << '\n';
        DenseMatrix dense = to_dense(m);
        const auto lu_flops = count([&] { oracle::lu_invert(oracle::lu_decompose(dense)); });
        out << "lu_invert " << lu_flops << "  (~2n^3 = " << (2 * n * n * n) << ")\n";
    } else {
        out << "r_inverse skipped (lambda out of double range at this order)\n";
    }
    return 0;
}

int cmd_train_demo(const std::string& data_path, std::size_t hidden, std::size_t targets,
                   std::uint64_t seed, const std::string& out_path, std::ostream& out) {
    auto [x, t] = nnet::load_csv_file(data_path, targets);
    nnet::TrainingProblem p{.x = x, .t = t, .hidden = hidden, .seed = seed};

    nnet::TrainedModel model = [&] {
        try {
            return nnet::train(p);
        } catch (const SingularError& e) {
            throw SingularError(std::string(e.what()) +
                                " (pruned system unsolvable; increase the dominance margin)");
        } catch (const BreakdownError& e) {
            throw BreakdownError(e.index(),
                                 std::string(e.what()) +
                                     " (pruned system unsolvable; increase the dominance margin)");
        }
    }();

    out << "samples " << x.rows() << " features " << x.cols() << " targets " << t.cols()
        << " hidden " << hidden << '\n';
    out << "method "
        << (model.method == nnet::TrainMethod::structured ? "structured" : "dense_lsq_fallback")
        << '\n';
    out << "train_loss " << format_double(model.train_loss) << '\n';
    out << "structured_solves " << model.structured_solves << '\n';
    out << "gradient_iterations " << model.gradient_iterations << '\n';

    if (model.method == nnet::TrainMethod::structured) {
        // Dense oracle on the same pruned system, for agreement and timing.
        DenseMatrix pruned = to_dense(model.g_structured);
        DenseMatrix w_lu(hidden, t.cols());
        std::vector<double> col(x.rows());
        const double lu_ns = time_ns([&] {
            auto lu = oracle::lu_decompose(pruned);
            for (std::size_t k = 0; k < t.cols(); ++k) {
                for (std::size_t i = 0; i < x.rows(); ++i) col[i] = t(i, k);
                auto sol = oracle::lu_solve(lu, col);
                for (std::size_t i = 0; i < hidden; ++i) w_lu(i, k) = sol[i];
            }
        });
        Factorization f = factorize(model.g_structured);
        const double structured_ns = time_ns([&] {
            for (std::size_t k = 0; k < t.cols(); ++k) {
                for (std::size_t i = 0; i < x.rows(); ++i) col[i] = t(i, k);
                solve(f, col);
            }
        });
        double agree = 0.0;
        for (std::size_t i = 0; i < hidden; ++i)
            for (std::size_t k = 0; k < t.cols(); ++k)
                agree = std::max(agree, std::fabs(model.w_out(i, k) - w_lu(i, k)));
        const double lu_loss =
            [&] {
                DenseMatrix pred = multiply(pruned, w_lu);
                double s = 0.0;
                for (std::size_t i = 0; i < pred.rows(); ++i)
                    for (std::size_t j = 0; j < pred.cols(); ++j) {
                        const double d = pred(i, j) - t(i, j);
                        s += d * d;
                    }
                return s / static_cast<double>(pred.rows() * pred.cols());
            }();
        out << "oracle_train_loss " << format_double(lu_loss) << '\n';
        out << "weight_agreement_inf " << format_double(agree) << '\n';
        out << "structured_solve_ns " << format_double(structured_ns) << '\n';
        out << "lu_solve_ns " << format_double(lu_ns) << '\n';
    }

    if (!out_path.empty()) {
        std::ofstream mf(out_path, std::ios::binary);
        if (!mf) throw ParseError(0, 0, "cannot open '" + out_path + "' for writing");
        mf << "atrid-model\n";
        mf << "method "
           << (model.method == nnet::TrainMethod::structured ? "structured"
                                                             : "dense_lsq_fallback")
           << '\n';
        mf << "activation " << (model.activation == nnet::Activation::tanh_act ? "tanh" : "identity")
           << '\n';
        mf << "g_structured\n" << write_matrix(model.g_structured);
        mf << "w_in\n";
        write_dense(mf, model.w_in);
        mf << "bias";
        for (double v : model.bias) mf << ' ' << format_double(v);
        mf << '\n';
        mf << "w_out\n";
        write_dense(mf, model.w_out);
        mf << "train_loss " << format_double(model.train_loss) << '\n';
        out << "model_written " << out_path << '\n';
    }
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"structured almost-tridiagonal linear algebra toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a random dominant matrix");
    std::size_t gen_n = 8;
    double gen_margin = 0.5;
    std::string gen_corners = "none";
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    gen->add_option("--n", gen_n, "matrix order")->required();
    gen->add_option("--margin", gen_margin, "dominance margin");
    gen->add_option("--corners", gen_corners, "none|d1|d2|both");
    gen->add_option("--seed", gen_seed, "rng seed");
    gen->add_option("--out", gen_out, "output file (default stdout)");

    // factor
    auto* factor_cmd = app.add_subcommand("factor", "print the factorization sequences");
    std::string factor_file;
    bool factor_dump = false;
    factor_cmd->add_option("file", factor_file, "matrix file")->required();
    factor_cmd->add_flag("--dump", factor_dump, "also print dense Theta, Psi, R");

    // det
    auto* det = app.add_subcommand("det", "determinant (sign, value, log_abs)");
    std::string det_file;
    det->add_option("file", det_file, "matrix file")->required();

    // inv
    auto* inv = app.add_subcommand("inv", "dense inverse");
    std::string inv_file, inv_out;
    inv->add_option("file", inv_file, "matrix file")->required();
    inv->add_option("--out", inv_out, "output file (default stdout)");

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "solve A x = b");
    std::string solve_file, solve_rhs;
    solve_cmd->add_option("file", solve_file, "matrix file")->required();
    solve_cmd->add_option("rhs", solve_rhs, "right-hand side file")->required();

    // pinv-solve
    auto* pinv = app.add_subcommand("pinv-solve", "solve a tall consistent system");
    std::string pinv_file, pinv_rhs;
    std::size_t pinv_rows = 0;
    pinv->add_option("file", pinv_file, "matrix file for the square block")->required();
    pinv->add_option("rhs", pinv_rhs, "right-hand side file (m entries)")->required();
    pinv->add_option("--rows", pinv_rows, "total row count m >= n")->required();

    // bench-error
    auto* be = app.add_subcommand("bench-error", "structured vs LU inverse relative error");
    std::vector<std::size_t> be_orders{4, 8, 16, 32, 64, 128, 256};
    std::size_t be_trials = 10;
    double be_margin = 0.5;
    std::uint64_t be_seed = 0;
    std::string be_out;
    bool be_no_timing = false;
    be->add_option("--orders", be_orders, "matrix orders")->delimiter(',');
    be->add_option("--trials", be_trials, "trials per order");
    be->add_option("--margin", be_margin, "dominance margin");
    be->add_option("--seed", be_seed, "base seed");
    be->add_option("--out", be_out, "CSV output file (default stdout)");
    be->add_flag("--no-timing", be_no_timing, "leave elapsed_ns empty for byte-stable output");

    // bench-time
    auto* bt = app.add_subcommand("bench-time", "timing and flop scaling per method");
    std::vector<std::size_t> bt_orders{64, 128, 256, 512};
    std::size_t bt_trials = 3;
    std::vector<std::string> bt_methods{"structured", "lu"};
    std::string bt_op = "solve";
    double bt_margin = 0.1;
    std::uint64_t bt_seed = 0;
    std::string bt_out;
    bool bt_no_timing = false;
    bt->add_option("--orders", bt_orders, "matrix orders")->delimiter(',');
    bt->add_option("--trials", bt_trials, "trials per order");
    bt->add_option("--methods", bt_methods, "structured,lu,gauss_jordan,pinv_normal_eq")
        ->delimiter(',');
    bt->add_option("--op", bt_op, "solve|inverse");
    bt->add_option("--margin", bt_margin, "dominance margin");
    bt->add_option("--seed", bt_seed, "base seed");
    bt->add_option("--out", bt_out, "CSV output file (default stdout)");
    bt->add_flag("--no-timing", bt_no_timing, "leave elapsed_ns empty for byte-stable output");

    // flops
    auto* fl = app.add_subcommand("flops", "flop-count report for one order");
    std::size_t fl_n = 64;
    std::string fl_corners = "both";
    double fl_margin = 0.5;
    std::uint64_t fl_seed = 0;
    fl->add_option("--n", fl_n, "matrix order")->required();
    fl->add_option("--corners", fl_corners, "none|d1|d2|both");
    fl->add_option("--margin", fl_margin, "dominance margin");
    fl->add_option("--seed", fl_seed, "rng seed");

    // train-demo
    auto* td = app.add_subcommand("train-demo", "one-shot pseudoinverse training demo");
    std::string td_data, td_out;
    std::size_t td_hidden = 0, td_targets = 1;
    std::uint64_t td_seed = 0;
    td->add_option("--data", td_data, "training CSV")->required();
    td->add_option("--hidden", td_hidden, "hidden units (== samples for structured path)")
        ->required();
    td->add_option("--targets", td_targets, "trailing target column count");
    td->add_option("--seed", td_seed, "rng seed");
    td->add_option("--out", td_out, "model dump file");

    std::vector<const char*> argv;
    argv.push_back("atrid");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        std::ostringstream help_out, help_err;
        const int code = app.exit(e, help_out, help_err);
        out << help_out.str();
        err << help_err.str();
        return code == 0 ? 0 : 1;
    }

    try {
        if (gen->parsed()) return cmd_gen(gen_n, gen_margin, gen_corners, gen_seed, gen_out, out);
        if (factor_cmd->parsed()) return cmd_factor(factor_file, factor_dump, out);
        if (det->parsed()) return cmd_det(det_file, out);
        if (inv->parsed()) return cmd_inv(inv_file, inv_out, out);
        if (solve_cmd->parsed()) return cmd_solve(solve_file, solve_rhs, out);
        if (pinv->parsed()) return cmd_pinv_solve(pinv_file, pinv_rhs, pinv_rows, out);
        if (be->parsed())
            return cmd_bench_error(be_orders, be_trials, be_margin, be_seed, be_out, be_no_timing,
                                   out);
        if (bt->parsed())
            return cmd_bench_time(bt_orders, bt_trials, bt_methods, bt_op, bt_margin, bt_seed,
                                  bt_out, bt_no_timing, out, err);
        if (fl->parsed()) return cmd_flops(fl_n, fl_corners, fl_margin, fl_seed, out);
        if (td->parsed())
            return cmd_train_demo(td_data, td_hidden, td_targets, td_seed, td_out, out);
    } catch (const SingularError& e) {
        err << "error (singular): " << e.what() << '\n';
        return 2;
    } catch (const BreakdownError& e) {
        err << "error (breakdown): " << e.what() << '\n';
        return 2;
    } catch (const OverflowError& e) {
        err << "error (overflow): " << e.what() << '\n';
        return 2;
    } catch (const CLI::Error& e) {
        err << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        err << "input error: " << e.what() << '\n';
        return 1;
    }
    err << "no subcommand\n";
    return 1;
}

}  // namespace atrid::cli
