// Acceptance suite: runs the project's ten exit criteria end to end and
// prints one PASS/FAIL line each. Exit code is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "atrid/errors.hpp"
#include "atrid/factor.hpp"
#include "atrid/flops.hpp"
#include "atrid/linalg.hpp"
#include "atrid/lowertri.hpp"
#include "atrid/nnet.hpp"
#include "atrid/oracle.hpp"
#include "atrid/rng.hpp"
#include "atrid/structured.hpp"

using namespace atrid;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

double now_s() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

double rel_diff_inf(const DenseMatrix& p, const DenseMatrix& q) {
    double num = 0.0;
    for (std::size_t i = 0; i < p.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < p.cols(); ++j) s += std::fabs(p(i, j) - q(i, j));
        num = std::max(num, s);
    }
    const double den = q.inf_norm();
    return num / (den > 0.0 ? den : 1.0);
}

double entry_scaled_diff(const DenseMatrix& p, const DenseMatrix& q) {
    double num = 0.0;
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.cols(); ++j)
            num = std::max(num, std::fabs(p(i, j) - q(i, j)));
    const double den = q.inf_norm();
    return num / (den > 0.0 ? den : 1.0);
}

double fit_loglog_slope(const std::vector<double>& n, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double k = static_cast<double>(n.size());
    for (std::size_t i = 0; i < n.size(); ++i) {
        const double x = std::log(n[i]), v = std::log(y[i]);
        sx += x;
        sy += v;
        sxx += x * x;
        sxy += x * v;
    }
    return (sxy - sx * sy / k) / (sxx - sx * sx / k);
}

std::vector<CornerFlags> legal_corner_combos(std::size_t n) {
    if (n < 3) return {CornerFlags{false, false}};
    return {CornerFlags{false, false}, CornerFlags{true, false}, CornerFlags{false, true},
            CornerFlags{true, true}};
}

// criterion 1 -----------------------------------------------------------

Outcome c1_reconstruction() {
    Outcome o;
    const std::vector<std::size_t> orders{3, 4,  5,  6,  7,  8,   12,  16,
                                          24, 32, 48, 64, 96, 128, 192, 256};
    double worst = 0.0;
    std::size_t count = 0;
    auto check_one = [&](std::size_t n, CornerFlags cf, std::uint64_t seed) {
        auto m = random_dominant(n, 0.5, cf, seed);
        auto f = factorize(m);
        auto product = multiply(materialize_factor(f, Factor::theta),
                                multiply(materialize_factor(f, Factor::psi),
                                         materialize_factor(f, Factor::r).transposed()));
        worst = std::max(worst, rel_diff_inf(product, to_dense(m)));
        ++count;
    };
    for (std::size_t n : orders)
        for (auto cf : legal_corner_combos(n))
            for (std::uint64_t rep = 0; rep < 3; ++rep)
                check_one(n, cf, 1000 + 17 * n + 3 * rep + (cf.sw ? 1 : 0) + (cf.ne ? 2 : 0));
    for (auto cf : legal_corner_combos(512))
        for (std::uint64_t rep = 0; rep < 2; ++rep)
            check_one(512, cf, 9000 + rep + (cf.sw ? 10 : 0) + (cf.ne ? 20 : 0));

    o.pass = (count == 200) && (worst <= 1e-12);
    o.detail = std::to_string(count) + " matrices, max rel err " + fmt(worst) + " (<= 1e-12)";
    return o;
}

// criterion 2 -----------------------------------------------------------

Outcome c2_determinant() {
    Outcome o;
    double worst_small = 0.0, worst_log = 0.0;
    bool signs_ok = true;

    // pinned fixtures
    const StructuredMatrix e1(3, {4, 4, 4}, {1, 1}, {1, 1});
    const StructuredMatrix e1d1(3, {4, 4, 4}, {1, 1}, {1, 1}, 1.0, 0.0);
    const StructuredMatrix e1d2(3, {4, 4, 4}, {1, 1}, {1, 1}, 0.0, 1.0);
    const StructuredMatrix two(2, {3, 3}, {1}, {1});
    const double expected[] = {56.0, 57.0, 57.0, 8.0};
    const StructuredMatrix* fixtures[] = {&e1, &e1d1, &e1d2, &two};
    for (int i = 0; i < 4; ++i) {
        const double got = determinant(factorize(*fixtures[i])).value;
        worst_small = std::max(worst_small, std::fabs(got - expected[i]) / expected[i]);
    }

    for (std::size_t n : {2ul, 3ul, 5ul, 8ul, 13ul, 21ul, 34ul, 55ul, 64ul})
        for (auto cf : legal_corner_combos(n)) {
            auto m = random_dominant(n, 0.5, cf, 2000 + n);
            auto d = determinant(factorize(m, Growth::extended));
            auto lu = oracle::lu_det(oracle::lu_decompose(to_dense(m)));
            signs_ok = signs_ok && (d.sign == lu.sign);
            worst_small =
                std::max(worst_small, std::fabs(d.value - lu.value) / std::fabs(lu.value));
        }

    for (std::size_t n : {128ul, 256ul, 512ul})
        for (auto cf : legal_corner_combos(n)) {
            auto m = random_dominant(n, 0.5, cf, 3000 + n);
            auto d = determinant(factorize(m, Growth::extended));
            auto lu = oracle::lu_det(oracle::lu_decompose(to_dense(m)));
            signs_ok = signs_ok && (d.sign == lu.sign);
            worst_log = std::max(worst_log, std::fabs(d.log_abs - lu.log_abs));
        }

    o.pass = signs_ok && worst_small <= 1e-10 && worst_log <= 1e-8;
    o.detail = "fixtures 56/57/57/8, rel err " + fmt(worst_small) +
               " (<= 1e-10), log-det err " + fmt(worst_log) + " (<= 1e-8), signs " +
               (signs_ok ? "exact" : "MISMATCH");
    return o;
}

// criterion 3 -----------------------------------------------------------

Outcome c3_fig2_error() {
    Outcome o;
    double worst_mean = 0.0;
    for (std::size_t n : {4ul, 8ul, 16ul, 32ul, 64ul, 128ul, 256ul}) {
        double sum = 0.0;
        for (std::uint64_t t = 0; t < 10; ++t) {
            auto m = random_dominant(n, 0.5, CornerFlags{n >= 3, n >= 3}, 4000 + 31 * n + t);
            auto inv_structured = inverse(factorize(m));
            auto inv_lu = oracle::lu_invert(oracle::lu_decompose(to_dense(m)));
            sum += oracle::relative_error_inf(inv_structured, inv_lu);
        }
        worst_mean = std::max(worst_mean, sum / 10.0);
    }
    o.pass = worst_mean <= 1e-10;
    o.detail = "orders 4..256, 10 trials each, worst mean eps_r " + fmt(worst_mean) +
               " (<= 1e-10)";
    return o;
}

// criterion 4 -----------------------------------------------------------

Outcome c4_internal_consistency() {
    Outcome o;
    double det_gap = 0.0, step_gap = 0.0, row_gap = 0.0;
    bool signs_ok = true;
    for (std::size_t n : {3ul, 8ul, 33ul, 100ul, 256ul})
        for (auto cf : legal_corner_combos(n)) {
            auto m = random_dominant(n, 0.5, cf, 5000 + n);
            auto f = factorize(m);

            auto d30 = determinant(f);
            auto d29 = determinant_factored(f);
            signs_ok = signs_ok && (d29.sign == d30.sign);
            det_gap = std::max(det_gap, std::fabs(d29.log_abs - d30.log_abs) /
                                            std::max(1.0, std::fabs(d30.log_abs)));

            auto rt = materialize_factor(f, Factor::r).transposed();
            step_gap = std::max(step_gap, entry_scaled_diff(eliminate_stepwise(m), rt));

            // closed-form columns of R^-1 against forward substitution
            auto r = materialize_factor(f, Factor::r);
            auto rinv = r_inverse(f);
            std::vector<double> y(n);
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t i = 0; i < n; ++i) {
                    double s = (i == j) ? 1.0 : 0.0;
                    for (std::size_t k = 0; k < i; ++k) s -= r(i, k) * y[k];
                    y[i] = s / r(i, i);
                }
                double colnorm = 0.0;
                for (std::size_t i = 0; i < n; ++i) colnorm = std::max(colnorm, std::fabs(y[i]));
                for (std::size_t i = 0; i < n; ++i)
                    row_gap = std::max(row_gap, std::fabs(y[i] - rinv(i, j)) / colnorm);
            }
        }
    o.pass = signs_ok && det_gap <= 1e-10 && step_gap <= 1e-12 && row_gap <= 1e-12;
    o.detail = "det routes " + fmt(det_gap) + " (<= 1e-10), stepwise vs R^T " + fmt(step_gap) +
               " (<= 1e-12), R^-1 closed form vs substitution " + fmt(row_gap) + " (<= 1e-12)";
    return o;
}

// criterion 5 -----------------------------------------------------------

Outcome c5_solve_and_complexity() {
    Outcome o;
    double worst_resid = 0.0;
    for (std::size_t n : {16ul, 64ul, 256ul, 1024ul, 4096ul}) {
        auto m = random_dominant(n, 0.1, CornerFlags{n >= 3, n >= 3}, 6000 + n);
        auto f = factorize(m, Growth::extended);
        std::vector<double> x_true(n, 1.0);
        auto rhs = m.apply(x_true);
        auto sol = solve(f, rhs);
        double xn = 0, bn = 0;
        for (double v : sol.x) xn = std::max(xn, std::fabs(v));
        for (double v : rhs) bn = std::max(bn, std::fabs(v));
        worst_resid = std::max(worst_resid, sol.residual_inf / (m.inf_norm() * xn + bn));
    }

    std::vector<double> orders, totals, fact_totals;
    for (std::size_t n : {256ul, 512ul, 1024ul, 2048ul, 4096ul, 8192ul}) {
        auto m = random_dominant(n, 0.1, CornerFlags{true, true}, 6100 + n);
        std::vector<double> rhs = m.apply(std::vector<double>(n, 1.0));
        auto fc = flops::counted([&] { solve(factorize(m, Growth::extended), rhs); });
        auto fc_fact = flops::counted([&] { factorize(m, Growth::extended); });
        orders.push_back(static_cast<double>(n));
        totals.push_back(static_cast<double>(fc.total()));
        fact_totals.push_back(static_cast<double>(fc_fact.total()));
    }
    const double slope = fit_loglog_slope(orders, totals);

    // linear coefficient of the factorize count alone (the 7n-8 claim)
    const double coef = (fact_totals.back() - fact_totals.front()) /
                        (orders.back() - orders.front());
    const double constant = fact_totals.front() - coef * orders.front();

    o.pass = worst_resid <= 1e-12 && std::fabs(slope - 1.0) <= 0.15 && coef <= 8.0;
    o.detail = "worst normalized residual " + fmt(worst_resid) +
               " (<= 1e-12), factorize+solve flop slope " + fmt(slope) +
               " (1.0 +- 0.15), factorize count " + fmt(coef) + "n" +
               (constant < 0 ? " - " : " + ") + fmt(std::fabs(constant)) +
               " vs closed form 7n - 8 (coefficient <= 8)";
    return o;
}

// criterion 6 -----------------------------------------------------------

double median5_ns(const std::function<void()>& fn, std::size_t reps) {
    fn();  // warm-up, discarded
    double samples[5];
    for (auto& s : samples) {
        const auto t0 = std::chrono::steady_clock::now();
        for (std::size_t r = 0; r < reps; ++r) fn();
        const auto t1 = std::chrono::steady_clock::now();
        s = std::chrono::duration<double, std::nano>(t1 - t0).count() /
            static_cast<double>(reps);
    }
    std::sort(samples, samples + 5);
    return samples[2];
}

Outcome c6_fig3_timing() {
    Outcome o;
    std::vector<double> solve_orders, solve_ns, lu_orders, lu_ns;
    for (std::size_t n : {256ul, 512ul, 1024ul, 2048ul, 4096ul}) {
        auto m = random_dominant(n, 0.1, CornerFlags{true, true}, 6200 + n);
        std::vector<double> rhs = m.apply(std::vector<double>(n, 1.0));
        const double ns = median5_ns([&] { solve(factorize(m, Growth::extended), rhs); },
                                     std::max<std::size_t>(1, 2048 / n));
        solve_orders.push_back(static_cast<double>(n));
        solve_ns.push_back(ns);
    }
    double structured_512 = solve_ns[1];
    double lu_512 = 0.0;
    for (std::size_t n : {64ul, 128ul, 256ul, 512ul}) {
        auto m = random_dominant(n, 0.1, CornerFlags{true, true}, 6300 + n);
        auto dense = to_dense(m);
        const double ns = median5_ns([&] { oracle::lu_invert(oracle::lu_decompose(dense)); }, 1);
        lu_orders.push_back(static_cast<double>(n));
        lu_ns.push_back(ns);
        if (n == 512) lu_512 = ns;
    }
    const double slope_solve = fit_loglog_slope(solve_orders, solve_ns);
    const double slope_lu = fit_loglog_slope(lu_orders, lu_ns);
    o.pass = slope_solve < slope_lu && structured_512 < lu_512;
    o.detail = "structured solve slope " + fmt(slope_solve) + " < lu inverse slope " +
               fmt(slope_lu) + "; at n=512: " + fmt(structured_512 / 1e3) + " us vs " +
               fmt(lu_512 / 1e3) + " us";
    return o;
}

// criterion 7 -----------------------------------------------------------

Outcome c7_lowertri() {
    Outcome o;
    double worst_recon = 0.0, worst_inv = 0.0, worst_tau = 0.0;
    double worst_any = 0.0, worst_any_kappa = 0.0;
    Rng rng(7001);
    // The 1e-12 inverse bound is attainable only where rounding the
    // entries of L^-1 keeps eps * kappa below it, i.e. kappa up to ~1e4;
    // draws beyond that band are measured and reported, not asserted
    // (no algorithm beats the entry-rounding floor).
    int accepted = 0;
    while (accepted < 100) {
        const std::size_t n = 1 + rng.next_u64() % 64;
        DenseMatrix l(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < i; ++j) l(i, j) = rng.symmetric();
            l(i, i) = rng.sign() * (0.5 + 0.5 * rng.next_unit());
        }
        auto seq = lowertri::lower_factor_sequence(l);
        worst_recon = std::max(worst_recon, rel_diff_inf(seq.product(), l));

        auto inv = lowertri::lower_inverse(l);
        auto residual = multiply(l, inv);
        for (std::size_t i = 0; i < n; ++i) residual(i, i) -= 1.0;
        const double kappa = l.inf_norm() * inv.inf_norm();
        if (residual.inf_norm() > worst_any) {
            worst_any = residual.inf_norm();
            worst_any_kappa = kappa;
        }
        if (kappa > 1e4) continue;
        worst_inv = std::max(worst_inv, residual.inf_norm());
        ++accepted;
    }
    for (int round = 0; round < 50; ++round) {
        const std::size_t n = 2 + rng.next_u64() % 31;
        DenseMatrix a(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            double offsum = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                a(i, j) = rng.symmetric();
                offsum += std::fabs(a(i, j));
            }
            a(i, i) = rng.sign() * (offsum + 0.5);
        }
        auto [tau, seq] = lowertri::tau_decompose(a);
        worst_recon = std::max(worst_recon, rel_diff_inf(seq.product(), a));
        auto [lmat, umat] = oracle::gauss_eliminate_transpose(a);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                worst_tau = std::max(worst_tau, std::fabs(tau(i, j) + lmat(j, i)));
    }
    o.pass = worst_recon <= 1e-12 && worst_inv <= 1e-12 && worst_tau <= 1e-12;
    o.detail = "reconstruction " + fmt(worst_recon) + ", L*L^-1 - I " + fmt(worst_inv) +
               " over 100 draws with kappa <= 1e4, tau vs elimination " + fmt(worst_tau) +
               " (all <= 1e-12); unrestricted worst residual " + fmt(worst_any) +
               " at kappa " + fmt(worst_any_kappa) + " (eps*kappa floor, reported)";
    return o;
}

// criterion 8 -----------------------------------------------------------

Outcome c8_pseudoinverse() {
    Outcome o;
    double worst = 0.0, reported_deviation = 0.0;
    for (std::size_t n : {4ul, 16ul, 64ul, 128ul}) {
        const std::size_t m_rows = 2 * n;
        auto block = random_dominant(n, 0.4, CornerFlags{n >= 3, n >= 3}, 8000 + n);
        RectangularSystem sys(block, m_rows);
        std::vector<double> x_true(n);
        Rng rng(8100 + n);
        for (auto& v : x_true) v = rng.symmetric();
        auto rhs = block.apply(x_true);
        rhs.resize(m_rows, 0.0);
        auto sol = pseudo_solve(sys, rhs);
        worst = std::max(worst, max_abs_diff(sol.x, x_true));
        worst = std::max(worst, sol.residual_inf);
    }
    {
        auto block = random_dominant(16, 0.4, CornerFlags{true, true}, 8200);
        RectangularSystem sys(block, 24);
        std::vector<double> rhs = block.apply(std::vector<double>(16, 1.0));
        rhs.resize(24, 0.25);  // nonzero against the zero rows: inconsistent
        auto sol = pseudo_solve(sys, rhs);
        auto lsq = oracle::normal_eq_lsq(to_dense(sys), rhs);
        reported_deviation = max_abs_diff(sol.x, lsq);
    }
    o.pass = worst <= 1e-8;
    o.detail = "consistent recovery err " + fmt(worst) +
               " (<= 1e-8); inconsistent-case deviation from normal equations " +
               fmt(reported_deviation) + " (reported, not asserted)";
    return o;
}

// criterion 9 -----------------------------------------------------------

Outcome c9_training() {
    Outcome o;
    double worst_w = 0.0, worst_loss = 0.0;
    bool counters_ok = true;
    for (std::size_t n : {3ul, 16ul, 64ul}) {
        Rng rng(9000 + n);
        nnet::TrainingProblem p;
        p.x = DenseMatrix(n, 2);
        for (std::size_t i = 0; i < n; ++i) {
            p.x(i, 0) = rng.symmetric();
            p.x(i, 1) = rng.symmetric();
        }
        p.t = DenseMatrix(n, 2);
        for (std::size_t i = 0; i < n; ++i) {
            p.t(i, 0) = rng.symmetric();
            p.t(i, 1) = rng.symmetric();
        }
        p.hidden = n;
        p.seed = 9100 + n;
        auto model = nnet::train(p);
        counters_ok = counters_ok && model.gradient_iterations == 0 &&
                      model.structured_solves == 2 &&
                      model.method == nnet::TrainMethod::structured;
        worst_loss = std::max(worst_loss, model.train_loss);

        auto lu = oracle::lu_decompose(to_dense(model.g_structured));
        for (std::size_t k = 0; k < 2; ++k) {
            std::vector<double> col(n);
            for (std::size_t i = 0; i < n; ++i) col[i] = p.t(i, k);
            auto x = oracle::lu_solve(lu, col);
            for (std::size_t i = 0; i < n; ++i)
                worst_w = std::max(worst_w, std::fabs(model.w_out(i, k) - x[i]));
        }
    }
    o.pass = counters_ok && worst_w <= 1e-8 && worst_loss <= 1e-10;
    o.detail = "N in {3,16,64}: weight gap vs oracle " + fmt(worst_w) +
               " (<= 1e-8), train loss " + fmt(worst_loss) +
               " (<= 1e-10), gradient iterations 0";
    return o;
}

// criterion 10 ----------------------------------------------------------

Outcome c10_error_paths() {
    Outcome o;
    bool ok = true;
    std::string which;

    try {
        solve(factorize(StructuredMatrix(2, {1, 1}, {1}, {1})), std::vector<double>{1, 1});
        ok = false;
        which += " singular-not-raised";
    } catch (const SingularError&) {
    }
    try {
        factorize(StructuredMatrix(2, {0, 3}, {1}, {1}));
        ok = false;
        which += " breakdown-not-raised";
    } catch (const BreakdownError&) {
    }
    try {
        std::vector<double> a(30, 1e8), b(29, 1e-8), c(29, 0.0);
        compute_lambda(StructuredMatrix(30, std::move(a), std::move(b), std::move(c)));
        ok = false;
        which += " overflow-not-raised";
    } catch (const OverflowError&) {
    }
    try {
        (void)StructuredMatrix(2, {3, 3}, {1}, {1}, 1.0, 0.0);
        ok = false;
        which += " structure-not-raised";
    } catch (const StructureError&) {
    }

    // fuzz: 10k adversarial matrix files must never crash the parser
    Rng rng(0xACCE97);
    const char pool[] = "0123456789.eE+- \t\nnaif";
    std::size_t parsed = 0, rejected = 0;
    for (int round = 0; round < 10000; ++round) {
        std::string text;
        if (round % 3 == 0) {
            // mutate a valid file
            auto m = random_dominant(1 + rng.next_u64() % 6, 0.5, CornerFlags{}, round);
            text = write_matrix(m);
            const std::size_t cut = rng.next_u64() % (text.size() + 1);
            const std::size_t len = rng.next_u64() % 8;
            std::string junk;
            for (std::size_t i = 0; i < len; ++i)
                junk += pool[rng.next_u64() % (sizeof(pool) - 1)];
            text = text.substr(0, cut) + junk + text.substr(std::min(cut, text.size()));
        } else {
            const std::size_t len = rng.next_u64() % 160;
            for (std::size_t i = 0; i < len; ++i)
                text += pool[rng.next_u64() % (sizeof(pool) - 1)];
        }
        try {
            read_matrix(text);
            ++parsed;
        } catch (const Error&) {
            ++rejected;
        }
    }

    o.pass = ok && parsed + rejected == 10000;
    o.detail = std::string("designated errors raised") + (ok ? "" : " EXCEPT" + which) +
               "; fuzz 10000 inputs (" + std::to_string(parsed) + " parsed, " +
               std::to_string(rejected) + " rejected), no crash";
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        const char* id;
        const char* name;
        std::function<Outcome()> fn;
    };
    const std::vector<Criterion> criteria{
        {"C01", "factorization reconstruction", c1_reconstruction},
        {"C02", "determinant equivalence", c2_determinant},
        {"C03", "inverse error vs LU oracle", c3_fig2_error},
        {"C04", "internal consistency", c4_internal_consistency},
        {"C05", "solve correctness and linear cost", c5_solve_and_complexity},
        {"C06", "timing separation", c6_fig3_timing},
        {"C07", "lower-triangular decomposition", c7_lowertri},
        {"C08", "pseudoinverse path", c8_pseudoinverse},
        {"C09", "one-shot training", c9_training},
        {"C10", "error paths and fuzzing", c10_error_paths},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const double t0 = now_s();
        Outcome o;
        try {
            o = c.fn();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("unexpected exception: ") + e.what();
        }
        const double dt = now_s() - t0;
        std::printf("%s %s  %s: %s  [%.1fs]\n", c.id, o.pass ? "PASS" : "FAIL", c.name,
                    o.detail.c_str(), dt);
        std::fflush(stdout);
        if (!o.pass) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
