#include "atrid/factor.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "atrid/errors.hpp"
#include "atrid/flops.hpp"

namespace atrid {

namespace {

// Shared recursion engine in scaled arithmetic. Every Scaled operation
// below performs exactly one double add/mul/div, which is what the flop
// counters record; additions where one side is structurally zero execute
// no arithmetic and count nothing.

struct Engine {
    std::vector<Scaled> lambda, pivot, zeta, cl;  // cl[j] = c_j * lambda_j
    Scaled mu;
};

void run_lambda(const StructuredMatrix& m, Engine& e) {
    const std::size_t n = m.order();
    const auto a = m.diag();
    const auto b = m.sub();
    const auto c = m.super();

    for (std::size_t j = 0; j + 1 < n; ++j)
        if (b[j] == 0.0) throw BreakdownError(j + 1, "b_j = 0");

    e.lambda.resize(n);
    e.pivot.resize(n > 0 ? n - 1 : 0);
    e.cl.resize(n > 0 ? n - 1 : 0);
    e.lambda[0] = Scaled::from_double(1.0);
    for (std::size_t j = 0; j + 1 < n; ++j) {
        Scaled p = e.lambda[j] * a[j];
        flops::mul(1);
        if (j > 0) {
            e.cl[j - 1] = e.lambda[j - 1] * c[j - 1];
            p = p + e.cl[j - 1];
            flops::mul(1);
            flops::add(1);
        }
        if (p.is_zero())
            throw BreakdownError(j + 1, "pivot a_j*lambda_j + c_{j-1}*lambda_{j-1} vanished");
        e.pivot[j] = p;
        e.lambda[j + 1] = -(p / Scaled::from_double(b[j]));
        flops::div(1);
    }
    if (n >= 2) {
        e.cl[n - 2] = e.lambda[n - 2] * c[n - 2];
        flops::mul(1);
    }
}

void run_zeta(const StructuredMatrix& m, Engine& e) {
    const std::size_t n = m.order();
    e.zeta.assign(n > 0 ? n - 1 : 0, Scaled{});
    if (m.corner_sw() == 0.0 || n < 2) return;

    const auto a = m.diag();
    if (a[0] == 0.0) throw SingularError("a_1 = 0 with d1 != 0");
    e.zeta[0] = -(Scaled::from_double(m.corner_sw()) * e.lambda[n - 1] /
                  Scaled::from_double(a[0]));
    flops::mul(1);
    flops::div(1);
    for (std::size_t j = 1; j + 1 < n; ++j) {
        if (e.pivot[j].is_zero())
            throw BreakdownError(j + 1, "pivot vanished in zeta recursion");
        e.zeta[j] = -(e.zeta[j - 1] * e.cl[j - 1] / e.pivot[j]);
        flops::mul(1);
        flops::div(1);
    }
}

void run_mu(const StructuredMatrix& m, Engine& e) {
    const std::size_t n = m.order();
    const auto a = m.diag();
    if (n == 1) {
        e.mu = Scaled::from_double(a[0]);
        return;
    }
    const Scaled one = Scaled::from_double(1.0);
    e.mu = e.lambda[n - 1] * a[n - 1];
    flops::mul(1);
    Scaled weight = one + e.zeta[n - 2];
    if (!e.zeta[n - 2].is_zero()) flops::add(1);
    e.mu = e.mu + weight * e.cl[n - 2];
    flops::mul(1);
    flops::add(1);
    if (m.corner_ne() != 0.0) {
        Scaled s = one;
        for (std::size_t j = 0; j + 1 < n; ++j) {
            s = s + e.zeta[j];
            if (!e.zeta[j].is_zero()) flops::add(1);
        }
        e.mu = e.mu + Scaled::from_double(m.corner_ne()) * s;
        flops::mul(1);
        flops::add(1);
    }
}

Engine run_engine(const StructuredMatrix& m) {
    Engine e;
    run_lambda(m, e);
    run_zeta(m, e);
    run_mu(m, e);
    return e;
}

std::vector<double> to_plain(std::span<const Scaled> xs) {
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = xs[i].to_double();
    return out;
}

}  // namespace

void Factorization::require_plain() const {
    if (!plain_ok_)
        throw OverflowError(first_overflow_,
                            "lambda sequence leaves double range; only the scaled solve and "
                            "determinant paths apply at this order");
}

Factorization factorize(const StructuredMatrix& m, Growth growth) {
    Factorization f(m);
    Engine e = run_engine(m);
    f.lambda_ = std::move(e.lambda);
    f.pivot_ = std::move(e.pivot);
    f.zeta_ = std::move(e.zeta);
    f.cl_ = std::move(e.cl);
    f.mu_ = e.mu;

    f.plain_ok_ = true;
    for (std::size_t i = 0; i < f.lambda_.size(); ++i) {
        if (!f.lambda_[i].fits_double()) {
            f.plain_ok_ = false;
            f.first_overflow_ = i + 1;
            break;
        }
    }
    if (f.plain_ok_)
        for (const auto& v : f.pivot_)
            if (!v.fits_double()) {
                f.plain_ok_ = false;
                f.first_overflow_ = f.lambda_.size();
                break;
            }
    if (f.plain_ok_)
        for (const auto& v : f.zeta_)
            if (!v.fits_double()) {
                f.plain_ok_ = false;
                f.first_overflow_ = f.lambda_.size();
                break;
            }
    if (f.plain_ok_)
        for (const auto& v : f.cl_)
            if (!v.fits_double()) {
                f.plain_ok_ = false;
                f.first_overflow_ = f.lambda_.size();
                break;
            }
    if (f.plain_ok_ && !f.mu_.fits_double()) {
        f.plain_ok_ = false;
        f.first_overflow_ = f.lambda_.size();
    }

    if (growth == Growth::checked) f.require_plain();

    f.lambda_d_ = to_plain(f.lambda_);
    f.pivot_d_ = to_plain(f.pivot_);
    f.zeta_d_ = to_plain(f.zeta_);
    f.cl_d_ = to_plain(f.cl_);
    f.mu_d_ = f.mu_.to_double();
    return f;
}

std::vector<double> compute_lambda(const StructuredMatrix& m) {
    Engine e;
    run_lambda(m, e);
    std::vector<double> out(e.lambda.size());
    for (std::size_t i = 0; i < e.lambda.size(); ++i) {
        if (!e.lambda[i].fits_double())
            throw OverflowError(i + 1, "lambda_" + std::to_string(i + 1) +
                                           " exceeds double range");
        out[i] = e.lambda[i].to_double();
    }
    return out;
}

std::vector<double> compute_zeta(const StructuredMatrix& m, std::span<const double> lambda) {
    const std::size_t n = m.order();
    if (lambda.size() != n) throw ShapeError("compute_zeta: lambda length differs from order");

    Engine e;
    e.lambda.resize(n);
    for (std::size_t i = 0; i < n; ++i) e.lambda[i] = Scaled::from_double(lambda[i]);
    e.pivot.resize(n > 0 ? n - 1 : 0);
    e.cl.resize(n > 0 ? n - 1 : 0);
    const auto a = m.diag();
    const auto c = m.super();
    for (std::size_t j = 0; j + 1 < n; ++j) e.cl[j] = e.lambda[j] * c[j];
    for (std::size_t j = 0; j + 1 < n; ++j) {
        Scaled p = e.lambda[j] * a[j];
        if (j > 0) p = p + e.cl[j - 1];
        e.pivot[j] = p;
    }
    run_zeta(m, e);

    std::vector<double> out(e.zeta.size());
    for (std::size_t i = 0; i < e.zeta.size(); ++i) {
        if (!e.zeta[i].fits_double())
            throw OverflowError(i + 1, "zeta_" + std::to_string(i + 1) +
                                           " exceeds double range");
        out[i] = e.zeta[i].to_double();
    }
    return out;
}

double compute_mu(const StructuredMatrix& m, std::span<const double> lambda,
                  std::span<const double> zeta) {
    const std::size_t n = m.order();
    if (lambda.size() != n) throw ShapeError("compute_mu: lambda length differs from order");
    if (n > 1 && zeta.size() != n - 1)
        throw ShapeError("compute_mu: zeta length differs from order - 1");

    Engine e;
    e.lambda.resize(n);
    for (std::size_t i = 0; i < n; ++i) e.lambda[i] = Scaled::from_double(lambda[i]);
    e.zeta.resize(zeta.size());
    for (std::size_t i = 0; i < zeta.size(); ++i) e.zeta[i] = Scaled::from_double(zeta[i]);
    e.cl.resize(n > 0 ? n - 1 : 0);
    const auto c = m.super();
    for (std::size_t j = 0; j + 1 < n; ++j) e.cl[j] = e.lambda[j] * c[j];
    run_mu(m, e);
    return e.mu.to_double();
}

DenseMatrix materialize_factor(const Factorization& f, Factor which) {
    f.require_plain();
    const std::size_t n = f.order();
    const auto lambda = f.lambda();
    DenseMatrix out(n, n);

    switch (which) {
        case Factor::theta: {
            std::vector<double> inv(n);
            for (std::size_t j = 0; j < n; ++j) inv[j] = 1.0 / lambda[j];
            flops::div(static_cast<std::int64_t>(n));
            for (std::size_t j = 0; j < n; ++j) {
                out(j, j) = inv[j];
                if (j + 1 < n) out(j + 1, j) = -inv[j + 1];
            }
            break;
        }
        case Factor::psi: {
            for (std::size_t j = 0; j < n; ++j) out(j, j) = 1.0;
            for (std::size_t j = 0; j + 1 < n; ++j) out(n - 1, j) = -f.zeta()[j];
            out(n - 1, n - 1) = 1.0;
            break;
        }
        case Factor::r: {
            const auto cl = f.c_lambda();
            const double d2 = f.source().corner_ne();
            for (std::size_t j = 0; j + 1 < n; ++j) out(j, j) = f.pivots()[j];
            for (std::size_t j = 0; j + 2 < n; ++j) out(j + 1, j) = cl[j];
            for (std::size_t j = 0; j + 2 < n; ++j) out(n - 1, j) = d2;
            if (n >= 2) {
                out(n - 1, n - 2) = d2 + cl[n - 2];
                flops::add(1);
            }
            out(n - 1, n - 1) = f.mu();
            break;
        }
    }
    return out;
}

DenseMatrix eliminate_stepwise(const StructuredMatrix& m) {
    Factorization f = factorize(m);
    const std::size_t n = m.order();
    const auto lambda = f.lambda();
    DenseMatrix d = to_dense(m);

    for (std::size_t i = 1; i < n; ++i) {
        const double scale = lambda[i];
        for (std::size_t j = 0; j < n; ++j) d(i, j) = scale * d(i, j) + d(i - 1, j);
    }
    if (m.corner_sw() != 0.0) {
        const auto zeta = f.zeta();
        for (std::size_t j = 0; j + 1 < n; ++j) {
            const double z = zeta[j];
            if (z == 0.0) continue;
            for (std::size_t k = 0; k < n; ++k) d(n - 1, k) += z * d(j, k);
        }
    }
    return d;
}

}  // namespace atrid
