#include "atrid/structured.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "atrid/errors.hpp"
#include "atrid/rng.hpp"

namespace atrid {

StructuredMatrix::StructuredMatrix(std::size_t n, std::vector<double> diag,
                                   std::vector<double> sub, std::vector<double> super, double d1,
                                   double d2)
    : n_(n), a_(std::move(diag)), b_(std::move(sub)), c_(std::move(super)), d1_(d1), d2_(d2) {
    if (n_ == 0) throw StructureError("order must be positive");
    if (a_.size() != n_) throw StructureError("diagonal has " + std::to_string(a_.size()) +
                                              " entries, expected " + std::to_string(n_));
    if (b_.size() != n_ - 1) throw StructureError("subdiagonal has " + std::to_string(b_.size()) +
                                                  " entries, expected " + std::to_string(n_ - 1));
    if (c_.size() != n_ - 1) throw StructureError("superdiagonal has " + std::to_string(c_.size()) +
                                                  " entries, expected " + std::to_string(n_ - 1));
    if ((d1_ != 0.0 || d2_ != 0.0) && n_ < 3)
        throw StructureError("corner entries require order >= 3");
}

double StructuredMatrix::row_offdiag_sum(std::size_t i) const noexcept {
    double s = 0.0;
    if (i > 0) s += std::fabs(b_[i - 1]);
    if (i + 1 < n_) s += std::fabs(c_[i]);
    if (i == 0 && n_ > 1) s += std::fabs(d2_);
    if (i == n_ - 1 && n_ > 1) s += std::fabs(d1_);
    return s;
}

std::vector<double> StructuredMatrix::apply(std::span<const double> x) const {
    if (x.size() != n_) throw ShapeError("apply: vector length differs from order");
    std::vector<double> y(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        double s = a_[i] * x[i];
        if (i > 0) s += b_[i - 1] * x[i - 1];
        if (i + 1 < n_) s += c_[i] * x[i + 1];
        y[i] = s;
    }
    if (n_ >= 3) {
        y[0] += d2_ * x[n_ - 1];
        y[n_ - 1] += d1_ * x[0];
    }
    return y;
}

double StructuredMatrix::inf_norm() const noexcept {
    double best = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        double s = std::fabs(a_[i]) + row_offdiag_sum(i);
        if (s > best) best = s;
    }
    return best;
}

bool operator==(const StructuredMatrix& x, const StructuredMatrix& y) noexcept {
    return x.n_ == y.n_ && x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d1_ == y.d1_ &&
           x.d2_ == y.d2_;
}

DominanceReport validate(const StructuredMatrix& m) {
    DominanceReport rep;
    rep.margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m.order(); ++i) {
        double margin = std::fabs(m.diag()[i]) - m.row_offdiag_sum(i);
        if (margin < rep.margin) {
            rep.margin = margin;
            rep.worst_row = i + 1;
        }
    }
    rep.is_dominant = rep.margin > 0.0;
    return rep;
}

DenseMatrix to_dense(const StructuredMatrix& m) {
    const std::size_t n = m.order();
    DenseMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = m.diag()[i];
    for (std::size_t i = 0; i + 1 < n; ++i) {
        d(i + 1, i) = m.sub()[i];
        d(i, i + 1) = m.super()[i];
    }
    if (n >= 3) {
        d(n - 1, 0) = m.corner_sw();
        d(0, n - 1) = m.corner_ne();
    }
    return d;
}

namespace {

// |a| = offsum + margin can round to a value whose recomputed margin falls
// one ulp short; nudge until the reported margin meets the request.
double dominant_diag(double offsum, double margin, double sign) {
    double mag = offsum + margin;
    while (mag - offsum < margin) mag = std::nextafter(mag, std::numeric_limits<double>::infinity());
    return sign * mag;
}

}  // namespace

StructuredMatrix random_dominant(std::size_t n, double margin, CornerFlags corners,
                                 std::uint64_t seed) {
    if (n == 0) throw StructureError("order must be positive");
    if ((corners.sw || corners.ne) && n < 3)
        throw StructureError("corner entries require order >= 3");

    Rng rng(seed);
    std::vector<double> b(n >= 1 ? n - 1 : 0), c(n >= 1 ? n - 1 : 0);
    for (auto& v : b) {
        double u = rng.symmetric();
        double mag = std::fabs(u);
        v = (mag >= 0.1) ? u : std::copysign(0.1, u == 0.0 ? 1.0 : u);
    }
    for (auto& v : c) v = rng.symmetric();
    const double d1 = corners.sw ? rng.symmetric() : 0.0;
    const double d2 = corners.ne ? rng.symmetric() : 0.0;

    std::vector<double> a(n);
    for (std::size_t i = 0; i < n; ++i) {
        double offsum = 0.0;
        if (i > 0) offsum += std::fabs(b[i - 1]);
        if (i + 1 < n) offsum += std::fabs(c[i]);
        if (i == 0 && n > 1) offsum += std::fabs(d2);
        if (i == n - 1 && n > 1) offsum += std::fabs(d1);
        a[i] = dominant_diag(offsum, margin, rng.sign());
    }
    return StructuredMatrix(n, std::move(a), std::move(b), std::move(c), d1, d2);
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

double parse_double(const std::string& tok, std::size_t line, std::size_t field) {
    double v = 0.0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
        throw ParseError(line, field, "not a number: '" + tok + "'");
    if (!std::isfinite(v)) throw ParseError(line, field, "non-finite value: '" + tok + "'");
    return v;
}

std::vector<double> parse_row(const std::string& line, std::size_t count, std::size_t line_no,
                              const char* what) {
    auto toks = tokenize(line);
    if (toks.size() != count)
        throw ParseError(line_no, toks.size() < count ? toks.size() + 1 : count + 1,
                         std::string(what) + " has " + std::to_string(toks.size()) +
                             " of " + std::to_string(count) + " entries");
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = parse_double(toks[i], line_no, i + 1);
    return out;
}

}  // namespace

std::string write_matrix(const StructuredMatrix& m) {
    std::string out = std::to_string(m.order());
    out += '\n';
    auto append_seq = [&out](std::span<const double> seq) {
        for (std::size_t i = 0; i < seq.size(); ++i) {
            if (i) out += ' ';
            out += format_double(seq[i]);
        }
        out += '\n';
    };
    append_seq(m.diag());
    append_seq(m.sub());
    append_seq(m.super());
    out += format_double(m.corner_sw());
    out += ' ';
    out += format_double(m.corner_ne());
    out += '\n';
    return out;
}

StructuredMatrix read_matrix(const std::string& text) {
    std::istringstream is(text);
    std::string lines[5];
    std::size_t got = 0;
    std::string raw;
    while (got < 5 && std::getline(is, raw)) {
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        lines[got++] = raw;
    }
    if (got < 5) throw ParseError(got + 1, 1, "expected 5 lines, file ends early");
    while (std::getline(is, raw)) {
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        if (!tokenize(raw).empty()) throw ParseError(6, 1, "trailing content after line 5");
    }

    auto head = tokenize(lines[0]);
    if (head.size() != 1) throw ParseError(1, head.size() + 1, "expected single order entry");
    unsigned long long n = 0;
    auto res = std::from_chars(head[0].data(), head[0].data() + head[0].size(), n);
    if (res.ec != std::errc() || res.ptr != head[0].data() + head[0].size() || n == 0)
        throw ParseError(1, 1, "order must be a positive integer, got '" + head[0] + "'");
    if (n > (1ull << 26)) throw ParseError(1, 1, "order implausibly large: " + head[0]);

    auto a = parse_row(lines[1], static_cast<std::size_t>(n), 2, "diagonal");
    auto b = parse_row(lines[2], static_cast<std::size_t>(n) - 1, 3, "subdiagonal");
    auto c = parse_row(lines[3], static_cast<std::size_t>(n) - 1, 4, "superdiagonal");
    auto d = parse_row(lines[4], 2, 5, "corner line");
    return StructuredMatrix(static_cast<std::size_t>(n), std::move(a), std::move(b), std::move(c),
                            d[0], d[1]);
}

StructuredMatrix read_matrix_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ParseError(0, 0, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return read_matrix(ss.str());
}

void write_matrix_file(const std::string& path, const StructuredMatrix& m) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ParseError(0, 0, "cannot open '" + path + "' for writing");
    f << write_matrix(m);
}

std::vector<double> read_vector(const std::string& text) {
    std::vector<double> out;
    std::istringstream is(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto toks = tokenize(line);
        for (std::size_t i = 0; i < toks.size(); ++i)
            out.push_back(parse_double(toks[i], line_no, i + 1));
    }
    return out;
}

std::vector<double> read_vector_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ParseError(0, 0, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return read_vector(ss.str());
}

}  // namespace atrid
