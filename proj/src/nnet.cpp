#include "atrid/nnet.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <utility>

#include "atrid/errors.hpp"
#include "atrid/factor.hpp"
#include "atrid/linalg.hpp"
#include "atrid/oracle.hpp"
#include "atrid/rng.hpp"

namespace atrid::nnet {

namespace {

double activate(Activation z, double v) {
    return z == Activation::tanh_act ? std::tanh(v) : v;
}

DenseMatrix hidden_activations(const DenseMatrix& w_in, const std::vector<double>& bias,
                               const DenseMatrix& x, Activation z) {
    const std::size_t samples = x.rows();
    const std::size_t hidden = w_in.rows();
    DenseMatrix h(samples, hidden);
    for (std::size_t j = 0; j < samples; ++j)
        for (std::size_t i = 0; i < hidden; ++i) {
            double s = bias[i];
            for (std::size_t k = 0; k < x.cols(); ++k) s += w_in(i, k) * x(j, k);
            h(j, i) = activate(z, s);
        }
    return h;
}

bool corner_positions_active(std::size_t rows, std::size_t cols) {
    return rows >= 3 && cols >= 3;
}

/// Zeroes everything outside the band-plus-corners pattern, then clamps
/// each diagonal entry up to dominance margin 0.1 over the row's masked
/// off-diagonal sum. Shared by training and prediction so the two paths
/// agree bit-exactly on the training batch.
DenseMatrix apply_mask_and_clamp(const DenseMatrix& h) {
    const std::size_t rows = h.rows(), cols = h.cols();
    const bool corners = corner_positions_active(rows, cols);
    DenseMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            const bool in_band = (i <= j + 1) && (j <= i + 1);
            const bool is_corner =
                corners && ((i == 0 && j == cols - 1) || (i == rows - 1 && j == 0));
            if (in_band || is_corner) m(i, j) = h(i, j);
        }
    for (std::size_t i = 0; i < rows && i < cols; ++i) {
        double offsum = 0.0;
        if (i > 0) offsum += std::fabs(m(i, i - 1));
        if (i + 1 < cols) offsum += std::fabs(m(i, i + 1));
        if (corners && i == 0) offsum += std::fabs(m(0, cols - 1));
        if (corners && i == rows - 1) offsum += std::fabs(m(rows - 1, 0));
        const double d = m(i, i);
        if (std::fabs(d) < offsum + 0.1) {
            double mag = offsum + 0.1;
            while (mag - offsum < 0.1)
                mag = std::nextafter(mag, std::numeric_limits<double>::infinity());
            m(i, i) = std::copysign(mag, d);
        }
    }
    return m;
}

StructuredMatrix extract_structured(const DenseMatrix& g) {
    const std::size_t n = g.rows();
    std::vector<double> a(n), b(n > 0 ? n - 1 : 0), c(n > 0 ? n - 1 : 0);
    for (std::size_t i = 0; i < n; ++i) a[i] = g(i, i);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        b[i] = g(i + 1, i);
        c[i] = g(i, i + 1);
    }
    const double d1 = n >= 3 ? g(n - 1, 0) : 0.0;
    const double d2 = n >= 3 ? g(0, n - 1) : 0.0;
    return StructuredMatrix(n, std::move(a), std::move(b), std::move(c), d1, d2);
}

struct Layer {
    DenseMatrix w_in;
    std::vector<double> bias;
};

Layer sample_layer(const TrainingProblem& p) {
    Layer layer;
    const std::size_t n_in = p.x.cols();
    if (p.w_in_override) {
        if (p.w_in_override->rows() != p.hidden || p.w_in_override->cols() != n_in)
            throw ShapeError("w_in override has wrong shape");
        layer.w_in = *p.w_in_override;
    }
    if (p.bias_override) {
        if (p.bias_override->size() != p.hidden)
            throw ShapeError("bias override has wrong length");
        layer.bias = *p.bias_override;
    }
    if (!p.w_in_override || !p.bias_override) {
        Rng rng(p.seed);
        if (!p.w_in_override) {
            layer.w_in = DenseMatrix(p.hidden, n_in);
            for (std::size_t i = 0; i < p.hidden; ++i)
                for (std::size_t j = 0; j < n_in; ++j) layer.w_in(i, j) = rng.symmetric();
        }
        if (!p.bias_override) {
            layer.bias.resize(p.hidden);
            for (auto& v : layer.bias) v = rng.symmetric();
        }
    }
    return layer;
}

double mse(const DenseMatrix& predicted, const DenseMatrix& target) {
    double s = 0.0;
    for (std::size_t i = 0; i < predicted.rows(); ++i)
        for (std::size_t j = 0; j < predicted.cols(); ++j) {
            const double d = predicted(i, j) - target(i, j);
            s += d * d;
        }
    return s / static_cast<double>(predicted.rows() * predicted.cols());
}

}  // namespace

std::pair<DenseMatrix, StructuredMatrix> build_hidden_matrix(const TrainingProblem& p) {
    if (p.hidden != p.x.rows())
        throw ShapeError("structured path requires hidden count == sample count");
    if (p.x.rows() == 0) throw ShapeError("no samples");
    Layer layer = sample_layer(p);
    DenseMatrix g = hidden_activations(layer.w_in, layer.bias, p.x, p.activation);
    DenseMatrix masked = apply_mask_and_clamp(g);
    return {std::move(g), extract_structured(masked)};
}

TrainedModel train(const TrainingProblem& p) {
    if (p.x.rows() == 0 || p.x.rows() != p.t.rows())
        throw ShapeError("sample and target row counts differ");
    Layer layer = sample_layer(p);
    const std::size_t m_out = p.t.cols();

    TrainedModel model{.w_in = layer.w_in,
                       .bias = layer.bias,
                       .w_out = DenseMatrix(p.hidden, m_out),
                       .g_structured = StructuredMatrix(1, {0.0}, {}, {}),
                       .activation = p.activation};

    DenseMatrix h = hidden_activations(layer.w_in, layer.bias, p.x, p.activation);

    if (p.hidden == p.x.rows()) {
        DenseMatrix masked = apply_mask_and_clamp(h);
        model.g_structured = extract_structured(masked);
        model.method = TrainMethod::structured;

        Factorization f = factorize(model.g_structured);
        std::vector<double> col(p.x.rows());
        for (std::size_t k = 0; k < m_out; ++k) {
            for (std::size_t i = 0; i < p.x.rows(); ++i) col[i] = p.t(i, k);
            try {
                SolveResult sol = solve(f, col);
                for (std::size_t i = 0; i < p.hidden; ++i) model.w_out(i, k) = sol.x[i];
            } catch (const SingularError& e) {
                throw SingularError(std::string(e.what()) + " (target column " +
                                    std::to_string(k + 1) + ")");
            } catch (const BreakdownError& e) {
                throw BreakdownError(e.index(), std::string(e.what()) + " (target column " +
                                                    std::to_string(k + 1) + ")");
            }
            ++model.structured_solves;
        }
        model.train_loss = mse(multiply(masked, model.w_out), p.t);
    } else {
        // Rectangular problems skip the pruned path (its rectangular
        // factorization is not validated); plain least squares instead.
        model.method = TrainMethod::dense_lsq_fallback;
        std::vector<double> col(p.x.rows());
        for (std::size_t k = 0; k < m_out; ++k) {
            for (std::size_t i = 0; i < p.x.rows(); ++i) col[i] = p.t(i, k);
            auto sol = oracle::normal_eq_lsq(h, col);
            for (std::size_t i = 0; i < p.hidden; ++i) model.w_out(i, k) = sol[i];
        }
        model.train_loss = mse(multiply(h, model.w_out), p.t);
    }
    return model;
}

DenseMatrix predict(const TrainedModel& model, const DenseMatrix& x_new) {
    if (x_new.cols() != model.w_in.cols())
        throw ShapeError("predict: input width differs from trained model");
    DenseMatrix h = hidden_activations(model.w_in, model.bias, x_new, model.activation);
    if (model.method == TrainMethod::structured) h = apply_mask_and_clamp(h);
    return multiply(h, model.w_out);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

bool try_parse(const std::string& tok, double& out) {
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return res.ec == std::errc() && res.ptr == tok.data() + tok.size();
}

}  // namespace

std::pair<DenseMatrix, DenseMatrix> load_csv(const std::string& text, std::size_t targets) {
    if (targets == 0) throw ShapeError("need at least one target column");
    std::istringstream is(text);
    std::string line;
    std::vector<std::vector<double>> rows;
    std::size_t line_no = 0;
    std::size_t width = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto toks = split_csv_line(line);
        std::vector<double> row(toks.size());
        bool numeric = true;
        for (std::size_t i = 0; i < toks.size(); ++i) {
            if (!try_parse(trim(toks[i]), row[i])) {
                numeric = false;
                if (!(rows.empty() && width == 0))
                    throw ParseError(line_no, i + 1, "not a number: '" + trim(toks[i]) + "'");
                break;
            }
        }
        if (!numeric) {
            width = toks.size();  // header row; remember its width
            continue;
        }
        if (width == 0) width = row.size();
        if (row.size() != width)
            throw ParseError(line_no, row.size() + 1,
                             "row has " + std::to_string(row.size()) + " of " +
                                 std::to_string(width) + " fields");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError(line_no + 1, 1, "no data rows");
    if (width <= targets)
        throw ShapeError("need at least one feature column before " +
                         std::to_string(targets) + " target columns");

    const std::size_t n_in = width - targets;
    DenseMatrix x(rows.size(), n_in), t(rows.size(), targets);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < n_in; ++j) x(i, j) = rows[i][j];
        for (std::size_t j = 0; j < targets; ++j) t(i, j) = rows[i][n_in + j];
    }
    return {std::move(x), std::move(t)};
}

std::pair<DenseMatrix, DenseMatrix> load_csv_file(const std::string& path, std::size_t targets) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ParseError(0, 0, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return load_csv(ss.str(), targets);
}

}  // namespace atrid::nnet
