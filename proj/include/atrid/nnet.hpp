#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "atrid/dense.hpp"
#include "atrid/structured.hpp"

namespace atrid::nnet {

enum class Activation { tanh_act, identity };

/// A single-hidden-layer fit: N samples of n_in features against m_out
/// targets, M hidden units. The structured one-shot path requires M == N;
/// other shapes fall back to a dense least-squares solve and are labeled
/// as such in the result.
struct TrainingProblem {
    DenseMatrix x;        ///< N x n_in samples
    DenseMatrix t;        ///< N x m_out targets
    std::size_t hidden = 0;
    Activation activation = Activation::tanh_act;
    std::uint64_t seed = 0;

    /// Test fixtures may pin the input-hidden weights and biases instead
    /// of sampling them from the seed.
    std::optional<DenseMatrix> w_in_override;
    std::optional<std::vector<double>> bias_override;
};

enum class TrainMethod { structured, dense_lsq_fallback };

/// Trained weights plus the disclosed pruning record. predict() re-applies
/// the same band+corner mask and the same dominance clamp that produced
/// g_structured, so predictions on the training batch reproduce the
/// training system bit-exactly.
struct TrainedModel {
    DenseMatrix w_in;            ///< M x n_in
    std::vector<double> bias;    ///< M
    DenseMatrix w_out;           ///< M x m_out
    StructuredMatrix g_structured;
    double train_loss = 0.0;     ///< mean squared error on the training batch
    Activation activation = Activation::tanh_act;
    TrainMethod method = TrainMethod::structured;

    // Training-procedure counters; the one-shot path performs no
    // gradient iteration by construction and these record it.
    std::size_t structured_solves = 0;
    std::size_t gradient_iterations = 0;
};

/// Hidden-layer system matrix pair: the dense G[j][i] = Z(w_i . x_j + b_i)
/// and its pruned structured form (band plus the two corner positions,
/// diagonal clamped up to dominance margin 0.1 where the raw activations
/// fall short). Requires hidden == sample count; ShapeError otherwise.
std::pair<DenseMatrix, StructuredMatrix> build_hidden_matrix(const TrainingProblem& p);

/// One-shot training: factorize the pruned system once and solve it per
/// target column. No iteration, no gradients. Square-consistent problems
/// reach zero loss up to solver accuracy.
TrainedModel train(const TrainingProblem& p);

/// Forward pass under the training-time mask and dominance clamp.
/// x_new must have the model's input width.
DenseMatrix predict(const TrainedModel& model, const DenseMatrix& x_new);

/// CSV loader: each row is n_in features followed by `targets` target
/// columns; a header row is skipped when its first field is not numeric.
std::pair<DenseMatrix, DenseMatrix> load_csv(const std::string& text, std::size_t targets);
std::pair<DenseMatrix, DenseMatrix> load_csv_file(const std::string& path, std::size_t targets);

}  // namespace atrid::nnet
