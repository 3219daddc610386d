#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rcdfs/discrete_table.hpp"

namespace rcdfs {

// Multinomial naive Bayes over discrete codes with add-one smoothing on the
// class-conditional tables. Classes absent from training are never predicted.
class NaiveBayes {
public:
    // Trains on `features` of `train` (all rows).
    static NaiveBayes fit(const DiscreteTable& train, std::span<const std::size_t> features);

    // `row[i]` is the code of features()[i]. Ties go to the lowest class.
    Code predict(std::span<const Code> row) const;

    // log P(c) + sum_i log P(row[i] | c); -inf for classes unseen in training.
    std::vector<double> log_posterior(std::span<const Code> row) const;

    // log P(v | c) for the i-th model feature.
    double log_likelihood(std::size_t i, Code v, Code c) const;
    double log_prior(Code c) const { return log_prior_[c]; }

    const std::vector<std::size_t>& features() const { return features_; }
    Code class_arity() const { return class_arity_; }

private:
    std::vector<std::size_t> features_;
    std::vector<Code> arities_;
    Code class_arity_ = 0;
    std::vector<double> log_prior_;
    // log_like_[i][v * class_arity + c]
    std::vector<std::vector<double>> log_like_;
};

// 1-nearest neighbour (generalised to k by majority vote, ties to the lowest
// class) under Hamming distance on `features`; distance ties go to the lowest
// training row.
Code knn_predict(const DiscreteTable& train, std::span<const std::size_t> features,
                 std::span<const Code> row, std::size_t k = 1);

}  // namespace rcdfs
