#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace cgrid {

// Probability mass function over node degrees, stored densely (index =
// degree). Probabilities are nonnegative and sum to 1 within 1e-12.
class DegreeDistribution {
public:
    DegreeDistribution() = default;

    // Validates: entries >= 0, sum within 1e-12 of 1.
    static DegreeDistribution from_pmf(std::vector<double> pmf);

    // Normalizes nonnegative weights (e.g. histogram counts or an
    // unnormalized power-law tail). Throws if the total weight is zero.
    static DegreeDistribution from_weights(std::vector<double> weights);

    static DegreeDistribution from_counts(const std::vector<std::size_t>& counts);

    double p(std::size_t k) const { return k < pmf_.size() ? pmf_[k] : 0.0; }
    std::size_t max_degree() const { return pmf_.empty() ? 0 : pmf_.size() - 1; }
    double mean_degree() const { return mean_; }
    const std::vector<double>& pmf() const { return pmf_; }

    // probability generating function sum_k P(k) s^k
    double pgf(double s) const;

private:
    explicit DegreeDistribution(std::vector<double> pmf);

    std::vector<double> pmf_;
    double mean_ = 0.0;
};

// CSV with "k,probability" rows; '#' lines and a "k,probability" header are
// both accepted on input.
DegreeDistribution load_pmf_csv(const std::string& path);
void save_pmf_csv(const DegreeDistribution& dist, const std::string& path);

}  // namespace cgrid
